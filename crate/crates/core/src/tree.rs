//! Handle-addressed binary tree shapes.
//!
//! Nodes live in a growable store and are addressed by [`NodeId`]. Ids are
//! assigned at creation and never reused within one tree, so a node can be
//! followed across any number of restructurings. Removed nodes leave a dead
//! slot behind.

use std::fmt;

use crate::error::{Error, Result};

/// Stable handle of a node inside one [`Tree`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(pub u32);

impl NodeId {
    #[inline]
    fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n{}", self.0)
    }
}

/// Number of links on the longest root-to-leaf path; `-1` for the empty tree.
pub type Height = i32;

#[derive(Clone, Debug)]
struct Slot {
    left: Option<NodeId>,
    right: Option<NodeId>,
    parent: Option<NodeId>,
    alive: bool,
}

/// A binary tree shape. The empty tree has no root.
#[derive(Clone, Debug, Default)]
pub struct Tree {
    slots: Vec<Slot>,
    root: Option<NodeId>,
    len: usize,
}

/// The leftmost branch from the root, listed top to bottom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpineView(Vec<NodeId>);

impl SpineView {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Nodes from the root downwards.
    pub fn nodes(&self) -> &[NodeId] {
        &self.0
    }

    /// The `j`-th spine node counted from the bottom, starting at 1
    /// (`x_1` is the leftmost node of the tree).
    pub fn from_bottom(&self, j: usize) -> Option<NodeId> {
        if j == 0 || j > self.0.len() {
            return None;
        }
        Some(self.0[self.0.len() - j])
    }

    pub fn contains(&self, v: NodeId) -> bool {
        self.0.contains(&v)
    }
}

impl Tree {
    pub fn new() -> Self {
        Self::default()
    }

    /// The maximal tree `M_h` with `2^(h+1) - 1` nodes. `h = -1` gives the
    /// empty tree.
    pub fn maximal(h: Height) -> Result<Self> {
        if h < -1 {
            return Err(Error::InvalidHeight(h as i64));
        }
        let mut t = Tree::new();
        let root = t.alloc_maximal(h);
        t.root = root;
        Ok(t)
    }

    /// `A^x B`: a fresh root with left subtree `a` and right subtree `b`.
    /// Ids of `a` are kept; ids of `b` are shifted past them, and the new root
    /// gets the highest id.
    pub fn join(a: Tree, b: Tree) -> Tree {
        let mut t = a;
        let offset = t.slots.len() as u32;
        let shift = |v: Option<NodeId>| v.map(|n| NodeId(n.0 + offset));
        t.slots.extend(b.slots.into_iter().map(|s| Slot {
            left: shift(s.left),
            right: shift(s.right),
            parent: shift(s.parent),
            alive: s.alive,
        }));
        t.len += b.len;
        let left = t.root;
        let right = shift(b.root);
        let x = t.push_node(left, right);
        t.root = Some(x);
        t
    }

    /// `A^[k]`: `k` nodes chained above `a`, each the new root with the
    /// previous tree as its left subtree and an empty right subtree.
    pub fn extend(a: Tree, k: usize) -> Tree {
        let mut t = a;
        for _ in 0..k {
            let x = t.push_node(t.root, None);
            t.root = Some(x);
        }
        t
    }

    pub fn root(&self) -> Option<NodeId> {
        self.root
    }

    pub fn size(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.root.is_none()
    }

    /// Number of ids ever handed out; live ids are all below this.
    pub fn capacity(&self) -> usize {
        self.slots.len()
    }

    pub fn contains(&self, v: NodeId) -> bool {
        self.slots.get(v.index()).is_some_and(|s| s.alive)
    }

    pub fn left(&self, v: NodeId) -> Option<NodeId> {
        self.slots[v.index()].left
    }

    pub fn right(&self, v: NodeId) -> Option<NodeId> {
        self.slots[v.index()].right
    }

    pub fn parent(&self, v: NodeId) -> Option<NodeId> {
        self.slots[v.index()].parent
    }

    pub fn spine(&self) -> SpineView {
        SpineView(self.left_path(self.root))
    }

    /// Left path starting at `from`, top to bottom.
    pub fn left_path(&self, from: Option<NodeId>) -> Vec<NodeId> {
        let mut path = Vec::new();
        let mut cur = from;
        while let Some(v) = cur {
            path.push(v);
            cur = self.left(v);
        }
        path
    }

    /// Right path starting at `from`, top to bottom.
    pub fn right_path(&self, from: Option<NodeId>) -> Vec<NodeId> {
        let mut path = Vec::new();
        let mut cur = from;
        while let Some(v) = cur {
            path.push(v);
            cur = self.right(v);
        }
        path
    }

    /// True if `v` lies on the leftmost branch from the root.
    pub fn on_spine(&self, v: NodeId) -> bool {
        if !self.contains(v) {
            return false;
        }
        let mut cur = v;
        while let Some(p) = self.parent(cur) {
            if self.left(p) != Some(cur) {
                return false;
            }
            cur = p;
        }
        true
    }

    pub fn inorder(&self) -> Vec<NodeId> {
        self.inorder_from(self.root)
    }

    pub fn inorder_from(&self, from: Option<NodeId>) -> Vec<NodeId> {
        let mut out = Vec::with_capacity(self.len);
        let mut stack = Vec::new();
        let mut cur = from;
        loop {
            while let Some(v) = cur {
                stack.push(v);
                cur = self.left(v);
            }
            match stack.pop() {
                Some(v) => {
                    out.push(v);
                    cur = self.right(v);
                }
                None => break,
            }
        }
        out
    }

    pub fn height(&self) -> Height {
        self.height_from(self.root)
    }

    pub fn height_from(&self, from: Option<NodeId>) -> Height {
        let mut best: Height = -1;
        let mut stack: Vec<(NodeId, Height)> = from.map(|v| (v, 0)).into_iter().collect();
        while let Some((v, d)) = stack.pop() {
            best = best.max(d);
            for c in [self.left(v), self.right(v)].into_iter().flatten() {
                stack.push((c, d + 1));
            }
        }
        best
    }

    pub fn depth(&self, v: NodeId) -> Result<usize> {
        let (l, r) = self.side_depths(v)?;
        Ok(l + r)
    }

    /// Number of right ancestors of `v`: ancestors whose left subtree holds `v`.
    pub fn left_depth(&self, v: NodeId) -> Result<usize> {
        Ok(self.side_depths(v)?.0)
    }

    /// Number of left ancestors of `v`: ancestors whose right subtree holds `v`.
    pub fn right_depth(&self, v: NodeId) -> Result<usize> {
        Ok(self.side_depths(v)?.1)
    }

    fn side_depths(&self, v: NodeId) -> Result<(usize, usize)> {
        if !self.contains(v) {
            return Err(Error::NodeNotFound(v.0));
        }
        let (mut l, mut r) = (0, 0);
        let mut cur = v;
        while let Some(p) = self.parent(cur) {
            if self.left(p) == Some(cur) {
                l += 1;
            } else {
                r += 1;
            }
            cur = p;
        }
        Ok((l, r))
    }

    /// Left depth of every live node, indexed by id (dead slots hold `None`).
    pub fn all_left_depths(&self) -> Vec<Option<usize>> {
        let mut out = vec![None; self.slots.len()];
        let mut stack: Vec<(NodeId, usize)> = self.root.map(|v| (v, 0)).into_iter().collect();
        while let Some((v, d)) = stack.pop() {
            out[v.index()] = Some(d);
            if let Some(l) = self.left(v) {
                stack.push((l, d + 1));
            }
            if let Some(r) = self.right(v) {
                stack.push((r, d));
            }
        }
        out
    }

    /// Number of nodes in the subtree rooted at `v`.
    pub fn subtree_size(&self, v: Option<NodeId>) -> usize {
        let mut n = 0;
        let mut stack: Vec<NodeId> = v.into_iter().collect();
        while let Some(u) = stack.pop() {
            n += 1;
            stack.extend([self.left(u), self.right(u)].into_iter().flatten());
        }
        n
    }

    /// Shape equality of the whole trees, ignoring ids.
    pub fn same_shape(&self, other: &Tree) -> bool {
        self.same_shape_at(self.root, other, other.root)
    }

    /// Shape equality of the subtree of `self` at `a` and of `other` at `b`.
    pub fn same_shape_at(&self, a: Option<NodeId>, other: &Tree, b: Option<NodeId>) -> bool {
        let mut stack = vec![(a, b)];
        while let Some(pair) = stack.pop() {
            match pair {
                (None, None) => {}
                (Some(u), Some(v)) => {
                    stack.push((self.left(u), other.left(v)));
                    stack.push((self.right(u), other.right(v)));
                }
                _ => return false,
            }
        }
        true
    }

    /// Copy of the subtree at `v` as a standalone tree with fresh ids.
    pub fn subtree(&self, v: Option<NodeId>) -> Tree {
        let mut out = Tree::new();
        // Post-order so that children exist before their parent.
        let mut built: Vec<Option<NodeId>> = vec![None; self.slots.len()];
        let mut stack: Vec<(NodeId, bool)> = v.map(|n| (n, false)).into_iter().collect();
        while let Some((u, expanded)) = stack.pop() {
            if expanded {
                let l = self.left(u).and_then(|c| built[c.index()]);
                let r = self.right(u).and_then(|c| built[c.index()]);
                built[u.index()] = Some(out.push_node(l, r));
            } else {
                stack.push((u, true));
                stack.extend([self.right(u), self.left(u)].into_iter().flatten().map(|c| (c, false)));
            }
        }
        out.root = v.and_then(|n| built[n.index()]);
        out
    }

    // ---- construction and mutation primitives used by the simulators ----

    /// Allocate a detached node with the given children and return its id.
    pub(crate) fn push_node(&mut self, left: Option<NodeId>, right: Option<NodeId>) -> NodeId {
        let id = NodeId(u32::try_from(self.slots.len()).expect("tree node store exceeds u32 ids"));
        self.slots.push(Slot { left, right, parent: None, alive: true });
        for c in [left, right].into_iter().flatten() {
            self.slots[c.index()].parent = Some(id);
        }
        self.len += 1;
        id
    }

    /// Allocate a detached `M_h` and return its root.
    pub(crate) fn alloc_maximal(&mut self, h: Height) -> Option<NodeId> {
        if h < 0 {
            return None;
        }
        let l = self.alloc_maximal(h - 1);
        let r = self.alloc_maximal(h - 1);
        Some(self.push_node(l, r))
    }

    pub(crate) fn set_root(&mut self, v: Option<NodeId>) {
        self.root = v;
        if let Some(r) = v {
            self.slots[r.index()].parent = None;
        }
    }

    pub(crate) fn set_left(&mut self, p: NodeId, c: Option<NodeId>) {
        self.slots[p.index()].left = c;
        if let Some(c) = c {
            self.slots[c.index()].parent = Some(p);
        }
    }

    pub(crate) fn set_right(&mut self, p: NodeId, c: Option<NodeId>) {
        self.slots[p.index()].right = c;
        if let Some(c) = c {
            self.slots[c.index()].parent = Some(p);
        }
    }

    /// Mark a node removed. The caller must already have unlinked it.
    pub(crate) fn discard(&mut self, v: NodeId) {
        let s = &mut self.slots[v.index()];
        debug_assert!(s.alive);
        *s = Slot { left: None, right: None, parent: None, alive: false };
        self.len -= 1;
    }

    /// Single rotation lifting `v` above its parent.
    pub(crate) fn rotate_up(&mut self, v: NodeId) {
        let p = self.parent(v).expect("rotate_up on the root");
        let g = self.parent(p);
        if self.left(p) == Some(v) {
            let b = self.right(v);
            self.set_left(p, b);
            self.set_right(v, Some(p));
        } else {
            let b = self.left(v);
            self.set_right(p, b);
            self.set_left(v, Some(p));
        }
        match g {
            None => self.set_root(Some(v)),
            Some(g) if self.left(g) == Some(p) => self.set_left(g, Some(v)),
            Some(g) => self.set_right(g, Some(v)),
        }
    }
}

impl PartialEq for Tree {
    /// Trees compare by shape only.
    fn eq(&self, other: &Self) -> bool {
        self.same_shape(other)
    }
}

impl Eq for Tree {}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::text::format_tree(self))
    }
}
