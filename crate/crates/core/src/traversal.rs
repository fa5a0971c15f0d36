//! Step-exact reference simulations of splay-to-root traversal and
//! fetch-and-discard traversal. Everything else in the crate is checked
//! against these.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::tree::{NodeId, Tree};

/// Record of one complete traversal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraversalStats {
    /// Number of fetches (or splays) performed, `|T|`.
    pub steps: u64,
    /// Spine length seen before each fetch, one entry per step.
    pub spine_lengths: Vec<u64>,
    /// Total spine length, the sum of `spine_lengths`.
    pub tsl: u64,
    /// Rotations performed, recorded only by [`traverse_splay`].
    pub rotations: Option<u64>,
    /// Root persistence, recorded only by [`traverse_fetch`].
    pub rp: Option<u64>,
    /// Initial root persistence, recorded only by [`traverse_fetch`].
    pub irp: Option<u64>,
}

/// Flat, string-valued form of [`TraversalStats`] for CSV and JSON output.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct StatsRecord {
    pub size: String,
    pub tsl: String,
    pub cost: String,
    pub rotations: String,
    pub rp: String,
    pub irp: String,
}

impl TraversalStats {
    /// Splay-to-root cost implied by the spine lengths: `tsl - 1`, or 0 for
    /// the empty tree.
    pub fn cost(&self) -> u64 {
        self.tsl.saturating_sub(1)
    }

    pub fn to_record(&self) -> StatsRecord {
        let opt = |v: Option<u64>| v.map(|x| x.to_string()).unwrap_or_default();
        StatsRecord {
            size: self.steps.to_string(),
            tsl: self.tsl.to_string(),
            cost: self.cost().to_string(),
            rotations: opt(self.rotations),
            rp: opt(self.rp),
            irp: opt(self.irp),
        }
    }
}

/// What one fetch-and-discard step did.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FetchEvent {
    /// The discarded node, `x_1`.
    pub fetched: NodeId,
    /// Spine length `k` before the step.
    pub spine_len: usize,
    /// Nodes made the right child of their former left child.
    pub pushed_off: Vec<NodeId>,
}

/// One fetch-and-discard step, in place.
///
/// With spine `x_1..x_k` (bottom to top) and right subtrees `X_j`: `x_1` is
/// discarded and `X_1` takes its place below `x_2`; for even `j < k`, `x_{j+1}`
/// becomes the right child of `x_j`, taking `X_j` as its left subtree and
/// keeping `X_{j+1}`. For even `k`, `x_k` stays on top.
pub fn fetch_step(tree: &mut Tree) -> Result<FetchEvent> {
    let spine = tree.spine();
    let k = spine.len();
    if k == 0 {
        return Err(Error::EmptyTree);
    }
    let x = |j: usize| spine.from_bottom(j).expect("spine index");
    let x1 = x(1);
    let x1_right = tree.right(x1);
    let mut pushed_off = Vec::with_capacity(k / 2);

    if k == 1 {
        tree.set_right(x1, None);
        tree.set_root(x1_right);
        tree.discard(x1);
        return Ok(FetchEvent { fetched: x1, spine_len: k, pushed_off });
    }

    let mut j = 2;
    while j < k {
        let (a, b) = (x(j), x(j + 1));
        let xj = tree.right(a);
        tree.set_left(b, xj);
        tree.set_right(a, Some(b));
        pushed_off.push(b);
        j += 2;
    }
    tree.set_left(x(2), x1_right);
    let mut j = 4;
    while j <= k {
        tree.set_left(x(j), Some(x(j - 2)));
        j += 2;
    }
    let top = if k.is_multiple_of(2) { x(k) } else { x(k - 1) };
    tree.set_right(x1, None);
    tree.set_root(Some(top));
    tree.discard(x1);
    Ok(FetchEvent { fetched: x1, spine_len: k, pushed_off })
}

/// `fetch(k, T)`: the tree after `k` fetch-and-discard steps.
pub fn fetch(k: usize, tree: &Tree) -> Result<Tree> {
    if k > tree.size() {
        return Err(Error::FetchOutOfRange { k, size: tree.size() });
    }
    let mut t = tree.clone();
    for _ in 0..k {
        fetch_step(&mut t)?;
    }
    Ok(t)
}

/// Complete fetch-and-discard traversal with spine lengths, `tsl`, `rp` and
/// `irp` of the original root.
///
/// `rp` counts the `k` in `0..=|T|` whose `fetch(k, T)` has the original root
/// as its root. `irp` is the least `k` whose `fetch(k, T)` does not have the
/// original root on its spine; a root that is fetched while still on the
/// spine leaves the spine at the step of its removal.
pub fn traverse_fetch(tree: &Tree) -> TraversalStats {
    let mut t = tree.clone();
    let n = t.size();
    let root = t.root();
    let mut spine_lengths = Vec::with_capacity(n);
    let mut rp = 0u64;
    let mut irp: Option<u64> = if root.is_none() { Some(0) } else { None };

    for step in 0..=n {
        if root.is_some() && t.root() == root {
            rp += 1;
        }
        if irp.is_none() && !root.is_some_and(|r| t.on_spine(r)) {
            irp = Some(step as u64);
        }
        if step < n {
            let ev = fetch_step(&mut t).expect("tree holds n - step nodes");
            spine_lengths.push(ev.spine_len as u64);
        }
    }
    let tsl = spine_lengths.iter().sum();
    TraversalStats { steps: n as u64, spine_lengths, tsl, rotations: None, rp: Some(rp), irp }
}

/// Splay `v` to the root with zig, zig-zig and zig-zag steps. Returns the
/// number of single rotations.
pub fn splay_to_root(tree: &mut Tree, v: NodeId) -> Result<u64> {
    if !tree.contains(v) {
        return Err(Error::NodeNotFound(v.0));
    }
    let mut rotations = 0;
    while let Some(p) = tree.parent(v) {
        match tree.parent(p) {
            None => {
                tree.rotate_up(v);
                rotations += 1;
            }
            Some(g) => {
                let v_left = tree.left(p) == Some(v);
                let p_left = tree.left(g) == Some(p);
                if v_left == p_left {
                    tree.rotate_up(p);
                    tree.rotate_up(v);
                } else {
                    tree.rotate_up(v);
                    tree.rotate_up(v);
                }
                rotations += 2;
            }
        }
    }
    Ok(rotations)
}

/// Traverse by splaying every node to the root in inorder. The spine before
/// each splay is the leftmost branch from the root for the first step, and
/// from the root's right child afterwards.
pub fn traverse_splay(tree: &Tree) -> TraversalStats {
    let mut t = tree.clone();
    let order = t.inorder();
    let mut spine_lengths = Vec::with_capacity(order.len());
    let mut rotations = 0u64;
    for (i, &v) in order.iter().enumerate() {
        let from = if i == 0 { t.root() } else { t.root().and_then(|r| t.right(r)) };
        spine_lengths.push(t.left_path(from).len() as u64);
        rotations += splay_to_root(&mut t, v).expect("inorder node is live");
    }
    let tsl = spine_lengths.iter().sum();
    TraversalStats { steps: order.len() as u64, spine_lengths, tsl, rotations: Some(rotations), rp: None, irp: None }
}

/// After `k` splay-to-root steps, is the right subtree of the root shaped like
/// `fetch(k, T)`?
pub fn check_fetch_splay_correspondence(tree: &Tree, k: usize) -> Result<bool> {
    if k == 0 || k > tree.size() {
        return Err(Error::FetchOutOfRange { k, size: tree.size() });
    }
    let fetched = fetch(k, tree)?;
    let mut splayed = tree.clone();
    for &v in tree.inorder().iter().take(k) {
        splay_to_root(&mut splayed, v)?;
    }
    let right = splayed.root().and_then(|r| splayed.right(r));
    Ok(splayed.same_shape_at(right, &fetched, fetched.root()))
}

/// Runs both traversals in lockstep and returns the first `k` at which the
/// correspondence fails, if any.
pub fn first_correspondence_failure(tree: &Tree) -> Option<usize> {
    let mut fetched = tree.clone();
    let mut splayed = tree.clone();
    for (i, v) in tree.inorder().into_iter().enumerate() {
        fetch_step(&mut fetched).expect("nonempty");
        splay_to_root(&mut splayed, v).expect("live");
        let right = splayed.root().and_then(|r| splayed.right(r));
        if !splayed.same_shape_at(right, &fetched, fetched.root()) {
            return Some(i + 1);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_tree;

    fn m(h: i32) -> Tree {
        Tree::maximal(h).unwrap()
    }

    #[test]
    fn splay_rotation_counts() {
        let mut t = m(2);
        let r = t.root().unwrap();
        assert_eq!(splay_to_root(&mut t, r).unwrap(), 0);

        let mut t = m(1);
        let l = t.left(t.root().unwrap()).unwrap();
        assert_eq!(splay_to_root(&mut t, l).unwrap(), 1);
        assert_eq!(t.root(), Some(l));

        // Leftmost node of M_2 sits at the bottom of a 3-node left path.
        let mut t = m(2);
        let leftmost = t.spine().from_bottom(1).unwrap();
        let before = t.inorder();
        assert_eq!(splay_to_root(&mut t, leftmost).unwrap(), 2);
        assert_eq!(t.root(), Some(leftmost));
        assert_eq!(t.inorder(), before);

        assert!(splay_to_root(&mut t, NodeId(1000)).is_err());
    }

    #[test]
    fn splay_traversal_costs() {
        assert_eq!(traverse_splay(&m(0)).rotations, Some(0));
        let s = traverse_splay(&m(1));
        assert_eq!(s.rotations, Some(3));
        assert_eq!(s.tsl, 4);
    }

    #[test]
    fn fetch_step_single_node() {
        let mut t = m(0);
        let ev = fetch_step(&mut t).unwrap();
        assert!(t.is_empty());
        assert_eq!(ev.spine_len, 1);
        assert!(fetch_step(&mut t).is_err());
    }

    #[test]
    fn fetch_step_even_spine() {
        // M_1: spine (a, x); k = 2. x stays on top and keeps its right child.
        let mut t = m(1);
        let x = t.root().unwrap();
        fetch_step(&mut t).unwrap();
        assert_eq!(t, parse_tree("(.(..))").unwrap());
        assert_eq!(t.root(), Some(x));
    }

    #[test]
    fn fetch_step_odd_spine() {
        // Left path c-b-a (top to bottom): a is discarded, b pushes c off.
        let mut t = parse_tree("(((..).).)").unwrap();
        let spine = t.spine();
        let (b, c) = (spine.from_bottom(2).unwrap(), spine.from_bottom(3).unwrap());
        let ev = fetch_step(&mut t).unwrap();
        assert_eq!(ev.pushed_off, vec![c]);
        assert_eq!(t.root(), Some(b));
        assert_eq!(t.right(b), Some(c));
        assert_eq!(t, parse_tree("(.(..))").unwrap());
    }

    #[test]
    fn fetch_preserves_inorder_of_survivors() {
        let t = parse_tree("(((.(M 1.))(..))(.(..)))").unwrap();
        let order = t.inorder();
        for k in 0..=t.size() {
            let f = fetch(k, &t).unwrap();
            assert_eq!(f.size(), t.size() - k);
            assert_eq!(f.inorder(), order[k..].to_vec());
        }
        assert!(fetch(t.size() + 1, &t).is_err());
        assert!(fetch(t.size(), &t).unwrap().is_empty());
    }

    #[test]
    fn small_tsl_values() {
        assert_eq!(traverse_fetch(&Tree::new()).tsl, 0);
        assert_eq!(traverse_fetch(&m(0)).tsl, 1);
        let s = traverse_fetch(&m(1));
        assert_eq!(s.spine_lengths, vec![2, 1, 1]);
        assert_eq!(s.tsl, 4);
    }

    #[test]
    fn root_persistence_of_small_extensions() {
        let ext = |h, k| traverse_fetch(&Tree::extend(m(h), k));
        assert_eq!(ext(1, 2).rp, Some(4));
        assert_eq!(ext(0, 2).rp, Some(2));
        assert_eq!(ext(2, 2).rp, Some(2));
        assert_eq!(ext(0, 1).rp, Some(2));
        // By the definition (least k with the root off the spine) the root of
        // M_1^[2] stays on the spine for steps 0, 1 and 2.
        assert_eq!(ext(1, 2).irp, Some(3));
        assert_eq!(traverse_fetch(&m(0)).irp, Some(1));
    }

    #[test]
    fn correspondence_on_m2() {
        let t = m(2);
        for k in 1..=7 {
            assert!(check_fetch_splay_correspondence(&t, k).unwrap(), "k={k}");
        }
        assert_eq!(first_correspondence_failure(&t), None);
        assert!(check_fetch_splay_correspondence(&t, 0).is_err());
    }

    #[test]
    fn record_uses_decimal_strings() {
        let r = traverse_fetch(&m(1)).to_record();
        assert_eq!(r.tsl, "4");
        assert_eq!(r.cost, "3");
        assert_eq!(r.rotations, "");
        assert_eq!(r.rp, "2");
    }
}
