//! Root persistence of `M_h^[2]` and `M_h^[1]` for heights far beyond what an
//! explicit tree can hold.
//!
//! Two facts make this cheap.
//!
//! A fetch only relinks spine nodes, so a subtree whose root is off the spine
//! is frozen. Pristine maximal subtrees therefore stay as height-only thunks
//! until their root is pulled onto the spine, and everything pushed off the
//! spine is an immutable node in an append-only arena.
//!
//! The distinguished root `y` is the inorder-last node. It can only leave the
//! spine by being pushed off by its left child, after which the subtree `X^y`
//! (with `X` the right subtree that left child had) is frozen and sits on the
//! rightmost branch. It returns to the spine exactly when everything before it
//! in inorder has been fetched, and at that moment the whole tree is `X^y`.
//! The engine therefore simulates only the steps at which `y` is the root and
//! jumps straight to `X^y` whenever `y` is pushed off; the skipped phases, up
//! to `2^h` fetches long, are never visited.

use std::collections::HashMap;
use std::fs::OpenOptions;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::tree::{NodeId, Tree};

/// Reference to a frozen subtree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sub {
    Empty,
    /// Unexpanded maximal tree `M_k`, `k >= 0`.
    Max(u32),
    /// Explicit node in the arena.
    Node(u32),
}

impl Sub {
    /// `M_h` as a thunk; `h = -1` is the empty tree.
    pub fn maximal(h: i64) -> Sub {
        if h < 0 {
            Sub::Empty
        } else {
            Sub::Max(h as u32)
        }
    }
}

#[derive(Clone, Copy, Debug)]
struct Joined {
    left: Sub,
    right: Sub,
}

/// A tree held as its spine plus frozen right subtrees.
///
/// `spine[i]` is the right subtree of the `i`-th spine node counted from the
/// root. Nodes pushed off the spine become arena entries; maximal subtrees are
/// expanded one left path at a time as they reach the spine.
#[derive(Clone, Debug, Default)]
pub struct LazyTree {
    arena: Vec<Joined>,
    spine: Vec<Sub>,
}

impl LazyTree {
    pub fn new() -> Self {
        Self::default()
    }

    /// Freeze a new explicit node with the given subtrees.
    pub fn join(&mut self, left: Sub, right: Sub) -> Sub {
        let id = u32::try_from(self.arena.len()).expect("lazy arena exceeds u32 ids");
        self.arena.push(Joined { left, right });
        Sub::Node(id)
    }

    /// Make the whole tree equal to `sub`.
    pub fn reset_to(&mut self, sub: Sub) {
        self.spine.clear();
        self.push_left_path(sub);
    }

    /// `base^[k]` as a frozen subtree.
    pub fn extension(&mut self, base: Sub, k: usize) -> Sub {
        (0..k).fold(base, |acc, _| self.join(acc, Sub::Empty))
    }

    pub fn spine_len(&self) -> usize {
        self.spine.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spine.is_empty()
    }

    /// Explicit nodes currently allocated (frozen arena plus spine).
    pub fn explicit_nodes(&self) -> usize {
        self.arena.len() + self.spine.len()
    }

    fn push_left_path(&mut self, mut sub: Sub) {
        loop {
            match sub {
                Sub::Empty => return,
                Sub::Max(k) => {
                    self.spine.extend((0..k).rev().map(Sub::Max));
                    self.spine.push(Sub::Empty);
                    return;
                }
                Sub::Node(i) => {
                    let n = self.arena[i as usize];
                    self.spine.push(n.right);
                    sub = n.left;
                }
            }
        }
    }

    /// One fetch-and-discard step. Returns the spine length before the step.
    pub fn fetch_step(&mut self) -> Result<usize> {
        let k = self.spine.len();
        if k == 0 {
            return Err(Error::EmptyTree);
        }
        let x1_right = self.spine[k - 1];
        // x_j lives at index k - j. Survivors are the even x_j; writing the
        // i-th survivor (from the top) never overtakes the entries still to be
        // read, so the spine is rebuilt in place.
        let top_even = k - (k % 2);
        let mut write = 0;
        let mut j = top_even;
        while j >= 2 {
            let xj = self.spine[k - j];
            let merged = if j < k {
                let xj1 = self.spine[k - j - 1];
                self.join(xj, xj1)
            } else {
                xj
            };
            self.spine[write] = merged;
            write += 1;
            j -= 2;
        }
        self.spine.truncate(write);
        self.push_left_path(x1_right);
        Ok(k)
    }

    /// Fully materialize the current tree.
    pub fn expand(&self) -> Tree {
        let mut t = Tree::new();
        let mut below: Option<NodeId> = None;
        for &right in self.spine.iter().rev() {
            let r = self.expand_sub(&mut t, right);
            below = Some(t.push_node(below, r));
        }
        t.set_root(below);
        t
    }

    fn expand_sub(&self, t: &mut Tree, sub: Sub) -> Option<NodeId> {
        match sub {
            Sub::Empty => None,
            Sub::Max(k) => t.alloc_maximal(k as i32),
            Sub::Node(i) => {
                let n = self.arena[i as usize];
                let l = self.expand_sub(t, n.left);
                let r = self.expand_sub(t, n.right);
                Some(t.push_node(l, r))
            }
        }
    }

    /// Number of nodes in the current tree.
    pub fn size(&self) -> BigUint {
        let mut memo = HashMap::new();
        let spine_nodes = BigUint::from(self.spine.len());
        self.spine.iter().fold(spine_nodes, |acc, &s| acc + self.sub_size(s, &mut memo))
    }

    /// Number of nodes in a frozen subtree.
    pub fn sub_size(&self, sub: Sub, memo: &mut HashMap<u32, BigUint>) -> BigUint {
        let mut stack = vec![(sub, false)];
        let mut out: Vec<BigUint> = Vec::new();
        while let Some((s, ready)) = stack.pop() {
            match s {
                Sub::Empty => out.push(BigUint::zero()),
                Sub::Max(k) => out.push((BigUint::one() << (k as usize + 1)) - 1u32),
                Sub::Node(i) => {
                    if let Some(v) = memo.get(&i) {
                        out.push(v.clone());
                    } else if ready {
                        let r = out.pop().expect("right size");
                        let l = out.pop().expect("left size");
                        let v = l + r + 1u32;
                        memo.insert(i, v.clone());
                        out.push(v);
                    } else {
                        let n = self.arena[i as usize];
                        stack.push((s, true));
                        stack.push((n.right, false));
                        stack.push((n.left, false));
                    }
                }
            }
        }
        out.pop().expect("subtree size")
    }
}

/// Root persistence of an extension `L^y`, together with its initial root
/// persistence.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Persistence {
    pub rp: u64,
    pub irp: u64,
    /// How often `y` was pushed off the spine and the engine jumped ahead.
    pub jumps: u64,
}

/// Called at every step where `y` is the root, with the global step index and
/// the whole current tree.
pub type Observer<'a> = &'a mut dyn FnMut(&BigUint, &LazyTree);

/// Run the engine on `left^y`, where `left` is built inside `tree`.
fn persistence_of_extension(mut tree: LazyTree, left: Sub, mut observer: Option<Observer<'_>>) -> Persistence {
    tree.spine.clear();
    tree.spine.push(Sub::Empty);
    tree.push_left_path(left);

    let total = observer.as_ref().map(|_| tree.size());
    let mut step = BigUint::zero();

    let mut rp = 0u64;
    let mut irp: Option<u64> = None;
    let mut jumps = 0u64;
    loop {
        rp += 1;
        if let Some(f) = observer.as_mut() {
            f(&step, &tree);
        }
        let k = tree.spine.len();
        if k == 1 {
            // y alone; the next step deletes it.
            irp.get_or_insert(rp);
            break;
        }
        if k % 2 == 1 {
            // x_{k-1} pushes y off the spine; resume at X^y.
            irp.get_or_insert(rp);
            jumps += 1;
            let x = tree.spine[1];
            tree.spine.clear();
            tree.spine.push(Sub::Empty);
            tree.push_left_path(x);
            if let Some(total) = &total {
                step = total - tree.size();
            }
        } else {
            tree.fetch_step().expect("nonempty");
            step += 1u32;
        }
    }
    Persistence { rp, irp: irp.unwrap_or(rp), jumps }
}

/// `rp` and `irp` of `M_h^[2]`.
pub fn persistence_m2(h: u32) -> Persistence {
    let mut tree = LazyTree::new();
    let x0 = tree.join(Sub::Max(h), Sub::Empty);
    persistence_of_extension(tree, x0, None)
}

/// `rp` and `irp` of `M_h^[1]`.
pub fn persistence_m1(h: u32) -> Persistence {
    persistence_of_extension(LazyTree::new(), Sub::Max(h), None)
}

/// Run the `M_h^[2]` engine, reporting every step at which the root is `y`.
pub fn observe_m2(h: u32, observer: Observer<'_>) -> Persistence {
    let mut tree = LazyTree::new();
    let x0 = tree.join(Sub::Max(h), Sub::Empty);
    persistence_of_extension(tree, x0, Some(observer))
}

pub fn rp_m2(h: u32) -> u64 {
    persistence_m2(h).rp
}

pub fn irp_m2(h: u32) -> u64 {
    persistence_m2(h).irp
}

/// `rp(M_h^[2])` for `h = 0..=h_max`. Heights are computed in parallel and
/// returned in order.
pub fn rp_m2_table(h_max: u32) -> Vec<u64> {
    persistence_m2_table(h_max).into_iter().map(|p| p.rp).collect()
}

pub fn persistence_m2_table(h_max: u32) -> Vec<Persistence> {
    (0..=h_max).into_par_iter().map(persistence_m2).collect()
}

/// Read a checkpoint of `h rp` lines. Returns the contiguous prefix
/// `rp[0..n]`; a missing file is an empty table.
pub fn read_checkpoint(path: &Path) -> Result<Vec<u64>> {
    let file = match std::fs::File::open(path) {
        Ok(f) => f,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Vec::new()),
        Err(e) => return Err(e.into()),
    };
    let mut values = Vec::new();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line?;
        let line_no = i + 1;
        if line.trim().is_empty() {
            continue;
        }
        let bad = |msg: &str| Error::Checkpoint { line: line_no, msg: msg.to_string() };
        let mut parts = line.split(' ');
        let (Some(h), Some(v), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(bad("expected \"h rp\""));
        };
        let h: usize = h.parse().map_err(|_| bad("bad height"))?;
        let v: u64 = v.parse().map_err(|_| bad("bad rp value"))?;
        if h != values.len() {
            return Err(bad("heights must start at 0 and be consecutive"));
        }
        values.push(v);
    }
    Ok(values)
}

/// `rp(M_h^[2])` for `h = 0..=h_max`, reusing and extending the checkpoint
/// file at `path`.
pub fn rp_m2_table_resumable(h_max: u32, path: &Path) -> Result<Vec<u64>> {
    let mut values = read_checkpoint(path)?;
    let have = values.len() as u32;
    if have <= h_max {
        let fresh: Vec<u64> = (have..=h_max).into_par_iter().map(rp_m2).collect();
        let mut file = OpenOptions::new().create(true).append(true).open(path)?;
        let mut buf = String::new();
        for (i, v) in fresh.iter().enumerate() {
            buf.push_str(&format!("{} {}\n", have as usize + i, v));
        }
        file.write_all(buf.as_bytes())?;
        values.extend(fresh);
    }
    values.truncate(h_max as usize + 1);
    Ok(values)
}
