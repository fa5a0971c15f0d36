//! Property checkers for fetch-and-discard, the β lower-bound witness,
//! growth-bound records for the rp tables, and the digit self-overlap scan.
//!
//! Checkers simulate and report; they never assume the property holds. A
//! failing instance is described in the tree text form so it can be pasted
//! into a regression test.

use std::collections::HashSet;

use rand::Rng;
use serde::Serialize;

use crate::alpha::RpTslTable;
use crate::error::{Error, Result};
use crate::text::format_tree;
use crate::traversal::{fetch, fetch_step, traverse_fetch};
use crate::tree::{NodeId, Tree};

/// One line of a check report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub check: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub case_id: Option<u64>,
    pub pass: bool,
    pub details: String,
}

impl CheckRecord {
    pub fn for_height(check: &str, h: u64, pass: bool, details: String) -> Self {
        Self { check: check.into(), h: Some(h), case_id: None, pass, details }
    }

    pub fn for_case(check: &str, case_id: u64, pass: bool, details: String) -> Self {
        Self { check: check.into(), h: None, case_id: Some(case_id), pass, details }
    }
}

/// `⌈log₂ x⌉` for `x >= 1`.
pub fn ceil_log2(x: u64) -> u32 {
    assert!(x >= 1, "ceil_log2 of zero");
    64 - (x - 1).leading_zeros()
}

/// A set of spine nodes closed under taking parents: the top `len` nodes of
/// the spine of the tree it was built for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UpperSegment {
    nodes: Vec<NodeId>,
}

impl UpperSegment {
    /// Validate `nodes` against `tree`.
    pub fn new(tree: &Tree, nodes: &[NodeId]) -> Result<Self> {
        let spine = tree.spine();
        let set: HashSet<NodeId> = nodes.iter().copied().collect();
        if set.len() != nodes.len() {
            return Err(Error::NotUpperSegment("duplicate node".into()));
        }
        for &v in nodes {
            if !spine.contains(v) {
                return Err(Error::NotUpperSegment(format!("node {} is not on the spine", v.0)));
            }
            if let Some(p) = tree.parent(v) {
                if !set.contains(&p) {
                    return Err(Error::NotUpperSegment(format!("parent of node {} is missing", v.0)));
                }
            }
        }
        let mut ordered: Vec<NodeId> = spine.nodes().iter().copied().filter(|v| set.contains(v)).collect();
        ordered.shrink_to_fit();
        Ok(Self { nodes: ordered })
    }

    /// The top `len` spine nodes (clamped to the spine length).
    pub fn top(tree: &Tree, len: usize) -> Self {
        let spine = tree.spine();
        Self { nodes: spine.nodes()[..len.min(spine.len())].to_vec() }
    }

    pub fn nodes(&self) -> &[NodeId] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    fn revalidate(&self, tree: &Tree) -> Result<()> {
        Self::new(tree, &self.nodes).map(|_| ())
    }
}

/// Whether, for every subtree `T` of `tree`, the members of `set` on the
/// spine of `T` form an upper segment of `T`.
fn segment_property_holds(tree: &Tree, set: &HashSet<NodeId>) -> bool {
    tree.inorder().into_iter().all(|v| {
        let path = tree.left_path(Some(v));
        let inside = path.iter().take_while(|u| set.contains(u)).count();
        path[inside..].iter().all(|u| !set.contains(u))
    })
}

/// Check that upper segments stay upper segments in every subtree during the
/// first `n` fetches (states `0..=n`).
pub fn check_upper_segment_preservation(a: &Tree, e: &UpperSegment, n: usize) -> Result<bool> {
    e.revalidate(a)?;
    if n > a.size() {
        return Err(Error::FetchOutOfRange { k: n, size: a.size() });
    }
    let set: HashSet<NodeId> = e.nodes().iter().copied().collect();
    let mut t = a.clone();
    for step in 0..=n {
        if !segment_property_holds(&t, &set) {
            return Ok(false);
        }
        if step < n {
            fetch_step(&mut t)?;
        }
    }
    Ok(true)
}

/// Survivor counts `|L_0|, |L_1|, ...` of nodes of `e` that stayed on the
/// spine through every fetch so far, until none survive or the tree empties.
pub fn continuation_counts(a: &Tree, e: &UpperSegment) -> Result<Vec<usize>> {
    e.revalidate(a)?;
    let mut survivors: HashSet<NodeId> = e.nodes().iter().copied().collect();
    let mut counts = vec![survivors.len()];
    let mut t = a.clone();
    while !survivors.is_empty() && !t.is_empty() {
        fetch_step(&mut t)?;
        let spine = t.spine();
        survivors.retain(|&v| t.contains(v) && spine.contains(v));
        counts.push(survivors.len());
    }
    Ok(counts)
}

/// Check that survivors at least halve (rounding up) at every fetch and that
/// at most one remains after `⌈log₂|E|⌉` fetches. Empty `e` passes.
pub fn check_continuation(a: &Tree, e: &UpperSegment) -> Result<bool> {
    if e.is_empty() {
        return Ok(true);
    }
    let counts = continuation_counts(a, e)?;
    let halving = counts.windows(2).all(|w| w[1] <= w[0].div_ceil(2));
    let deadline = ceil_log2(e.len() as u64) as usize;
    let settled = counts.get(deadline).copied().unwrap_or(0) <= 1;
    Ok(halving && settled)
}

/// Outcome of simulating the spine-compression claim for `M_h` extended by
/// `e` nodes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompressReport {
    pub h: i32,
    pub e: usize,
    /// `2⌈log₂(h+1+e)⌉ - 1`.
    pub k: usize,
    /// True when `k > |M_h|`, so the claim says nothing.
    pub vacuous: bool,
    /// First state `t <= k` whose spine is a single node.
    pub single_node_at: Option<usize>,
    /// First state `t <= k` whose root is off the spine (checked for `e >= 2`).
    pub root_off_at: Option<usize>,
}

impl CompressReport {
    pub fn pass(&self) -> bool {
        self.vacuous || (self.single_node_at.is_some() && (self.e < 2 || self.root_off_at.is_some()))
    }
}

/// Simulate `extend(M_h, e)` for `k = 2⌈log₂(h+1+e)⌉ - 1` steps.
pub fn check_compress_spine(h: i32, e: usize) -> Result<CompressReport> {
    let base = Tree::maximal(h)?;
    let arg = (h + 1) as u64 + e as u64;
    let k = if arg == 0 { 0 } else { (2 * ceil_log2(arg) as usize).saturating_sub(1) };
    let mut report = CompressReport { h, e, k, vacuous: k > base.size(), single_node_at: None, root_off_at: None };
    if report.vacuous {
        return Ok(report);
    }
    let mut t = Tree::extend(base, e);
    let root = t.root();
    for step in 0..=k {
        let spine = t.spine();
        if report.single_node_at.is_none() && spine.len() == 1 {
            report.single_node_at = Some(step);
        }
        if report.root_off_at.is_none() && !root.is_some_and(|y| t.contains(y) && spine.contains(y)) {
            report.root_off_at = Some(step);
        }
        if step < k && !t.is_empty() {
            fetch_step(&mut t)?;
        }
    }
    Ok(report)
}

/// Nodes on the spine of `fetch(k, a)` that were pushed off the spine
/// earlier and later restored, where `k = |D|` for the subtree `D` at the
/// spine node `u` (its rightmost node has inorder rank `|D|`).
pub fn repeat_nodes_after_subtree(a: &Tree, u: NodeId) -> Result<Vec<NodeId>> {
    if !a.contains(u) {
        return Err(Error::NodeNotFound(u.0));
    }
    if !a.on_spine(u) {
        return Err(Error::NotOnSpine(u.0));
    }
    let k = a.subtree_size(Some(u));
    let mut pushed: HashSet<NodeId> = HashSet::new();
    let mut t = a.clone();
    for _ in 0..k {
        let before = t.spine();
        fetch_step(&mut t)?;
        let after = t.spine();
        pushed.extend(before.nodes().iter().copied().filter(|&v| t.contains(v) && !after.contains(v)));
    }
    Ok(t.spine().nodes().iter().copied().filter(|v| pushed.contains(v)).collect())
}

/// True iff [`repeat_nodes_after_subtree`] finds none.
pub fn check_no_repeat_nodes(a: &Tree, u: NodeId) -> Result<bool> {
    Ok(repeat_nodes_after_subtree(a, u)?.is_empty())
}

/// A node whose left depth grew across one fetch.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeftDepthViolation {
    /// Fetch number (1-based) that increased the depth.
    pub step: usize,
    pub node: NodeId,
    pub before: usize,
    pub after: usize,
}

/// First fetch in the full traversal of `a` that increases the left depth
/// of a surviving node.
pub fn left_depth_violation(a: &Tree) -> Option<LeftDepthViolation> {
    let mut t = a.clone();
    let mut depths = t.all_left_depths();
    let mut step = 0;
    while !t.is_empty() {
        fetch_step(&mut t).expect("tree is nonempty");
        step += 1;
        let next = t.all_left_depths();
        for (i, (b, n)) in depths.iter().zip(&next).enumerate() {
            if let (Some(b), Some(n)) = (b, n) {
                if n > b {
                    return Some(LeftDepthViolation { step, node: NodeId(i as u32), before: *b, after: *n });
                }
            }
        }
        depths = next;
    }
    None
}

pub fn check_left_depth_monotone(a: &Tree) -> bool {
    left_depth_violation(a).is_none()
}

/// Candidate shapes for the β witness. Each has `2^r + r` nodes and a spine
/// of `2^r + 1` or `2^r` nodes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum WitnessShape {
    /// Left path of `2^r + 1` nodes; the bottom node heads a right path of
    /// `r` nodes (itself included).
    BottomSharedBranch,
    /// Left path of `2^r + 1` nodes; the root heads a right path of `r`
    /// nodes (itself included).
    RootSharedBranch,
    /// Left path of `2^r` nodes; the bottom node carries a separate right
    /// path of `r` nodes.
    BottomSeparateBranch,
}

impl WitnessShape {
    pub const ALL: [WitnessShape; 3] =
        [WitnessShape::BottomSharedBranch, WitnessShape::RootSharedBranch, WitnessShape::BottomSeparateBranch];

    pub fn build(self, r: u32) -> Tree {
        let pow = 1usize << r;
        let (spine_len, extra, at_bottom) = match self {
            WitnessShape::BottomSharedBranch => (pow + 1, r as usize - 1, true),
            WitnessShape::RootSharedBranch => (pow + 1, r as usize - 1, false),
            WitnessShape::BottomSeparateBranch => (pow, r as usize, true),
        };
        let mut t = Tree::new();
        let mut chain = None;
        for _ in 0..extra {
            chain = Some(t.push_node(None, chain));
        }
        let mut cur = None;
        for i in 0..spine_len {
            let carries = if at_bottom { i == 0 } else { i + 1 == spine_len };
            cur = Some(t.push_node(cur, if carries { chain } else { None }));
        }
        t.set_root(cur);
        t
    }
}

/// A verified witness tree for `β >= 2 + α`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BetaWitnessReport {
    pub r: u32,
    pub shape: WitnessShape,
    pub size: usize,
    /// Spine lengths of the first `r + 1` fetches.
    pub leading_spines: Vec<u64>,
    pub measured_tsl: u64,
    /// `2^(r+1) + r - 1 + tsl(M_(r-1))`.
    pub expected_tsl: u64,
    /// Text form of `fetch(r + 1, T)`.
    pub residual: String,
    /// `tsl(T) / |T|`.
    pub ratio: f64,
    /// `2 + α_(r-1)`.
    pub comparison: f64,
}

fn verify_witness(r: u32, shape: WitnessShape, maximal_tsl: u64) -> std::result::Result<BetaWitnessReport, String> {
    let t = shape.build(r);
    let pow = 1u64 << r;
    let size = t.size();
    if size as u64 != pow + r as u64 {
        return Err(format!("{shape:?} has {size} nodes"));
    }
    let stats = traverse_fetch(&t);
    let steps = r as usize + 1;
    let leading_spines = stats.spine_lengths[..steps.min(stats.spine_lengths.len())].to_vec();
    let leading: u64 = leading_spines.iter().sum();
    if leading != 2 * pow + r as u64 - 1 {
        return Err(format!("{shape:?}: first {steps} spine lengths {leading_spines:?} sum to {leading}"));
    }
    let residual = fetch(steps, &t).map_err(|e| e.to_string())?;
    let target = Tree::maximal(r as i32 - 1).map_err(|e| e.to_string())?;
    if !residual.same_shape(&target) {
        return Err(format!("{shape:?}: residual {} is not M_{}", format_tree(&residual), r - 1));
    }
    let expected_tsl = 2 * pow + r as u64 - 1 + maximal_tsl;
    if stats.tsl != expected_tsl {
        return Err(format!("{shape:?}: tsl {} != {expected_tsl}", stats.tsl));
    }
    Ok(BetaWitnessReport {
        r,
        shape,
        size,
        leading_spines,
        measured_tsl: stats.tsl,
        expected_tsl,
        residual: format_tree(&residual),
        ratio: stats.tsl as f64 / size as f64,
        comparison: 2.0 + maximal_tsl as f64 / pow as f64,
    })
}

/// Build and verify a tree of `2^r + r` nodes whose first `r + 1` fetches
/// have total spine length `2^(r+1) + r - 1` and leave exactly `M_(r-1)`.
///
/// Candidates from [`WitnessShape::ALL`] are tried in order and the first
/// that passes every check is returned.
pub fn beta_witness(r: u32) -> Result<BetaWitnessReport> {
    if r == 0 || r > 24 {
        return Err(Error::BetaWitness { r, reason: "r must be in 1..=24".into() });
    }
    let maximal_tsl = traverse_fetch(&Tree::maximal(r as i32 - 1)?).tsl;
    let mut reasons = Vec::new();
    for shape in WitnessShape::ALL {
        match verify_witness(r, shape, maximal_tsl) {
            Ok(report) => return Ok(report),
            Err(reason) => reasons.push(reason),
        }
    }
    Err(Error::BetaWitness { r, reason: reasons.join("; ") })
}

/// KMP failure function: `f[i]` is the length of the longest proper border
/// of `s[..=i]`.
pub fn failure_function(s: &[u8]) -> Vec<usize> {
    let mut f = vec![0; s.len()];
    let mut k = 0;
    for i in 1..s.len() {
        while k > 0 && s[i] != s[k] {
            k = f[k - 1];
        }
        if s[i] == s[k] {
            k += 1;
        }
        f[i] = k;
    }
    f
}

/// Length of the longest proper border of the whole string.
pub fn longest_border(s: &str) -> usize {
    failure_function(s.as_bytes()).last().copied().unwrap_or(0)
}

/// Maximum failure-function value over the reversed string: the longest
/// proper border of any suffix.
pub fn max_self_overlap(digits: &str) -> usize {
    let rev: Vec<u8> = digits.bytes().rev().collect();
    failure_function(&rev).into_iter().max().unwrap_or(0)
}

/// Per-height records for the growth bounds on `rp` and `irp`.
///
/// * `irp_log_bound`: `irp(M_h^[2]) <= 2⌈log₂(h+3)⌉` (needs `irp`).
/// * `rp2_growth_bound`: `rp(M_h^[2]) <= 15 (h+3) log₂²(4(h+1))`.
/// * `rp1_quartic_bound`: `rp(M_h^[1]) <= 8 (h+3)^4` for `h >= 3`.
/// * `rp1_telescoped_bound`: `rp(M_h^[1]) <= 2 - h + Σ_{j<h} rp(M_j^[2])`.
pub fn check_rp_growth_bounds(table: &RpTslTable, irp: &[u64]) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    for (h, &v) in irp.iter().enumerate() {
        let bound = 2 * ceil_log2(h as u64 + 3) as u64;
        out.push(CheckRecord::for_height("irp_log_bound", h as u64, v <= bound, format!("irp={v} bound={bound}")));
    }
    for (h, &v) in table.rp2.iter().enumerate() {
        let l = (4.0 * (h as f64 + 1.0)).log2();
        let bound = 15.0 * (h as f64 + 3.0) * l * l;
        out.push(CheckRecord::for_height(
            "rp2_growth_bound",
            h as u64,
            (v as f64) <= bound,
            format!("rp2={v} bound={bound:.1}"),
        ));
    }
    let mut prefix: i128 = 0;
    for (h, &v) in table.rp1.iter().enumerate() {
        if h >= 3 {
            let bound = 8 * (h as u128 + 3).pow(4);
            out.push(CheckRecord::for_height(
                "rp1_quartic_bound",
                h as u64,
                v as u128 <= bound,
                format!("rp1={v} bound={bound}"),
            ));
        }
        let bound = 2 - h as i128 + prefix;
        out.push(CheckRecord::for_height(
            "rp1_telescoped_bound",
            h as u64,
            v as i128 <= bound,
            format!("rp1={v} bound={bound}"),
        ));
        if let Some(&r2) = table.rp2.get(h) {
            prefix += r2 as i128;
        }
    }
    out
}

/// A random nonempty tree with at most `max_nodes` nodes. Splits mix
/// uniform sizes with all-left and all-right choices so long paths occur.
pub fn random_tree<R: Rng + ?Sized>(rng: &mut R, max_nodes: usize) -> Tree {
    let n = rng.gen_range(1..=max_nodes.max(1));
    random_tree_of_size(rng, n)
}

pub fn random_tree_of_size<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Tree {
    fn build<R: Rng + ?Sized>(t: &mut Tree, n: usize, rng: &mut R) -> Option<NodeId> {
        if n == 0 {
            return None;
        }
        let left = match rng.gen_range(0..4) {
            0 => n - 1,
            1 => 0,
            _ => rng.gen_range(0..n),
        };
        let l = build(t, left, rng);
        let r = build(t, n - 1 - left, rng);
        Some(t.push_node(l, r))
    }
    let mut t = Tree::new();
    let root = build(&mut t, n, rng);
    t.set_root(root);
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alpha::build_table_from;
    use crate::text::parse_tree;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn ceil_log2_values() {
        let got: Vec<u32> = (1..=9).map(ceil_log2).collect();
        assert_eq!(got, vec![0, 1, 2, 2, 3, 3, 3, 3, 4]);
    }

    #[test]
    fn upper_segment_validation() {
        let t = Tree::maximal(3).unwrap();
        let spine = t.spine();
        assert!(UpperSegment::new(&t, &spine.nodes()[..2]).is_ok());
        assert!(UpperSegment::new(&t, &spine.nodes()[1..3]).is_err());
        let r = t.root().unwrap();
        assert!(UpperSegment::new(&t, &[r, t.right(r).unwrap()]).is_err());
        assert!(UpperSegment::new(&t, &[]).unwrap().is_empty());
    }

    #[test]
    fn upper_segments_on_maximal_trees() {
        let t = Tree::maximal(3).unwrap();
        let full = UpperSegment::top(&t, usize::MAX);
        assert_eq!(full.len(), 4);
        assert!(check_upper_segment_preservation(&t, &full, t.size()).unwrap());
        let empty = UpperSegment::top(&t, 0);
        assert!(check_upper_segment_preservation(&t, &empty, 15).unwrap());
        assert!(check_upper_segment_preservation(&t, &empty, 16).is_err());
    }

    #[test]
    fn continuation_on_m4() {
        let t = Tree::maximal(4).unwrap();
        let e = UpperSegment::top(&t, usize::MAX);
        assert_eq!(e.len(), 5);
        let counts = continuation_counts(&t, &e).unwrap();
        assert!(counts[3] <= 1, "{counts:?}");
        assert!(check_continuation(&t, &e).unwrap());
        let single = UpperSegment::top(&t, 1);
        assert!(check_continuation(&t, &single).unwrap());
    }

    #[test]
    fn compress_spine_small_cases() {
        let r = check_compress_spine(3, 2).unwrap();
        assert_eq!(r.k, 5);
        assert!(r.pass(), "{r:?}");
        assert!(check_compress_spine(0, 4).unwrap().vacuous);
    }

    #[test]
    fn compress_spine_fails_for_m5_doubly_extended() {
        // Spine lengths run 8,4,4,2,4,2 over the first k=5 steps, and the
        // root only leaves the spine at step 7.
        let r = check_compress_spine(5, 2).unwrap();
        assert_eq!(r.k, 5);
        assert!(!r.vacuous);
        assert_eq!(r.single_node_at, None);
        assert_eq!(r.root_off_at, None);
        assert!(!r.pass());
    }

    #[test]
    fn no_repeat_nodes_examples() {
        let m2 = Tree::maximal(2).unwrap();
        let bottom = m2.spine().from_bottom(1).unwrap();
        assert!(check_no_repeat_nodes(&m2, bottom).unwrap());
        let root = m2.root().unwrap();
        assert!(check_no_repeat_nodes(&m2, root).unwrap());
        assert!(matches!(check_no_repeat_nodes(&m2, m2.right(root).unwrap()), Err(Error::NotOnSpine(_))));
    }

    #[test]
    fn parent_of_fetched_subtree_can_repeat() {
        // The root is pushed off by its left child at the first fetch and
        // restored when that child is fetched, before the child's right
        // subtree is consumed.
        let t = parse_tree("(M 1.)").unwrap();
        let u = t.spine().from_bottom(2).unwrap();
        let repeats = repeat_nodes_after_subtree(&t, u).unwrap();
        assert_eq!(repeats, vec![t.root().unwrap()]);
    }

    #[test]
    fn left_depth_on_maximal_trees() {
        for h in 0..7 {
            assert!(check_left_depth_monotone(&Tree::maximal(h).unwrap()));
        }
    }

    #[test]
    fn beta_witness_small_r() {
        let w = beta_witness(1).unwrap();
        assert_eq!((w.size, w.measured_tsl), (3, 5));
        let w = beta_witness(3).unwrap();
        assert_eq!(w.shape, WitnessShape::BottomSharedBranch);
        assert_eq!(w.leading_spines, vec![9, 5, 3, 1]);
        assert_eq!(w.residual, "M 2");
        assert_eq!(w.expected_tsl, 16 + 2 + 11);
        assert!(beta_witness(0).is_err());
    }

    #[test]
    fn beta_witness_through_twelve() {
        for r in 1..=12 {
            let w = beta_witness(r).unwrap();
            assert_eq!(w.size, (1 << r) + r as usize);
            assert_eq!(w.measured_tsl, w.expected_tsl);
        }
    }

    #[test]
    fn root_shared_branch_is_rejected() {
        assert!(verify_witness(4, WitnessShape::RootSharedBranch, 11).is_err());
    }

    #[test]
    fn self_overlap_examples() {
        assert_eq!(max_self_overlap("aaaa"), 3);
        assert_eq!(max_self_overlap("1234512345"), 5);
        assert_eq!(max_self_overlap("11111"), 4);
        assert_eq!(max_self_overlap("7"), 0);
        assert_eq!(max_self_overlap(""), 0);
        assert_eq!(longest_border("abcab"), 2);
    }

    #[test]
    fn growth_records_for_small_table() {
        let rp2 = vec![2, 4, 2, 4, 2, 14, 2, 4, 2];
        let table = build_table_from(9, rp2).unwrap();
        let irp = vec![1, 3, 1, 2, 1, 7, 1, 2, 1];
        let records = check_rp_growth_bounds(&table, &irp);
        let failing: Vec<_> = records.iter().filter(|r| !r.pass).map(|r| (r.check.as_str(), r.h)).collect();
        assert_eq!(failing, vec![("irp_log_bound", Some(5))]);
        let h1 = records.iter().find(|r| r.check == "rp2_growth_bound" && r.h == Some(1)).unwrap();
        assert_eq!(h1.details, "rp2=4 bound=540.0");
        let json = serde_json::to_string(&records[0]).unwrap();
        assert_eq!(json, r#"{"check":"irp_log_bound","h":0,"pass":true,"details":"irp=1 bound=4"}"#);
    }

    #[test]
    fn random_trees_are_deterministic() {
        let a = random_tree(&mut ChaCha8Rng::seed_from_u64(3), 48);
        let b = random_tree(&mut ChaCha8Rng::seed_from_u64(3), 48);
        assert_eq!(format_tree(&a), format_tree(&b));
        assert!((1..=48).contains(&a.size()));
    }

    proptest! {
        #[test]
        fn borders_agree_under_reversal(s in "[0-2]{0,40}") {
            let rev: String = s.chars().rev().collect();
            prop_assert_eq!(longest_border(&s), longest_border(&rev));
        }

        #[test]
        fn self_overlap_matches_naive(s in "[0-2]{1,30}") {
            let b = s.as_bytes();
            let naive = (0..b.len())
                .flat_map(|start| (1..b.len() - start).map(move |len| (start, len)))
                .filter(|&(start, len)| {
                    let suffix = &b[start..];
                    suffix[..len] == suffix[suffix.len() - len..] && len < suffix.len()
                })
                .map(|(_, len)| len)
                .max()
                .unwrap_or(0);
            prop_assert_eq!(max_self_overlap(&s), naive);
        }

        #[test]
        fn upper_segments_survive_on_random_trees(seed in any::<u64>(), frac in 0.0f64..=1.0) {
            let t = random_tree(&mut ChaCha8Rng::seed_from_u64(seed), 32);
            let e = UpperSegment::top(&t, (t.spine().len() as f64 * frac) as usize);
            prop_assert!(check_upper_segment_preservation(&t, &e, t.size()).unwrap(), "{}", format_tree(&t));
        }

        #[test]
        fn left_depth_never_grows(seed in any::<u64>()) {
            let t = random_tree(&mut ChaCha8Rng::seed_from_u64(seed), 32);
            prop_assert!(check_left_depth_monotone(&t), "{}", format_tree(&t));
        }
    }
}
