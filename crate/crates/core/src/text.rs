//! Text form of tree shapes.
//!
//! ```text
//! Tree := "." | "(" Tree Tree ")" | "M" <int >= -1>
//! ```
//!
//! `"M k"` stands for the maximal tree of height `k`. Whitespace only
//! separates tokens. The canonical form written by [`format_tree`] uses no
//! whitespace except the single space after `M`, writes every maximal subtree
//! of height at least 1 as `M k`, and writes leaves as `(..)`.

use crate::error::{Error, Result};
use crate::tree::{NodeId, Tree};

pub fn parse_tree(text: &str) -> Result<Tree> {
    let bytes = text.as_bytes();
    let mut tree = Tree::new();
    // Each open parenthesis collects up to two finished children.
    let mut frames: Vec<(usize, Vec<Option<NodeId>>)> = Vec::new();
    let mut done: Option<Option<NodeId>> = None;
    let mut pos = 0;

    let err = |pos: usize, msg: &str| Error::Parse { pos, msg: msg.to_string() };

    while pos < bytes.len() {
        let c = bytes[pos];
        if c.is_ascii_whitespace() {
            pos += 1;
            continue;
        }
        if done.is_some() {
            return Err(err(pos, "trailing input after complete tree"));
        }
        let start = pos;
        let finished: Option<Option<NodeId>> = match c {
            b'.' => {
                pos += 1;
                Some(None)
            }
            b'(' => {
                frames.push((pos, Vec::with_capacity(2)));
                pos += 1;
                None
            }
            b')' => {
                let (_, kids) = frames.pop().ok_or_else(|| err(pos, "unmatched ')'"))?;
                if kids.len() != 2 {
                    return Err(err(pos, "expected two subtrees before ')'"));
                }
                pos += 1;
                Some(Some(tree.push_node(kids[0], kids[1])))
            }
            b'M' => {
                pos += 1;
                while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
                    pos += 1;
                }
                let num_start = pos;
                if pos < bytes.len() && bytes[pos] == b'-' {
                    pos += 1;
                }
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                let h: i64 =
                    text[num_start..pos].parse().map_err(|_| err(num_start, "expected integer height after 'M'"))?;
                if h < -1 {
                    return Err(err(num_start, "height must be at least -1"));
                }
                if h > 40 {
                    return Err(err(num_start, "height too large to materialize"));
                }
                Some(tree.alloc_maximal(h as i32))
            }
            _ => return Err(err(pos, "unexpected character")),
        };
        if let Some(node) = finished {
            match frames.last_mut() {
                Some((_, kids)) if kids.len() < 2 => kids.push(node),
                Some(_) => return Err(err(start, "more than two subtrees inside '( )'")),
                None => done = Some(node),
            }
        }
    }
    if let Some((open, _)) = frames.last() {
        return Err(err(*open, "unclosed '('"));
    }
    let root = done.ok_or_else(|| err(pos, "empty input"))?;
    tree.set_root(root);
    Ok(tree)
}

pub fn format_tree(tree: &Tree) -> String {
    format_subtree(tree, tree.root())
}

pub fn format_subtree(tree: &Tree, from: Option<NodeId>) -> String {
    let maximal_height = maximal_heights(tree, from);
    let mut out = String::new();
    enum Item {
        Node(Option<NodeId>),
        Close,
    }
    let mut stack = vec![Item::Node(from)];
    while let Some(item) = stack.pop() {
        match item {
            Item::Close => out.push(')'),
            Item::Node(None) => out.push('.'),
            Item::Node(Some(v)) => match maximal_height[v.0 as usize] {
                Some(h) if h >= 1 => {
                    out.push_str("M ");
                    out.push_str(&h.to_string());
                }
                _ => {
                    out.push('(');
                    stack.push(Item::Close);
                    stack.push(Item::Node(tree.right(v)));
                    stack.push(Item::Node(tree.left(v)));
                }
            },
        }
    }
    out
}

/// For every node under `from`, its height if its subtree is maximal.
fn maximal_heights(tree: &Tree, from: Option<NodeId>) -> Vec<Option<i32>> {
    let mut out: Vec<Option<i32>> = vec![None; tree.capacity()];
    let mut stack: Vec<(NodeId, bool)> = from.map(|v| (v, false)).into_iter().collect();
    while let Some((v, expanded)) = stack.pop() {
        if expanded {
            let side = |c: Option<NodeId>| match c {
                None => Some(-1),
                Some(c) => out[c.0 as usize],
            };
            out[v.0 as usize] = match (side(tree.left(v)), side(tree.right(v))) {
                (Some(a), Some(b)) if a == b => Some(a + 1),
                _ => None,
            };
        } else {
            stack.push((v, true));
            stack.extend([tree.left(v), tree.right(v)].into_iter().flatten().map(|c| (c, false)));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_forms() {
        assert!(parse_tree(".").unwrap().is_empty());
        assert_eq!(parse_tree("((..)(..))").unwrap(), Tree::maximal(1).unwrap());
        let m3 = parse_tree("M 3").unwrap();
        assert_eq!(m3.size(), 15);
        assert_eq!(m3, Tree::maximal(3).unwrap());
        assert!(parse_tree("M -1").unwrap().is_empty());
        assert_eq!(parse_tree("  ( M0\n . ) ").unwrap().size(), 2);
    }

    #[test]
    fn canonical_output() {
        assert_eq!(format_tree(&Tree::new()), ".");
        assert_eq!(format_tree(&Tree::maximal(0).unwrap()), "(..)");
        assert_eq!(format_tree(&Tree::maximal(1).unwrap()), "M 1");
        let t = Tree::extend(Tree::maximal(2).unwrap(), 2);
        assert_eq!(format_tree(&t), "((M 2.).)");
        for text in [".", "(..)", "M 4", "((..).)", "(.(M 2(..)))"] {
            assert_eq!(format_tree(&parse_tree(text).unwrap()), text);
        }
    }

    #[test]
    fn errors_carry_positions() {
        let cases =
            [("", 0), ("(..", 0), ("(...)", 3), ("(..))", 4), (". .", 2), ("x", 0), ("M", 1), ("M -2", 2), ("(.)", 2)];
        for (text, want) in cases {
            match parse_tree(text) {
                Err(Error::Parse { pos, .. }) => assert_eq!(pos, want, "input {text:?}"),
                other => panic!("input {text:?}: expected parse error, got {other:?}"),
            }
        }
    }

    #[test]
    fn deep_paths_do_not_recurse() {
        let n = 100_000;
        let text = format!("{}.{}", "(".repeat(n), ".)".repeat(n));
        let t = parse_tree(&text).unwrap();
        assert_eq!(t.size(), n);
        assert_eq!(t.spine().len(), n);
        assert_eq!(format_tree(&t), text);
    }
}
