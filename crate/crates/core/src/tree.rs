//! Labeled Fibonacci trees `F^{a,b}`.
//!
//! A tree is identified by its root label `a` and the label `b` of its first
//! v-node. Labels at level `n` are the consecutive integers
//! `A_n ..= B_n` with `B_n = a F_{n-1} + b F_n` and `A_n = B_n - F_{n+2} + 1`,
//! so queries below work from closed forms. [`RuleLevels`] builds levels by
//! applying the three labeling rules literally and serves as the oracle for
//! the closed forms.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::fib::{fib, seeded};
use crate::fibword::{self, letter_at_unchecked, u_count_unchecked, Letter, Word};
use crate::goldring::GoldInt;
use crate::wythoff::{u, v};

/// The labeled tree `F^{a,b}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct FibTree {
    pub a: BigInt,
    pub b: BigInt,
}

impl FibTree {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        FibTree {
            a: a.into(),
            b: b.into(),
        }
    }

    /// The element `a + bφ` identifying the tree.
    pub fn identity(&self) -> GoldInt {
        GoldInt {
            a: self.a.clone(),
            b: self.b.clone(),
        }
    }

    pub fn from_identity(z: GoldInt) -> Self {
        FibTree { a: z.a, b: z.b }
    }

    /// Rightmost label `B_n`.
    pub fn rightmost(&self, n: i64) -> BigInt {
        seeded(&self.a, &self.b, n)
    }

    /// Leftmost label `A_n`.
    pub fn leftmost(&self, n: i64) -> BigInt {
        self.rightmost(n) - fib(n + 2) + 1
    }
}

impl fmt::Display for FibTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F^{{{},{}}}", self.a, self.b)
    }
}

/// Labels at one level: the interval `lo ..= hi` of `F_{n+2}` integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelLabeling {
    pub level: u32,
    pub lo: BigInt,
    pub hi: BigInt,
}

impl LevelLabeling {
    pub fn len(&self) -> BigInt {
        fib(self.level as i64 + 2)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, x: &BigInt) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    /// The u/v pattern of the level, `W_n`.
    pub fn pattern(&self) -> Result<Word> {
        fibword::word(self.level)
    }
}

pub fn level_interval(t: &FibTree, n: u32) -> LevelLabeling {
    let n64 = n as i64;
    let hi = t.rightmost(n64);
    let lo = &hi - fib(n64 + 2) + 1;
    LevelLabeling { level: n, lo, hi }
}

/// A node addressed by level and 1-based position within the level.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NodeRef {
    pub level: u32,
    pub pos: BigInt,
}

impl NodeRef {
    pub fn new(level: u32, pos: impl Into<BigInt>) -> Self {
        NodeRef {
            level,
            pos: pos.into(),
        }
    }

    pub fn root() -> Self {
        NodeRef::new(0, 1)
    }

    pub fn validate(&self) -> Result<()> {
        let len = fib(self.level as i64 + 2);
        if self.pos.is_positive() && self.pos <= len {
            Ok(())
        } else {
            Err(Error::Position {
                level: self.level,
                pos: self.pos.clone(),
                len,
            })
        }
    }

    pub fn letter(&self) -> Result<Letter> {
        self.validate()?;
        Ok(letter_at_unchecked(&self.pos))
    }

    /// The parent node one level up.
    pub fn parent(&self) -> Result<NodeRef> {
        self.validate()?;
        if self.level == 0 {
            return Err(Error::RootHasNoParent);
        }
        Ok(NodeRef::new(self.level - 1, u_count_unchecked(&self.pos)))
    }

    /// Position of the first child at the next level.
    fn first_child_pos(&self) -> BigInt {
        let before: BigInt = &self.pos - 1;
        let generated = if before.is_zero() {
            BigInt::zero()
        } else {
            &before + u_count_unchecked(&before)
        };
        generated + 1
    }
}

impl fmt::Display for NodeRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(level {}, pos {})", self.level, self.pos)
    }
}

/// A node's label and letter, with the Wythoff index used by the corollary
/// formula: `k` (u-count) for u-nodes and `l` (v-count) for v-nodes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodeLabel {
    pub label: BigInt,
    pub letter: Letter,
    pub wythoff_index: BigInt,
}

/// Label and letter of a node. The label is computed twice, as the interval
/// offset `A_n + pos - 1` and as `A_n - 1 + u(k)` or `A_n - 1 + v(l)`, and the
/// two must agree.
pub fn node_label(t: &FibTree, node: &NodeRef) -> Result<NodeLabel> {
    node.validate()?;
    let lo = t.leftmost(node.level as i64);
    let label = &lo + &node.pos - 1;
    let k = u_count_unchecked(&node.pos);
    let (letter, index, via_wythoff) = if u(&k) == node.pos {
        let y = &lo - 1 + u(&k);
        (Letter::U, k, y)
    } else {
        let l = &node.pos - &k;
        let y = &lo - 1 + v(&l);
        (Letter::V, l, y)
    };
    if via_wythoff != label {
        return Err(Error::CrossCheck(format!(
            "node {node} of {t}: offset label {label} vs Wythoff label {via_wythoff}"
        )));
    }
    Ok(NodeLabel {
        label,
        letter,
        wythoff_index: index,
    })
}

/// Label of the parent: `A_{n-1} - 1 + k` with `k` the u-count up to the node.
pub fn parent_label(t: &FibTree, node: &NodeRef) -> Result<BigInt> {
    node.validate()?;
    if node.level == 0 {
        return Err(Error::RootHasNoParent);
    }
    Ok(t.leftmost(node.level as i64 - 1) - 1 + u_count_unchecked(&node.pos))
}

/// A child produced by the labeling rules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Child {
    pub node: NodeRef,
    pub label: BigInt,
    pub letter: Letter,
}

/// Children of a node following the labeling rules.
pub fn children_labels(t: &FibTree, node: &NodeRef) -> Result<Vec<Child>> {
    let me = node_label(t, node)?;
    let first = NodeRef::new(node.level + 1, node.first_child_pos());
    if node.level == 0 {
        let second = NodeRef::new(1, 2);
        return Ok(vec![
            Child {
                node: first,
                label: &t.b - 1,
                letter: Letter::U,
            },
            Child {
                node: second,
                label: t.b.clone(),
                letter: Letter::V,
            },
        ]);
    }
    let x = parent_label(t, node)?;
    let y = me.label;
    Ok(match me.letter {
        Letter::U => {
            let second = NodeRef::new(first.level, &first.pos + 1);
            vec![
                Child {
                    node: first,
                    label: &x + &y - 1,
                    letter: Letter::U,
                },
                Child {
                    node: second,
                    label: x + y,
                    letter: Letter::V,
                },
            ]
        }
        Letter::V => vec![Child {
            node: first,
            label: x + y,
            letter: Letter::U,
        }],
    })
}

/// Labels along the ascending branch starting at a u-node, alternating
/// u-node → v-child → u-child → ….
pub fn branch_sequence(t: &FibTree, start: &NodeRef, len: usize) -> Result<Vec<BigInt>> {
    if len < 2 {
        return Err(Error::InvalidArgument("branch length must be at least 2".into()));
    }
    let first = node_label(t, start)?;
    if first.letter != Letter::U {
        return Err(Error::NotUNode {
            level: start.level,
            pos: start.pos.clone(),
        });
    }
    let mut out = vec![first.label];
    let mut cur = start.clone();
    let mut letter = Letter::U;
    while out.len() < len {
        let kids = children_labels(t, &cur)?;
        let next = match letter {
            Letter::U => kids.into_iter().find(|c| c.letter == Letter::V),
            Letter::V => kids.into_iter().next(),
        }
        .ok_or_else(|| Error::CrossCheck(format!("node {cur} has no branch child")))?;
        out.push(next.label);
        letter = next.letter;
        cur = next.node;
    }
    Ok(out)
}

/// One node of a level built by the labeling rules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleNode {
    pub label: BigInt,
    pub letter: Letter,
    /// 1-based position of the parent in the previous level.
    pub parent_pos: Option<usize>,
}

/// Levels `0, 1, 2, …` of a tree built node by node from the labeling rules.
pub struct RuleLevels {
    tree: FibTree,
    prev: Vec<RuleNode>,
    cur: Vec<RuleNode>,
    started: bool,
}

impl RuleLevels {
    pub fn new(t: &FibTree) -> Self {
        RuleLevels {
            tree: t.clone(),
            prev: Vec::new(),
            cur: Vec::new(),
            started: false,
        }
    }

    fn advance(&mut self) {
        if !self.started {
            self.started = true;
            self.cur = vec![RuleNode {
                label: self.tree.a.clone(),
                letter: Letter::U,
                parent_pos: None,
            }];
            return;
        }
        let mut next = Vec::with_capacity(self.cur.len() * 2);
        for (idx, node) in self.cur.iter().enumerate() {
            let pos = Some(idx + 1);
            let y = &node.label;
            let kids: Vec<(BigInt, Letter)> = match node.parent_pos {
                // root: a u-node labeled b-1 and a v-node labeled b
                None => vec![(&self.tree.b - 1, Letter::U), (self.tree.b.clone(), Letter::V)],
                Some(p) => {
                    let x = &self.prev[p - 1].label;
                    match node.letter {
                        Letter::U => vec![(x + y - 1, Letter::U), (x + y, Letter::V)],
                        Letter::V => vec![(x + y, Letter::U)],
                    }
                }
            };
            next.extend(kids.into_iter().map(|(label, letter)| RuleNode {
                label,
                letter,
                parent_pos: pos,
            }));
        }
        self.prev = std::mem::replace(&mut self.cur, next);
    }
}

impl Iterator for RuleLevels {
    type Item = Vec<RuleNode>;

    fn next(&mut self) -> Option<Vec<RuleNode>> {
        self.advance();
        Some(self.cur.clone())
    }
}

/// Level `n` built by applying the labeling rules from the root.
pub fn build_level_by_rules(t: &FibTree, n: u32, cap: u32) -> Result<Vec<RuleNode>> {
    if n > cap {
        return Err(Error::LevelCap { requested: n, cap });
    }
    let mut levels = RuleLevels::new(t);
    Ok(levels.nth(n as usize).expect("rule levels are unbounded"))
}

/// Levels `0..=n` built by the rules.
pub fn build_levels_by_rules(t: &FibTree, n: u32, cap: u32) -> Result<Vec<Vec<RuleNode>>> {
    if n > cap {
        return Err(Error::LevelCap { requested: n, cap });
    }
    Ok(RuleLevels::new(t).take(n as usize + 1).collect())
}

/// Position of a label within a level, if the label occurs there.
pub fn position_of_label(t: &FibTree, level: u32, label: &BigInt) -> Option<BigInt> {
    let iv = level_interval(t, level);
    iv.contains(label).then(|| label - &iv.lo + BigInt::one())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn closed_form_intervals() {
        let f01 = FibTree::new(0, 1);
        let lv = level_interval(&f01, 5);
        assert_eq!((lv.lo, lv.hi), (b(-7), b(5)));
        let f12 = FibTree::new(1, 2);
        for n in 0..25 {
            let lv = level_interval(&f12, n);
            assert_eq!(lv.lo, b(1));
            assert_eq!(lv.hi, fib(n as i64 + 2));
            let z = level_interval(&FibTree::new(0, 0), n);
            assert_eq!(z.lo, -fib(n as i64 + 2) + 1);
            assert_eq!(z.hi, b(0));
        }
    }

    #[test]
    fn rules_small_levels() {
        let f01 = FibTree::new(0, 1);
        let l1 = build_level_by_rules(&f01, 1, 30).unwrap();
        let got: Vec<_> = l1.iter().map(|n| (n.label.clone(), n.letter, n.parent_pos)).collect();
        assert_eq!(got, vec![(b(0), Letter::U, Some(1)), (b(1), Letter::V, Some(1))]);
        let root = build_level_by_rules(&FibTree::new(7, -3), 0, 30).unwrap();
        assert_eq!(root, vec![RuleNode { label: b(7), letter: Letter::U, parent_pos: None }]);
        let l5: Vec<BigInt> = build_level_by_rules(&f01, 5, 30)
            .unwrap()
            .into_iter()
            .map(|n| n.label)
            .collect();
        assert_eq!(l5, (-7..=5).map(b).collect::<Vec<_>>());
        assert!(matches!(
            build_level_by_rules(&f01, 31, 30),
            Err(Error::LevelCap { .. })
        ));
    }

    #[test]
    fn worked_example_labels() {
        let f01 = FibTree::new(0, 1);
        let q = NodeRef::new(5, 6);
        let lab = node_label(&f01, &q).unwrap();
        assert_eq!((lab.label, lab.letter, lab.wythoff_index), (b(-2), Letter::U, b(4)));
        assert_eq!(parent_label(&f01, &q).unwrap(), b(-1));
        let kids = children_labels(&f01, &q).unwrap();
        let got: Vec<_> = kids.iter().map(|c| (c.label.clone(), c.letter)).collect();
        assert_eq!(got, vec![(b(-4), Letter::U), (b(-3), Letter::V)]);
        let r = node_label(&f01, &kids[1].node).unwrap();
        assert_eq!(kids[1].node, NodeRef::new(6, 10));
        assert_eq!(r.label, b(-3));
        assert_eq!(r.wythoff_index, b(4));
    }

    #[test]
    fn root_queries() {
        let t = FibTree::new(-4, 9);
        let root = node_label(&t, &NodeRef::root()).unwrap();
        assert_eq!((root.label, root.letter), (b(-4), Letter::U));
        assert_eq!(parent_label(&t, &NodeRef::root()), Err(Error::RootHasNoParent));
        assert_eq!(parent_label(&FibTree::new(0, 1), &NodeRef::new(1, 1)).unwrap(), b(0));
        assert_eq!(parent_label(&FibTree::new(1, 2), &NodeRef::new(4, 7)).unwrap(), b(4));
        let kids = children_labels(&FibTree::new(0, 1), &NodeRef::root()).unwrap();
        let got: Vec<_> = kids.iter().map(|c| (c.label.clone(), c.letter)).collect();
        assert_eq!(got, vec![(b(0), Letter::U), (b(1), Letter::V)]);
    }

    #[test]
    fn v_node_child_rule() {
        // the v-node labeled 2 at level 1 of F^{1,2} has parent 1: child 3
        let t = FibTree::new(1, 2);
        let kids = children_labels(&t, &NodeRef::new(1, 2)).unwrap();
        assert_eq!(kids.len(), 1);
        assert_eq!((kids[0].label.clone(), kids[0].letter), (b(3), Letter::U));
    }

    #[test]
    fn invalid_positions() {
        let t = FibTree::new(0, 1);
        assert!(node_label(&t, &NodeRef::new(3, 0)).is_err());
        assert!(node_label(&t, &NodeRef::new(3, 6)).is_err());
        assert!(node_label(&t, &NodeRef::new(3, 5)).is_ok());
    }

    #[test]
    fn branches() {
        let f12 = FibTree::new(1, 2);
        assert_eq!(
            branch_sequence(&f12, &NodeRef::root(), 5).unwrap(),
            vec![b(1), b(2), b(3), b(5), b(8)]
        );
        assert_eq!(
            branch_sequence(&f12, &NodeRef::new(3, 4), 4).unwrap(),
            vec![b(4), b(7), b(11), b(18)]
        );
        assert!(matches!(
            branch_sequence(&f12, &NodeRef::new(1, 2), 3),
            Err(Error::NotUNode { .. })
        ));
        assert!(branch_sequence(&f12, &NodeRef::root(), 1).is_err());
    }

    #[test]
    fn rules_match_closed_form_on_a_small_grid() {
        for a in -3..=3 {
            for bb in -3..=3 {
                let t = FibTree::new(a, bb);
                for (n, level) in RuleLevels::new(&t).take(12).enumerate() {
                    let iv = level_interval(&t, n as u32);
                    let word = fibword::word(n as u32).unwrap();
                    for (i, node) in level.iter().enumerate() {
                        assert_eq!(node.label, &iv.lo + i);
                        assert_eq!(Some(node.letter), word.at(i + 1));
                    }
                    assert_eq!(BigInt::from(level.len()), iv.len());
                }
            }
        }
    }
}
