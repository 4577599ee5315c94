//! The subtree order `F ◁ F'`: `F` sits inside `F'` rooted at a u-node.
//!
//! A u-node labeled `c` whose parent is labeled `x` roots the subtree
//! `F^{c, x+c}`, since the rules rebuild everything below from those two
//! labels. Deciding `F^{c,d} ◁ F'` is then one closed-form check per level.
//! Moving down to the first u-child is the map `L`, and to the u-child of the
//! first v-child is `R`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::fib::fib;
use crate::fibword::Letter;
use crate::goldring::{Atom, GoldInt, MapWord};
use crate::tree::{FibTree, NodeRef};
use crate::wythoff::u;

pub const DEFAULT_DEPTH: u32 = 10;

/// Where a subtree sits in its parent tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubtreeWitness {
    pub level: u32,
    pub pos: BigInt,
    /// Forward word sending the parent identity to the child identity.
    pub word: MapWord,
}

/// Decides `child ◁ parent`, scanning levels `1..=level_cap`.
pub fn is_subtree(child: &FibTree, parent: &FibTree, level_cap: u32) -> Option<SubtreeWitness> {
    if child == parent {
        return Some(SubtreeWitness {
            level: 0,
            pos: BigInt::from(1),
            word: MapWord::empty(),
        });
    }
    let (c, d) = (&child.a, &child.b);
    let x = d - c;
    for n in 1..=level_cap {
        // the parent of the candidate has u-count k at level n
        let k: BigInt = &x - parent.leftmost(n as i64 - 1) + 1;
        if !k.is_positive() || k > fib(n as i64 + 1) {
            continue;
        }
        let pos = u(&k);
        if &(parent.leftmost(n as i64) - 1 + &pos) == c {
            let node = NodeRef::new(n, pos);
            let word = path_word(&node).expect("valid u-node");
            return Some(SubtreeWitness {
                level: n,
                pos: node.pos,
                word,
            });
        }
    }
    None
}

/// The forward word leading from the root to the subtree at a u-node.
///
/// Walking up: a u-parent contributes `L`, a v-parent contributes `R` and
/// skips to the grandparent. Atoms are listed nearest-first, which is the
/// order in which the word applies them last-to-first.
pub fn path_word(node: &NodeRef) -> Result<MapWord> {
    if node.letter()? != Letter::U {
        return Err(Error::NotUNode {
            level: node.level,
            pos: node.pos.clone(),
        });
    }
    let mut atoms = Vec::new();
    let mut cur = node.clone();
    while cur.level > 0 {
        let parent = cur.parent()?;
        match parent.letter()? {
            Letter::U => {
                atoms.push(Atom::L);
                cur = parent;
            }
            Letter::V => {
                atoms.push(Atom::R);
                cur = parent.parent()?;
            }
        }
    }
    Ok(MapWord(atoms))
}

/// The subtree of `t` reached by a forward word.
pub fn subtree_at(t: &FibTree, w: &MapWord) -> Result<FibTree> {
    if !w.is_forward() {
        return Err(Error::InverseAtom);
    }
    Ok(FibTree::from_identity(w.apply(&t.identity())))
}

type WordKey = (usize, Vec<Atom>);

fn word_key(w: &MapWord) -> WordKey {
    (w.len(), w.0.clone())
}

/// Nonempty forward words of length at most `depth` fixing the tree's identity.
pub fn self_containment(t: &FibTree, depth: u32) -> Result<Vec<MapWord>> {
    if depth == 0 {
        return Err(Error::InvalidArgument("depth must be at least 1".into()));
    }
    let z = t.identity();
    let mut found = Vec::new();
    // extend on the left, so the value of the longer word is one atom away
    let mut stack: Vec<(Vec<Atom>, GoldInt)> = vec![(Vec::new(), z.clone())];
    while let Some((atoms, value)) = stack.pop() {
        if atoms.len() as u32 == depth {
            continue;
        }
        for atom in [Atom::L, Atom::R] {
            let next = atom.apply(&value);
            let mut word = Vec::with_capacity(atoms.len() + 1);
            word.push(atom);
            word.extend_from_slice(&atoms);
            if next == z {
                found.push(MapWord(word.clone()));
            }
            stack.push((word, next));
        }
    }
    found.sort_by_key(word_key);
    Ok(found)
}

/// Trees `F` with `t ◁ F` reachable by forward words of length `≤ depth`,
/// each with the shortest such word.
pub fn ancestors(t: &FibTree, depth: u32) -> BTreeMap<(BigInt, BigInt), MapWord> {
    let mut seen: BTreeMap<(BigInt, BigInt), MapWord> = BTreeMap::new();
    seen.insert((t.a.clone(), t.b.clone()), MapWord::empty());
    let mut frontier = vec![(t.identity(), Vec::<Atom>::new())];
    for _ in 0..depth {
        let mut next = Vec::new();
        for (z, word) in &frontier {
            for atom in [Atom::L, Atom::R] {
                // t = w(z) and z = A(y) give t = (w A)(y)
                let y = atom.inverse().apply(z);
                let mut w = word.clone();
                w.push(atom);
                let key = (y.a.clone(), y.b.clone());
                if let Entry::Vacant(slot) = seen.entry(key) {
                    slot.insert(MapWord(w.clone()));
                    next.push((y, w));
                }
            }
        }
        frontier = next;
    }
    seen
}

/// A common ancestor of two trees, with the forward words reaching each.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UpperBound {
    pub tree: FibTree,
    /// `t1 = word1(tree)`.
    pub word1: MapWord,
    /// `t2 = word2(tree)`.
    pub word2: MapWord,
}

impl UpperBound {
    pub fn total_len(&self) -> usize {
        self.word1.len() + self.word2.len()
    }

    fn key(&self) -> (usize, WordKey, WordKey) {
        (self.total_len(), word_key(&self.word1), word_key(&self.word2))
    }
}

/// Common ancestors of `t1` and `t2` within `depth` inverse steps that are
/// minimal under `◁` among themselves, shortest combined word first.
pub fn minimal_upper_bounds(t1: &FibTree, t2: &FibTree, depth: u32) -> Result<Vec<UpperBound>> {
    if depth == 0 {
        return Err(Error::InvalidArgument("depth must be at least 1".into()));
    }
    let a1 = ancestors(t1, depth);
    let a2 = ancestors(t2, depth);
    let common: Vec<UpperBound> = a1
        .iter()
        .filter_map(|(key, w1)| {
            a2.get(key).map(|w2| UpperBound {
                tree: FibTree::new(key.0.clone(), key.1.clone()),
                word1: w1.clone(),
                word2: w2.clone(),
            })
        })
        .collect();
    let cap = 4 * depth + 2;
    let mut minimal: Vec<UpperBound> = common
        .iter()
        .filter(|f| {
            !common
                .iter()
                .any(|g| g.tree != f.tree && is_subtree(&g.tree, &f.tree, cap).is_some())
        })
        .cloned()
        .collect();
    minimal.sort_by_key(UpperBound::key);
    Ok(minimal)
}

/// The `◁`-minimal common ancestors with the shortest combined word. Several
/// `◁`-minimal candidates can coexist; this keeps the smallest by word length.
/// An empty result only means none was found within the bound.
pub fn least_upper_bound(t1: &FibTree, t2: &FibTree, depth: u32) -> Result<Vec<FibTree>> {
    let minimal = minimal_upper_bounds(t1, t2, depth)?;
    let Some(best) = minimal.first().map(UpperBound::total_len) else {
        return Ok(Vec::new());
    };
    Ok(minimal
        .into_iter()
        .take_while(|m| m.total_len() == best)
        .map(|m| m.tree)
        .collect())
}
