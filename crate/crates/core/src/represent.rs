//! What a tree represents, and where a Fibonacci sequence sits inside it.
//!
//! A tree `F^{a,b}` represents every integer interval exactly when
//! `0 < a + bφ < φ³`; that set of trees is Ψ. Inside a Ψ-tree every Fibonacci
//! sequence starts an ascending branch at some primitive node (a u-node whose
//! parent is a u-node).
//!
//! Write `G_n = F^{a-1,b-2}_n = A_n - 1`. The u-node at level `n-1` with
//! u-count `i` (`1 ≤ i ≤ F_n`) has label `G_{n-1} + u(i)` and its u-child is
//! the primitive node at position `uu(i)` of level `n`, carrying the
//! primitive tree-pair `(G_n + uu(i), G_{n+1} + vu(i))`. Both the constructive
//! search and the per-level solver below are built on that formula.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::fib::fib;
use crate::fibword::Letter;
use crate::goldring::GoldInt;
use crate::tree::{
    branch_sequence, level_interval, node_label, FibTree, NodeRef, RuleLevels,
};
use crate::wythoff::{primitive_pair_index, u, u_rank, v, FibSeq};

pub use crate::wythoff::verify_lemma_shift;

/// Default level cap for sequence searches.
pub const DEFAULT_SEARCH_CAP: u32 = 60;

/// Bound on forward steps when looking for a sequence's primitive Wythoff pair.
const MAX_PAIR_STEPS: usize = 10_000;

/// The three-way partition of all trees.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TreeClass {
    /// `0 < a + bφ < φ³`: the tree is in Ψ.
    RepresentsZ,
    /// `a + bφ ≤ 0`.
    NonpositiveSide,
    /// `a + bφ ≥ φ³`.
    PositiveSide,
}

impl TreeClass {
    pub fn name(self) -> &'static str {
        match self {
            TreeClass::RepresentsZ => "RepresentsZ",
            TreeClass::NonpositiveSide => "NonpositiveSide",
            TreeClass::PositiveSide => "PositiveSide",
        }
    }
}

pub fn classify(t: &FibTree) -> TreeClass {
    if t.identity().sign() <= 0 {
        return TreeClass::NonpositiveSide;
    }
    // a + bφ < φ³ = 1 + 2φ  ⇔  (a-1) + (b-2)φ < 0
    let shifted = GoldInt::new(&t.a - 1, &t.b - 2);
    if shifted.sign() < 0 {
        TreeClass::RepresentsZ
    } else {
        TreeClass::PositiveSide
    }
}

pub fn in_psi(t: &FibTree) -> bool {
    classify(t) == TreeClass::RepresentsZ
}

fn require_psi(t: &FibTree) -> Result<()> {
    match classify(t) {
        TreeClass::RepresentsZ => Ok(()),
        class => Err(Error::NotInPsi { class }),
    }
}

/// `G = F^{a-1,b-2}`, the sequence of leftmost labels minus one.
fn offset_sequence(t: &FibTree) -> FibSeq {
    FibSeq::new(&t.a - 1, &t.b - 2)
}

/// Smallest level from which `[lo..hi]` stays inside the level labels.
pub fn find_interval_level(t: &FibTree, lo: &BigInt, hi: &BigInt) -> Result<u32> {
    require_psi(t)?;
    if lo > hi {
        return Err(Error::InvalidArgument(format!("empty interval [{lo}..{hi}]")));
    }
    let contains = |n: u32| {
        let iv = level_interval(t, n);
        &iv.lo <= lo && hi <= &iv.hi
    };
    // Past both reference indices the intervals only grow.
    let nu_right = FibSeq::new(t.a.clone(), t.b.clone()).reference_index()?;
    let nu_left = offset_sequence(t).reference_index()?;
    let nested_from = nu_right.max(nu_left).max(0) as u32;
    let mut n = nested_from;
    while !contains(n) {
        n += 1;
    }
    while n > 0 && contains(n - 1) {
        n -= 1;
    }
    Ok(n)
}

/// How an [`Occurrence`] was found.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    /// The construction from the sequence's primitive Wythoff pair.
    WythoffConstruction,
    /// The construction for the zero sequence.
    ZeroLemma,
    /// Exact per-level solve of the primitive tree-pair formula.
    LevelSolve,
}

/// A sequence located along an ascending branch.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Occurrence {
    pub level: u32,
    pub pos: BigInt,
    /// Labels `(y, x + y)` of the node and its v-child.
    pub pair: (BigInt, BigInt),
    /// Branch term `k` equals term `shift + k` of the target sequence.
    pub shift: i64,
    pub primitive: bool,
    pub route: Route,
}

impl Occurrence {
    pub fn node(&self) -> NodeRef {
        NodeRef::new(self.level, self.pos.clone())
    }
}

/// The primitive node at level `n ≥ 1` whose parent has u-count `i`, with its pair.
fn primitive_node(g: &FibSeq, n: u32, i: &BigInt) -> (BigInt, (BigInt, BigInt)) {
    let ui = u(i);
    let pos = u(&ui);
    let y = g.term(n as i64) + &pos;
    let second = g.term(n as i64 + 1) + v(&ui);
    (pos, (y, second))
}

/// Indices `m` of the terms of `s` that fall inside `[lo..hi]`.
fn term_indices_in(s: &FibSeq, lo: &BigInt, hi: &BigInt) -> Vec<i64> {
    if s.is_zero() {
        let zero = BigInt::zero();
        return if lo <= &zero && &zero <= hi { vec![0] } else { vec![] };
    }
    let nu = s.reference_index().expect("nonzero sequence");
    let bound = lo.abs().max(hi.abs());
    let inside = |x: &BigInt| lo <= x && x <= hi;
    let mut out = Vec::new();
    // right of ν the magnitudes increase
    let mut m = nu;
    loop {
        let x = s.term(m);
        if x.abs() > bound {
            break;
        }
        if inside(&x) {
            out.push(m);
        }
        m += 1;
    }
    // left of ν - 3 they increase again
    let mut m = nu - 1;
    loop {
        let x = s.term(m);
        if x.abs() > bound && m <= nu - 3 {
            break;
        }
        if inside(&x) {
            out.push(m);
        }
        m -= 1;
    }
    out
}

/// All primitive nodes at level `n ≥ 1` whose branch realizes `s`, leftmost first.
pub fn occurrences_at_level(t: &FibTree, s: &FibSeq, n: u32) -> Vec<Occurrence> {
    if n == 0 {
        return Vec::new();
    }
    let g = offset_sequence(t);
    let iv = level_interval(t, n);
    let g_n = g.term(n as i64);
    let g_next = g.term(n as i64 + 1);
    let parents = fib(n as i64);
    let mut out = Vec::new();
    for m in term_indices_in(s, &iv.lo, &iv.hi) {
        let (p, q) = (s.term(m), s.term(m + 1));
        // p = G_n + u(r), q = G_{n+1} + v(r) with r = u(i)
        let Some(r) = u_rank(&(&p - &g_n)) else { continue };
        let Some(i) = u_rank(&r) else { continue };
        if !(i.is_positive() && i <= parents) || v(&r) != &q - &g_next {
            continue;
        }
        out.push(Occurrence {
            level: n,
            pos: u(&r),
            pair: (p, q),
            shift: m,
            primitive: true,
            route: Route::LevelSolve,
        });
    }
    out.sort_by(|x, y| x.pos.cmp(&y.pos));
    out.dedup_by(|x, y| x.pos == y.pos);
    out
}

/// Checks that the tree can host `s` at all.
fn check_host(t: &FibTree, s: &FibSeq) -> Result<()> {
    let class = classify(t);
    let ok = match class {
        TreeClass::RepresentsZ => true,
        TreeClass::PositiveSide => s.eventual_sign() > 0,
        TreeClass::NonpositiveSide => s.eventual_sign() < 0,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::NotInPsi { class })
    }
}

/// The zero sequence: the unique level `n ≥ ν + 2` where `x = G_{n-1} + u(i) = 0`
/// for `i = 1 - G_{n-2}`.
fn construct_zero(t: &FibTree, cap: u32) -> Result<Option<Occurrence>> {
    let g = offset_sequence(t);
    let nu = g.reference_index()?;
    let start = (nu + 2).max(1);
    if start > cap as i64 {
        return Ok(None);
    }
    for n in start as u32..=cap {
        let m = n as i64 - 2;
        let i = BigInt::one() - g.term(m);
        if !(i.is_positive() && i <= fib(n as i64)) {
            continue;
        }
        if (u(&i) + g.term(m + 1)).is_zero() {
            let (pos, pair) = primitive_node(&g, n, &i);
            return Ok(Some(Occurrence {
                level: n,
                pos,
                pair,
                shift: 0,
                primitive: true,
                route: Route::ZeroLemma,
            }));
        }
    }
    Ok(None)
}

/// The construction from a primitive Wythoff pair of rank `j ≠ 0`: the first
/// `n` with `i = j - G_{n-2}` in `1..=F_n` and `u(i + G_{n-2}) = u(i) + G_{n-1}`.
fn construct_from_rank(t: &FibTree, j: &BigInt, shift: i64, cap: u32) -> Option<Occurrence> {
    let g = offset_sequence(t);
    let uj = u(j);
    for n in 1..=cap {
        let i = j - g.term(n as i64 - 2);
        if !(i.is_positive() && i <= fib(n as i64)) {
            continue;
        }
        if uj != u(&i) + g.term(n as i64 - 1) {
            continue;
        }
        let (pos, pair) = primitive_node(&g, n, &i);
        return Some(Occurrence {
            level: n,
            pos,
            pair,
            shift,
            primitive: true,
            route: Route::WythoffConstruction,
        });
    }
    None
}

/// The constructive witness alone, without the smallest-level refinement.
///
/// Returns `Ok(None)` for the class of `-1, -1, -2, …`, which has no primitive
/// Wythoff pair of nonzero rank and so falls outside the construction.
pub fn construct_occurrence(t: &FibTree, s: &FibSeq, cap: u32) -> Result<Option<Occurrence>> {
    check_host(t, s)?;
    if s.is_zero() {
        return construct_zero(t, cap);
    }
    match primitive_pair_index(s, MAX_PAIR_STEPS)? {
        Some((idx, j)) => Ok(construct_from_rank(t, &j, idx, cap)),
        None => Ok(None),
    }
}

/// Locates `s` along an ascending branch of `t`, rooted at a primitive node.
///
/// The construction bounds the search; levels below its answer are then
/// solved exactly so the result is the smallest level, leftmost position.
/// The witness is replayed against `s` before it is returned.
pub fn find_sequence(t: &FibTree, s: &FibSeq, level_cap: u32) -> Result<Occurrence> {
    let constructed = construct_occurrence(t, s, level_cap)?;
    let bound = constructed.as_ref().map_or(level_cap, |o| o.level.saturating_sub(1));
    let earlier = (1..=bound).find_map(|n| occurrences_at_level(t, s, n).into_iter().next());
    let found = earlier.or(constructed).ok_or(Error::SearchCap {
        cap: level_cap,
        last_level: level_cap,
    })?;
    replay(t, s, &found, 10)?;
    Ok(found)
}

/// Replays `terms` labels of the branch at `occ` against the target sequence.
pub fn replay(t: &FibTree, s: &FibSeq, occ: &Occurrence, terms: usize) -> Result<()> {
    let node = occ.node();
    let here = node_label(t, &node)?;
    let parent = node.parent()?;
    if here.letter != Letter::U || parent.letter()? != Letter::U {
        return Err(Error::CrossCheck(format!("{node} is not a primitive node")));
    }
    let branch = branch_sequence(t, &node, terms)?;
    let expected = s.terms(occ.shift, terms);
    if branch != expected || branch[0] != occ.pair.0 || branch[1] != occ.pair.1 {
        return Err(Error::CrossCheck(format!(
            "branch at {node} reads {branch:?}, target reads {expected:?}"
        )));
    }
    Ok(())
}

/// A primitive tree-pair located in a rule-built tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimitiveTreePair {
    pub pair: (BigInt, BigInt),
    pub level: u32,
    pub pos: usize,
}

/// All primitive tree-pairs up to level `n_max`, found by scanning rule-built levels.
pub fn primitive_tree_pairs(t: &FibTree, n_max: u32, cap: u32) -> Result<Vec<PrimitiveTreePair>> {
    if n_max > cap {
        return Err(Error::LevelCap {
            requested: n_max,
            cap,
        });
    }
    let mut out = Vec::new();
    let mut prev: Vec<crate::tree::RuleNode> = Vec::new();
    for (n, level) in RuleLevels::new(t).take(n_max as usize + 1).enumerate() {
        for (idx, node) in level.iter().enumerate() {
            let Some(p) = node.parent_pos else { continue };
            let parent = &prev[p - 1];
            if node.letter == Letter::U && parent.letter == Letter::U {
                out.push(PrimitiveTreePair {
                    pair: (node.label.clone(), &parent.label + &node.label),
                    level: n as u32,
                    pos: idx + 1,
                });
            }
        }
        prev = level;
    }
    Ok(out)
}

/// Number of primitive nodes up to `level_cap` whose branch realizes `s`,
/// counted by brute force over rule-built levels.
pub fn count_occurrences(t: &FibTree, s: &FibSeq, level_cap: u32, cap: u32) -> Result<usize> {
    check_host(t, s)?;
    let pairs = primitive_tree_pairs(t, level_cap, cap)?;
    Ok(pairs
        .iter()
        .filter(|p| s.index_of_pair(&p.pair.0, &p.pair.1).is_some())
        .count())
}

/// Levels in `1..=max_level` satisfying the zero-sequence condition
/// `u(1 - G_{n-2}) + G_{n-1} = 0`, with `1 - G_{n-2}` a valid u-count at level `n-1`.
pub fn zero_lemma_levels(t: &FibTree, max_level: u32) -> Vec<u32> {
    let g = offset_sequence(t);
    (1..=max_level)
        .filter(|&n| {
            let m = n as i64 - 2;
            let i = BigInt::one() - g.term(m);
            i.is_positive() && i <= fib(n as i64) && (u(&i) + g.term(m + 1)).is_zero()
        })
        .collect()
}

/// Indices `n` in `lo..=hi`, `n ≥ ν(g)`, with `u(1 - g_n) + g_{n+1} = 0`.
/// For a nonzero `g` there is exactly one such index past `ν`.
pub fn zero_lemma_indices(g: &FibSeq, lo: i64, hi: i64) -> Result<Vec<i64>> {
    let nu = g.reference_index()?;
    Ok((lo.max(nu)..=hi)
        .filter(|&n| (u(&(BigInt::one() - g.term(n))) + g.term(n + 1)).is_zero())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn t(a: i64, bb: i64) -> FibTree {
        FibTree::new(a, bb)
    }

    #[test]
    fn classification() {
        assert_eq!(classify(&t(0, 1)), TreeClass::RepresentsZ);
        assert_eq!(classify(&t(0, 0)), TreeClass::NonpositiveSide);
        assert_eq!(classify(&t(1, 2)), TreeClass::PositiveSide);
        assert_eq!(classify(&t(1, 0)), TreeClass::RepresentsZ);
        assert_eq!(classify(&t(-1, 2)), TreeClass::RepresentsZ);
        assert_eq!(classify(&t(2, 2)), TreeClass::PositiveSide);
        assert_eq!(classify(&t(-2, 1)), TreeClass::NonpositiveSide);
    }

    #[test]
    fn interval_levels() {
        let f01 = t(0, 1);
        assert_eq!(find_interval_level(&f01, &b(-7), &b(5)).unwrap(), 5);
        assert_eq!(find_interval_level(&f01, &b(0), &b(0)).unwrap(), 0);
        assert!(matches!(
            find_interval_level(&t(1, 2), &b(1), &b(2)),
            Err(Error::NotInPsi { class: TreeClass::PositiveSide })
        ));
        // F^{5,-2}: 5 sits at level 0, leaves at level 1 and returns at level 5
        assert_eq!(find_interval_level(&t(5, -2), &b(5), &b(5)).unwrap(), 5);
    }

    #[test]
    fn interval_level_matches_linear_scan() {
        let f01 = t(0, 1);
        let n = find_interval_level(&f01, &b(-100), &b(100)).unwrap();
        let scan = (0..60u32)
            .rev()
            .take_while(|&k| {
                let iv = level_interval(&f01, k);
                iv.lo <= b(-100) && b(100) <= iv.hi
            })
            .last()
            .unwrap();
        assert_eq!(n, scan);
    }

    #[test]
    fn lucas_in_the_hofstadter_tree() {
        let occ = find_sequence(&t(1, 2), &FibSeq::new(2, 1), 60).unwrap();
        assert_eq!(occ.pair, (b(4), b(7)));
        assert_eq!((occ.level, occ.pos.clone()), (3, b(4)));
        assert_eq!(occ.shift, 3);
    }

    #[test]
    fn zero_sequence_in_f01() {
        let occ = find_sequence(&t(0, 1), &FibSeq::zero(), 60).unwrap();
        assert_eq!(occ.pair, (b(0), b(0)));
        assert_eq!(occ.level, 1);
        assert_eq!(occ.route, Route::ZeroLemma);
    }

    #[test]
    fn fibonacci_in_f01() {
        let occ = find_sequence(&t(0, 1), &FibSeq::new(0, 1), 60).unwrap();
        assert_eq!(occ.pair, (b(1), b(2)));
        assert!(occ.level >= 3);
        assert!(occ.primitive);
    }

    #[test]
    fn negative_fibonacci_class_uses_level_solve() {
        let s = FibSeq::new(-1, -1);
        assert_eq!(construct_occurrence(&t(0, 1), &s, 60).unwrap(), None);
        let occ = find_sequence(&t(0, 1), &s, 60).unwrap();
        assert_eq!((occ.level, occ.pair.clone()), (2, (b(-1), b(-1))));
        assert_eq!(occ.route, Route::LevelSolve);
    }

    #[test]
    fn host_errors() {
        assert!(matches!(
            find_sequence(&t(1, 2), &FibSeq::new(-1, -2), 60),
            Err(Error::NotInPsi { .. })
        ));
        assert!(matches!(
            find_sequence(&t(0, 0), &FibSeq::zero(), 60),
            Err(Error::NotInPsi { .. })
        ));
        assert!(matches!(
            find_sequence(&t(0, 1), &FibSeq::new(1000, 1), 4),
            Err(Error::SearchCap { cap: 4, .. })
        ));
    }

    #[test]
    fn level_solver_matches_brute_force_pairs() {
        for (a, bb) in [(0, 1), (1, 1), (-1, 2), (1, 0), (1, 2)] {
            let tree = t(a, bb);
            let brute = primitive_tree_pairs(&tree, 9, 30).unwrap();
            let g = offset_sequence(&tree);
            for n in 1..=9u32 {
                let mut formula: Vec<_> = (1..=fib(n as i64).try_into().unwrap())
                    .map(|i: i64| primitive_node(&g, n, &b(i)))
                    .collect();
                formula.sort_by(|x, y| x.0.cmp(&y.0));
                let at_level: Vec<_> = brute
                    .iter()
                    .filter(|p| p.level == n)
                    .map(|p| (b(p.pos as i64), p.pair.clone()))
                    .collect();
                assert_eq!(formula, at_level, "{tree} level {n}");
            }
        }
    }

    #[test]
    fn counts() {
        let f01 = t(0, 1);
        for cap in 1..=12 {
            assert_eq!(count_occurrences(&f01, &FibSeq::zero(), cap, 30).unwrap(), 1);
        }
        assert!(count_occurrences(&f01, &FibSeq::new(0, 1), 10, 30).unwrap() >= 2);
        let lucas = FibSeq::new(2, 1);
        let c3 = count_occurrences(&f01, &lucas, 3, 30).unwrap();
        let c10 = count_occurrences(&f01, &lucas, 10, 30).unwrap();
        assert!(c3 <= c10);
        // the exact solver agrees with the brute-force count
        let solved: usize = (1..=10).map(|n| occurrences_at_level(&f01, &lucas, n).len()).sum();
        assert_eq!(solved, c10);
    }

    #[test]
    fn zero_lemma_level_unique_in_f01() {
        assert_eq!(zero_lemma_levels(&t(0, 1), 40), vec![1]);
        // G = F^{-1,-1} has ν = -1, and the level is n + 2
        assert_eq!(zero_lemma_indices(&FibSeq::new(-1, -1), -10, 40).unwrap(), vec![-1]);
        for (c, d) in [(3, 5), (-4, 1), (7, -2), (0, 1)] {
            assert_eq!(zero_lemma_indices(&FibSeq::new(c, d), -50, 50).unwrap().len(), 1);
        }
    }
}
