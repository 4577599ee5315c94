//! The Hofstadter tree inside `F^{1,2}`, the Wythoff array, and Hofstadter's `g`.
//!
//! Level `n` of `F^{1,2}` is labeled `1..=F_{n+2}`, and its first left
//! subtree is `F^{1,2}` again, occupying `1..=F_{n+1}` from level 2 on. What
//! is left over, `F_{n+1}+1 ..= F_{n+2}`, is the Hofstadter tree.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::fib::fib;
use crate::fibword::{u_count, DEFAULT_LEVEL_CAP};
use crate::represent::{find_sequence, occurrences_at_level, primitive_tree_pairs, PrimitiveTreePair};
use crate::tree::{branch_sequence, FibTree, NodeRef};
use crate::wythoff::{u, v, FibSeq};

/// Top-left corner of the Wythoff array. Row `j` (1-based) starts with the
/// primitive pair `(uu(j), vu(j))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WythoffArray {
    pub rows: Vec<Vec<BigInt>>,
}

impl WythoffArray {
    pub fn dims(&self) -> (usize, usize) {
        (self.rows.len(), self.rows.first().map_or(0, Vec::len))
    }

    /// Row `j`, 1-based.
    pub fn row(&self, j: usize) -> Option<&[BigInt]> {
        j.checked_sub(1).and_then(|k| self.rows.get(k)).map(Vec::as_slice)
    }

    pub fn seed(j: &BigInt) -> FibSeq {
        let uj = u(j);
        FibSeq::new(u(&uj), v(&uj))
    }
}

pub fn wythoff_array(rows: usize, cols: usize) -> Result<WythoffArray> {
    if rows < 1 || cols < 2 {
        return Err(Error::InvalidArgument(format!(
            "array needs rows >= 1 and cols >= 2, got {rows}x{cols}"
        )));
    }
    let rows = (1..=rows)
        .map(|j| WythoffArray::seed(&BigInt::from(j)).terms(0, cols))
        .collect();
    Ok(WythoffArray { rows })
}

/// Labels of the Hofstadter tree at one level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HofstadterLevel {
    pub level: u32,
    pub lo: BigInt,
    pub hi: BigInt,
}

impl HofstadterLevel {
    pub fn labels(&self) -> impl Iterator<Item = BigInt> + '_ {
        num_iter_inclusive(&self.lo, &self.hi)
    }

    pub fn contains(&self, x: &BigInt) -> bool {
        &self.lo <= x && x <= &self.hi
    }
}

fn num_iter_inclusive<'a>(lo: &'a BigInt, hi: &'a BigInt) -> impl Iterator<Item = BigInt> + 'a {
    let mut cur = lo.clone();
    std::iter::from_fn(move || {
        (&cur <= hi).then(|| {
            let out = cur.clone();
            cur += 1;
            out
        })
    })
}

pub fn hofstadter_level(n: u32) -> HofstadterLevel {
    let (lo, hi) = match n {
        0 => (BigInt::from(1), BigInt::from(1)),
        1 => (BigInt::from(2), BigInt::from(2)),
        _ => (fib(n as i64 + 1) + 1, fib(n as i64 + 2)),
    };
    HofstadterLevel { level: n, lo, hi }
}

pub fn hofstadter_levels(n_max: u32) -> Vec<HofstadterLevel> {
    (0..=n_max).map(hofstadter_level).collect()
}

/// Memoized `g(n) = n - g(g(n-1))`, `g(0) = 0`.
#[derive(Clone, Debug)]
pub struct HofstadterG {
    memo: Vec<u64>,
}

impl Default for HofstadterG {
    fn default() -> Self {
        HofstadterG { memo: vec![0] }
    }
}

impl HofstadterG {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&mut self, n: u64) -> u64 {
        let n = n as usize;
        while self.memo.len() <= n {
            let m = self.memo.len();
            let prev = self.memo[m - 1] as usize;
            let gg = self.memo[prev];
            self.memo.push(m as u64 - gg);
        }
        self.memo[n]
    }
}

/// Above this the memo table is replaced by the u-count closed form, which
/// the tests check against the recursion.
const MEMO_LIMIT: u64 = 1 << 22;

pub fn hofstadter_g(n: &BigInt) -> Result<BigInt> {
    if n.is_negative() {
        return Err(Error::InvalidArgument(format!("g is defined for n >= 0, got {n}")));
    }
    if n.is_zero() {
        return Ok(BigInt::zero());
    }
    match n.to_u64().filter(|&k| k <= MEMO_LIMIT) {
        Some(k) => Ok(BigInt::from(HofstadterG::new().get(k))),
        None => u_count(n),
    }
}

/// All primitive tree-pairs of `t` up to level `n_max`, with locations.
pub fn primitive_pairs_in_tree(t: &FibTree, n_max: u32) -> Result<Vec<PrimitiveTreePair>> {
    primitive_tree_pairs(t, n_max, DEFAULT_LEVEL_CAP)
}

/// Whether a node label of `F^{1,2}` at `level` lies in the Hofstadter tree.
pub fn in_hofstadter_region(level: u32, label: &BigInt) -> bool {
    hofstadter_level(level).contains(label)
}

/// Locates row `j` of the array as an ascending branch of the Hofstadter tree.
///
/// Row 1 is the main branch from the root. Other rows come from
/// [`find_sequence`]; if its answer lies in the nested copy, levels are
/// scanned for an occurrence inside the Hofstadter region. The branch is
/// replayed against the row before returning.
pub fn locate_array_row(j: usize, cols: usize, level_cap: u32) -> Result<NodeRef> {
    let tree = FibTree::new(1, 2);
    let row = WythoffArray::seed(&BigInt::from(j)).terms(0, cols.max(2));
    let node = if j == 1 {
        NodeRef::root()
    } else {
        let seq = FibSeq::new(row[0].clone(), row[1].clone());
        let found = find_sequence(&tree, &seq, level_cap)?;
        if in_hofstadter_region(found.level, &found.pair.0) {
            found.node()
        } else {
            (1..=level_cap)
                .flat_map(|n| occurrences_at_level(&tree, &seq, n))
                .find(|o| o.shift == 0 && in_hofstadter_region(o.level, &o.pair.0))
                .map(|o| o.node())
                .ok_or(Error::SearchCap {
                    cap: level_cap,
                    last_level: level_cap,
                })?
        }
    };
    let branch = branch_sequence(&tree, &node, row.len())?;
    if branch != row {
        return Err(Error::CrossCheck(format!(
            "row {j}: branch at {node} reads {branch:?}"
        )));
    }
    Ok(node)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::{level_interval, parent_label};

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn ints(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| b(x)).collect()
    }

    #[test]
    fn array_rows() {
        let arr = wythoff_array(3, 6).unwrap();
        assert_eq!(arr.row(1).unwrap(), ints(&[1, 2, 3, 5, 8, 13]).as_slice());
        assert_eq!(arr.row(2).unwrap(), ints(&[4, 7, 11, 18, 29, 47]).as_slice());
        assert_eq!(arr.row(3).unwrap(), ints(&[6, 10, 16, 26, 42, 68]).as_slice());
        assert_eq!(arr.dims(), (3, 6));
        assert!(wythoff_array(0, 4).is_err());
        assert!(wythoff_array(2, 1).is_err());
    }

    #[test]
    fn hofstadter_levels_small() {
        let lv = hofstadter_levels(5);
        let flat: Vec<Vec<BigInt>> = lv.iter().map(|l| l.labels().collect()).collect();
        assert_eq!(
            flat,
            vec![ints(&[1]), ints(&[2]), ints(&[3]), ints(&[4, 5]), ints(&[6, 7, 8]), ints(&[9, 10, 11, 12, 13])]
        );
        let all: Vec<BigInt> = hofstadter_levels(10).iter().flat_map(|l| l.labels().collect::<Vec<_>>()).collect();
        assert_eq!(all, (1..=144).map(b).collect::<Vec<_>>());
    }

    #[test]
    fn g_values() {
        let mut g = HofstadterG::new();
        let got: Vec<u64> = [0, 1, 2, 3, 6, 7].iter().map(|&n| g.get(n)).collect();
        assert_eq!(got, vec![0, 1, 1, 2, 4, 4]);
        assert_eq!(hofstadter_g(&b(0)).unwrap(), b(0));
        assert!(hofstadter_g(&b(-1)).is_err());
    }

    #[test]
    fn g_closed_form_matches_recursion() {
        let mut g = HofstadterG::new();
        for n in 1..200_000u64 {
            assert_eq!(u_count(&BigInt::from(n)).unwrap(), BigInt::from(g.get(n)), "n = {n}");
        }
        let big = BigInt::from(MEMO_LIMIT + 17);
        let mut g = HofstadterG::new();
        assert_eq!(hofstadter_g(&big).unwrap(), BigInt::from(g.get(MEMO_LIMIT + 17)));
    }

    #[test]
    fn g_is_parent_label_in_f12() {
        let f12 = FibTree::new(1, 2);
        let mut g = HofstadterG::new();
        for n in 1..=2000u64 {
            for level in 1..=20u32 {
                if BigInt::from(n) > level_interval(&f12, level).hi {
                    continue;
                }
                let node = NodeRef::new(level, n);
                assert_eq!(parent_label(&f12, &node).unwrap(), BigInt::from(g.get(n)));
            }
        }
    }

    #[test]
    fn primitive_pairs() {
        let f12 = FibTree::new(1, 2);
        let pairs = primitive_pairs_in_tree(&f12, 4).unwrap();
        assert!(pairs.iter().any(|p| p.pair == (b(4), b(7))));
        let f01 = primitive_pairs_in_tree(&FibTree::new(0, 1), 1).unwrap();
        assert_eq!(f01.len(), 1);
        assert_eq!(f01[0].pair, (b(0), b(0)));
        assert!(primitive_pairs_in_tree(&FibTree::new(3, -7), 0).unwrap().is_empty());
    }

    #[test]
    fn first_rows_in_hofstadter_tree() {
        for j in 1..=10 {
            let node = locate_array_row(j, 8, 30).unwrap();
            let label = crate::tree::node_label(&FibTree::new(1, 2), &node).unwrap().label;
            assert!(in_hofstadter_region(node.level, &label), "row {j} at {node}");
        }
    }
}
