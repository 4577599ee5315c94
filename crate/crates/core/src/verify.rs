//! Property suites run by `fibtree verify`.
//!
//! Each suite checks a family of results against an independent computation
//! (rules against closed forms, exact sign tests against floors, brute-force
//! scans against O(1) decisions) and records every disagreement.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::algebra::{tree_sum, verify_superposition};
use crate::error::Error;
use crate::fib::fib;
use crate::fibword::{letter_at, word_capped, Letter};
use crate::goldring::{commutator_constant, power, Atom, GoldInt, MapWord};
use crate::order::{is_subtree, least_upper_bound, self_containment};
use crate::represent::{
    classify, count_occurrences, find_sequence, replay, zero_lemma_levels, TreeClass,
};
use crate::tree::{children_labels, level_interval, node_label, parent_label, FibTree, LevelLabeling, NodeRef, RuleLevels};
use crate::warray::{hofstadter_levels, locate_array_row, wythoff_array, HofstadterG};
use crate::wythoff::{u, u_i64, u_rank, v, v_i64, v_rank, verify_lemma_shift, FibSeq, SMALL_TABLE};

/// At most this many failure messages are kept per suite.
const MAX_REPORTED: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Labels,
    Wythoff,
    Group,
    Represent,
    Order,
    Array,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Labels,
        Suite::Wythoff,
        Suite::Group,
        Suite::Represent,
        Suite::Order,
        Suite::Array,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Labels => "labels",
            Suite::Wythoff => "wythoff",
            Suite::Group => "group",
            Suite::Represent => "represent",
            Suite::Order => "order",
            Suite::Array => "array",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite {s:?}")))
    }
}

/// Outcome of one suite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: u64,
    pub failed: u64,
    /// The first few failure messages.
    pub failures: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}

struct Checker {
    report: SuiteReport,
}

impl Checker {
    fn new(suite: Suite) -> Self {
        Checker {
            report: SuiteReport {
                suite,
                checks: 0,
                failed: 0,
                failures: Vec::new(),
            },
        }
    }

    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.report.checks += 1;
        if !ok {
            self.report.failed += 1;
            if self.report.failures.len() < MAX_REPORTED {
                self.report.failures.push(msg());
            }
        }
    }

    fn eq<T: PartialEq + fmt::Debug>(&mut self, got: T, want: T, what: impl FnOnce() -> String) {
        let ok = got == want;
        self.check(ok, || format!("{}: got {got:?}, want {want:?}", what()));
    }

    fn finish(self) -> SuiteReport {
        self.report
    }
}

fn b(x: i64) -> BigInt {
    BigInt::from(x)
}

/// Runs the given suites in parallel; reports come back in the order asked.
pub fn run_suites(suites: &[Suite], max_level: u32) -> Vec<SuiteReport> {
    std::thread::scope(|scope| {
        let handles: Vec<_> = suites
            .iter()
            .map(|&s| scope.spawn(move || run_suite(s, max_level)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("suite thread panicked"))
            .collect()
    })
}

pub fn run_suite(suite: Suite, max_level: u32) -> SuiteReport {
    match suite {
        Suite::Labels => labels_suite(max_level),
        Suite::Wythoff => wythoff_suite(max_level),
        Suite::Group => group_suite(max_level),
        Suite::Represent => represent_suite(max_level),
        Suite::Order => order_suite(max_level),
        Suite::Array => array_suite(max_level),
    }
}

pub fn labels_suite(max_level: u32) -> SuiteReport {
    labels_suite_with(max_level, &level_interval)
}

/// Rule-built levels against a given interval formula, for all trees with
/// `|a|, |b| ≤ 5` up to level `min(max_level, 20)`.
pub fn labels_suite_with(max_level: u32, interval: &dyn Fn(&FibTree, u32) -> LevelLabeling) -> SuiteReport {
    let mut c = Checker::new(Suite::Labels);
    let top = max_level.min(20);
    for a in -5..=5i64 {
        for bb in -5..=5i64 {
            let t = FibTree::new(a, bb);
            for (n, level) in RuleLevels::new(&t).take(top as usize + 1).enumerate() {
                let n = n as u32;
                let iv = interval(&t, n);
                c.eq(&iv.hi - &iv.lo + 1, fib(n as i64 + 2), || format!("{t} level {n} width"));
                let mut ok = true;
                for (i, node) in level.iter().enumerate() {
                    ok &= node.label == &iv.lo + i;
                }
                c.check(ok, || format!("{t} level {n}: rules disagree with [{}..{}]", iv.lo, iv.hi));
            }
        }
    }
    // letters of a level follow the Fibonacci word
    let w = word_capped(top, top).expect("within cap");
    let mut ok = true;
    for (i, &l) in w.letters.iter().enumerate() {
        ok &= letter_at(&b(i as i64 + 1)).ok() == Some(l);
    }
    c.check(ok, || format!("letters of W_{top} disagree with letter_at"));
    // the worked example in F^{0,1}
    let f01 = FibTree::new(0, 1);
    let node = NodeRef::new(5, 6);
    c.eq(node_label(&f01, &node).map(|l| l.label).ok(), Some(b(-2)), || "label at (5,6)".into());
    c.eq(parent_label(&f01, &node).ok(), Some(b(-1)), || "parent at (5,6)".into());
    let kids = children_labels(&f01, &node).unwrap_or_default();
    let v_child = kids.iter().find(|k| k.letter == Letter::V).map(|k| k.label.clone());
    c.eq(v_child, Some(b(-3)), || "v-child of (5,6)".into());
    c.finish()
}

pub fn wythoff_suite(max_level: u32) -> SuiteReport {
    let mut c = Checker::new(Suite::Wythoff);
    for (n, un, vn) in SMALL_TABLE {
        c.eq(u_i64(n), b(un), || format!("u({n})"));
        c.eq(v_i64(n), b(vn), || format!("v({n})"));
    }
    let mut ok_ident = true;
    for n in -10_000..=10_000i64 {
        let nb = b(n);
        let un = u(&nb);
        let vn = v(&nb);
        ok_ident &= vn == &un + &nb && vn == u(&un) + 1;
    }
    c.check(ok_ident, || "v = u + n or v = uu + 1 fails for some |n| ≤ 10^4".into());
    // u(n) = ⌊nφ⌋: u ≤ nφ < u + 1, decided exactly in ℤ[φ]
    let reach = 10_000i64 * (max_level.max(1) as i64).min(100);
    let mut bad = None;
    for n in 1..=reach {
        let un = u_i64(n);
        let below = GoldInt::new(-un.clone(), n).sign() >= 0;
        let above = GoldInt::new(-un - 1, n).sign() < 0;
        if !(below && above) {
            bad = Some(n);
            break;
        }
    }
    c.check(bad.is_none(), || format!("u({}) is not the Beatty floor", bad.unwrap_or(0)));
    let mut ok_rank = true;
    for n in 1..=5_000i64 {
        let nb = b(n);
        ok_rank &= u_rank(&u(&nb)) == Some(nb.clone()) && v_rank(&v(&nb)) == Some(nb.clone());
        ok_rank &= u_rank(&nb).is_some() != v_rank(&nb).is_some();
    }
    c.check(ok_rank, || "u and v ranks do not partition 1..5000".into());
    c.finish()
}

pub fn group_suite(max_level: u32) -> SuiteReport {
    let mut c = Checker::new(Suite::Group);
    let grid: Vec<FibTree> = (-3..=3)
        .flat_map(|a| (-3..=3).map(move |bb| FibTree::new(a, bb)))
        .collect();
    let zero = FibTree::default();
    let mut ok = true;
    for x in &grid {
        ok &= tree_sum(x, &zero) == *x && tree_sum(x, &-x) == zero;
        for y in &grid {
            ok &= tree_sum(x, y) == tree_sum(y, x);
            for z in grid.iter().step_by(5) {
                ok &= tree_sum(&tree_sum(x, y), z) == tree_sum(x, &tree_sum(y, z));
            }
        }
    }
    c.check(ok, || "group laws fail on the |a|,|b| ≤ 3 grid".into());
    c.eq(
        tree_sum(&FibTree::new(0, 1), &FibTree::new(1, 1)),
        FibTree::new(1, 2),
        || "F^{0,1} + F^{1,1}".into(),
    );
    let top = max_level.min(12);
    for k in 0..20i64 {
        let t1 = FibTree::new(k - 10, 3 - k);
        let t2 = FibTree::new(2 * k - 7, k % 5 - 2);
        let res = verify_superposition(&t1, &t2, top, top);
        c.check(res.is_ok(), || format!("superposition {t1} + {t2}: {res:?}"));
    }
    for p in 0..=6u32 {
        for q in 0..=6u32 {
            let lp = power(Atom::L, p as usize);
            let rq = power(Atom::R, q as usize);
            let lr = MapWord([lp.0.clone(), rq.0.clone()].concat());
            let rl = MapWord([rq.0, lp.0].concat());
            let k = commutator_constant(p, q);
            let mut ok = true;
            for (x, y) in [(0, 0), (1, 0), (0, 1), (-3, 7), (12, -5), (100, 61)] {
                let z = GoldInt::new(x, y);
                ok &= &lr.apply(&z) - &rl.apply(&z) == k;
            }
            c.check(ok, || format!("commutator constant for p={p}, q={q}"));
        }
    }
    c.finish()
}

/// Trees in Ψ used by the representation checks.
pub const SAMPLE_PSI_TREES: [(i64, i64); 4] = [(0, 1), (1, 0), (1, 1), (-1, 2)];

pub fn represent_suite(max_level: u32) -> SuiteReport {
    let mut c = Checker::new(Suite::Represent);
    c.eq(classify(&FibTree::new(0, 0)), TreeClass::NonpositiveSide, || "class of F^{0,0}".into());
    c.eq(classify(&FibTree::new(1, 2)), TreeClass::PositiveSide, || "class of F^{1,2}".into());
    c.eq(classify(&FibTree::new(0, 1)), TreeClass::RepresentsZ, || "class of F^{0,1}".into());
    let cap = 60;
    for (a, bb) in SAMPLE_PSI_TREES {
        let t = FibTree::new(a, bb);
        c.eq(classify(&t), TreeClass::RepresentsZ, || format!("class of {t}"));
        for x in -10..=10i64 {
            for y in -10..=10i64 {
                let s = FibSeq::new(x, y);
                let res = find_sequence(&t, &s, cap).and_then(|o| replay(&t, &s, &o, 10));
                c.check(res.is_ok(), || format!("find_sequence({t}, ({x},{y})): {res:?}"));
            }
        }
        let top = max_level.min(15);
        let zeros = count_occurrences(&t, &FibSeq::zero(), top, top);
        c.eq(zeros.ok(), Some(1), || format!("zero-sequence count in {t} up to level {top}"));
        let levels = zero_lemma_levels(&t, 40);
        c.eq(levels.len(), 1, || format!("zero-sequence levels of {t}: {levels:?}"));
    }
    for k in 1..=10i64 {
        let s = FibSeq::new(k - 4, 2 * k + 1);
        let i = b(3 * k - 11 + (k % 2));
        if i == b(0) {
            continue;
        }
        let res = verify_lemma_shift(&s, &i, 30);
        c.check(res.is_ok(), || format!("shift lemma for {:?}, i = {i}: {res:?}", s.canonical()));
    }
    c.finish()
}

pub fn order_suite(max_level: u32) -> SuiteReport {
    let mut c = Checker::new(Suite::Order);
    let cap = max_level.min(12);
    let small: Vec<FibTree> = (-4..=4)
        .flat_map(|a| (-4..=4).map(move |bb| FibTree::new(a, bb)))
        .collect();
    for parent in &small {
        // every subtree identity (c, x + c) rooted at a u-node, by brute force
        let mut rooted: HashSet<(BigInt, BigInt)> = HashSet::new();
        rooted.insert((parent.a.clone(), parent.b.clone()));
        let mut prev: Vec<crate::tree::RuleNode> = Vec::new();
        for level in RuleLevels::new(parent).take(cap as usize + 1) {
            for node in &level {
                if let (Some(p), Letter::U) = (node.parent_pos, node.letter) {
                    let x = &prev[p - 1].label;
                    rooted.insert((node.label.clone(), x + &node.label));
                }
            }
            prev = level;
        }
        for child in &small {
            let brute = rooted.contains(&(child.a.clone(), child.b.clone()));
            let fast = is_subtree(child, parent, cap).is_some();
            c.check(brute == fast, || format!("{child} ◁ {parent}: brute {brute}, decision {fast}"));
        }
    }
    let grid: Vec<FibTree> = (-6..=6)
        .flat_map(|a| (-6..=6).map(move |bb| FibTree::new(a, bb)))
        .collect();
    let cap = max_level.min(15);
    let mut ok = true;
    for (i, x) in grid.iter().enumerate() {
        for y in &grid[i + 1..] {
            ok &= !(is_subtree(x, y, cap).is_some() && is_subtree(y, x, cap).is_some());
        }
    }
    c.check(ok, || "two distinct trees contain each other".into());
    let depth = max_level.clamp(1, 10);
    let mut selfish = Vec::new();
    for t in &grid {
        if !self_containment(t, depth).map(|w| w.is_empty()).unwrap_or(true) {
            selfish.push((t.a.clone(), t.b.clone()));
        }
    }
    c.eq(selfish, vec![(b(0), b(0)), (b(1), b(2))], || "self-containing trees".into());
    c.eq(
        least_upper_bound(&FibTree::new(-1, 2), &FibTree::new(-3, 5), 4).ok(),
        Some(vec![FibTree::new(18, -10)]),
        || "F^{-1,2} ∨ F^{-3,5}".into(),
    );
    c.eq(
        least_upper_bound(&FibTree::new(0, 0), &FibTree::new(1, 2), 2).ok(),
        Some(vec![FibTree::new(0, 1)]),
        || "F^{0,0} ∨ F^{1,2}".into(),
    );
    c.check(is_subtree(&FibTree::new(0, 0), &FibTree::new(1, 2), 30).is_none(), || {
        "F^{0,0} inside F^{1,2}".into()
    });
    c.finish()
}

pub fn array_suite(max_level: u32) -> SuiteReport {
    let mut c = Checker::new(Suite::Array);
    match wythoff_array(40, 10) {
        Ok(arr) => {
            let mut seen = HashSet::new();
            let mut distinct = true;
            for row in &arr.rows {
                for x in row {
                    distinct &= seen.insert(x.clone());
                }
            }
            c.check(distinct, || "array entries repeat".into());
            let missing: Vec<i64> = (1..=100).filter(|k| !seen.contains(&b(*k))).collect();
            c.eq(missing, vec![], || "integers 1..100 missing from the 40x10 corner".into());
            let rising = arr.rows.iter().all(|r| r.windows(2).all(|w| w[0] < w[1]))
                && arr.rows.windows(2).all(|w| w[0][0] < w[1][0]);
            c.check(rising, || "rows or row starts not increasing".into());
        }
        Err(e) => c.check(false, || e.to_string()),
    }
    let top = max_level.min(20);
    let flat: Vec<BigInt> = hofstadter_levels(top).iter().flat_map(|l| l.labels().collect::<Vec<_>>()).collect();
    let want: Vec<BigInt> = (1..=fib(top as i64 + 2).try_into().unwrap_or(0i64)).map(b).collect();
    c.check(flat == want, || format!("Hofstadter levels 0..={top} are not 1..F_{}", top + 2));
    let f12 = FibTree::new(1, 2);
    let mut g = HofstadterG::new();
    let mut bad = None;
    'outer: for n in 1..=10_000u64 {
        let gn = b(g.get(n) as i64);
        for level in 1..=max_level.min(30) {
            if b(n as i64) > fib(level as i64 + 2) {
                continue;
            }
            if parent_label(&f12, &NodeRef::new(level, n)).ok() != Some(gn.clone()) {
                bad = Some((n, level));
                break 'outer;
            }
        }
    }
    c.check(bad.is_none(), || format!("g(n) differs from the parent label at {bad:?}"));
    for j in 1..=10 {
        let res = locate_array_row(j, 10, max_level.max(20));
        c.check(res.is_ok(), || format!("array row {j}: {res:?}"));
    }
    c.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_pass_at_small_levels() {
        for report in run_suites(&Suite::ALL, 8) {
            assert!(report.passed(), "{}: {:?}", report.suite, report.failures);
            assert!(report.checks > 0);
        }
    }

    #[test]
    fn mutated_interval_is_caught() {
        let flip_lo = |t: &FibTree, n: u32| {
            let mut iv = level_interval(t, n);
            iv.lo ^= BigInt::from(1);
            iv
        };
        assert!(!labels_suite_with(10, &flip_lo).passed());
        let flip_hi = |t: &FibTree, n: u32| {
            let mut iv = level_interval(t, n);
            iv.hi ^= BigInt::from(1);
            iv
        };
        assert!(!labels_suite_with(10, &flip_hi).passed());
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }
}
