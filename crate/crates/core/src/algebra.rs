//! The group `(Φ, ⊕)` of labeled trees.
//!
//! The sum is defined by superposition, `L_n(F ⊕ F') = L_n(F) + L_n(F') - L^{0,0}_n`,
//! and works out to `F^{a,b} ⊕ F^{a',b'} = F^{a+a',b+b'}`. The closed form is
//! what [`tree_sum`] returns; [`verify_superposition`] checks it against the
//! definition on labels built by the rules.

use std::ops::{Add, Mul, Neg};

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::tree::{build_levels_by_rules, level_interval, FibTree};

pub fn tree_sum(t1: &FibTree, t2: &FibTree) -> FibTree {
    FibTree {
        a: &t1.a + &t2.a,
        b: &t1.b + &t2.b,
    }
}

pub fn scalar_mul(k: &BigInt, t: &FibTree) -> FibTree {
    FibTree {
        a: k * &t.a,
        b: k * &t.b,
    }
}

/// Coordinates of `t` in the basis `F^{1,0}`, `F^{0,1}`.
pub fn decompose(t: &FibTree) -> (BigInt, BigInt) {
    (t.a.clone(), t.b.clone())
}

pub fn basis() -> (FibTree, FibTree) {
    (FibTree::new(1, 0), FibTree::new(0, 1))
}

/// Checks level by level, up to `n_max`, that adding the rule-built labels of
/// `t1` and `t2` node by node and subtracting those of `F^{0,0}` gives the
/// rule-built labels of `t1 ⊕ t2`, and that the result is the closed-form
/// interval of the sum.
pub fn verify_superposition(t1: &FibTree, t2: &FibTree, n_max: u32, cap: u32) -> Result<()> {
    let sum = tree_sum(t1, t2);
    let zero = FibTree::default();
    let l1 = build_levels_by_rules(t1, n_max, cap)?;
    let l2 = build_levels_by_rules(t2, n_max, cap)?;
    let l0 = build_levels_by_rules(&zero, n_max, cap)?;
    let ls = build_levels_by_rules(&sum, n_max, cap)?;
    for n in 0..=n_max as usize {
        let iv = level_interval(&sum, n as u32);
        for (i, (((x, y), z), s)) in l1[n].iter().zip(&l2[n]).zip(&l0[n]).zip(&ls[n]).enumerate() {
            let superposed = &x.label + &y.label - &z.label;
            if superposed != s.label || superposed != &iv.lo + i {
                return Err(Error::CrossCheck(format!(
                    "{t1} ⊕ {t2}: level {n}, position {}: superposed {superposed}, rules {}",
                    i + 1,
                    s.label
                )));
            }
        }
    }
    Ok(())
}

impl Add for &FibTree {
    type Output = FibTree;
    fn add(self, rhs: &FibTree) -> FibTree {
        tree_sum(self, rhs)
    }
}

impl Add for FibTree {
    type Output = FibTree;
    fn add(self, rhs: FibTree) -> FibTree {
        tree_sum(&self, &rhs)
    }
}

impl Neg for &FibTree {
    type Output = FibTree;
    fn neg(self) -> FibTree {
        FibTree {
            a: -&self.a,
            b: -&self.b,
        }
    }
}

impl Mul<&FibTree> for &BigInt {
    type Output = FibTree;
    fn mul(self, t: &FibTree) -> FibTree {
        scalar_mul(self, t)
    }
}
