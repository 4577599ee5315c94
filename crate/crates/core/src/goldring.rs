//! Exact arithmetic in ℤ[φ] and the affine maps `L` and `R`.
//!
//! An element is stored as the coefficient pair `(a, b)` of `a + bφ`. Since
//! `φ² = 1 + φ` the pair representation is closed under multiplication, and
//! since φ is irrational it is unique. Signs are decided with integer
//! arithmetic only.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::fib::fib;

/// The element `a + bφ` of ℤ[φ].
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GoldInt {
    pub a: BigInt,
    pub b: BigInt,
}

impl GoldInt {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        GoldInt {
            a: a.into(),
            b: b.into(),
        }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        GoldInt::new(1, 0)
    }

    pub fn phi() -> Self {
        GoldInt::new(0, 1)
    }

    /// `φ^n = F_{n-1} + F_n φ`, valid for every `n ∈ ℤ`.
    pub fn phi_pow(n: i64) -> Self {
        GoldInt {
            a: fib(n - 1),
            b: fib(n),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Sign of the real number `a + bφ`: -1, 0 or +1.
    ///
    /// With `s = 2a + b` and `t = b` the value is `(s + t√5) / 2`. When `s`
    /// and `t` disagree in sign the answer comes from comparing `s²` with
    /// `5t²`, which can never tie for `t ≠ 0`.
    pub fn sign(&self) -> i8 {
        let s: BigInt = &self.a + &self.a + &self.b;
        let t = &self.b;
        let (ss, ts) = (signum(&s), signum(t));
        if ss >= 0 && ts >= 0 {
            ss.max(ts)
        } else if ss <= 0 && ts <= 0 {
            -1
        } else if &s * &s > t * t * 5 {
            ss
        } else {
            ts
        }
    }

    /// Compares the real values of two elements.
    pub fn cmp_value(&self, other: &GoldInt) -> Ordering {
        match (self - other).sign() {
            -1 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        }
    }

    /// Galois conjugate `a + b(1 - φ)`.
    pub fn conjugate(&self) -> GoldInt {
        GoldInt {
            a: &self.a + &self.b,
            b: -&self.b,
        }
    }

    /// Field norm `a² + ab - b²`.
    pub fn norm(&self) -> BigInt {
        &self.a * &self.a + &self.a * &self.b - &self.b * &self.b
    }

    pub fn scale(&self, k: &BigInt) -> GoldInt {
        GoldInt {
            a: &self.a * k,
            b: &self.b * k,
        }
    }

    /// Exact quotient `self / other` when it lies in ℤ[φ].
    pub fn checked_div(&self, other: &GoldInt) -> Option<GoldInt> {
        let n = other.norm();
        if n.is_zero() {
            return None;
        }
        let num = self * &other.conjugate();
        let (qa, ra) = num.a.div_rem(&n);
        let (qb, rb) = num.b.div_rem(&n);
        (ra.is_zero() && rb.is_zero()).then_some(GoldInt { a: qa, b: qb })
    }

    /// Approximate value, for display only.
    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        self.a.to_f64().unwrap_or(f64::NAN) + self.b.to_f64().unwrap_or(f64::NAN) * phi
    }
}

impl fmt::Display for GoldInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_negative() {
            write!(f, "{} - {}φ", self.a, -&self.b)
        } else {
            write!(f, "{} + {}φ", self.a, self.b)
        }
    }
}

impl<'a> Add<&'a GoldInt> for &'a GoldInt {
    type Output = GoldInt;
    fn add(self, rhs: &GoldInt) -> GoldInt {
        GoldInt {
            a: &self.a + &rhs.a,
            b: &self.b + &rhs.b,
        }
    }
}

impl<'a> Sub<&'a GoldInt> for &'a GoldInt {
    type Output = GoldInt;
    fn sub(self, rhs: &GoldInt) -> GoldInt {
        GoldInt {
            a: &self.a - &rhs.a,
            b: &self.b - &rhs.b,
        }
    }
}

impl<'a> Mul<&'a GoldInt> for &'a GoldInt {
    type Output = GoldInt;
    /// `(a + bφ)(c + dφ) = (ac + bd) + (ad + bc + bd)φ`.
    fn mul(self, rhs: &GoldInt) -> GoldInt {
        let bd = &self.b * &rhs.b;
        GoldInt {
            a: &self.a * &rhs.a + &bd,
            b: &self.a * &rhs.b + &self.b * &rhs.a + bd,
        }
    }
}

impl Neg for &GoldInt {
    type Output = GoldInt;
    fn neg(self) -> GoldInt {
        GoldInt {
            a: -&self.a,
            b: -&self.b,
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<GoldInt> for GoldInt {
            type Output = GoldInt;
            fn $m(self, rhs: GoldInt) -> GoldInt {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a GoldInt> for GoldInt {
            type Output = GoldInt;
            fn $m(self, rhs: &GoldInt) -> GoldInt {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for GoldInt {
    type Output = GoldInt;
    fn neg(self) -> GoldInt {
        -&self
    }
}

impl Mul<&BigInt> for &GoldInt {
    type Output = GoldInt;
    fn mul(self, k: &BigInt) -> GoldInt {
        self.scale(k)
    }
}

fn signum(x: &BigInt) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// One step of a [`MapWord`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Atom {
    L,
    R,
    LInv,
    RInv,
}

impl Atom {
    pub fn inverse(self) -> Atom {
        match self {
            Atom::L => Atom::LInv,
            Atom::R => Atom::RInv,
            Atom::LInv => Atom::L,
            Atom::RInv => Atom::R,
        }
    }

    pub fn is_forward(self) -> bool {
        matches!(self, Atom::L | Atom::R)
    }

    /// Applies the atom to `x + yφ`.
    pub fn apply(self, z: &GoldInt) -> GoldInt {
        let (x, y) = (&z.a, &z.b);
        match self {
            // L(z) = φz - φ²
            Atom::L => GoldInt {
                a: y - 1,
                b: x + y - 1,
            },
            // R(z) = φ²z
            Atom::R => GoldInt {
                a: x + y,
                b: x + y + y,
            },
            Atom::LInv => GoldInt {
                a: y - x,
                b: x + 1,
            },
            Atom::RInv => GoldInt {
                a: x + x - y,
                b: y - x,
            },
        }
    }

    /// The atom as `z ↦ αz + β`.
    fn affine(self) -> Affine {
        match self {
            Atom::L => Affine {
                scale: GoldInt::phi(),
                shift: GoldInt::new(-1, -1),
            },
            Atom::R => Affine {
                scale: GoldInt::phi_pow(2),
                shift: GoldInt::zero(),
            },
            Atom::LInv => Affine {
                scale: GoldInt::phi_pow(-1),
                shift: GoldInt::phi(),
            },
            Atom::RInv => Affine {
                scale: GoldInt::phi_pow(-2),
                shift: GoldInt::zero(),
            },
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            Atom::L | Atom::LInv => "L",
            Atom::R | Atom::RInv => "R",
        }
    }
}

/// An affine map `z ↦ scale·z + shift` on ℤ[φ].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Affine {
    pub scale: GoldInt,
    pub shift: GoldInt,
}

impl Affine {
    pub fn identity() -> Self {
        Affine {
            scale: GoldInt::one(),
            shift: GoldInt::zero(),
        }
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &Affine) -> Affine {
        Affine {
            scale: &self.scale * &inner.scale,
            shift: &(&self.scale * &inner.shift) + &self.shift,
        }
    }

    pub fn apply(&self, z: &GoldInt) -> GoldInt {
        &(&self.scale * z) + &self.shift
    }
}

/// A finite composition of `L`, `R` and their inverses.
/// A composition of [`Atom`]s.
///
/// Atoms are stored one per step and applied right to left, so
/// `[L, R]` acts as `z ↦ L(R(z))`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MapWord(pub Vec<Atom>);

impl MapWord {
    pub fn new(atoms: impl Into<Vec<Atom>>) -> Self {
        MapWord(atoms.into())
    }

    pub fn empty() -> Self {
        MapWord(Vec::new())
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_forward(&self) -> bool {
        self.0.iter().all(|a| a.is_forward())
    }

    /// The word undoing `self`: atoms reversed and inverted.
    pub fn inverse(&self) -> MapWord {
        MapWord(self.0.iter().rev().map(|a| a.inverse()).collect())
    }

    pub fn apply(&self, z: &GoldInt) -> GoldInt {
        self.0
            .iter()
            .rev()
            .fold(z.clone(), |acc, atom| atom.apply(&acc))
    }

    pub fn affine(&self) -> Affine {
        self.0
            .iter()
            .rev()
            .fold(Affine::identity(), |acc, atom| atom.affine().compose(&acc))
    }

    /// The unique fixed point of the word, if it lies in ℤ[φ].
    ///
    /// Returns `Ok(None)` when the fixed point is not integral or when the
    /// word is a nontrivial translation, and an error when the word acts as
    /// the identity.
    pub fn fixed_point(&self) -> Result<Option<GoldInt>> {
        let Affine { scale, shift } = self.affine();
        let one_minus = &GoldInt::one() - &scale;
        if one_minus.is_zero() {
            return if shift.is_zero() {
                Err(Error::IdentityMap)
            } else {
                Ok(None)
            };
        }
        Ok(shift.checked_div(&one_minus))
    }
}

impl fmt::Display for MapWord {
    /// Run-length form, e.g. `L^-1 R^-2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "id");
        }
        let mut first = true;
        let mut i = 0;
        while i < self.0.len() {
            let atom = self.0[i];
            let mut run = 1;
            while i + run < self.0.len() && self.0[i + run] == atom {
                run += 1;
            }
            if !first {
                write!(f, " ")?;
            }
            first = false;
            let exp = if atom.is_forward() {
                run as i64
            } else {
                -(run as i64)
            };
            if exp == 1 {
                write!(f, "{}", atom.symbol())?;
            } else {
                write!(f, "{}^{}", atom.symbol(), exp)?;
            }
            i += run;
        }
        Ok(())
    }
}

/// `φ³(φ^p - 1)(φ^{2q} - 1)`, the constant by which `L^p R^q` and `R^q L^p` differ.
pub fn commutator_constant(p: u32, q: u32) -> GoldInt {
    let one = GoldInt::one();
    let left = &GoldInt::phi_pow(p as i64) - &one;
    let right = &GoldInt::phi_pow(2 * q as i64) - &one;
    &(&GoldInt::phi_pow(3) * &left) * &right
}

/// `atom^k` as a word.
pub fn power(atom: Atom, k: usize) -> MapWord {
    MapWord(vec![atom; k])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(a: i64, b: i64) -> GoldInt {
        GoldInt::new(a, b)
    }

    #[test]
    fn multiplication() {
        assert_eq!(&g(0, 1) * &g(0, 1), g(1, 1));
        assert_eq!(&g(1, 2) * &g(1, 2), g(5, 8));
        assert_eq!(&g(1, 2) + &g(0, 0), g(1, 2));
        assert_eq!(GoldInt::phi_pow(3), g(1, 2));
        assert_eq!(GoldInt::phi_pow(-1), g(-1, 1));
        assert_eq!(&GoldInt::phi_pow(-2) * &GoldInt::phi_pow(2), GoldInt::one());
    }

    #[test]
    fn sign_small_cases() {
        assert_eq!(g(0, 0).sign(), 0);
        assert_eq!((&g(1, 2) - &g(1, 2)).sign(), 0);
        assert_eq!(g(1, 2).sign(), 1);
        assert_eq!(g(8, -5).sign(), -1);
        assert_eq!(g(9, -5).sign(), 1);
        assert_eq!(g(-8, 5).sign(), 1);
        assert_eq!(g(-9, 5).sign(), -1);
        assert_eq!(g(0, -1).sign(), -1);
        assert_eq!(g(3, 0).sign(), 1);
    }

    #[test]
    fn maps_on_known_points() {
        assert_eq!(Atom::L.apply(&g(0, 1)), g(0, 0));
        assert_eq!(Atom::R.apply(&g(0, 1)), g(1, 2));
        assert_eq!(Atom::L.apply(&g(1, 2)), g(1, 2));
        let w = MapWord::new([Atom::LInv, Atom::RInv, Atom::RInv]);
        assert_eq!(w.apply(&g(-1, 2)), g(18, -10));
        let w2 = MapWord::new([Atom::RInv, Atom::LInv]);
        assert_eq!(w2.apply(&g(-3, 5)), g(18, -10));
    }

    #[test]
    fn inverse_atoms_undo_forward_atoms() {
        for a in -5..=5 {
            for b in -5..=5 {
                let z = g(a, b);
                for atom in [Atom::L, Atom::R, Atom::LInv, Atom::RInv] {
                    assert_eq!(atom.inverse().apply(&atom.apply(&z)), z);
                }
            }
        }
    }

    #[test]
    fn affine_form_matches_pointwise_application() {
        let w = MapWord::new([Atom::L, Atom::RInv, Atom::R, Atom::R, Atom::LInv]);
        let aff = w.affine();
        for a in -4..=4 {
            for b in -4..=4 {
                assert_eq!(aff.apply(&g(a, b)), w.apply(&g(a, b)));
            }
        }
    }

    #[test]
    fn fixed_points() {
        assert_eq!(MapWord::new([Atom::L]).fixed_point().unwrap(), Some(g(1, 2)));
        assert_eq!(power(Atom::R, 3).fixed_point().unwrap(), Some(g(0, 0)));
        assert_eq!(MapWord::new([Atom::L, Atom::R]).fixed_point().unwrap(), None);
        assert_eq!(
            MapWord::new([Atom::L, Atom::LInv]).fixed_point(),
            Err(Error::IdentityMap)
        );
        // [L, L, R^-1] has scale 1 and a nonzero shift: no fixed point at all
        assert_eq!(
            MapWord::new([Atom::L, Atom::L, Atom::RInv]).fixed_point().unwrap(),
            None
        );
    }

    #[test]
    fn fixed_point_of_l_r_by_brute_force() {
        let w = MapWord::new([Atom::L, Atom::R]);
        for a in -50..=50 {
            for b in -50..=50 {
                assert_ne!(w.apply(&g(a, b)), g(a, b));
            }
        }
    }

    #[test]
    fn display_is_run_length() {
        let w = MapWord::new([Atom::LInv, Atom::RInv, Atom::RInv]);
        assert_eq!(w.to_string(), "L^-1 R^-2");
        assert_eq!(MapWord::new([Atom::L]).to_string(), "L");
        assert_eq!(MapWord::empty().to_string(), "id");
        assert_eq!(g(18, -10).to_string(), "18 - 10φ");
    }

    #[test]
    fn checked_div() {
        let z = &g(3, -7) * &g(2, 5);
        assert_eq!(z.checked_div(&g(2, 5)), Some(g(3, -7)));
        assert_eq!(g(0, 1).checked_div(&g(0, 2)), None);
    }
}
