//! Scalar traits shared by every module.
//!
//! All arithmetic in this crate is exact. Containers (matrices, Fock vectors,
//! polynomials) are generic over a [`Ring`] or [`Field`]; the concrete choices
//! used throughout are arbitrary-precision rationals and rational functions in
//! the equivariant variables.

use std::fmt::{Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::matrix::Matrix;

/// Commutative ring with identity.
pub trait Ring:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
    fn from_i64(n: i64) -> Self;

    /// `self * other` by reference; types with cheap special cases override.
    fn mul_ref(&self, other: &Self) -> Self {
        self.clone() * other.clone()
    }

    fn add_ref(&self, other: &Self) -> Self {
        self.clone() + other.clone()
    }

    /// Product of shape-compatible matrices.
    fn matrix_product(a: &Matrix<Self>, b: &Matrix<Self>) -> Matrix<Self> {
        a.naive_mul(b)
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }
}

/// A field: every nonzero element is invertible.
pub trait Field: Ring + Display {
    fn inv(&self) -> Option<Self>;

    fn from_rational(q: &BigRational) -> Self;

    fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|i| self.clone() * i)
    }

    /// Factor `k` such that `k * p` is the canonical associate of a polynomial
    /// with coefficients `coeffs` (listed from the leading term down).
    ///
    /// The default makes the polynomial monic. Rationals override it to give
    /// primitive integer polynomials with positive leading coefficient.
    fn normalizing_factor(coeffs: &[&Self]) -> Self {
        coeffs
            .first()
            .and_then(|lc| lc.inv())
            .unwrap_or_else(Self::one)
    }

    /// Positive factor that clears coefficient denominators (one by default).
    fn denominator_lcm(_coeffs: &[&Self]) -> Self {
        Self::one()
    }

    /// `a · b⁻¹`, or `None` when `b` is singular.
    fn right_divide(a: &Matrix<Self>, b: &Matrix<Self>) -> Option<Matrix<Self>> {
        a.mul(&b.inverse()?).ok()
    }
}

/// Euclidean domain, used for Hermite/Smith normal forms.
pub trait EuclideanDomain: Ring {
    /// Euclidean size; zero has the smallest size.
    fn size(&self) -> usize;

    /// Division with remainder: `self = q * other + r` with `r.size() < other.size()`.
    fn div_rem(&self, other: &Self) -> (Self, Self);

    /// Canonical associate (e.g. monic polynomial) and the unit that maps to it.
    fn normalize_unit(&self) -> (Self, Self);

    fn exact_div(&self, other: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(other);
        r.is_zero().then_some(q)
    }
}

pub trait RatioInt: Clone + Integer + Signed + Debug + Display + Send + Sync + ToPrimitive {
    fn from_bigint(n: &BigInt) -> Self;
    fn from_i64_int(n: i64) -> Self;
}

impl RatioInt for BigInt {
    fn from_bigint(n: &BigInt) -> Self {
        n.clone()
    }
    fn from_i64_int(n: i64) -> Self {
        BigInt::from(n)
    }
}

impl RatioInt for i64 {
    fn from_bigint(n: &BigInt) -> Self {
        n.to_i64().expect("integer does not fit in i64")
    }
    fn from_i64_int(n: i64) -> Self {
        n
    }
}

impl<T: RatioInt> Ring for Ratio<T> {
    fn from_i64(n: i64) -> Self {
        Ratio::from_integer(T::from_i64_int(n))
    }

    // Integers skip the gcd reductions of general fractions.
    fn mul_ref(&self, other: &Self) -> Self {
        if self.is_integer() && other.is_integer() {
            Ratio::new_raw(self.numer().clone() * other.numer().clone(), T::one())
        } else {
            self * other
        }
    }

    fn add_ref(&self, other: &Self) -> Self {
        if self.is_integer() && other.is_integer() {
            Ratio::new_raw(self.numer().clone() + other.numer().clone(), T::one())
        } else {
            self + other
        }
    }
}

impl<T: RatioInt> Field for Ratio<T> {
    fn inv(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.recip())
    }

    fn from_rational(q: &BigRational) -> Self {
        Ratio::new(T::from_bigint(q.numer()), T::from_bigint(q.denom()))
    }

    fn normalizing_factor(coeffs: &[&Self]) -> Self {
        let Some(lc) = coeffs.first() else {
            return Self::one();
        };
        let mut num_gcd = T::zero();
        let mut den_lcm = T::one();
        for c in coeffs {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        if num_gcd.is_zero() {
            return Self::one();
        }
        let k = Ratio::new(den_lcm, num_gcd);
        if lc.is_negative() {
            -k
        } else {
            k
        }
    }

    fn denominator_lcm(coeffs: &[&Self]) -> Self {
        let l = coeffs.iter().fold(T::one(), |acc, c| acc.lcm(c.denom()));
        Ratio::from_integer(l)
    }
}

/// Parse `p` or `p/q` into a big rational.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            (!d.is_zero()).then(|| BigRational::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Rational64;

    #[test]
    fn normalizing_factor_makes_primitive() {
        let c = [rat(-1, 2), rat(3, 4)];
        let refs: Vec<_> = c.iter().collect();
        let k = BigRational::normalizing_factor(&refs);
        assert_eq!(k.clone() * c[0].clone(), int(2));
        assert_eq!(k * c[1].clone(), int(-3));
    }

    #[test]
    fn small_ratio_is_a_field() {
        let x = Rational64::new(3, 7);
        assert_eq!(x.inv().unwrap() * x, Rational64::one());
        assert_eq!(Ring::pow(&x, 3), Rational64::new(27, 343));
        assert!(Rational64::zero().inv().is_none());
    }

    #[test]
    fn parses_rationals() {
        assert_eq!(parse_rational("-3/6"), Some(rat(-1, 2)));
        assert_eq!(parse_rational("17"), Some(int(17)));
        assert_eq!(parse_rational("1/0"), None);
    }
}
