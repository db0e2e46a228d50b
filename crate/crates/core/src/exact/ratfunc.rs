//! Reduced quotients of polynomials.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::gcd::gcd;
use super::poly::Poly;
use super::vars::Var;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{Field, Ring};

/// A rational function `num / den` in canonical form.
///
/// `gcd(num, den) = 1` and `den` is the canonical associate of its class
/// (for rational coefficients: primitive integer coefficients, positive
/// leading coefficient under the graded-lex order). Equal values therefore
/// have identical representations.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction<C> {
    num: Poly<C>,
    den: Poly<C>,
}

impl<C: Field> RationalFunction<C> {
    pub fn new(num: Poly<C>, den: Poly<C>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Poly<C>, den: Poly<C>) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = gcd(&num, &den);
        if g.is_one() {
            Self::canonical(num, den)
        } else {
            Self::canonical(
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        }
    }

    /// Fix the unit: the denominator becomes its canonical associate, then
    /// both sides are scaled to clear the numerator's coefficient denominators.
    fn canonical(num: Poly<C>, den: Poly<C>) -> Self {
        let (den, k) = den.normalized();
        let num = if k.is_one() { num } else { num.scale(&k) };
        let coeffs: Vec<&C> = num.terms().map(|(_, c)| c).collect();
        let m = C::denominator_lcm(&coeffs);
        if m.is_one() {
            RationalFunction { num, den }
        } else {
            RationalFunction { num: num.scale(&m), den: den.scale(&m) }
        }
    }

    pub fn from_poly(p: Poly<C>) -> Self {
        Self::canonical(p, Poly::one())
    }

    pub fn constant(c: C) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn var(v: Var) -> Self {
        Self::from_poly(Poly::var(v))
    }

    pub fn numer(&self) -> &Poly<C> {
        &self.num
    }

    pub fn denom(&self) -> &Poly<C> {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// The value as a polynomial, if the denominator is a constant.
    pub fn as_poly(&self) -> Option<Poly<C>> {
        let d = self.den.constant_value()?;
        Some(self.num.scale(&d.inv()?))
    }

    pub fn constant_value(&self) -> Option<C> {
        let n = self.num.constant_value()?;
        let d = self.den.constant_value()?;
        n.div(&d)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.num.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::canonical(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    /// `deg_v(num) - deg_v(den)`; `None` for zero.
    pub fn degree_in(&self, v: Var) -> Option<i64> {
        (!self.is_zero()).then(|| self.num.degree_in(v) as i64 - self.den.degree_in(v) as i64)
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.num.contains_var(v) || self.den.contains_var(v)
    }

    /// Substitute constants for some variables.
    ///
    /// Fails with [`Error::Pole`] when the denominator vanishes, carrying the
    /// factor of the denominator responsible.
    pub fn specialize(&self, assignment: &[(Var, C)]) -> Result<Self> {
        if assignment.is_empty() {
            return Ok(self.clone());
        }
        let den = self.den.specialize(assignment);
        if den.is_zero() {
            let factor = coarse_factors(&self.den)
                .into_iter()
                .find(|f| f.specialize(assignment).is_zero())
                .unwrap_or_else(|| self.den.clone());
            return Err(Error::Pole {
                factor: factor.to_string(),
            });
        }
        Ok(Self::reduce(self.num.specialize(assignment), den))
    }

    /// Substitute a polynomial for one variable.
    pub fn substitute(&self, v: Var, value: &Poly<C>) -> Result<Self> {
        let den = self.den.substitute(v, value);
        if den.is_zero() {
            return Err(Error::Pole {
                factor: self.den.to_string(),
            });
        }
        Ok(Self::reduce(self.num.substitute(v, value), den))
    }

    /// Evaluate at a full assignment of the variables that occur.
    pub fn evaluate(&self, assignment: &[(Var, C)]) -> Result<C> {
        let r = self.specialize(assignment)?;
        r.constant_value().ok_or_else(|| {
            Error::InvalidInput(format!("assignment leaves variables free in {r}"))
        })
    }

    pub fn pow(&self, e: u32) -> Self {
        RationalFunction {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }
}

/// Split a polynomial into monomial variables and its contents with respect
/// to each variable; a cheap partial factorization used to name poles.
fn coarse_factors<C: Field>(p: &Poly<C>) -> Vec<Poly<C>> {
    let mut out = Vec::new();
    let m = p.mono_content();
    for v in Var::all() {
        if m.exp(v) > 0 {
            out.push(Poly::var(v));
        }
    }
    let mut rest = vec![p.div_mono(&m)];
    for v in Var::all() {
        let mut next = Vec::new();
        for q in rest {
            if !q.contains_var(v) || q.is_constant() {
                next.push(q);
                continue;
            }
            let coeffs = q.coeffs_in(v);
            let mut c = Poly::zero();
            for x in &coeffs {
                c = gcd(&c, x);
            }
            if c.is_constant() {
                next.push(q);
            } else {
                next.push(q.div_exact(&c).expect("content divides"));
                next.push(c);
            }
        }
        rest = next;
    }
    out.extend(rest.into_iter().filter(|q| !q.is_constant()).map(|q| q.normalized().0));
    out
}

impl<C: Field> Zero for RationalFunction<C> {
    fn zero() -> Self {
        Self::from_poly(Poly::zero())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl<C: Field> One for RationalFunction<C> {
    fn one() -> Self {
        Self::from_poly(Poly::one())
    }
}

impl<C: Field> Add for &RationalFunction<C> {
    type Output = RationalFunction<C>;
    fn add(self, rhs: &RationalFunction<C>) -> RationalFunction<C> {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            let num = &self.num + &rhs.num;
            if self.den.is_one() {
                return RationalFunction::from_poly(num);
            }
            return RationalFunction::reduce(num, self.den.clone());
        }
        let g = gcd(&self.den, &rhs.den);
        if g.is_one() {
            let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
            let den = &self.den * &rhs.den;
            if num.is_zero() {
                return RationalFunction::zero();
            }
            return RationalFunction::canonical(num, den);
        }
        let d1 = self.den.div_exact(&g).expect("gcd divides");
        let d2 = rhs.den.div_exact(&g).expect("gcd divides");
        let num = &(&self.num * &d2) + &(&rhs.num * &d1);
        if num.is_zero() {
            return RationalFunction::zero();
        }
        let g2 = gcd(&num, &g);
        let (num, g) = if g2.is_one() {
            (num, g)
        } else {
            (
                num.div_exact(&g2).expect("gcd divides"),
                g.div_exact(&g2).expect("gcd divides"),
            )
        };
        RationalFunction::canonical(num, &(&d1 * &d2) * &g)
    }
}

impl<C: Field> Mul for &RationalFunction<C> {
    type Output = RationalFunction<C>;
    fn mul(self, rhs: &RationalFunction<C>) -> RationalFunction<C> {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RationalFunction::from_poly(&self.num * &rhs.num);
        }
        let g1 = gcd(&self.num, &rhs.den);
        let g2 = gcd(&rhs.num, &self.den);
        let div = |p: &Poly<C>, g: &Poly<C>| {
            if g.is_one() {
                p.clone()
            } else {
                p.div_exact(g).expect("gcd divides")
            }
        };
        let num = &div(&self.num, &g1) * &div(&rhs.num, &g2);
        let den = &div(&self.den, &g2) * &div(&rhs.den, &g1);
        RationalFunction::canonical(num, den)
    }
}

impl<C: Field> Sub for &RationalFunction<C> {
    type Output = RationalFunction<C>;
    fn sub(self, rhs: &RationalFunction<C>) -> RationalFunction<C> {
        self + &(-rhs.clone())
    }
}

impl<C: Field> Neg for RationalFunction<C> {
    type Output = RationalFunction<C>;
    fn neg(self) -> RationalFunction<C> {
        RationalFunction {
            num: -self.num,
            den: self.den,
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<C: Field> $tr for RationalFunction<C> {
            type Output = RationalFunction<C>;
            fn $m(self, rhs: RationalFunction<C>) -> RationalFunction<C> {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<C: Field> Div for &RationalFunction<C> {
    type Output = RationalFunction<C>;
    /// Panics on division by zero; use [`RationalFunction::checked_div`] otherwise.
    fn div(self, rhs: &RationalFunction<C>) -> RationalFunction<C> {
        self.checked_div(rhs).expect("division by zero rational function")
    }
}

impl<C: Field> Ring for RationalFunction<C> {
    fn from_i64(n: i64) -> Self {
        Self::constant(C::from_i64(n))
    }

    /// Rows of `a` and columns of `b` are each brought to one common
    /// denominator, so every entry needs a single reduction.
    fn matrix_product(a: &Matrix<Self>, b: &Matrix<Self>) -> Matrix<Self> {
        let rows: Vec<(Poly<C>, Vec<Poly<C>>)> =
            (0..a.rows()).map(|i| lift((0..a.cols()).map(|k| &a[(i, k)]))).collect();
        let cols: Vec<(Poly<C>, Vec<Poly<C>>)> =
            (0..b.cols()).map(|j| lift((0..b.rows()).map(|k| &b[(k, j)]))).collect();
        Matrix::from_fn(a.rows(), b.cols(), |i, j| {
            let (ra, pa) = &rows[i];
            let (cb, pb) = &cols[j];
            let num = pa
                .iter()
                .zip(pb)
                .filter(|(x, y)| !x.is_zero() && !y.is_zero())
                .fold(Poly::zero(), |acc, (x, y)| acc + x * y);
            Self::reduce(num, ra * cb)
        })
    }
}

/// Common denominator of a run of entries and the lifted numerators.
fn lift<'a, C: Field + 'a>(xs: impl Iterator<Item = &'a RationalFunction<C>> + Clone) -> (Poly<C>, Vec<Poly<C>>) {
    let mut den = Poly::one();
    for x in xs.clone() {
        if !x.den.is_one() {
            let g = gcd(&den, &x.den);
            den = &den * &x.den.div_exact(&g).expect("gcd divides");
        }
    }
    let lifted = xs
        .map(|x| if x.num.is_zero() { Poly::zero() } else { &x.num * &den.div_exact(&x.den).expect("common denominator") })
        .collect();
    (den, lifted)
}

impl<C: Field> Field for RationalFunction<C> {
    fn inv(&self) -> Option<Self> {
        RationalFunction::inv(self).ok()
    }

    fn from_rational(q: &num_rational::BigRational) -> Self {
        Self::constant(C::from_rational(q))
    }

    fn normalizing_factor(coeffs: &[&Self]) -> Self {
        coeffs
            .first()
            .and_then(|lc| Field::inv(*lc))
            .unwrap_or_else(Self::one)
    }
}

impl<C: Field> From<Poly<C>> for RationalFunction<C> {
    fn from(p: Poly<C>) -> Self {
        Self::from_poly(p)
    }
}

impl<C: Field> fmt::Display for RationalFunction<C> {
    /// Canonical serialization `(<numerator>)/(<denominator>)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})/({})", self.num, self.den)
    }
}

impl<C: Field> fmt::Debug for RationalFunction<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};
    use num_rational::BigRational;

    type R = RationalFunction<BigRational>;
    type P = Poly<BigRational>;

    fn v(x: Var) -> R {
        R::var(x)
    }

    #[test]
    fn cancels_common_factor() {
        let (e1, e2) = (P::var(Var::E1), P::var(Var::E2));
        let x = R::new(&e1 * &e1 - &e2 * &e2, &e1 - &e2).unwrap();
        assert_eq!(x, v(Var::E1) + v(Var::E2));
        assert!(x.is_polynomial());
    }

    #[test]
    fn common_denominator() {
        let x = v(Var::E1).inv().unwrap() + v(Var::E2).inv().unwrap();
        assert_eq!(x.to_string(), "(e1 + e2)/(e1*e2)");
    }

    #[test]
    fn inverse_pair() {
        let u = v(Var::a(1)) - v(Var::a(2));
        let x = &u / &v(Var::E1);
        let y = &v(Var::E1) / &u;
        assert!((&x * &y).is_one());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert!(matches!(R::one().checked_div(&R::zero()), Err(Error::DivisionByZero)));
        assert!(matches!(R::new(P::one(), P::zero()), Err(Error::DivisionByZero)));
    }

    #[test]
    fn canonical_sign_on_denominator() {
        let x = R::new(P::one(), -P::var(Var::E1).scale(&rat(2, 1))).unwrap();
        assert_eq!(x.to_string(), "(-1)/(2*e1)");
        let y = R::new(P::constant(rat(1, 2)), P::constant(rat(3, 4))).unwrap();
        assert_eq!(y.constant_value(), Some(rat(2, 3)));
    }

    #[test]
    fn specialize_examples() {
        let x = &(v(Var::a(1)) - v(Var::a(2))) / &(v(Var::E1) * v(Var::E2));
        let at = [
            (Var::a(1), int(1)),
            (Var::a(2), int(0)),
            (Var::E1, int(1)),
            (Var::E2, int(-2)),
        ];
        assert_eq!(x.evaluate(&at).unwrap(), rat(-1, 2));
        assert_eq!(x.specialize(&[]).unwrap(), x);

        let pole = (v(Var::a(1)) - v(Var::a(2))).inv().unwrap();
        let err = pole
            .specialize(&[(Var::a(1), int(3)), (Var::a(2), int(3))])
            .unwrap_err();
        match err {
            Error::Pole { factor } => assert_eq!(factor, "a1 - a2"),
            e => panic!("unexpected {e:?}"),
        }
    }

    #[test]
    fn pole_names_the_vanishing_factor() {
        let d = v(Var::E1) * v(Var::E2) * (v(Var::a(1)) - v(Var::a(2)));
        let x = d.inv().unwrap();
        match x.specialize(&[(Var::E2, int(0))]).unwrap_err() {
            Error::Pole { factor } => assert_eq!(factor, "e2"),
            e => panic!("unexpected {e:?}"),
        }
    }
}
