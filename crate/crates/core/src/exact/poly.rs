//! Sparse multivariate polynomials with graded-lex ordered terms.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::vars::{Var, NVARS};
use crate::scalar::{Field, Ring};

/// Exponent vector over all variable slots.
///
/// Ordered graded-lexicographically with `a1 > a2 > ... > e1 > e2`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Mono(pub [u16; NVARS]);

impl Mono {
    pub const ONE: Mono = Mono([0; NVARS]);

    pub fn var(v: Var) -> Mono {
        let mut e = [0; NVARS];
        e[v.index()] = 1;
        Mono(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn exp(&self, v: Var) -> u16 {
        self.0[v.index()]
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0.iter()) {
            *a += b;
        }
        Mono(e)
    }

    pub fn divides(&self, other: &Mono) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Mono) -> Mono {
        let mut e = other.0;
        for (a, b) in e.iter_mut().zip(self.0.iter()) {
            *a -= b;
        }
        Mono(e)
    }

    pub fn gcd(&self, other: &Mono) -> Mono {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0.iter()) {
            *a = (*a).min(*b);
        }
        Mono(e)
    }

    pub fn without(&self, v: Var) -> Mono {
        let mut e = self.0;
        e[v.index()] = 0;
        Mono(e)
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", MonoDisplay(self))
    }
}

struct MonoDisplay<'a>(&'a Mono);

impl fmt::Display for MonoDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in Var::all() {
            let e = self.0.exp(v);
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// Polynomial in the variable slots `a1..a6, e1, e2` over a coefficient field.
///
/// Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<C> {
    terms: BTreeMap<Mono, C>,
}

impl<C: Field> Poly<C> {
    pub fn constant(c: C) -> Self {
        Self::monomial(Mono::ONE, c)
    }

    pub fn int(n: i64) -> Self {
        Self::constant(C::from_i64(n))
    }

    pub fn var(v: Var) -> Self {
        Self::monomial(Mono::var(v), C::one())
    }

    pub fn monomial(m: Mono, c: C) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Mono, C)>) -> Self {
        let mut p = Poly::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub(crate) fn add_term(&mut self, m: Mono, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(x) => {
                let s = x.add_ref(&c);
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *x = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &C)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn leading(&self) -> Option<(&Mono, &C)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> C {
        self.leading().map(|(_, c)| c.clone()).unwrap_or_else(C::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Mono::degree).max()
    }

    pub fn degree_in(&self, v: Var) -> u16 {
        self.terms.keys().map(|m| m.exp(v)).max().unwrap_or(0)
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.exp(v) > 0)
    }

    pub fn vars(&self) -> Vec<Var> {
        Var::all().filter(|&v| self.contains_var(v)).collect()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Mono::is_one)
    }

    pub fn constant_value(&self) -> Option<C> {
        if self.is_zero() {
            Some(C::zero())
        } else if self.is_constant() {
            Some(self.leading_coeff())
        } else {
            None
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, x)| (*m, x.mul_ref(c)))
                .collect(),
        }
    }

    pub fn mul_mono(&self, m: &Mono) -> Self {
        Poly {
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        }
    }

    /// Greatest common monomial divisor of all terms.
    pub fn mono_content(&self) -> Mono {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return Mono::ONE;
        };
        it.fold(*first, |acc, m| acc.gcd(m))
    }

    /// Divide every exponent vector by a common monomial divisor.
    pub fn div_mono(&self, m: &Mono) -> Self {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (m.quotient_of(k), c.clone()))
                .collect(),
        }
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly<C>) -> Option<Poly<C>> {
        let (lm, lc) = d.leading()?;
        if d.is_monomial() {
            let inv = lc.inv()?;
            if !self.terms.keys().all(|m| lm.divides(m)) {
                return None;
            }
            return Some(self.div_mono(lm).scale(&inv));
        }
        let lc_inv = lc.inv()?;
        let lm = *lm;
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        while let Some((rm, rc)) = rem.leading() {
            if !lm.divides(rm) {
                return None;
            }
            let qm = lm.quotient_of(rm);
            let qc = rc.mul_ref(&lc_inv);
            for (m, c) in d.terms.iter() {
                rem.add_term(m.mul(&qm), -c.mul_ref(&qc));
            }
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Coefficients of `v^0, v^1, ...` as polynomials free of `v`.
    pub fn coeffs_in(&self, v: Var) -> Vec<Poly<C>> {
        let n = self.degree_in(v) as usize;
        let mut out = vec![Poly::zero(); n + 1];
        for (m, c) in &self.terms {
            out[m.exp(v) as usize].add_term(m.without(v), c.clone());
        }
        out
    }

    pub fn from_coeffs_in(v: Var, coeffs: &[Poly<C>]) -> Self {
        let mut p = Poly::zero();
        for (k, c) in coeffs.iter().enumerate() {
            let mut vm = Mono::ONE;
            vm.0[v.index()] = k as u16;
            for (m, x) in &c.terms {
                p.add_term(m.mul(&vm), x.clone());
            }
        }
        p
    }

    /// Ring homomorphism into `R` given images of variables and coefficients.
    pub fn eval_with<R: Ring>(&self, var_image: impl Fn(Var) -> R, coeff_image: impl Fn(&C) -> R) -> R {
        let images: Vec<R> = Var::all().map(&var_image).collect();
        let mut acc = R::zero();
        for (m, c) in &self.terms {
            let mut t = coeff_image(c);
            for v in Var::all() {
                let e = m.exp(v);
                if e > 0 {
                    t = t * images[v.index()].pow(e as u32);
                }
            }
            acc = acc + t;
        }
        acc
    }

    /// Substitute `v := value`, leaving the other variables untouched.
    pub fn substitute(&self, v: Var, value: &Poly<C>) -> Poly<C> {
        let coeffs = self.coeffs_in(v);
        // Horner in `value`.
        let mut acc = Poly::zero();
        for c in coeffs.into_iter().rev() {
            acc = acc * value.clone() + c;
        }
        acc
    }

    /// Substitute constants for a subset of the variables.
    pub fn specialize(&self, assignment: &[(Var, C)]) -> Poly<C> {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut mono = *m;
            for (v, val) in assignment {
                let e = mono.exp(*v);
                if e > 0 {
                    coeff = coeff * val.pow(e as u32);
                    mono = mono.without(*v);
                }
            }
            out.add_term(mono, coeff);
        }
        out
    }

    /// Partial derivative in `v`.
    pub fn derivative(&self, v: Var) -> Poly<C> {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let e = m.exp(v);
            if e > 0 {
                let mut mm = *m;
                mm.0[v.index()] -= 1;
                out.add_term(mm, c.clone() * C::from_i64(e as i64));
            }
        }
        out
    }

    /// Canonical associate under [`Field::normalizing_factor`] and the factor used.
    pub fn normalized(&self) -> (Poly<C>, C) {
        if self.is_zero() {
            return (self.clone(), C::one());
        }
        let coeffs: Vec<&C> = self.terms.values().rev().collect();
        let k = C::normalizing_factor(&coeffs);
        (self.scale(&k), k)
    }

    pub fn pow(&self, e: u32) -> Poly<C> {
        Ring::pow(self, e)
    }
}

impl<C: Field> Zero for Poly<C> {
    fn zero() -> Self {
        Poly { terms: BTreeMap::new() }
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<C: Field> One for Poly<C> {
    fn one() -> Self {
        Poly::constant(C::one())
    }
}

impl<C: Field> Add for Poly<C> {
    type Output = Poly<C>;
    fn add(mut self, rhs: Poly<C>) -> Poly<C> {
        if self.terms.len() < rhs.terms.len() {
            return rhs + self;
        }
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl<C: Field> Sub for Poly<C> {
    type Output = Poly<C>;
    fn sub(mut self, rhs: Poly<C>) -> Poly<C> {
        for (m, c) in rhs.terms {
            self.add_term(m, -c);
        }
        self
    }
}

impl<C: Field> Neg for Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        Poly {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl<C: Field> Mul for Poly<C> {
    type Output = Poly<C>;
    fn mul(self, rhs: Poly<C>) -> Poly<C> {
        &self * &rhs
    }
}

impl<C: Field> Mul for &Poly<C> {
    type Output = Poly<C>;
    fn mul(self, rhs: &Poly<C>) -> Poly<C> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        if let Some(c) = rhs.constant_value() {
            return self.scale(&c);
        }
        if let Some(c) = self.constant_value() {
            return rhs.scale(&c);
        }
        let mut out = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1.mul_ref(c2));
            }
        }
        out
    }
}

impl<C: Field> Add for &Poly<C> {
    type Output = Poly<C>;
    fn add(self, rhs: &Poly<C>) -> Poly<C> {
        self.clone() + rhs.clone()
    }
}

impl<C: Field> Sub for &Poly<C> {
    type Output = Poly<C>;
    fn sub(self, rhs: &Poly<C>) -> Poly<C> {
        self.clone() - rhs.clone()
    }
}

impl<C: Field> Ring for Poly<C> {
    fn from_i64(n: i64) -> Self {
        Poly::int(n)
    }
}

impl<C: Field> fmt::Display for Poly<C> {
    /// Terms in descending monomial order, e.g. `a1^2 - 1/2*a1*e1 + 3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let s = c.to_string();
            let (neg, mag) = match s.strip_prefix('-') {
                Some(rest) => (true, rest.to_owned()),
                None => (false, s),
            };
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                f.write_str(&mag)?;
            } else {
                if mag != "1" {
                    write!(f, "{mag}*")?;
                }
                write!(f, "{}", MonoDisplay(m))?;
            }
        }
        Ok(())
    }
}

impl<C: Field> fmt::Debug for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use num_rational::BigRational;

    type P = Poly<BigRational>;

    fn a1() -> P {
        P::var(Var::a(1))
    }
    fn e1() -> P {
        P::var(Var::E1)
    }
    fn e2() -> P {
        P::var(Var::E2)
    }

    #[test]
    fn grlex_order() {
        let x = Mono::var(Var::a(1));
        let y = Mono::var(Var::E1);
        let xy = x.mul(&y);
        assert!(x > y);
        assert!(xy > x);
        assert!(Mono::ONE < y);
    }

    #[test]
    fn display_is_descending() {
        let p = a1() * a1() - e1().scale(&rat(1, 2)) + P::int(3);
        assert_eq!(p.to_string(), "a1^2 - 1/2*e1 + 3");
        assert_eq!((-e2()).to_string(), "-e2");
    }

    #[test]
    fn exact_division() {
        let p = (e1() - e2()) * (e1() + e2());
        assert_eq!(p.div_exact(&(e1() - e2())), Some(e1() + e2()));
        assert_eq!(p.div_exact(&(e1() + P::int(1))), None);
        assert_eq!(p.div_exact(&P::int(2)), Some(p.scale(&rat(1, 2))));
    }

    #[test]
    fn substitution_and_coeffs() {
        let p = a1() * a1() * e1() + a1() + P::int(1);
        let c = p.coeffs_in(Var::a(1));
        assert_eq!(c, vec![P::int(1), P::int(1), e1()]);
        assert_eq!(P::from_coeffs_in(Var::a(1), &c), p);
        let q = p.substitute(Var::a(1), &(e1() + e2()));
        let expect = (e1() + e2()) * (e1() + e2()) * e1() + e1() + e2() + P::int(1);
        assert_eq!(q, expect);
    }

    #[test]
    fn normalized_is_primitive_positive() {
        let p = (a1().scale(&rat(-2, 3))) + P::constant(rat(4, 9));
        let (n, _) = p.normalized();
        assert_eq!(n.to_string(), "3*a1 - 2");
    }
}
