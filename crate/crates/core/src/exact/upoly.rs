//! Dense univariate polynomials in a line parameter `t`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::scalar::{EuclideanDomain, Field, Ring};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UPoly<C> {
    /// Coefficients of `t^0, t^1, ...`; no trailing zeros.
    coeffs: Vec<C>,
}

impl<C: Field> UPoly<C> {
    pub fn new(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn constant(c: C) -> Self {
        Self::new(vec![c])
    }

    /// `a + b t`.
    pub fn linear(a: C, b: C) -> Self {
        Self::new(vec![a, b])
    }

    pub fn t() -> Self {
        Self::linear(C::zero(), C::one())
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> C {
        self.coeffs.last().cloned().unwrap_or_else(C::zero)
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::new(self.coeffs.iter().map(|x| x.clone() * c.clone()).collect())
    }

    pub fn eval(&self, t: &C) -> C {
        self.coeffs
            .iter()
            .rev()
            .fold(C::zero(), |acc, c| acc * t.clone() + c.clone())
    }

    pub fn monic(&self) -> Self {
        match self.leading().inv() {
            Some(i) => self.scale(&i),
            None => self.clone(),
        }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.clone() * C::from_i64(k as i64))
                .collect(),
        )
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = std::mem::replace(&mut b, r);
        }
        a.monic()
    }

    /// Render with a custom variable name.
    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let s = c.to_string();
            let (neg, mag) = match s.strip_prefix('-') {
                Some(r) => (true, r.to_owned()),
                None => (false, s),
            };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match k {
                0 => String::new(),
                1 => var.to_owned(),
                _ => format!("{var}^{k}"),
            };
            if mono.is_empty() {
                out.push_str(&mag);
            } else if mag == "1" {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{mag}*{mono}"));
            }
        }
        out
    }
}

impl<C: Field> Zero for UPoly<C> {
    fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<C: Field> One for UPoly<C> {
    fn one() -> Self {
        Self::constant(C::one())
    }
}

impl<C: Field> Add for UPoly<C> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let get = |v: &Vec<C>, i: usize| v.get(i).cloned().unwrap_or_else(C::zero);
        Self::new((0..n).map(|i| get(&self.coeffs, i) + get(&rhs.coeffs, i)).collect())
    }
}

impl<C: Field> Neg for UPoly<C> {
    type Output = Self;
    fn neg(self) -> Self {
        UPoly {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl<C: Field> Sub for UPoly<C> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<C: Field> Mul for UPoly<C> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = vec![C::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(out)
    }
}

impl<C: Field> Ring for UPoly<C> {
    fn from_i64(n: i64) -> Self {
        Self::constant(C::from_i64(n))
    }
}

impl<C: Field> EuclideanDomain for UPoly<C> {
    fn size(&self) -> usize {
        self.coeffs.len()
    }

    fn div_rem(&self, other: &Self) -> (Self, Self) {
        let d = other.degree().expect("division by zero polynomial");
        let lc_inv = other.leading().inv().expect("nonzero leading coefficient");
        let mut r = self.coeffs.clone();
        let mut q = vec![C::zero(); r.len().saturating_sub(d)];
        while r.len() > d && !r.is_empty() {
            let k = r.len() - 1;
            let c = r[k].clone() * lc_inv.clone();
            if !c.is_zero() {
                for (i, oc) in other.coeffs.iter().enumerate() {
                    r[k - d + i] = r[k - d + i].clone() - c.clone() * oc.clone();
                }
                q[k - d] = c;
            }
            r.pop();
        }
        (Self::new(q), Self::new(r))
    }

    fn normalize_unit(&self) -> (Self, Self) {
        match self.leading().inv() {
            Some(i) => (self.scale(&i), Self::constant(i)),
            None => (self.clone(), Self::one()),
        }
    }
}

impl<C: Field> fmt::Display for UPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("t"))
    }
}

impl<C: Field> fmt::Debug for UPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};
    use num_rational::BigRational;

    type U = UPoly<BigRational>;

    #[test]
    fn division_with_remainder() {
        let a = U::new(vec![int(1), int(0), int(1)]); // t^2 + 1
        let b = U::linear(int(1), int(1)); // t + 1
        let (q, r) = a.div_rem(&b);
        assert_eq!(q, U::linear(int(-1), int(1)));
        assert_eq!(r, U::constant(int(2)));
        assert_eq!(q * b + r, a);
    }

    #[test]
    fn gcd_is_monic() {
        let f = U::linear(int(-2), int(3)) * U::linear(int(1), int(1));
        let g = U::linear(int(-2), int(3)) * U::linear(int(5), int(1));
        assert_eq!(f.gcd(&g), U::linear(rat(-2, 3), int(1)));
        assert_eq!(f.gcd(&g).to_string(), "t - 2/3");
    }
}
