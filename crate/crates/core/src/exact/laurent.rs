//! Expansion of rational functions at `var = ∞`.

use num_traits::Zero;

use super::poly::Poly;
use super::ratfunc::RationalFunction;
use super::vars::Var;
use crate::error::{Error, Result};
use crate::scalar::Field;

/// Truncated expansion `Σ_{k=start}^{order} coeffs[k - start] · var^{-k}`.
///
/// Coefficients are free of `var`.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentSeries<C: Field> {
    pub var: Var,
    pub start: i64,
    pub coeffs: Vec<RationalFunction<C>>,
}

impl<C: Field> LaurentSeries<C> {
    pub fn order(&self) -> i64 {
        self.start + self.coeffs.len() as i64 - 1
    }

    /// Coefficient of `var^{-k}` (zero outside the computed range below `start`).
    pub fn coeff(&self, k: i64) -> RationalFunction<C> {
        if k < self.start {
            return RationalFunction::zero();
        }
        self.coeffs
            .get((k - self.start) as usize)
            .cloned()
            .unwrap_or_else(|| panic!("coefficient {k} beyond truncation order {}", self.order()))
    }

    /// Recombine the truncated series into a rational function.
    pub fn sum(&self) -> RationalFunction<C> {
        let v = RationalFunction::var(self.var);
        let vinv = v.inv().expect("variable is nonzero");
        let mut acc = RationalFunction::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            let k = self.start + i as i64;
            let p = if k >= 0 { vinv.pow(k as u32) } else { v.pow((-k) as u32) };
            acc = &acc + &(c * &p);
        }
        acc
    }
}

/// Laurent expansion of `x` at `var = ∞` up to and including `var^{-order}`.
pub fn laurent_at_infinity<C: Field>(
    x: &RationalFunction<C>,
    var: Var,
    order: i64,
) -> Result<LaurentSeries<C>> {
    if order < 0 {
        return Err(Error::InvalidInput("expansion order must be nonnegative".into()));
    }
    if x.is_zero() {
        return Ok(LaurentSeries { var, start: 0, coeffs: vec![RationalFunction::zero(); order as usize + 1] });
    }
    let num = x.numer().coeffs_in(var);
    let den = x.denom().coeffs_in(var);
    let n = num.len() - 1;
    let m = den.len() - 1;
    let deg = n as i64 - m as i64;
    // Reversed coefficient lists are power series in w = 1/var.
    let nt: Vec<&Poly<C>> = num.iter().rev().collect();
    let dt: Vec<&Poly<C>> = den.iter().rev().collect();
    let d0 = RationalFunction::from_poly(dt[0].clone());
    let d0_inv = d0.inv().expect("leading coefficient is nonzero");
    let count = order + deg + 1;
    let mut series: Vec<RationalFunction<C>> = Vec::new();
    for i in 0..count.max(0) as usize {
        let mut acc = nt
            .get(i)
            .map(|p| RationalFunction::from_poly((*p).clone()))
            .unwrap_or_else(RationalFunction::zero);
        for j in 1..=i.min(m) {
            let dj = RationalFunction::from_poly(dt[j].clone());
            acc = &acc - &(&dj * &series[i - j]);
        }
        series.push(&acc * &d0_inv);
    }
    Ok(LaurentSeries { var, start: -deg, coeffs: series })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse::parse_rf;
    use num_rational::BigRational;

    type R = RationalFunction<BigRational>;

    fn rf(s: &str) -> R {
        parse_rf(s).unwrap()
    }

    #[test]
    fn reflection_eigenvalue_expansion() {
        // (u - s)/(-u - s), u = a1, s = e1 + e2; long division oracle.
        let x = rf("(a1 - e1 - e2)/(-a1 - e1 - e2)");
        let l = laurent_at_infinity(&x, Var::a(1), 2).unwrap();
        assert_eq!(l.start, 0);
        assert_eq!(l.coeffs, vec![rf("-1"), rf("2*(e1 + e2)"), rf("-2*(e1 + e2)^2")]);
    }

    #[test]
    fn constant_and_inverse() {
        let c = rf("e1/e2");
        let l = laurent_at_infinity(&c, Var::a(1), 0).unwrap();
        assert_eq!(l.coeffs, vec![c]);
        let l = laurent_at_infinity(&rf("1/a1"), Var::a(1), 1).unwrap();
        assert_eq!(l.start, 1);
        assert_eq!(l.coeffs, vec![rf("1")]);
    }

    #[test]
    fn positive_degree_terms() {
        let x = rf("(a1^2 + e1)/(a1 + 1)");
        let l = laurent_at_infinity(&x, Var::a(1), 1).unwrap();
        assert_eq!(l.start, -1);
        assert_eq!(l.coeffs, vec![rf("1"), rf("-1"), rf("e1 + 1")]);
        let rest = &x - &l.sum();
        assert!(rest.degree_in(Var::a(1)).unwrap() <= -2);
    }
}
