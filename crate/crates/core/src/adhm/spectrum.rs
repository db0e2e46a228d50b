use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::AdhmData;
use crate::error::{Error, Result};
use crate::exact::UPoly;
use crate::matrix::Matrix;
use crate::scalar::EuclideanDomain;
use crate::Rational;

type TPoly = UPoly<Rational>;

/// `det(t - m)` by the Faddeev–LeVerrier recursion.
pub fn char_poly(m: &Matrix<Rational>) -> TPoly {
    let n = m.rows();
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = Rational::one();
    let mut mk: Matrix<Rational> = Matrix::zeros(n, n);
    for k in 1..=n {
        let shifted = mk.add(&Matrix::identity(n).scale(&coeffs[n - k + 1])).expect("square");
        mk = m.mul(&shifted).expect("square");
        let trace: Rational = (0..n).map(|i| mk[(i, i)].clone()).sum();
        coeffs[n - k] = -trace / Rational::from_integer(BigInt::from(k));
    }
    TPoly::new(coeffs)
}

/// Roots of the characteristic polynomial, exact where rational.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    pub char_poly: TPoly,
    /// Distinct rational roots with multiplicity, increasing.
    pub roots: Vec<(Rational, usize)>,
    /// Squarefree monic factors without rational roots, with multiplicity.
    pub other_factors: Vec<(TPoly, usize)>,
}

impl Spectrum {
    pub fn of(m: &Matrix<Rational>) -> Self {
        let p = char_poly(m);
        let (roots, rest) = rational_roots(&p);
        Spectrum { char_poly: p, roots, other_factors: squarefree_decomposition(&rest) }
    }

    /// Total multiplicity of rational roots.
    pub fn rational_count(&self) -> usize {
        self.roots.iter().map(|(_, m)| m).sum()
    }

    /// Multiset union, as for a block-diagonal matrix.
    pub fn union(&self, other: &Spectrum) -> Spectrum {
        let mut roots = self.roots.clone();
        for (x, m) in &other.roots {
            match roots.iter_mut().find(|(y, _)| y == x) {
                Some((_, k)) => *k += m,
                None => roots.push((x.clone(), *m)),
            }
        }
        roots.sort();
        let rest = self.remaining() * other.remaining();
        Spectrum {
            char_poly: self.char_poly.clone() * other.char_poly.clone(),
            roots,
            other_factors: squarefree_decomposition(&rest),
        }
    }

    fn remaining(&self) -> TPoly {
        self.other_factors
            .iter()
            .fold(TPoly::one(), |acc, (f, m)| (0..*m).fold(acc, |a, _| a * f.clone()))
    }

    pub fn to_json(&self) -> SpectrumJson {
        SpectrumJson {
            char_poly: self.char_poly.display_in("t"),
            roots: self.roots.iter().map(|(x, m)| (x.to_string(), *m)).collect(),
            other_factors: self.other_factors.iter().map(|(f, m)| (f.display_in("t"), *m)).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumJson {
    pub char_poly: String,
    pub roots: Vec<(String, usize)>,
    pub other_factors: Vec<(String, usize)>,
}

/// Spectrum of `c1 B1 + c2 B2`.
pub fn spectrum_projection(x: &AdhmData, direction: (&Rational, &Rational)) -> Result<Spectrum> {
    if direction.0.is_zero() && direction.1.is_zero() {
        return Err(Error::InvalidInput("direction must be nonzero".into()));
    }
    let m = x.b1().scale(direction.0).add(&x.b2().scale(direction.1))?;
    Ok(Spectrum::of(&m))
}

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs();
    if n.bits() > 48 {
        return None;
    }
    let mut out = Vec::new();
    let mut k = BigInt::one();
    while &k * &k <= n {
        if (&n % &k).is_zero() {
            out.push(k.clone());
            out.push(&n / &k);
        }
        k += 1;
    }
    Some(out)
}

/// Distinct rational roots with multiplicity, and the cofactor.
fn rational_roots(p: &TPoly) -> (Vec<(Rational, usize)>, TPoly) {
    let mut rest = p.clone();
    let mut roots = Vec::new();
    let lead_zeros = rest.coeffs().iter().take_while(|c| c.is_zero()).count();
    if lead_zeros > 0 {
        roots.push((Rational::zero(), lead_zeros));
        rest = TPoly::new(rest.coeffs()[lead_zeros..].to_vec());
    }
    if rest.degree().unwrap_or(0) == 0 {
        return (roots, rest.monic());
    }
    let lcm = rest.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = rest.coeffs().iter().map(|c| (c * Rational::from_integer(lcm.clone())).to_integer()).collect();
    let (Some(nums), Some(dens)) = (divisors(&ints[0]), divisors(ints.last().expect("nonconstant"))) else {
        return (roots, rest.monic());
    };
    let mut candidates: Vec<Rational> = nums
        .iter()
        .flat_map(|a| dens.iter().flat_map(move |b| [Rational::new(a.clone(), b.clone()), -Rational::new(a.clone(), b.clone())]))
        .collect();
    candidates.sort();
    candidates.dedup();
    for c in candidates {
        let mut mult = 0;
        let lin = TPoly::linear(-c.clone(), Rational::one());
        while rest.degree().unwrap_or(0) > 0 && rest.eval(&c).is_zero() {
            rest = rest.exact_div(&lin).expect("root divides");
            mult += 1;
        }
        if mult > 0 {
            roots.push((c, mult));
        }
    }
    roots.sort();
    (roots, rest.monic())
}

/// Yun's algorithm: `p = Π f_i^i` with `f_i` squarefree and coprime.
fn squarefree_decomposition(p: &TPoly) -> Vec<(TPoly, usize)> {
    let mut out = Vec::new();
    if p.degree().unwrap_or(0) == 0 {
        return out;
    }
    let p = p.monic();
    let dp = p.derivative();
    let a0 = p.gcd(&dp);
    let mut b = p.exact_div(&a0).expect("gcd divides");
    let mut c = dp.exact_div(&a0).expect("gcd divides");
    let mut d = c - b.derivative();
    let mut i = 1;
    while b.degree().unwrap_or(0) > 0 {
        let a = b.gcd(&d);
        if a.degree().unwrap_or(0) > 0 {
            out.push((a.monic(), i));
        }
        b = b.exact_div(&a).expect("gcd divides");
        c = d.exact_div(&a).expect("gcd divides");
        d = c - b.derivative();
        i += 1;
    }
    out
}

/// Points of `C²` with multiplicity.
#[derive(Clone, Debug, PartialEq)]
pub struct SupportCycle {
    pub points: Vec<((Rational, Rational), usize)>,
    /// Multiplicity carried by eigenvalues that are not rational.
    pub unresolved: usize,
}

impl SupportCycle {
    pub fn total(&self) -> usize {
        self.points.iter().map(|(_, m)| m).sum::<usize>() + self.unresolved
    }
}

fn power(m: &Matrix<Rational>, k: usize) -> Matrix<Rational> {
    (0..k).fold(Matrix::identity(m.rows()), |acc, _| acc.mul(m).expect("square"))
}

/// Joint generalized eigenvalues of the commuting pair `B1, B2` (requires `J = 0`).
pub fn support_cycle(x: &AdhmData) -> Result<SupportCycle> {
    let (b1, b2) = (x.b1(), x.b2());
    if !b1.mul(b2)?.sub(&b2.mul(b1)?)?.is_zero() {
        return Err(Error::NonCommuting);
    }
    if !x.j().is_zero() {
        return Err(Error::InvalidInput("support cycle needs J = 0".into()));
    }
    let s1 = Spectrum::of(b1);
    let mut unresolved: usize = s1.other_factors.iter().map(|(f, m)| f.degree().unwrap_or(0) * m).sum();
    let mut points = Vec::new();
    let d = x.d();
    for (x1, m1) in &s1.roots {
        let shifted = b1.sub(&Matrix::identity(d).scale(x1))?;
        let basis = power(&shifted, *m1).nullspace();
        let image = b2.mul(&basis)?;
        let restricted = basis.solve(&image).expect("generalized eigenspace is B2-invariant");
        let s2 = Spectrum::of(&restricted);
        unresolved += s2.other_factors.iter().map(|(f, m)| f.degree().unwrap_or(0) * m).sum::<usize>();
        for (x2, m2) in s2.roots {
            points.push(((x1.clone(), x2), m2));
        }
    }
    points.sort();
    Ok(SupportCycle { points, unresolved })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adhm::{direct_sum, fixed_point_data, FramingMode};
    use crate::scalar::{int, rat};

    fn diag(xs: &[i64]) -> Matrix<Rational> {
        Matrix::diagonal(xs.iter().map(|&x| int(x)).collect())
    }

    #[test]
    fn char_poly_small() {
        let m = Matrix::from_rows(vec![vec![int(1), int(2)], vec![int(3), int(4)]]).unwrap();
        assert_eq!(char_poly(&m), TPoly::new(vec![int(-2), int(-5), int(1)]));
        assert_eq!(char_poly(&Matrix::zeros(0, 0)), TPoly::one());
    }

    #[test]
    fn fixed_points_are_nilpotent() {
        let x = fixed_point_data(&[vec![2, 1], vec![1]]).unwrap();
        let s = spectrum_projection(&x, (&int(2), &rat(-1, 3))).unwrap();
        assert_eq!(s.roots, vec![(int(0), 4)]);
        assert!(s.other_factors.is_empty());
        let c = support_cycle(&x).unwrap();
        assert_eq!(c.points, vec![((int(0), int(0)), 4)]);
        let e = fixed_point_data(&[vec![]]).unwrap();
        assert!(spectrum_projection(&e, (&int(1), &int(0))).unwrap().roots.is_empty());
        assert!(support_cycle(&e).unwrap().points.is_empty());
    }

    #[test]
    fn irrational_and_repeated_roots() {
        // (t^2 - 2)^2 (t - 1/2)
        let m = Matrix::from_rows(vec![
            vec![int(0), int(2), int(0), int(0), int(0)],
            vec![int(1), int(0), int(0), int(0), int(0)],
            vec![int(0), int(0), int(0), int(2), int(0)],
            vec![int(0), int(0), int(1), int(0), int(0)],
            vec![int(0), int(0), int(0), int(0), rat(1, 2)],
        ])
        .unwrap();
        let s = Spectrum::of(&m);
        assert_eq!(s.roots, vec![(rat(1, 2), 1)]);
        assert_eq!(s.other_factors, vec![(TPoly::new(vec![int(-2), int(0), int(1)]), 2)]);
    }

    #[test]
    fn diagonal_support() {
        let x = AdhmData::new(
            diag(&[1, 2, 2]),
            diag(&[5, -1, 3]),
            Matrix::from_fn(3, 1, |_, _| int(1)),
            Matrix::zeros(1, 3),
        )
        .unwrap();
        let c = support_cycle(&x).unwrap();
        assert_eq!(c.points, vec![((int(1), int(5)), 1), ((int(2), int(-1)), 1), ((int(2), int(3)), 1)]);
        assert_eq!(c.total(), 3);
        let bad = AdhmData::new(
            Matrix::from_rows(vec![vec![int(0), int(1)], vec![int(0), int(0)]]).unwrap(),
            Matrix::from_rows(vec![vec![int(0), int(0)], vec![int(1), int(0)]]).unwrap(),
            Matrix::zeros(2, 1),
            Matrix::zeros(1, 2),
        )
        .unwrap();
        assert_eq!(support_cycle(&bad).unwrap_err(), Error::NonCommuting);
    }

    #[test]
    fn spectra_of_sums_concatenate() {
        for seed in 0..6 {
            let x = AdhmData::random(2, 1, seed);
            let y = AdhmData::random(3, 1, seed + 100);
            let s = direct_sum(&x, &y, FramingMode::Stacked).unwrap();
            let dir = (&int(1), &rat(2, 3));
            let whole = spectrum_projection(&s, dir).unwrap();
            let parts = spectrum_projection(&x, dir).unwrap().union(&spectrum_projection(&y, dir).unwrap());
            assert_eq!(whole, parts);
        }
    }
}
