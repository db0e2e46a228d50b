use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_traits::Zero;

use super::AdhmData;
use crate::matrix::Matrix;
use crate::Rational;

/// `c0 z0 + c1 z1 + c2 z2`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LinearForm(pub [Rational; 3]);

/// Coefficients of `z0², z0z1, z0z2, z1², z1z2, z2²`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct QuadraticForm(pub [Rational; 6]);

const QUAD_INDEX: [[usize; 3]; 3] = [[0, 1, 2], [1, 3, 4], [2, 4, 5]];
const QUAD_NAMES: [&str; 6] = ["z0^2", "z0*z1", "z0*z2", "z1^2", "z1*z2", "z2^2"];

impl LinearForm {
    /// `c · z_k`.
    pub fn var(k: usize, c: Rational) -> Self {
        let mut f = LinearForm::default();
        f.0[k] = c;
        f
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Value at a point.
    pub fn eval(&self, z: &[Rational; 3]) -> Rational {
        self.0.iter().zip(z).map(|(c, x)| c * x).sum()
    }
}

impl Add for LinearForm {
    type Output = LinearForm;
    fn add(self, rhs: LinearForm) -> LinearForm {
        LinearForm([&self.0[0] + &rhs.0[0], &self.0[1] + &rhs.0[1], &self.0[2] + &rhs.0[2]])
    }
}

impl Sub for LinearForm {
    type Output = LinearForm;
    fn sub(self, rhs: LinearForm) -> LinearForm {
        LinearForm([&self.0[0] - &rhs.0[0], &self.0[1] - &rhs.0[1], &self.0[2] - &rhs.0[2]])
    }
}

impl Mul for &LinearForm {
    type Output = QuadraticForm;
    fn mul(self, rhs: &LinearForm) -> QuadraticForm {
        let mut q = QuadraticForm::default();
        for a in 0..3 {
            if self.0[a].is_zero() {
                continue;
            }
            for b in 0..3 {
                q.0[QUAD_INDEX[a][b]] += &self.0[a] * &rhs.0[b];
            }
        }
        q
    }
}

impl QuadraticForm {
    pub fn z0_squared(c: Rational) -> Self {
        let mut q = QuadraticForm::default();
        q.0[0] = c;
        q
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Drop every monomial containing `z0`.
    pub fn at_z0_zero(&self) -> Self {
        let mut q = self.clone();
        for k in 0..3 {
            q.0[k] = Rational::zero();
        }
        q
    }
}

impl Add for QuadraticForm {
    type Output = QuadraticForm;
    fn add(mut self, rhs: QuadraticForm) -> QuadraticForm {
        for (a, b) in self.0.iter_mut().zip(rhs.0) {
            *a += b;
        }
        self
    }
}

impl Sub for QuadraticForm {
    type Output = QuadraticForm;
    fn sub(mut self, rhs: QuadraticForm) -> QuadraticForm {
        for (a, b) in self.0.iter_mut().zip(rhs.0) {
            *a -= b;
        }
        self
    }
}

fn write_form(f: &mut fmt::Formatter<'_>, coeffs: &[Rational], names: &[&str]) -> fmt::Result {
    let mut first = true;
    for (c, name) in coeffs.iter().zip(names) {
        if c.is_zero() {
            continue;
        }
        let neg = *c < Rational::zero();
        let abs = if neg { -c.clone() } else { c.clone() };
        match (first, neg) {
            (true, true) => f.write_str("-")?,
            (false, true) => f.write_str(" - ")?,
            (false, false) => f.write_str(" + ")?,
            (true, false) => {}
        }
        if abs == Rational::from_integer(1.into()) {
            f.write_str(name)?;
        } else {
            write!(f, "{abs}*{name}")?;
        }
        first = false;
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_form(f, &self.0, &["z0", "z1", "z2"])
    }
}

impl fmt::Display for QuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_form(f, &self.0, &QUAD_NAMES)
    }
}

/// The monad `V(-1) --a--> V ⊕ V ⊕ W --b--> V(1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct MonadMatrices {
    pub d: usize,
    pub r: usize,
    /// `(2d + r) × d`.
    pub a: Vec<Vec<LinearForm>>,
    /// `d × (2d + r)`.
    pub b: Vec<Vec<LinearForm>>,
    moment: Matrix<Rational>,
}

fn scaled(m: &Matrix<Rational>, i: usize, j: usize, shift: Option<usize>) -> LinearForm {
    // z0 m[i][j] - z_shift δ_ij
    let mut f = LinearForm::var(0, m[(i, j)].clone());
    if let Some(k) = shift {
        if i == j {
            f.0[k] -= Rational::from_integer(1.into());
        }
    }
    f
}

/// `a = [z0 B1 - z1; z0 B2 - z2; z0 J]`, `b = [-(z0 B2 - z2), z0 B1 - z1, z0 I]`.
pub fn monad_matrices(x: &AdhmData) -> MonadMatrices {
    let (d, r) = (x.d(), x.r());
    let mut a = vec![vec![LinearForm::default(); d]; 2 * d + r];
    let mut b = vec![vec![LinearForm::default(); 2 * d + r]; d];
    for i in 0..d {
        for j in 0..d {
            a[i][j] = scaled(x.b1(), i, j, Some(1));
            a[d + i][j] = scaled(x.b2(), i, j, Some(2));
            b[i][j] = LinearForm::default() - scaled(x.b2(), i, j, Some(2));
            b[i][d + j] = scaled(x.b1(), i, j, Some(1));
        }
        for k in 0..r {
            b[i][2 * d + k] = scaled(x.i(), i, k, None);
        }
    }
    for k in 0..r {
        for j in 0..d {
            a[2 * d + k][j] = scaled(x.j(), k, j, None);
        }
    }
    MonadMatrices { d, r, a, b, moment: super::moment_map(x) }
}

impl MonadMatrices {
    /// `b · a` as a matrix of quadratic forms.
    pub fn product(&self) -> Vec<Vec<QuadraticForm>> {
        let mid = 2 * self.d + self.r;
        (0..self.d)
            .map(|i| {
                (0..self.d)
                    .map(|j| (0..mid).fold(QuadraticForm::default(), |acc, k| acc + &self.b[i][k] * &self.a[k][j]))
                    .collect()
            })
            .collect()
    }

    /// `b · a - z0² μ`, which vanishes identically.
    pub fn ba_residual(&self) -> Vec<Vec<QuadraticForm>> {
        let mut p = self.product();
        for (i, row) in p.iter_mut().enumerate() {
            for (j, q) in row.iter_mut().enumerate() {
                *q = std::mem::take(q) - QuadraticForm::z0_squared(self.moment[(i, j)].clone());
            }
        }
        p
    }

    pub fn is_complex(&self) -> bool {
        self.product().iter().flatten().all(QuadraticForm::is_zero)
    }

    /// First nonzero residual entry, for reports.
    pub fn residual_summary(&self) -> String {
        for (i, row) in self.ba_residual().iter().enumerate() {
            for (j, q) in row.iter().enumerate() {
                if !q.is_zero() {
                    return format!("entry ({i},{j}): {q}");
                }
            }
        }
        "zero".to_owned()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adhm::fixed_point_data;
    use crate::scalar::int;

    #[test]
    fn fixed_points_give_complexes() {
        let m = monad_matrices(&fixed_point_data(&[vec![2, 1], vec![1]]).unwrap());
        assert_eq!(m.a.len(), 2 * 4 + 2);
        assert_eq!(m.b[0].len(), 2 * 4 + 2);
        assert!(m.is_complex());
    }

    #[test]
    fn moment_shows_up_in_product() {
        for seed in 0..10 {
            let x = AdhmData::random(3, 2, seed);
            let m = monad_matrices(&x);
            assert_eq!(m.residual_summary(), "zero");
            let p = m.product();
            assert!(p.iter().flatten().all(|q| q.at_z0_zero().is_zero()));
            assert!(!m.is_complex() || super::super::moment_map(&x).is_zero());
        }
    }

    #[test]
    fn display() {
        let f = LinearForm([int(2), int(-1), int(0)]);
        assert_eq!(f.to_string(), "2*z0 - z1");
        assert_eq!((&f * &f).to_string(), "4*z0^2 - 4*z0*z1 + z1^2");
        assert_eq!(QuadraticForm::default().to_string(), "0");
    }
}
