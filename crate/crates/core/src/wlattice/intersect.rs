use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::normal_form::{
    column_hermite, column_hermite_basis, ed_gcd, hermite_coordinates, hermite_mod, scaled_lower_inverse, smith_diagonal,
    smith_mod, ColumnHermite,
};
use super::{generic_rank, FockLattice};
use crate::error::{Error, Result};
use crate::exact::{UPoly, Var};
use crate::matrix::Matrix;
use crate::scalar::{int, rat, EuclideanDomain};
use crate::{QPoly, Rational};

type TPoly = UPoly<Rational>;

/// Every variable sent to `α + β t` with `β ≠ 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct LineSpecialization {
    seed: u64,
    images: Vec<(Rational, Rational)>,
}

impl LineSpecialization {
    pub fn from_seed(seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let images = Var::all()
            .map(|_| {
                let a = rat(rng.gen_range(-12..=12), rng.gen_range(1..=5));
                let mut b = 0;
                while b == 0 {
                    b = rng.gen_range(-9..=9);
                }
                (a, rat(b, rng.gen_range(1..=5)))
            })
            .collect();
        LineSpecialization { seed, images }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// `(α, β)` for the variable.
    pub fn image(&self, v: Var) -> &(Rational, Rational) {
        &self.images[v.index()]
    }

    pub fn apply(&self, p: &QPoly) -> TPoly {
        p.eval_with(
            |v| {
                let (a, b) = self.image(v);
                TPoly::linear(a.clone(), b.clone())
            },
            |c| TPoly::constant(c.clone()),
        )
    }

    pub fn apply_matrix(&self, m: &Matrix<QPoly>) -> Matrix<TPoly> {
        m.map(|p| self.apply(p))
    }

    /// `{"a1": "α + β*t", ...}`.
    pub fn describe(&self) -> Vec<(String, String)> {
        Var::all()
            .map(|v| {
                let (a, b) = self.image(v);
                (v.name(), TPoly::linear(a.clone(), b.clone()).display_in("t"))
            })
            .collect()
    }
}

/// Intersection of two lattices over the line's polynomial ring `Q[t]`.
#[derive(Clone, Debug, PartialEq)]
pub struct PidIntersection {
    pub seed: u64,
    pub degree: usize,
    pub rank: usize,
    /// Invariant factors of the intersection inside the sum lattice.
    pub divisors: Vec<TPoly>,
    /// Invariant factors of the intersection inside the full monomial lattice.
    pub ambient_divisors: Vec<TPoly>,
    /// Columns in the monomial basis.
    pub basis: Matrix<TPoly>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IntersectionReport {
    pub algebra: String,
    pub degree: usize,
    pub line_seed: u64,
    pub rank: usize,
    pub divisors: Vec<String>,
    pub ambient_divisors: Vec<String>,
}

impl PidIntersection {
    pub fn divisor_strings(&self) -> Vec<String> {
        self.divisors.iter().map(|p| p.display_in("t")).collect()
    }

    pub fn report(&self, algebra: &str) -> IntersectionReport {
        IntersectionReport {
            algebra: algebra.to_owned(),
            degree: self.degree,
            line_seed: self.seed,
            rank: self.rank,
            divisors: self.divisor_strings(),
            ambient_divisors: self.ambient_divisors.iter().map(|p| p.display_in("t")).collect(),
        }
    }
}

fn negate(m: &Matrix<TPoly>) -> Matrix<TPoly> {
    m.map(|p| -p.clone())
}

/// Intersect `l1` and `l2` after restricting to the line.
///
/// Fails with [`Error::DegenerateLine`] when any rank drops on the line.
pub fn pid_intersection(l1: &FockLattice, l2: &FockLattice, line: &LineSpecialization) -> Result<PidIntersection> {
    if l1.degree() != l2.degree() || l1.ambient().rank() != l2.ambient().rank() {
        return Err(Error::LatticeMismatch);
    }
    let (c1, c2) = (l1.coordinates(), l2.coordinates());
    let joint = c1.hcat(&c2)?;
    let seed = line.seed();
    let (g1, g2, g12) = (generic_rank(&c1, seed), generic_rank(&c2, seed), generic_rank(&joint, seed));
    let (a, b) = (line.apply_matrix(&c1), line.apply_matrix(&c2));
    let degenerate = Error::DegenerateLine { seed };

    let n = a.rows();
    let (ha, hb) = (column_hermite_basis(&a), column_hermite_basis(&b));
    if ha.rank() != g1 || hb.rank() != g2 {
        return Err(degenerate);
    }
    let sum = column_hermite_basis(&a.hcat(&b)?);
    if sum.rank() != g12 {
        return Err(degenerate);
    }
    let full = g1 == n && g2 == n && a.cols() == n && b.cols() == n;
    let (basis, modulus) = if full {
        full_rank_intersection(&ha, &hb)
    } else {
        (kernel_intersection(&a, &b)?, None)
    };
    let rank = basis.cols();
    if rank + g12 != g1 + g2 {
        return Err(degenerate);
    }
    let x = hermite_coordinates(&sum, &basis)
        .ok_or_else(|| Error::InvalidInput("intersection escapes the sum lattice".into()))?;
    let (divisors, ambient_divisors) = match &modulus {
        Some(m) => (smith_mod(&x, m), smith_mod(&basis, m)),
        None => (smith_diagonal(&x), smith_diagonal(&basis)),
    };
    Ok(PidIntersection { seed, degree: l1.degree(), rank, divisors, ambient_divisors, basis })
}

fn diagonal_product(h: &ColumnHermite<TPoly>) -> TPoly {
    (0..h.rank()).fold(TPoly::one(), |acc, i| acc * h.h[(i, i)].clone())
}

/// `L1 ∩ L2 = (L1* + L2*)*` for full-rank lattices; the result contains
/// `δ R^n` with `δ = lcm(det L1, det L2)`, which is returned as the modulus.
fn full_rank_intersection(ha: &ColumnHermite<TPoly>, hb: &ColumnHermite<TPoly>) -> (Matrix<TPoly>, Option<TPoly>) {
    let (da, db) = (diagonal_product(ha), diagonal_product(hb));
    let g = ed_gcd(&da, &db);
    let delta = (da.clone() * db.clone()).exact_div(&g).expect("gcd divides").monic();
    let dual = |h: &ColumnHermite<TPoly>, d: &TPoly| {
        let inv = scaled_lower_inverse(&h.h, d).expect("adjugate is polynomial");
        inv.transpose().scale(&delta.exact_div(d).expect("divides lcm"))
    };
    let sum_of_duals = dual(ha, &da).hcat(&dual(hb, &db)).expect("same rows");
    let hn = hermite_mod(&sum_of_duals, &delta);
    let x = scaled_lower_inverse(&hn.h, &delta).expect("intersection is integral").transpose();
    (x, Some(delta))
}

fn kernel_intersection(a: &Matrix<TPoly>, b: &Matrix<TPoly>) -> Result<Matrix<TPoly>> {
    // Pairs (y, z) with A y = B z.
    let relations = column_hermite(&a.hcat(&negate(b))?).kernel();
    let y = relations.submatrix(0..a.cols(), 0..relations.cols());
    Ok(column_hermite_basis(&a.mul(&y)?).basis())
}

/// Tries consecutive seeds until a line is nondegenerate.
pub fn pid_intersection_retrying(
    l1: &FockLattice,
    l2: &FockLattice,
    first_seed: u64,
    attempts: u64,
) -> Result<PidIntersection> {
    let mut last = Error::DegenerateLine { seed: first_seed };
    for s in first_seed..first_seed + attempts.max(1) {
        match pid_intersection(l1, l2, &LineSpecialization::from_seed(s)) {
            Err(e @ Error::DegenerateLine { .. }) => last = e,
            other => return other,
        }
    }
    Err(last)
}

/// Whether a divisor is a unit.
pub fn is_trivial(p: &TPoly) -> bool {
    !p.is_zero() && p.degree() == Some(0) && p.leading() == int(1)
}
