//! Integral lattices inside Fock spaces and their intersections along lines.

mod intersect;
mod normal_form;

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::Var;
use crate::fock::{change_of_generators, Basis, BosonLattice, FockSpace, FockVector, Form, TransportMode};
use crate::matrix::Matrix;
use crate::scalar::{int, rat, Field, Ring};
use crate::virasoro::{partitions, FeiginFuchs};
use crate::{QFunc, QPoly, QVector, Rational};

pub use intersect::{is_trivial, pid_intersection, pid_intersection_retrying, IntersectionReport, LineSpecialization, PidIntersection};
pub use normal_form::{column_hermite, column_hermite_basis, hermite_coordinates, smith_diagonal, ColumnHermite};

/// Rank-at-most-two algebras carrying the lattices below.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algebra {
    Sl2,
    Sl3,
}

impl Algebra {
    pub fn rank(self) -> usize {
        match self {
            Algebra::Sl2 => 1,
            Algebra::Sl3 => 2,
        }
    }

    pub fn lattice(self, form: Form) -> BosonLattice {
        match self {
            Algebra::Sl2 => BosonLattice::sl2(form),
            Algebra::Sl3 => BosonLattice::sl3(form),
        }
    }

    /// `⟨a, α_i⟩` for the one-based simple root `i`.
    pub fn root_weight(self, i: usize) -> Result<QFunc> {
        if i == 0 || i > self.rank() {
            return Err(Error::InvalidInput(format!("{self} has no simple root {i}")));
        }
        Ok(QFunc::var(Var::a(i)) - QFunc::var(Var::a(i + 1)))
    }

    /// Coefficients of the primitive vector orthogonal to `α_i`, in simple roots.
    pub fn orthogonal_generator(self, i: usize) -> Option<Vec<Rational>> {
        match (self, i) {
            (Algebra::Sl3, 1) => Some(vec![int(1), int(2)]),
            (Algebra::Sl3, 2) => Some(vec![int(2), int(1)]),
            _ => None,
        }
    }
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algebra::Sl2 => "sl2",
            Algebra::Sl3 => "sl3",
        })
    }
}

impl FromStr for Algebra {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "sl2" => Ok(Algebra::Sl2),
            "sl3" => Ok(Algebra::Sl3),
            _ => Err(Error::InvalidInput(format!("unknown algebra `{s}`"))),
        }
    }
}

/// A free module over the polynomial ring, given by a basis of one graded
/// piece of a Fock space.
#[derive(Clone, Debug, PartialEq)]
pub struct FockLattice {
    ambient: BosonLattice,
    degree: usize,
    basis: Vec<QVector>,
}

impl FockLattice {
    /// Rejects coefficients with a nonconstant denominator.
    pub fn new(ambient: BosonLattice, degree: usize, basis: Vec<QVector>) -> Result<Self> {
        for v in &basis {
            if let Some(c) = first_non_polynomial(v) {
                return Err(Error::Integrality { coefficient: c.to_string() });
            }
            if v.terms().any(|(m, _)| m.degree() != degree) {
                return Err(Error::InvalidInput(format!("basis vector {v} is not of degree {degree}")));
            }
            if v.terms().any(|(m, _)| m.max_colour().is_some_and(|c| c >= ambient.rank())) {
                return Err(Error::LatticeMismatch);
            }
        }
        Ok(FockLattice { ambient, degree, basis })
    }

    /// All monomials of degree `d`.
    pub fn heisenberg(ambient: BosonLattice, d: usize) -> Self {
        let basis = Basis::new(ambient.rank(), d)
            .monomials()
            .iter()
            .map(|m| FockVector::monomial(m.clone(), QFunc::from_i64(1)))
            .collect();
        FockLattice { ambient, degree: d, basis }
    }

    pub fn ambient(&self) -> &BosonLattice {
        &self.ambient
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn basis(&self) -> &[QVector] {
        &self.basis
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// Basis vectors as columns in the monomial basis.
    pub fn coordinates(&self) -> Matrix<QPoly> {
        let b = Basis::new(self.ambient.rank(), self.degree);
        let mut m = Matrix::zeros(b.len(), self.basis.len());
        for (j, v) in self.basis.iter().enumerate() {
            for (mono, c) in v.terms() {
                let i = b.position(mono).expect("degree checked");
                m[(i, j)] = c.as_poly().expect("polynomial checked");
            }
        }
        m
    }

    /// Rank over the fraction field, certified at random rational points.
    pub fn generic_rank(&self, seed: u64) -> usize {
        generic_rank(&self.coordinates(), seed)
    }

    /// New basis `Σ_j t[j][k] b_j`; `t` should be unimodular over the integers.
    pub fn transformed(&self, t: &Matrix<Rational>) -> Result<Self> {
        if t.rows() != self.len() {
            return Err(Error::ShapeMismatch(format!("transform has {} rows, lattice has {}", t.rows(), self.len())));
        }
        let basis = (0..t.cols())
            .map(|k| {
                let mut v = FockVector::zero();
                for (j, b) in self.basis.iter().enumerate() {
                    if !t[(j, k)].is_zero() {
                        v = v + b.scale(&QFunc::from_rational(&t[(j, k)]));
                    }
                }
                v
            })
            .collect();
        FockLattice::new(self.ambient.clone(), self.degree, basis)
    }
}

fn first_non_polynomial(v: &QVector) -> Option<&QFunc> {
    v.terms().map(|(_, c)| c).find(|c| !c.is_polynomial())
}

fn random_point(rng: &mut ChaCha8Rng) -> Vec<(Var, Rational)> {
    Var::all().map(|v| (v, rat(rng.gen_range(-97..=97), rng.gen_range(1..=13)))).collect()
}

/// Maximum rank of the matrix over two random rational points.
pub fn generic_rank(m: &Matrix<QPoly>, seed: u64) -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_0f_5a11);
    (0..2)
        .map(|_| {
            let pt = random_point(&mut rng);
            m.map(|p| p.eval_with(|v| pt[v.index()].1.clone(), Clone::clone)).rank()
        })
        .max()
        .unwrap_or(0)
}

fn sublattice_vectors(algebra: Algebra, i: usize, d: usize) -> Result<(BosonLattice, Vec<QVector>)> {
    let lattice = algebra.lattice(Form::Integral);
    let weight = algebra.root_weight(i)?;
    let ff = FeiginFuchs::new(lattice.clone(), i - 1, weight, QFunc::var(Var::E1), QFunc::var(Var::E2))?;
    let space = ff.space();
    let perp: Option<Vec<QFunc>> =
        algebra.orthogonal_generator(i).map(|c| c.iter().map(QFunc::from_rational).collect());
    let mut out = Vec::new();
    for k in (0..=d).rev() {
        let rest = d - k;
        let mus = match &perp {
            Some(_) => partitions(rest),
            None if rest == 0 => vec![vec![]],
            None => vec![],
        };
        for lambda in partitions(k) {
            for mu in &mus {
                let mut v: QVector = FockVector::vacuum();
                for &p in mu.iter().rev() {
                    v = space.combined_mode(perp.as_ref().expect("rank two"), -(p as i64), &v);
                }
                for &p in lambda.iter().rev() {
                    v = ff.apply(-(p as i64), &v);
                }
                out.push(v);
            }
        }
    }
    Ok((lattice, out))
}

/// `~L_{i,-λ} ~Q_{-μ} |vac⟩` with `|λ| + |μ| = d`, in the integral form.
/// `i` is the one-based simple root.
pub fn vir_sublattice(i: usize, d: usize, algebra: Algebra) -> Result<FockLattice> {
    let (lattice, vectors) = sublattice_vectors(algebra, i, d)?;
    FockLattice::new(lattice, d, vectors)
}

/// A coefficient that failed to be polynomial.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IntegralityWitness {
    pub root: usize,
    pub degree: usize,
    pub coefficient: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IntegralityReport {
    pub algebra: Algebra,
    pub max_degree: usize,
    pub pass: bool,
    pub witnesses: Vec<IntegralityWitness>,
}

/// Checks every sublattice basis for degrees `0..=max_degree` and every root.
pub fn integrality_check(algebra: Algebra, max_degree: usize) -> IntegralityReport {
    let mut witnesses = Vec::new();
    for root in 1..=algebra.rank() {
        for degree in 0..=max_degree {
            let (_, vectors) = sublattice_vectors(algebra, root, degree).expect("valid root");
            for v in &vectors {
                if let Some(c) = first_non_polynomial(v) {
                    witnesses.push(IntegralityWitness { root, degree, coefficient: c.to_string() });
                }
            }
        }
    }
    IntegralityReport { algebra, max_degree, pass: witnesses.is_empty(), witnesses }
}

fn diagonal_annihilator(space: &FockSpace<Rational>, r: usize, m: u32, d: usize) -> Matrix<Rational> {
    let src = space.basis(d);
    let tgt = space.basis(d - m as usize);
    let mut out = Matrix::zeros(tgt.len(), src.len());
    for (j, mono) in src.monomials().iter().enumerate() {
        let v = FockVector::monomial(mono.clone(), int(1));
        let w = space.combined_mode(&vec![int(1); r], m as i64, &v);
        for (mm, c) in w.terms() {
            out[(tgt.position(mm).expect("degree"), j)] = c.clone();
        }
    }
    out
}

/// Common kernel of `P^Δ_m = Σ_j P^j_m` for `0 < m ≤ d` on degree `d` of the
/// gl(r) Fock space.
pub fn annihilator_kernel(r: usize, d: usize) -> FockLattice {
    let ambient = BosonLattice::gl(r, Form::Integral);
    let space = FockSpace::new(ambient.clone(), int(1)).expect("unit scale");
    let basis = space.basis(d);
    let mut stacked = Matrix::zeros(0, basis.len());
    for m in 1..=d as u32 {
        stacked = stacked.vcat(&diagonal_annihilator(&space, r, m, d)).expect("same width");
    }
    let kernel = stacked.nullspace();
    let vectors = (0..kernel.cols())
        .map(|k| {
            let col = kernel.column(k);
            let scale = Rational::denominator_lcm(&col.iter().collect::<Vec<_>>());
            let coords: Vec<QFunc> = col.iter().map(|c| QFunc::from_rational(&(c * &scale))).collect();
            FockSpace::<QFunc>::symbolic(ambient.clone()).from_coordinates(&basis, &coords)
        })
        .collect();
    FockLattice { ambient, degree: d, basis: vectors }
}

/// For gl(2): `L_n` of the antidiagonal boson maps the degree-`d` kernel into
/// the degree-`(d - n)` kernel. Returns whether every image solves membership.
pub fn kernel_is_stable(d: usize, n: i64) -> Result<bool> {
    if n == 0 || n > d as i64 {
        return Ok(true);
    }
    let gl2 = BosonLattice::gl(2, Form::Integral);
    let t = Matrix::from_rows(vec![vec![int(1), int(1)], vec![int(1), int(-1)]])?;
    let (split, transport) = change_of_generators(&t, &gl2, TransportMode::Isomorphism)?;
    let back = transport.inverse().ok_or(Error::SingularTransform)?;
    let u = QFunc::var(Var::a(1)) - QFunc::var(Var::a(2));
    let ff = FeiginFuchs::new(split, 1, u, QFunc::var(Var::E1), QFunc::var(Var::E2))?;
    let source = annihilator_kernel(2, d);
    let target_degree = (d as i64 - n) as usize;
    let target = annihilator_kernel(2, target_degree);
    let tm = target.coordinates().map(|p| QFunc::from_poly(p.clone()));
    let tbasis = Basis::new(2, target_degree);
    let space = FockSpace::symbolic(gl2);
    for v in source.basis() {
        let image = transport.apply(&ff.apply(n, &back.apply(v)));
        let rhs = Matrix::from_rows(space.coordinates(&tbasis, &image).into_iter().map(|c| vec![c]).collect())?;
        if rhs.is_zero() {
            continue;
        }
        if tm.solve(&rhs).is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Coefficient of `q^d` in `Π (1 - q^n)^{-colors}`.
pub fn colored_partition_count(colors: usize, d: usize) -> usize {
    crate::fock::graded_dimension(&BosonLattice::gl(colors, Form::Integral), d)
}
