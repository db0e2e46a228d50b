//! The reflection operator on the antidiagonal Fock factor, its expansion
//! at large spectral parameter, and the Yang–Baxter harness.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{laurent_at_infinity, Var};
use crate::fock::{
    change_of_generators, Basis, BosonLattice, FockSpace, FockVector, Form, Monomial, OperatorMatrix,
    Transport, TransportMode,
};
use crate::matrix::Matrix;
use crate::scalar::{int, Field};
use crate::virasoro::{parity_matrix, FeiginFuchs};
use crate::{QFunc, Rational};

/// Which side of the intertwining relation carries the swapped parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Orientation {
    /// `R · L_n(σa) = L_n(a) · R`.
    SourceSwapped,
    /// `R · L_n(a) = L_n(σa) · R`.
    TargetSwapped,
}

/// Normalization applied on the left of the raw reflection operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Normalization {
    Identity,
    Negated,
    /// `(-1)^{number of parts}`, i.e. the automorphism `P ↦ -P`.
    Parity,
    NegatedParity,
}

impl Normalization {
    pub const ALL: [Normalization; 4] = [
        Normalization::Identity,
        Normalization::Negated,
        Normalization::Parity,
        Normalization::NegatedParity,
    ];

    /// The scalar sign, when the normalization is scalar.
    pub fn sign(self) -> Option<i64> {
        match self {
            Normalization::Identity => Some(1),
            Normalization::Negated => Some(-1),
            _ => None,
        }
    }

    fn matrix<C: Field>(self, d: usize) -> Matrix<C> {
        let n = Basis::new(1, d).len();
        match self {
            Normalization::Identity => Matrix::identity(n),
            Normalization::Negated => Matrix::identity(n).scale(&-C::one()),
            Normalization::Parity => parity_matrix(d),
            Normalization::NegatedParity => parity_matrix::<C>(d).scale(&-C::one()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ReflectionConvention {
    pub orientation: Orientation,
    pub normalization: Normalization,
}

impl ReflectionConvention {
    pub const fn raw(orientation: Orientation) -> Self {
        ReflectionConvention { orientation, normalization: Normalization::Identity }
    }

    /// The convention under which the expansion matches `1 + (s/u) r` in
    /// every degree and the Yang–Baxter equation holds.
    pub const UNIFORM: ReflectionConvention = ReflectionConvention {
        orientation: Orientation::TargetSwapped,
        normalization: Normalization::Parity,
    };
}

impl fmt::Display for ReflectionConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let o = match self.orientation {
            Orientation::SourceSwapped => "source-swapped",
            Orientation::TargetSwapped => "target-swapped",
        };
        let n = match self.normalization {
            Normalization::Identity => "+1",
            Normalization::Negated => "-1",
            Normalization::Parity => "+parity",
            Normalization::NegatedParity => "-parity",
        };
        write!(f, "{o}/{n}")
    }
}

/// Degree-`d` block of the reflection operator at the parameters of `ff`
/// (`σ` negates the weight).
pub fn reflection_block<C: Field>(ff: &FeiginFuchs<C>, d: usize, conv: ReflectionConvention) -> Result<Matrix<C>> {
    let swapped = ff.with_weight(-ff.weight().clone());
    let (num, den) = match conv.orientation {
        Orientation::SourceSwapped => (ff, &swapped),
        Orientation::TargetSwapped => (&swapped, ff),
    };
    let raw = C::right_divide(&num.pbw_matrix(d), &den.pbw_matrix(d)).ok_or_else(|| den.singular_pbw(d))?;
    if conv.normalization == Normalization::Identity {
        return Ok(raw);
    }
    conv.normalization.matrix::<C>(d).mul(&raw)
}

/// The reflection operator on degrees `0..=d` of the antidiagonal factor.
pub fn reflection<C: Field>(ff: &FeiginFuchs<C>, d: usize, conv: ReflectionConvention) -> Result<OperatorMatrix<C>> {
    let mut blocks = BTreeMap::new();
    for k in 0..=d {
        blocks.insert(k, reflection_block(ff, k, conv)?);
    }
    let l = ff.space().lattice().clone();
    Ok(OperatorMatrix::from_blocks(l.clone(), l, 0, blocks))
}

/// `r = -e Σ_{n>0} P_{-n} P_n` on degrees `0..=d`.
pub fn classical_r<C: Field>(ff: &FeiginFuchs<C>, d: usize) -> OperatorMatrix<C> {
    let sp = ff.space();
    let g = ff.generator();
    let minus_e = -ff.eps_product();
    OperatorMatrix::from_action(sp, d, 0, |v| {
        let mut out = FockVector::zero();
        for n in 1..=v.max_degree() as i64 {
            out = out + sp.mode(g, -n, &sp.mode(g, n, v));
        }
        Ok(out.scale(&minus_e))
    })
    .expect("degree preserving")
}

/// Large-`u` expansion of one degree block under every convention.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DegreeExpansion {
    pub degree: usize,
    /// Conventions with `N · R = 1 + (s/u) r + O(u^-2)`.
    pub matches: Vec<ReflectionConvention>,
    /// Scalar sign `σ_d` among the matches, if any.
    pub sign: Option<i64>,
    /// Highest power of `1/u` through which the match was checked.
    pub verified_order: i64,
    /// For the uniform convention, the first mismatching coefficient if it fails.
    pub mismatch: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExpansionReport {
    pub degrees: Vec<DegreeExpansion>,
    /// Conventions that match in every degree.
    pub uniform: Vec<ReflectionConvention>,
}

impl ExpansionReport {
    pub fn is_consistent(&self) -> bool {
        !self.uniform.is_empty()
    }
}

/// Compare `N · R` with `1 + (s/u) r` through order `u^{-1}` in each degree
/// `≤ d`, with `u` a free variable.
pub fn expansion_report(d: usize) -> Result<ExpansionReport> {
    let u = Var::a(1);
    let ff = FeiginFuchs::new(
        BosonLattice::sl2(Form::Standard),
        0,
        QFunc::var(u),
        QFunc::var(Var::E1),
        QFunc::var(Var::E2),
    )?;
    let s = ff.eps_sum();
    let r = classical_r(&ff, d);
    let mut degrees = Vec::new();
    let mut uniform: Option<Vec<ReflectionConvention>> = None;
    for k in 0..=d {
        let rk = r.block(k).expect("stored degree");
        let mut matches = Vec::new();
        let mut mismatch = None;
        for orientation in [Orientation::SourceSwapped, Orientation::TargetSwapped] {
            let raw = reflection_block(&ff, k, ReflectionConvention::raw(orientation))?;
            for normalization in Normalization::ALL {
                let conv = ReflectionConvention { orientation, normalization };
                let x = normalization.matrix::<QFunc>(k).mul(&raw)?;
                match first_order_mismatch(&x, rk, &s, u)? {
                    None => matches.push(conv),
                    Some(msg) if conv == ReflectionConvention::UNIFORM => mismatch = Some(msg),
                    Some(_) => {}
                }
            }
        }
        let sign = matches.iter().find_map(|c| c.normalization.sign());
        uniform = Some(match uniform {
            None => matches.clone(),
            Some(prev) => prev.into_iter().filter(|c| matches.contains(c)).collect(),
        });
        degrees.push(DegreeExpansion { degree: k, matches, sign, verified_order: 1, mismatch });
    }
    Ok(ExpansionReport { degrees, uniform: uniform.unwrap_or_default() })
}

/// `None` if `x = 1 + (s/u) r + O(u^-2)` entrywise, else the first mismatch.
fn first_order_mismatch(x: &Matrix<QFunc>, r: &Matrix<QFunc>, s: &QFunc, u: Var) -> Result<Option<String>> {
    for i in 0..x.rows() {
        for j in 0..x.cols() {
            let l = laurent_at_infinity(&x[(i, j)], u, 1)?;
            if l.start < 0 {
                return Ok(Some(format!("entry ({i},{j}) grows like u^{}", -l.start)));
            }
            let c0 = l.coeff(0);
            let want0 = if i == j { QFunc::one() } else { QFunc::zero() };
            if c0 != want0 {
                return Ok(Some(format!("entry ({i},{j}) u^0 coefficient {c0}")));
            }
            let c1 = l.coeff(1);
            let want1 = s * &r[(i, j)];
            if c1 != want1 {
                return Ok(Some(format!("entry ({i},{j}) u^-1 coefficient {c1}, expected {want1}")));
            }
        }
    }
    Ok(None)
}

/// The triple Fock space with one pair `(i, j)` singled out: generators
/// `Δ = P^i + P^j`, `− = P^i − P^j`, and the remaining ones.
#[derive(Clone, Debug)]
pub struct PairEmbedding {
    lattice: BosonLattice,
    pair: (usize, usize),
    transport: Transport,
    inverse: Transport,
}

impl PairEmbedding {
    /// Pair `(i, j)` inside `rank` orthonormal bosons in the standard form.
    pub fn new(rank: usize, i: usize, j: usize) -> Result<Self> {
        if i == j || i >= rank || j >= rank {
            return Err(Error::InvalidInput(format!("bad pair ({i},{j}) for rank {rank}")));
        }
        let lattice = BosonLattice::gl(rank, Form::Standard);
        let others: Vec<usize> = (0..rank).filter(|&k| k != i && k != j).collect();
        let t = Matrix::from_fn(rank, rank, |row, col| {
            let v = match row {
                0 => (col == i || col == j) as i64,
                1 => (col == i) as i64 - (col == j) as i64,
                r => (col == others[r - 2]) as i64,
            };
            int(v)
        });
        let (_, transport) = change_of_generators(&t, &lattice, TransportMode::Isomorphism)?;
        let inverse = transport.inverse().ok_or(Error::SingularTransform)?;
        Ok(PairEmbedding { lattice, pair: (i, j), transport, inverse })
    }

    pub fn lattice(&self) -> &BosonLattice {
        &self.lattice
    }

    pub fn pair(&self) -> (usize, usize) {
        self.pair
    }

    /// Gram form in the `(Δ, −, others)` generators.
    pub fn split_lattice(&self) -> &BosonLattice {
        self.transport.new_lattice()
    }

    /// `id ⊗ X ⊗ id` on the degree-`d` block in the original generators,
    /// with `X` given by its rank-one blocks on the antidiagonal factor.
    pub fn embed<C: Field>(&self, d: usize, minus_blocks: &BTreeMap<usize, Matrix<C>>) -> Result<Matrix<C>> {
        let rank = self.lattice.rank();
        let new_basis = Basis::new(rank, d);
        let mut b: Matrix<C> = Matrix::zeros(new_basis.len(), new_basis.len());
        let rank_one: Vec<Basis> = (0..=d).map(|k| Basis::new(1, k)).collect();
        for (col, m) in new_basis.monomials().iter().enumerate() {
            let minus = m.restrict(1);
            let rest: Vec<(u32, usize)> = m.parts().iter().copied().filter(|p| p.1 != 1).collect();
            let k = minus.degree();
            let x = minus_blocks
                .get(&k)
                .ok_or_else(|| Error::InvalidInput(format!("antidiagonal block {k} missing")))?;
            let src = rank_one[k].position(&minus).expect("rank-one monomial");
            for (row_k, lam) in rank_one[k].monomials().iter().enumerate() {
                let c = &x[(row_k, src)];
                if c.is_zero() {
                    continue;
                }
                let mut parts = rest.clone();
                parts.extend(lam.parts().iter().map(|&(n, _)| (n, 1)));
                let target = Monomial::from_parts(parts)?;
                let row = new_basis.position(&target).expect("same degree");
                b[(row, col)] = b[(row, col)].clone() + c.clone();
            }
        }
        let s = self.transport.degree_matrix::<C>(d);
        let s_inv = self.inverse.degree_matrix::<C>(d);
        s.mul(&b)?.mul(&s_inv)
    }
}

/// Numeric or symbolic values for `(a1, a2, a3, e1, e2)`.
#[derive(Clone, Debug, PartialEq)]
pub struct YbeParams<C> {
    pub a: [C; 3],
    pub eps1: C,
    pub eps2: C,
}

impl YbeParams<Rational> {
    pub fn from_ints(a: [i64; 3], eps1: i64, eps2: i64) -> Self {
        YbeParams { a: a.map(int), eps1: int(eps1), eps2: int(eps2) }
    }

    /// Deterministic generic rational parameters for `seed`, avoiding every
    /// PBW degeneracy up to degree `d`.
    pub fn from_seed(seed: u64, d: usize) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let draw = |rng: &mut ChaCha8Rng| {
            let n: i64 = rng.gen_range(-30..=30);
            let m: i64 = rng.gen_range(1..=7);
            crate::scalar::rat(n, m)
        };
        loop {
            let p = YbeParams {
                a: [draw(&mut rng), draw(&mut rng), draw(&mut rng)],
                eps1: draw(&mut rng),
                eps2: draw(&mut rng),
            };
            if p.is_generic(d) {
                return p;
            }
        }
    }

    /// No `±(a_i - a_j) = r e1 + s e2` with `rs ≤ d`, nonzero `e1, e2`,
    /// pairwise distinct `a_i`.
    pub fn is_generic(&self, d: usize) -> bool {
        if self.eps1.is_zero() || self.eps2.is_zero() {
            return false;
        }
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            let u = &self.a[i] - &self.a[j];
            if u.is_zero() {
                return false;
            }
            for r in 1..=d as i64 {
                for s in 1..=d as i64 / r {
                    let f = int(r) * &self.eps1 + int(s) * &self.eps2;
                    if u == f || -u.clone() == f {
                        return false;
                    }
                }
            }
        }
        true
    }
}

impl YbeParams<QFunc> {
    pub fn symbolic() -> Self {
        YbeParams {
            a: [QFunc::var(Var::a(1)), QFunc::var(Var::a(2)), QFunc::var(Var::a(3))],
            eps1: QFunc::var(Var::E1),
            eps2: QFunc::var(Var::E2),
        }
    }
}

impl<C: Field> YbeParams<C> {
    pub fn to_strings(&self) -> Vec<String> {
        self.a
            .iter()
            .chain([&self.eps1, &self.eps2])
            .map(ToString::to_string)
            .collect()
    }
}

/// `R_ij(a_i - a_j)` on the degree-`d` block of the triple Fock space.
pub fn pair_reflection<C: Field>(
    params: &YbeParams<C>,
    emb: &PairEmbedding,
    d: usize,
    conv: ReflectionConvention,
) -> Result<Matrix<C>> {
    let (i, j) = emb.pair();
    let u = params.a[i].clone() - params.a[j].clone();
    let ff = FeiginFuchs::new(BosonLattice::sl2(Form::Standard), 0, u, params.eps1.clone(), params.eps2.clone())?;
    let mut blocks = BTreeMap::new();
    for k in 0..=d {
        blocks.insert(k, reflection_block(&ff, k, conv)?);
    }
    emb.embed(d, &blocks)
}

/// `R12 R13 R23 - R23 R13 R12` on degrees `0..=d` of the triple Fock space.
pub fn ybe_residual<C: Field>(d: usize, params: &YbeParams<C>, conv: ReflectionConvention) -> Result<OperatorMatrix<C>> {
    let e12 = PairEmbedding::new(3, 0, 1)?;
    let e13 = PairEmbedding::new(3, 0, 2)?;
    let e23 = PairEmbedding::new(3, 1, 2)?;
    let mut blocks = BTreeMap::new();
    for k in 0..=d {
        let r12 = pair_reflection(params, &e12, k, conv)?;
        let r13 = pair_reflection(params, &e13, k, conv)?;
        let r23 = pair_reflection(params, &e23, k, conv)?;
        let lhs = r12.mul(&r13)?.mul(&r23)?;
        let rhs = r23.mul(&r13)?.mul(&r12)?;
        blocks.insert(k, lhs.sub(&rhs)?);
    }
    let l = e12.lattice().clone();
    Ok(OperatorMatrix::from_blocks(l.clone(), l, 0, blocks))
}

/// `(id ⊗ R) P^Δ_n - P^Δ_n (id ⊗ R)` on the pair Fock space, degrees `≤ d`.
pub fn diagonal_commutator<C: Field>(
    ff: &FeiginFuchs<C>,
    n: i64,
    d: usize,
    conv: ReflectionConvention,
) -> Result<OperatorMatrix<C>> {
    let emb = PairEmbedding::new(2, 0, 1)?;
    let mut r_blocks = BTreeMap::new();
    for k in 0..=d {
        r_blocks.insert(k, reflection_block(ff, k, conv)?);
    }
    let space = FockSpace::new(emb.lattice().clone(), ff.eps_product())?;
    let ones = [C::one(), C::one()];
    let delta = OperatorMatrix::from_action(&space, d, -n, |v| Ok(space.combined_mode(&ones, n, v)))?;
    let mut embedded = BTreeMap::new();
    for k in 0..=d {
        embedded.insert(k, emb.embed(k, &r_blocks)?);
    }
    let l = emb.lattice().clone();
    let r = OperatorMatrix::from_blocks(l.clone(), l, 0, embedded);
    r.commutator(&delta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse_rf;
    use crate::scalar::Ring;

    fn rf(s: &str) -> QFunc {
        parse_rf(s).unwrap()
    }

    #[test]
    fn degree_zero_and_one() {
        let ff = FeiginFuchs::sl2(Form::Standard);
        let src = ReflectionConvention::raw(Orientation::SourceSwapped);
        assert!(reflection_block(&ff, 0, src).unwrap().is_identity());
        let r1 = reflection_block(&ff, 1, src).unwrap();
        assert_eq!(r1[(0, 0)], rf("-(a1 - a2 - e1 - e2)/(a1 - a2 + e1 + e2)"));
    }

    #[test]
    fn orientations_are_inverse() {
        let ff = FeiginFuchs::sl2(Form::Standard);
        for d in 0..=2 {
            let a = reflection_block(&ff, d, ReflectionConvention::raw(Orientation::SourceSwapped)).unwrap();
            let b = reflection_block(&ff, d, ReflectionConvention::raw(Orientation::TargetSwapped)).unwrap();
            assert!(a.mul(&b).unwrap().is_identity());
        }
    }

    #[test]
    fn classical_r_is_twice_degree() {
        let ff = FeiginFuchs::sl2(Form::Standard);
        let r = classical_r(&ff, 4);
        for d in 0..=4 {
            let n = Basis::new(1, d).len();
            assert_eq!(r.block(d).unwrap(), &Matrix::identity(n).scale(&QFunc::from_i64(2 * d as i64)));
        }
    }

    #[test]
    fn expansion_degree_one() {
        let rep = expansion_report(1).unwrap();
        assert_eq!(rep.degrees[0].sign, Some(1));
        let d1 = &rep.degrees[1];
        assert_eq!(d1.sign, Some(-1));
        assert!(d1.matches.contains(&ReflectionConvention {
            orientation: Orientation::TargetSwapped,
            normalization: Normalization::Negated
        }));
        assert!(rep.uniform.contains(&ReflectionConvention::UNIFORM));
    }

    #[test]
    fn ybe_degree_one_example() {
        let p = YbeParams::from_ints([5, 1, -6], 1, 2);
        assert!(ybe_residual(1, &p, ReflectionConvention::UNIFORM).unwrap().is_zero());
        let raw = ReflectionConvention::raw(Orientation::TargetSwapped);
        assert!(!ybe_residual(1, &p, raw).unwrap().is_zero());
    }

    #[test]
    fn singular_seed_is_reported() {
        let p = YbeParams::from_ints([5, 1, -6], 1, 2);
        assert!(matches!(
            ybe_residual(2, &p, ReflectionConvention::UNIFORM),
            Err(Error::SingularPbw { degree: 2, .. })
        ));
    }

    #[test]
    fn pair_split_is_orthogonal() {
        let e = PairEmbedding::new(3, 0, 2).unwrap();
        let g = e.split_lattice().gram();
        assert_eq!(g[0][1], int(0));
        assert_eq!(g[0][2], int(0));
        assert_eq!(g[1][2], int(0));
        assert_eq!(g[0][0], int(2));
    }
}
