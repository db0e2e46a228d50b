//! Truncated q-series for Fock, Gieseker and intersection-cohomology
//! characters, and level-one affine multiplicities.

use std::fmt;
use std::ops::{Add, Mul};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Field;

/// Power series in `q` known exactly up to and including `q^order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    coeffs: Vec<BigInt>,
}

impl QSeries {
    pub fn new(order: usize, mut coeffs: Vec<BigInt>) -> Self {
        coeffs.resize(order + 1, BigInt::zero());
        QSeries { coeffs }
    }

    pub fn one(order: usize) -> Self {
        Self::new(order, vec![BigInt::one()])
    }

    /// `(1 - q^n)^{-1}`.
    pub fn geometric(n: usize, order: usize) -> Self {
        assert!(n > 0, "geometric series needs a positive step");
        let coeffs = (0..=order).map(|k| BigInt::from((k % n == 0) as u8)).collect();
        QSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, d: usize) -> &BigInt {
        &self.coeffs[d]
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(order, self.coeffs.iter().take(order + 1).cloned().collect())
    }

    /// Multiply in place by `(1 - q^n)^{-k}`.
    fn divide_by_cyclotomic(&mut self, n: usize, k: usize) {
        for _ in 0..k {
            for d in n..self.coeffs.len() {
                let prev = self.coeffs[d - n].clone();
                self.coeffs[d] += prev;
            }
        }
    }

    /// Inverse of a series whose constant term is `±1`.
    pub fn reciprocal(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if !(c0.is_one() || (-c0).is_one()) {
            return Err(Error::InvalidInput(format!("constant term {c0} is not a unit")));
        }
        let mut inv = vec![BigInt::zero(); self.coeffs.len()];
        inv[0] = c0.clone();
        for d in 1..self.coeffs.len() {
            let s: BigInt = (1..=d).map(|k| &self.coeffs[k] * &inv[d - k]).sum();
            inv[d] = -(s * c0);
        }
        Ok(QSeries { coeffs: inv })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.reciprocal()?)
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(QSeries::one(self.order()), |acc, _| &acc * self)
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(ToString::to_string).collect()
    }

    /// Coefficients as machine integers, when they fit.
    pub fn to_u64(&self) -> Option<Vec<u64>> {
        self.coeffs.iter().map(|c| u64::try_from(c).ok()).collect()
    }
}

impl Mul for &QSeries {
    type Output = QSeries;

    fn mul(self, rhs: &QSeries) -> QSeries {
        let order = self.order().min(rhs.order());
        let mut out = vec![BigInt::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(order + 1 - i) {
                out[i + j] += a * b;
            }
        }
        QSeries { coeffs: out }
    }
}

impl Add for &QSeries {
    type Output = QSeries;

    fn add(self, rhs: &QSeries) -> QSeries {
        let order = self.order().min(rhs.order());
        QSeries { coeffs: (0..=order).map(|d| &self.coeffs[d] + &rhs.coeffs[d]).collect() }
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.to_strings().join(", "))
    }
}

/// `Π_{d≥1} (1 - q^d)^{-colors}`.
pub fn colored_partition_series(colors: usize, order: usize) -> QSeries {
    let mut s = QSeries::one(order);
    for n in 1..=order {
        s.divide_by_cyclotomic(n, colors);
    }
    s
}

/// Fixed points of rank-`r` framed sheaves are `r`-tuples of monomial ideals.
pub fn gieseker_series(r: usize, order: usize) -> QSeries {
    colored_partition_series(1, order).pow(r)
}

/// Gieseker series of rank `rank + 1` with one Fock factor divided out.
pub fn ih_series(rank: usize, order: usize) -> QSeries {
    gieseker_series(rank + 1, order)
        .checked_div(&colored_partition_series(1, order))
        .expect("partition series is a unit")
}

/// Dynkin type of the finite Lie algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BaseType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

/// The group `X_r`, labelling the Langlands-dual affine algebra at level one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineType {
    kind: BaseType,
    rank: usize,
}

impl AffineType {
    pub fn new(kind: BaseType, rank: usize) -> Result<Self> {
        let ok = match kind {
            BaseType::A => rank >= 1,
            BaseType::B | BaseType::C => rank >= 2,
            BaseType::D => rank >= 4,
            BaseType::E => (6..=8).contains(&rank),
            BaseType::F => rank == 4,
            BaseType::G => rank == 2,
        };
        if ok {
            Ok(AffineType { kind, rank })
        } else {
            Err(Error::InvalidInput(format!("no Lie algebra of type {kind:?}{rank}")))
        }
    }

    /// Classical types up to `max_rank` and all exceptional types.
    pub fn catalogue(max_rank: usize) -> Vec<AffineType> {
        let classical = [BaseType::A, BaseType::B, BaseType::C, BaseType::D]
            .into_iter()
            .flat_map(|k| (1..=max_rank).filter_map(move |r| AffineType::new(k, r).ok()));
        let exceptional = [(BaseType::E, 6), (BaseType::E, 7), (BaseType::E, 8), (BaseType::F, 4), (BaseType::G, 2)]
            .into_iter()
            .map(|(k, r)| AffineType { kind: k, rank: r });
        classical.chain(exceptional).collect()
    }

    pub fn kind(&self) -> BaseType {
        self.kind
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_simply_laced(&self) -> bool {
        matches!(self.kind, BaseType::A | BaseType::D | BaseType::E)
    }

    /// The affine algebra in Kac's notation, e.g. `A4^(2)` for `B2`.
    pub fn dual_label(&self) -> String {
        let r = self.rank;
        match self.kind {
            BaseType::A | BaseType::D | BaseType::E => format!("{:?}{r}^(1)", self.kind),
            BaseType::B => format!("A{}^(2)", 2 * r),
            BaseType::C => format!("D{}^(2)", r + 1),
            BaseType::F => "E6^(2)".to_owned(),
            BaseType::G => "D4^(3)".to_owned(),
        }
    }

    /// Maximal number of edges between two Dynkin nodes.
    pub fn lacing_number(&self) -> usize {
        match self.kind {
            BaseType::A | BaseType::D | BaseType::E => 1,
            BaseType::B | BaseType::C | BaseType::F => 2,
            BaseType::G => 3,
        }
    }

    pub fn long_simple_roots(&self) -> usize {
        match self.kind {
            BaseType::A | BaseType::D | BaseType::E => self.rank,
            BaseType::B => self.rank - 1,
            BaseType::C | BaseType::G => 1,
            BaseType::F => 2,
        }
    }

    /// Multiplicity of the imaginary root `n δ`.
    pub fn mult_delta(&self, n: usize) -> usize {
        if n % self.lacing_number() == 0 {
            self.rank
        } else {
            self.long_simple_roots()
        }
    }

    pub fn dual_coxeter(&self) -> usize {
        let r = self.rank;
        match self.kind {
            BaseType::A => r + 1,
            BaseType::B => 2 * r - 1,
            BaseType::C => r + 1,
            BaseType::D => 2 * r - 2,
            BaseType::E => match r {
                6 => 12,
                7 => 18,
                _ => 30,
            },
            BaseType::F => 9,
            BaseType::G => 4,
        }
    }
}

impl fmt::Display for AffineType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.kind, self.rank)
    }
}

impl FromStr for AffineType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let kind = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => BaseType::A,
            Some('B') => BaseType::B,
            Some('C') => BaseType::C,
            Some('D') => BaseType::D,
            Some('E') => BaseType::E,
            Some('F') => BaseType::F,
            Some('G') => BaseType::G,
            _ => return Err(Error::Parse(format!("unknown Lie type `{s}`"))),
        };
        let rank = chars
            .as_str()
            .trim_start_matches('_')
            .parse()
            .map_err(|_| Error::Parse(format!("missing rank in `{s}`")))?;
        AffineType::new(kind, rank)
    }
}

impl Serialize for AffineType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for AffineType {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// `Π_{n≥1} (1 - q^n)^{-mult nδ}` up to `q^order`.
pub fn level1_series(ty: AffineType, order: usize) -> QSeries {
    let mut s = QSeries::one(order);
    for n in 1..=order {
        s.divide_by_cyclotomic(n, ty.mult_delta(n));
    }
    s
}

/// Multiplicity of `Λ_0 - d δ` in the level-one module `L(Λ_0)`.
pub fn level1_multiplicity(ty: AffineType, d: usize) -> BigInt {
    level1_series(ty, d).coeff(d).clone()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplicityRow {
    #[serde(rename = "type")]
    pub ty: AffineType,
    pub d: usize,
    pub multiplicity: String,
}

pub fn multiplicity_table(types: &[AffineType], max_degree: usize) -> Vec<MultiplicityRow> {
    types
        .iter()
        .flat_map(|&ty| {
            let s = level1_series(ty, max_degree);
            (0..=max_degree).map(move |d| MultiplicityRow { ty, d, multiplicity: s.coeff(d).to_string() })
        })
        .collect()
}

pub fn table_tsv(rows: &[MultiplicityRow]) -> String {
    let mut out = String::from("type\td\tmultiplicity\n");
    for r in rows {
        out.push_str(&format!("{}\t{}\t{}\n", r.ty, r.d, r.multiplicity));
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrenkelKacReport {
    pub rank: usize,
    pub max_degree: usize,
    pub pass: bool,
    /// `(d, Fock side, multiplicity side)` where they differ.
    pub mismatches: Vec<(usize, String, String)>,
}

/// Compares the degree-`d` size of `Sym(⊕ z^{-d} ⊗ h)` with the level-one
/// multiplicity for every simply-laced type of the given rank.
pub fn frenkel_kac_check(rank: usize, max_degree: usize) -> FrenkelKacReport {
    let fock = colored_partition_series(rank, max_degree);
    let types: Vec<AffineType> = [BaseType::A, BaseType::D, BaseType::E]
        .into_iter()
        .filter_map(|k| AffineType::new(k, rank).ok())
        .collect();
    let mut mismatches = Vec::new();
    for ty in &types {
        let lhs = level1_series(*ty, max_degree);
        for d in 0..=max_degree {
            if lhs.coeff(d) != fock.coeff(d) {
                mismatches.push((d, fock.coeff(d).to_string(), lhs.coeff(d).to_string()));
            }
        }
    }
    FrenkelKacReport { rank, max_degree, pass: mismatches.is_empty() && !types.is_empty(), mismatches }
}

/// The level `k` with `k + h^∨ = -ε₂/ε₁`.
pub fn level_map<C: Field>(eps1: &C, eps2: &C, ty: AffineType) -> Result<C> {
    let inv = eps1.inv().ok_or_else(|| Error::Pole { factor: "e1".to_owned() })?;
    Ok(-(eps2.clone() * inv) - C::from_i64(ty.dual_coxeter() as i64))
}

/// Whether every coefficient is nonnegative.
pub fn is_nonnegative(s: &QSeries) -> bool {
    s.coeffs().iter().all(|c| !c.is_negative())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{parse_rf, Var};
    use crate::scalar::{int, Ring};
    use crate::{QFunc, Rational};

    fn ints(s: &QSeries) -> Vec<u64> {
        s.to_u64().unwrap()
    }

    fn ty(s: &str) -> AffineType {
        s.parse().unwrap()
    }

    #[test]
    fn colored_partitions() {
        assert_eq!(ints(&colored_partition_series(2, 4)), [1, 2, 5, 10, 20]);
        assert_eq!(colored_partition_series(1, 5).coeff(5), &BigInt::from(7));
        assert_eq!(ints(&colored_partition_series(0, 3)), [1, 0, 0, 0]);
    }

    #[test]
    fn gieseker_and_ih() {
        assert_eq!(ints(&gieseker_series(2, 3)), [1, 2, 5, 10]);
        assert_eq!(ints(&ih_series(1, 3)), [1, 1, 2, 3]);
        assert_eq!(ints(&ih_series(0, 5)), [1, 0, 0, 0, 0, 0]);
        let prod = &ih_series(1, 10) * &colored_partition_series(1, 10);
        assert_eq!(prod, gieseker_series(2, 10));
    }

    #[test]
    fn series_arithmetic() {
        let p = colored_partition_series(1, 6);
        let inv = p.reciprocal().unwrap();
        // Euler's pentagonal series.
        assert_eq!(inv.to_strings(), ["1", "-1", "-1", "0", "0", "1", "0"]);
        assert_eq!(&p * &inv, QSeries::one(6));
        assert!(QSeries::new(3, vec![int_big(2)]).reciprocal().is_err());
        assert_eq!((&p + &p).coeff(2), &BigInt::from(4));
    }

    fn int_big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn table_rows() {
        assert_eq!(ty("B2").dual_label(), "A4^(2)");
        assert_eq!(ty("C3").dual_label(), "D4^(2)");
        assert_eq!(ty("F4").dual_label(), "E6^(2)");
        assert_eq!(ty("G2").dual_label(), "D4^(3)");
        assert_eq!(ty("E7").dual_label(), "E7^(1)");
        assert_eq!(ty("B4").long_simple_roots(), 3);
        assert_eq!(ty("C4").long_simple_roots(), 1);
        assert_eq!(ty("F4").long_simple_roots(), 2);
        assert!(AffineType::from_str("E9").is_err());
        assert!(AffineType::from_str("D3").is_err());
    }

    #[test]
    fn multiplicities() {
        assert_eq!(level1_multiplicity(ty("A2"), 3), BigInt::from(10));
        assert_eq!(ints(&level1_series(ty("G2"), 4)), [1, 1, 2, 4, 6]);
        assert_eq!(level1_multiplicity(ty("B2"), 2), BigInt::from(3));
    }

    #[test]
    fn frenkel_kac() {
        assert!(frenkel_kac_check(1, 10).pass);
        assert!(frenkel_kac_check(2, 10).pass);
        assert!(frenkel_kac_check(6, 0).pass);
        assert_eq!(frenkel_kac_check(4, 8).mismatches, vec![]);
    }

    #[test]
    fn level() {
        let k = level_map(&int(1), &int(-5), ty("A1")).unwrap();
        assert_eq!(k, int(3));
        let z = level_map(&int(3), &int(-6), ty("A1")).unwrap();
        assert_eq!(z, Rational::zero());
        assert!(matches!(level_map(&int(0), &int(1), ty("A1")), Err(Error::Pole { .. })));
        let (e1, e2) = (QFunc::var(Var::E1), QFunc::var(Var::E2));
        let k = level_map(&e1, &e2, ty("E8")).unwrap();
        assert_eq!(k + QFunc::from_i64(30), parse_rf("-e2/e1").unwrap());
    }

    #[test]
    fn tsv() {
        let rows = multiplicity_table(&[ty("G2")], 2);
        assert_eq!(table_tsv(&rows), "type\td\tmultiplicity\nG2\t0\t1\nG2\t1\t1\nG2\t2\t2\n");
        let j = serde_json::to_string(&rows[2]).unwrap();
        assert_eq!(j, r#"{"type":"G2","d":2,"multiplicity":"2"}"#);
    }
}
