//! Linear-algebra data of the quiver description of framed sheaves on the
//! plane: `B1, B2 ∈ End(V)`, `I ∈ Hom(W, V)`, `J ∈ Hom(V, W)`.

mod monad;
mod spectrum;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{parse_rational, rat};
use crate::Rational;

pub use monad::{monad_matrices, LinearForm, MonadMatrices, QuadraticForm};
pub use spectrum::{char_poly, spectrum_projection, support_cycle, Spectrum, SupportCycle};

type QMatrix = Matrix<Rational>;

#[derive(Clone, Debug, PartialEq)]
pub struct AdhmData {
    d: usize,
    r: usize,
    b1: QMatrix,
    b2: QMatrix,
    i: QMatrix,
    j: QMatrix,
}

fn shape(name: &str, m: &QMatrix, rows: usize, cols: usize) -> Result<()> {
    if m.rows() == rows && m.cols() == cols {
        Ok(())
    } else {
        Err(Error::ShapeMismatch(format!(
            "{name} is {}x{}, expected {rows}x{cols}",
            m.rows(),
            m.cols()
        )))
    }
}

impl AdhmData {
    pub fn new(b1: QMatrix, b2: QMatrix, i: QMatrix, j: QMatrix) -> Result<Self> {
        let d = b1.rows();
        let r = i.cols();
        shape("B1", &b1, d, d)?;
        shape("B2", &b2, d, d)?;
        shape("I", &i, d, r)?;
        shape("J", &j, r, d)?;
        Ok(AdhmData { d, r, b1, b2, i, j })
    }

    pub fn zero(d: usize, r: usize) -> Self {
        AdhmData {
            d,
            r,
            b1: Matrix::zeros(d, d),
            b2: Matrix::zeros(d, d),
            i: Matrix::zeros(d, r),
            j: Matrix::zeros(r, d),
        }
    }

    /// Entries drawn uniformly from small integers.
    pub fn random(d: usize, r: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut m = |rows, cols| Matrix::from_fn(rows, cols, |_, _| rat(rng.gen_range(-4..=4), 1));
        let (b1, b2, i, j) = (m(d, d), m(d, d), m(d, r), m(r, d));
        AdhmData { d, r, b1, b2, i, j }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn b1(&self) -> &QMatrix {
        &self.b1
    }

    pub fn b2(&self) -> &QMatrix {
        &self.b2
    }

    pub fn i(&self) -> &QMatrix {
        &self.i
    }

    pub fn j(&self) -> &QMatrix {
        &self.j
    }

    /// `g · x`: `B ↦ g B g⁻¹`, `I ↦ g I`, `J ↦ J g⁻¹`.
    pub fn conjugate(&self, g: &QMatrix) -> Result<Self> {
        let gi = g.inverse().ok_or(Error::SingularTransform)?;
        AdhmData::new(
            g.mul(&self.b1)?.mul(&gi)?,
            g.mul(&self.b2)?.mul(&gi)?,
            g.mul(&self.i)?,
            self.j.mul(&gi)?,
        )
    }

    pub fn to_json(&self) -> AdhmJson {
        let rows = |m: &QMatrix| m.to_rows().iter().map(|r| r.iter().map(ToString::to_string).collect()).collect();
        AdhmJson { d: self.d, r: self.r, b1: rows(&self.b1), b2: rows(&self.b2), i: rows(&self.i), j: rows(&self.j) }
    }

    pub fn from_json(j: &AdhmJson) -> Result<Self> {
        let parse = |name: &str, rows: &[Vec<String>], nr: usize, nc: usize| -> Result<QMatrix> {
            let mut m = Matrix::zeros(nr, nc);
            if rows.len() != nr || rows.iter().any(|r| r.len() != nc) {
                return Err(Error::ShapeMismatch(format!("{name} must be {nr}x{nc}")));
            }
            for (a, row) in rows.iter().enumerate() {
                for (b, s) in row.iter().enumerate() {
                    m[(a, b)] = parse_rational(s).ok_or_else(|| Error::Parse(format!("bad rational `{s}` in {name}")))?;
                }
            }
            Ok(m)
        };
        AdhmData::new(
            parse("B1", &j.b1, j.d, j.d)?,
            parse("B2", &j.b2, j.d, j.d)?,
            parse("I", &j.i, j.d, j.r)?,
            parse("J", &j.j, j.r, j.d)?,
        )
    }
}

/// Row-major rational strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdhmJson {
    pub d: usize,
    pub r: usize,
    #[serde(rename = "B1")]
    pub b1: Vec<Vec<String>>,
    #[serde(rename = "B2")]
    pub b2: Vec<Vec<String>>,
    #[serde(rename = "I")]
    pub i: Vec<Vec<String>>,
    #[serde(rename = "J")]
    pub j: Vec<Vec<String>>,
}

/// `[B1, B2] + I J`.
pub fn moment_map(x: &AdhmData) -> QMatrix {
    let ab = x.b1.mul(&x.b2).expect("square");
    let ba = x.b2.mul(&x.b1).expect("square");
    let ij = x.i.mul(&x.j).expect("d x r times r x d");
    ab.sub(&ba).and_then(|c| c.add(&ij)).expect("same shape")
}

/// Columns of `I` and their images under words in `B1, B2` span `V`.
pub fn is_stable(x: &AdhmData) -> bool {
    if x.d == 0 {
        return true;
    }
    let mut span: QMatrix = Matrix::zeros(0, x.d);
    let mut rank = 0;
    let mut frontier = Vec::new();
    let absorb = |v: Vec<Rational>, span: &mut QMatrix, rank: &mut usize| -> bool {
        let row = Matrix::from_rows(vec![v]).expect("one row");
        let next = span.vcat(&row).expect("same width");
        let nr = next.rank();
        if nr > *rank {
            *span = next;
            *rank = nr;
            true
        } else {
            false
        }
    };
    for c in 0..x.r {
        let v = x.i.column(c);
        if absorb(v.clone(), &mut span, &mut rank) {
            frontier.push(v);
        }
    }
    for _ in 0..x.d {
        if rank == x.d || frontier.is_empty() {
            break;
        }
        let mut next = Vec::new();
        for v in &frontier {
            for b in [&x.b1, &x.b2] {
                let w = b.mul_vec(v);
                if absorb(w.clone(), &mut span, &mut rank) {
                    next.push(w);
                }
            }
        }
        frontier = next;
    }
    rank == x.d
}

/// Validated partition: positive, non-increasing parts.
pub type Partition = Vec<u32>;

pub fn parse_partition_tuple(s: &str) -> Result<Vec<Partition>> {
    s.split(';')
        .map(|slot| {
            let slot = slot.trim();
            if slot.is_empty() {
                return Ok(Vec::new());
            }
            let parts: Vec<u32> = slot
                .split(',')
                .map(|p| p.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad part `{p}`"))))
                .collect::<Result<_>>()?;
            check_partition(&parts)?;
            Ok(parts)
        })
        .collect()
}

fn check_partition(parts: &[u32]) -> Result<()> {
    if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::InvalidInput(format!("{parts:?} is not a partition")));
    }
    Ok(())
}

pub fn format_partition_tuple(lambda: &[Partition]) -> String {
    lambda
        .iter()
        .map(|p| p.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
        .collect::<Vec<_>>()
        .join(";")
}

/// Boxes `(a, b)` with `0 ≤ b < len(λ)` and `0 ≤ a < λ_b`, row by row.
fn boxes(lambda: &[u32]) -> Vec<(u32, usize)> {
    lambda.iter().enumerate().flat_map(|(b, &len)| (0..len).map(move |a| (a, b))).collect()
}

/// The torus-fixed point of the monomial ideals `λ^(1), …, λ^(r)`.
///
/// `B1` moves a box one step along its row, `B2` one step along its column,
/// `I` sends framing vector `k` to the corner box of `λ^(k)` and `J = 0`.
pub fn fixed_point_data(lambda: &[Partition]) -> Result<AdhmData> {
    for p in lambda {
        check_partition(p)?;
    }
    let r = lambda.len();
    let mut index = Vec::new();
    for (k, p) in lambda.iter().enumerate() {
        for (a, b) in boxes(p) {
            index.push((k, a, b));
        }
    }
    let d = index.len();
    let pos = |k: usize, a: u32, b: usize| index.iter().position(|&e| e == (k, a, b));
    let mut x = AdhmData::zero(d, r);
    let one = rat(1, 1);
    for (col, &(k, a, b)) in index.iter().enumerate() {
        if let Some(row) = pos(k, a + 1, b) {
            x.b1[(row, col)] = one.clone();
        }
        if let Some(row) = pos(k, a, b + 1) {
            x.b2[(row, col)] = one.clone();
        }
    }
    for k in 0..r {
        if let Some(row) = pos(k, 0, 0) {
            x.i[(row, k)] = one.clone();
        }
    }
    Ok(x)
}

/// All `r`-tuples of partitions of total size `d`.
pub fn fixed_points(r: usize, d: usize) -> Vec<Vec<Partition>> {
    if r == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=d {
        for p in crate::virasoro::partitions(first) {
            for mut rest in fixed_points(r - 1, d - first) {
                rest.insert(0, p.clone());
                out.push(rest);
            }
        }
    }
    out
}

/// Where the framing maps go in a direct sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FramingMode {
    /// Same `W`: `I = [I_x; I_y]`, `J = [J_x, J_y]`.
    Stacked,
    /// Same `W`, only the first summand keeps its framing.
    FirstCarries,
    /// `W_x ⊕ W_y`: framing maps block diagonal.
    Independent,
}

pub fn direct_sum(x: &AdhmData, y: &AdhmData, mode: FramingMode) -> Result<AdhmData> {
    if mode != FramingMode::Independent && x.r != y.r {
        return Err(Error::ShapeMismatch(format!("framing ranks {} and {} differ", x.r, y.r)));
    }
    let b1 = x.b1.block_diag(&y.b1);
    let b2 = x.b2.block_diag(&y.b2);
    let (i, j) = match mode {
        FramingMode::Stacked => (x.i.vcat(&y.i)?, x.j.hcat(&y.j)?),
        FramingMode::FirstCarries => (
            x.i.vcat(&Matrix::zeros(y.d, y.r))?,
            x.j.hcat(&Matrix::zeros(y.r, y.d))?,
        ),
        FramingMode::Independent => (x.i.block_diag(&y.i), x.j.block_diag(&y.j)),
    };
    AdhmData::new(b1, b2, i, j)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn m(rows: &[&[i64]]) -> QMatrix {
        if rows.is_empty() {
            return Matrix::zeros(0, 0);
        }
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()).unwrap()
    }

    #[test]
    fn moment_examples() {
        assert!(moment_map(&AdhmData::zero(3, 2)).is_zero());
        let x = fixed_point_data(&[vec![2, 1]]).unwrap();
        assert!(moment_map(&x).is_zero());
        let y = AdhmData::new(m(&[&[0]]), m(&[&[0]]), m(&[&[1]]), m(&[&[1]])).unwrap();
        assert_eq!(moment_map(&y), m(&[&[1]]));
    }

    #[test]
    fn stability_examples() {
        let x = AdhmData::new(m(&[&[0]]), m(&[&[0]]), m(&[&[1]]), m(&[&[0]])).unwrap();
        assert!(is_stable(&x));
        assert!(!is_stable(&AdhmData::zero(2, 1)));
        assert!(is_stable(&fixed_point_data(&[vec![3, 1], vec![1]]).unwrap()));
    }

    #[test]
    fn fixed_point_shapes() {
        let x = fixed_point_data(&[vec![1]]).unwrap();
        assert_eq!((x.d(), x.r()), (1, 1));
        assert!(x.b1().is_zero() && x.b2().is_zero() && x.j().is_zero());
        assert_eq!(x.i(), &m(&[&[1]]));
        let e = fixed_point_data(&[vec![], vec![]]).unwrap();
        assert_eq!((e.d(), e.r()), (0, 2));
        let y = fixed_point_data(&[vec![2, 1]]).unwrap();
        assert_eq!(y.d(), 3);
        assert!(is_stable(&y));
        assert!(fixed_point_data(&[vec![1, 2]]).is_err());
    }

    #[test]
    fn partition_strings() {
        let t = parse_partition_tuple("2,1;;1").unwrap();
        assert_eq!(t, vec![vec![2, 1], vec![], vec![1]]);
        assert_eq!(format_partition_tuple(&t), "2,1;;1");
        assert!(parse_partition_tuple("1,2").is_err());
        assert!(parse_partition_tuple("a").is_err());
    }

    #[test]
    fn fixed_point_count() {
        assert_eq!(fixed_points(2, 3).len(), 10);
        assert_eq!(fixed_points(1, 4).len(), 5);
        assert_eq!(fixed_points(0, 0).len(), 1);
    }

    #[test]
    fn direct_sums() {
        let x = fixed_point_data(&[vec![2]]).unwrap();
        let empty = AdhmData::zero(0, 1);
        assert_eq!(direct_sum(&x, &empty, FramingMode::Stacked).unwrap(), x);
        let y = AdhmData::new(m(&[&[5]]), m(&[&[0]]), m(&[&[0]]), m(&[&[0]])).unwrap();
        assert!(!is_stable(&direct_sum(&x, &y, FramingMode::Stacked).unwrap()));
        assert!(direct_sum(&x, &AdhmData::zero(1, 2), FramingMode::Stacked).is_err());
        let z = direct_sum(&x, &AdhmData::zero(1, 2), FramingMode::Independent).unwrap();
        assert_eq!(z.r(), 3);
    }

    #[test]
    fn json_round_trip() {
        let x = AdhmData::random(2, 1, 9);
        let j = x.to_json();
        let s = serde_json::to_string(&j).unwrap();
        assert!(s.contains("\"B1\""));
        let back: AdhmJson = serde_json::from_str(&s).unwrap();
        assert_eq!(AdhmData::from_json(&back).unwrap(), x);
    }
}
