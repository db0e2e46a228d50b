use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{int, parse_rational};
use crate::Rational;

/// Normalization of the Heisenberg bracket.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Form {
    /// `[P^i_m, P^j_n] = -m δ_{m,-n} gram[i][j] / (e1 e2)`.
    Standard,
    /// `[~P^i_m, ~P^j_n] = -m δ_{m,-n} gram[i][j] · e1 e2`.
    Integral,
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Form::Standard => "standard",
            Form::Integral => "integral",
        })
    }
}

/// A system of bosons with a symmetric rational Gram form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BosonLattice {
    labels: Vec<String>,
    gram: Vec<Vec<Rational>>,
    form: Form,
}

impl BosonLattice {
    pub fn new(labels: Vec<String>, gram: Vec<Vec<Rational>>, form: Form) -> Result<Self> {
        let n = labels.len();
        if gram.len() != n || gram.iter().any(|row| row.len() != n) {
            return Err(Error::ShapeMismatch(format!("gram must be {n}x{n}")));
        }
        for i in 0..n {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::InvalidInput("gram form is not symmetric".into()));
                }
            }
        }
        let mut seen = std::collections::HashSet::new();
        if !labels.iter().all(|l| seen.insert(l.as_str())) {
            return Err(Error::InvalidInput("generator labels must be unique".into()));
        }
        Ok(BosonLattice { labels, gram, form })
    }

    /// Build from integer Gram entries with labels `p1, p2, ...`.
    pub fn from_int_gram(gram: &[&[i64]], form: Form) -> Result<Self> {
        let labels = (1..=gram.len()).map(|k| format!("p{k}")).collect();
        let g = gram.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect();
        Self::new(labels, g, form)
    }

    /// Single root boson with self-pairing 2.
    pub fn sl2(form: Form) -> Self {
        Self::from_int_gram(&[&[2]], form).expect("valid gram")
    }

    /// Cartan matrix of sl3 on the simple roots.
    pub fn sl3(form: Form) -> Self {
        Self::from_int_gram(&[&[2, -1], &[-1, 2]], form).expect("valid gram")
    }

    /// `r` orthonormal bosons (one per rank-one factor).
    pub fn gl(r: usize, form: Form) -> Self {
        let gram = (0..r)
            .map(|i| (0..r).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
            .collect();
        let labels = (1..=r).map(|k| format!("p{k}")).collect();
        Self::new(labels, gram, form).expect("valid gram")
    }

    /// Cartan matrix of a simply-laced type (`A` or `D` or `E`) of the given rank.
    pub fn cartan(kind: char, rank: usize, form: Form) -> Result<Self> {
        let edges: Vec<(usize, usize)> = match (kind, rank) {
            ('A', r) if r >= 1 => (1..r).map(|k| (k - 1, k)).collect(),
            ('D', r) if r >= 3 => {
                let mut e: Vec<_> = (1..r - 1).map(|k| (k - 1, k)).collect();
                e.push((r - 3, r - 1));
                e
            }
            ('E', r) if (6..=8).contains(&r) => {
                let mut e: Vec<_> = (1..r - 1).map(|k| (k - 1, k)).collect();
                e.push((2, r - 1));
                e
            }
            _ => return Err(Error::InvalidInput(format!("no simply-laced type {kind}{rank}"))),
        };
        let mut gram = vec![vec![0i64; rank]; rank];
        for (i, row) in gram.iter_mut().enumerate() {
            row[i] = 2;
        }
        for (a, b) in edges {
            gram[a][b] = -1;
            gram[b][a] = -1;
        }
        let rows: Vec<&[i64]> = gram.iter().map(Vec::as_slice).collect();
        Self::from_int_gram(&rows, form)
    }

    pub fn with_form(&self, form: Form) -> Self {
        BosonLattice { form, ..self.clone() }
    }

    pub fn with_labels(&self, labels: Vec<String>) -> Result<Self> {
        Self::new(labels, self.gram.clone(), self.form)
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn gram(&self) -> &[Vec<Rational>] {
        &self.gram
    }

    pub fn gram_entry(&self, i: usize, j: usize) -> &Rational {
        &self.gram[i][j]
    }

    pub fn form(&self) -> Form {
        self.form
    }

    pub fn to_json(&self) -> LatticeJson {
        LatticeJson {
            rank: self.rank(),
            labels: self.labels.clone(),
            gram: self
                .gram
                .iter()
                .map(|r| r.iter().map(ToString::to_string).collect())
                .collect(),
            form: self.form,
        }
    }

    pub fn from_json(j: &LatticeJson) -> Result<Self> {
        let gram = j
            .gram
            .iter()
            .map(|r| {
                r.iter()
                    .map(|s| parse_rational(s).ok_or_else(|| Error::Parse(format!("bad rational {s:?}"))))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        if j.rank != j.labels.len() {
            return Err(Error::ShapeMismatch("rank does not match labels".into()));
        }
        Self::new(j.labels.clone(), gram, j.form)
    }
}

/// Serialized lattice: `{rank, labels, gram, form}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LatticeJson {
    pub rank: usize,
    pub labels: Vec<String>,
    pub gram: Vec<Vec<String>>,
    pub form: Form,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_asymmetric_gram() {
        let r = BosonLattice::from_int_gram(&[&[2, 1], &[0, 2]], Form::Standard);
        assert!(matches!(r, Err(Error::InvalidInput(_))));
    }

    #[test]
    fn json_round_trip() {
        let l = BosonLattice::sl3(Form::Integral);
        let j = serde_json::to_string(&l.to_json()).unwrap();
        let back: LatticeJson = serde_json::from_str(&j).unwrap();
        assert_eq!(BosonLattice::from_json(&back).unwrap(), l);
    }

    #[test]
    fn cartan_types() {
        let d4 = BosonLattice::cartan('D', 4, Form::Standard).unwrap();
        let neighbours = (0..4).filter(|&j| *d4.gram_entry(1, j) == int(-1)).count();
        assert_eq!(neighbours, 3);
        assert_eq!(BosonLattice::cartan('A', 2, Form::Standard).unwrap(), BosonLattice::sl3(Form::Standard));
    }
}
