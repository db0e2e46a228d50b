use std::collections::BTreeMap;

use num_traits::Zero;

use super::lattice::BosonLattice;
use super::space::FockSpace;
use super::vector::FockVector;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Field;

/// A graded operator stored as one matrix per source degree.
///
/// The block at source degree `d` maps the degree-`d` basis to the degree
/// `d + shift` basis.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorMatrix<C: Field> {
    source: BosonLattice,
    target: BosonLattice,
    shift: i64,
    blocks: BTreeMap<usize, Matrix<C>>,
}

impl<C: Field> OperatorMatrix<C> {
    /// Tabulate `op` on every source degree `d ≤ max_degree` whose target
    /// degree `d + shift` also lies in `0..=max_degree`.
    pub fn from_action(
        space: &FockSpace<C>,
        max_degree: usize,
        shift: i64,
        mut op: impl FnMut(&FockVector<C>) -> Result<FockVector<C>>,
    ) -> Result<Self> {
        let mut blocks = BTreeMap::new();
        for d in 0..=max_degree {
            let t = d as i64 + shift;
            if t < 0 || t > max_degree as i64 {
                continue;
            }
            let src = space.basis(d);
            let tgt = space.basis(t as usize);
            let mut m = Matrix::zeros(tgt.len(), src.len());
            for (j, mono) in src.monomials().iter().enumerate() {
                let image = op(&FockSpace::basis_vector(mono))?;
                for (mm, c) in image.terms() {
                    let i = tgt.position(mm).ok_or_else(|| {
                        Error::ShapeMismatch(format!("image term {mm} is not in degree {t}"))
                    })?;
                    m[(i, j)] = c.clone();
                }
            }
            blocks.insert(d, m);
        }
        Ok(OperatorMatrix {
            source: space.lattice().clone(),
            target: space.lattice().clone(),
            shift,
            blocks,
        })
    }

    pub fn from_blocks(
        source: BosonLattice,
        target: BosonLattice,
        shift: i64,
        blocks: BTreeMap<usize, Matrix<C>>,
    ) -> Self {
        OperatorMatrix { source, target, shift, blocks }
    }

    pub fn identity(space: &FockSpace<C>, max_degree: usize) -> Self {
        let blocks = (0..=max_degree)
            .map(|d| (d, Matrix::identity(space.basis(d).len())))
            .collect();
        OperatorMatrix {
            source: space.lattice().clone(),
            target: space.lattice().clone(),
            shift: 0,
            blocks,
        }
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn source(&self) -> &BosonLattice {
        &self.source
    }

    pub fn target(&self) -> &BosonLattice {
        &self.target
    }

    pub fn blocks(&self) -> &BTreeMap<usize, Matrix<C>> {
        &self.blocks
    }

    pub fn block(&self, d: usize) -> Option<&Matrix<C>> {
        self.blocks.get(&d)
    }

    pub fn degrees(&self) -> impl Iterator<Item = usize> + '_ {
        self.blocks.keys().copied()
    }

    /// `self ∘ other`, on the source degrees where both factors are stored.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if other.target != self.source {
            return Err(Error::LatticeMismatch);
        }
        let mut blocks = BTreeMap::new();
        for (&d, b) in &other.blocks {
            let mid = d as i64 + other.shift;
            if mid < 0 {
                continue;
            }
            if let Some(a) = self.blocks.get(&(mid as usize)) {
                blocks.insert(d, a.mul(b)?);
            }
        }
        Ok(OperatorMatrix {
            source: other.source.clone(),
            target: self.target.clone(),
            shift: self.shift + other.shift,
            blocks,
        })
    }

    fn combine(&self, other: &Self, f: impl Fn(&Matrix<C>, &Matrix<C>) -> Result<Matrix<C>>) -> Result<Self> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::LatticeMismatch);
        }
        if self.shift != other.shift {
            return Err(Error::ShapeMismatch(format!(
                "degree shifts differ: {} vs {}",
                self.shift, other.shift
            )));
        }
        let mut blocks = BTreeMap::new();
        for (&d, a) in &self.blocks {
            if let Some(b) = other.blocks.get(&d) {
                blocks.insert(d, f(a, b)?);
            }
        }
        Ok(OperatorMatrix { blocks, ..self.clone() })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.combine(other, |a, b| a.add(b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.combine(other, |a, b| a.sub(b))
    }

    /// `self ∘ other − other ∘ self`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.compose(other)?.sub(&other.compose(self)?)
    }

    pub fn scale(&self, c: &C) -> Self {
        OperatorMatrix {
            blocks: self.blocks.iter().map(|(&d, m)| (d, m.scale(c))).collect(),
            ..self.clone()
        }
    }

    pub fn map<D: Field>(&self, f: impl Fn(&C) -> D) -> OperatorMatrix<D> {
        OperatorMatrix {
            source: self.source.clone(),
            target: self.target.clone(),
            shift: self.shift,
            blocks: self.blocks.iter().map(|(&d, m)| (d, m.map(&f))).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.values().all(Matrix::is_zero)
    }

    /// First nonzero entry, as `(source degree, row, column, value)`.
    pub fn first_nonzero(&self) -> Option<(usize, usize, usize, C)> {
        for (&d, m) in &self.blocks {
            for i in 0..m.rows() {
                for j in 0..m.cols() {
                    if !m[(i, j)].is_zero() {
                        return Some((d, i, j, m[(i, j)].clone()));
                    }
                }
            }
        }
        None
    }

    /// `"zero"` or a description of the first nonzero entry.
    pub fn residual_summary(&self) -> String {
        match self.first_nonzero() {
            None => "zero".into(),
            Some((d, i, j, c)) => format!("degree {d} entry ({i},{j}): {c}"),
        }
    }

    /// Apply to a vector using the stored blocks.
    pub fn apply(&self, space: &FockSpace<C>, v: &FockVector<C>) -> Result<FockVector<C>> {
        let mut out = FockVector::zero();
        for d in 0..=v.max_degree() {
            let part = v.component(d);
            if part.is_zero() {
                continue;
            }
            let block = self
                .blocks
                .get(&d)
                .ok_or_else(|| Error::InvalidInput(format!("degree {d} is not stored")))?;
            let src = space.basis(d);
            let tgt = space.basis((d as i64 + self.shift) as usize);
            let x = space.coordinates(&src, &part);
            out = out + space.from_coordinates(&tgt, &block.mul_vec(&x));
        }
        Ok(out)
    }

    /// `{degree: rows of canonical strings}`.
    pub fn to_json(&self) -> serde_json::Value {
        let mut map = serde_json::Map::new();
        for (d, m) in &self.blocks {
            let rows: Vec<Vec<String>> = m
                .to_rows()
                .into_iter()
                .map(|r| r.iter().map(ToString::to_string).collect())
                .collect();
            map.insert(d.to_string(), serde_json::json!(rows));
        }
        serde_json::json!({ "shift": self.shift, "blocks": map })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::lattice::Form;
    use crate::QFunc;

    #[test]
    fn heisenberg_commutator_as_matrices() {
        let f = FockSpace::symbolic(BosonLattice::sl2(Form::Standard));
        let up = OperatorMatrix::from_action(&f, 4, 1, |v| Ok(f.mode(0, -1, v))).unwrap();
        let down = OperatorMatrix::from_action(&f, 4, -1, |v| Ok(f.mode(0, 1, v))).unwrap();
        let c = down.commutator(&up).unwrap();
        let expected = OperatorMatrix::identity(&f, 4).scale(&(-f.pair(0, 0).clone()));
        let restricted = OperatorMatrix { blocks: expected.blocks.into_iter().filter(|(d, _)| c.blocks.contains_key(d)).collect(), ..c.clone() };
        assert_eq!(c, restricted);
        assert!(up.compose(&up).unwrap().shift() == 2);
    }

    #[test]
    fn apply_matches_action() {
        let f: FockSpace<QFunc> = FockSpace::symbolic(BosonLattice::gl(2, Form::Integral));
        let op = OperatorMatrix::from_action(&f, 3, -1, |v| Ok(f.mode(1, 1, v))).unwrap();
        let v = f.mode(1, -1, &f.mode(0, -2, &FockVector::vacuum()));
        assert_eq!(op.apply(&f, &v).unwrap(), f.mode(1, 1, &v));
    }
}
