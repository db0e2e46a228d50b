use num_traits::Zero;

use super::lattice::BosonLattice;
use super::space::Basis;
use super::vector::{FockVector, Monomial};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Field;
use crate::Rational;

/// How the new generators relate to the old Fock space.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TransportMode {
    /// `T` square and invertible: the two Fock spaces coincide.
    Isomorphism,
    /// `T` of full row rank: the new Fock space embeds.
    Embedding,
}

/// Rewrites vectors written in new generators `Q^k = Σ_j T[k][j] P^j` in
/// terms of the old generators `P^j`.
#[derive(Clone, Debug, PartialEq)]
pub struct Transport {
    t: Matrix<Rational>,
    new_lattice: BosonLattice,
    old_lattice: BosonLattice,
}

/// New lattice with gram `T · gram · Tᵀ`, and the transport map back to `lattice`.
pub fn change_of_generators(
    t: &Matrix<Rational>,
    lattice: &BosonLattice,
    mode: TransportMode,
) -> Result<(BosonLattice, Transport)> {
    if t.cols() != lattice.rank() {
        return Err(Error::ShapeMismatch(format!(
            "transform has {} columns, lattice rank is {}",
            t.cols(),
            lattice.rank()
        )));
    }
    match mode {
        TransportMode::Isomorphism => {
            if !t.is_square() || t.det()?.is_zero() {
                return Err(Error::SingularTransform);
            }
        }
        TransportMode::Embedding => {
            if t.rank() < t.rows() {
                return Err(Error::SingularTransform);
            }
        }
    }
    let g = Matrix::from_rows(lattice.gram().to_vec())?;
    let new_gram = t.mul(&g)?.mul(&t.transpose())?;
    let labels = (1..=t.rows()).map(|k| format!("q{k}")).collect();
    let new_lattice = BosonLattice::new(labels, new_gram.to_rows(), lattice.form())?;
    Ok((
        new_lattice.clone(),
        Transport { t: t.clone(), new_lattice, old_lattice: lattice.clone() },
    ))
}

impl Transport {
    pub fn matrix(&self) -> &Matrix<Rational> {
        &self.t
    }

    pub fn new_lattice(&self) -> &BosonLattice {
        &self.new_lattice
    }

    pub fn old_lattice(&self) -> &BosonLattice {
        &self.old_lattice
    }

    /// Expand a vector in the new generators multilinearly in the old ones.
    pub fn apply<C: Field>(&self, v: &FockVector<C>) -> FockVector<C> {
        let mut out = FockVector::zero();
        for (m, c) in v.terms() {
            out = out + self.expand_monomial::<C>(m).scale(c);
        }
        out
    }

    fn expand_monomial<C: Field>(&self, m: &Monomial) -> FockVector<C> {
        let mut acc: FockVector<C> = FockVector::vacuum();
        for &(n, k) in m.parts() {
            let mut next = FockVector::zero();
            for (mm, c) in acc.terms() {
                for j in 0..self.t.cols() {
                    let tj = &self.t[(k, j)];
                    if !tj.is_zero() {
                        next.add_term(mm.with(n, j), c.clone() * C::from_rational(tj));
                    }
                }
            }
            acc = next;
        }
        acc
    }

    /// Inverse transport, for isomorphisms.
    pub fn inverse(&self) -> Option<Transport> {
        let inv = self.t.inverse()?;
        Some(Transport {
            t: inv,
            new_lattice: self.old_lattice.clone(),
            old_lattice: self.new_lattice.clone(),
        })
    }

    /// Matrix of the transport on degree `d`: columns are new-basis monomials
    /// written in the old basis.
    pub fn degree_matrix<C: Field>(&self, d: usize) -> Matrix<C> {
        let src = Basis::new(self.new_lattice.rank(), d);
        let tgt = Basis::new(self.old_lattice.rank(), d);
        let mut m = Matrix::zeros(tgt.len(), src.len());
        for (j, mono) in src.monomials().iter().enumerate() {
            for (mm, c) in self.expand_monomial::<C>(mono).terms() {
                let i = tgt.position(mm).expect("same degree");
                m[(i, j)] = c.clone();
            }
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::lattice::Form;
    use crate::fock::space::FockSpace;
    use crate::scalar::int;
    use crate::QFunc;

    fn mat(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()).unwrap()
    }

    #[test]
    fn identity_transport() {
        let l = BosonLattice::gl(2, Form::Standard);
        let (nl, tr) = change_of_generators(&mat(&[&[1, 0], &[0, 1]]), &l, TransportMode::Isomorphism).unwrap();
        assert_eq!(nl.gram(), l.gram());
        let f = FockSpace::symbolic(l);
        let v = f.mode(1, -2, &f.mode(0, -1, &FockVector::vacuum()));
        assert_eq!(tr.apply(&v), v);
    }

    #[test]
    fn gl2_diagonal_and_antidiagonal() {
        let l = BosonLattice::gl(2, Form::Standard);
        let (nl, _) = change_of_generators(&mat(&[&[1, 1], &[1, -1]]), &l, TransportMode::Isomorphism).unwrap();
        assert_eq!(nl.gram(), &[vec![int(2), int(0)], vec![int(0), int(2)]]);
    }

    #[test]
    fn sl3_orthogonal_pair() {
        let l = BosonLattice::sl3(Form::Standard);
        let (nl, _) = change_of_generators(&mat(&[&[1, 0], &[1, 2]]), &l, TransportMode::Isomorphism).unwrap();
        assert_eq!(nl.gram(), &[vec![int(2), int(0)], vec![int(0), int(6)]]);
    }

    #[test]
    fn singular_transform_rejected() {
        let l = BosonLattice::gl(2, Form::Standard);
        let r = change_of_generators(&mat(&[&[1, 1], &[2, 2]]), &l, TransportMode::Isomorphism);
        assert_eq!(r.unwrap_err(), Error::SingularTransform);
        assert!(change_of_generators(&mat(&[&[1, 1]]), &l, TransportMode::Embedding).is_ok());
    }

    #[test]
    fn inverse_round_trip() {
        let l = BosonLattice::gl(2, Form::Standard);
        let (_, tr) = change_of_generators(&mat(&[&[1, 1], &[1, -1]]), &l, TransportMode::Isomorphism).unwrap();
        let f = FockSpace::symbolic(l);
        let v: FockVector<QFunc> = f.mode(1, -1, &f.mode(0, -1, &FockVector::vacuum()));
        assert_eq!(tr.apply(&tr.inverse().unwrap().apply(&v)), v);
        assert_eq!(tr.apply::<QFunc>(&FockVector::vacuum()), FockVector::vacuum());
    }
}
