use std::collections::HashMap;

use num_traits::Zero;

use super::lattice::{BosonLattice, Form};
use super::vector::{FockVector, Monomial};
use crate::error::{Error, Result};
use crate::exact::eps_product;
use crate::matrix::Matrix;
use crate::scalar::Field;
use crate::QFunc;

/// Canonical monomial basis of one graded piece.
#[derive(Clone, Debug)]
pub struct Basis {
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl Basis {
    /// All `rank`-coloured partitions of `d`, in decreasing lexicographic order
    /// of their sorted parts.
    pub fn new(rank: usize, d: usize) -> Self {
        let mut monomials = Vec::new();
        let mut cur = Vec::new();
        if rank > 0 || d == 0 {
            enumerate(rank, d, (d as u32, rank.saturating_sub(1)), &mut cur, &mut monomials);
        }
        let index = monomials.iter().enumerate().map(|(k, m)| (m.clone(), k)).collect();
        Basis { monomials, index }
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }
}

fn enumerate(
    rank: usize,
    rem: usize,
    max: (u32, usize),
    cur: &mut Vec<(u32, usize)>,
    out: &mut Vec<Monomial>,
) {
    if rem == 0 {
        out.push(Monomial::from_parts(cur.clone()).expect("positive parts"));
        return;
    }
    for n in (1..=rem.min(max.0 as usize) as u32).rev() {
        let top = if n == max.0 { max.1 } else { rank - 1 };
        for i in (0..=top).rev() {
            cur.push((n, i));
            enumerate(rank, rem - n as usize, (n, i), cur, out);
            cur.pop();
        }
    }
}

/// Number of `rank`-coloured partitions of `d`.
pub fn graded_dimension(lattice: &BosonLattice, d: usize) -> usize {
    colored_partition_count(lattice.rank(), d)
}

fn colored_partition_count(colors: usize, d: usize) -> usize {
    // Multiply by (1 - q^n)^{-1} once per colour and mode.
    let mut c = vec![0usize; d + 1];
    c[0] = 1;
    for n in 1..=d {
        for _ in 0..colors {
            for k in n..=d {
                c[k] += c[k - n];
            }
        }
    }
    c[d]
}

/// The Fock representation of a boson lattice over a coefficient field `C`.
///
/// `eps_product` is the value of `e1 e2` in `C`; it fixes the bracket scale
/// (`1/(e1 e2)` for the standard form, `e1 e2` for the integral form).
#[derive(Clone, Debug)]
pub struct FockSpace<C: Field> {
    lattice: BosonLattice,
    eps_product: C,
    pair: Vec<Vec<C>>,
}

impl<C: Field> FockSpace<C> {
    pub fn new(lattice: BosonLattice, eps_product: C) -> Result<Self> {
        let scale = match lattice.form() {
            Form::Standard => eps_product.inv().ok_or(Error::DivisionByZero)?,
            Form::Integral => eps_product.clone(),
        };
        let r = lattice.rank();
        let pair = (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| C::from_rational(lattice.gram_entry(i, j)) * scale.clone())
                    .collect()
            })
            .collect();
        Ok(FockSpace { lattice, eps_product, pair })
    }

    pub fn lattice(&self) -> &BosonLattice {
        &self.lattice
    }

    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }

    pub fn eps_product(&self) -> &C {
        &self.eps_product
    }

    /// Bracket constant: `[P^i_m, P^j_{-m}] = -m · pair(i, j)`.
    pub fn pair(&self, i: usize, j: usize) -> &C {
        &self.pair[i][j]
    }

    pub fn basis(&self, d: usize) -> Basis {
        Basis::new(self.rank(), d)
    }

    fn check_generator(&self, i: usize) -> Result<()> {
        if i < self.rank() {
            Ok(())
        } else {
            Err(Error::InvalidInput(format!("generator {i} out of range for rank {}", self.rank())))
        }
    }

    /// `P^i_{-n} v` for `n ≥ 1`.
    pub fn apply_creation(&self, i: usize, n: i64, v: &FockVector<C>) -> Result<FockVector<C>> {
        self.check_generator(i)?;
        if n <= 0 {
            return Err(Error::InvalidInput(format!("creation mode must be positive, got {n}")));
        }
        Ok(self.create(i, n as u32, v))
    }

    /// `P^i_n v` for `n ≥ 1`.
    pub fn apply_annihilation(&self, i: usize, n: i64, v: &FockVector<C>) -> Result<FockVector<C>> {
        self.check_generator(i)?;
        if n <= 0 {
            return Err(Error::InvalidInput(format!("annihilation mode must be positive, got {n}")));
        }
        Ok(self.annihilate(i, n as u32, v))
    }

    pub(crate) fn create(&self, i: usize, n: u32, v: &FockVector<C>) -> FockVector<C> {
        FockVector::from_terms(v.terms().map(|(m, c)| (m.with(n, i), c.clone())))
    }

    pub(crate) fn annihilate(&self, i: usize, n: u32, v: &FockVector<C>) -> FockVector<C> {
        let mut out = FockVector::zero();
        let minus_n = -C::from_i64(n as i64);
        for (m, c) in v.terms() {
            for ((k, j), mult) in m.grouped() {
                if k != n || self.pair[i][j].is_zero() {
                    continue;
                }
                let coeff = c.clone()
                    * C::from_i64(mult as i64)
                    * minus_n.clone()
                    * self.pair[i][j].clone();
                out.add_term(m.without(n, j).expect("part present"), coeff);
            }
        }
        out
    }

    /// `P^i_n v` for any nonzero `n` (negative modes create).
    pub fn mode(&self, i: usize, n: i64, v: &FockVector<C>) -> FockVector<C> {
        match n {
            n if n < 0 => self.create(i, (-n) as u32, v),
            n if n > 0 => self.annihilate(i, n as u32, v),
            _ => panic!("zero mode has no Fock action"),
        }
    }

    /// Action of `Σ_j coeffs[j] P^j_n`.
    pub fn combined_mode(&self, coeffs: &[C], n: i64, v: &FockVector<C>) -> FockVector<C> {
        let mut out = FockVector::zero();
        for (j, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                out = out + self.mode(j, n, v).scale(c);
            }
        }
        out
    }

    /// Symmetric bilinear form with `(P^i_n)† = P^i_{-n}` and `⟨vac, vac⟩ = 1`.
    pub fn contravariant_form(&self, v: &FockVector<C>, w: &FockVector<C>) -> Result<C> {
        for x in [v, w] {
            if x.terms().any(|(m, _)| m.max_colour().is_some_and(|c| c >= self.rank())) {
                return Err(Error::LatticeMismatch);
            }
        }
        let mut acc = C::zero();
        let vac = Monomial::vacuum();
        for (m, c) in v.terms() {
            let mut x = w.component(m.degree());
            for &(n, i) in m.parts() {
                if x.is_zero() {
                    break;
                }
                x = self.annihilate(i, n, &x);
            }
            let val = x.coeff(&vac);
            if !val.is_zero() {
                acc = acc + c.clone() * val;
            }
        }
        Ok(acc)
    }

    /// Gram matrix of the contravariant form on the degree-`d` basis.
    pub fn form_matrix(&self, d: usize) -> Matrix<C> {
        let b = self.basis(d);
        let vecs: Vec<_> = b.monomials().iter().map(|m| FockVector::monomial(m.clone(), C::one())).collect();
        Matrix::from_fn(b.len(), b.len(), |i, j| {
            self.contravariant_form(&vecs[i], &vecs[j]).expect("same lattice")
        })
    }

    /// Coordinates of the degree-`d` part of `v` in the canonical basis.
    pub fn coordinates(&self, basis: &Basis, v: &FockVector<C>) -> Vec<C> {
        let mut out = vec![C::zero(); basis.len()];
        for (m, c) in v.terms() {
            if let Some(k) = basis.position(m) {
                out[k] = c.clone();
            }
        }
        out
    }

    pub fn from_coordinates(&self, basis: &Basis, coords: &[C]) -> FockVector<C> {
        FockVector::from_terms(
            basis.monomials().iter().cloned().zip(coords.iter().cloned()),
        )
    }

    pub fn basis_vector(m: &Monomial) -> FockVector<C> {
        FockVector::monomial(m.clone(), C::one())
    }
}

impl FockSpace<QFunc> {
    /// Coefficients in the rational functions of the equivariant variables.
    pub fn symbolic(lattice: BosonLattice) -> Self {
        Self::new(lattice, eps_product()).expect("e1 e2 is invertible")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse_rf;

    fn rf(s: &str) -> QFunc {
        parse_rf(s).unwrap()
    }

    #[test]
    fn basis_order_and_size() {
        let b = Basis::new(1, 2);
        let shown: Vec<String> = b.monomials().iter().map(ToString::to_string).collect();
        assert_eq!(shown, ["P1_-2", "P1_-1^2"]);
        assert_eq!(Basis::new(2, 3).len(), 10);
        assert_eq!(Basis::new(1, 4).len(), 5);
        assert_eq!(Basis::new(3, 0).len(), 1);
        assert_eq!(Basis::new(0, 2).len(), 0);
    }

    #[test]
    fn sl2_annihilation_of_creation() {
        let f = FockSpace::symbolic(BosonLattice::sl2(Form::Standard));
        let v = f.apply_creation(0, 1, &FockVector::vacuum()).unwrap();
        let w = f.apply_annihilation(0, 1, &v).unwrap();
        assert_eq!(w, FockVector::vacuum().scale(&rf("-2/(e1*e2)")));
        assert!(f.apply_annihilation(0, 2, &v).unwrap().is_zero());
        assert!(f.apply_creation(0, 0, &v).is_err());
    }

    #[test]
    fn gl2_orthogonal_combination() {
        let f = FockSpace::symbolic(BosonLattice::gl(2, Form::Standard));
        let vac = FockVector::vacuum();
        let minus = f.combined_mode(&[rf("1"), rf("-1")], -1, &vac);
        let r = f.combined_mode(&[rf("1"), rf("1")], 1, &minus);
        assert!(r.is_zero());
    }

    #[test]
    fn contravariant_examples() {
        let vac = FockVector::vacuum();
        let f = FockSpace::symbolic(BosonLattice::sl2(Form::Standard));
        let p1 = f.mode(0, -1, &vac);
        let p2 = f.mode(0, -2, &vac);
        assert_eq!(f.contravariant_form(&p1, &p1).unwrap(), rf("-2/(e1*e2)"));
        assert!(f.contravariant_form(&p1, &p2).unwrap().is_zero());
        let g = FockSpace::symbolic(BosonLattice::sl2(Form::Integral));
        let q1 = g.mode(0, -1, &vac);
        assert_eq!(g.contravariant_form(&q1, &q1).unwrap(), rf("-2*e1*e2"));
        let wide = FockSpace::symbolic(BosonLattice::gl(2, Form::Standard)).mode(1, -1, &vac);
        assert_eq!(f.contravariant_form(&wide, &p1), Err(Error::LatticeMismatch));
    }

    #[test]
    fn graded_dimension_examples() {
        assert_eq!(graded_dimension(&BosonLattice::sl2(Form::Standard), 4), 5);
        assert_eq!(graded_dimension(&BosonLattice::gl(2, Form::Standard), 3), 10);
        assert_eq!(graded_dimension(&BosonLattice::gl(3, Form::Standard), 0), 1);
    }
}
