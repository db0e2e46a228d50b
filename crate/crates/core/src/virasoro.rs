//! Feigin–Fuchs Virasoro modes, their integral form, Lehn's operator and
//! the PBW change of basis.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::Var;
use crate::fock::{Basis, BosonLattice, FockSpace, FockVector, Form, Monomial, OperatorMatrix};
use crate::matrix::Matrix;
use crate::scalar::{int, Field};
use crate::QFunc;

/// Partitions of `d` in decreasing lexicographic order (matching the rank-one
/// monomial basis).
pub fn partitions(d: usize) -> Vec<Vec<u32>> {
    Basis::new(1, d)
        .monomials()
        .iter()
        .map(|m| m.parts().iter().map(|&(n, _)| n).collect())
        .collect()
}

/// One Feigin–Fuchs boson: Virasoro modes built from generator `generator`
/// of a lattice whose self-pairing there is 2.
///
/// `weight` is `⟨a, α⟩` for the root the boson sits on (`a1 - a2` for sl2).
#[derive(Clone, Debug)]
pub struct FeiginFuchs<C: Field> {
    space: FockSpace<C>,
    generator: usize,
    weight: C,
    eps1: C,
    eps2: C,
}

impl<C: Field> FeiginFuchs<C> {
    pub fn new(lattice: BosonLattice, generator: usize, weight: C, eps1: C, eps2: C) -> Result<Self> {
        if generator >= lattice.rank() {
            return Err(Error::InvalidInput(format!("generator {generator} out of range")));
        }
        if *lattice.gram_entry(generator, generator) != int(2) {
            return Err(Error::InvalidInput("Feigin-Fuchs boson needs self-pairing 2".into()));
        }
        let space = FockSpace::new(lattice, eps1.clone() * eps2.clone())?;
        Ok(FeiginFuchs { space, generator, weight, eps1, eps2 })
    }

    pub fn space(&self) -> &FockSpace<C> {
        &self.space
    }

    pub fn generator(&self) -> usize {
        self.generator
    }

    pub fn form(&self) -> Form {
        self.space.lattice().form()
    }

    pub fn weight(&self) -> &C {
        &self.weight
    }

    pub fn eps(&self) -> (&C, &C) {
        (&self.eps1, &self.eps2)
    }

    pub fn eps_product(&self) -> C {
        self.eps1.clone() * self.eps2.clone()
    }

    pub fn eps_sum(&self) -> C {
        self.eps1.clone() + self.eps2.clone()
    }

    /// Same boson with another highest-weight parameter.
    pub fn with_weight(&self, weight: C) -> Self {
        FeiginFuchs { weight, ..self.clone() }
    }

    /// Same boson in the other normalization.
    pub fn with_form(&self, form: Form) -> Self {
        let lattice = self.space.lattice().with_form(form);
        Self::new(lattice, self.generator, self.weight.clone(), self.eps1.clone(), self.eps2.clone())
            .expect("same lattice data")
    }

    /// Central value of the zero mode: `(u - s)/e` (standard) or `u - s` (integral).
    pub fn zero_mode(&self) -> C {
        let x = self.weight.clone() - self.eps_sum();
        match self.form() {
            Form::Standard => x * self.eps_product().inv().expect("e1 e2 is nonzero"),
            Form::Integral => x,
        }
    }

    /// `1 + 6 s^2 / e`.
    pub fn central_charge(&self) -> C {
        let s = self.eps_sum();
        C::one() + C::from_i64(6) * s.clone() * s * self.eps_product().inv().expect("e1 e2 is nonzero")
    }

    fn quadratic_coeff(&self) -> C {
        let quarter = C::from_rational(&crate::scalar::rat(-1, 4));
        match self.form() {
            Form::Standard => quarter * self.eps_product(),
            Form::Integral => quarter,
        }
    }

    /// `:Π P_{m_k}:` applied to `v`, zero modes acting by their central value.
    fn normal_product(&self, modes: &[i64], v: &FockVector<C>) -> FockVector<C> {
        let mut x = v.clone();
        let mut scalar = C::one();
        for &m in modes.iter().filter(|&&m| m > 0) {
            x = self.space.mode(self.generator, m, &x);
            if x.is_zero() {
                return x;
            }
        }
        for &m in modes {
            if m < 0 {
                x = self.space.mode(self.generator, m, &x);
            } else if m == 0 {
                scalar = scalar * self.zero_mode();
            }
        }
        if scalar.is_one() {
            x
        } else {
            x.scale(&scalar)
        }
    }

    /// `L_n v`.
    pub fn apply(&self, n: i64, v: &FockVector<C>) -> FockVector<C> {
        let mut out = FockVector::zero();
        let deg = v.max_degree() as i64;
        let bound = deg + n.abs();
        let mut quad = FockVector::zero();
        for m in -bound..=bound {
            let (a, b) = (m, n - m);
            if a > deg || b > deg {
                continue;
            }
            quad = quad + self.normal_product(&[a, b], v);
        }
        out = out + quad.scale(&self.quadratic_coeff());
        let lin = if n == 0 {
            v.scale(&self.zero_mode())
        } else {
            self.space.mode(self.generator, n, v)
        };
        let c = C::from_rational(&crate::scalar::rat(n + 1, 2)) * self.eps_sum();
        out - lin.scale(&c)
    }

    /// `L_n` tabulated up to degree `max_degree`.
    pub fn mode_matrix(&self, n: i64, max_degree: usize) -> OperatorMatrix<C> {
        OperatorMatrix::from_action(&self.space, max_degree, -n, |v| Ok(self.apply(n, v)))
            .expect("image stays in the Fock space")
    }

    /// `[L_m, L_n] - (m - n) L_{m+n} - central term`, on basis vectors of
    /// degree `≤ max_degree`. Integral form: the bracket is scaled by `e`.
    pub fn bracket_residual(&self, m: i64, n: i64, max_degree: usize) -> OperatorMatrix<C> {
        let e = self.eps_product();
        let (k, central) = match self.form() {
            Form::Standard => (C::one(), self.central_charge()),
            Form::Integral => (e.clone(), e.clone() * e.clone() * self.central_charge()),
        };
        let central_term = if m + n == 0 {
            central * C::from_rational(&crate::scalar::rat(m * m * m - m, 12))
        } else {
            C::zero()
        };
        let lin = k * C::from_i64(m - n);
        OperatorMatrix::from_action(&self.space, max_degree, -(m + n), |v| {
            let lhs = self.apply(m, &self.apply(n, v)) - self.apply(n, &self.apply(m, v));
            Ok(lhs - self.apply(m + n, v).scale(&lin) - v.scale(&central_term))
        })
        .expect("image stays in the Fock space")
    }

    /// `L_{-λ_1} ⋯ L_{-λ_k} |vac⟩`, smallest part applied first.
    pub fn pbw_vector(&self, lambda: &[u32]) -> FockVector<C> {
        let mut parts = lambda.to_vec();
        parts.sort_unstable();
        let mut v = FockVector::vacuum();
        for p in parts {
            v = self.apply(-(p as i64), &v);
        }
        v
    }

    /// Columns `L_{-λ}|vac⟩` for `λ ⊢ d`, in the degree-`d` monomial basis.
    pub fn pbw_matrix(&self, d: usize) -> Matrix<C> {
        let basis = self.space.basis(d);
        let parts = partitions(d);
        let mut m = Matrix::zeros(basis.len(), parts.len());
        for (j, lam) in parts.iter().enumerate() {
            let col = self.space.coordinates(&basis, &self.pbw_vector(lam));
            for (i, c) in col.into_iter().enumerate() {
                m[(i, j)] = c;
            }
        }
        m
    }

    /// Inverse of the degree-`d` PBW matrix, or the vanishing Kac factor.
    pub fn pbw_inverse(&self, d: usize) -> Result<Matrix<C>> {
        self.pbw_matrix(d).inverse().ok_or_else(|| self.singular_pbw(d))
    }

    /// Identify which factor `u - r e1 - s e2` (`rs ≤ d`) vanishes.
    pub(crate) fn singular_pbw(&self, d: usize) -> Error {
        for r in 1..=d {
            for s in 1..=d / r {
                let f = self.weight.clone()
                    - C::from_i64(r as i64) * self.eps1.clone()
                    - C::from_i64(s as i64) * self.eps2.clone();
                if f.is_zero() {
                    let term = |k: usize, name: &str| if k == 1 { name.to_owned() } else { format!("{k}*{name}") };
                    return Error::SingularPbw {
                        degree: d,
                        factor: format!("u - {} - {} at u = {}", term(r, "e1"), term(s, "e2"), self.weight),
                    };
                }
            }
        }
        Error::SingularPbw { degree: d, factor: format!("determinant at u = {}", self.weight) }
    }
}

impl FeiginFuchs<QFunc> {
    /// The antidiagonal sl2 boson with `u = a1 - a2`.
    pub fn sl2(form: Form) -> Self {
        let u = QFunc::var(Var::a(1)) - QFunc::var(Var::a(2));
        Self::new(BosonLattice::sl2(form), 0, u, QFunc::var(Var::E1), QFunc::var(Var::E2))
            .expect("sl2 boson")
    }
}

/// `L_n` on the degree `≤ max_degree` part.
pub fn virasoro_mode<C: Field>(n: i64, spec: &FeiginFuchs<C>, max_degree: usize) -> OperatorMatrix<C> {
    spec.mode_matrix(n, max_degree)
}

/// `~L_n = e1 e2 L_n` in the integral generators.
pub fn integral_mode<C: Field>(n: i64, spec: &FeiginFuchs<C>, max_degree: usize) -> OperatorMatrix<C> {
    spec.with_form(Form::Integral).mode_matrix(n, max_degree)
}

pub fn virasoro_bracket_residual<C: Field>(
    m: i64,
    n: i64,
    spec: &FeiginFuchs<C>,
    max_degree: usize,
) -> OperatorMatrix<C> {
    spec.bracket_residual(m, n, max_degree)
}

pub fn pbw_matrix<C: Field>(d: usize, spec: &FeiginFuchs<C>) -> Matrix<C> {
    spec.pbw_matrix(d)
}

/// The operator of multiplication by `c1` of the tautological bundle on a
/// single rank-one boson with `[P_m, P_n] = -m δ_{m,-n} / (e1 e2)`:
/// `(e^2/6) Σ :P P P: - (e s / 4) Σ_m (|m| - 1) :P_{-m} P_m:`.
#[derive(Clone, Debug)]
pub struct Lehn<C: Field> {
    space: FockSpace<C>,
    eps_sum: C,
    cubic_sign: i64,
}

impl<C: Field> Lehn<C> {
    pub fn new(eps1: C, eps2: C) -> Result<Self> {
        let space = FockSpace::new(BosonLattice::gl(1, Form::Standard), eps1.clone() * eps2.clone())?;
        Ok(Lehn { space, eps_sum: eps1 + eps2, cubic_sign: 1 })
    }

    /// Variant with the cubic term negated.
    pub fn with_cubic_sign(mut self, sign: i64) -> Self {
        self.cubic_sign = sign.signum();
        self
    }

    pub fn space(&self) -> &FockSpace<C> {
        &self.space
    }

    fn product(&self, modes: &[i64], v: &FockVector<C>) -> FockVector<C> {
        let mut x = v.clone();
        for &m in modes.iter().filter(|&&m| m > 0).chain(modes.iter().filter(|&&m| m < 0)) {
            x = self.space.mode(0, m, &x);
            if x.is_zero() {
                break;
            }
        }
        x
    }

    pub fn apply(&self, v: &FockVector<C>) -> FockVector<C> {
        let e = self.space.eps_product().clone();
        let deg = v.max_degree() as i64;
        let mut cubic = FockVector::zero();
        for m1 in -deg..=deg {
            for m2 in -deg..=deg {
                let m3 = -m1 - m2;
                if m1 == 0 || m2 == 0 || m3 == 0 || m3.abs() > deg {
                    continue;
                }
                cubic = cubic + self.product(&[m1, m2, m3], v);
            }
        }
        let mut quad = FockVector::zero();
        for m in 1..=deg {
            let w = self.product(&[-m, m], v).scale(&C::from_i64(2 * (m - 1)));
            quad = quad + w;
        }
        let c3 = C::from_rational(&crate::scalar::rat(self.cubic_sign, 6)) * e.clone() * e.clone();
        let c2 = C::from_rational(&crate::scalar::rat(-1, 4)) * e * self.eps_sum.clone();
        cubic.scale(&c3) + quad.scale(&c2)
    }

    pub fn operator(&self, max_degree: usize) -> OperatorMatrix<C> {
        OperatorMatrix::from_action(&self.space, max_degree, 0, |v| Ok(self.apply(v)))
            .expect("degree preserving")
    }

    /// `(n e / 2) Σ_{l+m=n} :P_l P_m: - (n(|n| - 1)/2) s P_n`, `n ≠ 0`.
    pub fn commutator_display(&self, n: i64, v: &FockVector<C>) -> FockVector<C> {
        let e = self.space.eps_product().clone();
        let deg = v.max_degree() as i64;
        let bound = deg + n.abs();
        let mut quad = FockVector::zero();
        for l in -bound..=bound {
            let m = n - l;
            if l == 0 || m == 0 || l > deg || m > deg {
                continue;
            }
            quad = quad + self.product(&[l, m], v);
        }
        let a = C::from_rational(&crate::scalar::rat(n, 2)) * e;
        let b = C::from_rational(&crate::scalar::rat(n * (n.abs() - 1), 2)) * self.eps_sum.clone();
        quad.scale(&a) - self.space.mode(0, n, v).scale(&b)
    }

    /// `[c1, P_n] - display`, on degrees `≤ max_degree`.
    pub fn commutator_residual(&self, n: i64, max_degree: usize) -> Result<OperatorMatrix<C>> {
        if n == 0 {
            return Err(Error::InvalidInput("the rank-one boson has no zero mode".into()));
        }
        OperatorMatrix::from_action(&self.space, max_degree, -n, |v| {
            let pv = self.space.mode(0, n, v);
            let lhs = self.apply(&pv) - self.space.mode(0, n, &self.apply(v));
            Ok(lhs - self.commutator_display(n, v))
        })
    }
}

impl Lehn<QFunc> {
    pub fn symbolic() -> Self {
        Self::new(QFunc::var(Var::E1), QFunc::var(Var::E2)).expect("e1 e2 is invertible")
    }
}

pub fn lehn_operator(max_degree: usize) -> OperatorMatrix<QFunc> {
    Lehn::symbolic().operator(max_degree)
}

pub fn lehn_commutator_residual(n: i64, max_degree: usize) -> Result<OperatorMatrix<QFunc>> {
    Lehn::symbolic().commutator_residual(n, max_degree)
}

/// The sign automorphism `P_n ↦ -P_n` on a vector.
pub fn flip_sign<C: Field>(v: &FockVector<C>) -> FockVector<C> {
    FockVector::from_terms(v.terms().map(|(m, c)| {
        let c = if m.len() % 2 == 1 { -c.clone() } else { c.clone() };
        (m.clone(), c)
    }))
}

/// `(-1)^{number of parts}` on the degree-`d` basis of a rank-one space.
pub fn parity_matrix<C: Field>(d: usize) -> Matrix<C> {
    Matrix::diagonal(
        Basis::new(1, d)
            .monomials()
            .iter()
            .map(|m: &Monomial| if m.len() % 2 == 0 { C::one() } else { -C::one() })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(s: &str) -> QFunc {
        crate::exact::parse_rf(s).unwrap()
    }

    fn vac() -> FockVector<QFunc> {
        FockVector::vacuum()
    }

    #[test]
    fn vacuum_examples() {
        let ff = FeiginFuchs::sl2(Form::Standard);
        assert!(ff.apply(1, &vac()).is_zero());
        let l0 = ff.apply(0, &vac());
        let expected = rf("-1/4*((a1 - a2)^2/(e1*e2) - (e1 + e2)^2/(e1*e2))");
        assert_eq!(l0, vac().scale(&expected));
        let lm1 = ff.apply(-1, &vac());
        let p = ff.space().mode(0, -1, &vac());
        assert_eq!(lm1, p.scale(&rf("-1/2*(a1 - a2 - e1 - e2)")));
    }

    #[test]
    fn virasoro_low_brackets() {
        let ff = FeiginFuchs::sl2(Form::Standard);
        for (m, n) in [(1, -1), (2, -2), (1, 2), (2, -1)] {
            assert!(ff.bracket_residual(m, n, 3).is_zero(), "({m},{n})");
        }
    }

    #[test]
    fn integral_examples() {
        let ff = FeiginFuchs::sl2(Form::Integral);
        assert!(ff.bracket_residual(1, -1, 3).is_zero());
        let lm1 = ff.apply(-1, &vac());
        let p = ff.space().mode(0, -1, &vac());
        assert_eq!(lm1, p.scale(&rf("-1/2*(a1 - a2 - e1 - e2)")));
        for n in 1..=3 {
            assert!(ff.apply(n, &vac()).is_zero());
        }
    }

    #[test]
    fn pbw_small_degrees() {
        let ff = FeiginFuchs::sl2(Form::Standard);
        assert_eq!(ff.pbw_matrix(0), Matrix::identity(1));
        assert_eq!(ff.pbw_matrix(1)[(0, 0)], rf("-1/2*(a1 - a2 - e1 - e2)"));
        let det = ff.pbw_matrix(2).det().unwrap();
        assert_eq!(det, rf("-1/8*(a1 - a2 - 2*e1 - e2)*(a1 - a2 - e1 - 2*e2)*(a1 - a2 - e1 - e2)"));
    }

    #[test]
    fn singular_pbw_names_factor() {
        let q = |x: i64| crate::scalar::int(x);
        let ff = FeiginFuchs::new(BosonLattice::sl2(Form::Standard), 0, q(4), q(1), q(2)).unwrap();
        match ff.pbw_inverse(2) {
            Err(Error::SingularPbw { degree: 2, factor }) => assert!(factor.starts_with("u - 2*e1 - e2"), "{factor}"),
            other => panic!("unexpected {other:?}"),
        }
        assert!(ff.pbw_inverse(1).is_ok());
    }

    #[test]
    fn lehn_examples() {
        let l = Lehn::symbolic();
        let sp = l.space();
        assert!(l.apply(&vac()).is_zero());
        assert!(l.apply(&sp.mode(0, -1, &vac())).is_zero());
        let p2 = sp.mode(0, -2, &vac());
        let p11 = sp.mode(0, -1, &sp.mode(0, -1, &vac()));
        let expected = p11.scale(&rf("-e1*e2")) + p2.scale(&rf("e1 + e2"));
        assert_eq!(l.apply(&p2), expected);
        assert_eq!(l.commutator_display(-2, &vac()), expected);
    }

    #[test]
    fn lehn_commutator_low_degree() {
        let l = Lehn::symbolic();
        for n in [-2, -1, 1, 2] {
            assert!(l.commutator_residual(n, 3).unwrap().is_zero(), "n = {n}");
        }
    }

    #[test]
    fn negated_cubic_is_the_sign_conjugate() {
        let l = Lehn::symbolic();
        let neg = Lehn::symbolic().with_cubic_sign(-1);
        for d in 0..=4 {
            for m in Basis::new(1, d).monomials() {
                let v = FockSpace::basis_vector(m);
                assert_eq!(neg.apply(&v), flip_sign(&l.apply(&flip_sign(&v))));
            }
        }
        assert!(!neg.commutator_residual(-2, 2).unwrap().is_zero());
    }
}
