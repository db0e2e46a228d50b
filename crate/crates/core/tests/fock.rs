use fockforge_core::fock::{
    change_of_generators, graded_dimension, BosonLattice, FockSpace, FockVector, Form, TransportMode,
};
use fockforge_core::scalar::{rat, Field, Ring};
use fockforge_core::{Matrix, QFunc, Rational};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn lattices() -> Vec<BosonLattice> {
    let mut out = vec![];
    for form in [Form::Standard, Form::Integral] {
        for r in 1..=3 {
            out.push(BosonLattice::gl(r, form));
            out.push(BosonLattice::cartan('A', r, form).unwrap());
        }
        out.push(BosonLattice::cartan('D', 3, form).unwrap());
    }
    out
}

fn nonzero_mode() -> impl Strategy<Value = i64> {
    prop_oneof![-4i64..=-1, 1i64..=4]
}

fn commutator(f: &FockSpace<QFunc>, (i, m): (usize, i64), (j, n): (usize, i64), v: &FockVector<QFunc>) -> FockVector<QFunc> {
    f.mode(i, m, &f.mode(j, n, v)) - f.mode(j, n, &f.mode(i, m, v))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn heisenberg_commutator_law(
        which in any::<usize>(),
        gens in (0usize..3, 0usize..3),
        m in nonzero_mode(),
        n in nonzero_mode(),
        d in 0usize..=4,
        pick in any::<usize>(),
    ) {
        let mut ls = lattices();
        let l = ls.swap_remove(which % ls.len());
        let (i, j) = (gens.0 % l.rank(), gens.1 % l.rank());
        let f = FockSpace::symbolic(l);
        let basis = f.basis(d);
        let v = FockVector::monomial(basis.monomials()[pick % basis.len()].clone(), QFunc::one());
        let expected = if m + n == 0 { v.scale(&(QFunc::from_i64(-m) * f.pair(i, j).clone())) } else { FockVector::zero() };
        prop_assert_eq!(commutator(&f, (i, m), (j, n), &v), expected);
    }

    #[test]
    fn transport_respects_brackets(entries in prop::collection::vec(-3i64..=3, 4), m in 1i64..=3, d in 0usize..=3) {
        let t = Matrix::from_fn(2, 2, |a, b| rat(entries[2 * a + b] + if a == b { 4 } else { 0 }, 1));
        prop_assume!(!t.det().unwrap().is_zero());
        let old = BosonLattice::gl(2, Form::Standard);
        let (new, _) = change_of_generators(&t, &old, TransportMode::Isomorphism).unwrap();
        let (fo, fn_) = (FockSpace::<QFunc>::symbolic(old), FockSpace::<QFunc>::symbolic(new));
        let rows: Vec<Vec<QFunc>> =
            (0..2).map(|k| (0..2).map(|j| QFunc::from_rational(&t[(k, j)])).collect()).collect();
        for v in fo.basis(d).monomials() {
            let v = FockVector::monomial(v.clone(), QFunc::one());
            for k in 0..2 {
                for l in 0..2 {
                    let lhs = fo.combined_mode(&rows[k], m, &fo.combined_mode(&rows[l], -m, &v))
                        - fo.combined_mode(&rows[l], -m, &fo.combined_mode(&rows[k], m, &v));
                    prop_assert_eq!(lhs, v.scale(&(QFunc::from_i64(-m) * fn_.pair(k, l).clone())));
                }
            }
        }
    }
}

#[test]
fn contravariant_gram_is_invertible() {
    for l in [BosonLattice::sl2(Form::Standard), BosonLattice::gl(2, Form::Integral), BosonLattice::sl3(Form::Standard)] {
        let f = FockSpace::<QFunc>::symbolic(l.clone());
        for d in 0..=4 {
            assert!(!f.form_matrix(d).det().unwrap().is_zero(), "{:?} degree {d}", l.labels());
        }
    }
}

#[test]
fn orthogonal_factors_convolve() {
    let g: Vec<Vec<Rational>> = [[2, -1, 0], [-1, 2, 0], [0, 0, 1]]
        .iter()
        .map(|row| row.iter().map(|&x| rat(x, 1)).collect())
        .collect();
    let labels = ["x", "y", "z"].map(String::from).to_vec();
    let whole = BosonLattice::new(labels, g, Form::Standard).unwrap();
    let (a, b) = (BosonLattice::sl3(Form::Standard), BosonLattice::gl(1, Form::Standard));
    for d in 0..=8 {
        let conv: usize = (0..=d).map(|k| graded_dimension(&a, k) * graded_dimension(&b, d - k)).sum();
        assert_eq!(graded_dimension(&whole, d), conv, "degree {d}");
    }
}
