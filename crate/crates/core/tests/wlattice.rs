use fockforge_core::fock::{graded_dimension, BosonLattice, Form};
use fockforge_core::scalar::int;
use fockforge_core::wlattice::{
    annihilator_kernel, colored_partition_count, pid_intersection, pid_intersection_retrying, vir_sublattice,
    Algebra, FockLattice, LineSpecialization,
};
use fockforge_core::{Matrix, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_unimodular(n: usize, rng: &mut ChaCha8Rng) -> Matrix<Rational> {
    let mut m: Matrix<Rational> = Matrix::identity(n);
    for _ in 0..3 * n {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if i == j {
            continue;
        }
        let k = int(rng.gen_range(-3..=3));
        // column j += k * column i
        for r in 0..n {
            let v = m[(r, i)].clone() * k.clone();
            m[(r, j)] = m[(r, j)].clone() + v;
        }
    }
    if rng.gen_bool(0.5) {
        m.swap_cols(0, n - 1);
    }
    m
}

#[test]
fn divisors_ignore_basis_choice() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let heis = FockLattice::heisenberg(BosonLattice::sl2(Form::Integral), 3);
    let vir = vir_sublattice(1, 3, Algebra::Sl2).unwrap();
    let s1 = vir_sublattice(1, 2, Algebra::Sl3).unwrap();
    let s2 = vir_sublattice(2, 2, Algebra::Sl3).unwrap();
    for (l1, l2) in [(&vir, &heis), (&s1, &s2)] {
        let line = LineSpecialization::from_seed(2);
        let base = pid_intersection(l1, l2, &line).unwrap();
        for _ in 0..3 {
            let t1 = l1.transformed(&random_unimodular(l1.len(), &mut rng)).unwrap();
            let t2 = l2.transformed(&random_unimodular(l2.len(), &mut rng)).unwrap();
            let r = pid_intersection(&t1, &t2, &line).unwrap();
            assert_eq!(r.divisors, base.divisors);
            assert_eq!(r.ambient_divisors, base.ambient_divisors);
        }
    }
}

#[test]
fn sl3_intersection_has_full_graded_rank() {
    let lattice = BosonLattice::sl3(Form::Integral);
    for d in 0..=3 {
        let s1 = vir_sublattice(1, d, Algebra::Sl3).unwrap();
        let s2 = vir_sublattice(2, d, Algebra::Sl3).unwrap();
        let r = pid_intersection_retrying(&s1, &s2, 1, 5).unwrap();
        assert_eq!(r.rank, graded_dimension(&lattice, d), "degree {d}");
    }
}

#[test]
fn virasoro_index_in_heisenberg_grows_with_degree() {
    // The determinant of the inclusion is the product of the divisors.
    let line = LineSpecialization::from_seed(5);
    let mut last = 0;
    for d in 1..=4 {
        let vir = vir_sublattice(1, d, Algebra::Sl2).unwrap();
        let heis = FockLattice::heisenberg(BosonLattice::sl2(Form::Integral), d);
        let r = pid_intersection(&vir, &heis, &line).unwrap();
        assert_eq!(r.rank, colored_partition_count(1, d));
        let total: usize = r.divisors.iter().map(|p| p.degree().unwrap()).sum();
        assert!(total > last);
        last = total;
    }
}

#[test]
fn kernel_dimension_series() {
    for r in 2..=3 {
        for d in 0..=5 {
            assert_eq!(annihilator_kernel(r, d).len(), colored_partition_count(r - 1, d));
        }
    }
}
