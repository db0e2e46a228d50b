use fockforge_core::adhm::{
    direct_sum, fixed_point_data, fixed_points, is_stable, moment_map, monad_matrices, spectrum_projection,
    support_cycle, AdhmData, FramingMode,
};
use fockforge_core::characters::gieseker_series;
use fockforge_core::scalar::rat;
use fockforge_core::{Matrix, Rational};
use proptest::prelude::*;

fn invertible(d: usize, seed: u64) -> Matrix<Rational> {
    // Unit upper triangular times a random diagonal, then a row shuffle.
    let g = AdhmData::random(d, 0, seed);
    let mut m = Matrix::from_fn(d, d, |i, j| {
        if i == j {
            rat(1 + ((seed % 3) as i64 + i as i64) % 3, 1)
        } else if i < j {
            g.b1()[(i, j)].clone()
        } else {
            Rational::from_integer(0.into())
        }
    });
    if d > 1 {
        m.swap_rows(0, d - 1);
    }
    m
}

#[test]
fn fixed_points_are_stable_solutions() {
    for r in 1..=3 {
        for d in 0..=6 {
            for lambda in fixed_points(r, d) {
                let x = fixed_point_data(&lambda).unwrap();
                assert_eq!((x.d(), x.r()), (d, r));
                assert!(moment_map(&x).is_zero(), "{lambda:?}");
                assert!(is_stable(&x), "{lambda:?}");
                assert!(monad_matrices(&x).is_complex());
            }
        }
    }
}

#[test]
fn fixed_point_count_is_gieseker() {
    for r in 1..=3 {
        let series = gieseker_series(r, 6);
        for d in 0..=6 {
            assert_eq!(fixed_points(r, d).len().to_string(), series.coeff(d).to_string());
        }
    }
}

#[test]
fn monad_residual_vanishes() {
    for seed in 0..100 {
        let x = AdhmData::random(1 + (seed % 4) as usize, 1 + (seed % 3) as usize, seed);
        assert_eq!(monad_matrices(&x).residual_summary(), "zero", "seed {seed}");
    }
}

#[test]
fn spectra_concatenate_under_direct_sums() {
    for seed in 0..100u64 {
        let x = AdhmData::random(1 + (seed % 3) as usize, 1, seed);
        let y = AdhmData::random(1 + (seed % 2) as usize, 1, seed + 1000);
        let s = direct_sum(&x, &y, FramingMode::Stacked).unwrap();
        let dir = (rat(1 + (seed % 5) as i64, 1), rat(seed as i64 % 7 - 3, 2));
        let whole = spectrum_projection(&s, (&dir.0, &dir.1)).unwrap();
        let parts = spectrum_projection(&x, (&dir.0, &dir.1))
            .unwrap()
            .union(&spectrum_projection(&y, (&dir.0, &dir.1)).unwrap());
        assert_eq!(whole, parts, "seed {seed}");
    }
}

#[test]
fn support_of_fixed_points_sits_at_origin() {
    for d in 0..=5 {
        for lambda in fixed_points(1, d) {
            let c = support_cycle(&fixed_point_data(&lambda).unwrap()).unwrap();
            assert_eq!(c.total(), d);
            assert!(c.points.iter().all(|((a, b), _)| *a == rat(0, 1) && *b == rat(0, 1)));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn stability_survives_change_of_basis(d in 1usize..4, r in 1usize..3, seed in any::<u64>(), g in any::<u64>()) {
        let x = AdhmData::random(d, r, seed);
        let y = x.conjugate(&invertible(d, g)).unwrap();
        prop_assert_eq!(is_stable(&x), is_stable(&y));
    }

    #[test]
    fn moment_is_additive(dx in 0usize..4, dy in 0usize..4, rx in 0usize..3, ry in 0usize..3, seed in any::<u64>()) {
        let x = AdhmData::random(dx, rx, seed);
        let y = AdhmData::random(dy, ry, seed.wrapping_add(1));
        let s = direct_sum(&x, &y, FramingMode::Independent).unwrap();
        prop_assert_eq!(moment_map(&s), moment_map(&x).block_diag(&moment_map(&y)));
    }

    #[test]
    fn first_carries_keeps_fixed_points(a in 0usize..4, b in 1usize..3, seed in any::<u64>()) {
        let lambdas = fixed_points(1, a);
        let x = fixed_point_data(&lambdas[seed as usize % lambdas.len()]).unwrap();
        let y = AdhmData::new(Matrix::zeros(b, b), Matrix::zeros(b, b), Matrix::zeros(b, 1), Matrix::zeros(1, b)).unwrap();
        let s = direct_sum(&x, &y, FramingMode::FirstCarries).unwrap();
        prop_assert!(moment_map(&s).is_zero());
        prop_assert!(!is_stable(&s));
    }
}
