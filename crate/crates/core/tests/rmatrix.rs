use fockforge_core::exact::parse_rf;
use fockforge_core::fock::{Basis, Form};
use fockforge_core::rmatrix::{
    classical_r, diagonal_commutator, expansion_report, reflection, reflection_block, ybe_residual, Normalization,
    Orientation, ReflectionConvention, YbeParams,
};
use fockforge_core::virasoro::{parity_matrix, FeiginFuchs};
use fockforge_core::{Matrix, QFunc};

const RAW: [ReflectionConvention; 2] = [
    ReflectionConvention::raw(Orientation::SourceSwapped),
    ReflectionConvention::raw(Orientation::TargetSwapped),
];

#[test]
fn reflection_intertwines_modes() {
    let ff = FeiginFuchs::sl2(Form::Standard);
    let swapped = ff.with_weight(-ff.weight().clone());
    for conv in RAW {
        let r = reflection(&ff, 3, conv).unwrap();
        // R L_n(x) = L_n(y) R
        let (x, y) = match conv.orientation {
            Orientation::SourceSwapped => (&swapped, &ff),
            Orientation::TargetSwapped => (&ff, &swapped),
        };
        for n in -2i64..=2 {
            let (lx, ly) = (x.mode_matrix(n, 3), y.mode_matrix(n, 3));
            for d in 0..=3usize {
                let t = d as i64 - n;
                if !(0..=3).contains(&t) {
                    continue;
                }
                let t = t as usize;
                let lhs = r.block(t).unwrap().mul(lx.block(d).unwrap()).unwrap();
                let rhs = ly.block(d).unwrap().mul(r.block(d).unwrap()).unwrap();
                assert_eq!(lhs, rhs, "{conv} n={n} d={d}");
            }
        }
    }
}

#[test]
fn reflection_is_an_involution_up_to_swap() {
    let ff = FeiginFuchs::sl2(Form::Standard);
    let swapped = ff.with_weight(-ff.weight().clone());
    for conv in RAW {
        for d in 0..=4 {
            let a = reflection_block(&ff, d, conv).unwrap();
            let b = reflection_block(&swapped, d, conv).unwrap();
            assert!(a.mul(&b).unwrap().is_identity(), "{conv} d={d}");
        }
    }
}

#[test]
fn parity_normalized_reflection_inverts_after_conjugation() {
    // P R(a) P R(σa) P P = P R(a) R(σa) P, and P does not commute with R past degree one.
    let ff = FeiginFuchs::sl2(Form::Standard);
    let swapped = ff.with_weight(-ff.weight().clone());
    let conv = ReflectionConvention::UNIFORM;
    for d in 0..=4 {
        let p = parity_matrix::<QFunc>(d);
        let a = reflection_block(&ff, d, conv).unwrap();
        let b = reflection_block(&swapped, d, conv).unwrap();
        let conj = a.mul(&p).unwrap().mul(&b).unwrap().mul(&p).unwrap();
        assert!(conj.is_identity(), "d={d}");
        if d == 2 {
            assert!(!a.mul(&b).unwrap().is_identity(), "d={d}");
        }
    }
}

#[test]
fn degree_one_eigenvalues() {
    let ff = FeiginFuchs::sl2(Form::Standard);
    let src = reflection_block(&ff, 1, RAW[0]).unwrap();
    assert_eq!(src[(0, 0)], parse_rf("-(a1 - a2 - e1 - e2)/(a1 - a2 + e1 + e2)").unwrap());
    let tgt = reflection_block(&ff, 1, RAW[1]).unwrap();
    assert_eq!(tgt[(0, 0)], parse_rf("-(a1 - a2 + e1 + e2)/(a1 - a2 - e1 - e2)").unwrap());
    let uni = reflection_block(&ff, 1, ReflectionConvention::UNIFORM).unwrap();
    assert_eq!(uni[(0, 0)], parse_rf("(a1 - a2 + e1 + e2)/(a1 - a2 - e1 - e2)").unwrap());
}

#[test]
fn classical_r_is_scalar() {
    let ff = FeiginFuchs::sl2(Form::Standard);
    let r = classical_r(&ff, 5);
    for d in 0..=5 {
        let n = Basis::new(1, d).len();
        let want: Matrix<QFunc> = Matrix::identity(n).scale(&parse_rf(&(2 * d).to_string()).unwrap());
        assert_eq!(r.block(d).unwrap(), &want);
    }
}

#[test]
fn expansion_pattern_through_degree_three() {
    let rep = expansion_report(3).unwrap();
    assert!(rep.is_consistent());
    assert!(rep.uniform.contains(&ReflectionConvention::UNIFORM));
    let signs: Vec<Option<i64>> = rep.degrees.iter().map(|d| d.sign).collect();
    // Scalar signs exist only while the degree block is one-dimensional.
    assert_eq!(signs, [Some(1), Some(-1), None, None]);
    for d in &rep.degrees {
        assert!(d.matches.contains(&ReflectionConvention::UNIFORM));
        assert!(d.mismatch.is_none());
    }
}

#[test]
fn reflection_commutes_with_diagonal_modes() {
    let ff = FeiginFuchs::sl2(Form::Standard);
    for conv in RAW.into_iter().chain([ReflectionConvention::UNIFORM]) {
        for n in [-2, -1, 1, 2] {
            let c = diagonal_commutator(&ff, n, 3, conv).unwrap();
            assert!(c.is_zero(), "{conv} n={n}: {}", c.residual_summary());
        }
    }
}

#[test]
fn yang_baxter_at_five_seeds() {
    let mut seen = Vec::new();
    for seed in 1..=5 {
        let p = YbeParams::from_seed(seed, 2);
        assert!(!seen.contains(&p));
        let r = ybe_residual(2, &p, ReflectionConvention::UNIFORM).unwrap();
        assert!(r.is_zero(), "seed {seed}: {}", r.residual_summary());
        seen.push(p);
    }
}

#[test]
fn yang_baxter_symbolic_degree_one() {
    let r = ybe_residual(1, &YbeParams::symbolic(), ReflectionConvention::UNIFORM).unwrap();
    assert!(r.is_zero());
    let scalar = ReflectionConvention { orientation: Orientation::TargetSwapped, normalization: Normalization::Negated };
    assert!(!ybe_residual(1, &YbeParams::symbolic(), scalar).unwrap().is_zero());
}
