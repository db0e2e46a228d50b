use fockforge_core::exact::parse_rf;
use fockforge_core::fock::{graded_dimension, Form};
use fockforge_core::characters::ih_series;
use fockforge_core::wlattice::{
    annihilator_kernel, integrality_check, kernel_is_stable, pid_intersection_retrying, vir_sublattice, Algebra,
    FockLattice, LineSpecialization,
};
use fockforge_core::Rational;
use serde_json::json;

use super::object;
use crate::report::{CheckReport, Findings, Status};
use crate::{Params, UsageError};

/// Consecutive line seeds tried before giving up.
const LINE_ATTEMPTS: u64 = 5;
/// The sl3 intersection is computed up to this degree.
const SL3_DEGREE: usize = 3;
/// L_n stability of the kernel is checked up to this degree.
const STABILITY_DEGREE: usize = 4;

pub(crate) fn wlattice(p: &Params) -> Result<CheckReport, UsageError> {
    let max_degree = p.max_degree_or(5, 6)?;
    let mut f = Findings::default();
    let integrality = integrality_check(Algebra::Sl2, max_degree);
    for w in &integrality.witnesses {
        f.fail(format!("degree {} root {}: non-polynomial coefficient {}", w.degree, w.root, w.coefficient));
    }
    f.note(format!("sl2 integral through degree {max_degree}"));

    let vir = vir_sublattice(1, 1, Algebra::Sl2).expect("valid root");
    let heis = FockLattice::heisenberg(Algebra::Sl2.lattice(Form::Integral), 1);
    match pid_intersection_retrying(&vir, &heis, p.seed, LINE_ATTEMPTS) {
        Ok(r) => {
            let u = parse_rf::<Rational>("a1 - a2 - e1 - e2").expect("literal");
            let want = LineSpecialization::from_seed(r.seed).apply(u.numer()).monic();
            f.expect(r.divisors == [want.clone()], || {
                format!("degree-one index divisors {:?}, expected [{}]", r.divisor_strings(), want.display_in("t"))
            });
            f.note(format!("degree-one index divisor on line {}: {}", r.seed, want.display_in("t")));
        }
        Err(e) => f.fail(format!("degree-one index: {e}")),
    }

    let sl3 = Algebra::Sl3.lattice(Form::Integral);
    for d in 1..=max_degree.min(SL3_DEGREE) {
        let pair = vir_sublattice(1, d, Algebra::Sl3).and_then(|a| Ok((a, vir_sublattice(2, d, Algebra::Sl3)?)));
        let r = pair.and_then(|(a, b)| pid_intersection_retrying(&a, &b, p.seed, LINE_ATTEMPTS));
        match r {
            Ok(r) => {
                let full = graded_dimension(&sl3, d);
                f.expect(r.rank == full, || format!("sl3 degree {d}: rank {} below {full}", r.rank));
                f.note(format!("sl3 degree {d} line {}: rank {}, divisors [{}]", r.seed, r.rank, r.divisor_strings().join(", ")));
            }
            Err(e) => f.fail(format!("sl3 degree {d}: {e}")),
        }
    }
    let params = object(json!({ "max_degree": max_degree, "sl3_degree": max_degree.min(SL3_DEGREE) }));
    Ok(f.finish("wlattice", params, p.seed, Status::Pass))
}

pub(crate) fn kernel(p: &Params) -> Result<CheckReport, UsageError> {
    let max_degree = p.max_degree_or(5, 6)?;
    let mut f = Findings::default();
    for r in 2..=3 {
        let series = ih_series(r - 1, max_degree);
        let dims: Vec<String> = (0..=max_degree).map(|d| annihilator_kernel(r, d).len().to_string()).collect();
        for (d, dim) in dims.iter().enumerate() {
            let want = series.coeff(d).to_string();
            f.expect(*dim == want, || format!("r={r} degree {d}: kernel dimension {dim}, expected {want}"));
        }
        f.note(format!("r={r}: kernel dimensions {}", dims.join(", ")));
    }
    let top = max_degree.min(STABILITY_DEGREE);
    for d in 0..=top {
        for n in [-2i64, -1, 1, 2] {
            if d as i64 - n > top as i64 {
                continue;
            }
            match kernel_is_stable(d, n) {
                Ok(ok) => f.expect(ok, || format!("L_{n} leaves the kernel at degree {d}")),
                Err(e) => f.fail(format!("L_{n} at degree {d}: {e}")),
            }
        }
    }
    f.note(format!("r=2 kernel stable under L_n, |n| <= 2, through degree {top}"));
    let params = object(json!({ "max_degree": max_degree, "stability_degree": top }));
    Ok(f.finish("kernel", params, p.seed, Status::Pass))
}
