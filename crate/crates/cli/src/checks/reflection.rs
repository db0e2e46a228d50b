use fockforge_core::exact::parse_rf;
use fockforge_core::fock::{Basis, Form};
use fockforge_core::rmatrix::{
    classical_r, expansion_report, reflection as reflection_op, reflection_block, ybe_residual, Orientation,
    ReflectionConvention, YbeParams,
};
use fockforge_core::scalar::Ring;
use fockforge_core::virasoro::{parity_matrix, FeiginFuchs};
use fockforge_core::{Matrix, QFunc};
use serde_json::json;

use super::object;
use crate::report::{CheckReport, Findings, Status};
use crate::{Params, UsageError};

const RAW: [ReflectionConvention; 2] = [
    ReflectionConvention::raw(Orientation::SourceSwapped),
    ReflectionConvention::raw(Orientation::TargetSwapped),
];

/// Degrees past this are not checked for intertwining.
const INTERTWINING_DEGREE: usize = 3;

fn rf(s: &str) -> QFunc {
    parse_rf(s).expect("valid literal")
}

fn intertwining(ff: &FeiginFuchs<QFunc>, max_degree: usize, f: &mut Findings) {
    let swapped = ff.with_weight(-ff.weight().clone());
    for conv in RAW {
        let r = match reflection_op(ff, max_degree, conv) {
            Ok(r) => r,
            Err(e) => return f.fail(format!("{conv}: {e}")),
        };
        // R L_n(x) = L_n(y) R
        let (x, y) = match conv.orientation {
            Orientation::SourceSwapped => (&swapped, ff),
            Orientation::TargetSwapped => (ff, &swapped),
        };
        for n in -2i64..=2 {
            let (lx, ly) = (x.mode_matrix(n, max_degree), y.mode_matrix(n, max_degree));
            for d in 0..=max_degree {
                let Some(t) = usize::try_from(d as i64 - n).ok().filter(|&t| t <= max_degree) else {
                    continue;
                };
                let lhs = r.block(t).expect("stored").mul(lx.block(d).expect("stored")).expect("shapes");
                let rhs = ly.block(d).expect("stored").mul(r.block(d).expect("stored")).expect("shapes");
                f.expect(lhs == rhs, || format!("{conv}: R L_{n} differs from L_{n} R on degree {d}"));
            }
        }
    }
}

fn involution(ff: &FeiginFuchs<QFunc>, max_degree: usize, f: &mut Findings) {
    let swapped = ff.with_weight(-ff.weight().clone());
    for d in 0..=max_degree {
        for conv in RAW.into_iter().chain([ReflectionConvention::UNIFORM]) {
            let pair = reflection_block(ff, d, conv).and_then(|a| Ok((a, reflection_block(&swapped, d, conv)?)));
            let (a, b) = match pair {
                Ok(x) => x,
                Err(e) => {
                    f.fail(format!("{conv} degree {d}: {e}"));
                    continue;
                }
            };
            // The parity sign does not commute with R, so it is conjugated away.
            let product = if conv == ReflectionConvention::UNIFORM {
                let p = parity_matrix::<QFunc>(d);
                a.mul(&p).and_then(|x| x.mul(&b)).and_then(|x| x.mul(&p))
            } else {
                a.mul(&b)
            };
            f.expect(product.is_ok_and(|m| m.is_identity()), || {
                format!("{conv}: R(a) R(σa) is not the identity on degree {d}")
            });
        }
    }
}

pub(crate) fn reflection(p: &Params) -> Result<CheckReport, UsageError> {
    let max_degree = p.max_degree_or(4, 5)?;
    let ff = FeiginFuchs::sl2(Form::Standard);
    let mut f = Findings::default();
    intertwining(&ff, max_degree.min(INTERTWINING_DEGREE), &mut f);
    involution(&ff, max_degree, &mut f);
    let r = classical_r(&ff, max_degree);
    for d in 0..=max_degree {
        let want: Matrix<QFunc> = Matrix::identity(Basis::new(1, d).len()).scale(&QFunc::from_i64(2 * d as i64));
        f.expect(r.block(d) == Some(&want), || format!("classical r is not 2*{d} on degree {d}"));
    }
    let eigen = [
        (RAW[0], "-(a1 - a2 - e1 - e2)/(a1 - a2 + e1 + e2)"),
        (RAW[1], "-(a1 - a2 + e1 + e2)/(a1 - a2 - e1 - e2)"),
        (ReflectionConvention::UNIFORM, "(a1 - a2 + e1 + e2)/(a1 - a2 - e1 - e2)"),
    ];
    for (conv, want) in eigen {
        match reflection_block(&ff, 1, conv) {
            Ok(m) => {
                let want = rf(want);
                f.expect(m[(0, 0)] == want, || format!("{conv}: degree-one eigenvalue {}, expected {want}", m[(0, 0)]));
                f.note(format!("{conv}: degree-one eigenvalue {want}"));
            }
            Err(e) => f.fail(format!("{conv} degree 1: {e}")),
        }
    }
    let params = object(json!({
        "max_degree": max_degree,
        "intertwining_degree": max_degree.min(INTERTWINING_DEGREE),
        "max_mode": 2,
    }));
    Ok(f.finish("reflection", params, p.seed, Status::Pass))
}

pub(crate) fn expansion(p: &Params) -> Result<CheckReport, UsageError> {
    let max_degree = p.max_degree_or(3, 4)?;
    let mut f = Findings::default();
    match expansion_report(max_degree) {
        Ok(rep) => {
            for d in &rep.degrees {
                let sign = d.sign.map_or("none".to_owned(), |s| format!("{s:+}"));
                let matches: Vec<String> = d.matches.iter().map(ToString::to_string).collect();
                f.note(format!("degree {}: sign {sign}, matches [{}]", d.degree, matches.join(", ")));
                if let Some(m) = &d.mismatch {
                    f.note(format!("degree {}: uniform convention mismatch {m}", d.degree));
                }
            }
            let uniform: Vec<String> = rep.uniform.iter().map(ToString::to_string).collect();
            f.note(format!("consistent conventions: [{}]", uniform.join(", ")));
            if !rep.is_consistent() {
                f.fail("no convention matches in every degree");
                f.failures.extend(f.notes.clone());
            }
        }
        Err(e) => f.fail(e.to_string()),
    }
    let params = object(json!({ "max_degree": max_degree, "order": 1 }));
    Ok(f.finish("expansion", params, p.seed, Status::Measured))
}

pub(crate) fn ybe(p: &Params) -> Result<CheckReport, UsageError> {
    let max_degree = p.max_degree_or(2, 3)?;
    let params = YbeParams::from_seed(p.seed, max_degree);
    let conv = ReflectionConvention::UNIFORM;
    let mut f = Findings::default();
    match ybe_residual(max_degree, &params, conv) {
        Ok(r) => f.expect(r.is_zero(), || format!("seeded residual: {}", r.residual_summary())),
        Err(e) => f.fail(e.to_string()),
    }
    match ybe_residual(1, &YbeParams::symbolic(), conv) {
        Ok(r) => f.expect(r.is_zero(), || format!("symbolic degree-one residual: {}", r.residual_summary())),
        Err(e) => f.fail(e.to_string()),
    }
    f.note(format!("residual 0 on degrees 0..={max_degree} at the seeded point"));
    f.note("residual 0 on degree 1 symbolically".to_owned());
    let values = params.to_strings();
    let echo = object(json!({
        "max_degree": max_degree,
        "convention": conv.to_string(),
        "a1": values[0], "a2": values[1], "a3": values[2], "e1": values[3], "e2": values[4],
    }));
    Ok(f.finish("ybe", echo, p.seed, Status::Pass))
}
