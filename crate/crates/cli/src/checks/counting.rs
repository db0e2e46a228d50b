use fockforge_core::adhm::{
    direct_sum, fixed_point_data, fixed_points, is_stable, moment_map, monad_matrices, spectrum_projection, AdhmData,
    FramingMode,
};
use fockforge_core::characters::{
    colored_partition_series, frenkel_kac_check, gieseker_series, ih_series, level1_series, AffineType, QSeries,
};
use fockforge_core::fock::{graded_dimension, BosonLattice, Form};
use fockforge_core::scalar::rat;
use serde_json::json;

use super::object;
use crate::report::{CheckReport, Findings, Status};
use crate::{Params, UsageError};

/// `(type, rank, lacing number, long simple roots)`: one row per line of the
/// Langlands-dual table, with the ADE row split into its families.
const TABLE: [(&str, usize, usize, usize); 9] = [
    ("A2", 2, 1, 2),
    ("B2", 2, 2, 1),
    ("C3", 3, 2, 1),
    ("D4", 4, 1, 4),
    ("E6", 6, 1, 6),
    ("E7", 7, 1, 7),
    ("E8", 8, 1, 8),
    ("F4", 4, 2, 2),
    ("G2", 2, 3, 1),
];

/// Partitions of `0..=order` where parts of size `n` come in `colors(n)` colors.
fn colored_counts(order: usize, colors: impl Fn(usize) -> usize) -> Vec<u128> {
    let mut ways = vec![0u128; order + 1];
    ways[0] = 1;
    for n in 1..=order {
        let c = colors(n) as u128;
        let mut next = vec![0u128; order + 1];
        for (total, w) in ways.iter().enumerate().filter(|(_, w)| **w != 0) {
            // k parts of size n in c colors: multisets of size k, C(k + c - 1, k).
            let mut multisets = 1u128;
            for k in 0..=(order - total) / n {
                if k > 0 {
                    multisets = multisets * (k as u128 + c - 1) / k as u128;
                }
                next[total + k * n] += w * multisets;
            }
        }
        ways = next;
    }
    ways
}

fn strings(s: &QSeries) -> Vec<String> {
    s.to_strings()
}

fn parse_type(ty: &str) -> Result<AffineType, UsageError> {
    ty.parse().map_err(|e: fockforge_core::Error| UsageError::Invalid { flag: "--type".into(), reason: e.to_string() })
}

pub(crate) fn characters(p: &Params) -> Result<CheckReport, UsageError> {
    let order = p.max_degree_or(10, 60)?;
    let mut f = Findings::default();
    if let Some(ty) = &p.ty {
        let ty = parse_type(ty)?;
        let coeffs = strings(&level1_series(ty, order));
        let params = object(json!({ "max_degree": order, "type": ty.to_string(), "affine": ty.dual_label() }));
        f.notes = coeffs;
        return Ok(f.finish("characters", params, p.seed, Status::Measured));
    }
    for r in 1..=3 {
        let g = strings(&gieseker_series(r, order));
        let lattice = BosonLattice::gl(r, Form::Standard);
        for (d, c) in g.iter().enumerate() {
            let want = graded_dimension(&lattice, d).to_string();
            f.expect(*c == want, || format!("gieseker r={r} degree {d}: {c}, expected {want}"));
        }
        let product = &ih_series(r - 1, order) * &colored_partition_series(1, order);
        f.expect(product == gieseker_series(r, order), || format!("ih({}) * partitions differs from gieseker({r})", r - 1));
        f.note(format!("gieseker r={r}: {}", g.join(", ")));
    }
    for (name, rank, lacing, long) in TABLE {
        let ty = parse_type(name)?;
        let got = strings(&level1_series(ty, order));
        let want: Vec<String> =
            colored_counts(order, |n| if n % lacing == 0 { rank } else { long }).iter().map(u128::to_string).collect();
        f.expect(got == want, || format!("{name}: [{}], expected [{}]", got.join(", "), want.join(", ")));
        f.note(format!("{name} ({}): {}", ty.dual_label(), got.join(", ")));
    }
    let g2 = strings(&level1_series(parse_type("G2")?, 4.min(order)));
    f.expect(g2 == ["1", "1", "2", "4", "6"][..=4.min(order)], || format!("G2 starts {}", g2.join(", ")));
    if order >= 2 {
        let b2 = level1_series(parse_type("B2")?, order).coeff(2).to_string();
        f.expect(b2 == "3", || format!("B2 degree 2 is {b2}, expected 3"));
    }
    let params = object(json!({ "max_degree": order, "types": TABLE.map(|t| t.0) }));
    Ok(f.finish("characters", params, p.seed, Status::Pass))
}

pub(crate) fn frenkel_kac(p: &Params) -> Result<CheckReport, UsageError> {
    let order = p.max_degree_or(10, 60)?;
    let rank = p.rank_or(3, 8)?;
    let mut f = Findings::default();
    for r in 1..=rank {
        let rep = frenkel_kac_check(r, order);
        f.expect(rep.pass, || format!("rank {r}: no simply-laced type or mismatches"));
        for (d, fock, mult) in rep.mismatches {
            f.fail(format!("rank {r} degree {d}: Fock {fock}, multiplicity {mult}"));
        }
        f.note(format!("rank {r}: {}", strings(&colored_partition_series(r, order)).join(", ")));
    }
    let params = object(json!({ "max_degree": order, "rank": rank }));
    Ok(f.finish("frenkel-kac", params, p.seed, Status::Pass))
}

/// Random samples for the residual and spectrum checks.
const SAMPLES: u64 = 100;

pub(crate) fn adhm(p: &Params) -> Result<CheckReport, UsageError> {
    let max_degree = p.max_degree_or(6, 7)?;
    let rank = p.rank_or(3, 3)?;
    let mut f = Findings::default();
    for r in 1..=rank {
        let series = gieseker_series(r, max_degree);
        let mut counts = Vec::new();
        for d in 0..=max_degree {
            let points = fixed_points(r, d);
            for lambda in &points {
                match fixed_point_data(lambda) {
                    Ok(x) => {
                        f.expect(moment_map(&x).is_zero(), || format!("{lambda:?}: moment map is nonzero"));
                        f.expect(is_stable(&x), || format!("{lambda:?}: unstable"));
                        f.expect(monad_matrices(&x).is_complex(), || format!("{lambda:?}: b a is nonzero"));
                    }
                    Err(e) => f.fail(format!("{lambda:?}: {e}")),
                }
            }
            let want = series.coeff(d).to_string();
            f.expect(points.len().to_string() == want, || {
                format!("r={r} d={d}: {} fixed points, expected {want}", points.len())
            });
            counts.push(points.len().to_string());
        }
        f.note(format!("r={r}: fixed points {}", counts.join(", ")));
    }
    let base = p.seed.wrapping_mul(1_000_003);
    for k in 0..SAMPLES {
        let x = AdhmData::random(1 + (k % 4) as usize, 1 + (k % 3) as usize, base.wrapping_add(k));
        let res = monad_matrices(&x).residual_summary();
        f.expect(res == "zero", || format!("sample {k}: b a - z0^2 mu has {res}"));
    }
    for k in 0..SAMPLES {
        let s = base.wrapping_add(SAMPLES + k);
        let x = AdhmData::random(1 + (k % 3) as usize, 1, s);
        let y = AdhmData::random(1 + (k % 2) as usize, 1, s.wrapping_add(1 << 32));
        let dir = (rat(1 + (k % 5) as i64, 1), rat(k as i64 % 7 - 3, 2));
        let whole = direct_sum(&x, &y, FramingMode::Stacked).and_then(|xy| spectrum_projection(&xy, (&dir.0, &dir.1)));
        let parts = spectrum_projection(&x, (&dir.0, &dir.1))
            .and_then(|a| Ok(a.union(&spectrum_projection(&y, (&dir.0, &dir.1))?)));
        match (whole, parts) {
            (Ok(w), Ok(pq)) => f.expect(w == pq, || format!("pair {k}: spectrum of the sum differs from the union")),
            (Err(e), _) | (_, Err(e)) => f.fail(format!("pair {k}: {e}")),
        }
    }
    f.note(format!("{SAMPLES} monad residuals and {SAMPLES} direct-sum spectra"));
    let params = object(json!({ "max_degree": max_degree, "rank": rank, "samples": SAMPLES }));
    Ok(f.finish("adhm", params, p.seed, Status::Pass))
}
