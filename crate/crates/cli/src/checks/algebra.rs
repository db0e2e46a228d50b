use fockforge_core::exact::{eps_product, eps_sum, Var};
use fockforge_core::fock::{BosonLattice, FockSpace, FockVector, Form};
use fockforge_core::scalar::{rat, Field, Ring};
use fockforge_core::virasoro::{integral_mode, lehn_commutator_residual, virasoro_mode, FeiginFuchs};
use fockforge_core::QFunc;
use num_traits::Zero;
use serde_json::json;

use super::object;
use crate::report::{CheckReport, Findings, Status};
use crate::{Params, UsageError};

const MAX_MODE: i64 = 4;
const MAX_VIRASORO_MODE: i64 = 3;

/// gl(k) and every simply-laced Cartan lattice of rank `k ≤ rank`.
fn lattices(rank: usize) -> Vec<(String, BosonLattice)> {
    let mut out = Vec::new();
    for k in 1..=rank {
        out.push((format!("gl{k}"), BosonLattice::gl(k, Form::Standard)));
        for kind in ['A', 'D', 'E'] {
            if let Ok(l) = BosonLattice::cartan(kind, k, Form::Standard) {
                out.push((format!("{kind}{k}"), l));
            }
        }
    }
    out
}

pub(crate) fn heisenberg(p: &Params) -> Result<CheckReport, UsageError> {
    let max_degree = p.max_degree_or(4, 6)?;
    let rank = p.rank_or(3, 4)?;
    let e = eps_product::<fockforge_core::Rational>();
    let mut f = Findings::default();
    let mut count = 0usize;
    for (name, lattice) in lattices(rank) {
        for form in [Form::Standard, Form::Integral] {
            let l = lattice.with_form(form);
            // (α_i, α_j)/e for P, and (α_i, α_j) e for ~P = e P.
            let unit = match form {
                Form::Standard => e.inv().expect("e1 e2 is nonzero"),
                Form::Integral => e.clone(),
            };
            let sp = FockSpace::<QFunc>::symbolic(l.clone());
            let r = l.rank();
            for d in 0..=max_degree {
                for mono in sp.basis(d).monomials() {
                    let v = FockSpace::basis_vector(mono);
                    for (i, j) in (0..r).flat_map(|i| (0..r).map(move |j| (i, j))) {
                        let pair = QFunc::from_rational(l.gram_entry(i, j)) * unit.clone();
                        for m in (-MAX_MODE..=MAX_MODE).filter(|&m| m != 0) {
                            let pm_v = sp.mode(i, m, &v);
                            for n in (-MAX_MODE..=MAX_MODE).filter(|&n| n != 0) {
                                let lhs = sp.mode(i, m, &sp.mode(j, n, &v)) - sp.mode(j, n, &pm_v);
                                let want = if m + n == 0 {
                                    v.scale(&(QFunc::from_i64(-m) * pair.clone()))
                                } else {
                                    FockVector::zero()
                                };
                                count += 1;
                                f.expect(lhs == want, || {
                                    format!("{name} {form}: [P{}_{m}, P{}_{n}] on {mono} gives {lhs}, expected {want}", i + 1, j + 1)
                                });
                            }
                        }
                    }
                }
            }
        }
        f.note(format!("{name}: rank {}", lattice.rank()));
    }
    f.note(format!("{count} commutators checked"));
    let params = object(json!({ "max_degree": max_degree, "rank": rank, "max_mode": MAX_MODE }));
    Ok(f.finish("heisenberg", params, p.seed, Status::Pass))
}

fn check_brackets(ff: &FeiginFuchs<QFunc>, max_degree: usize, f: &mut Findings) {
    for m in -MAX_VIRASORO_MODE..=MAX_VIRASORO_MODE {
        for n in m + 1..=MAX_VIRASORO_MODE {
            let r = ff.bracket_residual(m, n, max_degree);
            f.expect(r.is_zero(), || format!("[L_{m}, L_{n}] residual: {}", r.residual_summary()));
        }
    }
}

pub(crate) fn virasoro(p: &Params) -> Result<CheckReport, UsageError> {
    let max_degree = p.max_degree_or(5, 7)?;
    let ff = FeiginFuchs::sl2(Form::Standard);
    let mut f = Findings::default();
    check_brackets(&ff, max_degree, &mut f);
    let u = QFunc::var(Var::a(1)) - QFunc::var(Var::a(2));
    let s = eps_sum::<fockforge_core::Rational>();
    let e = eps_product::<fockforge_core::Rational>();
    let want = QFunc::from_rational(&rat(-1, 4)) * (u.clone() * u - s.clone() * s) * e.inv().expect("nonzero");
    let vac = FockVector::vacuum();
    let got = ff.apply(0, &vac);
    f.expect(got == vac.scale(&want), || format!("L0|vac> = {got}, expected {want}|vac>"));
    f.note(format!("L0|vac> = {want}|vac>"));
    f.note(format!("c = {}", ff.central_charge()));
    let params = object(json!({ "max_degree": max_degree, "max_mode": MAX_VIRASORO_MODE }));
    Ok(f.finish("virasoro", params, p.seed, Status::Pass))
}

pub(crate) fn integral_virasoro(p: &Params) -> Result<CheckReport, UsageError> {
    let max_degree = p.max_degree_or(5, 7)?;
    let ff = FeiginFuchs::sl2(Form::Standard);
    let mut f = Findings::default();
    check_brackets(&ff.with_form(Form::Integral), max_degree, &mut f);
    let e = eps_product::<fockforge_core::Rational>();
    let sp = ff.space();
    for n in -2i64..=2 {
        let (std, int) = (virasoro_mode(n, &ff, max_degree), integral_mode(n, &ff, max_degree));
        for d in 0..=max_degree {
            let Some(target) = usize::try_from(d as i64 - n).ok().filter(|&t| t <= max_degree) else {
                continue;
            };
            let (a, b) = (std.block(d).expect("stored"), int.block(d).expect("stored"));
            let (src, dst) = (sp.basis(d), sp.basis(target));
            for (j, mj) in src.monomials().iter().enumerate() {
                for (i, mi) in dst.monomials().iter().enumerate() {
                    // A monomial with k parts picks up e^k under ~P = e P.
                    let k = mj.len() as i32 - mi.len() as i32 + 1;
                    let scale = if k >= 0 { e.pow(k as u32) } else { e.pow(k.unsigned_abs()).inv().expect("nonzero") };
                    let want = a[(i, j)].clone() * scale;
                    f.expect(b[(i, j)] == want, || format!("~L_{n} on {mj}, coefficient of {mi}: {} vs {want}", b[(i, j)]));
                }
            }
        }
    }
    f.note(format!("~L_-1|vac> = {}", ff.with_form(Form::Integral).apply(-1, &FockVector::vacuum())));
    let params = object(json!({ "max_degree": max_degree, "max_mode": MAX_VIRASORO_MODE }));
    Ok(f.finish("integral-virasoro", params, p.seed, Status::Pass))
}

pub(crate) fn lehn(p: &Params) -> Result<CheckReport, UsageError> {
    let max_degree = p.max_degree_or(5, 7)?;
    let mut f = Findings::default();
    for n in [-3i64, -2, -1, 1, 2, 3] {
        match lehn_commutator_residual(n, max_degree) {
            Ok(r) => f.expect(r.is_zero(), || format!("[c1, P_{n}] residual: {}", r.residual_summary())),
            Err(e) => f.fail(format!("[c1, P_{n}]: {e}")),
        }
    }
    f.note(format!("[c1, P_n] matches for |n| <= 3 through degree {max_degree}"));
    let params = object(json!({ "max_degree": max_degree, "max_mode": 3 }));
    Ok(f.finish("lehn", params, p.seed, Status::Pass))
}
