//! The nine acceptance criteria, one line each. Runs without the libtest
//! harness so the lines are always printed.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use fockforge::{level_one_series, run_check, run_suite, CheckReport, Params, Profile, Status};
use fockforge_core::rmatrix::{expansion_report, ReflectionConvention};

type Outcome = Result<String, String>;

fn expect_status(report: &CheckReport, status: Status) -> Outcome {
    if report.status == status {
        Ok(format!("{} {}", report.check, report.status))
    } else {
        Err(format!("{} {}: {}", report.check, report.status, report.witnesses.join("; ")))
    }
}

fn check(name: &str, params: Params, status: Status) -> Outcome {
    let report = run_check(name, &params).map_err(|e| e.to_string())?;
    expect_status(&report, status)
}

fn all(outcomes: impl IntoIterator<Item = Outcome>) -> Outcome {
    let mut notes = Vec::new();
    for o in outcomes {
        notes.push(o?);
    }
    Ok(notes.join(", "))
}

fn heisenberg() -> Outcome {
    check("heisenberg", Params::degree(4).with_rank(3), Status::Pass)
}

fn virasoro() -> Outcome {
    all([
        check("virasoro", Params::degree(5), Status::Pass),
        check("integral-virasoro", Params::degree(5), Status::Pass),
    ])
}

fn lehn() -> Outcome {
    check("lehn", Params::degree(5), Status::Pass)
}

fn reflection() -> Outcome {
    let rep = expansion_report(3).map_err(|e| e.to_string())?;
    let uniform = if rep.uniform.contains(&ReflectionConvention::UNIFORM) {
        Ok(format!("uniform convention {}", ReflectionConvention::UNIFORM))
    } else {
        Err("the uniform convention fails the first-order expansion".to_owned())
    };
    all([
        check("reflection", Params::degree(4), Status::Pass),
        check("expansion", Params::degree(3), Status::Measured),
        uniform,
    ])
}

fn yang_baxter() -> Outcome {
    let reports: Vec<CheckReport> = (1..=5)
        .map(|s| run_check("ybe", &Params::degree(2).with_seed(s)).map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    for (k, r) in reports.iter().enumerate() {
        if reports[..k].iter().any(|q| q.parameters == r.parameters) {
            return Err(format!("seed {} repeats an earlier parameter point", r.seed));
        }
    }
    all(reports.iter().map(|r| expect_status(r, Status::Pass).map(|_| format!("seed {}", r.seed))))
}

fn characters() -> Outcome {
    let g2 = level_one_series("G2", 4).map_err(|e| e.to_string())?;
    let g2 = if g2.witnesses == ["1", "1", "2", "4", "6"] {
        Ok("G2 1,1,2,4,6".to_owned())
    } else {
        Err(format!("G2 gives {}", g2.witnesses.join(",")))
    };
    let b2 = level_one_series("B2", 2).map_err(|e| e.to_string())?;
    let b2 = if b2.witnesses.get(2).map(String::as_str) == Some("3") {
        Ok("B2 d=2 3".to_owned())
    } else {
        Err(format!("B2 gives {}", b2.witnesses.join(",")))
    };
    all([
        check("characters", Params::degree(10), Status::Pass),
        check("frenkel-kac", Params::degree(10).with_rank(3), Status::Pass),
        g2,
        b2,
    ])
}

fn wlattice() -> Outcome {
    let first = run_check("wlattice", &Params::degree(5).with_seed(1)).map_err(|e| e.to_string())?;
    let again = run_check("wlattice", &Params::degree(5).with_seed(1)).map_err(|e| e.to_string())?;
    let same = if first == again { Ok("deterministic per seed".to_owned()) } else { Err("reruns differ".to_owned()) };
    all([expect_status(&first, Status::Pass), check("kernel", Params::degree(5), Status::Pass), same])
}

fn adhm() -> Outcome {
    check("adhm", Params::degree(6).with_rank(3), Status::Pass)
}

fn determinism() -> Outcome {
    let (a, b) = (run_suite(Profile::Quick), run_suite(Profile::Quick));
    if a.status != Status::Pass {
        return Err(format!("quick suite has {} failures", a.failed));
    }
    if a.to_json() != b.to_json() {
        return Err("quick suite JSON differs between runs".to_owned());
    }
    Ok(format!("{} bytes identical, {} checks", a.to_json().len(), a.checks.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, u64, fn() -> Outcome); 9] = [
        ("Heisenberg relations", 60, heisenberg),
        ("Virasoro brackets", 300, virasoro),
        ("Lehn commutators", 300, lehn),
        ("reflection operator", 600, reflection),
        ("Yang-Baxter equation", 300, yang_baxter),
        ("character series", 60, characters),
        ("W-lattice", 600, wlattice),
        ("ADHM data", 120, adhm),
        ("suite determinism", 120, determinism),
    ];
    let mut failed = 0;
    for (k, (name, budget, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(_) if took > Duration::from_secs(budget) => Err(format!("took {took:.1?}, budget {budget}s")),
            other => other,
        };
        match outcome {
            Ok(msg) => println!("criterion {}: {name}: PASS ({took:.1?}) {msg}", k + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {}: {name}: FAIL ({took:.1?}) {msg}", k + 1);
            }
        }
    }
    println!("acceptance: {} of 9 criteria pass", 9 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
