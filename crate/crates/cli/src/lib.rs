//! Registry of verification checks with deterministic JSON reports.

mod checks;
pub mod report;

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::Serialize;

pub use report::{CheckReport, Status, SuiteReport};

/// Flags shared by every check. Unset values fall back to the check's defaults.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Params {
    pub max_degree: Option<usize>,
    pub seed: u64,
    pub ty: Option<String>,
    pub rank: Option<usize>,
}

impl Params {
    pub fn degree(max_degree: usize) -> Self {
        Params { max_degree: Some(max_degree), ..Params::default() }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_rank(mut self, rank: usize) -> Self {
        self.rank = Some(rank);
        self
    }

    pub fn with_type(mut self, ty: &str) -> Self {
        self.ty = Some(ty.to_owned());
        self
    }

    pub(crate) fn max_degree_or(&self, default: usize, cap: usize) -> Result<usize, UsageError> {
        bounded("--max-degree", self.max_degree.unwrap_or(default), 0, cap)
    }

    pub(crate) fn rank_or(&self, default: usize, cap: usize) -> Result<usize, UsageError> {
        bounded("--rank", self.rank.unwrap_or(default), 1, cap)
    }
}

fn bounded(flag: &str, value: usize, lo: usize, hi: usize) -> Result<usize, UsageError> {
    if (lo..=hi).contains(&value) {
        Ok(value)
    } else {
        Err(UsageError::OutOfRange { flag: flag.to_owned(), value, lo, hi })
    }
}

/// Bad invocation; maps to exit code 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UsageError {
    UnknownCheck(String),
    OutOfRange { flag: String, value: usize, lo: usize, hi: usize },
    Invalid { flag: String, reason: String },
}

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UsageError::UnknownCheck(name) => write!(f, "unknown check `{name}` (see `fockforge list`)"),
            UsageError::OutOfRange { flag, value, lo, hi } => {
                write!(f, "{flag} {value} is outside the supported range {lo}..={hi}")
            }
            UsageError::Invalid { flag, reason } => write!(f, "{flag}: {reason}"),
        }
    }
}

impl std::error::Error for UsageError {}

#[derive(Clone, Debug, Serialize)]
pub struct FlagInfo {
    pub name: &'static str,
    pub default: &'static str,
    pub help: &'static str,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckInfo {
    pub name: &'static str,
    pub module: &'static str,
    pub summary: &'static str,
    pub flags: Vec<FlagInfo>,
    #[serde(skip)]
    run: fn(&Params) -> Result<CheckReport, UsageError>,
}

const fn flag(name: &'static str, default: &'static str, help: &'static str) -> FlagInfo {
    FlagInfo { name, default, help }
}

const SEED: FlagInfo = flag("--seed", "0", "seed for every random choice");

/// Every registered check, in report order.
pub fn registry() -> Vec<CheckInfo> {
    let entry = |name, module, summary, flags: Vec<FlagInfo>, run| CheckInfo { name, module, summary, flags, run };
    vec![
        entry(
            "heisenberg",
            "fock",
            "commutators of modes |m|,|n| <= 4 on Cartan and gl lattices",
            vec![flag("--max-degree", "4", "highest Fock degree"), flag("--rank", "3", "largest lattice rank")],
            checks::heisenberg,
        ),
        entry(
            "virasoro",
            "virasoro",
            "bracket residuals |m|,|n| <= 3 and the vacuum L0 eigenvalue",
            vec![flag("--max-degree", "5", "truncation degree")],
            checks::virasoro,
        ),
        entry(
            "integral-virasoro",
            "virasoro",
            "integral-form brackets and the rescaling against standard modes",
            vec![flag("--max-degree", "5", "truncation degree")],
            checks::integral_virasoro,
        ),
        entry(
            "lehn",
            "virasoro",
            "commutator of the cubic c1 operator with P_n, |n| <= 3",
            vec![flag("--max-degree", "5", "truncation degree")],
            checks::lehn,
        ),
        entry(
            "reflection",
            "rmatrix",
            "intertwining, involution, classical r and degree-one eigenvalues",
            vec![flag("--max-degree", "4", "highest degree for the involution and r")],
            checks::reflection,
        ),
        entry(
            "expansion",
            "rmatrix",
            "sign pattern of R = 1 + (s/u) r + O(u^-2) per degree",
            vec![flag("--max-degree", "3", "highest degree")],
            checks::expansion,
        ),
        entry(
            "ybe",
            "rmatrix",
            "Yang-Baxter residual at seeded rational parameters and symbolically at degree one",
            vec![flag("--max-degree", "2", "highest degree"), SEED],
            checks::ybe,
        ),
        entry(
            "wlattice",
            "wlattice",
            "integrality, the degree-one index divisor and sl3 intersections",
            vec![flag("--max-degree", "5", "highest degree for integrality"), SEED],
            checks::wlattice,
        ),
        entry(
            "kernel",
            "wlattice",
            "diagonal annihilator kernels against the IH series and their L_n stability",
            vec![flag("--max-degree", "5", "highest degree")],
            checks::kernel,
        ),
        entry(
            "characters",
            "characters",
            "Gieseker, IH and level-one multiplicity series",
            vec![flag("--max-degree", "10", "series order"), flag("--type", "all", "single Lie type such as G2")],
            checks::characters,
        ),
        entry(
            "frenkel-kac",
            "characters",
            "Fock dimensions against simply-laced level-one multiplicities",
            vec![flag("--max-degree", "10", "series order"), flag("--rank", "3", "largest rank")],
            checks::frenkel_kac,
        ),
        entry(
            "adhm",
            "adhm",
            "fixed points, monad residuals, spectra of direct sums and fixed-point counts",
            vec![flag("--max-degree", "6", "largest instanton number"), flag("--rank", "3", "largest framing rank"), SEED],
            checks::adhm,
        ),
    ]
}

/// Checks whose name or module starts with `prefix`.
pub fn list_checks(prefix: Option<&str>) -> Vec<CheckInfo> {
    registry()
        .into_iter()
        .filter(|c| prefix.map_or(true, |p| c.name.starts_with(p) || c.module.starts_with(p)))
        .collect()
}

pub fn run_check(name: &str, params: &Params) -> Result<CheckReport, UsageError> {
    let info = registry()
        .into_iter()
        .find(|c| c.name == name)
        .ok_or_else(|| UsageError::UnknownCheck(name.to_owned()))?;
    (info.run)(params)
}

/// Level one of the Langlands-dual affine algebra for a `--type` value.
pub fn level_one_series(ty: &str, max_degree: usize) -> Result<CheckReport, UsageError> {
    checks::characters(&Params::degree(max_degree).with_type(ty))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Profile {
    /// Every check at degree at most three.
    Quick,
    /// Degrees up to five, five Yang-Baxter seeds.
    Full,
}

impl Profile {
    pub fn name(self) -> &'static str {
        match self {
            Profile::Quick => "quick",
            Profile::Full => "full",
        }
    }

    /// The `(check, parameters)` runs making up the profile.
    pub fn plan(self) -> Vec<(&'static str, Params)> {
        let d = Params::degree;
        match self {
            Profile::Quick => vec![
                ("heisenberg", d(3)),
                ("virasoro", d(3)),
                ("integral-virasoro", d(3)),
                ("lehn", d(3)),
                ("reflection", d(3)),
                ("expansion", d(3)),
                ("ybe", d(2)),
                ("wlattice", d(3)),
                ("kernel", d(3)),
                ("characters", d(10)),
                ("frenkel-kac", d(10)),
                ("adhm", d(3)),
            ],
            Profile::Full => {
                let mut plan = vec![
                    ("heisenberg", d(4)),
                    ("virasoro", d(5)),
                    ("integral-virasoro", d(5)),
                    ("lehn", d(5)),
                    ("reflection", d(4)),
                    ("expansion", d(3)),
                ];
                plan.extend((1..=5).map(|s| ("ybe", d(2).with_seed(s))));
                plan.extend([
                    ("wlattice", d(5)),
                    ("kernel", d(5)),
                    ("characters", d(10)),
                    ("frenkel-kac", d(10)),
                    ("adhm", d(6)),
                ]);
                plan
            }
        }
    }
}

impl FromStr for Profile {
    type Err = UsageError;

    fn from_str(s: &str) -> Result<Self, UsageError> {
        match s {
            "quick" => Ok(Profile::Quick),
            "full" => Ok(Profile::Full),
            _ => Err(UsageError::Invalid { flag: "--profile".into(), reason: format!("expected quick or full, got `{s}`") }),
        }
    }
}

/// Runs the profile's checks on separate threads; reports keep plan order.
pub fn run_suite(profile: Profile) -> SuiteReport {
    run_suite_timed(profile).0
}

/// As [`run_suite`], with each check's wall-clock time for human summaries.
pub fn run_suite_timed(profile: Profile) -> (SuiteReport, Vec<Duration>) {
    let plan = profile.plan();
    let results: Vec<(CheckReport, Duration)> = std::thread::scope(|s| {
        let handles: Vec<_> = plan
            .iter()
            .map(|(name, params)| {
                std::thread::Builder::new()
                    .name((*name).to_owned())
                    .stack_size(STACK_SIZE)
                    .spawn_scoped(s, move || {
                        let start = Instant::now();
                        let report = run_check(name, params).expect("plan is valid");
                        (report, start.elapsed())
                    })
                    .expect("spawn check thread")
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("check thread")).collect()
    });
    let (reports, times) = results.into_iter().unzip();
    (SuiteReport::new(profile.name(), reports), times)
}

const STACK_SIZE: usize = 64 << 20;
