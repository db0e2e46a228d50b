use std::fmt;

use crate::error::{Error, Result};

/// Number of gauge variables `a1..a6` available.
pub const MAX_A: usize = 6;
/// Total number of variable slots: `a1..a6, e1, e2`.
pub const NVARS: usize = MAX_A + 2;

/// Index of a variable slot.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(pub(crate) usize);

impl Var {
    /// `a_k`, one-based as in the printed grammar.
    pub fn a(k: usize) -> Var {
        assert!((1..=MAX_A).contains(&k), "a{k} out of range");
        Var(k - 1)
    }

    pub const E1: Var = Var(MAX_A);
    pub const E2: Var = Var(MAX_A + 1);

    pub fn index(self) -> usize {
        self.0
    }

    pub fn is_equivariant_eps(self) -> bool {
        self.0 >= MAX_A
    }

    pub fn name(self) -> String {
        match self.0 {
            i if i < MAX_A => format!("a{}", i + 1),
            i if i == MAX_A => "e1".to_owned(),
            _ => "e2".to_owned(),
        }
    }

    pub fn parse(name: &str) -> Result<Var> {
        match name {
            "e1" => Ok(Var::E1),
            "e2" => Ok(Var::E2),
            _ => name
                .strip_prefix('a')
                .and_then(|k| k.parse::<usize>().ok())
                .filter(|k| (1..=MAX_A).contains(k))
                .map(Var::a)
                .ok_or_else(|| Error::Parse(format!("unknown variable `{name}`"))),
        }
    }

    pub fn all() -> impl Iterator<Item = Var> {
        (0..NVARS).map(Var)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VarKind {
    Gauge,
    Epsilon,
}

/// The ordered list of variables a computation declares.
///
/// Polynomials always carry exponent vectors over all [`NVARS`] slots; a
/// `VarSpec` records which of them a context actually uses (the `a`-variables
/// `a1..aN` followed by `e1, e2`) and is used to validate parsed input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarSpec {
    vars: Vec<(Var, VarKind)>,
}

impl VarSpec {
    /// `a1..a_n, e1, e2`.
    pub fn with_gauge_rank(n: usize) -> Result<VarSpec> {
        if n > MAX_A {
            return Err(Error::InvalidInput(format!(
                "at most {MAX_A} gauge variables are supported, got {n}"
            )));
        }
        let mut vars: Vec<_> = (1..=n).map(|k| (Var::a(k), VarKind::Gauge)).collect();
        vars.push((Var::E1, VarKind::Epsilon));
        vars.push((Var::E2, VarKind::Epsilon));
        Ok(VarSpec { vars })
    }

    pub fn full() -> VarSpec {
        VarSpec::with_gauge_rank(MAX_A).expect("MAX_A is valid")
    }

    pub fn names(&self) -> Vec<String> {
        self.vars.iter().map(|(v, _)| v.name()).collect()
    }

    pub fn contains(&self, v: Var) -> bool {
        self.vars.iter().any(|(w, _)| *w == v)
    }

    pub fn kind(&self, v: Var) -> Option<VarKind> {
        self.vars.iter().find(|(w, _)| *w == v).map(|(_, k)| *k)
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.vars.iter().map(|(v, _)| *v)
    }

    pub fn gauge_rank(&self) -> usize {
        self.vars.iter().filter(|(_, k)| *k == VarKind::Gauge).count()
    }
}

impl Default for VarSpec {
    fn default() -> Self {
        VarSpec::with_gauge_rank(2).expect("rank 2 is valid")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for v in Var::all() {
            assert_eq!(Var::parse(&v.name()).unwrap(), v);
        }
        assert!(Var::parse("a7").is_err());
        assert!(Var::parse("x").is_err());
    }

    #[test]
    fn spec_lists_gauge_then_eps() {
        let spec = VarSpec::with_gauge_rank(3).unwrap();
        assert_eq!(spec.names(), ["a1", "a2", "a3", "e1", "e2"]);
        assert_eq!(spec.gauge_rank(), 3);
        assert!(!spec.contains(Var::a(4)));
        assert_eq!(spec.kind(Var::E2), Some(VarKind::Epsilon));
    }
}
