//! Exact coefficient arithmetic in the equivariant variables.

pub mod gcd;
pub mod laurent;
pub mod parse;
pub mod poly;
pub mod ratfunc;
pub mod upoly;
pub mod vars;

pub use gcd::gcd;
pub use laurent::{laurent_at_infinity, LaurentSeries};
pub use parse::parse_rf;
pub use poly::{Mono, Poly};
pub use ratfunc::RationalFunction;
pub use upoly::UPoly;
pub use vars::{Var, VarKind, VarSpec, MAX_A, NVARS};

use crate::error::Result;
use crate::scalar::Field;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Binary arithmetic with an explicit error for division by zero.
pub fn rf_arith<C: Field>(
    op: ArithOp,
    x: &RationalFunction<C>,
    y: &RationalFunction<C>,
) -> Result<RationalFunction<C>> {
    Ok(match op {
        ArithOp::Add => x + y,
        ArithOp::Sub => x - y,
        ArithOp::Mul => x * y,
        ArithOp::Div => x.checked_div(y)?,
    })
}

/// `e1 * e2` and `e1 + e2` as rational functions.
pub fn eps_product<C: Field>() -> RationalFunction<C> {
    RationalFunction::var(Var::E1) * RationalFunction::var(Var::E2)
}

pub fn eps_sum<C: Field>() -> RationalFunction<C> {
    RationalFunction::var(Var::E1) + RationalFunction::var(Var::E2)
}
