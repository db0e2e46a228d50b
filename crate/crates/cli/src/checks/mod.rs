//! One function per registered check.

mod algebra;
mod counting;
mod lattice;
mod reflection;

pub(crate) use algebra::{heisenberg, integral_virasoro, lehn, virasoro};
pub(crate) use counting::{adhm, characters, frenkel_kac};
pub(crate) use lattice::{kernel, wlattice};
pub(crate) use reflection::{expansion, reflection, ybe};

use serde_json::{Map, Value};

/// The object inside a `json!({...})` literal.
pub(crate) fn object(v: Value) -> Map<String, Value> {
    match v {
        Value::Object(m) => m,
        other => panic!("expected a JSON object, got {other}"),
    }
}
