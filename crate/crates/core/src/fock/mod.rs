//! Bosonic Fock spaces over a lattice with a Gram form.

mod lattice;
mod operator;
mod space;
mod transport;
mod vector;

pub use lattice::{BosonLattice, Form, LatticeJson};
pub use operator::OperatorMatrix;
pub use space::{graded_dimension, Basis, FockSpace};
pub use transport::{change_of_generators, Transport, TransportMode};
pub use vector::{FockVector, Monomial, TermJson};

