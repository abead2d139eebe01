//! Finite bounded lattices, binary operation tables (t-norms, t-conorms,
//! uninorms), unary closure/interior operators, and table constructions that
//! extend an operation from a sublattice to a larger carrier.

pub mod binop;
pub mod construct;
pub mod enumerate;
pub mod io;
pub mod lattice;
pub mod reconstruct;
pub mod unary;

pub use binop::{AxiomReport, BinOpTable, ClassificationProfile, OpError, Verdict};
pub use construct::{ConditionReport, ConstructError, Request};
pub use enumerate::{EnumConfig, IffResult};
pub use lattice::{Interval, Lattice, LatticeError};
pub use unary::{UnaryOpTable, UnaryReport};
