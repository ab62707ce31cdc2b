//! Exact computation of the Gessel numbers `P(n, r)` and their duals
//! `Q(n, r)`, cross-checked against brute-force lattice path counts.
//!
//! The formula layer is generic over the count type (see
//! [`exact_arith::Count`]). [`Nat`] is the arbitrary-precision default;
//! fixed-width integers work too and report overflow instead of wrapping.

pub mod error;
pub mod exact_arith;
pub mod formulas;
pub mod harness;
pub mod lattice_oracle;
pub mod mutation;
pub mod output;
pub mod table;

pub use error::{Error, Result};
pub use exact_arith::{ArithError, Count, Tables};
pub use formulas::{DivisorWitness, Gessel, GesselIndex, MinimalityReport};
pub use harness::{
    run_identity, run_suite, IdentityId, IdentityReport, Side, SuiteConfig, SuiteResult,
};
pub use lattice_oracle::{DiagonalBan, GridPoint, PathProblem};
pub use mutation::Mutation;
pub use output::OutputFormat;
pub use table::{Fix, Kind, Method, SequenceTable, TableEntry};

/// Arbitrary-precision non-negative integer.
pub type Nat = num_bigint::BigUint;

/// Formula engine over arbitrary-precision counts.
pub type NatGessel = Gessel<Nat>;
/// Formula engine over 64-bit counts; overflows are reported as errors.
pub type WordGessel = Gessel<u64>;
/// Formula engine over 128-bit counts.
pub type WideGessel = Gessel<u128>;

pub type NatTables = Tables<Nat>;
pub type NatSuiteResult = SuiteResult<Nat>;
