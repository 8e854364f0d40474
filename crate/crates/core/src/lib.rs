//! Friezes over finite fields: arithmetic in `F_q`, frieze construction and
//! tameness checks, exhaustive enumeration, closed-form counts, moduli of
//! point configurations on `P^1(F_q)`, and cyclic set partitions.
//!
//! Runnable entry points live in `examples/`:
//!
//! * `field_arithmetic` builds fields and the projective line
//! * `build_frieze` renders a frieze from its first row and checks tameness
//! * `enumerate_friezes` counts friezes and lists orbit representatives
//! * `closed_forms` tabulates the counting formulas
//! * `moduli_orbits` counts `PGL_2` orbits of configurations
//! * `frieze_configuration_bijection` maps friezes to configurations and back
//! * `cyclic_partitions` enumerates cyclic partitions and checks the identity
//!
//! The `frieze` binary wraps the same functionality as a command line tool.

pub mod cli;
pub mod formulas;
pub mod frieze;
pub mod gf;
pub mod moduli;
pub mod partitions;
pub mod search;

use thiserror::Error;

/// Estimated matrix multiplications allowed before a search refuses to run.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// Any error raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Field(#[from] gf::FieldError),
    #[error(transparent)]
    Frieze(#[from] frieze::FriezeError),
    #[error(transparent)]
    Formula(#[from] formulas::FormulaError),
    #[error(transparent)]
    Moduli(#[from] moduli::ModuliError),
    #[error(transparent)]
    Partition(#[from] partitions::PartitionError),
    #[error(transparent)]
    Search(#[from] search::SearchError),
}
