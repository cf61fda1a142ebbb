//! Entanglement-assisted operator algebra quantum error correction.
//!
//! The crate models codes given by an `n`-qubit Pauli group `H`, its Abelian
//! extension `S` on `n + e` qubits, gauge and logical pairs and a coset
//! transversal, and provides correctability tests, distance enumeration,
//! the classical/quantum split analysis and the gauge-fixing and
//! clean-qubit constructions.

pub mod catalog;
pub mod code;
pub mod code_io;
pub mod constructions;
pub mod correct;
pub mod eacq;
pub mod gf2;
pub mod pauli;
pub mod reproduce;
pub mod search;
pub mod symplectic;

pub use code::{CodeBuilder, CodeError, CodeParameters, EaoaqecCode, OaqecCode, ValidationReport};
pub use pauli::{Pauli1, PauliError, PauliOperator};
pub use symplectic::{GeneratorSet, SymplecticDecomposition, SymplecticError};
