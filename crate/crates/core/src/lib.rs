//! Shifted meta-Fibonacci sequences and the objects they count: leaves of an
//! infinite binary forest, binary words, generating functions, restricted
//! compositions, and extremal binary compact codes.
//!
//! Each characterization is computed independently so the identities between
//! them can be checked numerically; see [`verify`].

pub mod bfile;
pub mod codes;
pub mod compositions;
pub mod metafib;
pub mod oeis;
pub mod series;
pub mod treemodel;
pub mod verify;
pub mod words;

pub use metafib::{SequenceTable, Shift};
