//! Analysis and construction of tangrams — words in which every letter
//! occurs an even number of times — together with their cut numbers,
//! Gauss-style twin factorizations, avoidance searches, and an
//! entropy-compression encoder built on bounded-cut-number removal.

pub mod avoidance;
pub mod codec;
pub mod cut;
pub mod experiments;
pub mod gauss;
pub mod generators;
pub mod word;

pub use cut::{cut_number, split_number, CutOutcome, Cutting, NodeBudget, SolverError};
pub use word::{is_tangram, Letter, Word};
