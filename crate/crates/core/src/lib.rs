//! Stallings core graphs and the dependence theory of finitely generated
//! subgroups of free groups: dependence tests, the dependent subgroup, its
//! closure, and univariate equations satisfied by dependent elements.

pub mod cli;
pub mod closure;
pub mod dependence;
pub mod equations;
pub mod error;
pub mod stallings;
pub mod words;

pub use error::{Error, Result};
pub use stallings::{build_core, CoreGraph};
pub use words::{Alphabet, FormalWord, Letter, Word};
