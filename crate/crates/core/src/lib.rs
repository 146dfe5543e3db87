//! Exact-computation toolkit for k-uniform C-colored hypergraphs:
//! extremal values over choice hypergraphs, exact labeled property counts,
//! monotone-property machinery, and a verifiable partite regularity
//! calculus with exceptional-color diagnostics.

pub mod budget;
pub mod census;
mod embed;
pub mod error;
pub mod extremal;
pub mod hypercore;
pub mod io;
pub mod numeric;
pub mod property;
pub mod regdiag;
pub mod verify;

pub use budget::SearchBudget;
pub use error::{Error, Result};
