//! Constructions of graphs with a prescribed endomorphism monoid, plus an exact
//! endomorphism enumerator used to verify them.

pub mod algebra;
pub mod endo;
pub mod graphcore;
pub mod blowup;
pub mod cayley;
pub mod sip;
pub mod lattice_encoding;
pub mod retracts;
pub mod io;
pub mod pipeline;
