//! Exact computations with quiver representations and modules over the
//! preprojective algebra, aimed at the extension product `*` on the
//! irreducible components of Lusztig's nilpotent varieties.
//!
//! Everything runs over a large prime field; "generic" points are sampled
//! at random and every randomized answer is repeated over several seeded
//! trials.

pub mod catalog;
pub mod coxeter;
pub mod error;
pub mod exactalg;
pub mod io;
pub mod multiset;
pub mod par;
pub mod pimod;
pub mod qrep;
pub mod starops;
pub mod suites;
pub mod taudata;
pub mod quiver;

pub use error::{Error, Result};
