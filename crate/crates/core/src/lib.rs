//! Exact certificates for complete intersections, Koszul homology and
//! freeness of filtered algebras over central subalgebras.
//!
//! The commutative side ([`poly`], [`groebner`], [`koszul`], [`ciproof`],
//! [`freecert`]) decides complete-intersection and freeness questions for
//! graded algebras; the noncommutative side ([`ncalg`], [`yangian`],
//! [`current`]) builds truncated Yangians and truncated current algebras,
//! their central elements, and lifts the certificates to filtered algebras.

pub mod algebra;
pub mod battery;
pub mod ciproof;
pub mod current;
pub mod error;
pub mod freecert;
pub mod groebner;
pub mod koszul;
pub mod linalg;
pub mod ncalg;
pub mod poly;
pub mod yangian;

pub use error::{Error, Result};

/// Version tag carried by every JSON document this crate emits.
pub const SCHEMA: &str = "ffk/1";
