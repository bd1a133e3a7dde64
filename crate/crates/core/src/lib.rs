//! Bent functions in an even number of variables built from near-bent
//! functions in one variable fewer, together with the finite-field,
//! Walsh-spectrum and trace-representation machinery they need.
//!
//! A bent function `F` on `GF(2^{2t-1}) × GF(2)` is handled through its two
//! components `F(x, 0) = f0(x)` and `F(x, 1) = f1(x)`; see [`tvr`].

pub mod boolfn;
pub mod constructions;
pub mod error;
pub mod fixtures;
pub mod gf2m;
pub mod spectrum;
pub mod tracerep;
pub mod tvr;

pub use boolfn::BooleanFunction;
pub use error::{Error, Result};
pub use gf2m::{Element, FieldContext};
pub use spectrum::{SpectrumClass, WalshSpectrum};
pub use tracerep::TraceForm;
pub use tvr::TvrPair;
