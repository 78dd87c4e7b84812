//! Exact computer algebra for formal multiple Eisenstein series.

pub mod arith;
pub mod balanced;
pub mod bimould;
pub mod conjectures;
pub mod derivations;
pub mod error;
pub mod linalg;
pub mod lincomb;
pub mod modular;
pub mod mzv;
pub mod poly;
pub mod qseries;
pub mod qshuffle;
pub mod quotient;
pub mod report;
pub mod ring;
pub mod swap;
pub mod word;

pub use arith::Rational;
pub use error::{Error, Result};
pub use lincomb::LinComb;
pub use ring::{CoeffRing, RationalField};
pub use word::{AWord, BLetter, BWord, Letter, Symbol, Word, ZLetter, ZWord};
