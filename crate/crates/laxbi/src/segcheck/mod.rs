//! Homotopy pullbacks of finite groupoids, and Segal, 2-Segal and double
//! 2-Segal checks for simplicial groupoids.

mod check;
mod comma;
mod simplicial;

use thiserror::Error;

use crate::protoexact::ExactError;

pub use check::{
    check_2segal, check_2segal_strict, check_double_2segal, check_segal, check_square,
    segal_squares, triangulation_squares, unitality_squares, DoubleReport, OpSquare, SegReport,
    SquareCheck,
};
pub use comma::{functor_equiv, groupoid_equiv, iso_comma, GroupoidCospan, IsoComma};
pub use simplicial::{
    nerve, ConstantBisimplicial, ConstantSimplicial, DiscreteSimplicial, PathSide, PathSpace,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SegError {
    #[error("level {level} is required but the object stops at level {max}")]
    LevelMissing { level: usize, max: usize },
    #[error("bad cospan: {0}")]
    BadCospan(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}
