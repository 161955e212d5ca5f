//! Exact computations around Duke–Imamoglu–Ikeda lifts: level-one eigenforms,
//! the Kohnen plus space, modular symbols and critical values, Siegel series,
//! lift Fourier coefficients and congruence-prime detection.

// Index loops mirror the matrix formulas they implement.
#![allow(clippy::needless_range_loop, clippy::type_complexity, clippy::too_many_arguments)]

pub mod congr;
pub mod error;
pub mod exactnum;
pub mod forms1;
pub mod halfint;
pub mod lift;
pub mod lser;
pub mod msym;
pub mod par;
pub mod qforms;
pub mod siegel;

pub use error::{Error, Result};
