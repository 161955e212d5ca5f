//! Numerical L-values, Petersson norms and adjoint L-values.

pub mod ball;
pub mod consistency;
pub mod adjoint;
pub mod embed;
pub mod halfpet;
pub mod hecke;
pub mod special;

pub use adjoint::{adjoint_normalized, adjoint_normalized_many, adjoint_terms_needed, l_adjoint_numeric, petersson_numeric, AdjointValue, DEFAULT_BITS};
pub use ball::{BigReal, CBall};
pub use consistency::ratio_deviation;
