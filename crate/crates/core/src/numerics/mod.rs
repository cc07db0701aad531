//! Precision management, zeta values and exact constant bookkeeping.

mod combo;
mod complex;
mod precision;
mod zeta;

pub use combo::{combo_eval, Basis, ConstantCombo};
pub use complex::Cx;
pub use precision::PrecisionConfig;
pub use zeta::{bernoulli, zeta_and_derivative, zeta_negative, zeta_prime_negative};
