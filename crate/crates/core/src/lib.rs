//! Siegel modular forms of degree one and two, Sp4(Z) reduction, integrals over the
//! modular curve and the finite-fiber polynomial system of the Siegel threefold,
//! assembled into an exact value for the arithmetic volume of A2.

pub mod error;
pub mod fiber;
pub mod forms;
pub mod identities;
pub mod numerics;
pub mod quadrature;
pub mod symplectic;
pub mod theta;
pub mod volume;

pub use error::{Error, Result};
