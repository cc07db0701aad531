//! The finite-fiber polynomial system of the Siegel threefold in `ℙ⁴`.

mod enumerate;
mod poly;
mod reconstruct;
mod system;

pub use enumerate::{enumerate_solutions, ProjectivePointFp, MAX_PRIME};
pub use poly::{Exponent, IntegerPolynomial5, ModPoly};
pub use reconstruct::{
    normal_form_monomials, reconstruct_polynomial, reconstruction_to_text, Reconstruction, RECONSTRUCTION_SEED,
};
pub use system::{
    chi10_squared_y, e4_y, linear_forms, quartic, y_coordinates, y_from_table, FiberSampler, FiberTarget,
    QUARTIC_LEAD,
};
