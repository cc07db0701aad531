//! The symplectic group Sp₄(ℤ), its action on the Siegel upper half-space, and reduction.

mod matrix;
mod reduce;

pub use matrix::{Mat2, Sl2Matrix, SymplecticMatrix};
pub use reduce::{
    is_reduced2, minkowski_reduce_y, reduce1, reduce2, CandidateSet, ReductionResult, ReductionResult1,
    ReductionResult2,
};
