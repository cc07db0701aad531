//! Theta constants of genus 1 and 2.

mod characteristic;
pub mod fast;
mod point;
mod series;

pub use characteristic::{even_characteristics, Characteristic};
pub use point::{SiegelPoint, SiegelPoint1, SiegelPoint2};
pub use series::{theta1, theta2, theta2_dx1, ThetaTable};

pub(crate) use series::theta1_all;
