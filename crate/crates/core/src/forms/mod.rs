//! Modular forms of degree 1 and 2 with their theta-constant normalizations.

mod calibrate;
mod eval;
pub mod fast;
mod fourier;
mod spec;
mod syzygy;
mod vanishing;

pub use calibrate::{calibrate_e6_signs, calibrate_e6_signs_report, e6_with_signs, CalibrationReport};
pub use eval::{
    degree1_values, degree2_from_table, degree2_values, delta_q_product, e6_from_fourth_powers, eval,
    even_fourth_powers, petersson_factor, petersson_norm, Degree1Values, Degree2Values,
};
pub use fourier::{fourier_coefficient, FourierGrid, DEFAULT_GRID, DEFAULT_Y};
pub use spec::{FormName, FormSpec};
pub use syzygy::{
    candidate_triple_count, enumerate_syzygous_triples, QuadrupleComplementSystem, TripleSystem,
    SIGN_TABLE_VERSION,
};
pub use vanishing::{elliptic_vanishing_order, EllipticPoint, VanishingOrder};

