//! Integration over the modular curve with analytic cusp tails.

pub mod gk;
mod integrate;
mod rohrlich;

pub use integrate::{
    in_fundamental_domain, integrate_a1, A1Integrand, IntegralResult, IntegrationConfig, QuadratureMode,
};
pub use rohrlich::{
    elliptic_divisor, log_norm_delta, rohrlich_rhs, rohrlich_rhs_from_divisor, term_b_numeric, DivisorEntry,
    DivisorPoint, TermBNumeric,
};
