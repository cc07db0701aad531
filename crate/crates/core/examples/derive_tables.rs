//! Re-derive the frozen data tables under `data/` from scratch.
//!
//! ```text
//! cargo run --release --example derive_tables -- data
//! ```

use std::path::PathBuf;

use siegel_volume::fiber::{reconstruct_polynomial, reconstruction_to_text, FiberTarget};
use siegel_volume::forms::calibrate_e6_signs_report;
use siegel_volume::numerics::PrecisionConfig;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "data".into()));
    let cfg = PrecisionConfig::with_digits(30)?;

    let report = calibrate_e6_signs_report(&cfg)?;
    eprintln!(
        "E6 signs: splitting {:.2e}, invariance {:.2e}, {} flips checked, {} alternatives",
        report.splitting_max_rel,
        report.invariance_max_rel,
        report.flips_checked,
        report.alternatives.len()
    );
    std::fs::write(dir.join("e6_signs.txt"), report.system.to_table_text()?)?;

    for (target, file) in [(FiberTarget::E6, "e6_y.txt"), (FiberTarget::Chi12, "chi12_y.txt")] {
        let r = reconstruct_polynomial(target, &cfg)?;
        eprintln!(
            "{target}: scale {}, {} terms, rounding {:.2e}, fit {:.2e}",
            r.scale,
            r.polynomial.len(),
            r.rounding_residual,
            r.fit_residual
        );
        std::fs::write(dir.join(file), reconstruction_to_text(&r))?;
    }
    Ok(())
}
