//! Points of the upper half-spaces as JSON.

use serde::Deserialize;
use serde_json::{json, Value};
use siegel_volume::numerics::Cx;
use siegel_volume::theta::{SiegelPoint, SiegelPoint1, SiegelPoint2};
use siegel_volume::{Error, Result};

#[derive(Deserialize)]
#[serde(untagged)]
enum TauJson {
    Degree2 { x: [[f64; 2]; 2], y: [[f64; 2]; 2] },
    Degree1 { x: f64, y: f64 },
}

/// `{"x": …, "y": …}` for degree 1, `{"x": [[…]], "y": [[…]]}` for degree 2.
pub fn parse_tau(s: &str, prec: u32) -> Result<SiegelPoint> {
    let t: TauJson = serde_json::from_str(s).map_err(|e| Error::Parse(format!("tau: {e}")))?;
    match t {
        TauJson::Degree1 { x, y } => Ok(SiegelPoint1::from_f64(x, y, prec)?.into()),
        TauJson::Degree2 { x, y } => {
            if x[0][1] != x[1][0] || y[0][1] != y[1][0] {
                return Err(Error::InvalidPoint("tau must be symmetric".into()));
            }
            Ok(SiegelPoint2::from_f64(x, y, prec)?.into())
        }
    }
}

pub fn cx_json(z: &Cx) -> Value {
    json!({ "re": z.re.to_f64(), "im": z.im.to_f64() })
}

pub fn tau_json(tau: &SiegelPoint) -> Value {
    match tau {
        SiegelPoint::Degree1(t) => json!({ "x": t.x().to_f64(), "y": t.y().to_f64() }),
        SiegelPoint::Degree2(t) => json!({ "x": t.x_f64(), "y": t.y_f64() }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_degrees() {
        assert_eq!(parse_tau(r#"{"x": 0.1, "y": 1.2}"#, 64).unwrap().degree(), 1);
        let t = parse_tau(r#"{"x": [[0, 0.1], [0.1, 0]], "y": [[1, 0.2], [0.2, 1.5]]}"#, 64).unwrap();
        assert_eq!(t.degree(), 2);
        assert_eq!(tau_json(&t)["y"][1][1], 1.5);
    }

    #[test]
    fn rejects_bad_points() {
        assert!(parse_tau(r#"{"x": 0.1, "y": -1}"#, 64).is_err());
        assert!(parse_tau(r#"{"x": [[0, 0.1], [0.2, 0]], "y": [[1, 0], [0, 1]]}"#, 64).is_err());
        assert!(parse_tau("[1, 2]", 64).is_err());
    }
}
