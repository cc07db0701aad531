//! Globally adaptive 7/15-point Gauss–Kronrod quadrature in one dimension.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
// Gauss weights at XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

/// Integrand returning a value together with an absolute error already present in it
/// (e.g. from an inner quadrature); the carried error is integrated with the Kronrod weights.
pub trait Integrand1 {
    fn eval(&self, x: f64) -> Result<(f64, f64)>;
}

impl<F: Fn(f64) -> Result<(f64, f64)>> Integrand1 for F {
    fn eval(&self, x: f64) -> Result<(f64, f64)> {
        self(x)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
    pub intervals: usize,
    /// Interval with the largest remaining error: `(a, b, error)`.
    pub worst: (f64, f64, f64),
}

#[derive(Clone, Copy, Debug)]
struct Piece {
    a: f64,
    b: f64,
    depth: u32,
    value: f64,
    error: f64,
}

impl PartialEq for Piece {
    fn eq(&self, o: &Self) -> bool {
        self.cmp(o) == Ordering::Equal
    }
}
impl Eq for Piece {}
impl PartialOrd for Piece {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Piece {
    // by error, ties broken by position so the refinement order is deterministic
    fn cmp(&self, o: &Self) -> Ordering {
        self.error.total_cmp(&o.error).then(o.a.total_cmp(&self.a))
    }
}

fn kronrod<F: Integrand1 + ?Sized>(f: &F, a: f64, b: f64, depth: u32) -> Result<Piece> {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let (fc, ec) = f.eval(c)?;
    let mut k = WGK[7] * fc;
    let mut g = WG[3] * fc;
    let mut carried = WGK[7] * ec;
    for j in 0..7 {
        let (f1, e1) = f.eval(c - h * XGK[j])?;
        let (f2, e2) = f.eval(c + h * XGK[j])?;
        k += WGK[j] * (f1 + f2);
        carried += WGK[j] * (e1 + e2);
        if j % 2 == 1 {
            g += WG[j / 2] * (f1 + f2);
        }
    }
    let value = k * h;
    let error = ((k - g) * h).abs() + carried * h.abs();
    if !value.is_finite() {
        return Err(Error::Domain(format!("non-finite integrand on [{a}, {b}]")));
    }
    Ok(Piece { a, b, depth, value, error })
}

/// Integrate over consecutive intervals `[p₀, p₁], [p₁, p₂], …` to absolute tolerance `tol`.
pub fn integrate<F: Integrand1 + ?Sized>(
    f: &F,
    breakpoints: &[f64],
    tol: f64,
    max_depth: u32,
) -> Result<Estimate> {
    let mut heap = BinaryHeap::new();
    for w in breakpoints.windows(2) {
        if w[1] > w[0] {
            heap.push(kronrod(f, w[0], w[1], 0)?);
        }
    }
    if heap.is_empty() {
        return Ok(Estimate { value: 0.0, error: 0.0, intervals: 0, worst: (0.0, 0.0, 0.0) });
    }
    loop {
        let error: f64 = heap.iter().map(|p| p.error).sum();
        let worst = *heap.peek().expect("non-empty");
        if error <= tol {
            // sum in position order for reproducible rounding
            let mut pieces: Vec<Piece> = heap.into_vec();
            pieces.sort_by(|p, q| p.a.total_cmp(&q.a));
            let value = pieces.iter().map(|p| p.value).sum();
            return Ok(Estimate { value, error, intervals: pieces.len(), worst: (worst.a, worst.b, worst.error) });
        }
        if worst.depth >= max_depth {
            return Err(Error::QuadratureDiverged { error, tolerance: tol, worst_cell: (worst.a, worst.b, worst.error) });
        }
        heap.pop();
        let m = 0.5 * (worst.a + worst.b);
        heap.push(kronrod(f, worst.a, m, worst.depth + 1)?);
        heap.push(kronrod(f, m, worst.b, worst.depth + 1)?);
    }
}
