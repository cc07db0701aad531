//! Degree-2 Fourier coefficients by trigonometric quadrature over the real torus.
//!
//! With `f(τ) = Σ c(n,l,m) e^{2πi(nτ₁ + lτ₁₂ + mτ₂)}`, averaging `f(x + iy)` against the
//! character over a `G³` grid recovers `c(n,l,m)·e^{−2π(ny₁ + ly₁₂ + my₂)}` exactly, up to
//! aliases from indices shifted by multiples of `G`, which are damped by `e^{−2πG·y}`.

use rug::float::Constant;
use rug::Float;

use super::eval::degree2_from_table;
use super::spec::{FormName, FormSpec};
use super::syzygy::TripleSystem;
use crate::error::{Error, Result};
use crate::numerics::{Cx, PrecisionConfig};
use crate::theta::{SiegelPoint2, ThetaTable};

pub const DEFAULT_GRID: usize = 12;
pub const DEFAULT_Y: [[f64; 2]; 2] = [[1.0, 0.2], [0.2, 1.1]];

const FORMS: [FormName; 4] = [FormName::E4, FormName::E6, FormName::Chi10, FormName::Chi12];

/// Values of the four degree-2 forms on the grid `x = k/G`, at fixed imaginary part.
#[derive(Clone, Debug)]
pub struct FourierGrid {
    grid: usize,
    y: [[f64; 2]; 2],
    prec: u32,
    /// `values[f][(k1·G + k12)·G + k2]`
    values: [Vec<Cx>; 4],
}

fn form_slot(name: FormName) -> Result<usize> {
    FORMS
        .iter()
        .position(|f| *f == name)
        .ok_or_else(|| Error::DegreeMismatch { form: name.to_string(), expected: 1, found: 2 })
}

impl FourierGrid {
    pub fn compute(y: [[f64; 2]; 2], grid: usize, cfg: &PrecisionConfig) -> Result<Self> {
        if grid < 2 || grid % 2 != 0 {
            return Err(Error::InvalidConfig(format!("grid must be an even integer ≥ 2, got {grid}")));
        }
        let prec = cfg.bits();
        let signs = TripleSystem::frozen();
        let n = grid * grid * grid;
        let mut values: [Vec<Cx>; 4] = std::array::from_fn(|_| Vec::with_capacity(n));
        let g = grid as f64;
        for k1 in 0..grid {
            for k12 in 0..grid {
                for k2 in 0..grid {
                    let x1 = k1 as f64 / g;
                    let x12 = k12 as f64 / g;
                    let x2 = k2 as f64 / g;
                    let tau = SiegelPoint2::from_f64([[x1, x12], [x12, x2]], y, prec)?;
                    let v = degree2_from_table(&ThetaTable::compute(&tau, cfg, false), signs);
                    values[0].push(v.e4);
                    values[1].push(v.e6);
                    values[2].push(v.chi10);
                    values[3].push(v.chi12);
                }
            }
        }
        Ok(Self { grid, y, prec, values })
    }

    pub fn grid(&self) -> usize {
        self.grid
    }

    pub fn y(&self) -> [[f64; 2]; 2] {
        self.y
    }

    /// `c(n, l, m)` of `name`; requires `G ≥ 2·max(|n|,|l|,|m|) + 2`.
    pub fn coefficient(&self, name: FormName, idx: (i64, i64, i64)) -> Result<Cx> {
        let (n, l, m) = idx;
        let required = 2 * n.abs().max(l.abs()).max(m.abs()) as usize + 2;
        if self.grid < required {
            return Err(Error::GridTooSmall { grid: self.grid, required });
        }
        let vals = &self.values[form_slot(name)?];
        let p = self.prec;
        let g = self.grid;
        // roots[k] = e^{−2πik/G}
        let roots: Vec<Cx> = (0..g)
            .map(|k| {
                let t = Float::with_val(p, -2 * k as i64) / g as u32;
                Cx::from_real(&t).exp_i_pi()
            })
            .collect();
        let rt = |e: i64, k: usize| &roots[((e * k as i64).rem_euclid(g as i64)) as usize];
        let mut acc = Cx::zero(p);
        for k1 in 0..g {
            for k12 in 0..g {
                let outer = rt(n, k1) * rt(l, k12);
                let mut inner = Cx::zero(p);
                for k2 in 0..g {
                    inner += &(&vals[(k1 * g + k12) * g + k2] * rt(m, k2));
                }
                acc += &(&outer * &inner);
            }
        }
        let mut expo = Float::with_val(p, self.y[0][0]) * n;
        expo += Float::with_val(p, self.y[0][1]) * l;
        expo += Float::with_val(p, self.y[1][1]) * m;
        expo *= Float::with_val(p, Constant::Pi) * 2u32;
        let scale = expo.exp() / (g * g * g) as u32;
        Ok(acc.scale(&scale))
    }
}

/// One coefficient, evaluating a fresh grid.
pub fn fourier_coefficient(
    form: &FormSpec,
    idx: (i64, i64, i64),
    y: [[f64; 2]; 2],
    grid: usize,
    cfg: &PrecisionConfig,
) -> Result<Cx> {
    if form.degree() != 2 {
        return Err(Error::DegreeMismatch { form: form.name().to_string(), expected: 2, found: form.degree() });
    }
    let (n, l, m) = idx;
    let required = 2 * n.abs().max(l.abs()).max(m.abs()) as usize + 2;
    if grid < required {
        return Err(Error::GridTooSmall { grid, required });
    }
    FourierGrid::compute(y, grid, cfg)?.coefficient(form.name(), idx)
}
