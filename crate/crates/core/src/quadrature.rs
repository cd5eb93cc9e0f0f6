//! One-dimensional quadrature used by the analytic module.
//!
//! The workhorse is a globally adaptive 7/15-point Gauss-Kronrod rule: the
//! interval with the largest error estimate is bisected until the summed
//! error estimate meets `max(abs_tol, rel_tol * |I|)`. Gauss-Kronrod nodes are
//! interior to every panel, so integrable endpoint singularities are never
//! evaluated.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

// Kronrod abscissae on [0, 1): odd indices are the 7-point Gauss nodes.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadratureMethod {
    /// Globally adaptive Gauss-Kronrod 7/15.
    AdaptiveGaussKronrod,
    /// Composite Gauss-Kronrod 7/15 on a fixed number of equal panels per
    /// segment; never fails, the error estimate is reported only.
    FixedPanels { panels: usize },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub method: QuadratureMethod,
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            method: QuadratureMethod::AdaptiveGaussKronrod,
            rel_tol: 1e-6,
            abs_tol: 1e-10,
            max_subdivisions: 2000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub abs_error: f64,
    pub evaluations: usize,
    pub subdivisions: usize,
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error) == Ordering::Equal
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gauss_kronrod<F>(f: &mut F, a: f64, b: f64) -> Result<Panel>
where
    F: FnMut(f64) -> Result<f64>,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center)?;
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let pair = f(center - dx)? + f(center + dx)?;
        kronrod += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    let value = kronrod * half;
    let error = ((kronrod - gauss) * half).abs();
    if !value.is_finite() || !error.is_finite() {
        return Err(Error::Quadrature {
            estimate: value,
            abs_error: error,
            subdivisions: 0,
        });
    }
    Ok(Panel { a, b, value, error })
}

impl QuadratureSpec {
    /// Same rule with both tolerances divided by `factor`.
    pub fn tightened(&self, factor: f64) -> Self {
        Self {
            rel_tol: self.rel_tol / factor,
            abs_tol: self.abs_tol / factor,
            ..*self
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.abs_tol > 0.0) {
            return Err(Error::invalid("quadrature", "tolerances must be positive"));
        }
        if self.max_subdivisions == 0 {
            return Err(Error::invalid("quadrature", "max_subdivisions must be at least 1"));
        }
        if let QuadratureMethod::FixedPanels { panels: 0 } = self.method {
            return Err(Error::invalid("quadrature", "fixed rule needs at least one panel"));
        }
        Ok(())
    }

    pub fn integrate<F>(&self, mut f: F, a: f64, b: f64) -> Result<Integral>
    where
        F: FnMut(f64) -> f64,
    {
        self.integrate_fallible(|x| Ok(f(x)), a, b, &[])
    }

    /// Integrate over `[a, b]` with the panels initially split at the given
    /// interior break points (kinks or known features of the integrand).
    /// Break points outside the open interval are ignored.
    pub fn integrate_fallible<F>(&self, mut f: F, a: f64, b: f64, breaks: &[f64]) -> Result<Integral>
    where
        F: FnMut(f64) -> Result<f64>,
    {
        if a == b {
            return Ok(Integral {
                value: 0.0,
                abs_error: 0.0,
                evaluations: 0,
                subdivisions: 0,
            });
        }
        if a > b {
            let mut flipped = self.integrate_fallible(f, b, a, breaks)?;
            flipped.value = -flipped.value;
            return Ok(flipped);
        }
        let mut edges = vec![a];
        let mut inner: Vec<f64> = breaks.iter().copied().filter(|x| *x > a && *x < b).collect();
        inner.sort_by(f64::total_cmp);
        inner.dedup();
        edges.extend(inner);
        edges.push(b);

        match self.method {
            QuadratureMethod::AdaptiveGaussKronrod => self.adaptive(&mut f, &edges),
            QuadratureMethod::FixedPanels { panels } => fixed(&mut f, &edges, panels.max(1)),
        }
    }

    fn adaptive<F>(&self, f: &mut F, edges: &[f64]) -> Result<Integral>
    where
        F: FnMut(f64) -> Result<f64>,
    {
        let mut heap = BinaryHeap::new();
        let mut evaluations = 0;
        for w in edges.windows(2) {
            heap.push(gauss_kronrod(f, w[0], w[1])?);
            evaluations += 15;
        }
        let mut subdivisions = 0;
        loop {
            let (value, error) = heap
                .iter()
                .fold((0.0, 0.0), |(v, e), p| (v + p.value, e + p.error));
            let target = self.abs_tol.max(self.rel_tol * value.abs());
            if error <= target {
                return Ok(Integral {
                    value,
                    abs_error: error,
                    evaluations,
                    subdivisions,
                });
            }
            if subdivisions >= self.max_subdivisions {
                return Err(Error::Quadrature {
                    estimate: value,
                    abs_error: error,
                    subdivisions,
                });
            }
            let worst = heap.pop().expect("at least one panel");
            let mid = 0.5 * (worst.a + worst.b);
            if mid <= worst.a || mid >= worst.b {
                // Panel can no longer be split in floating point.
                return Err(Error::Quadrature {
                    estimate: value,
                    abs_error: error,
                    subdivisions,
                });
            }
            heap.push(gauss_kronrod(f, worst.a, mid)?);
            heap.push(gauss_kronrod(f, mid, worst.b)?);
            evaluations += 30;
            subdivisions += 1;
        }
    }
}

fn fixed<F>(f: &mut F, edges: &[f64], panels: usize) -> Result<Integral>
where
    F: FnMut(f64) -> Result<f64>,
{
    let mut value = 0.0;
    let mut abs_error = 0.0;
    let mut evaluations = 0;
    for w in edges.windows(2) {
        let h = (w[1] - w[0]) / panels as f64;
        for k in 0..panels {
            let lo = w[0] + h * k as f64;
            let hi = if k + 1 == panels { w[1] } else { lo + h };
            let p = gauss_kronrod(f, lo, hi)?;
            value += p.value;
            abs_error += p.error;
            evaluations += 15;
        }
    }
    Ok(Integral {
        value,
        abs_error,
        evaluations,
        subdivisions: 0,
    })
}
