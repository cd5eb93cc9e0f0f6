//! Path loss, Nakagami-m power fading and link-budget bookkeeping.

use std::f64::consts::PI;

use rand::Rng;
use rand_distr::Exp1;

use crate::error::{Error, Result};

/// Speed of light in km/s. Distances are kilometres throughout, so path
/// loss is evaluated as `(c / 4 pi f_c)^2 d^-alpha` with `c` and `d` in km.
pub const SPEED_OF_LIGHT_KM_S: f64 = 3.0e5;

/// Largest Nakagami parameter accepted; keeps the alternating binomial sums
/// well conditioned in `f64`.
pub const MAX_NAKAGAMI_M: u32 = 20;

pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

pub fn linear_to_db(x: f64) -> f64 {
    10.0 * x.log10()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelParams {
    pub carrier_freq_hz: f64,
    pub nakagami_m: u32,
    pub noise_psd_dbm_hz: f64,
    pub bandwidth_hz: f64,
}

impl ChannelParams {
    pub fn new(carrier_freq_hz: f64, nakagami_m: u32, noise_psd_dbm_hz: f64, bandwidth_hz: f64) -> Result<Self> {
        let p = Self {
            carrier_freq_hz,
            nakagami_m,
            noise_psd_dbm_hz,
            bandwidth_hz,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.carrier_freq_hz.is_finite() && self.carrier_freq_hz > 0.0) {
            return Err(Error::invalid("carrier_freq_hz", "must be positive"));
        }
        if !(self.bandwidth_hz.is_finite() && self.bandwidth_hz > 0.0) {
            return Err(Error::invalid("bandwidth_hz", "must be positive"));
        }
        if !self.noise_psd_dbm_hz.is_finite() {
            return Err(Error::invalid("noise_psd_dbm_hz", "must be finite"));
        }
        check_m(self.nakagami_m)
    }

    /// `(c / (4 pi f_c))^2` in km^2.
    pub fn wavelength_factor(&self) -> f64 {
        (SPEED_OF_LIGHT_KM_S / (4.0 * PI * self.carrier_freq_hz)).powi(2)
    }

    /// Thermal noise power `N_0 W` in watts.
    pub fn noise_power_w(&self) -> f64 {
        db_to_linear(self.noise_psd_dbm_hz + 10.0 * self.bandwidth_hz.log10() - 30.0)
    }
}

impl Default for ChannelParams {
    /// Ka-band downlink: 20 GHz, 30 MHz, -174 dBm/Hz, Rayleigh fading.
    fn default() -> Self {
        Self {
            carrier_freq_hz: 20e9,
            nakagami_m: 1,
            noise_psd_dbm_hz: -174.0,
            bandwidth_hz: 30e6,
        }
    }
}

/// Transmit side of one satellite type. Gains are effective (transmit times
/// terminal receive gain) and linear.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkBudget {
    pub tx_power_w: f64,
    /// Effective gain of the serving mainlobe, `G_0`.
    pub mainlobe_gain: f64,
    /// Effective gain of every non-serving (misaligned) satellite.
    pub interferer_gain: f64,
    /// Association bias `B`.
    pub bias: f64,
    pub pathloss_exp: f64,
}

impl LinkBudget {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("tx_power_w", self.tx_power_w),
            ("mainlobe_gain", self.mainlobe_gain),
            ("interferer_gain", self.interferer_gain),
            ("bias", self.bias),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::invalid(name, format!("must be positive, got {v}")));
            }
        }
        if !(self.pathloss_exp.is_finite() && self.pathloss_exp >= 2.0) {
            return Err(Error::invalid(
                "pathloss_exp",
                format!("must be at least 2, got {}", self.pathloss_exp),
            ));
        }
        Ok(())
    }

    /// `P_t G_0`
    pub fn serving_power(&self) -> f64 {
        self.tx_power_w * self.mainlobe_gain
    }

    /// `P_t G_bar`
    pub fn interferer_power(&self) -> f64 {
        self.tx_power_w * self.interferer_gain
    }

    /// `P_t G_0 B`
    pub fn biased_power(&self) -> f64 {
        self.serving_power() * self.bias
    }
}

fn check_m(m: u32) -> Result<()> {
    if m == 0 || m > MAX_NAKAGAMI_M {
        return Err(Error::invalid(
            "nakagami_m",
            format!("must be an integer in 1..={MAX_NAKAGAMI_M}, got {m}"),
        ));
    }
    Ok(())
}

fn check_gain(x: f64) -> Result<()> {
    if !(x >= 0.0) {
        return Err(Error::invalid("x", format!("channel gain must be nonnegative, got {x}")));
    }
    Ok(())
}

/// `l(d) = (c / (4 pi f_c))^2 d^-alpha`.
pub fn path_loss(distance_km: f64, alpha: f64, params: &ChannelParams) -> Result<f64> {
    if !(distance_km > 0.0) {
        return Err(Error::invalid(
            "distance_km",
            format!("must be positive, got {distance_km}"),
        ));
    }
    Ok(params.wavelength_factor() * distance_km.powf(-alpha))
}

/// Exact CDF of a unit-mean Gamma(m, 1/m) power gain.
pub fn nakagami_cdf(x: f64, m: u32) -> Result<f64> {
    check_m(m)?;
    check_gain(x)?;
    let mx = m as f64 * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    for q in 1..m {
        term *= mx / q as f64;
        sum += term;
    }
    Ok((1.0 - (-mx).exp() * sum).clamp(0.0, 1.0))
}

/// `nu = m (m!)^(-1/m)`
pub fn alzer_nu(m: u32) -> f64 {
    let ln_fact: f64 = (2..=m).map(|k| (k as f64).ln()).sum();
    ((m as f64).ln() - ln_fact / m as f64).exp()
}

/// Exact binomial coefficient as `f64` (exact for `n <= MAX_NAKAGAMI_M`).
pub fn binomial(n: u32, k: u32) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k) as u64;
    let n = n as u64;
    let mut c: u64 = 1;
    for i in 0..k {
        c = c * (n - i) / (i + 1);
    }
    c as f64
}

/// Coefficients `C(m, i) (-1)^(i+1)` for `i = 1..=m`.
pub fn alternating_binomials(m: u32) -> Vec<f64> {
    (1..=m)
        .map(|i| if i % 2 == 1 { binomial(m, i) } else { -binomial(m, i) })
        .collect()
}

/// Gamma-CDF approximation `1 - sum_i C(m,i) (-1)^(i+1) e^(-nu i x)`.
///
/// The alternating sum collapses to `(1 - e^(-nu x))^m`, which is what is
/// evaluated here; exact at `m = 1`.
pub fn nakagami_cdf_approx(x: f64, m: u32) -> Result<f64> {
    check_m(m)?;
    check_gain(x)?;
    let y = -(-alzer_nu(m) * x).exp_m1();
    Ok(y.powi(m as i32).clamp(0.0, 1.0))
}

/// Draw a unit-mean Nakagami-m power gain as the sum of `m` exponentials
/// with mean `1/m`.
pub fn sample_channel_gain<R: Rng + ?Sized>(m: u32, rng: &mut R) -> f64 {
    let mut acc = 0.0;
    for _ in 0..m {
        let e: f64 = rng.sample(Exp1);
        acc += e;
    }
    acc / m as f64
}

/// Transmit power from an EIRP density in dBW/MHz: `P_t = EIRPd W / G_0`.
pub fn eirp_density_to_power(eirp_density_dbw_mhz: f64, mainlobe_gain: f64, bandwidth_hz: f64) -> f64 {
    db_to_linear(eirp_density_dbw_mhz) * (bandwidth_hz / 1e6) / mainlobe_gain
}

/// `16 pi^2 f_c^2 / (P_t G c^2)`, the reciprocal of the received power at
/// unit distance.
pub fn omega_coefficient(tx_power_w: f64, gain: f64, params: &ChannelParams) -> f64 {
    16.0 * PI * PI * params.carrier_freq_hz.powi(2) / (tx_power_w * gain * SPEED_OF_LIGHT_KM_S.powi(2))
}
