//! Full network description shared by the analytic and Monte Carlo paths.

use std::f64::consts::PI;
use std::fmt;

use crate::channel::{db_to_linear, eirp_density_to_power, ChannelParams, LinkBudget};
use crate::error::{Error, Result};
use crate::geometry::{OrbitGeometry, TerminalLocation};
use crate::quadrature::QuadratureSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SatKind {
    Geo,
    Leo,
}

impl SatKind {
    pub const ALL: [SatKind; 2] = [SatKind::Geo, SatKind::Leo];

    pub fn other(self) -> SatKind {
        match self {
            SatKind::Geo => SatKind::Leo,
            SatKind::Leo => SatKind::Geo,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            SatKind::Geo => "geo",
            SatKind::Leo => "leo",
        }
    }
}

impl fmt::Display for SatKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SatKind::Geo => "GEO",
            SatKind::Leo => "LEO",
        })
    }
}

/// One satellite type: its link budget plus the PPP intensity. GEO density
/// is per km of orbit, LEO density per km^2 of shell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Constellation {
    pub link: LinkBudget,
    pub density: f64,
}

/// `lambda_G = N_G / (2 pi (r_E + a_G))`
pub fn geo_density_from_count(count: f64, geom: &OrbitGeometry) -> f64 {
    count / (2.0 * PI * geom.geo_orbit_radius())
}

/// `lambda_L = N_L / (4 pi (r_E + a_L)^2)`
pub fn leo_density_from_count(count: f64, geom: &OrbitGeometry) -> f64 {
    count / (4.0 * PI * geom.leo_shell_radius().powi(2))
}

/// How the per-type coverage integrals weight the serving distance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CoverageModel {
    /// Average over the nearest-distance law conditioned only on
    /// visibility. This is the classical closed form; it ignores that
    /// winning the association makes short serving distances more likely.
    #[default]
    VisibleConditioned,
    /// Weight each serving distance by the probability that the other type
    /// has no satellite inside the biased distance while still being
    /// visible, and condition the cross-type interference on that event.
    /// Exact at `m = 1`.
    AssociationConditioned,
}

impl CoverageModel {
    pub fn as_str(self) -> &'static str {
        match self {
            CoverageModel::VisibleConditioned => "visible",
            CoverageModel::AssociationConditioned => "association",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScenarioConfig {
    pub geom: OrbitGeometry,
    pub terminal: TerminalLocation,
    pub geo: Constellation,
    pub leo: Constellation,
    pub channel: ChannelParams,
    pub quadrature: QuadratureSpec,
    pub coverage_model: CoverageModel,
}

impl ScenarioConfig {
    /// Ka-band hybrid network: 1000 GEO and 100 LEO satellites on average,
    /// EIRP densities of 40 and 4 dBW/MHz over 30 MHz at 20 GHz, terminal at
    /// (0, 0), unit bias, omnidirectional terminal, interferers 30 dB below
    /// the mainlobe, path-loss exponents 2.7 (GEO) and 3 (LEO), Rayleigh
    /// fading.
    pub fn ka_band_default() -> Self {
        let geom = OrbitGeometry::default();
        let channel = ChannelParams::default();
        let link = |eirp_dbw_mhz: f64, alpha: f64| LinkBudget {
            tx_power_w: eirp_density_to_power(eirp_dbw_mhz, 1.0, channel.bandwidth_hz),
            mainlobe_gain: 1.0,
            interferer_gain: db_to_linear(-30.0),
            bias: 1.0,
            pathloss_exp: alpha,
        };
        Self {
            geom,
            terminal: TerminalLocation::new(0.0, 0.0).expect("origin is valid"),
            geo: Constellation {
                link: link(40.0, 2.7),
                density: geo_density_from_count(1000.0, &geom),
            },
            leo: Constellation {
                link: link(4.0, 3.0),
                density: leo_density_from_count(100.0, &geom),
            },
            channel,
            quadrature: QuadratureSpec::default(),
            coverage_model: CoverageModel::default(),
        }
    }

    pub fn constellation(&self, kind: SatKind) -> &Constellation {
        match kind {
            SatKind::Geo => &self.geo,
            SatKind::Leo => &self.leo,
        }
    }

    pub fn constellation_mut(&mut self, kind: SatKind) -> &mut Constellation {
        match kind {
            SatKind::Geo => &mut self.geo,
            SatKind::Leo => &mut self.leo,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.channel.validate()?;
        self.quadrature.validate()?;
        for kind in SatKind::ALL {
            let c = self.constellation(kind);
            c.link.validate()?;
            if !(c.density.is_finite() && c.density >= 0.0) {
                return Err(Error::invalid("density", format!("{kind} density must be nonnegative")));
            }
        }
        if self.geo.density == 0.0 && self.leo.density == 0.0 {
            return Err(Error::invalid("density", "at least one constellation must be nonempty"));
        }
        Ok(())
    }

    /// Ratio of biased mainlobe powers `P_t G_0 B` of `kind` over the other
    /// type (the hatted quantities).
    pub fn biased_power_ratio(&self, kind: SatKind) -> f64 {
        self.constellation(kind).link.biased_power() / self.constellation(kind.other()).link.biased_power()
    }
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self::ka_band_default()
    }
}
