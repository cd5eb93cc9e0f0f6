//! Scenario files: flat `section.key = value` text (TOML syntax).
//!
//! Ratio-type inputs are given in dB and converted once, when the file is
//! turned into a [`ScenarioConfig`]. [`ConfigFile`] keeps the values exactly
//! as written so that [`emit_config`] reproduces them without loss.

use std::fmt::Write as _;
use std::path::Path;

use geoleo_core::channel::{db_to_linear, eirp_density_to_power, ChannelParams, LinkBudget, MAX_NAKAGAMI_M};
use geoleo_core::geometry::{OrbitGeometry, TerminalLocation};
use geoleo_core::quadrature::{QuadratureMethod, QuadratureSpec};
use geoleo_core::scenario::{geo_density_from_count, leo_density_from_count, Constellation};
use geoleo_core::{CoverageModel, SatKind, ScenarioConfig};
use thiserror::Error;
use toml::{Table, Value};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConfigError {
    #[error("cannot read {path}: {reason}")]
    Io { path: String, reason: String },
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("unknown key `{0}`")]
    UnknownKey(String),
    #[error("`{key}`: {reason}")]
    Invalid { key: String, reason: String },
}

fn invalid(key: &str, reason: impl Into<String>) -> ConfigError {
    ConfigError::Invalid {
        key: key.to_string(),
        reason: reason.into(),
    }
}

/// Satellite population: expected count over the whole orbit or shell, or
/// the point-process density directly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Population {
    Count(f64),
    /// Per km of orbit (GEO) or per km^2 of shell (LEO).
    Density(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstellationSection {
    pub altitude_km: f64,
    pub population: Population,
    pub eirp_density_dbw_mhz: f64,
    /// Satellite mainlobe antenna gain; transmit power is EIRP over this.
    pub tx_gain_db: f64,
    /// Gain toward terminals the satellite does not serve, relative to the
    /// mainlobe.
    pub interferer_offset_db: f64,
    pub bias_db: f64,
    pub pathloss_exp: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepVariable {
    TauDb,
    LatitudeDeg,
    BiasRatioDb,
    LeoCount,
    GeoCount,
    /// `alpha_G / alpha_L`, varied through `alpha_G`.
    PathlossRatio,
}

impl SweepVariable {
    pub const ALL: [SweepVariable; 6] = [
        SweepVariable::TauDb,
        SweepVariable::LatitudeDeg,
        SweepVariable::BiasRatioDb,
        SweepVariable::LeoCount,
        SweepVariable::GeoCount,
        SweepVariable::PathlossRatio,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SweepVariable::TauDb => "tau_db",
            SweepVariable::LatitudeDeg => "latitude_deg",
            SweepVariable::BiasRatioDb => "bias_ratio_db",
            SweepVariable::LeoCount => "leo_count",
            SweepVariable::GeoCount => "geo_count",
            SweepVariable::PathlossRatio => "pathloss_ratio",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|v| v.as_str() == s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepMode {
    Analytic,
    MonteCarlo,
    Validate,
}

impl SweepMode {
    pub fn as_str(self) -> &'static str {
        match self {
            SweepMode::Analytic => "analytic",
            SweepMode::MonteCarlo => "montecarlo",
            SweepMode::Validate => "validate",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [SweepMode::Analytic, SweepMode::MonteCarlo, SweepMode::Validate]
            .into_iter()
            .find(|m| m.as_str() == s)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub variable: SweepVariable,
    pub grid: Vec<f64>,
    pub mode: SweepMode,
    /// Thresholds evaluated at every grid point when the swept variable is
    /// not the threshold itself.
    pub tau_db: Vec<f64>,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<(), ConfigError> {
        check_grid("sweep.grid", &self.grid)?;
        check_grid("sweep.tau_db", &self.tau_db)?;
        Ok(())
    }
}

fn check_grid(key: &str, grid: &[f64]) -> Result<(), ConfigError> {
    if grid.is_empty() {
        return Err(invalid(key, "grid must not be empty"));
    }
    if let Some(x) = grid.iter().find(|x| !x.is_finite()) {
        return Err(invalid(key, format!("grid values must be finite, got {x}")));
    }
    let up = grid.windows(2).all(|w| w[0] < w[1]);
    let down = grid.windows(2).all(|w| w[0] > w[1]);
    if !(up || down) {
        return Err(invalid(key, "grid must be strictly increasing or strictly decreasing"));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConfigFile {
    pub earth_radius_km: f64,
    pub latitude_deg: f64,
    pub longitude_deg: f64,
    pub rx_gain_db: f64,
    pub geo: ConstellationSection,
    pub leo: ConstellationSection,
    pub carrier_freq_ghz: f64,
    pub bandwidth_mhz: f64,
    pub noise_psd_dbm_hz: f64,
    pub nakagami_m: u32,
    pub quadrature: QuadratureSpec,
    pub coverage_model: CoverageModel,
    pub trials: u64,
    pub seed: u64,
    pub sweep: SweepSpec,
    pub z_threshold: f64,
}

const DEFAULT_TAUS_DB: [f64; 7] = [-10.0, -5.0, 0.0, 5.0, 10.0, 15.0, 20.0];

impl Default for ConfigFile {
    /// Ka-band hybrid network with 1000 GEO and 100 LEO satellites, the
    /// same scenario as [`ScenarioConfig::ka_band_default`].
    fn default() -> Self {
        let section = |altitude_km, count, eirp, alpha| ConstellationSection {
            altitude_km,
            population: Population::Count(count),
            eirp_density_dbw_mhz: eirp,
            tx_gain_db: 0.0,
            interferer_offset_db: -30.0,
            bias_db: 0.0,
            pathloss_exp: alpha,
        };
        Self {
            earth_radius_km: 6378.0,
            latitude_deg: 0.0,
            longitude_deg: 0.0,
            rx_gain_db: 0.0,
            geo: section(35786.0, 1000.0, 40.0, 2.7),
            leo: section(600.0, 100.0, 4.0, 3.0),
            carrier_freq_ghz: 20.0,
            bandwidth_mhz: 30.0,
            noise_psd_dbm_hz: -174.0,
            nakagami_m: 1,
            quadrature: QuadratureSpec::default(),
            coverage_model: CoverageModel::default(),
            trials: 100_000,
            seed: 1,
            sweep: SweepSpec {
                variable: SweepVariable::TauDb,
                grid: DEFAULT_TAUS_DB.to_vec(),
                mode: SweepMode::Analytic,
                tau_db: DEFAULT_TAUS_DB.to_vec(),
            },
            z_threshold: 4.0,
        }
    }
}

impl ConfigFile {
    pub fn constellation(&self, kind: SatKind) -> &ConstellationSection {
        match kind {
            SatKind::Geo => &self.geo,
            SatKind::Leo => &self.leo,
        }
    }

    /// Validated network description with every dB value made linear and
    /// counts turned into densities.
    pub fn to_scenario(&self) -> Result<ScenarioConfig, ConfigError> {
        positive("geometry.earth_radius_km", self.earth_radius_km)?;
        positive("geo.altitude_km", self.geo.altitude_km)?;
        positive("leo.altitude_km", self.leo.altitude_km)?;
        if self.geo.altitude_km <= self.leo.altitude_km {
            return Err(invalid("geo.altitude_km", "GEO altitude must exceed LEO altitude"));
        }
        let geom = OrbitGeometry::new(self.earth_radius_km, self.geo.altitude_km, self.leo.altitude_km)
            .map_err(|e| invalid("geometry", e.to_string()))?;
        if !(self.latitude_deg.abs() <= 90.0) {
            return Err(invalid("terminal.latitude_deg", format!("must lie in [-90, 90], got {}", self.latitude_deg)));
        }
        finite("terminal.longitude_deg", self.longitude_deg)?;
        finite("terminal.rx_gain_db", self.rx_gain_db)?;
        let terminal = TerminalLocation::from_degrees(self.latitude_deg, self.longitude_deg)
            .map_err(|e| invalid("terminal", e.to_string()))?;

        positive("channel.carrier_freq_ghz", self.carrier_freq_ghz)?;
        positive("channel.bandwidth_mhz", self.bandwidth_mhz)?;
        finite("channel.noise_psd_dbm_hz", self.noise_psd_dbm_hz)?;
        check_m(self.nakagami_m)?;
        let bandwidth_hz = self.bandwidth_mhz * 1e6;
        let channel = ChannelParams::new(self.carrier_freq_ghz * 1e9, self.nakagami_m, self.noise_psd_dbm_hz, bandwidth_hz)
            .map_err(|e| invalid("channel", e.to_string()))?;

        let constellation = |kind: SatKind| -> Result<Constellation, ConfigError> {
            let s = self.constellation(kind);
            let key = |k: &str| format!("{}.{k}", kind.as_str());
            for (k, v) in [
                ("eirp_density_dbw_mhz", s.eirp_density_dbw_mhz),
                ("tx_gain_db", s.tx_gain_db),
                ("interferer_offset_db", s.interferer_offset_db),
                ("bias_db", s.bias_db),
            ] {
                finite(&key(k), v)?;
            }
            if !(s.pathloss_exp >= 2.0 && s.pathloss_exp.is_finite()) {
                return Err(invalid(&key("pathloss_exp"), format!("must be at least 2, got {}", s.pathloss_exp)));
            }
            let density = match s.population {
                Population::Count(n) => {
                    nonnegative(&key("count"), n)?;
                    match kind {
                        SatKind::Geo => geo_density_from_count(n, &geom),
                        SatKind::Leo => leo_density_from_count(n, &geom),
                    }
                }
                Population::Density(d) => {
                    nonnegative(&key("density"), d)?;
                    d
                }
            };
            let gain_db = s.tx_gain_db + self.rx_gain_db;
            let link = LinkBudget {
                tx_power_w: eirp_density_to_power(s.eirp_density_dbw_mhz, db_to_linear(s.tx_gain_db), bandwidth_hz),
                mainlobe_gain: db_to_linear(gain_db),
                interferer_gain: db_to_linear(gain_db + s.interferer_offset_db),
                bias: db_to_linear(s.bias_db),
                pathloss_exp: s.pathloss_exp,
            };
            link.validate().map_err(|e| invalid(kind.as_str(), e.to_string()))?;
            Ok(Constellation { link, density })
        };

        let quadrature = self.quadrature;
        quadrature.validate().map_err(|e| invalid("quadrature", e.to_string()))?;
        let cfg = ScenarioConfig {
            geom,
            terminal,
            geo: constellation(SatKind::Geo)?,
            leo: constellation(SatKind::Leo)?,
            channel,
            quadrature,
            coverage_model: self.coverage_model,
        };
        if cfg.geo.density == 0.0 && cfg.leo.density == 0.0 {
            return Err(invalid("leo.count", "at least one constellation must be nonempty"));
        }
        cfg.validate().map_err(|e| invalid("scenario", e.to_string()))?;
        Ok(cfg)
    }

    /// Everything a run needs: the scenario plus the sweep and gate
    /// settings.
    pub fn validate(&self) -> Result<ScenarioConfig, ConfigError> {
        self.sweep.validate()?;
        if !(self.z_threshold > 0.0) {
            return Err(invalid("validate.z_threshold", format!("must be positive, got {}", self.z_threshold)));
        }
        if self.trials == 0 {
            return Err(invalid("montecarlo.trials", "must be positive"));
        }
        self.to_scenario()
    }
}

fn finite(key: &str, v: f64) -> Result<(), ConfigError> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(invalid(key, format!("must be finite, got {v}")))
    }
}

fn positive(key: &str, v: f64) -> Result<(), ConfigError> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(invalid(key, format!("must be positive, got {v}")))
    }
}

fn nonnegative(key: &str, v: f64) -> Result<(), ConfigError> {
    if v >= 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(invalid(key, format!("must be nonnegative, got {v}")))
    }
}

fn check_m(m: u32) -> Result<(), ConfigError> {
    if (1..=MAX_NAKAGAMI_M).contains(&m) {
        Ok(())
    } else {
        Err(invalid("channel.nakagami_m", format!("must lie in 1..={MAX_NAKAGAMI_M}, got {m}")))
    }
}

// ---------------------------------------------------------------------------
// parsing

/// Reader over one section table that tracks which keys were consumed.
struct Section<'a> {
    name: &'static str,
    table: Option<&'a Table>,
    seen: Vec<&'static str>,
}

impl<'a> Section<'a> {
    fn new(root: &'a Table, name: &'static str) -> Result<Self, ConfigError> {
        let table = match root.get(name) {
            None => None,
            Some(Value::Table(t)) => Some(t),
            Some(_) => return Err(invalid(name, "expected a section of `key = value` entries")),
        };
        Ok(Self {
            name,
            table,
            seen: Vec::new(),
        })
    }

    fn path(&self, key: &str) -> String {
        format!("{}.{key}", self.name)
    }

    fn raw(&mut self, key: &'static str) -> Option<&'a Value> {
        self.seen.push(key);
        self.table.and_then(|t| t.get(key))
    }

    fn f64(&mut self, key: &'static str, default: f64) -> Result<f64, ConfigError> {
        Ok(self.opt_f64(key)?.unwrap_or(default))
    }

    fn opt_f64(&mut self, key: &'static str) -> Result<Option<f64>, ConfigError> {
        match self.raw(key) {
            None => Ok(None),
            Some(Value::Float(x)) => Ok(Some(*x)),
            Some(Value::Integer(i)) => Ok(Some(*i as f64)),
            Some(v) => Err(invalid(&self.path(key), format!("expected a number, got {}", v.type_str()))),
        }
    }

    /// Nonnegative integer; integral floats such as `3.0` are accepted.
    fn int(&mut self, key: &'static str, default: u64, what: &str) -> Result<u64, ConfigError> {
        let path = self.path(key);
        match self.raw(key) {
            None => Ok(default),
            Some(Value::Integer(i)) if *i >= 0 => Ok(*i as u64),
            Some(Value::Float(x)) if *x >= 0.0 && x.fract() == 0.0 && *x <= i64::MAX as f64 => Ok(*x as u64),
            Some(Value::Integer(i)) => Err(invalid(&path, format!("{what}; got {i}"))),
            Some(Value::Float(x)) => Err(invalid(&path, format!("{what}; got {x}"))),
            Some(v) => Err(invalid(&path, format!("{what}; got {}", v.type_str()))),
        }
    }

    fn string(&mut self, key: &'static str) -> Result<Option<&'a str>, ConfigError> {
        match self.raw(key) {
            None => Ok(None),
            Some(Value::String(s)) => Ok(Some(s.as_str())),
            Some(v) => Err(invalid(&self.path(key), format!("expected a string, got {}", v.type_str()))),
        }
    }

    fn list(&mut self, key: &'static str) -> Result<Option<Vec<f64>>, ConfigError> {
        let path = self.path(key);
        match self.raw(key) {
            None => Ok(None),
            Some(Value::Array(items)) => items
                .iter()
                .map(|v| match v {
                    Value::Float(x) => Ok(*x),
                    Value::Integer(i) => Ok(*i as f64),
                    other => Err(invalid(&path, format!("expected numbers, got {}", other.type_str()))),
                })
                .collect::<Result<Vec<_>, _>>()
                .map(Some),
            Some(v) => Err(invalid(&path, format!("expected a list of numbers, got {}", v.type_str()))),
        }
    }

    fn finish(self) -> Result<(), ConfigError> {
        if let Some(t) = self.table {
            if let Some(k) = t.keys().find(|k| !self.seen.contains(&k.as_str())) {
                return Err(ConfigError::UnknownKey(format!("{}.{k}", self.name)));
            }
        }
        Ok(())
    }
}

const SECTIONS: [&str; 10] = [
    "geometry",
    "terminal",
    "geo",
    "leo",
    "channel",
    "quadrature",
    "analytic",
    "montecarlo",
    "sweep",
    "validate",
];

fn parse_constellation(root: &Table, kind: SatKind, d: &ConstellationSection) -> Result<ConstellationSection, ConfigError> {
    let name = match kind {
        SatKind::Geo => "geo",
        SatKind::Leo => "leo",
    };
    let mut s = Section::new(root, name)?;
    let count = s.opt_f64("count")?;
    let density = s.opt_f64("density")?;
    let population = match (count, density) {
        (Some(_), Some(_)) => return Err(invalid(&s.path("density"), "give either count or density, not both")),
        (Some(n), None) => Population::Count(n),
        (None, Some(x)) => Population::Density(x),
        (None, None) => d.population,
    };
    let out = ConstellationSection {
        altitude_km: s.f64("altitude_km", d.altitude_km)?,
        population,
        eirp_density_dbw_mhz: s.f64("eirp_density_dbw_mhz", d.eirp_density_dbw_mhz)?,
        tx_gain_db: s.f64("tx_gain_db", d.tx_gain_db)?,
        interferer_offset_db: s.f64("interferer_offset_db", d.interferer_offset_db)?,
        bias_db: s.f64("bias_db", d.bias_db)?,
        pathloss_exp: s.f64("pathloss_exp", d.pathloss_exp)?,
    };
    s.finish()?;
    Ok(out)
}

/// Parse scenario text. Missing keys take their default values; unknown
/// keys and out-of-range values are rejected with their dotted key path.
pub fn parse_config_str(text: &str) -> Result<ConfigFile, ConfigError> {
    let root: Table = toml::from_str(text).map_err(|e| ConfigError::Syntax(e.to_string().trim().to_string()))?;
    if let Some(k) = root.keys().find(|k| !SECTIONS.contains(&k.as_str())) {
        return Err(ConfigError::UnknownKey(k.clone()));
    }
    let d = ConfigFile::default();

    let mut s = Section::new(&root, "geometry")?;
    let earth_radius_km = s.f64("earth_radius_km", d.earth_radius_km)?;
    s.finish()?;

    let mut s = Section::new(&root, "terminal")?;
    let latitude_deg = s.f64("latitude_deg", d.latitude_deg)?;
    let longitude_deg = s.f64("longitude_deg", d.longitude_deg)?;
    let rx_gain_db = s.f64("rx_gain_db", d.rx_gain_db)?;
    s.finish()?;

    let geo = parse_constellation(&root, SatKind::Geo, &d.geo)?;
    let leo = parse_constellation(&root, SatKind::Leo, &d.leo)?;

    let mut s = Section::new(&root, "channel")?;
    let carrier_freq_ghz = s.f64("carrier_freq_ghz", d.carrier_freq_ghz)?;
    let bandwidth_mhz = s.f64("bandwidth_mhz", d.bandwidth_mhz)?;
    let noise_psd_dbm_hz = s.f64("noise_psd_dbm_hz", d.noise_psd_dbm_hz)?;
    let m = s.int(
        "nakagami_m",
        d.nakagami_m as u64,
        "Nakagami m must be a positive integer (the gamma-CDF series sums over i = 1..m)",
    )?;
    s.finish()?;
    let nakagami_m = u32::try_from(m).unwrap_or(u32::MAX);
    check_m(nakagami_m)?;

    let mut s = Section::new(&root, "quadrature")?;
    let method_name = s.string("method")?;
    let panels = s.int("panels", 64, "panel count must be a positive integer")?;
    let quadrature = QuadratureSpec {
        method: match method_name {
            None | Some("adaptive") => QuadratureMethod::AdaptiveGaussKronrod,
            Some("fixed") => QuadratureMethod::FixedPanels {
                panels: usize::try_from(panels).unwrap_or(usize::MAX),
            },
            Some(other) => {
                return Err(invalid("quadrature.method", format!("expected \"adaptive\" or \"fixed\", got \"{other}\"")))
            }
        },
        rel_tol: s.f64("rel_tol", d.quadrature.rel_tol)?,
        abs_tol: s.f64("abs_tol", d.quadrature.abs_tol)?,
        max_subdivisions: usize::try_from(s.int(
            "max_subdivisions",
            d.quadrature.max_subdivisions as u64,
            "subdivision budget must be a nonnegative integer",
        )?)
        .unwrap_or(usize::MAX),
    };
    if method_name != Some("fixed") && s.table.is_some_and(|t| t.contains_key("panels")) {
        return Err(invalid("quadrature.panels", "only meaningful with method = \"fixed\""));
    }
    s.finish()?;

    let mut s = Section::new(&root, "analytic")?;
    let coverage_model = match s.string("coverage_model")? {
        None => d.coverage_model,
        Some("visible") => CoverageModel::VisibleConditioned,
        Some("association") => CoverageModel::AssociationConditioned,
        Some(other) => {
            return Err(invalid(
                "analytic.coverage_model",
                format!("expected \"visible\" or \"association\", got \"{other}\""),
            ))
        }
    };
    s.finish()?;

    let mut s = Section::new(&root, "montecarlo")?;
    let trials = s.int("trials", d.trials, "trial count must be a positive integer")?;
    let seed = s.int("seed", d.seed, "seed must be a nonnegative integer")?;
    s.finish()?;

    let mut s = Section::new(&root, "sweep")?;
    let variable = match s.string("variable")? {
        None => d.sweep.variable,
        Some(v) => SweepVariable::parse(v).ok_or_else(|| {
            let names: Vec<_> = SweepVariable::ALL.iter().map(|v| v.as_str()).collect();
            invalid("sweep.variable", format!("expected one of {}, got \"{v}\"", names.join(", ")))
        })?,
    };
    let mode = match s.string("mode")? {
        None => d.sweep.mode,
        Some(v) => SweepMode::parse(v).ok_or_else(|| {
            invalid("sweep.mode", format!("expected analytic, montecarlo or validate, got \"{v}\""))
        })?,
    };
    let grid = s.list("grid")?;
    let tau_db = s.list("tau_db")?.unwrap_or_else(|| d.sweep.tau_db.clone());
    let grid = match grid {
        Some(g) => g,
        None if variable == SweepVariable::TauDb => tau_db.clone(),
        None => return Err(invalid("sweep.grid", format!("required when sweeping {}", variable.as_str()))),
    };
    s.finish()?;
    let sweep = SweepSpec {
        variable,
        grid,
        mode,
        tau_db,
    };

    let mut s = Section::new(&root, "validate")?;
    let z_threshold = s.f64("z_threshold", d.z_threshold)?;
    s.finish()?;

    let file = ConfigFile {
        earth_radius_km,
        latitude_deg,
        longitude_deg,
        rx_gain_db,
        geo,
        leo,
        carrier_freq_ghz,
        bandwidth_mhz,
        noise_psd_dbm_hz,
        nakagami_m,
        quadrature,
        coverage_model,
        trials,
        seed,
        sweep,
        z_threshold,
    };
    file.validate()?;
    Ok(file)
}

pub fn parse_config(path: &Path) -> Result<ConfigFile, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Io {
        path: path.display().to_string(),
        reason: e.to_string(),
    })?;
    parse_config_str(&text)
}

// ---------------------------------------------------------------------------
// emission

/// Shortest decimal that reads back to the same `f64`, in TOML float syntax.
fn num(x: f64) -> String {
    let s = format!("{x:?}");
    if s.contains(['.', 'e', 'i', 'N']) {
        s
    } else {
        format!("{s}.0")
    }
}

fn list(xs: &[f64]) -> String {
    let items: Vec<String> = xs.iter().map(|x| num(*x)).collect();
    format!("[{}]", items.join(", "))
}

/// Serialise as flat dotted keys. `parse_config_str(&emit_config(c))`
/// returns `c` unchanged.
pub fn emit_config(c: &ConfigFile) -> String {
    let mut out = String::new();
    let mut kv = |k: &str, v: String| {
        let _ = writeln!(out, "{k} = {v}");
    };
    kv("geometry.earth_radius_km", num(c.earth_radius_km));
    kv("terminal.latitude_deg", num(c.latitude_deg));
    kv("terminal.longitude_deg", num(c.longitude_deg));
    kv("terminal.rx_gain_db", num(c.rx_gain_db));
    for (name, s) in [("geo", &c.geo), ("leo", &c.leo)] {
        kv(&format!("{name}.altitude_km"), num(s.altitude_km));
        match s.population {
            Population::Count(n) => kv(&format!("{name}.count"), num(n)),
            Population::Density(d) => kv(&format!("{name}.density"), num(d)),
        }
        kv(&format!("{name}.eirp_density_dbw_mhz"), num(s.eirp_density_dbw_mhz));
        kv(&format!("{name}.tx_gain_db"), num(s.tx_gain_db));
        kv(&format!("{name}.interferer_offset_db"), num(s.interferer_offset_db));
        kv(&format!("{name}.bias_db"), num(s.bias_db));
        kv(&format!("{name}.pathloss_exp"), num(s.pathloss_exp));
    }
    kv("channel.carrier_freq_ghz", num(c.carrier_freq_ghz));
    kv("channel.bandwidth_mhz", num(c.bandwidth_mhz));
    kv("channel.noise_psd_dbm_hz", num(c.noise_psd_dbm_hz));
    kv("channel.nakagami_m", c.nakagami_m.to_string());
    match c.quadrature.method {
        QuadratureMethod::AdaptiveGaussKronrod => kv("quadrature.method", "\"adaptive\"".into()),
        QuadratureMethod::FixedPanels { panels } => {
            kv("quadrature.method", "\"fixed\"".into());
            kv("quadrature.panels", panels.to_string());
        }
    }
    kv("quadrature.rel_tol", num(c.quadrature.rel_tol));
    kv("quadrature.abs_tol", num(c.quadrature.abs_tol));
    kv("quadrature.max_subdivisions", c.quadrature.max_subdivisions.to_string());
    kv("analytic.coverage_model", format!("\"{}\"", c.coverage_model.as_str()));
    kv("montecarlo.trials", c.trials.to_string());
    kv("montecarlo.seed", c.seed.to_string());
    kv("sweep.variable", format!("\"{}\"", c.sweep.variable.as_str()));
    kv("sweep.mode", format!("\"{}\"", c.sweep.mode.as_str()));
    kv("sweep.grid", list(&c.sweep.grid));
    kv("sweep.tau_db", list(&c.sweep.tau_db));
    kv("validate.z_threshold", num(c.z_threshold));
    out
}
