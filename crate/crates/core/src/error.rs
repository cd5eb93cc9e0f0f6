use thiserror::Error;

use crate::scenario::SatKind;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    /// The terminal is at or beyond the latitude where the geostationary
    /// orbit drops below the horizon.
    #[error("GEO orbit invisible at latitude {latitude_deg:.4} deg (limit {limit_deg:.4} deg)")]
    GeoInvisible { latitude_deg: f64, limit_deg: f64 },

    #[error("distance {r_km} km outside support [{lo_km}, {hi_km}]")]
    OutsideSupport { r_km: f64, lo_km: f64, hi_km: f64 },

    #[error("{0} constellation has zero density")]
    EmptyConstellation(SatKind),

    #[error(
        "quadrature did not reach tolerance after {subdivisions} subdivisions \
         (estimate {estimate:e}, error {abs_error:e})"
    )]
    Quadrature {
        estimate: f64,
        abs_error: f64,
        subdivisions: usize,
    },
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
