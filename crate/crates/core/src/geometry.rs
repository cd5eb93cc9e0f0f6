//! Spherical geometry of the Earth, the geostationary orbit and the LEO
//! shell.
//!
//! The geostationary orbit is the equatorial circle of radius
//! `r_E + a_G`; LEO satellites live on the sphere of radius `r_E + a_L`.
//! A satellite is visible when it sits on or above the terminal's local
//! horizontal plane, i.e. `(x - t) . t >= 0`. For the orbit this carves out
//! an arc centred on the terminal longitude, for the shell a spherical cap
//! centred on the terminal direction.
//!
//! All lengths are kilometres and all angles radians.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use crate::error::{Error, Result};

/// Latitudes closer than this to the GEO visibility limit are treated as
/// invisible.
pub const GEO_LIMIT_GUARD_RAD: f64 = 1e-9;

/// Position of the typical terminal on the Earth's surface.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TerminalLocation {
    latitude: f64,
    longitude: f64,
}

impl TerminalLocation {
    /// Longitude is wrapped into `[0, 2pi)`.
    pub fn new(latitude: f64, longitude: f64) -> Result<Self> {
        if !latitude.is_finite() || latitude.abs() > FRAC_PI_2 {
            return Err(Error::invalid(
                "latitude",
                format!("must lie in [-pi/2, pi/2], got {latitude}"),
            ));
        }
        if !longitude.is_finite() {
            return Err(Error::invalid("longitude", "must be finite"));
        }
        let mut longitude = longitude.rem_euclid(TAU);
        if longitude >= TAU {
            longitude = 0.0;
        }
        Ok(Self {
            latitude,
            longitude,
        })
    }

    pub fn from_degrees(latitude_deg: f64, longitude_deg: f64) -> Result<Self> {
        Self::new(latitude_deg.to_radians(), longitude_deg.to_radians())
    }

    pub fn latitude(&self) -> f64 {
        self.latitude
    }

    pub fn longitude(&self) -> f64 {
        self.longitude
    }
}

/// Radii of the Earth and of the two satellite shells.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrbitGeometry {
    earth_radius_km: f64,
    geo_altitude_km: f64,
    leo_altitude_km: f64,
}

impl OrbitGeometry {
    pub fn new(earth_radius_km: f64, geo_altitude_km: f64, leo_altitude_km: f64) -> Result<Self> {
        for (name, v) in [
            ("earth_radius_km", earth_radius_km),
            ("geo_altitude_km", geo_altitude_km),
            ("leo_altitude_km", leo_altitude_km),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::invalid(name, format!("must be positive, got {v}")));
            }
        }
        if geo_altitude_km <= leo_altitude_km {
            return Err(Error::invalid(
                "geo_altitude_km",
                format!("must exceed the LEO altitude {leo_altitude_km} km, got {geo_altitude_km}"),
            ));
        }
        Ok(Self {
            earth_radius_km,
            geo_altitude_km,
            leo_altitude_km,
        })
    }

    pub fn earth_radius(&self) -> f64 {
        self.earth_radius_km
    }

    pub fn geo_altitude(&self) -> f64 {
        self.geo_altitude_km
    }

    pub fn leo_altitude(&self) -> f64 {
        self.leo_altitude_km
    }

    /// `r_E + a_G`
    pub fn geo_orbit_radius(&self) -> f64 {
        self.earth_radius_km + self.geo_altitude_km
    }

    /// `r_E + a_L`
    pub fn leo_shell_radius(&self) -> f64 {
        self.earth_radius_km + self.leo_altitude_km
    }
}

impl Default for OrbitGeometry {
    fn default() -> Self {
        Self {
            earth_radius_km: 6378.0,
            geo_altitude_km: 35786.0,
            leo_altitude_km: 600.0,
        }
    }
}

/// Nearest and farthest distance to a visible satellite of one kind.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistanceBounds {
    pub r_min_km: f64,
    pub r_vis_max_km: f64,
}

impl DistanceBounds {
    pub fn contains(&self, r: f64) -> bool {
        r >= self.r_min_km && r <= self.r_vis_max_km
    }

    /// Clamp `r` into the support.
    pub fn clamp(&self, r: f64) -> f64 {
        r.clamp(self.r_min_km, self.r_vis_max_km)
    }
}

/// Cartesian position of the terminal in the Earth-centred frame.
pub fn terminal_position(loc: &TerminalLocation, geom: &OrbitGeometry) -> [f64; 3] {
    let r = geom.earth_radius();
    let (sin_phi, cos_phi) = loc.latitude().sin_cos();
    let (sin_theta, cos_theta) = loc.longitude().sin_cos();
    [r * cos_phi * cos_theta, r * cos_phi * sin_theta, r * sin_phi]
}

/// Latitude beyond which no point of the geostationary orbit is above the
/// horizon.
pub fn inv_latitude(geom: &OrbitGeometry) -> f64 {
    (geom.earth_radius() / geom.geo_orbit_radius()).acos()
}

pub fn geo_visible(loc: &TerminalLocation, geom: &OrbitGeometry) -> bool {
    loc.latitude().abs() < inv_latitude(geom) - GEO_LIMIT_GUARD_RAD
}

/// Half-angle (orbit longitude offset) of the visible GEO arc, zero when the
/// arc is empty.
pub fn geo_visible_half_angle(loc: &TerminalLocation, geom: &OrbitGeometry) -> f64 {
    if !geo_visible(loc, geom) {
        return 0.0;
    }
    let arg = geom.earth_radius() / (geom.geo_orbit_radius() * loc.latitude().cos());
    if arg >= 1.0 {
        0.0
    } else {
        arg.acos()
    }
}

pub fn geo_visible_arc_length(loc: &TerminalLocation, geom: &OrbitGeometry) -> f64 {
    2.0 * geom.geo_orbit_radius() * geo_visible_half_angle(loc, geom)
}

/// Area of the visible spherical cap of the LEO shell, `2 pi (r_E + a_L) a_L`.
pub fn leo_visible_cap_area(geom: &OrbitGeometry) -> f64 {
    2.0 * PI * geom.leo_shell_radius() * geom.leo_altitude()
}

/// Polar half-angle of the visible LEO cap measured from the terminal
/// direction.
pub fn leo_cap_half_angle(geom: &OrbitGeometry) -> f64 {
    (geom.earth_radius() / geom.leo_shell_radius()).acos()
}

/// Distance bounds of the visible GEO arc, or `None` when the arc is empty.
pub fn geo_distance_bounds(loc: &TerminalLocation, geom: &OrbitGeometry) -> Option<DistanceBounds> {
    if !geo_visible(loc, geom) {
        return None;
    }
    let re = geom.earth_radius();
    let rg = geom.geo_orbit_radius();
    let ag = geom.geo_altitude();
    let (sin_phi, cos_phi) = loc.latitude().sin_cos();
    let r_min = ((rg - re * cos_phi).powi(2) + (re * sin_phi).powi(2)).sqrt();
    let r_vis_max = (ag * ag + 2.0 * ag * re).sqrt();
    Some(DistanceBounds {
        r_min_km: r_min,
        r_vis_max_km: r_vis_max,
    })
}

pub fn leo_distance_bounds(geom: &OrbitGeometry) -> DistanceBounds {
    let al = geom.leo_altitude();
    DistanceBounds {
        r_min_km: al,
        r_vis_max_km: (al * al + 2.0 * al * geom.earth_radius()).sqrt(),
    }
}

/// Terminal-centred description of the GEO orbit in terms of the longitude
/// offset `delta` of an orbit point from the terminal meridian.
///
/// Squared distance is `near^2 + 4 R_G r_E cos(phi) sin^2(delta / 2)`, so the
/// offset is a smooth monotone reparameterisation of distance on `[0, pi]`.
/// The half-angle form keeps full relative precision close to `near`, where
/// dense constellations put almost all of the nearest-distance mass.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct GeoArc {
    pub(crate) orbit_radius: f64,
    /// Distance to the closest orbit point, `r_min(phi)`.
    near: f64,
    /// Distance to the farthest orbit point.
    far: f64,
    /// `2 (r_E + a_G) r_E cos(phi)`
    cross: f64,
}

impl GeoArc {
    pub(crate) fn new(loc: &TerminalLocation, geom: &OrbitGeometry) -> Self {
        let rg = geom.geo_orbit_radius();
        let re = geom.earth_radius();
        let (sin_phi, cos_phi) = loc.latitude().sin_cos();
        let axial = (re * sin_phi).powi(2);
        Self {
            orbit_radius: rg,
            near: ((rg - re * cos_phi).powi(2) + axial).sqrt(),
            far: ((rg + re * cos_phi).powi(2) + axial).sqrt(),
            cross: 2.0 * rg * re * cos_phi,
        }
    }

    pub(crate) fn distance_at(&self, delta: f64) -> f64 {
        let h = (0.5 * delta).sin();
        (self.near * self.near + 2.0 * self.cross * h * h).sqrt()
    }

    /// `sin^2(delta / 2)` and `cos^2(delta / 2)` for the orbit points at
    /// distance `r`, each computed from a difference of nearby squares.
    fn half_angle_sq(&self, r: f64) -> (f64, f64) {
        let s2 = ((r - self.near) * (r + self.near) / (2.0 * self.cross)).clamp(0.0, 1.0);
        let c2 = ((self.far - r) * (self.far + r) / (2.0 * self.cross)).clamp(0.0, 1.0);
        (s2, c2)
    }

    /// Offset of the orbit points at distance `r`, clamped to `[0, pi]`.
    pub(crate) fn offset_at(&self, r: f64) -> f64 {
        let (s2, c2) = self.half_angle_sq(r);
        2.0 * s2.sqrt().atan2(c2.sqrt())
    }

    /// Length of the orbit arc within distance `r` of the terminal.
    #[cfg(test)]
    pub(crate) fn arc_within(&self, r: f64) -> f64 {
        2.0 * self.orbit_radius * self.offset_at(r)
    }
}

/// `d|A_G(r)|/dr`: growth rate of the length of the orbit arc within
/// distance `r` of the terminal.
///
/// Has an inverse-square-root singularity at `r_min(phi)` and at the far
/// side of the orbit; outside that open interval it returns
/// [`Error::OutsideSupport`].
pub fn geo_arc_measure_derivative(
    r: f64,
    loc: &TerminalLocation,
    geom: &OrbitGeometry,
) -> Result<f64> {
    let arc = GeoArc::new(loc, geom);
    if !(r > arc.near && r < arc.far) {
        return Err(Error::OutsideSupport {
            r_km: r,
            lo_km: arc.near,
            hi_km: arc.far,
        });
    }
    // r dr = R_G r_E cos(phi) sin(delta) d(delta), and both ends of the
    // orbit arc move with delta.
    let (s2, c2) = arc.half_angle_sq(r);
    let sin_delta = 2.0 * (s2 * c2).sqrt();
    Ok(4.0 * r * arc.orbit_radius / (arc.cross * sin_delta))
}

/// Area of the LEO shell within distance `r` of the terminal (zero below
/// `a_L`).
pub fn leo_cap_within(r: f64, geom: &OrbitGeometry) -> f64 {
    let al = geom.leo_altitude();
    if r <= al {
        return 0.0;
    }
    PI * geom.leo_shell_radius() * (r * r - al * al) / geom.earth_radius()
}

/// `d|A_L(r)|/dr = 2 pi r (r_E + a_L) / r_E`.
pub fn leo_cap_measure_derivative(r: f64, geom: &OrbitGeometry) -> f64 {
    2.0 * PI * r * geom.leo_shell_radius() / geom.earth_radius()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::QuadratureSpec;
    use approx::assert_relative_eq;

    fn geom() -> OrbitGeometry {
        OrbitGeometry::default()
    }

    #[test]
    fn terminal_position_axes() {
        let p = terminal_position(&TerminalLocation::new(0.0, 0.0).unwrap(), &geom());
        assert_eq!(p, [6378.0, 0.0, 0.0]);

        let p = terminal_position(&TerminalLocation::new(FRAC_PI_2, 1.234).unwrap(), &geom());
        assert!(p[0].abs() < 1e-9 && p[1].abs() < 1e-9);
        assert_relative_eq!(p[2], 6378.0);

        let p = terminal_position(&TerminalLocation::from_degrees(45.0, 90.0).unwrap(), &geom());
        assert!(p[0].abs() < 1e-9);
        assert_relative_eq!(p[1], 4_509.927_050_407_8, epsilon = 1e-6);
        assert_relative_eq!(p[2], 4_509.927_050_407_8, epsilon = 1e-6);
    }

    #[test]
    fn terminal_rejects_bad_latitude() {
        assert!(TerminalLocation::new(1.6, 0.0).is_err());
        assert!(TerminalLocation::new(f64::NAN, 0.0).is_err());
        let loc = TerminalLocation::new(0.0, -FRAC_PI_2).unwrap();
        assert_relative_eq!(loc.longitude(), 1.5 * PI);
    }

    #[test]
    fn orbit_geometry_validation() {
        assert!(OrbitGeometry::new(6378.0, 600.0, 35786.0).is_err());
        assert!(OrbitGeometry::new(-1.0, 35786.0, 600.0).is_err());
        assert!(OrbitGeometry::new(6378.0, 35786.0, 0.0).is_err());
    }

    #[test]
    fn inv_latitude_values() {
        assert_relative_eq!(inv_latitude(&geom()).to_degrees(), 81.299_671_756_557, epsilon = 1e-9);
        let low = OrbitGeometry::new(6378.0, 600.0, 300.0).unwrap();
        assert_relative_eq!(inv_latitude(&low).to_degrees(), 23.933_703_580_214, epsilon = 1e-9);
        let tiny = OrbitGeometry::new(6378.0, 1e-9, 1e-10).unwrap();
        assert!(inv_latitude(&tiny) < 1e-4);
    }

    #[test]
    fn geo_bounds() {
        let b = geo_distance_bounds(&TerminalLocation::new(0.0, 0.0).unwrap(), &geom()).unwrap();
        assert_relative_eq!(b.r_min_km, 35786.0, epsilon = 1e-9);
        assert_relative_eq!(b.r_vis_max_km, 41_678.819_704_977, epsilon = 1e-6);

        let b = geo_distance_bounds(&TerminalLocation::from_degrees(60.0, 0.0).unwrap(), &geom()).unwrap();
        assert_relative_eq!(b.r_vis_max_km, 41_678.819_704_977, epsilon = 1e-6);

        assert!(geo_distance_bounds(&TerminalLocation::from_degrees(85.0, 0.0).unwrap(), &geom()).is_none());
        let edge = TerminalLocation::new(inv_latitude(&geom()) - 1e-10, 0.0).unwrap();
        assert!(geo_distance_bounds(&edge, &geom()).is_none());
    }

    #[test]
    fn leo_bounds() {
        let b = leo_distance_bounds(&geom());
        assert_eq!(b.r_min_km, 600.0);
        assert_relative_eq!(b.r_vis_max_km, 2_830.830_266_900_51, epsilon = 1e-9);

        let g = OrbitGeometry::new(6378.0, 35786.0, 1200.0).unwrap();
        assert_relative_eq!(leo_distance_bounds(&g).r_vis_max_km, 4_092.334_297_195_18, epsilon = 1e-9);

        let g = OrbitGeometry::new(6378.0, 35786.0, 1e-12).unwrap();
        let b = leo_distance_bounds(&g);
        assert!(b.r_min_km < 1e-11 && b.r_vis_max_km < 2e-4);
    }

    #[test]
    fn leo_cap_derivative_values() {
        let g = geom();
        assert_relative_eq!(leo_cap_measure_derivative(600.0, &g), 4_124.559_461_288_73, epsilon = 1e-9);
        let rv = leo_distance_bounds(&g).r_vis_max_km;
        assert_relative_eq!(leo_cap_measure_derivative(rv, &g), 19_459.879_601_078_297, epsilon = 1e-8);
        for r in [700.0, 1234.5, 2000.0] {
            assert_eq!(leo_cap_measure_derivative(2.0 * r, &g), 2.0 * leo_cap_measure_derivative(r, &g));
        }
    }

    #[test]
    fn geo_arc_derivative_blows_up_at_rmin() {
        let loc = TerminalLocation::new(0.0, 0.0).unwrap();
        let g = geom();
        let rmin = geo_distance_bounds(&loc, &g).unwrap().r_min_km;
        let mut last = 0.0;
        for eps in [1e-1, 1e-3, 1e-5, 1e-7] {
            let v = geo_arc_measure_derivative(rmin + eps, &loc, &g).unwrap();
            assert!(v > last);
            last = v;
        }
        assert!(last > 1e4);
        assert!(matches!(
            geo_arc_measure_derivative(rmin - 1.0, &loc, &g),
            Err(Error::OutsideSupport { .. })
        ));
        assert!(geo_arc_measure_derivative(1.0e6, &loc, &g).is_err());
    }

    /// Arc length within distance r by brute-force sampling of the orbit
    /// circle, independent of the closed form.
    fn sampled_arc_within(r: f64, loc: &TerminalLocation, g: &OrbitGeometry, n: usize) -> f64 {
        let t = terminal_position(loc, g);
        let rg = g.geo_orbit_radius();
        let step = TAU / n as f64;
        let inside = (0..n)
            .filter(|k| {
                let psi = (*k as f64 + 0.5) * step;
                let x = [rg * psi.cos(), rg * psi.sin(), 0.0];
                let d2: f64 = (0..3).map(|i| (x[i] - t[i]).powi(2)).sum();
                d2 <= r * r
            })
            .count();
        inside as f64 * step * rg
    }

    #[test]
    fn geo_arc_derivative_matches_sampled_arc() {
        let loc = TerminalLocation::new(0.0, 0.3).unwrap();
        let g = geom();
        let (r, h) = (40_000.0, 50.0);
        let n = 20_000_000;
        let numeric = (sampled_arc_within(r + h, &loc, &g, n) - sampled_arc_within(r - h, &loc, &g, n)) / (2.0 * h);
        let exact = geo_arc_measure_derivative(r, &loc, &g).unwrap();
        assert_relative_eq!(numeric, exact, max_relative = 2e-3);
    }

    #[test]
    fn arc_within_matches_visible_arc_at_horizon() {
        let g = geom();
        for deg in [0.0, 30.0, 70.0, 81.0] {
            let loc = TerminalLocation::from_degrees(deg, 0.0).unwrap();
            let b = geo_distance_bounds(&loc, &g).unwrap();
            let arc = GeoArc::new(&loc, &g);
            assert_relative_eq!(arc.arc_within(b.r_vis_max_km), geo_visible_arc_length(&loc, &g), max_relative = 1e-9);
            assert_eq!(arc.arc_within(b.r_min_km), 0.0);
            let r = b.r_min_km * (1.0 + 1e-12);
            assert_relative_eq!(arc.distance_at(arc.offset_at(r)), r, max_relative = 1e-15);
            let r = 0.5 * (b.r_min_km + b.r_vis_max_km);
            assert_relative_eq!(arc.distance_at(arc.offset_at(r)), r, max_relative = 1e-12);
        }
    }

    #[test]
    fn integrated_geo_derivative_recovers_arc() {
        let g = geom();
        let q = QuadratureSpec {
            rel_tol: 1e-9,
            abs_tol: 1e-9,
            max_subdivisions: 5000,
            ..QuadratureSpec::default()
        };
        for deg in [0.0, 20.0, 45.0, 70.0, 80.0] {
            let loc = TerminalLocation::from_degrees(deg, 0.0).unwrap();
            let b = geo_distance_bounds(&loc, &g).unwrap();
            let integral = q
                .integrate(|r| geo_arc_measure_derivative(r, &loc, &g).unwrap_or(0.0), b.r_min_km, b.r_vis_max_km)
                .unwrap();
            let re = g.earth_radius();
            let rg = g.geo_orbit_radius();
            let closed = 2.0 * rg * (re / (rg * loc.latitude().cos())).acos();
            assert_relative_eq!(integral.value, closed, max_relative = 1e-6);
        }
    }

    #[test]
    fn integrated_leo_derivative_recovers_cap() {
        let g = geom();
        let b = leo_distance_bounds(&g);
        let q = QuadratureSpec::default();
        let integral = q
            .integrate(|r| leo_cap_measure_derivative(r, &g), b.r_min_km, b.r_vis_max_km)
            .unwrap();
        let rl = g.leo_shell_radius();
        let cap = 2.0 * PI * rl * rl * (1.0 - leo_cap_half_angle(&g).cos());
        assert_relative_eq!(integral.value, cap, max_relative = 1e-6);
        assert_relative_eq!(leo_visible_cap_area(&g), cap, max_relative = 1e-12);
        assert_relative_eq!(leo_cap_within(b.r_vis_max_km, &g), cap, max_relative = 1e-12);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn terminal_norm_is_earth_radius(lat in -FRAC_PI_2..=FRAC_PI_2, lon in -10.0f64..10.0) {
                let g = geom();
                let p = terminal_position(&TerminalLocation::new(lat, lon).unwrap(), &g);
                let n = (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt();
                prop_assert!((n - 6378.0).abs() <= 1e-9 * 6378.0);
            }

            #[test]
            fn invisible_iff_beyond_limit(lat in -FRAC_PI_2..=FRAC_PI_2) {
                let g = geom();
                let loc = TerminalLocation::new(lat, 0.0).unwrap();
                let limit = inv_latitude(&g);
                prop_assert_eq!(geo_distance_bounds(&loc, &g).is_none(), lat.abs() >= limit - GEO_LIMIT_GUARD_RAD);
            }

            #[test]
            fn rmin_nondecreasing_in_latitude(a in 0.0f64..1.41, b in 0.0f64..1.41) {
                let g = geom();
                let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
                let r_lo = geo_distance_bounds(&TerminalLocation::new(lo, 0.0).unwrap(), &g).unwrap().r_min_km;
                let r_hi = geo_distance_bounds(&TerminalLocation::new(-hi, 0.0).unwrap(), &g).unwrap().r_min_km;
                prop_assert!(r_lo <= r_hi + 1e-9);
                prop_assert!(r_hi < geo_distance_bounds(&TerminalLocation::new(hi, 0.0).unwrap(), &g).unwrap().r_vis_max_km);
            }
        }
    }
}
