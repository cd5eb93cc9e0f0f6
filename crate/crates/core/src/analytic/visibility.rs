//! Probability that at least one satellite of a type is visible: one minus
//! the PPP void probability of the visible region.

use crate::geometry::{geo_visible_arc_length, leo_visible_cap_area};
use crate::scenario::{SatKind, ScenarioConfig};

pub fn p_vis_geo(cfg: &ScenarioConfig) -> f64 {
    let measure = geo_visible_arc_length(&cfg.terminal, &cfg.geom);
    -(-cfg.geo.density * measure).exp_m1()
}

pub fn p_vis_leo(cfg: &ScenarioConfig) -> f64 {
    let measure = leo_visible_cap_area(&cfg.geom);
    -(-cfg.leo.density * measure).exp_m1()
}

pub fn p_vis(kind: SatKind, cfg: &ScenarioConfig) -> f64 {
    match kind {
        SatKind::Geo => p_vis_geo(cfg),
        SatKind::Leo => p_vis_leo(cfg),
    }
}

/// Mean number of visible satellites of a type.
pub fn mean_visible_count(kind: SatKind, cfg: &ScenarioConfig) -> f64 {
    match kind {
        SatKind::Geo => cfg.geo.density * geo_visible_arc_length(&cfg.terminal, &cfg.geom),
        SatKind::Leo => cfg.leo.density * leo_visible_cap_area(&cfg.geom),
    }
}
