//! Result tables, plot data and run manifests.
//!
//! Probabilities are unitless in `[0, 1]`; thresholds and gains are in dB,
//! latitudes in degrees, counts are expected satellites per orbit or shell.
//! Numbers are written as the shortest decimal that reads back exactly, so
//! identical runs produce byte-identical files.

use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};
use serde::Serialize;

use crate::config::{emit_config, ConfigFile, SweepMode, SweepVariable};
use crate::sweep::{GroupTiming, RowData, SweepOutput, FIELDS};

fn num(x: f64) -> String {
    format!("{x:?}")
}

/// Column names for a sweep over `variable` in `mode`.
pub fn csv_header(variable: SweepVariable, mode: SweepMode) -> Vec<String> {
    let mut h = vec![variable.as_str().to_string()];
    if variable != SweepVariable::TauDb {
        h.push("tau_db".into());
    }
    for f in FIELDS {
        match mode {
            SweepMode::Analytic => h.push(f.into()),
            SweepMode::MonteCarlo => {
                h.push(f.into());
                h.push(format!("{f}_se"));
            }
            SweepMode::Validate => {
                for suffix in ["analytic", "mc", "se", "z"] {
                    h.push(format!("{f}_{suffix}"));
                }
            }
        }
    }
    if mode == SweepMode::Validate {
        h.push("max_abs_z".into());
    }
    if mode != SweepMode::Analytic {
        h.push("n_trials".into());
    }
    h.push("error".into());
    h
}

pub fn write_csv<W: Write>(out: &SweepOutput, w: W) -> Result<()> {
    let header = csv_header(out.variable, out.mode);
    let mut wr = csv::Writer::from_writer(w);
    wr.write_record(&header)?;
    for row in &out.rows {
        let mut rec = vec![num(row.value)];
        if out.variable != SweepVariable::TauDb {
            rec.push(num(row.tau_db));
        }
        match &row.result {
            Ok(RowData::Analytic(v)) => rec.extend(v.iter().map(|x| num(*x))),
            Ok(RowData::MonteCarlo(v)) => {
                for e in v {
                    rec.push(num(e.mean));
                    rec.push(num(e.std_error));
                }
            }
            Ok(d @ RowData::Validate { analytic, mc, z }) => {
                for i in 0..FIELDS.len() {
                    rec.extend([num(analytic[i]), num(mc[i].mean), num(mc[i].std_error), num(z[i])]);
                }
                rec.push(num(d.max_abs_z().unwrap_or(f64::NAN)));
            }
            Err(_) => {}
        }
        let ok = row.result.is_ok();
        // Pad failed rows so every record has the header's width.
        while rec.len() < header.len() - 1 - (out.mode != SweepMode::Analytic) as usize {
            rec.push(String::new());
        }
        if out.mode != SweepMode::Analytic {
            rec.push(if ok { row.n_trials.to_string() } else { String::new() });
        }
        rec.push(row.result.as_ref().err().cloned().unwrap_or_default());
        wr.write_record(&rec)?;
    }
    wr.flush()?;
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlotStyle {
    /// Long-format CSV.
    Csv,
    /// Whitespace-separated blocks, one per curve, addressable with `index`.
    Gnuplot,
    /// JSON object with an inline `values` array.
    Vega,
}

/// One point of one curve.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PlotPoint {
    pub x: f64,
    pub tau_db: f64,
    /// `coverage` or `association`.
    pub metric: &'static str,
    /// `hybrid`, `geo_only`, `leo_only` for coverage; `geo`, `leo` for
    /// association.
    pub scenario: &'static str,
    /// `analytic` or `montecarlo`.
    pub source: &'static str,
    pub value: f64,
    /// Standard error; `NaN` for analytic points.
    pub std_error: f64,
}

const CURVES: [(&str, &str, usize); 5] = [
    ("coverage", "hybrid", 8),
    ("coverage", "geo_only", 10),
    ("coverage", "leo_only", 11),
    ("association", "geo", 2),
    ("association", "leo", 3),
];

/// Curves as points, grouped by curve in a fixed order. Failed rows are
/// left out.
pub fn plot_points(out: &SweepOutput) -> Vec<PlotPoint> {
    let mut taus: Vec<f64> = Vec::new();
    for r in &out.rows {
        if out.variable != SweepVariable::TauDb && !taus.contains(&r.tau_db) {
            taus.push(r.tau_db);
        }
    }
    // Non-threshold sweeps give one curve per threshold; keep each contiguous.
    let ordered: Vec<&crate::sweep::SweepRow> = if taus.is_empty() {
        out.rows.iter().collect()
    } else {
        taus.iter().flat_map(|t| out.rows.iter().filter(move |r| r.tau_db == *t)).collect()
    };
    let mut pts = Vec::new();
    for source in ["analytic", "montecarlo"] {
        for (metric, scenario, field) in CURVES {
            for row in &ordered {
                let (value, std_error) = match (&row.result, source) {
                    (Ok(RowData::Analytic(a)), "analytic") | (Ok(RowData::Validate { analytic: a, .. }), "analytic") => {
                        (a[field], f64::NAN)
                    }
                    (Ok(RowData::MonteCarlo(m)), "montecarlo") | (Ok(RowData::Validate { mc: m, .. }), "montecarlo") => {
                        (m[field].mean, m[field].std_error)
                    }
                    _ => continue,
                };
                pts.push(PlotPoint {
                    x: row.value,
                    tau_db: row.tau_db,
                    metric,
                    scenario,
                    source,
                    value,
                    std_error,
                });
            }
        }
    }
    pts
}

pub fn emit_plotdata<W: Write>(out: &SweepOutput, style: PlotStyle, mut w: W) -> Result<()> {
    let pts = plot_points(out);
    let x_name = out.variable.as_str();
    match style {
        PlotStyle::Csv => {
            let mut wr = csv::Writer::from_writer(w);
            wr.write_record([x_name, "tau_db", "metric", "scenario", "source", "value", "std_error"])?;
            for p in &pts {
                wr.write_record([
                    num(p.x),
                    num(p.tau_db),
                    p.metric.into(),
                    p.scenario.into(),
                    p.source.into(),
                    num(p.value),
                    num(p.std_error),
                ])?;
            }
            wr.flush()?;
        }
        PlotStyle::Gnuplot => {
            let mut block: Option<(&str, &str, &str, f64)> = None;
            for p in &pts {
                // Threshold sweeps form one curve; other sweeps one per threshold.
                let tau_key = if out.variable == SweepVariable::TauDb { 0.0 } else { p.tau_db };
                let key = (p.metric, p.scenario, p.source, tau_key);
                if block != Some(key) {
                    if block.is_some() {
                        writeln!(w, "\n")?;
                    }
                    writeln!(
                        w,
                        "# metric={} scenario={} source={} tau_db={}",
                        p.metric,
                        p.scenario,
                        p.source,
                        if out.variable == SweepVariable::TauDb { "x".into() } else { num(p.tau_db) }
                    )?;
                    writeln!(w, "# {x_name} value std_error")?;
                    block = Some(key);
                }
                writeln!(w, "{} {} {}", num(p.x), num(p.value), num(p.std_error))?;
            }
        }
        PlotStyle::Vega => {
            #[derive(Serialize)]
            struct Data<'a> {
                x_field: &'a str,
                values: Vec<serde_json::Value>,
            }
            let values = pts
                .iter()
                .map(|p| {
                    serde_json::json!({
                        x_name: finite(p.x),
                        "tau_db": finite(p.tau_db),
                        "metric": p.metric,
                        "scenario": p.scenario,
                        "source": p.source,
                        "value": finite(p.value),
                        "std_error": finite(p.std_error),
                    })
                })
                .collect();
            serde_json::to_writer_pretty(&mut w, &Data { x_field: x_name, values })?;
            writeln!(w)?;
        }
    }
    Ok(())
}

/// JSON has no `NaN`; undefined values become `null`.
fn finite(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}

/// Sidecar describing how a result file was produced.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub mode: &'static str,
    pub seed: u64,
    pub trials: u64,
    pub workers: Option<usize>,
    pub timestamp_unix_s: u64,
    /// The effective configuration, in the input file format.
    pub config: String,
    pub outputs: Vec<String>,
    pub points: Vec<GroupTiming>,
}

impl RunManifest {
    pub fn new(command: &str, config: &ConfigFile, out: &SweepOutput, seed: u64, trials: u64, workers: Option<usize>) -> Self {
        let timestamp_unix_s = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        Self {
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            command: command.to_string(),
            mode: out.mode.as_str(),
            seed,
            trials,
            workers,
            timestamp_unix_s,
            config: emit_config(config),
            outputs: Vec::new(),
            points: out.timings.clone(),
        }
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        let f = std::fs::File::create(path).with_context(|| format!("cannot create {}", path.display()))?;
        serde_json::to_writer_pretty(std::io::BufWriter::new(f), self)?;
        Ok(())
    }
}

/// `results.csv` -> `results.manifest.json`.
pub fn manifest_path(data: &Path) -> std::path::PathBuf {
    data.with_extension("manifest.json")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sweep::SweepRow;

    fn output(mode: SweepMode, variable: SweepVariable) -> SweepOutput {
        let row = |v: f64, ok: bool| SweepRow {
            value: v,
            tau_db: 0.0,
            n_trials: 10,
            result: if ok {
                Ok(RowData::Analytic(std::array::from_fn(|i| i as f64 / 20.0)))
            } else {
                Err("boom, with comma".into())
            },
        };
        SweepOutput {
            variable,
            mode,
            rows: vec![row(1.0, true), row(2.0, false)],
            timings: vec![],
        }
    }

    #[test]
    fn failed_rows_keep_table_shape() {
        let out = output(SweepMode::Analytic, SweepVariable::LatitudeDeg);
        let mut buf = Vec::new();
        write_csv(&out, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut rd = csv::Reader::from_reader(text.as_bytes());
        let width = rd.headers().unwrap().len();
        let recs: Vec<_> = rd.records().map(|r| r.unwrap()).collect();
        assert!(recs.iter().all(|r| r.len() == width));
        assert_eq!(&recs[1][width - 1], "boom, with comma");
        assert_eq!(&recs[0][width - 1], "");
    }

    #[test]
    fn plot_styles_carry_scenario_labels() {
        let out = output(SweepMode::Analytic, SweepVariable::TauDb);
        for style in [PlotStyle::Csv, PlotStyle::Gnuplot, PlotStyle::Vega] {
            let mut buf = Vec::new();
            emit_plotdata(&out, style, &mut buf).unwrap();
            let text = String::from_utf8(buf).unwrap();
            for s in ["hybrid", "geo_only", "leo_only"] {
                assert!(text.contains(s), "{style:?} lacks {s}");
            }
        }
        assert_eq!(plot_points(&out).len(), CURVES.len());
    }
}
