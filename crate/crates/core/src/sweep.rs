//! Parameter sweeps and figure data.
//!
//! Every grid point is an independent pure computation. Points run on a
//! rayon pool and are collected in grid order, so the output does not
//! depend on scheduling.

use std::fmt::{self, Write as _};
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::fock::FockIndex;
use crate::observables::ObservableReport;
use crate::pdc::{evolve_analytic, PdcParams, TruncationPolicy};
use crate::scs::ScsParams;

/// Pair cap used for figure data, whose pump axis reaches `r = 3`.
pub const FIGURE_MAX_PAIRS: usize = 20_000;
pub const CURVE_POINTS: usize = 101;
pub const CONTOUR_POINTS: usize = 61;
/// Joint probabilities exported for the curvature figure must reach this
/// value somewhere on the curve.
pub const JOINT_EXPORT_THRESHOLD: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PointParams {
    pub lambda: f64,
    pub photons: usize,
    pub z: Complex64,
    pub r: f64,
    pub theta: f64,
}

impl fmt::Display for PointParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(lambda={}, M={}, z={}{:+}i, r={}, theta={})",
            self.lambda, self.photons, self.z.re, self.z.im, self.r, self.theta
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PointResult {
    pub params: PointParams,
    pub report: ObservableReport,
    pub cutoff: usize,
    /// Norm deficit of the truncated expansion.
    pub leakage: f64,
}

/// Seeds an SCS, evolves it analytically and measures it.
pub fn evaluate_point(params: &PointParams, policy: &TruncationPolicy) -> Result<PointResult> {
    let seed = ScsParams::new(params.lambda, params.photons, params.z)?;
    let pdc = PdcParams::new(params.r, params.theta)?;
    let out = evolve_analytic(&seed, &pdc, policy)?;
    Ok(PointResult {
        params: *params,
        report: ObservableReport::measure(&out.state)?,
        cutoff: out.cutoff,
        leakage: out.norm_deficit,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AxisName {
    Lambda,
    R,
    Z,
}

impl AxisName {
    pub fn as_str(self) -> &'static str {
        match self {
            AxisName::Lambda => "lambda",
            AxisName::R => "r",
            AxisName::Z => "z",
        }
    }
}

impl FromStr for AxisName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lambda" => Ok(AxisName::Lambda),
            "r" => Ok(AxisName::R),
            "z" => Ok(AxisName::Z),
            other => Err(Error::InvalidConfig(format!(
                "unknown sweep axis `{other}` (expected lambda, r or z)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Axis {
    pub name: AxisName,
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
}

impl Axis {
    pub fn new(name: AxisName, start: f64, stop: f64, steps: usize) -> Self {
        Self {
            name,
            start,
            stop,
            steps,
        }
    }

    /// Parses `name:start:stop:steps`.
    pub fn parse(spec: &str) -> Result<Self> {
        let parts: Vec<&str> = spec.split(':').collect();
        let bad = || Error::InvalidConfig(format!("axis `{spec}` is not name:start:stop:steps"));
        if parts.len() != 4 {
            return Err(bad());
        }
        Ok(Self {
            name: parts[0].parse()?,
            start: parts[1].parse().map_err(|_| bad())?,
            stop: parts[2].parse().map_err(|_| bad())?,
            steps: parts[3].parse().map_err(|_| bad())?,
        })
    }

    fn validate(&self) -> Result<()> {
        if self.steps < 2 {
            return Err(Error::InvalidConfig(format!(
                "axis {} needs at least 2 steps, got {}",
                self.name.as_str(),
                self.steps
            )));
        }
        if !self.start.is_finite() || !self.stop.is_finite() || self.start >= self.stop {
            return Err(Error::InvalidConfig(format!(
                "axis {} needs start < stop, got [{}, {}]",
                self.name.as_str(),
                self.start,
                self.stop
            )));
        }
        Ok(())
    }

    /// Evenly spaced values; both endpoints are exact.
    pub fn values(&self) -> Vec<f64> {
        let span = self.stop - self.start;
        let last = (self.steps - 1) as f64;
        (0..self.steps)
            .map(|k| {
                if k + 1 == self.steps {
                    self.stop
                } else {
                    self.start + span * k as f64 / last
                }
            })
            .collect()
    }
}

/// Values of the parameters not swept. Exactly one of `lambda`, `z`, `r`
/// is absent per swept axis.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct FixedParams {
    pub lambda: Option<f64>,
    pub photons: Option<usize>,
    pub z: Option<Complex64>,
    pub r: Option<f64>,
    pub theta: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Column {
    S,
    Ns,
    Ni,
    Qs,
    Qi,
    G2,
    Leakage,
}

impl Column {
    pub const ALL: [Column; 7] = [
        Column::S,
        Column::Ns,
        Column::Ni,
        Column::Qs,
        Column::Qi,
        Column::G2,
        Column::Leakage,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Column::S => "S",
            Column::Ns => "ns",
            Column::Ni => "ni",
            Column::Qs => "Qs",
            Column::Qi => "Qi",
            Column::G2 => "g2",
            Column::Leakage => "leakage",
        }
    }

    fn value(self, point: &PointResult) -> Option<f64> {
        let r = &point.report;
        match self {
            Column::S => Some(r.entropy),
            Column::Ns => Some(r.n_s),
            Column::Ni => Some(r.n_i),
            Column::Qs => r.q_s,
            Column::Qi => r.q_i,
            Column::G2 => r.g2,
            Column::Leakage => Some(point.leakage),
        }
    }
}

impl FromStr for Column {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Column::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown observable column `{s}`")))
    }
}

pub const PARAM_COLUMNS: [&str; 6] = ["lambda", "M", "z_re", "z_im", "r", "theta"];

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub axes: Vec<Axis>,
    pub fixed: FixedParams,
    /// Report columns to emit; kept in canonical order regardless of the
    /// order given.
    pub observables: Vec<Column>,
    pub policy: TruncationPolicy,
    /// Worker count; `None` uses the rayon default.
    pub threads: Option<usize>,
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if self.axes.is_empty() || self.axes.len() > 2 {
            return Err(Error::InvalidConfig(format!(
                "a sweep has one or two axes, got {}",
                self.axes.len()
            )));
        }
        for axis in &self.axes {
            axis.validate()?;
        }
        if self.axes.len() == 2 && self.axes[0].name == self.axes[1].name {
            return Err(Error::InvalidConfig(format!(
                "axis {} given twice",
                self.axes[0].name.as_str()
            )));
        }
        let swept = |n: AxisName| self.axes.iter().any(|a| a.name == n);
        let check = |name: AxisName, fixed: bool| match (swept(name), fixed) {
            (true, true) => Err(Error::InvalidConfig(format!(
                "{} is both swept and fixed",
                name.as_str()
            ))),
            (false, false) => Err(Error::InvalidConfig(format!(
                "{} is neither swept nor fixed",
                name.as_str()
            ))),
            _ => Ok(()),
        };
        check(AxisName::Lambda, self.fixed.lambda.is_some())?;
        check(AxisName::R, self.fixed.r.is_some())?;
        check(AxisName::Z, self.fixed.z.is_some())?;
        if self.fixed.photons.is_none() {
            return Err(Error::InvalidConfig("M must be fixed".into()));
        }
        if self.fixed.theta.is_none() {
            return Err(Error::InvalidConfig("theta must be fixed".into()));
        }
        if self.threads == Some(0) {
            return Err(Error::InvalidConfig("threads must be >= 1".into()));
        }
        Ok(())
    }

    /// Grid points in row-major order (first axis outermost).
    pub fn points(&self) -> Vec<PointParams> {
        let f = &self.fixed;
        let base = PointParams {
            lambda: f.lambda.unwrap_or(0.0),
            photons: f.photons.unwrap_or(1),
            z: f.z.unwrap_or_default(),
            r: f.r.unwrap_or(0.0),
            theta: f.theta.unwrap_or(0.0),
        };
        let set = |p: &mut PointParams, name: AxisName, v: f64| match name {
            AxisName::Lambda => p.lambda = v,
            AxisName::R => p.r = v,
            AxisName::Z => p.z = Complex64::new(v, 0.0),
        };
        let mut out = Vec::new();
        let outer = &self.axes[0];
        for v in outer.values() {
            let mut p = base;
            set(&mut p, outer.name, v);
            match self.axes.get(1) {
                Some(inner) => {
                    for w in inner.values() {
                        let mut q = p;
                        set(&mut q, inner.name, w);
                        out.push(q);
                    }
                }
                None => out.push(p),
            }
        }
        out
    }

    fn columns(&self) -> Vec<Column> {
        Column::ALL
            .into_iter()
            .filter(|c| self.observables.contains(c))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    pub columns: Vec<Column>,
    pub rows: Vec<PointResult>,
}

/// 12 significant digits.
fn format_g12(x: f64) -> String {
    if x == 0.0 {
        return "0.00000000000e0".to_string();
    }
    format!("{x:.11e}")
}

impl SweepTable {
    pub fn header(&self) -> Vec<&'static str> {
        PARAM_COLUMNS
            .into_iter()
            .chain(self.columns.iter().map(|c| c.as_str()))
            .collect()
    }

    /// Undefined values are empty fields.
    pub fn to_csv(&self) -> String {
        let mut out = self.header().join(",");
        out.push('\n');
        for row in &self.rows {
            let p = &row.params;
            let mut fields = vec![
                format_g12(p.lambda),
                p.photons.to_string(),
                format_g12(p.z.re),
                format_g12(p.z.im),
                format_g12(p.r),
                format_g12(p.theta),
            ];
            fields.extend(
                self.columns
                    .iter()
                    .map(|c| c.value(row).map(format_g12).unwrap_or_default()),
            );
            out.push_str(&fields.join(","));
            out.push('\n');
        }
        out
    }

    /// Array of row objects; undefined values are `null`.
    pub fn to_json(&self) -> String {
        let rows: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|row| {
                let p = &row.params;
                let mut obj = serde_json::Map::new();
                obj.insert("lambda".into(), json!(p.lambda));
                obj.insert("M".into(), json!(p.photons));
                obj.insert("z_re".into(), json!(p.z.re));
                obj.insert("z_im".into(), json!(p.z.im));
                obj.insert("r".into(), json!(p.r));
                obj.insert("theta".into(), json!(p.theta));
                for c in &self.columns {
                    obj.insert(c.as_str().into(), json!(c.value(row)));
                }
                serde_json::Value::Object(obj)
            })
            .collect();
        serde_json::to_string_pretty(&rows).expect("plain values serialize")
    }
}

fn with_threads<T: Send>(threads: Option<usize>, job: impl FnOnce() -> T + Send) -> Result<T> {
    match threads {
        None => Ok(job()),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::InvalidConfig(format!("thread pool: {e}")))?;
            Ok(pool.install(job))
        }
    }
}

/// Evaluates `points` concurrently; the first failure in grid order aborts
/// the run and names the point.
pub fn evaluate_points(
    points: &[PointParams],
    policy: &TruncationPolicy,
    threads: Option<usize>,
) -> Result<Vec<PointResult>> {
    let results: Vec<Result<PointResult>> = with_threads(threads, || {
        points
            .par_iter()
            .map(|p| evaluate_point(p, policy))
            .collect()
    })?;
    results
        .into_iter()
        .zip(points)
        .map(|(r, p)| {
            r.map_err(|e| Error::SweepPoint {
                point: p.to_string(),
                source: Box::new(e),
            })
        })
        .collect()
}

pub fn run_sweep(config: &SweepConfig) -> Result<SweepTable> {
    config.validate()?;
    let rows = evaluate_points(&config.points(), &config.policy, config.threads)?;
    Ok(SweepTable {
        columns: config.columns(),
        rows,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FigureId {
    Fig1,
    Fig2,
    Fig3,
    Fig4,
    Fig5,
    Fig6,
    Fig7,
}

impl FigureId {
    pub const ALL: [FigureId; 7] = [
        FigureId::Fig1,
        FigureId::Fig2,
        FigureId::Fig3,
        FigureId::Fig4,
        FigureId::Fig5,
        FigureId::Fig6,
        FigureId::Fig7,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FigureId::Fig1 => "fig1",
            FigureId::Fig2 => "fig2",
            FigureId::Fig3 => "fig3",
            FigureId::Fig4 => "fig4",
            FigureId::Fig5 => "fig5",
            FigureId::Fig6 => "fig6",
            FigureId::Fig7 => "fig7",
        }
    }
}

impl FromStr for FigureId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FigureId::ALL
            .into_iter()
            .find(|f| f.as_str() == s)
            .ok_or_else(|| Error::UnknownFigure(s.to_string()))
    }
}

/// One CSV of a figure: a sweep plus the file stem it is written under.
#[derive(Debug, Clone, PartialEq)]
pub struct FigurePart {
    pub stem: String,
    pub config: SweepConfig,
}

const PHOTONS: usize = 4;

fn fixed(lambda: Option<f64>, z: Option<f64>, r: Option<f64>) -> FixedParams {
    FixedParams {
        lambda,
        photons: Some(PHOTONS),
        z: z.map(|v| Complex64::new(v, 0.0)),
        r,
        theta: Some(0.0),
    }
}

fn label(v: f64) -> String {
    format!("{v:.1}")
}

/// Sweeps behind each figure. All use `M = 4` and `theta = 0`.
pub fn figure_parts(figure: FigureId, policy: &TruncationPolicy) -> Vec<FigurePart> {
    let lambda_axis = |n| Axis::new(AxisName::Lambda, 0.0, 10.0, n);
    let r_axis = |n| Axis::new(AxisName::R, 0.0, 3.0, n);
    let z_axis = |n| Axis::new(AxisName::Z, 0.0, 3.0, n);
    let part = |stem: String, axes: Vec<Axis>, fixed: FixedParams, observables: Vec<Column>| FigurePart {
        stem,
        config: SweepConfig {
            axes,
            fixed,
            observables,
            policy: *policy,
            threads: None,
        },
    };
    let grids = |stem: &str, observables: Vec<Column>| {
        vec![
            part(
                format!("{stem}_lambda_r"),
                vec![lambda_axis(CONTOUR_POINTS), r_axis(CONTOUR_POINTS)],
                fixed(None, Some(1.0), None),
                observables.clone(),
            ),
            part(
                format!("{stem}_lambda_z"),
                vec![lambda_axis(CONTOUR_POINTS), z_axis(CONTOUR_POINTS)],
                fixed(None, None, Some(0.5)),
                observables,
            ),
        ]
    };
    let entropy = vec![Column::S, Column::Leakage];
    match figure {
        FigureId::Fig1 => [0.1, 0.5, 1.0]
            .into_iter()
            .map(|r| {
                part(
                    format!("fig1_r{}", label(r)),
                    vec![lambda_axis(CURVE_POINTS)],
                    fixed(None, Some(1.0), Some(r)),
                    entropy.clone(),
                )
            })
            .collect(),
        FigureId::Fig2 => [0.0, 0.5, 1.0]
            .into_iter()
            .map(|l| {
                part(
                    format!("fig2_lambda{}", label(l)),
                    vec![r_axis(CURVE_POINTS)],
                    fixed(Some(l), Some(1.0), None),
                    entropy.clone(),
                )
            })
            .collect(),
        FigureId::Fig3 => [0.0, 0.5, 1.0]
            .into_iter()
            .map(|l| {
                part(
                    format!("fig3_lambda{}", label(l)),
                    vec![z_axis(CURVE_POINTS)],
                    fixed(Some(l), None, Some(0.5)),
                    entropy.clone(),
                )
            })
            .collect(),
        FigureId::Fig4 => vec![part(
            "fig4".into(),
            vec![lambda_axis(CURVE_POINTS)],
            fixed(None, Some(1.0), Some(0.1)),
            vec![Column::Leakage],
        )],
        FigureId::Fig5 => grids("fig5", vec![Column::Ns, Column::Ni, Column::Leakage]),
        FigureId::Fig6 => grids("fig6", vec![Column::Qs, Column::Qi, Column::Leakage]),
        FigureId::Fig7 => grids("fig7", vec![Column::G2, Column::Leakage]),
    }
}

/// Wide table of joint probabilities `P_<n_s>_<n_i>` along a sweep, keeping
/// the entries that reach [`JOINT_EXPORT_THRESHOLD`] somewhere.
pub fn joint_table(table: &SweepTable) -> (Vec<FockIndex>, String) {
    let mut keep: Vec<FockIndex> = Vec::new();
    for row in &table.rows {
        for (k, p) in row.report.joint.iter() {
            if p >= JOINT_EXPORT_THRESHOLD && !keep.contains(&k) {
                keep.push(k);
            }
        }
    }
    keep.sort();
    let mut header: Vec<String> = PARAM_COLUMNS.iter().map(|s| s.to_string()).collect();
    header.extend(keep.iter().map(|k| format!("P_{}_{}", k.n_s, k.n_i)));
    header.push("leakage".into());
    let mut out = header.join(",");
    out.push('\n');
    for row in &table.rows {
        let p = &row.params;
        let mut fields = vec![
            format_g12(p.lambda),
            p.photons.to_string(),
            format_g12(p.z.re),
            format_g12(p.z.im),
            format_g12(p.r),
            format_g12(p.theta),
        ];
        fields.extend(keep.iter().map(|k| format_g12(row.report.joint.get(k.n_s, k.n_i))));
        fields.push(format_g12(row.leakage));
        let _ = writeln!(out, "{}", fields.join(","));
    }
    (keep, out)
}

/// Writes the CSVs of `figure` plus `<figure>_manifest.json` into
/// `out_dir`, returning the paths written.
pub fn figure_data(
    figure: FigureId,
    out_dir: &Path,
    policy: &TruncationPolicy,
    threads: Option<usize>,
) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(out_dir)?;
    let mut written = Vec::new();
    let mut files = Vec::new();
    for mut part in figure_parts(figure, policy) {
        part.config.threads = threads;
        let table = run_sweep(&part.config)?;
        let name = format!("{}.csv", part.stem);
        let path = out_dir.join(&name);
        let (columns, body) = if figure == FigureId::Fig4 {
            let (keys, body) = joint_table(&table);
            let cols: Vec<String> = keys.iter().map(|k| format!("P_{}_{}", k.n_s, k.n_i)).collect();
            (cols, body)
        } else {
            let cols = table.columns.iter().map(|c| c.as_str().to_string()).collect();
            (cols, table.to_csv())
        };
        fs::write(&path, body)?;
        files.push(json!({
            "file": name,
            "axes": part.config.axes,
            "fixed": part.config.fixed,
            "columns": columns,
            "rows": table.rows.len(),
        }));
        written.push(path);
    }
    let manifest = json!({
        "figure": figure.as_str(),
        "policy": { "tail_tol": policy.tail_tol, "max_pairs": policy.max_pairs },
        "parameter_columns": PARAM_COLUMNS,
        "files": files,
    });
    let path = out_dir.join(format!("{}_manifest.json", figure.as_str()));
    fs::write(&path, serde_json::to_string_pretty(&manifest)? + "\n")?;
    written.push(path);
    Ok(written)
}
