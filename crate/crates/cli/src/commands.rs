use std::fs;
use std::io::Write;

use schur_process::asympt::{density_grid, density_level_sets, shape_grid};
use schur_process::combin::TilePoint;
use schur_process::kernel::{correlation_det, kernel_entry, kernel_planch, Kernel3d, KernelValue, QuadratureSpec};
use schur_process::process::{mq_params, mq_window, SchurProcessParams};
use schur_process::Half;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::cells::sample_cells;
use crate::config::{Format, Model, PointArg, RunConfig};
use crate::{svg, CliError, CliResult, Outcome};

/// Number of states averaged by `sample --format csv`.
pub const SNAPSHOTS: u64 = 100;

fn csv_header(cfg: &RunConfig, out: &mut dyn Write, columns: &str) -> CliResult<()> {
    writeln!(out, "# schurproc {}", cfg.echo())?;
    writeln!(out, "{columns}")?;
    Ok(())
}

fn write_json(cfg: &RunConfig, out: &mut dyn Write, mut body: Value) -> CliResult<()> {
    let config: Value = serde_json::from_str(&cfg.echo()).expect("config is json");
    body.as_object_mut().expect("object body").insert("config".into(), config);
    writeln!(out, "{}", serde_json::to_string_pretty(&body).expect("serializable"))?;
    Ok(())
}

fn num(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.12e}")
    } else {
        format!("{x}")
    }
}

enum KernelModel {
    Mq(Box<Kernel3d>),
    Window(SchurProcessParams, QuadratureSpec),
    Planch(f64, QuadratureSpec),
}

impl KernelModel {
    fn new(cfg: &RunConfig) -> Self {
        let quad = QuadratureSpec::with_tol(cfg.tol);
        match cfg.model {
            Model::Mq => KernelModel::Mq(Box::new(Kernel3d::new(cfg.q(), quad))),
            Model::Window => KernelModel::Window(mq_params(cfg.q(), mq_window(cfg.q(), 1e-3 * cfg.tol)), quad),
            Model::Planch => KernelModel::Planch(cfg.alpha, quad),
        }
    }

    /// Sites as `(t, x)` particle coordinates. Points are tile centers except
    /// for `planch`, where they are `0:x` with `x` the particle itself.
    fn sites(&self, pts: &[PointArg]) -> Result<Vec<(i64, Half)>, String> {
        pts.iter()
            .map(|&PointArg(t, h)| {
                let h2 = 2.0 * h;
                if h2.fract() != 0.0 || !h2.is_finite() {
                    return Err(format!("{t}:{h}: h must be a multiple of 1/2"));
                }
                match self {
                    KernelModel::Planch(..) => {
                        if t != 0 {
                            return Err(format!("{t}:{h}: the planch model lives at t = 0"));
                        }
                        let x = Half(h2 as i64);
                        x.half_odd().map_err(|e| format!("{t}:{h}: {e}"))?;
                        Ok((0, x))
                    }
                    _ => {
                        let p = TilePoint::new(t, h2 as i64).map_err(|e| format!("{t}:{h}: {e}"))?;
                        Ok((t, p.to_particle()))
                    }
                }
            })
            .collect()
    }

    fn entry(&self, a: (i64, Half), b: (i64, Half)) -> schur_process::Result<KernelValue> {
        match self {
            KernelModel::Mq(k) => {
                let ta = TilePoint::from_particle(a.0, a.1)?;
                let tb = TilePoint::from_particle(b.0, b.1)?;
                k.entry(ta, tb)
            }
            KernelModel::Window(p, quad) => kernel_entry(p, a, b, quad),
            KernelModel::Planch(alpha, quad) => kernel_planch(a.1, b.1, *alpha, quad),
        }
    }

    /// `{"points", "value", ...}` for one or two points, `{"points", "probability"}` with `det`.
    fn evaluate(&self, pts: &[PointArg], det: bool) -> Result<Value, CliError> {
        let sites = self.sites(pts).map_err(CliError::Usage)?;
        let echo: Vec<[f64; 2]> = pts.iter().map(|p| [p.0 as f64, p.1]).collect();
        if det {
            let d = correlation_det(sites.len(), |i, j| Ok(self.entry(sites[i], sites[j])?.value))?;
            return Ok(json!({ "points": echo, "probability": d }));
        }
        let (a, b) = match sites.len() {
            1 => (sites[0], sites[0]),
            2 => (sites[0], sites[1]),
            n => return Err(CliError::Usage(format!("{n} points given; one or two are needed unless --det is set"))),
        };
        let k = self.entry(a, b)?;
        Ok(json!({ "points": echo, "value": k.value, "n_used": k.n_used, "est_error": k.est_error }))
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Query {
    points: Vec<(i64, f64)>,
    #[serde(default)]
    det: bool,
}

pub fn kernel(cfg: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<Outcome> {
    let model = KernelModel::new(cfg);
    if let Some(path) = &cfg.queries {
        let text = fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
        writeln!(out, "{}", json!({ "config": serde_json::from_str::<Value>(&cfg.echo()).expect("json") }))?;
        let mut failures = 0usize;
        for (n, line) in text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
            let rec = serde_json::from_str::<Query>(line).map_err(|e| CliError::Usage(e.to_string())).and_then(|q| {
                let pts: Vec<PointArg> = q.points.iter().map(|&(t, h)| PointArg(t, h)).collect();
                model.evaluate(&pts, q.det || cfg.det)
            });
            let v = match rec {
                Ok(mut v) => {
                    v.as_object_mut().unwrap().insert("line".into(), json!(n + 1));
                    v
                }
                Err(e) => {
                    failures += 1;
                    writeln!(err, "line {}: {e}", n + 1)?;
                    json!({ "line": n + 1, "error": e.to_string() })
                }
            };
            writeln!(out, "{v}")?;
        }
        let message = (failures > 0).then(|| format!("{failures} queries failed"));
        return Ok(Outcome { passed: true, message });
    }
    if cfg.points.is_empty() {
        return Err(CliError::Usage("kernel needs --points or --queries".into()));
    }
    let v = model.evaluate(&cfg.points, cfg.det)?;
    write_json(cfg, out, v)?;
    Ok(Outcome::ok())
}

pub fn density(cfg: &RunConfig, out: &mut dyn Write) -> CliResult<Outcome> {
    let g = cfg.grid();
    match cfg.format() {
        Format::Csv => {
            csv_header(cfg, out, "tau,chi,theta,rho")?;
            for r in density_grid(&g) {
                writeln!(out, "{},{},{},{}", num(r.tau), num(r.chi), num(r.theta), num(r.rho))?;
            }
        }
        Format::Json => write_json(cfg, out, json!({ "rows": density_grid(&g) }))?,
        Format::Svg => out.write_all(svg::density_svg(&g, &density_level_sets(&g), &cfg.echo()).as_bytes())?,
    }
    Ok(Outcome::ok())
}

pub fn limit_shape(cfg: &RunConfig, out: &mut dyn Write) -> CliResult<Outcome> {
    let g = cfg.grid();
    let rows = shape_grid(&g);
    match cfg.format() {
        Format::Csv => {
            csv_header(cfg, out, "tau,chi,x,y,z")?;
            for r in &rows {
                writeln!(out, "{},{},{},{},{}", num(r.tau), num(r.chi), num(r.x), num(r.y), num(r.z))?;
            }
        }
        Format::Json => write_json(cfg, out, json!({ "rows": rows }))?,
        Format::Svg => out.write_all(svg::shape_svg(&g, &rows, &cfg.echo()).as_bytes())?,
    }
    Ok(Outcome::ok())
}

pub fn sample(cfg: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<Outcome> {
    let dims = cfg.dims();
    let g = cfg.grid();
    let (state, cells) = sample_cells(cfg.q(), dims, cfg.steps, cfg.seed, &g, SNAPSHOTS)?;
    let (a, b, c) = dims;
    if state.max_part() == c || state.num_rows() == a || state.num_cols() == b {
        writeln!(err, "warning: the sample touches the box walls")?;
    }
    match cfg.format() {
        Format::Json => write_json(cfg, out, json!({ "volume": schur_process::combin::volume(&state), "state": state }))?,
        Format::Svg => out.write_all(svg::tiling_svg(&state, a, b, &cfg.echo()).as_bytes())?,
        Format::Csv => {
            csv_header(cfg, out, "tau_lo,tau_hi,chi_lo,chi_hi,sites,empirical,predicted,interior")?;
            for s in &cells {
                writeln!(
                    out,
                    "{},{},{},{},{},{},{},{}",
                    s.tau_lo,
                    s.tau_hi,
                    s.chi_lo,
                    s.chi_hi,
                    s.sites,
                    num(s.empirical),
                    num(s.predicted),
                    s.interior
                )?;
            }
        }
    }
    Ok(Outcome::ok())
}
