use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use schur_process::asympt::Grid;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CommandKind {
    Verify,
    Kernel,
    Density,
    LimitShape,
    Sample,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Svg,
}

impl FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "svg" => Ok(Format::Svg),
            _ => Err(format!("unknown format `{s}` (expected json, csv or svg)")),
        }
    }
}

/// Which kernel `kernel` evaluates.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    /// Closed form through the quantum dilogarithm.
    #[default]
    Mq,
    /// Finite product over the `q^{|m|}` window.
    Window,
    /// Poissonized Plancherel at time zero.
    Planch,
}

impl FromStr for Model {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "mq" => Ok(Model::Mq),
            "window" => Ok(Model::Window),
            "planch" => Ok(Model::Planch),
            _ => Err(format!("unknown model `{s}` (expected mq, window or planch)")),
        }
    }
}

/// `tmin:tmax:n,cmin:cmax:n`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub tau: (f64, f64, usize),
    pub chi: (f64, f64, usize),
}

impl GridSpec {
    pub fn grid(&self) -> Result<Grid, String> {
        Grid::new(self.tau, self.chi).map_err(|e| e.to_string())
    }
}

impl fmt::Display for GridSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{},{}:{}:{}", self.tau.0, self.tau.1, self.tau.2, self.chi.0, self.chi.1, self.chi.2)
    }
}

fn parse_axis(s: &str) -> Result<(f64, f64, usize), String> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(format!("axis `{s}` is not min:max:n"));
    }
    let lo = parts[0].parse::<f64>().map_err(|e| format!("{s}: {e}"))?;
    let hi = parts[1].parse::<f64>().map_err(|e| format!("{s}: {e}"))?;
    let n = parts[2].parse::<usize>().map_err(|e| format!("{s}: {e}"))?;
    Ok((lo, hi, n))
}

impl FromStr for GridSpec {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let (a, b) = s.split_once(',').ok_or_else(|| format!("grid `{s}` is not tau-axis,chi-axis"))?;
        Ok(GridSpec { tau: parse_axis(a)?, chi: parse_axis(b)? })
    }
}

/// `a,b,c` box dimensions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoxDims(pub usize, pub usize, pub u32);

impl FromStr for BoxDims {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let v: Vec<&str> = s.split(',').collect();
        if v.len() != 3 {
            return Err(format!("box `{s}` is not a,b,c"));
        }
        let p = |x: &str| x.trim().parse::<usize>().map_err(|e| format!("{s}: {e}"));
        Ok(BoxDims(p(v[0])?, p(v[1])?, p(v[2])? as u32))
    }
}

/// One tile center `t:h`, with `h` a half-integer.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointArg(pub i64, pub f64);

impl FromStr for PointArg {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let (a, b) = s.split_once(':').ok_or_else(|| format!("point `{s}` is not t:h"))?;
        Ok(PointArg(a.trim().parse().map_err(|e| format!("{s}: {e}"))?, b.trim().parse().map_err(|e| format!("{s}: {e}"))?))
    }
}

/// Every setting of a run. Fields absent from a config file take defaults,
/// and command-line flags override both.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub command: Option<CommandKind>,
    pub q: Option<f64>,
    pub r: Option<f64>,
    pub alpha: f64,
    pub cutoff: u32,
    #[serde(rename = "box")]
    pub box_dims: Option<BoxDims>,
    pub grid: Option<GridSpec>,
    pub tol: f64,
    pub seed: u64,
    pub steps: u64,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
    pub model: Model,
    pub points: Vec<PointArg>,
    pub queries: Option<PathBuf>,
    pub det: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            command: None,
            q: None,
            r: None,
            alpha: 1.0,
            cutoff: 12,
            box_dims: None,
            grid: None,
            tol: 1e-10,
            seed: 0,
            steps: 1_000_000,
            out: None,
            format: None,
            model: Model::Mq,
            points: Vec::new(),
            queries: None,
            det: false,
        }
    }
}

pub const DEFAULT_Q: f64 = 0.1;

impl RunConfig {
    /// Checks the cross-field invariants and fills command-dependent defaults.
    pub fn resolve(mut self) -> Result<Self, String> {
        let cmd = self.command.ok_or("no subcommand given")?;
        match (self.q, self.r) {
            (Some(_), Some(_)) => return Err("--q and --r are mutually exclusive".into()),
            (None, Some(r)) => {
                if !(r > 0.0 && r.is_finite()) {
                    return Err(format!("r = {r} must be positive"));
                }
                self.q = Some((-r).exp());
            }
            (None, None) => self.q = Some(DEFAULT_Q),
            _ => {}
        }
        let q = self.q.unwrap();
        if !(q > 0.0 && q < 1.0) {
            return Err(format!("q = {q} outside (0, 1)"));
        }
        if !(self.tol > 0.0) {
            return Err(format!("tol = {} must be positive", self.tol));
        }
        if !(self.alpha > 0.0) {
            return Err(format!("alpha = {} must be positive", self.alpha));
        }
        if self.grid.is_none() {
            self.grid = Some(match cmd {
                CommandKind::Sample => GridSpec { tau: (-2.0, 2.0, 9), chi: (-2.0, 1.0, 7) },
                _ => GridSpec { tau: (-3.0, 3.0, 121), chi: (-3.0, 3.0, 121) },
            });
        }
        self.grid.unwrap().grid()?;
        if self.box_dims.is_none() {
            self.box_dims = Some(BoxDims(20, 20, 20));
        }
        let b = self.box_dims.unwrap();
        if b.0 == 0 || b.1 == 0 || b.2 == 0 {
            return Err("box dimensions must be positive".into());
        }
        if self.format.is_none() {
            self.format = Some(match cmd {
                CommandKind::Density | CommandKind::LimitShape => Format::Csv,
                _ => Format::Json,
            });
        }
        Ok(self)
    }

    pub fn q(&self) -> f64 {
        self.q.unwrap_or(DEFAULT_Q)
    }

    pub fn grid(&self) -> Grid {
        self.grid.expect("resolved config").grid().expect("validated grid")
    }

    pub fn format(&self) -> Format {
        self.format.unwrap_or(Format::Json)
    }

    pub fn dims(&self) -> (usize, usize, u32) {
        let b = self.box_dims.unwrap_or(BoxDims(20, 20, 20));
        (b.0, b.1, b.2)
    }

    /// One-line JSON of the full configuration, for output headers.
    pub fn echo(&self) -> String {
        serde_json::to_string(self).expect("config serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_grid_and_box() {
        let g: GridSpec = "-1:2:5,0:1:3".parse().unwrap();
        assert_eq!(g.tau, (-1.0, 2.0, 5));
        assert_eq!(g.to_string(), "-1:2:5,0:1:3");
        assert!("1:2,0:1:3".parse::<GridSpec>().is_err());
        assert_eq!("2,3,4".parse::<BoxDims>().unwrap(), BoxDims(2, 3, 4));
        assert_eq!("1:-0.5".parse::<PointArg>().unwrap(), PointArg(1, -0.5));
    }

    #[test]
    fn resolve_rules() {
        let base = RunConfig { command: Some(CommandKind::Density), ..RunConfig::default() };
        let c = base.clone().resolve().unwrap();
        assert_eq!(c.q(), DEFAULT_Q);
        assert_eq!(c.format(), Format::Csv);
        let c = RunConfig { r: Some(0.1), ..base.clone() }.resolve().unwrap();
        assert!((c.q() - (-0.1f64).exp()).abs() < 1e-16);
        assert!(RunConfig { r: Some(0.1), q: Some(0.5), ..base.clone() }.resolve().is_err());
        assert!(RunConfig { q: Some(1.0), ..base.clone() }.resolve().is_err());
        let bad = GridSpec { tau: (0.0, 1.0, 1), chi: (0.0, 1.0, 3) };
        assert!(RunConfig { grid: Some(bad), ..base.clone() }.resolve().is_err());
        assert!(RunConfig::default().resolve().is_err());
    }

    #[test]
    fn config_file_round_trip() {
        let c = RunConfig { command: Some(CommandKind::Sample), q: Some(0.3), ..RunConfig::default() }.resolve().unwrap();
        let back: RunConfig = serde_json::from_str(&c.echo()).unwrap();
        assert_eq!(back, c);
        let partial: RunConfig = serde_json::from_str(r#"{"cutoff": 7, "box": [2, 2, 2]}"#).unwrap();
        assert_eq!(partial.cutoff, 7);
        assert_eq!(partial.box_dims, Some(BoxDims(2, 2, 2)));
        assert!(serde_json::from_str::<RunConfig>(r#"{"bogus": 1}"#).is_err());
    }
}
