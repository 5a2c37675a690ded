//! Job configuration: an optional JSON file overlaid by command-line flags.

use std::path::Path;

use serde::Deserialize;
use serde_json::Value;
use superverma::catalog::{AlgebraSpec, Family, Positivity, Weight};
use superverma::linalg::{parse_rat, Rat};
use superverma::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Table,
}

/// `{"family", "m", "n", "alpha", "positivity"}`
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraJson {
    pub family: Option<String>,
    pub m: Option<usize>,
    pub n: Option<usize>,
    pub alpha: Option<Value>,
    pub positivity: Option<Value>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobFile {
    pub algebra: Option<AlgebraJson>,
    pub pi_l: Option<Vec<usize>>,
    pub lambda: Option<Vec<Value>>,
    pub mu: Option<Vec<Value>>,
    pub eta: Option<Vec<Value>>,
    pub depth: Option<usize>,
    pub seed: Option<u64>,
    pub samples: Option<usize>,
    pub format: Option<Format>,
    pub brute_check: Option<bool>,
}

/// Raw flag values; `None` means "not given on the command line".
#[derive(Debug, Default, Clone, clap::Args)]
pub struct Flags {
    /// JSON job file; flags override its fields.
    #[arg(long)]
    pub config: Option<std::path::PathBuf>,
    /// Algebra family: gl, osp or d21a.
    #[arg(long)]
    pub algebra: Option<String>,
    /// gl(m|n): m; osp(M|2n): M.
    #[arg(long)]
    pub m: Option<usize>,
    /// gl(m|n): n; osp(M|2n): n.
    #[arg(long)]
    pub n: Option<usize>,
    /// D(2,1;α) parameter, e.g. 1/2.
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,
    /// `standard` or a comma-separated regular element.
    #[arg(long, allow_hyphen_values = true)]
    pub positivity: Option<String>,
    /// Comma-separated indices into Π as printed by `describe`; empty for the Borel case.
    #[arg(long = "pi-l", allow_hyphen_values = true)]
    pub pi_l: Option<String>,
    /// Highest weight, comma-separated rationals.
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<String>,
    /// Target weight μ, comma-separated rationals.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "eta")]
    pub mu: Option<String>,
    /// Offset η = λ − μ, comma-separated rationals.
    #[arg(long, allow_hyphen_values = true)]
    pub eta: Option<String>,
    /// Truncation depth (default 3).
    #[arg(long)]
    pub depth: Option<usize>,
    /// Number of samples for `verify` (default 3).
    #[arg(long)]
    pub samples: Option<usize>,
    /// Random seed (default 0).
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Cross-check `irreducible` against brute-force Gram blocks down to `--depth`.
    #[arg(long)]
    pub brute_check: bool,
    #[arg(long, hide = true)]
    pub corrupt_exponent: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Target {
    Absolute(Weight),
    Offset(Weight),
}

#[derive(Clone, Debug)]
pub struct JobConfig {
    pub spec: AlgebraSpec,
    pub positivity: Positivity,
    pub pi_l: Vec<usize>,
    pub lambda: Option<Weight>,
    pub target: Option<Target>,
    pub depth: usize,
    pub seed: u64,
    pub samples: usize,
    pub format: Format,
    pub brute_check: bool,
    pub corrupt_exponent: bool,
}

impl JobConfig {
    pub fn lambda(&self) -> Result<&Weight> {
        self.lambda.as_ref().ok_or_else(|| Error::Spec("--lambda is required".into()))
    }

    /// `μ`, from either form of the target.
    pub fn mu(&self) -> Result<Weight> {
        match &self.target {
            Some(Target::Absolute(mu)) => Ok(mu.clone()),
            Some(Target::Offset(eta)) => Ok(self.lambda()? - eta),
            None => Err(Error::Spec("--mu or --eta is required".into())),
        }
    }

    /// `η = λ − μ`, from either form of the target.
    pub fn eta(&self) -> Result<Weight> {
        match &self.target {
            Some(Target::Offset(eta)) => Ok(eta.clone()),
            Some(Target::Absolute(mu)) => Ok(self.lambda()? - mu),
            None => Err(Error::Spec("--mu or --eta is required".into())),
        }
    }
}

fn rat_value(v: &Value) -> Result<Rat> {
    match v {
        Value::String(s) => parse_rat(s),
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(Rat::from_integer(i.into())),
            None => Err(Error::Spec(format!("{n} is not an integer; write rationals as \"p/q\" strings"))),
        },
        other => Err(Error::Spec(format!("expected a rational, got {other}"))),
    }
}

fn weight_values(vs: &[Value]) -> Result<Weight> {
    Ok(Weight(vs.iter().map(rat_value).collect::<Result<_>>()?))
}

/// Comma-separated rationals, optionally in brackets.
pub fn parse_coords(s: &str) -> Result<Vec<Rat>> {
    let body = s.trim().trim_start_matches('[').trim_end_matches(']').trim();
    if body.is_empty() {
        return Ok(Vec::new());
    }
    body.split(',').map(parse_rat).collect()
}

fn parse_indices(s: &str) -> Result<Vec<usize>> {
    let body = s.trim().trim_start_matches('[').trim_end_matches(']').trim();
    if body.is_empty() || body.eq_ignore_ascii_case("none") {
        return Ok(Vec::new());
    }
    body.split(',')
        .map(|t| t.trim().parse().map_err(|_| Error::Spec(format!("bad Π_l index {t:?}"))))
        .collect()
}

fn parse_positivity(v: &Value) -> Result<Positivity> {
    match v {
        Value::String(s) if s.eq_ignore_ascii_case("standard") => Ok(Positivity::Standard),
        Value::String(s) => Ok(Positivity::Regular(parse_coords(s)?)),
        Value::Array(xs) => Ok(Positivity::Regular(xs.iter().map(rat_value).collect::<Result<_>>()?)),
        other => Err(Error::Spec(format!("bad positivity {other}"))),
    }
}

pub fn read_file(path: &Path) -> Result<JobFile> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Spec(format!("cannot read config {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Spec(format!("bad config {}: {e}", path.display())))
}

pub fn resolve(flags: &Flags) -> Result<JobConfig> {
    let file = match &flags.config {
        Some(p) => read_file(p)?,
        None => JobFile::default(),
    };
    let alg = file.algebra.unwrap_or_default();
    let family = flags
        .algebra
        .clone()
        .or(alg.family)
        .ok_or_else(|| Error::Spec("--algebra is required".into()))?;
    let family = Family::parse(&family)?;
    let alpha = match (&flags.alpha, &alg.alpha) {
        (Some(s), _) => Some(parse_rat(s)?),
        (None, Some(v)) => Some(rat_value(v)?),
        (None, None) => None,
    };
    let m = flags.m.or(alg.m);
    let n = flags.n.or(alg.n);
    let spec = match family {
        Family::D21a => AlgebraSpec::d21(alpha.ok_or_else(|| Error::Spec("d21a requires --alpha".into()))?),
        Family::Gl | Family::Osp => {
            let m = m.ok_or_else(|| Error::Spec("--m is required".into()))?;
            let n = n.ok_or_else(|| Error::Spec("--n is required".into()))?;
            if family == Family::Gl {
                AlgebraSpec::gl(m, n)
            } else {
                AlgebraSpec::osp(m, n)
            }
        }
    };
    spec.validate()?;
    let positivity = match (&flags.positivity, &alg.positivity) {
        (Some(s), _) => parse_positivity(&Value::String(s.clone()))?,
        (None, Some(v)) => parse_positivity(v)?,
        (None, None) => Positivity::Standard,
    };
    let pi_l = match &flags.pi_l {
        Some(s) => parse_indices(s)?,
        None => file.pi_l.unwrap_or_default(),
    };
    let lambda = match (&flags.lambda, &file.lambda) {
        (Some(s), _) => Some(Weight(parse_coords(s)?)),
        (None, Some(v)) => Some(weight_values(v)?),
        (None, None) => None,
    };
    let target = if let Some(s) = &flags.mu {
        Some(Target::Absolute(Weight(parse_coords(s)?)))
    } else if let Some(s) = &flags.eta {
        Some(Target::Offset(Weight(parse_coords(s)?)))
    } else {
        match (&file.mu, &file.eta) {
            (Some(_), Some(_)) => return Err(Error::Spec("config gives both mu and eta".into())),
            (Some(v), None) => Some(Target::Absolute(weight_values(v)?)),
            (None, Some(v)) => Some(Target::Offset(weight_values(v)?)),
            (None, None) => None,
        }
    };
    Ok(JobConfig {
        spec,
        positivity,
        pi_l,
        lambda,
        target,
        depth: flags.depth.or(file.depth).unwrap_or(3),
        seed: flags.seed.or(file.seed).unwrap_or(0),
        samples: flags.samples.or(file.samples).unwrap_or(3),
        format: flags.format.or(file.format).unwrap_or_default(),
        brute_check: flags.brute_check || file.brute_check.unwrap_or(false),
        corrupt_exponent: flags.corrupt_exponent,
    })
}
