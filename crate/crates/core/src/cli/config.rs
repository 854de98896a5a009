//! Command-line flags, environment overrides and `key=value` config files,
//! merged into a validated [`RunConfig`].
//!
//! Precedence: flags > `HYPERDUAL_*` environment variables > config file >
//! built-in defaults.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::Parser;
use rug::Rational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::identities::IdentityId;
use crate::numerics::{parse_exact, PrecisionPolicy};

pub const DEFAULT_SEED: u64 = 20_240_501;
pub const DEFAULT_PRECISION_BITS: u32 = 256;
pub const DEFAULT_TOLERANCE_BITS: u32 = 150;

#[derive(Debug, Clone, Parser, Default)]
#[command(
    name = "hyperdual",
    version,
    about = "Verify q-hypergeometric duality identities at seeded random points"
)]
pub struct Args {
    /// Run a single identity (e.g. symtrig_p4, elliptic_a6, kernel_i1).
    #[arg(long, env = "HYPERDUAL_IDENTITY")]
    pub identity: Option<String>,
    /// all, main, lemmas, kernels, limits or elliptic.
    #[arg(long, env = "HYPERDUAL_SUITE")]
    pub suite: Option<String>,
    /// Number of variables: `a..b` (inclusive), `a,b,c` or `a`.
    #[arg(long, env = "HYPERDUAL_N")]
    pub n: Option<String>,
    /// Total degree K, same syntax as --n.
    #[arg(long = "K", env = "HYPERDUAL_K")]
    pub k: Option<String>,
    /// Subset size r for the kernel identities, same syntax as --n.
    #[arg(long, env = "HYPERDUAL_R")]
    pub r: Option<String>,
    #[arg(long, env = "HYPERDUAL_TRIALS")]
    pub trials: Option<String>,
    #[arg(long, env = "HYPERDUAL_SEED")]
    pub seed: Option<String>,
    #[arg(long = "precision-bits", env = "HYPERDUAL_PRECISION_BITS")]
    pub precision_bits: Option<String>,
    /// Elliptic nome(s), decimal or a/b, comma separated.
    #[arg(long, env = "HYPERDUAL_NOME")]
    pub nome: Option<String>,
    /// Numeric checks pass when the relative deviation is ≤ 2^-tolerance.
    #[arg(long = "tolerance-bits", env = "HYPERDUAL_TOLERANCE_BITS")]
    pub tolerance_bits: Option<String>,
    /// json or text.
    #[arg(long, env = "HYPERDUAL_FORMAT")]
    pub format: Option<String>,
    /// File of `key=value` lines using the flag names.
    #[arg(long, env = "HYPERDUAL_CONFIG")]
    pub config: Option<PathBuf>,
    /// Include per-cell wall-clock times (makes output non-reproducible).
    #[arg(long)]
    pub timings: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    All,
    Main,
    Lemmas,
    Kernels,
    Limits,
    Elliptic,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::All,
        Suite::Main,
        Suite::Lemmas,
        Suite::Kernels,
        Suite::Limits,
        Suite::Elliptic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Main => "main",
            Suite::Lemmas => "lemmas",
            Suite::Kernels => "kernels",
            Suite::Limits => "limits",
            Suite::Elliptic => "elliptic",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase();
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == key)
            .ok_or_else(|| Error::Config(format!("unknown suite {s:?}")))
    }
}

/// What to run: a whole suite or the cells of one identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    Suite(Suite),
    Identity(IdentityId),
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::Suite(s) => write!(f, "suite:{}", s.name()),
            Target::Identity(id) => write!(f, "identity:{id}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Text,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "json" => Ok(Format::Json),
            "text" => Ok(Format::Text),
            _ => Err(Error::Config(format!("unknown format {s:?}"))),
        }
    }
}

/// A validated run configuration. Grid fields left `None` fall back to each
/// check's own default grid.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub target: Target,
    pub n: Option<Vec<usize>>,
    pub k: Option<Vec<u32>>,
    pub r: Option<Vec<usize>>,
    pub trials: Option<usize>,
    pub seed: u64,
    pub precision_bits: u32,
    pub nomes: Option<Vec<Rational>>,
    pub tolerance_bits: u32,
    pub format: Format,
    pub timings: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            target: Target::Suite(Suite::All),
            n: None,
            k: None,
            r: None,
            trials: None,
            seed: DEFAULT_SEED,
            precision_bits: DEFAULT_PRECISION_BITS,
            nomes: None,
            tolerance_bits: DEFAULT_TOLERANCE_BITS,
            format: Format::Json,
            timings: false,
        }
    }
}

impl RunConfig {
    /// Precision policy for the numeric checks.
    pub fn policy(&self) -> Result<PrecisionPolicy> {
        PrecisionPolicy::with_working_bits(self.precision_bits).map_err(|e| Error::Config(e.to_string()))
    }
}

/// Parses `a..b`, `a..=b` (both inclusive), `a,b,c` or a single value.
pub fn parse_range<T>(text: &str) -> Result<Vec<T>>
where
    T: FromStr + Copy + PartialOrd + TryFrom<i64>,
    i64: From<T>,
{
    let bad = || Error::Config(format!("bad range {text:?}"));
    let one = |s: &str| s.trim().parse::<T>().map_err(|_| bad());
    let text = text.trim();
    let values = if let Some((lo, hi)) = text.split_once("..") {
        let hi = hi.strip_prefix('=').unwrap_or(hi);
        let (lo, hi) = (i64::from(one(lo)?), i64::from(one(hi)?));
        (lo..=hi)
            .map(|v| T::try_from(v).map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?
    } else {
        text.split(',').map(one).collect::<Result<Vec<_>>>()?
    };
    if values.is_empty() {
        return Err(Error::Config(format!("range {text:?} is empty")));
    }
    Ok(values)
}

fn parse_usize_range(text: &str) -> Result<Vec<usize>> {
    Ok(parse_range::<u32>(text)?.into_iter().map(|v| v as usize).collect())
}

fn parse_number<T: FromStr>(key: &str, text: &str) -> Result<T> {
    text.trim()
        .parse()
        .map_err(|_| Error::Config(format!("{key}: cannot parse {text:?}")))
}

/// Reads `key=value` lines; `#` starts a comment, keys use the flag names
/// with or without dashes (`precision-bits`, `precision_bits`).
pub fn parse_config_file(text: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("config line {}: expected key=value", lineno + 1)))?;
        let key = key.trim().trim_start_matches("--").replace('_', "-");
        out.insert(key, value.trim().to_string());
    }
    Ok(out)
}

const FILE_KEYS: [&str; 11] = [
    "identity",
    "suite",
    "n",
    "K",
    "r",
    "trials",
    "seed",
    "precision-bits",
    "nome",
    "tolerance-bits",
    "format",
];

impl Args {
    /// Fills every unset field from the config file (if any) and validates.
    pub fn resolve(mut self) -> Result<RunConfig> {
        if let Some(path) = &self.config {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
            let file = parse_config_file(&text)?;
            for key in file.keys() {
                if !FILE_KEYS.contains(&key.as_str()) && key != "k" {
                    return Err(Error::Config(format!("unknown config key {key:?}")));
                }
            }
            let fill = |slot: &mut Option<String>, key: &str| {
                if slot.is_none() {
                    *slot = file.get(key).cloned();
                }
            };
            fill(&mut self.identity, "identity");
            fill(&mut self.suite, "suite");
            fill(&mut self.n, "n");
            fill(&mut self.k, "K");
            fill(&mut self.k, "k");
            fill(&mut self.r, "r");
            fill(&mut self.trials, "trials");
            fill(&mut self.seed, "seed");
            fill(&mut self.precision_bits, "precision-bits");
            fill(&mut self.nome, "nome");
            fill(&mut self.tolerance_bits, "tolerance-bits");
            fill(&mut self.format, "format");
        }
        self.validate()
    }

    fn validate(self) -> Result<RunConfig> {
        let defaults = RunConfig::default();
        let target = match (&self.identity, &self.suite) {
            (Some(_), Some(_)) => return Err(Error::Config("give either --identity or --suite, not both".into())),
            (Some(id), None) => Target::Identity(id.parse().map_err(|e: Error| Error::Config(e.to_string()))?),
            (None, Some(s)) => Target::Suite(s.parse()?),
            (None, None) => defaults.target,
        };
        let n = self.n.as_deref().map(parse_usize_range).transpose()?;
        if n.as_ref().is_some_and(|v| v.contains(&0)) {
            return Err(Error::Config("n must be at least 1".into()));
        }
        let trials = self
            .trials
            .as_deref()
            .map(|t| parse_number::<usize>("trials", t))
            .transpose()?;
        if trials == Some(0) {
            return Err(Error::Config("trials must be at least 1".into()));
        }
        let nomes = self
            .nome
            .as_deref()
            .map(|text| {
                text.split(',')
                    .map(|s| {
                        let p = parse_exact(s).map_err(|e| Error::Config(e.to_string()))?;
                        if p.clone().abs() >= 1 {
                            return Err(Error::Config(format!("nome {s:?} must satisfy |p| < 1")));
                        }
                        Ok(p)
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .transpose()?;
        let config = RunConfig {
            target,
            n,
            k: self.k.as_deref().map(parse_range::<u32>).transpose()?,
            r: self.r.as_deref().map(parse_usize_range).transpose()?,
            trials,
            seed: self
                .seed
                .as_deref()
                .map(|s| parse_number("seed", s))
                .transpose()?
                .unwrap_or(defaults.seed),
            precision_bits: self
                .precision_bits
                .as_deref()
                .map(|s| parse_number("precision-bits", s))
                .transpose()?
                .unwrap_or(defaults.precision_bits),
            nomes,
            tolerance_bits: self
                .tolerance_bits
                .as_deref()
                .map(|s| parse_number("tolerance-bits", s))
                .transpose()?
                .unwrap_or(defaults.tolerance_bits),
            format: self
                .format
                .as_deref()
                .map(str::parse)
                .transpose()?
                .unwrap_or(defaults.format),
            timings: self.timings,
        };
        let policy = config.policy()?;
        if config.tolerance_bits == 0 || config.tolerance_bits > policy.working_bits() - policy.guard_bits() {
            return Err(Error::Config(format!(
                "tolerance-bits must lie in 1..={} at {} working bits",
                policy.working_bits() - policy.guard_bits(),
                policy.working_bits()
            )));
        }
        Ok(config)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range::<u32>("1..3").unwrap(), vec![1, 2, 3]);
        assert_eq!(parse_range::<u32>("0..=2").unwrap(), vec![0, 1, 2]);
        assert_eq!(parse_range::<u32>("4, 2").unwrap(), vec![4, 2]);
        assert_eq!(parse_range::<u32>("7").unwrap(), vec![7]);
        assert!(parse_range::<u32>("3..1").is_err());
        assert!(parse_range::<u32>("a").is_err());
    }

    #[test]
    fn config_file_fills_gaps_only() {
        let file = parse_config_file("# comment\nseed = 9\nprecision_bits=320\n--K=1..2\n").unwrap();
        assert_eq!(file["seed"], "9");
        assert_eq!(file["precision-bits"], "320");
        assert_eq!(file["K"], "1..2");

        let dir = std::env::temp_dir().join(format!("hyperdual-config-{}", std::process::id()));
        std::fs::write(&dir, "seed=9\ntrials=2\n").unwrap();
        let args = Args {
            seed: Some("4".into()),
            config: Some(dir.clone()),
            ..Args::default()
        };
        let config = args.resolve().unwrap();
        std::fs::remove_file(&dir).ok();
        assert_eq!(config.seed, 4);
        assert_eq!(config.trials, Some(2));
    }

    #[test]
    fn invalid_configs() {
        let bad = |args: Args| matches!(args.resolve(), Err(Error::Config(_)));
        assert!(bad(Args {
            trials: Some("0".into()),
            ..Args::default()
        }));
        assert!(bad(Args {
            identity: Some("nope".into()),
            ..Args::default()
        }));
        assert!(bad(Args {
            nome: Some("1.5".into()),
            ..Args::default()
        }));
        assert!(bad(Args {
            precision_bits: Some("32".into()),
            ..Args::default()
        }));
        assert!(bad(Args {
            identity: Some("symtrig_p4".into()),
            suite: Some("main".into()),
            ..Args::default()
        }));
    }

    #[test]
    fn defaults() {
        let config = Args::default().resolve().unwrap();
        assert_eq!(config, RunConfig::default());
    }
}
