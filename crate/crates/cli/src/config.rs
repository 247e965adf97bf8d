use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use modsuper::exact::is_prime;
use modsuper::Limits;

use crate::CliError;

#[derive(Debug, Parser)]
#[command(name = "modsuper", version, about = "Checks and parameter scans for the symmetric group on tensor superspace")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub options: Options,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Injectivity threshold: closed form against the brute-force scan.
    Rbound,
    /// Dimension of the invariant endomorphisms over F_p and over Q.
    Endodim,
    /// The saturated image lattice of the integral group ring.
    Sigma {
        /// Extra generators `ELEMENT:E`, where ELEMENT is `skew` or `@FILE`
        /// with `rank:coefficient` lines; divides its image by p^E.
        #[arg(long, value_delimiter = ',')]
        extras: Vec<String>,
    },
    /// Runs every acceptance criterion.
    Verify {
        /// Only these criteria, e.g. `2,7`.
        #[arg(long, value_delimiter = ',')]
        criteria: Vec<u8>,
        /// Drop the odd-crossing signs in the Brauer action (mutation check).
        #[arg(long, hide = true)]
        inject_sign_bug: bool,
    },
    /// Surjectivity and characteristic comparison over a grid.
    Scan,
    /// Prints the JSON schema of reports.
    Schema,
}

#[derive(Debug, Default, Clone, Args)]
pub struct Options {
    /// Characteristic: `3`, `3..7` (primes in range), or a comma list; 0 is Q.
    #[arg(long, global = true)]
    pub p: Option<String>,
    /// Even dimension; same range syntax as `--p`
    #[arg(long, global = true)]
    pub m: Option<String>,
    /// Odd dimension
    #[arg(long, global = true)]
    pub n: Option<String>,
    /// Tensor degree
    #[arg(long, global = true)]
    pub r: Option<String>,
    #[arg(long, value_enum, global = true)]
    pub format: Option<Format>,
    /// Write MatrixMarket files here (sigma, endodim).
    #[arg(long, global = true)]
    pub dump: Option<PathBuf>,
    /// Plain `key=value` lines; command-line flags win.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Allow limits above the defaults.
    #[arg(long, global = true)]
    pub limit_override: bool,
    /// Cap on every tensor degree.
    #[arg(long, global = true)]
    pub max_r: Option<usize>,
    /// Cap on the number of matrix coordinates.
    #[arg(long, global = true)]
    pub max_coords: Option<u128>,
    /// Leave `ms` empty so repeated runs are byte-identical.
    #[arg(long, global = true)]
    pub no_timing: bool,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Table,
    Json,
}

/// Fully resolved settings for one run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub p: Option<Vec<u64>>,
    pub m: Option<Vec<usize>>,
    pub n: Option<Vec<usize>>,
    pub r: Option<Vec<usize>>,
    pub format: Format,
    pub dump: Option<PathBuf>,
    pub limits: Limits,
    pub timing: bool,
}

impl RunConfig {
    pub fn resolve(options: &Options) -> Result<Self, CliError> {
        let file = match &options.config {
            Some(path) => read_config_file(path)?,
            None => BTreeMap::new(),
        };
        let pick = |flag: &Option<String>, key: &str| flag.clone().or_else(|| file.get(key).cloned());
        let flag_or_file = |flag: bool, key: &str| -> Result<bool, CliError> {
            match (flag, file.get(key)) {
                (true, _) => Ok(true),
                (false, None) => Ok(false),
                (false, Some(v)) => parse_bool(key, v),
            }
        };
        let number = |flag: Option<String>, key: &str| -> Result<Option<u128>, CliError> {
            pick(&flag, key)
                .map(|v| v.trim().parse::<u128>().map_err(|_| CliError::Usage(format!("{key}: expected a number, got `{v}`"))))
                .transpose()
        };
        let format = match (options.format, file.get("format")) {
            (Some(f), _) => f,
            (None, Some(v)) => Format::from_str(v.trim(), true).map_err(|_| CliError::Usage(format!("format: unknown `{v}`")))?,
            (None, None) => Format::Table,
        };
        let limit_override = flag_or_file(options.limit_override, "limit-override")?;
        let max_r = number(options.max_r.map(|x| x.to_string()), "max-r")?;
        let max_coords = number(options.max_coords.map(|x| x.to_string()), "max-coords")?;
        Ok(RunConfig {
            p: pick(&options.p, "p").map(|s| parse_characteristics(&s)).transpose()?,
            m: pick(&options.m, "m").map(|s| parse_range("m", &s)).transpose()?,
            n: pick(&options.n, "n").map(|s| parse_range("n", &s)).transpose()?,
            r: pick(&options.r, "r").map(|s| parse_range("r", &s)).transpose()?,
            format,
            dump: options.dump.clone().or_else(|| file.get("dump").map(PathBuf::from)),
            limits: resolve_limits(limit_override, max_r, max_coords)?,
            timing: !flag_or_file(options.no_timing, "no-timing")?,
        })
    }

    pub fn require_p(&self) -> Result<&[u64], CliError> {
        self.p.as_deref().ok_or_else(|| CliError::Usage("--p is required".into()))
    }

    pub fn require(&self, name: &str) -> Result<&[usize], CliError> {
        let v = match name {
            "m" => &self.m,
            "n" => &self.n,
            "r" => &self.r,
            _ => unreachable!("unknown grid axis {name}"),
        };
        v.as_deref().ok_or_else(|| CliError::Usage(format!("--{name} is required")))
    }
}

const CONFIG_KEYS: [&str; 10] = ["p", "m", "n", "r", "format", "dump", "limit-override", "max-r", "max-coords", "no-timing"];

pub fn read_config_file(path: &Path) -> Result<BTreeMap<String, String>, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Usage(format!("config {}: {e}", path.display())))?;
    parse_config(&text)
}

pub fn parse_config(text: &str) -> Result<BTreeMap<String, String>, CliError> {
    let mut out = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) =
            line.split_once('=').ok_or_else(|| CliError::Usage(format!("config line {}: expected key=value", i + 1)))?;
        let key = key.trim().replace('_', "-");
        if !CONFIG_KEYS.contains(&key.as_str()) {
            return Err(CliError::Usage(format!("config line {}: unknown key `{key}`", i + 1)));
        }
        out.insert(key, value.trim().to_string());
    }
    Ok(out)
}

fn parse_bool(key: &str, v: &str) -> Result<bool, CliError> {
    match v.trim() {
        "true" | "1" | "yes" => Ok(true),
        "false" | "0" | "no" => Ok(false),
        other => Err(CliError::Usage(format!("{key}: expected true or false, got `{other}`"))),
    }
}

/// Comma-separated items, each a number or an inclusive range `a..b`.
pub fn parse_range(name: &str, text: &str) -> Result<Vec<usize>, CliError> {
    let bad = || CliError::Usage(format!("--{name}: cannot read `{text}`; use 3, 1..4 or 1,2,5"));
    let mut out = Vec::new();
    for item in text.split(',').map(str::trim) {
        match item.split_once("..") {
            Some((a, b)) => {
                let a: usize = a.trim().parse().map_err(|_| bad())?;
                let b: usize = b.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
                if a > b {
                    return Err(CliError::Usage(format!("--{name}: empty range `{item}`")));
                }
                out.extend(a..=b);
            }
            None => out.push(item.parse().map_err(|_| bad())?),
        }
    }
    out.dedup();
    if out.is_empty() {
        return Err(bad());
    }
    Ok(out)
}

/// Like [`parse_range`], keeping only 0 and primes from ranges; single
/// values must be 0 or prime.
pub fn parse_characteristics(text: &str) -> Result<Vec<u64>, CliError> {
    let mut out = Vec::new();
    for item in text.split(',').map(str::trim) {
        let values = parse_range("p", item)?;
        if item.contains("..") {
            out.extend(values.into_iter().map(|v| v as u64).filter(|&v| v == 0 || is_prime(v)));
        } else {
            let v = values[0] as u64;
            if v != 0 && !is_prime(v) {
                return Err(CliError::Usage(format!("--p: {v} is neither 0 nor prime")));
            }
            out.push(v);
        }
    }
    if out.is_empty() {
        return Err(CliError::Usage(format!("--p: `{text}` contains no prime")));
    }
    Ok(out)
}

/// Defaults, lowered by `max_r` and `max_coords`. Raising a cap above its
/// default needs `limit_override`.
pub fn resolve_limits(limit_override: bool, max_r: Option<u128>, max_coords: Option<u128>) -> Result<Limits, CliError> {
    let d = Limits::default();
    if limit_override && max_r.is_none() && max_coords.is_none() {
        return Ok(Limits::unbounded());
    }
    let mut l = d;
    if let Some(cap) = max_r {
        let cap = usize::try_from(cap).unwrap_or(usize::MAX);
        let degrees = [d.max_r, d.endo_max_r, d.centralizer_max_r, d.brauer_max_r, d.faithful_max_r];
        if !limit_override && cap > degrees.into_iter().max().unwrap_or(0) {
            return Err(CliError::Usage(format!("--max-r {cap} is above every default; add --limit-override")));
        }
        let set = |default: usize| if limit_override { cap } else { cap.min(default) };
        l.max_r = set(d.max_r);
        l.endo_max_r = set(d.endo_max_r);
        l.centralizer_max_r = set(d.centralizer_max_r);
        l.brauer_max_r = set(d.brauer_max_r);
        l.faithful_max_r = set(d.faithful_max_r);
    }
    if let Some(cap) = max_coords {
        if !limit_override && cap > d.max_words.max(d.endo_max_coords) {
            return Err(CliError::Usage(format!("--max-coords {cap} is above the defaults; add --limit-override")));
        }
        let set = |default: u128| if limit_override { cap } else { cap.min(default) };
        l.max_words = set(d.max_words);
        l.endo_max_coords = set(d.endo_max_coords);
    }
    Ok(l)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("m", "3").unwrap(), [3]);
        assert_eq!(parse_range("m", "1..3").unwrap(), [1, 2, 3]);
        assert_eq!(parse_range("m", "1..2,5").unwrap(), [1, 2, 5]);
        assert!(parse_range("m", "3..1").is_err());
        assert!(parse_range("m", "x").is_err());
        assert_eq!(parse_characteristics("3..11").unwrap(), [3, 5, 7, 11]);
        assert_eq!(parse_characteristics("0,2").unwrap(), [0, 2]);
        assert!(parse_characteristics("4").is_err());
        assert!(parse_characteristics("8..10").is_err());
    }

    #[test]
    fn config_file_and_precedence() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.conf");
        fs::write(&path, "# grid\np = 5\nm=1..2\nformat=json\nno-timing=true\n").unwrap();
        let options = Options { p: Some("3".into()), config: Some(path), ..Options::default() };
        let c = RunConfig::resolve(&options).unwrap();
        assert_eq!(c.p, Some(vec![3]));
        assert_eq!(c.m, Some(vec![1, 2]));
        assert_eq!(c.format, Format::Json);
        assert!(!c.timing);
        assert!(parse_config("colour=red").is_err());
        assert!(parse_config("p").is_err());
    }

    #[test]
    fn limits_only_rise_with_override() {
        let d = Limits::default();
        assert_eq!(resolve_limits(false, None, None).unwrap(), d);
        let lower = resolve_limits(false, Some(4), None).unwrap();
        assert_eq!((lower.max_r, lower.faithful_max_r), (4, 4));
        assert!(resolve_limits(false, Some(40), None).is_err());
        assert_eq!(resolve_limits(true, Some(40), None).unwrap().max_r, 40);
        assert!(resolve_limits(false, None, Some(u128::MAX)).is_err());
        assert_eq!(resolve_limits(true, None, None).unwrap(), Limits::unbounded());
    }
}
