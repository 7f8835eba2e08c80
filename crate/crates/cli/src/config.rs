//! Flat `key = value` config files and their merge with command-line flags.
//!
//! List-valued keys take comma-separated values and may repeat; repeated
//! lines append. `function` is the exception: function literals contain
//! commas, so each `function` line holds exactly one literal. An interval is
//! one `interval = a, b` line. Lines starting with `#` are comments.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use lfhh::{Alpha, GeneralizedFunction, Interval, SweepConfig, TheoremId, VerifyOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(format!("unknown format {other:?} (expected json or csv)")),
        }
    }
}

/// Settings before validation. Command-line flags and config files both
/// produce one of these.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RawSettings {
    pub theorems: Vec<String>,
    pub alphas: Vec<f64>,
    pub functions: Vec<String>,
    pub intervals: Vec<(f64, f64)>,
    pub p: Vec<f64>,
    pub q: Vec<f64>,
    pub n: Vec<i32>,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
    pub tol: Option<f64>,
    pub grid: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

fn err<T>(msg: impl Into<String>) -> Result<T, ConfigError> {
    Err(ConfigError(msg.into()))
}

fn parse_list<T: FromStr>(line: usize, key: &str, value: &str) -> Result<Vec<T>, ConfigError> {
    value
        .split(',')
        .map(|s| {
            let s = s.trim();
            s.parse().map_err(|_| ConfigError(format!("line {line}: bad value {s:?} for {key}")))
        })
        .collect()
}

fn parse_one<T: FromStr>(line: usize, key: &str, value: &str) -> Result<T, ConfigError> {
    value.trim().parse().map_err(|_| ConfigError(format!("line {line}: bad value {value:?} for {key}")))
}

pub fn parse_config(text: &str) -> Result<RawSettings, ConfigError> {
    let mut s = RawSettings::default();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let Some((key, value)) = trimmed.split_once('=') else {
            return err(format!("line {line}: expected key = value"));
        };
        let (key, value) = (key.trim(), value.trim());
        match key {
            "theorem" => s.theorems.extend(value.split(',').map(|t| t.trim().to_string())),
            "alpha" => s.alphas.extend(parse_list::<f64>(line, key, value)?),
            "function" => s.functions.push(value.to_string()),
            "interval" => match parse_list::<f64>(line, key, value)?.as_slice() {
                [a, b] => s.intervals.push((*a, *b)),
                _ => return err(format!("line {line}: interval needs exactly two numbers")),
            },
            "p" => s.p.extend(parse_list::<f64>(line, key, value)?),
            "q" => s.q.extend(parse_list::<f64>(line, key, value)?),
            "n" => s.n.extend(parse_list::<i32>(line, key, value)?),
            "out" => s.out = Some(PathBuf::from(value)),
            "format" => s.format = Some(value.parse().map_err(|e| ConfigError(format!("line {line}: {e}")))?),
            "tol" => s.tol = Some(parse_one(line, key, value)?),
            "grid" => s.grid = Some(parse_one(line, key, value)?),
            other => return err(format!("line {line}: unknown key {other:?}")),
        }
    }
    Ok(s)
}

impl RawSettings {
    /// Flags win: any key set on the command line replaces the file's value.
    pub fn overlay(self, flags: RawSettings) -> RawSettings {
        fn pick<T>(flag: Vec<T>, file: Vec<T>) -> Vec<T> {
            if flag.is_empty() {
                file
            } else {
                flag
            }
        }
        RawSettings {
            theorems: pick(flags.theorems, self.theorems),
            alphas: pick(flags.alphas, self.alphas),
            functions: pick(flags.functions, self.functions),
            intervals: pick(flags.intervals, self.intervals),
            p: pick(flags.p, self.p),
            q: pick(flags.q, self.q),
            n: pick(flags.n, self.n),
            out: flags.out.or(self.out),
            format: flags.format.or(self.format),
            tol: flags.tol.or(self.tol),
            grid: flags.grid.or(self.grid),
        }
    }

    /// (p, q) pairs: both lists zipped, or the missing side filled in by
    /// conjugacy, or (2, 2) when neither is given.
    fn exponents(&self) -> Result<Vec<(f64, f64)>, ConfigError> {
        let pairs: Vec<(f64, f64)> = match (self.p.is_empty(), self.q.is_empty()) {
            (true, true) => vec![(2.0, 2.0)],
            (false, true) => self.p.iter().map(|&p| (p, p / (p - 1.0))).collect(),
            (true, false) => self.q.iter().map(|&q| (q / (q - 1.0), q)).collect(),
            (false, false) if self.p.len() == self.q.len() => self.p.iter().copied().zip(self.q.iter().copied()).collect(),
            (false, false) => return err(format!("{} values of p but {} of q", self.p.len(), self.q.len())),
        };
        for &(p, q) in &pairs {
            if !(p > 1.0 && q > 1.0) || !p.is_finite() || !q.is_finite() || (1.0 / p + 1.0 / q - 1.0).abs() >= 1e-12 {
                return err(format!("p = {p}, q = {q} are not conjugate exponents with p, q > 1"));
            }
        }
        Ok(pairs)
    }

    pub fn into_sweep_config(self) -> Result<SweepConfig, ConfigError> {
        let theorems = self
            .theorems
            .iter()
            .map(|t| t.parse::<TheoremId>().map_err(|e| ConfigError(e.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        let alphas = self
            .alphas
            .iter()
            .map(|&a| Alpha::new(a).map_err(|e| ConfigError(e.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        let functions = self
            .functions
            .iter()
            .map(|f| f.parse::<GeneralizedFunction>().map_err(|e| ConfigError(e.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        let intervals = self
            .intervals
            .iter()
            .map(|&(a, b)| Interval::new(a, b).map_err(|e| ConfigError(e.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        let exponents = self.exponents()?;

        let mut options = VerifyOptions::default();
        if let Some(tol) = self.tol {
            if tol <= 0.0 || !tol.is_finite() {
                return err(format!("tolerance must be positive, got {tol}"));
            }
            options.identity_tol = tol;
        }
        if let Some(grid) = self.grid {
            if grid < 3 {
                return err(format!("grid needs at least 3 points, got {grid}"));
            }
            options.convexity_grid = grid;
        }
        let config = SweepConfig {
            theorems,
            alphas,
            functions,
            intervals,
            exponents,
            n_values: if self.n.is_empty() { vec![2] } else { self.n.clone() },
            options,
        };
        config.validate().map_err(|e| ConfigError(e.to_string()))?;
        Ok(config)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_keys() {
        let text = "\
# grid for the identity suite
theorem = thm1, thm2
alpha = 0.5, 1.0
alpha = 0.3
function = poly:0,0,1
function = ml:1
interval = 0, 1
interval = 1, 3
p = 2, 3
q = 2, 1.5
n = 2, 3
out = results.jsonl
format = csv
tol = 1e-10
grid = 17
";
        let s = parse_config(text).unwrap();
        assert_eq!(s.theorems, vec!["thm1", "thm2"]);
        assert_eq!(s.alphas, vec![0.5, 1.0, 0.3]);
        assert_eq!(s.functions, vec!["poly:0,0,1", "ml:1"]);
        assert_eq!(s.intervals, vec![(0.0, 1.0), (1.0, 3.0)]);
        assert_eq!(s.p, vec![2.0, 3.0]);
        assert_eq!(s.n, vec![2, 3]);
        assert_eq!(s.out, Some(PathBuf::from("results.jsonl")));
        assert_eq!(s.format, Some(Format::Csv));
        assert_eq!(s.tol, Some(1e-10));
        assert_eq!(s.grid, Some(17));
        let c = s.into_sweep_config().unwrap();
        assert_eq!(c.exponents, vec![(2.0, 2.0), (3.0, 1.5)]);
        assert_eq!(c.options.identity_tol, 1e-10);
    }

    #[test]
    fn decimals_are_bit_exact() {
        let s = parse_config("alpha = 0.1\ninterval = 0.30000000000000004, 0.7").unwrap();
        assert_eq!(s.alphas[0].to_bits(), 0.1f64.to_bits());
        assert_eq!(s.intervals[0].0.to_bits(), (0.1f64 + 0.2).to_bits());
    }

    #[test]
    fn rejects_malformed_lines() {
        for bad in ["alpha 0.5", "alpha = x", "interval = 1", "interval = 1,2,3", "colour = red", "format = xml", "n = 1.5"] {
            assert!(parse_config(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn flags_win() {
        let file = parse_config("alpha = 0.5\nfunction = poly:0,1\nformat = csv\ntol = 1e-3").unwrap();
        let flags = RawSettings { alphas: vec![1.0], tol: Some(1e-6), ..RawSettings::default() };
        let merged = file.overlay(flags);
        assert_eq!(merged.alphas, vec![1.0]);
        assert_eq!(merged.functions, vec!["poly:0,1"]);
        assert_eq!(merged.format, Some(Format::Csv));
        assert_eq!(merged.tol, Some(1e-6));
    }

    fn base() -> RawSettings {
        RawSettings {
            theorems: vec!["thm3".into()],
            alphas: vec![0.5],
            functions: vec!["poly:0,0,1".into()],
            intervals: vec![(0.0, 1.0)],
            ..RawSettings::default()
        }
    }

    #[test]
    fn exponent_rules() {
        assert_eq!(base().into_sweep_config().unwrap().exponents, vec![(2.0, 2.0)]);
        let c = RawSettings { p: vec![4.0], ..base() }.into_sweep_config().unwrap();
        assert!((c.exponents[0].1 - 4.0 / 3.0).abs() < 1e-15);
        assert!(RawSettings { p: vec![2.0], q: vec![3.0], ..base() }.into_sweep_config().is_err());
        assert!(RawSettings { p: vec![1.0], ..base() }.into_sweep_config().is_err());
        assert!(RawSettings { p: vec![2.0, 3.0], q: vec![2.0], ..base() }.into_sweep_config().is_err());
    }

    #[test]
    fn validation_errors() {
        assert!(RawSettings { functions: vec![], ..base() }.into_sweep_config().is_err());
        assert!(RawSettings { functions: vec!["poly:x".into()], ..base() }.into_sweep_config().is_err());
        assert!(RawSettings { intervals: vec![(1.0, 1.0)], ..base() }.into_sweep_config().is_err());
        assert!(RawSettings { alphas: vec![1.5], ..base() }.into_sweep_config().is_err());
        assert!(RawSettings { theorems: vec!["thm9".into()], ..base() }.into_sweep_config().is_err());
        assert!(RawSettings { tol: Some(-1.0), ..base() }.into_sweep_config().is_err());
        assert!(RawSettings { grid: Some(2), ..base() }.into_sweep_config().is_err());
    }
}
