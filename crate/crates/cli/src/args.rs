use std::fs;
use std::path::Path;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "partbias",
    version,
    about = "Exact counts and limits for partitions biased between two part sets"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Flat `key = value` file supplying defaults for any long flag.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<String>,

    /// Record wall-clock time in the metadata block.
    #[arg(long, global = true)]
    pub timing: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Exact greater / less / equal counts.
    Count(CountArgs),
    /// Closed-form limit of greater / total.
    Asymptote(SetArgs),
    /// V-form volumes V_{A,B}, V_{B,A} and the full simplex.
    Volume(VolumeArgs),
    /// Limit of C_{n,N} for part sets in arithmetic progression.
    Progression(ProgressionArgs),
    /// Table of exact C_{n,N} with per-N limits.
    Conjecture(ConjectureArgs),
    /// Greater vs less counts for progression part sets.
    Direction(DirectionArgs),
    /// Integer points of the t-dilate of the partition polytope.
    Ehrhart(EhrhartArgs),
    /// Search equal-size pairs with limit at most 1/2.
    Scan(ScanArgs),
}

#[derive(Args, Debug)]
pub struct SetArgs {
    /// Comma-separated parts counted positively.
    #[arg(long, value_delimiter = ',', required = true, allow_negative_numbers = true)]
    pub r: Vec<i64>,
    /// Comma-separated parts counted negatively.
    #[arg(long, value_delimiter = ',', required = true, allow_negative_numbers = true)]
    pub s: Vec<i64>,
    /// Comma-separated free parts.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub i: Vec<i64>,
}

#[derive(Args, Debug)]
pub struct CountArgs {
    #[command(flatten)]
    pub sets: SetArgs,
    /// Comma-separated values of n.
    #[arg(long, value_delimiter = ',', conflicts_with = "n_max")]
    pub n: Vec<u64>,
    /// Every n from 0 (or --step) up to this value.
    #[arg(long)]
    pub n_max: Option<u64>,
    /// Spacing of the --n-max grid.
    #[arg(long, default_value_t = 1, requires = "n_max")]
    pub step: u64,
    /// Use exhaustive enumeration instead of the DP.
    #[arg(long)]
    pub oracle: bool,
}

#[derive(Args, Debug)]
pub struct VolumeArgs {
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub a: Vec<i64>,
    #[arg(long, value_delimiter = ',', required = true, allow_negative_numbers = true)]
    pub b: Vec<i64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Exact,
    Beta,
    Quadrature,
    Gamma,
}

#[derive(Args, Debug)]
pub struct ProgressionArgs {
    #[arg(long)]
    pub r: u64,
    #[arg(long)]
    pub s: u64,
    #[arg(long)]
    pub m: u64,
    #[arg(long = "N")]
    pub n_sets: u64,
    #[arg(long, value_enum, default_value_t = Mode::Exact)]
    pub mode: Mode,
}

#[derive(Args, Debug)]
pub struct ConjectureArgs {
    #[arg(long)]
    pub r: u64,
    #[arg(long)]
    pub s: u64,
    #[arg(long)]
    pub m: u64,
    #[arg(long = "n-grid", value_delimiter = ',', required = true)]
    pub n_grid: Vec<u64>,
    #[arg(long = "N-grid", value_delimiter = ',', required = true)]
    pub n_sets_grid: Vec<u64>,
    /// DP cell-update cap per N.
    #[arg(long, default_value_t = 4_000_000_000)]
    pub budget: u64,
}

#[derive(Args, Debug)]
pub struct DirectionArgs {
    #[arg(long)]
    pub r: u64,
    #[arg(long)]
    pub s: u64,
    #[arg(long)]
    pub m: u64,
    #[arg(long = "N")]
    pub n_sets: u64,
    #[arg(long)]
    pub n: u64,
}

#[derive(Args, Debug)]
pub struct EhrhartArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    pub r: Vec<i64>,
    #[arg(long, value_delimiter = ',', required = true)]
    pub s: Vec<i64>,
    /// Dilation factor.
    #[arg(long)]
    pub t: u64,
    #[arg(long, default_value_t = partbias::geometry::DEFAULT_EHRHART_NODES)]
    pub max_nodes: u64,
}

#[derive(Args, Debug)]
pub struct ScanArgs {
    #[arg(long, default_value_t = 2)]
    pub size: usize,
    #[arg(long, default_value_t = 10)]
    pub max_part: u64,
}

const SUBCOMMANDS: &[&str] = &[
    "count",
    "asymptote",
    "volume",
    "progression",
    "conjecture",
    "direction",
    "ehrhart",
    "scan",
];

/// Parses a flat `key = value` file. Blank lines and `#` comments are skipped.
pub fn parse_config(text: &str) -> Result<Vec<(String, String)>, String> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("config line {}: expected key = value", lineno + 1))?;
        let key = key.trim().trim_start_matches("--");
        if key.is_empty() {
            return Err(format!("config line {}: empty key", lineno + 1));
        }
        out.push((key.to_string(), value.trim().to_string()));
    }
    Ok(out)
}

fn config_path(argv: &[String]) -> Option<String> {
    argv.iter().enumerate().find_map(|(k, a)| {
        if a == "--config" {
            argv.get(k + 1).cloned()
        } else {
            a.strip_prefix("--config=").map(str::to_string)
        }
    })
}

fn has_flag(argv: &[String], key: &str) -> bool {
    let long = format!("--{key}");
    let prefixed = format!("--{key}=");
    argv.iter().any(|a| *a == long || a.starts_with(&prefixed))
}

/// Splices config entries in after the subcommand name; flags already on the
/// command line take precedence.
pub fn merge_config(argv: Vec<String>) -> Result<Vec<String>, String> {
    let Some(path) = config_path(&argv) else {
        return Ok(argv);
    };
    let text = fs::read_to_string(Path::new(&path)).map_err(|e| format!("reading {path}: {e}"))?;
    let entries = parse_config(&text)?;
    let Some(pos) = argv.iter().position(|a| SUBCOMMANDS.contains(&a.as_str())) else {
        return Ok(argv);
    };
    let mut merged = argv[..=pos].to_vec();
    for (key, value) in entries {
        if has_flag(&argv, &key) {
            continue;
        }
        match value.as_str() {
            "true" => merged.push(format!("--{key}")),
            "false" => {}
            _ => merged.push(format!("--{key}={value}")),
        }
    }
    merged.extend_from_slice(&argv[pos + 1..]);
    Ok(merged)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn argv(s: &str) -> Vec<String> {
        s.split_whitespace().map(String::from).collect()
    }

    #[test]
    fn config_lines() {
        let parsed = parse_config("# comment\n r = 1,2\n\n--s=3\n").unwrap();
        assert_eq!(
            parsed,
            vec![("r".into(), "1,2".into()), ("s".into(), "3".into())]
        );
        assert!(parse_config("nonsense").is_err());
    }

    #[test]
    fn command_line_wins() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.conf");
        fs::write(&path, "r = 1,2\ns = 3\ntiming = true\n").unwrap();
        let line = format!("partbias asymptote --config {} --s 5", path.display());
        let merged = merge_config(argv(&line)).unwrap();
        assert!(merged.contains(&"--r=1,2".to_string()));
        assert!(merged.contains(&"--timing".to_string()));
        assert!(!merged.contains(&"--s=3".to_string()));
        let cli = Cli::try_parse_from(merged).unwrap();
        let Command::Asymptote(sets) = cli.command else {
            panic!("wrong subcommand");
        };
        assert_eq!(sets.s, vec![5]);
        assert!(cli.timing);
    }
}
