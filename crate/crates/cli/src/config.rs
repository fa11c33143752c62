//! Run settings: command-line flags layered over an optional JSON file.

use std::path::{Path, PathBuf};

use clap::Args;
use serde::Deserialize;

pub const SEED_ENV: &str = "GEOQUANT_SEED";

/// Flags shared by every subcommand. Each one overrides the same key in `--config`.
#[derive(Debug, Clone, Default, Args)]
pub struct Flags {
    /// JSON file with any of the keys below
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Phase-space dimension 2n
    #[arg(long, global = true)]
    pub dim: Option<usize>,
    #[arg(long, global = true)]
    pub trials: Option<usize>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true)]
    pub sites: Option<usize>,
    #[arg(long, global = true)]
    pub mass: Option<f64>,
    #[arg(long, global = true)]
    pub spacing: Option<f64>,
    /// Largest number of coherent states in the density probe
    #[arg(long, global = true)]
    pub kmax: Option<usize>,
    /// Number of sample points written by `sample`
    #[arg(long, global = true)]
    pub samples: Option<usize>,
    /// CSV output path
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub dim: Option<usize>,
    pub trials: Option<usize>,
    pub seed: Option<u64>,
    pub sites: Option<usize>,
    pub mass: Option<f64>,
    pub spacing: Option<f64>,
    pub kmax: Option<usize>,
    pub samples: Option<usize>,
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Settings {
    /// Number of degrees of freedom, half of `--dim`.
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    pub sites: usize,
    pub mass: f64,
    pub spacing: f64,
    pub kmax: usize,
    pub samples: usize,
    pub out: Option<PathBuf>,
}

#[derive(Debug)]
pub struct ConfigError(pub String);

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

fn read_file(path: &Path) -> Result<FileConfig, ConfigError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| ConfigError(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| ConfigError(format!("cannot parse {}: {e}", path.display())))
}

fn env_seed(raw: Option<String>) -> Result<Option<u64>, ConfigError> {
    raw.map(|s| {
        s.trim()
            .parse()
            .map_err(|_| ConfigError(format!("{SEED_ENV}={s} is not an unsigned integer")))
    })
    .transpose()
}

/// Seed precedence: flag, then config file, then `GEOQUANT_SEED`, then 0.
pub fn resolve(flags: &Flags, env: Option<String>) -> Result<Settings, ConfigError> {
    let file = match &flags.config {
        Some(p) => read_file(p)?,
        None => FileConfig::default(),
    };
    let dim = flags.dim.or(file.dim).unwrap_or(2);
    if dim == 0 || !dim.is_multiple_of(2) {
        return Err(ConfigError(format!("--dim must be a positive even number, got {dim}")));
    }
    let seed = match flags.seed.or(file.seed) {
        Some(s) => s,
        None => env_seed(env)?.unwrap_or(0),
    };
    let settings = Settings {
        n: dim / 2,
        trials: flags.trials.or(file.trials).unwrap_or(10),
        seed,
        sites: flags.sites.or(file.sites).unwrap_or(8),
        mass: flags.mass.or(file.mass).unwrap_or(1.0),
        spacing: flags.spacing.or(file.spacing).unwrap_or(1.0),
        kmax: flags.kmax.or(file.kmax).unwrap_or(8),
        samples: flags.samples.or(file.samples).unwrap_or(100),
        out: flags.out.clone().or(file.out),
    };
    if settings.sites == 0 {
        return Err(ConfigError("--sites must be positive".into()));
    }
    if !(settings.mass > 0.0 && settings.spacing > 0.0) {
        return Err(ConfigError("--mass and --spacing must be positive".into()));
    }
    Ok(settings)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn write_config(body: &str) -> tempfile::NamedTempFile {
        let f = tempfile::NamedTempFile::new().unwrap();
        std::fs::write(f.path(), body).unwrap();
        f
    }

    #[test]
    fn defaults() {
        let s = resolve(&Flags::default(), None).unwrap();
        assert_eq!((s.n, s.seed, s.trials, s.sites), (1, 0, 10, 8));
    }

    #[test]
    fn seed_precedence() {
        let cfg = write_config(r#"{"seed": 5}"#);
        let mut flags = Flags {
            config: Some(cfg.path().to_path_buf()),
            seed: Some(9),
            ..Flags::default()
        };
        assert_eq!(resolve(&flags, Some("3".into())).unwrap().seed, 9);
        flags.seed = None;
        assert_eq!(resolve(&flags, Some("3".into())).unwrap().seed, 5);
        flags.config = None;
        assert_eq!(resolve(&flags, Some("3".into())).unwrap().seed, 3);
        assert!(resolve(&flags, Some("x".into())).is_err());
    }

    #[test]
    fn flags_override_file() {
        let cfg = write_config(r#"{"dim": 6, "trials": 3}"#);
        let flags = Flags {
            config: Some(cfg.path().to_path_buf()),
            dim: Some(4),
            ..Flags::default()
        };
        let s = resolve(&flags, None).unwrap();
        assert_eq!((s.n, s.trials), (2, 3));
    }

    #[test]
    fn rejects_bad_input() {
        let odd = Flags {
            dim: Some(3),
            ..Flags::default()
        };
        assert!(resolve(&odd, None).is_err());
        let cfg = write_config(r#"{"dimension": 4}"#);
        let unknown = Flags {
            config: Some(cfg.path().to_path_buf()),
            ..Flags::default()
        };
        assert!(resolve(&unknown, None).is_err());
    }
}
