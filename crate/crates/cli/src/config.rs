//! Parameter flags, the optional TOML config file, and their merge.

use std::path::{Path, PathBuf};

use clap::Args;
use rmtf::analysis::DecoderShape;
use rmtf::ParamSet;
use serde::Deserialize;

use crate::error::CliError;

/// Parameter flags shared by every subcommand. Any of them may instead come
/// from `--config`; a flag given inline overrides the file.
#[derive(Args, Debug, Clone, Default)]
pub struct ParamArgs {
    /// TOML file with any of: q, m, n, L, k, w, t, N, lambda, seed, trials.
    #[arg(long, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Base field size (prime power ≤ 256).
    #[arg(long)]
    pub q: Option<u64>,
    /// Extension degree.
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long = "L")]
    pub l: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    /// Rank weight of the trapdoor rows.
    #[arg(long)]
    pub w: Option<usize>,
    /// Rank weight of the error.
    #[arg(long)]
    pub t: Option<usize>,
    /// Number of rows of X and E.
    #[arg(long = "N")]
    pub samples: Option<usize>,
    /// Security level in bits.
    #[arg(long)]
    pub lambda: Option<u32>,
}

#[derive(Deserialize, Debug, Default, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub q: Option<u64>,
    pub m: Option<usize>,
    pub n: Option<usize>,
    #[serde(rename = "L")]
    pub l: Option<usize>,
    pub k: Option<usize>,
    pub w: Option<usize>,
    pub t: Option<usize>,
    #[serde(rename = "N")]
    pub samples: Option<usize>,
    pub lambda: Option<u32>,
    pub seed: Option<u64>,
    pub trials: Option<u64>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        toml::from_str(&text).map_err(|e| CliError::Malformed(format!("{}: {e}", path.display())))
    }
}

/// Flags merged over the config file.
#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Config {
    pub file: FileConfig,
}

impl Config {
    pub fn resolve(args: &ParamArgs) -> Result<Self, CliError> {
        let base = match &args.config {
            Some(p) => FileConfig::load(p)?,
            None => FileConfig::default(),
        };
        let file = FileConfig {
            q: args.q.or(base.q),
            m: args.m.or(base.m),
            n: args.n.or(base.n),
            l: args.l.or(base.l),
            k: args.k.or(base.k),
            w: args.w.or(base.w),
            t: args.t.or(base.t),
            samples: args.samples.or(base.samples),
            lambda: args.lambda.or(base.lambda),
            seed: base.seed,
            trials: base.trials,
        };
        if let Some(q) = file.q {
            if q < 2 {
                return Err(CliError::Usage(format!("--q must be at least 2, got {q}")));
            }
        }
        let dims = [file.m, file.n, file.l, file.k, file.w, file.t, file.samples];
        if dims.iter().flatten().any(|&d| d > u32::MAX as usize) {
            return Err(CliError::Usage("dimensions must fit in 32 bits".into()));
        }
        Ok(Self { file })
    }

    fn need<T: Copy>(v: Option<T>, flag: &str) -> Result<T, CliError> {
        v.ok_or_else(|| CliError::Usage(format!("missing --{flag} (inline or in --config)")))
    }

    pub fn q(&self) -> Result<u64, CliError> {
        Self::need(self.file.q, "q")
    }

    pub fn m(&self) -> Result<usize, CliError> {
        Self::need(self.file.m, "m")
    }

    pub fn l(&self) -> Result<usize, CliError> {
        Self::need(self.file.l, "L")
    }

    pub fn w(&self) -> Result<usize, CliError> {
        Self::need(self.file.w, "w")
    }

    pub fn lambda(&self) -> Result<u32, CliError> {
        Self::need(self.file.lambda, "lambda")
    }

    /// Inline seed first, then the file's.
    pub fn seed(&self, inline: Option<u64>) -> Result<u64, CliError> {
        Self::need(inline.or(self.file.seed), "seed")
    }

    pub fn trials(&self, inline: Option<u64>) -> Result<u64, CliError> {
        Self::need(inline.or(self.file.trials), "trials")
    }

    /// The full parameter set; λ defaults to 0 when absent.
    pub fn params(&self) -> Result<ParamSet, CliError> {
        let f = &self.file;
        Ok(ParamSet {
            q: self.q()?,
            m: self.m()?,
            n: Self::need(f.n, "n")?,
            l: self.l()?,
            k: Self::need(f.k, "k")?,
            w: self.w()?,
            t: Self::need(f.t, "t")?,
            samples: Self::need(f.samples, "N")?,
            lambda: f.lambda.unwrap_or(0),
        })
    }

    /// Decoder shape for simulation: ℓ = n rows and n + L columns; k unused.
    pub fn shape(&self) -> Result<DecoderShape, CliError> {
        let f = &self.file;
        let n = Self::need(f.n, "n")?;
        Ok(DecoderShape {
            q: self.q()?,
            m: self.m()?,
            rows: n,
            cols: n + self.l()?,
            w: self.w()?,
            t: Self::need(f.t, "t")?,
            samples: Self::need(f.samples, "N")?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inline_wins() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("p.toml");
        std::fs::write(&path, "q = 2\nm = 13\nL = 4\nN = 9\nseed = 5\n").unwrap();
        let args = ParamArgs { config: Some(path), m: Some(17), ..Default::default() };
        let c = Config::resolve(&args).unwrap();
        assert_eq!((c.q().unwrap(), c.m().unwrap(), c.l().unwrap()), (2, 17, 4));
        assert_eq!(c.file.samples, Some(9));
        assert_eq!(c.seed(None).unwrap(), 5);
        assert_eq!(c.seed(Some(8)).unwrap(), 8);
        assert!(matches!(c.params(), Err(CliError::Usage(_))));
    }

    #[test]
    fn unknown_keys_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("p.toml");
        std::fs::write(&path, "q = 2\nbogus = 1\n").unwrap();
        let args = ParamArgs { config: Some(path), ..Default::default() };
        assert!(matches!(Config::resolve(&args), Err(CliError::Malformed(_))));
    }
}
