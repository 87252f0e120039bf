use std::path::PathBuf;

use crate::error::{invalid, Result};

/// How a suite chooses its instances.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Mode {
    /// Every class of a catalog (or every pair derived from one).
    Exhaustive,
    /// Seeded random instances.
    Random,
    /// Both of the above.
    Both,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Exhaustive => "exhaustive",
            Mode::Random => "random",
            Mode::Both => "both",
        }
    }

    pub fn exhaustive(self) -> bool {
        self != Mode::Random
    }

    pub fn random(self) -> bool {
        self != Mode::Exhaustive
    }
}

/// Suite parameters; each suite fills in its own defaults.
#[derive(Debug, Clone, Default)]
pub struct Params {
    pub n: Option<usize>,
    pub seed: u64,
    pub trials: Option<usize>,
    pub mode: Option<Mode>,
    /// A `.tkc` file used whenever its size is needed.
    pub catalog: Option<PathBuf>,
    /// Directory searched for `cat<N>.tkc`.
    pub catalog_dir: Option<PathBuf>,
}

impl Params {
    pub fn with_n(mut self, n: usize) -> Self {
        self.n = Some(n);
        self
    }

    pub fn with_trials(mut self, trials: usize) -> Self {
        self.trials = Some(trials);
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_mode(mut self, mode: Mode) -> Self {
        self.mode = Some(mode);
        self
    }

    pub(crate) fn trials_or(&self, default: usize) -> usize {
        self.trials.unwrap_or(default)
    }

    pub(crate) fn mode_or(&self, default: Mode) -> Mode {
        self.mode.unwrap_or(default)
    }

    /// `n` if given, else the default range; `n` must lie in `lo..=hi`.
    pub(crate) fn sizes(&self, default: std::ops::RangeInclusive<usize>, lo: usize, hi: usize) -> Result<Vec<usize>> {
        match self.n {
            Some(n) if n < lo || n > hi => Err(invalid(format!("n must lie in {lo}..={hi}, got {n}"))),
            Some(n) => Ok(vec![n]),
            None => Ok(default.collect()),
        }
    }
}
