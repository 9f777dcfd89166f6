use std::fmt;

use serde::{Serialize, Serializer};

use super::{EvalConfig, Mode};

/// Serializes any `Display` value as its string form.
pub(crate) fn display<T: fmt::Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

/// Serializes a list of `Display` values as strings.
pub(crate) fn display_all<T: fmt::Display, S: Serializer>(
    v: &[T],
    s: S,
) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

/// Settings echoed at the top of every report.
#[derive(Clone, Debug, Serialize)]
pub struct RunHeader {
    pub mode: Mode,
    pub primes: [u64; 2],
    pub seed: u64,
}

impl From<&EvalConfig> for RunHeader {
    fn from(c: &EvalConfig) -> Self {
        RunHeader {
            mode: c.mode,
            primes: c.primes,
            seed: c.seed,
        }
    }
}

impl fmt::Display for RunHeader {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mode = match self.mode {
            Mode::Modular => "modular",
            Mode::Symbolic => "symbolic",
        };
        write!(
            f,
            "# mode={mode} prime1={} prime2={} seed={}",
            self.primes[0], self.primes[1], self.seed
        )
    }
}
