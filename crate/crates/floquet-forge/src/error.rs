use std::fmt;

/// A denominator that fell below the resonance tolerance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResonantPair {
    pub row: usize,
    pub col: usize,
    pub denominator: f64,
}

impl fmt::Display for ResonantPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}) -> {:e}", self.row, self.col, self.denominator)
    }
}

#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    /// Inputs outside the documented domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// A Sylvester or perturbative denominator vanished: the drive is resonant.
    #[error("resonant denominator: {detail}{}", fmt_pairs(.pairs))]
    ResonantDenominator {
        detail: String,
        pairs: Vec<ResonantPair>,
    },
    /// The laser is resonant with an interband transition at some momentum.
    #[error("band resonance at k index {k}: A_k = {value:e}")]
    BandResonance { k: usize, value: f64 },
    #[error("no exciton root below the band edge")]
    NoExciton,
    #[error("numerical failure: {0}")]
    Numeric(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

fn fmt_pairs(pairs: &[ResonantPair]) -> String {
    if pairs.is_empty() {
        return String::new();
    }
    let shown: Vec<String> = pairs.iter().take(4).map(|p| p.to_string()).collect();
    format!(
        " ({} level pairs, e.g. {}{})",
        pairs.len(),
        shown.join(", "),
        if pairs.len() > 4 { ", ..." } else { "" }
    )
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn resonance(detail: impl Into<String>) -> Self {
        Error::ResonantDenominator {
            detail: detail.into(),
            pairs: Vec::new(),
        }
    }

    /// True for failures caused by the physics (resonances, missing roots,
    /// non-convergence) rather than by malformed input.
    pub fn is_physics(&self) -> bool {
        !matches!(self, Error::Domain(_) | Error::Unsupported(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
