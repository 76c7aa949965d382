//! Membership tests for the three losing-set families, their extremal edge
//! counts, and the generic duration bounds derived from them.

mod blocks;
mod cactus;
mod degeneracy;
mod graph;
mod minor;
mod outerplanar;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub use blocks::{blocks, Block};
pub use cactus::is_diamond_minor_free;
pub use degeneracy::{degeneracy, is_k_degenerate, DegeneracyCertificate};
pub use graph::{GraphParseError, SimpleGraph};
pub use minor::{has_minor_oracle, CapacityError, ORACLE_MAX_VERTICES};
pub use outerplanar::is_outerplanar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PropertyError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

/// Which property Avoider is trying to keep.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GameFamily {
    Outerplanar,
    DiamondFree,
    KDegenerate(usize),
}

impl GameFamily {
    pub fn k_degenerate(k: usize) -> Result<Self, PropertyError> {
        if k == 0 {
            return Err(PropertyError::InvalidParameter(
                "k must be at least 1".into(),
            ));
        }
        Ok(Self::KDegenerate(k))
    }

    /// Stable name used in transcripts, CSV and on the command line.
    pub fn name(&self) -> &'static str {
        match self {
            Self::Outerplanar => "outerplanar",
            Self::DiamondFree => "diamond",
            Self::KDegenerate(_) => "kdegenerate",
        }
    }

    pub fn k(&self) -> Option<usize> {
        match *self {
            Self::KDegenerate(k) => Some(k),
            _ => None,
        }
    }

    /// Inverse of [`name`](Self::name) + [`k`](Self::k).
    pub fn from_parts(name: &str, k: Option<usize>) -> Result<Self, PropertyError> {
        match (name, k) {
            ("outerplanar", None) => Ok(Self::Outerplanar),
            ("diamond", None) => Ok(Self::DiamondFree),
            ("kdegenerate", Some(k)) => Self::k_degenerate(k),
            ("kdegenerate", None) => Err(PropertyError::InvalidParameter(
                "kdegenerate requires k".into(),
            )),
            ("outerplanar" | "diamond", Some(_)) => Err(PropertyError::InvalidParameter(
                format!("{name} does not take k"),
            )),
            _ => Err(PropertyError::InvalidParameter(format!(
                "unknown family `{name}`"
            ))),
        }
    }
}

impl fmt::Display for GameFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::KDegenerate(k) => write!(f, "kdegenerate(k={k})"),
            other => f.write_str(other.name()),
        }
    }
}

impl FromStr for GameFamily {
    type Err = PropertyError;

    /// Accepts `outerplanar`, `diamond`, or `kdegenerate:<k>`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.split_once(':') {
            Some(("kdegenerate", k)) => {
                let k = k.parse().map_err(|_| {
                    PropertyError::InvalidParameter(format!("bad k in `{s}`"))
                })?;
                Self::k_degenerate(k)
            }
            _ => Self::from_parts(s, None),
        }
    }
}

/// True if `g` contains a losing set of `family`.
pub fn is_losing(g: &SimpleGraph, family: GameFamily) -> bool {
    match family {
        GameFamily::Outerplanar => !is_outerplanar(g),
        GameFamily::DiamondFree => !is_diamond_minor_free(g),
        GameFamily::KDegenerate(k) => !is_k_degenerate(g, k),
    }
}

/// Extremal edge count for the family: 2n-3, ceil((3n-5)/2), or
/// (n-k)k + k(k-1)/2.
///
/// The diamond-free value follows the published formula. For odd `n` the true
/// maximum size of a cactus is one larger, see [`cactus_max_edges`].
pub fn extremal(family: GameFamily, n: usize) -> Result<usize, PropertyError> {
    if n < 2 {
        return Err(PropertyError::InvalidParameter(format!(
            "n must be at least 2, got {n}"
        )));
    }
    match family {
        GameFamily::Outerplanar => Ok(2 * n - 3),
        GameFamily::DiamondFree => Ok((3 * n - 5).div_ceil(2)),
        GameFamily::KDegenerate(k) => {
            if n < k + 1 {
                return Err(PropertyError::InvalidParameter(format!(
                    "k-degenerate extremal number needs n >= k+1 (n={n}, k={k})"
                )));
            }
            Ok((n - k) * k + k * (k - 1) / 2)
        }
    }
}

/// Largest edge count of a graph on `n` vertices with no diamond minor.
pub fn cactus_max_edges(n: usize) -> usize {
    3 * n.saturating_sub(1) / 2
}

/// `(ceil(ex/2) + 1, ex + 1)`.
pub fn tau_bounds(family: GameFamily, n: usize) -> Result<(usize, usize), PropertyError> {
    let ex = extremal(family, n)?;
    Ok((ex.div_ceil(2) + 1, ex + 1))
}
