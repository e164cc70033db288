use std::fmt;
use std::str::FromStr;

use crate::words::{Alphabet, Word};

use super::lehnert::PrimeBasis;
use super::CoefficientError;

/// One of the supported semidirect products `B ⋊ A` with `A` free.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// `B = Z[1/(p₁…pₙ)]`, with `aᵢ` acting by multiplication by `1/pᵢ`.
    Lehnert(PrimeBasis),
    /// `Z wr Z`: `B = ⊕_Z Z`, the single generator shifts indices.
    Lamplighter,
    /// `Z wr_C (C * D)` with `C = ⟨a₁…aₙ⟩`, `D = ⟨aₙ₊₁…aₘ⟩`, `D` acting trivially.
    WreathFreeProduct { c_rank: u32, total_rank: u32 },
}

impl Family {
    pub fn lehnert(primes: &[u64]) -> Result<Family, CoefficientError> {
        Ok(Family::Lehnert(PrimeBasis::new(primes.to_vec())?))
    }

    pub fn wreath(c_rank: u32, total_rank: u32) -> Result<Family, CoefficientError> {
        if c_rank == 0 || c_rank > total_rank {
            return Err(CoefficientError::BadFamily(format!(
                "wreath ranks need 1 <= n <= m, got {c_rank}/{total_rank}"
            )));
        }
        Ok(Family::WreathFreeProduct { c_rank, total_rank })
    }

    pub fn alphabet(&self) -> Alphabet {
        let rank = match self {
            Family::Lehnert(basis) => basis.len() as u32,
            Family::Lamplighter => 1,
            Family::WreathFreeProduct { total_rank, .. } => *total_rank,
        };
        Alphabet::new(rank).expect("family ranks are positive")
    }

    /// Rank of the group `C` permuting the indices of `B`, for wreath families.
    pub fn c_rank(&self) -> Option<u32> {
        match self {
            Family::Lehnert(_) => None,
            Family::Lamplighter => Some(1),
            Family::WreathFreeProduct { c_rank, .. } => Some(*c_rank),
        }
    }

    pub fn image_model(&self) -> PhiImageModel {
        match self {
            Family::Lehnert(basis) => PhiImageModel::ExponentVector {
                rank: basis.len() as u32,
            },
            _ => PhiImageModel::ProjectToC {
                c_rank: self.c_rank().unwrap(),
            },
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Lehnert(basis) => {
                let primes: Vec<String> = basis.primes().iter().map(u64::to_string).collect();
                write!(f, "lehnert:{}", primes.join(","))
            }
            Family::Lamplighter => f.write_str("lamplighter"),
            Family::WreathFreeProduct { c_rank, total_rank } => {
                write!(f, "wreath:{c_rank}/{total_rank}")
            }
        }
    }
}

impl FromStr for Family {
    type Err = CoefficientError;

    /// `lehnert:2,3`, `lamplighter` or `wreath:1/2`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || CoefficientError::BadFamily(format!("cannot parse family {s:?}"));
        let s = s.trim();
        if s == "lamplighter" {
            return Ok(Family::Lamplighter);
        }
        if let Some(list) = s.strip_prefix("lehnert:") {
            let primes = list
                .split(',')
                .map(|p| p.trim().parse::<u64>().map_err(|_| bad()))
                .collect::<Result<Vec<_>, _>>()?;
            return Family::lehnert(&primes);
        }
        if let Some(ranks) = s.strip_prefix("wreath:") {
            let (n, m) = ranks.split_once('/').ok_or_else(bad)?;
            let n = n.trim().parse().map_err(|_| bad())?;
            let m = m.trim().parse().map_err(|_| bad())?;
            return Family::wreath(n, m);
        }
        Err(bad())
    }
}

/// How `φ(w)` is computed for a family, up to equality in `Aut(B)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PhiImageModel {
    /// `φ(w)` is determined by the exponent-sum vector of `w`.
    ExponentVector { rank: u32 },
    /// `φ(w)` is determined by the projection `π(w) ∈ C`.
    ProjectToC { c_rank: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ImageValue {
    ExponentVector(Vec<i64>),
    CWord(Word),
}

impl ImageValue {
    pub fn is_identity(&self) -> bool {
        match self {
            ImageValue::ExponentVector(v) => v.iter().all(|&x| x == 0),
            ImageValue::CWord(w) => w.is_identity(),
        }
    }
}

impl fmt::Display for ImageValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ImageValue::ExponentVector(v) => {
                let parts: Vec<String> = v.iter().map(i64::to_string).collect();
                write!(f, "({})", parts.join(","))
            }
            ImageValue::CWord(w) => write!(f, "[{w}]"),
        }
    }
}

impl PhiImageModel {
    pub fn image(&self, w: &Word) -> ImageValue {
        match *self {
            PhiImageModel::ExponentVector { rank } => ImageValue::ExponentVector(
                (1..=rank)
                    .map(|i| w.expsum(crate::words::Letter::generator(i)))
                    .collect(),
            ),
            PhiImageModel::ProjectToC { c_rank } => {
                ImageValue::CWord(super::wreath::project_to_c(w, c_rank))
            }
        }
    }

    pub fn in_kernel(&self, w: &Word) -> bool {
        self.image(w).is_identity()
    }
}
