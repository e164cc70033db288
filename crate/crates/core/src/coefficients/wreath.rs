//! `B = ⊕_{ω ∈ C} Z`, permuted by left multiplication through `π: A → C`.
//!
//! The lamplighter `Z wr Z` is the case `C = A = ⟨a₁⟩`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::horoball::{horoball_vertices, in_horoball, HoroballQuery};
use crate::words::{Alphabet, CapExceeded, EnumerationCap, Letter, Word};

use super::CoefficientError;

/// A finitely supported integer vector indexed by words of `C`. Zero entries
/// are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SupportVector {
    entries: BTreeMap<Word, BigInt>,
}

impl SupportVector {
    pub fn zero() -> SupportVector {
        SupportVector::default()
    }

    /// The basis vector `δ_ω`.
    pub fn delta(index: Word) -> SupportVector {
        SupportVector::from_entries([(index, BigInt::one())])
    }

    pub fn from_entries<I: IntoIterator<Item = (Word, BigInt)>>(entries: I) -> SupportVector {
        let mut v = SupportVector::zero();
        for (index, value) in entries {
            v.add_at(index, value);
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entry(&self, index: &Word) -> BigInt {
        self.entries.get(index).cloned().unwrap_or_default()
    }

    pub fn is_trivial_at(&self, index: &Word) -> bool {
        !self.entries.contains_key(index)
    }

    pub fn support(&self) -> impl Iterator<Item = &Word> {
        self.entries.keys()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Word, &BigInt)> {
        self.entries.iter()
    }

    fn add_at(&mut self, index: Word, value: BigInt) {
        let slot = self.entries.entry(index).or_default();
        *slot += value;
        if slot.is_zero() {
            self.entries.retain(|_, v| !v.is_zero());
        }
    }

    pub fn scaled(&self, factor: &BigInt) -> SupportVector {
        SupportVector::from_entries(self.entries.iter().map(|(k, v)| (k.clone(), v * factor)))
    }
}

impl std::ops::Add for &SupportVector {
    type Output = SupportVector;

    fn add(self, rhs: &SupportVector) -> SupportVector {
        let mut out = self.clone();
        for (k, v) in &rhs.entries {
            out.add_at(k.clone(), v.clone());
        }
        out
    }
}

impl fmt::Display for SupportVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return f.write_str("0");
        }
        for (i, (k, v)) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{v}·δ[{k}]")?;
        }
        Ok(())
    }
}

/// `π: A → C`: delete letters outside `a₁…a_{c_rank}`, then reduce.
pub fn project_to_c(a: &Word, c_rank: u32) -> Word {
    Word::reduce(a.letters().iter().copied().filter(|l| l.index() <= c_rank))
}

/// Moves the entry at `ω` to `π(a)·ω`.
pub fn act_wreath(a: &Word, b: &SupportVector, c_rank: u32) -> SupportVector {
    let shift = project_to_c(a, c_rank);
    if shift.is_identity() {
        return b.clone();
    }
    SupportVector::from_entries(b.iter().map(|(k, v)| (shift.multiply(k), v.clone())))
}

/// `I(S)`: every index where some element of `S` is nonzero.
pub fn index_set(s: &[SupportVector]) -> BTreeSet<Word> {
    s.iter().flat_map(|v| v.support().cloned()).collect()
}

/// `R(S)`: the longest index in `I(S)`, 0 when `S` has no support.
pub fn support_radius(s: &[SupportVector]) -> usize {
    index_set(s).iter().map(Word::len).max().unwrap_or(0)
}

/// An index `ψ ∈ C` at which every `φ_a(s)`, `s ∈ S`, `a ∈ A_k(τ)`, vanishes,
/// for a ray `τ` spelled in the letters of `C`.
///
/// The nonzero indices of those elements lie in the `R(S)`-neighbourhood of
/// `C_k(τ)`, which is `C_{k-R(S)}(τ)`. Stepping away from the ray along a
/// letter `s` with `s ≠ τ(1)` gives `ψ = s^m` with Busemann value `m`, outside
/// that set once `m > R(S) - k`.
pub fn nongeneration_witness(
    s: &[SupportVector],
    q: &HoroballQuery,
    c_rank: u32,
) -> Result<Word, CoefficientError> {
    if q.ray.max_index() > c_rank {
        return Err(CoefficientError::NotACRay(q.ray.to_string()));
    }
    let first = q.ray.letter_at(0);
    let step = Alphabet::new(c_rank)
        .expect("positive rank")
        .letters()
        .find(|&l| l != first)
        .expect("C has at least two letters");
    let radius = support_radius(s) as i64;
    let m = (radius - q.k + 1).max(0);
    let psi = Word::letter_power(step, m);
    debug_assert!(!in_horoball(
        &psi,
        &HoroballQuery::new(q.ray.clone(), q.k - radius)
    ));
    Ok(psi)
}

/// Checks directly that every `φ_a(s)` with `s ∈ S` and `a` a horoball vertex
/// within `radius` of the identity is zero at `psi`.
pub fn witness_holds(
    s: &[SupportVector],
    q: &HoroballQuery,
    psi: &Word,
    alphabet: Alphabet,
    c_rank: u32,
    radius: usize,
    cap: EnumerationCap,
) -> Result<bool, CapExceeded> {
    let vertices = horoball_vertices(alphabet, q, radius, cap)?;
    Ok(vertices.iter().all(|a| {
        s.iter()
            .all(|x| act_wreath(a, x, c_rank).is_trivial_at(psi))
    }))
}

/// The letters of `C` and their inverses, in alphabet order.
pub fn c_letters(c_rank: u32) -> impl Iterator<Item = Letter> {
    Alphabet::new(c_rank).expect("positive rank").letters()
}
