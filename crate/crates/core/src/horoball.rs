//! Horoball vertex sets `A_k(τ) = ⋃_{l ≥ max(0,k)} Ball_{l-k}(τ(l))`.
//!
//! Membership has a closed form in a tree. Writing `L` for the common prefix
//! length of `w` and `τ`, the distance from `w` to `τ(l)` is
//! `|w| + l - 2·min(L, l)`, so `w ∈ Ball_{l-k}(τ(l))` reduces to
//! `|w| - 2·min(L, l) <= -k`. Taking `l >= L` is never worse, which leaves
//!
//! ```text
//! w ∈ A_k(τ)  ⟺  2·L - |w| >= k
//! ```
//!
//! [`in_horoball_oracle`] evaluates the union of balls literally and is kept
//! as the reference the closed form is tested against.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::rays::Ray;
use crate::words::{Alphabet, CapExceeded, EnumerationCap, Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HoroballError {
    #[error(transparent)]
    Cap(#[from] CapExceeded),
    #[error("no vertex of A_{k} lies within radius {radius} of the identity")]
    EmptyWindow { k: i64, radius: usize },
}

/// The horoball `A_k(τ)` for an integer parameter `k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HoroballQuery {
    pub ray: Ray,
    pub k: i64,
}

impl HoroballQuery {
    pub fn new(ray: Ray, k: i64) -> HoroballQuery {
        HoroballQuery { ray, k }
    }
}

/// `|w| - 2·lcp(w, τ)`, the Busemann function of the ray at `w`.
pub fn busemann(w: &Word, ray: &Ray) -> i64 {
    w.len() as i64 - 2 * ray.lcp(w) as i64
}

/// Membership straight from the union of balls.
pub fn in_horoball_oracle(w: &Word, q: &HoroballQuery) -> bool {
    let len = w.len() as i64;
    let start = q.k.max(0);
    // d(w, τ(l)) - (l - k) stops changing once l passes lcp(w, τ) <= |w|,
    // so radii beyond max(|w|, k, 0) add nothing.
    let stop = len.max(q.k).max(0);
    (start..=stop).any(|l| {
        let centre = q.ray.tau(l as usize);
        w.distance(&centre) as i64 <= l - q.k
    })
}

/// Closed-form membership, `2·lcp(w, τ) - |w| >= k`.
pub fn in_horoball(w: &Word, q: &HoroballQuery) -> bool {
    -busemann(w, &q.ray) >= q.k
}

/// Vertices of `A_k(τ)` within distance `radius` of the identity.
pub fn horoball_vertices(
    alphabet: Alphabet,
    q: &HoroballQuery,
    radius: usize,
    cap: EnumerationCap,
) -> Result<BTreeSet<Word>, CapExceeded> {
    Ok(alphabet
        .ball_words(radius, cap)?
        .into_iter()
        .filter(|w| in_horoball(w, q))
        .collect())
}

/// The vertex `τ(j) · t^(j-k)`, which lies in `A_k(τ)` for `j >= max(0, k)`
/// and carries the largest `expsum_t` in `Ball_{j-k}(τ(j))`.
pub fn climbing_vertex(ray: &Ray, t: Letter, k: i64, j: usize) -> Word {
    debug_assert!(j as i64 >= k.max(0));
    ray.tau(j).multiply(&Word::letter_power(t, j as i64 - k))
}

/// Supremum of `expsum_t` over `A_k(τ)` when the ray eventually reads only
/// `t⁻¹`: with `N` the canonical prefix length, it is
/// `expsum_t(τ(N)) + N - k`. `None` when the set is unbounded above.
pub fn expsum_upper_bound(t: Letter, q: &HoroballQuery) -> Option<i64> {
    if !q.ray.eventually_only(t.inverse()) {
        return None;
    }
    let prefix = q.ray.prefix();
    Some(prefix.expsum(t) + prefix.len() as i64 - q.k)
}

/// Exponent sums of `t` observed on a finite window of a horoball.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpSumRange {
    pub letter: Letter,
    pub k: i64,
    pub radius: usize,
    pub observed_min: i64,
    pub observed_max: i64,
    /// Every value seen, for the contiguity check.
    pub observed: BTreeSet<i64>,
    /// Decided from the ray's period, not from the window.
    pub bounded_above: bool,
    pub upper_bound: Option<i64>,
}

impl ExpSumRange {
    /// Whether the observed values fill `[observed_min, observed_max]`.
    pub fn is_contiguous(&self) -> bool {
        self.observed.len() as i64 == self.observed_max - self.observed_min + 1
    }
}

pub fn expsum_range(
    alphabet: Alphabet,
    t: Letter,
    q: &HoroballQuery,
    radius: usize,
    cap: EnumerationCap,
) -> Result<ExpSumRange, HoroballError> {
    let observed: BTreeSet<i64> = horoball_vertices(alphabet, q, radius, cap)?
        .iter()
        .map(|v| v.expsum(t))
        .collect();
    let (Some(&observed_min), Some(&observed_max)) = (observed.first(), observed.last()) else {
        return Err(HoroballError::EmptyWindow { k: q.k, radius });
    };
    let upper_bound = expsum_upper_bound(t, q);
    Ok(ExpSumRange {
        letter: t,
        k: q.k,
        radius,
        observed_min,
        observed_max,
        observed,
        bounded_above: upper_bound.is_some(),
        upper_bound,
    })
}
