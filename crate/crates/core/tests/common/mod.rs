#![allow(dead_code)]

use sigma_tree::{Alphabet, EnumerationCap, Family, Ray, Word};

/// Canonical rays over F₂ used across the integration suites: single-letter
/// periods with and without prefixes, mixed periods up to length 3, and a
/// few commutator periods.
pub const CORPUS: &[&str] = &[
    "| a1",
    "| A1",
    "| a2",
    "| A2",
    "a2 | A1",
    "a2 a2 | a1",
    "A2 | a1",
    "a1 | a2",
    "A1 A2 | A1",
    "a2 a1 | A2",
    "| a1 a2",
    "| a1 A2",
    "| A1 a2",
    "| a2 a1",
    "A2 | a1 a2",
    "a2 | a1 A2",
    "A2 a1 | a1 a2",
    "| a1 a1 a2",
    "| a1 a2 a2",
    "A1 | a2 a2 a1",
    "a1 A2 | A2 A1",
    "| A1 a2 a2",
];

pub const COMMUTATORS: &[&str] = &[
    "| a1 a2 A1 A2",
    "| a1 A2 A1 a2",
    "| a2 a1 A2 A1",
    "a2 | a1 a2 A1 A2",
];

/// Rays spelled entirely in `C = ⟨a₁⟩`.
pub const C_RAYS: &[&str] = &["| a1", "| A1"];

pub fn ray(text: &str) -> Ray {
    let r: Ray = text.parse().unwrap_or_else(|e| panic!("{text}: {e}"));
    assert_eq!(r.to_string(), text, "corpus entry is not canonical");
    r
}

pub fn corpus() -> Vec<Ray> {
    CORPUS.iter().map(|s| ray(s)).collect()
}

pub fn corpus_with_commutators() -> Vec<Ray> {
    CORPUS.iter().chain(COMMUTATORS).map(|s| ray(s)).collect()
}

pub fn c_rays() -> Vec<Ray> {
    C_RAYS.iter().map(|s| ray(s)).collect()
}

pub fn f2() -> Alphabet {
    Alphabet::new(2).unwrap()
}

pub fn ball(rank: u32, radius: usize) -> Vec<Word> {
    Alphabet::new(rank)
        .unwrap()
        .ball_words(radius, EnumerationCap::unlimited())
        .unwrap()
}

pub fn family(text: &str) -> Family {
    text.parse().unwrap()
}

/// The infinite word `prefix · period^∞` read letter by letter, computed by
/// brute-force reduction of a long finite word.
pub fn naive_letters(prefix: &Word, period: &Word, n: usize) -> Vec<sigma_tree::Letter> {
    let mut letters = prefix.letters().to_vec();
    for _ in 0..(2 * n + prefix.len() + 4) {
        letters.extend_from_slice(period.letters());
    }
    let reduced = Word::reduce(letters);
    reduced.letters()[..n].to_vec()
}
