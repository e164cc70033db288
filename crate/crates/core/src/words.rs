//! Freely reduced words in a finitely generated free group.
//!
//! Letters are written `a3` for the generator a₃ and `A3` for its inverse.
//! A [`Word`] is always freely reduced; the only way to build one is through
//! [`Word::reduce`] (or helpers that call it), so every value in circulation
//! is a vertex of the Cayley tree.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("alphabet rank must be at least 1")]
    ZeroRank,
    #[error("letter {letter} is outside the alphabet of rank {rank}")]
    LetterOutOfRange { letter: Letter, rank: u32 },
    #[error("bad token {token:?} at byte {position}: expected a letter like a1 or A1")]
    BadToken { token: String, position: usize },
}

/// Returned when an enumeration would exceed the configured word budget.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("ball of radius {radius} in rank {rank} has {size} words, over the cap of {cap}")]
pub struct CapExceeded {
    pub rank: u32,
    pub radius: usize,
    pub size: u128,
    pub cap: usize,
}

/// A free generator or its inverse.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Letter {
    index: u32,
    positive: bool,
}

impl Letter {
    /// # Panics
    /// If `index` is zero; generators are numbered from 1.
    pub fn new(index: u32, positive: bool) -> Letter {
        assert!(index >= 1, "generator indices start at 1");
        Letter { index, positive }
    }

    pub fn generator(index: u32) -> Letter {
        Letter::new(index, true)
    }

    pub fn generator_inverse(index: u32) -> Letter {
        Letter::new(index, false)
    }

    pub fn index(self) -> u32 {
        self.index
    }

    pub fn is_positive(self) -> bool {
        self.positive
    }

    /// +1 for a generator, -1 for an inverse generator.
    pub fn sign(self) -> i64 {
        if self.positive {
            1
        } else {
            -1
        }
    }

    pub fn inverse(self) -> Letter {
        Letter {
            index: self.index,
            positive: !self.positive,
        }
    }

    pub fn cancels(self, other: Letter) -> bool {
        self.index == other.index && self.positive != other.positive
    }
}

// a1 < A1 < a2 < A2 < ...
impl Ord for Letter {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.index, !self.positive).cmp(&(other.index, !other.positive))
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let head = if self.positive { 'a' } else { 'A' };
        write!(f, "{}{}", head, self.index)
    }
}

impl FromStr for Letter {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_token(s, 0)
    }
}

fn parse_token(token: &str, position: usize) -> Result<Letter, WordError> {
    let bad = || WordError::BadToken {
        token: token.to_string(),
        position,
    };
    let positive = match token.as_bytes().first() {
        Some(b'a') => true,
        Some(b'A') => false,
        _ => return Err(bad()),
    };
    let digits = &token[1..];
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    match digits.parse::<u32>() {
        Ok(index) if index >= 1 => Ok(Letter::new(index, positive)),
        _ => Err(bad()),
    }
}

/// Splits `text` on whitespace and parses each token as a letter. Positions
/// in errors are byte offsets into `text`.
pub fn parse_letters(text: &str) -> Result<Vec<Letter>, WordError> {
    let mut letters = Vec::new();
    let mut rest = text;
    let mut offset = 0;
    while let Some(start) = rest.find(|c: char| !c.is_whitespace()) {
        let tail = &rest[start..];
        let len = tail.find(char::is_whitespace).unwrap_or(tail.len());
        letters.push(parse_token(&tail[..len], offset + start)?);
        offset += start + len;
        rest = &tail[len..];
    }
    Ok(letters)
}

/// A freely reduced word. The empty word is the identity.
///
/// Ordering is shortlex: shorter words first, then lexicographic with
/// `a1 < A1 < a2 < A2 < ...`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn identity() -> Word {
        Word(Vec::new())
    }

    /// Free reduction with a stack: each incoming letter either cancels the
    /// top of the stack or is pushed.
    pub fn reduce<I: IntoIterator<Item = Letter>>(raw: I) -> Word {
        let mut stack: Vec<Letter> = Vec::new();
        for letter in raw {
            match stack.last() {
                Some(&top) if top.cancels(letter) => {
                    stack.pop();
                }
                _ => stack.push(letter),
            }
        }
        Word(stack)
    }

    pub fn letter(letter: Letter) -> Word {
        Word(vec![letter])
    }

    /// `letter^exponent`, with negative exponents meaning powers of the inverse.
    pub fn letter_power(letter: Letter, exponent: i64) -> Word {
        let l = if exponent >= 0 {
            letter
        } else {
            letter.inverse()
        };
        Word(vec![l; exponent.unsigned_abs() as usize])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Option<Letter> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.0.last().copied()
    }

    /// Largest generator index used, 0 for the identity.
    pub fn max_index(&self) -> u32 {
        self.0.iter().map(|l| l.index()).max().unwrap_or(0)
    }

    pub fn multiply(&self, other: &Word) -> Word {
        // only the junction can cancel
        let common = self
            .0
            .iter()
            .rev()
            .zip(other.0.iter())
            .take_while(|(x, y)| x.cancels(**y))
            .count();
        let mut letters = Vec::with_capacity(self.len() + other.len() - 2 * common);
        letters.extend_from_slice(&self.0[..self.len() - common]);
        letters.extend_from_slice(&other.0[common..]);
        Word(letters)
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn pow(&self, exponent: i64) -> Word {
        let base = if exponent >= 0 {
            self.clone()
        } else {
            self.inverse()
        };
        (0..exponent.unsigned_abs()).fold(Word::identity(), |acc, _| acc.multiply(&base))
    }

    /// Length of the longest common prefix.
    pub fn lcp(&self, other: &Word) -> usize {
        self.0
            .iter()
            .zip(other.0.iter())
            .take_while(|(x, y)| x == y)
            .count()
    }

    /// Path distance in the Cayley tree, `|u⁻¹v|`.
    pub fn distance(&self, other: &Word) -> usize {
        self.len() + other.len() - 2 * self.lcp(other)
    }

    /// Exponent sum of `t`'s generator, negated when `t` is an inverse letter.
    pub fn expsum(&self, t: Letter) -> i64 {
        let raw: i64 = self
            .0
            .iter()
            .filter(|l| l.index() == t.index())
            .map(|l| l.sign())
            .sum();
        raw * t.sign()
    }

    pub fn prefix(&self, len: usize) -> Word {
        Word(self.0[..len.min(self.len())].to_vec())
    }

    /// Appends a letter that is known not to cancel. Used by enumeration.
    fn pushed(&self, letter: Letter) -> Word {
        let mut letters = self.0.clone();
        letters.push(letter);
        Word(letters)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, letter) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{letter}")?;
        }
        Ok(())
    }
}

/// Parses without an alphabet bound; use [`Alphabet::parse`] to also check
/// generator indices.
impl FromStr for Word {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(Word::reduce(parse_letters(s)?))
    }
}

impl std::ops::Mul for &Word {
    type Output = Word;

    fn mul(self, rhs: &Word) -> Word {
        self.multiply(rhs)
    }
}

/// Maximum number of words an enumeration may produce.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationCap {
    pub max_words: usize,
}

impl EnumerationCap {
    /// Size of the radius-8 ball in F₂.
    pub const DEFAULT_MAX_WORDS: usize = 13_121;

    pub fn new(max_words: usize) -> EnumerationCap {
        EnumerationCap { max_words }
    }

    pub fn unlimited() -> EnumerationCap {
        EnumerationCap {
            max_words: usize::MAX,
        }
    }
}

impl Default for EnumerationCap {
    fn default() -> Self {
        EnumerationCap::new(Self::DEFAULT_MAX_WORDS)
    }
}

/// The free generators a₁…aₙ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    rank: u32,
}

impl Alphabet {
    pub fn new(rank: u32) -> Result<Alphabet, WordError> {
        if rank == 0 {
            return Err(WordError::ZeroRank);
        }
        Ok(Alphabet { rank })
    }

    pub fn rank(self) -> u32 {
        self.rank
    }

    /// All 2n letters in `a1, A1, a2, A2, ...` order.
    pub fn letters(self) -> impl Iterator<Item = Letter> + Clone {
        (1..=self.rank).flat_map(|i| [Letter::generator(i), Letter::generator_inverse(i)])
    }

    pub fn contains(self, letter: Letter) -> bool {
        letter.index() <= self.rank
    }

    pub fn check(self, word: &Word) -> Result<(), WordError> {
        match word.letters().iter().find(|l| !self.contains(**l)) {
            Some(&letter) => Err(WordError::LetterOutOfRange {
                letter,
                rank: self.rank,
            }),
            None => Ok(()),
        }
    }

    /// Validates every letter, then reduces.
    pub fn reduce(self, raw: &[Letter]) -> Result<Word, WordError> {
        if let Some(&letter) = raw.iter().find(|l| !self.contains(**l)) {
            return Err(WordError::LetterOutOfRange {
                letter,
                rank: self.rank,
            });
        }
        Ok(Word::reduce(raw.iter().copied()))
    }

    pub fn parse(self, text: &str) -> Result<Word, WordError> {
        self.reduce(&parse_letters(text)?)
    }

    /// Number of words of length exactly `radius`: `2n(2n-1)^(r-1)`.
    pub fn sphere_size(self, radius: usize) -> u128 {
        if radius == 0 {
            return 1;
        }
        let n = self.rank as u128;
        let mut size = 2 * n;
        for _ in 1..radius {
            size = size.saturating_mul(2 * n - 1);
        }
        size
    }

    pub fn ball_size(self, radius: usize) -> u128 {
        (0..=radius).fold(0u128, |acc, r| acc.saturating_add(self.sphere_size(r)))
    }

    pub fn check_cap(self, radius: usize, cap: EnumerationCap) -> Result<(), CapExceeded> {
        let size = self.ball_size(radius);
        if size > cap.max_words as u128 {
            return Err(CapExceeded {
                rank: self.rank,
                radius,
                size,
                cap: cap.max_words,
            });
        }
        Ok(())
    }

    /// Words of length exactly `radius`, in shortlex order.
    pub fn sphere(self, radius: usize, cap: EnumerationCap) -> Result<Vec<Word>, CapExceeded> {
        self.check_cap(radius, cap)?;
        let mut layer = vec![Word::identity()];
        for _ in 0..radius {
            layer = self.grow(&layer);
        }
        Ok(layer)
    }

    /// Words of length at most `radius`, in shortlex order.
    pub fn ball_words(self, radius: usize, cap: EnumerationCap) -> Result<Vec<Word>, CapExceeded> {
        self.check_cap(radius, cap)?;
        let mut all = vec![Word::identity()];
        let mut layer = vec![Word::identity()];
        for _ in 0..radius {
            layer = self.grow(&layer);
            all.extend(layer.iter().cloned());
        }
        Ok(all)
    }

    /// `{ w : distance(center, w) <= radius }`.
    pub fn ball(
        self,
        center: &Word,
        radius: usize,
        cap: EnumerationCap,
    ) -> Result<BTreeSet<Word>, CapExceeded> {
        Ok(self
            .ball_words(radius, cap)?
            .iter()
            .map(|w| center.multiply(w))
            .collect())
    }

    // shortlex order is preserved because letters are tried in order and
    // the previous layer is already sorted
    fn grow(self, layer: &[Word]) -> Vec<Word> {
        let mut next = Vec::with_capacity(layer.len() * (2 * self.rank as usize));
        for word in layer {
            for letter in self.letters() {
                if word.last().is_some_and(|last| last.cancels(letter)) {
                    continue;
                }
                next.push(word.pushed(letter));
            }
        }
        next
    }
}
