//! Boundary points of the Cayley tree as eventually periodic infinite words.
//!
//! A [`Ray`] stands for the geodesic ray from the identity spelling
//! `prefix · period · period · …`. Rays are kept in a canonical form so that
//! two rays compare equal exactly when they name the same boundary point:
//!
//! * the period is cyclically reduced and primitive (not a proper power);
//! * the prefix does not cancel against the period;
//! * the prefix is as short as possible, i.e. its last letter differs from
//!   the period's last letter. The period is then the rotation that starts
//!   right after the prefix.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::words::{parse_letters, Alphabet, EnumerationCap, Letter, Word, WordError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RayError {
    #[error("the period of a ray must be a nontrivial word")]
    EmptyPeriod,
    #[error("expected `<prefix> | <period>`: {0}")]
    Syntax(String),
    #[error("in the {part} of the ray: {source}")]
    Word {
        part: &'static str,
        #[source]
        source: WordError,
    },
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Ray {
    prefix: Word,
    period: Word,
}

impl Ray {
    /// Canonical ray for the infinite word `prefix · period^∞`, freely
    /// reduced at every junction.
    pub fn new(prefix: &Word, period: &Word) -> Result<Ray, RayError> {
        if period.is_empty() {
            return Err(RayError::EmptyPeriod);
        }

        // period = x · core · x⁻¹ gives period^∞ = x · core^∞
        let letters = period.letters();
        let mut strip = 0;
        while strip < letters.len() / 2
            && letters[strip].cancels(letters[letters.len() - 1 - strip])
        {
            strip += 1;
        }
        let conjugator = Word::reduce(letters[..strip].iter().copied());
        let mut core: Vec<Letter> = letters[strip..letters.len() - strip].to_vec();
        let mut head: Vec<Letter> = prefix.multiply(&conjugator).letters().to_vec();

        // cancellation between the head and the first period
        while let (Some(&last), Some(&first)) = (head.last(), core.first()) {
            if !last.cancels(first) {
                break;
            }
            head.pop();
            core.rotate_left(1);
        }

        let root = primitive_root_len(&core);
        core.truncate(root);

        // absorb letters of the head that already belong to the periodic tail
        while let (Some(&last), Some(&tail)) = (head.last(), core.last()) {
            if last != tail {
                break;
            }
            head.pop();
            core.rotate_right(1);
        }

        Ok(Ray {
            prefix: Word::reduce(head),
            period: Word::reduce(core),
        })
    }

    /// The ray `period^∞` starting at the identity.
    pub fn periodic(period: &Word) -> Result<Ray, RayError> {
        Ray::new(&Word::identity(), period)
    }

    /// Parses `prefix | period` and checks letters against `alphabet`.
    pub fn parse_in(alphabet: Alphabet, text: &str) -> Result<Ray, RayError> {
        let ray: Ray = text.parse()?;
        for (part, word) in [("prefix", &ray.prefix), ("period", &ray.period)] {
            alphabet
                .check(word)
                .map_err(|source| RayError::Word { part, source })?;
        }
        Ok(ray)
    }

    pub fn prefix(&self) -> &Word {
        &self.prefix
    }

    pub fn period(&self) -> &Word {
        &self.period
    }

    pub fn max_index(&self) -> u32 {
        self.prefix.max_index().max(self.period.max_index())
    }

    /// The `i`-th letter of the infinite word, counting from 0.
    pub fn letter_at(&self, i: usize) -> Letter {
        let p = self.prefix.letters();
        if i < p.len() {
            p[i]
        } else {
            let q = self.period.letters();
            q[(i - p.len()) % q.len()]
        }
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..).map(move |i| self.letter_at(i))
    }

    /// τ(l): the vertex at distance `l` along the ray.
    pub fn tau(&self, l: usize) -> Word {
        Word::reduce(self.letters().take(l))
    }

    /// Length of the common prefix of `w` and the infinite word.
    pub fn lcp(&self, w: &Word) -> usize {
        w.letters()
            .iter()
            .zip(self.letters())
            .take_while(|(x, y)| *x == y)
            .count()
    }

    /// True iff the word is eventually `t t t …`.
    pub fn eventually_only(&self, t: Letter) -> bool {
        self.period.letters() == [t]
    }

    /// Letters occurring infinitely often.
    pub fn infinite_letters(&self) -> BTreeSet<Letter> {
        self.period.letters().iter().copied().collect()
    }

    /// The boundary point `g · τ(∞)`, as a ray from the identity.
    pub fn translate(&self, g: &Word) -> Ray {
        // at most |g| letters cancel, so one full period survives
        let copies = g.len().div_ceil(self.period.len()) + 1;
        let unrolled = g
            .multiply(&self.prefix)
            .multiply(&self.period.pow(copies as i64));
        Ray::new(&unrolled, &self.period).expect("period is nonempty")
    }

    /// All canonical rays with `|prefix| <= max_prefix` and
    /// `|period| <= max_period`, sorted by period and then prefix.
    pub fn enumerate(
        alphabet: Alphabet,
        max_prefix: usize,
        max_period: usize,
        cap: EnumerationCap,
    ) -> Result<Vec<Ray>, crate::words::CapExceeded> {
        let prefixes = alphabet.ball_words(max_prefix, cap)?;
        let mut periods = Vec::new();
        for len in 1..=max_period {
            for q in alphabet.sphere(len, cap)? {
                let cyclic = len == 1 || !q.last().unwrap().cancels(q.first().unwrap());
                if cyclic && primitive_root_len(q.letters()) == len {
                    periods.push(q);
                }
            }
        }
        let mut rays = Vec::new();
        for q in &periods {
            for p in &prefixes {
                if let Some(last) = p.last() {
                    if last.cancels(q.first().unwrap()) || last == q.last().unwrap() {
                        continue;
                    }
                }
                rays.push(Ray {
                    prefix: p.clone(),
                    period: q.clone(),
                });
            }
        }
        Ok(rays)
    }
}

/// Smallest `d` with `letters` equal to a power of its first `d` letters.
fn primitive_root_len(letters: &[Letter]) -> usize {
    let n = letters.len();
    (1..=n)
        .find(|&d| n.is_multiple_of(d) && (d..n).all(|i| letters[i] == letters[i - d]))
        .unwrap_or(n)
}

impl fmt::Display for Ray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.prefix.is_empty() {
            write!(f, "| {}", self.period)
        } else {
            write!(f, "{} | {}", self.prefix, self.period)
        }
    }
}

impl FromStr for Ray {
    type Err = RayError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bar = s
            .find('|')
            .ok_or_else(|| RayError::Syntax(format!("no `|` in {s:?}")))?;
        if let Some(extra) = s[bar + 1..].find('|') {
            return Err(RayError::Syntax(format!(
                "second `|` at byte {}",
                bar + 1 + extra
            )));
        }
        let prefix = parse_letters(&s[..bar]).map_err(|source| RayError::Word {
            part: "prefix",
            source,
        })?;
        let period = parse_letters(&s[bar + 1..]).map_err(|source| RayError::Word {
            part: "period",
            source: shift_position(source, bar + 1),
        })?;
        Ray::new(&Word::reduce(prefix), &Word::reduce(period))
    }
}

fn shift_position(err: WordError, offset: usize) -> WordError {
    match err {
        WordError::BadToken { token, position } => WordError::BadToken {
            token,
            position: position + offset,
        },
        other => other,
    }
}
