//! `B = Z[1/(p₁…pₙ)]` with `aᵢ` acting by multiplication by `1/pᵢ`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::horoball::{expsum_upper_bound, HoroballQuery};
use crate::words::{Letter, Word};

use super::CoefficientError;

/// Distinct primes `p₁…pₙ`, one per free generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PrimeBasis {
    primes: Vec<u64>,
}

fn is_prime(p: u64) -> bool {
    p >= 2
        && (2..)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}

impl PrimeBasis {
    pub fn new(primes: Vec<u64>) -> Result<PrimeBasis, CoefficientError> {
        if primes.is_empty() {
            return Err(CoefficientError::BadFamily("no primes given".into()));
        }
        if let Some(&p) = primes.iter().find(|&&p| !is_prime(p)) {
            return Err(CoefficientError::BadFamily(format!("{p} is not prime")));
        }
        for (i, p) in primes.iter().enumerate() {
            if primes[..i].contains(p) {
                return Err(CoefficientError::BadFamily(format!("prime {p} repeated")));
            }
        }
        Ok(PrimeBasis { primes })
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    /// Strips every basis prime from `n`.
    fn coprime_part(&self, n: &BigInt) -> BigInt {
        let mut rest = n.abs();
        if rest.is_zero() {
            return rest;
        }
        for &p in &self.primes {
            let p = BigInt::from(p);
            while (&rest % &p).is_zero() {
                rest /= &p;
            }
        }
        rest
    }
}

/// `p`-adic valuation of a nonzero integer.
fn valuation(n: &BigInt, p: u64) -> i64 {
    let p = BigInt::from(p);
    let mut rest = n.clone();
    let mut v = 0;
    while !rest.is_zero() && (&rest % &p).is_zero() {
        rest /= &p;
        v += 1;
    }
    v
}

/// An element of `Z[1/(p₁…pₙ)]`, kept in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PRational(BigRational);

impl PRational {
    pub fn new(value: BigRational, basis: &PrimeBasis) -> Result<PRational, CoefficientError> {
        if !basis.coprime_part(value.denom()).is_one() {
            return Err(CoefficientError::NotInRing(value.to_string()));
        }
        Ok(PRational(value))
    }

    pub fn integer(n: i64) -> PRational {
        PRational(BigRational::from_integer(n.into()))
    }

    /// `numerator / ∏ pᵢ^eᵢ`.
    pub fn from_parts(numerator: i64, exponents: &[u32], basis: &PrimeBasis) -> PRational {
        let den = basis
            .primes()
            .iter()
            .zip(exponents)
            .fold(BigInt::one(), |acc, (&p, &e)| acc * BigInt::from(p).pow(e));
        PRational(BigRational::new(numerator.into(), den))
    }

    pub fn parse(text: &str, basis: &PrimeBasis) -> Result<PRational, CoefficientError> {
        let value = BigRational::from_str(text.trim())
            .map_err(|_| CoefficientError::NotInRing(text.to_string()))?;
        PRational::new(value, basis)
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }

    pub fn numerator(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Exponent of each `pᵢ` in the reduced denominator.
    pub fn denominator_exponents(&self, basis: &PrimeBasis) -> Vec<u32> {
        basis
            .primes()
            .iter()
            .map(|&p| valuation(self.0.denom(), p) as u32)
            .collect()
    }

    /// `pᵢ`-adic valuation; `None` for zero.
    pub fn valuation(&self, p: u64) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        Some(valuation(self.0.numer(), p) - valuation(self.0.denom(), p))
    }

    /// Whether `self` lies in the cyclic group generated by `generator`.
    pub fn is_multiple_of(&self, generator: &PRational) -> bool {
        if generator.is_zero() {
            return self.is_zero();
        }
        (&self.0 / &generator.0).is_integer()
    }
}

impl std::ops::Add for &PRational {
    type Output = PRational;

    fn add(self, rhs: &PRational) -> PRational {
        PRational(&self.0 + &rhs.0)
    }
}

impl std::ops::Sub for &PRational {
    type Output = PRational;

    fn sub(self, rhs: &PRational) -> PRational {
        PRational(&self.0 - &rhs.0)
    }
}

impl fmt::Display for PRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// `x · ∏ pᵢ^(-expsum_{aᵢ}(a))`.
pub fn act_lehnert(a: &Word, x: &PRational, basis: &PrimeBasis) -> PRational {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for (i, &p) in basis.primes().iter().enumerate() {
        let e = a.expsum(Letter::generator(i as u32 + 1));
        let factor = BigInt::from(p).pow(e.unsigned_abs() as u32);
        if e > 0 {
            den *= factor;
        } else {
            num *= factor;
        }
    }
    PRational(&x.0 * BigRational::new(num, den))
}

/// Generator of the cyclic subgroup `⟨gens⟩ ≤ Q`: the gcd of the fractions,
/// always taken nonnegative.
pub fn generated_subgroup(gens: &[PRational]) -> Result<PRational, CoefficientError> {
    if gens.is_empty() {
        return Err(CoefficientError::EmptyGeneratingSet);
    }
    let common = gens
        .iter()
        .fold(BigInt::one(), |acc, g| acc.lcm(g.0.denom()));
    let scaled_gcd = gens.iter().fold(BigInt::zero(), |acc, g| {
        acc.gcd(&(g.0.numer() * (&common / g.0.denom())))
    });
    Ok(PRational(BigRational::new(scaled_gcd, common)))
}

/// Outcome of asking whether `S` generates `B` over a horoball `A_k(τ)`,
/// i.e. whether `{ φ_a(s) : s ∈ S, a ∈ A_k(τ) }` generates `Z[1/(p₁…pₙ)]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LehnertGeneration {
    Generated,
    /// `S` is empty or zero.
    Trivial,
    /// Every generated element is a multiple of `factor`, which is coprime to
    /// the basis and not a unit.
    ExtraFactor {
        factor: BigInt,
    },
    /// `expsum_{aᵢ}` is bounded above on the horoball, so no generated element
    /// has more than `max_exponent` factors of `pᵢ` in its denominator.
    BoundedDenominator {
        generator: u32,
        max_exponent: i64,
    },
}

impl LehnertGeneration {
    pub fn is_generated(&self) -> bool {
        matches!(self, LehnertGeneration::Generated)
    }
}

/// Decides generation over `A_k(τ)` structurally. Conjugating `s` by `a`
/// divides by `pᵢ^expsum_{aᵢ}(a)`, so `pᵢ`-denominators are unbounded exactly
/// when `expsum_{aᵢ}` is unbounded above on the horoball, which fails only
/// for rays eventually reading `aᵢ⁻¹` forever.
pub fn fg_over_lehnert(
    s: &[PRational],
    q: &HoroballQuery,
    basis: &PrimeBasis,
) -> LehnertGeneration {
    let nonzero: Vec<&PRational> = s.iter().filter(|x| !x.is_zero()).collect();
    if nonzero.is_empty() {
        return LehnertGeneration::Trivial;
    }
    for (i, &p) in basis.primes().iter().enumerate() {
        let generator = i as u32 + 1;
        if let Some(bound) = expsum_upper_bound(Letter::generator(generator), q) {
            let worst = nonzero
                .iter()
                .map(|x| -x.valuation(p).unwrap())
                .max()
                .unwrap();
            return LehnertGeneration::BoundedDenominator {
                generator,
                max_exponent: worst + bound,
            };
        }
    }
    let owned: Vec<PRational> = nonzero.into_iter().cloned().collect();
    let gcd = generated_subgroup(&owned).expect("nonempty");
    let factor = basis.coprime_part(gcd.numerator());
    if !factor.is_one() {
        return LehnertGeneration::ExtraFactor { factor };
    }
    LehnertGeneration::Generated
}
