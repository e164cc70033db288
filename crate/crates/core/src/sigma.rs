//! Deciding whether a boundary point lies in `Σ¹(ρ)`.
//!
//! Every decision carries a [`Certificate`]: plain data naming the criterion
//! that fired and the witnesses it used, so that a verdict can be checked
//! again without trusting this module.
//!
//! Inclusion criteria (all hold for every `k >= 0`):
//!
//! * [`Criterion::KernelSubwords`]: the ray contains infinitely many disjoint
//!   subwords acting trivially on `B`.
//! * [`Criterion::ImageSurjective`]: `φ(A_k(τ)) = φ(A)` for all `k >= 0`.
//! * [`Criterion::Generation`]: a finite `S` generates `B` over every
//!   horoball `A_k(τ)`.
//!
//! Exclusion criteria (all hold for every `k <= 0`):
//!
//! * [`Criterion::BoundedExpsum`]: `B` needs unbounded `expsum_t` and the ray
//!   eventually reads only `t⁻¹`.
//! * [`Criterion::FamilyWitness`]: for the wreath families, an index `ψ` at
//!   which every conjugate of `S` over the horoball vanishes.

use std::fmt;

use thiserror::Error;

use crate::coefficients::{
    nongeneration_witness, Family, ImageValue, PRational, PhiImageModel, SupportVector,
};
use crate::horoball::{expsum_upper_bound, HoroballQuery};
use crate::rays::Ray;
use crate::words::{CapExceeded, EnumerationCap, Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SigmaError {
    #[error("ray {ray} uses generators beyond rank {rank} of family {family}")]
    AlphabetMismatch {
        ray: String,
        family: String,
        rank: u32,
    },
    #[error("criteria disagree on {0}: both an inclusion and an exclusion certificate fired")]
    Contradiction(String),
    #[error(transparent)]
    Cap(#[from] CapExceeded),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Criterion {
    Generation,
    ImageSurjective,
    KernelSubwords,
    BoundedExpsum,
    FamilyWitness,
}

impl Criterion {
    pub fn name(self) -> &'static str {
        match self {
            Criterion::Generation => "Thm2_Generation",
            Criterion::ImageSurjective => "Cor_ImageSurjective",
            Criterion::KernelSubwords => "Thm_KernelSubwords",
            Criterion::BoundedExpsum => "Cor_BoundedExpsum",
            Criterion::FamilyWitness => "Family_Witness",
        }
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Position in the infinite word of a letter other than `t⁻¹`, one per
/// period; it drives `expsum_t` up without bound on every horoball.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Climb {
    pub letter: Letter,
    pub position: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// `generating_set` generates `B` over every `A_k(τ)`, `k >= 0`: for each
    /// generator `aᵢ` the ray reads a letter other than `aᵢ⁻¹` once per period.
    Generation {
        generating_set: Vec<PRational>,
        climbs: Vec<Climb>,
    },
    /// Generator `a_generator` occurs with both signs in the period, at the
    /// given positions of the infinite word.
    ImageSurjective {
        generator: u32,
        positive_at: usize,
        negative_at: usize,
    },
    /// `subword` starts at `start` and again every `stride` letters; each
    /// occurrence lies in `ker φ` and the occurrences are disjoint.
    KernelSubwords {
        subword: Word,
        start: usize,
        stride: usize,
    },
    /// `expsum_t` is at most `upper_bound` on `A_k(τ)`.
    BoundedExpsum {
        letter: Letter,
        k: i64,
        upper_bound: i64,
    },
    /// `translation · ray = c_ray` is spelled in `C`; with `S = generating_set`
    /// and `R = R(S)`, every `φ_a(s)` for `a ∈ A_k(c_ray)` vanishes at `psi`.
    FamilyWitness {
        translation: Word,
        c_ray: Ray,
        k: i64,
        generating_set: Vec<SupportVector>,
        support_radius: usize,
        psi: Word,
    },
}

impl Certificate {
    pub fn criterion(&self) -> Criterion {
        match self {
            Certificate::Generation { .. } => Criterion::Generation,
            Certificate::ImageSurjective { .. } => Criterion::ImageSurjective,
            Certificate::KernelSubwords { .. } => Criterion::KernelSubwords,
            Certificate::BoundedExpsum { .. } => Criterion::BoundedExpsum,
            Certificate::FamilyWitness { .. } => Criterion::FamilyWitness,
        }
    }

    fn fields(&self) -> Vec<String> {
        match self {
            Certificate::Generation {
                generating_set,
                climbs,
            } => {
                let s: Vec<String> = generating_set.iter().map(|x| x.to_string()).collect();
                let c: Vec<String> = climbs
                    .iter()
                    .map(|c| format!("{}@{}", c.letter, c.position))
                    .collect();
                vec![
                    format!("S={}", s.join(",")),
                    format!("climb={}", c.join(",")),
                ]
            }
            Certificate::ImageSurjective {
                generator,
                positive_at,
                negative_at,
            } => vec![
                format!("generator={}", Letter::generator(*generator)),
                format!("plus={positive_at}"),
                format!("minus={negative_at}"),
            ],
            Certificate::KernelSubwords {
                subword,
                start,
                stride,
            } => vec![
                format!("subword={subword}"),
                format!("start={start}"),
                format!("stride={stride}"),
            ],
            Certificate::BoundedExpsum {
                letter,
                k,
                upper_bound,
            } => vec![
                format!("letter={letter}"),
                format!("k={k}"),
                format!("bound={upper_bound}"),
            ],
            Certificate::FamilyWitness {
                translation,
                c_ray,
                k,
                generating_set,
                support_radius,
                psi,
            } => {
                let s: Vec<String> = generating_set.iter().map(|x| x.to_string()).collect();
                vec![
                    format!("g={translation}"),
                    format!("ray={c_ray}"),
                    format!("k={k}"),
                    format!("S={}", s.join(",")),
                    format!("R={support_radius}"),
                    format!("psi={psi}"),
                ]
            }
        }
    }

    pub fn explain(&self) -> String {
        match self {
            Certificate::Generation { climbs, .. } => {
                let letters: Vec<String> = climbs.iter().map(|c| c.letter.to_string()).collect();
                format!(
                    "exponent sums of {} are unbounded above on every horoball, so S generates B over each A_k",
                    letters.join(", ")
                )
            }
            Certificate::ImageSurjective { generator, .. } => format!(
                "{} occurs with both signs in the period, so every horoball maps onto the image of A",
                Letter::generator(*generator)
            ),
            Certificate::KernelSubwords {
                subword, stride, ..
            } => format!(
                "the subword {subword} acts trivially and recurs every {stride} letters"
            ),
            Certificate::BoundedExpsum {
                letter,
                k,
                upper_bound,
            } => format!(
                "the ray ends in {}^∞, so expsum_{letter} <= {upper_bound} on A_{k}, but B needs it unbounded",
                letter.inverse()
            ),
            Certificate::FamilyWitness { c_ray, k, psi, .. } => format!(
                "after translating to the C-ray {c_ray}, every conjugate over A_{k} vanishes at index [{psi}]"
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    In(Certificate),
    Out(Certificate),
    Unknown { attempted: Vec<Criterion> },
}

impl Verdict {
    pub fn status(&self) -> &'static str {
        match self {
            Verdict::In(_) => "In",
            Verdict::Out(_) => "Out",
            Verdict::Unknown { .. } => "Unknown",
        }
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            Verdict::In(c) | Verdict::Out(c) => Some(c),
            Verdict::Unknown { .. } => None,
        }
    }

    pub fn is_in(&self) -> bool {
        matches!(self, Verdict::In(_))
    }

    pub fn is_out(&self) -> bool {
        matches!(self, Verdict::Out(_))
    }

    /// `status;criterion;key=value;…`, one line.
    pub fn record(&self) -> String {
        match self {
            Verdict::In(c) | Verdict::Out(c) => {
                let mut parts = vec![self.status().to_string(), c.criterion().to_string()];
                parts.extend(c.fields());
                parts.join(";")
            }
            Verdict::Unknown { attempted } => {
                let names: Vec<&str> = attempted.iter().map(|c| c.name()).collect();
                format!("Unknown;none;attempted={}", names.join(","))
            }
        }
    }

    pub fn explain(&self) -> String {
        match self {
            Verdict::In(c) => format!("in Σ¹: {}", c.explain()),
            Verdict::Out(c) => format!("not in Σ¹: {}", c.explain()),
            Verdict::Unknown { attempted } => {
                let names: Vec<&str> = attempted.iter().map(|c| c.name()).collect();
                format!("undecided: none of {} applies", names.join(", "))
            }
        }
    }
}

/// Combines the outcome of the inclusion and exclusion criteria. Neither
/// firing is the gap between the two halves of the generation theorem.
pub fn decide(
    inclusion: Option<Certificate>,
    exclusion: Option<Certificate>,
    attempted: Vec<Criterion>,
    ray: &Ray,
) -> Result<Verdict, SigmaError> {
    match (inclusion, exclusion) {
        (Some(_), Some(_)) => Err(SigmaError::Contradiction(ray.to_string())),
        (Some(c), None) => Ok(Verdict::In(c)),
        (None, Some(c)) => Ok(Verdict::Out(c)),
        (None, None) => Ok(Verdict::Unknown { attempted }),
    }
}

/// Letters `t` for which generating `B` over a subset of `A` needs
/// arbitrarily large `expsum_t` on that subset.
pub fn required_unbounded_letters(family: &Family) -> Vec<Letter> {
    match family {
        // aᵢ divides by pᵢ; aᵢ⁻¹ only multiplies, which integers already cover
        Family::Lehnert(basis) => (1..=basis.len() as u32).map(Letter::generator).collect(),
        _ => crate::coefficients::wreath::c_letters(family.c_rank().unwrap()).collect(),
    }
}

pub fn excluded_by_bounded_expsum(family: &Family, ray: &Ray) -> Option<Certificate> {
    required_unbounded_letters(family)
        .into_iter()
        .find(|t| ray.eventually_only(t.inverse()))
        .map(|letter| {
            let q = HoroballQuery::new(ray.clone(), 0);
            Certificate::BoundedExpsum {
                letter,
                k: 0,
                upper_bound: expsum_upper_bound(letter, &q).expect("ray ends in t⁻¹"),
            }
        })
}

/// Two prefixes `τ(first)`, `τ(second)` with the same image under `φ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Recurrence {
    pub value: ImageValue,
    pub first: usize,
    pub second: usize,
}

/// Recurrence of `φ(τ(i))`. In the torsion-free image models a value comes
/// back exactly when the period acts trivially, and then it comes back once
/// per period.
pub fn kernel_recurrence(model: PhiImageModel, ray: &Ray) -> Option<Recurrence> {
    if !model.in_kernel(ray.period()) {
        return None;
    }
    let first = ray.prefix().len();
    Some(Recurrence {
        value: model.image(ray.prefix()),
        first,
        second: first + ray.period().len(),
    })
}

/// Shortest nonempty subword of the periodic tail lying in `ker φ`. Such a
/// subword recurs once per period, giving infinitely many disjoint kernel
/// subwords. When the period acts nontrivially, images of long subwords grow
/// linearly, so subwords longer than `|p|(2|p| + 3)` never qualify.
pub fn kernel_subword(model: PhiImageModel, ray: &Ray) -> Option<Certificate> {
    let p = ray.period().len();
    let base = ray.prefix().len();
    let max_len = p * (2 * p + 3);
    for len in 1..=max_len {
        for start in base..base + p {
            let subword = Word::reduce((start..start + len).map(|i| ray.letter_at(i)));
            if model.in_kernel(&subword) {
                return Some(Certificate::KernelSubwords {
                    subword,
                    start,
                    stride: p * len.div_ceil(p),
                });
            }
        }
    }
    None
}

/// For the exponent-vector image, `φ(A_k(τ)) = ⋃_{l >= max(0,k)}
/// (e(τ(l)) + ℓ¹-ball of radius l - k)`; it is all of `Z^n` for every `k`
/// exactly when some generator occurs in the period with both signs.
fn both_signs_in_period(ray: &Ray) -> Option<Certificate> {
    let base = ray.prefix().len();
    let letters = ray.period().letters();
    for generator in 1..=ray.period().max_index() {
        let plus = letters
            .iter()
            .position(|&l| l == Letter::generator(generator));
        let minus = letters
            .iter()
            .position(|&l| l == Letter::generator_inverse(generator));
        if let (Some(plus), Some(minus)) = (plus, minus) {
            return Some(Certificate::ImageSurjective {
                generator,
                positive_at: base + plus,
                negative_at: base + minus,
            });
        }
    }
    None
}

/// Whether `φ(A_k(τ)) = φ(A)` for every `k >= 0`.
pub fn image_surjective_onto_horoballs(family: &Family, ray: &Ray) -> bool {
    match family.image_model() {
        PhiImageModel::ExponentVector { .. } => both_signs_in_period(ray).is_some(),
        model @ PhiImageModel::ProjectToC { .. } => kernel_subword(model, ray).is_some(),
    }
}

/// `S = {1}` generates `Z[1/(p₁…pₙ)]` over `A_k(τ)` for every `k` when each
/// `expsum_{aᵢ}` is unbounded above there, i.e. the period is not `aᵢ⁻¹`.
fn lehnert_generation(family: &Family, ray: &Ray) -> Option<Certificate> {
    let Family::Lehnert(basis) = family else {
        return None;
    };
    let base = ray.prefix().len();
    let period = ray.period().letters();
    let climbs = (1..=basis.len() as u32)
        .map(|i| {
            let t = Letter::generator(i);
            period
                .iter()
                .position(|&l| l != t.inverse())
                .map(|offset| Climb {
                    letter: t,
                    position: base + offset,
                })
        })
        .collect::<Option<Vec<_>>>()?;
    Some(Certificate::Generation {
        generating_set: vec![PRational::integer(1)],
        climbs,
    })
}

/// For a ray that eventually stays in `C`, translate it into `C` and give
/// the index `ψ` for `S = {δ₁}` and `k = 0`.
fn wreath_witness(family: &Family, ray: &Ray) -> Option<Certificate> {
    let c_rank = family.c_rank()?;
    if ray.period().max_index() > c_rank {
        return None;
    }
    let translation = ray.prefix().inverse();
    let c_ray = ray.translate(&translation);
    debug_assert!(c_ray.prefix().is_empty());
    let generating_set = vec![SupportVector::delta(Word::identity())];
    let k = 0;
    let q = HoroballQuery::new(c_ray.clone(), k);
    let psi = nongeneration_witness(&generating_set, &q, c_rank).ok()?;
    Some(Certificate::FamilyWitness {
        translation,
        c_ray,
        k,
        support_radius: crate::coefficients::support_radius(&generating_set),
        generating_set,
        psi,
    })
}

pub fn classify(family: &Family, ray: &Ray) -> Result<Verdict, SigmaError> {
    let rank = family.alphabet().rank();
    if ray.max_index() > rank {
        return Err(SigmaError::AlphabetMismatch {
            ray: ray.to_string(),
            family: family.to_string(),
            rank,
        });
    }
    let model = family.image_model();
    match family {
        Family::Lehnert(_) => {
            let inclusion = kernel_subword(model, ray)
                .or_else(|| both_signs_in_period(ray))
                .or_else(|| lehnert_generation(family, ray));
            let exclusion = excluded_by_bounded_expsum(family, ray);
            decide(
                inclusion,
                exclusion,
                vec![
                    Criterion::KernelSubwords,
                    Criterion::ImageSurjective,
                    Criterion::Generation,
                    Criterion::BoundedExpsum,
                ],
                ray,
            )
        }
        Family::Lamplighter | Family::WreathFreeProduct { .. } => decide(
            kernel_subword(model, ray),
            wreath_witness(family, ray),
            vec![Criterion::KernelSubwords, Criterion::FamilyWitness],
            ray,
        ),
    }
}

/// Classifies every canonical ray with `|prefix| <= max_prefix` and
/// `|period| <= max_period` over the family's alphabet.
pub fn sweep(
    family: &Family,
    max_prefix: usize,
    max_period: usize,
    cap: EnumerationCap,
) -> Result<Vec<(Ray, Verdict)>, SigmaError> {
    Ray::enumerate(family.alphabet(), max_prefix, max_period, cap)?
        .into_iter()
        .map(|ray| classify(family, &ray).map(|v| (ray, v)))
        .collect()
}
