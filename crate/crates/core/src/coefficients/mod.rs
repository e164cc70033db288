//! The normal subgroup `B`, the action `φ: A → Aut(B)`, and desk-scale
//! oracles for generation questions about `B`.

mod family;
pub mod lattice;
pub mod lehnert;
pub mod wreath;

use thiserror::Error;

use crate::words::Word;

pub use family::{Family, ImageValue, PhiImageModel};
pub use lattice::{lattice_generates, IntegerLattice};
pub use lehnert::{
    act_lehnert, fg_over_lehnert, generated_subgroup, LehnertGeneration, PRational, PrimeBasis,
};
pub use wreath::{
    act_wreath, index_set, nongeneration_witness, project_to_c, support_radius, witness_holds,
    SupportVector,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoefficientError {
    #[error("bad family: {0}")]
    BadFamily(String),
    #[error("{0} is not an element of the coefficient ring")]
    NotInRing(String),
    #[error("a generating set must be nonempty")]
    EmptyGeneratingSet,
    #[error("support index {0} lies outside the window")]
    OutsideWindow(String),
    #[error("ray {0} uses letters outside C")]
    NotACRay(String),
}

/// An action of the free group on an abelian group `B`, written additively.
pub trait Action {
    type Coeff: Clone + PartialEq + std::fmt::Debug;

    fn act(&self, a: &Word, b: &Self::Coeff) -> Self::Coeff;

    fn add(&self, x: &Self::Coeff, y: &Self::Coeff) -> Self::Coeff;
}

pub struct LehnertAction(pub PrimeBasis);

impl Action for LehnertAction {
    type Coeff = PRational;

    fn act(&self, a: &Word, b: &PRational) -> PRational {
        act_lehnert(a, b, &self.0)
    }

    fn add(&self, x: &PRational, y: &PRational) -> PRational {
        x + y
    }
}

pub struct WreathAction {
    pub c_rank: u32,
}

impl Action for WreathAction {
    type Coeff = SupportVector;

    fn act(&self, a: &Word, b: &SupportVector) -> SupportVector {
        act_wreath(a, b, self.c_rank)
    }

    fn add(&self, x: &SupportVector, y: &SupportVector) -> SupportVector {
        x + y
    }
}

/// An element `(b, a)` of `B ⋊ A`.
#[derive(Clone, Debug, PartialEq)]
pub struct SemidirectElement<C> {
    pub coeff: C,
    pub word: Word,
}

impl<C: Clone> SemidirectElement<C> {
    /// `(b₁, a₁)(b₂, a₂) = (b₁ + φ_{a₁}(b₂), a₁a₂)`.
    pub fn mul<A: Action<Coeff = C>>(&self, other: &Self, action: &A) -> Self {
        SemidirectElement {
            coeff: action.add(&self.coeff, &action.act(&self.word, &other.coeff)),
            word: self.word.multiply(&other.word),
        }
    }
}
