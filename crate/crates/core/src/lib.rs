//! Finite categories, ideals of morphisms trivial with respect to a class of
//! objects, and exhaustive verification of pretorsion theories.

pub mod category;
pub mod enumerate;
pub mod format;
pub mod functor;
pub mod gallery;
pub mod ideal;
pub mod morphisms;
pub mod theory;

pub use category::{
    CategoryBuilder, FinCategory, Hom, MorId, MorphismClass, ObjId, ValidationFailure, Violation,
};
pub use functor::{Functor, NatTrans};
pub use ideal::{FullSub, IdealError, TrivialIdeal};
pub use theory::{
    check_axioms, check_pretorsion, Counterexample, Decomposition, PretorsionData, PretorsionError,
    Verdict,
};
