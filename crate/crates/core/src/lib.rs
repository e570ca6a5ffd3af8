//! Simple games with preferences: the core, the core without majority
//! dissatisfaction, Nakamura and kappa numbers, constructive empty-core
//! profiles, and exhaustive checks of the equivalences relating them.

pub mod algebra;
pub mod bitset;
pub mod cli;
pub mod cores;
pub mod error;
pub mod extended;
pub mod games;
pub mod preferences;
pub mod verify;
pub mod witness;

pub use algebra::{Algebra, Coalition, PlayerSet};
pub use bitset::BitSet;
pub use cores::{core, core_plus, dominates, extended_dominates, WinningSets};
pub use error::{Error, Result};
pub use extended::{CoverPair, GroundCollection, Kappa, WinningFamily};
pub use games::{ExtendedCardinal, Nakamura, SimpleGame};
pub use preferences::{Agenda, AltSet, AlternativeSet, Preference, Profile};
pub use verify::{
    check_acyclic_theorem, check_extended_equivalence, check_nakamura_equivalence,
    enumerate_preferences_for, search_divergence_instance, CheckOptions, ProfileEnumerationMode,
    TheoremReport,
};
pub use witness::{
    empty_core_linear_witness, empty_core_witness, empty_coreplus_witness_extended, WitnessProfile,
};
