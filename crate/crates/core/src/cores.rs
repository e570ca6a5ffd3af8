//! Dominance, the core, and the core without majority dissatisfaction.
//!
//! Everything here is parameterized by a plain family of winning sets so the
//! same code serves simple games, extended winning families, and their
//! (possibly empty) induced games.

use crate::algebra::Coalition;
use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::games::SimpleGame;
use crate::preferences::{Agenda, AltSet, Profile};

/// A family of nonempty winning sets. The empty family is allowed; it
/// dominates nothing and leaves both cores equal to the agenda.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct WinningSets {
    family: Vec<Coalition>,
    /// ⊆-minimal members; the only ones that matter for dominance and C+.
    minimal: Vec<Coalition>,
}

impl WinningSets {
    pub fn new(family: Vec<Coalition>) -> Result<Self> {
        if family.iter().any(|s| s.is_empty()) {
            return Err(Error::Family("the empty set cannot win".into()));
        }
        let mut family = family;
        family.sort();
        family.dedup();
        let minimal = family
            .iter()
            .filter(|s| !family.iter().any(|t| t != *s && t.is_subset(s)))
            .cloned()
            .collect();
        Ok(Self { family, minimal })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn members(&self) -> &[Coalition] {
        &self.family
    }

    pub fn minimal_members(&self) -> &[Coalition] {
        &self.minimal
    }

    pub fn is_empty(&self) -> bool {
        self.family.is_empty()
    }

    pub fn len(&self) -> usize {
        self.family.len()
    }

    /// Some member is contained in `s`.
    pub fn contains_winning(&self, s: &Coalition) -> bool {
        self.minimal.iter().any(|w| w.is_subset(s))
    }
}

impl From<&SimpleGame> for WinningSets {
    fn from(game: &SimpleGame) -> Self {
        Self::new(game.winning().to_vec()).expect("games exclude the empty coalition")
    }
}

/// `x ≻ y` socially: some winning set unanimously prefers `x` to `y`.
pub fn dominates(w: &WinningSets, profile: &Profile, x: usize, y: usize) -> bool {
    !w.is_empty() && w.contains_winning(&profile.supporters(x, y))
}

/// Agenda members undominated by any agenda member.
pub fn core(w: &WinningSets, agenda: &Agenda, profile: &Profile) -> AltSet {
    if w.is_empty() {
        return agenda.members().clone();
    }
    agenda
        .members()
        .iter()
        .filter(|&x| !agenda.members().iter().any(|y| dominates(w, profile, y, x)))
        .collect()
}

/// ∩_{S ∈ W} ∪_{i ∈ S} max_B ≻_i, the whole agenda for the empty family.
pub fn core_plus(w: &WinningSets, agenda: &Agenda, profile: &Profile) -> AltSet {
    let maxima = profile.maximal_sets(agenda);
    core_plus_from_maxima(w, agenda, &maxima)
}

/// [`core_plus`] given the players' maximal sets directly.
pub fn core_plus_from_maxima(w: &WinningSets, agenda: &Agenda, maxima: &[AltSet]) -> AltSet {
    let mut out = agenda.members().clone();
    for s in w.minimal_members() {
        let mut reach = BitSet::new();
        for i in s {
            reach.union_with(&maxima[i]);
        }
        out.intersect_with(&reach);
        if out.is_empty() {
            break;
        }
    }
    out
}

/// Agenda members whose dissatisfied players contain no winning set.
///
/// Definitional route to the same set as [`core_plus`].
pub fn core_plus_by_dissatisfaction(w: &WinningSets, agenda: &Agenda, profile: &Profile) -> AltSet {
    agenda
        .members()
        .iter()
        .filter(|&x| !w.contains_winning(&profile.dissatisfied(agenda, x)))
        .collect()
}

/// `Y ≻ x`: some winning set whose every member prefers some element of `Y`
/// to `x`.
pub fn extended_dominates(w: &WinningSets, profile: &Profile, y_set: &AltSet, x: usize) -> bool {
    if y_set.is_empty() {
        return false;
    }
    let unhappy: Coalition = (0..profile.players())
        .filter(|&i| profile.preference(i).beaten_by(x).intersects(y_set))
        .collect();
    w.contains_winning(&unhappy)
}
