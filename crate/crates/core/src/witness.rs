//! Profiles with an empty core, built from a minimum subfamily of winning
//! sets with empty intersection.
//!
//! Given sets `L_0 .. L_{k-1}` with empty intersection and agenda members
//! `x_0 .. x_{k-1}`, the players in `L_j` prefer `x_{j+1}` to `x_j`
//! (indices mod k) and everyone prefers `x_0` to anything outside the cycle.
//! Social dominance then contains the whole cycle, so nothing survives, while
//! each player keeps the maximal elements `{x_j : i ∉ L_j}`, which is nonempty
//! because the sets have empty intersection.

use serde::Serialize;

use crate::algebra::{Coalition, PlayerSet};
use crate::error::{Error, Result};
use crate::extended::WinningFamily;
use crate::games::{ExtendedCardinal, SimpleGame};
use crate::preferences::{Agenda, Preference, Profile};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessProfile {
    #[serde(skip)]
    pub profile: Profile,
    /// `x_0 .. x_{k-1}` as alternative indices.
    pub cycle_alternatives: Vec<usize>,
    /// `L_0 .. L_{k-1}`; `L_j` supports `x_{j+1}` over `x_j`.
    pub subfamily: Vec<Coalition>,
}

fn cycle_size(value: ExtendedCardinal, agenda: &Agenda, what: &str) -> Result<usize> {
    match value {
        ExtendedCardinal::Infinite => Err(Error::Precondition(format!(
            "{what} is infinite; every agenda has a nonempty core"
        ))),
        ExtendedCardinal::Finite(k) if k > agenda.len() => Err(Error::Precondition(format!(
            "{what} is {k} but the agenda has only {} alternatives",
            agenda.len()
        ))),
        ExtendedCardinal::Finite(k) => Ok(k),
    }
}

fn cycle_profile(
    players: PlayerSet,
    m: usize,
    cycle: &[usize],
    sets: &[Coalition],
) -> Result<Profile> {
    let k = cycle.len();
    let prefs = (0..players.len())
        .map(|i| {
            let mut pairs: Vec<(usize, usize)> = (0..k)
                .filter(|&j| sets[j].contains(i))
                .map(|j| (cycle[(j + 1) % k], cycle[j]))
                .collect();
            pairs.extend((0..m).filter(|y| !cycle.contains(y)).map(|y| (cycle[0], y)));
            Preference::from_pairs(m, pairs)
        })
        .collect::<Result<Vec<_>>>()?;
    Profile::new(players, prefs)
}

/// An empty-core profile for `game` on `agenda`; requires a finite Nakamura
/// number no larger than the agenda.
pub fn empty_core_witness(game: &SimpleGame, agenda: &Agenda) -> Result<WitnessProfile> {
    let nakamura = game.nakamura_number();
    let k = cycle_size(nakamura.value, agenda, "the Nakamura number")?;
    let subfamily = nakamura.witness.expect("finite value has a witness");
    let cycle: Vec<usize> = agenda.members().iter().take(k).collect();
    let profile = cycle_profile(game.players(), agenda.universe(), &cycle, &subfamily)?;
    Ok(WitnessProfile {
        profile,
        cycle_alternatives: cycle,
        subfamily,
    })
}

/// Like [`empty_core_witness`] but every player holds a linear order on X
/// with a single maximal element of the agenda.
///
/// Players are split into `D_j = (L_0 ∩ .. ∩ L_{j-1}) ∖ L_j`; everyone in
/// `D_j` ranks the cycle from `x_j` downwards, i.e. the transitive closure of
/// the cycle without the pair `(x_{j+1}, x_j)`, with the remaining
/// alternatives below in X order.
pub fn empty_core_linear_witness(game: &SimpleGame, agenda: &Agenda) -> Result<WitnessProfile> {
    let nakamura = game.nakamura_number();
    let k = cycle_size(nakamura.value, agenda, "the Nakamura number")?;
    let subfamily = nakamura.witness.expect("finite value has a witness");
    let cycle: Vec<usize> = agenda.members().iter().take(k).collect();
    let m = agenda.universe();
    let players = game.players();
    let rest: Vec<usize> = (0..m).filter(|y| !cycle.contains(y)).collect();

    // shared part: B' above everything else, and the rest linearly ordered
    let mut below: Vec<(usize, usize)> = Vec::new();
    for &x in &cycle {
        below.extend(rest.iter().map(|&y| (x, y)));
    }
    below.extend(rest.windows(2).map(|w| (w[0], w[1])));

    let orders = (0..k)
        .map(|j| {
            let mut pairs: Vec<(usize, usize)> = (0..k)
                .filter(|&l| l != j)
                .map(|l| (cycle[(l + 1) % k], cycle[l]))
                .collect();
            pairs.extend(below.iter().copied());
            Preference::from_pairs(m, pairs)?.transitive_closure()
        })
        .collect::<Result<Vec<_>>>()?;

    let mut group = vec![usize::MAX; players.len()];
    let mut earlier = players.all();
    for (j, l) in subfamily.iter().enumerate() {
        for i in &(&earlier - l) {
            group[i] = j;
        }
        earlier.intersect_with(l);
    }
    debug_assert!(earlier.is_empty());
    let prefs = group.iter().map(|&j| orders[j].clone()).collect();
    Ok(WitnessProfile {
        profile: Profile::new(players, prefs)?,
        cycle_alternatives: cycle,
        subfamily,
    })
}

/// A profile for the agenda whose core without majority dissatisfaction,
/// taken with respect to the winning family, is empty. Uses the closures of
/// a minimum kappa witness as the cycle supporters.
pub fn empty_coreplus_witness_extended(
    family: &WinningFamily,
    agenda: &Agenda,
) -> Result<WitnessProfile> {
    let kappa = family.kappa_number();
    let k = cycle_size(kappa.value, agenda, "the kappa number")?;
    let pair = kappa.witness.expect("finite value has a witness");
    let subfamily: Vec<Coalition> = pair
        .covers
        .into_iter()
        .map(|c| c.into_iter().next().expect("single closure cover"))
        .collect();
    let cycle: Vec<usize> = agenda.members().iter().take(k).collect();
    let profile = cycle_profile(
        family.algebra().players(),
        agenda.universe(),
        &cycle,
        &subfamily,
    )?;
    Ok(WitnessProfile {
        profile,
        cycle_alternatives: cycle,
        subfamily,
    })
}
