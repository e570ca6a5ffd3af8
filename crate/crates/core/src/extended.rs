//! Winning sets beyond the coalition algebra: ground collections B' ⊇ B,
//! induced games, ν' and the kappa number.

use serde::Serialize;

use crate::algebra::{Algebra, Coalition};
use crate::bitset::BitSet;
use crate::cores::WinningSets;
use crate::error::{Error, Result};
use crate::games::{min_empty_subfamily, ExtendedCardinal, Nakamura};

/// Largest player count accepted by [`kappa_number_bruteforce`].
pub const BRUTEFORCE_MAX_PLAYERS: usize = 8;
/// Largest family accepted by [`kappa_number_bruteforce`].
pub const BRUTEFORCE_MAX_SETS: usize = 6;
/// Largest cover size accepted by [`kappa_number_bruteforce`].
pub const BRUTEFORCE_MAX_COVER: usize = 3;

/// The sets of players that can be assigned winning or losing status.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroundCollection {
    /// Every subset of N; never materialized.
    AllSubsets,
    Explicit(Vec<Coalition>),
}

impl GroundCollection {
    pub fn contains(&self, s: &Coalition) -> bool {
        match self {
            GroundCollection::AllSubsets => true,
            GroundCollection::Explicit(list) => list.contains(s),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WinningFamily {
    algebra: Algebra,
    ground: GroundCollection,
    /// Sorted by (size, bit pattern), no duplicates.
    sets: Vec<Coalition>,
}

impl WinningFamily {
    pub fn new(algebra: Algebra, ground: GroundCollection, sets: Vec<Coalition>) -> Result<Self> {
        if let GroundCollection::Explicit(list) = &ground {
            let players = algebra.players();
            if let Some(bad) = list.iter().find(|s| !players.covers(s)) {
                return Err(Error::Family(format!(
                    "ground set {bad:?} mentions unknown players"
                )));
            }
            if algebra.member_count() > list.len() as u128 {
                return Err(Error::Family(
                    "ground collection does not contain every coalition".into(),
                ));
            }
            if let Some(missing) = algebra.members().find(|m| !list.contains(m)) {
                return Err(Error::Family(format!(
                    "coalition {missing:?} is missing from the ground collection"
                )));
            }
        }
        if sets.is_empty() {
            return Err(Error::Family("no winning sets".into()));
        }
        for s in &sets {
            if s.is_empty() {
                return Err(Error::Family("the empty set cannot win".into()));
            }
            if !algebra.players().covers(s) {
                return Err(Error::Family(format!("{s:?} mentions unknown players")));
            }
            if !ground.contains(s) {
                return Err(Error::Family(format!(
                    "{s:?} is not in the ground collection"
                )));
            }
        }
        let mut sets = sets;
        sets.sort();
        sets.dedup();
        Ok(Self {
            algebra,
            ground,
            sets,
        })
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn ground(&self) -> &GroundCollection {
        &self.ground
    }

    pub fn sets(&self) -> &[Coalition] {
        &self.sets
    }

    pub fn winning_sets(&self) -> WinningSets {
        WinningSets::new(self.sets.clone()).expect("validated nonempty sets")
    }

    /// W' ∩ B, possibly empty.
    pub fn induced_game(&self) -> WinningSets {
        WinningSets::new(
            self.sets
                .iter()
                .filter(|s| self.algebra.contains(s))
                .cloned()
                .collect(),
        )
        .expect("validated nonempty sets")
    }

    /// Every set already a coalition.
    pub fn within_algebra(&self) -> bool {
        self.sets.iter().all(|s| self.algebra.contains(s))
    }

    pub fn nu_prime(&self) -> Nakamura {
        Nakamura::of_family(&self.sets)
    }

    /// ν of the induced game, with the empty induced family read as +∞.
    pub fn nu_induced(&self) -> Nakamura {
        Nakamura::of_family(self.induced_game().members())
    }

    /// Kappa number via closures: the least number of winning sets whose
    /// closures in the algebra have empty intersection.
    pub fn kappa_number(&self) -> Kappa {
        // keep the first set (in canonical order) for each distinct closure
        let mut reps: Vec<(Coalition, Coalition)> = Vec::new();
        for s in &self.sets {
            let c = self.algebra.closure(s);
            if !reps.iter().any(|(_, rc)| *rc == c) {
                reps.push((s.clone(), c));
            }
        }
        let closures: Vec<Coalition> = reps.iter().map(|(_, c)| c.clone()).collect();
        match min_empty_subfamily(&closures) {
            Some(idx) => {
                let chosen: Vec<_> = idx.into_iter().map(|i| reps[i].clone()).collect();
                Kappa {
                    value: ExtendedCardinal::Finite(chosen.len()),
                    witness: Some(CoverPair {
                        y_family: chosen.iter().map(|(s, _)| s.clone()).collect(),
                        covers: chosen.into_iter().map(|(_, c)| vec![c]).collect(),
                    }),
                }
            }
            None => Kappa {
                value: ExtendedCardinal::Infinite,
                witness: None,
            },
        }
    }

    /// Kappa number by direct minimization of max{#Y, max #Z(W)} over every
    /// subfamily Y and every choice of covers Z(W) built from at most
    /// `cover_size_limit` algebra members.
    pub fn kappa_number_bruteforce(&self, cover_size_limit: usize) -> Result<Kappa> {
        let n = self.algebra.players().len();
        if n > BRUTEFORCE_MAX_PLAYERS {
            return Err(Error::Scale(format!(
                "{n} players (oracle handles at most {BRUTEFORCE_MAX_PLAYERS})"
            )));
        }
        if self.sets.len() > BRUTEFORCE_MAX_SETS {
            return Err(Error::Scale(format!(
                "{} winning sets (oracle handles at most {BRUTEFORCE_MAX_SETS})",
                self.sets.len()
            )));
        }
        if cover_size_limit == 0 {
            return Err(Error::Invalid("cover size limit must be at least 1".into()));
        }
        if cover_size_limit > BRUTEFORCE_MAX_COVER {
            return Err(Error::Scale(format!(
                "cover size limit {cover_size_limit} (oracle handles at most {BRUTEFORCE_MAX_COVER})"
            )));
        }
        Ok(CoverOracle::new(self, cover_size_limit).solve())
    }
}

/// A subfamily Y of winning sets with a cover for each member whose unions
/// have empty intersection.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverPair {
    pub y_family: Vec<Coalition>,
    /// `covers[k]` covers `y_family[k]`.
    pub covers: Vec<Vec<Coalition>>,
}

impl CoverPair {
    /// Checks every membership condition against `family`.
    pub fn is_valid_for(&self, family: &WinningFamily) -> bool {
        if self.y_family.is_empty() || self.y_family.len() != self.covers.len() {
            return false;
        }
        let mut meet = family.algebra().players().all();
        for (w, cover) in self.y_family.iter().zip(&self.covers) {
            if !family.sets().contains(w) || cover.is_empty() {
                return false;
            }
            if !cover.iter().all(|z| family.algebra().contains(z)) {
                return false;
            }
            let union = cover.iter().fold(BitSet::new(), |acc, z| &acc | z);
            if !w.is_subset(&union) {
                return false;
            }
            meet.intersect_with(&union);
        }
        meet.is_empty()
    }

    /// max{#Y, max #Z(W)}
    pub fn cost(&self) -> usize {
        self.covers
            .iter()
            .map(Vec::len)
            .max()
            .unwrap_or(0)
            .max(self.y_family.len())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Kappa {
    pub value: ExtendedCardinal,
    pub witness: Option<CoverPair>,
}

const UNREACHED: u8 = u8::MAX;

/// Exhaustive search over (Y, Z) on bit masks; players < 9 so every set
/// fits in one byte's worth of mask states.
struct CoverOracle {
    full: u64,
    sets: Vec<u64>,
    /// Per winning set: every reachable cover union with a smallest cover
    /// (as member masks) producing it.
    covers: Vec<Vec<(u64, Vec<u64>)>>,
}

impl CoverOracle {
    fn new(family: &WinningFamily, limit: usize) -> Self {
        let members: Vec<u64> = family
            .algebra()
            .members()
            .map(|m| m.as_mask().expect("at most 8 players"))
            .collect();
        let sets: Vec<u64> = family
            .sets()
            .iter()
            .map(|s| s.as_mask().expect("at most 8 players"))
            .collect();
        let covers = sets
            .iter()
            .map(|&w| {
                let mut best: Vec<(u64, Vec<u64>)> = Vec::new();
                let mut pick = Vec::with_capacity(limit);
                for size in 1..=limit {
                    collect_covers(&members, w, size, 0, 0, &mut pick, &mut best);
                }
                best
            })
            .collect();
        Self {
            full: family
                .algebra()
                .players()
                .all()
                .as_mask()
                .expect("at most 8 players"),
            sets,
            covers,
        }
    }

    /// Runs the layered search for the members of `y` (indices into sets);
    /// returns the least achievable max cover size and the chosen covers.
    fn best_for(&self, y: &[usize]) -> Option<(usize, Vec<Vec<u64>>)> {
        let states = 1usize << 8;
        // layer[k][mask] = (least max cover size, parent mask, cover index)
        let mut layers: Vec<Vec<(u8, u64, usize)>> = Vec::with_capacity(y.len() + 1);
        let mut first = vec![(UNREACHED, 0, 0); states];
        first[self.full as usize] = (0, 0, 0);
        layers.push(first);
        for &w in y {
            let prev = layers.last().expect("seeded");
            let mut next = vec![(UNREACHED, 0, 0); states];
            for (mask, &(cost, _, _)) in prev.iter().enumerate() {
                if cost == UNREACHED {
                    continue;
                }
                for (ci, (union, cover)) in self.covers[w].iter().enumerate() {
                    let meet = mask as u64 & union;
                    let c = cost.max(cover.len() as u8);
                    if c < next[meet as usize].0 {
                        next[meet as usize] = (c, mask as u64, ci);
                    }
                }
            }
            layers.push(next);
        }
        let (cost, _, _) = layers.last().expect("seeded")[0];
        if cost == UNREACHED {
            return None;
        }
        let mut chosen = vec![Vec::new(); y.len()];
        let mut mask = 0u64;
        for k in (0..y.len()).rev() {
            let (_, parent, ci) = layers[k + 1][mask as usize];
            chosen[k] = self.covers[y[k]][ci].1.clone();
            mask = parent;
        }
        Some((cost as usize, chosen))
    }

    fn solve(&self) -> Kappa {
        let f = self.sets.len();
        let all: Vec<usize> = (0..f).collect();
        // intersections only shrink as sets are added, so if the whole
        // family cannot reach ∅ no subfamily can
        if f == 0 || self.best_for(&all).is_none() {
            return Kappa {
                value: ExtendedCardinal::Infinite,
                witness: None,
            };
        }
        let mut best: Option<(usize, Vec<usize>, Vec<Vec<u64>>)> = None;
        for size in 1..=f {
            if best.as_ref().is_some_and(|(v, _, _)| *v <= size) {
                break;
            }
            for y in (0u32..1 << f).filter(|m| m.count_ones() as usize == size) {
                let members: Vec<usize> = (0..f).filter(|i| y >> i & 1 == 1).collect();
                if let Some((cover_cost, covers)) = self.best_for(&members) {
                    let value = cover_cost.max(size);
                    if best.as_ref().is_none_or(|(v, _, _)| value < *v) {
                        best = Some((value, members, covers));
                    }
                }
            }
        }
        let (value, members, covers) = best.expect("whole family is feasible");
        Kappa {
            value: ExtendedCardinal::Finite(value),
            witness: Some(CoverPair {
                y_family: members
                    .iter()
                    .map(|&i| BitSet::from_mask(self.sets[i]))
                    .collect(),
                covers: covers
                    .into_iter()
                    .map(|c| c.into_iter().map(BitSet::from_mask).collect())
                    .collect(),
            }),
        }
    }
}

fn collect_covers(
    members: &[u64],
    target: u64,
    size: usize,
    start: usize,
    union: u64,
    pick: &mut Vec<u64>,
    best: &mut Vec<(u64, Vec<u64>)>,
) {
    if pick.len() == size {
        if target & !union == 0 && !best.iter().any(|(u, _)| *u == union) {
            best.push((union, pick.clone()));
        }
        return;
    }
    for k in start..members.len() {
        pick.push(members[k]);
        collect_covers(members, target, size, k + 1, union | members[k], pick, best);
        pick.pop();
    }
}
