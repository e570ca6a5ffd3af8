//! Simple games and the Nakamura number.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::{Algebra, Coalition, PlayerSet};
use crate::bitset::BitSet;
use crate::error::{Error, Result};

/// A finite count or +∞. `Finite(k) < Infinite` for every `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtendedCardinal {
    Finite(usize),
    Infinite,
}

impl ExtendedCardinal {
    pub fn finite(self) -> Option<usize> {
        match self {
            ExtendedCardinal::Finite(k) => Some(k),
            ExtendedCardinal::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == ExtendedCardinal::Infinite
    }

    /// `k < self`, with every count below +∞.
    pub fn exceeds(self, k: usize) -> bool {
        self > ExtendedCardinal::Finite(k)
    }
}

impl fmt::Display for ExtendedCardinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedCardinal::Finite(k) => write!(f, "{k}"),
            ExtendedCardinal::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for ExtendedCardinal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ExtendedCardinal::Finite(k) => s.serialize_u64(*k as u64),
            ExtendedCardinal::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for ExtendedCardinal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Count(usize),
            Word(String),
        }
        match Raw::deserialize(d)? {
            Raw::Count(k) => Ok(ExtendedCardinal::Finite(k)),
            Raw::Word(w) if w == "inf" => Ok(ExtendedCardinal::Infinite),
            Raw::Word(w) => Err(serde::de::Error::custom(format!(
                "expected a count or \"inf\", got {w:?}"
            ))),
        }
    }
}

/// Minimum number of sets needed for an empty intersection, together with
/// the lexicographically least index tuple achieving it.
///
/// `sets` is searched in the order given; `None` means every subfamily has
/// nonempty intersection.
pub fn min_empty_subfamily(sets: &[BitSet]) -> Option<Vec<usize>> {
    if sets.is_empty() {
        return None;
    }
    let size = min_empty_size(sets)?;
    let top = sets.iter().fold(BitSet::new(), |acc, s| &acc | s);
    let mut chosen = Vec::with_capacity(size);
    let mut dead = HashSet::new();
    let found = first_witness(sets, 0, size, &top, &mut chosen, &mut dead);
    debug_assert!(found);
    Some(chosen)
}

/// Breadth-first over distinct running intersections; a partial family whose
/// intersection was already reached by a smaller family is pruned.
fn min_empty_size(sets: &[BitSet]) -> Option<usize> {
    if sets.iter().any(|s| s.is_empty()) {
        return Some(1);
    }
    let all = sets.iter().skip(1).fold(sets[0].clone(), |acc, s| &acc & s);
    if !all.is_empty() {
        return None;
    }
    let mut seen: HashSet<BitSet> = sets.iter().cloned().collect();
    let mut frontier: Vec<BitSet> = seen.iter().cloned().collect();
    let mut level = 1;
    loop {
        level += 1;
        let mut next = Vec::new();
        for cur in &frontier {
            for s in sets {
                let meet = cur & s;
                if meet.is_empty() {
                    return Some(level);
                }
                if seen.insert(meet.clone()) {
                    next.push(meet);
                }
            }
        }
        // unreachable when the full intersection is empty
        if next.is_empty() {
            return None;
        }
        frontier = next;
    }
}

fn first_witness(
    sets: &[BitSet],
    start: usize,
    remaining: usize,
    current: &BitSet,
    chosen: &mut Vec<usize>,
    dead: &mut HashSet<(BitSet, usize, usize)>,
) -> bool {
    if remaining == 0 {
        return current.is_empty();
    }
    let key = (current.clone(), start, remaining);
    if dead.contains(&key) {
        return false;
    }
    for j in start..=sets.len().saturating_sub(remaining) {
        let meet = current & &sets[j];
        chosen.push(j);
        if first_witness(sets, j + 1, remaining - 1, &meet, chosen, dead) {
            return true;
        }
        chosen.pop();
    }
    dead.insert(key);
    false
}

/// A minimum-size subfamily with empty intersection, or +∞.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Nakamura {
    pub value: ExtendedCardinal,
    pub witness: Option<Vec<Coalition>>,
}

impl Nakamura {
    /// Evaluates the Nakamura number of an arbitrary family, searched in the
    /// canonical (size, bit pattern) order.
    pub fn of_family(family: &[Coalition]) -> Self {
        let mut sorted = family.to_vec();
        sorted.sort();
        sorted.dedup();
        match min_empty_subfamily(&sorted) {
            Some(idx) => Nakamura {
                value: ExtendedCardinal::Finite(idx.len()),
                witness: Some(idx.into_iter().map(|i| sorted[i].clone()).collect()),
            },
            None => Nakamura {
                value: ExtendedCardinal::Infinite,
                witness: None,
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SimpleGame {
    algebra: Algebra,
    /// Sorted by (size, bit pattern), no duplicates.
    winning: Vec<Coalition>,
}

impl SimpleGame {
    pub fn new(algebra: Algebra, winning: Vec<Coalition>) -> Result<Self> {
        if winning.is_empty() {
            return Err(Error::Game("no winning coalitions".into()));
        }
        for s in &winning {
            if s.is_empty() {
                return Err(Error::Game("the empty coalition cannot win".into()));
            }
            if !algebra.contains(s) {
                return Err(Error::Game(format!(
                    "{s:?} is not a coalition of the algebra"
                )));
            }
        }
        let mut winning = winning;
        winning.sort();
        winning.dedup();
        Ok(Self { algebra, winning })
    }

    /// Algebra members whose total weight reaches `quota` (or strictly
    /// exceeds it when `strict`).
    pub fn weighted_majority(
        algebra: Algebra,
        weights: &[u64],
        quota: u64,
        strict: bool,
    ) -> Result<Self> {
        if weights.len() != algebra.players().len() {
            return Err(Error::Game(format!(
                "{} weights for {} players",
                weights.len(),
                algebra.players().len()
            )));
        }
        let winning = algebra
            .members()
            .filter(|s| !s.is_empty())
            .filter(|s| {
                let w: u64 = s.iter().map(|i| weights[i]).sum();
                if strict {
                    w > quota
                } else {
                    w >= quota
                }
            })
            .collect();
        Self::new(algebra, winning)
    }

    /// Simple majority over 2^N: coalitions with more than half the players.
    pub fn majority(players: PlayerSet) -> Self {
        let n = players.len() as u64;
        Self::weighted_majority(
            Algebra::power_set(players),
            &vec![1; n as usize],
            n / 2,
            true,
        )
        .expect("the grand coalition wins")
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn players(&self) -> PlayerSet {
        self.algebra.players()
    }

    pub fn winning(&self) -> &[Coalition] {
        &self.winning
    }

    pub fn is_winning(&self, s: &Coalition) -> bool {
        self.winning.binary_search(s).is_ok()
    }

    pub fn is_weak(&self) -> bool {
        let meet = self
            .winning
            .iter()
            .skip(1)
            .fold(self.winning[0].clone(), |acc, s| &acc & s);
        !meet.is_empty()
    }

    pub fn nakamura_number(&self) -> Nakamura {
        Nakamura::of_family(&self.winning)
    }
}
