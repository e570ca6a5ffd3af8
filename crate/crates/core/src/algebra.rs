//! Player sets, coalitions, and finite Boolean algebras of coalitions.
//!
//! Every Boolean subalgebra of the power set of a finite set is the set of
//! unions of blocks of a unique partition, so an [`Algebra`] is stored as
//! its generating partition and never as an explicit member list.

use crate::bitset::BitSet;
use crate::error::{Error, Result};

/// A coalition is a set of player indices.
pub type Coalition = BitSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PlayerSet {
    n: usize,
}

impl PlayerSet {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid("player set must be nonempty".into()));
        }
        Ok(Self { n })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The grand coalition N.
    pub fn all(&self) -> Coalition {
        BitSet::full(self.n)
    }

    pub fn covers(&self, s: &Coalition) -> bool {
        s.bound() <= self.n
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Algebra {
    players: PlayerSet,
    /// Sorted by smallest member.
    blocks: Vec<Coalition>,
    /// `block_of[i]` is the index of the block holding player `i`.
    block_of: Vec<usize>,
}

impl Algebra {
    /// The algebra of all unions of `blocks`.
    pub fn from_partition(players: PlayerSet, blocks: Vec<Coalition>) -> Result<Self> {
        let mut seen = BitSet::new();
        for b in &blocks {
            if b.is_empty() {
                return Err(Error::Partition("empty block".into()));
            }
            if !players.covers(b) {
                return Err(Error::Partition(format!(
                    "block {b:?} mentions a player outside 0..{}",
                    players.len()
                )));
            }
            if seen.intersects(b) {
                return Err(Error::Partition(format!(
                    "block {b:?} overlaps an earlier block"
                )));
            }
            seen.union_with(b);
        }
        if seen != players.all() {
            let missing = &players.all() - &seen;
            return Err(Error::Partition(format!(
                "players {missing:?} are not covered"
            )));
        }
        let mut blocks = blocks;
        blocks.sort_by_key(|b| b.first());
        let mut block_of = vec![0; players.len()];
        for (k, b) in blocks.iter().enumerate() {
            for i in b {
                block_of[i] = k;
            }
        }
        Ok(Self {
            players,
            blocks,
            block_of,
        })
    }

    /// The full power set 2^N.
    pub fn power_set(players: PlayerSet) -> Self {
        let blocks = (0..players.len()).map(BitSet::singleton).collect();
        Self::from_partition(players, blocks).expect("singletons partition N")
    }

    /// The two-element algebra {∅, N}.
    pub fn trivial(players: PlayerSet) -> Self {
        Self::from_partition(players, vec![players.all()]).expect("N partitions N")
    }

    pub fn players(&self) -> PlayerSet {
        self.players
    }

    pub fn blocks(&self) -> &[Coalition] {
        &self.blocks
    }

    pub fn block_of(&self, player: usize) -> usize {
        self.block_of[player]
    }

    pub fn is_power_set(&self) -> bool {
        self.blocks.len() == self.players.len()
    }

    /// True iff `s` is a union of blocks.
    pub fn contains(&self, s: &Coalition) -> bool {
        self.players.covers(s)
            && self
                .blocks
                .iter()
                .all(|b| b.is_disjoint(s) || b.is_subset(s))
    }

    /// The least member of the algebra containing `s`: the union of every
    /// block that meets `s`.
    pub fn closure(&self, s: &Coalition) -> Coalition {
        let mut out = BitSet::new();
        for b in &self.blocks {
            if b.intersects(s) {
                out.union_with(b);
            }
        }
        out
    }

    /// Number of members, 2^(#blocks).
    pub fn member_count(&self) -> u128 {
        1u128 << self.blocks.len()
    }

    /// The union of the blocks selected by the bits of `mask`.
    pub fn member(&self, mask: u64) -> Coalition {
        let mut out = BitSet::new();
        for (k, b) in self.blocks.iter().enumerate() {
            if mask >> k & 1 == 1 {
                out.union_with(b);
            }
        }
        out
    }

    /// All members, indexed by block masks `0..2^#blocks`.
    ///
    /// Panics if the algebra has 64 or more blocks.
    pub fn members(&self) -> impl Iterator<Item = Coalition> + '_ {
        assert!(self.blocks.len() < 64, "algebra too large to enumerate");
        (0..1u64 << self.blocks.len()).map(move |m| self.member(m))
    }
}
