//! Alternatives, agendas, strict preferences, and profiles.
//!
//! A preference is an arbitrary asymmetric relation stored as explicit
//! pairs; incomparability is the default and no ordering axioms beyond
//! asymmetry are assumed.

use std::collections::HashMap;

use crate::algebra::{Algebra, Coalition, PlayerSet};
use crate::bitset::BitSet;
use crate::error::{Error, Result};

/// A set of alternative indices.
pub type AltSet = BitSet;

/// The alternatives X, labelled by distinct strings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlternativeSet {
    labels: Vec<String>,
    index: HashMap<String, usize>,
}

impl AlternativeSet {
    pub fn new<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.len() < 2 {
            return Err(Error::Invalid(
                "at least two alternatives are required".into(),
            ));
        }
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::Invalid(format!("duplicate alternative label {l:?}")));
            }
        }
        Ok(Self { labels, index })
    }

    /// Labels `a`, `b`, ... (then `x26`, `x27`, ... past `z`).
    pub fn lettered(m: usize) -> Result<Self> {
        Self::new((0..m).map(|i| {
            if i < 26 {
                ((b'a' + i as u8) as char).to_string()
            } else {
                format!("x{i}")
            }
        }))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn all(&self) -> AltSet {
        BitSet::full(self.len())
    }

    pub fn set_from_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<AltSet> {
        labels
            .iter()
            .map(|l| {
                self.index_of(l.as_ref())
                    .ok_or_else(|| Error::Invalid(format!("unknown alternative {:?}", l.as_ref())))
            })
            .collect()
    }

    /// Member labels in X order.
    pub fn labels_of(&self, s: &AltSet) -> Vec<String> {
        s.iter().map(|i| self.labels[i].clone()).collect()
    }
}

/// A nonempty subset of X put to the vote.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Agenda {
    members: AltSet,
    universe: usize,
}

impl Agenda {
    pub fn new(members: AltSet, universe: usize) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::Invalid("agenda must be nonempty".into()));
        }
        if members.bound() > universe {
            return Err(Error::Invalid(format!(
                "agenda {members:?} exceeds the {universe} alternatives"
            )));
        }
        Ok(Self { members, universe })
    }

    /// The whole of X.
    pub fn all(x_set: &AlternativeSet) -> Self {
        Self {
            members: x_set.all(),
            universe: x_set.len(),
        }
    }

    /// The first `size` alternatives of a universe of `universe`.
    pub fn prefix(size: usize, universe: usize) -> Result<Self> {
        Self::new(BitSet::full(size), universe)
    }

    pub fn members(&self) -> &AltSet {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.contains(x)
    }
}

/// An asymmetric relation on `m` alternatives; `x ≻ y` is the pair `(x, y)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Preference {
    m: usize,
    /// `beats[x]` = {y : x ≻ y}
    beats: Vec<AltSet>,
    /// `beaten_by[y]` = {x : x ≻ y}
    beaten_by: Vec<AltSet>,
}

impl Preference {
    pub fn empty(m: usize) -> Self {
        Self {
            m,
            beats: vec![BitSet::new(); m],
            beaten_by: vec![BitSet::new(); m],
        }
    }

    pub fn from_pairs(m: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut p = Self::empty(m);
        for (x, y) in pairs {
            if x >= m || y >= m {
                return Err(Error::Invalid(format!(
                    "pair ({x}, {y}) outside the {m} alternatives"
                )));
            }
            if x == y {
                return Err(Error::Asymmetry(format!("reflexive pair ({x}, {x})")));
            }
            if p.prefers(y, x) {
                return Err(Error::Asymmetry(format!("both ({x}, {y}) and ({y}, {x})")));
            }
            p.beats[x].insert(y);
            p.beaten_by[y].insert(x);
        }
        Ok(p)
    }

    /// Builds from label pairs `[better, worse]`.
    pub fn from_label_pairs<S: AsRef<str>>(
        x_set: &AlternativeSet,
        pairs: &[[S; 2]],
    ) -> Result<Self> {
        let idx = |l: &S| {
            x_set
                .index_of(l.as_ref())
                .ok_or_else(|| Error::Invalid(format!("unknown alternative {:?}", l.as_ref())))
        };
        let pairs = pairs
            .iter()
            .map(|[x, y]| Ok((idx(x)?, idx(y)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_pairs(x_set.len(), pairs)
    }

    pub fn alternatives(&self) -> usize {
        self.m
    }

    pub fn prefers(&self, x: usize, y: usize) -> bool {
        self.beats[x].contains(y)
    }

    pub fn beaten_by(&self, y: usize) -> &AltSet {
        &self.beaten_by[y]
    }

    /// All pairs in (better, worse) lexicographic order.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.beats
            .iter()
            .enumerate()
            .flat_map(|(x, ys)| ys.iter().map(move |y| (x, y)))
            .collect()
    }

    /// Agenda members not beaten by another agenda member.
    pub fn maximal_set(&self, agenda: &Agenda) -> AltSet {
        self.maximal_in(agenda.members())
    }

    pub(crate) fn maximal_in(&self, domain: &AltSet) -> AltSet {
        domain
            .iter()
            .filter(|&x| !self.beaten_by[x].intersects(domain))
            .collect()
    }

    /// No directed cycle among the pairs.
    pub fn is_acyclic(&self) -> bool {
        // repeatedly peel alternatives with no remaining predecessor
        let mut remaining = BitSet::full(self.m);
        loop {
            let sources: Vec<usize> = remaining
                .iter()
                .filter(|&x| !self.beaten_by[x].intersects(&remaining))
                .collect();
            if sources.is_empty() {
                return remaining.is_empty();
            }
            for x in sources {
                remaining.remove(x);
            }
        }
    }

    /// Transitive and total on `domain`.
    pub fn is_linear_on(&self, domain: &AltSet) -> bool {
        for x in domain {
            for y in domain {
                if x != y && !self.prefers(x, y) && !self.prefers(y, x) {
                    return false;
                }
                if self.prefers(x, y) {
                    let below_y = self.beats[y].intersection(domain);
                    if !below_y.is_subset(&self.beats[x]) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// The pairs with both ends in `domain`.
    pub fn restrict(&self, domain: &AltSet) -> Self {
        let mut p = Self::empty(self.m);
        for x in domain {
            let ys = self.beats[x].intersection(domain);
            for y in &ys {
                p.beaten_by[y].insert(x);
            }
            p.beats[x] = ys;
        }
        p
    }

    /// Smallest transitive relation containing this one; asymmetric only if
    /// the relation is acyclic.
    pub fn transitive_closure(&self) -> Result<Self> {
        let mut reach = self.beats.clone();
        loop {
            let mut changed = false;
            for x in 0..self.m {
                let mut r = reach[x].clone();
                for y in reach[x].iter() {
                    r.union_with(&reach[y]);
                }
                if r != reach[x] {
                    reach[x] = r;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        let pairs: Vec<_> = reach
            .iter()
            .enumerate()
            .flat_map(|(x, ys)| ys.iter().map(move |y| (x, y)))
            .collect();
        Self::from_pairs(self.m, pairs)
    }
}

/// One preference per player.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Profile {
    prefs: Vec<Preference>,
}

impl Profile {
    pub fn new(players: PlayerSet, prefs: Vec<Preference>) -> Result<Self> {
        if prefs.len() != players.len() {
            return Err(Error::Invalid(format!(
                "{} preferences for {} players",
                prefs.len(),
                players.len()
            )));
        }
        if prefs.windows(2).any(|w| w[0].m != w[1].m) {
            return Err(Error::Invalid(
                "preferences over different alternative sets".into(),
            ));
        }
        Ok(Self { prefs })
    }

    /// Every player holds the empty relation.
    pub fn indifferent(players: PlayerSet, m: usize) -> Self {
        Self {
            prefs: vec![Preference::empty(m); players.len()],
        }
    }

    pub fn players(&self) -> usize {
        self.prefs.len()
    }

    pub fn alternatives(&self) -> usize {
        self.prefs[0].m
    }

    pub fn preference(&self, i: usize) -> &Preference {
        &self.prefs[i]
    }

    pub fn preferences(&self) -> &[Preference] {
        &self.prefs
    }

    /// {i : x ≻_i y}
    pub fn supporters(&self, x: usize, y: usize) -> Coalition {
        self.prefs
            .iter()
            .enumerate()
            .filter(|(_, p)| p.prefers(x, y))
            .map(|(i, _)| i)
            .collect()
    }

    /// {i : x is not maximal for i on the agenda}
    pub fn dissatisfied(&self, agenda: &Agenda, x: usize) -> Coalition {
        self.prefs
            .iter()
            .enumerate()
            .filter(|(_, p)| p.beaten_by[x].intersects(agenda.members()))
            .map(|(i, _)| i)
            .collect()
    }

    pub fn maximal_sets(&self, agenda: &Agenda) -> Vec<AltSet> {
        self.prefs.iter().map(|p| p.maximal_set(agenda)).collect()
    }

    /// Every supporter set {i : x ≻_i y} is a coalition of the algebra.
    pub fn is_measurable(&self, algebra: &Algebra) -> bool {
        let m = self.alternatives();
        (0..m).all(|x| (0..m).all(|y| algebra.contains(&self.supporters(x, y))))
    }

    /// Measurable, and every player has a maximal element on the agenda.
    pub fn is_profile_for(&self, agenda: &Agenda, algebra: &Algebra) -> bool {
        self.is_measurable(algebra) && self.prefs.iter().all(|p| !p.maximal_set(agenda).is_empty())
    }

    /// Agenda members not unanimously beaten by another agenda member.
    pub fn pareto_set(&self, agenda: &Agenda) -> AltSet {
        let everyone = BitSet::full(self.players());
        agenda
            .members()
            .iter()
            .filter(|&x| {
                !agenda
                    .members()
                    .iter()
                    .any(|y| self.supporters(y, x) == everyone)
            })
            .collect()
    }
}
