#![allow(dead_code)]

use std::path::PathBuf;

use coregames::cli::{parse_document, Instance};
use coregames::cores::{
    core, core_plus, core_plus_by_dissatisfaction, extended_dominates, WinningSets,
};
use coregames::verify::{all_games, set_partitions};
use coregames::{
    Agenda, Algebra, AltSet, BitSet, Coalition, GroundCollection, PlayerSet, Preference, Profile,
    SimpleGame, WinningFamily,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

pub fn load(name: &str) -> Instance {
    let text = std::fs::read_to_string(fixture(name)).expect("fixture exists");
    Instance::from_document(&parse_document(&text).expect("fixture parses"))
        .expect("fixture is valid")
}

pub fn set(v: &[usize]) -> Coalition {
    v.iter().copied().collect()
}

pub fn games_n3() -> Vec<SimpleGame> {
    all_games(&Algebra::power_set(PlayerSet::new(3).unwrap()), 7).unwrap()
}

/// Nakamura number by trying every subfamily of at most 20 sets; `None`
/// for an unbounded (weak) family.
pub fn nakamura_oracle(family: &[Coalition], n: usize) -> Option<usize> {
    let masks: Vec<u64> = family.iter().map(|s| s.as_mask().unwrap()).collect();
    let full = (1u64 << n) - 1;
    (1u32..1 << masks.len())
        .filter(|sub| {
            let meet = (0..masks.len())
                .filter(|k| sub >> k & 1 == 1)
                .fold(full, |acc, k| acc & masks[k]);
            meet == 0
        })
        .map(|sub| sub.count_ones() as usize)
        .min()
}

/// An asymmetric relation on `m` alternatives, each pair oriented uniformly
/// among none / forward / backward.
pub fn random_preference(rng: &mut StdRng, m: usize) -> Preference {
    let mut pairs = Vec::new();
    for x in 0..m {
        for y in x + 1..m {
            match rng.gen_range(0..3) {
                1 => pairs.push((x, y)),
                2 => pairs.push((y, x)),
                _ => {}
            }
        }
    }
    Preference::from_pairs(m, pairs).unwrap()
}

/// A random preference with the same maximal set on `agenda` as `p`.
pub fn same_tops(rng: &mut StdRng, p: &Preference, agenda: &Agenda) -> Preference {
    let m = p.alternatives();
    let tops = p.maximal_set(agenda);
    let mut pairs = Vec::new();
    if let Some(head) = tops.first() {
        for v in agenda.members().iter().filter(|v| !tops.contains(*v)) {
            pairs.push((head, v));
        }
    }
    for x in 0..m {
        for y in x + 1..m {
            if pairs.contains(&(x, y)) || pairs.contains(&(y, x)) {
                continue;
            }
            // nothing on the agenda may come to beat a maximal element
            let forward_ok = !(tops.contains(y) && agenda.contains(x));
            let backward_ok = !(tops.contains(x) && agenda.contains(y));
            match rng.gen_range(0..3) {
                1 if forward_ok => pairs.push((x, y)),
                2 if backward_ok => pairs.push((y, x)),
                _ => {}
            }
        }
    }
    Preference::from_pairs(m, pairs).unwrap()
}

/// A measurable profile for `agenda`: one random preference per block, each
/// with a maximal element on the agenda.
pub fn random_profile(rng: &mut StdRng, algebra: &Algebra, agenda: &Agenda) -> Profile {
    let players = algebra.players();
    let m = agenda.universe();
    let mut prefs = vec![Preference::empty(m); players.len()];
    for b in algebra.blocks() {
        let p = loop {
            let p = random_preference(rng, m);
            if !p.maximal_set(agenda).is_empty() {
                break p;
            }
        };
        for i in b {
            prefs[i] = p.clone();
        }
    }
    Profile::new(players, prefs).unwrap()
}

pub fn random_agenda(rng: &mut StdRng, m: usize) -> Agenda {
    loop {
        let mask = rng.gen_range(1u64..1 << m);
        if let Ok(a) = Agenda::new(BitSet::from_mask(mask), m) {
            return a;
        }
    }
}

/// Every subset of `agenda`'s members, including the empty one.
pub fn subsets(s: &AltSet) -> Vec<AltSet> {
    let members: Vec<usize> = s.iter().collect();
    (0u64..1 << members.len())
        .map(|mask| {
            members
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, &x)| x)
                .collect()
        })
        .collect()
}

/// Summary of one property suite.
pub struct Suite {
    pub instances: usize,
    pub failures: Vec<String>,
    pub extra: Option<String>,
}

impl Suite {
    fn new() -> Self {
        Suite {
            instances: 0,
            failures: Vec::new(),
            extra: None,
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok && self.failures.len() < 5 {
            self.failures.push(what());
        }
    }

    pub fn passed(&self, min_instances: usize) -> bool {
        self.failures.is_empty() && self.instances >= min_instances
    }
}

/// (game, agenda, profile) triples: every n=3 game, random agendas on
/// X = {0..m-1} for m in 3..=5, random profiles.
fn plain_instances(seed: u64, per_game: usize) -> Vec<(WinningSets, Agenda, Profile)> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut out = Vec::new();
    for game in games_n3() {
        let w = WinningSets::from(&game);
        for k in 0..per_game {
            let m = 3 + k % 3;
            let agenda = random_agenda(&mut rng, m);
            let profile = random_profile(&mut rng, game.algebra(), &agenda);
            out.push((w.clone(), agenda, profile));
        }
    }
    out
}

pub fn suite_tops_only() -> Suite {
    let mut s = Suite::new();
    let mut rng = StdRng::seed_from_u64(31);
    for (w, agenda, p) in plain_instances(1, 80) {
        let prefs = p
            .preferences()
            .iter()
            .map(|q| same_tops(&mut rng, q, &agenda))
            .collect();
        let q = Profile::new(PlayerSet::new(p.players()).unwrap(), prefs).unwrap();
        let same_maxima = p.maximal_sets(&agenda) == q.maximal_sets(&agenda);
        s.check(
            same_maxima && core_plus(&w, &agenda, &p) == core_plus(&w, &agenda, &q),
            || format!("{w:?} {agenda:?} {p:?} {q:?}"),
        );
    }
    s
}

pub fn suite_core_plus_in_core() -> Suite {
    let mut s = Suite::new();
    for (w, agenda, p) in plain_instances(2, 80) {
        let plus = core_plus(&w, &agenda, &p);
        let c = core(&w, &agenda, &p);
        let tops = p
            .maximal_sets(&agenda)
            .iter()
            .fold(BitSet::new(), |acc, t| &acc | t);
        let definitional = core_plus_by_dissatisfaction(&w, &agenda, &p);
        s.check(
            plus.is_subset(&c) && plus.is_subset(&(&c & &tops)) && definitional == plus,
            || format!("{w:?} {agenda:?} {p:?}"),
        );
    }
    // strictness witnesses
    let e1 = load("example1.json");
    let w = WinningSets::from(&e1.game().unwrap());
    let p = e1.profile.as_ref().unwrap();
    let strict = core_plus(&w, &e1.agenda, p) != core(&w, &e1.agenda, p);
    s.check(strict, || "example1 inclusion not strict".into());
    s.extra = Some("strict on the three-player example".into());
    s
}

pub fn suite_family_inclusions() -> Suite {
    let mut s = Suite::new();
    let mut rng = StdRng::seed_from_u64(3);
    let n = 4;
    let players = PlayerSet::new(n).unwrap();
    let partitions = set_partitions(n);
    while s.instances < 12_000 {
        let blocks = partitions[rng.gen_range(0..partitions.len())].clone();
        let algebra = Algebra::from_partition(players, blocks).unwrap();
        let count = rng.gen_range(1..=4);
        let sets: Vec<Coalition> = (0..count)
            .map(|_| BitSet::from_mask(rng.gen_range(1u64..1 << n)))
            .collect();
        let family =
            WinningFamily::new(algebra.clone(), GroundCollection::AllSubsets, sets).unwrap();
        let m = rng.gen_range(2..=4);
        let agenda = random_agenda(&mut rng, m);
        let p = random_profile(&mut rng, &algebra, &agenda);
        let outer = family.winning_sets();
        let inner = family.induced_game();
        let plus_outer = core_plus(&outer, &agenda, &p);
        let plus_inner = core_plus(&inner, &agenda, &p);
        let core_outer = core(&outer, &agenda, &p);
        let core_inner = core(&inner, &agenda, &p);
        s.check(
            plus_outer.is_subset(&plus_inner)
                && plus_inner.is_subset(&core_inner)
                && plus_outer.is_subset(&core_outer)
                && core_outer.is_subset(&core_inner),
            || format!("{family:?} {agenda:?} {p:?}"),
        );
    }
    s
}

pub fn suite_pareto() -> Suite {
    let mut s = Suite::new();
    for (w, agenda, p) in plain_instances(4, 80) {
        let pareto = p.pareto_set(&agenda);
        let tops = p
            .maximal_sets(&agenda)
            .iter()
            .fold(BitSet::new(), |acc, t| &acc | t);
        // Pareto by definition: no agenda member preferred by everyone
        let oracle: AltSet = agenda
            .members()
            .iter()
            .filter(|&x| {
                !agenda
                    .members()
                    .iter()
                    .any(|y| (0..p.players()).all(|i| p.preference(i).prefers(y, x)))
            })
            .collect();
        s.check(
            pareto == oracle
                && core(&w, &agenda, &p).is_subset(&pareto)
                && core_plus(&w, &agenda, &p).is_subset(&pareto)
                && tops.is_subset(&pareto),
            || format!("{w:?} {agenda:?} {p:?}"),
        );
    }
    s
}

pub fn suite_extended_dominance() -> Suite {
    let mut s = Suite::new();
    for (w, agenda, p) in plain_instances(5, 80) {
        let plus = core_plus(&w, &agenda, &p);
        let ys = subsets(agenda.members());
        let ok = agenda.members().iter().all(|x| {
            let by_any = ys.iter().any(|y| extended_dominates(&w, &p, y, x));
            let by_all = extended_dominates(&w, &p, agenda.members(), x);
            plus.contains(x) == !by_any && by_any == by_all
        });
        s.check(ok, || format!("{w:?} {agenda:?} {p:?}"));
    }
    s
}
