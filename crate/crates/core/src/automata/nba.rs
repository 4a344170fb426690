use alloc::vec::Vec;

use super::guard::{Guard, LabelSet, MAX_ENUMERATED_PROPOSITIONS};
use super::AutomataError;
use crate::logic::{ApUniverse, Label};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NbaTransition {
    pub from: usize,
    pub guard: Guard,
    pub to: usize,
}

/// Non-deterministic Büchi automaton with state-based acceptance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nba {
    aps: ApUniverse,
    num_states: usize,
    initial: Vec<usize>,
    accepting: Vec<usize>,
    transitions: Vec<NbaTransition>,
}

impl Nba {
    pub fn new(
        aps: ApUniverse,
        num_states: usize,
        mut initial: Vec<usize>,
        mut accepting: Vec<usize>,
        transitions: Vec<NbaTransition>,
    ) -> Result<Self, AutomataError> {
        if aps.len() > MAX_ENUMERATED_PROPOSITIONS {
            return Err(AutomataError::AlphabetTooLarge(aps.len()));
        }
        initial.sort_unstable();
        initial.dedup();
        accepting.sort_unstable();
        accepting.dedup();
        if initial.is_empty() {
            return Err(AutomataError::NoInitialState);
        }
        let check = |q: usize| {
            if q < num_states {
                Ok(())
            } else {
                Err(AutomataError::StateOutOfRange { state: q, states: num_states })
            }
        };
        initial.iter().chain(&accepting).try_for_each(|&q| check(q))?;
        for t in &transitions {
            check(t.from)?;
            check(t.to)?;
            if let Some(ap) = t.guard.max_ap() {
                if ap >= aps.len() {
                    return Err(AutomataError::UnknownProposition(ap));
                }
            }
        }
        Ok(Self { aps, num_states, initial, accepting, transitions })
    }

    pub fn aps(&self) -> &ApUniverse {
        &self.aps
    }

    pub fn num_states(&self) -> usize {
        self.num_states
    }

    pub fn initial(&self) -> &[usize] {
        &self.initial
    }

    pub fn accepting(&self) -> &[usize] {
        &self.accepting
    }

    pub fn is_accepting(&self, q: usize) -> bool {
        self.accepting.binary_search(&q).is_ok()
    }

    pub fn transitions(&self) -> &[NbaTransition] {
        &self.transitions
    }

    /// `δ(q, l)`: successors of `q` when reading `label`.
    pub fn successors(&self, q: usize, label: Label) -> Vec<usize> {
        let mut out: Vec<usize> =
            self.transitions.iter().filter(|t| t.from == q && t.guard.eval(label)).map(|t| t.to).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// `χ(q_m, q_n)`: all labels enabling a move from `q_m` to `q_n`.
    pub fn chi(&self, from: usize, to: usize) -> LabelSet {
        self.transitions
            .iter()
            .filter(|t| t.from == from && t.to == to)
            .fold(LabelSet::empty(self.aps.len()), |acc, t| acc.union(&t.guard.models(self.aps.len())))
    }
}

/// A pair of NBA states joined by at least one transition, with its `χ` set.
#[derive(Debug, Clone)]
pub struct ChiPair {
    pub from: usize,
    pub to: usize,
    pub chi: LabelSet,
}

/// Per-pair `χ` sets of an NBA, computed once and shared by product builders.
#[derive(Debug, Clone)]
pub struct TransitionTable {
    width: usize,
    num_states: usize,
    pairs: Vec<ChiPair>,
    by_source: Vec<Vec<u32>>,
}

impl TransitionTable {
    pub fn new(nba: &Nba) -> Self {
        let width = nba.aps().len();
        let mut keys: Vec<(usize, usize)> = nba.transitions().iter().map(|t| (t.from, t.to)).collect();
        keys.sort_unstable();
        keys.dedup();
        let pairs: Vec<ChiPair> =
            keys.into_iter().map(|(from, to)| ChiPair { from, to, chi: nba.chi(from, to) }).collect();
        let mut by_source = alloc::vec![Vec::new(); nba.num_states()];
        for (i, p) in pairs.iter().enumerate() {
            by_source[p.from].push(i as u32);
        }
        Self { width, num_states: nba.num_states(), pairs, by_source }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn num_states(&self) -> usize {
        self.num_states
    }

    pub fn pairs(&self) -> &[ChiPair] {
        &self.pairs
    }

    pub fn pairs_from(&self, q: usize) -> impl Iterator<Item = &ChiPair> + '_ {
        self.by_source[q].iter().map(move |&i| &self.pairs[i as usize])
    }

    /// Looks up `χ(q_m, q_n)`; `None` when no transition joins the pair.
    pub fn chi(&self, from: usize, to: usize) -> Option<&LabelSet> {
        self.pairs_from(from).find(|p| p.to == to).map(|p| &p.chi)
    }

    /// Violation of moving `q_m -> q_n` while the system emits `label`.
    /// `None` when `χ(q_m, q_n)` is empty, i.e. no relaxed transition exists.
    pub fn dist(&self, from: usize, to: usize, label: Label) -> Option<u32> {
        self.chi(from, to).and_then(|chi| chi.min_distance(label))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn eventually_a() -> Nba {
        let aps = ApUniverse::new(["a"]).unwrap();
        Nba::new(
            aps,
            2,
            vec![0],
            vec![1],
            vec![
                NbaTransition { from: 0, guard: Guard::not(Guard::ap(0)), to: 0 },
                NbaTransition { from: 0, guard: Guard::ap(0), to: 1 },
                NbaTransition { from: 1, guard: Guard::True, to: 1 },
            ],
        )
        .unwrap()
    }

    #[test]
    fn rejects_bad_automata() {
        let aps = ApUniverse::new(["a"]).unwrap();
        assert_eq!(Nba::new(aps.clone(), 1, vec![], vec![], vec![]), Err(AutomataError::NoInitialState));
        assert!(matches!(
            Nba::new(aps.clone(), 1, vec![0], vec![], vec![NbaTransition { from: 0, guard: Guard::True, to: 3 }]),
            Err(AutomataError::StateOutOfRange { state: 3, .. })
        ));
        assert_eq!(
            Nba::new(aps, 1, vec![0], vec![], vec![NbaTransition { from: 0, guard: Guard::ap(4), to: 0 }]),
            Err(AutomataError::UnknownProposition(4))
        );
    }

    #[test]
    fn empty_accepting_set_is_allowed() {
        let aps = ApUniverse::new(["a"]).unwrap();
        let nba = Nba::new(aps, 1, vec![0], vec![], vec![]).unwrap();
        assert!(nba.accepting().is_empty());
    }

    #[test]
    fn chi_examples() {
        let ab = ApUniverse::new(["a", "b"]).unwrap();
        let nba = Nba::new(
            ab.clone(),
            2,
            vec![0],
            vec![],
            vec![NbaTransition { from: 0, guard: Guard::cube(&[(0, true), (1, false)]), to: 1 }],
        )
        .unwrap();
        assert_eq!(nba.chi(0, 1).iter().collect::<Vec<_>>(), [ab.label(&["a"]).unwrap()]);
        assert!(nba.chi(1, 0).is_empty());

        let a = eventually_a();
        let all: Vec<_> = a.chi(1, 1).iter().collect();
        assert_eq!(all, a.aps().all_labels().collect::<Vec<_>>());
    }

    #[test]
    fn successors_follow_guards() {
        let nba = eventually_a();
        let u = nba.aps().clone();
        assert_eq!(nba.successors(0, u.label(&["a"]).unwrap()), [1]);
        assert_eq!(nba.successors(0, u.empty_label()), [0]);
        let table = TransitionTable::new(&nba);
        assert_eq!(table.pairs().len(), 3);
        assert_eq!(table.dist(0, 1, u.empty_label()), Some(1));
        assert_eq!(table.dist(1, 0, u.empty_label()), None);
    }
}
