use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::logic::Label;

/// Largest universe whose alphabet `2^AP` we are willing to enumerate.
pub const MAX_ENUMERATED_PROPOSITIONS: usize = 20;

/// Boolean formula over proposition indices labelling an automaton transition.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Guard {
    True,
    False,
    Ap(usize),
    Not(Box<Guard>),
    And(Box<Guard>, Box<Guard>),
    Or(Box<Guard>, Box<Guard>),
}

impl Guard {
    pub fn ap(i: usize) -> Self {
        Guard::Ap(i)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(g: Guard) -> Self {
        Guard::Not(Box::new(g))
    }

    pub fn and(a: Guard, b: Guard) -> Self {
        Guard::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Guard, b: Guard) -> Self {
        Guard::Or(Box::new(a), Box::new(b))
    }

    /// Conjunction of literals; `true` for an empty slice.
    pub fn cube(literals: &[(usize, bool)]) -> Self {
        literals
            .iter()
            .map(|&(i, positive)| if positive { Guard::Ap(i) } else { Guard::not(Guard::Ap(i)) })
            .reduce(Guard::and)
            .unwrap_or(Guard::True)
    }

    pub fn eval(&self, label: Label) -> bool {
        self.eval_bits(label.bits())
    }

    pub(crate) fn eval_bits(&self, bits: u64) -> bool {
        match self {
            Guard::True => true,
            Guard::False => false,
            Guard::Ap(i) => *i < 64 && bits & (1 << i) != 0,
            Guard::Not(g) => !g.eval_bits(bits),
            Guard::And(a, b) => a.eval_bits(bits) && b.eval_bits(bits),
            Guard::Or(a, b) => a.eval_bits(bits) || b.eval_bits(bits),
        }
    }

    /// Largest proposition index mentioned, if any.
    pub fn max_ap(&self) -> Option<usize> {
        match self {
            Guard::True | Guard::False => None,
            Guard::Ap(i) => Some(*i),
            Guard::Not(g) => g.max_ap(),
            Guard::And(a, b) | Guard::Or(a, b) => match (a.max_ap(), b.max_ap()) {
                (Some(x), Some(y)) => Some(x.max(y)),
                (x, y) => x.or(y),
            },
        }
    }

    /// The set of labels over `width` propositions satisfying the guard,
    /// computed bottom-up over the formula tree with set operations.
    pub fn models(&self, width: usize) -> LabelSet {
        match self {
            Guard::True => LabelSet::full(width),
            Guard::False => LabelSet::empty(width),
            Guard::Ap(i) => LabelSet::with_bit(width, *i),
            Guard::Not(g) => g.models(width).complement(),
            Guard::And(a, b) => a.models(width).intersection(&b.models(width)),
            Guard::Or(a, b) => a.models(width).union(&b.models(width)),
        }
    }
}

impl fmt::Display for Guard {
    /// HOA-style rendering: `t`, `f`, integers, `!`, `&`, `|`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Guard::True => f.write_str("t"),
            Guard::False => f.write_str("f"),
            Guard::Ap(i) => write!(f, "{i}"),
            Guard::Not(g) => match **g {
                Guard::And(..) | Guard::Or(..) => write!(f, "!({g})"),
                _ => write!(f, "!{g}"),
            },
            Guard::And(a, b) => {
                let wrap = |g: &Guard| matches!(g, Guard::Or(..));
                if wrap(a) { write!(f, "({a})")? } else { write!(f, "{a}")? }
                f.write_str("&")?;
                if wrap(b) { write!(f, "({b})") } else { write!(f, "{b}") }
            }
            Guard::Or(a, b) => write!(f, "{a} | {b}"),
        }
    }
}

/// Bitset over the alphabet `2^AP` for a universe of `width` propositions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LabelSet {
    width: usize,
    words: Vec<u64>,
}

impl LabelSet {
    fn alphabet_size(width: usize) -> usize {
        assert!(
            width <= MAX_ENUMERATED_PROPOSITIONS,
            "alphabet of {width} propositions is too large to enumerate"
        );
        1usize << width
    }

    pub fn empty(width: usize) -> Self {
        let n = Self::alphabet_size(width);
        Self { width, words: vec![0; n.div_ceil(64)] }
    }

    pub fn full(width: usize) -> Self {
        Self::empty(width).complement()
    }

    fn with_bit(width: usize, ap: usize) -> Self {
        let mut set = Self::empty(width);
        if ap < width {
            for label in 0..Self::alphabet_size(width) {
                if label & (1 << ap) != 0 {
                    set.insert_bits(label as u64);
                }
            }
        }
        set
    }

    pub fn width(&self) -> usize {
        self.width
    }

    fn insert_bits(&mut self, bits: u64) {
        self.words[(bits / 64) as usize] |= 1 << (bits % 64);
    }

    pub fn insert(&mut self, label: Label) {
        debug_assert_eq!(label.width(), self.width);
        self.insert_bits(label.bits());
    }

    pub fn contains(&self, label: Label) -> bool {
        self.contains_bits(label.bits())
    }

    pub(crate) fn contains_bits(&self, bits: u64) -> bool {
        let word = (bits / 64) as usize;
        word < self.words.len() && self.words[word] & (1 << (bits % 64)) != 0
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn complement(mut self) -> Self {
        let n = Self::alphabet_size(self.width);
        for w in &mut self.words {
            *w = !*w;
        }
        let tail = n % 64;
        if tail != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << tail) - 1;
            }
        }
        self
    }

    pub fn union(mut self, other: &Self) -> Self {
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w |= o;
        }
        self
    }

    pub fn intersection(mut self, other: &Self) -> Self {
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w &= o;
        }
        self
    }

    /// Members in increasing bit order.
    pub fn iter(&self) -> impl Iterator<Item = Label> + '_ {
        let width = self.width;
        self.words.iter().enumerate().flat_map(move |(wi, &word)| {
            let mut rest = word;
            core::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let bit = rest.trailing_zeros() as u64;
                rest &= rest - 1;
                Some(Label::new(wi as u64 * 64 + bit, width).expect("bit within alphabet"))
            })
        })
    }

    /// `min_{l' in self} rho(label, l')`, or `None` for the empty set.
    pub fn min_distance(&self, label: Label) -> Option<u32> {
        if self.contains(label) {
            return Some(0);
        }
        self.iter().map(|l| l.distance(label)).min()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::ApUniverse;

    #[test]
    fn models_of_cube() {
        let u = ApUniverse::new(["a", "b"]).unwrap();
        let g = Guard::cube(&[(0, true), (1, false)]);
        let models: Vec<_> = g.models(2).iter().collect();
        assert_eq!(models, [u.label(&["a"]).unwrap()]);
    }

    #[test]
    fn true_models_everything() {
        let set = Guard::True.models(1);
        assert_eq!(set.len(), 2);
        assert!(Guard::False.models(3).is_empty());
    }

    #[test]
    fn complement_clears_padding() {
        // 2^3 = 8 labels fit in one partially used word
        let set = LabelSet::empty(3).complement();
        assert_eq!(set.len(), 8);
        assert_eq!(set.words[0], 0xff);
    }

    #[test]
    fn display_round_trips_precedence() {
        let g = Guard::or(Guard::and(Guard::ap(0), Guard::not(Guard::ap(1))), Guard::and(Guard::ap(1), Guard::ap(2)));
        assert_eq!(alloc::format!("{g}"), "0&!1 | 1&2");
        let h = Guard::and(Guard::or(Guard::ap(0), Guard::ap(1)), Guard::not(Guard::or(Guard::ap(2), Guard::True)));
        assert_eq!(alloc::format!("{h}"), "(0 | 1)&!(2 | t)");
    }

    #[test]
    fn min_distance_cases() {
        let u = ApUniverse::new(["a", "b"]).unwrap();
        let chi = Guard::and(Guard::ap(0), Guard::ap(1)).models(2);
        assert_eq!(chi.min_distance(u.label(&["a"]).unwrap()), Some(1));
        assert_eq!(chi.min_distance(u.full_label()), Some(0));
        assert_eq!(LabelSet::empty(2).min_distance(u.empty_label()), None);
    }
}
