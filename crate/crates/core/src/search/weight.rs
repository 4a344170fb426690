use core::cmp::Ordering;
use core::fmt;
use core::ops::Add;

/// `(violation, travel)` cost, ordered lexicographically.
///
/// Violation always dominates travel, which is the limit of weighting the
/// violation by an arbitrarily large constant. A travel component of
/// `u64::MAX` denotes infinity; infinite weights are normalised so that they
/// compare above every finite weight and absorb under addition.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight {
    violation: u64,
    travel: u64,
}

impl Weight {
    pub const ZERO: Weight = Weight { violation: 0, travel: 0 };
    pub const INFINITY: Weight = Weight { violation: u64::MAX, travel: u64::MAX };

    pub fn new(violation: u64, travel: u64) -> Self {
        if violation == u64::MAX || travel == u64::MAX {
            Self::INFINITY
        } else {
            Self { violation, travel }
        }
    }

    pub fn travel(travel: u64) -> Self {
        Self::new(0, travel)
    }

    pub fn violation(self) -> u64 {
        self.violation
    }

    pub fn travel_cost(self) -> u64 {
        self.travel
    }

    pub fn is_infinite(self) -> bool {
        self == Self::INFINITY
    }

    pub fn is_finite(self) -> bool {
        !self.is_infinite()
    }

    /// Componentwise scaling `β ⊙ w`; infinity stays infinite.
    pub fn scale(self, beta: u64) -> Self {
        if self.is_infinite() {
            return self;
        }
        match (self.violation.checked_mul(beta), self.travel.checked_mul(beta)) {
            (Some(v), Some(t)) => Self::new(v, t),
            _ => Self::INFINITY,
        }
    }

    /// Adds heuristic or key-modifier travel units.
    pub fn plus_travel(self, travel: u64) -> Self {
        self + Weight::travel(travel)
    }
}

impl Add for Weight {
    type Output = Weight;

    fn add(self, rhs: Weight) -> Weight {
        if self.is_infinite() || rhs.is_infinite() {
            return Weight::INFINITY;
        }
        match (self.violation.checked_add(rhs.violation), self.travel.checked_add(rhs.travel)) {
            (Some(v), Some(t)) => Weight::new(v, t),
            _ => Weight::INFINITY,
        }
    }
}

impl core::iter::Sum for Weight {
    fn sum<I: Iterator<Item = Weight>>(iter: I) -> Weight {
        iter.fold(Weight::ZERO, Add::add)
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            f.write_str("∞")
        } else {
            write!(f, "({}, {})", self.violation, self.travel)
        }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Priority of a state in the D* Lite queue.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Key {
    pub k1: Weight,
    pub k2: Weight,
}

impl Key {
    pub const INFINITY: Key = Key { k1: Weight::INFINITY, k2: Weight::INFINITY };
}

impl Ord for Key {
    fn cmp(&self, other: &Self) -> Ordering {
        self.k1.cmp(&other.k1).then(self.k2.cmp(&other.k2))
    }
}

impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
