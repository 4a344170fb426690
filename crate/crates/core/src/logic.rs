//! Atomic propositions, labels, and the violation metric between labels.
//!
//! A label is a subset of the proposition universe stored as a bit pattern, so
//! the metric `rho` is an XOR followed by a popcount.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

/// Hard cap on the number of propositions; labels are `u64` bit patterns.
pub const MAX_PROPOSITIONS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LogicError {
    #[error("proposition names must be non-empty")]
    EmptyName,
    #[error("duplicate proposition `{0}`")]
    DuplicateName(String),
    #[error("{0} propositions exceed the limit of {MAX_PROPOSITIONS}")]
    TooManyPropositions(usize),
    #[error("proposition index {index} is outside a universe of {size}")]
    IndexOutOfUniverse { index: usize, size: usize },
    #[error("unknown proposition `{0}`")]
    UnknownProposition(String),
    #[error("labels belong to universes of different sizes ({0} vs {1})")]
    UniverseMismatch(usize, usize),
    #[error("label bits {bits:#x} do not fit a universe of {size}")]
    BitsOutOfRange { bits: u64, size: usize },
}

/// Ordered set of atomic propositions. The declaration order fixes bit indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ApUniverse {
    names: Vec<String>,
}

impl ApUniverse {
    pub fn new<I, S>(names: I) -> Result<Self, LogicError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.len() > MAX_PROPOSITIONS {
            return Err(LogicError::TooManyPropositions(names.len()));
        }
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() {
                return Err(LogicError::EmptyName);
            }
            if names[..i].contains(name) {
                return Err(LogicError::DuplicateName(name.clone()));
            }
        }
        Ok(Self { names })
    }

    /// Number of propositions `r`.
    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn empty_label(&self) -> Label {
        Label { bits: 0, width: self.len() as u8 }
    }

    pub fn full_label(&self) -> Label {
        Label { bits: low_mask(self.len()), width: self.len() as u8 }
    }

    pub fn label_from_bits(&self, bits: u64) -> Result<Label, LogicError> {
        Label::new(bits, self.len())
    }

    /// Builds the label containing exactly the named propositions.
    pub fn label<S: AsRef<str>>(&self, members: &[S]) -> Result<Label, LogicError> {
        let mut bits = 0u64;
        for m in members {
            let m = m.as_ref();
            let i = self.index_of(m).ok_or_else(|| LogicError::UnknownProposition(m.into()))?;
            bits |= 1 << i;
        }
        Ok(Label { bits, width: self.len() as u8 })
    }

    /// Every label of `2^AP`, in increasing bit order. Only sensible for small `r`.
    pub fn all_labels(&self) -> impl Iterator<Item = Label> + '_ {
        let width = self.len() as u8;
        (0..=low_mask(self.len())).map(move |bits| Label { bits, width })
    }
}

pub(crate) fn low_mask(width: usize) -> u64 {
    if width >= 64 {
        u64::MAX
    } else {
        (1u64 << width) - 1
    }
}

/// A subset of a proposition universe of size `width`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label {
    bits: u64,
    width: u8,
}

impl Label {
    pub fn new(bits: u64, width: usize) -> Result<Self, LogicError> {
        if width > MAX_PROPOSITIONS {
            return Err(LogicError::TooManyPropositions(width));
        }
        if bits & !low_mask(width) != 0 {
            return Err(LogicError::BitsOutOfRange { bits, size: width });
        }
        Ok(Self { bits, width: width as u8 })
    }

    pub fn bits(self) -> u64 {
        self.bits
    }

    pub fn width(self) -> usize {
        self.width as usize
    }

    pub fn contains(self, ap: usize) -> bool {
        ap < self.width() && self.bits & (1 << ap) != 0
    }

    pub fn len(self) -> u32 {
        self.bits.count_ones()
    }

    pub fn is_empty(self) -> bool {
        self.bits == 0
    }

    /// Unchecked metric for callers that already validated the universe.
    pub(crate) fn distance(self, other: Label) -> u32 {
        (self.bits ^ other.bits).count_ones()
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        let mut first = true;
        for i in 0..self.width() {
            if self.contains(i) {
                if !first {
                    f.write_str(",")?;
                }
                write!(f, "{i}")?;
                first = false;
            }
        }
        f.write_str("}")
    }
}

/// Membership indicator of proposition `ap` in `label`.
pub fn xi(ap: usize, label: Label) -> Result<u8, LogicError> {
    if ap >= label.width() {
        return Err(LogicError::IndexOutOfUniverse { index: ap, size: label.width() });
    }
    Ok(label.contains(ap) as u8)
}

/// Characteristic vector of `label`, indexed by declaration order.
pub fn zeta(label: Label) -> Vec<u8> {
    (0..label.width()).map(|i| label.contains(i) as u8).collect()
}

/// L1 distance between characteristic vectors, i.e. the symmetric-difference size.
pub fn rho(a: Label, b: Label) -> Result<u32, LogicError> {
    if a.width != b.width {
        return Err(LogicError::UniverseMismatch(a.width(), b.width()));
    }
    Ok(a.distance(b))
}
