//! Boolean assignments and labeled sample sets.

use alloc::collections::BTreeMap;
use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

const WORD: usize = 64;

/// A point of `{0,1}^n`. Variables are numbered `1..=n`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Assignment {
    n: usize,
    words: Vec<u64>,
}

impl Assignment {
    pub fn zeros(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyWidth);
        }
        Ok(Self {
            n,
            words: alloc::vec![0; n.div_ceil(WORD)],
        })
    }

    pub fn from_bools(bits: &[bool]) -> Result<Self> {
        let mut x = Self::zeros(bits.len())?;
        for (i, &b) in bits.iter().enumerate() {
            x.set(i + 1, b);
        }
        Ok(x)
    }

    /// Parses a string of `0`/`1` characters; character `i` is variable `i + 1`.
    pub fn parse_bits(s: &str) -> Option<Self> {
        let bits: Option<Vec<bool>> = s
            .chars()
            .map(|c| match c {
                '0' => Some(false),
                '1' => Some(true),
                _ => None,
            })
            .collect();
        Self::from_bools(&bits?).ok()
    }

    /// Builds the assignment whose `i`-th variable is bit `i - 1` of `value`.
    pub fn from_index(n: usize, value: u64) -> Result<Self> {
        let mut x = Self::zeros(n)?;
        for var in 1..=n.min(64) {
            x.set(var, value >> (var - 1) & 1 == 1);
        }
        Ok(x)
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, var: usize) -> bool {
        debug_assert!(var >= 1 && var <= self.n);
        let i = var - 1;
        self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, var: usize, value: bool) {
        debug_assert!(var >= 1 && var <= self.n);
        let i = var - 1;
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    pub fn bits(&self) -> impl Iterator<Item = bool> + '_ {
        (1..=self.n).map(move |v| self.get(v))
    }

    /// Variables set to `value`, in increasing order.
    pub fn vars_with(&self, value: bool) -> impl Iterator<Item = usize> + '_ {
        (1..=self.n).filter(move |&v| self.get(v) == value)
    }

    pub fn complement(&self) -> Self {
        let mut out = self.clone();
        for w in &mut out.words {
            *w = !*w;
        }
        out.clear_padding();
        out
    }

    /// Keeps only the listed variables, renumbered `1..=vars.len()` in list order.
    pub fn project(&self, vars: &[usize]) -> Result<Self> {
        let mut out = Self::zeros(vars.len())?;
        for (i, &v) in vars.iter().enumerate() {
            out.set(i + 1, self.get(v));
        }
        Ok(out)
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }

    fn clear_padding(&mut self) {
        let rem = self.n % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.bits() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Assignment({self})")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledSample {
    pub assignment: Assignment,
    pub label: bool,
}

impl LabeledSample {
    pub fn new(assignment: Assignment, label: bool) -> Self {
        Self { assignment, label }
    }
}

/// An ordered list of labeled samples over a common width with pairwise
/// distinct assignments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleSet {
    n: usize,
    samples: Vec<LabeledSample>,
}

impl SampleSet {
    pub fn empty(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyWidth);
        }
        Ok(Self {
            n,
            samples: Vec::new(),
        })
    }

    /// Validates widths and distinctness. A repeated assignment with the same
    /// label is dropped (first occurrence kept); with a different label it is
    /// rejected.
    pub fn new(n: usize, samples: impl IntoIterator<Item = LabeledSample>) -> Result<Self> {
        let mut set = Self::empty(n)?;
        let mut seen: BTreeMap<Assignment, bool> = BTreeMap::new();
        for s in samples {
            if s.assignment.width() != n {
                return Err(Error::WidthMismatch {
                    expected: n,
                    found: s.assignment.width(),
                });
            }
            match seen.get(&s.assignment) {
                Some(&label) if label == s.label => continue,
                Some(_) => return Err(Error::ConflictingLabels(s.assignment.to_string())),
                None => {
                    seen.insert(s.assignment.clone(), s.label);
                    set.samples.push(s);
                }
            }
        }
        Ok(set)
    }

    /// Convenience constructor from `("0110", label)` pairs.
    pub fn from_strs(pairs: &[(&str, bool)]) -> Result<Self> {
        let n = pairs.first().map_or(1, |(s, _)| s.len());
        let samples = pairs
            .iter()
            .map(|(s, l)| {
                Assignment::parse_bits(s)
                    .map(|x| LabeledSample::new(x, *l))
                    .ok_or(Error::EmptyWidth)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, samples)
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn samples(&self) -> &[LabeledSample] {
        &self.samples
    }

    pub fn iter(&self) -> core::slice::Iter<'_, LabeledSample> {
        self.samples.iter()
    }

    pub fn assignments(&self) -> impl Iterator<Item = &Assignment> {
        self.samples.iter().map(|s| &s.assignment)
    }

    pub fn positives(&self) -> impl Iterator<Item = &Assignment> {
        self.samples
            .iter()
            .filter(|s| s.label)
            .map(|s| &s.assignment)
    }

    pub fn negatives(&self) -> impl Iterator<Item = &Assignment> {
        self.samples
            .iter()
            .filter(|s| !s.label)
            .map(|s| &s.assignment)
    }

    pub fn with_flipped_labels(&self) -> Self {
        Self {
            n: self.n,
            samples: self
                .samples
                .iter()
                .map(|s| LabeledSample::new(s.assignment.clone(), !s.label))
                .collect(),
        }
    }

    pub fn with_complemented_assignments(&self) -> Self {
        Self {
            n: self.n,
            samples: self
                .samples
                .iter()
                .map(|s| LabeledSample::new(s.assignment.complement(), s.label))
                .collect(),
        }
    }

    pub fn into_samples(self) -> Vec<LabeledSample> {
        self.samples
    }

    /// Label of `x` if it is one of the samples.
    pub fn label_of(&self, x: &Assignment) -> Option<bool> {
        self.samples
            .iter()
            .find(|s| &s.assignment == x)
            .map(|s| s.label)
    }
}

impl<'a> IntoIterator for &'a SampleSet {
    type Item = &'a LabeledSample;
    type IntoIter = core::slice::Iter<'a, LabeledSample>;

    fn into_iter(self) -> Self::IntoIter {
        self.samples.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bit_roundtrip_and_complement() {
        let x = Assignment::parse_bits("101").unwrap();
        assert!(x.get(1) && !x.get(2) && x.get(3));
        assert_eq!(x.complement().to_string(), "010");
        assert_eq!(x.complement().complement(), x);
    }

    #[test]
    fn complement_clears_padding_for_equality() {
        let x = Assignment::zeros(70).unwrap();
        let y = x.complement();
        assert_eq!(y.vars_with(true).count(), 70);
        assert_eq!(y.complement(), x);
    }

    #[test]
    fn zero_width_rejected() {
        assert_eq!(Assignment::zeros(0), Err(Error::EmptyWidth));
        assert!(Assignment::parse_bits("").is_none());
    }

    #[test]
    fn duplicate_equal_labels_are_deduplicated() {
        let s = SampleSet::from_strs(&[("10", true), ("10", true), ("01", false)]).unwrap();
        assert_eq!(s.len(), 2);
    }

    #[test]
    fn conflicting_labels_rejected() {
        let err = SampleSet::from_strs(&[("1", true), ("1", false)]).unwrap_err();
        assert_eq!(err, Error::ConflictingLabels("1".into()));
    }

    #[test]
    fn width_mismatch_rejected() {
        let x = Assignment::parse_bits("10").unwrap();
        let err = SampleSet::new(3, [LabeledSample::new(x, true)]).unwrap_err();
        assert_eq!(
            err,
            Error::WidthMismatch {
                expected: 3,
                found: 2
            }
        );
    }
}
