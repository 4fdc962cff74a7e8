//! Representation parameters (κ) and the backdoor distribution parameter (λ).

use alloc::vec;
use alloc::vec::Vec;

use crate::assignment::{Assignment, SampleSet};
use crate::formula::DnfFormula;
use crate::graph::VertexSet;

/// The promised parameter values handed to a learner.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ParamInfo {
    pub k: usize,
    pub ell: usize,
}

impl ParamInfo {
    pub fn new(k: usize, ell: usize) -> Self {
        Self { k, ell }
    }
}

pub fn kappa_term_count(f: &DnfFormula) -> usize {
    f.len()
}

pub fn kappa_max_term_len(f: &DnfFormula) -> usize {
    f.max_part_len()
}

pub fn kappa_subset_size(s: &VertexSet) -> usize {
    s.len()
}

/// A minimum variable set `S` such that every assignment sets at most one
/// variable outside `S` to the pivot value, and every variable outside `S`
/// takes the pivot value in at most one assignment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Backdoor {
    pub pivot: bool,
    /// Sorted, 1-based.
    pub vars: Vec<usize>,
}

impl Backdoor {
    pub fn ell(&self) -> usize {
        self.vars.len()
    }

    pub fn membership(&self, n: usize) -> Vec<bool> {
        let mut m = vec![false; n + 1];
        for &v in &self.vars {
            m[v] = true;
        }
        m
    }
}

pub fn lambda_backdoor(samples: &SampleSet, pivot: bool) -> Backdoor {
    lambda_backdoor_of(samples.width(), samples.assignments(), pivot)
}

/// Variables taking the pivot value in two or more assignments are forced
/// into `S`. Every other pivot variable occurs in exactly one row, so rows
/// are independent: each keeps its lowest such variable outside `S` and
/// contributes the rest.
pub fn lambda_backdoor_of<'a>(
    n: usize,
    xs: impl IntoIterator<Item = &'a Assignment>,
    pivot: bool,
) -> Backdoor {
    let xs: Vec<&Assignment> = xs.into_iter().collect();
    let mut count = vec![0usize; n + 1];
    for x in &xs {
        for v in x.vars_with(pivot) {
            count[v] += 1;
        }
    }
    let mut in_s: Vec<bool> = count.iter().map(|&c| c >= 2).collect();
    for x in &xs {
        let mut kept = false;
        for v in x.vars_with(pivot) {
            if count[v] >= 2 {
                continue;
            }
            if kept {
                in_s[v] = true;
            } else {
                kept = true;
            }
        }
    }
    Backdoor {
        pivot,
        vars: (1..=n).filter(|&v| in_s[v]).collect(),
    }
}

/// Checks both backdoor conditions for `vars` directly.
pub fn is_backdoor<'a>(
    n: usize,
    xs: impl IntoIterator<Item = &'a Assignment>,
    pivot: bool,
    vars: &[usize],
) -> bool {
    let mut in_s = vec![false; n + 1];
    for &v in vars {
        if v == 0 || v > n {
            return false;
        }
        in_s[v] = true;
    }
    let mut seen = vec![false; n + 1];
    for x in xs {
        let mut outside = 0;
        for v in x.vars_with(pivot).filter(|&v| !in_s[v]) {
            outside += 1;
            if seen[v] {
                return false;
            }
            seen[v] = true;
        }
        if outside > 1 {
            return false;
        }
    }
    true
}
