//! DNF and CNF formulas, their semantics, and the two standard transforms:
//! De Morgan dualization and polarity flipping.

use alloc::vec::Vec;
use core::fmt;

use crate::assignment::{Assignment, SampleSet};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub var: usize,
    pub positive: bool,
}

impl Literal {
    pub fn pos(var: usize) -> Self {
        Self {
            var,
            positive: true,
        }
    }

    pub fn neg(var: usize) -> Self {
        Self {
            var,
            positive: false,
        }
    }

    #[inline]
    pub fn satisfied_by(&self, x: &Assignment) -> bool {
        x.get(self.var) == self.positive
    }

    pub fn negated(self) -> Self {
        Self {
            var: self.var,
            positive: !self.positive,
        }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.positive {
            write!(f, "x{}", self.var)
        } else {
            write!(f, "!x{}", self.var)
        }
    }
}

/// Literals sorted by variable; at most one literal per variable.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct LiteralSet(Vec<Literal>);

impl LiteralSet {
    fn new(literals: impl IntoIterator<Item = Literal>) -> Result<Self> {
        let mut lits: Vec<Literal> = literals.into_iter().collect();
        lits.sort_unstable();
        lits.dedup();
        for w in lits.windows(2) {
            if w[0].var == w[1].var {
                return Err(Error::ContradictoryLiterals(w[0].var));
            }
        }
        if let Some(l) = lits.first() {
            if l.var == 0 {
                return Err(Error::VariableOutOfRange { var: 0, n: 0 });
            }
        }
        Ok(Self(lits))
    }

    fn max_var(&self) -> usize {
        self.0.last().map_or(0, |l| l.var)
    }

    fn find(&self, var: usize) -> Option<Literal> {
        self.0
            .binary_search_by_key(&var, |l| l.var)
            .ok()
            .map(|i| self.0[i])
    }

    fn negated(&self) -> Self {
        Self(self.0.iter().map(|l| l.negated()).collect())
    }
}

macro_rules! literal_set_newtype {
    ($name:ident) => {
        #[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub struct $name(LiteralSet);

        impl $name {
            /// Sorts and deduplicates; a variable with both polarities is an error.
            pub fn new(literals: impl IntoIterator<Item = Literal>) -> Result<Self> {
                LiteralSet::new(literals).map(Self)
            }

            pub fn empty() -> Self {
                Self::default()
            }

            pub fn literals(&self) -> &[Literal] {
                &(self.0).0
            }

            pub fn len(&self) -> usize {
                (self.0).0.len()
            }

            pub fn is_empty(&self) -> bool {
                (self.0).0.is_empty()
            }

            pub fn max_var(&self) -> usize {
                self.0.max_var()
            }

            /// The literal on `var`, if any.
            pub fn literal_on(&self, var: usize) -> Option<Literal> {
                self.0.find(var)
            }

            pub fn flip_polarity(&self) -> Self {
                Self(self.0.negated())
            }

            /// Same literals with `var` dropped.
            pub fn without_var(&self, var: usize) -> Self {
                Self(LiteralSet(
                    (self.0)
                        .0
                        .iter()
                        .copied()
                        .filter(|l| l.var != var)
                        .collect(),
                ))
            }

            /// Adds `lit`; fails if the opposite literal is present.
            pub fn with_literal(&self, lit: Literal) -> Result<Self> {
                Self::new(self.literals().iter().copied().chain(core::iter::once(lit)))
            }
        }
    };
}

literal_set_newtype!(Term);
literal_set_newtype!(Clause);

impl Term {
    /// A conjunction is true iff every literal holds; the empty term is true.
    #[inline]
    pub fn satisfied_by(&self, x: &Assignment) -> bool {
        self.literals().iter().all(|l| l.satisfied_by(x))
    }

    /// The conjunction true exactly on `x`.
    pub fn exact(x: &Assignment) -> Self {
        Self(LiteralSet(
            (1..=x.width())
                .map(|v| Literal {
                    var: v,
                    positive: x.get(v),
                })
                .collect(),
        ))
    }
}

impl Clause {
    /// A disjunction is true iff some literal holds; the empty clause is false.
    #[inline]
    pub fn satisfied_by(&self, x: &Assignment) -> bool {
        self.literals().iter().any(|l| l.satisfied_by(x))
    }
}

fn write_joined(f: &mut fmt::Formatter<'_>, lits: &[Literal], sep: &str) -> fmt::Result {
    f.write_str("(")?;
    for (i, l) in lits.iter().enumerate() {
        if i > 0 {
            f.write_str(sep)?;
        }
        write!(f, "{l}")?;
    }
    f.write_str(")")
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_joined(f, self.literals(), " & ")
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_joined(f, self.literals(), " | ")
    }
}

/// Shared surface of [`DnfFormula`] and [`CnfFormula`].
pub trait Formula: Sized + Clone {
    type Dual: Formula<Dual = Self>;

    fn width(&self) -> usize;

    /// Evaluates without checking the width.
    fn eval_unchecked(&self, x: &Assignment) -> bool;

    /// De Morgan negation: parts become dual parts with every literal flipped.
    fn dualize(&self) -> Self::Dual;

    /// Flips every literal; evaluates on complemented inputs as the original
    /// does on the originals.
    fn flip_polarity(&self) -> Self;

    fn eval(&self, x: &Assignment) -> Result<bool> {
        if x.width() != self.width() {
            return Err(Error::WidthMismatch {
                expected: self.width(),
                found: x.width(),
            });
        }
        Ok(self.eval_unchecked(x))
    }

    /// True iff the formula labels every sample correctly.
    fn is_consistent_with(&self, samples: &SampleSet) -> bool {
        samples.width() == self.width()
            && samples
                .iter()
                .all(|s| self.eval_unchecked(&s.assignment) == s.label)
    }
}

macro_rules! formula_struct {
    ($name:ident, $part:ident, $field:ident) => {
        #[derive(Debug, Clone, PartialEq, Eq, Hash)]
        pub struct $name {
            n: usize,
            $field: Vec<$part>,
        }

        impl $name {
            pub fn new(n: usize, $field: Vec<$part>) -> Result<Self> {
                if n == 0 {
                    return Err(Error::EmptyWidth);
                }
                for p in &$field {
                    if p.max_var() > n {
                        return Err(Error::VariableOutOfRange {
                            var: p.max_var(),
                            n,
                        });
                    }
                }
                Ok(Self { n, $field })
            }

            pub fn empty(n: usize) -> Result<Self> {
                Self::new(n, Vec::new())
            }

            pub fn $field(&self) -> &[$part] {
                &self.$field
            }

            pub fn len(&self) -> usize {
                self.$field.len()
            }

            pub fn is_empty(&self) -> bool {
                self.$field.is_empty()
            }

            /// Longest part, in literals.
            pub fn max_part_len(&self) -> usize {
                self.$field.iter().map(|p| p.len()).max().unwrap_or(0)
            }
        }
    };
}

formula_struct!(DnfFormula, Term, terms);
formula_struct!(CnfFormula, Clause, clauses);

impl Formula for DnfFormula {
    type Dual = CnfFormula;

    fn width(&self) -> usize {
        self.n
    }

    #[inline]
    fn eval_unchecked(&self, x: &Assignment) -> bool {
        self.terms.iter().any(|t| t.satisfied_by(x))
    }

    fn dualize(&self) -> CnfFormula {
        CnfFormula {
            n: self.n,
            clauses: self.terms.iter().map(|t| Clause(t.0.negated())).collect(),
        }
    }

    fn flip_polarity(&self) -> Self {
        Self {
            n: self.n,
            terms: self.terms.iter().map(Term::flip_polarity).collect(),
        }
    }
}

impl Formula for CnfFormula {
    type Dual = DnfFormula;

    fn width(&self) -> usize {
        self.n
    }

    #[inline]
    fn eval_unchecked(&self, x: &Assignment) -> bool {
        self.clauses.iter().all(|c| c.satisfied_by(x))
    }

    fn dualize(&self) -> DnfFormula {
        DnfFormula {
            n: self.n,
            terms: self.clauses.iter().map(|c| Term(c.0.negated())).collect(),
        }
    }

    fn flip_polarity(&self) -> Self {
        Self {
            n: self.n,
            clauses: self.clauses.iter().map(Clause::flip_polarity).collect(),
        }
    }
}

pub fn eval_dnf(formula: &DnfFormula, x: &Assignment) -> Result<bool> {
    formula.eval(x)
}

pub fn eval_cnf(formula: &CnfFormula, x: &Assignment) -> Result<bool> {
    formula.eval(x)
}

/// Negates the formula and flips every sample label. The dual labels the
/// flipped samples exactly as the original labels the originals.
pub fn dualize<F: Formula>(formula: &F, samples: &SampleSet) -> (F::Dual, SampleSet) {
    (formula.dualize(), samples.with_flipped_labels())
}

/// Complements every sample assignment and flips every literal of the formula.
pub fn flip_polarity_transform<F: Formula>(samples: &SampleSet, formula: &F) -> (SampleSet, F) {
    (
        samples.with_complemented_assignments(),
        formula.flip_polarity(),
    )
}

impl fmt::Display for DnfFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("FALSE");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" | ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

impl fmt::Display for CnfFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.clauses.is_empty() {
            return f.write_str("TRUE");
        }
        for (i, c) in self.clauses.iter().enumerate() {
            if i > 0 {
                f.write_str(" & ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    fn x(s: &str) -> Assignment {
        Assignment::parse_bits(s).unwrap()
    }

    fn term(lits: &[i64]) -> Term {
        Term::new(lits.iter().map(|&l| {
            if l > 0 {
                Literal::pos(l as usize)
            } else {
                Literal::neg((-l) as usize)
            }
        }))
        .unwrap()
    }

    fn clause(lits: &[i64]) -> Clause {
        Clause(term(lits).0)
    }

    #[test]
    fn empty_dnf_is_false_and_empty_cnf_is_true() {
        let d = DnfFormula::empty(3).unwrap();
        let c = CnfFormula::empty(3).unwrap();
        for v in 0..8 {
            let a = Assignment::from_index(3, v).unwrap();
            assert!(!eval_dnf(&d, &a).unwrap());
            assert!(eval_cnf(&c, &a).unwrap());
        }
    }

    #[test]
    fn empty_term_true_empty_clause_false() {
        assert!(Term::empty().satisfied_by(&x("01")));
        assert!(!Clause::empty().satisfied_by(&x("01")));
    }

    #[test]
    fn dnf_examples() {
        let f = DnfFormula::new(2, vec![term(&[1, -2])]).unwrap();
        assert!(eval_dnf(&f, &x("10")).unwrap());
        // Truth-table check: x1&x2 is false on 001, !x3 is false on 001.
        let g = DnfFormula::new(3, vec![term(&[1, 2]), term(&[-3])]).unwrap();
        assert!(!eval_dnf(&g, &x("001")).unwrap());
    }

    #[test]
    fn cnf_examples() {
        let f = CnfFormula::new(2, vec![clause(&[2])]).unwrap();
        assert!(eval_cnf(&f, &x("01")).unwrap());
        let g = CnfFormula::new(3, vec![clause(&[1, -2]), clause(&[3])]).unwrap();
        assert!(!eval_cnf(&g, &x("010")).unwrap());
    }

    #[test]
    fn width_mismatch_is_an_error() {
        let f = DnfFormula::empty(2).unwrap();
        assert_eq!(
            eval_dnf(&f, &x("101")),
            Err(Error::WidthMismatch {
                expected: 2,
                found: 3
            })
        );
    }

    #[test]
    fn contradictory_literals_rejected() {
        assert_eq!(
            Term::new([Literal::pos(2), Literal::neg(2)]),
            Err(Error::ContradictoryLiterals(2))
        );
        assert!(DnfFormula::new(2, vec![term(&[3])]).is_err());
    }

    #[test]
    fn dualize_is_de_morgan() {
        let f = DnfFormula::new(2, vec![term(&[1, -2])]).unwrap();
        assert_eq!(f.dualize().to_string(), "(!x1 | x2)");
        let s = SampleSet::from_strs(&[("10", true), ("01", false)]).unwrap();
        let (_, flipped) = dualize(&f, &s);
        assert_eq!(
            flipped,
            SampleSet::from_strs(&[("10", false), ("01", true)]).unwrap()
        );
    }

    #[test]
    fn flip_polarity_examples() {
        assert_eq!(x("101").complement(), x("010"));
        assert_eq!(term(&[1, -3]).flip_polarity(), term(&[-1, 3]));
    }

    #[test]
    fn display_forms() {
        let f = DnfFormula::new(3, vec![term(&[1, -2]), term(&[]), term(&[3])]).unwrap();
        assert_eq!(f.to_string(), "(x1 & !x2) | () | (x3)");
        assert_eq!(DnfFormula::empty(1).unwrap().to_string(), "FALSE");
        assert_eq!(CnfFormula::empty(1).unwrap().to_string(), "TRUE");
    }
}
