//! Finite formal sums of pairwise-irreducible terms — the one-variable
//! symbolic polynomial space.
//!
//! A [`SymPoly`] is a nonempty set of [`Term`]s, no two of which share an
//! ordering key `(l, iota)`, held in the canonical ascending order. Addition
//! folds compatible cross pairs coefficient-wise and keeps every unmatched
//! term, which makes the space a commutative semigroup. The irreducibility
//! sets `Ir({eta_i})` — elements none of whose terms collide with any term
//! of the given directions — are the domain on which the shift operators of
//! [`crate::shifts`] act.

use std::fmt;

use crate::error::AlgebraError;
use crate::term_algebra::Term;

/// A finite formal sum of pairwise-irreducible terms under one cap, kept
/// sorted ascending by `(l, iota)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SymPoly {
    terms: Vec<Term>,
}

impl SymPoly {
    /// Builds a formal sum from terms in any order, sorting them into
    /// canonical form. Rejects empty input, mixed caps, and any compatible
    /// pair (reported by its positions in the input).
    pub fn new(terms: Vec<Term>) -> Result<SymPoly, AlgebraError> {
        if terms.is_empty() {
            return Err(AlgebraError::EmptyTerms);
        }
        let cap = terms[0].cap();
        if terms.iter().any(|t| t.cap() != cap) {
            return Err(AlgebraError::MixedCaps);
        }
        for i in 0..terms.len() {
            for j in i + 1..terms.len() {
                if terms[i].is_compatible(&terms[j]) {
                    return Err(AlgebraError::NotIrreducible(i, j));
                }
            }
        }
        let mut terms = terms;
        terms.sort_by_key(Term::key);
        Ok(SymPoly { terms })
    }

    /// Wraps a single term.
    pub fn single(term: Term) -> SymPoly {
        SymPoly { terms: vec![term] }
    }

    /// The terms in canonical ascending order.
    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    /// The ambient cap shared by all terms.
    pub fn cap(&self) -> usize {
        self.terms[0].cap()
    }

    /// Semigroup addition: compatible cross pairs fold coefficient-wise,
    /// unmatched terms are kept, and the union is returned in canonical
    /// order. The result has `|x| + |y| - |folded pairs|` terms.
    ///
    /// Implemented as a single merge of the two sorted term lists keyed on
    /// `(l, iota)`; a key collision is exactly a compatible pair.
    pub fn add(&self, other: &SymPoly) -> Result<SymPoly, AlgebraError> {
        if self.cap() != other.cap() {
            return Err(AlgebraError::MixedCaps);
        }
        let mut merged = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let a = &self.terms[i];
            let b = &other.terms[j];
            if a.key() == b.key() {
                merged.push(a.add_compatible(b)?);
                i += 1;
                j += 1;
            } else if a.key() < b.key() {
                merged.push(a.clone());
                i += 1;
            } else {
                merged.push(b.clone());
                j += 1;
            }
        }
        merged.extend_from_slice(&self.terms[i..]);
        merged.extend_from_slice(&other.terms[j..]);
        debug_assert!(merged.windows(2).all(|w| w[0].key() < w[1].key()));
        Ok(SymPoly { terms: merged })
    }

    /// The bullet action of a vector on every term; keys are untouched, so
    /// canonical order and irreducibility survive.
    pub fn scale(&self, r: &[i64]) -> Result<SymPoly, AlgebraError> {
        let terms = self
            .terms
            .iter()
            .map(|t| t.scale(r))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(SymPoly { terms })
    }
}

/// True iff no term of `x` is compatible with any term of any direction in
/// `etas` — membership in the intersection of the `Ir({eta_i})`.
pub fn in_ir(x: &SymPoly, etas: &[SymPoly]) -> Result<bool, AlgebraError> {
    for eta in etas {
        if eta.cap() != x.cap() {
            return Err(AlgebraError::MixedCaps);
        }
        for t in x.terms() {
            if eta.terms().iter().any(|u| t.is_compatible(u)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A deterministic element of the common irreducible set of `etas`: the
/// singleton of length one whose head is one more than the largest head
/// appearing in any direction, so it collides with nothing.
pub fn fresh_ir_element(etas: &[SymPoly]) -> Result<SymPoly, AlgebraError> {
    if etas.is_empty() {
        return Err(AlgebraError::EmptyTerms);
    }
    let cap = etas[0].cap();
    if etas.iter().any(|e| e.cap() != cap) {
        return Err(AlgebraError::MixedCaps);
    }
    let max_iota = etas
        .iter()
        .flat_map(|e| e.terms())
        .map(Term::iota)
        .max()
        .expect("etas are nonempty");
    let iota = max_iota.checked_add(1).ok_or(AlgebraError::Overflow)?;
    Ok(SymPoly::single(Term::new(iota, vec![1], cap)?))
}

impl fmt::Display for SymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}
