//! Single symbolic terms: a head value and a short string of inner
//! coefficients, living under an ambient length cap.
//!
//! A [`Term`] models the string `(a0
//! 1_0)(a1 1_1)...(al 1_l)`: `iota` is the head `a0`, `coeffs` the inner
//! coefficients `a1..al`, and `cap` the ambient bound on `l`. Two terms fold
//! under addition only when they are *compatible* (same length, same head);
//! otherwise they are *irreducible* and can only sit side by side in a
//! formal sum (see [`crate::sympoly`]).

use std::fmt;

use crate::error::AlgebraError;

/// A symbolic term with head `iota`, inner coefficients `coeffs`
/// (length `1..=cap`), and its ambient cap.
///
/// Equality is positional: same length, same head, and identical inner
/// coefficients entry by entry. Zero coefficients are significant —
/// `T{1;1,0}` and `T{1;1}` are different terms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Term {
    iota: i64,
    coeffs: Vec<i64>,
    cap: usize,
}

impl Term {
    /// Builds a term, rejecting empty coefficient lists and lengths beyond
    /// the cap.
    pub fn new(iota: i64, coeffs: Vec<i64>, cap: usize) -> Result<Term, AlgebraError> {
        if coeffs.is_empty() {
            return Err(AlgebraError::EmptyCoeffs);
        }
        if coeffs.len() > cap {
            return Err(AlgebraError::CapExceeded { len: coeffs.len(), cap });
        }
        Ok(Term { iota, coeffs, cap })
    }

    /// The head value `a0`.
    pub fn iota(&self) -> i64 {
        self.iota
    }

    /// The inner coefficients `a1..al`.
    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// The structural length `l` (number of inner coefficients), always
    /// at least 1.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    /// The ambient cap `k`.
    pub fn cap(&self) -> usize {
        self.cap
    }

    /// The ordering key `(l, iota)`; terms with equal keys are exactly the
    /// compatible ones.
    pub fn key(&self) -> (usize, i64) {
        (self.coeffs.len(), self.iota)
    }

    /// True iff the two terms fold under addition: same cap, same length,
    /// same head. `irreducible` is the negation.
    pub fn is_compatible(&self, other: &Term) -> bool {
        self.cap == other.cap && self.key() == other.key()
    }

    /// Coefficient-wise sum of two compatible terms; head and length are
    /// preserved.
    pub fn add_compatible(&self, other: &Term) -> Result<Term, AlgebraError> {
        if !self.is_compatible(other) {
            return Err(AlgebraError::NotCompatible);
        }
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.checked_add(*b).ok_or(AlgebraError::Overflow))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Term { iota: self.iota, coeffs, cap: self.cap })
    }

    /// The bullet action of a vector on a single term: slot `j` of the inner
    /// coefficients is multiplied by `r[j]`; the head is untouched.
    pub fn scale(&self, r: &[i64]) -> Result<Term, AlgebraError> {
        if r.len() < self.coeffs.len() {
            return Err(AlgebraError::VectorTooShort { need: self.coeffs.len(), got: r.len() });
        }
        let coeffs = self
            .coeffs
            .iter()
            .zip(r)
            .map(|(c, s)| c.checked_mul(*s).ok_or(AlgebraError::Overflow))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Term { iota: self.iota, coeffs, cap: self.cap })
    }
}

/// The strict order on terms: shorter length first, then smaller head.
///
/// This is total only on pairwise-irreducible sets; a compatible pair of
/// distinct terms satisfies neither `order_less(t, u)` nor
/// `order_less(u, t)`.
pub fn order_less(t: &Term, u: &Term) -> bool {
    t.key() < u.key()
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T{{{};", self.iota)?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(iota: i64, coeffs: &[i64]) -> Term {
        Term::new(iota, coeffs.to_vec(), 4).unwrap()
    }

    #[test]
    fn construction_carries_fields() {
        let term = t(2, &[3, -1]);
        assert_eq!(term.iota(), 2);
        assert_eq!(term.coeffs(), &[3, -1]);
        assert_eq!(term.len(), 2);
        assert_eq!(term.cap(), 4);
    }

    #[test]
    fn construction_rejects_empty_and_overlong() {
        assert_eq!(Term::new(0, vec![], 4), Err(AlgebraError::EmptyCoeffs));
        assert_eq!(
            Term::new(5, vec![1, 1, 1, 1, 1], 4),
            Err(AlgebraError::CapExceeded { len: 5, cap: 4 })
        );
    }

    #[test]
    fn equality_is_positional_and_keeps_zeros() {
        assert_eq!(t(1, &[1, 0]), t(1, &[1, 0]));
        assert_ne!(t(1, &[1, 0]), t(1, &[1]));
        assert_ne!(t(1, &[1]), t(2, &[1]));
    }

    #[test]
    fn compatibility_needs_same_length_and_head() {
        assert!(t(2, &[3]).is_compatible(&t(2, &[5])));
        assert!(!t(2, &[3]).is_compatible(&t(3, &[3])));
        assert!(!t(2, &[3]).is_compatible(&t(2, &[3, 0])));
    }

    #[test]
    fn compatibility_rejects_cross_cap() {
        let a = Term::new(2, vec![3], 2).unwrap();
        let b = Term::new(2, vec![3], 3).unwrap();
        assert!(!a.is_compatible(&b));
    }

    #[test]
    fn order_prefers_short_then_small_head() {
        assert!(order_less(&t(9, &[1]), &t(0, &[1, 1])));
        assert!(order_less(&t(1, &[7]), &t(2, &[0])));
        // A compatible pair is mutually non-less.
        assert!(!order_less(&t(1, &[7]), &t(1, &[8])));
        assert!(!order_less(&t(1, &[8]), &t(1, &[7])));
    }

    #[test]
    fn compatible_addition_folds_coefficients() {
        assert_eq!(t(2, &[3]).add_compatible(&t(2, &[5])).unwrap(), t(2, &[8]));
        assert_eq!(t(1, &[2, -2]).add_compatible(&t(1, &[-2, 2])).unwrap(), t(1, &[0, 0]));
        assert_eq!(t(2, &[3, 4]).add_compatible(&t(2, &[5, 6])).unwrap(), t(2, &[8, 10]));
        assert_eq!(t(2, &[3]).add_compatible(&t(3, &[3])), Err(AlgebraError::NotCompatible));
    }

    #[test]
    fn compatible_addition_reports_overflow() {
        assert_eq!(
            t(1, &[i64::MAX]).add_compatible(&t(1, &[1])),
            Err(AlgebraError::Overflow)
        );
    }

    #[test]
    fn scaling_touches_inner_slots_only() {
        assert_eq!(t(5, &[1, 1]).scale(&[2, 3]).unwrap(), t(5, &[2, 3]));
        assert_eq!(t(5, &[4, -2]).scale(&[1, 1, 1, 1]).unwrap(), t(5, &[4, -2]));
        assert_eq!(t(5, &[7]).scale(&[0]).unwrap(), t(5, &[0]));
        assert_eq!(
            t(4, &[1, 1]).scale(&[2]),
            Err(AlgebraError::VectorTooShort { need: 2, got: 1 })
        );
        assert_eq!(t(1, &[i64::MAX]).scale(&[2]), Err(AlgebraError::Overflow));
    }

    #[test]
    fn scaling_distributes_over_compatible_addition() {
        let a = t(3, &[2, -1]);
        let b = t(3, &[4, 7]);
        let r = [5, -2];
        let lhs = a.add_compatible(&b).unwrap().scale(&r).unwrap();
        let rhs = a.scale(&r).unwrap().add_compatible(&b.scale(&r).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn vector_sum_splits_into_two_scalings() {
        // (r+s) acting on t equals r acting plus s acting, folded.
        let term = t(2, &[3, 5]);
        let r = [2i64, -1];
        let s = [4i64, 6];
        let rs: Vec<i64> = r.iter().zip(&s).map(|(a, b)| a + b).collect();
        let lhs = term.scale(&rs).unwrap();
        let rhs = term.scale(&r).unwrap().add_compatible(&term.scale(&s).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn display_matches_literal_form() {
        assert_eq!(t(2, &[3, -1]).to_string(), "T{2;3,-1}");
        assert_eq!(t(-4, &[0]).to_string(), "T{-4;0}");
    }
}
