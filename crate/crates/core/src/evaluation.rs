//! Evaluation maps between symbolic and ordinary integer polynomials.
//!
//! `pi` collapses a term to the product of all its integers (head times
//! every inner coefficient) and a formal sum to the sum of its term values —
//! legitimate because the terms of a formal sum are pairwise irreducible.
//! Note that `pi` is *not* additive across a compatible fold: folding adds
//! coefficients before the product is taken.
//!
//! `eval_px` / `eval_pmulti` are the homomorphisms onto ordinary integer
//! polynomials, and `encode_poly` / `encode_multi` build the canonical
//! unit-coefficient preimages, so that `eval ∘ encode` is the identity on
//! constant-free polynomials.
//!
//! Heads may be zero (a term with `iota = 0` is legal); `pi` of such a term
//! is degenerately 0, which the tests pin down.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::AlgebraError;
use crate::multivar::{MultiCaps, MultiSymPoly, MultiTerm};
use crate::sympoly::SymPoly;
use crate::term_algebra::Term;

/// A dense one-variable integer polynomial; index `i` holds the coefficient
/// of `n^i`. Trailing zeros are trimmed; the zero polynomial stores nothing.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<i64>,
}

impl IntPoly {
    /// Builds a polynomial from dense coefficients (constant term first),
    /// trimming trailing zeros.
    pub fn new(mut coeffs: Vec<i64>) -> IntPoly {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    /// The zero polynomial.
    pub fn zero() -> IntPoly {
        IntPoly { coeffs: Vec::new() }
    }

    /// Dense coefficients, constant term first, no trailing zeros.
    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// The coefficient of `n^i` (zero beyond the stored degree).
    pub fn coeff(&self, i: usize) -> i64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    /// Highest nonzero index, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// True for the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// The value at 0.
    pub fn constant_term(&self) -> i64 {
        self.coeff(0)
    }

    /// Checked evaluation by Horner's rule.
    pub fn eval(&self, r: i64) -> Result<i64, AlgebraError> {
        let mut acc: i64 = 0;
        for c in self.coeffs.iter().rev() {
            acc = acc
                .checked_mul(r)
                .and_then(|v| v.checked_add(*c))
                .ok_or(AlgebraError::Overflow)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for i in (0..self.coeffs.len()).rev() {
            let c = self.coeffs[i];
            if c == 0 {
                continue;
            }
            if first {
                if c < 0 {
                    f.write_str("-")?;
                }
                first = false;
            } else if c < 0 {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            let magnitude = c.unsigned_abs();
            if magnitude != 1 || i == 0 {
                write!(f, "{magnitude}")?;
            }
            match i {
                0 => {}
                1 => f.write_str("n")?,
                _ => write!(f, "n^{i}")?,
            }
        }
        Ok(())
    }
}

/// A sparse multivariable integer polynomial over `k` variables: a map from
/// exponent tuples (length `k`) to nonzero coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiIntPoly {
    k: usize,
    monomials: BTreeMap<Vec<u32>, i64>,
}

impl MultiIntPoly {
    /// Builds a polynomial over `k` variables; duplicate exponent tuples are
    /// folded and zero coefficients dropped.
    pub fn new(
        k: usize,
        entries: impl IntoIterator<Item = (Vec<u32>, i64)>,
    ) -> Result<MultiIntPoly, AlgebraError> {
        let mut monomials: BTreeMap<Vec<u32>, i64> = BTreeMap::new();
        for (exps, coeff) in entries {
            if exps.len() != k {
                return Err(AlgebraError::LengthMismatch { need: k, got: exps.len() });
            }
            let slot = monomials.entry(exps).or_insert(0);
            *slot = slot.checked_add(coeff).ok_or(AlgebraError::Overflow)?;
        }
        monomials.retain(|_, c| *c != 0);
        Ok(MultiIntPoly { k, monomials })
    }

    /// Number of variables.
    pub fn k(&self) -> usize {
        self.k
    }

    /// The monomials, keyed by exponent tuple; no zero coefficients.
    pub fn monomials(&self) -> &BTreeMap<Vec<u32>, i64> {
        &self.monomials
    }

    /// True for the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.monomials.is_empty()
    }

    /// True iff an all-zero exponent tuple is present.
    pub fn has_constant_term(&self) -> bool {
        self.monomials.keys().any(|exps| exps.iter().all(|e| *e == 0))
    }

    /// Checked evaluation at a point with one coordinate per variable.
    pub fn eval(&self, point: &[i64]) -> Result<i64, AlgebraError> {
        if point.len() != self.k {
            return Err(AlgebraError::LengthMismatch { need: self.k, got: point.len() });
        }
        let mut acc: i64 = 0;
        for (exps, coeff) in &self.monomials {
            let mut value = *coeff;
            for (x, e) in point.iter().zip(exps) {
                let power = x.checked_pow(*e).ok_or(AlgebraError::Overflow)?;
                value = value.checked_mul(power).ok_or(AlgebraError::Overflow)?;
            }
            acc = acc.checked_add(value).ok_or(AlgebraError::Overflow)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for MultiIntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (exps, c) in self.monomials.iter().rev() {
            if first {
                if *c < 0 {
                    f.write_str("-")?;
                }
                first = false;
            } else if *c < 0 {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            let magnitude = c.unsigned_abs();
            let constant = exps.iter().all(|e| *e == 0);
            if magnitude != 1 || constant {
                write!(f, "{magnitude}")?;
            }
            let mut first_factor = true;
            for (var, e) in exps.iter().enumerate() {
                if *e == 0 {
                    continue;
                }
                if !first_factor {
                    f.write_str("*")?;
                }
                first_factor = false;
                write!(f, "x{}", var + 1)?;
                if *e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

/// `pi` of a single term: head times the product of every inner coefficient.
pub fn pi_term(t: &Term) -> Result<i64, AlgebraError> {
    let mut acc = t.iota();
    for c in t.coeffs() {
        acc = acc.checked_mul(*c).ok_or(AlgebraError::Overflow)?;
    }
    Ok(acc)
}

/// `pi` of a formal sum: the sum of `pi` over its (pairwise-irreducible)
/// terms. This is additive only on irreducible pairs; a compatible fold
/// changes the value.
pub fn pi_poly(x: &SymPoly) -> Result<i64, AlgebraError> {
    let mut acc: i64 = 0;
    for t in x.terms() {
        acc = acc.checked_add(pi_term(t)?).ok_or(AlgebraError::Overflow)?;
    }
    Ok(acc)
}

/// The evaluation homomorphism onto one-variable integer polynomials: each
/// term of length `l` contributes `(iota * prod coeffs) * n^l`.
pub fn eval_px(x: &SymPoly) -> Result<IntPoly, AlgebraError> {
    let top = x.terms().iter().map(Term::len).max().unwrap_or(0);
    let mut dense = vec![0i64; top + 1];
    for t in x.terms() {
        let value = pi_term(t)?;
        dense[t.len()] = dense[t.len()].checked_add(value).ok_or(AlgebraError::Overflow)?;
    }
    Ok(IntPoly::new(dense))
}

/// The canonical symbolic preimage of a constant-free polynomial: one
/// unit-coefficient term of length `i` per nonzero coefficient `a_i`, with
/// head `a_i`. Round trip: `eval_px(encode_poly(p, cap)) == p`.
pub fn encode_poly(p: &IntPoly, cap: usize) -> Result<SymPoly, AlgebraError> {
    if p.constant_term() != 0 {
        return Err(AlgebraError::ConstantTermNonzero);
    }
    if p.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    let degree = p.degree().expect("nonzero polynomial has a degree");
    if degree > cap {
        return Err(AlgebraError::DegreeExceedsCap { degree, cap });
    }
    let mut terms = Vec::new();
    for i in 1..=degree {
        let a = p.coeff(i);
        if a != 0 {
            terms.push(Term::new(a, vec![1; i], cap)?);
        }
    }
    SymPoly::new(terms)
}

/// The evaluation homomorphism onto multivariable integer polynomials: a
/// term with head `a`, block sizes `(j_1, ..., j_k)`, and block coefficients
/// `c` contributes `(a * prod c) * x_1^{j_1} ... x_k^{j_k}`.
pub fn eval_pmulti(x: &MultiSymPoly) -> Result<MultiIntPoly, AlgebraError> {
    let k = x.caps().k();
    let mut entries = Vec::new();
    for t in x.terms() {
        let mut value = t.iota();
        for block in t.blocks() {
            for c in block {
                value = value.checked_mul(*c).ok_or(AlgebraError::Overflow)?;
            }
        }
        let exps = t
            .blocks()
            .iter()
            .map(|b| u32::try_from(b.len()).expect("block size fits in u32"))
            .collect();
        entries.push((exps, value));
    }
    MultiIntPoly::new(k, entries)
}

/// The canonical multivariable preimage of a constant-free polynomial, plus
/// the block cap `m` it chose: the sum over all monomials of all exponents.
/// One term per monomial: head = coefficient, block `i` holds `alpha_i` unit
/// coefficients. Round trip: `eval_pmulti(result) == p`. Needs `k >= 2`
/// (smaller `k` has no multiterm representation).
pub fn encode_multi(p: &MultiIntPoly) -> Result<(MultiSymPoly, usize), AlgebraError> {
    if p.has_constant_term() {
        return Err(AlgebraError::ConstantTermPresent);
    }
    if p.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    let m: usize = p
        .monomials()
        .keys()
        .map(|exps| exps.iter().map(|e| *e as usize).sum::<usize>())
        .sum();
    let caps = MultiCaps::new(p.k(), m)?;
    let mut terms = Vec::new();
    for (exps, coeff) in p.monomials() {
        let blocks = exps.iter().map(|e| vec![1i64; *e as usize]).collect();
        terms.push(MultiTerm::new(*coeff, blocks, caps)?);
    }
    Ok((MultiSymPoly::new(terms)?, m))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(iota: i64, coeffs: &[i64]) -> Term {
        Term::new(iota, coeffs.to_vec(), 4).unwrap()
    }

    fn poly(terms: &[Term]) -> SymPoly {
        SymPoly::new(terms.to_vec()).unwrap()
    }

    #[test]
    fn pi_multiplies_everything() {
        assert_eq!(pi_term(&t(2, &[3, -1])).unwrap(), -6);
        assert_eq!(pi_term(&t(7, &[1, 1, 1])).unwrap(), 7);
        assert_eq!(pi_term(&t(0, &[5])).unwrap(), 0);
    }

    #[test]
    fn pi_poly_sums_over_irreducible_terms() {
        assert_eq!(pi_poly(&poly(&[t(2, &[3]), t(1, &[4, 5])])).unwrap(), 26);
        assert_eq!(pi_poly(&poly(&[t(2, &[3])])).unwrap(), 6);
    }

    #[test]
    fn pi_is_not_additive_across_a_compatible_fold() {
        let a = poly(&[t(2, &[3, 1])]);
        let b = poly(&[t(2, &[5, 1])]);
        let folded = a.add(&b).unwrap();
        assert_eq!(pi_poly(&folded).unwrap(), 32); // 2 * 8 * 2
        assert_eq!(pi_poly(&a).unwrap() + pi_poly(&b).unwrap(), 16);
    }

    #[test]
    fn eval_px_maps_length_to_degree() {
        assert_eq!(eval_px(&poly(&[t(2, &[3])])).unwrap(), IntPoly::new(vec![0, 6]));
        // Distinct terms of equal length collapse into one monomial.
        assert_eq!(
            eval_px(&poly(&[t(1, &[1]), t(2, &[1])])).unwrap(),
            IntPoly::new(vec![0, 3])
        );
    }

    #[test]
    fn encode_poly_builds_unit_terms() {
        let p = IntPoly::new(vec![0, 2, 3]);
        let eta = encode_poly(&p, 4).unwrap();
        let expected = poly(&[t(2, &[1]), t(3, &[1, 1])]);
        assert_eq!(eta, expected);
        assert_eq!(eval_px(&eta).unwrap(), p);

        assert_eq!(
            encode_poly(&IntPoly::new(vec![0, 1]), 4).unwrap(),
            poly(&[t(1, &[1])])
        );
    }

    #[test]
    fn encode_poly_rejects_bad_inputs() {
        assert_eq!(
            encode_poly(&IntPoly::new(vec![1, 1]), 4),
            Err(AlgebraError::ConstantTermNonzero)
        );
        assert_eq!(encode_poly(&IntPoly::zero(), 4), Err(AlgebraError::ZeroPolynomial));
        assert_eq!(
            encode_poly(&IntPoly::new(vec![0, 0, 0, 1]), 2),
            Err(AlgebraError::DegreeExceedsCap { degree: 3, cap: 2 })
        );
    }

    #[test]
    fn pi_agrees_with_eval_px_at_one() {
        let cases = [
            poly(&[t(2, &[3, -1])]),
            poly(&[t(2, &[3]), t(1, &[4, 5])]),
            poly(&[t(0, &[5]), t(3, &[2, 2, 2])]),
        ];
        for x in &cases {
            assert_eq!(pi_poly(x).unwrap(), eval_px(x).unwrap().eval(1).unwrap());
        }
    }

    #[test]
    fn diagonal_scaling_of_an_encoding_evaluates_the_polynomial() {
        let p = IntPoly::new(vec![0, 2, 3]);
        let eta = encode_poly(&p, 4).unwrap();
        for r in -5..=5 {
            let scaled = eta.scale(&[r; 4]).unwrap();
            assert_eq!(pi_poly(&scaled).unwrap(), p.eval(r).unwrap());
        }
    }

    #[test]
    fn int_poly_trims_and_evaluates() {
        let p = IntPoly::new(vec![0, 2, 3, 0, 0]);
        assert_eq!(p.coeffs(), &[0, 2, 3]);
        assert_eq!(p.degree(), Some(2));
        assert_eq!(p.eval(-2).unwrap(), 8);
        assert!(IntPoly::new(vec![0, 0]).is_zero());
        assert_eq!(IntPoly::new(vec![i64::MAX, 1]).eval(2), Err(AlgebraError::Overflow));
    }

    #[test]
    fn multi_int_poly_folds_duplicates_and_evaluates() {
        let p = MultiIntPoly::new(3, vec![(vec![2, 1, 0], 1), (vec![0, 0, 1], -4)]).unwrap();
        assert_eq!(p.eval(&[2, 3, 5]).unwrap(), 12 - 20);
        let folded =
            MultiIntPoly::new(2, vec![(vec![1, 0], 2), (vec![1, 0], -2)]).unwrap();
        assert!(folded.is_zero());
        assert_eq!(
            MultiIntPoly::new(2, vec![(vec![1], 1)]),
            Err(AlgebraError::LengthMismatch { need: 2, got: 1 })
        );
    }

    #[test]
    fn eval_pmulti_handles_empty_blocks_and_zeros() {
        let caps = MultiCaps::new(2, 2).unwrap();
        let constant = MultiSymPoly::single(MultiTerm::new(5, vec![vec![], vec![]], caps).unwrap());
        let image = eval_pmulti(&constant).unwrap();
        assert_eq!(image, MultiIntPoly::new(2, vec![(vec![0, 0], 5)]).unwrap());

        let zeroed = MultiSymPoly::single(MultiTerm::new(1, vec![vec![0], vec![1]], caps).unwrap());
        assert!(eval_pmulti(&zeroed).unwrap().is_zero());
    }

    #[test]
    fn encode_multi_uses_the_exponent_sum_rule() {
        let p = MultiIntPoly::new(2, vec![(vec![1, 1], 1)]).unwrap();
        let (eta, m) = encode_multi(&p).unwrap();
        assert_eq!(m, 2);
        assert_eq!(eta.to_string(), "M{1;[1];[1]}");
        assert_eq!(eval_pmulti(&eta).unwrap(), p);

        let q = MultiIntPoly::new(2, vec![(vec![2, 0], 4), (vec![0, 1], 1)]).unwrap();
        let (eta, m) = encode_multi(&q).unwrap();
        assert_eq!(m, 3);
        assert_eq!(eta.terms().len(), 2);
        assert_eq!(eval_pmulti(&eta).unwrap(), q);
    }

    #[test]
    fn encode_multi_rejects_bad_inputs() {
        let constant = MultiIntPoly::new(2, vec![(vec![0, 0], 7)]).unwrap();
        assert_eq!(encode_multi(&constant), Err(AlgebraError::ConstantTermPresent));
        let zero = MultiIntPoly::new(2, Vec::new()).unwrap();
        assert_eq!(encode_multi(&zero), Err(AlgebraError::ZeroPolynomial));
        let univariate = MultiIntPoly::new(1, vec![(vec![1], 1)]).unwrap();
        assert_eq!(encode_multi(&univariate), Err(AlgebraError::BadCaps { k: 1, m: 1 }));
    }

    #[test]
    fn display_forms() {
        assert_eq!(IntPoly::new(vec![0, 2, 3]).to_string(), "3n^2 + 2n");
        assert_eq!(IntPoly::new(vec![0, -1, 1]).to_string(), "n^2 - n");
        assert_eq!(IntPoly::zero().to_string(), "0");
        assert_eq!(IntPoly::new(vec![5]).to_string(), "5");
        let p = MultiIntPoly::new(3, vec![(vec![2, 1, 0], 1), (vec![0, 0, 1], -4)]).unwrap();
        assert_eq!(p.to_string(), "x1^2*x2 - 4x3");
    }
}
