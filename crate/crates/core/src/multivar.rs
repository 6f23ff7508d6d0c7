//! Multivariable symbolic terms and their formal sums.
//!
//! A [`MultiTerm`] carries a head `iota` and, for each of `k` variables, a
//! block of inner coefficients sitting on a prefix index set. Since every
//! index set in play is a prefix `{i1, ..., ij}`, blocks are represented by
//! their coefficient lists alone and the length signature is the tuple of
//! block sizes. An empty block carries no coefficients at all, which makes
//! the "coefficients on empty blocks don't matter" equality rule automatic.
//!
//! [`MultiSymPoly`] mirrors [`crate::sympoly::SymPoly`]: a nonempty,
//! pairwise-irreducible term list in a canonical order (lexicographic on
//! signature, then head).

use std::cmp::Ordering;
use std::fmt;

use crate::error::AlgebraError;

/// The ambient caps of a multivariable space: `k` variables, blocks of at
/// most `m` coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MultiCaps {
    k: usize,
    m: usize,
}

impl MultiCaps {
    /// Validates `k >= 2`, `m >= 1`.
    pub fn new(k: usize, m: usize) -> Result<MultiCaps, AlgebraError> {
        if k < 2 || m < 1 {
            return Err(AlgebraError::BadCaps { k, m });
        }
        Ok(MultiCaps { k, m })
    }

    /// Number of variables.
    pub fn k(&self) -> usize {
        self.k
    }

    /// Maximum block size.
    pub fn m(&self) -> usize {
        self.m
    }
}

/// A multivariable symbolic term: head `iota` plus one coefficient block per
/// variable (possibly empty), under caps `(k, m)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiTerm {
    iota: i64,
    blocks: Vec<Vec<i64>>,
    caps: MultiCaps,
}

impl MultiTerm {
    /// Builds a term; needs exactly `k` blocks, none longer than `m`.
    pub fn new(iota: i64, blocks: Vec<Vec<i64>>, caps: MultiCaps) -> Result<MultiTerm, AlgebraError> {
        if blocks.len() != caps.k() {
            return Err(AlgebraError::LengthMismatch { need: caps.k(), got: blocks.len() });
        }
        for block in &blocks {
            if block.len() > caps.m() {
                return Err(AlgebraError::CapExceeded { len: block.len(), cap: caps.m() });
            }
        }
        Ok(MultiTerm { iota, blocks, caps })
    }

    /// The head value.
    pub fn iota(&self) -> i64 {
        self.iota
    }

    /// The coefficient blocks, one per variable.
    pub fn blocks(&self) -> &[Vec<i64>] {
        &self.blocks
    }

    /// The ambient caps.
    pub fn caps(&self) -> MultiCaps {
        self.caps
    }

    /// The length signature: the tuple of block sizes.
    pub fn signature(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }

    /// Canonical comparison: lexicographic on the signature, then the head.
    /// Distinct compatible terms compare equal here, so this is a total
    /// order only on pairwise-irreducible sets.
    pub fn cmp_key(&self, other: &MultiTerm) -> Ordering {
        let sig = self
            .blocks
            .iter()
            .map(Vec::len)
            .cmp(other.blocks.iter().map(Vec::len));
        sig.then(self.iota.cmp(&other.iota))
    }

    /// True iff the two terms fold under addition: same caps, same
    /// signature, same head.
    pub fn is_compatible(&self, other: &MultiTerm) -> bool {
        self.caps == other.caps && self.cmp_key(other) == Ordering::Equal
    }

    /// Blockwise coefficient sums; head and signature preserved.
    pub fn add_compatible(&self, other: &MultiTerm) -> Result<MultiTerm, AlgebraError> {
        if !self.is_compatible(other) {
            return Err(AlgebraError::NotCompatible);
        }
        let blocks = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(mine, theirs)| {
                mine.iter()
                    .zip(theirs)
                    .map(|(a, b)| a.checked_add(*b).ok_or(AlgebraError::Overflow))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(MultiTerm { iota: self.iota, blocks, caps: self.caps })
    }

    /// The bullet action of one vector per variable: block `i` is scaled
    /// entrywise by `rs[i]`; empty blocks and the head are untouched.
    pub fn scale(&self, rs: &[Vec<i64>]) -> Result<MultiTerm, AlgebraError> {
        if rs.len() != self.caps.k() {
            return Err(AlgebraError::LengthMismatch { need: self.caps.k(), got: rs.len() });
        }
        let blocks = self
            .blocks
            .iter()
            .zip(rs)
            .map(|(block, r)| {
                if r.len() < block.len() {
                    return Err(AlgebraError::VectorTooShort { need: block.len(), got: r.len() });
                }
                block
                    .iter()
                    .zip(r)
                    .map(|(c, s)| c.checked_mul(*s).ok_or(AlgebraError::Overflow))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(MultiTerm { iota: self.iota, blocks, caps: self.caps })
    }
}

impl fmt::Display for MultiTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M{{{}", self.iota)?;
        for block in &self.blocks {
            f.write_str(";[")?;
            for (i, c) in block.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{c}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("}")
    }
}

/// A finite formal sum of pairwise-irreducible multiterms in canonical
/// order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiSymPoly {
    terms: Vec<MultiTerm>,
}

impl MultiSymPoly {
    /// Builds a formal sum from terms in any order; rejects empty input,
    /// mixed caps, and compatible pairs (reported by input positions).
    pub fn new(terms: Vec<MultiTerm>) -> Result<MultiSymPoly, AlgebraError> {
        if terms.is_empty() {
            return Err(AlgebraError::EmptyTerms);
        }
        let caps = terms[0].caps();
        if terms.iter().any(|t| t.caps() != caps) {
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
        terms.sort_by(MultiTerm::cmp_key);
        Ok(MultiSymPoly { terms })
    }

    /// Wraps a single multiterm.
    pub fn single(term: MultiTerm) -> MultiSymPoly {
        MultiSymPoly { terms: vec![term] }
    }

    /// The terms in canonical order.
    pub fn terms(&self) -> &[MultiTerm] {
        &self.terms
    }

    /// The ambient caps shared by all terms.
    pub fn caps(&self) -> MultiCaps {
        self.terms[0].caps()
    }

    /// Semigroup addition: merge on (signature, head) keys, folding
    /// collisions blockwise, unmatched terms kept.
    pub fn add(&self, other: &MultiSymPoly) -> Result<MultiSymPoly, AlgebraError> {
        if self.caps() != other.caps() {
            return Err(AlgebraError::MixedCaps);
        }
        let mut merged = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let a = &self.terms[i];
            let b = &other.terms[j];
            match a.cmp_key(b) {
                Ordering::Equal => {
                    merged.push(a.add_compatible(b)?);
                    i += 1;
                    j += 1;
                }
                Ordering::Less => {
                    merged.push(a.clone());
                    i += 1;
                }
                Ordering::Greater => {
                    merged.push(b.clone());
                    j += 1;
                }
            }
        }
        merged.extend_from_slice(&self.terms[i..]);
        merged.extend_from_slice(&other.terms[j..]);
        debug_assert!(merged.windows(2).all(|w| w[0].cmp_key(&w[1]) == Ordering::Less));
        Ok(MultiSymPoly { terms: merged })
    }

    /// The bullet action termwise; keys are untouched.
    pub fn scale(&self, rs: &[Vec<i64>]) -> Result<MultiSymPoly, AlgebraError> {
        let terms = self
            .terms
            .iter()
            .map(|t| t.scale(rs))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(MultiSymPoly { terms })
    }
}

/// True iff no term of `x` is compatible with any term of any direction.
pub fn mv_in_ir(x: &MultiSymPoly, etas: &[MultiSymPoly]) -> Result<bool, AlgebraError> {
    for eta in etas {
        if eta.caps() != x.caps() {
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

impl fmt::Display for MultiSymPoly {
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
