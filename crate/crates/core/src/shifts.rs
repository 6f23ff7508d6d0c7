//! IP-shift operators: translating a symbolic polynomial by a scaled
//! direction, where the scale is a finite sum of a sequence over an index
//! set.
//!
//! `shift(x, eta, f, F)` computes the collapsed form `x + s•eta` with
//! `s = sum of f over F`, which the defining expansion licenses directly;
//! summing the scaled copies one by one would fold to the same thing. The
//! element being shifted must be irreducible from the direction, so the
//! outer addition is pure concatenation and evaluation maps act additively
//! on it.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::AlgebraError;
use crate::multivar::{MultiSymPoly, mv_in_ir};
use crate::sympoly::{SymPoly, in_ir};

/// A finite nonempty set of positive integers in canonical ascending order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "Vec<u64>", try_from = "Vec<u64>")]
pub struct IndexSet {
    elements: Vec<u64>,
}

impl IndexSet {
    /// Builds an index set from elements in any order; rejects empties,
    /// zeros, and duplicates.
    pub fn new(mut elements: Vec<u64>) -> Result<IndexSet, AlgebraError> {
        if elements.is_empty() {
            return Err(AlgebraError::EmptyIndexSet);
        }
        elements.sort_unstable();
        if elements[0] == 0 {
            return Err(AlgebraError::BadIndexSet(0));
        }
        if let Some(w) = elements.windows(2).find(|w| w[0] == w[1]) {
            return Err(AlgebraError::BadIndexSet(w[0]));
        }
        Ok(IndexSet { elements })
    }

    /// The elements in ascending order.
    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    /// The largest element.
    pub fn max(&self) -> u64 {
        *self.elements.last().expect("index sets are nonempty")
    }

    /// True iff the two sets share no element.
    pub fn is_disjoint(&self, other: &IndexSet) -> bool {
        self.elements.iter().all(|e| !other.elements.contains(e))
    }

    /// The union of two index sets.
    pub fn union(&self, other: &IndexSet) -> IndexSet {
        let mut elements = self.elements.clone();
        elements.extend_from_slice(&other.elements);
        elements.sort_unstable();
        elements.dedup();
        IndexSet { elements }
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.elements.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

impl From<IndexSet> for Vec<u64> {
    fn from(set: IndexSet) -> Vec<u64> {
        set.elements
    }
}

impl TryFrom<Vec<u64>> for IndexSet {
    type Error = AlgebraError;

    fn try_from(elements: Vec<u64>) -> Result<IndexSet, AlgebraError> {
        IndexSet::new(elements)
    }
}

/// A total integer sequence on the positive integers: a named closed form
/// or an explicit table over `1..=N`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum SequenceSpec {
    /// `f(t) = t`.
    Identity,
    /// `f(t) = c`.
    Constant(i64),
    /// `f(t) = t^e`.
    Power(u32),
    /// `f(t) = table[t-1]` for `t` in `1..=len`; undefined beyond.
    Table(Vec<i64>),
}

impl SequenceSpec {
    /// The value at index `t >= 1`.
    pub fn eval(&self, t: u64) -> Result<i64, AlgebraError> {
        match self {
            SequenceSpec::Identity => i64::try_from(t).map_err(|_| AlgebraError::Overflow),
            SequenceSpec::Constant(c) => Ok(*c),
            SequenceSpec::Power(e) => {
                let base = i64::try_from(t).map_err(|_| AlgebraError::Overflow)?;
                base.checked_pow(*e).ok_or(AlgebraError::Overflow)
            }
            SequenceSpec::Table(values) => {
                if t == 0 || t > values.len() as u64 {
                    return Err(AlgebraError::UndefinedIndex(t));
                }
                Ok(values[(t - 1) as usize])
            }
        }
    }
}

impl fmt::Display for SequenceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SequenceSpec::Identity => f.write_str("id"),
            SequenceSpec::Constant(c) => write!(f, "const:{c}"),
            SequenceSpec::Power(e) => write!(f, "pow:{e}"),
            SequenceSpec::Table(values) => {
                f.write_str("table:")?;
                for (i, v) in values.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{v}")?;
                }
                Ok(())
            }
        }
    }
}

impl FromStr for SequenceSpec {
    type Err = AlgebraError;

    /// Parses the display forms: `id`, `const:c`, `pow:e`, `table:v1,v2,…`.
    fn from_str(s: &str) -> Result<SequenceSpec, AlgebraError> {
        let bad = || AlgebraError::BadSequenceSpec(s.to_string());
        if s == "id" {
            return Ok(SequenceSpec::Identity);
        }
        if let Some(rest) = s.strip_prefix("const:") {
            return rest.parse().map(SequenceSpec::Constant).map_err(|_| bad());
        }
        if let Some(rest) = s.strip_prefix("pow:") {
            return rest.parse().map(SequenceSpec::Power).map_err(|_| bad());
        }
        if let Some(rest) = s.strip_prefix("table:") {
            let values = rest
                .split(',')
                .map(|v| v.trim().parse::<i64>().map_err(|_| bad()))
                .collect::<Result<Vec<i64>, AlgebraError>>()?;
            if values.is_empty() {
                return Err(bad());
            }
            return Ok(SequenceSpec::Table(values));
        }
        Err(bad())
    }
}

impl From<SequenceSpec> for String {
    fn from(f: SequenceSpec) -> String {
        f.to_string()
    }
}

impl TryFrom<String> for SequenceSpec {
    type Error = AlgebraError;

    fn try_from(s: String) -> Result<SequenceSpec, AlgebraError> {
        s.parse()
    }
}

/// The finite sum of `f` over an index set.
pub fn ip_sum(f: &SequenceSpec, set: &IndexSet) -> Result<i64, AlgebraError> {
    let mut acc: i64 = 0;
    for t in set.elements() {
        acc = acc.checked_add(f.eval(*t)?).ok_or(AlgebraError::Overflow)?;
    }
    Ok(acc)
}

/// The IP-shift of `x` along `eta`: `x + s•eta` in collapsed form, with
/// `s = ip_sum(f, set)` applied diagonally. Requires `x` irreducible from
/// `eta`.
pub fn shift(
    x: &SymPoly,
    eta: &SymPoly,
    f: &SequenceSpec,
    set: &IndexSet,
) -> Result<SymPoly, AlgebraError> {
    if !in_ir(x, std::slice::from_ref(eta))? {
        return Err(AlgebraError::NotInIr);
    }
    let s = ip_sum(f, set)?;
    x.add(&eta.scale(&vec![s; eta.cap()])?)
}

/// The multivariable IP-shift: block `i` of `eta` is scaled diagonally by
/// the sum of `fs[i]` over `sets[i]`, per the collapsed form of the
/// product-set expansion; the scaled direction is then folded onto `x`.
pub fn shift_multi(
    x: &MultiSymPoly,
    eta: &MultiSymPoly,
    fs: &[SequenceSpec],
    sets: &[IndexSet],
) -> Result<MultiSymPoly, AlgebraError> {
    let k = eta.caps().k();
    if fs.len() != k {
        return Err(AlgebraError::LengthMismatch { need: k, got: fs.len() });
    }
    if sets.len() != k {
        return Err(AlgebraError::LengthMismatch { need: k, got: sets.len() });
    }
    if !mv_in_ir(x, std::slice::from_ref(eta))? {
        return Err(AlgebraError::NotInIr);
    }
    let mut rs = Vec::with_capacity(k);
    for (f, set) in fs.iter().zip(sets) {
        let s = ip_sum(f, set)?;
        rs.push(vec![s; eta.caps().m()]);
    }
    x.add(&eta.scale(&rs)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evaluation::{IntPoly, encode_poly, pi_poly};
    use crate::multivar::{MultiCaps, MultiTerm};
    use crate::term_algebra::Term;

    fn set(elements: &[u64]) -> IndexSet {
        IndexSet::new(elements.to_vec()).unwrap()
    }

    #[test]
    fn index_sets_are_canonical_and_validated() {
        assert_eq!(set(&[3, 1, 4]).elements(), &[1, 3, 4]);
        assert_eq!(set(&[3, 1, 4]).to_string(), "{1,3,4}");
        assert_eq!(IndexSet::new(vec![]), Err(AlgebraError::EmptyIndexSet));
        assert_eq!(IndexSet::new(vec![0, 1]), Err(AlgebraError::BadIndexSet(0)));
        assert_eq!(IndexSet::new(vec![2, 2]), Err(AlgebraError::BadIndexSet(2)));
        assert!(set(&[1, 2]).is_disjoint(&set(&[3])));
        assert!(!set(&[1, 2]).is_disjoint(&set(&[2, 3])));
        assert_eq!(set(&[1, 3]).union(&set(&[2])).elements(), &[1, 2, 3]);
    }

    #[test]
    fn sequence_specs_round_trip_through_their_display_form() {
        let specs = [
            SequenceSpec::Identity,
            SequenceSpec::Constant(-7),
            SequenceSpec::Power(3),
            SequenceSpec::Table(vec![4, -1, 9]),
        ];
        for spec in specs {
            assert_eq!(spec.to_string().parse::<SequenceSpec>().unwrap(), spec);
        }
        assert_eq!(
            "pow:x".parse::<SequenceSpec>(),
            Err(AlgebraError::BadSequenceSpec("pow:x".to_string()))
        );
        assert!("table:".parse::<SequenceSpec>().is_err());
    }

    #[test]
    fn sequences_evaluate_per_their_form() {
        assert_eq!(SequenceSpec::Identity.eval(7).unwrap(), 7);
        assert_eq!(SequenceSpec::Constant(-3).eval(100).unwrap(), -3);
        assert_eq!(SequenceSpec::Power(2).eval(5).unwrap(), 25);
        let table = SequenceSpec::Table(vec![4, -1, 9]);
        assert_eq!(table.eval(2).unwrap(), -1);
        assert_eq!(table.eval(4), Err(AlgebraError::UndefinedIndex(4)));
        assert_eq!(SequenceSpec::Power(3).eval(u64::MAX), Err(AlgebraError::Overflow));
    }

    #[test]
    fn ip_sums_add_over_the_set() {
        assert_eq!(ip_sum(&SequenceSpec::Identity, &set(&[1, 2, 3])).unwrap(), 6);
        assert_eq!(ip_sum(&SequenceSpec::Constant(0), &set(&[5, 9])).unwrap(), 0);
        assert_eq!(ip_sum(&SequenceSpec::Power(2), &set(&[2, 5])).unwrap(), 29);
    }

    #[test]
    fn shift_scales_the_direction_by_the_ip_sum() {
        let x = SymPoly::single(Term::new(9, vec![1], 2).unwrap());
        let eta = SymPoly::single(Term::new(1, vec![1, 1], 2).unwrap());
        let shifted = shift(&x, &eta, &SequenceSpec::Identity, &set(&[1, 2])).unwrap();
        let expected = x.add(&SymPoly::single(Term::new(1, vec![3, 3], 2).unwrap())).unwrap();
        assert_eq!(shifted, expected);
        assert_eq!(shifted.to_string(), "T{9;1} + T{1;3,3}");
    }

    #[test]
    fn singleton_set_is_plain_diagonal_scaling() {
        let x = SymPoly::single(Term::new(9, vec![1], 2).unwrap());
        let eta = SymPoly::single(Term::new(1, vec![1, 1], 2).unwrap());
        let shifted = shift(&x, &eta, &SequenceSpec::Identity, &set(&[4])).unwrap();
        let expected = x.add(&eta.scale(&[4, 4]).unwrap()).unwrap();
        assert_eq!(shifted, expected);
    }

    #[test]
    fn shift_requires_irreducibility_from_the_direction() {
        let eta = SymPoly::single(Term::new(1, vec![1, 1], 2).unwrap());
        let colliding = SymPoly::single(Term::new(1, vec![2, 2], 2).unwrap());
        assert_eq!(
            shift(&colliding, &eta, &SequenceSpec::Identity, &set(&[1])),
            Err(AlgebraError::NotInIr)
        );
    }

    #[test]
    fn union_law_holds_in_collapsed_form() {
        let x = SymPoly::single(Term::new(9, vec![1], 2).unwrap());
        let eta = SymPoly::new(vec![
            Term::new(1, vec![1], 2).unwrap(),
            Term::new(1, vec![1, 1], 2).unwrap(),
        ])
        .unwrap();
        let f = SequenceSpec::Power(2);
        let (f_set, g_set) = (set(&[1, 4]), set(&[2, 3]));
        assert!(f_set.is_disjoint(&g_set));

        let s1 = ip_sum(&f, &f_set).unwrap();
        let s2 = ip_sum(&f, &g_set).unwrap();
        let folded = x
            .add(&eta.scale(&[s1; 2]).unwrap())
            .unwrap()
            .add(&eta.scale(&[s2; 2]).unwrap())
            .unwrap();
        let collapsed = shift(&x, &eta, &f, &f_set.union(&g_set)).unwrap();
        assert_eq!(folded, collapsed);
        assert_eq!(collapsed, x.add(&eta.scale(&[s1 + s2; 2]).unwrap()).unwrap());
    }

    #[test]
    fn pi_telescopes_through_a_shift() {
        let p = IntPoly::new(vec![0, 2, 3]);
        let eta = encode_poly(&p, 2).unwrap();
        let x = SymPoly::single(Term::new(9, vec![1], 2).unwrap());
        let f = SequenceSpec::Identity;
        let f_set = set(&[1, 2]);
        let shifted = shift(&x, &eta, &f, &f_set).unwrap();
        let s = ip_sum(&f, &f_set).unwrap();
        assert_eq!(
            pi_poly(&shifted).unwrap(),
            pi_poly(&x).unwrap() + p.eval(s).unwrap()
        );
    }

    #[test]
    fn multi_shift_scales_blocks_independently() {
        let caps = MultiCaps::new(2, 2).unwrap();
        let eta = MultiSymPoly::single(MultiTerm::new(1, vec![vec![1], vec![1]], caps).unwrap());
        let x = MultiSymPoly::single(MultiTerm::new(9, vec![vec![], vec![]], caps).unwrap());
        let fs = [SequenceSpec::Identity, SequenceSpec::Identity];

        let identity_like =
            shift_multi(&x, &eta, &fs, &[set(&[1]), set(&[1])]).unwrap();
        assert_eq!(identity_like, x.add(&eta).unwrap());

        let weighted = shift_multi(&x, &eta, &fs, &[set(&[1, 2]), set(&[1])]).unwrap();
        let eta_part = MultiSymPoly::single(MultiTerm::new(1, vec![vec![3], vec![1]], caps).unwrap());
        assert_eq!(weighted, x.add(&eta_part).unwrap());
    }

    #[test]
    fn multi_shift_validates_list_lengths() {
        let caps = MultiCaps::new(2, 1).unwrap();
        let eta = MultiSymPoly::single(MultiTerm::new(1, vec![vec![1], vec![1]], caps).unwrap());
        let x = MultiSymPoly::single(MultiTerm::new(9, vec![vec![], vec![]], caps).unwrap());
        assert_eq!(
            shift_multi(&x, &eta, &[SequenceSpec::Identity], &[set(&[1]), set(&[1])]),
            Err(AlgebraError::LengthMismatch { need: 2, got: 1 })
        );
    }
}
