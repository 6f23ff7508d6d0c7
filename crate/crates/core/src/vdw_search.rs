//! Brute-force witness finders for polynomial van der Waerden
//! configurations, plus classical arithmetic progressions as a sanity base
//! and an exhaustive oracle for testing.
//!
//! Each finder walks a fixed, documented scan order and returns the first
//! admissible monochromatic configuration. Admissibility means the
//! configuration values are pairwise distinct: a degenerate candidate whose
//! values coincide is monochromatic for free and certifies nothing, so the
//! scan skips it. The theorems these searches realize assert existence over
//! all of ℤ; a finite window can genuinely lack witnesses, and an absent
//! result only ever means "absent within the scanned bounds".
//!
//! Scan orders:
//! - signed parameters (`r`, base `a`): `0, 1, -1, 2, -2, …`;
//! - index sets `F`: by (max element, size, lexicographic);
//! - tuples `(F_1, …, F_k)`: product order with `F_1` varying fastest.
//!
//! With the `parallel` feature the scan is partitioned across parameter
//! blocks and merged by scan-order minimum, so results are identical to the
//! sequential twins (`*_seq`) regardless of scheduling.

use std::fmt;

use serde::{Deserialize, Serialize};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{AlgebraError, SearchError};
use crate::evaluation::{IntPoly, MultiIntPoly};
use crate::par;
use crate::shifts::{IndexSet, SequenceSpec, ip_sum};

/// Hard ceiling on materialized scan axes and on the oracle's total
/// candidate count. Keeps runaway bounds from exhausting memory.
const SCAN_CAP: u64 = 10_000_000;

/// A finite coloring of (part of) ℤ.
///
/// Modular colorings are total on ℤ; the other kinds are total exactly on
/// their window and refuse to guess colors outside it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Coloring {
    /// `color(v) = colors[v mod q]` with `q = colors.len()`.
    Modular { colors: Vec<u32> },
    /// `color(lo + i) = colors[i]`; undefined outside `[lo, lo+len-1]`.
    Explicit { lo: i64, colors: Vec<u32> },
    /// An explicit window filled by a seeded ChaCha8 stream; the same seed
    /// and window reproduce the same colors byte for byte.
    SeededRandom { seed: u64, lo: i64, num_colors: u32, colors: Vec<u32> },
}

impl Coloring {
    /// A coloring by residue class: `color(v) = colors[v mod colors.len()]`.
    pub fn modular(colors: Vec<u32>) -> Result<Coloring, SearchError> {
        if colors.is_empty() {
            return Err(SearchError::EmptyColoring);
        }
        Ok(Coloring::Modular { colors })
    }

    /// A per-integer coloring of the window starting at `lo`.
    pub fn explicit(lo: i64, colors: Vec<u32>) -> Result<Coloring, SearchError> {
        if colors.is_empty() {
            return Err(SearchError::EmptyColoring);
        }
        if lo.checked_add(colors.len() as i64 - 1).is_none() {
            return Err(AlgebraError::Overflow.into());
        }
        Ok(Coloring::Explicit { lo, colors })
    }

    /// A reproducible random `num_colors`-coloring of `[lo, hi]`.
    pub fn seeded_random(
        num_colors: u32,
        seed: u64,
        lo: i64,
        hi: i64,
    ) -> Result<Coloring, SearchError> {
        if num_colors == 0 || lo > hi {
            return Err(SearchError::EmptyColoring);
        }
        let len = u64::try_from(hi as i128 - lo as i128 + 1)
            .ok()
            .filter(|len| *len <= SCAN_CAP)
            .ok_or(SearchError::BoundsTooLarge {
                candidates: u64::MAX,
                cap: SCAN_CAP,
            })?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let colors = (0..len).map(|_| rng.random_range(0..num_colors)).collect();
        Ok(Coloring::SeededRandom { seed, lo, num_colors, colors })
    }

    /// The color at `v`, or `None` when `v` is outside the window.
    pub fn color(&self, v: i64) -> Option<u32> {
        match self {
            Coloring::Modular { colors } => {
                Some(colors[v.rem_euclid(colors.len() as i64) as usize])
            }
            Coloring::Explicit { lo, colors } | Coloring::SeededRandom { lo, colors, .. } => {
                let offset = (v as i128) - (*lo as i128);
                if offset < 0 || offset >= colors.len() as i128 {
                    return None;
                }
                Some(colors[offset as usize])
            }
        }
    }

    /// The window `[lo, hi]` on which the coloring is defined, or `None`
    /// when it is total on ℤ.
    pub fn window(&self) -> Option<(i64, i64)> {
        match self {
            Coloring::Modular { .. } => None,
            Coloring::Explicit { lo, colors } | Coloring::SeededRandom { lo, colors, .. } => {
                Some((*lo, lo + colors.len() as i64 - 1))
            }
        }
    }

    /// The number of colors in play.
    pub fn color_count(&self) -> u32 {
        match self {
            Coloring::Modular { colors } | Coloring::Explicit { colors, .. } => {
                colors.iter().copied().max().map_or(1, |m| m + 1)
            }
            Coloring::SeededRandom { num_colors, .. } => *num_colors,
        }
    }
}

impl fmt::Display for Coloring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn join(colors: &[u32]) -> String {
            colors.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
        }
        match self {
            Coloring::Modular { colors } => {
                write!(f, "mod:{}:{}", colors.len(), join(colors))
            }
            Coloring::Explicit { lo, colors } => {
                write!(f, "explicit:{lo}:{}", join(colors))
            }
            Coloring::SeededRandom { seed, lo, num_colors, colors } => {
                let hi = lo + colors.len() as i64 - 1;
                write!(f, "random:{num_colors}:{seed}:{lo}:{hi}")
            }
        }
    }
}

/// The parameter slot of a witness: which knob produced the configuration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WitnessParam {
    /// A direct integer argument: values are `a + p_i(r)`.
    R { r: i64 },
    /// An IP sum: values are `a + p_i(Σ_{t∈F} f(t))`.
    Ip { f: SequenceSpec, set: IndexSet },
    /// One IP sum per variable: values are `a + p_i(s_1, …, s_k)`.
    MultiIp { fs: Vec<SequenceSpec>, sets: Vec<IndexSet> },
}

impl fmt::Display for WitnessParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WitnessParam::R { r } => write!(f, "r={r}"),
            WitnessParam::Ip { f: seq, set } => write!(f, "F={set}, f={seq}"),
            WitnessParam::MultiIp { fs, sets } => {
                for (i, set) in sets.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "F{}={set}", i + 1)?;
                }
                for (i, seq) in fs.iter().enumerate() {
                    write!(f, ", f{}={seq}", i + 1)?;
                }
                Ok(())
            }
        }
    }
}

/// A certified monochromatic configuration: all `values` carry `color`
/// under the coloring the search ran against, and `values[i]` reproduces
/// `a + p_i(parameter)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub a: i64,
    pub param: WitnessParam,
    pub values: Vec<i64>,
    pub color: u32,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a={}, {}, values=[", self.a, self.param)?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "], color={}", self.color)
    }
}

/// A search result together with the sequential-equivalent number of
/// candidates a plain scan examines before stopping. The count is computed
/// from the witness position, so it is identical under both scheduling
/// modes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub witness: Option<Witness>,
    pub candidates_scanned: u64,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    Parallel,
    Sequential,
}

// ---------------------------------------------------------------------------
// Scan-order construction
// ---------------------------------------------------------------------------

/// `0, 1, -1, 2, -2, …, bound, -bound`.
fn signed_order(bound: u64) -> Result<Vec<i64>, SearchError> {
    let count = 2 * bound as u128 + 1;
    if count > SCAN_CAP as u128 {
        return Err(SearchError::BoundsTooLarge {
            candidates: count.try_into().unwrap_or(u64::MAX),
            cap: SCAN_CAP,
        });
    }
    let mut out = Vec::with_capacity(count as usize);
    out.push(0);
    for v in 1..=bound as i64 {
        out.push(v);
        out.push(-v);
    }
    Ok(out)
}

/// Saturating binomial coefficient, for pre-counting index-set spaces.
fn binom(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..k.min(n - k) {
        acc = acc.saturating_mul((n - i) as u128) / (i + 1) as u128;
        if acc > u128::from(u64::MAX) {
            return u128::MAX;
        }
    }
    acc
}

/// Number of nonempty subsets of `[1, max_index]` with at most `max_size`
/// elements, saturating.
fn count_index_sets(max_index: u64, max_size: usize) -> u128 {
    let mut total: u128 = 0;
    for s in 1..=(max_size as u64).min(max_index) {
        total = total.saturating_add(binom(max_index, s));
    }
    total
}

/// All nonempty `F ⊆ [1, max_index]` with `|F| ≤ max_size`, ordered by
/// (max element, size, lexicographic on the ascending element list).
fn index_sets_in_order(max_index: u64, max_size: usize) -> Result<Vec<IndexSet>, SearchError> {
    let count = count_index_sets(max_index, max_size);
    if count > SCAN_CAP as u128 {
        return Err(SearchError::BoundsTooLarge {
            candidates: count.try_into().unwrap_or(u64::MAX),
            cap: SCAN_CAP,
        });
    }
    let mut out = Vec::with_capacity(count as usize);
    for max_el in 1..=max_index {
        for size in 1..=max_size.min(max_el as usize) {
            let mut prefix = Vec::with_capacity(size);
            extend_sets(1, size - 1, max_el, &mut prefix, &mut out);
        }
    }
    Ok(out)
}

/// Appends, in lexicographic order, every set formed by `remaining` more
/// elements chosen ascending from `start..max_el` followed by `max_el`.
fn extend_sets(
    start: u64,
    remaining: usize,
    max_el: u64,
    prefix: &mut Vec<u64>,
    out: &mut Vec<IndexSet>,
) {
    if remaining == 0 {
        let mut elements = prefix.clone();
        elements.push(max_el);
        out.push(IndexSet::new(elements).expect("built ascending, distinct, positive"));
        return;
    }
    for e in start..=max_el - remaining as u64 {
        prefix.push(e);
        extend_sets(e + 1, remaining - 1, max_el, prefix, out);
        prefix.pop();
    }
}

fn pairwise_distinct(values: &[i64]) -> bool {
    values
        .iter()
        .enumerate()
        .all(|(i, v)| values[i + 1..].iter().all(|w| w != v))
}

// ---------------------------------------------------------------------------
// The scan engine
// ---------------------------------------------------------------------------

type Hit = (usize, usize, Vec<i64>, u32);

/// Scans the (param × a) grid in scan order and returns the first
/// admissible monochromatic hit, or the first evaluation error, whichever
/// the sequential order reaches first. `offsets_of` yields the a-independent
/// part `p_i(parameter)` per parameter index.
fn scan_space<F>(
    mode: Mode,
    n_params: usize,
    offsets_of: &F,
    a_values: &[i64],
    coloring: &Coloring,
    window: Option<(i64, i64)>,
) -> Result<Option<Hit>, SearchError>
where
    F: Fn(usize) -> Result<Vec<i64>, SearchError> + Sync,
{
    let cell = |j: usize| -> Option<Result<Hit, SearchError>> {
        let offsets = match offsets_of(j) {
            Ok(offsets) => offsets,
            Err(e) => return Some(Err(e)),
        };
        // Distinctness of a+offsets is independent of a, so an inadmissible
        // parameter is rejected wholesale.
        if !pairwise_distinct(&offsets) {
            return None;
        }
        for (a_idx, &a) in a_values.iter().enumerate() {
            let mut values = Vec::with_capacity(offsets.len());
            for &o in &offsets {
                match a.checked_add(o) {
                    Some(v) => values.push(v),
                    None => return Some(Err(AlgebraError::Overflow.into())),
                }
            }
            if let Some((lo, hi)) = window {
                if values.iter().any(|v| *v < lo || *v > hi) {
                    continue;
                }
            }
            let Some(first) = coloring.color(values[0]) else {
                continue;
            };
            if values[1..].iter().all(|v| coloring.color(*v) == Some(first)) {
                return Some(Ok((j, a_idx, values, first)));
            }
        }
        None
    };
    match mode {
        Mode::Parallel => par::find_map_first((0..n_params).collect(), cell),
        Mode::Sequential => (0..n_params).find_map(cell),
    }
    .transpose()
}

/// Absent-case epilogue: distinguishes "scanned and found nothing" from
/// "no candidate even fit the window".
fn finish_absent<F>(
    n_params: usize,
    offsets_of: &F,
    a_values: &[i64],
    window: Option<(i64, i64)>,
) -> Result<SearchOutcome, SearchError>
where
    F: Fn(usize) -> Result<Vec<i64>, SearchError>,
{
    let total = n_params as u64 * a_values.len() as u64;
    if total > 0 && !any_candidate_in_window(n_params, offsets_of, a_values, window)? {
        return Err(SearchError::WindowTooSmall);
    }
    Ok(SearchOutcome { witness: None, candidates_scanned: total })
}

fn any_candidate_in_window<F>(
    n_params: usize,
    offsets_of: &F,
    a_values: &[i64],
    window: Option<(i64, i64)>,
) -> Result<bool, SearchError>
where
    F: Fn(usize) -> Result<Vec<i64>, SearchError>,
{
    let Some((lo, hi)) = window else {
        return Ok(n_params > 0 && !a_values.is_empty());
    };
    for j in 0..n_params {
        let offsets = offsets_of(j)?;
        let min_o = *offsets.iter().min().expect("finders reject empty poly lists");
        let max_o = *offsets.iter().max().expect("finders reject empty poly lists");
        // All values of a+offsets land in [lo, hi] iff a sits in this band.
        let a_lo = lo as i128 - min_o as i128;
        let a_hi = hi as i128 - max_o as i128;
        if a_values.iter().any(|a| (*a as i128) >= a_lo && (*a as i128) <= a_hi) {
            return Ok(true);
        }
    }
    Ok(false)
}

fn scanned_until(param_idx: usize, a_idx: usize, a_count: usize) -> u64 {
    param_idx as u64 * a_count as u64 + a_idx as u64 + 1
}

fn check_int_polys(polys: &[IntPoly]) -> Result<(), SearchError> {
    if polys.is_empty() {
        return Err(SearchError::EmptyPolyList);
    }
    if polys.iter().any(|p| p.constant_term() != 0) {
        return Err(AlgebraError::ConstantTermNonzero.into());
    }
    Ok(())
}

fn check_multi_polys(polys: &[MultiIntPoly]) -> Result<usize, SearchError> {
    if polys.is_empty() {
        return Err(SearchError::EmptyPolyList);
    }
    if polys.iter().any(|p| p.has_constant_term()) {
        return Err(AlgebraError::ConstantTermPresent.into());
    }
    let k = polys[0].k();
    for p in polys {
        if p.k() != k {
            return Err(AlgebraError::LengthMismatch { need: k, got: p.k() }.into());
        }
    }
    Ok(k)
}

// ---------------------------------------------------------------------------
// Finders
// ---------------------------------------------------------------------------

fn poly_outcome(
    polys: &[IntPoly],
    coloring: &Coloring,
    a_range: u64,
    r_range: u64,
    mode: Mode,
) -> Result<SearchOutcome, SearchError> {
    check_int_polys(polys)?;
    let rs = signed_order(r_range)?;
    let a_values = signed_order(a_range)?;
    let offsets_of = |j: usize| -> Result<Vec<i64>, SearchError> {
        polys.iter().map(|p| p.eval(rs[j]).map_err(SearchError::from)).collect()
    };
    let window = coloring.window();
    match scan_space(mode, rs.len(), &offsets_of, &a_values, coloring, window)? {
        Some((j, a_idx, values, color)) => Ok(SearchOutcome {
            witness: Some(Witness {
                a: a_values[a_idx],
                param: WitnessParam::R { r: rs[j] },
                values,
                color,
            }),
            candidates_scanned: scanned_until(j, a_idx, a_values.len()),
        }),
        None => finish_absent(rs.len(), &offsets_of, &a_values, window),
    }
}

/// Finds the first monochromatic `{a + p_i(r)}` configuration, scanning `r`
/// then `a`, both by increasing magnitude with positives first. Every
/// `p_i` must satisfy `p_i(0) = 0`.
pub fn find_poly_vdw(
    polys: &[IntPoly],
    coloring: &Coloring,
    a_range: u64,
    r_range: u64,
) -> Result<Option<Witness>, SearchError> {
    poly_outcome(polys, coloring, a_range, r_range, Mode::Parallel).map(|o| o.witness)
}

/// Sequential twin of [`find_poly_vdw`]; bit-identical results.
pub fn find_poly_vdw_seq(
    polys: &[IntPoly],
    coloring: &Coloring,
    a_range: u64,
    r_range: u64,
) -> Result<Option<Witness>, SearchError> {
    poly_outcome(polys, coloring, a_range, r_range, Mode::Sequential).map(|o| o.witness)
}

/// [`find_poly_vdw`] plus the sequential-equivalent candidate count.
pub fn find_poly_vdw_outcome(
    polys: &[IntPoly],
    coloring: &Coloring,
    a_range: u64,
    r_range: u64,
) -> Result<SearchOutcome, SearchError> {
    poly_outcome(polys, coloring, a_range, r_range, Mode::Parallel)
}

fn ip_outcome(
    polys: &[IntPoly],
    f: &SequenceSpec,
    coloring: &Coloring,
    a_range: u64,
    max_index: u64,
    max_f_size: usize,
    mode: Mode,
) -> Result<SearchOutcome, SearchError> {
    check_int_polys(polys)?;
    let sets = index_sets_in_order(max_index, max_f_size)?;
    let a_values = signed_order(a_range)?;
    let offsets_of = |j: usize| -> Result<Vec<i64>, SearchError> {
        let s = ip_sum(f, &sets[j])?;
        polys.iter().map(|p| p.eval(s).map_err(SearchError::from)).collect()
    };
    let window = coloring.window();
    match scan_space(mode, sets.len(), &offsets_of, &a_values, coloring, window)? {
        Some((j, a_idx, values, color)) => Ok(SearchOutcome {
            witness: Some(Witness {
                a: a_values[a_idx],
                param: WitnessParam::Ip { f: f.clone(), set: sets[j].clone() },
                values,
                color,
            }),
            candidates_scanned: scanned_until(j, a_idx, a_values.len()),
        }),
        None => finish_absent(sets.len(), &offsets_of, &a_values, window),
    }
}

/// Finds the first monochromatic `{a + p_i(Σ_{t∈F} f(t))}` configuration.
/// `F` ranges over nonempty subsets of `[1, max_index]` of size at most
/// `max_f_size`, ordered by (max element, size, lexicographic); the IP sum
/// is computed once per `F`.
pub fn find_ip_vdw(
    polys: &[IntPoly],
    f: &SequenceSpec,
    coloring: &Coloring,
    a_range: u64,
    max_index: u64,
    max_f_size: usize,
) -> Result<Option<Witness>, SearchError> {
    ip_outcome(polys, f, coloring, a_range, max_index, max_f_size, Mode::Parallel)
        .map(|o| o.witness)
}

/// Sequential twin of [`find_ip_vdw`]; bit-identical results.
pub fn find_ip_vdw_seq(
    polys: &[IntPoly],
    f: &SequenceSpec,
    coloring: &Coloring,
    a_range: u64,
    max_index: u64,
    max_f_size: usize,
) -> Result<Option<Witness>, SearchError> {
    ip_outcome(polys, f, coloring, a_range, max_index, max_f_size, Mode::Sequential)
        .map(|o| o.witness)
}

/// [`find_ip_vdw`] plus the sequential-equivalent candidate count.
pub fn find_ip_vdw_outcome(
    polys: &[IntPoly],
    f: &SequenceSpec,
    coloring: &Coloring,
    a_range: u64,
    max_index: u64,
    max_f_size: usize,
) -> Result<SearchOutcome, SearchError> {
    ip_outcome(polys, f, coloring, a_range, max_index, max_f_size, Mode::Parallel)
}

/// Decomposes a flat tuple index into per-variable list positions, first
/// variable fastest.
fn decompose_tuple(mut idx: usize, lens: &[usize]) -> Vec<usize> {
    let mut digits = Vec::with_capacity(lens.len());
    for len in lens {
        digits.push(idx % len);
        idx /= len;
    }
    digits
}

fn multivar_outcome(
    polys: &[MultiIntPoly],
    fs: &[SequenceSpec],
    coloring: &Coloring,
    a_range: u64,
    max_indices: &[u64],
    max_sizes: &[usize],
    mode: Mode,
) -> Result<SearchOutcome, SearchError> {
    let k = check_multi_polys(polys)?;
    if fs.len() != k {
        return Err(AlgebraError::LengthMismatch { need: k, got: fs.len() }.into());
    }
    if max_indices.len() != k {
        return Err(AlgebraError::LengthMismatch { need: k, got: max_indices.len() }.into());
    }
    if max_sizes.len() != k {
        return Err(AlgebraError::LengthMismatch { need: k, got: max_sizes.len() }.into());
    }
    let mut lists = Vec::with_capacity(k);
    let mut total: u128 = 1;
    for i in 0..k {
        let list = index_sets_in_order(max_indices[i], max_sizes[i])?;
        total = total.saturating_mul(list.len() as u128);
        lists.push(list);
    }
    if total > SCAN_CAP as u128 {
        return Err(SearchError::BoundsTooLarge {
            candidates: total.try_into().unwrap_or(u64::MAX),
            cap: SCAN_CAP,
        });
    }
    let n_params = if lists.iter().any(|l| l.is_empty()) { 0 } else { total as usize };
    let lens: Vec<usize> = lists.iter().map(Vec::len).collect();
    let a_values = signed_order(a_range)?;
    let offsets_of = |j: usize| -> Result<Vec<i64>, SearchError> {
        let digits = decompose_tuple(j, &lens);
        let mut s_vec = Vec::with_capacity(k);
        for (i, &d) in digits.iter().enumerate() {
            s_vec.push(ip_sum(&fs[i], &lists[i][d])?);
        }
        polys.iter().map(|p| p.eval(&s_vec).map_err(SearchError::from)).collect()
    };
    let window = coloring.window();
    match scan_space(mode, n_params, &offsets_of, &a_values, coloring, window)? {
        Some((j, a_idx, values, color)) => {
            let digits = decompose_tuple(j, &lens);
            let sets = digits.iter().enumerate().map(|(i, &d)| lists[i][d].clone()).collect();
            Ok(SearchOutcome {
                witness: Some(Witness {
                    a: a_values[a_idx],
                    param: WitnessParam::MultiIp { fs: fs.to_vec(), sets },
                    values,
                    color,
                }),
                candidates_scanned: scanned_until(j, a_idx, a_values.len()),
            })
        }
        None => finish_absent(n_params, &offsets_of, &a_values, window),
    }
}

/// Finds the first monochromatic `{a + p_i(s_1, …, s_k)}` configuration
/// with `s_i = Σ_{t∈F_i} f_i(t)`. Tuples `(F_1, …, F_k)` run in product
/// order of the single-set order, `F_1` varying fastest. Every `p_i` must
/// be constant-free.
pub fn find_multivar_vdw(
    polys: &[MultiIntPoly],
    fs: &[SequenceSpec],
    coloring: &Coloring,
    a_range: u64,
    max_indices: &[u64],
    max_sizes: &[usize],
) -> Result<Option<Witness>, SearchError> {
    multivar_outcome(polys, fs, coloring, a_range, max_indices, max_sizes, Mode::Parallel)
        .map(|o| o.witness)
}

/// Sequential twin of [`find_multivar_vdw`]; bit-identical results.
pub fn find_multivar_vdw_seq(
    polys: &[MultiIntPoly],
    fs: &[SequenceSpec],
    coloring: &Coloring,
    a_range: u64,
    max_indices: &[u64],
    max_sizes: &[usize],
) -> Result<Option<Witness>, SearchError> {
    multivar_outcome(polys, fs, coloring, a_range, max_indices, max_sizes, Mode::Sequential)
        .map(|o| o.witness)
}

/// [`find_multivar_vdw`] plus the sequential-equivalent candidate count.
pub fn find_multivar_vdw_outcome(
    polys: &[MultiIntPoly],
    fs: &[SequenceSpec],
    coloring: &Coloring,
    a_range: u64,
    max_indices: &[u64],
    max_sizes: &[usize],
) -> Result<SearchOutcome, SearchError> {
    multivar_outcome(polys, fs, coloring, a_range, max_indices, max_sizes, Mode::Parallel)
}

/// The polynomials `{0, n, 2n, …, (len-1)·n}` whose simultaneous witness is
/// an arithmetic progression of length `len`.
pub fn ap_polys(len: usize) -> Vec<IntPoly> {
    (0..len).map(|i| IntPoly::new(vec![0, i as i64])).collect()
}

fn ap_outcome(
    len: usize,
    coloring: &Coloring,
    window: (i64, i64),
    mode: Mode,
) -> Result<SearchOutcome, SearchError> {
    let polys = ap_polys(len);
    check_int_polys(&polys)?;
    let (lo, hi) = window;
    let width = (hi as i128) - (lo as i128);
    let r_max: i64 = if len <= 1 {
        1
    } else {
        (width / (len as i128 - 1)).clamp(0, SCAN_CAP as i128) as i64
    };
    let rs: Vec<i64> = (1..=r_max).collect();
    let a_count = width + 1;
    if a_count > SCAN_CAP as i128 {
        return Err(SearchError::BoundsTooLarge {
            candidates: a_count.try_into().unwrap_or(u64::MAX),
            cap: SCAN_CAP,
        });
    }
    let mut a_values: Vec<i64> = if a_count <= 0 { Vec::new() } else { (lo..=hi).collect() };
    a_values.sort_by_key(|a| (a.unsigned_abs(), *a < 0));
    let offsets_of = |j: usize| -> Result<Vec<i64>, SearchError> {
        polys.iter().map(|p| p.eval(rs[j]).map_err(SearchError::from)).collect()
    };
    let eff_window = match coloring.window() {
        None => Some(window),
        Some((clo, chi)) => Some((lo.max(clo), hi.min(chi))),
    };
    match scan_space(mode, rs.len(), &offsets_of, &a_values, coloring, eff_window)? {
        Some((j, a_idx, values, color)) => Ok(SearchOutcome {
            witness: Some(Witness {
                a: a_values[a_idx],
                param: WitnessParam::R { r: rs[j] },
                values,
                color,
            }),
            candidates_scanned: scanned_until(j, a_idx, a_values.len()),
        }),
        None => finish_absent(rs.len(), &offsets_of, &a_values, eff_window),
    }
}

/// Finds a monochromatic arithmetic progression of length `len` inside
/// `window`, with common difference `r ≥ 1` scanned ascending and base `a`
/// by increasing magnitude.
pub fn find_ap(
    len: usize,
    coloring: &Coloring,
    window: (i64, i64),
) -> Result<Option<Witness>, SearchError> {
    ap_outcome(len, coloring, window, Mode::Parallel).map(|o| o.witness)
}

/// Sequential twin of [`find_ap`]; bit-identical results.
pub fn find_ap_seq(
    len: usize,
    coloring: &Coloring,
    window: (i64, i64),
) -> Result<Option<Witness>, SearchError> {
    ap_outcome(len, coloring, window, Mode::Sequential).map(|o| o.witness)
}

// ---------------------------------------------------------------------------
// Certification
// ---------------------------------------------------------------------------

/// Recomputes every value of a one-variable witness from its parameter and
/// checks window membership and color equality. Independent of the search
/// path; returns `false` on any mismatch.
pub fn verify_witness(w: &Witness, polys: &[IntPoly], coloring: &Coloring) -> bool {
    if polys.len() != w.values.len() || polys.is_empty() {
        return false;
    }
    let s = match &w.param {
        WitnessParam::R { r } => *r,
        WitnessParam::Ip { f, set } => match ip_sum(f, set) {
            Ok(s) => s,
            Err(_) => return false,
        },
        WitnessParam::MultiIp { .. } => return false,
    };
    for (p, v) in polys.iter().zip(&w.values) {
        let recomputed = p.eval(s).ok().and_then(|pv| w.a.checked_add(pv));
        if recomputed != Some(*v) || coloring.color(*v) != Some(w.color) {
            return false;
        }
    }
    true
}

/// [`verify_witness`] for multivariable witnesses.
pub fn verify_witness_multi(w: &Witness, polys: &[MultiIntPoly], coloring: &Coloring) -> bool {
    if polys.len() != w.values.len() || polys.is_empty() {
        return false;
    }
    let WitnessParam::MultiIp { fs, sets } = &w.param else {
        return false;
    };
    if fs.len() != sets.len() {
        return false;
    }
    let mut s_vec = Vec::with_capacity(fs.len());
    for (f, set) in fs.iter().zip(sets) {
        match ip_sum(f, set) {
            Ok(s) => s_vec.push(s),
            Err(_) => return false,
        }
    }
    for (p, v) in polys.iter().zip(&w.values) {
        if p.k() != s_vec.len() {
            return false;
        }
        let recomputed = p.eval(&s_vec).ok().and_then(|pv| w.a.checked_add(pv));
        if recomputed != Some(*v) || coloring.color(*v) != Some(w.color) {
            return false;
        }
    }
    true
}

// ---------------------------------------------------------------------------
// Exhaustive oracle
// ---------------------------------------------------------------------------
//
// The oracle re-derives the scan order by sorting plainly enumerated
// candidate axes under explicit keys, evaluates polynomials with its own
// Horner loop, and tests admissibility directly on the value list. It
// shares no scan logic with the finders, so agreement between the two is a
// meaningful check.

/// Checked Horner evaluation over a dense coefficient slice, constant term
/// first. Deliberately separate from `IntPoly::eval`.
fn oracle_horner(coeffs: &[i64], x: i64) -> Option<i64> {
    let mut acc: i64 = 0;
    for c in coeffs.iter().rev() {
        acc = acc.checked_mul(x)?.checked_add(*c)?;
    }
    Some(acc)
}

fn oracle_guard(total: u128) -> Result<(), SearchError> {
    if total > SCAN_CAP as u128 {
        return Err(SearchError::BoundsTooLarge {
            candidates: total.try_into().unwrap_or(u64::MAX),
            cap: SCAN_CAP,
        });
    }
    Ok(())
}

fn oracle_signed_axis(bound: u64) -> Vec<i64> {
    let b = bound as i64;
    let mut axis: Vec<i64> = (-b..=b).collect();
    axis.sort_by_key(|v| (v.unsigned_abs(), v.is_negative()));
    axis
}

/// Collects, in scan order, a witness for every admissible monochromatic
/// candidate, from independently re-derived enumeration. Errors out above
/// the safety cap.
pub fn exhaustive_oracle_poly(
    polys: &[IntPoly],
    coloring: &Coloring,
    a_range: u64,
    r_range: u64,
) -> Result<Vec<Witness>, SearchError> {
    check_int_polys(polys)?;
    oracle_guard((2 * r_range as u128 + 1).saturating_mul(2 * a_range as u128 + 1))?;
    let mut out = Vec::new();
    for r in oracle_signed_axis(r_range) {
        for a in oracle_signed_axis(a_range) {
            let mut values = Vec::with_capacity(polys.len());
            for p in polys {
                let v = oracle_horner(p.coeffs(), r)
                    .and_then(|pv| a.checked_add(pv))
                    .ok_or(AlgebraError::Overflow)?;
                values.push(v);
            }
            if let Some(color) = oracle_classify(&values, coloring, None) {
                out.push(Witness { a, param: WitnessParam::R { r }, values, color });
            }
        }
    }
    Ok(out)
}

/// Distinct, in-window, monochromatic — the oracle's own admissibility
/// test, applied directly to the value list.
fn oracle_classify(
    values: &[i64],
    coloring: &Coloring,
    window: Option<(i64, i64)>,
) -> Option<u32> {
    for (i, v) in values.iter().enumerate() {
        if values[..i].contains(v) {
            return None;
        }
        if let Some((lo, hi)) = window {
            if *v < lo || *v > hi {
                return None;
            }
        }
    }
    let first = coloring.color(values[0])?;
    for v in &values[1..] {
        if coloring.color(*v) != Some(first) {
            return None;
        }
    }
    Some(first)
}

/// Index sets from bitmask enumeration, sorted by the documented key.
fn oracle_index_sets(max_index: u64, max_size: usize) -> Result<Vec<IndexSet>, SearchError> {
    if max_index > 22 {
        return Err(SearchError::BoundsTooLarge { candidates: u64::MAX, cap: SCAN_CAP });
    }
    let mut sets = Vec::new();
    for mask in 1u64..(1u64 << max_index) {
        if (mask.count_ones() as usize) > max_size {
            continue;
        }
        let elements: Vec<u64> = (0..max_index).filter(|b| mask >> b & 1 == 1).map(|b| b + 1).collect();
        sets.push(elements);
    }
    sets.sort_by(|x, y| {
        let kx = (x.last().copied(), x.len());
        let ky = (y.last().copied(), y.len());
        kx.cmp(&ky).then_with(|| x.cmp(y))
    });
    Ok(sets
        .into_iter()
        .map(|e| IndexSet::new(e).expect("bitmask sets are ascending, distinct, positive"))
        .collect())
}

/// Oracle twin of [`find_ip_vdw`]: all witnesses in scan order.
pub fn exhaustive_oracle_ip(
    polys: &[IntPoly],
    f: &SequenceSpec,
    coloring: &Coloring,
    a_range: u64,
    max_index: u64,
    max_f_size: usize,
) -> Result<Vec<Witness>, SearchError> {
    check_int_polys(polys)?;
    let sets = oracle_index_sets(max_index, max_f_size)?;
    oracle_guard((sets.len() as u128).saturating_mul(2 * a_range as u128 + 1))?;
    let mut out = Vec::new();
    for set in &sets {
        let mut s: i64 = 0;
        for t in set.elements() {
            s = s.checked_add(f.eval(*t)?).ok_or(AlgebraError::Overflow)?;
        }
        for a in oracle_signed_axis(a_range) {
            let mut values = Vec::with_capacity(polys.len());
            for p in polys {
                let v = oracle_horner(p.coeffs(), s)
                    .and_then(|pv| a.checked_add(pv))
                    .ok_or(AlgebraError::Overflow)?;
                values.push(v);
            }
            if let Some(color) = oracle_classify(&values, coloring, None) {
                out.push(Witness {
                    a,
                    param: WitnessParam::Ip { f: f.clone(), set: set.clone() },
                    values,
                    color,
                });
            }
        }
    }
    Ok(out)
}

/// Oracle twin of [`find_multivar_vdw`]: all witnesses in scan order.
pub fn exhaustive_oracle_multivar(
    polys: &[MultiIntPoly],
    fs: &[SequenceSpec],
    coloring: &Coloring,
    a_range: u64,
    max_indices: &[u64],
    max_sizes: &[usize],
) -> Result<Vec<Witness>, SearchError> {
    let k = check_multi_polys(polys)?;
    if fs.len() != k || max_indices.len() != k || max_sizes.len() != k {
        return Err(AlgebraError::LengthMismatch { need: k, got: fs.len() }.into());
    }
    let mut lists = Vec::with_capacity(k);
    let mut total: u128 = 2 * a_range as u128 + 1;
    for i in 0..k {
        let list = oracle_index_sets(max_indices[i], max_sizes[i])?;
        total = total.saturating_mul(list.len() as u128);
        lists.push(list);
    }
    oracle_guard(total)?;
    let a_axis = oracle_signed_axis(a_range);
    let mut out = Vec::new();
    // Nested product with the first variable innermost, i.e. fastest.
    let mut choice = vec![0usize; k];
    oracle_multivar_rec(k, &mut choice, &lists, polys, fs, coloring, &a_axis, &mut out)?;
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn oracle_multivar_rec(
    var: usize,
    choice: &mut [usize],
    lists: &[Vec<IndexSet>],
    polys: &[MultiIntPoly],
    fs: &[SequenceSpec],
    coloring: &Coloring,
    a_axis: &[i64],
    out: &mut Vec<Witness>,
) -> Result<(), SearchError> {
    if var == 0 {
        let mut s_vec = Vec::with_capacity(choice.len());
        for (i, &c) in choice.iter().enumerate() {
            let mut s: i64 = 0;
            for t in lists[i][c].elements() {
                s = s.checked_add(fs[i].eval(*t)?).ok_or(AlgebraError::Overflow)?;
            }
            s_vec.push(s);
        }
        for &a in a_axis {
            let mut values = Vec::with_capacity(polys.len());
            for p in polys {
                let v = p
                    .eval(&s_vec)
                    .ok()
                    .and_then(|pv| a.checked_add(pv))
                    .ok_or(AlgebraError::Overflow)?;
                values.push(v);
            }
            if let Some(color) = oracle_classify(&values, coloring, None) {
                let sets = choice.iter().enumerate().map(|(i, &c)| lists[i][c].clone()).collect();
                out.push(Witness {
                    a,
                    param: WitnessParam::MultiIp { fs: fs.to_vec(), sets },
                    values,
                    color,
                });
            }
        }
        return Ok(());
    }
    for c in 0..lists[var - 1].len() {
        choice[var - 1] = c;
        oracle_multivar_rec(var - 1, choice, lists, polys, fs, coloring, a_axis, out)?;
    }
    Ok(())
}

/// Oracle twin of [`find_ap`]: all monochromatic `len`-term progressions in
/// the window, in scan order. Values are built directly as `a + i·r`.
pub fn exhaustive_oracle_ap(
    len: usize,
    coloring: &Coloring,
    window: (i64, i64),
) -> Result<Vec<Witness>, SearchError> {
    if len == 0 {
        return Err(SearchError::EmptyPolyList);
    }
    let (lo, hi) = window;
    let width = (hi as i128) - (lo as i128);
    if width < 0 {
        return Ok(Vec::new());
    }
    let r_max: i64 = if len <= 1 {
        1
    } else {
        (width / (len as i128 - 1)).clamp(0, SCAN_CAP as i128) as i64
    };
    oracle_guard((width as u128 + 1).saturating_mul(r_max.max(0) as u128))?;
    let mut a_axis: Vec<i64> = (lo..=hi).collect();
    a_axis.sort_by_key(|a| (a.unsigned_abs(), a.is_negative()));
    let mut out = Vec::new();
    for r in 1..=r_max {
        for &a in &a_axis {
            let mut values = Vec::with_capacity(len);
            let mut ok = true;
            for i in 0..len as i64 {
                match i.checked_mul(r).and_then(|step| a.checked_add(step)) {
                    Some(v) if v >= lo && v <= hi => values.push(v),
                    _ => {
                        ok = false;
                        break;
                    }
                }
            }
            if !ok {
                continue;
            }
            if let Some(color) = oracle_classify(&values, coloring, Some(window)) {
                out.push(Witness { a, param: WitnessParam::R { r }, values, color });
            }
        }
    }
    Ok(out)
}
