//! Finite-model laboratory for partial semigroups: operation tables, the
//! strong associativity condition, R-sets, adequacy, ideals, idempotents,
//! plus builders that truncate the symbolic constructions S({η_i}) and
//! V({η_i}) into finite tables.
//!
//! The symbolic S is infinite; a finite table can only enumerate a window
//! of it. A product that the algebra defines but the window fails to
//! contain is recorded as [`OpEntry::EscapesWindow`] — defined by the
//! operation, censored by truncation. Conflating the two would fabricate
//! associativity failures, so escaped products censor the triples that
//! touch them (counted separately, never as failures), while R-sets and
//! adequacy treat them as defined, which is what they are algebraically.
//! Everything a truncated table certifies is a statement about the finite
//! fragment, nothing more.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::TableError;
use crate::par;
use crate::sympoly::{SymPoly, in_ir};

/// One cell of a partial operation table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OpEntry {
    /// The product is this element of the table.
    Defined { result: usize },
    /// The operation defines the product, but it falls outside the
    /// enumerated window of a truncated table.
    EscapesWindow,
}

/// A finite partial operation table over indexed, labeled elements.
/// An absent cell means the operation itself is undefined there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialOpTable {
    labels: Vec<String>,
    op: Vec<Option<OpEntry>>,
}

impl PartialOpTable {
    /// An all-undefined table over the given element labels.
    pub fn new(labels: Vec<String>) -> PartialOpTable {
        let n = labels.len();
        PartialOpTable { labels, op: vec![None; n * n] }
    }

    /// Number of elements.
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    /// True for the table over no elements.
    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// The label of element `i`.
    pub fn label(&self, i: usize) -> Option<&str> {
        self.labels.get(i).map(String::as_str)
    }

    fn check_index(&self, i: usize) -> Result<(), TableError> {
        if i >= self.len() {
            return Err(TableError::UnknownElement(i));
        }
        Ok(())
    }

    /// Sets the cell for `(i, j)`. A defined result must itself be an
    /// element of the table.
    pub fn set_op(&mut self, i: usize, j: usize, entry: OpEntry) -> Result<(), TableError> {
        self.check_index(i)?;
        self.check_index(j)?;
        if let OpEntry::Defined { result } = entry {
            self.check_index(result)?;
        }
        let n = self.len();
        self.op[i * n + j] = Some(entry);
        Ok(())
    }

    /// The cell for `(i, j)`: `None` when the operation is undefined there.
    pub fn op(&self, i: usize, j: usize) -> Result<Option<OpEntry>, TableError> {
        self.check_index(i)?;
        self.check_index(j)?;
        Ok(self.entry(i, j))
    }

    fn entry(&self, i: usize, j: usize) -> Option<OpEntry> {
        self.op[i * self.len() + j]
    }

    /// Serializes the table to the text format: a header `elements: n`,
    /// label comments, then one `i j -> k` line per defined product, with
    /// `!` standing for a window-escaping product.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "elements: {}", self.len());
        for (i, label) in self.labels.iter().enumerate() {
            let _ = writeln!(out, "# {i}: {label}");
        }
        for i in 0..self.len() {
            for j in 0..self.len() {
                match self.entry(i, j) {
                    Some(OpEntry::Defined { result }) => {
                        let _ = writeln!(out, "{i} {j} -> {result}");
                    }
                    Some(OpEntry::EscapesWindow) => {
                        let _ = writeln!(out, "{i} {j} -> !");
                    }
                    None => {}
                }
            }
        }
        out
    }

    /// Parses the text format emitted by [`PartialOpTable::to_text`].
    /// Labels are not carried by the format; parsed elements are labeled by
    /// index.
    pub fn from_text(text: &str) -> Result<PartialOpTable, TableError> {
        let parse_err = |line: usize, msg: &str| TableError::Parse { line, msg: msg.to_string() };
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(idx, l)| (idx + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let Some((header_no, header)) = lines.next() else {
            return Err(parse_err(1, "missing `elements: n` header"));
        };
        let n: usize = header
            .strip_prefix("elements:")
            .map(str::trim)
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| parse_err(header_no, "expected `elements: n` header"))?;
        let mut table = PartialOpTable::new((0..n).map(|i| i.to_string()).collect());
        let mut seen = vec![false; n * n];
        for (line_no, line) in lines {
            let (pair, result) = line
                .split_once("->")
                .ok_or_else(|| parse_err(line_no, "expected `i j -> k`"))?;
            let mut pair = pair.split_whitespace();
            let (Some(i), Some(j), None) = (pair.next(), pair.next(), pair.next()) else {
                return Err(parse_err(line_no, "expected exactly two operand indices"));
            };
            let i: usize =
                i.parse().map_err(|_| parse_err(line_no, "operand is not an index"))?;
            let j: usize =
                j.parse().map_err(|_| parse_err(line_no, "operand is not an index"))?;
            let entry = match result.trim() {
                "!" => OpEntry::EscapesWindow,
                k => OpEntry::Defined {
                    result: k.parse().map_err(|_| parse_err(line_no, "result is not an index"))?,
                },
            };
            if i >= n || j >= n {
                return Err(parse_err(line_no, "operand index out of range"));
            }
            if seen[i * n + j] {
                return Err(parse_err(line_no, "duplicate product line"));
            }
            seen[i * n + j] = true;
            table.set_op(i, j, entry).map_err(|_| parse_err(line_no, "result index out of range"))?;
        }
        Ok(table)
    }
}

/// Pass/fail verdict of a table check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
}

/// How a triple breaks strong associativity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AssocFailure {
    /// One side is defined, the other is not.
    OneSideUndefined,
    /// Both sides are defined and disagree.
    BothDefinedUnequal,
}

/// A triple violating strong associativity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssocCounterexample {
    pub x: usize,
    pub y: usize,
    pub z: usize,
    pub kind: AssocFailure,
}

/// Result of a strong-associativity check. A failing report always carries
/// counterexamples (up to [`MAX_COUNTEREXAMPLES`]); triples that route
/// through a window-escaping product cannot be evaluated and are counted
/// as `window_censored` instead of being checked.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssocReport {
    pub status: CheckStatus,
    pub counterexamples: Vec<AssocCounterexample>,
    pub checked_triples: u64,
    pub window_censored: u64,
}

/// Cap on counterexamples retained per report.
pub const MAX_COUNTEREXAMPLES: usize = 16;

/// One side of an associativity triple, as far as the table can tell.
enum Side {
    Value(usize),
    Undefined,
    Censored,
}

fn side(table: &PartialOpTable, first: Option<OpEntry>, z: usize) -> Side {
    match first {
        None => Side::Undefined,
        Some(OpEntry::EscapesWindow) => Side::Censored,
        Some(OpEntry::Defined { result }) => match table.entry(result, z) {
            None => Side::Undefined,
            Some(OpEntry::EscapesWindow) => Side::Censored,
            Some(OpEntry::Defined { result }) => Side::Value(result),
        },
    }
}

#[derive(Default)]
struct RowReport {
    counterexamples: Vec<AssocCounterexample>,
    checked: u64,
    censored: u64,
}

fn assoc_row(table: &PartialOpTable, x: usize) -> RowReport {
    let n = table.len();
    let mut row = RowReport::default();
    for y in 0..n {
        let xy = table.entry(x, y);
        for z in 0..n {
            let lhs = side(table, xy, z);
            // Right side evaluates x * (y * z): resolve y*z, then left-apply.
            let rhs = match table.entry(y, z) {
                None => Side::Undefined,
                Some(OpEntry::EscapesWindow) => Side::Censored,
                Some(OpEntry::Defined { result }) => match table.entry(x, result) {
                    None => Side::Undefined,
                    Some(OpEntry::EscapesWindow) => Side::Censored,
                    Some(OpEntry::Defined { result }) => Side::Value(result),
                },
            };
            let kind = match (lhs, rhs) {
                (Side::Censored, _) | (_, Side::Censored) => {
                    row.censored += 1;
                    continue;
                }
                (Side::Value(a), Side::Value(b)) if a != b => {
                    Some(AssocFailure::BothDefinedUnequal)
                }
                (Side::Value(_), Side::Undefined) | (Side::Undefined, Side::Value(_)) => {
                    Some(AssocFailure::OneSideUndefined)
                }
                _ => None,
            };
            row.checked += 1;
            if let Some(kind) = kind {
                if row.counterexamples.len() < MAX_COUNTEREXAMPLES {
                    row.counterexamples.push(AssocCounterexample { x, y, z, kind });
                }
            }
        }
    }
    row
}

fn merge_rows(rows: Vec<RowReport>) -> AssocReport {
    let mut report = AssocReport {
        status: CheckStatus::Pass,
        counterexamples: Vec::new(),
        checked_triples: 0,
        window_censored: 0,
    };
    let mut failures = false;
    for row in rows {
        report.checked_triples += row.checked;
        report.window_censored += row.censored;
        failures |= !row.counterexamples.is_empty();
        for ce in row.counterexamples {
            if report.counterexamples.len() < MAX_COUNTEREXAMPLES {
                report.counterexamples.push(ce);
            }
        }
    }
    if failures {
        report.status = CheckStatus::Fail;
    }
    report
}

/// Verifies strong associativity on all triples: if either of `(x*y)*z`
/// and `x*(y*z)` is defined, the other must be defined and equal. Scans
/// rows in parallel when the `parallel` feature is on; the report is
/// identical either way.
pub fn check_partial_associativity(table: &PartialOpTable) -> AssocReport {
    let rows = par::map_collect_vec((0..table.len()).collect(), |x| assoc_row(table, x));
    merge_rows(rows)
}

/// Sequential twin of [`check_partial_associativity`]; identical reports.
pub fn check_partial_associativity_seq(table: &PartialOpTable) -> AssocReport {
    merge_rows((0..table.len()).map(|x| assoc_row(table, x)).collect())
}

/// `R_S(x)`: every `s` for which `x * s` is defined by the operation.
/// Window-escaping products count — the operation does define them; only
/// the table's window fails to contain the result.
pub fn right_set(table: &PartialOpTable, x: usize) -> Result<Vec<usize>, TableError> {
    table.check_index(x)?;
    Ok((0..table.len()).filter(|s| table.entry(x, *s).is_some()).collect())
}

/// Outcome of the adequacy check: a finite table is adequate exactly when
/// some element lies in every `R_S(x)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdequacyReport {
    pub adequate: bool,
    pub witness: Option<usize>,
}

/// Checks adequacy by intersecting all R-sets; returns the first witness
/// in index order. The empty table is vacuously adequate.
pub fn check_adequate(table: &PartialOpTable) -> AdequacyReport {
    let n = table.len();
    let witness = (0..n).find(|s| (0..n).all(|x| table.entry(x, *s).is_some()));
    AdequacyReport { adequate: n == 0 || witness.is_some(), witness }
}

/// Elements with `p * p = p`.
pub fn idempotents(table: &PartialOpTable) -> Vec<usize> {
    (0..table.len())
        .filter(|p| table.entry(*p, *p) == Some(OpEntry::Defined { result: *p }))
        .collect()
}

fn member_mask(table: &PartialOpTable, subset: &[usize]) -> Result<Vec<bool>, TableError> {
    let mut mask = vec![false; table.len()];
    for &i in subset {
        table.check_index(i)?;
        mask[i] = true;
    }
    Ok(mask)
}

/// True iff `y * x` stays in the subset for every `x` in it and every `y`
/// whose product with it is defined. Products censored by the window are
/// not judged.
pub fn is_left_ideal(table: &PartialOpTable, subset: &[usize]) -> Result<bool, TableError> {
    let mask = member_mask(table, subset)?;
    for &x in subset {
        for y in 0..table.len() {
            if let Some(OpEntry::Defined { result }) = table.entry(y, x) {
                if !mask[result] {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Mirror of [`is_left_ideal`] for products `x * y`.
pub fn is_right_ideal(table: &PartialOpTable, subset: &[usize]) -> Result<bool, TableError> {
    let mask = member_mask(table, subset)?;
    for &x in subset {
        for y in 0..table.len() {
            if let Some(OpEntry::Defined { result }) = table.entry(x, y) {
                if !mask[result] {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Result of the commutativity check on defined pairs; definedness itself
/// must agree, so a pair defined on one side only is a counterexample.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommReport {
    pub status: CheckStatus,
    pub counterexamples: Vec<(usize, usize)>,
    pub checked_pairs: u64,
}

/// Compares `op(a, b)` with `op(b, a)`, including definedness and window
/// classification.
pub fn check_commutativity(table: &PartialOpTable) -> CommReport {
    let n = table.len();
    let mut report =
        CommReport { status: CheckStatus::Pass, counterexamples: Vec::new(), checked_pairs: 0 };
    for a in 0..n {
        for b in a..n {
            report.checked_pairs += 1;
            if table.entry(a, b) != table.entry(b, a) {
                report.status = CheckStatus::Fail;
                if report.counterexamples.len() < MAX_COUNTEREXAMPLES {
                    report.counterexamples.push((a, b));
                }
            }
        }
    }
    report
}

// ---------------------------------------------------------------------------
// Truncation builders
// ---------------------------------------------------------------------------

/// A finite window of S({η_i}) = ⋃ S_i with S_i = {x + r•η_i} ∪ Ir,
/// together with the data needed to audit it.
#[derive(Debug, Clone)]
pub struct TruncatedSTable {
    pub table: PartialOpTable,
    /// Element index → symbolic value; labels are the same values as text.
    pub elements: Vec<SymPoly>,
    /// Per direction `i`, the sorted element indices of the S_i fragment.
    pub membership: Vec<Vec<usize>>,
    /// The element indices of the pool (the Ir fragment).
    pub ir_indices: Vec<usize>,
}

struct ElementArena {
    elements: Vec<SymPoly>,
    index: HashMap<SymPoly, usize>,
}

impl ElementArena {
    fn new() -> ElementArena {
        ElementArena { elements: Vec::new(), index: HashMap::new() }
    }

    fn intern(&mut self, value: SymPoly) -> usize {
        if let Some(&i) = self.index.get(&value) {
            return i;
        }
        let i = self.elements.len();
        self.index.insert(value.clone(), i);
        self.elements.push(value);
        i
    }

    fn lookup(&self, value: &SymPoly) -> Option<usize> {
        self.index.get(value).copied()
    }
}

fn check_pool(etas: &[SymPoly], x_pool: &[SymPoly]) -> Result<(), TableError> {
    if x_pool.is_empty() {
        return Err(TableError::PoolNotInIr);
    }
    for x in x_pool {
        if !in_ir(x, etas)? {
            return Err(TableError::PoolNotInIr);
        }
    }
    Ok(())
}

fn diagonal_scaled(eta: &SymPoly, r: i64) -> Result<SymPoly, TableError> {
    Ok(eta.scale(&vec![r; eta.cap()])?)
}

/// Builds the truncated table of S({η_i}): elements are `x + r•η_i` for
/// diagonal `r ∈ [-r_bound, r_bound]` and `x` from the pool, plus the pool
/// itself; `a + b` is defined when some `S_i` contains both, and lands in
/// the table only when the sum was itself enumerated.
///
/// The pool stands in for Ir and must lie in the common irreducible set of
/// all the directions.
pub fn build_truncated_s(
    etas: &[SymPoly],
    r_bound: u64,
    x_pool: &[SymPoly],
) -> Result<TruncatedSTable, TableError> {
    check_pool(etas, x_pool)?;
    let r_bound = i64::try_from(r_bound).map_err(|_| crate::AlgebraError::Overflow)?;
    let mut arena = ElementArena::new();
    let mut membership: Vec<Vec<usize>> = Vec::with_capacity(etas.len());
    let mut ir_indices: Vec<usize> = Vec::new();
    for x in x_pool {
        let i = arena.intern(x.clone());
        if !ir_indices.contains(&i) {
            ir_indices.push(i);
        }
    }
    for eta in etas {
        let mut fragment = Vec::new();
        for x in x_pool {
            for r in -r_bound..=r_bound {
                let idx = arena.intern(x.add(&diagonal_scaled(eta, r)?)?);
                if !fragment.contains(&idx) {
                    fragment.push(idx);
                }
            }
        }
        // The pool is part of every S_i ("∪ Ir").
        fragment.extend_from_slice(&ir_indices);
        fragment.sort_unstable();
        fragment.dedup();
        membership.push(fragment);
    }
    let n = arena.elements.len();
    let mut masks: Vec<Vec<bool>> = Vec::with_capacity(etas.len());
    for fragment in &membership {
        let mut mask = vec![false; n];
        for &i in fragment {
            mask[i] = true;
        }
        masks.push(mask);
    }
    let labels = arena.elements.iter().map(|e| e.to_string()).collect();
    let mut table = PartialOpTable::new(labels);
    for a in 0..n {
        for b in 0..n {
            if !masks.iter().any(|m| m[a] && m[b]) {
                continue;
            }
            let sum = arena.elements[a].add(&arena.elements[b])?;
            let entry = match arena.lookup(&sum) {
                Some(k) => OpEntry::Defined { result: k },
                None => OpEntry::EscapesWindow,
            };
            table.set_op(a, b, entry).expect("indices come from the arena");
        }
    }
    Ok(TruncatedSTable { table, elements: arena.elements, membership, ir_indices })
}

/// A finite window of V({η_i}) = I ∪ Δ_Ir, whose elements are m-tuples:
/// the I fragment shifts one pool element by one diagonal scale across all
/// directions at once, and the Δ fragment repeats a pool element.
#[derive(Debug, Clone)]
pub struct TruncatedVTable {
    pub table: PartialOpTable,
    pub elements: Vec<Vec<SymPoly>>,
    /// Element indices of the I fragment.
    pub ideal_indices: Vec<usize>,
}

/// Builds the truncated table of V({η_i}) under componentwise addition.
/// Every product is defined by the operation (component `i` of both
/// operands lies in `S_i`), so cells are only ever `Defined` or
/// `EscapesWindow`.
pub fn build_truncated_v(
    etas: &[SymPoly],
    r_bound: u64,
    x_pool: &[SymPoly],
) -> Result<TruncatedVTable, TableError> {
    check_pool(etas, x_pool)?;
    let r_bound = i64::try_from(r_bound).map_err(|_| crate::AlgebraError::Overflow)?;
    let mut elements: Vec<Vec<SymPoly>> = Vec::new();
    let mut index: HashMap<Vec<SymPoly>, usize> = HashMap::new();
    let mut intern = |tuple: Vec<SymPoly>, elements: &mut Vec<Vec<SymPoly>>| -> usize {
        if let Some(&i) = index.get(&tuple) {
            return i;
        }
        let i = elements.len();
        index.insert(tuple.clone(), i);
        elements.push(tuple);
        i
    };
    let mut ideal_indices = Vec::new();
    for x in x_pool {
        for r in -r_bound..=r_bound {
            let mut tuple = Vec::with_capacity(etas.len());
            for eta in etas {
                tuple.push(x.add(&diagonal_scaled(eta, r)?)?);
            }
            let i = intern(tuple, &mut elements);
            if !ideal_indices.contains(&i) {
                ideal_indices.push(i);
            }
        }
    }
    for x in x_pool {
        intern(vec![x.clone(); etas.len()], &mut elements);
    }
    let n = elements.len();
    let labels = elements
        .iter()
        .map(|tuple| {
            let parts: Vec<String> = tuple.iter().map(|c| c.to_string()).collect();
            format!("({})", parts.join(", "))
        })
        .collect();
    let mut table = PartialOpTable::new(labels);
    for a in 0..n {
        for b in 0..n {
            let mut sum = Vec::with_capacity(etas.len());
            for (u, v) in elements[a].iter().zip(&elements[b]) {
                sum.push(u.add(v)?);
            }
            let entry = match index.get(&sum) {
                Some(&k) => OpEntry::Defined { result: k },
                None => OpEntry::EscapesWindow,
            };
            table.set_op(a, b, entry).expect("indices come from the interner");
        }
    }
    Ok(TruncatedVTable { table, elements, ideal_indices })
}
