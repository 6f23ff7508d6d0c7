//! Input grammars: term and polynomial literals, colorings, and index sets.
//!
//! Everything here parses the exact text the engine's `Display`
//! implementations emit, so emit-then-parse is the identity on every value.

use std::fs;

use symvdw::evaluation::{IntPoly, MultiIntPoly};
use symvdw::multivar::{MultiCaps, MultiSymPoly, MultiTerm};
use symvdw::shifts::IndexSet;
use symvdw::sympoly::SymPoly;
use symvdw::term_algebra::Term;
use symvdw::vdw_search::Coloring;
use symvdw::{AlgebraError, SearchError};

#[derive(Debug, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("cannot mix the one-variable `n` style with indexed `x<i>` variables")]
    MixedVariableStyles,
    #[error("modulus {expect} needs exactly {expect} colors, got {got}")]
    BadColorCount { expect: usize, got: usize },
    #[error("cannot read coloring file {path}: {source}")]
    FileUnreadable {
        path: String,
        source: std::io::Error,
    },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Search(#[from] SearchError),
}

fn syntax(pos: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Syntax { pos, msg: msg.into() }
}

/// A byte cursor over the input; every error carries the current offset.
struct Scanner<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Scanner<'a> {
    fn new(text: &'a str) -> Scanner<'a> {
        Scanner { bytes: text.as_bytes(), pos: 0 }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let b = self.peek();
        if b.is_some() {
            self.pos += 1;
        }
        b
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b) if b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, b: u8) -> Result<(), ParseError> {
        if self.eat(b) {
            Ok(())
        } else {
            Err(syntax(self.pos, format!("expected `{}`", b as char)))
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.bytes.len()
    }

    fn expect_end(&mut self) -> Result<(), ParseError> {
        self.skip_ws();
        if self.at_end() {
            Ok(())
        } else {
            Err(syntax(self.pos, "unexpected trailing input"))
        }
    }

    /// An unsigned digit run as `u64`.
    fn digits(&mut self) -> Result<u64, ParseError> {
        let start = self.pos;
        let mut value: u64 = 0;
        while let Some(b @ b'0'..=b'9') = self.peek() {
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add(u64::from(b - b'0')))
                .ok_or_else(|| syntax(start, "number out of range"))?;
            self.pos += 1;
        }
        if self.pos == start {
            return Err(syntax(self.pos, "expected digits"));
        }
        Ok(value)
    }

    /// An optionally signed integer.
    fn integer(&mut self) -> Result<i64, ParseError> {
        let start = self.pos;
        let negative = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        let magnitude = self.digits()?;
        let limit = if negative { 1u64 << 63 } else { (1u64 << 63) - 1 };
        if magnitude > limit {
            return Err(syntax(start, "number out of range"));
        }
        Ok(if negative { (magnitude as i128).wrapping_neg() as i64 } else { magnitude as i64 })
    }

    /// A comma-separated integer list (at least one element).
    fn integer_list(&mut self) -> Result<Vec<i64>, ParseError> {
        let mut out = vec![self.integer()?];
        while self.eat(b',') {
            out.push(self.integer()?);
        }
        Ok(out)
    }
}

// ---------------------------------------------------------------------------
// Symbolic literals
// ---------------------------------------------------------------------------

/// One `T{iota;c1,...}` literal at the cursor.
fn scan_term(s: &mut Scanner<'_>, cap: usize) -> Result<Term, ParseError> {
    s.skip_ws();
    s.expect(b'T')?;
    s.expect(b'{')?;
    let iota = s.integer()?;
    s.expect(b';')?;
    let coeffs = s.integer_list()?;
    s.expect(b'}')?;
    Ok(Term::new(iota, coeffs, cap)?)
}

#[cfg(test)]
fn parse_term(text: &str, cap: usize) -> Result<Term, ParseError> {
    let mut s = Scanner::new(text);
    let term = scan_term(&mut s, cap)?;
    s.expect_end()?;
    Ok(term)
}

/// A `+`-joined sum of `T{..}` literals.
pub fn parse_sympoly(text: &str, cap: usize) -> Result<SymPoly, ParseError> {
    let mut s = Scanner::new(text);
    let mut terms = vec![scan_term(&mut s, cap)?];
    loop {
        s.skip_ws();
        if s.eat(b'+') {
            terms.push(scan_term(&mut s, cap)?);
        } else {
            s.expect_end()?;
            return Ok(SymPoly::new(terms)?);
        }
    }
}

/// One `M{iota;[..];[..];...}` literal at the cursor. The number of bracket
/// groups fixes `k`; `m` comes from the caller.
fn scan_multiterm(s: &mut Scanner<'_>, m: usize) -> Result<MultiTerm, ParseError> {
    s.skip_ws();
    s.expect(b'M')?;
    s.expect(b'{')?;
    let iota = s.integer()?;
    let mut blocks = Vec::new();
    loop {
        s.skip_ws();
        if s.eat(b'}') {
            break;
        }
        s.expect(b';')?;
        s.skip_ws();
        s.expect(b'[')?;
        s.skip_ws();
        let block = if s.eat(b']') {
            Vec::new()
        } else {
            let block = s.integer_list()?;
            s.expect(b']')?;
            block
        };
        blocks.push(block);
    }
    let caps = MultiCaps::new(blocks.len(), m)?;
    Ok(MultiTerm::new(iota, blocks, caps)?)
}

pub fn parse_multipoly(text: &str, m: usize) -> Result<MultiSymPoly, ParseError> {
    let mut s = Scanner::new(text);
    let mut terms = vec![scan_multiterm(&mut s, m)?];
    loop {
        s.skip_ws();
        if s.eat(b'+') {
            terms.push(scan_multiterm(&mut s, m)?);
        } else {
            s.expect_end()?;
            return Ok(MultiSymPoly::new(terms)?);
        }
    }
}

// ---------------------------------------------------------------------------
// Integer polynomials
// ---------------------------------------------------------------------------

/// A parsed polynomial in either variable style.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParsedPoly {
    One(IntPoly),
    Multi(MultiIntPoly),
}

/// A monomial before the style is resolved: exponent per variable index
/// (index 0 is `n`).
struct RawPoly {
    uses_n: bool,
    max_x: usize,
    monomials: Vec<(Vec<(usize, u32)>, i64)>,
}

fn scan_raw_poly(s: &mut Scanner<'_>) -> Result<RawPoly, ParseError> {
    let mut raw = RawPoly { uses_n: false, max_x: 0, monomials: Vec::new() };
    let mut first = true;
    loop {
        s.skip_ws();
        if s.at_end() && !first {
            break;
        }
        let sign = if s.eat(b'-') {
            -1i64
        } else if s.eat(b'+') || first {
            1
        } else {
            break;
        };
        s.skip_ws();
        let mut coeff: Option<i64> = None;
        if matches!(s.peek(), Some(b'0'..=b'9')) {
            let magnitude = s.digits()?;
            if magnitude > (1u64 << 63) - 1 {
                return Err(syntax(s.pos, "coefficient out of range"));
            }
            coeff = Some(magnitude as i64);
        }
        // Factors: `n` or `x<i>`, each with an optional `^exp`, joined by
        // an optional `*`.
        let mut factors: Vec<(usize, u32)> = Vec::new();
        loop {
            s.skip_ws();
            let starred = s.eat(b'*');
            if starred {
                s.skip_ws();
            }
            let var = match s.peek() {
                Some(b'n') => {
                    s.bump();
                    raw.uses_n = true;
                    0usize
                }
                Some(b'x') => {
                    s.bump();
                    let at = s.pos;
                    let idx = s.digits()? as usize;
                    if idx == 0 {
                        return Err(syntax(at, "variable index must be at least 1"));
                    }
                    raw.max_x = raw.max_x.max(idx);
                    idx
                }
                _ => {
                    if starred {
                        return Err(syntax(s.pos, "expected a variable after `*`"));
                    }
                    break;
                }
            };
            let exp = if s.eat(b'^') {
                let at = s.pos;
                let e = s.digits()?;
                u32::try_from(e).map_err(|_| syntax(at, "exponent out of range"))?
            } else {
                1
            };
            factors.push((var, exp));
        }
        if coeff.is_none() && factors.is_empty() {
            return Err(syntax(s.pos, "expected a coefficient or a variable"));
        }
        let coeff = sign * coeff.unwrap_or(1);
        raw.monomials.push((factors, coeff));
        first = false;
    }
    if raw.uses_n && raw.max_x > 0 {
        return Err(ParseError::MixedVariableStyles);
    }
    Ok(raw)
}

/// The shared polynomial grammar: signed integer coefficients, variables
/// `n` or `x<i>`, `^` exponents, `*` optional between factors, whitespace
/// insignificant.
pub fn parse_polynomial(text: &str) -> Result<ParsedPoly, ParseError> {
    let mut s = Scanner::new(text);
    s.skip_ws();
    if s.at_end() {
        return Err(syntax(0, "empty polynomial"));
    }
    let raw = scan_raw_poly(&mut s)?;
    s.expect_end()?;
    if raw.max_x > 0 {
        let k = raw.max_x;
        let entries = raw.monomials.into_iter().map(|(factors, coeff)| {
            let mut exps = vec![0u32; k];
            for (var, e) in factors {
                exps[var - 1] = exps[var - 1].saturating_add(e);
            }
            (exps, coeff)
        });
        Ok(ParsedPoly::Multi(MultiIntPoly::new(k, entries)?))
    } else {
        let top = raw
            .monomials
            .iter()
            .map(|(factors, _)| factors.iter().map(|(_, e)| *e as usize).sum::<usize>())
            .max()
            .unwrap_or(0);
        let mut dense = vec![0i64; top + 1];
        for (factors, coeff) in raw.monomials {
            let exp: usize = factors.iter().map(|(_, e)| *e as usize).sum();
            dense[exp] = dense[exp]
                .checked_add(coeff)
                .ok_or(AlgebraError::Overflow)?;
        }
        Ok(ParsedPoly::One(IntPoly::new(dense)))
    }
}

/// A comma-separated polynomial list; the multivariable entries are rebuilt
/// over the largest variable count seen so the list is homogeneous.
pub fn parse_poly_list(text: &str) -> Result<Vec<ParsedPoly>, ParseError> {
    let parsed: Vec<ParsedPoly> =
        text.split(',').map(parse_polynomial).collect::<Result<_, _>>()?;
    let k = parsed
        .iter()
        .map(|p| match p {
            ParsedPoly::One(_) => 0,
            ParsedPoly::Multi(m) => m.k(),
        })
        .max()
        .unwrap_or(0);
    if k == 0 {
        return Ok(parsed);
    }
    parsed
        .into_iter()
        .map(|p| match p {
            ParsedPoly::One(p) if p.is_zero() => {
                Ok(ParsedPoly::Multi(MultiIntPoly::new(k, Vec::<(Vec<u32>, i64)>::new())?))
            }
            ParsedPoly::One(p) if p.degree() == Some(0) => {
                Ok(ParsedPoly::Multi(MultiIntPoly::new(k, [(vec![0; k], p.coeff(0))])?))
            }
            ParsedPoly::One(_) => Err(ParseError::MixedVariableStyles),
            ParsedPoly::Multi(m) => {
                let entries = m.monomials().iter().map(|(exps, c)| {
                    let mut padded = exps.clone();
                    padded.resize(k, 0);
                    (padded, *c)
                });
                Ok(ParsedPoly::Multi(MultiIntPoly::new(k, entries)?))
            }
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Colorings and index sets
// ---------------------------------------------------------------------------

fn color_list(text: &str, offset: usize) -> Result<Vec<u32>, ParseError> {
    text.split(',')
        .map(|part| {
            part.trim()
                .parse::<u32>()
                .map_err(|_| syntax(offset, format!("bad color `{}`", part.trim())))
        })
        .collect()
}

/// `mod:q:c0,…` | `explicit:lo:c0,…` | `random:r:seed:lo:hi` | `file:PATH`.
pub fn parse_coloring(text: &str) -> Result<Coloring, ParseError> {
    let t = text.trim();
    if let Some(rest) = t.strip_prefix("mod:") {
        let (q_str, colors_str) = rest
            .split_once(':')
            .ok_or_else(|| syntax(t.len(), "expected `mod:q:c0,...`"))?;
        let q: usize = q_str
            .trim()
            .parse()
            .map_err(|_| syntax(4, format!("bad modulus `{}`", q_str.trim())))?;
        let colors = color_list(colors_str, 5 + q_str.len())?;
        if colors.len() != q {
            return Err(ParseError::BadColorCount { expect: q, got: colors.len() });
        }
        Ok(Coloring::modular(colors)?)
    } else if let Some(rest) = t.strip_prefix("explicit:") {
        let (lo_str, colors_str) = rest
            .split_once(':')
            .ok_or_else(|| syntax(t.len(), "expected `explicit:lo:c0,...`"))?;
        let lo: i64 = lo_str
            .trim()
            .parse()
            .map_err(|_| syntax(9, format!("bad window start `{}`", lo_str.trim())))?;
        Ok(Coloring::explicit(lo, color_list(colors_str, 10 + lo_str.len())?)?)
    } else if let Some(rest) = t.strip_prefix("random:") {
        let parts: Vec<&str> = rest.split(':').collect();
        let [r, seed, lo, hi] = parts.as_slice() else {
            return Err(syntax(7, "expected `random:r:seed:lo:hi`"));
        };
        let num_colors: u32 =
            r.trim().parse().map_err(|_| syntax(7, format!("bad color count `{}`", r.trim())))?;
        let seed: u64 = seed
            .trim()
            .parse()
            .map_err(|_| syntax(7, format!("bad seed `{}`", seed.trim())))?;
        let lo: i64 = lo
            .trim()
            .parse()
            .map_err(|_| syntax(7, format!("bad window start `{}`", lo.trim())))?;
        let hi: i64 = hi
            .trim()
            .parse()
            .map_err(|_| syntax(7, format!("bad window end `{}`", hi.trim())))?;
        Ok(Coloring::seeded_random(num_colors, seed, lo, hi)?)
    } else if let Some(path) = t.strip_prefix("file:") {
        parse_coloring_file(path.trim())
    } else {
        Err(syntax(0, "expected `mod:`, `explicit:`, `random:`, or `file:`"))
    }
}

/// Lines of `integer color` covering a contiguous window.
fn parse_coloring_file(path: &str) -> Result<Coloring, ParseError> {
    let body = fs::read_to_string(path)
        .map_err(|source| ParseError::FileUnreadable { path: path.to_string(), source })?;
    let mut pairs: Vec<(i64, u32)> = Vec::new();
    for (idx, line) in body.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut fields = line.split_whitespace();
        let (Some(v), Some(c), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(syntax(idx + 1, "expected `integer color` per line"));
        };
        let v: i64 =
            v.parse().map_err(|_| syntax(idx + 1, format!("bad integer `{v}`")))?;
        let c: u32 = c.parse().map_err(|_| syntax(idx + 1, format!("bad color `{c}`")))?;
        pairs.push((v, c));
    }
    if pairs.is_empty() {
        return Err(syntax(1, "coloring file has no entries"));
    }
    pairs.sort_by_key(|(v, _)| *v);
    for w in pairs.windows(2) {
        if w[1].0 == w[0].0 {
            return Err(syntax(1, format!("value {} is colored twice", w[0].0)));
        }
        if w[1].0 != w[0].0 + 1 {
            return Err(syntax(
                1,
                format!("colored values must be contiguous; gap after {}", w[0].0),
            ));
        }
    }
    let lo = pairs[0].0;
    Ok(Coloring::explicit(lo, pairs.into_iter().map(|(_, c)| c).collect())?)
}

/// `{1,3,4}`.
pub fn parse_index_set(text: &str) -> Result<IndexSet, ParseError> {
    let mut s = Scanner::new(text);
    s.skip_ws();
    s.expect(b'{')?;
    s.skip_ws();
    let elements = if s.eat(b'}') {
        Vec::new()
    } else {
        let mut out = Vec::new();
        loop {
            s.skip_ws();
            let at = s.pos;
            let v = s.digits().map_err(|_| syntax(at, "expected an index"))?;
            out.push(v);
            s.skip_ws();
            if s.eat(b'}') {
                break;
            }
            s.expect(b',')?;
        }
        out
    };
    s.expect_end()?;
    Ok(IndexSet::new(elements)?)
}

/// A scale vector: either one integer (applied diagonally) or a full
/// comma-separated slot list.
pub fn parse_scale_vector(text: &str, cap: usize) -> Result<Vec<i64>, ParseError> {
    let mut s = Scanner::new(text);
    s.skip_ws();
    let values = s.integer_list()?;
    s.expect_end()?;
    if values.len() == 1 {
        Ok(vec![values[0]; cap])
    } else {
        Ok(values)
    }
}

/// A comma-separated list of element indices into a table.
pub fn parse_subset(text: &str) -> Result<Vec<usize>, ParseError> {
    text.split(',')
        .map(|part| {
            part.trim()
                .parse::<usize>()
                .map_err(|_| syntax(0, format!("bad element index `{}`", part.trim())))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn term_literal_round_trips() {
        let t = parse_term("T{2;3,-1}", 4).unwrap();
        assert_eq!(t.iota(), 2);
        assert_eq!(t.coeffs(), [3, -1]);
        assert_eq!(parse_term(&t.to_string(), 4).unwrap(), t);
    }

    #[test]
    fn sympoly_literal_round_trips() {
        let x = parse_sympoly("T{3;1,1} + T{1;2}", 4).unwrap();
        assert_eq!(x.to_string(), "T{1;2} + T{3;1,1}");
        assert_eq!(parse_sympoly(&x.to_string(), 4).unwrap(), x);
    }

    #[test]
    fn multiterm_literal_accepts_empty_blocks() {
        let t = parse_multipoly("M{1; [2,3]; []}", 3).unwrap();
        assert_eq!(t.terms()[0].signature(), vec![2, 0]);
        assert_eq!(parse_multipoly(&t.to_string(), 3).unwrap(), t);
    }

    #[test]
    fn one_variable_polynomial_grammar() {
        let ParsedPoly::One(p) = parse_polynomial("3n^2 + 2n").unwrap() else {
            panic!("expected one-variable");
        };
        assert_eq!(p.coeffs(), [0, 2, 3]);
        let ParsedPoly::One(q) = parse_polynomial(&p.to_string()).unwrap() else {
            panic!("expected one-variable");
        };
        assert_eq!(q, p);
    }

    #[test]
    fn multivariable_polynomial_grammar() {
        let ParsedPoly::Multi(p) = parse_polynomial("x1^2*x2 - 4x3").unwrap() else {
            panic!("expected multivariable");
        };
        assert_eq!(p.k(), 3);
        assert_eq!(p.monomials().get(&vec![2, 1, 0]), Some(&1));
        assert_eq!(p.monomials().get(&vec![0, 0, 1]), Some(&-4));
        let ParsedPoly::Multi(q) = parse_polynomial(&p.to_string()).unwrap() else {
            panic!("expected multivariable");
        };
        assert_eq!(q, p);
    }

    #[test]
    fn dangling_caret_reports_its_position() {
        let err = parse_polynomial("3n^").unwrap_err();
        assert!(matches!(err, ParseError::Syntax { pos: 3, .. }), "{err:?}");
    }

    #[test]
    fn mixed_styles_are_rejected() {
        assert!(matches!(
            parse_polynomial("n + x1"),
            Err(ParseError::MixedVariableStyles)
        ));
    }

    #[test]
    fn coloring_schemes() {
        assert_eq!(parse_coloring("mod:2:0,1").unwrap().to_string(), "mod:2:0,1");
        assert_eq!(
            parse_coloring("explicit:-1:2,0,1").unwrap().to_string(),
            "explicit:-1:2,0,1"
        );
        assert_eq!(
            parse_coloring("random:3:42:-100:100").unwrap(),
            parse_coloring("random:3:42:-100:100").unwrap()
        );
        assert!(matches!(
            parse_coloring("mod:2:0"),
            Err(ParseError::BadColorCount { expect: 2, got: 1 })
        ));
        assert!(matches!(
            parse_coloring("file:/does/not/exist"),
            Err(ParseError::FileUnreadable { .. })
        ));
    }

    #[test]
    fn index_sets() {
        let set = parse_index_set("{1,3,4}").unwrap();
        assert_eq!(set.elements(), [1, 3, 4]);
        assert_eq!(parse_index_set(&set.to_string()).unwrap(), set);
        assert!(parse_index_set("{}").is_err());
    }
}
