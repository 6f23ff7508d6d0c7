//! Acceptance suite: one test per shipped guarantee, in the order the
//! guarantees are documented. Each test prints a single `criterion N: PASS`
//! line on success; any violation fails the test instead.

use std::cmp::Ordering;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use symvdw::evaluation::{
    encode_multi, encode_poly, eval_pmulti, eval_px, pi_poly, IntPoly, MultiIntPoly,
};
use symvdw::multivar::{MultiCaps, MultiSymPoly, MultiTerm};
use symvdw::partial_semigroup::{
    build_truncated_s, check_adequate, check_commutativity, check_partial_associativity,
    CheckStatus,
};
use symvdw::shifts::{ip_sum, shift, IndexSet, SequenceSpec};
use symvdw::sympoly::SymPoly;
use symvdw::term_algebra::Term;
use symvdw::vdw_search::{
    ap_polys, exhaustive_oracle_ap, exhaustive_oracle_ip, exhaustive_oracle_multivar,
    exhaustive_oracle_poly, find_ap, find_ip_vdw, find_ip_vdw_seq, find_multivar_vdw,
    find_poly_vdw, find_poly_vdw_seq, verify_witness, verify_witness_multi, Coloring, Witness,
    WitnessParam,
};
use symvdw::SearchError;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// All vectors over `vals` of the given length.
fn tuples(len: usize, vals: &[i64]) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<i64>| {
                vals.iter().map(move |v| {
                    let mut next = prefix.clone();
                    next.push(*v);
                    next
                })
            })
            .collect();
    }
    out
}

/// A random polynomial: up to `max_terms` terms with pairwise-distinct keys.
fn random_sympoly(r: &mut ChaCha8Rng, cap: usize, max_terms: usize, bound: i64) -> SymPoly {
    let want = r.random_range(1..=max_terms);
    let mut terms: Vec<Term> = Vec::new();
    for _ in 0..want * 8 {
        if terms.len() == want {
            break;
        }
        let len = r.random_range(1..=cap);
        let iota = r.random_range(-bound..=bound);
        let coeffs = (0..len).map(|_| r.random_range(-bound..=bound)).collect();
        let t = Term::new(iota, coeffs, cap).unwrap();
        if terms.iter().all(|u| u.key() != t.key()) {
            terms.push(t);
        }
    }
    SymPoly::new(terms).unwrap()
}

/// A random polynomial every term of which is irreducible against `avoid`.
fn random_sympoly_avoiding(
    r: &mut ChaCha8Rng,
    cap: usize,
    max_terms: usize,
    bound: i64,
    avoid: &SymPoly,
) -> SymPoly {
    for _ in 0..1_000 {
        let x = random_sympoly(r, cap, max_terms, bound);
        let clash = x
            .terms()
            .iter()
            .any(|t| avoid.terms().iter().any(|u| u.key() == t.key()));
        if !clash {
            return x;
        }
    }
    panic!("could not sample a polynomial disjoint from {avoid:?}");
}

fn random_multipoly(
    r: &mut ChaCha8Rng,
    caps: MultiCaps,
    max_terms: usize,
    bound: i64,
) -> MultiSymPoly {
    let want = r.random_range(1..=max_terms);
    let mut terms: Vec<MultiTerm> = Vec::new();
    for _ in 0..want * 8 {
        if terms.len() == want {
            break;
        }
        let iota = r.random_range(-bound..=bound);
        let blocks = (0..caps.k())
            .map(|_| {
                let len = r.random_range(0..=caps.m());
                (0..len).map(|_| r.random_range(-bound..=bound)).collect()
            })
            .collect();
        let t = MultiTerm::new(iota, blocks, caps).unwrap();
        if terms.iter().all(|u| u.cmp_key(&t) != Ordering::Equal) {
            terms.push(t);
        }
    }
    MultiSymPoly::new(terms).unwrap()
}

fn random_multipoly_avoiding(
    r: &mut ChaCha8Rng,
    caps: MultiCaps,
    max_terms: usize,
    bound: i64,
    avoid: &MultiSymPoly,
) -> MultiSymPoly {
    for _ in 0..1_000 {
        let x = random_multipoly(r, caps, max_terms, bound);
        let clash = x
            .terms()
            .iter()
            .any(|t| avoid.terms().iter().any(|u| u.cmp_key(t) == Ordering::Equal));
        if !clash {
            return x;
        }
    }
    panic!("could not sample a multipolynomial disjoint from {avoid:?}");
}

/// A random nonzero constant-free integer polynomial.
fn random_intpoly(r: &mut ChaCha8Rng, max_deg: usize, bound: i64) -> IntPoly {
    loop {
        let deg = r.random_range(1..=max_deg);
        let mut coeffs = vec![0i64];
        coeffs.extend((0..deg).map(|_| r.random_range(-bound..=bound)));
        let p = IntPoly::new(coeffs);
        if !p.is_zero() {
            return p;
        }
    }
}

/// A random nonzero constant-free multivariable integer polynomial.
fn random_multi_intpoly(
    r: &mut ChaCha8Rng,
    k: usize,
    max_monos: usize,
    max_exp_sum: u32,
    bound: i64,
) -> MultiIntPoly {
    loop {
        let count = r.random_range(1..=max_monos);
        let mut entries = Vec::with_capacity(count);
        for _ in 0..count {
            let exps: Vec<u32> = loop {
                let exps: Vec<u32> =
                    (0..k).map(|_| r.random_range(0..=max_exp_sum)).collect();
                let total: u32 = exps.iter().sum();
                if total >= 1 && total <= max_exp_sum {
                    break exps;
                }
            };
            entries.push((exps, r.random_range(-bound..=bound)));
        }
        let p = MultiIntPoly::new(k, entries).unwrap();
        if !p.is_zero() {
            return p;
        }
    }
}

fn random_spec(r: &mut ChaCha8Rng, table_len: usize) -> SequenceSpec {
    match r.random_range(0..4) {
        0 => SequenceSpec::Identity,
        1 => SequenceSpec::Constant(r.random_range(-3..=3)),
        2 => SequenceSpec::Power(r.random_range(1..=2)),
        _ => SequenceSpec::Table(
            (0..table_len).map(|_| r.random_range(-3..=3)).collect(),
        ),
    }
}

fn random_index_set(r: &mut ChaCha8Rng, max_index: u64, max_size: usize) -> IndexSet {
    let mut pool: Vec<u64> = (1..=max_index).collect();
    pool.shuffle(r);
    let size = r.random_range(1..=max_size.min(pool.len()));
    IndexSet::new(pool[..size].to_vec()).unwrap()
}

fn random_coloring(r: &mut ChaCha8Rng) -> Coloring {
    let num_colors = r.random_range(1..=3);
    match r.random_range(0..3) {
        0 => {
            let q = r.random_range(1..=5);
            Coloring::modular((0..q).map(|_| r.random_range(0..num_colors)).collect()).unwrap()
        }
        1 => {
            let len = r.random_range(1..=40);
            let lo = r.random_range(-30..=0);
            Coloring::explicit(lo, (0..len).map(|_| r.random_range(0..num_colors)).collect())
                .unwrap()
        }
        _ => {
            let lo = r.random_range(-20..=0);
            let hi = lo + r.random_range(0..=30);
            Coloring::seeded_random(num_colors, r.random(), lo, hi).unwrap()
        }
    }
}

fn intpoly_sum(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let len = a.coeffs().len().max(b.coeffs().len());
    IntPoly::new((0..len).map(|i| a.coeff(i) + b.coeff(i)).collect())
}

fn multi_intpoly_sum(a: &MultiIntPoly, b: &MultiIntPoly) -> MultiIntPoly {
    let entries = a
        .monomials()
        .iter()
        .chain(b.monomials().iter())
        .map(|(e, c)| (e.clone(), *c));
    MultiIntPoly::new(a.k(), entries).unwrap()
}

/// Checks a one-variable finder against its oracle on one instance.
fn check_against_oracle(
    found: Result<Option<Witness>, SearchError>,
    oracle: &[Witness],
    verified: impl Fn(&Witness) -> bool,
) {
    match found {
        Ok(Some(w)) => {
            assert_eq!(Some(&w), oracle.first(), "finder and oracle disagree");
            assert!(verified(&w), "witness failed certification: {w}");
        }
        Ok(None) | Err(SearchError::WindowTooSmall) => {
            assert!(oracle.is_empty(), "finder missed {}", oracle[0]);
        }
        Err(e) => panic!("unexpected search error: {e}"),
    }
}

// ---------------------------------------------------------------------------
// 1. One-variable semigroup axioms
// ---------------------------------------------------------------------------

/// Every polynomial over cap 2, heads {0, 1}, coefficients {-1, 0, 1}, and
/// at most two terms.
fn small_sympoly_family() -> Vec<SymPoly> {
    let mut terms = Vec::new();
    for iota in [0i64, 1] {
        for len in 1..=2usize {
            for coeffs in tuples(len, &[-1, 0, 1]) {
                terms.push(Term::new(iota, coeffs, 2).unwrap());
            }
        }
    }
    let mut polys: Vec<SymPoly> = terms.iter().cloned().map(SymPoly::single).collect();
    for i in 0..terms.len() {
        for j in i + 1..terms.len() {
            if terms[i].key() != terms[j].key() {
                polys.push(SymPoly::new(vec![terms[i].clone(), terms[j].clone()]).unwrap());
            }
        }
    }
    polys
}

#[test]
#[allow(clippy::needless_range_loop)]
fn criterion_01_sympoly_semigroup_axioms() {
    let start = Instant::now();
    let polys = small_sympoly_family();
    assert_eq!(polys.len(), 222);
    let n = polys.len();

    let pair: Vec<Vec<SymPoly>> = polys
        .iter()
        .map(|x| polys.iter().map(|y| x.add(y).unwrap()).collect())
        .collect();
    for i in 0..n {
        for j in i + 1..n {
            assert_eq!(pair[i][j], pair[j][i], "commutativity failed at ({i}, {j})");
        }
    }
    let mut triples = 0u64;
    for i in 0..n {
        for j in 0..n {
            let ij = &pair[i][j];
            for (k, z) in polys.iter().enumerate() {
                let left = ij.add(z).unwrap();
                let right = polys[i].add(&pair[j][k]).unwrap();
                assert_eq!(left, right, "associativity failed at ({i}, {j}, {k})");
                triples += 1;
            }
        }
    }

    let mut r = rng(0xAC_01);
    for case in 0..100_000 {
        let x = random_sympoly(&mut r, 4, 4, 9);
        let y = random_sympoly(&mut r, 4, 4, 9);
        let z = random_sympoly(&mut r, 4, 4, 9);
        assert_eq!(
            x.add(&y).unwrap(),
            y.add(&x).unwrap(),
            "random commutativity failed at case {case}"
        );
        assert_eq!(
            x.add(&y).unwrap().add(&z).unwrap(),
            x.add(&y.add(&z).unwrap()).unwrap(),
            "random associativity failed at case {case}"
        );
    }

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 30, "budget exceeded: {elapsed:?}");
    println!(
        "criterion 1: PASS - semigroup axioms on {triples} exhaustive triples \
         and 100000 random triples in {elapsed:?}"
    );
}

// ---------------------------------------------------------------------------
// 2. Multivariable semigroup axioms
// ---------------------------------------------------------------------------

/// Every multipolynomial at k=2, m=2 with block sizes at most (1, 1), heads
/// {0, 1}, coefficients {-1, 0, 1}, and at most two terms.
fn small_multipoly_family() -> Vec<MultiSymPoly> {
    let caps = MultiCaps::new(2, 2).unwrap();
    let mut terms = Vec::new();
    for iota in [0i64, 1] {
        for s1 in 0..=1usize {
            for s2 in 0..=1usize {
                for b1 in tuples(s1, &[-1, 0, 1]) {
                    for b2 in tuples(s2, &[-1, 0, 1]) {
                        terms.push(MultiTerm::new(iota, vec![b1.clone(), b2], caps).unwrap());
                    }
                }
            }
        }
    }
    let mut polys: Vec<MultiSymPoly> =
        terms.iter().cloned().map(MultiSymPoly::single).collect();
    for i in 0..terms.len() {
        for j in i + 1..terms.len() {
            if terms[i].cmp_key(&terms[j]) != Ordering::Equal {
                polys.push(
                    MultiSymPoly::new(vec![terms[i].clone(), terms[j].clone()]).unwrap(),
                );
            }
        }
    }
    polys
}

#[test]
#[allow(clippy::needless_range_loop)]
fn criterion_02_multivar_semigroup_axioms() {
    let start = Instant::now();
    let polys = small_multipoly_family();
    assert_eq!(polys.len(), 444);
    let n = polys.len();

    let pair: Vec<Vec<MultiSymPoly>> = polys
        .iter()
        .map(|x| polys.iter().map(|y| x.add(y).unwrap()).collect())
        .collect();
    for i in 0..n {
        for j in i + 1..n {
            assert_eq!(pair[i][j], pair[j][i], "commutativity failed at ({i}, {j})");
        }
    }
    let mut triples = 0u64;
    for i in 0..n {
        for j in 0..n {
            let ij = &pair[i][j];
            for (k, z) in polys.iter().enumerate() {
                let left = ij.add(z).unwrap();
                let right = polys[i].add(&pair[j][k]).unwrap();
                assert_eq!(left, right, "associativity failed at ({i}, {j}, {k})");
                triples += 1;
            }
        }
    }

    let caps = MultiCaps::new(2, 2).unwrap();
    let mut r = rng(0xAC_02);
    for case in 0..10_000 {
        let x = random_multipoly(&mut r, caps, 3, 3);
        let y = random_multipoly(&mut r, caps, 3, 3);
        let z = random_multipoly(&mut r, caps, 3, 3);
        assert_eq!(
            x.add(&y).unwrap(),
            y.add(&x).unwrap(),
            "random commutativity failed at case {case}"
        );
        assert_eq!(
            x.add(&y).unwrap().add(&z).unwrap(),
            x.add(&y.add(&z).unwrap()).unwrap(),
            "random associativity failed at case {case}"
        );
    }

    let elapsed = start.elapsed();
    println!(
        "criterion 2: PASS - multivariable axioms on {triples} exhaustive triples \
         and 10000 random triples in {elapsed:?}"
    );
}

// ---------------------------------------------------------------------------
// 3. Evaluation round trips
// ---------------------------------------------------------------------------

#[test]
fn criterion_03_encode_eval_round_trips() {
    let mut r = rng(0xAC_03);
    for _ in 0..10_000 {
        let p = random_intpoly(&mut r, 6, 20);
        let cap = p.degree().unwrap();
        let enc = encode_poly(&p, cap).unwrap();
        assert_eq!(eval_px(&enc).unwrap(), p, "one-variable round trip broke on {p:?}");
    }
    for _ in 0..10_000 {
        let k = r.random_range(2..=3);
        let p = random_multi_intpoly(&mut r, k, 4, 6, 20);
        let (enc, _cap) = encode_multi(&p).unwrap();
        assert_eq!(
            eval_pmulti(&enc).unwrap(),
            p,
            "multivariable round trip broke on {p:?}"
        );
    }
    println!("criterion 3: PASS - 10000 one-variable and 10000 multivariable round trips");
}

// ---------------------------------------------------------------------------
// 4. Total evaluation agrees with the polynomial at 1
// ---------------------------------------------------------------------------

#[test]
fn criterion_04_pi_agrees_with_eval_px_at_one() {
    let mut r = rng(0xAC_04);
    for _ in 0..10_000 {
        let cap = r.random_range(1..=4);
        let x = random_sympoly(&mut r, cap, 4, 9);
        assert_eq!(
            pi_poly(&x).unwrap(),
            eval_px(&x).unwrap().eval(1).unwrap(),
            "pi disagreed with P_x(1) on {x:?}"
        );
    }
    println!("criterion 4: PASS - pi equals P_x at 1 on 10000 random polynomials");
}

// ---------------------------------------------------------------------------
// 5. Additivity on irreducible pairs
// ---------------------------------------------------------------------------

#[test]
fn criterion_05_additivity_on_irreducible_pairs() {
    let mut r = rng(0xAC_05);
    for _ in 0..10_000 {
        let u = random_sympoly(&mut r, 4, 3, 9);
        let v = random_sympoly_avoiding(&mut r, 4, 3, 9, &u);
        let sum = u.add(&v).unwrap();
        assert_eq!(sum.terms().len(), u.terms().len() + v.terms().len());
        assert_eq!(
            pi_poly(&sum).unwrap(),
            pi_poly(&u).unwrap() + pi_poly(&v).unwrap(),
            "pi additivity broke on {u:?} + {v:?}"
        );
        assert_eq!(
            eval_px(&sum).unwrap(),
            intpoly_sum(&eval_px(&u).unwrap(), &eval_px(&v).unwrap()),
            "P_x additivity broke on {u:?} + {v:?}"
        );
    }
    let caps = MultiCaps::new(2, 2).unwrap();
    for _ in 0..10_000 {
        let u = random_multipoly(&mut r, caps, 3, 3);
        let v = random_multipoly_avoiding(&mut r, caps, 3, 3, &u);
        let sum = u.add(&v).unwrap();
        assert_eq!(
            eval_pmulti(&sum).unwrap(),
            multi_intpoly_sum(&eval_pmulti(&u).unwrap(), &eval_pmulti(&v).unwrap()),
            "multivariable additivity broke on {u:?} + {v:?}"
        );
    }
    println!("criterion 5: PASS - additivity of pi, P_x, and the multivariable map on 10000 irreducible pairs each");
}

// ---------------------------------------------------------------------------
// 6. Shift laws
// ---------------------------------------------------------------------------

#[test]
fn criterion_06_shift_laws() {
    let mut r = rng(0xAC_06);

    // Disjoint index sets collapse: shifting by F ∪ G equals the fold of the
    // two scaled copies.
    for _ in 0..10_000 {
        let cap = r.random_range(2..=3);
        let eta = random_sympoly(&mut r, cap, 2, 2);
        let x = random_sympoly_avoiding(&mut r, cap, 2, 2, &eta);
        let f = random_spec(&mut r, 12);

        let mut pool: Vec<u64> = (1..=12).collect();
        pool.shuffle(&mut r);
        let n1 = r.random_range(1..=3);
        let n2 = r.random_range(1..=3);
        let fset = IndexSet::new(pool[..n1].to_vec()).unwrap();
        let gset = IndexSet::new(pool[n1..n1 + n2].to_vec()).unwrap();
        assert!(fset.is_disjoint(&gset));

        let s1 = ip_sum(&f, &fset).unwrap();
        let s2 = ip_sum(&f, &gset).unwrap();
        let union = fset.union(&gset);
        assert_eq!(ip_sum(&f, &union).unwrap(), s1 + s2);

        let collapsed = shift(&x, &eta, &f, &union).unwrap();
        let folded = x
            .add(&eta.scale(&vec![s1; eta.cap()]).unwrap())
            .unwrap()
            .add(&eta.scale(&vec![s2; eta.cap()]).unwrap())
            .unwrap();
        assert_eq!(collapsed, folded, "collapsed union law broke on {x:?}, {eta:?}");
    }

    // Telescoping under pi: shifting adds exactly p at the IP sum.
    for _ in 0..10_000 {
        let p = random_intpoly(&mut r, 4, 5);
        let cap = p.degree().unwrap();
        let eta = encode_poly(&p, cap).unwrap();
        let x = random_sympoly_avoiding(&mut r, cap, 2, 3, &eta);
        let f = random_spec(&mut r, 10);
        let set = random_index_set(&mut r, 10, 3);
        let s = ip_sum(&f, &set).unwrap();
        let shifted = shift(&x, &eta, &f, &set).unwrap();
        assert_eq!(
            pi_poly(&shifted).unwrap(),
            pi_poly(&x).unwrap() + p.eval(s).unwrap(),
            "telescoping broke on p={p:?}, x={x:?}, s={s}"
        );
    }
    println!("criterion 6: PASS - collapsed union law and pi-telescoping on 10000 random cases each");
}

// ---------------------------------------------------------------------------
// 7. Finders against exhaustive oracles
// ---------------------------------------------------------------------------

#[test]
fn criterion_07_finders_match_oracles() {
    let start = Instant::now();
    let mut r = rng(0xAC_07);

    for _ in 0..100 {
        let count = r.random_range(1..=3);
        let polys: Vec<IntPoly> =
            (0..count).map(|_| random_intpoly(&mut r, 3, 3)).collect();
        let coloring = random_coloring(&mut r);
        let a_range = r.random_range(0..=50);
        let r_range = r.random_range(0..=10);
        let oracle = exhaustive_oracle_poly(&polys, &coloring, a_range, r_range).unwrap();
        let found = find_poly_vdw(&polys, &coloring, a_range, r_range);
        check_against_oracle(found.clone(), &oracle, |w| {
            verify_witness(w, &polys, &coloring)
        });
        assert_eq!(
            found.ok(),
            find_poly_vdw_seq(&polys, &coloring, a_range, r_range).ok(),
            "parallel and sequential scans disagree"
        );
    }

    for _ in 0..100 {
        let count = r.random_range(1..=3);
        let polys: Vec<IntPoly> =
            (0..count).map(|_| random_intpoly(&mut r, 3, 3)).collect();
        let f = random_spec(&mut r, 8);
        let coloring = random_coloring(&mut r);
        let a_range = r.random_range(0..=50);
        let max_index = r.random_range(1..=4);
        let max_size = r.random_range(1..=max_index as usize);
        let oracle =
            exhaustive_oracle_ip(&polys, &f, &coloring, a_range, max_index, max_size).unwrap();
        let found = find_ip_vdw(&polys, &f, &coloring, a_range, max_index, max_size);
        check_against_oracle(found.clone(), &oracle, |w| {
            verify_witness(w, &polys, &coloring)
        });
        assert_eq!(
            found.ok(),
            find_ip_vdw_seq(&polys, &f, &coloring, a_range, max_index, max_size).ok(),
            "parallel and sequential scans disagree"
        );
    }

    for _ in 0..100 {
        let count = r.random_range(1..=2);
        let polys: Vec<MultiIntPoly> = (0..count)
            .map(|_| random_multi_intpoly(&mut r, 2, 2, 2, 2))
            .collect();
        let fs = [random_spec(&mut r, 6), random_spec(&mut r, 6)];
        let coloring = random_coloring(&mut r);
        let a_range = r.random_range(0..=30);
        let max_indices = [r.random_range(1..=3), r.random_range(1..=3)];
        let max_sizes = [
            r.random_range(1..=max_indices[0] as usize),
            r.random_range(1..=max_indices[1] as usize),
        ];
        let oracle = exhaustive_oracle_multivar(
            &polys,
            &fs,
            &coloring,
            a_range,
            &max_indices,
            &max_sizes,
        )
        .unwrap();
        let found =
            find_multivar_vdw(&polys, &fs, &coloring, a_range, &max_indices, &max_sizes);
        check_against_oracle(found, &oracle, |w| {
            verify_witness_multi(w, &polys, &coloring)
        });
    }

    for _ in 0..100 {
        let len = r.random_range(1..=4);
        let lo = r.random_range(-10..=10);
        let hi = lo + r.random_range(0..=15);
        let coloring = random_coloring(&mut r);
        let oracle = exhaustive_oracle_ap(len, &coloring, (lo, hi)).unwrap();
        let found = find_ap(len, &coloring, (lo, hi));
        check_against_oracle(found, &oracle, |w| {
            verify_witness(w, &ap_polys(len), &coloring)
        });
    }

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 60, "budget exceeded: {elapsed:?}");
    println!(
        "criterion 7: PASS - 100 random instances per finder matched the oracle in {elapsed:?}"
    );
}

// ---------------------------------------------------------------------------
// 8. The flagship instance, with the symbolic chain re-derived
// ---------------------------------------------------------------------------

#[test]
fn criterion_08_flagship_instance_with_symbolic_chain() {
    let polys = [IntPoly::new(vec![0, 1]), IntPoly::new(vec![0, 1, 1])];
    let etas: Vec<SymPoly> = polys.iter().map(|p| encode_poly(p, 3).unwrap()).collect();

    for c0 in 0..3u32 {
        for c1 in 0..3u32 {
            for c2 in 0..3u32 {
                let coloring = Coloring::modular(vec![c0, c1, c2]).unwrap();
                let w = find_ip_vdw(&polys, &SequenceSpec::Identity, &coloring, 10_000, 6, 6)
                    .unwrap()
                    .unwrap_or_else(|| {
                        panic!("no witness under the residue map ({c0}, {c1}, {c2})")
                    });
                assert!(verify_witness(&w, &polys, &coloring), "bad witness {w}");

                let WitnessParam::Ip { f, set } = &w.param else {
                    panic!("expected an IP witness, got {}", w.param)
                };
                // A symbolic preimage of the base point: a single term with
                // head a and unit coefficients, on a length no encoding uses
                // when head 1 would collide.
                let x_term = if w.a == 1 {
                    Term::new(1, vec![1, 1, 1], 3).unwrap()
                } else {
                    Term::new(w.a, vec![1], 3).unwrap()
                };
                let x = SymPoly::single(x_term);
                assert_eq!(pi_poly(&x).unwrap(), w.a);
                for (j, eta) in etas.iter().enumerate() {
                    let shifted = shift(&x, eta, f, set).unwrap();
                    assert_eq!(
                        pi_poly(&shifted).unwrap(),
                        w.values[j],
                        "symbolic chain broke at value {j} under ({c0}, {c1}, {c2})"
                    );
                }
            }
        }
    }
    println!(
        "criterion 8: PASS - witness and exact symbolic chain for all 27 residue maps of {{n, n^2+n}}"
    );
}

// ---------------------------------------------------------------------------
// 9. Classical 3-AP sanity
// ---------------------------------------------------------------------------

#[test]
fn criterion_09_classical_three_ap_bounds() {
    let start = Instant::now();
    let polys = ap_polys(3);
    for mask in 0u32..512 {
        let colors: Vec<u32> = (0..9).map(|b| mask >> b & 1).collect();
        let coloring = Coloring::explicit(1, colors).unwrap();
        let w = find_ap(3, &coloring, (1, 9))
            .unwrap()
            .unwrap_or_else(|| panic!("coloring {mask:#011b} of [1,9] has no 3-AP"));
        assert!(verify_witness(&w, &polys, &coloring), "bad witness {w}");
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 1, "budget exceeded: {elapsed:?}");

    // The blocking pattern RBBR RBBR shows the window [1,8] is too short.
    let blocked = Coloring::explicit(1, vec![0, 1, 1, 0, 0, 1, 1, 0]).unwrap();
    assert_eq!(find_ap(3, &blocked, (1, 8)).unwrap(), None);
    assert!(exhaustive_oracle_ap(3, &blocked, (1, 8)).unwrap().is_empty());

    println!(
        "criterion 9: PASS - all 512 two-colorings of [1,9] contain a 3-AP ({elapsed:?}); \
         the 8-point blocking pattern contains none"
    );
}

// ---------------------------------------------------------------------------
// 10. The truncated shift semigroup as a finite table
// ---------------------------------------------------------------------------

#[test]
fn criterion_10_truncated_table_checks() {
    let etas = [
        encode_poly(&IntPoly::new(vec![0, 1]), 3).unwrap(),
        encode_poly(&IntPoly::new(vec![0, 1, 1]), 3).unwrap(),
    ];
    let pool: Vec<SymPoly> = [2i64, 3, 4]
        .iter()
        .map(|a| SymPoly::single(Term::new(*a, vec![1], 3).unwrap()))
        .collect();

    let truncated = build_truncated_s(&etas, 2, &pool).unwrap();
    assert_eq!(truncated.ir_indices, vec![0, 1, 2]);
    // 3 pool elements plus 2 generators x 5 scales x 3 base points.
    assert_eq!(truncated.table.len(), 33);

    let assoc = check_partial_associativity(&truncated.table);
    assert_eq!(assoc.status, CheckStatus::Pass, "associativity failed: {assoc:?}");
    assert!(assoc.counterexamples.is_empty());

    let comm = check_commutativity(&truncated.table);
    assert_eq!(comm.status, CheckStatus::Pass, "commutativity failed: {comm:?}");
    assert!(comm.checked_pairs > 0);

    let adequacy = check_adequate(&truncated.table);
    assert!(adequacy.adequate, "truncated table is not adequate");
    let witness = adequacy.witness.expect("adequate tables carry a witness");
    assert!(
        truncated.ir_indices.contains(&witness),
        "adequacy witness {witness} is not in the irreducible fragment"
    );

    println!(
        "criterion 10: PASS - truncated table of {} elements: associativity \
         ({} checked, {} censored), commutativity ({} pairs), adequacy witness {}",
        truncated.table.len(),
        assoc.checked_triples,
        assoc.window_censored,
        comm.checked_pairs,
        witness
    );
}
