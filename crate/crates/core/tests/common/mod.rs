//! Independent oracles and random inputs shared by the integration tests.
//!
//! Nothing here calls the crate's reduction or linear algebra; complexes are
//! read through the public accessors only.
#![allow(dead_code)]

use std::collections::BTreeMap;

use floercone::{box_complex, q, staircase, unknot, FilteredComplex, Generator, Q};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Seed from `FLOERCONE_SEED`, else a fixed default.
pub fn rng(salt: u64) -> ChaCha8Rng {
    let base = std::env::var("FLOERCONE_SEED").ok().and_then(|s| s.parse::<u64>().ok()).unwrap_or(0x5eed);
    ChaCha8Rng::seed_from_u64(base ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

/// Rank over GF(2) of a dense bit matrix given as rows.
pub fn dense_rank(rows: &[Vec<bool>]) -> usize {
    let width = rows.first().map_or(0, |r| r.len());
    let words = width.div_ceil(64);
    let mut m: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| {
            let mut w = vec![0u64; words];
            for (k, &bit) in r.iter().enumerate() {
                if bit {
                    w[k / 64] |= 1 << (k % 64);
                }
            }
            w
        })
        .collect();
    let mut rank = 0;
    for col in 0..width {
        let (word, bit) = (col / 64, 1u64 << (col % 64));
        let Some(pivot) = (rank..m.len()).find(|&r| m[r][word] & bit != 0) else { continue };
        m.swap(rank, pivot);
        let pivot_row = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && row[word] & bit != 0 {
                for (a, b) in row.iter_mut().zip(&pivot_row) {
                    *a ^= b;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Graded homology of a GF(2) complex: `grade[g]` per generator, `edges` as (from, to).
/// The differential must lower the grade key by one step in `step`.
fn graded_homology(grade: &[Q], edges: &[(usize, usize)], step: impl Fn(Q) -> Q) -> BTreeMap<Q, usize> {
    let mut by_grade: BTreeMap<Q, Vec<usize>> = BTreeMap::new();
    for (g, &m) in grade.iter().enumerate() {
        by_grade.entry(m).or_default().push(g);
    }
    let rank_out = |m: Q| -> usize {
        let Some(src) = by_grade.get(&m) else { return 0 };
        let Some(dst) = by_grade.get(&step(m)) else { return 0 };
        let row_of: BTreeMap<usize, usize> = src.iter().enumerate().map(|(k, &g)| (g, k)).collect();
        let col_of: BTreeMap<usize, usize> = dst.iter().enumerate().map(|(k, &g)| (g, k)).collect();
        let mut rows = vec![vec![false; dst.len()]; src.len()];
        for (f, t) in edges {
            if let (Some(&r), Some(&c)) = (row_of.get(f), col_of.get(t)) {
                rows[r][c] ^= true;
            }
        }
        dense_rank(&rows)
    };
    let mut out = BTreeMap::new();
    for (&m, gens) in &by_grade {
        let up = by_grade.keys().copied().find(|&k| step(k) == m);
        let dim = gens.len() - rank_out(m) - up.map_or(0, rank_out);
        if dim > 0 {
            out.insert(m, dim);
        }
    }
    out
}

/// `H(C/U)` by Maslov grading: only entries with `U⁰` survive.
pub fn hat_oracle(c: &FilteredComplex) -> BTreeMap<Q, usize> {
    let grade: Vec<Q> = c.generators().iter().map(|g| g.maslov).collect();
    let edges: Vec<(usize, usize)> = c.entries().filter(|&(_, _, p)| p == 0).map(|(f, t, _)| (f, t)).collect();
    graded_homology(&grade, &edges, |m| m - 1)
}

/// `H(C ⊗ F[U,U⁻¹])` by Maslov grading mod 2, computed at `U = 1`.
pub fn laurent_oracle(c: &FilteredComplex) -> BTreeMap<Q, usize> {
    let grade: Vec<Q> = c.generators().iter().map(|g| parity(g.maslov)).collect();
    let edges: Vec<(usize, usize)> = c.entries().map(|(f, t, _)| (f, t)).collect();
    graded_homology(&grade, &edges, |m| parity(m - 1))
}

pub fn parity(m: Q) -> Q {
    let whole = m.floor();
    let frac = m - whole;
    Q::from_integer(whole.to_integer().rem_euclid(2)) + frac
}

/// Collapses a crate rank table to `key -> rank` on its first grading key.
pub fn first_key(ranks: &floercone::GradedRanks) -> BTreeMap<Q, usize> {
    let mut out = BTreeMap::new();
    for (k, &r) in &ranks.ranks {
        if r > 0 {
            *out.entry(k[0]).or_insert(0) += r;
        }
    }
    out
}

/// Alexander polynomial of the two-bridge knot `b(p, q)`, `p` and `q` odd,
/// as exponent -> coefficient, symmetrized and normalized to `Δ(1) = 1`.
pub fn two_bridge_alexander(p: i64, q: i64) -> BTreeMap<i64, i64> {
    assert!(p % 2 != 0 && q % 2 != 0);
    let mut poly: BTreeMap<i64, i64> = BTreeMap::new();
    let mut sigma = 0;
    for k in 0..p {
        if k > 0 {
            sigma += if (k * q).div_euclid(p) % 2 == 0 { 1 } else { -1 };
        }
        *poly.entry(sigma).or_insert(0) += if k % 2 == 0 { 1 } else { -1 };
    }
    poly.retain(|_, v| *v != 0);
    let lo = *poly.keys().next().unwrap();
    let hi = *poly.keys().last().unwrap();
    let shift = (lo + hi) / 2;
    let sign = if poly.values().sum::<i64>() < 0 { -1 } else { 1 };
    poly.into_iter().map(|(e, c)| (e - shift, sign * c)).collect()
}

pub fn eval_at_minus_one(poly: &BTreeMap<i64, i64>) -> i64 {
    poly.iter().map(|(&e, &c)| if e.rem_euclid(2) == 0 { c } else { -c }).sum()
}

/// Replaces `g` by `g + U^k·h`, where `k` is forced by the Maslov gradings.
/// Returns `None` unless the new basis element is filtered and homogeneous.
pub fn basis_change(c: &FilteredComplex, g: usize, h: usize) -> Option<FilteredComplex> {
    if g == h {
        return None;
    }
    let (gg, hh) = (c.generator(g), c.generator(h));
    let diff = gg.maslov - hh.maslov;
    if !diff.is_integer() || diff.to_integer() % 2 != 0 {
        return None;
    }
    let k = -diff.to_integer() / 2;
    let (hi, hj) = hh.level_at(k);
    if hi > gg.i || hj > gg.j {
        return None;
    }
    let mut out = FilteredComplex::new();
    for gen in c.generators() {
        out.add_generator(gen.clone()).unwrap();
    }
    for f in 0..c.len() {
        let mut row: BTreeMap<usize, i64> = c.row(f).clone();
        if f == g {
            for (&t, &p) in c.row(h) {
                xor(&mut row, t, p + k)?;
            }
        }
        // old g = g' + U^k h
        if let Some(&a) = row.get(&g) {
            xor(&mut row, h, a + k)?;
        }
        for (t, p) in row {
            out.toggle_entry(f, t, p).unwrap();
        }
    }
    Some(out)
}

fn xor(row: &mut BTreeMap<usize, i64>, t: usize, p: i64) -> Option<()> {
    match row.get(&t) {
        Some(&q) if q == p => {
            row.remove(&t);
        }
        Some(_) => return None,
        None => {
            row.insert(t, p);
        }
    }
    Some(())
}

/// An acyclic pair `∂x = U^k·y`.
fn pair(rng: &mut impl Rng) -> FilteredComplex {
    let a = rng.gen_range(-2..=2);
    let k = rng.gen_range(0..=2);
    let b = rng.gen_range(a - 2 + k..=a + k);
    let m = rng.gen_range(-3..=3);
    let mut c = FilteredComplex::new();
    c.add_generator(Generator::knot("x", a, q(m))).unwrap();
    c.add_generator(Generator::knot("y", b, q(m - 1 + 2 * k))).unwrap();
    c.add_entry("x", "y", k).unwrap();
    c
}

/// Direct sum of random model pieces scrambled by filtered basis changes,
/// returned with every generator at its `i = 0` translate (so all U-powers are
/// non-negative). Uses between 1 and `max_pieces` pieces.
pub fn random_complex(rng: &mut impl Rng, max_pieces: usize, changes: usize) -> FilteredComplex {
    let pieces = rng.gen_range(1..=max_pieces);
    let mut c = FilteredComplex::new();
    for k in 0..pieces {
        let piece = match rng.gen_range(0..5) {
            0 => staircase(),
            1 => box_complex(""),
            2 => unknot(),
            _ => pair(rng),
        };
        let piece = piece.renamed(|n| format!("{n}{k}")).unwrap();
        c = c.direct_sum(&piece).unwrap();
    }
    for g in 0..c.len() {
        c.retranslate(g, rng.gen_range(-2..=2));
    }
    let mut done = 0;
    let mut tries = 0;
    while done < changes && tries < changes * 50 && c.len() > 1 {
        tries += 1;
        let g = rng.gen_range(0..c.len());
        let h = rng.gen_range(0..c.len());
        if let Some(next) = basis_change(&c, g, h) {
            c = next;
            done += 1;
        }
    }
    for g in 0..c.len() {
        let i = c.generator(g).i.to_integer();
        c.retranslate(g, i);
    }
    c
}

/// Moves generators to random translates; only U-invertible homology is unchanged.
pub fn shuffle_translates(rng: &mut impl Rng, c: &FilteredComplex) -> FilteredComplex {
    let mut c = c.clone();
    for g in 0..c.len() {
        c.retranslate(g, rng.gen_range(-2..=2));
    }
    c
}

/// Models with at most 25 generators, with names for messages.
pub fn small_models() -> Vec<(String, FilteredComplex)> {
    let mut out = vec![
        ("unknot".to_string(), unknot()),
        ("staircase".to_string(), staircase()),
        ("box".to_string(), box_complex("")),
    ];
    for n in [3, 5, 7, 9, 11] {
        out.push((format!("minus_e{n}"), floercone::build_minus_en(n).unwrap()));
    }
    let mirrors: Vec<_> = out.iter().map(|(n, c)| (format!("mirror {n}"), floercone::mirror(c))).collect();
    out.extend(mirrors);
    out
}

/// `c₁ − 1/(c₂ − 1/(… − 1/c_k))`, evaluated from the back.
pub fn negative_cf(entries: &[i64]) -> num_rational::BigRational {
    let int = |n: i64| num_rational::BigRational::from_integer(n.into());
    let mut value = int(*entries.last().unwrap());
    for &c in entries.iter().rev().skip(1) {
        value = int(c) - value.recip();
    }
    value
}
