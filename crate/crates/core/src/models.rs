//! Model knot complexes, the flip map, and knot-level homology.

use std::collections::BTreeMap;

use crate::complex::{q, Chain, FilteredComplex, Generator, Q};
use crate::error::{FloerError, Result};
use crate::reduce::{homology, GradedRanks, GradingKey, HomologyRing};

/// Staircase `C` of the left-handed trefoil: `∂x = y`, `∂z = U·y`.
pub fn staircase() -> FilteredComplex {
    let mut c = FilteredComplex::new();
    c.add_generator(Generator::knot("x", 1, q(2))).unwrap();
    c.add_generator(Generator::knot("y", 0, q(1))).unwrap();
    c.add_generator(Generator::knot("z", -1, q(0))).unwrap();
    c.add_entry("x", "y", 0).unwrap();
    c.add_entry("z", "y", 1).unwrap();
    c
}

/// Length-one box with generator names suffixed by `suffix` (`a_1`, ...).
///
/// `a` is stored at its `(0,0)` translate; `∂a = U·b + c`, `∂b = d`, `∂c = U·d`.
pub fn box_complex(suffix: &str) -> FilteredComplex {
    let n = |base: &str| if suffix.is_empty() { base.to_string() } else { format!("{base}_{suffix}") };
    let mut c = FilteredComplex::new();
    c.add_generator(Generator::knot(n("a"), 0, q(1))).unwrap();
    c.add_generator(Generator::knot(n("b"), 1, q(2))).unwrap();
    c.add_generator(Generator::knot(n("c"), -1, q(0))).unwrap();
    c.add_generator(Generator::knot(n("d"), 0, q(1))).unwrap();
    c.add_entry(&n("a"), &n("b"), 1).unwrap();
    c.add_entry(&n("a"), &n("c"), 0).unwrap();
    c.add_entry(&n("b"), &n("d"), 0).unwrap();
    c.add_entry(&n("c"), &n("d"), 1).unwrap();
    c
}

pub fn unknot() -> FilteredComplex {
    let mut c = FilteredComplex::new();
    c.add_generator(Generator::knot("u", 0, q(0))).unwrap();
    c
}

/// `CFK∞` of the mirrored twist knot: the staircase plus `(n−1)/2` boxes.
pub fn build_minus_en(n: i64) -> Result<FilteredComplex> {
    if n < 1 || n % 2 == 0 {
        return Err(FloerError::BadParameter(format!("n must be odd and positive, got {n}")));
    }
    let mut c = staircase();
    for i in 1..=(n - 1) / 2 {
        c = c.direct_sum(&box_complex(&i.to_string()))?;
    }
    Ok(c)
}

/// Dual complex: arrows reversed, all gradings and filtration levels negated.
pub fn mirror(c: &FilteredComplex) -> FilteredComplex {
    let mut out = FilteredComplex::new();
    for g in c.generators() {
        out.add_generator(Generator::new(g.name.clone(), -g.i, -g.j, -g.maslov)).unwrap();
    }
    for (f, t, p) in c.entries() {
        out.toggle_entry(t, f, p).unwrap();
    }
    out
}

fn reflect_name(name: &str) -> Option<String> {
    let (base, suffix) = match name.find('_') {
        Some(k) => (&name[..k], &name[k..]),
        None => (name, ""),
    };
    let image = match base {
        "x" => "z",
        "z" => "x",
        "y" | "a" | "d" | "u" | "o" => base,
        "b" => "c",
        "c" => "b",
        "xh" => "xv",
        "xv" => "xh",
        "yh" => "yv",
        "yv" => "yh",
        _ => return None,
    };
    Some(format!("{image}{suffix}"))
}

/// Reflection across `i = j`: `U⁰·g ↦ U^{shift}·ḡ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlipMap {
    images: Vec<(usize, i64)>,
}

impl FlipMap {
    pub fn image(&self, g: usize) -> (usize, i64) {
        self.images[g]
    }

    pub fn apply(&self, chain: &Chain) -> Chain {
        chain
            .iter()
            .map(|(g, m)| {
                let (h, s) = self.images[g];
                (h, m + s)
            })
            .collect()
    }

    pub fn compose(&self, other: &FlipMap) -> FlipMap {
        let images = self
            .images
            .iter()
            .map(|&(h, s)| {
                let (h2, s2) = other.images[h];
                (h2, s + s2)
            })
            .collect();
        FlipMap { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(g, &(h, s))| g == h && s == 0)
    }
}

fn integral(v: Q, what: &str) -> Result<i64> {
    if v.is_integer() {
        Ok(v.to_integer())
    } else {
        Err(FloerError::UnsupportedModel(format!("{what} is not an integer")))
    }
}

/// Flip map of a model complex, checked to be a skew-filtered chain isomorphism.
pub fn flip(c: &FilteredComplex) -> Result<FlipMap> {
    let mut images = Vec::with_capacity(c.len());
    for g in c.generators() {
        let bar_name = reflect_name(&g.name)
            .ok_or_else(|| FloerError::UnsupportedModel(format!("no reflection for {}", g.name)))?;
        let h =
            c.index_of(&bar_name).ok_or_else(|| FloerError::UnsupportedModel(format!("missing partner {bar_name}")))?;
        let bar = c.generator(h);
        // U^s·ḡ must sit at the reflected position (j, i) with the same grading.
        let s = integral(bar.i - g.j, "flip shift")?;
        if bar.level_at(s) != (g.j, g.i) || bar.maslov_at(s) != g.maslov {
            return Err(FloerError::UnsupportedModel(format!("{} and {bar_name} are not mirror images", g.name)));
        }
        images.push((h, s));
    }
    let map = FlipMap { images };
    for (f, t, p) in c.entries() {
        let (fb, sf) = map.images[f];
        let (tb, st) = map.images[t];
        if c.entry(fb, tb) != Some(p + st - sf) {
            return Err(FloerError::UnsupportedModel(format!(
                "reflection is not a chain map at {} -> {}",
                c.generator(f).name,
                c.generator(t).name
            )));
        }
    }
    Ok(map)
}

fn hat_power(g: &Generator) -> Option<i64> {
    g.i.is_integer().then(|| g.i.to_integer())
}

/// Keeps only the entries that preserve both filtration levels.
pub fn associated_graded(c: &FilteredComplex) -> FilteredComplex {
    let mut out = FilteredComplex::new();
    for g in c.generators() {
        out.add_generator(g.clone()).unwrap();
    }
    for (f, t, p) in c.entries() {
        let src = c.generator(f);
        if c.generator(t).level_at(p) == (src.i, src.j) {
            out.toggle_entry(f, t, p).unwrap();
        }
    }
    out
}

/// `ĤFK` ranks keyed by (Alexander, Maslov), from the slice `i = 0`.
pub fn hfk_hat(c: &FilteredComplex) -> GradedRanks {
    let slice = c.slice(hat_power);
    homology(&associated_graded(&slice.complex), HomologyRing::Field, &[GradingKey::Alexander, GradingKey::Maslov])
}

/// Homology of the slice `{i ≤ 0, j = s}`, keyed by Maslov grading.
pub fn hfk_minus(c: &FilteredComplex, s: i64) -> GradedRanks {
    let slice = c.slice(|g| {
        let m = g.j - q(s);
        if !m.is_integer() {
            return None;
        }
        let m = m.to_integer();
        (g.i - q(m) <= q(0)).then_some(m)
    });
    homology(&slice.complex, HomologyRing::Field, &[GradingKey::Maslov])
}

/// `HFK⁻` as a GF(2)[U]-module: free ranks and U-torsion, keyed by (J, Maslov)
/// of the generating translate.
pub fn hfk_minus_module(c: &FilteredComplex) -> GradedRanks {
    let mut graded = FilteredComplex::new();
    for g in c.generators() {
        graded.add_generator(g.clone()).unwrap();
    }
    for (f, t, p) in c.entries() {
        if c.generator(t).level_at(p).1 == c.generator(f).j {
            graded.toggle_entry(f, t, p).unwrap();
        }
    }
    homology(&graded, HomologyRing::Polynomial, &[GradingKey::J, GradingKey::Maslov])
}

/// Graded Euler characteristic of `ĤFK`, as exponent -> coefficient.
pub fn alexander_polynomial(c: &FilteredComplex) -> BTreeMap<i64, i64> {
    let mut poly = BTreeMap::new();
    for (key, &rank) in &hfk_hat(c).ranks {
        let (a, m) = (key[0], key[1]);
        let sign = if m.is_integer() && m.to_integer().rem_euclid(2) == 1 { -1 } else { 1 };
        *poly.entry(a.floor().to_integer()).or_insert(0) += sign * rank as i64;
    }
    poly.retain(|_, v| *v != 0);
    poly
}

/// Largest Alexander grading with nonzero `ĤFK`, or 0 for an empty complex.
pub fn genus(c: &FilteredComplex) -> i64 {
    hfk_hat(c).ranks.keys().map(|k| k[0].floor().to_integer()).max().unwrap_or(0).max(0)
}
