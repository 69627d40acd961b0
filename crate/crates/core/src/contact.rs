//! Contact surgery bookkeeping: DGS expansions, classical invariants,
//! smooth coefficients, contact-class location and c₁ evaluations.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::cone::ConeVertex;
use crate::error::{FloerError, Result};

pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `p`, `-p/q` or a decimal-free fraction.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let bad = || FloerError::BadParameter(format!("not a rational number: {text}"));
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text.trim(), "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

pub fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LegendrianData {
    pub label: String,
    pub tb: i64,
    pub rot: i64,
    /// Order of the knot in homology; 1 for null-homologous knots.
    pub y: i64,
}

impl LegendrianData {
    pub fn new(label: impl Into<String>, tb: i64, rot: i64) -> Self {
        LegendrianData { label: label.into(), tb, rot, y: 1 }
    }

    /// `k` negative stabilizations: `(tb, rot) ↦ (tb − k, rot − k)`.
    pub fn stabilized(&self, k: u64) -> Self {
        let k = k as i64;
        LegendrianData { label: format!("{}^-{k}", self.label), tb: self.tb - k, rot: self.rot - k, y: self.y }
    }

    /// Legendrian push-off; classical invariants are unchanged.
    pub fn push_off(&self) -> Self {
        LegendrianData { label: format!("{}'", self.label), ..self.clone() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DgsKind {
    Negative,
    Positive,
}

/// Contact `r`-surgery rewritten as contact `±1`-surgeries on push-offs and stabilizations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DgsExpansion {
    pub r: BigRational,
    pub kind: DgsKind,
    pub a: Vec<i64>,
    /// Number of `+1`-surgered push-offs (positive kind only).
    pub e: u64,
    /// Stabilizations of each `−1`-surgered component.
    pub stabilizations: Vec<u64>,
    /// `+1` for each push-off, then `−1` for each component of the chain.
    pub surgery_signs: Vec<i8>,
}

fn continued_fraction(entries: &[BigRational]) -> BigRational {
    let mut value = entries.last().cloned().expect("nonempty expansion");
    for c in entries.iter().rev().skip(1) {
        value = c - value.recip();
    }
    value
}

impl DgsExpansion {
    /// Rebuilds `r` from the expansion.
    pub fn evaluate(&self) -> BigRational {
        let ints: Vec<BigRational> = self.a.iter().map(|&a| BigRational::from_integer(a.into())).collect();
        match self.kind {
            DgsKind::Negative => {
                let mut shifted = ints;
                shifted[0] += BigRational::one();
                continued_fraction(&shifted)
            }
            DgsKind::Positive => {
                let e = BigRational::from_integer(self.e.into());
                if ints.is_empty() {
                    return e.recip();
                }
                (continued_fraction(&ints).recip() + e).recip()
            }
        }
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }
}

fn to_i64(v: &BigInt) -> Result<i64> {
    v.to_i64().ok_or_else(|| FloerError::BadCoefficient(format!("coefficient {v} out of range")))
}

/// Negative continued fraction `[c₁, c₂, …]⁻`; every entry after the first is `≤ −2`.
fn plain_expansion(mut value: BigRational) -> Result<Vec<i64>> {
    let mut out = Vec::new();
    loop {
        if value.is_integer() {
            out.push(to_i64(value.numer())?);
            return Ok(out);
        }
        let c = value.floor();
        out.push(to_i64(c.numer())?);
        value = (c - value).recip();
    }
}

fn stabilization_count(a: i64, offset: i64) -> u64 {
    (a + offset).unsigned_abs()
}

pub fn negative_expansion(r: &BigRational) -> Result<DgsExpansion> {
    if !r.is_negative() {
        return Err(FloerError::BadCoefficient(format!("{} is not negative", format_rational(r))));
    }
    let mut a = plain_expansion(r.clone())?;
    a[0] -= 1;
    let stabilizations = a.iter().map(|&x| stabilization_count(x, 2)).collect();
    Ok(DgsExpansion {
        r: r.clone(),
        kind: DgsKind::Negative,
        surgery_signs: vec![-1; a.len()],
        a,
        e: 0,
        stabilizations,
    })
}

pub fn positive_expansion(r: &BigRational) -> Result<DgsExpansion> {
    if !r.is_positive() {
        return Err(FloerError::BadCoefficient(format!("{} is not positive", format_rational(r))));
    }
    let (x, y) = (r.numer().clone(), r.denom().clone());
    let e = Integer::div_ceil(&y, &x);
    let rest = &y - &e * &x;
    let e = e.to_u64().ok_or_else(|| FloerError::BadCoefficient("too many push-offs".into()))?;
    let a = if rest.is_zero() { Vec::new() } else { plain_expansion(BigRational::new(x, rest))? };
    let stabilizations =
        a.iter().enumerate().map(|(k, &v)| stabilization_count(v, if k == 0 { 1 } else { 2 })).collect();
    let mut surgery_signs = vec![1; e as usize];
    surgery_signs.extend(std::iter::repeat_n(-1, a.len()));
    Ok(DgsExpansion { r: r.clone(), kind: DgsKind::Positive, a, e, stabilizations, surgery_signs })
}

/// Whether every `aⱼ` of the negative expansion equals −2, i.e. `r = −1/ℓ`.
pub fn characterize_all_minus_two(r: &BigRational) -> Result<bool> {
    if !r.is_negative() {
        return Err(FloerError::BadCoefficient(format!("{} is not negative", format_rational(r))));
    }
    Ok(r.numer() == &BigInt::from(-1))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmoothCoefficient {
    pub value: BigRational,
    /// Zero surgery: the result is not a rational homology sphere.
    pub excluded: bool,
}

/// `p/q = tb + r`.
pub fn smooth_coefficient(l: &LegendrianData, r: &BigRational) -> Result<SmoothCoefficient> {
    if r.is_zero() {
        return Err(FloerError::ZeroCoefficient);
    }
    let value = BigRational::from_integer(l.tb.into()) + r;
    let excluded = value.is_zero();
    Ok(SmoothCoefficient { value, excluded })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ContactLocator {
    pub t: i64,
    pub s: i64,
    pub sector: i64,
    pub vertex: ConeVertex,
}

/// Cone vertex `(t, B̂_s)` carrying the contact class, `2t = (rot − tb + 1)q − 2`.
pub fn locate_contact_class(l: &LegendrianData, p: i64, q: i64) -> Result<ContactLocator> {
    if q <= 0 || p == 0 || p.gcd(&q) != 1 {
        return Err(FloerError::BadCoefficients { p, q });
    }
    let two_t = (l.rot - l.tb + 1) * q - 2;
    if two_t % 2 != 0 {
        return Err(FloerError::ParityError(two_t));
    }
    let t = two_t / 2;
    Ok(ContactLocator { t, s: t.div_euclid(q), sector: t.rem_euclid(p.abs()), vertex: ConeVertex::b(t) })
}

/// `⟨c₁, [Z̃]⟩ = p + (rot − tb)q − 1` for the rational surgery cobordism.
pub fn c1_surgery_cobordism(l: &LegendrianData, p: i64, q: i64) -> i64 {
    p + (l.rot - l.tb) * q - 1
}

/// `⟨c₁, [F̃]⟩ = y(rot + n − 1)` for contact `n`-surgery, `n > 0`.
pub fn c1_positive_integer_surgery(l: &LegendrianData, n: i64) -> i64 {
    l.y * (l.rot + n - 1)
}

/// `⟨c₁, [Z̃]⟩ = rot` for contact `+1`-surgery.
pub fn c1_plus_one_surgery(l: &LegendrianData) -> i64 {
    l.rot
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmnReduction {
    pub value: BigRational,
    /// Set when the reduced coefficient is −1.
    pub excluded_target: bool,
}

/// Contact `r`-surgery on the generalized twist knot as `(r − m + 1)`-surgery on a twist knot.
pub fn reduce_emn(m: i64, r: &BigRational) -> Result<EmnReduction> {
    if m < 1 || m % 2 == 0 {
        return Err(FloerError::BadParameter(format!("m must be odd and positive, got {m}")));
    }
    if !r.is_negative() {
        return Err(FloerError::BadCoefficient(format!("{} is not negative", format_rational(r))));
    }
    if *r == BigRational::from_integer((-m).into()) {
        return Err(FloerError::ExcludedCoefficient(format!("r = -{m}")));
    }
    let value = r - BigRational::from_integer((m - 1).into());
    let excluded_target = value == BigRational::from_integer((-1).into());
    Ok(EmnReduction { value, excluded_target })
}
