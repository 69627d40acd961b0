//! Free chain complexes over GF(2)[U, U⁻¹] with a double filtration.
//!
//! A generator is stored once, at its U⁰ translate. The translate Uᵐ·g sits at
//! filtration level `(i - m, j - m)` and Maslov grading `maslov - 2m`. For a
//! knot complex every generator is normalized to `i = 0`, so `j` is the
//! Alexander grading.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_rational::Ratio;
use num_traits::Zero;

use crate::error::{FloerError, Result};

/// Exact rational used for gradings and filtration levels.
pub type Q = Ratio<i64>;

pub fn q(n: i64) -> Q {
    Q::from_integer(n)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub i: Q,
    pub j: Q,
    pub maslov: Q,
}

impl Generator {
    /// A knot-complex generator at `(0, alexander)`.
    pub fn knot(name: impl Into<String>, alexander: i64, maslov: Q) -> Self {
        Generator { name: name.into(), i: Q::zero(), j: q(alexander), maslov }
    }

    pub fn new(name: impl Into<String>, i: Q, j: Q, maslov: Q) -> Self {
        Generator { name: name.into(), i, j, maslov }
    }

    pub fn alexander(&self) -> Q {
        self.j - self.i
    }

    pub fn level_at(&self, power: i64) -> (Q, Q) {
        (self.i - power, self.j - power)
    }

    pub fn maslov_at(&self, power: i64) -> Q {
        self.maslov - 2 * power
    }
}

/// A GF(2)-combination of translates `U^power · g`, keyed by generator index.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Chain(BTreeSet<(usize, i64)>);

impl Chain {
    pub fn new() -> Self {
        Chain(BTreeSet::new())
    }

    pub fn single(generator: usize, power: i64) -> Self {
        let mut c = Chain::new();
        c.toggle(generator, power);
        c
    }

    pub fn toggle(&mut self, generator: usize, power: i64) {
        if !self.0.remove(&(generator, power)) {
            self.0.insert((generator, power));
        }
    }

    pub fn add(&mut self, other: &Chain) {
        for &(g, p) in &other.0 {
            self.toggle(g, p);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.0.iter().copied()
    }

    pub fn contains(&self, generator: usize, power: i64) -> bool {
        self.0.contains(&(generator, power))
    }

    pub fn map_generators(&self, f: impl Fn(usize) -> usize) -> Chain {
        let mut out = Chain::new();
        for (g, p) in self.iter() {
            out.toggle(f(g), p);
        }
        out
    }
}

impl FromIterator<(usize, i64)> for Chain {
    fn from_iter<T: IntoIterator<Item = (usize, i64)>>(iter: T) -> Self {
        let mut c = Chain::new();
        for (g, p) in iter {
            c.toggle(g, p);
        }
        c
    }
}

/// Row of the differential: target index -> U-power.
pub type Row = BTreeMap<usize, i64>;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FilteredComplex {
    generators: Vec<Generator>,
    differential: Vec<Row>,
    names: HashMap<String, usize>,
}

impl FilteredComplex {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn generator(&self, index: usize) -> &Generator {
        &self.generators[index]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.get(name).copied()
    }

    pub fn require(&self, name: &str) -> Result<usize> {
        self.index_of(name).ok_or_else(|| FloerError::UnknownGenerator(name.to_string()))
    }

    pub fn add_generator(&mut self, generator: Generator) -> Result<usize> {
        if self.index_of(&generator.name).is_some() {
            return Err(FloerError::DuplicateGenerator(generator.name));
        }
        self.names.insert(generator.name.clone(), self.generators.len());
        self.generators.push(generator);
        self.differential.push(Row::new());
        Ok(self.generators.len() - 1)
    }

    /// Adds `U^power · to` to `∂from` (mod 2).
    pub fn toggle_entry(&mut self, from: usize, to: usize, power: i64) -> Result<()> {
        let row = &mut self.differential[from];
        match row.get(&to) {
            Some(&p) if p == power => {
                row.remove(&to);
            }
            Some(_) => {
                return Err(FloerError::ConflictingEntry {
                    from: self.generators[from].name.clone(),
                    to: self.generators[to].name.clone(),
                })
            }
            None => {
                row.insert(to, power);
            }
        }
        Ok(())
    }

    pub fn add_entry(&mut self, from: &str, to: &str, power: i64) -> Result<()> {
        let (f, t) = (self.require(from)?, self.require(to)?);
        self.toggle_entry(f, t, power)
    }

    pub fn row(&self, from: usize) -> &Row {
        &self.differential[from]
    }

    pub fn entry(&self, from: usize, to: usize) -> Option<i64> {
        self.differential[from].get(&to).copied()
    }

    /// All entries `(from, to, power)` in canonical order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
        self.differential.iter().enumerate().flat_map(|(f, row)| row.iter().map(move |(&t, &p)| (f, t, p)))
    }

    pub fn entry_count(&self) -> usize {
        self.differential.iter().map(|r| r.len()).sum()
    }

    pub fn max_alexander(&self) -> Option<Q> {
        self.generators.iter().map(|g| g.alexander()).max()
    }

    /// True when every generator sits at `i = 0` with integral `j`.
    pub fn is_knot_normalized(&self) -> bool {
        self.generators.iter().all(|g| g.i.is_zero() && g.j.is_integer())
    }

    pub fn differential_of(&self, chain: &Chain) -> Chain {
        let mut out = Chain::new();
        for (g, m) in chain.iter() {
            for (&h, &k) in &self.differential[g] {
                out.toggle(h, m + k);
            }
        }
        out
    }

    /// Direct sum; names of `other` must not collide with ours.
    pub fn direct_sum(&self, other: &FilteredComplex) -> Result<FilteredComplex> {
        let mut out = self.clone();
        let offset = out.len();
        for g in &other.generators {
            out.add_generator(g.clone())?;
        }
        for (f, t, p) in other.entries() {
            out.toggle_entry(f + offset, t + offset, p)?;
        }
        Ok(out)
    }

    /// Renames generators in place; `rename` must stay injective.
    pub fn renamed(&self, rename: impl Fn(&str) -> String) -> Result<FilteredComplex> {
        let mut out = FilteredComplex::new();
        for g in &self.generators {
            out.add_generator(Generator { name: rename(&g.name), ..g.clone() })?;
        }
        out.differential = self.differential.clone();
        Ok(out)
    }

    /// Replaces generator `index` by its translate `U^power · g`.
    pub fn retranslate(&mut self, index: usize, power: i64) {
        let g = &mut self.generators[index];
        g.i -= power;
        g.j -= power;
        g.maslov -= 2 * power;
        for p in self.differential[index].values_mut() {
            *p += power;
        }
        for (f, row) in self.differential.iter_mut().enumerate() {
            if f == index {
                continue;
            }
            if let Some(p) = row.get_mut(&index) {
                *p -= power;
            }
        }
    }

    /// Subquotient on one chosen translate per generator.
    ///
    /// `select` returns the power `m` of the translate `Uᵐ·g` to keep, or
    /// `None` to drop `g`. An entry survives when its target translate is the
    /// selected one. The caller is responsible for the selection being a
    /// difference of two subcomplexes.
    pub fn slice(&self, select: impl Fn(&Generator) -> Option<i64>) -> Slice {
        let mut complex = FilteredComplex::new();
        let mut cells = Vec::new();
        let mut cell_of = vec![None; self.len()];
        for (idx, g) in self.generators.iter().enumerate() {
            if let Some(m) = select(g) {
                let (i, j) = g.level_at(m);
                let name = if m == 0 { g.name.clone() } else { format!("U^{m}*{}", g.name) };
                complex.add_generator(Generator::new(name, i, j, g.maslov_at(m))).expect("slice names are unique");
                cell_of[idx] = Some(cells.len());
                cells.push((idx, m));
            }
        }
        for (c, &(g, m)) in cells.iter().enumerate() {
            for (&h, &k) in &self.differential[g] {
                if let Some(d) = cell_of[h] {
                    if cells[d].1 == m + k {
                        complex.toggle_entry(c, d, 0).expect("slice entries are power 0");
                    }
                }
            }
        }
        Slice { complex, cells, cell_of }
    }
}

/// A finite subquotient produced by [`FilteredComplex::slice`].
#[derive(Clone, Debug)]
pub struct Slice {
    pub complex: FilteredComplex,
    /// `(generator, power)` of each cell.
    pub cells: Vec<(usize, i64)>,
    pub cell_of: Vec<Option<usize>>,
}

impl Slice {
    /// Chain of the ambient complex -> chain of cells; `None` if a term lies outside.
    pub fn to_cells(&self, chain: &Chain) -> Option<Chain> {
        let mut out = Chain::new();
        for (g, m) in chain.iter() {
            let c = self.cell_of[g]?;
            if self.cells[c].1 != m {
                return None;
            }
            out.toggle(c, 0);
        }
        Some(out)
    }

    pub fn from_cells(&self, chain: &Chain) -> Chain {
        chain.iter().map(|(c, k)| (self.cells[c].0, self.cells[c].1 + k)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    DSquared { from: String, to: String, power: i64 },
    FiltrationRaise { from: String, to: String, power: i64 },
    GradingDrop { from: String, to: String, power: i64, drop: Q },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DSquared { from, to, power } => {
                write!(f, "d^2 != 0: {from} -> U^{power} {to}")
            }
            Violation::FiltrationRaise { from, to, power } => {
                write!(f, "filtration raised by {from} -> U^{power} {to}")
            }
            Violation::GradingDrop { from, to, power, drop } => {
                write!(f, "{from} -> U^{power} {to} drops Maslov grading by {drop}, not 1")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Reports every violated invariant: d² = 0, filtration, and Maslov drop by 1.
pub fn check_complex(c: &FilteredComplex) -> ValidationReport {
    let mut violations = Vec::new();
    let name = |i: usize| c.generators[i].name.clone();
    for (f, t, p) in c.entries() {
        let (src, dst) = (&c.generators[f], &c.generators[t]);
        let (ti, tj) = dst.level_at(p);
        if ti > src.i || tj > src.j {
            violations.push(Violation::FiltrationRaise { from: name(f), to: name(t), power: p });
        }
        let drop = src.maslov - dst.maslov_at(p);
        if drop != q(1) {
            violations.push(Violation::GradingDrop { from: name(f), to: name(t), power: p, drop });
        }
    }
    for f in 0..c.len() {
        let dd = c.differential_of(&c.differential_of(&Chain::single(f, 0)));
        for (t, p) in dd.iter() {
            violations.push(Violation::DSquared { from: name(f), to: name(t), power: p });
        }
    }
    ValidationReport { violations }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_cell() -> FilteredComplex {
        let mut c = FilteredComplex::new();
        c.add_generator(Generator::knot("y", 1, q(1))).unwrap();
        c.add_generator(Generator::knot("x", 0, q(0))).unwrap();
        c.add_entry("y", "x", 0).unwrap();
        c
    }

    #[test]
    fn empty_complex_is_valid() {
        assert!(check_complex(&FilteredComplex::new()).is_valid());
    }

    #[test]
    fn duplicate_names_rejected() {
        let mut c = two_cell();
        assert!(matches!(c.add_generator(Generator::knot("x", 0, q(0))), Err(FloerError::DuplicateGenerator(_))));
    }

    #[test]
    fn toggling_twice_removes_entry() {
        let mut c = two_cell();
        c.add_entry("y", "x", 0).unwrap();
        assert_eq!(c.entry_count(), 0);
        c.add_entry("y", "x", 0).unwrap();
        assert!(c.add_entry("y", "x", 1).is_err());
    }

    #[test]
    fn filtration_raise_detected() {
        let mut c = FilteredComplex::new();
        c.add_generator(Generator::knot("a", 0, q(1))).unwrap();
        c.add_generator(Generator::knot("b", 1, q(0))).unwrap();
        c.add_entry("a", "b", 0).unwrap();
        let report = check_complex(&c);
        assert_eq!(report.violations.len(), 1);
        assert!(matches!(report.violations[0], Violation::FiltrationRaise { .. }));
    }

    #[test]
    fn retranslate_keeps_complex_valid() {
        let mut c = two_cell();
        c.retranslate(1, -2);
        assert_eq!(c.entry(0, 1), Some(2));
        assert!(check_complex(&c).is_valid());
        assert_eq!(c.generator(1).maslov, q(4));
    }

    #[test]
    fn slice_keeps_matching_translates() {
        let c = two_cell();
        let s = c.slice(|_| Some(0));
        assert_eq!(s.complex.entry_count(), 1);
        let s = c.slice(|g| if g.name == "x" { Some(1) } else { Some(0) });
        assert_eq!(s.complex.entry_count(), 0);
    }
}
