//! Cancellation of differential entries and homology extraction.

use std::collections::{BTreeMap, BTreeSet};

use crate::complex::{Chain, FilteredComplex, Generator, Row, Q};
use crate::error::{FloerError, Result};
use crate::gf2::Matrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ReductionMode {
    /// Cancel only entries that preserve both filtration levels.
    Filtered,
    /// Cancel every entry with U-power 0 (units of GF(2)[U]).
    OverUUnits,
    /// Cancel every entry (U is invertible).
    FullField,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Cancellation {
    source: usize,
    target: usize,
    power: i64,
    /// `∂source` minus the cancelled term, at the time of cancellation.
    source_out: Vec<(usize, i64)>,
    /// Entries `x -> U^k target` with `x != source`.
    target_in: Vec<(usize, i64)>,
}

/// Change-of-basis record between the input of a reduction and its output.
///
/// `project` is a chain homotopy equivalence input -> output and `include`
/// a homotopy inverse; both act on [`Chain`]s.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisTrace {
    input_len: usize,
    cancellations: Vec<Cancellation>,
    survivors: Vec<usize>,
    position: Vec<Option<usize>>,
}

impl BasisTrace {
    pub fn identity(n: usize) -> Self {
        BasisTrace {
            input_len: n,
            cancellations: Vec::new(),
            survivors: (0..n).collect(),
            position: (0..n).map(Some).collect(),
        }
    }

    pub fn input_len(&self) -> usize {
        self.input_len
    }

    /// Input index of each output generator.
    pub fn survivors(&self) -> &[usize] {
        &self.survivors
    }

    pub fn is_identity(&self) -> bool {
        self.cancellations.is_empty()
    }

    pub fn cancelled_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.cancellations.iter().map(|c| (c.source, c.target))
    }

    pub fn project(&self, chain: &Chain) -> Chain {
        let mut cur = chain.clone();
        for c in &self.cancellations {
            let hits: Vec<(usize, i64)> = cur.iter().filter(|&(g, _)| g == c.source || g == c.target).collect();
            for (g, m) in hits {
                cur.toggle(g, m);
                if g == c.target {
                    for &(y, d) in &c.source_out {
                        cur.toggle(y, m - c.power + d);
                    }
                }
            }
        }
        cur.iter().map(|(g, m)| (self.position[g].expect("projected onto a survivor"), m)).collect()
    }

    pub fn include(&self, chain: &Chain) -> Chain {
        let mut cur: Chain = chain.iter().map(|(g, m)| (self.survivors[g], m)).collect();
        for c in self.cancellations.iter().rev() {
            let mut extra = Chain::new();
            for &(x, k) in &c.target_in {
                for (g, m) in cur.iter() {
                    if g == x {
                        extra.toggle(c.source, m + k - c.power);
                    }
                }
            }
            cur.add(&extra);
        }
        cur
    }

    /// Trace of running `self` and then `next` on its output.
    pub fn then(&self, next: &BasisTrace) -> BasisTrace {
        assert_eq!(next.input_len, self.survivors.len());
        let lift = |g: usize| self.survivors[g];
        let mut cancellations = self.cancellations.clone();
        for c in &next.cancellations {
            cancellations.push(Cancellation {
                source: lift(c.source),
                target: lift(c.target),
                power: c.power,
                source_out: c.source_out.iter().map(|&(y, d)| (lift(y), d)).collect(),
                target_in: c.target_in.iter().map(|&(x, k)| (lift(x), k)).collect(),
            });
        }
        let survivors: Vec<usize> = next.survivors.iter().map(|&g| lift(g)).collect();
        let mut position = vec![None; self.input_len];
        for (k, &g) in survivors.iter().enumerate() {
            position[g] = Some(k);
        }
        BasisTrace { input_len: self.input_len, cancellations, survivors, position }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedForm {
    pub complex: FilteredComplex,
    pub basis_trace: BasisTrace,
}

/// Incremental cancellation state; [`reduce`] and [`cancel_pair`] drive it.
pub struct Reducer<'a> {
    input: &'a FilteredComplex,
    mode: ReductionMode,
    out: Vec<Row>,
    inn: Vec<Row>,
    alive: Vec<bool>,
    candidates: BTreeSet<usize>,
    log: Vec<Cancellation>,
}

impl<'a> Reducer<'a> {
    pub fn new(input: &'a FilteredComplex, mode: ReductionMode) -> Self {
        let n = input.len();
        let mut out = vec![Row::new(); n];
        let mut inn = vec![Row::new(); n];
        for (f, t, p) in input.entries() {
            out[f].insert(t, p);
            inn[t].insert(f, p);
        }
        let mut r =
            Reducer { input, mode, out, inn, alive: vec![true; n], candidates: BTreeSet::new(), log: Vec::new() };
        for g in 0..n {
            r.refresh(g);
        }
        r
    }

    fn eligible(&self, from: usize, to: usize, power: i64) -> bool {
        match self.mode {
            ReductionMode::FullField => true,
            ReductionMode::OverUUnits => power == 0,
            ReductionMode::Filtered => {
                let (s, t) = (self.input.generator(from), self.input.generator(to));
                t.level_at(power) == (s.i, s.j)
            }
        }
    }

    fn refresh(&mut self, g: usize) {
        let has = self.alive[g] && self.out[g].iter().any(|(&t, &p)| self.eligible(g, t, p));
        if has {
            self.candidates.insert(g);
        } else {
            self.candidates.remove(&g);
        }
    }

    /// The lexicographically first cancellable entry.
    pub fn next_candidate(&self) -> Option<(usize, usize)> {
        let &g = self.candidates.iter().next()?;
        let (&t, _) = self.out[g].iter().find(|(&t, &p)| self.eligible(g, t, p))?;
        Some((g, t))
    }

    pub fn all_candidates(&self) -> Vec<(usize, usize)> {
        self.candidates
            .iter()
            .flat_map(|&g| self.out[g].iter().filter(move |(&t, &p)| self.eligible(g, t, p)).map(move |(&t, _)| (g, t)))
            .collect()
    }

    fn toggle(&mut self, from: usize, to: usize, power: i64) {
        match self.out[from].get(&to) {
            Some(&p) => {
                assert_eq!(p, power, "inhomogeneous differential; validate the complex first");
                self.out[from].remove(&to);
                self.inn[to].remove(&from);
            }
            None => {
                self.out[from].insert(to, power);
                self.inn[to].insert(from, power);
            }
        }
    }

    /// Cancels `source -> U^k target`; the entry must be eligible under the mode.
    pub fn cancel(&mut self, source: usize, target: usize) -> Result<()> {
        let power = match self.out.get(source).and_then(|r| r.get(&target)) {
            Some(&p) if self.alive[source] && self.eligible(source, target, p) => p,
            _ => {
                return Err(FloerError::NoUnitEntry {
                    from: self.input.generator(source).name.clone(),
                    to: self.input.generator(target).name.clone(),
                })
            }
        };
        let source_out: Vec<(usize, i64)> =
            self.out[source].iter().filter(|(&y, _)| y != target).map(|(&y, &d)| (y, d)).collect();
        let target_in: Vec<(usize, i64)> =
            self.inn[target].iter().filter(|(&x, _)| x != source).map(|(&x, &k)| (x, k)).collect();
        for &(x, k) in &target_in {
            for &(y, d) in &source_out {
                self.toggle(x, y, k - power + d);
            }
        }
        let mut touched: BTreeSet<usize> = target_in.iter().map(|&(x, _)| x).collect();
        touched.extend(self.inn[source].keys().copied());
        for g in [source, target] {
            for (y, _) in std::mem::take(&mut self.out[g]) {
                self.inn[y].remove(&g);
            }
            for (x, _) in std::mem::take(&mut self.inn[g]) {
                self.out[x].remove(&g);
            }
            self.alive[g] = false;
            self.candidates.remove(&g);
        }
        for g in touched {
            self.refresh(g);
        }
        self.log.push(Cancellation { source, target, power, source_out, target_in });
        Ok(())
    }

    pub fn run(&mut self) {
        while let Some((s, t)) = self.next_candidate() {
            self.cancel(s, t).expect("candidate entries are cancellable");
        }
    }

    pub fn finish(self) -> ReducedForm {
        let n = self.input.len();
        let survivors: Vec<usize> = (0..n).filter(|&g| self.alive[g]).collect();
        let mut position = vec![None; n];
        let mut complex = FilteredComplex::new();
        for (k, &g) in survivors.iter().enumerate() {
            position[g] = Some(k);
            complex.add_generator(self.input.generator(g).clone()).expect("unique names");
        }
        for &g in &survivors {
            for (&t, &p) in &self.out[g] {
                complex.toggle_entry(position[g].unwrap(), position[t].unwrap(), p).expect("fresh entry");
            }
        }
        ReducedForm { complex, basis_trace: BasisTrace { input_len: n, cancellations: self.log, survivors, position } }
    }
}

/// Cancels one unit entry `from -> to` (U-power 0).
pub fn cancel_pair(c: &FilteredComplex, from: &str, to: &str) -> Result<ReducedForm> {
    let (f, t) = (c.require(from)?, c.require(to)?);
    let mut r = Reducer::new(c, ReductionMode::OverUUnits);
    r.cancel(f, t)?;
    Ok(r.finish())
}

/// Iterated cancellation, always taking the lexicographically first eligible entry.
pub fn reduce(c: &FilteredComplex, mode: ReductionMode) -> ReducedForm {
    let mut r = Reducer::new(c, mode);
    r.run();
    r.finish()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GradingKey {
    Maslov,
    Alexander,
    I,
    J,
}

impl GradingKey {
    fn read(self, g: &Generator) -> Q {
        match self {
            GradingKey::Maslov => g.maslov,
            GradingKey::Alexander => g.alexander(),
            GradingKey::I => g.i,
            GradingKey::J => g.j,
        }
    }
}

/// Which ring the homology is taken over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HomologyRing {
    /// GF(2), after setting U = 0 (only U⁰ entries kept).
    Field,
    /// GF(2)[U]: free ranks plus U-torsion orders.
    Polynomial,
    /// GF(2)[U, U⁻¹]: free rank; Maslov keys are reduced mod 2.
    Laurent,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GradedRanks {
    pub keys: Vec<GradingKey>,
    pub ranks: BTreeMap<Vec<Q>, usize>,
    pub torsion: BTreeMap<Vec<Q>, Vec<i64>>,
}

impl GradedRanks {
    pub fn total(&self) -> usize {
        self.ranks.values().sum()
    }

    pub fn rank_at(&self, key: &[Q]) -> usize {
        self.ranks.get(key).copied().unwrap_or(0)
    }

    /// Ranks summed over everything except key position `pos`.
    pub fn marginal(&self, pos: usize) -> BTreeMap<Q, usize> {
        let mut out = BTreeMap::new();
        for (k, &r) in &self.ranks {
            *out.entry(k[pos]).or_insert(0) += r;
        }
        out
    }

    fn bump(&mut self, key: Vec<Q>) {
        *self.ranks.entry(key).or_insert(0) += 1;
    }
}

fn key_of(g: &Generator, keys: &[GradingKey], ring: HomologyRing) -> Vec<Q> {
    keys.iter()
        .map(|&k| {
            let v = k.read(g);
            if ring == HomologyRing::Laurent && k == GradingKey::Maslov {
                let two = Q::from_integer(2);
                v - (v / two).floor() * two
            } else {
                v
            }
        })
        .collect()
}

/// Complex with only the U⁰ entries kept (the quotient by U).
pub fn mod_u(c: &FilteredComplex) -> FilteredComplex {
    let mut out = FilteredComplex::new();
    for g in c.generators() {
        out.add_generator(g.clone()).expect("unique names");
    }
    for (f, t, p) in c.entries() {
        if p == 0 {
            out.toggle_entry(f, t, 0).expect("fresh entry");
        }
    }
    out
}

pub fn homology(c: &FilteredComplex, ring: HomologyRing, keys: &[GradingKey]) -> GradedRanks {
    let mut out = GradedRanks { keys: keys.to_vec(), ..Default::default() };
    match ring {
        HomologyRing::Field => {
            let reduced = reduce(&mod_u(c), ReductionMode::FullField);
            for g in reduced.complex.generators() {
                out.bump(key_of(g, keys, ring));
            }
        }
        HomologyRing::Laurent => {
            let reduced = reduce(c, ReductionMode::FullField);
            for g in reduced.complex.generators() {
                out.bump(key_of(g, keys, ring));
            }
        }
        HomologyRing::Polynomial => {
            let reduced = reduce(c, ReductionMode::OverUUnits);
            let (pairs, free) = smith_pairs(&reduced.complex);
            for g in free {
                out.bump(key_of(reduced.complex.generator(g), keys, ring));
            }
            for (_, target, order) in pairs {
                let key = key_of(reduced.complex.generator(target), keys, ring);
                out.torsion.entry(key).or_default().push(order);
            }
            for v in out.torsion.values_mut() {
                v.sort_unstable();
            }
        }
    }
    out
}

/// Graded Smith normal form over GF(2)[U] of a complex with only U^{k>=0} entries.
///
/// Returns the isolated pairs `(source, target, order)` (each contributing
/// `F[U]/U^order` generated by `target`) and the free generators.
pub fn smith_pairs(c: &FilteredComplex) -> (Vec<(usize, usize, i64)>, Vec<usize>) {
    let n = c.len();
    let mut out = vec![Row::new(); n];
    let mut inn = vec![Row::new(); n];
    for (f, t, p) in c.entries() {
        assert!(p >= 0, "smith_pairs needs polynomial entries");
        out[f].insert(t, p);
        inn[t].insert(f, p);
    }
    let mut alive = vec![true; n];
    let mut pairs = Vec::new();

    fn toggle(out: &mut [Row], inn: &mut [Row], f: usize, t: usize, p: i64) {
        match out[f].get(&t) {
            Some(&old) => {
                assert_eq!(old, p, "inhomogeneous differential");
                out[f].remove(&t);
                inn[t].remove(&f);
            }
            None => {
                out[f].insert(t, p);
                inn[t].insert(f, p);
            }
        }
    }
    // basis change dst' = dst + U^p src
    fn add_multiple(out: &mut [Row], inn: &mut [Row], dst: usize, src: usize, p: i64) {
        let src_row: Vec<(usize, i64)> = out[src].iter().map(|(&t, &k)| (t, k)).collect();
        for (t, k) in src_row {
            toggle(out, inn, dst, t, k + p);
        }
        let dst_col: Vec<(usize, i64)> = inn[dst].iter().map(|(&x, &k)| (x, k)).collect();
        for (x, k) in dst_col {
            toggle(out, inn, x, src, k + p);
        }
    }

    loop {
        let pivot = (0..n).filter(|&g| alive[g]).flat_map(|g| out[g].iter().map(move |(&t, &p)| (p, g, t))).min();
        let Some((a, g, h)) = pivot else { break };
        let others: Vec<(usize, i64)> = inn[h].iter().filter(|(&x, _)| x != g).map(|(&x, &b)| (x, b)).collect();
        for (g2, b) in others {
            add_multiple(&mut out, &mut inn, g2, g, b - a);
        }
        let others: Vec<(usize, i64)> = out[g].iter().filter(|(&y, _)| y != h).map(|(&y, &b)| (y, b)).collect();
        for (h2, b) in others {
            add_multiple(&mut out, &mut inn, h, h2, b - a);
        }
        debug_assert_eq!(out[g].len(), 1);
        debug_assert_eq!(inn[h].len(), 1);
        for v in [g, h] {
            for (y, _) in std::mem::take(&mut out[v]) {
                inn[y].remove(&v);
            }
            for (x, _) in std::mem::take(&mut inn[v]) {
                out[x].remove(&v);
            }
            alive[v] = false;
        }
        pairs.push((g, h, a));
    }
    let free = (0..n).filter(|&g| alive[g]).collect();
    (pairs, free)
}

/// Map induced on GF(2) homology (U set to 0) by a chain map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedMap {
    /// `matrix[r][c]`: coefficient of codomain class `r` in the image of domain class `c`.
    pub matrix: Matrix,
    pub rank: usize,
    /// Kernel basis in domain-class coordinates.
    pub kernel: Vec<Vec<bool>>,
    /// Representative cycles (chains of the domain) of the domain classes.
    pub domain_basis: Vec<Chain>,
}

impl InducedMap {
    pub fn domain_dim(&self) -> usize {
        self.matrix.cols()
    }

    pub fn codomain_dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn is_injective(&self) -> bool {
        self.rank == self.domain_dim()
    }

    pub fn is_surjective(&self) -> bool {
        self.rank == self.codomain_dim()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }
}

/// Homology over GF(2) of a complex whose entries all have U-power 0, with
/// coordinates: the trace projects cycles onto the surviving generators.
pub struct FieldHomology {
    pub reduced: ReducedForm,
}

impl FieldHomology {
    pub fn new(c: &FilteredComplex) -> Self {
        FieldHomology { reduced: reduce(&mod_u(c), ReductionMode::FullField) }
    }

    pub fn dim(&self) -> usize {
        self.reduced.complex.len()
    }

    /// Coordinates of the class of a cycle.
    pub fn coordinates(&self, cycle: &Chain) -> Vec<bool> {
        let mut v = vec![false; self.dim()];
        for (g, _) in self.reduced.basis_trace.project(cycle).iter() {
            v[g] ^= true;
        }
        v
    }

    /// A cycle representing basis class `k`.
    pub fn representative(&self, k: usize) -> Chain {
        self.reduced.basis_trace.include(&Chain::single(k, 0))
    }
}

pub fn induced_map(domain: &FilteredComplex, codomain: &FilteredComplex, map: impl Fn(&Chain) -> Chain) -> InducedMap {
    let (hd, hc) = (FieldHomology::new(domain), FieldHomology::new(codomain));
    let mut matrix = Matrix::zeros(hc.dim(), hd.dim());
    let mut domain_basis = Vec::with_capacity(hd.dim());
    for k in 0..hd.dim() {
        let rep = hd.representative(k);
        for (r, bit) in hc.coordinates(&map(&rep)).into_iter().enumerate() {
            matrix.set(r, k, bit);
        }
        domain_basis.push(rep);
    }
    InducedMap { rank: matrix.rank(), kernel: matrix.kernel(), matrix, domain_basis }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{check_complex, q, Generator};

    fn pair() -> FilteredComplex {
        let mut c = FilteredComplex::new();
        c.add_generator(Generator::knot("y", 0, q(1))).unwrap();
        c.add_generator(Generator::knot("x", 0, q(0))).unwrap();
        c.add_entry("y", "x", 0).unwrap();
        c
    }

    #[test]
    fn acyclic_pair_cancels_to_empty() {
        let r = cancel_pair(&pair(), "y", "x").unwrap();
        assert!(r.complex.is_empty());
    }

    #[test]
    fn cancel_requires_unit_entry() {
        let mut c = pair();
        assert!(matches!(cancel_pair(&c, "x", "y"), Err(FloerError::NoUnitEntry { .. })));
        c.add_entry("y", "x", 0).unwrap();
        c.retranslate(1, -1);
        assert!(matches!(cancel_pair(&c, "y", "x"), Err(FloerError::NoUnitEntry { .. })));
    }

    #[test]
    fn zero_differential_is_fixed() {
        let mut c = FilteredComplex::new();
        c.add_generator(Generator::knot("a", 0, q(0))).unwrap();
        c.add_generator(Generator::knot("b", 1, q(2))).unwrap();
        for mode in [ReductionMode::Filtered, ReductionMode::OverUUnits, ReductionMode::FullField] {
            let r = reduce(&c, mode);
            assert_eq!(r.complex, c);
            assert!(r.basis_trace.is_identity());
        }
    }

    #[test]
    fn torsion_pair_over_polynomial_ring() {
        // y -> U x: homology F[U]/U generated by x.
        let mut c = FilteredComplex::new();
        c.add_generator(Generator::knot("y", 0, q(-1))).unwrap();
        c.add_generator(Generator::knot("x", 0, q(0))).unwrap();
        c.add_entry("y", "x", 1).unwrap();
        assert!(check_complex(&c).is_valid());
        let h = homology(&c, HomologyRing::Polynomial, &[GradingKey::Maslov]);
        assert_eq!(h.total(), 0);
        assert_eq!(h.torsion.get(&vec![q(0)]), Some(&vec![1]));
        assert_eq!(homology(&c, HomologyRing::Laurent, &[]).total(), 0);
        assert_eq!(homology(&c, HomologyRing::Field, &[]).total(), 2);
    }

    #[test]
    fn trace_project_include_round_trip() {
        // a -> b + c, b -> d, c -> d : the box over F, acyclic
        let mut c = FilteredComplex::new();
        for (n, m) in [("a", 3), ("b", 2), ("c", 2), ("d", 1), ("e", 0)] {
            c.add_generator(Generator::knot(n, 0, q(m))).unwrap();
        }
        c.add_entry("a", "b", 0).unwrap();
        c.add_entry("a", "c", 0).unwrap();
        c.add_entry("b", "d", 0).unwrap();
        c.add_entry("c", "d", 0).unwrap();
        let r = reduce(&c, ReductionMode::FullField);
        assert_eq!(r.complex.len(), 1);
        let e = Chain::single(4, 0);
        assert_eq!(r.basis_trace.project(&e), Chain::single(0, 0));
        let back = r.basis_trace.include(&Chain::single(0, 0));
        assert!(c.differential_of(&back).is_zero());
        assert_eq!(r.basis_trace.project(&back), Chain::single(0, 0));
        // b + c is a cycle and a boundary
        let bc: Chain = [(1, 0), (2, 0)].into_iter().collect();
        assert!(r.basis_trace.project(&bc).is_zero());
    }
}
