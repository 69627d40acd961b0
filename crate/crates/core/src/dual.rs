//! The dual-knot cone with its `(I, J)` filtration, its normal form, and the
//! `U = 1` map from `HFK⁻` to `ĤF`.

use std::collections::BTreeSet;

use crate::complex::{check_complex, q, Chain, FilteredComplex, Generator, Row, Q};
use crate::cone::{ConeCell, ConeVertex, MappingCone, Segment};
use crate::error::{FloerError, Result};
use crate::models::{genus, FlipMap};
use crate::reduce::{induced_map, reduce, FieldHomology, InducedMap, ReducedForm, ReductionMode};

#[derive(Clone, Debug)]
pub struct DualCone {
    pub framing: i64,
    pub cone: MappingCone,
    /// Cone cells at `I = 0`, with `j` holding the `J` level and Maslov the `gr` grading.
    pub complex: FilteredComplex,
    pub cells: Vec<ConeCell>,
}

fn j_offset(s: i64, n: i64) -> Q {
    Q::new(2 * s + n - 1, 2 * n)
}

pub fn build_dual_cone(c: &FilteredComplex, flip: &FlipMap, n: i64) -> Result<DualCone> {
    if n == 0 {
        return Err(FloerError::BadFraming);
    }
    let g = genus(c).max(1);
    let mut vertices: BTreeSet<ConeVertex> = (-g + 1..=g).map(ConeVertex::a).collect();
    vertices.extend((-g + n + 1..=g).map(ConeVertex::b));
    let cone = MappingCone::with_vertices(c, flip, n, 1, vertices)?;
    let assembled = cone.assemble(None);
    let mut complex = FilteredComplex::new();
    for (k, cell) in assembled.cells.iter().enumerate() {
        let gen = c.generator(cell.generator);
        let (i, j) = gen.level_at(cell.power);
        let s = cell.vertex.t;
        let big_j = match cell.vertex.segment {
            Segment::A => (i - 1).max(j - s) + j_offset(s, n),
            Segment::B => i - 1 + j_offset(s, n),
        };
        let cell_gen = assembled.complex.generator(k);
        complex.add_generator(Generator::new(cell_gen.name.clone(), q(0), big_j, cell_gen.maslov))?;
    }
    for (f, t, p) in assembled.complex.entries() {
        complex.toggle_entry(f, t, p)?;
    }
    let report = check_complex(&complex);
    if !report.is_valid() {
        return Err(FloerError::InvalidComplex(format!("dual cone: {}", report.violations[0])));
    }
    Ok(DualCone { framing: n, cone, complex, cells: assembled.cells })
}

/// A basis change `dst ↦ dst + U^power·src` on a reduced complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct BasisChange {
    dst: usize,
    src: usize,
    power: i64,
}

fn apply_changes<'a>(chain: &Chain, changes: impl Iterator<Item = &'a BasisChange>) -> Chain {
    let mut cur = chain.clone();
    for ch in changes {
        let hits: Vec<i64> = cur.iter().filter(|&(g, _)| g == ch.dst).map(|(_, m)| m).collect();
        for m in hits {
            cur.toggle(ch.src, m + ch.power);
        }
    }
    cur
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Summand {
    O,
    H,
    V,
}

/// Output of [`normal_form`]: the split complex `O ⊕ ⊕Hᵢ ⊕ ⊕Vᵢ` and the
/// maps relating it to the dual cone.
#[derive(Clone, Debug)]
pub struct NormalForm {
    /// Generators named `o`, `xh_i`, `yh_i`, `xv_i`, `yv_i`.
    pub complex: FilteredComplex,
    pub reduction: ReducedForm,
    changes: Vec<BasisChange>,
    /// Index in the reduced complex of each normal-form generator.
    order: Vec<usize>,
    pub h_count: usize,
    pub v_count: usize,
}

impl NormalForm {
    /// Chain of the dual cone -> chain of the normal form.
    pub fn project(&self, chain: &Chain) -> Chain {
        let reduced = apply_changes(&self.reduction.basis_trace.project(chain), self.changes.iter());
        let mut position = vec![0; self.order.len()];
        for (k, &r) in self.order.iter().enumerate() {
            position[r] = k;
        }
        reduced.map_generators(|r| position[r])
    }

    /// Chain of the normal form -> chain of the dual cone.
    pub fn include(&self, chain: &Chain) -> Chain {
        let reduced = chain.map_generators(|k| self.order[k]);
        self.reduction.basis_trace.include(&apply_changes(&reduced, self.changes.iter().rev()))
    }

    pub fn summand_counts(&self) -> (usize, usize, usize) {
        (self.complex.len() - 2 * (self.h_count + self.v_count), self.h_count, self.v_count)
    }
}

struct Splitter<'a> {
    gens: &'a [Generator],
    out: Vec<Row>,
    inn: Vec<Row>,
    changes: Vec<BasisChange>,
}

impl Splitter<'_> {
    fn toggle(&mut self, f: usize, t: usize, p: i64) {
        if self.out[f].remove(&t).is_some() {
            self.inn[t].remove(&f);
        } else {
            self.out[f].insert(t, p);
            self.inn[t].insert(f, p);
        }
    }

    fn allowed(&self, dst: usize, src: usize, power: i64) -> bool {
        let (d, s) = (&self.gens[dst], &self.gens[src]);
        let (i, j) = s.level_at(power);
        i <= d.i && j <= d.j
    }

    fn add_multiple(&mut self, dst: usize, src: usize, power: i64) {
        let row: Vec<(usize, i64)> = self.out[src].iter().map(|(&t, &k)| (t, k)).collect();
        for (t, k) in row {
            self.toggle(dst, t, k + power);
        }
        let col: Vec<(usize, i64)> = self.inn[dst].iter().map(|(&x, &k)| (x, k)).collect();
        for (x, k) in col {
            self.toggle(x, src, k + power);
        }
        self.changes.push(BasisChange { dst, src, power });
    }

    /// Isolates `g -> h` by filtered basis changes, or reports the change that is not filtered.
    fn isolate(&mut self, g: usize, h: usize) -> bool {
        let a = self.out[g][&h];
        let sources: Vec<(usize, i64)> = self.inn[h].iter().filter(|(&x, _)| x != g).map(|(&x, &b)| (x, b)).collect();
        for &(x, b) in &sources {
            if !self.allowed(x, g, b - a) {
                return false;
            }
        }
        for (x, b) in sources {
            self.add_multiple(x, g, b - a);
        }
        let targets: Vec<(usize, i64)> = self.out[g].iter().filter(|(&y, _)| y != h).map(|(&y, &b)| (y, b)).collect();
        for &(y, b) in &targets {
            if !self.allowed(h, y, b - a) {
                return false;
            }
        }
        for (y, b) in targets {
            self.add_multiple(h, y, b - a);
        }
        self.out[g].len() == 1 && self.inn[h].len() == 1 && self.inn[g].is_empty() && self.out[h].is_empty()
    }
}

fn classify(source: &Generator, target: &Generator, power: i64) -> Option<Summand> {
    let (ti, tj) = target.level_at(power);
    let x_diag = target.j - target.i;
    if x_diag != q(0) {
        return None;
    }
    match (source.i - ti, source.j - tj) {
        (di, dj) if di == q(1) && dj == q(0) => Some(Summand::H),
        (di, dj) if di == q(0) && dj == q(1) => Some(Summand::V),
        _ => None,
    }
}

/// Filtered reduction of a dual cone followed by a filtered splitting into
/// `O`, `H` (horizontal arrow) and `V` (vertical arrow) summands.
///
/// `expected` is the number of `H` (and of `V`) summands the caller expects.
pub fn normal_form(dc: &DualCone, expected: Option<usize>) -> Result<NormalForm> {
    let reduction = reduce(&dc.complex, ReductionMode::Filtered);
    let gens = reduction.complex.generators().to_vec();
    let gens = gens.as_slice();
    let n = gens.len();
    let mut sp = Splitter { gens, out: vec![Row::new(); n], inn: vec![Row::new(); n], changes: Vec::new() };
    for (f, t, p) in reduction.complex.entries() {
        sp.toggle(f, t, p);
    }
    let mut pairs = Vec::new();
    let mut done = vec![false; n];
    loop {
        let mut candidates: Vec<(i64, usize, usize)> =
            (0..n).filter(|&g| !done[g]).flat_map(|g| sp.out[g].iter().map(move |(&h, &p)| (p, g, h))).collect();
        if candidates.is_empty() {
            break;
        }
        candidates.sort();
        let mut progressed = false;
        for (_, g, h) in candidates {
            let snapshot = (sp.out.clone(), sp.inn.clone(), sp.changes.len());
            if sp.isolate(g, h) {
                let p = sp.out[g][&h];
                pairs.push((g, h, p));
                sp.toggle(g, h, p);
                done[g] = true;
                done[h] = true;
                progressed = true;
                break;
            }
            sp.out = snapshot.0;
            sp.inn = snapshot.1;
            sp.changes.truncate(snapshot.2);
        }
        if !progressed {
            return Err(FloerError::NormalFormMismatch("no filtered splitting of the remaining arrows".into()));
        }
    }
    let mut hs = Vec::new();
    let mut vs = Vec::new();
    for &(g, h, p) in &pairs {
        match classify(&gens[g], &gens[h], p) {
            Some(Summand::H) => hs.push((g, h, p)),
            Some(Summand::V) => vs.push((g, h, p)),
            _ => {
                return Err(FloerError::NormalFormMismatch(format!(
                    "arrow {} -> {} is neither horizontal nor vertical of length one",
                    gens[g].name, gens[h].name
                )))
            }
        }
    }
    let singles: Vec<usize> = (0..n).filter(|&g| !done[g]).collect();
    if singles.len() != 1 || gens[singles[0]].j != gens[singles[0]].i {
        return Err(FloerError::NormalFormMismatch(format!("{} unpaired generators", singles.len())));
    }
    if hs.len() != vs.len() || expected.is_some_and(|e| e != hs.len()) {
        return Err(FloerError::NormalFormMismatch(format!("{} H and {} V summands", hs.len(), vs.len())));
    }
    let mut order = singles.clone();
    let mut complex = FilteredComplex::new();
    complex.add_generator(Generator { name: "o".into(), ..gens[singles[0]].clone() })?;
    for (tag, list) in [("h", &hs), ("v", &vs)] {
        for (k, &(g, h, p)) in list.iter().enumerate() {
            let x = complex.add_generator(Generator { name: format!("x{tag}_{}", k + 1), ..gens[h].clone() })?;
            let y = complex.add_generator(Generator { name: format!("y{tag}_{}", k + 1), ..gens[g].clone() })?;
            complex.toggle_entry(y, x, p)?;
            order.push(h);
            order.push(g);
        }
    }
    Ok(NormalForm { complex, reduction, changes: sp.changes, order, h_count: hs.len(), v_count: vs.len() })
}

/// Translate of each generator lying at `J = a`, or `None` if `J − a` is fractional.
fn row_power(g: &Generator, a: i64) -> Option<i64> {
    let m = g.j - q(a);
    m.is_integer().then(|| m.to_integer())
}

fn minus_slice_power(g: &Generator, a: i64) -> Option<i64> {
    row_power(g, a).filter(|&m| g.i - q(m) <= q(0))
}

/// The map `H(C{I ≤ 0, J = a}) → H(C{J = a})` induced by inclusion; the
/// target computes `ĤF` of the ambient manifold.
#[derive(Clone, Debug)]
pub struct GMapReport {
    pub alexander: i64,
    pub map: InducedMap,
}

impl GMapReport {
    pub fn is_injective(&self) -> bool {
        self.map.is_injective()
    }
}

pub fn g_map(c: &FilteredComplex, alexander: i64) -> GMapReport {
    let slice = c.slice(|g| minus_slice_power(g, alexander));
    let row = c.slice(|g| row_power(g, alexander));
    let map = induced_map(&slice.complex, &row.complex, |chain| {
        row.to_cells(&slice.from_cells(chain)).expect("the slice lies in the row")
    });
    GMapReport { alexander, map }
}

/// Largest Alexander grading `J − I` over the generators.
pub fn top_alexander(c: &FilteredComplex) -> Option<i64> {
    c.generators().iter().map(|g| (g.j - g.i).floor().to_integer()).max()
}

/// Whether two `HFK⁻` cycles in grading `alexander` have different images under G.
pub fn distinct_classes(c: &FilteredComplex, alexander: i64, class_a: &Chain, class_b: &Chain) -> Result<bool> {
    let slice = c.slice(|g| minus_slice_power(g, alexander));
    let row = c.slice(|g| row_power(g, alexander));
    let mut images = Vec::new();
    for (label, class) in [("first", class_a), ("second", class_b)] {
        let cells = slice
            .to_cells(class)
            .ok_or_else(|| FloerError::NotCycles(format!("{label} class leaves {{I ≤ 0, J = {alexander}}}")))?;
        if !slice.complex.differential_of(&cells).is_zero() {
            return Err(FloerError::NotCycles(format!("{label} class has nonzero boundary")));
        }
        images.push(row.to_cells(class).expect("the slice lies in the row"));
    }
    let h = FieldHomology::new(&row.complex);
    Ok(h.coordinates(&images[0]) != h.coordinates(&images[1]))
}

/// Alexander grading of the LOSS class of the dual knot: `(tb − rot + 1)/2`.
pub fn loss_grading(tb: i64, rot: i64) -> Result<i64> {
    let d = tb - rot + 1;
    if d.rem_euclid(2) != 0 {
        return Err(FloerError::NonIntegral(d));
    }
    Ok(d / 2)
}
