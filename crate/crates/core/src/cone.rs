//! Surgery mapping cones `X∞_{p/q}` and their hat parts.

use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;

use crate::complex::{Chain, FilteredComplex, Generator, Q};
use crate::error::{FloerError, Result};
use crate::models::{genus, FlipMap};
use crate::reduce::{homology, induced_map, mod_u, GradedRanks, GradingKey, HomologyRing, InducedMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Segment {
    A,
    B,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ConeVertex {
    pub segment: Segment,
    pub t: i64,
}

impl ConeVertex {
    pub fn a(t: i64) -> Self {
        ConeVertex { segment: Segment::A, t }
    }

    pub fn b(t: i64) -> Self {
        ConeVertex { segment: Segment::B, t }
    }

    pub fn label(&self) -> String {
        let seg = match self.segment {
            Segment::A => "A",
            Segment::B => "B",
        };
        format!("{seg}[{}]", self.t)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConeRange {
    /// `A` over `t ∈ [−(g−1)q, gq−1]`, `B` over `t ∈ [−(g−1)q+p, gq−1]`.
    Paper,
    /// `A` over `s ∈ [−w, w]` with `w = g + |p| + q`, `B` covering all targets.
    Full,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flavor {
    Hat,
    Infinity,
}

/// One generator of an assembled cone: the translate `U^power·g` in `vertex`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConeCell {
    pub vertex: ConeVertex,
    pub generator: usize,
    pub power: i64,
}

/// A cone written out as a single complex; every cell sits at `I = 0`.
#[derive(Clone, Debug)]
pub struct AssembledCone {
    pub complex: FilteredComplex,
    pub cells: Vec<ConeCell>,
}

impl AssembledCone {
    pub fn cells_of(&self, v: ConeVertex) -> Vec<usize> {
        (0..self.cells.len()).filter(|&k| self.cells[k].vertex == v).collect()
    }
}

#[derive(Clone, Debug)]
pub struct MappingCone {
    pub knot: FilteredComplex,
    pub flip: FlipMap,
    pub p: i64,
    pub q: i64,
    pub genus: i64,
    pub vertices: BTreeSet<ConeVertex>,
}

fn check_coefficients(p: i64, q: i64) -> Result<()> {
    if q <= 0 || p == 0 || p.gcd(&q) != 1 {
        return Err(FloerError::BadCoefficients { p, q });
    }
    Ok(())
}

fn integral_level(g: &Generator) -> Result<(i64, i64)> {
    if g.i.is_integer() && g.j.is_integer() {
        Ok((g.i.to_integer(), g.j.to_integer()))
    } else {
        Err(FloerError::UnsupportedModel(format!("{} has fractional filtration levels", g.name)))
    }
}

impl MappingCone {
    pub fn build(c: &FilteredComplex, flip: &FlipMap, p: i64, q: i64, range: ConeRange) -> Result<Self> {
        check_coefficients(p, q)?;
        let g = genus(c).max(1);
        let (t_lo, t_hi) = match range {
            ConeRange::Paper => (-(g - 1) * q, g * q - 1),
            ConeRange::Full => {
                let w = g + p.abs() + q;
                (-w * q, (w + 1) * q - 1)
            }
        };
        let mut vertices: BTreeSet<ConeVertex> = (t_lo..=t_hi).map(ConeVertex::a).collect();
        vertices.extend((t_lo + p..=t_hi).map(ConeVertex::b));
        Self::with_vertices(c, flip, p, q, vertices)
    }

    /// A cone on an explicit vertex set; maps run between whichever vertices are present.
    pub fn with_vertices(
        c: &FilteredComplex,
        flip: &FlipMap,
        p: i64,
        q: i64,
        vertices: BTreeSet<ConeVertex>,
    ) -> Result<Self> {
        check_coefficients(p, q)?;
        for g in c.generators() {
            integral_level(g)?;
        }
        Ok(MappingCone { knot: c.clone(), flip: flip.clone(), p, q, genus: genus(c).max(1), vertices })
    }

    pub fn s_of(&self, t: i64) -> i64 {
        t.div_euclid(self.q)
    }

    pub fn sector_of(&self, t: i64) -> i64 {
        t.rem_euclid(self.p.abs())
    }

    pub fn sectors(&self) -> Vec<i64> {
        (0..self.p.abs()).collect()
    }

    pub fn contains(&self, v: ConeVertex) -> bool {
        self.vertices.contains(&v)
    }

    /// Translate power putting generator `g` of vertex `v` at `I = 0`.
    pub fn cell_power(&self, v: ConeVertex, g: usize) -> i64 {
        let (i, j) = integral_level(self.knot.generator(g)).expect("checked at build");
        match v.segment {
            Segment::A => i.max(j - self.s_of(v.t)),
            Segment::B => i,
        }
    }

    /// Out-maps of an `A` vertex that land on present vertices.
    pub fn targets(&self, a: ConeVertex) -> Vec<ConeVertex> {
        let mut out = Vec::new();
        for b in [ConeVertex::b(a.t), ConeVertex::b(a.t + self.p)] {
            if self.contains(b) && !out.contains(&b) {
                out.push(b);
            }
        }
        out
    }

    pub fn sources(&self, b: ConeVertex) -> Vec<ConeVertex> {
        let mut out = Vec::new();
        for a in [ConeVertex::a(b.t), ConeVertex::a(b.t - self.p)] {
            if self.contains(a) && !out.contains(&a) {
                out.push(a);
            }
        }
        out
    }

    /// Shift of `(t, A)` relative to the representative of its sector in `[0, |p|)`,
    /// from the relation `shift(t + p) = shift(t) + 2⌊t/q⌋`.
    fn relative_shift_a(&self, t: i64) -> i64 {
        let t0 = self.sector_of(t);
        let k = (t - t0) / self.p;
        let step = |j: i64| 2 * self.s_of(t0 + j * self.p);
        if k >= 0 {
            (0..k).map(step).sum()
        } else {
            -(k..0).map(step).sum::<i64>()
        }
    }

    /// Grading shift of every vertex, so that `v` and `h` drop the grading by one.
    pub fn grading_shifts(&self) -> BTreeMap<ConeVertex, Q> {
        let mut shifts = BTreeMap::new();
        if self.q == 1 {
            let p = Q::from_integer(self.p);
            let sign = Q::from_integer(self.p.signum());
            for &v in &self.vertices {
                let s = Q::from_integer(v.t);
                let base = (s * 2 - p) * (s * 2 - p) / (p * 4);
                let tail = match v.segment {
                    Segment::A => (Q::from_integer(2) - sign * 3) / 4,
                    Segment::B => (Q::from_integer(-2) - sign * 3) / 4,
                };
                shifts.insert(v, base + tail);
            }
            return shifts;
        }
        for &v in &self.vertices {
            let a = self.relative_shift_a(v.t);
            let shift = match v.segment {
                Segment::A => a,
                Segment::B => a - 1,
            };
            shifts.insert(v, Q::from_integer(shift));
        }
        shifts
    }

    /// Writes the cone (or one Spin^c sector of it) out as a single complex.
    pub fn assemble(&self, sector: Option<i64>) -> AssembledCone {
        let shifts = self.grading_shifts();
        let mut complex = FilteredComplex::new();
        let mut cells = Vec::new();
        let mut index = BTreeMap::new();
        for &v in &self.vertices {
            if sector.is_some_and(|i| self.sector_of(v.t) != i) {
                continue;
            }
            for (g, gen) in self.knot.generators().iter().enumerate() {
                let m = self.cell_power(v, g);
                let name = format!("{}:{}", v.label(), gen.name);
                let maslov = gen.maslov_at(m) + shifts[&v];
                let z = Q::from_integer(0);
                index.insert((v, g), cells.len());
                complex.add_generator(Generator::new(name, z, z, maslov)).expect("unique cell names");
                cells.push(ConeCell { vertex: v, generator: g, power: m });
            }
        }
        let add = |from: usize, to: usize, k: i64, complex: &mut FilteredComplex| {
            let power = cells[from].power + k - cells[to].power;
            debug_assert!(power >= 0, "cone map raises I");
            complex.toggle_entry(from, to, power).expect("homogeneous cone");
        };
        for (from, cell) in cells.iter().enumerate() {
            let ConeCell { vertex: v, generator: g, .. } = *cell;
            for (&h, &k) in self.knot.row(g) {
                add(from, index[&(v, h)], k, &mut complex);
            }
            if v.segment == Segment::A {
                if let Some(&to) = index.get(&(ConeVertex::b(v.t), g)) {
                    add(from, to, 0, &mut complex);
                }
                let (bar, phi) = self.flip.image(g);
                if let Some(&to) = index.get(&(ConeVertex::b(v.t + self.p), bar)) {
                    add(from, to, self.s_of(v.t) + phi, &mut complex);
                }
            }
        }
        AssembledCone { complex, cells }
    }

    pub fn hat(&self) -> HatCone {
        HatCone { cone: self.clone() }
    }

    pub fn sector_homology(&self, sector: i64, flavor: Flavor) -> GradedRanks {
        let a = self.assemble(Some(sector));
        match flavor {
            Flavor::Hat => homology(&a.complex, HomologyRing::Field, &[GradingKey::Maslov]),
            Flavor::Infinity => homology(&a.complex, HomologyRing::Laurent, &[GradingKey::Maslov]),
        }
    }

    fn pair_is_acyclic(&self, a: ConeVertex, b: ConeVertex, flavor: Flavor) -> bool {
        let pair = MappingCone { vertices: [a, b].into_iter().collect(), ..self.clone() };
        let mut assembled = pair.assemble(None);
        let ring = match flavor {
            Flavor::Hat => {
                assembled.complex = mod_u(&assembled.complex);
                HomologyRing::Field
            }
            Flavor::Infinity => HomologyRing::Laurent,
        };
        homology(&assembled.complex, ring, &[]).total() == 0
    }

    /// The map out of `(t, A)` that is a quasi-isomorphism once `|s| ≥ g`:
    /// `v` for `s ≥ g`, `h` for `s ≤ −g`.
    fn outer_edge(&self, a: ConeVertex) -> Option<ConeVertex> {
        let s = self.s_of(a.t);
        if s >= self.genus {
            Some(ConeVertex::b(a.t))
        } else if s <= -self.genus {
            Some(ConeVertex::b(a.t + self.p))
        } else {
            None
        }
    }

    /// Cancels `(A, B)` pairs at the ends of each sector along the maps that
    /// are quasi-isomorphisms for `|s| ≥ g`, after checking those maps.
    ///
    /// The result keeps sector homology (rechecked). `A` vertices with
    /// `|s| ≥ g` survive only where their partner was consumed by a neighbour.
    pub fn truncate(&self, flavor: Flavor) -> Result<MappingCone> {
        for &a in self.vertices.iter().filter(|v| v.segment == Segment::A) {
            if let Some(b) = self.outer_edge(a).filter(|&b| self.contains(b)) {
                if !self.pair_is_acyclic(a, b, flavor) {
                    return Err(FloerError::NotTruncatable(format!(
                        "{} -> {} is not a quasi-isomorphism",
                        a.label(),
                        b.label()
                    )));
                }
            }
        }
        let mut out = self.clone();
        loop {
            let removable = out.vertices.iter().filter(|v| v.segment == Segment::A).find_map(|&a| {
                let b = out.outer_edge(a).filter(|&b| out.contains(b))?;
                (out.targets(a).len() == 1 || out.sources(b) == [a]).then_some((a, b))
            });
            let Some((a, b)) = removable else { break };
            out.vertices.remove(&a);
            out.vertices.remove(&b);
        }
        for i in self.sectors() {
            if self.sector_homology(i, flavor) != out.sector_homology(i, flavor) {
                return Err(FloerError::NotTruncatable(format!("sector {i} homology changed")));
            }
        }
        Ok(out)
    }
}

/// The `I = 0` part of a cone: the U⁰ entries of the assembled complex.
#[derive(Clone, Debug)]
pub struct HatCone {
    pub cone: MappingCone,
}

impl HatCone {
    pub fn assemble(&self, sector: Option<i64>) -> AssembledCone {
        let mut a = self.cone.assemble(sector);
        a.complex = mod_u(&a.complex);
        a
    }

    pub fn sector_homology(&self, sector: i64) -> GradedRanks {
        self.cone.sector_homology(sector, Flavor::Hat)
    }

    pub fn total_rank(&self) -> usize {
        self.cone.sectors().iter().map(|&i| self.sector_homology(i).total()).sum()
    }

    /// The map on homology induced by including `(t, B̂)` into its sector.
    pub fn include_b(&self, t: i64) -> Result<InducedMap> {
        let v = ConeVertex::b(t);
        if !self.cone.contains(v) {
            return Err(FloerError::NoSuchVertex { t });
        }
        let sector = self.assemble(Some(self.cone.sector_of(t)));
        let own = sector.cells_of(v);
        let mut local = FilteredComplex::new();
        for &k in &own {
            local.add_generator(sector.complex.generator(k).clone()).expect("unique");
        }
        for (x, &k) in own.iter().enumerate() {
            for (y, &l) in own.iter().enumerate() {
                if let Some(p) = sector.complex.entry(k, l) {
                    local.toggle_entry(x, y, p).expect("fresh");
                }
            }
        }
        Ok(induced_map(&local, &sector.complex, |c: &Chain| c.map_generators(|x| own[x])))
    }
}
