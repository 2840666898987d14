//! Ext over A(1) of `S0` and `M`, from their closed presentations, and the
//! superposed E2 page of a decomposition.
//!
//! Bidegrees are `(stem, s)` with stem `t - s`.
//!
//! ```text
//! Ext(S0) = Z2[a0, a1, w, b] / (a0 a1, a1^3, a1 w, w^2 + a0^2 b)
//!           |a0| = (0,1)  |a1| = (1,1)  |w| = (4,3)  |b| = (8,4)
//! Ext(M)  = Ext(S0){x, y, z, u} / (a1 g, a0 z - w x, a0 u - w y,
//!                                  w z - a0 b x, w u - a0 b y)
//!           |x| = (0,0)  |y| = (2,1)  |z| = (4,2)  |u| = (6,3)
//! ```
//!
//! Every relation is binomial or monomial, so a monomial reduces to a
//! monomial or to zero. Rewriting lowers the `w` exponent or kills the term,
//! hence terminates.

use std::collections::BTreeMap;
use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::a1_decomp::{summand_name, A1Decomposition, SummandKind};

pub const A0: usize = 0;
pub const A1: usize = 1;
pub const W: usize = 2;
pub const B: usize = 3;

const DEGREES: [(i64, i64); 4] = [(0, 1), (1, 1), (4, 3), (8, 4)];

/// Module generator of Ext(M).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Gen {
    X,
    Y,
    Z,
    U,
}

impl Gen {
    pub const ALL: [Gen; 4] = [Gen::X, Gen::Y, Gen::Z, Gen::U];

    pub fn bidegree(self) -> (i64, i64) {
        match self {
            Gen::X => (0, 0),
            Gen::Y => (2, 1),
            Gen::Z => (4, 2),
            Gen::U => (6, 3),
        }
    }

    fn name(self) -> &'static str {
        match self {
            Gen::X => "x",
            Gen::Y => "y",
            Gen::Z => "z",
            Gen::U => "u",
        }
    }
}

/// `a0^e0 a1^e1 w^e2 b^e3`, times a generator in the `M` case.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Term {
    pub exps: [u32; 4],
    pub gen: Option<Gen>,
}

impl Term {
    pub fn new(exps: [u32; 4], gen: Option<Gen>) -> Self {
        Self { exps, gen }
    }

    pub fn unit() -> Self {
        Self::new([0; 4], None)
    }

    pub fn bidegree(&self) -> (i64, i64) {
        let (mut stem, mut s) = self.gen.map_or((0, 0), Gen::bidegree);
        for (e, (ds, df)) in self.exps.iter().zip(DEGREES) {
            stem += *e as i64 * ds;
            s += *e as i64 * df;
        }
        (stem, s)
    }

    pub fn times(&self, var: usize, power: u32) -> Term {
        let mut t = *self;
        t.exps[var] += power;
        t
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (e, sym) in self.exps.iter().zip(["a0", "a1", "w", "b"]) {
            match e {
                0 => {}
                1 => parts.push(sym.to_string()),
                _ => parts.push(format!("{sym}^{e}")),
            }
        }
        if let Some(g) = self.gen {
            parts.push(g.name().to_string());
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("·"))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum GenPattern {
    /// Applies regardless of generator.
    Any,
    /// Only to terms carrying some generator.
    SomeGen,
    Is(Gen),
}

/// `lhs -> rhs`; `rhs = None` means the term is zero.
#[derive(Debug, Clone, Copy)]
pub struct Rule {
    lhs: [u32; 4],
    pattern: GenPattern,
    rhs: Option<([u32; 4], Option<Gen>)>,
}

impl Rule {
    fn matches(&self, t: &Term) -> bool {
        let gen_ok = match self.pattern {
            GenPattern::Any => true,
            GenPattern::SomeGen => t.gen.is_some(),
            GenPattern::Is(g) => t.gen == Some(g),
        };
        gen_ok && t.exps.iter().zip(&self.lhs).all(|(a, b)| a >= b)
    }

    fn apply(&self, t: &Term) -> Option<Term> {
        let (add, new_gen) = self.rhs?;
        let mut exps = t.exps;
        for i in 0..4 {
            exps[i] = exps[i] - self.lhs[i] + add[i];
        }
        let gen = match self.pattern {
            GenPattern::Is(_) => new_gen,
            _ => t.gen,
        };
        Some(Term { exps, gen })
    }
}

fn s0_rules() -> Vec<Rule> {
    vec![
        Rule { lhs: [0, 0, 2, 0], pattern: GenPattern::Any, rhs: Some(([2, 0, 0, 1], None)) },
        Rule { lhs: [1, 1, 0, 0], pattern: GenPattern::Any, rhs: None },
        Rule { lhs: [0, 3, 0, 0], pattern: GenPattern::Any, rhs: None },
        Rule { lhs: [0, 1, 1, 0], pattern: GenPattern::Any, rhs: None },
    ]
}

fn m_rules() -> Vec<Rule> {
    let mut rules = s0_rules();
    rules.push(Rule { lhs: [0, 1, 0, 0], pattern: GenPattern::SomeGen, rhs: None });
    let w = [0, 0, 1, 0];
    for (from, add, to) in [
        (Gen::X, [1, 0, 0, 0], Gen::Z),
        (Gen::Y, [1, 0, 0, 0], Gen::U),
        (Gen::Z, [1, 0, 0, 1], Gen::X),
        (Gen::U, [1, 0, 0, 1], Gen::Y),
    ] {
        rules.push(Rule { lhs: w, pattern: GenPattern::Is(from), rhs: Some((add, Some(to))) });
    }
    rules
}

/// Which presentation a rewriting system encodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ExtKind {
    S0,
    M,
}

#[derive(Debug, Clone)]
pub struct RewriteSystem {
    kind: ExtKind,
    rules: Vec<Rule>,
}

impl RewriteSystem {
    pub fn new(kind: ExtKind) -> Self {
        let rules = match kind {
            ExtKind::S0 => s0_rules(),
            ExtKind::M => m_rules(),
        };
        Self { kind, rules }
    }

    pub fn kind(&self) -> ExtKind {
        self.kind
    }

    /// Normal form, applying the first matching rule each step.
    pub fn reduce(&self, t: &Term) -> Option<Term> {
        let mut cur = *t;
        loop {
            match self.rules.iter().find(|r| r.matches(&cur)) {
                None => return Some(cur),
                Some(r) => cur = r.apply(&cur)?,
            }
        }
    }

    /// Normal form, applying a random matching rule each step.
    pub fn reduce_randomly<R: Rng + ?Sized>(&self, t: &Term, rng: &mut R) -> Option<Term> {
        let mut cur = *t;
        loop {
            let mut matching: Vec<&Rule> = self.rules.iter().filter(|r| r.matches(&cur)).collect();
            if matching.is_empty() {
                return Some(cur);
            }
            matching.shuffle(rng);
            cur = matching[0].apply(&cur)?;
        }
    }

    pub fn is_normal(&self, t: &Term) -> bool {
        !self.rules.iter().any(|r| r.matches(t))
    }

    /// All monomials (not just normal ones) with bidegree in range.
    pub fn monomials_in_range(&self, max_stem: i64, max_filt: i64) -> Vec<Term> {
        let gens: Vec<Option<Gen>> = match self.kind {
            ExtKind::S0 => vec![None],
            ExtKind::M => Gen::ALL.iter().copied().map(Some).collect(),
        };
        let mut out = Vec::new();
        for g in gens {
            let base = Term::new([0; 4], g);
            let (gs, gf) = base.bidegree();
            if gs > max_stem || gf > max_filt {
                continue;
            }
            for e3 in 0..=((max_filt - gf) / 4) as u32 {
                for e2 in 0..=((max_filt - gf) / 3) as u32 {
                    for e1 in 0..=(max_filt - gf) as u32 {
                        for e0 in 0..=(max_filt - gf) as u32 {
                            let t = Term::new([e0, e1, e2, e3], g);
                            let (st, f) = t.bidegree();
                            if st <= max_stem && f <= max_filt {
                                out.push(t);
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// Generates an infinite `a0`-tower: `a0^N t` survives for large `N`.
    pub fn supports_tower(&self, t: &Term) -> bool {
        self.reduce(&t.times(A0, 64)).is_some()
    }
}

/// A basis element placed in a chart.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cell {
    pub name: String,
    /// Summand copy this element came from, in an assembled page.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub summand: Option<String>,
    /// Lies on an infinite `a0`-tower.
    pub on_tower: bool,
}

/// Position of a cell: `(stem, s, index within the cell list)`.
pub type CellRef = (i64, i64, usize);

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Tower {
    pub stem: i64,
    pub base: i64,
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub summand: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Line {
    pub from: CellRef,
    pub to: CellRef,
}

/// `d_r` from `source` to `target`. Nothing here computes these; the field
/// exists so an unresolved page can say so.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Differential {
    pub r: u32,
    pub source: (i64, i64),
    pub target: (i64, i64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PageStatus {
    /// `E2 = E_infinity`.
    Collapsed,
    /// E2 only; differentials unresolved.
    E2Only,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BigradedChart {
    pub title: String,
    pub max_stem: i64,
    pub max_filt: i64,
    #[serde(serialize_with = "serialize_cells")]
    pub cells: BTreeMap<(i64, i64), Vec<Cell>>,
    pub towers: Vec<Tower>,
    pub a0_lines: Vec<Line>,
    pub a1_lines: Vec<Line>,
    pub differentials: Vec<Differential>,
    pub status: PageStatus,
}

#[derive(Serialize)]
struct CellEntry<'a> {
    stem: i64,
    s: i64,
    elements: &'a [Cell],
}

fn serialize_cells<S: serde::Serializer>(
    cells: &BTreeMap<(i64, i64), Vec<Cell>>,
    serializer: S,
) -> Result<S::Ok, S::Error> {
    serializer.collect_seq(cells.iter().map(|(&(stem, s), elements)| CellEntry { stem, s, elements }))
}

impl BigradedChart {
    pub fn empty(title: &str, max_stem: i64, max_filt: i64) -> Self {
        Self {
            title: title.to_string(),
            max_stem,
            max_filt,
            cells: BTreeMap::new(),
            towers: Vec::new(),
            a0_lines: Vec::new(),
            a1_lines: Vec::new(),
            differentials: Vec::new(),
            status: PageStatus::Collapsed,
        }
    }

    pub fn count(&self, stem: i64, s: i64) -> usize {
        self.cells.get(&(stem, s)).map_or(0, Vec::len)
    }

    pub fn stem_count(&self, stem: i64) -> usize {
        self.cells.range((stem, i64::MIN)..=(stem, i64::MAX)).map(|(_, v)| v.len()).sum()
    }

    pub fn total_cells(&self) -> usize {
        self.cells.values().map(Vec::len).sum()
    }

    /// Sorted `(stem, base)` pairs, with repetition.
    pub fn tower_positions(&self) -> Vec<(i64, i64)> {
        let mut out: Vec<_> = self.towers.iter().map(|t| (t.stem, t.base)).collect();
        out.sort();
        out
    }

    pub fn names_at(&self, stem: i64, s: i64) -> Vec<&str> {
        self.cells
            .get(&(stem, s))
            .map_or_else(Vec::new, |v| v.iter().map(|c| c.name.as_str()).collect())
    }

    /// Number of towers in a stem and of cells off towers, the two pieces
    /// read as free and order-two summands.
    pub fn stem_profile(&self, stem: i64) -> (usize, usize) {
        let towers = self.towers.iter().filter(|t| t.stem == stem).count();
        let torsion = self
            .cells
            .range((stem, i64::MIN)..=(stem, i64::MAX))
            .flat_map(|(_, v)| v)
            .filter(|c| !c.on_tower)
            .count();
        (towers, torsion)
    }

    /// Copies `other` into `self` shifted right by `shift` stems, dropping
    /// anything past `self.max_stem`.
    fn absorb_shifted(&mut self, other: &BigradedChart, shift: i64, label: &str) {
        let mut remap: BTreeMap<CellRef, CellRef> = BTreeMap::new();
        for (&(stem, s), list) in &other.cells {
            let target = stem + shift;
            if target > self.max_stem || s > self.max_filt {
                continue;
            }
            let slot = self.cells.entry((target, s)).or_default();
            for (i, c) in list.iter().enumerate() {
                remap.insert((stem, s, i), (target, s, slot.len()));
                slot.push(Cell {
                    name: c.name.clone(),
                    summand: Some(label.to_string()),
                    on_tower: c.on_tower,
                });
            }
        }
        for t in &other.towers {
            if t.stem + shift <= self.max_stem && t.base <= self.max_filt {
                self.towers.push(Tower {
                    stem: t.stem + shift,
                    base: t.base,
                    name: t.name.clone(),
                    summand: Some(label.to_string()),
                });
            }
        }
        let shift_lines = |lines: &[Line]| -> Vec<Line> {
            lines
                .iter()
                .filter_map(|l| {
                    Some(Line {
                        from: *remap.get(&l.from)?,
                        to: *remap.get(&l.to)?,
                    })
                })
                .collect()
        };
        let a0 = shift_lines(&other.a0_lines);
        let a1 = shift_lines(&other.a1_lines);
        self.a0_lines.extend(a0);
        self.a1_lines.extend(a1);
    }
}

fn chart_from(system: &RewriteSystem, title: &str, max_stem: i64, max_filt: i64) -> BigradedChart {
    let mut normal: Vec<Term> = system
        .monomials_in_range(max_stem, max_filt)
        .iter()
        .filter_map(|t| system.reduce(t))
        .collect();
    normal.sort_by_key(|t| {
        let (stem, s) = t.bidegree();
        (stem, s, *t)
    });
    normal.dedup();

    let mut chart = BigradedChart::empty(title, max_stem, max_filt);
    let mut place: BTreeMap<Term, CellRef> = BTreeMap::new();
    for t in &normal {
        let (stem, s) = t.bidegree();
        let slot = chart.cells.entry((stem, s)).or_default();
        place.insert(*t, (stem, s, slot.len()));
        let on_tower = system.supports_tower(t);
        slot.push(Cell {
            name: t.to_string(),
            summand: None,
            on_tower,
        });
        if on_tower && t.exps[A0] == 0 {
            chart.towers.push(Tower {
                stem,
                base: s,
                name: t.to_string(),
                summand: None,
            });
        }
    }
    for t in &normal {
        for (var, lines) in [(A0, &mut chart.a0_lines), (A1, &mut chart.a1_lines)] {
            if let Some(up) = system.reduce(&t.times(var, 1)) {
                if let Some(&to) = place.get(&up) {
                    lines.push(Line { from: place[t], to });
                }
            }
        }
    }
    chart
}

pub fn ext_s0(max_stem: i64, max_filt: i64) -> BigradedChart {
    chart_from(&RewriteSystem::new(ExtKind::S0), "Ext(S0)", max_stem, max_filt)
}

pub fn ext_m(max_stem: i64, max_filt: i64) -> BigradedChart {
    chart_from(&RewriteSystem::new(ExtKind::M), "Ext(M)", max_stem, max_filt)
}

/// Superposes one shifted chart per summand copy.
pub fn assemble_e2(
    dec: &A1Decomposition,
    max_stem: i64,
    max_filt: i64,
    status: PageStatus,
) -> BigradedChart {
    let mut chart = BigradedChart::empty("E2", max_stem, max_filt);
    chart.status = status;
    let s0 = ext_s0(max_stem, max_filt);
    let m = ext_m(max_stem, max_filt);
    for summand in dec.summands() {
        let base = match summand.kind {
            SummandKind::S0 => &s0,
            SummandKind::M => &m,
        };
        for copy in 1..=summand.multiplicity {
            let mut label = summand_name(summand.kind, summand.shift);
            if summand.multiplicity > 1 {
                label = format!("{label} #{copy}");
            }
            chart.absorb_shifted(base, summand.shift as i64, &label);
        }
    }
    chart
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn s0_low_stems() {
        let c = ext_s0(3, 6);
        for s in 0..=6 {
            assert_eq!(c.count(0, s), 1);
        }
        assert_eq!(c.names_at(0, 0), vec!["1"]);
        assert_eq!(c.names_at(0, 2), vec!["a0^2"]);
        assert_eq!(c.names_at(1, 1), vec!["a1"]);
        assert_eq!(c.names_at(2, 2), vec!["a1^2"]);
        assert_eq!(c.stem_count(1), 1);
        assert_eq!(c.stem_count(2), 1);
        assert_eq!(c.stem_count(3), 0);
    }

    #[test]
    fn s0_single_tower() {
        let c = ext_s0(0, 3);
        assert_eq!(c.total_cells(), 4);
        assert_eq!(c.names_at(0, 3), vec!["a0^3"]);
        assert_eq!(c.tower_positions(), vec![(0, 0)]);
        assert_eq!(c.a0_lines.len(), 3);
    }

    #[test]
    fn s0_w_and_b() {
        let c = ext_s0(12, 8);
        assert_eq!(c.names_at(4, 3), vec!["w"]);
        assert_eq!(c.count(4, 2), 0);
        assert_eq!(c.names_at(8, 4), vec!["b"]);
        assert_eq!(c.names_at(9, 5), vec!["a1·b"]);
        assert_eq!(c.names_at(10, 6), vec!["a1^2·b"]);
        // w^2 = a0^2 b
        assert_eq!(c.names_at(8, 6), vec!["a0^2·b"]);
        assert_eq!(c.tower_positions(), vec![(0, 0), (4, 3), (8, 4), (12, 7)]);
    }

    #[test]
    fn m_towers() {
        let c = ext_m(12, 8);
        let bases: Vec<_> = c.towers.iter().map(|t| (t.stem, t.base, t.name.as_str())).collect();
        assert_eq!(
            bases,
            vec![(0, 0, "x"), (2, 1, "y"), (4, 2, "z"), (6, 3, "u"), (8, 4, "b·x"), (10, 5, "b·y"), (12, 6, "b·z")]
        );
        for stem in (1..12).step_by(2) {
            assert_eq!(c.stem_count(stem), 0);
        }
        assert_eq!(c.names_at(4, 3), vec!["a0·z"]);
        assert!(c.a1_lines.is_empty());
    }

    #[test]
    fn b_multiplication_is_injective() {
        let sys = RewriteSystem::new(ExtKind::S0);
        let c = ext_s0(16, 10);
        let mut seen = std::collections::BTreeSet::new();
        for t in sys.monomials_in_range(16, 10).iter().filter_map(|t| sys.reduce(t)) {
            let bt = sys.reduce(&t.times(B, 1)).expect("b never kills");
            assert_eq!(bt.bidegree(), (t.bidegree().0 + 8, t.bidegree().1 + 4));
            seen.insert((t, bt));
        }
        let images: std::collections::BTreeSet<_> = seen.iter().map(|p| p.1).collect();
        let sources: std::collections::BTreeSet<_> = seen.iter().map(|p| p.0).collect();
        assert_eq!(images.len(), sources.len());
        assert!(c.total_cells() > 0);
    }

    #[test]
    fn rewriting_is_confluent() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for kind in [ExtKind::S0, ExtKind::M] {
            let sys = RewriteSystem::new(kind);
            for t in sys.monomials_in_range(20, 10) {
                let fixed = sys.reduce(&t);
                for _ in 0..3 {
                    assert_eq!(sys.reduce_randomly(&t, &mut rng), fixed, "{t}");
                }
                if let Some(n) = fixed {
                    assert!(sys.is_normal(&n));
                    assert_eq!(n.bidegree(), t.bidegree());
                }
            }
        }
    }

    #[test]
    fn tower_cells_have_a0_lines() {
        for c in [ext_s0(16, 9), ext_m(16, 9)] {
            for (&(stem, s), list) in &c.cells {
                for (i, cell) in list.iter().enumerate() {
                    if cell.on_tower && s < c.max_filt {
                        assert!(c.a0_lines.iter().any(|l| l.from == (stem, s, i)), "{}", cell.name);
                    }
                }
            }
        }
    }

    #[test]
    fn assembled_cube_page() {
        let dec = A1Decomposition::from_multiplicities(vec![1, 1, 1, 1], vec![0, 2, 0, 0]);
        let e2 = assemble_e2(&dec, 14, 6, PageStatus::Collapsed);
        let s0 = ext_s0(14, 6);
        let m = ext_m(14, 6);
        for stem in 0..=14 {
            for s in 0..=6 {
                let mut expected = 0;
                for j in 0..4 {
                    if stem >= 2 * j {
                        expected += s0.count(stem - 2 * j, s);
                    }
                }
                if stem >= 2 {
                    expected += 2 * m.count(stem - 2, s);
                }
                assert_eq!(e2.count(stem, s), expected, "({stem},{s})");
            }
        }
        assert_eq!(e2.stem_count(1), 1);
        assert_eq!(e2.stem_count(3), 1);
        assert_eq!(e2.names_at(1, 1), vec!["a1"]);
        assert_eq!(e2.cells[&(3, 1)][0].summand.as_deref(), Some("Σ^2 S0"));
    }

    #[test]
    fn empty_decomposition() {
        let dec = A1Decomposition::from_multiplicities(vec![], vec![]);
        let e2 = assemble_e2(&dec, 10, 6, PageStatus::Collapsed);
        assert_eq!(e2.total_cells(), 0);
        assert!(e2.towers.is_empty());
    }
}
