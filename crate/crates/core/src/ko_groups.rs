//! ko and KO groups read off a collapsed E2 page.
//!
//! An `a0`-tower is a copy of the 2-local integers; a class off every tower
//! has order two. No extensions cross summand copies, so each group is the
//! degreewise sum of shifted `ko_*S0` / `ko_*M` patterns. Away from 2 there is
//! no torsion, so the free ranks and `Z/2` ranks describe the integral group.

use serde::Serialize;
use thiserror::Error;

use crate::a1_decomp::{summand_name, A1Decomposition, SummandKind};
use crate::ext_charts::BigradedChart;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KoError {
    #[error("collapse is not established in real dimension {dimension} (needs a manifold or dimension below 12)")]
    CollapseNotEstablished { dimension: usize },
    #[error("degree {degree} has torsion other than Z/2, which the duality formula does not cover")]
    UnsupportedTorsion { degree: i64 },
    #[error("KO-homology in degree {0} is needed but was not computed")]
    MissingDegree(i64),
}

/// `(free rank, Z/2 rank)` of `ko_d S0`.
pub fn ko_of_s0(d: i64) -> (usize, usize) {
    if d < 0 {
        (0, 0)
    } else {
        s0_residue(d)
    }
}

/// `(free rank, Z/2 rank)` of `ko_d M`.
pub fn ko_of_m(d: i64) -> (usize, usize) {
    if d >= 0 && d % 2 == 0 {
        (1, 0)
    } else {
        (0, 0)
    }
}

/// `KO_d S0`, any integer `d`.
pub fn periodic_of_s0(d: i64) -> (usize, usize) {
    s0_residue(d)
}

/// `KO_d M`, any integer `d`.
pub fn periodic_of_m(d: i64) -> (usize, usize) {
    if d.rem_euclid(2) == 0 {
        (1, 0)
    } else {
        (0, 0)
    }
}

fn s0_residue(d: i64) -> (usize, usize) {
    match d.rem_euclid(8) {
        0 | 4 => (1, 0),
        1 | 2 => (0, 1),
        _ => (0, 0),
    }
}

/// Collapse holds for manifolds, and for singular input below dimension 12.
pub fn collapse_holds(manifold: bool, real_dimension: usize) -> bool {
    manifold || real_dimension < 12
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GroupKind {
    #[serde(rename = "ko_*")]
    Connective,
    #[serde(rename = "KO_*")]
    PeriodicHomology,
    #[serde(rename = "KO^*")]
    PeriodicCohomology,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupEntry {
    pub degree: i64,
    pub free: usize,
    pub two: usize,
    /// Orders of further cyclic summands; always empty on pipeline output.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub other_torsion: Vec<u64>,
    pub contributions: Vec<String>,
}

impl GroupEntry {
    pub fn group_string(&self) -> String {
        let mut parts = Vec::new();
        match self.free {
            0 => {}
            1 => parts.push("Z".to_string()),
            k => parts.push(format!("Z^{k}")),
        }
        match self.two {
            0 => {}
            1 => parts.push("Z/2".to_string()),
            k => parts.push(format!("(Z/2)^{k}")),
        }
        for q in &self.other_torsion {
            parts.push(format!("Z/{q}"));
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" ⊕ ")
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GradedAbelianGroup {
    pub kind: GroupKind,
    pub low: i64,
    pub high: i64,
    pub entries: Vec<GroupEntry>,
}

impl GradedAbelianGroup {
    pub fn get(&self, degree: i64) -> Option<&GroupEntry> {
        if degree < self.low || degree > self.high {
            return None;
        }
        self.entries.get((degree - self.low) as usize)
    }

    pub fn ranks(&self, degree: i64) -> Option<(usize, usize)> {
        self.get(degree).map(|e| (e.free, e.two))
    }
}

fn pattern_sum(
    dec: &A1Decomposition,
    kind: GroupKind,
    low: i64,
    high: i64,
    s0: fn(i64) -> (usize, usize),
    m: fn(i64) -> (usize, usize),
) -> GradedAbelianGroup {
    let entries = (low..=high)
        .map(|d| {
            let mut e = GroupEntry {
                degree: d,
                free: 0,
                two: 0,
                other_torsion: Vec::new(),
                contributions: Vec::new(),
            };
            for summand in dec.summands() {
                let pattern = match summand.kind {
                    SummandKind::S0 => s0,
                    SummandKind::M => m,
                };
                let (f, t) = pattern(d - summand.shift as i64);
                if f + t == 0 {
                    continue;
                }
                e.free += f * summand.multiplicity;
                e.two += t * summand.multiplicity;
                let piece = GroupEntry {
                    free: f * summand.multiplicity,
                    two: t * summand.multiplicity,
                    ..e.clone()
                };
                e.contributions.push(format!(
                    "{}: {}",
                    summand_name(summand.kind, summand.shift),
                    piece.group_string()
                ));
            }
            e
        })
        .collect();
    GradedAbelianGroup { kind, low, high, entries }
}

/// `ko_d` for `0 <= d <= max_degree`.
pub fn ko_homology(
    dec: &A1Decomposition,
    max_degree: i64,
    collapsed: bool,
) -> Result<GradedAbelianGroup, KoError> {
    if !collapsed {
        return Err(KoError::CollapseNotEstablished {
            dimension: 2 * dec.m_mult.len().saturating_sub(1),
        });
    }
    Ok(e2_bound(dec, max_degree))
}

/// Same sums without assuming collapse: what the E2 page would give, an
/// upper bound on the true groups.
pub fn e2_bound(dec: &A1Decomposition, max_degree: i64) -> GradedAbelianGroup {
    pattern_sum(dec, GroupKind::Connective, 0, max_degree, ko_of_s0, ko_of_m)
}

/// Decomposition with the unit summand removed, for reduced groups.
pub fn reduced(dec: &A1Decomposition) -> A1Decomposition {
    let mut out = A1Decomposition::from_multiplicities(dec.m_mult.clone(), dec.n_mult.clone());
    if let Some(first) = out.m_mult.first_mut() {
        *first = first.saturating_sub(1);
    }
    out
}

/// `KO_d` for `low <= d <= high`, after inverting the Bott class.
pub fn periodic_homology(
    dec: &A1Decomposition,
    low: i64,
    high: i64,
    collapsed: bool,
) -> Result<GradedAbelianGroup, KoError> {
    if !collapsed {
        return Err(KoError::CollapseNotEstablished {
            dimension: 2 * dec.m_mult.len().saturating_sub(1),
        });
    }
    Ok(pattern_sum(dec, GroupKind::PeriodicHomology, low, high, periodic_of_s0, periodic_of_m))
}

/// `KO^m = Z^{α_{m-4}} ⊕ (Z/2)^{β_{m-5}}` from the homology table.
pub fn periodic_cohomology(
    homology: &GradedAbelianGroup,
    low: i64,
    high: i64,
) -> Result<GradedAbelianGroup, KoError> {
    let lookup = |d: i64| -> Result<&GroupEntry, KoError> {
        let e = homology.get(d).ok_or(KoError::MissingDegree(d))?;
        if !e.other_torsion.is_empty() {
            return Err(KoError::UnsupportedTorsion { degree: d });
        }
        Ok(e)
    };
    let mut entries = Vec::new();
    for m in low..=high {
        let free_src = lookup(m - 4)?;
        let tors_src = lookup(m - 5)?;
        let mut contributions = Vec::new();
        if free_src.free > 0 {
            contributions.push(format!("free part of KO_{}", m - 4));
        }
        if tors_src.two > 0 {
            contributions.push(format!("Z/2 part of KO_{}", m - 5));
        }
        entries.push(GroupEntry {
            degree: m,
            free: free_src.free,
            two: tors_src.two,
            other_torsion: Vec::new(),
            contributions,
        });
    }
    Ok(GradedAbelianGroup {
        kind: GroupKind::PeriodicCohomology,
        low,
        high,
        entries,
    })
}

/// Reads `ko_d` straight from an E2 chart: towers give `Z`, classes off
/// towers give `Z/2`. The chart must reach high enough in filtration.
pub fn read_chart(chart: &BigradedChart, max_degree: i64) -> GradedAbelianGroup {
    let entries = (0..=max_degree)
        .map(|d| {
            let (free, two) = chart.stem_profile(d);
            GroupEntry {
                degree: d,
                free,
                two,
                other_torsion: Vec::new(),
                contributions: Vec::new(),
            }
        })
        .collect();
    GradedAbelianGroup {
        kind: GroupKind::Connective,
        low: 0,
        high: max_degree,
        entries,
    }
}

/// Filtration bound that shows every class of stems up to `max_stem`.
pub fn filtration_for_reading(max_stem: i64) -> i64 {
    max_stem / 2 + 3
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ext_charts::{assemble_e2, PageStatus};

    fn cube() -> A1Decomposition {
        A1Decomposition::from_multiplicities(vec![1, 1, 1, 1], vec![0, 2, 0, 0])
    }

    fn cp2() -> A1Decomposition {
        A1Decomposition::from_multiplicities(vec![1, 0, 0], vec![0, 1, 0])
    }

    #[test]
    fn sphere_pattern() {
        assert_eq!(ko_of_s0(0), (1, 0));
        assert_eq!(ko_of_s0(1), (0, 1));
        assert_eq!(ko_of_s0(2), (0, 1));
        assert_eq!(ko_of_s0(3), (0, 0));
        assert_eq!(ko_of_s0(4), (1, 0));
        assert_eq!(ko_of_s0(9), (0, 1));
        assert_eq!(ko_of_s0(-4), (0, 0));
        assert_eq!(periodic_of_s0(-4), (1, 0));
        assert_eq!(periodic_of_s0(-6), (0, 1));
        assert_eq!(periodic_of_s0(-7), (0, 1));
    }

    #[test]
    fn moore_pattern() {
        assert_eq!(ko_of_m(0), (1, 0));
        assert_eq!(ko_of_m(1), (0, 0));
        assert_eq!(ko_of_m(2), (1, 0));
        assert_eq!(ko_of_m(6), (1, 0));
        assert_eq!(ko_of_m(-2), (0, 0));
        for d in (-9..9).step_by(2) {
            assert_eq!(periodic_of_m(d), (0, 0));
        }
    }

    #[test]
    fn cube_ko_table() {
        let ko = ko_homology(&cube(), 6, true).unwrap();
        let got: Vec<_> = (0..=6).map(|d| ko.ranks(d).unwrap()).collect();
        assert_eq!(got, vec![(1, 0), (0, 1), (3, 1), (0, 1), (4, 1), (0, 1), (4, 1)]);
        // Rationally ko_d is the sum of h_i over d - 2i = 0 mod 4.
        let h = [1, 3, 3, 1];
        for d in 0..=6 {
            let rational: usize = (0..4).filter(|i| d >= 2 * i && (d - 2 * i) % 4 == 0).map(|i| h[i as usize]).sum();
            assert_eq!(ko.ranks(d).unwrap().0, rational, "degree {d}");
        }
    }

    #[test]
    fn cp2_reduced() {
        let ko = ko_homology(&reduced(&cp2()), 10, true).unwrap();
        for d in 0..=10 {
            let expected = if d >= 2 && d % 2 == 0 { (1, 0) } else { (0, 0) };
            assert_eq!(ko.ranks(d).unwrap(), expected, "degree {d}");
        }
    }

    #[test]
    fn point_is_coefficients() {
        let pt = A1Decomposition::from_multiplicities(vec![1], vec![]);
        let ko = ko_homology(&pt, 16, true).unwrap();
        for d in 0..=16 {
            assert_eq!(ko.ranks(d).unwrap(), ko_of_s0(d));
        }
        let kh = periodic_homology(&pt, -20, 20, true).unwrap();
        let kc = periodic_cohomology(&kh, -10, 10).unwrap();
        assert_eq!(kc.ranks(0), Some((1, 0)));
        assert_eq!(kc.ranks(2), Some((0, 0)));
        assert_eq!(kc.ranks(-1), Some((0, 1)));
    }

    #[test]
    fn periodicity() {
        let kh = periodic_homology(&cube(), -24, 24, true).unwrap();
        for d in -24..=16 {
            assert_eq!(kh.ranks(d), kh.ranks(d + 8));
        }
        let kc = periodic_cohomology(&kh, -16, 16).unwrap();
        for m in -16..=8 {
            assert_eq!(kc.ranks(m), kc.ranks(m + 8));
        }
    }

    #[test]
    fn cohomology_shift_and_errors() {
        let kh = periodic_homology(&cube(), -10, 10, true).unwrap();
        let kc = periodic_cohomology(&kh, -5, 10).unwrap();
        for m in -5..=10 {
            let e = kc.get(m).unwrap();
            assert_eq!(e.free, kh.get(m - 4).unwrap().free);
            assert_eq!(e.two, kh.get(m - 5).unwrap().two);
        }
        assert_eq!(periodic_cohomology(&kh, -6, 0), Err(KoError::MissingDegree(-11)));
        let mut odd = kh.clone();
        odd.entries[5].other_torsion.push(3);
        assert!(matches!(
            periodic_cohomology(&odd, -1, 10),
            Err(KoError::UnsupportedTorsion { .. })
        ));
    }

    #[test]
    fn torsion_free_cohomology_is_a_shift() {
        let dec = A1Decomposition::from_multiplicities(vec![0], vec![1, 0]);
        let kh = periodic_homology(&dec, -20, 20, true).unwrap();
        assert!(kh.entries.iter().all(|e| e.two == 0));
        let kc = periodic_cohomology(&kh, -10, 10).unwrap();
        for m in -10..=10 {
            assert_eq!(kc.ranks(m), Some((kh.ranks(m - 4).unwrap().0, 0)));
        }
    }

    #[test]
    fn chart_reading_agrees_with_patterns() {
        for dec in [cube(), cp2()] {
            let max = 14;
            let chart = assemble_e2(&dec, max, filtration_for_reading(max), PageStatus::Collapsed);
            assert_eq!(read_chart(&chart, max).entries, {
                let mut g = ko_homology(&dec, max, true).unwrap();
                g.entries.iter_mut().for_each(|e| e.contributions.clear());
                g.entries
            });
        }
    }

    #[test]
    fn collapse_gate() {
        assert!(collapse_holds(true, 100));
        assert!(collapse_holds(false, 10));
        assert!(!collapse_holds(false, 12));
        let big = A1Decomposition::from_multiplicities(vec![1; 7], vec![0; 7]);
        assert_eq!(
            ko_homology(&big, 4, false),
            Err(KoError::CollapseNotEstablished { dimension: 12 })
        );
    }

    #[test]
    fn group_strings() {
        let ko = ko_homology(&cube(), 4, true).unwrap();
        assert_eq!(ko.get(2).unwrap().group_string(), "Z^3 ⊕ Z/2");
        assert_eq!(ko.get(1).unwrap().group_string(), "Z/2");
        assert_eq!(ko.get(2).unwrap().contributions, vec!["S0: Z/2", "Σ^2 S0: Z", "Σ^2 M: Z^2"]);
    }
}
