//! The explicit Floer chain complex attached to a spectrum.
//!
//! The Morse function on the circle of reducible solutions is conjugation
//! invariant with maxima at the two real points; its minima sit at the
//! spectrum eigenvalues and their conjugates. Over each critical point sits a
//! truncated `U`-tower; differentials run from maxima to minima and are
//! monomial in `U`, with the `U^{m_i}` twist on one of the two edge families
//! of the `i`-th minima pair depending on the half-plane of `r_i`.
//!
//! Slots are indexed `k..0` left to right. `top_k` and `top_0` are single
//! towers over the maxima at `-1` and `+1`; every other slot is a conjugate
//! pair of two towers. Which single tower sits at which end is a convention
//! (here `top_0` is `+1`); swapping ends is the same as conjugating the
//! spectrum and changes no reported invariant.
//!
//! With an empty spectrum and a trivial local system the complex is two
//! disjoint towers with bottoms `0` and `-1`. A generic local system still
//! needs the two half-circle trajectories between those towers (one of them
//! weighted), so in that case the single untwisted edge pair is built
//! explicitly; over the trivial system its two signs cancel, which is the
//! same trivial differential.

use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exactnum::Rational;
use crate::gspin::Spectrum;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FloerError {
    #[error("truncation {given} is too small: need at least {required}")]
    TruncationTooSmall { required: u64, given: u64 },
    #[error("grading constraints do not close around the circle")]
    GradingInconsistent,
    #[error("local-system weight {0} must not be 0 or 1")]
    InvalidWeight(Rational),
    #[error("requested holonomy edge does not exist")]
    HolonomyEdgeNotFound,
}

/// Coefficient system for the complex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LocalSystem {
    Trivial,
    Generic { weight: Rational },
}

impl LocalSystem {
    /// Non-trivial local system with the given holonomy weight.
    pub fn generic(weight: Rational) -> Result<Self, FloerError> {
        if weight.is_zero() || weight.is_one() {
            return Err(FloerError::InvalidWeight(weight));
        }
        Ok(LocalSystem::Generic { weight })
    }

    pub fn is_generic(&self) -> bool {
        matches!(self, LocalSystem::Generic { .. })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Row {
    Top,
    Bottom,
}

/// One truncated tower of generators over a critical point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Tower {
    pub row: Row,
    pub slot: u32,
    pub member: u8,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Side {
    R,
    L,
}

/// One unbundled edge of a differential family: a map of truncated towers
/// given by `sign * U^{u_power}` (times the holonomy weight when flagged).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub family: u32,
    pub side: Side,
    pub from: usize,
    pub to: usize,
    pub u_power: u64,
    pub sign: i8,
    pub holonomy: bool,
}

/// Which single edge carries the holonomy weight of a generic local system.
/// Gauge equivalence makes the choice irrelevant to homology; the default is
/// the member-1 edge of the right family at the `-1` fold.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HolonomyEdge {
    pub family: u32,
    pub side: Side,
    pub member: u8,
}

/// The chain complex before gradings are assigned.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FloerComplex {
    spectrum: Spectrum,
    truncation: u32,
    local_system: LocalSystem,
    towers: Vec<Tower>,
    edges: Vec<Edge>,
}

/// The chain complex with verified bottom gradings per tower.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedFloerComplex {
    complex: FloerComplex,
    bottoms: Vec<i64>,
}

/// Default truncation: every finite cyclic piece has length at most the
/// total multiplicity, so two extra levels leave the ceiling unambiguous.
pub fn default_truncation(s: &Spectrum) -> u32 {
    (s.total_multiplicity() + 2) as u32
}

fn default_holonomy_edge(k: usize) -> HolonomyEdge {
    HolonomyEdge {
        family: k as u32,
        side: Side::R,
        member: 1,
    }
}

/// Build the complex with the default holonomy-edge choice.
pub fn build_complex(
    spectrum: &Spectrum,
    truncation: u32,
    local_system: LocalSystem,
) -> Result<FloerComplex, FloerError> {
    let choice = default_holonomy_edge(spectrum.len());
    build_complex_with(spectrum, truncation, local_system, choice)
}

/// Build the complex, placing the holonomy weight on a chosen edge.
pub fn build_complex_with(
    spectrum: &Spectrum,
    truncation: u32,
    local_system: LocalSystem,
    holonomy_edge: HolonomyEdge,
) -> Result<FloerComplex, FloerError> {
    let required = spectrum.total_multiplicity() + 1;
    if (truncation as u64) < required {
        return Err(FloerError::TruncationTooSmall {
            required,
            given: truncation as u64,
        });
    }
    let k = spectrum.len();
    let mut towers = Vec::new();
    let mut edges = Vec::new();

    if k == 0 {
        towers.push(Tower {
            row: Row::Top,
            slot: 0,
            member: 0,
        });
        towers.push(Tower {
            row: Row::Bottom,
            slot: 0,
            member: 0,
        });
        if local_system.is_generic() {
            // The two half-circle trajectories between the only two critical
            // points; no spectral flow, opposite signs.
            for side in [Side::R, Side::L] {
                edges.push(Edge {
                    family: 0,
                    side,
                    from: 0,
                    to: 1,
                    u_power: 0,
                    sign: if side == Side::R { 1 } else { -1 },
                    holonomy: false,
                });
            }
        }
    } else {
        // Tower indices per slot.
        let mut top_slots: Vec<Vec<usize>> = vec![Vec::new(); k + 1];
        let mut bottom_slots: Vec<Vec<usize>> = vec![Vec::new(); k + 1];
        for slot in (0..=k).rev() {
            let members = if slot == 0 || slot == k { 1 } else { 2 };
            for member in 0..members {
                top_slots[slot].push(towers.len());
                towers.push(Tower {
                    row: Row::Top,
                    slot: slot as u32,
                    member,
                });
            }
        }
        for slot in (1..=k).rev() {
            for member in 0..2 {
                bottom_slots[slot].push(towers.len());
                towers.push(Tower {
                    row: Row::Bottom,
                    slot: slot as u32,
                    member,
                });
            }
        }
        for i in 1..=k {
            let entry = &spectrum.entries()[i - 1];
            let positive = entry.r > Rational::zero();
            let (u_r, u_l) = if positive {
                (entry.multiplicity, 0)
            } else {
                (0, entry.multiplicity)
            };
            // Right family: top_i into bottom_i.
            push_family(
                &mut edges,
                i as u32,
                Side::R,
                &top_slots[i],
                &bottom_slots[i],
                u_r,
                1,
            );
            // Left family: top_{i-1} into bottom_i.
            push_family(
                &mut edges,
                i as u32,
                Side::L,
                &top_slots[i - 1],
                &bottom_slots[i],
                u_l,
                -1,
            );
        }
    }

    if local_system.is_generic() {
        let found = edges.iter_mut().find(|e| {
            e.family == holonomy_edge.family
                && e.side == holonomy_edge.side
                && towers[e.to].member == holonomy_edge.member
        });
        match found {
            Some(edge) => edge.holonomy = true,
            None => return Err(FloerError::HolonomyEdgeNotFound),
        }
    }

    Ok(FloerComplex {
        spectrum: spectrum.clone(),
        truncation,
        local_system,
        towers,
        edges,
    })
}

fn push_family(
    edges: &mut Vec<Edge>,
    family: u32,
    side: Side,
    from_slot: &[usize],
    to_slot: &[usize],
    u_power: u64,
    sign: i8,
) {
    if from_slot.len() == 1 {
        // Fold edge: diagonal inclusion into both members.
        for &to in to_slot {
            edges.push(Edge {
                family,
                side,
                from: from_slot[0],
                to,
                u_power,
                sign,
                holonomy: false,
            });
        }
    } else {
        // Interior edge: member to member.
        for (&from, &to) in from_slot.iter().zip(to_slot) {
            edges.push(Edge {
                family,
                side,
                from,
                to,
                u_power,
                sign,
                holonomy: false,
            });
        }
    }
}

impl FloerComplex {
    pub fn spectrum(&self) -> &Spectrum {
        &self.spectrum
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    pub fn local_system(&self) -> &LocalSystem {
        &self.local_system
    }

    pub fn towers(&self) -> &[Tower] {
        &self.towers
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Propagate bottom gradings from `top_0 := 0` and verify the constraint
    /// system closes around the circle.
    ///
    /// Every unbundled edge is a degree `-1` map of towers on which `U` acts
    /// with degree `-2`, so `b_top = b_bottom - 2 u + 1` along each edge.
    pub fn assign_gradings(self) -> Result<GradedFloerComplex, FloerError> {
        let k = self.spectrum.len();
        let mut bottoms = vec![0i64; self.towers.len()];
        if k == 0 {
            bottoms[0] = 0;
            bottoms[1] = -1;
        } else {
            let mut top_b = vec![0i64; k + 1];
            let mut bottom_b = vec![0i64; k + 1];
            for i in 1..=k {
                let (u_r, u_l) = self.family_powers(i as u32);
                bottom_b[i] = top_b[i - 1] + 2 * u_l as i64 - 1;
                top_b[i] = bottom_b[i] - 2 * u_r as i64 + 1;
            }
            for (idx, t) in self.towers.iter().enumerate() {
                bottoms[idx] = match t.row {
                    Row::Top => top_b[t.slot as usize],
                    Row::Bottom => bottom_b[t.slot as usize],
                };
            }
        }
        for e in &self.edges {
            if bottoms[e.from] != bottoms[e.to] - 2 * e.u_power as i64 + 1 {
                return Err(FloerError::GradingInconsistent);
            }
        }
        let graded = GradedFloerComplex {
            complex: self,
            bottoms,
        };
        if !graded.complex.edges.is_empty() && graded.loop_flow() != Some(0) {
            return Err(FloerError::GradingInconsistent);
        }
        Ok(graded)
    }

    fn family_powers(&self, family: u32) -> (u64, u64) {
        let mut u_r = 0;
        let mut u_l = 0;
        for e in &self.edges {
            if e.family == family {
                match e.side {
                    Side::R => u_r = e.u_power,
                    Side::L => u_l = e.u_power,
                }
            }
        }
        (u_r, u_l)
    }
}

impl GradedFloerComplex {
    pub fn complex(&self) -> &FloerComplex {
        &self.complex
    }

    pub fn spectrum(&self) -> &Spectrum {
        self.complex.spectrum()
    }

    pub fn truncation(&self) -> u32 {
        self.complex.truncation
    }

    pub fn local_system(&self) -> &LocalSystem {
        &self.complex.local_system
    }

    pub fn towers(&self) -> &[Tower] {
        &self.complex.towers
    }

    pub fn edges(&self) -> &[Edge] {
        &self.complex.edges
    }

    /// Bottom grading of tower `idx` (an integer in this normalization).
    pub fn bottom(&self, idx: usize) -> i64 {
        self.bottoms[idx]
    }

    pub fn bottom_grading(&self, idx: usize) -> Rational {
        Rational::from_integer(self.bottoms[idx].into())
    }

    /// Signed grading flow around the unfolded circle of critical points;
    /// zero iff the constraint loop closes. `None` if the incidence graph is
    /// not a single cycle, which would be a builder defect.
    fn loop_flow(&self) -> Option<i64> {
        let n = self.complex.towers.len();
        let edges = &self.complex.edges;
        if edges.is_empty() {
            return Some(0);
        }
        // Each tower must meet exactly two edges.
        let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (i, e) in edges.iter().enumerate() {
            incident[e.from].push(i);
            incident[e.to].push(i);
        }
        if incident.iter().any(|v| v.len() != 2) {
            return None;
        }
        let mut flow = 0i64;
        let mut visited = vec![false; edges.len()];
        let mut at = 0usize;
        for _ in 0..edges.len() {
            let &step = incident[at].iter().find(|&&i| !visited[i])?;
            visited[step] = true;
            let e = &edges[step];
            let delta = 2 * e.u_power as i64 - 1;
            // Forward along the differential raises the walk by 2u - 1.
            if e.from == at {
                flow += delta;
                at = e.to;
            } else {
                flow -= delta;
                at = e.from;
            }
        }
        (at == 0).then_some(flow)
    }

    /// Stable JSON description of slots, edges and gradings for golden
    /// tests and debugging.
    pub fn dump(&self) -> ComplexDump {
        let c = &self.complex;
        ComplexDump {
            order: c.spectrum.order(),
            spectrum: c
                .spectrum
                .entries()
                .iter()
                .map(|e| SpectrumDump {
                    r: rational_string(&e.r),
                    multiplicity: e.multiplicity,
                })
                .collect(),
            truncation: c.truncation,
            local_system: match &c.local_system {
                LocalSystem::Trivial => "trivial".to_string(),
                LocalSystem::Generic { weight } => format!("generic:{}", rational_string(weight)),
            },
            towers: c
                .towers
                .iter()
                .enumerate()
                .map(|(i, t)| TowerDump {
                    id: i,
                    row: t.row,
                    slot: t.slot,
                    member: t.member,
                    bottom: rational_string(&self.bottom_grading(i)),
                    parity: if self.bottoms[i].rem_euclid(2) == 0 {
                        "even"
                    } else {
                        "odd"
                    },
                })
                .collect(),
            edges: c
                .edges
                .iter()
                .map(|e| EdgeDump {
                    family: e.family,
                    side: e.side,
                    from: e.from,
                    to: e.to,
                    u_power: e.u_power,
                    sign: e.sign,
                    holonomy: e.holonomy,
                })
                .collect(),
        }
    }

    pub fn dump_json(&self) -> String {
        serde_json::to_string_pretty(&self.dump()).expect("dump serializes")
    }
}

fn rational_string(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

#[derive(Debug, Clone, Serialize)]
pub struct ComplexDump {
    pub order: u32,
    pub spectrum: Vec<SpectrumDump>,
    pub truncation: u32,
    pub local_system: String,
    pub towers: Vec<TowerDump>,
    pub edges: Vec<EdgeDump>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectrumDump {
    pub r: String,
    pub multiplicity: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct TowerDump {
    pub id: usize,
    pub row: Row,
    pub slot: u32,
    pub member: u8,
    pub bottom: String,
    pub parity: &'static str,
}

#[derive(Debug, Clone, Serialize)]
pub struct EdgeDump {
    pub family: u32,
    pub side: Side,
    pub from: usize,
    pub to: usize,
    pub u_power: u64,
    pub sign: i8,
    pub holonomy: bool,
}
