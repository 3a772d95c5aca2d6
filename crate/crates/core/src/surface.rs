//! Cyclic curves `y^d = f(x)` for odd prime `d` and the fixed-point data of
//! their order-`d` automorphisms.
//!
//! Fixed points are anonymous: only the rotation exponents matter downstream,
//! so a curve is reduced to the multiset of exponents `e_p` with the
//! automorphism differential acting as `e^{2 pi i e_p / d}` at `p`.

use thiserror::Error;

use crate::exactnum::is_odd_prime;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error("order {0} is not an odd prime")]
    InvalidOrder(u32),
    #[error("a cyclic curve needs at least one finite root")]
    EmptyMultiplicities,
    #[error("root multiplicities must be positive")]
    ZeroMultiplicity,
    #[error("rotation exponent {exponent} is not in 1..{order}")]
    RotationOutOfRange { order: u32, exponent: u32 },
    #[error("every root is unramified: the automorphism has no fixed points")]
    NoFixedPoints,
    #[error("{found} branch points; the quotient-sphere setup needs at least 3")]
    TooFewBranchPoints { found: usize },
}

/// The curve `y^d = f(x)` described by the multiplicities of the distinct
/// roots of `f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicCurve {
    order: u32,
    finite_mults: Vec<u64>,
}

/// Rotation exponents of the automorphism at its fixed points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RamificationData {
    order: u32,
    rotations: Vec<u32>,
}

/// Ramification derived from a curve, plus bookkeeping for the report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveRamification {
    pub data: RamificationData,
    /// Indices (into `finite_mults`) of roots with multiplicity divisible by
    /// `d`; these are unramified and contribute no fixed point.
    pub dropped_roots: Vec<usize>,
    /// Rotation exponent of the automatic fixed point at infinity, when the
    /// total degree is not divisible by `d`.
    pub infinity_rotation: Option<u32>,
}

/// Genus of the covering surface, with a flag for the minimal (genus-one)
/// case, which the rest of the pipeline still accepts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Genus {
    pub value: u64,
    pub genus_one_warning: bool,
}

/// Result of the cyclic-monodromy realizability test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Realizability {
    pub realizable: bool,
    /// Sum of the branch multiplicities `e_p^{-1}` mod `d`; zero iff
    /// realizable.
    pub residue: u32,
}

/// Inverse of `a` modulo the odd prime `d`; `a` must be nonzero mod `d`.
fn mod_inverse(a: u32, d: u32) -> u32 {
    debug_assert!(a % d != 0);
    // d is prime, so a^{d-2} works; d <= desk scale keeps this trivial.
    let mut result: u64 = 1;
    let mut base = (a % d) as u64;
    let mut exp = d - 2;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * base % d as u64;
        }
        base = base * base % d as u64;
        exp >>= 1;
    }
    result as u32
}

impl CyclicCurve {
    pub fn new(order: u32, finite_mults: Vec<u64>) -> Result<Self, SurfaceError> {
        if !is_odd_prime(order) {
            return Err(SurfaceError::InvalidOrder(order));
        }
        if finite_mults.is_empty() {
            return Err(SurfaceError::EmptyMultiplicities);
        }
        if finite_mults.iter().any(|&m| m == 0) {
            return Err(SurfaceError::ZeroMultiplicity);
        }
        Ok(CyclicCurve {
            order,
            finite_mults,
        })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn finite_mults(&self) -> &[u64] {
        &self.finite_mults
    }

    /// Fixed-point rotation data of the natural `Z/d` action.
    ///
    /// A root of multiplicity `a` with `a != 0 mod d` is a fixed point where
    /// the local model is `z^d = w^a`, rotating by the inverse of `a` mod
    /// `d`. Roots with `a = 0 mod d` are unramified and dropped. When the
    /// total degree `S` is not divisible by `d` the point at infinity is
    /// ramified as well, with multiplicity residue `-S mod d`.
    pub fn ramification(&self) -> Result<CurveRamification, SurfaceError> {
        let d = self.order;
        let mut rotations = Vec::new();
        let mut dropped = Vec::new();
        for (i, &a) in self.finite_mults.iter().enumerate() {
            let residue = (a % d as u64) as u32;
            if residue == 0 {
                dropped.push(i);
            } else {
                rotations.push(mod_inverse(residue, d));
            }
        }
        let total: u64 = self.finite_mults.iter().sum();
        let total_residue = (total % d as u64) as u32;
        let infinity_rotation = if total_residue != 0 {
            let inf_residue = d - total_residue;
            let rot = mod_inverse(inf_residue, d);
            rotations.push(rot);
            Some(rot)
        } else {
            None
        };
        if rotations.is_empty() {
            return Err(SurfaceError::NoFixedPoints);
        }
        Ok(CurveRamification {
            data: RamificationData {
                order: d,
                rotations,
            },
            dropped_roots: dropped,
            infinity_rotation,
        })
    }
}

impl RamificationData {
    pub fn new(order: u32, rotations: Vec<u32>) -> Result<Self, SurfaceError> {
        if !is_odd_prime(order) {
            return Err(SurfaceError::InvalidOrder(order));
        }
        for &e in &rotations {
            if e == 0 || e >= order {
                return Err(SurfaceError::RotationOutOfRange {
                    order,
                    exponent: e,
                });
            }
        }
        Ok(RamificationData { order, rotations })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn rotations(&self) -> &[u32] {
        &self.rotations
    }

    /// Genus of the cover by Riemann-Hurwitz: a degree-`d` cyclic cover of
    /// the sphere, fully ramified over `B` points since `d` is prime, has
    /// `g = (d-1)(B-2)/2`.
    pub fn genus(&self) -> Result<Genus, SurfaceError> {
        let b = self.rotations.len();
        if b < 3 {
            return Err(SurfaceError::TooFewBranchPoints { found: b });
        }
        let value = (self.order as u64 - 1) * (b as u64 - 2) / 2;
        Ok(Genus {
            value,
            genus_one_warning: value == 1,
        })
    }

    /// Cyclic-monodromy constraint: the branch multiplicities (the inverses
    /// of the rotation exponents) must sum to zero mod `d`. Failure is a
    /// warning, not an error; the rest of the pipeline is still well defined.
    pub fn realizability(&self) -> Realizability {
        let d = self.order;
        let residue = self
            .rotations
            .iter()
            .map(|&e| mod_inverse(e, d))
            .fold(0u32, |acc, m| (acc + m) % d);
        Realizability {
            realizable: residue == 0,
            residue,
        }
    }

    /// Same fixed points for the inverse automorphism: every exponent `e`
    /// becomes `d - e`.
    pub fn conjugated(&self) -> Self {
        RamificationData {
            order: self.order,
            rotations: self.rotations.iter().map(|&e| self.order - e).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve(d: u32, mults: &[u64]) -> CyclicCurve {
        CyclicCurve::new(d, mults.to_vec()).unwrap()
    }

    fn ram(d: u32, rot: &[u32]) -> RamificationData {
        RamificationData::new(d, rot.to_vec()).unwrap()
    }

    #[test]
    fn five_simple_roots_order_three() {
        let r = curve(3, &[1, 1, 1, 1, 1]).ramification().unwrap();
        assert_eq!(r.data.rotations(), &[1, 1, 1, 1, 1, 1]);
        assert_eq!(r.infinity_rotation, Some(1));
        assert!(r.dropped_roots.is_empty());
    }

    #[test]
    fn order_five_with_double_root() {
        let r = curve(5, &[1, 2]).ramification().unwrap();
        // inverse of 2 mod 5 is 3; infinity residue 5 - 3 = 2, inverse 3
        assert_eq!(r.data.rotations(), &[1, 3, 3]);
        assert_eq!(r.infinity_rotation, Some(3));
    }

    #[test]
    fn multiplicity_divisible_by_order_is_dropped() {
        let r = curve(3, &[3, 1, 1, 1]).ramification().unwrap();
        assert_eq!(r.data.rotations(), &[1, 1, 1]);
        assert_eq!(r.dropped_roots, vec![0]);
        assert_eq!(r.infinity_rotation, None);
    }

    #[test]
    fn no_fixed_points_is_an_error() {
        assert_eq!(
            curve(3, &[3, 3]).ramification(),
            Err(SurfaceError::NoFixedPoints)
        );
    }

    #[test]
    fn genus_order_three_six_points() {
        assert_eq!(
            ram(3, &[1, 1, 1, 1, 1, 1]).genus().unwrap(),
            Genus {
                value: 4,
                genus_one_warning: false
            }
        );
    }

    #[test]
    fn genus_order_five_three_points() {
        assert_eq!(ram(5, &[1, 3, 3]).genus().unwrap().value, 2);
    }

    #[test]
    fn genus_one_carries_warning() {
        let g = ram(3, &[1, 1, 1]).genus().unwrap();
        assert_eq!(g.value, 1);
        assert!(g.genus_one_warning);
    }

    #[test]
    fn genus_needs_three_branch_points() {
        assert_eq!(
            ram(3, &[1, 2]).genus(),
            Err(SurfaceError::TooFewBranchPoints { found: 2 })
        );
    }

    #[test]
    fn genus_is_permutation_invariant() {
        let a = ram(5, &[1, 2, 3, 4]).genus().unwrap();
        let b = ram(5, &[4, 3, 2, 1]).genus().unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn realizability_examples() {
        assert!(ram(3, &[1, 1, 1, 1, 1, 1]).realizability().realizable);
        assert!(ram(5, &[4, 4, 4, 2]).realizability().realizable);
        let r = ram(3, &[1, 1]).realizability();
        assert!(!r.realizable);
        assert_eq!(r.residue, 2);
    }

    #[test]
    fn curve_ramification_is_always_realizable() {
        for (d, mults) in [
            (3u32, vec![1u64, 1, 1, 1, 1]),
            (3, vec![2, 2, 5]),
            (5, vec![1, 2]),
            (5, vec![4, 4, 4, 3]),
            (7, vec![1, 2, 3, 4, 5, 6]),
            (11, vec![10, 9, 3]),
        ] {
            let r = curve(d, &mults).ramification().unwrap();
            assert!(
                r.data.realizability().realizable,
                "curve (d={d}, mults {mults:?})"
            );
        }
    }

    #[test]
    fn appending_inverse_balanced_block_preserves_realizability() {
        // d points of exponent e add d * e^{-1} = 0 mod d to the residue.
        for d in [3u32, 5, 7] {
            for e in 1..d {
                let base = ram(d, &[1, 1]);
                let mut extended = base.rotations().to_vec();
                extended.extend(std::iter::repeat(e).take(d as usize));
                let extended = ram(d, &extended);
                assert_eq!(
                    base.realizability().residue,
                    extended.realizability().residue
                );
            }
        }
    }

    #[test]
    fn rotation_zero_rejected() {
        assert!(matches!(
            RamificationData::new(5, vec![0]),
            Err(SurfaceError::RotationOutOfRange { .. })
        ));
    }
}
