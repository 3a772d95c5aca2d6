//! The equivariant spin character of the lifted automorphism and its
//! inversion to the eigenvalue spectrum on holomorphic sections.
//!
//! Each fixed point with rotation angle `2 pi e / d` contributes
//! `(i/2) csc(pi b / d)` to the character, where `b` is the even
//! representative of `e` mod `2d` (the half-angle whose `d`-th multiple lies
//! in `2 pi Z`). Writing `c = b/2`, the contribution equals
//! `-1/(zeta^c - zeta^{-c})`, so the whole computation stays inside
//! `Q(zeta_d)`. The character determines the spectrum uniquely because the
//! differences `zeta^j - zeta^{-j}` are linearly independent over `Q` and no
//! conjugate pair of eigenvalues ever occurs.

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exactnum::{is_odd_prime, CyclotomicNumber, Rational};
use crate::linalg::{Mat, Solve};
use crate::surface::RamificationData;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectrumError {
    #[error("character is not anti-symmetric under conjugation")]
    NotAntiSymmetric,
    #[error("eigenvalue multiplicity at index {index} is {value}, not an integer")]
    NonIntegralMultiplicity { index: u32, value: String },
    #[error("character lies outside the span of zeta^j - zeta^-j")]
    Inconsistent,
    #[error("signed eigenvalue indices must be distinct (index {0} repeats)")]
    DuplicateIndex(u32),
    #[error("signed eigenvalue count must be nonzero")]
    ZeroCount,
    #[error("signed eigenvalue index {index} is not in 1..=({order}-1)/2")]
    IndexOutOfRange { order: u32, index: u32 },
    #[error("invalid spectrum entry: {0}")]
    InvalidEntry(String),
    #[error("order {0} is not an odd prime")]
    InvalidOrder(u32),
}

/// A single eigenvalue of the lifted action, encoded by a basis index and a
/// signed multiplicity: `n > 0` means `zeta^j` with multiplicity `n`,
/// `n < 0` means `zeta^{-j}` with multiplicity `-n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SignedEigen {
    pub index: u32,
    pub count: i64,
}

/// One spectrum entry: the eigenvalue `e^{i pi r}` with its multiplicity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumEntry {
    pub r: Rational,
    pub multiplicity: u64,
}

/// Conjugate-free eigenvalue list of the lifted action on holomorphic
/// sections, sorted strictly increasing in `|r|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spectrum {
    order: u32,
    entries: Vec<SpectrumEntry>,
}

impl Spectrum {
    /// Validated spectrum; entries are sorted by `|r|` and must have
    /// pairwise distinct `|r|` (conjugate-freeness) with `0 < |r| < 1`.
    ///
    /// `order` is bookkeeping only: the order of the automorphism the
    /// spectrum came from (2 for the hyperelliptic involution).
    pub fn new(order: u32, mut entries: Vec<SpectrumEntry>) -> Result<Self, SpectrumError> {
        for e in &entries {
            if e.multiplicity == 0 {
                return Err(SpectrumError::InvalidEntry(
                    "multiplicity must be positive".into(),
                ));
            }
            if e.r.is_zero() || e.r.abs() >= Rational::one() {
                return Err(SpectrumError::InvalidEntry(format!(
                    "r = {} is not in (-1, 0) u (0, 1)",
                    e.r
                )));
            }
        }
        entries.sort_by(|a, b| a.r.abs().cmp(&b.r.abs()));
        for pair in entries.windows(2) {
            if pair[0].r.abs() == pair[1].r.abs() {
                return Err(SpectrumError::InvalidEntry(format!(
                    "|r| = {} repeats: conjugate pair or duplicate entry",
                    pair[0].r.abs()
                )));
            }
        }
        Ok(Spectrum { order, entries })
    }

    pub fn empty(order: u32) -> Self {
        Spectrum {
            order,
            entries: Vec::new(),
        }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn entries(&self) -> &[SpectrumEntry] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    /// Total multiplicity, i.e. the dimension of the section space.
    pub fn total_multiplicity(&self) -> u64 {
        self.entries.iter().map(|e| e.multiplicity).sum()
    }

    /// The conjugate spectrum `r -> -r` (the opposite choice of lift).
    pub fn negated(&self) -> Self {
        Spectrum {
            order: self.order,
            entries: self
                .entries
                .iter()
                .map(|e| SpectrumEntry {
                    r: -e.r.clone(),
                    multiplicity: e.multiplicity,
                })
                .collect(),
        }
    }
}

/// G-spin local term of a fixed point with rotation exponent `e` at order
/// `d`: the exact cyclotomic value of `(i/2) csc` at the distinguished
/// half-angle.
pub fn local_term(d: u32, e: u32) -> CyclotomicNumber {
    assert!(is_odd_prime(d), "order {d} is not an odd prime");
    assert!(e >= 1 && e < d, "rotation exponent {e} out of range");
    // Half-angle pi*b/d with b even, so that d*(pi*b/d) lies in 2*pi*Z.
    let b = if e % 2 == 0 { e } else { e + d };
    let c = (b / 2) as i64;
    let diff = &CyclotomicNumber::root_power(d, c) - &CyclotomicNumber::root_power(d, -c);
    // zeta^c - zeta^{-c} = 2i sin(2 pi c / d) is nonzero since c != 0 mod d.
    -&diff.invert().expect("nonzero difference of distinct roots")
}

/// Character of the lifted action: the sum of local terms over all fixed
/// points.
pub fn character(r: &RamificationData) -> CyclotomicNumber {
    let d = r.order();
    r.rotations()
        .iter()
        .fold(CyclotomicNumber::zero(d), |acc, &e| {
            &acc + &local_term(d, e)
        })
}

/// `sum n_j (zeta^j - zeta^{-j})` for signed eigenvalues; the inverse of
/// [`solve_spectrum`] on its image.
pub fn character_of_spectrum(d: u32, eigens: &[SignedEigen]) -> CyclotomicNumber {
    let mut acc = CyclotomicNumber::zero(d);
    for e in eigens {
        let diff = &CyclotomicNumber::root_power(d, e.index as i64)
            - &CyclotomicNumber::root_power(d, -(e.index as i64));
        acc = &acc + &diff.scaled(&Rational::from_integer(e.count.into()));
    }
    acc
}

/// Recover the unique signed eigenvalue multiplicities from a character.
///
/// The character must be purely imaginary, i.e. `conjugate(chi) = -chi`.
/// All `d - 1` power-basis rows are used, so the linear system doubles as a
/// consistency check on the reduction.
pub fn solve_spectrum(chi: &CyclotomicNumber) -> Result<Vec<SignedEigen>, SpectrumError> {
    if &chi.conjugate() != &(-chi) {
        return Err(SpectrumError::NotAntiSymmetric);
    }
    let d = chi.order();
    let half = ((d - 1) / 2) as usize;
    let n = (d - 1) as usize;
    let mut m = Mat::zeros(n, half);
    for j in 1..=half {
        let diff = &CyclotomicNumber::root_power(d, j as i64)
            - &CyclotomicNumber::root_power(d, -(j as i64));
        for i in 0..n {
            *m.at_mut(i, j - 1) = diff.coeffs()[i].clone();
        }
    }
    let solution = match m.solve(chi.coeffs()) {
        Solve::Unique(x) => x,
        Solve::Inconsistent => return Err(SpectrumError::Inconsistent),
        // The columns are linearly independent over Q, so this cannot happen.
        Solve::Underdetermined => return Err(SpectrumError::Inconsistent),
    };
    let mut eigens = Vec::new();
    for (j0, value) in solution.into_iter().enumerate() {
        if value.is_zero() {
            continue;
        }
        if !value.is_integer() {
            return Err(SpectrumError::NonIntegralMultiplicity {
                index: j0 as u32 + 1,
                value: value.to_string(),
            });
        }
        let count: i64 = value
            .to_integer()
            .try_into()
            .map_err(|_| SpectrumError::NonIntegralMultiplicity {
                index: j0 as u32 + 1,
                value: value.to_string(),
            })?;
        eigens.push(SignedEigen {
            index: j0 as u32 + 1,
            count,
        });
    }
    Ok(eigens)
}

/// Turn signed eigenvalues into the `(r, m)` spectrum: index `j` with count
/// `n` is the eigenvalue `zeta^{sgn(n) j} = e^{i pi r}` with
/// `r = sgn(n) * 2j/d` (wrapped into `(-1, 1)`) and multiplicity `|n|`.
pub fn spectrum_from_signed(d: u32, eigens: &[SignedEigen]) -> Result<Spectrum, SpectrumError> {
    if !is_odd_prime(d) {
        return Err(SpectrumError::InvalidOrder(d));
    }
    let mut seen = std::collections::BTreeSet::new();
    let mut entries = Vec::new();
    for e in eigens {
        if e.count == 0 {
            return Err(SpectrumError::ZeroCount);
        }
        if e.index == 0 || e.index > (d - 1) / 2 {
            return Err(SpectrumError::IndexOutOfRange {
                order: d,
                index: e.index,
            });
        }
        if !seen.insert(e.index) {
            return Err(SpectrumError::DuplicateIndex(e.index));
        }
        let two_j = 2 * e.index as i64;
        let r0 = if two_j < d as i64 {
            Rational::new(two_j.into(), (d as i64).into())
        } else {
            Rational::new((two_j - 2 * d as i64).into(), (d as i64).into())
        };
        let (r, m) = if e.count > 0 {
            (r0, e.count as u64)
        } else {
            (-r0, (-e.count) as u64)
        };
        entries.push(SpectrumEntry {
            r,
            multiplicity: m,
        });
    }
    Spectrum::new(d, entries)
}

/// Full ramification-to-spectrum pipeline for one automorphism.
pub fn spectrum_of_ramification(r: &RamificationData) -> Result<Spectrum, SpectrumError> {
    let chi = character(r);
    let eigens = solve_spectrum(&chi)?;
    spectrum_from_signed(r.order(), &eigens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    fn coeffs(x: &CyclotomicNumber) -> Vec<Rational> {
        x.coeffs().to_vec()
    }

    #[test]
    fn local_term_order_three() {
        // -(1 + 2 zeta)/3, the exact form of -i sqrt(3)/3
        assert_eq!(coeffs(&local_term(3, 1)), vec![rat(-1, 3), rat(-2, 3)]);
    }

    #[test]
    fn local_term_order_five_exponent_one() {
        // -(1/5)(z - z^4) - (2/5)(z^2 - z^3)
        let expected = &(&CyclotomicNumber::root_power(5, 1)
            - &CyclotomicNumber::root_power(5, 4))
            .scaled(&rat(-1, 5))
            + &(&CyclotomicNumber::root_power(5, 2) - &CyclotomicNumber::root_power(5, 3))
                .scaled(&rat(-2, 5));
        let got = local_term(5, 1);
        assert_eq!(got, expected);
        assert_eq!(
            coeffs(&got),
            vec![rat(-1, 5), rat(-2, 5), rat(-3, 5), rat(1, 5)]
        );
    }

    #[test]
    fn local_term_opposite_rotation_is_negated_conjugate() {
        for (d, e) in [(3u32, 1u32), (5, 1), (5, 2), (7, 3), (11, 4)] {
            let a = local_term(d, e);
            let b = local_term(d, d - e);
            assert_eq!(b, -&a.conjugate());
        }
        assert_eq!(coeffs(&local_term(3, 2)), vec![rat(1, 3), rat(2, 3)]);
    }

    #[test]
    fn character_is_additive_over_fixed_points() {
        let r = RamificationData::new(3, vec![1; 6]).unwrap();
        assert_eq!(
            coeffs(&character(&r)),
            vec![rat(-2, 1), rat(-4, 1)],
            "six equal local terms"
        );

        let r = RamificationData::new(5, vec![4, 4, 4, 2]).unwrap();
        let expected = &local_term(5, 4).scaled(&rat(3, 1)) + &local_term(5, 2);
        assert_eq!(character(&r), expected);
    }

    #[test]
    fn opposite_rotations_cancel() {
        let r = RamificationData::new(3, vec![1, 2]).unwrap();
        assert!(character(&r).is_zero());
    }

    #[test]
    fn solve_simple_order_three_character() {
        // -2 (zeta - zeta^2)
        let chi = (&CyclotomicNumber::root_power(3, 1) - &CyclotomicNumber::root_power(3, -1))
            .scaled(&rat(-2, 1));
        assert_eq!(
            solve_spectrum(&chi).unwrap(),
            vec![SignedEigen { index: 1, count: -2 }]
        );
    }

    #[test]
    fn solve_zero_character() {
        assert_eq!(solve_spectrum(&CyclotomicNumber::zero(5)).unwrap(), vec![]);
    }

    #[test]
    fn solve_rejects_conjugation_even_input() {
        let chi = &CyclotomicNumber::root_power(5, 1) + &CyclotomicNumber::root_power(5, -1);
        assert_eq!(solve_spectrum(&chi), Err(SpectrumError::NotAntiSymmetric));
    }

    #[test]
    fn solve_rejects_non_integral_multiplicity() {
        let chi = (&CyclotomicNumber::root_power(3, 1) - &CyclotomicNumber::root_power(3, -1))
            .scaled(&rat(1, 3));
        assert!(matches!(
            solve_spectrum(&chi),
            Err(SpectrumError::NonIntegralMultiplicity { index: 1, .. })
        ));
    }

    #[test]
    fn signed_to_spectrum_examples() {
        let s = spectrum_from_signed(3, &[SignedEigen { index: 1, count: -2 }]).unwrap();
        assert_eq!(s.entries().len(), 1);
        assert_eq!(s.entries()[0].r, rat(-2, 3));
        assert_eq!(s.entries()[0].multiplicity, 2);

        let s = spectrum_from_signed(
            5,
            &[
                SignedEigen { index: 1, count: 3 },
                SignedEigen { index: 2, count: 4 },
            ],
        )
        .unwrap();
        assert_eq!(
            s.entries()
                .iter()
                .map(|e| (e.r.clone(), e.multiplicity))
                .collect::<Vec<_>>(),
            vec![(rat(2, 5), 3), (rat(4, 5), 4)]
        );

        let s = spectrum_from_signed(5, &[SignedEigen { index: 2, count: -1 }]).unwrap();
        assert_eq!(s.entries()[0].r, rat(-4, 5));
        assert_eq!(s.entries()[0].multiplicity, 1);
    }

    #[test]
    fn character_of_spectrum_examples() {
        let chi = character_of_spectrum(3, &[SignedEigen { index: 1, count: -2 }]);
        let expected = (&CyclotomicNumber::root_power(3, 1)
            - &CyclotomicNumber::root_power(3, -1))
            .scaled(&rat(-2, 1));
        assert_eq!(chi, expected);
        assert!(character_of_spectrum(7, &[]).is_zero());
    }

    #[test]
    fn characters_are_anti_symmetric() {
        for (d, rot) in [
            (3u32, vec![1u32, 1, 2, 1]),
            (5, vec![4, 4, 4, 2]),
            (7, vec![1, 2, 3, 4, 5, 6, 1]),
        ] {
            let chi = character(&RamificationData::new(d, rot).unwrap());
            assert_eq!(chi.conjugate(), -&chi);
        }
    }

    #[test]
    fn order_three_proposition_divisible_case() {
        // n_+ exponent-1 points and n_- exponent-2 points
        for (np, nm) in [(6, 0), (4, 1), (5, 2), (3, 3)] {
            let mut rot = vec![1u32; np];
            rot.extend(vec![2u32; nm]);
            let chi = character(&RamificationData::new(3, rot).unwrap());
            let eigens = solve_spectrum(&chi);
            if (np as i64 - nm as i64) % 3 == 0 {
                let n = (np as i64 - nm as i64).abs() / 3;
                let eigens = eigens.unwrap();
                if n == 0 {
                    assert!(eigens.is_empty());
                } else {
                    assert_eq!(eigens.len(), 1);
                    assert_eq!(eigens[0].count.abs(), n);
                }
            } else {
                assert!(matches!(
                    eigens,
                    Err(SpectrumError::NonIntegralMultiplicity { .. })
                ));
            }
        }
    }

    #[test]
    fn conjugating_rotations_negates_character_and_spectrum() {
        let r = RamificationData::new(5, vec![1, 2, 2, 4, 3, 3, 3]).unwrap();
        let chi = character(&r);
        let chi_conj = character(&r.conjugated());
        assert_eq!(chi_conj, -&chi);
        let s = spectrum_of_ramification(&r).unwrap();
        let s_conj = spectrum_of_ramification(&r.conjugated()).unwrap();
        assert_eq!(s_conj, s.negated());
    }

    #[test]
    fn spectrum_rejects_conjugate_pairs() {
        let err = Spectrum::new(
            5,
            vec![
                SpectrumEntry {
                    r: rat(2, 5),
                    multiplicity: 1,
                },
                SpectrumEntry {
                    r: rat(-2, 5),
                    multiplicity: 1,
                },
            ],
        );
        assert!(matches!(err, Err(SpectrumError::InvalidEntry(_))));
    }

    #[test]
    fn spectrum_rejects_out_of_range_r() {
        for r in [rat(0, 1), rat(1, 1), rat(-7, 5)] {
            assert!(Spectrum::new(
                5,
                vec![SpectrumEntry {
                    r,
                    multiplicity: 1
                }]
            )
            .is_err());
        }
    }
}
