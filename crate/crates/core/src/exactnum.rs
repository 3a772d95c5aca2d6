//! Exact arithmetic in `Q` and in the cyclotomic fields `Q(zeta_d)` for odd
//! prime `d`.
//!
//! Elements are stored in the power basis `1, zeta, ..., zeta^{d-2}` with
//! `zeta = e^{2 pi i / d}`; the single reduction rule is
//! `zeta^{d-1} = -(1 + zeta + ... + zeta^{d-2})`. Equality is exact
//! coefficient equality and no floating-point representation exists anywhere.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use thiserror::Error;

use crate::linalg::{Mat, Solve};

/// Exact rational scalar used throughout the crate. Stored in lowest terms
/// with a positive denominator.
pub type Rational = BigRational;

/// Rational from a numerator/denominator pair.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Rational from an integer.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumError {
    #[error("cyclotomic orders differ: {left} vs {right}")]
    OrderMismatch { left: u32, right: u32 },
    #[error("division by zero in Q(zeta_{order})")]
    DivisionByZero { order: u32 },
}

/// `true` iff `d` is an odd prime (the only cyclotomic orders supported).
pub fn is_odd_prime(d: u32) -> bool {
    if d < 3 || d % 2 == 0 {
        return false;
    }
    let mut f = 3;
    while f * f <= d {
        if d % f == 0 {
            return false;
        }
        f += 2;
    }
    true
}

/// An element of `Q(zeta_d)` in the power basis, `d` an odd prime.
///
/// `coeffs` always has length exactly `d - 1`; entry `e` is the coefficient
/// of `zeta^e`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicNumber {
    order: u32,
    coeffs: Vec<Rational>,
}

impl CyclotomicNumber {
    /// Element with the given power-basis coefficients.
    ///
    /// Panics if `order` is not an odd prime or the length is wrong; those
    /// are programming errors, not data errors.
    pub fn new(order: u32, coeffs: Vec<Rational>) -> Self {
        assert!(is_odd_prime(order), "order {order} is not an odd prime");
        assert_eq!(
            coeffs.len(),
            order as usize - 1,
            "power basis of Q(zeta_{order}) has {} coefficients",
            order - 1
        );
        CyclotomicNumber { order, coeffs }
    }

    pub fn zero(order: u32) -> Self {
        assert!(is_odd_prime(order), "order {order} is not an odd prime");
        CyclotomicNumber {
            order,
            coeffs: vec![Rational::zero(); order as usize - 1],
        }
    }

    pub fn one(order: u32) -> Self {
        Self::from_rational(order, Rational::one())
    }

    pub fn from_rational(order: u32, value: Rational) -> Self {
        let mut x = Self::zero(order);
        x.coeffs[0] = value;
        x
    }

    /// `zeta^e` reduced into the power basis; `e` is taken mod `d`.
    pub fn root_power(order: u32, exponent: i64) -> Self {
        let mut x = Self::zero(order);
        let e = exponent.rem_euclid(order as i64) as usize;
        if e == order as usize - 1 {
            // zeta^{d-1} = -(1 + zeta + ... + zeta^{d-2})
            for c in &mut x.coeffs {
                *c = -Rational::one();
            }
        } else {
            x.coeffs[e] = Rational::one();
        }
        x
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn check_order(&self, other: &Self) -> Result<(), NumError> {
        if self.order == other.order {
            Ok(())
        } else {
            Err(NumError::OrderMismatch {
                left: self.order,
                right: other.order,
            })
        }
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self, NumError> {
        self.check_order(rhs)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(CyclotomicNumber {
            order: self.order,
            coeffs,
        })
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self, NumError> {
        self.check_order(rhs)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(CyclotomicNumber {
            order: self.order,
            coeffs,
        })
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self, NumError> {
        self.check_order(rhs)?;
        let d = self.order as usize;
        // Raw polynomial product has degree up to 2(d-2).
        let mut raw = vec![Rational::zero(); 2 * d - 3];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                raw[i + j] += a * b;
            }
        }
        Ok(CyclotomicNumber {
            order: self.order,
            coeffs: reduce_power_series(d, raw),
        })
    }

    /// Multiplication by an exact rational scalar.
    pub fn scaled(&self, s: &Rational) -> Self {
        CyclotomicNumber {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// Image under the field automorphism `zeta -> zeta^{-1}`.
    pub fn conjugate(&self) -> Self {
        let d = self.order as usize;
        let mut out = vec![Rational::zero(); d - 1];
        out[0] = self.coeffs[0].clone();
        for e in 1..d - 1 {
            if self.coeffs[e].is_zero() {
                continue;
            }
            let target = d - e; // zeta^{-e} = zeta^{d-e}
            if target <= d - 2 {
                out[target] += &self.coeffs[e];
            } else {
                // target == d-1: fold through the minimal polynomial.
                for c in out.iter_mut() {
                    *c -= &self.coeffs[e];
                }
            }
        }
        CyclotomicNumber {
            order: self.order,
            coeffs: out,
        }
    }

    /// Multiplicative inverse, by solving the rational linear system for
    /// multiplication by `self` in the power basis.
    pub fn invert(&self) -> Result<Self, NumError> {
        if self.is_zero() {
            return Err(NumError::DivisionByZero { order: self.order });
        }
        let d = self.order as usize;
        let n = d - 1;
        // Column j = power-basis coordinates of self * zeta^j.
        let mut m = Mat::zeros(n, n);
        for j in 0..n {
            let col = self
                .checked_mul(&Self::root_power(self.order, j as i64))
                .expect("same order");
            for i in 0..n {
                *m.at_mut(i, j) = col.coeffs[i].clone();
            }
        }
        let mut rhs = vec![Rational::zero(); n];
        rhs[0] = Rational::one();
        match m.solve(&rhs) {
            Solve::Unique(coeffs) => Ok(CyclotomicNumber {
                order: self.order,
                coeffs,
            }),
            // Multiplication by a nonzero field element is invertible.
            _ => unreachable!("multiplication matrix of a nonzero element is singular"),
        }
    }
}

/// Reduce raw polynomial coefficients (powers `0..raw.len()`) into the power
/// basis of `Q(zeta_d)` using `zeta^d = 1` and then the minimal polynomial.
fn reduce_power_series(d: usize, mut raw: Vec<Rational>) -> Vec<Rational> {
    raw.resize(raw.len().max(d), Rational::zero());
    // Fold exponents mod d.
    for i in (d..raw.len()).rev() {
        let c = std::mem::replace(&mut raw[i], Rational::zero());
        raw[i - d] += c;
    }
    raw.truncate(d);
    // zeta^{d-1} = -(1 + ... + zeta^{d-2}).
    let top = raw.pop().expect("length d");
    if !top.is_zero() {
        for c in raw.iter_mut() {
            *c -= &top;
        }
    }
    raw
}

impl Add for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn add(self, rhs: Self) -> CyclotomicNumber {
        self.checked_add(rhs).expect("cyclotomic order mismatch")
    }
}

impl Sub for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn sub(self, rhs: Self) -> CyclotomicNumber {
        self.checked_sub(rhs).expect("cyclotomic order mismatch")
    }
}

impl Mul for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn mul(self, rhs: Self) -> CyclotomicNumber {
        self.checked_mul(rhs).expect("cyclotomic order mismatch")
    }
}

impl Neg for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        CyclotomicNumber {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match e {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*z")?,
                _ => write!(f, "({c})*z^{e}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cyc(order: u32, coeffs: &[(i64, i64)]) -> CyclotomicNumber {
        CyclotomicNumber::new(order, coeffs.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    #[test]
    fn root_power_identity() {
        assert_eq!(
            CyclotomicNumber::root_power(3, 0),
            cyc(3, &[(1, 1), (0, 1)])
        );
    }

    #[test]
    fn root_power_reduces_by_minimal_polynomial() {
        // zeta^2 = -1 - zeta at d = 3
        assert_eq!(
            CyclotomicNumber::root_power(3, 2),
            cyc(3, &[(-1, 1), (-1, 1)])
        );
    }

    #[test]
    fn root_power_reduces_exponent_mod_order() {
        assert_eq!(
            CyclotomicNumber::root_power(5, 7),
            cyc(5, &[(0, 1), (0, 1), (1, 1), (0, 1)])
        );
    }

    #[test]
    fn mul_expands_and_reduces() {
        // (1 + 2 zeta)^2 = -3 at d = 3
        let x = cyc(3, &[(1, 1), (2, 1)]);
        assert_eq!(&x * &x, cyc(3, &[(-3, 1), (0, 1)]));
    }

    #[test]
    fn add_of_conjugate_pair() {
        // zeta + zeta^4 at d = 5
        let z = CyclotomicNumber::root_power(5, 1);
        let got = &z + &z.conjugate();
        assert_eq!(got, cyc(5, &[(-1, 1), (0, 1), (-1, 1), (-1, 1)]));
    }

    #[test]
    fn mul_by_one_is_identity() {
        let x = cyc(7, &[(3, 2), (0, 1), (-1, 5), (0, 1), (2, 1), (7, 3)]);
        assert_eq!(&x * &CyclotomicNumber::root_power(7, 0), x);
    }

    #[test]
    fn invert_small_element() {
        // (1 + 2 zeta)^{-1} = -(1 + 2 zeta)/3 at d = 3
        let x = cyc(3, &[(1, 1), (2, 1)]);
        assert_eq!(x.invert().unwrap(), cyc(3, &[(-1, 3), (-2, 3)]));
    }

    #[test]
    fn invert_root_power_negates_exponent() {
        for d in [3u32, 5, 7, 11] {
            for e in 1..d as i64 {
                let z = CyclotomicNumber::root_power(d, e);
                assert_eq!(z.invert().unwrap(), CyclotomicNumber::root_power(d, -e));
            }
        }
    }

    #[test]
    fn invert_rational_scalar() {
        let x = cyc(3, &[(2, 1), (0, 1)]);
        assert_eq!(x.invert().unwrap(), cyc(3, &[(1, 2), (0, 1)]));
    }

    #[test]
    fn invert_zero_fails() {
        assert_eq!(
            CyclotomicNumber::zero(5).invert(),
            Err(NumError::DivisionByZero { order: 5 })
        );
    }

    #[test]
    fn conjugate_of_root() {
        assert_eq!(
            CyclotomicNumber::root_power(5, 1).conjugate(),
            cyc(5, &[(-1, 1), (-1, 1), (-1, 1), (-1, 1)])
        );
    }

    #[test]
    fn conjugate_fixes_rationals() {
        let x = CyclotomicNumber::from_rational(7, rat(22, 7));
        assert_eq!(x.conjugate(), x);
    }

    #[test]
    fn order_mismatch_is_an_error() {
        let a = CyclotomicNumber::one(3);
        let b = CyclotomicNumber::one(5);
        assert_eq!(
            a.checked_add(&b),
            Err(NumError::OrderMismatch { left: 3, right: 5 })
        );
    }

    #[test]
    fn roots_of_unity_sum_to_zero() {
        for d in [3u32, 5, 7, 11, 13, 17, 19, 23] {
            let mut sum = CyclotomicNumber::zero(d);
            for e in 0..d as i64 {
                sum = &sum + &CyclotomicNumber::root_power(d, e);
            }
            assert!(sum.is_zero(), "sum of {d}-th roots of unity");
        }
    }

    /// Random element with small coefficients; zero is possible.
    fn arb_cyclotomic(order: u32) -> impl Strategy<Value = CyclotomicNumber> {
        prop::collection::vec((-6i64..=6, 1i64..=4), (order - 1) as usize).prop_map(
            move |pairs| {
                CyclotomicNumber::new(order, pairs.into_iter().map(|(n, d)| rat(n, d)).collect())
            },
        )
    }

    fn arb_order() -> impl Strategy<Value = u32> {
        prop::sample::select(vec![3u32, 5, 7, 11, 13, 17, 19, 23])
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn mul_invert_is_one(order in arb_order(), seed in 0u64..1 << 48) {
            let mut coeffs = Vec::new();
            let mut state = seed | 1;
            for _ in 0..order - 1 {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                coeffs.push(rat((state >> 33) as i64 % 7 - 3, 1 + (state % 3) as i64));
            }
            let x = CyclotomicNumber::new(order, coeffs);
            prop_assume!(!x.is_zero());
            let inv = x.invert().unwrap();
            prop_assert_eq!(&x * &inv, CyclotomicNumber::one(order));
        }

        #[test]
        fn conjugate_is_ring_homomorphism(x in arb_cyclotomic(7), y in arb_cyclotomic(7)) {
            prop_assert_eq!((&x * &y).conjugate(), &x.conjugate() * &y.conjugate());
            prop_assert_eq!((&x + &y).conjugate(), &x.conjugate() + &y.conjugate());
        }

        #[test]
        fn conjugate_is_an_involution(x in arb_cyclotomic(11)) {
            prop_assert_eq!(x.conjugate().conjugate(), x);
        }

        #[test]
        fn ring_laws_spot_checks(
            x in arb_cyclotomic(5),
            y in arb_cyclotomic(5),
            z in arb_cyclotomic(5),
        ) {
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            prop_assert_eq!(&x + &y, &y + &x);
        }
    }
}
