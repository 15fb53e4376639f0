//! Necklace-type counts c(m,k), truncated power series over the rationals,
//! and the generating series whose coefficients are the T^i dimensions of
//! the cone over the rational normal curve.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("argument {name} must be at least {min}, got {value}")]
    OutOfRange {
        name: &'static str,
        min: u64,
        value: u64,
    },
    #[error("division by a series with zero constant term")]
    NonUnitDivisor,
    #[error("series have different truncation orders ({0} and {1})")]
    OrderMismatch(usize, usize),
}

fn require(name: &'static str, value: u64, min: u64) -> Result<(), SeriesError> {
    if value < min {
        Err(SeriesError::OutOfRange { name, min, value })
    } else {
        Ok(())
    }
}

/// Möbius function.
pub fn moebius(n: u64) -> Result<i8, SeriesError> {
    require("n", n, 1)?;
    let mut n = n;
    let mut sign = 1i8;
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return Ok(0);
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    Ok(sign)
}

fn divisors(k: u64) -> Vec<u64> {
    (1..=k).filter(|&q| k.is_multiple_of(q)).collect()
}

/// c(m,k) = (1/k) Σ_{q|k} (-1)^{k+k/q} μ(q) m^{k/q}, the dimension of
/// T^{k-1} of the fat point Z_m with residue-field coefficients.
///
/// Panics if the sum is not divisible by k, which would mean the formula
/// was evaluated wrongly.
pub fn c_mk(m: u64, k: u64) -> Result<BigInt, SeriesError> {
    require("m", m, 1)?;
    require("k", k, 1)?;
    let base = BigInt::from(m);
    let mut sum = BigInt::zero();
    for q in divisors(k) {
        let mu = moebius(q)?;
        if mu == 0 {
            continue;
        }
        let e = k / q;
        let mut term = num_traits::pow(base.clone(), e as usize);
        if (k + e) % 2 == 1 {
            term = -term;
        }
        if mu < 0 {
            term = -term;
        }
        sum += term;
    }
    let (quot, rem) = sum.div_rem(&BigInt::from(k));
    assert!(rem.is_zero(), "c({m},{k}): sum {sum} not divisible by {k}");
    assert!(!quot.is_negative(), "c({m},{k}) = {quot} is negative");
    Ok(quot)
}

/// dim T^i of the fat point Z_m: m·c(m,i+1) − c(m,i).
pub fn fatpoint_tdim(m: u64, i: u64) -> Result<BigInt, SeriesError> {
    require("m", m, 1)?;
    require("i", i, 1)?;
    let v = BigInt::from(m) * c_mk(m, i + 1)? - c_mk(m, i)?;
    assert!(!v.is_negative(), "dim T^{i}(Z_{m}) = {v} is negative");
    Ok(v)
}

/// Power series in t truncated after t^order, with exact coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<BigRational>,
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![BigRational::zero(); order + 1],
        }
    }

    /// Coefficients beyond `order` are dropped, missing ones are zero.
    pub fn from_coeffs(order: usize, coeffs: impl IntoIterator<Item = BigRational>) -> Self {
        let mut s = Self::zero(order);
        for (slot, c) in s.coeffs.iter_mut().zip(coeffs) {
            *slot = c;
        }
        s
    }

    pub fn from_ints(order: usize, coeffs: &[i64]) -> Self {
        Self::from_coeffs(
            order,
            coeffs.iter().map(|&c| BigRational::from_integer(c.into())),
        )
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, j: usize) -> BigRational {
        self.coeffs
            .get(j)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// 1/(1+t) = 1 − t + t² − …
    pub fn alternating_geometric(order: usize) -> Self {
        Self::from_coeffs(
            order,
            (0..=order).map(|j| {
                if j % 2 == 0 {
                    BigRational::one()
                } else {
                    -BigRational::one()
                }
            }),
        )
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Multiplicative inverse by the usual recurrence; needs a nonzero
    /// constant term.
    pub fn inverse(&self) -> Result<Self, SeriesError> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(SeriesError::NonUnitDivisor);
        }
        let n = self.order();
        let inv0 = a0.recip();
        let mut out: Vec<BigRational> = Vec::with_capacity(n + 1);
        out.push(inv0.clone());
        for j in 1..=n {
            let mut acc = BigRational::zero();
            for i in 1..=j {
                acc += &self.coeffs[i] * &out[j - i];
            }
            out.push(-acc * &inv0);
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, SeriesError> {
        self.check_order(rhs)?;
        Ok(self * &rhs.inverse()?)
    }

    fn check_order(&self, rhs: &Self) -> Result<(), SeriesError> {
        if self.order() != rhs.order() {
            return Err(SeriesError::OrderMismatch(self.order(), rhs.order()));
        }
        Ok(())
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order().min(rhs.order());
        TruncatedSeries::from_coeffs(
            order,
            self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b),
        )
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self + &(-rhs)
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn neg(self) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|x| -x).collect(),
        }
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order().min(rhs.order());
        let mut out = TruncatedSeries::zero(order);
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(order + 1 - i) {
                if !b.is_zero() {
                    out.coeffs[i + j] += a * b;
                }
            }
        }
        out
    }
}

fn check_multiplicity(d: u64) -> Result<(), SeriesError> {
    require("d", d, 3)
}

/// Q_d(t) = Σ_{i≥1} c(d−1, i) t^i.
pub fn q_series(d: u64, order: usize) -> Result<TruncatedSeries, SeriesError> {
    check_multiplicity(d)?;
    require("order", order as u64, 1)?;
    let mut coeffs = vec![BigRational::zero()];
    for i in 1..=order as u64 {
        coeffs.push(BigRational::from_integer(c_mk(d - 1, i)?));
    }
    Ok(TruncatedSeries::from_coeffs(order, coeffs))
}

/// P_d(t) = (Q_d + 2t + 2)·((d−1)t − t²)/(1+t)² − 2t/(1+t).
///
/// Panics if a coefficient of t^i, i ≥ 1, is not a nonnegative integer.
pub fn p_series(d: u64, order: usize) -> Result<TruncatedSeries, SeriesError> {
    let q = q_series(d, order)?;
    let lin = TruncatedSeries::from_ints(order, &[2, 2]);
    let num = TruncatedSeries::from_ints(order, &[0, d as i64 - 1, -1]);
    let geo = TruncatedSeries::alternating_geometric(order);
    let geo2 = &geo * &geo;
    let two_t = TruncatedSeries::from_ints(order, &[0, 2]);

    let first = &(&(&q + &lin) * &num) * &geo2;
    let p = &first - &(&two_t * &geo);

    for (i, c) in p.coeffs.iter().enumerate().skip(1) {
        assert!(
            c.is_integer() && !c.is_negative(),
            "coefficient of t^{i} in P_{d} is {c}"
        );
    }
    Ok(p)
}

/// The values f_1(d), …, f_imax(d) read off P_d.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimensionTable {
    d: u64,
    values: BTreeMap<u64, BigInt>,
}

impl DimensionTable {
    pub fn new(d: u64, imax: u64) -> Result<Self, SeriesError> {
        require("imax", imax, 1)?;
        // two spare terms past imax
        let p = p_series(d, imax as usize + 2)?;
        let values = (1..=imax)
            .map(|i| (i, p.coeff(i as usize).to_integer()))
            .collect();
        Ok(DimensionTable { d, values })
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn get(&self, i: u64) -> Option<&BigInt> {
        self.values.get(&i)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, &BigInt)> {
        self.values.iter().map(|(&i, v)| (i, v))
    }
}

/// f_i(d), the dimension of T^i for the cone over the rational normal
/// curve of degree d.
pub fn f_val(i: u64, d: u64) -> Result<BigInt, SeriesError> {
    require("i", i, 1)?;
    let table = DimensionTable::new(d, i)?;
    Ok(table.get(i).cloned().expect("table covers i"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn moebius_examples() {
        assert_eq!(moebius(1), Ok(1));
        assert_eq!(moebius(12), Ok(0));
        assert_eq!(moebius(30), Ok(-1));
        assert_eq!(moebius(7), Ok(-1));
        assert!(moebius(0).is_err());
    }

    #[test]
    fn moebius_multiplicative_on_coprime_pairs() {
        for a in 1..=100u64 {
            for b in 1..=100u64 {
                if num_integer::gcd(a, b) == 1 {
                    assert_eq!(
                        moebius(a * b).unwrap(),
                        moebius(a).unwrap() * moebius(b).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn c_mk_examples() {
        assert_eq!(c_mk(2, 2).unwrap(), BigInt::from(3));
        assert_eq!(c_mk(3, 3).unwrap(), BigInt::from(8));
        assert_eq!(c_mk(2, 6).unwrap(), BigInt::from(11));
        assert!(c_mk(0, 1).is_err());
        assert!(c_mk(1, 0).is_err());
    }

    #[test]
    fn c_mk_large_arguments_do_not_overflow() {
        // (m^5 − m)/5 with m = 10^6
        let m = 1_000_000u64;
        let expected = (num_traits::pow(BigInt::from(m), 5) - BigInt::from(m)) / BigInt::from(5);
        assert_eq!(c_mk(m, 5).unwrap(), expected);
    }

    #[test]
    fn fatpoint_tdim_examples() {
        assert_eq!(fatpoint_tdim(2, 1).unwrap(), BigInt::from(4));
        assert_eq!(fatpoint_tdim(2, 2).unwrap(), BigInt::from(1));
        // 3·c(3,2) − c(3,1) = 18 − 3
        assert_eq!(fatpoint_tdim(3, 1).unwrap(), BigInt::from(15));
    }

    #[test]
    fn q_series_examples() {
        let q = q_series(3, 3).unwrap();
        assert_eq!(q.coeffs(), &[r(0), r(2), r(3), r(2)]);
        let q = q_series(4, 2).unwrap();
        assert_eq!(q.coeffs(), &[r(0), r(3), r(6)]);
        assert!(q_series(2, 3).is_err());
    }

    #[test]
    fn p_series_examples() {
        let p = p_series(3, 6).unwrap();
        let got: Vec<BigRational> = (1..=6).map(|i| p.coeff(i)).collect();
        assert_eq!(got, [2, 0, 0, 1, 2, 4].map(r).to_vec());
        let p = p_series(4, 2).unwrap();
        assert_eq!((p.coeff(1), p.coeff(2)), (r(4), r(3)));
        assert_eq!(p_series(5, 3).unwrap().coeff(3), r(12));
        assert_eq!(p.coeff(0), r(0));
    }

    #[test]
    fn p_series_coefficients_are_nonnegative_integers() {
        for d in 3..=15 {
            let p = p_series(d, 14).unwrap();
            for i in 1..=14 {
                let c = p.coeff(i);
                assert!(c.is_integer() && !c.is_negative(), "d={d} i={i} c={c}");
            }
        }
    }

    #[test]
    fn f_val_examples() {
        assert_eq!(f_val(2, 6).unwrap(), BigInt::from(15));
        assert_eq!(f_val(1, 3).unwrap(), BigInt::from(2));
        assert_eq!(f_val(4, 3).unwrap(), BigInt::from(1));
        assert!(f_val(1, 2).is_err());
        assert!(f_val(0, 5).is_err());
    }

    #[test]
    fn geometric_inverse_agrees_with_general_inverse() {
        let one_plus_t = TruncatedSeries::from_ints(12, &[1, 1]);
        assert_eq!(
            one_plus_t.inverse().unwrap(),
            TruncatedSeries::alternating_geometric(12)
        );
        let sq = &one_plus_t * &one_plus_t;
        let via_div = TruncatedSeries::from_ints(12, &[1])
            .checked_div(&sq)
            .unwrap();
        let geo = TruncatedSeries::alternating_geometric(12);
        assert_eq!(via_div, &geo * &geo);
    }

    #[test]
    fn division_by_non_unit_fails() {
        let t = TruncatedSeries::from_ints(4, &[0, 1]);
        assert_eq!(t.inverse(), Err(SeriesError::NonUnitDivisor));
        let a = TruncatedSeries::from_ints(4, &[1]);
        let b = TruncatedSeries::from_ints(5, &[1]);
        assert_eq!(a.checked_div(&b), Err(SeriesError::OrderMismatch(4, 5)));
    }

    #[test]
    fn series_times_inverse_is_one() {
        let a = TruncatedSeries::from_ints(8, &[3, -1, 4, 1, -5, 9, 2, -6, 5]);
        let prod = &a * &a.inverse().unwrap();
        assert_eq!(prod, TruncatedSeries::from_ints(8, &[1]));
    }

    #[test]
    fn dimension_table_lookup() {
        let t = DimensionTable::new(6, 4).unwrap();
        assert_eq!(t.d(), 6);
        assert_eq!(t.get(3), Some(&BigInt::from(30)));
        assert_eq!(t.get(4), Some(&BigInt::from(110)));
        assert_eq!(t.get(5), None);
        assert_eq!(t.iter().count(), 4);
    }
}
