//! Power series with exact integer coefficients, truncated at a fixed order.
//!
//! Only what the tree generating functions need: ring operations, shifts
//! and powers. Two series combine only when they share a truncation order.

use std::ops::{Add, Mul, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact_math::{binomial, BigCount};

/// Coefficients of `z^0 .. z^order`; everything above is discarded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<BigInt>,
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: vec![BigInt::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> TruncatedSeries {
        Self::monomial(order, 0, BigInt::one())
    }

    /// `coeff * z^power`, which is zero if `power > order`.
    pub fn monomial(order: usize, power: usize, coeff: BigInt) -> TruncatedSeries {
        let mut s = Self::zero(order);
        if power <= order {
            s.coeffs[power] = coeff;
        }
        s
    }

    /// Truncates or zero-pads `coeffs` to `order`.
    pub fn from_coeffs(order: usize, mut coeffs: Vec<BigInt>) -> TruncatedSeries {
        coeffs.resize(order + 1, BigInt::zero());
        TruncatedSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coefficient(&self, n: usize) -> Result<&BigInt> {
        self.coeffs.get(n).ok_or(Error::TruncationTooSmall {
            order: self.order(),
            needed: n,
        })
    }

    /// Coefficient `n` as a count; a negative coefficient is an error.
    pub fn count(&self, n: usize) -> Result<BigCount> {
        let c = self.coefficient(n)?;
        match c.sign() {
            Sign::Minus => Err(Error::Inconsistency(format!("coefficient {n} is negative: {c}"))),
            _ => Ok(c.magnitude().clone()),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn same_order(&self, other: &TruncatedSeries) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.same_order(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(TruncatedSeries { coeffs })
    }

    pub fn checked_sub(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.same_order(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(TruncatedSeries { coeffs })
    }

    pub fn checked_mul(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.same_order(other)?;
        let order = self.order();
        let mut out = Self::zero(order);
        for (j, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (l, b) in other.coeffs[..=order - j].iter().enumerate() {
                out.coeffs[j + l] += a * b;
            }
        }
        Ok(out)
    }

    pub fn scale(&self, factor: &BigInt) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    /// Multiplies by `z^m`.
    pub fn shift(&self, m: usize) -> TruncatedSeries {
        let order = self.order();
        let mut out = Self::zero(order);
        for (j, c) in self.coeffs.iter().enumerate().take((order + 1).saturating_sub(m)) {
            out.coeffs[j + m] = c.clone();
        }
        out
    }

    pub fn pow(&self, mut e: u32) -> TruncatedSeries {
        let mut acc = Self::one(self.order());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }
}

macro_rules! binary_op {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait for &TruncatedSeries {
            type Output = TruncatedSeries;

            /// Panics when the truncation orders differ.
            fn $method(self, rhs: &TruncatedSeries) -> TruncatedSeries {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
    };
}

binary_op!(Add, add, checked_add);
binary_op!(Sub, sub, checked_sub);
binary_op!(Mul, mul, checked_mul);

/// `C(z)`, from `c_n = sum_{j<n} c_j c_{n-1-j}`, which is `C = 1 + z C^2`
/// read off coefficientwise.
pub fn catalan_series(order: usize) -> TruncatedSeries {
    let mut c: Vec<BigInt> = Vec::with_capacity(order + 1);
    c.push(BigInt::one());
    for n in 1..=order {
        let next = (0..n).map(|j| &c[j] * &c[n - 1 - j]).sum();
        c.push(next);
    }
    TruncatedSeries { coeffs: c }
}

/// `B_k(z)` with `B_k = (1 + z B_k)^k`. The coefficient of `z^d` on the
/// right depends only on coefficients of `B_k` below `d`, so the series is
/// fixed one degree at a time.
pub fn kary_series(k: u32, order: usize) -> TruncatedSeries {
    let mut b = TruncatedSeries::one(order);
    for d in 1..=order {
        let rhs = (&TruncatedSeries::one(order) + &b.shift(1)).pow(k);
        b.coeffs[d] = rhs.coeffs[d].clone();
    }
    b
}

fn exact_quotient(num: BigCount, den: u64, context: &str) -> Result<BigCount> {
    let (q, r) = num.div_rem(&BigCount::from(den));
    if !r.is_zero() {
        return Err(Error::Inconsistency(format!("{context} is not an integer")));
    }
    Ok(q)
}

/// `l / (2n + l) * C(2n + l, n)`.
pub fn catalan_power_closed_form(n: u64, l: u64) -> Result<BigCount> {
    let top = (2 * n + l) as i64;
    if top == 0 {
        return Ok(BigCount::one());
    }
    exact_quotient(
        binomial(top, n as i64) * l,
        2 * n + l,
        &format!("l/(2n+l) C(2n+l, n) at n={n}, l={l}"),
    )
}

/// `l / (n + l) * C(k(n + l), n)`, the coefficient of `z^n` in `B_k^l`.
pub fn kary_power_closed_form(k: u64, n: u64, l: u64) -> Result<BigCount> {
    if n + l == 0 {
        return Ok(BigCount::one());
    }
    exact_quotient(
        binomial((k * (n + l)) as i64, n as i64) * l,
        n + l,
        &format!("l/(n+l) C(k(n+l), n) at k={k}, n={n}, l={l}"),
    )
}

/// Whether `[z^n] B_k^l = l/n * C(kn, n)` holds, compared as
/// `n * lhs == l * C(kn, n)` so no division is needed.
pub fn kary_printed_form_holds(k: u64, n: u64, l: u64) -> bool {
    let series = kary_series(k as u32, n as usize).pow(l as u32);
    let lhs = series.count(n as usize).expect("order n series has coefficient n");
    lhs * n == binomial((k * n) as i64, n as i64) * l
}

/// `([z^n] C^l, closed form)` from a series of sufficient order.
pub fn catalan_power_coeff_in(catalan: &TruncatedSeries, n: usize, l: u32) -> Result<(BigCount, BigCount)> {
    catalan.coefficient(n)?;
    let lhs = catalan.pow(l).count(n)?;
    Ok((lhs, catalan_power_closed_form(n as u64, l as u64)?))
}

pub fn verify_catalan_power_coeff(n: usize, l: u32) -> Result<(BigCount, BigCount)> {
    catalan_power_coeff_in(&catalan_series(n), n, l)
}

/// `([z^n] B_k^l, l/(n+l) C(k(n+l), n))` from a series of sufficient order.
pub fn kary_power_coeff_in(b: &TruncatedSeries, k: u64, n: usize, l: u32) -> Result<(BigCount, BigCount)> {
    b.coefficient(n)?;
    let lhs = b.pow(l).count(n)?;
    Ok((lhs, kary_power_closed_form(k, n as u64, l as u64)?))
}

/// Checks the corrected power formula at `(k, n, l)`, and the shape in
/// which the outdegree derivation consumes it: for every split `n = m + l'`
/// with `l' >= 1`, `[z^m] B_k^{l'} = l'/n * C(kn, m)`.
pub fn verify_kary_power_coeff(k: u32, n: usize, l: u32) -> Result<(BigCount, BigCount)> {
    let b = kary_series(k, n);
    let pair = kary_power_coeff_in(&b, k as u64, n, l)?;
    if n > 0 {
        let kn = (k as u64 * n as u64) as i64;
        for split in 1..=n {
            let m = n - split;
            let lhs = b.pow(split as u32).count(m)? * n;
            let rhs = binomial(kn, m as i64) * split;
            if lhs != rhs {
                return Err(Error::Inconsistency(format!(
                    "[z^{m}]B_{k}^{split} != {split}/{n} C({kn}, {m})"
                )));
            }
        }
    }
    Ok(pair)
}

/// `sum_{m >= 0} z^(m+i) C(z)^(2m+i)`: the number of outdegree-`i` vertices
/// over all `n`-edge plane trees, as a series in `n`.
pub fn plane_derivative_series(i: usize, order: usize) -> TruncatedSeries {
    plane_derivative_series_terms(i, order, 0)
}

/// As [`plane_derivative_series`], summing `extra` terms past the last one
/// that can reach `z^order`.
pub fn plane_derivative_series_terms(i: usize, order: usize, extra: usize) -> TruncatedSeries {
    let c = catalan_series(order);
    let mut out = TruncatedSeries::zero(order);
    if i > order {
        return out;
    }
    let last = order - i + extra;
    for m in 0..=last {
        // z^(m+i) is the lowest power in this term
        let term = c.pow((2 * m + i) as u32).shift(m + i);
        out = &out + &term;
    }
    out
}

/// `C(k,i) sum_{r >= 0} (k-1)^r (z^(i+r) B^(i+r) + z^(i+r+1) B^(i+r+1))`.
pub fn kary_derivative_series(k: u32, i: usize, order: usize) -> TruncatedSeries {
    kary_derivative_series_terms(k, i, order, 0)
}

pub fn kary_derivative_series_terms(k: u32, i: usize, order: usize, extra: usize) -> TruncatedSeries {
    let mut out = TruncatedSeries::zero(order);
    if i > k as usize || i > order {
        return out;
    }
    let zb = kary_series(k, order).shift(1);
    let last = order - i + extra;
    for r in 0..=last {
        let weight = BigInt::from(k as i64 - 1).pow(r as u32);
        let low = zb.pow((i + r) as u32);
        let high = &low * &zb;
        out = &out + &(&low + &high).scale(&weight);
    }
    out.scale(&BigInt::from(binomial(k as i64, i as i64)))
}
