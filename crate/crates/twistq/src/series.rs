//! Truncated power series in the deformation parameter `h`.
//!
//! The ground ring is `C[h]/(h^{N+1})` for an exact coefficient field `C`
//! (by default arbitrary-precision rationals). The truncation order `N` is
//! carried by an explicit [`Ctx`] value and by the length of every series.
//!
//! Invariants:
//! - a series always stores exactly `N + 1` coefficients;
//! - products discard every term of order greater than `N`;
//! - arithmetic never rounds.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar.
pub type Scalar = BigRational;

/// Coefficient field for truncated series.
pub trait Coeff:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
}

impl<T> Coeff for T where
    T: Clone
        + PartialEq
        + fmt::Debug
        + Zero
        + One
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Div<Output = T>
        + Neg<Output = T>
{
}

/// Session truncation context.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Ctx {
    pub order: usize,
}

impl Ctx {
    pub fn new(order: usize) -> Self {
        Ctx { order }
    }

    pub fn zero(&self) -> DeformationSeries {
        Series::zero(self.order)
    }

    pub fn one(&self) -> DeformationSeries {
        Series::one(self.order)
    }

    pub fn h(&self) -> DeformationSeries {
        Series::monomial(self.order, 1, Scalar::one())
    }

    pub fn constant(&self, c: Scalar) -> DeformationSeries {
        Series::constant(self.order, c)
    }

    pub fn int(&self, n: i64) -> DeformationSeries {
        Series::constant(self.order, Scalar::from_integer(BigInt::from(n)))
    }
}

/// Truncated series `c0 + c1 h + ... + cN h^N`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Series<C = Scalar> {
    coeffs: Vec<C>,
}

/// The ground ring used throughout the engine.
pub type DeformationSeries = Series<Scalar>;

impl<C: Coeff> Series<C> {
    pub fn zero(order: usize) -> Self {
        Series { coeffs: vec![C::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(order, C::one())
    }

    pub fn constant(order: usize, c: C) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// `c h^k`, or zero when `k` exceeds the order.
    pub fn monomial(order: usize, k: usize, c: C) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    /// Builds from a coefficient list, padding with zeros or truncating.
    pub fn from_coeffs(order: usize, mut coeffs: Vec<C>) -> Self {
        coeffs.resize(order + 1, C::zero());
        Series { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &C {
        &self.coeffs[k]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Lowest power of `h` with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.coeffs.len() != other.coeffs.len() {
            return Err(Error::Config(format!(
                "truncation orders differ: {} vs {}",
                self.order(),
                other.order()
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.add_ref(other))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.mul_ref(other))
    }

    /// Sum; panics on an order mismatch (use [`Series::try_add`] to recover).
    pub fn add_ref(&self, other: &Self) -> Self {
        assert_eq!(self.coeffs.len(), other.coeffs.len(), "truncation order mismatch");
        Series {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    pub fn sub_ref(&self, other: &Self) -> Self {
        assert_eq!(self.coeffs.len(), other.coeffs.len(), "truncation order mismatch");
        Series {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }

    pub fn add_assign_ref(&mut self, other: &Self) {
        assert_eq!(self.coeffs.len(), other.coeffs.len(), "truncation order mismatch");
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            if !b.is_zero() {
                *a = a.clone() + b.clone();
            }
        }
    }

    /// Cauchy product truncated at the common order.
    pub fn mul_ref(&self, other: &Self) -> Self {
        assert_eq!(self.coeffs.len(), other.coeffs.len(), "truncation order mismatch");
        let n = self.coeffs.len();
        let mut out = vec![C::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..n - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].clone() + a.clone() * b.clone();
                }
            }
        }
        Series { coeffs: out }
    }

    pub fn scale(&self, c: &C) -> Self {
        Series { coeffs: self.coeffs.iter().map(|a| a.clone() * c.clone()).collect() }
    }

    pub fn neg_ref(&self) -> Self {
        Series { coeffs: self.coeffs.iter().map(|a| -a.clone()).collect() }
    }

    /// Multiplies by `h^k`.
    pub fn shift(&self, k: usize) -> Self {
        let n = self.coeffs.len();
        let mut out = vec![C::zero(); n];
        for i in 0..n.saturating_sub(k) {
            out[i + k] = self.coeffs[i].clone();
        }
        Series { coeffs: out }
    }

    /// Keeps only the coefficient of `h^k`.
    pub fn part(&self, k: usize) -> Self {
        Self::monomial(self.order(), k, self.coeffs[k].clone())
    }

    /// Multiplicative inverse via the geometric-series recursion
    /// `b_k = -(1/a_0) * sum_{j=1..k} a_j b_{k-j}`.
    pub fn invert(&self) -> Result<Self> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(Error::NonInvertible("series with zero constant term".into()));
        }
        let n = self.coeffs.len();
        let inv0 = C::one() / a0.clone();
        let mut b: Vec<C> = Vec::with_capacity(n);
        b.push(inv0.clone());
        for k in 1..n {
            let mut acc = C::zero();
            for j in 1..=k {
                acc = acc + self.coeffs[j].clone() * b[k - j].clone();
            }
            b.push(-(acc * inv0.clone()));
        }
        Ok(Series { coeffs: b })
    }

    /// Truncates or zero-extends to a different order.
    pub fn with_order(&self, order: usize) -> Self {
        Self::from_coeffs(order, self.coeffs.clone())
    }
}

impl<C: Coeff> Add for Series<C> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.add_ref(&rhs)
    }
}

impl<C: Coeff> Sub for Series<C> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.sub_ref(&rhs)
    }
}

impl<C: Coeff> Mul for Series<C> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.mul_ref(&rhs)
    }
}

impl<C: Coeff> Neg for Series<C> {
    type Output = Self;
    fn neg(self) -> Self {
        self.neg_ref()
    }
}

/// Adds `s` into `map[k]`, dropping the entry when it cancels.
pub fn accumulate<K: Ord>(map: &mut std::collections::BTreeMap<K, DeformationSeries>, k: K, s: DeformationSeries) {
    if s.is_zero() {
        return;
    }
    match map.entry(k) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(s);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            e.get_mut().add_assign_ref(&s);
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

/// Renders a rational as `p` or `p/q`.
pub fn fmt_scalar(q: &Scalar) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `p`, `-p`, or `p/q`.
pub fn parse_scalar(s: &str) -> Result<Scalar> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad rational literal `{s}`"));
    if let Some((p, q)) = s.split_once('/') {
        let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
        let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
        if q.is_zero() {
            return Err(Error::Parse(format!("zero denominator in `{s}`")));
        }
        Ok(Scalar::new(p, q))
    } else {
        Ok(Scalar::from_integer(BigInt::from_str(s).map_err(|_| bad())?))
    }
}

impl fmt::Display for Series<Scalar> {
    /// `c0 + c1*h + ... + cN*h^N`, every coefficient printed.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, c) in self.coeffs.iter().enumerate() {
            let body = fmt_scalar(c);
            if k == 0 {
                write!(f, "{body}")?;
            } else {
                let pow = if k == 1 { "h".to_string() } else { format!("h^{k}") };
                if c.is_negative() {
                    write!(f, " - {}*{pow}", fmt_scalar(&-c.clone()))?;
                } else {
                    write!(f, " + {body}*{pow}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Series<Scalar> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Series<Scalar> {
    /// Rendering that omits zero terms, e.g. `1/2*h - h^3`; zero prints as `0`.
    pub fn render_compact(&self) -> String {
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let pow = match k {
                0 => String::new(),
                1 => "h".to_string(),
                _ => format!("h^{k}"),
            };
            let mag = c.abs();
            let body = match (k, mag.is_one()) {
                (0, _) => fmt_scalar(&mag),
                (_, true) => pow,
                (_, false) => format!("{}*{pow}", fmt_scalar(&mag)),
            };
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// Parses the canonical rendering (and any permutation of its terms).
    /// Terms are `c`, `c*h`, `c*h^k`, `h`, or `h^k`; the order is the highest
    /// power present unless `order` is given.
    pub fn parse(text: &str, order: Option<usize>) -> Result<Self> {
        let mut terms: Vec<(usize, Scalar)> = Vec::new();
        let cleaned = text.replace(" - ", " + -").replace(' ', "");
        let cleaned = cleaned.strip_prefix('+').unwrap_or(&cleaned);
        for raw in cleaned.split('+') {
            if raw.is_empty() {
                return Err(Error::Parse(format!("empty term in series `{text}`")));
            }
            let (neg, body) = match raw.strip_prefix('-') {
                Some(b) => (true, b),
                None => (false, raw),
            };
            let (cpart, hpart) = match body.find('h') {
                Some(i) => (&body[..i], Some(&body[i..])),
                None => (body, None),
            };
            let cpart = cpart.strip_suffix('*').unwrap_or(cpart);
            let mut c = if cpart.is_empty() { Scalar::one() } else { parse_scalar(cpart)? };
            if neg {
                c = -c;
            }
            let k = match hpart {
                None => 0,
                Some("h") => 1,
                Some(hp) => {
                    let e = hp
                        .strip_prefix("h^")
                        .ok_or_else(|| Error::Parse(format!("bad power `{hp}`")))?;
                    e.parse::<usize>().map_err(|_| Error::Parse(format!("bad exponent `{e}`")))?
                }
            };
            terms.push((k, c));
        }
        let top = terms.iter().map(|t| t.0).max().unwrap_or(0);
        let n = order.unwrap_or(top);
        let mut s: Series<Scalar> = Series::zero(n);
        for (k, c) in terms {
            if k <= n {
                s.coeffs[k] = s.coeffs[k].clone() + c;
            }
        }
        Ok(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> Scalar {
        Scalar::new(BigInt::from(p), BigInt::from(d))
    }

    fn ser(n: usize, cs: &[i64]) -> DeformationSeries {
        Series::from_coeffs(n, cs.iter().map(|&c| q(c, 1)).collect())
    }

    #[test]
    fn add_examples() {
        let a = ser(3, &[1, 1]);
        let b = ser(3, &[2, -1]);
        assert_eq!(a + b, ser(3, &[3]));
        let s = ser(3, &[4, 0, 7]);
        assert_eq!(s.clone() + Series::zero(3), s);
        let top = Series::monomial(3, 3, q(1, 1));
        assert_eq!(top.clone() + top, Series::monomial(3, 3, q(2, 1)));
    }

    #[test]
    fn mul_examples() {
        assert_eq!(ser(4, &[1, 1]) * ser(4, &[1, -1]), ser(4, &[1, 0, -1]));
        let hn = Series::monomial(4, 4, q(1, 1));
        assert!((hn * ser(4, &[0, 1])).is_zero());
        assert_eq!(ser(4, &[1, 1]) * Series::one(4), ser(4, &[1, 1]));
    }

    #[test]
    fn invert_examples() {
        // independent oracle: alternating signs for 1/(1+h)
        let inv = ser(5, &[1, 1]).invert().unwrap();
        assert_eq!(inv, ser(5, &[1, -1, 1, -1, 1, -1]));
        assert_eq!(ser(5, &[2]).invert().unwrap(), Series::constant(5, q(1, 2)));
        assert!(matches!(ser(5, &[0, 1]).invert(), Err(Error::NonInvertible(_))));
    }

    #[test]
    fn mismatched_orders_are_config_errors() {
        let a = ser(2, &[1]);
        let b = ser(3, &[1]);
        assert!(matches!(a.try_add(&b), Err(Error::Config(_))));
        assert!(matches!(a.try_mul(&b), Err(Error::Config(_))));
    }

    #[test]
    fn render_and_parse() {
        let s = Series::from_coeffs(3, vec![q(1, 2), q(-3, 1), q(0, 1), q(7, 5)]);
        let text = s.to_string();
        assert_eq!(text, "1/2 - 3*h + 0*h^2 + 7/5*h^3");
        assert_eq!(Series::parse(&text, None).unwrap(), s);
        assert_eq!(Series::parse("h^2 + 1", Some(3)).unwrap(), ser(3, &[1, 0, 1]));
        assert!(Series::parse("1 + h^x", None).is_err());
        assert!(Series::parse("1/0", None).is_err());
    }

    #[test]
    fn generic_over_small_rationals() {
        type R = num_rational::Ratio<i64>;
        let a: Series<R> = Series::from_coeffs(3, vec![R::new(1, 1), R::new(1, 1)]);
        let b = a.invert().unwrap();
        assert!(a.mul_ref(&b) == Series::one(3));
    }
}
