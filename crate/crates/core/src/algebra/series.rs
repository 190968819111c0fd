//! Truncated power series over an arbitrary coefficient ring.
//!
//! A series either carries an explicit truncation order N (coefficients
//! for degrees 0..=N, nothing known beyond) or is an exact constant,
//! which is known to every order. Binary operations truncate to the
//! smallest truncation order among non-exact operands and record that
//! effective order; operations on exact constants stay exact. Orders are
//! always explicit constructor data, never ambient globals.
//!
//! Equality compares coefficients through the shared known range, which
//! is the only comparison truncated data supports.

use super::scalar::{Rational, Ring};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use std::fmt;

/// Truncated power series; the variable is whatever the caller says it is
/// (q for degree series, z for Givental series, u on the orbifold side).
#[derive(Clone, Debug)]
pub struct Series<T: Ring> {
    coeffs: Vec<T>,
    exact: bool,
}

/// Series in q over the base field — the workhorse type.
pub type QSeries = Series<super::scalar::Scalar>;

impl<T: Ring> Series<T> {
    /// Zero series of the given truncation order.
    pub fn zero(order: usize) -> Self {
        Series {
            coeffs: vec![T::zero(); order + 1],
            exact: false,
        }
    }

    /// Exact constant, known to all orders.
    pub fn exact_constant(c: T) -> Self {
        Series {
            coeffs: vec![c],
            exact: true,
        }
    }

    pub fn constant(c: T, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(order: usize) -> Self {
        Self::constant(T::one(), order)
    }

    /// The monomial x at the given truncation order.
    pub fn x(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = T::one();
        }
        s
    }

    pub fn from_coeffs(coeffs: Vec<T>) -> Self {
        assert!(!coeffs.is_empty());
        Series {
            coeffs,
            exact: false,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    /// Truncation order; exact constants report `usize::MAX`.
    pub fn order(&self) -> usize {
        if self.exact {
            usize::MAX
        } else {
            self.coeffs.len() - 1
        }
    }

    pub fn coeff(&self, k: usize) -> T {
        if self.exact {
            return if k == 0 {
                self.coeffs[0].clone()
            } else {
                T::zero()
            };
        }
        assert!(
            k < self.coeffs.len(),
            "coefficient {} beyond truncation order {}",
            k,
            self.coeffs.len() - 1
        );
        self.coeffs[k].clone()
    }

    pub fn set_coeff(&mut self, k: usize, c: T) {
        assert!(!self.exact, "cannot set coefficients of an exact constant");
        assert!(k < self.coeffs.len());
        self.coeffs[k] = c;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn constant_term(&self) -> T {
        self.coeffs[0].clone()
    }

    /// Materialize at a concrete truncation order.
    pub fn truncate(&self, order: usize) -> Self {
        let mut out = Self::zero(order);
        for k in 0..=order {
            if self.exact {
                if k == 0 {
                    out.coeffs[0] = self.coeffs[0].clone();
                }
            } else if k < self.coeffs.len() {
                out.coeffs[k] = self.coeffs[k].clone();
            } else {
                break;
            }
        }
        out
    }

    fn join_order(&self, rhs: &Self) -> Option<usize> {
        match (self.exact, rhs.exact) {
            (true, true) => None,
            (true, false) => Some(rhs.coeffs.len() - 1),
            (false, true) => Some(self.coeffs.len() - 1),
            (false, false) => Some((self.coeffs.len() - 1).min(rhs.coeffs.len() - 1)),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        match self.join_order(rhs) {
            None => Self::exact_constant(self.coeffs[0].add(&rhs.coeffs[0])),
            Some(n) => {
                let mut out = Self::zero(n);
                for k in 0..=n {
                    out.coeffs[k] = self.coeff(k).add(&rhs.coeff(k));
                }
                out
            }
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        Series {
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
            exact: self.exact,
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        match self.join_order(rhs) {
            None => Self::exact_constant(self.coeffs[0].mul(&rhs.coeffs[0])),
            Some(n) => {
                let mut coeffs = vec![T::zero(); n + 1];
                let amax = if self.exact { 0 } else { self.coeffs.len() - 1 };
                for i in 0..=amax.min(n) {
                    let a = &self.coeffs[i];
                    if a.is_zero() {
                        continue;
                    }
                    let bmax = if rhs.exact { 0 } else { rhs.coeffs.len() - 1 };
                    for j in 0..=bmax.min(n - i) {
                        let b = &rhs.coeffs[j];
                        if b.is_zero() {
                            continue;
                        }
                        coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
                    }
                }
                Series {
                    coeffs,
                    exact: false,
                }
            }
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        Series {
            coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect(),
            exact: self.exact,
        }
    }

    /// x d/dx applied coefficientwise.
    pub fn x_d_dx(&self) -> Self {
        if self.exact {
            return Self::exact_constant(T::zero());
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c.mul(&T::from_int(k as i64)))
            .collect();
        Series {
            coeffs,
            exact: false,
        }
    }

    /// Multiplicative inverse; the constant term must be invertible.
    pub fn inverse(&self) -> Result<Self> {
        let a0 = self.coeffs[0].inv().ok_or(Error::NonInvertibleConstantTerm)?;
        if self.exact {
            return Ok(Self::exact_constant(a0));
        }
        let n = self.coeffs.len() - 1;
        let mut inv = vec![T::zero(); n + 1];
        inv[0] = a0.clone();
        for k in 1..=n {
            let mut acc = T::zero();
            for j in 1..=k {
                acc = acc.add(&self.coeffs[j].mul(&inv[k - j]));
            }
            inv[k] = acc.mul(&a0).neg();
        }
        Ok(Series {
            coeffs: inv,
            exact: false,
        })
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.mul(&rhs.inverse()?))
    }

    /// exp of a series with zero constant term.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        if self.exact {
            return Ok(Self::exact_constant(T::one()));
        }
        let n = self.coeffs.len() - 1;
        let mut out = Self::one(n);
        let mut term = Self::one(n);
        let mut fact = BigInt::from(1);
        for k in 1..=n {
            term = term.mul(self);
            fact *= k;
            let c = T::from_rational(&Rational::new(BigInt::from(1), fact.clone()));
            out = out.add(&term.scale(&c));
        }
        Ok(out)
    }

    /// log of a series with constant term 1.
    pub fn log(&self) -> Result<Self> {
        if self.coeffs[0] != T::one() {
            return Err(Error::NonInvertibleConstantTerm);
        }
        if self.exact {
            return Ok(Self::exact_constant(T::zero()));
        }
        let n = self.coeffs.len() - 1;
        let u = self.sub(&Self::one(n)); // zero constant term
        let mut out = Self::zero(n);
        let mut term = Self::one(n);
        for k in 1..=n {
            term = term.mul(&u);
            let sign = if k % 2 == 0 { -1 } else { 1 };
            let c = T::from_rational(&Rational::new(BigInt::from(sign), BigInt::from(k)));
            out = out.add(&term.scale(&c));
        }
        Ok(out)
    }

    /// Evaluate the stored polynomial truncation at a ring element.
    pub fn eval_at(&self, x: &T) -> T {
        let mut acc = T::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    /// Substitute x -> c*x: multiplies coefficient k by c^k.
    pub fn rescale_var(&self, c: &T) -> Self {
        let mut p = T::one();
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, a)| {
                if k > 0 {
                    p = p.mul(c);
                }
                a.mul(&p)
            })
            .collect();
        Series {
            coeffs,
            exact: self.exact,
        }
    }

    /// Map coefficients into another ring.
    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> Series<U> {
        Series {
            coeffs: self.coeffs.iter().map(f).collect(),
            exact: self.exact,
        }
    }
}

impl<T: Ring> PartialEq for Series<T> {
    /// Coefficientwise equality through the shared known range.
    fn eq(&self, other: &Self) -> bool {
        match self.join_order(other) {
            None => self.coeffs[0] == other.coeffs[0],
            Some(n) => (0..=n).all(|k| self.coeff(k) == other.coeff(k)),
        }
    }
}

impl<T: Ring> Ring for Series<T> {
    fn zero() -> Self {
        Self::exact_constant(T::zero())
    }
    fn one() -> Self {
        Self::exact_constant(T::one())
    }
    fn is_zero(&self) -> bool {
        Series::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        Series::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        Series::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        Series::mul(self, rhs)
    }
    fn neg(&self) -> Self {
        Series::neg(self)
    }
    fn inv(&self) -> Option<Self> {
        self.inverse().ok()
    }
    fn from_rational(r: &Rational) -> Self {
        Self::exact_constant(T::from_rational(r))
    }
}

impl QSeries {
    /// Coefficientwise bar t_i -> -t_i (the series variable is untouched).
    pub fn bar(&self) -> Self {
        self.map(|c| c.bar())
    }
}

impl<T: Ring> fmt::Display for Series<T>
where
    T: fmt::Display,
{
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})*x^{}", c, k)?;
        }
        if first {
            write!(f, "0")?;
        }
        if !self.exact {
            write!(f, " + O(x^{})", self.coeffs.len())?;
        }
        Ok(())
    }
}
