//! Quadratic extensions of the base field used by the crepant comparison.
//!
//! [`ExtScalar`] adjoins `i` with `i^2 = -1` and a formal square root `s`
//! of `t1*t2`, stored as four base-field coordinates over `{1, i, s, i*s}`.
//! Equality is decidable coordinatewise. Values produced here must be
//! projected back to [`Scalar`] before entering the core pipeline; the
//! projection fails loudly when any extension coordinate is nonzero.

use super::scalar::{Rational, Ring, Scalar};
use crate::error::{Error, Result};
use std::fmt;

/// `a + b*i + c*s + d*i*s` with `i^2 = -1`, `s^2 = t1*t2`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExtScalar {
    pub re: Scalar,
    pub im: Scalar,
    pub sq: Scalar,
    pub im_sq: Scalar,
}

impl ExtScalar {
    pub fn from_scalar(a: Scalar) -> Self {
        ExtScalar {
            re: a,
            im: Ring::zero(),
            sq: Ring::zero(),
            im_sq: Ring::zero(),
        }
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        ExtScalar {
            re: Ring::zero(),
            im: Ring::one(),
            sq: Ring::zero(),
            im_sq: Ring::zero(),
        }
    }

    /// The formal square root of t1*t2.
    pub fn sqrt_t1t2() -> Self {
        ExtScalar {
            re: Ring::zero(),
            im: Ring::zero(),
            sq: Ring::one(),
            im_sq: Ring::zero(),
        }
    }

    /// `i^e` for any integer e.
    pub fn i_pow(e: i64) -> Self {
        match e.rem_euclid(4) {
            0 => Self::from_scalar(Ring::one()),
            1 => Self::i(),
            2 => Self::from_scalar(Ring::neg(&Ring::one())),
            _ => Ring::neg(&Self::i()),
        }
    }

    /// `(-i)^e` for any integer e.
    pub fn minus_i_pow(e: i64) -> Self {
        Self::i_pow(-e)
    }

    /// `s^e = (t1 t2)^{e/2}` for e >= 0.
    pub fn sqrt_t1t2_pow(e: u32) -> Self {
        let t1t2 = Ring::mul(&Scalar::t1(), &Scalar::t2());
        let whole = t1t2.pow((e / 2) as i64);
        if e % 2 == 0 {
            Self::from_scalar(whole)
        } else {
            Ring::mul(&Self::from_scalar(whole), &Self::sqrt_t1t2())
        }
    }

    pub fn is_base_field(&self) -> bool {
        self.im.is_zero() && self.sq.is_zero() && self.im_sq.is_zero()
    }

    /// Project to the base field; errors if an extension coordinate is nonzero.
    pub fn project(&self) -> Result<Scalar> {
        if !self.is_base_field() {
            return Err(Error::NonBaseField);
        }
        Ok(self.re.clone())
    }

    fn conj_i(&self) -> Self {
        ExtScalar {
            re: self.re.clone(),
            im: Ring::neg(&self.im),
            sq: self.sq.clone(),
            im_sq: Ring::neg(&self.im_sq),
        }
    }

    fn conj_s(&self) -> Self {
        ExtScalar {
            re: self.re.clone(),
            im: self.im.clone(),
            sq: Ring::neg(&self.sq),
            im_sq: Ring::neg(&self.im_sq),
        }
    }
}

impl Ring for ExtScalar {
    fn zero() -> Self {
        Self::from_scalar(Ring::zero())
    }

    fn one() -> Self {
        Self::from_scalar(Ring::one())
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero() && self.sq.is_zero() && self.im_sq.is_zero()
    }

    fn add(&self, rhs: &Self) -> Self {
        ExtScalar {
            re: Ring::add(&self.re, &rhs.re),
            im: Ring::add(&self.im, &rhs.im),
            sq: Ring::add(&self.sq, &rhs.sq),
            im_sq: Ring::add(&self.im_sq, &rhs.im_sq),
        }
    }

    fn sub(&self, rhs: &Self) -> Self {
        Ring::add(self, &Ring::neg(rhs))
    }

    fn mul(&self, rhs: &Self) -> Self {
        let t = Ring::mul(&Scalar::t1(), &Scalar::t2());
        let (a0, a1, a2, a3) = (&self.re, &self.im, &self.sq, &self.im_sq);
        let (b0, b1, b2, b3) = (&rhs.re, &rhs.im, &rhs.sq, &rhs.im_sq);
        let m = |x: &Scalar, y: &Scalar| Ring::mul(x, y);
        let re = {
            let base = Ring::sub(&m(a0, b0), &m(a1, b1));
            let ext = Ring::sub(&m(a2, b2), &m(a3, b3));
            Ring::add(&base, &Ring::mul(&t, &ext))
        };
        let im = {
            let base = Ring::add(&m(a0, b1), &m(a1, b0));
            let ext = Ring::add(&m(a2, b3), &m(a3, b2));
            Ring::add(&base, &Ring::mul(&t, &ext))
        };
        let sq = {
            let base = Ring::add(&m(a0, b2), &m(a2, b0));
            let cross = Ring::add(&m(a1, b3), &m(a3, b1));
            Ring::sub(&base, &cross)
        };
        let im_sq = {
            let base = Ring::add(&m(a0, b3), &m(a3, b0));
            let cross = Ring::add(&m(a1, b2), &m(a2, b1));
            Ring::add(&base, &cross)
        };
        ExtScalar { re, im, sq, im_sq }
    }

    fn neg(&self) -> Self {
        ExtScalar {
            re: Ring::neg(&self.re),
            im: Ring::neg(&self.im),
            sq: Ring::neg(&self.sq),
            im_sq: Ring::neg(&self.im_sq),
        }
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        // x * conj_i(x) has no i-components; multiplying by the s-conjugate
        // of that lands in the base field.
        let p = Ring::mul(self, &self.conj_i());
        debug_assert!(p.im.is_zero() && p.im_sq.is_zero());
        let q = Ring::mul(&p, &p.conj_s());
        debug_assert!(q.is_base_field());
        let norm = q.re.clone();
        let norm_inv = Ring::inv(&norm)?;
        let adj = Ring::mul(&self.conj_i(), &p.conj_s());
        Some(Ring::mul(&adj, &Self::from_scalar(norm_inv)))
    }

    fn from_rational(r: &Rational) -> Self {
        Self::from_scalar(Scalar::from_rational(r))
    }
}

impl fmt::Display for ExtScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}) + ({})*i + ({})*s + ({})*i*s",
            self.re, self.im, self.sq, self.im_sq
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn i_squared_is_minus_one() {
        let i = ExtScalar::i();
        assert_eq!(Ring::mul(&i, &i), Ring::neg(&ExtScalar::one()));
    }

    #[test]
    fn s_squared_is_t1t2() {
        let s = ExtScalar::sqrt_t1t2();
        let t = ExtScalar::from_scalar(Ring::mul(&Scalar::t1(), &Scalar::t2()));
        assert_eq!(Ring::mul(&s, &s), t);
    }

    #[test]
    fn is_squared() {
        let is = Ring::mul(&ExtScalar::i(), &ExtScalar::sqrt_t1t2());
        let t = ExtScalar::from_scalar(Ring::neg(&Ring::mul(&Scalar::t1(), &Scalar::t2())));
        assert_eq!(Ring::mul(&is, &is), t);
    }

    #[test]
    fn inverse_of_mixed_element() {
        let x = Ring::add(
            &Ring::add(&ExtScalar::one(), &ExtScalar::i()),
            &ExtScalar::sqrt_t1t2(),
        );
        let y = x.inv().unwrap();
        assert_eq!(Ring::mul(&x, &y), ExtScalar::one());
    }

    #[test]
    fn projection_guards_extension_coordinates() {
        let ok = ExtScalar::from_scalar(Scalar::t1());
        assert!(ok.project().is_ok());
        assert!(ExtScalar::i().project().is_err());
        // zero extension coordinates project losslessly
        let z = Ring::sub(&ExtScalar::i(), &ExtScalar::i());
        let back = Ring::add(&z, &ExtScalar::from_scalar(Scalar::t2()));
        assert_eq!(back.project().unwrap(), Scalar::t2());
    }

    #[test]
    fn powers_of_i() {
        assert_eq!(ExtScalar::i_pow(-1), Ring::neg(&ExtScalar::i()));
        assert_eq!(ExtScalar::minus_i_pow(-1), ExtScalar::i());
        assert_eq!(ExtScalar::i_pow(2), Ring::neg(&ExtScalar::one()));
    }
}
