//! The coefficient field `Q(t1, t2)` and the `Ring` abstraction.
//!
//! A [`Scalar`] is a reduced fraction of integer-coefficient polynomials.
//! Canonical form: numerator and denominator have no common polynomial
//! factor, their integer contents are coprime, and the denominator's
//! leading coefficient is positive. Equal values therefore compare equal
//! structurally, whatever expression tree produced them.

use super::poly::{Mono, PolyZ};
use num_bigint::BigInt;
use num_traits::Signed;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Arbitrary-precision rational number.
pub type Rational = num_rational::BigRational;

/// Coefficient ring interface used by the generic series and matrix code.
///
/// `inv` returns `None` when the element is not invertible; fields return
/// `None` only for zero.
pub trait Ring: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Option<Self>;
    fn from_rational(r: &Rational) -> Self;

    fn from_int(k: i64) -> Self {
        Self::from_rational(&Rational::from_integer(BigInt::from(k)))
    }
}

impl Ring for Rational {
    fn zero() -> Self {
        num_traits::Zero::zero()
    }
    fn one() -> Self {
        num_traits::One::one()
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        if num_traits::Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
}

/// Element of `Q(t1, t2)` in canonical reduced form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Scalar {
    num: PolyZ,
    den: PolyZ,
}

impl Scalar {
    fn reduce(num: PolyZ, den: PolyZ) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Scalar {
                num: PolyZ::zero(),
                den: PolyZ::one(),
            };
        }
        let g = PolyZ::gcd(&num, &den);
        let mut num = num.div_exact(&g);
        let mut den = den.div_exact(&g);
        let (d, flipped) = den.normalize_sign();
        den = d;
        if flipped {
            num = num.neg();
        }
        Scalar { num, den }
    }

    pub fn from_polys(num: PolyZ, den: PolyZ) -> Self {
        Self::reduce(num, den)
    }

    pub fn from_poly(num: PolyZ) -> Self {
        Scalar {
            num,
            den: PolyZ::one(),
        }
    }

    pub fn t1() -> Self {
        Self::from_poly(PolyZ::var1())
    }

    pub fn t2() -> Self {
        Self::from_poly(PolyZ::var2())
    }

    pub fn numerator(&self) -> &PolyZ {
        &self.num
    }

    pub fn denominator(&self) -> &PolyZ {
        &self.den
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True if the value lies in Q.
    pub fn is_rational(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn pow(&self, e: i64) -> Self {
        if e == 0 {
            return <Scalar as Ring>::one();
        }
        let p = if e > 0 {
            self.clone()
        } else {
            self.inv().expect("zero base with negative exponent")
        };
        let mut acc = <Scalar as Ring>::one();
        for _ in 0..e.unsigned_abs() {
            acc = Ring::mul(&acc, &p);
        }
        acc
    }

    /// Coefficient bar: t1 -> -t1, t2 -> -t2.
    pub fn bar(&self) -> Self {
        Scalar::reduce(self.num.bar(), self.den.bar())
    }

    /// Swap t1 and t2.
    pub fn swap_vars(&self) -> Self {
        Scalar::reduce(self.num.swap_vars(), self.den.swap_vars())
    }

    /// Exact evaluation at rational parameter values. `None` if the
    /// denominator vanishes there.
    pub fn eval(&self, x1: &Rational, x2: &Rational) -> Option<Rational> {
        let d = self.den.eval_rational(x1, x2);
        if num_traits::Zero::is_zero(&d) {
            return None;
        }
        Some(self.num.eval_rational(x1, x2) / d)
    }

    /// The value as a rational number, if it is one.
    pub fn as_rational(&self) -> Option<Rational> {
        if !self.is_rational() {
            return None;
        }
        let n = self.num.coeff(Mono(0, 0));
        let d = self.den.coeff(Mono(0, 0));
        Some(Rational::new(n, d))
    }

    /// Canonical string form `P(t1,t2)/Q(t1,t2)`, denominator omitted when 1.
    pub fn canonical_string(&self) -> String {
        let n = self.num.format_with("t1", "t2");
        if self.den.is_one() {
            return n;
        }
        let d = self.den.format_with("t1", "t2");
        // Parenthesize anything that is not a single atomic token.
        let wrap = |s: String| {
            if s.contains('*') || s.contains(' ') {
                format!("({})", s)
            } else {
                s
            }
        };
        format!("{}/{}", wrap(n), wrap(d))
    }
}

impl Ring for Scalar {
    fn zero() -> Self {
        Scalar {
            num: PolyZ::zero(),
            den: PolyZ::one(),
        }
    }

    fn one() -> Self {
        Scalar {
            num: PolyZ::one(),
            den: PolyZ::one(),
        }
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn add(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            let num = self.num.add(&rhs.num);
            if num.is_zero() {
                return <Scalar as Ring>::zero();
            }
            // common factors of num and den divide den; one gcd suffices
            let g = PolyZ::gcd(&num, &self.den);
            let mut num = num;
            let mut den = self.den.clone();
            if !g.is_one() {
                num = num.div_exact(&g);
                den = den.div_exact(&g);
            }
            let (d, flipped) = den.normalize_sign();
            return Scalar {
                num: if flipped { num.neg() } else { num },
                den: d,
            };
        }
        // Henrici: with g = gcd(d1, d2) the only cleanup needed is against g.
        let g = PolyZ::gcd(&self.den, &rhs.den);
        if g.is_one() {
            let num = self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den));
            let den = self.den.mul(&rhs.den);
            // reduced inputs with coprime denominators stay reduced
            let (d, flipped) = den.normalize_sign();
            return Scalar {
                num: if flipped { num.neg() } else { num },
                den: d,
            };
        }
        let d1g = self.den.div_exact(&g);
        let d2g = rhs.den.div_exact(&g);
        let t = self.num.mul(&d2g).add(&rhs.num.mul(&d1g));
        if t.is_zero() {
            return <Scalar as Ring>::zero();
        }
        let g2 = PolyZ::gcd(&t, &g);
        let (num, den) = if g2.is_one() {
            (t, self.den.mul(&d2g))
        } else {
            (t.div_exact(&g2), self.den.div_exact(&g2).mul(&d2g))
        };
        let (d, flipped) = den.normalize_sign();
        Scalar {
            num: if flipped { num.neg() } else { num },
            den: d,
        }
    }

    fn sub(&self, rhs: &Self) -> Self {
        Ring::add(self, &Ring::neg(rhs))
    }

    fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return <Scalar as Ring>::zero();
        }
        // Cross-reduce before multiplying to keep intermediates small.
        let g1 = PolyZ::gcd(&self.num, &rhs.den);
        let g2 = PolyZ::gcd(&rhs.num, &self.den);
        let n1 = self.num.div_exact(&g1);
        let d2 = rhs.den.div_exact(&g1);
        let n2 = rhs.num.div_exact(&g2);
        let d1 = self.den.div_exact(&g2);
        let mut num = n1.mul(&n2);
        let mut den = d1.mul(&d2);
        // Inputs reduced, so only the sign needs fixing.
        let (d, flipped) = den.normalize_sign();
        den = d;
        if flipped {
            num = num.neg();
        }
        Scalar { num, den }
    }

    fn neg(&self) -> Self {
        Scalar {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let (mut num, mut den) = (self.den.clone(), self.num.clone());
        let (d, flipped) = den.normalize_sign();
        den = d;
        if flipped {
            num = num.neg();
        }
        Some(Scalar { num, den })
    }

    fn from_rational(r: &Rational) -> Self {
        let den = r.denom().clone();
        debug_assert!(den.is_positive());
        Scalar {
            num: PolyZ::constant(r.numer().clone()),
            den: PolyZ::constant(den),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_string())
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident, $ring:ident) => {
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Ring::$ring(&self, &rhs)
            }
        }
        impl<'a> $trait<&'a Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                Ring::$ring(self, rhs)
            }
        }
    };
}

scalar_binop!(Add, add, add);
scalar_binop!(Sub, sub, sub);
scalar_binop!(Mul, mul, mul);

impl Div for Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        Ring::mul(&self, &rhs.inv().expect("division by zero scalar"))
    }
}

impl<'a> Div<&'a Scalar> for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &'a Scalar) -> Scalar {
        Ring::mul(self, &rhs.inv().expect("division by zero scalar"))
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Ring::neg(&self)
    }
}

/// `a/b` as a scalar, for readable test fixtures.
pub fn frac(a: i64, b: i64) -> Scalar {
    Scalar::from_rational(&Rational::new(BigInt::from(a), BigInt::from(b)))
}
