//! Bernoulli numbers and polynomials, exact.
//!
//! Conventions: B_m are the Taylor coefficients of t/(e^t - 1), so
//! B_1 = -1/2, and B_m(x) are defined by t e^{xt}/(e^t - 1).

use super::scalar::{Rational, Ring, Scalar};
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Binomial coefficient as a big integer.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// B_m from the recurrence sum_{j=0}^{m} C(m+1, j) B_j = 0, B_0 = 1.
pub fn bernoulli_number(m: u32) -> Rational {
    let mut b: Vec<Rational> = Vec::with_capacity(m as usize + 1);
    for k in 0..=m as u64 {
        if k == 0 {
            b.push(<Rational as Ring>::one());
            continue;
        }
        let mut acc = <Rational as Ring>::zero();
        for (j, bj) in b.iter().enumerate() {
            acc += Rational::from_integer(binomial(k + 1, j as u64)) * bj;
        }
        let denom = Rational::from_integer(BigInt::from(k + 1));
        b.push(-acc / denom);
    }
    b[m as usize].clone()
}

/// B_m(x) = sum_k C(m, k) B_k x^{m-k}, for x in any coefficient ring.
pub fn bernoulli_polynomial_in<T: Ring>(m: u32, x: &T) -> T {
    let mut acc = T::zero();
    for k in 0..=m {
        let c = Rational::from_integer(binomial(m as u64, k as u64)) * bernoulli_number(k);
        let mut term = T::from_rational(&c);
        for _ in 0..(m - k) {
            term = term.mul(x);
        }
        acc = acc.add(&term);
    }
    acc
}

/// B_m evaluated at a base-field scalar.
pub fn bernoulli_polynomial(m: u32, x: &Scalar) -> Scalar {
    bernoulli_polynomial_in(m, x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::frac;

    fn q(a: i64, b: i64) -> Rational {
        Rational::new(BigInt::from(a), BigInt::from(b))
    }

    /// Independent oracle: expand t/(e^t - 1) as a truncated series over Q
    /// by inverting (e^t - 1)/t.
    fn bernoulli_by_series(m: usize) -> Rational {
        use crate::algebra::series::Series;
        let order = m + 1;
        // (e^t - 1)/t = sum_{k>=0} t^k/(k+1)!
        let mut s: Series<Rational> = Series::zero(order);
        let mut fact = BigInt::one();
        for k in 0..=order {
            fact *= k as u64 + 1;
            s.set_coeff(k, Rational::new(BigInt::one(), fact.clone()));
        }
        let inv = s.inverse().unwrap();
        let mut mfact = BigInt::one();
        for k in 1..=m {
            mfact *= k;
        }
        inv.coeff(m) * Rational::from_integer(mfact)
    }

    #[test]
    fn small_bernoulli_numbers() {
        assert_eq!(bernoulli_number(0), q(1, 1));
        assert_eq!(bernoulli_number(1), q(-1, 2));
        // derived via the generating-function oracle
        assert_eq!(bernoulli_by_series(2), q(1, 6));
        assert_eq!(bernoulli_number(2), q(1, 6));
        assert_eq!(bernoulli_by_series(4), q(-1, 30));
        assert_eq!(bernoulli_number(4), q(-1, 30));
        assert_eq!(bernoulli_number(3), q(0, 1));
        for m in 0..=12 {
            assert_eq!(bernoulli_number(m), bernoulli_by_series(m as usize));
        }
    }

    #[test]
    fn polynomial_at_zero_is_the_number() {
        for m in 0..=8 {
            let v = bernoulli_polynomial(m, &frac(0, 1));
            assert_eq!(v.as_rational().unwrap(), bernoulli_number(m));
        }
        assert_eq!(
            bernoulli_polynomial(1, &frac(0, 1)).as_rational().unwrap(),
            q(-1, 2)
        );
    }

    #[test]
    fn multiplication_identity_over_residues() {
        // sum_{l=0}^{r-1} B_m(l/r) = B_m / r^{m-1}
        for m in 1..=6u32 {
            for r in 1..=5i64 {
                let mut acc = <Rational as Ring>::zero();
                for l in 0..r {
                    let x = frac(l, r);
                    acc += bernoulli_polynomial(m, &x).as_rational().unwrap();
                }
                let mut scale = <Rational as Ring>::one();
                for _ in 0..(m as i64 - 1) {
                    scale /= q(r, 1);
                }
                assert_eq!(acc, bernoulli_number(m) * scale, "m={} r={}", m, r);
            }
        }
    }
}
