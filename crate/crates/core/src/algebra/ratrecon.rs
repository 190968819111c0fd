//! Rational reconstruction of truncated series.
//!
//! Finds P(q)/Q(q) with deg P, deg Q <= d whose Taylor expansion matches
//! every available coefficient of the input, or reports that no such form
//! exists within the degree bound. The two failure modes (not enough
//! coefficients; no rational form) are distinct errors.

use super::scalar::Ring;
use super::series::Series;
use crate::error::{Error, Result};

/// Rational function of the series variable with coefficients in T.
/// Normalized so the denominator's constant term is 1.
#[derive(Clone, PartialEq, Debug)]
pub struct RationalFunction<T: Ring> {
    pub num: Vec<T>,
    pub den: Vec<T>,
}

impl<T: Ring> RationalFunction<T> {
    /// Taylor expansion to the given order.
    pub fn expand(&self, order: usize) -> Series<T> {
        let mut num = Series::zero(order);
        for (k, c) in self.num.iter().enumerate().take(order + 1) {
            num.set_coeff(k, c.clone());
        }
        let mut den = Series::zero(order);
        for (k, c) in self.den.iter().enumerate().take(order + 1) {
            den.set_coeff(k, c.clone());
        }
        num.div(&den).expect("denominator with unit constant term")
    }

    /// Structural degree data after trailing-zero trimming.
    pub fn degrees(&self) -> (usize, usize) {
        let d = |v: &[T]| v.iter().rposition(|c| !c.is_zero()).unwrap_or(0);
        (d(&self.num), d(&self.den))
    }

    /// Equality as rational functions: cross-multiplied polynomial identity.
    pub fn equivalent(&self, other: &Self) -> bool {
        let conv = |a: &[T], b: &[T]| {
            let mut out = vec![T::zero(); a.len() + b.len()];
            for (i, x) in a.iter().enumerate() {
                for (j, y) in b.iter().enumerate() {
                    out[i + j] = out[i + j].add(&x.mul(y));
                }
            }
            out
        };
        let lhs = conv(&self.num, &other.den);
        let rhs = conv(&other.num, &self.den);
        let n = lhs.len().max(rhs.len());
        (0..n).all(|k| {
            let a = lhs.get(k).cloned().unwrap_or_else(T::zero);
            let b = rhs.get(k).cloned().unwrap_or_else(T::zero);
            a == b
        })
    }

    /// Evaluate at a ring element; `None` when the denominator vanishes.
    pub fn eval_at(&self, x: &T) -> Option<T> {
        let horner = |v: &[T]| {
            let mut acc = T::zero();
            for c in v.iter().rev() {
                acc = acc.mul(x).add(c);
            }
            acc
        };
        let d = horner(&self.den);
        let di = d.inv()?;
        Some(horner(&self.num).mul(&di))
    }
}

/// Reconstruct a rational form of numerator/denominator degree <= max_deg
/// from a series with at least 2*max_deg + 2 known coefficients.
pub fn rational_reconstruct<T: Ring>(
    s: &Series<T>,
    max_deg: usize,
) -> Result<RationalFunction<T>> {
    let have = s.order() + 1;
    let need = 2 * max_deg + 2;
    if have < need {
        return Err(Error::InsufficientCoefficients { have, need });
    }
    let d = max_deg;
    let n = s.order();

    // Unknowns Q_1..Q_d with Q_0 = 1. Equations from orders d+1..n:
    //   sum_{j=0..d} Q_j c_{k-j} = 0.
    let rows = n - d;
    let mut system: Vec<Vec<T>> = Vec::with_capacity(rows);
    let mut rhs: Vec<T> = Vec::with_capacity(rows);
    for k in (d + 1)..=n {
        let row: Vec<T> = (1..=d)
            .map(|j| if k >= j { s.coeff(k - j) } else { T::zero() })
            .collect();
        system.push(row);
        rhs.push(s.coeff(k).neg());
    }
    let q = solve_least_constrained(system, rhs, d)?;

    let mut den = vec![T::one()];
    den.extend(q);
    let mut num = vec![T::zero(); d + 1];
    for (k, slot) in num.iter_mut().enumerate() {
        let mut acc = T::zero();
        for (j, qj) in den.iter().enumerate().take(k + 1) {
            acc = acc.add(&qj.mul(&s.coeff(k - j)));
        }
        *slot = acc;
    }
    let rf = RationalFunction { num, den };

    // Every available coefficient must be reproduced.
    let expanded = rf.expand(n);
    for k in 0..=n {
        if expanded.coeff(k) != s.coeff(k) {
            return Err(Error::NoRationalForm(max_deg));
        }
    }
    Ok(rf)
}

/// Solve a possibly overdetermined linear system by elimination; free
/// variables are set to zero. Errors when the equations are inconsistent.
fn solve_least_constrained<T: Ring>(
    mut a: Vec<Vec<T>>,
    mut b: Vec<T>,
    unknowns: usize,
) -> Result<Vec<T>> {
    let rows = a.len();
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; unknowns];
    let mut r = 0;
    for c in 0..unknowns {
        let Some(p) = (r..rows).find(|&i| a[i][c].inv().is_some()) else {
            continue;
        };
        a.swap(r, p);
        b.swap(r, p);
        let pinv = a[r][c].inv().unwrap();
        for x in a[r].iter_mut() {
            *x = x.mul(&pinv);
        }
        b[r] = b[r].mul(&pinv);
        for i in 0..rows {
            if i == r || a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone();
            for j in 0..unknowns {
                let t = f.mul(&a[r][j]);
                a[i][j] = a[i][j].sub(&t);
            }
            b[i] = b[i].sub(&f.mul(&b[r]));
        }
        pivot_of_col[c] = Some(r);
        r += 1;
        if r == rows {
            break;
        }
    }
    // Remaining rows must be 0 = 0.
    for i in r..rows {
        if a[i].iter().all(|x| x.is_zero()) && !b[i].is_zero() {
            return Err(Error::NoRationalForm(unknowns));
        }
    }
    let mut x = vec![T::zero(); unknowns];
    for c in 0..unknowns {
        if let Some(row) = pivot_of_col[c] {
            x[c] = b[row].clone();
        }
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::{frac, Scalar};
    use crate::algebra::series::QSeries;

    fn geometric(order: usize) -> QSeries {
        // 1/(1-q)
        let mut s = QSeries::zero(order);
        for k in 0..=order {
            s.set_coeff(k, frac(1, 1));
        }
        s
    }

    #[test]
    fn recovers_geometric_series() {
        let s = geometric(8);
        let rf = rational_reconstruct(&s, 2).unwrap();
        let want = RationalFunction {
            num: vec![frac(1, 1)],
            den: vec![frac(1, 1), frac(-1, 1)],
        };
        assert!(rf.equivalent(&want));
    }

    #[test]
    fn recovers_one_plus_q_over_one_minus_q() {
        // (1+q)/(1-q) = 1 + 2q + 2q^2 + ...
        let mut s = QSeries::zero(8);
        s.set_coeff(0, frac(1, 1));
        for k in 1..=8 {
            s.set_coeff(k, frac(2, 1));
        }
        let rf = rational_reconstruct(&s, 2).unwrap();
        let want = RationalFunction {
            num: vec![frac(1, 1), frac(1, 1)],
            den: vec![frac(1, 1), frac(-1, 1)],
        };
        assert!(rf.equivalent(&want));
        assert_eq!(rf.expand(8), s);
    }

    #[test]
    fn insufficient_coefficients_is_distinct() {
        let s = geometric(3);
        match rational_reconstruct(&s, 2) {
            Err(Error::InsufficientCoefficients { have: 4, need: 6 }) => {}
            other => panic!("unexpected: {:?}", other),
        }
    }

    #[test]
    fn no_rational_form_reported() {
        // exp(q) has no rational form of degree <= 1
        let s = QSeries::x(7).exp().unwrap();
        match rational_reconstruct(&s, 1) {
            Err(Error::NoRationalForm(_)) => {}
            other => panic!("unexpected: {:?}", other),
        }
    }

    #[test]
    fn scalar_coefficients_with_poles() {
        // t1/(1 - q)^2 expanded, reconstructed with degree bound 2
        let order = 8;
        let one_minus_q = QSeries::one(order).sub(&QSeries::x(order));
        let series = QSeries::constant(Scalar::t1(), order)
            .div(&one_minus_q.mul(&one_minus_q))
            .unwrap();
        let rf = rational_reconstruct(&series, 2).unwrap();
        assert_eq!(rf.expand(order), series);
        let (dn, dd) = rf.degrees();
        assert!(dn <= 2 && dd == 2);
    }
}
