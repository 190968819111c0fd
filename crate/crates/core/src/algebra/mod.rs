//! Exact arithmetic: rationals, the field `Q(t1,t2)`, its quadratic
//! extensions, truncated series, matrices, Bernoulli data, and rational
//! reconstruction.

pub mod bernoulli;
pub mod ext;
pub mod matrix;
pub mod poly;
pub mod ratrecon;
pub mod scalar;
pub mod series;

pub use bernoulli::{bernoulli_number, bernoulli_polynomial, bernoulli_polynomial_in, binomial};
pub use ext::ExtScalar;
pub use matrix::{mat_coeff, mat_from_coeffs, series_mat_inverse, Mat};
pub use poly::{Mono, PolyZ};
pub use ratrecon::{rational_reconstruct, RationalFunction};
pub use scalar::{frac, Rational, Ring, Scalar};
pub use series::{QSeries, Series};

use serde::Serialize;

/// Rational function of q over the base field.
pub type QRational = RationalFunction<Scalar>;

/// Basis tag carried by matrix-valued series.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BasisLabel {
    Nakajima,
    FixedPoint,
    UnnormalizedIdempotent,
}

/// Matrix-valued truncated series in z: one square matrix of q-series per
/// z-degree 0..=K, all of the same dimension.
#[derive(Clone, PartialEq, Debug)]
pub struct ZMatrixSeries {
    pub basis: BasisLabel,
    coeffs: Vec<Mat<QSeries>>,
}

impl ZMatrixSeries {
    pub fn new(coeffs: Vec<Mat<QSeries>>, basis: BasisLabel) -> Self {
        assert!(!coeffs.is_empty());
        let dim = coeffs[0].rows();
        for m in &coeffs {
            assert!(m.is_square() && m.rows() == dim, "ragged z-series");
        }
        ZMatrixSeries { basis, coeffs }
    }

    pub fn z_order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn dim(&self) -> usize {
        self.coeffs[0].rows()
    }

    pub fn coeff(&self, k: usize) -> &Mat<QSeries> {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[Mat<QSeries>] {
        &self.coeffs
    }

    /// z-series inverse; the z^0 slice must be the identity.
    pub fn z_inverse(&self) -> Self {
        assert!(self.coeffs[0].is_identity(), "z^0 slice must be identity");
        let n = self.dim();
        let k_max = self.z_order();
        let mut inv: Vec<Mat<QSeries>> = vec![self.coeffs[0].clone()];
        for k in 1..=k_max {
            let mut acc = Mat::zero(n, n);
            for j in 1..=k {
                acc = acc.add(&self.coeffs[j].mul(&inv[k - j]));
            }
            inv.push(acc.neg());
        }
        ZMatrixSeries {
            basis: self.basis,
            coeffs: inv,
        }
    }

    /// Apply z -> -z (alternating signs on the coefficients).
    pub fn negate_z(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, m)| if k % 2 == 1 { m.neg() } else { m.clone() })
            .collect();
        ZMatrixSeries {
            basis: self.basis,
            coeffs,
        }
    }

    /// Conjugate every z-coefficient: P * M_k * Pinv.
    pub fn conjugate(&self, p: &Mat<QSeries>, p_inv: &Mat<QSeries>, basis: BasisLabel) -> Self {
        let coeffs = self.coeffs.iter().map(|m| p.mul(m).mul(p_inv)).collect();
        ZMatrixSeries { basis, coeffs }
    }

    /// Act on a vector of q-series: returns the z-coefficients of R(z) v.
    pub fn apply(&self, v: &[QSeries]) -> Vec<Vec<QSeries>> {
        self.coeffs.iter().map(|m| m.apply(v)).collect()
    }
}
