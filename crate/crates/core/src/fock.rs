//! The Nakajima-basis Fock model of equivariant cohomology.
//!
//! Basis vectors |μ⟩ are indexed by partitions; the level-n subspace has
//! dimension p(n) and carries three pairings:
//!
//! - the bilinear intersection pairing
//!     η(μ, ν) = (-1)^{|μ|-ℓ(μ)} / (t1 t2)^{ℓ(μ)} · δ_{μν}/z(μ),
//! - its sign-free cousin η̃(μ, ν) = δ_{μν} / ((t1 t2)^{ℓ(μ)} z(μ)),
//! - the sesquilinear pairing ⟨f, g⟩_H, linear in f, with the bar
//!   t_i -> -t_i applied to g's coefficients.
//!
//! Creation α_{-k} adds a part k; annihilation α_k removes one, with
//! [α_k, α_l] = k δ_{k+l}. In the normalized basis this reads
//! α_{-k}|μ⟩ = k (m_k(μ)+1) |μ ∪ k⟩ and α_k|μ⟩ = |μ \ k⟩.
//!
//! The operator of quantum multiplication by the divisor class acts on
//! the level-n subspace through a diagonal part whose q-dependence enters
//! via ((-q)^k + 1)/((-q)^k - 1) = -1 - 2 Σ_{j≥1} (-q)^{jk}, plus the
//! classical splitting and joining terms. Matrix columns are assembled by
//! applying it symbolically to each basis vector.

use crate::algebra::{frac, mat_from_coeffs, Mat, QSeries, Rational, Ring, Scalar};
use crate::error::{Error, Result};
use crate::partitions::{enumerate_partitions, z_factor, Partition};
use std::collections::BTreeMap;

/// Finite linear combination of Nakajima basis vectors with Scalar
/// coefficients. Zero coefficients are pruned.
#[derive(Clone, PartialEq, Debug, Default)]
pub struct FockVector {
    entries: BTreeMap<Partition, Scalar>,
}

impl FockVector {
    pub fn zero() -> Self {
        FockVector::default()
    }

    pub fn basis(mu: Partition) -> Self {
        let mut v = FockVector::zero();
        v.add_term(mu, Ring::one());
        v
    }

    /// The vacuum — the empty partition with coefficient 1.
    pub fn vacuum() -> Self {
        Self::basis(Partition::empty())
    }

    /// The unit |1^n⟩ of the level-n subspace.
    pub fn unit(n: u32) -> Self {
        Self::basis(Partition::new(vec![1; n as usize]))
    }

    pub fn add_term(&mut self, mu: Partition, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.entries.entry(mu) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let s = Ring::add(e.get(), &c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Partition, &Scalar)> {
        self.entries.iter()
    }

    pub fn coeff(&self, mu: &Partition) -> Scalar {
        self.entries.get(mu).cloned().unwrap_or_else(Ring::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (mu, c) in rhs.entries() {
            out.add_term(mu.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = FockVector::zero();
        for (mu, a) in self.entries() {
            out.add_term(mu.clone(), Ring::mul(a, c));
        }
        out
    }

    /// All entries lie at a single level |μ| = n; `None` for the zero vector.
    pub fn level(&self) -> Option<u32> {
        let mut it = self.entries.keys();
        let first = it.next()?.size();
        debug_assert!(it.all(|m| m.size() == first));
        Some(first)
    }

    /// Coordinates with respect to the fixed partition order at level n.
    pub fn coordinates(&self, n: u32) -> Vec<Scalar> {
        enumerate_partitions(n)
            .iter()
            .map(|mu| self.coeff(mu))
            .collect()
    }

    pub fn from_coordinates(n: u32, coords: &[Scalar]) -> Self {
        let parts = enumerate_partitions(n);
        assert_eq!(parts.len(), coords.len());
        let mut v = FockVector::zero();
        for (mu, c) in parts.into_iter().zip(coords.iter()) {
            v.add_term(mu, c.clone());
        }
        v
    }
}

/// Apply α_k (k ≠ 0): creation for k < 0, annihilation for k > 0.
pub fn alpha_apply(k: i64, v: &FockVector) -> Result<FockVector> {
    if k == 0 {
        return Err(Error::ZeroAlphaIndex);
    }
    let mut out = FockVector::zero();
    for (mu, c) in v.entries() {
        if k < 0 {
            let part = (-k) as u32;
            let mult = mu.multiplicity(part) as i64 + 1;
            let factor = Scalar::from_int((-k) * mult);
            out.add_term(mu.with_part(part), Ring::mul(c, &factor));
        } else if let Some(nu) = mu.without_part(k as u32) {
            out.add_term(nu, c.clone());
        }
    }
    Ok(out)
}

/// η(μ, ν) on basis vectors.
pub fn pairing_eta_basis(mu: &Partition, nu: &Partition) -> Result<Scalar> {
    if mu.size() != nu.size() {
        return Err(Error::SizeMismatch(mu.to_string(), nu.to_string()));
    }
    if mu != nu {
        return Ok(Ring::zero());
    }
    let l = mu.length() as i64;
    let sign = if (mu.size() as i64 - l) % 2 == 0 { 1 } else { -1 };
    let t1t2 = Ring::mul(&Scalar::t1(), &Scalar::t2());
    let base = Ring::mul(
        &Scalar::from_int(sign),
        &t1t2.pow(-l),
    );
    let z = Scalar::from_rational(&z_factor(mu));
    Ok(Ring::mul(&base, &z.inv().unwrap()))
}

/// η̃(μ, ν) on basis vectors (no sign).
pub fn pairing_eta_tilde_basis(mu: &Partition, nu: &Partition) -> Result<Scalar> {
    if mu.size() != nu.size() {
        return Err(Error::SizeMismatch(mu.to_string(), nu.to_string()));
    }
    if mu != nu {
        return Ok(Ring::zero());
    }
    let l = mu.length() as i64;
    let t1t2 = Ring::mul(&Scalar::t1(), &Scalar::t2());
    let z = Scalar::from_rational(&z_factor(mu));
    Ok(Ring::mul(&t1t2.pow(-l), &z.inv().unwrap()))
}

/// Bilinear extension of η to vectors.
pub fn pairing_eta(f: &FockVector, g: &FockVector) -> Result<Scalar> {
    let mut acc: Scalar = Ring::zero();
    for (mu, a) in f.entries() {
        let b = g.coeff(mu);
        if b.is_zero() {
            continue;
        }
        let p = pairing_eta_basis(mu, mu)?;
        acc = Ring::add(&acc, &Ring::mul(&Ring::mul(a, &b), &p));
    }
    Ok(acc)
}

/// Hermitian pairing: linear in f, bar t_i -> -t_i on g's coefficients,
/// ⟨μ|μ⟩_H = 1/((t1 t2)^{ℓ(μ)} z(μ)).
pub fn pairing_hermitian(f: &FockVector, g: &FockVector) -> Result<Scalar> {
    let mut acc: Scalar = Ring::zero();
    for (mu, a) in f.entries() {
        let b = g.coeff(mu);
        if b.is_zero() {
            continue;
        }
        let p = pairing_eta_tilde_basis(mu, mu)?;
        acc = Ring::add(&acc, &Ring::mul(&Ring::mul(a, &b.bar()), &p));
    }
    Ok(acc)
}

/// Diagonal Gram matrix of η at level n in the fixed partition order.
pub fn eta_gram(n: u32) -> Mat<Scalar> {
    let parts = enumerate_partitions(n);
    Mat::diag(
        &parts
            .iter()
            .map(|mu| pairing_eta_basis(mu, mu).unwrap())
            .collect::<Vec<_>>(),
    )
}

/// Check (α_k)^* = (-1)^{k-1} (t1 t2)^{sgn(k)} α_{-k} against η on all
/// basis pairs at levels ≤ max_level.
pub fn adjoint_check(k: i64, max_level: u32) -> bool {
    assert!(k != 0);
    let t1t2 = Ring::mul(&Scalar::t1(), &Scalar::t2());
    let sign = if (k.unsigned_abs() as i64 - 1) % 2 == 0 { 1 } else { -1 };
    let sgn_k = if k > 0 { 1 } else { -1 };
    let factor = Ring::mul(&Scalar::from_int(sign), &t1t2.pow(sgn_k));
    for n in 0..=max_level as i64 {
        // η(α_k f, g) pairs level n - k against g, so g lives at level n - k.
        let gl = n - k;
        if gl < 0 {
            continue;
        }
        for mu in enumerate_partitions(n as u32) {
            let f = FockVector::basis(mu);
            let akf = alpha_apply(k, &f).unwrap();
            for nu in enumerate_partitions(gl as u32) {
                let g = FockVector::basis(nu.clone());
                let lhs = pairing_eta(&akf, &g).unwrap_or_else(|_| Ring::zero());
                let amg = alpha_apply(-k, &g).unwrap();
                let rhs = Ring::mul(&factor, &pairing_eta(&f, &amg).unwrap_or_else(|_| Ring::zero()));
                if lhs != rhs {
                    return false;
                }
            }
        }
    }
    true
}

/// q-coefficient matrices of the divisor multiplication operator on the
/// level-n subspace: entry (row ν, column μ) of the q^j slice is the |ν⟩
/// coefficient of the q^j part of the operator applied to |μ⟩.
pub fn build_md_coeffs(n: u32, q_order: usize) -> Vec<Mat<Scalar>> {
    let parts = enumerate_partitions(n);
    let p = parts.len();
    let index: BTreeMap<&Partition, usize> =
        parts.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let t_sum = Ring::add(&Scalar::t1(), &Scalar::t2());
    let t1t2 = Ring::mul(&Scalar::t1(), &Scalar::t2());

    let mut coeffs: Vec<Mat<Scalar>> = vec![Mat::zero(p, p); q_order + 1];

    // Classical (q^0) slice: diagonal specialization at -1 of the
    // q-factors, plus the splitting and joining terms.
    for (col, mu) in parts.iter().enumerate() {
        // Diagonal: (t1+t2) Σ_k (k/2) f_k(q) k m_k(μ) - ((t1+t2)/2) f_1(q) n,
        // with f_k(0) = -1 and f_k q^j coefficient -2(-1)^j for k | j.
        let mut classical = Rational::from_integer(0.into());
        for k in 1..=n {
            let mk = mu.multiplicity(k) as i64;
            if mk == 0 {
                continue;
            }
            classical += Rational::from_integer((-(k as i64) * (k as i64) * mk).into())
                * Rational::new(1.into(), 2.into());
        }
        classical += Rational::new((n as i64).into(), 2.into());
        coeffs[0][(col, col)] = Ring::mul(&t_sum, &Scalar::from_rational(&classical));
        for j in 1..=q_order {
            let mut diag = Rational::from_integer(0.into());
            let sign = if j % 2 == 0 { 1 } else { -1 };
            for k in 1..=n {
                if j % (k as usize) != 0 {
                    continue;
                }
                let mk = mu.multiplicity(k) as i64;
                if mk == 0 {
                    continue;
                }
                // (k/2) * (-2 (-1)^j) * k * m_k
                diag += Rational::from_integer((-sign * (k as i64) * (k as i64) * mk).into());
            }
            // -(t1+t2)/2 * (-2 (-1)^j) * n
            diag += Rational::from_integer((sign * n as i64).into());
            coeffs[j][(col, col)] = Ring::mul(&t_sum, &Scalar::from_rational(&diag));
        }

        // Splitting: (1/2) t1 t2 α_{k+l} α_{-k} α_{-l}.
        let v = FockVector::basis(mu.clone());
        for k in 1..=n as i64 {
            for l in 1..=n as i64 {
                if k + l > n as i64 {
                    continue;
                }
                let w = alpha_apply(-l, &v).unwrap();
                let w = alpha_apply(-k, &w).unwrap();
                let w = alpha_apply(k + l, &w).unwrap();
                for (nu, c) in w.entries() {
                    let row = index[nu];
                    let term = Ring::mul(&Ring::mul(&frac(1, 2), &t1t2), c);
                    coeffs[0][(row, col)] = Ring::add(&coeffs[0][(row, col)], &term);
                }
                // Joining: -(1/2) α_{-k-l} α_k α_l.
                let w = alpha_apply(l, &v).unwrap();
                let w = alpha_apply(k, &w).unwrap();
                let w = alpha_apply(-(k + l), &w).unwrap();
                for (nu, c) in w.entries() {
                    let row = index[nu];
                    let term = Ring::mul(&frac(-1, 2), c);
                    coeffs[0][(row, col)] = Ring::add(&coeffs[0][(row, col)], &term);
                }
            }
        }
    }
    coeffs
}

/// The divisor multiplication matrix with q-series entries.
pub fn build_md(n: u32, q_order: usize) -> Mat<QSeries> {
    mat_from_coeffs(&build_md_coeffs(n, q_order), q_order)
}

/// Genus-0 series ⟨μ¹, (2,1^{n-2}), μ²⟩ summed over degrees: the η-pairing
/// of |μ¹⟩ against minus the divisor operator applied to |μ²⟩.
pub fn three_point_series(mu1: &Partition, mu2: &Partition, n: u32, q_order: usize) -> Result<QSeries> {
    if mu1.size() != n || mu2.size() != n {
        return Err(Error::SizeMismatch(mu1.to_string(), mu2.to_string()));
    }
    let parts = enumerate_partitions(n);
    let md = build_md_coeffs(n, q_order);
    let col: usize = parts.iter().position(|m| m == mu2).unwrap();
    let mut out = QSeries::zero(q_order);
    for j in 0..=q_order {
        let mut acc: Scalar = Ring::zero();
        for (row, nu) in parts.iter().enumerate() {
            let c = &md[j][(row, col)];
            if c.is_zero() {
                continue;
            }
            let p = pairing_eta_basis(mu1, nu)?;
            if p.is_zero() {
                continue;
            }
            acc = Ring::add(&acc, &Ring::mul(&Ring::neg(c), &p));
        }
        out.set_coeff(j, acc);
    }
    Ok(out)
}
