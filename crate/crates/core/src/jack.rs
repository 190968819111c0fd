//! Jack symmetric functions and the torus-fixed-point basis.
//!
//! The integral-form Jack function J_λ is computed as the unique element
//! of m_λ + span{m_μ : μ strictly dominated} orthogonal to all dominated
//! monomials under the α-deformed power-sum pairing
//! ⟨p_λ, p_μ⟩ = δ_{λμ} z(λ) α^{ℓ(λ)}, rescaled so the coefficient of
//! m_{1^n} is n!. The fixed-point class is the specialization
//!
//!     J^λ = t2^{|λ|} t1^{ℓ(·)} J_λ |_{α = -t1/t2},
//!
//! where t1^{ℓ(·)} scales the p_μ (equivalently Nakajima) component by
//! t1^{ℓ(μ)}. In the Nakajima basis this uses p_μ = z(μ) |μ⟩.
//!
//! The α-coefficient field is represented by [`Scalar`] with t1 playing
//! the role of α and t2 unused; the substitution α = -t1/t2 homogenizes
//! numerator and denominator back into genuine (t1, t2) functions.

use crate::algebra::{frac, Mat, Mono, PolyZ, Rational, Ring, Scalar};
use crate::error::{Error, Result};
use crate::fock::FockVector;
use crate::partitions::{dominates, enumerate_partitions, tangent_weights, z_factor, Partition};
use num_bigint::BigInt;
use std::collections::BTreeMap;

/// Target basis of a symmetric-function expansion.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SymBasis {
    Monomial,
    PowerSum,
    Schur,
    Nakajima,
}

/// Expansion of a symmetric function over a named basis.
#[derive(Clone, PartialEq, Debug)]
pub struct SymmetricFunctionExpansion {
    pub basis: SymBasis,
    pub coeffs: BTreeMap<Partition, Scalar>,
}

impl SymmetricFunctionExpansion {
    pub fn coeff(&self, mu: &Partition) -> Scalar {
        self.coeffs.get(mu).cloned().unwrap_or_else(Ring::zero)
    }
}

/// Expansion of p_μ over monomial symmetric functions, by iterated
/// multiplication with the rule
///   m_λ · p_k = m_k(λ∪k) · m_{λ∪k} + Σ_v m_{v+k}(μ) · m_μ,
/// μ running over λ with one part v bumped to v + k.
pub(crate) fn power_sum_in_monomials(mu: &Partition) -> BTreeMap<Partition, i64> {
    let mut acc: BTreeMap<Partition, i64> = BTreeMap::new();
    acc.insert(Partition::empty(), 1);
    for &k in mu.parts() {
        let mut next: BTreeMap<Partition, i64> = BTreeMap::new();
        for (lam, c) in acc.iter() {
            // append a new part k
            let grown = lam.with_part(k);
            let mult = grown.multiplicity(k) as i64;
            *next.entry(grown).or_insert(0) += c * mult;
            // bump one distinct part value v -> v + k
            let mut seen: Vec<u32> = Vec::new();
            for &v in lam.parts() {
                if seen.contains(&v) {
                    continue;
                }
                seen.push(v);
                let bumped = lam.without_part(v).unwrap().with_part(v + k);
                let mult = bumped.multiplicity(v + k) as i64;
                *next.entry(bumped).or_insert(0) += c * mult;
            }
        }
        acc = next;
    }
    acc
}

/// The matrix A with p_μ = Σ_λ A[λ][μ] m_λ.
pub(crate) fn power_to_monomial_matrix(parts: &[Partition]) -> Mat<Scalar> {
    let index: BTreeMap<&Partition, usize> =
        parts.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let p = parts.len();
    let mut a = Mat::zero(p, p);
    for (col, mu) in parts.iter().enumerate() {
        for (lam, c) in power_sum_in_monomials(mu) {
            a[(index[&lam], col)] = Scalar::from_int(c);
        }
    }
    a
}

/// Substitute α = -t1/t2 into a rational function of α (stored over t1).
fn substitute_alpha(f: &Scalar) -> Scalar {
    let homogenize = |p: &PolyZ, deg: u16| -> PolyZ {
        let mut out = PolyZ::zero();
        for (m, c) in p.terms() {
            assert_eq!(m.1, 0, "alpha-function must not involve t2");
            let k = m.0;
            let sign = if k % 2 == 1 { -1 } else { 1 };
            let term = PolyZ::monomial(Mono(k, deg - k), c * BigInt::from(sign));
            out = out.add(&term);
        }
        out
    };
    let dn = f.numerator().deg1();
    let dd = f.denominator().deg1();
    let d = dn.max(dd);
    Scalar::from_polys(homogenize(f.numerator(), d), homogenize(f.denominator(), d))
}

struct JackData {
    parts: Vec<Partition>,
    /// m-basis coordinates of J_λ per λ, over the α-field.
    monomial: Vec<Vec<Scalar>>,
    /// p-basis coordinates of J_λ per λ, over the α-field.
    power: Vec<Vec<Scalar>>,
}

fn jack_all(n: u32) -> JackData {
    let parts = enumerate_partitions(n);
    let p = parts.len();
    let a = power_to_monomial_matrix(&parts);
    let a_inv = a.inverse().expect("power-to-monomial transition inverts");
    let alpha = Scalar::t1();
    let z_diag: Vec<Scalar> = parts
        .iter()
        .map(|mu| {
            Ring::mul(
                &Scalar::from_rational(&z_factor(mu)),
                &alpha.pow(mu.length() as i64),
            )
        })
        .collect();
    // Gram matrix of the monomial basis: (A^{-1})^T Z A^{-1}.
    let gram = a_inv.transpose().mul(&Mat::diag(&z_diag)).mul(&a_inv);

    let mut monomial = Vec::with_capacity(p);
    let mut power = Vec::with_capacity(p);
    for (li, lam) in parts.iter().enumerate() {
        let lower: Vec<usize> = (0..p)
            .filter(|&j| j != li && dominates(lam, &parts[j]))
            .collect();
        let mut coords = vec![<Scalar as Ring>::zero(); p];
        coords[li] = Ring::one();
        if !lower.is_empty() {
            let d = lower.len();
            let sys = Mat::from_fn(d, d, |r, c| gram[(lower[r], lower[c])].clone());
            let rhs: Vec<Scalar> = lower.iter().map(|&r| Ring::neg(&gram[(r, li)])).collect();
            let u = sys.solve(&rhs).expect("Jack system is nondegenerate");
            for (j, &idx) in lower.iter().enumerate() {
                coords[idx] = u[j].clone();
            }
        }
        // integral form: coefficient of m_{1^n} must be n!
        let mut nf = Rational::from_integer(BigInt::from(1));
        for k in 1..=n as i64 {
            nf *= Rational::from_integer(BigInt::from(k));
        }
        let b = coords[p - 1].clone(); // (1^n) is last in the order
        let scale = Ring::mul(
            &Scalar::from_rational(&nf),
            &b.inv().expect("m_{1^n} coefficient of Jack is nonzero"),
        );
        let coords: Vec<Scalar> = coords.iter().map(|c| Ring::mul(c, &scale)).collect();
        let pc = a_inv.apply(&coords);
        monomial.push(coords);
        power.push(pc);
    }
    JackData {
        parts,
        monomial,
        power,
    }
}

/// Integral-form Jack function of λ expanded over power sums, with the
/// deformation parameter α embedded as t1.
pub fn jack_integral_form(lambda: &Partition) -> SymmetricFunctionExpansion {
    let data = jack_all(lambda.size());
    let li = data.parts.iter().position(|m| m == lambda).unwrap();
    let coeffs = data
        .parts
        .iter()
        .cloned()
        .zip(data.power[li].iter().cloned())
        .filter(|(_, c)| !c.is_zero())
        .collect();
    SymmetricFunctionExpansion {
        basis: SymBasis::PowerSum,
        coeffs,
    }
}

/// Same expansion over monomial symmetric functions.
pub fn jack_monomial_form(lambda: &Partition) -> SymmetricFunctionExpansion {
    let data = jack_all(lambda.size());
    let li = data.parts.iter().position(|m| m == lambda).unwrap();
    let coeffs = data
        .parts
        .iter()
        .cloned()
        .zip(data.monomial[li].iter().cloned())
        .filter(|(_, c)| !c.is_zero())
        .collect();
    SymmetricFunctionExpansion {
        basis: SymBasis::Monomial,
        coeffs,
    }
}

/// Transition data between the Nakajima basis and the fixed-point basis
/// {J^λ}. Columns of `transition` are the J^λ in Nakajima coordinates;
/// `euler` holds the tangent-weight products (equivariant Euler classes).
#[derive(Clone, Debug)]
pub struct FixedPointBasis {
    pub n: u32,
    pub parts: Vec<Partition>,
    pub transition: Mat<Scalar>,
    pub inverse: Mat<Scalar>,
    pub euler: Vec<Scalar>,
}

impl FixedPointBasis {
    /// J^λ as a Fock vector.
    pub fn class(&self, lambda: &Partition) -> FockVector {
        let col = self.parts.iter().position(|m| m == lambda).unwrap();
        FockVector::from_coordinates(self.n, &self.transition.column(col))
    }
}

/// Fixed-point classes of the level-n subspace.
pub fn fixed_point_classes(n: u32) -> FixedPointBasis {
    assert!(n >= 1);
    let data = jack_all(n);
    let p = data.parts.len();
    let t1 = Scalar::t1();
    let t2 = Scalar::t2();
    let t2n = t2.pow(n as i64);
    let transition = Mat::from_fn(p, p, |row, col| {
        let c = &data.power[col][row];
        if c.is_zero() {
            return Ring::zero();
        }
        let mu = &data.parts[row];
        let factor = Ring::mul(
            &t2n,
            &Ring::mul(
                &t1.pow(mu.length() as i64),
                &Scalar::from_rational(&z_factor(mu)),
            ),
        );
        Ring::mul(&substitute_alpha(c), &factor)
    });
    let inverse = transition.inverse().expect("fixed-point basis is a basis");
    let euler = data
        .parts
        .iter()
        .map(|lam| tangent_weights(lam).product())
        .collect();
    FixedPointBasis {
        n,
        parts: data.parts,
        transition,
        inverse,
        euler,
    }
}

/// Restriction μ|_η of a Nakajima class to the fixed point η, from the
/// localization expansion |μ⟩ = Σ_η (μ|_η / e(T_η)) J^η.
pub fn restriction(mu: &Partition, eta: &Partition) -> Result<Scalar> {
    if mu.size() != eta.size() {
        return Err(Error::SizeMismatch(mu.to_string(), eta.to_string()));
    }
    let basis = fixed_point_classes(mu.size());
    let row = basis.parts.iter().position(|m| m == eta).unwrap();
    let col = basis.parts.iter().position(|m| m == mu).unwrap();
    Ok(Ring::mul(&basis.inverse[(row, col)], &basis.euler[row]))
}

/// Restriction table: rows μ, columns η.
pub fn restriction_table(n: u32) -> Mat<Scalar> {
    let basis = fixed_point_classes(n);
    let p = basis.parts.len();
    Mat::from_fn(p, p, |mu_i, eta_i| {
        Ring::mul(&basis.inverse[(eta_i, mu_i)], &basis.euler[eta_i])
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{build_md_coeffs, pairing_eta, pairing_hermitian};
    use crate::partitions::{character, content_sum, hook_product};

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec())
    }

    #[test]
    fn power_sums_in_monomials_small() {
        // p_1^2 = m_2 + 2 m_{11}
        let e = power_sum_in_monomials(&p(&[1, 1]));
        assert_eq!(e[&p(&[2])], 1);
        assert_eq!(e[&p(&[1, 1])], 2);
        // p_2 p_1 = m_3 + m_{21}
        let e = power_sum_in_monomials(&p(&[2, 1]));
        assert_eq!(e[&p(&[3])], 1);
        assert_eq!(e[&p(&[2, 1])], 1);
        assert!(e.get(&p(&[1, 1, 1])).is_none());
    }

    #[test]
    fn jack_level_one_and_two() {
        // J_(1) = p_1
        let j = jack_integral_form(&p(&[1]));
        assert_eq!(j.coeff(&p(&[1])), frac(1, 1));
        // J_(2) = p_{11} + α p_2, J_(11) = p_{11} - p_2
        let alpha = Scalar::t1();
        let j2 = jack_integral_form(&p(&[2]));
        assert_eq!(j2.coeff(&p(&[1, 1])), frac(1, 1));
        assert_eq!(j2.coeff(&p(&[2])), alpha);
        let j11 = jack_integral_form(&p(&[1, 1]));
        assert_eq!(j11.coeff(&p(&[1, 1])), frac(1, 1));
        assert_eq!(j11.coeff(&p(&[2])), frac(-1, 1));
    }

    #[test]
    fn jack_orthogonality_under_alpha_pairing() {
        // ⟨J_λ, J_μ⟩ = 0 for λ ≠ μ with ⟨p_λ, p_μ⟩ = δ z(λ) α^{ℓ}
        let alpha = Scalar::t1();
        for n in 2..=4u32 {
            let parts = enumerate_partitions(n);
            let jacks: Vec<_> = parts.iter().map(jack_integral_form).collect();
            for i in 0..parts.len() {
                for j in 0..parts.len() {
                    if i == j {
                        continue;
                    }
                    let mut acc: Scalar = Ring::zero();
                    for mu in &parts {
                        let a = jacks[i].coeff(mu);
                        let b = jacks[j].coeff(mu);
                        if a.is_zero() || b.is_zero() {
                            continue;
                        }
                        let w = Ring::mul(
                            &Scalar::from_rational(&z_factor(mu)),
                            &alpha.pow(mu.length() as i64),
                        );
                        acc = Ring::add(&acc, &Ring::mul(&Ring::mul(&a, &b), &w));
                    }
                    assert!(acc.is_zero(), "n={} i={} j={}", n, i, j);
                }
            }
        }
    }

    #[test]
    fn alpha_one_specialization_is_hook_times_schur() {
        // J_λ|_{α=1} = H_λ s_λ with s_λ = Σ χ_λ(μ)/z(μ) p_μ, n ≤ 4.
        let one = Rational::from_integer(BigInt::from(1));
        for n in 1..=4u32 {
            for lam in enumerate_partitions(n) {
                let j = jack_integral_form(&lam);
                let hooks = hook_product(&lam);
                for mu in enumerate_partitions(n) {
                    let got = j.coeff(&mu).eval(&one, &one).expect("no pole at alpha = 1");
                    let want = hooks.clone() * character(&lam, &mu).unwrap() / z_factor(&mu);
                    assert_eq!(got, want, "λ={} μ={}", lam, mu);
                }
            }
        }
    }

    #[test]
    fn monomial_triangularity_under_dominance() {
        for n in 2..=5u32 {
            let parts = enumerate_partitions(n);
            for lam in &parts {
                let j = jack_monomial_form(lam);
                for mu in &parts {
                    if !j.coeff(mu).is_zero() {
                        assert!(dominates(lam, mu), "m_{} appears in J_{}", mu, lam);
                    }
                }
            }
        }
    }

    #[test]
    fn fixed_point_class_level_one() {
        let basis = fixed_point_classes(1);
        let j = basis.class(&p(&[1]));
        let t1t2 = Ring::mul(&Scalar::t1(), &Scalar::t2());
        assert_eq!(j.coeff(&p(&[1])), t1t2);
        // η(J, J) = t1 t2 = product of weights {t1, t2}
        let norm = pairing_eta(&j, &j).unwrap();
        assert_eq!(norm, t1t2);
    }

    #[test]
    fn eigenvector_property_and_norms() {
        // M_D(0) J^λ = -c(λ) J^λ and η(J^λ, J^λ) = Π tangent weights, n ≤ 4.
        for n in 1..=4u32 {
            let basis = fixed_point_classes(n);
            let m0 = &build_md_coeffs(n, 0)[0];
            for (li, lam) in basis.parts.iter().enumerate() {
                let col = basis.transition.column(li);
                let image = m0.apply(&col);
                let minus_c = Ring::neg(&content_sum(lam));
                for (a, b) in image.iter().zip(col.iter()) {
                    assert_eq!(*a, Ring::mul(&minus_c, b), "n={} λ={}", n, lam);
                }
                let v = FockVector::from_coordinates(n, &col);
                let norm = pairing_eta(&v, &v).unwrap();
                assert_eq!(norm, basis.euler[li], "norm at λ={}", lam);
            }
        }
    }

    #[test]
    fn eta_orthogonality_of_fixed_point_classes() {
        for n in 2..=4u32 {
            let basis = fixed_point_classes(n);
            for i in 0..basis.parts.len() {
                for j in 0..basis.parts.len() {
                    if i == j {
                        continue;
                    }
                    let a = FockVector::from_coordinates(n, &basis.transition.column(i));
                    let b = FockVector::from_coordinates(n, &basis.transition.column(j));
                    assert!(pairing_eta(&a, &b).unwrap().is_zero());
                }
            }
        }
    }

    #[test]
    fn hermitian_and_bilinear_pairings_agree_on_classes() {
        for n in 1..=4u32 {
            let basis = fixed_point_classes(n);
            for i in 0..basis.parts.len() {
                for j in 0..basis.parts.len() {
                    let a = FockVector::from_coordinates(n, &basis.transition.column(i));
                    let b = FockVector::from_coordinates(n, &basis.transition.column(j));
                    let h = pairing_hermitian(&a, &b).unwrap();
                    let e = pairing_eta(&a, &b).unwrap();
                    assert_eq!(h, e, "n={} i={} j={}", n, i, j);
                }
            }
        }
    }

    #[test]
    fn level_two_norms_match_tangent_weights() {
        let basis = fixed_point_classes(2);
        let t1 = Scalar::t1();
        let t2 = Scalar::t2();
        // Π{2t1, t2-t1, t1, t2} = 2 t1^2 t2 (t2 - t1)
        let li = basis.parts.iter().position(|m| *m == p(&[2])).unwrap();
        let want = Ring::mul(
            &Ring::mul(&frac(2, 1), &t1.pow(2)),
            &Ring::mul(&t2, &Ring::sub(&t2, &t1)),
        );
        assert_eq!(basis.euler[li], want);
    }

    #[test]
    fn jack_class_coefficient_structure() {
        // coefficient of |μ⟩ in J^λ is (t1t2)^{ℓ(μ)} times a polynomial of
        // degree |λ| - ℓ(μ)
        let t1t2 = PolyZ::var1().mul(&PolyZ::var2());
        for n in 1..=4u32 {
            let basis = fixed_point_classes(n);
            for col in 0..basis.parts.len() {
                for (row, mu) in basis.parts.iter().enumerate() {
                    let c = &basis.transition[(row, col)];
                    if c.is_zero() {
                        continue;
                    }
                    assert!(c.denominator().is_one(), "polynomial coefficient");
                    let mut rest = c.numerator().clone();
                    for _ in 0..mu.length() {
                        assert!(PolyZ::divides(&t1t2, &rest));
                        rest = rest.div_exact(&t1t2);
                    }
                    let deg = rest.terms().map(|(m, _)| m.total()).max().unwrap_or(0);
                    assert_eq!(deg, n - mu.length() as u32, "degree check");
                }
            }
        }
    }

    #[test]
    fn restriction_of_unit_is_one() {
        for n in 1..=3u32 {
            let unit = Partition::new(vec![1; n as usize]);
            for eta in enumerate_partitions(n) {
                assert!(restriction(&unit, &eta).unwrap().is_one());
            }
        }
        assert!(restriction(&p(&[1]), &p(&[1])).unwrap().is_one());
    }

    #[test]
    fn localization_roundtrip() {
        // Σ_η (μ|_η / Π w(η)) J^η = |μ⟩ for n = 2, μ = (2).
        let n = 2;
        let basis = fixed_point_classes(n);
        let mu = p(&[2]);
        let mut acc = vec![<Scalar as Ring>::zero(); basis.parts.len()];
        for (ei, eta) in basis.parts.iter().enumerate() {
            let r = restriction(&mu, eta).unwrap();
            let w = basis.euler[ei].inv().unwrap();
            let c = Ring::mul(&r, &w);
            for (k, a) in basis.transition.column(ei).iter().enumerate() {
                acc[k] = Ring::add(&acc[k], &Ring::mul(&c, a));
            }
        }
        let v = FockVector::from_coordinates(n, &acc);
        assert_eq!(v, FockVector::basis(mu));
    }

    #[test]
    fn restriction_values_level_two() {
        // (2)|_(2) = t1 and (2)|_(11) = t2 — the content eigenvalues.
        assert_eq!(restriction(&p(&[2]), &p(&[2])).unwrap(), Scalar::t1());
        assert_eq!(restriction(&p(&[2]), &p(&[1, 1])).unwrap(), Scalar::t2());
        assert!(restriction(&p(&[2]), &p(&[1])).is_err());
    }
}
