//! The small quantum ring at the origin as a q-series Frobenius algebra.
//!
//! Eigen-data of the divisor multiplication operator is computed as exact
//! Rayleigh–Schrödinger series: writing everything in the q = 0
//! eigenbasis, the order-k corrections are solved from the q = 0 spectral
//! data, with every division by a content difference c(λ) - c(μ) guarded
//! (distinct partitions can collide for n ≥ 6; the guard turns that into
//! an error instead of nonsense).
//!
//! Gauge conventions, used everywhere downstream:
//! - ψ_λ(q) is the eigenvector column with fixed-point coordinate 1 along
//!   λ, so ψ_λ(0) = J^λ;
//! - ε_λ = w_λ ψ_λ is the idempotent, with w the expansion of the unit
//!   over the eigenbasis;
//! - Δ_λ = 1/η(ε_λ, ε_λ);
//! - the stored eigenvector matrix `psi_un` has columns Δ_λ ε_λ, which
//!   are base-field vectors with q = 0 slice exactly J^λ.
//!
//! Everything is generic over the coefficient field so the same code can
//! be re-run with rational parameter values as a specialization check.

use crate::algebra::{mat_from_coeffs, series_mat_inverse, Mat, Ring, Scalar, Series};
use crate::error::{Error, Result};
use crate::fock::{build_md_coeffs, eta_gram, FockVector};
use crate::jack::fixed_point_classes;
use crate::partitions::content_sum;

/// Eigen/idempotent data of the quantum ring over a coefficient field T.
#[derive(Clone, Debug)]
pub struct EigenData<T: Ring> {
    pub q_order: usize,
    pub dim: usize,
    /// q-coefficient matrices of the divisor multiplication operator.
    pub md: Vec<Mat<T>>,
    /// Contents c(λ), indexed like everything else.
    pub contents: Vec<T>,
    /// Diagonal of the η Gram matrix in the flat basis.
    pub eta_diag: Vec<T>,
    /// Flat coordinates of the unit.
    pub unit: Vec<T>,
    /// Eigenvalues v(λ; q), constant term -c(λ).
    pub eigenvalues: Vec<Series<T>>,
    /// Columns Δ_λ ε_λ; q = 0 slice is the fixed-point transition matrix.
    pub psi_un: Mat<Series<T>>,
    pub psi_un_inv: Mat<Series<T>>,
    /// Idempotent flat coordinates per λ.
    pub idempotents: Vec<Vec<Series<T>>>,
    /// Δ(λ; q) = 1/η(ε_λ, ε_λ).
    pub delta: Vec<Series<T>>,
}

/// Inputs to the eigen decomposition: the operator's q-slices, the q = 0
/// eigenbasis (columns), its eigenvalue constants, the pairing diagonal,
/// and the unit.
pub struct EigenInput<T: Ring> {
    pub md: Vec<Mat<T>>,
    pub transition: Mat<T>,
    pub contents: Vec<T>,
    pub eta_diag: Vec<T>,
    pub unit: Vec<T>,
}

/// Eigen decomposition as exact perturbation series to the given q-order.
pub fn eigen_decompose<T: Ring>(input: EigenInput<T>, q_order: usize) -> Result<EigenData<T>> {
    let EigenInput {
        md,
        transition,
        contents,
        eta_diag,
        unit,
    } = input;
    let dim = transition.rows();
    assert!(md.len() > q_order, "operator slices must cover the q-order");

    // Pairwise distinct constant terms, or the perturbation divisions die.
    for i in 0..dim {
        for j in (i + 1)..dim {
            if contents[i] == contents[j] {
                return Err(Error::Resonance(format!("#{}", i), format!("#{}", j)));
            }
        }
    }

    let t_inv = transition.inverse()?;
    // Operator in the q = 0 eigenbasis.
    let m_tilde: Vec<Mat<T>> = md.iter().map(|m| t_inv.mul(m).mul(&transition)).collect();
    for i in 0..dim {
        for j in 0..dim {
            let want = if i == j { contents[i].neg() } else { T::zero() };
            assert!(
                m_tilde[0][(i, j)] == want,
                "q = 0 slice must be diagonal with entries -c(λ)"
            );
        }
    }

    // Rayleigh–Schrödinger series per eigenvalue, gauge y_λ ≡ 1.
    let mut eigenvalues: Vec<Series<T>> = Vec::with_capacity(dim);
    let mut y_all: Vec<Vec<Vec<T>>> = Vec::with_capacity(dim); // [λ][k][coord]
    for li in 0..dim {
        let mut v = Series::zero(q_order);
        v.set_coeff(0, contents[li].neg());
        let mut ys: Vec<Vec<T>> = Vec::with_capacity(q_order + 1);
        let mut e0 = vec![T::zero(); dim];
        e0[li] = T::one();
        ys.push(e0);
        for k in 1..=q_order {
            // applied[j] = M̃_j y_{k-j}, shared by the v_k and y_k formulas
            let applied: Vec<Vec<T>> = (1..=k)
                .map(|j| {
                    if j < m_tilde.len() {
                        m_tilde[j].apply(&ys[k - j])
                    } else {
                        vec![T::zero(); dim]
                    }
                })
                .collect();
            // v_k = Σ_{j=1}^k (M̃_j y_{k-j})[λ]
            let mut vk = T::zero();
            for a in &applied {
                vk = vk.add(&a[li]);
            }
            v.set_coeff(k, vk.clone());
            // y_k[η] = [Σ_j (v_j y_{k-j}[η] - (M̃_j y_{k-j})[η])]/(c(λ) - c(η))
            let mut yk = vec![T::zero(); dim];
            for eta in 0..dim {
                if eta == li {
                    continue;
                }
                let mut acc = T::zero();
                for j in 1..=k {
                    acc = acc.sub(&applied[j - 1][eta]);
                    acc = acc.add(&v.coeff(j).mul(&ys[k - j][eta]));
                }
                let gap = contents[li].sub(&contents[eta]);
                let gap_inv = gap
                    .inv()
                    .ok_or_else(|| Error::Resonance(format!("#{}", li), format!("#{}", eta)))?;
                yk[eta] = acc.mul(&gap_inv);
            }
            ys.push(yk);
        }
        eigenvalues.push(v);
        y_all.push(ys);
    }

    // Correction matrix in the q = 0 eigenframe: Y(0) = identity. The
    // series inversion happens here, where entries are smallest; flat
    // frames are reached by scalar-matrix multiplication.
    let y_mat: Mat<Series<T>> = Mat::from_fn(dim, dim, |row, col| {
        let mut s = Series::zero(q_order);
        for k in 0..=q_order {
            s.set_coeff(k, y_all[col][k][row].clone());
        }
        s
    });
    let y_inv = series_mat_inverse(&y_mat, q_order)?;
    let t_series = transition.map(|c| Series::exact_constant(c.clone()));
    let t_inv_series = t_inv.map(|c| Series::exact_constant(c.clone()));
    let psi_gauge = t_series.mul(&y_mat);
    let psi_gauge_inv = y_inv.mul(&t_inv_series);

    // Unit over the eigenbasis: ε_λ = w_λ ψ_λ with Ψ w = unit.
    let unit_series: Vec<Series<T>> = unit
        .iter()
        .map(|c| Series::constant(c.clone(), q_order))
        .collect();
    let w = psi_gauge_inv.apply(&unit_series);

    // Idempotents, their η-norms, Δ, and the stored eigenvector matrix.
    let mut idem: Vec<Vec<Series<T>>> = Vec::with_capacity(dim);
    let mut delta: Vec<Series<T>> = Vec::with_capacity(dim);
    let mut w_delta: Vec<Series<T>> = Vec::with_capacity(dim);
    for li in 0..dim {
        let eps: Vec<Series<T>> = (0..dim)
            .map(|row| psi_gauge[(row, li)].mul(&w[li]))
            .collect();
        let mut norm = Series::zero(q_order);
        for (row, e) in eps.iter().enumerate() {
            norm = norm.add(&e.mul(e).scale(&eta_diag[row]));
        }
        let d = norm.inverse()?;
        w_delta.push(w[li].mul(&d));
        delta.push(d);
        idem.push(eps);
    }
    // Ψ_un = Ψ_gauge diag(w Δ), so the inverse is a row rescaling of the
    // gauge-frame inverse.
    let psi_un: Mat<Series<T>> =
        Mat::from_fn(dim, dim, |row, col| psi_gauge[(row, col)].mul(&w_delta[col]));
    let w_delta_inv: Vec<Series<T>> = w_delta
        .iter()
        .map(|s| s.inverse())
        .collect::<Result<_>>()?;
    let psi_un_inv = Mat::from_fn(dim, dim, |row, col| {
        psi_gauge_inv[(row, col)].mul(&w_delta_inv[row])
    });

    Ok(EigenData {
        q_order,
        dim,
        md,
        contents,
        eta_diag,
        unit,
        eigenvalues,
        psi_un,
        psi_un_inv,
        idempotents: idem,
        delta,
    })
}

/// Eigen data for the level-n quantum ring with formal t1, t2.
pub fn hilb_eigen_data(n: u32, q_order: usize) -> Result<EigenData<Scalar>> {
    let md = build_md_coeffs(n, q_order);
    let basis = fixed_point_classes(n);
    let contents = basis.parts.iter().map(content_sum).collect();
    let gram = eta_gram(n);
    let eta_diag = (0..basis.parts.len())
        .map(|i| gram[(i, i)].clone())
        .collect();
    let unit = FockVector::unit(n).coordinates(n);
    eigen_decompose(
        EigenInput {
            md,
            transition: basis.transition,
            contents,
            eta_diag,
            unit,
        },
        q_order,
    )
}

impl<T: Ring> EigenData<T> {
    /// The operator as a series-entried matrix.
    pub fn md_series(&self) -> Mat<Series<T>> {
        mat_from_coeffs(&self.md, self.q_order)
    }

    /// Residual M Ψ_un - Ψ_un diag(v); zero when the decomposition is right.
    pub fn residual(&self) -> Mat<Series<T>> {
        let m = self.md_series();
        let lhs = m.mul(&self.psi_un);
        let rhs = self.psi_un.mul(&Mat::diag(&self.eigenvalues));
        lhs.sub(&rhs)
    }

    /// ε-coordinates of a flat vector: c_λ(v) with v = Σ c_λ ε_λ.
    pub fn idempotent_coordinates(&self, v: &[Series<T>]) -> Vec<Series<T>> {
        let y = self.psi_un_inv.apply(v);
        (0..self.dim).map(|li| y[li].mul(&self.delta[li])).collect()
    }

    /// η-pairing of flat coordinate vectors.
    pub fn eta_pairing(&self, a: &[Series<T>], b: &[Series<T>]) -> Series<T> {
        let mut acc: Series<T> = Ring::zero();
        for i in 0..self.dim {
            acc = acc.add(&a[i].mul(&b[i]).scale(&self.eta_diag[i]));
        }
        acc
    }

    /// Quantum product of two flat vectors.
    pub fn star(&self, a: &[Series<T>], b: &[Series<T>]) -> Vec<Series<T>> {
        let ca = self.idempotent_coordinates(a);
        let cb = self.idempotent_coordinates(b);
        // Σ_λ c_λ(a) c_λ(b) ε_λ
        (0..self.dim)
            .map(|row| {
                let mut acc: Series<T> = Ring::zero();
                for li in 0..self.dim {
                    acc = acc.add(&ca[li].mul(&cb[li]).mul(&self.idempotents[li][row]));
                }
                acc
            })
            .collect()
    }
}

/// Operator of quantum multiplication by v, expanded over powers of the
/// divisor operator applied to the unit.
pub fn quantum_mult_operator<T: Ring>(
    v: &[Series<T>],
    eigen: &EigenData<T>,
) -> Result<Mat<Series<T>>> {
    let dim = eigen.dim;
    let m = eigen.md_series();
    // Power basis b_k = M^k unit.
    let unit: Vec<Series<T>> = eigen
        .unit
        .iter()
        .map(|c| Series::constant(c.clone(), eigen.q_order))
        .collect();
    let mut powers: Vec<Vec<Series<T>>> = vec![unit];
    for _ in 1..dim {
        let prev = powers.last().unwrap();
        powers.push(m.apply(prev));
    }
    let b = Mat::from_fn(dim, dim, |row, col| powers[col][row].clone());
    let b_inv = series_mat_inverse(&b, eigen.q_order).map_err(|_| Error::SpanFailure)?;
    let c = b_inv.apply(v);
    // Σ c_k M^k
    let mut op: Mat<Series<T>> = Mat::zero(dim, dim);
    let mut mk: Mat<Series<T>> = Mat::identity(dim);
    for ck in c.iter() {
        op = op.add(&mk.scale(ck));
        mk = m.mul(&mk);
    }
    Ok(op)
}

/// Δ^{g-1} with negative powers handled by series inversion.
pub fn delta_genus_power<T: Ring>(delta: &Series<T>, genus: i64) -> Result<Series<T>> {
    let e = genus - 1;
    let mut acc: Series<T> = Ring::one();
    if e >= 0 {
        for _ in 0..e {
            acc = acc.mul(delta);
        }
    } else {
        let inv = delta.inverse()?;
        for _ in 0..(-e) {
            acc = acc.mul(&inv);
        }
    }
    Ok(acc)
}

/// Genus-g correlator of the topological part: inputs in flat
/// coordinates, value Σ_λ Π_i c_λ(v_i) Δ_λ^{g-1}.
pub fn tqft_correlator<T: Ring>(
    genus: u32,
    insertions: &[Vec<Series<T>>],
    eigen: &EigenData<T>,
) -> Result<Series<T>> {
    let r = insertions.len();
    if 2 * genus as i64 - 2 + r as i64 <= 0 {
        return Err(Error::Unstable(genus, r));
    }
    let coords: Vec<Vec<Series<T>>> = insertions
        .iter()
        .map(|v| eigen.idempotent_coordinates(v))
        .collect();
    let mut acc: Series<T> = Ring::zero();
    for li in 0..eigen.dim {
        let mut term: Series<T> = Ring::one();
        for c in &coords {
            term = term.mul(&c[li]);
        }
        let dpow = delta_genus_power(&eigen.delta[li], genus as i64)?;
        acc = acc.add(&term.mul(&dpow));
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{frac, QSeries};
    use crate::partitions::{enumerate_partitions, tangent_weights, Partition};

    fn constant_vec(v: &[Scalar], order: usize) -> Vec<QSeries> {
        v.iter()
            .map(|c| QSeries::constant(c.clone(), order))
            .collect()
    }

    #[test]
    fn level_one_eigenvalue_is_the_matrix_entry() {
        // n = 1: the operator is 1x1 and identically zero.
        let e = hilb_eigen_data(1, 5).unwrap();
        assert!(e.eigenvalues[0].is_zero());
        assert_eq!(
            e.psi_un[(0, 0)].coeff(0),
            Ring::mul(&Scalar::t1(), &Scalar::t2())
        );
    }

    #[test]
    fn level_two_eigenvalue_constant_terms() {
        let e = hilb_eigen_data(2, 6).unwrap();
        // order: [(2), (1,1)]; constants -c = -t1, -t2
        assert_eq!(e.eigenvalues[0].coeff(0), Ring::neg(&Scalar::t1()));
        assert_eq!(e.eigenvalues[1].coeff(0), Ring::neg(&Scalar::t2()));
    }

    #[test]
    fn psi_un_at_q_zero_is_fixed_point_transition() {
        for n in 1..=3u32 {
            let e = hilb_eigen_data(n, 4).unwrap();
            let basis = fixed_point_classes(n);
            for i in 0..e.dim {
                for j in 0..e.dim {
                    assert_eq!(e.psi_un[(i, j)].coeff(0), basis.transition[(i, j)]);
                }
            }
        }
    }

    #[test]
    fn residual_vanishes() {
        for n in 1..=3u32 {
            let e = hilb_eigen_data(n, 4).unwrap();
            assert!(e.residual().is_zero(), "n = {}", n);
        }
        // level 4 at a lower q-order to keep the suite quick
        let e = hilb_eigen_data(4, 2).unwrap();
        assert!(e.residual().is_zero(), "n = 4");
    }

    #[test]
    fn idempotents_partition_unity_and_are_idempotent() {
        for n in 1..=3u32 {
            let order = 4;
            let e = hilb_eigen_data(n, order).unwrap();
            // Σ ε_λ = unit
            for row in 0..e.dim {
                let mut acc: QSeries = Ring::zero();
                for li in 0..e.dim {
                    acc = acc.add(&e.idempotents[li][row]);
                }
                assert_eq!(
                    acc,
                    QSeries::constant(e.unit[row].clone(), order),
                    "n={} row={}",
                    n,
                    row
                );
            }
            // ε_λ ⋆ ε_μ = δ ε_λ
            for a in 0..e.dim {
                for b in 0..e.dim {
                    let prod = e.star(&e.idempotents[a], &e.idempotents[b]);
                    for row in 0..e.dim {
                        let want = if a == b {
                            e.idempotents[a][row].clone()
                        } else {
                            Ring::zero()
                        };
                        assert_eq!(prod[row], want, "n={} a={} b={}", n, a, b);
                    }
                }
            }
        }
    }

    #[test]
    fn delta_at_q_zero_is_euler_class() {
        for n in 1..=3u32 {
            let e = hilb_eigen_data(n, 3).unwrap();
            let parts = enumerate_partitions(n);
            for (li, lam) in parts.iter().enumerate() {
                assert_eq!(e.delta[li].coeff(0), tangent_weights(lam).product());
            }
        }
    }

    #[test]
    fn eta_orthogonality_of_idempotents() {
        let e = hilb_eigen_data(3, 4).unwrap();
        for a in 0..e.dim {
            for b in 0..e.dim {
                let pair = e.eta_pairing(&e.idempotents[a], &e.idempotents[b]);
                if a == b {
                    assert_eq!(pair.mul(&e.delta[a]), QSeries::one(4));
                } else {
                    assert!(pair.is_zero());
                }
            }
        }
    }

    #[test]
    fn mult_by_unit_is_identity_and_by_divisor_is_md() {
        for n in 2..=3u32 {
            let order = 4;
            let e = hilb_eigen_data(n, order).unwrap();
            let unit = constant_vec(&e.unit, order);
            let id = quantum_mult_operator(&unit, &e).unwrap();
            assert!(id.sub(&Mat::identity(e.dim)).is_zero(), "unit, n={}", n);

            // D = -|2, 1^{n-2}⟩
            let mut parts = vec![2u32];
            parts.extend(vec![1; n as usize - 2]);
            let mut d = FockVector::zero();
            d.add_term(Partition::new(parts), frac(-1, 1));
            let dvec = constant_vec(&d.coordinates(n), order);
            let op = quantum_mult_operator(&dvec, &e).unwrap();
            assert!(op.sub(&e.md_series()).is_zero(), "divisor, n={}", n);
        }
    }

    #[test]
    fn frobenius_symmetry_of_three_point() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        for n in 2..=3u32 {
            let order = 4;
            let e = hilb_eigen_data(n, order).unwrap();
            let sample = |rng: &mut rand_chacha::ChaCha8Rng| -> Vec<QSeries> {
                (0..e.dim)
                    .map(|_| QSeries::constant(frac(rng.gen_range(-4..=4), 1), order))
                    .collect()
            };
            for _ in 0..6 {
                let a = sample(&mut rng);
                let b = sample(&mut rng);
                let c = sample(&mut rng);
                let abc = e.eta_pairing(&e.star(&a, &b), &c);
                let bca = e.eta_pairing(&e.star(&b, &c), &a);
                let acb = e.eta_pairing(&e.star(&a, &c), &b);
                assert_eq!(abc, bca);
                assert_eq!(abc, acb);
            }
        }
    }

    #[test]
    fn tqft_axioms() {
        let order = 4;
        for n in 1..=3u32 {
            let e = hilb_eigen_data(n, order).unwrap();
            let unit = constant_vec(&e.unit, order);
            // ω_{0,3}(v1, v2, 1) = η(v1, v2) on basis vectors
            for i in 0..e.dim {
                for j in 0..e.dim {
                    let mut vi = vec![<QSeries as Ring>::zero(); e.dim];
                    vi[i] = QSeries::one(order);
                    let mut vj = vec![<QSeries as Ring>::zero(); e.dim];
                    vj[j] = QSeries::one(order);
                    let w =
                        tqft_correlator(0, &[vi.clone(), vj.clone(), unit.clone()], &e).unwrap();
                    let want = e.eta_pairing(&vi, &vj);
                    assert_eq!(w, want, "n={} i={} j={}", n, i, j);
                }
            }
            // gluing: ω_{1,1}(v) = Σ_{jk} η^{jk} ω_{0,3}(v, e_j, e_k)
            for i in 0..e.dim {
                let mut v = vec![<QSeries as Ring>::zero(); e.dim];
                v[i] = QSeries::one(order);
                let lhs = tqft_correlator(1, &[v.clone()], &e).unwrap();
                let mut rhs: QSeries = Ring::zero();
                for j in 0..e.dim {
                    // η is diagonal in the flat basis, so η^{jk} = δ/η_jj
                    let mut ej = vec![<QSeries as Ring>::zero(); e.dim];
                    ej[j] = QSeries::one(order);
                    let w = tqft_correlator(0, &[v.clone(), ej.clone(), ej.clone()], &e).unwrap();
                    rhs = rhs.add(&w.scale(&e.eta_diag[j].inv().unwrap()));
                }
                assert_eq!(lhs, rhs, "n={} i={}", n, i);
            }
            // stability guard
            assert!(tqft_correlator(0, &[unit.clone()], &e).is_err());
        }
    }

    #[test]
    fn idempotent_coordinates_of_unit_are_one() {
        let e = hilb_eigen_data(3, 3).unwrap();
        let unit = constant_vec(&e.unit, 3);
        for c in e.idempotent_coordinates(&unit) {
            assert_eq!(c, QSeries::one(3));
        }
    }

    #[test]
    fn specialization_stability() {
        // Substituting rational (t1, t2) into the symbolic eigen data agrees
        // with re-running the identical decomposition over Q.
        use crate::algebra::Rational;
        use num_bigint::BigInt;
        let n = 2;
        let order = 4;
        let sym = hilb_eigen_data(n, order).unwrap();
        let a = Rational::new(BigInt::from(3), BigInt::from(1));
        let b = Rational::new(BigInt::from(7), BigInt::from(2));
        let ev = |s: &Scalar| s.eval(&a, &b).expect("no pole at the sample point");
        let basis = fixed_point_classes(n);
        let input = EigenInput {
            md: build_md_coeffs(n, order)
                .iter()
                .map(|m| m.map(&ev))
                .collect(),
            transition: basis.transition.map(&ev),
            contents: enumerate_partitions(n)
                .iter()
                .map(|lam| ev(&content_sum(lam)))
                .collect(),
            eta_diag: sym.eta_diag.iter().map(&ev).collect(),
            unit: sym.unit.iter().map(&ev).collect(),
        };
        let num = eigen_decompose(input, order).unwrap();
        for li in 0..sym.dim {
            for k in 0..=order {
                assert_eq!(
                    ev(&sym.eigenvalues[li].coeff(k)),
                    num.eigenvalues[li].coeff(k)
                );
                assert_eq!(ev(&sym.delta[li].coeff(k)), num.delta[li].coeff(k));
            }
            for row in 0..sym.dim {
                for k in 0..=order {
                    assert_eq!(
                        ev(&sym.psi_un[(row, li)].coeff(k)),
                        num.psi_un[(row, li)].coeff(k)
                    );
                }
            }
        }
    }

    #[test]
    fn resonance_is_detected() {
        // Identical contents trigger the guard.
        let md = vec![Mat::<Scalar>::zero(2, 2); 2];
        let input = EigenInput {
            md,
            transition: Mat::identity(2),
            contents: vec![Scalar::t1(), Scalar::t1()],
            eta_diag: vec![Ring::one(), Ring::one()],
            unit: vec![Ring::one(), Ring::one()],
        };
        match eigen_decompose(input, 1) {
            Err(Error::Resonance(_, _)) => {}
            other => panic!("unexpected: {:?}", other),
        }
    }
}
