//! Graph-sum reconstruction of higher-genus invariants from the
//! topological part and the R-matrix.
//!
//! Everything is evaluated in sector (idempotent) coordinates, where the
//! topological vertex is diagonal: a genus-g vertex in sector λ weighs
//! Δ_λ^{g-1} times the product of its inputs' λ-coordinates.
//!
//! Conventions (pinned by the degree-0 Hodge cross-checks and the exact
//! genus-1 closed form):
//! - legs carry R^{-1}(ψ) applied to the insertion;
//! - edges carry (η^{-1} - R^{-1}(ψ') η^{-1} R^{-1}(ψ'')^T)/(ψ' + ψ''),
//!   whose division is exact by the symplectic condition and asserted
//!   here on every assembly;
//! - the translation insertion is T(z) = z(1 - R^{-1}(z) 1), vanishing
//!   to order z^2, inserted at up to 3g(v) - 3 + val(v) extra markings
//!   per vertex with the 1/m! symmetry factor.
//!
//! Psi monomials are integrated against the Witten–Kontsevich table.

use super::graph::{enumerate_stable_graphs, StableGraph};
use super::psi::PsiTable;
use crate::algebra::{Mat, QSeries, Rational, Ring, Scalar, Series};
use crate::error::{Error, Result};
use crate::fock::FockVector;
use crate::frobenius::{delta_genus_power, EigenData};
use crate::partitions::Partition;
use crate::rmatrix::RMatrix;
use num_bigint::BigInt;

/// Sector-frame data consumed by the graph sum.
pub struct GraphSumData<T: Ring> {
    pub dim: usize,
    pub q_order: usize,
    /// Idempotent norms Δ_λ.
    pub delta: Vec<Series<T>>,
    /// Sector-frame matrices of R^{-1}(z), one per z-degree.
    pub rinv_sector: Vec<Mat<Series<T>>>,
    /// Translation sector coordinates per z-degree (zero below z^2).
    pub translation: Vec<Vec<Series<T>>>,
    /// Edge coefficients E[a][b], defined for a + b ≤ z_order - 1.
    pub edge: Vec<Vec<Mat<Series<T>>>>,
}

impl<T: Ring> GraphSumData<T> {
    pub fn z_order(&self) -> usize {
        self.rinv_sector.len() - 1
    }

    /// Assemble from sector-frame R^{-1} coefficients and Δ.
    pub fn from_parts(
        delta: Vec<Series<T>>,
        rinv_sector: Vec<Mat<Series<T>>>,
        q_order: usize,
    ) -> Result<Self> {
        let dim = delta.len();
        let k_max = rinv_sector.len() - 1;
        assert!(rinv_sector[0].is_identity(), "z^0 slice must be identity");

        // Translation: T(z) = z(1 - R^{-1}(z) 1); unit sector coords are 1.
        let ones: Vec<Series<T>> = vec![Ring::one(); dim];
        let s: Vec<Vec<Series<T>>> = rinv_sector.iter().map(|m| m.apply(&ones)).collect();
        let mut translation: Vec<Vec<Series<T>>> = Vec::with_capacity(k_max + 2);
        translation.push(vec![Ring::zero(); dim]); // z^0
        // z^1 coefficient is 1 - s_0 = 0; anything else is a bug upstream.
        let z1: Vec<Series<T>> = s[0].iter().map(|c| <Series<T> as Ring>::one().sub(c)).collect();
        for c in &z1 {
            assert!(c.is_zero(), "translation must vanish to order z^2");
        }
        translation.push(z1);
        for k in 2..=k_max + 1 {
            translation.push(s[k - 1].iter().map(|c| c.neg()).collect());
        }

        // Edge numerator N_ab = δ_{a0}δ_{b0} diag(Δ) - M_a diag(Δ) M_b^T.
        let delta_mat = Mat::diag(&delta);
        let n_ab = |a: usize, b: usize| -> Mat<Series<T>> {
            let dressed = rinv_sector[a]
                .mul(&delta_mat)
                .mul(&rinv_sector[b].transpose());
            if a == 0 && b == 0 {
                delta_mat.sub(&dressed)
            } else {
                dressed.neg()
            }
        };
        // E_{a,b} from N = (ψ' + ψ'') E: N_{a+1,b} = E_{a,b} + E_{a+1,b-1},
        // bootstrapped at b = 0 and checked at the a = 0 boundary.
        let e_rows = k_max; // indices 0..k_max-1
        let mut edge: Vec<Vec<Mat<Series<T>>>> =
            vec![vec![Mat::zero(dim, dim); e_rows]; e_rows];
        assert!(n_ab(0, 0).is_zero(), "edge numerator must vanish at (0,0)");
        for b in 0..e_rows {
            for a in (0..e_rows).rev() {
                if a + b > k_max - 1 {
                    continue;
                }
                let mut val = n_ab(a + 1, b);
                if b >= 1 && a + 1 + b - 1 <= k_max - 1 {
                    val = val.sub(&edge[a + 1][b - 1]);
                }
                edge[a][b] = val;
            }
            // exactness: N_{0,b+1} must equal E_{0,b}
            if b + 1 <= k_max {
                let check = n_ab(0, b + 1).sub(&edge[0][b]);
                if !check.is_zero() {
                    return Err(Error::InexactEdgeDivision);
                }
            }
        }

        Ok(GraphSumData {
            dim,
            q_order,
            delta,
            rinv_sector,
            translation,
            edge,
        })
    }
}

/// Sector data for the level-n theory.
pub fn graph_sum_data(
    eigen: &EigenData<Scalar>,
    r: &RMatrix<Scalar>,
) -> Result<GraphSumData<Scalar>> {
    let rinv = r.z_inverse();
    let dim = eigen.dim;
    // sector matrix of an operator X: diag(Δ) X̃ diag(Δ)^{-1} where X̃ is
    // the Ψ_un-frame matrix
    let delta_inv: Vec<QSeries> = eigen
        .delta
        .iter()
        .map(|d| d.inverse())
        .collect::<Result<_>>()?;
    let sectorize = |m: &Mat<QSeries>| -> Mat<QSeries> {
        Mat::from_fn(dim, dim, |i, j| {
            m[(i, j)].mul(&eigen.delta[i]).mul(&delta_inv[j])
        })
    };
    let rinv_sector: Vec<Mat<QSeries>> = rinv.coeffs.iter().map(|m| sectorize(m)).collect();
    GraphSumData::from_parts(eigen.delta.clone(), rinv_sector, eigen.q_order)
}

/// Sector coordinates of a flat vector.
pub fn sector_coordinates(eigen: &EigenData<Scalar>, flat: &[QSeries]) -> Vec<QSeries> {
    eigen.idempotent_coordinates(flat)
}

struct VertexInput<'a, T: Ring> {
    genus: u32,
    sector: usize,
    /// z-coefficient tables of the sector coordinate of each leg input.
    legs: Vec<&'a [Vec<Series<T>>]>,
    half_edge_exps: Vec<u32>,
}

fn vertex_value<T: Ring>(
    data: &GraphSumData<T>,
    table: &mut PsiTable,
    input: &VertexInput<'_, T>,
) -> Result<Series<T>> {
    let g = input.genus;
    let val = input.legs.len() + input.half_edge_exps.len();
    let m_max = 3 * g as i64 - 3 + val as i64;
    let mut acc: Series<T> = Ring::zero();
    let mut m_fact = BigInt::from(1);
    for m in 0..=m_max.max(0) {
        if m > 0 {
            m_fact *= m;
        }
        let budget = 3 * g as i64 - 3 + val as i64 + m;
        if budget < 0 {
            continue;
        }
        let fixed: i64 = input.half_edge_exps.iter().map(|&a| a as i64).sum();
        if fixed > budget {
            continue;
        }
        let remaining = (budget - fixed) as u32;
        // Largest single exponent a leg (resp. translation) marking can be
        // asked for, given that each translation insertion eats ≥ 2.
        let leg_cap = data.z_order() as u32;
        let t_cap = (data.translation.len() - 1) as u32;
        let max_leg_exp = remaining as i64 - 2 * m;
        if !input.legs.is_empty() && max_leg_exp > leg_cap as i64 {
            return Err(Error::ZOrderTooSmall {
                have: leg_cap as usize,
                need: max_leg_exp as usize,
            });
        }
        let max_t_exp = remaining as i64 - 2 * (m - 1).max(0);
        if m > 0 && max_t_exp > t_cap as i64 {
            return Err(Error::ZOrderTooSmall {
                have: t_cap as usize,
                need: max_t_exp as usize,
            });
        }
        let sum = enumerate_markings(
            data,
            table,
            g,
            input.sector,
            &input.legs,
            &input.half_edge_exps,
            m as usize,
            remaining,
        )?;
        if sum.is_zero() {
            continue;
        }
        let inv_fact = T::from_rational(&Rational::new(BigInt::from(1), m_fact.clone()));
        acc = acc.add(&sum.scale(&inv_fact));
    }
    let dpow = delta_genus_power(&data.delta[input.sector], g as i64)?;
    Ok(acc.mul(&dpow))
}

#[allow(clippy::too_many_arguments)]
fn enumerate_markings<T: Ring>(
    data: &GraphSumData<T>,
    table: &mut PsiTable,
    g: u32,
    sector: usize,
    legs: &[&[Vec<Series<T>>]],
    half_edge_exps: &[u32],
    m: usize,
    budget: u32,
) -> Result<Series<T>> {
    // exponents: leg exps (0..=cap), then m translation exps (2..=cap),
    // total must consume the budget exactly
    fn rec<T: Ring>(
        data: &GraphSumData<T>,
        table: &mut PsiTable,
        g: u32,
        sector: usize,
        legs: &[&[Vec<Series<T>>]],
        half_edge_exps: &[u32],
        m: usize,
        left: u32,
        leg_idx: usize,
        t_idx: usize,
        exps: &mut Vec<u32>,
        factor: Series<T>,
        acc: &mut Series<T>,
    ) -> Result<()> {
        if factor.is_zero() {
            return Ok(());
        }
        if leg_idx < legs.len() {
            let cap = left.min(data.z_order() as u32);
            for a in 0..=cap {
                let coeff = &legs[leg_idx][a as usize][sector];
                if coeff.is_zero() {
                    continue;
                }
                exps.push(a);
                rec(
                    data,
                    table,
                    g,
                    sector,
                    legs,
                    half_edge_exps,
                    m,
                    left - a,
                    leg_idx + 1,
                    t_idx,
                    exps,
                    factor.mul(coeff),
                    acc,
                )?;
                exps.pop();
            }
            return Ok(());
        }
        if t_idx < m {
            let cap = left.min((data.translation.len() - 1) as u32);
            if cap < 2 {
                return Ok(());
            }
            for c in 2..=cap {
                let coeff = &data.translation[c as usize][sector];
                if coeff.is_zero() {
                    continue;
                }
                exps.push(c);
                rec(
                    data,
                    table,
                    g,
                    sector,
                    legs,
                    half_edge_exps,
                    m,
                    left - c,
                    leg_idx,
                    t_idx + 1,
                    exps,
                    factor.mul(coeff),
                    acc,
                )?;
                exps.pop();
            }
            return Ok(());
        }
        if left != 0 {
            return Ok(());
        }
        let mut all: Vec<u32> = exps.clone();
        all.extend_from_slice(half_edge_exps);
        let psi = table.psi_integral(g, &all);
        if psi.is_zero() {
            return Ok(());
        }
        let c = T::from_rational(&psi);
        *acc = acc.add(&factor.scale(&c));
        Ok(())
    }
    let mut acc: Series<T> = Ring::zero();
    let one: Series<T> = Series::constant(T::one(), data.q_order);
    rec(
        data,
        table,
        g,
        sector,
        legs,
        half_edge_exps,
        m,
        budget,
        0,
        0,
        &mut Vec::new(),
        one,
        &mut acc,
    )?;
    Ok(acc)
}

/// Sum the graph contributions for genus g with the given sector-frame
/// insertion coordinate vectors.
pub fn graph_sum<T: Ring>(
    data: &GraphSumData<T>,
    genus: u32,
    insertions_sector: &[Vec<Series<T>>],
    table: &mut PsiTable,
) -> Result<Series<T>> {
    let r = insertions_sector.len();
    let graphs = enumerate_stable_graphs(genus, r)?;
    // leg polynomial tables: legpoly[i][k][λ] = (M_k c_i)[λ]
    let legpoly: Vec<Vec<Vec<Series<T>>>> = insertions_sector
        .iter()
        .map(|c| data.rinv_sector.iter().map(|m| m.apply(c)).collect())
        .collect();

    let mut total: Series<T> = Series::zero(data.q_order);
    for graph in &graphs {
        let contribution = graph_contribution(data, table, graph, &legpoly)?;
        let aut_inv = T::from_rational(&Rational::new(
            BigInt::from(1),
            BigInt::from(graph.aut),
        ));
        total = total.add(&contribution.scale(&aut_inv));
    }
    Ok(total)
}

/// Odometer over `len` slots each ranging over `radix` values; calls the
/// visitor once even when there are no slots.
fn for_each_tuple(
    len: usize,
    radix: usize,
    mut visit: impl FnMut(&[usize]) -> Result<()>,
) -> Result<()> {
    let mut idx = vec![0usize; len];
    loop {
        visit(&idx)?;
        let mut i = 0;
        loop {
            if i == len {
                return Ok(());
            }
            idx[i] += 1;
            if idx[i] < radix {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
}

fn graph_contribution<T: Ring>(
    data: &GraphSumData<T>,
    table: &mut PsiTable,
    graph: &StableGraph,
    legpoly: &[Vec<Vec<Series<T>>>],
) -> Result<Series<T>> {
    let v_count = graph.vertex_count();
    let e_count = graph.edges.len();
    let k = data.z_order();
    // admissible edge exponent pairs: a + b <= k - 1
    let pairs: Vec<(usize, usize)> = (0..k)
        .flat_map(|a| (0..k - a).map(move |b| (a, b)))
        .collect();

    // Dimension prefilter: the ψ-budget of a vertex is at most
    // 3g(v) - 3 + val(v) + m with m ≤ 3g(v) - 3 + val(v), so the half-edge
    // exponents at v can never exceed twice that. Checking this before
    // touching any series keeps the exponent loop cheap.
    let caps: Vec<i64> = (0..v_count)
        .map(|v| 2 * (3 * graph.genera[v] as i64 - 3 + graph.valence(v) as i64))
        .collect();
    let feasible = |edge_exps: &[(usize, usize)]| -> bool {
        let mut sums = vec![0i64; v_count];
        for (e, &(a, b)) in edge_exps.iter().enumerate() {
            let (v, w) = graph.edges[e];
            sums[v] += a as i64;
            sums[w] += b as i64;
        }
        sums.iter().zip(caps.iter()).all(|(s, c)| s <= c)
    };

    let mut total: Series<T> = Series::zero(data.q_order);
    let mut sector_tuples: Vec<Vec<usize>> = Vec::new();
    for_each_tuple(v_count, data.dim, |sectors| {
        sector_tuples.push(sectors.to_vec());
        Ok(())
    })?;
    let mut exp_tuples: Vec<Vec<(usize, usize)>> = Vec::new();
    for_each_tuple(e_count, pairs.len(), |idx| {
        let exps: Vec<(usize, usize)> = idx.iter().map(|&i| pairs[i]).collect();
        if feasible(&exps) {
            exp_tuples.push(exps);
        }
        Ok(())
    })?;
    for sectors in &sector_tuples {
        'exps: for edge_exps in &exp_tuples {
            let mut factor: Series<T> = Series::constant(T::one(), data.q_order);
            for (e, &(a, b)) in edge_exps.iter().enumerate() {
                let (v, w) = graph.edges[e];
                let m = &data.edge[a][b][(sectors[v], sectors[w])];
                if m.is_zero() {
                    continue 'exps;
                }
                factor = factor.mul(m);
            }
            for v in 0..v_count {
                let legs: Vec<&[Vec<Series<T>>]> = graph.legs[v]
                    .iter()
                    .map(|&i| legpoly[i].as_slice())
                    .collect();
                let mut half_exps: Vec<u32> = Vec::new();
                for (e, &(a, b)) in edge_exps.iter().enumerate() {
                    let (x, y) = graph.edges[e];
                    if x == v {
                        half_exps.push(a as u32);
                    }
                    if y == v {
                        half_exps.push(b as u32);
                    }
                }
                let value = vertex_value(
                    data,
                    table,
                    &VertexInput {
                        genus: graph.genera[v],
                        sector: sectors[v],
                        legs,
                        half_edge_exps: half_exps,
                    },
                )?;
                if value.is_zero() {
                    continue 'exps;
                }
                factor = factor.mul(&value);
            }
            total = total.add(&factor);
        }
    }
    Ok(total)
}

/// A reconstructed invariant series plus its rational form when the
/// reconstruction succeeded.
#[derive(Clone, Debug)]
pub struct InvariantSeries {
    pub genus: u32,
    pub insertions: Vec<Partition>,
    pub series: QSeries,
    pub rational: Option<crate::algebra::QRational>,
}

/// The genus-g series with Nakajima insertions, from the topological part
/// and the R-matrix. Supported tier: g ≤ 2.
pub fn reconstruct_invariant(
    genus: u32,
    insertions: &[Partition],
    eigen: &EigenData<Scalar>,
    r: &RMatrix<Scalar>,
    n: u32,
    table: &mut PsiTable,
) -> Result<QSeries> {
    if genus > 2 {
        return Err(Error::UnsupportedGenus(genus));
    }
    if 2 * genus as i64 - 2 + insertions.len() as i64 <= 0 {
        return Err(Error::Unstable(genus, insertions.len()));
    }
    for mu in insertions {
        if mu.size() != n {
            return Err(Error::SizeMismatch(mu.to_string(), format!("level {}", n)));
        }
    }
    let data = graph_sum_data(eigen, r)?;
    let sector: Vec<Vec<QSeries>> = insertions
        .iter()
        .map(|mu| {
            let flat: Vec<QSeries> = FockVector::basis(mu.clone())
                .coordinates(n)
                .into_iter()
                .map(|c| QSeries::constant(c, eigen.q_order))
                .collect();
            sector_coordinates(eigen, &flat)
        })
        .collect();
    graph_sum(&data, genus, &sector, table)
}

/// Translation series in flat coordinates, z-degree by z-degree; the z^0
/// and z^1 parts vanish by construction and are asserted to.
pub fn translation_flat(
    eigen: &EigenData<Scalar>,
    r: &RMatrix<Scalar>,
) -> Result<Vec<Vec<QSeries>>> {
    let data = graph_sum_data(eigen, r)?;
    let out: Vec<Vec<QSeries>> = data
        .translation
        .iter()
        .map(|sector| {
            (0..eigen.dim)
                .map(|row| {
                    let mut acc: QSeries = Ring::zero();
                    for li in 0..eigen.dim {
                        acc = acc.add(&sector[li].mul(&eigen.idempotents[li][row]));
                    }
                    acc
                })
                .collect()
        })
        .collect();
    assert!(out[0].iter().all(|c| c.is_zero()));
    assert!(out[1].iter().all(|c| c.is_zero()));
    Ok(out)
}
