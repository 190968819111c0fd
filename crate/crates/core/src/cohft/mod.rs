//! Stable-graph reconstruction of higher-genus invariants: graph
//! enumeration, psi-class intersection numbers, the graph sum itself, and
//! the independent degree-0 Hodge oracle it is checked against.

pub mod graph;
pub mod hodge;
pub mod psi;
pub mod reconstruct;

pub use graph::{enumerate_stable_graphs, StableGraph};
pub use hodge::HodgeTable;
pub use psi::PsiTable;
pub use reconstruct::{
    graph_sum, graph_sum_data, reconstruct_invariant, sector_coordinates, translation_flat,
    GraphSumData, InvariantSeries,
};

use crate::algebra::{Rational, Ring, Scalar};
use crate::error::{Error, Result};
use crate::jack::restriction;
use crate::partitions::{enumerate_partitions, tangent_weights, Partition};
use num_bigint::BigInt;

/// Degree-0 invariants in closed form: localize over fixed points and
/// integrate the Hodge-twisted Euler factors
/// Π_w (Σ_i (-1)^i λ_i w^{g-i}) / w^g against the lambda table.
///
/// Genus 1 takes exactly one insertion; genus 2 takes none.
pub fn degree0_oracle(genus: u32, insertion: Option<&Partition>, n: u32) -> Result<Scalar> {
    let table = HodgeTable::standard();
    match (genus, insertion) {
        (1, Some(mu)) => {
            if mu.size() != n {
                return Err(Error::SizeMismatch(mu.to_string(), format!("level {}", n)));
            }
            // Π_w (w - λ1)/w: degree-1 part is -λ1 Σ 1/w
            let mut acc: Scalar = Ring::zero();
            let coeff = Scalar::from_rational(&-table.lambda1.clone());
            for eta in enumerate_partitions(n) {
                let r = restriction(mu, &eta)?;
                let s = tangent_weights(&eta).sum_inverse_powers(1);
                acc = Ring::add(&acc, &Ring::mul(&r, &Ring::mul(&coeff, &s)));
            }
            Ok(acc)
        }
        (2, None) => {
            // e(E_2*⊗Tan)/e(Tan) = Π_w (w^2 - λ1 w + λ2)/w, i.e. the
            // Euler class Π_w w times Π_w (1 - λ1/w + λ2/w^2), whose
            // degree-3 part is -λ1^3 e_3(1/w) - λ1λ2 Σ_{i≠j} 1/(w_i w_j^2).
            let mut acc: Scalar = Ring::zero();
            let c3 = Scalar::from_rational(&-table.lambda1_cubed.clone());
            let c12 = Scalar::from_rational(&-table.lambda1_lambda2.clone());
            for eta in enumerate_partitions(n) {
                let ws = tangent_weights(&eta);
                let inv: Vec<Scalar> = ws
                    .weights()
                    .iter()
                    .map(|w| w.inv().expect("nonzero weight"))
                    .collect();
                let mut e3: Scalar = Ring::zero();
                for i in 0..inv.len() {
                    for j in (i + 1)..inv.len() {
                        for k in (j + 1)..inv.len() {
                            e3 = Ring::add(
                                &e3,
                                &Ring::mul(&Ring::mul(&inv[i], &inv[j]), &inv[k]),
                            );
                        }
                    }
                }
                let mut mixed: Scalar = Ring::zero();
                for i in 0..inv.len() {
                    for j in 0..inv.len() {
                        if i != j {
                            mixed = Ring::add(
                                &mixed,
                                &Ring::mul(&inv[i], &Ring::mul(&inv[j], &inv[j])),
                            );
                        }
                    }
                }
                let term = Ring::add(&Ring::mul(&c3, &e3), &Ring::mul(&c12, &mixed));
                acc = Ring::add(&acc, &Ring::mul(&ws.product(), &term));
            }
            Ok(acc)
        }
        (g, _) => Err(Error::UnsupportedGenus(g)),
    }
}

/// Convenience: ⟨τ_{a_1} ... τ_{a_m}⟩_g against a fresh table.
pub fn psi_integral(genus: u32, exps: &[u32]) -> Rational {
    PsiTable::new().psi_integral(genus, exps)
}

/// n! / |Aut|-free count helper used by reports.
pub fn factorial_rational(n: u64) -> Rational {
    let mut acc = BigInt::from(1);
    for k in 1..=n {
        acc *= k;
    }
    Rational::from_integer(acc)
}
