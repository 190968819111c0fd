//! Integer partitions and Young-diagram combinatorics.
//!
//! Boxes are addressed as (i, j) = (row, column), 1-indexed. The arm and
//! leg of a box follow the convention used throughout this project:
//!
//!   a(s) = (number of boxes in column j) - i,
//!   l(s) = (number of boxes in row i) - j.
//!
//! Note this swaps the roles the two statistics have in most textbooks;
//! the fixed-point tangent weight formulas below are stated for exactly
//! this convention, and a unit test pins it so it cannot drift.
//!
//! Partitions of n index everything downstream (fixed points, matrix rows
//! and columns). The order produced by [`enumerate_partitions`] — reverse
//! lexicographic, largest part first — is THE order; all matrices in all
//! modules agree with it.

use crate::algebra::{Rational, Ring, Scalar};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;

/// Integer partition: weakly decreasing positive parts. The empty
/// partition is allowed.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        assert!(parts.iter().all(|&p| p > 0), "parts must be positive");
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// |λ|.
    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// ℓ(λ), the number of parts.
    pub fn length(&self) -> usize {
        self.parts.len()
    }

    /// Multiplicity of a given part size.
    pub fn multiplicity(&self, k: u32) -> usize {
        self.parts.iter().filter(|&&p| p == k).count()
    }

    /// Conjugate partition (transpose of the diagram).
    pub fn conjugate(&self) -> Partition {
        if self.parts.is_empty() {
            return Partition::empty();
        }
        let max = self.parts[0];
        let parts = (1..=max)
            .map(|j| self.parts.iter().filter(|&&p| p >= j).count() as u32)
            .collect();
        Partition { parts }
    }

    /// n(λ) = Σ (i-1) λ_i.
    pub fn weighted_row_sum(&self) -> u64 {
        self.parts
            .iter()
            .enumerate()
            .map(|(i, &p)| i as u64 * p as u64)
            .sum()
    }

    /// Boxes of the diagram as (row, column), 1-indexed, row-major.
    pub fn boxes(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| (1..=p as usize).map(move |j| (i + 1, j)))
    }

    /// Add one part (used by the Fock creation operators).
    pub fn with_part(&self, k: u32) -> Partition {
        let mut parts = self.parts.clone();
        parts.push(k);
        Partition::new(parts)
    }

    /// Remove one part of the given size, if present.
    pub fn without_part(&self, k: u32) -> Option<Partition> {
        let pos = self.parts.iter().position(|&p| p == k)?;
        let mut parts = self.parts.clone();
        parts.remove(pos);
        Some(Partition { parts })
    }

    /// `true` when `other` dominates `self` in dominance order.
    pub fn dominated_by(&self, other: &Partition) -> bool {
        dominates(other, self)
    }
}

/// Dominance order: λ ⊵ μ if all partial sums of λ weakly exceed those of μ.
pub fn dominates(lambda: &Partition, mu: &Partition) -> bool {
    debug_assert_eq!(lambda.size(), mu.size());
    let mut sl = 0u64;
    let mut sm = 0u64;
    let len = lambda.length().max(mu.length());
    for i in 0..len {
        sl += *lambda.parts().get(i).unwrap_or(&0) as u64;
        sm += *mu.parts().get(i).unwrap_or(&0) as u64;
        if sl < sm {
            return false;
        }
    }
    true
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            write!(f, "{}{}", p, if i + 1 < self.parts.len() { "," } else { "" })?;
        }
        write!(f, ")")
    }
}

/// All partitions of n in reverse lexicographic order: (n) first, (1^n) last.
pub fn enumerate_partitions(n: u32) -> Vec<Partition> {
    fn rec(remaining: u32, max_part: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition {
                parts: prefix.clone(),
            });
            return;
        }
        let hi = remaining.min(max_part);
        for p in (1..=hi).rev() {
            prefix.push(p);
            rec(remaining - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n.max(1), &mut Vec::new(), &mut out);
    out
}

/// Number of partitions of n.
pub fn partition_count(n: u32) -> usize {
    enumerate_partitions(n).len()
}

/// z(μ) = |Aut(μ)| Π μ_i, the centralizer order of the conjugacy class.
pub fn z_factor(mu: &Partition) -> Rational {
    let mut acc = BigInt::from(1);
    for &p in mu.parts() {
        acc *= BigInt::from(p);
    }
    let mut seen: HashMap<u32, u64> = HashMap::new();
    for &p in mu.parts() {
        *seen.entry(p).or_insert(0) += 1;
    }
    for (_, m) in seen {
        for j in 1..=m {
            acc *= BigInt::from(j);
        }
    }
    Rational::from_integer(acc)
}

/// (arm, leg) of a box per the project convention (see module docs).
pub fn arm_leg(lambda: &Partition, i: usize, j: usize) -> Result<(u32, u32)> {
    let row = lambda
        .parts()
        .get(i - 1)
        .copied()
        .ok_or(Error::BoxOutsideDiagram(i, j))?;
    if j == 0 || j as u32 > row || i == 0 {
        return Err(Error::BoxOutsideDiagram(i, j));
    }
    let col_len = lambda.parts().iter().filter(|&&p| p as usize >= j).count() as u32;
    let arm = col_len - i as u32;
    let leg = row - j as u32;
    Ok((arm, leg))
}

/// c(λ; t1, t2) = Σ_{(i,j)} (j-1) t1 + (i-1) t2.
pub fn content_sum(lambda: &Partition) -> Scalar {
    let t1 = Scalar::t1();
    let t2 = Scalar::t2();
    let mut acc: Scalar = Ring::zero();
    for (i, j) in lambda.boxes() {
        let term = Ring::add(&t1.scale_int(j as i64 - 1), &t2.scale_int(i as i64 - 1));
        acc = Ring::add(&acc, &term);
    }
    acc
}

trait ScaleInt {
    fn scale_int(&self, k: i64) -> Self;
}

impl ScaleInt for Scalar {
    fn scale_int(&self, k: i64) -> Scalar {
        Ring::mul(self, &Scalar::from_int(k))
    }
}

/// The 2n tangent weights at the fixed point λ.
#[derive(Clone, Debug)]
pub struct TangentWeightSet {
    weights: Vec<Scalar>,
}

impl TangentWeightSet {
    pub fn weights(&self) -> &[Scalar] {
        &self.weights
    }

    /// Π of the weights, the equivariant Euler class of the tangent space.
    pub fn product(&self) -> Scalar {
        let mut acc: Scalar = Ring::one();
        for w in &self.weights {
            acc = Ring::mul(&acc, w);
        }
        acc
    }

    /// Σ 1/w^e over the weight multiset.
    pub fn sum_inverse_powers(&self, e: u32) -> Scalar {
        let mut acc: Scalar = Ring::zero();
        for w in &self.weights {
            acc = Ring::add(&acc, &w.pow(-(e as i64)));
        }
        acc
    }

    /// Multiset equality against another weight set.
    pub fn same_multiset(&self, other: &[Scalar]) -> bool {
        if self.weights.len() != other.len() {
            return false;
        }
        let mut pool: Vec<Option<&Scalar>> = other.iter().map(Some).collect();
        'outer: for w in &self.weights {
            for slot in pool.iter_mut() {
                if slot.map_or(false, |v| v == w) {
                    *slot = None;
                    continue 'outer;
                }
            }
            return false;
        }
        true
    }
}

/// Tangent weights -a t2 + (l+1) t1 and -l t1 + (a+1) t2 over all boxes.
pub fn tangent_weights(lambda: &Partition) -> TangentWeightSet {
    let t1 = Scalar::t1();
    let t2 = Scalar::t2();
    let mut weights = Vec::with_capacity(2 * lambda.size() as usize);
    for (i, j) in lambda.boxes() {
        let (a, l) = arm_leg(lambda, i, j).expect("box from diagram iterator");
        let a = a as i64;
        let l = l as i64;
        weights.push(Ring::add(
            &t2.scale_int(-a),
            &t1.scale_int(l + 1),
        ));
        weights.push(Ring::add(
            &t1.scale_int(-l),
            &t2.scale_int(a + 1),
        ));
    }
    TangentWeightSet { weights }
}

/// N_{2m-1, λ}: the odd negative-power weight sums entering the q = 0
/// closed form. The denominators are the negatives of the tangent
/// weights, so N_{2m-1,λ} = Σ_w (-1/w)^{2m-1}.
pub fn bernoulli_weight_sum(lambda: &Partition, m: u32) -> Scalar {
    assert!(m >= 1);
    let t1 = Scalar::t1();
    let t2 = Scalar::t2();
    let e = 2 * m as i64 - 1;
    let mut acc: Scalar = Ring::zero();
    for (i, j) in lambda.boxes() {
        let (a, l) = arm_leg(lambda, i, j).expect("box from diagram iterator");
        let a = a as i64;
        let l = l as i64;
        let d1 = Ring::sub(&t2.scale_int(a), &t1.scale_int(l + 1));
        let d2 = Ring::sub(&t1.scale_int(l), &t2.scale_int(a + 1));
        acc = Ring::add(&acc, &d1.pow(-e));
        acc = Ring::add(&acc, &d2.pow(-e));
    }
    acc
}

// ---- symmetric group characters ----

static CHARACTER_MEMO: Mutex<Option<HashMap<(Vec<u32>, Vec<u32>), i64>>> = Mutex::new(None);

/// Irreducible character χ_λ(μ) of S_n on the class of cycle type μ,
/// by the Murnaghan–Nakayama rule on beta-numbers, memoized.
pub fn character(lambda: &Partition, mu: &Partition) -> Result<Rational> {
    if lambda.size() != mu.size() {
        return Err(Error::SizeMismatch(lambda.to_string(), mu.to_string()));
    }
    let v = character_inner(lambda.parts(), mu.parts());
    Ok(Rational::from_integer(BigInt::from(v)))
}

fn character_inner(lambda: &[u32], mu: &[u32]) -> i64 {
    if mu.is_empty() {
        return 1;
    }
    {
        let guard = CHARACTER_MEMO.lock().unwrap();
        if let Some(map) = guard.as_ref() {
            if let Some(&v) = map.get(&(lambda.to_vec(), mu.to_vec())) {
                return v;
            }
        }
    }
    // Beta-numbers: strictly decreasing first-column hook lengths.
    let len = lambda.len();
    let betas: Vec<i64> = lambda
        .iter()
        .enumerate()
        .map(|(i, &p)| p as i64 + (len - 1 - i) as i64)
        .collect();
    let r = mu[0] as i64;
    let rest = &mu[1..];
    let mut total = 0i64;
    for (idx, &b) in betas.iter().enumerate() {
        let nb = b - r;
        if nb < 0 || betas.contains(&nb) {
            continue;
        }
        // Height of the strip = number of betas strictly between nb and b.
        let crossings = betas.iter().filter(|&&x| x < b && x > nb).count();
        let sign = if crossings % 2 == 0 { 1 } else { -1 };
        let mut new_betas: Vec<i64> = betas.clone();
        new_betas[idx] = nb;
        new_betas.sort_unstable_by(|a, b| b.cmp(a));
        // Convert back to a partition.
        let m = new_betas.len();
        let mut new_parts: Vec<u32> = new_betas
            .iter()
            .enumerate()
            .map(|(i, &x)| (x - (m - 1 - i) as i64) as u32)
            .collect();
        new_parts.retain(|&p| p > 0);
        total += sign * character_inner(&new_parts, rest);
    }
    let mut guard = CHARACTER_MEMO.lock().unwrap();
    guard
        .get_or_insert_with(HashMap::new)
        .insert((lambda.to_vec(), mu.to_vec()), total);
    total
}

/// Product of hook lengths of λ.
pub fn hook_product(lambda: &Partition) -> Rational {
    let mut acc = BigInt::from(1);
    for (i, j) in lambda.boxes() {
        let (a, l) = arm_leg(lambda, i, j).unwrap();
        acc *= BigInt::from(a + l + 1);
    }
    Rational::from_integer(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::frac;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec())
    }

    #[test]
    fn enumeration_order_and_counts() {
        assert_eq!(enumerate_partitions(0), vec![Partition::empty()]);
        assert_eq!(enumerate_partitions(2), vec![p(&[2]), p(&[1, 1])]);
        assert_eq!(enumerate_partitions(5).len(), 7);
        assert_eq!(
            enumerate_partitions(4),
            vec![p(&[4]), p(&[3, 1]), p(&[2, 2]), p(&[2, 1, 1]), p(&[1, 1, 1, 1])]
        );
    }

    #[test]
    fn z_factor_values() {
        assert_eq!(z_factor(&p(&[2, 1])), frac(2, 1).as_rational().unwrap());
        assert_eq!(z_factor(&p(&[1, 1])), frac(2, 1).as_rational().unwrap());
        assert_eq!(z_factor(&p(&[3, 3])), frac(18, 1).as_rational().unwrap());
    }

    /// Pins the project arm/leg convention; a silent "fix" to the textbook
    /// convention makes this fail.
    #[test]
    fn arm_leg_convention_pinned() {
        assert_eq!(arm_leg(&p(&[2]), 1, 1).unwrap(), (0, 1));
        assert_eq!(arm_leg(&p(&[2]), 1, 2).unwrap(), (0, 0));
        assert_eq!(arm_leg(&p(&[1]), 1, 1).unwrap(), (0, 0));
        assert!(arm_leg(&p(&[2]), 2, 1).is_err());
    }

    #[test]
    fn content_sums() {
        assert!(content_sum(&p(&[1])).is_zero());
        assert_eq!(content_sum(&p(&[2])), Scalar::t1());
        assert_eq!(content_sum(&p(&[1, 1])), Scalar::t2());
    }

    #[test]
    fn tangent_weights_small() {
        let w1 = tangent_weights(&p(&[1]));
        assert!(w1.same_multiset(&[Scalar::t1(), Scalar::t2()]));
        let w2 = tangent_weights(&p(&[2]));
        let t1 = Scalar::t1();
        let t2 = Scalar::t2();
        let expect = vec![
            Ring::add(&t1, &t1),
            Ring::sub(&t2, &t1),
            t1.clone(),
            t2.clone(),
        ];
        assert!(w2.same_multiset(&expect));
    }

    #[test]
    fn tangent_weight_sum_is_n_times_t1_plus_t2() {
        for n in 1..=6 {
            for lam in enumerate_partitions(n) {
                let ws = tangent_weights(&lam);
                let mut sum: Scalar = Ring::zero();
                for w in ws.weights() {
                    sum = Ring::add(&sum, w);
                }
                let want = Ring::mul(
                    &Scalar::from_int(n as i64),
                    &Ring::add(&Scalar::t1(), &Scalar::t2()),
                );
                assert_eq!(sum, want);
                assert_eq!(ws.weights().len(), 2 * n as usize);
            }
        }
    }

    #[test]
    fn tangent_weight_multiset_symmetry() {
        // w -> t1 + t2 - w fixes the multiset, |λ| <= 6.
        let tsum = Ring::add(&Scalar::t1(), &Scalar::t2());
        for n in 1..=6 {
            for lam in enumerate_partitions(n) {
                let ws = tangent_weights(&lam);
                let reflected: Vec<Scalar> =
                    ws.weights().iter().map(|w| Ring::sub(&tsum, w)).collect();
                assert!(ws.same_multiset(&reflected), "λ = {}", lam);
            }
        }
    }

    #[test]
    fn conjugation_swaps_t1_t2() {
        for n in 1..=5 {
            for lam in enumerate_partitions(n) {
                let swapped: Vec<Scalar> = tangent_weights(&lam.conjugate())
                    .weights()
                    .iter()
                    .map(|w| w.swap_vars())
                    .collect();
                assert!(tangent_weights(&lam).same_multiset(&swapped));
            }
        }
    }

    #[test]
    fn bernoulli_weight_sums_single_box() {
        let t1 = Scalar::t1();
        let t2 = Scalar::t2();
        let want1 = Ring::neg(&Ring::add(&t1.pow(-1), &t2.pow(-1)));
        assert_eq!(bernoulli_weight_sum(&p(&[1]), 1), want1);
        let want2 = Ring::neg(&Ring::add(&t1.pow(-3), &t2.pow(-3)));
        assert_eq!(bernoulli_weight_sum(&p(&[1]), 2), want2);
    }

    #[test]
    fn bernoulli_weight_sum_crosschecks_tangent_weights() {
        // N_{2m-1,λ} = Σ_w (-1/w)^{2m-1}, both sides computed independently.
        for n in 1..=5 {
            for lam in enumerate_partitions(n) {
                for m in 1..=3 {
                    let direct = bernoulli_weight_sum(&lam, m);
                    let e = 2 * m as i64 - 1;
                    let mut other: Scalar = Ring::zero();
                    for w in tangent_weights(&lam).weights() {
                        other = Ring::add(&other, &Ring::neg(&w.inv().unwrap()).pow(e));
                    }
                    assert_eq!(direct, other);
                }
            }
        }
    }

    #[test]
    fn character_values() {
        // trivial representation
        for n in 1..=5 {
            for mu in enumerate_partitions(n) {
                assert_eq!(
                    character(&p(&[n]), &mu).unwrap(),
                    frac(1, 1).as_rational().unwrap()
                );
            }
        }
        // sign character on a transposition
        assert_eq!(
            character(&p(&[1, 1]), &p(&[2])).unwrap(),
            frac(-1, 1).as_rational().unwrap()
        );
        assert!(character(&p(&[2]), &p(&[1, 1, 1])).is_err());
    }

    #[test]
    fn character_orthogonality() {
        // rows: Σ_μ χ_λ(μ) χ_λ'(μ)/z(μ) = δ; columns: Σ_λ χ_λ(μ)χ_λ(ν) = δ z(μ).
        for n in 1..=5u32 {
            let parts = enumerate_partitions(n);
            for a in &parts {
                for b in &parts {
                    let mut acc = Rational::from_integer(BigInt::from(0));
                    for mu in &parts {
                        let ca = character(a, mu).unwrap();
                        let cb = character(b, mu).unwrap();
                        acc += ca * cb / z_factor(mu);
                    }
                    let want = if a == b { 1 } else { 0 };
                    assert_eq!(acc, Rational::from_integer(BigInt::from(want)));
                }
            }
            for mu in &parts {
                for nu in &parts {
                    let mut acc = Rational::from_integer(BigInt::from(0));
                    for lam in &parts {
                        acc += character(lam, mu).unwrap() * character(lam, nu).unwrap();
                    }
                    let want = if mu == nu {
                        z_factor(mu)
                    } else {
                        Rational::from_integer(BigInt::from(0))
                    };
                    assert_eq!(acc, want, "n={} mu={} nu={}", n, mu, nu);
                }
            }
            assert_eq!(parts.len(), partition_count(n));
        }
    }

    #[test]
    fn hook_products() {
        assert_eq!(hook_product(&p(&[2])).to_string(), "2");
        assert_eq!(hook_product(&p(&[2, 1])).to_string(), "3");
        assert_eq!(hook_product(&p(&[2, 2])).to_string(), "12");
    }

    #[test]
    fn dominance() {
        assert!(dominates(&p(&[3]), &p(&[2, 1])));
        assert!(dominates(&p(&[2, 1]), &p(&[1, 1, 1])));
        assert!(!dominates(&p(&[2, 2]), &p(&[3, 1])));
    }
}
