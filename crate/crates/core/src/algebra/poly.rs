//! Sparse bivariate polynomials over the integers.
//!
//! These are the numerators and denominators of [`crate::algebra::Scalar`].
//! Exponent vectors are ordered graded-lexicographically so that every
//! polynomial has a well-defined leading term, which fixes the sign
//! conventions used for canonical forms.
//!
//! The gcd is a primitive polynomial remainder sequence, run recursively:
//! bivariate polynomials are treated as univariate in the second variable
//! with univariate polynomial coefficients, and contents are split off at
//! each level. Exact division is by leading-term reduction and panics if
//! the division is not exact, since every call site divides by a known
//! factor.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// Exponent pair (e1, e2) for t1^e1 t2^e2, graded-lex ordered.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub struct Mono(pub u16, pub u16);

impl Mono {
    pub fn total(&self) -> u32 {
        self.0 as u32 + self.1 as u32
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.total(), self.0).cmp(&(other.total(), other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse bivariate polynomial with `BigInt` coefficients.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct PolyZ {
    terms: BTreeMap<Mono, BigInt>,
}

impl PolyZ {
    pub fn zero() -> Self {
        PolyZ {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Mono(0, 0), c);
        }
        PolyZ { terms }
    }

    pub fn monomial(m: Mono, c: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        PolyZ { terms }
    }

    /// The variable t1.
    pub fn var1() -> Self {
        Self::monomial(Mono(1, 0), BigInt::one())
    }

    /// The variable t2.
    pub fn var2() -> Self {
        Self::monomial(Mono(0, 1), BigInt::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&Mono(0, 0)).map_or(false, |c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.contains_key(&Mono(0, 0)))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Leading (graded-lex greatest) monomial and coefficient.
    pub fn leading(&self) -> Option<(Mono, &BigInt)> {
        self.terms.iter().next_back().map(|(m, c)| (*m, c))
    }

    pub fn coeff(&self, m: Mono) -> BigInt {
        self.terms.get(&m).cloned().unwrap_or_else(BigInt::zero)
    }

    fn insert(&mut self, m: Mono, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in rhs.terms.iter() {
            out.insert(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in rhs.terms.iter() {
            out.insert(*m, -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        PolyZ {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return PolyZ::zero();
        }
        // Dense accumulation grid: avoids tree rebalancing on the hot path.
        let d1 = (self.deg1() + rhs.deg1()) as usize + 1;
        let d2 = (self.deg2() + rhs.deg2()) as usize + 1;
        let mut grid: Vec<BigInt> = vec![BigInt::zero(); d1 * d2];
        let a: Vec<(usize, usize, &BigInt)> = self
            .terms
            .iter()
            .map(|(m, c)| (m.0 as usize, m.1 as usize, c))
            .collect();
        let b: Vec<(usize, usize, &BigInt)> = rhs
            .terms
            .iter()
            .map(|(m, c)| (m.0 as usize, m.1 as usize, c))
            .collect();
        for (e1, e2, c1) in &a {
            for (f1, f2, c2) in &b {
                let idx = (e1 + f1) * d2 + (e2 + f2);
                grid[idx] += *c1 * *c2;
            }
        }
        let mut terms = BTreeMap::new();
        for (idx, c) in grid.into_iter().enumerate() {
            if !c.is_zero() {
                terms.insert(Mono((idx / d2) as u16, (idx % d2) as u16), c);
            }
        }
        PolyZ { terms }
    }

    pub fn mul_bigint(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return PolyZ::zero();
        }
        PolyZ {
            terms: self.terms.iter().map(|(m, k)| (*m, k * c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = PolyZ::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Positive gcd of all coefficients; zero polynomial has content 0.
    pub fn int_content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divide all coefficients by an exact integer divisor.
    pub fn div_bigint_exact(&self, d: &BigInt) -> Self {
        assert!(!d.is_zero(), "division by zero content");
        PolyZ {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let (q, r) = c.div_rem(d);
                    assert!(r.is_zero(), "inexact integer content division");
                    (*m, q)
                })
                .collect(),
        }
    }

    /// Substitute t_i -> -t_i: flips the sign of odd-total-degree terms.
    pub fn bar(&self) -> Self {
        PolyZ {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let c = if m.total() % 2 == 1 { -c.clone() } else { c.clone() };
                    (*m, c)
                })
                .collect(),
        }
    }

    /// Swap t1 and t2.
    pub fn swap_vars(&self) -> Self {
        PolyZ {
            terms: self.terms.iter().map(|(m, c)| (Mono(m.1, m.0), c.clone())).collect(),
        }
    }

    /// Evaluate at rational arguments. Returns (numerator, denominator power base).
    pub fn eval_rational(
        &self,
        x1: &num_rational::BigRational,
        x2: &num_rational::BigRational,
    ) -> num_rational::BigRational {
        let mut acc = num_rational::BigRational::zero();
        for (m, c) in self.terms.iter() {
            let mut term = num_rational::BigRational::from_integer(c.clone());
            for _ in 0..m.0 {
                term *= x1;
            }
            for _ in 0..m.1 {
                term *= x2;
            }
            acc += term;
        }
        acc
    }

    /// Exact division; panics if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Self {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut rem = self.clone();
        let mut quot = PolyZ::zero();
        let (dm, dc) = d.leading().unwrap();
        while !rem.is_zero() {
            let (rm, rc) = rem.leading().unwrap();
            assert!(
                rm.0 >= dm.0 && rm.1 >= dm.1,
                "inexact polynomial division (monomial)"
            );
            let (qc, qr) = rc.div_rem(dc);
            assert!(qr.is_zero(), "inexact polynomial division (coefficient)");
            let qm = Mono(rm.0 - dm.0, rm.1 - dm.1);
            let t = PolyZ::monomial(qm, qc);
            rem = rem.sub(&t.mul(d));
            quot = quot.add(&t);
        }
        quot
    }

    /// True if `d` divides `self` exactly.
    pub fn divides(d: &Self, n: &Self) -> bool {
        if n.is_zero() {
            return true;
        }
        if d.is_zero() {
            return false;
        }
        let mut rem = n.clone();
        let (dm, dc) = d.leading().unwrap();
        while !rem.is_zero() {
            let (rm, rc) = rem.leading().unwrap();
            if rm.0 < dm.0 || rm.1 < dm.1 {
                return false;
            }
            let (qc, qr) = rc.div_rem(dc);
            if !qr.is_zero() {
                return false;
            }
            let qm = Mono(rm.0 - dm.0, rm.1 - dm.1);
            rem = rem.sub(&PolyZ::monomial(qm, qc).mul(d));
        }
        true
    }

    pub fn deg2(&self) -> u16 {
        self.terms.keys().map(|m| m.1).max().unwrap_or(0)
    }

    pub fn deg1(&self) -> u16 {
        self.terms.keys().map(|m| m.0).max().unwrap_or(0)
    }

    /// Coefficients with respect to powers of t2, as polynomials in t1.
    fn coeffs_in_var2(&self) -> Vec<PolyZ> {
        let d = self.deg2() as usize;
        let mut out = vec![PolyZ::zero(); d + 1];
        for (m, c) in self.terms.iter() {
            out[m.1 as usize].insert(Mono(m.0, 0), c.clone());
        }
        out
    }

    fn from_coeffs_in_var2(coeffs: &[PolyZ]) -> PolyZ {
        let mut out = PolyZ::zero();
        for (j, p) in coeffs.iter().enumerate() {
            for (m, c) in p.terms.iter() {
                debug_assert_eq!(m.1, 0);
                out.insert(Mono(m.0, j as u16), c.clone());
            }
        }
        out
    }

    /// Normalize sign so the leading coefficient is positive.
    pub fn normalize_sign(&self) -> (Self, bool) {
        match self.leading() {
            Some((_, c)) if c.is_negative() => (self.neg(), true),
            _ => (self.clone(), false),
        }
    }

    /// Gcd, normalized to positive leading coefficient. gcd(0, 0) = 0.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        if a.is_zero() {
            return b.normalize_sign().0;
        }
        if b.is_zero() {
            return a.normalize_sign().0;
        }
        let ca = a.int_content();
        let cb = b.int_content();
        let cg = ca.gcd(&cb);
        let pa = a.div_bigint_exact(&ca);
        let pb = b.div_bigint_exact(&cb);
        let g = Self::gcd_primitive(&pa, &pb);
        g.mul_bigint(&cg)
    }

    /// Evaluate at t2 = r, producing a univariate polynomial in t1.
    fn eval_var2_at(&self, r: &BigInt) -> PolyZ {
        let mut out = PolyZ::zero();
        for (m, c) in self.terms.iter() {
            out.insert(Mono(m.0, 0), c * r.pow(m.1 as u32));
        }
        out
    }

    /// Gcd of the coefficients of t1-powers, an element of Z[t2].
    fn content_var1(p: &Self) -> PolyZ {
        let d = p.deg1() as usize;
        let mut coeffs = vec![PolyZ::zero(); d + 1];
        for (m, c) in p.terms.iter() {
            coeffs[m.0 as usize].insert(Mono(0, m.1), c.clone());
        }
        let mut g = PolyZ::zero();
        for c in coeffs {
            if c.is_zero() {
                continue;
            }
            g = if g.is_zero() { c } else { Self::gcd(&g, &c) };
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Sound one-variable probe: if the gcd of the inputs specialized at
    /// t2 = r has t1-degree 0 (r chosen so the t1-leading coefficient of
    /// `a` survives), the bivariate gcd is free of t1 and reduces to a
    /// univariate gcd of t1-contents. Catches the ubiquitous coprime case
    /// without running the bivariate remainder sequence.
    fn probe_gcd_t1_free(a: &Self, b: &Self) -> Option<PolyZ> {
        let d1 = a.deg1();
        // leading t1-coefficient of `a` as a polynomial in t2
        let lead: Vec<(u16, BigInt)> = a
            .terms
            .iter()
            .filter(|(m, _)| m.0 == d1)
            .map(|(m, c)| (m.1, c.clone()))
            .collect();
        // a degree-d polynomial has at most d integer roots
        let attempts = lead.iter().map(|(e, _)| *e).max().unwrap_or(0) as u32 + 1;
        let mut r = BigInt::from(1);
        let mut found = false;
        for _ in 0..=attempts {
            let lv: BigInt = lead.iter().map(|(e, c)| c * r.pow(*e as u32)).sum();
            if !lv.is_zero() {
                found = true;
                break;
            }
            r += 1;
        }
        if !found {
            return None;
        }
        let ua = a.eval_var2_at(&r);
        let ub = b.eval_var2_at(&r);
        if ub.is_zero() {
            return None;
        }
        let g = Self::gcd_univariate1(
            &ua.div_bigint_exact(&ua.int_content()),
            &ub.div_bigint_exact(&ub.int_content()),
        );
        if g.deg1() > 0 {
            return None;
        }
        // gcd is in Z[t2]: it divides both t1-contents.
        let ca = Self::content_var1(a);
        let cb = Self::content_var1(b);
        Some(Self::gcd(&ca, &cb).normalize_sign().0)
    }

    /// Brown-style gcd by univariate specializations at t2 = r and Newton
    /// interpolation, with leading-coefficient normalization and a final
    /// exact-division verification that makes the result unconditionally
    /// correct. Inputs must be integer-primitive with positive t1-degree.
    /// Returns `None` on bad luck (caller falls back to the remainder
    /// sequence).
    fn gcd_by_interpolation(a: &Self, b: &Self) -> Option<PolyZ> {
        use num_rational::BigRational;
        // Split t1-contents (Gauss): gcd = gcd(contents) * gcd(prim parts).
        let ca = Self::content_var1(a);
        let cb = Self::content_var1(b);
        let pa = a.div_exact(&ca);
        let pb = b.div_exact(&cb);
        let g_cont = Self::gcd(&ca, &cb);

        let lead_poly = |p: &PolyZ| -> PolyZ {
            let d = p.deg1();
            let mut out = PolyZ::zero();
            for (m, c) in p.terms.iter() {
                if m.0 == d {
                    out.insert(Mono(0, m.1), c.clone());
                }
            }
            out
        };
        let la = lead_poly(&pa);
        let lb = lead_poly(&pb);
        let gamma = Self::gcd(&la, &lb);
        let needed = (pa.deg2().min(pb.deg2()) + gamma.deg2()) as usize + 1;

        let mut points: Vec<(BigInt, Vec<BigRational>)> = Vec::new();
        let mut dmin = usize::MAX;
        let mut tried = 0i64;
        while points.len() < needed {
            tried += 1;
            if tried > 128 {
                return None;
            }
            // 0, 1, -1, 2, -2, ...
            let r = BigInt::from(if tried % 2 == 1 { tried / 2 } else { -tried / 2 });
            let la_r = la.eval_var2_at(&r).coeff(Mono(0, 0));
            let lb_r = lb.eval_var2_at(&r).coeff(Mono(0, 0));
            if la_r.is_zero() || lb_r.is_zero() {
                continue;
            }
            let ua = pa.eval_var2_at(&r);
            let ub = pb.eval_var2_at(&r);
            let g_r = Self::gcd_univariate1(
                &ua.div_bigint_exact(&ua.int_content()),
                &ub.div_bigint_exact(&ub.int_content()),
            );
            let d_r = g_r.deg1() as usize;
            if d_r == 0 {
                // primitive parts are coprime
                return Some(g_cont.normalize_sign().0);
            }
            if d_r > dmin {
                continue; // unlucky point
            }
            if d_r < dmin {
                dmin = d_r;
                points.clear();
            }
            // Normalize so the leading coefficient equals γ(r).
            let gamma_r = gamma.eval_var2_at(&r).coeff(Mono(0, 0));
            let lc = g_r.coeff(Mono(dmin as u16, 0));
            let scale = BigRational::new(gamma_r, lc);
            let coeffs: Vec<BigRational> = (0..=dmin)
                .map(|j| {
                    BigRational::from_integer(g_r.coeff(Mono(j as u16, 0))) * scale.clone()
                })
                .collect();
            points.push((r, coeffs));
        }

        // Newton interpolation per t1-degree.
        let xs: Vec<BigRational> = points
            .iter()
            .map(|(r, _)| BigRational::from_integer(r.clone()))
            .collect();
        let mut h = PolyZ::zero();
        let mut denominator_lcm = BigInt::one();
        let mut columns: Vec<Vec<BigRational>> = Vec::new();
        for j in 0..=dmin {
            let ys: Vec<BigRational> = points.iter().map(|(_, c)| c[j].clone()).collect();
            let coeffs = newton_interpolate(&xs, &ys);
            for c in &coeffs {
                let d = c.denom().clone();
                denominator_lcm = &denominator_lcm / denominator_lcm.gcd(&d) * d;
            }
            columns.push(coeffs);
        }
        for (j, coeffs) in columns.iter().enumerate() {
            for (e2, c) in coeffs.iter().enumerate() {
                let scaled = c * BigRational::from_integer(denominator_lcm.clone());
                debug_assert!(scaled.is_integer());
                h.insert(Mono(j as u16, e2 as u16), scaled.to_integer());
            }
        }
        if h.is_zero() {
            return None;
        }
        let hc = Self::content_var1(&h);
        if hc.is_zero() {
            return None;
        }
        let h = h.div_exact(&hc);
        let h = h.div_bigint_exact(&h.int_content());
        let (h, _) = h.normalize_sign();
        if Self::divides(&h, &pa) && Self::divides(&h, &pb) {
            Some(g_cont.mul(&h).normalize_sign().0)
        } else {
            None
        }
    }

    /// Gcd of integer-primitive inputs, itself primitive with positive lead.
    fn gcd_primitive(a: &Self, b: &Self) -> Self {
        if a.is_one() || b.is_one() {
            return PolyZ::one();
        }
        if a.deg2() == 0 && b.deg2() == 0 {
            return Self::gcd_univariate1(a, b);
        }
        if a.deg1() == 0 && b.deg1() == 0 {
            return Self::gcd_univariate1(&a.swap_vars(), &b.swap_vars()).swap_vars();
        }
        // A t1-free input forces a t1-free gcd (degrees are additive).
        if a.deg1() == 0 {
            return Self::gcd(a, &Self::content_var1(b)).normalize_sign().0;
        }
        if b.deg1() == 0 {
            return Self::gcd(b, &Self::content_var1(a)).normalize_sign().0;
        }
        if let Some(g) = Self::probe_gcd_t1_free(a, b) {
            return g;
        }
        if let Some(g) = Self::gcd_by_interpolation(a, b) {
            return g;
        }
        // Treat t2 as the main variable with Z[t1] coefficients.
        let ca = Self::content_var2(a);
        let cb = Self::content_var2(b);
        let cg = Self::gcd_primitive(
            &ca.div_bigint_exact(&ca.int_content()),
            &cb.div_bigint_exact(&cb.int_content()),
        );
        let icg = ca.int_content().gcd(&cb.int_content());
        let content_gcd = cg.mul_bigint(&icg);

        let mut u = Self::pp_var2(a, &ca);
        let mut v = Self::pp_var2(b, &cb);
        if u.deg2() < v.deg2() {
            std::mem::swap(&mut u, &mut v);
        }
        loop {
            let r = Self::pseudo_rem_var2(&u, &v);
            if r.is_zero() {
                let cv = Self::content_var2(&v);
                let pp = Self::pp_var2(&v, &cv);
                let (pp, _) = pp.normalize_sign();
                return content_gcd.mul(&pp).normalize_sign().0;
            }
            if r.deg2() == 0 {
                // Primitive parts are coprime as t2-polynomials.
                return content_gcd.normalize_sign().0;
            }
            u = v;
            let cr = Self::content_var2(&r);
            v = Self::pp_var2(&r, &cr);
        }
    }

    /// Gcd of the t2-coefficients (an element of Z[t1]).
    fn content_var2(p: &Self) -> PolyZ {
        let mut g = PolyZ::zero();
        for c in p.coeffs_in_var2() {
            if c.is_zero() {
                continue;
            }
            g = if g.is_zero() { c } else { Self::gcd(&g, &c) };
            if g.is_one() {
                break;
            }
        }
        g
    }

    fn pp_var2(p: &Self, content: &PolyZ) -> PolyZ {
        let coeffs: Vec<PolyZ> = p
            .coeffs_in_var2()
            .iter()
            .map(|c| {
                if c.is_zero() {
                    PolyZ::zero()
                } else {
                    c.div_exact(content)
                }
            })
            .collect();
        Self::from_coeffs_in_var2(&coeffs)
    }

    /// Pseudo-remainder of u by v in the variable t2.
    fn pseudo_rem_var2(u: &Self, v: &Self) -> Self {
        let dv = v.deg2();
        let vc = v.coeffs_in_var2();
        let lv = vc[dv as usize].clone();
        let mut r = u.clone();
        while !r.is_zero() && r.deg2() >= dv {
            let dr = r.deg2();
            let rc = r.coeffs_in_var2();
            let lr = rc[dr as usize].clone();
            // r <- lv*r - lr * t2^(dr-dv) * v
            let shift = PolyZ::monomial(Mono(0, dr - dv), BigInt::one());
            r = r.mul2(&lv).sub(&v.mul(&shift).mul2(&lr));
        }
        r
    }

    fn mul2(&self, other: &PolyZ) -> PolyZ {
        self.mul(other)
    }

    /// Univariate gcd in t1 over Z: modular with CRT lifting, verified by
    /// exact division; falls back to the primitive remainder sequence on
    /// bad luck. Returns the primitive gcd of the primitive parts.
    fn gcd_univariate1(a: &Self, b: &Self) -> Self {
        if let Some(g) = Self::gcd_univariate1_modular(a, b) {
            return g;
        }
        Self::gcd_univariate1_prs(a, b)
    }

    fn gcd_univariate1_modular(a: &Self, b: &Self) -> Option<Self> {
        // 62-bit primes; products accumulate via CRT until verification.
        const PRIMES: [u64; 8] = [
            4611686018427387847,
            4611686018427387817,
            4611686018427387787,
            4611686018427387761,
            4611686018427387619,
            4611686018427387527,
            4611686018427387379,
            4611686018427387229,
        ];
        let pa = a.div_bigint_exact(&a.int_content());
        let pb = b.div_bigint_exact(&b.int_content());
        let da = pa.deg1() as usize;
        let db = pb.deg1() as usize;
        let dense = |p: &PolyZ, d: usize| -> Vec<BigInt> {
            let mut out = vec![BigInt::zero(); d + 1];
            for (m, c) in p.terms.iter() {
                out[m.0 as usize] = c.clone();
            }
            out
        };
        let va = dense(&pa, da);
        let vb = dense(&pb, db);
        let gamma = va[da].gcd(&vb[db]);

        let mut best_deg = usize::MAX;
        // (residues scaled to lead = γ, modulus)
        let mut crt: Option<(Vec<BigInt>, BigInt)> = None;
        for &p in PRIMES.iter() {
            let pb_big = BigInt::from(p);
            let ra: Vec<u64> = va.iter().map(|c| rem_u64(c, p)).collect();
            let rb: Vec<u64> = vb.iter().map(|c| rem_u64(c, p)).collect();
            if ra[da] == 0 || rb[db] == 0 {
                continue;
            }
            let g = euclid_mod_p(&ra, &rb, p);
            let d = g.len() - 1;
            if d == 0 {
                return Some(PolyZ::one());
            }
            if d > best_deg {
                continue; // unlucky prime
            }
            let gamma_p = rem_u64(&gamma, p);
            let scaled: Vec<BigInt> = g
                .iter()
                .map(|&c| BigInt::from(mulmod(c, gamma_p, p)))
                .collect();
            if d < best_deg {
                best_deg = d;
                crt = Some((scaled, pb_big.clone()));
            } else {
                let (acc, modulus) = crt.take().unwrap();
                let combined = crt_combine(&acc, &modulus, &scaled, &pb_big);
                crt = Some((combined, modulus * &pb_big));
            }
            // candidate: symmetric lift, primitive part, verify
            let (acc, modulus) = crt.as_ref().unwrap();
            let half = modulus / 2;
            let mut cand = PolyZ::zero();
            for (e, c) in acc.iter().enumerate() {
                let lifted = if *c > half { c - modulus } else { c.clone() };
                cand.insert(Mono(e as u16, 0), lifted);
            }
            if cand.is_zero() {
                continue;
            }
            let content = cand.int_content();
            let cand = cand.div_bigint_exact(&content).normalize_sign().0;
            if Self::divides(&cand, &pa) && Self::divides(&cand, &pb) {
                return Some(cand);
            }
        }
        None
    }

    fn gcd_univariate1_prs(a: &Self, b: &Self) -> Self {
        let mut u = a.clone();
        let mut v = b.clone();
        if u.deg1() < v.deg1() {
            std::mem::swap(&mut u, &mut v);
        }
        loop {
            let r = Self::pseudo_rem_var1(&u, &v);
            if r.is_zero() {
                let c = v.int_content();
                return v.div_bigint_exact(&c).normalize_sign().0;
            }
            if r.deg1() == 0 {
                return PolyZ::one();
            }
            u = v;
            let c = r.int_content();
            v = r.div_bigint_exact(&c);
        }
    }

    fn pseudo_rem_var1(u: &Self, v: &Self) -> Self {
        let dv = v.deg1();
        let lv = v.coeff(Mono(dv, 0));
        let mut r = u.clone();
        while !r.is_zero() && r.deg1() >= dv {
            let dr = r.deg1();
            let lr = r.coeff(Mono(dr, 0));
            let shift = PolyZ::monomial(Mono(dr - dv, 0), lr);
            r = r.mul_bigint(&lv).sub(&v.mul(&shift));
        }
        r
    }

    /// Render with the given variable names, terms in descending order.
    pub fn format_with(&self, v1: &str, v2: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || (m.0 == 0 && m.1 == 0) {
                factors.push(abs.to_string());
            }
            match m.0 {
                0 => {}
                1 => factors.push(v1.to_string()),
                e => factors.push(format!("{}^{}", v1, e)),
            }
            match m.1 {
                0 => {}
                1 => factors.push(v2.to_string()),
                e => factors.push(format!("{}^{}", v2, e)),
            }
            s.push_str(&factors.join("*"));
        }
        s
    }
}

impl fmt::Display for PolyZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_with("t1", "t2"))
    }
}

// ---- small modular helpers for the univariate gcd ----

fn rem_u64(c: &BigInt, p: u64) -> u64 {
    use num_traits::ToPrimitive;
    let m = c % BigInt::from(p);
    let m = if m.is_negative() { m + BigInt::from(p) } else { m };
    m.to_u64().unwrap()
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    acc
}

fn invmod(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

/// Monic gcd of dense coefficient vectors over F_p.
fn euclid_mod_p(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let trim = |v: &mut Vec<u64>| {
        while v.len() > 1 && *v.last().unwrap() == 0 {
            v.pop();
        }
    };
    let mut u = a.to_vec();
    let mut v = b.to_vec();
    trim(&mut u);
    trim(&mut v);
    if u.len() < v.len() {
        std::mem::swap(&mut u, &mut v);
    }
    while !(v.len() == 1 && v[0] == 0) {
        // u mod v
        let dv = v.len() - 1;
        let lv_inv = invmod(v[dv], p);
        while u.len() >= v.len() && !(u.len() == 1 && u[0] == 0) {
            let du = u.len() - 1;
            let f = mulmod(u[du], lv_inv, p);
            if f != 0 {
                let shift = du - dv;
                for i in 0..=dv {
                    let sub = mulmod(f, v[i], p);
                    let idx = i + shift;
                    u[idx] = (u[idx] + p - sub) % p;
                }
            }
            trim(&mut u);
            if u.len() - 1 < dv || (u.len() == 1 && u[0] == 0) {
                break;
            }
        }
        std::mem::swap(&mut u, &mut v);
        trim(&mut v);
    }
    // make monic
    let d = u.len() - 1;
    let inv = invmod(u[d], p);
    u.iter().map(|&c| mulmod(c, inv, p)).collect()
}

/// CRT combine coefficient vectors modulo coprime moduli.
fn crt_combine(a: &[BigInt], ma: &BigInt, b: &[BigInt], mb: &BigInt) -> Vec<BigInt> {
    use num_integer::Integer as _;
    let e = ma.extended_gcd(mb);
    debug_assert!(e.gcd.is_one());
    let m = ma * mb;
    let len = a.len().max(b.len());
    (0..len)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(BigInt::zero);
            let y = b.get(i).cloned().unwrap_or_else(BigInt::zero);
            // x + ma * (e.x * (y - x) mod mb)
            let diff = (&y - &x) % mb;
            let k = (&e.x * diff) % mb;
            let r = (&x + ma * k) % &m;
            if r.is_negative() {
                r + &m
            } else {
                r
            }
        })
        .collect()
}

/// Coefficients of the Newton-form interpolant through (xs, ys), expanded
/// in the monomial basis.
fn newton_interpolate(
    xs: &[num_rational::BigRational],
    ys: &[num_rational::BigRational],
) -> Vec<num_rational::BigRational> {
    use num_rational::BigRational;
    let n = xs.len();
    // divided differences
    let mut dd: Vec<BigRational> = ys.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            let num = &dd[i] - &dd[i - 1];
            let den = &xs[i] - &xs[i - level];
            dd[i] = num / den;
        }
    }
    // expand Σ dd[i] Π_{j<i} (x - x_j)
    let mut out = vec![BigRational::zero(); n];
    let mut basis = vec![BigRational::zero(); n];
    basis[0] = BigRational::one();
    let mut basis_len = 1;
    for (i, c) in dd.iter().enumerate() {
        for (k, b) in basis.iter().take(basis_len).enumerate() {
            out[k] += c * b;
        }
        if i + 1 < n {
            // basis *= (x - x_i)
            let mut next = vec![BigRational::zero(); n];
            for k in 0..basis_len {
                next[k + 1] += &basis[k];
                next[k] -= &basis[k] * &xs[i];
            }
            basis = next;
            basis_len += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn t1() -> PolyZ {
        PolyZ::var1()
    }
    fn t2() -> PolyZ {
        PolyZ::var2()
    }
    fn int(k: i64) -> PolyZ {
        PolyZ::constant(BigInt::from(k))
    }

    #[test]
    fn mono_order_is_graded_lex() {
        assert!(Mono(0, 0) < Mono(0, 1));
        assert!(Mono(0, 1) < Mono(1, 0));
        assert!(Mono(1, 1) < Mono(2, 0));
        assert!(Mono(0, 2) < Mono(1, 1));
    }

    #[test]
    fn arithmetic_roundtrip() {
        let p = t1().add(&t2()).mul(&t1().sub(&t2())); // t1^2 - t2^2
        let q = t1().mul(&t1()).sub(&t2().mul(&t2()));
        assert_eq!(p, q);
        assert!(p.sub(&q).is_zero());
    }

    #[test]
    fn exact_division() {
        let a = t1().add(&t2());
        let b = t1().sub(&t2()).add(&int(3));
        let prod = a.mul(&b);
        assert_eq!(prod.div_exact(&a), b);
        assert_eq!(prod.div_exact(&b), a);
        assert!(PolyZ::divides(&a, &prod));
        assert!(!PolyZ::divides(&t1(), &a));
    }

    #[test]
    fn gcd_common_factor() {
        let f = t1().add(&t2());
        let a = f.mul(&t1()).mul_bigint(&BigInt::from(6));
        let b = f.mul(&t2().add(&int(1))).mul_bigint(&BigInt::from(4));
        let g = PolyZ::gcd(&a, &b);
        assert_eq!(g, f.mul_bigint(&BigInt::from(2)));
    }

    #[test]
    fn gcd_coprime() {
        let a = t1().add(&int(1));
        let b = t2().add(&int(2));
        assert_eq!(PolyZ::gcd(&a, &b), PolyZ::one());
    }

    #[test]
    fn gcd_sign_normalization() {
        let f = t1().sub(&t2()); // leading t1 positive
        let a = f.neg().mul(&t1());
        let b = f.mul(&t2());
        let g = PolyZ::gcd(&a, &b);
        assert_eq!(g, f);
    }

    #[test]
    fn gcd_univariate_powers() {
        let f = t1().add(&int(1)).pow(3);
        let g = t1().add(&int(1)).pow(2).mul(&t1().sub(&int(5)));
        assert_eq!(PolyZ::gcd(&f, &g), t1().add(&int(1)).pow(2));
    }

    #[test]
    fn bar_flips_odd_degrees() {
        let p = t1().mul(&t2()).add(&t1()).add(&int(7));
        let b = p.bar();
        assert_eq!(b.coeff(Mono(1, 1)), BigInt::from(1));
        assert_eq!(b.coeff(Mono(1, 0)), BigInt::from(-1));
        assert_eq!(b.coeff(Mono(0, 0)), BigInt::from(7));
    }

    #[test]
    fn format_readable() {
        let p = t1().pow(2).mul_bigint(&BigInt::from(3)).sub(&t2()).add(&int(1));
        assert_eq!(p.format_with("t1", "t2"), "3*t1^2 - t2 + 1");
    }
}
