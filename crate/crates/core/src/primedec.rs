//! Prime-ideal decomposition: polynomial factorization over prime fields,
//! Dedekind's index criterion, Kummer-Dedekind, and the exact abelian
//! (cyclotomic Galois) backend.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::arith::{self, SplitMix64};
use crate::intpoly::IntPoly;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum DecompError {
    #[error("prime {0} divides the order index; Kummer-Dedekind does not apply")]
    IndexDivisible(u64),
    #[error("no splitting available for prime {0} (no Kummer, abelian, or external source)")]
    MissingSplitting(u64),
}

/// Decomposition shape of a rational prime in a number field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeSplitting {
    pub p: u64,
    /// (ramification index e_i, inertia degree f_i), sorted.
    pub factors: Vec<(u32, u32)>,
    pub source: SplittingSource,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SplittingSource {
    Kummer,
    Abelian,
    External,
}

impl PrimeSplitting {
    /// Sum of e_i f_i, which must equal the field degree.
    pub fn identity_sum(&self) -> u32 {
        self.factors.iter().map(|&(e, f)| e * f).sum()
    }

    /// Inertia degrees only, sorted.
    pub fn inertia_degrees(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self.factors.iter().map(|&(_, f)| f).collect();
        v.sort_unstable();
        v
    }

    /// Norms p^{f_i} of the primes above p.
    pub fn norms(&self) -> Vec<BigUint> {
        self.factors
            .iter()
            .map(|&(_, f)| num_traits::Pow::pow(BigUint::from(self.p), f))
            .collect()
    }
}

/// Monic polynomial over F_p, constant-term first. p < 2^63.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpPoly {
    pub p: u64,
    pub coeffs: Vec<u64>,
}

impl FpPoly {
    pub fn new(p: u64, mut coeffs: Vec<u64>) -> Self {
        for c in &mut coeffs {
            *c %= p;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FpPoly { p, coeffs }
    }

    pub fn from_int_poly(f: &IntPoly, p: u64) -> Self {
        let pb = BigInt::from(p);
        FpPoly::new(
            p,
            f.coeffs
                .iter()
                .map(|c| {
                    let r = c % &pb;
                    let r = if r.is_negative() { r + &pb } else { r };
                    r.to_u64().expect("residue fits u64")
                })
                .collect(),
        )
    }

    pub fn zero(p: u64) -> Self {
        FpPoly { p, coeffs: vec![] }
    }

    pub fn one(p: u64) -> Self {
        FpPoly { p, coeffs: vec![1] }
    }

    pub fn x(p: u64) -> Self {
        FpPoly { p, coeffs: vec![0, 1] }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    fn mul_mod(&self, a: u64, b: u64) -> u64 {
        arith::mul_mod(a, b, self.p)
    }

    pub fn monic(&self) -> FpPoly {
        if self.is_zero() {
            return self.clone();
        }
        let lead = *self.coeffs.last().unwrap();
        if lead == 1 {
            return self.clone();
        }
        let inv = arith::pow_mod(lead, self.p - 2, self.p);
        FpPoly::new(self.p, self.coeffs.iter().map(|&c| self.mul_mod(c, inv)).collect())
    }

    pub fn add(&self, o: &FpPoly) -> FpPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        FpPoly::new(self.p, (0..n).map(|i| (self.coeff(i) + o.coeff(i)) % self.p).collect())
    }

    pub fn sub(&self, o: &FpPoly) -> FpPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        FpPoly::new(
            self.p,
            (0..n).map(|i| (self.p + self.coeff(i) - o.coeff(i)) % self.p).collect(),
        )
    }

    pub fn mul(&self, o: &FpPoly) -> FpPoly {
        if self.is_zero() || o.is_zero() {
            return FpPoly::zero(self.p);
        }
        let mut out = vec![0u64; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + self.mul_mod(a, b)) % self.p;
            }
        }
        FpPoly::new(self.p, out)
    }

    /// Quotient and remainder by a nonzero divisor.
    pub fn div_rem(&self, d: &FpPoly) -> (FpPoly, FpPoly) {
        assert!(!d.is_zero());
        let dn = d.coeffs.len();
        if self.coeffs.len() < dn {
            return (FpPoly::zero(self.p), self.clone());
        }
        let lead_inv = arith::pow_mod(*d.coeffs.last().unwrap(), self.p - 2, self.p);
        let mut rem = self.coeffs.clone();
        let mut q = vec![0u64; rem.len() - dn + 1];
        for i in (0..q.len()).rev() {
            let c = self.mul_mod(rem[i + dn - 1], lead_inv);
            if c == 0 {
                continue;
            }
            q[i] = c;
            for j in 0..dn {
                let t = self.mul_mod(c, d.coeffs[j]);
                rem[i + j] = (self.p + rem[i + j] - t) % self.p;
            }
        }
        (FpPoly::new(self.p, q), FpPoly::new(self.p, rem))
    }

    pub fn rem(&self, d: &FpPoly) -> FpPoly {
        self.div_rem(d).1
    }

    /// Monic gcd.
    pub fn gcd(&self, o: &FpPoly) -> FpPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn mulmod(&self, o: &FpPoly, modulus: &FpPoly) -> FpPoly {
        self.mul(o).rem(modulus)
    }

    pub fn pow_mod(&self, e: &BigUint, modulus: &FpPoly) -> FpPoly {
        let mut acc = FpPoly::one(self.p);
        let mut base = self.rem(modulus);
        for i in 0..e.bits() {
            if e.bit(i) {
                acc = acc.mulmod(&base, modulus);
            }
            if i + 1 < e.bits() {
                base = base.mulmod(&base, modulus);
            }
        }
        acc
    }

    pub fn derivative(&self) -> FpPoly {
        if self.coeffs.len() <= 1 {
            return FpPoly::zero(self.p);
        }
        FpPoly::new(
            self.p,
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, &c)| self.mul_mod(c, (i as u64 + 1) % self.p))
                .collect(),
        )
    }

    /// f(x^(1/p)) for a polynomial that is a p-th power (all exponents
    /// divisible by p); Frobenius root over F_p.
    fn pth_root(&self) -> FpPoly {
        let p = self.p as usize;
        let mut out = Vec::with_capacity(self.coeffs.len() / p + 1);
        for (i, &c) in self.coeffs.iter().enumerate() {
            if i % p == 0 {
                // c^(p^(k-1)) = c in F_p; coefficients are already in F_p
                out.push(c);
            } else {
                debug_assert_eq!(c, 0, "not a p-th power");
            }
        }
        FpPoly::new(self.p, out)
    }



    /// Compare for deterministic ordering: by degree, then coefficients from
    /// the top down.
    fn cmp_key(&self) -> (usize, Vec<u64>) {
        (self.degree(), self.coeffs.iter().rev().copied().collect())
    }
}

/// Squarefree decomposition: list of (g_i, i) with f = prod g_i^i, g_i
/// squarefree and pairwise coprime (Yun's algorithm adapted to char p).
fn squarefree_decomposition(f: &FpPoly) -> Vec<(FpPoly, u32)> {
    let p = f.p;
    let mut out: Vec<(FpPoly, u32)> = Vec::new();
    let mut stack = vec![(f.monic(), 1u32)];
    while let Some((g, mult)) = stack.pop() {
        if g.degree() == 0 {
            continue;
        }
        let dg = g.derivative();
        if dg.is_zero() {
            // g = h(x^p) = h(x)^p
            stack.push((g.pth_root(), mult * p as u32));
            continue;
        }
        let mut c = g.gcd(&dg);
        let mut w = g.div_rem(&c).0;
        let mut i = 1u32;
        while !w.is_one() {
            let y = w.gcd(&c);
            let fac = w.div_rem(&y).0;
            if fac.degree() > 0 {
                out.push((fac, mult * i));
            }
            w = y.clone();
            c = c.div_rem(&y).0;
            i += 1;
        }
        if c.degree() > 0 {
            // remaining part is a p-th power
            stack.push((c.pth_root(), mult * p as u32));
        }
    }
    out
}

/// Distinct-degree decomposition of a squarefree monic polynomial:
/// returns (product of irreducible factors of degree d, d).
fn distinct_degree(f: &FpPoly) -> Vec<(FpPoly, usize)> {
    let p = f.p;
    let mut out = Vec::new();
    let mut h = f.monic();
    let mut xq = FpPoly::x(p).pow_mod(&BigUint::from(p), &h);
    let mut d = 0usize;
    while h.degree() > 0 {
        d += 1;
        if 2 * d > h.degree() {
            out.push((h.clone(), h.degree()));
            break;
        }
        let t = xq.sub(&FpPoly::x(p));
        let g = t.gcd(&h);
        if g.degree() > 0 {
            out.push((g.clone(), d));
            h = h.div_rem(&g).0;
            if h.degree() == 0 {
                break;
            }
            xq = xq.rem(&h);
        }
        xq = xq.pow_mod(&BigUint::from(p), &h);
    }
    out
}

/// Split a product of irreducibles of equal degree d (Cantor-Zassenhaus;
/// deterministic seed for reproducibility).
fn equal_degree(f: &FpPoly, d: usize, rng: &mut SplitMix64) -> Vec<FpPoly> {
    let p = f.p;
    if f.degree() == d {
        return vec![f.monic()];
    }
    let n = f.degree();
    loop {
        let mut coeffs: Vec<u64> = (0..n).map(|_| rng.below(p)).collect();
        coeffs.push(1);
        let a = FpPoly::new(p, coeffs);
        let g = if p == 2 {
            // trace map: a + a^2 + a^4 + ... + a^(2^(d-1)) mod f
            let mut t = a.clone().rem(f);
            let mut cur = a.rem(f);
            for _ in 1..d {
                cur = cur.mulmod(&cur, f);
                t = t.add(&cur);
            }
            t.gcd(f)
        } else {
            // a^((p^d - 1)/2) - 1 mod f
            let e = (num_traits::Pow::pow(BigUint::from(p), d as u32) - BigUint::one())
                / BigUint::from(2u32);
            let t = a.pow_mod(&e, f).sub(&FpPoly::one(p));
            t.gcd(f)
        };
        if g.degree() > 0 && g.degree() < f.degree() {
            let rest = f.div_rem(&g).0;
            let mut out = equal_degree(&g, d, rng);
            out.extend(equal_degree(&rest, d, rng));
            return out;
        }
    }
}

/// Full factorization of f mod p into monic irreducibles with multiplicity,
/// sorted lexicographically for reproducible output.
pub fn factor_mod_p(f: &IntPoly, p: u64) -> Vec<(FpPoly, u32)> {
    let fp = FpPoly::from_int_poly(f, p);
    assert!(!fp.is_zero(), "polynomial vanishes mod p");
    let mut rng = SplitMix64::new(0x5eed_c0de ^ p);
    let mut out: Vec<(FpPoly, u32)> = Vec::new();
    for (g, mult) in squarefree_decomposition(&fp) {
        for (h, d) in distinct_degree(&g) {
            for irr in equal_degree(&h, d, &mut rng) {
                out.push((irr, mult));
            }
        }
    }
    out.sort_by(|a, b| a.0.cmp_key().cmp(&b.0.cmp_key()));
    out
}

/// Degree multiset of the irreducible factors of a squarefree f mod p —
/// the inertia degrees of p when p does not divide the order index.
/// Much cheaper than full factorization; requires f squarefree mod p.
pub fn splitting_profile(f: &IntPoly, p: u64) -> Vec<u32> {
    let fp = FpPoly::from_int_poly(f, p);
    let mut out = Vec::new();
    for (g, d) in distinct_degree(&fp) {
        for _ in 0..g.degree() / d {
            out.push(d as u32);
        }
    }
    out.sort_unstable();
    out
}

/// Dedekind's criterion: does p divide [O_K : Z[theta]]?
pub fn dedekind_index_test(f: &IntPoly, p: u64) -> bool {
    assert!(f.is_monic(), "index test needs the monic defining polynomial");
    let factors = factor_mod_p(f, p);
    // g* = prod g_i (radical), h* = prod g_i^(e_i - 1)
    let fp = FpPoly::from_int_poly(f, p);
    let mut g_star = FpPoly::one(p);
    let mut h_star = FpPoly::one(p);
    for (g, e) in &factors {
        g_star = g_star.mul(g);
        for _ in 1..*e {
            h_star = h_star.mul(g);
        }
    }
    // lift to Z[x] with coefficients in [0, p)
    let lift = |q: &FpPoly| IntPoly::new(q.coeffs.iter().map(|&c| BigInt::from(c)).collect());
    let g_lift = lift(&g_star);
    let h_lift = lift(&h_star);
    let prod = g_lift.mul(&h_lift);
    let diff = prod.sub(f);
    // (g*h - f)/p is integral because g*h = f mod p
    let pb = BigInt::from(p);
    let t = IntPoly::new(diff.coeffs.iter().map(|c| c / &pb).collect());
    debug_assert!(diff
        .coeffs
        .iter()
        .all(|c| (c % &pb).is_zero()), "g*h != f mod p");
    let t_bar = FpPoly::from_int_poly(&t, p);
    let u = t_bar.gcd(&g_star).gcd(&h_star);
    debug_assert!({
        let _ = &fp;
        true
    });
    u.degree() > 0
}

/// Kummer-Dedekind: valid only when p does not divide the index.
pub fn kummer_dedekind(f: &IntPoly, p: u64) -> Result<PrimeSplitting, DecompError> {
    if dedekind_index_test(f, p) {
        return Err(DecompError::IndexDivisible(p));
    }
    let mut factors: Vec<(u32, u32)> = factor_mod_p(f, p)
        .into_iter()
        .map(|(g, e)| (e, g.degree() as u32))
        .collect();
    factors.sort_unstable();
    Ok(PrimeSplitting { p, factors, source: SplittingSource::Kummer })
}

/// (e, f, g) of a rational prime in the cyclotomic field Q(zeta_n):
/// e = phi(p^v_p(n)), f = ord of p mod n/p^v_p(n), g = phi(n)/(ef).
pub fn cyclotomic_splitting(n: u64, p: u64) -> (u32, u32, u32) {
    assert!(n >= 3);
    let v = arith::v_p(n, p);
    let pv = p.pow(v);
    let n1 = n / pv;
    let e = arith::euler_phi(pv) as u32;
    let f = arith::mult_order(p % n1.max(1), n1.max(1)) as u32;
    let phi = arith::euler_phi(n) as u32;
    let g = phi / (e * f);
    (e, f, g)
}

/// An abelian number field presented as the fixed field of a subgroup
/// H <= (Z/M)^*.
#[derive(Clone, Debug)]
pub struct AbelianPresentation {
    pub modulus: u64,
    pub subgroup: Vec<u64>,
}

impl AbelianPresentation {
    pub fn new(modulus: u64, subgroup: Vec<u64>) -> Self {
        let mut h: Vec<u64> = subgroup.into_iter().map(|a| a % modulus).collect();
        h.sort_unstable();
        h.dedup();
        // closure under multiplication is the caller's contract; verify
        for &a in &h {
            assert_eq!(arith::gcd_u64(a, modulus), 1, "subgroup element not a unit");
            for &b in &h {
                assert!(
                    h.binary_search(&arith::mul_mod(a, b, modulus)).is_ok(),
                    "subgroup not closed under multiplication"
                );
            }
        }
        AbelianPresentation { modulus, subgroup: h }
    }

    /// The real cyclotomic field Q(zeta_n + zeta_n^{-1}): H = {+-1 mod n}.
    pub fn real_cyclotomic(n: u64) -> Self {
        AbelianPresentation::new(n, vec![1 % n, (n - 1) % n])
    }

    pub fn degree(&self) -> u64 {
        arith::euler_phi(self.modulus) / self.subgroup.len() as u64
    }



    /// Product set X*H as a sorted coset union.
    fn saturate(&self, xs: &[u64]) -> Vec<u64> {
        let mut out = Vec::new();
        for &x in xs {
            for &h in &self.subgroup {
                out.push(arith::mul_mod(x, h, self.modulus));
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// Exact (e, f, g) of p in the fixed field of H <= (Z/M)^*, via inertia and
/// decomposition subgroups: with M = p^v * M', I = {a = 1 mod M'},
/// D = I * <p mod M' lifted by CRT>.
pub fn abelian_splitting(pres: &AbelianPresentation, p: u64) -> (u32, u32, u32) {
    let m = pres.modulus;
    let v = arith::v_p(m, p);
    let pv = p.pow(v);
    let m1 = m / pv;
    let units: Vec<u64> = arith::units_mod(m);
    // inertia: units congruent to 1 mod M'
    let inertia: Vec<u64> = units.iter().copied().filter(|&a| a % m1.max(1) == 1 % m1.max(1)).collect();
    // Frobenius lift: a = p mod M', a = 1 mod p^v
    let frob = if m1 == 1 {
        1
    } else if pv == 1 {
        p % m
    } else {
        arith::crt(1, pv, p % m1, m1) % m
    };
    // D = I * <frob>
    let mut decomp = inertia.clone();
    let mut cur = frob;
    while !decomp.contains(&cur) {
        let mut next: Vec<u64> = inertia.iter().map(|&a| arith::mul_mod(a, cur, m)).collect();
        decomp.append(&mut next);
        decomp.sort_unstable();
        decomp.dedup();
        cur = arith::mul_mod(cur, frob, m);
    }
    let ih = pres.saturate(&inertia);
    let dh = pres.saturate(&decomp);
    let h_size = pres.subgroup.len() as u32;
    let e = ih.len() as u32 / h_size;
    let ef = dh.len() as u32 / h_size;
    let f = ef / e;
    let total = arith::euler_phi(m) as u32 / h_size;
    let g = total / ef;
    (e, f, g)
}

/// Splitting of p in the abelian field as a PrimeSplitting (all primes above
/// p share (e, f) since the field is Galois over Q).
pub fn abelian_prime_splitting(pres: &AbelianPresentation, p: u64) -> PrimeSplitting {
    let (e, f, g) = abelian_splitting(pres, p);
    PrimeSplitting {
        p,
        factors: vec![(e, f); g as usize],
        source: SplittingSource::Abelian,
    }
}

/// Does the prime ideal (p; e, f) of K split in the quadratic extension
/// K(zeta_q)?
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SplitVerdict {
    Split,
    NonSplit,
    Undetermined,
}

/// Frobenius-norm backend: for p coprime to q the prime is unramified in
/// K(zeta_q)/K and splits iff N(p) = 1 mod q. For p | q only the abelian
/// backend can answer; see `FieldContext::splits_in_quadratic_ext`.
pub fn splits_by_norm(p: u64, f: u32, q: u64) -> SplitVerdict {
    if q % p == 0 {
        return SplitVerdict::Undetermined;
    }
    let norm_mod_q = arith::pow_mod(p % q, f as u64, q);
    if norm_mod_q == 1 {
        SplitVerdict::Split
    } else {
        SplitVerdict::NonSplit
    }
}

/// Abelian backend: K = fixed field of {+-1 mod N}; L = K(zeta_q) inside
/// Q(zeta_lcm(N, q)). The ideal splits iff the prime count doubles.
pub fn splits_by_abelian(tag_n: u64, p: u64, q: u64) -> SplitVerdict {
    let m = arith::lcm_u64(tag_n, q);
    let h_k: Vec<u64> = arith::units_mod(m)
        .into_iter()
        .filter(|&a| a % tag_n == 1 || a % tag_n == tag_n - 1)
        .collect();
    let h_l: Vec<u64> = h_k.iter().copied().filter(|&a| a % q == 1 % q).collect();
    let pres_k = AbelianPresentation::new(m, h_k);
    let pres_l = AbelianPresentation::new(m, h_l);
    if pres_l.degree() != 2 * pres_k.degree() {
        // K(zeta_q) is not quadratic over K in this presentation
        return SplitVerdict::Undetermined;
    }
    let (_, _, g_k) = abelian_splitting(&pres_k, p);
    let (_, _, g_l) = abelian_splitting(&pres_l, p);
    if g_l == 2 * g_k {
        SplitVerdict::Split
    } else {
        SplitVerdict::NonSplit
    }
}

/// Memoizing splitting store over one field's defining data.
#[derive(Debug, Default)]
pub struct SplittingCache {
    map: std::sync::Mutex<HashMap<u64, PrimeSplitting>>,
}

impl SplittingCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get_or_insert_with<F>(&self, p: u64, f: F) -> Result<PrimeSplitting, DecompError>
    where
        F: FnOnce() -> Result<PrimeSplitting, DecompError>,
    {
        if let Some(s) = self.map.lock().unwrap().get(&p) {
            return Ok(s.clone());
        }
        let s = f()?;
        self.map.lock().unwrap().insert(p, s.clone());
        Ok(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn factor_small_cases() {
        // x^4 - 5x^2 + 5 mod 2 = (x^2 + x + 1)^2  (brute-force verified)
        let f = poly(&[5, 0, -5, 0, 1]);
        let fac = factor_mod_p(&f, 2);
        assert_eq!(fac.len(), 1);
        assert_eq!(fac[0].0.coeffs, vec![1, 1, 1]);
        assert_eq!(fac[0].1, 2);
        // x^2 + 1 mod 5 = (x + 2)(x + 3)
        let g = poly(&[1, 0, 1]);
        let fac = factor_mod_p(&g, 5);
        assert_eq!(fac.len(), 2);
        assert_eq!(fac[0].0.coeffs, vec![2, 1]);
        assert_eq!(fac[1].0.coeffs, vec![3, 1]);
    }

    /// Brute-force factorization oracle: trial division by all monic
    /// polynomials of degree < deg f, smallest degree first.
    fn brute_factor(f: &IntPoly, p: u64) -> Vec<(Vec<u64>, u32)> {
        let mut rem = FpPoly::from_int_poly(f, p).monic();
        let mut out: Vec<(Vec<u64>, u32)> = Vec::new();
        let mut d = 1usize;
        while rem.degree() > 0 {
            if d > rem.degree() {
                unreachable!("factorization must terminate at degree 1 divisors");
            }
            // all monic polynomials of degree d
            let count = (p as u128).pow(d as u32);
            let mut found = false;
            for idx in 0..count {
                let mut coeffs = Vec::with_capacity(d + 1);
                let mut k = idx;
                for _ in 0..d {
                    coeffs.push((k % p as u128) as u64);
                    k /= p as u128;
                }
                coeffs.push(1);
                let cand = FpPoly::new(p, coeffs);
                // irreducible iff no smaller monic divisor; smallest-degree-first
                // trial division already guarantees that
                let (q, r) = rem.div_rem(&cand);
                if r.is_zero() {
                    let mut mult = 1u32;
                    rem = q;
                    loop {
                        let (q2, r2) = rem.div_rem(&cand);
                        if r2.is_zero() {
                            mult += 1;
                            rem = q2;
                        } else {
                            break;
                        }
                    }
                    out.push((cand.coeffs.clone(), mult));
                    found = true;
                    break;
                }
            }
            if !found {
                d += 1;
            }
        }
        out.sort();
        out
    }

    #[test]
    fn factorization_agrees_with_brute_force() {
        let polys = [
            poly(&[5, 0, -5, 0, 1]),
            poly(&[1, 0, -4, 0, 1]),
            poly(&[1, -1, -4, 0, 1]),
            poly(&[-1, 4, 0, -5, 0, 1]),
            poly(&[1, -8, 8, 6, -6, -1, 1]),
        ];
        for f in &polys {
            for p in [2u64, 3, 5, 7] {
                let got: Vec<(Vec<u64>, u32)> =
                    factor_mod_p(f, p).into_iter().map(|(g, e)| (g.coeffs, e)).collect();
                let mut got_sorted = got.clone();
                got_sorted.sort();
                assert_eq!(got_sorted, brute_factor(f, p), "f={f:?} p={p}");
            }
        }
    }

    #[test]
    fn factorization_reassembles() {
        let f = poly(&[-1, 3, 9, -4, -9, 0, 1]);
        for p in [2u64, 3, 5, 7, 11, 13, 19] {
            let fp = FpPoly::from_int_poly(&f, p);
            let mut prod = FpPoly::one(p);
            for (g, e) in factor_mod_p(&f, p) {
                for _ in 0..e {
                    prod = prod.mul(&g);
                }
            }
            assert_eq!(prod, fp.monic(), "p={p}");
        }
    }

    #[test]
    fn profile_matches_full_factorization() {
        let f = poly(&[1, 3, -1, -5, 0, 1]);
        let disc = crate::intpoly::poly_disc(&f);
        for p in arith::primes_up_to(1000) {
            if (&disc % BigInt::from(p)).is_zero() {
                continue;
            }
            let mut profile = splitting_profile(&f, p);
            profile.sort_unstable();
            let mut degs: Vec<u32> = factor_mod_p(&f, p)
                .iter()
                .flat_map(|(g, e)| std::iter::repeat(g.degree() as u32).take(*e as usize))
                .collect();
            degs.sort_unstable();
            assert_eq!(profile, degs, "p={p}");
        }
    }

    #[test]
    fn dedekind_criterion_basics() {
        assert!(!dedekind_index_test(&poly(&[5, 0, -5, 0, 1]), 2));
        assert!(!dedekind_index_test(&poly(&[5, 0, -5, 0, 1]), 3));
        // Z[sqrt(5)] has index 2 in Z[(1+sqrt(5))/2]
        assert!(dedekind_index_test(&poly(&[-5, 0, 1]), 2));
        assert!(!dedekind_index_test(&poly(&[-5, 0, 1]), 5));
        // x^2 - x - 1 is the maximal-order generator for Q(sqrt(5))
        assert!(!dedekind_index_test(&poly(&[-1, -1, 1]), 2));
        // 2225 field: disc(f) = 4 * 2225, index 2
        assert!(dedekind_index_test(&poly(&[4, 2, -5, -1, 1]), 2));
        assert!(!dedekind_index_test(&poly(&[4, 2, -5, -1, 1]), 5));
        // 3600 field: disc(f) = 49 * 3600, index 7
        assert!(dedekind_index_test(&poly(&[1, 8, -7, -2, 1]), 7));
        assert!(!dedekind_index_test(&poly(&[1, 8, -7, -2, 1]), 2));
    }

    #[test]
    fn kummer_on_the_2000_field() {
        let f = poly(&[5, 0, -5, 0, 1]);
        assert_eq!(kummer_dedekind(&f, 3).unwrap().factors, vec![(1, 4)]);
        assert_eq!(kummer_dedekind(&f, 5).unwrap().factors, vec![(4, 1)]);
        assert_eq!(kummer_dedekind(&f, 2).unwrap().factors, vec![(2, 2)]);
    }

    #[test]
    fn cyclotomic_splitting_cases() {
        assert_eq!(cyclotomic_splitting(20, 2), (2, 4, 1));
        assert_eq!(cyclotomic_splitting(20, 5), (4, 1, 2));
        assert_eq!(cyclotomic_splitting(20, 3), (1, 4, 2));
        // e*f*g = phi(n)
        for n in 3..=120u64 {
            for p in arith::primes_up_to(50) {
                let (e, f, g) = cyclotomic_splitting(n, p);
                assert_eq!(
                    (e as u64) * (f as u64) * (g as u64),
                    arith::euler_phi(n),
                    "n={n} p={p}"
                );
            }
        }
    }

    #[test]
    fn abelian_splitting_cases() {
        let k20 = AbelianPresentation::real_cyclotomic(20);
        assert_eq!(abelian_splitting(&k20, 2), (2, 2, 1));
        assert_eq!(abelian_splitting(&k20, 5), (4, 1, 1));
        assert_eq!(abelian_splitting(&k20, 3), (1, 4, 1));
        let k24 = AbelianPresentation::real_cyclotomic(24);
        assert_eq!(abelian_splitting(&k24, 3), (2, 2, 1));
        assert_eq!(abelian_splitting(&k24, 2), (4, 1, 1));
        assert_eq!(abelian_splitting(&k24, 5), (1, 2, 2));
    }

    #[test]
    fn abelian_trivial_subgroup_matches_cyclotomic() {
        for n in 3..=60u64 {
            let pres = AbelianPresentation::new(n, vec![1]);
            for p in arith::primes_up_to(50) {
                assert_eq!(
                    abelian_splitting(&pres, p),
                    cyclotomic_splitting(n, p),
                    "n={n} p={p}"
                );
            }
        }
    }

    #[test]
    fn abelian_agrees_with_kummer_on_real_cyclotomics() {
        let cases = [(20u64, poly(&[5, 0, -5, 0, 1])), (24, poly(&[1, 0, -4, 0, 1]))];
        for (n, f) in &cases {
            let pres = AbelianPresentation::real_cyclotomic(*n);
            for p in arith::primes_up_to(100) {
                match kummer_dedekind(f, p) {
                    Ok(ks) => {
                        let (e, fdeg, g) = abelian_splitting(&pres, p);
                        let expected = vec![(e, fdeg); g as usize];
                        assert_eq!(ks.factors, expected, "n={n} p={p}");
                    }
                    Err(DecompError::IndexDivisible(_)) => {
                        panic!("index 1 fields cannot fail the index test (n={n}, p={p})")
                    }
                    Err(e) => panic!("{e}"),
                }
            }
        }
    }

    #[test]
    fn norm_backend() {
        assert_eq!(splits_by_norm(2, 2, 3), SplitVerdict::Split); // N = 4 = 1 mod 3
        assert_eq!(splits_by_norm(3, 1, 4), SplitVerdict::NonSplit); // N = 3 != 1 mod 4
        assert_eq!(splits_by_norm(2, 1, 4), SplitVerdict::Undetermined); // p | q
    }

    #[test]
    fn abelian_backend_20() {
        // p5 splits in Q(zeta_20) over Q(zeta_20)^+
        assert_eq!(splits_by_abelian(20, 5, 5), SplitVerdict::Split);
        // p2 is non-split in Q(zeta_20) = K(zeta_4)
        assert_eq!(splits_by_abelian(20, 2, 4), SplitVerdict::NonSplit);
        // p3 splits in Q(zeta_24) over Q(zeta_24)^+
        assert_eq!(splits_by_abelian(24, 3, 3), SplitVerdict::Split);
        assert_eq!(splits_by_abelian(24, 3, 4), SplitVerdict::Split);
    }
}
