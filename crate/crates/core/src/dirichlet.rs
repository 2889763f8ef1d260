//! Dirichlet characters with exact cyclotomic values, generalized Bernoulli
//! numbers B_{2,chi}, and the character-theoretic route to zeta_k(-1) for
//! real cyclotomic fields.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::arith;
use crate::intpoly::{cyclotomic, IntPoly, QPoly};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum CharacterError {
    #[error("B_{{2,chi}} is defined here only for even characters")]
    OddCharacter,
}

/// (Z/N)^* decomposed into cyclic factors with discrete-log tables.
#[derive(Clone, Debug)]
pub struct UnitGroup {
    pub modulus: u64,
    /// (generator, order) per cyclic factor.
    pub gens: Vec<(u64, u64)>,
    /// exponent of the group (lcm of factor orders)
    pub exponent: u64,
    /// residue -> exponent vector
    dlog: std::collections::HashMap<u64, Vec<u64>>,
}

fn primitive_root_mod(pk: u64, p: u64) -> u64 {
    let phi = arith::euler_phi(pk);
    let fac = arith::factor_u64(phi);
    'outer: for g in 2..pk {
        if arith::gcd_u64(g, p) != 1 {
            continue;
        }
        for &(q, _) in &fac {
            if arith::pow_mod(g, phi / q, pk) == 1 {
                continue 'outer;
            }
        }
        return g;
    }
    unreachable!("(Z/p^k)^* is cyclic for odd p")
}

impl UnitGroup {
    pub fn new(n: u64) -> Self {
        assert!(n >= 1);
        // generators per prime-power component, lifted by CRT
        let mut comps: Vec<(u64, u64)> = Vec::new(); // (gen mod n, order)
        let fac = arith::factor_u64(n);
        let lift = |r: u64, pk: u64| -> u64 {
            // x = r mod pk, x = 1 mod n/pk
            let rest = n / pk;
            if rest == 1 {
                r % n
            } else {
                arith::crt(r % pk, pk, 1 % rest, rest) % n
            }
        };
        for &(p, k) in &fac {
            let pk = p.pow(k);
            if p == 2 {
                if k == 1 {
                    continue;
                }
                comps.push((lift(pk - 1, pk), 2));
                if k >= 3 {
                    comps.push((lift(5 % pk, pk), pk / 4));
                }
            } else {
                let g = primitive_root_mod(pk, p);
                comps.push((lift(g, pk), arith::euler_phi(pk)));
            }
        }
        if comps.is_empty() {
            comps.push((1 % n.max(1), 1));
        }
        let exponent = comps.iter().fold(1u64, |acc, &(_, o)| arith::lcm_u64(acc, o));
        // enumerate the group, recording discrete logs
        let mut dlog = std::collections::HashMap::new();
        let orders: Vec<u64> = comps.iter().map(|&(_, o)| o).collect();
        let mut exps = vec![0u64; comps.len()];
        loop {
            let mut a = 1u64 % n.max(1);
            for (i, &e) in exps.iter().enumerate() {
                a = arith::mul_mod(a, arith::pow_mod(comps[i].0, e, n.max(2)), n.max(2));
            }
            dlog.entry(if n == 1 { 0 } else { a }).or_insert_with(|| exps.clone());
            // increment multi-index
            let mut i = 0;
            loop {
                if i == exps.len() {
                    let phi = arith::euler_phi(n);
                    assert_eq!(dlog.len() as u64, phi, "unit group enumeration incomplete");
                    return UnitGroup { modulus: n, gens: comps, exponent, dlog };
                }
                exps[i] += 1;
                if exps[i] < orders[i] {
                    break;
                }
                exps[i] = 0;
                i += 1;
            }
        }
    }

    pub fn dlog(&self, a: u64) -> Option<&Vec<u64>> {
        self.dlog.get(&(a % self.modulus))
    }
}

/// Exact element of Q(zeta_e), stored as a rational polynomial in zeta_e
/// reduced modulo the e-th cyclotomic polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycNum {
    pub order: u64,
    pub coeffs: QPoly,
}

impl CycNum {
    pub fn zero(order: u64) -> Self {
        CycNum { order, coeffs: QPoly::zero() }
    }

    pub fn from_rational(order: u64, r: BigRational) -> Self {
        CycNum { order, coeffs: QPoly::new(vec![r]) }
    }

    /// zeta_order^k.
    pub fn root_of_unity_pow(order: u64, k: u64) -> Self {
        let k = k % order;
        let mut coeffs = vec![BigRational::zero(); k as usize + 1];
        coeffs[k as usize] = BigRational::one();
        CycNum { order, coeffs: QPoly::new(coeffs) }.reduce()
    }

    fn modulus(&self) -> QPoly {
        cyclotomic(self.order).to_q()
    }

    fn reduce(mut self) -> Self {
        let m = self.modulus();
        if self.coeffs.degree() >= m.degree() && !self.coeffs.is_zero() {
            self.coeffs = self.coeffs.div_rem(&m).1;
        }
        self
    }

    pub fn add(&self, o: &CycNum) -> CycNum {
        assert_eq!(self.order, o.order);
        CycNum { order: self.order, coeffs: self.coeffs.add(&o.coeffs) }
    }

    pub fn mul(&self, o: &CycNum) -> CycNum {
        assert_eq!(self.order, o.order);
        CycNum { order: self.order, coeffs: self.coeffs.mul(&o.coeffs) }.reduce()
    }

    pub fn scale(&self, r: &BigRational) -> CycNum {
        CycNum { order: self.order, coeffs: self.coeffs.scale(r) }
    }

    /// The rational value, if the element lies in Q.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.coeffs.coeffs.len() {
            0 => Some(BigRational::zero()),
            1 => Some(self.coeffs.coeffs[0].clone()),
            _ => None,
        }
    }
}

/// A Dirichlet character mod N with exact values in Q(zeta_E), E the group
/// exponent: chi(g_i) = zeta_E^{E/ord_i * t_i}.
#[derive(Clone, Debug)]
pub struct DirichletCharacter {
    pub modulus: u64,
    pub exponent: u64,
    /// twist t_i on each generator, 0 <= t_i < ord_i
    pub twists: Vec<u64>,
    pub conductor: u64,
    pub even: bool,
    pub order: u64,
}

impl DirichletCharacter {
    /// chi(a) as an exponent of zeta_E; None when gcd(a, N) > 1.
    pub fn value_exp(&self, group: &UnitGroup, a: u64) -> Option<u64> {
        let logs = group.dlog(a)?;
        let e = group.exponent;
        let mut acc = 0u64;
        for ((&t, &log), &(_, ord)) in self.twists.iter().zip(logs).zip(&group.gens) {
            acc = (acc + (e / ord) * ((t * log) % ord)) % e;
        }
        Some(acc)
    }

    pub fn value(&self, group: &UnitGroup, a: u64) -> CycNum {
        match self.value_exp(group, a) {
            Some(k) => CycNum::root_of_unity_pow(self.exponent, k),
            None => CycNum::zero(self.exponent),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.conductor == 1
    }
}

/// All phi(N) Dirichlet characters mod N, with conductors; deterministic order.
pub fn dirichlet_characters(n: u64) -> (UnitGroup, Vec<DirichletCharacter>) {
    assert!(n >= 1);
    let group = UnitGroup::new(n);
    let orders: Vec<u64> = group.gens.iter().map(|&(_, o)| o).collect();
    let e = group.exponent;
    let mut out = Vec::new();
    let mut twists = vec![0u64; orders.len()];
    loop {
        let chi_order = twists
            .iter()
            .zip(&orders)
            .fold(1u64, |acc, (&t, &o)| arith::lcm_u64(acc, o / arith::gcd_u64(t, o)));
        let mut chi = DirichletCharacter {
            modulus: n,
            exponent: e,
            twists: twists.clone(),
            conductor: 0,
            even: false,
            order: chi_order,
        };
        chi.even = n <= 2 || chi.value_exp(&group, n - 1) == Some(0);
        chi.conductor = conductor_of(&group, &chi);
        out.push(chi);
        let mut i = 0;
        loop {
            if i == twists.len() {
                return (group, out);
            }
            twists[i] += 1;
            if twists[i] < orders[i] {
                break;
            }
            twists[i] = 0;
            i += 1;
        }
    }
}

fn conductor_of(group: &UnitGroup, chi: &DirichletCharacter) -> u64 {
    let n = group.modulus;
    let mut divisors: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
    divisors.sort_unstable();
    'outer: for &c in &divisors {
        // chi factors through mod c iff chi is trivial on {a = 1 mod c}
        for a in arith::units_mod(n) {
            if a % c == 1 % c && chi.value_exp(group, a) != Some(0) {
                continue 'outer;
            }
        }
        return c;
    }
    n
}

/// B_{2,chi} for an even character, evaluated at its conductor:
/// B_{2,chi*} = (1/c) sum_{a=1}^{c} chi*(a) a^2 for nontrivial chi,
/// and B_{2,chi_0} = 1/6.
pub fn bernoulli_b2(
    group: &UnitGroup,
    chi: &DirichletCharacter,
) -> Result<CycNum, CharacterError> {
    if !chi.even {
        return Err(CharacterError::OddCharacter);
    }
    let e = chi.exponent;
    if chi.is_trivial() {
        return Ok(CycNum::from_rational(
            e,
            BigRational::new(BigInt::one(), BigInt::from(6)),
        ));
    }
    let c = chi.conductor;
    let n = chi.modulus;
    // accumulate sum chi*(a) a^2 by zeta-exponent buckets
    let mut buckets = vec![BigRational::zero(); e as usize];
    for a in 1..=c {
        if arith::gcd_u64(a, c) != 1 {
            continue;
        }
        // lift a to a unit mod n congruent to a mod c
        let mut b = a;
        while arith::gcd_u64(b, n) != 1 {
            b += c;
        }
        let k = chi.value_exp(group, b % n).expect("lift is a unit");
        buckets[k as usize] += BigRational::from_integer(BigInt::from(a * a));
    }
    let mut acc = CycNum::zero(e);
    for (k, v) in buckets.into_iter().enumerate() {
        if !v.is_zero() {
            acc = acc.add(&CycNum::root_of_unity_pow(e, k as u64).scale(&v));
        }
    }
    Ok(acc.scale(&BigRational::new(BigInt::one(), BigInt::from(c))))
}

/// zeta at -1 for the real cyclotomic field Q(zeta_N)^+, as the product of
/// L(-1, chi) = -B_{2,chi}/2 over the even characters mod N. The imaginary
/// parts must cancel exactly.
pub fn zeta_minus1_abelian(n: u64) -> BigRational {
    let (group, chars) = dirichlet_characters(n);
    let e = group.exponent;
    let minus_half = BigRational::new(BigInt::from(-1), BigInt::from(2));
    let mut acc = CycNum::from_rational(e, BigRational::one());
    for chi in chars.iter().filter(|c| c.even) {
        let b = bernoulli_b2(&group, chi).expect("even character");
        acc = acc.mul(&b.scale(&minus_half));
    }
    acc.as_rational()
        .expect("product over conjugate-closed character set is rational")
}

/// Field discriminant of Q(zeta_q)^+ by the conductor-discriminant formula:
/// the product of the conductors of the even characters mod q.
pub fn real_cyclotomic_disc(q: u64) -> BigUint {
    let (_, chars) = dirichlet_characters(q);
    let mut d = BigUint::one();
    for chi in chars.iter().filter(|c| c.even) {
        d *= BigUint::from(chi.conductor);
    }
    d
}

/// Degree phi(q)/2 sanity helper for q >= 3.
pub fn real_cyclotomic_degree(q: u64) -> u64 {
    arith::euler_phi(q) / 2
}

/// Minimal polynomial of 2cos(2 pi / q), re-exported for convenience.
pub fn real_cyclotomic_minpoly(q: u64) -> IntPoly {
    crate::intpoly::real_cyclotomic_minpoly(q)
}
