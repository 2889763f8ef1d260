//! Quaternion-algebra descriptors over totally real fields, covolume and
//! Euler-number formulas for norm-1 groups of maximal orders, maximal-lattice
//! index formulas, and the bound chain that makes the classification finite.

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::dyadic::{exp_rational, pi, Dyadic, RInt};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("number of split infinite places must satisfy 1 <= n <= m")]
    BadInfinitePlaces,
    #[error("m - n + r = {0} is odd: no such quaternion algebra exists")]
    ParityViolation(u32),
    #[error("algebra is unramified everywhere: not a division algebra")]
    NotDivision,
    #[error("ideal tag {0} does not match any prime ideal of the field")]
    UnknownIdealTag(String),
    #[error("duplicate ramified prime ideal {0}")]
    DuplicateTag(String),
    #[error("only s = 2 is supported by the Brauer-Siegel bound")]
    UnsupportedS,
}

/// Identity of a finite prime ideal: its rational prime, ramification index,
/// inertia degree, and an ordinal separating ideals of identical shape.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IdealTag {
    pub p: u64,
    pub e: u32,
    pub f: u32,
    pub ordinal: u32,
}

impl IdealTag {
    pub fn norm(&self) -> BigUint {
        num_traits::Pow::pow(BigUint::from(self.p), self.f)
    }

    pub fn label(&self) -> String {
        if self.ordinal == 0 {
            format!("{}^{}", self.p, self.f)
        } else {
            format!("{}^{}#{}", self.p, self.f, self.ordinal + 1)
        }
    }
}

/// A(k; m, n, d_A): the quaternion algebra over a degree-m totally real
/// field, split at n infinite places, with reduced discriminant the product
/// of the tagged finite primes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuaternionAlgebra {
    pub m: u32,
    pub n: u32,
    pub ram: Vec<IdealTag>,
}

impl QuaternionAlgebra {
    /// Validate a descriptor. `available` lists the actual prime ideals of
    /// the field above each rational prime that appears in `ram`.
    pub fn new(
        m: u32,
        n: u32,
        ram: Vec<IdealTag>,
        available: &[IdealTag],
    ) -> Result<Self, AlgebraError> {
        if n < 1 || n > m {
            return Err(AlgebraError::BadInfinitePlaces);
        }
        let r = ram.len() as u32;
        if (m - n + r) % 2 != 0 {
            return Err(AlgebraError::ParityViolation(m - n + r));
        }
        if m == n && r == 0 {
            return Err(AlgebraError::NotDivision);
        }
        let mut seen = BTreeSet::new();
        for tag in &ram {
            if !available.contains(tag) {
                return Err(AlgebraError::UnknownIdealTag(tag.label()));
            }
            if !seen.insert(*tag) {
                return Err(AlgebraError::DuplicateTag(tag.label()));
            }
        }
        Ok(QuaternionAlgebra { m, n, ram })
    }

    pub fn r(&self) -> u32 {
        self.ram.len() as u32
    }

    pub fn ram_label(&self) -> String {
        if self.ram.is_empty() {
            "-".to_string()
        } else {
            self.ram.iter().map(|t| t.label()).collect::<Vec<_>>().join(" ")
        }
    }
}

fn pow2_rational(k: i64) -> BigRational {
    if k >= 0 {
        BigRational::from_integer(BigInt::one() << k as usize)
    } else {
        BigRational::new(BigInt::one(), BigInt::one() << (-k) as usize)
    }
}

/// Euler number of X for the norm-1 group of a maximal order:
/// (-1)^{m+n} 2^{n-m+1} zeta_k(-1) prod_{p | d_A} (N p - 1).
/// Exact; positive whenever n is even.
pub fn covolume_norm1(algebra: &QuaternionAlgebra, zeta_minus1: &BigRational) -> BigRational {
    let mut v = zeta_minus1 * pow2_rational(algebra.n as i64 - algebra.m as i64 + 1);
    if (algebra.m + algebra.n) % 2 == 1 {
        v = -v;
    }
    for tag in &algebra.ram {
        v *= BigRational::from_integer(BigInt::from(tag.norm()) - BigInt::one());
    }
    v
}

/// The same Euler number through the functional equation:
/// 2^{n-2m+1} pi^{-2m} d_k^{3/2} zeta_k(2) prod (N p - 1), as a certified
/// interval that must contain `covolume_norm1`.
pub fn euler_crosscheck(
    algebra: &QuaternionAlgebra,
    d_k: &BigUint,
    zeta2: &RInt,
    prec: u64,
) -> RInt {
    let d = RInt::point(Dyadic::from_bigint(BigInt::from(d_k.clone())));
    let d32 = d.sqrt(prec).mul(&d, prec);
    let pi2m = pi(prec).powi(2 * algebra.m, prec);
    let mut v = d32
        .mul(zeta2, prec)
        .div(&pi2m, prec)
        .mul_pow2(algebra.n as i64 - 2 * algebra.m as i64 + 1);
    for tag in &algebra.ram {
        let nm1 = BigRational::from_integer(BigInt::from(tag.norm()) - BigInt::one());
        v = v.mul(&RInt::from_rational(&nm1, prec), prec);
    }
    v
}

/// Normalized covolume invariant
/// g(k, A) = d_k^{3/2} zeta_k(2) / (2^{2m-1+t} pi^{2m} [k_A : k]),
/// with t the number of dyadic primes of k.
pub fn g_invariant(
    m: u32,
    d_k: &BigUint,
    zeta2: &RInt,
    dyadic_primes: u32,
    ka_index: u64,
    prec: u64,
) -> RInt {
    let d = RInt::point(Dyadic::from_bigint(BigInt::from(d_k.clone())));
    let d32 = d.sqrt(prec).mul(&d, prec);
    let pi2m = pi(prec).powi(2 * m, prec);
    d32.mul(zeta2, prec)
        .div(&pi2m, prec)
        .mul_pow2(-(2 * m as i64 - 1 + dyadic_primes as i64))
        .div(&RInt::from_i64(ka_index as i64), prec)
}

/// Volume of the maximal lattice through g(k, A):
/// 2^{t-t'+n} g(k,A) prod_{Np != 2} (Np-1)/2, where t' counts ramified
/// primes of norm 2.
pub fn vol_from_g(
    algebra: &QuaternionAlgebra,
    g: &RInt,
    dyadic_primes: u32,
    prec: u64,
) -> RInt {
    let t_prime = algebra.ram.iter().filter(|t| t.norm() == BigUint::from(2u32)).count() as u32;
    let mut v = g.mul_pow2(dyadic_primes as i64 - t_prime as i64 + algebra.n as i64);
    for tag in &algebra.ram {
        let n = tag.norm();
        if n != BigUint::from(2u32) {
            let half = BigRational::new(BigInt::from(n) - BigInt::one(), BigInt::from(2));
            v = v.mul(&RInt::from_rational(&half, prec), prec);
        }
    }
    v
}

/// Chinburg-Friedman lower bound for g(k, A):
/// 0.142 exp(0.051 m - 19.0745 / [k'_A : k]).
pub fn cf_lower_bound(m: u32, kpa_index: u64, prec: u64) -> RInt {
    assert!(kpa_index >= 1);
    let coeff = BigRational::new(BigInt::from(71), BigInt::from(500));
    let arg = BigRational::new(BigInt::from(51 * m as i64), BigInt::from(1000))
        - BigRational::new(BigInt::from(190745), BigInt::from(10000i64 * kpa_index as i64));
    exp_rational(&arg, prec).mul(&RInt::from_rational(&coeff, prec), prec)
}

/// The largest degree m for which the Chinburg-Friedman bound still allows
/// g(k, A) <= 1 (at [k'_A : k] = 1, the worst case). Both endpoints are
/// certified by interval evaluation.
pub fn max_degree() -> u32 {
    let prec = 128;
    let one = BigRational::one();
    // 0.051 m <= ln(500/71) + 19.0745 gives m near 412; certify exactly
    let mut m = 412u32;
    loop {
        let here = cf_lower_bound(m, 1, prec);
        let next = cf_lower_bound(m + 1, 1, prec);
        if here.certainly_lt(&one) && next.certainly_gt(&one) {
            return m;
        }
        if !here.certainly_lt(&one) {
            m -= 1;
        } else {
            m += 1;
        }
    }
}

/// Brauer-Siegel class-number bound at s = 2:
/// h_k <= 2^{2-m} d_k zeta_k(2) / (pi^m R_lower).
pub fn brauer_siegel_hbound(
    m: u32,
    d_k: &BigUint,
    zeta2: &RInt,
    s: u32,
    r_lower: &BigRational,
    prec: u64,
) -> Result<RInt, AlgebraError> {
    if s != 2 {
        return Err(AlgebraError::UnsupportedS);
    }
    assert!(r_lower.is_positive());
    let d = RInt::point(Dyadic::from_bigint(BigInt::from(d_k.clone())));
    let pim = pi(prec).powi(m, prec);
    Ok(d
        .mul(zeta2, prec)
        .mul_pow2(2 - m as i64)
        .div(&pim, prec)
        .div(&RInt::from_rational(r_lower, prec), prec))
}

/// Root-discriminant ceiling f(m) = (2 pi)^{4/3} / 2^{2/(3m)}, computed as
/// the single certified root (pi^{4m} 2^{4m-2})^{1/(3m)}.
pub fn root_disc_ceiling(m: u32, prec: u64) -> RInt {
    let inner = pi(prec + 16)
        .powi(4 * m, prec + 16)
        .mul_pow2(4 * m as i64 - 2);
    inner.nth_root(3 * m, prec)
}

/// Minimal root discriminants of totally real fields (Voight's tables), for
/// 4 <= m <= 8, as the cited three-decimal values.
pub fn odlyzko_voight_min(m: u32) -> BigRational {
    let thousandths: i64 = match m {
        4 => 5189,
        5 => 6809,
        6 => 8182,
        7 => 11051,
        8 => 11385,
        _ => panic!("minimal root discriminant table covers degrees 4 through 8"),
    };
    BigRational::new(BigInt::from(thousandths), BigInt::from(1000))
}

/// Index of the norm-1 group inside the maximal lattice normalizing a
/// maximal order: 2^r [k_A : k].
pub fn maximal_lattice_index(r: u32, ka_index: u64) -> BigUint {
    BigUint::from(ka_index) << r
}

/// Index range of an Eichler-order lattice relative to the maximal one:
/// the paper determines it only up to a power of two, so the whole set
/// { 2^{-s} prod (Nq + 1) : 0 <= s <= |S| } is returned.
pub fn eichler_index_range(level_norms: &[BigUint]) -> BTreeSet<BigRational> {
    let mut prod = BigRational::one();
    for n in level_norms {
        prod *= BigRational::from_integer(BigInt::from(n.clone()) + BigInt::one());
    }
    let mut out = BTreeSet::new();
    for s in 0..=level_norms.len() {
        out.insert(&prod / pow2_rational(s as i64));
    }
    out
}

/// Exact covolume, its independent analytic bracket, and the lattice index a
/// fake quotient would require.
#[derive(Clone, Debug)]
pub struct VolumeReport {
    pub vol_norm1: BigRational,
    pub euler_analytic: RInt,
    pub required_index: BigRational,
}

pub fn volume_report(
    algebra: &QuaternionAlgebra,
    d_k: &BigUint,
    zeta_minus1: &BigRational,
    zeta2: &RInt,
    prec: u64,
) -> VolumeReport {
    let vol = covolume_norm1(algebra, zeta_minus1);
    let analytic = euler_crosscheck(algebra, d_k, zeta2, prec);
    let target = pow2_rational(algebra.n as i64);
    VolumeReport { required_index: target / &vol, vol_norm1: vol, euler_analytic: analytic }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::str::FromStr;

    fn rat(s: &str) -> BigRational {
        BigRational::from_str(s).unwrap()
    }

    fn tag(p: u64, e: u32, f: u32) -> IdealTag {
        IdealTag { p, e, f, ordinal: 0 }
    }

    #[test]
    fn descriptor_validation() {
        let avail = vec![tag(2, 2, 2), tag(5, 4, 1), tag(3, 1, 4)];
        assert!(QuaternionAlgebra::new(4, 4, vec![tag(2, 2, 2), tag(5, 4, 1)], &avail).is_ok());
        assert_eq!(
            QuaternionAlgebra::new(4, 4, vec![tag(2, 2, 2)], &avail),
            Err(AlgebraError::ParityViolation(1))
        );
        assert_eq!(
            QuaternionAlgebra::new(4, 4, vec![], &avail),
            Err(AlgebraError::NotDivision)
        );
        assert!(matches!(
            QuaternionAlgebra::new(4, 4, vec![tag(2, 2, 2), tag(7, 1, 1)], &avail),
            Err(AlgebraError::UnknownIdealTag(_))
        ));
        assert!(matches!(
            QuaternionAlgebra::new(4, 4, vec![tag(2, 2, 2), tag(2, 2, 2)], &avail),
            Err(AlgebraError::DuplicateTag(_))
        ));
        // m > n with empty ramification is a division algebra
        assert!(QuaternionAlgebra::new(6, 4, vec![], &[]).is_ok());
    }



    #[test]
    fn covolume_of_the_two_examples() {
        // A(k_2000; 4,4, p2 p5): 2 * (2/3) * 3 * 4 = 16
        let a = QuaternionAlgebra { m: 4, n: 4, ram: vec![tag(2, 2, 2), tag(5, 4, 1)] };
        assert_eq!(covolume_norm1(&a, &rat("2/3")), rat("16"));
        // A(l_2304; 4,4, p2 p3): 2 * 1 * 1 * 8 = 16
        let b = QuaternionAlgebra { m: 4, n: 4, ram: vec![tag(2, 4, 1), tag(3, 2, 2)] };
        assert_eq!(covolume_norm1(&b, &rat("1")), rat("16"));
        // A(k_453789; 6,4, empty): (1/2)(16/3) = 8/3, required index 6
        let c = QuaternionAlgebra { m: 6, n: 4, ram: vec![] };
        assert_eq!(covolume_norm1(&c, &rat("16/3")), rat("8/3"));
        // odd-degree center: A(k_38569; 5,4, p7): (8/3)*6 = 16
        let d = QuaternionAlgebra { m: 5, n: 4, ram: vec![tag(7, 1, 1)] };
        assert_eq!(covolume_norm1(&d, &rat("-8/3")), rat("16"));
    }

    #[test]
    fn lattice_indices() {
        assert_eq!(maximal_lattice_index(2, 1), BigUint::from(4u32));
        assert_eq!(maximal_lattice_index(0, 2), BigUint::from(2u32));
        let range = eichler_index_range(&[BigUint::from(3u32)]);
        let want: BTreeSet<BigRational> = [rat("4"), rat("2")].into_iter().collect();
        assert_eq!(range, want);
    }

    #[test]
    fn chinburg_friedman_412() {
        assert_eq!(max_degree(), 412);
        assert!(cf_lower_bound(413, 1, 128).certainly_gt(&rat("1")));
        assert!(cf_lower_bound(412, 1, 128).certainly_lt(&rat("1")));
        // direct instantiation at m = 1: 0.142 exp(0.051 - 19.0745)
        let v = cf_lower_bound(1, 1, 128);
        assert!(v.certainly_gt(&rat("0")));
        assert!(v.certainly_lt(&rat("1/1000000")));
    }

    #[test]
    fn root_disc_ceilings_match_published_table() {
        // (m, f(m) to three decimals): the classification's Table 1
        let cases = [(4u32, "10329"), (5, "10570"), (6, "10734"), (7, "10853"), (8, "10943")];
        for (m, milli) in cases {
            let f = root_disc_ceiling(m, 160);
            let lo = BigRational::new(BigInt::from(milli.parse::<i64>().unwrap()), 1000.into());
            let hi = &lo + rat("1/1000");
            assert!(f.certainly_gt(&lo), "f({m}) >= {milli}e-3");
            assert!(f.certainly_lt(&hi), "f({m}) < {milli}+1 e-3");
        }
        // monotone increasing, all below (2 pi)^{4/3} < 11.6
        let mut prev = rat("0");
        for m in 2..=8 {
            let f = root_disc_ceiling(m, 128);
            assert!(f.certainly_gt(&prev));
            assert!(f.certainly_lt(&rat("116/10")));
            prev = f.lo.to_rational();
        }
        // the degree-7 and degree-8 cut: minimal root discriminants exceed f(m)
        for m in [7u32, 8] {
            assert!(root_disc_ceiling(m, 128).certainly_lt(&odlyzko_voight_min(m)));
        }
        for m in [4u32, 5, 6] {
            assert!(root_disc_ceiling(m, 128).certainly_gt(&odlyzko_voight_min(m)));
        }
    }

    #[test]
    fn brauer_siegel_shape() {
        let z2 = RInt::from_rational(&rat("105/100"), 128);
        let b1 = brauer_siegel_hbound(4, &BigUint::from(2000u32), &z2, 2, &rat("1"), 128).unwrap();
        let b2 = brauer_siegel_hbound(4, &BigUint::from(2000u32), &z2, 2, &rat("2"), 128).unwrap();
        assert!(b1.certainly_gt(&rat("0")));
        // doubling R_lower halves the bound
        let ratio = b1.div(&b2, 128);
        assert!(ratio.contains_rational(&rat("2")));
        assert!(matches!(
            brauer_siegel_hbound(4, &BigUint::from(2000u32), &z2, 3, &rat("1"), 128),
            Err(AlgebraError::UnsupportedS)
        ));
    }
}
