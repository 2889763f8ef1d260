//! Number fields: construction and validation, exact field-element
//! arithmetic, real embeddings, and certified detection of real cyclotomic
//! subfields.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::arith;
use crate::dirichlet;
use crate::dyadic::RInt;
use crate::intpoly::{
    self, count_real_roots, isolate_real_roots, poly_disc, refine_root, IntPoly, QPoly,
};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("defining polynomial must be monic of degree >= 1")]
    NotMonic,
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("polynomial is not totally real")]
    NotTotallyReal,
    #[error("disc(f) = {disc} is not d_k = {d_k} times a positive perfect square")]
    DiscMismatch { disc: BigInt, d_k: BigUint },
    #[error("division by zero field element")]
    DivisionByZero,
    #[error("zero divisor encountered: the defining polynomial is reducible")]
    ZeroDivisor,
}

/// True iff every complex root of f is real (Sturm count equals the degree).
pub fn is_totally_real(f: &IntPoly) -> Result<bool, FieldError> {
    let fq = f.to_q();
    let g = fq.gcd(&fq.derivative());
    if g.degree() > 0 {
        return Err(FieldError::NotSquarefree);
    }
    Ok(count_real_roots(&fq) == f.degree())
}

/// A totally real number field presented by a monic integral polynomial and
/// its (trusted) field discriminant.
#[derive(Clone, Debug)]
pub struct NumberField {
    pub poly: IntPoly,
    pub degree: u32,
    pub d_k: BigUint,
    /// [O_K : Z[theta]] (square root of disc(f)/d_k)
    pub index: BigUint,
    pub disc_f: BigInt,
    /// present when the field is known to be Q(zeta_N + zeta_N^{-1})
    pub cyclotomic_tag: Option<u64>,
}

impl NumberField {
    pub fn new(poly: IntPoly, d_k: BigUint) -> Result<Self, FieldError> {
        Self::with_tag(poly, d_k, None)
    }

    pub fn with_tag(
        poly: IntPoly,
        d_k: BigUint,
        cyclotomic_tag: Option<u64>,
    ) -> Result<Self, FieldError> {
        if !poly.is_monic() || poly.degree() < 1 {
            return Err(FieldError::NotMonic);
        }
        if !is_totally_real(&poly)? {
            return Err(FieldError::NotTotallyReal);
        }
        let disc_f = poly_disc(&poly);
        let d_int = BigInt::from(d_k.clone());
        let (q, r) = disc_f.div_rem(&d_int);
        if d_k.is_zero() || !r.is_zero() || !q.is_positive() {
            return Err(FieldError::DiscMismatch { disc: disc_f, d_k });
        }
        let qu = q.to_biguint().unwrap();
        let index = qu.sqrt();
        if &index * &index != qu {
            return Err(FieldError::DiscMismatch { disc: disc_f, d_k });
        }
        Ok(NumberField {
            degree: poly.degree() as u32,
            poly,
            d_k,
            index,
            disc_f,
            cyclotomic_tag,
        })
    }

    /// Root discriminant d_k^(1/m), certified to better than 2^-prec.
    pub fn root_disc(&self, prec: u64) -> RInt {
        RInt::point(crate::dyadic::Dyadic::from_bigint(BigInt::from(self.d_k.clone())))
            .nth_root(self.degree, prec)
    }

    /// d_k^(3/2) as a certified interval.
    pub fn d_k_pow_3_2(&self, prec: u64) -> RInt {
        let d = RInt::point(crate::dyadic::Dyadic::from_bigint(BigInt::from(self.d_k.clone())));
        d.sqrt(prec).mul(&d, prec)
    }

    pub fn element(&self, coords: Vec<BigRational>) -> FieldElement {
        let mut c = coords;
        c.resize(self.degree as usize, BigRational::zero());
        FieldElement { coords: c }
    }

    pub fn element_from_poly(&self, p: &QPoly) -> FieldElement {
        let reduced = p.div_rem(&self.poly.to_q()).1;
        let mut coords = reduced.coeffs.clone();
        coords.resize(self.degree as usize, BigRational::zero());
        FieldElement { coords }
    }

    pub fn zero_el(&self) -> FieldElement {
        self.element(vec![])
    }

    pub fn one_el(&self) -> FieldElement {
        self.element(vec![BigRational::one()])
    }

    /// theta, the class of x.
    pub fn generator(&self) -> FieldElement {
        self.element(vec![BigRational::zero(), BigRational::one()])
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.element(
            a.coords
                .iter()
                .zip(&b.coords)
                .map(|(x, y)| x + y)
                .collect(),
        )
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.element(
            a.coords
                .iter()
                .zip(&b.coords)
                .map(|(x, y)| x - y)
                .collect(),
        )
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.element_from_poly(&a.as_poly().mul(&b.as_poly()))
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in Q[x].
    /// A nontrivial common factor with f signals a reducible defining
    /// polynomial.
    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement, FieldError> {
        if a.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let f = self.poly.to_q();
        let (mut r0, mut r1) = (f.clone(), a.as_poly());
        let (mut s0, mut s1) = (QPoly::zero(), QPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = s0.sub(&q.mul(&s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        if r0.degree() > 0 {
            return Err(FieldError::ZeroDivisor);
        }
        let lead = r0.leading();
        Ok(self.element_from_poly(&s0.scale(&(BigRational::one() / lead))))
    }

    pub fn pow(&self, a: &FieldElement, mut n: u64) -> FieldElement {
        let mut acc = self.one_el();
        let mut base = a.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            n >>= 1;
        }
        acc
    }

    /// Evaluate an integer polynomial at a field element.
    pub fn eval_int_poly(&self, g: &IntPoly, a: &FieldElement) -> FieldElement {
        let mut acc = self.zero_el();
        for c in g.coeffs.iter().rev() {
            acc = self.mul(&acc, a);
            acc.coords[0] += BigRational::from_integer(c.clone());
        }
        acc
    }

    /// The m real embeddings of theta, in increasing order, certified to
    /// 2^-prec.
    pub fn embeddings(&self, prec: u64) -> Vec<RInt> {
        let fq = self.poly.to_q();
        isolate_real_roots(&fq)
            .into_iter()
            .map(|(lo, hi)| refine_root(&fq, lo, hi, prec))
            .collect()
    }
}

/// Exact element in the power basis of the field generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldElement {
    pub coords: Vec<BigRational>,
}

impl FieldElement {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn as_poly(&self) -> QPoly {
        QPoly::new(self.coords.clone())
    }
}

/// Verdict of a subfield containment question.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Containment {
    Yes,
    No,
    Undetermined,
}

/// Continued-fraction best approximation with denominator at most `cap`.
fn cf_recognize(x: &BigRational, cap: &BigInt) -> BigRational {
    if x.denom() <= cap {
        return x.clone();
    }
    // convergents of the continued fraction of x
    let (mut p0, mut q0) = (BigInt::one(), BigInt::zero());
    let (mut p1, mut q1) = (x.floor().numer().clone(), BigInt::one());
    let mut frac = x - x.floor();
    while !frac.is_zero() {
        let rec = frac.recip();
        let a = rec.floor().numer().clone();
        frac = rec.clone() - rec.floor();
        let p2 = &a * &p1 + &p0;
        let q2 = &a * &q1 + &q0;
        if &q2 > cap {
            break;
        }
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
    }
    BigRational::new(p1, q1)
}

const CF_DENOMINATOR_CAP: u64 = 1_000_000;
const BASE_PRECISION: u64 = 128;
const PRECISION_DOUBLINGS: u32 = 4;

/// Is Q(zeta_q + zeta_q^{-1}) a subfield of K?
///
/// Exact pre-filters (degree divisibility and discriminant tower
/// divisibility) and the abelian subgroup criterion decide most cases; the
/// rest go through a numeric search over real-embedding assignments whose
/// positive answers are certified by exact evaluation of the minimal
/// polynomial, so "yes" is always proven. A failed search yields
/// Undetermined, never "no".
pub fn contains_real_cyclotomic(field: &NumberField, q: u64) -> Containment {
    assert!(q >= 3);
    let m = field.degree as u64;
    let delta = arith::euler_phi(q) / 2;
    if delta == 1 {
        // Q(zeta_3)^+ = Q(zeta_4)^+ = Q; also q = 6 collapses to Q
        return Containment::Yes;
    }
    if m % delta != 0 {
        return Containment::No;
    }
    // discriminant tower filter: d_subfield^(m/delta) must divide d_k
    let d_sub = dirichlet::real_cyclotomic_disc(q);
    let d_pow = num_traits::Pow::pow(&d_sub, (m / delta) as u32);
    if !(field.d_k.clone() % d_pow).is_zero() {
        return Containment::No;
    }
    if let Some(n) = field.cyclotomic_tag {
        return if real_cyclo_in_real_cyclo(q, n) {
            Containment::Yes
        } else {
            Containment::No
        };
    }
    // numeric search with exact certification
    let psi = intpoly::real_cyclotomic_minpoly(q);
    let mut prec = BASE_PRECISION;
    for _ in 0..=PRECISION_DOUBLINGS {
        for cand in embedding_candidates(field, &psi, prec) {
            let value = field.eval_int_poly(&psi, &cand);
            if value.is_zero() {
                return Containment::Yes;
            }
        }
        prec *= 2;
    }
    Containment::Undetermined
}

/// Subgroup criterion: Q(zeta_q)^+ inside Q(zeta_n)^+, decided inside
/// (Z/lcm(q,n))^*.
pub fn real_cyclo_in_real_cyclo(q: u64, n: u64) -> bool {
    if n % q == 0 {
        return true;
    }
    let m = arith::lcm_u64(q, n);
    // Gal(Q(zeta_m)/Q(zeta_n)^+) = {a = +-1 mod n} must fix Q(zeta_q)^+,
    // i.e. land in {a = +-1 mod q}
    for a in arith::units_mod(m) {
        if (a % n == 1 % n || a % n == n - 1) && !(a % q == 1 % q || a % q == q - 1) {
            return false;
        }
    }
    true
}

/// Candidate elements of K whose images under the real embeddings hit each
/// root of psi with multiplicity m/deg(psi). The first embedding is pinned
/// to the first root: the Galois group of the (abelian) subfield acts
/// transitively on the roots of psi, so any realizable assignment can be
/// relabelled into this form. Candidates are unverified; the caller must
/// certify psi(candidate) = 0 exactly.
fn embedding_candidates(field: &NumberField, psi: &IntPoly, prec: u64) -> Vec<FieldElement> {
    let m = field.degree as usize;
    let delta = psi.degree();
    let copies = m / delta;
    let theta = field.embeddings(prec);
    let psi_q = psi.to_q();
    let targets: Vec<BigRational> = isolate_real_roots(&psi_q)
        .into_iter()
        .map(|(lo, hi)| refine_root(&psi_q, lo, hi, prec).midpoint())
        .collect();
    if targets.len() != delta {
        return Vec::new();
    }
    // Vandermonde rows from embedding midpoints; invert once
    let rows: Vec<Vec<BigRational>> = theta
        .iter()
        .map(|t| {
            let x = t.midpoint();
            let mut row = Vec::with_capacity(m);
            let mut acc = BigRational::one();
            for _ in 0..m {
                row.push(acc.clone());
                acc *= &x;
            }
            row
        })
        .collect();
    let inv = match invert_matrix(&rows) {
        Some(v) => v,
        None => return Vec::new(),
    };
    let cap = BigInt::from(CF_DENOMINATOR_CAP);
    // enumerate assignments with assignment[0] = 0
    let mut assignments: Vec<Vec<usize>> = Vec::new();
    let mut assignment = vec![0usize; m];
    let mut counts = vec![0usize; delta];
    counts[0] = 1;
    enumerate_assignments(1, m, copies, &mut assignment, &mut counts, &mut assignments);
    let mut out = Vec::with_capacity(assignments.len());
    for assign in &assignments {
        let coords: Vec<BigRational> = (0..m)
            .map(|i| {
                let mut acc = BigRational::zero();
                for (j, &r) in assign.iter().enumerate() {
                    acc += &inv[i][j] * &targets[r];
                }
                cf_recognize(&acc, &cap)
            })
            .collect();
        out.push(FieldElement { coords });
    }
    out
}

fn enumerate_assignments(
    pos: usize,
    m: usize,
    copies: usize,
    assignment: &mut Vec<usize>,
    counts: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if pos == m {
        out.push(assignment.clone());
        return;
    }
    for r in 0..counts.len() {
        if counts[r] == copies {
            continue;
        }
        counts[r] += 1;
        assignment[pos] = r;
        enumerate_assignments(pos + 1, m, copies, assignment, counts, out);
        counts[r] -= 1;
    }
}

fn invert_matrix(a: &[Vec<BigRational>]) -> Option<Vec<Vec<BigRational>>> {
    let n = a.len();
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            for j in 0..n {
                r.push(if i == j { BigRational::one() } else { BigRational::zero() });
            }
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        let inv = BigRational::one() / m[col][col].clone();
        for j in col..2 * n {
            m[col][j] = &m[col][j] * &inv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for j in col..2 * n {
                    let t = &factor * &m[col][j];
                    m[r][j] -= t;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n..].to_vec()).collect())
}


#[cfg(test)]
mod tests {
    use super::*;
    use std::str::FromStr;

    fn field(coeffs: &[i64], d_k: u64) -> NumberField {
        NumberField::new(IntPoly::from_i64(coeffs), BigUint::from(d_k)).unwrap()
    }

    fn rat(s: &str) -> BigRational {
        BigRational::from_str(s).unwrap()
    }

    #[test]
    fn totally_real_checks() {
        assert!(!is_totally_real(&IntPoly::from_i64(&[1, 0, 1])).unwrap());
        assert!(is_totally_real(&IntPoly::from_i64(&[5, 0, -5, 0, 1])).unwrap());
        assert!(is_totally_real(&IntPoly::from_i64(&[-1, 4, 0, -5, 0, 1])).unwrap());
        assert_eq!(
            is_totally_real(&IntPoly::from_i64(&[1, 2, 1])),
            Err(FieldError::NotSquarefree)
        );
    }

    #[test]
    fn field_construction() {
        let k = field(&[5, 0, -5, 0, 1], 2000);
        assert_eq!(k.degree, 4);
        assert_eq!(k.index, BigUint::from(1u32));
        // 2000/1000 = 2 is not a square
        assert!(matches!(
            NumberField::new(IntPoly::from_i64(&[5, 0, -5, 0, 1]), BigUint::from(1000u32)),
            Err(FieldError::DiscMismatch { .. })
        ));
        // 2000/125 = 16 is a square: structurally accepted with index 4
        let k125 = NumberField::new(IntPoly::from_i64(&[5, 0, -5, 0, 1]), BigUint::from(125u32))
            .unwrap();
        assert_eq!(k125.index, BigUint::from(4u32));
        assert!(matches!(
            NumberField::new(IntPoly::from_i64(&[1, 0, 1]), BigUint::from(4u32)),
            Err(FieldError::NotTotallyReal)
        ));
        // sextic from the tables
        let k6 = field(&[1, -8, 8, 6, -6, -1, 1], 453789);
        assert_eq!(k6.degree, 6);
        assert_eq!(k6.index, BigUint::from(1u32));
    }

    #[test]
    fn root_disc_values() {
        let k = field(&[1, 1, -3, -1, 1], 725);
        let r = k.root_disc(128);
        assert!(r.lo.to_rational() > rat("5189/1000"));
        assert!(r.hi.to_rational() < rat("5190/1000"));
        let one = NumberField::new(IntPoly::from_i64(&[-1, 1]), BigUint::from(1u32)).unwrap();
        let r1 = one.root_disc(128);
        assert!(r1.contains_rational(&rat("1")));
    }

    #[test]
    fn element_arithmetic() {
        // Q(sqrt 5): theta^2 = 5, 1/theta = theta/5
        let k = NumberField::new(IntPoly::from_i64(&[-5, 0, 1]), BigUint::from(5u32)).unwrap();
        let th = k.generator();
        let sq = k.mul(&th, &th);
        assert_eq!(sq.coords, vec![rat("5"), rat("0")]);
        let inv = k.inv(&th).unwrap();
        assert_eq!(inv.coords, vec![rat("0"), rat("1/5")]);
        // theta^4 = 5 theta^2 - 5 in the 2000 field
        let k4 = field(&[5, 0, -5, 0, 1], 2000);
        let th = k4.generator();
        let p4 = k4.pow(&th, 4);
        assert_eq!(p4.coords, vec![rat("-5"), rat("0"), rat("5"), rat("0")]);
    }

    #[test]
    fn inverse_roundtrip_many() {
        let k = field(&[5, 0, -5, 0, 1], 2000);
        let mut rng = crate::arith::SplitMix64::new(7);
        for _ in 0..200 {
            let coords: Vec<BigRational> = (0..4)
                .map(|_| {
                    BigRational::new(
                        BigInt::from(rng.below(41) as i64 - 20),
                        BigInt::from(rng.below(7) + 1),
                    )
                })
                .collect();
            let a = k.element(coords);
            if a.is_zero() {
                continue;
            }
            let inv = k.inv(&a).unwrap();
            let prod = k.mul(&a, &inv);
            assert_eq!(prod, k.one_el());
        }
    }

    #[test]
    fn zero_divisor_detected() {
        // reducible x^2 - 1 sneaks past construction if presented as a
        // "field"; inversion of theta - 1 must flag it. Construct the raw
        // element path directly.
        let fake = NumberField {
            poly: IntPoly::from_i64(&[-1, 0, 1]),
            degree: 2,
            d_k: BigUint::from(1u32),
            index: BigUint::one(),
            disc_f: BigInt::from(4),
            cyclotomic_tag: None,
        };
        let a = fake.element(vec![rat("-1"), rat("1")]);
        assert_eq!(fake.inv(&a), Err(FieldError::ZeroDivisor));
        assert_eq!(fake.inv(&fake.zero_el()), Err(FieldError::DivisionByZero));
    }

    #[test]
    fn embeddings_are_ordered_roots() {
        let k = field(&[5, 0, -5, 0, 1], 2000);
        let em = k.embeddings(100);
        assert_eq!(em.len(), 4);
        for w in em.windows(2) {
            assert!(w[0].hi < w[1].lo);
        }
        // roots of x^4 - 5x^2 + 5 are +-sqrt((5 +- sqrt 5)/2)
        for e in &em {
            let mid = e.midpoint();
            let val = k.poly.eval_rational(&mid);
            assert!(val.abs() < rat("1/1000000000000000000000000"));
        }
    }

    #[test]
    fn cyclotomic_containment_tagged() {
        let k2000 = NumberField::with_tag(
            IntPoly::from_i64(&[5, 0, -5, 0, 1]),
            BigUint::from(2000u32),
            Some(20),
        )
        .unwrap();
        assert_eq!(contains_real_cyclotomic(&k2000, 5), Containment::Yes);
        assert_eq!(contains_real_cyclotomic(&k2000, 20), Containment::Yes);
        assert_eq!(contains_real_cyclotomic(&k2000, 8), Containment::No);
        assert_eq!(contains_real_cyclotomic(&k2000, 3), Containment::Yes); // Q
        let k2304 = NumberField::with_tag(
            IntPoly::from_i64(&[1, 0, -4, 0, 1]),
            BigUint::from(2304u32),
            Some(24),
        )
        .unwrap();
        assert_eq!(contains_real_cyclotomic(&k2304, 8), Containment::Yes);
        assert_eq!(contains_real_cyclotomic(&k2304, 12), Containment::Yes);
        assert_eq!(contains_real_cyclotomic(&k2304, 24), Containment::Yes);
        assert_eq!(contains_real_cyclotomic(&k2304, 5), Containment::No);
    }

    #[test]
    fn cyclotomic_containment_numeric() {
        // untagged copy of the 2000 field: numeric search must certify
        // sqrt(5)-containment (q = 5) and Q(zeta_20)^+ itself (q = 20)
        let k = field(&[5, 0, -5, 0, 1], 2000);
        assert_eq!(contains_real_cyclotomic(&k, 5), Containment::Yes);
        assert_eq!(contains_real_cyclotomic(&k, 20), Containment::Yes);
        // untagged 2304 field: sqrt(2) = zeta_8 + zeta_8^{-1} is inside
        let l = field(&[1, 0, -4, 0, 1], 2304);
        assert_eq!(contains_real_cyclotomic(&l, 8), Containment::Yes);
        // 1957: phi(5)/2 = 2 divides 4, but 5^2 does not divide 1957
        let k1957 = field(&[1, -1, -4, 0, 1], 1957);
        assert_eq!(contains_real_cyclotomic(&k1957, 5), Containment::No);
        assert_eq!(contains_real_cyclotomic(&k1957, 7), Containment::No);
    }

    #[test]
    fn containment_certified_for_degree_six() {
        // Q(zeta_21)^+ contains Q(zeta_7)^+ — numeric path on the untagged field
        let k = field(&[1, -8, 8, 6, -6, -1, 1], 453789);
        assert_eq!(contains_real_cyclotomic(&k, 7), Containment::Yes);
        // 13: phi(13)/2 = 6 divides 6 but 13^5 does not divide 453789
        assert_eq!(contains_real_cyclotomic(&k, 13), Containment::No);
    }
}
