//! Polynomials over Z and Q: resultants and discriminants, Sturm chains,
//! real-root isolation, and the cyclotomic / real-cyclotomic families.

use std::collections::HashMap;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use once_cell::sync::Lazy;

use crate::dyadic::{Dyadic, RInt, Round};

/// Polynomial over Z, coefficients constant-term first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntPoly {
    pub coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: vec![] }
    }

    pub fn x() -> Self {
        IntPoly::from_i64(&[0, 1])
    }

    pub fn constant(c: BigInt) -> Self {
        IntPoly::new(vec![c])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports degree 0 here, callers that care
    /// must check `is_zero` first.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().map_or(false, |c| c.is_one())
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn derivative(&self) -> IntPoly {
        if self.coeffs.len() <= 1 {
            return IntPoly::zero();
        }
        IntPoly::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * BigInt::from(i as u64 + 1))
                .collect(),
        )
    }

    pub fn add(&self, o: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, o: &IntPoly) -> IntPoly {
        if self.is_zero() || o.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    pub fn scale(&self, k: &BigInt) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Exact division by a monic divisor; panics if the division is not exact.
    pub fn div_exact_monic(&self, d: &IntPoly) -> IntPoly {
        assert!(d.is_monic(), "divisor must be monic");
        let mut rem = self.coeffs.clone();
        if rem.len() < d.coeffs.len() {
            assert!(self.is_zero(), "inexact polynomial division");
            return IntPoly::zero();
        }
        let dn = d.coeffs.len();
        let mut q = vec![BigInt::zero(); rem.len() - dn + 1];
        for i in (0..q.len()).rev() {
            let c = rem[i + dn - 1].clone();
            if c.is_zero() {
                continue;
            }
            q[i] = c.clone();
            for j in 0..dn {
                let t = &d.coeffs[j] * &c;
                rem[i + j] -= t;
            }
        }
        assert!(rem.iter().all(|c| c.is_zero()), "inexact polynomial division");
        IntPoly::new(q)
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn to_q(&self) -> QPoly {
        QPoly::new(self.coeffs.iter().map(|c| BigRational::from_integer(c.clone())).collect())
    }

    /// Render like `x^4 - 5x^2 + 5`.
    pub fn display(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts: Vec<String> = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.magnitude().to_string();
            let body = match (i, mag.as_str()) {
                (0, m) => m.to_string(),
                (1, "1") => "x".to_string(),
                (1, m) => format!("{m}x"),
                (_, "1") => format!("x^{i}"),
                (_, m) => format!("{m}x^{i}"),
            };
            if parts.is_empty() {
                parts.push(if c.is_negative() { format!("-{body}") } else { body });
            } else {
                parts.push(format!("{} {body}", if c.is_negative() { "-" } else { "+" }));
            }
        }
        parts.join(" ")
    }
}

/// Resultant of f and g over Z via fraction-free Gaussian elimination
/// (Bareiss) on the Sylvester matrix.
pub fn resultant(f: &IntPoly, g: &IntPoly) -> BigInt {
    if f.is_zero() || g.is_zero() {
        return BigInt::zero();
    }
    let n = f.degree();
    let m = g.degree();
    if n == 0 {
        return num_traits::Pow::pow(f.coeffs[0].clone(), m as u32);
    }
    if m == 0 {
        return num_traits::Pow::pow(g.coeffs[0].clone(), n as u32);
    }
    let size = n + m;
    let mut a = vec![vec![BigInt::zero(); size]; size];
    for row in 0..m {
        for (k, c) in f.coeffs.iter().rev().enumerate() {
            a[row][row + k] = c.clone();
        }
    }
    for row in 0..n {
        for (k, c) in g.coeffs.iter().rev().enumerate() {
            a[m + row][row + k] = c.clone();
        }
    }
    // Bareiss with division-free pivot tracking
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..size - 1 {
        if a[k][k].is_zero() {
            let swap = (k + 1..size).find(|&r| !a[r][k].is_zero());
            match swap {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let t = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = &t / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    let det = a[size - 1][size - 1].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}

/// disc(f) = (-1)^{m(m-1)/2} Res(f, f') for monic f.
pub fn poly_disc(f: &IntPoly) -> BigInt {
    assert!(f.is_monic() && f.degree() >= 1, "discriminant needs a monic polynomial of degree >= 1");
    let m = f.degree();
    let r = resultant(f, &f.derivative());
    if (m * (m - 1) / 2) % 2 == 1 {
        -r
    } else {
        r
    }
}

/// Polynomial over Q, constant-term first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QPoly {
    pub coeffs: Vec<BigRational>,
}

impl QPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn zero() -> Self {
        QPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        QPoly { coeffs: vec![BigRational::one()] }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn derivative(&self) -> QPoly {
        if self.coeffs.len() <= 1 {
            return QPoly::zero();
        }
        QPoly::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i as u64 + 1)))
                .collect(),
        )
    }

    pub fn add(&self, o: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        QPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        QPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn neg(&self) -> QPoly {
        QPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, o: &QPoly) -> QPoly {
        if self.is_zero() || o.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPoly::new(out)
    }

    pub fn scale(&self, k: &BigRational) -> QPoly {
        QPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Quotient and remainder of division by a nonzero polynomial.
    pub fn div_rem(&self, d: &QPoly) -> (QPoly, QPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut rem = self.coeffs.clone();
        let dn = d.coeffs.len();
        if rem.len() < dn {
            return (QPoly::zero(), self.clone());
        }
        let lead_inv = BigRational::one() / d.leading();
        let mut q = vec![BigRational::zero(); rem.len() - dn + 1];
        for i in (0..q.len()).rev() {
            let c = &rem[i + dn - 1] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            q[i] = c.clone();
            for j in 0..dn {
                let t = &d.coeffs[j] * &c;
                rem[i + j] -= t;
            }
        }
        (QPoly::new(q), QPoly::new(rem))
    }

    pub fn monic(&self) -> QPoly {
        if self.is_zero() {
            return QPoly::zero();
        }
        self.scale(&(BigRational::one() / self.leading()))
    }

    /// Monic gcd by the Euclidean algorithm.
    pub fn gcd(&self, other: &QPoly) -> QPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// True when all coefficients are integers.
    pub fn to_int_poly(&self) -> Option<IntPoly> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            if !c.denom().is_one() {
                return None;
            }
            out.push(c.numer().clone());
        }
        Some(IntPoly::new(out))
    }
}

fn sign_of(r: &BigRational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// Sturm chain of f (f assumed squarefree for exact root counting).
pub fn sturm_chain(f: &QPoly) -> Vec<QPoly> {
    let mut chain = vec![f.clone(), f.derivative()];
    loop {
        let n = chain.len();
        if chain[n - 1].is_zero() {
            chain.pop();
            return chain;
        }
        let (_, r) = chain[n - 2].div_rem(&chain[n - 1]);
        if r.is_zero() {
            return chain;
        }
        chain.push(r.neg());
    }
}

fn sign_variations(signs: impl Iterator<Item = i32>) -> usize {
    let mut last = 0i32;
    let mut count = 0usize;
    for s in signs {
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

fn variations_at(chain: &[QPoly], x: &BigRational) -> usize {
    sign_variations(chain.iter().map(|p| sign_of(&p.eval(x))))
}

fn variations_at_neg_inf(chain: &[QPoly]) -> usize {
    sign_variations(chain.iter().map(|p| {
        if p.is_zero() {
            0
        } else {
            let s = sign_of(&p.leading());
            if p.degree() % 2 == 1 {
                -s
            } else {
                s
            }
        }
    }))
}

fn variations_at_pos_inf(chain: &[QPoly]) -> usize {
    sign_variations(chain.iter().map(|p| if p.is_zero() { 0 } else { sign_of(&p.leading()) }))
}

/// Number of distinct real roots of a squarefree polynomial.
pub fn count_real_roots(f: &QPoly) -> usize {
    if f.degree() == 0 {
        return 0;
    }
    let chain = sturm_chain(f);
    variations_at_neg_inf(&chain) - variations_at_pos_inf(&chain)
}

/// Cauchy bound: all real roots lie in (-B, B).
pub fn root_bound(f: &QPoly) -> BigRational {
    let lead = f.leading();
    let mut m = BigRational::zero();
    for c in &f.coeffs[..f.coeffs.len() - 1] {
        let a = (c / &lead).abs();
        if a > m {
            m = a;
        }
    }
    m + BigRational::one()
}

/// Isolating intervals (lo, hi] for every real root of squarefree f,
/// in increasing order.
pub fn isolate_real_roots(f: &QPoly) -> Vec<(BigRational, BigRational)> {
    let chain = sturm_chain(f);
    let b = root_bound(f);
    let mut out = Vec::new();
    // count on (lo, hi] = var(lo) - var(hi)
    let mut stack = vec![(-b.clone(), b.clone())];
    while let Some((lo, hi)) = stack.pop() {
        let n = variations_at(&chain, &lo) - variations_at(&chain, &hi);
        match n {
            0 => {}
            1 => out.push((lo, hi)),
            _ => {
                let mid = (&lo + &hi) / BigRational::from_integer(2.into());
                stack.push((lo, mid.clone()));
                stack.push((mid, hi));
            }
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

/// Shrink an isolating interval of squarefree f until its width is below
/// 2^-prec, returning a certified enclosure.
pub fn refine_root(f: &QPoly, mut lo: BigRational, mut hi: BigRational, prec: u64) -> RInt {
    // (lo, hi] contains exactly one root; arrange a sign change (or hit the root)
    let target = BigRational::new(BigInt::one(), BigInt::one() << prec as usize);
    let mut f_lo = f.eval(&lo);
    if f_lo.is_zero() {
        // nudge left endpoint outward; the root is strictly inside (lo, hi]
        let d = Dyadic::from_rational(&lo, prec, Round::Down);
        return RInt::point(d);
    }
    loop {
        if &hi - &lo < target {
            return RInt::new(
                Dyadic::from_rational(&lo, prec + 8, Round::Down),
                Dyadic::from_rational(&hi, prec + 8, Round::Up),
            );
        }
        let mid = (&lo + &hi) / BigRational::from_integer(2.into());
        let f_mid = f.eval(&mid);
        if f_mid.is_zero() {
            let d = Dyadic::from_rational(&mid, prec, Round::Down);
            return RInt::point(d);
        }
        if sign_of(&f_mid) == sign_of(&f_lo) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
}

static CYCLOTOMIC_CACHE: Lazy<Mutex<HashMap<u64, IntPoly>>> = Lazy::new(|| Mutex::new(HashMap::new()));
static REAL_CYCLOTOMIC_CACHE: Lazy<Mutex<HashMap<u64, IntPoly>>> = Lazy::new(|| Mutex::new(HashMap::new()));

/// The n-th cyclotomic polynomial.
pub fn cyclotomic(n: u64) -> IntPoly {
    if let Some(p) = CYCLOTOMIC_CACHE.lock().unwrap().get(&n) {
        return p.clone();
    }
    let result = if n == 1 {
        IntPoly::from_i64(&[-1, 1])
    } else {
        // (x^n - 1) / prod_{d | n, d < n} Phi_d
        let mut coeffs = vec![BigInt::zero(); n as usize + 1];
        coeffs[0] = BigInt::from(-1);
        coeffs[n as usize] = BigInt::one();
        let mut num = IntPoly::new(coeffs);
        for d in 1..n {
            if n % d == 0 {
                num = num.div_exact_monic(&cyclotomic(d));
            }
        }
        num
    };
    CYCLOTOMIC_CACHE.lock().unwrap().insert(n, result.clone());
    result
}

/// Trace polynomial t_q with t_q(z + 1/z) = z^q + z^-q.
fn trace_poly(q: u64) -> IntPoly {
    let mut prev = IntPoly::from_i64(&[2]);
    if q == 0 {
        return prev;
    }
    let mut cur = IntPoly::x();
    let x = IntPoly::x();
    for _ in 1..q {
        let next = x.mul(&cur).sub(&prev);
        prev = cur;
        cur = next;
    }
    cur
}

/// Minimal polynomial of 2cos(2*pi/q) over Q (q >= 1), degree phi(q)/2 for
/// q >= 3. Computed by stripping lower-order factors from
/// prod_{j=1..q} (x - 2cos(2*pi*j/q)) = t_q(x) - 2.
pub fn real_cyclotomic_minpoly(q: u64) -> IntPoly {
    assert!(q >= 1);
    if let Some(p) = REAL_CYCLOTOMIC_CACHE.lock().unwrap().get(&q) {
        return p.clone();
    }
    let result = match q {
        1 => IntPoly::from_i64(&[-2, 1]),
        2 => IntPoly::from_i64(&[2, 1]),
        _ => {
            let v = trace_poly(q).sub(&IntPoly::from_i64(&[2]));
            // squarefree part = (x-2) (x+2)^{q even} prod_{3<=d|q} Psi_d
            let vq = v.to_q();
            let sqfree = vq.div_rem(&vq.gcd(&vq.derivative())).0.monic();
            let mut den = QPoly::new(vec![
                BigRational::from_integer(BigInt::from(-2)),
                BigRational::one(),
            ]);
            if q % 2 == 0 {
                den = den.mul(&QPoly::new(vec![
                    BigRational::from_integer(BigInt::from(2)),
                    BigRational::one(),
                ]));
            }
            for d in 3..q {
                if q % d == 0 {
                    den = den.mul(&real_cyclotomic_minpoly(d).to_q());
                }
            }
            let (quot, rem) = sqfree.div_rem(&den);
            assert!(rem.is_zero(), "real cyclotomic recursion out of step at q={q}");
            quot.to_int_poly().expect("real cyclotomic minimal polynomial is integral")
        }
    };
    REAL_CYCLOTOMIC_CACHE.lock().unwrap().insert(q, result.clone());
    result
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::str::FromStr;

    fn rat(s: &str) -> BigRational {
        BigRational::from_str(s).unwrap()
    }

    #[test]
    fn disc_of_quadratics() {
        // b^2 - 4c for x^2 + bx + c
        assert_eq!(poly_disc(&IntPoly::from_i64(&[-5, 0, 1])), BigInt::from(20));
        assert_eq!(poly_disc(&IntPoly::from_i64(&[1, 0, 1])), BigInt::from(-4));
    }

    #[test]
    fn disc_of_biquadratics() {
        // disc(x^4 + p x^2 + q) = 16 q (p^2 - 4q)^2
        assert_eq!(poly_disc(&IntPoly::from_i64(&[5, 0, -5, 0, 1])), BigInt::from(2000));
        assert_eq!(poly_disc(&IntPoly::from_i64(&[1, 0, -4, 0, 1])), BigInt::from(2304));
    }

    #[test]
    fn resultant_multiplicativity() {
        // Res(fg, h) = Res(f, h) Res(g, h)
        let f = IntPoly::from_i64(&[1, 2, 1]);
        let g = IntPoly::from_i64(&[-3, 0, 1]);
        let h = IntPoly::from_i64(&[5, 1, 2]);
        assert_eq!(resultant(&f.mul(&g), &h), resultant(&f, &h) * resultant(&g, &h));
    }

    #[test]
    fn sturm_counts() {
        // x^2 + 1: no real roots
        assert_eq!(count_real_roots(&IntPoly::from_i64(&[1, 0, 1]).to_q()), 0);
        // x^4 - 5x^2 + 5: totally real
        assert_eq!(count_real_roots(&IntPoly::from_i64(&[5, 0, -5, 0, 1]).to_q()), 4);
        // x^5 - 5x^3 + 4x - 1: totally real (table quintic)
        assert_eq!(count_real_roots(&IntPoly::from_i64(&[-1, 4, 0, -5, 0, 1]).to_q()), 5);
        // x^3 - 2: one real root
        assert_eq!(count_real_roots(&IntPoly::from_i64(&[-2, 0, 0, 1]).to_q()), 1);
    }

    #[test]
    fn isolation_refinement() {
        let f = IntPoly::from_i64(&[-2, 0, 1]).to_q(); // x^2 - 2
        let roots = isolate_real_roots(&f);
        assert_eq!(roots.len(), 2);
        let r = refine_root(&f, roots[1].0.clone(), roots[1].1.clone(), 100);
        // sqrt(2) = 1.41421356237309504880...
        assert!(r.lo.to_rational() < rat("14142135623731/10000000000000"));
        assert!(r.hi.to_rational() > rat("14142135623730/10000000000000"));
        assert!(r.width().to_rational() < rat("1/1000000000000000000000000000000"));
    }

    #[test]
    fn cyclotomic_basics() {
        assert_eq!(cyclotomic(4), IntPoly::from_i64(&[1, 0, 1]));
        assert_eq!(cyclotomic(12), IntPoly::from_i64(&[1, 0, -1, 0, 1]));
        // Phi_20 = x^8 - x^6 + x^4 - x^2 + 1
        assert_eq!(cyclotomic(20), IntPoly::from_i64(&[1, 0, -1, 0, 1, 0, -1, 0, 1]));
        // degree phi(n)
        for n in 1..=60u64 {
            assert_eq!(cyclotomic(n).degree() as u64, crate::arith::euler_phi(n));
        }
    }

    #[test]
    fn real_cyclotomic_minpolys() {
        // 2cos(2pi/5) has minimal polynomial x^2 + x - 1
        assert_eq!(real_cyclotomic_minpoly(5), IntPoly::from_i64(&[-1, 1, 1]));
        // 2cos(2pi/8) = sqrt(2): x^2 - 2
        assert_eq!(real_cyclotomic_minpoly(8), IntPoly::from_i64(&[-2, 0, 1]));
        // 2cos(2pi/12) = sqrt(3): x^2 - 3
        assert_eq!(real_cyclotomic_minpoly(12), IntPoly::from_i64(&[-3, 0, 1]));
        // q=20: x^4 - 5x^2 + 5 (the 2000-field generator)
        assert_eq!(real_cyclotomic_minpoly(20), IntPoly::from_i64(&[5, 0, -5, 0, 1]));
        // q=24: x^4 - 4x^2 + 1 (the 2304-field generator)
        assert_eq!(real_cyclotomic_minpoly(24), IntPoly::from_i64(&[1, 0, -4, 0, 1]));
        // degrees phi(q)/2, and all totally real
        for q in 3..=40u64 {
            let psi = real_cyclotomic_minpoly(q);
            assert_eq!(psi.degree() as u64, crate::arith::euler_phi(q) / 2, "degree at q={q}");
            assert_eq!(count_real_roots(&psi.to_q()), psi.degree(), "real roots at q={q}");
        }
    }
}
