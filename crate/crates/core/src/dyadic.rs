//! Certified real arithmetic: dyadic fixed-point numbers and outward-rounded
//! intervals.
//!
//! Every interval operation rounds its lower endpoint down and its upper
//! endpoint up, so an `RInt` produced from exact inputs always contains the
//! exact real result. Bound checks against such intervals can therefore never
//! accept a false claim, only fail to certify a true one.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::Mutex;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use once_cell::sync::Lazy;

/// `mant * 2^exp` with arbitrary-precision mantissa.
#[derive(Clone, Debug)]
pub struct Dyadic {
    pub mant: BigInt,
    pub exp: i64,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Round {
    Down,
    Up,
}

impl Dyadic {
    pub fn zero() -> Self {
        Dyadic { mant: BigInt::zero(), exp: 0 }
    }

    pub fn one() -> Self {
        Dyadic { mant: BigInt::one(), exp: 0 }
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Dyadic { mant: n, exp: 0 }
    }

    pub fn from_i64(n: i64) -> Self {
        Dyadic { mant: BigInt::from(n), exp: 0 }
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    /// Exact rational value.
    pub fn to_rational(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.mant << self.exp as usize)
        } else {
            BigRational::new(self.mant.clone(), BigInt::one() << (-self.exp) as usize)
        }
    }

    pub fn neg(&self) -> Self {
        Dyadic { mant: -&self.mant, exp: self.exp }
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b) = if self.exp <= other.exp { (self, other) } else { (other, self) };
        let shifted = &b.mant << (b.exp - a.exp) as usize;
        Dyadic { mant: &a.mant + shifted, exp: a.exp }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        Dyadic { mant: &self.mant * &other.mant, exp: self.exp + other.exp }
    }

    pub fn mul_pow2(&self, k: i64) -> Self {
        Dyadic { mant: self.mant.clone(), exp: self.exp + k }
    }

    fn bits(&self) -> u64 {
        self.mant.magnitude().bits()
    }

    /// Round to at most `prec` significant bits, in direction `dir`
    /// (Down = toward -inf, Up = toward +inf).
    pub fn round(&self, prec: u64, dir: Round) -> Self {
        let bits = self.bits();
        if bits <= prec {
            return self.clone();
        }
        let shift = (bits - prec) as usize;
        let q = &self.mant >> shift;
        let exact = (&q << shift) == self.mant;
        let mant = match (dir, exact) {
            (_, true) | (Round::Down, false) => q,
            (Round::Up, false) => q + 1,
        };
        Dyadic { mant, exp: self.exp + shift as i64 }
    }

    /// `self / other` rounded in direction `dir` with `prec` result bits.
    pub fn div(&self, other: &Self, prec: u64, dir: Round) -> Self {
        assert!(!other.mant.is_zero(), "dyadic division by zero");
        if self.mant.is_zero() {
            return Dyadic::zero();
        }
        // scale numerator so the quotient has ~prec+2 significant bits
        let extra = (prec + 2 + other.bits()).saturating_sub(self.bits());
        let num = &self.mant << extra as usize;
        let (q, r) = num.div_rem(&other.mant);
        let exact = r.is_zero();
        let down = if exact {
            q
        } else {
            // div_rem truncates toward zero; adjust to floor/ceil as needed
            let quotient_negative = (self.mant.sign() == Sign::Minus) != (other.mant.sign() == Sign::Minus);
            match (dir, quotient_negative) {
                (Round::Down, true) => q - 1,
                (Round::Down, false) => q,
                (Round::Up, true) => q,
                (Round::Up, false) => q + 1,
            }
        };
        Dyadic { mant: down, exp: self.exp - other.exp - extra as i64 }.round(prec, dir)
    }

    /// Floor of self as a BigInt.
    pub fn floor_int(&self) -> BigInt {
        if self.exp >= 0 {
            &self.mant << self.exp as usize
        } else {
            &self.mant >> (-self.exp) as usize
        }
    }

    pub fn from_rational(r: &BigRational, prec: u64, dir: Round) -> Self {
        Dyadic::from_bigint(r.numer().clone()).div(
            &Dyadic::from_bigint(r.denom().clone()),
            prec,
            dir,
        )
    }

    /// n-th root of a nonnegative dyadic, rounded in direction `dir`.
    pub fn nth_root(&self, n: u32, prec: u64, dir: Round) -> Self {
        assert!(!self.mant.is_negative(), "nth_root of negative value");
        if self.mant.is_zero() {
            return Dyadic::zero();
        }
        // scale so that the integer root carries ~prec+2 bits
        let want = n as u64 * (prec + 2);
        let cur = self.bits();
        let mut extra = want.saturating_sub(cur) as i64;
        // make the final exponent divisible by n
        let mut e = self.exp - extra;
        let rem = e.rem_euclid(n as i64);
        if rem != 0 {
            extra += rem;
            e -= rem;
        }
        let scaled: BigUint = (&self.mant << extra as usize).magnitude().clone();
        let root = num_integer::Roots::nth_root(&scaled, n);
        let exact = num_traits::Pow::pow(&root, n) == scaled;
        let mant = match (dir, exact) {
            (_, true) | (Round::Down, false) => root,
            (Round::Up, false) => root + 1u32,
        };
        Dyadic { mant: BigInt::from(mant), exp: e / n as i64 }.round(prec, dir)
    }

    pub fn to_f64(&self) -> f64 {
        let r = self.to_rational();
        r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
    }
}

impl PartialEq for Dyadic {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Dyadic {}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sub(other).mant.sign().cmp(&Sign::NoSign)
    }
}

/// Closed interval `[lo, hi]` with outward-rounded arithmetic.
#[derive(Clone, Debug)]
pub struct RInt {
    pub lo: Dyadic,
    pub hi: Dyadic,
}

impl RInt {
    pub fn point(d: Dyadic) -> Self {
        RInt { lo: d.clone(), hi: d }
    }

    pub fn new(lo: Dyadic, hi: Dyadic) -> Self {
        assert!(lo <= hi, "inverted interval");
        RInt { lo, hi }
    }

    pub fn from_i64(n: i64) -> Self {
        RInt::point(Dyadic::from_i64(n))
    }

    pub fn from_rational(r: &BigRational, prec: u64) -> Self {
        RInt {
            lo: Dyadic::from_rational(r, prec, Round::Down),
            hi: Dyadic::from_rational(r, prec, Round::Up),
        }
    }

    pub fn contains_rational(&self, r: &BigRational) -> bool {
        let v = r.clone();
        self.lo.to_rational() <= v && v <= self.hi.to_rational()
    }

    pub fn width(&self) -> Dyadic {
        self.hi.sub(&self.lo)
    }

    pub fn neg(&self) -> Self {
        RInt { lo: self.hi.neg(), hi: self.lo.neg() }
    }

    pub fn add(&self, o: &Self, prec: u64) -> Self {
        RInt {
            lo: self.lo.add(&o.lo).round(prec, Round::Down),
            hi: self.hi.add(&o.hi).round(prec, Round::Up),
        }
    }

    pub fn sub(&self, o: &Self, prec: u64) -> Self {
        self.add(&o.neg(), prec)
    }

    pub fn mul(&self, o: &Self, prec: u64) -> Self {
        let cands = [
            self.lo.mul(&o.lo),
            self.lo.mul(&o.hi),
            self.hi.mul(&o.lo),
            self.hi.mul(&o.hi),
        ];
        let lo = cands.iter().min().unwrap().round(prec, Round::Down);
        let hi = cands.iter().max().unwrap().round(prec, Round::Up);
        RInt { lo, hi }
    }

    /// Division; requires `o` to be strictly of one sign.
    pub fn div(&self, o: &Self, prec: u64) -> Self {
        assert!(
            o.lo.is_negative() == o.hi.is_negative() && !o.lo.is_zero() && !o.hi.is_zero(),
            "interval division by a range containing zero"
        );
        let cands = [
            self.lo.div(&o.lo, prec, Round::Down),
            self.lo.div(&o.hi, prec, Round::Down),
            self.hi.div(&o.lo, prec, Round::Down),
            self.hi.div(&o.hi, prec, Round::Down),
        ];
        let lo = cands.iter().min().unwrap().clone();
        let cands_up = [
            self.lo.div(&o.lo, prec, Round::Up),
            self.lo.div(&o.hi, prec, Round::Up),
            self.hi.div(&o.lo, prec, Round::Up),
            self.hi.div(&o.hi, prec, Round::Up),
        ];
        let hi = cands_up.iter().max().unwrap().clone();
        RInt { lo, hi }
    }

    pub fn mul_pow2(&self, k: i64) -> Self {
        RInt { lo: self.lo.mul_pow2(k), hi: self.hi.mul_pow2(k) }
    }

    pub fn powi(&self, mut n: u32, prec: u64) -> Self {
        let mut acc = RInt::from_i64(1);
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base, prec);
            }
            base = base.mul(&base, prec);
            n >>= 1;
        }
        acc
    }

    /// n-th root of a nonnegative interval.
    pub fn nth_root(&self, n: u32, prec: u64) -> Self {
        RInt {
            lo: self.lo.nth_root(n, prec, Round::Down),
            hi: self.hi.nth_root(n, prec, Round::Up),
        }
    }

    pub fn sqrt(&self, prec: u64) -> Self {
        self.nth_root(2, prec)
    }

    /// True if the interval lies entirely below `r`.
    pub fn certainly_lt(&self, r: &BigRational) -> bool {
        self.hi.to_rational() < *r
    }

    /// True if the interval lies entirely above `r`.
    pub fn certainly_gt(&self, r: &BigRational) -> bool {
        self.lo.to_rational() > *r
    }

    pub fn midpoint(&self) -> BigRational {
        (self.lo.to_rational() + self.hi.to_rational()) / BigRational::from_integer(2.into())
    }

    pub fn to_f64(&self) -> f64 {
        (self.lo.to_f64() + self.hi.to_f64()) / 2.0
    }
}

/// atan(1/x) for integer x >= 2, as an exact-rational bracket from the
/// alternating Leibniz series.
fn atan_inv(x: i64, terms: usize) -> (BigRational, BigRational) {
    let xr = BigRational::from_integer(BigInt::from(x));
    let x2 = &xr * &xr;
    let mut term = BigRational::one() / xr; // 1/x
    let mut sum = BigRational::zero();
    let mut sign = true;
    for k in 0..terms {
        if sign {
            sum += &term / BigRational::from_integer(BigInt::from(2 * k as i64 + 1));
        } else {
            sum -= &term / BigRational::from_integer(BigInt::from(2 * k as i64 + 1));
        }
        term /= &x2;
        sign = !sign;
    }
    // alternating series: remainder bounded by the magnitude of the next term
    let next = &term / BigRational::from_integer(BigInt::from(2 * terms as i64 + 1));
    if sign {
        (sum.clone(), sum + next)
    } else {
        (sum.clone() - next, sum)
    }
}

static PI_CACHE: Lazy<Mutex<HashMap<u64, RInt>>> = Lazy::new(|| Mutex::new(HashMap::new()));

/// pi as a certified interval with `prec` mantissa bits (Machin's formula).
pub fn pi(prec: u64) -> RInt {
    if let Some(v) = PI_CACHE.lock().unwrap().get(&prec) {
        return v.clone();
    }
    // terms so that 5^{-2k} resp. 239^{-2k} < 2^{-prec-8}
    let t5 = (prec + 8) as usize / 4 + 2;
    let t239 = (prec + 8) as usize / 15 + 2;
    let (a5l, a5h) = atan_inv(5, t5);
    let (a239l, a239h) = atan_inv(239, t239);
    let sixteen = BigRational::from_integer(16.into());
    let four = BigRational::from_integer(4.into());
    let lo = &sixteen * &a5l - &four * &a239h;
    let hi = &sixteen * &a5h - &four * &a239l;
    let out = RInt {
        lo: Dyadic::from_rational(&lo, prec, Round::Down),
        hi: Dyadic::from_rational(&hi, prec, Round::Up),
    };
    PI_CACHE.lock().unwrap().insert(prec, out.clone());
    out
}

/// exp(q) for rational q, as a certified interval.
pub fn exp_rational(q: &BigRational, prec: u64) -> RInt {
    if q.is_negative() {
        let inv = exp_rational(&-q.clone(), prec + 8);
        return RInt::from_i64(1).div(&inv, prec);
    }
    // Taylor series at a rational point; q >= 0. Choose K > 2*q so the tail
    // is dominated by a geometric series with ratio <= 1/2.
    let qf = q.to_f64().unwrap_or(64.0);
    assert!(qf < 64.0, "exp argument out of supported range");
    let mut terms = (2.0 * qf) as usize + 8;
    terms += (prec as usize) / 2; // enough extra terms for 2^-prec tails
    let mut term = BigRational::one();
    let mut sum = BigRational::one();
    for k in 1..=terms {
        term = term * q / BigRational::from_integer(BigInt::from(k as i64));
        sum += &term;
    }
    // tail: term_{K+1} * (1 + r + r^2 + ...) with r = q/(K+2) <= 1/2
    let tail = term * q * BigRational::from_integer(2.into())
        / BigRational::from_integer(BigInt::from(terms as i64 + 1));
    let hi = &sum + &tail;
    RInt {
        lo: Dyadic::from_rational(&sum, prec, Round::Down),
        hi: Dyadic::from_rational(&hi, prec, Round::Up),
    }
}
