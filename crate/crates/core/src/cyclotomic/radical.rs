use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;

use super::cyclo::{join_terms, CycloNumber};

/// A finite sum Σ a_r·√r with a_r ∈ Q(ζ_N) and r squarefree.
///
/// Radicals are kept symbolic. Two values are compared after rewriting every
/// √p that already lies in the ambient cyclotomic field as a cyclotomic
/// number, so that e.g. `√2` and `ζ8 + ζ8⁻¹` compare equal.
#[derive(Clone, Debug, Default)]
pub struct RadicalValue {
    terms: BTreeMap<u64, CycloNumber>,
}

pub fn prime_factors(mut m: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= m {
        let mut e = 0;
        while m.is_multiple_of(p) {
            m /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if m > 1 {
        out.push((m, 1));
    }
    out
}

/// Splits m = s²·r with r squarefree; returns (s, r).
pub fn square_split(m: u64) -> (u64, u64) {
    let (mut s, mut r) = (1, 1);
    for (p, e) in prime_factors(m) {
        s *= p.pow(e / 2);
        if e % 2 == 1 {
            r *= p;
        }
    }
    (s, r)
}

fn legendre(a: u64, p: u64) -> i64 {
    let mut r = 1u64;
    let mut base = a % p;
    let mut e = (p - 1) / 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    if r == 1 {
        1
    } else if r == 0 {
        0
    } else {
        -1
    }
}

/// √p for a prime p as an element of a cyclotomic field: the quadratic Gauss
/// sum for odd p (times -i when p ≡ 3 mod 4), and ζ8 + ζ8⁻¹ for p = 2.
pub fn sqrt_prime_cyclo(p: u64) -> CycloNumber {
    if p == 2 {
        return &CycloNumber::zeta_power(8, 1) + &CycloNumber::zeta_power(8, -1);
    }
    let n = p as u32;
    let mut g = CycloNumber::zero(n);
    for a in 1..p {
        let term = CycloNumber::zeta_power(n, a as i64);
        g = if legendre(a, p) == 1 { &g + &term } else { &g - &term };
    }
    if p % 4 == 1 {
        g
    } else {
        -&(&g * &CycloNumber::i(n))
    }
}

fn folds_into(p: u64, m: u32) -> bool {
    if p == 2 {
        m.is_multiple_of(8)
    } else {
        (m as u64).is_multiple_of(p)
    }
}

impl RadicalValue {
    pub fn zero() -> Self {
        RadicalValue::default()
    }

    pub fn one() -> Self {
        Self::from_cyclo(CycloNumber::one(1))
    }

    pub fn from_cyclo(c: CycloNumber) -> Self {
        Self::term(1, c)
    }

    pub fn integer(k: i64) -> Self {
        Self::from_cyclo(CycloNumber::integer(1, k))
    }

    pub fn rational(q: BigRational) -> Self {
        Self::from_cyclo(CycloNumber::rational(1, q))
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self::from_cyclo(CycloNumber::i(4))
    }

    /// i^k.
    pub fn i_pow(k: u64) -> Self {
        Self::from_cyclo(CycloNumber::zeta_power(4, (k % 4) as i64))
    }

    /// c·√m, normalized so the radicand is squarefree.
    pub fn term(m: u64, c: CycloNumber) -> Self {
        assert!(m >= 1, "radicand must be positive");
        let (s, r) = square_split(m);
        let c = c.scale(&BigRational::from_integer(BigInt::from(s)));
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(r, c);
        }
        RadicalValue { terms }
    }

    /// √m, nonnegative branch.
    pub fn sqrt(m: u64) -> Self {
        Self::term(m, CycloNumber::one(1))
    }

    /// √(m/2) = (1/2)·√(2m).
    pub fn sqrt_half_product(m: u64) -> Self {
        let half = BigRational::new(1.into(), 2.into());
        Self::term(2 * m, CycloNumber::rational(1, half))
    }

    /// Terms keyed by squarefree radicand.
    pub fn terms(&self) -> &BTreeMap<u64, CycloNumber> {
        &self.terms
    }

    fn insert_add(&mut self, r: u64, c: CycloNumber) {
        let sum = match self.terms.remove(&r) {
            Some(prev) => &prev + &c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(r, sum);
        }
    }

    pub fn conj(&self) -> Self {
        RadicalValue { terms: self.terms.iter().map(|(&r, c)| (r, c.conj())).collect() }
    }

    pub fn scale(&self, c: &CycloNumber) -> Self {
        let mut out = RadicalValue::zero();
        for (&r, a) in &self.terms {
            out.insert_add(r, a * c);
        }
        out
    }

    pub fn scale_rational(&self, q: &BigRational) -> Self {
        let mut out = RadicalValue::zero();
        for (&r, a) in &self.terms {
            out.insert_add(r, a.scale(q));
        }
        out
    }

    pub fn scale_int(&self, k: &BigInt) -> Self {
        self.scale_rational(&BigRational::from_integer(k.clone()))
    }

    fn ambient_conductor(&self) -> u32 {
        self.terms.values().fold(4, |m, c| m.lcm(&c.conductor()))
    }

    /// Rewrites every √p lying in the ambient field Q(ζ_M) as a cyclotomic
    /// number. What remains has linearly independent radicals over Q(ζ_M).
    pub fn folded(&self) -> Self {
        let m = self.ambient_conductor();
        let mut out = RadicalValue::zero();
        for (&r, c) in &self.terms {
            let mut rest = 1;
            let mut coeff = c.clone();
            for (p, _) in prime_factors(r) {
                if folds_into(p, m) {
                    coeff = &coeff * &sqrt_prime_cyclo(p);
                } else {
                    rest *= p;
                }
            }
            out.insert_add(rest, coeff);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() || self.folded().terms.is_empty()
    }

    /// The value as a cyclotomic number, if no irrational radical survives folding.
    pub fn as_cyclo(&self) -> Option<CycloNumber> {
        let f = self.folded();
        match f.terms.len() {
            0 => Some(CycloNumber::zero(1)),
            1 => f.terms.get(&1).cloned(),
            _ => None,
        }
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        self.as_cyclo()?.as_rational()
    }

    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational().filter(BigRational::is_integer).map(|q| q.to_integer())
    }

    pub fn to_complex(&self) -> Complex64 {
        self.terms.iter().map(|(&r, c)| c.to_complex() * (r as f64).sqrt()).sum()
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = RadicalValue::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl From<CycloNumber> for RadicalValue {
    fn from(c: CycloNumber) -> Self {
        RadicalValue::from_cyclo(c)
    }
}

impl PartialEq for RadicalValue {
    fn eq(&self, other: &Self) -> bool {
        (self - other).is_zero()
    }
}

impl Eq for RadicalValue {}

impl Add for &RadicalValue {
    type Output = RadicalValue;

    fn add(self, rhs: &RadicalValue) -> RadicalValue {
        let mut out = self.clone();
        for (&r, c) in &rhs.terms {
            out.insert_add(r, c.clone());
        }
        out
    }
}

impl Sub for &RadicalValue {
    type Output = RadicalValue;

    fn sub(self, rhs: &RadicalValue) -> RadicalValue {
        self + &(-rhs)
    }
}

impl Neg for &RadicalValue {
    type Output = RadicalValue;

    fn neg(self) -> RadicalValue {
        RadicalValue { terms: self.terms.iter().map(|(&r, c)| (r, -c)).collect() }
    }
}

impl Mul for &RadicalValue {
    type Output = RadicalValue;

    fn mul(self, rhs: &RadicalValue) -> RadicalValue {
        let mut out = RadicalValue::zero();
        for (&r, a) in &self.terms {
            for (&s, b) in &rhs.terms {
                let g = r.gcd(&s);
                let c = (a * b).scale(&BigRational::from_integer(BigInt::from(g)));
                out.insert_add((r / g) * (s / g), c);
            }
        }
        out
    }
}

impl std::iter::Sum for RadicalValue {
    fn sum<I: Iterator<Item = RadicalValue>>(iter: I) -> Self {
        iter.fold(RadicalValue::zero(), |acc, x| &acc + &x)
    }
}

/// `coef*sqrt(r)` with sign pulled out.
fn fmt_radical_term(r: u64, c: &CycloNumber) -> (bool, String) {
    let s = c.to_string();
    if r == 1 {
        return match s.strip_prefix('-') {
            Some(rest) if !rest.contains(' ') => (true, rest.to_string()),
            _ => (false, s),
        };
    }
    let root = format!("sqrt({r})");
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) if !rest.contains(' ') => (true, rest.to_string()),
        _ => (false, s),
    };
    let text = if body == "1" {
        root
    } else if body.contains(' ') || body.contains('/') {
        format!("({body})*{root}")
    } else {
        format!("{body}*{root}")
    };
    (neg, text)
}

impl fmt::Display for RadicalValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<_> = self.terms.iter().map(|(&r, c)| fmt_radical_term(r, c)).collect();
        f.write_str(&join_terms(&terms))
    }
}
