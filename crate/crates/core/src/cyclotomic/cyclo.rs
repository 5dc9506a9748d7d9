use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// An element of Q(ζ_N), stored as a polynomial in ζ_N of degree below φ(N),
/// i.e. reduced modulo the N-th cyclotomic polynomial. The representation at
/// a fixed conductor is unique.
#[derive(Clone, Debug)]
pub struct CycloNumber {
    conductor: u32,
    coeffs: Vec<BigRational>,
}

fn cache() -> &'static Mutex<HashMap<u32, Arc<Vec<i64>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Coefficients of Φ_n, lowest degree first. Monic.
pub fn cyclotomic_polynomial(n: u32) -> Arc<Vec<i64>> {
    assert!(n >= 1);
    if let Some(p) = cache().lock().unwrap().get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by Φ_d for every proper divisor d
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            num = exact_divide(&num, &cyclotomic_polynomial(d));
        }
    }
    let p = Arc::new(num);
    cache().lock().unwrap().insert(n, p.clone());
    p
}

fn exact_divide(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut quot = vec![0i64; rem.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd];
        quot[k] = c;
        for (j, &d) in den.iter().enumerate() {
            rem[k + j] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

pub fn euler_phi(n: u32) -> u32 {
    (cyclotomic_polynomial(n).len() - 1) as u32
}

fn reduce(mut dense: Vec<BigRational>, conductor: u32) -> Vec<BigRational> {
    let phi = cyclotomic_polynomial(conductor);
    let deg = phi.len() - 1;
    for top in (deg..dense.len()).rev() {
        let c = std::mem::take(&mut dense[top]);
        if c.is_zero() {
            continue;
        }
        for (j, &pj) in phi.iter().enumerate().take(deg) {
            if pj != 0 {
                dense[top - deg + j] -= &c * BigInt::from(pj);
            }
        }
    }
    dense.resize(deg, BigRational::zero());
    dense
}

impl CycloNumber {
    pub fn zero(conductor: u32) -> Self {
        assert!(conductor >= 1, "conductor must be positive");
        CycloNumber { conductor, coeffs: vec![BigRational::zero(); euler_phi(conductor) as usize] }
    }

    pub fn one(conductor: u32) -> Self {
        Self::rational(conductor, BigRational::one())
    }

    pub fn rational(conductor: u32, q: BigRational) -> Self {
        let mut x = Self::zero(conductor);
        x.coeffs[0] = q;
        x
    }

    pub fn integer(conductor: u32, k: i64) -> Self {
        Self::rational(conductor, BigRational::from_integer(k.into()))
    }

    /// ζ_N^k for any integer k.
    pub fn zeta_power(conductor: u32, k: i64) -> Self {
        let e = k.rem_euclid(conductor as i64) as usize;
        let mut dense = vec![BigRational::zero(); e + 1];
        dense[e] = BigRational::one();
        CycloNumber { conductor, coeffs: reduce(dense, conductor) }
    }

    /// The imaginary unit, in conductor lcm(N, 4).
    pub fn i(conductor: u32) -> Self {
        let n = conductor.lcm(&4);
        Self::zeta_power(n, (n / 4) as i64)
    }

    /// Builds Σ c·ζ_N^k from (exponent, numerator, denominator) triples.
    pub fn from_terms(conductor: u32, terms: &[(i64, BigInt, BigInt)]) -> Result<Self> {
        if conductor == 0 {
            return Err(Error::MalformedGroup("conductor must be positive".into()));
        }
        let mut dense = vec![BigRational::zero(); conductor as usize];
        for (k, num, den) in terms {
            if den.is_zero() {
                return Err(Error::MalformedGroup("zero denominator".into()));
            }
            let e = k.rem_euclid(conductor as i64) as usize;
            dense[e] += BigRational::new(num.clone(), den.clone());
        }
        Ok(CycloNumber { conductor, coeffs: reduce(dense, conductor) })
    }

    /// Canonical (exponent, numerator, denominator) triples, zero terms omitted.
    pub fn to_terms(&self) -> Vec<(i64, BigInt, BigInt)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k as i64, c.numer().clone(), c.denom().clone()))
            .collect()
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// Coefficients on ζ_N^0 .. ζ_N^{φ(N)-1}.
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|q| q.is_one())
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        self.coeffs[1..].iter().all(Zero::is_zero).then(|| self.coeffs[0].clone())
    }

    /// Re-expresses the number in Q(ζ_M) for a multiple M of the conductor.
    pub fn lift(&self, m: u32) -> Self {
        assert!(m.is_multiple_of(self.conductor), "conductor {} does not divide {m}", self.conductor);
        if m == self.conductor {
            return self.clone();
        }
        let step = (m / self.conductor) as usize;
        let mut dense = vec![BigRational::zero(); m as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            dense[k * step] = c.clone();
        }
        CycloNumber { conductor: m, coeffs: reduce(dense, m) }
    }

    fn common(&self, other: &Self) -> (Self, Self) {
        let m = self.conductor.lcm(&other.conductor);
        (self.lift(m), other.lift(m))
    }

    /// The Galois automorphism ζ ↦ ζ^k, for k coprime to the conductor.
    pub fn galois(&self, k: i64) -> Self {
        let n = self.conductor as i64;
        debug_assert_eq!(k.rem_euclid(n).gcd(&n), 1);
        let mut dense = vec![BigRational::zero(); n as usize];
        for (e, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                dense[(e as i64 * k).rem_euclid(n) as usize] += c;
            }
        }
        CycloNumber { conductor: self.conductor, coeffs: reduce(dense, self.conductor) }
    }

    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    pub fn is_real(&self) -> bool {
        *self == self.conj()
    }

    /// Writes the number as a + b·i with rational a, b when it lies in Q(i).
    pub fn as_gaussian(&self) -> Option<(BigRational, BigRational)> {
        let n = self.conductor.lcm(&4);
        let x = self.lift(n);
        for k in 1..n as i64 {
            if k % 4 == 1 && k.gcd(&(n as i64)) == 1 && x.galois(k) != x {
                return None;
            }
        }
        let c = x.conj();
        let two = BigRational::from_integer(2.into());
        let re = (&x + &c).as_rational()? / &two;
        let im_i = &x - &c;
        // (x - conj x) / 2i = -i (x - conj x) / 2
        let im = (&im_i * &CycloNumber::i(n)).neg().as_rational()? / two;
        Some((re, im))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = CycloNumber::one(self.conductor);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        CycloNumber { conductor: self.conductor, coeffs: self.coeffs.iter().map(|c| c * q).collect() }
    }

    pub fn to_complex(&self) -> Complex64 {
        let n = self.conductor as f64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                let theta = std::f64::consts::TAU * k as f64 / n;
                Complex64::from_polar(c.to_f64().unwrap_or(f64::NAN), theta)
            })
            .sum()
    }
}

impl PartialEq for CycloNumber {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = self.common(other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CycloNumber {}

impl Add for &CycloNumber {
    type Output = CycloNumber;

    fn add(self, rhs: &CycloNumber) -> CycloNumber {
        if self.conductor != rhs.conductor {
            let (a, b) = self.common(rhs);
            return &a + &b;
        }
        CycloNumber {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &CycloNumber {
    type Output = CycloNumber;

    fn sub(self, rhs: &CycloNumber) -> CycloNumber {
        self + &(-rhs)
    }
}

impl Neg for &CycloNumber {
    type Output = CycloNumber;

    fn neg(self) -> CycloNumber {
        CycloNumber { conductor: self.conductor, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for CycloNumber {
    type Output = CycloNumber;

    fn neg(self) -> CycloNumber {
        -&self
    }
}

impl Mul for &CycloNumber {
    type Output = CycloNumber;

    fn mul(self, rhs: &CycloNumber) -> CycloNumber {
        if self.conductor != rhs.conductor {
            let (a, b) = self.common(rhs);
            return &a * &b;
        }
        let len = self.coeffs.len();
        let mut dense = vec![BigRational::zero(); (2 * len).saturating_sub(1).max(1)];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    dense[i + j] += a * b;
                }
            }
        }
        CycloNumber { conductor: self.conductor, coeffs: reduce(dense, self.conductor) }
    }
}

impl AddAssign<&CycloNumber> for CycloNumber {
    fn add_assign(&mut self, rhs: &CycloNumber) {
        *self = &*self + rhs;
    }
}

impl MulAssign<&CycloNumber> for CycloNumber {
    fn mul_assign(&mut self, rhs: &CycloNumber) {
        *self = &*self * rhs;
    }
}

fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// `c*sym` with unit coefficients folded and fractions parenthesized.
/// The sign is returned separately so callers can join with " + " / " - ".
fn fmt_term(q: &BigRational, sym: &str) -> (bool, String) {
    let neg = q.is_negative();
    let a = q.abs();
    let body = if sym.is_empty() {
        fmt_rational(&a)
    } else if a.is_one() {
        sym.to_string()
    } else if a.is_integer() {
        format!("{}*{sym}", a.numer())
    } else {
        format!("({})*{sym}", fmt_rational(&a))
    };
    (neg, body)
}

pub(crate) fn join_terms(terms: &[(bool, String)]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (idx, (neg, body)) in terms.iter().enumerate() {
        match (idx, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(body);
    }
    out
}

impl fmt::Display for CycloNumber {
    /// Gaussian rationals print as `a + b*i`; anything else as a sum of
    /// `c*zetaN^k` terms.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some((re, im)) = self.as_gaussian() {
            let mut terms = Vec::new();
            if !re.is_zero() {
                terms.push(fmt_term(&re, ""));
            }
            if !im.is_zero() {
                terms.push(fmt_term(&im, "i"));
            }
            return f.write_str(&join_terms(&terms));
        }
        let terms: Vec<_> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => fmt_term(c, ""),
                1 => fmt_term(c, &format!("zeta{}", self.conductor)),
                _ => fmt_term(c, &format!("zeta{}^{k}", self.conductor)),
            })
            .collect();
        f.write_str(&join_terms(&terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(euler_phi(24), 8);
    }

    #[test]
    fn basic_identities() {
        let i = CycloNumber::zeta_power(4, 1);
        assert_eq!(&i * &i, CycloNumber::integer(4, -1));
        assert_eq!(CycloNumber::zeta_power(3, 1).conj(), CycloNumber::zeta_power(3, 2));
        let s = &CycloNumber::zeta_power(8, 1) + &CycloNumber::zeta_power(8, -1);
        assert_eq!(&s * &s, CycloNumber::integer(8, 2));
    }

    #[test]
    fn mixed_conductors_lift() {
        let w = CycloNumber::zeta_power(3, 1);
        let i = CycloNumber::zeta_power(4, 1);
        let p = &w * &i;
        assert_eq!(p.conductor(), 12);
        assert_eq!(p, CycloNumber::zeta_power(12, 7));
        assert_eq!(CycloNumber::integer(1, 5), CycloNumber::integer(8, 5));
    }

    #[test]
    fn complex_values() {
        let w = CycloNumber::zeta_power(3, 1).to_complex();
        assert!((w.re + 0.5).abs() < 1e-12 && (w.im - 0.8660254037844386).abs() < 1e-12);
        let i = CycloNumber::i(1).to_complex();
        assert!(i.re.abs() < 1e-15 && (i.im - 1.0).abs() < 1e-15);
    }

    #[test]
    fn gaussian_form_and_display() {
        let i = CycloNumber::i(12);
        assert_eq!(i.as_gaussian(), Some((q(0, 1), q(1, 1))));
        assert_eq!(i.to_string(), "i");
        assert_eq!((-&i).to_string(), "-i");
        assert_eq!(CycloNumber::integer(4, 2).to_string(), "2");
        let x = &CycloNumber::rational(4, q(1, 2)) + &i.scale(&q(-3, 2));
        assert_eq!(x.to_string(), "1/2 - (3/2)*i");
        assert_eq!(CycloNumber::zero(3).to_string(), "0");
        let w = CycloNumber::zeta_power(3, 1);
        assert_eq!(w.as_gaussian(), None);
        assert_eq!(w.to_string(), "zeta3");
        assert_eq!(CycloNumber::zeta_power(3, 2).to_string(), "-1 - zeta3");
    }

    #[test]
    fn term_round_trip() {
        let w = CycloNumber::zeta_power(12, 5);
        let back = CycloNumber::from_terms(12, &w.to_terms()).unwrap();
        assert_eq!(w, back);
        assert!(CycloNumber::from_terms(4, &[(0, 1.into(), 0.into())]).is_err());
    }

    fn arb_cyclo(n: u32) -> impl Strategy<Value = CycloNumber> {
        prop::collection::vec((-5i64..=5, 1i64..=4), n as usize).prop_map(move |cs| {
            let terms: Vec<_> = cs.into_iter().enumerate().map(|(k, (a, b))| (k as i64, a.into(), b.into())).collect();
            CycloNumber::from_terms(n, &terms).unwrap()
        })
    }

    fn arb_triple() -> impl Strategy<Value = (CycloNumber, CycloNumber, CycloNumber)> {
        prop_oneof![Just(4u32), Just(8), Just(12), Just(24)]
            .prop_flat_map(|n| (arb_cyclo(n), arb_cyclo(n), arb_cyclo(n)))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn ring_axioms((a, b, c) in arb_triple()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
        }

        #[test]
        fn conj_is_involution_and_norm_nonnegative((a, b, _) in arb_triple()) {
            prop_assert_eq!(a.conj().conj(), a.clone());
            let norm = (&a * &a.conj()).to_complex();
            prop_assert!(norm.re >= -1e-9 && norm.im.abs() < 1e-9);
            prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        }

        #[test]
        fn to_complex_is_homomorphism((a, b, _) in arb_triple()) {
            let (x, y) = (a.to_complex(), b.to_complex());
            prop_assert!(((&a * &b).to_complex() - x * y).norm() < 1e-9 * (1.0 + (x * y).norm()));
            prop_assert!(((&a + &b).to_complex() - (x + y)).norm() < 1e-12 * (1.0 + (x + y).norm()));
        }
    }
}
