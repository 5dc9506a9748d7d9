use std::collections::HashMap;
use std::ops::{Add, Mul, Neg};

use num_rational::Rational64;
use num_traits::{One, Zero};

/// a + b√2 with rational a, b.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct QSqrt2 {
    pub a: Rational64,
    pub b: Rational64,
}

impl QSqrt2 {
    pub fn rational(a: Rational64) -> Self {
        QSqrt2 { a, b: Rational64::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// 1/√2 = √2/2.
    pub fn inv_sqrt2() -> Self {
        QSqrt2 { a: Rational64::zero(), b: Rational64::new(1, 2) }
    }
}

impl Add for QSqrt2 {
    type Output = QSqrt2;

    fn add(self, o: QSqrt2) -> QSqrt2 {
        QSqrt2 { a: self.a + o.a, b: self.b + o.b }
    }
}

impl Mul for QSqrt2 {
    type Output = QSqrt2;

    fn mul(self, o: QSqrt2) -> QSqrt2 {
        QSqrt2 { a: self.a * o.a + Rational64::from_integer(2) * self.b * o.b, b: self.a * o.b + self.b * o.a }
    }
}

impl Neg for QSqrt2 {
    type Output = QSqrt2;

    fn neg(self) -> QSqrt2 {
        QSqrt2 { a: -self.a, b: -self.b }
    }
}

/// Dense element of the Clifford algebra on e_0..e_{n-1} with e_i² = -1 and
/// e_i e_j = -e_j e_i. Blades are bitmasks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliffordElement {
    pub n: usize,
    pub coeffs: Vec<QSqrt2>,
}

/// Sign of e_A · e_B relative to e_{A xor B}.
pub fn blade_sign(a: usize, b: usize) -> i32 {
    let mut swaps = 0u32;
    let mut rest = a >> 1;
    while rest != 0 {
        swaps += (rest & b).count_ones();
        rest >>= 1;
    }
    // each shared generator squares to -1
    swaps += (a & b).count_ones();
    if swaps.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

impl CliffordElement {
    pub fn zero(n: usize) -> Self {
        CliffordElement { n, coeffs: vec![QSqrt2::default(); 1 << n] }
    }

    pub fn scalar(n: usize, c: QSqrt2) -> Self {
        let mut x = Self::zero(n);
        x.coeffs[0] = c;
        x
    }

    pub fn one(n: usize) -> Self {
        Self::scalar(n, QSqrt2::rational(Rational64::one()))
    }

    pub fn generator(n: usize, i: usize) -> Self {
        let mut x = Self::zero(n);
        x.coeffs[1 << i] = QSqrt2::rational(Rational64::one());
        x
    }

    /// τ_i = (e_i - e_{i+1}) / √2, the image of t_i.
    pub fn tau(n: usize, i: usize) -> Self {
        let mut x = Self::zero(n);
        x.coeffs[1 << i] = QSqrt2::inv_sqrt2();
        x.coeffs[1 << (i + 1)] = -QSqrt2::inv_sqrt2();
        x
    }

    pub fn neg(&self) -> Self {
        CliffordElement { n: self.n, coeffs: self.coeffs.iter().map(|&c| -c).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.n);
        for (a, &x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (b, &y) in other.coeffs.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let p = x * y;
                let c = &mut out.coeffs[a ^ b];
                *c = *c + if blade_sign(a, b) > 0 { p } else { -p };
            }
        }
        out
    }

    /// Coefficient of one blade in self·other, without forming the product.
    pub fn product_coeff(&self, other: &Self, blade: usize) -> QSqrt2 {
        let mut acc = QSqrt2::default();
        for (a, &x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let b = a ^ blade;
            let y = other.coeffs[b];
            if y.is_zero() {
                continue;
            }
            let p = x * y;
            acc = acc + if blade_sign(a, b) > 0 { p } else { -p };
        }
        acc
    }
}

/// Canonical Clifford lifts τ_w of permutations: τ_w = τ_{w s_i} τ_i with i
/// the smallest right descent of w. Memoized.
pub struct SpinLifts {
    n: usize,
    memo: HashMap<Vec<u8>, CliffordElement>,
    signs: HashMap<(Vec<u8>, Vec<u8>), i8>,
}

/// (w1 w2)(i) = w1(w2(i)).
pub fn compose(w1: &[u8], w2: &[u8]) -> Vec<u8> {
    w2.iter().map(|&j| w1[j as usize]).collect()
}

impl SpinLifts {
    pub fn new(n: usize) -> Self {
        SpinLifts { n, memo: HashMap::new(), signs: HashMap::new() }
    }

    pub fn lift(&mut self, w: &[u8]) -> CliffordElement {
        if let Some(x) = self.memo.get(w) {
            return x.clone();
        }
        let x = match (0..self.n.saturating_sub(1)).find(|&i| w[i] > w[i + 1]) {
            None => CliffordElement::one(self.n),
            Some(i) => {
                let mut shorter = w.to_vec();
                shorter.swap(i, i + 1);
                self.lift(&shorter).mul(&CliffordElement::tau(self.n, i))
            }
        };
        self.memo.insert(w.to_vec(), x.clone());
        x
    }

    /// ε with τ_{w1} τ_{w2} = ε τ_{w1 w2}.
    pub fn lift_sign(&mut self, w1: &[u8], w2: &[u8]) -> i8 {
        let key = (w1.to_vec(), w2.to_vec());
        if let Some(&s) = self.signs.get(&key) {
            return s;
        }
        let prod = compose(w1, w2);
        let target = self.lift(&prod);
        let blade = target.coeffs.iter().position(|c| !c.is_zero()).expect("lifts are units");
        let got = self.lift(w1).product_coeff(&self.lift(w2), blade);
        let s = if got == target.coeffs[blade] {
            1
        } else if got == -target.coeffs[blade] {
            -1
        } else {
            panic!("Clifford lift product is not ± the lift of the product");
        };
        self.signs.insert(key, s);
        s
    }
}
