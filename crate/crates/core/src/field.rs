//! Arithmetic in the prime field `F_q` for an odd prime `q < 2^31`.
//!
//! Elements carry their modulus so that mixing fields is caught. The
//! operator impls panic on a mismatch; the `checked_*` methods return
//! [`Error::FieldMismatch`] instead.

use std::f64::consts::TAU;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Codomain of the additive character and of every character sum.
pub type ComplexScalar = Complex64;

/// Largest supported modulus.
pub const MAX_MODULUS: u64 = 1 << 31;

/// Deterministic Miller-Rabin, valid for every `n < 3_215_031_751`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[inline]
fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// The field `F_q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeField {
    q: u64,
}

impl PrimeField {
    pub fn new(q: u64) -> Result<Self> {
        if !(3..=MAX_MODULUS).contains(&q) || q.is_multiple_of(2) || !is_prime(q) {
            return Err(Error::InvalidModulus(q));
        }
        Ok(Self { q })
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.q
    }

    /// Number of elements as a `usize`, for indexing.
    #[inline]
    pub fn order(&self) -> usize {
        self.q as usize
    }

    /// The residue of `value` modulo `q`.
    #[inline]
    pub fn element(&self, value: u64) -> FieldElement {
        FieldElement {
            value: value % self.q,
            q: self.q,
        }
    }

    pub fn from_i64(&self, value: i64) -> FieldElement {
        self.element(value.rem_euclid(self.q as i64) as u64)
    }

    pub fn zero(&self) -> FieldElement {
        self.element(0)
    }

    pub fn one(&self) -> FieldElement {
        self.element(1)
    }

    /// All elements `0, 1, ..., q-1` in order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q).map(move |v| self.element(v))
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (1..self.q).map(move |v| self.element(v))
    }

    /// `eta(-1)`: `+1` when `q = 1 (mod 4)`, `-1` when `q = 3 (mod 4)`.
    pub fn eta_minus_one(&self) -> i32 {
        if self.q % 4 == 1 {
            1
        } else {
            -1
        }
    }

    /// Table of `chi(sign * k)` for `k = 0..q`, with `sign` = +1 or -1.
    pub fn character_table(&self, sign: i32) -> Vec<ComplexScalar> {
        let q = self.q as f64;
        (0..self.q)
            .map(|k| Complex64::from_polar(1.0, sign as f64 * TAU * k as f64 / q))
            .collect()
    }

    /// Table of `k^2 mod q` for `k = 0..q`.
    pub fn square_table(&self) -> Vec<u64> {
        (0..self.q).map(|k| mul_mod(k, k, self.q)).collect()
    }

    fn check(&self, a: &FieldElement) -> Result<()> {
        if a.q != self.q {
            return Err(Error::FieldMismatch {
                left: self.q,
                right: a.q,
            });
        }
        Ok(())
    }

    /// Returns `Ok` iff `a` is an element of this field.
    pub fn contains(&self, a: &FieldElement) -> Result<()> {
        self.check(a)
    }
}

/// A canonical residue in `[0, q)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    value: u64,
    q: u64,
}

impl FieldElement {
    #[inline]
    pub fn value(&self) -> u64 {
        self.value
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.q
    }

    pub fn field(&self) -> PrimeField {
        PrimeField { q: self.q }
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if self.q != other.q {
            return Err(Error::FieldMismatch {
                left: self.q,
                right: other.q,
            });
        }
        Ok(())
    }

    pub fn checked_add(self, rhs: Self) -> Result<Self> {
        self.same_field(&rhs)?;
        Ok(self + rhs)
    }

    pub fn checked_sub(self, rhs: Self) -> Result<Self> {
        self.same_field(&rhs)?;
        Ok(self - rhs)
    }

    pub fn checked_mul(self, rhs: Self) -> Result<Self> {
        self.same_field(&rhs)?;
        Ok(self * rhs)
    }

    pub fn pow(self, exp: u64) -> Self {
        Self {
            value: pow_mod(self.value, exp, self.q),
            q: self.q,
        }
    }

    /// Multiplicative inverse via Fermat's little theorem.
    pub fn inv(self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroInverse);
        }
        Ok(self.pow(self.q - 2))
    }

    /// The quadratic character (Legendre symbol), by Euler's criterion.
    pub fn legendre(self) -> i32 {
        if self.is_zero() {
            return 0;
        }
        if self.pow((self.q - 1) / 2).value == 1 {
            1
        } else {
            -1
        }
    }

    /// The smaller of the two square roots, if `self` is a square.
    pub fn sqrt(self) -> Option<Self> {
        self.sqrts().into_iter().next()
    }

    /// All square roots in increasing order: `[]`, `[0]`, or `[r, q - r]`.
    pub fn sqrts(self) -> Vec<Self> {
        if self.is_zero() {
            return vec![self];
        }
        if self.legendre() != 1 {
            return Vec::new();
        }
        let r = tonelli_shanks(self.value, self.q);
        let (lo, hi) = if r < self.q - r {
            (r, self.q - r)
        } else {
            (self.q - r, r)
        };
        vec![Self { value: lo, q: self.q }, Self { value: hi, q: self.q }]
    }

    /// The canonical additive character `e^{2 pi i a / q}`.
    pub fn chi(self) -> ComplexScalar {
        Complex64::from_polar(1.0, TAU * self.value as f64 / self.q as f64)
    }

    /// Representative in `(-q/2, q/2]`, handy when reading sumsets.
    pub fn centered(self) -> i64 {
        let v = self.value as i64;
        let q = self.q as i64;
        if v > q / 2 {
            v - q
        } else {
            v
        }
    }
}

/// Square root of a known nonzero quadratic residue `n` modulo the prime `p`.
fn tonelli_shanks(n: u64, p: u64) -> u64 {
    if p % 4 == 3 {
        return pow_mod(n, (p + 1) / 4, p);
    }
    let mut q = p - 1;
    let mut s = 0u32;
    while q.is_multiple_of(2) {
        q /= 2;
        s += 1;
    }
    let mut z = 2;
    while pow_mod(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(n, q, p);
    let mut r = pow_mod(n, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    r
}

/// Free-function form of [`FieldElement::chi`].
pub fn chi(a: FieldElement) -> ComplexScalar {
    a.chi()
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

#[inline]
fn assert_same(a: &FieldElement, b: &FieldElement) {
    assert_eq!(a.q, b.q, "field mismatch");
}

impl Add for FieldElement {
    type Output = Self;
    #[inline]
    fn add(self, rhs: Self) -> Self {
        assert_same(&self, &rhs);
        let s = self.value + rhs.value;
        Self {
            value: if s >= self.q { s - self.q } else { s },
            q: self.q,
        }
    }
}

impl Sub for FieldElement {
    type Output = Self;
    #[inline]
    fn sub(self, rhs: Self) -> Self {
        assert_same(&self, &rhs);
        let value = if self.value >= rhs.value {
            self.value - rhs.value
        } else {
            self.value + self.q - rhs.value
        };
        Self { value, q: self.q }
    }
}

impl Mul for FieldElement {
    type Output = Self;
    #[inline]
    fn mul(self, rhs: Self) -> Self {
        assert_same(&self, &rhs);
        Self {
            value: mul_mod(self.value, rhs.value, self.q),
            q: self.q,
        }
    }
}

impl Neg for FieldElement {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        let value = if self.value == 0 { 0 } else { self.q - self.value };
        Self { value, q: self.q }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn primes_up_to(n: u64) -> Vec<u64> {
        (3..=n).filter(|&k| (2..k).all(|d| k % d != 0)).collect()
    }

    #[test]
    fn rejects_bad_moduli() {
        for q in [0, 1, 2, 4, 9, 15, 91, MAX_MODULUS + 1] {
            assert!(PrimeField::new(q).is_err(), "q = {q}");
        }
        assert!(PrimeField::new(2_147_483_647).is_ok());
    }

    #[test]
    fn primality_matches_trial_division() {
        for n in 0..5000u64 {
            let trial = n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0);
            assert_eq!(is_prime(n), trial, "n = {n}");
        }
        // strong pseudoprimes to small bases
        assert!(!is_prime(25_326_001));
    }

    #[test]
    fn small_arithmetic() {
        let f = PrimeField::new(5).unwrap();
        assert_eq!((f.element(3) + f.element(4)).value(), 2);
        assert_eq!((f.element(2) * f.element(3)).value(), 1);
        for a in f.elements() {
            assert!((a + (-a)).is_zero());
        }
        assert_eq!(f.element(2).inv().unwrap().value(), 3);
        assert_eq!(f.element(4).inv().unwrap().value(), 4);
        assert!(matches!(f.zero().inv(), Err(Error::ZeroInverse)));
    }

    #[test]
    fn inverse_mod_seven_by_scan() {
        let f = PrimeField::new(7).unwrap();
        let scanned = f.elements().find(|&x| (x * f.element(3)).value() == 1).unwrap();
        assert_eq!(scanned.value(), 5);
        assert_eq!(f.element(3).inv().unwrap(), scanned);
    }

    #[test]
    fn mixed_fields_are_rejected() {
        let a = PrimeField::new(5).unwrap().element(1);
        let b = PrimeField::new(7).unwrap().element(1);
        assert!(matches!(a.checked_add(b), Err(Error::FieldMismatch { .. })));
        assert!(a.checked_mul(b).is_err());
        assert!(a.checked_sub(b).is_err());
    }

    #[test]
    #[should_panic(expected = "field mismatch")]
    fn mixed_operator_panics() {
        let a = PrimeField::new(5).unwrap().element(1);
        let b = PrimeField::new(7).unwrap().element(1);
        let _ = a + b;
    }

    #[test]
    fn legendre_and_sqrt_mod_five() {
        let f = PrimeField::new(5).unwrap();
        assert_eq!(f.element(4).legendre(), 1);
        assert_eq!(f.element(2).legendre(), -1);
        assert_eq!(f.zero().legendre(), 0);
        let roots: Vec<u64> = f.element(4).sqrts().iter().map(|r| r.value()).collect();
        assert_eq!(roots, vec![2, 3]);
        assert!(f.element(2).sqrts().is_empty());
        assert_eq!(f.zero().sqrts(), vec![f.zero()]);
    }

    #[test]
    fn chi_values() {
        let f = PrimeField::new(5).unwrap();
        assert_eq!(f.zero().chi(), Complex64::new(1.0, 0.0));
        let s = f.element(1).chi() + f.element(4).chi();
        assert!((s.re - 2.0 * (TAU / 5.0).cos()).abs() < 1e-12);
        assert!(s.im.abs() < 1e-12);
        assert!((s.re - 0.6180339887).abs() < 1e-9);
    }

    #[test]
    fn character_orthogonality() {
        for q in primes_up_to(101) {
            let f = PrimeField::new(q).unwrap();
            for m in f.elements() {
                let s: Complex64 = f.elements().map(|a| (m * a).chi()).sum();
                if m.is_zero() {
                    assert!((s - q as f64).norm() < 1e-9);
                } else {
                    assert!(s.norm() < 1e-9, "q={q} m={m} |sum|={}", s.norm());
                }
            }
        }
    }

    #[test]
    fn legendre_multiplicative_and_square_counts() {
        for q in primes_up_to(101) {
            let f = PrimeField::new(q).unwrap();
            for a in f.nonzero_elements() {
                assert_eq!(a.legendre() * a.inv().unwrap().legendre(), 1);
                for b in f.nonzero_elements() {
                    assert_eq!((a * b).legendre(), a.legendre() * b.legendre());
                }
            }
            let squares = f.nonzero_elements().filter(|a| a.legendre() == 1).count();
            assert_eq!(squares as u64, (q - 1) / 2);
        }
    }

    #[test]
    fn sqrt_agrees_with_legendre() {
        for q in primes_up_to(101) {
            let f = PrimeField::new(q).unwrap();
            for a in f.elements() {
                let roots = a.sqrts();
                assert_eq!(!roots.is_empty(), a.legendre() >= 0);
                for r in roots {
                    assert_eq!(r * r, a);
                }
            }
        }
    }

    #[test]
    fn tonelli_shanks_on_highly_two_adic_prime() {
        // q - 1 = 2^16 * 1
        let f = PrimeField::new(65537).unwrap();
        for v in [2u64, 3, 5, 9, 12345, 65536] {
            let a = f.element(v);
            match a.sqrt() {
                Some(r) => assert_eq!(r * r, a),
                None => assert_eq!(a.legendre(), -1),
            }
        }
    }

    proptest! {
        #[test]
        fn chi_is_additive(a in 0u64..1009, b in 0u64..1009) {
            let f = PrimeField::new(1009).unwrap();
            let (x, y) = (f.element(a), f.element(b));
            prop_assert!(((x + y).chi() - x.chi() * y.chi()).norm() < 1e-9);
        }

        #[test]
        fn field_axioms(a in 0u64..2_147_483_647, b in 0u64..2_147_483_647, c in 0u64..2_147_483_647) {
            let f = PrimeField::new(2_147_483_647).unwrap();
            let (x, y, z) = (f.element(a), f.element(b), f.element(c));
            prop_assert_eq!(x * (y + z), x * y + x * z);
            prop_assert_eq!((x - y) + y, x);
            prop_assert!((x * y).value() < f.modulus());
            if !x.is_zero() {
                prop_assert_eq!(x * x.inv().unwrap(), f.one());
            }
            if let Some(r) = (x * x).sqrt() {
                prop_assert_eq!(r * r, x * x);
            }
        }
    }
}
