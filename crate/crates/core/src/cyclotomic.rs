//! Exact arithmetic in cyclotomic fields `Q(ζ_n)`.
//!
//! A [`Cyclo`] stores its conductor `n` together with rational coordinates in
//! the power basis `1, ζ, …, ζ^{φ(n)-1}` of `Q(ζ_n)` with `ζ = exp(2πi/n)`.
//! Values reduced modulo the cyclotomic polynomial `Φ_n` are canonical, so
//! equality of two numbers is coefficientwise after lifting both to the lcm
//! of their conductors.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::rc::Rc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// Reduction data for one conductor: `powers[k]` expresses `ζ^k` (for
/// `0 <= k < n`) in the power basis of length `φ(n)`.
struct FieldData {
    phi: usize,
    powers: Vec<Vec<i64>>,
}

thread_local! {
    static FIELDS: RefCell<HashMap<u32, Rc<FieldData>>> = RefCell::new(HashMap::new());
    static CYCLOTOMIC_POLYS: RefCell<HashMap<u32, Rc<Vec<i64>>>> = RefCell::new(HashMap::new());
}

/// Integer coefficients of `Φ_n`, lowest degree first.
pub fn cyclotomic_polynomial(n: u32) -> Rc<Vec<i64>> {
    assert!(n >= 1, "cyclotomic polynomial of order 0");
    if let Some(p) = CYCLOTOMIC_POLYS.with(|c| c.borrow().get(&n).cloned()) {
        return p;
    }
    // x^n - 1 divided by Φ_d for every proper divisor d of n.
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            let den = cyclotomic_polynomial(d);
            num = divide_monic(&num, &den);
        }
    }
    let poly = Rc::new(num);
    CYCLOTOMIC_POLYS.with(|c| c.borrow_mut().insert(n, poly.clone()));
    poly
}

fn divide_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut quot = vec![0i64; qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dn];
        quot[i] = c;
        if c != 0 {
            for (j, &d) in den.iter().enumerate() {
                rem[i + j] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0), "inexact cyclotomic division");
    quot
}

fn field(n: u32) -> Rc<FieldData> {
    if let Some(f) = FIELDS.with(|c| c.borrow().get(&n).cloned()) {
        return f;
    }
    let poly = cyclotomic_polynomial(n);
    let phi = poly.len() - 1;
    let mut powers = Vec::with_capacity(n as usize);
    let mut cur = vec![0i64; phi];
    cur[0] = 1;
    for _ in 0..n {
        powers.push(cur.clone());
        // multiply by x and reduce the overflow term with the monic Φ_n
        let top = cur[phi - 1];
        let mut next = vec![0i64; phi];
        next[1..phi].copy_from_slice(&cur[..(phi - 1)]);
        if top != 0 {
            for j in 0..phi {
                next[j] = next[j]
                    .checked_sub(top.checked_mul(poly[j]).expect("cyclotomic overflow"))
                    .expect("cyclotomic overflow");
            }
        }
        cur = next;
    }
    let data = Rc::new(FieldData { phi, powers });
    FIELDS.with(|c| c.borrow_mut().insert(n, data.clone()));
    data
}

/// Euler's totient, via the degree of `Φ_n`.
pub fn totient(n: u32) -> usize {
    field(n).phi
}

/// An exact element of a cyclotomic field.
#[derive(Clone)]
pub struct Cyclo {
    order: u32,
    coeffs: Vec<BigRational>,
}

impl Cyclo {
    pub fn zero() -> Self {
        Cyclo { order: 1, coeffs: vec![BigRational::zero()] }
    }

    pub fn one() -> Self {
        Cyclo::from_integer(1)
    }

    pub fn from_integer(v: i64) -> Self {
        Cyclo { order: 1, coeffs: vec![BigRational::from_integer(BigInt::from(v))] }
    }

    pub fn from_rational(v: BigRational) -> Self {
        Cyclo { order: 1, coeffs: vec![v] }
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Cyclo::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// `ζ_n^k`.
    pub fn root_of_unity(n: u32, k: i64) -> Self {
        let k = k.rem_euclid(n as i64) as usize;
        let mut raw = vec![BigRational::zero(); n as usize];
        raw[k] = BigRational::one();
        Cyclo::reduce_raw(n, &raw)
    }

    /// Builds `Σ_k raw[k] ζ_n^k` from an unreduced coefficient vector of length `n`.
    pub fn from_raw(n: u32, raw: &[BigRational]) -> Self {
        assert_eq!(raw.len(), n as usize);
        Cyclo::reduce_raw(n, raw)
    }

    /// Sum of `count_s · ζ_n^s` with integer multiplicities.
    pub fn from_root_multiplicities(n: u32, counts: &[i64]) -> Self {
        let raw: Vec<BigRational> = counts.iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect();
        Cyclo::reduce_raw(n, &raw)
    }

    fn reduce_raw(n: u32, raw: &[BigRational]) -> Self {
        let f = field(n);
        let mut coeffs = vec![BigRational::zero(); f.phi];
        for (k, c) in raw.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, &r) in f.powers[k].iter().enumerate() {
                if r != 0 {
                    coeffs[j] += c * BigRational::from_integer(BigInt::from(r));
                }
            }
        }
        Cyclo { order: n, coeffs }.normalized()
    }

    fn normalized(mut self) -> Self {
        if self.order != 1 && self.coeffs[1..].iter().all(Zero::is_zero) {
            self.coeffs.truncate(1);
            self.order = 1;
        }
        self
    }

    /// Conductor of the field the value is currently expressed in.
    pub fn order(&self) -> u32 {
        self.order
    }

    /// Coordinates in the power basis of `Q(ζ_m)`; `m` must be a multiple of the current order.
    pub fn coords_in(&self, m: u32) -> Vec<BigRational> {
        assert!(m.is_multiple_of(self.order), "cannot express Q(ζ_{}) inside Q(ζ_{m})", self.order);
        if m == self.order {
            return self.coeffs.clone();
        }
        let step = (m / self.order) as usize;
        let mut raw = vec![BigRational::zero(); m as usize];
        for (j, c) in self.coeffs.iter().enumerate() {
            raw[j * step] = c.clone();
        }
        let f = field(m);
        let mut coeffs = vec![BigRational::zero(); f.phi];
        for (k, c) in raw.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, &r) in f.powers[k].iter().enumerate() {
                if r != 0 {
                    coeffs[j] += c * BigRational::from_integer(BigInt::from(r));
                }
            }
        }
        coeffs
    }

    fn lifted(&self, m: u32) -> Vec<BigRational> {
        if m == self.order {
            self.coeffs.clone()
        } else if self.order == 1 {
            let mut v = vec![BigRational::zero(); totient(m)];
            v[0] = self.coeffs[0].clone();
            v
        } else {
            self.coords_in(m)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.order == 1
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        self.is_rational().then(|| self.coeffs[0].clone())
    }

    /// The value as an integer, if it is one.
    pub fn to_integer(&self) -> Option<BigInt> {
        self.to_rational().filter(|r| r.is_integer()).map(|r| r.to_integer())
    }

    pub fn to_i64(&self) -> Option<i64> {
        self.to_integer().and_then(|v| v.to_i64())
    }

    /// Whether the value lies in `Z[ζ_n]`, i.e. is an algebraic integer.
    pub fn is_algebraic_integer(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Complex conjugate, `ζ ↦ ζ^{-1}`.
    pub fn conj(&self) -> Self {
        if self.order <= 2 {
            return self.clone();
        }
        let n = self.order as usize;
        let mut raw = vec![BigRational::zero(); n];
        for (j, c) in self.coeffs.iter().enumerate() {
            raw[(n - j) % n] = c.clone();
        }
        Cyclo::reduce_raw(self.order, &raw)
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Cyclo { order: self.order, coeffs: self.coeffs.iter().map(|c| c * r).collect() }.normalized()
    }

    pub fn to_c64(&self) -> Complex64 {
        let n = self.order as f64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| {
                let theta = std::f64::consts::TAU * j as f64 / n;
                Complex64::from_polar(rational_to_f64(c), theta)
            })
            .sum()
    }

    /// Renders the value as `c0+c1*z^1+…` where `z` is a primitive `m`-th root of unity.
    pub fn to_string_in(&self, m: u32) -> String {
        let coords = self.lifted(m);
        let mut terms = Vec::new();
        for (j, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if j == 0 {
                terms.push(c.to_string());
            } else {
                terms.push(format!("{c}*z^{j}"));
            }
        }
        if terms.is_empty() {
            return "0".to_string();
        }
        terms.join("+").replace("+-", "-")
    }

    fn combine(&self, rhs: &Cyclo, op: impl Fn(&BigRational, &BigRational) -> BigRational) -> Self {
        let m = self.order.lcm(&rhs.order);
        let a = self.lifted(m);
        let b = rhs.lifted(m);
        Cyclo { order: m, coeffs: a.iter().zip(&b).map(|(x, y)| op(x, y)).collect() }.normalized()
    }
}

pub(crate) fn rational_to_f64(r: &BigRational) -> f64 {
    match (r.numer().to_f64(), r.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            // scale down huge numerators/denominators before dividing
            let shift = r.numer().bits().max(r.denom().bits()).saturating_sub(1000);
            let n = (r.numer() >> shift).to_f64().unwrap_or(f64::NAN);
            let d = (r.denom() >> shift).to_f64().unwrap_or(f64::NAN);
            n / d
        }
    }
}

impl PartialEq for Cyclo {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        let m = self.order.lcm(&other.order);
        self.lifted(m) == other.lifted(m)
    }
}

impl Eq for Cyclo {}

impl fmt::Debug for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [ζ_{}]", self.to_string_in(self.order), self.order)
    }
}

impl fmt::Display for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_in(self.order))
    }
}

impl<'a> Add<&'a Cyclo> for &'a Cyclo {
    type Output = Cyclo;
    fn add(self, rhs: &'a Cyclo) -> Cyclo {
        self.combine(rhs, |x, y| x + y)
    }
}

impl<'a> Sub<&'a Cyclo> for &'a Cyclo {
    type Output = Cyclo;
    fn sub(self, rhs: &'a Cyclo) -> Cyclo {
        self.combine(rhs, |x, y| x - y)
    }
}

impl<'a> Mul<&'a Cyclo> for &'a Cyclo {
    type Output = Cyclo;
    fn mul(self, rhs: &'a Cyclo) -> Cyclo {
        if self.order == 1 {
            return rhs.scale(&self.coeffs[0]);
        }
        if rhs.order == 1 {
            return self.scale(&rhs.coeffs[0]);
        }
        let m = self.order.lcm(&rhs.order);
        let a = self.lifted(m);
        let b = rhs.lifted(m);
        let n = m as usize;
        let mut raw = vec![BigRational::zero(); n];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    raw[(i + j) % n] += x * y;
                }
            }
        }
        Cyclo::reduce_raw(m, &raw)
    }
}

impl Neg for &Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        Cyclo { order: self.order, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for Cyclo {
            type Output = Cyclo;
            fn $m(self, rhs: Cyclo) -> Cyclo {
                (&self).$m(&rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl Neg for Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        -&self
    }
}

impl Zero for Cyclo {
    fn zero() -> Self {
        Cyclo::zero()
    }
    fn is_zero(&self) -> bool {
        Cyclo::is_zero(self)
    }
}

impl One for Cyclo {
    fn one() -> Self {
        Cyclo::one()
    }
}

impl std::iter::Sum for Cyclo {
    fn sum<I: Iterator<Item = Cyclo>>(iter: I) -> Self {
        iter.fold(Cyclo::zero(), |acc, x| &acc + &x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polynomials_small() {
        assert_eq!(*cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(*cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(*cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(*cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(totient(60), 16);
    }

    #[test]
    fn sum_of_all_roots_vanishes() {
        for n in [2u32, 3, 5, 6, 8, 12, 15, 30] {
            let s: Cyclo = (0..n as i64).map(|k| Cyclo::root_of_unity(n, k)).sum();
            assert!(s.is_zero(), "n = {n}");
        }
    }

    #[test]
    fn root_products_and_conjugates() {
        let z = Cyclo::root_of_unity(12, 5);
        let w = Cyclo::root_of_unity(12, 9);
        assert_eq!(&z * &w, Cyclo::root_of_unity(12, 2));
        assert_eq!(&z * &z.conj(), Cyclo::one());
        // ζ_4 = ζ_12^3 across conductors
        assert_eq!(Cyclo::root_of_unity(4, 1), Cyclo::root_of_unity(12, 3));
        assert_eq!(Cyclo::root_of_unity(3, 1) + Cyclo::root_of_unity(3, 2), Cyclo::from_integer(-1));
    }

    #[test]
    fn numeric_value_matches() {
        let z = Cyclo::root_of_unity(5, 2) + Cyclo::from_ratio(1, 3);
        let expect = Complex64::from_polar(1.0, std::f64::consts::TAU * 2.0 / 5.0) + 1.0 / 3.0;
        assert!((z.to_c64() - expect).norm() < 1e-14);
    }

    #[test]
    fn formatting() {
        assert_eq!(Cyclo::from_integer(-1).to_string_in(6), "-1");
        assert_eq!(Cyclo::root_of_unity(3, 1).to_string_in(3), "1*z^1");
        assert_eq!(Cyclo::root_of_unity(3, 2).to_string_in(3), "-1-1*z^1");
        assert_eq!(Cyclo::zero().to_string_in(4), "0");
    }
}
