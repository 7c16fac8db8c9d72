//! Exact arithmetic in the cyclotomic field `Q(zeta_l)` and q-combinatorics.
//!
//! Elements are polynomials in `q` with rational coefficients, fully reduced
//! modulo the cyclotomic polynomial `Phi_l`. The reduced remainder is
//! canonical, so equality and hashing are structural.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::ser::{Serialize, SerializeSeq, Serializer};

use crate::error::{Error, Result};

/// Integer cyclotomic polynomial `Phi_n`, coefficients in ascending degree.
fn cyclotomic_poly(n: u64) -> Vec<i64> {
    // x^n - 1 divided by Phi_d for every proper divisor d of n.
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            let div = cyclotomic_poly(d);
            num = exact_int_division(&num, &div);
        }
    }
    num
}

/// Quotient of integer polynomials where the divisor is monic and divides exactly.
fn exact_int_division(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    debug_assert_eq!(den[dd], 1);
    if rem.len() <= dd {
        return vec![0];
    }
    let mut quot = vec![0i64; rem.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd];
        quot[k] = c;
        for (j, &dj) in den.iter().enumerate() {
            rem[k + j] -= c * dj;
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0), "inexact cyclotomic division");
    quot
}

/// The `l`-th cyclotomic polynomial for odd `l >= 3`, ascending coefficients.
pub fn cyclotomic_modulus(l: i64) -> Result<Vec<i64>> {
    if l < 3 {
        return Err(Error::InvalidOrder {
            l,
            reason: "l must be at least 3",
        });
    }
    if l % 2 == 0 {
        return Err(Error::InvalidOrder {
            l,
            reason: "l must be odd",
        });
    }
    Ok(cyclotomic_poly(l as u64))
}

/// Euler's totient.
pub fn totient(n: u64) -> u64 {
    (1..=n).filter(|k| k.gcd(&n) == 1).count() as u64
}

/// The field `Q(zeta_l)` realised as `Q[x]/Phi_l`, with `q = x`.
#[derive(Debug)]
pub struct CyclotomicField {
    l: u32,
    modulus: Vec<i64>,
    degree: usize,
    // x^k mod Phi_l for 0 <= k < max(l, 2*degree - 1)
    powers: Vec<Vec<i64>>,
}

impl CyclotomicField {
    pub fn new(l: u32) -> Result<Arc<Self>> {
        let modulus = cyclotomic_modulus(l as i64)?;
        let degree = modulus.len() - 1;
        let count = (l as usize).max(2 * degree);
        let mut powers = Vec::with_capacity(count);
        let mut cur = vec![0i64; degree];
        cur[0] = 1;
        for _ in 0..count {
            powers.push(cur.clone());
            // multiply by x and reduce
            let top = cur[degree - 1];
            for j in (1..degree).rev() {
                cur[j] = cur[j - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for j in 0..degree {
                    cur[j] -= top * modulus[j];
                }
            }
        }
        Ok(Arc::new(Self {
            l,
            modulus,
            degree,
            powers,
        }))
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    /// `phi(l)`, the dimension of the field over `Q`.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> &[i64] {
        &self.modulus
    }

    pub fn zero(self: &Arc<Self>) -> CycloNum {
        CycloNum {
            field: Arc::clone(self),
            coeffs: vec![BigRational::zero(); self.degree],
        }
    }

    pub fn one(self: &Arc<Self>) -> CycloNum {
        self.from_int(1)
    }

    pub fn from_int(self: &Arc<Self>, n: i64) -> CycloNum {
        self.from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(self: &Arc<Self>, r: BigRational) -> CycloNum {
        let mut z = self.zero();
        z.coeffs[0] = r;
        z
    }

    /// `q^k` for any integer `k`; uses `q^l = 1`.
    pub fn q_pow(self: &Arc<Self>, k: i64) -> CycloNum {
        let e = k.rem_euclid(self.l as i64) as usize;
        CycloNum {
            field: Arc::clone(self),
            coeffs: self.powers[e]
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
        }
    }

    pub fn q(self: &Arc<Self>) -> CycloNum {
        self.q_pow(1)
    }

    /// Builds an element from arbitrary polynomial coefficients in `q`, reducing them.
    pub fn from_poly(self: &Arc<Self>, coeffs: &[BigRational]) -> CycloNum {
        let mut out = vec![BigRational::zero(); self.degree];
        for (k, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let row = &self.powers[k % self.l as usize];
            for (o, &p) in out.iter_mut().zip(row) {
                if p != 0 {
                    *o += c * BigInt::from(p);
                }
            }
        }
        CycloNum {
            field: Arc::clone(self),
            coeffs: out,
        }
    }

    /// Quantum integer `[k] = (q^k - q^-k)/(q - q^-1)`, defined for all integers.
    pub fn qint(self: &Arc<Self>, k: i64) -> CycloNum {
        // [k] = sum_{j=0}^{k-1} q^{k-1-2j} for k >= 0, [-k] = -[k]
        let n = k.abs();
        let mut acc = self.zero();
        for j in 0..n {
            acc += &self.q_pow(n - 1 - 2 * j);
        }
        if k < 0 {
            -acc
        } else {
            acc
        }
    }

    /// `[k]! = [1][2]...[k]`; vanishes for `k >= l` because `[l] = 0`.
    pub fn qfact(self: &Arc<Self>, k: u32) -> CycloNum {
        let mut acc = self.one();
        for s in 1..=k {
            acc = &acc * &self.qint(s as i64);
        }
        acc
    }

    /// Gaussian binomial `[n choose k]` via the q-Pascal rule (no division).
    pub fn qbinom(self: &Arc<Self>, n: u32, k: u32) -> CycloNum {
        if k > n {
            return self.zero();
        }
        // row[j] = [m choose j]
        let mut row = vec![self.one()];
        for m in 1..=n {
            let mut next = Vec::with_capacity(m as usize + 1);
            for j in 0..=m {
                let mut v = self.zero();
                if j < m {
                    v += &(&self.q_pow(-(j as i64)) * &row[j as usize]);
                }
                if j > 0 {
                    v += &(&self.q_pow(m as i64 - j as i64) * &row[j as usize - 1]);
                }
                next.push(v);
            }
            row = next;
        }
        row.swap_remove(k as usize)
    }
}

/// An exact element of `Q(zeta_l)`.
#[derive(Clone)]
pub struct CycloNum {
    field: Arc<CyclotomicField>,
    coeffs: Vec<BigRational>,
}

impl CycloNum {
    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    /// Coefficients of the reduced remainder, ascending powers of `q`.
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// Returns the value as a rational if it lies in `Q`.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    fn check_same(&self, other: &Self) {
        assert!(
            Arc::ptr_eq(&self.field, &other.field) || self.field.l == other.field.l,
            "mixing Q(zeta_{}) and Q(zeta_{})",
            self.field.l,
            other.field.l
        );
    }

    pub fn try_same_field(&self, other: &Self) -> Result<()> {
        if self.field.l == other.field.l {
            Ok(())
        } else {
            Err(Error::FieldMismatch {
                left: self.field.l,
                right: other.field.l,
            })
        }
    }

    pub fn scale(&self, r: &BigRational) -> CycloNum {
        CycloNum {
            field: Arc::clone(&self.field),
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Multiplicative inverse by the extended Euclidean algorithm against `Phi_l`.
    pub fn inv(&self) -> Result<CycloNum> {
        if self.is_zero() {
            return Err(Error::DivisionByZero { l: self.field.l });
        }
        if let Some(r) = self.as_rational() {
            return Ok(self.field.from_rational(r.recip()));
        }
        let modulus: Vec<BigRational> = self
            .field
            .modulus
            .iter()
            .map(|&c| BigRational::from_integer(BigInt::from(c)))
            .collect();
        let a = poly_trim(self.coeffs.clone());
        // invariant: s * a == r (mod Phi)
        let (mut r0, mut r1) = (modulus, a);
        let (mut s0, mut s1) = (vec![], vec![BigRational::one()]);
        while !(r1.len() == 1 && !r1[0].is_zero()) {
            let (quot, rem) = poly_divrem(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&quot, &s1));
            r0 = std::mem::replace(&mut r1, rem);
            s0 = std::mem::replace(&mut s1, s2);
            debug_assert!(!r1.is_empty(), "Phi_l is irreducible, gcd must be constant");
        }
        let c = r1[0].recip();
        let s: Vec<BigRational> = s1.iter().map(|x| x * &c).collect();
        Ok(self.field.from_poly(&s))
    }

    pub fn checked_div(&self, other: &CycloNum) -> Result<CycloNum> {
        self.try_same_field(other)?;
        Ok(self * &other.inv()?)
    }

    /// Integer power; negative exponents invert first.
    pub fn pow(&self, e: i64) -> Result<CycloNum> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut n = e.unsigned_abs();
        let mut acc = self.field.one();
        let mut b = base;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &b;
            }
            b = &b * &b;
            n >>= 1;
        }
        Ok(acc)
    }

    /// `self += a * b`
    pub fn add_mul(&mut self, a: &CycloNum, b: &CycloNum) {
        let prod = a * b;
        *self += &prod;
    }

    /// Coefficient strings `"p/q"` in degree order.
    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs
            .iter()
            .map(|c| format!("{}/{}", c.numer(), c.denom()))
            .collect()
    }
}

fn poly_trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let z = BigRational::zero();
    poly_trim(
        (0..n)
            .map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z))
            .collect(),
    )
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    poly_trim(out)
}

fn poly_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = poly_trim(a.to_vec());
    let db = b.len() - 1;
    let lead = b[db].clone();
    if rem.len() < b.len() {
        return (vec![], rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    while rem.len() >= b.len() {
        let k = rem.len() - b.len();
        let c = rem.last().unwrap() / &lead;
        for (j, bj) in b.iter().enumerate() {
            rem[k + j] -= &c * bj;
        }
        quot[k] = c;
        rem = poly_trim(rem);
    }
    (poly_trim(quot), rem)
}

impl PartialEq for CycloNum {
    fn eq(&self, other: &Self) -> bool {
        self.field.l == other.field.l && self.coeffs == other.coeffs
    }
}

impl Eq for CycloNum {}

impl Hash for CycloNum {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.l.hash(state);
        self.coeffs.hash(state);
    }
}

impl fmt::Debug for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let mon = match k {
                0 => String::new(),
                1 => "q".to_string(),
                _ => format!("q^{k}"),
            };
            if k == 0 {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{mon}")?;
            } else {
                write!(f, "{abs}*{mon}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Serialize for CycloNum {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.coeffs.len()))?;
        for s in self.to_strings() {
            seq.serialize_element(&s)?;
        }
        seq.end()
    }
}

impl<'a> AddAssign<&'a CycloNum> for CycloNum {
    fn add_assign(&mut self, rhs: &'a CycloNum) {
        self.check_same(rhs);
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            if !b.is_zero() {
                *a += b;
            }
        }
    }
}

impl<'a> SubAssign<&'a CycloNum> for CycloNum {
    fn sub_assign(&mut self, rhs: &'a CycloNum) {
        self.check_same(rhs);
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            if !b.is_zero() {
                *a -= b;
            }
        }
    }
}

impl<'b> Add<&'b CycloNum> for &CycloNum {
    type Output = CycloNum;
    fn add(self, rhs: &'b CycloNum) -> CycloNum {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<'b> Sub<&'b CycloNum> for &CycloNum {
    type Output = CycloNum;
    fn sub(self, rhs: &'b CycloNum) -> CycloNum {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<'b> Mul<&'b CycloNum> for &CycloNum {
    type Output = CycloNum;
    fn mul(self, rhs: &'b CycloNum) -> CycloNum {
        self.check_same(rhs);
        let field = &self.field;
        let d = field.degree;
        if let Some(r) = rhs.as_rational() {
            return self.scale(r);
        }
        if let Some(r) = self.as_rational() {
            return rhs.scale(r);
        }
        let mut prod = vec![BigRational::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        let mut out: Vec<BigRational> = prod.drain(..d).collect();
        for (k, c) in prod.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, &p) in out.iter_mut().zip(&field.powers[d + k]) {
                if p != 0 {
                    *o += &c * BigInt::from(p);
                }
            }
        }
        CycloNum {
            field: Arc::clone(field),
            coeffs: out,
        }
    }
}

impl<'a> MulAssign<&'a CycloNum> for CycloNum {
    fn mul_assign(&mut self, rhs: &'a CycloNum) {
        *self = &*self * rhs;
    }
}

impl Neg for CycloNum {
    type Output = CycloNum;
    fn neg(mut self) -> CycloNum {
        for c in &mut self.coeffs {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Neg for &CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        -self.clone()
    }
}
