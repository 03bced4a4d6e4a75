//! Arithmetic in F_{p^m} over a polynomial basis.
//!
//! Elements are stored as their canonical integer encoding
//! `enc(a) = sum a_i p^i`, where `a_i` are the polynomial-basis coordinates
//! with the constant term first. Multiplication uses log/antilog tables when
//! the field is small enough, and schoolbook reduction otherwise.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::numtheory::{gcd, is_prime, prime_factors, prime_power};

/// Largest field order for which log/antilog tables are built.
const TABLE_LIMIT: u64 = 1 << 20;
/// Largest supported field order (codes are `u32`, q^2 must fit in `u64`).
const MAX_ORDER: u64 = 1 << 31;

struct Inner {
    p: u32,
    m: u32,
    q: u32,
    /// Monic modulus, constant term first, length m + 1.
    modulus: Vec<u32>,
    pow_p: Vec<u32>,
    generator: u32,
    log: Vec<u32>,
    exp: Vec<u32>,
}

/// A finite field F_{p^m} with a fixed irreducible modulus.
///
/// Cloning is cheap; all clones share the same tables.
#[derive(Clone)]
pub struct FieldSpec(Arc<Inner>);

impl FieldSpec {
    /// Builds F_{p^m}. With no modulus, picks the monic irreducible of degree
    /// `m` whose non-leading coefficients have the smallest encoding.
    pub fn new(p: u64, m: u32, modulus: Option<&[u32]>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if m == 0 {
            return Err(Error::InvalidDegree(m));
        }
        let q = p
            .checked_pow(m)
            .filter(|&q| q <= MAX_ORDER)
            .ok_or_else(|| Error::FieldTooLarge(format!("{p}^{m}")))?;
        let p32 = p as u32;
        let modulus = match modulus {
            Some(coeffs) => {
                if coeffs.len() != m as usize + 1 || coeffs[m as usize] != 1 {
                    return Err(Error::InvalidModulus(format!(
                        "expected a monic polynomial of degree {m}"
                    )));
                }
                if coeffs.iter().any(|&c| c >= p32) {
                    return Err(Error::InvalidModulus("coefficient not reduced mod p".into()));
                }
                if !prime_poly::is_irreducible(coeffs, p32) {
                    return Err(Error::InvalidModulus("modulus is reducible".into()));
                }
                coeffs.to_vec()
            }
            None => minimal_irreducible(p32, m),
        };
        Ok(Self::assemble(p32, m, q as u32, modulus))
    }

    /// Builds a field from a modulus given by the encoding of its
    /// non-leading coefficients.
    pub fn with_modulus_code(p: u64, m: u32, code: u64) -> Result<Self> {
        let q = p.checked_pow(m).ok_or_else(|| Error::FieldTooLarge(format!("{p}^{m}")))?;
        if code >= q {
            return Err(Error::InvalidModulus(format!("encoding {code:#x} exceeds p^m")));
        }
        let mut coeffs = digits(code, p, m as usize);
        coeffs.push(1);
        Self::new(p, m, Some(&coeffs))
    }

    fn assemble(p: u32, m: u32, q: u32, modulus: Vec<u32>) -> Self {
        let mut pow_p = Vec::with_capacity(m as usize + 1);
        let mut acc = 1u32;
        for i in 0..=m {
            pow_p.push(acc);
            if i < m {
                acc = acc.wrapping_mul(p);
            }
        }
        let mut inner = Inner { p, m, q, modulus, pow_p, generator: 0, log: Vec::new(), exp: Vec::new() };
        inner.generator = find_generator(&inner);
        if (q as u64) <= TABLE_LIMIT {
            let n = (q - 1) as usize;
            let mut exp = vec![0u32; 2 * n.max(1)];
            let mut log = vec![0u32; q as usize];
            let mut x = 1u32;
            for (i, slot) in exp.iter_mut().enumerate().take(n) {
                *slot = x;
                log[x as usize] = i as u32;
                x = inner.mul_slow(x, inner.generator);
            }
            for i in n..2 * n {
                exp[i] = exp[i - n];
            }
            if n == 0 {
                exp = vec![1, 1];
            }
            inner.log = log;
            inner.exp = exp;
        }
        FieldSpec(Arc::new(inner))
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn m(&self) -> u32 {
        self.0.m
    }

    pub fn q(&self) -> u32 {
        self.0.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    /// Encoding of the modulus' non-leading coefficients.
    pub fn modulus_code(&self) -> u64 {
        let m = self.0.m as usize;
        self.0.modulus[..m].iter().rev().fold(0u64, |acc, &c| acc * self.0.p as u64 + c as u64)
    }

    pub fn is_odd(&self) -> bool {
        self.0.p != 2
    }

    /// The encoding-minimal generator of the multiplicative group.
    pub fn generator(&self) -> u32 {
        self.0.generator
    }

    pub fn same_field(&self, other: &FieldSpec) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }

    pub fn element(&self, code: u64) -> Result<FieldElement> {
        self.check(code)?;
        Ok(FieldElement { field: self.clone(), code: code as u32 })
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { field: self.clone(), code: 0 }
    }

    pub fn one(&self) -> FieldElement {
        FieldElement { field: self.clone(), code: 1 }
    }

    pub fn check(&self, code: u64) -> Result<()> {
        if code >= self.0.q as u64 {
            return Err(Error::ElementOutOfRange { code, q: self.0.q as u64 });
        }
        Ok(())
    }

    /// All elements in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.0.q
    }

    /// Polynomial-basis coordinates of an element, constant first.
    pub fn coords(&self, a: u32) -> Vec<u32> {
        digits(a as u64, self.0.p as u64, self.0.m as usize)
    }

    pub fn from_coords(&self, coords: &[u32]) -> u32 {
        coords.iter().rev().fold(0u32, |acc, &c| acc * self.0.p + c % self.0.p)
    }

    /// Embeds a residue mod p as an element of the prime subfield.
    pub fn from_int(&self, v: i64) -> u32 {
        v.rem_euclid(self.0.p as i64) as u32
    }

    // --- raw arithmetic on encodings ---

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.0.add(a, b)
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.0.neg(a)
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.0.add(a, self.0.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        let f = &self.0;
        if f.exp.is_empty() {
            return f.mul_slow(a, b);
        }
        if a == 0 || b == 0 {
            return 0;
        }
        f.exp[(f.log[a as usize] + f.log[b as usize]) as usize]
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let f = &self.0;
        if f.exp.is_empty() {
            return Some(self.pow(a, f.q as u64 - 2));
        }
        let n = f.q - 1;
        Some(f.exp[((n - f.log[a as usize]) % n.max(1)) as usize])
    }

    pub fn div(&self, a: u32, b: u32) -> Option<u32> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    /// Square-and-multiply; any exponent, `0^0 = 1`.
    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let f = &self.0;
        if !f.exp.is_empty() {
            let n = (f.q - 1) as u64;
            let idx = (f.log[a as usize] as u64 * (e % n)) % n;
            return f.exp[idx as usize];
        }
        let mut base = a;
        let mut acc = 1;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = f.mul_slow(acc, base);
            }
            base = f.mul_slow(base, base);
            e >>= 1;
        }
        acc
    }

    /// Schoolbook multiplication, independent of the tables.
    pub fn mul_reference(&self, a: u32, b: u32) -> u32 {
        self.0.mul_slow(a, b)
    }

    /// eta(a): 0 for zero, +1 for nonzero squares, -1 otherwise.
    pub fn quadratic_character(&self, a: u32) -> Result<i8> {
        if !self.is_odd() {
            return Err(Error::EvenCharacteristic);
        }
        if a == 0 {
            return Ok(0);
        }
        Ok(if self.pow(a, (self.0.q as u64 - 1) / 2) == 1 { 1 } else { -1 })
    }

    /// Tr_{F_q/F_p}(a) as a residue mod p.
    pub fn absolute_trace(&self, a: u32) -> u32 {
        let mut acc = 0;
        let mut x = a;
        for _ in 0..self.0.m {
            acc = self.add(acc, x);
            x = self.pow(x, self.0.p as u64);
        }
        debug_assert!(acc < self.0.p);
        acc
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: u32) -> u64 {
        assert!(a != 0, "zero has no multiplicative order");
        let mut ord = self.0.q as u64 - 1;
        for l in prime_factors(ord) {
            while ord.is_multiple_of(l) && self.pow(a, ord / l) == 1 {
                ord /= l;
            }
        }
        ord
    }

    /// Generator of the subfield F_{p^e}^* (requires e | m).
    pub fn subfield_generator(&self, e: u32) -> u32 {
        assert!(self.0.m.is_multiple_of(e), "F_(p^{e}) is not a subfield");
        let sub = (self.0.p as u64).pow(e) - 1;
        self.pow(self.0.generator, (self.0.q as u64 - 1) / sub)
    }

    /// All elements of the subfield F_{p^e}, in encoding order.
    pub fn subfield_elements(&self, e: u32) -> Vec<u32> {
        let g = self.subfield_generator(e);
        let size = (self.0.p as u64).pow(e) - 1;
        let mut out = vec![0];
        let mut x = 1;
        for _ in 0..size {
            out.push(x);
            x = self.mul(x, g);
        }
        out.sort_unstable();
        out
    }

    /// A primitive `n`-th root of unity, in F_q when n | q - 1 and in the
    /// quadratic extension when n | q^2 - 1.
    pub fn nth_root_of_unity(&self, n: u64) -> Result<RootOfUnity> {
        let q = self.0.q as u64;
        if n == 0 || gcd(n, q) != 1 {
            return Err(Error::NotCoprime { n, q });
        }
        if (q - 1).is_multiple_of(n) {
            let w = self.pow(self.0.generator, (q - 1) / n);
            return Ok(RootOfUnity::Base(FieldElement { field: self.clone(), code: w }));
        }
        if (q * q - 1).is_multiple_of(n) {
            let ext = QuadraticExtension::new(self);
            let g = ext.generator();
            let root = ext.pow(g, (q * q - 1) / n);
            return Ok(RootOfUnity::Extension { ext, root });
        }
        Err(Error::RootNotInQuadratic { n, q })
    }

    /// Parses `"p^m"`, `"p^m:0xHH"`, or a bare prime power such as `"13"`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let (order, modulus) = match s.split_once(':') {
            Some((a, b)) => (a, Some(b)),
            None => (s, None),
        };
        let (p, m) = match order.split_once('^') {
            Some((p, m)) => {
                let p = p.trim().parse::<u64>().map_err(|e| Error::Parse(format!("prime '{p}': {e}")))?;
                let m = m.trim().parse::<u32>().map_err(|e| Error::Parse(format!("degree '{m}': {e}")))?;
                (p, m)
            }
            None => {
                let q = order.trim().parse::<u64>().map_err(|e| Error::Parse(format!("field '{order}': {e}")))?;
                prime_power(q).ok_or_else(|| Error::Parse(format!("{q} is not a prime power")))?
            }
        };
        match modulus {
            None => Self::new(p, m, None),
            Some(hex) => {
                let hex = hex.trim();
                let digits = hex.strip_prefix("0x").or_else(|| hex.strip_prefix("0X")).unwrap_or(hex);
                let code = u64::from_str_radix(digits, 16)
                    .map_err(|e| Error::Parse(format!("modulus '{hex}': {e}")))?;
                Self::with_modulus_code(p, m, code)
            }
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}:{:#x}", self.0.p, self.0.m, self.modulus_code())
    }
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldSpec({self})")
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.same_field(other)
    }
}

impl Eq for FieldSpec {}

impl Hash for FieldSpec {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.p.hash(state);
        self.0.modulus.hash(state);
    }
}

impl Inner {
    #[inline]
    fn add(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        if self.m == 1 {
            let s = a + b;
            return if s >= self.p { s - self.p } else { s };
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        for i in 0..self.m as usize {
            let mut d = a % self.p + b % self.p;
            if d >= self.p {
                d -= self.p;
            }
            out += d * self.pow_p[i];
            a /= self.p;
            b /= self.p;
        }
        out
    }

    #[inline]
    fn neg(&self, a: u32) -> u32 {
        if self.p == 2 || a == 0 {
            return a;
        }
        if self.m == 1 {
            return self.p - a;
        }
        let mut a = a;
        let mut out = 0;
        for i in 0..self.m as usize {
            let d = a % self.p;
            if d != 0 {
                out += (self.p - d) * self.pow_p[i];
            }
            a /= self.p;
        }
        out
    }

    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        let p = self.p as u64;
        let m = self.m as usize;
        if m == 1 {
            return ((a as u64 * b as u64) % p) as u32;
        }
        let da = digits(a as u64, p, m);
        let db = digits(b as u64, p, m);
        let mut prod = vec![0u64; 2 * m - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        for top in (m..prod.len()).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            prod[top] = 0;
            for i in 0..m {
                let sub = c * self.modulus[i] as u64 % p;
                let k = top - m + i;
                prod[k] = (prod[k] + p - sub) % p;
            }
        }
        prod[..m].iter().rev().fold(0u64, |acc, &c| acc * p + c) as u32
    }
}

fn digits(mut code: u64, p: u64, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push((code % p) as u32);
        code /= p;
    }
    out
}

fn minimal_irreducible(p: u32, m: u32) -> Vec<u32> {
    let q = (p as u64).pow(m);
    for code in 0..q {
        let mut coeffs = digits(code, p as u64, m as usize);
        coeffs.push(1);
        if prime_poly::is_irreducible(&coeffs, p) {
            return coeffs;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists over F_p")
}

fn find_generator(f: &Inner) -> u32 {
    let n = f.q as u64 - 1;
    if n <= 1 {
        return 1;
    }
    let factors = prime_factors(n);
    let pow = |a: u32, mut e: u64| {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = f.mul_slow(acc, base);
            }
            base = f.mul_slow(base, base);
            e >>= 1;
        }
        acc
    };
    (2..f.q)
        .find(|&a| factors.iter().all(|&l| pow(a, n / l) != 1))
        .expect("the multiplicative group of a finite field is cyclic")
}

/// Minimal polynomial arithmetic over F_p used to validate moduli.
mod prime_poly {
    fn trim(mut v: Vec<u64>) -> Vec<u64> {
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    }

    fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        let mut a = a.to_vec();
        let dm = m.len() - 1;
        let inv_lead = crate::numtheory::mod_pow(m[dm], p - 2, p);
        while a.len() > dm {
            let top = a.len() - 1;
            let c = a[top] * inv_lead % p;
            if c != 0 {
                for i in 0..=dm {
                    let k = top - dm + i;
                    a[k] = (a[k] + p - c * m[i] % p) % p;
                }
            }
            a.pop();
            a = trim(a);
        }
        trim(a)
    }

    fn mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut prod = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        rem(&prod, m, p)
    }

    fn gcd(a: Vec<u64>, b: Vec<u64>, p: u64) -> Vec<u64> {
        let (mut a, mut b) = (trim(a), trim(b));
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    /// Ben-Or style test: g is irreducible iff gcd(T^{p^i} - T, g) = 1 for
    /// all 1 <= i <= deg/2.
    pub fn is_irreducible(coeffs: &[u32], p: u32) -> bool {
        let p = p as u64;
        let g: Vec<u64> = coeffs.iter().map(|&c| c as u64).collect();
        let d = g.len() - 1;
        if d == 1 {
            return true;
        }
        if g[0] == 0 {
            return false;
        }
        let mut x = rem(&[0, 1], &g, p);
        for _ in 0..d / 2 {
            // x <- x^p mod g
            let mut acc = vec![1u64];
            let mut base = x.clone();
            let mut e = p;
            while e > 0 {
                if e & 1 == 1 {
                    acc = mulmod(&acc, &base, &g, p);
                }
                base = mulmod(&base, &base, &g, p);
                e >>= 1;
            }
            x = acc;
            let mut diff = x.clone();
            if diff.len() < 2 {
                diff.resize(2, 0);
            }
            diff[1] = (diff[1] + p - 1) % p;
            let h = gcd(g.clone(), diff, p);
            if h.len() != 1 {
                return false;
            }
        }
        true
    }
}

/// An element of a [`FieldSpec`], carrying its field.
#[derive(Clone)]
pub struct FieldElement {
    field: FieldSpec,
    code: u32,
}

impl FieldElement {
    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn code(&self) -> u32 {
        self.code
    }

    pub fn coords(&self) -> Vec<u32> {
        self.field.coords(self.code)
    }

    pub fn is_zero(&self) -> bool {
        self.code == 0
    }

    fn same(&self, other: &Self) -> Result<()> {
        if self.field.same_field(&other.field) {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    fn with(&self, code: u32) -> Self {
        FieldElement { field: self.field.clone(), code }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same(other)?;
        Ok(self.with(self.field.add(self.code, other.code)))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.same(other)?;
        Ok(self.with(self.field.sub(self.code, other.code)))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.same(other)?;
        Ok(self.with(self.field.mul(self.code, other.code)))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.same(other)?;
        self.field.div(self.code, other.code).map(|c| self.with(c)).ok_or(Error::DivisionByZero)
    }

    pub fn inv(&self) -> Result<Self> {
        self.field.inv(self.code).map(|c| self.with(c)).ok_or(Error::DivisionByZero)
    }

    pub fn pow(&self, e: u64) -> Self {
        self.with(self.field.pow(self.code, e))
    }

    pub fn quadratic_character(&self) -> Result<i8> {
        self.field.quadratic_character(self.code)
    }

    pub fn absolute_trace(&self) -> u32 {
        self.field.absolute_trace(self.code)
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.code == other.code && self.field.same_field(&other.field)
    }
}

impl Eq for FieldElement {}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.code.cmp(&other.code)
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.code)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.code)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                self.$checked(rhs).expect("operands from different fields")
            }
        }
        impl $trait for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.with(self.field.neg(self.code))
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

/// Element of F_{q^2} = F_q[X]/(X^2 + c1 X + c0), as `a0 + a1 X`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtElement {
    pub a0: u32,
    pub a1: u32,
}

/// The quadratic extension F_{q^2} as a degree-2 tower over a [`FieldSpec`].
#[derive(Clone, Debug)]
pub struct QuadraticExtension {
    base: FieldSpec,
    c0: u32,
    c1: u32,
}

impl QuadraticExtension {
    /// Uses the monic irreducible `X^2 + c1 X + c0` minimising `c0 + c1 q`.
    pub fn new(base: &FieldSpec) -> Self {
        let q = base.q();
        for c1 in 0..q {
            for c0 in 0..q {
                let has_root = base.elements().any(|x| {
                    let v = base.add(base.mul(x, x), base.add(base.mul(c1, x), c0));
                    v == 0
                });
                if !has_root {
                    return QuadraticExtension { base: base.clone(), c0, c1 };
                }
            }
        }
        unreachable!("irreducible quadratics exist over every finite field")
    }

    pub fn base(&self) -> &FieldSpec {
        &self.base
    }

    /// `(c0, c1)` of the modulus `X^2 + c1 X + c0`.
    pub fn modulus(&self) -> (u32, u32) {
        (self.c0, self.c1)
    }

    pub fn order(&self) -> u64 {
        let q = self.base.q() as u64;
        q * q
    }

    pub fn embed(&self, a: u32) -> ExtElement {
        ExtElement { a0: a, a1: 0 }
    }

    /// The base-field coordinate when the element lies in F_q.
    pub fn to_base(&self, x: ExtElement) -> Option<u32> {
        (x.a1 == 0).then_some(x.a0)
    }

    pub fn code(&self, x: ExtElement) -> u64 {
        x.a0 as u64 + x.a1 as u64 * self.base.q() as u64
    }

    pub fn from_code(&self, code: u64) -> ExtElement {
        let q = self.base.q() as u64;
        ExtElement { a0: (code % q) as u32, a1: (code / q) as u32 }
    }

    pub fn elements(&self) -> impl Iterator<Item = ExtElement> + '_ {
        (0..self.order()).map(move |c| self.from_code(c))
    }

    pub fn zero(&self) -> ExtElement {
        ExtElement { a0: 0, a1: 0 }
    }

    pub fn one(&self) -> ExtElement {
        ExtElement { a0: 1, a1: 0 }
    }

    pub fn add(&self, x: ExtElement, y: ExtElement) -> ExtElement {
        let f = &self.base;
        ExtElement { a0: f.add(x.a0, y.a0), a1: f.add(x.a1, y.a1) }
    }

    pub fn neg(&self, x: ExtElement) -> ExtElement {
        let f = &self.base;
        ExtElement { a0: f.neg(x.a0), a1: f.neg(x.a1) }
    }

    pub fn sub(&self, x: ExtElement, y: ExtElement) -> ExtElement {
        self.add(x, self.neg(y))
    }

    pub fn mul(&self, x: ExtElement, y: ExtElement) -> ExtElement {
        let f = &self.base;
        let lo = f.mul(x.a0, y.a0);
        let mid = f.add(f.mul(x.a0, y.a1), f.mul(x.a1, y.a0));
        let hi = f.mul(x.a1, y.a1);
        // X^2 = -c1 X - c0
        ExtElement { a0: f.sub(lo, f.mul(hi, self.c0)), a1: f.sub(mid, f.mul(hi, self.c1)) }
    }

    pub fn pow(&self, x: ExtElement, mut e: u64) -> ExtElement {
        let mut acc = self.one();
        let mut base = x;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, x: ExtElement) -> Option<ExtElement> {
        if x == self.zero() {
            return None;
        }
        Some(self.pow(x, self.order() - 2))
    }

    /// The encoding-minimal generator of F_{q^2}^*.
    pub fn generator(&self) -> ExtElement {
        let n = self.order() - 1;
        let factors = prime_factors(n);
        (1..self.order())
            .map(|c| self.from_code(c))
            .find(|&x| factors.iter().all(|&l| self.pow(x, n / l) != self.one()))
            .expect("the multiplicative group of a finite field is cyclic")
    }

    /// Horner evaluation of a base-field polynomial (constant first) at `x`.
    pub fn eval_base(&self, coeffs: &[u32], x: ExtElement) -> ExtElement {
        coeffs.iter().rev().fold(self.zero(), |acc, &c| self.add(self.mul(acc, x), self.embed(c)))
    }
}

/// A primitive root of unity, located in F_q or in F_{q^2}.
#[derive(Clone, Debug)]
pub enum RootOfUnity {
    Base(FieldElement),
    Extension { ext: QuadraticExtension, root: ExtElement },
}

impl RootOfUnity {
    pub fn in_base(&self) -> bool {
        matches!(self, RootOfUnity::Base(_))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_irreducible_quadratic(p: u32, c0: u32, c1: u32) -> bool {
        (0..p).all(|x| !(x * x + c1 * x + c0).is_multiple_of(p))
    }

    #[test]
    fn prime_field_modulus_is_t() {
        let f = FieldSpec::new(3, 1, None).unwrap();
        assert_eq!(f.modulus(), &[0, 1]);
        assert_eq!(f.q(), 3);
    }

    #[test]
    fn f9_modulus_minimal() {
        // oracle: enumerate monic quadratics over F_3 by encoding, root search
        let want = (0..9u32).find(|&c| brute_irreducible_quadratic(3, c % 3, c / 3)).unwrap();
        assert_eq!(want, 1);
        let f = FieldSpec::new(3, 2, None).unwrap();
        assert_eq!(f.modulus(), &[1, 0, 1]);
        assert_eq!(f.modulus_code(), 1);
    }

    #[test]
    fn f64_modulus_minimal() {
        // oracle: a sextic over F_2 is irreducible iff it has no factor of
        // degree 1..=3; test by dividing by every polynomial of those degrees.
        fn divides(d: u32, n: u32) -> bool {
            let dd = 31 - d.leading_zeros();
            let mut r = n;
            while r != 0 && 31 - r.leading_zeros() >= dd {
                r ^= d << (31 - r.leading_zeros() - dd);
            }
            r == 0
        }
        let want = (0u32..64)
            .map(|c| c | 64)
            .find(|&g| (2u32..16).all(|d| !divides(d, g)))
            .unwrap();
        let f = FieldSpec::new(2, 6, None).unwrap();
        assert_eq!(f.modulus_code() as u32 | 64, want);
        assert_eq!(want, 0b1000011); // T^6 + T + 1
    }

    #[test]
    fn rejects_bad_inputs() {
        assert_eq!(FieldSpec::new(4, 1, None).unwrap_err(), Error::NotPrime(4));
        assert!(matches!(FieldSpec::new(3, 2, Some(&[0, 0, 1])), Err(Error::InvalidModulus(_))));
        assert!(matches!(FieldSpec::new(3, 2, Some(&[1, 1])), Err(Error::InvalidModulus(_))));
        assert!(FieldSpec::new(3, 2, Some(&[2, 1, 1])).is_ok()); // T^2+T+2
    }

    #[test]
    fn arithmetic_examples() {
        let f5 = FieldSpec::new(5, 1, None).unwrap();
        assert_eq!(f5.mul(2, 3), 1);
        let f9 = FieldSpec::new(3, 2, None).unwrap();
        // T * T = -1 = 2 in F_9 with modulus T^2 + 1
        assert_eq!(f9.mul(3, 3), 2);
        let f7 = FieldSpec::new(7, 1, None).unwrap();
        assert_eq!(f7.inv(3), Some(5));
        assert_eq!(f7.inv(0), None);
        let a = f7.element(3).unwrap();
        assert_eq!(a.inv().unwrap().code(), 5);
        assert_eq!(f7.zero().inv().unwrap_err(), Error::DivisionByZero);
        let other = f5.element(3).unwrap();
        assert_eq!(a.try_add(&other).unwrap_err(), Error::FieldMismatch);
        assert_eq!((&a * &a).code(), 2);
        assert_eq!(a.pow(6 * 1000 + 1).code(), 3);
    }

    #[test]
    fn tables_match_schoolbook() {
        for (p, m) in [(2, 4), (3, 3), (5, 2), (7, 1)] {
            let f = FieldSpec::new(p, m, None).unwrap();
            for a in f.elements() {
                for b in f.elements() {
                    assert_eq!(f.mul(a, b), f.mul_reference(a, b));
                }
            }
        }
    }

    #[test]
    fn quadratic_character_examples() {
        let f7 = FieldSpec::new(7, 1, None).unwrap();
        assert_eq!(f7.quadratic_character(2), Ok(1));
        assert_eq!(f7.quadratic_character(3), Ok(-1));
        assert_eq!(f7.quadratic_character(0), Ok(0));
        let f8 = FieldSpec::new(2, 3, None).unwrap();
        assert_eq!(f8.quadratic_character(1), Err(Error::EvenCharacteristic));
    }

    #[test]
    fn trace_examples() {
        let f7 = FieldSpec::new(7, 1, None).unwrap();
        assert_eq!(f7.absolute_trace(4), 4);
        let f4 = FieldSpec::new(2, 2, None).unwrap();
        // modulus T^2+T+1; omega = T has code 2
        assert_eq!(f4.modulus(), &[1, 1, 1]);
        assert_eq!(f4.absolute_trace(2), 1);
        assert_eq!(f4.absolute_trace(1), 0);
    }

    #[test]
    fn roots_of_unity() {
        let f7 = FieldSpec::new(7, 1, None).unwrap();
        match f7.nth_root_of_unity(3).unwrap() {
            RootOfUnity::Base(w) => assert!([2, 4].contains(&w.code())),
            _ => panic!("expected base root"),
        }
        match f7.nth_root_of_unity(4).unwrap() {
            RootOfUnity::Extension { ext, root } => {
                assert_eq!(ext.pow(root, 4), ext.one());
                assert_ne!(ext.pow(root, 2), ext.one());
                assert_eq!(ext.order(), 49);
            }
            _ => panic!("expected extension root"),
        }
        match f7.nth_root_of_unity(1).unwrap() {
            RootOfUnity::Base(w) => assert_eq!(w.code(), 1),
            _ => panic!(),
        }
        assert!(matches!(f7.nth_root_of_unity(7), Err(Error::NotCoprime { .. })));
        assert!(matches!(f7.nth_root_of_unity(5), Err(Error::RootNotInQuadratic { .. })));
    }

    #[test]
    fn parse_forms() {
        let f = FieldSpec::parse("2^6").unwrap();
        assert_eq!(f.q(), 64);
        let g = FieldSpec::parse(&f.to_string()).unwrap();
        assert_eq!(f, g);
        assert_eq!(FieldSpec::parse("13").unwrap().q(), 13);
        assert_eq!(FieldSpec::parse("64").unwrap(), f);
    }

    #[test]
    fn parse_rejects_reducible_modulus() {
        // 0x7 encodes 1 + 2T, i.e. T^2 + 2T + 1 = (T+1)^2
        assert!(matches!(FieldSpec::parse("3^2:0x7"), Err(Error::InvalidModulus(_))));
        assert!(FieldSpec::parse("3^2:0x5").is_ok()); // T^2 + T + 2
        assert!(matches!(FieldSpec::parse("12"), Err(Error::Parse(_))));
        assert!(matches!(FieldSpec::parse("x^2"), Err(Error::Parse(_))));
    }
}
