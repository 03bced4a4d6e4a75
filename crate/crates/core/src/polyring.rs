//! Dense univariate polynomials over F_q and their factorization.
//!
//! Factorization runs squarefree decomposition, distinct-degree splitting and
//! randomized equal-degree splitting (Cantor-Zassenhaus for odd q, the trace
//! splitter for even q). Randomness comes from an explicit seed.

use std::cmp::Ordering;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gf::{FieldElement, FieldSpec};

const EDF_ATTEMPTS: u32 = 64;

/// Polynomial over a [`FieldSpec`], coefficients constant-first, no trailing
/// zeros. The zero polynomial has no coefficients.
#[derive(Clone)]
pub struct Poly {
    field: FieldSpec,
    coeffs: Vec<u32>,
}

impl Poly {
    /// Builds a polynomial from coefficient encodings, trimming trailing zeros.
    pub fn new(field: &FieldSpec, coeffs: Vec<u32>) -> Result<Self> {
        for &c in &coeffs {
            field.check(c as u64)?;
        }
        Ok(Self::from_raw(field, coeffs))
    }

    pub(crate) fn from_raw(field: &FieldSpec, mut coeffs: Vec<u32>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { field: field.clone(), coeffs }
    }

    pub fn zero(field: &FieldSpec) -> Self {
        Poly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &FieldSpec) -> Self {
        Self::constant(field, 1)
    }

    pub fn constant(field: &FieldSpec, c: u32) -> Self {
        Self::from_raw(field, vec![c])
    }

    /// The monomial `c T^k`.
    pub fn monomial(field: &FieldSpec, c: u32, k: usize) -> Self {
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = c;
        Self::from_raw(field, coeffs)
    }

    /// `T`.
    pub fn x(field: &FieldSpec) -> Self {
        Self::monomial(field, 1, 1)
    }

    /// Monic polynomial with the given roots.
    pub fn from_roots(field: &FieldSpec, roots: &[u32]) -> Self {
        let mut acc = Self::one(field);
        for &r in roots {
            acc = acc.mul(&Self::from_raw(field, vec![field.neg(r), 1]));
        }
        acc
    }

    /// Parses either the comma-separated coefficient form (constant first,
    /// canonical codes) or an expression in `T` such as `(T^4-T)^3`, where
    /// integer literals stand for multiples of 1.
    pub fn parse(field: &FieldSpec, s: &str) -> Result<Self> {
        if s.contains(|c: char| matches!(c, 'T' | 'x' | '(' | '^' | '+' | '*') || s.trim().starts_with('-')) {
            return expr::parse(field, s);
        }
        let coeffs = s
            .split(',')
            .map(|t| {
                let t = t.trim();
                t.parse::<u32>().map_err(|e| Error::Parse(format!("coefficient '{t}': {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(field, coeffs)
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u32 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to -1.
    pub fn deg(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn leading(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    fn check_same(&self, other: &Poly) -> Result<()> {
        if self.field.same_field(&other.field) {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect();
        Self::from_raw(f, coeffs)
    }

    pub fn neg(&self) -> Poly {
        let f = &self.field;
        Poly { field: f.clone(), coeffs: self.coeffs.iter().map(|&c| f.neg(c)).collect() }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| f.sub(self.coeff(i), other.coeff(i))).collect();
        Self::from_raw(f, coeffs)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return Self::zero(f);
        }
        let mut out = vec![0u32; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                if b != 0 {
                    out[i + j] = f.add(out[i + j], f.mul(a, b));
                }
            }
        }
        Self::from_raw(f, out)
    }

    pub fn scale(&self, c: u32) -> Poly {
        let f = &self.field;
        Self::from_raw(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    /// Adds a constant.
    pub fn add_constant(&self, c: u32) -> Poly {
        let f = &self.field;
        let mut coeffs = self.coeffs.clone();
        if coeffs.is_empty() {
            coeffs.push(0);
        }
        coeffs[0] = f.add(coeffs[0], c);
        Self::from_raw(f, coeffs)
    }

    /// Checked ring operations, rejecting operands from different fields.
    pub fn try_add(&self, other: &Poly) -> Result<Poly> {
        self.check_same(other)?;
        Ok(self.add(other))
    }

    pub fn try_sub(&self, other: &Poly) -> Result<Poly> {
        self.check_same(other)?;
        Ok(self.sub(other))
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly> {
        self.check_same(other)?;
        Ok(self.mul(other))
    }

    /// Euclidean division: `(quotient, remainder)` with deg r < deg g.
    pub fn divrem(&self, g: &Poly) -> Result<(Poly, Poly)> {
        self.check_same(g)?;
        if g.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let f = &self.field;
        let dg = g.coeffs.len() - 1;
        if self.coeffs.len() <= dg {
            return Ok((Self::zero(f), self.clone()));
        }
        let inv_lead = f.inv(g.leading()).expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u32; rem.len() - dg];
        for top in (dg..rem.len()).rev() {
            let c = rem[top];
            if c == 0 {
                continue;
            }
            let factor = f.mul(c, inv_lead);
            quot[top - dg] = factor;
            for (i, &gc) in g.coeffs.iter().enumerate() {
                if gc != 0 {
                    let k = top - dg + i;
                    rem[k] = f.sub(rem[k], f.mul(factor, gc));
                }
            }
        }
        rem.truncate(dg);
        Ok((Self::from_raw(f, quot), Self::from_raw(f, rem)))
    }

    pub fn rem(&self, g: &Poly) -> Result<Poly> {
        self.divrem(g).map(|(_, r)| r)
    }

    /// Exact quotient; callers guarantee divisibility.
    fn exact_div(&self, g: &Poly) -> Poly {
        let (q, r) = self.divrem(g).expect("nonzero divisor");
        debug_assert!(r.is_zero(), "inexact division");
        q
    }

    pub fn monic(&self) -> Poly {
        match self.field.inv(self.leading()) {
            Some(inv) => self.scale(inv),
            None => self.clone(),
        }
    }

    /// Horner evaluation at an element code.
    pub fn eval(&self, a: u32) -> u32 {
        let f = &self.field;
        self.coeffs.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, a), c))
    }

    pub fn evaluate(&self, a: &FieldElement) -> Result<FieldElement> {
        if !a.field().same_field(&self.field) {
            return Err(Error::FieldMismatch);
        }
        self.field.element(self.eval(a.code()) as u64)
    }

    pub fn derivative(&self) -> Poly {
        let f = &self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| f.mul(c, f.from_int((i % f.p() as usize) as i64)))
            .collect();
        Self::from_raw(f, coeffs)
    }

    /// `self(g(T))` by Horner's scheme over polynomials.
    pub fn compose(&self, g: &Poly) -> Result<Poly> {
        self.check_same(g)?;
        let f = &self.field;
        Ok(self
            .coeffs
            .iter()
            .rev()
            .fold(Self::zero(f), |acc, &c| acc.mul(g).add_constant(c)))
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        let mut acc = Self::one(&self.field);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// `self^e mod m`.
    pub fn powmod(&self, mut e: u64, m: &Poly) -> Poly {
        let mut acc = Self::one(&self.field).rem(m).expect("nonzero modulus");
        let mut base = self.rem(m).expect("nonzero modulus");
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m).expect("nonzero modulus");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).rem(m).expect("nonzero modulus");
            }
        }
        acc
    }

    /// Monic gcd by Euclid's algorithm.
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        self.check_same(other)?;
        if self.is_zero() && other.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// `T^{q^j} mod self`, by `j` successive q-th powers.
    pub fn frobenius_power(&self, j: u32) -> Result<Poly> {
        if self.deg() < 1 {
            return Err(Error::Degree { degree: self.deg(), reason: "modulus must be non-constant".into() });
        }
        let q = self.field.q() as u64;
        let mut x = Self::x(&self.field).rem(self)?;
        for _ in 0..j {
            x = x.powmod(q, self);
        }
        Ok(x)
    }

    /// Number of distinct roots in F_q: deg gcd(f, T^q - T).
    pub fn count_distinct_roots(&self) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if self.deg() == 0 {
            return Ok(0);
        }
        let h = self.frobenius_power(1)?.sub(&Self::x(&self.field));
        Ok(self.gcd(&h)?.deg() as usize)
    }

    /// Whether every coefficient sits at an exponent divisible by p.
    pub fn is_pth_power_form(&self) -> bool {
        let p = self.field.p() as usize;
        self.coeffs.iter().enumerate().all(|(i, &c)| c == 0 || i % p == 0)
    }

    /// For `self` in F_q[T^p], the g with g^p = self.
    fn pth_root(&self) -> Poly {
        let f = &self.field;
        let p = f.p() as usize;
        let root_exp = (f.p() as u64).pow(f.m() - 1);
        let coeffs = self.coeffs.iter().step_by(p).map(|&c| f.pow(c, root_exp)).collect();
        Self::from_raw(f, coeffs)
    }

    /// Squarefree decomposition of a monic polynomial: (squarefree part,
    /// multiplicity) pairs whose product with multiplicities is `self`.
    pub fn squarefree_decomposition(&self) -> Vec<(Poly, u32)> {
        let f = &self.field;
        let mut out = Vec::new();
        if self.deg() < 1 {
            return out;
        }
        let p = f.p();
        let d = self.derivative();
        let mut c = self.gcd(&d).expect("nonzero input");
        let mut w = self.exact_div(&c);
        let mut i = 1u32;
        while !w.is_one() {
            let y = w.gcd(&c).expect("nonzero");
            let z = w.exact_div(&y);
            if z.deg() > 0 {
                out.push((z, i));
            }
            i += 1;
            w = y;
            c = c.exact_div(&w);
        }
        if !c.is_one() {
            for (g, e) in c.pth_root().squarefree_decomposition() {
                out.push((g, e * p));
            }
        }
        out
    }

    /// Distinct-degree split of a monic squarefree polynomial into
    /// (product of all irreducible factors of degree d, d).
    pub fn distinct_degree_factorization(&self) -> Vec<(Poly, usize)> {
        let f = &self.field;
        let q = f.q() as u64;
        let mut out = Vec::new();
        let mut rest = self.clone();
        let x = Self::x(f);
        let mut h = x.rem(&rest).expect("nonzero");
        let mut d = 1;
        while rest.deg() >= 2 * d as i64 {
            h = h.powmod(q, &rest);
            let g = rest.gcd(&h.sub(&x)).expect("nonzero");
            if !g.is_one() {
                rest = rest.exact_div(&g);
                h = h.rem(&rest).expect("nonzero");
                out.push((g, d));
            }
            d += 1;
        }
        if rest.deg() > 0 {
            let deg = rest.deg() as usize;
            out.push((rest, deg));
        }
        out
    }

    /// Splits a monic product of distinct degree-`d` irreducibles.
    pub fn equal_degree_factorization(&self, d: usize, rng: &mut impl Rng) -> Result<Vec<Poly>> {
        let n = self.deg() as usize;
        if n == d {
            return Ok(vec![self.clone()]);
        }
        let f = &self.field;
        let q = f.q() as u64;
        for _ in 0..EDF_ATTEMPTS {
            let a = Self::from_raw(f, (0..n).map(|_| rng.gen_range(0..f.q())).collect());
            if a.deg() < 1 {
                continue;
            }
            let b = if f.is_odd() {
                // a^((q^d - 1)/2) = (a * a^q * ... * a^(q^(d-1)))^((q-1)/2)
                let mut norm = a.clone();
                let mut conj = a.clone();
                for _ in 1..d {
                    conj = conj.powmod(q, self);
                    norm = norm.mul(&conj).rem(self)?;
                }
                norm.powmod((q - 1) / 2, self).sub(&Self::one(f))
            } else {
                // absolute trace sum_{i < m d} a^(2^i)
                let steps = f.m() as usize * d;
                let mut acc = Self::zero(f);
                let mut t = a.rem(self)?;
                for _ in 0..steps {
                    acc = acc.add(&t);
                    t = t.mul(&t).rem(self)?;
                }
                acc
            };
            if b.is_zero() {
                continue;
            }
            let g = self.gcd(&b)?;
            if g.deg() > 0 && g.deg() < n as i64 {
                let mut out = g.equal_degree_factorization(d, rng)?;
                out.extend(self.exact_div(&g).equal_degree_factorization(d, rng)?);
                return Ok(out);
            }
        }
        Err(Error::SplittingFailed(EDF_ATTEMPTS))
    }

    /// Complete factorization into monic irreducibles; deterministic in `seed`.
    pub fn factor(&self, seed: u64) -> Result<Factorization> {
        if self.deg() < 1 {
            return Err(Error::Degree { degree: self.deg(), reason: "cannot factor a constant".into() });
        }
        let f = &self.field;
        let unit = self.leading();
        let monic = self.monic();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut factors: Vec<(Poly, u32)> = Vec::new();
        for (part, mult) in monic.squarefree_decomposition() {
            for (block, d) in part.distinct_degree_factorization() {
                for g in block.equal_degree_factorization(d, &mut rng)? {
                    factors.push((g, mult));
                }
            }
        }
        factors.sort_by(|a, b| canonical_cmp(&a.0, &b.0));
        let mut merged: Vec<(Poly, u32)> = Vec::with_capacity(factors.len());
        for (g, e) in factors {
            match merged.last_mut() {
                Some((h, m)) if h.coeffs == g.coeffs => *m += e,
                _ => merged.push((g, e)),
            }
        }
        Ok(Factorization { unit: f.element(unit as u64)?, factors: merged })
    }

    /// Roots in F_q with multiplicities, sorted by encoding.
    pub fn roots(&self, seed: u64) -> Result<Vec<(u32, u32)>> {
        let fact = self.factor(seed)?;
        let f = &self.field;
        let mut roots: Vec<(u32, u32)> = fact
            .factors
            .iter()
            .filter(|(g, _)| g.deg() == 1)
            .map(|(g, e)| (f.neg(g.coeffs[0]), *e))
            .collect();
        roots.sort_unstable();
        Ok(roots)
    }

    /// Comma-separated coefficient encodings, constant first.
    pub fn to_text(&self) -> String {
        if self.coeffs.is_empty() {
            return "0".into();
        }
        self.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
    }
}

/// Order by degree, then by coefficient encoding read from the top.
pub fn canonical_cmp(a: &Poly, b: &Poly) -> Ordering {
    a.coeffs
        .len()
        .cmp(&b.coeffs.len())
        .then_with(|| a.coeffs.iter().rev().cmp(b.coeffs.iter().rev()))
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && self.field.same_field(&other.field)
    }
}

impl Eq for Poly {}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]", self.to_text())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c) {
                (0, _) => write!(f, "{c}")?,
                (1, 1) => write!(f, "T")?,
                (1, _) => write!(f, "{c}*T")?,
                (_, 1) => write!(f, "T^{i}")?,
                _ => write!(f, "{c}*T^{i}")?,
            }
        }
        Ok(())
    }
}

/// Irreducible factorization `unit * prod factor^multiplicity`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: FieldElement,
    /// Monic irreducible factors with multiplicities, in canonical order.
    pub factors: Vec<(Poly, u32)>,
}

impl Factorization {
    /// Multiplies the factorization back out.
    pub fn recompose(&self) -> Poly {
        let f = self.unit.field();
        self.factors
            .iter()
            .fold(Poly::constant(f, self.unit.code()), |acc, (g, e)| acc.mul(&g.pow(*e as u64)))
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.factors.iter().map(|(g, _)| g.deg() as usize).collect()
    }

    pub fn multiplicities(&self) -> Vec<u32> {
        self.factors.iter().map(|(_, e)| *e).collect()
    }
}

mod expr {
    //! Recursive-descent parser for polynomial expressions in T.

    use super::Poly;
    use crate::error::{Error, Result};
    use crate::gf::FieldSpec;

    struct Parser<'a> {
        field: &'a FieldSpec,
        chars: Vec<char>,
        pos: usize,
    }

    pub(super) fn parse(field: &FieldSpec, s: &str) -> Result<Poly> {
        let mut p = Parser { field, chars: s.chars().filter(|c| !c.is_whitespace()).collect(), pos: 0 };
        let out = p.sum()?;
        if p.pos != p.chars.len() {
            return Err(p.error("unexpected character"));
        }
        Ok(out)
    }

    impl Parser<'_> {
        fn peek(&self) -> Option<char> {
            self.chars.get(self.pos).copied()
        }

        fn error(&self, what: &str) -> Error {
            Error::Parse(format!("{what} at offset {} in polynomial expression", self.pos))
        }

        fn sum(&mut self) -> Result<Poly> {
            let mut acc = match self.peek() {
                Some('-') => {
                    self.pos += 1;
                    self.product()?.neg()
                }
                _ => self.product()?,
            };
            while let Some(op @ ('+' | '-')) = self.peek() {
                self.pos += 1;
                let rhs = self.product()?;
                acc = if op == '+' { acc.add(&rhs) } else { acc.sub(&rhs) };
            }
            Ok(acc)
        }

        fn product(&mut self) -> Result<Poly> {
            let mut acc = self.power()?;
            loop {
                match self.peek() {
                    Some('*') => {
                        self.pos += 1;
                        acc = acc.mul(&self.power()?);
                    }
                    // implicit multiplication: 3T, T(T+1), (T+1)(T+2)
                    Some(c) if c == '(' || c == 'T' || c == 'x' => acc = acc.mul(&self.power()?),
                    _ => return Ok(acc),
                }
            }
        }

        fn power(&mut self) -> Result<Poly> {
            let base = self.atom()?;
            if self.peek() == Some('^') {
                self.pos += 1;
                let e = self.integer()?;
                return Ok(base.pow(e));
            }
            Ok(base)
        }

        fn integer(&mut self) -> Result<u64> {
            let start = self.pos;
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                self.pos += 1;
            }
            if start == self.pos {
                return Err(self.error("expected an integer"));
            }
            let digits: String = self.chars[start..self.pos].iter().collect();
            digits.parse().map_err(|_| self.error("integer too large"))
        }

        fn atom(&mut self) -> Result<Poly> {
            match self.peek() {
                Some('T' | 'x') => {
                    self.pos += 1;
                    Ok(Poly::x(self.field))
                }
                Some('(') => {
                    self.pos += 1;
                    let inner = self.sum()?;
                    if self.peek() != Some(')') {
                        return Err(self.error("expected ')'"));
                    }
                    self.pos += 1;
                    Ok(inner)
                }
                Some(c) if c.is_ascii_digit() => {
                    let n = self.integer()?;
                    let p = self.field.p() as u64;
                    Ok(Poly::constant(self.field, self.field.from_int((n % p) as i64)))
                }
                _ => Err(self.error("expected T, an integer or '('")),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(p: u64, m: u32) -> FieldSpec {
        FieldSpec::new(p, m, None).unwrap()
    }

    fn poly(f: &FieldSpec, c: &[u32]) -> Poly {
        Poly::new(f, c.to_vec()).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        let f5 = field(5, 1);
        let prod = poly(&f5, &[1, 1]).mul(&poly(&f5, &[4, 1]));
        assert_eq!(prod.coeffs(), &[4, 0, 1]);
        let f3 = field(3, 1);
        let (q, r) = poly(&f3, &[0, 2, 0, 1]).divrem(&poly(&f3, &[1, 0, 1])).unwrap();
        assert_eq!(q.coeffs(), &[0, 1]);
        assert_eq!(r.coeffs(), &[0, 1]);
        let g = poly(&f3, &[2, 1]);
        assert_eq!(g.add(&Poly::zero(&f3)), g);
        assert_eq!(g.divrem(&Poly::zero(&f3)).unwrap_err(), Error::DivisionByZero);
        let f5b = field(5, 1);
        assert!(poly(&f5b, &[1]).try_add(&poly(&f3, &[1])).is_err());
    }

    #[test]
    fn evaluate_examples() {
        let f13 = field(13, 1);
        assert_eq!(poly(&f13, &[0, 0, 0, 1]).eval(3), 1);
        assert_eq!(poly(&f13, &[7]).eval(11), 7);
        let f64 = field(2, 6);
        let h = poly(&f64, &[0, 1, 0, 0, 1]);
        let f = h.pow(3);
        let cube = poly(&f64, &[0, 0, 0, 1]);
        let composed = cube.compose(&h).unwrap();
        assert_eq!(f, composed);
        for a in f64.elements() {
            let ha = h.eval(a);
            assert_eq!(f.eval(a), f64.mul(ha, f64.mul(ha, ha)));
        }
    }

    #[test]
    fn derivative_examples() {
        let f5 = field(5, 1);
        assert_eq!(poly(&f5, &[0, 2, 0, 1]).derivative().coeffs(), &[2, 0, 3]);
        let f3 = field(3, 1);
        assert!(poly(&f3, &[0, 0, 0, 1]).derivative().is_zero());
        let f2 = field(2, 1);
        let f = poly(&f2, &[0, 1, 0, 0, 1]).pow(3);
        let mut want = [0; 9];
        want[2] = 1;
        want[8] = 1;
        assert_eq!(f.derivative().coeffs(), &want[..]);
    }

    #[test]
    fn compose_examples() {
        let f2 = field(2, 1);
        let h = poly(&f2, &[0, 1, 0, 0, 1]);
        let t3 = poly(&f2, &[0, 0, 0, 1]);
        assert_eq!(t3.compose(&h).unwrap(), h.pow(3));
        assert_eq!(h.compose(&Poly::x(&f2)).unwrap(), h);
    }

    #[test]
    fn gcd_examples() {
        let f5 = field(5, 1);
        let a = poly(&f5, &[4, 0, 1]);
        let b = poly(&f5, &[3, 1, 1]);
        assert_eq!(a.gcd(&b).unwrap().coeffs(), &[4, 1]);
        assert_eq!(poly(&f5, &[2, 2]).gcd(&Poly::zero(&f5)).unwrap().coeffs(), &[1, 1]);
        let z = Poly::zero(&f5);
        assert_eq!(z.gcd(&z).unwrap_err(), Error::ZeroPolynomial);
        let f3 = field(3, 1);
        // T^2+1 and T^2+T+2 are distinct irreducibles over F_3
        assert!(poly(&f3, &[1, 0, 1]).gcd(&poly(&f3, &[2, 1, 1])).unwrap().is_one());
    }

    #[test]
    fn frobenius_examples() {
        let f3 = field(3, 1);
        assert!(poly(&f3, &[0, 0, 1]).frobenius_power(1).unwrap().is_zero());
        let big = Poly::monomial(&f3, 1, 5).add_constant(1);
        assert_eq!(big.frobenius_power(1).unwrap(), Poly::monomial(&f3, 1, 3));
        let f5 = field(5, 1);
        assert_eq!(poly(&f5, &[1, 0, 1]).frobenius_power(1).unwrap(), Poly::x(&f5));
        assert!(poly(&f5, &[3]).frobenius_power(1).is_err());
    }

    #[test]
    fn frobenius_matches_naive() {
        for (p, m) in [(2, 3), (3, 2), (2, 6), (7, 1)] {
            let f = field(p, m);
            let modulus = poly(&f, &[1, 2 % f.q(), 0, 1, 1]);
            let naive = Poly::monomial(&f, 1, f.q() as usize).rem(&modulus).unwrap();
            assert_eq!(modulus.frobenius_power(1).unwrap(), naive);
        }
    }

    #[test]
    fn root_counts() {
        let f3 = field(3, 1);
        assert_eq!(poly(&f3, &[0, 2, 0, 1]).count_distinct_roots().unwrap(), 3);
        assert_eq!(poly(&f3, &[1, 0, 1]).count_distinct_roots().unwrap(), 0);
        let f5 = field(5, 1);
        assert_eq!(poly(&f5, &[1, 0, 1]).count_distinct_roots().unwrap(), 2);
        assert!(Poly::zero(&f5).count_distinct_roots().is_err());
    }

    #[test]
    fn factor_examples() {
        let f19 = field(19, 1);
        let f = poly(&f19, &[0, 1]).mul(&poly(&f19, &[1, 0, 1])).mul(&poly(&f19, &[1, 2, 0, 1]));
        let fact = f.factor(0).unwrap();
        assert_eq!(fact.degrees(), vec![1, 2, 3]);
        assert_eq!(fact.multiplicities(), vec![1, 1, 1]);
        assert_eq!(fact.recompose(), f);

        let f2 = field(2, 1);
        let g = poly(&f2, &[0, 1, 0, 0, 1]).pow(3);
        let fact = g.factor(7).unwrap();
        let got: Vec<_> = fact.factors.iter().map(|(h, e)| (h.coeffs().to_vec(), *e)).collect();
        assert_eq!(got, vec![(vec![0, 1], 3), (vec![1, 1], 3), (vec![1, 1, 1], 3)]);

        let f3 = field(3, 1);
        let irr = poly(&f3, &[1, 0, 1]);
        let fact = irr.factor(1).unwrap();
        assert_eq!(fact.factors, vec![(irr.clone(), 1)]);
        assert!(Poly::constant(&f3, 2).factor(0).is_err());
    }

    #[test]
    fn factor_keeps_unit_and_pth_powers() {
        let f9 = field(3, 2);
        // 2 * (T^3 + 2T + 1)^3 * (T + 5) has a p-th power part
        let base = poly(&f9, &[1, 2, 0, 1]);
        let f = base.pow(3).mul(&poly(&f9, &[5, 1])).scale(2);
        let fact = f.factor(3).unwrap();
        assert_eq!(fact.unit.code(), 2);
        assert_eq!(fact.recompose(), f);
    }

    #[test]
    fn roots_examples() {
        let f7 = field(7, 1);
        assert_eq!(poly(&f7, &[6, 0, 0, 1]).roots(0).unwrap(), vec![(1, 1), (2, 1), (4, 1)]);
        let f5 = field(5, 1);
        assert_eq!(poly(&f5, &[3, 1]).pow(2).roots(0).unwrap(), vec![(2, 2)]);
        let f3 = field(3, 1);
        assert!(poly(&f3, &[1, 0, 1]).roots(0).unwrap().is_empty());
    }

    #[test]
    fn parse_and_display() {
        let f13 = field(13, 1);
        let f = Poly::parse(&f13, "0,0,0,1").unwrap();
        assert_eq!(f, Poly::monomial(&f13, 1, 3));
        assert_eq!(f.to_text(), "0,0,0,1");
        assert_eq!(f.to_string(), "T^3");
        assert!(Poly::parse(&f13, "0,13").is_err());
        assert!(Poly::parse(&f13, "a").is_err());
    }

    #[test]
    fn parse_expressions() {
        let f64 = FieldSpec::new(2, 6, None).unwrap();
        let f = Poly::parse(&f64, "(T^4-T)^3").unwrap();
        let g = Poly::new(&f64, vec![0, 1, 0, 0, 1]).unwrap().pow(3);
        assert_eq!(f, g);
        let f19 = FieldSpec::new(19, 1, None).unwrap();
        let a = Poly::parse(&f19, "T(T^2+1)(T^3+2T+1)").unwrap();
        let b = Poly::parse(&f19, "T * (T^2 + 1) * (T^3 + 2*T + 1)").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.deg(), 6);
        assert_eq!(Poly::parse(&f19, "-T+20").unwrap().coeffs(), &[1, 18]);
        assert_eq!(Poly::parse(&f19, "0,0,0,1").unwrap(), Poly::parse(&f19, "T^3").unwrap());
        for bad in ["(T+1", "T^", "T+*2", "T)"] {
            assert!(matches!(Poly::parse(&f19, bad), Err(Error::Parse(_))), "{bad}");
        }
    }
}
