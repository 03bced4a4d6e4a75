//! Polynomial families with small Galois groups: subgroup annihilators,
//! twisted powers `(h(T) + c)^k - c^k`, Dickson polynomials, and powers of
//! linearized polynomials.

use crate::error::{Error, Result};
use crate::gf::{ExtElement, FieldElement, FieldSpec, QuadraticExtension, RootOfUnity};
use crate::numtheory::{gcd, mod_pow};
use crate::polyring::Poly;

/// An F_p-subspace of F_q given by a basis.
#[derive(Clone, Debug)]
pub struct AdditiveSubgroup {
    field: FieldSpec,
    basis: Vec<u32>,
    /// Sorted members.
    members: Vec<u32>,
}

impl AdditiveSubgroup {
    /// Spans `basis` over F_p; rejects dependent bases.
    pub fn span(field: &FieldSpec, basis: &[u32]) -> Result<Self> {
        for &b in basis {
            field.check(b as u64)?;
        }
        if rank_over_prime_field(field, basis) != basis.len() {
            return Err(Error::Precondition("basis is not F_p-linearly independent".into()));
        }
        let mut members = vec![0u32];
        for &b in basis {
            let mut next = Vec::with_capacity(members.len() * field.p() as usize);
            let mut multiple = 0u32;
            for _ in 0..field.p() {
                next.extend(members.iter().map(|&x| field.add(x, multiple)));
                multiple = field.add(multiple, b);
            }
            members = next;
        }
        members.sort_unstable();
        Ok(AdditiveSubgroup { field: field.clone(), basis: basis.to_vec(), members })
    }

    /// The subfield F_{p^e} viewed as an additive subgroup.
    pub fn subfield(field: &FieldSpec, e: u32) -> Result<Self> {
        if e == 0 || !field.m().is_multiple_of(e) {
            return Err(Error::Precondition(format!("F_(p^{e}) is not a subfield of F_q")));
        }
        let g = field.subfield_generator(e);
        let basis: Vec<u32> = (0..e).map(|i| field.pow(g, i as u64)).collect();
        Self::span(field, &basis)
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn basis(&self) -> &[u32] {
        &self.basis
    }

    pub fn members(&self) -> &[u32] {
        &self.members
    }

    /// l, with |B| = p^l.
    pub fn dimension(&self) -> u32 {
        self.basis.len() as u32
    }

    pub fn contains(&self, x: u32) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    /// Whether cB = B.
    pub fn is_stable_under(&self, c: u32) -> bool {
        self.members.iter().all(|&b| self.contains(self.field.mul(c, b)))
    }
}

/// Rank of field elements viewed as coordinate vectors over F_p.
pub(crate) fn rank_over_prime_field(field: &FieldSpec, elements: &[u32]) -> usize {
    let p = field.p() as u64;
    let mut rows: Vec<Vec<u64>> =
        elements.iter().map(|&e| field.coords(e).into_iter().map(u64::from).collect()).collect();
    let cols = field.m() as usize;
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = mod_pow(rows[rank][col], p - 2, p);
        for v in rows[rank].iter_mut() {
            *v = *v * inv % p;
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][col] != 0 {
                let factor = rows[r][col];
                for c in 0..cols {
                    rows[r][c] = (rows[r][c] + p * p - factor * rows[rank][c]) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// `prod_{b in B} (T - b)`; an F_p-linearized polynomial of degree p^l.
pub fn annihilator(b: &AdditiveSubgroup) -> Poly {
    Poly::from_roots(&b.field, &b.members)
}

/// True iff {w b : b in B} = B.
pub fn omega_stabilizes(b: &AdditiveSubgroup, omega: &FieldElement) -> Result<bool> {
    if !omega.field().same_field(&b.field) {
        return Err(Error::FieldMismatch);
    }
    Ok(b.is_stable_under(omega.code()))
}

/// `g^((q-1)/k)` for the encoding-minimal generator g; requires k | q - 1.
pub fn primitive_root_of_unity(field: &FieldSpec, k: u64) -> Result<FieldElement> {
    let q = field.q() as u64;
    if k == 0 || !(q - 1).is_multiple_of(k) {
        return Err(Error::Precondition(format!("q = {q} is not 1 mod k = {k}")));
    }
    field.element(field.pow(field.generator(), (q - 1) / k) as u64)
}

/// `(h(T) + c)^k - c^k` with h the annihilator of B and c = h(alpha).
pub fn prop1_polynomial(k: u64, b: &AdditiveSubgroup, alpha: &FieldElement) -> Result<Poly> {
    let field = &b.field;
    if !alpha.field().same_field(field) {
        return Err(Error::FieldMismatch);
    }
    let q = field.q() as u64;
    let pl = (field.p() as u64).pow(b.dimension());
    if k == 0 || !(q - 1).is_multiple_of(k) {
        return Err(Error::Precondition(format!("q = {q} is not 1 mod k = {k}")));
    }
    if !(pl - 1).is_multiple_of(k) {
        return Err(Error::Precondition(format!("p^l = {pl} is not 1 mod k = {k}")));
    }
    let omega = primitive_root_of_unity(field, k)?;
    if !omega_stabilizes(b, &omega)? {
        return Err(Error::Precondition("omega B != B for a primitive k-th root omega".into()));
    }
    let h = annihilator(b);
    let c = h.eval(alpha.code());
    Ok(h.add_constant(c).pow(k).add_constant(field.neg(field.pow(c, k))))
}

/// `h(T)^k` for h the annihilator of B; requires q = 1 mod k.
pub fn linearized_power(k: u64, b: &AdditiveSubgroup) -> Result<Poly> {
    let q = b.field.q() as u64;
    if k == 0 || !(q - 1).is_multiple_of(k) {
        return Err(Error::Precondition(format!("q = {q} is not 1 mod k = {k}")));
    }
    Ok(annihilator(b).pow(k))
}

/// Parameters of the Dickson polynomial D_n(T, a).
#[derive(Clone, Debug)]
pub struct DicksonParams {
    pub n: u32,
    pub a: FieldElement,
}

impl DicksonParams {
    pub fn new(n: u32, a: FieldElement) -> Result<Self> {
        if n == 0 {
            return Err(Error::Precondition("Dickson degree must be at least 1".into()));
        }
        Ok(DicksonParams { n, a })
    }
}

/// D_n(T, a) via D_0 = 2, D_1 = T, D_n = T D_{n-1} - a D_{n-2}.
pub fn dickson(params: &DicksonParams) -> Poly {
    let field = params.a.field();
    let a = params.a.code();
    let mut prev = Poly::constant(field, field.from_int(2));
    let mut cur = Poly::x(field);
    if params.n == 0 {
        return prev;
    }
    let t = Poly::x(field);
    for _ in 1..params.n {
        let next = t.mul(&cur).sub(&prev.scale(a));
        prev = cur;
        cur = next;
    }
    cur
}

/// D_n(T, a) - D_n(0, a).
pub fn dickson_shifted(params: &DicksonParams) -> Poly {
    let d = dickson(params);
    d.add_constant(d.field().neg(d.coeff(0)))
}

/// Integer coefficient n/(n-i) * C(n-i, i) of the closed Dickson sum.
fn dickson_sum_coefficient(n: u64, i: u64) -> u128 {
    let mut binom: u128 = 1;
    for j in 0..i {
        binom = binom * (n - i - j) as u128 / (j + 1) as u128;
    }
    let num = n as u128 * binom;
    debug_assert_eq!(num % (n - i) as u128, 0);
    num / (n - i) as u128
}

/// D_n(T, a) from the closed sum over i <= n/2, with integer coefficients
/// reduced mod p. Independent of the recurrence.
pub fn dickson_sum_formula(params: &DicksonParams) -> Poly {
    let field = params.a.field();
    let n = params.n as u64;
    let p = field.p() as u128;
    let neg_a = field.neg(params.a.code());
    let mut coeffs = vec![0u32; n as usize + 1];
    for i in 0..=n / 2 {
        let c = (dickson_sum_coefficient(n, i) % p) as u32;
        coeffs[(n - 2 * i) as usize] = field.mul(c, field.pow(neg_a, i));
    }
    Poly::from_raw(field, coeffs)
}

/// Expands `T prod (T^2 + a (w^i - w^-i)^2)` (odd n) or
/// `T^2 prod (...)` (even n) over F_{q^2} with w a primitive n-th root of
/// unity, and returns it as a polynomial over F_q. Equals D_n(T, a) for odd n
/// and D_n(T, a) - D_n(0, a) for even n.
pub fn dickson_product_form(params: &DicksonParams) -> Result<Poly> {
    let field = params.a.field();
    let n = params.n as u64;
    let q = field.q() as u64;
    if gcd(n, q) != 1 {
        return Err(Error::NotCoprime { n, q });
    }
    // Work in F_{q^2} even when w lies in F_q, so one code path serves both.
    let (ext, w) = match field.nth_root_of_unity(n)? {
        RootOfUnity::Base(w) => {
            let ext = QuadraticExtension::new(field);
            let w = ext.embed(w.code());
            (ext, w)
        }
        RootOfUnity::Extension { ext, root } => (ext, root),
    };
    let a = ext.embed(params.a.code());
    let w_inv = ext.inv(w).expect("roots of unity are nonzero");
    let (lead, pairs) = if n % 2 == 1 { (1, (n - 1) / 2) } else { (2, n / 2 - 1) };
    let mut acc: Vec<ExtElement> = vec![ext.zero(); lead];
    acc.push(ext.one());
    for i in 1..=pairs {
        let diff = ext.sub(ext.pow(w, i), ext.pow(w_inv, i));
        let constant = ext.mul(a, ext.mul(diff, diff));
        acc = ext_poly_mul(&ext, &acc, &[constant, ext.zero(), ext.one()]);
    }
    let coeffs = acc
        .into_iter()
        .map(|c| {
            ext.to_base(c)
                .ok_or_else(|| Error::Precondition("product form has a coefficient outside F_q".into()))
        })
        .collect::<Result<Vec<u32>>>()?;
    Ok(Poly::from_raw(field, coeffs))
}

fn ext_poly_mul(ext: &QuadraticExtension, a: &[ExtElement], b: &[ExtElement]) -> Vec<ExtElement> {
    let mut out = vec![ext.zero(); a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = ext.add(out[i + j], ext.mul(x, y));
        }
    }
    out
}

/// The affine change `f = scale * g + shift` applied by [`normalize`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineRecord {
    pub scale: u32,
    pub shift: u32,
}

/// Makes f monic with f(0) = 0: returns `lc(f)^-1 (f - f(0))`.
pub fn normalize(f: &Poly) -> Result<(Poly, AffineRecord)> {
    if f.deg() < 1 {
        return Err(Error::Degree { degree: f.deg(), reason: "cannot normalize a constant".into() });
    }
    let field = f.field();
    let shift = f.coeff(0);
    let scale = f.leading();
    let g = f.add_constant(field.neg(shift)).monic();
    Ok((g, AffineRecord { scale, shift }))
}
