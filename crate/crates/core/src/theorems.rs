//! Closed-form evaluators and checkable consequences of the structure
//! theory: factor-degree lower bounds on [M : F_q(x)], the q^m = 1 (mod n)
//! feasibility test, the exact goodness count of shifted Dickson
//! polynomials, the square-shift count, and bounds for powers of linearized
//! polynomials.

use serde::{Deserialize, Serialize};

use crate::constructions::{annihilator, AdditiveSubgroup};
use crate::error::{Error, Result};
use crate::gf::FieldSpec;
use crate::numtheory::{divisors, gcd, lcm, mod_pow, multiplicative_order};
use crate::polyring::Poly;

/// Fields above this order are sampled instead of scanned in full.
pub const FULL_SCAN_LIMIT: u32 = 1 << 14;

/// Factor data of f(T) - c for one value c that has a root in F_q.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisibilityWitness {
    pub c: u32,
    pub degrees: Vec<usize>,
    pub multiplicities: Vec<u32>,
    pub has_simple_factor: bool,
    pub has_root: bool,
    /// lcm of the degrees (1 without a root).
    pub lcm_degrees: u64,
    /// lcm of the multiplicities (1 without a simple factor).
    pub lcm_multiplicities: u64,
}

/// Which values c to scan in [`galois_index_lower_bound`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScanPolicy {
    /// Every c when q <= [`FULL_SCAN_LIMIT`], else an evenly strided sample.
    Auto,
    All,
    Values(Vec<u32>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexLowerBound {
    pub bound: u64,
    pub witnesses: Vec<DivisibilityWitness>,
}

/// A provable lower bound (a divisor) of [M : F_q(x)] from the factor
/// degrees and multiplicities of f(T) - c over the scanned values c.
pub fn galois_index_lower_bound(f: &Poly, seed: u64, scan: &ScanPolicy) -> Result<IndexLowerBound> {
    if f.deg() < 1 || !f.is_monic() || f.coeff(0) != 0 {
        return Err(Error::NotNormalized);
    }
    let field = f.field();
    let q = field.q();
    let values: Vec<u32> = match scan {
        ScanPolicy::All => field.elements().collect(),
        ScanPolicy::Auto if q <= FULL_SCAN_LIMIT => field.elements().collect(),
        ScanPolicy::Auto => {
            let stride = q.div_ceil(FULL_SCAN_LIMIT);
            (0..q).step_by(stride as usize).collect()
        }
        ScanPolicy::Values(v) => {
            for &c in v {
                field.check(c as u64)?;
            }
            v.clone()
        }
    };
    let mut bound = 1;
    let mut witnesses = Vec::new();
    for c in values {
        let g = f.add_constant(field.neg(c));
        if g.count_distinct_roots()? == 0 {
            continue;
        }
        let fact = g.factor(seed)?;
        let degrees = fact.degrees();
        let multiplicities = fact.multiplicities();
        let has_simple_factor = multiplicities.contains(&1);
        let has_root = degrees.contains(&1);
        let lcm_degrees =
            if has_root { degrees.iter().fold(1, |acc, &d| lcm(acc, d as u64)) } else { 1 };
        let lcm_multiplicities = if has_simple_factor {
            multiplicities.iter().fold(1, |acc, &e| lcm(acc, e as u64))
        } else {
            1
        };
        bound = lcm(bound, lcm(lcm_degrees, lcm_multiplicities));
        witnesses.push(DivisibilityWitness {
            c,
            degrees,
            multiplicities,
            has_simple_factor,
            has_root,
            lcm_degrees,
            lcm_multiplicities,
        });
    }
    Ok(IndexLowerBound { bound, witnesses })
}

/// Whether q^m = 1 (mod n); a false answer rules out [M : F_q(x)] = m.
pub fn extension_feasibility(n: u64, q: u64, m: u64) -> Result<bool> {
    if n == 0 || gcd(n, q) != 1 {
        return Err(Error::NotCoprime { n, q });
    }
    Ok(mod_pow(q, m, n) == 1 % n)
}

/// Exact G(D_n(T, a) - D_n(0, a)) for n > 2 and gcd(n, q) = 1.
///
/// `eta` is the quadratic character of `a` (+1 or -1); it is ignored for
/// even q. Returns 0 when q is not +-1 mod n.
pub fn dickson_gamma_closed_form(q: u64, n: u64, eta: i8) -> Result<u64> {
    if n <= 2 {
        return Err(Error::Precondition(format!("n = {n} must exceed 2")));
    }
    if gcd(n, q) != 1 {
        return Err(Error::NotCoprime { n, q });
    }
    let odd = q % 2 == 1;
    if odd && eta != 1 && eta != -1 {
        return Err(Error::Precondition(format!("eta must be +1 or -1, got {eta}")));
    }
    let r = q % n;
    let plus_one = r == 1;
    let minus_one = r == n - 1;
    if !plus_one && !minus_one {
        return Ok(0);
    }
    Ok(if odd && plus_one && eta == 1 {
        (q - 3) / (2 * n)
    } else if odd && minus_one && eta == -1 {
        (q + 1) / (2 * n)
    } else {
        q / (2 * n)
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CountMode {
    ClosedForm,
    Brute,
}

/// Number of b in F_q with b^2 + c a nonzero square.
pub fn square_shift_count(field: &FieldSpec, c: u32, mode: CountMode) -> Result<u64> {
    if !field.is_odd() {
        return Err(Error::EvenCharacteristic);
    }
    field.check(c as u64)?;
    if c == 0 {
        return Err(Error::Precondition("c must be nonzero".into()));
    }
    let q = field.q() as u64;
    match mode {
        CountMode::ClosedForm => {
            let minus_c_square = field.quadratic_character(field.neg(c))? == 1;
            Ok(if minus_c_square { (q - 3) / 2 } else { (q - 1) / 2 })
        }
        CountMode::Brute => {
            let squares: std::collections::HashSet<u32> =
                field.elements().skip(1).map(|x| field.mul(x, x)).collect();
            Ok(field
                .elements()
                .filter(|&b| squares.contains(&field.add(field.mul(b, b), c)))
                .count() as u64)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearizedBoundsReport {
    pub k: u64,
    pub l: u32,
    pub p: u32,
    /// Largest e with B an F_{p^e}-vector space.
    pub e: u32,
    /// Degree of a primitive k-th root of unity over F_{p^e}.
    pub j: u64,
    /// Order of p mod k.
    pub d: u64,
    /// p^{l (j - 1)}, an upper bound on [M : F_q(x)].
    pub upper_bound: u128,
    /// Whether some u0 != 0 has u0 F_{p^d} inside the image of h, with
    /// p^{l + d} <= q; equivalent to f(T) - t0 splitting into distinct
    /// linear factors for some t0.
    pub split_exists: bool,
}

/// Bounds for f = h^k with h the annihilator of B.
pub fn linearized_bounds(k: u64, b: &AdditiveSubgroup) -> Result<LinearizedBoundsReport> {
    let field = b.field();
    let q = field.q() as u64;
    let p = field.p();
    if k == 0 || gcd(k, q) != 1 {
        return Err(Error::NotCoprime { n: k, q });
    }
    if !(q - 1).is_multiple_of(k) {
        return Err(Error::Precondition(format!("q = {q} is not 1 mod k = {k}")));
    }
    let l = b.dimension();
    let d = multiplicative_order(p as u64, k);
    let m = field.m();
    // {0} is a vector space over every subfield
    let span = if l == 0 { m as u64 } else { gcd(l as u64, m as u64) };
    let e = divisors(span)
        .into_iter()
        .rev()
        .find(|&e| b.is_stable_under(field.subfield_generator(e as u32)))
        .unwrap_or(1) as u32;
    let j = d / gcd(d, e as u64);
    let upper_bound = (p as u128).pow(l * (j as u32 - 1));

    let size_ok = (p as u64).pow(l + d as u32) <= q;
    let split_exists = size_ok && {
        let h = annihilator(b);
        let mut image = vec![false; q as usize];
        for a in field.elements() {
            image[h.eval(a) as usize] = true;
        }
        let small = field.subfield_elements(d as u32);
        (1..field.q()).any(|u0| small.iter().all(|&s| image[field.mul(u0, s) as usize]))
    };
    Ok(LinearizedBoundsReport { k, l, p, e, j, d, upper_bound, split_exists })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{dickson_shifted, linearized_power, DicksonParams};
    use crate::goodness::gamma;

    fn field(p: u64, m: u32) -> FieldSpec {
        FieldSpec::new(p, m, None).unwrap()
    }

    #[test]
    fn lower_bound_f19() {
        let f19 = field(19, 1);
        let f = Poly::new(&f19, vec![0, 1])
            .unwrap()
            .mul(&Poly::new(&f19, vec![1, 0, 1]).unwrap())
            .mul(&Poly::new(&f19, vec![1, 2, 0, 1]).unwrap());
        let lb = galois_index_lower_bound(&f, 0, &ScanPolicy::Values(vec![0])).unwrap();
        assert_eq!(lb.bound, 6);
        assert_eq!(lb.witnesses[0].degrees, vec![1, 2, 3]);
        let full = galois_index_lower_bound(&f, 0, &ScanPolicy::All).unwrap();
        assert_eq!(full.bound % 6, 0);
        assert!(galois_index_lower_bound(&f.add_constant(1), 0, &ScanPolicy::All).is_err());
    }

    #[test]
    fn lower_bound_split_value() {
        // T^3 over F_13: c = 1 splits into three simple linear factors
        let f13 = field(13, 1);
        let f = Poly::monomial(&f13, 1, 3);
        let lb = galois_index_lower_bound(&f, 0, &ScanPolicy::Values(vec![1])).unwrap();
        assert_eq!(lb.witnesses[0].lcm_degrees, 1);
        assert_eq!(lb.witnesses[0].lcm_multiplicities, 1);
        assert_eq!(lb.bound, 1);
    }

    #[test]
    fn feasibility_examples() {
        for q in [2u64, 3, 7, 13, 17, 23] {
            for m in 1..=3 {
                assert!(!extension_feasibility(5, q, m).unwrap(), "q={q} m={m}");
            }
        }
        assert!(extension_feasibility(5, 7, 4).unwrap());
        assert!(extension_feasibility(1, 7, 1).unwrap());
        assert!(extension_feasibility(5, 25, 1).is_err());
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(dickson_gamma_closed_form(31, 5, 1).unwrap(), 2);
        assert_eq!(dickson_gamma_closed_form(29, 5, -1).unwrap(), 3);
        assert_eq!(dickson_gamma_closed_form(31, 5, -1).unwrap(), 3);
        assert_eq!(dickson_gamma_closed_form(64, 5, 0).unwrap(), 6);
        assert_eq!(dickson_gamma_closed_form(7, 5, 1).unwrap(), 0);
        assert!(dickson_gamma_closed_form(31, 2, 1).is_err());
        assert!(dickson_gamma_closed_form(25, 5, 1).is_err());
    }

    #[test]
    fn closed_form_matches_brute_examples() {
        let cases = [(31u64, 5u32, 1i8), (29, 5, -1), (31, 5, -1)];
        for (q, n, want_eta) in cases {
            let f = field(q, 1);
            let a = (1..f.q()).find(|&a| f.quadratic_character(a).unwrap() == want_eta).unwrap();
            let g = dickson_shifted(&DicksonParams::new(n, f.element(a as u64).unwrap()).unwrap());
            assert_eq!(gamma(&g).unwrap(), dickson_gamma_closed_form(q, n as u64, want_eta).unwrap());
        }
    }

    #[test]
    fn square_shift_examples() {
        let f7 = field(7, 1);
        assert_eq!(square_shift_count(&f7, 6, CountMode::Brute).unwrap(), 2);
        assert_eq!(square_shift_count(&f7, 6, CountMode::ClosedForm).unwrap(), 2);
        assert_eq!(square_shift_count(&f7, 1, CountMode::Brute).unwrap(), 3);
        assert_eq!(square_shift_count(&f7, 1, CountMode::ClosedForm).unwrap(), 3);
        assert!(square_shift_count(&f7, 0, CountMode::Brute).is_err());
        assert!(square_shift_count(&field(2, 3), 1, CountMode::Brute).is_err());
    }

    #[test]
    fn linearized_example_q64() {
        let f64 = field(2, 6);
        let b = AdditiveSubgroup::span(&f64, &[2]).unwrap();
        let r = linearized_bounds(3, &b).unwrap();
        assert_eq!((r.d, r.e, r.j, r.upper_bound), (2, 1, 2, 2));
        assert!(r.split_exists);
        assert_eq!(gamma(&linearized_power(3, &b).unwrap()).unwrap() > 0, r.split_exists);
    }

    #[test]
    fn linearized_subfield_hits_lower_bound() {
        let f64 = field(2, 6);
        for l in [1u32, 2, 3] {
            let b = AdditiveSubgroup::subfield(&f64, l).unwrap();
            let r = linearized_bounds(3, &b).unwrap();
            assert_eq!(r.e, l);
            assert_eq!(r.j, r.d / gcd(r.d, l as u64));
        }
        let zero = AdditiveSubgroup::span(&f64, &[]).unwrap();
        let r = linearized_bounds(7, &zero).unwrap();
        assert_eq!((r.j, r.upper_bound), (1, 1));
        assert!(linearized_bounds(5, &zero).is_err());
    }
}
