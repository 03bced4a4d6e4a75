//! Text descriptors for polynomial families, as accepted by the CLI.
//!
//! ```text
//! dickson:n=5,a=3        D_5(T, 3); omit `a` to sweep a over F_q^*
//! dickson:n=3..12        degree ranges are inclusive
//! prop1:k=3,basis=1;2    (h(T) + h(alpha))^k - h(alpha)^k, alpha defaults to 0
//! linpow:k=3,basis=9     h(T)^k
//! monomial:n=4           T^n
//! exhaustive:max-degree=3  every monic f with f(0) = 0 and deg f = 3
//! ```
//!
//! Degree ranges are clipped to degrees below q, since G(f) is only defined
//! there. Members that violate a construction's congruence conditions are
//! reported as errors rather than skipped.

use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use serde::Serialize;

use crate::constructions::{
    dickson, linearized_power, prop1_polynomial, AdditiveSubgroup, DicksonParams,
};
use crate::error::{Error, Result};
use crate::gf::FieldSpec;
use crate::polyring::Poly;

/// Largest number of candidates an exhaustive family may produce.
pub const EXHAUSTIVE_GUARD: u64 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    Dickson { n: RangeInclusive<u32>, a: Option<u32> },
    Prop1 { k: u64, basis: Vec<u32>, alpha: u32 },
    Linpow { k: u64, basis: Vec<u32> },
    Monomial { n: RangeInclusive<u32> },
    Exhaustive { max_degree: u32 },
}

/// One generated polynomial with the parameters that produced it.
#[derive(Clone, Debug, Serialize)]
pub struct Member {
    pub params: BTreeMap<String, u64>,
    #[serde(skip)]
    pub poly: Poly,
}

fn parse_range(s: &str) -> Result<RangeInclusive<u32>> {
    let num = |t: &str| {
        t.trim().parse::<u32>().map_err(|e| Error::Parse(format!("bad integer '{t}': {e}")))
    };
    match s.split_once("..") {
        Some((lo, hi)) => Ok(num(lo)?..=num(hi)?),
        None => {
            let n = num(s)?;
            Ok(n..=n)
        }
    }
}

fn parse_int<T: std::str::FromStr>(key: &str, s: &str) -> Result<T>
where
    T::Err: std::fmt::Display,
{
    s.trim().parse::<T>().map_err(|e| Error::Parse(format!("bad value for {key}: '{s}': {e}")))
}

fn parse_basis(s: &str) -> Result<Vec<u32>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(';').map(|t| parse_int("basis", t)).collect()
}

impl Family {
    pub fn parse(s: &str) -> Result<Family> {
        let (kind, rest) = s.split_once(':').unwrap_or((s, ""));
        let mut args: BTreeMap<&str, &str> = BTreeMap::new();
        for part in rest.split(',').filter(|p| !p.trim().is_empty()) {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value, got '{part}'")))?;
            if args.insert(key.trim(), value.trim()).is_some() {
                return Err(Error::Parse(format!("duplicate key '{key}'")));
            }
        }
        let allowed: &[&str] = match kind.trim() {
            "dickson" => &["n", "a"],
            "prop1" => &["k", "basis", "alpha"],
            "linpow" => &["k", "basis"],
            "monomial" => &["n"],
            "exhaustive" => &["max-degree"],
            other => return Err(Error::Parse(format!("unknown family '{other}'"))),
        };
        if let Some(key) = args.keys().find(|k| !allowed.contains(k)) {
            return Err(Error::Parse(format!("unknown key '{key}' for family '{kind}'")));
        }
        let need = |key: &str| {
            args.get(key).copied().ok_or_else(|| Error::Parse(format!("family '{kind}' needs '{key}'")))
        };
        Ok(match kind.trim() {
            "dickson" => Family::Dickson {
                n: parse_range(need("n")?)?,
                a: args.get("a").map(|v| parse_int("a", v)).transpose()?,
            },
            "prop1" => Family::Prop1 {
                k: parse_int("k", need("k")?)?,
                basis: parse_basis(need("basis")?)?,
                alpha: args.get("alpha").map(|v| parse_int("alpha", v)).transpose()?.unwrap_or(0),
            },
            "linpow" => Family::Linpow {
                k: parse_int("k", need("k")?)?,
                basis: parse_basis(need("basis")?)?,
            },
            "monomial" => Family::Monomial { n: parse_range(need("n")?)? },
            _ => Family::Exhaustive { max_degree: parse_int("max-degree", need("max-degree")?)? },
        })
    }

    /// Generates the members over `field`, in parameter order.
    pub fn generate(&self, field: &FieldSpec) -> Result<Vec<Member>> {
        let q = field.q();
        let below_q = |r: &RangeInclusive<u32>| *r.start()..=(*r.end()).min(q.saturating_sub(1));
        let params = |pairs: &[(&str, u64)]| -> BTreeMap<String, u64> {
            pairs.iter().map(|&(k, v)| (k.to_string(), v)).collect()
        };
        match self {
            Family::Dickson { n, a } => {
                let values: Vec<u32> = match a {
                    Some(a) => {
                        field.check(*a as u64)?;
                        vec![*a]
                    }
                    None => (1..q).collect(),
                };
                let mut out = Vec::new();
                for n in below_q(n).filter(|&n| n >= 1) {
                    for &a in &values {
                        let p = DicksonParams::new(n, field.element(a as u64)?)?;
                        out.push(Member {
                            params: params(&[("n", n as u64), ("a", a as u64)]),
                            poly: dickson(&p),
                        });
                    }
                }
                Ok(out)
            }
            Family::Prop1 { k, basis, alpha } => {
                let b = AdditiveSubgroup::span(field, basis)?;
                let poly = prop1_polynomial(*k, &b, &field.element(*alpha as u64)?)?;
                Ok(vec![Member {
                    params: params(&[("k", *k), ("l", b.dimension() as u64), ("alpha", *alpha as u64)]),
                    poly,
                }])
            }
            Family::Linpow { k, basis } => {
                let b = AdditiveSubgroup::span(field, basis)?;
                Ok(vec![Member {
                    params: params(&[("k", *k), ("l", b.dimension() as u64)]),
                    poly: linearized_power(*k, &b)?,
                }])
            }
            Family::Monomial { n } => Ok(below_q(n)
                .filter(|&n| n >= 1)
                .map(|n| Member {
                    params: params(&[("n", n as u64)]),
                    poly: Poly::monomial(field, 1, n as usize),
                })
                .collect()),
            Family::Exhaustive { max_degree } => exhaustive(field, *max_degree),
        }
    }
}

/// All monic f of degree exactly `degree` with f(0) = 0: q^(degree - 1) of them.
fn exhaustive(field: &FieldSpec, degree: u32) -> Result<Vec<Member>> {
    let q = field.q() as u64;
    if degree == 0 || degree as u64 >= q {
        return Err(Error::Precondition(format!("exhaustive degree must be in 1..{q}")));
    }
    let free = degree as usize - 1;
    let count = (0..free).try_fold(1u64, |acc, _| acc.checked_mul(q).filter(|&c| c <= EXHAUSTIVE_GUARD));
    let Some(count) = count else {
        return Err(Error::Guard(format!("q^(D-1) exceeds {EXHAUSTIVE_GUARD}")));
    };
    let mut out = Vec::with_capacity(count as usize);
    let mut digits = vec![0u32; free];
    for index in 0..count {
        let mut coeffs = vec![0u32];
        coeffs.extend_from_slice(&digits);
        coeffs.push(1);
        out.push(Member {
            params: BTreeMap::from([("index".to_string(), index)]),
            poly: Poly::new(field, coeffs)?,
        });
        for d in digits.iter_mut() {
            *d += 1;
            if (*d as u64) < q {
                break;
            }
            *d = 0;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::goodness::gamma;

    #[test]
    fn parse_examples() {
        assert_eq!(Family::parse("dickson:n=5,a=3").unwrap(), Family::Dickson { n: 5..=5, a: Some(3) });
        assert_eq!(
            Family::parse("prop1:k=3,basis=1;2").unwrap(),
            Family::Prop1 { k: 3, basis: vec![1, 2], alpha: 0 }
        );
        assert_eq!(Family::parse("linpow:k=3,basis=9").unwrap(), Family::Linpow { k: 3, basis: vec![9] });
        assert_eq!(Family::parse("monomial:n=4").unwrap(), Family::Monomial { n: 4..=4 });
        assert_eq!(Family::parse("monomial:n=3..12").unwrap(), Family::Monomial { n: 3..=12 });
        assert_eq!(Family::parse("exhaustive:max-degree=3").unwrap(), Family::Exhaustive { max_degree: 3 });
        for bad in ["foo:n=1", "dickson:a=3", "monomial:n=x", "monomial:n=4,z=1", "monomial:n"] {
            assert!(matches!(Family::parse(bad), Err(Error::Parse(_))), "{bad}");
        }
    }

    #[test]
    fn subfield_family_over_f64() {
        let f64 = FieldSpec::new(2, 6, None).unwrap();
        let f4 = crate::constructions::AdditiveSubgroup::subfield(&f64, 2).unwrap();
        let basis: Vec<String> = f4.basis().iter().map(|b| b.to_string()).collect();
        let desc = format!("prop1:k=3,basis={}", basis.join(";"));
        let members = Family::parse(&desc).unwrap().generate(&f64).unwrap();
        assert_eq!(members.len(), 1);
        assert_eq!(gamma(&members[0].poly).unwrap(), 5);
    }

    #[test]
    fn dickson_sweep_and_empty_range() {
        let f29 = FieldSpec::new(29, 1, None).unwrap();
        let members = Family::parse("dickson:n=5").unwrap().generate(&f29).unwrap();
        assert_eq!(members.len(), 28);
        assert!(Family::parse("monomial:n=5..4").unwrap().generate(&f29).unwrap().is_empty());
        assert_eq!(Family::parse("monomial:n=20..40").unwrap().generate(&f29).unwrap().len(), 9);
    }

    #[test]
    fn exhaustive_counts() {
        let f7 = FieldSpec::new(7, 1, None).unwrap();
        let members = Family::Exhaustive { max_degree: 3 }.generate(&f7).unwrap();
        assert_eq!(members.len(), 49);
        assert!(members.iter().all(|m| m.poly.deg() == 3 && m.poly.coeff(0) == 0 && m.poly.is_monic()));
        let best = members.iter().map(|m| gamma(&m.poly).unwrap()).max().unwrap();
        assert_eq!(best, 2);
        let big = FieldSpec::new(2, 16, None).unwrap();
        assert!(matches!(Family::Exhaustive { max_degree: 4 }.generate(&big), Err(Error::Guard(_))));
    }
}
