//! The goodness count G(f): how many values c make f(T) - c split into
//! deg f distinct linear factors over F_q, together with the full-size fibers
//! and a group-order estimate for the Galois closure of f(T) - t.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numtheory::divides_factorial;
use crate::polyring::Poly;

pub const DEFAULT_SLACK: f64 = 8.0;

/// Chunk size for parallel histogram accumulation.
const PAR_CHUNK: u32 = 1 << 14;

/// Whether the full constant field of the Galois closure is known to be F_q.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConstantField {
    Yes,
    Unknown,
}

/// A full-size fiber f^{-1}(c).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fiber {
    pub c: u32,
    pub members: Vec<u32>,
}

/// Candidate orders for [M : F_q(t)].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroupOrderInference {
    pub gamma: u64,
    /// Center of the window, q / gamma.
    pub estimate: f64,
    pub lower: f64,
    pub upper: f64,
    pub candidates: Vec<u64>,
    pub constant_field_is_base: ConstantField,
}

impl GroupOrderInference {
    pub fn is_confident(&self) -> bool {
        self.candidates.len() == 1
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GoodnessReport {
    pub q: u64,
    pub n: u64,
    pub gamma: u64,
    pub bound: u64,
    pub fibers: Vec<Fiber>,
    pub inferred_orders: Vec<u64>,
    pub constant_field_is_base: ConstantField,
}

fn check_degree(f: &Poly) -> Result<usize> {
    let q = f.field().q() as i64;
    let d = f.deg();
    if d < 1 || d >= q {
        return Err(Error::Degree { degree: d, reason: format!("need 1 <= deg f < q = {q}") });
    }
    Ok(d as usize)
}

/// |f^{-1}(c)| for every value c, indexed by encoding.
fn fiber_sizes(f: &Poly) -> Vec<u32> {
    let q = f.field().q();
    if q <= PAR_CHUNK {
        let mut counts = vec![0u32; q as usize];
        for a in 0..q {
            counts[f.eval(a) as usize] += 1;
        }
        return counts;
    }
    let starts: Vec<u32> = (0..q).step_by(PAR_CHUNK as usize).collect();
    starts
        .into_par_iter()
        .map(|start| {
            let mut counts = vec![0u32; q as usize];
            for a in start..q.min(start.saturating_add(PAR_CHUNK)) {
                counts[f.eval(a) as usize] += 1;
            }
            counts
        })
        .reduce(
            || vec![0u32; q as usize],
            |mut acc, part| {
                acc.iter_mut().zip(part).for_each(|(x, y)| *x += y);
                acc
            },
        )
}

/// Value census: c -> |{a : f(a) = c}| over attained values.
pub fn value_histogram(f: &Poly) -> Result<BTreeMap<u32, u32>> {
    check_degree(f)?;
    Ok(fiber_sizes(f)
        .into_iter()
        .enumerate()
        .filter(|&(_, n)| n > 0)
        .map(|(c, n)| (c as u32, n))
        .collect())
}

/// G(f), counted from the value histogram.
pub fn gamma(f: &Poly) -> Result<u64> {
    let n = check_degree(f)?;
    if f.is_pth_power_form() {
        return Ok(0);
    }
    Ok(fiber_sizes(f).into_iter().filter(|&s| s as usize == n).count() as u64)
}

/// G(f) by testing each f - c for deg f distinct roots via gcd with T^q - T.
/// Slow; kept to cross-check [`gamma`].
pub fn gamma_oracle(f: &Poly) -> Result<u64> {
    let n = check_degree(f)?;
    if f.derivative().is_zero() {
        return Ok(0);
    }
    let mut count = 0;
    for c in f.field().elements() {
        let g = f.add_constant(f.field().neg(c));
        if g.count_distinct_roots()? == n {
            count += 1;
        }
    }
    Ok(count)
}

/// The fibers of size exactly deg f, sorted by value.
pub fn fibers(f: &Poly) -> Result<Vec<Fiber>> {
    let n = check_degree(f)?;
    if f.is_pth_power_form() {
        return Ok(Vec::new());
    }
    let q = f.field().q();
    let mut members: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
    let sizes = fiber_sizes(f);
    for a in 0..q {
        let c = f.eval(a);
        if sizes[c as usize] as usize == n {
            members.entry(c).or_default().push(a);
        }
    }
    Ok(members.into_iter().map(|(c, members)| Fiber { c, members }).collect())
}

/// Orders o with n | o, o | n!, inside q/G (1 -+ slack / sqrt q).
pub fn infer_group_order(f: &Poly, slack: f64) -> Result<GroupOrderInference> {
    let n = check_degree(f)? as u64;
    let g = gamma(f)?;
    if g == 0 {
        return Err(Error::Precondition("G(f) = 0: group order inference undefined".into()));
    }
    Ok(orders_for(f.field().q() as u64, n, g, slack))
}

fn orders_for(q: u64, n: u64, g: u64, slack: f64) -> GroupOrderInference {
    let estimate = q as f64 / g as f64;
    let width = slack / (q as f64).sqrt();
    let lower = estimate * (1.0 - width);
    let upper = estimate * (1.0 + width);
    let first = (lower.max(1.0) / n as f64).ceil().max(1.0) as u64;
    let last = (upper / n as f64).floor() as u64;
    let candidates = (first..=last).map(|i| i * n).filter(|&o| divides_factorial(o, n)).collect();
    GroupOrderInference {
        gamma: g,
        estimate,
        lower,
        upper,
        candidates,
        constant_field_is_base: ConstantField::Yes,
    }
}

/// Everything at once: G(f), bound, fibers and inferred orders.
pub fn report(f: &Poly, slack: f64) -> Result<GoodnessReport> {
    let n = check_degree(f)? as u64;
    let q = f.field().q() as u64;
    let fibers = fibers(f)?;
    let gamma = fibers.len() as u64;
    let (inferred_orders, constant_field_is_base) = if gamma > 0 {
        let inf = orders_for(q, n, gamma, slack);
        (inf.candidates, inf.constant_field_is_base)
    } else {
        (Vec::new(), ConstantField::Unknown)
    };
    Ok(GoodnessReport { q, n, gamma, bound: q / n, fibers, inferred_orders, constant_field_is_base })
}
