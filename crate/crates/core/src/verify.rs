//! Exhaustive verification sweeps. Each suite yields one [`Record`] per
//! instance, in a deterministic order independent of thread scheduling.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::constructions::{
    annihilator, dickson, dickson_shifted, dickson_sum_formula, linearized_power,
    primitive_root_of_unity, prop1_polynomial, AdditiveSubgroup, DicksonParams,
};
use crate::error::{Error, Result};
use crate::gf::FieldSpec;
use crate::goodness::{gamma, gamma_oracle, infer_group_order, DEFAULT_SLACK};
use crate::numtheory::{divisors, gcd, multiplicative_order, prime_power};
use crate::polyring::Poly;
use crate::theorems::{
    dickson_gamma_closed_form, extension_feasibility, galois_index_lower_bound,
    linearized_bounds, square_shift_count, CountMode, ScanPolicy,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    DicksonTheorem,
    Prop1Corollary,
    FactorDivisibility,
    SquaresLemma,
    LinearizedBounds,
    OracleEquivalence,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::DicksonTheorem,
        Suite::Prop1Corollary,
        Suite::FactorDivisibility,
        Suite::SquaresLemma,
        Suite::LinearizedBounds,
        Suite::OracleEquivalence,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::DicksonTheorem => "dickson-theorem",
            Suite::Prop1Corollary => "prop1-corollary",
            Suite::FactorDivisibility => "factor-divisibility",
            Suite::SquaresLemma => "squares-lemma",
            Suite::LinearizedBounds => "linearized-bounds",
            Suite::OracleEquivalence => "oracle-equivalence",
        }
    }

    /// Field-size cap used when none is given.
    pub fn default_qmax(self) -> u32 {
        match self {
            Suite::DicksonTheorem => 499,
            Suite::Prop1Corollary => 1024,
            Suite::FactorDivisibility => 128,
            Suite::SquaresLemma => 199,
            Suite::LinearizedBounds => 256,
            Suite::OracleEquivalence => 13,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite '{s}'")))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Record {
    pub suite: &'static str,
    pub params: Value,
    pub expected: Value,
    pub actual: Value,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub suite: &'static str,
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

pub fn summarize(suite: Suite, records: &[Record]) -> Summary {
    let passed = records.iter().filter(|r| r.pass).count();
    Summary { suite: suite.name(), total: records.len(), passed, failed: records.len() - passed }
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyConfig {
    pub qmax: u32,
    pub seed: u64,
}

impl VerifyConfig {
    pub fn defaults(suite: Suite) -> Self {
        VerifyConfig { qmax: suite.default_qmax(), seed: 0 }
    }
}

pub fn run(suite: Suite, config: &VerifyConfig) -> Result<Vec<Record>> {
    let qmax = config.qmax;
    match suite {
        Suite::DicksonTheorem => dickson_theorem(&prime_powers(4, qmax)),
        Suite::Prop1Corollary => prop1_corollary(qmax),
        Suite::FactorDivisibility => factor_divisibility(qmax, config.seed),
        Suite::SquaresLemma => squares_lemma(qmax),
        Suite::LinearizedBounds => linearized_suite(qmax),
        Suite::OracleEquivalence => oracle_equivalence(qmax, config.seed),
    }
}

fn record(suite: Suite, params: Value, expected: Value, actual: Value) -> Record {
    let pass = expected == actual;
    Record { suite: suite.name(), params, expected, actual, pass }
}

/// Prime powers in [lo, hi], ascending.
pub fn prime_powers(lo: u32, hi: u32) -> Vec<u32> {
    (lo.max(2)..=hi).filter(|&q| prime_power(q as u64).is_some()).collect()
}

fn field_of(q: u32) -> Result<FieldSpec> {
    let (p, m) = prime_power(q as u64).ok_or(Error::NotPrime(q as u64))?;
    FieldSpec::new(p, m, None)
}

/// Brute-force G of the shifted Dickson polynomial against the closed form,
/// for every n in 3..=12 with gcd(n, q) = 1 and n < q and every a != 0.
pub fn dickson_theorem(qs: &[u32]) -> Result<Vec<Record>> {
    let per_q: Vec<Vec<Record>> = qs
        .par_iter()
        .map(|&q| -> Result<Vec<Record>> {
            let field = field_of(q)?;
            let mut out = Vec::new();
            for n in (3..=12u32).filter(|&n| n < q && gcd(n as u64, q as u64) == 1) {
                for a in 1..q {
                    let eta = if field.is_odd() { field.quadratic_character(a)? } else { 1 };
                    let expected = dickson_gamma_closed_form(q as u64, n as u64, eta)?;
                    let f = dickson_shifted(&DicksonParams::new(n, field.element(a as u64)?)?);
                    let actual = gamma(&f)?;
                    out.push(record(
                        Suite::DicksonTheorem,
                        json!({"q": q, "n": n, "a": a, "eta": eta}),
                        json!(expected),
                        json!(actual),
                    ));
                }
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    Ok(per_q.into_iter().flatten().collect())
}

/// A generated input to the (h + c)^k - c^k construction.
#[derive(Clone, Debug)]
pub struct Prop1Instance {
    pub field: FieldSpec,
    pub k: u64,
    pub subgroup: AdditiveSubgroup,
    /// Which subgroup shape was used: "zero", "span", "scaled-span" or "subfield".
    pub shape: &'static str,
    pub alpha: u32,
}

impl Prop1Instance {
    pub fn degree(&self) -> u64 {
        self.k * (self.field.p() as u64).pow(self.subgroup.dimension())
    }

    pub fn polynomial(&self) -> Result<Poly> {
        prop1_polynomial(self.k, &self.subgroup, &self.field.element(self.alpha as u64)?)
    }
}

/// Construction inputs over q = p^m <= qmax, p in {2, 3, 5}, with
/// 2 <= k p^l <= 16 and k p^l < q. Subgroups are F_{p^d}-spans (d the order
/// of p mod k), so a primitive k-th root of unity always stabilises them.
pub fn prop1_instances(qmax: u32) -> Result<Vec<Prop1Instance>> {
    let mut out = Vec::new();
    for q in prime_powers(2, qmax) {
        let field = field_of(q)?;
        let p = field.p() as u64;
        if ![2, 3, 5].contains(&p) {
            continue;
        }
        let m = field.m();
        let g = field.generator();
        for k in divisors(q as u64 - 1) {
            let d = multiplicative_order(p, k) as u32;
            for l in (0..m).filter(|l| l % d == 0) {
                let n = k * p.pow(l);
                if !(2..=16).contains(&n) || n >= q as u64 {
                    continue;
                }
                let mut shapes: Vec<(&'static str, AdditiveSubgroup)> = Vec::new();
                if l == 0 {
                    shapes.push(("zero", AdditiveSubgroup::span(&field, &[])?));
                } else {
                    let gamma_d = field.subfield_generator(d);
                    let small: Vec<u32> = (0..d as u64).map(|i| field.pow(gamma_d, i)).collect();
                    let mut basis = Vec::new();
                    for i in 0..(l / d) as u64 {
                        let gi = field.pow(g, i);
                        basis.extend(small.iter().map(|&s| field.mul(s, gi)));
                    }
                    let scaled: Vec<u32> = basis.iter().map(|&b| field.mul(b, g)).collect();
                    shapes.push(("span", AdditiveSubgroup::span(&field, &basis)?));
                    shapes.push(("scaled-span", AdditiveSubgroup::span(&field, &scaled)?));
                    if m % l == 0 {
                        shapes.push(("subfield", AdditiveSubgroup::subfield(&field, l)?));
                    }
                }
                let mut seen = BTreeSet::new();
                for (shape, subgroup) in shapes {
                    if !seen.insert(subgroup.members().to_vec()) {
                        continue;
                    }
                    let alphas: BTreeSet<u32> = [0, 1, g].into_iter().collect();
                    for alpha in alphas {
                        out.push(Prop1Instance { field: field.clone(), k, subgroup: subgroup.clone(), shape, alpha });
                    }
                }
            }
        }
    }
    Ok(out)
}

fn prop1_corollary(qmax: u32) -> Result<Vec<Record>> {
    prop1_instances(qmax)?
        .par_iter()
        .map(|inst| {
            let q = inst.field.q() as u64;
            let n = inst.degree();
            let actual = gamma(&inst.polynomial()?)?;
            Ok(record(
                Suite::Prop1Corollary,
                json!({
                    "q": q, "k": inst.k, "l": inst.subgroup.dimension(), "n": n,
                    "shape": inst.shape, "basis": inst.subgroup.basis(), "alpha": inst.alpha,
                }),
                json!(q / n),
                json!(actual),
            ))
        })
        .collect()
}

/// Lower bounds from factor degrees must be compatible with the inferred
/// group orders; the reference F_19 polynomial gives exactly 6; shifted
/// Dickson polynomials with q = +-1 mod n factor into degrees 1 and 2.
fn factor_divisibility(qmax: u32, seed: u64) -> Result<Vec<Record>> {
    let suite = Suite::FactorDivisibility;
    let mut out = Vec::new();
    if qmax >= 19 {
        let f19 = field_of(19)?;
        let f = Poly::new(&f19, vec![0, 1])?
            .mul(&Poly::new(&f19, vec![1, 0, 1])?)
            .mul(&Poly::new(&f19, vec![1, 2, 0, 1])?);
        let lb = galois_index_lower_bound(&f, seed, &ScanPolicy::Values(vec![0]))?;
        out.push(record(suite, json!({"check": "reference", "q": 19}), json!(6), json!(lb.bound)));
    }

    let mut corpus: Vec<(Value, Poly)> = Vec::new();
    for inst in prop1_instances(qmax)? {
        let f = inst.polynomial()?;
        if f.coeff(0) == 0 {
            corpus.push((
                json!({"family": "prop1", "q": inst.field.q(), "k": inst.k, "shape": inst.shape, "alpha": inst.alpha}),
                f,
            ));
        }
    }
    for q in prime_powers(4, qmax) {
        let field = field_of(q)?;
        for n in [3u32, 4, 5, 7].into_iter().filter(|&n| n < q && gcd(n as u64, q as u64) == 1) {
            for a in [1, field.generator()] {
                let f = dickson_shifted(&DicksonParams::new(n, field.element(a as u64)?)?);
                corpus.push((json!({"family": "dickson", "q": q, "n": n, "a": a}), f));
            }
        }
    }

    let checked: Vec<Vec<Record>> = corpus
        .par_iter()
        .map(|(params, f)| -> Result<Vec<Record>> {
            let mut recs = Vec::new();
            let q = f.field().q() as u64;
            let n = f.deg() as u64;
            let lb = galois_index_lower_bound(f, seed, &ScanPolicy::Auto)?;
            if gamma(f)? > 0 {
                let inf = infer_group_order(f, DEFAULT_SLACK)?;
                let consistent: Vec<u64> =
                    inf.candidates.iter().copied().filter(|o| (o / n).is_multiple_of(lb.bound)).collect();
                let mut p = params.clone();
                p["check"] = json!("consistency");
                recs.push(record(suite, p, json!(true), json!(!consistent.is_empty())));
                if let ([o], 1) = (&inf.candidates[..], gcd(n, q)) {
                    let mut p = params.clone();
                    p["check"] = json!("feasibility");
                    p["order"] = json!(o);
                    recs.push(record(suite, p, json!(true), json!(extension_feasibility(n, q, o / n)?)));
                }
            }
            let is_dickson = params["family"] == "dickson";
            if is_dickson && n % 2 == 1 && (q % n == 1 || q % n == n - 1) {
                let max_degree = lb.witnesses.iter().flat_map(|w| w.degrees.iter().copied()).max();
                let mut p = params.clone();
                p["check"] = json!("dickson-degrees");
                recs.push(record(suite, p, json!(true), json!(max_degree.is_some_and(|d| d <= 2))));
            }
            Ok(recs)
        })
        .collect::<Result<_>>()?;
    out.extend(checked.into_iter().flatten());
    Ok(out)
}

fn squares_lemma(qmax: u32) -> Result<Vec<Record>> {
    let qs: Vec<u32> = prime_powers(3, qmax).into_iter().filter(|q| q % 2 == 1).collect();
    let per_q: Vec<Vec<Record>> = qs
        .par_iter()
        .map(|&q| -> Result<Vec<Record>> {
            let field = field_of(q)?;
            (1..q)
                .map(|c| {
                    Ok(record(
                        Suite::SquaresLemma,
                        json!({"q": q, "c": c}),
                        json!(square_shift_count(&field, c, CountMode::ClosedForm)?),
                        json!(square_shift_count(&field, c, CountMode::Brute)?),
                    ))
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    Ok(per_q.into_iter().flatten().collect())
}

/// Least j with w^j in the span of 1, w, ..., w^(j-1) over the scalars
/// stabilising B, by direct enumeration of that span.
pub fn j_by_enumeration(k: u64, b: &AdditiveSubgroup) -> Result<u64> {
    let field = b.field();
    let omega = primitive_root_of_unity(field, k)?.code();
    let scalars: Vec<u32> =
        std::iter::once(0).chain((1..field.q()).filter(|&c| b.is_stable_under(c))).collect();
    let mut span: BTreeSet<u32> = BTreeSet::from([0]);
    let mut power = 1;
    for j in 0u64.. {
        if span.contains(&power) {
            return Ok(j);
        }
        span = span
            .iter()
            .flat_map(|&s| scalars.iter().map(move |&c| (s, c)))
            .map(|(s, c)| field.add(s, field.mul(c, power)))
            .collect();
        power = field.mul(power, omega);
    }
    unreachable!()
}

fn linearized_suite(qmax: u32) -> Result<Vec<Record>> {
    let suite = Suite::LinearizedBounds;
    let mut cases: Vec<(Value, u64, AdditiveSubgroup)> = Vec::new();
    for q in prime_powers(4, qmax) {
        let field = field_of(q)?;
        let (p, m) = (field.p() as u64, field.m());
        for k in divisors(q as u64 - 1).into_iter().filter(|&k| k > 1 && k <= 16) {
            for l in 1..m {
                if k * p.pow(l) >= q as u64 || k * p.pow(l) > 64 {
                    continue;
                }
                let g = field.generator();
                let basis: Vec<u32> = (0..l as u64).map(|i| field.pow(g, i)).collect();
                cases.push((json!({"q": q, "k": k, "l": l, "shape": "powers"}), k, AdditiveSubgroup::span(&field, &basis)?));
                if m % l == 0 {
                    cases.push((json!({"q": q, "k": k, "l": l, "shape": "subfield"}), k, AdditiveSubgroup::subfield(&field, l)?));
                }
            }
        }
    }
    let checked: Vec<Vec<Record>> = cases
        .par_iter()
        .map(|(params, k, b)| -> Result<Vec<Record>> {
            let report = linearized_bounds(*k, b)?;
            let tagged = |check: &str| {
                let mut p = params.clone();
                p["check"] = json!(check);
                p
            };
            let l = report.l as u64;
            let d = report.d;
            let mut recs = vec![
                record(suite, tagged("j-enumeration"), json!(j_by_enumeration(*k, b)?), json!(report.j)),
                record(
                    suite,
                    tagged("j-range"),
                    json!(true),
                    json!(d / gcd(d, l) <= report.j && report.j <= d),
                ),
            ];
            if params["shape"] == "subfield" {
                recs.push(record(suite, tagged("subfield-j"), json!(d / gcd(d, l)), json!(report.j)));
            }
            let f = linearized_power(*k, b)?;
            recs.push(record(suite, tagged("split-iff-good"), json!(report.split_exists), json!(gamma(&f)? > 0)));
            Ok(recs)
        })
        .collect::<Result<_>>()?;
    let mut out: Vec<Record> = Vec::new();
    if qmax >= 64 {
        let f64 = field_of(64)?;
        let b = AdditiveSubgroup::span(&f64, &[f64.generator()])?;
        let r = linearized_bounds(3, &b)?;
        out.push(record(
            suite,
            json!({"q": 64, "k": 3, "l": 1, "shape": "reference"}),
            json!({"j": 2, "upper_bound": 2, "split_exists": true}),
            json!({"j": r.j, "upper_bound": r.upper_bound as u64, "split_exists": r.split_exists}),
        ));
    }
    out.extend(checked.into_iter().flatten());
    Ok(out)
}

/// Every monic f with f(0) = 0 and 1 <= deg f <= max_degree, deg f < q.
pub fn normalized_corpus(field: &FieldSpec, max_degree: u32) -> Vec<Poly> {
    let q = field.q();
    let mut out = Vec::new();
    for deg in 1..=max_degree.min(q - 1) as usize {
        let mut coeffs = vec![0u32; deg + 1];
        coeffs[deg] = 1;
        loop {
            out.push(Poly::new(field, coeffs.clone()).expect("coefficients in range"));
            let mut i = 1;
            while i < deg {
                coeffs[i] += 1;
                if coeffs[i] < q {
                    break;
                }
                coeffs[i] = 0;
                i += 1;
            }
            if i == deg {
                break;
            }
        }
    }
    out
}

/// Random polynomial with degree uniform in 1..=max_degree, uniform lower
/// coefficients and a nonzero leading coefficient.
pub fn random_poly(field: &FieldSpec, rng: &mut impl Rng, max_degree: usize) -> Poly {
    let degree = rng.gen_range(1..=max_degree);
    let mut coeffs: Vec<u32> = (0..degree).map(|_| rng.gen_range(0..field.q())).collect();
    coeffs.push(rng.gen_range(1..field.q()));
    Poly::new(field, coeffs).expect("coefficients in range")
}

pub const RANDOM_FACTOR_TRIALS: usize = 10_000;

fn oracle_equivalence(qmax: u32, seed: u64) -> Result<Vec<Record>> {
    let suite = Suite::OracleEquivalence;
    let mut out = Vec::new();
    let corpus_qs: Vec<u32> = [5, 7, 8, 9, 11, 13].into_iter().filter(|&q| q <= qmax).collect();
    for &q in &corpus_qs {
        let field = field_of(q)?;
        let polys = normalized_corpus(&field, 4);
        let recs: Vec<Record> = polys
            .par_iter()
            .map(|f| {
                Ok(record(
                    suite,
                    json!({"check": "gamma", "q": q, "poly": f.coeffs()}),
                    json!(gamma_oracle(f)?),
                    json!(gamma(f)?),
                ))
            })
            .collect::<Result<_>>()?;
        out.extend(recs);
    }

    let fields: Vec<FieldSpec> = corpus_qs.iter().map(|&q| field_of(q)).collect::<Result<_>>()?;
    if !fields.is_empty() {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let trials: Vec<(usize, Poly, u64)> = (0..RANDOM_FACTOR_TRIALS)
            .map(|i| {
                let field = &fields[rng.gen_range(0..fields.len())];
                (i, random_poly(field, &mut rng, 12), rng.gen())
            })
            .collect();
        let recs: Vec<Record> = trials
            .par_iter()
            .map(|(i, f, s)| {
                let back = f.factor(*s)?.recompose();
                Ok(record(
                    suite,
                    json!({"check": "factor", "trial": i, "q": f.field().q()}),
                    json!(f.coeffs()),
                    json!(back.coeffs()),
                ))
            })
            .collect::<Result<_>>()?;
        out.extend(recs);
    }

    for q in [5u32, 7, 9, 13].into_iter().filter(|&q| q <= qmax) {
        let field = field_of(q)?;
        for n in 1..=20 {
            for a in [0, 1, field.generator(), q - 1] {
                let params = DicksonParams::new(n, field.element(a as u64)?)?;
                out.push(record(
                    suite,
                    json!({"check": "dickson", "q": q, "n": n, "a": a}),
                    json!(dickson_sum_formula(&params).coeffs()),
                    json!(dickson(&params).coeffs()),
                ));
            }
        }
    }
    Ok(out)
}

/// h(x + y) = h(x) + h(y) for the annihilator h of B, over all pairs.
pub fn annihilator_is_additive(b: &AdditiveSubgroup) -> bool {
    let h = annihilator(b);
    let field = b.field();
    let elems: Vec<u32> = field.elements().collect();
    elems.iter().all(|&x| {
        elems.iter().all(|&y| h.eval(field.add(x, y)) == field.add(h.eval(x), h.eval(y)))
    })
}
