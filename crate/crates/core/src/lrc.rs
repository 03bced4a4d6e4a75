//! Tamo-Barg locally recoverable codes over the fibers of a good polynomial.
//!
//! A message `a_{ij}` (i fastest) encodes `g(x) = sum a_{ij} x^i f(x)^j` with
//! `0 <= i < r` and `0 <= j < k/r`, evaluated on the chosen fibers in
//! group-major order. On each fiber f is constant, so g restricted to a group
//! has degree below r and any r symbols of a group determine the rest.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::error::{Error, Result};
use crate::gf::FieldSpec;
use crate::goodness::{self, Fiber};
use crate::polyring::Poly;

/// Largest q^k accepted by [`LrcCode::min_distance_bruteforce`].
pub const DISTANCE_GUARD: u64 = 100_000_000;

/// A received word; `None` marks an erasure.
pub type Codeword = Vec<Option<u32>>;

#[derive(Clone, Debug, Serialize)]
pub struct LrcCode {
    #[serde(serialize_with = "ser_field")]
    field: FieldSpec,
    #[serde(serialize_with = "ser_poly")]
    f: Poly,
    r: usize,
    k: usize,
    groups: Vec<Fiber>,
    points: Vec<u32>,
    /// (i, j) for each message position.
    basis: Vec<(usize, usize)>,
    #[serde(skip)]
    generator: Vec<Vec<u32>>,
}

fn ser_field<S: serde::Serializer>(f: &FieldSpec, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&f.to_string())
}

fn ser_poly<S: serde::Serializer>(f: &Poly, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(f.coeffs())
}

/// Outcome of a single local repair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Repair {
    pub position: usize,
    pub value: u32,
    /// Number of code symbols read.
    pub reads: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DecodeFailure {
    #[error("word has length {got}, expected {expected}")]
    Length { got: usize, expected: usize },
    #[error("symbol {0} is not a field element")]
    Symbol(u32),
    #[error("surviving positions have rank {rank} < k = {k}")]
    RankDeficient { rank: usize, k: usize },
    #[error("surviving symbols are not a codeword")]
    Inconsistent,
}

impl LrcCode {
    /// Builds the code from the first `groups` fibers of `f` (all full-size
    /// fibers when `None`).
    pub fn build(f: &Poly, k: usize, groups: Option<usize>) -> Result<Self> {
        let field = f.field().clone();
        if f.deg() < 2 {
            return Err(Error::Precondition("good polynomial must have degree >= 2".into()));
        }
        let r = f.deg() as usize - 1;
        if k == 0 || !k.is_multiple_of(r) {
            return Err(Error::Precondition(format!("locality r = {r} must divide k = {k}")));
        }
        let needed = k / r;
        let mut fibers = goodness::fibers(f)?;
        let available = fibers.len();
        let m = groups.unwrap_or(available);
        if m > available || m < needed {
            return Err(Error::Precondition(format!(
                "need between {needed} and {available} full fibers, asked for {m}"
            )));
        }
        fibers.truncate(m);
        for fiber in &fibers {
            if fiber.members.iter().any(|&x| f.eval(x) != fiber.c) {
                return Err(Error::Precondition("f is not constant on a group".into()));
            }
        }
        let points: Vec<u32> = fibers.iter().flat_map(|g| g.members.iter().copied()).collect();
        if k >= points.len() {
            return Err(Error::Precondition(format!("k = {k} must be below N = {}", points.len())));
        }
        let basis: Vec<(usize, usize)> =
            (0..needed).flat_map(|j| (0..r).map(move |i| (i, j))).collect();
        let generator = basis
            .iter()
            .map(|&(i, j)| {
                let mono = Poly::monomial(&field, 1, i).mul(&f.pow(j as u64));
                points.iter().map(|&x| mono.eval(x)).collect()
            })
            .collect();
        Ok(LrcCode { field, f: f.clone(), r, k, groups: fibers, points, basis, generator })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn polynomial(&self) -> &Poly {
        &self.f
    }

    pub fn locality(&self) -> usize {
        self.r
    }

    pub fn dimension(&self) -> usize {
        self.k
    }

    pub fn length(&self) -> usize {
        self.points.len()
    }

    pub fn groups(&self) -> &[Fiber] {
        &self.groups
    }

    pub fn points(&self) -> &[u32] {
        &self.points
    }

    /// Exponent pairs (i, j) of the basis monomials x^i f(x)^j.
    pub fn basis(&self) -> &[(usize, usize)] {
        &self.basis
    }

    /// The designed distance N - k - ceil(k/r) + 2.
    pub fn singleton_bound(&self) -> usize {
        self.length() + 2 - self.k - self.k.div_ceil(self.r)
    }

    fn group_of(&self, position: usize) -> usize {
        position / (self.r + 1)
    }

    fn group_positions(&self, group: usize) -> std::ops::Range<usize> {
        group * (self.r + 1)..(group + 1) * (self.r + 1)
    }

    /// The message polynomial sum a_{ij} x^i f^j.
    pub fn message_polynomial(&self, message: &[u32]) -> Result<Poly> {
        self.check_message(message)?;
        let mut g = Poly::zero(&self.field);
        for (&a, &(i, j)) in message.iter().zip(&self.basis) {
            let term = Poly::monomial(&self.field, a, i).mul(&self.f.pow(j as u64));
            g = g.add(&term);
        }
        Ok(g)
    }

    fn check_message(&self, message: &[u32]) -> Result<()> {
        if message.len() != self.k {
            return Err(Error::Precondition(format!(
                "message has length {}, expected {}",
                message.len(),
                self.k
            )));
        }
        for &a in message {
            self.field.check(a as u64)?;
        }
        Ok(())
    }

    pub fn encode(&self, message: &[u32]) -> Result<Vec<u32>> {
        self.check_message(message)?;
        let fl = &self.field;
        let mut word = vec![0u32; self.length()];
        for (&a, row) in message.iter().zip(&self.generator) {
            if a == 0 {
                continue;
            }
            for (w, &g) in word.iter_mut().zip(row) {
                *w = fl.add(*w, fl.mul(a, g));
            }
        }
        Ok(word)
    }

    /// Restores the first erased symbol from the r other symbols of its group.
    pub fn local_repair(&self, word: &[Option<u32>]) -> Result<Repair> {
        if word.len() != self.length() {
            return Err(Error::Precondition(format!(
                "word has length {}, expected {}",
                word.len(),
                self.length()
            )));
        }
        let position = word
            .iter()
            .position(Option::is_none)
            .ok_or_else(|| Error::Precondition("word has no erasure".into()))?;
        self.repair_at(word, position)
    }

    /// Repairs `position` by Lagrange interpolation through its group mates.
    pub fn repair_at(&self, word: &[Option<u32>], position: usize) -> Result<Repair> {
        let fl = &self.field;
        let group = self.group_of(position);
        let mut reads = 0;
        let mut known = Vec::with_capacity(self.r);
        for pos in self.group_positions(group).filter(|&p| p != position) {
            match word[pos] {
                Some(v) => {
                    reads += 1;
                    fl.check(v as u64)?;
                    known.push((self.points[pos], v));
                }
                None => {
                    return Err(Error::Precondition(format!(
                        "group {group} has more than one erasure"
                    )))
                }
            }
        }
        let x0 = self.points[position];
        let mut value = 0;
        for (i, &(xi, yi)) in known.iter().enumerate() {
            let mut num = 1;
            let mut den = 1;
            for (j, &(xj, _)) in known.iter().enumerate() {
                if i != j {
                    num = fl.mul(num, fl.sub(x0, xj));
                    den = fl.mul(den, fl.sub(xi, xj));
                }
            }
            let basis = fl.div(num, den).expect("group points are distinct");
            value = fl.add(value, fl.mul(yi, basis));
        }
        Ok(Repair { position, value, reads })
    }

    /// Local repair wherever a group has a single erasure, then a linear
    /// solve over the surviving positions.
    pub fn erasure_decode(&self, word: &[Option<u32>]) -> std::result::Result<Vec<u32>, DecodeFailure> {
        let n = self.length();
        if word.len() != n {
            return Err(DecodeFailure::Length { got: word.len(), expected: n });
        }
        if let Some(bad) = word.iter().flatten().find(|&&v| v >= self.field.q()) {
            return Err(DecodeFailure::Symbol(*bad));
        }
        let mut word = word.to_vec();
        for group in 0..self.groups.len() {
            let erased: Vec<usize> = self.group_positions(group).filter(|&p| word[p].is_none()).collect();
            if let [pos] = erased[..] {
                let fix = self.repair_at(&word, pos).expect("single erasure in group");
                word[pos] = Some(fix.value);
            }
        }
        let survivors: Vec<(usize, u32)> =
            word.iter().enumerate().filter_map(|(i, v)| v.map(|v| (i, v))).collect();
        self.solve(&survivors)
    }

    fn solve(&self, survivors: &[(usize, u32)]) -> std::result::Result<Vec<u32>, DecodeFailure> {
        let fl = &self.field;
        let k = self.k;
        // rows: one equation per surviving position, k unknowns + rhs
        let mut rows: Vec<Vec<u32>> = survivors
            .iter()
            .map(|&(pos, v)| {
                let mut row: Vec<u32> = (0..k).map(|i| self.generator[i][pos]).collect();
                row.push(v);
                row
            })
            .collect();
        let mut rank = 0;
        for col in 0..k {
            let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
                continue;
            };
            rows.swap(rank, pivot);
            let inv = fl.inv(rows[rank][col]).expect("pivot is nonzero");
            for v in rows[rank].iter_mut() {
                *v = fl.mul(*v, inv);
            }
            let pivot_row = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && row[col] != 0 {
                    let factor = row[col];
                    for (x, &y) in row.iter_mut().zip(&pivot_row) {
                        *x = fl.sub(*x, fl.mul(factor, y));
                    }
                }
            }
            rank += 1;
        }
        if rank < k {
            return Err(DecodeFailure::RankDeficient { rank, k });
        }
        if rows[k..].iter().any(|row| row[k] != 0) {
            return Err(DecodeFailure::Inconsistent);
        }
        Ok(rows[..k].iter().map(|row| row[k]).collect())
    }

    /// Minimum Hamming weight over all nonzero codewords, by enumeration of
    /// messages up to scaling (first nonzero coordinate equal to 1).
    pub fn min_distance_bruteforce(&self) -> Result<usize> {
        let q = self.field.q() as u64;
        let size = (0..self.k).try_fold(1u64, |acc, _| acc.checked_mul(q).filter(|&s| s <= DISTANCE_GUARD));
        if size.is_none() {
            return Err(Error::Guard(format!("q^k exceeds {DISTANCE_GUARD}")));
        }
        let fl = &self.field;
        let n = self.length();
        let weight = |w: &[u32]| w.iter().filter(|&&x| x != 0).count();
        let best = (0..self.k)
            .into_par_iter()
            .flat_map(|lead| {
                let firsts: Vec<Option<u32>> =
                    if lead + 1 < self.k { (0..q as u32).map(Some).collect() } else { vec![None] };
                firsts.into_par_iter().map(move |first| (lead, first))
            })
            .map(|(lead, first)| {
                let mut word = self.generator[lead].clone();
                let mut free_start = lead + 1;
                if let Some(v) = first {
                    for (w, &g) in word.iter_mut().zip(&self.generator[lead + 1]) {
                        *w = fl.add(*w, fl.mul(v, g));
                    }
                    free_start += 1;
                }
                let free: Vec<usize> = (free_start..self.k).collect();
                let mut digits = vec![0u32; free.len()];
                let mut best = weight(&word);
                'odometer: loop {
                    let mut idx = 0;
                    loop {
                        if idx == free.len() {
                            break 'odometer;
                        }
                        let row = &self.generator[free[idx]];
                        let old = digits[idx];
                        let new = if old + 1 == q as u32 { 0 } else { old + 1 };
                        let delta = fl.sub(new, old);
                        for (w, &g) in word.iter_mut().zip(row) {
                            *w = fl.add(*w, fl.mul(delta, g));
                        }
                        digits[idx] = new;
                        if new != 0 {
                            break;
                        }
                        idx += 1;
                    }
                    best = best.min(weight(&word));
                }
                best
            })
            .min()
            .unwrap_or(n);
        Ok(best)
    }
}

/// Parses `1,2,_,4` (underscore marks an erasure).
pub fn parse_word(s: &str) -> Result<Codeword> {
    s.split(',')
        .map(|t| match t.trim() {
            "_" => Ok(None),
            t => t.parse::<u32>().map(Some).map_err(|e| Error::Parse(format!("symbol '{t}': {e}"))),
        })
        .collect()
}

pub fn format_word(word: &[Option<u32>]) -> String {
    word.iter()
        .map(|s| s.map_or_else(|| "_".to_string(), |v| v.to_string()))
        .collect::<Vec<_>>()
        .join(",")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f13_code(k: usize) -> LrcCode {
        let f13 = FieldSpec::new(13, 1, None).unwrap();
        LrcCode::build(&Poly::monomial(&f13, 1, 3), k, None).unwrap()
    }

    #[test]
    fn build_reference_code() {
        let code = f13_code(6);
        assert_eq!((code.length(), code.locality(), code.dimension()), (12, 2, 6));
        let groups: Vec<Vec<u32>> = code.groups().iter().map(|g| g.members.clone()).collect();
        assert_eq!(groups, vec![vec![1, 3, 9], vec![7, 8, 11], vec![2, 5, 6], vec![4, 10, 12]]);
        assert_eq!(code.basis(), &[(0, 0), (1, 0), (0, 1), (1, 1), (0, 2), (1, 2)]);
        assert_eq!(code.singleton_bound(), 5);
    }

    #[test]
    fn build_errors() {
        let f5 = FieldSpec::new(5, 1, None).unwrap();
        assert!(LrcCode::build(&Poly::monomial(&f5, 1, 3), 2, None).is_err());
        let f13 = FieldSpec::new(13, 1, None).unwrap();
        let t3 = Poly::monomial(&f13, 1, 3);
        assert!(LrcCode::build(&t3, 3, None).is_err());
        assert!(LrcCode::build(&t3, 10, None).is_err());
        assert!(LrcCode::build(&t3, 6, Some(2)).is_err());
        assert_eq!(LrcCode::build(&t3, 6, Some(3)).unwrap().length(), 9);
    }

    #[test]
    fn k_equals_r_basis() {
        let f13 = FieldSpec::new(13, 1, None).unwrap();
        let code = LrcCode::build(&Poly::monomial(&f13, 1, 3), 2, Some(2)).unwrap();
        assert_eq!(code.basis(), &[(0, 0), (1, 0)]);
        assert_eq!(code.min_distance_bruteforce().unwrap(), code.length() - code.dimension() + 1);
    }

    #[test]
    fn encode_examples() {
        let code = f13_code(6);
        assert!(code.encode(&[0; 6]).unwrap().iter().all(|&x| x == 0));
        assert!(code.encode(&[1, 0, 0, 0, 0, 0]).unwrap().iter().all(|&x| x == 1));
        assert!(code.encode(&[1, 2, 3]).is_err());
        assert!(code.encode(&[13, 0, 0, 0, 0, 0]).is_err());
        let msg = [3, 1, 4, 1, 5, 9];
        let g = code.message_polynomial(&msg).unwrap();
        let word = code.encode(&msg).unwrap();
        for (&x, &y) in code.points().iter().zip(&word) {
            assert_eq!(g.eval(x), y);
        }
    }

    #[test]
    fn repetition_code() {
        // r = 1: f = T^2 over F_5, fibers {1,4}, {2,3}
        let f5 = FieldSpec::new(5, 1, None).unwrap();
        let code = LrcCode::build(&Poly::monomial(&f5, 1, 2), 1, None).unwrap();
        assert_eq!(code.encode(&[3]).unwrap(), vec![3; 4]);
        assert_eq!(code.min_distance_bruteforce().unwrap(), code.length());
        let word = vec![Some(3), None, Some(3), Some(3)];
        assert_eq!(code.local_repair(&word).unwrap(), Repair { position: 1, value: 3, reads: 1 });
    }

    #[test]
    fn repair_line_example() {
        let code = f13_code(6);
        let word = code.encode(&[0, 1, 0, 0, 0, 0]).unwrap();
        assert_eq!(word, code.points());
        let mut received: Codeword = word.iter().copied().map(Some).collect();
        let pos = code.points().iter().position(|&x| x == 3).unwrap();
        received[pos] = None;
        let fix = code.local_repair(&received).unwrap();
        assert_eq!(fix, Repair { position: pos, value: 3, reads: 2 });
    }

    #[test]
    fn repair_rejects_double_erasure() {
        let code = f13_code(6);
        let mut received: Codeword = code.encode(&[1; 6]).unwrap().into_iter().map(Some).collect();
        received[0] = None;
        received[1] = None;
        assert!(code.local_repair(&received).is_err());
        assert!(code.local_repair(&[Some(0); 12]).is_err());
    }

    #[test]
    fn decode_examples() {
        let code = f13_code(6);
        let msg = [5, 0, 12, 7, 1, 2];
        let word: Codeword = code.encode(&msg).unwrap().into_iter().map(Some).collect();
        assert_eq!(code.erasure_decode(&word).unwrap(), msg);
        let mut lossy = word.clone();
        for p in [0, 1, 3, 4, 6, 7] {
            lossy[p] = None;
        }
        // two erasures per group in three groups leaves 6 survivors
        let res = code.erasure_decode(&lossy);
        assert!(matches!(res, Ok(_) | Err(DecodeFailure::RankDeficient { .. })));
        let mut corrupt = word.clone();
        corrupt[0] = Some(0);
        corrupt[0] = Some((msg[0] + 1) % 13);
        assert_eq!(code.erasure_decode(&corrupt), Err(DecodeFailure::Inconsistent));
        assert!(matches!(code.erasure_decode(&word[..5]), Err(DecodeFailure::Length { .. })));
    }

    #[test]
    fn word_text_form() {
        let w = parse_word("1, _,3").unwrap();
        assert_eq!(w, vec![Some(1), None, Some(3)]);
        assert_eq!(format_word(&w), "1,_,3");
        assert!(parse_word("1,x").is_err());
    }

    #[test]
    fn distance_guard() {
        let f = FieldSpec::new(2, 8, None).unwrap();
        let g = crate::constructions::AdditiveSubgroup::subfield(&f, 2).unwrap();
        let h = crate::constructions::annihilator(&g);
        let code = LrcCode::build(&h, 9, None).unwrap();
        assert!(matches!(code.min_distance_bruteforce(), Err(Error::Guard(_))));
    }
}
