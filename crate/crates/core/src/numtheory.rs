//! Small integer helpers shared by the field and theorem modules.

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime divisors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Prime factorization as (prime, exponent) pairs.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut out: Vec<u64> = (1..=n).take_while(|d| d * d <= n).filter(|d| n.is_multiple_of(*d)).collect();
    let mut upper: Vec<u64> = out.iter().rev().map(|d| n / d).filter(|&e| e * e != n).collect();
    out.append(&mut upper);
    out
}

pub fn mod_pow(base: u64, mut exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let m = modulus as u128;
    let mut b = base as u128 % m;
    let mut acc: u128 = 1;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// Multiplicative order of `a` modulo `k`; requires gcd(a, k) = 1.
pub fn multiplicative_order(a: u64, k: u64) -> u64 {
    if k == 1 {
        return 1;
    }
    let mut x = a % k;
    let mut ord = 1;
    while x != 1 {
        x = (x as u128 * a as u128 % k as u128) as u64;
        ord += 1;
    }
    ord
}

/// Exponent of prime `l` in `n!` (Legendre's formula).
pub fn factorial_valuation(n: u64, l: u64) -> u64 {
    let mut e = 0;
    let mut pw = l;
    while pw <= n {
        e += n / pw;
        match pw.checked_mul(l) {
            Some(next) => pw = next,
            None => break,
        }
    }
    e
}

/// Whether `d` divides `n!`, without forming `n!`.
pub fn divides_factorial(d: u64, n: u64) -> bool {
    d != 0 && factorize(d).into_iter().all(|(l, e)| factorial_valuation(n, l) >= e as u64)
}

/// Perfect prime power decomposition `n = p^m`.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    let fs = factorize(n);
    match fs.as_slice() {
        [(p, m)] => Some((*p, *m)),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basics() {
        assert_eq!(gcd(12, 18), 6);
        assert_eq!(lcm(4, 6), 12);
        assert!(is_prime(499));
        assert!(!is_prime(1));
        assert_eq!(prime_factors(360), vec![2, 3, 5]);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(16), vec![1, 2, 4, 8, 16]);
        assert_eq!(mod_pow(7, 4, 5), 1);
        assert_eq!(multiplicative_order(2, 3), 2);
        assert_eq!(multiplicative_order(2, 7), 3);
        assert_eq!(prime_power(64), Some((2, 6)));
        assert_eq!(prime_power(12), None);
    }

    #[test]
    fn factorial_divisibility() {
        // 5! = 120
        assert!(divides_factorial(120, 5));
        assert!(divides_factorial(24, 5));
        assert!(!divides_factorial(7, 6));
        assert!(!divides_factorial(16, 5));
        assert_eq!(factorial_valuation(12, 2), 10);
    }
}
