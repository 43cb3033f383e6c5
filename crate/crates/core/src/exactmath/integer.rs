//! Word-sized number theory helpers.

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

pub fn is_odd_prime(n: u64) -> bool {
    n % 2 == 1 && is_prime(n)
}

/// Primes in increasing order starting at `from`.
pub fn primes_from(from: u64) -> impl Iterator<Item = u64> {
    (from.max(2)..).filter(|&p| is_prime(p))
}

/// Distinct prime divisors in increasing order.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n % d == 0).collect()
}

pub fn totient(n: u64) -> u64 {
    prime_divisors(n)
        .into_iter()
        .fold(n, |acc, p| acc / p * (p - 1))
}

pub fn gcd(a: u64, b: u64) -> u64 {
    num_integer::gcd(a, b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    num_integer::lcm(a, b)
}

/// Whether `n` is a power `p^k` with `k >= 0`.
pub fn is_power_of(mut n: u64, p: u64) -> bool {
    if n == 0 {
        return false;
    }
    while n % p == 0 {
        n /= p;
    }
    n == 1
}
