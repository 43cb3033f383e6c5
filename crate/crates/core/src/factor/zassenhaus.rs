//! Zassenhaus factorization of primitive squarefree integer polynomials.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Signed, Zero};

use super::modular::{berlekamp, is_squarefree_mod};
use super::zpoly::{self, ZPoly};
use crate::error::{Error, Result};
use crate::exactmath::integer::primes_from;
use crate::exactmath::PrimeField;

const MAX_PRIME_SEARCH: usize = 2000;
const MAX_RECOMBINATION_TESTS: u64 = 5_000_000;

/// Smallest prime p >= 3 with p not dividing the leading coefficient and `f` squarefree mod p.
fn good_prime(f: &ZPoly) -> Result<PrimeField> {
    let lc = f.last().ok_or_else(|| Error::input("zero polynomial"))?;
    for p in primes_from(3).take(MAX_PRIME_SEARCH) {
        if (lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = PrimeField::new(p)?;
        if is_squarefree_mod(&zpoly::to_fp(f, fp))? {
            return Ok(fp);
        }
    }
    Err(Error::limit("no good prime below search bound"))
}

/// Irreducible factors of a primitive squarefree polynomial of positive degree.
pub(crate) fn zassenhaus(f: &ZPoly) -> Result<Vec<ZPoly>> {
    let n = zpoly::degree(f);
    if n <= 1 {
        return Ok(vec![zpoly::primitive_part(f)]);
    }
    let fp = good_prime(f)?;
    let modular = berlekamp(&zpoly::to_fp(f, fp).monic())?;
    if modular.len() == 1 {
        return Ok(vec![zpoly::primitive_part(f)]);
    }

    let lc = f.last().cloned().unwrap_or_default();
    let bound = lc.abs() * BigInt::from(2u8).pow(n as u32) * zpoly::norm2_ceil(f);
    let p = BigInt::from(fp.modulus());
    let mut k = 1u32;
    let mut modulus = p.clone();
    while modulus <= &bound * 2 {
        modulus *= &p;
        k += 1;
    }
    let lifted_inputs: Vec<ZPoly> = modular.iter().map(zpoly::from_fp).collect();
    let lifted = multifactor_lift(f, &lifted_inputs, &p, k)?;
    recombine(f, lifted, &modulus)
}

/// Lifts `f = lc * prod(factors) mod p` to the same shape modulo p^k.
fn multifactor_lift(f: &ZPoly, factors: &[ZPoly], p: &BigInt, k: u32) -> Result<Vec<ZPoly>> {
    let target = p.pow(k);
    lift_rec(f, factors, p, &target)
}

fn lift_rec(f: &ZPoly, factors: &[ZPoly], p: &BigInt, target: &BigInt) -> Result<Vec<ZPoly>> {
    let lc = f.last().cloned().unwrap_or_default();
    if factors.len() == 1 {
        let inv = zpoly::mod_inverse(&lc, target)
            .ok_or_else(|| Error::Internal("leading coefficient not invertible".into()))?;
        return Ok(vec![zpoly::reduce(&zpoly::scale(f, &inv), target)]);
    }
    let mid = factors.len() / 2;
    let product = |fs: &[ZPoly]| {
        fs.iter()
            .fold(vec![BigInt::one()], |acc, u| zpoly::reduce(&zpoly::mul(&acc, u), p))
    };
    let g0 = zpoly::reduce(&zpoly::scale(&product(&factors[..mid]), &lc), p);
    let h0 = product(&factors[mid..]);
    let (g, h) = hensel_step_pair(f, &g0, &h0, p, target)?;
    let mut out = lift_rec(&g, &factors[..mid], p, target)?;
    out.extend(lift_rec(&h, &factors[mid..], p, target)?);
    Ok(out)
}

/// Quadratic lifting of `f = g h mod p` with `h` monic, returning a factorization mod `target`.
/// The leading coefficient of `g` is kept equal to that of `f`.
fn hensel_step_pair(
    f: &ZPoly,
    g0: &ZPoly,
    h0: &ZPoly,
    p: &BigInt,
    target: &BigInt,
) -> Result<(ZPoly, ZPoly)> {
    let fp = PrimeField::new(p.try_into().map_err(|_| Error::Internal("prime too large".into()))?)?;
    let (one, s0, t0) = zpoly::to_fp(g0, fp).xgcd(&zpoly::to_fp(h0, fp))?;
    if !one.is_one() {
        return Err(Error::Internal("hensel factors not coprime".into()));
    }
    let (mut g, mut h) = (g0.clone(), h0.clone());
    let (mut s, mut t) = (zpoly::from_fp(&s0), zpoly::from_fp(&t0));
    let lc = f.last().cloned().unwrap_or_default();
    let mut m = p.clone();
    while &m < target {
        let m2 = &m * &m;
        // e = f - g h
        let e = zpoly::reduce(&zpoly::sub(f, &zpoly::mul(&g, &h)), &m2);
        let (q, r) = zpoly::divrem_monic_mod(&zpoly::mul(&s, &e), &h, &m2);
        let g_new = zpoly::reduce(
            &zpoly::add(&zpoly::add(&g, &zpoly::mul(&t, &e)), &zpoly::mul(&q, &g)),
            &m2,
        );
        let h_new = zpoly::reduce(&zpoly::add(&h, &r), &m2);
        // Keep lc(g) = lc(f) exactly modulo m2.
        let g_new = fix_leading(g_new, &lc, zpoly::degree(g0), &m2);
        // b = s g + t h - 1
        let b = zpoly::reduce(
            &zpoly::sub(
                &zpoly::add(&zpoly::mul(&s, &g_new), &zpoly::mul(&t, &h_new)),
                &[BigInt::one()].to_vec(),
            ),
            &m2,
        );
        let (c, d) = zpoly::divrem_monic_mod(&zpoly::mul(&s, &b), &h_new, &m2);
        let s_new = zpoly::reduce(&zpoly::sub(&s, &d), &m2);
        let t_new = zpoly::reduce(
            &zpoly::sub(&zpoly::sub(&t, &zpoly::mul(&t, &b)), &zpoly::mul(&c, &g_new)),
            &m2,
        );
        g = g_new;
        h = h_new;
        s = s_new;
        t = t_new;
        m = m2;
    }
    Ok((zpoly::reduce(&g, target), zpoly::reduce(&h, target)))
}

fn fix_leading(mut g: ZPoly, lc: &BigInt, deg: usize, m: &BigInt) -> ZPoly {
    g.resize(deg + 1, BigInt::zero());
    g[deg] = lc.mod_floor(m);
    zpoly::trim(g)
}

/// Exhaustive subset recombination of lifted monic factors modulo `modulus`.
fn recombine(f: &ZPoly, lifted: Vec<ZPoly>, modulus: &BigInt) -> Result<Vec<ZPoly>> {
    let mut remaining = lifted;
    let mut current = f.clone();
    let mut found = Vec::new();
    let mut size = 1;
    let mut tests = 0u64;
    while 2 * size <= remaining.len() {
        let mut hit = None;
        let lc = current.last().cloned().unwrap_or_default();
        let target = zpoly::scale(&current, &lc);
        for subset in Combinations::new(remaining.len(), size) {
            tests += 1;
            if tests > MAX_RECOMBINATION_TESTS {
                return Err(Error::limit("recombination subset budget exhausted"));
            }
            let g = subset_product(&remaining, &subset, &lc, modulus, true);
            // Constant-term prune before full multiplication.
            let g0 = g.first().cloned().unwrap_or_default();
            let t0 = target.first().cloned().unwrap_or_default();
            if !g0.is_zero() && !(t0.clone() % &g0).is_zero() {
                continue;
            }
            let h = subset_product(&remaining, &subset, &lc, modulus, false);
            if zpoly::mul(&g, &h) == target {
                hit = Some((subset, g, h));
                break;
            }
        }
        match hit {
            Some((subset, g, h)) => {
                found.push(zpoly::primitive_part(&g));
                current = zpoly::primitive_part(&h);
                remaining = remaining
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !subset.contains(i))
                    .map(|(_, u)| u)
                    .collect();
            }
            None => size += 1,
        }
    }
    found.push(zpoly::primitive_part(&current));
    Ok(found)
}

fn subset_product(
    factors: &[ZPoly],
    subset: &[usize],
    lc: &BigInt,
    modulus: &BigInt,
    inside: bool,
) -> ZPoly {
    let mut acc = vec![lc.clone()];
    for (i, u) in factors.iter().enumerate() {
        if subset.contains(&i) == inside {
            acc = zpoly::reduce(&zpoly::mul(&acc, u), modulus);
        }
    }
    zpoly::symmetric(&acc, modulus)
}

/// Lexicographic k-subsets of `0..n`.
struct Combinations {
    n: usize,
    idx: Vec<usize>,
    done: bool,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        Combinations { n, idx: (0..k).collect(), done: k > n }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.idx.clone();
        let k = self.idx.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}
