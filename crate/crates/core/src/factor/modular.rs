//! Berlekamp factorization over prime fields.

use crate::error::Result;
use crate::exactmath::{Matrix, Poly, PrimeField};

/// True when `f` has no repeated factor over F_p and keeps its degree there.
pub(crate) fn is_squarefree_mod(f: &Poly<PrimeField>) -> Result<bool> {
    if f.degree().unwrap_or(0) == 0 {
        return Ok(true);
    }
    let d = f.derivative();
    if d.is_zero() {
        return Ok(false);
    }
    Ok(f.gcd(&d)?.degree() == Some(0))
}

/// Splits a monic squarefree polynomial over F_p into its monic irreducible factors.
pub fn berlekamp(f: &Poly<PrimeField>) -> Result<Vec<Poly<PrimeField>>> {
    let fp = *f.field();
    let n = match f.degree() {
        None | Some(0) => return Ok(Vec::new()),
        Some(1) => return Ok(vec![f.monic()]),
        Some(n) => n,
    };
    let f = f.monic();
    let p = fp.modulus();

    // Columns of Q hold x^{ip} mod f.
    let xp = Poly::x(fp).pow_mod(u128::from(p), &f)?;
    let mut columns = Vec::with_capacity(n);
    let mut cur = Poly::one(fp);
    for _ in 0..n {
        let mut col: Vec<u64> = cur.coeffs().to_vec();
        col.resize(n, 0);
        columns.push(col);
        cur = cur.mul(&xp).rem(&f)?;
    }
    let q = Matrix::from_columns(fp, n, &columns)?;
    let q_minus_i = q.sub(&Matrix::identity(fp, n))?;
    let basis = q_minus_i.kernel();
    let k = basis.len();

    let mut factors = vec![f.clone()];
    if k == 1 {
        return Ok(factors);
    }
    let splitters: Vec<Poly<PrimeField>> = basis
        .into_iter()
        .map(|v| Poly::new(fp, v))
        .filter(|v| v.degree().unwrap_or(0) > 0)
        .collect();

    for v in &splitters {
        let mut next = Vec::with_capacity(k);
        for u in &factors {
            if u.degree() == Some(1) {
                next.push(u.clone());
                continue;
            }
            // u is the product of gcd(u, v - s) over s in F_p.
            let mut rest = u.clone();
            for s in 0..p {
                if rest.degree() == Some(0) {
                    break;
                }
                let g = rest.gcd(&v.sub(&Poly::constant(fp, s)))?;
                if g.degree().unwrap_or(0) > 0 {
                    rest = rest.exact_div(&g)?;
                    next.push(g);
                }
            }
        }
        factors = next;
        if factors.len() == k {
            break;
        }
    }
    if factors.len() != k {
        return Err(crate::error::Error::Internal(format!(
            "berlekamp produced {} factors, expected {k}",
            factors.len()
        )));
    }
    factors.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.coeffs().cmp(b.coeffs())));
    Ok(factors)
}

/// Degrees of the irreducible factors of a squarefree polynomial modulo p, sorted descending.
pub fn factor_degrees_mod(f: &Poly<PrimeField>) -> Result<Vec<usize>> {
    let mut degs: Vec<usize> = berlekamp(f)?.iter().filter_map(Poly::degree).collect();
    degs.sort_unstable_by(|a, b| b.cmp(a));
    Ok(degs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn splits_x5_minus_1_mod_11() {
        let f = Poly::from_i64s(fp(11), &[-1, 0, 0, 0, 0, 1]);
        let fs = berlekamp(&f).unwrap();
        assert_eq!(fs.len(), 5);
        let prod = fs.iter().fold(Poly::one(fp(11)), |a, b| a.mul(b));
        assert_eq!(prod, f);
    }

    #[test]
    fn x5_minus_x_minus_1_mod_small_primes() {
        // Over F_5 this is an Artin-Schreier polynomial, so irreducible.
        let f = Poly::from_i64s(fp(5), &[-1, -1, 0, 0, 0, 1]);
        assert_eq!(factor_degrees_mod(&f).unwrap(), vec![5]);
        // Brute-force root count oracle mod 7.
        let g = Poly::from_i64s(fp(7), &[-1, -1, 0, 0, 0, 1]);
        let roots = (0..7).filter(|&a| g.eval(&a) == 0).count();
        let degs = factor_degrees_mod(&g).unwrap();
        assert_eq!(degs.iter().filter(|&&d| d == 1).count(), roots);
        assert_eq!(degs.iter().sum::<usize>(), 5);
    }

    #[test]
    fn squarefree_mod_detects_collapse() {
        // x^2 + 2x + 1 = (x+1)^2
        assert!(!is_squarefree_mod(&Poly::from_i64s(fp(3), &[1, 2, 1])).unwrap());
        assert!(is_squarefree_mod(&Poly::from_i64s(fp(3), &[2, 0, 1])).unwrap());
    }
}
