//! Trager's norm method over cyclotomic fields.

use num_rational::BigRational;

use super::{factor_over_rationals, is_squarefree};
use crate::cyclo::CyclotomicField;
use crate::error::{Error, Result};
use crate::exactmath::{interpolate, Field, Poly, QPoly, Rationals};

/// Norm of `g` down to Q, as a polynomial in x.
///
/// Computed by interpolating field norms of g(x0) at integer points.
pub fn norm_poly(g: &Poly<CyclotomicField>) -> Result<QPoly> {
    let k = g.field().clone();
    let d = g.degree().ok_or_else(|| Error::input("zero polynomial"))? * k.degree();
    let mut xs = Vec::with_capacity(d + 1);
    let mut ys = Vec::with_capacity(d + 1);
    for x0 in 0..=d as i64 {
        let xq = BigRational::from_integer(x0.into());
        ys.push(k.norm(&g.eval(&k.embed(&xq))));
        xs.push(xq);
    }
    interpolate(&Rationals, &xs, &ys)
}

/// Irreducible monic factors of a squarefree polynomial over Q(zeta_m).
pub fn trager_factor(g: &Poly<CyclotomicField>) -> Result<Vec<Poly<CyclotomicField>>> {
    let k = g.field().clone();
    let n = g.degree().ok_or_else(|| Error::input("zero polynomial"))?;
    if n == 1 {
        return Ok(vec![g.monic()]);
    }
    let g = g.monic();
    let alpha = k.zeta();
    let max_shift = (n * k.degree()) as i64;
    for s in 0..=max_shift {
        let s_alpha = k.mul(&k.from_i64(s), &alpha);
        let x_minus = Poly::new(k.clone(), vec![k.neg(&s_alpha), k.one()]);
        let x_plus = Poly::new(k.clone(), vec![s_alpha.clone(), k.one()]);
        let shifted = g.compose(&x_minus);
        let norm = norm_poly(&shifted)?;
        if !is_squarefree(&norm)? {
            continue;
        }
        let mut out = Vec::new();
        for (factor, _) in factor_over_rationals(&norm)?.factors {
            let lifted = factor.map(k.clone(), |c| k.embed(c));
            let h = shifted.gcd(&lifted)?;
            if h.degree().unwrap_or(0) > 0 {
                out.push(h.compose(&x_plus).monic());
            }
        }
        let total: usize = out.iter().filter_map(Poly::degree).sum();
        if total != n {
            return Err(Error::Internal("norm factors do not cover the polynomial".into()));
        }
        return Ok(out);
    }
    Err(Error::Internal("no squarefree norm among shifts".into()))
}
