//! Exhaustive property suites over the transitive catalog and small primes.

use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cyclo::{
    contains_root_of_unity, cyclotomic_poly, phi_ell_mod_ell_identity, torsion_unit_order,
    CyclotomicField,
};
use crate::error::{Error, Result};
use crate::exactmath::integer::{gcd, is_prime, totient};
use crate::exactmath::Field;
use crate::galmod::{
    build_torsion_model, engel_unipotence_check, equivariant_hom_space, filtration_of_model,
    find_invertible_hom, heart_basis, invariant_subspace, pairing_block, pairing_gram,
    permutation_module, random_engel_sigma, split_heart, GModule,
};
use crate::par::{self, Mode};
use crate::permgrp::{normal_subgroups, transitive_catalog, CatalogGroup, PermutationGroup};
use crate::qbound::{analyze_commuting_pair, b_trivial_block, synthesize_instance, tensor_dimension};
use crate::verdict::obstruction_prime_existence;

/// (n, l) with n, l in {3, 5, 7} and l not dividing n.
pub const DEGREE_PRIME_PAIRS: [(usize, u64); 6] = [(3, 5), (3, 7), (5, 3), (5, 7), (7, 3), (7, 5)];
pub const QLN_PAIRS: [(u64, u64); 5] = [(3, 5), (5, 3), (3, 7), (7, 3), (5, 7)];
pub const ENGEL_SAMPLES: usize = 1000;
pub const SUITES: [&str; 7] = ["heart", "orbits", "filtration", "engel", "qln", "cyclo", "all"];

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub groups: usize,
    pub primes: usize,
    pub checks: usize,
    pub failures: Vec<String>,
    pub elapsed_ms: u128,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn summary(&self) -> String {
        format!(
            "{}: {} groups x {} primes, {} checks, {} failures ({} ms)",
            self.name,
            self.groups,
            self.primes,
            self.checks,
            self.failures.len(),
            self.elapsed_ms
        )
    }
}

/// Collects check outcomes for one work item.
#[derive(Default)]
struct Tally {
    checks: usize,
    failures: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn error(&mut self, context: &str, e: Error) {
        self.checks += 1;
        self.failures.push(format!("{context}: {e}"));
    }
}

fn finish(name: &str, groups: usize, primes: usize, tallies: Vec<Tally>, start: Instant) -> SuiteReport {
    let mut report = SuiteReport { name: name.to_string(), groups, primes, ..Default::default() };
    for t in tallies {
        report.checks += t.checks;
        report.failures.extend(t.failures);
    }
    report.elapsed_ms = start.elapsed().as_millis();
    report
}

fn catalog_pairs() -> Result<Vec<(&'static CatalogGroup, usize, u64)>> {
    let mut out = Vec::new();
    for (n, ell) in DEGREE_PRIME_PAIRS {
        for c in transitive_catalog(n)? {
            out.push((c, n, ell));
        }
    }
    Ok(out)
}

fn catalog_size() -> Result<usize> {
    let mut k = 0;
    for n in [3, 5, 7] {
        k += transitive_catalog(n)?.len();
    }
    Ok(k)
}

fn heart_item(c: &CatalogGroup, n: usize, ell: u64) -> Result<Tally> {
    let mut t = Tally::default();
    let tag = || format!("{} l={ell}", c.name);
    let p = permutation_module(Arc::clone(&c.group), ell)?;
    let (constants, h) = split_heart(&p)?;
    let basis = heart_basis(&h);
    t.check(h.module.dim() == n - 1, || format!("{}: heart dimension", tag()));
    t.check(invariant_subspace(&h.module).is_empty(), || format!("{}: heart invariants", tag()));
    let trivial = GModule::trivial(Arc::clone(&c.group), ell, 1)?;
    t.check(equivariant_hom_space(&h.module, &trivial)?.is_empty(), || {
        format!("{}: invariant functionals", tag())
    });
    t.check(pairing_gram(&p, &basis)?.rank() == n - 1, || format!("{}: pairing on heart", tag()));
    t.check(pairing_gram(&p, &constants)?.rank() == 1, || format!("{}: pairing on constants", tag()));
    t.check(pairing_block(&p, &constants, &basis)?.is_zero(), || {
        format!("{}: heart not orthogonal to constants", tag())
    });
    let dual = find_invertible_hom(&h.module, &h.module.dual(), None, ell)?;
    t.check(dual.is_some(), || format!("{}: heart not self-dual", tag()));
    Ok(t)
}

/// Heart dimension, invariants, pairing and self-duality over the sweep.
pub fn heart_suite(mode: Mode) -> Result<SuiteReport> {
    let start = Instant::now();
    let items = catalog_pairs()?;
    let tallies = par::map(mode, &items, |&(c, n, ell)| {
        heart_item(c, n, ell).unwrap_or_else(|e| {
            let mut t = Tally::default();
            t.error(&format!("{} l={ell}", c.name), e);
            t
        })
    });
    Ok(finish("heart", catalog_size()?, 3, tallies, start))
}

fn orbit_item(c: &CatalogGroup, n: usize) -> Result<Tally> {
    let mut t = Tally::default();
    let g: &PermutationGroup = &c.group;
    for h in normal_subgroups(g)? {
        let k = h.orbits().count();
        let index = g.order() / h.order();
        let tag = || format!("{} |H|={}", c.name, h.order());
        t.check(n % k == 0, || format!("{}: orbit count {k} does not divide n", tag()));
        t.check(index % k == 0, || format!("{}: orbit count {k} does not divide the index", tag()));
        if gcd(n as u64, index as u64) == 1 {
            t.check(h.is_transitive(), || format!("{}: coprime index but intransitive", tag()));
        }
        let r = obstruction_prime_existence(g, &h, n)?;
        t.check(r.is_some() == !h.is_transitive(), || format!("{}: obstruction prime", tag()));
        if let Some(r) = r {
            t.check(is_prime(r) && n as u64 % r == 0 && index as u64 % r == 0, || {
                format!("{}: r = {r} does not divide n and the index", tag())
            });
        }
    }
    Ok(t)
}

/// Orbit counts of normal subgroups and the obstruction prime, for every catalog group.
pub fn orbits_suite(mode: Mode) -> Result<SuiteReport> {
    let start = Instant::now();
    let mut items = Vec::new();
    for n in [3usize, 5, 7] {
        for c in transitive_catalog(n)? {
            items.push((c, n));
        }
    }
    let tallies = par::map(mode, &items, |&(c, n)| {
        orbit_item(c, n).unwrap_or_else(|e| {
            let mut t = Tally::default();
            t.error(c.name, e);
            t
        })
    });
    Ok(finish("orbits", items.len(), 0, tallies, start))
}

fn filtration_item(c: &CatalogGroup, n: usize, ell: u64) -> Result<Tally> {
    let mut t = Tally::default();
    let x = build_torsion_model(Arc::clone(&c.group), ell)?;
    let fil = filtration_of_model(&x)?;
    let expected: Vec<usize> = (0..ell as usize).map(|i| i * (n - 1)).collect();
    t.check(fil.dims == expected, || format!("{} l={ell}: dims {:?}", c.name, fil.dims));
    for step in &fil.steps {
        t.check(step.isomorphic_to_heart, || {
            format!("{} l={ell}: quotient {} not isomorphic to the heart", c.name, step.index)
        });
    }
    Ok(t)
}

/// dim M_i = i(n-1) and heart quotients for every catalog group in the sweep.
pub fn filtration_suite(mode: Mode) -> Result<SuiteReport> {
    let start = Instant::now();
    let items = catalog_pairs()?;
    let tallies = par::map(mode, &items, |&(c, n, ell)| {
        filtration_item(c, n, ell).unwrap_or_else(|e| {
            let mut t = Tally::default();
            t.error(&format!("{} l={ell}", c.name), e);
            t
        })
    });
    Ok(finish("filtration", catalog_size()?, 3, tallies, start))
}

fn engel_item(n: usize, ell: u64, samples: usize) -> Result<Tally> {
    let mut t = Tally::default();
    let g = transitive_catalog(n)?
        .iter()
        .find(|c| c.name == format!("S{n}"))
        .map(|c| Arc::clone(&c.group))
        .ok_or_else(|| Error::internal("symmetric group missing from catalog"))?;
    let x = build_torsion_model(g, ell)?;
    let delta = engel_unipotence_check(&x, &x.delta)?;
    t.check(delta.order == ell, || format!("n={n} l={ell}: delta has order {}", delta.order));
    for k in 0..samples {
        let seed = (n as u64) << 40 | ell << 32 | k as u64;
        let sigma = random_engel_sigma(&x, seed)?;
        let r = engel_unipotence_check(&x, &sigma)?;
        t.check(r.order_is_ell_power, || format!("n={n} l={ell} seed={seed}: order {}", r.order));
    }
    Ok(t)
}

/// Random sigma = 1 + (1 - delta)E have l-power order, per (n, l) configuration.
pub fn engel_suite(mode: Mode, samples: usize) -> Result<SuiteReport> {
    let start = Instant::now();
    let items = DEGREE_PRIME_PAIRS.to_vec();
    let tallies = par::map(mode, &items, |&(n, ell)| {
        engel_item(n, ell, samples).unwrap_or_else(|e| {
            let mut t = Tally::default();
            t.error(&format!("n={n} l={ell}"), e);
            t
        })
    });
    Ok(finish("engel", items.len(), 3, tallies, start))
}

fn qln_item(ell: u64, r: u64) -> Result<Tally> {
    let mut t = Tally::default();
    let tag = || format!("l={ell} r={r}");
    let inst = synthesize_instance(ell, r)?;
    let rep = analyze_commuting_pair(&inst)?;
    let bound = tensor_dimension(ell, r)? as usize;
    t.check(rep.minpoly_a == cyclotomic_poly(ell)?, || format!("{}: minpoly of A", tag()));
    t.check(rep.minpoly_b == cyclotomic_poly(r)?, || format!("{}: minpoly of B", tag()));
    t.check(rep.v0_dimension == bound && inst.dim() == bound, || format!("{}: bound not attained", tag()));
    t.check(rep.splitting_exact, || format!("{}: splitting", tag()));
    let triv = b_trivial_block(ell, r)?;
    let mut rng = ChaCha8Rng::seed_from_u64(ell * 1000 + r);
    for _ in 0..4 {
        let full = rng.gen_range(1..=2);
        let trivial = rng.gen_range(0..=2);
        let mut pair = inst.clone();
        for _ in 1..full {
            pair = pair.direct_sum(&inst)?;
        }
        for _ in 0..trivial {
            pair = pair.direct_sum(&triv)?;
        }
        let rep = analyze_commuting_pair(&pair)?;
        t.check(rep.v0_dimension % bound == 0 && rep.v0_dimension == full * bound, || {
            format!("{}: block sum V0 dimension {}", tag(), rep.v0_dimension)
        });
        t.check(rep.splitting_exact && rep.minpolys_cyclotomic, || format!("{}: block sum splitting", tag()));
    }
    Ok(t)
}

/// Synthetic commuting pairs and their block sums.
pub fn qln_suite(mode: Mode) -> Result<SuiteReport> {
    let start = Instant::now();
    let items = QLN_PAIRS.to_vec();
    let tallies = par::map(mode, &items, |&(ell, r)| {
        qln_item(ell, r).unwrap_or_else(|e| {
            let mut t = Tally::default();
            t.error(&format!("l={ell} r={r}"), e);
            t
        })
    });
    Ok(finish("qln", 0, items.len(), tallies, start))
}

fn cyclo_item(ell: u64) -> Result<Tally> {
    let mut t = Tally::default();
    t.check(phi_ell_mod_ell_identity(ell)?, || format!("l={ell}: congruence"));
    let phi = cyclotomic_poly(ell)?;
    t.check(phi.degree() == Some(totient(ell) as usize), || format!("l={ell}: degree"));
    t.check(torsion_unit_order(ell)? == 2 * ell, || format!("l={ell}: torsion units"));
    // Brute force over the roots of unity +-zeta^j.
    let k = CyclotomicField::new(ell)?;
    for r in [3u64, 5, 7, 11, 13] {
        let expected = (1..2 * ell).any(|j| {
            let z = k.zeta_pow(j % ell);
            let w = if j >= ell { k.neg(&z) } else { z };
            field_order(&k, &w) == Some(r)
        });
        t.check(contains_root_of_unity(r, ell) == expected, || format!("l={ell} r={r}: roots of unity"));
    }
    // The norm of 1 - zeta is l.
    let one_minus = k.sub(&k.one(), &k.zeta());
    t.check(k.norm(&one_minus) == crate::exactmath::rat(ell as i64), || format!("l={ell}: norm"));
    Ok(t)
}

fn field_order(k: &CyclotomicField, w: &crate::cyclo::CycloElement) -> Option<u64> {
    let mut acc = w.clone();
    for order in 1..=200u64 {
        if acc == k.one() {
            return Some(order);
        }
        acc = k.mul(&acc, w);
    }
    None
}

/// Cyclotomic congruence, roots of unity and norms for small l.
pub fn cyclo_suite(mode: Mode) -> Result<SuiteReport> {
    let start = Instant::now();
    let items = vec![3u64, 5, 7, 11, 13];
    let tallies = par::map(mode, &items, |&ell| {
        cyclo_item(ell).unwrap_or_else(|e| {
            let mut t = Tally::default();
            t.error(&format!("l={ell}"), e);
            t
        })
    });
    Ok(finish("cyclo", 0, items.len(), tallies, start))
}

/// Runs a named suite; "all" runs each in turn.
pub fn run_suite(name: &str, mode: Mode) -> Result<Vec<SuiteReport>> {
    Ok(match name {
        "heart" => vec![heart_suite(mode)?],
        "orbits" => vec![orbits_suite(mode)?],
        "filtration" => vec![filtration_suite(mode)?],
        "engel" => vec![engel_suite(mode, ENGEL_SAMPLES)?],
        "qln" => vec![qln_suite(mode)?],
        "cyclo" => vec![cyclo_suite(mode)?],
        "all" => vec![
            heart_suite(mode)?,
            orbits_suite(mode)?,
            filtration_suite(mode)?,
            engel_suite(mode, ENGEL_SAMPLES)?,
            qln_suite(mode)?,
            cyclo_suite(mode)?,
        ],
        other => return Err(Error::input(format!("unknown suite {other:?}"))),
    })
}
