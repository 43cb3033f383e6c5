//! Theorem selection for pairs of superelliptic jacobians y^l = f(x), y^l = h(x).
//!
//! Hypotheses are validated from exact Galois data, one of four theorems is
//! selected, and optional knowledge rules resting on external results may
//! upgrade a conditional conclusion to non-isogeny.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::base::{Base, BasePoly};
use crate::cyclo::{contains_root_of_unity, torsion_unit_order};
use crate::error::{Error, Result};
use crate::exactmath::integer::{gcd, is_odd_prime, is_prime, prime_divisors};
use crate::galois::{galois_profile, GaloisCertificate, Property};
use crate::permgrp::PermutationGroup;

pub const REPORT_VERSION: &str = "1";

/// What the jacobian of f is compared against.
#[derive(Clone, Debug, PartialEq)]
pub enum Counterpart {
    Polynomial(BasePoly),
    /// An abelian variety Y known only through the caller's assertion that the
    /// Galois group of its l-torsion has order prime to n.
    AbstractVariety { order_prime_to_n: bool },
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProblemSpec {
    pub ell: u64,
    pub base: Base,
    pub f: BasePoly,
    pub counterpart: Counterpart,
}

impl ProblemSpec {
    pub fn pair(ell: u64, base: Base, f: BasePoly, h: BasePoly) -> Self {
        ProblemSpec { ell, base, f, counterpart: Counterpart::Polynomial(h) }
    }

    pub fn h(&self) -> Option<&BasePoly> {
        match &self.counterpart {
            Counterpart::Polynomial(h) => Some(h),
            Counterpart::AbstractVariety { .. } => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Pass,
    Fail,
    Info,
    Asserted,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Hypothesis {
    pub name: String,
    pub status: Status,
    pub method: String,
    pub data: Value,
}

fn hypothesis(name: impl Into<String>, status: Status, method: &str, data: Value) -> Hypothesis {
    Hypothesis { name: name.into(), status, method: method.to_string(), data }
}

#[derive(Clone, Debug, PartialEq)]
pub struct HypothesisReport {
    pub ell: u64,
    pub n: usize,
    pub base: Base,
    pub f_text: String,
    pub h_text: Option<String>,
    pub checks: Vec<Hypothesis>,
    pub f: GaloisCertificate,
    pub h: Option<GaloisCertificate>,
    pub y_order_prime_to_n: bool,
}

impl HypothesisReport {
    pub fn n_prime(&self) -> bool {
        is_prime(self.n as u64)
    }

    fn check_name(&self, prefix: &str) -> Option<String> {
        self.checks.iter().find(|c| c.name.starts_with(prefix)).map(|c| c.name.clone())
    }
}

fn degrees_ascending(cert: &GaloisCertificate) -> String {
    let mut d = cert.factor_degrees.clone();
    d.sort_unstable();
    d.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn factor_method(cert: &GaloisCertificate) -> String {
    cert.evidence
        .iter()
        .find(|e| {
            e.method == "Zassenhaus"
                || e.method == "Trager norm"
                || e.method == "abelian base change"
        })
        .map_or_else(|| "factorization".to_string(), |e| e.method.clone())
}

fn irreducibility_check(label: &str, cert: &GaloisCertificate) -> Hypothesis {
    let data = json!({"factor_degrees": cert.factor_degrees});
    if cert.is_irreducible() {
        hypothesis(format!("{label} irreducible"), Status::Pass, &factor_method(cert), data)
    } else {
        hypothesis(
            format!("{label} reducible (factor degrees {})", degrees_ascending(cert)),
            Status::Pass,
            &factor_method(cert),
            data,
        )
    }
}

fn galois_check(label: &str, cert: &GaloisCertificate) -> Hypothesis {
    hypothesis(
        format!("Gal({label}) properties"),
        Status::Info,
        "certificate",
        json!({
            "properties": cert.property_names(),
            "alternating_or_symmetric": cert.alternating_or_symmetric,
            "evidence": cert.evidence,
        }),
    )
}

fn check_polynomial(label: &str, p: &BasePoly, base: Base) -> Result<usize> {
    if p.base() != base {
        return Err(Error::input(format!("{label}: polynomial is over {}, expected {base}", p.base())));
    }
    let n = p.degree().unwrap_or(0);
    if n == 0 {
        return Err(Error::input(format!("{label}: polynomial must have positive degree")));
    }
    if !p.is_squarefree()? {
        return Err(Error::input(format!("{label}: polynomial has repeated roots")));
    }
    Ok(n)
}

/// Checks the structural hypotheses and gathers Galois evidence for f and h.
pub fn validate_problem(p: &ProblemSpec) -> Result<HypothesisReport> {
    let ell = p.ell;
    if !is_odd_prime(ell) {
        return Err(Error::input(format!("ell: {ell} is not an odd prime")));
    }
    match p.base {
        Base::Rationals => {}
        Base::Cyclotomic(m) if m == ell => {}
        Base::Cyclotomic(m) => {
            return Err(Error::input(format!("base: Q(zeta_{m}) does not match ell = {ell}")))
        }
    }
    let n = check_polynomial("f", &p.f, p.base)?;
    if let Some(h) = p.h() {
        let nh = check_polynomial("h", h, p.base)?;
        if nh != n {
            return Err(Error::input(format!("h: degree {nh} differs from deg f = {n}")));
        }
    }
    if n < 3 || n % 2 == 0 {
        return Err(Error::Hypothesis(format!("n = {n} must be odd and at least 3")));
    }
    if n as u64 % ell == 0 {
        return Err(Error::Hypothesis(format!("l = {ell} divides n = {n}")));
    }

    let mut checks = vec![
        hypothesis(format!("l={ell} odd prime"), Status::Pass, "trial division", json!({"ell": ell})),
        hypothesis(format!("n={n} odd"), Status::Pass, "degree", json!({"n": n})),
        hypothesis("l does not divide n", Status::Pass, "arithmetic", json!({"ell": ell, "n": n})),
    ];
    let primes = prime_divisors(n as u64);
    if is_prime(n as u64) {
        checks.push(hypothesis(format!("n={n} prime"), Status::Info, "trial division", json!({})));
    } else {
        checks.push(hypothesis(
            format!("n={n} composite"),
            Status::Info,
            "trial division",
            json!({"prime_divisors": primes}),
        ));
    }
    checks.push(hypothesis("f squarefree", Status::Pass, "gcd(f, f')", json!({})));
    let f_cert = galois_profile(&p.f)?;
    checks.push(irreducibility_check("f", &f_cert));
    checks.push(galois_check("f", &f_cert));

    let (h_cert, h_text, y_assert) = match &p.counterpart {
        Counterpart::Polynomial(h) => {
            checks.push(hypothesis("h squarefree", Status::Pass, "gcd(h, h')", json!({})));
            let c = galois_profile(h)?;
            checks.push(irreducibility_check("h", &c));
            checks.push(galois_check("h", &c));
            (Some(c), Some(h.to_string()), false)
        }
        Counterpart::AbstractVariety { order_prime_to_n } => {
            let status = if *order_prime_to_n { Status::Asserted } else { Status::Fail };
            checks.push(hypothesis(
                "Y: l-torsion Galois group order prime to n",
                status,
                "caller assertion",
                json!({}),
            ));
            (None, None, *order_prime_to_n)
        }
    };
    Ok(HypothesisReport {
        ell,
        n,
        base: p.base,
        f_text: p.f.to_string(),
        h_text,
        checks,
        f: f_cert,
        h: h_cert,
        y_order_prime_to_n: y_assert,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Theorem {
    EndoH,
    EndoH2,
    IsogEll,
    DoublePrime,
    None,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Conclusion {
    Conditional,
    UnconditionalNotIsogenous,
    None,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RuleFired {
    pub name: String,
    pub citation: String,
    pub data: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verdict {
    pub theorem: Theorem,
    pub r: Option<u64>,
    pub dim_bound: Option<u64>,
    pub conclusion: Conclusion,
    /// Which polynomial plays the irreducible role: "f" or "h".
    pub irreducible_side: Option<String>,
    /// Every prime r allowed by the theorem; the reported r is the smallest.
    pub candidate_r: Vec<u64>,
    pub citation: Option<String>,
    /// The conditional statement of the theorem, kept when a rule upgrades the conclusion.
    pub conditional_statement: Option<String>,
    /// Names of the hypothesis entries the theorem relies on.
    pub hypotheses_used: Vec<String>,
    pub rules_fired: Vec<RuleFired>,
    pub consequences: Vec<String>,
    pub reason: Option<String>,
}

pub const NO_THEOREM_REASON: &str = "no theorem hypothesis satisfied";

impl Verdict {
    fn none() -> Self {
        Verdict {
            theorem: Theorem::None,
            r: None,
            dim_bound: None,
            conclusion: Conclusion::None,
            irreducible_side: None,
            candidate_r: Vec::new(),
            citation: None,
            conditional_statement: None,
            hypotheses_used: Vec::new(),
            rules_fired: Vec::new(),
            consequences: Vec::new(),
            reason: Some(NO_THEOREM_REASON.to_string()),
        }
    }
}

fn theorem_citation(t: Theorem) -> &'static str {
    match t {
        Theorem::EndoH => "n, l distinct odd primes; one of f, h irreducible and the other reducible",
        Theorem::EndoH2 => "n odd, l odd prime not dividing n; f irreducible; |Gal(h/K)| prime to n",
        Theorem::IsogEll => "n odd, l odd prime not dividing n; f irreducible; |G(l, Y, K)| prime to n",
        Theorem::DoublePrime => "n, l distinct odd primes; Gal(f) doubly transitive; Gal(h) cyclic of order n",
        Theorem::None => "",
    }
}

/// Chooses the first applicable theorem in priority order.
pub fn select_theorem(report: &HypothesisReport) -> Verdict {
    let n = report.n as u64;
    let ell = report.ell;
    let f = &report.f;
    let sides: Vec<(&str, &GaloisCertificate, &str, &GaloisCertificate)> = match &report.h {
        Some(h) => vec![("f", f, "h", h), ("h", h, "f", f)],
        None => Vec::new(),
    };
    let conditional = |theorem: Theorem, side: &str, r: u64, candidates: Vec<u64>, used: Vec<String>| {
        let bound = (ell - 1) * (r - 1);
        let other = if side == "f" { "h" } else { "f" };
        let statement = match theorem {
            Theorem::IsogEll => format!(
                "if J(f,{ell}) and Y are isogenous then both End0 contain an invertible element of order {r} and have dimension at least {bound}"
            ),
            _ => format!(
                "if J({side},{ell}) and J({other},{ell}) are isogenous then both End0 contain an invertible element of order {r} and have dimension at least {bound}"
            ),
        };
        Verdict {
            theorem,
            r: Some(r),
            dim_bound: Some(bound),
            conclusion: Conclusion::Conditional,
            irreducible_side: Some(side.to_string()),
            candidate_r: candidates,
            citation: Some(theorem_citation(theorem).to_string()),
            conditional_statement: Some(statement),
            hypotheses_used: used,
            rules_fired: Vec::new(),
            consequences: vec![
                "the two End0 algebras have equal dimension (isogeny invariance)".to_string()
            ],
            reason: None,
        }
    };
    let used = |names: &[&str]| -> Vec<String> {
        names.iter().filter_map(|p| report.check_name(p)).collect()
    };
    let base_checks = ["l=", "n=", "l does not divide n", "f squarefree", "h squarefree"];

    if report.n_prime() {
        for &(a, ca, b, cb) in &sides {
            if ca.has(Property::TwoTransitive) && cb.has(Property::CyclicOrderN) {
                let mut names = base_checks.to_vec();
                let ga = format!("Gal({a})");
                let gb = format!("Gal({b})");
                names.extend([ga.as_str(), gb.as_str()]);
                return conditional(Theorem::DoublePrime, a, n, vec![n], used(&names));
            }
        }
        for &(a, ca, b, cb) in &sides {
            if ca.is_irreducible() && !cb.is_irreducible() {
                let ia = format!("{a} irreducible");
                let rb = format!("{b} reducible");
                let mut names = base_checks.to_vec();
                names.extend([ia.as_str(), rb.as_str()]);
                return conditional(Theorem::EndoH, a, n, vec![n], used(&names));
            }
        }
    }
    let primes = prime_divisors(n);
    let r_min = primes[0];
    for &(a, ca, b, cb) in &sides {
        if ca.is_irreducible() && cb.has(Property::OrderPrimeToN) {
            let ia = format!("{a} irreducible");
            let gb = format!("Gal({b})");
            let mut names = base_checks.to_vec();
            names.extend([ia.as_str(), gb.as_str()]);
            return conditional(Theorem::EndoH2, a, r_min, primes.clone(), used(&names));
        }
    }
    if report.h.is_none() && f.is_irreducible() && report.y_order_prime_to_n {
        let names = ["l=", "n=", "l does not divide n", "f squarefree", "f irreducible", "Y:"];
        return conditional(Theorem::IsogEll, "f", r_min, primes, used(&names));
    }
    Verdict::none()
}

pub const ENDO_SNAN_CITATION: &str = "for K = Q(zeta_l), n >= 5 and Gal(f/K) equal to S_n or A_n, End0(J(f,l)) is isomorphic to Q(zeta_l) and J(f,l) is absolutely simple (external result on superelliptic jacobians with large Galois groups)";

/// Applies the encoded external results; `strict` disables them.
pub fn apply_knowledge_rules(v: Verdict, report: &HypothesisReport, strict: bool) -> Verdict {
    if strict || v.conclusion != Conclusion::Conditional {
        return v;
    }
    let ell = report.ell;
    if report.base != Base::Cyclotomic(ell) || report.n < 5 {
        return v;
    }
    let side = v.irreducible_side.clone().unwrap_or_else(|| "f".to_string());
    let side = side.as_str();
    let cert = if side == "h" { report.h.as_ref() } else { Some(&report.f) };
    let Some(cert) = cert else { return v };
    if !cert.alternating_or_symmetric {
        return v;
    }
    let Ok(units) = torsion_unit_order(ell) else { return v };
    let primes = prime_divisors(report.n as u64);
    if primes.iter().any(|&r| contains_root_of_unity(r, ell)) {
        return v;
    }
    let mut out = v;
    out.rules_fired.push(RuleFired {
        name: "ENDO_SNAN".to_string(),
        citation: ENDO_SNAN_CITATION.to_string(),
        data: json!({
            "endomorphism_algebra": format!("Q(zeta_{ell})"),
            "torsion_unit_order": units,
            "primes_checked": primes,
            "contains_order_r_element": false,
        }),
    });
    out.conclusion = Conclusion::UnconditionalNotIsogenous;
    let other = if out.theorem == Theorem::IsogEll {
        "Y".to_string()
    } else {
        format!("J({},{ell})", if side == "f" { "h" } else { "f" })
    };
    out.consequences.push(format!(
        "every C-homomorphism between J({side},{ell}) and {other} is zero (J({side},{ell}) is absolutely simple of the same dimension)"
    ));
    out
}

/// For H normal in a transitive G on n points: a prime dividing both n and (G:H)
/// when H is intransitive, `None` when H is transitive.
pub fn obstruction_prime_existence(
    g: &PermutationGroup,
    h: &PermutationGroup,
    n: usize,
) -> Result<Option<u64>> {
    if g.degree() != n || h.degree() != n {
        return Err(Error::input("groups must act on n points"));
    }
    if !g.is_transitive() {
        return Err(Error::input("G must be transitive"));
    }
    if !h.is_normal_in(g) {
        return Err(Error::input("H is not a normal subgroup of G"));
    }
    if h.is_transitive() {
        return Ok(None);
    }
    let index = (g.order() / h.order()) as u64;
    let common = gcd(n as u64, index);
    Ok(prime_divisors(common).first().copied())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProblemRecord {
    pub ell: u64,
    pub n: usize,
    pub base: Base,
    pub f: String,
    pub h: Option<String>,
    pub mode: &'static str,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Certificate {
    pub version: &'static str,
    pub problem: ProblemRecord,
    pub hypotheses: Vec<Hypothesis>,
    pub verdict: Verdict,
    pub timing_ms: u64,
}

pub fn build_certificate(report: &HypothesisReport, verdict: Verdict, timing_ms: u64) -> Certificate {
    Certificate {
        version: REPORT_VERSION,
        problem: ProblemRecord {
            ell: report.ell,
            n: report.n,
            base: report.base,
            f: report.f_text.clone(),
            h: report.h_text.clone(),
            mode: if report.h.is_some() { "PAIR" } else { "ABSTRACT" },
        },
        hypotheses: report.checks.clone(),
        verdict,
        timing_ms,
    }
}

/// validate, select, apply rules; timing is left at zero for the caller to fill.
pub fn analyze(p: &ProblemSpec, strict: bool) -> Result<Certificate> {
    let report = validate_problem(p)?;
    let verdict = apply_knowledge_rules(select_theorem(&report), &report, strict);
    Ok(build_certificate(&report, verdict, 0))
}

impl Certificate {
    /// Plain-text rendering of the report.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let p = &self.problem;
        out.push_str(&format!("problem: l={} n={} base={} mode={}\n", p.ell, p.n, p.base, p.mode));
        out.push_str(&format!("  f = {}\n", p.f));
        if let Some(h) = &p.h {
            out.push_str(&format!("  h = {h}\n"));
        }
        out.push_str("hypotheses:\n");
        for h in &self.hypotheses {
            out.push_str(&format!("  [{:?}] {} ({})\n", h.status, h.name, h.method));
        }
        let v = &self.verdict;
        out.push_str(&format!("theorem: {:?}\nconclusion: {:?}\n", v.theorem, v.conclusion));
        if let (Some(r), Some(b)) = (v.r, v.dim_bound) {
            out.push_str(&format!("r: {r}\ndim_bound: {b}\n"));
        }
        if let Some(s) = &v.conditional_statement {
            out.push_str(&format!("statement: {s}\n"));
        }
        for rule in &v.rules_fired {
            out.push_str(&format!("rule {}: {}\n", rule.name, rule.citation));
        }
        for c in &v.consequences {
            out.push_str(&format!("consequence: {c}\n"));
        }
        if let Some(reason) = &v.reason {
            out.push_str(&format!("reason: {reason}\n"));
        }
        out
    }
}
