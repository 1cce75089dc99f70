//! Executable checks of the structural statements, run on instances where
//! both sides are computable. Only exact results enter a check.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith::rational::{fmt_rational, int, rat};
use crate::arith::{Polynomial, Rational, Ring};
use crate::certificates::{
    alpha_multiple_membership, singular_multiplicity_bound, triviality_certificate, ExceptionalRecord,
    ResolutionData, Status,
};
use crate::closed_forms::OrdinarySingularityModel;
use crate::compute::{compute_chain, compute_hodge_ideal, ComputeOptions, MethodSelector};
use crate::divisor::{HodgeIdealResult, QDivisor};
use crate::error::{HodgeError, Result};
use crate::ideal::IdealPresentation;
use crate::parser::parse_polynomial;
use crate::recursion::{i0_seed, CertificateSource, ChainResult, GenerationCertificate};

pub const SUITES: [&str; 6] =
    ["chains", "subadditivity", "product", "restriction", "periodicity", "certificates-consistency"];

pub const DEFAULT_SEED: u64 = 20240601;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum VerdictStatus {
    Pass,
    Fail,
    Observed,
}

#[derive(Debug, Clone, Serialize)]
pub struct Verdict {
    pub claim: String,
    pub instance: String,
    pub status: VerdictStatus,
    pub detail: String,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Report {
    pub verdicts: Vec<Verdict>,
}

impl Report {
    pub fn push(&mut self, claim: &str, instance: &str, status: VerdictStatus, detail: impl Into<String>) {
        self.verdicts.push(Verdict {
            claim: claim.to_string(),
            instance: instance.to_string(),
            status,
            detail: detail.into(),
        });
    }

    fn check(&mut self, claim: &str, instance: &str, ok: bool, detail: impl Into<String>) {
        let status = if ok { VerdictStatus::Pass } else { VerdictStatus::Fail };
        self.push(claim, instance, status, detail);
    }

    pub fn extend(&mut self, other: Report) {
        self.verdicts.extend(other.verdicts);
    }

    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.status != VerdictStatus::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Verdict> {
        self.verdicts.iter().filter(|v| v.status == VerdictStatus::Fail)
    }

    pub fn count(&self, status: VerdictStatus) -> usize {
        self.verdicts.iter().filter(|v| v.status == status).count()
    }

    /// Stable sort by claim id.
    pub fn sorted(mut self) -> Self {
        self.verdicts.sort_by(|a, b| a.claim.cmp(&b.claim));
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.verdicts).expect("report serializes")
    }
}

fn describe(d: &QDivisor) -> String {
    format!("{d} in ({})", d.ring())
}

/// `g^{j-i}·I_i ⊆ I_j` for all exact `i < j`; also observes whether `I_k ⊆ I_{k-1}`.
pub fn check_chain_inclusions(chain: &ChainResult, d: &QDivisor) -> Result<Report> {
    let mut report = Report::default();
    let inst = describe(d);
    let g = d.support().g;
    let exact: Vec<&HodgeIdealResult> = chain.exact_results().collect();
    for (a, ri) in exact.iter().enumerate() {
        for rj in &exact[a + 1..] {
            let shifted = ri.ideal.scale(&g.pow((rj.k - ri.k) as u32))?;
            let ok = rj.ideal.contains_ideal(&shifted)?;
            report.check(
                "chain-inclusion",
                &inst,
                ok,
                format!("g^{}*I_{} ⊆ I_{}", rj.k - ri.k, ri.k, rj.k),
            );
        }
    }
    for w in exact.windows(2) {
        if w[1].k == w[0].k + 1 {
            let holds = w[0].ideal.contains_ideal(&w[1].ideal)?;
            report.push(
                "chain-decreasing",
                &inst,
                VerdictStatus::Observed,
                format!("I_{} ⊆ I_{}: {holds}", w[1].k, w[0].k),
            );
        }
    }
    let skipped = chain.results.len() - exact.len();
    if skipped > 0 {
        report.push(
            "chain-inclusion",
            &inst,
            VerdictStatus::Observed,
            format!("{skipped} lower-bound results excluded"),
        );
    }
    Ok(report)
}

/// Order-at-origin growth on an exact chain: `ord I_{j} ≥ ord I_{j-1} + m - 1`
/// above the generation level, and `ord I_j ≥ (j-n+1)(m-1)` for `j ≥ n`,
/// where `m` is the order of the support equation. A zero ideal has infinite order.
pub fn check_multiplicity_bounds(chain: &ChainResult, d: &QDivisor) -> Result<Report> {
    let mut report = Report::default();
    let inst = describe(d);
    let m = d.support().g.order_at_origin().expect("nonconstant support") as u64;
    let n = d.n() as u64;
    let level = chain.certificate.level as i64;
    let exact: Vec<&HodgeIdealResult> = chain.exact_results().collect();
    let ord = |r: &HodgeIdealResult| r.ideal.order_at_origin().map(u64::from);
    for w in exact.windows(2) {
        if w[1].k != w[0].k + 1 || w[0].k < level {
            continue;
        }
        let ok = match (ord(w[0]), ord(w[1])) {
            (_, None) => true,
            (None, Some(_)) => false,
            (Some(a), Some(b)) => b + 1 >= a + m,
        };
        report.check(
            "multiplicity-growth",
            &inst,
            ok,
            format!(
                "ord I_{} = {} ≥ ord I_{} + m - 1 = {} + {}",
                w[1].k,
                show_ord(ord(w[1])),
                w[0].k,
                show_ord(ord(w[0])),
                m.saturating_sub(1)
            ),
        );
    }
    for r in &exact {
        if r.k < n as i64 {
            continue;
        }
        let bound = singular_multiplicity_bound(n, m, r.k as u64);
        let ok = ord(r).is_none_or(|o| o >= bound);
        report.check(
            "singular-multiplicity",
            &inst,
            ok,
            format!("ord I_{} = {} ≥ ({}-{}+1)({}-1) = {bound}", r.k, show_ord(ord(r)), r.k, n, m),
        );
    }
    Ok(report)
}

fn show_ord(o: Option<u64>) -> String {
    o.map_or("∞".to_string(), |o| o.to_string())
}

fn exact_ideal(d: &QDivisor, k: i64) -> Result<IdealPresentation> {
    let r = compute_hodge_ideal(d, k, MethodSelector::Auto, &ComputeOptions::default())?;
    if !r.exact {
        return Err(HodgeError::MethodUnavailable(format!("I_{k}({d}) is only a lower bound")));
    }
    Ok(r.ideal)
}

fn disjoint(d1: &QDivisor, d2: &QDivisor) -> bool {
    let v1 = d1.used_variables();
    d2.used_variables().iter().all(|i| !v1.contains(i))
}

/// `Σ_{i+j=k} (I_i(D1)·g1^j)·(I_j(D2)·g2^i)` for divisors in disjoint variables.
pub fn product_formula_ideal(d1: &QDivisor, d2: &QDivisor, k: i64) -> Result<IdealPresentation> {
    if !disjoint(d1, d2) {
        return Err(HodgeError::Precondition("the divisors must use disjoint variables".into()));
    }
    let ring = d1.ring();
    let g1 = d1.support().g;
    let g2 = d2.support().g;
    let mut total = IdealPresentation::zero(ring);
    for i in 0..=k {
        let j = k - i;
        let left = exact_ideal(d1, i)?.scale(&g1.pow(j as u32))?;
        let right = exact_ideal(d2, j)?.scale(&g2.pow(i as u32))?;
        total = total.sum(&left.product(&right)?)?;
    }
    Ok(total.canonical())
}

/// `I_k(D1+D2) = Σ_{i+j=k}(I_i(D1)·g1^j)·(I_j(D2)·g2^i)` for disjoint variables.
pub fn check_product_formula(d1: &QDivisor, d2: &QDivisor, k: i64) -> Result<Report> {
    let mut report = Report::default();
    let sum = d1.sum(d2)?;
    let inst = format!("{}, k={k}", describe(&sum));
    let lhs = exact_ideal(&sum, k)?;
    let rhs = product_formula_ideal(d1, d2, k)?;
    let ok = lhs.equals(&rhs)?;
    report.check("product-formula", &inst, ok, format!("{lhs} = {rhs}"));
    Ok(report)
}

/// `I_k(D1+D2) ⊆ Σ_{i+j=k} I_i(D1)·I_j(D2)·g1^j·g2^i ⊆ I_k(D1)·I_k(D2)`.
/// When `I_k(D1+D2)` has no direct method and the variables are disjoint, the
/// product formula supplies it.
pub fn check_subadditivity(d1: &QDivisor, d2: &QDivisor, k: i64) -> Result<Report> {
    let mut report = Report::default();
    let sum = d1.sum(d2)?;
    let inst = format!("{}, k={k}", describe(&sum));
    let lhs = match exact_ideal(&sum, k) {
        Ok(i) => i,
        Err(HodgeError::MethodUnavailable(_)) if disjoint(d1, d2) => {
            report.push("subadditivity-sum", &inst, VerdictStatus::Observed, "left side via the product formula");
            product_formula_ideal(d1, d2, k)?
        }
        Err(e) => return Err(e),
    };
    let g1 = d1.support().g;
    let g2 = d2.support().g;
    let mut middle = IdealPresentation::zero(sum.ring());
    for i in 0..=k {
        let j = k - i;
        let term = exact_ideal(d1, i)?
            .product(&exact_ideal(d2, j)?)?
            .scale(&(g1.pow(j as u32) * g2.pow(i as u32)))?;
        middle = middle.sum(&term)?;
    }
    let outer = exact_ideal(d1, k)?.product(&exact_ideal(d2, k)?)?;
    report.check("subadditivity-sum", &inst, middle.contains_ideal(&lhs)?, format!("{lhs} ⊆ {}", middle.canonical()));
    report.check(
        "subadditivity-product",
        &inst,
        outer.contains_ideal(&middle)?,
        format!("{} ⊆ {}", middle.canonical(), outer.canonical()),
    );
    Ok(report)
}

/// `D|_Y` for `Y: x_index = replacement`, in the ring without `x_index`.
pub fn restrict_divisor(d: &QDivisor, index: usize, replacement: &Polynomial) -> Result<QDivisor> {
    let ring = d.ring().without(index)?;
    let comps = d
        .components()
        .iter()
        .map(|c| Ok((c.f.substitute_linear(index, replacement)?, c.alpha.clone())))
        .collect::<Result<Vec<_>>>()?;
    QDivisor::new(&ring, comps)
}

/// Compares `I_k(D)·O_Y` with `I_k(D|_Y)`: inclusion always, equality when
/// `generic`. `ambient` must be an exact `I_k(D)`.
pub fn check_restriction(
    d: &QDivisor,
    ambient: &HodgeIdealResult,
    index: usize,
    replacement: &Polynomial,
    generic: bool,
) -> Result<Report> {
    let mut report = Report::default();
    let var = &d.ring().vars()[index];
    let inst = format!("{}, Y: {var} = {}, k={}", describe(d), replacement, ambient.k);
    if !ambient.exact {
        report.push("restriction-inclusion", &inst, VerdictStatus::Observed, "ambient ideal is a lower bound; skipped");
        return Ok(report);
    }
    let restricted = ambient.ideal.substitute_linear(index, replacement)?;
    let dy = restrict_divisor(d, index, replacement)?;
    let intrinsic = exact_ideal(&dy, ambient.k)?;
    report.check(
        "restriction-inclusion",
        &inst,
        restricted.contains_ideal(&intrinsic)?,
        format!("{intrinsic} ⊆ {restricted}"),
    );
    if generic {
        report.check(
            "restriction-equality",
            &inst,
            restricted.equals(&intrinsic)?,
            format!("{intrinsic} = {restricted}"),
        );
    }
    Ok(report)
}

/// `I_k(D + Σ m_i div(f_i)) = (Π f_i^{m_i})·I_k(D)`.
pub fn check_periodicity(d: &QDivisor, multiplicities: &[u32], k: i64) -> Result<Report> {
    let mut report = Report::default();
    let shifted = d.add_integral(multiplicities)?;
    let inst = format!("{} + {:?}, k={k}", describe(d), multiplicities);
    let mut factor = Polynomial::one(d.ring());
    for (c, &m) in d.components().iter().zip(multiplicities) {
        factor = factor * c.f.pow(m);
    }
    let lhs = exact_ideal(&shifted, k)?;
    let rhs = exact_ideal(d, k)?.scale(&factor)?;
    report.check("periodicity", &inst, lhs.equals(&rhs)?, format!("{lhs} = ({factor})*I_{k}(D)"));
    Ok(report)
}

/// A random nonzero rational with numerator and denominator at most `10^6` in size.
pub fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    let mut num = 0i64;
    while num == 0 {
        num = rng.gen_range(-1_000_000..=1_000_000);
    }
    let den: i64 = rng.gen_range(1..=1_000_000);
    rat(num, den)
}

/// A random linear form in all variables of `ring` except `index`.
pub fn random_hyperplane(ring: &Arc<Ring>, index: usize, rng: &mut ChaCha8Rng) -> Polynomial {
    let mut p = Polynomial::zero(ring);
    for i in (0..ring.len()).filter(|&i| i != index) {
        p = p + Polynomial::var(ring, i).scale(&random_rational(rng));
    }
    p
}

fn divisor(vars: &[&str], comps: &[(&str, Rational)]) -> QDivisor {
    let ring = Ring::new(vars).expect("valid variables");
    let comps = comps
        .iter()
        .map(|(f, a)| (parse_polynomial(f, &ring).expect("valid polynomial"), a.clone()))
        .collect();
    QDivisor::new(&ring, comps).expect("valid divisor")
}

fn default_chain(d: &QDivisor, k_max: i64) -> Result<ChainResult> {
    compute_chain(d, k_max, &ComputeOptions::default())
}

fn suite_chains() -> Result<Report> {
    let mut report = Report::default();
    let cases = [
        (divisor(&["x", "y"], &[("x^2+y^3", rat(9, 10))]), 3),
        (divisor(&["x", "y"], &[("x^2+y^3", int(1))]), 3),
        (divisor(&["x", "y"], &[("x^2-y^2", rat(1, 2))]), 4),
        (divisor(&["x", "y"], &[("x", rat(1, 2)), ("y", rat(1, 2))]), 4),
        (divisor(&["x", "y", "z"], &[("x^2+y^2+z^2", rat(3, 4))]), 3),
    ];
    for (d, k_max) in &cases {
        let chain = default_chain(d, *k_max)?;
        report.extend(check_chain_inclusions(&chain, d)?);
        report.extend(check_multiplicity_bounds(&chain, d)?);
    }
    Ok(report)
}

fn suite_subadditivity() -> Result<Report> {
    let mut report = Report::default();
    let xy = ["x", "y"];
    report.extend(check_subadditivity(&divisor(&xy, &[("x", rat(1, 2))]), &divisor(&xy, &[("y", rat(1, 2))]), 1)?);
    report.extend(check_subadditivity(&divisor(&xy, &[("x", int(1))]), &divisor(&xy, &[("y", int(1))]), 2)?);
    let xyz = ["x", "y", "z"];
    report.extend(check_subadditivity(
        &divisor(&xyz, &[("x^2+y^3", rat(9, 10))]),
        &divisor(&xyz, &[("z", rat(1, 2))]),
        1,
    )?);
    Ok(report)
}

fn suite_product() -> Result<Report> {
    let mut report = Report::default();
    let xy = ["x", "y"];
    let xyz = ["x", "y", "z"];
    let cases = [
        (divisor(&xy, &[("x", rat(3, 4))]), divisor(&xy, &[("y", rat(3, 4))]), 1),
        (divisor(&xy, &[("x", rat(3, 4))]), divisor(&xy, &[("y", rat(3, 4))]), 0),
        (divisor(&xyz, &[("x", rat(1, 2))]), divisor(&xyz, &[("y*z", rat(1, 2))]), 1),
        (divisor(&xyz, &[("x", rat(1, 2)), ("y", rat(1, 2))]), divisor(&xyz, &[("z", rat(3, 4))]), 2),
        (divisor(&xy, &[("x", rat(3, 2))]), divisor(&xy, &[("y", rat(1, 3))]), 2),
        (divisor(&xyz, &[("x", int(1))]), divisor(&xyz, &[("y", rat(1, 4)), ("z", rat(5, 4))]), 2),
    ];
    for (d1, d2, k) in &cases {
        report.extend(check_product_formula(d1, d2, *k)?);
    }
    Ok(report)
}

/// The plane cusp `α·div(x^2+y^3)` as a cylinder in `(x,y,z)`, computed by
/// recursion in three variables from the extended `I_0` and the plane's level.
fn cusp_cylinder_chain(alpha: Rational, k_max: i64) -> Result<(QDivisor, ChainResult)> {
    let d = divisor(&["x", "y", "z"], &[("x^2+y^3", alpha)]);
    let plane = divisor(&["x", "y"], &[("x^2+y^3", d.alphas()[0].clone())]);
    let (b, _) = plane.periodic_reduce()?;
    let seed = i0_seed(&b)?.ideal.extend_ambient(d.ring())?;
    let level = crate::recursion::derive_certificate(&b).level;
    let opts = ComputeOptions {
        certificate: Some(GenerationCertificate::new(level, CertificateSource::UserAsserted, 3)?),
        seed: Some(seed),
    };
    let chain = compute_chain(&d, k_max, &opts)?;
    Ok((d, chain))
}

const DRAWS: usize = 3;
const REDRAWS: usize = 2;

fn generic_restrictions(
    report: &mut Report,
    d: &QDivisor,
    chain: &ChainResult,
    index: usize,
    rng: &mut ChaCha8Rng,
) -> Result<()> {
    for draw in 0..DRAWS {
        let mut attempt = 0;
        loop {
            let h = random_hyperplane(d.ring(), index, rng);
            let mut sub = Report::default();
            for r in &chain.results {
                sub.extend(check_restriction(d, r, index, &h, true)?);
            }
            if sub.passed() || attempt == REDRAWS {
                report.push(
                    "restriction-draw",
                    &describe(d),
                    VerdictStatus::Observed,
                    format!("draw {}: {} = {}", draw + 1, d.ring().vars()[index], h),
                );
                report.extend(sub);
                break;
            }
            attempt += 1;
            report.push(
                "restriction-draw",
                &describe(d),
                VerdictStatus::Observed,
                format!("draw {}: {} = {} not generic; redrawn", draw + 1, d.ring().vars()[index], h),
            );
        }
    }
    Ok(())
}

fn suite_restriction(seed: u64) -> Result<Report> {
    let mut report = Report::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (d, chain) = cusp_cylinder_chain(rat(9, 10), 2)?;
    generic_restrictions(&mut report, &d, &chain, 2, &mut rng)?;
    let zero = Polynomial::zero(d.ring());
    for r in &chain.results {
        report.extend(check_restriction(&d, r, 2, &zero, true)?);
    }
    let snc = divisor(&["x", "y", "z"], &[("x", rat(1, 2)), ("y", rat(1, 2))]);
    let snc_chain = default_chain(&snc, 2)?;
    generic_restrictions(&mut report, &snc, &snc_chain, 2, &mut rng)?;
    Ok(report)
}

fn suite_periodicity() -> Result<Report> {
    let mut report = Report::default();
    let xy = ["x", "y"];
    let cone = ["x", "y", "z"];
    report.extend(check_periodicity(&divisor(&xy, &[("x", rat(1, 2))]), &[1], 2)?);
    report.extend(check_periodicity(&divisor(&xy, &[("x", rat(1, 2)), ("y", rat(1, 3))]), &[1, 1], 1)?);
    report.extend(check_periodicity(&divisor(&xy, &[("x", rat(1, 4)), ("y", int(1))]), &[2, 1], 2)?);
    report.extend(check_periodicity(&divisor(&cone, &[("x^2+y^2+z^2", rat(3, 4))]), &[1], 1)?);
    report.extend(check_periodicity(&divisor(&cone, &[("x^2+y^2+z^2", rat(1, 4))]), &[2], 0)?);
    report.extend(check_periodicity(&divisor(&xy, &[("x^2+y^3", rat(9, 10))]), &[1], 2)?);
    Ok(report)
}

/// Resolution data of the cusp: three exceptional divisors.
pub fn cusp_resolution() -> ResolutionData {
    ResolutionData::new(
        vec![
            ExceptionalRecord { a: vec![2], b: 1 },
            ExceptionalRecord { a: vec![3], b: 2 },
            ExceptionalRecord { a: vec![6], b: 4 },
        ],
        true,
    )
    .expect("valid data")
}

fn suite_certificates() -> Result<Report> {
    let mut report = Report::default();
    let alphas = [rat(1, 4), rat(1, 2), rat(3, 4), int(1)];
    let mut checked = 0;
    for n in 2..=4usize {
        for m in 2..=3u32 {
            for k in 0..=2i64 {
                for alpha in &alphas {
                    let model = OrdinarySingularityModel::new(n, m, alpha.clone())?;
                    let membership = alpha_multiple_membership(n as u64, m as u64, alpha, k as u64);
                    let contradict = model.is_trivial(k) && membership.status == Status::Contained;
                    checked += 1;
                    if contradict {
                        report.check(
                            "ordinary-vs-membership",
                            &format!("n={n}, m={m}, k={k}, alpha={}", fmt_rational(alpha)),
                            false,
                            membership.lines.join("; "),
                        );
                    }
                }
            }
        }
    }
    report.check("ordinary-vs-membership", "n∈{2,3,4}, m∈{2,3}, k∈{0,1,2}", true, format!("{checked} grid points"));

    let res = cusp_resolution();
    let samples: Vec<Rational> = (1..=12).map(|i| rat(i, 12)).collect();
    let mut trivial = Vec::new();
    for k in 0..=2i64 {
        for a in &samples {
            if triviality_certificate(&res, std::slice::from_ref(a), k)?.status == Status::Trivial {
                trivial.push((k, a.clone()));
            }
        }
    }
    let monotone = trivial.iter().all(|(k, a)| {
        (0..=*k).all(|k2| {
            samples.iter().filter(|a2| *a2 <= a).all(|a2| trivial.iter().any(|(k3, a3)| *k3 == k2 && a3 == a2))
        })
    });
    report.check("triviality-monotone", "cusp resolution", monotone, format!("{} trivial sample points", trivial.len()));

    let ring = Ring::standard(2);
    let cusp = parse_polynomial("x^2+y^3", &ring)?;
    for a in &samples {
        let cert = triviality_certificate(&res, std::slice::from_ref(a), 0)?;
        let i0 = i0_seed(&QDivisor::single(&cusp, a.clone())?)?;
        let agree = (cert.status == Status::Trivial) == i0.ideal.is_unit();
        report.check(
            "triviality-vs-i0",
            &format!("cusp, alpha={}", fmt_rational(a)),
            agree,
            format!("{} and I_0 = {}", cert.status.name(), i0.ideal),
        );
    }
    Ok(report)
}

/// Runs one named suite. `seed` drives the random hyperplanes.
pub fn run_suite(name: &str, seed: u64) -> Result<Report> {
    match name {
        "chains" => suite_chains(),
        "subadditivity" => suite_subadditivity(),
        "product" => suite_product(),
        "restriction" => suite_restriction(seed),
        "periodicity" => suite_periodicity(),
        "certificates-consistency" => suite_certificates(),
        other => Err(HodgeError::Precondition(format!(
            "unknown suite `{other}`; expected one of {}",
            SUITES.join(", ")
        ))),
    }
}

/// Runs suites concurrently and merges the reports in the given order.
pub fn run_suites(names: &[&str], seed: u64) -> Result<Report> {
    for name in names {
        if !SUITES.contains(name) {
            return run_suite(name, seed);
        }
    }
    let results: Vec<Result<Report>> = std::thread::scope(|s| {
        let handles: Vec<_> = names.iter().map(|name| s.spawn(move || run_suite(name, seed))).collect();
        handles.into_iter().map(|h| h.join().expect("suite thread panicked")).collect()
    });
    let mut report = Report::default();
    for r in results {
        report.extend(r?);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cusp_chain_inclusions_hold() {
        let d = divisor(&["x", "y"], &[("x^2+y^3", rat(9, 10))]);
        let chain = default_chain(&d, 2).unwrap();
        let r = check_chain_inclusions(&chain, &d).unwrap();
        assert!(r.passed());
        assert_eq!(r.count(VerdictStatus::Pass), 3);
        assert!(r.verdicts.iter().any(|v| v.detail == "I_2 ⊆ I_1: true"));
    }

    #[test]
    fn product_example() {
        let xy = ["x", "y"];
        let r = check_product_formula(&divisor(&xy, &[("x", rat(3, 4))]), &divisor(&xy, &[("y", rat(3, 4))]), 1)
            .unwrap();
        assert!(r.passed());
        assert!(r.verdicts[0].detail.starts_with("ideal(x, y)"));
    }

    #[test]
    fn periodicity_smooth() {
        let r = check_periodicity(&divisor(&["x", "y"], &[("x", rat(1, 2))]), &[1], 2).unwrap();
        assert!(r.passed());
    }

    #[test]
    fn restriction_is_seed_deterministic() {
        let a = suite_restriction(7).unwrap().to_json();
        let b = suite_restriction(7).unwrap().to_json();
        assert_eq!(a, b);
        assert!(a.contains("draw 3"));
    }

    #[test]
    fn all_suites_pass() {
        let report = run_suites(&SUITES, DEFAULT_SEED).unwrap();
        let failures: Vec<_> = report.failures().collect();
        assert!(failures.is_empty(), "{failures:#?}");
    }

    #[test]
    fn unknown_suite() {
        assert!(run_suites(&["nope"], 1).is_err());
    }

    #[test]
    fn hyperplane_coefficients_are_bounded() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..100 {
            let q = random_rational(&mut rng);
            assert!(q.numer().magnitude() <= &1_000_000u32.into());
            assert!(q.denom() <= &1_000_000.into());
        }
    }
}
