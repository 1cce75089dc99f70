//! The derivation-closure step `F_k ↦ F_1 D · F_k`, Hodge-ideal chains built
//! from it, and the `I_0` seeds that start them.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::polynomial::check_same_ring;
use crate::arith::rational::{ceil, fmt_rational};
use crate::arith::{ExponentVector, Polynomial, Rational, Ring};
use crate::closed_forms::{detect_weights, is_isolated_homogeneous, is_smooth_hypersurface};
use crate::divisor::{HodgeIdealResult, Method, QDivisor};
use crate::error::{HodgeError, Result};
use crate::ideal::IdealPresentation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertificateSource {
    NodeExample,
    QuasihomogeneousFormula,
    UniversalBound,
    UserAsserted,
    /// A coordinate SNC divisor is its own log resolution.
    SncIdentityResolution,
}

impl CertificateSource {
    pub fn name(&self) -> &'static str {
        match self {
            CertificateSource::NodeExample => "node-example",
            CertificateSource::QuasihomogeneousFormula => "quasihomogeneous-formula",
            CertificateSource::UniversalBound => "universal-bound",
            CertificateSource::UserAsserted => "user-asserted",
            CertificateSource::SncIdentityResolution => "snc-identity-resolution",
        }
    }
}

impl fmt::Display for CertificateSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The filtration is generated at `level`: `F_1 D · F_p = F_{p+1}` for `p ≥ level`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GenerationCertificate {
    pub level: u32,
    pub source: CertificateSource,
}

impl GenerationCertificate {
    pub fn new(level: u32, source: CertificateSource, n: usize) -> Result<Self> {
        if n == 0 || level as usize > n - 1 {
            return Err(HodgeError::Precondition(format!(
                "generation level {level} exceeds the universal bound n-1 = {}",
                n.saturating_sub(1)
            )));
        }
        Ok(GenerationCertificate { level, source })
    }

    pub fn universal(n: usize) -> Self {
        GenerationCertificate { level: n.saturating_sub(1) as u32, source: CertificateSource::UniversalBound }
    }
}

/// Generators of `F_1 D · F_k` before canonicalization: `g·w` and, for each
/// coordinate derivation `∂_l`,
/// `g ∂_l w - k w ∂_l g - w Σ_i α_i (∂_l f_i) Π_{j≠i} f_j`.
pub fn derivation_step_generators(ideal: &IdealPresentation, b: &QDivisor, k: i64) -> Result<Vec<Polynomial>> {
    check_same_ring(ideal.ring(), b.ring())?;
    if !b.is_reduced() {
        return Err(HodgeError::NotReduced);
    }
    let ring = b.ring();
    let comps = b.components();
    let g = b.support().g;
    let kq = Rational::from_integer(BigInt::from(k));

    // cofactors Π_{j≠i} f_j
    let cofactors: Vec<Polynomial> = (0..comps.len())
        .map(|i| {
            comps
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .fold(Polynomial::one(ring), |acc, (_, c)| &acc * &c.f)
        })
        .collect();

    let n = ring.len();
    let mut dg = Vec::with_capacity(n);
    let mut log_term = Vec::with_capacity(n);
    for l in 0..n {
        dg.push(g.partial_derivative(l)?);
        let mut t = Polynomial::zero(ring);
        for (c, co) in comps.iter().zip(&cofactors) {
            let df = c.f.partial_derivative(l)?;
            if !df.is_zero() {
                t = &t + &(&df * co).scale(&c.alpha);
            }
        }
        log_term.push(t);
    }
    // with one component the two correction terms combine into (k+α) w ∂g
    let single = comps.len() == 1;

    let mut out = Vec::new();
    for w in ideal.generators() {
        out.push(&g * w);
        for l in 0..n {
            let dw = w.partial_derivative(l)?;
            let gen = if single {
                let coeff = &kq + &comps[0].alpha;
                &(&g * &dw) - &(w * &dg[l]).scale(&coeff)
            } else {
                let first = &(&g * &dw) - &(w * &dg[l]).scale(&kq);
                &first - &(w * &log_term[l])
            };
            out.push(gen);
        }
    }
    Ok(out)
}

/// `F_1 D · F_k` for `B` in the reduced regime. Always contained in
/// `I_{k+1}(B)`; equal to it when the filtration is generated at level `≤ k`.
pub fn derivation_step(ideal: &IdealPresentation, b: &QDivisor, k: i64) -> Result<IdealPresentation> {
    let gens = derivation_step_generators(ideal, b, k)?;
    Ok(IdealPresentation::new(b.ring(), gens)?.canonical())
}

#[derive(Debug, Clone)]
pub struct ChainResult {
    /// `I_k(D)` for `k = k0, ..., k_max`.
    pub results: Vec<HodgeIdealResult>,
    /// `I_k(B) = I'_k(D)` for the same range.
    pub reduced: Vec<HodgeIdealResult>,
    pub certificate: GenerationCertificate,
    /// First `k` whose ideal is only a lower bound, if any.
    pub first_inexact: Option<i64>,
    pub twist: Polynomial,
}

impl ChainResult {
    pub fn get(&self, k: i64) -> Option<&HodgeIdealResult> {
        self.results.iter().find(|r| r.k == k)
    }

    pub fn exact_results(&self) -> impl Iterator<Item = &HodgeIdealResult> {
        self.results.iter().filter(|r| r.exact)
    }
}

/// Iterates the derivation step from an exact seed `I_{k0}(B)` up to `k_max`.
/// The step `k → k+1` is exact iff every earlier step was and
/// `k ≥ min(level, n-1)`.
pub fn hodge_chain(
    d: &QDivisor,
    k_max: i64,
    seed: &HodgeIdealResult,
    cert: GenerationCertificate,
) -> Result<ChainResult> {
    if !seed.exact {
        return Err(HodgeError::Precondition("the chain seed must be exact".into()));
    }
    if seed.k < 0 {
        return Err(HodgeError::Precondition("the chain seed must have k ≥ 0".into()));
    }
    check_same_ring(d.ring(), seed.ideal.ring())?;
    let n = d.n();
    if cert.level as usize > n.saturating_sub(1) {
        return Err(HodgeError::Precondition(format!(
            "generation level {} exceeds n-1 = {}",
            cert.level,
            n - 1
        )));
    }
    let (b, twist) = d.periodic_reduce()?;
    let effective_level = (cert.level as i64).min(n as i64 - 1);

    let mut reduced = Vec::new();
    let mut first = seed.clone();
    first.primed = true;
    reduced.push(first);
    let mut exact = true;
    let mut first_inexact = None;
    let mut current = seed.ideal.clone();
    for k in seed.k..k_max {
        let next = derivation_step(&current, &b, k)?;
        exact = exact && k >= effective_level;
        if !exact && first_inexact.is_none() {
            first_inexact = Some(k + 1);
        }
        let mut r = HodgeIdealResult::new(k + 1, next.clone(), true, Method::Recursion, exact);
        r.notes.push(format!(
            "derivation step from k = {k}; generation level {} ({})",
            cert.level, cert.source
        ));
        if !exact {
            r.notes.push("lower bound: the step lies below the certified generation level".into());
        }
        reduced.push(r);
        current = next;
    }

    let twisted = !twist.is_one();
    let results = reduced
        .iter()
        .map(|r| {
            let mut u = r.clone();
            u.primed = false;
            if twisted {
                u.ideal = r.ideal.scale(&twist)?.canonical();
            }
            Ok(u)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ChainResult { results, reduced, certificate: cert, first_inexact, twist })
}

/// `I_0(D)` in the regimes where it is known in closed form: coordinate SNC,
/// smooth support, a homogeneous isolated singularity (cone), and a diagonal
/// (Brieskorn-Pham) polynomial. Computed on `B` and twisted back.
pub fn i0_seed(d: &QDivisor) -> Result<HodgeIdealResult> {
    let (b, twist) = d.periodic_reduce()?;
    let ring = d.ring();
    let twisted = |ideal: IdealPresentation, method: Method, note: String| -> Result<HodgeIdealResult> {
        let ideal = if twist.is_one() { ideal } else { ideal.scale(&twist)?.canonical() };
        Ok(HodgeIdealResult::new(0, ideal, false, method, true).with_note(note))
    };

    if b.coordinate_indices().is_some() {
        return twisted(IdealPresentation::unit(ring), Method::Snc, "coordinate SNC divisor: I_0(B) = ⟨1⟩".into());
    }
    let g = b.support().g;
    if is_smooth_hypersurface(&g) {
        return twisted(IdealPresentation::unit(ring), Method::Smooth, "smooth support: I_0(B) = ⟨1⟩".into());
    }
    if b.components().len() == 1 {
        let h = &b.components()[0].f;
        let alpha = &b.components()[0].alpha;
        let n = ring.len() as i64;
        if h.used_variables().len() == ring.len() && is_isolated_homogeneous(h) {
            let m = h.degree().expect("nonconstant") as i64;
            let up = ceil(&(alpha * Rational::from_integer(m.into())))
                .to_i64()
                .ok_or_else(|| HodgeError::ExponentOverflow(fmt_rational(alpha)))?;
            let e = (up - n).max(0) as u32;
            return twisted(
                IdealPresentation::maximal_power(ring, e),
                Method::MultiplierIdeal,
                format!("isolated homogeneous singularity of degree {m}: I_0(B) = m^max(0, ⌈αm⌉ - n) = m^{e}"),
            );
        }
        if let Some(exps) = diagonal_exponents(h) {
            return twisted(
                diagonal_multiplier_ideal(ring, &exps, alpha),
                Method::MultiplierIdeal,
                "diagonal polynomial: x^a ∈ I_0(B) iff Σ (a_i+1)/e_i ≥ α".into(),
            );
        }
    }
    Err(HodgeError::MethodUnavailable(format!(
        "no closed form for I_0 of {d}; supply a seed ideal"
    )))
}

/// Exponents `e_i ≥ 2` when `h = Σ c_i x_i^{e_i}` uses every variable exactly once.
pub(crate) fn diagonal_exponents(h: &Polynomial) -> Option<Vec<u32>> {
    let n = h.ring().len();
    if h.num_terms() != n {
        return None;
    }
    let mut exps = vec![0u32; n];
    for (e, _) in h.terms() {
        let mut s = e.support();
        let i = s.next()?;
        if s.next().is_some() || exps[i] != 0 {
            return None;
        }
        exps[i] = e.exponents()[i];
    }
    if exps.iter().any(|&e| e < 2) {
        return None;
    }
    Some(exps)
}

/// Monomial ideal `{x^a : Σ (a_i+1)/e_i ≥ α}`; it suffices to enumerate `a_i ≤ e_i`.
fn diagonal_multiplier_ideal(ring: &Arc<Ring>, exps: &[u32], alpha: &Rational) -> IdealPresentation {
    let n = exps.len();
    let mut gens = Vec::new();
    let mut a = vec![0u32; n];
    loop {
        let s = a
            .iter()
            .zip(exps)
            .map(|(&ai, &ei)| Rational::new(BigInt::from(ai + 1), BigInt::from(ei)))
            .fold(Rational::zero(), |x, y| x + y);
        if &s >= alpha {
            gens.push(ExponentVector::new(a.clone()));
        }
        let mut i = 0;
        loop {
            if i == n {
                return IdealPresentation::monomial(ring, gens).canonical();
            }
            a[i] += 1;
            if a[i] <= exps[i] {
                break;
            }
            a[i] = 0;
            i += 1;
        }
    }
}

/// The certificate derivable from the shape of `b` alone: level 0 for a
/// coordinate SNC divisor, the quasi-homogeneous formula for a single
/// isolated homogeneous or diagonal component, else the universal bound.
pub fn derive_certificate(b: &QDivisor) -> GenerationCertificate {
    let n = b.n();
    if b.coordinate_indices().is_some() {
        return GenerationCertificate { level: 0, source: CertificateSource::SncIdentityResolution };
    }
    if b.components().len() == 1 {
        let h = &b.components()[0].f;
        let alpha = &b.components()[0].alpha;
        let quasi = (is_isolated_homogeneous(h) && h.used_variables().len() == n)
            || diagonal_exponents(h).is_some();
        if quasi {
            if let Some(w) = detect_weights(h) {
                let level = crate::closed_forms::generation_level(n, &w.total(), alpha);
                return GenerationCertificate { level, source: CertificateSource::QuasihomogeneousFormula };
            }
        }
    }
    GenerationCertificate::universal(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{int, rat};
    use crate::parser::parse_polynomial;

    fn ideal(r: &std::sync::Arc<Ring>, gens: &[&str]) -> IdealPresentation {
        IdealPresentation::new(r, gens.iter().map(|g| parse_polynomial(g, r).unwrap()).collect()).unwrap()
    }

    fn cusp(alpha: Rational) -> QDivisor {
        let r = Ring::standard(2);
        QDivisor::single(&parse_polynomial("x^2+y^3", &r).unwrap(), alpha).unwrap()
    }

    #[test]
    fn cusp_steps() {
        let d = cusp(rat(9, 10));
        let r = d.ring().clone();
        let i1 = derivation_step(&ideal(&r, &["x", "y"]), &d, 0).unwrap();
        assert!(i1.equals(&ideal(&r, &["x^2", "x*y", "y^3"])).unwrap());
        let d = cusp(rat(3, 4));
        let i2 = derivation_step(&ideal(&r, &["x^2", "x*y", "y^3"]), &d, 1).unwrap();
        assert!(i2.equals(&ideal(&r, &["x^3", "x^2*y^2", "x*y^3", "y^4 - 5/2*x^2*y"])).unwrap());
    }

    #[test]
    fn snc_and_cone_steps() {
        let r = Ring::standard(2);
        let d = QDivisor::single(&parse_polynomial("x*y", &r).unwrap(), rat(3, 4)).unwrap();
        let i1 = derivation_step(&IdealPresentation::unit(&r), &d, 0).unwrap();
        assert_eq!(i1.to_string(), "ideal(x, y)");

        let r3 = Ring::standard(3);
        let d = QDivisor::single(&parse_polynomial("x^2+y^2+z^2", &r3).unwrap(), rat(3, 4)).unwrap();
        let i1 = derivation_step(&IdealPresentation::unit(&r3), &d, 0).unwrap();
        assert_eq!(i1.to_string(), "ideal(x, y, z)");
    }

    #[test]
    fn requires_reduced_regime() {
        let d = cusp(rat(3, 2));
        let r = d.ring().clone();
        assert!(matches!(
            derivation_step(&IdealPresentation::unit(&r), &d, 0),
            Err(HodgeError::NotReduced)
        ));
    }

    #[test]
    fn chain_exactness_flags() {
        let r3 = Ring::standard(3);
        let d = QDivisor::single(&parse_polynomial("x^2+y^2+z^2", &r3).unwrap(), rat(1, 4)).unwrap();
        let seed = i0_seed(&d).unwrap();
        assert!(seed.ideal.is_unit());
        let cert = GenerationCertificate::new(1, CertificateSource::QuasihomogeneousFormula, 3).unwrap();
        let chain = hodge_chain(&d, 2, &seed, cert).unwrap();
        assert!(!chain.get(1).unwrap().exact);
        assert!(!chain.get(2).unwrap().exact);
        assert_eq!(chain.first_inexact, Some(1));
        assert_eq!(chain.get(1).unwrap().ideal.to_string(), "ideal(x, y, z)");
        assert!(GenerationCertificate::new(3, CertificateSource::UserAsserted, 3).is_err());
    }

    #[test]
    fn seeds() {
        let r = Ring::standard(2);
        let d = QDivisor::new(
            &r,
            vec![(Polynomial::var(&r, 0), rat(3, 2)), (Polynomial::var(&r, 1), rat(1, 2))],
        )
        .unwrap();
        assert_eq!(i0_seed(&d).unwrap().ideal.to_string(), "ideal(x)");
        assert_eq!(i0_seed(&cusp(rat(9, 10))).unwrap().ideal.to_string(), "ideal(x, y)");
        assert!(i0_seed(&cusp(rat(4, 5))).unwrap().ideal.is_unit());
        assert!(i0_seed(&cusp(rat(5, 6))).unwrap().ideal.is_unit());
        assert_eq!(i0_seed(&cusp(int(1))).unwrap().ideal.to_string(), "ideal(x, y)");
        let odd = QDivisor::single(&parse_polynomial("x^2*y + y^4 + x^5", &r).unwrap(), int(1)).unwrap();
        assert!(matches!(i0_seed(&odd), Err(HodgeError::MethodUnavailable(_))));
    }

    #[test]
    fn derived_certificates() {
        assert_eq!(derive_certificate(&cusp(rat(9, 10))).level, 0);
        let r = Ring::standard(2);
        let lines = QDivisor::single(&parse_polynomial("x*y*(x+y)", &r).unwrap(), rat(1, 4)).unwrap();
        let c = derive_certificate(&lines);
        assert_eq!((c.level, c.source), (1, CertificateSource::QuasihomogeneousFormula));
    }
}
