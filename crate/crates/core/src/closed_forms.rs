//! Closed-form Hodge ideals: smooth support, coordinate SNC divisors,
//! ordinary singularities and nodes, plus the generation-level formula for
//! quasi-homogeneous isolated singularities.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::rational::{ceil, floor, fmt_rational, in_unit_interval};
use crate::arith::{ExponentVector, Polynomial, Rational, Ring};
use crate::divisor::{negative_level, HodgeIdealResult, Method, QDivisor};
use crate::error::{HodgeError, Result};
use crate::ideal::IdealPresentation;

/// True iff `{f = 0}` is a smooth hypersurface (possibly empty) in affine
/// space over the algebraic closure: `⟨f, ∂_1 f, ..., ∂_n f⟩ = ⟨1⟩`.
pub fn is_smooth_hypersurface(f: &Polynomial) -> bool {
    if f.degree().unwrap_or(0) <= 1 {
        return true;
    }
    let mut gens = vec![f.clone()];
    for i in 0..f.ring().len() {
        gens.push(f.partial_derivative(i).expect("index in range"));
    }
    IdealPresentation::new(f.ring(), gens).expect("same ring").is_unit()
}

/// `I_k(D) = ⟨Π f_i^{⌈α_i⌉-1}⟩` when the support `Z` is smooth.
///
/// Smoothness of `Z = {Π f_i = 0}` is decided exactly by a Gröbner basis
/// computation; several components are allowed when their zero sets are
/// disjoint smooth hypersurfaces.
pub fn smooth_support_ideal(d: &QDivisor, k: i64) -> Result<HodgeIdealResult> {
    let g = d.support().g;
    if !is_smooth_hypersurface(&g) {
        return Err(HodgeError::Precondition(format!("the support {g} = 0 is singular")));
    }
    if k < 0 {
        return Ok(negative_level(d.ring(), k, false, Method::Smooth));
    }
    let ideal = IdealPresentation::principal(&d.twist()?);
    Ok(HodgeIdealResult::new(k, ideal, false, Method::Smooth, true)
        .with_note("support verified smooth: ⟨g, ∂g⟩ = ⟨1⟩"))
}

/// Monomials `Π x_i^{c_i}` over the coordinates `vars`, with `0 ≤ c_i ≤ k`
/// and `Σ c_i = (r-1)k`.
pub fn snc_reduced_ideal(ring: &Arc<Ring>, vars: &[usize], k: u32) -> IdealPresentation {
    let r = vars.len();
    if r <= 1 {
        return IdealPresentation::unit(ring);
    }
    let target = (r as u32 - 1) * k;
    let mut out = Vec::new();
    let mut c = vec![0u32; r];
    enumerate_bounded(&mut c, 0, target, k, &mut |c| {
        let mut e = vec![0u32; ring.len()];
        for (slot, &v) in vars.iter().enumerate() {
            e[v] = c[slot];
        }
        out.push(ExponentVector::new(e));
    });
    IdealPresentation::monomial(ring, out)
}

fn enumerate_bounded(c: &mut Vec<u32>, pos: usize, remaining: u32, bound: u32, emit: &mut dyn FnMut(&[u32])) {
    if pos == c.len() {
        if remaining == 0 {
            emit(c);
        }
        return;
    }
    let slots_left = (c.len() - pos - 1) as u32;
    let lo = remaining.saturating_sub(slots_left * bound);
    let hi = remaining.min(bound);
    for v in lo..=hi {
        c[pos] = v;
        enumerate_bounded(c, pos + 1, remaining - v, bound, emit);
    }
    c[pos] = 0;
}

/// `I_k(D)` for `D = Σ α_i div(x_{j_i})` on distinct coordinates.
pub fn snc_hodge_ideal(d: &QDivisor, k: i64) -> Result<HodgeIdealResult> {
    let vars = d.coordinate_indices().ok_or_else(|| {
        HodgeError::Precondition("every component must be a distinct coordinate".into())
    })?;
    if k < 0 {
        return Ok(negative_level(d.ring(), k, false, Method::Snc));
    }
    let k32 = u32::try_from(k).map_err(|_| HodgeError::ExponentOverflow(k.to_string()))?;
    let base = snc_reduced_ideal(d.ring(), &vars, k32);
    let ideal = base.scale(&d.twist()?)?;
    Ok(HodgeIdealResult::new(k, ideal, false, Method::Snc, true))
}

/// An isolated singular point of multiplicity `m` with smooth projectivized
/// tangent cone, on `D = αZ` with `α ∈ (0, 1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrdinarySingularityModel {
    pub n: usize,
    pub m: u32,
    pub alpha: Rational,
}

impl OrdinarySingularityModel {
    pub fn new(n: usize, m: u32, alpha: Rational) -> Result<Self> {
        if n < 2 {
            return Err(HodgeError::Precondition("ordinary singularities need n ≥ 2".into()));
        }
        if m < 2 {
            return Err(HodgeError::Precondition(format!(
                "multiplicity {m} < 2: the point is not singular"
            )));
        }
        if !in_unit_interval(&alpha) {
            return Err(HodgeError::NotReduced);
        }
        Ok(OrdinarySingularityModel { n, m, alpha })
    }

    /// `m ≤ n/(k+α)`, i.e. `m(k+α) ≤ n`.
    pub fn is_trivial(&self, k: i64) -> bool {
        k >= 0 && Rational::from_integer(self.m.into()) * (Rational::from_integer(k.into()) + &self.alpha)
            <= Rational::from_integer(self.n.into())
    }
}

/// `I_k(αZ)` near an ordinary singular point, computed in `ring`
/// (which must have `model.n` variables; the point is the origin).
pub fn ordinary_ideal_in(ring: &Arc<Ring>, model: &OrdinarySingularityModel, k: i64) -> Result<HodgeIdealResult> {
    if ring.len() != model.n {
        return Err(HodgeError::Precondition(format!(
            "model has n = {} but the ring has {} variables",
            model.n,
            ring.len()
        )));
    }
    if k < 0 {
        return Ok(negative_level(ring, k, false, Method::Ordinary));
    }
    let n = model.n as i64;
    let m = model.m as i64;
    if model.is_trivial(k) {
        return Ok(HodgeIdealResult::new(k, IdealPresentation::unit(ring), false, Method::Ordinary, true)
            .with_note(format!("m(k+α) = {} ≤ n = {n}", fmt_rational(&(Rational::from_integer(m.into()) * (Rational::from_integer(k.into()) + &model.alpha))))));
    }
    if n == 2 && m == 2 {
        let e = u32::try_from(k).map_err(|_| HodgeError::ExponentOverflow(k.to_string()))?;
        return Ok(HodgeIdealResult::new(k, IdealPresentation::maximal_power(ring, e), false, Method::Ordinary, true)
            .with_note("node: I_k = m^k, generated at level 0"));
    }
    let up = ceil(&(&model.alpha * Rational::from_integer(m.into())))
        .to_i64()
        .ok_or_else(|| HodgeError::ExponentOverflow(fmt_rational(&model.alpha)))?;
    if (k - 1) * m + up < n && k <= n - 2 {
        let e = k * m + up - n;
        let e = u32::try_from(e).map_err(|_| HodgeError::ExponentOverflow(e.to_string()))?;
        return Ok(HodgeIdealResult::new(k, IdealPresentation::maximal_power(ring, e), false, Method::Ordinary, true)
            .with_note(format!("I_k = m^(km + ⌈αm⌉ - n) = m^{e}")));
    }
    Err(HodgeError::NoClosedForm(format!(
        "ordinary point n = {n}, m = {m}, α = {}, k = {k} lies outside the closed-form region",
        fmt_rational(&model.alpha)
    )))
}

/// `ordinary_ideal_in` over the standard ring on `model.n` variables.
pub fn ordinary_ideal(model: &OrdinarySingularityModel, k: i64) -> Result<HodgeIdealResult> {
    ordinary_ideal_in(&Ring::standard(model.n), model, k)
}

/// `I_k(α·div(xy)) = m^k` in two variables.
pub fn node_ideal(k: i64, alpha: &Rational) -> Result<HodgeIdealResult> {
    if !in_unit_interval(alpha) {
        return Err(HodgeError::NotReduced);
    }
    let ring = Ring::standard(2);
    if k < 0 {
        return Ok(negative_level(&ring, k, false, Method::Ordinary));
    }
    let e = u32::try_from(k).map_err(|_| HodgeError::ExponentOverflow(k.to_string()))?;
    Ok(HodgeIdealResult::new(k, IdealPresentation::maximal_power(&ring, e), false, Method::Ordinary, true)
        .with_note("node: generated at level 0"))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightVector {
    pub weights: Vec<Rational>,
}

impl WeightVector {
    pub fn new(weights: Vec<Rational>) -> Result<Self> {
        if weights.iter().any(|w| !w.is_positive()) {
            return Err(HodgeError::Precondition("weights must be positive".into()));
        }
        Ok(WeightVector { weights })
    }

    pub fn weighted_degree(&self, e: &ExponentVector) -> Rational {
        e.exponents()
            .iter()
            .zip(&self.weights)
            .map(|(&k, w)| w * Rational::from_integer(k.into()))
            .fold(Rational::zero(), |a, b| a + b)
    }

    pub fn total(&self) -> Rational {
        self.weights.iter().fold(Rational::zero(), |a, b| a + b)
    }
}

/// `α̃_h = Σ w_i` for `h` weighted-homogeneous of weighted degree 1.
pub fn alpha_tilde_quasihomogeneous(weights: &WeightVector, h: &Polynomial) -> Result<Rational> {
    if weights.weights.len() != h.ring().len() {
        return Err(HodgeError::Precondition(format!(
            "{} weights for {} variables",
            weights.weights.len(),
            h.ring().len()
        )));
    }
    if h.is_zero() {
        return Err(HodgeError::Precondition("h is zero".into()));
    }
    for (e, _) in h.terms() {
        let deg = weights.weighted_degree(e);
        if !deg.is_one() {
            return Err(HodgeError::Precondition(format!(
                "h is not weighted-homogeneous of degree 1: a term has weighted degree {}",
                fmt_rational(&deg)
            )));
        }
    }
    Ok(weights.total())
}

/// `max(0, min(n-1, ⌊n - α̃ - α⌋))`.
pub fn generation_level(n: usize, alpha_tilde: &Rational, alpha: &Rational) -> u32 {
    let raw = floor(&(Rational::from_integer(BigInt::from(n)) - alpha_tilde - alpha));
    let top = BigInt::from(n.saturating_sub(1));
    let clamped = if raw.is_negative() { BigInt::zero() } else { raw.min(top) };
    clamped.to_u32().expect("bounded by n")
}

/// Weights making `h` weighted-homogeneous of degree 1, for the two shapes
/// handled here: homogeneous (`1/deg` each) and diagonal `Σ c_i x_i^{e_i}`
/// (`1/e_i`). Every variable must appear.
pub fn detect_weights(h: &Polynomial) -> Option<WeightVector> {
    let n = h.ring().len();
    if h.used_variables().len() != n {
        return None;
    }
    let deg = h.degree()?;
    if deg >= 1 && h.is_homogeneous() {
        let w = Rational::new(BigInt::one(), BigInt::from(deg));
        return WeightVector::new(vec![w; n]).ok();
    }
    if h.num_terms() == n {
        let mut weights = vec![Rational::zero(); n];
        for (e, _) in h.terms() {
            let mut support = e.support();
            let i = support.next()?;
            if support.next().is_some() || !weights[i].is_zero() {
                return None;
            }
            weights[i] = Rational::new(BigInt::one(), BigInt::from(e.exponents()[i]));
        }
        return WeightVector::new(weights).ok();
    }
    None
}

/// True iff the Jacobian ideal of `h` is primary to the maximal ideal at
/// the origin, i.e. `h` has at most an isolated singular point there
/// (checked via pure powers among the grevlex leading monomials), and `h`
/// is homogeneous so that no other singular point exists.
pub fn is_isolated_homogeneous(h: &Polynomial) -> bool {
    if !h.is_homogeneous() {
        return false;
    }
    let ring = h.ring();
    let jac: Vec<Polynomial> = (0..ring.len()).map(|i| h.partial_derivative(i).expect("in range")).collect();
    let gb = IdealPresentation::new(ring, jac).expect("same ring").groebner().clone();
    let lms = gb.leading_monomials();
    (0..ring.len()).all(|i| {
        lms.iter().any(|e| {
            let mut s = e.support();
            s.next() == Some(i) && s.next().is_none()
        })
    })
}
