//! Method selection for `I_k(D)`.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::Serialize;

use crate::arith::{Polynomial, Rational};
use crate::closed_forms::{
    is_isolated_homogeneous, is_smooth_hypersurface, ordinary_ideal_in, smooth_support_ideal,
    snc_hodge_ideal, OrdinarySingularityModel,
};
use crate::divisor::{negative_level, HodgeIdealResult, Method, QDivisor};
use crate::error::{HodgeError, Result};
use crate::ideal::IdealPresentation;
use crate::recursion::{derive_certificate, hodge_chain, i0_seed, ChainResult, GenerationCertificate};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MethodSelector {
    #[default]
    Auto,
    Snc,
    Smooth,
    Ordinary,
    Recursion,
}

impl FromStr for MethodSelector {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "auto" => Ok(MethodSelector::Auto),
            "snc" => Ok(MethodSelector::Snc),
            "smooth" => Ok(MethodSelector::Smooth),
            "ordinary" => Ok(MethodSelector::Ordinary),
            "recursion" => Ok(MethodSelector::Recursion),
            other => Err(format!("unknown method `{other}`")),
        }
    }
}

impl fmt::Display for MethodSelector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MethodSelector::Auto => "auto",
            MethodSelector::Snc => "snc",
            MethodSelector::Smooth => "smooth",
            MethodSelector::Ordinary => "ordinary",
            MethodSelector::Recursion => "recursion",
        })
    }
}

#[derive(Debug, Clone, Default)]
pub struct ComputeOptions {
    /// Overrides the derived generation-level certificate.
    pub certificate: Option<GenerationCertificate>,
    /// A user-supplied exact `I_0(B)` for the reduced divisor `B`.
    pub seed: Option<IdealPresentation>,
}

/// Rewrites monomial components `c·x^e` as `Σ e_i div(x_i)` with merged
/// coefficients. The divisor is unchanged; only its presentation is.
pub fn normalize_monomials(d: &QDivisor) -> Result<(QDivisor, bool)> {
    let ring = d.ring();
    let mut coord: Vec<Rational> = vec![Rational::zero(); ring.len()];
    let mut rest = Vec::new();
    let mut changed = false;
    for c in d.components() {
        match c.f.as_monomial() {
            Some((e, _)) => {
                if e.degree() != 1 {
                    changed = true;
                }
                for (i, &k) in e.exponents().iter().enumerate() {
                    coord[i] += &c.alpha * Rational::from_integer(k.into());
                }
            }
            None => rest.push((c.f.clone(), c.alpha.clone())),
        }
    }
    let mut comps: Vec<(Polynomial, Rational)> = coord
        .into_iter()
        .enumerate()
        .filter(|(_, a)| !a.is_zero())
        .map(|(i, a)| (Polynomial::var(ring, i), a))
        .collect();
    let coordinate_count = d.components().iter().filter(|c| c.f.as_monomial().is_some()).count();
    if comps.len() != coordinate_count {
        changed = true;
    }
    comps.extend(rest);
    if !changed {
        return Ok((d.clone(), false));
    }
    Ok((QDivisor::new(ring, comps)?, true))
}

/// Computes `I_k(D)`, the unprimed Hodge ideal.
///
/// `Auto` tries smooth support, coordinate SNC, ordinary singularity and
/// finally the recursion from an `I_0` seed, in that order. Variables not
/// used by `D` are split off first (the ideals are pulled back along the
/// projection).
pub fn compute_hodge_ideal(d: &QDivisor, k: i64, method: MethodSelector, opts: &ComputeOptions) -> Result<HodgeIdealResult> {
    let mut notes = Vec::new();
    let (d_norm, changed) = normalize_monomials(d)?;
    if changed {
        notes.push(format!("monomial components rewritten on coordinates: {d_norm}"));
    }
    let used = d_norm.used_variables();
    let ambient = d.ring().clone();
    let (work, reduced_ring) = if used.len() < ambient.len() && opts.seed.is_none() {
        let sub = ambient.subring(&used)?;
        notes.push(format!("D is pulled back from the variables ({sub}); computed there and extended"));
        (d_norm.restrict_ambient(&sub)?, true)
    } else {
        (d_norm, false)
    };
    let mut result = dispatch(&work, k, method, opts)?;
    if reduced_ring {
        result.ideal = result.ideal.extend_ambient(&ambient)?;
    }
    let mut all = notes;
    all.append(&mut result.notes);
    result.notes = all;
    for w in d.validate() {
        result.notes.push(format!("warning: {w}"));
    }
    Ok(result)
}

fn dispatch(d: &QDivisor, k: i64, method: MethodSelector, opts: &ComputeOptions) -> Result<HodgeIdealResult> {
    match method {
        MethodSelector::Smooth => smooth_support_ideal(d, k),
        MethodSelector::Snc => snc_hodge_ideal(d, k),
        MethodSelector::Ordinary => ordinary_route(d, k)?.ok_or_else(|| {
            HodgeError::MethodUnavailable("D is not a multiple of an isolated homogeneous singularity".into())
        }),
        MethodSelector::Recursion => recursion_route(d, k, opts),
        MethodSelector::Auto => {
            if opts.seed.is_none() {
                if is_smooth_hypersurface(&d.support().g) {
                    return smooth_support_ideal(d, k);
                }
                if d.coordinate_indices().is_some() {
                    return snc_hodge_ideal(d, k);
                }
                match ordinary_route(d, k) {
                    Ok(Some(r)) => return Ok(r),
                    Ok(None) | Err(HodgeError::NoClosedForm(_)) => {}
                    Err(e) => return Err(e),
                }
            }
            recursion_route(d, k, opts)
        }
    }
}

/// `Some` when `D = α·div(h)` with `h` homogeneous of degree `m ≥ 2`, using
/// every variable, with an isolated singularity: the cone is an ordinary
/// singular point.
fn ordinary_route(d: &QDivisor, k: i64) -> Result<Option<HodgeIdealResult>> {
    if d.components().len() != 1 || d.n() < 2 {
        return Ok(None);
    }
    let h = &d.components()[0].f;
    if h.used_variables().len() != d.n() || !is_isolated_homogeneous(h) {
        return Ok(None);
    }
    let m = h.degree().expect("nonconstant");
    if m < 2 {
        return Ok(None);
    }
    let (b, twist) = d.periodic_reduce()?;
    let model = OrdinarySingularityModel::new(d.n(), m, b.components()[0].alpha.clone())?;
    let mut r = ordinary_ideal_in(d.ring(), &model, k)?;
    if !twist.is_one() {
        r.ideal = r.ideal.scale(&twist)?.canonical();
        r.notes.push(format!("twisted by {twist}"));
    }
    Ok(Some(r))
}

fn recursion_route(d: &QDivisor, k: i64, opts: &ComputeOptions) -> Result<HodgeIdealResult> {
    if k < 0 {
        return Ok(negative_level(d.ring(), k, false, Method::Recursion));
    }
    let chain = compute_chain(d, k, opts)?;
    Ok(chain.results.last().expect("chain includes k").clone())
}

/// The chain `I_0(D), ..., I_{k_max}(D)` by recursion from an `I_0` seed.
pub fn compute_chain(d: &QDivisor, k_max: i64, opts: &ComputeOptions) -> Result<ChainResult> {
    let (b, _) = d.periodic_reduce()?;
    let seed = match &opts.seed {
        Some(ideal) => HodgeIdealResult::new(0, ideal.clone(), true, Method::UserSupplied, true)
            .with_note("user-supplied I_0(B)"),
        None => i0_seed(&b)?,
    };
    let cert = match opts.certificate {
        Some(c) => GenerationCertificate::new(c.level, c.source, d.n())?,
        None => derive_certificate(&b),
    };
    hodge_chain(d, k_max, &seed, cert)
}
