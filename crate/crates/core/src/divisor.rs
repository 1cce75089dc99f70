//! Factored Q-divisors `D = Σ α_i div(f_i)` and the result record for
//! computed Hodge ideals.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};
use serde::Serialize;

use crate::arith::polynomial::check_same_ring;
use crate::arith::rational::{ceil, fmt_rational, in_unit_interval};
use crate::arith::{Polynomial, Rational, Ring};
use crate::error::{HodgeError, Result};
use crate::ideal::IdealPresentation;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub f: Polynomial,
    pub alpha: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QDivisor {
    ring: Arc<Ring>,
    components: Vec<Component>,
}

/// `g = Π f_i` together with the factors it was built from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportEquation {
    pub g: Polynomial,
    pub factors: Vec<Polynomial>,
}

impl QDivisor {
    pub fn new(ring: &Arc<Ring>, components: Vec<(Polynomial, Rational)>) -> Result<Self> {
        if components.is_empty() {
            return Err(HodgeError::InvalidDivisor("a divisor needs at least one component".into()));
        }
        let mut out = Vec::with_capacity(components.len());
        for (i, (f, alpha)) in components.into_iter().enumerate() {
            check_same_ring(ring, f.ring())?;
            if f.is_constant() {
                return Err(HodgeError::InvalidDivisor(format!(
                    "component {i} (`{f}`) is constant"
                )));
            }
            if !alpha.is_positive() {
                return Err(HodgeError::InvalidDivisor(format!(
                    "component {i} has coefficient {} but coefficients must be positive",
                    fmt_rational(&alpha)
                )));
            }
            out.push(Component { f, alpha });
        }
        Ok(QDivisor { ring: ring.clone(), components: out })
    }

    /// `α · div(f)`.
    pub fn single(f: &Polynomial, alpha: Rational) -> Result<Self> {
        Self::new(f.ring(), vec![(f.clone(), alpha)])
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn n(&self) -> usize {
        self.ring.len()
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn alphas(&self) -> Vec<Rational> {
        self.components.iter().map(|c| c.alpha.clone()).collect()
    }

    pub fn factors(&self) -> Vec<Polynomial> {
        self.components.iter().map(|c| c.f.clone()).collect()
    }

    pub fn support(&self) -> SupportEquation {
        let mut g = Polynomial::one(&self.ring);
        for c in &self.components {
            g = &g * &c.f;
        }
        SupportEquation { g, factors: self.factors() }
    }

    /// Per-component `⌈α_i⌉`.
    pub fn round_up(&self) -> Vec<BigInt> {
        self.components.iter().map(|c| ceil(&c.alpha)).collect()
    }

    /// All coefficients in `(0, 1]`, i.e. `⌈D⌉ = Z`.
    pub fn is_reduced(&self) -> bool {
        self.components.iter().all(|c| in_unit_interval(&c.alpha))
    }

    /// `Π f_i^{⌈α_i⌉ - 1}`.
    pub fn twist(&self) -> Result<Polynomial> {
        let mut t = Polynomial::one(&self.ring);
        for (c, up) in self.components.iter().zip(self.round_up()) {
            let e = (up - BigInt::one())
                .to_u32()
                .ok_or_else(|| HodgeError::ExponentOverflow(fmt_rational(&c.alpha)))?;
            if e > 0 {
                t = &t * &c.f.pow(e);
            }
        }
        Ok(t)
    }

    /// `B = D + Z - ⌈D⌉` and the twist `Π f_i^{⌈α_i⌉ - 1}`, so that
    /// `I_k(D) = twist · I_k(B)`.
    pub fn periodic_reduce(&self) -> Result<(QDivisor, Polynomial)> {
        let twist = self.twist()?;
        let components = self
            .components
            .iter()
            .map(|c| {
                let shift = Rational::from_integer(ceil(&c.alpha) - BigInt::one());
                Component { f: c.f.clone(), alpha: &c.alpha - shift }
            })
            .collect();
        Ok((QDivisor { ring: self.ring.clone(), components }, twist))
    }

    /// `D + Σ m_i div(f_i)`.
    pub fn add_integral(&self, multiplicities: &[u32]) -> Result<QDivisor> {
        if multiplicities.len() != self.components.len() {
            return Err(HodgeError::Precondition(format!(
                "{} multiplicities for {} components",
                multiplicities.len(),
                self.components.len()
            )));
        }
        let components = self
            .components
            .iter()
            .zip(multiplicities)
            .map(|(c, &m)| Component { f: c.f.clone(), alpha: &c.alpha + Rational::from_integer(m.into()) })
            .collect();
        Ok(QDivisor { ring: self.ring.clone(), components })
    }

    /// Concatenates components; the caller is responsible for coprime supports.
    pub fn sum(&self, other: &QDivisor) -> Result<QDivisor> {
        check_same_ring(&self.ring, &other.ring)?;
        let mut components = self.components.clone();
        components.extend(other.components.iter().cloned());
        Ok(QDivisor { ring: self.ring.clone(), components })
    }

    /// The same divisor viewed in a ring containing all current variable names.
    pub fn extend_ambient(&self, target: &Arc<Ring>) -> Result<QDivisor> {
        let components = self
            .components
            .iter()
            .map(|c| Ok(Component { f: c.f.extend_to(target)?, alpha: c.alpha.clone() }))
            .collect::<Result<Vec<_>>>()?;
        Ok(QDivisor { ring: target.clone(), components })
    }

    /// Moves the divisor to `target`, which must contain every variable used.
    pub fn restrict_ambient(&self, target: &Arc<Ring>) -> Result<QDivisor> {
        let components = self
            .components
            .iter()
            .map(|c| Ok(Component { f: c.f.restrict_to(target)?, alpha: c.alpha.clone() }))
            .collect::<Result<Vec<_>>>()?;
        Ok(QDivisor { ring: target.clone(), components })
    }

    /// If every `f_i` is a scalar multiple of a distinct coordinate, the coordinate indices.
    pub fn coordinate_indices(&self) -> Option<Vec<usize>> {
        let mut idx = Vec::with_capacity(self.components.len());
        for c in &self.components {
            let (e, _) = c.f.as_monomial()?;
            if e.degree() != 1 {
                return None;
            }
            let i = e.support().next()?;
            if idx.contains(&i) {
                return None;
            }
            idx.push(i);
        }
        Some(idx)
    }

    pub fn used_variables(&self) -> Vec<usize> {
        (0..self.n())
            .filter(|&i| self.components.iter().any(|c| c.f.uses_variable(i)))
            .collect()
    }

    /// Warnings about the presentation. Squarefreeness and coprimality are
    /// decided exactly only for monomial components.
    pub fn validate(&self) -> Vec<String> {
        let mut warnings = Vec::new();
        let comps = &self.components;
        for (i, c) in comps.iter().enumerate() {
            if c.f.is_constant() {
                warnings.push(format!("component {i} is constant"));
            }
            match c.f.as_monomial() {
                Some((e, _)) => {
                    if e.exponents().iter().any(|&k| k > 1) {
                        warnings.push(format!("component {i} (`{}`) is not squarefree", c.f));
                    }
                }
                None => warnings.push(format!(
                    "component {i} (`{}`): squarefreeness and coprimality with other components assumed, not verified",
                    c.f
                )),
            }
        }
        for i in 0..comps.len() {
            for j in (i + 1)..comps.len() {
                let (fi, fj) = (&comps[i].f, &comps[j].f);
                if proportional(fi, fj) {
                    warnings.push(format!("components {i} and {j} are proportional"));
                    continue;
                }
                if let (Some((ei, _)), Some((ej, _))) = (fi.as_monomial(), fj.as_monomial()) {
                    if is_power_of(ei.exponents(), ej.exponents()) || is_power_of(ej.exponents(), ei.exponents()) {
                        warnings.push(format!("components {i} and {j}: one is a power of the other"));
                    } else if !ei.is_coprime(ej) {
                        warnings.push(format!("components {i} and {j} share a factor"));
                    }
                }
            }
        }
        warnings
    }
}

fn proportional(a: &Polynomial, b: &Polynomial) -> bool {
    if a.num_terms() != b.num_terms() {
        return false;
    }
    let (Some((ea, ca)), Some((eb, cb))) = (a.terms().next(), b.terms().next()) else {
        return false;
    };
    if ea != eb {
        return false;
    }
    let ratio = cb / ca;
    &a.scale(&ratio) == b
}

/// `b = t·a` for an integer `t ≥ 2`.
fn is_power_of(a: &[u32], b: &[u32]) -> bool {
    let Some(i) = a.iter().position(|&x| x > 0) else {
        return false;
    };
    if b[i] % a[i] != 0 {
        return false;
    }
    let t = b[i] / a[i];
    t >= 2 && a.iter().zip(b).all(|(x, y)| x * t == *y)
}

impl fmt::Display for QDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .components
            .iter()
            .map(|c| format!("{}*div({})", fmt_rational(&c.alpha), c.f))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// How a Hodge ideal was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Snc,
    Smooth,
    Ordinary,
    Recursion,
    Certificate,
    MultiplierIdeal,
    UserSupplied,
}

impl Method {
    pub fn name(&self) -> &'static str {
        match self {
            Method::Snc => "snc",
            Method::Smooth => "smooth",
            Method::Ordinary => "ordinary",
            Method::Recursion => "recursion",
            Method::Certificate => "certificate",
            Method::MultiplierIdeal => "multiplier-ideal",
            Method::UserSupplied => "user-supplied",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A computed `I_k(D)` (or `I'_k(D)` when `primed`). A non-exact result is a
/// sub-ideal of the true Hodge ideal.
#[derive(Debug, Clone)]
pub struct HodgeIdealResult {
    pub k: i64,
    pub ideal: IdealPresentation,
    pub primed: bool,
    pub method: Method,
    pub exact: bool,
    pub notes: Vec<String>,
}

impl HodgeIdealResult {
    pub fn new(k: i64, ideal: IdealPresentation, primed: bool, method: Method, exact: bool) -> Self {
        HodgeIdealResult { k, ideal, primed, method, exact, notes: Vec::new() }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }
}

/// `I_k(D) = I'_k(D) · Π f_i^{⌈α_i⌉ - 1}`.
pub fn primed_to_unprimed(result: &HodgeIdealResult, d: &QDivisor) -> Result<HodgeIdealResult> {
    if !result.primed {
        return Err(HodgeError::Precondition("result is already unprimed".into()));
    }
    let twist = d.twist()?;
    let mut out = result.clone();
    out.ideal = if twist.is_one() { result.ideal.clone() } else { result.ideal.scale(&twist)? };
    out.primed = false;
    Ok(out)
}

/// Zero-ideal result for `k < 0`.
pub(crate) fn negative_level(ring: &Arc<Ring>, k: i64, primed: bool, method: Method) -> HodgeIdealResult {
    debug_assert!(k < 0);
    HodgeIdealResult::new(k, IdealPresentation::zero(ring), primed, method, true)
        .with_note("the Hodge filtration vanishes in negative degrees")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{int, rat};
    use crate::parser::parse_polynomial;

    fn div(vars: &[&str], comps: &[(&str, Rational)]) -> QDivisor {
        let r = Ring::new(vars).unwrap();
        QDivisor::new(
            &r,
            comps.iter().map(|(f, a)| (parse_polynomial(f, &r).unwrap(), a.clone())).collect(),
        )
        .unwrap()
    }

    #[test]
    fn support_and_round_up() {
        let d = div(&["x", "y"], &[("x^2+y^3", rat(9, 10))]);
        assert_eq!(d.support().g.to_string(), "y^3 + x^2");
        let d = div(&["x", "y"], &[("x", rat(3, 2)), ("y", rat(1, 2))]);
        assert_eq!(d.support().g.to_string(), "x*y");
        assert_eq!(d.round_up(), vec![BigInt::from(2), BigInt::from(1)]);
        let d = div(&["x"], &[("x", int(2))]);
        assert_eq!(d.support().g.to_string(), "x");
    }

    #[test]
    fn periodic_reduction() {
        let d = div(&["x", "y"], &[("x", rat(7, 3)), ("y", int(2))]);
        let (b, t) = d.periodic_reduce().unwrap();
        assert_eq!(b.alphas(), vec![rat(1, 3), int(1)]);
        assert_eq!(t.to_string(), "x^2*y");
        let (_, t2) = b.periodic_reduce().unwrap();
        assert!(t2.is_one());

        let d = div(&["x"], &[("x", rat(3, 2))]);
        let (b, t) = d.periodic_reduce().unwrap();
        assert_eq!(b.alphas(), vec![rat(1, 2)]);
        assert_eq!(t.to_string(), "x");
    }

    #[test]
    fn rejects_bad_components() {
        let r = Ring::new(&["x"]).unwrap();
        let x = Polynomial::var(&r, 0);
        assert!(QDivisor::new(&r, vec![(x.clone(), int(0))]).is_err());
        assert!(QDivisor::new(&r, vec![(Polynomial::one(&r), int(1))]).is_err());
        assert!(QDivisor::new(&r, vec![]).is_err());
    }

    #[test]
    fn validation_warnings() {
        assert!(div(&["x", "y"], &[("x", int(1)), ("y", int(1))]).validate().is_empty());
        let w = div(&["x", "y"], &[("x", int(1)), ("2x", int(1))]).validate();
        assert!(w.iter().any(|m| m.contains("proportional")));
        let w = div(&["x", "y"], &[("x^2+y^3", int(1))]).validate();
        assert!(w.iter().any(|m| m.contains("not verified")));
        let w = div(&["x", "y"], &[("x*y", int(1)), ("x^2*y^2", int(1))]).validate();
        assert!(w.iter().any(|m| m.contains("power")));
        let w = div(&["x", "y"], &[("x*y", int(1)), ("x", int(1))]).validate();
        assert!(w.iter().any(|m| m.contains("share")));
    }

    #[test]
    fn unprimed_conversion() {
        let d = div(&["x"], &[("x", rat(3, 2))]);
        let unit = HodgeIdealResult::new(0, IdealPresentation::unit(d.ring()), true, Method::Smooth, true);
        let out = primed_to_unprimed(&unit, &d).unwrap();
        assert!(!out.primed);
        assert_eq!(out.ideal.to_string(), "ideal(x)");
        assert!(primed_to_unprimed(&out, &d).is_err());
    }
}
