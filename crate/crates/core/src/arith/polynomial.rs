use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use super::monomial::{ExponentVector, MonomialOrder};
use super::rational::{fmt_rational, Rational};
use crate::error::{HodgeError, Result};

/// An ordered list of variable names; the ambient polynomial ring `Q[x_1..x_n]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ring {
    vars: Vec<String>,
}

impl Ring {
    /// Builds a ring, rejecting empty, duplicate or malformed names.
    pub fn new<S: AsRef<str>>(vars: &[S]) -> Result<Arc<Ring>> {
        if vars.is_empty() {
            return Err(HodgeError::Precondition("ambient variable list is empty".into()));
        }
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        for (i, v) in vars.iter().enumerate() {
            if !is_identifier(v) {
                return Err(HodgeError::Precondition(format!(
                    "variable name `{v}` must match [A-Za-z][A-Za-z0-9_]*"
                )));
            }
            if vars[..i].contains(v) {
                return Err(HodgeError::Precondition(format!("duplicate variable `{v}`")));
            }
        }
        Ok(Arc::new(Ring { vars }))
    }

    /// `x, y, z` for `n <= 3`, otherwise `x1, ..., xn`.
    pub fn standard(n: usize) -> Arc<Ring> {
        let vars: Vec<String> = if n <= 3 {
            ["x", "y", "z"][..n].iter().map(|s| s.to_string()).collect()
        } else {
            (1..=n).map(|i| format!("x{i}")).collect()
        };
        Ring::new(&vars).expect("standard names are valid")
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// The ring with variable `index` removed.
    pub fn without(&self, index: usize) -> Result<Arc<Ring>> {
        if index >= self.len() {
            return Err(HodgeError::VariableOutOfRange { index, len: self.len() });
        }
        let vars: Vec<&String> = self
            .vars
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != index)
            .map(|(_, v)| v)
            .collect();
        Ring::new(&vars)
    }

    /// The subring on the given variable indices (in the given order).
    pub fn subring(&self, indices: &[usize]) -> Result<Arc<Ring>> {
        let vars: Vec<&String> = indices.iter().map(|&i| &self.vars[i]).collect();
        Ring::new(&vars)
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.vars.join(","))
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

pub(crate) fn check_same_ring(a: &Ring, b: &Ring) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(HodgeError::AmbientMismatch { left: a.to_string(), right: b.to_string() })
    }
}

/// Multivariate polynomial with exact rational coefficients.
///
/// Zero coefficients are never stored, so structural equality is
/// mathematical equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    ring: Arc<Ring>,
    terms: BTreeMap<ExponentVector, Rational>,
}

impl Polynomial {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        Polynomial { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ring: &Arc<Ring>) -> Self {
        Self::constant(ring, Rational::one())
    }

    pub fn constant(ring: &Arc<Ring>, c: Rational) -> Self {
        Self::monomial(ring, ExponentVector::one(ring.len()), c)
    }

    pub fn var(ring: &Arc<Ring>, index: usize) -> Self {
        Self::monomial(ring, ExponentVector::var(ring.len(), index), Rational::one())
    }

    pub fn monomial(ring: &Arc<Ring>, exponents: ExponentVector, c: Rational) -> Self {
        assert_eq!(exponents.len(), ring.len(), "exponent vector length must match the ring");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exponents, c);
        }
        Polynomial { ring: ring.clone(), terms }
    }

    /// Collects terms, summing repeated exponents and dropping zeros.
    pub fn from_terms(
        ring: &Arc<Ring>,
        terms: impl IntoIterator<Item = (ExponentVector, Rational)>,
    ) -> Self {
        let mut p = Self::zero(ring);
        for (e, c) in terms {
            assert_eq!(e.len(), ring.len(), "exponent vector length must match the ring");
            p.add_term(e, c);
        }
        p
    }

    pub(crate) fn add_term(&mut self, e: ExponentVector, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.is_one())
    }

    /// The constant value, if the polynomial is constant.
    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_zero() {
            return Some(Rational::zero());
        }
        if !self.is_constant() {
            return None;
        }
        self.terms.values().next().cloned()
    }

    pub fn coefficient(&self, e: &ExponentVector) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.degree()).max()
    }

    /// Lowest total degree of a term, i.e. the multiplicity at the origin.
    /// `None` for the zero polynomial (order `+∞`).
    pub fn order_at_origin(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.degree()).min()
    }

    /// Order of vanishing along the coordinate hyperplane `x_index = 0`.
    pub fn order_in_variable(&self, index: usize) -> Option<u32> {
        self.terms.keys().map(|e| e.exponents()[index]).min()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.degree());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn uses_variable(&self, index: usize) -> bool {
        self.terms.keys().any(|e| e.exponents()[index] > 0)
    }

    pub fn used_variables(&self) -> Vec<usize> {
        (0..self.ring.len()).filter(|&i| self.uses_variable(i)).collect()
    }

    /// If the polynomial is a single term, returns it.
    pub fn as_monomial(&self) -> Option<(&ExponentVector, &Rational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// Terms sorted descending in `order`.
    pub fn sorted_terms(&self, order: MonomialOrder) -> Vec<(&ExponentVector, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| order.cmp(b.0, a.0));
        v
    }

    pub fn leading_term(&self, order: MonomialOrder) -> Option<(&ExponentVector, &Rational)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0))
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self, order: MonomialOrder) -> Self {
        match self.leading_term(order) {
            None => self.clone(),
            Some((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &ExponentVector, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(e, v)| (e.mul(m), v * c)).collect(),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        check_same_ring(&self.ring, &other.ring)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        check_same_ring(&self.ring, &other.ring)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        check_same_ring(&self.ring, &other.ring)?;
        let mut out = Self::zero(&self.ring);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(ea.mul(eb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one(&self.ring);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn partial_derivative(&self, index: usize) -> Result<Self> {
        if index >= self.ring.len() {
            return Err(HodgeError::VariableOutOfRange { index, len: self.ring.len() });
        }
        let mut out = Self::zero(&self.ring);
        for (e, c) in &self.terms {
            let k = e.exponents()[index];
            if k == 0 {
                continue;
            }
            let mut d = e.clone();
            d.exponents_mut()[index] -= 1;
            out.add_term(d, c * Rational::from_integer(k.into()));
        }
        Ok(out)
    }

    /// Evaluates the ring map `x_i ↦ images[i]`, landing in the ring of the images.
    pub fn compose(&self, target: &Arc<Ring>, images: &[Polynomial]) -> Result<Self> {
        if images.len() != self.ring.len() {
            return Err(HodgeError::Precondition(format!(
                "composition needs {} images, got {}",
                self.ring.len(),
                images.len()
            )));
        }
        for img in images {
            check_same_ring(target, &img.ring)?;
        }
        // cache powers per variable
        let mut powers: Vec<Vec<Polynomial>> = images.iter().map(|p| vec![Self::one(target), p.clone()]).collect();
        let mut out = Self::zero(target);
        for (e, c) in &self.terms {
            let mut term = Self::constant(target, c.clone());
            for (i, &k) in e.exponents().iter().enumerate() {
                if k == 0 {
                    continue;
                }
                while powers[i].len() <= k as usize {
                    let next = powers[i].last().unwrap() * &images[i];
                    powers[i].push(next);
                }
                term = &term * &powers[i][k as usize];
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Applies `x_index ↦ replacement`; the result lives in the ring without `x_index`.
    ///
    /// `replacement` may be given either in the reduced ring or in the
    /// full ring, in which case it must not involve `x_index`.
    pub fn substitute_linear(&self, index: usize, replacement: &Polynomial) -> Result<Self> {
        let reduced = self.ring.without(index)?;
        let replacement = if *replacement.ring == *self.ring {
            if replacement.uses_variable(index) {
                return Err(HodgeError::ReplacementUsesEliminated(
                    self.ring.vars()[index].clone(),
                ));
            }
            replacement.restrict_to(&reduced)?
        } else {
            check_same_ring(&reduced, &replacement.ring)?;
            replacement.clone()
        };
        let images: Vec<Polynomial> = (0..self.ring.len())
            .map(|i| {
                if i == index {
                    replacement.clone()
                } else {
                    let j = if i < index { i } else { i - 1 };
                    Self::var(&reduced, j)
                }
            })
            .collect();
        self.compose(&reduced, &images)
    }

    /// Views the polynomial in a ring containing all of its variable names.
    pub fn extend_to(&self, target: &Arc<Ring>) -> Result<Self> {
        let map = self.variable_map(target)?;
        let terms = self.terms.iter().map(|(e, c)| {
            let mut v = vec![0u32; target.len()];
            for (i, &k) in e.exponents().iter().enumerate() {
                v[map[i]] = k;
            }
            (ExponentVector::new(v), c.clone())
        });
        Ok(Self::from_terms(target, terms))
    }

    /// Moves the polynomial into a ring that contains every variable it uses.
    pub fn restrict_to(&self, target: &Arc<Ring>) -> Result<Self> {
        let mut map = Vec::with_capacity(self.ring.len());
        for (i, name) in self.ring.vars().iter().enumerate() {
            match target.index_of(name) {
                Some(j) => map.push(Some(j)),
                None if !self.uses_variable(i) => map.push(None),
                None => {
                    return Err(HodgeError::AmbientMismatch {
                        left: self.ring.to_string(),
                        right: target.to_string(),
                    })
                }
            }
        }
        let terms = self.terms.iter().map(|(e, c)| {
            let mut v = vec![0u32; target.len()];
            for (i, &k) in e.exponents().iter().enumerate() {
                if let Some(j) = map[i] {
                    v[j] = k;
                }
            }
            (ExponentVector::new(v), c.clone())
        });
        Ok(Self::from_terms(target, terms))
    }

    fn variable_map(&self, target: &Ring) -> Result<Vec<usize>> {
        self.ring
            .vars()
            .iter()
            .map(|name| {
                target.index_of(name).ok_or_else(|| HodgeError::AmbientMismatch {
                    left: self.ring.to_string(),
                    right: target.to_string(),
                })
            })
            .collect()
    }

    /// Text form with terms sorted descending in `order`.
    pub fn to_string_with(&self, order: MonomialOrder) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.sorted_terms(order).into_iter().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let abs = c.abs();
            let mono = format_monomial(&self.ring, e);
            if mono.is_empty() {
                out.push_str(&fmt_rational(&abs));
            } else if abs.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&fmt_rational(&abs));
                out.push('*');
                out.push_str(&mono);
            }
        }
        out
    }
}

fn format_monomial(ring: &Ring, e: &ExponentVector) -> String {
    let mut parts = Vec::new();
    for (i, &k) in e.exponents().iter().enumerate() {
        match k {
            0 => {}
            1 => parts.push(ring.vars()[i].clone()),
            _ => parts.push(format!("{}^{}", ring.vars()[i], k)),
        }
    }
    parts.join("*")
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with(MonomialOrder::Grevlex))
    }
}

// Operator impls panic on ambient mismatch; use the `checked_*` methods for
// fallible arithmetic.
impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("polynomials must share an ambient ring")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("polynomials must share an ambient ring")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("polynomials must share an ambient ring")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}
