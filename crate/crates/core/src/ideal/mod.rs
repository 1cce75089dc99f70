//! Ideal presentations and the operations used to compare them.

mod groebner;

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::arith::polynomial::check_same_ring;
use crate::arith::{ExponentVector, MonomialOrder, Polynomial, Rational, Ring};
use crate::error::{HodgeError, Result};

/// Reduced Gröbner basis for a fixed monomial order. Elements are monic and
/// sorted by leading monomial, descending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedGroebnerBasis {
    ring: Arc<Ring>,
    basis: Vec<Polynomial>,
    order: MonomialOrder,
}

impl ReducedGroebnerBasis {
    pub fn basis(&self) -> &[Polynomial] {
        &self.basis
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn is_unit(&self) -> bool {
        self.basis.len() == 1 && self.basis[0].is_constant()
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn leading_monomials(&self) -> Vec<ExponentVector> {
        self.basis
            .iter()
            .map(|p| p.leading_term(self.order).expect("basis elements are nonzero").0.clone())
            .collect()
    }

    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        check_same_ring(&self.ring, f.ring())?;
        Ok(groebner::normal_form(f, &self.basis, self.order))
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }
}

impl fmt::Display for ReducedGroebnerBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_ideal(f, &self.basis, self.order)
    }
}

fn write_ideal(f: &mut fmt::Formatter<'_>, gens: &[Polynomial], order: MonomialOrder) -> fmt::Result {
    if gens.is_empty() {
        return f.write_str("ideal(0)");
    }
    let parts: Vec<String> = gens.iter().map(|p| p.to_string_with(order)).collect();
    write!(f, "ideal({})", parts.join(", "))
}

/// A finite list of generators in a common ring. The empty list is the
/// zero ideal.
#[derive(Debug, Clone)]
pub struct IdealPresentation {
    ring: Arc<Ring>,
    generators: Vec<Polynomial>,
    grevlex: OnceLock<ReducedGroebnerBasis>,
}

impl IdealPresentation {
    pub fn new(ring: &Arc<Ring>, generators: Vec<Polynomial>) -> Result<Self> {
        for g in &generators {
            check_same_ring(ring, g.ring())?;
        }
        Ok(IdealPresentation {
            ring: ring.clone(),
            generators: generators.into_iter().filter(|g| !g.is_zero()).collect(),
            grevlex: OnceLock::new(),
        })
    }

    pub fn zero(ring: &Arc<Ring>) -> Self {
        IdealPresentation { ring: ring.clone(), generators: Vec::new(), grevlex: OnceLock::new() }
    }

    pub fn unit(ring: &Arc<Ring>) -> Self {
        Self::principal(&Polynomial::one(ring))
    }

    pub fn principal(p: &Polynomial) -> Self {
        Self::new(p.ring(), vec![p.clone()]).expect("single ring")
    }

    /// The ideal generated by monomials `x^e`.
    pub fn monomial(ring: &Arc<Ring>, exponents: impl IntoIterator<Item = ExponentVector>) -> Self {
        let gens = exponents
            .into_iter()
            .map(|e| Polynomial::monomial(ring, e, Rational::from_integer(1.into())))
            .collect();
        Self::new(ring, gens).expect("single ring")
    }

    /// `(x_1, ..., x_n)^e`.
    pub fn maximal_power(ring: &Arc<Ring>, e: u32) -> Self {
        let vars: Vec<Polynomial> = (0..ring.len()).map(|i| Polynomial::var(ring, i)).collect();
        let m = Self::new(ring, vars).expect("single ring");
        m.power(e)
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    /// True iff the presentation has no generators. Use `groebner().is_zero_ideal()`
    /// for the mathematical test (they agree since zeros are dropped).
    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.groebner().is_unit()
    }

    /// The cached grevlex reduced basis.
    pub fn groebner(&self) -> &ReducedGroebnerBasis {
        self.grevlex.get_or_init(|| self.groebner_with(MonomialOrder::Grevlex))
    }

    pub fn groebner_with(&self, order: MonomialOrder) -> ReducedGroebnerBasis {
        if order == MonomialOrder::Grevlex {
            if let Some(gb) = self.grevlex.get() {
                return gb.clone();
            }
        }
        ReducedGroebnerBasis {
            ring: self.ring.clone(),
            basis: groebner::reduced_basis(&self.ring, &self.generators, order),
            order,
        }
    }

    /// The same ideal presented by its reduced grevlex basis.
    pub fn canonical(&self) -> Self {
        let gb = self.groebner().clone();
        IdealPresentation {
            ring: self.ring.clone(),
            generators: gb.basis.clone(),
            grevlex: OnceLock::from(gb),
        }
    }

    pub fn contains_poly(&self, f: &Polynomial) -> Result<bool> {
        self.groebner().contains(f)
    }

    /// `other ⊆ self`.
    pub fn contains_ideal(&self, other: &Self) -> Result<bool> {
        check_same_ring(&self.ring, &other.ring)?;
        let gb = self.groebner();
        for g in &other.generators {
            if !gb.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn equals(&self, other: &Self) -> Result<bool> {
        check_same_ring(&self.ring, &other.ring)?;
        Ok(self.groebner().basis == other.groebner().basis)
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        check_same_ring(&self.ring, &other.ring)?;
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        Self::new(&self.ring, gens)
    }

    pub fn product(&self, other: &Self) -> Result<Self> {
        check_same_ring(&self.ring, &other.ring)?;
        let mut gens = Vec::with_capacity(self.generators.len() * other.generators.len());
        for a in &self.generators {
            for b in &other.generators {
                gens.push(a * b);
            }
        }
        Ok(Self::new(&self.ring, gens)?.dedup())
    }

    /// `I^e`, with `I^0 = ⟨1⟩`. Intermediate powers are canonicalized to keep
    /// generator counts small.
    pub fn power(&self, e: u32) -> Self {
        let mut out = Self::unit(&self.ring);
        for _ in 0..e {
            out = out.product(self).expect("same ring").canonical();
        }
        out
    }

    /// `p · I`.
    pub fn scale(&self, p: &Polynomial) -> Result<Self> {
        check_same_ring(&self.ring, p.ring())?;
        Self::new(&self.ring, self.generators.iter().map(|g| g * p).collect())
    }

    /// Largest `q` with `I ⊆ m_0^q`; `None` for the zero ideal.
    pub fn order_at_origin(&self) -> Option<u32> {
        self.generators.iter().filter_map(|g| g.order_at_origin()).min()
    }

    /// The same generators in a ring containing all current variable names.
    pub fn extend_ambient(&self, target: &Arc<Ring>) -> Result<Self> {
        let gens = self.generators.iter().map(|g| g.extend_to(target)).collect::<Result<Vec<_>>>()?;
        Self::new(target, gens)
    }

    /// Moves generators to `target`, which must contain every variable they use.
    pub fn restrict_ambient(&self, target: &Arc<Ring>) -> Result<Self> {
        let gens = self.generators.iter().map(|g| g.restrict_to(target)).collect::<Result<Vec<_>>>()?;
        Self::new(target, gens)
    }

    /// Image under `x_index ↦ replacement`, in the ring without `x_index`.
    pub fn substitute_linear(&self, index: usize, replacement: &Polynomial) -> Result<Self> {
        let reduced = self.ring.without(index)?;
        let gens = self
            .generators
            .iter()
            .map(|g| g.substitute_linear(index, replacement))
            .collect::<Result<Vec<_>>>()?;
        Self::new(&reduced, gens)
    }

    fn dedup(mut self) -> Self {
        let mut seen = std::collections::HashSet::new();
        self.generators.retain(|g| seen.insert(g.clone()));
        self
    }
}

impl fmt::Display for IdealPresentation {
    /// Canonical form: the reduced grevlex basis.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_ideal(f, &self.groebner().basis, MonomialOrder::Grevlex)
    }
}

pub fn buchberger(ideal: &IdealPresentation, order: MonomialOrder) -> ReducedGroebnerBasis {
    ideal.groebner_with(order)
}

pub fn normal_form(f: &Polynomial, gb: &ReducedGroebnerBasis) -> Result<Polynomial> {
    gb.normal_form(f)
}

pub fn contains_poly(ideal: &IdealPresentation, f: &Polynomial) -> Result<bool> {
    ideal.contains_poly(f)
}

pub fn contains_ideal(i: &IdealPresentation, j: &IdealPresentation) -> Result<bool> {
    i.contains_ideal(j)
}

pub fn ideal_equal(i: &IdealPresentation, j: &IdealPresentation) -> Result<bool> {
    i.equals(j)
}

pub fn ideal_sum(i: &IdealPresentation, j: &IdealPresentation) -> Result<IdealPresentation> {
    i.sum(j)
}

pub fn ideal_product(i: &IdealPresentation, j: &IdealPresentation) -> Result<IdealPresentation> {
    i.product(j)
}

pub fn ideal_power(i: &IdealPresentation, e: u32) -> IdealPresentation {
    i.power(e)
}

pub fn ideal_order_at_origin(i: &IdealPresentation) -> Option<u32> {
    i.order_at_origin()
}

pub fn extend_ambient(i: &IdealPresentation, target: &Arc<Ring>) -> Result<IdealPresentation> {
    i.extend_ambient(target)
}

/// Errors if `i` is the zero ideal, mirroring `Polynomial::order_at_origin`.
pub fn require_order(i: &IdealPresentation) -> Result<u32> {
    i.order_at_origin()
        .ok_or_else(|| HodgeError::Precondition("order at origin of the zero ideal is infinite".into()))
}
