//! Buchberger's algorithm over `Q`.
//!
//! Polynomials are handled internally as term vectors sorted *ascending* in
//! the active order, so the leading term is `last()` and can be popped.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::arith::{ExponentVector, MonomialOrder, Polynomial, Rational, Ring};

type Term = (ExponentVector, Rational);

#[derive(Debug, Clone)]
struct Poly {
    terms: Vec<Term>,
}

impl Poly {
    fn from_polynomial(p: &Polynomial, order: MonomialOrder) -> Self {
        let mut terms: Vec<Term> = p.terms().map(|(e, c)| (e.clone(), c.clone())).collect();
        terms.sort_by(|a, b| order.cmp(&a.0, &b.0));
        Poly { terms }
    }

    fn to_polynomial(&self, ring: &Arc<Ring>) -> Polynomial {
        Polynomial::from_terms(ring, self.terms.iter().cloned())
    }

    fn lm(&self) -> &ExponentVector {
        &self.terms.last().expect("nonzero").0
    }

    fn lc(&self) -> &Rational {
        &self.terms.last().expect("nonzero").1
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn make_monic(&mut self) {
        let inv = self.lc().recip();
        if inv.is_one() {
            return;
        }
        for t in &mut self.terms {
            t.1 *= &inv;
        }
    }

    fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.lm().is_one()
    }
}

/// `f - c * x^m * g`, all ascending.
fn sub_mul(f: &[Term], c: &Rational, m: &ExponentVector, g: &[Term], order: MonomialOrder) -> Vec<Term> {
    let mut out = Vec::with_capacity(f.len() + g.len());
    let mut i = 0;
    let mut j = 0;
    let shifted = |j: usize| -> ExponentVector { g[j].0.mul(m) };
    let mut gj = if g.is_empty() { None } else { Some(shifted(0)) };
    while i < f.len() || gj.is_some() {
        let take = match (&gj, f.get(i)) {
            (None, _) => Ordering::Less,
            (Some(_), None) => Ordering::Greater,
            (Some(e), Some(t)) => order.cmp(&t.0, e),
        };
        match take {
            Ordering::Less => {
                out.push(f[i].clone());
                i += 1;
            }
            Ordering::Greater => {
                let e = gj.take().unwrap();
                out.push((e, -(c * &g[j].1)));
                j += 1;
                gj = (j < g.len()).then(|| shifted(j));
            }
            Ordering::Equal => {
                let e = gj.take().unwrap();
                let v = &f[i].1 - c * &g[j].1;
                if !v.is_zero() {
                    out.push((e, v));
                }
                i += 1;
                j += 1;
                gj = (j < g.len()).then(|| shifted(j));
            }
        }
    }
    out
}

/// Full reduction of `f` modulo `basis`; every remainder term is irreducible.
fn reduce(f: &Poly, basis: &[Poly], order: MonomialOrder) -> Poly {
    let mut p = f.terms.clone();
    let mut rem: Vec<Term> = Vec::new();
    while let Some((lead, lc)) = p.last() {
        match basis.iter().find(|g| g.lm().divides(lead)) {
            Some(g) => {
                let q = g.lm().quotient(lead).expect("divides");
                let c = lc / g.lc();
                p = sub_mul(&p, &c, &q, &g.terms, order);
            }
            None => rem.push(p.pop().unwrap()),
        }
    }
    rem.reverse();
    Poly { terms: rem }
}

fn s_polynomial(f: &Poly, g: &Poly, order: MonomialOrder) -> Poly {
    let l = f.lm().lcm(g.lm());
    let mf = f.lm().quotient(&l).unwrap();
    let mg = g.lm().quotient(&l).unwrap();
    // f, g monic: S = mf*f - mg*g
    let fm: Vec<Term> = f.terms.iter().map(|(e, c)| (e.mul(&mf), c.clone())).collect();
    Poly { terms: sub_mul(&fm, &Rational::one(), &mg, &g.terms, order) }
}

/// Reduced Gröbner basis of the ideal generated by `gens`, sorted by leading
/// monomial descending. The zero ideal yields an empty basis, any unit ideal
/// yields `{1}`.
pub(crate) fn reduced_basis(
    ring: &Arc<Ring>,
    gens: &[Polynomial],
    order: MonomialOrder,
) -> Vec<Polynomial> {
    let mut g: Vec<Poly> = Vec::new();
    for p in gens {
        if p.is_zero() {
            continue;
        }
        let mut q = Poly::from_polynomial(p, order);
        if q.is_constant() {
            return vec![Polynomial::one(ring)];
        }
        q.make_monic();
        g.push(q);
    }
    if g.is_empty() {
        return Vec::new();
    }
    // start from an inter-reduced input: fewer pairs, same ideal
    g = interreduce(g, order);
    if g.len() == 1 && g[0].is_constant() {
        return vec![Polynomial::one(ring)];
    }

    let mut pending: BTreeSet<(usize, usize)> = BTreeSet::new();
    for j in 0..g.len() {
        for i in 0..j {
            pending.insert((i, j));
        }
    }

    while !pending.is_empty() {
        // normal strategy: smallest lcm first, ties by index
        let &(i, j) = pending
            .iter()
            .min_by(|a, b| {
                let la = g[a.0].lm().lcm(g[a.1].lm());
                let lb = g[b.0].lm().lcm(g[b.1].lm());
                order.cmp(&la, &lb).then_with(|| (a.1, a.0).cmp(&(b.1, b.0)))
            })
            .unwrap();
        pending.remove(&(i, j));

        if g[i].lm().is_coprime(g[j].lm()) {
            continue;
        }
        let l = g[i].lm().lcm(g[j].lm());
        let chain = (0..g.len()).any(|k| {
            k != i
                && k != j
                && g[k].lm().divides(&l)
                && !pending.contains(&(i.min(k), i.max(k)))
                && !pending.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }

        let s = s_polynomial(&g[i], &g[j], order);
        let mut r = reduce(&s, &g, order);
        if r.is_zero() {
            continue;
        }
        if r.is_constant() {
            return vec![Polynomial::one(ring)];
        }
        r.make_monic();
        let n = g.len();
        g.push(r);
        for i in 0..n {
            pending.insert((i, n));
        }
    }

    let mut g = interreduce(g, order);
    g.sort_by(|a, b| order.cmp(b.lm(), a.lm()));
    g.iter().map(|p| p.to_polynomial(ring)).collect()
}

/// Reduces each element by the others until none is reducible; the result
/// has pairwise non-divisible leading monomials and irreducible tails.
fn interreduce(g: Vec<Poly>, order: MonomialOrder) -> Vec<Poly> {
    let mut g = g;
    'outer: loop {
        for idx in 0..g.len() {
            let others: Vec<Poly> = g
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != idx)
                .map(|(_, p)| p.clone())
                .collect();
            let mut r = reduce(&g[idx], &others, order);
            if r.is_zero() {
                g.remove(idx);
                continue 'outer;
            }
            r.make_monic();
            if r.terms != g[idx].terms {
                g[idx] = r;
                continue 'outer;
            }
        }
        return g;
    }
}

/// Remainder of `f` on division by `basis` (which must be a Gröbner basis
/// for the result to be canonical).
pub(crate) fn normal_form(f: &Polynomial, basis: &[Polynomial], order: MonomialOrder) -> Polynomial {
    let b: Vec<Poly> = basis.iter().map(|p| Poly::from_polynomial(p, order)).collect();
    reduce(&Poly::from_polynomial(f, order), &b, order).to_polynomial(f.ring())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::int;

    fn ring() -> Arc<Ring> {
        Ring::new(&["x", "y"]).unwrap()
    }

    #[test]
    fn sub_mul_cancels_leading_terms() {
        let o = MonomialOrder::Grevlex;
        let r = ring();
        let x = Polynomial::var(&r, 0);
        let y = Polynomial::var(&r, 1);
        let f = Poly::from_polynomial(&(&(&x * &y) + &y), o);
        let g = Poly::from_polynomial(&(&x + &Polynomial::one(&r)), o);
        let out = sub_mul(&f.terms, &int(1), &ExponentVector::var(2, 1), &g.terms, o);
        assert!(out.is_empty());
    }

    #[test]
    fn twisted_cubic_style_basis() {
        let r = ring();
        let x = Polynomial::var(&r, 0);
        let y = Polynomial::var(&r, 1);
        let gens = vec![&x.pow(2) - &y, &(&x * &y) - &Polynomial::one(&r)];
        let b = reduced_basis(&r, &gens, MonomialOrder::Lex);
        let s: Vec<String> = b.iter().map(|p| p.to_string_with(MonomialOrder::Lex)).collect();
        assert_eq!(s, vec!["x - y^2", "y^3 - 1"]);
    }
}
