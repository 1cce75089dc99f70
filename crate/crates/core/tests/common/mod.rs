//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use hodge_core::arith::rational::{int, is_zero, rat};
use hodge_core::parser::parse_polynomial;
use hodge_core::{ExponentVector, Polynomial, QDivisor, Rational, Ring};

pub fn poly(ring: &Arc<Ring>, text: &str) -> Polynomial {
    parse_polynomial(text, ring).unwrap()
}

pub fn divisor(vars: &[&str], comps: &[(&str, Rational)]) -> QDivisor {
    let ring = Ring::new(vars).unwrap();
    let comps = comps.iter().map(|(f, a)| (poly(&ring, f), a.clone())).collect();
    QDivisor::new(&ring, comps).unwrap()
}

/// Order at the origin of the ideal generated by `gens`: the minimum over any
/// generating set. `None` for the zero ideal.
pub fn generator_order(gens: &[Polynomial]) -> Option<u32> {
    gens.iter().filter_map(|g| g.terms().map(|(e, _)| e.degree()).min()).min()
}

fn monomials_up_to(n: usize, d: u32) -> Vec<ExponentVector> {
    let mut out = vec![ExponentVector::one(n)];
    let mut frontier = out.clone();
    for _ in 0..d {
        let mut next = Vec::new();
        for m in &frontier {
            let start = m.exponents().iter().rposition(|&e| e > 0).unwrap_or(0);
            for i in start..n {
                next.push(m.mul(&ExponentVector::var(n, i)));
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Row echelon form over the rationals on sparse rows; a row's pivot is its
/// largest column.
struct Echelon {
    pivots: BTreeMap<usize, BTreeMap<usize, Rational>>,
}

impl Echelon {
    fn reduce(&self, mut row: BTreeMap<usize, Rational>) -> BTreeMap<usize, Rational> {
        while let Some((&col, c)) = row.iter().next_back() {
            let Some(p) = self.pivots.get(&col) else { break };
            let factor = c.clone();
            for (j, v) in p {
                let e = row.entry(*j).or_insert_with(|| int(0));
                *e -= &factor * v;
                if is_zero(e) {
                    row.remove(j);
                }
            }
        }
        row
    }

    fn reduce_fully(&self, row: BTreeMap<usize, Rational>) -> bool {
        // Leading column without pivot: not in the span.
        let mut row = row;
        loop {
            row = self.reduce(row);
            match row.iter().next_back() {
                None => return true,
                Some((col, _)) if !self.pivots.contains_key(col) => return false,
                _ => {}
            }
        }
    }

    fn insert(&mut self, row: BTreeMap<usize, Rational>) {
        let row = self.reduce(row);
        if let Some((&col, c)) = row.iter().next_back() {
            let inv = int(1) / c;
            let normalized = row.into_iter().map(|(j, v)| (j, v * &inv)).collect();
            self.pivots.insert(col, normalized);
        }
    }
}

/// `f ∈ ⟨gens⟩` by linear algebra: `f` is in the span of `m·g` with
/// `deg(m·g) ≤ D`, for `D` from `deg f` up to `max_degree`.
pub fn macaulay_member(gens: &[Polynomial], f: &Polynomial, max_degree: u32) -> bool {
    if f.is_zero() {
        return true;
    }
    let n = f.ring().len();
    let start = f.degree().unwrap();
    for d in start..=max_degree.max(start) {
        let columns: HashMap<ExponentVector, usize> =
            monomials_up_to(n, d).into_iter().enumerate().map(|(i, m)| (m, i)).collect();
        let to_row = |p: &Polynomial| -> BTreeMap<usize, Rational> {
            p.terms().map(|(e, c)| (columns[e], c.clone())).collect()
        };
        let mut ech = Echelon { pivots: BTreeMap::new() };
        for g in gens.iter().filter(|g| !g.is_zero()) {
            let dg = g.degree().unwrap();
            if dg > d {
                continue;
            }
            for m in monomials_up_to(n, d - dg) {
                ech.insert(to_row(&g.mul_monomial(&m, &int(1))));
            }
        }
        if ech.reduce_fully(to_row(f)) {
            return true;
        }
    }
    false
}

/// Facets `w·u ≥ d` (with `d > 0`) of the Newton polyhedron in two variables
/// spanned by `points` and the positive quadrant.
pub fn newton_facets(points: &[(i64, i64)]) -> Vec<((i64, i64), i64)> {
    let mut pts: Vec<(i64, i64)> = points.to_vec();
    pts.sort();
    // Keep only points not dominated by another.
    let mut stair: Vec<(i64, i64)> = Vec::new();
    for p in pts {
        if stair.iter().all(|q| !(q.0 <= p.0 && q.1 <= p.1)) {
            stair.retain(|q| !(p.0 <= q.0 && p.1 <= q.1));
            stair.push(p);
        }
    }
    stair.sort();
    // Lower convex chain, u increasing and v decreasing.
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for p in stair {
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            let cross = (b.0 - a.0) * (p.1 - a.1) - (b.1 - a.1) * (p.0 - a.0);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    let mut facets = Vec::new();
    let first = hull[0];
    let last = *hull.last().unwrap();
    if first.0 > 0 {
        facets.push(((1, 0), first.0));
    }
    if last.1 > 0 {
        facets.push(((0, 1), last.1));
    }
    for w in hull.windows(2) {
        let (a, b) = (w[0], w[1]);
        let (mut p, mut q) = (a.1 - b.1, b.0 - a.0);
        let g = gcd(p, q);
        p /= g;
        q /= g;
        facets.push(((p, q), p * a.0 + q * a.1));
    }
    facets
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Minimal generators of the monomial ideal of `x^a y^b` with `(a+1, b+1)`
/// in the interior of `c·P` shrunk by any `ε > 0`, i.e. `w·(a+1,b+1) ≥ c·d`
/// on every facet. For non-degenerate `f` this is `I_0(c·div f)`.
pub fn newton_multiplier_monomials(points: &[(i64, i64)], c: &Rational, bound: i64) -> Vec<(i64, i64)> {
    let facets = newton_facets(points);
    let inside = |a: i64, b: i64| {
        facets.iter().all(|((p, q), d)| rat(p * (a + 1) + q * (b + 1), 1) >= c * rat(*d, 1))
    };
    let mut gens: Vec<(i64, i64)> = Vec::new();
    for a in 0..=bound {
        for b in 0..=bound {
            if inside(a, b) && !gens.iter().any(|&(x, y)| x <= a && y <= b) {
                gens.push((a, b));
            }
        }
    }
    gens
}

pub struct Chart {
    pub ring: Arc<Ring>,
    /// Pullback of the curve equation.
    pub total: Polynomial,
    /// Pullback of `dx∧dy`, as the Jacobian determinant.
    pub jacobian: Polynomial,
}

/// Pulls a chart back along `images` (a map of the plane given in new
/// coordinates) and reads off `(a, b)` along the exceptional coordinate.
pub fn blow_up(chart: &Chart, images: &[Polynomial; 2], exceptional: usize) -> (Chart, u32, u32) {
    let ring = chart.ring.clone();
    let total = chart.total.compose(&ring, images).unwrap();
    let d = |p: &Polynomial, i| p.partial_derivative(i).unwrap();
    let det = d(&images[0], 0) * d(&images[1], 1) - d(&images[0], 1) * d(&images[1], 0);
    let jacobian = chart.jacobian.compose(&ring, images).unwrap() * det;
    let a = total.order_in_variable(exceptional).unwrap();
    let b = jacobian.order_in_variable(exceptional).unwrap();
    (Chart { ring, total, jacobian }, a, b)
}

/// Exceptional records `(a_i, b_i)` of the cusp `x^2 + y^3` by three point
/// blowups, each centered at the chart origin where the total transform is not
/// yet a normal crossing. Returns the records and the final chart.
pub fn cusp_resolution_oracle() -> (Vec<(u32, u32)>, Chart) {
    let ring = Ring::standard(2);
    let u = Polynomial::var(&ring, 0);
    let v = Polynomial::var(&ring, 1);
    let mut chart = Chart { ring: ring.clone(), total: poly(&ring, "x^2 + y^3"), jacobian: Polynomial::one(&ring) };
    let mut records = Vec::new();
    // x = uv, y = v; the exceptional curve is v = 0.
    let (c, a, b) = blow_up(&chart, &[&u * &v, v.clone()], 1);
    records.push((a, b));
    chart = c;
    // u = s, v = st twice; the exceptional curve is s = 0.
    for _ in 0..2 {
        let (c, a, b) = blow_up(&chart, &[u.clone(), &u * &v], 0);
        records.push((a, b));
        chart = c;
    }
    (records, chart)
}

/// The strict transform in a chart: the total transform with the exceptional
/// coordinate powers divided out.
pub fn strict_transform(chart: &Chart) -> Polynomial {
    let n = chart.ring.len();
    let mut shift = vec![0u32; n];
    for (i, s) in shift.iter_mut().enumerate() {
        *s = chart.total.order_in_variable(i).unwrap();
    }
    Polynomial::from_terms(
        &chart.ring,
        chart.total.terms().map(|(e, c)| {
            let ex: Vec<u32> = e.exponents().iter().zip(&shift).map(|(a, s)| a - s).collect();
            (ExponentVector::new(ex), c.clone())
        }),
    )
}
