//! Numeric triviality / non-triviality criteria from resolution and
//! multiplicity data. All criteria are one-directional.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};
use serde::Serialize;

use crate::arith::rational::{ceil, fmt_rational, in_unit_interval};
use crate::arith::Rational;
use crate::divisor::{HodgeIdealResult, QDivisor};
use crate::error::{HodgeError, Result};
use crate::ideal::IdealPresentation;

/// One exceptional divisor `F_i`: `a[j]` is its coefficient in the pullback
/// of the `j`-th component, `b` its coefficient in the relative canonical divisor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExceptionalRecord {
    pub a: Vec<u64>,
    pub b: u64,
}

impl ExceptionalRecord {
    pub fn total_a(&self) -> u64 {
        self.a.iter().sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResolutionData {
    pub exceptional: Vec<ExceptionalRecord>,
    pub strict_transform_smooth: bool,
}

impl ResolutionData {
    pub fn new(exceptional: Vec<ExceptionalRecord>, strict_transform_smooth: bool) -> Result<Self> {
        for (i, e) in exceptional.iter().enumerate() {
            if e.a.is_empty() || e.total_a() == 0 {
                return Err(HodgeError::Precondition(format!(
                    "exceptional divisor {i}: a-coefficients must include a positive entry"
                )));
            }
        }
        Ok(ResolutionData { exceptional, strict_transform_smooth })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Status {
    #[serde(rename = "TRIVIAL")]
    Trivial,
    #[serde(rename = "INCONCLUSIVE")]
    Inconclusive,
    #[serde(rename = "CONTAINED-IN-MAXIMAL-IDEAL")]
    Contained,
    #[serde(rename = "CONJECTURAL")]
    Conjectural,
    #[serde(rename = "SMOOTH-CONSISTENT")]
    SmoothConsistent,
    #[serde(rename = "SINGULAR-CERTIFIED")]
    SingularCertified,
}

impl Status {
    pub fn name(&self) -> &'static str {
        match self {
            Status::Trivial => "TRIVIAL",
            Status::Inconclusive => "INCONCLUSIVE",
            Status::Contained => "CONTAINED-IN-MAXIMAL-IDEAL",
            Status::Conjectural => "CONJECTURAL",
            Status::SmoothConsistent => "SMOOTH-CONSISTENT",
            Status::SingularCertified => "SINGULAR-CERTIFIED",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A decision together with the instantiated inequalities behind it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Decision {
    pub status: Status,
    pub lines: Vec<String>,
}

fn cmp_symbol(holds: bool, strict: bool) -> &'static str {
    match (holds, strict) {
        (true, false) => "≥",
        (false, false) => "<",
        (true, true) => ">",
        (false, true) => "≤",
    }
}

fn q(n: u64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// TRIVIAL when `I_k(B) = ⟨1⟩` follows from the resolution data, else INCONCLUSIVE.
///
/// Single component: `(b_i + 1)/a_i ≥ k + α` for all `i`. Several components:
/// `b_i + 1 ≥ k·a_i + Σ_j α_j a_i^j` with `a_i = Σ_j a_i^j`.
pub fn triviality_certificate(res: &ResolutionData, alphas: &[Rational], k: i64) -> Result<Decision> {
    if alphas.is_empty() {
        return Err(HodgeError::Precondition("no coefficients given".into()));
    }
    if !alphas.iter().all(in_unit_interval) {
        return Err(HodgeError::NotReduced);
    }
    if k < 0 {
        return Err(HodgeError::Precondition("k must be non-negative".into()));
    }
    if !res.strict_transform_smooth {
        return Err(HodgeError::Precondition(
            "the criterion needs a resolution whose strict transform is smooth".into(),
        ));
    }
    let kq = Rational::from_integer(BigInt::from(k));
    let mut lines = Vec::new();
    let mut all = true;
    for (i, e) in res.exceptional.iter().enumerate() {
        if e.a.len() != alphas.len() {
            return Err(HodgeError::Precondition(format!(
                "exceptional divisor {i} lists {} a-coefficients for {} components",
                e.a.len(),
                alphas.len()
            )));
        }
        if alphas.len() == 1 {
            let lhs = q(e.b + 1) / q(e.a[0]);
            let rhs = &kq + &alphas[0];
            let holds = lhs >= rhs;
            all &= holds;
            lines.push(format!(
                "({}+1)/{} = {} {} {}",
                e.b,
                e.a[0],
                fmt_rational(&lhs),
                cmp_symbol(holds, false),
                fmt_rational(&rhs)
            ));
        } else {
            let total = e.total_a();
            let mut rhs = &kq * q(total);
            let mut parts = vec![format!("{}*{}", k, total)];
            for (alpha, &aj) in alphas.iter().zip(&e.a) {
                rhs += alpha * q(aj);
                parts.push(format!("{}*{}", fmt_rational(alpha), aj));
            }
            let lhs = q(e.b + 1);
            let holds = lhs >= rhs;
            all &= holds;
            lines.push(format!(
                "{}+1 = {} {} {} = {}",
                e.b,
                fmt_rational(&lhs),
                cmp_symbol(holds, false),
                parts.join(" + "),
                fmt_rational(&rhs)
            ));
        }
    }
    if res.exceptional.is_empty() {
        lines.push("no exceptional divisors: the inequality is vacuous".into());
    }
    Ok(Decision { status: if all { Status::Trivial } else { Status::Inconclusive }, lines })
}

/// Multiplicities along a center `W` of codimension `r`: `a = mult_W Z`, `b = mult_W D`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MultiplicityData {
    pub n: u64,
    pub r: u64,
    pub a: u64,
    #[serde(serialize_with = "crate::arith::rational::serialize")]
    pub b: Rational,
}

impl MultiplicityData {
    pub fn new(n: u64, r: u64, a: u64, b: Rational) -> Result<Self> {
        if a < 1 || !b.is_positive() {
            return Err(HodgeError::Precondition("need mult_W Z ≥ 1 and mult_W D > 0".into()));
        }
        if r < 1 || r > n {
            return Err(HodgeError::Precondition(format!("codimension {r} outside [1, {n}]")));
        }
        Ok(MultiplicityData { n, r, a, b })
    }

    pub fn is_point(&self) -> bool {
        self.r == self.n
    }
}

/// Largest `q` with `I_k(D) ⊆ I_W^{(q)}` certified by either sufficient
/// condition; `verified` is false for non-point centers, where only the
/// numeric claim is emitted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymbolicPowerDecision {
    pub q: u64,
    pub verified: bool,
    pub lines: Vec<String>,
}

/// Largest integer `q` with `value > q`, clamped at 0.
fn largest_below(value: &Rational) -> u64 {
    let c = ceil(value) - BigInt::one();
    if c.is_negative() {
        0
    } else {
        c.to_u64().unwrap_or(u64::MAX)
    }
}

pub fn nontriviality_symbolic_power(md: &MultiplicityData, k: u64) -> SymbolicPowerDecision {
    let shift = q(md.r + 2 * k) - Rational::one();
    // b + k a > q + r + 2k - 1
    let first = &md.b + q(k * md.a);
    let q1 = largest_below(&(&first - &shift));
    // b (k + 1) > q + r + 2k - 1
    let second = &md.b * q(k + 1);
    let q2 = largest_below(&(&second - &shift));
    let best = q1.max(q2);
    let lines = vec![
        format!(
            "b + k*a = {} + {}*{} = {} > q + {} for q ≤ {}",
            fmt_rational(&md.b),
            k,
            md.a,
            fmt_rational(&first),
            fmt_rational(&shift),
            q1
        ),
        format!(
            "b*(k+1) = {}*{} = {} > q + {} for q ≤ {}",
            fmt_rational(&md.b),
            k + 1,
            fmt_rational(&second),
            fmt_rational(&shift),
            q2
        ),
    ];
    SymbolicPowerDecision { q: best, verified: md.is_point(), lines }
}

/// `(j - n + 1)(m - 1)` for `j ≥ n`, else 0.
pub fn singular_multiplicity_bound(n: u64, m: u64, j: u64) -> u64 {
    if j >= n {
        (j - n + 1) * m.saturating_sub(1)
    } else {
        0
    }
}

/// For `D = αZ` with `m = mult_x Z`: CONTAINED when `k m + α m > n`.
pub fn alpha_multiple_membership(n: u64, m: u64, alpha: &Rational, k: u64) -> Decision {
    maximal_ideal_membership(n, m, &(alpha * q(m)), k, true)
}

/// `k·mult_x Z + mult_x D > n`. Only proven when `D` is a multiple of its
/// reduced support; otherwise the conclusion is labelled CONJECTURAL.
pub fn maximal_ideal_membership(n: u64, mult_z: u64, mult_d: &Rational, k: u64, alpha_multiple: bool) -> Decision {
    let lhs = q(k * mult_z) + mult_d;
    let holds = lhs > q(n);
    let line = format!(
        "{}*{} + {} = {} {} {}",
        k,
        mult_z,
        fmt_rational(mult_d),
        fmt_rational(&lhs),
        cmp_symbol(holds, true),
        n
    );
    let status = if mult_z < 2 || !holds {
        Status::Inconclusive
    } else if alpha_multiple {
        Status::Contained
    } else {
        Status::Conjectural
    };
    let mut lines = vec![line];
    if mult_z < 2 {
        lines.push("the point is not singular on the support".into());
    }
    Decision { status, lines }
}

/// SMOOTH-CONSISTENT if every exact ideal equals the twist ideal, and
/// SINGULAR-CERTIFIED if one is strictly smaller.
pub fn smoothness_test(results: &[HodgeIdealResult], d: &QDivisor) -> Result<Decision> {
    let twist = d.twist()?;
    let mut lines = Vec::new();
    let mut any_exact = false;
    for r in results.iter().filter(|r| r.exact && r.k >= 0) {
        any_exact = true;
        let expected = if r.primed {
            IdealPresentation::unit(d.ring())
        } else {
            IdealPresentation::principal(&twist)
        };
        if expected.equals(&r.ideal)? {
            lines.push(format!("I_{} equals the twist ideal", r.k));
        } else {
            lines.push(format!("I_{} = {} is strictly smaller than {}", r.k, r.ideal, expected));
            return Ok(Decision { status: Status::SingularCertified, lines });
        }
    }
    if !any_exact {
        lines.push("no exact results to compare".into());
        return Ok(Decision { status: Status::Inconclusive, lines });
    }
    Ok(Decision { status: Status::SmoothConsistent, lines })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{int, rat};

    fn cusp() -> ResolutionData {
        ResolutionData::new(
            vec![
                ExceptionalRecord { a: vec![2], b: 1 },
                ExceptionalRecord { a: vec![3], b: 2 },
                ExceptionalRecord { a: vec![6], b: 4 },
            ],
            true,
        )
        .unwrap()
    }

    #[test]
    fn cusp_triviality() {
        let d = triviality_certificate(&cusp(), &[rat(4, 5)], 0).unwrap();
        assert_eq!(d.status, Status::Trivial);
        assert_eq!(
            d.lines,
            vec!["(1+1)/2 = 1 ≥ 4/5", "(2+1)/3 = 1 ≥ 4/5", "(4+1)/6 = 5/6 ≥ 4/5"]
        );
        let d = triviality_certificate(&cusp(), &[rat(9, 10)], 0).unwrap();
        assert_eq!(d.status, Status::Inconclusive);
        assert_eq!(d.lines[2], "(4+1)/6 = 5/6 < 9/10");
        let empty = ResolutionData::new(vec![], true).unwrap();
        assert_eq!(triviality_certificate(&empty, &[int(1)], 3).unwrap().status, Status::Trivial);
        assert!(matches!(
            triviality_certificate(&cusp(), &[rat(3, 2)], 0),
            Err(HodgeError::NotReduced)
        ));
    }

    #[test]
    fn multi_component_form() {
        let res = ResolutionData::new(vec![ExceptionalRecord { a: vec![1, 1], b: 1 }], true).unwrap();
        let d = triviality_certificate(&res, &[rat(1, 2), rat(1, 2)], 0).unwrap();
        assert_eq!(d.status, Status::Trivial);
        assert_eq!(d.lines[0], "1+1 = 2 ≥ 0*2 + 1/2*1 + 1/2*1 = 1");
        let d = triviality_certificate(&res, &[rat(1, 2), rat(1, 2)], 1).unwrap();
        assert_eq!(d.status, Status::Inconclusive);
    }

    #[test]
    fn symbolic_powers() {
        let md = MultiplicityData::new(3, 3, 4, int(4)).unwrap();
        assert_eq!(nontriviality_symbolic_power(&md, 1).q, 3);
        let md = MultiplicityData::new(2, 2, 2, int(1)).unwrap();
        assert_eq!(nontriviality_symbolic_power(&md, 1).q, 0);
        let md = MultiplicityData::new(3, 3, 3, int(3)).unwrap();
        assert_eq!(nontriviality_symbolic_power(&md, 0).q, 0);
        let md = MultiplicityData::new(2, 2, 4, int(4)).unwrap();
        assert_eq!(nontriviality_symbolic_power(&md, 0).q, 2);
        let md = MultiplicityData::new(2, 2, 3, rat(5, 2)).unwrap();
        assert_eq!(nontriviality_symbolic_power(&md, 0).q, 1);
    }

    #[test]
    fn multiplicity_bounds() {
        assert_eq!(singular_multiplicity_bound(2, 2, 2), 1);
        assert_eq!(singular_multiplicity_bound(3, 3, 5), 6);
        assert_eq!(singular_multiplicity_bound(3, 3, 2), 0);
    }

    #[test]
    fn membership() {
        assert_eq!(alpha_multiple_membership(3, 2, &rat(3, 4), 1).status, Status::Contained);
        assert_eq!(alpha_multiple_membership(3, 2, &rat(1, 2), 1).status, Status::Inconclusive);
        assert_eq!(alpha_multiple_membership(2, 2, &int(1), 1).status, Status::Contained);
        assert_eq!(alpha_multiple_membership(2, 1, &int(1), 5).status, Status::Inconclusive);
        assert_eq!(maximal_ideal_membership(2, 2, &int(3), 1, false).status, Status::Conjectural);
    }
}
