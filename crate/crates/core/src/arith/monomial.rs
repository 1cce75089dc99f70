use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Dense exponent vector `x_1^{e_1} ... x_n^{e_n}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentVector(Vec<u32>);

impl ExponentVector {
    pub fn new(exponents: Vec<u32>) -> Self {
        ExponentVector(exponents)
    }

    pub fn one(n: usize) -> Self {
        ExponentVector(vec![0; n])
    }

    pub fn var(n: usize, index: usize) -> Self {
        let mut e = vec![0; n];
        e[index] = 1;
        ExponentVector(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.len(), other.len());
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Componentwise `self <= other`, i.e. `self` divides `other`.
    pub fn divides(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient(&self, other: &Self) -> Option<Self> {
        if !self.divides(other) {
            return None;
        }
        Some(ExponentVector(
            other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect(),
        ))
    }

    pub fn lcm(&self, other: &Self) -> Self {
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Variables with a positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, e)| **e > 0)
            .map(|(i, _)| i)
    }

    pub(crate) fn exponents_mut(&mut self) -> &mut Vec<u32> {
        &mut self.0
    }
}

impl From<Vec<u32>> for ExponentVector {
    fn from(v: Vec<u32>) -> Self {
        ExponentVector(v)
    }
}

/// Term orders on exponent vectors. Variables are ranked `x_1 > x_2 > ... > x_n`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MonomialOrder {
    #[default]
    Grevlex,
    Lex,
    Grlex,
}

impl MonomialOrder {
    pub fn cmp(&self, a: &ExponentVector, b: &ExponentVector) -> Ordering {
        let (a, b) = (a.exponents(), b.exponents());
        match self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::Grlex => {
                let (da, db) = (a.iter().sum::<u32>(), b.iter().sum::<u32>());
                da.cmp(&db).then_with(|| a.cmp(b))
            }
            MonomialOrder::Grevlex => {
                let (da, db) = (a.iter().sum::<u32>(), b.iter().sum::<u32>());
                da.cmp(&db).then_with(|| {
                    for (x, y) in a.iter().zip(b).rev() {
                        if x != y {
                            // smaller exponent in the last differing variable wins
                            return y.cmp(x);
                        }
                    }
                    Ordering::Equal
                })
            }
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            MonomialOrder::Grevlex => "grevlex",
            MonomialOrder::Lex => "lex",
            MonomialOrder::Grlex => "grlex",
        }
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for MonomialOrder {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "grevlex" => Ok(MonomialOrder::Grevlex),
            "lex" => Ok(MonomialOrder::Lex),
            "grlex" => Ok(MonomialOrder::Grlex),
            other => Err(format!("unknown monomial order `{other}`")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(v: &[u32]) -> ExponentVector {
        ExponentVector::new(v.to_vec())
    }

    #[test]
    fn grevlex_ties_broken_by_last_variable() {
        let o = MonomialOrder::Grevlex;
        // x*z < y^2 in grevlex (x > y > z)
        assert_eq!(o.cmp(&ev(&[1, 0, 1]), &ev(&[0, 2, 0])), Ordering::Less);
        assert_eq!(o.cmp(&ev(&[2, 0, 0]), &ev(&[1, 1, 0])), Ordering::Greater);
        assert_eq!(o.cmp(&ev(&[0, 0, 3]), &ev(&[1, 0, 0])), Ordering::Greater);
    }

    #[test]
    fn lex_and_grlex() {
        assert_eq!(
            MonomialOrder::Lex.cmp(&ev(&[1, 0]), &ev(&[0, 5])),
            Ordering::Greater
        );
        assert_eq!(
            MonomialOrder::Grlex.cmp(&ev(&[1, 0]), &ev(&[0, 5])),
            Ordering::Less
        );
        assert_eq!(
            MonomialOrder::Grlex.cmp(&ev(&[1, 0, 1]), &ev(&[0, 2, 0])),
            Ordering::Greater
        );
    }

    #[test]
    fn one_is_minimal() {
        for o in [MonomialOrder::Grevlex, MonomialOrder::Lex, MonomialOrder::Grlex] {
            assert_eq!(o.cmp(&ev(&[0, 0]), &ev(&[0, 1])), Ordering::Less);
        }
    }

    #[test]
    fn divisibility() {
        assert!(ev(&[1, 0]).divides(&ev(&[1, 2])));
        assert!(!ev(&[2, 0]).divides(&ev(&[1, 2])));
        assert_eq!(ev(&[1, 0]).quotient(&ev(&[1, 2])), Some(ev(&[0, 2])));
        assert_eq!(ev(&[1, 3]).lcm(&ev(&[2, 1])), ev(&[2, 3]));
    }
}
