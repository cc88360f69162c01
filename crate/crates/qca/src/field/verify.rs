//! Identity certification on evaluation grids.
//!
//! If both sides of an identity become polynomials of degree at most `d_i`
//! in variable `i` after clearing denominators, agreement on a product grid
//! with `d_i + 1` distinct values per variable proves the identity. Grid
//! points where either side hits a pole are replaced by fresh candidates;
//! one extra off-grid point guards against understated bounds.

use super::{Integer, RatFunc, Ring, Scalar, Q};
use rayon::prelude::*;
use std::collections::{HashMap, HashSet};
use std::sync::Arc;
use thiserror::Error;

/// An assignment of rationals to named variables.
#[derive(Clone, Debug, PartialEq)]
pub struct Point {
    names: Arc<Vec<String>>,
    values: Vec<Q>,
}

impl Point {
    pub fn new(names: &[&str], values: Vec<Q>) -> Self {
        Point { names: Arc::new(names.iter().map(|s| s.to_string()).collect()), values }
    }

    pub fn get(&self, name: &str) -> &Q {
        let i = self.names.iter().position(|n| n == name).unwrap_or_else(|| panic!("unknown variable {name}"));
        &self.values[i]
    }

    pub fn try_get(&self, name: &str) -> Option<&Q> {
        self.names.iter().position(|n| n == name).map(|i| &self.values[i])
    }

    pub fn describe(&self) -> Vec<(String, String)> {
        self.names.iter().cloned().zip(self.values.iter().map(|v| v.to_string())).collect()
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EvalError {
    /// A denominator vanished at this point.
    #[error("singular sample point")]
    Singular,
    #[error("{0}")]
    Other(String),
}

/// A counterexample.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Witness {
    pub point: Vec<(String, String)>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass { points: usize },
    Fail(Witness),
}

impl Verdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass { .. })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error("every candidate for `{0}` hit a denominator zero")]
    SampleExhaustion(String),
    #[error("grid agreed but the extra point disagrees: declared degree bound too small ({0:?})")]
    BoundTooSmall(Witness),
    #[error("evaluation failed: {0}")]
    Eval(String),
}

/// Values that can be compared and explain their first difference.
pub trait Comparable {
    fn first_difference(&self, other: &Self) -> Option<String>;
}

fn as_ratu(s: Scalar) -> String {
    super::text::format_ratu(&RatFunc::constant(s))
}

impl Comparable for Scalar {
    fn first_difference(&self, other: &Self) -> Option<String> {
        (self != other).then(|| format!("lhs {} != rhs {}", as_ratu(self.clone()), as_ratu(other.clone())))
    }
}

impl Comparable for Q {
    fn first_difference(&self, other: &Self) -> Option<String> {
        (self != other).then(|| format!("lhs {} != rhs {}", as_ratu(Scalar::rational(self.clone())), as_ratu(Scalar::rational(other.clone()))))
    }
}

impl Comparable for super::LaurentPoly {
    fn first_difference(&self, other: &Self) -> Option<String> {
        (self != other).then(|| format!("lhs {} != rhs {}", as_ratu(self.to_scalar()), as_ratu(other.to_scalar())))
    }
}

impl Comparable for super::RatU {
    fn first_difference(&self, other: &Self) -> Option<String> {
        (self != other).then(|| format!("lhs {self} != rhs {other}"))
    }
}

/// Coefficient rings that can hold an integer sample value.
pub trait SampleRing: Ring + Comparable {
    fn from_sample(v: &Q) -> Self;
}

impl SampleRing for Q {
    fn from_sample(v: &Q) -> Self {
        v.clone()
    }
}

impl SampleRing for Scalar {
    fn from_sample(v: &Q) -> Self {
        Scalar::rational(v.clone())
    }
}

impl SampleRing for super::LaurentPoly {
    /// Samples are integers; a non-integer value is a caller error.
    fn from_sample(v: &Q) -> Self {
        let n = Integer::try_from(v).expect("integer sample point");
        super::LaurentPoly::monomial(n, 0)
    }
}

/// Sampling controls.
#[derive(Clone, Debug)]
pub struct GridPolicy {
    /// First candidate value for every variable.
    pub start: i64,
    /// Candidates tried per variable beyond the bound before giving up.
    pub spare: usize,
    /// Evaluate one extra point off the grid.
    pub extra_point: bool,
}

impl Default for GridPolicy {
    fn default() -> Self {
        GridPolicy { start: 2, spare: 64, extra_point: true }
    }
}

#[derive(Clone)]
enum Outcome {
    Agree,
    Singular,
    Differ(String),
}

/// Certifies `lhs == rhs` as rational functions of the listed variables.
///
/// `vars` pairs each variable name with its degree bound. Evaluators return
/// `EvalError::Singular` at poles; such points are replaced.
pub fn verify_identity<V, L, R>(lhs: L, rhs: R, vars: &[(&str, usize)], policy: &GridPolicy) -> Result<Verdict, VerifyError>
where
    V: Comparable + Send,
    L: Fn(&Point) -> Result<V, EvalError> + Sync,
    R: Fn(&Point) -> Result<V, EvalError> + Sync,
{
    let names: Vec<&str> = vars.iter().map(|v| v.0).collect();
    let eval = |coords: &[i64]| -> Result<Outcome, VerifyError> {
        let p = Point::new(&names, coords.iter().map(|&c| Q::from(c)).collect());
        let l = match lhs(&p) {
            Ok(v) => v,
            Err(EvalError::Singular) => return Ok(Outcome::Singular),
            Err(EvalError::Other(m)) => return Err(VerifyError::Eval(m)),
        };
        let r = match rhs(&p) {
            Ok(v) => v,
            Err(EvalError::Singular) => return Ok(Outcome::Singular),
            Err(EvalError::Other(m)) => return Err(VerifyError::Eval(m)),
        };
        Ok(match l.first_difference(&r) {
            None => Outcome::Agree,
            Some(d) => Outcome::Differ(d),
        })
    };
    let witness = |coords: &[i64], detail: String| Witness {
        point: names.iter().zip(coords).map(|(n, c)| (n.to_string(), c.to_string())).collect(),
        detail,
    };

    let mut sets: Vec<Vec<i64>> = vars.iter().map(|&(_, d)| (0..=d as i64).map(|k| policy.start + k).collect()).collect();
    let mut next: Vec<i64> = vars.iter().map(|&(_, d)| policy.start + d as i64 + 1).collect();
    let mut banned: Vec<HashSet<i64>> = vec![HashSet::new(); vars.len()];
    let mut cache: HashMap<Vec<i64>, Outcome> = HashMap::new();

    loop {
        let points = cartesian(&sets);
        let missing: Vec<Vec<i64>> = points.iter().filter(|p| !cache.contains_key(*p)).cloned().collect();
        let results: Vec<Result<Outcome, VerifyError>> = missing.par_iter().map(|p| eval(p)).collect();
        for (p, r) in missing.into_iter().zip(results) {
            cache.insert(p, r?);
        }
        let mut singular: Vec<&Vec<i64>> = Vec::new();
        for p in &points {
            match &cache[p] {
                Outcome::Agree => {}
                Outcome::Singular => singular.push(p),
                Outcome::Differ(d) => return Ok(Verdict::Fail(witness(p, d.clone()))),
            }
        }
        if singular.is_empty() {
            break;
        }
        // Greedily drop the coordinate value shared by most singular points.
        let mut remaining = singular;
        while !remaining.is_empty() {
            let mut counts: HashMap<(usize, i64), usize> = HashMap::new();
            for p in &remaining {
                for (i, &c) in p.iter().enumerate() {
                    *counts.entry((i, c)).or_insert(0) += 1;
                }
            }
            let (&(var, val), _) = counts
                .iter()
                .max_by(|a, b| a.1.cmp(b.1).then(a.0 .0.cmp(&b.0 .0)).then(b.0 .1.cmp(&a.0 .1)))
                .unwrap();
            banned[var].insert(val);
            sets[var].retain(|&c| c != val);
            remaining.retain(|p| p[var] != val);
        }
        for (i, set) in sets.iter_mut().enumerate() {
            while set.len() < vars[i].1 + 1 {
                if banned[i].len() > policy.spare {
                    return Err(VerifyError::SampleExhaustion(vars[i].0.to_string()));
                }
                set.push(next[i]);
                next[i] += 1;
            }
        }
    }
    let count = cartesian(&sets).len();

    if policy.extra_point {
        let mut coords = next.clone();
        for attempt in 0..policy.spare {
            match eval(&coords)? {
                Outcome::Agree => break,
                Outcome::Differ(d) => return Err(VerifyError::BoundTooSmall(witness(&coords, d))),
                Outcome::Singular => {
                    let i = attempt % coords.len();
                    coords[i] += 1;
                }
            }
        }
    }
    Ok(Verdict::Pass { points: count })
}

fn cartesian(sets: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = vec![Vec::new()];
    for s in sets {
        let mut next = Vec::with_capacity(out.len() * s.len());
        for prefix in &out {
            for &v in s {
                let mut p = prefix.clone();
                p.push(v);
                next.push(p);
            }
        }
        out = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Field, Ring, Scalar};


    #[test]
    fn commutative_product_passes() {
        let v = verify_identity(
            |p: &Point| Ok(p.get("q") * p.get("u")),
            |p: &Point| Ok(p.get("u") * p.get("q")),
            &[("u", 1), ("q", 1)],
            &GridPolicy::default(),
        )
        .unwrap();
        assert_eq!(v, Verdict::Pass { points: 4 });
    }

    #[test]
    fn non_identity_fails_with_witness() {
        let v = verify_identity(
            |p: &Point| Ok(p.get("u") * p.get("u")),
            |p: &Point| Ok(p.get("u") + p.get("u")),
            &[("u", 2)],
            &GridPolicy::default(),
        )
        .unwrap();
        match v {
            Verdict::Fail(w) => assert_eq!(w.point[0].1, "3"),
            _ => panic!("expected failure"),
        }
    }

    #[test]
    fn understated_bound_is_reported() {
        // u(u-2)(u-3) vanishes on {2, 3} but is not zero.
        let r = verify_identity(
            |p: &Point| {
                let u = p.get("u");
                Ok(u * (u - Q::from(2)) * (u - Q::from(3)))
            },
            |_: &Point| Ok(Q::from(0)),
            &[("u", 1)],
            &GridPolicy::default(),
        );
        assert!(matches!(r, Err(VerifyError::BoundTooSmall(_))));
    }

    #[test]
    fn poles_are_skipped() {
        // (u^2 - v^2)/(u - v) = u + v, singular on the diagonal.
        let v = verify_identity(
            |p: &Point| {
                let (u, v) = (Scalar::rational(p.get("u").clone()), Scalar::rational(p.get("v").clone()));
                let d = u.minus(&v).recip().ok_or(EvalError::Singular)?;
                Ok(u.times(&u).minus(&v.times(&v)).times(&d))
            },
            |p: &Point| Ok(Scalar::rational(p.get("u") + p.get("v"))),
            &[("u", 1), ("v", 1)],
            &GridPolicy::default(),
        )
        .unwrap();
        assert!(v.is_pass());
    }
}
