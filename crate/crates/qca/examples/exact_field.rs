//! Exact arithmetic: rational functions in `q` and `u`, Laurent expansions
//! and grid certification of an identity.

use qca::field::{parse_ratu, verify_identity, Expansion, EvalError, Field, GridPolicy, LaurentSeries, Point, RatU, Ring, Scalar};

fn main() {
    // 1/(1 - q u) as an element of Q(q)(u)
    let r: RatU = parse_ratu("[{(1)/(1)}]/[{(1)/(1)} + {(-1*q)/(1)}*u]").expect("valid ratu string");
    println!("r(u) = {r}");
    println!("r(2) = {}", qca::field::format_scalar(&r.eval(&Scalar::int(2)).expect("regular at 2")));

    // both expansions of a/(a - u); their difference carries the modes a^k
    let a = Scalar::int(3);
    let s = RatU::constant(a.clone()).div(&RatU::constant(a.clone()).sub(&RatU::var())).expect("nonzero");
    let zero = LaurentSeries::expand(&s, Expansion::Zero, -3, 3).expect("regular at zero");
    let inf = LaurentSeries::expand(&s, Expansion::Infinity, -3, 3).expect("regular at infinity");
    for k in -3..=3 {
        let c = zero.coeff(-k).unwrap().minus(&inf.coeff(-k).unwrap());
        println!("mode {k:>2}: {}", qca::field::format_scalar(&c));
    }

    // (u^2 - v^2)/(u - v) = u + v, certified on a 2 x 2 grid
    let lhs = |p: &Point| {
        let (u, v) = (Scalar::rational(p.get("u").clone()), Scalar::rational(p.get("v").clone()));
        let d = u.minus(&v).recip().ok_or(EvalError::Singular)?;
        Ok(u.times(&u).minus(&v.times(&v)).times(&d))
    };
    let rhs = |p: &Point| Ok(Scalar::rational(p.get("u") + p.get("v")));
    let verdict = verify_identity(lhs, rhs, &[("u", 1), ("v", 1)], &GridPolicy::default()).expect("evaluable");
    println!("identity: {verdict:?}");
}
