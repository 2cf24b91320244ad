//! Shared builders for the integration tests.

use tgwa_core::arith::{rat, rat_int, Rat};
use tgwa_core::endo::{Endo, Family};
use tgwa_core::parse::parse_poly;
use tgwa_core::poly::Poly;
use tgwa_core::tgw::{Algebra, TgwDatum};

pub fn names(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

fn ones(n: usize) -> Vec<Vec<Rat>> {
    vec![vec![rat_int(1); n]; n]
}

pub fn mu_torus() -> TgwDatum {
    let mut mu = ones(2);
    mu[0][1] = rat_int(2);
    mu[1][0] = rat(1, 2);
    TgwDatum {
        vars: vec![],
        sigma: vec![Endo::identity(0), Endo::identity(0)],
        t: vec![Poly::one(0), Poly::one(0)],
        mu,
        family: Family::Translation,
        zero_cap: 12,
    }
}

pub fn shifted_a2() -> TgwDatum {
    let vs = names(&["H"]);
    let p = |s: &str| parse_poly(s, &vs).unwrap();
    TgwDatum {
        vars: vs.clone(),
        sigma: vec![
            Endo::new(vec![p("H+1")], vec![p("H-1")]),
            Endo::new(vec![p("H-1")], vec![p("H+1")]),
        ],
        t: vec![p("H"), p("H+1")],
        mu: ones(2),
        family: Family::Translation,
        zero_cap: 12,
    }
}

pub fn sergeev_1u1() -> TgwDatum {
    let vs = names(&["h1", "h2"]);
    let p = |s: &str| parse_poly(s, &vs).unwrap();
    TgwDatum {
        vars: vs.clone(),
        sigma: vec![
            Endo::new(vec![p("h1-1"), p("h2")], vec![p("h1+1"), p("h2")]),
            Endo::new(vec![p("h1"), p("h2-1")], vec![p("h1"), p("h2+1")]),
        ],
        t: vec![p("h2-h1"), p("h2-h1+1")],
        mu: ones(2),
        family: Family::Translation,
        zero_cap: 12,
    }
}

pub fn algebra(d: TgwDatum) -> Algebra {
    Algebra::new(d).expect("worked example must be valid and consistent")
}
