//! Worked data used across the unit tests.

use crate::arith::{rat, rat_int, Rat};
use crate::endo::{Endo, Family};
use crate::parse::parse_poly;
use crate::poly::Poly;
use crate::tgw::{TgwDatum, DEFAULT_ZERO_CAP};

fn names(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

fn ones(n: usize) -> Vec<Vec<Rat>> {
    vec![vec![rat_int(1); n]; n]
}

/// Rank 2 over a trivial ring: t = (1, 1), μ12 = 2, μ21 = 1/2.
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
        zero_cap: DEFAULT_ZERO_CAP,
    }
}

/// Rank 2 over k[H]: σ1(H) = H+1, σ2(H) = H−1, t = (H, H+1), μ ≡ 1.
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
        zero_cap: DEFAULT_ZERO_CAP,
    }
}

/// Rank 2 over k[h1, h2]: σi shifts hi down by one, t = (h2−h1, h2−h1+1).
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
        zero_cap: DEFAULT_ZERO_CAP,
    }
}

/// Rank 1 over k[u]: σ(u) = u+1, t = u(u−1).
pub fn nonsimple_gwa() -> TgwDatum {
    let vs = names(&["u"]);
    let p = |s: &str| parse_poly(s, &vs).unwrap();
    TgwDatum {
        vars: vs.clone(),
        sigma: vec![Endo::new(vec![p("u+1")], vec![p("u-1")])],
        t: vec![p("u^2-u")],
        mu: ones(1),
        family: Family::Translation,
        zero_cap: DEFAULT_ZERO_CAP,
    }
}

/// Rank 1 over k[u]: σ(u) = u−1, t = u (a Weyl pair).
pub fn weyl() -> TgwDatum {
    let vs = names(&["u"]);
    let p = |s: &str| parse_poly(s, &vs).unwrap();
    TgwDatum {
        vars: vs.clone(),
        sigma: vec![Endo::new(vec![p("u-1")], vec![p("u+1")])],
        t: vec![p("u")],
        mu: ones(1),
        family: Family::Translation,
        zero_cap: DEFAULT_ZERO_CAP,
    }
}
