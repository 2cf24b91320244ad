//! A small Buchberger engine over the rationals in graded-lex order, used
//! only to decide whether an ideal contains a nonzero constant.

use num::Zero;

use crate::poly::Poly;

/// Full normal form of `p` modulo `basis` (top reduction repeated).
fn normal_form(p: &Poly, basis: &[Poly]) -> Poly {
    let mut r = p.clone();
    'outer: loop {
        let Some((lm, lc)) = r.leading().map(|(m, c)| (m.clone(), c.clone())) else {
            return r;
        };
        for g in basis {
            let (gm, gc) = g.leading().expect("zero polynomial in basis");
            if gm.divides(&lm) {
                let factor = Poly::monomial(p.nvars(), lm.div(gm), &lc / gc);
                r = &r - &(&factor * g);
                continue 'outer;
            }
        }
        return r;
    }
}

fn s_poly(f: &Poly, g: &Poly) -> Poly {
    let (fm, fc) = f.leading().unwrap();
    let (gm, gc) = g.leading().unwrap();
    let l = fm.lcm(gm);
    let a = Poly::monomial(f.nvars(), l.div(fm), fc.clone().recip());
    let b = Poly::monomial(g.nvars(), l.div(gm), gc.clone().recip());
    &(&a * f) - &(&b * g)
}

fn coprime_leading(f: &Poly, g: &Poly) -> bool {
    let (fm, _) = f.leading().unwrap();
    let (gm, _) = g.leading().unwrap();
    fm.0.iter().zip(&gm.0).all(|(a, b)| *a == 0 || *b == 0)
}

/// Buchberger's algorithm, unoptimized apart from the coprime-pair skip.
pub fn groebner_basis(generators: &[Poly]) -> Vec<Poly> {
    let mut basis: Vec<Poly> = generators.iter().filter(|p| !p.is_zero()).cloned().collect();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for i in 0..basis.len() {
        for j in 0..i {
            pairs.push((j, i));
        }
    }
    while let Some((i, j)) = pairs.pop() {
        if coprime_leading(&basis[i], &basis[j]) {
            continue;
        }
        let s = s_poly(&basis[i], &basis[j]);
        let r = normal_form(&s, &basis);
        if !r.is_zero() {
            for k in 0..basis.len() {
                pairs.push((k, basis.len()));
            }
            basis.push(r);
        }
    }
    basis
}

/// True iff the ideal generated by `generators` contains a nonzero constant,
/// i.e. is the whole ring.
pub fn contains_one(generators: &[Poly]) -> bool {
    if generators
        .iter()
        .any(|p| p.as_constant().map_or(false, |c| !c.is_zero()))
    {
        return true;
    }
    let basis = groebner_basis(generators);
    basis
        .iter()
        .any(|p| p.as_constant().map_or(false, |c| !c.is_zero()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    fn ps(texts: &[&str], vars: &[&str]) -> Vec<Poly> {
        let v: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        texts.iter().map(|t| parse_poly(t, &v).unwrap()).collect()
    }

    #[test]
    fn unit_ideal_from_u_and_u_minus_1() {
        assert!(contains_one(&ps(&["u", "u-1"], &["u"])));
    }

    #[test]
    fn proper_ideal_stays_proper() {
        assert!(!contains_one(&ps(&["u", "u*v"], &["u", "v"])));
    }

    #[test]
    fn difference_of_translates_is_one() {
        assert!(contains_one(&ps(&["h2-h1", "h2-h1+1"], &["h1", "h2"])));
    }

    #[test]
    fn agrees_with_univariate_gcd() {
        use crate::univar::{gcd_univar, degree};
        let cases: &[(&str, &str)] = &[
            ("u^2-u", "u^2+u"),
            ("u^2-1", "u-1"),
            ("u^2+1", "u-3"),
            ("u^3", "u^2-2"),
            ("2*u+1", "u"),
        ];
        for (a, b) in cases {
            let polys = ps(&[a, b], &["u"]);
            let ca = polys[0].univar_coeffs(0).unwrap();
            let cb = polys[1].univar_coeffs(0).unwrap();
            let gcd_constant = degree(&gcd_univar(&ca, &cb)) == Some(0);
            assert_eq!(
                contains_one(&polys),
                gcd_constant,
                "mismatch on ({}, {})",
                a,
                b
            );
        }
    }
}
