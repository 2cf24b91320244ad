//! Univariate tools: gcd, Sylvester resultants, interpolation, and the
//! shift resultant used to certify ideal conditions for every shift distance.

use num::{One, Zero};

use crate::arith::{Rat, RatMatrix};
use crate::error::Error;
use crate::poly::Poly;

fn trim(mut c: Vec<Rat>) -> Vec<Rat> {
    while c.last().map_or(false, |v| v.is_zero()) {
        c.pop();
    }
    c
}

pub fn degree(c: &[Rat]) -> Option<usize> {
    let t = c.iter().rposition(|v| !v.is_zero())?;
    Some(t)
}

/// Monic gcd of two univariate polynomials (ascending coefficients).
/// gcd(0, 0) is 0 by convention.
pub fn gcd_univar(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut f = trim(a.to_vec());
    let mut g = trim(b.to_vec());
    while !g.is_empty() {
        let r = rem_univar(&f, &g);
        f = g;
        g = r;
    }
    if let Some(lead) = f.last().cloned() {
        let inv = lead.recip();
        for v in f.iter_mut() {
            *v *= &inv;
        }
    }
    f
}

fn rem_univar(f: &[Rat], g: &[Rat]) -> Vec<Rat> {
    let mut r = f.to_vec();
    let dg = degree(g).expect("division by zero polynomial");
    let lead = g[dg].clone();
    while let Some(dr) = degree(&r) {
        if dr < dg {
            break;
        }
        let q = &r[dr] / &lead;
        for k in 0..=dg {
            let sub = &g[k] * &q;
            r[dr - dg + k] -= sub;
        }
    }
    trim(r)
}

pub fn is_constant_gcd(a: &[Rat], b: &[Rat]) -> bool {
    degree(&gcd_univar(a, b)) == Some(0)
}

/// Resultant of two univariate polynomials as the determinant of their
/// Sylvester matrix. Conventions: Res of two constants is 1; Res(f, c) with
/// deg f = m is c^m.
pub fn sylvester_resultant(f: &[Rat], g: &[Rat]) -> Rat {
    let f = trim(f.to_vec());
    let g = trim(g.to_vec());
    assert!(!f.is_empty() && !g.is_empty(), "resultant of zero polynomial");
    let m = f.len() - 1;
    let n = g.len() - 1;
    if m == 0 && n == 0 {
        return Rat::one();
    }
    if m == 0 {
        return crate::arith::rat_pow(&f[0], n as i64);
    }
    if n == 0 {
        return crate::arith::rat_pow(&g[0], m as i64);
    }
    let size = m + n;
    let mut mat = RatMatrix::zero(size, size);
    for i in 0..n {
        for (k, c) in f.iter().enumerate() {
            // descending powers across each row
            *mat.at_mut(i, i + m - k) = c.clone();
        }
    }
    for i in 0..m {
        for (k, c) in g.iter().enumerate() {
            *mat.at_mut(n + i, i + n - k) = c.clone();
        }
    }
    mat.det()
}

/// The unique polynomial of degree < points.len() through the given nodes,
/// returned as ascending coefficients.
pub fn lagrange_interpolate(points: &[(Rat, Rat)]) -> Vec<Rat> {
    let n = points.len();
    let mut acc = vec![Rat::zero(); n];
    for (i, (xi, yi)) in points.iter().enumerate() {
        // numerator polynomial Π_{j≠i} (x - x_j)
        let mut num = vec![Rat::one()];
        let mut denom = Rat::one();
        for (j, (xj, _)) in points.iter().enumerate() {
            if j == i {
                continue;
            }
            denom *= xi - xj;
            let mut next = vec![Rat::zero(); num.len() + 1];
            for (k, v) in num.iter().enumerate() {
                next[k + 1] += v;
                let sub = v * xj;
                next[k] -= sub;
            }
            num = next;
        }
        let scale = yi / &denom;
        for (k, v) in num.iter().enumerate() {
            let t = v * &scale;
            acc[k] += t;
        }
    }
    trim(acc)
}

/// r(x) = Res_u(t(u), t(u + x)) computed exactly by evaluating the full
/// Sylvester determinant at x = 0, 1, …, deg(t)² and interpolating.
/// `r(s) = 0` iff `gcd(t(u), t(u + s))` is non-constant, so the rational
/// roots of `r` are exactly the shift distances where t meets itself.
pub fn shift_resultant(t: &Poly, direction: &Rat) -> Result<Poly, Error> {
    if t.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    assert!(!direction.is_zero(), "shift direction must be nonzero");
    let used = t.vars_used();
    assert!(used.len() <= 1, "shift resultant needs a univariate input");
    let var = used.into_iter().next().unwrap_or(0);
    let coeffs = t.univar_coeffs(var).expect("univariate form");
    let d = degree(&coeffs).unwrap();
    if d == 0 {
        // constant nonzero: no shift produces a common factor
        return Ok(Poly::one(1));
    }
    let nodes = d * d + 1;
    let u = Poly::var(1, 0);
    let base: Poly = {
        let mut p = Poly::zero(1);
        for (k, c) in coeffs.iter().enumerate() {
            p = &p + &u.pow(k as u32).scale(c);
        }
        p
    };
    let mut points = Vec::with_capacity(nodes);
    for k in 0..nodes {
        let x0 = crate::arith::rat_int(k as i64);
        let shifted = base.substitute(&[&u + &Poly::constant(1, x0.clone())]);
        let sc = shifted.univar_coeffs(0).expect("univariate shift");
        let value = sylvester_resultant(&coeffs, &sc);
        points.push((x0, value));
    }
    let r = lagrange_interpolate(&points);
    let mut out = Poly::zero(1);
    for (k, c) in r.iter().enumerate() {
        out = &out + &Poly::var(1, 0).pow(k as u32).scale(c);
    }
    Ok(out)
}
