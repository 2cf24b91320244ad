//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Terms are kept in a map ordered graded-lexicographically, which fixes a
//! canonical form for printing and a monomial order for the Gröbner engine.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::ops::{Add, Mul, Neg, Sub};

use num::{One, Signed, Zero};

use crate::arith::Rat;

/// Exponent vector, ordered graded-lexicographically: higher total degree
/// first, ties broken by the leftmost differing exponent (larger wins).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn unit(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, idx: usize) -> Self {
        let mut e = vec![0; nvars];
        e[idx] = 1;
        Monomial(e)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_unit(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn div(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.0.len(), other.0.len());
        match self.total_degree().cmp(&other.total_degree()) {
            Ordering::Equal => {
                for (a, b) in self.0.iter().zip(&other.0) {
                    match a.cmp(b) {
                        Ordering::Equal => continue,
                        ord => return ord,
                    }
                }
                Ordering::Equal
            }
            ord => ord,
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial over the rationals in a fixed number of variables.
/// Invariant: no stored zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rat>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rat::one())
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial::unit(nvars), c);
        }
        p
    }

    pub fn var(nvars: usize, idx: usize) -> Self {
        assert!(idx < nvars);
        let mut p = Self::zero(nvars);
        p.terms.insert(Monomial::var(nvars, idx), Rat::one());
        p
    }

    pub fn monomial(nvars: usize, m: Monomial, c: Rat) -> Self {
        assert_eq!(m.0.len(), nvars);
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().map_or(false, |c| c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Some(c) when the polynomial is the constant c (including zero).
    pub fn as_constant(&self) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(Rat::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_unit().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    /// Leading term in graded-lex order.
    pub fn leading(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.leading().map(|(m, _)| m.total_degree())
    }

    pub fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Substitutes `images[j]` for variable `j` and expands. This is a ring
    /// homomorphism in the coefficients.
    pub fn substitute(&self, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.nvars);
        let out_nvars = images.first().map_or(self.nvars, |p| p.nvars);
        assert!(images.iter().all(|p| p.nvars == out_nvars));
        // cache powers per variable up to the max exponent used
        let mut powers: Vec<Vec<Poly>> = images
            .iter()
            .map(|p| vec![Poly::one(out_nvars), p.clone()])
            .collect();
        let mut acc = Poly::zero(out_nvars);
        for (m, c) in &self.terms {
            let mut term = Poly::constant(out_nvars, c.clone());
            for (j, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[j].len() <= e as usize {
                    let next = {
                        let last = powers[j].last().unwrap();
                        last * &images[j]
                    };
                    powers[j].push(next);
                }
                term = &term * &powers[j][e as usize];
            }
            acc = &acc + &term;
        }
        acc
    }

    pub fn eval(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.nvars);
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (j, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    t *= &point[j];
                }
            }
            acc += t;
        }
        acc
    }

    pub fn vars_used(&self) -> BTreeSet<usize> {
        let mut s = BTreeSet::new();
        for (m, _) in &self.terms {
            for (j, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    s.insert(j);
                }
            }
        }
        s
    }

    /// Ascending coefficients when the polynomial involves at most the single
    /// variable `var` (constants qualify for any `var`).
    pub fn univar_coeffs(&self, var: usize) -> Option<Vec<Rat>> {
        let used = self.vars_used();
        if !used.is_empty() && used != BTreeSet::from([var]) {
            return None;
        }
        let deg = self
            .terms
            .keys()
            .map(|m| m.0[var] as usize)
            .max()
            .unwrap_or(0);
        let mut coeffs = vec![Rat::zero(); deg + 1];
        for (m, c) in &self.terms {
            coeffs[m.0[var] as usize] = c.clone();
        }
        Some(coeffs)
    }

    /// `(constant, linear coefficients)` when total degree ≤ 1.
    pub fn affine_parts(&self) -> Option<(Rat, Vec<Rat>)> {
        if self.total_degree().unwrap_or(0) > 1 {
            return None;
        }
        let mut constant = Rat::zero();
        let mut lin = vec![Rat::zero(); self.nvars];
        for (m, c) in &self.terms {
            if m.is_unit() {
                constant = c.clone();
            } else {
                let j = m.0.iter().position(|&e| e == 1).unwrap();
                lin[j] = c.clone();
            }
        }
        Some((constant, lin))
    }

    /// Renders with the given variable names, terms in descending graded-lex
    /// order. The output parses back to the same polynomial.
    pub fn format(&self, names: &[String]) -> String {
        assert_eq!(names.len(), self.nvars);
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else if neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.is_unit() {
                factors.push(abs.to_string());
            }
            for (j, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(names[j].clone()),
                    _ => factors.push(format!("{}^{}", names[j], e)),
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = Poly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_int};

    fn names(list: &[&str]) -> Vec<String> {
        list.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn grlex_ordering() {
        // u^2 > u*v > v^2 > u > v > 1 with variable order (u, v)
        let m = |a: u32, b: u32| Monomial(vec![a, b]);
        assert!(m(2, 0) > m(1, 1));
        assert!(m(1, 1) > m(0, 2));
        assert!(m(0, 2) > m(1, 0));
        assert!(m(1, 0) > m(0, 1));
        assert!(m(0, 1) > m(0, 0));
    }

    #[test]
    fn format_canonical() {
        let u = Poly::var(2, 0);
        let v = Poly::var(2, 1);
        let p = &(&(&u * &u) - &v.scale(&rat_int(2))) + &Poly::constant(2, rat(1, 2));
        assert_eq!(p.format(&names(&["u", "v"])), "u^2 - 2*v + 1/2");
        assert_eq!(Poly::zero(2).format(&names(&["u", "v"])), "0");
        let neg_lead = &Poly::zero(2) - &(&u * &v);
        assert_eq!(neg_lead.format(&names(&["u", "v"])), "-u*v");
    }

    #[test]
    fn substitution_is_homomorphism() {
        let u = Poly::var(1, 0);
        let shift = &u + &Poly::one(1);
        let p = &(&u * &u) - &u; // u(u-1)
        let q = &u.scale(&rat_int(3)) + &Poly::one(1);
        let img = [shift.clone()];
        let lhs = (&p * &q).substitute(&img);
        let rhs = &p.substitute(&img) * &q.substitute(&img);
        assert_eq!(lhs, rhs);
        let sum = (&p + &q).substitute(&img);
        assert_eq!(sum, &p.substitute(&img) + &q.substitute(&img));
        // u(u-1) under u -> u+1 expands to (u+1)u = u^2 + u
        assert_eq!(p.substitute(&img), &(&u * &u) + &u);
    }

    #[test]
    fn univar_and_affine_views() {
        let u = Poly::var(2, 0);
        let v = Poly::var(2, 1);
        let p = &v - &u;
        assert_eq!(p.univar_coeffs(0), None);
        let q = &(&u * &u) + &Poly::one(2);
        assert_eq!(
            q.univar_coeffs(0),
            Some(vec![rat_int(1), rat_int(0), rat_int(1)])
        );
        let (c, lin) = p.affine_parts().unwrap();
        assert_eq!(c, rat_int(0));
        assert_eq!(lin, vec![rat_int(-1), rat_int(1)]);
        assert!(q.affine_parts().is_none());
        assert!(Poly::constant(2, rat_int(5)).univar_coeffs(1).is_some());
    }
}
