//! Substitution endomorphisms of the polynomial ring, with declared inverses.

use num::Zero;

use crate::arith::Rat;
use crate::poly::Poly;

/// A ring endomorphism `u_j ↦ images[j]` together with a declared inverse
/// substitution. The pair is *verified*, not trusted: see
/// [`Endo::is_automorphism_pair`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Endo {
    nvars: usize,
    images: Vec<Poly>,
    inverse: Vec<Poly>,
}

impl Endo {
    pub fn new(images: Vec<Poly>, inverse: Vec<Poly>) -> Self {
        let nvars = images.len();
        assert_eq!(inverse.len(), nvars);
        assert!(images.iter().chain(&inverse).all(|p| p.nvars() == nvars));
        Endo {
            nvars,
            images,
            inverse,
        }
    }

    pub fn identity(nvars: usize) -> Self {
        let vars: Vec<Poly> = (0..nvars).map(|j| Poly::var(nvars, j)).collect();
        Endo {
            nvars,
            images: vars.clone(),
            inverse: vars,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn images(&self) -> &[Poly] {
        &self.images
    }

    pub fn inverse_images(&self) -> &[Poly] {
        &self.inverse
    }

    pub fn image_of(&self, var: usize) -> &Poly {
        &self.images[var]
    }

    /// Applies the substitution; a ring homomorphism by construction.
    pub fn apply(&self, p: &Poly) -> Poly {
        assert_eq!(p.nvars(), self.nvars, "variable list mismatch");
        p.substitute(&self.images)
    }

    /// Applies the declared inverse substitution.
    pub fn apply_inverse(&self, p: &Poly) -> Poly {
        assert_eq!(p.nvars(), self.nvars, "variable list mismatch");
        p.substitute(&self.inverse)
    }

    /// σ^k for any integer k.
    pub fn apply_pow(&self, k: i64, p: &Poly) -> Poly {
        let mut out = p.clone();
        for _ in 0..k.unsigned_abs() {
            out = if k >= 0 {
                self.apply(&out)
            } else {
                self.apply_inverse(&out)
            };
        }
        out
    }

    /// True iff the declared inverse really is a two-sided inverse on every
    /// variable.
    pub fn is_automorphism_pair(&self) -> bool {
        (0..self.nvars).all(|j| {
            let v = Poly::var(self.nvars, j);
            self.inverse[j].substitute(&self.images) == v
                && self.images[j].substitute(&self.inverse) == v
        })
    }

    /// True iff the two substitutions commute on every variable.
    pub fn commutes_with(&self, other: &Endo) -> bool {
        assert_eq!(self.nvars, other.nvars, "variable list mismatch");
        (0..self.nvars).all(|j| {
            let v = Poly::var(self.nvars, j);
            self.apply(&other.apply(&v)) == other.apply(&self.apply(&v))
        })
    }

    pub fn is_identity(&self) -> bool {
        (0..self.nvars).all(|j| self.images[j] == Poly::var(self.nvars, j))
    }

    /// When every image is `u_j + c_j`, the constant shift vector.
    pub fn translation_vector(&self) -> Option<Vec<Rat>> {
        let mut shifts = Vec::with_capacity(self.nvars);
        for j in 0..self.nvars {
            let diff = &self.images[j] - &Poly::var(self.nvars, j);
            shifts.push(diff.as_constant()?);
        }
        Some(shifts)
    }

    /// When every image is a linear combination of variables of equal or
    /// lower index, the (upper-triangular) matrix column `j` = image of `u_j`.
    pub fn triangular_matrix(&self) -> Option<Vec<Vec<Rat>>> {
        let mut cols: Vec<Vec<Rat>> = Vec::with_capacity(self.nvars);
        for j in 0..self.nvars {
            let (c, lin) = self.images[j].affine_parts()?;
            if !c.is_zero() {
                return None;
            }
            if lin.iter().skip(j + 1).any(|x| !num::Zero::is_zero(x)) {
                return None;
            }
            cols.push(lin);
        }
        // rows[k][j] = coefficient of u_k in image of u_j
        let rows = (0..self.nvars)
            .map(|k| (0..self.nvars).map(|j| cols[j][k].clone()).collect())
            .collect();
        Some(rows)
    }
}

/// Structural family of a datum's automorphisms, used to dispatch exact
/// kernel and simplicity procedures.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// Every σ_i translates each variable by a rational constant.
    Translation,
    /// Every σ_i acts by an upper-triangular linear map on the variables.
    TriangularQ,
    Generic,
}

impl Family {
    pub fn as_str(&self) -> &'static str {
        match self {
            Family::Translation => "translation",
            Family::TriangularQ => "triangular-q",
            Family::Generic => "generic",
        }
    }

    pub fn parse(s: &str) -> Option<Family> {
        match s {
            "translation" => Some(Family::Translation),
            "triangular-q" => Some(Family::TriangularQ),
            "generic" => Some(Family::Generic),
            _ => None,
        }
    }
}

/// Convenience constructor for affine rank-one endos `u ↦ a·u + b`, a ≠ 0.
pub fn affine_endo(a: &Rat, b: &Rat) -> Endo {
    let u = Poly::var(1, 0);
    let img = &u.scale(a) + &Poly::constant(1, b.clone());
    let ainv = a.clone().recip();
    let inv = &u.scale(&ainv) - &Poly::constant(1, b * &ainv);
    Endo::new(vec![img], vec![inv])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_int};
    use crate::parse::parse_poly;

    fn vs(list: &[&str]) -> Vec<String> {
        list.iter().map(|s| s.to_string()).collect()
    }

    fn endo1(img: &str, inv: &str) -> Endo {
        let v = vs(&["u"]);
        Endo::new(
            vec![parse_poly(img, &v).unwrap()],
            vec![parse_poly(inv, &v).unwrap()],
        )
    }

    #[test]
    fn shift_has_inverse() {
        assert!(endo1("u+1", "u-1").is_automorphism_pair());
    }

    #[test]
    fn square_is_not_invertible() {
        assert!(!endo1("u^2", "u^2").is_automorphism_pair());
    }

    #[test]
    fn triangular_q_pair_by_back_substitution() {
        // H1 ↦ q·H1 + Hm1, Hm1 ↦ q⁻¹·Hm1 with q = 2, inverse back-substituted
        let v = vs(&["Hm1", "H1"]);
        let e = Endo::new(
            vec![
                parse_poly("1/2*Hm1", &v).unwrap(),
                parse_poly("2*H1 + Hm1", &v).unwrap(),
            ],
            vec![
                parse_poly("2*Hm1", &v).unwrap(),
                parse_poly("1/2*H1 - Hm1", &v).unwrap(),
            ],
        );
        assert!(e.is_automorphism_pair());
        let m = e.triangular_matrix().unwrap();
        assert_eq!(m[0], vec![rat(1, 2), rat_int(1)]);
        assert_eq!(m[1], vec![rat_int(0), rat_int(2)]);
    }

    #[test]
    fn translations_commute() {
        let a = endo1("u+1", "u-1");
        let b = endo1("u-1", "u+1");
        assert!(a.commutes_with(&b));
    }

    #[test]
    fn scaling_and_shift_do_not_commute() {
        let a = endo1("2*u", "1/2*u");
        let b = endo1("u+1", "u-1");
        assert!(!a.commutes_with(&b));
    }

    #[test]
    fn identity_commutes_with_anything() {
        let a = endo1("2*u+3", "1/2*u-3/2");
        assert!(a.commutes_with(&Endo::identity(1)));
        assert!(a.is_automorphism_pair());
    }

    #[test]
    fn translation_vector_detection() {
        let a = endo1("u+5/2", "u-5/2");
        assert_eq!(a.translation_vector(), Some(vec![rat(5, 2)]));
        assert_eq!(endo1("2*u", "1/2*u").translation_vector(), None);
    }

    #[test]
    fn apply_pow_negative_uses_inverse() {
        let a = endo1("u+1", "u-1");
        let u = Poly::var(1, 0);
        let v = vs(&["u"]);
        assert_eq!(a.apply_pow(-3, &u).format(&v), "u - 3");
        assert_eq!(a.apply_pow(2, &u).format(&v), "u + 2");
        assert_eq!(a.apply_pow(0, &u), u);
    }
}
