//! TGW data attached to symmetric generalized Cartan matrices: validation,
//! Coxeter graph components, datum synthesis, the component kernel basis,
//! and relation verification on the resulting algebras.

use num::bigint::BigInt;
use num::{One, Zero};

use crate::arith::{rat_pow, Lattice, Rat};
use crate::endo::{Endo, Family};
use crate::error::Error;
use crate::poly::Poly;
use crate::tgw::{Algebra, Element, TgwDatum, DEFAULT_ZERO_CAP};

/// A symmetric generalized Cartan matrix: 2 on the diagonal, non-positive
/// off-diagonal entries with a symmetric vanishing pattern.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gcm {
    a: Vec<Vec<i64>>,
}

impl Gcm {
    pub fn new(a: Vec<Vec<i64>>) -> Result<Gcm, Error> {
        let n = a.len();
        if a.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidGcm("matrix is not square".to_string()));
        }
        for i in 0..n {
            if a[i][i] != 2 {
                return Err(Error::InvalidGcm(format!(
                    "diagonal entry a[{0}][{0}] must be 2",
                    i + 1
                )));
            }
            for j in 0..n {
                if i == j {
                    continue;
                }
                if a[i][j] > 0 {
                    return Err(Error::InvalidGcm(format!(
                        "off-diagonal entry a[{}][{}] must be non-positive",
                        i + 1,
                        j + 1
                    )));
                }
                if (a[i][j] == 0) != (a[j][i] == 0) {
                    return Err(Error::InvalidGcm(format!(
                        "vanishing pattern must be symmetric at ({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
                if a[i][j] != a[j][i] {
                    return Err(Error::InvalidGcm(format!(
                        "matrix must be symmetric at ({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(Gcm { a })
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn at(&self, i: usize, j: usize) -> i64 {
        self.a[i][j]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.a
    }
}

/// Connected components of the Coxeter graph (edges where a_ij < 0), each
/// sorted, the list sorted by least vertex. Vertices are 0-based.
pub fn coxeter_components(c: &Gcm) -> Vec<Vec<usize>> {
    let n = c.n();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut comp = vec![];
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(v) = stack.pop() {
            comp.push(v);
            for w in 0..n {
                if w != v && !seen[w] && c.at(v, w) < 0 {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Variable name for the chain generator with superscript k on the pair
/// (i, j), i < j, 0-based in the arguments and 1-based in the name.
/// Negative superscripts carry an `m` tag so the name stays an identifier.
pub fn chain_var_name(i: usize, j: usize, k: i64) -> String {
    if k < 0 {
        format!("H{}_{}_m{}", i + 1, j + 1, -k)
    } else {
        format!("H{}_{}_{}", i + 1, j + 1, k)
    }
}

/// The superscript range for a pair with entry `a ≤ 0`: a, a+2, …, −a.
fn chain_range(a: i64) -> Vec<i64> {
    let mut k = a;
    let mut out = Vec::new();
    while k <= -a {
        out.push(k);
        k += 2;
    }
    out
}

/// Builds the TGW datum attached to a symmetric generalized Cartan matrix
/// and a nonzero rational q. Variables are chain generators H_{ij}^{(k)}
/// for i < j; σ_j scales each chain entry by q^k and shifts in the entry
/// two below (with the bottom eigenvector convention H^{(a-2)} := 0), σ_i
/// acts by the inverse on the same chain, and all other σ_r fix it. The
/// result is triangular in the declared variable order and passes both
/// validation and the consistency check.
pub fn build_tq(c: &Gcm, q: &Rat) -> Result<TgwDatum, Error> {
    if q.is_zero() {
        return Err(Error::ZeroQ);
    }
    let n = c.n();
    // variable layout: chains ordered by (i, j), ascending k inside a chain
    let mut vars: Vec<String> = Vec::new();
    let mut chain_offset: Vec<Vec<Option<(usize, usize)>>> = vec![vec![None; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let range = chain_range(c.at(i, j));
            chain_offset[i][j] = Some((vars.len(), range.len()));
            for k in &range {
                vars.push(chain_var_name(i, j, *k));
            }
        }
    }
    let nv = vars.len();
    let var_poly = |idx: usize| Poly::var(nv, idx);

    // forward action on one chain slot: H^(k) ↦ q^k H^(k) + H^(k-2)
    let chain_forward = |base: usize, a: i64, slot: usize| -> Poly {
        let k = a + 2 * slot as i64;
        let mut img = var_poly(base + slot).scale(&rat_pow(q, k));
        if slot > 0 {
            img = &img + &var_poly(base + slot - 1);
        }
        img
    };
    // inverse by back-substitution: σ⁻¹(H^(k)) = q^(-k)(H^(k) − σ⁻¹(H^(k-2)))
    let chain_backward = |base: usize, len: usize, a: i64| -> Vec<Poly> {
        let mut inv: Vec<Poly> = Vec::with_capacity(len);
        for slot in 0..len {
            let k = a + 2 * slot as i64;
            let mut p = var_poly(base + slot);
            if slot > 0 {
                p = &p - &inv[slot - 1];
            }
            inv.push(p.scale(&rat_pow(q, -k)));
        }
        inv
    };

    let mut sigma: Vec<Endo> = Vec::with_capacity(n);
    for r in 0..n {
        let mut images: Vec<Poly> = (0..nv).map(var_poly).collect();
        let mut inverse: Vec<Poly> = (0..nv).map(var_poly).collect();
        for i in 0..n {
            for j in i + 1..n {
                let (base, len) = chain_offset[i][j].unwrap();
                if len == 0 {
                    continue;
                }
                let a = c.at(i, j);
                if r == j {
                    let back = chain_backward(base, len, a);
                    for slot in 0..len {
                        images[base + slot] = chain_forward(base, a, slot);
                        inverse[base + slot] = back[slot].clone();
                    }
                } else if r == i {
                    // σ_i = σ_j⁻¹ on this chain
                    let back = chain_backward(base, len, a);
                    for slot in 0..len {
                        images[base + slot] = back[slot].clone();
                        inverse[base + slot] = chain_forward(base, a, slot);
                    }
                }
            }
        }
        sigma.push(Endo::new(images, inverse));
    }

    // t_i = Π_j H_ij with H_ij the chain top for i < j, σ_i⁻¹ of the top
    // for i > j, and H_ii = 1
    let mut t: Vec<Poly> = Vec::with_capacity(n);
    for i in 0..n {
        let mut ti = Poly::one(nv);
        for j in 0..n {
            if j == i {
                continue;
            }
            let (lo, hi) = if i < j { (i, j) } else { (j, i) };
            let (base, len) = chain_offset[lo][hi].unwrap();
            let top = var_poly(base + len - 1);
            let factor = if i < j {
                top
            } else {
                sigma[i].apply_inverse(&top)
            };
            ti = &ti * &factor;
        }
        t.push(ti);
    }

    let mu = vec![vec![Rat::one(); n]; n];
    Ok(TgwDatum {
        vars,
        sigma,
        t,
        mu,
        family: Family::TriangularQ,
        zero_cap: DEFAULT_ZERO_CAP,
    })
}

/// The component indicator vectors `g_γ = Σ_{i∈γ} e_i`, a basis of the
/// kernel of the grading action for any nonzero rational q.
pub fn kernel_basis_components(c: &Gcm) -> Lattice {
    let n = c.n();
    let gens: Vec<Vec<BigInt>> = coxeter_components(c)
        .into_iter()
        .map(|comp| {
            let mut v = vec![BigInt::zero(); n];
            for i in comp {
                v[i] = BigInt::one();
            }
            v
        })
        .collect();
    Lattice::from_generators(n, gens)
}

/// Balanced quantum integer `[k]_q = q^{1−k} + q^{3−k} + … + q^{k−1}`,
/// extended to negative k by `[−k]_q = −[k]_q`.
pub fn quantum_int(k: i64, q: &Rat) -> Result<Rat, Error> {
    if q.is_zero() {
        return Err(Error::ZeroQ);
    }
    if k < 0 {
        return Ok(-quantum_int(-k, q)?);
    }
    let mut acc = Rat::zero();
    let mut e = 1 - k;
    while e <= k - 1 {
        acc += rat_pow(q, e);
        e += 2;
    }
    Ok(acc)
}

/// Equality of two elements in the quotient algebra.
pub fn verify_relation(alg: &Algebra, lhs: &Element, rhs: &Element) -> Result<bool, Error> {
    alg.equal(lhs, rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{
        centralizer_commutative, finitistic_profile, kernel_of_sigma, zn_simplicity,
        CentralizerCertificate, ZnWitness,
    };
    use crate::arith::{rat, rat_int};
    use crate::verdict::Verdict;

    fn a2() -> Gcm {
        Gcm::new(vec![vec![2, -1], vec![-1, 2]]).unwrap()
    }

    fn a1a1() -> Gcm {
        Gcm::new(vec![vec![2, 0], vec![0, 2]]).unwrap()
    }

    fn a2_plus_a1() -> Gcm {
        Gcm::new(vec![vec![2, -1, 0], vec![-1, 2, 0], vec![0, 0, 2]]).unwrap()
    }

    #[test]
    fn gcm_validation() {
        assert!(Gcm::new(vec![vec![2, -1], vec![0, 2]]).is_err());
        assert!(Gcm::new(vec![vec![2, 1], vec![1, 2]]).is_err());
        assert!(Gcm::new(vec![vec![1, 0], vec![0, 2]]).is_err());
        assert!(Gcm::new(vec![vec![2, -2], vec![-1, 2]]).is_err());
        assert!(Gcm::new(vec![vec![2, -1], vec![-1, 2]]).is_ok());
    }

    #[test]
    fn components_of_bundled_matrices() {
        assert_eq!(coxeter_components(&a2()), vec![vec![0, 1]]);
        assert_eq!(coxeter_components(&a1a1()), vec![vec![0], vec![1]]);
        assert_eq!(coxeter_components(&a2_plus_a1()), vec![vec![0, 1], vec![2]]);
    }

    #[test]
    fn build_a1a1_has_single_fixed_variable() {
        let d = build_tq(&a1a1(), &rat_int(2)).unwrap();
        assert_eq!(d.vars, vec!["H1_2_0".to_string()]);
        for s in &d.sigma {
            assert!(s.is_identity());
        }
        assert_eq!(d.format_poly(&d.t[0]), "H1_2_0");
        assert_eq!(d.format_poly(&d.t[1]), "H1_2_0");
        assert!(d.validate().is_valid());
        assert!(d.check_consistency().is_yes());
    }

    #[test]
    fn build_a2_matches_chain_formulas() {
        let d = build_tq(&a2(), &rat_int(2)).unwrap();
        assert_eq!(d.vars, vec!["H1_2_m1".to_string(), "H1_2_1".to_string()]);
        // σ2(H^(1)) = 2 H^(1) + H^(-1), σ2(H^(-1)) = (1/2) H^(-1)
        assert_eq!(d.format_poly(d.sigma[1].image_of(1)), "H1_2_m1 + 2*H1_2_1");
        assert_eq!(d.format_poly(d.sigma[1].image_of(0)), "1/2*H1_2_m1");
        // σ1 = σ2⁻¹ on the chain
        assert_eq!(
            d.format_poly(d.sigma[0].image_of(1)),
            "-H1_2_m1 + 1/2*H1_2_1"
        );
        assert_eq!(d.format_poly(d.sigma[0].image_of(0)), "2*H1_2_m1");
        assert_eq!(d.format_poly(&d.t[0]), "H1_2_1");
        assert_eq!(d.format_poly(&d.t[1]), "-H1_2_m1 + 1/2*H1_2_1");
        assert!(d.validate().is_valid());
        assert!(d.check_consistency().is_yes());
    }

    #[test]
    fn invalid_inputs_are_rejected() {
        assert!(matches!(
            Gcm::new(vec![vec![2, -1], vec![0, 2]]),
            Err(Error::InvalidGcm(_))
        ));
        assert!(matches!(build_tq(&a2(), &rat_int(0)), Err(Error::ZeroQ)));
    }

    #[test]
    fn consistency_holds_for_all_bundled_matrices_and_q() {
        for gcm in [a2(), a1a1(), a2_plus_a1()] {
            for q in [rat_int(2), rat_int(3), rat_int(1), rat(1, 2)] {
                let d = build_tq(&gcm, &q).unwrap();
                let report = d.validate();
                assert!(report.is_valid(), "{:?}", report.violations);
                assert!(d.check_consistency().is_yes());
            }
        }
    }

    #[test]
    fn profile_recovers_the_cartan_matrix() {
        for gcm in [a2(), a1a1(), a2_plus_a1()] {
            let d = build_tq(&gcm, &rat_int(2)).unwrap();
            let p = finitistic_profile(&d, 16);
            assert_eq!(
                p.cartan_matrix().unwrap(),
                gcm.rows().to_vec(),
                "profile mismatch for {:?}",
                gcm
            );
        }
    }

    #[test]
    fn kernel_matches_components_for_bundled_matrices() {
        for gcm in [a2(), a1a1(), a2_plus_a1()] {
            for q in [rat_int(2), rat_int(3), rat_int(1)] {
                let d = build_tq(&gcm, &q).unwrap();
                let k = kernel_of_sigma(&d, 4).unwrap();
                assert!(k.certified);
                assert_eq!(
                    k.lattice,
                    kernel_basis_components(&gcm),
                    "kernel mismatch for {:?} at q = {}",
                    gcm,
                    q
                );
            }
        }
    }

    #[test]
    fn quantum_integers() {
        let q = rat_int(2);
        assert_eq!(quantum_int(0, &q).unwrap(), rat_int(0));
        assert_eq!(quantum_int(2, &q).unwrap(), rat(5, 2));
        assert_eq!(quantum_int(3, &rat_int(1)).unwrap(), rat_int(3));
        assert_eq!(quantum_int(-2, &q).unwrap(), rat(-5, 2));
        assert!(quantum_int(1, &rat_int(0)).is_err());
    }

    #[test]
    fn cross_component_generators_commute() {
        let d = build_tq(&a1a1(), &rat_int(2)).unwrap();
        let alg = Algebra::new(d).unwrap();
        let x1x2 = alg.parse_element("X1*X2").unwrap();
        let x2x1 = alg.parse_element("X2*X1").unwrap();
        assert!(verify_relation(&alg, &x1x2, &x2x1).unwrap());
        let y1y2 = alg.parse_element("Y1*Y2").unwrap();
        let y2y1 = alg.parse_element("Y2*Y1").unwrap();
        assert!(verify_relation(&alg, &y1y2, &y2y1).unwrap());
        // and across the A2 | A1 split in the rank-3 case
        let d = build_tq(&a2_plus_a1(), &rat_int(2)).unwrap();
        let alg = Algebra::new(d).unwrap();
        for (l, r) in [("X1*X3", "X3*X1"), ("X2*X3", "X3*X2"), ("Y1*Y3", "Y3*Y1")] {
            assert!(verify_relation(
                &alg,
                &alg.parse_element(l).unwrap(),
                &alg.parse_element(r).unwrap()
            )
            .unwrap());
        }
    }

    #[test]
    fn centralizer_commutative_on_bundled_matrices() {
        let d = build_tq(&a2(), &rat_int(2)).unwrap();
        let alg = Algebra::new(d).unwrap();
        let k = kernel_of_sigma(alg.datum(), 4).unwrap();
        assert!(matches!(
            centralizer_commutative(&alg, &k, 3).unwrap(),
            Verdict::Yes(CentralizerCertificate::RankAtMostOne)
        ));
        let d = build_tq(&a1a1(), &rat_int(2)).unwrap();
        let alg = Algebra::new(d).unwrap();
        let k = kernel_of_sigma(alg.datum(), 4).unwrap();
        assert!(matches!(
            centralizer_commutative(&alg, &k, 3).unwrap(),
            Verdict::Yes(CentralizerCertificate::BoundedBrackets { m_cap: 3 })
        ));
    }

    #[test]
    fn tq_a2_base_ring_is_not_invariant_simple() {
        let d = build_tq(&a2(), &rat_int(2)).unwrap();
        match zn_simplicity(&d) {
            Verdict::No(ZnWitness { form, eigenvalues }) => {
                assert_eq!(d.format_poly(&form), "H1_2_m1");
                assert_eq!(eigenvalues, vec![rat_int(2), rat(1, 2)]);
            }
            other => panic!("expected No, got {:?}", other),
        }
    }
}
