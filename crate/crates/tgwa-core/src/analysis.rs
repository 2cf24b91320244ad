//! Structural analysis of a TGW datum: kernel of the grading action,
//! finitistic profile and generalized Cartan matrix, Lie-type detection,
//! invariant-ideal analysis of the base ring, center containment, and
//! commutativity of the centralizer of R.

use std::collections::BTreeMap;

use num::bigint::BigInt;
use num::{Integer, One, Signed, Zero};

use crate::arith::{
    integer_kernel, rat_int, rational_mult_relations, rational_roots, Lattice, Rat, RatEchelon,
    RatMatrix,
};
use crate::endo::Family;
use crate::error::Error;
use crate::poly::{Monomial, Poly};
use crate::tgw::{Algebra, Element, Gen, RedWord, TgwDatum};
use crate::verdict::Verdict;

// ---------------------------------------------------------------------------
// Kernel of σ : Z^n -> Aut(R)
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KernelMethod {
    Translation,
    TriangularQ,
    BoundedBox(u32),
}

impl KernelMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            KernelMethod::Translation => "translation",
            KernelMethod::TriangularQ => "triangular-q",
            KernelMethod::BoundedBox(_) => "bounded-box",
        }
    }
}

/// The subgroup `K = ker σ` of `Z^n`. When `certified`, the lattice is
/// exactly the kernel; a bounded-box scan only bounds it from below.
#[derive(Clone, Debug)]
pub struct KernelDescription {
    pub lattice: Lattice,
    pub certified: bool,
    pub method: KernelMethod,
}

fn verify_fixes_generators(d: &TgwDatum, lattice: &Lattice) -> Result<(), Error> {
    for b in lattice.basis_i64() {
        for j in 0..d.nvars() {
            let v = Poly::var(d.nvars(), j);
            if d.sigma_apply(&b, &v) != v {
                return Err(Error::Internal(format!(
                    "kernel basis vector {:?} does not fix variable {}",
                    b, d.vars[j]
                )));
            }
        }
    }
    Ok(())
}

/// Exact kernel for the translation family: σ_g translates variable j by
/// `Σ_i g_i c_ij`, so K is the integer kernel of the shift matrix.
fn kernel_translation(d: &TgwDatum) -> Lattice {
    let n = d.rank();
    let shifts: Vec<Vec<Rat>> = d
        .sigma
        .iter()
        .map(|s| s.translation_vector().expect("validated translation family"))
        .collect();
    let rows: Vec<Vec<Rat>> = (0..d.nvars())
        .map(|j| (0..n).map(|i| shifts[i][j].clone()).collect())
        .collect();
    integer_kernel(&RatMatrix::from_rows_sized(rows, n))
}

/// Exact kernel for commuting upper-triangular linear actions. Triangular
/// matrices multiply diagonals entrywise, so `σ_g = id` forces the
/// eigenvalue products `Π_i λ_{i,v}^{g_i} = 1` — a multiplicative lattice
/// condition solved by prime factorization. On that sublattice every `σ_g`
/// is unipotent; its exact matrix logarithm is additive there, so one more
/// integer kernel finishes the computation.
fn kernel_triangular(d: &TgwDatum) -> Result<Lattice, Error> {
    let n = d.rank();
    let nv = d.nvars();
    if nv == 0 {
        return Ok(Lattice::full(n));
    }
    let mats: Vec<RatMatrix> = d
        .sigma
        .iter()
        .map(|s| {
            RatMatrix::from_rows(s.triangular_matrix().expect("validated triangular family"))
        })
        .collect();
    let inv_mats: Vec<RatMatrix> = d
        .sigma
        .iter()
        .map(|s| {
            let inv = crate::endo::Endo::new(
                s.inverse_images().to_vec(),
                s.images().to_vec(),
            );
            RatMatrix::from_rows(
                inv.triangular_matrix()
                    .expect("inverse of a triangular automorphism is triangular"),
            )
        })
        .collect();
    // Eigenvalue condition per variable, with one parity column per variable
    // to absorb signs: Σ_i g_i·e_p(λ_{i,v}) = 0 and sign products = +1.
    let mut prime_rows: BTreeMap<(usize, BigInt), Vec<Rat>> = BTreeMap::new();
    let mut sign_rows: Vec<Vec<Rat>> = vec![vec![Rat::zero(); n + nv]; nv];
    for v in 0..nv {
        for i in 0..n {
            let lambda = mats[i].at(v, v);
            assert!(!lambda.is_zero(), "triangular automorphism with zero diagonal");
            if lambda.is_negative() {
                sign_rows[v][i] += Rat::one();
            }
            for (p, e) in factor_pairs(lambda) {
                let row = prime_rows
                    .entry((v, p))
                    .or_insert_with(|| vec![Rat::zero(); n + nv]);
                row[i] += rat_int(e);
            }
        }
        sign_rows[v][n + v] = rat_int(-2);
    }
    let mut rows: Vec<Vec<Rat>> = prime_rows.into_values().collect();
    rows.extend(sign_rows);
    let ker = integer_kernel(&RatMatrix::from_rows_sized(rows, n + nv));
    let eigen_lattice = Lattice::from_generators(
        n,
        ker.basis().iter().map(|v| v[..n].to_vec()).collect(),
    );
    if eigen_lattice.is_zero() {
        return Ok(eigen_lattice);
    }
    // Unipotent condition: for each eigen-lattice basis vector b, N_b =
    // log(M^b) is nilpotent; M^{Σ c_b b} = id iff Σ c_b N_b = 0.
    let basis = eigen_lattice.basis_i64();
    let logs: Vec<RatMatrix> = basis
        .iter()
        .map(|b| {
            let mut acc = RatMatrix::identity(nv);
            for (i, &gi) in b.iter().enumerate() {
                let base = if gi >= 0 { &mats[i] } else { &inv_mats[i] };
                for _ in 0..gi.unsigned_abs() {
                    acc = acc.mul_mat(base);
                }
            }
            unipotent_log(&acc)
        })
        .collect::<Result<_, _>>()?;
    let rows: Vec<Vec<Rat>> = (0..nv * nv)
        .map(|k| {
            logs.iter()
                .map(|l| l.at(k / nv, k % nv).clone())
                .collect()
        })
        .collect();
    let coeff_kernel = integer_kernel(&RatMatrix::from_rows_sized(rows, basis.len()));
    let gens: Vec<Vec<BigInt>> = coeff_kernel
        .basis()
        .iter()
        .map(|c| {
            let mut g = vec![BigInt::zero(); n];
            for (ck, b) in c.iter().zip(&basis) {
                for j in 0..n {
                    g[j] += ck * BigInt::from(b[j]);
                }
            }
            g
        })
        .collect();
    Ok(Lattice::from_generators(n, gens))
}

fn factor_pairs(r: &Rat) -> Vec<(BigInt, i64)> {
    fn factor_abs(mut x: BigInt, sign: i64, out: &mut Vec<(BigInt, i64)>) {
        let mut d = BigInt::from(2);
        while &d * &d <= x {
            let mut e = 0i64;
            while (&x % &d).is_zero() {
                x /= &d;
                e += 1;
            }
            if e > 0 {
                out.push((d.clone(), sign * e));
            }
            d += if d == BigInt::from(2) { 1 } else { 2 };
        }
        if x > BigInt::one() {
            out.push((x, sign));
        }
    }
    let mut out = Vec::new();
    factor_abs(r.numer().abs(), 1, &mut out);
    factor_abs(r.denom().clone(), -1, &mut out);
    out
}

/// log of a unipotent matrix: Σ (−1)^{k+1}(U − I)^k / k, a finite sum.
fn unipotent_log(u: &RatMatrix) -> Result<RatMatrix, Error> {
    let n = u.nrows();
    for i in 0..n {
        if !u.at(i, i).is_one() {
            return Err(Error::Internal(
                "eigenvalue lattice produced a non-unipotent power product".to_string(),
            ));
        }
    }
    let mut nmat = u.clone();
    for i in 0..n {
        *nmat.at_mut(i, i) -= Rat::one();
    }
    let mut acc = RatMatrix::zero(n, n);
    let mut power = nmat.clone();
    let mut k = 1i64;
    while (k as usize) <= n {
        let sign = if k % 2 == 1 { Rat::one() } else { -Rat::one() };
        let coef = sign / rat_int(k);
        for i in 0..n {
            for j in 0..n {
                let t = power.at(i, j) * &coef;
                *acc.at_mut(i, j) += t;
            }
        }
        power = power.mul_mat(&nmat);
        k += 1;
    }
    Ok(acc)
}

/// Kernel of the grading action. Translation and triangular families are
/// solved exactly and certified; otherwise a box scan reports the sublattice
/// generated by the hits, uncertified.
pub fn kernel_of_sigma(d: &TgwDatum, box_radius: u32) -> Result<KernelDescription, Error> {
    match d.family {
        Family::Translation => {
            let lattice = kernel_translation(d);
            verify_fixes_generators(d, &lattice)?;
            Ok(KernelDescription {
                lattice,
                certified: true,
                method: KernelMethod::Translation,
            })
        }
        Family::TriangularQ => {
            let lattice = kernel_triangular(d)?;
            verify_fixes_generators(d, &lattice)?;
            Ok(KernelDescription {
                lattice,
                certified: true,
                method: KernelMethod::TriangularQ,
            })
        }
        Family::Generic => {
            let n = d.rank();
            let r = box_radius as i64;
            let mut hits: Vec<Vec<i64>> = Vec::new();
            let mut g = vec![-r; n];
            loop {
                if g.iter().any(|&x| x != 0) {
                    let fixes = (0..d.nvars()).all(|j| {
                        let v = Poly::var(d.nvars(), j);
                        d.sigma_apply(&g, &v) == v
                    });
                    if fixes {
                        hits.push(g.clone());
                    }
                }
                let mut i = 0;
                while i < n {
                    g[i] += 1;
                    if g[i] <= r {
                        break;
                    }
                    g[i] = -r;
                    i += 1;
                }
                if i == n {
                    break;
                }
            }
            Ok(KernelDescription {
                lattice: Lattice::from_i64_generators(n, &hits),
                certified: false,
                method: KernelMethod::BoundedBox(box_radius),
            })
        }
    }
}

// ---------------------------------------------------------------------------
// Finitistic profile and Cartan matrix
// ---------------------------------------------------------------------------

/// The table of minimal recurrence lengths `m_ij` (diagonal unused) and the
/// generalized Cartan matrix `a_ij = 1 − m_ij` it induces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanProfile {
    pub m: Vec<Vec<Option<u32>>>,
}

impl CartanProfile {
    pub fn rank(&self) -> usize {
        self.m.len()
    }

    pub fn all_known(&self) -> bool {
        let n = self.rank();
        (0..n).all(|i| (0..n).all(|j| i == j || self.m[i][j].is_some()))
    }

    pub fn cartan_matrix(&self) -> Option<Vec<Vec<i64>>> {
        let n = self.rank();
        let mut c = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    c[i][j] = 2;
                } else {
                    c[i][j] = 1 - i64::from(self.m[i][j]?);
                }
            }
        }
        Some(c)
    }
}

fn poly_to_vec(p: &Poly, index: &mut BTreeMap<Monomial, usize>) -> Vec<Rat> {
    for (m, _) in p.terms() {
        let next = index.len();
        index.entry(m.clone()).or_insert(next);
    }
    let mut v = vec![Rat::zero(); index.len()];
    for (m, c) in p.terms() {
        v[index[m]] = c.clone();
    }
    v
}

fn pad(mut v: Vec<Rat>, len: usize) -> Vec<Rat> {
    v.resize(len, Rat::zero());
    v
}

/// Minimal `k ≥ 1` with `σ_i^k(t_j)` in the rational span of the shorter
/// orbit, found by incremental rank computation. The right-sided minimum is
/// computed as well; the two must agree whenever both exist.
fn finitistic_entry(d: &TgwDatum, i: usize, j: usize, bound: u32) -> Option<u32> {
    let affine = d.sigma[i]
        .images()
        .iter()
        .all(|p| p.total_degree().unwrap_or(0) <= 1);
    let search_bound = if affine {
        // degree-preserving action: the orbit lives in the space of
        // polynomials of degree ≤ deg t_j, so dependence arrives by then
        let deg = d.t[j].total_degree().unwrap_or(0) as usize;
        let dim = monomial_count_up_to(d.nvars(), deg);
        (dim as u32) + 1
    } else {
        bound
    };
    let mut orbit: Vec<Poly> = vec![d.t[j].clone()];
    for _ in 0..search_bound {
        let next = d.sigma[i].apply(orbit.last().unwrap());
        orbit.push(next);
    }
    let mut index = BTreeMap::new();
    let raw: Vec<Vec<Rat>> = orbit.iter().map(|p| poly_to_vec(p, &mut index)).collect();
    let dim = index.len();
    let vecs: Vec<Vec<Rat>> = raw.into_iter().map(|v| pad(v, dim)).collect();
    // left minimum: first k ≥ 1 with v_k dependent on v_0..v_{k-1}
    let mut ech = RatEchelon::new();
    let mut left: Option<u32> = None;
    for (k, v) in vecs.iter().enumerate() {
        if !ech.insert(v.clone()) {
            left = Some(k as u32);
            break;
        }
    }
    // right minimum: first m ≥ 1 with v_0 in the span of v_1..v_m
    let mut ech = RatEchelon::new();
    let mut right: Option<u32> = None;
    for (m, v) in vecs.iter().enumerate().skip(1) {
        ech.insert(v.clone());
        if ech.is_member(vecs[0].clone()) {
            right = Some(m as u32);
            break;
        }
    }
    if let (Some(l), Some(r)) = (left, right) {
        assert_eq!(
            l, r,
            "left and right finitistic minima disagree at ({}, {})",
            i + 1,
            j + 1
        );
    }
    left
}

fn monomial_count_up_to(nvars: usize, deg: usize) -> usize {
    // C(nvars + deg, nvars), computed without intermediate overflow at the
    // sizes seen here
    let mut acc: usize = 1;
    for t in 1..=nvars {
        acc = acc * (deg + t) / t;
    }
    acc
}

/// For each i ≠ j, the minimal length of a rational linear recurrence
/// satisfied by the σ_i-orbit of t_j. Entries beyond the bound stay Unknown.
pub fn finitistic_profile(d: &TgwDatum, bound: u32) -> CartanProfile {
    let n = d.rank();
    let mut m = vec![vec![None; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                m[i][j] = finitistic_entry(d, i, j, bound);
            }
        }
    }
    CartanProfile { m }
}

/// True iff every off-diagonal Cartan entry is zero (all m_ij = 1): the
/// type in which the generators pairwise commute up to unit twists.
pub fn lie_type_is_a1n(profile: &CartanProfile) -> Result<bool, Error> {
    if !profile.all_known() {
        return Err(Error::UnknownEntries);
    }
    let n = profile.rank();
    Ok((0..n).all(|i| (0..n).all(|j| i == j || profile.m[i][j] == Some(1))))
}

// ---------------------------------------------------------------------------
// Z^n-simplicity of the base ring
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ZnCertificate {
    /// No variables: the base ring is the rational field.
    FieldBase,
    /// Translation vectors span the full rational space of variables, so a
    /// minimal-degree descent empties every invariant ideal.
    TranslationsSpan,
}

/// A nonconstant form generating a proper invariant ideal:
/// σ_i(form) = eigenvalues[i] · form for every i.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZnWitness {
    pub form: Poly,
    pub eigenvalues: Vec<Rat>,
}

pub type ZnVerdict = Verdict<ZnCertificate, ZnWitness>;

impl std::fmt::Display for ZnCertificate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ZnCertificate::FieldBase => write!(f, "scalar base ring"),
            ZnCertificate::TranslationsSpan => {
                write!(f, "translation vectors span the variable space")
            }
        }
    }
}

fn verified_eigenform(d: &TgwDatum, form: &Poly) -> Option<Vec<Rat>> {
    if form.is_zero() || form.is_constant() {
        return None;
    }
    let mut eigen = Vec::with_capacity(d.rank());
    for s in &d.sigma {
        let image = s.apply(form);
        let (m0, c0) = form.leading()?;
        let lead = image.coeff(m0);
        if lead.is_zero() {
            return None;
        }
        let lambda = &lead / c0;
        if image != form.scale(&lambda) {
            return None;
        }
        eigen.push(lambda);
    }
    Some(eigen)
}

/// Searches affine-linear forms for a joint eigenvector of the σ-action.
/// Every candidate is re-verified symbolically before being reported.
fn eigenform_search(d: &TgwDatum) -> Option<ZnWitness> {
    let nv = d.nvars();
    // single variables make the most legible witnesses
    for j in 0..nv {
        let v = Poly::var(nv, j);
        if let Some(eigen) = verified_eigenform(d, &v) {
            return Some(ZnWitness {
                form: v,
                eigenvalues: eigen,
            });
        }
    }
    // all σ_i affine? collect image rows (constant, then linear coeffs)
    let affine: Option<Vec<Vec<(Rat, Vec<Rat>)>>> = d
        .sigma
        .iter()
        .map(|s| (0..nv).map(|j| s.image_of(j).affine_parts()).collect())
        .collect();
    let affine = affine?;
    // fixed affine forms: solve σ_i(form) = form for all i on the
    // coefficient space (a_0, a_1, .., a_nv); the constant coefficient a_0
    // maps to itself, so it drops out of every difference row
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for img in &affine {
        for coord in 0..=nv {
            let mut row = vec![Rat::zero(); nv + 1];
            for j in 0..nv {
                let (c, lin) = &img[j];
                row[j + 1] = if coord == 0 { c.clone() } else { lin[coord - 1].clone() };
            }
            if coord > 0 {
                row[coord] -= Rat::one();
            }
            rows.push(row);
        }
    }
    for v in RatMatrix::from_rows_sized(rows, nv + 1).nullspace() {
        let mut form = Poly::constant(nv, v[0].clone());
        for j in 0..nv {
            form = &form + &Poly::var(nv, j).scale(&v[j + 1]);
        }
        if let Some(eigen) = verified_eigenform(d, &form) {
            return Some(ZnWitness {
                form,
                eigenvalues: eigen,
            });
        }
    }
    // joint eigenvectors of the linear parts, refined index by index
    let linear: Vec<RatMatrix> = affine
        .iter()
        .map(|img| {
            RatMatrix::from_rows(
                (0..nv)
                    .map(|k| (0..nv).map(|j| img[j].1[k].clone()).collect())
                    .collect(),
            )
        })
        .collect();
    let full: Vec<Vec<Rat>> = (0..nv)
        .map(|j| {
            let mut e = vec![Rat::zero(); nv];
            e[j] = Rat::one();
            e
        })
        .collect();
    let mut spaces = vec![full];
    for l in &linear {
        let mut next = Vec::new();
        for space in &spaces {
            next.extend(split_into_eigenspaces(l, space));
        }
        if next.is_empty() {
            return None;
        }
        spaces = next;
    }
    for space in &spaces {
        if let Some(v) = space.first() {
            let mut form = Poly::zero(nv);
            for j in 0..nv {
                form = &form + &Poly::var(nv, j).scale(&v[j]);
            }
            if let Some(eigen) = verified_eigenform(d, &form) {
                return Some(ZnWitness {
                    form,
                    eigenvalues: eigen,
                });
            }
        }
    }
    None
}

/// Splits an invariant subspace into the rational eigenspaces of `l`
/// restricted to it. Spaces where the restriction fails to solve or has no
/// rational eigenvalue contribute nothing.
fn split_into_eigenspaces(l: &RatMatrix, space: &[Vec<Rat>]) -> Vec<Vec<Vec<Rat>>> {
    let nv = l.ncols();
    let dim = space.len();
    if dim == 0 {
        return vec![];
    }
    let mut cols: Vec<Vec<Rat>> = Vec::new();
    for b in space {
        let image = l.mul_vec(b);
        match coordinates_in_span(space, &image, nv) {
            Some(c) => cols.push(c),
            None => return vec![],
        }
    }
    let restricted = RatMatrix::from_rows(
        (0..dim)
            .map(|r| (0..dim).map(|c| cols[c][r].clone()).collect())
            .collect(),
    );
    // characteristic polynomial det(xI - L) by interpolation
    let pts: Vec<(Rat, Rat)> = (0..=dim as i64)
        .map(|k| {
            let x = rat_int(k);
            let mut m = RatMatrix::zero(dim, dim);
            for i in 0..dim {
                for j in 0..dim {
                    *m.at_mut(i, j) = if i == j {
                        &x - restricted.at(i, j)
                    } else {
                        -restricted.at(i, j).clone()
                    };
                }
            }
            (x, m.det())
        })
        .collect();
    let charpoly = crate::univar::lagrange_interpolate(&pts);
    let Ok(eigenvalues) = rational_roots(&charpoly) else {
        return vec![];
    };
    let mut out = Vec::new();
    for lambda in eigenvalues {
        let mut shifted = restricted.clone();
        for i in 0..dim {
            *shifted.at_mut(i, i) -= &lambda;
        }
        let null = shifted.nullspace();
        if null.is_empty() {
            continue;
        }
        let vectors: Vec<Vec<Rat>> = null
            .iter()
            .map(|c| {
                let mut v = vec![Rat::zero(); nv];
                for (ck, b) in c.iter().zip(space) {
                    for j in 0..nv {
                        let t = ck * &b[j];
                        v[j] += t;
                    }
                }
                v
            })
            .collect();
        out.push(vectors);
    }
    out
}

fn coordinates_in_span(space: &[Vec<Rat>], target: &[Rat], nv: usize) -> Option<Vec<Rat>> {
    let rows: Vec<Vec<Rat>> = (0..nv)
        .map(|k| {
            let mut row: Vec<Rat> = space.iter().map(|b| b[k].clone()).collect();
            row.push(target[k].clone());
            row
        })
        .collect();
    let m = RatMatrix::from_rows(rows);
    for v in m.nullspace() {
        let last = v.last().unwrap();
        if !last.is_zero() {
            let scale = -last.clone().recip();
            return Some(v[..v.len() - 1].iter().map(|c| c * &scale).collect());
        }
    }
    None
}

/// Decides whether the base ring has no proper nonzero σ-invariant ideals.
pub fn zn_simplicity(d: &TgwDatum) -> ZnVerdict {
    if d.nvars() == 0 {
        return Verdict::Yes(ZnCertificate::FieldBase);
    }
    if d.family == Family::Translation {
        let shifts: Vec<Vec<Rat>> = d
            .sigma
            .iter()
            .map(|s| s.translation_vector().expect("validated translation family"))
            .collect();
        let rank = RatMatrix::from_rows_sized(shifts.clone(), d.nvars()).rank();
        if rank == d.nvars() {
            return Verdict::Yes(ZnCertificate::TranslationsSpan);
        }
        // deficient span: a functional vanishing on every shift vector gives
        // a fixed nonconstant linear form
        for phi in RatMatrix::from_rows_sized(shifts, d.nvars()).nullspace() {
            let mut form = Poly::zero(d.nvars());
            for j in 0..d.nvars() {
                form = &form + &Poly::var(d.nvars(), j).scale(&phi[j]);
            }
            if let Some(eigen) = verified_eigenform(d, &form) {
                return Verdict::No(ZnWitness {
                    form,
                    eigenvalues: eigen,
                });
            }
        }
        return Verdict::Unknown(vec![
            "translation span is deficient but no fixed form was verified".to_string(),
        ]);
    }
    if let Some(w) = eigenform_search(d) {
        return Verdict::No(w);
    }
    Verdict::Unknown(vec![
        "no invariant-ideal decision rule applies to this family".to_string(),
    ])
}

// ---------------------------------------------------------------------------
// Center containment
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub enum CenterCertificate {
    /// K = 0: the centralizer of R is R itself, and the center sits inside.
    TrivialKernel,
    /// The commutation-scalar lattice meets K only in 0.
    TorusLattice { scalars: Vec<Vec<Rat>> },
}

#[derive(Clone, Debug)]
pub struct CenterWitness {
    pub degree: Vec<i64>,
    pub element: Element,
    pub rule: &'static str,
}

pub type CenterVerdict = Verdict<CenterCertificate, CenterWitness>;

impl std::fmt::Display for CenterCertificate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CenterCertificate::TrivialKernel => write!(f, "trivial grading kernel"),
            CenterCertificate::TorusLattice { scalars } => {
                let rows: Vec<String> = scalars
                    .iter()
                    .map(|row| {
                        let inner: Vec<String> = row.iter().map(|r| r.to_string()).collect();
                        format!("[{}]", inner.join(", "))
                    })
                    .collect();
                write!(f, "commutation-scalar lattice meets the kernel only in 0; scalars [{}]", rows.join(", "))
            }
        }
    }
}

fn is_gwa(d: &TgwDatum) -> bool {
    let n = d.rank();
    let mu_trivial = (0..n).all(|i| (0..n).all(|j| d.mu[i][j].is_one()));
    mu_trivial
        && (0..n).all(|i| (0..n).all(|j| i == j || d.sigma[i].apply(&d.t[j]) == d.t[j]))
}

fn canonical_word_of_degree(g: &[i64]) -> RedWord {
    let mut y = Vec::new();
    let mut x = Vec::new();
    for (i, &gi) in g.iter().enumerate() {
        if gi < 0 {
            y.extend(std::iter::repeat(i).take((-gi) as usize));
        } else {
            x.extend(std::iter::repeat(i).take(gi as usize));
        }
    }
    RedWord { y, x }
}

/// Commutation scalar λ with w·X_i = λ·(X_i·w) in the quotient, computed as
/// a γ-ratio against a fixed test monomial. Needs a scalar base ring with
/// invertible t so that both pairings are nonzero rationals.
fn commutation_scalar(alg: &Algebra, w: &RedWord, i: usize) -> Result<Rat, Error> {
    let welem = Element::monomial(alg.rank(), Poly::one(alg.nvars()), w.clone());
    let xi = alg.generator(Gen::X, i);
    let left = alg.multiply(&welem, &xi)?;
    let right = alg.multiply(&xi, &welem)?;
    let mut deg = w.degree(alg.rank());
    deg[i] += 1;
    let neg: Vec<i64> = deg.iter().map(|&v| -v).collect();
    let test = alg
        .reduced_monomials_of_degree(&neg)?
        .into_iter()
        .next()
        .ok_or_else(|| Error::Internal("no test monomial for torus pairing".to_string()))?;
    let test = Element::monomial(alg.rank(), Poly::one(alg.nvars()), test);
    let num = alg
        .gamma(&left, &test)?
        .as_constant()
        .ok_or_else(|| Error::Internal("torus pairing produced a non-constant".to_string()))?;
    let den = alg
        .gamma(&right, &test)?
        .as_constant()
        .ok_or_else(|| Error::Internal("torus pairing produced a non-constant".to_string()))?;
    if den.is_zero() || num.is_zero() {
        return Err(Error::Internal(
            "torus pairing vanished on a monic monomial".to_string(),
        ));
    }
    Ok(num / den)
}

fn degrees_up_to(n: usize, cap: u32) -> Vec<Vec<i64>> {
    let r = cap as i64;
    let mut out = Vec::new();
    let mut g = vec![-r; n];
    loop {
        let total: i64 = g.iter().map(|&x| x.abs()).sum();
        if total > 0 && total <= r {
            out.push(g.clone());
        }
        let mut i = 0;
        while i < n {
            g[i] += 1;
            if g[i] <= r {
                break;
            }
            g[i] = -r;
            i += 1;
        }
        if i == n {
            break;
        }
    }
    // ascending total degree; positive vectors before their negatives
    out.sort_by(|a, b| {
        let ta: i64 = a.iter().map(|&x| x.abs()).sum();
        let tb: i64 = b.iter().map(|&x| x.abs()).sum();
        ta.cmp(&tb).then_with(|| b.cmp(a))
    });
    out
}

fn monomials_of_degree_leq(nvars: usize, cap: u32) -> Vec<Monomial> {
    let mut out = vec![Monomial::unit(nvars)];
    let mut frontier = out.clone();
    for _ in 0..cap {
        let mut next: Vec<Monomial> = Vec::new();
        for m in &frontier {
            for j in 0..nvars {
                let mut e = m.0.clone();
                e[j] += 1;
                next.push(Monomial(e));
            }
        }
        next.sort();
        next.dedup();
        out.extend(next.clone());
        frontier = next;
    }
    out.sort();
    out.dedup();
    out
}

/// Decides `Z(A) ⊆ R`. Rules in order: trivial kernel; the classical-GWA
/// escape witness for nonzero K; the exact commutation-scalar lattice over
/// a field base; then a bounded linear search in kernel degrees. An
/// uncertified kernel caps the answer at Unknown.
pub fn center_contained_in_r(
    alg: &Algebra,
    kernel: &KernelDescription,
    deg_cap: u32,
    coeff_cap: u32,
) -> Result<CenterVerdict, Error> {
    let d = alg.datum();
    if !kernel.certified {
        return Ok(Verdict::Unknown(vec![
            "kernel of the grading action is not certified".to_string(),
        ]));
    }
    if kernel.lattice.is_zero() {
        return Ok(Verdict::Yes(CenterCertificate::TrivialKernel));
    }
    if is_gwa(d) {
        let g = kernel.lattice.basis_i64().into_iter().next().unwrap();
        let w = canonical_word_of_degree(&g);
        let elem = Element::monomial(alg.rank(), Poly::one(alg.nvars()), w);
        debug_assert!(central_in(alg, &elem)?);
        return Ok(Verdict::No(CenterWitness {
            degree: g,
            element: elem,
            rule: "gwa-kernel-degree",
        }));
    }
    if alg.nvars() == 0 {
        let n = alg.rank();
        let mut scalars: Vec<Vec<Rat>> = Vec::new(); // scalars[i][j] = λ with X_j X_i = λ X_i X_j
        for i in 0..n {
            let mut row = Vec::new();
            for j in 0..n {
                let w = canonical_word_of_degree(&unit_vec(n, j));
                row.push(commutation_scalar(alg, &w, i)?);
            }
            scalars.push(row);
        }
        let mut solution = Lattice::full(n);
        for row in &scalars {
            let l = rational_mult_relations(row)?;
            solution = solution.intersect(&l);
        }
        let meet = solution.intersect(&kernel.lattice);
        if meet.is_zero() {
            return Ok(Verdict::Yes(CenterCertificate::TorusLattice { scalars }));
        }
        let g = meet.basis_i64().into_iter().next().unwrap();
        let w = canonical_word_of_degree(&g);
        let elem = Element::monomial(alg.rank(), Poly::one(alg.nvars()), w);
        debug_assert!(central_in(alg, &elem)?);
        return Ok(Verdict::No(CenterWitness {
            degree: g,
            element: elem,
            rule: "torus-lattice",
        }));
    }
    for g in degrees_up_to(alg.rank(), deg_cap) {
        if !kernel.lattice.contains(&g) {
            continue;
        }
        if let Some(elem) = central_element_search(alg, &g, coeff_cap)? {
            return Ok(Verdict::No(CenterWitness {
                degree: g,
                element: elem,
                rule: "bounded-linear-search",
            }));
        }
    }
    Ok(Verdict::Unknown(vec![format!(
        "bounded search exhausted (degree cap {}, coefficient cap {})",
        deg_cap, coeff_cap
    )]))
}

fn unit_vec(n: usize, j: usize) -> Vec<i64> {
    let mut v = vec![0i64; n];
    v[j] = 1;
    v
}

/// Exhaustive commutator check of `e` against every generator and variable.
pub fn central_in(alg: &Algebra, e: &Element) -> Result<bool, Error> {
    for i in 0..alg.rank() {
        for gen in [Gen::X, Gen::Y] {
            let g = alg.generator(gen, i);
            if !alg.is_zero(&alg.commutator(e, &g)?)? {
                return Ok(false);
            }
        }
    }
    for j in 0..alg.nvars() {
        let v = alg.ring_element(&Poly::var(alg.nvars(), j));
        if !alg.is_zero(&alg.commutator(e, &v)?)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Looks for a nonzero element of degree `g` with ring coefficients of
/// degree ≤ coeff_cap commuting with every X_i and Y_i. Vanishing of each
/// commutator in the quotient is a rational-linear condition on the unknown
/// coefficients, extracted through the zero-test functionals.
fn central_element_search(
    alg: &Algebra,
    g: &[i64],
    coeff_cap: u32,
) -> Result<Option<Element>, Error> {
    let redwords = alg.reduced_monomials_of_degree(g)?;
    let monos = monomials_of_degree_leq(alg.nvars(), coeff_cap);
    let basis: Vec<(RedWord, Monomial)> = redwords
        .iter()
        .flat_map(|w| monos.iter().map(move |m| (w.clone(), m.clone())))
        .collect();
    if basis.is_empty() {
        return Ok(None);
    }
    // The functional window must be wide enough for every coefficient that
    // can appear; commutators with generators raise ring degrees by at most
    // max deg t_i + max deg σ-twist, bounded here generously.
    let max_t_deg = alg
        .datum()
        .t
        .iter()
        .map(|t| t.total_degree().unwrap_or(0))
        .max()
        .unwrap_or(0);
    let word_len: u32 = g.iter().map(|&x| x.unsigned_abs() as u32).sum::<u32>() + 1;
    let window_cap = coeff_cap + (max_t_deg + 1) * (word_len + 1);
    let window = monomials_of_degree_leq(alg.nvars(), window_cap);
    let mut columns: Vec<Vec<Rat>> = Vec::new();
    for (w, m) in &basis {
        let elem = Element::monomial(
            alg.rank(),
            Poly::monomial(alg.nvars(), m.clone(), Rat::one()),
            w.clone(),
        );
        let mut col: Vec<Rat> = Vec::new();
        for i in 0..alg.rank() {
            for gen in [Gen::X, Gen::Y] {
                let gel = alg.generator(gen, i);
                let comm = alg.commutator(&elem, &gel)?;
                let mut target = g.to_vec();
                target[i] += match gen {
                    Gen::X => 1,
                    Gen::Y => -1,
                };
                let neg: Vec<i64> = target.iter().map(|&v| -v).collect();
                for test in alg.reduced_monomials_of_degree(&neg)? {
                    let telem = Element::monomial(alg.rank(), Poly::one(alg.nvars()), test);
                    let value = alg.gamma(&comm, &telem)?;
                    if value
                        .total_degree()
                        .map_or(false, |deg| deg > window_cap)
                    {
                        return Err(Error::Internal(
                            "central-search functional exceeded its window".to_string(),
                        ));
                    }
                    for mono in &window {
                        col.push(value.coeff(mono));
                    }
                }
            }
        }
        columns.push(col);
    }
    let nrows = columns.first().map_or(0, |c| c.len());
    if columns.iter().any(|c| c.len() != nrows) {
        return Err(Error::Internal(
            "inconsistent constraint-row layout in central search".to_string(),
        ));
    }
    let mat = RatMatrix::from_rows(
        (0..nrows)
            .map(|r| columns.iter().map(|c| c[r].clone()).collect())
            .collect(),
    );
    for sol in mat.nullspace() {
        // scale to a primitive integer vector with positive leading entry
        let mut lcm = BigInt::one();
        for v in &sol {
            if !v.is_zero() {
                lcm = lcm.lcm(v.denom());
            }
        }
        let mut scale = Rat::from_integer(lcm);
        if let Some(first) = sol.iter().find(|v| !v.is_zero()) {
            if first.is_negative() {
                scale = -scale;
            }
        }
        let mut elem = Element::zero(alg.rank(), alg.nvars());
        for ((w, m), v) in basis.iter().zip(&sol) {
            if v.is_zero() {
                continue;
            }
            elem.add_term(w.clone(), Poly::monomial(alg.nvars(), m.clone(), v * &scale));
        }
        if !alg.is_zero(&elem)? {
            debug_assert!(central_in(alg, &elem)?);
            return Ok(Some(elem));
        }
    }
    Ok(None)
}

// ---------------------------------------------------------------------------
// Centralizer commutativity
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub enum CentralizerCertificate {
    /// K has rank ≤ 1, which forces a commutative centralizer over a domain.
    RankAtMostOne,
    /// All cross-pair brackets vanished up to the stated multiple bound.
    BoundedBrackets { m_cap: u32 },
}

#[derive(Clone, Debug)]
pub struct BracketWitness {
    pub left: RedWord,
    pub right: RedWord,
    pub multiples: (i64, i64),
}

pub type CentralizerVerdict = Verdict<CentralizerCertificate, BracketWitness>;

impl std::fmt::Display for CentralizerCertificate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CentralizerCertificate::RankAtMostOne => write!(f, "kernel rank at most one"),
            CentralizerCertificate::BoundedBrackets { m_cap } => {
                write!(f, "all cross-pair brackets vanish for multiples up to {}", m_cap)
            }
        }
    }
}

/// Decides commutativity of the kernel-graded subalgebra (the centralizer
/// of R over a domain). Rank ≤ 1 certifies outright; otherwise brackets
/// `[A_{m·k_i}, A_{l·k_j}]` are checked on monic spanning monomials for
/// |m|, |l| ≤ m_cap — a certificate for the verified range.
pub fn centralizer_commutative(
    alg: &Algebra,
    kernel: &KernelDescription,
    m_cap: u32,
) -> Result<CentralizerVerdict, Error> {
    if !kernel.certified {
        return Ok(Verdict::Unknown(vec![
            "kernel of the grading action is not certified".to_string(),
        ]));
    }
    if kernel.lattice.rank() <= 1 {
        return Ok(Verdict::Yes(CentralizerCertificate::RankAtMostOne));
    }
    let basis = kernel.lattice.basis_i64();
    let cap = m_cap as i64;
    // X-side against Y-side multiples first: those brackets carry the
    // μ-twists, so failures surface in their most legible form.
    let mut rights: Vec<i64> = (1..=cap).collect();
    rights.extend((1..=cap).map(|m| -m));
    let mut lefts: Vec<i64> = (1..=cap).map(|l| -l).collect();
    lefts.extend(1..=cap);
    for i in 0..basis.len() {
        for j in 0..basis.len() {
            if i == j {
                continue;
            }
            for &m in &rights {
                for &l in &lefts {
                    let gw: Vec<i64> = basis[i].iter().map(|&x| x * m).collect();
                    let gv: Vec<i64> = basis[j].iter().map(|&x| x * l).collect();
                    for w in alg.reduced_monomials_of_degree(&gw)? {
                        for v in alg.reduced_monomials_of_degree(&gv)? {
                            let we =
                                Element::monomial(alg.rank(), Poly::one(alg.nvars()), w.clone());
                            let ve =
                                Element::monomial(alg.rank(), Poly::one(alg.nvars()), v.clone());
                            if !alg.is_zero(&alg.commutator(&we, &ve)?)? {
                                return Ok(Verdict::No(BracketWitness {
                                    left: w,
                                    right: v,
                                    multiples: (m, l),
                                }));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(Verdict::Yes(CentralizerCertificate::BoundedBrackets {
        m_cap,
    }))
}
