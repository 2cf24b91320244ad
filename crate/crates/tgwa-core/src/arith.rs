//! Arbitrary-precision rational arithmetic, exact linear algebra over the
//! rationals, integer lattices, and multiplicative-relation solving.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, Zero};

use crate::error::Error;

/// Exact rational scalar. Always stored reduced with a positive denominator.
pub type Rat = BigRational;

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// q^k for integer k (negative exponents invert; q must be nonzero for k < 0).
pub fn rat_pow(q: &Rat, k: i64) -> Rat {
    let mut base = if k < 0 { q.recip() } else { q.clone() };
    let mut e = k.unsigned_abs();
    let mut acc = Rat::one();
    while e > 0 {
        if e & 1 == 1 {
            acc *= &base;
        }
        base = &base * &base;
        e >>= 1;
    }
    acc
}

/// Parses "p" or "p/q" with an optional leading sign.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    let (num_str, den_str) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num_str.parse().ok()?;
    let den: BigInt = den_str.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rat::new(num, den))
}

// ---------------------------------------------------------------------------
// Rational matrices
// ---------------------------------------------------------------------------

/// Dense matrix of exact rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl RatMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let c = rows.first().map_or(0, |row| row.len());
        Self::from_rows_sized(rows, c)
    }

    /// Like `from_rows` but keeps the column count meaningful when the row
    /// list is empty.
    pub fn from_rows_sized(rows: Vec<Vec<Rat>>, cols: usize) -> Self {
        let r = rows.len();
        assert!(rows.iter().all(|row| row.len() == cols), "ragged matrix");
        RatMatrix {
            rows: r,
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Rat {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> Vec<Rat> {
        (0..self.cols).map(|j| self.at(i, j).clone()).collect()
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = Rat::zero();
                for j in 0..self.cols {
                    acc += self.at(i, j) * &v[j];
                }
                acc
            })
            .collect()
    }

    pub fn mul_mat(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = RatMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * other.at(k, j);
                    *out.at_mut(i, j) += prod;
                }
            }
        }
        out
    }

    /// Clears denominators row by row, returning the integer matrix.
    /// Row scaling by positive factors preserves rank and nullspace.
    fn to_integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| {
                let mut l = BigInt::one();
                for j in 0..self.cols {
                    l = l.lcm(self.at(i, j).denom());
                }
                (0..self.cols)
                    .map(|j| {
                        let v = self.at(i, j) * Rat::from_integer(l.clone());
                        debug_assert!(v.denom().is_one());
                        v.numer().clone()
                    })
                    .collect()
            })
            .collect()
    }

    /// Determinant by fraction-free (Bareiss) elimination on the
    /// denominator-cleared integer matrix.
    pub fn det(&self) -> Rat {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Rat::one();
        }
        let mut scale = Rat::one();
        let mut m: Vec<Vec<BigInt>> = (0..n)
            .map(|i| {
                let mut l = BigInt::one();
                for j in 0..n {
                    l = l.lcm(self.at(i, j).denom());
                }
                scale *= Rat::from_integer(l.clone());
                (0..n)
                    .map(|j| (self.at(i, j) * Rat::from_integer(l.clone())).numer().clone())
                    .collect()
            })
            .collect();
        let mut sign = 1i32;
        let mut prev = BigInt::one();
        for k in 0..n {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                    Some(r) => {
                        m.swap(k, r);
                        sign = -sign;
                    }
                    None => return Rat::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    let (q, rem) = num.div_rem(&prev);
                    debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                    m[i][j] = q;
                }
                m[i][k] = BigInt::zero();
            }
            prev = m[k][k].clone();
        }
        let det_scaled = Rat::from_integer(m[n - 1][n - 1].clone());
        let det = det_scaled / scale;
        if sign < 0 {
            -det
        } else {
            det
        }
    }

    /// Reduced row echelon form; returns (rref, pivot columns).
    fn rref(&self) -> (RatMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0usize;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.at(i, c).is_zero()) else {
                continue;
            };
            for j in 0..m.cols {
                let tmp = m.at(p, j).clone();
                *m.at_mut(p, j) = m.at(r, j).clone();
                *m.at_mut(r, j) = tmp;
            }
            let inv = m.at(r, c).recip();
            for j in c..m.cols {
                let v = m.at(r, j) * &inv;
                *m.at_mut(r, j) = v;
            }
            for i in 0..m.rows {
                if i != r && !m.at(i, c).is_zero() {
                    let f = m.at(i, c).clone();
                    for j in c..m.cols {
                        let v = m.at(i, j) - &(m.at(r, j) * &f);
                        *m.at_mut(i, j) = v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the rational nullspace, ordered by ascending free column.
    pub fn nullspace(&self) -> Vec<Vec<Rat>> {
        let (m, pivots) = self.rref();
        let mut basis = Vec::new();
        for f in 0..self.cols {
            if pivots.contains(&f) {
                continue;
            }
            let mut v = vec![Rat::zero(); self.cols];
            v[f] = Rat::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -m.at(r, f).clone();
            }
            basis.push(v);
        }
        basis
    }
}

// ---------------------------------------------------------------------------
// Integer lattices (subgroups of Z^n)
// ---------------------------------------------------------------------------

fn pivot_col(row: &[BigInt]) -> Option<usize> {
    row.iter().position(|v| !v.is_zero())
}

/// Row-style Hermite normal form of a generating set. Unimodular row
/// operations only, so the row span over Z is preserved. Zero rows dropped.
fn hnf_rows(mut rows: Vec<Vec<BigInt>>, width: usize) -> Vec<Vec<BigInt>> {
    let mut done = 0usize;
    for col in 0..width {
        let Some(p) = (done..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(done, p);
        // Clear this column below `done` via extended gcd combinations.
        for r in done + 1..rows.len() {
            if rows[r][col].is_zero() {
                continue;
            }
            let a = rows[done][col].clone();
            let b = rows[r][col].clone();
            let e = a.extended_gcd(&b);
            let (g, s, t) = (e.gcd, e.x, e.y);
            let ca = &a / &g;
            let cb = &b / &g;
            let new_done: Vec<BigInt> = (0..rows[0].len())
                .map(|j| &s * &rows[done][j] + &t * &rows[r][j])
                .collect();
            let new_r: Vec<BigInt> = (0..rows[0].len())
                .map(|j| &ca * &rows[r][j] - &cb * &rows[done][j])
                .collect();
            rows[done] = new_done;
            rows[r] = new_r;
        }
        if rows[done][col].is_negative() {
            for v in rows[done].iter_mut() {
                *v = -std::mem::take(v);
            }
        }
        // Reduce entries above the pivot into [0, pivot).
        let pivot = rows[done][col].clone();
        for r in 0..done {
            if rows[r][col].is_zero() {
                continue;
            }
            let q = rows[r][col].div_floor(&pivot);
            if q.is_zero() {
                continue;
            }
            for j in 0..rows[0].len() {
                let sub = &q * &rows[done][j];
                rows[r][j] -= sub;
            }
        }
        done += 1;
    }
    rows.retain(|row| row[..width].iter().any(|v| !v.is_zero()));
    rows
}

/// A subgroup of `Z^n`, stored as a canonical (Hermite-form) basis.
/// An empty basis encodes the zero lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    ambient: usize,
    basis: Vec<Vec<BigInt>>,
}

impl Lattice {
    pub fn zero(ambient: usize) -> Self {
        Lattice {
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        let basis = (0..ambient)
            .map(|i| {
                let mut v = vec![BigInt::zero(); ambient];
                v[i] = BigInt::one();
                v
            })
            .collect();
        Lattice { ambient, basis }
    }

    /// Canonical lattice generated by the given (possibly dependent) vectors.
    pub fn from_generators(ambient: usize, gens: Vec<Vec<BigInt>>) -> Self {
        assert!(gens.iter().all(|g| g.len() == ambient));
        let basis = hnf_rows(gens, ambient);
        Lattice { ambient, basis }
    }

    pub fn from_i64_generators(ambient: usize, gens: &[Vec<i64>]) -> Self {
        Self::from_generators(
            ambient,
            gens.iter()
                .map(|g| g.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    pub fn basis_i64(&self) -> Vec<Vec<i64>> {
        self.basis
            .iter()
            .map(|row| {
                row.iter()
                    .map(|v| i64::try_from(v).expect("lattice basis entry exceeds i64"))
                    .collect()
            })
            .collect()
    }

    /// Exact membership test by divisibility reduction against the HNF basis.
    pub fn contains(&self, v: &[i64]) -> bool {
        assert_eq!(v.len(), self.ambient);
        let mut w: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
        let mut row_iter = self.basis.iter().peekable();
        for col in 0..self.ambient {
            let has_pivot_here = row_iter
                .peek()
                .map_or(false, |r| pivot_col(r) == Some(col));
            if has_pivot_here {
                let row = row_iter.next().unwrap();
                let (q, rem) = w[col].div_rem(&row[col]);
                if !rem.is_zero() {
                    return false;
                }
                for j in 0..self.ambient {
                    let sub = &q * &row[j];
                    w[j] -= sub;
                }
            } else if !w[col].is_zero() {
                return false;
            }
        }
        w.iter().all(|x| x.is_zero())
    }

    /// Intersection of two lattices in the same ambient group.
    pub fn intersect(&self, other: &Lattice) -> Lattice {
        assert_eq!(self.ambient, other.ambient);
        if self.is_zero() || other.is_zero() {
            return Lattice::zero(self.ambient);
        }
        // Solve x·B1 = y·B2 over Z: the kernel of [B1^T | -B2^T].
        let k1 = self.basis.len();
        let k2 = other.basis.len();
        let rows: Vec<Vec<Rat>> = (0..self.ambient)
            .map(|j| {
                let mut row = Vec::with_capacity(k1 + k2);
                for b in &self.basis {
                    row.push(Rat::from_integer(b[j].clone()));
                }
                for b in &other.basis {
                    row.push(-Rat::from_integer(b[j].clone()));
                }
                row
            })
            .collect();
        let ker = integer_kernel(&RatMatrix::from_rows(rows));
        let gens: Vec<Vec<BigInt>> = ker
            .basis
            .iter()
            .map(|xy| {
                let mut g = vec![BigInt::zero(); self.ambient];
                for (x, b) in xy[..k1].iter().zip(&self.basis) {
                    for j in 0..self.ambient {
                        g[j] += x * &b[j];
                    }
                }
                g
            })
            .collect();
        Lattice::from_generators(self.ambient, gens)
    }
}

/// Basis of `{ g in Z^cols : M·g = 0 }`. Every integer solution is an
/// integer combination of the returned basis.
pub fn integer_kernel(m: &RatMatrix) -> Lattice {
    let cols = m.ncols();
    if m.nrows() == 0 {
        return Lattice::full(cols);
    }
    let int_rows = m.to_integer_rows();
    let r = int_rows.len();
    // Rows of the work matrix: [column j of M | e_j]. Unimodular row
    // operations keep the right block a transform of the identity; rows whose
    // left block vanishes record integer kernel vectors.
    let work: Vec<Vec<BigInt>> = (0..cols)
        .map(|j| {
            let mut row: Vec<BigInt> = (0..r).map(|i| int_rows[i][j].clone()).collect();
            let mut unit = vec![BigInt::zero(); cols];
            unit[j] = BigInt::one();
            row.extend(unit);
            row
        })
        .collect();
    let reduced = hnf_on_prefix(work, r);
    let gens: Vec<Vec<BigInt>> = reduced
        .into_iter()
        .filter(|row| row[..r].iter().all(|v| v.is_zero()))
        .map(|row| row[r..].to_vec())
        .collect();
    Lattice::from_generators(cols, gens)
}

/// HNF elimination restricted to the first `prefix` columns; the trailing
/// columns ride along under the same unimodular row operations.
fn hnf_on_prefix(mut rows: Vec<Vec<BigInt>>, prefix: usize) -> Vec<Vec<BigInt>> {
    let mut done = 0usize;
    for col in 0..prefix {
        let Some(p) = (done..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(done, p);
        for r in done + 1..rows.len() {
            if rows[r][col].is_zero() {
                continue;
            }
            let a = rows[done][col].clone();
            let b = rows[r][col].clone();
            let e = a.extended_gcd(&b);
            let (g, s, t) = (e.gcd, e.x, e.y);
            let ca = &a / &g;
            let cb = &b / &g;
            let width = rows[0].len();
            let new_done: Vec<BigInt> = (0..width)
                .map(|j| &s * &rows[done][j] + &t * &rows[r][j])
                .collect();
            let new_r: Vec<BigInt> = (0..width)
                .map(|j| &ca * &rows[r][j] - &cb * &rows[done][j])
                .collect();
            rows[done] = new_done;
            rows[r] = new_r;
        }
        done += 1;
    }
    rows
}

// ---------------------------------------------------------------------------
// Multiplicative relations among rationals
// ---------------------------------------------------------------------------

fn factorize(mut n: BigInt) -> Vec<(BigInt, u32)> {
    assert!(n.is_positive());
    let mut out = Vec::new();
    let mut d = BigInt::from(2);
    while &d * &d <= n {
        let mut e = 0u32;
        while (&n % &d).is_zero() {
            n /= &d;
            e += 1;
        }
        if e > 0 {
            out.push((d.clone(), e));
        }
        d += if d == BigInt::from(2) { 1 } else { 2 };
    }
    if n > BigInt::one() {
        out.push((n, 1));
    }
    out
}

/// Basis of `{ g in Z^m : Π values_j^{g_j} = 1 }`, computed exactly by
/// factoring each value into a sign bit and a prime-exponent vector and
/// solving the combined integer/parity system.
pub fn rational_mult_relations(values: &[Rat]) -> Result<Lattice, Error> {
    if values.iter().any(|v| v.is_zero()) {
        return Err(Error::ZeroValue);
    }
    let m = values.len();
    let mut primes: Vec<BigInt> = Vec::new();
    let mut exps: Vec<Vec<i64>> = Vec::new(); // exps[j][p-index]
    let mut signs: Vec<i64> = Vec::new();
    for v in values {
        signs.push(if v.is_negative() { 1 } else { 0 });
        let mut e: Vec<i64> = vec![0; primes.len()];
        for (p, k) in factorize(v.numer().abs()) {
            let idx = match primes.iter().position(|q| *q == p) {
                Some(i) => i,
                None => {
                    primes.push(p);
                    for other in exps.iter_mut() {
                        other.push(0);
                    }
                    e.push(0);
                    primes.len() - 1
                }
            };
            e[idx] += i64::from(k);
        }
        for (p, k) in factorize(v.denom().clone()) {
            let idx = match primes.iter().position(|q| *q == p) {
                Some(i) => i,
                None => {
                    primes.push(p);
                    for other in exps.iter_mut() {
                        other.push(0);
                    }
                    e.push(0);
                    primes.len() - 1
                }
            };
            e[idx] -= i64::from(k);
        }
        exps.push(e);
    }
    // Unknowns (g_1..g_m, h): rows demand Σ g_j·e_p(v_j) = 0 per prime, and
    // Σ g_j·sign_j - 2h = 0 so the sign product works out to +1.
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for pi in 0..primes.len() {
        let mut row: Vec<Rat> = (0..m).map(|j| rat_int(exps[j][pi])).collect();
        row.push(Rat::zero());
        rows.push(row);
    }
    let mut sign_row: Vec<Rat> = signs.iter().map(|&s| rat_int(s)).collect();
    sign_row.push(rat_int(-2));
    rows.push(sign_row);
    let ker = integer_kernel(&RatMatrix::from_rows(rows));
    let gens = ker
        .basis()
        .iter()
        .map(|v| v[..m].to_vec())
        .collect::<Vec<_>>();
    Ok(Lattice::from_generators(m, gens))
}

// ---------------------------------------------------------------------------
// Rational roots of a univariate polynomial
// ---------------------------------------------------------------------------

fn positive_divisors(n: &BigInt) -> Vec<BigInt> {
    let mut divs = vec![BigInt::one()];
    for (p, e) in factorize(n.abs()) {
        let mut next = Vec::new();
        for d in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        divs = next;
    }
    divs.sort();
    divs.dedup();
    divs
}

fn eval_rat_poly(coeffs: &[Rat], x: &Rat) -> Rat {
    let mut acc = Rat::zero();
    for c in coeffs.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// Exactly the rational roots of the polynomial with ascending coefficients
/// `coeffs` (multiplicity ignored), via the rational-root theorem applied to
/// the primitive integer form. Result sorted ascending.
pub fn rational_roots(coeffs: &[Rat]) -> Result<Vec<Rat>, Error> {
    let mut c: Vec<Rat> = coeffs.to_vec();
    while c.last().map_or(false, |v| v.is_zero()) {
        c.pop();
    }
    if c.is_empty() {
        return Err(Error::ZeroPolynomial);
    }
    let mut roots: Vec<Rat> = Vec::new();
    let low = c.iter().position(|v| !v.is_zero()).unwrap();
    if low > 0 {
        roots.push(Rat::zero());
        c.drain(..low);
    }
    if c.len() > 1 {
        let mut l = BigInt::one();
        for v in &c {
            l = l.lcm(v.denom());
        }
        let ints: Vec<BigInt> = c
            .iter()
            .map(|v| (v * Rat::from_integer(l.clone())).numer().clone())
            .collect();
        let a0 = &ints[0];
        let lead = ints.last().unwrap();
        for p in positive_divisors(a0) {
            for q in &positive_divisors(lead) {
                for sign in [1i32, -1] {
                    let cand = Rat::new(if sign > 0 { p.clone() } else { -p.clone() }, q.clone());
                    if eval_rat_poly(&c, &cand).is_zero() {
                        roots.push(cand);
                    }
                }
            }
        }
    }
    roots.sort();
    roots.dedup();
    Ok(roots)
}

// ---------------------------------------------------------------------------
// Incremental echelon form over the rationals
// ---------------------------------------------------------------------------

/// Incrementally maintained reduced echelon basis; used for exact rank
/// growth and membership tests on streams of coefficient vectors.
#[derive(Clone, Debug, Default)]
pub struct RatEchelon {
    rows: Vec<Vec<Rat>>, // each normalized to pivot 1, sorted by pivot column
}

impl RatEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the current basis.
    pub fn reduce(&self, mut v: Vec<Rat>) -> Vec<Rat> {
        for row in &self.rows {
            let p = row.iter().position(|x| !x.is_zero()).unwrap();
            if p < v.len() && !v[p].is_zero() {
                let f = v[p].clone();
                for (j, rv) in row.iter().enumerate() {
                    let sub = rv * &f;
                    v[j] -= sub;
                }
            }
        }
        v
    }

    pub fn is_member(&self, v: Vec<Rat>) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Inserts `v`; returns false when it was already in the span.
    pub fn insert(&mut self, v: Vec<Rat>) -> bool {
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].recip();
        for x in r.iter_mut() {
            *x *= &inv;
        }
        let pos = self
            .rows
            .iter()
            .position(|row| row.iter().position(|x| !x.is_zero()).unwrap() > p)
            .unwrap_or(self.rows.len());
        self.rows.insert(pos, r);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn lat(ambient: usize, rows: &[&[i64]]) -> Lattice {
        Lattice::from_i64_generators(ambient, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    #[test]
    fn kernel_of_identity_is_zero() {
        let m = RatMatrix::identity(2);
        assert!(integer_kernel(&m).is_zero());
    }

    #[test]
    fn kernel_of_difference_row() {
        let m = RatMatrix::from_rows(vec![vec![rat_int(1), rat_int(-1)]]);
        let k = integer_kernel(&m);
        assert_eq!(k, lat(2, &[&[1, 1]]));
    }

    #[test]
    fn kernel_with_scaling_row_matches_bruteforce() {
        let m = RatMatrix::from_rows(vec![vec![rat_int(2), rat_int(-1), rat_int(0)]]);
        let k = integer_kernel(&m);
        // Brute-force oracle: all integer vectors in [-4,4]^3 with M·g = 0
        // must be members, and every basis vector must satisfy M·g = 0.
        for g in k.basis_i64() {
            assert_eq!(2 * g[0] - g[1], 0);
        }
        for a in -4i64..=4 {
            for b in -4i64..=4 {
                for c in -4i64..=4 {
                    let solves = 2 * a - b == 0;
                    if solves {
                        assert!(k.contains(&[a, b, c]), "missing {:?}", (a, b, c));
                    }
                }
            }
        }
        assert_eq!(k.rank(), 2);
        assert!(k.contains(&[1, 2, 0]));
        assert!(k.contains(&[0, 0, 1]));
        assert!(!k.contains(&[1, 1, 0]));
    }

    #[test]
    fn kernel_generates_all_small_solutions_randomized() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..40 {
            let rows = rng.gen_range(1..=3);
            let cols = rng.gen_range(1..=4);
            let m = RatMatrix::from_rows(
                (0..rows)
                    .map(|_| (0..cols).map(|_| rat_int(rng.gen_range(-3..=3))).collect())
                    .collect(),
            );
            let k = integer_kernel(&m);
            for b in k.basis() {
                let v: Vec<Rat> = b.iter().map(|x| Rat::from_integer(x.clone())).collect();
                assert!(m.mul_vec(&v).iter().all(|x| x.is_zero()));
            }
            // every small solution is generated
            let mut idx = vec![0i64; cols];
            loop {
                let solves = {
                    let v: Vec<Rat> = idx.iter().map(|&x| rat_int(x)).collect();
                    m.mul_vec(&v).iter().all(|x| x.is_zero())
                };
                if solves {
                    assert!(k.contains(&idx), "{:?} not generated", idx);
                }
                let mut i = 0;
                loop {
                    if i == cols {
                        break;
                    }
                    idx[i] += 1;
                    if idx[i] <= 3 {
                        break;
                    }
                    idx[i] = -3;
                    i += 1;
                }
                if i == cols {
                    break;
                }
            }
        }
    }

    #[test]
    fn mult_relations_two_and_half() {
        let k = rational_mult_relations(&[rat_int(2), rat(1, 2)]).unwrap();
        assert_eq!(k, lat(2, &[&[1, 1]]));
    }

    #[test]
    fn mult_relations_of_one_is_everything() {
        let k = rational_mult_relations(&[rat_int(1)]).unwrap();
        assert_eq!(k, lat(1, &[&[1]]));
    }

    #[test]
    fn mult_relations_coprime_is_zero() {
        let k = rational_mult_relations(&[rat_int(2), rat_int(3)]).unwrap();
        assert!(k.is_zero());
    }

    #[test]
    fn mult_relations_sign_needs_even_exponent() {
        let k = rational_mult_relations(&[rat_int(-1)]).unwrap();
        assert_eq!(k, lat(1, &[&[2]]));
        let k2 = rational_mult_relations(&[rat_int(-2), rat(-1, 2)]).unwrap();
        // (-2)^a(-1/2)^b = 1 needs a = b and a + b even.
        assert!(k2.contains(&[1, 1]));
        assert!(!k2.contains(&[1, 0]));
    }

    #[test]
    fn mult_relations_rejects_zero() {
        assert_eq!(
            rational_mult_relations(&[rat_int(0)]).unwrap_err(),
            Error::ZeroValue
        );
    }

    #[test]
    fn mult_relations_basis_products_are_one() {
        let vals = [rat(4, 9), rat(2, 3), rat_int(6), rat(-1, 2)];
        let k = rational_mult_relations(&vals).unwrap();
        for b in k.basis_i64() {
            let mut prod = Rat::one();
            for (v, &e) in vals.iter().zip(&b) {
                prod *= rat_pow(v, e);
            }
            assert!(prod.is_one(), "basis vector {:?} gives {}", b, prod);
        }
    }

    #[test]
    fn roots_of_u2_minus_u() {
        let r = rational_roots(&[rat_int(0), rat_int(-1), rat_int(1)]).unwrap();
        assert_eq!(r, vec![rat_int(0), rat_int(1)]);
    }

    #[test]
    fn roots_linear() {
        let r = rational_roots(&[rat_int(-3), rat_int(2)]).unwrap();
        assert_eq!(r, vec![rat(3, 2)]);
    }

    #[test]
    fn roots_irreducible_quadratic_empty() {
        let r = rational_roots(&[rat_int(1), rat_int(0), rat_int(1)]).unwrap();
        assert!(r.is_empty());
    }

    #[test]
    fn roots_zero_poly_rejected() {
        assert_eq!(rational_roots(&[]).unwrap_err(), Error::ZeroPolynomial);
        assert_eq!(
            rational_roots(&[rat_int(0)]).unwrap_err(),
            Error::ZeroPolynomial
        );
    }

    #[test]
    fn det_and_rank_bareiss() {
        let m = RatMatrix::from_rows(vec![
            vec![rat(1, 2), rat_int(2)],
            vec![rat_int(3), rat_int(4)],
        ]);
        assert_eq!(m.det(), rat_int(-4));
        assert_eq!(m.rank(), 2);
        let singular = RatMatrix::from_rows(vec![
            vec![rat_int(1), rat_int(2)],
            vec![rat_int(2), rat_int(4)],
        ]);
        assert!(singular.det().is_zero());
        assert_eq!(singular.rank(), 1);
        assert_eq!(singular.nullspace(), vec![vec![rat_int(-2), rat_int(1)]]);
    }

    #[test]
    fn lattice_intersection() {
        let a = lat(2, &[&[1, 0], &[0, 2]]);
        let b = lat(2, &[&[0, 1], &[3, 0]]);
        let c = a.intersect(&b);
        assert!(c.contains(&[3, 0]));
        assert!(c.contains(&[0, 2]));
        assert!(!c.contains(&[1, 0]));
        assert!(!c.contains(&[0, 1]));
    }

    #[test]
    fn parse_rat_forms() {
        assert_eq!(parse_rat("3"), Some(rat_int(3)));
        assert_eq!(parse_rat("-3/6"), Some(rat(-1, 2)));
        assert_eq!(parse_rat("+2/4"), Some(rat(1, 2)));
        assert_eq!(parse_rat("1/0"), None);
        assert_eq!(parse_rat("x"), None);
    }

    fn small_rat() -> impl Strategy<Value = Rat> {
        (-20i64..=20, 1i64..=12).prop_map(|(n, d)| rat(n, d))
    }

    proptest! {
        #[test]
        fn rational_ring_laws(a in small_rat(), b in small_rat(), c in small_rat()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!((&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!((&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &a * &b + &a * &c);
        }

        #[test]
        fn rat_pow_is_multiplicative(q in small_rat(), e1 in -6i64..=6, e2 in -6i64..=6) {
            prop_assume!(!q.is_zero());
            prop_assert_eq!(rat_pow(&q, e1 + e2), rat_pow(&q, e1) * rat_pow(&q, e2));
        }
    }
}
