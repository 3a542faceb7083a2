//! Exact integer and rational linear algebra: Hermite and Smith normal forms,
//! lattice spans, sublattice indices, and Gale duals (cokernel presentations).
//!
//! Everything here is arbitrary precision. There is no floating point anywhere
//! in this crate: exhaustiveness and unimodularity verdicts are exact decisions
//! and rounding would invalidate their witnesses.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub type IntVec = Vec<BigInt>;
pub type RatVec = Vec<BigRational>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix columns do not span the ambient space (rank {rank} < {dim})")]
    NotFullRank { rank: usize, dim: usize },
}

/// Dense integer matrix, row-major, arbitrary precision entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: &[IntVec]) -> Self {
        let ncols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged rows");
        IntMatrix {
            rows: rows.len(),
            cols: ncols,
            data: rows.iter().flatten().cloned().collect(),
        }
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        let v: Vec<IntVec> = rows
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        IntMatrix::from_rows(&v)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<IntVec> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn col(&self, j: usize) -> IntVec {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let p = a * &other[(k, j)];
                    out[(i, j)] += p;
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self[(i, j)].clone();
            self[(i, j)] = v;
        }
    }

    /// row[to] += f * row[from]
    fn add_multiple(&mut self, to: usize, from: usize, f: &BigInt) {
        if f.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let p = f * &self[(from, j)];
            self[(to, j)] += p;
        }
    }

    /// Replace rows (a, b) by (s*a + t*b, u*a + v*b).
    fn combine_rows(&mut self, a: usize, b: usize, s: &BigInt, t: &BigInt, u: &BigInt, v: &BigInt) {
        for j in 0..self.cols {
            let x = self[(a, j)].clone();
            let y = self[(b, j)].clone();
            self[(a, j)] = s * &x + t * &y;
            self[(b, j)] = u * &x + v * &y;
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// col[to] += f * col[from]
    fn add_col_multiple(&mut self, to: usize, from: usize, f: &BigInt) {
        if f.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let p = f * &self[(i, from)];
            self[(i, to)] += p;
        }
    }

    /// Replace cols (a, b) by (s*a + t*b, u*a + v*b).
    fn combine_cols(&mut self, a: usize, b: usize, s: &BigInt, t: &BigInt, u: &BigInt, v: &BigInt) {
        for i in 0..self.rows {
            let x = self[(i, a)].clone();
            let y = self[(i, b)].clone();
            self[(i, a)] = s * &x + t * &y;
            self[(i, b)] = u * &x + v * &y;
        }
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[(k, k)].is_zero() {
                let pivot = (k + 1..n).find(|&i| !m[(i, k)].is_zero());
                match pivot {
                    Some(p) => {
                        m.swap_rows(k, p);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[(k, k)] * &m[(i, j)] - &m[(i, k)] * &m[(k, j)];
                    m[(i, j)] = num.checked_div(&prev).expect("bareiss divisibility");
                }
                m[(i, k)] = BigInt::zero();
            }
            prev = m[(k, k)].clone();
        }
        sign * m[(n - 1, n - 1)].clone()
    }

    pub fn rank(&self) -> usize {
        let (h, _) = hermite_normal_form(self);
        (0..h.rows()).filter(|&i| !h.row(i).iter().all(|x| x.is_zero())).count()
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

/// Row-style Hermite normal form: returns (H, U) with H = U * A, det(U) = ±1,
/// H in row echelon form with positive pivots and the entries above each pivot
/// reduced into [0, pivot). Zero rows are collected at the bottom.
pub fn hermite_normal_form(a: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = a.clone();
    let mut u = IntMatrix::identity(a.rows());
    let (m, n) = (a.rows(), a.cols());
    let mut r = 0usize;
    for c in 0..n {
        if r == m {
            break;
        }
        // Pull a nonzero entry into the pivot row.
        if h[(r, c)].is_zero() {
            if let Some(p) = (r + 1..m).find(|&i| !h[(i, c)].is_zero()) {
                h.swap_rows(r, p);
                u.swap_rows(r, p);
            } else {
                continue;
            }
        }
        // Clear below the pivot with unimodular 2x2 combinations. When the
        // pivot already divides the entry, plain elimination keeps the pivot
        // row untouched.
        for i in r + 1..m {
            if h[(i, c)].is_zero() {
                continue;
            }
            let x = h[(r, c)].clone();
            let y = h[(i, c)].clone();
            if (&y % &x).is_zero() {
                let f = -(&y / &x);
                h.add_multiple(i, r, &f);
                u.add_multiple(i, r, &f);
                continue;
            }
            let e = x.extended_gcd(&y);
            let (g, s, t) = (e.gcd, e.x, e.y);
            let xu = -(&y / &g);
            let xv = &x / &g;
            h.combine_rows(r, i, &s, &t, &xu, &xv);
            u.combine_rows(r, i, &s, &t, &xu, &xv);
        }
        if h[(r, c)].is_negative() {
            h.negate_row(r);
            u.negate_row(r);
        }
        // Reduce entries above the pivot into [0, pivot).
        let pivot = h[(r, c)].clone();
        for i in 0..r {
            let f = -h[(i, c)].div_floor(&pivot);
            h.add_multiple(i, r, &f);
            u.add_multiple(i, r, &f);
        }
        r += 1;
    }
    (h, u)
}

/// Smith normal form: returns (S, U, V) with S = U * A * V diagonal,
/// d_1 | d_2 | ..., all d_i >= 0, and U, V unimodular.
pub fn smith_normal_form(a: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let mut s = a.clone();
    let mut u = IntMatrix::identity(a.rows());
    let mut v = IntMatrix::identity(a.cols());
    let (m, n) = (a.rows(), a.cols());
    let mut t = 0usize;
    while t < m && t < n {
        // Find a nonzero entry of smallest absolute value in the trailing block.
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if s[(i, j)].is_zero() {
                    continue;
                }
                match best {
                    None => best = Some((i, j)),
                    Some((bi, bj)) => {
                        if s[(i, j)].abs() < s[(bi, bj)].abs() {
                            best = Some((i, j));
                        }
                    }
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        s.swap_rows(t, pi);
        u.swap_rows(t, pi);
        s.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            // Clear the pivot column. Plain elimination when the pivot
            // divides keeps the pivot row intact; the gcd combination is
            // reserved for the case where the pivot strictly shrinks, which
            // bounds the number of passes.
            for i in t + 1..m {
                if s[(i, t)].is_zero() {
                    continue;
                }
                let x = s[(t, t)].clone();
                let y = s[(i, t)].clone();
                if (&y % &x).is_zero() {
                    let f = -(&y / &x);
                    s.add_multiple(i, t, &f);
                    u.add_multiple(i, t, &f);
                    continue;
                }
                let e = x.extended_gcd(&y);
                let (g, cs, ct) = (e.gcd, e.x, e.y);
                let cu = -(&y / &g);
                let cv = &x / &g;
                s.combine_rows(t, i, &cs, &ct, &cu, &cv);
                u.combine_rows(t, i, &cs, &ct, &cu, &cv);
            }
            // Clear the pivot row.
            for j in t + 1..n {
                if s[(t, j)].is_zero() {
                    continue;
                }
                let x = s[(t, t)].clone();
                let y = s[(t, j)].clone();
                if (&y % &x).is_zero() {
                    let f = -(&y / &x);
                    s.add_col_multiple(j, t, &f);
                    v.add_col_multiple(j, t, &f);
                    continue;
                }
                let e = x.extended_gcd(&y);
                let (g, cs, ct) = (e.gcd, e.x, e.y);
                let cu = -(&y / &g);
                let cv = &x / &g;
                s.combine_cols(t, j, &cs, &ct, &cu, &cv);
                v.combine_cols(t, j, &cs, &ct, &cu, &cv);
            }
            let col_clear = (t + 1..m).all(|i| s[(i, t)].is_zero());
            let row_clear = (t + 1..n).all(|j| s[(t, j)].is_zero());
            if !col_clear || !row_clear {
                continue;
            }
            // Enforce divisibility of the trailing block by the pivot.
            let pivot = s[(t, t)].clone();
            let offender = (t + 1..m)
                .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !(&s[(i, j)] % &pivot).is_zero());
            match offender {
                Some((i, _)) => {
                    s.add_multiple(t, i, &BigInt::one());
                    u.add_multiple(t, i, &BigInt::one());
                }
                None => break,
            }
        }
        if s[(t, t)].is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    (s, u, v)
}

/// Basis (HNF rows, zero rows dropped) of the integer span of the given vectors.
/// The empty input yields the 0x0 matrix.
pub fn span_basis(vectors: &[IntVec]) -> IntMatrix {
    if vectors.is_empty() {
        return IntMatrix::zero(0, 0);
    }
    let (h, _) = hermite_normal_form(&IntMatrix::from_rows(vectors));
    let nonzero: Vec<IntVec> = (0..h.rows())
        .map(|i| h.row(i).to_vec())
        .filter(|r| !r.iter().all(|x| x.is_zero()))
        .collect();
    if nonzero.is_empty() {
        IntMatrix::zero(0, vectors[0].len())
    } else {
        IntMatrix::from_rows(&nonzero)
    }
}

/// Outcome of comparing the lattice spanned by `sub` against the one spanned
/// by `ambient`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SublatticeIndex {
    /// Sub spans a finite-index subgroup; 1 means the spans are equal.
    Index(BigInt),
    /// Contained, but of strictly smaller rank.
    RankDrop,
    /// Some sub vector is not in the integer span of the ambient vectors.
    NotContained,
}

/// Solve x * basis = target over the integers, where `basis` has linearly
/// independent rows in echelon (HNF) staircase order.
fn coords_in_basis(basis: &IntMatrix, target: &[BigInt]) -> Option<IntVec> {
    let k = basis.rows();
    let n = basis.cols();
    let mut rem: IntVec = target.to_vec();
    let mut coords = vec![BigInt::zero(); k];
    let mut col = 0usize;
    for i in 0..k {
        // pivot column of row i
        while col < n && basis[(i, col)].is_zero() {
            // a nonzero remainder left of the pivot can never be cleared
            if !rem[col].is_zero() {
                return None;
            }
            col += 1;
        }
        if col == n {
            break;
        }
        let (q, r) = rem[col].div_rem(&basis[(i, col)]);
        if !r.is_zero() {
            return None;
        }
        for j in col..n {
            let p = &q * &basis[(i, j)];
            rem[j] -= p;
        }
        coords[i] = q;
    }
    if rem.iter().all(|x| x.is_zero()) {
        Some(coords)
    } else {
        None
    }
}

/// Whether `v` lies in the integer span of the rows of `basis` (HNF rows).
pub fn in_span(basis: &IntMatrix, v: &[BigInt]) -> bool {
    if basis.rows() == 0 {
        return v.iter().all(|x| x.is_zero());
    }
    coords_in_basis(basis, v).is_some()
}

/// Compare the lattice generated by `sub` with the lattice generated by
/// `ambient`. The index, when finite, is the product of the Smith invariant
/// factors of the change-of-basis matrix.
pub fn sublattice_index(sub: &[IntVec], ambient: &[IntVec]) -> SublatticeIndex {
    let amb_basis = span_basis(ambient);
    for s in sub {
        if amb_basis.rows() == 0 {
            if !s.iter().all(|x| x.is_zero()) {
                return SublatticeIndex::NotContained;
            }
            continue;
        }
        if coords_in_basis(&amb_basis, s).is_none() {
            return SublatticeIndex::NotContained;
        }
    }
    let sub_basis = span_basis(sub);
    if sub_basis.rows() < amb_basis.rows() {
        return SublatticeIndex::RankDrop;
    }
    if amb_basis.rows() == 0 {
        return SublatticeIndex::Index(BigInt::one());
    }
    // Express the sub basis in ambient coordinates; the quotient order is the
    // product of the invariant factors of that square matrix.
    let coords: Vec<IntVec> = (0..sub_basis.rows())
        .map(|i| coords_in_basis(&amb_basis, sub_basis.row(i)).expect("checked containment"))
        .collect();
    let x = IntMatrix::from_rows(&coords);
    let (s, _, _) = smith_normal_form(&x);
    let mut idx = BigInt::one();
    for i in 0..s.rows().min(s.cols()) {
        idx *= &s[(i, i)];
    }
    SublatticeIndex::Index(idx)
}

/// Basis of the right kernel { x : A x = 0 }, as HNF rows (canonical).
/// The kernel of an integer matrix is always saturated.
pub fn kernel_basis(a: &IntMatrix) -> IntMatrix {
    let (h, u) = hermite_normal_form(&a.transpose());
    let mut rows: Vec<IntVec> = Vec::new();
    for i in 0..h.rows() {
        if h.row(i).iter().all(|x| x.is_zero()) {
            rows.push(u.row(i).to_vec());
        }
    }
    if rows.is_empty() {
        return IntMatrix::zero(0, a.cols());
    }
    span_basis(&rows)
}

/// Presentation of the cokernel of the dual map attached to an integer matrix
/// whose columns generate the target lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CokernelPresentation {
    pub free_rank: usize,
    /// Invariant factors >= 2, each dividing the next.
    pub torsion_factors: Vec<BigInt>,
    /// Integer matrix projecting Z^r onto the free cokernel coordinates;
    /// annihilates the image of the dual map exactly.
    pub projection: IntMatrix,
}

/// Gale dual of `beta` (an n x r matrix whose columns span Z^n rationally):
/// presents coker(beta^* : Z^n -> Z^r) via the Smith normal form of beta^*.
/// The projection rows are the HNF basis of { p : p * beta^* = 0 }, i.e. the
/// integer relations among the columns of beta.
pub fn gale_dual(beta: &IntMatrix) -> Result<CokernelPresentation, LatticeError> {
    let n = beta.rows();
    let r = beta.cols();
    let rank = beta.rank();
    if rank < n {
        return Err(LatticeError::NotFullRank { rank, dim: n });
    }
    let beta_star = beta.transpose(); // r x n
    let (s, _, _) = smith_normal_form(&beta_star);
    let mut torsion = Vec::new();
    for i in 0..s.rows().min(s.cols()) {
        let d = s[(i, i)].clone();
        if d > BigInt::one() {
            torsion.push(d);
        }
    }
    // p * beta^T = 0  <=>  beta * p^T = 0: the relations among the columns.
    let projection = kernel_basis(beta);
    debug_assert!(projection.mul(&beta_star).is_zero());
    Ok(CokernelPresentation {
        free_rank: r - rank,
        torsion_factors: torsion,
        projection,
    })
}

// ---------------------------------------------------------------------------
// Exact rational elimination.
// ---------------------------------------------------------------------------

/// One solution of A x = b over the rationals (free variables set to zero),
/// or None if inconsistent. Deterministic pivoting: first usable column, first
/// nonzero row.
#[allow(clippy::needless_range_loop)] // triangular elimination ranges
pub fn solve_rational(a: &[RatVec], b: &[BigRational]) -> Option<RatVec> {
    let m = a.len();
    assert_eq!(b.len(), m);
    let n = a.first().map_or(0, |r| r.len());
    let mut mat: Vec<RatVec> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut r = 0usize;
    for c in 0..n {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| !mat[i][c].is_zero()) else {
            continue;
        };
        mat.swap(r, p);
        let inv = mat[r][c].clone();
        for j in c..=n {
            mat[r][j] = &mat[r][j] / &inv;
        }
        for i in 0..m {
            if i == r || mat[i][c].is_zero() {
                continue;
            }
            let f = mat[i][c].clone();
            for j in c..=n {
                let t = &f * &mat[r][j];
                mat[i][j] = &mat[i][j] - &t;
            }
        }
        pivots.push((r, c));
        r += 1;
    }
    for row in mat.iter().skip(r) {
        if !row[n].is_zero() {
            return None;
        }
    }
    let mut x = vec![BigRational::zero(); n];
    for &(pr, pc) in &pivots {
        x[pc] = mat[pr][n].clone();
    }
    Some(x)
}

/// Basis of the rational null space { x : A x = 0 }. Deterministic.
#[allow(clippy::needless_range_loop)] // triangular elimination ranges
pub fn rational_kernel_basis(a: &[RatVec]) -> Vec<RatVec> {
    let m = a.len();
    let n = a.first().map_or(0, |r| r.len());
    if m == 0 {
        return (0..n)
            .map(|j| {
                let mut e = vec![BigRational::zero(); n];
                e[j] = BigRational::one();
                e
            })
            .collect();
    }
    let mut mat: Vec<RatVec> = a.to_vec();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0usize;
    for c in 0..n {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| !mat[i][c].is_zero()) else {
            continue;
        };
        mat.swap(r, p);
        let inv = mat[r][c].clone();
        for j in c..n {
            mat[r][j] = &mat[r][j] / &inv;
        }
        for i in 0..m {
            if i == r || mat[i][c].is_zero() {
                continue;
            }
            let f = mat[i][c].clone();
            for j in c..n {
                let t = &f * &mat[r][j];
                mat[i][j] = &mat[i][j] - &t;
            }
        }
        pivots.push(c);
        r += 1;
    }
    let mut basis = Vec::new();
    for free in 0..n {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = vec![BigRational::zero(); n];
        v[free] = BigRational::one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -mat[row][free].clone();
        }
        basis.push(v);
    }
    basis
}

// ---------------------------------------------------------------------------
// Small vector helpers shared across the crate.
// ---------------------------------------------------------------------------

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dot_rat_int(a: &[BigRational], b: &[BigInt]) -> BigRational {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| x * BigRational::from(y.clone()))
        .sum()
}

pub fn gcd_vec(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x))
}

/// Divide out the gcd, keeping the direction. Zero vectors stay zero.
pub fn primitivize(v: &[BigInt]) -> IntVec {
    let g = gcd_vec(v);
    if g.is_zero() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

/// Clear denominators of a rational vector and primitivize; keeps direction.
pub fn primitive_from_rational(v: &[BigRational]) -> IntVec {
    let lcm = v
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: IntVec = v
        .iter()
        .map(|x| x.numer() * (&lcm / x.denom()))
        .collect();
    primitivize(&ints)
}

pub fn to_rational_vec(v: &[BigInt]) -> RatVec {
    v.iter().map(|x| BigRational::from(x.clone())).collect()
}

pub fn int_vec(v: &[i64]) -> IntVec {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}
