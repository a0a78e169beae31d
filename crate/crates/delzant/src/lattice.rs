//! Exact integer linear algebra: primitive vectors, Hermite/Smith normal
//! forms, integer kernel bases, and unimodular inverses.
//!
//! Everything here runs on arbitrary-precision integers; overflow is a
//! correctness bug, not a tolerance question. The design envelope is small
//! dimensions (n <= 6), so cubic algorithms are fine.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, Zero};
use thiserror::Error;

pub type Int = BigInt;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("ZeroVector: cannot normalize the zero vector")]
    ZeroVector,
    #[error("NotUnimodular: determinant {0} (expected +1 or -1)")]
    NotUnimodular(Int),
    #[error("DimensionMismatch: {0}")]
    DimensionMismatch(String),
}

/// Nonzero integer vector whose entries have gcd 1. `primitive_part`
/// additionally canonicalizes the sign (first nonzero entry positive);
/// `checked` keeps the orientation as given, which inward-pointing facet
/// normals rely on.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PrimitiveVec(Vec<Int>);

impl PrimitiveVec {
    /// Accept a vector that is already primitive, preserving its sign.
    pub fn checked(entries: Vec<Int>) -> Result<Self, LatticeError> {
        let mut g = Int::zero();
        for x in &entries {
            g = g.gcd(x);
        }
        if g.is_zero() {
            return Err(LatticeError::ZeroVector);
        }
        if !g.is_one() {
            return Err(LatticeError::DimensionMismatch(format!(
                "vector is not primitive (gcd {g})"
            )));
        }
        Ok(PrimitiveVec(entries))
    }

    pub fn entries(&self) -> &[Int] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_inner(self) -> Vec<Int> {
        self.0
    }

    pub fn to_i64(&self) -> Vec<i64> {
        self.0
            .iter()
            .map(|x| i64::try_from(x).expect("primitive vector entry exceeds i64"))
            .collect()
    }

    pub fn negated(&self) -> Vec<Int> {
        self.0.iter().map(|x| -x).collect()
    }
}

impl std::fmt::Display for PrimitiveVec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Divide out the gcd and fix the sign so the first nonzero entry is
/// positive. Errors on the zero vector.
pub fn primitive_part(v: &[Int]) -> Result<PrimitiveVec, LatticeError> {
    let mut g = Int::zero();
    for x in v {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return Err(LatticeError::ZeroVector);
    }
    let mut out: Vec<Int> = v.iter().map(|x| x / &g).collect();
    if let Some(first) = out.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for x in &mut out {
                *x = -&*x;
            }
        }
    }
    Ok(PrimitiveVec(out))
}

pub fn primitive_part_i64(v: &[i64]) -> Result<PrimitiveVec, LatticeError> {
    let big: Vec<Int> = v.iter().map(|&x| Int::from(x)).collect();
    primitive_part(&big)
}

/// Dense integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![Int::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Int::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let data = rows
            .iter()
            .flat_map(|row| row.iter().map(|&x| Int::from(x)))
            .collect();
        IntMatrix { rows: r, cols: c, data }
    }

    pub fn from_columns(cols: &[Vec<Int>]) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, |col| col.len());
        assert!(cols.iter().all(|col| col.len() == r), "ragged columns");
        let mut m = Self::zeros(r, c);
        for (j, col) in cols.iter().enumerate() {
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Int] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Int> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Int::zero();
                for l in 0..self.cols {
                    acc += &self[(i, l)] * &other[(l, j)];
                }
                out[(i, j)] = acc;
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Int]) -> Vec<Int> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = Int::zero();
                for j in 0..self.cols {
                    acc += &self[(i, j)] * &v[j];
                }
                acc
            })
            .collect()
    }

    pub fn mul_vec_f64(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self.at_f64(i, j) * v[j])
                    .sum()
            })
            .collect()
    }

    pub fn at_f64(&self, i: usize, j: usize) -> f64 {
        i64::try_from(&self[(i, j)]).map(|x| x as f64).unwrap_or_else(|_| {
            // entries beyond i64 only arise in pathological inputs
            self[(i, j)].to_string().parse::<f64>().unwrap()
        })
    }

    pub fn to_i64_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|x| i64::try_from(x).expect("matrix entry exceeds i64"))
                    .collect()
            })
            .collect()
    }

    /// Determinant by fraction-free Bareiss elimination.
    pub fn det(&self) -> Int {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Int::one();
        }
        let mut m: Vec<Vec<Int>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut sign = Int::one();
        let mut prev = Int::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                let Some(swap) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                    return Int::zero();
                };
                m.swap(k, swap);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    m[i][j] = &num / &prev;
                }
                m[i][k] = Int::zero();
            }
            prev = m[k][k].clone();
        }
        sign * m[n - 1][n - 1].clone()
    }

    /// Rank over the rationals (exact, via integer row reduction).
    pub fn rank(&self) -> usize {
        hermite_normal_form(self).rank
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = Int;
    fn index(&self, (i, j): (usize, usize)) -> &Int {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Int {
        &mut self.data[i * self.cols + j]
    }
}

/// Row-style Hermite normal form `H = U * M` with `U` unimodular.
///
/// Pivots are positive, entries above each pivot are reduced into
/// `[0, pivot)`, and rows below the pivot in its column are zero.
pub struct Hnf {
    pub h: IntMatrix,
    pub transform: IntMatrix,
    pub rank: usize,
}

pub fn hermite_normal_form(m: &IntMatrix) -> Hnf {
    let rows = m.nrows();
    let cols = m.ncols();
    let mut h = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut pivot_row = 0;

    let row_op = |h: &mut IntMatrix, u: &mut IntMatrix, dst: usize, src: usize, q: &Int| {
        for j in 0..cols {
            let v = &h[(dst, j)] - q * &h[(src, j)];
            h[(dst, j)] = v;
        }
        for j in 0..rows {
            let v = &u[(dst, j)] - q * &u[(src, j)];
            u[(dst, j)] = v;
        }
    };

    for col in 0..cols {
        if pivot_row == rows {
            break;
        }
        loop {
            // smallest nonzero |entry| in this column at or below pivot_row
            let mut best: Option<usize> = None;
            for i in pivot_row..rows {
                if h[(i, col)].is_zero() {
                    continue;
                }
                if best.is_none_or(|b| h[(i, col)].abs() < h[(b, col)].abs()) {
                    best = Some(i);
                }
            }
            let Some(best) = best else { break };
            if best != pivot_row {
                for j in 0..cols {
                    let tmp = h[(best, j)].clone();
                    h[(best, j)] = h[(pivot_row, j)].clone();
                    h[(pivot_row, j)] = tmp;
                }
                for j in 0..rows {
                    let tmp = u[(best, j)].clone();
                    u[(best, j)] = u[(pivot_row, j)].clone();
                    u[(pivot_row, j)] = tmp;
                }
            }
            let mut done = true;
            for i in pivot_row + 1..rows {
                if !h[(i, col)].is_zero() {
                    let q = h[(i, col)].div_euclid(&h[(pivot_row, col)]);
                    row_op(&mut h, &mut u, i, pivot_row, &q);
                    if !h[(i, col)].is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if h[(pivot_row, col)].is_zero() {
            continue;
        }
        if h[(pivot_row, col)].is_negative() {
            for j in 0..cols {
                h[(pivot_row, j)] = -h[(pivot_row, j)].clone();
            }
            for j in 0..rows {
                u[(pivot_row, j)] = -u[(pivot_row, j)].clone();
            }
        }
        // reduce entries above the pivot into [0, pivot)
        for i in 0..pivot_row {
            let q = h[(i, col)].div_euclid(&h[(pivot_row, col)]);
            if !q.is_zero() {
                row_op(&mut h, &mut u, i, pivot_row, &q);
            }
        }
        pivot_row += 1;
    }

    Hnf {
        h,
        transform: u,
        rank: pivot_row,
    }
}

/// Smith invariant factors d_1 | d_2 | ... (nonzero ones only, positive).
pub fn smith_invariant_factors(m: &IntMatrix) -> Vec<Int> {
    let mut a: Vec<Vec<Int>> = (0..m.nrows()).map(|i| m.row(i).to_vec()).collect();
    let rows = m.nrows();
    let cols = m.ncols();
    let mut factors = Vec::new();
    let mut top = 0;

    while top < rows && top < cols {
        // find a nonzero entry in the working block
        let mut pivot = None;
        'search: for i in top..rows {
            for j in top..cols {
                if !a[i][j].is_zero() {
                    pivot = Some((i, j));
                    break 'search;
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        a.swap(top, pi);
        for row in a.iter_mut() {
            row.swap(top, pj);
        }

        loop {
            // clear the pivot column with euclidean row steps
            let mut clean = true;
            for i in top + 1..rows {
                if !a[i][top].is_zero() {
                    let q = a[i][top].div_euclid(&a[top][top]);
                    for j in top..cols {
                        let v = &a[i][j] - &q * &a[top][j];
                        a[i][j] = v;
                    }
                    if !a[i][top].is_zero() {
                        a.swap(top, i);
                        clean = false;
                    }
                }
            }
            if !clean {
                continue;
            }
            // clear the pivot row with euclidean column steps
            for j in top + 1..cols {
                if !a[top][j].is_zero() {
                    let q = a[top][j].div_euclid(&a[top][top]);
                    for row in a.iter_mut().take(rows).skip(top) {
                        let v = &row[j] - &q * &row[top];
                        row[j] = v;
                    }
                    if !a[top][j].is_zero() {
                        for row in a.iter_mut() {
                            row.swap(top, j);
                        }
                        clean = false;
                    }
                }
            }
            if clean {
                break;
            }
        }

        // enforce the divisibility chain: pivot must divide the rest
        let mut divides_all = true;
        'divcheck: for i in top + 1..rows {
            for j in top + 1..cols {
                if !(&a[i][j] % &a[top][top]).is_zero() {
                    for l in top..cols {
                        let v = &a[top][l] + &a[i][l];
                        a[top][l] = v;
                    }
                    divides_all = false;
                    break 'divcheck;
                }
            }
        }
        if !divides_all {
            continue;
        }
        factors.push(a[top][top].abs());
        top += 1;
    }
    factors
}

/// Primitive basis of the integer kernel {q in Z^n : M q = 0}.
///
/// The returned vectors generate the full kernel lattice (it is saturated,
/// so any lattice basis works); output is canonicalized by HNF so equal
/// inputs give identical bases, each vector sign-fixed by `primitive_part`.
pub fn integer_kernel_basis(m: &IntMatrix) -> Vec<PrimitiveVec> {
    let n = m.ncols();
    // HNF of [M^t | I]: rows whose M^t-part vanished carry kernel vectors.
    let mt = m.transpose();
    let k = mt.ncols();
    let mut aug = IntMatrix::zeros(n, k + n);
    for i in 0..n {
        for j in 0..k {
            aug[(i, j)] = mt[(i, j)].clone();
        }
        aug[(i, k + i)] = Int::one();
    }
    let hnf = hermite_normal_form(&aug);
    let mut kernel_rows: Vec<Vec<i64>> = Vec::new();
    for i in 0..n {
        let lead_zero = (0..k).all(|j| hnf.h[(i, j)].is_zero());
        if lead_zero {
            let v: Vec<Int> = (0..n).map(|j| hnf.h[(i, k + j)].clone()).collect();
            if v.iter().any(|x| !x.is_zero()) {
                kernel_rows.push(
                    v.iter()
                        .map(|x| i64::try_from(x).expect("kernel entry exceeds i64"))
                        .collect(),
                );
            }
        }
    }
    if kernel_rows.is_empty() {
        return Vec::new();
    }
    // canonical shape, then canonical signs
    let canon = hermite_normal_form(&IntMatrix::from_rows(&kernel_rows)).h;
    let mut out = Vec::new();
    for i in 0..canon.nrows() {
        let row = canon.row(i);
        if row.iter().any(|x| !x.is_zero()) {
            out.push(primitive_part(row).expect("nonzero kernel row"));
        }
    }
    out
}

/// Exact inverse of a matrix with determinant +1 or -1, via the adjugate.
pub fn unimodular_inverse(m: &IntMatrix) -> Result<IntMatrix, LatticeError> {
    assert_eq!(m.nrows(), m.ncols(), "inverse of non-square matrix");
    let n = m.nrows();
    let d = m.det();
    if d.abs() != Int::one() {
        return Err(LatticeError::NotUnimodular(d));
    }
    let mut inv = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let minor = minor_det(m, j, i);
            let sign = if (i + j) % 2 == 0 { Int::one() } else { -Int::one() };
            inv[(i, j)] = sign * minor * &d; // d = +-1, so adj/d == adj*d
        }
    }
    debug_assert_eq!(m.mul(&inv), IntMatrix::identity(n));
    Ok(inv)
}

fn minor_det(m: &IntMatrix, skip_row: usize, skip_col: usize) -> Int {
    let n = m.nrows();
    if n == 1 {
        return Int::one();
    }
    let mut sub = IntMatrix::zeros(n - 1, n - 1);
    let mut si = 0;
    for i in 0..n {
        if i == skip_row {
            continue;
        }
        let mut sj = 0;
        for j in 0..n {
            if j == skip_col {
                continue;
            }
            sub[(si, sj)] = m[(i, j)].clone();
            sj += 1;
        }
        si += 1;
    }
    sub.det()
}

/// Solve A x = b over the rationals; None if A is singular.
pub fn solve_rational(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = a.len();
    if n == 0 {
        return Some(Vec::new());
    }
    assert!(a.iter().all(|row| row.len() == n), "square system expected");
    assert_eq!(b.len(), n);
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    for i in 0..n {
        let pivot = (i..n).find(|&r| !m[r][i].is_zero())?;
        m.swap(i, pivot);
        let p = m[i][i].clone();
        for j in i..=n {
            m[i][j] = &m[i][j] / &p;
        }
        for r in 0..n {
            if r != i && !m[r][i].is_zero() {
                let f = m[r][i].clone();
                for j in i..=n {
                    let v = &m[r][j] - &f * &m[i][j];
                    m[r][j] = v;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n].clone()).collect())
}

/// Inner product of an integer vector with an f64 vector.
pub fn dot_f64(ints: &[Int], reals: &[f64]) -> f64 {
    assert_eq!(ints.len(), reals.len());
    ints.iter()
        .zip(reals)
        .map(|(a, b)| i64::try_from(a).expect("entry exceeds i64") as f64 * b)
        .sum()
}

/// Exact integer inner product.
pub fn dot_int(a: &[Int], b: &[Int]) -> Int {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

trait DivEuclid {
    fn div_euclid(&self, rhs: &Self) -> Self;
}

impl DivEuclid for Int {
    fn div_euclid(&self, rhs: &Self) -> Self {
        let (mut q, r) = self.div_rem(rhs);
        if r.is_negative() {
            if rhs.is_positive() {
                q -= 1;
            } else {
                q += 1;
            }
        }
        q
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| Int::from(x)).collect()
    }

    #[test]
    fn primitive_part_divides_gcd() {
        assert_eq!(primitive_part(&iv(&[2, 4])).unwrap().to_i64(), vec![1, 2]);
        assert_eq!(primitive_part(&iv(&[1, 0])).unwrap().to_i64(), vec![1, 0]);
        assert_eq!(
            primitive_part(&iv(&[-3, 6, -9])).unwrap().to_i64(),
            vec![1, -2, 3]
        );
    }

    #[test]
    fn primitive_part_rejects_zero() {
        assert_eq!(primitive_part(&iv(&[0, 0])), Err(LatticeError::ZeroVector));
    }

    #[test]
    fn kernel_of_ones_row() {
        let m = IntMatrix::from_rows(&[vec![1, 1]]);
        let k = integer_kernel_basis(&m);
        assert_eq!(k.len(), 1);
        assert_eq!(k[0].to_i64(), vec![1, -1]);
    }

    #[test]
    fn kernel_of_2_1() {
        let m = IntMatrix::from_rows(&[vec![2, 1]]);
        let k = integer_kernel_basis(&m);
        assert_eq!(k.len(), 1);
        assert_eq!(k[0].to_i64(), vec![1, -2]);
    }

    #[test]
    fn kernel_of_ones_3() {
        let m = IntMatrix::from_rows(&[vec![1, 1, 1]]);
        let k = integer_kernel_basis(&m);
        assert_eq!(k.len(), 2);
        for q in &k {
            assert!(dot_int(&iv(&[1, 1, 1]), q.entries()).is_zero());
        }
        // generates the same lattice as {(1,-1,0),(0,1,-1)}: saturation check
        let rows: Vec<Vec<i64>> = k.iter().map(|q| q.to_i64()).collect();
        let factors = smith_invariant_factors(&IntMatrix::from_rows(&rows));
        assert!(factors.iter().all(|f| f.is_one()));
    }

    #[test]
    fn unimodular_inverse_examples() {
        let id = IntMatrix::identity(3);
        assert_eq!(unimodular_inverse(&id).unwrap(), id);

        let m = IntMatrix::from_rows(&[vec![-1, -1], vec![1, 0]]);
        let inv = unimodular_inverse(&m).unwrap();
        assert_eq!(inv, IntMatrix::from_rows(&[vec![0, 1], vec![-1, -1]]));
        assert_eq!(m.mul(&inv), IntMatrix::identity(2));

        let m = IntMatrix::from_rows(&[vec![2, 1], vec![1, 1]]);
        let inv = unimodular_inverse(&m).unwrap();
        assert_eq!(inv, IntMatrix::from_rows(&[vec![1, -1], vec![-1, 2]]));
        assert_eq!(m.mul(&inv), IntMatrix::identity(2));
    }

    #[test]
    fn unimodular_inverse_rejects_det2() {
        let m = IntMatrix::from_rows(&[vec![2, 0], vec![0, 1]]);
        assert_eq!(
            unimodular_inverse(&m),
            Err(LatticeError::NotUnimodular(Int::from(2)))
        );
    }

    #[test]
    fn hnf_examples() {
        let hnf = hermite_normal_form(&IntMatrix::from_rows(&[vec![1, 0], vec![0, 1]]));
        assert_eq!(hnf.h, IntMatrix::identity(2));
        assert_eq!(hnf.rank, 2);

        let hnf = hermite_normal_form(&IntMatrix::from_rows(&[vec![2, 4]]));
        assert_eq!(hnf.h, IntMatrix::from_rows(&[vec![2, 4]]));
        let factors = smith_invariant_factors(&IntMatrix::from_rows(&[vec![2, 4]]));
        assert_eq!(factors, vec![Int::from(2)]);

        let factors = smith_invariant_factors(&IntMatrix::from_rows(&[vec![1, 1], vec![0, 2]]));
        assert_eq!(factors, vec![Int::from(1), Int::from(2)]);
    }

    #[test]
    fn hnf_transform_is_unimodular() {
        let m = IntMatrix::from_rows(&[vec![4, 6, 2], vec![2, 8, 5]]);
        let hnf = hermite_normal_form(&m);
        assert_eq!(hnf.transform.det().abs(), Int::one());
        assert_eq!(hnf.transform.mul(&m), hnf.h);
    }

    #[test]
    fn kernel_orthogonal_and_primitive() {
        let m = IntMatrix::from_rows(&[vec![3, -1, 4, 2], vec![0, 2, -5, 1]]);
        let k = integer_kernel_basis(&m);
        assert_eq!(k.len(), 2);
        for q in &k {
            for i in 0..m.nrows() {
                assert!(dot_int(m.row(i), q.entries()).is_zero());
            }
            let g = q
                .entries()
                .iter()
                .fold(Int::zero(), |acc, x| acc.gcd(x));
            assert!(g.is_one());
        }
    }

    #[test]
    fn solve_rational_2x2() {
        let r = |x: i64| BigRational::from_integer(Int::from(x));
        let a = vec![vec![r(2), r(1)], vec![r(1), r(3)]];
        let b = vec![r(5), r(5)];
        let x = solve_rational(&a, &b).unwrap();
        assert_eq!(x, vec![r(2), r(1)]);
    }
}
