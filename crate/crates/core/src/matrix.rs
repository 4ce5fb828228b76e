//! Dense integer matrices with exact determinant, Smith and Hermite normal forms.
//!
//! Entries are `i64`; intermediate products go through `i128`. The workspace builds
//! with overflow checks in every profile, so an overflow aborts instead of wrapping.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Index, IndexMut};

use num_integer::Integer;
use num_rational::Ratio;

/// Exact rational scalar.
pub type Rat = Ratio<i128>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    /// Builds a matrix from rows. Panics on ragged input.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.as_ref().len(), cols, "ragged matrix rows");
            data.extend_from_slice(r.as_ref());
        }
        Self { rows: rows.len(), cols, data }
    }

    pub fn diagonal(entries: &[i64]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, &d) in entries.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [i64] {
        let c = self.cols;
        &mut self.data[i * c..(i + 1) * c]
    }

    pub fn row_vecs(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `B * self * B^T` for a basis matrix `B` whose rows are coordinate vectors.
    pub fn congruence(&self, basis: &Self) -> Self {
        basis.mul(self).mul(&basis.transpose())
    }

    pub fn scaled(&self, k: i64) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * k).collect() }
    }

    pub fn negated(&self) -> Self {
        self.scaled(-1)
    }

    pub fn is_symmetric(&self) -> bool {
        self.first_asymmetry().is_none()
    }

    pub fn first_asymmetry(&self) -> Option<(usize, usize)> {
        for i in 0..self.rows {
            for j in (i + 1)..self.cols {
                if self[(i, j)] != self[(j, i)] {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn block_diagonal(a: &Self, b: &Self) -> Self {
        let mut m = Self::zeros(a.rows + b.rows, a.cols + b.cols);
        for i in 0..a.rows {
            for j in 0..a.cols {
                m[(i, j)] = a[(i, j)];
            }
        }
        for i in 0..b.rows {
            for j in 0..b.cols {
                m[(a.rows + i, a.cols + j)] = b[(i, j)];
            }
        }
        m
    }

    pub fn entries(&self) -> &[i64] {
        &self.data
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> i128 {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return 1;
        }
        let mut a: Vec<Vec<i128>> =
            (0..n).map(|i| self.row(i).iter().map(|&x| x as i128).collect()).collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n {
            if a[k][k] == 0 {
                match (k + 1..n).find(|&r| a[r][k] != 0) {
                    Some(r) => {
                        a.swap(k, r);
                        sign = -sign;
                    }
                    None => return 0,
                }
            }
            for i in (k + 1)..n {
                for j in (k + 1)..n {
                    a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) / prev;
                }
            }
            prev = a[k][k];
        }
        sign * a[n - 1][n - 1]
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        smith_normal_form(self).diagonal.iter().filter(|&&d| d != 0).count()
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries((0..self.rows).map(|i| self.row(i))).finish()
    }
}

/// `U * A * V = D` with `U`, `V` unimodular and `d_1 | d_2 | ...` on the diagonal.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub diagonal: Vec<i64>,
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub u_inv: IntMatrix,
    pub v_inv: IntMatrix,
}

impl SmithForm {
    pub fn d(&self) -> IntMatrix {
        let mut d = IntMatrix::zeros(self.u.rows(), self.v.rows());
        for (i, &x) in self.diagonal.iter().enumerate() {
            d[(i, i)] = x;
        }
        d
    }

    pub fn rank(&self) -> usize {
        self.diagonal.iter().filter(|&&d| d != 0).count()
    }
}

struct SmithCalc {
    a: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl SmithCalc {
    // row_i += k * row_j
    fn add_row(&mut self, i: usize, j: usize, k: i64) {
        if k == 0 {
            return;
        }
        for m in [&mut self.a, &mut self.u] {
            for c in 0..m.cols() {
                let x = m[(j, c)];
                m[(i, c)] += k * x;
            }
        }
        // inverse: col_j -= k * col_i
        let m = &mut self.u_inv;
        for r in 0..m.rows() {
            let x = m[(r, i)];
            m[(r, j)] -= k * x;
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for m in [&mut self.a, &mut self.u] {
            for c in 0..m.cols() {
                let t = m[(i, c)];
                m[(i, c)] = m[(j, c)];
                m[(j, c)] = t;
            }
        }
        let m = &mut self.u_inv;
        for r in 0..m.rows() {
            let t = m[(r, i)];
            m[(r, i)] = m[(r, j)];
            m[(r, j)] = t;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for m in [&mut self.a, &mut self.u] {
            for c in 0..m.cols() {
                m[(i, c)] = -m[(i, c)];
            }
        }
        let m = &mut self.u_inv;
        for r in 0..m.rows() {
            m[(r, i)] = -m[(r, i)];
        }
    }

    // col_i += k * col_j
    fn add_col(&mut self, i: usize, j: usize, k: i64) {
        if k == 0 {
            return;
        }
        for m in [&mut self.a, &mut self.v] {
            for r in 0..m.rows() {
                let x = m[(r, j)];
                m[(r, i)] += k * x;
            }
        }
        // inverse: row_j -= k * row_i
        let m = &mut self.v_inv;
        for c in 0..m.cols() {
            let x = m[(i, c)];
            m[(j, c)] -= k * x;
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for m in [&mut self.a, &mut self.v] {
            for r in 0..m.rows() {
                let t = m[(r, i)];
                m[(r, i)] = m[(r, j)];
                m[(r, j)] = t;
            }
        }
        let m = &mut self.v_inv;
        for c in 0..m.cols() {
            let t = m[(i, c)];
            m[(i, c)] = m[(j, c)];
            m[(j, c)] = t;
        }
    }

    fn min_nonzero(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let x = self.a[(i, j)].abs();
                if x != 0 && best.is_none_or(|(bi, bj)| x < self.a[(bi, bj)].abs()) {
                    best = Some((i, j));
                }
            }
        }
        best
    }

    fn run(&mut self) {
        let (m, n) = (self.a.rows(), self.a.cols());
        for t in 0..m.min(n) {
            let Some((pi, pj)) = self.min_nonzero(t) else { break };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let p = self.a[(t, t)];
                let mut dirty = false;
                for i in (t + 1)..m {
                    let q = Integer::div_floor(&self.a[(i, t)], &p);
                    self.add_row(i, t, -q);
                    if self.a[(i, t)] != 0 {
                        dirty = true;
                    }
                }
                for j in (t + 1)..n {
                    let q = Integer::div_floor(&self.a[(t, j)], &p);
                    self.add_col(j, t, -q);
                    if self.a[(t, j)] != 0 {
                        dirty = true;
                    }
                }
                if dirty {
                    let (pi, pj) = self.min_nonzero_in_cross(t);
                    self.swap_rows(t, pi);
                    self.swap_cols(t, pj);
                    continue;
                }
                // pivot must divide the remaining block
                let bad = (t + 1..m)
                    .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                    .find(|&(i, j)| self.a[(i, j)] % p != 0);
                match bad {
                    Some((i, _)) => self.add_row(t, i, 1),
                    None => break,
                }
            }
            if self.a[(t, t)] < 0 {
                self.negate_row(t);
            }
        }
    }

    fn min_nonzero_in_cross(&self, t: usize) -> (usize, usize) {
        let mut best = (t, t);
        let mut val = self.a[(t, t)].abs();
        for i in (t + 1)..self.a.rows() {
            let x = self.a[(i, t)].abs();
            if x != 0 && (val == 0 || x < val) {
                best = (i, t);
                val = x;
            }
        }
        for j in (t + 1)..self.a.cols() {
            let x = self.a[(t, j)].abs();
            if x != 0 && (val == 0 || x < val) {
                best = (t, j);
                val = x;
            }
        }
        best
    }
}

/// Smith normal form with both transformation matrices and their inverses.
pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let (m, n) = (a.rows(), a.cols());
    let mut calc = SmithCalc {
        a: a.clone(),
        u: IntMatrix::identity(m),
        u_inv: IntMatrix::identity(m),
        v: IntMatrix::identity(n),
        v_inv: IntMatrix::identity(n),
    };
    calc.run();
    let diagonal = (0..m.min(n)).map(|i| calc.a[(i, i)]).collect();
    SmithForm { diagonal, u: calc.u, v: calc.v, u_inv: calc.u_inv, v_inv: calc.v_inv }
}

/// Row-style Hermite normal form: a basis of the row lattice in echelon form, pivots
/// positive, entries above each pivot reduced into `[0, pivot)`. Zero rows are dropped.
pub fn hermite_normal_form(a: &IntMatrix) -> IntMatrix {
    let mut rows = a.row_vecs();
    let n = a.cols();
    let mut pivot_row = 0;
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    for col in 0..n {
        if pivot_row >= rows.len() {
            break;
        }
        loop {
            // smallest nonzero |entry| among the remaining rows in this column
            let best = (pivot_row..rows.len())
                .filter(|&r| rows[r][col] != 0)
                .min_by_key(|&r| rows[r][col].abs());
            let Some(best) = best else { break };
            rows.swap(pivot_row, best);
            let p = rows[pivot_row][col];
            let mut done = true;
            for r in (pivot_row + 1)..rows.len() {
                let x = rows[r][col];
                if x == 0 {
                    continue;
                }
                let q = Integer::div_floor(&x, &p);
                for c in col..n {
                    let v = rows[pivot_row][c];
                    rows[r][c] -= q * v;
                }
                if rows[r][col] != 0 {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if rows[pivot_row][col] == 0 {
            continue;
        }
        if rows[pivot_row][col] < 0 {
            for c in col..n {
                rows[pivot_row][c] = -rows[pivot_row][c];
            }
        }
        pivots.push((pivot_row, col));
        pivot_row += 1;
    }
    rows.truncate(pivot_row);
    for &(r, col) in &pivots {
        let p = rows[r][col];
        for above in 0..r {
            let q = Integer::div_floor(&rows[above][col], &p);
            if q != 0 {
                for c in col..n {
                    let v = rows[r][c];
                    rows[above][c] -= q * v;
                }
            }
        }
    }
    if rows.is_empty() {
        return IntMatrix::zeros(0, n);
    }
    IntMatrix::from_rows(&rows)
}

/// Basis (as rows) of the integer kernel `{x : A x = 0}`; the result is saturated.
pub fn integer_kernel(a: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(a);
    let r = snf.rank();
    let n = a.cols();
    let rows: Vec<Vec<i64>> = (r..n).map(|j| snf.v.column(j)).collect();
    if rows.is_empty() {
        return IntMatrix::zeros(0, n);
    }
    hermite_normal_form(&IntMatrix::from_rows(&rows))
}

/// Rational vector stored as integer numerators over a common positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatVector {
    num: Vec<i64>,
    den: i64,
}

impl RatVector {
    pub fn new(num: Vec<i64>, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        let mut v = Self { num, den };
        v.normalize();
        v
    }

    pub fn integral(coords: &[i64]) -> Self {
        Self { num: coords.to_vec(), den: 1 }
    }

    pub fn zero(n: usize) -> Self {
        Self { num: vec![0; n], den: 1 }
    }

    fn normalize(&mut self) {
        if self.den < 0 {
            self.den = -self.den;
            self.num.iter_mut().for_each(|x| *x = -*x);
        }
        let g = self.num.iter().fold(self.den, |g, &x| g.gcd(&x));
        if g > 1 {
            self.den /= g;
            self.num.iter_mut().for_each(|x| *x /= g);
        }
    }

    pub fn numerators(&self) -> &[i64] {
        &self.num
    }

    pub fn denominator(&self) -> i64 {
        self.den
    }

    pub fn len(&self) -> usize {
        self.num.len()
    }

    pub fn is_empty(&self) -> bool {
        self.num.is_empty()
    }

    pub fn get(&self, i: usize) -> Rat {
        Rat::new(self.num[i] as i128, self.den as i128)
    }

    pub fn to_integral(&self) -> Option<Vec<i64>> {
        (self.den == 1).then(|| self.num.clone())
    }

    pub fn is_integral(&self) -> bool {
        self.den == 1
    }

    pub fn add(&self, other: &Self) -> Self {
        let den = self.den.lcm(&other.den);
        let (a, b) = (den / self.den, den / other.den);
        let num = self.num.iter().zip(&other.num).map(|(x, y)| a * x + b * y).collect();
        Self::new(num, den)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, k: i64) -> Self {
        Self::new(self.num.iter().map(|x| x * k).collect(), self.den)
    }

    pub fn scale_rat(&self, num: i64, den: i64) -> Self {
        Self::new(self.num.iter().map(|x| x * num).collect(), self.den * den)
    }

    /// Representative with every coordinate in `[0, 1)`.
    pub fn reduce_mod_integers(&self) -> Self {
        Self::new(self.num.iter().map(|x| x.rem_euclid(self.den)).collect(), self.den)
    }

    /// `self^T G other` as an exact rational.
    pub fn pair(&self, gram: &IntMatrix, other: &Self) -> Rat {
        let gv = gram.mul_vec(&other.num);
        let s: i128 = self.num.iter().zip(&gv).map(|(&a, &b)| a as i128 * b as i128).sum();
        Rat::new(s, self.den as i128 * other.den as i128)
    }
}

impl fmt::Debug for RatVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}/{}", self.num, self.den)
    }
}

impl fmt::Display for RatVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, _) in self.num.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", self.get(i))?;
        }
        f.write_str(")")
    }
}

/// Inverse of a nonsingular integer matrix over the rationals (Gauss-Jordan).
pub fn rational_inverse(a: &IntMatrix) -> Option<Vec<Vec<Rat>>> {
    let n = a.rows();
    let mut m: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            let mut row: Vec<Rat> = a.row(i).iter().map(|&x| Rat::from_integer(x as i128)).collect();
            row.extend((0..n).map(|j| Rat::from_integer((i == j) as i128)));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| m[r][c] != Rat::from_integer(0))?;
        m.swap(c, p);
        let inv = m[c][c].recip();
        for x in m[c].iter_mut() {
            *x *= inv;
        }
        for r in 0..n {
            if r != c && m[r][c] != Rat::from_integer(0) {
                let f = m[r][c];
                for k in 0..2 * n {
                    let v = m[c][k];
                    m[r][k] -= f * v;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smith_of_a2_gram() {
        let a2 = IntMatrix::from_rows(&[[2, -1], [-1, 2]]);
        let s = smith_normal_form(&a2);
        assert_eq!(s.diagonal, vec![1, 3]);
        assert_eq!(s.u.mul(&a2).mul(&s.v), s.d());
        assert_eq!(s.u.mul(&s.u_inv), IntMatrix::identity(2));
        assert_eq!(s.v.mul(&s.v_inv), IntMatrix::identity(2));
    }

    #[test]
    fn smith_of_identity() {
        let s = smith_normal_form(&IntMatrix::identity(3));
        assert_eq!(s.diagonal, vec![1, 1, 1]);
    }

    #[test]
    fn smith_rectangular_and_divisibility_chain() {
        let a = IntMatrix::from_rows(&[[2, 4, 4], [-6, 6, 12], [10, -4, -16]]);
        let s = smith_normal_form(&a);
        assert_eq!(s.diagonal, vec![2, 6, 12]);
        assert_eq!(s.u.mul(&a).mul(&s.v), s.d());
        let b = IntMatrix::from_rows(&[[1, 2, 3, 4], [2, 4, 6, 8]]);
        let s = smith_normal_form(&b);
        assert_eq!(s.diagonal, vec![1, 0]);
        assert_eq!(s.u.mul(&b).mul(&s.v), s.d());
    }

    #[test]
    fn determinant_with_pivoting() {
        let u = IntMatrix::from_rows(&[[0, 1], [1, 0]]);
        assert_eq!(u.determinant(), -1);
        let m = IntMatrix::from_rows(&[[0, 0, 1], [0, 2, 0], [3, 0, 0]]);
        assert_eq!(m.determinant(), -6);
        assert_eq!(IntMatrix::from_rows(&[[1, 2], [2, 4]]).determinant(), 0);
    }

    #[test]
    fn hermite_form_basis() {
        let a = IntMatrix::from_rows(&[[2, 0], [0, 2], [1, 1]]);
        let h = hermite_normal_form(&a);
        assert_eq!(h, IntMatrix::from_rows(&[[1, 1], [0, 2]]));
    }

    #[test]
    fn kernel_of_pairing_row() {
        let a = IntMatrix::from_rows(&[[1, 1, 1]]);
        let k = integer_kernel(&a);
        assert_eq!(k.rows(), 2);
        for i in 0..2 {
            assert_eq!(a.mul_vec(k.row(i)), vec![0]);
        }
    }

    #[test]
    fn rat_vector_reduction() {
        let v = RatVector::new(vec![-1, 6, 3], 4);
        let r = v.reduce_mod_integers();
        assert_eq!(r.numerators(), &[3, 2, 3]);
        assert_eq!(r.denominator(), 4);
        assert_eq!(RatVector::new(vec![2, 4], 2).to_integral(), Some(vec![1, 2]));
    }
}
