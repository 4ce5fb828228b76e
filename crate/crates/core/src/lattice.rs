//! Integral lattices: a nondegenerate symmetric integer Gram matrix with named basis vectors.

use alloc::borrow::ToOwned;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::discriminant::DiscriminantGroup;
use crate::error::{LatticeError, Result};
use crate::matrix::{hermite_normal_form, integer_kernel, smith_normal_form, IntMatrix, Rat, RatVector};

/// Counts of positive and negative squares in a diagonalization over the rationals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
}

impl Signature {
    pub const fn new(positive: usize, negative: usize) -> Self {
        Self { positive, negative }
    }

    pub fn rank(&self) -> usize {
        self.positive + self.negative
    }

    /// `t_+ - t_-`.
    pub fn index(&self) -> i64 {
        self.positive as i64 - self.negative as i64
    }

    pub fn flipped(&self) -> Self {
        Self::new(self.negative, self.positive)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.positive, self.negative)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Invariants {
    pub determinant: i128,
    pub signature: Signature,
    pub parity: Parity,
}

/// Free Z-module of finite rank with a nondegenerate symmetric integer Gram matrix.
///
/// Vectors are integer coordinate slices in the lattice basis.
#[derive(Clone, PartialEq, Eq)]
pub struct IntegralLattice {
    name: Option<String>,
    labels: Vec<String>,
    gram: IntMatrix,
}

/// A sublattice given by basis rows in the ambient coordinates, with its induced lattice.
#[derive(Clone, Debug)]
pub struct Sublattice {
    pub lattice: IntegralLattice,
    pub basis: IntMatrix,
    /// Index of the input span inside this sublattice (1 for complements).
    pub index: i64,
}

fn default_labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("e{i}")).collect()
}

impl IntegralLattice {
    /// Validates symmetry, nondegeneracy and label uniqueness.
    pub fn new(name: Option<&str>, labels: Vec<String>, gram: IntMatrix) -> Result<Self> {
        if !gram.is_square() {
            return Err(LatticeError::NotSymmetric { row: gram.rows().min(gram.cols()), col: 0 });
        }
        if let Some((row, col)) = gram.first_asymmetry() {
            return Err(LatticeError::NotSymmetric { row, col });
        }
        if labels.len() != gram.rows() {
            return Err(LatticeError::BadLabels(format!(
                "{} labels for rank {}",
                labels.len(),
                gram.rows()
            )));
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(LatticeError::BadLabels(format!("duplicate label `{l}`")));
            }
        }
        if gram.determinant() == 0 {
            return Err(LatticeError::DegenerateLattice);
        }
        Ok(Self { name: name.map(ToOwned::to_owned), labels, gram })
    }

    /// Lattice with labels `e1..en`.
    pub fn from_gram(name: Option<&str>, gram: IntMatrix) -> Result<Self> {
        let labels = default_labels(gram.rows());
        Self::new(name, labels, gram)
    }

    pub fn from_rows<R: AsRef<[i64]>>(name: &str, rows: &[R]) -> Result<Self> {
        Self::from_gram(Some(name), IntMatrix::from_rows(rows))
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = Some(name.to_owned());
        self
    }

    pub fn with_labels<S: AsRef<str>>(self, labels: &[S]) -> Result<Self> {
        let labels = labels.iter().map(|s| s.as_ref().to_owned()).collect();
        Self::new(self.name.as_deref(), labels, self.gram)
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn determinant(&self) -> i128 {
        self.gram.determinant()
    }

    pub fn parity(&self) -> Parity {
        if (0..self.rank()).all(|i| self.gram[(i, i)] % 2 == 0) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn is_even(&self) -> bool {
        self.parity() == Parity::Even
    }

    pub fn signature(&self) -> Signature {
        signature_of(&self.gram)
    }

    pub fn basic_invariants(&self) -> Invariants {
        Invariants { determinant: self.determinant(), signature: self.signature(), parity: self.parity() }
    }

    pub fn is_positive_definite(&self) -> bool {
        self.signature().negative == 0
    }

    /// Standard basis vector `i`.
    pub fn basis_vector(&self, i: usize) -> Vec<i64> {
        let mut v = alloc::vec![0; self.rank()];
        v[i] = 1;
        v
    }

    pub fn check_dim(&self, v: &[i64]) -> Result<()> {
        if v.len() == self.rank() {
            Ok(())
        } else {
            Err(LatticeError::DimensionMismatch { expected: self.rank(), found: v.len() })
        }
    }

    /// `u^T G v`.
    pub fn pair(&self, u: &[i64], v: &[i64]) -> i64 {
        let gv = self.gram.mul_vec(v);
        u.iter().zip(&gv).map(|(a, b)| a * b).sum()
    }

    pub fn norm(&self, v: &[i64]) -> i64 {
        self.pair(v, v)
    }

    /// Pairing of rational vectors given in lattice coordinates.
    pub fn pair_rational(&self, u: &RatVector, v: &RatVector) -> Rat {
        u.pair(&self.gram, v)
    }

    /// Positive generator of `{v.w : w in L}`.
    pub fn divisibility(&self, v: &[i64]) -> Result<i64> {
        self.check_dim(v)?;
        if v.iter().all(|&x| x == 0) {
            return Err(LatticeError::ZeroVector);
        }
        Ok(self.gram.mul_vec(v).iter().fold(0i64, |g, &x| g.gcd(&x)))
    }

    /// Gram matrix multiplied by `num/den`.
    pub fn rescale(&self, num: i64, den: i64) -> Result<Self> {
        if num == 0 || den == 0 {
            return Err(LatticeError::InvalidArgument("rescaling factor must be nonzero".into()));
        }
        let mut g = IntMatrix::zeros(self.rank(), self.rank());
        for i in 0..self.rank() {
            for j in 0..self.rank() {
                let r = Rat::new(self.gram[(i, j)] as i128 * num as i128, den as i128);
                if !r.is_integer() {
                    return Err(LatticeError::NotIntegral {
                        row: i,
                        col: j,
                        numer: *r.numer(),
                        denom: *r.denom(),
                    });
                }
                g[(i, j)] = r.to_integer() as i64;
            }
        }
        Ok(Self { name: None, labels: self.labels.clone(), gram: g })
    }

    /// `L(k)`: the form multiplied by an integer.
    pub fn scaled(&self, k: i64) -> Self {
        self.rescale(k, 1).expect("integer scaling is integral")
    }

    /// `L(-1)`.
    pub fn negated(&self) -> Self {
        self.scaled(-1)
    }

    /// Orthogonal direct sum; colliding labels of `other` get primes appended.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut labels = self.labels.clone();
        for l in &other.labels {
            let mut cand = l.clone();
            while labels.contains(&cand) || (cand != *l && other.labels.contains(&cand)) {
                cand.push('\'');
            }
            labels.push(cand);
        }
        let name = match (&self.name, &other.name) {
            (Some(a), Some(b)) => Some(format!("{a}+{b}")),
            _ => None,
        };
        Self { name, labels, gram: IntMatrix::block_diagonal(&self.gram, &other.gram) }
    }

    pub fn direct_sum_all(parts: &[Self]) -> Option<Self> {
        let (first, rest) = parts.split_first()?;
        Some(rest.iter().fold(first.clone(), |acc, l| acc.direct_sum(l)))
    }

    /// Lattice spanned by the given ambient vectors, with the induced Gram matrix.
    pub fn sublattice(&self, basis: &IntMatrix) -> Result<Self> {
        let rows = basis.row_vecs();
        self.independent(&rows)?;
        let g = self.gram.congruence(basis);
        Self::from_gram(None, g)
    }

    fn independent(&self, vectors: &[Vec<i64>]) -> Result<IntMatrix> {
        for v in vectors {
            self.check_dim(v)?;
        }
        if vectors.is_empty() {
            return Ok(IntMatrix::zeros(0, self.rank()));
        }
        let s = IntMatrix::from_rows(vectors);
        if s.rank() < vectors.len() {
            return Err(LatticeError::DependentSpan);
        }
        Ok(s)
    }

    /// `{w in L : w.s = 0 for all s in S}` with its induced Gram matrix.
    ///
    /// A degenerate complement is reported as `DegenerateLattice`.
    pub fn orthogonal_complement(&self, vectors: &[Vec<i64>]) -> Result<Sublattice> {
        let s = self.independent(vectors)?;
        let basis = if s.rows() == 0 {
            IntMatrix::identity(self.rank())
        } else {
            integer_kernel(&s.mul(&self.gram))
        };
        let g = self.gram.congruence(&basis);
        let lattice = Self::from_gram(None, g)?;
        Ok(Sublattice { lattice, basis, index: 1 })
    }

    /// Smallest primitive sublattice containing `span(S)`: `L ∩ (span(S) ⊗ Q)`.
    pub fn saturation(&self, vectors: &[Vec<i64>]) -> Result<Sublattice> {
        let s = self.independent(vectors)?;
        let r = s.rows();
        let snf = smith_normal_form(&s);
        let rows: Vec<Vec<i64>> = (0..r).map(|i| snf.v_inv.row(i).to_vec()).collect();
        let basis = hermite_normal_form(&IntMatrix::from_rows(&rows));
        let index = snf.diagonal.iter().take(r).product();
        let g = self.gram.congruence(&basis);
        let lattice = Self::from_gram(None, g)?;
        Ok(Sublattice { lattice, basis, index })
    }

    /// Inverse Gram matrix over the rationals; its columns span the dual lattice.
    pub fn inverse_gram(&self) -> Vec<Vec<Rat>> {
        crate::matrix::rational_inverse(&self.gram).expect("nondegenerate gram")
    }

    /// Dual basis vector `e_i^*` in lattice coordinates.
    pub fn dual_basis_vector(&self, i: usize) -> RatVector {
        let inv = self.inverse_gram();
        rat_column(&inv, i)
    }

    /// True if `x` (lattice coordinates) pairs integrally with every basis vector.
    pub fn in_dual(&self, x: &RatVector) -> bool {
        (0..self.rank()).all(|i| {
            let e = RatVector::integral(&self.basis_vector(i));
            self.pair_rational(x, &e).is_integer()
        })
    }

    pub fn discriminant_group(&self) -> DiscriminantGroup {
        DiscriminantGroup::of(self)
    }
}

pub(crate) fn rat_column(m: &[Vec<Rat>], j: usize) -> RatVector {
    let den = m.iter().fold(1i128, |acc, row| acc.lcm(row[j].denom()));
    let num = m.iter().map(|row| (*row[j].numer() * (den / row[j].denom())) as i64).collect();
    RatVector::new(num, den as i64)
}

/// Signature by congruence diagonalization over the rationals.
pub fn signature_of(gram: &IntMatrix) -> Signature {
    let n = gram.rows();
    let mut a: Vec<Vec<Rat>> =
        (0..n).map(|i| gram.row(i).iter().map(|&x| Rat::from_integer(x as i128)).collect()).collect();
    let (mut pos, mut neg) = (0, 0);
    for k in 0..n {
        if a[k][k].is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !a[j][j].is_zero()) {
                a.swap(k, j);
                for row in a.iter_mut() {
                    row.swap(k, j);
                }
            } else if let Some(j) = (k + 1..n).find(|&j| !a[k][j].is_zero()) {
                // e_k <- e_k + e_j makes the pivot 2 a_kj
                for c in 0..n {
                    let x = a[j][c];
                    a[k][c] += x;
                }
                for row in a.iter_mut() {
                    let x = row[j];
                    row[k] += x;
                }
            } else {
                continue;
            }
        }
        let p = a[k][k];
        if p.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        for i in (k + 1)..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = a[i][k] / p;
            for j in k..n {
                let x = a[k][j];
                a[i][j] -= f * x;
            }
        }
        for i in (k + 1)..n {
            a[k][i] = Rat::zero();
        }
    }
    Signature::new(pos, neg)
}

impl fmt::Debug for IntegralLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IntegralLattice")
            .field("name", &self.name)
            .field("labels", &self.labels)
            .field("gram", &self.gram)
            .finish()
    }
}

impl fmt::Display for IntegralLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} (rank {})", self.name.as_deref().unwrap_or("lattice"), self.rank())?;
        for i in 0..self.rank() {
            write!(f, "{:>6} |", self.labels[i])?;
            for x in self.gram.row(i) {
                write!(f, " {x:>4}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn u() -> IntegralLattice {
        IntegralLattice::from_rows("U", &[[0, 1], [1, 0]]).unwrap()
    }

    #[test]
    fn hyperbolic_plane_invariants() {
        let inv = u().basic_invariants();
        assert_eq!(inv.determinant, -1);
        assert_eq!(inv.signature, Signature::new(1, 1));
        assert_eq!(inv.parity, Parity::Even);
    }

    #[test]
    fn rejects_asymmetric_and_degenerate() {
        let e = IntegralLattice::from_rows("x", &[[2, 1], [0, 2]]).unwrap_err();
        assert_eq!(e, LatticeError::NotSymmetric { row: 0, col: 1 });
        let e = IntegralLattice::from_rows("x", &[[1, 1], [1, 1]]).unwrap_err();
        assert_eq!(e, LatticeError::DegenerateLattice);
    }

    #[test]
    fn isotropic_complement_is_degenerate() {
        let e = u().orthogonal_complement(&[vec![1, 0]]).unwrap_err();
        assert_eq!(e, LatticeError::DegenerateLattice);
    }

    #[test]
    fn direct_sum_suffixes_labels() {
        let s = u().direct_sum(&u());
        assert_eq!(s.labels(), &["e1", "e2", "e1'", "e2'"]);
        assert_eq!(s.signature(), Signature::new(2, 2));
    }

    #[test]
    fn rescale_reports_entry() {
        let a1 = IntegralLattice::from_rows("A1", &[[2]]).unwrap();
        assert_eq!(a1.rescale(2, 1).unwrap().gram()[(0, 0)], 4);
        let odd = IntegralLattice::from_rows("x", &[[2, 1], [1, 2]]).unwrap();
        assert_eq!(
            odd.rescale(1, 2).unwrap_err(),
            LatticeError::NotIntegral { row: 0, col: 1, numer: 1, denom: 2 }
        );
    }

    #[test]
    fn saturation_gains_index() {
        let l = IntegralLattice::from_rows("x", &[[2, 1], [1, 2]]).unwrap();
        let s = l.saturation(&[vec![2, 4]]).unwrap();
        assert_eq!(s.index, 2);
        assert_eq!(s.basis.row(0), &[1, 2]);
        assert_eq!(l.saturation(&[vec![1, 0], vec![2, 0]]).unwrap_err(), LatticeError::DependentSpan);
    }

    #[test]
    fn divisibility_of_zero_vector() {
        assert_eq!(u().divisibility(&[0, 0]).unwrap_err(), LatticeError::ZeroVector);
        assert_eq!(u().divisibility(&[2, 4]).unwrap(), 2);
    }

    #[test]
    fn signature_needs_off_diagonal_pivot() {
        let g = IntMatrix::from_rows(&[[0, 2, 0], [2, 0, 0], [0, 0, -3]]);
        assert_eq!(signature_of(&g), Signature::new(1, 2));
    }
}
