//! Discriminant groups `L*/L` and the finite forms they carry.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;

use crate::error::{LatticeError, Result};
use crate::lattice::IntegralLattice;
use crate::matrix::{smith_normal_form, IntMatrix, Rat, RatVector};

/// Largest group that element-wise operations will enumerate.
pub const ENUMERATION_GUARD: u128 = 1 << 20;

/// `L*/L` as `Z/d_1 + ... + Z/d_k` with `d_1 | d_2 | ...`, each `d_i > 1`.
///
/// Elements are coefficient vectors `k` with `0 <= k_i < d_i`; element `k` is the class of
/// `sum k_i g_i` where `g_i` is the `i`-th generator lift.
#[derive(Clone, PartialEq, Eq)]
pub struct DiscriminantGroup {
    gram: IntMatrix,
    factors: Vec<i64>,
    lifts: Vec<RatVector>,
    coeff_rows: Vec<Vec<i64>>,
    exponent: i64,
    // g_i . g_j scaled by the exponent; always integral
    pair: Vec<Vec<i64>>,
}

/// Reduces `r` into `[0, m)`.
pub fn reduce_mod(r: Rat, m: i64) -> Rat {
    let m = Rat::from_integer(m as i128);
    let q = (r / m).floor();
    r - q * m
}

impl DiscriminantGroup {
    pub fn of(lattice: &IntegralLattice) -> Self {
        let gram = lattice.gram().clone();
        let snf = smith_normal_form(&gram);
        let n = gram.rows();
        let mut factors = Vec::new();
        let mut lifts = Vec::new();
        let mut coeff_rows = Vec::new();
        for i in 0..n {
            let d = snf.diagonal[i];
            if d > 1 {
                factors.push(d);
                lifts.push(RatVector::new(snf.v.column(i), d).reduce_mod_integers());
                coeff_rows.push(snf.u.row(i).to_vec());
            }
        }
        let exponent = factors.last().copied().unwrap_or(1);
        let k = factors.len();
        let mut pair = vec![vec![0i64; k]; k];
        for i in 0..k {
            for j in 0..k {
                let p = lifts[i].pair(&gram, &lifts[j]) * Rat::from_integer(exponent as i128);
                debug_assert!(p.is_integer());
                pair[i][j] = p.to_integer() as i64;
            }
        }
        Self { gram, factors, lifts, coeff_rows, exponent, pair }
    }

    pub fn invariant_factors(&self) -> &[i64] {
        &self.factors
    }

    /// Number of cyclic factors (minimal number of generators).
    pub fn length(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> u128 {
        self.factors.iter().map(|&d| d as u128).product()
    }

    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn is_two_elementary(&self) -> bool {
        self.factors.iter().all(|&d| d == 2)
    }

    /// Generator lifts in lattice coordinates, each with coordinates in `[0, 1)`.
    pub fn generator_lifts(&self) -> &[RatVector] {
        &self.lifts
    }

    pub fn zero(&self) -> Vec<i64> {
        vec![0; self.factors.len()]
    }

    pub fn generator(&self, i: usize) -> Vec<i64> {
        let mut e = self.zero();
        e[i] = 1;
        e
    }

    pub fn reduce(&self, x: &[i64]) -> Vec<i64> {
        x.iter().zip(&self.factors).map(|(a, d)| a.rem_euclid(*d)).collect()
    }

    pub fn add(&self, x: &[i64], y: &[i64]) -> Vec<i64> {
        let s: Vec<i64> = x.iter().zip(y).map(|(a, b)| a + b).collect();
        self.reduce(&s)
    }

    pub fn scale(&self, x: &[i64], n: i64) -> Vec<i64> {
        let s: Vec<i64> = x.iter().zip(&self.factors).map(|(a, d)| (a * n.rem_euclid(*d)) % d).collect();
        self.reduce(&s)
    }

    pub fn neg(&self, x: &[i64]) -> Vec<i64> {
        self.scale(x, -1)
    }

    pub fn is_zero(&self, x: &[i64]) -> bool {
        x.iter().all(|&a| a == 0)
    }

    pub fn element_order(&self, x: &[i64]) -> i64 {
        x.iter().zip(&self.factors).fold(1, |acc, (a, d)| acc.lcm(&(d / a.gcd(d))))
    }

    /// Class of a dual vector given in lattice coordinates.
    pub fn element_of(&self, x: &RatVector) -> Result<Vec<i64>> {
        let den = x.denominator() as i128;
        let gx = self.gram.mul_vec(x.numerators());
        if gx.iter().any(|&w| (w as i128) % den != 0) {
            return Err(LatticeError::NotInDual);
        }
        let w: Vec<i64> = gx.iter().map(|&a| (a as i128 / den) as i64).collect();
        let k: Vec<i64> = self
            .coeff_rows
            .iter()
            .map(|row| row.iter().zip(&w).map(|(a, b)| *a as i128 * *b as i128).sum::<i128>())
            .zip(&self.factors)
            .map(|(s, &d)| s.rem_euclid(d as i128) as i64)
            .collect();
        Ok(k)
    }

    /// Lift with coordinates in `[0, 1)`.
    pub fn lift(&self, x: &[i64]) -> RatVector {
        let n = self.gram.rows();
        x.iter()
            .zip(&self.lifts)
            .fold(RatVector::zero(n), |acc, (&k, g)| acc.add(&g.scale(k)))
            .reduce_mod_integers()
    }

    /// `lift(x) . lift(y)` scaled by the exponent, as an exact integer.
    pub(crate) fn raw_pair(&self, x: &[i64], y: &[i64]) -> i128 {
        let mut s = 0i128;
        for (i, &a) in x.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in y.iter().enumerate() {
                s += a as i128 * b as i128 * self.pair[i][j] as i128;
            }
        }
        s
    }

    /// `pair * x`, so that `raw_pair(y, x)` is `y . pair_vector(x)`.
    pub(crate) fn pair_vector(&self, x: &[i64]) -> Vec<i128> {
        (0..self.pair.len())
            .map(|i| x.iter().enumerate().map(|(j, &b)| self.pair[i][j] as i128 * b as i128).sum())
            .collect()
    }

    /// True if `b(y, x) = 0` given `pair_vector(x)`.
    pub(crate) fn orthogonal_to(&self, y: &[i64], px: &[i128]) -> bool {
        let s: i128 = y.iter().zip(px).map(|(&a, &b)| a as i128 * b).sum();
        s % self.exponent as i128 == 0
    }

    /// All elements in mixed-radix order.
    pub fn elements(&self) -> Result<Vec<Vec<i64>>> {
        let order = self.order();
        if order > ENUMERATION_GUARD {
            return Err(LatticeError::TooLarge { order });
        }
        let mut out = Vec::with_capacity(order as usize);
        let mut cur = self.zero();
        loop {
            out.push(cur.clone());
            let mut i = cur.len();
            loop {
                if i == 0 {
                    return Ok(out);
                }
                i -= 1;
                cur[i] += 1;
                if cur[i] < self.factors[i] {
                    break;
                }
                cur[i] = 0;
            }
        }
    }

    /// Elements killed by `n`.
    pub fn torsion(&self, n: i64) -> Result<Vec<Vec<i64>>> {
        Ok(self.elements()?.into_iter().filter(|x| self.is_zero(&self.scale(x, n))).collect())
    }

    /// Subgroup generated by `gens`, sorted.
    pub fn span(&self, gens: &[Vec<i64>]) -> Result<Vec<Vec<i64>>> {
        let mut elems = vec![self.zero()];
        for g in gens {
            let g = self.reduce(g);
            if elems.contains(&g) {
                continue;
            }
            let mut next = elems.clone();
            let mut m = g.clone();
            while !self.is_zero(&m) {
                for e in &elems {
                    next.push(self.add(e, &m));
                }
                m = self.add(&m, &g);
            }
            next.sort();
            next.dedup();
            if next.len() as u128 > ENUMERATION_GUARD {
                return Err(LatticeError::TooLarge { order: next.len() as u128 });
            }
            elems = next;
        }
        elems.sort();
        Ok(elems)
    }

    fn sign_pair(&self, sign: i64, x: &[i64], y: &[i64]) -> Rat {
        Rat::new(sign as i128 * self.raw_pair(x, y), self.exponent as i128)
    }
}

impl fmt::Debug for DiscriminantGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DiscriminantGroup")
            .field("invariant_factors", &self.factors)
            .field("generator_lifts", &self.lifts)
            .finish()
    }
}

impl fmt::Display for DiscriminantGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("0");
        }
        let mut i = 0;
        let mut first = true;
        while i < self.factors.len() {
            let d = self.factors[i];
            let run = self.factors[i..].iter().take_while(|&&x| x == d).count();
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            if run == 1 {
                write!(f, "Z/{d}")?;
            } else {
                write!(f, "(Z/{d})^{run}")?;
            }
            i += run;
        }
        Ok(())
    }
}

/// `b: A x A -> Q/Z`, values in `[0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteBilinearForm {
    group: DiscriminantGroup,
    sign: i64,
}

impl FiniteBilinearForm {
    pub fn new(group: DiscriminantGroup) -> Self {
        Self { group, sign: 1 }
    }

    pub fn group(&self) -> &DiscriminantGroup {
        &self.group
    }

    pub fn b(&self, x: &[i64], y: &[i64]) -> Rat {
        reduce_mod(self.group.sign_pair(self.sign, x, y), 1)
    }

    /// `-b`.
    pub fn negated(&self) -> Self {
        Self { group: self.group.clone(), sign: -self.sign }
    }

    /// Table of `b` on the generators.
    pub fn matrix(&self) -> Vec<Vec<Rat>> {
        let k = self.group.length();
        (0..k)
            .map(|i| (0..k).map(|j| self.b(&self.group.generator(i), &self.group.generator(j))).collect())
            .collect()
    }
}

/// `q: A -> Q/2Z`, values in `[0, 2)`; defined on even lattices only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteQuadraticForm {
    bilinear: FiniteBilinearForm,
}

impl FiniteQuadraticForm {
    pub fn group(&self) -> &DiscriminantGroup {
        &self.bilinear.group
    }

    pub fn bilinear(&self) -> &FiniteBilinearForm {
        &self.bilinear
    }

    pub fn q(&self, x: &[i64]) -> Rat {
        reduce_mod(self.bilinear.group.sign_pair(self.bilinear.sign, x, x), 2)
    }

    pub fn b(&self, x: &[i64], y: &[i64]) -> Rat {
        self.bilinear.b(x, y)
    }

    /// `-q`.
    pub fn negated(&self) -> Self {
        Self { bilinear: self.bilinear.negated() }
    }

    /// Sorted `(value, multiplicity)` pairs of `q` over the whole group.
    pub fn value_multiset(&self) -> Result<Vec<(Rat, usize)>> {
        Ok(multiset(self.group().elements()?.iter().map(|x| self.q(x))))
    }

    /// Sorted `(value, multiplicity)` pairs of `q` over the elements killed by `n`.
    pub fn torsion_value_multiset(&self, n: i64) -> Result<Vec<(Rat, usize)>> {
        Ok(multiset(self.group().torsion(n)?.iter().map(|x| self.q(x))))
    }
}

/// Sorted multiplicity table of a sequence of values.
pub fn multiset(values: impl Iterator<Item = Rat>) -> Vec<(Rat, usize)> {
    let mut v: Vec<Rat> = values.collect();
    v.sort();
    let mut out: Vec<(Rat, usize)> = Vec::new();
    for x in v {
        match out.last_mut() {
            Some((y, c)) if *y == x => *c += 1,
            _ => out.push((x, 1)),
        }
    }
    out
}

/// Quadratic form for even lattices, bilinear form for odd ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DiscriminantForm {
    Quadratic(FiniteQuadraticForm),
    Bilinear(FiniteBilinearForm),
}

impl DiscriminantForm {
    pub fn group(&self) -> &DiscriminantGroup {
        match self {
            Self::Quadratic(q) => q.group(),
            Self::Bilinear(b) => b.group(),
        }
    }

    pub fn b(&self, x: &[i64], y: &[i64]) -> Rat {
        match self {
            Self::Quadratic(q) => q.b(x, y),
            Self::Bilinear(b) => b.b(x, y),
        }
    }

    pub fn is_quadratic(&self) -> bool {
        matches!(self, Self::Quadratic(_))
    }

    /// `q(x) = 0 mod 2` for quadratic forms, `b(x, x) = 0 mod 1` for bilinear ones.
    pub fn is_isotropic(&self, x: &[i64]) -> bool {
        match self {
            Self::Quadratic(q) => q.q(x) == Rat::from_integer(0),
            Self::Bilinear(b) => b.b(x, x) == Rat::from_integer(0),
        }
    }

    pub fn negated(&self) -> Self {
        match self {
            Self::Quadratic(q) => Self::Quadratic(q.negated()),
            Self::Bilinear(b) => Self::Bilinear(b.negated()),
        }
    }
}

impl IntegralLattice {
    pub fn discriminant_bilinear_form(&self) -> FiniteBilinearForm {
        FiniteBilinearForm::new(self.discriminant_group())
    }

    pub fn discriminant_quadratic_form(&self) -> Result<FiniteQuadraticForm> {
        if !self.is_even() {
            return Err(LatticeError::ParityError);
        }
        Ok(FiniteQuadraticForm { bilinear: self.discriminant_bilinear_form() })
    }

    pub fn discriminant_form(&self) -> DiscriminantForm {
        match self.discriminant_quadratic_form() {
            Ok(q) => DiscriminantForm::Quadratic(q),
            Err(_) => DiscriminantForm::Bilinear(self.discriminant_bilinear_form()),
        }
    }

    /// `x.x` for a dual vector in lattice coordinates.
    pub fn dual_norm(&self, x: &RatVector) -> Rat {
        self.pair_rational(x, x)
    }
}
