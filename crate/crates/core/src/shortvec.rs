//! Complete enumeration of short vectors in definite lattices and ADE root-system recognition.
//!
//! Enumeration is Fincke-Pohst in exact integer arithmetic. With Bareiss rows `r_k` and
//! leading minors `D_k = r_kk`, the norm splits as `Q(x) = sum z_k^2 / (D_{k-1} D_k)` where
//! `z_k = D_k x_k + sum_{j>k} r_kj x_j`, so every branch bound is an integer square root.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_integer::{Integer, Roots};

use crate::error::{LatticeError, Result};
use crate::lattice::IntegralLattice;
use crate::matrix::IntMatrix;

/// All vectors of one norm; both `v` and `-v` are listed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormSlice {
    pub norm: i64,
    pub vectors: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enumeration {
    /// The input was negative definite and its negation was enumerated.
    pub negated: bool,
    /// Slices in increasing norm; empty norms are omitted.
    pub slices: Vec<NormSlice>,
}

impl Enumeration {
    pub fn count(&self, norm: i64) -> usize {
        self.slices.iter().find(|s| s.norm == norm).map_or(0, |s| s.vectors.len())
    }

    pub fn total(&self) -> usize {
        self.slices.iter().map(|s| s.vectors.len()).sum()
    }
}

/// Exact Cholesky-type data for a positive definite Gram matrix.
struct Decomposition {
    rows: Vec<Vec<i128>>,
    weights: Vec<i128>,
    scale: i128,
}

/// `Some(true)` if positive definite, `Some(false)` if negative definite, `None` otherwise.
pub fn definiteness(gram: &IntMatrix) -> Option<bool> {
    if decompose(gram).is_some() {
        Some(true)
    } else if decompose(&gram.negated()).is_some() {
        Some(false)
    } else {
        None
    }
}

fn decompose(gram: &IntMatrix) -> Option<Decomposition> {
    let n = gram.rows();
    let mut a: Vec<Vec<i128>> = (0..n).map(|i| gram.row(i).iter().map(|&x| x as i128).collect()).collect();
    let mut prev = 1i128;
    let mut minors = Vec::with_capacity(n);
    for k in 0..n {
        if a[k][k] <= 0 {
            return None;
        }
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
        minors.push(a[k][k]);
    }
    let products: Vec<i128> =
        (0..n).map(|k| if k == 0 { minors[0] } else { minors[k - 1] * minors[k] }).collect();
    let scale = products.iter().fold(1i128, |l, p| l.lcm(p));
    let weights = products.iter().map(|p| scale / p).collect();
    Some(Decomposition { rows: a, weights, scale })
}

/// Calls `visit` on every nonzero `x` with `x^T G x <= bound`; `G` must be positive definite.
pub fn for_each_short_vector(gram: &IntMatrix, bound: i64, mut visit: impl FnMut(&[i64])) -> Result<()> {
    let dec = decompose(gram).ok_or(LatticeError::IndefiniteLattice)?;
    let n = gram.rows();
    if n == 0 || bound <= 0 {
        return Ok(());
    }
    let mut x = vec![0i64; n];
    let budget = dec.scale * bound as i128;
    search(&dec, n - 1, budget, &mut x, &mut visit);
    Ok(())
}

fn search(dec: &Decomposition, k: usize, budget: i128, x: &mut [i64], visit: &mut impl FnMut(&[i64])) {
    let row = &dec.rows[k];
    let d = row[k];
    let s: i128 = ((k + 1)..x.len()).map(|j| row[j] * x[j] as i128).sum();
    let t = (budget / dec.weights[k]).sqrt();
    let lo = Integer::div_ceil(&(-t - s), &d);
    let hi = Integer::div_floor(&(t - s), &d);
    for xk in lo..=hi {
        let z = d * xk + s;
        let rest = budget - dec.weights[k] * z * z;
        if rest < 0 {
            continue;
        }
        x[k] = xk as i64;
        if k == 0 {
            if x.iter().any(|&c| c != 0) {
                visit(x);
            }
        } else {
            search(dec, k - 1, rest, x, visit);
        }
    }
    x[k] = 0;
}

/// Every nonzero vector of norm at most `max_norm`, grouped by norm in canonical order.
pub fn enumerate_by_norm(lattice: &IntegralLattice, max_norm: i64) -> Result<Enumeration> {
    let (gram, negated) = match definiteness(lattice.gram()) {
        Some(true) => (lattice.gram().clone(), false),
        Some(false) => (lattice.gram().negated(), true),
        None => return Err(LatticeError::IndefiniteLattice),
    };
    let mut found: Vec<(i64, Vec<i64>)> = Vec::new();
    for_each_short_vector(&gram, max_norm, |v| {
        let gv = gram.mul_vec(v);
        let norm = v.iter().zip(&gv).map(|(a, b)| a * b).sum();
        found.push((norm, v.to_vec()));
    })?;
    found.sort();
    let mut slices: Vec<NormSlice> = Vec::new();
    for (norm, v) in found {
        match slices.last_mut() {
            Some(s) if s.norm == norm => s.vectors.push(v),
            _ => slices.push(NormSlice { norm, vectors: vec![v] }),
        }
    }
    Ok(Enumeration { negated, slices })
}

/// Number of vectors of exactly the given norm.
pub fn root_count(lattice: &IntegralLattice, norm: i64) -> Result<usize> {
    Ok(enumerate_by_norm(lattice, norm)?.count(norm))
}

/// Irreducible simply-laced root system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RootType {
    A(usize),
    D(usize),
    E(usize),
}

impl RootType {
    pub fn rank(&self) -> usize {
        match *self {
            RootType::A(n) | RootType::D(n) | RootType::E(n) => n,
        }
    }

    /// Number of roots.
    pub fn root_count(&self) -> usize {
        match *self {
            RootType::A(n) => n * (n + 1),
            RootType::D(n) => 2 * n * (n - 1),
            RootType::E(6) => 72,
            RootType::E(7) => 126,
            RootType::E(8) => 240,
            RootType::E(_) => 0,
        }
    }

    pub fn is_valid(&self) -> bool {
        match *self {
            RootType::A(n) => n >= 1,
            RootType::D(n) => n >= 4,
            RootType::E(n) => (6..=8).contains(&n),
        }
    }
}

impl fmt::Display for RootType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            RootType::A(n) => write!(f, "A{n}"),
            RootType::D(n) => write!(f, "D{n}"),
            RootType::E(n) => write!(f, "E{n}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootDecomposition {
    /// Irreducible components in canonical order.
    pub components: Vec<RootType>,
    pub root_count: usize,
    /// Simple roots in lattice coordinates, grouped by component.
    pub simple_roots: Vec<Vec<i64>>,
    /// Index of the root sublattice in the lattice.
    pub index: i64,
    pub negated: bool,
}

impl RootDecomposition {
    pub fn rank(&self) -> usize {
        self.components.iter().map(RootType::rank).sum()
    }
}

/// Recognizes the root system of norm-2 vectors; fails unless they span the lattice rationally.
pub fn identify_root_lattice(lattice: &IntegralLattice) -> Result<RootDecomposition> {
    let en = enumerate_by_norm(lattice, 2)?;
    let gram = if en.negated { lattice.gram().negated() } else { lattice.gram().clone() };
    let roots: Vec<Vec<i64>> = en.slices.iter().find(|s| s.norm == 2).map(|s| s.vectors.clone()).unwrap_or_default();
    let n = lattice.rank();
    let root_rank = if roots.is_empty() { 0 } else { IntMatrix::from_rows(&roots).rank() };
    if root_rank < n {
        return Err(LatticeError::NotRootGenerated { root_rank, rank: n });
    }

    // generic functional: weights base^i, base bumped until no root is on the hyperplane
    let mut base = n as i128 + 1;
    let value = |v: &[i64], base: i128| -> i128 {
        v.iter().fold((0i128, 1i128), |(acc, w), &c| (acc + c as i128 * w, w * base)).0
    };
    while roots.iter().any(|r| value(r, base) == 0) {
        base += 1;
    }
    let positive: BTreeSet<Vec<i64>> = roots.iter().filter(|r| value(r, base) > 0).cloned().collect();
    let simple: Vec<Vec<i64>> = positive
        .iter()
        .filter(|r| {
            !positive.iter().any(|s| {
                let diff: Vec<i64> = r.iter().zip(s).map(|(a, b)| a - b).collect();
                positive.contains(&diff)
            })
        })
        .cloned()
        .collect();
    debug_assert_eq!(simple.len(), n);

    let pair = |u: &[i64], v: &[i64]| -> i64 {
        let gv = gram.mul_vec(v);
        u.iter().zip(&gv).map(|(a, b)| a * b).sum()
    };
    let m = simple.len();
    let adj: Vec<Vec<usize>> =
        (0..m).map(|i| (0..m).filter(|&j| j != i && pair(&simple[i], &simple[j]) != 0).collect()).collect();
    let mut seen = vec![false; m];
    let mut parts: Vec<(RootType, Vec<Vec<i64>>)> = Vec::new();
    for start in 0..m {
        if seen[start] {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        let mut i = 0;
        while i < comp.len() {
            for &j in &adj[comp[i]] {
                if !seen[j] {
                    seen[j] = true;
                    comp.push(j);
                }
            }
            i += 1;
        }
        let kind = classify_tree(&comp, &adj)?;
        let ordered = order_component(&comp, &adj);
        parts.push((kind, ordered.iter().map(|&k| simple[k].clone()).collect()));
    }
    parts.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)));

    let simple_roots: Vec<Vec<i64>> = parts.iter().flat_map(|p| p.1.iter().cloned()).collect();
    let root_det = gram.congruence(&IntMatrix::from_rows(&simple_roots)).determinant();
    let ratio = root_det / gram.determinant();
    let index = ratio.sqrt();
    debug_assert_eq!(index * index, ratio);
    Ok(RootDecomposition {
        components: parts.iter().map(|p| p.0).collect(),
        root_count: roots.len(),
        simple_roots,
        index: index as i64,
        negated: en.negated,
    })
}

fn classify_tree(comp: &[usize], adj: &[Vec<usize>]) -> Result<RootType> {
    let m = comp.len();
    let edges: usize = comp.iter().map(|&i| adj[i].len()).sum::<usize>() / 2;
    let bad = || LatticeError::InvalidArgument("root graph is not a Dynkin diagram".into());
    if edges != m - 1 {
        return Err(bad());
    }
    let branch: Vec<usize> = comp.iter().copied().filter(|&i| adj[i].len() >= 3).collect();
    match branch.as_slice() {
        [] => Ok(RootType::A(m)),
        [b] if adj[*b].len() == 3 => {
            let mut arms: Vec<usize> = adj[*b].iter().map(|&s| arm_length(*b, s, adj)).collect();
            arms.sort_unstable();
            match arms.as_slice() {
                [1, 1, _] => Ok(RootType::D(m)),
                [1, 2, 2] => Ok(RootType::E(6)),
                [1, 2, 3] => Ok(RootType::E(7)),
                [1, 2, 4] => Ok(RootType::E(8)),
                _ => Err(bad()),
            }
        }
        _ => Err(bad()),
    }
}

fn arm_length(from: usize, start: usize, adj: &[Vec<usize>]) -> usize {
    let (mut prev, mut cur, mut len) = (from, start, 1);
    loop {
        let next: Vec<usize> = adj[cur].iter().copied().filter(|&j| j != prev).collect();
        match next.as_slice() {
            [n] => {
                prev = cur;
                cur = *n;
                len += 1;
            }
            _ => return len,
        }
    }
}

// Walks the diagram from a leaf so that chains come out in order.
fn order_component(comp: &[usize], adj: &[Vec<usize>]) -> Vec<usize> {
    let start = comp.iter().copied().filter(|&i| adj[i].len() <= 1).min().unwrap_or(comp[0]);
    let mut out = vec![start];
    let mut seen: BTreeSet<usize> = BTreeSet::new();
    seen.insert(start);
    let mut i = 0;
    while i < out.len() {
        let mut next: Vec<usize> = adj[out[i]].iter().copied().filter(|j| !seen.contains(j)).collect();
        next.sort_by_key(|&j| adj[j].len());
        for j in next {
            seen.insert(j);
            out.push(j);
        }
        i += 1;
    }
    out
}

/// All multisets of irreducible ADE types with total rank at most `max_rank`.
pub fn ade_sums(max_rank: usize) -> Vec<Vec<RootType>> {
    let mut types = Vec::new();
    for n in 1..=max_rank {
        types.push(RootType::A(n));
    }
    for n in 4..=max_rank {
        types.push(RootType::D(n));
    }
    for n in 6..=max_rank.min(8) {
        types.push(RootType::E(n));
    }
    let mut out = Vec::new();
    let mut cur = Vec::new();
    extend_sums(&types, 0, max_rank, &mut cur, &mut out);
    out
}

fn extend_sums(types: &[RootType], from: usize, left: usize, cur: &mut Vec<RootType>, out: &mut Vec<Vec<RootType>>) {
    if !cur.is_empty() {
        out.push(cur.clone());
    }
    for (i, t) in types.iter().enumerate().skip(from) {
        if t.rank() <= left {
            cur.push(*t);
            extend_sums(types, i, left - t.rank(), cur, out);
            cur.pop();
        }
    }
}
