//! Lines, sixers and double sixes in the Picard lattice of a cubic surface.
//!
//! The lattice is `<1> + <-1>^6` with basis `l, e1..e6` and `K = -3l + e1 + ... + e6`, so
//! `K.K = 3` and lines are the classes with `v.v = -1`, `v.K = -1`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::Result;
use crate::lattice::IntegralLattice;
use crate::matrix::{hermite_normal_form, IntMatrix};
use crate::report::{Detail, Outcome};
use crate::shortvec::{identify_root_lattice, RootType};

pub const RANK: usize = 7;

/// `Pic(S)` with its canonical class.
#[derive(Clone, Debug)]
pub struct PicardBasis {
    pub lattice: IntegralLattice,
    pub canonical: Vec<i64>,
}

impl Default for PicardBasis {
    fn default() -> Self {
        Self::new()
    }
}

impl PicardBasis {
    pub fn new() -> Self {
        let labels = ["l", "e1", "e2", "e3", "e4", "e5", "e6"].iter().map(|s| (*s).into()).collect();
        let lattice = IntegralLattice::new(Some("Pic"), labels, IntMatrix::diagonal(&[1, -1, -1, -1, -1, -1, -1]))
            .expect("diagonal unimodular form");
        Self { lattice, canonical: vec![-3, 1, 1, 1, 1, 1, 1] }
    }

    pub fn pair(&self, u: &[i64], v: &[i64]) -> i64 {
        self.lattice.pair(u, v)
    }

    /// All 27 line classes, sorted.
    ///
    /// `sum b = 1 - 3a` and `sum b^2 = a^2 + 1` force `a` in `{0, 1, 2}` and `|b_i| <= 2`.
    pub fn line_classes(&self) -> Vec<Vec<i64>> {
        let mut lines = Vec::new();
        let mut v = vec![0i64; RANK];
        for a in 0..=2 {
            v[0] = a;
            self.fill(&mut v, 1, &mut lines);
        }
        lines.sort();
        lines
    }

    fn fill(&self, v: &mut Vec<i64>, k: usize, out: &mut Vec<Vec<i64>>) {
        if k == RANK {
            if self.pair(v, v) == -1 && self.pair(v, &self.canonical) == -1 {
                out.push(v.clone());
            }
            return;
        }
        for b in -2..=2 {
            v[k] = b;
            self.fill(v, k + 1, out);
        }
        v[k] = 0;
    }

    /// Twisted-cubic class `(-K + sum E_i) / 3` of a sixer; integral for every sixer.
    pub fn cubic_class(&self, lines: &[Vec<i64>]) -> Option<Vec<i64>> {
        let mut s: Vec<i64> = self.canonical.iter().map(|x| -x).collect();
        for line in lines {
            for (a, b) in s.iter_mut().zip(line) {
                *a += b;
            }
        }
        s.iter().all(|x| x % 3 == 0).then(|| s.iter().map(|x| x / 3).collect())
    }

    /// All sets of six pairwise disjoint lines, each with its cubic class and root.
    pub fn sixers(&self) -> Vec<Sixer> {
        let lines = self.line_classes();
        let mut out = Vec::new();
        let mut chosen = Vec::new();
        self.extend_sixer(&lines, 0, &mut chosen, &mut out);
        out
    }

    fn extend_sixer(&self, lines: &[Vec<i64>], start: usize, chosen: &mut Vec<usize>, out: &mut Vec<Sixer>) {
        if chosen.len() == 6 {
            let set: Vec<Vec<i64>> = chosen.iter().map(|&i| lines[i].clone()).collect();
            let cubic = self.cubic_class(&set).expect("sixer cubic class is integral");
            let mut root: Vec<i64> = cubic.iter().map(|x| 2 * x).collect();
            for line in &set {
                for (a, b) in root.iter_mut().zip(line) {
                    *a -= b;
                }
            }
            out.push(Sixer { lines: set, cubic, root });
            return;
        }
        for i in start..lines.len() {
            if chosen.iter().all(|&j| self.pair(&lines[i], &lines[j]) == 0) {
                chosen.push(i);
                self.extend_sixer(lines, i + 1, chosen, out);
                chosen.pop();
            }
        }
    }

    /// Index pairs `(i, j)`, `i < j`, of sixers whose roots are negatives of each other.
    pub fn double_sixes(&self, sixers: &[Sixer]) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..sixers.len() {
            for j in (i + 1)..sixers.len() {
                if sixers[i].root.iter().zip(&sixers[j].root).all(|(a, b)| *a == -b) {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

/// Six pairwise disjoint lines with the twisted-cubic class `C` and root `2C - sum E_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sixer {
    pub lines: Vec<Vec<i64>>,
    pub cubic: Vec<i64>,
    pub root: Vec<i64>,
}

/// Counts of sixer pairs by `(C.C', (alpha, beta), double six)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairTable {
    pub pairs: usize,
    /// `(C.C', (alpha, beta)) -> count`.
    pub cells: BTreeMap<(i64, i64), usize>,
    /// Pairs violating the four-case table.
    pub inconsistent: usize,
    pub double_six_pairs: usize,
}

/// Tabulates `C.C'` against `(alpha, beta)` over all unordered sixer pairs.
///
/// Table: double six iff 5; otherwise 2 iff `(alpha, beta) = -1`, 3 iff even, 4 iff 1.
pub fn pair_table(pic: &PicardBasis, sixers: &[Sixer]) -> PairTable {
    let mut cells: BTreeMap<(i64, i64), usize> = BTreeMap::new();
    let mut inconsistent = 0;
    let mut double_six_pairs = 0;
    let mut pairs = 0;
    for i in 0..sixers.len() {
        for j in (i + 1)..sixers.len() {
            pairs += 1;
            let cc = pic.pair(&sixers[i].cubic, &sixers[j].cubic);
            let ab = pic.pair(&sixers[i].root, &sixers[j].root);
            let double_six = sixers[i].root.iter().zip(&sixers[j].root).all(|(a, b)| *a == -b);
            *cells.entry((cc, ab)).or_default() += 1;
            let expected = if double_six {
                5
            } else if ab % 2 == 0 {
                3
            } else if ab == -1 {
                2
            } else if ab == 1 {
                4
            } else {
                0
            };
            if double_six {
                double_six_pairs += 1;
            }
            if cc != expected {
                inconsistent += 1;
            }
        }
    }
    PairTable { pairs, cells, inconsistent, double_six_pairs }
}

/// The 72 roots span `E6(-1)` inside `K^perp`.
pub fn roots_form_e6(pic: &PicardBasis, sixers: &[Sixer]) -> Result<bool> {
    let rows: Vec<Vec<i64>> = sixers.iter().map(|s| s.root.clone()).collect();
    let basis = hermite_normal_form(&IntMatrix::from_rows(&rows));
    let span = pic.lattice.sublattice(&basis)?;
    let decomposition = identify_root_lattice(&span.negated())?;
    let orthogonal = rows.iter().all(|r| pic.pair(r, &pic.canonical) == 0);
    Ok(orthogonal && decomposition.components == vec![RootType::E(6)] && decomposition.index == 1)
}

/// Lines, sixers, double sixes and the cubic-class intersection table.
pub fn verify() -> Outcome {
    let mut out = Outcome::new();
    let pic = PicardBasis::new();
    out.expect_eq("canonical_norm", pic.pair(&pic.canonical, &pic.canonical), 3);
    let lines = pic.line_classes();
    out.expect_eq("lines", lines.len(), 27);
    let sixers = pic.sixers();
    out.expect_eq("sixers", sixers.len(), 72);
    let doubles = pic.double_sixes(&sixers);
    out.expect_eq("double_sixes", doubles.len(), 36);
    let cubic_ok = sixers.iter().all(|s| {
        pic.pair(&s.cubic, &s.cubic) == 1
            && -pic.pair(&s.cubic, &pic.canonical) == 3
            && pic.pair(&s.root, &s.root) == -2
            && s.lines.iter().all(|e| pic.pair(&s.root, e) == 1)
    });
    out.require("cubic_classes_and_roots", cubic_ok);
    let mut roots: Vec<Vec<i64>> = sixers.iter().map(|s| s.root.clone()).collect();
    roots.sort();
    roots.dedup();
    out.expect_eq("distinct_roots", roots.len(), 72);
    match roots_form_e6(&pic, &sixers) {
        Ok(b) => {
            out.require("roots_form_e6", b);
        }
        Err(e) => out.error("roots_form_e6", e),
    }
    let table = pair_table(&pic, &sixers);
    out.expect_eq("pairs", table.pairs, 2556);
    out.expect_eq("double_six_pairs", table.double_six_pairs, 36);
    out.expect_eq("inconsistent", table.inconsistent, 0);
    let syzygetic_even: Vec<i64> = {
        let mut v: Vec<i64> = table.cells.keys().filter(|(_, ab)| ab % 2 == 0).map(|(_, ab)| *ab).collect();
        v.dedup();
        v
    };
    out.note("syzygetic_pairings", syzygetic_even);
    out.note(
        "distribution",
        Detail::List(
            table
                .cells
                .iter()
                .map(|((cc, ab), n)| {
                    Detail::map([("cc", Detail::from(*cc)), ("ab", Detail::from(*ab)), ("count", Detail::from(*n))])
                })
                .collect(),
        ),
    );
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classical_lines() {
        let pic = PicardBasis::new();
        let lines = pic.line_classes();
        assert_eq!(lines.len(), 27);
        assert!(lines.contains(&vec![0, 1, 0, 0, 0, 0, 0]));
        assert!(lines.contains(&vec![1, -1, -1, 0, 0, 0, 0]));
        assert!(lines.contains(&vec![2, 0, -1, -1, -1, -1, -1]));
    }

    #[test]
    fn exceptional_sixer() {
        let pic = PicardBasis::new();
        let six: Vec<Vec<i64>> = (1..=6).map(|i| pic.lattice.basis_vector(i)).collect();
        assert_eq!(pic.cubic_class(&six), Some(vec![1, 0, 0, 0, 0, 0, 0]));
        let sixers = pic.sixers();
        let s = sixers.iter().find(|s| s.cubic == vec![1, 0, 0, 0, 0, 0, 0]).unwrap();
        assert_eq!(s.root, vec![2, -1, -1, -1, -1, -1, -1]);
        let partner = sixers.iter().find(|t| t.root == vec![-2, 1, 1, 1, 1, 1, 1]).unwrap();
        for line in &partner.lines {
            assert_eq!(line[0], 2);
        }
    }

    #[test]
    fn verification_passes() {
        let out = verify();
        assert!(out.passed, "{:?}", out.failures);
    }
}
