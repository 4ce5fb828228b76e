//! Sums of squares and labelings of every admissible discriminant in the plane lattice `N`.

use alloc::format;
use alloc::vec::Vec;

use num_integer::Roots;

use crate::catalog::{n, plane_lattice_n};
use crate::error::{LatticeError, Result};
use crate::lattice::IntegralLattice;
use crate::report::{Detail, Outcome};

/// `n = x^2 + y^2 + z^2 + u^2` with `x >= y >= z >= u >= 0`, lexicographically smallest.
pub fn four_squares(n: u64) -> (u64, u64, u64, u64) {
    for x in 0..=n.sqrt() {
        for y in 0..=x {
            for z in 0..=y {
                let used = x * x + y * y + z * z;
                if used > n {
                    break;
                }
                let rest = n - used;
                let u = rest.sqrt();
                if u * u == rest && u <= z {
                    return (x, y, z, u);
                }
            }
        }
    }
    unreachable!("every nonnegative integer is a sum of four squares")
}

/// `n = 2x^2 + 2y^2 + 2z^2 + 3u^2` with `x >= y >= z >= 0`, `u >= 0`, lexicographically smallest.
///
/// `None` exactly for `n` in `{1, 17}`.
pub fn ramanujan_rep(n: u64) -> Option<(u64, u64, u64, u64)> {
    for x in 0..=(n / 2).sqrt() {
        for y in 0..=x {
            for z in 0..=y {
                let used = 2 * (x * x + y * y + z * z);
                if used > n {
                    break;
                }
                let rest = n - used;
                if rest % 3 != 0 {
                    continue;
                }
                let u = (rest / 3).sqrt();
                if u * u == rest / 3 {
                    return Some((x, y, z, u));
                }
            }
        }
    }
    None
}

/// Admissible discriminants: `d > 6`, `d = 0, 2 mod 6`.
pub fn is_admissible(d: i64) -> bool {
    d > 6 && (d % 6 == 0 || d % 6 == 2)
}

pub fn admissible_discriminants(d_max: i64) -> Vec<i64> {
    (7..=d_max).filter(|&d| is_admissible(d)).collect()
}

/// How the labeling vector was chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Witness {
    /// `v = x1 a1 + x3 a3 + x5 a5 + x7 a7 + s beta + t gamma`.
    Formula { x1: i64, x3: i64, x5: i64, x7: i64, s: i64, t: i64 },
    /// `v = P`, disc 8.
    Plane,
    /// `v = y - F2 - F4 - F6 - F8`, disc 14.
    Special14,
}

impl From<Witness> for Detail {
    fn from(w: Witness) -> Self {
        match w {
            Witness::Formula { x1, x3, x5, x7, s, t } => {
                Detail::map([("x1", x1), ("x3", x3), ("x5", x5), ("x7", x7), ("s", s), ("t", t)])
            }
            Witness::Plane => Detail::from("P"),
            Witness::Special14 => Detail::from("y-F2-F4-F6-F8"),
        }
    }
}

/// Rank-2 sublattice `<eta, v>` of `N` with its recomputed invariants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Labeling {
    pub d: i64,
    /// Coordinates in the `eta, y, F1..F9` basis.
    pub v: Vec<i64>,
    pub witness: Witness,
    pub norm: i64,
    pub eta_pairing: i64,
    /// `3 v.v - (eta.v)^2`.
    pub discriminant: i64,
    /// Index of `<eta, v>` in its saturation.
    pub saturation_index: i64,
    /// False when the case-split witness was not saturated and a searched one replaced it.
    pub from_case_split: bool,
}

impl Labeling {
    /// Discriminant equals `d` and the span is saturated.
    pub fn verified(&self) -> bool {
        self.discriminant == self.d && self.saturation_index == 1
    }
}

fn formula_vector(x1: i64, x3: i64, x5: i64, x7: i64, s: i64, t: i64) -> Vec<i64> {
    let terms = [
        (x1, n::alpha(1)),
        (x3, n::alpha(3)),
        (x5, n::alpha(5)),
        (x7, n::alpha(7)),
        (s, n::beta()),
        (t, n::gamma()),
    ];
    terms.iter().fold(n::scale(&n::eta(), 0), |acc, (c, v)| n::add(&acc, &n::scale(v, *c)))
}

/// Solves `k = 2(x1^2 + x3^2 + x5^2 + x7^2) + 3t^2` for `k >= 2`.
fn solve_case_one(k: u64) -> Option<(i64, i64, i64, i64, i64)> {
    if k % 2 == 0 {
        let m = k / 2;
        let (a, b, c, t) = if m == 1 { (0, 0, 0, 0) } else { ramanujan_rep(2 * (m - 1))? };
        Some((1, a as i64, b as i64, c as i64, t as i64))
    } else {
        let m = (k - 1) / 2;
        let (a, b, c, e) = four_squares(m.checked_sub(1)?);
        Some((a as i64, b as i64, c as i64, e as i64, 1))
    }
}

fn witness_for(d: i64) -> Option<Witness> {
    let k = (d / 6) as u64;
    match d % 6 {
        0 => {
            let (x1, x3, x5, x7, t) = solve_case_one(k)?;
            Some(Witness::Formula { x1, x3, x5, x7, s: 0, t })
        }
        _ if d == 8 => Some(Witness::Plane),
        _ if d == 14 => Some(Witness::Special14),
        _ => {
            let (x1, x3, x5, x7, t) = solve_case_one(k - 1)?;
            Some(Witness::Formula { x1, x3, x5, x7, s: 1, t })
        }
    }
}

fn vector_of(w: Witness) -> Vec<i64> {
    match w {
        Witness::Formula { x1, x3, x5, x7, s, t } => formula_vector(x1, x3, x5, x7, s, t),
        Witness::Plane => n::p(),
        Witness::Special14 => [2, 4, 6, 8].iter().fold(n::y(), |acc, &i| n::sub(&acc, &n::f(i))),
    }
}

/// Labeling of discriminant `d` in `N`, built by the case split on `d mod 6` and `d / 6`.
pub fn labeling_for_d(d: i64) -> Result<Labeling> {
    labeling_in(&plane_lattice_n(), d)
}

fn labeling_in(lattice: &IntegralLattice, d: i64) -> Result<Labeling> {
    if !is_admissible(d) {
        return Err(LatticeError::NotAHassettDiscriminant(d));
    }
    let witness = witness_for(d).ok_or(LatticeError::NotAHassettDiscriminant(d))?;
    let first = evaluate(lattice, d, witness, true)?;
    if first.verified() {
        return Ok(first);
    }
    for w in formula_witnesses(d) {
        let l = evaluate(lattice, d, w, false)?;
        if l.verified() {
            return Ok(l);
        }
    }
    Ok(first)
}

fn evaluate(lattice: &IntegralLattice, d: i64, witness: Witness, from_case_split: bool) -> Result<Labeling> {
    let v = vector_of(witness);
    let eta = n::eta();
    let norm = lattice.norm(&v);
    let eta_pairing = lattice.pair(&eta, &v);
    let discriminant = lattice.norm(&eta) * norm - eta_pairing * eta_pairing;
    let saturation_index = lattice.saturation(&[eta, v.clone()])?.index;
    Ok(Labeling { d, v, witness, norm, eta_pairing, discriminant, saturation_index, from_case_split })
}

/// All `d = 12(x1^2 + x3^2 + x5^2 + x7^2) + 18t^2 + 8s^2` with `x1 >= x3 >= x5 >= x7 >= 0`,
/// ordered by `(s, t, x1, x3, x5, x7)`.
fn formula_witnesses(d: i64) -> impl Iterator<Item = Witness> {
    let mut out = Vec::new();
    let mut s = 0;
    while 8 * s * s <= d {
        let mut t = 0;
        while 8 * s * s + 18 * t * t <= d {
            let rest = d - 8 * s * s - 18 * t * t;
            if rest % 12 == 0 {
                let q = rest / 12;
                let r = q.sqrt();
                for x1 in 0..=r {
                    for x3 in 0..=x1 {
                        for x5 in 0..=x3 {
                            let used = x1 * x1 + x3 * x3 + x5 * x5;
                            if used > q {
                                break;
                            }
                            let x7 = (q - used).sqrt();
                            if x7 * x7 == q - used && x7 <= x5 {
                                out.push(Witness::Formula { x1, x3, x5, x7, s, t });
                            }
                        }
                    }
                }
            }
            t += 1;
        }
        s += 1;
    }
    out.into_iter()
}

/// Labels every admissible `d <= d_max` and verifies each labeling.
pub fn hassett_sweep(d_max: i64) -> Outcome {
    let lattice = plane_lattice_n();
    let mut out = Outcome::new();
    let ds = admissible_discriminants(d_max);
    out.note("d_max", d_max);
    out.note("admissible", ds.len());
    let mut failures = Vec::new();
    let mut labeled = 0usize;
    let mut replaced = Vec::new();
    for &d in &ds {
        match labeling_in(&lattice, d) {
            Ok(l) if l.verified() => {
                labeled += 1;
                if !l.from_case_split {
                    replaced.push(Detail::from(d));
                }
            }
            Ok(l) => failures.push(Detail::from(format!("d={d}: disc {} index {}", l.discriminant, l.saturation_index))),
            Err(e) => failures.push(Detail::from(format!("d={d}: {e}"))),
        }
    }
    out.note("labeled", labeled);
    out.note("searched_witnesses", Detail::List(replaced));
    out.require("all_labeled", failures.is_empty());
    out.note("failures", Detail::List(failures));
    if d_max >= 14 {
        if let Ok(l) = labeling_in(&lattice, 14) {
            out.expect_eq("d14.norm", l.norm, 5);
            out.expect_eq("d14.eta_pairing", l.eta_pairing, 1);
        }
    }
    out
}
