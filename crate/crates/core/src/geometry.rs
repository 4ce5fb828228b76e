//! Vector-level certificates on the algebraic lattice of a cubic fourfold: plane classes,
//! admissibility rules for saturations, scroll screens and intersection parity arguments.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;

use crate::catalog::{delta_in_m, n, plane_lattice_n, prim_lattice_m, scroll_lattice, standard, N_RANK};
use crate::discriminant::DiscriminantForm;
use crate::error::{LatticeError, Result};
use crate::glue::{overlattice_from_glue, GlueSubgroup};
use crate::hassett::is_admissible;
use crate::lattice::IntegralLattice;
use crate::matrix::{smith_normal_form, IntMatrix, RatVector};
use crate::report::{Detail, Outcome};
use crate::shortvec::{definiteness, for_each_short_vector};

/// Norm bound for complement scans.
pub const DEFAULT_NORM_BOUND: i64 = 12;
/// Discriminant bound for labeling scans.
pub const DEFAULT_DISC_BOUND: i64 = 18;

/// Constraints every algebraic lattice of a smooth cubic fourfold satisfies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rule {
    /// `eta^perp` is even.
    R1,
    /// No `w` with `w.eta = 0`, `w.w = 2`.
    R2,
    /// No `w` with `w.eta = 0`, `w.w = 6` and divisibility 3 in `eta^perp`.
    R3,
    /// Every saturated `<eta, v>` has admissible discriminant.
    R4,
}

impl Rule {
    pub const ALL: [Rule; 4] = [Rule::R1, Rule::R2, Rule::R3, Rule::R4];

    pub fn id(self) -> &'static str {
        match self {
            Rule::R1 => "R1",
            Rule::R2 => "R2",
            Rule::R3 => "R3",
            Rule::R4 => "R4",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            Rule::R1 => "every w with w.eta = 0 has even norm",
            Rule::R2 => "no w with w.eta = 0 and w.w = 2 (short root)",
            Rule::R3 => "no w with w.eta = 0, w.w = 6 and divisibility 3 in eta^perp (long root)",
            Rule::R4 => "every saturated rank-2 <eta, v> has disc d > 6 with d = 0, 2 mod 6",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// A vector breaking one rule, in the coordinates of the scanned lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub rule: Rule,
    pub vector: Vec<i64>,
    pub norm: i64,
    pub eta_pairing: i64,
    /// Labeling discriminant for R4, divisibility in `eta^perp` for R3, else 0.
    pub value: i64,
}

impl Violation {
    /// Re-derives the violation from `lattice` and `eta` alone.
    pub fn recheck(&self, lattice: &IntegralLattice, eta: &[i64]) -> Result<bool> {
        let norm = lattice.norm(&self.vector);
        let pairing = lattice.pair(eta, &self.vector);
        if norm != self.norm || pairing != self.eta_pairing {
            return Ok(false);
        }
        Ok(match self.rule {
            Rule::R1 => pairing == 0 && norm % 2 != 0,
            Rule::R2 => pairing == 0 && norm == 2,
            Rule::R3 => {
                let comp = lattice.orthogonal_complement(&[eta.to_vec()])?;
                let div = (0..comp.basis.rows())
                    .map(|i| lattice.pair(comp.basis.row(i), &self.vector))
                    .fold(0i64, |g, x| g.gcd(&x));
                pairing == 0 && norm == 6 && div % 3 == 0 && div == self.value
            }
            Rule::R4 => {
                let disc = lattice.norm(eta) * norm - pairing * pairing;
                let sat = lattice.saturation(&[eta.to_vec(), self.vector.clone()])?;
                sat.index == 1 && disc == self.value && !is_admissible(disc)
            }
        })
    }
}

impl From<&Violation> for Detail {
    fn from(v: &Violation) -> Self {
        Detail::map([
            ("rule", Detail::from(v.rule.id())),
            ("vector", Detail::from(v.vector.clone())),
            ("norm", Detail::from(v.norm)),
            ("eta_pairing", Detail::from(v.eta_pairing)),
            ("value", Detail::from(v.value)),
        ])
    }
}

/// Outcome of [`admissibility_scan`]: the smallest witness of each violated rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanReport {
    pub violations: Vec<Violation>,
}

impl ScanReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn first(&self) -> Option<&Violation> {
        self.violations.first()
    }

    pub fn rules(&self) -> Vec<Rule> {
        self.violations.iter().map(|v| v.rule).collect()
    }

    pub fn get(&self, rule: Rule) -> Option<&Violation> {
        self.violations.iter().find(|v| v.rule == rule)
    }
}

/// `L / Z eta` with the form `Q(v) = eta.eta v.v - (eta.v)^2`, positive definite when `L` is.
struct EtaQuotient {
    /// Rows in `L` coordinates; together with `eta` a basis of `L`.
    basis: Vec<Vec<i64>>,
    gram: IntMatrix,
}

impl EtaQuotient {
    fn new(lattice: &IntegralLattice, eta: &[i64]) -> Result<Self> {
        let snf = smith_normal_form(&IntMatrix::from_rows(&[eta.to_vec()]));
        if snf.diagonal.first().copied() != Some(1) {
            return Err(LatticeError::InvalidArgument("eta must be primitive".into()));
        }
        let basis: Vec<Vec<i64>> = (1..lattice.rank()).map(|i| snf.v_inv.row(i).to_vec()).collect();
        let e2 = lattice.norm(eta);
        let pe: Vec<i64> = basis.iter().map(|b| lattice.pair(eta, b)).collect();
        let k = basis.len();
        let mut gram = IntMatrix::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                gram[(i, j)] = e2 * lattice.pair(&basis[i], &basis[j]) - pe[i] * pe[j];
            }
        }
        Ok(Self { basis, gram })
    }

    fn lift(&self, c: &[i64]) -> Vec<i64> {
        let n = self.basis.first().map_or(0, Vec::len);
        let mut v = vec![0; n];
        for (ci, b) in c.iter().zip(&self.basis) {
            for (x, y) in v.iter_mut().zip(b) {
                *x += ci * y;
            }
        }
        v
    }
}

fn check_eta(lattice: &IntegralLattice, eta: &[i64]) -> Result<()> {
    lattice.check_dim(eta)?;
    if definiteness(lattice.gram()) != Some(true) {
        return Err(LatticeError::IndefiniteLattice);
    }
    if lattice.norm(eta) != 3 {
        return Err(LatticeError::InvalidArgument("eta must have norm 3".into()));
    }
    Ok(())
}

/// Every `v` with `v.v = 3` and `v.eta = 1`, sorted.
///
/// Complete: such `v` satisfy `Q(v) = 3 * 3 - 1 = 8` on `L / Z eta`.
pub fn enumerate_planes(lattice: &IntegralLattice, eta: &[i64]) -> Result<Vec<Vec<i64>>> {
    check_eta(lattice, eta)?;
    if lattice.rank() == 1 {
        return Ok(Vec::new());
    }
    let quotient = EtaQuotient::new(lattice, eta)?;
    let mut planes = Vec::new();
    for_each_short_vector(&quotient.gram, 8, |c| {
        let v0 = quotient.lift(c);
        let e = lattice.pair(eta, &v0);
        if (1 - e) % 3 == 0 {
            let k = (1 - e) / 3;
            let v: Vec<i64> = v0.iter().zip(eta).map(|(a, b)| a + k * b).collect();
            if lattice.norm(&v) == 3 {
                planes.push(v);
            }
        }
    })?;
    planes.sort();
    Ok(planes)
}

/// Checks rules R1-R4 on a positive definite `lattice` with `eta.eta = 3`.
///
/// R2 and R3 are scanned on `eta^perp` up to `norm_bound`; R4 on labelings up to `disc_bound`.
pub fn admissibility_scan(lattice: &IntegralLattice, eta: &[i64], norm_bound: i64, disc_bound: i64) -> Result<ScanReport> {
    check_eta(lattice, eta)?;
    let mut violations = Vec::new();
    let comp = lattice.orthogonal_complement(&[eta.to_vec()])?;
    let to_ambient = |c: &[i64]| -> Vec<i64> {
        let mut v = vec![0; lattice.rank()];
        for (ci, row) in c.iter().zip(comp.basis.row_vecs()) {
            for (x, y) in v.iter_mut().zip(&row) {
                *x += ci * y;
            }
        }
        v
    };
    let cg = comp.lattice.gram().clone();
    if let Some(i) = (0..cg.rows()).find(|&i| cg[(i, i)] % 2 != 0) {
        let w = comp.basis.row(i).to_vec();
        violations.push(Violation { rule: Rule::R1, norm: lattice.norm(&w), eta_pairing: 0, vector: w, value: 0 });
    }
    let mut short: Option<Vec<i64>> = None;
    let mut long: Option<(Vec<i64>, i64)> = None;
    if cg.rows() > 0 {
        for_each_short_vector(&cg, norm_bound.max(0), |c| {
            let gc = cg.mul_vec(c);
            let norm: i64 = c.iter().zip(&gc).map(|(a, b)| a * b).sum();
            if norm == 2 {
                let w = to_ambient(c);
                if short.as_ref().is_none_or(|s| w < *s) {
                    short = Some(w);
                }
            } else if norm == 6 {
                let div = gc.iter().fold(0i64, |g, x| g.gcd(x));
                if div % 3 == 0 {
                    let w = to_ambient(c);
                    if long.as_ref().is_none_or(|(s, _)| w < *s) {
                        long = Some((w, div));
                    }
                }
            }
        })?;
    }
    if let Some(w) = short {
        violations.push(Violation { rule: Rule::R2, norm: 2, eta_pairing: 0, vector: w, value: 0 });
    }
    if let Some((w, div)) = long {
        violations.push(Violation { rule: Rule::R3, norm: 6, eta_pairing: 0, vector: w, value: div });
    }
    if disc_bound > 0 && lattice.rank() > 1 {
        let quotient = EtaQuotient::new(lattice, eta)?;
        let mut best: Option<(i64, Vec<i64>)> = None;
        for_each_short_vector(&quotient.gram, disc_bound, |c| {
            if c.iter().fold(0i64, |g, x| g.gcd(x)) != 1 {
                return;
            }
            let gc = quotient.gram.mul_vec(c);
            let disc: i64 = c.iter().zip(&gc).map(|(a, b)| a * b).sum();
            if is_admissible(disc) {
                return;
            }
            let v = quotient.lift(c);
            let key = (disc, v);
            if best.as_ref().is_none_or(|b| key < *b) {
                best = Some(key);
            }
        })?;
        if let Some((disc, v)) = best {
            violations.push(Violation {
                rule: Rule::R4,
                norm: lattice.norm(&v),
                eta_pairing: lattice.pair(eta, &v),
                vector: v,
                value: disc,
            });
        }
    }
    Ok(ScanReport { violations })
}

/// Support pattern family of an even-support class in `A_N`, numbered 1..=9.
pub fn saturation_family(has_eta: bool, f_count: usize) -> usize {
    if has_eta {
        5 + (f_count - 1) / 2
    } else {
        f_count / 2
    }
}

/// Expected family sizes.
pub const FAMILY_SIZES: [usize; 9] = [36, 126, 84, 9, 9, 84, 126, 36, 1];

/// One index-2 overlattice of `N` and its scan.
#[derive(Clone, Debug)]
pub struct SaturationCase {
    /// Bit 0 for `eta*`, bit `i` for `F_i*`.
    pub support: u16,
    pub family: usize,
    /// Glue vector `(sum of support)/2` reduced, in `N` coordinates.
    pub glue: RatVector,
    pub scan: ScanReport,
}

impl SaturationCase {
    pub fn label(&self) -> String {
        let mut parts = Vec::new();
        if self.support & 1 != 0 {
            parts.push(String::from("eta*"));
        }
        for i in 1..=9 {
            if self.support & (1 << i) != 0 {
                parts.push(format!("F{i}*"));
            }
        }
        parts.join("+")
    }
}

/// Scans one even-support class `support` (bit 0 for `eta*`, bit `i` for `F_i*`).
pub fn saturation_case(support: u16, norm_bound: i64, disc_bound: i64) -> Result<SaturationCase> {
    let lattice = plane_lattice_n();
    let form = lattice.discriminant_form();
    let group = form.group().clone();
    let mut x = group.zero();
    let mut f_count = 0;
    for bit in 0..10 {
        if support & (1 << bit) != 0 {
            let idx = if bit == 0 { 0 } else { bit + 1 };
            let e = group.element_of(&lattice.dual_basis_vector(idx))?;
            x = group.add(&x, &e);
            if bit > 0 {
                f_count += 1;
            }
        }
    }
    let family = saturation_family(support & 1 != 0, f_count);
    let glue = GlueSubgroup::new(&form, vec![x.clone()])?;
    let over = overlattice_from_glue(&lattice, &glue)?;
    let eta = over
        .coordinates(&RatVector::integral(&n::eta()))
        .to_integral()
        .ok_or(LatticeError::NotIntegral { row: 0, col: 0, numer: 0, denom: 2 })?;
    let scan = admissibility_scan(&over.lattice, &eta, norm_bound, disc_bound)?;
    Ok(SaturationCase { support, family, glue: group.lift(&x), scan })
}

/// All nonzero even-support subsets of `{eta*, F_1*, ..., F_9*}` in increasing bit order.
pub fn even_supports() -> Vec<u16> {
    (1u16..1 << 10).filter(|s| s.count_ones() % 2 == 0).collect()
}

/// Certifies that `N` has no admissible index-2 overlattice.
pub fn saturation_certificate() -> Outcome {
    saturation_certificate_with(DEFAULT_NORM_BOUND, DEFAULT_DISC_BOUND, |s| {
        saturation_case(s, DEFAULT_NORM_BOUND, DEFAULT_DISC_BOUND)
    })
}

/// Aggregates case results produced by `run`, so callers may evaluate cases in parallel.
pub fn saturation_certificate_with(
    norm_bound: i64,
    disc_bound: i64,
    mut run: impl FnMut(u16) -> Result<SaturationCase>,
) -> Outcome {
    let mut out = Outcome::new();
    out.note("norm_bound", norm_bound);
    out.note("disc_bound", disc_bound);
    let lattice = plane_lattice_n();
    let form = lattice.discriminant_form();
    let group = form.group();
    out.expect_eq("a_n_factors", group.invariant_factors().to_vec(), vec![2; 10]);
    let supports = even_supports();
    out.expect_eq("classes", supports.len(), 511);
    let mut sizes = [0usize; 9];
    let mut rules: BTreeMap<usize, Vec<Rule>> = BTreeMap::new();
    let mut min_disc: BTreeMap<usize, i64> = BTreeMap::new();
    let mut accepted = Vec::new();
    let mut rechecks_ok = true;
    let mut isotropic = true;
    let cases: Vec<Result<SaturationCase>> = supports.iter().map(|&s| run(s)).collect();
    for case in cases {
        let case = match case {
            Ok(c) => c,
            Err(e) => {
                out.error("case", e);
                continue;
            }
        };
        sizes[case.family - 1] += 1;
        if let DiscriminantForm::Bilinear(b) = &form {
            let x = group.element_of(&case.glue).unwrap_or_default();
            isotropic &= b.b(&x, &x) == crate::matrix::Rat::from_integer(0);
        }
        if case.scan.passed() {
            accepted.push(Detail::from(case.label()));
        }
        let entry = rules.entry(case.family).or_default();
        for r in case.scan.rules() {
            if !entry.contains(&r) {
                entry.push(r);
            }
        }
        if let Some(v) = case.scan.get(Rule::R4) {
            let m = min_disc.entry(case.family).or_insert(v.value);
            *m = (*m).min(v.value);
        }
        let over = overlattice_for(case.support);
        if let Ok((l, eta)) = over {
            for v in &case.scan.violations {
                rechecks_ok &= v.recheck(&l, &eta).unwrap_or(false);
            }
        } else {
            rechecks_ok = false;
        }
    }
    out.expect_eq("family_sizes", sizes.to_vec(), FAMILY_SIZES.to_vec());
    out.require("all_isotropic", isotropic);
    let families: Vec<Detail> = rules
        .iter()
        .map(|(f, rs)| {
            let mut rs = rs.clone();
            rs.sort();
            Detail::map([
                ("family", Detail::from(*f)),
                ("rules", Detail::List(rs.iter().map(|r| Detail::from(r.id())).collect())),
                ("min_r4_disc", min_disc.get(f).map_or(Detail::from("none"), |d| Detail::from(*d))),
            ])
        })
        .collect();
    out.note("families", Detail::List(families));
    out.require("witnesses_recheck", rechecks_ok);
    out.require("all_rejected", accepted.is_empty());
    out.note("accepted", Detail::List(accepted));
    out
}

fn overlattice_for(support: u16) -> Result<(IntegralLattice, Vec<i64>)> {
    let lattice = plane_lattice_n();
    let form = lattice.discriminant_form();
    let group = form.group().clone();
    let mut x = group.zero();
    for bit in 0..10 {
        if support & (1 << bit) != 0 {
            let idx = if bit == 0 { 0 } else { bit + 1 };
            x = group.add(&x, &group.element_of(&lattice.dual_basis_vector(idx))?);
        }
    }
    let over = overlattice_from_glue(&lattice, &GlueSubgroup::new(&form, vec![x])?)?;
    let eta = over.coordinates(&RatVector::integral(&n::eta())).to_integral().ok_or(LatticeError::NotInDual)?;
    Ok((over.lattice, eta))
}

/// Scroll lattices `K_tau`: definiteness range and root screens of `eta^perp`.
pub fn scroll_screen() -> Outcome {
    let mut out = Outcome::new();
    let mut definite = Vec::new();
    for tau in -3..=9 {
        let pd = scroll_lattice(tau).map(|l| l.is_positive_definite()).unwrap_or(false);
        if pd {
            definite.push(tau);
        }
    }
    out.expect_eq("positive_definite_tau", definite, (0..=6).collect::<Vec<i64>>());
    for tau in 0..=6 {
        let l = match scroll_lattice(tau) {
            Ok(l) => l,
            Err(e) => {
                out.error(&format!("tau{tau}"), e);
                continue;
            }
        };
        let eta = l.basis_vector(0);
        let alpha1 = n::sub(&l.basis_vector(1), &eta);
        let alpha2 = n::sub(&l.basis_vector(2), &eta);
        let scan = match admissibility_scan(&l, &eta, 6, 0) {
            Ok(s) => s,
            Err(e) => {
                out.error(&format!("tau{tau}"), e);
                continue;
            }
        };
        let key = format!("tau{tau}");
        match tau {
            0 | 6 => {
                let w = if tau == 0 { n::add(&alpha1, &alpha2) } else { n::sub(&alpha1, &alpha2) };
                out.expect_eq(&format!("{key}.explicit_norm"), l.norm(&w), 2);
                out.require(&format!("{key}.short_root"), scan.get(Rule::R2).is_some());
            }
            2 | 4 => {
                let w = if tau == 2 { n::add(&alpha1, &alpha2) } else { n::sub(&alpha1, &alpha2) };
                out.expect_eq(&format!("{key}.explicit_norm"), l.norm(&w), 6);
                let div = [&alpha1, &alpha2].iter().map(|a| l.pair(a, &w)).fold(0i64, |g, x| g.gcd(&x));
                out.expect_eq(&format!("{key}.explicit_divisibility"), div, 3);
                out.require(&format!("{key}.long_root"), scan.get(Rule::R3).is_some());
            }
            _ => {
                out.require(&format!("{key}.no_roots"), scan.get(Rule::R2).is_none() && scan.get(Rule::R3).is_none());
            }
        }
    }
    out
}

/// Pairings of every plane class with every other, as `(product, count)` over unordered pairs.
pub fn plane_product_distribution(lattice: &IntegralLattice, planes: &[Vec<i64>]) -> Vec<(i64, usize)> {
    let mut dist: BTreeMap<i64, usize> = BTreeMap::new();
    for i in 0..planes.len() {
        for j in (i + 1)..planes.len() {
            *dist.entry(lattice.pair(&planes[i], &planes[j])).or_default() += 1;
        }
    }
    dist.into_iter().collect()
}

fn distribution_detail(dist: &[(i64, usize)]) -> Detail {
    Detail::List(
        dist.iter()
            .map(|(p, c)| Detail::map([("product", Detail::from(*p)), ("count", Detail::from(*c))]))
            .collect(),
    )
}

/// No two planes in `X` are disjoint.
pub fn pfaffian_certificate() -> Outcome {
    let mut out = Outcome::new();
    let m = prim_lattice_m();
    out.require("g_m_entries_even", m.gram().entries().iter().all(|x| x % 2 == 0));
    let delta = delta_in_m();
    out.expect_eq("delta_norm", m.norm(&delta), 24);
    let nl = plane_lattice_n();
    let d_n = n::delta();
    out.expect_eq("delta_eta", nl.pair(&d_n, &n::eta()), 0);
    // v = P - P' with P.P' = 0 pairs with delta = eta - 3P to (eta.P - eta.P') - 3 (P.P - P.P')
    let (eta_p, eta_q, p_p, p_q) = (1i64, 1i64, 3i64, 0i64);
    let hypothetical = (eta_p - eta_q) - 3 * (p_p - p_q);
    out.expect_eq("disjoint_difference_delta_pairing", hypothetical, -9);
    out.require("pairing_odd", hypothetical % 2 != 0);
    match enumerate_planes(&nl, &n::eta()) {
        Ok(planes) => {
            out.note("plane_count", planes.len());
            let dist = plane_product_distribution(&nl, &planes);
            let disjoint = dist.iter().find(|(p, _)| *p == 0).map_or(0, |(_, c)| *c);
            out.note("product_distribution", distribution_detail(&dist));
            out.expect_eq("disjoint_pairs", disjoint, 0);
        }
        Err(e) => out.error("planes", e),
    }
    out
}

/// The class `T = 2 eta - y + F7 + F8 + F9` is a smooth quartic scroll.
pub fn oadp_certificate() -> Outcome {
    let mut out = Outcome::new();
    let nl = plane_lattice_n();
    let t = n::scroll();
    out.expect_eq("t_eta", nl.pair(&t, &n::eta()), 4);
    out.expect_eq("t_norm", nl.norm(&t), 10);
    match enumerate_planes(&nl, &n::eta()) {
        Ok(planes) => {
            let products: Vec<i64> = planes.iter().map(|p| nl.pair(p, &t)).collect();
            out.note("plane_count", planes.len());
            out.note("min_product", products.iter().copied().min().unwrap_or(0));
            out.note("max_product", products.iter().copied().max().unwrap_or(0));
            out.require("all_plane_products_even", products.iter().all(|x| x % 2 == 0));
            out.require("case1_rejected", nl.norm(&n::p()) % 2 != 0);
            out.require("case2_rejected", !products.contains(&-1));
        }
        Err(e) => out.error("planes", e),
    }
    out.note("conclusion", "smooth quartic rational normal scroll");
    out
}

/// Every class of `N` meets the quadric `Q = eta - P` evenly.
pub fn trivial_rationality_certificate() -> Outcome {
    let mut out = Outcome::new();
    let nl = plane_lattice_n();
    let q = n::quadric();
    out.expect_eq("eta_q", nl.pair(&n::eta(), &q), 2);
    out.expect_eq("y_q", nl.pair(&n::y(), &q), 8);
    let f: Vec<i64> = (1..=9).map(|i| nl.pair(&n::f(i), &q)).collect();
    out.expect_eq("f_q", f, vec![2; 9]);
    out.require("basis_even", (0..N_RANK).all(|i| nl.pair(&nl.basis_vector(i), &q) % 2 == 0));
    out
}

/// `A_{E8(2)}` has no element of order 3, so no plane class exists for `E8(2)`.
pub fn no_plane_order3_certificate() -> Outcome {
    let mut out = Outcome::new();
    let order3 = |l: &IntegralLattice| -> Result<usize> { Ok(l.discriminant_group().torsion(3)?.len() - 1) };
    let e8 = standard("E8", 2).expect("E8 is standard");
    out.expect_eq("a_e8_2_order", e8.discriminant_group().order(), 256);
    match order3(&e8) {
        Ok(c) => {
            out.expect_eq("e8_2_order3_elements", c, 0);
        }
        Err(e) => out.error("e8_2", e),
    }
    match order3(&prim_lattice_m()) {
        Ok(c) => {
            out.require("control_m_has_order3", c > 0);
        }
        Err(e) => out.error("m", e),
    }
    let e6 = standard("E6", 2).expect("E6 is standard");
    out.expect_eq("a_e6_2_order", e6.discriminant_group().order(), 192);
    match order3(&e6) {
        Ok(c) => {
            out.require("control_e6_2_has_order3", c > 0);
        }
        Err(e) => out.error("e6_2", e),
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn planes_in_n() {
        let nl = plane_lattice_n();
        let planes = enumerate_planes(&nl, &n::eta()).unwrap();
        assert!(planes.len() >= 19);
        assert!(planes.contains(&n::p()));
        for i in 1..=9 {
            assert!(planes.contains(&n::f(i)));
            let fr = n::f_residual(i);
            assert!(planes.contains(&fr));
            assert_eq!(nl.pair(&fr, &n::f(i)), -1);
        }
    }

    #[test]
    fn no_planes_without_room() {
        let k3 = scroll_lattice(3).unwrap();
        assert!(enumerate_planes(&k3, &k3.basis_vector(0)).unwrap().is_empty());
        let three = IntegralLattice::from_gram(None, IntMatrix::from_rows(&[[3]])).unwrap();
        assert!(enumerate_planes(&three, &[1]).unwrap().is_empty());
    }

    #[test]
    fn n_is_admissible() {
        let nl = plane_lattice_n();
        let scan = admissibility_scan(&nl, &n::eta(), DEFAULT_NORM_BOUND, DEFAULT_DISC_BOUND).unwrap();
        assert!(scan.passed(), "{:?}", scan.violations);
    }

    #[test]
    fn family_four_and_six_witnesses() {
        let c = saturation_case(0b01_1111_1110, DEFAULT_NORM_BOUND, DEFAULT_DISC_BOUND).unwrap();
        assert_eq!(c.family, 4);
        assert_eq!(c.scan.get(Rule::R4).map(|v| v.value), Some(2));
        let c = saturation_case(0b00_0001_1101, DEFAULT_NORM_BOUND, DEFAULT_DISC_BOUND).unwrap();
        assert_eq!(c.family, 6);
        let disc9 = c.scan.get(Rule::R4).unwrap();
        assert!(disc9.value <= 9 && !is_admissible(disc9.value));
    }

    #[test]
    fn scroll_screen_passes() {
        let out = scroll_screen();
        assert!(out.passed, "{:?}", out.failures);
    }

    #[test]
    fn small_certificates_pass() {
        for out in [
            pfaffian_certificate(),
            oadp_certificate(),
            trivial_rationality_certificate(),
            no_plane_order3_certificate(),
        ] {
            assert!(out.passed, "{:?}", out.failures);
        }
    }
}
