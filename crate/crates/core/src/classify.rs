//! Decision procedures for 2-elementary and p-elementary lattices, unimodular complements,
//! half-rescaling, and the K3 association chains built from them.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::catalog::{hyperbolic_plane, nodal_sextic_ns, standard, transcendental_t};
use crate::discriminant::{DiscriminantGroup, FiniteQuadraticForm};
use crate::error::{LatticeError, Result};
use crate::lattice::{IntegralLattice, Signature};
use crate::matrix::{IntMatrix, Rat};
use crate::report::{multiset_detail, Detail, Outcome};

/// Signature of the K3 lattice `U^3 + E8(-1)^2`.
pub const K3_SIGNATURE: Signature = Signature::new(3, 19);

/// Classifying data of an even 2-elementary lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TwoElemInvariants {
    pub signature: Signature,
    /// Length of `A_L = (Z/2)^a`; `a <= rank`.
    pub a: usize,
    /// 0 iff every value of `q_L` lies in `Z/2Z`.
    pub delta: u8,
}

impl fmt::Display for TwoElemInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, a={}, delta={})", self.signature, self.a, self.delta)
    }
}

impl From<TwoElemInvariants> for Detail {
    fn from(t: TwoElemInvariants) -> Self {
        Detail::map([
            ("signature", Detail::from(format!("{}", t.signature))),
            ("a", Detail::from(t.a)),
            ("delta", Detail::from(t.delta as i64)),
        ])
    }
}

/// 1 if some generator of a 2-elementary form has non-integral `q`, else 0.
///
/// `q(x + y) = q(x) + q(y) + 2b(x, y)` with `2b` integral, so generators suffice.
fn delta_of(form: &FiniteQuadraticForm) -> u8 {
    let g = form.group();
    let odd = (0..g.length()).any(|i| !form.q(&g.generator(i)).is_integer());
    u8::from(odd)
}

/// `(signature, a, delta)` of an even lattice with `A_L = (Z/2)^a`.
pub fn two_elementary_invariants(lattice: &IntegralLattice) -> Result<TwoElemInvariants> {
    let form = lattice.discriminant_quadratic_form().map_err(|_| LatticeError::NotEven)?;
    let group = form.group();
    if !group.is_two_elementary() {
        let factors = group.invariant_factors().iter().copied().filter(|&d| d != 2).collect();
        return Err(LatticeError::Not2Elementary { factors });
    }
    Ok(TwoElemInvariants { signature: lattice.signature(), a: group.length(), delta: delta_of(&form) })
}

/// Existence of an even 2-elementary lattice with the given invariants.
///
/// Conditions, with `s = t_+ - t_-` and `r = t_+ + t_-`:
/// `a <= r`; `r + a` even; `delta = 0 => s = 0 mod 4`; `a = 0 => delta = 0, s = 0 mod 8`;
/// `a = 1 => s = +-1 mod 8`; `a = 2, s = 4 mod 8 => delta = 0`; `delta = 0, a = r => s = 0 mod 8`.
pub fn two_elementary_exists(sig: Signature, a: usize, delta: u8) -> bool {
    let r = sig.rank();
    let s = sig.index().rem_euclid(8);
    if delta > 1 || a > r || (r + a) % 2 != 0 {
        return false;
    }
    if delta == 0 && s % 4 != 0 {
        return false;
    }
    if a == 0 && (delta != 0 || s != 0) {
        return false;
    }
    if a == 1 && s != 1 && s != 7 {
        return false;
    }
    if a == 2 && s == 4 && delta != 0 {
        return false;
    }
    if delta == 0 && a == r && s != 0 {
        return false;
    }
    true
}

/// `Some(a)` if `A_L = (Z/p)^a`.
pub fn p_elementary_length(group: &DiscriminantGroup, p: i64) -> Option<usize> {
    group.invariant_factors().iter().all(|&d| d == p).then(|| group.length())
}

/// Invariant factors of the `p`-primary part of `A_L`.
pub fn primary_factors(group: &DiscriminantGroup, p: i64) -> Vec<i64> {
    group
        .invariant_factors()
        .iter()
        .map(|&d| {
            let mut d = d;
            let mut q = 1;
            while d % p == 0 {
                d /= p;
                q *= p;
            }
            q
        })
        .filter(|&q| q > 1)
        .collect()
}

/// Existence of an even hyperbolic lattice of signature `(1, rank - 1)` with `A = (Z/p)^a`.
///
/// Such a lattice is unique when it exists. Returns false for `p = 2`, which is outside the
/// domain of the criterion.
pub fn p_elementary_hyperbolic_exists(p: i64, rank: usize, a: usize) -> bool {
    if p < 3 || p % 2 == 0 || a > rank || rank % 2 != 0 || rank == 0 {
        return false;
    }
    if a % 2 == 0 {
        if rank % 4 != 2 {
            return false;
        }
    } else {
        let sign = if (rank / 2 - 1) % 2 == 0 { 1 } else { 3 };
        if p.rem_euclid(4) != sign {
            return false;
        }
    }
    if rank % 8 != 2 && !(rank > a && a > 0) {
        return false;
    }
    true
}

/// Signature and discriminant form forced on the orthogonal complement of a primitive
/// sublattice of an even unimodular lattice.
#[derive(Clone, Debug)]
pub struct ComplementProfile {
    pub signature: Signature,
    /// `-q_M` on `A_M`.
    pub form: FiniteQuadraticForm,
}

impl ComplementProfile {
    pub fn group(&self) -> &DiscriminantGroup {
        self.form.group()
    }

    /// Invariants of the complement when `A_M` is 2-elementary.
    pub fn two_elementary_invariants(&self) -> Option<TwoElemInvariants> {
        let group = self.group();
        group.is_two_elementary().then(|| TwoElemInvariants {
            signature: self.signature,
            a: group.length(),
            delta: delta_of(&self.form),
        })
    }
}

/// Profile of `M^perp` inside an even unimodular lattice of signature `ambient`.
pub fn unimodular_complement_profile(m: &IntegralLattice, ambient: Signature) -> Result<ComplementProfile> {
    let form = m.discriminant_quadratic_form().map_err(|_| LatticeError::NotEven)?;
    let sig = m.signature();
    if sig.positive > ambient.positive || sig.negative > ambient.negative {
        return Err(LatticeError::DoesNotFit);
    }
    Ok(ComplementProfile {
        signature: Signature::new(ambient.positive - sig.positive, ambient.negative - sig.negative),
        form: form.negated(),
    })
}

/// Number of even invariant factors of `A_L`.
pub fn two_rank(group: &DiscriminantGroup) -> usize {
    group.invariant_factors().iter().filter(|&&d| d % 2 == 0).count()
}

/// `L(1/2)`; defined exactly when `(Z/2)^rank` embeds in `A_L`.
pub fn half_rescale(lattice: &IntegralLattice) -> Result<IntegralLattice> {
    lattice.rescale(1, 2)
}

/// Whether some order-2 class of `A_{L(2)}` has non-integral `q`.
pub fn doubled_has_delta_one(lattice: &IntegralLattice) -> Result<bool> {
    let doubled = lattice.scaled(2);
    let form = doubled.discriminant_quadratic_form()?;
    Ok(form.group().torsion(2)?.iter().any(|x| !form.q(x).is_integer()))
}

/// Rank-22 even lattice `A2 + U^2 + E8^2` of signature (20, 2).
pub fn primitive_cubic_lattice() -> IntegralLattice {
    IntegralLattice::direct_sum_all(&[
        standard("A2", 1).unwrap(),
        hyperbolic_plane(),
        hyperbolic_plane(),
        standard("E8", 1).unwrap(),
        standard("E8", 1).unwrap(),
    ])
    .unwrap()
}

/// Complement of the diagonal `E8(2)` in `A2 + U^2 + E8^2`.
pub fn diagonal_e8_2_complement() -> Result<IntegralLattice> {
    let ambient = primitive_cubic_lattice();
    let n = ambient.rank();
    let start = n - 16;
    let diagonal: Vec<Vec<i64>> = (0..8)
        .map(|i| {
            let mut v = vec![0; n];
            v[start + i] = 1;
            v[start + 8 + i] = 1;
            v
        })
        .collect();
    let sub = ambient.sublattice(&IntMatrix::from_rows(&diagonal))?;
    debug_assert_eq!(sub.gram(), standard("E8", 2).unwrap().gram());
    Ok(ambient.orthogonal_complement(&diagonal)?.lattice)
}

fn values_detail(form: &FiniteQuadraticForm, n: i64) -> Result<(Vec<(Rat, usize)>, Detail)> {
    let table = form.torsion_value_multiset(n)?;
    let detail = multiset_detail(&table);
    Ok((table, detail))
}

/// `U + E6(-1)`: the unique even hyperbolic rank-8 lattice with `A = Z/3`.
pub fn hyperbolic_u_e6() -> IntegralLattice {
    hyperbolic_plane().direct_sum(&standard("E6", -1).unwrap()).with_name("U+E6(-1)")
}

/// Nonexistence certificate for a K3 partner of the cubic fourfolds with `A_prim = E8(2)`.
pub fn phi2_no_associated_k3() -> Outcome {
    phi2_chain(&hyperbolic_u_e6())
}

/// The nonexistence chain with `candidate` standing for the unique lattice `K(1/2)`.
///
/// Passes iff every step holds and the 3-parts of `q_{candidate(2)}` and the required
/// form differ. `verdict` is "no K exists" or "would exist".
pub fn phi2_chain(candidate: &IntegralLattice) -> Outcome {
    let mut out = Outcome::new();
    if let Err(e) = phi2_steps(candidate, &mut out) {
        out.error("error", e);
    }
    out
}

fn phi2_steps(candidate: &IntegralLattice, out: &mut Outcome) -> Result<()> {
    // (0) transcendental lattice T: complement of E8(2) in the primitive cubic lattice
    let t = diagonal_e8_2_complement()?;
    out.note("t.signature", format!("{}", t.signature()));
    out.note("t.invariant_factors", t.discriminant_group().invariant_factors().to_vec());
    out.expect_eq("t.determinant", t.determinant(), 768);

    // (i) K = T(-1)^perp in the K3 lattice
    let t_twist = t.negated();
    let profile = unimodular_complement_profile(&t_twist, K3_SIGNATURE)?;
    out.expect_eq("i.k_signature", format!("{}", profile.signature), format!("{}", Signature::new(1, 7)));
    let factors = profile.group().invariant_factors().to_vec();
    out.note("i.k_invariant_factors", factors.clone());
    out.expect_eq("i.k_primary_2", primary_factors(profile.group(), 2), vec![2; 8]);
    out.expect_eq("i.k_primary_3", primary_factors(profile.group(), 3), vec![3]);
    let rank_k = profile.signature.rank();

    // (ii) (Z/2)^8 in A_K with rank K = 8 makes K(1/2) integral
    out.require("ii.half_rescale_defined", two_rank(profile.group()) == rank_k);

    // (iii) K(1/2) odd would force a non-integral q on an order-2 class of A_K
    let (two_part, two_detail) = values_detail(&profile.form, 2)?;
    out.note("iii.required_2_torsion_q", two_detail);
    let two_integral = two_part.iter().all(|(v, _)| v.is_integer());
    out.require("iii.required_2_part_integral", two_integral);
    let odd_witness = IntegralLattice::from_gram(None, IntMatrix::diagonal(&[1, -1, -1, -1, -1, -1, -1, -1]))?;
    out.require("iii.odd_doubled_has_delta_one", doubled_has_delta_one(&odd_witness)?);

    // (iv) K(1/2) even, |det| = |A_K| / 2^8 = 3: hyperbolic 3-elementary with a = 1
    let half_order = profile.group().order() >> rank_k;
    out.expect_eq("iv.half_discriminant_order", half_order, 3);
    out.require("iv.exists_and_unique", p_elementary_hyperbolic_exists(3, rank_k, 1));
    let cand_group = candidate.discriminant_group();
    out.note("iv.candidate", candidate.name().unwrap_or("candidate"));
    out.require(
        "iv.candidate_invariants",
        candidate.is_even()
            && candidate.rank() == rank_k
            && candidate.signature() == Signature::new(1, 7)
            && p_elementary_length(&cand_group, 3) == Some(1),
    );

    // (v) compare 3-parts of q_{candidate(2)} and the required q_K
    let k = candidate.scaled(2);
    let k_form = k.discriminant_quadratic_form()?;
    let (cand3, cand_detail) = values_detail(&k_form, 3)?;
    let (req3, req_detail) = values_detail(&profile.form, 3)?;
    out.note("v.candidate_3_torsion_q", cand_detail);
    out.note("v.required_3_torsion_q", req_detail);
    let (cand2, _) = values_detail(&k_form, 2)?;
    out.note("v.two_parts_agree", cand2 == two_part);
    let mismatch = cand3 != req3;
    out.require("v.three_part_mismatch", mismatch);
    out.note("verdict", if mismatch { "no K exists" } else { "would exist" });
    Ok(())
}

/// Existence certificate for a K3 partner of the nodal-sextic family.
pub fn phi3_k3_exists() -> Outcome {
    let mut out = Outcome::new();
    if let Err(e) = phi3_steps(&mut out) {
        out.error("error", e);
    }
    out
}

fn phi3_steps(out: &mut Outcome) -> Result<()> {
    let expected_ns = TwoElemInvariants { signature: Signature::new(1, 9), a: 10, delta: 1 };
    let ns = nodal_sextic_ns();
    let ns_inv = two_elementary_invariants(&ns)?;
    out.expect_eq("ns.invariants", ns_inv, expected_ns);
    let model = IntegralLattice::direct_sum_all(&[
        standard("E8", -2)?,
        standard("A1", 1)?,
        standard("A1", -1)?,
    ])
    .unwrap();
    let model_inv = two_elementary_invariants(&model)?;
    out.expect_eq("model.invariants", model_inv, expected_ns);
    out.require("ns.exists", two_elementary_exists(ns_inv.signature, ns_inv.a, ns_inv.delta));
    out.require("ns.indefinite", ns_inv.signature.positive > 0 && ns_inv.signature.negative > 0);

    let profile = unimodular_complement_profile(&ns, K3_SIGNATURE)?;
    let complement = profile.two_elementary_invariants().ok_or(LatticeError::Not2Elementary {
        factors: profile.group().invariant_factors().to_vec(),
    })?;
    let expected_t = TwoElemInvariants { signature: Signature::new(2, 10), a: 10, delta: 1 };
    out.expect_eq("complement.invariants", complement, expected_t);
    let t_twist = two_elementary_invariants(&transcendental_t().negated())?;
    out.expect_eq("t_twist.invariants", t_twist, expected_t);
    let ts_model = IntegralLattice::direct_sum_all(&[
        standard("E8", -2)?,
        hyperbolic_plane(),
        standard("A1", 1)?,
        standard("A1", -1)?,
    ])
    .unwrap();
    out.expect_eq("ts_model.invariants", two_elementary_invariants(&ts_model)?, expected_t);
    out.require("complement.exists", two_elementary_exists(complement.signature, complement.a, complement.delta));
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::prim_lattice_m;

    fn sig(p: usize, n: usize) -> Signature {
        Signature::new(p, n)
    }

    #[test]
    fn transcendental_invariants() {
        let t = two_elementary_invariants(&transcendental_t()).unwrap();
        assert_eq!(t, TwoElemInvariants { signature: sig(10, 2), a: 10, delta: 1 });
        assert!(two_elementary_exists(t.signature, t.a, t.delta));
    }

    #[test]
    fn scaled_e8_and_u() {
        let e = two_elementary_invariants(&standard("E8", 2).unwrap()).unwrap();
        assert_eq!(e, TwoElemInvariants { signature: sig(8, 0), a: 8, delta: 0 });
        let u = two_elementary_invariants(&hyperbolic_plane().scaled(2)).unwrap();
        assert_eq!(u, TwoElemInvariants { signature: sig(1, 1), a: 2, delta: 0 });
    }

    #[test]
    fn non_two_elementary_rejected() {
        let err = two_elementary_invariants(&standard("A2", 1).unwrap()).unwrap_err();
        assert_eq!(err, LatticeError::Not2Elementary { factors: vec![3] });
        let odd = IntegralLattice::from_gram(None, IntMatrix::diagonal(&[1, 1])).unwrap();
        assert_eq!(two_elementary_invariants(&odd).unwrap_err(), LatticeError::NotEven);
    }

    #[test]
    fn existence_examples() {
        assert!(two_elementary_exists(sig(10, 2), 10, 1));
        assert!(two_elementary_exists(sig(8, 0), 0, 0));
        assert!(two_elementary_exists(sig(1, 9), 10, 1));
        assert!(two_elementary_exists(sig(0, 1), 1, 1));
        assert!(!two_elementary_exists(sig(4, 0), 0, 0));
        assert!(!two_elementary_exists(sig(2, 0), 3, 1));
        assert!(two_elementary_exists(sig(1, 1), 2, 0));
        assert!(two_elementary_exists(sig(1, 1), 2, 1));
    }

    #[test]
    fn hyperbolic_three_elementary() {
        assert!(p_elementary_hyperbolic_exists(3, 8, 1));
        assert!(!p_elementary_hyperbolic_exists(3, 8, 9));
        assert!(!p_elementary_hyperbolic_exists(3, 7, 1));
        let c = hyperbolic_u_e6();
        assert_eq!(c.signature(), sig(1, 7));
        assert_eq!(p_elementary_length(&c.discriminant_group(), 3), Some(1));
    }

    #[test]
    fn complement_profiles() {
        let m = prim_lattice_m();
        let p = unimodular_complement_profile(&m, sig(20, 2)).unwrap();
        assert_eq!(p.signature, sig(10, 2));
        assert_eq!(primary_factors(p.group(), 3), vec![3]);
        assert_eq!(primary_factors(p.group(), 2), vec![2; 10]);
        let e8 = standard("E8", 1).unwrap();
        let p = unimodular_complement_profile(&e8, sig(8, 0)).unwrap();
        assert_eq!(p.signature, sig(0, 0));
        assert!(p.group().is_trivial());
        let tt = transcendental_t().negated();
        assert_eq!(unimodular_complement_profile(&tt, K3_SIGNATURE).unwrap().signature, sig(1, 9));
        assert_eq!(unimodular_complement_profile(&e8, sig(7, 3)).unwrap_err(), LatticeError::DoesNotFit);
    }

    #[test]
    fn diagonal_complement_has_expected_form() {
        let t = diagonal_e8_2_complement().unwrap();
        assert_eq!(t.signature(), sig(12, 2));
        assert!(t.is_even());
        let g = t.discriminant_group();
        assert_eq!(primary_factors(&g, 2), vec![2; 8]);
        assert_eq!(primary_factors(&g, 3), vec![3]);
    }

    #[test]
    fn phi2_chain_certifies_nonexistence() {
        let out = phi2_no_associated_k3();
        assert!(out.passed, "{:?}", out.failures);
        assert_eq!(out.get("verdict"), Some(&Detail::from("no K exists")));
    }

    #[test]
    fn phi2_control_with_matching_three_part() {
        let control = hyperbolic_plane().direct_sum(&standard("E6", 1).unwrap());
        let out = phi2_chain(&control);
        assert!(!out.passed);
        assert_eq!(out.get("v.three_part_mismatch"), Some(&Detail::Bool(false)));
        assert_eq!(out.get("verdict"), Some(&Detail::from("would exist")));
    }

    #[test]
    fn phi3_chain_passes() {
        let out = phi3_k3_exists();
        assert!(out.passed, "{:?}", out.failures);
    }

    #[test]
    fn half_rescale_parity() {
        let ns = nodal_sextic_ns();
        assert_eq!(two_rank(&ns.discriminant_group()), ns.rank());
        let half = half_rescale(&ns).unwrap();
        assert!(!half.is_even());
        assert_eq!(half.determinant().abs(), 1);
        assert!(half_rescale(&standard("A2", 1).unwrap()).is_err());
        let odd = IntegralLattice::from_gram(None, IntMatrix::diagonal(&[1, -1])).unwrap();
        assert!(doubled_has_delta_one(&odd).unwrap());
        assert!(!doubled_has_delta_one(&standard("E8", 1).unwrap()).unwrap());
    }
}
