//! Registry of named certificate checks.
//!
//! Ids are stable strings; `reference` states the verified claim in one line.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::catalog::{
    delta_in_m, k_tilde, m_basis_in_n, n, nodal_sextic_ns, plane_lattice_n, prim_lattice_m, root_lattice,
    root_sublattice_k, standard, transcendental_t,
};
use crate::classify::{
    doubled_has_delta_one, half_rescale, p_elementary_length, phi2_no_associated_k3, phi3_k3_exists,
    primary_factors, two_elementary_exists, two_elementary_invariants, two_rank, unimodular_complement_profile,
    TwoElemInvariants,
};
use crate::delpezzo;
use crate::error::Result;
use crate::geometry::{
    enumerate_planes, no_plane_order3_certificate, oadp_certificate, pfaffian_certificate, plane_product_distribution,
    saturation_certificate, scroll_screen, trivial_rationality_certificate,
};
use crate::glue::{glue_group, isotropic_elements, overlattice_from_glue, verify_correspondence, GlueSubgroup, Overlattice};
use crate::hassett::{hassett_sweep, labeling_for_d, ramanujan_rep, Witness};
use crate::lattice::{IntegralLattice, Parity, Signature};
use crate::matrix::{IntMatrix, Rat};
use crate::report::{multiset_detail, Detail, Outcome};
use crate::shortvec::{ade_sums, identify_root_lattice, root_count, RootType};

/// A named, self-contained certificate.
#[derive(Clone, Copy)]
pub struct Check {
    pub id: &'static str,
    pub reference: &'static str,
    pub run: fn() -> Outcome,
}

/// Hassett sweep bound used by the registry.
pub const SWEEP_BOUND: i64 = 10_000;
/// Upper bound of the Ramanujan brute-force range.
pub const RAMANUJAN_BOUND: u64 = 10_000;

static REGISTRY: &[Check] = &[
    Check {
        id: "classify.half-rescale",
        reference: "NS(1/2) is odd unimodular; doubling odd unimodular lattices gives delta = 1",
        run: half_rescale_check,
    },
    Check {
        id: "delpezzo.verify",
        reference: "27 lines, 72 sixers, 36 double sixes; C.C' = 3 + (alpha, beta) over 2556 sixer pairs",
        run: delpezzo::verify,
    },
    Check {
        id: "glue.m-from-ktilde",
        reference: "M is the overlattice of <24> + D9(2) glued by 6 xi + 2 beta; glue group Z/4",
        run: m_from_ktilde,
    },
    Check {
        id: "hassett.d14",
        reference: "d = 14 labeled by y - F2 - F4 - F6 - F8 (norm 5, eta pairing 1); d = 8 by the plane P",
        run: hassett_d14,
    },
    Check {
        id: "hassett.sweep",
        reference: "every d in (6, 10000] with d = 0, 2 mod 6 has a saturated labeling in N",
        run: || hassett_sweep(SWEEP_BOUND),
    },
    Check {
        id: "lattice.k.d9",
        reference: "the alpha-span K satisfies K(1/2) = D9 with 144 roots",
        run: k_is_d9,
    },
    Check {
        id: "lattice.ktilde.disc",
        reference: "A of <24> + D9(2) is Z/2^8 + Z/8 + Z/24-type of order 3 * 2^14 with its isotropic count",
        run: ktilde_disc,
    },
    Check {
        id: "lattice.m.gram",
        reference: "det G_M = 3072, A_M = Z/3 + (Z/2)^10, M even of signature (10, 0)",
        run: m_gram,
    },
    Check {
        id: "lattice.m.three-constructions",
        reference: "M from the basis change in N, as eta-complement data, and as glued overlattice agree",
        run: m_three_constructions,
    },
    Check {
        id: "lattice.n.planes",
        reference: "N holds exactly the plane classes P, F_i, F_i' = eta - P - F_i (19 classes)",
        run: n_planes,
    },
    Check {
        id: "lattice.n.z10",
        reference: "A_N = (Z/2)^10 generated by eta*, F_1*, ..., F_9*, on which b_N is diag(1/2)",
        run: n_z10,
    },
    Check { id: "oadp", reference: "T = 2 eta - y + F7 + F8 + F9 has T.eta = 4, T.T = 10 and even plane pairings", run: oadp_certificate },
    Check { id: "pfaffian", reference: "G_M is even, delta.delta = 24, and no two plane classes in N are disjoint", run: pfaffian_certificate },
    Check {
        id: "phi1.e6-2",
        reference: "E6(2) has det 3 * 2^6, signature (6, 0), E6(2)(1/2) = E6 with 72 roots and 3-torsion in A",
        run: phi1_e6_2,
    },
    Check {
        id: "phi2.no-associated-k3",
        reference: "no even K of signature (1, 7) with q_K matching the E8(2)-type transcendental lattice",
        run: phi2_no_associated_k3,
    },
    Check { id: "phi2.no-plane", reference: "A_{E8(2)} has no element of order 3", run: no_plane_order3_certificate },
    Check {
        id: "phi3.k3-exists",
        reference: "<2> + <-2>^9 and E8(-2) + A1 + A1(-1) share ((1,9), 10, 1); complement matches T(-1)",
        run: phi3_k3_exists,
    },
    Check {
        id: "ramanujan.exceptions",
        reference: "2x^2 + 2y^2 + 2z^2 + 3u^2 represents every 2 <= n <= 10^4 except 17",
        run: ramanujan_exceptions,
    },
    Check { id: "rationality.section", reference: "every class of N meets Q = eta - P evenly", run: trivial_rationality_certificate },
    Check {
        id: "roots.e8-exhaustive",
        reference: "among ADE sums of rank <= 8 only E8 has 240 roots; D8 has 112, D7 + A1 has 86",
        run: e8_exhaustive,
    },
    Check {
        id: "sat.511",
        reference: "all 511 index-2 overlattices of N violate an admissibility rule, split 36/126/84/9/9/84/126/36/1",
        run: saturation_certificate,
    },
    Check {
        id: "scroll.screen",
        reference: "K_tau is positive definite iff 0 <= tau <= 6; roots at tau = 0, 2, 4, 6; none at 1, 3, 5",
        run: scroll_screen,
    },
    Check {
        id: "transcend.two-elementary",
        reference: "T = E8(2) + A1 + A1(-1) + U has invariants ((10,2), 10, 1) and fits the complement of M",
        run: transcendental_two_elementary,
    },
];

/// All checks, sorted by id.
pub fn registry() -> &'static [Check] {
    REGISTRY
}

pub fn find(id: &str) -> Option<&'static Check> {
    REGISTRY.iter().find(|c| c.id == id)
}

fn guarded(f: impl FnOnce(&mut Outcome) -> Result<()>) -> Outcome {
    let mut out = Outcome::new();
    if let Err(e) = f(&mut out) {
        out.error("error", e);
    }
    out
}

fn sig_text(s: Signature) -> alloc::string::String {
    format!("{s}")
}

/// `G_N^{-1}` in the `eta, y, F1..F9` basis: `3/2` on the diagonal except `6` at `y`,
/// `-5/2` in the `y` row and column, `1` elsewhere.
fn n_inverse_gram_oracle() -> Vec<Vec<Rat>> {
    (0..11)
        .map(|i| {
            (0..11)
                .map(|j| match (i, j) {
                    (1, 1) => Rat::from_integer(6),
                    (1, _) | (_, 1) => Rat::new(-5, 2),
                    _ if i == j => Rat::new(3, 2),
                    _ => Rat::from_integer(1),
                })
                .collect()
        })
        .collect()
}

/// Matrix of `b_N` on `eta*, F1*, ..., F9*`, entries in `[0, 1)`.
pub fn n_basis_b_matrix() -> Result<Vec<Vec<Rat>>> {
    let nl = plane_lattice_n();
    let form = nl.discriminant_bilinear_form();
    let g = form.group();
    let idx: Vec<usize> = core::iter::once(0).chain(2..=10).collect();
    let elems: Vec<Vec<i64>> = idx.iter().map(|&i| g.element_of(&nl.dual_basis_vector(i))).collect::<Result<_>>()?;
    Ok(elems.iter().map(|x| elems.iter().map(|y| form.b(x, y)).collect()).collect())
}

fn n_z10() -> Outcome {
    guarded(|out| {
        let nl = plane_lattice_n();
        let g = nl.discriminant_group();
        out.expect_eq("factors", g.invariant_factors().to_vec(), vec![2; 10]);
        out.expect_eq("determinant", nl.determinant(), 1024);
        let oracle = n_inverse_gram_oracle();
        let gram = nl.gram();
        let identity = (0..11).all(|i| {
            (0..11).all(|j| {
                let s: Rat = (0..11).map(|k| Rat::from_integer(gram.row(i)[k] as i128) * oracle[k][j]).sum();
                s == Rat::from_integer((i == j) as i128)
            })
        });
        out.require("inverse_gram_oracle", identity);
        let b = n_basis_b_matrix()?;
        let half = Rat::new(1, 2);
        let expected: Vec<Vec<Rat>> = (0..10)
            .map(|i| (0..10).map(|j| if i == j { half } else { Rat::from_integer(0) }).collect())
            .collect();
        out.require("b_diagonal_half", b == expected);
        out.require("b_matches_oracle_mod_1", {
            let idx: Vec<usize> = core::iter::once(0).chain(2..=10).collect();
            idx.iter().enumerate().all(|(a, &i)| {
                idx.iter().enumerate().all(|(c, &j)| (oracle[i][j] - b[a][c]).is_integer())
            })
        });
        out.note("off_diagonal_half", b.iter().flatten().all(|x| *x == half));
        let elems: Vec<Vec<i64>> =
            core::iter::once(0).chain(2..=10).map(|i| g.element_of(&nl.dual_basis_vector(i))).collect::<Result<_>>()?;
        let span = g.span(&elems)?;
        out.expect_eq("generated_order", span.len(), 1024);
        Ok(())
    })
}

fn m_gram() -> Outcome {
    guarded(|out| {
        let m = prim_lattice_m();
        out.expect_eq("determinant", m.determinant(), 3072);
        out.expect_eq("signature", sig_text(m.signature()), sig_text(Signature::new(10, 0)));
        out.require("even", m.parity() == Parity::Even);
        let g = m.discriminant_group();
        out.note("invariant_factors", g.invariant_factors().to_vec());
        out.expect_eq("primary_2", primary_factors(&g, 2), vec![2; 10]);
        out.expect_eq("primary_3", primary_factors(&g, 3), vec![3]);
        let from_n = plane_lattice_n().gram().congruence(&m_basis_in_n());
        out.require("congruence_of_n", &from_n == m.gram());
        Ok(())
    })
}

fn ktilde_glue() -> Result<(IntegralLattice, GlueSubgroup, Overlattice)> {
    let kt = k_tilde();
    let form = kt.discriminant_form();
    let xi = kt.dual_basis_vector(0);
    let beta = kt.dual_basis_vector(9);
    let x = form.group().element_of(&xi.scale(6).add(&beta.scale(2)))?;
    let h = GlueSubgroup::new(&form, vec![x])?;
    let over = overlattice_from_glue(&kt, &h)?;
    Ok((kt, h, over))
}

fn m_from_ktilde() -> Outcome {
    guarded(|out| {
        let (kt, h, over) = ktilde_glue()?;
        let m = prim_lattice_m();
        let o = &over.lattice;
        out.note("nominal_index", 2);
        out.expect_eq("computed_index", over.index, 4);
        out.expect_eq("glue_order", h.order(), 4);
        out.expect_eq("determinant", o.determinant(), m.determinant());
        out.expect_eq("signature", sig_text(o.signature()), sig_text(m.signature()));
        out.require("parity", o.parity() == m.parity());
        let om = o.discriminant_quadratic_form()?.value_multiset()?;
        let mm = m.discriminant_quadratic_form()?.value_multiset()?;
        out.note("q_values", multiset_detail(&mm));
        out.require("q_value_multiset", om == mm);
        let c = verify_correspondence(&kt, &h, &over)?;
        out.require("correspondence", c.holds());
        out.expect_eq("det_identity", kt.determinant(), o.determinant() * (over.index as i128).pow(2));
        let s1 = IntMatrix::from_rows(&[delta_in_m()]);
        let s2 = IntMatrix::from_rows(&(1..=9).map(|i| m.basis_vector(i)).collect::<Vec<_>>());
        let gg = glue_group(&m, &s1, &s2)?;
        out.expect_eq("glue_group", gg.invariant_factors.clone(), vec![4]);
        Ok(())
    })
}

fn k_is_d9() -> Outcome {
    guarded(|out| {
        let k = root_sublattice_k();
        let half = half_rescale(&k)?;
        let d = identify_root_lattice(&half)?;
        out.note("components", format!("{:?}", d.components));
        out.require("is_d9", d.components == vec![RootType::D(9)] && d.index == 1);
        out.expect_eq("roots", d.root_count, 144);
        out.require("equals_standard", half.gram() == standard("D9", 1)?.gram());
        Ok(())
    })
}

fn ktilde_disc() -> Outcome {
    guarded(|out| {
        let kt = k_tilde();
        let form = kt.discriminant_form();
        let g = form.group();
        out.note("invariant_factors", g.invariant_factors().to_vec());
        out.expect_eq("order", g.order(), 3 << 14);
        out.expect_eq("determinant", kt.determinant(), 3 << 14);
        let iso = isotropic_elements(&form)?;
        out.expect_eq("isotropic_elements", iso.len(), 1087);
        Ok(())
    })
}

fn m_three_constructions() -> Outcome {
    guarded(|out| {
        let m = prim_lattice_m();
        let nl = plane_lattice_n();
        let via_n = nl.sublattice(&m_basis_in_n())?;
        out.require("basis_change", via_n.gram() == m.gram());
        let comp = nl.orthogonal_complement(&[n::eta()])?;
        out.note("eta_complement_det", comp.lattice.determinant());
        out.require("basis_orthogonal_to_eta", (0..10).all(|i| nl.pair(m_basis_in_n().row(i), &n::eta()) == 0));
        let sat = nl.saturation(&m_basis_in_n().row_vecs())?;
        out.expect_eq("saturated_in_n", sat.index, 1);
        let (_, _, over) = ktilde_glue()?;
        let a = over.lattice.discriminant_quadratic_form()?.value_multiset()?;
        let b = m.discriminant_quadratic_form()?.value_multiset()?;
        out.require("glued_matches", a == b && over.lattice.determinant() == m.determinant());
        Ok(())
    })
}

fn n_planes() -> Outcome {
    guarded(|out| {
        let nl = plane_lattice_n();
        let planes = enumerate_planes(&nl, &n::eta())?;
        out.expect_eq("count", planes.len(), 19);
        let mut expected = vec![n::p()];
        for i in 1..=9 {
            expected.push(n::f(i));
            expected.push(n::f_residual(i));
        }
        expected.sort();
        out.require("classes", planes == expected);
        let residual_ok = (1..=9).all(|i| {
            let r = n::f_residual(i);
            nl.norm(&r) == 3 && nl.pair(&r, &n::eta()) == 1 && nl.pair(&r, &n::f(i)) == -1
        });
        out.require("residual_relations", residual_ok);
        let dist = plane_product_distribution(&nl, &planes);
        out.note(
            "product_distribution",
            Detail::List(dist.iter().map(|(p, c)| Detail::map([("product", *p), ("count", *c as i64)])).collect()),
        );
        Ok(())
    })
}

fn hassett_d14() -> Outcome {
    guarded(|out| {
        let l14 = labeling_for_d(14)?;
        out.expect_eq("d14.norm", l14.norm, 5);
        out.expect_eq("d14.eta_pairing", l14.eta_pairing, 1);
        out.require("d14.verified", l14.verified() && l14.witness == Witness::Special14);
        let l8 = labeling_for_d(8)?;
        out.require("d8.plane", l8.verified() && l8.witness == Witness::Plane);
        let l12 = labeling_for_d(12)?;
        out.note("d12.witness", l12.witness);
        out.require("d12.verified", l12.verified());
        Ok(())
    })
}

fn half_rescale_check() -> Outcome {
    guarded(|out| {
        let ns = nodal_sextic_ns();
        let inv = two_elementary_invariants(&ns)?;
        out.require("ns.a_equals_rank", inv.a == ns.rank() && inv.delta == 1);
        out.expect_eq("ns.two_rank", two_rank(&ns.discriminant_group()), ns.rank());
        let half = half_rescale(&ns)?;
        out.require("ns_half.odd", half.parity() == Parity::Odd);
        out.expect_eq("ns_half.abs_det", half.determinant().abs(), 1);
        let m = prim_lattice_m();
        let defined = two_rank(&m.discriminant_group()) == m.rank();
        out.require("m.half_defined_iff_two_rank", defined == half_rescale(&m).is_ok());
        let odd = [half, delpezzo::PicardBasis::new().lattice];
        for (i, l) in odd.iter().enumerate() {
            out.require(&format!("odd{i}.doubled_delta_one"), doubled_has_delta_one(l)?);
        }
        Ok(())
    })
}

fn phi1_e6_2() -> Outcome {
    guarded(|out| {
        let e = standard("E6", 2)?;
        out.expect_eq("determinant", e.determinant(), 3 << 6);
        out.expect_eq("signature", sig_text(e.signature()), sig_text(Signature::new(6, 0)));
        let half = half_rescale(&e)?;
        out.expect_eq("half_roots", root_count(&half, 2)?, 72);
        out.expect_eq("order3", e.discriminant_group().torsion(3)?.len(), 3);
        Ok(())
    })
}

fn transcendental_two_elementary() -> Outcome {
    guarded(|out| {
        let t = transcendental_t();
        let inv = two_elementary_invariants(&t)?;
        let expected = TwoElemInvariants { signature: Signature::new(10, 2), a: 10, delta: 1 };
        out.expect_eq("invariants", inv, expected);
        out.require("exists", two_elementary_exists(inv.signature, inv.a, inv.delta));
        let m = prim_lattice_m();
        let profile = unimodular_complement_profile(&m, Signature::new(20, 2))?;
        out.expect_eq("complement_signature", sig_text(profile.signature), sig_text(inv.signature));
        out.expect_eq("complement_two_length", primary_factors(profile.group(), 2).len(), inv.a);
        out.expect_eq("m_primary_3", primary_factors(&m.discriminant_group(), 3), vec![3]);
        out.require("t_length", p_elementary_length(&t.discriminant_group(), 2) == Some(10));
        Ok(())
    })
}

fn e8_exhaustive() -> Outcome {
    guarded(|out| {
        let sums = ade_sums(8);
        out.note("sums", sums.len());
        let mut with240 = Vec::new();
        let mut mismatches = 0usize;
        for s in &sums {
            let formula: usize = s.iter().map(RootType::root_count).sum();
            let parts: Vec<IntegralLattice> = s.iter().map(|t| root_lattice(*t)).collect::<Result<_>>()?;
            let l = IntegralLattice::direct_sum_all(&parts).expect("nonempty sum");
            if root_count(&l, 2)? != formula {
                mismatches += 1;
            }
            if formula == 240 {
                with240.push(format!("{s:?}"));
            }
        }
        out.expect_eq("formula_vs_enumeration_mismatches", mismatches, 0);
        out.expect_eq("sums_with_240", with240, vec![format!("{:?}", vec![RootType::E(8)])]);
        out.expect_eq("d8", root_count(&standard("D8", 1)?, 2)?, 112);
        let d7a1 = standard("D7", 1)?.direct_sum(&standard("A1", 1)?);
        out.expect_eq("d7_a1", root_count(&d7a1, 2)?, 86);
        Ok(())
    })
}

fn ramanujan_exceptions() -> Outcome {
    let mut out = Outcome::new();
    let failures: Vec<u64> = (2..=RAMANUJAN_BOUND)
        .filter(|&n| match ramanujan_rep(n) {
            Some((x, y, z, u)) => 2 * (x * x + y * y + z * z) + 3 * u * u != n,
            None => true,
        })
        .collect();
    out.expect_eq("unrepresented", failures, vec![17]);
    out.require("one_unrepresented", ramanujan_rep(1).is_none());
    out
}
