//! Acceptance criteria 1-17, one PASS/FAIL line each.
//!
//! Each criterion pairs a library certificate with an independent oracle and a pinned time limit.
//! Criteria listed in `KNOWN_UNATTAINABLE` are evaluated and printed like the rest; the harness
//! requires them to fail, so a change in their status is noticed.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use quadlat::catalog::{self, n};
use quadlat::checks::{self, n_basis_b_matrix};
use quadlat::glue::{isotropic_elements, overlattice_from_glue, GlueSubgroup};
use quadlat::hassett::{admissible_discriminants, labeling_for_d, ramanujan_rep};
use quadlat::report::{Detail, Outcome};
use quadlat::shortvec::{for_each_short_vector, root_count};
use quadlat::{IntMatrix, IntegralLattice, Parity, Rat, RatVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Criterion 1 states `b_N` has every entry `1/2` on `eta*, F1*, ..., F9*`. The inverse Gram
/// matrix has integral off-diagonal entries there, so `b_N` is `diag(1/2)` and the literal claim fails.
const KNOWN_UNATTAINABLE: &[usize] = &[1];

const TRIALS: usize = 1000;
const SEED: u64 = 0x5eed_1a77;

type Trial = fn(&mut ChaCha8Rng) -> Result<(), String>;
type Criterion = (usize, &'static str, u64, fn() -> Verdict);

struct Verdict {
    passed: bool,
    summary: String,
}

fn verdict(passed: bool, summary: impl Into<String>) -> Verdict {
    Verdict { passed, summary: summary.into() }
}

fn run_check(id: &str) -> Outcome {
    (checks::find(id).expect("registered check").run)()
}

fn int(o: &Outcome, key: &str) -> Option<i128> {
    match o.get(key) {
        Some(Detail::Int(i)) => Some(*i),
        _ => None,
    }
}

fn c1_z10() -> Verdict {
    let nl = catalog::plane_lattice_n();
    let factors = nl.discriminant_group().invariant_factors().to_vec();
    let b = n_basis_b_matrix().unwrap();
    let half = Rat::new(1, 2);
    let all_half = b.iter().flatten().all(|x| *x == half);
    let diagonal_half = (0..10).all(|i| (0..10).all(|j| b[i][j] == if i == j { half } else { Rat::from_integer(0) }));
    verdict(
        factors == vec![2; 10] && all_half,
        format!("A_N factors {factors:?}; every entry 1/2: {all_half}; b = diag(1/2): {diagonal_half}"),
    )
}

fn c2_m_gram() -> Verdict {
    let m = catalog::prim_lattice_m();
    let g = m.discriminant_group();
    let det = m.determinant();
    // (Z/3)+(Z/2)^10 has 2^10 elements killed by 2 and 3 killed by 3
    let t2 = g.torsion(2).unwrap().len();
    let t3 = g.torsion(3).unwrap().len();
    let ok = det == 3072 && g.order() == 3072 && t2 == 1024 && t3 == 3 && run_check("lattice.m.gram").passed;
    verdict(ok, format!("det {det}, |A[2]| = {t2}, |A[3]| = {t3}"))
}

fn c3_glue() -> Verdict {
    let o = run_check("glue.m-from-ktilde");
    let kt = catalog::k_tilde();
    let form = kt.discriminant_form();
    let x = form
        .group()
        .element_of(&kt.dual_basis_vector(0).scale(6).add(&kt.dual_basis_vector(9).scale(2)))
        .unwrap();
    let over = overlattice_from_glue(&kt, &GlueSubgroup::new(&form, vec![x]).unwrap()).unwrap();
    let identity = kt.determinant() == over.lattice.determinant() * (over.index as i128).pow(2);
    verdict(
        o.passed && identity && over.index == 4,
        format!("glue index {}, det identity {identity}, failures {:?}", over.index, o.failures),
    )
}

fn c4_d9() -> Verdict {
    let o = run_check("lattice.k.d9");
    let half = catalog::root_sublattice_k().rescale(1, 2).unwrap();
    let roots = root_count(&half, 2).unwrap();
    // D9: 2 * 9 * 8 roots, det 4
    verdict(
        o.passed && roots == 144 && half.determinant() == 4,
        format!("K(1/2) roots {roots}, det {}", half.determinant()),
    )
}

fn c5_e8() -> Verdict {
    let o = run_check("roots.e8-exhaustive");
    // |D_n| = 2n(n-1), |A_1| = 2
    let d8 = 2 * 8 * 7;
    let d7a1 = 2 * 7 * 6 + 2;
    let ok = o.passed && int(&o, "d8") == Some(d8) && int(&o, "d7_a1") == Some(d7a1);
    verdict(ok, format!("D8 {d8}, D7+A1 {d7a1}, sums {:?}", o.get("sums").map(|d| d.to_string())))
}

fn c6_scroll() -> Verdict {
    let o = run_check("scroll.screen");
    // leading minors 3, 12, -3 (tau - 7)(tau + 1)
    let definite: Vec<i64> = (-3..=9).filter(|t| -3 * (t - 7) * (t + 1) > 0).collect();
    let mut absent = true;
    for tau in [1i64, 3, 5] {
        // alpha_i = T_i - eta span K_tau with Gram [[4, tau-3], [tau-3, 4]]
        let c = tau - 3;
        for a in -4i64..=4 {
            for b in -4i64..=4 {
                let norm = 4 * a * a + 2 * c * a * b + 4 * b * b;
                let div = num_integer::Integer::gcd(&(4 * a + c * b), &(c * a + 4 * b));
                if norm == 2 || (norm == 6 && div % 3 == 0) {
                    absent = false;
                }
            }
        }
    }
    verdict(
        o.passed && definite == (0..=6).collect::<Vec<_>>() && absent,
        format!("definite tau {definite:?}, no roots at 1,3,5: {absent}"),
    )
}

fn c7_transcendental() -> Verdict {
    let o = run_check("transcend.two-elementary");
    let t = catalog::lookup("E8(2)+A1+A1(-1)+U").unwrap();
    let g = t.discriminant_group();
    // E8(2): 2^8, A1: 2, A1(-1): 2, U: 1
    verdict(
        o.passed && g.order() == 1 << 10 && g.is_two_elementary() && format!("{}", t.signature()) == "(10, 2)",
        format!("|A_T| = {}, signature {}", g.order(), t.signature()),
    )
}

fn c8_phi2() -> Verdict {
    let o = run_check("phi2.no-associated-k3");
    let verdict_text = o.get("verdict").map(|d| d.to_string()).unwrap_or_default();
    verdict(o.passed && verdict_text == "no K exists", format!("verdict: {verdict_text}; failures {:?}", o.failures))
}

fn c9_phi3() -> Verdict {
    let o = run_check("phi3.k3-exists");
    let a = catalog::lookup("<2>+<-2>+<-2>+<-2>+<-2>+<-2>+<-2>+<-2>+<-2>+<-2>").unwrap();
    let b = catalog::lookup("E8(-2)+A1+A1(-1)").unwrap();
    let same = a.signature() == b.signature()
        && a.discriminant_group().invariant_factors() == b.discriminant_group().invariant_factors();
    verdict(o.passed && same, format!("signatures {} / {}, failures {:?}", a.signature(), b.signature(), o.failures))
}

fn gcd_of_minors(u: &[i64], v: &[i64]) -> i64 {
    let mut g = 0i64;
    for i in 0..u.len() {
        for j in (i + 1)..u.len() {
            g = num_integer::Integer::gcd(&g, &(u[i] * v[j] - u[j] * v[i]));
        }
    }
    g
}

fn c10_hassett() -> Verdict {
    let o = quadlat::hassett::hassett_sweep(10_000);
    let nl = catalog::plane_lattice_n();
    let eta = n::eta();
    let mut bad = Vec::new();
    let ds = admissible_discriminants(10_000);
    for &d in &ds {
        let l = labeling_for_d(d).unwrap();
        let disc = 3 * nl.norm(&l.v) - nl.pair(&eta, &l.v).pow(2);
        // <eta, v> is saturated in Z^11 iff its 2x2 minors are coprime
        if disc != d || gcd_of_minors(&eta, &l.v) != 1 {
            bad.push(d);
        }
    }
    let l14 = labeling_for_d(14).unwrap();
    let ok = o.passed && bad.is_empty() && nl.norm(&l14.v) == 5 && nl.pair(&eta, &l14.v) == 1;
    verdict(ok, format!("{} admissible d, {} rejected by the minor oracle", ds.len(), bad.len()))
}

fn c11_saturation() -> Verdict {
    let o = run_check("sat.511");
    // nonempty even subsets of a 10-element basis
    let even_subsets = (1u32..1 << 10).filter(|m| m.count_ones() % 2 == 0).count();
    verdict(
        o.passed && even_subsets == 511 && int(&o, "classes") == Some(511),
        format!("{even_subsets} even supports, failures {:?}", o.failures),
    )
}

fn c12_pfaffian() -> Verdict {
    let o = run_check("pfaffian");
    let m = catalog::prim_lattice_m();
    let even = m.gram().entries().iter().all(|x| x % 2 == 0);
    verdict(o.passed && even, format!("G_M entries even: {even}"))
}

fn c13_oadp() -> Verdict {
    let o = run_check("oadp");
    let nl = catalog::plane_lattice_n();
    let t = n::add(&n::sub(&n::scale(&n::eta(), 2), &n::y()), &n::add(&n::f(7), &n::add(&n::f(8), &n::f(9))));
    let ok = o.passed && nl.pair(&t, &n::eta()) == 4 && nl.norm(&t) == 10;
    verdict(ok, format!("T.eta = {}, T.T = {}", nl.pair(&t, &n::eta()), nl.norm(&t)))
}

fn c14_rationality() -> Verdict {
    let o = run_check("rationality.section");
    let nl = catalog::plane_lattice_n();
    let q = n::sub(&n::eta(), &n::p());
    let all_even = (0..nl.rank()).all(|i| nl.pair(&q, &nl.basis_vector(i)) % 2 == 0);
    verdict(o.passed && all_even, format!("basis pairings with eta - P even: {all_even}"))
}

fn c15_ramanujan() -> Verdict {
    const LIMIT: u64 = 10_000;
    let mut sieve = vec![false; LIMIT as usize + 1];
    let r = |k: u64| (1..).take_while(move |x: &u64| k * x * x <= LIMIT).last().unwrap_or(0);
    for x in 0..=r(2) {
        for y in 0..=r(2) {
            for z in 0..=r(2) {
                for u in 0..=r(3) {
                    let v = 2 * (x * x + y * y + z * z) + 3 * u * u;
                    if v <= LIMIT {
                        sieve[v as usize] = true;
                    }
                }
            }
        }
    }
    let sieve_missing: Vec<u64> = (2..=LIMIT).filter(|&k| !sieve[k as usize]).collect();
    let search_missing: Vec<u64> = (2..=LIMIT).filter(|&k| ramanujan_rep(k).is_none()).collect();
    verdict(
        sieve_missing == vec![17] && search_missing == sieve_missing,
        format!("sieve misses {sieve_missing:?}, search misses {search_missing:?}"),
    )
}

fn c16_delpezzo() -> Verdict {
    let o = quadlat::delpezzo::verify();
    let ok = o.passed
        && int(&o, "lines") == Some(27)
        && int(&o, "sixers") == Some(72)
        && int(&o, "double_sixes") == Some(36)
        && int(&o, "pairs") == Some(72 * 71 / 2)
        && int(&o, "double_six_pairs") == Some(36)
        && int(&o, "inconsistent") == Some(0);
    verdict(ok, format!("failures {:?}", o.failures))
}

// ---- randomized suites ----

fn random_even_lattice(rng: &mut ChaCha8Rng) -> IntegralLattice {
    let bases = ["A1", "A2", "A3", "A4", "D4", "A1+A1", "A2+A1", "A1+A1+A1", "A2+A2", "A3+A1", "A1(2)+A2"];
    let base = catalog::lookup(bases[rng.gen_range(0..bases.len())]).unwrap();
    let r = base.rank();
    loop {
        let rows: Vec<Vec<i64>> = (0..r)
            .map(|i| (0..r).map(|j| if i == j { rng.gen_range(1..=2) } else { rng.gen_range(-1..=1) }).collect())
            .collect();
        let b = IntMatrix::from_rows(&rows);
        let det = b.determinant().abs();
        if det != 0 && det <= 4 {
            return base.sublattice(&b).unwrap();
        }
    }
}

fn box_search(gram: &IntMatrix, bound: i64) -> BTreeSet<Vec<i64>> {
    let n = gram.rows();
    let inv = quadlat::matrix::rational_inverse(gram).unwrap();
    // |x_i|^2 <= bound * (G^{-1})_{ii}
    let radius: Vec<i64> = (0..n)
        .map(|i| {
            let lim = inv[i][i] * Rat::from_integer(bound as i128);
            (0..).take_while(|k: &i64| Rat::from_integer((*k as i128) * (*k as i128)) <= lim).last().unwrap()
        })
        .collect();
    let mut out = BTreeSet::new();
    let mut x = vec![0i64; n];
    fn rec(k: usize, radius: &[i64], x: &mut Vec<i64>, gram: &IntMatrix, bound: i64, out: &mut BTreeSet<Vec<i64>>) {
        if k == x.len() {
            let gx = gram.mul_vec(x);
            let norm: i64 = x.iter().zip(&gx).map(|(a, b)| a * b).sum();
            if norm > 0 && norm <= bound {
                out.insert(x.clone());
            }
            return;
        }
        for v in -radius[k]..=radius[k] {
            x[k] = v;
            rec(k + 1, radius, x, gram, bound, out);
        }
    }
    rec(0, &radius, &mut x, gram, bound, &mut out);
    out
}

/// Number of `y` in `(Z/p)^n` with `G y = 0 mod p`, i.e. `|A_L[p]|`.
fn torsion_count_oracle(gram: &IntMatrix, p: i64) -> usize {
    let n = gram.rows();
    let total = (p as usize).pow(n as u32);
    (0..total)
        .filter(|&code| {
            let mut c = code;
            let y: Vec<i64> = (0..n)
                .map(|_| {
                    let d = (c % p as usize) as i64;
                    c /= p as usize;
                    d
                })
                .collect();
            gram.mul_vec(&y).iter().all(|v| v % p == 0)
        })
        .count()
}

fn trial_short_vectors(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let l = random_even_lattice(rng);
    let bound = 2 * rng.gen_range(1..=4);
    let mut fp = BTreeSet::new();
    for_each_short_vector(l.gram(), bound, |v| {
        fp.insert(v.to_vec());
    })
    .map_err(|e| e.to_string())?;
    let bx = box_search(l.gram(), bound);
    if fp != bx {
        return Err(format!("short vectors differ on {:?}", l.gram().row_vecs()));
    }
    let g = l.discriminant_group();
    if g.order() as i128 != l.determinant().abs() {
        return Err("SNF order differs from |det|".into());
    }
    for p in [2, 3] {
        if g.torsion(p).map_err(|e| e.to_string())?.len() != torsion_count_oracle(l.gram(), p) {
            return Err(format!("{p}-torsion differs on {:?}", l.gram().row_vecs()));
        }
    }
    Ok(())
}

fn trial_well_defined(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let l = random_even_lattice(rng);
    let form = l.discriminant_quadratic_form().map_err(|e| e.to_string())?;
    let g = form.group();
    let random_element = |rng: &mut ChaCha8Rng| -> Vec<i64> {
        g.invariant_factors().iter().map(|&d| rng.gen_range(0..d)).collect()
    };
    let shift = |rng: &mut ChaCha8Rng, x: &RatVector| -> RatVector {
        let w: Vec<i64> = (0..l.rank()).map(|_| rng.gen_range(-3..=3)).collect();
        x.add(&RatVector::integral(&w))
    };
    let x = random_element(rng);
    let y = random_element(rng);
    let (lx, ly) = (shift(rng, &g.lift(&x)), shift(rng, &g.lift(&y)));
    if g.element_of(&lx).map_err(|e| e.to_string())? != x {
        return Err("shifted lift maps to a different class".into());
    }
    let q = l.pair_rational(&lx, &lx);
    let b = l.pair_rational(&lx, &ly);
    let q_ok = ((q - form.q(&x)) / Rat::from_integer(2)).is_integer();
    let b_ok = (b - form.b(&x, &y)).is_integer();
    if q_ok && b_ok {
        Ok(())
    } else {
        Err(format!("form not well defined on {:?}", l.gram().row_vecs()))
    }
}

fn trial_det_identity(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let l = random_even_lattice(rng);
    let form = l.discriminant_form();
    let iso: Vec<Vec<i64>> =
        isotropic_elements(&form).map_err(|e| e.to_string())?.into_iter().filter(|x| !form.group().is_zero(x)).collect();
    let gens = if iso.is_empty() { Vec::new() } else { vec![iso[rng.gen_range(0..iso.len())].clone()] };
    let h = GlueSubgroup::new(&form, gens).map_err(|e| e.to_string())?;
    let over = overlattice_from_glue(&l, &h).map_err(|e| e.to_string())?;
    let hs = h.order() as i128;
    if over.lattice.determinant() * hs * hs != l.determinant() || over.index as i128 != hs {
        return Err(format!("det identity fails on {:?}", l.gram().row_vecs()));
    }
    if over.lattice.parity() != Parity::Even {
        return Err("isotropic glue gave an odd overlattice".into());
    }
    Ok(())
}

fn c17_properties() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let suites: [(&str, Trial); 3] = [
        ("short-vector/SNF", trial_short_vectors),
        ("well-definedness", trial_well_defined),
        ("det identity", trial_det_identity),
    ];
    let mut failures = Vec::new();
    for (name, f) in suites {
        for _ in 0..TRIALS {
            if let Err(e) = f(&mut rng) {
                failures.push(format!("{name}: {e}"));
            }
        }
    }
    // catalog constructions of the det identity
    let kt = catalog::k_tilde();
    let form = kt.discriminant_form();
    let x = form.group().element_of(&kt.dual_basis_vector(0).scale(6).add(&kt.dual_basis_vector(9).scale(2))).unwrap();
    let h = GlueSubgroup::new(&form, vec![x]).unwrap();
    let over = overlattice_from_glue(&kt, &h).unwrap();
    if over.lattice.determinant() * (h.order() as i128).pow(2) != kt.determinant() {
        failures.push("det identity fails on the glued M".into());
    }
    verdict(failures.is_empty(), format!("3 x {TRIALS} trials, {} failures {:?}", failures.len(), failures.first()))
}

fn main() {
    let criteria: [Criterion; 17] = [
        (1, "A_N = (Z/2)^10, b_N all entries 1/2", 1, c1_z10),
        (2, "det G_M = 3072, A_M = Z/3 + (Z/2)^10", 1, c2_m_gram),
        (3, "M as glued overlattice of <24> + D9(2)", 1, c3_glue),
        (4, "K(1/2) = D9 with 144 roots", 5, c4_d9),
        (5, "only E8 has 240 roots in rank 8", 10, c5_e8),
        (6, "scroll screen", 1, c6_scroll),
        (7, "transcendental 2-elementary invariants", 1, c7_transcendental),
        (8, "no K3 for the E8(2) transcendental lattice", 1, c8_phi2),
        (9, "K3 with E8(-2) + A1 + A1(-1) exists", 1, c9_phi3),
        (10, "Hassett sweep to 10000", 30, c10_hassett),
        (11, "511 saturation cases rejected", 60, c11_saturation),
        (12, "Pfaffian parity certificate", 10, c12_pfaffian),
        (13, "OADP certificate", 10, c13_oadp),
        (14, "trivial rationality certificate", 1, c14_rationality),
        (15, "2x^2+2y^2+2z^2+3u^2 misses only 17", 10, c15_ramanujan),
        (16, "27 lines, 72 sixers, 36 double sixes", 30, c16_delpezzo),
        (17, "randomized property suites", 300, c17_properties),
    ];
    let mut unexpected = Vec::new();
    for (id, title, limit_s, f) in criteria {
        let start = Instant::now();
        let v = f();
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(limit_s);
        let passed = v.passed && in_time;
        println!(
            "criterion {id:>2}: {}  {title} [{:.2}s / {limit_s}s] {}",
            if passed { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            v.summary
        );
        if passed == KNOWN_UNATTAINABLE.contains(&id) {
            unexpected.push(id);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("criteria with unexpected status: {unexpected:?}");
        std::process::exit(1);
    }
}
