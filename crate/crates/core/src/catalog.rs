//! Named lattices: the ADE family, hyperbolic planes, and the plane lattice of a cubic fourfold
//! with its primitive part, root sublattice, scroll screens and transcendental candidates.
//!
//! Vectors of the plane lattice `N` are coordinates in the basis `eta, y, F1..F9`, where
//! `y = (P + F1 + ... + F9) / 2` and `P = 2y - F1 - ... - F9`.

use alloc::borrow::ToOwned;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{LatticeError, Result};
use crate::lattice::IntegralLattice;
use crate::matrix::IntMatrix;
use crate::shortvec::RootType;

fn labelled(name: &str, labels: Vec<String>, gram: IntMatrix) -> IntegralLattice {
    IntegralLattice::new(Some(name), labels, gram).expect("catalog lattice is valid")
}

fn numbered(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

fn dynkin_gram(n: usize, edges: &[(usize, usize)]) -> IntMatrix {
    let mut g = IntMatrix::diagonal(&vec![2; n]);
    for &(i, j) in edges {
        g[(i, j)] = -1;
        g[(j, i)] = -1;
    }
    g
}

/// Cartan matrix of an irreducible ADE type in Bourbaki numbering.
pub fn cartan_matrix(t: RootType) -> Result<IntMatrix> {
    if !t.is_valid() {
        return Err(LatticeError::UnknownLattice(format!("{t}")));
    }
    let chain = |n: usize| -> Vec<(usize, usize)> { (1..n).map(|i| (i - 1, i)).collect() };
    Ok(match t {
        RootType::A(n) => dynkin_gram(n, &chain(n)),
        RootType::D(n) => {
            let mut e = chain(n - 1);
            e.push((n - 3, n - 1));
            dynkin_gram(n, &e)
        }
        RootType::E(n) => {
            // 1-3-4-5-...-n with 2 attached to 4
            let mut e = vec![(0, 2), (1, 3)];
            e.extend((2..n - 1).map(|i| (i, i + 1)));
            dynkin_gram(n, &e)
        }
    })
}

pub fn root_lattice(t: RootType) -> Result<IntegralLattice> {
    let g = cartan_matrix(t)?;
    Ok(labelled(&format!("{t}"), numbered("a", t.rank()), g))
}

pub fn hyperbolic_plane() -> IntegralLattice {
    labelled("U", vec!["e".into(), "f".into()], IntMatrix::from_rows(&[[0, 1], [1, 0]]))
}

/// `<k>`.
pub fn rank_one(k: i64) -> Result<IntegralLattice> {
    if k == 0 {
        return Err(LatticeError::UnknownLattice("<0>".into()));
    }
    Ok(labelled(&format!("<{k}>"), vec!["g".into()], IntMatrix::from_rows(&[[k]])))
}

fn with_scale(l: IntegralLattice, base: &str, scale: i64) -> Result<IntegralLattice> {
    if scale == 0 {
        return Err(LatticeError::UnknownLattice(format!("{base}(0)")));
    }
    if scale == 1 {
        return Ok(l);
    }
    Ok(l.scaled(scale).with_name(&format!("{base}({scale})")))
}

/// `A_n`, `D_n`, `E6..E8`, `U` or `<k>`, with the form multiplied by `scale`.
pub fn standard(name: &str, scale: i64) -> Result<IntegralLattice> {
    let unknown = || LatticeError::UnknownLattice(name.to_owned());
    let base = if name == "U" {
        hyperbolic_plane()
    } else if let Some(k) = name.strip_prefix('<').and_then(|s| s.strip_suffix('>')) {
        rank_one(k.trim().parse().map_err(|_| unknown())?)?
    } else {
        let (family, n) = name.split_at(1.min(name.len()));
        let n: usize = n.parse().map_err(|_| unknown())?;
        let t = match family {
            "A" => RootType::A(n),
            "D" => RootType::D(n),
            "E" => RootType::E(n),
            _ => return Err(unknown()),
        };
        if !t.is_valid() {
            return Err(unknown());
        }
        root_lattice(t)?
    };
    with_scale(base, name, scale)
}

// ---------------------------------------------------------------------------------------------
// Plane lattice N = <eta, y, F1..F9> and named classes in it.

pub const N_RANK: usize = 11;

/// Plane lattice with basis `eta, y, F1..F9`.
///
/// Built from `eta^2 = P^2 = F_i^2 = 3`, `eta.P = eta.F_i = 1`, `P.F_i = -1`, `F_i.F_j = 1`.
pub fn plane_lattice_n() -> IntegralLattice {
    // pairings on the spanning set eta, P, F1..F9
    let pre = |i: usize, j: usize| -> i64 {
        match (i, j) {
            _ if i == j => 3,
            (0, _) | (_, 0) => 1,
            (1, _) | (_, 1) => -1,
            _ => 1,
        }
    };
    // basis in terms of the spanning set, doubled to keep y integral
    let mut basis2 = vec![vec![0i64; 11]; 11];
    basis2[0][0] = 2;
    basis2[1] = vec![0, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1];
    for i in 0..9 {
        basis2[2 + i][2 + i] = 2;
    }
    let mut g = IntMatrix::zeros(11, 11);
    for a in 0..11 {
        for b in 0..11 {
            let mut s = 0;
            for i in 0..11 {
                for j in 0..11 {
                    s += basis2[a][i] * basis2[b][j] * pre(i, j);
                }
            }
            g[(a, b)] = s / 4;
        }
    }
    let mut labels: Vec<String> = vec!["eta".into(), "y".into()];
    labels.extend(numbered("F", 9));
    labelled("N", labels, g)
}

/// Named vectors in `N`.
pub mod n {
    use alloc::vec;
    use alloc::vec::Vec;

    pub fn eta() -> Vec<i64> {
        unit(0)
    }

    pub fn y() -> Vec<i64> {
        unit(1)
    }

    /// `F_i` for `i` in `1..=9`.
    pub fn f(i: usize) -> Vec<i64> {
        assert!((1..=9).contains(&i));
        unit(1 + i)
    }

    fn unit(k: usize) -> Vec<i64> {
        let mut v = vec![0; super::N_RANK];
        v[k] = 1;
        v
    }

    pub fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    pub fn sub(a: &[i64], b: &[i64]) -> Vec<i64> {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }

    pub fn scale(a: &[i64], k: i64) -> Vec<i64> {
        a.iter().map(|x| x * k).collect()
    }

    /// `F_1 + ... + F_9`.
    pub fn sum_f() -> Vec<i64> {
        (1..=9).fold(vec![0; super::N_RANK], |acc, i| add(&acc, &f(i)))
    }

    /// Fixed plane `P = 2y - sum F_i`.
    pub fn p() -> Vec<i64> {
        sub(&scale(&y(), 2), &sum_f())
    }

    /// Residual plane `F_i' = eta - P - F_i`.
    pub fn f_residual(i: usize) -> Vec<i64> {
        sub(&sub(&eta(), &p()), &f(i))
    }

    /// `alpha_i = F_i - F_{i+1}` for `i <= 8`, `alpha_9 = P + F_8 + F_9 - eta`.
    pub fn alpha(i: usize) -> Vec<i64> {
        match i {
            1..=8 => sub(&f(i), &f(i + 1)),
            9 => sub(&add(&add(&p(), &f(8)), &f(9)), &eta()),
            _ => panic!("alpha index out of range"),
        }
    }

    /// `x = (alpha_1 + alpha_3 + alpha_5 + alpha_7 + F_9 - P) / 2 = -y + F1 + F3 + F5 + F7 + F9`.
    pub fn x() -> Vec<i64> {
        [1, 3, 5, 7, 9].iter().fold(scale(&y(), -1), |acc, &i| add(&acc, &f(i)))
    }

    /// `delta = eta - 3P`, orthogonal to `eta` and to every `alpha_i`.
    pub fn delta() -> Vec<i64> {
        sub(&eta(), &scale(&p(), 3))
    }

    /// `beta = eta - P - F_9`.
    pub fn beta() -> Vec<i64> {
        sub(&sub(&eta(), &p()), &f(9))
    }

    /// `gamma = y - F_5 - F_6 - F_7 - F_8 - F_9`.
    pub fn gamma() -> Vec<i64> {
        (5..=9).fold(y(), |acc, i| sub(&acc, &f(i)))
    }

    /// Quadric class `Q = eta - P`.
    pub fn quadric() -> Vec<i64> {
        sub(&eta(), &p())
    }

    /// Scroll class `T = 2 eta - y + F_7 + F_8 + F_9`.
    pub fn scroll() -> Vec<i64> {
        add(&add(&add(&sub(&scale(&eta(), 2), &y()), &f(7)), &f(8)), &f(9))
    }
}

/// Rows `x, alpha_1..alpha_9` in `N` coordinates.
pub fn m_basis_in_n() -> IntMatrix {
    let mut rows = vec![n::x()];
    rows.extend((1..=9).map(n::alpha));
    IntMatrix::from_rows(&rows)
}

/// Primitive lattice `M` with basis `x, alpha_1..alpha_9`, entered as its Gram matrix.
pub fn prim_lattice_m() -> IntegralLattice {
    let g = IntMatrix::from_rows(&[
        [6, 2, -2, 2, -2, 2, -2, 2, -2, 0],
        [2, 4, -2, 0, 0, 0, 0, 0, 0, 0],
        [-2, -2, 4, -2, 0, 0, 0, 0, 0, 0],
        [2, 0, -2, 4, -2, 0, 0, 0, 0, 0],
        [-2, 0, 0, -2, 4, -2, 0, 0, 0, 0],
        [2, 0, 0, 0, -2, 4, -2, 0, 0, 0],
        [-2, 0, 0, 0, 0, -2, 4, -2, 0, 0],
        [2, 0, 0, 0, 0, 0, -2, 4, -2, -2],
        [-2, 0, 0, 0, 0, 0, 0, -2, 4, 0],
        [0, 0, 0, 0, 0, 0, 0, -2, 0, 4],
    ]);
    let mut labels: Vec<String> = vec!["x".into()];
    labels.extend(numbered("alpha", 9));
    labelled("M", labels, g)
}

/// `delta` in the `x, alpha` basis of `M`.
pub fn delta_in_m() -> Vec<i64> {
    vec![4, -2, 0, -2, 0, -2, 0, -2, 1, -1]
}

/// Span of `alpha_1..alpha_9` with its induced Gram matrix (a `D9(2)`).
pub fn root_sublattice_k() -> IntegralLattice {
    let n = plane_lattice_n();
    let rows: Vec<Vec<i64>> = (1..=9).map(n::alpha).collect();
    let g = n.gram().congruence(&IntMatrix::from_rows(&rows));
    labelled("K", numbered("alpha", 9), g)
}

/// `<24> + D9(2)` with basis `delta, alpha_1..alpha_9`.
pub fn k_tilde() -> IntegralLattice {
    let g = IntMatrix::block_diagonal(&IntMatrix::from_rows(&[[24]]), root_sublattice_k().gram());
    let mut labels: Vec<String> = vec!["delta".into()];
    labels.extend(numbered("alpha", 9));
    labelled("Ktilde", labels, g)
}

/// Scroll lattice `<eta, T1, T2>` with `T1.T2 = tau`; degenerate for `tau` in `{-1, 7}`.
pub fn scroll_lattice(tau: i64) -> Result<IntegralLattice> {
    let g = IntMatrix::from_rows(&[[3, 3, 3], [3, 7, tau], [3, tau, 7]]);
    IntegralLattice::new(
        Some(&format!("scroll:{tau}")),
        vec!["eta".into(), "T1".into(), "T2".into()],
        g,
    )
}

/// `E6(2)`.
pub fn eckardt_e6_2() -> IntegralLattice {
    standard("E6", 2).expect("E6 is standard")
}

/// `E8(2) + A1 + A1(-1) + U`, signature (10, 2).
pub fn transcendental_t() -> IntegralLattice {
    IntegralLattice::direct_sum_all(&[
        standard("E8", 2).unwrap(),
        standard("A1", 1).unwrap(),
        standard("A1", -1).unwrap(),
        hyperbolic_plane(),
    ])
    .unwrap()
    .with_name("T")
}

/// `<2> + <-2>^9` with basis `h, e1..e9`.
pub fn nodal_sextic_ns() -> IntegralLattice {
    let mut d = vec![2];
    d.extend([-2; 9]);
    let mut labels: Vec<String> = vec!["h".into()];
    labels.extend(numbered("e", 9));
    labelled("NS", labels, IntMatrix::diagonal(&d))
}

/// Catalog names accepted by [`lookup`].
pub const NAMES: &[&str] = &["N", "M", "K", "Ktilde", "T", "NS", "scroll:<tau>", "A<n>", "D<n>", "E6", "E7", "E8", "U", "<k>"];

/// Resolves a catalog name. Accepts scaled factors such as `E8(2)`, `A1(-1)` and
/// orthogonal sums joined by `+`, e.g. `E8(2)+A1+A1(-1)+U`.
pub fn lookup(spec: &str) -> Result<IntegralLattice> {
    let spec = spec.trim();
    let parts: Vec<&str> = split_sum(spec);
    if parts.len() > 1 {
        let ls = parts.iter().map(|p| lookup(p)).collect::<Result<Vec<_>>>()?;
        return Ok(IntegralLattice::direct_sum_all(&ls).unwrap().with_name(spec));
    }
    let (base, scale) = match spec.strip_suffix(')').and_then(|s| s.rsplit_once('(')) {
        Some((b, k)) if !b.is_empty() => {
            (b, k.parse::<i64>().map_err(|_| LatticeError::UnknownLattice(spec.to_owned()))?)
        }
        _ => (spec, 1),
    };
    let l = match base {
        "N" => plane_lattice_n(),
        "M" => prim_lattice_m(),
        "K" => root_sublattice_k(),
        "Ktilde" => k_tilde(),
        "T" => transcendental_t(),
        "NS" => nodal_sextic_ns(),
        _ => {
            if let Some(t) = base.strip_prefix("scroll:") {
                let tau = t.parse().map_err(|_| LatticeError::UnknownLattice(spec.to_owned()))?;
                scroll_lattice(tau)?
            } else {
                return standard(base, scale);
            }
        }
    };
    with_scale(l, base, scale)
}

fn split_sum(s: &str) -> Vec<&str> {
    // '+' inside <...> is a sign, not a sum
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, c) in s.char_indices() {
        match c {
            '<' | '(' => depth += 1,
            '>' | ')' => depth -= 1,
            '+' if depth == 0 => {
                out.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(s[start..].trim());
    out
}

/// Meaning of the basis labels of a catalog lattice.
pub fn symbols(name: &str) -> Vec<(&'static str, &'static str)> {
    match name {
        "N" => vec![
            ("eta", "square of the hyperplane class"),
            ("y", "(P + F1 + ... + F9) / 2"),
            ("F1..F9", "classes of the invariant planes"),
            ("P = 2y - sum F", "class of the fixed plane (derived)"),
        ],
        "M" => vec![
            ("x", "(alpha1 + alpha3 + alpha5 + alpha7 + F9 - P) / 2"),
            ("alpha1..alpha8", "F_i - F_{i+1}"),
            ("alpha9", "P + F8 + F9 - eta"),
        ],
        "K" => vec![("alpha1..alpha9", "D9(2) chain, fork at alpha7")],
        "Ktilde" => vec![("delta", "eta - 3P, norm 24"), ("alpha1..alpha9", "D9(2) chain, fork at alpha7")],
        "NS" => vec![("h", "pullback of a line"), ("e1..e9", "exceptional curves over the nodes")],
        _ if name.starts_with("scroll:") => {
            vec![("eta", "square of the hyperplane class"), ("T1, T2", "quartic scroll classes")]
        }
        _ => Vec::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_determinants() {
        for (name, det) in [("A2", 3), ("D4", 4), ("E6", 3), ("E7", 2), ("E8", 1), ("D9", 4)] {
            assert_eq!(standard(name, 1).unwrap().determinant(), det, "{name}");
        }
        assert_eq!(standard("D9", 2).unwrap().determinant(), 1 << 11);
        assert!(standard("D3", 1).is_err());
        assert!(standard("X5", 1).is_err());
    }

    #[test]
    fn n_pairings_from_rules() {
        let l = plane_lattice_n();
        assert_eq!(l.pair(&n::y(), &n::eta()), 5);
        assert_eq!(l.pair(&n::y(), &n::f(4)), 5);
        assert_eq!(l.norm(&n::y()), 21);
        assert_eq!(l.norm(&n::p()), 3);
        assert_eq!(l.pair(&n::p(), &n::f(2)), -1);
        assert_eq!(l.determinant(), 1024);
    }

    #[test]
    fn m_gram_matches_basis_in_n() {
        let g = plane_lattice_n().gram().congruence(&m_basis_in_n());
        assert_eq!(&g, prim_lattice_m().gram());
    }

    #[test]
    fn delta_coordinates_in_m() {
        let b = m_basis_in_n();
        let v = b.transpose().mul_vec(&delta_in_m());
        assert_eq!(v, n::delta());
    }

    #[test]
    fn k_is_standard_d9_scaled() {
        assert_eq!(root_sublattice_k().gram(), standard("D9", 2).unwrap().gram());
    }

    #[test]
    fn lookup_parses_sums() {
        let t = lookup("E8(2)+A1+A1(-1)+U").unwrap();
        assert_eq!(t.gram(), transcendental_t().gram());
        assert_eq!(lookup("<-2>").unwrap().gram()[(0, 0)], -2);
        assert_eq!(lookup("scroll:3").unwrap().determinant(), 48);
        assert!(lookup("Q7").is_err());
    }
}
