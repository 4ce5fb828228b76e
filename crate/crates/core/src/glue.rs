//! Overlattices from isotropic subgroups of discriminant forms, and glue groups of orthogonal
//! splittings.
//!
//! An even overlattice `L ⊂ Γ ⊂ L*` is determined by the isotropic subgroup `H = Γ/L` of
//! `(A_L, q_L)`, and then `A_Γ = H^⊥/H` with the induced form.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;

use crate::discriminant::{DiscriminantForm, DiscriminantGroup};
use crate::error::{LatticeError, Result};
use crate::lattice::IntegralLattice;
use crate::matrix::{hermite_normal_form, rational_inverse, smith_normal_form, IntMatrix, Rat, RatVector};

/// Subgroup of a discriminant group on which the form vanishes.
#[derive(Clone, Debug)]
pub struct GlueSubgroup {
    form: DiscriminantForm,
    generators: Vec<Vec<i64>>,
    elements: Vec<Vec<i64>>,
}

impl GlueSubgroup {
    /// Checks isotropy on generators and pairwise; reports the first element where it fails.
    pub fn new(form: &DiscriminantForm, generators: Vec<Vec<i64>>) -> Result<Self> {
        let group = form.group();
        let generators: Vec<Vec<i64>> = generators.iter().map(|g| group.reduce(g)).collect();
        let zero = Rat::from_integer(0);
        for (i, g) in generators.iter().enumerate() {
            if !form.is_isotropic(g) {
                return Err(LatticeError::NotIsotropic { element: g.clone() });
            }
            for h in &generators[..i] {
                if form.b(g, h) != zero {
                    return Err(LatticeError::NotIsotropic { element: group.add(g, h) });
                }
            }
        }
        let elements = group.span(&generators)?;
        Ok(Self { form: form.clone(), generators, elements })
    }

    pub fn trivial(form: &DiscriminantForm) -> Self {
        Self { form: form.clone(), generators: Vec::new(), elements: vec![form.group().zero()] }
    }

    pub fn form(&self) -> &DiscriminantForm {
        &self.form
    }

    pub fn generators(&self) -> &[Vec<i64>] {
        &self.generators
    }

    /// All elements, sorted.
    pub fn elements(&self) -> &[Vec<i64>] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        self.elements.binary_search_by(|e| e.as_slice().cmp(x)).is_ok()
    }

    /// Generator lifts in the ambient lattice coordinates.
    pub fn lifts(&self) -> Vec<RatVector> {
        self.generators.iter().map(|g| self.form.group().lift(g)).collect()
    }

    /// `H^⊥` inside the ambient group, sorted.
    pub fn orthogonal(&self) -> Result<Vec<Vec<i64>>> {
        let zero = Rat::from_integer(0);
        Ok(self
            .form
            .group()
            .elements()?
            .into_iter()
            .filter(|x| self.generators.iter().all(|g| self.form.b(x, g) == zero))
            .collect())
    }
}

/// Nonzero isotropic elements: `q = 0 mod 2` (quadratic) or `b(x, x) = 0 mod 1` (bilinear).
pub fn isotropic_elements(form: &DiscriminantForm) -> Result<Vec<Vec<i64>>> {
    let group = form.group();
    Ok(group.elements()?.into_iter().filter(|x| !group.is_zero(x) && form.is_isotropic(x)).collect())
}

/// Overlattice with its basis in rational coordinates of the sublattice.
#[derive(Clone, Debug)]
pub struct Overlattice {
    pub lattice: IntegralLattice,
    /// Basis rows in coordinates of the original lattice.
    pub basis: Vec<RatVector>,
    pub index: u128,
    /// Invariant factors of `Γ/L`.
    pub glue_factors: Vec<i64>,
}

impl Overlattice {
    /// Coordinates in the overlattice basis of a vector given in original coordinates.
    pub fn coordinates(&self, v: &RatVector) -> RatVector {
        let n = self.basis.len();
        let den = self.basis.iter().fold(1i64, |d, b| d.lcm(&b.denominator()));
        let rows: Vec<Vec<i64>> = self
            .basis
            .iter()
            .map(|b| b.numerators().iter().map(|x| x * (den / b.denominator())).collect())
            .collect();
        let inv = rational_inverse(&IntMatrix::from_rows(&rows)).expect("basis is nonsingular");
        // v = c B  =>  c = v B^{-1} = den * v * rows^{-1}
        let coords: Vec<Rat> = (0..n)
            .map(|j| (0..n).map(|i| v.get(i) * inv[i][j]).sum::<Rat>() * Rat::from_integer(den as i128))
            .collect();
        rat_vector(&coords)
    }
}

pub(crate) fn rat_vector(coords: &[Rat]) -> RatVector {
    let den = coords.iter().fold(1i128, |d, c| d.lcm(c.denom()));
    RatVector::new(coords.iter().map(|c| (c.numer() * (den / c.denom())) as i64).collect(), den as i64)
}

/// Lattice generated by `L` and the lifts of `H`, rebased by Hermite normal form.
pub fn overlattice_from_glue(lattice: &IntegralLattice, glue: &GlueSubgroup) -> Result<Overlattice> {
    let n = lattice.rank();
    let lifts = glue.lifts();
    for g in &glue.generators {
        let isotropic = glue.form.is_isotropic(g);
        if !isotropic {
            return Err(LatticeError::NotIsotropic { element: g.clone() });
        }
    }
    let den = lifts.iter().fold(1i64, |d, l| d.lcm(&l.denominator()));
    let mut rows: Vec<Vec<i64>> = (0..n).map(|i| lattice.basis_vector(i).iter().map(|x| x * den).collect()).collect();
    for l in &lifts {
        rows.push(l.numerators().iter().map(|x| x * (den / l.denominator())).collect());
    }
    let h = hermite_normal_form(&IntMatrix::from_rows(&rows));
    debug_assert_eq!(h.rows(), n);
    let basis: Vec<RatVector> = (0..n).map(|i| RatVector::new(h.row(i).to_vec(), den)).collect();
    let scaled = lattice.gram().congruence(&h);
    let d2 = den * den;
    let mut g = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            if scaled[(i, j)] % d2 != 0 {
                return Err(LatticeError::NotIsotropic { element: glue.generators.first().cloned().unwrap_or_default() });
            }
            g[(i, j)] = scaled[(i, j)] / d2;
        }
    }
    // Γ/L = rowspace(h) / den Z^n, so its factors are den / s_i for the Smith factors s_i of h
    let snf = smith_normal_form(&h);
    let mut glue_factors: Vec<i64> = snf.diagonal.iter().map(|&s| den / s).filter(|&d| d > 1).collect();
    glue_factors.sort_unstable();
    let index = glue_factors.iter().map(|&d| d as u128).product();
    let name = lattice.name().map(|s| format!("{s}+glue"));
    let over = IntegralLattice::from_gram(name.as_deref(), g)?;
    if glue.form.is_quadratic() && !over.is_even() {
        return Err(LatticeError::NotEven);
    }
    Ok(Overlattice { lattice: over, basis, index, glue_factors })
}

/// Result of comparing `A_Γ` with `H^⊥/H` element by element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Correspondence {
    pub orthogonal_order: usize,
    pub kernel_order: usize,
    pub image_order: usize,
    pub target_order: u128,
    /// Elements of `H^⊥` whose value differs from their image's value.
    pub mismatches: usize,
    /// `det(L) = det(Γ) |H|^2`.
    pub determinant_identity: bool,
}

impl Correspondence {
    pub fn holds(&self) -> bool {
        self.determinant_identity
            && self.mismatches == 0
            && self.image_order as u128 == self.target_order && self.image_order * self.kernel_order == self.orthogonal_order
    }
}

/// Maps every class of `H^⊥` into `A_Γ` and compares form values on both sides.
pub fn verify_correspondence(lattice: &IntegralLattice, glue: &GlueSubgroup, over: &Overlattice) -> Result<Correspondence> {
    let target = over.lattice.discriminant_form();
    let tgroup = target.group();
    let orth = glue.orthogonal()?;
    let group = glue.form.group();
    let mut kernel = 0;
    let mut image: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut mismatches = 0;
    for x in &orth {
        let lift = group.lift(x);
        let y = over.coordinates(&lift);
        let cls = tgroup.element_of(&y)?;
        if tgroup.is_zero(&cls) {
            kernel += 1;
        }
        let same = match (&glue.form, &target) {
            (DiscriminantForm::Quadratic(a), DiscriminantForm::Quadratic(b)) => a.q(x) == b.q(&cls),
            _ => glue.form.b(x, x) == target.b(&cls, &cls),
        };
        if !same {
            mismatches += 1;
        }
        image.insert(cls);
    }
    Ok(Correspondence {
        orthogonal_order: orth.len(),
        kernel_order: kernel,
        image_order: image.len(),
        target_order: tgroup.order(),
        mismatches,
        determinant_identity: lattice.determinant() == over.lattice.determinant() * (glue.order() as i128).pow(2),
    })
}

/// `L / (S1 + S2)` for an orthogonal splitting, embedded diagonally in `A_{S1} + A_{S2}`.
#[derive(Clone, Debug)]
pub struct GlueGroup {
    pub invariant_factors: Vec<i64>,
    /// Generators in coordinates of the ambient lattice.
    pub generators: Vec<Vec<i64>>,
    pub first: IntegralLattice,
    pub second: IntegralLattice,
    /// Images of the generators in `A_{S1}` and `A_{S2}`.
    pub first_images: Vec<Vec<i64>>,
    pub second_images: Vec<Vec<i64>>,
}

impl GlueGroup {
    pub fn order(&self) -> u128 {
        self.invariant_factors.iter().map(|&d| d as u128).product()
    }
}

/// Glue group of sublattices `S1`, `S2` (basis rows in ambient coordinates).
pub fn glue_group(lattice: &IntegralLattice, s1: &IntMatrix, s2: &IntMatrix) -> Result<GlueGroup> {
    let n = lattice.rank();
    if s1.cols() != n || s2.cols() != n {
        return Err(LatticeError::BadSplitting("basis vectors have the wrong length".into()));
    }
    let cross = s1.mul(lattice.gram()).mul(&s2.transpose());
    if cross.entries().iter().any(|&x| x != 0) {
        return Err(LatticeError::BadSplitting("summands are not orthogonal".into()));
    }
    if s1.rows() + s2.rows() != n {
        return Err(LatticeError::BadSplitting(format!("ranks {} + {} differ from {n}", s1.rows(), s2.rows())));
    }
    let mut rows = s1.row_vecs();
    rows.extend(s2.row_vecs());
    let s = IntMatrix::from_rows(&rows);
    if s.determinant() == 0 {
        return Err(LatticeError::BadSplitting("summands do not span a full-rank sublattice".into()));
    }
    let first = lattice.sublattice(s1)?;
    let second = lattice.sublattice(s2)?;
    let (g1, g2) = (first.discriminant_group(), second.discriminant_group());
    let snf = smith_normal_form(&s);
    let s_inv = rational_inverse(&s).expect("nonsingular");
    let r1 = s1.rows();
    let mut out = GlueGroup {
        invariant_factors: Vec::new(),
        generators: Vec::new(),
        first,
        second,
        first_images: Vec::new(),
        second_images: Vec::new(),
    };
    for (i, &d) in snf.diagonal.iter().enumerate() {
        if d <= 1 {
            continue;
        }
        let g = snf.v_inv.row(i).to_vec();
        let c: Vec<Rat> =
            (0..n).map(|j| (0..n).map(|k| Rat::from_integer(g[k] as i128) * s_inv[k][j]).sum()).collect();
        out.first_images.push(image_in(&g1, &c[..r1])?);
        out.second_images.push(image_in(&g2, &c[r1..])?);
        out.invariant_factors.push(d);
        out.generators.push(g);
    }
    Ok(out)
}

fn image_in(group: &DiscriminantGroup, coords: &[Rat]) -> Result<Vec<i64>> {
    group.element_of(&rat_vector(coords))
}

/// Every isotropic subgroup of order at most `max_index` with its overlattice.
///
/// Subgroups are compared as sets; no automorphism reduction is applied.
pub fn enumerate_even_overlattices(lattice: &IntegralLattice, max_index: usize) -> Result<Vec<(GlueSubgroup, Overlattice)>> {
    let form = DiscriminantForm::Quadratic(lattice.discriminant_quadratic_form().map_err(|_| LatticeError::NotEven)?);
    let group = form.group();
    let iso = isotropic_elements(&form)?;
    let iso_pv: Vec<Vec<i128>> = iso.iter().map(|x| group.pair_vector(x)).collect();
    let mut seen: BTreeSet<Vec<Vec<i64>>> = BTreeSet::new();
    let trivial = GlueSubgroup::trivial(&form);
    seen.insert(trivial.elements.clone());
    let mut found = vec![trivial.clone()];
    let mut frontier = vec![trivial];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for h in &frontier {
            // a strictly larger subgroup has at least twice the order
            if h.order() * 2 > max_index {
                continue;
            }
            for (x, px) in iso.iter().zip(&iso_pv) {
                if h.contains(x) {
                    continue;
                }
                if !h.generators.iter().all(|g| group.orthogonal_to(g, px)) {
                    continue;
                }
                let mut gens = h.generators.clone();
                gens.push(x.clone());
                let elems = group.span(&gens)?;
                if elems.len() > max_index || seen.contains(&elems) {
                    continue;
                }
                seen.insert(elems.clone());
                let sub = GlueSubgroup { form: form.clone(), generators: gens, elements: elems };
                next.push(sub.clone());
                found.push(sub);
            }
        }
        frontier = next;
    }
    found.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.elements.cmp(&b.elements)));
    found
        .into_iter()
        .map(|h| {
            let over = overlattice_from_glue(lattice, &h)?;
            Ok((h, over))
        })
        .collect()
}
