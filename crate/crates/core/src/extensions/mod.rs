//! Finite extensions inside an explicit common overfield: linear
//! disjointness, Galois actions and fixed fields, socles, Vandermonde
//! coordinates and leading-coefficient certificates.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::fields::linalg::{kernel, solve};
use crate::fields::{span_closure, Field, FieldElement, UniPoly};
use crate::groups::{frattini_generated, FiniteGroup, Subgroup};

fn base_coords(x: &FieldElement) -> Vec<FieldElement> {
    crate::fields::base_coords(x)
}

fn from_base_coords(field: &Field, coords: &[FieldElement]) -> Result<FieldElement> {
    let mut acc = field.zero();
    for (k, c) in coords.iter().enumerate() {
        if !c.is_zero() {
            acc = &acc + &(&field.embed(c)? * &field.basis_element(k));
        }
    }
    Ok(acc)
}

/// A base-fixing automorphism of a tower, given by the images of the tower
/// generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Automorphism {
    images: Vec<FieldElement>,
}

impl Automorphism {
    /// Checks that every image is a root of the conjugated minimal
    /// polynomial, then multiplicativity on the monomial basis and
    /// invertibility.
    pub fn from_images(field: &Field, images: Vec<FieldElement>) -> Result<Self> {
        let steps = field.steps();
        if images.len() != steps.len() {
            return Err(Error::InvalidArgument(format!(
                "{} generator images for a tower with {} steps",
                images.len(),
                steps.len()
            )));
        }
        for im in &images {
            if **im.field() != **field {
                return Err(Error::ParentMismatch(im.field().name().to_string(), field.name().to_string()));
            }
        }
        let sigma = Automorphism { images };
        for (level, step) in steps.iter().enumerate() {
            let mut value = field.zero();
            for c in step.minpoly.coeffs().iter().rev() {
                let c = sigma.apply(&field.embed(c)?);
                value = &(&value * &sigma.images[level]) + &c;
            }
            if !value.is_zero() {
                return Err(Error::InvalidArgument(format!(
                    "image of {} is not a root of its conjugated minimal polynomial",
                    step.symbol
                )));
            }
        }
        let basis = field.basis();
        let mapped: Vec<FieldElement> = basis.iter().map(|b| sigma.apply(b)).collect();
        for (j, a) in basis.iter().enumerate() {
            for (k, b) in basis.iter().enumerate().skip(j) {
                if sigma.apply(&(a * b)) != &mapped[j] * &mapped[k] {
                    return Err(Error::InvalidArgument("generator images are not multiplicative".into()));
                }
            }
        }
        let matrix: Vec<Vec<FieldElement>> = mapped.iter().map(base_coords).collect();
        if crate::fields::linalg::rank(&matrix) != basis.len() {
            return Err(Error::InvalidArgument("generator images are not invertible".into()));
        }
        Ok(sigma)
    }

    pub fn identity(field: &Field) -> Self {
        Automorphism {
            images: (0..field.steps().len()).map(|l| field.generator(l)).collect(),
        }
    }

    pub fn images(&self) -> &[FieldElement] {
        &self.images
    }

    pub fn apply(&self, x: &FieldElement) -> FieldElement {
        let field = x.field();
        let coords = base_coords(x);
        let mut acc = field.zero();
        for (k, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mono = field
                .basis_exponents(k)
                .iter()
                .zip(&self.images)
                .fold(field.one(), |m, (&e, im)| &m * &im.pow_u64(e as u64));
            acc = &acc + &(&field.embed(c).expect("base coordinate") * &mono);
        }
        acc
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        Automorphism {
            images: other.images.iter().map(|x| self.apply(x)).collect(),
        }
    }
}

/// A finite group of automorphisms of `field`; group element `k` acts by
/// `automorphisms[k]` and the group law is composition.
#[derive(Debug, Clone)]
pub struct GaloisData {
    pub field: Field,
    pub group: FiniteGroup,
    pub automorphisms: Vec<Automorphism>,
}

impl GaloisData {
    pub fn generate(field: &Field, name: &str, gens: &[Automorphism]) -> Result<Self> {
        let id = Automorphism::identity(field);
        let mut elems = vec![id.clone()];
        let mut index: HashMap<Automorphism, usize> = HashMap::from([(id, 0)]);
        let mut i = 0;
        while i < elems.len() {
            for g in gens {
                let x = elems[i].compose(g);
                if !index.contains_key(&x) {
                    if elems.len() > field.total_degree() {
                        return Err(Error::InvalidArgument("more automorphisms than the degree allows".into()));
                    }
                    index.insert(x.clone(), elems.len());
                    elems.push(x);
                }
            }
            i += 1;
        }
        let table = elems
            .iter()
            .map(|a| elems.iter().map(|b| index[&a.compose(b)] as u32).collect())
            .collect();
        Ok(GaloisData {
            field: field.clone(),
            group: FiniteGroup::from_table(name, table)?,
            automorphisms: elems,
        })
    }

    /// Whether `field` is Galois over its base with this group.
    pub fn is_full(&self) -> bool {
        self.group.order() == self.field.total_degree()
    }

    /// Group elements fixing every element of `elems`.
    pub fn stabilizer(&self, elems: &[FieldElement]) -> Subgroup {
        let members = (0..self.group.order()).filter(|&k| elems.iter().all(|x| self.automorphisms[k].apply(x) == *x));
        Subgroup::new(&self.group, members).expect("a stabilizer is a subgroup")
    }

    /// Basis over the base field of the elements fixed by `h`.
    pub fn fixed_field(&self, h: &Subgroup) -> Result<Vec<FieldElement>> {
        h.check_in(&self.group)?;
        let basis = self.field.basis();
        let n = basis.len();
        let base = self.field.base_field();
        let mut rows = Vec::new();
        for &k in h.members() {
            let sigma = &self.automorphisms[k];
            let cols: Vec<Vec<FieldElement>> = basis.iter().map(|b| base_coords(&(&sigma.apply(b) - b))).collect();
            for r in 0..n {
                rows.push((0..n).map(|c| cols[c][r].clone()).collect());
            }
        }
        kernel(&rows, n, &base.zero())
            .iter()
            .map(|v| from_base_coords(&self.field, v))
            .collect()
    }
}

/// Two subfields of `ambient`, given by generators, with optional Galois
/// data for the ambient field.
#[derive(Debug, Clone)]
pub struct ExtensionInstance {
    pub ambient: Field,
    pub sub1: Vec<FieldElement>,
    pub sub2: Vec<FieldElement>,
    pub galois: Option<GaloisData>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Disjointness {
    pub dim1: usize,
    pub dim2: usize,
    pub dim_compositum: usize,
    pub linearly_disjoint: bool,
    /// The verdict of `G = H₁H₂`, when the Galois data covers the ambient
    /// field.
    pub galois_verdict: Option<bool>,
}

impl Disjointness {
    pub fn consistent(&self) -> bool {
        self.galois_verdict.is_none_or(|g| g == self.linearly_disjoint)
    }
}

pub fn disjointness_check(inst: &ExtensionInstance) -> Result<Disjointness> {
    let dim1 = span_closure(&inst.ambient, &inst.sub1)?.dimension;
    let dim2 = span_closure(&inst.ambient, &inst.sub2)?.dimension;
    let both: Vec<FieldElement> = inst.sub1.iter().chain(&inst.sub2).cloned().collect();
    let dim_compositum = span_closure(&inst.ambient, &both)?.dimension;
    let galois_verdict = inst.galois.as_ref().filter(|g| g.is_full()).map(|g| {
        let h1 = g.stabilizer(&inst.sub1);
        let h2 = g.stabilizer(&inst.sub2);
        h1.product_is_whole(&g.group, &h2)
    });
    Ok(Disjointness {
        dim1,
        dim2,
        dim_compositum,
        linearly_disjoint: dim_compositum == dim1 * dim2,
        galois_verdict,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Socle {
    /// `Φ^p(G, H)`; its fixed field is the `p`-socle of the fixed field of
    /// `H`.
    pub subgroup: Subgroup,
    /// `n` with `[G : Φ^p(G, H)] = p^n`.
    pub rank: usize,
}

pub fn socle_subgroup(g: &FiniteGroup, h: &Subgroup, p: u64) -> Result<Socle> {
    let rel = crate::groups::relative_frattini(g, h, p)?;
    let mut index = rel.subgroup.index();
    let mut rank = 0;
    while index > 1 {
        index /= p as usize;
        rank += 1;
    }
    debug_assert!(frattini_generated(g, p).is_subset(&rel.subgroup));
    Ok(Socle {
        subgroup: rel.subgroup,
        rank,
    })
}

/// Conjugates `θ_1, …, θ_n` of a primitive element.
#[derive(Debug, Clone)]
pub struct ConjugateSet {
    thetas: Vec<FieldElement>,
}

impl ConjugateSet {
    pub fn new(thetas: Vec<FieldElement>) -> Result<Self> {
        for i in 0..thetas.len() {
            if thetas[i + 1..].contains(&thetas[i]) {
                return Err(Error::SingularSystem);
            }
        }
        Ok(ConjugateSet { thetas })
    }

    pub fn thetas(&self) -> &[FieldElement] {
        &self.thetas
    }
}

/// Solves `σ_i(λ) = Σ_k ℓ_k θ_i^k` and checks the solution by substitution.
pub fn vandermonde_coordinates(images: &[FieldElement], conj: &ConjugateSet) -> Result<Vec<FieldElement>> {
    let n = conj.thetas.len();
    if images.len() != n {
        return Err(Error::InvalidArgument(format!("{} images for {n} conjugates", images.len())));
    }
    let Some(first) = conj.thetas.first() else {
        return Ok(Vec::new());
    };
    let field = first.field().clone();
    let rows: Vec<Vec<FieldElement>> = conj.thetas.iter().map(|t| (0..n).map(|k| t.pow_u64(k as u64)).collect()).collect();
    let ell = solve(&rows, images)?;
    for (row, im) in rows.iter().zip(images) {
        let v = row.iter().zip(&ell).fold(field.zero(), |acc, (a, b)| &acc + &(a * b));
        if v != *im {
            return Err(Error::SingularSystem);
        }
    }
    Ok(ell)
}

/// `Σ a_i α^i = 0` for the leading coefficient `α` of `φ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeadingCertificate {
    pub alpha: FieldElement,
    /// Coefficients in the field of the relation.
    pub coefficients: Vec<FieldElement>,
    /// Whether the relation was first made monic via `ψ = f_n·φ`.
    pub made_integral: bool,
    /// Degree in `t` of the dominant terms.
    pub top_degree: usize,
}

fn embed_poly(field: &Field, f: &UniPoly) -> Result<UniPoly> {
    let c = f.coeffs().iter().map(|x| field.embed(x)).collect::<Result<Vec<_>>>()?;
    Ok(UniPoly::new(field, c))
}

/// From `Σ f_i φ^i = 0` with `f_i ∈ F[t]`, `φ ∈ L[t]`, reads off a relation
/// for the leading coefficient of `φ` from the top-degree terms. When `f_n`
/// is not constant, the relation for `ψ = f_n φ` (monic) is used and
/// rescaled.
pub fn leading_coeff_certificate(phi: &UniPoly, relation: &[UniPoly]) -> Result<LeadingCertificate> {
    let l = phi.field().clone();
    let Some(f_n) = relation.last().filter(|f| !f.is_zero()) else {
        return Err(Error::InvalidRelation("leading relation coefficient f_n is zero".into()));
    };
    if phi.is_zero() {
        return Err(Error::InvalidArgument("phi is zero".into()));
    }
    let f_base = f_n.field().clone();
    let lifted: Vec<UniPoly> = relation.iter().map(|f| embed_poly(&l, f)).collect::<Result<_>>()?;
    let total = lifted
        .iter()
        .enumerate()
        .fold(UniPoly::zero(&l), |acc, (i, f)| acc.add(&f.mul(&phi.pow(i as u64))));
    if !total.is_zero() {
        return Err(Error::InvalidRelation("sum of f_i·phi^i is not zero".into()));
    }
    let n = relation.len() - 1;
    let made_integral = f_n.degree() != Some(0);
    let (psi, rel): (UniPoly, Vec<UniPoly>) = if made_integral {
        // g_i = f_i f_n^{n-1-i}, g_n = 1 and psi = f_n phi
        let rel = (0..=n)
            .map(|i| {
                if i == n {
                    UniPoly::one(&f_base)
                } else {
                    relation[i].mul(&f_n.pow((n - 1 - i) as u64))
                }
            })
            .collect();
        (embed_poly(&l, f_n)?.mul(phi), rel)
    } else {
        (phi.clone(), relation.to_vec())
    };
    let dpsi = psi.degree().unwrap();
    let top_degree = rel
        .iter()
        .enumerate()
        .filter_map(|(i, f)| f.degree().map(|d| d + i * dpsi))
        .max()
        .unwrap();
    let mut coefficients: Vec<FieldElement> = rel
        .iter()
        .enumerate()
        .map(|(i, f)| match f.degree() {
            Some(d) if d + i * dpsi == top_degree => f.lc(),
            _ => f_base.zero(),
        })
        .collect();
    if made_integral {
        // relation for lc(psi) = c·alpha, rescaled to alpha
        let c = f_n.lc();
        for (i, a) in coefficients.iter_mut().enumerate() {
            *a = &*a * &c.pow_u64(i as u64);
        }
    }
    let alpha = phi.lc();
    let value = coefficients
        .iter()
        .enumerate()
        .try_fold(l.zero(), |acc, (i, a)| Ok::<_, Error>(&acc + &(&l.embed(a)? * &alpha.pow_u64(i as u64))))?;
    if !value.is_zero() || coefficients.iter().all(FieldElement::is_zero) {
        return Err(Error::InvalidRelation("top-degree terms give no relation".into()));
    }
    Ok(LeadingCertificate {
        alpha,
        coefficients,
        made_integral,
        top_degree,
    })
}
