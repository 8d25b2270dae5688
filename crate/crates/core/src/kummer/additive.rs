//! Classes in `F/℘(F)`, `℘(X) = X^p − X`, for `F = F_q(T, U)`.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;

use super::classes::{combine, finish, ClassKind, ClassStatus, ClassSystem, Column, ColumnKind, Dependence, EXHAUSTIVE};
use super::modp;
use super::multiplicative::{check_elements, require_mixed};
use crate::error::{Error, Result};
use crate::fields::{factor_finite, FieldElement, UniPoly};
use crate::funcfield::{
    coprime_support, decompose, from_unipoly, gcd, multiplicity, to_unipoly, FunctionField, Monomial, MultiPoly,
    PrimeCertificate, PrimeKind, RatFunc,
};

/// Largest number of `F_p` unknowns in the solver's ansatz.
const MAX_UNKNOWNS: usize = 20_000;
/// Largest number of combinations tried by the exhaustive rank.
pub const MAX_COMBINATIONS: u64 = 729;

pub fn wp(f: &RatFunc) -> RatFunc {
    f.pow(f.ring().characteristic()).sub(f)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WpOutcome {
    /// `α` with `α^p − α = b`, verified.
    Solved(RatFunc),
    NoSolution(Obstruction),
}

/// Why `b` is not in `℘(F)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Obstruction {
    /// Every prime factor of the square-free `pole` is a pole of `b` of
    /// order `order`, and `p ∤ order`.
    PoleOrder { pole: MultiPoly, order: u32 },
    /// The ansatz `α = A/D` leads to an inconsistent `F_p`-linear system.
    Inconsistent(LinearSystem),
}

/// The system `Σ x_{μ,j} L(β_j μ) = N` for `L(A) = A^p − A·D^{p−1}`, with
/// `b = N / D^p`, unknowns indexed by box monomials `μ` and an `F_p`-basis
/// `β_j` of the constants, equations by (monomial, coordinate).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSystem {
    pub denominator: MultiPoly,
    pub unknowns: Vec<(Monomial, usize)>,
    pub equations: Vec<(Monomial, usize)>,
    pub matrix: Vec<Vec<u64>>,
    pub rhs: Vec<u64>,
    /// `y` with `y·matrix = 0` and `y·rhs ≠ 0`.
    pub certificate: Vec<u64>,
}

impl LinearSystem {
    /// Checks the Fredholm certificate against the stored system.
    pub fn certificate_holds(&self, p: u64) -> bool {
        let n = self.unknowns.len();
        self.certificate.len() == self.matrix.len()
            && modp::vec_mat(&self.certificate, &self.matrix, n, p).iter().all(|&x| x == 0)
            && modp::dot(&self.certificate, &self.rhs, p) != 0
    }
}

impl Obstruction {
    /// Re-checks the obstruction against `b` from scratch.
    pub fn check(&self, b: &RatFunc) -> bool {
        let p = b.ring().characteristic();
        let den = b.den();
        match self {
            Obstruction::PoleOrder { pole, order } => {
                if pole.is_constant() || order % p as u32 == 0 || multiplicity(den, pole) != *order {
                    return false;
                }
                let rest = den.div_exact(&pole.pow(*order as u64)).expect("multiplicity");
                let square_free = pole.support().iter().any(|&v| {
                    let d = pole.derivative(v);
                    !d.is_zero() && gcd(pole, &d).is_constant()
                });
                square_free && gcd(&rest, pole).is_constant()
            }
            Obstruction::Inconsistent(sys) => match build_system(b) {
                Ok(Ansatz::System(fresh)) => {
                    fresh.matrix == sys.matrix && fresh.rhs == sys.rhs && sys.certificate_holds(p)
                }
                _ => false,
            },
        }
    }
}

enum Ansatz {
    Pole(Obstruction),
    System(LinearSystem),
}

fn frobenius_basis(ring: &FunctionField) -> Vec<FieldElement> {
    ring.base().basis()
}

/// Builds the solver's linear system for `b` (without solving it), or a
/// pole obstruction when the denominator is not a `p`-th power.
fn build_system(b: &RatFunc) -> Result<Ansatz> {
    let ring = b.ring();
    let p = ring.characteristic();
    if p == 0 {
        return Err(Error::UnsupportedBase(format!(
            "{} has characteristic 0",
            ring.base().name()
        )));
    }
    let (num, den) = (b.num(), b.den());
    let Some(d) = den.pth_root() else {
        let cols = coprime_support(&[RatFunc::from_poly(den.clone())]);
        let dec = decompose(&RatFunc::from_poly(den.clone()), &cols)?;
        let (col, e) = cols
            .iter()
            .zip(&dec.exponents)
            .find(|(_, &e)| e % p as i64 != 0)
            .expect("a non-p-th power has an exponent prime to p");
        return Ok(Ansatz::Pole(Obstruction::PoleOrder {
            pole: col.poly.clone(),
            order: *e as u32,
        }));
    };
    let nv = ring.nvars();
    let bounds: Vec<u32> = (0..nv)
        .map(|v| d.degree_in(v).max(num.degree_in(v).div_ceil(p as u32)))
        .collect();
    let basis = frobenius_basis(ring);
    let k = basis.len();
    let box_size: usize = bounds.iter().map(|&b| b as usize + 1).product();
    if box_size * k > MAX_UNKNOWNS {
        return Err(Error::UnsupportedShape(format!(
            "ansatz for {b} needs {} unknowns",
            box_size * k
        )));
    }
    let mut monos = vec![Vec::<u32>::new()];
    for &bd in &bounds {
        monos = monos
            .into_iter()
            .flat_map(|m| {
                (0..=bd).map(move |e| {
                    let mut m = m.clone();
                    m.push(e);
                    m
                })
            })
            .collect();
    }
    let dp1 = d.pow(p - 1);
    let mut unknowns = Vec::new();
    let mut images = Vec::new();
    for m in monos {
        let mono = Monomial(m.clone());
        let pm = Monomial(m.iter().map(|e| e * p as u32).collect());
        for (j, beta) in basis.iter().enumerate() {
            let frob = MultiPoly::from_terms(ring, vec![(pm.clone(), beta.pow_u64(p))]);
            let lin = MultiPoly::from_terms(ring, vec![(mono.clone(), beta.clone())]).mul(&dp1);
            images.push(frob.sub(&lin));
            unknowns.push((mono.clone(), j));
        }
    }
    let mut rows: BTreeSet<Monomial> = num.terms().map(|(m, _)| m.clone()).collect();
    for img in &images {
        rows.extend(img.terms().map(|(m, _)| m.clone()));
    }
    let row_index: BTreeMap<&Monomial, usize> = rows.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let neq = rows.len() * k;
    let mut matrix = vec![vec![0u64; unknowns.len()]; neq];
    for (col, img) in images.iter().enumerate() {
        for (m, c) in img.terms() {
            for (l, x) in c.mod_coords().expect("finite base").into_iter().enumerate() {
                matrix[row_index[m] * k + l][col] = x;
            }
        }
    }
    let mut rhs = vec![0u64; neq];
    for (m, c) in num.terms() {
        for (l, x) in c.mod_coords().expect("finite base").into_iter().enumerate() {
            rhs[row_index[m] * k + l] = x;
        }
    }
    let equations = rows.iter().flat_map(|m| (0..k).map(move |l| (m.clone(), l))).collect();
    Ok(Ansatz::System(LinearSystem {
        denominator: d,
        unknowns,
        equations,
        matrix,
        rhs,
        certificate: Vec::new(),
    }))
}

/// Decides `b ∈ ℘(F)` for a finite base field, with a preimage or an
/// obstruction.
pub fn wp_solve(b: &RatFunc) -> Result<WpOutcome> {
    let ring = b.ring();
    let p = ring.characteristic();
    let mut sys = match build_system(b)? {
        Ansatz::Pole(o) => return Ok(WpOutcome::NoSolution(o)),
        Ansatz::System(s) => s,
    };
    match modp::solve(&sys.matrix, sys.unknowns.len(), &sys.rhs, p) {
        Ok(x) => {
            let basis = frobenius_basis(ring);
            let terms = sys
                .unknowns
                .iter()
                .zip(&x)
                .filter(|(_, &c)| c != 0)
                .map(|((m, j), &c)| (m.clone(), &basis[*j] * &ring.base().from_u64(c)))
                .collect();
            let a = MultiPoly::from_terms(ring, terms);
            let alpha = RatFunc::from_poly(a).div(&RatFunc::from_poly(sys.denominator.clone()))?;
            if wp(&alpha) != *b {
                return Err(Error::InvalidRelation(format!(
                    "solver produced a preimage of {b} that fails to verify"
                )));
            }
            Ok(WpOutcome::Solved(alpha))
        }
        Err(y) => {
            sys.certificate = y;
            Ok(WpOutcome::NoSolution(Obstruction::Inconsistent(sys)))
        }
    }
}

fn as_preconditions(field: &FunctionField, elems: &[RatFunc], p: u64) -> Result<()> {
    let c = field.characteristic();
    if c == 0 || c != p {
        return Err(Error::WrongCharacteristic(format!(
            "Artin–Schreier classes need p = char {}, got p = {p}",
            field.base().name()
        )));
    }
    check_elements(field, elems)
}

/// Which route [`as_rank`] takes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AsStrategy {
    /// Echelon form of additive normal forms (univariate inputs), falling
    /// back to enumeration otherwise.
    #[default]
    Auto,
    Echelon,
    /// Solve every combination with [`wp_solve`].
    Enumerate,
}

/// Rank of the `F_p`-span of the classes of `elems` in `F/℘(F)`.
pub fn as_rank(field: &FunctionField, elems: &[RatFunc], p: u64, strategy: AsStrategy) -> Result<ClassSystem> {
    as_preconditions(field, elems, p)?;
    let vars: BTreeSet<usize> = elems.iter().flat_map(|e| e.support()).collect();
    let univariate = vars.len() <= 1;
    match strategy {
        AsStrategy::Enumerate => as_rank_exhaustive(field, elems, p),
        AsStrategy::Echelon if !univariate => Err(Error::UnsupportedShape(
            "the echelon route needs elements in a single variable".into(),
        )),
        AsStrategy::Auto if !univariate => as_rank_exhaustive(field, elems, p),
        _ => as_rank_echelon(field, elems, p, vars.into_iter().next().unwrap_or(0)),
    }
}

fn as_rank_exhaustive(field: &FunctionField, elems: &[RatFunc], p: u64) -> Result<ClassSystem> {
    let n = elems.len();
    let total = (p as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if total > MAX_COMBINATIONS as u128 {
        return Err(Error::UnsupportedShape(format!(
            "{p}^{n} combinations exceed the enumeration cap {MAX_COMBINATIONS}"
        )));
    }
    let mut dependencies: Vec<Dependence> = Vec::new();
    let mut span: Vec<Vec<u64>> = Vec::new();
    for idx in 1..total as u64 {
        let nu: Vec<u64> = (0..n).map(|i| (idx / p.pow(i as u32)) % p).collect();
        let x = combine(ClassKind::ArtinSchreier, field, elems, &nu);
        if let WpOutcome::Solved(alpha) = wp_solve(&x)? {
            let mut trial = span.clone();
            trial.push(nu.clone());
            if modp::rank(&trial, p) > span.len() {
                span.push(nu.clone());
                dependencies.push(Dependence {
                    nu,
                    phi: RatFunc::zero(field),
                    psi: RatFunc::zero(field),
                    alpha,
                });
            }
        }
    }
    let status = match dependencies.first() {
        Some(d) => ClassStatus::DependenceWitness(d.nu.clone()),
        None => ClassStatus::CertifiedIndependent,
    };
    Ok(ClassSystem {
        kind: ClassKind::ArtinSchreier,
        p,
        field: field.clone(),
        elements: elems.to_vec(),
        relative: false,
        columns: Vec::new(),
        valuation_matrix: vec![Vec::new(); n],
        rank: n - dependencies.len(),
        pivot_columns: Vec::new(),
        dependencies,
        status,
        method: EXHAUSTIVE.into(),
    })
}

/// Coordinates of the additive normal form: local terms `r/π^j` with
/// `p ∤ j`, polynomial terms `c·x^e` with `p ∤ e`, and the trace of the
/// constant term.
type NormalForm = BTreeMap<(u8, String, u32, usize, usize), u64>;

fn inv_mod_poly(a: &UniPoly, m: &UniPoly) -> UniPoly {
    // extended Euclid on (m, a)
    let field = a.field();
    let (mut r0, mut r1) = (m.clone(), a.rem(m).expect("nonzero modulus"));
    let (mut s0, mut s1) = (UniPoly::zero(field), UniPoly::one(field));
    while !r1.is_zero() {
        let (q, r) = r0.divrem(&r1).expect("nonzero");
        let s = s0.sub(&q.mul(&s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    // r0 is a unit
    s0.scale(&r0.lc().inv().expect("coprime")).rem(m).expect("nonzero modulus")
}

struct Expansion {
    poly: UniPoly,
    /// Per prime, digits indexed by pole order (`digits[j]` for `1/π^j`).
    locals: Vec<(UniPoly, Vec<UniPoly>)>,
}

fn partial_fractions(num: &UniPoly, den: &UniPoly) -> Expansion {
    let (poly, rem) = num.divrem(den).expect("nonzero denominator");
    let mut locals = Vec::new();
    if den.degree().unwrap_or(0) > 0 {
        let fac = factor_finite(den).expect("finite base");
        for (pi, m) in fac.factors {
            let pm = pi.pow(m as u64);
            let rest = den.div_exact(&pm).expect("factor");
            let mut r = rem.mul(&inv_mod_poly(&rest, &pm)).rem(&pm).expect("nonzero");
            let mut digits = vec![UniPoly::zero(den.field()); m as usize + 1];
            // r = Σ d_i π^i, the digit d_i sits at order m − i
            for i in 0..m as usize {
                let (q, d) = r.divrem(&pi).expect("nonzero");
                digits[m as usize - i] = d;
                r = q;
            }
            locals.push((pi, digits));
        }
    }
    Expansion { poly, locals }
}

fn trace(c: &FieldElement) -> u64 {
    let p = c.field().characteristic();
    let k = c.field().total_degree();
    let mut acc = c.field().zero();
    let mut x = c.clone();
    for _ in 0..k {
        acc = &acc + &x;
        x = x.pow_u64(p);
    }
    acc.as_prime_residue().expect("trace lies in the prime field")
}

/// Reduces `b` modulo `℘(F)` to its normal form, working in the variable
/// `var`; `b` must not involve any other variable.
fn normal_form(b: &RatFunc, var: usize) -> NormalForm {
    let ring = b.ring().clone();
    let base = ring.base().clone();
    let p = ring.characteristic();
    let k = base.total_degree();
    let mut cur = b.clone();
    loop {
        let num = to_unipoly(cur.num(), var);
        let den = to_unipoly(cur.den(), var);
        let exp = partial_fractions(&num, &den);
        // the highest pole order divisible by p
        let local = exp
            .locals
            .iter()
            .flat_map(|(pi, digits)| {
                digits
                    .iter()
                    .enumerate()
                    .filter(|(j, d)| *j > 0 && (*j as u64).is_multiple_of(p) && !d.is_zero())
                    .map(move |(j, d)| (j, pi, d))
            })
            .max_by_key(|(j, _, _)| *j);
        if let Some((j, pi, r)) = local {
            // s^p ≡ r mod π, by Frobenius inversion in F_q[x]/π
            let size_exp = k * pi.degree().expect("nonconstant");
            let e = num_traits::pow(BigUint::from(p), size_exp - 1);
            let s = r.powmod(&e, pi).expect("nonzero modulus");
            let s = RatFunc::from_poly(from_unipoly(&ring, &s, var));
            let pij = RatFunc::from_poly(from_unipoly(&ring, &pi.pow(j as u64 / p), var));
            cur = cur.sub(&wp(&s.div(&pij).expect("nonzero")));
            continue;
        }
        let top = exp
            .poly
            .coeffs()
            .iter()
            .enumerate()
            .rev()
            .find(|(e, c)| *e > 0 && (*e as u64).is_multiple_of(p) && !c.is_zero());
        if let Some((e, c)) = top {
            let root = c.pth_root().expect("finite field");
            let mono = from_unipoly(&ring, &UniPoly::monomial(root, e / p as usize), var);
            cur = cur.sub(&wp(&RatFunc::from_poly(mono)));
            continue;
        }
        let mut out = NormalForm::new();
        let mut put = |key: (u8, String, u32, usize, usize), x: u64| {
            if x != 0 {
                out.insert(key, x);
            }
        };
        for (pi, digits) in &exp.locals {
            let label = pi.display_var(&ring.vars()[var]);
            for (j, d) in digits.iter().enumerate().skip(1) {
                for (i, c) in d.coeffs().iter().enumerate() {
                    for (l, x) in c.mod_coords().expect("finite").into_iter().enumerate() {
                        put((0, label.clone(), j as u32, i, l), x);
                    }
                }
            }
        }
        for (e, c) in exp.poly.coeffs().iter().enumerate().skip(1) {
            for (l, x) in c.mod_coords().expect("finite").into_iter().enumerate() {
                put((1, String::new(), e as u32, 0, l), x);
            }
        }
        if let Some(c0) = exp.poly.coeffs().first() {
            put((2, String::new(), 0, 0, 0), trace(c0));
        }
        return out;
    }
}

fn as_rank_echelon(field: &FunctionField, elems: &[RatFunc], p: u64, var: usize) -> Result<ClassSystem> {
    let forms: Vec<NormalForm> = elems.iter().map(|b| normal_form(b, var)).collect();
    let keys: BTreeSet<_> = forms.iter().flat_map(|f| f.keys().cloned()).collect();
    let x = &field.vars()[var];
    let columns = keys
        .iter()
        .map(|(g, pi, j, i, l)| Column {
            label: match g {
                0 => format!("{x}^{i}/({pi})^{j} coord {l}"),
                1 => format!("{x}^{j} coord {l}"),
                _ => "trace of constant".into(),
            },
            kind: ColumnKind::Coordinate,
        })
        .collect();
    let matrix = forms
        .iter()
        .map(|f| keys.iter().map(|key| f.get(key).copied().unwrap_or(0) as i64).collect())
        .collect();
    let mut err = None;
    let sys = finish(
        ClassKind::ArtinSchreier,
        p,
        field,
        elems,
        false,
        columns,
        matrix,
        "additive normal form",
        |nu| {
            let x = combine(ClassKind::ArtinSchreier, field, elems, nu);
            match wp_solve(&x) {
                Ok(WpOutcome::Solved(alpha)) => Some(Dependence {
                    nu: nu.to_vec(),
                    phi: RatFunc::zero(field),
                    psi: RatFunc::zero(field),
                    alpha,
                }),
                Ok(WpOutcome::NoSolution(_)) => None,
                Err(e) => {
                    err = Some(e);
                    None
                }
            }
        },
    );
    match err {
        Some(e) => Err(e),
        None => Ok(sys),
    }
}

/// Solves a certified prime `π` linear in some variable `x` for `x`.
fn linear_root(pi: &MultiPoly, cert: &PrimeCertificate) -> Option<(usize, RatFunc)> {
    let ring = pi.ring();
    let var = match cert {
        PrimeCertificate::LinearIn(name) => ring.var_index(name)?,
        PrimeCertificate::Linear => *pi.support().first()?,
        _ => return None,
    };
    let c = pi.coeffs_in(var);
    if c.len() != 2 {
        return None;
    }
    let value = RatFunc::from_poly(c[0].neg()).div(&RatFunc::from_poly(c[1].clone())).ok()?;
    Some((var, value))
}

/// Splits `x` as `φ(T) + ψ(U)` when possible, by specializing.
fn pure_split(x: &RatFunc) -> Option<(RatFunc, RatFunc)> {
    let ring = x.ring();
    let base = ring.base();
    let t: Vec<usize> = (0..ring.nvars()).filter(|&i| ring.is_t_var(i)).collect();
    let u: Vec<usize> = (0..ring.nvars()).filter(|&i| !ring.is_t_var(i)).collect();
    let q = base.order().unwrap_or(1 << 20).min(64);
    for s in 0..q {
        let c = RatFunc::constant(ring, base.element_from_index(s));
        let bind = |vars: &[usize]| -> Vec<(usize, RatFunc)> { vars.iter().map(|&v| (v, c.clone())).collect() };
        let (Ok(phi), Ok(psi0), Ok(c0)) = (
            x.substitute(&bind(&u)),
            x.substitute(&bind(&t)),
            x.substitute(&bind(&(0..ring.nvars()).collect::<Vec<_>>())),
        ) else {
            continue;
        };
        let psi = psi0.sub(&c0);
        return (phi.add(&psi) == *x).then_some((phi, psi));
    }
    None
}

/// Rank of the classes of `elems` modulo `C(T) + C(U) + ℘(F)`, certified by
/// residues at mixed primes where every element has at most a simple pole.
pub fn as_relative_rank(field: &FunctionField, elems: &[RatFunc], p: u64) -> Result<ClassSystem> {
    as_preconditions(field, elems, p)?;
    require_mixed(field)?;
    let dens: Vec<RatFunc> = elems.iter().map(|e| RatFunc::from_poly(e.den().clone())).collect();
    let support = coprime_support(&dens);
    let k = field.base().total_degree();
    let mut columns = Vec::new();
    let mut matrix: Vec<Vec<i64>> = vec![Vec::new(); elems.len()];
    for col in &support {
        if col.kind != PrimeKind::Mixed {
            continue;
        }
        let Some(prime) = &col.prime else { continue };
        let Some((var, root)) = linear_root(&col.poly, prime.certificate()) else {
            continue;
        };
        if elems.iter().any(|e| multiplicity(e.den(), &col.poly) > 1) {
            continue;
        }
        let pi = RatFunc::from_poly(col.poly.clone());
        let residues = elems
            .iter()
            .map(|e| e.mul(&pi).substitute(&[(var, root.clone())]))
            .collect::<Result<Vec<_>>>()?;
        // common denominator, then coefficient coordinates of numerators
        let lcm = residues.iter().fold(MultiPoly::one(field), |acc, r| {
            let g = gcd(&acc, r.den());
            acc.mul(&r.den().div_exact(&g).expect("gcd divides"))
        });
        let nums: Vec<MultiPoly> = residues
            .iter()
            .map(|r| r.num().mul(&lcm.div_exact(r.den()).expect("lcm")))
            .collect();
        let monos: BTreeSet<Monomial> = nums.iter().flat_map(|n| n.terms().map(|(m, _)| m.clone())).collect();
        for m in &monos {
            for l in 0..k {
                columns.push(Column {
                    label: format!("residue at {} [{m:?}] coord {l}", col.poly),
                    kind: ColumnKind::Coordinate,
                });
            }
            for (row, n) in matrix.iter_mut().zip(&nums) {
                let c = n.terms().find(|(mm, _)| *mm == m).map(|(_, c)| c.mod_coords().expect("finite"));
                for l in 0..k {
                    row.push(c.as_ref().map_or(0, |c| c[l] as i64));
                }
            }
        }
    }
    let usable = !columns.is_empty();
    let sys = finish(
        ClassKind::ArtinSchreier,
        p,
        field,
        elems,
        true,
        columns,
        matrix,
        "residues at mixed primes",
        |nu| {
            let x = combine(ClassKind::ArtinSchreier, field, elems, nu);
            let zero = RatFunc::zero(field);
            let dep = |phi: RatFunc, psi: RatFunc, alpha: RatFunc| Dependence {
                nu: nu.to_vec(),
                phi,
                psi,
                alpha,
            };
            if x.is_zero() {
                return Some(dep(zero.clone(), zero.clone(), zero));
            }
            if let Some((phi, psi)) = pure_split(&x) {
                return Some(dep(phi, psi, zero));
            }
            match wp_solve(&x) {
                Ok(WpOutcome::Solved(alpha)) => Some(dep(zero.clone(), zero, alpha)),
                _ => None,
            }
        },
    );
    if !usable && !sys.is_exact() {
        return Err(Error::UnsupportedShape(
            "no mixed prime with simple poles gives an obstruction".into(),
        ));
    }
    Ok(sys)
}
