//! Multivariate gcd by recursive content / primitive-part computation over
//! the last variable present.

use super::multipoly::MultiPoly;

/// Monic gcd (zero only when both inputs are zero).
pub fn gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return MultiPoly::one(a.ring());
    }
    let v = *a
        .support()
        .iter()
        .chain(b.support().iter())
        .max()
        .expect("nonconstant");
    if a.degree_in(v) == 0 {
        return gcd(a, &content_in(b, v));
    }
    if b.degree_in(v) == 0 {
        return gcd(&content_in(a, v), b);
    }
    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let g = gcd(&ca, &cb);
    let mut pa = a.div_exact(&ca).expect("content divides");
    let mut pb = b.div_exact(&cb).expect("content divides");
    if pa.degree_in(v) < pb.degree_in(v) {
        std::mem::swap(&mut pa, &mut pb);
    }
    loop {
        let r = pseudo_rem(&pa, &pb, v);
        if r.is_zero() {
            break;
        }
        if r.degree_in(v) == 0 {
            pb = MultiPoly::one(a.ring());
            break;
        }
        pa = pb;
        pb = primitive_part(&r, v);
    }
    g.mul(&primitive_part(&pb, v)).monic()
}

/// Gcd of the coefficients of `a` viewed as a polynomial in `var`.
pub fn content_in(a: &MultiPoly, var: usize) -> MultiPoly {
    let mut g = MultiPoly::zero(a.ring());
    for c in a.coeffs_in(var) {
        if c.is_zero() {
            continue;
        }
        g = gcd(&g, &c);
        if g.is_constant() {
            break;
        }
    }
    g
}

pub fn primitive_part(a: &MultiPoly, var: usize) -> MultiPoly {
    if a.is_zero() {
        return a.clone();
    }
    a.div_exact(&content_in(a, var)).expect("content divides")
}

/// A multiple `lc^k · a` reduced modulo `b` in `var`.
fn pseudo_rem(a: &MultiPoly, b: &MultiPoly, var: usize) -> MultiPoly {
    let db = b.degree_in(var);
    let bc = b.coeffs_in(var);
    let lb = bc.last().unwrap().clone();
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(var) >= db {
        let dr = r.degree_in(var);
        let lr = r.coeffs_in(var).pop().unwrap();
        let mut shift = vec![MultiPoly::zero(a.ring()); (dr - db) as usize];
        shift.push(lr);
        let t = MultiPoly::from_coeffs_in(a.ring(), var, &shift).mul(b);
        r = r.mul(&lb).sub(&t);
    }
    r
}
