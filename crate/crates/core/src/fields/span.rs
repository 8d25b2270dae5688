use super::descriptor::Field;
use super::element::FieldElement;
use super::linalg::rref;
use crate::error::{Error, Result};

/// The unital subalgebra generated by a family of elements.
#[derive(Debug, Clone)]
pub struct SpanClosure {
    /// Dimension over the bottom field of the tower.
    pub dimension: usize,
    pub basis: Vec<FieldElement>,
}

/// Coordinates of `x` as elements of the bottom field.
pub(crate) fn base_coords(x: &FieldElement) -> Vec<FieldElement> {
    let base = x.field().base_field();
    match x.rational_coords() {
        Some(c) => c.iter().map(|r| base.from_rational(r)).collect(),
        None => x
            .mod_coords()
            .unwrap()
            .into_iter()
            .map(|v| base.from_u64(v))
            .collect(),
    }
}

/// Incrementally maintained echelon basis of a subspace of `K^n`.
pub(crate) struct Echelon {
    rows: Vec<Vec<FieldElement>>,
}

impl Echelon {
    pub fn new() -> Self {
        Echelon { rows: Vec::new() }
    }

    /// Adds `v`; returns whether the dimension grew.
    pub fn insert(&mut self, v: Vec<FieldElement>) -> bool {
        let mut m = self.rows.clone();
        m.push(v);
        let piv = rref(&mut m);
        if piv.len() > self.rows.len() {
            m.truncate(piv.len());
            self.rows = m;
            true
        } else {
            false
        }
    }
}

/// Smallest subalgebra of `field` containing 1 and `gens`: the linear span
/// is closed under multiplication by each generator until stable.
pub fn span_closure(field: &Field, gens: &[FieldElement]) -> Result<SpanClosure> {
    for g in gens {
        if **g.field() != **field {
            return Err(Error::ParentMismatch(
                g.field().name().to_string(),
                field.name().to_string(),
            ));
        }
    }
    let mut ech = Echelon::new();
    let mut basis = vec![field.one()];
    ech.insert(base_coords(&field.one()));
    let mut i = 0;
    while i < basis.len() {
        for g in gens {
            let v = &basis[i] * g;
            if ech.insert(base_coords(&v)) {
                basis.push(v);
            }
        }
        i += 1;
    }
    Ok(SpanClosure {
        dimension: basis.len(),
        basis,
    })
}
