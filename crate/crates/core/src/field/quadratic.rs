use super::{Field, FieldElement, LinearMap};
use crate::error::{Error, Result};

/// F_{q^2} seen over its subfield F_q, q = p^k.
#[derive(Clone, Copy)]
pub struct Quadratic<'a> {
    field: &'a Field,
    k: u32,
    q: u64,
    frob: &'a LinearMap,
}

impl<'a> Quadratic<'a> {
    pub(super) fn new(field: &'a Field, k: u32) -> Result<Self> {
        if k == 0 || field.degree() != 2 * k as usize {
            return Err(Error::DegreeMismatch {
                m: field.degree(),
                k,
            });
        }
        let frob = field
            .half_frobenius()
            .expect("even degree has a half Frobenius");
        let q = field.characteristic().pow(k);
        Ok(Quadratic { field, k, q, frob })
    }

    pub fn field(&self) -> &'a Field {
        self.field
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// x^q
    #[inline]
    pub fn frobenius(&self, x: &FieldElement) -> FieldElement {
        self.frob.apply(x)
    }

    /// x + x^q
    pub fn trace(&self, x: &FieldElement) -> FieldElement {
        self.field.add(x, &self.frobenius(x))
    }

    /// x * x^q
    pub fn norm(&self, x: &FieldElement) -> FieldElement {
        self.field.mul(x, &self.frobenius(x))
    }

    pub fn in_subfield(&self, x: &FieldElement) -> bool {
        self.frobenius(x) == *x
    }

    pub fn unit_circle(&self) -> UnitCircle {
        let g = self.field.primitive_element();
        let w = self.field.pow(&g, self.q - 1);
        UnitCircle {
            field: self.field.clone(),
            generator: w,
            size: self.q + 1,
        }
    }

    /// The elements of F_q, zero first and then the powers of g^(q+1).
    pub fn subfield_elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        let g = self.field.primitive_element();
        let step = self.field.pow(&g, self.q + 1);
        let mut cur = self.field.one();
        std::iter::once(self.field.zero()).chain((0..self.q - 1).map(move |_| {
            let out = cur;
            cur = self.field.mul(&cur, &step);
            out
        }))
    }

    /// Whether a nonzero element of F_q is a d-th power of an element of
    /// F_q^*: u^((q-1)/gcd(d, q-1)) = 1. Zero counts as not a d-th power.
    pub fn is_subfield_power(&self, u: &FieldElement, d: u64) -> bool {
        if u.is_zero() {
            return false;
        }
        let g = crate::ntheory::gcd(d, self.q - 1);
        self.field.pow(u, (self.q - 1) / g) == self.field.one()
    }
}

/// The q+1 elements u with u^(q+1) = 1, generated as powers of g^(q-1).
#[derive(Clone)]
pub struct UnitCircle {
    field: Field,
    generator: FieldElement,
    size: u64,
}

impl UnitCircle {
    pub fn len(&self) -> u64 {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn generator(&self) -> FieldElement {
        self.generator
    }

    pub fn contains(&self, x: &FieldElement) -> bool {
        !x.is_zero() && self.field.pow(x, self.size) == self.field.one()
    }

    /// Members in generator-power order, starting at 1.
    pub fn iter(&self) -> impl Iterator<Item = FieldElement> + '_ {
        let mut cur = self.field.one();
        (0..self.size).map(move |_| {
            let out = cur;
            cur = self.field.mul(&cur, &self.generator);
            out
        })
    }
}
