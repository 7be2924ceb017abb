//! Prime-power fields F_{p^m} as F_p[x]/(f) with f the lexicographically
//! least monic irreducible of degree m.

mod fp_poly;
mod linear;
mod quadratic;

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::ntheory;

pub use linear::LinearMap;
pub use quadratic::{Quadratic, UnitCircle};

/// Largest supported extension degree.
pub const MAX_DEGREE: usize = 32;

/// Characteristic must stay below this so coefficient products fit the
/// lazy u64 accumulators.
pub const MAX_CHARACTERISTIC: u64 = 1 << 24;

/// Default cap on p^m for constructing a field at all.
pub const DEFAULT_FIELD_ORDER_CAP: u64 = 1 << 48;

/// One value of F_{p^m}, as m residues in [0, p), low degree first.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElement {
    p: u32,
    m: u8,
    coeffs: [u32; MAX_DEGREE],
}

impl FieldElement {
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs[..self.m as usize]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs().iter().all(|&c| c == 0)
    }

    #[inline]
    pub(crate) fn raw(&self) -> &[u32; MAX_DEGREE] {
        &self.coeffs
    }

    #[inline]
    pub(crate) fn raw_mut(&mut self) -> &mut [u32; MAX_DEGREE] {
        &mut self.coeffs
    }

    fn same_field(&self, other: &FieldElement) -> bool {
        self.p == other.p && self.m == other.m
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coeffs())
    }
}

impl serde::Serialize for FieldElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.coeffs())
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coeffs())
    }
}

/// Checked element operations, dispatched by [`Field::apply`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Neg,
    Mul,
    Inv,
    Pow(u64),
}

struct Inner {
    p: u64,
    m: usize,
    modulus: Vec<u32>,
    order: u64,
    primitive: OnceLock<FieldElement>,
    frobenius: OnceLock<Option<LinearMap>>,
}

/// A constructed extension field. Cheap to clone and safe to share.
#[derive(Clone)]
pub struct Field(Arc<Inner>);

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.describe())
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.0.p == other.0.p && self.0.m == other.0.m && self.0.modulus == other.0.modulus
    }
}

impl Eq for Field {}

impl Field {
    /// Builds F_{p^m} with the default order cap.
    pub fn new(p: u64, m: usize) -> Result<Self> {
        Self::with_cap(p, m, DEFAULT_FIELD_ORDER_CAP)
    }

    pub fn with_cap(p: u64, m: usize, cap: u64) -> Result<Self> {
        if !ntheory::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if m == 0 || m > MAX_DEGREE {
            return Err(Error::UnsupportedDegree(m));
        }
        if p >= MAX_CHARACTERISTIC {
            return Err(Error::InvalidInput(format!(
                "characteristic {p} is at or above {MAX_CHARACTERISTIC}"
            )));
        }
        let order = (p as u128).checked_pow(m as u32).unwrap_or(u128::MAX);
        if order > cap as u128 {
            return Err(Error::SizeCapExceeded {
                what: "field order",
                size: order,
                cap: cap as u128,
            });
        }
        let modulus = least_irreducible(p as u32, m);
        Ok(Field(Arc::new(Inner {
            p,
            m,
            modulus,
            order: order as u64,
            primitive: OnceLock::new(),
            frobenius: OnceLock::new(),
        })))
    }

    pub fn characteristic(&self) -> u64 {
        self.0.p
    }

    pub fn degree(&self) -> usize {
        self.0.m
    }

    pub fn order(&self) -> u64 {
        self.0.order
    }

    /// Order of the multiplicative group, p^m - 1.
    pub fn mult_order(&self) -> u64 {
        self.0.order - 1
    }

    /// Monic modulus, low degree first, length m + 1.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    /// `GF(p^m) mod [c0,c1,...,cm]`
    pub fn describe(&self) -> String {
        let cs: Vec<String> = self.0.modulus.iter().map(|c| c.to_string()).collect();
        format!("GF({}^{}) mod [{}]", self.0.p, self.0.m, cs.join(","))
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            p: self.0.p as u32,
            m: self.0.m as u8,
            coeffs: [0; MAX_DEGREE],
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_int(1)
    }

    /// The image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> FieldElement {
        let mut e = self.zero();
        e.coeffs[0] = n.rem_euclid(self.0.p as i64) as u32;
        e
    }

    /// The basis element a^j, where a is the class of x.
    pub fn basis(&self, j: usize) -> FieldElement {
        let mut e = self.zero();
        e.coeffs[j] = 1;
        e
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FieldElement> {
        if coeffs.len() > self.0.m {
            return Err(Error::InvalidInput(format!(
                "{} coefficients for a degree-{} field",
                coeffs.len(),
                self.0.m
            )));
        }
        let mut e = self.zero();
        for (i, &c) in coeffs.iter().enumerate() {
            if c as u64 >= self.0.p {
                return Err(Error::InvalidInput(format!(
                    "coefficient {c} is not reduced mod {}",
                    self.0.p
                )));
            }
            e.coeffs[i] = c;
        }
        Ok(e)
    }

    /// Integer code sum c_i p^i, a bijection onto [0, p^m).
    #[inline]
    pub fn code(&self, x: &FieldElement) -> u64 {
        let p = self.0.p;
        x.coeffs()
            .iter()
            .rev()
            .fold(0u64, |acc, &c| acc * p + c as u64)
    }

    pub fn from_code(&self, mut code: u64) -> FieldElement {
        let mut e = self.zero();
        for i in 0..self.0.m {
            e.coeffs[i] = (code % self.0.p) as u32;
            code /= self.0.p;
        }
        e
    }

    /// The n-th element in coefficient-lexicographic order (c0 compared
    /// first).
    pub fn lex_element(&self, mut n: u64) -> FieldElement {
        let mut e = self.zero();
        for i in (0..self.0.m).rev() {
            e.coeffs[i] = (n % self.0.p) as u32;
            n /= self.0.p;
        }
        e
    }

    /// All elements in code order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.0.order).map(move |c| self.from_code(c))
    }

    pub fn contains(&self, x: &FieldElement) -> bool {
        x.p as u64 == self.0.p && x.m as usize == self.0.m
    }

    #[inline]
    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        debug_assert!(a.same_field(b));
        let p = self.0.p as u32;
        let mut out = *a;
        for i in 0..self.0.m {
            let s = a.coeffs[i] + b.coeffs[i];
            out.coeffs[i] = if s >= p { s - p } else { s };
        }
        out
    }

    #[inline]
    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        debug_assert!(a.same_field(b));
        let p = self.0.p as u32;
        let mut out = *a;
        for i in 0..self.0.m {
            let s = a.coeffs[i] + p - b.coeffs[i];
            out.coeffs[i] = if s >= p { s - p } else { s };
        }
        out
    }

    #[inline]
    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        self.sub(&self.zero(), a)
    }

    /// Multiplies by an element of the prime field.
    pub fn scale(&self, a: &FieldElement, c: i64) -> FieldElement {
        let p = self.0.p;
        let c = c.rem_euclid(p as i64) as u64;
        let mut out = *a;
        for i in 0..self.0.m {
            out.coeffs[i] = (a.coeffs[i] as u64 * c % p) as u32;
        }
        out
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        debug_assert!(a.same_field(b));
        let m = self.0.m;
        let p = self.0.p;
        let mut t = [0u64; 2 * MAX_DEGREE];
        for i in 0..m {
            let ai = a.coeffs[i] as u64;
            if ai == 0 {
                continue;
            }
            for j in 0..m {
                t[i + j] += ai * b.coeffs[j] as u64;
            }
        }
        let modulus = &self.0.modulus;
        for i in (m..2 * m - 1).rev() {
            let c = t[i] % p;
            if c == 0 {
                continue;
            }
            let neg = p - c;
            for j in 0..m {
                t[i - m + j] += neg * modulus[j] as u64;
            }
        }
        let mut out = *a;
        for i in 0..m {
            out.coeffs[i] = (t[i] % p) as u32;
        }
        out
    }

    pub fn square(&self, a: &FieldElement) -> FieldElement {
        self.mul(a, a)
    }

    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let inv = fp_poly::inv_mod(a.coeffs(), &self.0.modulus, self.0.p as u32)
            .ok_or(Error::DivisionByZero)?;
        self.from_coeffs(&inv)
    }

    pub fn div(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// a^e with 0^0 = 1. Exponents of nonzero bases are reduced modulo
    /// p^m - 1.
    pub fn pow(&self, a: &FieldElement, e: u64) -> FieldElement {
        if e == 0 {
            return self.one();
        }
        if a.is_zero() {
            return self.zero();
        }
        let mut e = e % self.mult_order();
        if e == 0 {
            e = self.mult_order();
        }
        let mut acc = self.one();
        let mut base = *a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Checked single-operation entry point; rejects operands that do not
    /// belong to this field.
    pub fn apply(
        &self,
        op: ArithOp,
        a: &FieldElement,
        b: Option<&FieldElement>,
    ) -> Result<FieldElement> {
        if !self.contains(a) || b.is_some_and(|b| !self.contains(b)) {
            return Err(Error::MixedFields);
        }
        let need_b = || b.ok_or_else(|| Error::InvalidInput("missing second operand".into()));
        match op {
            ArithOp::Add => Ok(self.add(a, need_b()?)),
            ArithOp::Sub => Ok(self.sub(a, need_b()?)),
            ArithOp::Mul => Ok(self.mul(a, need_b()?)),
            ArithOp::Neg => Ok(self.neg(a)),
            ArithOp::Inv => self.inv(a),
            ArithOp::Pow(e) => Ok(self.pow(a, e)),
        }
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, a: &FieldElement) -> Result<u64> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut order = self.mult_order();
        for (prime, _) in ntheory::factorize(order) {
            while order.is_multiple_of(prime) && self.pow(a, order / prime) == self.one() {
                order /= prime;
            }
        }
        Ok(order)
    }

    /// The least generator of the multiplicative group in
    /// coefficient-lexicographic order.
    pub fn primitive_element(&self) -> FieldElement {
        *self.0.primitive.get_or_init(|| {
            let n = self.mult_order();
            let primes: Vec<u64> = ntheory::factorize(n).into_iter().map(|(p, _)| p).collect();
            let one = self.one();
            (1..self.0.order)
                .map(|i| self.lex_element(i))
                .find(|g| primes.iter().all(|&l| self.pow(g, n / l) != one))
                .expect("a finite field always has a generator")
        })
    }

    /// The Frobenius x -> x^(p^(m/2)) as a linear map, when m is even.
    pub(crate) fn half_frobenius(&self) -> Option<&LinearMap> {
        self.0
            .frobenius
            .get_or_init(|| {
                if !self.0.m.is_multiple_of(2) {
                    return None;
                }
                let q = self.0.p.pow(self.0.m as u32 / 2);
                let images: Vec<FieldElement> =
                    (0..self.0.m).map(|j| self.pow(&self.basis(j), q)).collect();
                Some(LinearMap::from_basis_images(self, &images))
            })
            .as_ref()
    }

    /// View as F_{q^2} over F_q with q = p^k; requires m = 2k.
    pub fn quadratic(&self, k: u32) -> Result<Quadratic<'_>> {
        Quadratic::new(self, k)
    }

    /// q-power Frobenius, x -> x^(p^k), for m = 2k.
    pub fn frobenius_q(&self, x: &FieldElement, k: u32) -> Result<FieldElement> {
        Ok(self.quadratic(k)?.frobenius(x))
    }

    pub fn trace(&self, x: &FieldElement, k: u32) -> Result<FieldElement> {
        Ok(self.quadratic(k)?.trace(x))
    }

    pub fn norm(&self, x: &FieldElement, k: u32) -> Result<FieldElement> {
        Ok(self.quadratic(k)?.norm(x))
    }

    pub fn in_subfield(&self, x: &FieldElement, k: u32) -> Result<bool> {
        Ok(self.quadratic(k)?.in_subfield(x))
    }

    pub fn unit_circle(&self, k: u32) -> Result<UnitCircle> {
        Ok(self.quadratic(k)?.unit_circle())
    }
}

/// Lexicographically least (c0 compared first) monic irreducible of degree m.
fn least_irreducible(p: u32, m: usize) -> Vec<u32> {
    let total = (p as u64).pow(m as u32);
    // n < p^(m-1) means c0 = 0, reducible for m > 1
    let start = if m > 1 { total / p as u64 } else { 0 };
    for n in start..total {
        // c0 is the most significant digit of n
        let mut f = vec![0u32; m + 1];
        let mut rest = n;
        for i in (0..m).rev() {
            f[i] = (rest % p as u64) as u32;
            rest /= p as u64;
        }
        f[m] = 1;
        if fp_poly::is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_fields() {
        let f = Field::new(3, 2).unwrap();
        assert_eq!(f.order(), 9);
        assert_eq!(f.modulus(), &[1, 0, 1]);
        assert_eq!(f.describe(), "GF(3^2) mod [1,0,1]");
        assert_eq!(Field::new(5, 4).unwrap().order(), 625);
    }

    #[test]
    fn rejects_composite_and_oversize() {
        assert_eq!(Field::new(4, 2).unwrap_err(), Error::NotPrime(4));
        assert!(matches!(
            Field::with_cap(3, 10, 1000),
            Err(Error::SizeCapExceeded { .. })
        ));
        assert!(matches!(Field::new(3, 0), Err(Error::UnsupportedDegree(0))));
    }

    #[test]
    fn construction_is_deterministic() {
        let a = Field::new(7, 4).unwrap();
        let b = Field::new(7, 4).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.primitive_element(), b.primitive_element());
    }

    #[test]
    fn modulus_is_least_irreducible() {
        // every lexicographically smaller monic candidate is reducible
        let f = Field::new(5, 4).unwrap();
        let chosen = f.modulus().to_vec();
        for n in 0..625u64 {
            let mut g = vec![0u32; 5];
            let mut rest = n;
            for i in (0..4).rev() {
                g[i] = (rest % 5) as u32;
                rest /= 5;
            }
            g[4] = 1;
            if g == chosen {
                break;
            }
            assert!(!fp_poly::is_irreducible(&g, 5), "{g:?} precedes {chosen:?}");
        }
    }

    #[test]
    fn basic_arithmetic() {
        let f = Field::new(5, 4).unwrap();
        let one = f.one();
        assert_eq!(f.inv(&one).unwrap(), one);
        assert_eq!(f.inv(&f.zero()), Err(Error::DivisionByZero));
        assert_eq!(f.pow(&f.zero(), 0), one);
        assert_eq!(f.pow(&f.zero(), 5), f.zero());
        for x in f.elements().skip(1).step_by(7) {
            assert_eq!(f.pow(&x, f.mult_order()), one);
        }
    }

    #[test]
    fn mixed_fields_rejected() {
        let a = Field::new(3, 2).unwrap();
        let b = Field::new(5, 2).unwrap();
        let err = a.apply(ArithOp::Add, &a.one(), Some(&b.one())).unwrap_err();
        assert_eq!(err, Error::MixedFields);
        assert_eq!(
            a.apply(ArithOp::Inv, &a.zero(), None),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn code_roundtrip() {
        let f = Field::new(3, 4).unwrap();
        for c in 0..f.order() {
            assert_eq!(f.code(&f.from_code(c)), c);
        }
    }

    #[test]
    fn primitive_element_orders() {
        let f = Field::new(3, 2).unwrap();
        let g = f.primitive_element();
        assert_eq!(f.element_order(&g).unwrap(), 8);
        // lex-least: every earlier nonzero element has smaller order
        let mut i = 1;
        while f.lex_element(i) != g {
            assert!(f.element_order(&f.lex_element(i)).unwrap() < 8);
            i += 1;
        }
    }

    #[test]
    fn generator_power_generates_unit_circle_in_f25() {
        let f = Field::new(5, 2).unwrap();
        let g = f.primitive_element();
        // (q^2-1)/(q+1) = q-1 = 4
        let w = f.pow(&g, 4);
        let mut seen = std::collections::HashSet::new();
        let mut x = f.one();
        for _ in 0..24 {
            seen.insert(x);
            x = f.mul(&x, &w);
        }
        assert_eq!(seen.len(), 6);
    }

    #[test]
    fn multiplication_matrix_agrees_with_mul() {
        let f = Field::new(7, 4).unwrap();
        let c = f.lex_element(1234);
        let map = LinearMap::multiplication_by(&f, &c);
        for x in f.elements().step_by(37) {
            assert_eq!(map.apply(&x), f.mul(&c, &x));
        }
    }
}
