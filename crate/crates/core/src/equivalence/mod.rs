//! Niho exponents and multiplicative equivalence H(x) = a h(x^d).

pub mod registry;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::identities::IdentityCheck;
use crate::ntheory::{gcd, mod_inverse, mod_pow};
use crate::perm::is_permutation_exhaustive;
use crate::poly::{build_f, build_family, BoundPoly};

pub use registry::{
    classify, registry, registry_verify, Classification, FamilyEntry, KCondition, RowInstance,
    RowVerification,
};

/// Whether d is congruent to some p^j mod q-1 with 0 <= j < k, and the
/// least such j.
pub fn is_niho(d: u64, p: u64, k: u32) -> (bool, Option<u32>) {
    let m = p.pow(k) - 1;
    let j = (0..k).find(|&j| mod_pow(p, j as u64, m) == d % m);
    (j.is_some(), j)
}

/// d^{-1} mod q^2-1, when it exists.
pub fn niho_inverse(d: u64, p: u64, k: u32) -> Option<u64> {
    let n = p.pow(2 * k) - 1;
    mod_inverse(d % n, n)
}

/// H(x) = a h(x^d) for every x.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquivalenceWitness {
    pub a: FieldElement,
    pub d: u64,
    pub d_inv: u64,
}

impl EquivalenceWitness {
    /// The witness for h ~ H: h(y) = a^{-1} H(y^{d^{-1}}).
    pub fn inverse(&self, field: &Field) -> EquivalenceWitness {
        EquivalenceWitness {
            a: field.inv(&self.a).expect("a is nonzero"),
            d: self.d_inv,
            d_inv: self.d,
        }
    }
}

fn require_permutation(poly: &BoundPoly, name: &str, cap: u64) -> Result<()> {
    if !is_permutation_exhaustive(poly, cap)?.is_permutation {
        return Err(Error::NotPermutation(format!("{name} = {}", poly.render())));
    }
    Ok(())
}

/// Searches d in ascending order for H(x) = a h(x^d). The base point is the
/// lex-least x0 with h(x0^d) != 0, which fixes a = H(x0) / h(x0^d).
pub fn equivalent_bruteforce(
    big_h: &BoundPoly,
    h: &BoundPoly,
    cap: u64,
) -> Result<Option<EquivalenceWitness>> {
    let field = big_h.field();
    if field != h.field() {
        return Err(Error::MixedFields);
    }
    let n = field.mult_order();
    let work = crate::ntheory::totient(n) as u128 * field.order() as u128;
    if work > cap as u128 {
        return Err(Error::SizeCapExceeded {
            what: "equivalence search",
            size: work,
            cap: cap as u128,
        });
    }
    require_permutation(big_h, "H", field.order())?;
    require_permutation(h, "h", field.order())?;

    let points: Vec<FieldElement> = field.elements().collect();
    let targets: Vec<FieldElement> = points.iter().map(|x| big_h.eval(x)).collect();
    let found = (1..n.max(2))
        .into_par_iter()
        .filter(|&d| gcd(d, n) == 1)
        .find_map_first(|d| {
            let hd = h.compose_power(d);
            let (i0, v0) = points
                .iter()
                .enumerate()
                .map(|(i, x)| (i, hd.eval(x)))
                .find(|(_, v)| !v.is_zero())?;
            let a = field.div(&targets[i0], &v0).ok()?;
            if a.is_zero() {
                return None;
            }
            let all = points
                .iter()
                .zip(&targets)
                .all(|(x, y)| field.mul(&a, &hd.eval(x)) == *y);
            all.then_some((a, d))
        });
    Ok(found.map(|(a, d)| EquivalenceWitness {
        a,
        d,
        d_inv: mod_inverse(d, n).expect("d is a unit"),
    }))
}

/// Counts the points where two polynomials differ.
pub fn pointwise_violations(a: &BoundPoly, b: &BoundPoly) -> u64 {
    a.field()
        .elements()
        .filter(|x| a.eval(x) != b.eval(x))
        .count() as u64
}

/// One output of the Claim-2 construction: λ_i F(x^{d_i^{-1}}).
#[derive(Debug, Clone)]
pub struct Claim2Output {
    /// 1 for the s-term, 2 for the t-term.
    pub index: u8,
    pub d: u64,
    pub d_inv: u64,
    pub poly: BoundPoly,
}

#[derive(Debug, Clone, Default)]
pub struct Claim2Report {
    pub outputs: Vec<Claim2Output>,
    /// Branches whose d_i is not a unit mod q^2-1.
    pub skipped: Vec<String>,
}

/// For F = x + λ1 x^{d1} + λ2 x^{d2} with d_i = s_i(q-1)+1, the trinomials
/// λ_i F(x^{d_i^{-1}}) for each invertible d_i.
pub fn claim2_equivalents(
    field: &Field,
    k: u32,
    lambda1: i64,
    s: i64,
    lambda2: i64,
    t: i64,
) -> Result<Claim2Report> {
    let family = build_family(field, k, lambda1, s, lambda2, t)?;
    let q = field.quadratic(k)?.q() as i128;
    let n = field.mult_order();
    let mut report = Claim2Report::default();
    for (index, lambda, j) in [(1u8, lambda1, s), (2, lambda2, t)] {
        let d = ((j as i128 * (q - 1) + 1).rem_euclid(n as i128)) as u64;
        match mod_inverse(d, n) {
            Some(d_inv) => {
                let poly = family.compose_power(d_inv).scale(&field.from_int(lambda));
                report.outputs.push(Claim2Output {
                    index,
                    d,
                    d_inv,
                    poly,
                });
            }
            None => report
                .skipped
                .push(format!("d{index} = {d} shares a factor with {n}")),
        }
    }
    Ok(report)
}

/// The three trinomials equivalent to f, with pointwise checks against
/// their constructions.
#[derive(Debug, Clone)]
pub struct Proposition1 {
    pub f1: BoundPoly,
    pub f2: BoundPoly,
    pub f3: BoundPoly,
    pub checks: Vec<IdentityCheck>,
}

/// (λ1, s, λ2, t) for f1, f2, f3 at (p, k).
fn proposition1_tuples(p: u64, k: u32) -> Result<[(i64, i64, i64, i64); 3]> {
    let q = p.pow(k) as i64;
    let pk1 = p.pow(k - 1) as i64;
    let f1 = (1, (p as i64 - 1) * pk1 + 1, -1, pk1 + 1);
    match p {
        3 => Ok([f1, (1, -1, -1, 1), (-1, 1, -1, 2)]),
        5 => Ok([f1, (1, (2 * q + 1) / 3, -1, 1), (-1, 1, -1, (q + 5) / 3)]),
        _ => Err(Error::UnsupportedCharacteristic(p)),
    }
}

pub fn proposition1_forms(p: u64, k: u32, cap: u64) -> Result<Proposition1> {
    if p != 3 && p != 5 {
        return Err(Error::UnsupportedCharacteristic(p));
    }
    if k % 2 == 1 {
        return Err(Error::KParity(k));
    }
    let field = Field::with_cap(p, 2 * k as usize, cap)?;
    let [t1, t2, t3] = proposition1_tuples(p, k)?;
    let build = |(a, s, b, t): (i64, i64, i64, i64)| build_family(&field, k, a, s, b, t);
    let (f1, f2, f3) = (build(t1)?, build(t2)?, build(t3)?);
    let f = build_f(&field, k)?;

    let claim2 = claim2_equivalents(&field, k, t1.0, t1.1, t1.2, t1.3)?;
    let branch = |i: u8| {
        claim2
            .outputs
            .iter()
            .find(|o| o.index == i)
            .map(|o| o.poly.clone())
            .ok_or_else(|| Error::InvalidInput(format!("d{i} of f1 is not invertible")))
    };
    let check = |name: &str, a: &BoundPoly, b: &BoundPoly| IdentityCheck {
        identity: name.to_string(),
        field: field.describe(),
        checked: field.order(),
        violations: pointwise_violations(a, b),
    };
    let checks = vec![
        check(
            "f1(x) = f(x^(p^(k-1)))",
            &f1,
            &f.compose_power(p.pow(k - 1)),
        ),
        check("f2(x) = f1(x^(d1^-1))", &f2, &branch(1)?),
        check("f3(x) = -f1(x^(d2^-1))", &f3, &branch(2)?),
    ];
    Ok(Proposition1 { f1, f2, f3, checks })
}
