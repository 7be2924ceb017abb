//! Oracles and property checks shared by the integration suites. The oracles
//! use only `Field::pow`/`add`/`mul`, never the library's higher-level paths.

#![allow(dead_code)]

use std::collections::HashMap;

use num_integer::Integer;

use niho_core::equivalence::{claim2_equivalents, equivalent_bruteforce, is_niho, niho_inverse};
use niho_core::poly::build_family;
use niho_core::{BoundPoly, Field, FieldElement};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

pub const SAMPLES: u32 = 1000;

pub fn runner() -> TestRunner {
    TestRunner::new(Config {
        cases: SAMPLES,
        failure_persistence: None,
        ..Config::default()
    })
}

/// f(x) = x^((p-1)q+1) + x^(pq) - x^(q+p-1) by direct powering.
pub fn f_naive(field: &Field, q: u64, x: &FieldElement) -> FieldElement {
    let p = field.characteristic();
    let a = field.pow(x, (p - 1) * q + 1);
    let b = field.pow(x, p * q);
    let c = field.pow(x, q + p - 1);
    field.sub(&field.add(&a, &b), &c)
}

pub fn in_subfield_naive(field: &Field, q: u64, y: &FieldElement) -> bool {
    field.pow(y, q) == *y
}

/// |{x not in F_q : f(x) in F_q}| by direct enumeration.
pub fn leak_count_naive(p: u64, k: u32) -> u64 {
    let field = Field::new(p, 2 * k as usize).unwrap();
    let q = p.pow(k);
    field
        .elements()
        .filter(|x| {
            !in_subfield_naive(&field, q, x) && in_subfield_naive(&field, q, &f_naive(&field, q, x))
        })
        .count() as u64
}

/// Bijectivity of f by direct enumeration.
pub fn f_permutes_naive(p: u64, k: u32) -> bool {
    let field = Field::new(p, 2 * k as usize).unwrap();
    let q = p.pow(k);
    let mut seen = std::collections::HashSet::new();
    let injective = field
        .elements()
        .all(|x| seen.insert(f_naive(&field, q, &x)));
    injective
}

/// Extended Euclid, independent of the library's number theory.
pub fn inverse_mod(a: u64, n: u64) -> Option<u64> {
    let (mut r0, mut r1) = (n as i128, (a % n) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let quot = r0 / r1;
        (r0, r1) = (r1, r0 - quot * r1);
        (s0, s1) = (s1, s0 - quot * s1);
    }
    (r0 == 1).then(|| s0.rem_euclid(n as i128) as u64)
}

/// H(x) = a h(x^d) at every point.
pub fn witness_holds(big_h: &BoundPoly, h: &BoundPoly, a: &FieldElement, d: u64) -> bool {
    let field = big_h.field();
    field
        .elements()
        .all(|x| big_h.eval(&x) == field.mul(a, &h.eval(&field.pow(&x, d))))
}

fn fields(specs: &[(u64, usize)]) -> Vec<Field> {
    specs
        .iter()
        .map(|&(p, m)| Field::new(p, m).unwrap())
        .collect()
}

fn element(field: &Field, seed: u64) -> FieldElement {
    field.from_code(seed % field.order())
}

/// Ring and field axioms on sampled triples.
pub fn field_axioms() -> Result<(), String> {
    let fs = fields(&[(2, 8), (3, 4), (5, 4), (7, 2), (13, 3), (3, 7)]);
    runner()
        .run(
            &(0..fs.len(), any::<u64>(), any::<u64>(), any::<u64>()),
            |(i, sa, sb, sc)| {
                let f = &fs[i];
                let (a, b, c) = (element(f, sa), element(f, sb), element(f, sc));
                prop_assert_eq!(f.add(&a, &b), f.add(&b, &a));
                prop_assert_eq!(f.mul(&a, &b), f.mul(&b, &a));
                prop_assert_eq!(f.add(&f.add(&a, &b), &c), f.add(&a, &f.add(&b, &c)));
                prop_assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
                prop_assert_eq!(
                    f.mul(&a, &f.add(&b, &c)),
                    f.add(&f.mul(&a, &b), &f.mul(&a, &c))
                );
                prop_assert_eq!(f.add(&a, &f.zero()), a);
                prop_assert_eq!(f.mul(&a, &f.one()), a);
                prop_assert_eq!(f.add(&a, &f.neg(&a)), f.zero());
                prop_assert_eq!(f.sub(&a, &b), f.add(&a, &f.neg(&b)));
                if !a.is_zero() {
                    prop_assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), f.one());
                    prop_assert_eq!(f.pow(&a, f.mult_order()), f.one());
                }
                Ok(())
            },
        )
        .map_err(|e| e.to_string())
}

/// Tr additive, N multiplicative, both landing in F_q; checked against
/// x + x^q and x^(q+1).
pub fn trace_norm_laws() -> Result<(), String> {
    let specs = [(2u64, 4u32), (3, 2), (3, 3), (5, 2), (7, 2), (11, 2)];
    let fs = fields(&specs.map(|(p, k)| (p, 2 * k as usize)));
    runner()
        .run(&(0..fs.len(), any::<u64>(), any::<u64>()), |(i, sa, sb)| {
            let f = &fs[i];
            let k = specs[i].1;
            let quad = f.quadratic(k).unwrap();
            let q = quad.q();
            let (x, y) = (element(f, sa), element(f, sb));
            prop_assert_eq!(
                quad.trace(&f.add(&x, &y)),
                f.add(&quad.trace(&x), &quad.trace(&y))
            );
            prop_assert_eq!(
                quad.norm(&f.mul(&x, &y)),
                f.mul(&quad.norm(&x), &quad.norm(&y))
            );
            prop_assert_eq!(quad.trace(&x), f.add(&x, &f.pow(&x, q)));
            prop_assert_eq!(quad.norm(&x), f.pow(&x, q + 1));
            prop_assert!(in_subfield_naive(f, q, &quad.trace(&x)));
            prop_assert!(in_subfield_naive(f, q, &quad.norm(&x)));
            Ok(())
        })
        .map_err(|e| e.to_string())
}

/// The (trace, norm) class of a sampled c is {c, c^q}.
pub fn trace_norm_classes() -> Result<(), String> {
    let specs = [
        (2u64, 2u32),
        (2, 3),
        (3, 1),
        (3, 2),
        (3, 3),
        (5, 1),
        (5, 2),
        (7, 2),
    ];
    let prepared: Vec<(Field, u32, HashMap<(u64, u64), Vec<FieldElement>>)> = specs
        .iter()
        .map(|&(p, k)| {
            let f = Field::new(p, 2 * k as usize).unwrap();
            let q = p.pow(k);
            let mut classes: HashMap<(u64, u64), Vec<FieldElement>> = HashMap::new();
            for x in f.elements() {
                let tr = f.add(&x, &f.pow(&x, q));
                let n = f.pow(&x, q + 1);
                classes
                    .entry((f.code(&tr), f.code(&n)))
                    .or_default()
                    .push(x);
            }
            (f, k, classes)
        })
        .collect();
    runner()
        .run(&(0..prepared.len(), any::<u64>()), |(i, seed)| {
            let (f, k, classes) = &prepared[i];
            let quad = f.quadratic(*k).unwrap();
            let c = element(f, seed);
            let class = &classes[&(f.code(&quad.trace(&c)), f.code(&quad.norm(&c)))];
            let conj = quad.frobenius(&c);
            prop_assert!(
                class.len() == 1 || class.len() == 2,
                "class size {}",
                class.len()
            );
            prop_assert!(class.contains(&c) && class.contains(&conj));
            prop_assert_eq!(class.len() == 1, c == conj);
            Ok(())
        })
        .map_err(|e| e.to_string())
}

/// Products and inverses of Niho exponents are Niho; normalized stays normalized.
pub fn niho_closure() -> Result<(), String> {
    let specs = [
        (2u64, 3u32),
        (2, 5),
        (3, 2),
        (3, 3),
        (5, 2),
        (5, 3),
        (7, 2),
        (11, 2),
    ];
    let strategy = (
        0..specs.len(),
        any::<u64>(),
        any::<u64>(),
        any::<u64>(),
        any::<u64>(),
    );
    runner()
        .run(&strategy, |(i, j1, s1, j2, s2)| {
            let (p, k) = specs[i];
            let q = p.pow(k);
            let n = q * q - 1;
            let niho =
                |j: u64, s: u64| (p.pow((j % k as u64) as u32) + (s % (q + 1)) * (q - 1)) % n;
            let (d, e) = (niho(j1, s1), niho(j2, s2));
            prop_assert!(is_niho(d, p, k).0 && is_niho(e, p, k).0);
            let prod = ((d as u128 * e as u128) % n as u128) as u64;
            prop_assert!(is_niho(prod, p, k).0);
            if d % (q - 1) == 1 && e % (q - 1) == 1 {
                prop_assert_eq!(is_niho(prod, p, k).1, Some(0));
            }
            let inv = niho_inverse(d, p, k);
            prop_assert_eq!(inv, inverse_mod(d, n));
            if let Some(inv) = inv {
                prop_assert!(is_niho(inv, p, k).0);
                if d % (q - 1) == 1 {
                    prop_assert_eq!(inv % (q - 1), 1);
                }
            }
            Ok(())
        })
        .map_err(|e| e.to_string())
}

/// Reflexive, symmetric and transitive on random equivalents of f1 and of
/// its Claim-2 outputs, with every witness checked pointwise.
pub fn equivalence_laws() -> Result<(), String> {
    let cap = 1u64 << 30;
    let mut bases: Vec<BoundPoly> = Vec::new();
    for (p, k) in [(3u64, 2u32), (5, 2)] {
        let field = Field::new(p, 2 * k as usize).unwrap();
        let pk1 = p.pow(k - 1) as i64;
        let (s, t) = ((p as i64 - 1) * pk1 + 1, pk1 + 1);
        bases.push(build_family(&field, k, 1, s, -1, t).unwrap());
        let claim2 = claim2_equivalents(&field, k, 1, s, -1, t).unwrap();
        bases.extend(claim2.outputs.into_iter().map(|o| o.poly));
    }
    let twist = |h: &BoundPoly, a_seed: u64, d_seed: u64| -> (BoundPoly, FieldElement, u64) {
        let field = h.field();
        let n = field.mult_order();
        let units: Vec<u64> = (1..n).filter(|&d| d.gcd(&n) == 1).collect();
        let d = units[(d_seed % units.len() as u64) as usize];
        let a = field.from_code(1 + a_seed % n);
        (h.compose_power(d).scale(&a), a, d)
    };
    runner()
        .run(
            &(
                0..bases.len(),
                any::<u64>(),
                any::<u64>(),
                any::<u64>(),
                any::<u64>(),
            ),
            |(i, a1, d1, a2, d2)| {
                let h = &bases[i];
                let field = h.field();
                let refl = equivalent_bruteforce(h, h, cap)
                    .map_err(|e| TestCaseError::fail(e.to_string()))?;
                let refl = refl.expect("reflexive");
                prop_assert_eq!(refl.d, 1);
                prop_assert_eq!(refl.a, field.one());

                let (big_h, _, _) = twist(h, a1, d1);
                let fwd = equivalent_bruteforce(&big_h, h, cap)
                    .map_err(|e| TestCaseError::fail(e.to_string()))?;
                let fwd = fwd.expect("H ~ h by construction");
                prop_assert!(witness_holds(&big_h, h, &fwd.a, fwd.d));
                let back = fwd.inverse(field);
                prop_assert!(witness_holds(h, &big_h, &back.a, back.d));
                prop_assert!(equivalent_bruteforce(h, &big_h, cap).unwrap().is_some());

                let (big_g, _, _) = twist(&big_h, a2, d2);
                let trans = equivalent_bruteforce(&big_g, h, cap)
                    .map_err(|e| TestCaseError::fail(e.to_string()))?;
                let trans = trans.expect("transitive");
                prop_assert!(witness_holds(&big_g, h, &trans.a, trans.d));
                Ok(())
            },
        )
        .map_err(|e| e.to_string())
}

pub fn all_properties() -> Vec<(&'static str, Result<(), String>)> {
    vec![
        ("field axioms", field_axioms()),
        ("trace additive, norm multiplicative", trace_norm_laws()),
        ("(trace, norm) classes are {c, c^q}", trace_norm_classes()),
        (
            "Niho exponents closed under product and inverse",
            niho_closure(),
        ),
        (
            "multiplicative equivalence is an equivalence relation",
            equivalence_laws(),
        ),
    ]
}
