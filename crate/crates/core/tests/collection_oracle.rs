//! Collection oracle: the engine's multiplication is checked against
//! independent arithmetic models of three families (unitriangular matrices,
//! a metacyclic normal form, and componentwise modular addition). The
//! models share no code with the collector, so agreement here validates
//! the whole presentation → table pipeline.

use anyhow::Result;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use bvl_core::catalog::{build_group, FamilySpec};
use bvl_core::Group;

fn family(id: &str, params: &[(&str, u64)]) -> Result<Group> {
    let mut spec = FamilySpec::new(id);
    for &(k, v) in params {
        spec = spec.with(k, v);
    }
    Ok(build_group(&spec)?)
}

/// Check that `model` is an isomorphism-by-construction: a bijection on ids
/// (guaranteed by the caller's encoding) that turns `mul` into the model's
/// composition. Pairs come exhaustively for small orders, else sampled.
fn check_against_model<M, F, C>(g: &Group, encode: F, compose: C)
where
    M: PartialEq + std::fmt::Debug,
    F: Fn(&[u32]) -> M,
    C: Fn(&M, &M) -> M,
{
    let n = g.order() as u32;
    let exhaustive = (n as u64) * (n as u64) <= 40_000;
    let mut rng = ChaCha8Rng::seed_from_u64(0x0bef);
    let pairs: Vec<(u32, u32)> = if exhaustive {
        (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect()
    } else {
        (0..4_000)
            .map(|_| (rng.gen_range(0..n), rng.gen_range(0..n)))
            .collect()
    };
    for (a, b) in pairs {
        let engine = encode(&g.vec_of_id(g.mul(a, b)));
        let model = compose(&encode(&g.vec_of_id(a)), &encode(&g.vec_of_id(b)));
        assert_eq!(
            engine,
            model,
            "mul({}, {}) disagrees with the model",
            g.element(a).word,
            g.element(b).word
        );
    }
}

/// Upper unitriangular 3x3 matrices over F_p, stored as the three entries
/// (a12, a23, a13). Composition is matrix multiplication:
/// (a, b, c)(a', b', c') = (a + a', b + b', c + c' + a b').
#[test]
fn heisenberg_matches_unitriangular_matrices() -> Result<()> {
    for p in [3u64, 5, 7] {
        let g = family("holder_heisenberg", &[("p", p)])?;
        // Generator order is x, y, z and the normal form x^a y^b z^c; the
        // matrix of that product is (a, b, ab + c).
        let encode = |v: &[u32]| -> [u64; 3] {
            let (a, b, c) = (u64::from(v[0]), u64::from(v[1]), u64::from(v[2]));
            [a, b, (a * b + c) % p]
        };
        let compose = |m: &[u64; 3], n: &[u64; 3]| -> [u64; 3] {
            [
                (m[0] + n[0]) % p,
                (m[1] + n[1]) % p,
                (m[2] + n[2] + m[0] * n[1]) % p,
            ]
        };
        check_against_model(&g, encode, compose);
    }
    Ok(())
}

/// The metacyclic family <x, y | x^{p^n}, y^p, x^y = x^{1+p^{n-1}}>,
/// modeled as pairs (b, a) = y^b x^a with
/// (b, a)(d, c) = (b + d mod p, a s^d + c mod p^n), s = 1 + p^{n-1}.
#[test]
fn metacyclic_family_matches_arithmetic_model() -> Result<()> {
    for (p, n) in [(3u64, 2u32), (5, 2), (7, 2), (3, 3), (5, 3)] {
        let g = family("lemma10", &[("p", p), ("n", u64::from(n))])?;
        let pn = p.pow(n);
        let s = p.pow(n - 1) + 1;
        // pc generators: x (head of the x-chain), y, then x1, x2, ... with
        // x_k = x^{p^k}; exponents (e0, e1, e2, ...) denote
        // x^{e0} y^{e1} x1^{e2} x2^{e3} ....
        let names = g.pres().names().to_vec();
        assert_eq!(names[0], "x");
        assert_eq!(names[1], "y");
        let encode = move |v: &[u32]| -> (u64, u64) {
            let mut a = 0u64;
            // Trailing chain links first: x1^{e2} x2^{e3} ... commute with x.
            for (k, &e) in v[2..].iter().enumerate() {
                a = (a + u64::from(e) * p.pow(k as u32 + 1)) % pn;
            }
            // The chain part is central; fold in the head by converting
            // x^{e0} y^{e1} to y-first form: x^{e0} y^{e1} = y^{e1} x^{e0 s^{e1}}.
            let b = u64::from(v[1]);
            let shift = mod_pow(s, b, pn);
            a = (a + u64::from(v[0]) * shift) % pn;
            (b, a)
        };
        let compose = move |m: &(u64, u64), n2: &(u64, u64)| -> (u64, u64) {
            let (b, a) = *m;
            let (d, c) = *n2;
            ((b + d) % p, (a * mod_pow(s, d, pn) + c) % pn)
        };
        check_against_model(&g, encode, compose);
    }
    Ok(())
}

/// Abelian groups: exponent vectors add componentwise once chains are
/// folded into base-p digits.
#[test]
fn abelian_families_match_modular_addition() -> Result<()> {
    for (p, exps) in [(3u64, vec![2u64, 2]), (5, vec![2, 1]), (2, vec![3, 2, 1])] {
        let mut spec = FamilySpec::new("abelian").with("p", p);
        for (i, &e) in exps.iter().enumerate() {
            spec = spec.with(&format!("e{}", i + 1), e);
        }
        let g = build_group(&spec)?;
        // Chains appear in generator order, one per factor, longest-first
        // labeling irrelevant: fold digit positions per factor.
        let moduli: Vec<u64> = exps.iter().map(|&e| p.pow(e as u32)).collect();
        let lens: Vec<usize> = exps.iter().map(|&e| e as usize).collect();
        let encode = move |v: &[u32]| -> Vec<u64> {
            let mut out = Vec::with_capacity(lens.len());
            let mut pos = 0;
            for &len in &lens {
                let mut val = 0u64;
                for k in 0..len {
                    val += u64::from(v[pos + k]) * p.pow(k as u32);
                }
                pos += len;
                out.push(val);
            }
            out
        };
        let compose = move |m: &Vec<u64>, n: &Vec<u64>| -> Vec<u64> {
            m.iter()
                .zip(n)
                .zip(&moduli)
                .map(|((a, b), &q)| (a + b) % q)
                .collect()
        };
        check_against_model(&g, encode, compose);
    }
    Ok(())
}

/// Inverses and powers against the Heisenberg matrix model:
/// (a, b, c)^{-1} = (-a, -b, ab - c).
#[test]
fn inverse_and_power_match_the_matrix_model() -> Result<()> {
    let p = 7u64;
    let g = family("holder_heisenberg", &[("p", p)])?;
    let encode = |v: &[u32]| -> [u64; 3] {
        let (a, b, c) = (u64::from(v[0]), u64::from(v[1]), u64::from(v[2]));
        [a, b, (a * b + c) % p]
    };
    for id in 0..g.order() as u32 {
        let m = encode(&g.vec_of_id(id));
        let inv = encode(&g.vec_of_id(g.inv(id)));
        let expect = [
            (p - m[0]) % p,
            (p - m[1]) % p,
            (m[0] * m[1] + p * p - m[2]) % p,
        ];
        assert_eq!(inv, expect, "inverse of id {id}");

        // Square via the model, compare against pow(id, 2) and mul.
        let sq = encode(&g.vec_of_id(g.pow(id, 2)));
        let expect_sq = [
            (2 * m[0]) % p,
            (2 * m[1]) % p,
            (2 * m[2] + m[0] * m[1]) % p,
        ];
        assert_eq!(sq, expect_sq, "square of id {id}");
        assert_eq!(g.pow(id, 2), g.mul(id, id));
    }
    Ok(())
}

/// Random words evaluated left-to-right in both the engine and the matrix
/// model, up to length 12.
#[test]
fn random_words_agree_with_the_matrix_model() -> Result<()> {
    let p = 5u64;
    let g = family("holder_heisenberg", &[("p", p)])?;
    let encode = |v: &[u32]| -> [u64; 3] {
        let (a, b, c) = (u64::from(v[0]), u64::from(v[1]), u64::from(v[2]));
        [a, b, (a * b + c) % p]
    };
    let compose = |m: &[u64; 3], n: &[u64; 3]| -> [u64; 3] {
        [
            (m[0] + n[0]) % p,
            (m[1] + n[1]) % p,
            (m[2] + n[2] + m[0] * n[1]) % p,
        ]
    };
    let mut rng = ChaCha8Rng::seed_from_u64(0xfeed);
    for _ in 0..500 {
        let len = rng.gen_range(1..=12);
        let mut engine = g.identity();
        let mut model = [0u64; 3];
        for _ in 0..len {
            let f = rng.gen_range(0..g.order() as u32);
            engine = g.mul(engine, f);
            model = compose(&model, &encode(&g.vec_of_id(f)));
        }
        assert_eq!(encode(&g.vec_of_id(engine)), model);
    }
    Ok(())
}

fn mod_pow(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}
