//! Isomorphism-invariant fingerprints for bucketing groups.
//!
//! The coarse fields (order spectrum, class sizes, center, derived order,
//! abelianization, power behaviour, lower central orders) separate most
//! groups met in practice. For one well-delimited family of class-3 groups
//! they do not, so the fingerprint carries an additional *pair profile*: a
//! multiset, over all ordered independent pairs in `G/Φ(G)`, of a descriptor
//! of the lifted pair's power and commutator data. Each descriptor component
//! is proved lift-independent under conditions the code checks explicitly;
//! when any condition fails the profile is omitted rather than trusted.

use serde::Serialize;

use crate::group::Group;
use crate::numtheory::mod_inv;

/// Invariants of a group under isomorphism. Two isomorphic groups always
/// compare equal; inequality certifies non-isomorphism. Equality is only
/// evidence of isomorphism.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Fingerprint {
    pub order: u64,
    /// `(element order, multiplicity)`, ascending.
    pub order_spectrum: Vec<(u64, u64)>,
    /// `(class size, multiplicity)`, ascending.
    pub class_sizes: Vec<(u64, u64)>,
    pub center_order: u64,
    pub derived_order: u64,
    /// Orders of the cyclic factors of `G/[G,G]`, each dividing the next.
    pub abelian_invariants: Vec<u64>,
    /// `(o(g), o(g^p), multiplicity)` over all elements, `p` the smallest
    /// relative order in the presentation.
    pub power_profile: Vec<(u64, u64, u64)>,
    /// Orders of the lower central series terms, `γ_1` first, ending at 1.
    pub lcs_orders: Vec<u64>,
    pub exponent: u64,
    /// See [`PairClass`]; `None` when the applicability conditions fail.
    pub pair_profile: Option<Vec<(PairClass, u64)>>,
}

/// Encoding of a `p`-th power relative to the canonical central subgroup
/// `S = <c1, c2>` attached to a pair (see [`PairClass`]).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum PowEnc {
    /// The power is the identity.
    Id,
    /// `S` has rank 1 with canonical generator `s` and the power is `s^k`.
    S1(u8),
    /// `S` has rank 2 and the power is `c1^k1 * c2^k2`.
    S2(u8, u8),
    /// The power lies outside `S`.
    NotInS,
}

/// Descriptor of one ordered pair `(a, b)` of elements independent modulo
/// the Frattini subgroup, built from `z = [a,b]`, `c1 = [a,z]`,
/// `c2 = [b,z]`, and the `p`-th powers of `a`, `b`, `ab`.
///
/// Lift-independence: when `Φ(G)` is abelian of exponent `p` (odd) and
/// `[Φ(G), G]` is central of exponent dividing `p`, replacing `a, b` by
/// `aφ, bφ'` with `φ, φ' ∈ Φ(G)` leaves `c1`, `c2` and all three `p`-th
/// powers literally unchanged, and changes `z` only by an element of
/// `[Φ(G), G]`, which preserves its order. Hence the multiset of descriptors
/// over all independent pairs of `G/Φ(G)` is an isomorphism invariant.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct PairClass {
    pub ord_a: u64,
    pub ord_b: u64,
    pub ord_ab: u64,
    pub ord_z: u64,
    /// Rank of `S = <c1, c2>` (elementary abelian, 0..=2).
    pub s_rank: u8,
    pub c1_trivial: bool,
    /// When `S` has rank 1 and `c1` is nontrivial: the `t` with `c2 = c1^t`.
    pub dlog_c2_c1: Option<u8>,
    pub enc_ap: PowEnc,
    pub enc_bp: PowEnc,
    pub enc_abp: PowEnc,
}

impl Group {
    /// The group's fingerprint, computed once and cached.
    pub fn fingerprint(&self) -> &Fingerprint {
        self.fingerprint_cache.get_or_init(|| compute(self))
    }
}

fn multiset<I: Iterator<Item = u64>>(items: I) -> Vec<(u64, u64)> {
    let mut counts = std::collections::BTreeMap::new();
    for x in items {
        *counts.entry(x).or_insert(0u64) += 1;
    }
    counts.into_iter().collect()
}

fn compute(g: &Group) -> Fingerprint {
    let order = g.order() as u64;
    let order_spectrum = multiset(g.element_ids().map(|a| u64::from(g.element_order(a))));
    let class_sizes = multiset((0..g.num_classes() as u32).map(|c| u64::from(g.class_size(c))));
    let smallest_rel = u64::from(*g.pres().rels().iter().min().unwrap());
    let power_profile = {
        let mut counts = std::collections::BTreeMap::new();
        for a in g.element_ids() {
            let key = (
                u64::from(g.element_order(a)),
                u64::from(g.element_order(g.pow(a, smallest_rel as i64))),
            );
            *counts.entry(key).or_insert(0u64) += 1;
        }
        counts.into_iter().map(|((o, op), c)| (o, op, c)).collect()
    };
    let lcs_orders: Vec<u64> = g
        .lower_central_series()
        .iter()
        .map(|t| t.len() as u64)
        .collect();
    Fingerprint {
        order,
        order_spectrum,
        class_sizes,
        center_order: g.center().len() as u64,
        derived_order: g.derived_subgroup().len() as u64,
        abelian_invariants: abelian_invariants(g),
        power_profile,
        lcs_orders,
        exponent: g.exponent(),
        pair_profile: pair_profile(g),
    }
}

/// Invariant factors of the abelianization, from the Smith normal form of
/// the relation matrix (one row `rel_i * e_i - tail_i` per power rule, one
/// row per commutator tail).
pub fn abelian_invariants(g: &Group) -> Vec<u64> {
    let pres = g.pres();
    let n = pres.rank();
    let mut rows: Vec<Vec<i128>> = Vec::new();
    for i in 0..n {
        let mut row = vec![0i128; n];
        row[i] = i128::from(pres.rel(i));
        for &(k, e) in pres.pow_tail(i) {
            row[k] -= i128::from(e);
        }
        rows.push(row);
        for j in i + 1..n {
            let tail = pres.comm_tail(j, i);
            if tail.is_empty() {
                continue;
            }
            let mut row = vec![0i128; n];
            for &(k, e) in tail {
                row[k] += i128::from(e);
            }
            rows.push(row);
        }
    }
    let diag = smith_diagonal(rows, n);
    diag.into_iter()
        .filter(|&d| d > 1)
        .map(|d| d as u64)
        .collect()
}

/// Diagonal of the Smith normal form of an integer matrix (absolute values,
/// divisibility-ordered). `cols` is the column count; rows may be fewer or
/// more.
fn smith_diagonal(mut m: Vec<Vec<i128>>, cols: usize) -> Vec<i128> {
    let rows = m.len();
    let mut diag = Vec::new();
    let mut r0 = 0usize;
    let mut c0 = 0usize;
    while r0 < rows && c0 < cols {
        // Find the entry of least nonzero magnitude in the working block.
        let mut best: Option<(usize, usize)> = None;
        for r in r0..rows {
            for c in c0..cols {
                if m[r][c] != 0
                    && best.map_or(true, |(br, bc)| m[r][c].abs() < m[br][bc].abs())
                {
                    best = Some((r, c));
                }
            }
        }
        let Some((br, bc)) = best else { break };
        m.swap(r0, br);
        for row in m.iter_mut() {
            row.swap(c0, bc);
        }
        // Reduce column and row against the pivot; loop until clean.
        loop {
            let mut dirty = false;
            for r in r0 + 1..rows {
                if m[r][c0] != 0 {
                    let q = m[r][c0] / m[r0][c0];
                    for c in c0..cols {
                        m[r][c] -= q * m[r0][c];
                    }
                    if m[r][c0] != 0 {
                        m.swap(r0, r);
                        dirty = true;
                    }
                }
            }
            for c in c0 + 1..cols {
                if m[r0][c] != 0 {
                    let q = m[r0][c] / m[r0][c0];
                    for r in r0..rows {
                        m[r][c] -= q * m[r][c0];
                    }
                    if m[r0][c] != 0 {
                        for row in m.iter_mut() {
                            row.swap(c0, c);
                        }
                        dirty = true;
                    }
                }
            }
            if !dirty {
                break;
            }
        }
        diag.push(m[r0][c0].abs());
        r0 += 1;
        c0 += 1;
    }
    // Missing pivots mean free factors (order 0); cannot occur for the
    // relation matrices built above, whose pivot rows make it full rank.
    while diag.len() < cols {
        diag.push(0);
    }
    // Enforce the divisibility chain d1 | d2 | ... pairwise.
    for i in 0..diag.len() {
        for j in i + 1..diag.len() {
            let (a, b) = (diag[i], diag[j]);
            if a == 0 {
                diag[i] = b;
                diag[j] = 0;
                continue;
            }
            let g = gcd_i128(a, b);
            if g != 0 {
                diag[i] = g;
                diag[j] = a / g * b;
            }
        }
    }
    diag
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// The pair profile, when its correctness conditions hold (see
/// [`PairClass`]): homogeneous odd prime, Frattini rank exactly 2, abelian
/// Frattini subgroup of exponent `p`, and `[Φ(G), G]` central of exponent
/// dividing `p`.
fn pair_profile(g: &Group) -> Option<Vec<(PairClass, u64)>> {
    let p = u64::from(g.pres().prime()?);
    if p == 2 || g.frattini_rank() != Some(2) {
        return None;
    }

    // Φ(G) = G^p [G,G] as an explicit subgroup.
    let mut frat_gens: Vec<u32> = g.derived_subgroup().to_vec();
    for &gen in g.generator_ids() {
        frat_gens.push(g.pow(gen, p as i64));
    }
    let phi = g.subgroup_closure(&frat_gens);
    if phi.len() as u64 * p * p != g.order() as u64 {
        return None;
    }
    for &a in &phi {
        if a != 0 && u64::from(g.element_order(a)) != p {
            return None;
        }
    }
    for (i, &a) in phi.iter().enumerate() {
        for &b in &phi[i + 1..] {
            if g.comm(a, b) != 0 {
                return None;
            }
        }
    }
    // [Φ, G] central of exponent dividing p.
    let mut seed = Vec::new();
    for &a in &phi {
        for &gen in g.generator_ids() {
            let c = g.comm(a, gen);
            if c != 0 {
                seed.push(c);
            }
        }
    }
    for &c in &g.normal_closure(&seed) {
        if !g.is_central(c) || u64::from(g.element_order(c)) > p {
            return None;
        }
    }

    // Base generators whose Frattini images form a basis of F_p^2.
    let coords = |a: u32| -> [u64; 2] {
        let c = g.frat_coords(a).unwrap();
        [u64::from(c[0]), u64::from(c[1])]
    };
    let base0 = *g
        .generator_ids()
        .iter()
        .find(|&&x| coords(x) != [0, 0])?;
    let b0 = coords(base0);
    let base1 = *g.generator_ids().iter().find(|&&x| {
        let c = coords(x);
        (b0[0] * c[1] + (p - 1) * (b0[1] * c[0] % p)) % p != 0
    })?;
    let b1 = coords(base1);
    // Inverse of the basis matrix [b0; b1] over F_p.
    let det = (b0[0] * b1[1] + (p - 1) * (b0[1] * b1[0] % p)) % p;
    let det_inv = mod_inv(det, p);
    let lift = |v: [u64; 2]| -> u32 {
        // Solve s*b0 + t*b1 = v.
        let s = (v[0] * b1[1] + (p - 1) * (v[1] * b1[0] % p)) % p * det_inv % p;
        let t = (b0[0] * v[1] + (p - 1) * (b0[1] * v[0] % p)) % p * det_inv % p;
        g.mul(g.pow(base0, s as i64), g.pow(base1, t as i64))
    };

    let mut counts: std::collections::BTreeMap<PairClass, u64> = std::collections::BTreeMap::new();
    for a0 in 0..p {
        for a1 in 0..p {
            if (a0, a1) == (0, 0) {
                continue;
            }
            let a = lift([a0, a1]);
            for b0v in 0..p {
                for b1v in 0..p {
                    if (a0 * b1v + (p - 1) * (a1 * b0v % p)) % p == 0 {
                        continue;
                    }
                    let b = lift([b0v, b1v]);
                    *counts.entry(descriptor(g, a, b, p)).or_insert(0) += 1;
                }
            }
        }
    }
    Some(counts.into_iter().collect())
}

fn descriptor(g: &Group, a: u32, b: u32, p: u64) -> PairClass {
    let ab = g.mul(a, b);
    let z = g.comm(a, b);
    let c1 = g.comm(a, z);
    let c2 = g.comm(b, z);
    let (s_rank, dlog) = match (c1, c2) {
        (0, 0) => (0u8, None),
        (0, _) => (1, None),
        (_, 0) => (1, Some(0)),
        _ => {
            // c2 = c1^t for some t in 1..p iff rank 1.
            let mut t_found = None;
            let mut x = c1;
            for t in 1..p {
                if x == c2 {
                    t_found = Some(t as u8);
                    break;
                }
                x = g.mul(x, c1);
            }
            match t_found {
                Some(t) => (1, Some(t)),
                None => (2, None),
            }
        }
    };
    let enc = |u: u32| -> PowEnc {
        if u == 0 {
            return PowEnc::Id;
        }
        match s_rank {
            0 => PowEnc::NotInS,
            1 => {
                let s = if c1 != 0 { c1 } else { c2 };
                let mut x = s;
                for k in 1..p {
                    if x == u {
                        return PowEnc::S1(k as u8);
                    }
                    x = g.mul(x, s);
                }
                PowEnc::NotInS
            }
            _ => {
                for k1 in 0..p {
                    let base = g.pow(c1, k1 as i64);
                    let mut x = base;
                    for k2 in 0..p {
                        if x == u && (k1, k2) != (0, 0) {
                            return PowEnc::S2(k1 as u8, k2 as u8);
                        }
                        x = g.mul(x, c2);
                    }
                }
                PowEnc::NotInS
            }
        }
    };
    PairClass {
        ord_a: u64::from(g.element_order(a)),
        ord_b: u64::from(g.element_order(b)),
        ord_ab: u64::from(g.element_order(ab)),
        ord_z: u64::from(g.element_order(z)),
        s_rank,
        c1_trivial: c1 == 0,
        dlog_c2_c1: dlog,
        enc_ap: enc(g.pow(a, p as i64)),
        enc_bp: enc(g.pow(b, p as i64)),
        enc_abp: enc(g.pow(ab, p as i64)),
    }
}
