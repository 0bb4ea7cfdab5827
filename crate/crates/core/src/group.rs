//! A finite group materialized from a power-commutator presentation.
//!
//! Construction collects every product `u * g_k` into dense lookup tables,
//! verifies that the presentation is consistent (the formal normal forms are
//! exactly the group elements), then precomputes inverses, element orders,
//! conjugacy classes, the center, and coordinates in the Frattini quotient.
//! All subsequent algebra is table lookups keyed by element id.
//!
//! Ids encode normal-form exponent vectors in mixed radix with the *first*
//! generator most significant, so id order equals lexicographic order on
//! exponent vectors and id 0 is the identity.

use std::sync::OnceLock;

use serde::Serialize;

use crate::collect::Collector;
use crate::config::MAX_GROUP_ORDER;
use crate::error::PcError;
use crate::fingerprint::Fingerprint;
use crate::numtheory::{lcm, mod_inv};
use crate::presentation::PcPresentation;
use crate::word::{self, Lit};

/// An element id together with readable renderings, for reports and JSON.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Element {
    pub id: u32,
    pub exponents: Vec<u32>,
    pub word: String,
}

/// Coordinates in the Frattini quotient `G/Φ(G) ≅ F_p^d`, available for
/// groups whose generators all share one prime.
struct FrattiniData {
    p: u64,
    d: usize,
    /// Row-echelon basis (pivot-normalized) of the subspace spanned by the
    /// presentation tails, i.e. the kernel of `F_p^n -> G/Φ(G)`.
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
    free_cols: Vec<usize>,
    /// `d` coordinates per element, flattened.
    coords: Vec<u8>,
}

pub struct Group {
    pres: PcPresentation,
    order: usize,
    strides: Vec<usize>,
    gen_ids: Vec<u32>,
    /// `rmul[k][u]` = id of `u * g_k`.
    rmul: Vec<Vec<u32>>,
    inv: Vec<u32>,
    ord: Vec<u32>,
    /// For homogeneous groups: `socle_gen[a] = a^(o(a)/p)`, the canonical
    /// order-`p` element of `<a>` (0 at the identity slot).
    socle_gen: Option<Vec<u32>>,
    /// Min element id of the order-`p` subgroup of `<a>`, homogeneous only.
    socle_sub: Option<Vec<u32>>,
    class_id: Vec<u32>,
    /// Per class: its minimal element id, which is the canonical
    /// representative (classes are numbered by ascending representative).
    class_reps: Vec<u32>,
    class_sizes: Vec<u32>,
    /// Per element `m`: a conjugator `u` with `rep^u = m`.
    class_conj: Vec<u32>,
    class_members_flat: Vec<u32>,
    class_offsets: Vec<usize>,
    center_ids: Vec<u32>,
    frat: Option<FrattiniData>,
    pcp_cache: OnceLock<Vec<Box<[u32]>>>,
    pub(crate) fingerprint_cache: OnceLock<Fingerprint>,
    derived_cache: OnceLock<Vec<u32>>,
    lcs_cache: OnceLock<Vec<Vec<u32>>>,
}

impl Group {
    /// Build the group, checking consistency of the presentation.
    pub fn from_presentation(pres: PcPresentation) -> Result<Group, PcError> {
        let formal = pres.formal_order();
        if formal > u128::from(MAX_GROUP_ORDER) {
            return Err(PcError::GroupTooLarge {
                order: formal,
                limit: MAX_GROUP_ORDER,
            });
        }
        let order = formal as usize;
        let n = pres.rank();

        // Associativity overlaps are the decisive consistency test: a
        // transitive closure of the tables alone can miss collapses (the
        // tables may form a non-associative magma of full size), so check
        // the overlaps first and keep the closure count as a second gate.
        if let Some(overlap) = crate::collect::overlap_violations(&pres)?.into_iter().next() {
            return Err(PcError::OverlapViolation { overlap });
        }

        let mut strides = vec![1usize; n];
        for i in (0..n.saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * pres.rel(i + 1) as usize;
        }

        let collector = Collector::new(&pres);

        // Right-multiplication tables, one full pass of collection per
        // generator. A scratch exponent vector is decoded from the id,
        // multiplied by g_k, and re-encoded.
        let mut rmul: Vec<Vec<u32>> = Vec::with_capacity(n);
        let mut scratch = vec![0u32; n];
        for k in 0..n {
            let mut table = vec![0u32; order];
            for (u, slot) in table.iter_mut().enumerate() {
                decode(&mut scratch, u, &strides, &pres);
                collector.collect_onto(&mut scratch, &[(k, 1)])?;
                *slot = encode(&scratch, &strides);
            }
            rmul.push(table);
        }

        // Consistency: every formal id must be reachable from the identity
        // by right-multiplying generators, i.e. the normal forms really are
        // the elements of the presented group.
        let reached = closure_count(&rmul, order);
        if reached != order {
            return Err(PcError::InconsistentPresentation {
                reached,
                expected: order,
            });
        }

        let gen_ids: Vec<u32> = (0..n).map(|i| strides[i] as u32).collect();

        // Inverses. Peel the least-significant nonzero digit g_k^e:
        // (prefix * g_k^e)^-1 = (g_k^e)^-1 * prefix^-1, and the prefix has a
        // strictly smaller id, so ascending order fills the table. The id of
        // (g_k^e)^-1 = g_k^-e comes from collection (NOT g_k^(rel-e): when
        // the power tail is nontrivial those differ).
        let mut gen_neg: Vec<Vec<u32>> = Vec::with_capacity(n);
        for k in 0..n {
            let r = pres.rel(k) as i64;
            let mut row = Vec::with_capacity(r as usize);
            for e in 0..r {
                row.push(encode(&collector.collect(&[(k, -e)])?, &strides));
            }
            gen_neg.push(row);
        }
        let mut inv = vec![0u32; order];
        for u in 1..order {
            let k = last_nonzero_digit(u, &strides, &pres);
            let e = (u / strides[k]) % pres.rel(k) as usize;
            let prefix = u - e * strides[k];
            inv[u] = mul_raw(&rmul, &strides, &pres, gen_neg[k][e], inv[prefix]);
        }

        // Element orders. Homogeneous groups chase the p-th power map;
        // otherwise walk the cyclic group directly.
        let mut ord = vec![0u32; order];
        ord[0] = 1;
        if let Some(p) = pres.prime() {
            let mut pmap = vec![0u32; order];
            for u in 0..order as u32 {
                pmap[u as usize] = pow_raw(&rmul, &strides, &pres, u, i64::from(p));
            }
            for u in 1..order as u32 {
                let mut o = 1u32;
                let mut x = u;
                while x != 0 {
                    o *= p;
                    x = pmap[x as usize];
                }
                ord[u as usize] = o;
            }
        } else {
            for u in 1..order as u32 {
                let mut o = 1u32;
                let mut x = u;
                while x != 0 {
                    x = mul_raw(&rmul, &strides, &pres, x, u);
                    o += 1;
                }
                ord[u as usize] = o;
            }
        }

        // Socle data (homogeneous only): a^(o(a)/p) has order p and
        // generates the unique minimal subgroup of <a>.
        let (socle_gen, socle_sub) = if let Some(p) = pres.prime() {
            let mut sg = vec![0u32; order];
            let mut ss = vec![0u32; order];
            for u in 1..order as u32 {
                let s = pow_raw(
                    &rmul,
                    &strides,
                    &pres,
                    u,
                    i64::from(ord[u as usize] / p),
                );
                sg[u as usize] = s;
                let mut min = s;
                let mut x = s;
                for _ in 2..p {
                    x = mul_raw(&rmul, &strides, &pres, x, s);
                    min = min.min(x);
                }
                ss[u as usize] = min;
            }
            (Some(sg), Some(ss))
        } else {
            (None, None)
        };

        let frat = pres.prime().map(|p| frattini_data(&pres, order, &strides, u64::from(p)));

        // Conjugacy classes by orbit search over per-generator conjugation
        // maps. Scanning base ids in ascending order makes each class's
        // first-seen member its minimum, hence the canonical representative.
        let mut conj_gen: Vec<Vec<u32>> = Vec::with_capacity(n);
        for k in 0..n {
            let gk = gen_ids[k];
            let gk_inv = inv[gk as usize];
            let mut table = vec![0u32; order];
            for (u, slot) in table.iter_mut().enumerate() {
                let t = mul_raw(&rmul, &strides, &pres, gk_inv, u as u32);
                *slot = mul_raw(&rmul, &strides, &pres, t, gk);
            }
            conj_gen.push(table);
        }
        let mut class_id = vec![u32::MAX; order];
        let mut class_conj = vec![0u32; order];
        let mut class_reps = Vec::new();
        let mut class_sizes = Vec::new();
        let mut class_members_flat: Vec<u32> = Vec::with_capacity(order);
        let mut class_offsets = vec![0usize];
        let mut queue: Vec<u32> = Vec::new();
        for base in 0..order as u32 {
            if class_id[base as usize] != u32::MAX {
                continue;
            }
            let c = class_reps.len() as u32;
            class_reps.push(base);
            class_id[base as usize] = c;
            class_conj[base as usize] = 0;
            queue.clear();
            queue.push(base);
            let mut members = vec![base];
            while let Some(x) = queue.pop() {
                for k in 0..n {
                    let m = conj_gen[k][x as usize];
                    if class_id[m as usize] == u32::MAX {
                        class_id[m as usize] = c;
                        class_conj[m as usize] = mul_raw(
                            &rmul,
                            &strides,
                            &pres,
                            class_conj[x as usize],
                            gen_ids[k],
                        );
                        members.push(m);
                        queue.push(m);
                    }
                }
            }
            members.sort_unstable();
            class_sizes.push(members.len() as u32);
            class_members_flat.extend_from_slice(&members);
            class_offsets.push(class_members_flat.len());
        }

        let center_ids: Vec<u32> = class_reps
            .iter()
            .zip(&class_sizes)
            .filter(|&(_, &s)| s == 1)
            .map(|(&r, _)| r)
            .collect();

        Ok(Group {
            pres,
            order,
            strides,
            gen_ids,
            rmul,
            inv,
            ord,
            socle_gen,
            socle_sub,
            class_id,
            class_reps,
            class_sizes,
            class_conj,
            class_members_flat,
            class_offsets,
            center_ids,
            frat,
            pcp_cache: OnceLock::new(),
            fingerprint_cache: OnceLock::new(),
            derived_cache: OnceLock::new(),
            lcs_cache: OnceLock::new(),
        })
    }

    pub fn pres(&self) -> &PcPresentation {
        &self.pres
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn rank(&self) -> usize {
        self.pres.rank()
    }

    pub fn identity(&self) -> u32 {
        0
    }

    /// Id of presentation generator `i`.
    pub fn generator(&self, i: usize) -> u32 {
        self.gen_ids[i]
    }

    pub fn generator_ids(&self) -> &[u32] {
        &self.gen_ids
    }

    pub fn element_ids(&self) -> impl Iterator<Item = u32> {
        0..self.order as u32
    }

    pub fn vec_of_id(&self, id: u32) -> Vec<u32> {
        let mut v = vec![0u32; self.pres.rank()];
        decode(&mut v, id as usize, &self.strides, &self.pres);
        v
    }

    pub fn id_of_vec(&self, v: &[u32]) -> u32 {
        debug_assert_eq!(v.len(), self.pres.rank());
        debug_assert!(v.iter().enumerate().all(|(i, &e)| e < self.pres.rel(i)));
        encode(v, &self.strides)
    }

    /// The element as a normal-form word for display.
    pub fn element(&self, id: u32) -> Element {
        let exponents = self.vec_of_id(id);
        let lits: Vec<Lit> = exponents
            .iter()
            .enumerate()
            .filter(|&(_, &e)| e != 0)
            .map(|(g, &e)| (g, i64::from(e)))
            .collect();
        Element {
            id,
            exponents,
            word: word::render(&lits, self.pres.names()),
        }
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        mul_raw(&self.rmul, &self.strides, &self.pres, a, b)
    }

    pub fn inv(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }

    pub fn pow(&self, a: u32, e: i64) -> u32 {
        if e < 0 {
            pow_raw(
                &self.rmul,
                &self.strides,
                &self.pres,
                self.inv[a as usize],
                -e,
            )
        } else {
            pow_raw(&self.rmul, &self.strides, &self.pres, a, e)
        }
    }

    /// Conjugate `a^h = h^-1 a h`.
    pub fn conj(&self, a: u32, h: u32) -> u32 {
        self.mul(self.mul(self.inv(h), a), h)
    }

    /// Commutator `[a, b] = a^-1 b^-1 a b`.
    pub fn comm(&self, a: u32, b: u32) -> u32 {
        self.mul(self.inv(self.mul(b, a)), self.mul(a, b))
    }

    pub fn element_order(&self, a: u32) -> u32 {
        self.ord[a as usize]
    }

    /// Evaluate a word in the presentation generators.
    pub fn evaluate(&self, w: &[Lit]) -> Result<u32, PcError> {
        let n = self.pres.rank();
        let mut x = 0u32;
        for &(g, e) in w {
            if g >= n {
                return Err(PcError::IndexOutOfRange { index: g, rank: n });
            }
            x = self.mul(x, self.pow(self.gen_ids[g], e));
        }
        Ok(x)
    }

    pub fn num_classes(&self) -> usize {
        self.class_reps.len()
    }

    pub fn class_of(&self, a: u32) -> u32 {
        self.class_id[a as usize]
    }

    /// Canonical (minimal-id) representative of class `c`.
    pub fn class_rep(&self, c: u32) -> u32 {
        self.class_reps[c as usize]
    }

    pub fn class_size(&self, c: u32) -> u32 {
        self.class_sizes[c as usize]
    }

    /// Members of class `c`, ascending.
    pub fn class_members(&self, c: u32) -> &[u32] {
        let c = c as usize;
        &self.class_members_flat[self.class_offsets[c]..self.class_offsets[c + 1]]
    }

    /// A conjugator `u` with `class_rep(class_of(a))^u = a`.
    pub fn conjugator_to(&self, a: u32) -> u32 {
        self.class_conj[a as usize]
    }

    /// Element ids of the center, ascending.
    pub fn center(&self) -> &[u32] {
        &self.center_ids
    }

    pub fn is_central(&self, a: u32) -> bool {
        self.class_sizes[self.class_id[a as usize] as usize] == 1
    }

    pub fn is_abelian(&self) -> bool {
        self.center_ids.len() == self.order
    }

    /// Exponent of the group (lcm of element orders).
    pub fn exponent(&self) -> u64 {
        self.ord.iter().fold(1u64, |acc, &o| lcm(acc, u64::from(o)))
    }

    /// Minimal number of generators, via the Frattini quotient. `None` when
    /// generators mix primes (direct products of coprime factors).
    pub fn frattini_rank(&self) -> Option<usize> {
        self.frat.as_ref().map(|f| f.d)
    }

    /// Coordinates of `a` in `G/Φ(G) ≅ F_p^d`, homogeneous groups only.
    pub fn frat_coords(&self, a: u32) -> Option<&[u8]> {
        self.frat.as_ref().map(|f| {
            let d = f.d;
            &f.coords[a as usize * d..(a as usize + 1) * d]
        })
    }

    /// Whether `<a, b> = G`, decided in O(1) from Frattini coordinates when
    /// available, otherwise by closure.
    pub fn generates(&self, a: u32, b: u32) -> bool {
        match &self.frat {
            Some(f) => {
                let ca = &f.coords[a as usize * f.d..(a as usize + 1) * f.d];
                let cb = &f.coords[b as usize * f.d..(b as usize + 1) * f.d];
                match f.d {
                    0 => true,
                    1 => ca[0] != 0 || cb[0] != 0,
                    2 => {
                        let p = f.p;
                        let det = (u64::from(ca[0]) * u64::from(cb[1])
                            + (p - 1) * u64::from(ca[1]) * u64::from(cb[0]))
                            % p;
                        det != 0
                    }
                    _ => false,
                }
            }
            None => self.generates_by_closure(&[a, b]),
        }
    }

    /// Whether the listed elements generate `G`, by explicit closure. Slow
    /// path, kept as an independent cross-check of [`Group::generates`].
    pub fn generates_by_closure(&self, gens: &[u32]) -> bool {
        self.subgroup_closure(gens).len() == self.order
    }

    /// All elements of `<gens>`, ascending.
    pub fn subgroup_closure(&self, gens: &[u32]) -> Vec<u32> {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut out = vec![0u32];
        let mut queue = vec![0u32];
        while let Some(x) = queue.pop() {
            for &s in gens {
                let y = self.mul(x, s);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    out.push(y);
                    queue.push(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// All elements of the normal closure `<seed>^G`, ascending.
    pub fn normal_closure(&self, seed: &[u32]) -> Vec<u32> {
        let mut gens: Vec<u32> = seed.iter().copied().filter(|&x| x != 0).collect();
        gens.sort_unstable();
        gens.dedup();
        loop {
            let h = self.subgroup_closure(&gens);
            let mut grew = false;
            for &x in &h {
                for &g in &self.gen_ids {
                    let c = self.conj(x, g);
                    if h.binary_search(&c).is_err() {
                        gens.push(c);
                        grew = true;
                    }
                }
            }
            if !grew {
                return h;
            }
        }
    }

    /// `a^(o(a)/p)`: canonical order-`p` element under `a`. Homogeneous
    /// groups only; `None` for the identity or mixed primes.
    pub fn socle_gen(&self, a: u32) -> Option<u32> {
        match &self.socle_gen {
            Some(sg) if a != 0 => Some(sg[a as usize]),
            _ => None,
        }
    }

    /// Minimal element id of the unique order-`p` subgroup of `<a>`: a
    /// canonical name for that subgroup. Homogeneous groups only.
    pub fn socle_sub(&self, a: u32) -> Option<u32> {
        match &self.socle_sub {
            Some(ss) if a != 0 => Some(ss[a as usize]),
            _ => None,
        }
    }

    /// Sorted distinct class ids of the powers `a, a^2, ..., a^o(a)`. The
    /// identity's class (0) is always present. Computed once per group.
    pub fn power_class_profile(&self, a: u32) -> &[u32] {
        let cache = self.pcp_cache.get_or_init(|| {
            (0..self.order as u32)
                .map(|x| {
                    let mut ids: Vec<u32> = Vec::new();
                    let mut y = x;
                    loop {
                        ids.push(self.class_id[y as usize]);
                        if y == 0 {
                            break;
                        }
                        y = self.mul(y, x);
                    }
                    ids.sort_unstable();
                    ids.dedup();
                    ids.into_boxed_slice()
                })
                .collect()
        });
        &cache[a as usize]
    }

    /// The derived subgroup `[G, G]`, ascending. Computed once per group as
    /// the normal closure of the generator commutators.
    pub fn derived_subgroup(&self) -> &[u32] {
        self.derived_cache.get_or_init(|| {
            let mut seed = Vec::new();
            for j in 1..self.gen_ids.len() {
                for i in 0..j {
                    seed.push(self.comm(self.gen_ids[j], self.gen_ids[i]));
                }
            }
            self.normal_closure(&seed)
        })
    }

    /// The lower central series `[γ_1, γ_2, ...]` down to the trivial
    /// subgroup, each term as an ascending id list. `γ_1 = G`.
    pub fn lower_central_series(&self) -> &[Vec<u32>] {
        self.lcs_cache.get_or_init(|| {
            let whole: Vec<u32> = (0..self.order as u32).collect();
            let mut series = vec![whole, self.derived_subgroup().to_vec()];
            loop {
                let prev = series.last().unwrap();
                if prev.len() == 1 {
                    break;
                }
                let mut seed = Vec::new();
                for &x in prev {
                    for &g in &self.gen_ids {
                        let c = self.comm(x, g);
                        if c != 0 {
                            seed.push(c);
                        }
                    }
                }
                let next = self.normal_closure(&seed);
                if next.len() == prev.len() {
                    // Series stabilized without reaching 1: not nilpotent
                    // (cannot happen for consistent prime-power tables, but
                    // avoid looping forever).
                    break;
                }
                series.push(next);
            }
            series
        })
    }

    /// Nilpotency class.
    pub fn nilpotency_class(&self) -> usize {
        self.lower_central_series().len() - 1
    }
}

fn decode(out: &mut [u32], id: usize, strides: &[usize], pres: &PcPresentation) {
    for i in 0..out.len() {
        out[i] = ((id / strides[i]) % pres.rel(i) as usize) as u32;
    }
}

fn encode(v: &[u32], strides: &[usize]) -> u32 {
    v.iter()
        .zip(strides)
        .map(|(&e, &s)| e as usize * s)
        .sum::<usize>() as u32
}

fn last_nonzero_digit(id: usize, strides: &[usize], pres: &PcPresentation) -> usize {
    for i in (0..strides.len()).rev() {
        if (id / strides[i]) % pres.rel(i) as usize != 0 {
            return i;
        }
    }
    unreachable!("caller filters out the identity")
}

/// Multiply by folding the digits of `b` through the right-multiplication
/// tables.
fn mul_raw(rmul: &[Vec<u32>], strides: &[usize], pres: &PcPresentation, a: u32, b: u32) -> u32 {
    let mut x = a;
    let b = b as usize;
    for (i, table) in rmul.iter().enumerate() {
        let e = (b / strides[i]) % pres.rel(i) as usize;
        for _ in 0..e {
            x = table[x as usize];
        }
    }
    x
}

fn pow_raw(rmul: &[Vec<u32>], strides: &[usize], pres: &PcPresentation, a: u32, e: i64) -> u32 {
    debug_assert!(e >= 0);
    let mut e = e as u64;
    let mut base = a;
    let mut acc = 0u32;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_raw(rmul, strides, pres, acc, base);
        }
        base = mul_raw(rmul, strides, pres, base, base);
        e >>= 1;
    }
    acc
}

/// Count ids reachable from the identity under right multiplication by
/// generators.
fn closure_count(rmul: &[Vec<u32>], order: usize) -> usize {
    let mut seen = vec![false; order];
    seen[0] = true;
    let mut queue = vec![0u32];
    let mut count = 1usize;
    while let Some(x) = queue.pop() {
        for table in rmul {
            let y = table[x as usize];
            if !seen[y as usize] {
                seen[y as usize] = true;
                count += 1;
                queue.push(y);
            }
        }
    }
    count
}

/// Gaussian elimination over F_p of the presentation's tail exponent
/// vectors. The row space is the kernel of the natural surjection
/// `F_p^n -> G/Φ(G)`; free columns provide coordinates on the quotient.
fn frattini_data(pres: &PcPresentation, order: usize, strides: &[usize], p: u64) -> FrattiniData {
    let n = pres.rank();
    let mut rows: Vec<Vec<u64>> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();

    let insert = |rows: &mut Vec<Vec<u64>>, pivots: &mut Vec<usize>, mut v: Vec<u64>| {
        for (row, &piv) in rows.iter().zip(pivots.iter()) {
            let c = v[piv] % p;
            if c != 0 {
                for (vi, ri) in v.iter_mut().zip(row) {
                    *vi = (*vi + (p - c) * ri) % p;
                }
            }
        }
        if let Some(piv) = v.iter().position(|&x| x % p != 0) {
            let inv = mod_inv(v[piv], p);
            for x in v.iter_mut() {
                *x = *x * inv % p;
            }
            rows.push(v);
            pivots.push(piv);
        }
    };

    let tail_vec = |tail: &[Lit]| -> Vec<u64> {
        let mut v = vec![0u64; n];
        for &(g, e) in tail {
            v[g] = (v[g] + e.rem_euclid(p as i64) as u64) % p;
        }
        v
    };

    for i in 0..n {
        insert(&mut rows, &mut pivots, tail_vec(pres.pow_tail(i)));
        for j in i + 1..n {
            insert(&mut rows, &mut pivots, tail_vec(pres.comm_tail(j, i)));
        }
    }

    let free_cols: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let d = free_cols.len();

    let mut data = FrattiniData {
        p,
        d,
        rows,
        pivots,
        free_cols,
        coords: Vec::new(),
    };
    let mut coords = vec![0u8; order * d];
    let mut v = vec![0u64; n];
    for id in 0..order {
        for (i, vi) in v.iter_mut().enumerate() {
            *vi = ((id / strides[i]) % pres.rel(i) as usize) as u64;
        }
        coords[id * d..(id + 1) * d].copy_from_slice(&data.reduce(&v));
    }
    data.coords = coords;
    data
}

impl FrattiniData {
    /// Reduce an arbitrary exponent vector to quotient coordinates.
    fn reduce(&self, v: &[u64]) -> Vec<u8> {
        let mut v = v.to_vec();
        for (row, &piv) in self.rows.iter().zip(&self.pivots) {
            let c = v[piv] % self.p;
            if c != 0 {
                for (vi, ri) in v.iter_mut().zip(row) {
                    *vi = (*vi + (self.p - c) * ri) % self.p;
                }
            }
        }
        self.free_cols.iter().map(|&c| (v[c] % self.p) as u8).collect()
    }
}
