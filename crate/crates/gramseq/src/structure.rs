//! The structural results: Bézoutian rank identity, canonical representation
//! of the singular set, rank distribution and dynamics, and the q-ary
//! empirical analogue.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem};
use crate::gram::{rank_gf2, rank_profile, BitMatrix, RankProfile};
use crate::poly2::BitPoly;
use crate::seq::m_sequence;

/// Symmetric coefficient matrix of `(f(x)g(y) - g(x)f(y)) / (x - y)` of
/// order n; requires nonzero inputs of degree at most n.
pub fn bezoutian(f: &BitPoly, g: &BitPoly, n: usize) -> Result<BitMatrix> {
    let df = f.degree().ok_or(Error::ZeroPolynomial)?;
    let dg = g.degree().ok_or(Error::ZeroPolynomial)?;
    let bound = df.max(dg);
    if bound > n {
        return Err(Error::DegreeBound {
            bound: n,
            found: bound,
        });
    }
    // numerator coefficient grid: N[a][b] = f_a g_b + g_a f_b
    let num = |a: usize, b: usize| -> bool {
        (f.coeff(a) & g.coeff(b)) ^ (g.coeff(a) & f.coeff(b))
    };
    let mut bez = BitMatrix::new(n, n);
    // divide by x + y along the telescoping recurrence
    for a in 0..n {
        for j in (0..n).rev() {
            let carry = a >= 1 && j + 1 < n && bez.get(a - 1, j + 1);
            bez.set(a, j, num(a, j + 1) ^ carry);
        }
    }
    // the division must be exact
    let b_at = |a: isize, b: isize| -> bool {
        a >= 0 && b >= 0 && (a as usize) < n && (b as usize) < n && bez.get(a as usize, b as usize)
    };
    for a in 0..=n {
        for b in 0..=n {
            let recomposed = b_at(a as isize - 1, b as isize) ^ b_at(a as isize, b as isize - 1);
            assert_eq!(recomposed, num(a, b), "inexact division at ({a}, {b})");
        }
    }
    Ok(bez)
}

/// True iff `rank(B_n(f, g)) = max(deg f, deg g) - deg gcd(f, g)`.
pub fn bezout_rank_check(f: &BitPoly, g: &BitPoly, n: usize) -> Result<bool> {
    let b = bezoutian(f, g, n)?;
    let expected = f.degree().unwrap().max(g.degree().unwrap())
        - BitPoly::gcd(f, g)?.degree().unwrap();
    Ok(rank_gf2(&b) == expected)
}

/// The pair `(k0, u)` standing for the rational function `z^k0 u~(z)/u(z)`
/// with `u(0) = 1`, `gcd(u, u~) = 1` and `|k0| <= n - 1 - deg u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalRep {
    pub k0: i32,
    pub u: BitPoly,
}

impl CanonicalRep {
    /// The rank of the Gram matrix this representation parametrizes:
    /// `deg(u) + |k0|`.
    pub fn rank(&self) -> usize {
        self.u.degree().unwrap_or(0) + self.k0.unsigned_abs() as usize
    }
}

/// All canonical representations for order n, sorted by (deg u, u, k0).
pub fn enumerate_reps(n: u32) -> Result<Vec<CanonicalRep>> {
    if n < 3 {
        return Err(Error::OrderTooSmall(n));
    }
    let n = n as usize;
    let mut reps = Vec::new();
    for d in 0..n {
        let masks: Vec<u64> = if d == 0 {
            vec![1]
        } else {
            (0..1u64 << (d - 1)).map(|mid| 1 | mid << 1 | 1 << d).collect()
        };
        for mask in masks {
            let u = BitPoly::from_mask(mask);
            let ur = u.reciprocal_std().expect("nonzero");
            if !BitPoly::gcd(&u, &ur).expect("nonzero").is_one() {
                continue;
            }
            let span = (n - 1 - d) as i32;
            for k0 in -span..=span {
                reps.push(CanonicalRep { k0, u: u.clone() });
            }
        }
    }
    Ok(reps)
}

/// Evaluates `alpha^k0 u~(alpha)/u(alpha)` and reports the exponent as t in
/// 1..=2^n - 1 (the unit element is reported as t = 2^n - 1).
pub fn evaluate_rep(ctx: &FieldCtx, rep: &CanonicalRep) -> u64 {
    assert_eq!(ctx.q(), 2);
    let ur = rep.u.reciprocal_std().expect("u is nonzero");
    let num = ctx.eval_bitpoly(&ur, ctx.alpha());
    let den = ctx.eval_bitpoly(&rep.u, ctx.alpha());
    let value = ctx.div(num, den);
    let e = ctx.discrete_log(value).expect("u has no root among powers of alpha");
    let order = ctx.order();
    let t = (e as i64 + rep.k0 as i64).rem_euclid(order as i64) as u64;
    if t == 0 {
        order
    } else {
        t
    }
}

/// The bijection t -> canonical representation over all singular points.
/// A collision would contradict the bijectivity theorem and is reported
/// as an error.
pub fn singular_map(ctx: &FieldCtx) -> Result<BTreeMap<u64, CanonicalRep>> {
    let mut map = BTreeMap::new();
    for rep in enumerate_reps(ctx.n())? {
        let t = evaluate_rep(ctx, &rep);
        if map.insert(t, rep).is_some() {
            return Err(Error::BijectionViolation(t));
        }
    }
    Ok(map)
}

/// The singular set computed from the other side: exponents of
/// `p*(alpha)/p(alpha)` over all nonzero p of degree < n.
pub fn singular_set_from_ratios(ctx: &FieldCtx) -> Result<BTreeSet<u64>> {
    assert_eq!(ctx.q(), 2);
    let n = ctx.n();
    if n < 3 {
        return Err(Error::OrderTooSmall(n));
    }
    let order = ctx.order();
    let mut set = BTreeSet::new();
    for mask in 1..1u64 << n {
        let p = BitPoly::from_mask(mask);
        let pstar = p.reciprocal_star(n as usize).expect("degree < n");
        let num = ctx.eval_bitpoly(&pstar, ctx.alpha());
        let den = ctx.eval_bitpoly(&p, ctx.alpha());
        let e = ctx
            .discrete_log(ctx.div(num, den))
            .expect("p has no root among powers of alpha");
        set.insert(if e == 0 { order } else { e });
    }
    Ok(set)
}

/// Rank (or hull-dimension) counts, indexed 0..=n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistTable {
    pub counts: Vec<u64>,
}

impl DistTable {
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DistMode {
    /// Count ranks directly from the computed profile.
    Direct,
    /// Emit the closed-form counts.
    Formula,
}

/// Closed form of the rank distribution: 1, 2, 2^{k-1} for 2 <= k <= n-1,
/// and 2^{n-1} - 2 at full rank.
pub fn expected_rank_counts(n: u32) -> Vec<u64> {
    let mut counts = vec![1, 2];
    for k in 2..n {
        counts.push(1 << (k - 1));
    }
    counts.push((1 << (n - 1)) - 2);
    counts
}

pub fn counts_from_profile(profile: &RankProfile) -> DistTable {
    let mut counts = vec![0u64; profile.n() as usize + 1];
    for &r in profile.values() {
        counts[r as usize] += 1;
    }
    DistTable { counts }
}

/// Rank distribution over t = 1..2^n - 1 on the default modulus.
pub fn rank_distribution(n: u32, mode: DistMode) -> Result<DistTable> {
    if n < 3 {
        return Err(Error::OrderTooSmall(n));
    }
    match mode {
        DistMode::Formula => Ok(DistTable {
            counts: expected_rank_counts(n),
        }),
        DistMode::Direct => {
            let ctx = FieldCtx::binary(n)?;
            let profile = rank_profile(&ctx, ctx.one())?;
            Ok(counts_from_profile(&profile))
        }
    }
}

/// Violation counts for the three dynamics theorems, evaluated cyclically
/// over one period of the rank profile.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DynamicsReport {
    pub persistence_violations: u64,
    pub instability_violations: u64,
    pub local_minima_count: u64,
    pub local_minima_expected: u64,
}

impl DynamicsReport {
    pub fn all_pass(&self) -> bool {
        self.persistence_violations == 0
            && self.instability_violations == 0
            && self.local_minima_count == self.local_minima_expected
    }
}

/// `(2^{n-1} - (-1)^{n-1}) / 3`
pub fn local_minima_expected(n: u32) -> u64 {
    let p = 1u64 << (n - 1);
    if (n - 1) % 2 == 0 {
        (p - 1) / 3
    } else {
        (p + 1) / 3
    }
}

/// Checks persistence after full rank, instability of deficient states
/// (in the strengthened +-1 form) and counts cyclic local minima.
pub fn dynamics_verify(profile: &RankProfile) -> DynamicsReport {
    let n = profile.n() as i32;
    let v = profile.values();
    let len = v.len();
    let at = |i: usize| v[i % len] as i32;
    let mut persistence = 0;
    let mut instability = 0;
    let mut minima = 0;
    for i in 0..len {
        let (prev, cur, next) = (at(i + len - 1), at(i), at(i + 1));
        if prev == n - 1 && cur == n && next != n {
            persistence += 1;
        }
        if cur < n && next != cur - 1 && next != cur + 1 {
            instability += 1;
        }
        if prev == cur + 1 && next == cur + 1 {
            minima += 1;
        }
    }
    DynamicsReport {
        persistence_violations: persistence,
        instability_violations: instability,
        local_minima_count: minima,
        local_minima_expected: local_minima_expected(profile.n()),
    }
}

fn rank_mod_q(mat: &[Vec<u32>], q: u32) -> usize {
    let mut m: Vec<Vec<u32>> = mat.to_vec();
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let inv = |a: u32| -> u32 {
        // Fermat inverse in F_q
        let mut acc = 1u32;
        for _ in 0..q - 2 {
            acc = acc * a % q;
        }
        acc
    };
    let mut rank = 0;
    for c in 0..cols {
        let pivot = (rank..rows).find(|&r| m[r][c] % q != 0);
        let pivot = match pivot {
            Some(p) => p,
            None => continue,
        };
        m.swap(rank, pivot);
        let f = inv(m[rank][c] % q);
        for x in m[rank].iter_mut() {
            *x = *x * f % q;
        }
        for r in 0..rows {
            if r != rank && m[r][c] % q != 0 {
                let f = m[r][c] % q;
                for j in 0..cols {
                    m[r][j] = (m[r][j] + (q - f) * m[rank][j]) % q;
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Ranks of the q-ary Gram matrices G_t G_t^T over F_q for
/// t = 1..=(q^n - 1)/(q - 1).
pub fn qary_rank_profile(ctx: &FieldCtx, lambda: FieldElem) -> Result<Vec<u32>> {
    let q = ctx.q();
    if q != 3 && q != 5 {
        return Err(Error::UnsupportedQ(q));
    }
    if ctx.n() < 2 {
        return Err(Error::ExtensionOutOfRange { q, n: ctx.n() });
    }
    if lambda == ctx.zero() {
        return Err(Error::ZeroElement);
    }
    let n = ctx.n() as usize;
    let seq = m_sequence(ctx, lambda)?;
    let t_max = (ctx.order() / (q as u64 - 1)) as usize;
    let mut gram = vec![vec![0u32; n]; n];
    let mut out = Vec::with_capacity(t_max);
    for t in 1..=t_max {
        let v: Vec<u32> = (0..n).map(|i| seq.get(i + t - 1) as u32).collect();
        for i in 0..n {
            for j in 0..n {
                gram[i][j] = (gram[i][j] + v[i] * v[j]) % q;
            }
        }
        out.push(rank_mod_q(&gram, q) as u32);
    }
    Ok(out)
}

/// Result of comparing a q-ary rank distribution against the conjectured
/// closed form. The conjecture carries no proof, so disagreement is data,
/// not an error.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QaryReport {
    pub q: u32,
    pub n: u32,
    pub counts: Vec<u64>,
    pub conjectured: Vec<u64>,
    pub agree: bool,
}

/// Conjectured q-ary rank counts for q in {3, 5}.
pub fn conjectured_qary_counts(q: u32, n: u32) -> Option<Vec<u64>> {
    let pow = |k: u32| (q as i64).pow(k);
    let sign = |k: u32| if k % 2 == 0 { 1i64 } else { -1 };
    let mut counts: Vec<i64> = Vec::with_capacity(n as usize + 1);
    match q {
        3 => {
            counts.push(1);
            for k in 1..n {
                counts.push((pow(k) - sign(k)) / 2);
            }
            counts.push((pow(n) - sign(n)) / 4 - 1);
        }
        5 => {
            counts.push(0);
            for k in 1..n {
                counts.push((pow(k) - sign(k)) / 3);
            }
            counts.push((pow(n) - sign(n)) / 6);
        }
        _ => return None,
    }
    Some(counts.into_iter().map(|c| c as u64).collect())
}

/// Tabulates the q-ary rank profile at lambda = 1 and compares it to the
/// conjectured distribution.
pub fn qary_rank_distribution(ctx: &FieldCtx) -> Result<QaryReport> {
    let profile = qary_rank_profile(ctx, ctx.one())?;
    let mut counts = vec![0u64; ctx.n() as usize + 1];
    for r in profile {
        counts[r as usize] += 1;
    }
    let conjectured =
        conjectured_qary_counts(ctx.q(), ctx.n()).ok_or(Error::UnsupportedQ(ctx.q()))?;
    let agree = counts == conjectured;
    Ok(QaryReport {
        q: ctx.q(),
        n: ctx.n(),
        counts,
        conjectured,
        agree,
    })
}
