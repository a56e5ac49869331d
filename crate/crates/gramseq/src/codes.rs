//! Punctured cyclic simplex codes, hull dimensions, and the LCD/hull
//! distribution over the whole code family.

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem};
use crate::gram::{gram, kernel_basis, observability, rank_gf2, rank_profile, BitMatrix};
use crate::poly2::BitPoly;
use crate::seq::m_sequence;

/// A `[t, n]` binary code cut from the cyclic simplex code by keeping the
/// first t coordinates of each codeword.
#[derive(Clone, Debug)]
pub struct Code {
    generator: BitMatrix,
    dim: u32,
    length: u64,
    modulus: BitPoly,
    lambda: FieldElem,
}

impl Code {
    pub fn generator(&self) -> &BitMatrix {
        &self.generator
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn length(&self) -> u64 {
        self.length
    }

    pub fn modulus(&self) -> &BitPoly {
        &self.modulus
    }

    pub fn lambda(&self) -> FieldElem {
        self.lambda
    }

    /// `dim C - rank(G G^T)`.
    pub fn hull_dim(&self) -> usize {
        self.dim as usize - rank_gf2(&gram(&self.generator))
    }

    /// True when the hull is trivial.
    pub fn is_lcd(&self) -> bool {
        self.hull_dim() == 0
    }

    /// Hull dimension by the definition: dim of the intersection of the row
    /// space with its dual, via dim(C) + dim(C-perp) - dim(C + C-perp).
    pub fn hull_dim_by_intersection(&self) -> usize {
        let t = self.length as usize;
        let dual = kernel_basis(&self.generator);
        let mut stacked = BitMatrix::new(self.dim as usize + dual.rows(), t);
        for i in 0..self.dim as usize {
            for j in 0..t {
                stacked.set(i, j, self.generator.get(i, j));
            }
        }
        for i in 0..dual.rows() {
            for j in 0..t {
                stacked.set(self.dim as usize + i, j, dual.get(i, j));
            }
        }
        let dim_sum = rank_gf2(&stacked);
        self.dim as usize + dual.rows() - dim_sum
    }

    /// Minimum nonzero codeword weight by full enumeration (diagnostic;
    /// dimension capped at 16).
    pub fn min_distance(&self) -> u64 {
        assert!(self.dim <= 16, "enumeration is capped at 2^16 codewords");
        let n = self.dim as usize;
        let t = self.length as usize;
        let mut best = u64::MAX;
        for x in 1u32..1 << n {
            let mut weight = 0u64;
            for j in 0..t {
                let mut bit = false;
                for i in 0..n {
                    bit ^= (x >> i & 1 == 1) & self.generator.get(i, j);
                }
                weight += bit as u64;
            }
            best = best.min(weight);
        }
        best
    }
}

/// The `[t, n]` punctured simplex code, requiring n <= t <= 2^n - 1 so the
/// generator keeps full row rank.
pub fn punctured_simplex(ctx: &FieldCtx, lambda: FieldElem, t: u64) -> Result<Code> {
    assert_eq!(ctx.q(), 2);
    let n = ctx.n();
    if lambda == ctx.zero() {
        return Err(Error::ZeroElement);
    }
    if t < n as u64 {
        return Err(Error::LengthBelowDimension { t, n });
    }
    if t > ctx.order() {
        return Err(Error::IndexOutOfRange {
            t,
            max: ctx.order(),
        });
    }
    let seq = m_sequence(ctx, lambda)?;
    let generator = observability(&seq, n as usize, t as usize)?;
    debug_assert_eq!(rank_gf2(&generator), n as usize);
    Ok(Code {
        generator,
        dim: n,
        length: t,
        modulus: ctx.modulus_poly(),
        lambda,
    })
}

/// Closed-form hull counts over t = n..2^n - 1, indexed by hull dimension:
/// `2^{n-1} - 2` LCD members, `2^{n-h-1} - 1` at 1 <= h <= n-2, and one
/// member each at h = n-1 and h = n.
pub fn expected_hull_counts(n: u32) -> Vec<u64> {
    let mut counts = vec![(1u64 << (n - 1)) - 2];
    for h in 1..=n - 2 {
        counts.push((1u64 << (n - h - 1)) - 1);
    }
    counts.push(1);
    counts.push(1);
    counts
}

/// Hull-dimension counts over the family t = n..2^n - 1, computed from the
/// rank profile (hull dim = n - rank there).
pub fn hull_distribution(ctx: &FieldCtx, lambda: FieldElem) -> Result<Vec<u64>> {
    let n = ctx.n();
    if n < 3 {
        return Err(Error::OrderTooSmall(n));
    }
    let profile = rank_profile(ctx, lambda)?;
    let mut counts = vec![0u64; n as usize + 1];
    for t in n as u64..=ctx.order() {
        counts[n as usize - profile.get(t) as usize] += 1;
    }
    Ok(counts)
}

/// All t in n..2^n - 1 whose code is self-orthogonal (hull = whole code).
pub fn self_orthogonal_members(ctx: &FieldCtx) -> Result<Vec<u64>> {
    let n = ctx.n();
    if n < 3 {
        return Err(Error::OrderTooSmall(n));
    }
    let profile = rank_profile(ctx, ctx.one())?;
    Ok((n as u64..=ctx.order())
        .filter(|&t| profile.get(t) == 0)
        .collect())
}
