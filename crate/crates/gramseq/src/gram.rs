//! Observability matrices, their Gram matrices over F2, the lifted symmetric
//! matrix over F_{2^n}, and rank computations on both sides.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem};
use crate::poly2::BitPoly;
use crate::seq::{m_sequence, Sequence};

/// Dense matrix over F2 with word-packed rows.
#[derive(Clone, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    width: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn new(rows: usize, cols: usize) -> BitMatrix {
        let width = cols.div_ceil(64).max(1);
        BitMatrix {
            rows,
            cols,
            width,
            data: vec![0; rows * width],
        }
    }

    pub fn identity(n: usize) -> BitMatrix {
        let mut m = BitMatrix::new(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.data[i * self.width + j / 64] >> (j % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        let w = i * self.width + j / 64;
        if v {
            self.data[w] |= 1 << (j % 64);
        } else {
            self.data[w] &= !(1 << (j % 64));
        }
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.width..(i + 1) * self.width]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Rows of '0'/'1' characters.
    pub fn render(&self) -> String {
        let mut s = String::with_capacity(self.rows * (self.cols + 1));
        for i in 0..self.rows {
            for j in 0..self.cols {
                s.push(if self.get(i, j) { '1' } else { '0' });
            }
            s.push('\n');
        }
        s
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitMatrix {}x{}\n{}", self.rows, self.cols, self.render())
    }
}

/// The n x t window matrix of the sequence: entry (i, j) = s_{i+j} with
/// 0-indexed rows and columns, indices taken cyclically.
pub fn observability(seq: &Sequence, n: usize, t: usize) -> Result<BitMatrix> {
    assert_eq!(seq.q(), 2, "binary sequences only");
    if t < 1 || t > seq.period() {
        return Err(Error::IndexOutOfRange {
            t: t as u64,
            max: seq.period() as u64,
        });
    }
    let mut g = BitMatrix::new(n, t);
    for i in 0..n {
        for j in 0..t {
            if seq.get(i + j) == 1 {
                g.set(i, j, true);
            }
        }
    }
    Ok(g)
}

/// Gram matrix G G^T over F2: entry (i, j) is the parity of the overlap of
/// rows i and j.
pub fn gram(g: &BitMatrix) -> BitMatrix {
    let n = g.rows();
    let mut out = BitMatrix::new(n, n);
    for i in 0..n {
        for j in 0..=i {
            let parity = g
                .row(i)
                .iter()
                .zip(g.row(j))
                .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
                & 1;
            if parity == 1 {
                out.set(i, j, true);
                out.set(j, i, true);
            }
        }
    }
    out
}

/// Rank over F2 by word-parallel elimination on the lowest-index pivot column.
pub fn rank_gf2(m: &BitMatrix) -> usize {
    let mut data = m.data.clone();
    let width = m.width;
    let mut rank = 0;
    for col in 0..m.cols {
        let (w, b) = (col / 64, col % 64);
        let pivot = (rank..m.rows).find(|&r| data[r * width + w] >> b & 1 == 1);
        let pivot = match pivot {
            Some(p) => p,
            None => continue,
        };
        for k in 0..width {
            data.swap(rank * width + k, pivot * width + k);
        }
        for r in 0..m.rows {
            if r != rank && data[r * width + w] >> b & 1 == 1 {
                for k in 0..width {
                    let v = data[rank * width + k];
                    data[r * width + k] ^= v;
                }
            }
        }
        rank += 1;
        if rank == m.rows {
            break;
        }
    }
    rank
}

/// Basis of the right kernel {x : M x = 0}, one vector per row.
pub fn kernel_basis(m: &BitMatrix) -> BitMatrix {
    // reduce a copy to RREF, remembering pivot columns
    let mut work = m.clone();
    let mut pivots: Vec<usize> = Vec::new();
    let mut rank = 0;
    for col in 0..work.cols {
        let pivot = (rank..work.rows).find(|&r| work.get(r, col));
        let pivot = match pivot {
            Some(p) => p,
            None => continue,
        };
        for k in 0..work.width {
            work.data.swap(rank * work.width + k, pivot * work.width + k);
        }
        for r in 0..work.rows {
            if r != rank && work.get(r, col) {
                for k in 0..work.width {
                    let v = work.data[rank * work.width + k];
                    work.data[r * work.width + k] ^= v;
                }
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == work.rows {
            break;
        }
    }
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = BitMatrix::new(free.len(), m.cols);
    for (row, &fc) in free.iter().enumerate() {
        basis.set(row, fc, true);
        for (r, &pc) in pivots.iter().enumerate() {
            if work.get(r, fc) {
                basis.set(row, pc, true);
            }
        }
    }
    basis
}

/// Dense matrix over a [`FieldCtx`].
#[derive(Clone)]
pub struct FieldMatrix<'a> {
    ctx: &'a FieldCtx,
    rows: usize,
    cols: usize,
    data: Vec<FieldElem>,
}

impl<'a> FieldMatrix<'a> {
    pub fn new(ctx: &'a FieldCtx, rows: usize, cols: usize) -> FieldMatrix<'a> {
        FieldMatrix {
            ctx,
            rows,
            cols,
            data: vec![ctx.zero(); rows * cols],
        }
    }

    pub fn ctx(&self) -> &'a FieldCtx {
        self.ctx
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> FieldElem {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FieldElem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == self.ctx.zero())
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }
}

/// Rank over F_{q^n} by elimination in the discrete-log domain.
pub fn rank_field(m: &FieldMatrix) -> usize {
    let ctx = m.ctx;
    let mut data = m.data.clone();
    let at = |d: &Vec<FieldElem>, i: usize, j: usize| d[i * m.cols + j];
    let mut rank = 0;
    for col in 0..m.cols {
        let pivot = (rank..m.rows).find(|&r| at(&data, r, col) != ctx.zero());
        let pivot = match pivot {
            Some(p) => p,
            None => continue,
        };
        for j in 0..m.cols {
            data.swap(rank * m.cols + j, pivot * m.cols + j);
        }
        let inv = ctx.inv(at(&data, rank, col));
        for j in col..m.cols {
            let v = ctx.mul(at(&data, rank, j), inv);
            data[rank * m.cols + j] = v;
        }
        for r in 0..m.rows {
            if r != rank {
                let f = at(&data, r, col);
                if f != ctx.zero() {
                    for j in col..m.cols {
                        let v = ctx.sub(at(&data, r, j), ctx.mul(f, at(&data, rank, j)));
                        data[r * m.cols + j] = v;
                    }
                }
            }
        }
        rank += 1;
        if rank == m.rows {
            break;
        }
    }
    rank
}

/// The lifted symmetric matrix with entries
/// `(1 + x^(2^i + 2^j)) / (1 + alpha^(2^i + 2^j))` at `x = alpha^t`,
/// exponents reduced mod 2^n - 1.
pub fn m_matrix(ctx: &FieldCtx, t: u64) -> Result<FieldMatrix<'_>> {
    assert_eq!(ctx.q(), 2, "the lifted matrix lives over F_{{2^n}}");
    let n = ctx.n();
    if n < 3 {
        return Err(Error::OrderTooSmall(n));
    }
    if t < 1 || t > ctx.order() {
        return Err(Error::IndexOutOfRange {
            t,
            max: ctx.order(),
        });
    }
    let mut m = FieldMatrix::new(ctx, n as usize, n as usize);
    for i in 0..n as usize {
        for j in 0..=i {
            let e = (1u64 << i) + (1u64 << j);
            let e_mod = e % ctx.order();
            // a sum of two powers of two can never be 0 mod 2^n - 1 for n >= 3
            assert!(e_mod != 0, "degenerate denominator exponent");
            let den = ctx.add(ctx.one(), ctx.antilog(e_mod));
            assert!(den != ctx.zero(), "singular denominator at ({i}, {j})");
            let num = ctx.add(ctx.one(), ctx.antilog(t * e));
            let v = ctx.div(num, den);
            m.set(i, j, v);
            m.set(j, i, v);
        }
    }
    Ok(m)
}

/// The full cyclic rank profile r_n(t) = rank(G_t G_t^T) for t = 1..2^n - 1,
/// tagged with the modulus and lambda that produced it.
#[derive(Clone, Debug)]
pub struct RankProfile {
    n: u32,
    values: Vec<u8>,
    modulus: BitPoly,
    lambda: FieldElem,
}

impl RankProfile {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn values(&self) -> &[u8] {
        &self.values
    }

    /// Rank at 1-indexed t.
    pub fn get(&self, t: u64) -> u8 {
        self.values[(t - 1) as usize]
    }

    pub fn modulus(&self) -> &BitPoly {
        &self.modulus
    }

    pub fn lambda(&self) -> FieldElem {
        self.lambda
    }

    /// All t whose Gram matrix is singular.
    pub fn singular_ts(&self) -> Vec<u64> {
        (1..=self.values.len() as u64)
            .filter(|&t| self.get(t) < self.n as u8)
            .collect()
    }
}

fn rank_words(scratch: &mut [u64], cols: usize) -> usize {
    let rows = scratch.len();
    let mut rank = 0;
    for col in 0..cols {
        let pivot = (rank..rows).find(|&r| scratch[r] >> col & 1 == 1);
        let pivot = match pivot {
            Some(p) => p,
            None => continue,
        };
        scratch.swap(rank, pivot);
        for r in 0..rows {
            if r != rank && scratch[r] >> col & 1 == 1 {
                scratch[r] ^= scratch[rank];
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Profile computed by stepping t and applying the symmetric rank-one
/// update to the Gram matrix; the rank itself is recomputed each step.
pub fn rank_profile(ctx: &FieldCtx, lambda: FieldElem) -> Result<RankProfile> {
    assert_eq!(ctx.q(), 2);
    let n = ctx.n() as usize;
    if n < 3 {
        return Err(Error::OrderTooSmall(ctx.n()));
    }
    if lambda == ctx.zero() {
        return Err(Error::ZeroElement);
    }
    let seq = m_sequence(ctx, lambda)?;
    let period = seq.period();
    let mut gram_rows = vec![0u64; n];
    let mut scratch = vec![0u64; n];
    let mut values = Vec::with_capacity(period);
    for t in 1..=period {
        // append column t-1 of G: entries s_{i + t - 1}; Gram += v v^T
        let mut v = 0u64;
        for i in 0..n {
            v |= (seq.get(i + t - 1) as u64) << i;
        }
        for i in 0..n {
            if v >> i & 1 == 1 {
                gram_rows[i] ^= v;
            }
        }
        scratch.copy_from_slice(&gram_rows);
        values.push(rank_words(&mut scratch, n) as u8);
    }
    Ok(RankProfile {
        n: ctx.n(),
        values,
        modulus: ctx.modulus_poly(),
        lambda,
    })
}

/// Profile with every Gram matrix rebuilt from scratch; agreement with
/// [`rank_profile`] is part of the test surface.
pub fn rank_profile_recomputed(ctx: &FieldCtx, lambda: FieldElem) -> Result<RankProfile> {
    assert_eq!(ctx.q(), 2);
    let n = ctx.n() as usize;
    if n < 3 {
        return Err(Error::OrderTooSmall(ctx.n()));
    }
    if lambda == ctx.zero() {
        return Err(Error::ZeroElement);
    }
    let seq = m_sequence(ctx, lambda)?;
    let mut values = Vec::with_capacity(seq.period());
    for t in 1..=seq.period() {
        values.push(rank_gf2(&gram(&observability(&seq, n, t)?)) as u8);
    }
    Ok(RankProfile {
        n: ctx.n(),
        values,
        modulus: ctx.modulus_poly(),
        lambda,
    })
}

/// Verifies the factorization G_t = V Lambda G~_t entrywise over F_{2^n}.
pub fn vandermonde_factor_check(ctx: &FieldCtx, lambda: FieldElem, t: u64) -> Result<bool> {
    assert_eq!(ctx.q(), 2);
    let n = ctx.n() as usize;
    if lambda == ctx.zero() {
        return Err(Error::ZeroElement);
    }
    if t < 1 || t > ctx.order() {
        return Err(Error::IndexOutOfRange {
            t,
            max: ctx.order(),
        });
    }
    let seq = m_sequence(ctx, lambda)?;
    let conj: Vec<FieldElem> = (0..n).map(|l| ctx.frobenius(ctx.alpha(), l as i64)).collect();
    let lam: Vec<FieldElem> = (0..n).map(|l| ctx.frobenius(lambda, l as i64)).collect();
    // row l of G~_t is the geometric progression of conj[l]
    let mut pows: Vec<FieldElem> = vec![ctx.one(); n];
    let mut product = vec![ctx.zero(); n * t as usize];
    for j in 0..t as usize {
        for i in 0..n {
            let mut acc = ctx.zero();
            for l in 0..n {
                let v = ctx.mul(ctx.pow(conj[l], i as u64), ctx.mul(lam[l], pows[l]));
                acc = ctx.add(acc, v);
            }
            product[i * t as usize + j] = acc;
        }
        for l in 0..n {
            pows[l] = ctx.mul(pows[l], conj[l]);
        }
    }
    for i in 0..n {
        for j in 0..t as usize {
            let expected = ctx.from_base(seq.get(i + j));
            if product[i * t as usize + j] != expected {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Searches for `c_1` whose Frobenius-orbit vector `(c_1, c_1^2, ..., c_1^{2^{n-1}})`
/// lies in the kernel of a singular lifted matrix; `None` if the matrix is
/// nonsingular or no orbit vector works.
pub fn frobenius_kernel(m: &FieldMatrix) -> Option<FieldElem> {
    let ctx = m.ctx();
    let n = m.rows();
    if rank_field(m) == n {
        return None;
    }
    'candidates: for e in 0..ctx.order() {
        let c1 = ctx.antilog(e);
        let orbit: Vec<FieldElem> = (0..n).map(|i| ctx.frobenius(c1, i as i64)).collect();
        for i in 0..n {
            let mut acc = ctx.zero();
            for (j, &cj) in orbit.iter().enumerate() {
                acc = ctx.add(acc, ctx.mul(m.get(i, j), cj));
            }
            if acc != ctx.zero() {
                continue 'candidates;
            }
        }
        return Some(c1);
    }
    None
}
