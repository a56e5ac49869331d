//! LFSR sequences, m-sequences via the trace form, and the classical
//! randomness property checkers.

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem};
use crate::poly2::BitPoly;

/// An n-stage LFSR: characteristic polynomial (constant term 1) plus the
/// initial register contents `s_0..s_{r-1}`.
#[derive(Clone, Debug)]
pub struct LfsrSpec {
    char_poly: BitPoly,
    init: Vec<u8>,
}

impl LfsrSpec {
    pub fn new(char_poly: BitPoly, init: Vec<u8>) -> Result<LfsrSpec> {
        let r = char_poly.degree().ok_or(Error::ZeroPolynomial)?;
        if !char_poly.constant_term() {
            return Err(Error::ZeroConstantTerm);
        }
        if init.len() != r {
            return Err(Error::StateLength {
                required: r,
                found: init.len(),
            });
        }
        let init = init.iter().map(|&b| b & 1).collect();
        Ok(LfsrSpec { char_poly, init })
    }

    pub fn char_poly(&self) -> &BitPoly {
        &self.char_poly
    }

    pub fn order(&self) -> usize {
        self.char_poly.degree().expect("validated nonzero")
    }
}

/// One cyclic period (or a requested window) of a base-field symbol sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sequence {
    symbols: Vec<u8>,
    q: u32,
}

impl Sequence {
    pub fn new(symbols: Vec<u8>, q: u32) -> Sequence {
        Sequence { symbols, q }
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    pub fn period(&self) -> usize {
        self.symbols.len()
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Symbol at cyclic index `t`.
    pub fn get(&self, t: usize) -> u8 {
        self.symbols[t % self.symbols.len()]
    }
}

/// Runs the register recurrence `s_{t+r} = c_{r-1} s_{t+r-1} + ... + c_0 s_t`.
pub fn lfsr_generate(spec: &LfsrSpec, len: usize) -> Sequence {
    let r = spec.order();
    assert!(len >= r, "requested length shorter than the register");
    let mut s = spec.init.clone();
    s.reserve(len - r);
    for t in 0..len - r {
        let mut next = 0u8;
        for k in 0..r {
            if spec.char_poly.coeff(k) {
                next ^= s[t + k];
            }
        }
        s.push(next);
    }
    Sequence::new(s, 2)
}

/// One full period of `s_t = Tr(lambda * alpha^t)`, length q^n - 1.
pub fn m_sequence(ctx: &FieldCtx, lambda: FieldElem) -> Result<Sequence> {
    if lambda == ctx.zero() {
        return Err(Error::ZeroElement);
    }
    let n = ctx.order() as usize;
    let mut symbols = Vec::with_capacity(n);
    let mut x = lambda;
    for _ in 0..n {
        symbols.push(ctx.trace(x));
        x = ctx.mul(x, ctx.alpha());
    }
    Ok(Sequence::new(symbols, ctx.q()))
}

/// Periodic autocorrelation `sum_t (-1)^(s_{t+tau} - s_t)` of a binary period.
pub fn autocorrelation(seq: &Sequence, tau: i64) -> i64 {
    assert_eq!(seq.q(), 2, "autocorrelation is defined on binary sequences");
    let n = seq.period();
    let tau = tau.rem_euclid(n as i64) as usize;
    let disagreements = (0..n)
        .filter(|&t| seq.get(t + tau) != seq.get(t))
        .count() as i64;
    n as i64 - 2 * disagreements
}

/// Outcome of the six classical m-sequence property checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GolombReport {
    pub span: bool,
    pub balance: bool,
    pub runs: bool,
    pub autocorr: bool,
    pub shift_add: bool,
    pub decimation_sample: bool,
}

impl GolombReport {
    pub fn all_hold(&self) -> bool {
        self.span
            && self.balance
            && self.runs
            && self.autocorr
            && self.shift_add
            && self.decimation_sample
    }
}

/// Checks all six properties on one full binary period. `shift_add` and
/// `decimation_sample` are exhaustive for periods up to 255 and sampled above.
pub fn golomb_report(seq: &Sequence) -> GolombReport {
    assert_eq!(seq.q(), 2, "property checks are defined on binary sequences");
    GolombReport {
        span: span_property(seq),
        balance: balance_property(seq),
        runs: run_property(seq),
        autocorr: autocorrelation_property(seq),
        shift_add: shift_add_property(seq),
        decimation_sample: decimation_property(seq),
    }
}

fn span_order(period: usize) -> Option<u32> {
    let n = (period + 1).trailing_zeros();
    (period + 1 == 1usize << n).then_some(n)
}

fn span_property(seq: &Sequence) -> bool {
    let period = seq.period();
    let n = match span_order(period) {
        Some(n) => n,
        None => return false,
    };
    let mut seen = vec![false; 1 << n];
    for start in 0..period {
        let mut window = 0usize;
        for i in 0..n as usize {
            window |= (seq.get(start + i) as usize) << i;
        }
        if window == 0 || seen[window] {
            return false;
        }
        seen[window] = true;
    }
    true
}

fn balance_property(seq: &Sequence) -> bool {
    let ones = seq.symbols().iter().filter(|&&b| b == 1).count();
    let zeros = seq.period() - ones;
    zeros >= 1 && ones == zeros + 1
}

fn cyclic_runs(seq: &Sequence) -> Vec<usize> {
    let n = seq.period();
    let start = match (0..n).find(|&i| seq.get(i + n - 1) != seq.get(i)) {
        Some(i) => i,
        None => return vec![n],
    };
    let mut runs = Vec::new();
    let mut len = 0;
    for i in 0..n {
        len += 1;
        if seq.get(start + i) != seq.get(start + i + 1) {
            runs.push(len);
            len = 0;
        }
    }
    runs
}

fn run_property(seq: &Sequence) -> bool {
    let runs = cyclic_runs(seq);
    let total = runs.len();
    let mut counts = vec![0usize; seq.period() + 2];
    for r in &runs {
        counts[*r] += 1;
    }
    for k in 1..usize::BITS as usize {
        if k >= counts.len() || total % (1 << k) != 0 || total >> k == 0 {
            break;
        }
        if counts[k] != total >> k {
            return false;
        }
    }
    true
}

fn autocorrelation_property(seq: &Sequence) -> bool {
    (1..seq.period() as i64).all(|tau| autocorrelation(seq, tau) == -1)
}

fn is_cyclic_shift(candidate: &[u8], base: &Sequence) -> bool {
    let n = base.period();
    if candidate.len() != n {
        return false;
    }
    let probe = n.min(24);
    'offsets: for off in 0..n {
        for i in 0..probe {
            if base.get(off + i) != candidate[i] {
                continue 'offsets;
            }
        }
        if (probe..n).all(|i| base.get(off + i) == candidate[i]) {
            return true;
        }
    }
    false
}

fn sample_shifts(n: usize) -> Vec<usize> {
    if n <= 255 {
        return (1..n).collect();
    }
    let mut taus: Vec<usize> = [1, 2, 3, n / 4, n / 3, n / 2, 2 * n / 3, n - 1]
        .into_iter()
        .filter(|&t| t >= 1 && t < n)
        .collect();
    taus.sort_unstable();
    taus.dedup();
    taus
}

fn shift_add_property(seq: &Sequence) -> bool {
    let n = seq.period();
    if n == 1 {
        return true;
    }
    sample_shifts(n).into_iter().all(|tau| {
        let sum: Vec<u8> = (0..n).map(|t| seq.get(t + tau) ^ seq.get(t)).collect();
        is_cyclic_shift(&sum, seq)
    })
}

fn decimation_property(seq: &Sequence) -> bool {
    let n = seq.period() as u64;
    let coprime = |d: u64| {
        let (mut a, mut b) = (d, n);
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a == 1
    };
    let ds: Vec<u64> = if n <= 255 {
        (1..n).filter(|&d| coprime(d)).collect()
    } else {
        (2..n).filter(|&d| coprime(d)).take(8).collect()
    };
    ds.into_iter().all(|d| {
        let decimated: Vec<u8> = (0..n).map(|t| seq.get((d * t % n) as usize)).collect();
        span_property(&Sequence::new(decimated, 2))
    })
}

/// Minimal polynomial `(z^N + 1) / gcd(z^N + 1, S(z))` of one binary period,
/// where `S(z) = s_0 + s_1 z + ... + s_{N-1} z^{N-1}`, together with the
/// linear complexity `N - deg gcd`. The all-zero period returns `(1, 0)`.
pub fn minimal_polynomial(seq: &Sequence) -> (BitPoly, usize) {
    assert_eq!(seq.q(), 2);
    let n = seq.period();
    let mut s = BitPoly::zero();
    for (t, &b) in seq.symbols().iter().enumerate() {
        if b == 1 {
            s.set_coeff(t, true);
        }
    }
    if s.is_zero() {
        return (BitPoly::one(), 0);
    }
    let mut xn1 = BitPoly::monomial(n);
    xn1 += &BitPoly::one();
    let g = BitPoly::gcd(&xn1, &s).expect("x^N + 1 is nonzero");
    let (minpoly, r) = xn1.divmod(&g).expect("gcd is nonzero");
    debug_assert!(r.is_zero());
    (minpoly, n - g.degree().unwrap_or(0))
}

/// Generating-function representation of the LFSR output: the pair
/// `(h, g~)` with `sum_t s_t z^t = h(z)/g~(z)`, where `g~` is the standard
/// reciprocal of the characteristic polynomial and
/// `h_i = sum_{j<=i} c_{r-i+j} s_j`.
pub fn generating_function(spec: &LfsrSpec) -> (BitPoly, BitPoly) {
    let r = spec.order();
    let c = |k: usize| spec.char_poly.coeff(k) as u8;
    let mut h = BitPoly::zero();
    for i in 0..r {
        let mut bit = 0u8;
        for j in 0..=i {
            bit ^= c(r - i + j) & spec.init[j];
        }
        if bit == 1 {
            h.set_coeff(i, true);
        }
    }
    let g_tilde = spec.char_poly.reciprocal_std().expect("validated nonzero");
    (h, g_tilde)
}
