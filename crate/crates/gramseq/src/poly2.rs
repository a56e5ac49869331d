//! Polynomials over F2, bit-packed one coefficient per bit.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul};
use std::str::FromStr;

use crate::error::{Error, Result};

/// A polynomial over F2. Bit `i` of the limb array is the coefficient of `z^i`;
/// the representation is canonical (no trailing zero limbs), so the zero
/// polynomial is the empty limb vector and is distinct from the constant 1.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct BitPoly {
    limbs: Vec<u64>,
}

impl BitPoly {
    pub fn zero() -> Self {
        BitPoly { limbs: Vec::new() }
    }

    pub fn one() -> Self {
        BitPoly { limbs: vec![1] }
    }

    /// `z^d`
    pub fn monomial(d: usize) -> Self {
        let mut p = BitPoly::zero();
        p.set_coeff(d, true);
        p
    }

    /// Builds a polynomial from the low 64 coefficients given as a bitmask.
    pub fn from_mask(mask: u64) -> Self {
        let mut p = BitPoly { limbs: vec![mask] };
        p.normalize();
        p
    }

    pub fn is_zero(&self) -> bool {
        self.limbs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.limbs == [1]
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        let last = *self.limbs.last()?;
        Some((self.limbs.len() - 1) * 64 + (63 - last.leading_zeros() as usize))
    }

    pub fn coeff(&self, i: usize) -> bool {
        self.limbs
            .get(i / 64)
            .map_or(false, |w| w >> (i % 64) & 1 == 1)
    }

    pub fn set_coeff(&mut self, i: usize, v: bool) {
        let w = i / 64;
        if w >= self.limbs.len() {
            if !v {
                return;
            }
            self.limbs.resize(w + 1, 0);
        }
        if v {
            self.limbs[w] |= 1 << (i % 64);
        } else {
            self.limbs[w] &= !(1 << (i % 64));
        }
        self.normalize();
    }

    pub fn constant_term(&self) -> bool {
        self.coeff(0)
    }

    fn normalize(&mut self) {
        while self.limbs.last() == Some(&0) {
            self.limbs.pop();
        }
    }

    /// Multiplication by `z^k`.
    pub fn shl(&self, k: usize) -> Self {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let (off, s) = (k / 64, (k % 64) as u32);
        let mut limbs = vec![0u64; self.limbs.len() + off + 1];
        for (j, &w) in self.limbs.iter().enumerate() {
            limbs[j + off] |= w << s;
            if s > 0 {
                limbs[j + off + 1] |= w >> (64 - s);
            }
        }
        let mut p = BitPoly { limbs };
        p.normalize();
        p
    }

    /// Quotient and remainder of division by `d`; `a = q*d + r` with `deg r < deg d`.
    pub fn divmod(&self, d: &BitPoly) -> Result<(BitPoly, BitPoly)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let mut r = self.clone();
        let mut q = BitPoly::zero();
        while let Some(dr) = r.degree() {
            if dr < dd {
                break;
            }
            let sh = dr - dd;
            r += &d.shl(sh);
            q.set_coeff(sh, true);
        }
        Ok((q, r))
    }

    pub fn rem(&self, d: &BitPoly) -> Result<BitPoly> {
        Ok(self.divmod(d)?.1)
    }

    pub fn divides(&self, other: &BitPoly) -> bool {
        other.rem(self).map_or(false, |r| r.is_zero())
    }

    /// Monic gcd; errors only on gcd(0, 0).
    pub fn gcd(a: &BitPoly, b: &BitPoly) -> Result<BitPoly> {
        if a.is_zero() && b.is_zero() {
            return Err(Error::GcdOfZeros);
        }
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("divisor is nonzero");
            a = b;
            b = r;
        }
        Ok(a)
    }

    /// Standard reciprocal `z^{deg f} f(1/z)`: coefficient reversal over `[0, deg f]`.
    pub fn reciprocal_std(&self) -> Result<BitPoly> {
        let d = self.degree().ok_or(Error::ZeroPolynomial)?;
        let mut r = BitPoly::zero();
        for i in 0..=d {
            if self.coeff(i) {
                r.set_coeff(d - i, true);
            }
        }
        Ok(r)
    }

    /// Reciprocal with respect to the fixed window of degree `n-1`:
    /// `f*(z) = z^{n-1} f(1/z)`, requiring `deg f <= n-1`.
    pub fn reciprocal_star(&self, n: usize) -> Result<BitPoly> {
        if let Some(d) = self.degree() {
            if d >= n {
                return Err(Error::DegreeBound { bound: n - 1, found: d });
            }
        }
        let mut r = BitPoly::zero();
        for i in 0..n {
            if self.coeff(i) {
                r.set_coeff(n - 1 - i, true);
            }
        }
        Ok(r)
    }

    pub fn is_self_reciprocal(&self) -> bool {
        self.reciprocal_std().map_or(false, |r| r == *self)
    }

    /// Formal derivative; over F2 only odd-degree terms survive.
    pub fn derivative(&self) -> BitPoly {
        let mut r = BitPoly::zero();
        if let Some(d) = self.degree() {
            for i in (1..=d).step_by(2) {
                if self.coeff(i) {
                    r.set_coeff(i - 1, true);
                }
            }
        }
        r
    }

    /// `base^e mod m` by square-and-multiply.
    pub fn pow_mod(base: &BitPoly, e: u64, m: &BitPoly) -> Result<BitPoly> {
        let mut acc = BitPoly::one().rem(m)?;
        for bit in (0..64 - e.leading_zeros().min(63)).rev() {
            acc = (&acc * &acc).rem(m)?;
            if e >> bit & 1 == 1 {
                acc = (&acc * base).rem(m)?;
            }
        }
        Ok(acc)
    }

    /// True for irreducible polynomials of degree >= 1, by trial division.
    pub fn is_irreducible(&self) -> bool {
        let d = match self.degree() {
            Some(d) if d >= 1 => d,
            _ => return false,
        };
        irreducibles_up_to(d / 2)
            .iter()
            .all(|p| !p.divides(self))
    }

    /// Factors a nonconstant polynomial into irreducibles with multiplicities,
    /// sorted ascending. The product reconstructs the input.
    pub fn irreducible_factorization(&self) -> Result<Vec<(BitPoly, u32)>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if self.degree() == Some(0) {
            return Err(Error::ConstantPolynomial);
        }
        let mut factors: Vec<(BitPoly, u32)> = Vec::new();
        let mut rest = self.clone();
        let z = BitPoly::monomial(1);
        let mut zm = 0u32;
        while !rest.constant_term() {
            rest = rest.divmod(&z).expect("z is nonzero").0;
            zm += 1;
        }
        if zm > 0 {
            factors.push((z, zm));
        }
        'outer: while rest.degree().unwrap_or(0) >= 1 {
            let d = rest.degree().unwrap();
            for p in irreducibles_up_to(d / 2) {
                if p.divides(&rest) {
                    let mut m = 0;
                    while p.divides(&rest) {
                        rest = rest.divmod(&p).unwrap().0;
                        m += 1;
                    }
                    factors.push((p, m));
                    continue 'outer;
                }
            }
            // what remains is irreducible
            factors.push((rest, 1));
            break;
        }
        factors.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(factors)
    }

    /// Unique factorization `f = z^r * v * u` with `v(0) = u(0) = 1`, `v`
    /// self-reciprocal and `gcd(u, reciprocal(u)) = 1`. Every self-reciprocal
    /// divisor of `f` with nonzero constant term divides `v`.
    pub fn selfrec_factorize(&self) -> Result<(usize, BitPoly, BitPoly)> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut rest = self.clone();
        let z = BitPoly::monomial(1);
        let mut r = 0;
        while !rest.constant_term() {
            rest = rest.divmod(&z).expect("z is nonzero").0;
            r += 1;
        }
        let mut v = BitPoly::one();
        let mut u = BitPoly::one();
        if rest.degree() == Some(0) {
            return Ok((r, v, u));
        }
        let factors = rest.irreducible_factorization()?;
        let mult = |p: &BitPoly| factors.iter().find(|(f, _)| f == p).map_or(0, |(_, m)| *m);
        for (p, m) in &factors {
            let pr = p.reciprocal_std().expect("factor is nonzero");
            match pr.cmp(p) {
                Ordering::Equal => {
                    for _ in 0..*m {
                        v = &v * p;
                    }
                }
                Ordering::Greater => {
                    // handle each reciprocal pair once, from its smaller member
                    let c = mult(&pr);
                    let shared = (*m).min(c);
                    for _ in 0..shared {
                        v = &(&v * p) * &pr;
                    }
                    for _ in 0..*m - shared {
                        u = &u * p;
                    }
                    for _ in 0..c - shared {
                        u = &u * &pr;
                    }
                }
                Ordering::Less => {
                    // pair already handled from pr, unless pr is not a factor
                    if mult(&pr) == 0 {
                        for _ in 0..*m {
                            u = &u * p;
                        }
                    }
                }
            }
        }
        debug_assert_eq!(&(&v * &u).shl(r), self);
        Ok((r, v, u))
    }

    /// Least `N >= 1` with `g | z^N + 1`, requiring `g(0) = 1`.
    pub fn poly_order(&self) -> Result<u64> {
        if !self.constant_term() {
            return Err(Error::ZeroConstantTerm);
        }
        if self.degree() == Some(0) {
            return Ok(1);
        }
        let mut order = 1u64;
        for (p, m) in self.irreducible_factorization()? {
            let d = p.degree().unwrap() as u32;
            let mut e = (1u64 << d) - 1;
            debug_assert!(BitPoly::pow_mod(&BitPoly::monomial(1), e, &p)
                .unwrap()
                .is_one());
            for (q, _) in prime_factorization(e) {
                while e % q == 0
                    && BitPoly::pow_mod(&BitPoly::monomial(1), e / q, &p)
                        .unwrap()
                        .is_one()
                {
                    e /= q;
                }
            }
            // ord(p^m) = ord(p) * 2^ceil(log2 m)
            let e = e * (m as u64).next_power_of_two();
            order = lcm(order, e);
        }
        Ok(order)
    }

    /// True iff `f` is irreducible of degree `n` with multiplicative order `2^n - 1`.
    pub fn is_primitive(&self, n: usize) -> Result<bool> {
        if self.degree() != Some(n) {
            return Err(Error::DegreeMismatch {
                required: n,
                found: match self.degree() {
                    Some(d) => d.to_string(),
                    None => "-inf".into(),
                },
            });
        }
        if !self.constant_term() && n > 0 {
            return Ok(false);
        }
        Ok(self.is_irreducible() && self.poly_order()? == (1u64 << n) - 1)
    }

    /// Bitmask form `0x..` with bit `i` the coefficient of `z^i`.
    pub fn to_hex(&self) -> String {
        match self.limbs.len() {
            0 => "0x0".into(),
            _ => {
                let mut s = format!("{:#x}", self.limbs.last().unwrap());
                for w in self.limbs.iter().rev().skip(1) {
                    s.push_str(&format!("{w:016x}"));
                }
                s
            }
        }
    }
}

/// Numeric order: by degree, then by coefficients from the top down.
impl Ord for BitPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.limbs
            .len()
            .cmp(&other.limbs.len())
            .then_with(|| self.limbs.iter().rev().cmp(other.limbs.iter().rev()))
    }
}

impl PartialOrd for BitPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &BitPoly {
    type Output = BitPoly;
    fn add(self, rhs: &BitPoly) -> BitPoly {
        let (longer, shorter) = if self.limbs.len() >= rhs.limbs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut limbs = longer.limbs.clone();
        for (i, w) in shorter.limbs.iter().enumerate() {
            limbs[i] ^= w;
        }
        let mut p = BitPoly { limbs };
        p.normalize();
        p
    }
}

impl AddAssign<&BitPoly> for BitPoly {
    fn add_assign(&mut self, rhs: &BitPoly) {
        *self = &*self + rhs;
    }
}

impl Mul for &BitPoly {
    type Output = BitPoly;
    fn mul(self, rhs: &BitPoly) -> BitPoly {
        if self.is_zero() || rhs.is_zero() {
            return BitPoly::zero();
        }
        let mut limbs = vec![0u64; self.limbs.len() + rhs.limbs.len()];
        for (i, &a) in self.limbs.iter().enumerate() {
            let mut a = a;
            while a != 0 {
                let bit = a.trailing_zeros() as usize;
                a &= a - 1;
                let p = i * 64 + bit;
                let (off, s) = (p / 64, (p % 64) as u32);
                for (j, &b) in rhs.limbs.iter().enumerate() {
                    limbs[j + off] ^= b << s;
                    if s > 0 {
                        limbs[j + off + 1] ^= b >> (64 - s);
                    }
                }
            }
        }
        let mut p = BitPoly { limbs };
        p.normalize();
        p
    }
}

impl fmt::Display for BitPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = match self.degree() {
            None => return write!(f, "0"),
            Some(d) => d,
        };
        let mut first = true;
        for i in (0..=d).rev() {
            if !self.coeff(i) {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match i {
                0 => write!(f, "1")?,
                1 => write!(f, "z")?,
                _ => write!(f, "z^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for BitPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitPoly({self})")
    }
}

impl FromStr for BitPoly {
    type Err = Error;

    /// Accepts a hex bitmask ("0x25") or a human-readable sum of terms
    /// ("z^5+z^2+1", with `x` allowed in place of `z`).
    fn from_str(s: &str) -> Result<BitPoly> {
        let err = || Error::Parse {
            what: "polynomial",
            input: s.into(),
        };
        let t = s.trim();
        if let Some(hex) = t.strip_prefix("0x").or_else(|| t.strip_prefix("0X")) {
            let mut p = BitPoly::zero();
            let mut pos = 0;
            for c in hex.chars().rev() {
                let v = c.to_digit(16).ok_or_else(err)?;
                for b in 0..4 {
                    if v >> b & 1 == 1 {
                        p.set_coeff(pos + b as usize, true);
                    }
                }
                pos += 4;
            }
            return Ok(p);
        }
        let mut p = BitPoly::zero();
        for term in t.split('+') {
            let term = term.trim();
            let i = match term {
                "1" => 0,
                "z" | "x" => 1,
                _ => term
                    .strip_prefix("z^")
                    .or_else(|| term.strip_prefix("x^"))
                    .and_then(|e| e.parse::<usize>().ok())
                    .ok_or_else(err)?,
            };
            if p.coeff(i) {
                return Err(err());
            }
            p.set_coeff(i, true);
        }
        Ok(p)
    }
}

/// All irreducible polynomials of degree 1..=max_deg, ascending.
pub fn irreducibles_up_to(max_deg: usize) -> Vec<BitPoly> {
    let mut out: Vec<BitPoly> = Vec::new();
    for mask in 2u64..(1u64 << (max_deg as u32 + 1)).max(2) {
        let p = BitPoly::from_mask(mask);
        let d = p.degree().unwrap();
        if out
            .iter()
            .take_while(|q| q.degree().unwrap() <= d / 2)
            .all(|q| !q.divides(&p))
        {
            out.push(p);
        }
    }
    out
}

/// How polynomials coprime to their reciprocal are counted.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CountMode {
    ClosedForm,
    Enumerate,
}

/// Number of `u` with `deg u = d`, `u(0) = 1` and `gcd(u, reciprocal(u)) = 1`.
pub fn count_coprime_reciprocal(d: u32, mode: CountMode) -> u64 {
    match mode {
        CountMode::ClosedForm => match d {
            0 => 1,
            1 | 2 => 0,
            _ if d % 2 == 0 => ((1u64 << (d - 1)) - 2) / 3,
            _ => ((1u64 << (d - 1)) + 2) / 3,
        },
        CountMode::Enumerate => {
            if d == 0 {
                return 1;
            }
            let mut count = 0;
            for mid in 0..1u64 << (d - 1) {
                let u = BitPoly::from_mask(1 | mid << 1 | 1 << d);
                let ur = u.reciprocal_std().expect("nonzero");
                if BitPoly::gcd(&u, &ur).expect("nonzero").is_one() {
                    count += 1;
                }
            }
            count
        }
    }
}

pub(crate) fn prime_factorization(mut x: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= x {
        if x % p == 0 {
            let mut m = 0;
            while x % p == 0 {
                x /= p;
                m += 1;
            }
            out.push((p, m));
        }
        p += 1;
    }
    if x > 1 {
        out.push((x, 1));
    }
    out
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / gcd_u64(a, b) * b
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u64(b, a % b)
    }
}
