//! Small finite fields F_{q^n} for q in {2, 3, 5}, with full log/antilog tables.

use crate::error::{Error, Result};
use crate::poly2::BitPoly;

/// An element of a [`FieldCtx`], stored as the packed coefficient vector
/// `sum c_i q^i` over the polynomial basis. For q = 2 this is the plain bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct FieldElem(pub(crate) u32);

/// An immutable field F_{q^n} built on a primitive modulus. `alpha`, the class
/// of `z`, generates the multiplicative group; all arithmetic goes through the
/// discrete-log tables built at construction.
pub struct FieldCtx {
    q: u32,
    n: u32,
    order: u64,
    modulus: Vec<u8>,
    log: Vec<u32>,
    antilog: Vec<u32>,
}

impl std::fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FieldCtx(q={}, n={}, modulus={:?})", self.q, self.n, self.modulus)
    }
}

impl FieldCtx {
    /// Builds F_{q^n}. If no modulus is given, the numerically smallest
    /// primitive polynomial for (q, n) is used. Primitivity of the modulus is
    /// verified while the tables are filled.
    pub fn new(q: u32, n: u32, modulus: Option<Vec<u8>>) -> Result<FieldCtx> {
        let max_n = match q {
            2 => 20,
            3 => 8,
            5 => 6,
            _ => return Err(Error::UnsupportedQ(q)),
        };
        if n < 1 || n > max_n {
            return Err(Error::ExtensionOutOfRange { q, n });
        }
        let modulus = match modulus {
            Some(digits) => normalize_modulus(q, n, digits)?,
            None => default_modulus(q, n),
        };
        let order = (q as u64).pow(n) - 1;
        let (log, antilog) = build_tables(q, n, &modulus)?;
        Ok(FieldCtx {
            q,
            n,
            order,
            modulus,
            log,
            antilog,
        })
    }

    /// F_{2^n} on the default primitive modulus.
    pub fn binary(n: u32) -> Result<FieldCtx> {
        FieldCtx::new(2, n, None)
    }

    /// F_{2^n} on the given primitive modulus; n is the modulus degree.
    pub fn binary_with_modulus(modulus: &BitPoly) -> Result<FieldCtx> {
        let n = modulus.degree().ok_or(Error::ZeroPolynomial)?;
        let digits: Vec<u8> = (0..=n).map(|i| modulus.coeff(i) as u8).collect();
        FieldCtx::new(2, n as u32, Some(digits))
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// q^n - 1, the order of the multiplicative group.
    pub fn order(&self) -> u64 {
        self.order
    }

    /// Modulus coefficients, low to high (length n + 1, monic).
    pub fn modulus_digits(&self) -> &[u8] {
        &self.modulus
    }

    /// Modulus as a bit-polynomial (q = 2 only).
    pub fn modulus_poly(&self) -> BitPoly {
        assert_eq!(self.q, 2, "bit-polynomial modulus requires q = 2");
        let mut p = BitPoly::zero();
        for (i, &c) in self.modulus.iter().enumerate() {
            if c != 0 {
                p.set_coeff(i, true);
            }
        }
        p
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem(0)
    }

    pub fn one(&self) -> FieldElem {
        FieldElem(1)
    }

    /// The generator `alpha` (class of z).
    pub fn alpha(&self) -> FieldElem {
        self.antilog(1)
    }

    /// `alpha^e`, with the exponent reduced mod q^n - 1.
    pub fn antilog(&self, e: u64) -> FieldElem {
        FieldElem(self.antilog[(e % self.order) as usize])
    }

    /// Exponent `e` with `alpha^e = a`; errors on zero.
    pub fn discrete_log(&self, a: FieldElem) -> Result<u64> {
        if a.0 == 0 {
            return Err(Error::ZeroElement);
        }
        Ok(self.log[a.0 as usize] as u64)
    }

    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if self.q == 2 {
            return FieldElem(a.0 ^ b.0);
        }
        let (da, db) = (self.unpack(a.0), self.unpack(b.0));
        let sum: Vec<u8> = da
            .iter()
            .zip(&db)
            .map(|(&x, &y)| ((x as u32 + y as u32) % self.q) as u8)
            .collect();
        FieldElem(self.pack(&sum))
    }

    pub fn neg(&self, a: FieldElem) -> FieldElem {
        if self.q == 2 {
            return a;
        }
        let digits: Vec<u8> = self
            .unpack(a.0)
            .iter()
            .map(|&x| ((self.q - x as u32) % self.q) as u8)
            .collect();
        FieldElem(self.pack(&digits))
    }

    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if a.0 == 0 || b.0 == 0 {
            return FieldElem(0);
        }
        let e = self.log[a.0 as usize] as u64 + self.log[b.0 as usize] as u64;
        self.antilog(e)
    }

    pub fn inv(&self, a: FieldElem) -> FieldElem {
        assert_ne!(a.0, 0, "inverse of zero");
        let e = self.log[a.0 as usize] as u64;
        self.antilog(self.order - e % self.order)
    }

    pub fn div(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        assert_ne!(b.0, 0, "division by zero");
        if a.0 == 0 {
            return FieldElem(0);
        }
        let e = self.order + self.log[a.0 as usize] as u64 - self.log[b.0 as usize] as u64;
        self.antilog(e)
    }

    pub fn pow(&self, a: FieldElem, e: u64) -> FieldElem {
        if a.0 == 0 {
            return if e == 0 { self.one() } else { self.zero() };
        }
        let l = self.log[a.0 as usize] as u64;
        self.antilog((l % self.order) * (e % self.order) % self.order)
    }

    /// `a^{q^k}`, the k-th Frobenius power; k is reduced mod n.
    pub fn frobenius(&self, a: FieldElem, k: i64) -> FieldElem {
        if a.0 == 0 {
            return a;
        }
        let k = k.rem_euclid(self.n as i64) as u32;
        let qk = (self.q as u64).pow(k) % self.order.max(1);
        let e = self.log[a.0 as usize] as u64 * qk % self.order;
        self.antilog(e)
    }

    /// Trace to the base field: `a + a^q + ... + a^{q^{n-1}}`, returned as a
    /// base-field digit in 0..q.
    pub fn trace(&self, a: FieldElem) -> u8 {
        let mut acc = self.zero();
        for k in 0..self.n {
            acc = self.add(acc, self.frobenius(a, k as i64));
        }
        debug_assert!(acc.0 < self.q, "trace landed outside the base field");
        acc.0 as u8
    }

    /// Embeds a base-field digit.
    pub fn from_base(&self, c: u8) -> FieldElem {
        FieldElem(c as u32 % self.q)
    }

    /// Horner evaluation of a bit-polynomial (coefficients 0/1) at `a`.
    pub fn eval_bitpoly(&self, f: &BitPoly, a: FieldElem) -> FieldElem {
        let d = match f.degree() {
            None => return self.zero(),
            Some(d) => d,
        };
        let mut acc = self.zero();
        for i in (0..=d).rev() {
            acc = self.mul(acc, a);
            if f.coeff(i) {
                acc = self.add(acc, self.one());
            }
        }
        acc
    }

    /// Horner evaluation of a polynomial given by base-field digits, low to high.
    pub fn eval_coeffs(&self, coeffs: &[u8], a: FieldElem) -> FieldElem {
        let mut acc = self.zero();
        for &c in coeffs.iter().rev() {
            acc = self.mul(acc, a);
            acc = self.add(acc, self.from_base(c));
        }
        acc
    }

    /// All q^n elements, zero first.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> {
        (0..=self.order as u32).map(FieldElem)
    }

    /// Parses "0", "1", "a", "a^k", or (for q = 2) a hex coefficient mask.
    pub fn parse_element(&self, s: &str) -> Result<FieldElem> {
        let err = || Error::Parse {
            what: "field element",
            input: s.into(),
        };
        let t = s.trim();
        match t {
            "0" => return Ok(self.zero()),
            "1" => return Ok(self.one()),
            "a" => return Ok(self.alpha()),
            _ => {}
        }
        if let Some(e) = t.strip_prefix("a^") {
            let e: u64 = e.parse().map_err(|_| err())?;
            return Ok(self.antilog(e));
        }
        if self.q == 2 {
            if let Some(hex) = t.strip_prefix("0x") {
                let mask = u32::from_str_radix(hex, 16).map_err(|_| err())?;
                if u64::from(mask) > self.order {
                    return Err(err());
                }
                return Ok(FieldElem(mask));
            }
        }
        Err(err())
    }

    /// Renders an element in the exponent form used by `parse_element`.
    pub fn element_to_string(&self, a: FieldElem) -> String {
        match self.discrete_log(a) {
            Err(_) => "0".into(),
            Ok(0) => "1".into(),
            Ok(1) => "a".into(),
            Ok(e) => format!("a^{e}"),
        }
    }

    fn unpack(&self, mut packed: u32) -> Vec<u8> {
        let mut digits = vec![0u8; self.n as usize];
        for d in digits.iter_mut() {
            *d = (packed % self.q) as u8;
            packed /= self.q;
        }
        digits
    }

    fn pack(&self, digits: &[u8]) -> u32 {
        digits
            .iter()
            .rev()
            .fold(0u32, |acc, &d| acc * self.q + d as u32)
    }
}

fn normalize_modulus(q: u32, n: u32, mut digits: Vec<u8>) -> Result<Vec<u8>> {
    if digits.len() != n as usize + 1 || digits[n as usize] == 0 {
        return Err(Error::DegreeMismatch {
            required: n as usize,
            found: format!("{}", digits.len().saturating_sub(1)),
        });
    }
    for d in digits.iter_mut() {
        *d %= q as u8;
    }
    let lead = digits[n as usize] as u64;
    if lead == 0 {
        return Err(Error::DegreeMismatch {
            required: n as usize,
            found: "lower".into(),
        });
    }
    if lead != 1 {
        // scale monic; q is prime so the leading coefficient is invertible
        let inv = mod_inverse(lead, q as u64);
        for d in digits.iter_mut() {
            *d = ((*d as u64 * inv) % q as u64) as u8;
        }
    }
    Ok(digits)
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // Fermat: a^(p-2) mod p
    let mut acc = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

/// Fills log/antilog by walking x -> x*z. The walk doubles as the primitivity
/// check: the modulus is primitive iff the walk enumerates all q^n - 1 nonzero
/// elements before returning to 1.
fn build_tables(q: u32, n: u32, modulus: &[u8]) -> Result<(Vec<u32>, Vec<u32>)> {
    if modulus[0] == 0 {
        return Err(Error::NotPrimitive);
    }
    let order = (q as u64).pow(n) - 1;
    let mut log = vec![u32::MAX; order as usize + 1];
    let mut antilog = vec![0u32; order as usize];
    let mut x = vec![0u8; n as usize];
    x[0] = 1;
    let pack = |digits: &[u8]| {
        digits
            .iter()
            .rev()
            .fold(0u32, |acc, &d| acc * q + d as u32)
    };
    for e in 0..order {
        let packed = pack(&x);
        if log[packed as usize] != u32::MAX {
            return Err(Error::NotPrimitive);
        }
        log[packed as usize] = e as u32;
        antilog[e as usize] = packed;
        // x <- x * z mod modulus
        let top = x[n as usize - 1] as u32;
        for i in (1..n as usize).rev() {
            x[i] = x[i - 1];
        }
        x[0] = 0;
        if top != 0 {
            for i in 0..n as usize {
                let v = x[i] as u32 + (q - top * modulus[i] as u32 % q) % q;
                x[i] = (v % q) as u8;
            }
        }
    }
    if pack(&x) != 1 {
        return Err(Error::NotPrimitive);
    }
    Ok((log, antilog))
}

/// The numerically smallest primitive polynomial of degree n over F_q,
/// by the packed coefficient value.
pub fn default_modulus(q: u32, n: u32) -> Vec<u8> {
    if q == 2 {
        let mut mask = (1u64 << n) | 1;
        loop {
            let p = BitPoly::from_mask(mask);
            if p.is_primitive(n as usize).expect("degree matches") {
                return (0..=n as usize).map(|i| p.coeff(i) as u8).collect();
            }
            mask += 2;
        }
    }
    let qn = (q as u64).pow(n);
    for idx in 1..qn {
        let mut digits: Vec<u8> = Vec::with_capacity(n as usize + 1);
        let mut v = idx;
        for _ in 0..n {
            digits.push((v % q as u64) as u8);
            v /= q as u64;
        }
        digits.push(1);
        if digits[0] == 0 {
            continue;
        }
        if build_tables(q, n, &digits).is_ok() {
            return digits;
        }
    }
    unreachable!("a primitive polynomial exists for every (q, n)")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> BitPoly {
        s.parse().unwrap()
    }

    #[test]
    fn construction_examples() {
        let f = FieldCtx::binary_with_modulus(&p("z^5+z^2+1")).unwrap();
        assert_eq!(f.order(), 31);
        // alpha generates: its order is exactly 31
        assert_eq!(f.pow(f.alpha(), 31), f.one());
        for e in 1..31 {
            assert_ne!(f.pow(f.alpha(), e), f.one());
        }
        assert_eq!(
            FieldCtx::binary_with_modulus(&p("z^4+z^3+z^2+z+1")).unwrap_err(),
            Error::NotPrimitive
        );
        let f1 = FieldCtx::binary(1).unwrap();
        assert_eq!(f1.order(), 1);
        assert_eq!(f1.alpha(), f1.one());
    }

    #[test]
    fn default_moduli_are_lowest() {
        // cross-checked by exhaustive search below 0x25 / 0x43
        assert_eq!(FieldCtx::binary(5).unwrap().modulus_poly(), p("z^5+z^2+1"));
        assert_eq!(FieldCtx::binary(6).unwrap().modulus_poly(), p("z^6+z+1"));
        assert_eq!(FieldCtx::binary(8).unwrap().modulus_poly().to_hex(), "0x11d");
    }

    #[test]
    fn trace_examples() {
        let f5 = FieldCtx::binary(5).unwrap();
        assert_eq!(f5.trace(f5.one()), 1);
        let f6 = FieldCtx::binary(6).unwrap();
        assert_eq!(f6.trace(f6.one()), 0);
        let ones: u32 = f5.elements().map(|a| f5.trace(a) as u32).sum();
        assert_eq!(ones, 16); // the trace is balanced
    }

    #[test]
    fn frobenius_examples() {
        let f = FieldCtx::binary(5).unwrap();
        let a = f.antilog(7);
        assert_eq!(f.frobenius(a, 0), a);
        assert_eq!(f.frobenius(a, 5), a);
        assert_eq!(f.frobenius(f.alpha(), 1), f.mul(f.alpha(), f.alpha()));
        assert_eq!(f.frobenius(a, -1), f.frobenius(a, 4));
    }

    #[test]
    fn discrete_log_examples() {
        let f = FieldCtx::binary(5).unwrap();
        assert_eq!(f.discrete_log(f.one()).unwrap(), 0);
        assert_eq!(f.discrete_log(f.alpha()).unwrap(), 1);
        assert_eq!(f.antilog(f.order()), f.one());
        assert_eq!(f.discrete_log(f.zero()), Err(Error::ZeroElement));
    }

    #[test]
    fn log_antilog_bijection() {
        for ctx in [
            FieldCtx::binary(5).unwrap(),
            FieldCtx::binary(12).unwrap(),
            FieldCtx::new(3, 4, None).unwrap(),
            FieldCtx::new(5, 3, None).unwrap(),
        ] {
            for e in 0..ctx.order() {
                assert_eq!(ctx.discrete_log(ctx.antilog(e)).unwrap(), e);
            }
            for a in ctx.elements().skip(1) {
                assert_eq!(ctx.antilog(ctx.discrete_log(a).unwrap()), a);
            }
        }
    }

    #[test]
    fn eval_examples() {
        let f = FieldCtx::binary_with_modulus(&p("z^5+z^2+1")).unwrap();
        assert_eq!(f.eval_bitpoly(&p("z^5+z^2+1"), f.alpha()), f.zero());
        assert_eq!(f.eval_bitpoly(&BitPoly::one(), f.antilog(13)), f.one());
        // conjugates share the minimal polynomial
        let a2 = f.frobenius(f.alpha(), 1);
        assert_eq!(f.eval_bitpoly(&p("z^5+z^2+1"), a2), f.zero());
    }

    #[test]
    fn trace_linearity_and_frobenius_invariance() {
        for ctx in [
            FieldCtx::binary(10).unwrap(),
            FieldCtx::new(3, 5, None).unwrap(),
            FieldCtx::new(5, 3, None).unwrap(),
        ] {
            for a in ctx.elements() {
                assert_eq!(ctx.trace(ctx.frobenius(a, 1)), ctx.trace(a));
            }
            // additivity on a deterministic sample of pairs
            let step = (ctx.order() / 97).max(1);
            for i in (0..=ctx.order()).step_by(step as usize) {
                for j in (0..=ctx.order()).step_by(step as usize) {
                    let (a, b) = (FieldElem(i as u32), FieldElem(j as u32));
                    let lhs = ctx.trace(ctx.add(a, b)) as u32;
                    let rhs = (ctx.trace(a) as u32 + ctx.trace(b) as u32) % ctx.q();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn field_axioms_spot_checks() {
        let ctx = FieldCtx::new(3, 3, None).unwrap();
        for a in ctx.elements() {
            assert_eq!(ctx.add(a, ctx.neg(a)), ctx.zero());
            if a != ctx.zero() {
                assert_eq!(ctx.mul(a, ctx.inv(a)), ctx.one());
            }
            for b in ctx.elements() {
                assert_eq!(ctx.mul(a, b), ctx.mul(b, a));
                assert_eq!(ctx.sub(ctx.add(a, b), b), a);
            }
        }
    }

    /// Cleared-denominator partial fraction expansion of f(z)/L(z) over the
    /// conjugate roots of the modulus L, checked as a polynomial identity by
    /// evaluating both sides at n + 1 distinct points.
    #[test]
    fn partial_fraction_identity() {
        for n in 3..=8u32 {
            let ctx = FieldCtx::binary(n).unwrap();
            let modulus = ctx.modulus_poly();
            let deriv = modulus.derivative();
            let roots: Vec<FieldElem> =
                (0..n).map(|j| ctx.frobenius(ctx.alpha(), j as i64)).collect();
            for fmask in 1..1u64 << n {
                let fpoly = BitPoly::from_mask(fmask);
                let coeffs: Vec<FieldElem> = roots
                    .iter()
                    .map(|&r| ctx.div(ctx.eval_bitpoly(&fpoly, r), ctx.eval_bitpoly(&deriv, r)))
                    .collect();
                for point in 0..=n as u64 {
                    let w = if point == 0 {
                        ctx.zero()
                    } else {
                        ctx.antilog(point - 1)
                    };
                    let lhs = ctx.eval_bitpoly(&fpoly, w);
                    let mut rhs = ctx.zero();
                    for (j, &c) in coeffs.iter().enumerate() {
                        let mut term = c;
                        for (k, &r) in roots.iter().enumerate() {
                            if k != j {
                                term = ctx.mul(term, ctx.add(w, r));
                            }
                        }
                        rhs = ctx.add(rhs, term);
                    }
                    assert_eq!(lhs, rhs, "n = {n}, f = {fpoly}");
                }
            }
        }
    }

    #[test]
    fn parse_and_display_elements() {
        let ctx = FieldCtx::binary(5).unwrap();
        assert_eq!(ctx.parse_element("0").unwrap(), ctx.zero());
        assert_eq!(ctx.parse_element("1").unwrap(), ctx.one());
        assert_eq!(ctx.parse_element("a^3").unwrap(), ctx.antilog(3));
        assert_eq!(ctx.parse_element("0x2").unwrap(), ctx.alpha());
        assert!(ctx.parse_element("b^2").is_err());
        assert_eq!(ctx.element_to_string(ctx.antilog(7)), "a^7");
        assert_eq!(ctx.element_to_string(ctx.zero()), "0");
    }

    #[test]
    fn qary_guards() {
        assert_eq!(
            FieldCtx::new(7, 2, None).unwrap_err(),
            Error::UnsupportedQ(7)
        );
        assert!(matches!(
            FieldCtx::new(3, 9, None).unwrap_err(),
            Error::ExtensionOutOfRange { .. }
        ));
    }
}
