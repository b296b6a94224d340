//! Polynomial arithmetic over F_p and over residue fields F_q = F_p[t]/(m).
//!
//! Factor *degrees* are computed deterministically at any prime: squarefree
//! decomposition in characteristic p (including the p-th power branch), then
//! distinct-degree splitting with x^(p^d) - x gcds. Explicit factor lists are
//! produced by enumerating candidate divisors of each distinct-degree block,
//! which is exact and canonical but exponential in the block degree; every
//! place that needs explicit factors works over tiny fields.
//!
//! The count of monic irreducibles of degree f over F_p is
//!
//! ```text
//! N_f = (1/f) * sum_{d | f} mu(d) p^(f/d),
//! ```
//!
//! the necklace-counting formula.

use crate::error::{Error, Result};
use crate::intpoly::ZPoly;
use crate::primes;
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use std::fmt;

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        exp >>= 1;
    }
    acc
}

fn invmod(a: u64, p: u64) -> u64 {
    // p prime, a != 0 mod p.
    powmod(a, p - 2, p)
}

/// Dense polynomial over F_p, coefficients ascending in [0, p), no trailing
/// zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FpPoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl FpPoly {
    pub fn new(p: u64, coeffs: Vec<u64>) -> Self {
        let mut coeffs: Vec<u64> = coeffs.into_iter().map(|c| c % p).collect();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FpPoly { p, coeffs }
    }

    pub fn from_zpoly(p: u64, f: &ZPoly) -> Self {
        let bp = BigInt::from(p);
        let coeffs = f
            .coeffs()
            .iter()
            .map(|c| {
                let r = c.mod_floor(&bp);
                r.to_u64().expect("residue fits in u64")
            })
            .collect();
        FpPoly::new(p, coeffs)
    }

    pub fn zero(p: u64) -> Self {
        FpPoly { p, coeffs: Vec::new() }
    }

    pub fn one(p: u64) -> Self {
        FpPoly::new(p, vec![1])
    }

    pub fn constant(p: u64, c: u64) -> Self {
        FpPoly::new(p, vec![c])
    }

    pub fn x(p: u64) -> Self {
        FpPoly::new(p, vec![0, 1])
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> u64 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    fn assert_same_field(&self, other: &FpPoly) {
        assert_eq!(self.p, other.p, "mixed characteristics");
    }

    pub fn add(&self, other: &FpPoly) -> FpPoly {
        self.assert_same_field(other);
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push((self.coeff(k) + other.coeff(k)) % self.p);
        }
        FpPoly::new(self.p, out)
    }

    pub fn sub(&self, other: &FpPoly) -> FpPoly {
        self.assert_same_field(other);
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push((self.coeff(k) + self.p - other.coeff(k)) % self.p);
        }
        FpPoly::new(self.p, out)
    }

    pub fn neg(&self) -> FpPoly {
        FpPoly::new(self.p, self.coeffs.iter().map(|&c| self.p - c).collect())
    }

    pub fn mul(&self, other: &FpPoly) -> FpPoly {
        self.assert_same_field(other);
        if self.is_zero() || other.is_zero() {
            return FpPoly::zero(self.p);
        }
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + mulmod(a, b, self.p)) % self.p;
            }
        }
        FpPoly::new(self.p, out)
    }

    pub fn mul_scalar(&self, c: u64) -> FpPoly {
        FpPoly::new(
            self.p,
            self.coeffs.iter().map(|&a| mulmod(a, c % self.p, self.p)).collect(),
        )
    }

    /// (leading coefficient, self / leading); the zero polynomial maps to
    /// (0, 0).
    pub fn make_monic(&self) -> (u64, FpPoly) {
        let lead = self.leading();
        if lead == 0 || lead == 1 {
            return (lead, self.clone());
        }
        (lead, self.mul_scalar(invmod(lead, self.p)))
    }

    /// Long division by a nonzero divisor. Panics on a zero divisor; callers
    /// guard that themselves.
    pub fn div_rem(&self, divisor: &FpPoly) -> (FpPoly, FpPoly) {
        self.assert_same_field(divisor);
        let d = divisor.degree().expect("division by the zero polynomial");
        let inv_lead = invmod(divisor.leading(), self.p);
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return (FpPoly::zero(self.p), self.clone());
        }
        let mut quo = vec![0u64; rem.len() - d];
        for i in (d..rem.len()).rev() {
            let c = mulmod(rem[i], inv_lead, self.p);
            rem[i] = 0;
            if c == 0 {
                continue;
            }
            for (j, &dc) in divisor.coeffs.iter().take(d).enumerate() {
                let t = mulmod(c, dc, self.p);
                rem[i - d + j] = (rem[i - d + j] + self.p - t) % self.p;
            }
            quo[i - d] = c;
        }
        rem.truncate(d);
        (FpPoly::new(self.p, quo), FpPoly::new(self.p, rem))
    }

    pub fn rem(&self, divisor: &FpPoly) -> FpPoly {
        self.div_rem(divisor).1
    }

    pub fn divides(&self, other: &FpPoly) -> bool {
        !self.is_zero() && other.rem(self).is_zero()
    }

    /// Monic gcd; gcd(0, 0) = 0.
    pub fn gcd(&self, other: &FpPoly) -> FpPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.make_monic().1
    }

    pub fn eval(&self, x: u64) -> u64 {
        let x = x % self.p;
        let mut acc = 0u64;
        for &c in self.coeffs.iter().rev() {
            acc = (mulmod(acc, x, self.p) + c) % self.p;
        }
        acc
    }

    pub fn derivative(&self) -> FpPoly {
        if self.coeffs.len() <= 1 {
            return FpPoly::zero(self.p);
        }
        FpPoly::new(
            self.p,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| mulmod(c, (k as u64) % self.p, self.p))
                .collect(),
        )
    }

    /// self^e mod m, with an arbitrary-size exponent.
    pub fn pow_mod(&self, e: &BigUint, m: &FpPoly) -> FpPoly {
        let mut base = self.rem(m);
        let mut acc = FpPoly::one(self.p);
        for i in 0..e.bits() {
            if e.bit(i) {
                acc = acc.mul(&base).rem(m);
            }
            if i + 1 < e.bits() {
                base = base.mul(&base).rem(m);
            }
        }
        acc
    }

    /// Multiplicity of `factor` in self (how many times it divides).
    pub fn multiplicity_of(&self, factor: &FpPoly) -> u32 {
        let mut f = self.clone();
        let mut k = 0;
        loop {
            let (q, r) = f.div_rem(factor);
            if r.is_zero() {
                f = q;
                k += 1;
            } else {
                return k;
            }
        }
    }

    /// Squarefree decomposition of a monic polynomial in characteristic p:
    /// pairs (g, m) with g monic squarefree, pairwise coprime, and
    /// self = prod g^m. Handles the p-th power branch via coefficient-wise
    /// p-th roots (a^p = a in F_p).
    pub fn squarefree_decomposition(&self) -> Vec<(FpPoly, u32)> {
        assert!(self.is_monic(), "squarefree decomposition expects monic input");
        let mut out = Vec::new();
        let one = FpPoly::one(self.p);
        if self.degree() == Some(0) {
            return out;
        }
        let deriv = self.derivative();
        let mut c = self.gcd(&deriv);
        let mut w = self.div_rem(&c).0;
        let mut i = 1u32;
        while w != one {
            let y = w.gcd(&c);
            let z = w.div_rem(&y).0;
            if z != one {
                out.push((z, i));
            }
            i += 1;
            c = c.div_rem(&y).0;
            w = y;
        }
        if c != one {
            // c = u(x^p) for some u; its p-th root has coeffs c_{pk}.
            let stride = self.p as usize;
            let root_len = (c.coeffs.len() - 1) / stride + 1;
            let root = FpPoly::new(
                self.p,
                (0..root_len).map(|k| c.coeff(k * stride)).collect(),
            );
            for (g, m) in root.squarefree_decomposition() {
                out.push((g, m * self.p as u32));
            }
        }
        out
    }

    /// Distinct-degree splitting of a monic squarefree polynomial: pairs
    /// (d, product of all monic irreducible factors of degree d), d ascending.
    pub fn distinct_degree(&self) -> Vec<(usize, FpPoly)> {
        assert!(self.is_monic(), "distinct-degree splitting expects monic input");
        let mut out = Vec::new();
        let mut rest = self.clone();
        let x = FpPoly::x(self.p);
        let mut h = x.rem(&rest);
        let pe = BigUint::from(self.p);
        let mut d = 0usize;
        while rest.degree().unwrap_or(0) >= 2 * (d + 1) {
            d += 1;
            h = h.pow_mod(&pe, &rest);
            let g = h.sub(&x.rem(&rest)).gcd(&rest);
            if g.degree().unwrap_or(0) > 0 {
                out.push((d, g.clone()));
                rest = rest.div_rem(&g).0;
                h = h.rem(&rest);
            }
        }
        if rest.degree().unwrap_or(0) > 0 {
            out.push((rest.degree().unwrap(), rest));
        }
        out.sort_by_key(|(d, _)| *d);
        out
    }

    /// Degrees of all irreducible factors, with multiplicity, ascending.
    pub fn degree_partition(&self) -> Vec<usize> {
        let (_, monic) = self.make_monic();
        assert!(!monic.is_zero(), "degree partition of the zero polynomial");
        let mut parts = Vec::new();
        for (g, m) in monic.squarefree_decomposition() {
            for (d, prod) in g.distinct_degree() {
                let copies = prod.degree().unwrap() / d * m as usize;
                parts.extend(std::iter::repeat(d).take(copies));
            }
        }
        parts.sort_unstable();
        parts
    }

    pub fn is_irreducible(&self) -> bool {
        self.degree().unwrap_or(0) >= 1 && self.degree_partition() == [self.degree().unwrap()]
    }

    /// Complete factorization: (unit, monic irreducible factors with
    /// multiplicity), factors sorted by degree then coefficient vector.
    ///
    /// Distinct-degree blocks are split by enumerating candidate divisors,
    /// which costs O(p^d) per degree-d block; fine for the small primes this
    /// library actually factors over.
    pub fn factor(&self) -> Result<(u64, Vec<(FpPoly, u32)>)> {
        if self.is_zero() {
            return Err(Error::ZeroValue);
        }
        let (unit, monic) = self.make_monic();
        let mut factors: Vec<(FpPoly, u32)> = Vec::new();
        for (g, m) in monic.squarefree_decomposition() {
            for (d, prod) in g.distinct_degree() {
                for irr in split_distinct_degree_block(&prod, d) {
                    factors.push((irr, m));
                }
            }
        }
        factors.sort_by(|(f, _), (g, _)| {
            f.coeffs.len().cmp(&g.coeffs.len()).then_with(|| f.coeffs.cmp(&g.coeffs))
        });
        Ok((unit, factors))
    }

    /// Render with a chosen variable name.
    pub fn display_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !s.is_empty() {
                s.push_str(" + ");
            }
            match (k, c) {
                (0, _) => s.push_str(&c.to_string()),
                (1, 1) => s.push_str(var),
                (1, _) => s.push_str(&format!("{c}*{var}")),
                (_, 1) => s.push_str(&format!("{var}^{k}")),
                (_, _) => s.push_str(&format!("{c}*{var}^{k}")),
            }
        }
        s
    }
}

impl fmt::Display for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with("x"))
    }
}

/// Split a product of distinct monic irreducibles, all of degree d, into its
/// factors. Any monic degree-d divisor of such a product is itself one of the
/// irreducible factors, so plain enumeration is exact.
fn split_distinct_degree_block(prod: &FpPoly, d: usize) -> Vec<FpPoly> {
    let total = prod.degree().unwrap();
    if total == d {
        return vec![prod.clone()];
    }
    let p = prod.modulus();
    let mut out = Vec::new();
    let mut rest = prod.clone();
    let mut coeffs = vec![0u64; d + 1];
    coeffs[d] = 1;
    'outer: loop {
        let cand = FpPoly::new(p, coeffs.clone());
        if cand.divides(&rest) {
            rest = rest.div_rem(&cand).0;
            out.push(cand);
            match rest.degree() {
                Some(deg) if deg > d => {}
                Some(deg) if deg == d => {
                    out.push(rest.clone());
                    break;
                }
                _ => break,
            }
        }
        // Odometer over the d free coefficients.
        for slot in coeffs.iter_mut().take(d) {
            *slot += 1;
            if *slot < p {
                continue 'outer;
            }
            *slot = 0;
        }
        break;
    }
    out
}

fn mobius(n: u32) -> i64 {
    let mut n = n;
    let mut mu = 1i64;
    let mut d = 2u32;
    while d * d <= n {
        if n % d == 0 {
            n /= d;
            if n % d == 0 {
                return 0;
            }
            mu = -mu;
        }
        d += 1;
    }
    if n > 1 {
        mu = -mu;
    }
    mu
}

/// Number of monic irreducible polynomials of degree f over F_p. Panics on
/// f = 0; errors if p is not prime.
pub fn count_monic_irreducibles(p: u64, f: u32) -> Result<BigUint> {
    if !primes::is_prime_u64(p) {
        return Err(Error::InvalidPrime(p));
    }
    assert!(f >= 1, "degree must be positive");
    let bp = BigInt::from(p);
    let mut sum = BigInt::zero();
    for d in 1..=f {
        if f % d == 0 {
            sum += BigInt::from(mobius(d)) * bp.pow(f / d);
        }
    }
    let (q, r) = sum.div_rem(&BigInt::from(f));
    debug_assert!(r.is_zero() && !q.is_negative());
    Ok(q.magnitude().clone())
}

/// The field F_q = F_p[t]/(m) for a monic irreducible m; elements are
/// represented by their reduced FpPoly representatives in t.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueField {
    modulus: FpPoly,
}

impl ResidueField {
    /// Builds F_p[t]/(m). m must be monic irreducible; this is checked.
    pub fn new(modulus: FpPoly) -> Result<Self> {
        if !modulus.is_monic() || !modulus.is_irreducible() {
            return Err(Error::IrrelevantModulus(format!(
                "{} is not monic irreducible over F_{}",
                modulus,
                modulus.modulus()
            )));
        }
        Ok(ResidueField { modulus })
    }

    pub fn p(&self) -> u64 {
        self.modulus.modulus()
    }

    /// Extension degree over F_p.
    pub fn extension_degree(&self) -> usize {
        self.modulus.degree().unwrap()
    }

    /// q = p^degree, as a big integer (may be astronomically large).
    pub fn order(&self) -> BigUint {
        BigUint::from(self.p()).pow(self.extension_degree() as u32)
    }

    pub fn defining_polynomial(&self) -> &FpPoly {
        &self.modulus
    }

    /// True when the field is just F_p itself.
    pub fn is_prime_field(&self) -> bool {
        self.extension_degree() == 1
    }

    pub fn zero(&self) -> FpPoly {
        FpPoly::zero(self.p())
    }

    pub fn one(&self) -> FpPoly {
        FpPoly::one(self.p())
    }

    pub fn from_u64(&self, c: u64) -> FpPoly {
        FpPoly::constant(self.p(), c)
    }

    pub fn reduce(&self, a: &FpPoly) -> FpPoly {
        a.rem(&self.modulus)
    }

    pub fn add(&self, a: &FpPoly, b: &FpPoly) -> FpPoly {
        a.add(b)
    }

    pub fn sub(&self, a: &FpPoly, b: &FpPoly) -> FpPoly {
        a.sub(b)
    }

    pub fn neg(&self, a: &FpPoly) -> FpPoly {
        a.neg()
    }

    pub fn mul(&self, a: &FpPoly, b: &FpPoly) -> FpPoly {
        a.mul(b).rem(&self.modulus)
    }

    /// Multiplicative inverse; errors on zero.
    pub fn inv(&self, a: &FpPoly) -> Result<FpPoly> {
        if a.is_zero() {
            return Err(Error::ZeroValue);
        }
        // Extended Euclid in F_p[t].
        let mut r0 = self.modulus.clone();
        let mut r1 = a.rem(&self.modulus);
        let mut s0 = FpPoly::zero(self.p());
        let mut s1 = FpPoly::one(self.p());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = s0.sub(&q.mul(&s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        // r0 = gcd = nonzero constant (modulus irreducible, a nonzero).
        let c = invmod(r0.leading(), self.p());
        Ok(s0.mul_scalar(c).rem(&self.modulus))
    }

    pub fn pow(&self, a: &FpPoly, e: &BigUint) -> FpPoly {
        a.pow_mod(e, &self.modulus)
    }

    /// All field elements in a canonical order (odometer over coefficient
    /// vectors). Only call on small fields.
    pub fn elements(&self) -> Vec<FpPoly> {
        let p = self.p();
        let m = self.extension_degree();
        let count = (p as u128).checked_pow(m as u32).expect("field too large to enumerate");
        let mut out = Vec::with_capacity(count as usize);
        let mut digits = vec![0u64; m];
        loop {
            out.push(FpPoly::new(p, digits.clone()));
            let mut i = 0;
            while i < m {
                digits[i] += 1;
                if digits[i] < p {
                    break;
                }
                digits[i] = 0;
                i += 1;
            }
            if i == m {
                return out;
            }
        }
    }

    /// Render an element, parenthesizing proper extension-field values. The
    /// class of x in F_p[x]/(modulus) keeps the name x.
    pub fn display_element(&self, a: &FpPoly) -> String {
        if self.is_prime_field() || a.degree().unwrap_or(0) == 0 {
            if a.is_zero() {
                "0".to_string()
            } else {
                a.coeff(0).to_string()
            }
        } else {
            format!("({})", a.display_with("x"))
        }
    }
}

/// Dense polynomial over a residue field, coefficients ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FqPoly {
    field: ResidueField,
    coeffs: Vec<FpPoly>,
}

impl FqPoly {
    pub fn new(field: ResidueField, coeffs: Vec<FpPoly>) -> Self {
        let mut coeffs: Vec<FpPoly> = coeffs.into_iter().map(|c| field.reduce(&c)).collect();
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        FqPoly { field, coeffs }
    }

    pub fn zero(field: ResidueField) -> Self {
        FqPoly { field, coeffs: Vec::new() }
    }

    pub fn one(field: ResidueField) -> Self {
        let one = field.one();
        FqPoly::new(field, vec![one])
    }

    pub fn y(field: ResidueField) -> Self {
        let (zero, one) = (field.zero(), field.one());
        FqPoly::new(field, vec![zero, one])
    }

    pub fn field(&self) -> &ResidueField {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> FpPoly {
        self.coeffs.get(k).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn coeffs(&self) -> &[FpPoly] {
        &self.coeffs
    }

    pub fn leading(&self) -> FpPoly {
        self.coeffs.last().cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == self.field.one()
    }

    pub fn add(&self, other: &FqPoly) -> FqPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.field.add(&self.coeff(k), &other.coeff(k)));
        }
        FqPoly::new(self.field.clone(), out)
    }

    pub fn sub(&self, other: &FqPoly) -> FqPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.field.sub(&self.coeff(k), &other.coeff(k)));
        }
        FqPoly::new(self.field.clone(), out)
    }

    pub fn mul(&self, other: &FqPoly) -> FqPoly {
        if self.is_zero() || other.is_zero() {
            return FqPoly::zero(self.field.clone());
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let t = self.field.mul(a, b);
                out[i + j] = self.field.add(&out[i + j], &t);
            }
        }
        FqPoly::new(self.field.clone(), out)
    }

    pub fn mul_element(&self, c: &FpPoly) -> FqPoly {
        FqPoly::new(
            self.field.clone(),
            self.coeffs.iter().map(|a| self.field.mul(a, c)).collect(),
        )
    }

    pub fn make_monic(&self) -> (FpPoly, FqPoly) {
        let lead = self.leading();
        if lead.is_zero() || lead == self.field.one() {
            return (lead, self.clone());
        }
        let inv = self.field.inv(&lead).expect("nonzero leading coefficient");
        (lead, self.mul_element(&inv))
    }

    pub fn div_rem(&self, divisor: &FqPoly) -> (FqPoly, FqPoly) {
        let d = divisor.degree().expect("division by the zero polynomial");
        let inv_lead = self
            .field
            .inv(&divisor.leading())
            .expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return (FqPoly::zero(self.field.clone()), self.clone());
        }
        let mut quo = vec![self.field.zero(); rem.len() - d];
        for i in (d..rem.len()).rev() {
            let c = self.field.mul(&rem[i], &inv_lead);
            rem[i] = self.field.zero();
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().take(d).enumerate() {
                let t = self.field.mul(&c, dc);
                rem[i - d + j] = self.field.sub(&rem[i - d + j], &t);
            }
            quo[i - d] = c;
        }
        rem.truncate(d);
        (
            FqPoly::new(self.field.clone(), quo),
            FqPoly::new(self.field.clone(), rem),
        )
    }

    pub fn rem(&self, divisor: &FqPoly) -> FqPoly {
        self.div_rem(divisor).1
    }

    pub fn divides(&self, other: &FqPoly) -> bool {
        !self.is_zero() && other.rem(self).is_zero()
    }

    pub fn gcd(&self, other: &FqPoly) -> FqPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.make_monic().1
    }

    pub fn derivative(&self) -> FqPoly {
        if self.coeffs.len() <= 1 {
            return FqPoly::zero(self.field.clone());
        }
        let out = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| {
                let kf = self.field.from_u64((k as u64) % self.field.p());
                self.field.mul(c, &kf)
            })
            .collect();
        FqPoly::new(self.field.clone(), out)
    }

    pub fn pow_mod(&self, e: &BigUint, m: &FqPoly) -> FqPoly {
        let mut base = self.rem(m);
        let mut acc = FqPoly::one(self.field.clone());
        for i in 0..e.bits() {
            if e.bit(i) {
                acc = acc.mul(&base).rem(m);
            }
            if i + 1 < e.bits() {
                base = base.mul(&base).rem(m);
            }
        }
        acc
    }

    pub fn eval(&self, x: &FpPoly) -> FpPoly {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = self.field.add(&self.field.mul(&acc, x), c);
        }
        acc
    }

    pub fn multiplicity_of(&self, factor: &FqPoly) -> u32 {
        let mut f = self.clone();
        let mut k = 0;
        loop {
            let (q, r) = f.div_rem(factor);
            if r.is_zero() {
                f = q;
                k += 1;
            } else {
                return k;
            }
        }
    }

    /// No repeated irreducible factor: gcd with the derivative is constant.
    /// (For nonconstant f in characteristic p this is exact: a vanishing
    /// derivative means a p-th power, which the gcd convention catches since
    /// gcd(f, 0) = f.)
    pub fn is_separable(&self) -> bool {
        let d = self.derivative();
        if d.is_zero() {
            return self.degree().unwrap_or(0) == 0;
        }
        self.gcd(&d).degree() == Some(0)
    }

    pub fn squarefree_decomposition(&self) -> Vec<(FqPoly, u32)> {
        assert!(self.is_monic(), "squarefree decomposition expects monic input");
        let mut out = Vec::new();
        let one = FqPoly::one(self.field.clone());
        if self.degree() == Some(0) {
            return out;
        }
        let p = self.field.p() as usize;
        let deriv = self.derivative();
        let mut c = self.gcd(&deriv);
        let mut w = self.div_rem(&c).0;
        let mut i = 1u32;
        while w != one {
            let y = w.gcd(&c);
            let z = w.div_rem(&y).0;
            if z != one {
                out.push((z, i));
            }
            i += 1;
            c = c.div_rem(&y).0;
            w = y;
        }
        if c != one {
            // c = u(y^p); the p-th root of a coefficient a is a^(q/p).
            let root_exp = self.field.order() / BigUint::from(self.field.p());
            let root_len = (c.coeffs.len() - 1) / p + 1;
            let coeffs = (0..root_len)
                .map(|k| self.field.pow(&c.coeff(k * p), &root_exp))
                .collect();
            let root = FqPoly::new(self.field.clone(), coeffs);
            for (g, m) in root.squarefree_decomposition() {
                out.push((g, m * self.field.p() as u32));
            }
        }
        out
    }

    pub fn distinct_degree(&self) -> Vec<(usize, FqPoly)> {
        assert!(self.is_monic(), "distinct-degree splitting expects monic input");
        let mut out = Vec::new();
        let mut rest = self.clone();
        let y = FqPoly::y(self.field.clone());
        let mut h = y.rem(&rest);
        let q = self.field.order();
        let mut d = 0usize;
        while rest.degree().unwrap_or(0) >= 2 * (d + 1) {
            d += 1;
            h = h.pow_mod(&q, &rest);
            let g = h.sub(&y.rem(&rest)).gcd(&rest);
            if g.degree().unwrap_or(0) > 0 {
                out.push((d, g.clone()));
                rest = rest.div_rem(&g).0;
                h = h.rem(&rest);
            }
        }
        if rest.degree().unwrap_or(0) > 0 {
            out.push((rest.degree().unwrap(), rest));
        }
        out.sort_by_key(|(d, _)| *d);
        out
    }

    /// Degrees of all irreducible factors over F_q, with multiplicity.
    pub fn degree_partition(&self) -> Vec<usize> {
        let (_, monic) = self.make_monic();
        assert!(!monic.is_zero(), "degree partition of the zero polynomial");
        let mut parts = Vec::new();
        for (g, m) in monic.squarefree_decomposition() {
            for (d, prod) in g.distinct_degree() {
                let copies = prod.degree().unwrap() / d * m as usize;
                parts.extend(std::iter::repeat(d).take(copies));
            }
        }
        parts.sort_unstable();
        parts
    }

    pub fn is_irreducible(&self) -> bool {
        self.degree().unwrap_or(0) >= 1 && self.degree_partition() == [self.degree().unwrap()]
    }

    /// Complete factorization into monic irreducibles with multiplicity, by
    /// enumeration within each distinct-degree block. Exponential in q; only
    /// for small residue fields.
    pub fn factor(&self) -> Result<(FpPoly, Vec<(FqPoly, u32)>)> {
        if self.is_zero() {
            return Err(Error::ZeroValue);
        }
        let (unit, monic) = self.make_monic();
        let mut factors: Vec<(FqPoly, u32)> = Vec::new();
        for (g, m) in monic.squarefree_decomposition() {
            for (d, prod) in g.distinct_degree() {
                for irr in split_fq_block(&prod, d) {
                    factors.push((irr, m));
                }
            }
        }
        factors.sort_by(|(f, _), (g, _)| {
            let key = |h: &FqPoly| {
                let cs: Vec<Vec<u64>> = h.coeffs.iter().map(|c| c.coeffs().to_vec()).collect();
                (h.coeffs.len(), cs)
            };
            key(f).cmp(&key(g))
        });
        Ok((unit, factors))
    }

    /// Render in the variable y, parenthesizing extension-field coefficients.
    pub fn display_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let one = self.field.one();
        let mut s = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !s.is_empty() {
                s.push_str(" + ");
            }
            let unit_coeff = *c == one;
            match (k, unit_coeff) {
                (0, _) => s.push_str(&self.field.display_element(c)),
                (1, true) => s.push_str(var),
                (1, false) => s.push_str(&format!("{}*{var}", self.field.display_element(c))),
                (_, true) => s.push_str(&format!("{var}^{k}")),
                (_, false) => {
                    s.push_str(&format!("{}*{var}^{k}", self.field.display_element(c)))
                }
            }
        }
        s
    }
}

impl fmt::Display for FqPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with("y"))
    }
}

/// Split a squarefree product of same-degree irreducibles over F_q by
/// enumerating monic degree-d candidates coefficient-odometer style.
fn split_fq_block(prod: &FqPoly, d: usize) -> Vec<FqPoly> {
    let total = prod.degree().unwrap();
    if total == d {
        return vec![prod.clone()];
    }
    let field = prod.field().clone();
    let elements = field.elements();
    let q = elements.len();
    let mut out = Vec::new();
    let mut rest = prod.clone();
    let mut idx = vec![0usize; d];
    'outer: loop {
        let mut coeffs: Vec<FpPoly> = idx.iter().map(|&i| elements[i].clone()).collect();
        coeffs.push(field.one());
        let cand = FqPoly::new(field.clone(), coeffs);
        if cand.divides(&rest) {
            rest = rest.div_rem(&cand).0;
            out.push(cand);
            match rest.degree() {
                Some(deg) if deg > d => {}
                Some(deg) if deg == d => {
                    out.push(rest.clone());
                    break;
                }
                _ => break,
            }
        }
        for slot in idx.iter_mut() {
            *slot += 1;
            if *slot < q {
                continue 'outer;
            }
            *slot = 0;
        }
        break;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: u64, coeffs: &[u64]) -> FpPoly {
        FpPoly::new(p, coeffs.to_vec())
    }

    #[test]
    fn fp_div_rem_roundtrip() {
        let f = fp(7, &[3, 0, 5, 0, 0, 1, 2]);
        let d = fp(7, &[4, 2, 1]);
        let (q, r) = f.div_rem(&d);
        assert_eq!(q.mul(&d).add(&r), f);
        assert!(r.degree().unwrap_or(0) < d.degree().unwrap());
    }

    #[test]
    fn fp_gcd_monic() {
        let a = fp(5, &[1, 1]).mul(&fp(5, &[2, 1])).mul_scalar(3);
        let b = fp(5, &[1, 1]).mul(&fp(5, &[3, 1])).mul_scalar(2);
        assert_eq!(a.gcd(&b), fp(5, &[1, 1]));
    }

    #[test]
    fn squarefree_decomposition_with_pth_power() {
        // (x^2 + 1)^3 over F_3 exercises the p-th power branch.
        let g = fp(3, &[1, 0, 1]);
        let f = g.mul(&g).mul(&g);
        assert_eq!(f.squarefree_decomposition(), vec![(g, 3)]);
        // (x + 1)^2 (x^2 + 1) over F_3.
        let f = fp(3, &[1, 1]).mul(&fp(3, &[1, 1])).mul(&fp(3, &[1, 0, 1]));
        let dec = f.squarefree_decomposition();
        assert_eq!(dec, vec![(fp(3, &[1, 0, 1]), 1), (fp(3, &[1, 1]), 2)]);
    }

    #[test]
    fn degree_partition_classic() {
        // x^4 + x = x (x + 1)(x^2 + x + 1) over F_2.
        let f = fp(2, &[0, 1, 0, 0, 1]);
        assert_eq!(f.degree_partition(), vec![1, 1, 2]);
        assert!(fp(2, &[1, 1, 1]).is_irreducible());
        assert!(!fp(2, &[1, 0, 1]).is_irreducible());
    }

    #[test]
    fn factor_over_f2_and_f5() {
        let f = fp(2, &[0, 1, 0, 0, 1]);
        let (unit, factors) = f.factor().unwrap();
        assert_eq!(unit, 1);
        assert_eq!(
            factors,
            vec![
                (fp(2, &[0, 1]), 1),
                (fp(2, &[1, 1]), 1),
                (fp(2, &[1, 1, 1]), 1)
            ]
        );
        // 3 (x + 2)^2 (x^2 + 2) over F_5.
        let f = fp(5, &[2, 1]).mul(&fp(5, &[2, 1])).mul(&fp(5, &[2, 0, 1])).mul_scalar(3);
        let (unit, factors) = f.factor().unwrap();
        assert_eq!(unit, 3);
        assert_eq!(factors, vec![(fp(5, &[2, 1]), 2), (fp(5, &[2, 0, 1]), 1)]);
    }

    #[test]
    fn irreducible_counts() {
        assert_eq!(count_monic_irreducibles(2, 1).unwrap(), BigUint::from(2u32));
        assert_eq!(count_monic_irreducibles(2, 2).unwrap(), BigUint::from(1u32));
        assert_eq!(count_monic_irreducibles(2, 3).unwrap(), BigUint::from(2u32));
        assert_eq!(count_monic_irreducibles(2, 4).unwrap(), BigUint::from(3u32));
        assert_eq!(count_monic_irreducibles(2, 6).unwrap(), BigUint::from(9u32));
        assert_eq!(count_monic_irreducibles(3, 6).unwrap(), BigUint::from(116u32));
        assert_eq!(count_monic_irreducibles(5, 6).unwrap(), BigUint::from(2580u32));
        assert!(count_monic_irreducibles(6, 2).is_err());
    }

    #[test]
    fn residue_field_f4() {
        let field = ResidueField::new(fp(2, &[1, 1, 1])).unwrap();
        assert_eq!(field.order(), BigUint::from(4u32));
        let t = fp(2, &[0, 1]);
        let t1 = fp(2, &[1, 1]);
        assert_eq!(field.mul(&t, &t), t1); // t^2 = t + 1
        assert_eq!(field.inv(&t).unwrap(), t1);
        assert_eq!(field.mul(&t, &t1), field.one());
        assert!(ResidueField::new(fp(2, &[1, 0, 1])).is_err()); // (x+1)^2
    }

    #[test]
    fn fq_poly_factor_over_f4() {
        let field = ResidueField::new(fp(2, &[1, 1, 1])).unwrap();
        // y^2 + y + 1 = (y + t)(y + t + 1) over F_4.
        let f = FqPoly::new(
            field.clone(),
            vec![field.one(), field.one(), field.one()],
        );
        assert!(f.is_separable());
        assert_eq!(f.degree_partition(), vec![1, 1]);
        let (unit, factors) = f.factor().unwrap();
        assert_eq!(unit, field.one());
        let t = fp(2, &[0, 1]);
        let t1 = fp(2, &[1, 1]);
        assert_eq!(factors.len(), 2);
        let roots: Vec<FpPoly> = factors.iter().map(|(g, _)| g.coeff(0)).collect();
        assert!(roots.contains(&t) && roots.contains(&t1));
        // Inseparable example: (y + 1)^2 over F_4.
        let g = FqPoly::new(field.clone(), vec![field.one(), field.one()]);
        assert!(!g.mul(&g).is_separable());
    }

    #[test]
    fn fq_display() {
        let field = ResidueField::new(fp(2, &[1, 1, 1])).unwrap();
        let t = fp(2, &[0, 1]);
        let f = FqPoly::new(field.clone(), vec![t, field.one(), field.one()]);
        assert_eq!(f.to_string(), "y^2 + y + (x)");
    }
}
