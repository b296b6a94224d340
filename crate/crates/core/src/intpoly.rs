//! Exact arithmetic over Z for the family x^6 + a x^5 + b.
//!
//! The basic objects are a p-adic valuation nu_p on Z (with nu_p(0) = infinity
//! and a unit part m / p^nu_p(m) for m != 0), dense polynomials over Z, and the
//! trinomial itself. A trinomial is *reduced* when no prime p satisfies both
//! p | a and p^6 | b; otherwise x -> p x rescales it to (a/p, b/p^6) without
//! changing the field, and `reduce` applies that rule to exhaustion.
//!
//! The discriminant of x^6 + a x^5 + b is
//!
//! ```text
//! disc = -b^4 (6^6 b - 5^5 a^6),
//! ```
//!
//! so the interesting primes are those dividing b or 6^6 b - 5^5 a^6.
//! Irreducibility over Q is decided exactly: rational roots come from divisors
//! of b, degree partitions modulo the first 25 primes cut down the possible
//! factor degrees, and any surviving degree 2 or 3 is settled by a finite
//! divisor-driven search (a monic factor G has G(0) | b, G(1) | F(1) and
//! G(-1) | F(-1), which pins down its coefficients).

use crate::error::{Error, Result};
use crate::finite::FpPoly;
use crate::primes;
use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Value of nu_p, with nu_p(0) = infinity. Orders the way valuations should:
/// every finite value is below `Infinite`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(u32),
    Infinite,
}

impl Valuation {
    /// The finite value, or None for nu_p(0).
    pub fn finite(self) -> Option<u32> {
        match self {
            Valuation::Finite(k) => Some(k),
            Valuation::Infinite => None,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(k) => write!(f, "{k}"),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

/// nu_p(m) for prime p. Errors if p is not prime.
pub fn valuation(p: u64, m: &BigInt) -> Result<Valuation> {
    if !primes::is_prime_u64(p) {
        return Err(Error::InvalidPrime(p));
    }
    Ok(vp(p, m))
}

/// m / p^nu_p(m) for nonzero m, keeping the sign of m. Errors on m = 0 or
/// non-prime p.
pub fn unit_part(p: u64, m: &BigInt) -> Result<BigInt> {
    if !primes::is_prime_u64(p) {
        return Err(Error::InvalidPrime(p));
    }
    if m.is_zero() {
        return Err(Error::ZeroValue);
    }
    Ok(vp_with_unit(p, m).1)
}

/// nu_p without the primality check, for internal use on known primes.
pub(crate) fn vp(p: u64, m: &BigInt) -> Valuation {
    if m.is_zero() {
        return Valuation::Infinite;
    }
    if p == 2 {
        return Valuation::Finite(m.trailing_zeros().unwrap_or(0) as u32);
    }
    let bp = BigInt::from(p);
    let mut n = m.abs();
    let mut k = 0u32;
    loop {
        let (q, r) = n.div_rem(&bp);
        if r.is_zero() {
            n = q;
            k += 1;
        } else {
            return Valuation::Finite(k);
        }
    }
}

/// (nu_p(m), m / p^nu_p(m)); the unit slot is 0 when m = 0.
pub(crate) fn vp_with_unit(p: u64, m: &BigInt) -> (Valuation, BigInt) {
    if m.is_zero() {
        return (Valuation::Infinite, BigInt::zero());
    }
    let bp = BigInt::from(p);
    let mut n = m.clone();
    let mut k = 0u32;
    loop {
        let (q, r) = n.div_rem(&bp);
        if r.is_zero() {
            n = q;
            k += 1;
        } else {
            return (Valuation::Finite(k), n);
        }
    }
}

/// Dense polynomial over Z, coefficients stored ascending by degree with no
/// trailing zeros (so the zero polynomial is the empty vector).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ZPoly {
    coeffs: Vec<BigInt>,
}

impl ZPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        ZPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        ZPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        ZPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        ZPoly::new(vec![BigInt::one()])
    }

    /// The monomial c * x^k.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        if c.is_zero() {
            return ZPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        ZPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of x^k (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().map_or(false, |c| c.is_one())
    }

    pub fn add(&self, other: &ZPoly) -> ZPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) + other.coeff(k));
        }
        ZPoly::new(out)
    }

    pub fn sub(&self, other: &ZPoly) -> ZPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) - other.coeff(k));
        }
        ZPoly::new(out)
    }

    pub fn neg(&self) -> ZPoly {
        ZPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, other: &ZPoly) -> ZPoly {
        if self.is_zero() || other.is_zero() {
            return ZPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ZPoly::new(out)
    }

    pub fn mul_scalar(&self, c: &BigInt) -> ZPoly {
        ZPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, mut e: u32) -> ZPoly {
        let mut base = self.clone();
        let mut acc = ZPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Quotient and remainder on division by a monic divisor; exact over Z.
    pub fn div_rem_monic(&self, divisor: &ZPoly) -> Result<(ZPoly, ZPoly)> {
        if !divisor.is_monic() {
            return Err(Error::NonMonicDivisor);
        }
        let d = divisor.degree().expect("monic divisor is nonzero");
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return Ok((ZPoly::zero(), self.clone()));
        }
        let mut quo = vec![BigInt::zero(); rem.len() - d];
        for i in (d..rem.len()).rev() {
            let c = std::mem::replace(&mut rem[i], BigInt::zero());
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().take(d).enumerate() {
                let prod = &c * dc;
                rem[i - d + j] -= prod;
            }
            quo[i - d] = c;
        }
        rem.truncate(d);
        Ok((ZPoly::new(quo), ZPoly::new(rem)))
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> ZPoly {
        if self.coeffs.len() <= 1 {
            return ZPoly::zero();
        }
        ZPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
    }

    /// Substitute x -> x + c.
    pub fn shift(&self, c: &BigInt) -> ZPoly {
        // Horner: f(x + c) built from the top coefficient down.
        let mut acc = ZPoly::zero();
        let x_plus_c = ZPoly::new(vec![c.clone(), BigInt::one()]);
        for coeff in self.coeffs.iter().rev() {
            acc = acc.mul(&x_plus_c).add(&ZPoly::new(vec![coeff.clone()]));
        }
        acc
    }

    /// min over coefficients of nu_p; Infinite for the zero polynomial.
    pub fn gauss_valuation(&self, p: u64) -> Valuation {
        self.coeffs
            .iter()
            .map(|c| vp(p, c))
            .min()
            .unwrap_or(Valuation::Infinite)
    }

    /// Reduction mod p as a polynomial over F_p.
    pub fn to_fp(&self, p: u64) -> Result<FpPoly> {
        if !primes::is_prime_u64(p) {
            return Err(Error::InvalidPrime(p));
        }
        Ok(FpPoly::from_zpoly(p, self))
    }
}

impl fmt::Display for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit_coeff = mag.is_one();
            match (k, unit_coeff) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{mag}*x")?,
                (_, true) => write!(f, "x^{k}")?,
                (_, false) => write!(f, "{mag}*x^{k}")?,
            }
        }
        Ok(())
    }
}

/// disc(x^6 + a x^5 + b) = -b^4 (6^6 b - 5^5 a^6), valid for all a, b.
pub fn trinomial_discriminant(a: &BigInt, b: &BigInt) -> BigInt {
    -b.pow(4) * (BigInt::from(46656) * b - BigInt::from(3125) * a.pow(6))
}

/// The monic sextic x^6 + a x^5 + b with b != 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Trinomial {
    a: BigInt,
    b: BigInt,
}

impl Trinomial {
    /// Errors with `DegenerateInput` when b = 0 (then x | F and F is not a
    /// field generator).
    pub fn new(a: BigInt, b: BigInt) -> Result<Self> {
        if b.is_zero() {
            return Err(Error::DegenerateInput);
        }
        Ok(Trinomial { a, b })
    }

    pub fn from_i64(a: i64, b: i64) -> Result<Self> {
        Trinomial::new(BigInt::from(a), BigInt::from(b))
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn polynomial(&self) -> ZPoly {
        ZPoly::new(vec![
            self.b.clone(),
            BigInt::zero(),
            BigInt::zero(),
            BigInt::zero(),
            BigInt::zero(),
            self.a.clone(),
            BigInt::one(),
        ])
    }

    pub fn discriminant(&self) -> BigInt {
        trinomial_discriminant(&self.a, &self.b)
    }

    /// The factor 6^6 b - 5^5 a^6 of the discriminant; primes outside {2, 3, 5}
    /// and not dividing b ramify exactly when they divide this.
    pub fn discriminant_factor(&self) -> BigInt {
        BigInt::from(46656) * &self.b - BigInt::from(3125) * self.a.pow(6)
    }

    /// True when no prime p has p | a and p^6 | b.
    pub fn is_reduced(&self) -> bool {
        self.reduce() == *self
    }

    /// Apply x -> p x, dividing (a, b) by (p, p^6), until no prime admits it.
    /// Candidate primes must divide gcd(a, b) (or b when a = 0), so we factor
    /// that gcd instead of sweeping a prime range.
    pub fn reduce(&self) -> Trinomial {
        let mut a = self.a.clone();
        let mut b = self.b.clone();
        loop {
            let g: BigUint = if a.is_zero() {
                b.magnitude().clone()
            } else {
                a.magnitude().gcd(b.magnitude())
            };
            if g <= BigUint::one() {
                break;
            }
            let mut applied = false;
            for (p, _) in primes::factor(&g) {
                let bp = BigInt::from_biguint(Sign::Plus, p);
                let p6 = bp.pow(6);
                if (&b % &p6).is_zero() && (a.is_zero() || (&a % &bp).is_zero()) {
                    a /= &bp;
                    b /= &p6;
                    applied = true;
                    break;
                }
            }
            if !applied {
                break;
            }
        }
        Trinomial { a, b }
    }

    /// Exact irreducibility over Q.
    ///
    /// Stage 1 removes rational roots (divisors of b). Stage 2 intersects the
    /// achievable factor degrees {2, 3} against subset sums of the factor
    /// degree partition mod p for the first 25 primes; an empty intersection
    /// or a partition equal to {6} is a proof. Stage 3 closes the remaining
    /// cases by finite search: a monic quadratic or cubic factor G satisfies
    /// G(0) | b, G(1) | F(1), G(-1) | F(-1), which determines finitely many
    /// candidates, each checked by exact division.
    pub fn is_irreducible(&self) -> bool {
        let f = self.polynomial();
        // Degree-1 factors.
        for d in primes::divisors(self.b.magnitude()) {
            let d = BigInt::from_biguint(Sign::Plus, d);
            if f.eval(&d).is_zero() || f.eval(&(-&d)).is_zero() {
                return false;
            }
        }
        // Factor degrees still possible after the root check.
        let mut candidates: Vec<usize> = vec![2, 3];
        for p in primes::FIRST_PRIMES {
            let partition = FpPoly::from_zpoly(p, &f).degree_partition();
            if partition == [6] {
                return true;
            }
            let sums = subset_sums(&partition);
            candidates.retain(|&d| sums & (1u16 << d) != 0);
            if candidates.is_empty() {
                return true;
            }
        }
        if candidates.contains(&2) && self.quadratic_factor(&f).is_some() {
            return false;
        }
        if candidates.contains(&3) && self.cubic_factor(&f).is_some() {
            return false;
        }
        true
    }

    fn quadratic_factor(&self, f: &ZPoly) -> Option<ZPoly> {
        let one = BigInt::one();
        let f1 = f.eval(&one);
        let fm1 = f.eval(&(-&one));
        // Neither vanishes: rational roots were excluded.
        for c0 in signed_divisors(&self.b) {
            for g1 in signed_divisors(&f1) {
                // g1 = G(1) = 1 + c1 + c0 determines c1.
                let c1 = &g1 - &one - &c0;
                let gm1 = &one - &c1 + &c0;
                if gm1.is_zero() || !(&fm1 % &gm1).is_zero() {
                    continue;
                }
                let g = ZPoly::new(vec![c0.clone(), c1, one.clone()]);
                if let Ok((_, rem)) = f.div_rem_monic(&g) {
                    if rem.is_zero() {
                        return Some(g);
                    }
                }
            }
        }
        None
    }

    fn cubic_factor(&self, f: &ZPoly) -> Option<ZPoly> {
        let one = BigInt::one();
        let two = BigInt::from(2);
        let f1 = f.eval(&one);
        let fm1 = f.eval(&(-&one));
        for c0 in signed_divisors(&self.b) {
            for g1 in signed_divisors(&f1) {
                for gm1 in signed_divisors(&fm1) {
                    // G(1) = 1 + c2 + c1 + c0 and G(-1) = -1 + c2 - c1 + c0
                    // solve linearly for (c1, c2); both sums must be even.
                    let sum = &g1 + &gm1; // 2 c2 + 2 c0
                    let diff = &g1 - &gm1; // 2 + 2 c1
                    if sum.is_odd() || diff.is_odd() {
                        continue;
                    }
                    let c2 = sum / &two - &c0;
                    let c1 = diff / &two - &one;
                    let g = ZPoly::new(vec![c0.clone(), c1, c2, one.clone()]);
                    if let Ok((_, rem)) = f.div_rem_monic(&g) {
                        if rem.is_zero() {
                            return Some(g);
                        }
                    }
                }
            }
        }
        None
    }
}

impl fmt::Display for Trinomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.polynomial())
    }
}

// Decimal strings rather than JSON numbers: a and b are unbounded.
impl serde::Serialize for Trinomial {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("Trinomial", 2)?;
        s.serialize_field("a", &self.a.to_string())?;
        s.serialize_field("b", &self.b.to_string())?;
        s.end()
    }
}

/// Bitmask of subset sums of a multiset of degrees summing to <= 15.
fn subset_sums(parts: &[usize]) -> u16 {
    let mut mask: u16 = 1;
    for &d in parts {
        mask |= mask << d;
    }
    mask
}

/// All divisors of n together with their negatives; n must be nonzero.
fn signed_divisors(n: &BigInt) -> Vec<BigInt> {
    let mut out = Vec::new();
    for d in primes::divisors(n.magnitude()) {
        let d = BigInt::from_biguint(Sign::Plus, d);
        out.push(-&d);
        out.push(d);
    }
    out
}
