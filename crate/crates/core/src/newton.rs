//! Phi-adic expansions and principal Newton polygons.
//!
//! Fix a prime p and a monic polynomial phi of degree >= 1 whose reduction
//! mod p is irreducible. Repeated Euclidean division writes any F as
//!
//! ```text
//! F(x) = a_0(x) + a_1(x)*phi(x) + ... + a_l(x)*phi(x)^l,    deg a_i < deg phi,
//! ```
//!
//! and the points (i, u_i) with u_i the Gauss valuation of a_i(x) determine
//! the phi-Newton polygon: the lower convex envelope of the finite points.
//! Its negative-slope part is the principal polygon. Each side S carries a
//! length l (x-projection), a height h (y-projection), a degree d = gcd(l, h)
//! and a slope -h/e in lowest terms, so l = e*d. The residual polynomial of S
//! collects the on-side digits, scaled down by their exact power of p, into a
//! degree-d polynomial over F_phi = F_p[x]/(phi). Separability of every
//! residual is the regularity condition under which the polygon data alone
//! decides the p-adic factorization and the index contribution
//!
//! ```text
//! ind_phi(F) = deg(phi) * #{ (x, y) : x >= 1, y >= 1, (x, y) on or below N+ }.
//! ```

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use std::fmt;

use crate::error::{Error, Result};
use crate::finite::{FqPoly, ResidueField};
use crate::intpoly::{Valuation, ZPoly};
use crate::primes;

/// The digit sequence of F in base phi, tagged with the prime used for
/// valuations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiExpansion {
    phi: ZPoly,
    base_prime: u64,
    digits: Vec<ZPoly>,
}

/// Digit sequence of `f` in base `phi`: quotients of repeated division.
pub fn phi_expand(f: &ZPoly, phi: &ZPoly, p: u64) -> Result<PhiExpansion> {
    PhiExpansion::new(f, phi, p)
}

impl PhiExpansion {
    pub fn new(f: &ZPoly, phi: &ZPoly, p: u64) -> Result<Self> {
        if !phi.is_monic() {
            return Err(Error::NonMonicDivisor);
        }
        if phi.degree() == Some(0) {
            return Err(Error::DegenerateInput);
        }
        if !primes::is_prime_u64(p) {
            return Err(Error::InvalidPrime(p));
        }
        let mut digits = Vec::new();
        let mut rest = f.clone();
        while !rest.is_zero() {
            let (q, r) = rest.div_rem_monic(phi)?;
            digits.push(r);
            rest = q;
        }
        if digits.is_empty() {
            digits.push(ZPoly::zero());
        }
        Ok(PhiExpansion {
            phi: phi.clone(),
            base_prime: p,
            digits,
        })
    }

    pub fn phi(&self) -> &ZPoly {
        &self.phi
    }

    pub fn base_prime(&self) -> u64 {
        self.base_prime
    }

    /// Digits a_0, ..., a_l in ascending order; a_l is nonzero unless F was.
    pub fn digits(&self) -> &[ZPoly] {
        &self.digits
    }

    pub fn digit(&self, i: usize) -> ZPoly {
        self.digits.get(i).cloned().unwrap_or_else(ZPoly::zero)
    }

    /// Gauss valuation of each digit; Infinite marks zero digits.
    pub fn valuations(&self) -> Vec<Valuation> {
        self.digits
            .iter()
            .map(|a| a.gauss_valuation(self.base_prime))
            .collect()
    }

    /// Horner evaluation of the digit sequence back at phi.
    pub fn reconstruct(&self) -> ZPoly {
        let mut acc = ZPoly::zero();
        for digit in self.digits.iter().rev() {
            acc = acc.mul(&self.phi).add(digit);
        }
        acc
    }
}

/// One negative-slope side of a principal polygon, stored by its endpoints.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Side {
    start: (usize, u64),
    end: (usize, u64),
}

impl Side {
    /// Endpoints must descend strictly left to right.
    pub(crate) fn new(start: (usize, u64), end: (usize, u64)) -> Self {
        assert!(start.0 < end.0 && start.1 > end.1, "side must fall");
        Side { start, end }
    }

    pub fn start(&self) -> (usize, u64) {
        self.start
    }

    pub fn end(&self) -> (usize, u64) {
        self.end
    }

    /// Projection onto the x-axis.
    pub fn length(&self) -> u64 {
        (self.end.0 - self.start.0) as u64
    }

    /// Projection onto the y-axis.
    pub fn height(&self) -> u64 {
        self.start.1 - self.end.1
    }

    /// gcd(length, height); the residual polynomial has this degree.
    pub fn degree(&self) -> u64 {
        self.length().gcd(&self.height())
    }

    /// Denominator e of the reduced slope -h/e.
    pub fn ramification(&self) -> u64 {
        self.length() / self.degree()
    }

    /// Numerator h of the reduced slope -h/e.
    pub fn slope_height(&self) -> u64 {
        self.height() / self.degree()
    }

    /// The slope as a reduced fraction (-h, e).
    pub fn slope(&self) -> (i64, u64) {
        (-(self.slope_height() as i64), self.ramification())
    }

    /// Whether (x, y) lies exactly on the segment (inclusive of endpoints).
    pub fn contains(&self, x: usize, y: u64) -> bool {
        if x < self.start.0 || x > self.end.0 {
            return false;
        }
        let dx = (x - self.start.0) as u64;
        // y == y0 - dx*h/l, cleared of denominators.
        y * self.length() + dx * self.height() == self.start.1 * self.length()
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {})-({}, {}) slope -{}/{}",
            self.start.0,
            self.start.1,
            self.end.0,
            self.end.1,
            self.slope_height(),
            self.ramification()
        )
    }
}

/// Principal part of a Newton polygon: the negative-slope sides of the lower
/// convex envelope, plus the finite valuation points they were built from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolygon {
    sides: Vec<Side>,
    source_points: Vec<(usize, u64)>,
}

impl NewtonPolygon {
    /// Lower hull by monotone chain over points sorted by abscissa, then the
    /// strictly falling prefix. Points must have pairwise distinct abscissas.
    pub fn from_points(points: Vec<(usize, u64)>) -> Self {
        let mut pts = points;
        pts.sort_unstable();
        let mut hull: Vec<(usize, u64)> = Vec::new();
        for &q in &pts {
            while hull.len() >= 2 {
                let o = hull[hull.len() - 2];
                let a = hull[hull.len() - 1];
                // Keep only strict right turns: collinear middles are dropped.
                let lhs = (a.0 - o.0) as i128 * (q.1 as i128 - o.1 as i128);
                let rhs = (a.1 as i128 - o.1 as i128) * (q.0 - o.0) as i128;
                if lhs <= rhs {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push(q);
        }
        let mut sides = Vec::new();
        for w in hull.windows(2) {
            if w[1].1 < w[0].1 {
                sides.push(Side::new(w[0], w[1]));
            } else {
                break;
            }
        }
        NewtonPolygon {
            sides,
            source_points: pts,
        }
    }

    pub(crate) fn from_parts(sides: Vec<Side>, source_points: Vec<(usize, u64)>) -> Self {
        NewtonPolygon {
            sides,
            source_points,
        }
    }

    /// Sides ordered by increasing slope.
    pub fn sides(&self) -> &[Side] {
        &self.sides
    }

    /// The finite valuation points the polygon was built from.
    pub fn source_points(&self) -> &[(usize, u64)] {
        &self.source_points
    }

    pub fn is_empty(&self) -> bool {
        self.sides.is_empty()
    }

    /// Total height, i.e. the valuation drop across all sides.
    pub fn height(&self) -> u64 {
        self.sides.iter().map(Side::height).sum()
    }
}

impl fmt::Display for NewtonPolygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sides.is_empty() {
            return write!(f, "empty");
        }
        for (k, s) in self.sides.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// Negative-slope part of the lower convex envelope of the expansion's
/// valuation points. Zero digits contribute no point.
pub fn principal_polygon(e: &PhiExpansion) -> Result<NewtonPolygon> {
    if e.digits.len() <= 1 {
        return Err(Error::DegenerateInput);
    }
    let p = e.base_prime;
    let mut points = Vec::new();
    for (i, a) in e.digits.iter().enumerate() {
        if let Some(u) = a.gauss_valuation(p).finite() {
            points.push((i, u as u64));
        }
    }
    Ok(NewtonPolygon::from_points(points))
}

/// Residual polynomial of a side: the on-side digits, divided by their exact
/// power of p and reduced mod (p, phi), laid out as a degree-d polynomial
/// over F_phi.
pub fn residual_polynomial(e: &PhiExpansion, side: &Side) -> Result<FqPoly> {
    let polygon = principal_polygon(e)?;
    if !polygon.sides().contains(side) {
        return Err(Error::InvalidSide);
    }
    let p = e.base_prime;
    let field = ResidueField::new(e.phi.to_fp(p)?)?;
    let d = side.degree();
    let e_ram = side.ramification();
    let h_red = side.slope_height();
    let mut coeffs = Vec::with_capacity(d as usize + 1);
    for i in 0..=d {
        let j = side.start.0 + (i * e_ram) as usize;
        let line_val = side.start.1 - i * h_red;
        let digit = e.digit(j);
        let on_side = digit.gauss_valuation(p).finite() == Some(line_val as u32);
        if on_side {
            coeffs.push(field.reduce(&exact_shift_down(&digit, p, line_val).to_fp(p)?));
        } else {
            coeffs.push(field.zero());
        }
    }
    let r = FqPoly::new(field, coeffs);
    debug_assert_eq!(r.degree(), Some(d as usize));
    debug_assert!(!r.coeff(0).is_zero());
    Ok(r)
}

/// Divide every coefficient by p^k; exact by construction on on-side digits.
fn exact_shift_down(a: &ZPoly, p: u64, k: u64) -> ZPoly {
    let scale = BigInt::from(p).pow(k as u32);
    ZPoly::new(
        a.coeffs()
            .iter()
            .map(|c| {
                let (q, r) = c.div_rem(&scale);
                debug_assert!(r.is_zero());
                q
            })
            .collect(),
    )
}

/// deg(phi) times the number of lattice points with x >= 1, y >= 1 lying on
/// or below the polygon. Zero for an empty polygon.
pub fn phi_index(polygon: &NewtonPolygon, deg_phi: u64) -> u64 {
    let sides = polygon.sides();
    let (Some(first), Some(last)) = (sides.first(), sides.last()) else {
        return 0;
    };
    let mut count = 0u64;
    for x in first.start().0.max(1)..=last.end().0 {
        let side = sides
            .iter()
            .find(|s| s.start().0 <= x && x <= s.end().0)
            .expect("columns are covered by consecutive sides");
        let (x0, y0) = side.start();
        let dx = (x - x0) as u64;
        // floor(y0 - dx*h/l) counts y = 1..bound.
        let bound = (y0 * side.length() - dx * side.height()) / side.length();
        count += bound;
    }
    count * deg_phi
}

/// Whether every side of the principal polygon has a separable residual
/// polynomial. Over a finite field separable and squarefree coincide, so this
/// is the condition under which the polygon determines the factorization.
pub fn is_phi_regular(f: &ZPoly, phi: &ZPoly, p: u64) -> Result<bool> {
    let fbar = f.to_fp(p)?;
    let phibar = phi.to_fp(p)?;
    if phibar.degree().unwrap_or(0) < 1 || !phibar.divides(&fbar) {
        return Err(Error::IrrelevantModulus(format!(
            "{phibar} does not divide {fbar} mod {p}"
        )));
    }
    let e = PhiExpansion::new(f, phi, p)?;
    let polygon = principal_polygon(&e)?;
    for side in polygon.sides() {
        if !residual_polynomial(&e, side)?.is_separable() {
            return Ok(false);
        }
    }
    Ok(true)
}
