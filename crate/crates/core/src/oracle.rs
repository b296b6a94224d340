//! Brute-force cross-checks for the fast paths.
//!
//! Everything here recomputes a quantity the rest of the library obtains by a
//! shortcut: Dedekind's criterion instead of polygon bounds, an all-pairs
//! hull instead of the monotone chain, exhaustive lattice and polynomial
//! enumeration instead of closed formulas, and a Sylvester resultant instead
//! of the expanded discriminant. None of it is fast; all of it is simple
//! enough to trust.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::finite::FpPoly;
use crate::intpoly::{Trinomial, ZPoly};
use crate::newton::{NewtonPolygon, Side};
use crate::primes;

/// Outcome of one fast-path/oracle comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleVerdict {
    pub agrees: bool,
    pub fast_value: String,
    pub oracle_value: String,
    pub context: String,
}

impl OracleVerdict {
    pub fn compare(
        context: impl Into<String>,
        fast: impl std::fmt::Display,
        oracle: impl std::fmt::Display,
    ) -> Self {
        let fast_value = fast.to_string();
        let oracle_value = oracle.to_string();
        OracleVerdict {
            agrees: fast_value == oracle_value,
            fast_value,
            oracle_value,
            context: context.into(),
        }
    }
}

impl std::fmt::Display for OracleVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.agrees {
            write!(f, "{}: ok ({})", self.context, self.fast_value)
        } else {
            write!(
                f,
                "{}: MISMATCH fast={} oracle={}",
                self.context, self.fast_value, self.oracle_value
            )
        }
    }
}

/// Lift a mod-p polynomial to the integer polynomial with coefficients in
/// [0, p).
fn lift(f: &FpPoly) -> ZPoly {
    ZPoly::new(f.coeffs().iter().map(|&c| BigInt::from(c)).collect())
}

/// Dedekind's criterion: does p divide the index (Z_K : Z[alpha])?
///
/// With F = prod g_i^{e_i} mod p, put g = prod g_i and h = prod g_i^{e_i - 1}
/// (both lifted with coefficients in [0, p)); then T = (g*h - F)/p is an
/// integer polynomial and p divides the index exactly when gcd(T, g, h) is
/// nonconstant mod p.
pub fn dedekind_divides(f: &ZPoly, p: u64) -> Result<bool> {
    let fbar = f.to_fp(p)?;
    let (_, factors) = fbar.factor()?;
    let mut gbar = FpPoly::one(p);
    let mut hbar = FpPoly::one(p);
    for (irr, mult) in &factors {
        gbar = gbar.mul(irr);
        for _ in 1..*mult {
            hbar = hbar.mul(irr);
        }
    }
    let product = lift(&gbar).mul(&lift(&hbar));
    let diff = product.sub(f);
    let scale = BigInt::from(p);
    let t = ZPoly::new(
        diff.coeffs()
            .iter()
            .map(|c| {
                let (q, r) = c.div_rem(&scale);
                debug_assert!(r.is_zero());
                q
            })
            .collect(),
    );
    let gcd = t.to_fp(p)?.gcd(&gbar).gcd(&hbar);
    Ok(gcd.degree().unwrap_or(0) >= 1)
}

/// Lower convex hull by all-pairs slope selection, negative-slope part only.
/// INFINITY entries (None) contribute no point. Abscissas must be distinct.
pub fn hull_bruteforce(points: &[(usize, Option<u64>)]) -> NewtonPolygon {
    let mut finite: Vec<(usize, u64)> = points
        .iter()
        .filter_map(|&(x, v)| v.map(|y| (x, y)))
        .collect();
    finite.sort_unstable();
    let mut sides = Vec::new();
    if let Some(&first) = finite.first() {
        let mut cur = first;
        loop {
            // Among all points to the right, take the smallest slope; on a
            // tie the farthest, so collinear runs fuse into one side.
            let mut best: Option<(usize, u64)> = None;
            for &q in finite.iter().filter(|q| q.0 > cur.0) {
                match best {
                    None => best = Some(q),
                    Some(b) => {
                        // slope(q) < slope(b) without division:
                        // (q.y-cur.y)*(b.x-cur.x) vs (b.y-cur.y)*(q.x-cur.x)
                        let lhs = (q.1 as i128 - cur.1 as i128) * (b.0 - cur.0) as i128;
                        let rhs = (b.1 as i128 - cur.1 as i128) * (q.0 - cur.0) as i128;
                        if lhs < rhs || (lhs == rhs && q.0 > b.0) {
                            best = Some(q);
                        }
                    }
                }
            }
            match best {
                Some(next) if next.1 < cur.1 => {
                    sides.push(Side::new(cur, next));
                    cur = next;
                }
                _ => break,
            }
        }
    }
    NewtonPolygon::from_parts(sides, finite)
}

/// Lattice-point count by scanning the whole bounding box.
pub fn lattice_index_bruteforce(polygon: &NewtonPolygon, deg_phi: u64) -> u64 {
    let sides = polygon.sides();
    if sides.is_empty() {
        return 0;
    }
    let x_max = sides.last().unwrap().end().0;
    let y_max = sides.iter().map(|s| s.start().1).max().unwrap();
    let mut count = 0u64;
    for x in 1..=x_max {
        for y in 1..=y_max {
            let covered = sides.iter().any(|s| {
                let (x0, y0) = s.start();
                let (x1, y1) = s.end();
                if x < x0 || x > x1 {
                    return false;
                }
                // y <= y0 - (x-x0)*(y0-y1)/(x1-x0), denominators cleared.
                y as u128 * (x1 - x0) as u128
                    <= y0 as u128 * (x1 - x0) as u128 - (x - x0) as u128 * (y0 - y1) as u128
            });
            if covered {
                count += 1;
            }
        }
    }
    count * deg_phi
}

/// Determinant by fraction-free Gaussian elimination; all divisions exact.
fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign_flip = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, r);
            sign_flip = !sign_flip;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                let (q, r) = num.div_rem(&prev);
                debug_assert!(r.is_zero());
                m[i][j] = q;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign_flip {
        -det
    } else {
        det
    }
}

/// Resultant of f and g as the Sylvester determinant.
fn resultant(f: &ZPoly, g: &ZPoly) -> BigInt {
    let m = f.degree().expect("nonzero f");
    let n = g.degree().expect("nonzero g");
    let size = m + n;
    let mut matrix = vec![vec![BigInt::zero(); size]; size];
    for (row, slot) in matrix.iter_mut().take(n).enumerate() {
        for k in 0..=m {
            slot[row + k] = f.coeff(m - k);
        }
    }
    for (i, slot) in matrix.iter_mut().skip(n).enumerate() {
        for k in 0..=n {
            slot[i + k] = g.coeff(n - k);
        }
    }
    bareiss_determinant(matrix)
}

/// Discriminant of a monic polynomial as (-1)^(n(n-1)/2) Res(F, F').
pub fn polynomial_discriminant(f: &ZPoly) -> BigInt {
    assert!(f.is_monic(), "discriminant of a monic polynomial");
    let n = f.degree().unwrap();
    assert!(n >= 2);
    let r = resultant(f, &f.derivative());
    if (n * (n - 1) / 2) % 2 == 1 {
        -r
    } else {
        r
    }
}

/// Discriminant as -Res(F, F') for the monic sextic F, computed without ever
/// expanding the closed form.
pub fn discriminant_resultant(t: &Trinomial) -> BigInt {
    polynomial_discriminant(&t.polynomial())
}

/// Count monic irreducibles of degree f over F_p by enumerating all p^f
/// candidates and trial-dividing by everything of degree at most f/2.
pub fn irreducible_count_bruteforce(p: u64, f: u32) -> Result<u64> {
    if !primes::is_prime_u64(p) {
        return Err(Error::InvalidPrime(p));
    }
    assert!(f >= 1, "degree must be positive");
    let total = (p as u128).checked_pow(f).filter(|&t| t <= 15625);
    let Some(total) = total else {
        return Err(Error::TooLarge(format!(
            "enumerating p^f = {p}^{f} monic polynomials"
        )));
    };
    let mut divisors: Vec<FpPoly> = Vec::new();
    for d in 1..=(f / 2) {
        divisors.extend(all_monic(p, d));
    }
    let mut count = 0u64;
    for i in 0..total {
        let cand = nth_monic(p, f, i);
        if !divisors.iter().any(|d| d.divides(&cand)) {
            count += 1;
        }
    }
    Ok(count)
}

/// All monic polynomials of degree d over F_p, in base-p counter order.
fn all_monic(p: u64, d: u32) -> Vec<FpPoly> {
    (0..(p as u128).pow(d))
        .map(|i| nth_monic(p, d, i))
        .collect()
}

/// The i-th monic polynomial of degree d over F_p: low coefficients are the
/// base-p digits of i.
fn nth_monic(p: u64, d: u32, mut i: u128) -> FpPoly {
    let mut coeffs = vec![0u64; d as usize + 1];
    for slot in coeffs.iter_mut().take(d as usize) {
        *slot = (i % p as u128) as u64;
        i /= p as u128;
    }
    coeffs[d as usize] = 1;
    FpPoly::new(p, coeffs)
}

/// Absolute bound used by the small-factor searches in tests: any factor of a
/// monic sextic with |a|, |b| below the box bound has coefficients well under
/// this.
pub fn has_factor_of_degree(f: &ZPoly, d: usize, coeff_bound: i64) -> bool {
    assert!(d >= 1 && d < f.degree().unwrap_or(0));
    let mut coeffs = vec![-coeff_bound; d];
    loop {
        let mut cand: Vec<BigInt> = coeffs.iter().map(|&c| BigInt::from(c)).collect();
        cand.push(BigInt::one());
        let cand = ZPoly::new(cand);
        if let Ok((_, r)) = f.div_rem_monic(&cand) {
            if r.is_zero() {
                return true;
            }
        }
        let mut k = 0;
        loop {
            if k == d {
                return false;
            }
            coeffs[k] += 1;
            if coeffs[k] <= coeff_bound {
                break;
            }
            coeffs[k] = -coeff_bound;
            k += 1;
        }
    }
}
