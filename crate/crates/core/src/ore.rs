//! Index bounds and splitting types from Newton polygon data.
//!
//! For a monic sextic F and a prime p, factor F mod p into powers of monic
//! irreducibles and pick a monic lift phi of each factor. Summing the phi
//! indices of the principal polygons bounds the index valuation from below:
//!
//! ```text
//! nu_p((Z_K : Z[alpha])) >= sum_i ind_{phi_i}(F),
//! ```
//!
//! with equality when every residual polynomial is separable (F is then
//! p-regular). In the regular case the polygons also decide the splitting of
//! p: a side of slope -h/e contributes one prime with ramification e and
//! residue degree deg(phi) * deg(psi) for each irreducible residual factor
//! psi, and a simple factor of F mod p contributes one unramified prime of
//! residue degree deg(phi).
//!
//! Regularity can fail for a linear phi = x - z in a repairable way: when a
//! side has integer slope -k and its residual has a unique double root t,
//! replacing z by z + p^k t moves every root tracked by that residual factor
//! at least one level deeper p-adically and eventually lands on a regular
//! lift, either by separating the roots or by turning the slope fractional.
//! Two roots cannot stay together past half the discriminant valuation,
//! which bounds the search. That is the regular-integer iteration; each step
//! is a different lift of the same residue class, so the final polygon data
//! is exact, not just a bound.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;
use std::fmt;

use crate::error::{Error, Result};
use crate::finite::{FpPoly, FqPoly};
use crate::intpoly::{vp, ZPoly};
use crate::newton::{phi_index, principal_polygon, residual_polynomial, NewtonPolygon, PhiExpansion, Side};
use crate::oracle;

/// Ramification/residue-degree pairs for the primes above p, sorted by
/// (f, e). `determined` is false when some residual was inseparable and the
/// polygon data only bounds the index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplittingType {
    entries: Vec<(u32, u32)>,
    determined: bool,
}

impl SplittingType {
    /// A fully determined splitting; entries are (e, f) pairs.
    pub fn determined(mut entries: Vec<(u32, u32)>) -> Self {
        entries.sort_by_key(|&(e, f)| (f, e));
        SplittingType {
            entries,
            determined: true,
        }
    }

    pub fn undetermined() -> Self {
        SplittingType {
            entries: Vec::new(),
            determined: false,
        }
    }

    /// (e, f) per prime, sorted by (f, e).
    pub fn entries(&self) -> &[(u32, u32)] {
        &self.entries
    }

    pub fn is_determined(&self) -> bool {
        self.determined
    }

    /// Number of primes with residue degree exactly f.
    pub fn primes_with_residue_degree(&self, f: u32) -> usize {
        self.entries.iter().filter(|&&(_, rf)| rf == f).count()
    }

    /// Sum of e*f over all entries; 6 for a determined sextic splitting.
    pub fn total_degree(&self) -> u32 {
        self.entries.iter().map(|&(e, f)| e * f).sum()
    }
}

impl fmt::Display for SplittingType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.determined {
            return write!(f, "undetermined");
        }
        write!(f, "{{")?;
        for (k, (e, rf)) in self.entries.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "({e}, {rf})")?;
        }
        write!(f, "}}")
    }
}

/// One side of a principal polygon with its residual polynomial.
#[derive(Clone, Debug)]
pub struct SideAnalysis {
    pub side: Side,
    pub residual: FqPoly,
    pub separable: bool,
}

/// Everything the engine learned about one mod-p factor.
#[derive(Clone, Debug)]
pub struct PhiAnalysis {
    /// The lift actually analyzed; for linear factors this is x - s after any
    /// regular-integer shifts.
    pub phi: ZPoly,
    /// Multiplicity of the factor in F mod p.
    pub multiplicity: u32,
    pub polygon: NewtonPolygon,
    pub sides: Vec<SideAnalysis>,
    /// ind_phi(F), this factor's summand in the index bound.
    pub index_contribution: u64,
    /// All residuals separable.
    pub regular: bool,
    /// Why the splitting over this factor stays undetermined, if it does.
    pub blocked: Option<String>,
}

/// Aggregate result of the per-factor analyses at one prime.
#[derive(Clone, Debug)]
pub struct OreOutcome {
    pub p: u64,
    /// Sum of the phi indices; equals nu_p of the index when regular.
    pub index_lower_bound: u64,
    pub regular: bool,
    /// Populated exactly when regular.
    pub splitting: SplittingType,
    pub diagnostics: Vec<PhiAnalysis>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum ShiftMode {
    /// Only the catalogued repair: integer slope, unique double root.
    Strict,
    /// Also shift on a unique root of higher multiplicity (the wildly
    /// inseparable five-adic configurations).
    Relaxed,
}

/// Monic lift with coefficients in [0, p); linear factors are lifted as
/// x - z with the root z in [0, p), which keeps the shift bookkeeping plain.
fn lift_factor(phibar: &FpPoly) -> ZPoly {
    let p = phibar.modulus();
    if phibar.degree() == Some(1) {
        let z = (p - phibar.coeff(0)) % p;
        ZPoly::new(vec![BigInt::from(-(z as i64)), BigInt::from(1)])
    } else {
        ZPoly::new(phibar.coeffs().iter().map(|&c| BigInt::from(c)).collect())
    }
}

fn analyze_phi(f: &ZPoly, phi: &ZPoly, p: u64, multiplicity: u32) -> Result<PhiAnalysis> {
    let expansion = PhiExpansion::new(f, phi, p)?;
    let polygon = principal_polygon(&expansion)?;
    let deg_phi = phi.degree().unwrap() as u64;
    let index_contribution = phi_index(&polygon, deg_phi);
    let mut sides = Vec::new();
    let mut regular = true;
    for side in polygon.sides() {
        let residual = residual_polynomial(&expansion, side)?;
        let separable = residual.is_separable();
        regular &= separable;
        sides.push(SideAnalysis {
            side: *side,
            residual,
            separable,
        });
    }
    Ok(PhiAnalysis {
        phi: phi.clone(),
        multiplicity,
        polygon,
        sides,
        index_contribution,
        regular,
        blocked: None,
    })
}

/// The root to shift towards, if the failing side is repairable in the given
/// mode. Residuals here live over the prime field (deg phi = 1). Detection
/// goes through the full factorization: gcd with the derivative would lose
/// the double root whenever p divides its multiplicity.
fn refinement_root(residual: &FqPoly, mode: ShiftMode) -> Option<u64> {
    let field = residual.field().clone();
    let (_, factors) = residual.factor().ok()?;
    let mut repeated = factors.iter().filter(|(_, m)| *m >= 2);
    let (factor, multiplicity) = repeated.next()?;
    // Irreducible factors over a finite field are separable on their own, so
    // the only obstruction is the repeated part: it must be one linear
    // factor, squared in strict mode.
    if repeated.next().is_some() || factor.degree() != Some(1) {
        return None;
    }
    if mode == ShiftMode::Strict && *multiplicity != 2 {
        return None;
    }
    Some(field.neg(&factor.coeff(0)).coeff(0))
}

/// Iteration budget for the shift search: every step drives the pair of
/// roots behind the double residual root at least one level deeper, and two
/// distinct roots agree to at most half the discriminant valuation.
fn shift_cap(f: &ZPoly, p: u64) -> Result<u64> {
    let disc = oracle::polynomial_discriminant(f);
    if disc.is_zero() {
        return Err(Error::InvalidPolynomial(
            "zero discriminant: polynomial is not squarefree".to_string(),
        ));
    }
    let v = vp(p, &disc).finite().expect("nonzero discriminant") as u64;
    Ok(v / 2 + 1)
}

struct LinearRefinement {
    shift: BigInt,
    analysis: PhiAnalysis,
}

/// Run the shift search for the linear lift x - z until the factor is
/// regular or unrepairable. Unrepairable sides are reported on the returned
/// analysis, not as errors.
fn refine_linear(
    f: &ZPoly,
    p: u64,
    z: BigInt,
    multiplicity: u32,
    mode: ShiftMode,
) -> Result<LinearRefinement> {
    let mut shift = z;
    let mut cap: Option<u64> = None;
    let mut iterations = 0u64;
    loop {
        let phi = ZPoly::new(vec![-shift.clone(), BigInt::from(1)]);
        let mut analysis = analyze_phi(f, &phi, p, multiplicity)?;
        if analysis.regular {
            return Ok(LinearRefinement { shift, analysis });
        }
        let failing = analysis
            .sides
            .iter()
            .find(|s| !s.separable)
            .expect("an irregular factor has a failing side");
        if failing.side.ramification() != 1 {
            analysis.blocked = Some(format!(
                "side {} has non-integer slope with inseparable residual {}; \
                 its primes only satisfy e a multiple of {} and total e*f = {}",
                failing.side,
                failing.residual,
                failing.side.ramification(),
                failing.side.length()
            ));
            return Ok(LinearRefinement { shift, analysis });
        }
        let Some(t) = refinement_root(&failing.residual, mode) else {
            analysis.blocked = Some(format!(
                "residual {} on side {} repeats beyond a unique double root; \
                 its primes only satisfy total e*f = {}",
                failing.residual,
                failing.side,
                failing.side.length()
            ));
            return Ok(LinearRefinement { shift, analysis });
        };
        if cap.is_none() {
            cap = Some(shift_cap(f, p)?);
        }
        if iterations >= cap.unwrap() {
            return Err(Error::NonTerminating);
        }
        iterations += 1;
        let k = failing.side.slope_height();
        shift += BigInt::from(p).pow(k as u32) * BigInt::from(t);
    }
}

fn validate_sextic(f: &ZPoly) -> Result<()> {
    if !f.is_monic() || f.degree() != Some(6) {
        return Err(Error::InvalidPolynomial(format!(
            "expected a monic sextic, got {f}"
        )));
    }
    Ok(())
}

fn analyze_mode(f: &ZPoly, p: u64, mode: ShiftMode) -> Result<OreOutcome> {
    validate_sextic(f)?;
    let fbar = f.to_fp(p)?;
    let (_, factors) = fbar.factor()?;
    let mut diagnostics = Vec::new();
    let mut index_lower_bound = 0u64;
    let mut regular = true;
    for (phibar, multiplicity) in &factors {
        let analysis = if phibar.degree() == Some(1) {
            let lift = lift_factor(phibar);
            let z = -lift.coeff(0);
            refine_linear(f, p, z, *multiplicity, mode)?.analysis
        } else {
            let mut a = analyze_phi(f, &lift_factor(phibar), p, *multiplicity)?;
            if !a.regular {
                let failing = a.sides.iter().find(|s| !s.separable).unwrap();
                a.blocked = Some(format!(
                    "residual {} on side {} of a degree-{} factor is \
                     inseparable; its primes only satisfy e a multiple of {} \
                     and total e*f = {}",
                    failing.residual,
                    failing.side,
                    phibar.degree().unwrap(),
                    failing.side.ramification(),
                    failing.side.length() * phibar.degree().unwrap() as u64
                ));
            }
            a
        };
        index_lower_bound += analysis.index_contribution;
        regular &= analysis.regular;
        diagnostics.push(analysis);
    }
    let splitting = if regular {
        let mut entries = Vec::new();
        for a in &diagnostics {
            let deg_phi = a.phi.degree().unwrap() as u32;
            if a.polygon.is_empty() {
                entries.push((1, deg_phi));
            } else {
                for sa in &a.sides {
                    let e = sa.side.ramification() as u32;
                    for deg_psi in sa.residual.degree_partition() {
                        entries.push((e, deg_phi * deg_psi as u32));
                    }
                }
            }
        }
        let splitting = SplittingType::determined(entries);
        debug_assert_eq!(splitting.total_degree(), 6);
        splitting
    } else {
        SplittingType::undetermined()
    };
    Ok(OreOutcome {
        p,
        index_lower_bound,
        regular,
        splitting,
        diagnostics,
    })
}

/// Factor F mod p and assemble the index bound, regularity flag, splitting
/// type and per-factor diagnostics. Linear factors get the shift repair; a
/// factor left inseparable parks the splitting as undetermined while the
/// bound stays valid.
pub fn ore_analyze(f: &ZPoly, p: u64) -> Result<OreOutcome> {
    analyze_mode(f, p, ShiftMode::Strict)
}

/// Same analysis, but shifts also on unique roots of multiplicity above two.
/// Used by the five-adic self-check, where the first lift routinely meets a
/// quintuple root.
pub(crate) fn ore_analyze_relaxed(f: &ZPoly, p: u64) -> Result<OreOutcome> {
    analyze_mode(f, p, ShiftMode::Relaxed)
}

/// Sufficient check for a zero index contribution at p: every repeated mod-p
/// factor has a principal polygon that is a single side of height 1.
pub fn corollary1_zero_index(f: &ZPoly, p: u64) -> Result<bool> {
    validate_sextic(f)?;
    let fbar = f.to_fp(p)?;
    let (_, factors) = fbar.factor()?;
    for (phibar, multiplicity) in &factors {
        if *multiplicity == 1 {
            continue;
        }
        let expansion = PhiExpansion::new(f, &lift_factor(phibar), p)?;
        let polygon = principal_polygon(&expansion)?;
        if !(polygon.sides().len() == 1 && polygon.sides()[0].height() == 1) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Find s with s congruent to z mod p such that F is (x - s)-regular, by the
/// double-root shift iteration. Returns z itself when already regular.
pub fn regular_integer(f: &ZPoly, p: u64, z: i64) -> Result<BigInt> {
    if !f.is_monic() || f.degree().unwrap_or(0) < 2 {
        return Err(Error::InvalidPolynomial(format!(
            "expected a monic polynomial of degree at least 2, got {f}"
        )));
    }
    let fbar = f.to_fp(p)?;
    let phibar = ZPoly::new(vec![BigInt::from(-z), BigInt::from(1)]).to_fp(p)?;
    if !phibar.divides(&fbar) {
        return Err(Error::IrrelevantModulus(format!(
            "{phibar} does not divide {fbar} mod {p}"
        )));
    }
    let multiplicity = fbar.multiplicity_of(&phibar);
    let refinement = refine_linear(f, p, BigInt::from(z), multiplicity, ShiftMode::Strict)?;
    match refinement.analysis.blocked {
        Some(reason) => Err(Error::UncataloguedCase(reason)),
        None => Ok(refinement.shift),
    }
}
