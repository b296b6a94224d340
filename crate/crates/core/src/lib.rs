//! Index computations for sextic trinomial fields K = Q(alpha), where alpha
//! is a root of an irreducible x^6 + a x^5 + b over Z.
//!
//! The index of such a field is the gcd of the indices [Z_K : Z[theta]] over
//! all integral generators theta. It is supported on the primes 2, 3, 5 only,
//! and this crate computes it exactly:
//!
//! ```text
//! i(K) = 2^nu2 * 3^nu3 * 5^nu5,   nu2 <= 2, nu3 <= 1, nu5 = 0,
//! ```
//!
//! so i(K) is one of 1, 2, 3, 4, 6, 12. A prime p divides i(K) exactly when,
//! for some f, the number of primes of K above p with residue degree f
//! exceeds the number of monic irreducible degree-f polynomials over F_p.
//! The splitting data comes from Newton polygons of Montes/Ore type computed
//! from phi-adic expansions of F, refined where necessary by quadratic
//! unramified shifts x -> s + p^k x of the generator.
//!
//! Everything is exact integer arithmetic; no floating point appears
//! anywhere. See the module docs for the individual layers: [`intpoly`] for
//! valuations and the trinomial itself, [`finite`] for F_p and F_q machinery,
//! [`newton`] for polygons and residual polynomials, [`ore`] for the
//! regularity test and splitting types, and [`classify`] for the final
//! index and monogenicity classification.

pub mod classify;
pub mod error;
pub mod finite;
pub mod guide;
pub mod intpoly;
pub mod newton;
pub mod oracle;
pub mod ore;
mod primes;

pub use classify::{
    corollary_fast_path, engstrom_exponent, index_of_field, is_index_divisor, nu2, nu3, nu5,
    theorem1_is_maximal, IndexReport, ValuationQuadruple,
};
pub use error::{Error, MaximalityCondition, Result};
pub use finite::{count_monic_irreducibles, FpPoly, FqPoly, ResidueField};
pub use intpoly::{trinomial_discriminant, unit_part, valuation, Trinomial, Valuation, ZPoly};
pub use newton::{
    is_phi_regular, phi_expand, phi_index, principal_polygon, residual_polynomial, NewtonPolygon,
    PhiExpansion, Side,
};
pub use oracle::OracleVerdict;
pub use ore::{
    corollary1_zero_index, ore_analyze, regular_integer, OreOutcome, PhiAnalysis, SideAnalysis,
    SplittingType,
};
