//! Scalar fixed-point equations and closed-form limits.
//!
//! For exponential weights every distributional fixed point collapses to a
//! single scalar: the mass `b` that the bonus law places at zero (for
//! independent sets) or the probability `b = P(W < B)` (for matchings).
//! The memoryless property pins the rest of the law, so limits reduce to
//! elementary expressions or one-dimensional integrals.
//!
//! The defining equations, with their uniqueness regimes:
//!
//! * independent sets, `r`-regular: `b = 1 - ((1+b)/2)^{r-1}`, the two-step
//!   iteration has a unique fixed point iff `r <= 4`;
//! * independent sets, Poisson(`c`): `1 - b = e^{-c(1-b)/2}`, unique iff
//!   `c <= 2e`;
//! * matchings, `r`-regular: `b = 1 - (1-b^r)/(r(1-b))`, unique for all `r`;
//! * matchings, Poisson(`c`): `e^{-cx} + cx^2 - 1 = 0` with `x = 1 - b`,
//!   unique for all `c`.
//!
//! Every root is found by bisection on `[0, 1]`: each defining function is
//! monotone or has a single sign change there, so bisection to `1e-12` is
//! both simple and robust. Where the uniqueness regime has a threshold, the
//! flag is cross-checked by iterating the two-step map from both ends of
//! `[0, 1]` and comparing the limits.
//!
//! The matching limits are evaluated from the expectation form
//! `(r/2)·E[(B1 + B2 + 1) e^{-(B1+B2)}]` with `B1, B2` i.i.d. from the
//! explicit bonus law (CDF `(1 - e^{-t}(1-b))^{r-1}`), reduced to
//! `(r/2)(C^2 + 2AC)` with `C = E[e^{-B}] = 1-b` and `A = E[B e^{-B}]` by a
//! one-dimensional quadrature after the substitution `u = e^{-t}`. A
//! differently grouped display expression for the same quantity is also
//! evaluated by [`match_regular_display_variant`]; it disagrees (it gives
//! 64/81 at `r = 2` where the cycle value is 2/3), so the expectation form
//! is authoritative and the variant is surfaced only for comparison.

use serde::Serialize;
use thiserror::Error;

use crate::quad::integrate;

/// Roots are bisected until the bracket is this wide.
pub const ROOT_TOL: f64 = 1e-13;
/// Absolute tolerance for the matching-limit quadratures.
pub const QUAD_TOL: f64 = 1e-9;
/// Two iteration limits of the two-step map are considered equal below this.
const CYCLE_TOL: f64 = 1e-3;

/// Previously reported value for the `r = 4` independent-set weight limit.
///
/// Evaluating [`limit_ind_regular`] at `r = 4` gives ≈ 0.5632, which
/// contradicts this figure. Both are printed by the CLI with a discrepancy
/// flag rather than silently picking one.
pub const IND_REGULAR_R4_REPORTED: f64 = 0.4974;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ClosedFormError {
    #[error("no closed-form limit in the non-unique regime: {0}")]
    NonUniqueRegime(String),
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
}

/// A scalar fixed point together with its uniqueness verdict.
///
/// `b` always satisfies the defining one-step equation (`residual` is the
/// defect, below `1e-10` by construction). When the two-step map has more
/// than one fixed point, `companion` holds the end of the two-cycle reached
/// by iterating from 0; the other end is its image under the one-step map.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ScalarSolution {
    pub b: f64,
    pub unique: bool,
    pub companion: Option<f64>,
    pub residual: f64,
}

/// Bisects `f` for a root on `[lo, hi]`; requires a sign change (roots at
/// an endpoint are returned directly).
fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64) -> f64 {
    let flo = f(lo);
    if flo == 0.0 {
        return lo;
    }
    if f(hi) == 0.0 {
        return hi;
    }
    debug_assert!(flo * f(hi) < 0.0, "bisection bracket must change sign");
    let target_low = flo < 0.0;
    while hi - lo > ROOT_TOL {
        let mid = 0.5 * (lo + hi);
        if (f(mid) <= 0.0) == target_low {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Iterates `x -> f(f(x))` from `start` until the step is below `1e-13`.
fn iterate_two_step<F: Fn(f64) -> f64>(f: F, start: f64) -> f64 {
    let mut x = start;
    for _ in 0..200_000 {
        let next = f(f(x));
        if (next - x).abs() < 1e-13 {
            return next;
        }
        x = next;
    }
    x
}

/// Runs the two-step iteration from both ends of `[0, 1]` and returns the
/// two-cycle end reached from 0, if the ends disagree.
fn two_cycle<F: Fn(f64) -> f64 + Copy>(f: F) -> Option<f64> {
    let from_zero = iterate_two_step(f, 0.0);
    let from_one = iterate_two_step(f, 1.0);
    if (from_zero - from_one).abs() > CYCLE_TOL {
        Some(from_zero)
    } else {
        None
    }
}

fn scalar_solution<F: Fn(f64) -> f64 + Copy>(f: F, unique: bool) -> ScalarSolution {
    let b = bisect(|x| f(x) - x, 0.0, 1.0);
    let companion = if unique { None } else { two_cycle(f) };
    ScalarSolution { b, unique, companion, residual: f(b) - b }
}

// ---------------------------------------------------------------------------
// Independent sets
// ---------------------------------------------------------------------------

/// Atom equation for independent sets on `r`-regular graphs:
/// `b = 1 - ((1+b)/2)^{r-1}`. Unique two-step fixed point iff `r <= 4`.
pub fn solve_b_ind_regular(r: usize) -> ScalarSolution {
    assert!(r >= 1, "degree must be at least 1");
    let f = move |b: f64| 1.0 - ((1.0 + b) / 2.0).powi(r as i32 - 1);
    scalar_solution(f, r <= 4)
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct IndLimits {
    pub weight_limit: f64,
    pub cardinality_limit: f64,
}

/// Weight and cardinality limits per node for independent sets on random
/// `r`-regular graphs with `Exp(1)` weights (valid for `r <= 4`):
/// `(1-b)(r - rb + 2b + 2)/4` and `((1+b)/2)^r`.
pub fn limit_ind_regular(r: usize) -> Result<IndLimits, ClosedFormError> {
    if r > 4 {
        return Err(ClosedFormError::NonUniqueRegime(format!(
            "independent sets on {r}-regular graphs (unique only for r <= 4)"
        )));
    }
    let b = solve_b_ind_regular(r).b;
    let rf = r as f64;
    Ok(IndLimits {
        weight_limit: (1.0 - b) * (rf - rf * b + 2.0 * b + 2.0) / 4.0,
        cardinality_limit: ((1.0 + b) / 2.0).powi(r as i32),
    })
}

/// Atom equation for independent sets on `G(n, c/n)`:
/// `1 - b = e^{-c(1-b)/2}`. Unique two-step fixed point iff `c <= 2e`.
pub fn solve_b_ind_poisson(c: f64) -> ScalarSolution {
    assert!(c > 0.0 && c.is_finite(), "c must be positive");
    let f = move |b: f64| 1.0 - (-c * (1.0 - b) / 2.0).exp();
    scalar_solution(f, c <= 2.0 * std::f64::consts::E)
}

/// Limits for independent sets on `G(n, c/n)` with `Exp(1)` weights
/// (valid for `c <= 2e`): `(1-b)(1 + c(1-b)/4)` and `1 - b`.
pub fn limit_ind_poisson(c: f64) -> Result<IndLimits, ClosedFormError> {
    if c > 2.0 * std::f64::consts::E {
        return Err(ClosedFormError::NonUniqueRegime(format!(
            "independent sets on G(n, {c}/n) (unique only for c <= 2e)"
        )));
    }
    let b = solve_b_ind_poisson(c).b;
    Ok(IndLimits {
        weight_limit: (1.0 - b) * (1.0 + c * (1.0 - b) / 4.0),
        cardinality_limit: 1.0 - b,
    })
}

// ---------------------------------------------------------------------------
// Matchings
// ---------------------------------------------------------------------------

/// Fixed-point equation for matchings on `r`-regular graphs:
/// `b = 1 - (1 - b^r)/(r(1 - b))`. Unique for every `r >= 2`.
pub fn solve_b_match_regular(r: usize) -> ScalarSolution {
    assert!(r >= 2, "matching operator needs degree at least 2");
    // (1-b^r)/(1-b) = 1 + b + ... + b^{r-1} avoids the 0/0 at b = 1
    let f = move |b: f64| {
        let mut geom = 0.0;
        let mut pow = 1.0;
        for _ in 0..r {
            geom += pow;
            pow *= b;
        }
        1.0 - geom / r as f64
    };
    scalar_solution(f, true)
}

/// `E[B e^{-B}]` for the matching bonus law with CDF
/// `(1 - e^{-t}(1-b))^{r-1}`, via `u = e^{-t}`.
fn match_regular_a(r: usize, b: f64) -> f64 {
    let k = (r - 1) as f64;
    k * (1.0 - b)
        * integrate(
            |u| if u == 0.0 { 0.0 } else { -u.ln() * u * (1.0 - u * (1.0 - b)).powi(r as i32 - 2) },
            0.0,
            1.0,
            QUAD_TOL,
        )
}

/// Matching weight limit per node on random `r`-regular graphs with
/// `Exp(1)` edge weights, from the expectation form `(r/2)(C^2 + 2AC)`.
pub fn limit_match_regular(r: usize) -> f64 {
    let b = solve_b_match_regular(r).b;
    let c_factor = 1.0 - b;
    let a = match_regular_a(r, b);
    r as f64 / 2.0 * (c_factor * c_factor + 2.0 * a * c_factor)
}

/// Cardinality per node of the maximum-weight matching on `r`-regular
/// graphs: `(1 - b^r)/2`.
pub fn match_regular_cardinality(r: usize) -> f64 {
    let b = solve_b_match_regular(r).b;
    (1.0 - b.powi(r as i32)) / 2.0
}

/// The differently grouped display expression for the `r`-regular matching
/// limit: `r(b^{r-1}+1)∫ t e^{-t}(1-e^{-t}(1-b))^{r-1} dt − r∫ t e^{-t}(1-e^{-t}(1-b))^{2r-2} dt`.
///
/// It evaluates to 64/81 at `r = 2`, clashing with the cycle value 2/3 from
/// [`limit_match_regular`]; it exists so the clash can be reported, not for
/// use as a limit.
pub fn match_regular_display_variant(r: usize) -> f64 {
    let b = solve_b_match_regular(r).b;
    let int_pow = |p: i32| {
        integrate(
            |u: f64| if u == 0.0 { 0.0 } else { -u.ln() * (1.0 - u * (1.0 - b)).powi(p) },
            0.0,
            1.0,
            QUAD_TOL,
        )
    };
    let rf = r as f64;
    rf * (b.powi(r as i32 - 1) + 1.0) * int_pow(r as i32 - 1) - rf * int_pow(2 * r as i32 - 2)
}

/// Fixed-point equation for matchings on `G(n, c/n)`, in the form derived
/// from `E[e^{-B}] = 1 - b`: `e^{-cx} + cx^2 - 1 = 0` with `x = 1 - b`,
/// which has exactly one root in `(0, 1)`. Unique for every `c > 0`.
pub fn solve_b_match_poisson(c: f64) -> ScalarSolution {
    assert!(c > 0.0 && c.is_finite(), "c must be positive");
    let g = move |x: f64| (-c * x).exp() + c * x * x - 1.0;
    // g(0) = 0 is a spurious root; start just inside the interval.
    let x = bisect(g, 1e-12, 1.0);
    ScalarSolution { b: 1.0 - x, unique: true, companion: None, residual: g(x) }
}

/// Root of the variant equation `1 - e^{-cb} = c(1-b)^2`.
///
/// The variant disagrees with [`solve_b_match_poisson`] (e.g. 0.416 vs 0.285
/// at `c = 1`); both are surfaced by the CLI, and the exact graph solvers
/// confirm the self-consistent form. Returns `None` when the variant has no
/// root in `(0, 1)`.
pub fn match_poisson_b_variant(c: f64) -> Option<f64> {
    let g = move |b: f64| 1.0 - (-c * b).exp() - c * (1.0 - b) * (1.0 - b);
    if g(1e-12) * g(1.0) > 0.0 {
        return None;
    }
    Some(bisect(g, 1e-12, 1.0))
}

/// Matching weight limit per node on `G(n, c/n)` with `Exp(1)` edge
/// weights: `(c/2)(C^2 + 2AC)` with `C = 1 - b` and
/// `A = a ∫_0^1 (-ln u) u e^{-au} du`, `a = c(1-b)`.
pub fn limit_match_poisson(c: f64) -> f64 {
    let b = solve_b_match_poisson(c).b;
    let x = 1.0 - b;
    let a_param = c * x;
    let a = a_param
        * integrate(
            |u| if u == 0.0 { 0.0 } else { -u.ln() * u * (-a_param * u).exp() },
            0.0,
            1.0,
            QUAD_TOL,
        );
    c / 2.0 * (x * x + 2.0 * a * x)
}

/// Cardinality per node of the maximum-weight matching on `G(n, c/n)`:
/// `(1 - e^{-c(1-b)})/2`.
pub fn match_poisson_cardinality(c: f64) -> f64 {
    let b = solve_b_match_poisson(c).b;
    (1.0 - (-c * (1.0 - b)).exp()) / 2.0
}

// ---------------------------------------------------------------------------
// Karp–Sipser constants (unweighted, Poisson model)
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, Serialize)]
pub struct KarpSipserConstants {
    /// Smallest root of `x = exp(-c·exp(-cx))`.
    pub gamma_star: f64,
    /// `exp(-c·gamma_star)`; equals `gamma_star` iff `c <= e`.
    pub gamma_star_star: f64,
    /// Maximum-matching cardinality per node:
    /// `1 - (γ* + γ** + cγ*γ**)/2`.
    pub matching_limit: f64,
    /// Maximum-independent-set cardinality per node, `(2γ + cγ²)/2`;
    /// present only for `c <= e` where `γ* = γ**" = γ` is unique.
    pub indset_limit: Option<f64>,
}

/// Solves the leaf-removal constants for `G(n, c/n)`.
///
/// `γ*` is located by scanning `x - exp(-c·exp(-cx))` on a fine grid of
/// `[0, 1]` for its first sign change and bisecting inside it; the function
/// is negative at 0 and positive at 1, so a first crossing always exists.
///
/// The independent-set limit uses `(2γ + cγ²)/2`, which is exactly
/// `1 - matching_limit` when `γ* = γ**`: the complement of the stage-1
/// cover is the independent set, so the two cardinalities are complementary
/// whenever the residual graph is negligible.
pub fn karp_sipser_constants(c: f64) -> KarpSipserConstants {
    assert!(c > 0.0 && c.is_finite(), "c must be positive");
    let (gamma_star, gamma_star_star) = if c <= std::f64::consts::E {
        // unique regime: the two-step root coincides with the root of the
        // well-conditioned one-step equation x = e^{-cx}. (The two-step
        // form has a near-tangency at c = e where cancellation costs
        // several digits; the one-step route keeps full precision.)
        let g = bisect(|x| (-c * x).exp() - x, 0.0, 1.0);
        (g, g)
    } else {
        let h = move |x: f64| (-c * (-c * x).exp()).exp();
        const GRID: usize = 20_000;
        let mut gamma_star = 1.0;
        let mut prev = -h(0.0);
        for i in 1..=GRID {
            let x = i as f64 / GRID as f64;
            let v = x - h(x);
            if prev < 0.0 && v >= 0.0 {
                gamma_star = bisect(|y| y - h(y), (i - 1) as f64 / GRID as f64, x);
                break;
            }
            prev = v;
        }
        (gamma_star, (-c * gamma_star).exp())
    };
    let matching_limit =
        1.0 - (gamma_star + gamma_star_star + c * gamma_star * gamma_star_star) / 2.0;
    let indset_limit = if c <= std::f64::consts::E {
        Some((2.0 * gamma_star + c * gamma_star * gamma_star) / 2.0)
    } else {
        None
    };
    KarpSipserConstants { gamma_star, gamma_star_star, matching_limit, indset_limit }
}

// ---------------------------------------------------------------------------
// Discrete weights
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, Serialize)]
pub struct BernoulliFixedPoint {
    /// Mass at zero of the fixed-point law (a two-point law on {0, 1}).
    pub p: f64,
    pub unique: bool,
    /// Two-cycle of the zero-mass map `x -> 1 - (1-z)x^2` when not unique.
    pub cycle: Option<(f64, f64)>,
}

/// Fixed points for 3-regular independent sets with weights that are 0 with
/// probability `z` and 1 otherwise.
///
/// The zero-mass of the bonus law evolves under `f(x) = 1 - (1-z)x^2`; its
/// fixed point is `p = (√(5-4z) - 1)/(2(1-z))` (continuity limit 1 as
/// `z -> 1`, where the weights vanish and the bonus is identically zero).
/// The two-step map has a unique fixed point iff `z >= 1/4`.
pub fn bernoulli_fixed_points_r3(z: f64) -> Result<BernoulliFixedPoint, ClosedFormError> {
    if !(0.0..=1.0).contains(&z) {
        return Err(ClosedFormError::OutOfRange(format!("z = {z} not in [0, 1]")));
    }
    let p = if z >= 1.0 { 1.0 } else { ((5.0 - 4.0 * z).sqrt() - 1.0) / (2.0 * (1.0 - z)) };
    let unique = z >= 0.25;
    let cycle = if unique {
        None
    } else {
        let f = move |x: f64| 1.0 - (1.0 - z) * x * x;
        let lo = iterate_two_step(f, 0.0);
        Some((lo, f(lo)))
    };
    Ok(BernoulliFixedPoint { p, unique, cycle })
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct DeterministicPoissonFixedPoint {
    /// Mass at zero of the fixed-point law `Be(p*)`.
    pub p_star: f64,
    pub unique: bool,
    /// Two-cycle of `q -> e^{-cq}` (in the mass at one) when not unique.
    pub cycle: Option<(f64, f64)>,
}

/// Fixed point for unit weights on `G(n, c/n)`: `1 - p* = e^{-c(1-p*)}`,
/// unique iff `c <= e`. The even iterates follow
/// `1 - p_{2s} = e^{-c·e^{-c(1-p_{2s-2})}}`, the same map as the
/// Karp–Sipser equation, which is how the `e`-threshold enters.
pub fn deterministic_poisson_fixed_point(c: f64) -> DeterministicPoissonFixedPoint {
    assert!(c > 0.0 && c.is_finite(), "c must be positive");
    // q = 1 - p is the mass at one; q = e^{-cq} has a unique root.
    let q = bisect(|q| (-c * q).exp() - q, 0.0, 1.0);
    let unique = c <= std::f64::consts::E;
    let cycle = if unique {
        None
    } else {
        let g = move |q: f64| (-c * q).exp();
        let lo = iterate_two_step(g, 0.0);
        Some((lo, g(lo)))
    };
    DeterministicPoissonFixedPoint { p_star: 1.0 - q, unique, cycle }
}
