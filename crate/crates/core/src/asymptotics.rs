//! High-SNR characterizations: the DoF region over backhaul scaling
//! exponents, its symmetric special cases and saturation threshold, the
//! GDoF region and value for equal antenna counts, the piecewise closed
//! forms, and empirical slope estimation that checks every outer-bound
//! term's prelog against the predicted one.
//!
//! The closed forms are exact real arithmetic; the slope sweep is a
//! separate validation path through the matrix-valued outer bounds.

use alloc::vec::Vec;

use crate::channel::{generate, ChannelSeedSpec, CoopSpec, GainSpec};
use crate::error::Error;
use crate::math;
use crate::outer::{outer_terms, OuterTerms};
use crate::region::{self, RateConstraint, RateRegion2D};

/// Antenna counts and backhaul scaling exponents for a DoF query.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DofSpec {
    pub m1: usize,
    pub n1: usize,
    pub m2: usize,
    pub n2: usize,
    pub beta12: f64,
    pub beta21: f64,
}

/// Equal antenna count `m`, cross-link exponent `alpha`, backhaul exponent
/// `beta` for a GDoF query.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GdofSpec {
    pub m: usize,
    pub alpha: f64,
    pub beta: f64,
}

fn pos(x: f64) -> f64 {
    x.max(0.0)
}

fn minf(a: f64, b: f64) -> f64 {
    a.min(b)
}

/// The ten DoF constraints as `(a, b, c)` rows, in outer-term order.
pub fn dof_constraints(s: &DofSpec) -> [RateConstraint; 10] {
    assert!(s.m1 >= 1 && s.n1 >= 1 && s.m2 >= 1 && s.n2 >= 1);
    assert!(s.beta12 >= 0.0 && s.beta21 >= 0.0);
    assert!(s.beta12.is_finite() && s.beta21.is_finite());
    let (m1, n1, m2, n2) = (s.m1 as f64, s.n1 as f64, s.m2 as f64, s.n2 as f64);
    let (b12, b21) = (s.beta12, s.beta21);
    [
        RateConstraint::r1(minf(m1, n1) + minf(minf(n2, pos(m1 - n1)), b21)),
        RateConstraint::r2(minf(m2, n2) + minf(minf(n1, pos(m2 - n2)), b12)),
        RateConstraint::sum(
            minf(n1, pos(m1 - n2) + m2) + minf(n2, pos(m2 - n1) + m1) + b12 + b21,
        ),
        RateConstraint::sum(minf(n1, pos(m1 - n2)) + minf(n2, m1 + m2) + b12),
        RateConstraint::sum(minf(n2, pos(m2 - n1)) + minf(n1, m1 + m2) + b21),
        RateConstraint::sum(minf(n1 + n2, m1 + m2)),
        RateConstraint::two_one(
            minf(n2, pos(m2 - n1) + m1) + minf(n1, pos(m1 - n2)) + minf(n1, m1 + m2) + b12 + b21,
        ),
        RateConstraint::one_two(
            minf(n1, pos(m1 - n2) + m2) + minf(n2, pos(m2 - n1)) + minf(n2, m1 + m2) + b12 + b21,
        ),
        RateConstraint::two_one(minf(n1 + n2, m1) + minf(n1, m1 + m2) + b21),
        RateConstraint::one_two(minf(n1 + n2, m2) + minf(n2, m1 + m2) + b12),
    ]
}

/// The DoF region in `(d1, d2)`.
pub fn dof_region(s: &DofSpec) -> RateRegion2D {
    region::region_from_constraints(&dof_constraints(s)).expect("DoF constraints are bounded")
}

/// Largest `d` with `(d, d)` in the symmetric DoF region, straight from the
/// binding constraint.
pub fn symmetric_dof_value(m: usize, n: usize, beta: f64) -> f64 {
    let s = DofSpec {
        m1: m,
        n1: n,
        m2: m,
        n2: n,
        beta12: beta,
        beta21: beta,
    };
    dof_constraints(&s)
        .iter()
        .map(|k| k.c / (k.a + k.b))
        .fold(f64::INFINITY, f64::min)
}

/// The backhaul exponent beyond which more cooperation stops enlarging the
/// symmetric DoF region: `min{N, (2M - N)+}`.
pub fn coop_saturation_beta(m: usize, n: usize) -> f64 {
    assert!(m >= 1 && n >= 1);
    let (m, n) = (m as f64, n as f64);
    minf(n, pos(2.0 * m - n))
}

/// The nine GDoF constraints (two same-RHS pairs), in outer-term order
/// with the coincident pairs collapsed onto their directions.
pub fn gdof_constraints(s: &GdofSpec) -> [RateConstraint; 9] {
    assert!(s.m >= 1);
    assert!(s.alpha >= 0.0 && s.beta >= 0.0);
    assert!(s.alpha.is_finite() && s.beta.is_finite());
    let m = s.m as f64;
    let (a, b) = (s.alpha, s.beta);
    let individual = m + minf(pos(a - 1.0) * m, b);
    let cross_level = m * pos(1.0 - a).max(a);
    let direct_level = m * 1.0f64.max(a);
    let triple_med = cross_level + pos(1.0 - a) * m + direct_level + 2.0 * b;
    let triple_top = m * pos(2.0 - a).max(a) + direct_level + b;
    [
        RateConstraint::r1(individual),
        RateConstraint::r2(individual),
        RateConstraint::sum(2.0 * cross_level + 2.0 * b),
        RateConstraint::sum(pos(1.0 - a) * m + direct_level + b),
        RateConstraint::sum(2.0 * direct_level),
        RateConstraint::one_two(triple_med),
        RateConstraint::two_one(triple_med),
        RateConstraint::one_two(triple_top),
        RateConstraint::two_one(triple_top),
    ]
}

/// The GDoF region in `(d1, d2)`; the constraint set is already convex.
pub fn gdof_region(s: &GdofSpec) -> RateRegion2D {
    region::region_from_constraints(&gdof_constraints(s)).expect("GDoF constraints are bounded")
}

/// Symmetric GDoF: the six-term minimum.
pub fn gdof_value(s: &GdofSpec) -> f64 {
    assert!(s.m >= 1);
    assert!(s.alpha >= 0.0 && s.beta >= 0.0);
    let m = s.m as f64;
    let (a, b) = (s.alpha, s.beta);
    let t1 = m + minf(pos(a - 1.0) * m, b);
    let t2 = m * pos(1.0 - a).max(a) + b;
    let t3 = 0.5 * pos(1.0 - a) * m + 0.5 * m * 1.0f64.max(a) + 0.5 * b;
    let t4 = m * 1.0f64.max(a);
    let t5 = (m * pos(1.0 - a).max(a) + pos(1.0 - a) * m + m * 1.0f64.max(a)) / 3.0
        + 2.0 * b / 3.0;
    let t6 = (m * pos(2.0 - a).max(a) + m * 1.0f64.max(a) + b) / 3.0;
    t1.min(t2).min(t3).min(t4).min(t5).min(t6)
}

/// Symmetric GDoF from the three-regime piecewise tables. Branch intervals
/// are closed; at a boundary every matching branch is evaluated and they
/// must agree to 1e-12.
pub fn gdof_piecewise(s: &GdofSpec) -> f64 {
    assert!(s.m >= 1);
    assert!(s.alpha >= 0.0 && s.beta >= 0.0);
    let m = s.m as f64;
    let (a, b) = (s.alpha, s.beta);
    let branches: Vec<(f64, f64, f64)> = if b <= 0.5 * m {
        alloc::vec![
            (0.0, b / m, m),
            (b / m, 0.5, m * pos(1.0 - a) + b),
            (0.5, 2.0 / 3.0 - b / (3.0 * m), m * a + b),
            (2.0 / 3.0 - b / (3.0 * m), 1.0, 0.5 * (m * pos(2.0 - a) + b)),
            (1.0, 2.0 + b / m, 0.5 * (m * a + b)),
            (2.0 + b / m, f64::INFINITY, m + b),
        ]
    } else if b <= m {
        alloc::vec![
            (0.0, b / m, m),
            (b / m, 1.0, 0.5 * (m * pos(2.0 - a) + b)),
            (1.0, 2.0 + b / m, 0.5 * (m * a + b)),
            (2.0 + b / m, f64::INFINITY, m + b),
        ]
    } else {
        alloc::vec![
            (0.0, 1.0, m),
            (1.0, b / m, m * a),
            (b / m, 2.0 + b / m, 0.5 * (m * a + b)),
            (2.0 + b / m, f64::INFINITY, m + b),
        ]
    };
    let mut value = f64::NAN;
    for &(lo, hi, v) in &branches {
        if a >= lo && a <= hi {
            if value.is_nan() {
                value = v;
            } else {
                debug_assert!(
                    (value - v).abs() <= 1e-12,
                    "piecewise branches disagree at the boundary"
                );
            }
        }
    }
    assert!(!value.is_nan(), "alpha not covered by any branch");
    value
}

/// Symmetric GDoF without receiver cooperation: the five-branch W curve.
pub fn gdof_nrc(m: usize, alpha: f64) -> f64 {
    assert!(m >= 1 && alpha >= 0.0);
    let m = m as f64;
    let a = alpha;
    if a <= 0.5 {
        m * pos(1.0 - a)
    } else if a <= 2.0 / 3.0 {
        m * a
    } else if a <= 1.0 {
        0.5 * m * pos(2.0 - a)
    } else if a <= 2.0 {
        0.5 * m * a
    } else {
        m
    }
}

/// GDoF values over a sorted alpha grid.
pub fn gdof_curve(m: usize, beta: f64, alpha_grid: &[f64]) -> Vec<(f64, f64)> {
    assert!(alpha_grid.windows(2).all(|w| w[0] <= w[1]), "grid must be sorted");
    alpha_grid
        .iter()
        .map(|&alpha| (alpha, gdof_value(&GdofSpec { m, alpha, beta })))
        .collect()
}

/// One outer-bound term's measured slope against its predicted prelog.
#[derive(Debug, Clone, PartialEq)]
pub struct SlopeEstimate {
    pub term: &'static str,
    pub predicted: f64,
    pub estimated: f64,
    pub abs_err: f64,
}

fn predicted_prelogs(
    antennas: (usize, usize, usize, usize),
    alpha: f64,
    beta: f64,
) -> Result<[f64; 10], Error> {
    let (m1, n1, m2, n2) = antennas;
    if alpha == 1.0 {
        let spec = DofSpec {
            m1,
            n1,
            m2,
            n2,
            beta12: beta,
            beta21: beta,
        };
        Ok(dof_constraints(&spec).map(|k| k.c))
    } else if m1 == n1 && m1 == m2 && m1 == n2 {
        let m = m1 as f64;
        let individual = m + minf(pos(alpha - 1.0) * m, beta);
        let cross_level = m * pos(1.0 - alpha).max(alpha);
        let direct_level = m * 1.0f64.max(alpha);
        let pair = pos(1.0 - alpha) * m + direct_level + beta;
        let triple_med = cross_level + pos(1.0 - alpha) * m + direct_level + 2.0 * beta;
        let triple_top = m * pos(2.0 - alpha).max(alpha) + direct_level + beta;
        Ok([
            individual,
            individual,
            2.0 * cross_level + 2.0 * beta,
            pair,
            pair,
            2.0 * direct_level,
            triple_med,
            triple_med,
            triple_top,
            triple_top,
        ])
    } else {
        // Unequal antennas with a general cross exponent have no predicted
        // prelog here.
        Err(Error::InvalidSpec)
    }
}

fn least_squares_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut num = 0.0;
    let mut den = 0.0;
    for (x, y) in xs.iter().zip(ys) {
        num += (x - mx) * (y - my);
        den += (x - mx) * (x - mx);
    }
    num / den
}

/// Sweeps the outer-bound terms over `rho_ii = SNR`, `rho_ij = SNR^alpha`,
/// `C = beta * log2 SNR` for a fixed random channel, and regresses each
/// term against `log2 SNR` over the top half of the sweep.
///
/// The sweep must be sorted, span at least four decades, and contain at
/// least four points; smaller-SNR points carry the sublinear residue, which
/// is why only the top half enters the regression.
pub fn empirical_slope(
    antennas: (usize, usize, usize, usize),
    seed: u64,
    alpha: f64,
    beta: f64,
    snr_list: &[f64],
) -> Result<Vec<SlopeEstimate>, Error> {
    if snr_list.len() < 4
        || snr_list.windows(2).any(|w| w[0] >= w[1])
        || snr_list[0] <= 0.0
    {
        return Err(Error::IllConditionedSweep);
    }
    let decades = math::log2(snr_list[snr_list.len() - 1] / snr_list[0]) / math::log2(10.0);
    if decades < 4.0 - 1e-9 {
        return Err(Error::IllConditionedSweep);
    }
    let predicted = predicted_prelogs(antennas, alpha, beta)?;

    let (m1, n1, m2, n2) = antennas;
    let mut log_snr = Vec::with_capacity(snr_list.len());
    let mut series: [Vec<f64>; 10] = Default::default();
    for &snr in snr_list {
        let ch = generate(&ChannelSeedSpec {
            m1,
            n1,
            m2,
            n2,
            gains: GainSpec::SnrExponent { snr, alpha },
            coop: CoopSpec::BetaExponent {
                beta12: beta,
                beta21: beta,
            },
            seed,
        })
        .map_err(|_| Error::IllConditionedSweep)?;
        let terms: OuterTerms = outer_terms(&ch).map_err(|_| Error::IllConditionedSweep)?;
        let arr = terms.as_array();
        if arr.iter().any(|v| !v.is_finite()) {
            return Err(Error::IllConditionedSweep);
        }
        log_snr.push(math::log2(snr));
        for (k, v) in arr.iter().enumerate() {
            series[k].push(*v);
        }
    }
    let start = snr_list.len() / 2;
    let xs = &log_snr[start..];
    Ok((0..10)
        .map(|k| {
            let estimated = least_squares_slope(xs, &series[k][start..]);
            SlopeEstimate {
                term: OuterTerms::NAMES[k],
                predicted: predicted[k],
                estimated,
                abs_err: (estimated - predicted[k]).abs(),
            }
        })
        .collect())
}
