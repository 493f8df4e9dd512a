//! The two-round transmission and cooperation scheme: private/common
//! covariance split, quantize-and-bin distortion bookkeeping, the
//! 16-constraint achievable region of each processing order, their convex
//! hull, and the displaced-constraint inner region whose distance to the
//! outer bound is at most `N1 + N2` bits.
//!
//! Every mutual information here is between jointly Gaussian variables, so
//! each evaluates to a difference of `log2 det` of conditional covariances.
//! Conditioning on a message means conditioning on its Gaussian codeword:
//! the four codeword components are independent, so the conditional
//! covariance of an observation is just the sum over the still-unknown
//! components. This reproduces the explicit entropy evaluations behind the
//! gap certificate, not a tighter variant.

use alloc::vec::Vec;

use crate::channel::ChannelInstance;
use crate::error::Error;
use crate::hermitian::{
    self, cross_sandwich, hermitian_block2, logdet2_hpd, sandwich, CMatrix, HermitianMatrix,
};
use crate::math;
use crate::outer::{self, OuterTerms};
use crate::region::{self, RateConstraint, RateRegion2D};

/// Which receiver quantizes first: `TwoOneTwo` is quantize at receiver 2,
/// decode at receiver 1, then decode at receiver 2; `OneTwoOne` mirrors it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StrategyOrder {
    TwoOneTwo,
    OneTwoOne,
}

/// Private/common input covariances; `q_ip + q_ic = I` exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct CovarianceSplit {
    pub q1p: HermitianMatrix,
    pub q1c: HermitianMatrix,
    pub q2p: HermitianMatrix,
    pub q2c: HermitianMatrix,
}

impl CovarianceSplit {
    fn swapped(&self) -> CovarianceSplit {
        CovarianceSplit {
            q1p: self.q2p.clone(),
            q1c: self.q2c.clone(),
            q2p: self.q1p.clone(),
            q2c: self.q1c.clone(),
        }
    }
}

/// Quantization distortion covariance and the exact rate loss it costs.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantizationPlan {
    pub delta: HermitianMatrix,
    pub xi: f64,
}

/// One processing order's achievable polygon and its 16 evaluated bounds.
#[derive(Debug, Clone, PartialEq)]
pub struct StrategyRegion {
    pub order: StrategyOrder,
    pub constraints: Vec<RateConstraint>,
    pub region: RateRegion2D,
}

fn split_one_side(h_cross: &CMatrix, rho_cross: f64, m: usize) -> HermitianMatrix {
    // Q_p = I - sqrt(rho) H† (I + rho H H†)^-1 sqrt(rho) H, which is
    // (I + rho H† H)^-1 by the resolvent identity. Assembling it from the
    // eigenpairs of rho H† H keeps both Q_p and I - Q_p p.s.d. by
    // construction at gains where the solve form would lose the noise
    // floor to cancellation.
    let gram_in = hermitian::gram(&h_cross.adjoint(), rho_cross);
    let (eigs, v) = hermitian::eigen_decomposition(&gram_in);
    let mut b = v;
    for (k, lambda) in eigs.iter().enumerate() {
        let w = math::sqrt(1.0 / (1.0 + lambda.max(0.0)));
        for i in 0..m {
            b.set(i, k, b.get(i, k).scale(w));
        }
    }
    hermitian::gram(&b, 1.0)
}

/// The private/common split: each transmitter keeps as private exactly the
/// directions its cross link attenuates below the noise floor.
pub fn covariance_split(ch: &ChannelInstance) -> Result<CovarianceSplit, Error> {
    let q1p = split_one_side(&ch.h12, ch.rho12, ch.m1);
    let q2p = split_one_side(&ch.h21, ch.rho21, ch.m2);
    let q1c = HermitianMatrix::identity(ch.m1).sub(&q1p);
    let q2c = HermitianMatrix::identity(ch.m2).sub(&q2p);
    Ok(CovarianceSplit { q1p, q1c, q2p, q2c })
}

/// `rho H Q H†` evaluated as the Gram of `H B` for a p.s.d. factor
/// `Q = B B†`, so the result is p.s.d. by construction and its top
/// eigenvalue is free of the cancellation that assembling the triple
/// product directly reintroduces at gains around 1e9. Used to check the
/// below-the-noise-floor property of the private covariances.
pub fn private_leak(h: &CMatrix, q: &HermitianMatrix, rho: f64) -> HermitianMatrix {
    let (eigs, v) = hermitian::eigen_decomposition(q);
    let mut b = v;
    for (k, lambda) in eigs.iter().enumerate() {
        let w = math::sqrt(lambda.max(0.0));
        for i in 0..q.dim() {
            b.set(i, k, b.get(i, k).scale(w));
        }
    }
    hermitian::gram(&h.mul(&b), rho)
}

fn quantization_plan_2to1(
    ch: &ChannelInstance,
    split: &CovarianceSplit,
) -> Result<QuantizationPlan, Error> {
    // Distortion pinned at noise plus own private power; not optimized.
    let delta = sandwich(&ch.h22, &split.q2p, ch.rho22).add_scaled_identity(1.0);

    // xi = log det(I + Delta + rho22 H22 L(Q2p, sqrt(rho21) H21†) H22†)
    //      - log det(Delta), read off the positive-definite block matrix.
    let a = sandwich(&ch.h22, &split.q2p, ch.rho22)
        .add(&delta)
        .add_scaled_identity(1.0);
    let d = sandwich(&ch.h21, &split.q2p, ch.rho21).add_scaled_identity(1.0);
    let b = cross_sandwich(
        &ch.h22,
        &split.q2p,
        &ch.h21,
        math::sqrt(ch.rho21) * math::sqrt(ch.rho22),
    );
    let block = hermitian_block2(&a, &b, &d);
    let xi = logdet2_hpd(&block)? - logdet2_hpd(&d)? - logdet2_hpd(&delta)?;
    Ok(QuantizationPlan { delta, xi })
}

/// Distortion covariance and exact quantization loss for the given order.
/// The loss never exceeds the quantizing receiver's antenna count.
pub fn quantization_plan(
    ch: &ChannelInstance,
    split: &CovarianceSplit,
    order: StrategyOrder,
) -> Result<QuantizationPlan, Error> {
    match order {
        StrategyOrder::TwoOneTwo => quantization_plan_2to1(ch, split),
        StrategyOrder::OneTwoOne => quantization_plan_2to1(&ch.swapped(), &split.swapped()),
    }
}

/// Source-mask bits for the four independent codeword components.
const S1P: u8 = 1;
const S1C: u8 = 2;
const S2P: u8 = 4;
const S2C: u8 = 8;
const X1: u8 = S1P | S1C;
const X2: u8 = S2P | S2C;

struct Model<'a> {
    ch: &'a ChannelInstance,
    split: &'a CovarianceSplit,
    delta: &'a HermitianMatrix,
}

impl Model<'_> {
    fn sources(&self) -> [(u8, &CMatrix, &CMatrix, f64, f64, &HermitianMatrix); 4] {
        // (bit, to-rx1, to-rx2, rho-to-1, rho-to-2, covariance)
        let ch = self.ch;
        [
            (S1P, &ch.h11, &ch.h12, ch.rho11, ch.rho12, &self.split.q1p),
            (S1C, &ch.h11, &ch.h12, ch.rho11, ch.rho12, &self.split.q1c),
            (S2P, &ch.h21, &ch.h22, ch.rho21, ch.rho22, &self.split.q2p),
            (S2C, &ch.h21, &ch.h22, ch.rho21, ch.rho22, &self.split.q2c),
        ]
    }

    /// Covariance of a receiver's observation given the `known` codewords.
    fn cov_y(&self, rx: u8, known: u8) -> HermitianMatrix {
        let n = if rx == 1 { self.ch.n1 } else { self.ch.n2 };
        let mut cov = HermitianMatrix::identity(n);
        for (bit, h1, h2, r1, r2, q) in self.sources() {
            if known & bit != 0 {
                continue;
            }
            let (h, rho) = if rx == 1 { (h1, r1) } else { (h2, r2) };
            cov = cov.add(&sandwich(h, q, rho));
        }
        cov
    }

    /// Joint covariance of `(Y1, Y2 + quantization noise)` given `known`.
    fn cov_joint(&self, known: u8) -> HermitianMatrix {
        let mut cross = CMatrix::zeros(self.ch.n1, self.ch.n2);
        for (bit, h1, h2, r1, r2, q) in self.sources() {
            if known & bit != 0 {
                continue;
            }
            cross = cross.add(&cross_sandwich(h1, q, h2, math::sqrt(r1) * math::sqrt(r2)));
        }
        hermitian_block2(
            &self.cov_y(1, known),
            &cross,
            &self.cov_y(2, known).add(self.delta),
        )
    }

    /// `I(A; Y_rx | C)` for message sets given as source masks.
    fn mi_y(&self, rx: u8, a: u8, c: u8) -> Result<f64, Error> {
        Ok(logdet2_hpd(&self.cov_y(rx, c))? - logdet2_hpd(&self.cov_y(rx, a | c))?)
    }

    /// `I(A; Y1, Yhat2 | C)`.
    fn mi_joint(&self, a: u8, c: u8) -> Result<f64, Error> {
        Ok(logdet2_hpd(&self.cov_joint(c))? - logdet2_hpd(&self.cov_joint(a | c))?)
    }
}

fn pos(x: f64) -> f64 {
    x.max(0.0)
}

fn strategy_constraints_2to1(ch: &ChannelInstance) -> Result<Vec<RateConstraint>, Error> {
    let split = covariance_split(ch)?;
    let plan = quantization_plan_2to1(ch, &split)?;
    let m = Model {
        ch,
        split: &split,
        delta: &plan.delta,
    };
    let c12 = ch.c12;
    let coop_back = pos(ch.c21 - plan.xi); // (C21 - xi)+

    let bounds: [(f64, f64, f64); 16] = [
        // R1
        (1.0, 0.0, m.mi_y(1, X1, S2C)?),
        (
            1.0,
            0.0,
            m.mi_y(1, X1, S1C | S2C)? + m.mi_y(2, S1C | X2, S2C)? + c12,
        ),
        // R2
        (0.0, 1.0, m.mi_y(2, X2, S1C)? + c12),
        (0.0, 1.0, m.mi_y(1, S2C, X1)? + m.mi_y(2, X2, S1C | S2C)?),
        // R1 + R2
        (
            1.0,
            1.0,
            m.mi_y(1, S2C | X1, 0)? + m.mi_y(2, X2, S1C | S2C)? + coop_back,
        ),
        (
            1.0,
            1.0,
            m.mi_joint(S2C | X1, 0)? + m.mi_y(2, X2, S1C | S2C)?,
        ),
        (
            1.0,
            1.0,
            m.mi_y(1, S2C | X1, S1C)? + m.mi_y(2, S1C | X2, S2C)? + c12 + coop_back,
        ),
        (
            1.0,
            1.0,
            m.mi_joint(S2C | X1, S1C)? + m.mi_y(2, S1C | X2, S2C)? + c12,
        ),
        (
            1.0,
            1.0,
            m.mi_y(1, X1, S1C | S2C)? + m.mi_y(2, S1C | X2, 0)? + c12,
        ),
        (
            1.0,
            1.0,
            m.mi_y(1, X1, S1C | S2C)? + m.mi_y(1, S2C, X1)? + m.mi_y(2, S1C | X2, S2C)? + c12,
        ),
        // 2R1 + R2
        (
            2.0,
            1.0,
            m.mi_y(1, X1 | S2C, 0)?
                + m.mi_y(1, X1, S1C | S2C)?
                + m.mi_y(2, S1C | X2, S2C)?
                + c12
                + coop_back,
        ),
        (
            2.0,
            1.0,
            m.mi_joint(X1 | S2C, 0)? + m.mi_y(1, X1, S1C | S2C)? + m.mi_y(2, S1C | X2, S2C)? + c12,
        ),
        // R1 + 2R2
        (
            1.0,
            2.0,
            m.mi_y(1, X1 | S2C, S1C)? + m.mi_y(2, S1C | X2, 0)? + m.mi_y(2, X2, S1C | S2C)? + c12
                + coop_back,
        ),
        (
            1.0,
            2.0,
            m.mi_y(1, X1 | S2C, S1C)?
                + m.mi_y(1, S2C, X1)?
                + m.mi_y(2, S1C | X2, S2C)?
                + m.mi_y(2, X2, S1C | S2C)?
                + c12
                + coop_back,
        ),
        (
            1.0,
            2.0,
            m.mi_joint(X1 | S2C, S1C)? + m.mi_y(2, S1C | X2, 0)? + m.mi_y(2, X2, S1C | S2C)? + c12,
        ),
        (
            1.0,
            2.0,
            m.mi_joint(X1 | S2C, S1C)?
                + m.mi_y(1, S2C, X1)?
                + m.mi_y(2, S1C | X2, S2C)?
                + m.mi_y(2, X2, S1C | S2C)?
                + c12,
        ),
    ];

    Ok(bounds
        .iter()
        .map(|&(a, b, c)| RateConstraint { a, b, c })
        .collect())
}

/// The achievable polygon of one processing order: all 16 bounds of the
/// strategy, intersected with the nonnegative quadrant.
pub fn strategy_region(ch: &ChannelInstance, order: StrategyOrder) -> Result<StrategyRegion, Error> {
    let constraints = match order {
        StrategyOrder::TwoOneTwo => strategy_constraints_2to1(ch)?,
        StrategyOrder::OneTwoOne => strategy_constraints_2to1(&ch.swapped())?
            .into_iter()
            .map(|k| RateConstraint {
                a: k.b,
                b: k.a,
                c: k.c,
            })
            .collect(),
    };
    let region = region::region_from_constraints(&constraints)?;
    Ok(StrategyRegion {
        order,
        constraints,
        region,
    })
}

/// Convex hull of everything the achievability analysis certifies: the two
/// processing orders' polygons (time sharing makes their hull achievable)
/// together with the displaced-constraint core region.
///
/// The core has to enter the hull explicitly. The two bounds that the
/// cooperation-protocol analysis leaves unevaluated (the bare `R1` cut and
/// the joint-observation `2R1+R2` cut) can shave corners of the certified
/// core off the two-strategy hull for strongly asymmetric antenna counts,
/// so the hull of the strategy polygons alone does not always cover it.
pub fn combined_achievable(ch: &ChannelInstance) -> Result<RateRegion2D, Error> {
    let a = strategy_region(ch, StrategyOrder::TwoOneTwo)?;
    let b = strategy_region(ch, StrategyOrder::OneTwoOne)?;
    let core = guaranteed_inner_region(ch)?;
    Ok(region::hull_union(
        &region::hull_union(&a.region, &b.region),
        &core,
    ))
}

/// Constraints of the guaranteed inner region: each outer-bound direction
/// displaced by the constants the achievability argument certifies.
pub fn guaranteed_inner_constraints(t: &OuterTerms, n1: usize, n2: usize) -> [RateConstraint; 5] {
    let (n1, n2) = (n1 as f64, n2 as f64);
    let g = n1 + n2;
    [
        RateConstraint::r1(t.i1 - g),
        RateConstraint::r2(t.i2 - g),
        RateConstraint::sum(t.i3.min(t.i4).min(t.i5).min(t.i6) - g - n1.max(n2)),
        RateConstraint::two_one(t.i7.min(t.i9) - 2.0 * g),
        RateConstraint::one_two(t.i8.min(t.i10) - 2.0 * g - n2),
    ]
}

/// The inner region guaranteed by the constant-gap certificate; may be
/// empty at low SNR, in which case it degenerates to the point `(0, 0)`.
pub fn guaranteed_inner_region(ch: &ChannelInstance) -> Result<RateRegion2D, Error> {
    let t = outer::outer_terms(ch)?;
    region::region_from_constraints(&guaranteed_inner_constraints(&t, ch.n1, ch.n2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{
        generate, nesting_figure_instance, siso_from_scalars, ChannelSeedSpec, CoopSpec, GainSpec,
    };
    use crate::hermitian::{eigenvalues, psd_check};
    use crate::region::contains;
    use crate::rng::SplitMix64;
    use std::vec;

    fn fig2a() -> ChannelInstance {
        siso_from_scalars(5.0, 5.0, 2.0, 2.0, 1.1, 1.1).unwrap()
    }

    fn fig2b() -> ChannelInstance {
        siso_from_scalars(1000.0, 1500.0, 4000.0, 10000.0, 11.0, 6.0).unwrap()
    }

    fn random_corpus(seed: u64, count: usize) -> std::vec::Vec<ChannelInstance> {
        let mut rng = SplitMix64::new(seed);
        (0..count)
            .map(|_| {
                let dims = [
                    1 + (rng.next_u64() % 4) as usize,
                    1 + (rng.next_u64() % 4) as usize,
                    1 + (rng.next_u64() % 4) as usize,
                    1 + (rng.next_u64() % 4) as usize,
                ];
                let mut rho = [0.0; 4];
                for r in rho.iter_mut() {
                    *r = math::pow(10.0, 9.0 * rng.next_f64());
                }
                let c12 = 30.0 * rng.next_f64();
                let c21 = 30.0 * rng.next_f64();
                generate(&ChannelSeedSpec {
                    m1: dims[0],
                    n1: dims[1],
                    m2: dims[2],
                    n2: dims[3],
                    gains: GainSpec::Direct {
                        rho11: rho[0],
                        rho12: rho[1],
                        rho21: rho[2],
                        rho22: rho[3],
                    },
                    coop: CoopSpec::Direct { c12, c21 },
                    seed: rng.next_u64(),
                })
                .unwrap()
            })
            .collect()
    }

    #[test]
    fn split_is_all_private_without_cross_gain() {
        let mut ch = fig2a();
        ch.rho12 = 0.0;
        let s = covariance_split(&ch).unwrap();
        assert!((s.q1p.get(0, 0).re - 1.0).abs() < 1e-14);
        assert!(s.q1c.get(0, 0).abs() < 1e-14);
    }

    #[test]
    fn split_scalar_value() {
        // rho12 |H12|^2 = 2 gives q1p = 1/3.
        let ch = siso_from_scalars(1.0, 1.0, 0.0, 2.0, 0.0, 0.0).unwrap();
        let s = covariance_split(&ch).unwrap();
        assert!((s.q1p.get(0, 0).re - 1.0 / 3.0).abs() < 1e-14);
        assert!((s.q1c.get(0, 0).re - 2.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn split_private_leak_below_noise_floor() {
        for ch in random_corpus(21, 50) {
            let s = covariance_split(&ch).unwrap();
            // q_ip + q_ic = I to machine precision.
            let sum1 = s.q1p.add(&s.q1c);
            assert!(
                sum1.sub(&HermitianMatrix::identity(ch.m1)).max_abs() < 1e-12,
                "split does not sum to identity"
            );
            assert!(psd_check(&s.q1p, Some(&HermitianMatrix::identity(ch.m1))).unwrap());
            assert!(psd_check(&s.q2p, Some(&HermitianMatrix::identity(ch.m2))).unwrap());
            let leak1 = private_leak(&ch.h12, &s.q1p, ch.rho12);
            let top = eigenvalues(&leak1).last().copied().unwrap();
            assert!(top <= 1.0 + 1e-9, "leak eigenvalue {top}");
            let leak2 = private_leak(&ch.h21, &s.q2p, ch.rho21);
            let top = eigenvalues(&leak2).last().copied().unwrap();
            assert!(top <= 1.0 + 1e-9, "leak eigenvalue {top}");
        }
    }

    #[test]
    fn quantization_loss_boundary_cases() {
        // No cross observation: the chain collapses to log det(2 Delta) -
        // log det(Delta) = N2 exactly.
        let mut ch = fig2a();
        ch.rho21 = 0.0;
        let s = covariance_split(&ch).unwrap();
        let p = quantization_plan(&ch, &s, StrategyOrder::TwoOneTwo).unwrap();
        assert!((p.xi - 1.0).abs() < 1e-9, "xi = {}", p.xi);

        // Dead direct link: Delta = I and xi = N2 again.
        let mut ch = fig2a();
        ch.rho22 = 0.0;
        let s = covariance_split(&ch).unwrap();
        let p = quantization_plan(&ch, &s, StrategyOrder::TwoOneTwo).unwrap();
        assert!((p.delta.sub(&HermitianMatrix::identity(1))).max_abs() < 1e-12);
        assert!((p.xi - 1.0).abs() < 1e-9);
    }

    #[test]
    fn quantization_loss_bounded_by_antennas() {
        let ch = fig2a();
        let s = covariance_split(&ch).unwrap();
        let p = quantization_plan(&ch, &s, StrategyOrder::TwoOneTwo).unwrap();
        assert!(p.xi > 0.0 && p.xi <= 1.0 + 1e-9, "xi = {}", p.xi);

        for ch in random_corpus(33, 100) {
            let s = covariance_split(&ch).unwrap();
            let p2 = quantization_plan(&ch, &s, StrategyOrder::TwoOneTwo).unwrap();
            assert!(p2.xi <= ch.n2 as f64 + 1e-9, "xi {} > N2 {}", p2.xi, ch.n2);
            assert!(p2.xi >= -1e-9);
            let p1 = quantization_plan(&ch, &s, StrategyOrder::OneTwoOne).unwrap();
            assert!(p1.xi <= ch.n1 as f64 + 1e-9, "xi {} > N1 {}", p1.xi, ch.n1);
        }
    }

    #[test]
    fn zero_channel_gives_zero_region() {
        let mut ch = siso_from_scalars(0.0, 0.0, 0.0, 0.0, 0.0, 0.0).unwrap();
        ch.h11 = CMatrix::zeros(1, 1);
        ch.h12 = CMatrix::zeros(1, 1);
        ch.h21 = CMatrix::zeros(1, 1);
        ch.h22 = CMatrix::zeros(1, 1);
        let r = strategy_region(&ch, StrategyOrder::TwoOneTwo).unwrap();
        assert_eq!(r.region.vertices, vec![(0.0, 0.0)]);
    }

    #[test]
    fn strategy_region_inside_outer() {
        let outer = crate::outer::outer_region(&fig2a()).unwrap();
        let r = strategy_region(&fig2a(), StrategyOrder::TwoOneTwo).unwrap();
        assert!(!r.region.empty);
        for &v in &r.region.vertices {
            assert!(contains(&outer, v, 1e-6), "{v:?} outside outer");
        }
    }

    #[test]
    fn no_cooperation_still_achieves_rates() {
        let ch = siso_from_scalars(5.0, 5.0, 2.0, 2.0, 0.0, 0.0).unwrap();
        let r = strategy_region(&ch, StrategyOrder::TwoOneTwo).unwrap();
        let best = r
            .region
            .vertices
            .iter()
            .map(|v| v.0 + v.1)
            .fold(0.0f64, f64::max);
        assert!(best > 0.5, "noncooperative rates collapsed: {best}");
    }

    #[test]
    fn symmetric_channel_symmetric_hull() {
        let ch = siso_from_scalars(5.0, 5.0, 2.0, 2.0, 1.1, 1.1).unwrap();
        let hull = combined_achievable(&ch).unwrap();
        for &(x, y) in &hull.vertices {
            assert!(contains(&hull, (y, x), 1e-7), "asymmetric at ({x},{y})");
        }
    }

    #[test]
    fn hull_covers_both_strategies() {
        let ch = fig2a();
        let hull = combined_achievable(&ch).unwrap();
        for order in [StrategyOrder::TwoOneTwo, StrategyOrder::OneTwoOne] {
            let r = strategy_region(&ch, order).unwrap();
            for &v in &r.region.vertices {
                assert!(contains(&hull, v, 1e-7));
            }
        }
    }

    #[test]
    fn strong_interference_hull_inside_outer() {
        let ch = fig2b();
        let outer = crate::outer::outer_region(&ch).unwrap();
        let hull = combined_achievable(&ch).unwrap();
        for &v in &hull.vertices {
            assert!(contains(&outer, v, 1e-6), "{v:?} outside outer");
        }
    }

    #[test]
    fn guaranteed_inner_zero_channel_empty() {
        let mut ch = siso_from_scalars(0.0, 0.0, 0.0, 0.0, 0.0, 0.0).unwrap();
        ch.h11 = CMatrix::zeros(1, 1);
        ch.h12 = CMatrix::zeros(1, 1);
        ch.h21 = CMatrix::zeros(1, 1);
        ch.h22 = CMatrix::zeros(1, 1);
        let r = guaranteed_inner_region(&ch).unwrap();
        assert!(r.empty);
        assert_eq!(r.vertices, vec![(0.0, 0.0)]);
    }

    #[test]
    fn guaranteed_inner_constraints_are_displaced_terms() {
        let ch = nesting_figure_instance();
        let t = crate::outer::outer_terms(&ch).unwrap();
        let ks = guaranteed_inner_constraints(&t, ch.n1, ch.n2);
        assert_eq!(ks[0].c, t.i1 - 7.0);
        assert_eq!(ks[1].c, t.i2 - 7.0);
        assert_eq!(
            ks[2].c,
            t.i3.min(t.i4).min(t.i5).min(t.i6) - 7.0 - 4.0
        );
        assert_eq!(ks[3].c, t.i7.min(t.i9) - 14.0);
        assert_eq!(ks[4].c, t.i8.min(t.i10) - 14.0 - 3.0);
        let r = guaranteed_inner_region(&ch).unwrap();
        assert!(!r.empty, "high-SNR instance must have a nonempty core");
    }

    #[test]
    fn guaranteed_inner_inside_outer() {
        for ch in random_corpus(55, 40) {
            let outer = crate::outer::outer_region(&ch).unwrap();
            let inner = guaranteed_inner_region(&ch).unwrap();
            for &v in &inner.vertices {
                assert!(contains(&outer, v, 1e-6));
            }
        }
    }

    #[test]
    fn sandwich_and_hull_coverage_on_random_corpus() {
        for ch in random_corpus(77, 60) {
            let outer = crate::outer::outer_region(&ch).unwrap();
            let inner = guaranteed_inner_region(&ch).unwrap();
            let achievable = combined_achievable(&ch).unwrap();
            let g = (ch.n1 + ch.n2) as f64;
            let eroded = region::erode_by_box(&outer, g, g);
            for &v in &eroded.vertices {
                assert!(
                    contains(&inner, v, 1e-9),
                    "eroded outer vertex {v:?} outside guaranteed inner"
                );
            }
            for &v in &inner.vertices {
                assert!(
                    contains(&achievable, v, 1e-6),
                    "guaranteed vertex {v:?} outside achievable hull"
                );
            }
            for &v in &achievable.vertices {
                assert!(
                    contains(&outer, v, 1e-6),
                    "achievable vertex {v:?} outside outer"
                );
            }
        }
    }
}

