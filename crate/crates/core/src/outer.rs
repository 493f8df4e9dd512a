//! The ten closed-form outer-bound terms and the outer region they cut out.
//!
//! Terms of the shape `log det(I + A - B (I + D)^-1 B†)` are never formed by
//! explicit subtraction: each is read off a positive-definite block matrix
//! as `log det(block) - log det(I + D)`, which is the same block-determinant
//! identity the bounds are derived with. Backhaul capacities may be `+inf`;
//! `min{x, +inf} = x` and `x + inf = inf` follow IEEE semantics, which is
//! the saturating arithmetic the extended-real terms need.

use crate::channel::ChannelInstance;
use crate::error::Error;
use crate::hermitian::{
    self, gram, logdet2_hpd, logdet_schur_complement, sandwich, CMatrix, HermitianMatrix,
};
use crate::math;
use crate::region::{self, RateConstraint, RateRegion2D};

/// Evaluated right-hand sides, in bits; `i1` bounds `R1`, `i2` bounds `R2`,
/// `i3..i6` bound `R1+R2`, `i7` and `i9` bound `2R1+R2`, `i8` and `i10`
/// bound `R1+2R2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OuterTerms {
    pub i1: f64,
    pub i2: f64,
    pub i3: f64,
    pub i4: f64,
    pub i5: f64,
    pub i6: f64,
    pub i7: f64,
    pub i8: f64,
    pub i9: f64,
    pub i10: f64,
}

impl OuterTerms {
    pub fn as_array(&self) -> [f64; 10] {
        [
            self.i1, self.i2, self.i3, self.i4, self.i5, self.i6, self.i7, self.i8, self.i9,
            self.i10,
        ]
    }

    pub const NAMES: [&'static str; 10] = [
        "i1", "i2", "i3", "i4", "i5", "i6", "i7", "i8", "i9", "i10",
    ];

    /// Constraint direction `(a, b)` of each term, in `as_array` order.
    pub const DIRECTIONS: [(f64, f64); 10] = [
        (1.0, 0.0),
        (0.0, 1.0),
        (1.0, 1.0),
        (1.0, 1.0),
        (1.0, 1.0),
        (1.0, 1.0),
        (2.0, 1.0),
        (1.0, 2.0),
        (2.0, 1.0),
        (1.0, 2.0),
    ];
}

/// `sqrt(rho_a * rho_b) * Ha Hb†`, with the scales rooted separately so the
/// product cannot overflow first.
fn scaled_cross(ha: &CMatrix, rho_a: f64, hb: &CMatrix, rho_b: f64) -> CMatrix {
    ha.mul(&hb.adjoint())
        .scale(math::sqrt(rho_a) * math::sqrt(rho_b))
}

fn scaled(h: &CMatrix, rho: f64) -> CMatrix {
    h.scale(math::sqrt(rho))
}

struct Grams {
    g11: HermitianMatrix,
    g12: HermitianMatrix,
    g21: HermitianMatrix,
    g22: HermitianMatrix,
}

fn grams(ch: &ChannelInstance) -> Grams {
    Grams {
        g11: gram(&ch.h11, ch.rho11).add_scaled_identity(1.0),
        g12: gram(&ch.h12, ch.rho12).add_scaled_identity(1.0),
        g21: gram(&ch.h21, ch.rho21).add_scaled_identity(1.0),
        g22: gram(&ch.h22, ch.rho22).add_scaled_identity(1.0),
    }
}

/// Evaluates the ten outer-bound right-hand sides for a valid channel.
pub fn outer_terms(ch: &ChannelInstance) -> Result<OuterTerms, Error> {
    let g = grams(ch);
    // I + G11 + G21 and I + G22 + G12 (each G already carries its identity).
    let y1 = g.g11.add(&g.g21).add_scaled_identity(-1.0);
    let y2 = g.g22.add(&g.g12).add_scaled_identity(-1.0);

    // Direct-link private terms: log det(I + Gxx - cross (I + Gyy)^-1 cross†).
    let x_11_12 = scaled_cross(&ch.h11, ch.rho11, &ch.h12, ch.rho12);
    let x_22_21 = scaled_cross(&ch.h22, ch.rho22, &ch.h21, ch.rho21);
    let x_12_11 = x_11_12.adjoint();
    let x_21_22 = x_22_21.adjoint();

    let ld_g11 = logdet2_hpd(&g.g11)?;
    let ld_g22 = logdet2_hpd(&g.g22)?;
    let ld_y1 = logdet2_hpd(&y1)?;
    let ld_y2 = logdet2_hpd(&y2)?;

    // i1 / i2 second summands: the interference a receiver still sees about
    // the other transmitter after conditioning on that transmitter's direct
    // observation.
    let i1_leak = logdet_schur_complement(&g.g11, &x_11_12, &g.g12)?;
    let i2_leak = logdet_schur_complement(&g.g22, &x_22_21, &g.g21)?;

    let i1 = ld_g11 + i1_leak.min(ch.c21);
    let i2 = ld_g22 + i2_leak.min(ch.c12);

    // Conditional full-signal terms shared by i3, i4, i5, i7, i8.
    let t_y1_given_s1 = logdet_schur_complement(&g.g12, &x_12_11, &y1)?;
    let t_y2_given_s2 = logdet_schur_complement(&g.g21, &x_21_22, &y2)?;
    let t_d1_given_s1 = logdet_schur_complement(&g.g12, &x_12_11, &g.g11)?;
    let t_d2_given_s2 = logdet_schur_complement(&g.g21, &x_21_22, &g.g22)?;

    let i3 = t_y1_given_s1 + t_y2_given_s2 + ch.c12 + ch.c21;
    let i4 = t_d1_given_s1 + ld_y2 + ch.c12;
    let i5 = t_d2_given_s2 + ld_y1 + ch.c21;

    // i6: the aggregate two-receiver cut.
    let w1 = scaled(&ch.h11, ch.rho11).vstack(&scaled(&ch.h12, ch.rho12));
    let w2 = scaled(&ch.h21, ch.rho21).vstack(&scaled(&ch.h22, ch.rho22));
    let i6 = logdet2_hpd(
        &gram(&w1, 1.0)
            .add(&gram(&w2, 1.0))
            .add_scaled_identity(1.0),
    )?;

    let i7 = t_d1_given_s1 + t_y2_given_s2 + ld_y1 + ch.c12 + ch.c21;
    let i8 = t_d2_given_s2 + t_y1_given_s1 + ld_y2 + ch.c12 + ch.c21;

    // i9 / i10: joint-receiver terms with one transmitter's signal capped by
    // the resolvent kernel L(I, sqrt(rho) H†) = (I + rho H† H)^-1.
    let cap2 = hermitian::schur_capped(
        &HermitianMatrix::identity(ch.m2),
        &scaled(&ch.h21, ch.rho21).adjoint(),
    )?;
    let u9 = scaled(&ch.h22, ch.rho22).vstack(&scaled(&ch.h21, ch.rho21));
    let v9 = scaled(&ch.h12, ch.rho12).vstack(&scaled(&ch.h11, ch.rho11));
    let i9 = logdet2_hpd(
        &sandwich(&u9, &cap2, 1.0)
            .add(&gram(&v9, 1.0))
            .add_scaled_identity(1.0),
    )? + ld_y1
        + ch.c21;

    let cap1 = hermitian::schur_capped(
        &HermitianMatrix::identity(ch.m1),
        &scaled(&ch.h12, ch.rho12).adjoint(),
    )?;
    let u10 = scaled(&ch.h11, ch.rho11).vstack(&scaled(&ch.h12, ch.rho12));
    let v10 = scaled(&ch.h21, ch.rho21).vstack(&scaled(&ch.h22, ch.rho22));
    let i10 = logdet2_hpd(
        &sandwich(&u10, &cap1, 1.0)
            .add(&gram(&v10, 1.0))
            .add_scaled_identity(1.0),
    )? + ld_y2
        + ch.c12;

    Ok(OuterTerms {
        i1,
        i2,
        i3,
        i4,
        i5,
        i6,
        i7,
        i8,
        i9,
        i10,
    })
}

/// The outer region: `R1 <= i1`, `R2 <= i2`, `R1+R2 <= min{i3..i6}`,
/// `2R1+R2 <= min{i7,i9}`, `R1+2R2 <= min{i8,i10}`, clipped to the
/// nonnegative quadrant. The constraint set is already convex; no hull step
/// is involved.
pub fn outer_region(ch: &ChannelInstance) -> Result<RateRegion2D, Error> {
    let t = outer_terms(ch)?;
    region_from_terms(&t)
}

pub fn region_from_terms(t: &OuterTerms) -> Result<RateRegion2D, Error> {
    region::region_from_constraints(&[
        RateConstraint::r1(t.i1),
        RateConstraint::r2(t.i2),
        RateConstraint::sum(t.i3.min(t.i4).min(t.i5).min(t.i6)),
        RateConstraint::two_one(t.i7.min(t.i9)),
        RateConstraint::one_two(t.i8.min(t.i10)),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{
        generate, nesting_figure_instance, siso_from_scalars, ChannelSeedSpec, CoopSpec, GainSpec,
    };
    use crate::region::contains;
    use std::vec;

    fn fig2a() -> ChannelInstance {
        siso_from_scalars(5.0, 5.0, 2.0, 2.0, 1.1, 1.1).unwrap()
    }

    fn random_instance(seed: u64, c12: f64, c21: f64) -> ChannelInstance {
        generate(&ChannelSeedSpec {
            m1: 2,
            n1: 2,
            m2: 3,
            n2: 2,
            gains: GainSpec::Direct {
                rho11: 50.0,
                rho12: 12.0,
                rho21: 8.0,
                rho22: 70.0,
            },
            coop: CoopSpec::Direct { c12, c21 },
            seed,
        })
        .unwrap()
    }

    #[test]
    fn zero_channel_zero_terms() {
        let mut ch = siso_from_scalars(0.0, 0.0, 0.0, 0.0, 0.0, 0.0).unwrap();
        ch.h11 = CMatrix::zeros(1, 1);
        ch.h12 = CMatrix::zeros(1, 1);
        ch.h21 = CMatrix::zeros(1, 1);
        ch.h22 = CMatrix::zeros(1, 1);
        let t = outer_terms(&ch).unwrap();
        for v in t.as_array() {
            assert_eq!(v, 0.0);
        }
        let r = outer_region(&ch).unwrap();
        assert_eq!(r.vertices, vec![(0.0, 0.0)]);
        assert!(!r.empty);
    }

    #[test]
    fn weak_interference_scalar_value() {
        // SNR1 = 5, INR2 = 2, C21 = 1.1: the leak term is log2(4/3) < 1.1,
        // so i1 = log2 6 + log2(4/3) = log2 8 = 3 bits.
        let t = outer_terms(&fig2a()).unwrap();
        assert!((t.i1 - 3.0).abs() < 1e-10, "i1 = {}", t.i1);
    }

    #[test]
    fn zero_cross_matrix_collapses_leak() {
        let mut ch = fig2a();
        ch.h12 = CMatrix::zeros(1, 1);
        let t = outer_terms(&ch).unwrap();
        let want = math::log2(1.0 + ch.rho11);
        assert!((t.i1 - want).abs() < 1e-12);
    }

    #[test]
    fn terms_monotone_in_cooperation_and_i6_flat() {
        let lo = random_instance(5, 1.0, 2.0);
        let hi = random_instance(5, 4.0, 6.0);
        let t_lo = outer_terms(&lo).unwrap();
        let t_hi = outer_terms(&hi).unwrap();
        for (a, b) in t_lo.as_array().iter().zip(t_hi.as_array()) {
            assert!(*a <= b + 1e-12);
        }
        assert_eq!(t_lo.i6, t_hi.i6);
    }

    #[test]
    fn terms_monotone_in_gains() {
        for seed in 0..20 {
            let base = random_instance(seed, 2.0, 2.0);
            let mut boosted = base.clone();
            boosted.rho11 *= 2.0;
            boosted.rho12 *= 2.0;
            boosted.rho21 *= 2.0;
            boosted.rho22 *= 2.0;
            let ta = outer_terms(&base).unwrap();
            let tb = outer_terms(&boosted).unwrap();
            for (k, (a, b)) in ta.as_array().iter().zip(tb.as_array()).enumerate() {
                assert!(
                    *a <= b + 1e-9,
                    "seed {seed} term {} decreased: {a} -> {b}",
                    OuterTerms::NAMES[k]
                );
            }
        }
    }

    #[test]
    fn region_nested_in_cooperation() {
        for seed in 0..50 {
            let lo = random_instance(seed, 0.5, 0.25);
            let hi = random_instance(seed, 3.0, 2.5);
            let r_lo = outer_region(&lo).unwrap();
            let r_hi = outer_region(&hi).unwrap();
            for &v in &r_lo.vertices {
                assert!(contains(&r_hi, v, 1e-9), "seed {seed}: {v:?} escaped");
            }
        }
    }

    #[test]
    fn infinite_cooperation_region() {
        let inf = f64::INFINITY;
        let ch = siso_from_scalars(5.0, 5.0, 2.0, 2.0, inf, inf).unwrap();
        let t = outer_terms(&ch).unwrap();
        assert!(t.i1.is_finite() && t.i2.is_finite() && t.i6.is_finite());
        assert_eq!(t.i3, inf);
        assert_eq!(t.i7, inf);
        let r = outer_region(&ch).unwrap();
        // Governed by i1, i2, i6 only.
        assert!(!r.empty);
        let max_sum = r
            .vertices
            .iter()
            .map(|v| v.0 + v.1)
            .fold(0.0f64, f64::max);
        assert!((max_sum - t.i6).abs() < 1e-9);
    }

    #[test]
    fn nesting_figure_region_is_bounded_polygon() {
        let ch = nesting_figure_instance();
        let r = outer_region(&ch).unwrap();
        assert!(!r.empty);
        assert!(r.vertices.len() >= 4);
        let t = outer_terms(&ch).unwrap();
        for v in t.as_array() {
            assert!(v.is_finite());
        }
    }

    #[test]
    fn extreme_gains_stay_finite() {
        let ch = siso_from_scalars(1e12, 1e12, 1e6, 1e6, 30.0, 30.0).unwrap();
        let t = outer_terms(&ch).unwrap();
        for v in t.as_array() {
            assert!(v.is_finite() && v >= 0.0);
        }
        // Both receivers pinned at SNR 1e12: the joint cut is ~2 log2(1e12).
        assert!((t.i6 - 2.0 * math::log2(1e12)).abs() < 1.0);
    }
}
