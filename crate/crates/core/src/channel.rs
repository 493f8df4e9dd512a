//! Channel instances: the tuple (antenna counts, channel matrices, link
//! gains, backhaul capacities) describing a two-user MIMO interference
//! channel with receiver-cooperation links.

use alloc::vec::Vec;

use crate::complex::Cx;
use crate::error::Error;
use crate::hermitian::{self, CMatrix};
use crate::math;
use crate::rng::SplitMix64;

/// A fully specified two-user instance.
///
/// `h12` carries transmitter 1 to receiver 2 (shape `n2 x m1`), `h21`
/// transmitter 2 to receiver 1 (shape `n1 x m2`). Gains `rho` are linear;
/// backhaul capacities `c12` (receiver 1 to 2) and `c21` (receiver 2 to 1)
/// are in bits per channel use and may be `+inf`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelInstance {
    pub m1: usize,
    pub n1: usize,
    pub m2: usize,
    pub n2: usize,
    pub h11: CMatrix,
    pub h12: CMatrix,
    pub h21: CMatrix,
    pub h22: CMatrix,
    pub rho11: f64,
    pub rho12: f64,
    pub rho21: f64,
    pub rho22: f64,
    pub c12: f64,
    pub c21: f64,
}

/// Non-fatal findings from [`validate`].
#[derive(Debug, Clone, PartialEq)]
pub enum Warning {
    /// A channel matrix is close to rank deficient.
    IllConditioned { matrix: &'static str, cond: f64 },
}

/// How the four link gains of a generated instance are chosen.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GainSpec {
    Direct {
        rho11: f64,
        rho12: f64,
        rho21: f64,
        rho22: f64,
    },
    /// Direct links at `snr`, cross links at `snr^alpha`.
    SnrExponent { snr: f64, alpha: f64 },
}

/// How the two backhaul capacities of a generated instance are chosen.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CoopSpec {
    Direct { c12: f64, c21: f64 },
    /// `C = beta * log2(snr)`; only valid with [`GainSpec::SnrExponent`].
    BetaExponent { beta12: f64, beta21: f64 },
}

/// Deterministic recipe for a random instance: identical specs generate
/// identical instances.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelSeedSpec {
    pub m1: usize,
    pub n1: usize,
    pub m2: usize,
    pub n2: usize,
    pub gains: GainSpec,
    pub coop: CoopSpec,
    pub seed: u64,
}

impl ChannelInstance {
    /// Constructs and validates; any validation error is returned.
    pub fn new(
        m1: usize,
        n1: usize,
        m2: usize,
        n2: usize,
        h11: CMatrix,
        h12: CMatrix,
        h21: CMatrix,
        h22: CMatrix,
        rho: [f64; 4],
        c12: f64,
        c21: f64,
    ) -> Result<Self, Error> {
        let ch = ChannelInstance {
            m1,
            n1,
            m2,
            n2,
            h11,
            h12,
            h21,
            h22,
            rho11: rho[0],
            rho12: rho[1],
            rho21: rho[2],
            rho22: rho[3],
            c12,
            c21,
        };
        validate(&ch)?;
        Ok(ch)
    }

    /// The same channel with the two user indices exchanged.
    pub fn swapped(&self) -> ChannelInstance {
        ChannelInstance {
            m1: self.m2,
            n1: self.n2,
            m2: self.m1,
            n2: self.n1,
            h11: self.h22.clone(),
            h12: self.h21.clone(),
            h21: self.h12.clone(),
            h22: self.h11.clone(),
            rho11: self.rho22,
            rho12: self.rho21,
            rho21: self.rho12,
            rho22: self.rho11,
            c12: self.c21,
            c21: self.c12,
        }
    }
}

fn check_gain(x: f64) -> Result<(), Error> {
    if x.is_nan() || x < 0.0 || x == f64::INFINITY {
        return Err(Error::NegativeParameter);
    }
    Ok(())
}

fn check_capacity(x: f64) -> Result<(), Error> {
    // +inf is a legal backhaul capacity.
    if x.is_nan() || x < 0.0 {
        return Err(Error::NegativeParameter);
    }
    Ok(())
}

/// Condition number of `H` from the eigenvalues of the smaller Gram matrix.
fn condition_number(h: &CMatrix) -> f64 {
    let g = if h.rows() <= h.cols() {
        hermitian::gram(h, 1.0)
    } else {
        hermitian::gram(&h.adjoint(), 1.0)
    };
    let eigs = hermitian::eigenvalues(&g);
    let max = eigs.last().copied().unwrap_or(0.0).max(0.0);
    let min = eigs.first().copied().unwrap_or(0.0).max(0.0);
    if min == 0.0 {
        return f64::INFINITY;
    }
    math::sqrt(max / min)
}

/// Checks shapes, signs and finiteness; returns warnings for channel
/// matrices with condition number above `1e8` (near rank deficiency breaks
/// the full-rank assumption behind the asymptotic characterizations).
pub fn validate(ch: &ChannelInstance) -> Result<Vec<Warning>, Error> {
    if ch.m1 == 0 || ch.n1 == 0 || ch.m2 == 0 || ch.n2 == 0 {
        return Err(Error::ShapeError);
    }
    if ch.n1 + ch.n2 > hermitian::MAX_DIM || ch.m1 + ch.m2 > hermitian::MAX_DIM {
        return Err(Error::ShapeError);
    }
    let shapes = [
        (&ch.h11, ch.n1, ch.m1),
        (&ch.h12, ch.n2, ch.m1),
        (&ch.h21, ch.n1, ch.m2),
        (&ch.h22, ch.n2, ch.m2),
    ];
    for (h, rows, cols) in shapes {
        if h.rows() != rows || h.cols() != cols {
            return Err(Error::ShapeError);
        }
        if !h.is_finite() {
            return Err(Error::NegativeParameter);
        }
    }
    for rho in [ch.rho11, ch.rho12, ch.rho21, ch.rho22] {
        check_gain(rho)?;
    }
    check_capacity(ch.c12)?;
    check_capacity(ch.c21)?;

    let mut warnings = Vec::new();
    for (name, h) in [
        ("h11", &ch.h11),
        ("h12", &ch.h12),
        ("h21", &ch.h21),
        ("h22", &ch.h22),
    ] {
        let cond = condition_number(h);
        if cond > 1e8 {
            warnings.push(Warning::IllConditioned { matrix: name, cond });
        }
    }
    Ok(warnings)
}

fn draw_matrix(rng: &mut SplitMix64, rows: usize, cols: usize) -> CMatrix {
    let inv_sqrt2 = 1.0 / math::sqrt(2.0);
    let entries: Vec<Cx> = (0..rows * cols)
        .map(|_| {
            let (a, b) = rng.standard_normal_pair();
            Cx::new(a * inv_sqrt2, b * inv_sqrt2)
        })
        .collect();
    CMatrix::new(rows, cols, entries).unwrap()
}

/// Generates an instance with i.i.d. unit-variance complex Gaussian matrix
/// entries (real and imaginary parts each N(0, 1/2)).
///
/// Matrices are drawn in the fixed order `h11, h12, h21, h22`, each
/// row-major, from the SplitMix64 stream of `spec.seed`; gains and
/// capacities never touch the stream, so rescaling them leaves the drawn
/// matrices unchanged.
pub fn generate(spec: &ChannelSeedSpec) -> Result<ChannelInstance, Error> {
    let (rho11, rho12, rho21, rho22) = match spec.gains {
        GainSpec::Direct {
            rho11,
            rho12,
            rho21,
            rho22,
        } => (rho11, rho12, rho21, rho22),
        GainSpec::SnrExponent { snr, alpha } => {
            if !(snr >= 0.0) || !(alpha >= 0.0) || !snr.is_finite() || !alpha.is_finite() {
                return Err(Error::InvalidSpec);
            }
            let cross = math::pow(snr, alpha);
            (snr, cross, cross, snr)
        }
    };
    let (c12, c21) = match spec.coop {
        CoopSpec::Direct { c12, c21 } => (c12, c21),
        CoopSpec::BetaExponent { beta12, beta21 } => match spec.gains {
            GainSpec::SnrExponent { snr, .. } => {
                if !(beta12 >= 0.0) || !(beta21 >= 0.0) || snr < 1.0 {
                    return Err(Error::InvalidSpec);
                }
                let log_snr = math::log2(snr);
                (beta12 * log_snr, beta21 * log_snr)
            }
            GainSpec::Direct { .. } => return Err(Error::InvalidSpec),
        },
    };

    let mut rng = SplitMix64::new(spec.seed);
    let h11 = draw_matrix(&mut rng, spec.n1, spec.m1);
    let h12 = draw_matrix(&mut rng, spec.n2, spec.m1);
    let h21 = draw_matrix(&mut rng, spec.n1, spec.m2);
    let h22 = draw_matrix(&mut rng, spec.n2, spec.m2);
    ChannelInstance::new(
        spec.m1,
        spec.n1,
        spec.m2,
        spec.n2,
        h11,
        h12,
        h21,
        h22,
        [rho11, rho12, rho21, rho22],
        c12,
        c21,
    )
    .map_err(|e| match e {
        Error::ShapeError => Error::InvalidSpec,
        other => other,
    })
}

/// A `(1,1,1,1)` instance with unit channel coefficients and the gains set
/// directly to the given SNR/INR values: `rho11 = snr1`, `rho22 = snr2`,
/// `rho21 = inr1`, `rho12 = inr2`.
pub fn siso_from_scalars(
    snr1: f64,
    snr2: f64,
    inr1: f64,
    inr2: f64,
    c12: f64,
    c21: f64,
) -> Result<ChannelInstance, Error> {
    let one = || CMatrix::identity(1);
    ChannelInstance::new(
        1,
        1,
        1,
        1,
        one(),
        one(),
        one(),
        one(),
        [snr1, inr2, inr1, snr2],
        c12,
        c21,
    )
}

/// The MIMO instance printed alongside the cooperation-nesting figure:
/// `M1 = N2 = 3`, `M2 = N1 = 4`, all gains `1e8`, `C12 = 15`, `C21 = 21`.
pub fn nesting_figure_instance() -> ChannelInstance {
    let h11 = CMatrix::from_real(
        4,
        3,
        &[
            0.3096, 0.1974, 0.1080, //
            0.3066, 0.4470, 0.3885, //
            0.3595, 0.6582, 0.9854, //
            0.4595, 0.6582, 0.4566,
        ],
    )
    .unwrap();
    let h22 = CMatrix::from_real(
        3,
        4,
        &[
            0.9070, 0.6690, 0.6854, 0.6565, //
            0.6067, 0.9480, 0.6585, 0.6645, //
            0.4465, 0.6167, 0.6845, 0.3685,
        ],
    )
    .unwrap();
    let h21 = CMatrix::from_real(
        4,
        4,
        &[
            0.8660, 0.9767, 0.4595, 0.6582, //
            0.8603, 0.5850, 0.6582, 0.9854, //
            0.3066, 0.4470, 0.6585, 0.3885, //
            0.3066, 0.6167, 0.4470, 0.3885,
        ],
    )
    .unwrap();
    let h12 = CMatrix::from_real(
        3,
        3,
        &[
            0.1890, 0.7650, 0.3864, //
            0.6678, 0.2880, 0.3867, //
            0.4886, 0.7904, 0.2684,
        ],
    )
    .unwrap();
    ChannelInstance::new(
        3,
        4,
        4,
        3,
        h11,
        h12,
        h21,
        h22,
        [1e8, 1e8, 1e8, 1e8],
        15.0,
        21.0,
    )
    .unwrap()
}
