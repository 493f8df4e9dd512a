//! The property suite behind `mimoic validate`: per-trial randomized
//! invariants fanned out across worker threads plus a handful of global
//! closed-form checks. Results are merged by trial index, so the report is
//! deterministic for a fixed seed regardless of the worker count.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use mimoic_core::achievability::{
    combined_achievable, covariance_split, guaranteed_inner_region, private_leak,
    quantization_plan, StrategyOrder,
};
use mimoic_core::asymptotics::{
    coop_saturation_beta, dof_region, empirical_slope, gdof_nrc, gdof_piecewise, gdof_value,
    DofSpec, GdofSpec,
};
use mimoic_core::channel::{generate, ChannelSeedSpec, CoopSpec, GainSpec};
use mimoic_core::hermitian::{
    block_logdet_check, eigenvalues, gram, hermitian_block2, logdet2_hpd,
    resolvent_identity_check, schur_capped, CMatrix, HermitianMatrix,
};
use mimoic_core::outer::{outer_region, outer_terms};
use mimoic_core::region::{contains, erode_by_box};
use mimoic_core::rng::SplitMix64;
use mimoic_core::Cx;

#[derive(Debug, Clone)]
pub struct ValidateConfig {
    pub trials: usize,
    pub seed: u64,
    pub max_antennas: usize,
    /// Decade range `a..b` swept by the prelog slope check.
    pub snr_decades: (f64, f64),
    pub inject_fault: bool,
}

#[derive(Debug, Clone)]
pub struct PropertyCount {
    pub name: &'static str,
    pub checked: usize,
    pub failures: usize,
}

const PER_TRIAL: [&str; 6] = [
    "block_logdet_identity",
    "schur_kernel_monotone",
    "split_psd_noise_floor",
    "quantization_loss_bound",
    "gap_sandwich",
    "outer_monotone_in_coop",
];

fn random_cmatrix(rng: &mut SplitMix64, rows: usize, cols: usize) -> CMatrix {
    let entries: Vec<Cx> = (0..rows * cols)
        .map(|_| {
            let (a, b) = rng.standard_normal_pair();
            Cx::new(a, b)
        })
        .collect();
    CMatrix::new(rows, cols, entries).unwrap()
}

fn random_psd(rng: &mut SplitMix64, n: usize) -> HermitianMatrix {
    gram(&random_cmatrix(rng, n, n + 1), 1.0)
}

fn random_channel(rng: &mut SplitMix64, max_antennas: usize) -> mimoic_core::ChannelInstance {
    let dim = |rng: &mut SplitMix64| 1 + (rng.next_u64() % max_antennas as u64) as usize;
    let (m1, n1, m2, n2) = (dim(rng), dim(rng), dim(rng), dim(rng));
    let mut rho = [0.0; 4];
    for r in rho.iter_mut() {
        *r = 10f64.powf(9.0 * rng.next_f64());
    }
    generate(&ChannelSeedSpec {
        m1,
        n1,
        m2,
        n2,
        gains: GainSpec::Direct {
            rho11: rho[0],
            rho12: rho[1],
            rho21: rho[2],
            rho22: rho[3],
        },
        coop: CoopSpec::Direct {
            c12: 30.0 * rng.next_f64(),
            c21: 30.0 * rng.next_f64(),
        },
        seed: rng.next_u64(),
    })
    .expect("generated channel is valid")
}

/// Runs the six per-trial properties for one trial; returns pass/fail per
/// property in `PER_TRIAL` order.
fn run_trial(cfg: &ValidateConfig, index: usize) -> [bool; 6] {
    let mut rng = SplitMix64::new(
        cfg.seed ^ (index as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15),
    );
    let mut ok = [true; 6];

    // Block log-det identity on a random Hermitian PD matrix up to 8x8.
    {
        let p = 1 + (rng.next_u64() % 4) as usize;
        let q = 1 + (rng.next_u64() % 4) as usize;
        let whole = random_psd(&mut rng, p + q).add_scaled_identity(0.3);
        let mut a = CMatrix::zeros(p, p);
        let mut b = CMatrix::zeros(p, q);
        let mut d = CMatrix::zeros(q, q);
        for i in 0..p {
            for j in 0..p {
                a.set(i, j, whole.get(i, j));
            }
            for j in 0..q {
                b.set(i, j, whole.get(i, p + j));
            }
        }
        for i in 0..q {
            for j in 0..q {
                d.set(i, j, whole.get(p + i, p + j));
            }
        }
        ok[0] = match block_logdet_check(&a, &b, &b.adjoint(), &d) {
            Ok((direct, split)) => (direct - split).abs() <= 1e-10 * (1.0 + direct.abs()),
            Err(_) => false,
        };
    }

    // Capped kernel: monotone in K and pinched between 0 and K.
    {
        let m = 1 + (rng.next_u64() % 4) as usize;
        let n = 1 + (rng.next_u64() % 4) as usize;
        let k1 = random_psd(&mut rng, m);
        let k2 = k1.add(&random_psd(&mut rng, m));
        let s = random_cmatrix(&mut rng, m, n);
        ok[1] = (|| {
            let l1 = schur_capped(&k1, &s).ok()?;
            let l2 = schur_capped(&k2, &s).ok()?;
            let mono = mimoic_core::hermitian::psd_check(&l2.sub(&l1), None).ok()?;
            let pinched = mimoic_core::hermitian::psd_check(&l1, Some(&k1)).ok()?;
            Some(mono && pinched)
        })()
        .unwrap_or(false);
    }

    let ch = random_channel(&mut rng, cfg.max_antennas);

    // Covariance split: sums to identity, all parts p.s.d., private signal
    // under the noise floor at the other receiver.
    {
        ok[2] = (|| {
            let s = covariance_split(&ch).ok()?;
            let sum_ok = s
                .q1p
                .add(&s.q1c)
                .sub(&HermitianMatrix::identity(ch.m1))
                .max_abs()
                < 1e-12
                && s.q2p
                    .add(&s.q2c)
                    .sub(&HermitianMatrix::identity(ch.m2))
                    .max_abs()
                    < 1e-12;
            let psd_ok = mimoic_core::hermitian::psd_check(
                &s.q1p,
                Some(&HermitianMatrix::identity(ch.m1)),
            )
            .ok()?
                && mimoic_core::hermitian::psd_check(
                    &s.q2p,
                    Some(&HermitianMatrix::identity(ch.m2)),
                )
                .ok()?;
            let leak1 = eigenvalues(&private_leak(&ch.h12, &s.q1p, ch.rho12))
                .last()
                .copied()
                .unwrap_or(0.0);
            let leak2 = eigenvalues(&private_leak(&ch.h21, &s.q2p, ch.rho21))
                .last()
                .copied()
                .unwrap_or(0.0);
            if !(sum_ok && psd_ok && leak1 <= 1.0 + 1e-9 && leak2 <= 1.0 + 1e-9) {
                std::eprintln!("trial {index}: sum_ok {sum_ok} psd_ok {psd_ok} leak1 {leak1} leak2 {leak2} dims ({},{},{},{}) rho ({}, {}, {}, {})", ch.m1, ch.n1, ch.m2, ch.n2, ch.rho11, ch.rho12, ch.rho21, ch.rho22);
            }
            Some(sum_ok && psd_ok && leak1 <= 1.0 + 1e-9 && leak2 <= 1.0 + 1e-9)
        })()
        .unwrap_or(false);
    }

    // Quantization loss stays under the quantizing receiver's antennas.
    {
        ok[3] = (|| {
            let s = covariance_split(&ch).ok()?;
            let mut xi2 = quantization_plan(&ch, &s, StrategyOrder::TwoOneTwo).ok()?.xi;
            let xi1 = quantization_plan(&ch, &s, StrategyOrder::OneTwoOne).ok()?.xi;
            if cfg.inject_fault && index == 0 {
                xi2 += ch.n2 as f64 + 1.0;
            }
            Some(
                xi2 >= -1e-9
                    && xi2 <= ch.n2 as f64 + 1e-9
                    && xi1 >= -1e-9
                    && xi1 <= ch.n1 as f64 + 1e-9,
            )
        })()
        .unwrap_or(false);
    }

    // Constant-gap sandwich.
    {
        ok[4] = (|| {
            let outer = outer_region(&ch).ok()?;
            let inner = guaranteed_inner_region(&ch).ok()?;
            let achievable = combined_achievable(&ch).ok()?;
            let g = (ch.n1 + ch.n2) as f64;
            let eroded = erode_by_box(&outer, g, g);
            let a = eroded.vertices.iter().all(|&v| contains(&inner, v, 1e-9));
            let b = inner
                .vertices
                .iter()
                .all(|&v| contains(&achievable, v, 1e-6));
            let c = achievable
                .vertices
                .iter()
                .all(|&v| contains(&outer, v, 1e-6));
            Some(a && b && c)
        })()
        .unwrap_or(false);
    }

    // More backhaul never shrinks the outer region, and the joint cut i6
    // never moves.
    {
        ok[5] = (|| {
            let mut boosted = ch.clone();
            boosted.c12 = ch.c12 * 2.0 + 1.0;
            boosted.c21 = ch.c21 * 2.0 + 1.0;
            let small = outer_region(&ch).ok()?;
            let large = outer_region(&boosted).ok()?;
            let nested = small.vertices.iter().all(|&v| contains(&large, v, 1e-9));
            let i6_fixed =
                outer_terms(&ch).ok()?.i6 == outer_terms(&boosted).ok()?.i6;
            Some(nested && i6_fixed)
        })()
        .unwrap_or(false);
    }

    ok
}

fn global_checks(cfg: &ValidateConfig) -> Vec<PropertyCount> {
    let mut out = Vec::new();
    let mut rng = SplitMix64::new(cfg.seed ^ 0x5bd1_e995);

    // Resolvent identity across the gain ladder.
    {
        let mut checked = 0;
        let mut failures = 0;
        for _ in 0..8 {
            let n = 1 + (rng.next_u64() % 4) as usize;
            let h = random_cmatrix(&mut rng, n, n);
            for &rho in &[0.0, 1.0, 1e3, 1e6, 1e9] {
                checked += 1;
                if resolvent_identity_check(&h, rho) > 1e-9 * (1.0 + rho) {
                    failures += 1;
                }
            }
        }
        out.push(PropertyCount {
            name: "resolvent_identity",
            checked,
            failures,
        });
    }

    // log det is additive across block-diagonal assembly.
    {
        let mut checked = 0;
        let mut failures = 0;
        for _ in 0..25 {
            let p = 1 + (rng.next_u64() % 4) as usize;
            let q = 1 + (rng.next_u64() % 4) as usize;
            let a = random_psd(&mut rng, p).add_scaled_identity(0.4);
            let b = random_psd(&mut rng, q).add_scaled_identity(0.4);
            let block = hermitian_block2(&a, &CMatrix::zeros(p, q), &b);
            checked += 1;
            let lhs = logdet2_hpd(&block);
            let rhs = logdet2_hpd(&a).and_then(|x| logdet2_hpd(&b).map(|y| x + y));
            match (lhs, rhs) {
                (Ok(l), Ok(r)) if (l - r).abs() <= 1e-10 * (1.0 + r.abs()) => {}
                _ => failures += 1,
            }
        }
        out.push(PropertyCount {
            name: "logdet_block_additivity",
            checked,
            failures,
        });
    }

    // Symmetric DoF region saturates exactly at min{N, (2M-N)+}.
    {
        let mut checked = 0;
        let mut failures = 0;
        for m in 1..=4 {
            for n in 1..=4 {
                checked += 1;
                let beta = coop_saturation_beta(m, n);
                let spec = |b: f64| DofSpec {
                    m1: m,
                    n1: n,
                    m2: m,
                    n2: n,
                    beta12: b,
                    beta21: b,
                };
                let at = dof_region(&spec(beta));
                let beyond = dof_region(&spec(beta + 1.0));
                let same = at.vertices.len() == beyond.vertices.len()
                    && at
                        .vertices
                        .iter()
                        .zip(&beyond.vertices)
                        .all(|(a, b)| (a.0 - b.0).abs() < 1e-12 && (a.1 - b.1).abs() < 1e-12);
                if !same {
                    failures += 1;
                }
            }
        }
        out.push(PropertyCount {
            name: "dof_saturation",
            checked,
            failures,
        });
    }

    // GDoF: six-term min equals the piecewise tables, the no-cooperation
    // curve, and the full-cooperation value at beta = M alpha.
    {
        let mut checked = 0;
        let mut failures = 0;
        for m in 1..=3usize {
            for beta_scale in [0.0, 0.25, 0.5, 0.75, 1.0, 2.0] {
                let beta = beta_scale * m as f64;
                for step in (0..=300).step_by(3) {
                    let alpha = step as f64 * 0.01;
                    checked += 1;
                    let s = GdofSpec { m, alpha, beta };
                    let v = gdof_value(&s);
                    let mut good = (v - gdof_piecewise(&s)).abs() <= 1e-12;
                    if beta == 0.0 {
                        good &= (v - gdof_nrc(m, alpha)).abs() <= 1e-12;
                    }
                    let full = gdof_value(&GdofSpec {
                        m,
                        alpha,
                        beta: m as f64 * alpha,
                    });
                    good &= (full - m as f64 * 1.0f64.max(alpha)).abs() <= 1e-12;
                    if !good {
                        failures += 1;
                    }
                }
            }
        }
        out.push(PropertyCount {
            name: "gdof_closed_forms",
            checked,
            failures,
        });
    }

    // Prelog slopes of every outer term over the requested decades.
    {
        let (lo, hi) = cfg.snr_decades;
        let points: Vec<f64> = (0..=((hi - lo).round() as usize))
            .map(|k| 10f64.powf(lo + k as f64))
            .collect();
        let mut checked = 0;
        let mut failures = 0;
        for m in [1usize, 2] {
            match empirical_slope((m, m, m, m), cfg.seed ^ 0xabcd, 1.0, 0.0, &points) {
                Ok(est) => {
                    for e in est {
                        checked += 1;
                        if e.abs_err > 0.05 {
                            failures += 1;
                        }
                    }
                }
                Err(_) => {
                    checked += 1;
                    failures += 1;
                }
            }
        }
        out.push(PropertyCount {
            name: "prelog_slopes",
            checked,
            failures,
        });
    }

    out
}

fn worker_count(trials: usize) -> usize {
    let from_env = std::env::var("MIMOIC_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&n| n >= 1);
    let default = std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1);
    from_env.unwrap_or(default).min(trials.max(1))
}

pub fn run(cfg: &ValidateConfig) -> (Vec<PropertyCount>, Vec<String>) {
    let mut warnings = Vec::new();
    let mut results = Vec::new();

    if cfg.trials == 0 {
        warnings.push("no trials requested; per-trial properties are vacuous".into());
    }

    // Fan trials out over workers; each result lands at its trial index.
    let per_trial: Vec<[bool; 6]> = {
        let slots: Vec<Mutex<[bool; 6]>> =
            (0..cfg.trials).map(|_| Mutex::new([true; 6])).collect();
        let next = AtomicUsize::new(0);
        let workers = worker_count(cfg.trials);
        std::thread::scope(|scope| {
            for _ in 0..workers {
                scope.spawn(|| loop {
                    let idx = next.fetch_add(1, Ordering::Relaxed);
                    if idx >= cfg.trials {
                        break;
                    }
                    let outcome = run_trial(cfg, idx);
                    *slots[idx].lock().unwrap() = outcome;
                });
            }
        });
        slots
            .into_iter()
            .map(|m| m.into_inner().unwrap())
            .collect()
    };

    for (k, name) in PER_TRIAL.iter().enumerate() {
        let failures = per_trial.iter().filter(|ok| !ok[k]).count();
        results.push(PropertyCount {
            name,
            checked: cfg.trials,
            failures,
        });
    }
    results.extend(global_checks(cfg));
    (results, warnings)
}
