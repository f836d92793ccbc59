//! Exact per-mode time propagation of the semigroup and decay-rate fits.
//!
//! Each block is exponentiated through its eigendecomposition. Blocks whose
//! eigenvector matrix is ill-conditioned (parameter coincidences can make a
//! 3x3 block non-diagonalizable) fall back to scaling-and-squaring with the
//! degree-13 rational approximation.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{cubic_roots, hermitian_eigen3, inv3, mat3_frob, mat3_mul, mat3_vec, Mat3, Vec3, ZERO3};
use crate::modal::{generator_block, ModalState, ModeBlock};
use crate::spectrum::EigenModel;

/// Eigenvector condition number beyond which a block counts as defective.
pub const DEFECTIVE_COND: f64 = 1e8;
/// Relative reconstruction error allowed for the eigendecomposition.
pub const RECONSTRUCTION_TOL: f64 = 1e-10;

/// Exact exponential of one mode block.
#[derive(Debug, Clone)]
pub struct Propagator {
    pub block: ModeBlock,
    pub eigvals: [Complex64; 3],
    pub eigvecs: Mat3,
    pub inv_eigvecs: Mat3,
    pub defective: bool,
}

fn eigenvector_for(m: &Mat3, z: Complex64) -> Vec3 {
    // null vector of (M - zI) from the largest cross product of row pairs
    let mut b = *m;
    for i in 0..3 {
        b[i][i] -= z;
    }
    let cross = |r: &Vec3, s: &Vec3| -> Vec3 {
        [
            r[1] * s[2] - r[2] * s[1],
            r[2] * s[0] - r[0] * s[2],
            r[0] * s[1] - r[1] * s[0],
        ]
    };
    let candidates = [
        cross(&b[0], &b[1]),
        cross(&b[0], &b[2]),
        cross(&b[1], &b[2]),
    ];
    let mut best = candidates[0];
    let mut best_norm = best.iter().map(|v| v.norm_sqr()).sum::<f64>();
    for cand in &candidates[1..] {
        let n = cand.iter().map(|v| v.norm_sqr()).sum::<f64>();
        if n > best_norm {
            best = *cand;
            best_norm = n;
        }
    }
    let n = best_norm.sqrt();
    if n > 0.0 {
        for v in best.iter_mut() {
            *v /= n;
        }
    }
    best
}

fn condition_number(v: &Mat3, vinv: &Mat3) -> f64 {
    // 2-norm condition via the Gram spectra of V and V^{-1}
    let top = |m: &Mat3| -> f64 {
        let mut g = [[Complex64::new(0.0, 0.0); 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                let mut s = Complex64::new(0.0, 0.0);
                for k in 0..3 {
                    s += m[k][i].conj() * m[k][j];
                }
                g[i][j] = s;
            }
        }
        match hermitian_eigen3(&g) {
            Ok(ev) => ev.iter().fold(0.0f64, |a, &b| a.max(b)).sqrt(),
            Err(_) => f64::INFINITY,
        }
    };
    top(v) * top(vinv)
}

/// Build the propagator for one block, falling back to the rational
/// approximation when the eigenbasis is unreliable.
pub fn propagator(block: ModeBlock) -> Propagator {
    let m = block.matrix;
    let tr = m[0][0] + m[1][1] + m[2][2];
    let minors = m[0][0] * m[1][1] - m[0][1] * m[1][0]
        + m[0][0] * m[2][2] - m[0][2] * m[2][0]
        + m[1][1] * m[2][2] - m[1][2] * m[2][1];
    let det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    let eigvals = cubic_roots(-tr, minors, -det);

    let mut eigvecs = [[Complex64::new(0.0, 0.0); 3]; 3];
    for (j, &z) in eigvals.iter().enumerate() {
        let v = eigenvector_for(&m, z);
        for i in 0..3 {
            eigvecs[i][j] = v[i];
        }
    }
    let fallback = |block: ModeBlock, eigvals| Propagator {
        block,
        eigvals,
        eigvecs: [[Complex64::new(0.0, 0.0); 3]; 3],
        inv_eigvecs: [[Complex64::new(0.0, 0.0); 3]; 3],
        defective: true,
    };
    let inv_eigvecs = match inv3(&eigvecs, 0.0) {
        Ok(inv) => inv,
        Err(_) => return fallback(block, eigvals),
    };
    if condition_number(&eigvecs, &inv_eigvecs) >= DEFECTIVE_COND {
        return fallback(block, eigvals);
    }
    // reconstruction check: V diag V^{-1} must reproduce M
    let mut vd = eigvecs;
    for i in 0..3 {
        for j in 0..3 {
            vd[i][j] *= eigvals[j];
        }
    }
    let recon = mat3_mul(&vd, &inv_eigvecs);
    let mut err = 0.0f64;
    for i in 0..3 {
        for j in 0..3 {
            err += (recon[i][j] - m[i][j]).norm_sqr();
        }
    }
    if err.sqrt() > RECONSTRUCTION_TOL * mat3_frob(&m) {
        return fallback(block, eigvals);
    }
    Propagator {
        block,
        eigvals,
        eigvecs,
        inv_eigvecs,
        defective: false,
    }
}

/// Degree-13 Pade coefficients for the scaling-and-squaring exponential.
const PADE13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];
const PADE13_THETA: f64 = 5.371920351148152;

fn one_norm(m: &Mat3) -> f64 {
    (0..3)
        .map(|j| (0..3).map(|i| m[i][j].norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

fn mat3_identity() -> Mat3 {
    let mut id = [[Complex64::new(0.0, 0.0); 3]; 3];
    for (i, row) in id.iter_mut().enumerate() {
        row[i] = Complex64::new(1.0, 0.0);
    }
    id
}

/// e^A for a 3x3 complex matrix by Pade-13 with scaling and squaring.
fn expm3(a: &Mat3) -> Mat3 {
    let norm = one_norm(a);
    let s = if norm > PADE13_THETA {
        (norm / PADE13_THETA).log2().ceil() as i32
    } else {
        0
    };
    let scale = 2f64.powi(-s);
    let mut m = *a;
    for row in m.iter_mut() {
        for v in row.iter_mut() {
            *v *= scale;
        }
    }
    let m2 = mat3_mul(&m, &m);
    let m4 = mat3_mul(&m2, &m2);
    let m6 = mat3_mul(&m2, &m4);
    let id = mat3_identity();
    let lin = |c0: f64, a0: &Mat3, c1: f64, a1: &Mat3, c2: f64, a2: &Mat3, c3: f64, a3: &Mat3| {
        let mut out = [[Complex64::new(0.0, 0.0); 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                out[i][j] = a0[i][j] * c0 + a1[i][j] * c1 + a2[i][j] * c2 + a3[i][j] * c3;
            }
        }
        out
    };
    let b = &PADE13;
    let w1 = lin(b[13], &m6, b[11], &m4, b[9], &m2, 0.0, &id);
    let w2 = lin(b[7], &m6, b[5], &m4, b[3], &m2, b[1], &id);
    let u = mat3_mul(&m, &{
        let mut t = mat3_mul(&m6, &w1);
        for i in 0..3 {
            for j in 0..3 {
                t[i][j] += w2[i][j];
            }
        }
        t
    });
    let z1 = lin(b[12], &m6, b[10], &m4, b[8], &m2, 0.0, &id);
    let v = {
        let mut t = mat3_mul(&m6, &z1);
        let w = lin(b[6], &m6, b[4], &m4, b[2], &m2, b[0], &id);
        for i in 0..3 {
            for j in 0..3 {
                t[i][j] += w[i][j];
            }
        }
        t
    };
    // r = (V - U)^{-1} (V + U)
    let mut vmu = [[Complex64::new(0.0, 0.0); 3]; 3];
    let mut vpu = [[Complex64::new(0.0, 0.0); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            vmu[i][j] = v[i][j] - u[i][j];
            vpu[i][j] = v[i][j] + u[i][j];
        }
    }
    let inv = inv3(&vmu, f64::NAN).unwrap_or_else(|_| mat3_identity());
    let mut r = mat3_mul(&inv, &vpu);
    for _ in 0..s {
        r = mat3_mul(&r, &r);
    }
    r
}

/// e^{tM} x0 for one mode.
pub fn propagate_block(prop: &Propagator, x0: &Vec3, t: f64) -> Vec3 {
    if t == 0.0 {
        return *x0;
    }
    if prop.defective {
        let mut tm = prop.block.matrix;
        for row in tm.iter_mut() {
            for v in row.iter_mut() {
                *v *= t;
            }
        }
        return mat3_vec(&expm3(&tm), x0);
    }
    let mut c = mat3_vec(&prop.inv_eigvecs, x0);
    for (ck, z) in c.iter_mut().zip(prop.eigvals.iter()) {
        *ck *= (z * t).exp();
    }
    mat3_vec(&prop.eigvecs, &c)
}

/// Propagate a modal state and record the phase norm on a time grid.
pub fn simulate_decay(
    model: &EigenModel,
    sigma: f64,
    omega: f64,
    init: &ModalState,
    times: &[f64],
) -> Result<Vec<(f64, f64)>> {
    if times.is_empty() {
        return Err(Error::BadTimeGrid);
    }
    if times[0] != 0.0 || times.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::BadTimeGrid);
    }
    let props: Vec<Propagator> = (1..=init.modes())
        .into_par_iter()
        .map(|n| Ok(propagator(generator_block(model.eigenvalue(n)?, sigma, omega)?)))
        .collect::<Result<_>>()?;
    let norms: Vec<(f64, f64)> = times
        .par_iter()
        .map(|&t| {
            let total: f64 = props
                .iter()
                .zip(init.coeffs.iter())
                .map(|(p, x0)| {
                    let x = propagate_block(p, x0, t);
                    p.block.weighted_norm_sq(&x)
                })
                .sum();
            (t, total.sqrt())
        })
        .collect();
    Ok(norms)
}

/// Kind of decay-rate fit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecayKind {
    /// Least-squares slope of log norm against t; returns the rate.
    Exponential,
    /// Log-log slope over the final decade of t; returns the exponent.
    Polynomial,
}

/// Fit the decay rate of a norm curve. Positive return means decay.
pub fn fit_decay(curve: &[(f64, f64)], kind: DecayKind) -> Result<f64> {
    let positive: Vec<(f64, f64)> = curve
        .iter()
        .copied()
        .filter(|&(t, norm)| norm > 0.0 && (kind == DecayKind::Exponential || t > 0.0))
        .collect();
    if positive.len() < 4 {
        return Err(Error::TooFewSamples {
            need: 4,
            got: positive.len(),
        });
    }
    let fit_points: Vec<(f64, f64)> = match kind {
        DecayKind::Exponential => positive.iter().map(|&(t, n)| (t, n.ln())).collect(),
        DecayKind::Polynomial => {
            let t_max = positive.last().unwrap().0;
            let t_min = positive.iter().find(|&&(t, _)| t > 0.0).unwrap().0;
            let decades = (t_max / t_min).log10();
            if decades < 2.0 {
                return Err(Error::InsufficientTimeSpan {
                    need_decades: 2.0,
                    got_decades: decades,
                });
            }
            let window = t_max / 10.0;
            let pts: Vec<(f64, f64)> = positive
                .iter()
                .filter(|&&(t, _)| t >= window)
                .map(|&(t, n)| (t.ln(), n.ln()))
                .collect();
            if pts.len() < 4 {
                return Err(Error::TooFewSamples {
                    need: 4,
                    got: pts.len(),
                });
            }
            pts
        }
    };
    let n = fit_points.len() as f64;
    let sx: f64 = fit_points.iter().map(|p| p.0).sum();
    let sy: f64 = fit_points.iter().map(|p| p.1).sum();
    let sxx: f64 = fit_points.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = fit_points.iter().map(|p| p.0 * p.1).sum();
    let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    Ok(-slope)
}

/// Random modal data with unit weighted norm per mode, then smoothed by
/// (I + A)^{-1} componentwise. Polynomial rates hold for regular data;
/// plain random data is kept for contraction tests only.
pub fn smoothed_state(
    model: &std::sync::Arc<EigenModel>,
    sigma: f64,
    omega: f64,
    n_modes: u64,
    seed: u64,
) -> Result<ModalState> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut coeffs = Vec::with_capacity(n_modes as usize);
    for n in 1..=n_modes {
        let eta = model.eigenvalue(n)?;
        let block = generator_block(eta, sigma, omega)?;
        let mut x: Vec3 = ZERO3;
        for v in x.iter_mut() {
            *v = Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5);
        }
        let norm = block.weighted_norm(&x).max(f64::MIN_POSITIVE);
        let damp = 1.0 / (1.0 + eta);
        for v in x.iter_mut() {
            *v *= damp / norm;
        }
        coeffs.push(x);
    }
    ModalState::new(model.clone(), coeffs)
}

/// Plain random data with unit weighted norm per mode.
pub fn random_state(
    model: &std::sync::Arc<EigenModel>,
    sigma: f64,
    omega: f64,
    n_modes: u64,
    seed: u64,
) -> Result<ModalState> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut coeffs = Vec::with_capacity(n_modes as usize);
    for n in 1..=n_modes {
        let block = generator_block(model.eigenvalue(n)?, sigma, omega)?;
        let mut x: Vec3 = ZERO3;
        for v in x.iter_mut() {
            *v = Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5);
        }
        let norm = block.weighted_norm(&x).max(f64::MIN_POSITIVE);
        for v in x.iter_mut() {
            *v /= norm;
        }
        coeffs.push(x);
    }
    ModalState::new(model.clone(), coeffs)
}
