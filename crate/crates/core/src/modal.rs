//! Per-mode 3x3 generator blocks and the weighted inner product realizing
//! the phase-space norm.
//!
//! In the eigenbasis of A the generator restricted to span{e_n}^3 is
//!
//! ```text
//!         |      0            1          0      |
//!   M  =  | -eta^2/(1+w eta)  0   eta^s/(1+w eta) |
//!         |      0         -eta^s      -eta     |
//! ```
//!
//! and the phase norm is the weighted l2 norm with weights
//! W = (eta^2, 1 + w eta, 1) on the (u, v, theta) coefficients.

use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{mat3_vec, Mat3, Vec3};
use crate::spectrum::{frac_power_coeff, EigenModel};

/// One mode's generator block plus its norm weights.
#[derive(Debug, Clone)]
pub struct ModeBlock {
    pub eta: f64,
    pub sigma: f64,
    pub omega: f64,
    pub matrix: Mat3,
    pub weights: [f64; 3],
}

/// Build the block for one eigenvalue.
pub fn generator_block(eta: f64, sigma: f64, omega: f64) -> Result<ModeBlock> {
    if !(eta > 0.0) || !eta.is_finite() {
        return Err(Error::NonpositiveEigenvalue(eta));
    }
    if omega < 0.0 {
        return Err(Error::NegativeOmega(omega));
    }
    let eta_sigma = frac_power_coeff(eta, sigma)?;
    let inertia = 1.0 + omega * eta;
    let re = |x: f64| Complex64::new(x, 0.0);
    let matrix = [
        [re(0.0), re(1.0), re(0.0)],
        [re(-eta * eta / inertia), re(0.0), re(eta_sigma / inertia)],
        [re(0.0), re(-eta_sigma), re(-eta)],
    ];
    Ok(ModeBlock {
        eta,
        sigma,
        omega,
        matrix,
        weights: [eta * eta, inertia, 1.0],
    })
}

impl ModeBlock {
    /// Weighted inner product sum_k W_k x_k conj(y_k).
    pub fn weighted_inner(&self, x: &Vec3, y: &Vec3) -> Complex64 {
        let mut s = Complex64::new(0.0, 0.0);
        for k in 0..3 {
            s += self.weights[k] * x[k] * y[k].conj();
        }
        s
    }

    pub fn weighted_norm_sq(&self, x: &Vec3) -> f64 {
        (0..3).map(|k| self.weights[k] * x[k].norm_sqr()).sum()
    }

    pub fn weighted_norm(&self, x: &Vec3) -> f64 {
        self.weighted_norm_sq(x).sqrt()
    }

    /// Re<Mx, x>_W. Equals -eta |x_3|^2 for every sigma, omega: the skew
    /// parts cancel and the thermal slot carries all dissipation.
    pub fn dissipation_rate(&self, x: &Vec3) -> f64 {
        let mx = mat3_vec(&self.matrix, x);
        self.weighted_inner(&mx, x).re
    }

    pub fn apply(&self, x: &Vec3) -> Vec3 {
        mat3_vec(&self.matrix, x)
    }
}

/// Finite modal expansion of a phase-space state: (u_n, v_n, theta_n)
/// coefficients against the H-normalized eigenvectors of `model`.
#[derive(Debug, Clone)]
pub struct ModalState {
    pub model: Arc<EigenModel>,
    pub coeffs: Vec<Vec3>,
}

impl ModalState {
    pub fn new(model: Arc<EigenModel>, coeffs: Vec<Vec3>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::EmptyState);
        }
        if let Some(len) = model.len() {
            if coeffs.len() as u64 > len {
                return Err(Error::ModeIndexOutOfRange {
                    index: coeffs.len() as u64,
                    len: len as usize,
                });
            }
        }
        Ok(ModalState { model, coeffs })
    }

    pub fn modes(&self) -> u64 {
        self.coeffs.len() as u64
    }

    /// Phase norm for given coupling parameters (the weights depend on omega).
    pub fn weighted_norm(&self, sigma: f64, omega: f64) -> Result<f64> {
        let mut total = 0.0;
        for (i, x) in self.coeffs.iter().enumerate() {
            let eta = self.model.eigenvalue(i as u64 + 1)?;
            let block = generator_block(eta, sigma, omega)?;
            total += block.weighted_norm_sq(x);
        }
        Ok(total.sqrt())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64 as C;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    #[test]
    fn block_substitution_examples() {
        let b = generator_block(1.0, 1.0, 0.0).unwrap();
        let expect = [
            [0.0, 1.0, 0.0],
            [-1.0, 0.0, 1.0],
            [0.0, -1.0, -1.0],
        ];
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(b.matrix[i][j], c(expect[i][j], 0.0));
            }
        }
        assert_eq!(b.weights, [1.0, 1.0, 1.0]);

        let b = generator_block(4.0, 0.5, 0.0).unwrap();
        assert_eq!(b.matrix[1][0], c(-16.0, 0.0));
        assert_eq!(b.matrix[1][2], c(2.0, 0.0));
        assert_eq!(b.matrix[2][1], c(-2.0, 0.0));
        assert_eq!(b.matrix[2][2], c(-4.0, 0.0));
        assert_eq!(b.weights, [16.0, 1.0, 1.0]);

        let b = generator_block(1.0, 1.0, 1.0).unwrap();
        assert_eq!(b.matrix[1][0], c(-0.5, 0.0));
        assert_eq!(b.matrix[1][2], c(0.5, 0.0));
        assert_eq!(b.weights, [1.0, 2.0, 1.0]);
    }

    #[test]
    fn block_rejects_bad_parameters() {
        assert!(generator_block(0.0, 1.0, 0.0).is_err());
        assert!(generator_block(-1.0, 1.0, 0.0).is_err());
        assert!(generator_block(1.0, 1.0, -0.1).is_err());
    }

    #[test]
    fn weighted_inner_examples() {
        let b = generator_block(1.0, 1.0, 0.0).unwrap();
        let e0 = [c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)];
        assert_eq!(b.weighted_inner(&e0, &e0), c(1.0, 0.0));

        let b = generator_block(4.0, 0.5, 0.0).unwrap();
        let e1 = [c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)];
        assert_eq!(b.weighted_inner(&e0, &e1), c(0.0, 0.0));

        let b = generator_block(1.0, 1.0, 1.0).unwrap();
        let x = [c(0.0, 0.0), c(1.0, 1.0), c(0.0, 0.0)];
        assert_eq!(b.weighted_inner(&x, &e1), c(2.0, 2.0));
    }

    #[test]
    fn dissipation_examples() {
        let b = generator_block(2.0, 1.0, 0.0).unwrap();
        let theta = [c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)];
        assert!((b.dissipation_rate(&theta) + 2.0).abs() < 1e-15);

        let b = generator_block(5.0, 1.0, 0.0).unwrap();
        let u = [c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)];
        assert!(b.dissipation_rate(&u).abs() < 1e-15);

        // equals -eta |x3|^2 = -3 * 2 by direct inner-product evaluation
        let b = generator_block(3.0, 0.7, 0.0).unwrap();
        let x = [c(1.0, 0.0), c(0.0, 1.0), c(1.0, -1.0)];
        let direct = b.weighted_inner(&b.apply(&x), &x).re;
        assert!((direct + 6.0).abs() < 1e-12);
        assert!((b.dissipation_rate(&x) + 6.0).abs() < 1e-12);
    }

    #[test]
    fn single_mode_norm_is_eta_on_u_slot() {
        let model = Arc::new(EigenModel::default());
        let eta = model.eigenvalue(7).unwrap();
        let mut coeffs = vec![[c(0.0, 0.0); 3]; 7];
        coeffs[6][0] = c(1.0, 0.0);
        let state = ModalState::new(model, coeffs).unwrap();
        let n = state.weighted_norm(1.0, 0.0).unwrap();
        assert!((n - eta).abs() <= 1e-12 * eta);
    }
}
