//! Small dense complex linear algebra: 3x3 solves and inverses, a cyclic
//! Jacobi eigensolver for 3x3 Hermitian matrices, and a minimal row-major
//! complex matrix with LU and power iteration for the dense truncation oracle.

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;
pub type Vec3 = [C64; 3];
pub type Mat3 = [[C64; 3]; 3];

/// Pivot magnitude below which a 3x3 elimination is declared singular.
pub const SINGULAR_PIVOT: f64 = 1e-300;
/// Relative off-diagonal threshold for Jacobi convergence.
pub const JACOBI_TOL: f64 = 1e-14;
/// Sweep cap for the 3x3 Jacobi eigensolver.
pub const JACOBI_MAX_SWEEPS: usize = 30;

pub const ZERO3: Vec3 = [C64::new(0.0, 0.0); 3];

pub fn mat3_vec(m: &Mat3, x: &Vec3) -> Vec3 {
    let mut y = ZERO3;
    for i in 0..3 {
        y[i] = m[i][0] * x[0] + m[i][1] * x[1] + m[i][2] * x[2];
    }
    y
}

pub fn mat3_mul(a: &Mat3, b: &Mat3) -> Mat3 {
    let mut c = [[C64::new(0.0, 0.0); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j] + a[i][2] * b[2][j];
        }
    }
    c
}

pub fn mat3_frob(m: &Mat3) -> f64 {
    m.iter()
        .flatten()
        .map(|z| z.norm_sqr())
        .sum::<f64>()
        .sqrt()
}

/// Solve a 3x3 complex system by Gaussian elimination with partial pivoting.
pub fn solve3(a: &Mat3, b: &Vec3, lambda: f64) -> Result<Vec3> {
    let mut m = *a;
    let mut rhs = *b;
    for col in 0..3 {
        let mut piv = col;
        for row in col + 1..3 {
            if m[row][col].norm_sqr() > m[piv][col].norm_sqr() {
                piv = row;
            }
        }
        if m[piv][col].norm() < SINGULAR_PIVOT {
            return Err(Error::SingularSystem {
                lambda,
                pivot: m[piv][col].norm(),
            });
        }
        if piv != col {
            m.swap(piv, col);
            rhs.swap(piv, col);
        }
        for row in col + 1..3 {
            let f = m[row][col] / m[col][col];
            for k in col..3 {
                let sub = f * m[col][k];
                m[row][k] -= sub;
            }
            let sub = f * rhs[col];
            rhs[row] -= sub;
        }
    }
    let mut x = ZERO3;
    for i in (0..3).rev() {
        let mut s = rhs[i];
        for k in i + 1..3 {
            s -= m[i][k] * x[k];
        }
        x[i] = s / m[i][i];
    }
    Ok(x)
}

/// Full 3x3 inverse via three pivoted solves against the identity columns.
pub fn inv3(a: &Mat3, lambda: f64) -> Result<Mat3> {
    let mut inv = [[C64::new(0.0, 0.0); 3]; 3];
    for j in 0..3 {
        let mut e = ZERO3;
        e[j] = C64::new(1.0, 0.0);
        let col = solve3(a, &e, lambda)?;
        for i in 0..3 {
            inv[i][j] = col[i];
        }
    }
    Ok(inv)
}

/// Eigenvalues of a 3x3 Hermitian matrix by cyclic Jacobi rotations.
///
/// Only the strict lower/upper triangle phases matter; the input is assumed
/// Hermitian with real diagonal. Returns unsorted eigenvalues.
pub fn hermitian_eigen3(g: &Mat3) -> Result<[f64; 3]> {
    let mut a = *g;
    let scale = mat3_frob(&a).max(f64::MIN_POSITIVE);
    for _ in 0..JACOBI_MAX_SWEEPS {
        let off = (a[0][1].norm_sqr() + a[0][2].norm_sqr() + a[1][2].norm_sqr()).sqrt();
        if off <= JACOBI_TOL * scale {
            return Ok([a[0][0].re, a[1][1].re, a[2][2].re]);
        }
        for &(p, q) in &[(0usize, 1usize), (0, 2), (1, 2)] {
            let apq = a[p][q];
            let r = apq.norm();
            if r <= f64::MIN_POSITIVE {
                continue;
            }
            let phase = apq / r;
            // Zero the (p, q) entry: t solves r t^2 + (a_pp - a_qq) t - r = 0.
            let tau = (a[p][p].re - a[q][q].re) / (2.0 * r);
            let t = if tau >= 0.0 {
                1.0 / (tau + (1.0 + tau * tau).sqrt())
            } else {
                -1.0 / (-tau + (1.0 + tau * tau).sqrt())
            };
            let c = 1.0 / (1.0 + t * t).sqrt();
            let s = t * c;
            // J = I except J[p][p] = c, J[p][q] = -s u, J[q][p] = s conj(u), J[q][q] = c,
            // applied as A <- J^H A J with u the phase of A[p][q].
            let u = phase;
            let mut rowp = ZERO3;
            let mut rowq = ZERO3;
            for k in 0..3 {
                rowp[k] = c * a[p][k] + s * u * a[q][k];
                rowq[k] = -s * u.conj() * a[p][k] + c * a[q][k];
            }
            a[p] = rowp;
            a[q] = rowq;
            for k in 0..3 {
                let akp = a[k][p];
                let akq = a[k][q];
                a[k][p] = c * akp + s * u.conj() * akq;
                a[k][q] = -s * u * akp + c * akq;
            }
            a[p][q] = C64::new(0.0, 0.0);
            a[q][p] = C64::new(0.0, 0.0);
            a[p][p] = C64::new(a[p][p].re, 0.0);
            a[q][q] = C64::new(a[q][q].re, 0.0);
        }
    }
    Err(Error::JacobiNonConvergence {
        sweeps: JACOBI_MAX_SWEEPS,
    })
}

/// Largest singular value of a 3x3 complex matrix: sqrt of the top
/// eigenvalue of the Hermitian Gram matrix B^H B.
pub fn largest_singular_value3(b: &Mat3) -> Result<f64> {
    let mut g = [[C64::new(0.0, 0.0); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let mut s = C64::new(0.0, 0.0);
            for k in 0..3 {
                s += b[k][i].conj() * b[k][j];
            }
            g[i][j] = s;
        }
    }
    let ev = hermitian_eigen3(&g)?;
    Ok(ev.iter().fold(0.0f64, |m, &v| m.max(v.max(0.0))).sqrt())
}

/// Roots of z^3 + a z^2 + b z + c with complex coefficients.
///
/// Cardano on the depressed cubic, branch chosen to avoid cancellation,
/// followed by a few Newton polishing steps on the original polynomial.
pub fn cubic_roots(a: C64, b: C64, c: C64) -> [C64; 3] {
    let third = C64::new(1.0 / 3.0, 0.0);
    let shift = a * third;
    let p = b - a * a * third;
    let q = a * a * a * C64::new(2.0 / 27.0, 0.0) - a * b * third + c;

    let disc = (q * q * 0.25 + p * p * p / 27.0).sqrt();
    // pick the sign giving the larger |u^3| so u is well away from zero
    let cand1 = -q * 0.5 + disc;
    let cand2 = -q * 0.5 - disc;
    let u3 = if cand1.norm() >= cand2.norm() {
        cand1
    } else {
        cand2
    };

    let mut roots = [C64::new(0.0, 0.0); 3];
    if u3.norm() < 1e-280 {
        // triple root of the depressed cubic at w = cbrt(-q) (p ~ 0 here)
        let w = (-q).cbrt();
        let rot = C64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
        roots[0] = w - shift;
        roots[1] = w * rot - shift;
        roots[2] = w * rot * rot - shift;
    } else {
        let u = u3.cbrt();
        let rot = C64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
        let mut uk = u;
        for root in roots.iter_mut() {
            let w = uk - p / (uk * 3.0);
            *root = w - shift;
            uk *= rot;
        }
    }

    for root in roots.iter_mut() {
        for _ in 0..4 {
            let z = *root;
            let f = ((z + a) * z + b) * z + c;
            let df = (z * 3.0 + a * 2.0) * z + b;
            if df.norm() < 1e-280 {
                break;
            }
            let step = f / df;
            *root = z - step;
            if step.norm() <= 1e-16 * z.norm().max(1.0) {
                break;
            }
        }
    }
    roots
}

/// Dense row-major complex matrix, sized for the <= 192x192 truncation oracle.
#[derive(Clone)]
pub struct CMat {
    pub n: usize,
    pub a: Vec<C64>,
}

impl CMat {
    pub fn zeros(n: usize) -> Self {
        CMat {
            n,
            a: vec![C64::new(0.0, 0.0); n * n],
        }
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> C64 {
        self.a[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: C64) {
        self.a[i * self.n + j] = v;
    }

    /// Inverse by Gaussian elimination with partial pivoting on [A | I].
    pub fn inverse(&self, lambda: f64) -> Result<CMat> {
        let n = self.n;
        let mut m = self.clone();
        let mut inv = CMat::zeros(n);
        for i in 0..n {
            inv.set(i, i, C64::new(1.0, 0.0));
        }
        for col in 0..n {
            let mut piv = col;
            let mut best = m.at(col, col).norm_sqr();
            for row in col + 1..n {
                let v = m.at(row, col).norm_sqr();
                if v > best {
                    best = v;
                    piv = row;
                }
            }
            if best.sqrt() < SINGULAR_PIVOT {
                return Err(Error::SingularSystem {
                    lambda,
                    pivot: best.sqrt(),
                });
            }
            if piv != col {
                for k in 0..n {
                    let tmp = m.at(col, k);
                    m.set(col, k, m.at(piv, k));
                    m.set(piv, k, tmp);
                    let tmp = inv.at(col, k);
                    inv.set(col, k, inv.at(piv, k));
                    inv.set(piv, k, tmp);
                }
            }
            let d = m.at(col, col);
            for row in 0..n {
                if row == col {
                    continue;
                }
                let f = m.at(row, col) / d;
                if f.norm_sqr() == 0.0 {
                    continue;
                }
                for k in col..n {
                    let v = m.at(row, k) - f * m.at(col, k);
                    m.set(row, k, v);
                }
                for k in 0..n {
                    let v = inv.at(row, k) - f * inv.at(col, k);
                    inv.set(row, k, v);
                }
            }
        }
        for col in 0..n {
            let d = m.at(col, col);
            for k in 0..n {
                let v = inv.at(col, k) / d;
                inv.set(col, k, v);
            }
        }
        Ok(inv)
    }

    fn apply(&self, x: &[C64], y: &mut [C64]) {
        let n = self.n;
        for i in 0..n {
            let row = &self.a[i * n..(i + 1) * n];
            let mut s = C64::new(0.0, 0.0);
            for (aij, xj) in row.iter().zip(x.iter()) {
                s += aij * xj;
            }
            y[i] = s;
        }
    }

    fn apply_adjoint(&self, x: &[C64], y: &mut [C64]) {
        let n = self.n;
        for v in y.iter_mut() {
            *v = C64::new(0.0, 0.0);
        }
        for i in 0..n {
            let row = &self.a[i * n..(i + 1) * n];
            let xi = x[i];
            for (yj, aij) in y.iter_mut().zip(row.iter()) {
                *yj += aij.conj() * xi;
            }
        }
    }

    /// Largest singular value by power iteration on the Gram matrix A^H A.
    ///
    /// The Rayleigh quotient increases monotonically toward sigma_max^2 with
    /// a geometric tail; Aitken extrapolation of that tail both sharpens the
    /// stopping rule and corrects the returned value when the top two
    /// singular values are close. Seeded deterministically by the caller.
    pub fn largest_singular_value(&self, tol: f64, seed: u64) -> f64 {
        use rand::{Rng, SeedableRng};
        let n = self.n;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut v: Vec<C64> = (0..n)
            .map(|_| C64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
            .collect();
        let mut av = vec![C64::new(0.0, 0.0); n];
        let mut gv = vec![C64::new(0.0, 0.0); n];
        let mut prev_rq = 0.0f64;
        let mut prev_d = f64::INFINITY;
        for iter in 0..200_000 {
            self.apply(&v, &mut av);
            self.apply_adjoint(&av, &mut gv);
            let norm = gv.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if norm == 0.0 {
                return 0.0;
            }
            for (vi, gi) in v.iter_mut().zip(gv.iter()) {
                *vi = gi / norm;
            }
            // Rayleigh quotient of the Gram matrix = |A v|^2 for unit v
            self.apply(&v, &mut av);
            let rq = av.iter().map(|z| z.norm_sqr()).sum::<f64>();
            let d = rq - prev_rq;
            if iter >= 2 {
                if d.abs() <= 1e-15 * rq.max(f64::MIN_POSITIVE) {
                    return rq.sqrt();
                }
                let rho = (d / prev_d).clamp(0.0, 0.999_999);
                let tail = d * rho / (1.0 - rho);
                if tail.abs() <= 0.25 * tol * rq {
                    return (rq + tail.max(0.0)).sqrt();
                }
            }
            prev_d = d;
            prev_rq = rq;
        }
        prev_rq.sqrt()
    }
}
