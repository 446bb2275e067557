//! Dense brute-force path: density matrices, partial transposes and a
//! cyclic Jacobi eigensolver for complex Hermitian matrices.
//!
//! Nothing here touches the generator sums in [`crate::measures`]; the
//! negativity computed by [`negativity_pt_oracle`] is the trace norm of the
//! partially transposed projector, `‖ρ^{T_γ}‖₁ − 1`.

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::CMatrix;
use crate::state::{Party, PureState};
use crate::Real;

pub const HERMITIAN_TOL: f64 = 1e-10;
pub const JACOBI_TOL: f64 = 1e-12;
pub const MAX_SWEEPS: usize = 100;
/// Default cap on the total dimension handled by the dense path.
pub const DEFAULT_MAX_DIM: usize = 256;

#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix<T> {
    inner: CMatrix<T>,
}

impl<T: Real> HermitianMatrix<T> {
    /// Checks `H = H†` within [`HERMITIAN_TOL`] relative to the Frobenius norm.
    pub fn new(m: CMatrix<T>) -> Result<Self> {
        if m.rows() != m.cols() {
            return Err(Error::NotHermitian {
                deviation: f64::INFINITY,
            });
        }
        let dev = m.max_abs_diff(&m.adjoint());
        let scale = m.frobenius_norm().max(T::one());
        if dev > T::tol(HERMITIAN_TOL) * scale {
            return Err(Error::NotHermitian {
                deviation: dev.to_f64_lossy(),
            });
        }
        Ok(Self { inner: m })
    }

    pub(crate) fn new_unchecked(m: CMatrix<T>) -> Self {
        Self { inner: m }
    }

    pub fn dim(&self) -> usize {
        self.inner.rows()
    }

    pub fn matrix(&self) -> &CMatrix<T> {
        &self.inner
    }

    pub fn into_matrix(self) -> CMatrix<T> {
        self.inner
    }

    pub fn trace(&self) -> T {
        self.inner.trace().re
    }

    /// `Tr H²`, computed as `Σ |H_mn|²`.
    pub fn trace_sq(&self) -> T {
        self.inner.as_slice().iter().map(|z| z.norm_sqr()).sum()
    }
}

/// `|ψ⟩⟨ψ|` for a normalized state.
pub fn density_matrix<T: Real>(state: &PureState<T>) -> Result<HermitianMatrix<T>> {
    state.require_normalized()?;
    let a = state.amplitudes();
    let n = a.len();
    let m = CMatrix::from_fn(n, n, |r, c| a[r] * a[c].conj());
    Ok(HermitianMatrix::new_unchecked(m))
}

/// Transposes the indices of `subsystem` in a density matrix over `dims`.
pub fn partial_transpose<T: Real>(
    rho: &HermitianMatrix<T>,
    dims: &[usize],
    subsystem: usize,
) -> Result<HermitianMatrix<T>> {
    let total: usize = dims.iter().product();
    if total != rho.dim() || dims.is_empty() {
        return Err(Error::MatrixDims {
            size: rho.dim(),
            dims: dims.to_vec(),
        });
    }
    if subsystem >= dims.len() {
        return Err(Error::SubsystemIndex {
            index: subsystem,
            count: dims.len(),
        });
    }
    // stride of the chosen subsystem in the row-major flat index
    let stride: usize = dims[subsystem + 1..].iter().product();
    let d = dims[subsystem];
    let digit = |flat: usize| (flat / stride) % d;
    let m = rho.matrix();
    let out = CMatrix::from_fn(total, total, |r, c| {
        let (dr, dc) = (digit(r), digit(c));
        let r2 = r - dr * stride + dc * stride;
        let c2 = c - dc * stride + dr * stride;
        m[(r2, c2)]
    });
    Ok(HermitianMatrix::new_unchecked(out))
}

/// Real spectrum of a Hermitian matrix, descending, by cyclic complex Jacobi
/// rotations.
///
/// Sweeps stop once the off-diagonal Frobenius norm drops below
/// `JACOBI_TOL · ‖H‖_F`; more than [`MAX_SWEEPS`] sweeps is an error.
pub fn hermitian_eigenvalues<T: Real>(h: &HermitianMatrix<T>) -> Result<Vec<T>> {
    let n = h.dim();
    let m = h.matrix();
    let dev = m.max_abs_diff(&m.adjoint());
    let norm = m.frobenius_norm();
    if dev > T::tol(HERMITIAN_TOL) * norm.max(T::one()) {
        return Err(Error::NotHermitian {
            deviation: dev.to_f64_lossy(),
        });
    }
    let mut a: Vec<Complex<T>> = m.as_slice().to_vec();
    for i in 0..n {
        a[i * n + i] = Complex::new(a[i * n + i].re, T::zero());
    }
    let threshold = T::tol(JACOBI_TOL) * norm;
    let off = |a: &[Complex<T>]| -> T {
        let mut s = T::zero();
        for r in 0..n {
            for c in 0..n {
                if r != c {
                    s = s + a[r * n + c].norm_sqr();
                }
            }
        }
        s.sqrt()
    };

    let mut sweeps = 0;
    let mut residual = off(&a);
    while residual > threshold {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence {
                sweeps,
                residual: residual.to_f64_lossy(),
            });
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, n, p, q);
            }
        }
        sweeps += 1;
        residual = off(&a);
    }

    let mut eig: Vec<T> = (0..n).map(|i| a[i * n + i].re).collect();
    eig.sort_by(|x, y| y.partial_cmp(x).unwrap_or(std::cmp::Ordering::Equal));
    Ok(eig)
}

/// Annihilates `a[p][q]` with the unitary `G = diag(1, e^{-iθ}) · R(φ)`
/// applied as `G† A G` on the (p, q) plane.
fn rotate<T: Real>(a: &mut [Complex<T>], n: usize, p: usize, q: usize) {
    let apq = a[p * n + q];
    let r = apq.norm();
    if r == T::zero() {
        return;
    }
    let phase = apq / r; // e^{iθ}
    let app = a[p * n + p].re;
    let aqq = a[q * n + q].re;
    let two = T::lit(2.0);
    let tau = (aqq - app) / (two * r);
    let t = if tau >= T::zero() {
        T::one() / (tau + (T::one() + tau * tau).sqrt())
    } else {
        -T::one() / (-tau + (T::one() + tau * tau).sqrt())
    };
    let c = T::one() / (T::one() + t * t).sqrt();
    let s = t * c;
    let cc = Complex::new(c, T::zero());
    let ss = Complex::new(s, T::zero());
    let ph_conj = phase.conj();

    // A ← A G, columns p and q
    for k in 0..n {
        let x = a[k * n + p];
        let y = a[k * n + q];
        a[k * n + p] = cc * x - ss * ph_conj * y;
        a[k * n + q] = ss * x + cc * ph_conj * y;
    }
    // A ← G† A, rows p and q
    for k in 0..n {
        let x = a[p * n + k];
        let y = a[q * n + k];
        a[p * n + k] = cc * x - ss * phase * y;
        a[q * n + k] = ss * x + cc * phase * y;
    }
    a[p * n + q] = Complex::zero();
    a[q * n + p] = Complex::zero();
    a[p * n + p] = Complex::new(a[p * n + p].re, T::zero());
    a[q * n + q] = Complex::new(a[q * n + q].re, T::zero());
}

/// `Σ |eig(ρ^{T_γ})| − 1` from the full dense density matrix.
pub fn negativity_pt_oracle<T: Real>(state: &PureState<T>, kept: Party) -> Result<T> {
    negativity_pt_oracle_capped(state, kept, DEFAULT_MAX_DIM)
}

pub fn negativity_pt_oracle_capped<T: Real>(
    state: &PureState<T>,
    kept: Party,
    max_dim: usize,
) -> Result<T> {
    let spectrum = partial_transpose_spectrum(state, kept, max_dim)?;
    Ok(spectrum.iter().map(|l| l.abs()).sum::<T>() - T::one())
}

/// Eigenvalues of `ρ^{T_γ}` for a normalized tripartite state.
pub fn partial_transpose_spectrum<T: Real>(
    state: &PureState<T>,
    kept: Party,
    max_dim: usize,
) -> Result<Vec<T>> {
    state.require_tripartite()?;
    if state.total_dim() > max_dim {
        return Err(Error::OracleTooLarge {
            dim: state.total_dim(),
            cap: max_dim,
        });
    }
    let rho = density_matrix(state)?;
    let pt = partial_transpose(&rho, state.dims(), kept.index())?;
    hermitian_eigenvalues(&pt)
}

/// `2 Σ |det|` over all 2×2 minors of the conjugated `γ|γ̄` unfolding,
/// computed directly from the minors rather than through the generators.
pub fn negativity_minors<T: Real>(state: &PureState<T>, kept: Party) -> Result<T> {
    let m = crate::state::matricize(state, kept)?.conj();
    let mut s = T::zero();
    for r1 in 0..m.rows() {
        for r2 in r1 + 1..m.rows() {
            for c1 in 0..m.cols() {
                for c2 in c1 + 1..m.cols() {
                    s = s + (m[(r1, c1)] * m[(r2, c2)] - m[(r1, c2)] * m[(r2, c1)]).norm();
                }
            }
        }
    }
    Ok(T::lit(2.0) * s)
}
