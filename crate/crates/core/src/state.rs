//! Pure multipartite states, superpositions and bipartite views.
//!
//! Amplitudes are stored row-major over the subsystem indices, so for a
//! tripartite state the basis vector `|a b c⟩` lives at
//! `(a * d_B + b) * d_C + c`.

use std::fmt;

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::CMatrix;
use crate::oracle::{hermitian_eigenvalues, HermitianMatrix};
use crate::Real;

/// Norms below this are treated as the zero vector.
pub const ZERO_NORM: f64 = 1e-14;
/// Tolerance on `|⟨ψ|ψ⟩ − 1|` for inputs that must be normalized.
pub const NORMALIZED_TOL: f64 = 1e-10;
/// Tolerance on `|a₁|² + |a₂|² − 1` for superposition coefficients.
pub const COEFFICIENT_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct PureState<T> {
    dims: Vec<usize>,
    amplitudes: Vec<Complex<T>>,
    norm_sq: T,
}

impl<T: Real> PureState<T> {
    /// Wraps an amplitude vector without normalizing it.
    pub fn new(dims: Vec<usize>, amplitudes: Vec<Complex<T>>) -> Result<Self> {
        let state = Self::from_parts(dims, amplitudes)?;
        let norm = state.norm_sq.sqrt();
        if norm.is_nan() || norm <= T::lit(ZERO_NORM) {
            return Err(Error::ZeroNorm {
                norm: norm.to_f64_lossy(),
            });
        }
        Ok(state)
    }

    /// Like [`PureState::new`] but accepts the zero vector.
    fn from_parts(dims: Vec<usize>, amplitudes: Vec<Complex<T>>) -> Result<Self> {
        if dims.is_empty() || dims.iter().any(|&d| d < 2) {
            return Err(Error::InvalidDims(dims));
        }
        let expected: usize = dims.iter().product();
        if amplitudes.len() != expected {
            return Err(Error::LengthMismatch {
                expected,
                got: amplitudes.len(),
            });
        }
        let norm_sq = amplitudes.iter().map(|z| z.norm_sqr()).sum();
        Ok(Self {
            dims,
            amplitudes,
            norm_sq,
        })
    }

    /// Computational basis vector with a single 1 at `index`.
    pub fn basis(dims: Vec<usize>, index: usize) -> Result<Self> {
        let total: usize = dims.iter().product();
        let mut amps = vec![Complex::zero(); total];
        if index >= total {
            return Err(Error::LengthMismatch {
                expected: total,
                got: index + 1,
            });
        }
        amps[index] = Complex::new(T::one(), T::zero());
        Self::new(dims, amps)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amplitudes
    }

    pub fn total_dim(&self) -> usize {
        self.amplitudes.len()
    }

    /// `⟨ψ|ψ⟩`.
    pub fn norm_sq(&self) -> T {
        self.norm_sq
    }

    pub fn is_normalized(&self) -> bool {
        (self.norm_sq - T::one()).abs() <= T::tol(NORMALIZED_TOL)
    }

    pub(crate) fn require_normalized(&self) -> Result<()> {
        if self.is_normalized() {
            Ok(())
        } else {
            Err(Error::NotNormalized {
                norm_sq: self.norm_sq.to_f64_lossy(),
            })
        }
    }

    pub(crate) fn require_tripartite(&self) -> Result<()> {
        if self.dims.len() == 3 {
            Ok(())
        } else {
            Err(Error::NotTripartite(self.dims.len()))
        }
    }

    pub(crate) fn require_same_dims(&self, other: &Self) -> Result<()> {
        if self.dims == other.dims {
            Ok(())
        } else {
            Err(Error::DimsMismatch {
                left: self.dims.clone(),
                right: other.dims.clone(),
            })
        }
    }

    /// Returns `|χ⟩/‖χ‖` together with the original `⟨χ|χ⟩`.
    pub fn normalize(&self) -> Result<(Self, T)> {
        let norm = self.norm_sq.sqrt();
        if norm.is_nan() || norm <= T::lit(ZERO_NORM) {
            return Err(Error::ZeroNorm {
                norm: norm.to_f64_lossy(),
            });
        }
        let amps = self.amplitudes.iter().map(|z| z / norm).collect();
        let out = Self::from_parts(self.dims.clone(), amps)?;
        Ok((out, self.norm_sq))
    }

    /// Entry-wise complex conjugate in the computational basis.
    pub fn conjugate(&self) -> Self {
        Self {
            dims: self.dims.clone(),
            amplitudes: self.amplitudes.iter().map(|z| z.conj()).collect(),
            norm_sq: self.norm_sq,
        }
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Result<Complex<T>> {
        self.require_same_dims(other)?;
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .fold(Complex::zero(), |acc, (a, b)| acc + a.conj() * b))
    }

    /// Multiplies every amplitude by `factor`.
    pub fn scaled(&self, factor: Complex<T>) -> Self {
        let amps: Vec<_> = self.amplitudes.iter().map(|z| z * factor).collect();
        let norm_sq = amps.iter().map(|z| z.norm_sqr()).sum();
        Self {
            dims: self.dims.clone(),
            amplitudes: amps,
            norm_sq,
        }
    }
}

pub fn normalize<T: Real>(state: &PureState<T>) -> Result<(PureState<T>, T)> {
    state.normalize()
}

pub fn conjugate<T: Real>(state: &PureState<T>) -> PureState<T> {
    state.conjugate()
}

/// `a₁|ψ₁⟩ + a₂|ψ₂⟩`, left unnormalized. Requires `|a₁|² + |a₂|² = 1`.
pub fn superpose<T: Real>(
    a1: Complex<T>,
    psi1: &PureState<T>,
    a2: Complex<T>,
    psi2: &PureState<T>,
) -> Result<PureState<T>> {
    check_coefficients(a1, a2)?;
    superpose_unchecked(a1, psi1, a2, psi2)
}

/// [`superpose`] without the coefficient constraint. The result may be the
/// zero vector.
pub fn superpose_unchecked<T: Real>(
    a1: Complex<T>,
    psi1: &PureState<T>,
    a2: Complex<T>,
    psi2: &PureState<T>,
) -> Result<PureState<T>> {
    psi1.require_same_dims(psi2)?;
    let amps = psi1
        .amplitudes
        .iter()
        .zip(&psi2.amplitudes)
        .map(|(x, y)| a1 * x + a2 * y)
        .collect();
    PureState::from_parts(psi1.dims.clone(), amps)
}

pub fn check_coefficients<T: Real>(a1: Complex<T>, a2: Complex<T>) -> Result<()> {
    let sum = a1.norm_sqr() + a2.norm_sqr();
    if (sum - T::one()).abs() <= T::tol(COEFFICIENT_TOL) {
        Ok(())
    } else {
        Err(Error::CoefficientNorm {
            sum: sum.to_f64_lossy(),
        })
    }
}

/// One of the three parties of a tripartite system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Party {
    A,
    B,
    C,
}

impl Party {
    pub const ALL: [Party; 3] = [Party::A, Party::B, Party::C];

    pub fn index(self) -> usize {
        match self {
            Party::A => 0,
            Party::B => 1,
            Party::C => 2,
        }
    }

    pub fn from_index(i: usize) -> Option<Self> {
        Self::ALL.get(i).copied()
    }

    /// The two remaining parties in (A, B, C) order.
    pub fn complement(self) -> [Party; 2] {
        match self {
            Party::A => [Party::B, Party::C],
            Party::B => [Party::A, Party::C],
            Party::C => [Party::A, Party::B],
        }
    }
}

impl fmt::Display for Party {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Party::A => "A",
            Party::B => "B",
            Party::C => "C",
        };
        f.write_str(s)
    }
}

/// A single party γ against the other two, `γ|γ̄`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bipartition {
    pub kept: Party,
    pub row_dim: usize,
    pub col_dim: usize,
}

impl Bipartition {
    pub fn new(dims: &[usize], kept: Party) -> Result<Self> {
        if dims.len() != 3 {
            return Err(Error::NotTripartite(dims.len()));
        }
        let [p, q] = kept.complement();
        Ok(Self {
            kept,
            row_dim: dims[kept.index()],
            col_dim: dims[p.index()] * dims[q.index()],
        })
    }

    pub fn all(dims: &[usize]) -> Result<[Self; 3]> {
        Ok([
            Self::new(dims, Party::A)?,
            Self::new(dims, Party::B)?,
            Self::new(dims, Party::C)?,
        ])
    }
}

impl fmt::Display for Bipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [p, q] = self.kept.complement();
        write!(f, "{}|{}{}", self.kept, p, q)
    }
}

/// Maps a flat amplitude index to its (row, column) in the `γ|γ̄` unfolding.
fn unfold_index(dims: &[usize], kept: Party, flat: usize) -> (usize, usize) {
    let (da, db, dc) = (dims[0], dims[1], dims[2]);
    let c = flat % dc;
    let b = (flat / dc) % db;
    let a = flat / (dc * db);
    debug_assert!(a < da);
    match kept {
        Party::A => (a, b * dc + c),
        Party::B => (b, a * dc + c),
        Party::C => (c, a * db + b),
    }
}

/// The `d_γ × D_γ̄` amplitude matrix of the `γ|γ̄` split. Complementary
/// indices are composed row-major in (A, B, C) order.
pub fn matricize<T: Real>(state: &PureState<T>, kept: Party) -> Result<CMatrix<T>> {
    state.require_tripartite()?;
    let bp = Bipartition::new(&state.dims, kept)?;
    let mut m = CMatrix::zeros(bp.row_dim, bp.col_dim);
    for (flat, z) in state.amplitudes.iter().enumerate() {
        m[unfold_index(&state.dims, kept, flat)] = *z;
    }
    Ok(m)
}

/// Inverse of [`matricize`]: rebuilds the flat amplitude vector.
pub fn flatten<T: Real>(m: &CMatrix<T>, dims: &[usize], kept: Party) -> Result<Vec<Complex<T>>> {
    let bp = Bipartition::new(dims, kept)?;
    if (m.rows(), m.cols()) != (bp.row_dim, bp.col_dim) {
        return Err(Error::MatrixDims {
            size: m.rows() * m.cols(),
            dims: dims.to_vec(),
        });
    }
    let total: usize = dims.iter().product();
    Ok((0..total)
        .map(|flat| m[unfold_index(dims, kept, flat)])
        .collect())
}

/// `ρ_γ = M_γ M_γ†` for a normalized state.
pub fn reduced_density<T: Real>(state: &PureState<T>, kept: Party) -> Result<HermitianMatrix<T>> {
    state.require_normalized()?;
    reduced_density_scaled(state, kept, state.norm_sq)
}

/// `M_γ M_γ† / norm_sq`, for states whose squared norm is known.
pub fn reduced_density_scaled<T: Real>(
    state: &PureState<T>,
    kept: Party,
    norm_sq: T,
) -> Result<HermitianMatrix<T>> {
    if norm_sq.is_nan() || norm_sq <= T::lit(ZERO_NORM * ZERO_NORM) {
        return Err(Error::ZeroNorm {
            norm: norm_sq.sqrt().to_f64_lossy(),
        });
    }
    let m = matricize(state, kept)?;
    let n = m.rows();
    let mut rho = CMatrix::zeros(n, n);
    for r in 0..n {
        for c in r..n {
            let v = m
                .row(r)
                .iter()
                .zip(m.row(c))
                .fold(Complex::zero(), |acc, (x, y)| acc + x * y.conj())
                / norm_sq;
            rho[(r, c)] = v;
            rho[(c, r)] = v.conj();
        }
        rho[(r, r)] = Complex::new(rho[(r, r)].re, T::zero());
    }
    Ok(HermitianMatrix::new_unchecked(rho))
}

/// Eigenvalues of a reduced density matrix, descending.
#[derive(Debug, Clone, PartialEq)]
pub struct SchmidtSpectrum<T> {
    pub lambdas: Vec<T>,
}

impl<T: Real> SchmidtSpectrum<T> {
    pub fn sum(&self) -> T {
        self.lambdas.iter().copied().sum()
    }

    /// `Σ λ²`, equal to `Tr ρ_γ²`.
    pub fn purity(&self) -> T {
        self.lambdas.iter().map(|&l| l * l).sum()
    }

    /// `(Σ √λ)² − 1`, the negativity of the bipartition.
    pub fn negativity(&self) -> T {
        let s: T = self.lambdas.iter().map(|l| l.sqrt()).sum();
        s * s - T::one()
    }

    /// Number of coefficients strictly above `tol`.
    pub fn rank(&self, tol: T) -> usize {
        self.lambdas.iter().filter(|&&l| l > tol).count()
    }
}

pub fn schmidt_spectrum<T: Real>(state: &PureState<T>, kept: Party) -> Result<SchmidtSpectrum<T>> {
    let rho = reduced_density(state, kept)?;
    let lambdas = hermitian_eigenvalues(&rho)?
        .into_iter()
        .map(|l| l.max(T::zero()).min(T::one()))
        .collect();
    Ok(SchmidtSpectrum { lambdas })
}
