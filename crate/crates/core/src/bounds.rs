//! Bounds on the negativities of `|χ⟩ = a₁|ψ₁⟩ + a₂|ψ₂⟩`.
//!
//! Writing `S_γ(ψ_i, ψ_j)` for the generator cross sums, the bilinear form
//! of `χ` expands as `a₁*² B₁₁ + a₂*² B₂₂ + 2 a₁* a₂* B₁₂` term by term, so
//! the triangle inequality gives, with `N = 2 Σ_γ N_γ`,
//!
//! ```text
//! F11 = 2|a₁|² Σ_γ S_γ(ψ₁,ψ₁)   F22 = 2|a₂|² Σ_γ S_γ(ψ₂,ψ₂)   F12 = 2|a₁a₂| Σ_γ S_γ(ψ₁,ψ₂)
//! ‖χ‖² N(χ′) ≤ F11 + F22 + 2 F12
//! ‖χ‖² N(χ′) ≥ max(F11 − F22 − 2F12, −F11 + F22 − 2F12, −F11 − F22 + 2F12)
//! ```
//!
//! and for the GME negativity, with `f_ij` (`g_ij`) the largest (smallest)
//! of `|a_i a_j| S_γ(ψ_i, ψ_j)` over γ,
//!
//! ```text
//! ‖χ‖² N_GME(χ′) ≤ min(g11 + f22 + 2f12, f11 + g22 + 2f12, f11 + f22 + 2g12)
//! ‖χ‖² N_GME(χ′) ≥ max(g11 − f22 − 2f12, −f11 + g22 − 2f12, −f11 − f22 + 2g12)
//! ```

use num_complex::Complex;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::io::sig_digits;
use crate::library::{z_family, ZFamilyParams};
use crate::measures::{cross_sum, gme_negativity, multipartite_negativity};
use crate::state::{check_coefficients, superpose_unchecked, Party, PureState};
use crate::Real;

/// Closed-form constants `(c₁, c₂, c₃)` of `c₁(1−p) + c₂√(p(1−p)) + c₃p`
/// quoted in the literature for the GME negativity of the GHZ/W family.
pub const REFERENCE_GME_CURVE: [f64; 3] = [16.0 / 3.0, 8.0 / 3.0 * 2.449_489_742_783_178, 4.0];
/// Same for the usual multipartite negativity.
pub const REFERENCE_MULTI_CURVE: [f64; 3] = [32.0, 16.0 * 2.449_489_742_783_178, 24.0];

#[derive(Debug, Clone, PartialEq)]
pub struct SuperpositionSpec<T> {
    pub a1: Complex<T>,
    pub psi1: PureState<T>,
    pub a2: Complex<T>,
    pub psi2: PureState<T>,
}

impl<T: Real> SuperpositionSpec<T> {
    /// Checks matching dims and `|a₁|² + |a₂|² = 1`.
    pub fn new(
        a1: Complex<T>,
        psi1: PureState<T>,
        a2: Complex<T>,
        psi2: PureState<T>,
    ) -> Result<Self> {
        check_coefficients(a1, a2)?;
        Self::new_unchecked(a1, psi1, a2, psi2)
    }

    /// Skips the coefficient constraint; the bounds are then evaluated by the
    /// same formulas.
    pub fn new_unchecked(
        a1: Complex<T>,
        psi1: PureState<T>,
        a2: Complex<T>,
        psi2: PureState<T>,
    ) -> Result<Self> {
        psi1.require_tripartite()?;
        psi1.require_same_dims(&psi2)?;
        Ok(Self { a1, psi1, a2, psi2 })
    }

    /// The unnormalized superposition `χ`.
    pub fn chi(&self) -> Result<PureState<T>> {
        superpose_unchecked(self.a1, &self.psi1, self.a2, &self.psi2)
    }

    /// Exchanges `(a₁, ψ₁)` and `(a₂, ψ₂)`.
    pub fn swapped(&self) -> Self {
        Self {
            a1: self.a2,
            psi1: self.psi2.clone(),
            a2: self.a1,
            psi2: self.psi1.clone(),
        }
    }
}

/// Cross sums of the two components and the scalars built from them.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CrossTermTable<T: Real> {
    /// `S_γ(ψ₁, ψ₁)` for γ = A, B, C.
    pub s11: [T; 3],
    pub s22: [T; 3],
    pub s12: [T; 3],
    #[serde(rename = "F11", serialize_with = "sig_digits")]
    pub big_f11: T,
    #[serde(rename = "F22", serialize_with = "sig_digits")]
    pub big_f22: T,
    #[serde(rename = "F12", serialize_with = "sig_digits")]
    pub big_f12: T,
    #[serde(serialize_with = "sig_digits")]
    pub f11: T,
    #[serde(serialize_with = "sig_digits")]
    pub f22: T,
    #[serde(serialize_with = "sig_digits")]
    pub f12: T,
    #[serde(serialize_with = "sig_digits")]
    pub g11: T,
    #[serde(serialize_with = "sig_digits")]
    pub g22: T,
    #[serde(serialize_with = "sig_digits")]
    pub g12: T,
}

/// Upper bound, raw lower bound and the lower bound clamped at zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundTriple<T> {
    pub upper: T,
    pub lower_raw: T,
    pub lower: T,
}

impl<T: Real> BoundTriple<T> {
    fn new(upper: T, lower_raw: T) -> Self {
        Self {
            upper,
            lower_raw,
            lower: lower_raw.max(T::zero()),
        }
    }

    /// How far `exact` falls outside `[lower_raw, upper]` (0 when inside).
    pub fn violation(&self, exact: T) -> T {
        (self.lower_raw - exact)
            .max(exact - self.upper)
            .max(T::zero())
    }
}

fn max3<T: Real>(v: [T; 3]) -> T {
    v[0].max(v[1]).max(v[2])
}

fn min3<T: Real>(v: [T; 3]) -> T {
    v[0].min(v[1]).min(v[2])
}

impl<T: Real> CrossTermTable<T> {
    pub fn theorem1(&self) -> BoundTriple<T> {
        let (f11, f22, f12) = (self.big_f11, self.big_f22, self.big_f12);
        let two = T::lit(2.0);
        let upper = f11 + f22 + two * f12;
        let lower = max3([
            f11 - f22 - two * f12,
            -f11 + f22 - two * f12,
            -f11 - f22 + two * f12,
        ]);
        BoundTriple::new(upper, lower)
    }

    pub fn theorem2(&self) -> BoundTriple<T> {
        let two = T::lit(2.0);
        let upper = min3([
            self.g11 + self.f22 + two * self.f12,
            self.f11 + self.g22 + two * self.f12,
            self.f11 + self.f22 + two * self.g12,
        ]);
        let lower = max3([
            self.g11 - self.f22 - two * self.f12,
            -self.f11 + self.g22 - two * self.f12,
            -self.f11 - self.f22 + two * self.g12,
        ]);
        BoundTriple::new(upper, lower)
    }
}

fn per_party<T: Real>(psi: &PureState<T>, phi: &PureState<T>) -> Result<[T; 3]> {
    Ok([
        cross_sum(psi, phi, Party::A)?,
        cross_sum(psi, phi, Party::B)?,
        cross_sum(psi, phi, Party::C)?,
    ])
}

pub fn cross_terms<T: Real>(spec: &SuperpositionSpec<T>) -> Result<CrossTermTable<T>> {
    spec.psi1.require_same_dims(&spec.psi2)?;
    let s11 = per_party(&spec.psi1, &spec.psi1)?;
    let s22 = per_party(&spec.psi2, &spec.psi2)?;
    let s12 = per_party(&spec.psi1, &spec.psi2)?;
    let w11 = spec.a1.norm_sqr();
    let w22 = spec.a2.norm_sqr();
    let w12 = spec.a1.norm() * spec.a2.norm();
    let two = T::lit(2.0);
    let total = |s: [T; 3]| s[0] + s[1] + s[2];
    Ok(CrossTermTable {
        big_f11: two * w11 * total(s11),
        big_f22: two * w22 * total(s22),
        big_f12: two * w12 * total(s12),
        f11: w11 * max3(s11),
        f22: w22 * max3(s22),
        f12: w12 * max3(s12),
        g11: w11 * min3(s11),
        g22: w22 * min3(s22),
        g12: w12 * min3(s12),
        s11,
        s22,
        s12,
    })
}

pub fn theorem1_bounds<T: Real>(spec: &SuperpositionSpec<T>) -> Result<BoundTriple<T>> {
    Ok(cross_terms(spec)?.theorem1())
}

pub fn theorem2_bounds<T: Real>(spec: &SuperpositionSpec<T>) -> Result<BoundTriple<T>> {
    Ok(cross_terms(spec)?.theorem2())
}

fn check_positive<T: Real>(vals: &[[T; 3]; 3]) -> Result<()> {
    if vals.iter().flatten().all(|&v| v > T::zero()) {
        Ok(())
    } else {
        Err(Error::NonPositive)
    }
}

/// `min_k(b_k + c_k + d_k) ≤ min b + max c + max d`.
pub fn min_combine_upper<T: Real>(b: [T; 3], c: [T; 3], d: [T; 3]) -> Result<bool> {
    check_positive(&[b, c, d])?;
    let lhs = min3([b[0] + c[0] + d[0], b[1] + c[1] + d[1], b[2] + c[2] + d[2]]);
    Ok(lhs <= min3(b) + max3(c) + max3(d))
}

/// `min_k(b_k − c_k − d_k) ≥ min b − max c − max d`.
pub fn min_combine_lower<T: Real>(b: [T; 3], c: [T; 3], d: [T; 3]) -> Result<bool> {
    check_positive(&[b, c, d])?;
    let lhs = min3([b[0] - c[0] - d[0], b[1] - c[1] - d[1], b[2] - c[2] - d[2]]);
    Ok(lhs >= min3(b) - max3(c) - max3(d))
}

/// Exact values and both theorems' bounds for one superposition.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundsReport<T: Real> {
    #[serde(serialize_with = "sig_digits")]
    pub norm_sq: T,
    /// `‖χ‖² N(χ′)`.
    #[serde(serialize_with = "sig_digits")]
    pub n_exact: T,
    /// `‖χ‖² N_GME(χ′)`.
    #[serde(serialize_with = "sig_digits")]
    pub ngme_exact: T,
    #[serde(serialize_with = "sig_digits")]
    pub t1_upper: T,
    #[serde(serialize_with = "sig_digits")]
    pub t1_lower_raw: T,
    #[serde(serialize_with = "sig_digits")]
    pub t1_lower: T,
    #[serde(serialize_with = "sig_digits")]
    pub t2_upper: T,
    #[serde(serialize_with = "sig_digits")]
    pub t2_lower_raw: T,
    #[serde(serialize_with = "sig_digits")]
    pub t2_lower: T,
}

impl<T: Real> BoundsReport<T> {
    pub fn t1(&self) -> BoundTriple<T> {
        BoundTriple {
            upper: self.t1_upper,
            lower_raw: self.t1_lower_raw,
            lower: self.t1_lower,
        }
    }

    pub fn t2(&self) -> BoundTriple<T> {
        BoundTriple {
            upper: self.t2_upper,
            lower_raw: self.t2_lower_raw,
            lower: self.t2_lower,
        }
    }

    /// `t2_upper − ngme_exact`.
    pub fn t2_gap(&self) -> T {
        self.t2_upper - self.ngme_exact
    }
}

pub fn bounds_report<T: Real>(spec: &SuperpositionSpec<T>) -> Result<BoundsReport<T>> {
    Ok(bounds_report_with_terms(spec)?.0)
}

pub fn bounds_report_with_terms<T: Real>(
    spec: &SuperpositionSpec<T>,
) -> Result<(BoundsReport<T>, CrossTermTable<T>)> {
    let table = cross_terms(spec)?;
    let (chi, norm_sq) = spec.chi()?.normalize()?;
    let t1 = table.theorem1();
    let t2 = table.theorem2();
    let report = BoundsReport {
        norm_sq,
        n_exact: norm_sq * multipartite_negativity(&chi)?,
        ngme_exact: norm_sq * gme_negativity(&chi)?,
        t1_upper: t1.upper,
        t1_lower_raw: t1.lower_raw,
        t1_lower: t1.lower,
        t2_upper: t2.upper,
        t2_lower_raw: t2.lower_raw,
        t2_lower: t2.lower,
    };
    Ok((report, table))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow<T: Real> {
    pub p: T,
    pub phi: T,
    pub report: BoundsReport<T>,
}

impl<T: Real> SweepRow<T> {
    pub const COLUMNS: [&'static str; 10] = [
        "p",
        "phi",
        "norm_sq",
        "n_exact",
        "t1_upper",
        "t1_lower",
        "ngme_exact",
        "t2_upper",
        "t2_lower",
        "t2_gap",
    ];

    pub fn values(&self) -> [T; 10] {
        let r = &self.report;
        [
            self.p,
            self.phi,
            r.norm_sq,
            r.n_exact,
            r.t1_upper,
            r.t1_lower,
            r.ngme_exact,
            r.t2_upper,
            r.t2_lower,
            r.t2_gap(),
        ]
    }
}

pub fn z_family_point<T: Real>(p: T, phi: T) -> Result<SweepRow<T>> {
    let spec = z_family(ZFamilyParams::new(p, phi)?);
    Ok(SweepRow {
        p,
        phi,
        report: bounds_report(&spec)?,
    })
}

/// One report per grid point, in grid order.
pub fn z_family_sweep<T: Real>(p_grid: &[T], phi: T) -> Result<Vec<SweepRow<T>>> {
    if p_grid.is_empty() {
        return Err(Error::EmptyGrid);
    }
    p_grid.iter().map(|&p| z_family_point(p, phi)).collect()
}

/// Least-squares coefficients of `c₁(1−p) + c₂√(p(1−p)) + c₃p`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurveFit {
    #[serde(serialize_with = "sig_digits")]
    pub c1: f64,
    #[serde(serialize_with = "sig_digits")]
    pub c2: f64,
    #[serde(serialize_with = "sig_digits")]
    pub c3: f64,
    #[serde(serialize_with = "sig_digits")]
    pub max_residual: f64,
}

impl CurveFit {
    pub fn eval(&self, p: f64) -> f64 {
        self.c1 * (1.0 - p) + self.c2 * (p * (1.0 - p)).sqrt() + self.c3 * p
    }
}

pub fn fit_z_curve(ps: &[f64], values: &[f64]) -> Result<CurveFit> {
    use nalgebra::{DMatrix, DVector};
    if ps.len() != values.len() {
        return Err(Error::Fit(format!(
            "{} abscissae, {} values",
            ps.len(),
            values.len()
        )));
    }
    if ps.len() < 3 {
        return Err(Error::Fit("need at least three points".into()));
    }
    let design = DMatrix::from_fn(ps.len(), 3, |r, c| {
        let p = ps[r];
        match c {
            0 => 1.0 - p,
            1 => (p * (1.0 - p)).sqrt(),
            _ => p,
        }
    });
    let rhs = DVector::from_column_slice(values);
    let coef = design
        .svd(true, true)
        .solve(&rhs, 1e-14)
        .map_err(|e| Error::Fit(e.to_string()))?;
    let mut fit = CurveFit {
        c1: coef[0],
        c2: coef[1],
        c3: coef[2],
        max_residual: 0.0,
    };
    fit.max_residual = ps
        .iter()
        .zip(values)
        .map(|(&p, &v)| (fit.eval(p) - v).abs())
        .fold(0.0, f64::max);
    Ok(fit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::library::{ghz, haar_random, w_state};
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    fn ket(idx: usize) -> PureState<f64> {
        PureState::basis(vec![2, 2, 2], idx).unwrap()
    }

    fn h() -> f64 {
        0.5f64.sqrt()
    }

    #[test]
    fn cross_terms_of_identical_ghz() {
        let g = ghz::<f64>(2).unwrap();
        let spec = SuperpositionSpec::new(c(h(), 0.0), g.clone(), c(h(), 0.0), g).unwrap();
        let t = cross_terms(&spec).unwrap();
        for v in t.s12 {
            assert_abs_diff_eq!(v, 1.0, epsilon = 1e-15);
        }
        assert_abs_diff_eq!(t.f12, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(t.g12, 0.5, epsilon = 1e-15);
    }

    #[test]
    fn cross_terms_of_product_basis_states() {
        for (a1, a2) in [(c(h(), 0.0), c(h(), 0.0)), (c(0.6, 0.0), c(0.0, 0.8))] {
            let spec = SuperpositionSpec::new(a1, ket(0), a2, ket(7)).unwrap();
            let t = cross_terms(&spec).unwrap();
            assert_eq!(t.s11, [0.0; 3]);
            assert_eq!(t.s22, [0.0; 3]);
            for v in t.s12 {
                assert_abs_diff_eq!(v, 1.0, epsilon = 1e-15);
            }
        }
    }

    #[test]
    fn zero_second_coefficient() {
        let spec = SuperpositionSpec::new(
            c(1.0, 0.0),
            haar_random::<f64>(&[2, 2, 2], 1).unwrap(),
            c(0.0, 0.0),
            haar_random::<f64>(&[2, 2, 2], 2).unwrap(),
        )
        .unwrap();
        let t = cross_terms(&spec).unwrap();
        for v in [t.big_f22, t.big_f12, t.f22, t.f12, t.g22, t.g12] {
            assert_eq!(v, 0.0);
        }
        assert_abs_diff_eq!(
            t.big_f11,
            multipartite_negativity(&spec.psi1).unwrap(),
            epsilon = 1e-12
        );
    }

    #[test]
    fn degenerate_superposition_is_exact() {
        let g = ghz::<f64>(2).unwrap();
        let spec = SuperpositionSpec::new(c(1.0, 0.0), g.clone(), c(0.0, 0.0), w_state()).unwrap();
        let t1 = theorem1_bounds(&spec).unwrap();
        assert_abs_diff_eq!(t1.upper, 6.0, epsilon = 1e-14);
        assert_abs_diff_eq!(t1.lower, 6.0, epsilon = 1e-14);
        let t2 = theorem2_bounds(&spec).unwrap();
        assert_abs_diff_eq!(t2.upper, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(t2.lower, 1.0, epsilon = 1e-15);
        let r = bounds_report(&spec).unwrap();
        assert_abs_diff_eq!(r.n_exact, 6.0, epsilon = 1e-14);
        assert_abs_diff_eq!(r.ngme_exact, 1.0, epsilon = 1e-14);
    }

    #[test]
    fn basis_state_superposition_is_tight() {
        let spec = SuperpositionSpec::new(c(h(), 0.0), ket(0), c(h(), 0.0), ket(7)).unwrap();
        let t = cross_terms(&spec).unwrap();
        assert_abs_diff_eq!(t.big_f12, 3.0, epsilon = 1e-14);
        let r = bounds_report(&spec).unwrap();
        assert_abs_diff_eq!(r.t1_upper, 6.0, epsilon = 1e-14);
        assert_abs_diff_eq!(r.n_exact, 6.0, epsilon = 1e-14);
        assert_abs_diff_eq!(r.t2_upper, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(r.ngme_exact, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(r.t1_lower_raw, 6.0, epsilon = 1e-14);
    }

    #[test]
    fn random_specs_are_sandwiched() {
        for seed in 0..50u64 {
            let d = 2 + (seed as usize % 2);
            let psi1 = haar_random::<f64>(&[d, d, d], 2 * seed).unwrap();
            let psi2 = haar_random::<f64>(&[d, d, d], 2 * seed + 1).unwrap();
            let theta = 0.1 + seed as f64 * 0.03;
            let a1 = Complex::from_polar(theta.cos(), 0.4 * seed as f64);
            let a2 = Complex::from_polar(theta.sin(), -0.7 * seed as f64);
            let spec = SuperpositionSpec::new(a1, psi1, a2, psi2).unwrap();
            let r = bounds_report(&spec).unwrap();
            assert!(r.t1().violation(r.n_exact) <= 1e-9);
            assert!(r.t2().violation(r.ngme_exact) <= 1e-9);
        }
    }

    #[test]
    fn bounds_ignore_coefficient_phases() {
        let psi1 = haar_random::<f64>(&[2, 3, 2], 5).unwrap();
        let psi2 = haar_random::<f64>(&[2, 3, 2], 6).unwrap();
        let base =
            SuperpositionSpec::new(c(0.6, 0.0), psi1.clone(), c(0.8, 0.0), psi2.clone()).unwrap();
        let turned = SuperpositionSpec::new(
            Complex::from_polar(0.6, 1.3),
            psi1,
            Complex::from_polar(0.8, -2.1),
            psi2,
        )
        .unwrap();
        let (a, b) = (cross_terms(&base).unwrap(), cross_terms(&turned).unwrap());
        for (x, y) in [(a.theorem1(), b.theorem1()), (a.theorem2(), b.theorem2())] {
            assert_abs_diff_eq!(x.upper, y.upper, epsilon = 1e-14);
            assert_abs_diff_eq!(x.lower_raw, y.lower_raw, epsilon = 1e-14);
        }
    }

    #[test]
    fn exchange_symmetry() {
        let spec = SuperpositionSpec::new(
            c(0.6, 0.0),
            haar_random::<f64>(&[3, 3, 3], 8).unwrap(),
            c(0.0, 0.8),
            haar_random::<f64>(&[3, 3, 3], 9).unwrap(),
        )
        .unwrap();
        let a = cross_terms(&spec).unwrap();
        let b = cross_terms(&spec.swapped()).unwrap();
        assert_abs_diff_eq!(a.theorem1().upper, b.theorem1().upper, epsilon = 1e-13);
        assert_abs_diff_eq!(
            a.theorem1().lower_raw,
            b.theorem1().lower_raw,
            epsilon = 1e-13
        );
        assert_abs_diff_eq!(a.theorem2().upper, b.theorem2().upper, epsilon = 1e-13);
        assert_abs_diff_eq!(
            a.theorem2().lower_raw,
            b.theorem2().lower_raw,
            epsilon = 1e-13
        );
    }

    #[test]
    fn g_never_exceeds_f() {
        for seed in 0..20 {
            let spec = SuperpositionSpec::new(
                c(0.8, 0.0),
                haar_random::<f64>(&[2, 2, 3], seed).unwrap(),
                c(0.0, 0.6),
                haar_random::<f64>(&[2, 2, 3], seed + 50).unwrap(),
            )
            .unwrap();
            let t = cross_terms(&spec).unwrap();
            assert!(t.g11 <= t.f11 && t.g22 <= t.f22 && t.g12 <= t.f12);
            assert_abs_diff_eq!(
                t.big_f11,
                0.64 * multipartite_negativity(&spec.psi1).unwrap(),
                epsilon = 1e-10
            );
        }
    }

    #[test]
    fn spec_validation() {
        let g = ghz::<f64>(2).unwrap();
        assert!(matches!(
            SuperpositionSpec::new(c(1.0, 0.0), g.clone(), c(1.0, 0.0), g.clone()),
            Err(Error::CoefficientNorm { .. })
        ));
        assert!(
            SuperpositionSpec::new_unchecked(c(1.0, 0.0), g.clone(), c(1.0, 0.0), g.clone())
                .is_ok()
        );
        assert!(matches!(
            SuperpositionSpec::new(c(1.0, 0.0), g, c(0.0, 0.0), ghz(3).unwrap()),
            Err(Error::DimsMismatch { .. })
        ));
    }

    #[test]
    fn cancelling_superposition_reports_zero_norm() {
        let g = ghz::<f64>(2).unwrap();
        let spec = SuperpositionSpec::new(c(h(), 0.0), g.clone(), c(-h(), 0.0), g).unwrap();
        assert!(spec.chi().unwrap().norm_sq() < 1e-30);
        assert!(matches!(bounds_report(&spec), Err(Error::ZeroNorm { .. })));
    }

    #[test]
    fn lemma_examples() {
        assert!(min_combine_upper([1.0; 3], [1.0; 3], [1.0; 3]).unwrap());
        assert!(min_combine_lower([1.0; 3], [1.0; 3], [1.0; 3]).unwrap());
        let (b, cc, d) = ([1.0, 2.0, 3.0], [3.0, 1.0, 2.0], [2.0, 3.0, 1.0]);
        // sums are (6, 6, 6) ≤ 1 + 3 + 3; differences (−4, −2, 0) ≥ 1 − 3 − 3
        assert!(min_combine_upper(b, cc, d).unwrap());
        assert!(min_combine_lower(b, cc, d).unwrap());
        assert_eq!(
            min_combine_upper([0.0, 1.0, 1.0], [1.0; 3], [1.0; 3]),
            Err(Error::NonPositive)
        );
        assert_eq!(
            min_combine_lower([1.0; 3], [-1.0, 1.0, 1.0], [1.0; 3]),
            Err(Error::NonPositive)
        );
    }

    #[test]
    fn sweep_endpoints() {
        let rows = z_family_sweep(&[1.0f64, 0.0], 0.0).unwrap();
        assert_abs_diff_eq!(rows[0].report.n_exact, 6.0, epsilon = 1e-14);
        assert_abs_diff_eq!(rows[0].report.ngme_exact, 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(rows[1].report.n_exact, 8.0, epsilon = 1e-14);
        assert_abs_diff_eq!(rows[1].report.ngme_exact, 4.0 / 3.0, epsilon = 1e-14);
        assert_eq!(z_family_sweep::<f64>(&[], 0.0), Err(Error::EmptyGrid));
        assert_eq!(
            z_family_sweep(&[0.5f64, 1.2], 0.0),
            Err(Error::WeightOutOfRange(1.2))
        );
    }

    #[test]
    fn sweep_at_half_matches_frozen_oracle_values() {
        // values frozen from the dense generator-matrix oracle in tests/dense_generators.rs
        let row = z_family_point(0.5f64, 0.0).unwrap();
        assert_abs_diff_eq!(row.report.norm_sq, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(row.report.ngme_exact, FROZEN_NGME_HALF, epsilon = 1e-12);
        assert_abs_diff_eq!(row.report.n_exact, 6.0 * FROZEN_NGME_HALF, epsilon = 1e-12);
        assert!(row.report.t2_gap().abs() < 1e-12);
    }

    const FROZEN_NGME_HALF: f64 = 1.983_163_247_594_393_7;

    #[test]
    fn fit_recovers_known_curve() {
        let ps: Vec<f64> = (0..=20).map(|i| i as f64 / 20.0).collect();
        let truth = CurveFit {
            c1: 1.5,
            c2: -0.25,
            c3: 2.0,
            max_residual: 0.0,
        };
        let ys: Vec<f64> = ps.iter().map(|&p| truth.eval(p)).collect();
        let fit = fit_z_curve(&ps, &ys).unwrap();
        assert_abs_diff_eq!(fit.c1, 1.5, epsilon = 1e-12);
        assert_abs_diff_eq!(fit.c2, -0.25, epsilon = 1e-12);
        assert_abs_diff_eq!(fit.c3, 2.0, epsilon = 1e-12);
        assert!(fit.max_residual < 1e-12);
        assert!(fit_z_curve(&ps[..2], &ys[..2]).is_err());
    }
}
