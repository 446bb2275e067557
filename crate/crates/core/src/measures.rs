//! Entanglement measures built from antisymmetric SO(d) generators.
//!
//! With `L_α = |i⟩⟨j| − |j⟩⟨i|` on the kept party and `S_β = |k⟩⟨l| − |l⟩⟨k|`
//! on the composite complement, `J_αβ = L_α ⊗ S_β` has four nonzero entries
//! and `⟨ψ|J_αβ|φ*⟩` reduces to a signed sum of four amplitude products of
//! the conjugated matricizations. Pairs are enumerated lexicographically,
//! `α` outer and `β` inner.
//!
//! The generator sum `N_γ = Σ_αβ |⟨ψ|J_αβ|ψ*⟩|` is twice the sum of the
//! absolute 2×2 minors of `M_γ`. It is evaluated in the computational basis
//! and is therefore not invariant under local unitaries: it coincides with
//! the trace-norm negativity `(Σ√λ)² − 1` when `M_γ` is Schmidt-diagonal and
//! bounds it from above otherwise. The quadratic sum `Σ_αβ |⟨ψ|J_αβ|ψ*⟩|²`
//! is invariant and equals `2(1 − Tr ρ_γ²)`.

use num_complex::Complex;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::io::sig_digits;
use crate::matrix::CMatrix;
use crate::state::{matricize, reduced_density, schmidt_spectrum, Party, PureState};
use crate::Real;

/// Default threshold for calling a bipartition separable.
pub const BISEPARABLE_TOL: f64 = 1e-9;
/// Largest tolerated disagreement between the two concurrence routes.
pub const CONCURRENCE_TOL: f64 = 1e-8;

/// Index pair `(i, j)`, `i < j`, selecting the generator `|i⟩⟨j| − |j⟩⟨i|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct GeneratorPair {
    pub i: usize,
    pub j: usize,
}

impl GeneratorPair {
    pub fn new(i: usize, j: usize, dim: usize) -> Result<Self> {
        if i < j && j < dim {
            Ok(Self { i, j })
        } else {
            Err(Error::InvalidGeneratorPair { i, j, dim })
        }
    }
}

/// All `dim(dim−1)/2` pairs in lexicographic order.
pub fn generator_pairs(dim: usize) -> Result<Vec<GeneratorPair>> {
    if dim < 2 {
        return Err(Error::GeneratorDim(dim));
    }
    Ok((0..dim)
        .flat_map(|i| (i + 1..dim).map(move |j| GeneratorPair { i, j }))
        .collect())
}

/// Overall normalization of the generators.
///
/// `Canonical` is the unnormalized `|i⟩⟨j| − |j⟩⟨i|`, the only choice under
/// which the quadratic sum reproduces `2(1 − Tr ρ²)`. `HalfNormalized`
/// divides each generator by √2 and exists to demonstrate that the
/// verification checks catch the wrong convention.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum GeneratorScale {
    #[default]
    Canonical,
    HalfNormalized,
}

impl GeneratorScale {
    /// Factor multiplying each `J_αβ = L_α ⊗ S_β`.
    pub fn factor<T: Real>(self) -> T {
        match self {
            GeneratorScale::Canonical => T::one(),
            GeneratorScale::HalfNormalized => T::lit(0.5),
        }
    }
}

#[inline]
fn four_term<T: Real>(
    x: &CMatrix<T>,
    y: &CMatrix<T>,
    (i, j): (usize, usize),
    (k, l): (usize, usize),
) -> Complex<T> {
    // grouped so that swapping x and y permutes operands of commutative ops only
    (x[(i, k)] * y[(j, l)] + x[(j, l)] * y[(i, k)])
        - (x[(i, l)] * y[(j, k)] + x[(j, k)] * y[(i, l)])
}

fn conj_unfoldings<T: Real>(
    psi: &PureState<T>,
    phi: &PureState<T>,
    kept: Party,
) -> Result<(CMatrix<T>, CMatrix<T>)> {
    psi.require_same_dims(phi)?;
    Ok((matricize(psi, kept)?.conj(), matricize(phi, kept)?.conj()))
}

/// `⟨ψ|J_αβ|φ*⟩` for the `γ|γ̄` split with `γ = kept`.
///
/// `alpha` indexes the kept party, `beta` the composite complement.
pub fn bilinear_form<T: Real>(
    psi: &PureState<T>,
    phi: &PureState<T>,
    kept: Party,
    alpha: GeneratorPair,
    beta: GeneratorPair,
) -> Result<Complex<T>> {
    let (x, y) = conj_unfoldings(psi, phi, kept)?;
    GeneratorPair::new(alpha.i, alpha.j, x.rows())?;
    GeneratorPair::new(beta.i, beta.j, x.cols())?;
    Ok(four_term(&x, &y, (alpha.i, alpha.j), (beta.i, beta.j)))
}

/// Every `(α, β, ⟨ψ|J_αβ|φ*⟩)` in iteration order.
pub fn bilinear_terms<T: Real>(
    psi: &PureState<T>,
    phi: &PureState<T>,
    kept: Party,
) -> Result<Vec<(GeneratorPair, GeneratorPair, Complex<T>)>> {
    let (x, y) = conj_unfoldings(psi, phi, kept)?;
    let alphas = generator_pairs(x.rows())?;
    let betas = generator_pairs(x.cols())?;
    let mut out = Vec::with_capacity(alphas.len() * betas.len());
    for a in &alphas {
        for b in &betas {
            out.push((*a, *b, four_term(&x, &y, (a.i, a.j), (b.i, b.j))));
        }
    }
    Ok(out)
}

/// Folds `f(|B_αβ|)` over all generator pairs in the fixed order.
fn fold_terms<T: Real>(x: &CMatrix<T>, y: &CMatrix<T>, f: impl Fn(T) -> T) -> T {
    let (rows, cols) = (x.rows(), x.cols());
    let mut acc = T::zero();
    for i in 0..rows {
        for j in i + 1..rows {
            for k in 0..cols {
                for l in k + 1..cols {
                    acc = acc + f(four_term(x, y, (i, j), (k, l)).norm());
                }
            }
        }
    }
    acc
}

/// `S_γ(ψ, φ) = Σ_αβ |⟨ψ|J_αβ|φ*⟩|`.
pub fn cross_sum<T: Real>(psi: &PureState<T>, phi: &PureState<T>, kept: Party) -> Result<T> {
    cross_sum_scaled(psi, phi, kept, GeneratorScale::Canonical)
}

pub fn cross_sum_scaled<T: Real>(
    psi: &PureState<T>,
    phi: &PureState<T>,
    kept: Party,
    scale: GeneratorScale,
) -> Result<T> {
    let (x, y) = conj_unfoldings(psi, phi, kept)?;
    Ok(scale.factor::<T>() * fold_terms(&x, &y, |v| v))
}

/// Generator-sum negativity `N_γ = S_γ(ψ, ψ)`.
pub fn negativity_so<T: Real>(state: &PureState<T>, kept: Party) -> Result<T> {
    cross_sum(state, state, kept)
}

/// `(Σ √λ_i)² − 1` from the Schmidt coefficients of `γ|γ̄`.
pub fn negativity_schmidt<T: Real>(state: &PureState<T>, kept: Party) -> Result<T> {
    Ok(schmidt_spectrum(state, kept)?.negativity())
}

/// `2 (N_A + N_B + N_C)`.
pub fn multipartite_negativity<T: Real>(state: &PureState<T>) -> Result<T> {
    Ok(T::lit(2.0) * bipartition_negativities(state)?.into_iter().sum::<T>())
}

/// `min(N_A, N_B, N_C)`.
pub fn gme_negativity<T: Real>(state: &PureState<T>) -> Result<T> {
    let [a, b, c] = bipartition_negativities(state)?;
    Ok(a.min(b).min(c))
}

pub fn bipartition_negativities<T: Real>(state: &PureState<T>) -> Result<[T; 3]> {
    state.require_tripartite()?;
    Ok([
        negativity_so(state, Party::A)?,
        negativity_so(state, Party::B)?,
        negativity_so(state, Party::C)?,
    ])
}

/// Both routes to the squared bipartite concurrence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConcurrenceSq<T> {
    /// `Σ_αβ |⟨ψ|J_αβ|ψ*⟩|²`.
    pub generator: T,
    /// `2 (1 − Tr ρ_γ²)`.
    pub purity: T,
}

impl<T: Real> ConcurrenceSq<T> {
    pub fn value(&self) -> T {
        self.purity
    }

    pub fn difference(&self) -> T {
        (self.generator - self.purity).abs()
    }
}

pub fn concurrence_sq<T: Real>(state: &PureState<T>, kept: Party) -> Result<ConcurrenceSq<T>> {
    let c = concurrence_sq_unchecked(state, kept, GeneratorScale::Canonical)?;
    if c.difference() > T::tol(CONCURRENCE_TOL) {
        return Err(Error::ConcurrenceMismatch {
            generator: c.generator.to_f64_lossy(),
            purity: c.purity.to_f64_lossy(),
        });
    }
    Ok(c)
}

/// Both concurrence routes, without the agreement check.
pub fn concurrence_sq_unchecked<T: Real>(
    state: &PureState<T>,
    kept: Party,
    scale: GeneratorScale,
) -> Result<ConcurrenceSq<T>> {
    let purity = T::lit(2.0) * (T::one() - reduced_density(state, kept)?.trace_sq());
    let (x, _) = conj_unfoldings(state, state, kept)?;
    let f = scale.factor::<T>();
    let generator = fold_terms(&x, &x, |v| (f * v) * (f * v));
    Ok(ConcurrenceSq { generator, purity })
}

/// `Σ_γ 2 (1 − Tr ρ_γ²)`.
pub fn multipartite_concurrence_sq<T: Real>(state: &PureState<T>) -> Result<T> {
    state.require_tripartite()?;
    Party::ALL
        .iter()
        .map(|&p| concurrence_sq(state, p).map(|c| c.value()))
        .sum()
}

/// `min_γ √(2 (1 − Tr ρ_γ²))`.
pub fn gme_concurrence<T: Real>(state: &PureState<T>) -> Result<T> {
    state.require_tripartite()?;
    let mut best = T::infinity();
    for p in Party::ALL {
        best = best.min(concurrence_sq(state, p)?.value().max(T::zero()).sqrt());
    }
    Ok(best)
}

/// `min_γ √(1 − Tr ρ_γ²)`, the variant without the factor 2 inside the root.
pub fn gme_concurrence_unscaled<T: Real>(state: &PureState<T>) -> Result<T> {
    Ok(gme_concurrence(state)? / T::lit(2.0).sqrt())
}

#[derive(Debug, Clone, PartialEq)]
pub struct Biseparability {
    /// Per bipartition A|BC, B|AC, C|AB: `N_γ ≤ tol`.
    pub separable: [bool; 3],
    /// Number of Schmidt coefficients above `tol`.
    pub schmidt_rank: [usize; 3],
    pub biseparable: bool,
}

pub fn is_biseparable<T: Real>(state: &PureState<T>, tol: T) -> Result<Biseparability> {
    state.require_normalized()?;
    let n = bipartition_negativities(state)?;
    let mut schmidt_rank = [0; 3];
    for p in Party::ALL {
        schmidt_rank[p.index()] = schmidt_spectrum(state, p)?.rank(tol);
    }
    let separable = n.map(|v| v <= tol);
    Ok(Biseparability {
        separable,
        schmidt_rank,
        biseparable: separable.iter().any(|&s| s),
    })
}

/// Every measure of a normalized tripartite state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeasureReport<T: Real> {
    #[serde(serialize_with = "sig_digits")]
    pub n_a: T,
    #[serde(serialize_with = "sig_digits")]
    pub n_b: T,
    #[serde(serialize_with = "sig_digits")]
    pub n_c: T,
    #[serde(serialize_with = "sig_digits")]
    pub n_multi: T,
    #[serde(serialize_with = "sig_digits")]
    pub n_gme: T,
    #[serde(serialize_with = "sig_digits")]
    pub c2_a: T,
    #[serde(serialize_with = "sig_digits")]
    pub c2_b: T,
    #[serde(serialize_with = "sig_digits")]
    pub c2_c: T,
    #[serde(serialize_with = "sig_digits")]
    pub c2_multi: T,
    #[serde(serialize_with = "sig_digits")]
    pub c_gme: T,
}

impl<T: Real> MeasureReport<T> {
    pub const KEYS: [&'static str; 10] = [
        "n_a", "n_b", "n_c", "n_multi", "n_gme", "c2_a", "c2_b", "c2_c", "c2_multi", "c_gme",
    ];

    pub fn values(&self) -> [T; 10] {
        [
            self.n_a,
            self.n_b,
            self.n_c,
            self.n_multi,
            self.n_gme,
            self.c2_a,
            self.c2_b,
            self.c2_c,
            self.c2_multi,
            self.c_gme,
        ]
    }
}

pub fn measure_report<T: Real>(state: &PureState<T>) -> Result<MeasureReport<T>> {
    state.require_tripartite()?;
    state.require_normalized()?;
    let [n_a, n_b, n_c] = bipartition_negativities(state)?;
    let c2 = [
        concurrence_sq(state, Party::A)?.value(),
        concurrence_sq(state, Party::B)?.value(),
        concurrence_sq(state, Party::C)?.value(),
    ];
    let c_gme = c2
        .iter()
        .map(|v| v.max(T::zero()).sqrt())
        .fold(T::infinity(), T::min);
    Ok(MeasureReport {
        n_a,
        n_b,
        n_c,
        n_multi: T::lit(2.0) * (n_a + n_b + n_c),
        n_gme: n_a.min(n_b).min(n_c),
        c2_a: c2[0],
        c2_b: c2[1],
        c2_c: c2[2],
        c2_multi: c2[0] + c2[1] + c2[2],
        c_gme,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::library::{ghz, haar_random, random_biseparable, w_state};
    use crate::oracle::negativity_pt_oracle;
    use crate::state::superpose;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    fn ket(dims: &[usize], idx: usize) -> PureState<f64> {
        PureState::basis(dims.to_vec(), idx).unwrap()
    }

    /// |0⟩_A ⊗ (|00⟩ + |11⟩)_BC / √2
    fn zero_bell() -> PureState<f64> {
        let h = 0.5f64.sqrt();
        let mut amps = vec![c(0.0, 0.0); 8];
        amps[0] = c(h, 0.0);
        amps[3] = c(h, 0.0);
        PureState::new(vec![2, 2, 2], amps).unwrap()
    }

    #[test]
    fn generator_pair_enumeration() {
        let p2 = generator_pairs(2).unwrap();
        assert_eq!(p2, vec![GeneratorPair { i: 0, j: 1 }]);
        let p3: Vec<_> = generator_pairs(3)
            .unwrap()
            .iter()
            .map(|g| (g.i, g.j))
            .collect();
        assert_eq!(p3, vec![(0, 1), (0, 2), (1, 2)]);
        assert_eq!(generator_pairs(4).unwrap().len(), 6);
        assert_eq!(generator_pairs(36).unwrap().len(), 630);
        assert_eq!(generator_pairs(1), Err(Error::GeneratorDim(1)));
        assert!(GeneratorPair::new(1, 1, 3).is_err());
        assert!(GeneratorPair::new(0, 3, 3).is_err());
    }

    #[test]
    fn bilinear_form_examples() {
        let g = ghz::<f64>(2).unwrap();
        let b = bilinear_form(
            &g,
            &g,
            Party::A,
            GeneratorPair { i: 0, j: 1 },
            GeneratorPair { i: 0, j: 3 },
        )
        .unwrap();
        assert_abs_diff_eq!(b.re, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(b.im, 0.0, epsilon = 1e-15);

        let e = ket(&[2, 2, 2], 0);
        for (_, _, v) in bilinear_terms(&e, &e, Party::B).unwrap() {
            assert_eq!(v, c(0.0, 0.0));
        }
        assert!(bilinear_form(
            &g,
            &g,
            Party::A,
            GeneratorPair { i: 0, j: 1 },
            GeneratorPair { i: 2, j: 4 }
        )
        .is_err());
        let g3 = ghz::<f64>(3).unwrap();
        assert!(matches!(
            cross_sum(&g, &g3, Party::A),
            Err(Error::DimsMismatch { .. })
        ));
    }

    #[test]
    fn bilinear_form_is_symmetric() {
        for seed in 0..10 {
            let a = haar_random::<f64>(&[2, 3, 2], seed).unwrap();
            let b = haar_random::<f64>(&[2, 3, 2], 1000 + seed).unwrap();
            for p in Party::ALL {
                let ab = bilinear_terms(&a, &b, p).unwrap();
                let ba = bilinear_terms(&b, &a, p).unwrap();
                for ((_, _, x), (_, _, y)) in ab.iter().zip(&ba) {
                    assert_abs_diff_eq!((x - y).norm(), 0.0, epsilon = 1e-15);
                }
                assert_eq!(cross_sum(&a, &b, p).unwrap(), cross_sum(&b, &a, p).unwrap());
            }
        }
    }

    #[test]
    fn cross_sum_examples() {
        let g = ghz::<f64>(2).unwrap();
        assert_abs_diff_eq!(cross_sum(&g, &g, Party::A).unwrap(), 1.0, epsilon = 1e-15);
        let nonzero = bilinear_terms(&g, &g, Party::A)
            .unwrap()
            .iter()
            .filter(|t| t.2.norm() > 1e-15)
            .count();
        assert_eq!(nonzero, 1);
        let e = ket(&[2, 2, 2], 0);
        for p in Party::ALL {
            assert_eq!(cross_sum(&e, &e, p).unwrap(), 0.0);
        }
        // W unfolds to [[0, a, a, 0], [a, 0, 0, 0]]: minors −a², −a², so 2·2/3
        let w = w_state::<f64>();
        assert_abs_diff_eq!(
            cross_sum(&w, &w, Party::A).unwrap(),
            4.0 / 3.0,
            epsilon = 1e-15
        );
    }

    #[test]
    fn negativity_examples() {
        let g = ghz::<f64>(2).unwrap();
        let w = w_state::<f64>();
        for p in Party::ALL {
            assert_abs_diff_eq!(negativity_so(&g, p).unwrap(), 1.0, epsilon = 1e-15);
            assert_abs_diff_eq!(negativity_schmidt(&g, p).unwrap(), 1.0, epsilon = 1e-12);
            assert_abs_diff_eq!(negativity_so(&w, p).unwrap(), 4.0 / 3.0, epsilon = 1e-15);
            assert_abs_diff_eq!(
                negativity_schmidt(&w, p).unwrap(),
                2.0 * 2f64.sqrt() / 3.0,
                epsilon = 1e-12
            );
        }
        let zb = zero_bell();
        assert_eq!(negativity_so(&zb, Party::A).unwrap(), 0.0);
        assert_abs_diff_eq!(negativity_so(&zb, Party::B).unwrap(), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(negativity_so(&zb, Party::C).unwrap(), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(
            negativity_schmidt(&ket(&[2, 2, 2], 0), Party::A).unwrap(),
            0.0,
            epsilon = 1e-15
        );

        // Σ_i |ii⟩ ⊗ |0⟩ / √3 on qutrits: λ = {1/3, 1/3, 1/3}
        let mut amps = vec![c(0.0, 0.0); 27];
        for i in 0..3 {
            amps[(i * 3 + i) * 3] = c(1.0 / 3f64.sqrt(), 0.0);
        }
        let s = PureState::new(vec![3, 3, 3], amps).unwrap();
        assert_abs_diff_eq!(
            negativity_schmidt(&s, Party::A).unwrap(),
            2.0,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(negativity_so(&s, Party::A).unwrap(), 2.0, epsilon = 1e-14);
    }

    #[test]
    fn multipartite_and_gme_negativity() {
        let g = ghz::<f64>(2).unwrap();
        let w = w_state::<f64>();
        assert_abs_diff_eq!(multipartite_negativity(&g).unwrap(), 6.0, epsilon = 1e-14);
        assert_abs_diff_eq!(multipartite_negativity(&w).unwrap(), 8.0, epsilon = 1e-14);
        assert_eq!(multipartite_negativity(&ket(&[2, 2, 2], 0)).unwrap(), 0.0);
        assert_abs_diff_eq!(gme_negativity(&g).unwrap(), 1.0, epsilon = 1e-15);
        assert_eq!(gme_negativity(&zero_bell()).unwrap(), 0.0);
        assert_abs_diff_eq!(gme_negativity(&w).unwrap(), 4.0 / 3.0, epsilon = 1e-15);
    }

    #[test]
    fn concurrence_examples() {
        let g = ghz::<f64>(2).unwrap();
        let w = w_state::<f64>();
        for p in Party::ALL {
            let cg = concurrence_sq(&g, p).unwrap();
            assert_abs_diff_eq!(cg.value(), 1.0, epsilon = 1e-14);
            assert_abs_diff_eq!(cg.generator, 1.0, epsilon = 1e-14);
            let cw = concurrence_sq(&w, p).unwrap();
            assert_abs_diff_eq!(cw.value(), 8.0 / 9.0, epsilon = 1e-14);
            assert_abs_diff_eq!(
                concurrence_sq(&ket(&[2, 2, 2], 5), p).unwrap().value(),
                0.0,
                epsilon = 1e-15
            );
        }
        assert_abs_diff_eq!(
            multipartite_concurrence_sq(&g).unwrap(),
            3.0,
            epsilon = 1e-14
        );
        assert_abs_diff_eq!(gme_concurrence(&g).unwrap(), 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(
            multipartite_concurrence_sq(&w).unwrap(),
            8.0 / 3.0,
            epsilon = 1e-14
        );
        assert_abs_diff_eq!(
            gme_concurrence(&w).unwrap(),
            2.0 * 2f64.sqrt() / 3.0,
            epsilon = 1e-14
        );
        assert_abs_diff_eq!(gme_concurrence(&zero_bell()).unwrap(), 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(
            gme_concurrence_unscaled(&g).unwrap(),
            0.5f64.sqrt(),
            epsilon = 1e-14
        );
    }

    #[test]
    fn half_normalized_generators_break_the_concurrence_identity() {
        let s = haar_random::<f64>(&[2, 2, 3], 9).unwrap();
        let c = concurrence_sq_unchecked(&s, Party::A, GeneratorScale::HalfNormalized).unwrap();
        assert_abs_diff_eq!(c.generator * 4.0, c.purity, epsilon = 1e-12);
        let n = cross_sum_scaled(&s, &s, Party::A, GeneratorScale::HalfNormalized).unwrap();
        assert_abs_diff_eq!(
            2.0 * n,
            negativity_so(&s, Party::A).unwrap(),
            epsilon = 1e-14
        );
    }

    #[test]
    fn biseparability_examples() {
        let e = ket(&[2, 2, 2], 0);
        let b = is_biseparable(&e, 1e-9).unwrap();
        assert_eq!(b.separable, [true, true, true]);
        assert_eq!(b.schmidt_rank, [1, 1, 1]);
        assert!(b.biseparable);

        let b = is_biseparable(&ghz::<f64>(2).unwrap(), 1e-9).unwrap();
        assert_eq!(b.separable, [false, false, false]);
        assert!(!b.biseparable);

        let b = is_biseparable(&zero_bell(), 1e-9).unwrap();
        assert_eq!(b.separable, [true, false, false]);
        assert_eq!(b.schmidt_rank, [1, 2, 2]);
        assert!(b.biseparable);
    }

    #[test]
    fn measure_report_examples() {
        let r = measure_report(&ghz::<f64>(2).unwrap()).unwrap();
        assert_abs_diff_eq!(r.n_multi, 6.0, epsilon = 1e-14);
        assert_abs_diff_eq!(r.n_gme, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(r.c_gme, 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(r.c2_multi, 3.0, epsilon = 1e-14);

        let r = measure_report(&w_state::<f64>()).unwrap();
        assert_abs_diff_eq!(r.n_multi, 8.0, epsilon = 1e-14);
        assert_eq!(r.n_gme, r.n_a.min(r.n_b).min(r.n_c));
        assert!((r.n_multi - 2.0 * (r.n_a + r.n_b + r.n_c)).abs() <= 1e-10);

        let r = measure_report(&ket(&[2, 2, 2], 0)).unwrap();
        assert!(r.values().iter().all(|&v| v.abs() < 1e-15));

        let unnorm = ket(&[2, 2, 2], 0).scaled(c(2.0, 0.0));
        assert!(matches!(
            measure_report(&unnorm),
            Err(Error::NotNormalized { .. })
        ));
    }

    #[test]
    fn separable_components_superpose_to_gme() {
        let h = 0.5f64.sqrt();
        let a = ket(&[2, 2, 2], 0);
        let b = ket(&[2, 2, 2], 7);
        assert_eq!(gme_negativity(&a).unwrap(), 0.0);
        assert_eq!(gme_negativity(&b).unwrap(), 0.0);
        let chi = superpose(c(h, 0.0), &a, c(h, 0.0), &b).unwrap();
        assert_abs_diff_eq!(gme_negativity(&chi).unwrap(), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn biseparable_and_haar_gme() {
        for seed in 0..100 {
            let kept = Party::ALL[seed as usize % 3];
            let s = random_biseparable::<f64>(kept, &[3, 2, 3], seed).unwrap();
            assert!(gme_negativity(&s).unwrap() <= 1e-10);
            let h = haar_random::<f64>(&[2, 2, 2], seed).unwrap();
            assert!(gme_negativity(&h).unwrap() > 1e-6);
        }
    }

    #[test]
    fn schmidt_route_matches_pt_oracle() {
        for seed in 0..20 {
            let s = haar_random::<f64>(&[3, 3, 2], seed).unwrap();
            for p in Party::ALL {
                let a = negativity_schmidt(&s, p).unwrap();
                let b = negativity_pt_oracle(&s, p).unwrap();
                assert_abs_diff_eq!(a, b, epsilon = 1e-9);
            }
        }
    }

    #[test]
    fn f32_agrees_with_f64() {
        let s64 = haar_random::<f64>(&[2, 3, 2], 77).unwrap();
        let s32 = haar_random::<f32>(&[2, 3, 2], 77).unwrap();
        let r64 = measure_report(&s64).unwrap();
        let r32 = measure_report(&s32).unwrap();
        for (a, b) in r64.values().iter().zip(r32.values()) {
            assert!((a - b as f64).abs() < 1e-4, "{a} vs {b}");
        }
    }
}
