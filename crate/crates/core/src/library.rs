//! Named states and seeded samplers.
//!
//! Random states come from a ChaCha8 stream seeded with
//! `ChaCha8Rng::seed_from_u64(seed)`; each amplitude takes two consecutive
//! standard normal draws (real part, then imaginary part, Ziggurat method)
//! before normalization. The stream is platform independent, so a seed
//! pins a state bit for bit.

use std::str::FromStr;

use num_complex::Complex;
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::bounds::SuperpositionSpec;
use crate::error::{Error, Result};
use crate::state::{superpose, Party, PureState};
use crate::Real;

/// `Σ_i |iii⟩ / √d`.
pub fn ghz<T: Real>(d: usize) -> Result<PureState<T>> {
    if d < 2 {
        return Err(Error::InvalidDims(vec![d; 3]));
    }
    let amp = T::one() / T::lit(d as f64).sqrt();
    let mut amps = vec![Complex::zero(); d * d * d];
    for i in 0..d {
        amps[(i * d + i) * d + i] = Complex::new(amp, T::zero());
    }
    PureState::new(vec![d, d, d], amps)
}

/// `(|001⟩ + |010⟩ + |100⟩) / √3`.
pub fn w_state<T: Real>() -> PureState<T> {
    let amp = T::one() / T::lit(3.0).sqrt();
    let mut amps = vec![Complex::zero(); 8];
    for idx in [1, 2, 4] {
        amps[idx] = Complex::new(amp, T::zero());
    }
    PureState::new(vec![2, 2, 2], amps).expect("W state is well formed")
}

/// Parameters of `√p |GHZ⟩ + e^{iφ} √(1−p) |W⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZFamilyParams<T> {
    p: T,
    phi: T,
}

impl<T: Real> ZFamilyParams<T> {
    pub fn new(p: T, phi: T) -> Result<Self> {
        if !(p >= T::zero() && p <= T::one()) {
            return Err(Error::WeightOutOfRange(p.to_f64_lossy()));
        }
        Ok(Self { p, phi })
    }

    pub fn p(&self) -> T {
        self.p
    }

    pub fn phi(&self) -> T {
        self.phi
    }
}

/// The GHZ/W superposition as a two-component spec. GHZ ⊥ W, so `‖χ‖² = 1`.
pub fn z_family<T: Real>(params: ZFamilyParams<T>) -> SuperpositionSpec<T> {
    let a1 = Complex::new(params.p.sqrt(), T::zero());
    let a2 = Complex::from_polar((T::one() - params.p).sqrt(), params.phi);
    SuperpositionSpec::new(a1, ghz(2).expect("d = 2"), a2, w_state())
        .expect("z-family coefficients are unit norm")
}

fn gaussian_amplitudes<T: Real>(n: usize, rng: &mut ChaCha8Rng) -> Vec<Complex<T>> {
    (0..n)
        .map(|_| {
            let re: f64 = StandardNormal.sample(rng);
            let im: f64 = StandardNormal.sample(rng);
            Complex::new(T::lit(re), T::lit(im))
        })
        .collect()
}

/// Haar-random pure state: i.i.d. complex Gaussians, normalized.
pub fn haar_random<T: Real>(dims: &[usize], seed: u64) -> Result<PureState<T>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n: usize = dims.iter().product();
    let raw = PureState::new(dims.to_vec(), gaussian_amplitudes(n, &mut rng))?;
    Ok(raw.normalize()?.0)
}

/// A Haar state on party `kept` tensored with a Haar state on the other two.
pub fn random_biseparable<T: Real>(kept: Party, dims: &[usize], seed: u64) -> Result<PureState<T>> {
    if dims.len() != 3 {
        return Err(Error::NotTripartite(dims.len()));
    }
    if dims.iter().any(|&d| d < 2) {
        return Err(Error::InvalidDims(dims.to_vec()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let [p, q] = kept.complement();
    let d_kept = dims[kept.index()];
    let (dp, dq) = (dims[p.index()], dims[q.index()]);
    let local: Vec<Complex<T>> = gaussian_amplitudes(d_kept, &mut rng);
    let rest: Vec<Complex<T>> = gaussian_amplitudes(dp * dq, &mut rng);

    let mut amps = vec![Complex::zero(); d_kept * dp * dq];
    let mut digits = [0usize; 3];
    for (flat, slot) in amps.iter_mut().enumerate() {
        digits[2] = flat % dims[2];
        digits[1] = (flat / dims[2]) % dims[1];
        digits[0] = flat / (dims[2] * dims[1]);
        let k = digits[kept.index()];
        let r = digits[p.index()] * dq + digits[q.index()];
        *slot = local[k] * rest[r];
    }
    Ok(PureState::new(dims.to_vec(), amps)?.normalize()?.0)
}

/// A state named on the command line: `ghz`, `ghz:d=3`, `w`, `z:p=0.3,phi=0.0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NamedState {
    Ghz { d: usize },
    W,
    Z { p: f64, phi: f64 },
}

impl NamedState {
    pub fn build<T: Real>(&self) -> Result<PureState<T>> {
        match *self {
            NamedState::Ghz { d } => ghz(d),
            NamedState::W => Ok(w_state()),
            NamedState::Z { p, phi } => {
                let spec = z_family(ZFamilyParams::new(T::lit(p), T::lit(phi))?);
                superpose(spec.a1, &spec.psi1, spec.a2, &spec.psi2)
            }
        }
    }
}

impl FromStr for NamedState {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::NamedState(s.to_string());
        let s_trim = s.trim();
        let (name, args) = match s_trim.split_once(':') {
            Some((n, a)) => (n, Some(a)),
            None => (s_trim, None),
        };
        let mut kv = Vec::new();
        if let Some(args) = args {
            for part in args.split(',') {
                let (k, v) = part.split_once('=').ok_or_else(bad)?;
                kv.push((k.trim().to_ascii_lowercase(), v.trim()));
            }
        }
        match name.to_ascii_lowercase().as_str() {
            "ghz" => {
                let mut d = 2;
                for (k, v) in &kv {
                    match k.as_str() {
                        "d" => d = v.parse().map_err(|_| bad())?,
                        _ => return Err(bad()),
                    }
                }
                if d < 2 {
                    return Err(bad());
                }
                Ok(NamedState::Ghz { d })
            }
            "w" if kv.is_empty() => Ok(NamedState::W),
            "z" => {
                let (mut p, mut phi) = (None, 0.0);
                for (k, v) in &kv {
                    match k.as_str() {
                        "p" => p = Some(v.parse::<f64>().map_err(|_| bad())?),
                        "phi" => phi = v.parse().map_err(|_| bad())?,
                        _ => return Err(bad()),
                    }
                }
                let p = p.ok_or_else(bad)?;
                if !(0.0..=1.0).contains(&p) {
                    return Err(Error::WeightOutOfRange(p));
                }
                Ok(NamedState::Z { p, phi })
            }
            _ => Err(bad()),
        }
    }
}
