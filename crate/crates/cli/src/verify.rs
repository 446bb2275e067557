use std::collections::BTreeMap;

use anyhow::Result;
use log::warn;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use supneg::io::{format_sig, json_number, sig_digits, state_to_json};
use supneg::measures::{concurrence_sq_unchecked, cross_sum_scaled};
use supneg::state::superpose_unchecked;
use supneg::{
    bounds_report, gme_negativity, haar_random, min_combine_lower, min_combine_upper,
    negativity_minors, negativity_pt_oracle, negativity_schmidt, random_biseparable,
    GeneratorScale, Party, PureState64, SuperpositionSpec,
};

use crate::config::{ScaleArg, VerifyArgs};

/// Min-combination triples drawn per sample.
pub const TRIPLES_PER_SAMPLE: usize = 100;
/// Haar states must clear this GME negativity.
pub const GME_POSITIVE_FLOOR: f64 = 1e-6;

// Independent streams per sample: seed ^ index, with a lane tag in the top bits.
const LANE_SECOND: u64 = 1 << 60;
const LANE_BISEP: u64 = 2 << 60;
const LANE_COEFF: u64 = 3 << 60;
const LANE_SCHMIDT: u64 = 4 << 60;
const LANE_LEMMA: u64 = 5 << 60;

pub const CHECKS: [&str; 12] = [
    "schmidt_vs_pt",
    "so_vs_minors",
    "so_dominates_pt",
    "so_schmidt_form",
    "concurrence_identity",
    "theorem1_sandwich",
    "theorem2_sandwich",
    "lemma_p1",
    "lemma_p2",
    "biseparable_gme_zero",
    "haar_gme_positive",
    "degenerate_superposition",
];

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CheckSummary {
    pub samples: usize,
    #[serde(serialize_with = "sig_digits")]
    pub max_violation: f64,
    pub pass: bool,
}

#[derive(Debug)]
pub struct VerifyOutput {
    pub summary: BTreeMap<&'static str, CheckSummary>,
    /// One replay record per failing (check, sample).
    pub failures: Vec<Value>,
}

impl VerifyOutput {
    pub fn pass(&self) -> bool {
        self.summary.values().all(|c| c.pass)
    }

    pub fn summary_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.summary).expect("summary serializes");
        s.push('\n');
        s
    }
}

struct Sample {
    index: usize,
    seed: u64,
    dims: [usize; 3],
    violations: Vec<(&'static str, f64)>,
    // state inputs kept for replay when something fails
    inputs: Value,
}

pub fn sample_seed(seed: u64, index: usize) -> u64 {
    seed ^ index as u64
}

fn scale_of(arg: ScaleArg) -> GeneratorScale {
    match arg {
        ScaleArg::Canonical => GeneratorScale::Canonical,
        ScaleArg::HalfNormalized => GeneratorScale::HalfNormalized,
    }
}

fn unit_coefficients(rng: &mut ChaCha8Rng) -> (Complex64, Complex64) {
    let theta = rng.gen::<f64>() * std::f64::consts::FRAC_PI_2;
    let a = rng.gen::<f64>() * std::f64::consts::TAU;
    let b = rng.gen::<f64>() * std::f64::consts::TAU;
    (
        Complex64::from_polar(theta.cos(), a),
        Complex64::from_polar(theta.sin(), b),
    )
}

/// `Σ_k c_k |kkk⟩` with random complex `c_k`: every unfolding is Schmidt-diagonal.
fn schmidt_form(d: usize, seed: u64) -> Result<PureState64> {
    let weights = haar_random::<f64>(&[d, 2, 2], seed)?;
    let mut amps = vec![Complex64::new(0.0, 0.0); d * d * d];
    for k in 0..d {
        amps[k * d * d + k * d + k] = weights.amplitudes()[4 * k];
    }
    Ok(PureState64::new(vec![d; 3], amps)?.normalize()?.0)
}

fn positive_triple(rng: &mut ChaCha8Rng) -> [f64; 3] {
    [0.0; 3].map(|_| rng.gen_range(1e-3..10.0))
}

fn lemma_violations(seed: u64) -> Result<(f64, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut p1, mut p2) = (0.0f64, 0.0f64);
    for _ in 0..TRIPLES_PER_SAMPLE {
        let (b, c, d) = (
            positive_triple(&mut rng),
            positive_triple(&mut rng),
            positive_triple(&mut rng),
        );
        let min = |v: [f64; 3]| v[0].min(v[1]).min(v[2]);
        let max = |v: [f64; 3]| v[0].max(v[1]).max(v[2]);
        let lhs_up = min([0, 1, 2].map(|k| b[k] + c[k] + d[k]));
        let lhs_lo = min([0, 1, 2].map(|k| b[k] - c[k] - d[k]));
        if !min_combine_upper(b, c, d)? {
            p1 = p1.max(lhs_up - (min(b) + max(c) + max(d)));
        }
        if !min_combine_lower(b, c, d)? {
            p2 = p2.max((min(b) - max(c) - max(d)) - lhs_lo);
        }
    }
    Ok((p1, p2))
}

fn run_sample(index: usize, args: &VerifyArgs) -> Result<Sample> {
    let scale = scale_of(args.generator_scale);
    let d = args.dims[index % args.dims.len()];
    let dims = [d; 3];
    let seed = sample_seed(args.seed, index);
    let psi = haar_random::<f64>(&dims, seed)?;
    let psi2 = haar_random::<f64>(&dims, seed ^ LANE_SECOND)?;
    let kept = Party::ALL[index % 3];
    let bisep = random_biseparable::<f64>(kept, &dims, seed ^ LANE_BISEP)?;
    let diag = schmidt_form(d, seed ^ LANE_SCHMIDT)?;
    let (a1, a2) = unit_coefficients(&mut ChaCha8Rng::seed_from_u64(seed ^ LANE_COEFF));

    let mut v: BTreeMap<&'static str, f64> = BTreeMap::new();
    let mut bump = |name: &'static str, x: f64| {
        let e = v.entry(name).or_insert(0.0);
        *e = e.max(x);
    };
    for p in Party::ALL {
        let so = cross_sum_scaled(&psi, &psi, p, scale)?;
        let pt = negativity_pt_oracle(&psi, p)?;
        bump("schmidt_vs_pt", (negativity_schmidt(&psi, p)? - pt).abs());
        bump("so_vs_minors", (so - negativity_minors(&psi, p)?).abs());
        bump("so_dominates_pt", (pt - so).max(0.0));
        let so_diag = cross_sum_scaled(&diag, &diag, p, scale)?;
        bump(
            "so_schmidt_form",
            (so_diag - negativity_pt_oracle(&diag, p)?).abs(),
        );
        bump(
            "concurrence_identity",
            concurrence_sq_unchecked(&psi, p, scale)?.difference(),
        );
    }
    let spec = SuperpositionSpec::new(a1, psi.clone(), a2, psi2.clone())?;
    let r = bounds_report(&spec)?;
    bump("theorem1_sandwich", r.t1().violation(r.n_exact));
    bump("theorem2_sandwich", r.t2().violation(r.ngme_exact));
    let (p1, p2) = lemma_violations(seed ^ LANE_LEMMA)?;
    bump("lemma_p1", p1);
    bump("lemma_p2", p2);
    bump("biseparable_gme_zero", gme_negativity(&bisep)?);
    bump(
        "haar_gme_positive",
        (GME_POSITIVE_FLOOR - gme_negativity(&psi)?).max(0.0),
    );

    let state_value = |s: &PureState64| -> Value {
        serde_json::from_str(&state_to_json(s)).expect("state JSON parses")
    };
    let inputs = json!({
        "psi": state_value(&psi),
        "psi2": state_value(&psi2),
        "a1": complex_text(a1),
        "a2": complex_text(a2),
        "biseparable_kept": kept.to_string(),
        "biseparable": state_value(&bisep),
        "schmidt_form": state_value(&diag),
    });
    Ok(Sample {
        index,
        seed,
        dims,
        violations: v.into_iter().collect(),
        inputs,
    })
}

/// `re±imi`, readable back by `--a1`/`--a2`.
pub fn complex_text(c: Complex64) -> String {
    let sign = if c.im.is_sign_negative() { "" } else { "+" };
    format!("{}{sign}{}i", format_sig(c.re), format_sig(c.im))
}

/// `a|ψ⟩ − a|ψ⟩` must be rejected as a zero vector, not normalized.
fn degenerate_check(args: &VerifyArgs) -> Result<f64> {
    let d = args.dims[0];
    let psi = haar_random::<f64>(&[d; 3], args.seed)?;
    let a = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let chi = superpose_unchecked(a, &psi, -a, &psi)?;
    match chi.normalize() {
        Err(supneg::Error::ZeroNorm { norm }) => {
            warn!(
                "degenerate superposition a2 = -a1: norm {} below the zero-norm threshold",
                format_sig(norm)
            );
            Ok(0.0)
        }
        Err(e) => Err(e.into()),
        Ok(_) => Ok(1.0),
    }
}

pub fn run_verify(args: &VerifyArgs) -> Result<VerifyOutput> {
    anyhow::ensure!(args.samples >= 1, "--samples must be at least 1");
    anyhow::ensure!(
        !args.dims.is_empty(),
        "--dims must list at least one dimension"
    );
    anyhow::ensure!(
        args.dims.iter().all(|&d| d >= 2),
        "local dimensions must be at least 2"
    );

    let samples = (0..args.samples)
        .into_par_iter()
        .map(|i| run_sample(i, args))
        .collect::<Result<Vec<_>>>()?;
    let degenerate = degenerate_check(args)?;

    let mut summary: BTreeMap<&'static str, CheckSummary> = BTreeMap::new();
    let mut failures = Vec::new();
    for s in &samples {
        for &(name, x) in &s.violations {
            let e = summary.entry(name).or_insert(CheckSummary {
                samples: 0,
                max_violation: 0.0,
                pass: true,
            });
            e.samples += 1;
            e.max_violation = e.max_violation.max(x);
            if x > args.tol {
                e.pass = false;
                failures.push(json!({
                    "check": name,
                    "sample": s.index,
                    "seed": s.seed,
                    "dims": s.dims,
                    "violation": json_number(x),
                    "inputs": s.inputs,
                }));
            }
        }
    }
    summary.insert(
        "degenerate_superposition",
        CheckSummary {
            samples: 1,
            max_violation: degenerate,
            pass: degenerate == 0.0,
        },
    );
    if degenerate != 0.0 {
        let dims = [args.dims[0]; 3];
        failures
            .push(json!({"check": "degenerate_superposition", "seed": args.seed, "dims": dims}));
    }
    Ok(VerifyOutput { summary, failures })
}
