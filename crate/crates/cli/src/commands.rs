use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use log::warn;
use num_complex::Complex64;
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use supneg::bounds::{
    bounds_report_with_terms, z_family_point, BoundsReport, CurveFit, SweepRow,
    REFERENCE_GME_CURVE, REFERENCE_MULTI_CURVE,
};
use supneg::io::{format_sig, json_number, read_state};
use supneg::measures::{concurrence_sq, gme_concurrence_unscaled, MeasureReport};
use supneg::oracle::{negativity_pt_oracle_capped, DEFAULT_MAX_DIM};
use supneg::{
    fit_z_curve, measure_report, negativity_schmidt, z_family, NamedState, Party, PureState64,
    SuperpositionSpec, ZFamilyParams,
};

use crate::config::{BoundsArgs, Format, MeasureArgs, SweepArgs};

/// Gate on `| |a1|² + |a2|² − 1 |` for coefficients typed on the command line.
pub const CLI_COEFFICIENT_TOL: f64 = 1e-4;

/// Loads `named:<spec>` or a state file, normalizing with a warning.
pub fn load_state(source: &str) -> Result<PureState64> {
    let state = match source.strip_prefix("named:") {
        Some(spec) => spec.parse::<NamedState>()?.build()?,
        None => read_state(Path::new(source))?,
    };
    normalize_with_warning(state, source)
}

fn normalize_with_warning(state: PureState64, label: &str) -> Result<PureState64> {
    if state.is_normalized() {
        return Ok(state);
    }
    warn!(
        "{label}: squared norm {} is not 1, normalizing",
        format_sig(state.norm_sq())
    );
    Ok(state.normalize()?.0)
}

pub fn write_output(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn csv_text(header: &[&str], rows: &[Vec<f64>]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(row.iter().map(|&v| format_sig(v)))?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

fn json_text(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON value serializes");
    s.push('\n');
    s
}

fn diagnostics(state: &PureState64) -> Result<Value> {
    let mut d = Map::new();
    for p in Party::ALL {
        let tag = p.to_string().to_ascii_lowercase();
        d.insert(
            format!("n_schmidt_{tag}"),
            json_number(negativity_schmidt(state, p)?),
        );
        match negativity_pt_oracle_capped(state, p, DEFAULT_MAX_DIM) {
            Ok(v) => d.insert(format!("n_pt_{tag}"), json_number(v)),
            Err(_) => d.insert(format!("n_pt_{tag}"), Value::Null),
        };
        let c = concurrence_sq(state, p)?;
        d.insert(format!("c2_generator_{tag}"), json_number(c.generator));
        d.insert(format!("c2_purity_{tag}"), json_number(c.purity));
    }
    d.insert(
        "c_gme_unscaled".into(),
        json_number(gme_concurrence_unscaled(state)?),
    );
    Ok(Value::Object(d))
}

pub fn measure_state(
    state: &PureState64,
    format: Format,
    with_diagnostics: bool,
) -> Result<String> {
    let report = measure_report(state)?;
    match format {
        Format::Json => {
            let mut v = serde_json::to_value(report)?;
            if with_diagnostics {
                v.as_object_mut()
                    .expect("report is an object")
                    .insert("diagnostics".into(), diagnostics(state)?);
            }
            Ok(json_text(&v))
        }
        Format::Csv => csv_text(&MeasureReport::<f64>::KEYS, &[report.values().to_vec()]),
    }
}

pub fn run_measure(args: &MeasureArgs) -> Result<String> {
    let state = match (&args.named, &args.file) {
        (Some(name), _) => normalize_with_warning(name.parse::<NamedState>()?.build()?, name)?,
        (None, Some(path)) => {
            let s = read_state(path)?;
            normalize_with_warning(s, &path.display().to_string())?
        }
        (None, None) => bail!("measure needs --named or --file"),
    };
    measure_state(&state, args.format, args.diagnostics)
}

/// Builds the superposition from the command line, applying the coefficient gate.
pub fn bounds_spec(args: &BoundsArgs) -> Result<SuperpositionSpec<f64>> {
    if let Some(p) = args.z {
        return Ok(z_family(ZFamilyParams::new(p, args.phi)?));
    }
    let (Some(s1), Some(s2), Some(a1), Some(a2)) = (&args.s1, &args.s2, args.a1, args.a2) else {
        bail!("bounds needs --s1, --s2, --a1 and --a2 (or --z)");
    };
    let psi1 = load_state(s1)?;
    let psi2 = load_state(s2)?;
    if args.no_coeff_check {
        return Ok(SuperpositionSpec::new_unchecked(a1, psi1, a2, psi2)?);
    }
    let sum = a1.norm_sqr() + a2.norm_sqr();
    if (sum - 1.0).abs() > CLI_COEFFICIENT_TOL {
        bail!(
            "|a1|^2 + |a2|^2 = {} is not 1 (pass --no-coeff-check to override)",
            format_sig(sum)
        );
    }
    let (a1, a2) = if (sum - 1.0).abs() > 1e-12 {
        warn!(
            "rescaling coefficients by 1/sqrt({}) to unit norm",
            format_sig(sum)
        );
        let k = Complex64::new(1.0 / sum.sqrt(), 0.0);
        (a1 * k, a2 * k)
    } else {
        (a1, a2)
    };
    Ok(SuperpositionSpec::new(a1, psi1, a2, psi2)?)
}

const BOUNDS_KEYS: [&str; 9] = [
    "norm_sq",
    "n_exact",
    "ngme_exact",
    "t1_upper",
    "t1_lower_raw",
    "t1_lower",
    "t2_upper",
    "t2_lower_raw",
    "t2_lower",
];

fn bounds_values(r: &BoundsReport<f64>) -> Vec<f64> {
    vec![
        r.norm_sq,
        r.n_exact,
        r.ngme_exact,
        r.t1_upper,
        r.t1_lower_raw,
        r.t1_lower,
        r.t2_upper,
        r.t2_lower_raw,
        r.t2_lower,
    ]
}

pub fn run_bounds(args: &BoundsArgs) -> Result<String> {
    let spec = bounds_spec(args)?;
    let (report, table) = bounds_report_with_terms(&spec)?;
    match args.format {
        Format::Json => {
            let mut v = serde_json::to_value(report)?;
            if args.dump_terms {
                let mut t = serde_json::to_value(&table)?;
                // raw per-bipartition sums at full precision too
                let obj = t.as_object_mut().expect("table is an object");
                for (key, vals) in [("s11", table.s11), ("s22", table.s22), ("s12", table.s12)] {
                    obj.insert(
                        key.into(),
                        Value::Array(vals.iter().map(|&x| json_number(x)).collect()),
                    );
                }
                v.as_object_mut()
                    .expect("report is an object")
                    .insert("cross_terms".into(), t);
            }
            Ok(json_text(&v))
        }
        Format::Csv => csv_text(&BOUNDS_KEYS, &[bounds_values(&report)]),
    }
}

/// `steps` evenly spaced points from `start` to `stop`, endpoints included.
pub fn grid(start: f64, stop: f64, steps: usize) -> Result<Vec<f64>> {
    match steps {
        0 => bail!(supneg::Error::EmptyGrid),
        1 => Ok(vec![start]),
        n => Ok((0..n)
            .map(|i| {
                let t = i as f64 / (n - 1) as f64;
                start + (stop - start) * t
            })
            .collect()),
    }
}

pub struct SweepOutput {
    pub csv: String,
    pub sidecar: String,
    pub rows: Vec<SweepRow<f64>>,
    pub gme_fit: CurveFit,
    pub multi_fit: CurveFit,
}

fn fit_json(fit: &CurveFit, reference: [f64; 3]) -> Value {
    let fitted = [fit.c1, fit.c2, fit.c3];
    let table: Vec<Value> = ["c1", "c2", "c3"]
        .iter()
        .zip(fitted.iter().zip(reference))
        .map(|(name, (&f, r))| {
            json!({
                "constant": name,
                "fitted": json_number(f),
                "reference": json_number(r),
                "reference_over_fitted": json_number(r / f),
            })
        })
        .collect();
    json!({
        "c1": json_number(fit.c1),
        "c2": json_number(fit.c2),
        "c3": json_number(fit.c3),
        "max_residual": json_number(fit.max_residual),
        "reference_comparison": table,
    })
}

pub fn sweep(p_grid: &[f64], phi: f64) -> Result<SweepOutput> {
    if p_grid.is_empty() {
        bail!(supneg::Error::EmptyGrid);
    }
    let rows = p_grid
        .par_iter()
        .map(|&p| z_family_point(p, phi))
        .collect::<supneg::Result<Vec<_>>>()?;
    let csv = csv_text(
        &SweepRow::<f64>::COLUMNS,
        &rows.iter().map(|r| r.values().to_vec()).collect::<Vec<_>>(),
    )?;
    let ps: Vec<f64> = rows.iter().map(|r| r.p).collect();
    let gme: Vec<f64> = rows.iter().map(|r| r.report.ngme_exact).collect();
    let multi: Vec<f64> = rows.iter().map(|r| r.report.n_exact).collect();
    let (gme_fit, multi_fit) = if rows.len() >= 3 {
        (fit_z_curve(&ps, &gme)?, fit_z_curve(&ps, &multi)?)
    } else {
        bail!("the curve fit needs at least three grid points");
    };
    let max_gap = rows
        .iter()
        .map(|r| r.report.t2_gap())
        .fold(f64::NEG_INFINITY, f64::max);
    let min_gap = rows
        .iter()
        .map(|r| r.report.t2_gap())
        .fold(f64::INFINITY, f64::min);
    let sidecar = json!({
        "model": "c1*(1-p) + c2*sqrt(p*(1-p)) + c3*p",
        "phi": json_number(phi),
        "points": rows.len(),
        "max_t2_gap": json_number(max_gap),
        "min_t2_gap": json_number(min_gap),
        "ngme_exact": fit_json(&gme_fit, REFERENCE_GME_CURVE),
        "n_exact": fit_json(&multi_fit, REFERENCE_MULTI_CURVE),
    });
    Ok(SweepOutput {
        csv,
        sidecar: json_text(&sidecar),
        rows,
        gme_fit,
        multi_fit,
    })
}

pub fn run_sweep(args: &SweepArgs) -> Result<SweepOutput> {
    sweep(&grid(args.start, args.stop, args.steps)?, args.phi)
}

pub fn sidecar_path(args: &SweepArgs) -> Option<PathBuf> {
    args.fit_output.clone().or_else(|| {
        args.output.as_ref().map(|p| {
            let mut s = p.as_os_str().to_owned();
            s.push(".fit.json");
            PathBuf::from(s)
        })
    })
}
