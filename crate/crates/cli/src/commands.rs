use std::path::Path;

use dyadic_core::dyadic::{
    conditional_expectation, haar_forward_2d, haar_inverse_2d, Depth, GenerationIndex, GridFunction2D, HaarSpectrum2D,
};
use dyadic_core::hilbert::{analytic_hilbert_step, mc_hilbert, McConfig, StepFunction1D};
use dyadic_core::linop::{assemble, assemble_grid, operator_norm, DenseOperator};
use dyadic_core::norms::{
    bmo_d_norm_sq, bmo_d_norm_sq_bruteforce, bmo_rect_norm_sq, lmo_beta_char_norm, lmo_char_norm, lmo_d_norm,
    lmo_directional_norm,
};
use dyadic_core::paraproduct::{nine_part_apply, paraproduct as apply_paraproduct, sigma_k, NinePartTag, Signature};
use dyadic_core::shifts::{
    commutator_part_norm_report, double_commutator_apply, iterated_commutator_apply, shift_operator, AmbientEmbedding,
};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::io::{emit, FunctionFile};
use crate::*;

fn load_grid(path: &Path) -> Result<GridFunction2D, CliError> {
    FunctionFile::load(path)?.to_grid()
}

/// hh part of the Haar spectrum of the function in `path`.
fn load_mean_zero(path: &Path) -> Result<HaarSpectrum2D, CliError> {
    Ok(haar_forward_2d(&load_grid(path)?).hh_part())
}

fn emit_json(out: &Output, value: Value) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(&value).expect("json value serializes") + "\n";
    emit(out.output.as_deref(), &text)
}

fn emit_file(out: &Output, file: FunctionFile) -> Result<(), CliError> {
    emit(out.output.as_deref(), &file.to_json())
}

fn path_str(p: &Path) -> String {
    p.display().to_string()
}

pub fn haar(a: &HaarArgs) -> Result<(), CliError> {
    let file = FunctionFile::load(&a.input)?;
    let out = if a.forward {
        FunctionFile::from_spectrum(&haar_forward_2d(&file.to_grid()?))
    } else {
        FunctionFile::from_grid(&haar_inverse_2d(&file.to_spectrum()?))
    };
    emit_file(&a.out, out)
}

pub fn bmo(a: &BmoArgs) -> Result<(), CliError> {
    let phi = load_mean_zero(&a.input)?;
    let config =
        json!({ "command": "bmo", "input": path_str(&a.input), "method": format!("{:?}", a.method).to_lowercase() });
    let value = match a.method {
        BmoMethod::Exact => {
            let sol = bmo_d_norm_sq(&phi, None)?;
            let cells: Vec<[usize; 2]> = sol.omega.cell_list().into_iter().map(|(s, t)| [s, t]).collect();
            json!({ "norm_sq": sol.norm_sq, "omega_cells": cells, "config": config })
        }
        BmoMethod::Brute => json!({ "norm_sq": bmo_d_norm_sq_bruteforce(&phi, None)?, "config": config }),
        BmoMethod::Rect => json!({ "norm_sq": bmo_rect_norm_sq(&phi), "config": config }),
    };
    emit_json(&a.out, value)
}

pub fn lmo(a: &LmoArgs) -> Result<(), CliError> {
    let phi = load_mean_zero(&a.input)?;
    let mut config =
        json!({ "command": "lmo", "input": path_str(&a.input), "method": format!("{:?}", a.method).to_lowercase() });
    let value = match a.method {
        LmoMethod::Def => lmo_d_norm(&phi)?,
        LmoMethod::Char => lmo_char_norm(&phi)?,
        LmoMethod::Dir => {
            let axis = a.axis.ok_or_else(|| CliError::Validation("--method dir needs --axis".into()))?;
            config["axis"] = json!(axis);
            lmo_directional_norm(&phi, axis)?
        }
        LmoMethod::Beta => {
            let beta = a.beta.ok_or_else(|| CliError::Validation("--method beta needs --beta".into()))?;
            config["beta"] = json!(beta);
            lmo_beta_char_norm(&phi, beta)?
        }
    };
    emit_json(&a.out, json!({ "value": value, "config": config }))
}

pub fn paraproduct(a: &ParaproductArgs) -> Result<(), CliError> {
    let phi = haar_forward_2d(&load_grid(&a.symbol)?);
    let f = load_grid(&a.input)?;
    let out = apply_paraproduct(Signature::from_beta(a.beta), &phi, &f)?;
    emit_file(&a.out, FunctionFile::from_grid(&out))
}

fn named_operator(a: &OpnormArgs) -> Result<(Depth, DenseOperator), CliError> {
    let name = a.operator.to_ascii_lowercase();
    if let Some(axis) = name.strip_prefix("shift") {
        let axis: u8 = axis.parse().map_err(|_| CliError::Validation(format!("unknown operator {:?}", a.operator)))?;
        let [s, t] = a.depth.ok_or_else(|| CliError::Validation("shifts need --depth".into()))?;
        let depth = Depth::new(s, t)?;
        return Ok((depth, shift_operator(depth, axis)?));
    }
    let symbol = a.symbol.as_deref().ok_or_else(|| CliError::Validation(format!("{} needs --symbol", a.operator)))?;
    let phi = load_grid(symbol)?;
    let depth = phi.depth();
    if a.depth.is_some_and(|d| d != [depth.s, depth.t]) {
        return Err(CliError::Validation("--depth disagrees with the symbol file".into()));
    }
    let phi_c = haar_forward_2d(&phi);
    let para = |beta: [u8; 2]| assemble_grid(depth, |f| apply_paraproduct(Signature::from_beta(beta), &phi_c, f));
    let op = match name.as_str() {
        "multiply" => assemble_grid(depth, |f| phi.pointwise_mul(f))?,
        "pi" => para([0, 0])?,
        "delta" => para([1, 1])?,
        "pi01" => para([0, 1])?,
        "pi10" => para([1, 0])?,
        "commutator" => {
            // functions of the source depth, acted on at the ambient depth
            let emb = AmbientEmbedding::new(depth)?;
            let phi_a = emb.embed_grid(&phi)?;
            let k = GenerationIndex::new(depth.s, depth.t);
            let op = assemble(emb.ambient, |c| {
                let b = haar_inverse_2d(&conditional_expectation(c, k));
                Ok(haar_forward_2d(&double_commutator_apply(|g| phi_a.pointwise_mul(g), &b)?))
            })?;
            return Ok((emb.ambient, op));
        }
        _ => {
            let tag = NinePartTag::from_name(&a.operator)
                .ok_or_else(|| CliError::Validation(format!("unknown operator {:?}", a.operator)))?;
            assemble_grid(depth, |f| nine_part_apply(tag, &phi_c, f))?
        }
    };
    Ok((depth, op))
}

pub fn opnorm(a: &OpnormArgs) -> Result<(), CliError> {
    let (depth, op) = named_operator(a)?;
    let norm = operator_norm(&op)?;
    let (s, t) = depth.as_tuple();
    let config = json!({
        "command": "opnorm",
        "operator": a.operator,
        "symbol": a.symbol.as_deref().map(path_str),
    });
    emit_json(&a.out, json!({ "norm": norm, "depth": [s, t], "dim": op.dim(), "config": config }))
}

pub fn sigma(a: &SigmaArgs) -> Result<(), CliError> {
    let b = load_mean_zero(&a.input)?;
    let out = sigma_k(&b, GenerationIndex::new(a.k[0], a.k[1]))?;
    emit_file(&a.out, FunctionFile::from_grid(&haar_inverse_2d(&out)))
}

pub fn commutator(a: &CommutatorArgs) -> Result<(), CliError> {
    let phi = load_grid(&a.symbol)?;
    let b = load_grid(&a.input)?;
    match a.mode {
        CommutatorMode::Dyadic => emit_file(&a.out, FunctionFile::from_grid(&iterated_commutator_apply(&phi, &b)?)),
        CommutatorMode::Report => {
            let rows = commutator_part_norm_report(&phi, &b)?;
            let config =
                json!({ "command": "commutator report", "symbol": path_str(&a.symbol), "input": path_str(&a.input) });
            emit_json(&a.out, json!({ "rows": rows, "config": config }))
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct StepFile {
    breakpoints: Vec<f64>,
    values: Vec<f64>,
}

fn load_step(path: Option<&Path>) -> Result<StepFunction1D, CliError> {
    let Some(path) = path else {
        return Ok(StepFunction1D::indicator(0.0, 1.0, 1.0)?);
    };
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Validation(format!("cannot read {}: {e}", path.display())))?;
    let file: StepFile =
        serde_json::from_str(&text).map_err(|e| CliError::Validation(format!("malformed step function: {e}")))?;
    Ok(StepFunction1D::new(file.breakpoints, file.values)?)
}

pub fn hilbert(a: &HilbertArgs) -> Result<(), CliError> {
    let f = load_step(a.input.as_deref())?;
    let mut config = json!({ "command": "hilbert", "input": a.input.as_deref().map(path_str) });
    let points: Vec<Value> = match a.mode {
        HilbertMode::Oracle => {
            config["mode"] = json!("oracle");
            a.x.iter()
                .map(|&x| Ok(json!({ "x": x, "value": analytic_hilbert_step(&f, x)? })))
                .collect::<Result<_, CliError>>()?
        }
        HilbertMode::Mc => {
            let seed = a.seed.ok_or_else(|| CliError::Validation("hilbert mc needs --seed".into()))?;
            let mut cfg = McConfig::new(a.samples, seed);
            if let Some(k) = a.k {
                cfg.k_coarse = k;
                cfg.k_fine = k;
            }
            config["mode"] = json!("mc");
            config["mc"] = json!(cfg);
            let est = mc_hilbert(&f, &a.x, &cfg)?;
            a.x.iter().zip(est).map(|(&x, e)| json!({ "x": x, "value": e.estimate, "stderr": e.stderr })).collect()
        }
    };
    emit_json(&a.out, json!({ "points": points, "config": config }))
}
