use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use qheight_core::classifier::{
    curve_regime, is_finite_by_betti, regime_from_rank, BettiProfile, RegimeCase, RegimeLabel,
};
use qheight_core::contfrac::{cf_eval, cf_expand_quadratic, cf_expand_rational, moebius_apply, Coordinate, JpVector};
use qheight_core::counting::{
    counting_function, enumerate_case1, enumerate_case2, fit_regime, Case2Count, CountSample, HeightMode, Population,
};
use qheight_core::fixtures::probe_surds;
use qheight_core::heights::{height_projective, height_rational_tuple, script_height_with, K0ModuleData};
use qheight_core::minkowski::{
    derivative_probe, dyadic_difference_probe, prefix_shift, qmark_extended, qmark_inverse, qmark_nd, qmark_quadratic,
    qmark_rational, unimodular_scan, QMarkValue,
};
use qheight_core::numbers::{fmt_rational, normalize_rational, parse_projective, parse_rational, to_dyadic};
use qheight_core::{CfValue, ContinuedFraction, Error, Matrix2, QuadraticSurd, Rational, Result};

use crate::render::render;
use crate::{CaseArg, CfCommand, Cli, Command, CountKind, HeightModeArg, NormalizeCommand, ProbeCommand};

pub fn execute(cli: &Cli) -> Result<String> {
    let records = match &cli.command {
        Command::Qmark { inputs, extended } => inputs.iter().map(|x| qmark(x, *extended)).collect::<Result<_>>()?,
        Command::QmarkInverse { inputs } => inputs.iter().map(|y| inverse(y)).collect::<Result<_>>()?,
        Command::Jp { coords, max_steps } => vec![jp(coords, *max_steps)?],
        Command::Height(args) => vec![height(args)?],
        Command::Probe(cmd) => probe(cmd)?,
        Command::Count(args) => count(args)?,
        Command::Fit(args) => vec![fit(&parse_samples(&args.samples)?, args.n)?],
        Command::Classify(args) => vec![classify(args)?],
        Command::Cf(cmd) => vec![cf(cmd)?],
        Command::Moebius {
            matrix,
            theta,
            basis_change,
        } => {
            let g = matrix_arg(matrix, *basis_change)?;
            let theta: QuadraticSurd = theta.parse()?;
            let image = moebius_apply(&g, &theta)?;
            vec![json!({"matrix": matrix, "basis_change": basis_change, "theta": theta.to_string(), "image": image.to_string()})]
        }
        Command::Normalize(cmd) => vec![normalize(cmd)?],
    };
    Ok(render(&records, cli.format))
}

fn rat(r: &Rational) -> Value {
    Value::String(fmt_rational(r))
}

fn int(b: &BigInt) -> Value {
    b.to_i64().map_or_else(|| Value::String(b.to_string()), Value::from)
}

/// Rounds for display so that output does not depend on last-bit noise.
fn real(x: f64) -> Value {
    if x.is_finite() {
        json!((x * 1e6).round() / 1e6)
    } else {
        Value::Null
    }
}

/// `log2 r` for positive `r`, from the leading 64 bits of each side.
fn log2_rational(r: &Rational) -> f64 {
    let top = |b: &BigInt| -> f64 {
        let bits = b.bits();
        let shift = bits.saturating_sub(64);
        (b >> shift).to_f64().unwrap_or(f64::NAN).log2() + shift as f64
    };
    if r <= &Rational::from_integer(0.into()) {
        return f64::NEG_INFINITY;
    }
    top(r.numer()) - top(r.denom())
}

fn parse_int_list(text: &str) -> Result<Vec<BigInt>> {
    text.split(',')
        .map(|t| t.trim().parse::<BigInt>().map_err(|_| Error::Parse(format!("expected an integer, got {t:?}"))))
        .collect()
}

fn parse_u64(text: &str) -> Result<u64> {
    text.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("expected a non-negative integer, got {text:?}")))
}

/// `lo:hi` or a comma-separated list.
pub fn parse_grid(text: &str) -> Result<Vec<u64>> {
    if let Some((lo, hi)) = text.split_once(':') {
        let (lo, hi) = (parse_u64(lo)?, parse_u64(hi)?);
        if lo > hi {
            return Err(Error::Parse(format!("empty grid {text:?}")));
        }
        return Ok((lo..=hi).collect());
    }
    text.split(',').map(parse_u64).collect()
}

fn parse_samples(text: &str) -> Result<Vec<CountSample>> {
    text.split(',')
        .map(|pair| {
            let (t, n) = pair
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("expected T:N, got {pair:?}")))?;
            Ok(CountSample {
                t: parse_u64(t)?,
                n: parse_u64(n)?,
            })
        })
        .collect()
}

fn matrix_arg(text: &str, basis_change: bool) -> Result<Matrix2> {
    let g: Matrix2 = text.parse()?;
    Ok(if basis_change { g.column_swap() } else { g })
}

fn qmark_value(v: &QMarkValue) -> Value {
    let mut out = json!({
        "value": rat(&v.value),
        "is_dyadic": v.is_dyadic,
        "source_kind": v.source_kind.as_str(),
        "digits_used": v.digits_used,
    });
    if let Some((lo, hi)) = &v.bracket {
        out["bracket"] = json!([rat(lo), rat(hi)]);
    }
    out
}

fn qmark(input: &str, extended: bool) -> Result<Value> {
    let is_surd = input.contains("sqrt(");
    if extended {
        let x = if is_surd {
            CfValue::Quadratic(input.parse()?)
        } else {
            CfValue::Rational(parse_rational(input)?)
        };
        let value = qmark_extended(&x)?;
        let is_dyadic = to_dyadic(&value).is_ok();
        return Ok(json!({"value": rat(&value), "is_dyadic": is_dyadic, "input": x.to_string()}));
    }
    let v = if is_surd {
        qmark_quadratic(&input.parse()?)?
    } else {
        qmark_rational(&parse_rational(input)?)?
    };
    let mut out = qmark_value(&v);
    out["input"] = Value::String(input.to_string());
    Ok(out)
}

fn inverse(input: &str) -> Result<Value> {
    let y = parse_rational(input)?;
    let x = qmark_inverse(&y)?;
    let (kind, cf) = match &x {
        CfValue::Rational(r) => ("rational", cf_expand_rational(r)),
        CfValue::Quadratic(s) => ("quadratic", cf_expand_quadratic(s)),
    };
    Ok(json!({"value": x.to_string(), "kind": kind, "cf": cf.to_string(), "input": fmt_rational(&y)}))
}

fn coordinates(texts: &[String]) -> Result<Vec<Coordinate>> {
    texts.iter().map(|t| t.parse()).collect()
}

fn jp(texts: &[String], max_steps: usize) -> Result<Value> {
    let x = JpVector::from_coordinates(&coordinates(texts)?)?;
    let e = x.expand(max_steps)?;
    let image = qmark_nd(&x, max_steps)?;
    let digits: Vec<Value> = e.digit_vectors().iter().map(|v| Value::Array(v.iter().map(int).collect())).collect();
    let shifts: Vec<Value> = e
        .shift_markers()
        .iter()
        .map(|m| json!({"step": m.step, "rotations": m.rotations}))
        .collect();
    Ok(json!({
        "n": e.dimension(),
        "digit_vectors": digits,
        "shift_markers": shifts,
        "period_start": e.period_start(),
        "terminated": e.terminated(),
        "truncated": e.is_truncated(),
        "qmark": image.iter().map(qmark_value).collect::<Vec<_>>(),
    }))
}

fn height(args: &crate::HeightArgs) -> Result<Value> {
    let mode = &args.mode;
    if let Some(text) = &mode.projective {
        let p = parse_projective(text)?;
        let h = height_projective(&p);
        return Ok(json!({"point": p.to_string(), "height": int(&h.value), "formula_used": h.formula_used.as_str()}));
    }
    if let Some(text) = &mode.tuple {
        let entries = text.split(',').map(parse_rational).collect::<Result<Vec<_>>>()?;
        let h = height_rational_tuple(&entries);
        let shown: Vec<Value> = std::iter::once(Rational::from_integer(1.into()))
            .chain(entries)
            .map(|r| rat(&r))
            .collect();
        return Ok(json!({"tuple": shown, "height": int(&h.value), "formula_used": h.formula_used.as_str()}));
    }
    let thetas = coordinates(&mode.theta)?;
    let data = K0ModuleData::new(thetas.len(), args.rank, thetas)?;
    let out = script_height_with(&data, args.max_steps)?;
    Ok(json!({
        "thetas": data.thetas().iter().map(|t| t.to_string()).collect::<Vec<_>>(),
        "qmark_image": out.image.iter().map(|v| rat(&v.value)).collect::<Vec<_>>(),
        "height": int(&out.height.value),
        "formula_used": out.height.formula_used.as_str(),
    }))
}

fn probe(cmd: &ProbeCommand) -> Result<Vec<Value>> {
    Ok(match cmd {
        ProbeCommand::Difference {
            theta,
            matrix,
            basis_change,
        } => {
            let p = dyadic_difference_probe(&theta.parse()?, &matrix_arg(matrix, *basis_change)?)?;
            vec![json!({
                "theta": p.theta.to_string(),
                "matrix": matrix,
                "basis_change": basis_change,
                "image": p.image.to_string(),
                "qmark_theta": rat(&p.qmark_theta),
                "qmark_image": rat(&p.qmark_image),
                "difference": rat(&p.difference),
                "is_dyadic": p.is_dyadic,
            })]
        }
        ProbeCommand::Scan { bound, theta } => {
            let thetas = if theta.is_empty() {
                probe_surds()
            } else {
                theta.iter().map(|t| t.parse()).collect::<Result<Vec<QuadraticSurd>>>()?
            };
            if !(0..=6).contains(bound) {
                return Err(Error::OutOfRange("scan bound must lie in 0..=6".into()));
            }
            let r = unimodular_scan(&thetas, *bound)?;
            vec![json!({
                "bound": r.bound,
                "surds": thetas.len(),
                "matrices": r.matrices,
                "evaluations": r.evaluations,
                "dyadic": r.dyadic,
                "fraction": rat(&r.fraction),
                "fraction_real": real(r.fraction.to_f64().unwrap_or(f64::NAN)),
            })]
        }
        ProbeCommand::Derivative { x, steps } => {
            let x = parse_rational(x)?;
            let js = parse_int_list(steps)?
                .iter()
                .map(|j| j.to_u32().ok_or_else(|| Error::Parse(format!("bad step exponent {j}"))))
                .collect::<Result<Vec<u32>>>()?;
            let p = derivative_probe(&x, &js)?;
            p.step_exponents
                .iter()
                .zip(&p.ratios)
                .map(|(j, r)| {
                    json!({
                        "x": rat(&p.point),
                        "j": j,
                        "log2_ratio": real(log2_rational(r)),
                        "below_1e-6": r < &Rational::new(1.into(), 1_000_000.into()),
                    })
                })
                .collect()
        }
        ProbeCommand::Shift { prefix } => {
            let d = prefix_shift(&parse_int_list(prefix)?)?;
            vec![json!({"prefix": prefix, "shift": d.to_string(), "value": rat(&d.to_rational())})]
        }
    })
}

fn count(args: &crate::CountArgs) -> Result<Vec<Value>> {
    let grid = parse_grid(&args.grid)?;
    let population = match args.case {
        CaseArg::Empty => Population::Empty,
        CaseArg::One => Population::Case1 { n: args.n },
        CaseArg::Two => Population::Case2 {
            n: args.n,
            count: match args.count {
                CountKind::Pairs => Case2Count::Pairs,
                CountKind::Denominators => Case2Count::Denominators,
            },
        },
    };
    let mode = match args.height_mode {
        HeightModeArg::Parameter => HeightMode::Parameter,
        HeightModeArg::Raw => HeightMode::Raw,
    };
    if args.list {
        return list_points(&population, grid.last().copied().unwrap_or(0), mode);
    }
    let samples = counting_function(&population, &grid, mode)?;
    let fitted = if args.fit {
        let positive: Vec<CountSample> = samples.iter().copied().filter(|s| s.n > 0).collect();
        Some(fit_regime::<f64>(&positive, args.n as u32)?)
    } else {
        None
    };
    Ok(samples
        .iter()
        .map(|s| {
            let mut row = json!({"T": s.t, "N": s.n, "log2N": s.log2n().map(real)});
            if let Some(f) = &fitted {
                row["fit"] = real(f.predict(s.t as f64));
            }
            row
        })
        .collect())
}

/// Points counted at `t`, in enumeration order.
fn list_points(population: &Population, t: u64, mode: HeightMode) -> Result<Vec<Value>> {
    if mode == HeightMode::Raw {
        return Err(Error::Invalid("--list uses the population parameter, not --height-mode raw".into()));
    }
    let row = |coords: &[Rational]| json!({"T": t, "point": coords.iter().map(rat).collect::<Vec<_>>()});
    Ok(match *population {
        Population::Empty => Vec::new(),
        Population::Case1 { n } => {
            let t = u32::try_from(t).map_err(|_| Error::OverGuard(format!("T = {t}")))?;
            enumerate_case1(n, t)?.iter().map(|p| row(&p.coords)).collect()
        }
        Population::Case2 { n, count } => {
            let pop = enumerate_case2(n, t)?;
            match count {
                Case2Count::Pairs => pop.points().map(|p| row(&p)).collect(),
                Case2Count::Denominators => pop
                    .denominators()
                    .map(|q| json!({"T": t, "denominator": q}))
                    .collect(),
            }
        }
    })
}

fn case_name(case: RegimeCase) -> &'static str {
    case.as_str()
}

fn fit(samples: &[CountSample], n: u32) -> Result<Value> {
    let f = fit_regime::<f64>(samples, n)?;
    let label = match f.label {
        qheight_core::FitLabel::ExponentialPoly { degree } => format!("ExponentialPoly({degree})"),
        qheight_core::FitLabel::LogLinear { .. } => "LogLinear".to_string(),
        qheight_core::FitLabel::Bounded => "Bounded".to_string(),
    };
    Ok(json!({
        "label": label,
        "case": case_name(qheight_core::classifier::case_of_fit(&f.label)),
        "amplitude": real(f.amplitude),
        "slope_or_degree": real(f.exponent_or_slope),
        "residual": real(f.residual),
    }))
}

fn verdict(label: &RegimeLabel, finite: bool, rank_bound: u64) -> Value {
    json!({
        "case": case_name(label.case),
        "asymptotic": label.asymptotic_str(),
        "finite": finite,
        "rank_bound": rank_bound,
    })
}

fn classify(args: &crate::ClassifyArgs) -> Result<Value> {
    if let Some(g) = args.genus {
        let v = is_finite_by_betti(&BettiProfile::curve(g));
        let label = curve_regime(g);
        return Ok(verdict(&label, v.finite, v.rank_bound));
    }
    let n = args
        .n
        .ok_or_else(|| Error::Parse("classify needs --genus, or --n with --rank or --betti".into()))?;
    if let Some(rank) = args.rank {
        let label = regime_from_rank(n, rank);
        return Ok(verdict(&label, label.case == RegimeCase::III, rank));
    }
    let betti = args
        .betti
        .as_deref()
        .ok_or_else(|| Error::Parse("classify --n needs --rank or --betti".into()))?;
    let values = parse_int_list(betti)?
        .iter()
        .map(|b| b.to_u64().ok_or_else(|| Error::Parse(format!("bad Betti number {b}"))))
        .collect::<Result<Vec<_>>>()?;
    let v = is_finite_by_betti(&BettiProfile::new(n, values)?);
    Ok(verdict(&v.regime, v.finite, v.rank_bound))
}

fn cf(cmd: &CfCommand) -> Result<Value> {
    Ok(match cmd {
        CfCommand::Expand { input } => {
            let cf = if input.contains("sqrt(") {
                cf_expand_quadratic(&input.parse()?)
            } else {
                cf_expand_rational(&parse_rational(input)?)
            };
            json!({"input": input, "cf": cf.to_string(), "periodic": cf.is_periodic()})
        }
        CfCommand::Eval { cf } => {
            let parsed: ContinuedFraction = cf.parse()?;
            let value = cf_eval(&parsed);
            let kind = match value {
                CfValue::Rational(_) => "rational",
                CfValue::Quadratic(_) => "quadratic",
            };
            json!({"cf": parsed.to_string(), "value": value.to_string(), "kind": kind})
        }
    })
}

fn normalize(cmd: &NormalizeCommand) -> Result<Value> {
    Ok(match cmd {
        NormalizeCommand::Rational { num, den } => {
            let r = normalize_rational(parse_big(num)?, parse_big(den)?)?;
            json!({"value": rat(&r)})
        }
        NormalizeCommand::Dyadic { value } => {
            let d = to_dyadic(&parse_rational(value)?)?;
            json!({"value": d.to_string(), "odd_numerator": int(d.odd_numerator()), "exponent": d.exponent()})
        }
        NormalizeCommand::Projective { coords } => {
            let p = parse_projective(coords)?;
            json!({"point": p.to_string(), "coords": p.coords().iter().map(int).collect::<Vec<_>>()})
        }
    })
}

fn parse_big(text: &str) -> Result<BigInt> {
    text.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("expected an integer, got {text:?}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grids() {
        assert_eq!(parse_grid("1:4").unwrap(), [1, 2, 3, 4]);
        assert_eq!(parse_grid("3,6").unwrap(), [3, 6]);
        assert!(matches!(parse_grid("4:1"), Err(Error::Parse(_))));
        assert!(matches!(parse_grid("a"), Err(Error::Parse(_))));
    }

    #[test]
    fn samples() {
        let s = parse_samples("1:1,2:3").unwrap();
        assert_eq!(s, [CountSample { t: 1, n: 1 }, CountSample { t: 2, n: 3 }]);
        assert!(parse_samples("1-1").is_err());
    }
}
