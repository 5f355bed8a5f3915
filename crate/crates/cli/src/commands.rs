//! Subcommand dispatch. Every command renders to a string.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::ToPrimitive;
use serde_json::Value;

use qreal::analytic::{eval_in_d, eval_in_disk, eval_negative_q, in_region_d, region_scan, CertifiedComplex, Flag, DISK_RADIUS};
use qreal::cf_core::{cf_decode, q_number};
use qreal::jump::{beta_root, formal_total_jump, jump_numeric, jump_symbolic, numeric_total_jump};
use qreal::q_series::{counterexample_stream, q_real_series, radius_estimate, reciprocal_series, IntLaurent, R_STAR};
use qreal::qcomplex::{q_complex_value, QComplexParams};
use qreal::special::{transcendental_limit, transcendental_qvalue};
use qreal::{Error, Rational, Result};

use crate::input::{parse_complex, parse_range, parse_word, XInput};
use crate::output::{complex, ints, num, poly, q_value, Obj};
use crate::{Cli, Command};

fn json(v: Value) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("values serialise");
    s.push('\n');
    s
}

fn rational_json(r: &Rational) -> Value {
    Value::String(r.to_string())
}

fn ratio_f64(r: &Rational) -> f64 {
    r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
}

fn series_json(label: &str, s: &IntLaurent) -> Value {
    let lo = s.val().min(0);
    let coeffs: Vec<BigInt> = (lo..s.order()).map(|n| s.coeff(n).expect("within order")).collect();
    Obj::new()
        .put("x", label)
        .put("val", lo)
        .put("order", s.order())
        .put("coeffs", ints(&coeffs))
        .build()
}

fn certified_json(label: &str, q: Complex64, c: &CertifiedComplex) -> Value {
    Obj::new()
        .put("x", label)
        .put("q", q_value(q))
        .put("value", complex(c.value))
        .put("err", num(c.err))
        .put("flag", serde_json::to_value(c.flag).expect("flag serialises"))
        .put("terms", c.terms)
        .build()
}

fn eval(x: &XInput, q: Complex64, tol: f64, method: &str) -> Result<CertifiedComplex> {
    if let XInput::Rational(r) = x {
        if x.word()?.is_none() {
            // below 1 the digit expansion does not apply; use the exact rational function
            let v = q_number(r)?.eval_complex(q);
            return Ok(CertifiedComplex { value: v, err: 8.0 * f64::EPSILON * v.norm(), flag: Flag::Certified, terms: 0 });
        }
    }
    let src = x.source()?;
    let negative = || {
        if q.im != 0.0 {
            return Err(Error::OutsideInterval);
        }
        eval_negative_q(src.as_ref(), q.re, tol)
    };
    match method {
        "d" => eval_in_d(src.as_ref(), q, tol),
        "disk" => eval_in_disk(src.as_ref(), q, tol),
        "negative" => negative(),
        "auto" => {
            if q.norm() == 0.0 || in_region_d(q)? {
                eval_in_d(src.as_ref(), q, tol)
            } else if q.im == 0.0 && q.re < 0.0 && q.re > -R_STAR {
                negative()
            } else if q.norm() < DISK_RADIUS {
                eval_in_disk(src.as_ref(), q, tol)
            } else {
                Err(Error::OutsideRegion { re: q.re, im: q.im })
            }
        }
        other => Err(Error::domain(format!("unknown method {other:?}"))),
    }
}

pub fn run(cli: &Cli) -> Result<String> {
    match &cli.command {
        Command::Encode(x) => {
            let input = XInput::parse(&x.x, x.digits)?;
            let digits = input.digits(x.digits)?;
            let complete = matches!(input, XInput::Rational(_));
            Ok(json(
                Obj::new()
                    .put("x", input.label())
                    .put("digits", Value::from(digits))
                    .put("complete", complete)
                    .build(),
            ))
        }
        Command::Decode { word } => {
            let w = parse_word(word)?;
            let r = cf_decode(&w);
            Ok(json(
                Obj::new()
                    .put("word", Value::from(w.digits().to_vec()))
                    .put("x", rational_json(&r))
                    .put("value", num(ratio_f64(&r)))
                    .build(),
            ))
        }
        Command::Qrational(x) => {
            let input = XInput::parse(&x.x, x.digits)?;
            let XInput::Rational(r) = &input else {
                return Err(Error::domain("qrational needs a rational x"));
            };
            let f = q_number(r)?;
            let mut o = Obj::new();
            if f.val() != 0 {
                o = o.put("val", f.val());
            }
            Ok(json(o.put("num", poly(f.num())).put("den", poly(f.den())).build()))
        }
        Command::Series { x, order, reciprocal } => {
            let input = XInput::parse(&x.x, x.digits)?;
            let src = input.source()?;
            let s = if *reciprocal {
                reciprocal_series(src.as_ref(), *order)?
            } else {
                q_real_series(src.as_ref(), *order)?
            };
            if cli.csv {
                let mut buf = Vec::new();
                s.write_csv(&mut buf)?;
                return Ok(String::from_utf8(buf).expect("csv is utf-8"));
            }
            Ok(json(series_json(&input.label(), &s)))
        }
        Command::Eval { x, q, tol, method } => {
            let input = XInput::parse(&x.x, x.digits)?;
            let q = parse_complex(q)?;
            let c = eval(&input, q, *tol, method)?;
            Ok(json(certified_json(&input.label(), q, &c)))
        }
        Command::Jump { x, q } => {
            let input = XInput::parse(&x.x, x.digits)?;
            let w = input.word()?.ok_or_else(|| Error::domain("jump needs a rational x >= 1"))?;
            match q {
                Some(q) => {
                    let q = parse_complex(q)?;
                    let v = jump_numeric(&w, q);
                    Ok(json(Obj::new().put("x", input.label()).put("q", q_value(q)).put("value", complex(v)).build()))
                }
                None => {
                    let f = jump_symbolic(&w);
                    Ok(json(
                        Obj::new()
                            .put("x", input.label())
                            .put("val", f.val())
                            .put("num", poly(f.num()))
                            .put("den", poly(f.den()))
                            .build(),
                    ))
                }
            }
        }
        Command::Totaljump { q, tol, budget, formal } => {
            if let Some(k) = formal {
                let s = formal_total_jump(*k)?;
                let coeffs: Vec<BigInt> = (0..s.order()).map(|n| s.coeff(n).expect("within order")).collect();
                return Ok(json(Obj::new().put("order", s.order()).put("coeffs", ints(&coeffs)).build()));
            }
            let q = parse_complex(q.as_deref().ok_or_else(|| Error::domain("totaljump needs --q or --formal"))?)?;
            let r = numeric_total_jump(q, *tol, *budget)?;
            Ok(json(
                Obj::new()
                    .put("q", q_value(q))
                    .put("value", complex(r.partial))
                    .put("target", complex(r.target))
                    .put("err", num(r.residual))
                    .put("residual", num(r.residual))
                    .put("epsilon", num(r.epsilon))
                    .put("depth", r.depth)
                    .put("terms", r.nodes)
                    .build(),
            ))
        }
        Command::Beta { level, tol } => {
            let b = beta_root(*level, *tol)?;
            Ok(json(
                Obj::new()
                    .put("level", b.level)
                    .put("value", num(b.value))
                    .put("lo", num(b.lo))
                    .put("hi", num(b.hi))
                    .put("err", num(b.hi - b.lo))
                    .build(),
            ))
        }
        Command::Radius { x, order, window, reciprocal } => {
            let input = XInput::parse(&x.x, x.digits)?;
            let src = input.source()?;
            let s = if *reciprocal {
                reciprocal_series(src.as_ref(), *order)?
            } else {
                q_real_series(src.as_ref(), *order)?
            };
            let e = radius_estimate(&s, *window)?;
            Ok(json(
                Obj::new()
                    .put("x", input.label())
                    .put("order", *order)
                    .put("window", e.window)
                    .put("inverse_radius", num(e.inverse_radius))
                    .put("radius", num(1.0 / e.inverse_radius))
                    .put("argmax", e.argmax)
                    .put("reference_inverse_radius", num(1.0 / R_STAR))
                    .build(),
            ))
        }
        Command::Counterexample { stages, budget } => {
            let (_, sched) = counterexample_stream(*stages, *budget)?;
            let verified = sched.verify()?;
            let rows: Vec<Value> = sched
                .stages
                .iter()
                .map(|s| {
                    Obj::new()
                        .put("stage", s.stage)
                        .put("n", s.n)
                        .put("threshold", num(s.threshold))
                        .put("achieved", num(s.achieved))
                        .build()
                })
                .collect();
            Ok(json(
                Obj::new()
                    .put("stages", Value::Array(rows))
                    .put("prefix", Value::from(sched.prefix.clone()))
                    .put("verified", Value::from(verified))
                    .build(),
            ))
        }
        Command::Bessel { s, r, q, tol } => {
            let q = parse_complex(q)?;
            let v = transcendental_qvalue(*s, *r, q, *tol)?;
            let lim = transcendental_limit(*s, *r, *tol)?;
            Ok(json(
                Obj::new()
                    .put("x", format!("arith:{s},{r}"))
                    .put("q", q_value(q))
                    .put("value", complex(v))
                    .put("classical", num(lim))
                    .build(),
            ))
        }
        Command::Qcomplex { tau, t, tol } => {
            let tau = parse_complex(tau)?;
            let p = QComplexParams::new(*t)?;
            let v = q_complex_value(tau, &p, *tol)?;
            Ok(json(
                Obj::new()
                    .put("tau", complex(v.tau))
                    .put("t", num(*t))
                    .put("q", num(v.q))
                    .put("value", complex(v.value))
                    .put("err", num(v.err))
                    .put("flag", "heuristic")
                    .put("form", serde_json::to_value(v.form).expect("form serialises"))
                    .put("depth", v.depth)
                    .build(),
            ))
        }
        Command::Regionscan { re, im, n_re, n_im } => {
            let rows = region_scan(parse_range(re)?, parse_range(im)?, *n_re, *n_im);
            if cli.csv {
                let mut wr = csv::Writer::from_writer(Vec::new());
                let io = |e: csv::Error| Error::EvaluationFailure(e.to_string());
                wr.write_record(["re", "im", "in_D", "in_Dprime", "a"]).map_err(io)?;
                for r in &rows {
                    let a = r.a.map(|a| format!("{a:.16e}")).unwrap_or_default();
                    wr.write_record([format!("{:.16e}", r.re), format!("{:.16e}", r.im), r.in_d.to_string(), r.in_dprime.to_string(), a])
                        .map_err(io)?;
                }
                let bytes = wr.into_inner().map_err(|e| Error::EvaluationFailure(e.to_string()))?;
                return Ok(String::from_utf8(bytes).expect("csv is utf-8"));
            }
            let arr: Vec<Value> = rows
                .iter()
                .map(|r| {
                    Obj::new()
                        .put("re", num(r.re))
                        .put("im", num(r.im))
                        .put("in_D", r.in_d)
                        .put("in_Dprime", r.in_dprime)
                        .put("a", r.a.map(num).unwrap_or(Value::Null))
                        .build()
                })
                .collect();
            Ok(json(Value::Array(arr)))
        }
    }
}

