use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use qgeo::dsl::{parse_document, parse_element, parse_scalar};
use qgeo::groups::{find_factorisations, fourier, matched_pair, FinGroup};
use qgeo::models::{lookup, models_from_document, regime_report, Model};
use qgeo::report::{export_report, CheckReport, Format};
use qgeo::scalars::{ParamSet, Scalar};
use qgeo::suite::run_suite;
use qgeo::{Error, Result};

#[derive(Parser)]
#[command(name = "qgeo", version, about = "Exact checks for quantum groups and braided algebras")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run check suites on a built-in model or every model in a .dsl file.
    Check {
        target: String,
        /// Comma-separated check names, or `all`.
        #[arg(long)]
        suite: Option<String>,
        #[arg(long)]
        degree: Option<u32>,
        #[arg(long, default_value = "text")]
        format: Format,
    },
    /// Normal form of an expression.
    Nf {
        model: String,
        expr: String,
        #[arg(long, default_value = "text")]
        format: Format,
    },
    /// `ab - ba` in normal form.
    Commutator {
        model: String,
        a: String,
        b: String,
        #[arg(long, default_value = "text")]
        format: Format,
    },
    /// Fourier transform of a function on a group, given as `label=value,...` or
    /// as comma-separated values in element order.
    Fourier {
        group: String,
        function: String,
        #[arg(long, default_value = "text")]
        format: Format,
    },
    /// Every exact factorisation X = GM with its matched pair actions.
    Factorise {
        group: String,
        #[arg(long, default_value = "text")]
        format: Format,
    },
    /// Compare mM with the squared Planck mass.
    Regime {
        #[arg(long = "m")]
        m: String,
        #[arg(long = "M")]
        big_m: String,
        #[arg(long)]
        hbar: String,
        #[arg(long = "G")]
        g: String,
        #[arg(long, default_value = "text")]
        format: Format,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli.cmd) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(error_code(&e))
        }
    }
}

fn error_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. }
        | Error::Usage(_)
        | Error::UnknownModel(_)
        | Error::UnknownCheck(_)
        | Error::UnknownGenerator(_) => 2,
        _ => 1,
    }
}

fn run(cmd: Cmd) -> Result<u8> {
    match cmd {
        Cmd::Check {
            target,
            suite,
            degree,
            format,
        } => {
            let reports = check(&target, suite.as_deref(), degree)?;
            print!("{}", with_newline(export_report(&reports, format)));
            Ok(u8::from(reports.iter().any(CheckReport::failed)))
        }
        Cmd::Nf { model, expr, format } => {
            let m = load_model(&model)?;
            let alg = algebra(&m)?;
            let e = alg.normal_form(&parse_element(alg, &expr)?)?;
            emit(format, alg.element_json(&e), alg.show(&e));
            Ok(0)
        }
        Cmd::Commutator { model, a, b, format } => {
            let m = load_model(&model)?;
            let alg = algebra(&m)?;
            let c = alg.commutator(&parse_element(alg, &a)?, &parse_element(alg, &b)?)?;
            emit(format, alg.element_json(&c), alg.show(&c));
            Ok(0)
        }
        Cmd::Fourier { group, function, format } => {
            let g = load_group(&group)?;
            let f = parse_function(&g, &function)?;
            let v = fourier(&g, &f)?;
            let json = Value::Array(
                v.iter()
                    .map(|(&k, c)| json!({"element": g.label(k), "coeff": c.to_string()}))
                    .collect(),
            );
            let text = if v.is_empty() {
                "0".to_owned()
            } else {
                v.iter()
                    .map(|(&k, c)| format!("({c})*[{}]", g.label(k)))
                    .collect::<Vec<_>>()
                    .join(" + ")
            };
            emit(format, json, text);
            Ok(0)
        }
        Cmd::Factorise { group, format } => {
            let x = load_group(&group)?;
            let fs = find_factorisations(&x)?;
            let json = Value::Array(fs.iter().map(|f| matched_pair(f).to_json()).collect());
            let mut text = format!("{} ({} elements): {} factorisations\n", x.name(), x.order(), fs.len());
            for f in &fs {
                let mp = matched_pair(f);
                let lbl = |s: &[usize]| s.iter().map(|&k| x.label(k)).collect::<Vec<_>>().join(", ");
                text.push_str(&format!(
                    "|G|={} |M|={}{}  G={{{}}}  M={{{}}}\n",
                    f.g.len(),
                    f.m.len(),
                    if mp.is_trivial() { " (trivial actions)" } else { "" },
                    lbl(&f.g),
                    lbl(&f.m)
                ));
            }
            emit(format, json, text.trim_end().to_owned());
            Ok(0)
        }
        Cmd::Regime {
            m,
            big_m,
            hbar,
            g,
            format,
        } => {
            let q = |s: &str| rational(s);
            let r = regime_report(&q(&m)?, &q(&big_m)?, &q(&hbar)?, &q(&g)?)?;
            emit(format, r.to_json(), r.to_text());
            Ok(0)
        }
    }
}

fn with_newline(mut s: String) -> String {
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

fn emit(format: Format, json: Value, text: String) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&json).expect("json")),
        Format::Text => println!("{text}"),
    }
}

fn rational(s: &str) -> Result<Scalar> {
    parse_scalar(&ParamSet::default(), s).map_err(|e| Error::Usage(format!("`{s}`: {e}")))
}

fn is_file(target: &str) -> bool {
    target.ends_with(".dsl") || Path::new(target).is_file()
}

fn read(path: &str) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Usage(format!("{path}: {e}")))
}

fn load_model(target: &str) -> Result<Model> {
    if is_file(target) {
        let doc = parse_document(&read(target)?)?;
        models_from_document(&doc)?
            .into_iter()
            .next()
            .ok_or_else(|| Error::Usage(format!("{target} declares no model")))
    } else {
        lookup(target)
    }
}

fn algebra(m: &Model) -> Result<&qgeo::freealg::Presentation> {
    m.presentation()
        .ok_or_else(|| Error::Usage(format!("{} has no symbolic presentation", m.name())))
}

fn load_group(target: &str) -> Result<FinGroup> {
    if Path::new(target).is_file() {
        FinGroup::from_json(&read(target)?)
    } else {
        FinGroup::builtin(target)
    }
}

fn parse_function(g: &FinGroup, src: &str) -> Result<Vec<Scalar>> {
    let params = ParamSet::default();
    let mut f = vec![Scalar::zero(); g.order()];
    if src.contains('=') {
        for part in src.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (label, val) = part
                .rsplit_once('=')
                .ok_or_else(|| Error::Usage(format!("expected label=value, got `{part}`")))?;
            let k = g
                .index_of(label.trim())
                .ok_or_else(|| Error::Usage(format!("no element `{}` in {}", label.trim(), g.name())))?;
            f[k] = parse_scalar(&params, val.trim())?;
        }
    } else {
        let vals: Vec<&str> = src.split(',').map(str::trim).collect();
        if vals.len() != g.order() {
            return Err(Error::Usage(format!(
                "{} values given, {} has {} elements",
                vals.len(),
                g.name(),
                g.order()
            )));
        }
        for (k, v) in vals.into_iter().enumerate() {
            f[k] = parse_scalar(&params, v)?;
        }
    }
    Ok(f)
}

fn check(target: &str, suite: Option<&str>, degree: Option<u32>) -> Result<Vec<CheckReport>> {
    let requested: Option<Vec<String>> = suite.map(|s| s.split(',').map(|c| c.trim().to_owned()).collect());
    let mut out = Vec::new();
    if is_file(target) {
        let doc = parse_document(&read(target)?)?;
        let models = models_from_document(&doc)?;
        for m in models {
            match (&requested, doc.checks.is_empty()) {
                (Some(r), _) => out.extend(run_suite(&m, r, degree)?),
                (None, true) => out.extend(run_suite(&m, &["all"], degree)?),
                (None, false) => {
                    for c in &doc.checks {
                        out.extend(run_suite(&m, &c.suites, degree.or(c.degree))?);
                    }
                }
            }
        }
    } else {
        let m = lookup(target)?;
        let r = requested.unwrap_or_else(|| vec!["all".into()]);
        out.extend(run_suite(&m, &r, degree)?);
    }
    Ok(out)
}
