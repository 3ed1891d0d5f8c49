//! Command-line front end: computation, series extraction, and verification
//! verbs over the nilzeta library, with JSON, LaTeX, and plain-text output.
//!
//! Exit codes: 0 success or PASS, 1 FAIL verdict, 2 usage error, 3 resource
//! guard refusal.  One document per invocation on standard output;
//! diagnostics go to standard error.

use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use nilzeta::analysis::{
    abscissa, dominance_check, grid_argmax_check, square_check, verify_funeq, Abscissa,
};
use nilzeta::laurent::{CycloFactor, FactoredRat, LaurentPoly};
use nilzeta::lieoracle::{count_ideals_direct, count_ideals_pairs, stratified_counts};
use nilzeta::qseries::{hall_alpha, hall_alpha_brute, Partition};
use nilzeta::zetacore::{local_zeta, ZetaParams};
use nilzeta::{BigInt, BigRational, Error};

#[derive(Parser)]
#[command(
    name = "nilzeta",
    version,
    about = "Exact local ideal zeta functions of free class-2 nilpotent Lie rings"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads for the enumeration oracles (beats NILZETA_WORKERS).
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Copy, Clone, ValueEnum)]
enum Format {
    Json,
    Latex,
    Text,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Method {
    Direct,
    Pairs,
    Stratified,
}

impl Method {
    fn name(self) -> &'static str {
        match self {
            Method::Direct => "direct",
            Method::Pairs => "pairs",
            Method::Stratified => "stratified",
        }
    }
}

#[derive(Subcommand)]
enum Verb {
    /// Print the exact two-variable zeta function for rank d.
    Compute {
        #[arg(short)]
        d: u32,
    },
    /// Ideal-count series coefficients at a prime, from the symbolic form.
    Series {
        #[arg(short)]
        d: u32,
        #[arg(short, long)]
        prime: u64,
        #[arg(short = 'n', long = "max-exp")]
        max_exp: u32,
    },
    /// Check the symmetry under inverting both variables.
    Funeq {
        #[arg(short)]
        d: u32,
    },
    /// Abscissa of convergence for one rank, or a table up to --max-d.
    Abscissa {
        #[arg(short, conflicts_with = "max_d", required_unless_present = "max_d")]
        d: Option<u32>,
        #[arg(long = "max-d")]
        max_d: Option<u32>,
    },
    /// Locate the dominant pole ratio and compare it with all others.
    Dominance {
        #[arg(short)]
        d: u32,
    },
    /// Report whether the pole-ratio grid peaks on the i = 0 line.
    Gridmax {
        #[arg(short, conflicts_with = "max_d", required_unless_present = "max_d")]
        d: Option<u32>,
        #[arg(long = "max-d")]
        max_d: Option<u32>,
    },
    /// Scan 2d^3 + 6d^2 - 3 for perfect squares.
    Squarecheck {
        #[arg(long = "max-d")]
        max_d: u64,
    },
    /// Count ideals by lattice enumeration, independent of the symbolic form.
    Oracle {
        #[arg(short)]
        d: u32,
        #[arg(short, long)]
        prime: u64,
        #[arg(short = 'n', long = "max-exp")]
        max_exp: u32,
        #[arg(long, value_enum, default_value_t = Method::Direct)]
        method: Method,
    },
    /// Compare the symbolic series against an enumeration oracle.
    Verify {
        #[arg(short)]
        d: u32,
        #[arg(short, long)]
        prime: u64,
        #[arg(short = 'n', long = "max-exp")]
        max_exp: u32,
        #[arg(long, value_enum, default_value_t = Method::Direct)]
        method: Method,
    },
    /// Subgroup count polynomial of a finite abelian p-group by type.
    Hall {
        /// Ambient type, as comma-separated parts, for example 3,2,1.
        #[arg(long, value_delimiter = ',', required = true)]
        lambda: Vec<u32>,
        /// Subgroup type; omit for the trivial subgroup.
        #[arg(long, value_delimiter = ',')]
        mu: Option<Vec<u32>>,
        /// Also evaluate the polynomial at this prime.
        #[arg(short, long)]
        prime: Option<u32>,
    },
    /// Run the fast verification subset.
    Selftest,
}

struct Outcome {
    params: Value,
    verdict: Option<bool>,
    payload: Value,
    text: String,
    latex: String,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_workers(cli.workers);
    let started = Instant::now();
    let (verb, result) = dispatch(&cli.verb);
    match result {
        Ok(out) => {
            emit(cli.format, verb, &out, started);
            match out.verdict {
                Some(false) => ExitCode::from(1),
                _ => ExitCode::SUCCESS,
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::InvalidInput(_) => ExitCode::from(2),
                Error::Guard(_) => ExitCode::from(3),
            }
        }
    }
}

fn dispatch(verb: &Verb) -> (&'static str, Result<Outcome, Error>) {
    match verb {
        Verb::Compute { d } => ("compute", compute(*d)),
        Verb::Series { d, prime, max_exp } => ("series", series(*d, *prime, *max_exp)),
        Verb::Funeq { d } => ("funeq", funeq(*d)),
        Verb::Abscissa { d, max_d } => ("abscissa", abscissa_verb(*d, *max_d)),
        Verb::Dominance { d } => ("dominance", dominance(*d)),
        Verb::Gridmax { d, max_d } => ("gridmax", gridmax(*d, *max_d)),
        Verb::Squarecheck { max_d } => ("squarecheck", squarecheck(*max_d)),
        Verb::Oracle { d, prime, max_exp, method } => {
            ("oracle", oracle(*d, *prime, *max_exp, *method))
        }
        Verb::Verify { d, prime, max_exp, method } => {
            ("verify", verify(*d, *prime, *max_exp, *method))
        }
        Verb::Hall { lambda, mu, prime } => ("hall", hall(lambda, mu.as_deref(), *prime)),
        Verb::Selftest => ("selftest", selftest()),
    }
}

fn emit(format: Format, verb: &str, out: &Outcome, started: Instant) {
    match format {
        Format::Json => {
            let mut doc = Map::new();
            doc.insert("verb".into(), json!(verb));
            doc.insert("params".into(), out.params.clone());
            if let Some(v) = out.verdict {
                doc.insert("verdict".into(), json!(if v { "PASS" } else { "FAIL" }));
            }
            doc.insert("payload".into(), out.payload.clone());
            doc.insert(
                "duration_ms".into(),
                json!(u64::try_from(started.elapsed().as_millis()).unwrap_or(u64::MAX)),
            );
            doc.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
            let rendered =
                serde_json::to_string_pretty(&Value::Object(doc)).expect("report serialization");
            println!("{rendered}");
        }
        Format::Text => println!("{}", out.text),
        Format::Latex => println!("{}", out.latex),
    }
}

fn configure_workers(flag: Option<usize>) {
    let requested = flag.or_else(|| {
        let raw = std::env::var("NILZETA_WORKERS").ok()?;
        match raw.trim().parse::<usize>() {
            Ok(n) => Some(n),
            Err(_) => {
                eprintln!("warning: ignoring unparsable NILZETA_WORKERS value {raw:?}");
                None
            }
        }
    });
    if let Some(n) = requested {
        if n == 0 {
            eprintln!("warning: worker count must be at least 1, using the default");
            return;
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("warning: could not resize the worker pool: {e}");
        }
    }
}

fn require_prime(p: u64) -> Result<(), Error> {
    let is_prime = match p {
        0 | 1 => false,
        2 => true,
        _ if p.is_multiple_of(2) => false,
        _ => (3..=p.isqrt()).step_by(2).all(|q| !p.is_multiple_of(q)),
    };
    if is_prime {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("{p} is not a prime")))
    }
}

fn require_symbolic_range(d: u32) -> Result<(), Error> {
    if (2..=5).contains(&d) {
        Ok(())
    } else {
        Err(Error::Guard(format!(
            "full symbolic zeta functions are built only for 2 <= d <= 5, got {d}"
        )))
    }
}

fn compute(d: u32) -> Result<Outcome, Error> {
    let params = ZetaParams::new(d)?;
    require_symbolic_range(d)?;
    let w = local_zeta(&params);
    Ok(Outcome {
        params: json!({ "d": d }),
        verdict: None,
        payload: serde_json::to_value(&w).expect("zeta serialization"),
        text: format!("W_{d}(P, T) = {w}"),
        latex: zeta_product_latex(&w),
    })
}

fn series(d: u32, prime: u64, max_exp: u32) -> Result<Outcome, Error> {
    let params = ZetaParams::new(d)?;
    require_symbolic_range(d)?;
    require_prime(prime)?;
    let counts = local_zeta(&params).series_at(&BigInt::from(prime), max_exp as usize)?;
    Ok(Outcome {
        params: json!({ "d": d, "prime": prime, "max_exp": max_exp }),
        verdict: None,
        payload: count_payload(prime, &counts),
        text: count_table_text(prime, &counts),
        latex: count_table_latex(prime, &counts),
    })
}

fn funeq(d: u32) -> Result<Outcome, Error> {
    ZetaParams::new(d)?;
    let cert = verify_funeq(d)?;
    let h = cert.d + cert.d * (cert.d - 1) / 2;
    let factor = format!("(-1)^{h} P^{} T^{}", cert.p_power, cert.t_power);
    let verdict_word = if cert.verdict { "PASS" } else { "FAIL" };
    Ok(Outcome {
        params: json!({ "d": d }),
        verdict: Some(cert.verdict),
        payload: json!({
            "sign": cert.sign,
            "p_power": cert.p_power,
            "t_power": cert.t_power,
            "factor": factor,
        }),
        text: format!("{verdict_word} {factor}"),
        latex: format!(
            "W(p^{{-1}}, t^{{-1}}) = {}p^{{{}}} t^{{{}}} \\, W(p, t)",
            if cert.sign < 0 { "-" } else { "" },
            cert.p_power,
            cert.t_power
        ),
    })
}

fn abscissa_row(a: &Abscissa) -> Value {
    json!({
        "alpha": a.alpha.to_string(),
        "argmax": a.argmax_j,
        "unique": a.unique,
    })
}

fn abscissa_text(d: u32, a: &Abscissa) -> String {
    let at = match a.argmax_j {
        Some(j) => format!("attained at j = {j}"),
        None => "attained at the rank bound".to_string(),
    };
    let unique = if a.unique { "unique" } else { "not unique" };
    format!("d = {d}: alpha = {}, {at}, {unique}", a.alpha)
}

fn rational_latex(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("\\frac{{{}}}{{{}}}", r.numer(), r.denom())
    }
}

fn abscissa_verb(d: Option<u32>, max_d: Option<u32>) -> Result<Outcome, Error> {
    match (d, max_d) {
        (Some(d), None) => {
            let a = abscissa(d)?;
            Ok(Outcome {
                params: json!({ "d": d }),
                verdict: None,
                payload: abscissa_row(&a),
                text: abscissa_text(d, &a),
                latex: format!("\\alpha_{{{d}}} = {}", rational_latex(&a.alpha)),
            })
        }
        (None, Some(m)) => {
            if m < 2 {
                return Err(Error::InvalidInput(format!("need --max-d >= 2, got {m}")));
            }
            let mut rows = Vec::new();
            let mut text = Vec::new();
            let mut latex = Vec::new();
            for d in 2..=m {
                let a = abscissa(d)?;
                let mut row = abscissa_row(&a);
                row.as_object_mut()
                    .expect("abscissa row object")
                    .insert("d".into(), json!(d));
                rows.push(row);
                text.push(abscissa_text(d, &a));
                latex.push(format!("\\alpha_{{{d}}} &= {} \\\\", rational_latex(&a.alpha)));
            }
            Ok(Outcome {
                params: json!({ "max_d": m }),
                verdict: None,
                payload: Value::Array(rows),
                text: text.join("\n"),
                latex: latex.join("\n"),
            })
        }
        _ => unreachable!("flag combination rejected at parse time"),
    }
}

fn ratio_entry(a: i64, b: i64, r: &BigRational) -> Value {
    json!({ "a": a, "b": b, "ratio": r.to_string() })
}

fn dominance(d: u32) -> Result<Outcome, Error> {
    ZetaParams::new(d)?;
    let report = dominance_check(d)?;
    let verdict = report.verdict();
    let summands: Vec<Value> = report
        .summands
        .iter()
        .map(|s| {
            json!({
                "label": s.label,
                "den_ratios": s.den_ratios
                    .iter()
                    .map(|(a, b, r)| ratio_entry(*a, *b, r))
                    .collect::<Vec<_>>(),
                "num_terms": s.num_terms,
                "max_num_ratio": s.max_num_ratio
                    .as_ref()
                    .map(|(p, t, r)| json!({ "p": p, "t": t, "ratio": r.to_string() })),
            })
        })
        .collect();
    let payload = json!({
        "max_den_ratio": report.max_den_ratio.to_string(),
        "den_argmax": report.den_argmax,
        "max_num_ratio": report.max_num_ratio.as_ref().map(|r| r.to_string()),
        "num_argmax": report.num_argmax,
        "attained_in_empty_pair": report.attained_in_empty_pair,
        "matches_abscissa": report.matches_abscissa,
        "strictly_dominant": report.strictly_dominant,
        "summands": summands,
    });
    let verdict_word = if verdict { "PASS" } else { "FAIL" };
    let num_line = match &report.max_num_ratio {
        Some(r) => format!("{r} (strictly below: {})", yes_no(report.strictly_dominant)),
        None => "none".to_string(),
    };
    let text = format!(
        "{verdict_word} d = {d}\n  largest denominator ratio: {} (abscissa match: {}, empty-pair block: {})\n  largest numerator ratio: {}",
        report.max_den_ratio,
        yes_no(report.matches_abscissa),
        yes_no(report.attained_in_empty_pair),
        num_line,
    );
    let latex = format!(
        "\\max_{{(a, b)}} \\tfrac{{a + 1}}{{b}} = {}",
        rational_latex(&report.max_den_ratio)
    );
    Ok(Outcome {
        params: json!({ "d": d }),
        verdict: Some(verdict),
        payload,
        text,
        latex,
    })
}

fn yes_no(v: bool) -> &'static str {
    if v {
        "yes"
    } else {
        "no"
    }
}

fn gridmax(d: Option<u32>, max_d: Option<u32>) -> Result<Outcome, Error> {
    let (params, ds) = match (d, max_d) {
        (Some(d), None) => (json!({ "d": d }), vec![d]),
        (None, Some(m)) => {
            if m < 3 {
                return Err(Error::InvalidInput(format!(
                    "the grid scan starts at d = 3, got --max-d {m}"
                )));
            }
            (json!({ "max_d": m }), (3..=m).collect())
        }
        _ => unreachable!("flag combination rejected at parse time"),
    };
    let mut rows = Vec::new();
    let mut text = Vec::new();
    for d in &ds {
        let on_line = grid_argmax_check(*d)?;
        rows.push(json!({ "d": d, "on_line": on_line }));
        text.push(format!(
            "d = {d}: grid maximum {} the i = 0 line",
            if on_line { "on" } else { "off" }
        ));
    }
    let payload = if ds.len() == 1 {
        rows.pop().expect("one grid row")
    } else {
        Value::Array(rows)
    };
    let latex = text
        .iter()
        .map(|line| format!("\\text{{{line}}}"))
        .collect::<Vec<_>>()
        .join(" \\\\\n");
    Ok(Outcome {
        params,
        verdict: None,
        payload,
        text: text.join("\n"),
        latex,
    })
}

fn squarecheck(max_d: u64) -> Result<Outcome, Error> {
    if max_d > 100_000_000 {
        return Err(Error::Guard(format!(
            "square scan is capped at max-d = 10^8, got {max_d}"
        )));
    }
    let hits = square_check(max_d);
    let clean = hits.is_empty();
    let text = if clean {
        format!("PASS 2d^3 + 6d^2 - 3 is never a perfect square for 2 <= d <= {max_d}")
    } else {
        format!("FAIL perfect squares at d = {hits:?}")
    };
    let latex = if clean {
        format!("2d^3 + 6d^2 - 3 \\ne \\square \\quad (2 \\le d \\le {max_d})")
    } else {
        format!("2d^3 + 6d^2 - 3 = \\square \\text{{ at }} d \\in {hits:?}")
    };
    Ok(Outcome {
        params: json!({ "max_d": max_d }),
        verdict: Some(clean),
        payload: json!({ "hits": hits }),
        text,
        latex,
    })
}

fn oracle(d: u32, prime: u64, max_exp: u32, method: Method) -> Result<Outcome, Error> {
    ZetaParams::new(d)?;
    require_prime(prime)?;
    let params = json!({
        "d": d,
        "prime": prime,
        "max_exp": max_exp,
        "method": method.name(),
    });
    let outcome = match method {
        Method::Direct | Method::Pairs => {
            let table = if method == Method::Direct {
                count_ideals_direct(d, prime, max_exp)?
            } else {
                count_ideals_pairs(d, prime, max_exp)?
            };
            let counts: Vec<BigInt> = table.counts().to_vec();
            Outcome {
                params,
                verdict: None,
                payload: serde_json::to_value(&table).expect("count table serialization"),
                text: count_table_text(prime, &counts),
                latex: count_table_latex(prime, &counts),
            }
        }
        Method::Stratified => {
            let strata = stratified_counts(d, prime, max_exp)?;
            let mut payload = Map::new();
            let mut text = Vec::new();
            let mut latex = Vec::new();
            for (label, table) in &strata {
                payload.insert(
                    label.clone(),
                    serde_json::to_value(table).expect("count table serialization"),
                );
                let counts: Vec<BigInt> = table.counts().to_vec();
                text.push(format!("{label}\n{}", count_table_text(prime, &counts)));
                latex.push(format!(
                    "% {label}\n{}",
                    count_table_latex(prime, &counts)
                ));
            }
            Outcome {
                params,
                verdict: None,
                payload: Value::Object(payload),
                text: text.join("\n\n"),
                latex: latex.join("\n"),
            }
        }
    };
    Ok(outcome)
}

fn verify(d: u32, prime: u64, max_exp: u32, method: Method) -> Result<Outcome, Error> {
    let zeta_params = ZetaParams::new(d)?;
    require_symbolic_range(d)?;
    require_prime(prime)?;
    let counted = match method {
        Method::Direct => count_ideals_direct(d, prime, max_exp)?,
        Method::Pairs => count_ideals_pairs(d, prime, max_exp)?,
        Method::Stratified => {
            return Err(Error::InvalidInput(
                "verify compares against the direct or pairs oracle".into(),
            ))
        }
    };
    let series = local_zeta(&zeta_params).series_at(&BigInt::from(prime), max_exp as usize)?;
    let width = series
        .iter()
        .chain(counted.counts())
        .map(|c| c.to_string().len())
        .max()
        .unwrap_or(1)
        .max("series".len());
    let mut rows = Vec::new();
    let mut all_match = true;
    let mut text = vec![format!(
        "{:>4}  {:>width$}  {:>width$}  match",
        "n", "series", "oracle"
    )];
    for n in 0..=max_exp as usize {
        let matches = counted.counts()[n] == series[n];
        all_match &= matches;
        rows.push(json!({
            "n": n,
            "series": series[n].to_string(),
            "oracle": counted.counts()[n].to_string(),
            "match": matches,
        }));
        text.push(format!(
            "{n:>4}  {:>width$}  {:>width$}  {}",
            series[n].to_string(),
            counted.counts()[n].to_string(),
            yes_no(matches),
        ));
    }
    text.push(format!(
        "{} series and {} oracle agree up to index {max_exp}",
        if all_match { "PASS" } else { "FAIL" },
        method.name(),
    ));
    let latex_rows: Vec<String> = (0..=max_exp as usize)
        .map(|n| format!("{n} & {} & {} \\\\", series[n], counted.counts()[n]))
        .collect();
    let latex = format!(
        "\\begin{{tabular}}{{rrr}}\nn & \\text{{series}} & \\text{{oracle}} \\\\\n{}\n\\end{{tabular}}",
        latex_rows.join("\n")
    );
    Ok(Outcome {
        params: json!({
            "d": d,
            "prime": prime,
            "max_exp": max_exp,
            "method": method.name(),
        }),
        verdict: Some(all_match),
        payload: json!({ "rows": rows }),
        text: text.join("\n"),
        latex,
    })
}

fn hall(lambda: &[u32], mu: Option<&[u32]>, prime: Option<u32>) -> Result<Outcome, Error> {
    let lambda = Partition::new(lambda.to_vec());
    let mu = Partition::new(mu.map(<[u32]>::to_vec).unwrap_or_default());
    let poly = hall_alpha(&lambda, &mu)?;
    let mut payload = Map::new();
    payload.insert("lambda".into(), json!(lambda.parts()));
    payload.insert("mu".into(), json!(mu.parts()));
    payload.insert(
        "terms".into(),
        Value::Array(
            poly.terms()
                .map(|(m, c)| json!({ "p": m.p, "c": c.to_string() }))
                .collect(),
        ),
    );
    payload.insert("display".into(), json!(poly.to_string()));
    let mut text = format!(
        "subgroups of type {:?} inside type {:?}: {poly}",
        mu.parts(),
        lambda.parts()
    );
    if let Some(p) = prime {
        let value = poly.eval_p(&BigInt::from(p))?;
        payload.insert("at_p".into(), json!(value.to_string()));
        text.push_str(&format!("\n  at p = {p}: {value}"));
    }
    Ok(Outcome {
        params: json!({
            "lambda": lambda.parts(),
            "mu": mu.parts(),
            "prime": prime,
        }),
        verdict: None,
        payload: Value::Object(payload),
        text,
        latex: poly_latex(&poly),
    })
}

fn selftest() -> Result<Outcome, Error> {
    let mut checks: Vec<(String, bool)> = Vec::new();

    let params = ZetaParams::new(2)?;
    let w = local_zeta(&params);
    let closed = FactoredRat::new(
        LaurentPoly::one(),
        vec![
            CycloFactor::new(0, 1, 1),
            CycloFactor::new(1, 1, 1),
            CycloFactor::new(2, 3, 1),
        ],
    );
    checks.push(("closed form at d = 2".into(), w.equivalent(&closed)));

    let series = w.series_at(&BigInt::from(2), 6)?;
    let direct = count_ideals_direct(2, 2, 6)?;
    checks.push((
        "direct oracle, d = 2, p = 2, N = 6".into(),
        direct.counts() == &series[..],
    ));

    for d in 2..=4 {
        checks.push((
            format!("functional equation, d = {d}"),
            verify_funeq(d)?.verdict,
        ));
    }

    let expected = [(2u32, "2"), (3, "3"), (4, "4"), (5, "51/10"), (6, "99/13")];
    let table_ok = expected.iter().all(|(d, want)| {
        abscissa(*d).is_ok_and(|a| a.alpha.to_string() == *want && a.unique)
    });
    checks.push(("abscissa table, d = 2..6".into(), table_ok));

    let mut hall_ok = true;
    for n in 0u32..=4 {
        for parts in partitions_of(n) {
            let lambda = Partition::new(parts);
            for mu in lambda.subpartitions() {
                let poly = hall_alpha(&lambda, &mu)?;
                for p in [2u32, 3] {
                    let brute = hall_alpha_brute(&lambda, &mu, p)?;
                    hall_ok &= poly.eval_p(&BigInt::from(p))? == BigInt::from(brute);
                }
            }
        }
    }
    checks.push(("subgroup counts vs enumeration, |lambda| <= 4".into(), hall_ok));

    let all_pass = checks.iter().all(|(_, ok)| *ok);
    let rows: Vec<Value> = checks
        .iter()
        .map(|(name, ok)| json!({ "check": name, "verdict": if *ok { "PASS" } else { "FAIL" } }))
        .collect();
    let mut text: Vec<String> = checks
        .iter()
        .map(|(name, ok)| format!("{} {name}", if *ok { "PASS" } else { "FAIL" }))
        .collect();
    text.push(format!(
        "selftest: {} ({} checks)",
        if all_pass { "PASS" } else { "FAIL" },
        checks.len()
    ));
    let latex = text
        .iter()
        .map(|line| format!("\\text{{{line}}}"))
        .collect::<Vec<_>>()
        .join(" \\\\\n");
    Ok(Outcome {
        params: json!({}),
        verdict: Some(all_pass),
        payload: json!({ "checks": rows }),
        text: text.join("\n"),
        latex,
    })
}

fn partitions_of(n: u32) -> Vec<Vec<u32>> {
    fn rec(left: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=max.min(left)).rev() {
            cur.push(part);
            rec(left - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

fn count_payload(prime: u64, counts: &[BigInt]) -> Value {
    json!({
        "p": prime,
        "counts": counts.iter().map(BigInt::to_string).collect::<Vec<_>>(),
    })
}

fn count_table_text(prime: u64, counts: &[BigInt]) -> String {
    let header = format!("a_{{{prime}^n}}");
    let width = counts
        .iter()
        .map(|c| c.to_string().len())
        .max()
        .unwrap_or(1)
        .max(header.len());
    let mut lines = vec![format!("{:>4}  {header:>width$}", "n")];
    for (n, c) in counts.iter().enumerate() {
        lines.push(format!("{n:>4}  {:>width$}", c.to_string()));
    }
    lines.join("\n")
}

fn count_table_latex(prime: u64, counts: &[BigInt]) -> String {
    let rows: Vec<String> = counts
        .iter()
        .enumerate()
        .map(|(n, c)| format!("{n} & {c} \\\\"))
        .collect();
    format!(
        "\\begin{{tabular}}{{rr}}\nn & a_{{{prime}^n}} \\\\\n{}\n\\end{{tabular}}",
        rows.join("\n")
    )
}

fn zeta_product_latex(w: &FactoredRat) -> String {
    let den: String = w
        .den()
        .iter()
        .map(|f| {
            let arg = linear_arg(f.b, f.a);
            if f.mult > 1 {
                format!("\\zeta_p({arg})^{{{}}}", f.mult)
            } else {
                format!("\\zeta_p({arg})")
            }
        })
        .collect();
    if w.num().is_one() {
        den
    } else {
        format!("\\left({}\\right) {den}", poly_latex(w.num()))
    }
}

fn linear_arg(b: i64, a: i64) -> String {
    let s = if b == 1 { "s".to_string() } else { format!("{b}s") };
    match a.cmp(&0) {
        std::cmp::Ordering::Equal => s,
        std::cmp::Ordering::Greater => format!("{s}-{a}"),
        std::cmp::Ordering::Less => format!("{s}+{}", -a),
    }
}

fn poly_latex(q: &LaurentPoly) -> String {
    if q.is_zero() {
        return "0".to_string();
    }
    let zero = BigInt::from(0);
    let mut out = String::new();
    for (i, (m, c)) in q.terms().enumerate() {
        let negative = *c < zero;
        if i == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let mag = if negative { -c } else { c.clone() };
        let vars = format!("{}{}", var_latex("p", m.p), var_latex("t", m.t));
        if vars.is_empty() {
            out.push_str(&mag.to_string());
        } else {
            if mag != BigInt::from(1) {
                out.push_str(&mag.to_string());
                out.push_str(" \\, ");
            }
            out.push_str(&vars);
        }
    }
    out
}

fn var_latex(name: &str, exp: i64) -> String {
    match exp {
        0 => String::new(),
        1 => name.to_string(),
        _ => format!("{name}^{{{exp}}}"),
    }
}
