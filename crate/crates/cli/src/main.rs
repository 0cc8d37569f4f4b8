//! `dkdv`: evaluate expressions, print flows and operator series, run the
//! reconstruction and the verification ledger.

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use dkdv_core::diffpoly::{DiffPoly, Flow, RingSpec};
use dkdv_core::evenop::{make_named, NamedOp};
use dkdv_core::expr::parse_expr;
use dkdv_core::genfun::{i1_series, i2_series};
use dkdv_core::hierarchy::{
    build_qcb, chart_map, dkdv_flow, extended_flow, miura_transport, reconstruct_extended_flow, seed_coefficient,
    Chart,
};
use dkdv_core::series::TaylorSeries;
use dkdv_core::verify::{run_suite, Suite, DEFAULT_ORDER};
use dkdv_core::Error;

#[derive(Parser)]
#[command(name = "dkdv", version, about = "Exact computations in the discrete KdV hierarchy and its extension")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse an expression and print it in canonical form.
    Eval {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long, value_enum, default_value_t = ChartArg::Uv)]
        ring: ChartArg,
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        order: u32,
        #[arg(long)]
        json: bool,
    },
    /// Print the potentials and right-hand sides of one flow.
    Flow {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        index: u32,
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        order: u32,
        #[arg(long, value_enum, default_value_t = ChartArg::Uv)]
        chart: ChartArg,
        #[arg(long)]
        json: bool,
    },
    /// Solve for the potential of an extended flow, order by order in ep.
    Reconstruct {
        #[arg(long)]
        index: u32,
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        order: u32,
        #[arg(long)]
        json: bool,
    },
    /// Print the coefficients of `z^0, z^2, …, z^order` of an operator symbol
    /// or generating series.
    Series {
        #[arg(long, value_enum)]
        op: SeriesArg,
        #[arg(long, default_value_t = 4)]
        order: usize,
        #[arg(long)]
        json: bool,
    },
    /// Run a verification suite and print its ledger.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ChartArg {
    Uv,
    W,
    Dr,
    Uw,
}

impl ChartArg {
    fn chart(self) -> Chart {
        match self {
            ChartArg::Uv => Chart::Uv,
            ChartArg::W => Chart::W,
            ChartArg::Dr => Chart::Dr,
            ChartArg::Uw => Chart::Uw,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Tau,
    T1,
}

#[derive(Clone, Copy, ValueEnum)]
enum SeriesArg {
    #[value(name = "L")]
    L,
    #[value(name = "R")]
    R,
    #[value(name = "X")]
    X,
    #[value(name = "T")]
    T,
    #[value(name = "Linv")]
    Linv,
    #[value(name = "Rinv")]
    Rinv,
    #[value(name = "I1")]
    I1,
    #[value(name = "I2")]
    I2,
    #[value(name = "Xhat")]
    Xhat,
    #[value(name = "Lhat")]
    Lhat,
    #[value(name = "That")]
    That,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Lax,
    Commute,
    Qcb,
    Dr,
    Nogo,
    Fmanifold,
    Genfun,
    All,
}

impl SuiteArg {
    fn suite(self) -> Suite {
        match self {
            SuiteArg::Lax => Suite::Lax,
            SuiteArg::Commute => Suite::Commute,
            SuiteArg::Qcb => Suite::Qcb,
            SuiteArg::Dr => Suite::Dr,
            SuiteArg::Nogo => Suite::Nogo,
            SuiteArg::Fmanifold => Suite::Fmanifold,
            SuiteArg::Genfun => Suite::Genfun,
            SuiteArg::All => Suite::All,
        }
    }
}

/// How a command ended, mapped to the process exit code.
enum Failure {
    Usage(String),
    Verification,
    Computation(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } | Error::UnknownVariable(_) | Error::Invalid(_) => Failure::Usage(e.to_string()),
            e => Failure::Computation(e),
        }
    }
}

/// `[{"eps_power": n, "terms": [{"monomial": "...", "coeff": "p/q"}]}]`.
fn poly_json(p: &DiffPoly) -> Value {
    Value::Array(
        p.eps_groups()
            .into_iter()
            .map(|(k, terms)| {
                let terms: Vec<Value> =
                    terms.into_iter().map(|(m, c)| json!({"monomial": m, "coeff": c.to_string()})).collect();
                json!({"eps_power": k, "terms": terms})
            })
            .collect(),
    )
}

fn emit_json(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize") + "\n"
}

fn flow_in_chart(family: FamilyArg, index: u32, order: u32, chart: Chart) -> Result<Flow, Failure> {
    let flow = match family {
        FamilyArg::Tau => dkdv_flow(index, order)?,
        FamilyArg::T1 => extended_flow(index, order)?.0,
    };
    Ok(match chart {
        Chart::Uv => flow,
        chart => miura_transport(&flow, &chart_map(chart, order))?,
    })
}

fn render_flow(flow: &Flow, chart: Chart, order: u32, json: bool) -> String {
    let names = flow.ring().names().to_vec();
    if json {
        let components: Vec<Value> = names
            .iter()
            .enumerate()
            .map(|(a, name)| {
                json!({
                    "variable": name,
                    "potential": flow.potential(a).map_or(Value::Null, poly_json),
                    "rhs": poly_json(flow.rhs_of(a)),
                })
            })
            .collect();
        return emit_json(&json!({
            "flow": flow.label.to_string(),
            "chart": chart.to_string(),
            "order": order,
            "components": components,
        }));
    }
    let mut out = format!("{} in chart {chart} to ep^{order}\n", flow.label);
    for (a, name) in names.iter().enumerate() {
        if let Some(p) = flow.potential(a) {
            out.push_str(&format!("potential {name} = {p}\n"));
        }
    }
    for (a, name) in names.iter().enumerate() {
        out.push_str(&format!("{name}_t = {}\n", flow.rhs_of(a)));
    }
    out
}

fn series_coefficients(op: SeriesArg, order: usize) -> Result<Vec<String>, Failure> {
    if !order.is_multiple_of(2) {
        return Err(Failure::Usage(format!("--order must be even, got {order}")));
    }
    let g = order / 2;
    let named = |name: NamedOp| make_named(name, g).hat_series();
    let series: TaylorSeries = match op {
        SeriesArg::L | SeriesArg::Lhat => named(NamedOp::L),
        SeriesArg::R => named(NamedOp::R),
        SeriesArg::X | SeriesArg::Xhat => named(NamedOp::X),
        SeriesArg::T | SeriesArg::That => named(NamedOp::T),
        SeriesArg::Linv => named(NamedOp::Linv),
        SeriesArg::Rinv => named(NamedOp::Rinv),
        SeriesArg::I1 => i1_series(order),
        SeriesArg::I2 => i2_series(order),
    };
    Ok((0..=g).map(|k| series.coeff(2 * k).to_string()).collect())
}

fn run(cli: Cli) -> Result<String, Failure> {
    match cli.command {
        Command::Eval { expr, ring, order, json } => {
            let ring = RingSpec::by_name(&ring.chart().to_string()).expect("every chart names a ring");
            let p = parse_expr(&expr, &ring, order)?;
            Ok(if json { emit_json(&poly_json(&p)) } else { format!("{p}\n") })
        }
        Command::Flow { family, index, order, chart, json } => {
            let chart = chart.chart();
            let flow = flow_in_chart(family, index, order, chart)?;
            Ok(render_flow(&flow, chart, order, json))
        }
        Command::Reconstruct { index, order, json } => {
            let qcb = build_qcb(order);
            let rec = reconstruct_extended_flow(&qcb.q, index, &seed_coefficient(index), order)?;
            if json {
                let certs: Vec<Value> = rec
                    .certificates
                    .iter()
                    .map(|c| {
                        json!({
                            "eps_power": c.order,
                            "unknowns": c.unknowns,
                            "equations": c.equations,
                            "rank": c.rank,
                            "kernel_dim": c.kernel_dim,
                        })
                    })
                    .collect();
                return Ok(emit_json(&json!({
                    "index": index,
                    "order": order,
                    "chart": "uw",
                    "potential": poly_json(&rec.potential),
                    "certificates": certs,
                })));
            }
            let mut out = format!("t1_{index} in chart uw to ep^{order}\n");
            for c in &rec.certificates {
                out.push_str(&format!(
                    "ep^{}: {} unknowns, {} equations, rank {}, kernel {}\n",
                    c.order, c.unknowns, c.equations, c.rank, c.kernel_dim
                ));
            }
            out.push_str(&format!("unique: {}\n", rec.is_unique()));
            out.push_str(&format!("potential w = {}\n", rec.potential));
            Ok(out)
        }
        Command::Series { op, order, json } => {
            let coeffs = series_coefficients(op, order)?;
            Ok(if json { emit_json(&json!(coeffs)) } else { coeffs.iter().map(|c| format!("{c}\n")).collect() })
        }
        Command::Verify { suite } => {
            let ledger = run_suite(suite.suite());
            eprint!("{}", ledger.render_timings());
            print!("{}", ledger.render());
            if ledger.passed() {
                Ok(String::new())
            } else {
                Err(Failure::Verification)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Computation(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
