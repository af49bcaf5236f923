use serde::Serialize;

use oc_mirror::asymptotics::{ratio_rows, Branch, NumericParams};
use oc_mirror::closed::{restricted_i_components, z_coeff, IComponent};
use oc_mirror::correspondence::{check, disk_potential_bessel, f_rows, rhs_assemble, CorrespondenceReport, DiffEntry, ExcMode};
use oc_mirror::geometry::P1Class;
use oc_mirror::localization::{graph_contributions, MarkingSpec};
use oc_mirror::series::rational::format_rational;
use oc_mirror::series::{FormalSeries, TruncationWindow, Var};

use crate::output::{csv_bytes, emit, json_bytes};
use crate::{
    AsymptoticsArgs, BranchArg, CheckArgs, Command, Failure, Format, IfunctionArgs, LocalizeArgs, OutputArgs,
    RhsArgs, TableArgs, WindowArgs, MAX_LOCALIZE_DEGREE,
};

pub fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Disk(a) => disk(a),
        Command::Rhs(a) => rhs(a),
        Command::Check(a) => check_cmd(a),
        Command::Localize(a) => localize(a),
        Command::Ifunction(a) => ifunction(a),
        Command::Asymptotics(a) => asymptotics(a),
    }
}

fn window(w: &WindowArgs) -> TruncationWindow {
    TruncationWindow::new(w.max_q, w.max_t, w.max_mu, w.min_v, 1)
}

fn format_or(out: &OutputArgs, default: Format, allowed: &[Format]) -> Result<Format, Failure> {
    let f = out.format.unwrap_or(default);
    if allowed.contains(&f) {
        Ok(f)
    } else {
        Err(Failure::Usage(format!("format {f:?} is not available for this command")))
    }
}

fn table<T: Serialize>(out: &OutputArgs, header: &[&str], rows: &[T]) -> Result<(), Failure> {
    let bytes = match format_or(out, Format::Csv, &[Format::Csv, Format::Json])? {
        Format::Json => json_bytes(&rows)?,
        _ => csv_bytes(header, rows)?,
    };
    emit(out.output.as_deref(), &bytes)
}

fn disk(a: TableArgs) -> Result<(), Failure> {
    let f = disk_potential_bessel(&window(&a.window));
    table(&a.out, &["mu", "q_power", "t0_power", "v_power", "value"], &f_rows(&f))
}

fn series_rows(s: &FormalSeries) -> Vec<DiffEntry> {
    s.terms()
        .map(|(m, c)| DiffEntry {
            x: m.exp(Var::X),
            q: m.exp(Var::Q),
            t: m.exp(Var::T),
            v: m.exp(Var::V),
            value: format_rational(c),
        })
        .collect()
}

fn rhs(a: RhsArgs) -> Result<(), Failure> {
    let mode = if a.no_exc { ExcMode::Omitted } else { ExcMode::Standard };
    let s = rhs_assemble(&window(&a.window), mode)?;
    table(&a.out, &["X", "Q", "T", "V", "value"], &series_rows(&s))
}

fn report_text(r: &CorrespondenceReport) -> String {
    let w = &r.window;
    let mut s = format!(
        "window maxQ={} maxT={} maxAbsMu={} V=[{}, {}]\nlhs terms {}, rhs terms {}, diff terms {}\n",
        w.max_q,
        w.max_t,
        w.max_abs_x,
        w.min_v,
        w.max_v,
        r.lhs.len(),
        r.rhs.len(),
        r.diff.len()
    );
    for e in r.diff_entries() {
        s.push_str(&format!("  X^{} Q^{} T^{} V^{}: {}\n", e.x, e.q, e.t, e.v, e.value));
    }
    s.push_str(if r.pass { "PASS\n" } else { "FAIL\n" });
    s
}

fn check_cmd(a: CheckArgs) -> Result<(), Failure> {
    let mode = if a.corrupt_exc { ExcMode::Corrupted } else { ExcMode::Standard };
    let report = check(&window(&a.window), mode)?;
    let bytes = match format_or(&a.out, Format::Text, &[Format::Text, Format::Json])? {
        Format::Json => json_bytes(&report.to_json())?,
        _ => report_text(&report).into_bytes(),
    };
    emit(a.out.output.as_deref(), &bytes)?;
    if report.pass {
        Ok(())
    } else {
        Err(Failure::CheckFailed)
    }
}

#[derive(Serialize)]
struct GraphRow {
    labels: String,
    edges: String,
    markings: String,
    automorphisms: u64,
    contribution: String,
}

fn localize(a: LocalizeArgs) -> Result<(), Failure> {
    if a.degree == 0 || a.degree > MAX_LOCALIZE_DEGREE {
        return Err(Failure::Usage(format!(
            "--degree must be between 1 and {MAX_LOCALIZE_DEGREE}"
        )));
    }
    if a.markings > 4 {
        return Err(Failure::Usage("--markings is capped at 4".into()));
    }
    let class = P1Class::by_name(&a.class)?;
    let marks: Vec<MarkingSpec> = (0..a.markings).map(|_| MarkingSpec::insertion(class.clone(), a.psi)).collect();
    let contributions = graph_contributions(&marks, a.degree, &|_| true)?;
    let join = |it: Vec<String>| it.join(" ");
    let rows: Vec<GraphRow> = contributions
        .iter()
        .map(|c| GraphRow {
            labels: join(c.graph.labels.iter().map(u8::to_string).collect()),
            edges: join(c.graph.edges.iter().map(|(x, y, d)| format!("{x}-{y}:{d}")).collect()),
            markings: join(c.graph.markings.iter().map(usize::to_string).collect()),
            automorphisms: c.automorphisms,
            contribution: c.value.to_string(),
        })
        .collect();
    table(&a.out, &["labels", "edges", "markings", "automorphisms", "contribution"], &rows)
}

#[derive(Serialize)]
struct IRow {
    component: &'static str,
    q1_power: i32,
    q2_power: i32,
    t0_power: i32,
    v_power: i32,
    value: String,
}

fn ifunction(a: IfunctionArgs) -> Result<(), Failure> {
    let w = window(&a.window);
    let r = restricted_i_components(&w);
    let mut rows = Vec::new();
    for c in [IComponent::First, IComponent::Second, IComponent::Third] {
        let s = z_coeff(r.component(c), a.zcoeff, &w)?;
        rows.extend(s.terms().map(|(m, v)| IRow {
            component: c.name(),
            q1_power: m.exp(Var::Q1),
            q2_power: m.exp(Var::Q2),
            t0_power: m.exp(Var::T),
            v_power: m.exp(Var::V),
            value: format_rational(v),
        }));
    }
    table(&a.out, &["component", "q1_power", "q2_power", "t0_power", "v_power", "value"], &rows)
}

fn asymptotics(a: AsymptoticsArgs) -> Result<(), Failure> {
    let params = NumericParams {
        q0: a.q0,
        q1: a.q1,
        q2: a.q2,
        z: a.z,
        branch: match a.branch {
            BranchArg::First => Branch::First,
            BranchArg::Second => Branch::Second,
        },
        ..NumericParams::default()
    };
    let rows = ratio_rows(&params, &a.n, &a.l)?;
    table(&a.out, &["l", "v_l", "N", "ratio", "abs_error"], &rows)
}
