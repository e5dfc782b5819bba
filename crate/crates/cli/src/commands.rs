use partbias::asymptote::{asymptotic_report, balanced_bias_scan, ScanEntry};
use partbias::counter::{bias_table_with_budget, brute_force_oracle, BiasCount, CountBudget, OracleBudget};
use partbias::geometry::{ehrhart_estimate, simplex_volume, vform_volume, VForm};
use partbias::progression::{
    bias_direction_scan, c_limit_beta, c_limit_exact, c_limit_quadrature, conjecture_table,
    gamma_form, ProgressionSpec,
};
use partbias::{validate_system, Error, PartSystem, Result};
use serde_json::Value;

use crate::args::{
    ConjectureArgs, CountArgs, DirectionArgs, EhrhartArgs, Mode, ProgressionArgs, ScanArgs,
    SetArgs, VolumeArgs,
};
use crate::record::{count, float, list, opt_rational, rational, OutputRecord, Row};

/// A finished record plus whether any part of it ran out of budget.
pub struct Outcome {
    pub record: OutputRecord,
    pub budget_exceeded: bool,
}

impl From<OutputRecord> for Outcome {
    fn from(record: OutputRecord) -> Self {
        Outcome {
            record,
            budget_exceeded: false,
        }
    }
}

fn system(sets: &SetArgs) -> Result<PartSystem> {
    validate_system(&sets.r, &sets.s, &sets.i)
}

fn set_inputs(sets: &SetArgs) -> Row {
    Row::new()
        .with("r", list(&sets.r))
        .with("s", list(&sets.s))
        .with("i", list(&sets.i))
}

fn count_row(c: &BiasCount) -> Row {
    Row::new()
        .with("n", c.n)
        .with("total", count(&c.total))
        .with("greater", count(&c.greater))
        .with("less", count(&c.less))
        .with("equal", count(&c.equal))
        .with("ratio", opt_rational(c.ratio().as_ref()))
}

pub fn count_cmd(args: &CountArgs) -> Result<Outcome> {
    let sys = system(&args.sets)?;
    let ns: Vec<u64> = match args.n_max {
        Some(max) => {
            if args.step == 0 {
                return Err(Error::PreconditionViolated("--step must be positive".into()));
            }
            (0..=max).step_by(args.step as usize).collect()
        }
        None if args.n.is_empty() => {
            return Err(Error::PreconditionViolated("give --n or --n-max".into()))
        }
        None => args.n.clone(),
    };
    let rows = if args.oracle {
        ns.iter()
            .map(|&n| brute_force_oracle(&sys, n, OracleBudget::default()).map(|c| count_row(&c)))
            .collect::<Result<Vec<_>>>()?
    } else {
        let n_max = *ns.iter().max().expect("nonempty");
        let table = bias_table_with_budget(&sys, n_max, CountBudget::default())?;
        ns.iter().map(|&n| count_row(&table[n as usize])).collect()
    };
    let inputs = set_inputs(&args.sets)
        .with("n", list(&ns))
        .with("method", if args.oracle { "oracle" } else { "dp" });
    Ok(OutputRecord::new("count", inputs, rows).into())
}

pub fn asymptote_cmd(args: &SetArgs) -> Result<Outcome> {
    let report = asymptotic_report(&system(args)?)?;
    let row = Row::new()
        .with("ratio_limit", rational(&report.ratio_limit))
        .with("lead_total", rational(&report.lead_total))
        .with("lead_greater", rational(&report.lead_greater))
        .with("dimension", report.dimension);
    Ok(OutputRecord::new("asymptote", set_inputs(args), vec![row]).into())
}

pub fn volume_cmd(args: &VolumeArgs) -> Result<Outcome> {
    let forward = vform_volume(&VForm::new(args.a.clone(), args.b.clone()))?;
    let mut row = Row::new().with("v_ab", rational(&forward));
    if !args.a.is_empty() {
        let backward = vform_volume(&VForm::new(args.b.clone(), args.a.clone()))?;
        row = row.with("v_ba", rational(&backward));
    }
    let all: Vec<i64> = args.a.iter().chain(&args.b).copied().collect();
    if all.iter().all(|&x| x > 0) {
        row = row.with("simplex", rational(&simplex_volume(&all)?));
    }
    let inputs = Row::new().with("a", list(&args.a)).with("b", list(&args.b));
    Ok(OutputRecord::new("volume", inputs, vec![row]).into())
}

pub fn progression_cmd(args: &ProgressionArgs) -> Result<Outcome> {
    let spec = ProgressionSpec::new(args.r, args.s, args.m, args.n_sets)?;
    let beta_family = || {
        if args.s == args.m {
            Ok(())
        } else {
            Err(Error::PreconditionViolated(format!(
                "this mode needs s = m, got s = {}, m = {}",
                args.s, args.m
            )))
        }
    };
    let (mode, value) = match args.mode {
        Mode::Exact => ("exact", rational(&c_limit_exact(&spec))),
        Mode::Beta => {
            beta_family()?;
            ("beta", rational(&c_limit_beta(args.r, args.m, args.n_sets)?))
        }
        Mode::Quadrature => ("quadrature", float(c_limit_quadrature(&spec)?)),
        Mode::Gamma => {
            beta_family()?;
            ("gamma", float(gamma_form(args.r, args.m, args.n_sets)?))
        }
    };
    let inputs = Row::new()
        .with("r", args.r)
        .with("s", args.s)
        .with("m", args.m)
        .with("N", args.n_sets)
        .with("mode", mode);
    let row = Row::new().with("N", args.n_sets).with("limit", value);
    Ok(OutputRecord::new("progression", inputs, vec![row]).into())
}

pub fn conjecture_cmd(args: &ConjectureArgs) -> Result<Outcome> {
    let budget = CountBudget {
        max_cell_updates: args.budget,
    };
    let table = conjecture_table(args.r, args.s, args.m, &args.n_grid, &args.n_sets_grid, budget)?;
    let mut rows = Vec::new();
    for cell in &table.cells {
        let field = |f: fn(&BiasCount) -> Value| cell.counts.as_ref().map_or(Value::Null, f);
        rows.push(
            Row::new()
                .with("n", cell.n)
                .with("N", cell.n_sets)
                .with("total", field(|c| count(&c.total)))
                .with("greater", field(|c| count(&c.greater)))
                .with("less", field(|c| count(&c.less)))
                .with("equal", field(|c| count(&c.equal)))
                .with("ratio", opt_rational(cell.ratio.as_ref())),
        );
        if let Some(gap) = cell.gap_to_limit {
            log::info!("n = {}, N = {}: gap to N-limit {gap:+.4e}", cell.n, cell.n_sets);
        }
    }
    for limit in &table.limits {
        rows.push(
            Row::new()
                .with("n", Value::Null)
                .with("N", limit.n_sets)
                .with("total", Value::Null)
                .with("greater", Value::Null)
                .with("less", Value::Null)
                .with("equal", Value::Null)
                .with("ratio", rational(&limit.limit)),
        );
        log::info!(
            "N = {}: limit {:.10}, gap to target {:?}, cells monotone toward limit: {}",
            limit.n_sets,
            limit.limit.to_f64(),
            limit.gap_to_target,
            limit.cells_monotone_toward_limit
        );
    }
    if let Some(flag) = table.limits_monotone_toward_target {
        log::info!("per-N limits monotone toward 2^(-r/m): {flag}");
    }
    let budget_exceeded = table.any_budget_exceeded();
    if budget_exceeded {
        log::warn!("some cells exceeded the DP budget and are left undefined");
    }
    let inputs = Row::new()
        .with("r", args.r)
        .with("s", args.s)
        .with("m", args.m)
        .with("n_grid", list(&args.n_grid))
        .with("N_grid", list(&args.n_sets_grid));
    Ok(Outcome {
        record: OutputRecord::new("conjecture", inputs, rows),
        budget_exceeded,
    })
}

pub fn direction_cmd(args: &DirectionArgs) -> Result<Outcome> {
    let spec = ProgressionSpec::new(args.r, args.s, args.m, args.n_sets)?;
    let report = bias_direction_scan(&spec, args.n)?;
    let row = Row::new()
        .with("n", report.n)
        .with("greater", count(&report.greater))
        .with("less", count(&report.less))
        .with("greater_wins", report.greater_wins())
        .with("onset", report.onset.map_or(Value::Null, Value::from));
    let inputs = Row::new()
        .with("r", args.r)
        .with("s", args.s)
        .with("m", args.m)
        .with("N", args.n_sets)
        .with("n", args.n);
    Ok(OutputRecord::new("direction", inputs, vec![row]).into())
}

pub fn ehrhart_cmd(args: &EhrhartArgs) -> Result<Outcome> {
    let sys = validate_system(&args.r, &args.s, &[])?;
    let est = ehrhart_estimate(&sys, args.t, args.max_nodes)?;
    let row = Row::new()
        .with("t", est.dilation)
        .with("dimension", est.dimension)
        .with("count", count(&est.count))
        .with("scaled", rational(&est.scaled))
        .with("volume", rational(&est.volume));
    let inputs = Row::new()
        .with("r", list(&args.r))
        .with("s", list(&args.s))
        .with("t", args.t);
    Ok(OutputRecord::new("ehrhart", inputs, vec![row]).into())
}

fn scan_row(kind: &str, entry: &ScanEntry) -> Row {
    Row::new()
        .with("kind", kind)
        .with("r", list(&entry.r))
        .with("s", list(&entry.s))
        .with("ratio", rational(&entry.ratio))
}

pub fn scan_cmd(args: &ScanArgs) -> Result<Outcome> {
    let report = balanced_bias_scan(args.size, args.max_part);
    log::info!("examined {} systems", report.examined);
    let mut rows: Vec<Row> = report.candidates.iter().map(|e| scan_row("candidate", e)).collect();
    if let Some(min) = &report.minimum {
        rows.push(scan_row("minimum", min));
    }
    let inputs = Row::new()
        .with("size", args.size)
        .with("max_part", args.max_part)
        .with("examined", report.examined);
    Ok(OutputRecord::new("scan", inputs, rows).into())
}
