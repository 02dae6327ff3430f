//! Subcommand implementations. Each returns an [`Output`] built from library
//! results; nothing here does physics of its own.

use clap::{Args, ValueEnum};
use serde_json::{json, Map, Value};

use hyperpurify::noise::{schedule_to_channel, LcSchedule, NoiseKind, NoisePreset, PauliChannel};
use hyperpurify::optics::{coincidences, CircuitPreset, DetectorPattern};
use hyperpurify::purify::{self, purify_with_imperfect_spatial, spatial_state, PurifyReport, DEFAULT_SPATIAL_FIDELITY};
use hyperpurify::qstate::{bell_state, BellDiagonal, BellKind, DensityMatrix, HyperState};
use hyperpurify::recurrence::{bbpssw_iterate, compare, efficiency_ratio, SpdcModel};
use hyperpurify::reference::{self, Measured};
use hyperpurify::tomography::{self, trial_seed, PauliLabel, Sampling};
use hyperpurify::tol;

use crate::output::{Cell, Output, Table};
use crate::CliError;

type CmdResult = Result<Output, CliError>;

fn to_json<T: serde::Serialize>(value: &T) -> Value {
    serde_json::to_value(value).expect("library types serialize")
}

fn phi_plus() -> hyperpurify::PureState {
    bell_state(BellKind::PhiPlus)
}

/// The pipeline never loses probability mass: every click lands on an
/// accepted pattern.
fn check_report(report: &PurifyReport) -> Result<(), CliError> {
    if (report.total_success_prob - 1.0).abs() > tol::PIPELINE {
        return Err(CliError::Invariant(format!(
            "accepted-pattern probability {} differs from 1",
            report.total_success_prob
        )));
    }
    Ok(())
}

fn pattern_map<T: serde::Serialize>(values: impl IntoIterator<Item = (DetectorPattern, T)>) -> Value {
    Value::Object(values.into_iter().map(|(p, v)| (p.to_string(), to_json(&v))).collect::<Map<_, _>>())
}

fn measured_json(m: Measured) -> Value {
    json!({ "value": m.value, "sigma": m.sigma })
}

#[derive(Debug, Args)]
pub struct Table1Args {
    /// Fidelity of the isotropic spatial-mode state with |phi+>.
    #[arg(long, default_value_t = DEFAULT_SPATIAL_FIDELITY)]
    pub spatial_fidelity: f64,
    /// Circuit preset (fig2c or fig1).
    #[arg(long, default_value = "fig2c")]
    pub preset: CircuitPreset,
    /// Estimate fidelities by simulated tomography with this many shots per
    /// setting instead of computing them exactly.
    #[arg(long)]
    pub shots: Option<u64>,
    /// Resampling trials behind each tomography error bar.
    #[arg(long, default_value_t = 50)]
    pub trials: usize,
    /// Include before/after polarization matrices in JSON output.
    #[arg(long)]
    pub with_matrices: bool,
}

pub fn table1(args: &Table1Args, seed: u64) -> CmdResult {
    let rows = purify::table1(args.spatial_fidelity, args.preset)?;
    let spat = spatial_state(args.spatial_fidelity)?;
    let sampled = args.shots.map(Sampling::Shots);
    let mut header: Vec<String> = ["noise", "before_pol", "before_path"].map(String::from).to_vec();
    header.extend(DetectorPattern::accepted().iter().map(|p| p.to_string()));
    header.extend(["aggregate", "success_prob"].map(String::from));
    header.extend(["measured_before_pol", "measured_before_path"].map(String::from));
    header.extend(DetectorPattern::accepted().iter().map(|p| format!("measured_{p}")));
    if sampled.is_some() {
        header.extend(["before_pol", "before_path"].iter().map(|c| format!("{c}_err")));
        header.extend(DetectorPattern::accepted().iter().map(|p| format!("{p}_err")));
    }
    let mut table = Table::new(header);
    let mut records = Vec::new();

    for (r, (row, preset)) in rows.iter().zip(NoisePreset::ALL).enumerate() {
        let lab = reference::measured(preset);
        let report = purify_with_imperfect_spatial(&preset.noisy_polarization(), &spat, args.preset)?;
        check_report(&report)?;
        let before_rho = preset.noisy_polarization().to_density();

        let mut sim: Vec<Option<f64>> = vec![Some(row.before_pol), Some(row.before_path)];
        sim.extend(row.after);
        let mut errs: Vec<Option<f64>> = Vec::new();
        if let Some(sampling) = sampled {
            let mut states: Vec<Option<&DensityMatrix>> = vec![Some(&before_rho), Some(&spat)];
            states.extend(report.outcomes.iter().map(|o| o.conditional_pol.as_ref()));
            sim.clear();
            for (c, state) in states.into_iter().enumerate() {
                let est = state
                    .map(|rho| tomography::estimate(rho, &phi_plus(), sampling, args.trials, trial_seed(seed, (r * 8 + c) as u64)))
                    .transpose()?;
                sim.push(est.as_ref().and_then(|e| e.fidelity_vs_target));
                errs.push(est.as_ref().and_then(|e| e.error_bar));
            }
        }

        let mut cells: Vec<Cell> = vec![row.noise.clone().into()];
        cells.extend(sim.iter().copied().map(Cell::opt));
        cells.push(Cell::opt(row.aggregate));
        cells.push(Cell::Num(row.success_prob));
        cells.push(Cell::Num(lab.before_pol.value));
        cells.push(Cell::Num(lab.before_path.value));
        cells.extend(lab.after.iter().map(|m| Cell::Num(m.value)));
        cells.extend(errs.iter().copied().map(Cell::opt));
        table.push(cells);

        let accepted = DetectorPattern::accepted();
        let mut rec = json!({
            "noise": row.noise,
            "kind": row.kind,
            "p": row.p,
            "channel": preset.channel(),
            "before_pol": sim[0],
            "before_path": sim[1],
            "after": pattern_map(accepted.iter().copied().zip(sim[2..].iter().copied())),
            "aggregate": row.aggregate,
            "success_prob": row.success_prob,
            "measured": {
                "before_pol": measured_json(lab.before_pol),
                "before_path": measured_json(lab.before_path),
                "after": pattern_map(accepted.iter().copied().zip(lab.after.map(measured_json))),
            },
        });
        if sampled.is_some() {
            rec["error_bars"] = json!({
                "before_pol": errs[0],
                "before_path": errs[1],
                "after": pattern_map(accepted.iter().copied().zip(errs[2..].iter().copied())),
            });
        }
        if args.with_matrices {
            rec["matrices"] = json!({
                "before": before_rho,
                "after": pattern_map(report.outcomes.iter().map(|o| (o.pattern, &o.conditional_pol))),
            });
        }
        records.push(rec);
    }

    let json = json!({
        "preset": args.preset,
        "spatial_fidelity": args.spatial_fidelity,
        "mode": match sampled { Some(_) => "sampled", None => "exact" },
        "shots_per_setting": args.shots,
        "rows": records,
    });
    Ok(Output { json, summary: Vec::new(), table })
}

#[derive(Debug, Args)]
pub struct PurifyArgs {
    /// Noise kind loaded on photon B's polarization (bf or white).
    #[arg(long, requires = "p", conflicts_with = "noise_preset")]
    pub noise: Option<NoiseKind>,
    /// Total error probability of the noise.
    #[arg(long, requires = "noise")]
    pub p: Option<f64>,
    /// Named LC schedule (BF0.3/0.5/0.7, white0.3/0.5/0.7).
    #[arg(long)]
    pub noise_preset: Option<NoisePreset>,
    #[arg(long, default_value_t = DEFAULT_SPATIAL_FIDELITY)]
    pub spatial_fidelity: f64,
    #[arg(long, default_value = "fig2c")]
    pub preset: CircuitPreset,
    /// Also report all 16 coincidence patterns, rejected ones included.
    #[arg(long)]
    pub all_patterns: bool,
}

fn noise_input(kind: Option<NoiseKind>, p: Option<f64>, preset: Option<NoisePreset>) -> Result<(String, PauliChannel), CliError> {
    match (kind, p, preset) {
        (_, _, Some(np)) => Ok((np.name().to_owned(), np.channel())),
        (Some(k), Some(p), None) => Ok((format!("{k}{p}"), k.channel(p)?)),
        _ => Ok(("none".to_owned(), PauliChannel::identity())),
    }
}

pub fn purify(args: &PurifyArgs) -> CmdResult {
    let (noise, channel) = noise_input(args.noise, args.p, args.noise_preset)?;
    let pol = channel.apply_to_bell_diagonal(&BellDiagonal::pure(BellKind::PhiPlus));
    let spat = spatial_state(args.spatial_fidelity)?;
    let report = purify_with_imperfect_spatial(&pol, &spat, args.preset)?;
    check_report(&report)?;

    let mut table = Table::new(["pattern", "probability", "fidelity"]);
    for o in &report.outcomes {
        table.push(vec![o.pattern.to_string().into(), Cell::Num(o.probability), Cell::opt(o.fidelity)]);
    }
    let summary = vec![
        ("noise".to_owned(), Cell::Text(noise.clone())),
        ("before_pol".to_owned(), Cell::Num(pol.f1)),
        ("before_path".to_owned(), Cell::Num(spat.fidelity(&phi_plus())?)),
        ("success_prob".to_owned(), Cell::Num(report.total_success_prob)),
        ("aggregate".to_owned(), Cell::opt(report.aggregate_fidelity)),
    ];
    let mut json = json!({
        "noise": noise,
        "channel": channel,
        "spatial_fidelity": args.spatial_fidelity,
        "input_weights": pol,
        "before_pol": pol.f1,
        "before_path": spat.fidelity(&phi_plus())?,
        "report": report,
    });
    if args.all_patterns {
        let state = HyperState::product(pol.to_density(), spat)?;
        json["coincidences"] = to_json(&coincidences(&state, &args.preset.circuit())?);
    }
    Ok(Output { json, summary, table })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Stage {
    Before,
    After,
}

#[derive(Debug, Args)]
pub struct DensmatArgs {
    /// Noise preset (BF0.3/0.5/0.7, white0.3/0.5/0.7).
    pub noise: NoisePreset,
    #[arg(long, value_enum, default_value = "after")]
    pub stage: Stage,
    /// After stage only: one accepted pattern instead of the mixture over all four.
    #[arg(long)]
    pub pattern: Option<DetectorPattern>,
    #[arg(long, default_value_t = DEFAULT_SPATIAL_FIDELITY)]
    pub spatial_fidelity: f64,
    #[arg(long, default_value = "fig2c")]
    pub preset: CircuitPreset,
}

const POL_BASIS: [&str; 4] = ["HH", "HV", "VH", "VV"];

pub fn densmat(args: &DensmatArgs) -> CmdResult {
    let before = args.noise.noisy_polarization();
    let rho = match args.stage {
        Stage::Before => before.to_density(),
        Stage::After => {
            let report = purify_with_imperfect_spatial(&before, &spatial_state(args.spatial_fidelity)?, args.preset)?;
            check_report(&report)?;
            match args.pattern {
                None => report.mixed_output()?,
                Some(p) if p.is_accepted() => report
                    .pattern(p)
                    .and_then(|o| o.conditional_pol.clone())
                    .ok_or_else(|| CliError::Usage(format!("pattern {p} never fires for this input")))?,
                Some(p) => return Err(CliError::Usage(format!("{p} is not an accepted pattern"))),
            }
        }
    };
    let fidelity = rho.fidelity(&phi_plus())?;
    let mut table = Table::new(["row", "col", "ket", "bra", "re", "im"]);
    let m = rho.matrix();
    for r in 0..4 {
        for c in 0..4 {
            table.push(vec![
                Cell::Int(r as u64),
                Cell::Int(c as u64),
                POL_BASIS[r].into(),
                POL_BASIS[c].into(),
                Cell::Num(m[(r, c)].re),
                Cell::Num(m[(r, c)].im),
            ]);
        }
    }
    let stage = match args.stage {
        Stage::Before => "before",
        Stage::After => "after",
    };
    let summary = vec![
        ("noise".to_owned(), Cell::from(args.noise.name())),
        ("stage".to_owned(), Cell::from(stage)),
        ("fidelity".to_owned(), Cell::Num(fidelity)),
    ];
    let json = json!({
        "noise": args.noise.name(),
        "stage": stage,
        "pattern": args.pattern.map(|p| p.to_string()),
        "spatial_fidelity": args.spatial_fidelity,
        "basis": POL_BASIS,
        "fidelity": fidelity,
        "rho": rho,
    });
    Ok(Output { json, summary, table })
}

#[derive(Debug, Args)]
pub struct ScheduleArgs {
    /// Preset to print; all six when omitted.
    #[arg(conflicts_with_all = ["durations", "from_json"])]
    pub preset: Option<NoisePreset>,
    /// Custom durations t1 t2 t3 t4 in seconds (I, X, Y, Z settings).
    #[arg(long, num_args = 4, value_names = ["T1", "T2", "T3", "T4"], allow_negative_numbers = true, conflicts_with = "from_json")]
    pub durations: Option<Vec<f64>>,
    /// Custom schedule as a JSON object {"t1":..,"t2":..,"t3":..,"t4":..}.
    #[arg(long)]
    pub from_json: Option<String>,
}

pub fn schedule(args: &ScheduleArgs) -> CmdResult {
    let entries: Vec<(String, LcSchedule)> = if let Some(d) = &args.durations {
        vec![("custom".to_owned(), LcSchedule::new(d[0], d[1], d[2], d[3])?)]
    } else if let Some(text) = &args.from_json {
        let s: LcSchedule = serde_json::from_str(text).map_err(|e| CliError::Usage(format!("schedule JSON: {e}")))?;
        vec![("custom".to_owned(), LcSchedule::new(s.t1, s.t2, s.t3, s.t4)?)]
    } else {
        let presets = args.preset.map_or(NoisePreset::ALL.to_vec(), |p| vec![p]);
        presets.into_iter().map(|p| (p.name().to_owned(), p.schedule())).collect()
    };
    let mut table = Table::new(["preset", "t1", "t2", "t3", "t4", "cycle", "p_i", "p_x", "p_y", "p_z"]);
    let mut records = Vec::new();
    for (name, s) in entries {
        let ch = schedule_to_channel(&s)?;
        let report = ch.check_cptp(hyperpurify::optics::Photon::B)?;
        if !report.passes() {
            return Err(CliError::Invariant(format!("{name}: channel fails the complete-positivity check")));
        }
        let mut row = vec![Cell::Text(name.clone())];
        row.extend(s.durations().iter().map(|&t| Cell::Num(t)));
        row.push(Cell::Num(s.cycle()));
        row.extend(ch.probabilities().iter().map(|&p| Cell::Num(p)));
        table.push(row);
        records.push(json!({ "preset": name, "schedule": s, "cycle": s.cycle(), "channel": ch }));
    }
    Ok(Output { json: Value::Array(records), summary: Vec::new(), table })
}

#[derive(Debug, Args)]
pub struct BbpsswArgs {
    /// Initial isotropic fidelity.
    #[arg(long)]
    pub f0: f64,
    #[arg(long, default_value_t = 3)]
    pub rounds: usize,
}

pub fn bbpssw(args: &BbpsswArgs) -> CmdResult {
    let traj = bbpssw_iterate(args.f0, args.rounds)?;
    let mut table = Table::new(["round", "fidelity", "success_prob", "pairs", "expected_pairs"]);
    table.push(vec![Cell::Int(0), Cell::Num(args.f0), Cell::Missing, Cell::Int(1), Cell::Num(1.0)]);
    let mut expected = 1.0;
    for (k, step) in traj.steps.iter().enumerate() {
        expected = 2.0 * expected / step.success_prob;
        let pairs = 1u64.checked_shl(k as u32 + 1).map_or(Cell::Sci(2f64.powi(k as i32 + 1)), Cell::Int);
        table.push(vec![
            Cell::Int(k as u64 + 1),
            Cell::Num(step.output.f1),
            Cell::Num(step.success_prob),
            pairs,
            Cell::Num(expected),
        ]);
    }
    let summary = vec![
        ("final_fidelity".to_owned(), Cell::Num(traj.final_fidelity())),
        ("batch_success_prob".to_owned(), Cell::Num(traj.batch_success_prob)),
    ];
    Ok(Output { json: to_json(&traj), summary, table })
}

#[derive(Debug, Args)]
pub struct EfficiencyArgs {
    /// Probability that one source attempt yields a pair.
    #[arg(long, default_value_t = 0.001)]
    pub ps: f64,
    /// Simultaneous pairs a two-copy scheme needs.
    #[arg(long, default_value_t = 4)]
    pub copies: u32,
}

pub fn efficiency(args: &EfficiencyArgs) -> CmdResult {
    let model = SpdcModel::new(args.ps, args.copies)?;
    let ratio = efficiency_ratio(&model);
    let mut table = Table::new(["pair_success_prob", "copies", "one_step_rate", "two_copy_rate", "ratio"]);
    let two_copy = args.ps.powi(args.copies as i32);
    table.push(vec![Cell::Sci(args.ps), Cell::Int(args.copies.into()), Cell::Sci(args.ps), Cell::Sci(two_copy), Cell::Sci(ratio)]);
    let json = json!({
        "model": model,
        "one_step_rate": args.ps,
        "two_copy_rate": two_copy,
        "efficiency_ratio": ratio,
    });
    Ok(Output { json, summary: vec![("efficiency_ratio".to_owned(), Cell::Sci(ratio))], table })
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    /// Initial isotropic polarization fidelity.
    #[arg(long)]
    pub f0: f64,
    #[arg(long, default_value_t = 0.001)]
    pub ps: f64,
    #[arg(long, default_value_t = 4)]
    pub copies: u32,
    /// Recurrence rounds to tabulate.
    #[arg(long, default_value_t = 3)]
    pub rounds: usize,
    /// Fidelity the recurrence scheme must reach.
    #[arg(long, default_value_t = 0.9)]
    pub target: f64,
    /// Spatial-mode fidelity for the one-step scheme (ideal by default).
    #[arg(long, default_value_t = 1.0)]
    pub spatial_fidelity: f64,
}

pub fn compare_cmd(args: &CompareArgs) -> CmdResult {
    let model = SpdcModel::new(args.ps, args.copies)?;
    let c = compare(args.f0, model, args.rounds, args.target, args.spatial_fidelity)?;
    let mut table = Table::new(["method", "rounds", "pairs", "fidelity", "success_prob", "purifiable"]);
    table.push(vec![
        "one-step".into(),
        Cell::Int(1),
        Cell::Int(c.one_step_pairs.into()),
        Cell::Num(c.one_step_fidelity),
        Cell::Num(c.one_step_success_prob),
        "yes".into(),
    ]);
    let purifiable: Cell = if c.recurrence_purifiable { "yes".into() } else { "no".into() };
    match &c.recurrence {
        Some(t) => table.push(vec![
            "recurrence".into(),
            Cell::Int(t.steps.len() as u64),
            Cell::Int(t.pair_cost),
            Cell::Num(t.final_fidelity()),
            Cell::Num(t.batch_success_prob),
            purifiable,
        ]),
        None => table.push(vec![
            "recurrence".into(),
            Cell::Int(args.rounds as u64),
            Cell::Missing,
            Cell::Missing,
            Cell::Missing,
            purifiable,
        ]),
    }
    let summary = vec![
        ("efficiency_ratio".to_owned(), Cell::Sci(c.efficiency_ratio)),
        ("target_fidelity".to_owned(), Cell::Num(c.target_fidelity)),
        (
            "rounds_to_target".to_owned(),
            c.recurrence_rounds_to_target.map_or(Cell::Missing, |r| Cell::Int(r as u64)),
        ),
    ];
    Ok(Output { json: to_json(&c), summary, table })
}

#[derive(Debug, Args)]
pub struct TomoArgs {
    /// Noise preset loaded before purification; ideal |phi+> when omitted.
    #[arg(long)]
    pub noise_preset: Option<NoisePreset>,
    #[arg(long, value_enum, default_value = "before")]
    pub stage: Stage,
    /// Measure the spatial-mode state through the mode-conversion stage.
    #[arg(long)]
    pub path: bool,
    #[arg(long, default_value_t = DEFAULT_SPATIAL_FIDELITY)]
    pub spatial_fidelity: f64,
    #[arg(long, default_value = "fig2c")]
    pub preset: CircuitPreset,
    /// Shots per measurement setting; exact expectations when omitted.
    #[arg(long)]
    pub shots: Option<u64>,
    /// Resampling trials for the error bar.
    #[arg(long, default_value_t = 50)]
    pub trials: usize,
    /// Target Bell state (phi+, phi-, psi+, psi-).
    #[arg(long, default_value = "phi+")]
    pub target: BellKind,
}

pub fn tomo(args: &TomoArgs, seed: u64) -> CmdResult {
    let pol = args
        .noise_preset
        .map_or(BellDiagonal::pure(BellKind::PhiPlus), NoisePreset::noisy_polarization);
    let spat = spatial_state(args.spatial_fidelity)?;
    let rho = match (args.path, args.stage) {
        (true, _) => tomography::spatial_as_polarization(&HyperState::product(pol.to_density(), spat)?)?,
        (false, Stage::Before) => pol.to_density(),
        (false, Stage::After) => {
            let report = purify_with_imperfect_spatial(&pol, &spat, args.preset)?;
            check_report(&report)?;
            report.mixed_output()?
        }
    };
    let target = bell_state(args.target);
    let sampling = args.shots.map_or(Sampling::Exact, Sampling::Shots);
    let (records, mut rec) = tomography::simulate_tomography(&rho, sampling, seed)?;
    rec.fidelity_vs_target = Some(rec.rho.fidelity(&target)?);
    rec.error_bar = Some(tomography::error_bar(&rho, &target, sampling, args.trials, trial_seed(seed, u64::MAX))?);
    let expectations = match sampling {
        Sampling::Exact => tomography::pauli_expectations(&rho)?,
        Sampling::Shots(_) => tomography::expectations_from_records(&records)?,
    };

    let mut table = Table::new(["observable", "value"]);
    let mut exp_json = Map::new();
    for a in PauliLabel::ALL {
        for b in PauliLabel::ALL {
            let v = expectations[a as usize][b as usize];
            table.push(vec![format!("{a}{b}").into(), Cell::Num(v)]);
            exp_json.insert(format!("{a}{b}"), json!(v));
        }
    }
    let method = to_json(&rec.method);
    let summary = vec![
        ("mode".to_owned(), Cell::from(if args.shots.is_some() { "sampled" } else { "exact" })),
        ("method".to_owned(), Cell::Text(method.as_str().unwrap_or_default().to_owned())),
        ("target".to_owned(), Cell::Text(args.target.to_string())),
        ("fidelity".to_owned(), Cell::opt(rec.fidelity_vs_target)),
        ("error_bar".to_owned(), Cell::opt(rec.error_bar)),
    ];
    let json = json!({
        "input": {
            "noise": args.noise_preset.map(|p| p.name()),
            "stage": if args.path { "path" } else if args.stage == Stage::Before { "before" } else { "after" },
            "spatial_fidelity": args.spatial_fidelity,
        },
        "mode": if args.shots.is_some() { "sampled" } else { "exact" },
        "shots_per_setting": args.shots,
        "seed": seed,
        "target": args.target.to_string(),
        "records": records,
        "expectations": exp_json,
        "reconstruction": rec,
    });
    Ok(Output { json, summary, table })
}
