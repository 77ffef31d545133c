//! Subcommand bodies. Each computes everything first and writes files last.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
use std::path::PathBuf;

use rayon::prelude::*;
use serde_json::{json, Value};
use tadpole::asymptotics::{bound_constants, comparison_table, validity_threshold, Regime};
use tadpole::critical::find_critical;
use tadpole::spectrum::{embedded_eigenvalues, no_negative_eigenvalues, scattering};
use tadpole::wave::log_omega_grid;
use tadpole::{GraphFunction64, WaveSolution64};

use crate::config::{Format, RunConfig};
use crate::error::{CliError, CliResult};
use crate::output::{json_document, record_csv, write_file, Meta, Table};
use crate::svg::Plot;

/// Default mass-curve sweep in `ω`.
pub const SWEEP_OMEGA: (f64, f64) = (-1e4, -1e-6);
/// Default asymptotics sweep in `ω`.
pub const ASYMPTOTIC_OMEGA: (f64, f64) = (-100.0, -1e-6);
/// Largest wavenumber in the scattering table.
pub const SPECTRUM_K_MAX: f64 = 10.0;

/// What a command produced: text for stdout and the files written.
#[derive(Debug, Default)]
pub struct Outcome {
    pub stdout: String,
    pub files: Vec<PathBuf>,
    /// Failed invariants, for `verify`.
    pub failed: usize,
    pub total: usize,
}

fn ext(cfg: &RunConfig) -> &'static str {
    match cfg.format {
        Format::Csv => "csv",
        Format::Json => "json",
    }
}

fn render_table(cfg: &RunConfig, table: &Table, meta: &Meta) -> String {
    match cfg.format {
        Format::Csv => table.to_csv(meta),
        Format::Json => table.to_json(meta),
    }
}

fn render_record(cfg: &RunConfig, body: Value, meta: &Meta) -> String {
    match cfg.format {
        Format::Csv => record_csv(meta, &body),
        Format::Json => json_document(meta, body),
    }
}

fn truncation(cfg: &RunConfig, sol: &WaveSolution64) -> f64 {
    cfg.l_trunc_factor / sol.eps_sq
}

pub fn solve(cfg: &RunConfig, omega: Option<f64>, u0: Option<f64>) -> CliResult<Outcome> {
    let solver = cfg.solver();
    let sol = match (omega, u0) {
        (Some(w), None) => {
            if !(w < 0.0) || !w.is_finite() {
                return Err(CliError::usage(format!("omega must be negative, got {w}")));
            }
            solver.solve_from_omega(w)?
        }
        (None, Some(u)) => {
            if !(u > 0.0 && u < 1.0) {
                return Err(CliError::usage(format!("u0 must lie in (0, 1), got {u}")));
            }
            solver.solve_from_u0(u)?
        }
        _ => return Err(CliError::usage("exactly one of --omega or --u0 is required")),
    };
    let graph = sol.sample_graph_profile(cfg.grid_n, truncation(cfg, &sol));
    let res = graph.verify_residuals();
    let ints = graph.integrals();
    let bounds = bound_constants(sol.omega);
    let q = ints.quotient();
    let (bd_value, bd_slope) = sol.boundary_defects();
    let body = json!({
        "E": sol.params.energy,
        "U_plus": sol.params.u_plus,
        "U0": sol.params.u0,
        "a": sol.params.a,
        "eps": sol.eps,
        "omega": sol.omega,
        "mu": sol.mu,
        "rho1": sol.rho.rho1,
        "rho2": sol.rho.rho2,
        "rho3": sol.rho.rho3,
        "nu": sol.nu,
        "k": sol.k,
        "k_comp": sol.k_comp,
        "turning_residual": sol.params.turning_residual(),
        "boundary_value_defect": bd_value,
        "boundary_slope_defect": bd_slope,
        "vertex_continuity_defect": res.continuity,
        "kirchhoff_defect": res.kirchhoff,
        "symmetry_defect": res.symmetry,
        "max_equation_residual": res.max_equation_residual(),
        "monotone": graph.is_monotone(),
        "variational_quotient": q,
        "lower_bound": bounds.b_halfline,
        "upper_bound": bounds.b_line,
        "within_bounds": bounds.b_halfline < q && q < bounds.b_line,
        "nehari_defect": ints.nehari_defect(),
    });
    let meta = Meta::new("solve", cfg);
    Ok(Outcome {
        stdout: render_record(cfg, body, &meta),
        ..Default::default()
    })
}

pub fn mass_curve(cfg: &RunConfig) -> CliResult<Outcome> {
    let grid = log_omega_grid(SWEEP_OMEGA.0, SWEEP_OMEGA.1, cfg.grid_n);
    let curve = cfg.solver().mass_curve_omega(&grid)?;
    let mut table = Table::new(vec!["omega", "mu", "dmu_sign"]);
    for s in &curve.samples {
        table.push(vec![json!(s.omega), json!(s.mu), json!(s.dmu_sign)]);
    }
    let first = curve.samples[0];
    let last = curve.samples[curve.samples.len() - 1];
    let meta = Meta::new("mass-curve", cfg)
        .with("sign_changes", curve.sign_changes())
        .with("interior_maxima", curve.interior_maxima().len())
        .with("mu_line_defect", (first.mu - FRAC_PI_2).abs())
        .with("mu_halfline_defect", (last.mu - FRAC_PI_4).abs());
    let plot = Plot::new("Mass versus frequency", "log10 |omega|", "mu")
        .series(
            "mu(omega)",
            curve.samples.iter().map(|s| ((-s.omega).log10(), s.mu)).collect(),
        )
        .level(FRAC_PI_4, "pi/4")
        .level(FRAC_PI_2, "pi/2");

    let data = render_table(cfg, &table, &meta);
    let svg = plot.render();
    let dir = &cfg.output_dir;
    let files = vec![
        write_file(dir, &format!("mass_curve.{}", ext(cfg)), &data)?,
        write_file(dir, "mass_curve.svg", &svg)?,
    ];
    Ok(Outcome {
        stdout: format!(
            "mass curve: {} points, {} sign change(s), {} interior maximum\n",
            curve.samples.len(),
            curve.sign_changes(),
            curve.interior_maxima().len()
        ),
        files,
        ..Default::default()
    })
}

pub fn critical(cfg: &RunConfig) -> CliResult<Outcome> {
    let cr = find_critical(&cfg.solver())?;
    let body = json!({
        "U1": cr.u1,
        "omega1": cr.omega1,
        "omega0": cr.omega0,
        "mu_max": cr.mu_max,
        "U0_at_omega0": cr.u0_at_omega0,
        "fg_residual": cr.fg_residual,
        "mu_omega0_minus_half_pi": cr.mu_at_omega0_defect,
        "U1_golden": cr.u1_golden,
        "omega1_golden": cr.omega1_golden,
        "dual_method_agreement": cr.dual_method_agreement(),
        "omega1_uncertainty": cr.omega1_uncertainty,
        "omega0_uncertainty": cr.omega0_uncertainty,
    });
    let meta = Meta::new("critical", cfg);
    let text = render_record(cfg, body, &meta);
    let path = write_file(&cfg.output_dir, &format!("critical.{}", ext(cfg)), &text)?;
    Ok(Outcome {
        stdout: format!("omega1 = {}\nomega0 = {}\n", cr.omega1, cr.omega0),
        files: vec![path],
        ..Default::default()
    })
}

fn profile_table(graph: &GraphFunction64) -> Table {
    let mut table = Table::new(vec!["edge", "x", "value", "derivative"]);
    for (edge, samples) in [("ring", &graph.ring), ("tail", &graph.tail)] {
        for s in samples.iter() {
            table.push(vec![json!(edge), json!(s.x), json!(s.value), json!(s.derivative)]);
        }
    }
    table
}

pub fn profile(cfg: &RunConfig, omega: f64, n: Option<usize>) -> CliResult<Outcome> {
    if !(omega < 0.0) || !omega.is_finite() {
        return Err(CliError::usage(format!("omega must be negative, got {omega}")));
    }
    let n = n.unwrap_or(cfg.grid_n);
    if n < 2 {
        return Err(CliError::usage(format!("--n must be at least 2, got {n}")));
    }
    let sol = cfg.solver().solve_from_omega(omega)?;
    let graph = sol.sample_graph_profile(n, truncation(cfg, &sol));
    let res = graph.verify_residuals();
    let ring_end = graph.ring[graph.ring.len() - 1].derivative;
    let meta = Meta::new("profile", cfg)
        .with("omega", omega)
        .with("n", n)
        .with("L_trunc", graph.l_trunc)
        .with("vertex_continuity_defect", res.continuity)
        .with("kirchhoff_defect", res.kirchhoff)
        .with("symmetry_defect", res.symmetry)
        .with("monotone", graph.is_monotone())
        .with("vertex_derivative_ratio", ring_end / graph.tail[0].derivative);

    let ring_half = || graph.ring.iter().filter(|s| s.x >= 0.0);
    let profile_plot = Plot::new("Profile on the tadpole", "x (ring on [-pi, pi], tail from pi)", "u")
        .series("ring", graph.ring.iter().map(|s| (s.x, s.value)).collect())
        .series("tail", graph.tail.iter().map(|s| (PI + s.x, s.value)).collect());
    let phase_plot = Plot::new("Phase plane", "u", "u'")
        .series("ring", ring_half().map(|s| (s.value, s.derivative)).collect())
        .series("tail", graph.tail.iter().map(|s| (s.value, s.derivative)).collect());

    let data = render_table(cfg, &profile_table(&graph), &meta);
    let dir = &cfg.output_dir;
    let files = vec![
        write_file(dir, &format!("profile.{}", ext(cfg)), &data)?,
        write_file(dir, "profile.svg", &profile_plot.render())?,
        write_file(dir, "phase.svg", &phase_plot.render())?,
    ];
    Ok(Outcome {
        stdout: format!(
            "profile: continuity {:.3e}, kirchhoff {:.3e}, symmetry {:.3e}\n",
            res.continuity, res.kirchhoff, res.symmetry
        ),
        files,
        ..Default::default()
    })
}

pub fn spectrum(cfg: &RunConfig) -> CliResult<Outcome> {
    let n = cfg.grid_n;
    let rows: Vec<Vec<Value>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let k = SPECTRUM_K_MAX * i as f64 / (n - 1) as f64;
            let sd = scattering(k);
            let r = sd.vertex_residuals();
            vec![
                json!(k),
                json!(sd.a_coeff.re),
                json!(sd.a_coeff.im),
                json!(sd.b_coeff.re),
                json!(sd.b_coeff.im),
                json!(sd.b_coeff.norm()),
                json!(r.continuity),
                json!(r.kirchhoff),
            ]
        })
        .collect();
    let mut table = Table::new(vec!["k", "a_re", "a_im", "b_re", "b_im", "abs_b", "continuity", "kirchhoff"]);
    rows.into_iter().for_each(|r| table.push(r));

    let max_col = |j: usize| {
        table
            .rows
            .iter()
            .filter_map(|r| r[j].as_f64())
            .fold(0.0_f64, f64::max)
    };
    let unitarity = table
        .rows
        .iter()
        .filter_map(|r| r[5].as_f64())
        .fold(0.0_f64, |m, b| m.max((b - 1.0).abs()));
    let lambdas: Vec<f64> = (1..=n).map(|i| -10.0 * i as f64 / n as f64).collect();
    let neg = no_negative_eigenvalues(&lambdas);
    let embedded: Vec<f64> = embedded_eigenvalues(5).iter().map(|e| e.lambda()).collect();
    let meta = Meta::new("spectrum", cfg)
        .with("max_unitarity_defect", unitarity)
        .with("max_jost_residual", max_col(6).max(max_col(7)))
        .with("negative_condition_min", neg.min_value)
        .with("no_negative_eigenvalues", neg.no_roots)
        .with("embedded_eigenvalues", json!(embedded));
    let plot = Plot::new("Scattering coefficient", "k", "|a(k)|").series(
        "|a|",
        table
            .rows
            .iter()
            .map(|r| {
                let (re, im) = (r[1].as_f64().unwrap_or(f64::NAN), r[2].as_f64().unwrap_or(f64::NAN));
                (r[0].as_f64().unwrap_or(f64::NAN), re.hypot(im))
            })
            .collect(),
    );
    let data = render_table(cfg, &table, &meta);
    let dir = &cfg.output_dir;
    let files = vec![
        write_file(dir, &format!("spectrum.{}", ext(cfg)), &data)?,
        write_file(dir, "spectrum.svg", &plot.render())?,
    ];
    Ok(Outcome {
        stdout: format!("spectrum: max ||b|-1| = {unitarity:.3e}, no negative eigenvalues: {}\n", neg.no_roots),
        files,
        ..Default::default()
    })
}

pub fn asymptotics(cfg: &RunConfig) -> CliResult<Outcome> {
    let solver = cfg.solver();
    let grid = log_omega_grid(ASYMPTOTIC_OMEGA.0, ASYMPTOTIC_OMEGA.1, cfg.grid_n);
    let rows = comparison_table(&solver, &grid)?;
    let mut table = Table::new(vec!["omega", "mu_solver", "mu_small", "mu_large", "rel_small", "rel_large"]);
    for r in &rows {
        let rel_small = ((r.mu_solver - r.mu_small) / (r.mu_small - FRAC_PI_4)).abs();
        let rel_large = ((r.mu_solver - r.mu_large) / (r.mu_large - FRAC_PI_2)).abs();
        table.push(vec![
            json!(r.omega),
            json!(r.mu_solver),
            json!(r.mu_small),
            json!(r.mu_large),
            json!(rel_small),
            json!(rel_large),
        ]);
    }
    let small = validity_threshold(&solver, Regime::SmallOmega, 0.01)?;
    let large = validity_threshold(&solver, Regime::LargeOmega, 0.15)?;
    let hint = |r: Option<tadpole::asymptotics::AsymptoticRegime<f64>>| r.map(|r| r.validity_hint);
    let meta = Meta::new("asymptotics", cfg)
        .with("small_omega_valid_below", json!(hint(small)))
        .with("small_omega_tolerance", 0.01)
        .with("large_omega_valid_above", json!(hint(large)))
        .with("large_omega_tolerance", 0.15);
    let x = |r: &tadpole::asymptotics::AsymptoticRow<f64>| (-r.omega).log10();
    let plot = Plot::new("Mass against its expansions", "log10 |omega|", "mu")
        .series("solver", rows.iter().map(|r| (x(r), r.mu_solver)).collect())
        .series(
            "small-omega",
            rows.iter().filter(|r| -r.omega < 1e-1).map(|r| (x(r), r.mu_small)).collect(),
        )
        .series(
            "large-omega",
            rows.iter().filter(|r| -r.omega > 1.0).map(|r| (x(r), r.mu_large)).collect(),
        )
        .level(FRAC_PI_4, "pi/4")
        .level(FRAC_PI_2, "pi/2");
    let data = render_table(cfg, &table, &meta);
    let dir = &cfg.output_dir;
    let files = vec![
        write_file(dir, &format!("asymptotics.{}", ext(cfg)), &data)?,
        write_file(dir, "asymptotics.svg", &plot.render())?,
    ];
    Ok(Outcome {
        stdout: format!(
            "small-omega expansion within 1% below |omega| = {}\nlarge-omega expansion within 15% above |omega| = {}\n",
            fmt_opt(hint(small)),
            fmt_opt(hint(large))
        ),
        files,
        ..Default::default()
    })
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map_or_else(|| "none".into(), |x| format!("{x:.4e}"))
}
