//! One function per subcommand. Each writes `<command>.csv` into the output
//! directory and returns the path.

use std::path::PathBuf;

use qes_core::{
    assemble, degeneracy_report, energy_roots_general, lambda_constraint, verify, Channel, PhysicalConfig, RadialGrid,
    VerifySettings,
};

use crate::args::Command;
use crate::config::{FileConfig, RunConfig};
use crate::error::{config, CliError, Result};
use crate::format::float;
use crate::table::Table;

/// What a successful run produced.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub path: PathBuf,
    pub summary: String,
}

pub fn run(command: &Command) -> Result<Outcome> {
    let flags = command.overrides();
    let file = match &flags.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    let rc = RunConfig::resolve(file, flags, matches!(command, Command::Scan(_)))?;
    match command {
        Command::Lambda(_) => cmd_lambda(&rc),
        Command::Energies(_) => cmd_energies(&rc),
        Command::Verify(_) => cmd_verify(&rc),
        Command::Wavefunction(_) => cmd_wavefunction(&rc),
        Command::Scan(_) => cmd_scan(&rc),
    }
}

fn channel_cells(cfg: &PhysicalConfig, ch: &Channel) -> Vec<String> {
    vec![
        ch.n.to_string(),
        ch.l.to_string(),
        float(ch.k),
        float(cfg.chi),
        float(ch.gamma(cfg.chi)),
    ]
}

pub fn lambda_table(rc: &RunConfig) -> Result<Table> {
    let mut t = Table::new(&["n", "l", "k", "chi", "gamma", "lambda_nl"]);
    for ch in rc.channels()? {
        let mut row = channel_cells(&rc.physical, &ch);
        row.push(float(lambda_constraint(&rc.physical, &ch)?));
        t.push(row);
    }
    Ok(t)
}

pub fn cmd_lambda(rc: &RunConfig) -> Result<Outcome> {
    let t = lambda_table(rc)?;
    let path = t.write(&rc.out, "lambda.csv")?;
    Ok(Outcome {
        summary: format!("{} coupling values", t.rows.len()),
        path,
    })
}

pub fn energies_table(rc: &RunConfig) -> Result<Table> {
    let mut t = Table::new(&["n", "l", "k", "chi", "gamma", "lambda_nl", "branch", "energy", "node_count"]);
    for ch in rc.channels()? {
        let sol = energy_roots_general(&rc.physical, &ch)?;
        if sol.energy_roots.len() != sol.expected_root_count() {
            t.comment(format!(
                "n={} l={} k={}: {} real roots of {} expected",
                ch.n,
                ch.l,
                float(ch.k),
                sol.energy_roots.len(),
                sol.expected_root_count()
            ));
        }
        for (i, &e) in sol.energy_roots.iter().enumerate() {
            let state = assemble(&sol, i)?;
            let mut row = channel_cells(&rc.physical, &ch);
            row.extend([
                float(sol.lambda_nl),
                sol.branch_labels[i].to_string(),
                float(e),
                state.node_count.to_string(),
            ]);
            t.push(row);
        }
    }
    Ok(t)
}

pub fn cmd_energies(rc: &RunConfig) -> Result<Outcome> {
    let t = energies_table(rc)?;
    let path = t.write(&rc.out, "energies.csv")?;
    Ok(Outcome {
        summary: format!("{} energies", t.rows.len()),
        path,
    })
}

pub fn verify_settings(rc: &RunConfig) -> VerifySettings {
    VerifySettings {
        grid_points: rc.grid_points,
        r_max: rc.r_max,
        lambda_override: rc.lambda_override,
        oracle_tol: rc.oracle_tol,
        quadrature_points: rc.quadrature_points,
        ..VerifySettings::default()
    }
}

/// Writes the report, then fails with [`CliError::VerificationFailed`] if
/// any check failed.
pub fn cmd_verify(rc: &RunConfig) -> Result<Outcome> {
    let report = verify(&rc.physical, &rc.channels()?, &verify_settings(rc));
    let mut t = Table::new(&["check", "channel", "branch", "tolerance", "measured", "status", "note"]);
    for note in &report.notes {
        t.comment(note.clone());
    }
    for c in &report.checks {
        t.push(vec![
            c.name.to_string(),
            format!("n={} l={} k={}", c.channel.n, c.channel.l, float(c.channel.k)),
            c.branch.map(|b| b.to_string()).unwrap_or_default(),
            float(c.tolerance),
            float(c.measured),
            if c.passed { "PASS" } else { "FAIL" }.to_string(),
            c.note.clone(),
        ]);
    }
    let path = t.write(&rc.out, "verify.csv")?;
    let total = report.checks.len();
    let failed = report.failures().count();
    if report.all_passed() {
        Ok(Outcome {
            path,
            summary: format!("all {total} checks passed"),
        })
    } else {
        Err(CliError::VerificationFailed { failed, total })
    }
}

pub fn wavefunction_table(rc: &RunConfig) -> Result<Table> {
    let channels = rc.channels()?;
    let [ch] = channels.as_slice() else {
        return Err(config(format!(
            "wavefunction needs exactly one (n, l, k) channel, got {}",
            channels.len()
        )));
    };
    let sol = energy_roots_general(&rc.physical, ch)?;
    let index = sol.root_index(rc.branch)?;
    let state = assemble(&sol, index)?.normalize(rc.quadrature_points)?;
    let grid = RadialGrid::new(rc.r_max.unwrap_or(state.r_cut), rc.grid_points)?;
    let mut t = Table::new(&["r", "xi", "R", "u"]);
    t.comment(format!("energy={} norm={}", float(state.energy), float(state.norm_constant)));
    for s in state.export_samples(&grid)? {
        t.push(vec![float(s.r), float(s.xi), float(s.radial), float(s.u)]);
    }
    Ok(t)
}

pub fn cmd_wavefunction(rc: &RunConfig) -> Result<Outcome> {
    let t = wavefunction_table(rc)?;
    let path = t.write(&rc.out, "wavefunction.csv")?;
    Ok(Outcome {
        summary: format!("{} samples ({} branch)", t.rows.len(), rc.branch),
        path,
    })
}

pub fn scan_table(rc: &RunConfig) -> Result<Table> {
    let mut t = Table::new(&["chi", "n", "k", "l", "gamma", "lambda_nl", "branch", "energy"]);
    for &chi in &rc.chi_values {
        let cfg = PhysicalConfig { chi, ..rc.physical };
        for &n in &rc.levels {
            for &k in &rc.ks {
                for row in degeneracy_report(&cfg, k, rc.l_range.clone(), n)? {
                    for (b, e) in row.branches.iter().zip(&row.energies) {
                        t.push(vec![
                            float(chi),
                            n.to_string(),
                            float(k),
                            row.l.to_string(),
                            float(row.gamma),
                            float(row.lambda_nl),
                            b.to_string(),
                            float(*e),
                        ]);
                    }
                }
            }
        }
    }
    Ok(t)
}

pub fn cmd_scan(rc: &RunConfig) -> Result<Outcome> {
    let t = scan_table(rc)?;
    let path = t.write(&rc.out, "scan.csv")?;
    Ok(Outcome {
        summary: format!("{} rows over {} chi values", t.rows.len(), rc.chi_values.len()),
        path,
    })
}
