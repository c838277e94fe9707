use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use mirrorwave_core::physics::{from_si, LabUnit};
use mirrorwave_core::table::{format_number, write_table, Manifest, Table};
use mirrorwave_core::waves::critical_points;
use mirrorwave_core::{MirrorLaw, Scenario};

pub const FORMAT_VERSION: &str = "1";

/// Manifest opening lines shared by every command.
pub fn manifest(command: &str, out: Option<&Path>) -> Manifest {
    let mut m = Manifest::default();
    m.push("command", command);
    m.push("format_version", FORMAT_VERSION);
    m.push("timestamp", chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true));
    m.push("output", out.map_or_else(|| "stdout".to_string(), |p| p.display().to_string()));
    m
}

/// Value in both lab units and SI.
pub fn push_quantity(m: &mut Manifest, name: &str, si: f64, unit: LabUnit, si_unit: &str) {
    m.push(format!("{name}_{}", unit.tag().replace('/', "_per_")), format_number(from_si(si, unit)));
    m.push(format!("{name}_{si_unit}"), format_number(si));
}

pub fn push_scenario(m: &mut Manifest, s: &Scenario) {
    let ctx = s.context();
    m.push("species", ctx.species_label());
    m.push("mass_kg", format_number(ctx.mass()));
    m.push("hbar_J_s", format_number(ctx.hbar()));
    push_quantity(m, "vk", s.beam_velocity(), LabUnit::CentimetrePerSecond, "m_per_s");
    m.push("k_per_m", format_number(s.k()));
    m.push(
        "mirror",
        match s.mirror() {
            MirrorLaw::Static => "static",
            MirrorLaw::Moving { .. } => "moving",
            MirrorLaw::SuddenRemoval => "sudden",
        },
    );
    if let Some(v) = s.mirror().velocity() {
        push_quantity(m, "v", v, LabUnit::CentimetrePerSecond, "m_per_s");
    }
    push_quantity(m, "t", s.time(), LabUnit::Millisecond, "s");
    let cp = critical_points(s);
    push_position(m, "x_minus", Some(cp.x_minus));
    push_position(m, "x_plus", cp.x_plus);
    push_position(m, "x_mirror", cp.x_mirror);
    push_position(m, "x_front", Some(cp.x_front));
}

/// Position annotation in µm, `none` when absent.
pub fn push_position(m: &mut Manifest, name: &str, x: Option<f64>) {
    m.push(
        format!("{name}_um"),
        x.map_or_else(|| "none".to_string(), |x| format_number(from_si(x, LabUnit::Micrometre))),
    );
}

pub fn emit(out: Option<&Path>, manifest: &Manifest, table: &Table) -> std::io::Result<()> {
    match out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            write_table(&mut w, manifest, table)?;
            w.flush()
        }
        None => {
            let stdout = std::io::stdout();
            let mut w = BufWriter::new(stdout.lock());
            write_table(&mut w, manifest, table)?;
            w.flush()
        }
    }
}
