use mirrorwave_core::analysis;
use mirrorwave_core::analysis::{
    enhanced_peak, enhancement_scan, linspace, main_fringe_refined, ordinary_peak,
    profile_with_components, universal_enhanced, universal_ordinary, DensityProfile, POINTS_PER_FRINGE,
};
use mirrorwave_core::oracle::{
    compare, evolve_grid, evolve_quadrature, Comparison, OracleConfig, SpatialScheme, Stepping,
    TailTreatment,
};
use mirrorwave_core::physics::{from_si, to_si, LabUnit};
use mirrorwave_core::specialfn::fresnel;
use mirrorwave_core::table::{format_number, Manifest, Table};
use mirrorwave_core::{Error, MirrorLaw, PhysicalContext, Scenario};

use crate::output::{emit, manifest, push_position, push_scenario};
use crate::{
    CommonArgs, ComponentsArgs, CornuArgs, Failure, GridArgs, MirrorArgs, OracleArgs, OracleKind,
    ProfileArgs, SchemeArg, SteppingArg, TailArg, VisibilityArgs,
};

const DEFAULT_POINTS: usize = 2000;
const DEFAULT_QUADRATURE_POINTS: usize = 200;

type CmdResult = Result<(), Failure>;

fn um(x: f64) -> f64 {
    from_si(x, LabUnit::Micrometre)
}

fn mirror_law(m: &MirrorArgs) -> Result<MirrorLaw, Error> {
    match (m.v, m.sudden, m.static_wall) {
        (Some(v), false, false) => MirrorLaw::moving(to_si(v, LabUnit::CentimetrePerSecond)),
        (None, true, false) => Ok(MirrorLaw::SuddenRemoval),
        (None, false, true) => Ok(MirrorLaw::Static),
        _ => Err(Error::InvalidParameter("choose exactly one of --v, --sudden, --static".into())),
    }
}

fn scenario(common: &CommonArgs, mirror: MirrorLaw) -> Result<Scenario, Error> {
    let ctx = PhysicalContext::species(&common.species)?;
    let vk = to_si(common.vk, LabUnit::CentimetrePerSecond);
    let t = to_si(common.t, LabUnit::Millisecond);
    Scenario::from_beam_velocity(ctx, vk, mirror, t)
}

/// Lab-frame window in metres, defaulting to [−1.5·v_k t, 1.1·max(v, v_k)·t].
fn window(s: &Scenario, grid: &GridArgs) -> Result<(f64, f64), Error> {
    let vk = s.beam_velocity();
    let reach = s.mirror().velocity().map_or(vk, |v| v.max(vk));
    let lo = grid.xmin.map_or(-1.5 * vk * s.time(), |x| to_si(x, LabUnit::Micrometre));
    let hi = grid.xmax.map_or(1.1 * reach * s.time(), |x| to_si(x, LabUnit::Micrometre));
    if !(lo <= hi) {
        return Err(Error::InvalidParameter(format!("need xmin ≤ xmax, got {} > {}", um(lo), um(hi))));
    }
    Ok((lo, hi))
}

fn grid(s: &Scenario, args: &GridArgs, default_points: usize) -> Result<Vec<f64>, Error> {
    let (lo, hi) = window(s, args)?;
    let n = args.points.unwrap_or(default_points);
    if n == 0 {
        return Err(Error::InvalidParameter("--points must be at least 1".into()));
    }
    if n == 1 && lo != hi {
        return Err(Error::InvalidParameter("a single point needs xmin = xmax".into()));
    }
    Ok(linspace(lo, hi, n))
}

fn push_grid(m: &mut Manifest, xs: &[f64]) {
    push_position(m, "xmin", xs.first().copied());
    push_position(m, "xmax", xs.last().copied());
    m.push("points", xs.len());
}

/// |M_I|²..|M_IV|² for every point of a profile computed with components.
fn component_densities(p: &DensityProfile) -> Vec<[f64; 4]> {
    p.components
        .as_ref()
        .map(|cs| {
            cs.iter()
                .map(|c| [c.m1.norm_sqr(), c.m2.norm_sqr(), c.m3.norm_sqr(), c.m4.norm_sqr()])
                .collect()
        })
        .unwrap_or_default()
}

const COMPONENT_COLUMNS: [&str; 4] = ["M_I_sq", "M_II_sq", "M_III_sq", "M_IV_sq"];

pub fn profile(a: &ProfileArgs) -> CmdResult {
    let s = scenario(&a.common, mirror_law(&a.mirror)?)?;
    let xs = grid(&s, &a.grid, DEFAULT_POINTS)?;
    let mut m = manifest("profile", a.common.out.as_deref());
    push_scenario(&mut m, &s);
    push_grid(&mut m, &xs);
    let mut columns = vec!["x_um", "density"];
    let rows: Vec<Vec<f64>> = if a.components {
        columns.extend(COMPONENT_COLUMNS);
        let p = profile_with_components(&s, &xs)?;
        let comps = component_densities(&p);
        xs.iter()
            .zip(&p.densities)
            .zip(comps)
            .map(|((x, d), c)| vec![um(*x), *d, c[0], c[1], c[2], c[3]])
            .collect()
    } else {
        let p = analysis::profile(&s, &xs)?;
        xs.iter().zip(&p.densities).map(|(x, d)| vec![um(*x), *d]).collect()
    };
    let mut table = Table::new(columns);
    table.rows = rows;
    emit(a.common.out.as_deref(), &m, &table)?;
    Ok(())
}

pub fn components(a: &ComponentsArgs) -> CmdResult {
    let v = to_si(a.v, LabUnit::CentimetrePerSecond);
    let s = scenario(&a.common, MirrorLaw::moving(v)?)?;
    let xs = grid(&s, &a.grid, DEFAULT_POINTS)?;
    let mut m = manifest("components", a.common.out.as_deref());
    push_scenario(&mut m, &s);
    push_grid(&mut m, &xs);
    let (vk, t) = (s.beam_velocity(), s.time());
    push_position(&mut m, "front_I", Some(vk * t));
    push_position(&mut m, "front_II", Some(-vk * t));
    push_position(&mut m, "front_III", Some((2.0 * v - vk) * t));
    push_position(&mut m, "front_IV", Some((2.0 * v + vk) * t));
    let p = profile_with_components(&s, &xs)?;
    let mut columns = vec!["x_um"];
    columns.extend(COMPONENT_COLUMNS);
    columns.push("density");
    let mut table = Table::new(columns);
    table.rows = xs
        .iter()
        .zip(component_densities(&p))
        .zip(&p.densities)
        .map(|((x, c), d)| vec![um(*x), c[0], c[1], c[2], c[3], *d])
        .collect();
    emit(a.common.out.as_deref(), &m, &table)?;
    Ok(())
}

pub fn cornu(a: &CornuArgs) -> CmdResult {
    if !(a.theta_min.is_finite() && a.theta_max.is_finite() && a.theta_min <= a.theta_max) {
        return Err(Failure::Usage("need finite theta-min ≤ theta-max".into()));
    }
    if a.points == 0 || (a.points == 1 && a.theta_min != a.theta_max) {
        return Err(Failure::Usage("--points must be ≥ 1, and 1 only when theta-min = theta-max".into()));
    }
    let mut m = manifest("cornu", a.out.as_deref());
    m.push("theta_min", format_number(a.theta_min));
    m.push("theta_max", format_number(a.theta_max));
    m.push("points", a.points);
    let (te, pe) = enhanced_peak();
    let (to, po) = ordinary_peak();
    m.push("enhanced_peak_theta", format_number(te));
    m.push("enhanced_peak_value", format_number(pe));
    m.push("ordinary_peak_theta", format_number(to));
    m.push("ordinary_peak_value", format_number(po));
    let mut table = Table::new(["theta", "C", "S", "enhanced", "ordinary"]);
    table.rows = linspace(a.theta_min, a.theta_max, a.points)
        .into_iter()
        .map(|theta| {
            let (c, s) = fresnel(theta);
            vec![theta, c, s, universal_enhanced(theta), universal_ordinary(theta)]
        })
        .collect();
    emit(a.out.as_deref(), &m, &table)?;
    Ok(())
}

pub fn visibility(a: &VisibilityArgs) -> CmdResult {
    if a.ratio_points == 0 || (a.ratio_points == 1 && a.ratio_min != a.ratio_max) {
        return Err(Failure::Usage("--ratio-points must be ≥ 1, and 1 only when ratio-min = ratio-max".into()));
    }
    if !(a.ratio_min > 0.0 && a.ratio_min <= a.ratio_max) {
        return Err(Failure::Usage(format!(
            "velocity ratios must satisfy 0 < ratio-min ≤ ratio-max, got {} and {}",
            a.ratio_min, a.ratio_max
        )));
    }
    let ctx = PhysicalContext::species(&a.species)?;
    let t = to_si(a.t, LabUnit::Millisecond);
    let ratios = linspace(a.ratio_min, a.ratio_max, a.ratio_points);
    let mut m = manifest("visibility", a.out.as_deref());
    m.push("species", ctx.species_label());
    m.push("t_ms", format_number(a.t));
    m.push("t_s", format_number(t));
    m.push("ratio_min", format_number(a.ratio_min));
    m.push("ratio_max", format_number(a.ratio_max));
    m.push("ratio_points", a.ratio_points);
    let mut table = Table::new(["vk_cm_per_s", "v_over_vk", "visibility", "p_max"]);
    for &vk_lab in &a.vk {
        let vk = to_si(vk_lab, LabUnit::CentimetrePerSecond);
        let template = Scenario::from_beam_velocity(ctx, vk, MirrorLaw::SuddenRemoval, t)?;
        let sudden = main_fringe_refined(&template, POINTS_PER_FRINGE)?;
        m.push(format!("sudden_visibility_vk_{vk_lab}"), format_number(sudden.visibility));
        m.push(format!("sudden_p_max_vk_{vk_lab}"), format_number(sudden.p_max));
        for p in enhancement_scan(&ratios, &template)? {
            table.rows.push(vec![vk_lab, p.v_over_vk, p.visibility, p.p_max]);
        }
    }
    emit(a.out.as_deref(), &m, &table)?;
    Ok(())
}

fn oracle_config(a: &OracleArgs, s: &Scenario, window: (f64, f64)) -> Result<OracleConfig, Error> {
    let mut c = OracleConfig::suggested(s, window)?;
    c.tolerance = a.tolerance;
    if let Some(l) = a.domain_length {
        c.domain_length = to_si(l, LabUnit::Micrometre);
    }
    if let Some(n) = a.grid_points {
        c.grid_points = n;
    }
    if let Some(dt) = a.time_step {
        c.time_step = to_si(dt, LabUnit::Millisecond);
    }
    if let Some(w) = a.truncation_window {
        c.truncation_window = to_si(w, LabUnit::Micrometre);
    }
    if let Some(scheme) = a.scheme {
        c.scheme = match scheme {
            SchemeArg::Spectral => SpatialScheme::Spectral,
            SchemeArg::FiniteDifference => SpatialScheme::FiniteDifference,
        };
    }
    if let Some(stepping) = a.stepping {
        c.stepping = match stepping {
            SteppingArg::Diagonal => Stepping::Diagonal,
            SteppingArg::Tridiagonal => Stepping::Tridiagonal,
        };
    }
    if let Some(tail) = a.tail {
        c.tail = match tail {
            TailArg::Truncate => TailTreatment::Truncate,
            TailArg::ContourClosure => TailTreatment::ContourClosure,
        };
    }
    Ok(c)
}

fn push_comparison(m: &mut Manifest, c: &Comparison) {
    m.push("max_abs_err", format_number(c.max_abs_err));
    m.push("rms_err", format_number(c.rms_err));
    push_position(m, "worst_x", Some(c.worst_x));
    for r in &c.regions {
        m.push(
            format!("region_{}", r.region.label()),
            format!(
                "points={} max_abs_err={} rms_err={}",
                r.points,
                format_number(r.max_abs_err),
                format_number(r.rms_err)
            ),
        );
    }
}

pub fn oracle(a: &OracleArgs) -> CmdResult {
    if !(a.tolerance > 0.0) {
        return Err(Failure::Usage("--tolerance must be positive".into()));
    }
    let s = scenario(&a.common, mirror_law(&a.mirror)?)?;
    let win = window(&s, &a.grid)?;
    let config = oracle_config(a, &s, win)?;
    let mut m = manifest("oracle", a.common.out.as_deref());
    push_scenario(&mut m, &s);
    m.push("oracle", match a.oracle {
        OracleKind::Grid => "grid",
        OracleKind::Quadrature => "quadrature",
    });
    for (k, v) in config.entries() {
        m.push(k, v);
    }
    let (numeric, estimates) = match a.oracle {
        OracleKind::Grid => {
            let run = evolve_grid(&s, &config)?;
            m.push("norm_drift", format_number(run.norm_drift));
            m.push("steps", run.steps);
            (run.profile, None)
        }
        OracleKind::Quadrature => {
            let xs = grid(&s, &a.grid, DEFAULT_QUADRATURE_POINTS)?;
            let run = evolve_quadrature(&s, &config, &xs)?;
            m.push("truncation_flagged", run.flagged);
            (run.profile, Some(run.truncation_estimates))
        }
    };
    let exact = analysis::profile(&s, &numeric.xs)?;
    let cmp = compare(&numeric, &exact)?;
    push_comparison(&mut m, &cmp);
    let passed = cmp.max_abs_err <= a.tolerance;
    m.push("passed", passed);

    let mut columns = vec!["x_um", "analytic", "oracle", "abs_err"];
    if estimates.is_some() {
        columns.push("truncation_estimate");
    }
    let mut table = Table::new(columns);
    for (i, x) in numeric.xs.iter().enumerate() {
        let (d_exact, d_num) = (exact.densities[i], numeric.densities[i]);
        let mut row = vec![um(*x), d_exact, d_num, (d_num - d_exact).abs()];
        if let Some(e) = &estimates {
            row.push(e[i]);
        }
        table.rows.push(row);
    }
    emit(a.common.out.as_deref(), &m, &table)?;
    eprintln!(
        "{} oracle: max_abs_err = {:.3e} at x = {:.4} um, rms = {:.3e}, tolerance = {:.1e}: {}",
        match a.oracle {
            OracleKind::Grid => "grid",
            OracleKind::Quadrature => "quadrature",
        },
        cmp.max_abs_err,
        um(cmp.worst_x),
        cmp.rms_err,
        a.tolerance,
        if passed { "PASS" } else { "FAIL" }
    );
    if passed {
        Ok(())
    } else {
        Err(Failure::Validation(format!(
            "oracle deviation {:.3e} exceeds tolerance {:.1e}",
            cmp.max_abs_err, a.tolerance
        )))
    }
}
