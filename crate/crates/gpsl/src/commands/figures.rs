use gpsl_core::astro_bounds::{
    exclusion_grid, lambda_bounds, merge_external_bounds, radiated_power, BoundsSetup, CoefficientMode, DensityKind,
    ExactBounds, ExclusionGrid, GridAxis, NeutronStar, ProfileChoice,
};
use gpsl_core::optimal_profiles::{optimal_feedback_gaussian_case, ratio_curve, solve_support_radius};
use gpsl_core::regimes::PhysicalConstants;
use gpsl_core::RadialProfile;
use rayon::prelude::*;

use crate::cli::{DensityArg, FigureName, FiguresArgs, ProfilesArg};
use crate::error::{CliError, Result};
use crate::grid::GridSpec;
use crate::io::{default_catalog, read_catalog, read_overlay, Cell, Table};
use crate::Outputs;

pub fn setup(args: &FiguresArgs) -> BoundsSetup {
    BoundsSetup {
        profiles: match args.profiles {
            ProfilesArg::Optimal => ProfileChoice::Optimal,
            ProfilesArg::Gaussian => ProfileChoice::Gaussian,
        },
        mode: if args.strict { CoefficientMode::Rounded } else { CoefficientMode::Runtime },
        density: match args.density {
            DensityArg::Uniform => DensityKind::Uniform,
            DensityArg::TolmanVii => DensityKind::TolmanVii,
        },
    }
}

fn grid_or(flag: &Option<String>, default: &str) -> Result<GridSpec> {
    GridSpec::parse(flag.as_deref().unwrap_or(default))
}

fn rg_or(values: &[f64], default: &[f64]) -> Vec<f64> {
    if values.is_empty() {
        default.to_vec()
    } else {
        values.to_vec()
    }
}

/// File-name friendly form of a star name.
pub fn slug(name: &str) -> String {
    let s: String = name
        .to_ascii_lowercase()
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() { c } else { '-' })
        .collect();
    s.split('-').filter(|p| !p.is_empty()).collect::<Vec<_>>().join("-")
}

fn gnuplot(t: &Table, logscale: bool) -> Vec<u8> {
    let mut s = String::new();
    s.push_str("set datafile separator ','\nset key autotitle columnhead\n");
    if logscale {
        s.push_str("set logscale xy\nset format '10^{%L}'\n");
    }
    s.push_str(&format!("set xlabel '{}'\n", t.columns[0].name));
    s.push_str(&format!(
        "plot for [i=2:{}] '{}.csv' using 1:i with lines\n",
        t.columns.len(),
        t.name
    ));
    s.into_bytes()
}

fn emit(out: &mut Outputs, t: &Table, args: &FiguresArgs, logscale: bool) {
    out.table(t);
    if args.gnuplot_stub {
        out.file(format!("{}.gp", t.name), gnuplot(t, logscale));
    }
}

pub fn run(args: &FiguresArgs, k: &PhysicalConstants, out: &mut Outputs) -> Result<()> {
    match args.name {
        FigureName::RadiusCurve => radius_curve(args, out),
        FigureName::RatioCurve => ratio(args, out),
        FigureName::ProfileCompare => profile_compare(args, out, false),
        FigureName::MacroProfileCompare => profile_compare(args, out, true),
        FigureName::ExclusionStars => exclusion_stars(args, k, out),
        FigureName::ExclusionMerged => exclusion_merged(args, k, out),
    }
}

fn radius_curve(args: &FiguresArgs, out: &mut Outputs) -> Result<()> {
    let grid = grid_or(&args.grid, "-3:3:61")?.log10();
    let rows = grid
        .par_iter()
        .map(|&rho| Ok((rho, solve_support_radius(rho, 1.0)?.0)))
        .collect::<Result<Vec<_>>>()?;
    let mut t = Table::new(
        "radius-curve",
        &[("r_G/r_C", "1"), ("y", "1"), ("R/r_G", "1"), ("sqrt5", "1"), ("sqrt3", "1")],
    );
    for (rho, y) in rows {
        t.push(vec![
            rho.into(),
            y.into(),
            ((2.0 * y).sqrt() / rho).into(),
            5f64.sqrt().into(),
            3f64.sqrt().into(),
        ]);
    }
    emit(out, &t, args, false);
    Ok(())
}

fn ratio(args: &FiguresArgs, out: &mut Outputs) -> Result<()> {
    let grid = grid_or(&args.grid, "-2:1:31")?.log10();
    let pts = grid
        .par_iter()
        .map(|&rho| Ok(ratio_curve(&[rho])?[0]))
        .collect::<Result<Vec<_>>>()?;
    let mut t = Table::new("ratio-curve", &[("r_G/r_C", "1"), ("y", "1"), ("log10_ratio", "1")]);
    for p in pts {
        t.push(vec![p.r_g_over_r_c.into(), p.y.into(), p.log10_ratio.into()]);
    }
    emit(out, &t, args, false);
    Ok(())
}

/// Densities in units of `r_C⁻³` on a grid of `r/r_C`.
fn profile_compare(args: &FiguresArgs, out: &mut Outputs, macroscopic: bool) -> Result<()> {
    let r = grid_or(&args.r_grid, "0:5:201")?.linear();
    if r.iter().any(|&x| x < 0.0) {
        return Err(CliError::Usage("--r-grid must be non-negative".into()));
    }
    let (name, default_rg) = if macroscopic {
        ("macro-profile-compare", [0.5, 1.0, 2.0])
    } else {
        ("profile-compare", [0.5, 1.0, 2.1])
    };
    let rg = rg_or(&args.rg, &default_rg);
    let mut profiles = vec![("gaussian".to_string(), RadialProfile::gaussian(1.0)?)];
    for &v in &rg {
        let p = if macroscopic {
            RadialProfile::uniform_ball(v)?
        } else {
            optimal_feedback_gaussian_case(1.0, v)?.profile
        };
        let label = if macroscopic { "ball" } else { "optimal" };
        profiles.push((format!("{label}_rG={v}"), p));
    }
    let mut cols: Vec<(String, String)> = vec![("r/r_C".into(), "1".into())];
    cols.extend(profiles.iter().map(|(n, _)| (n.clone(), "r_C^-3".to_string())));
    let col_refs: Vec<(&str, &str)> = cols.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    let mut t = Table::new(name, &col_refs);
    for &x in &r {
        let mut row = vec![Cell::Num(x)];
        row.extend(profiles.iter().map(|(_, p)| Cell::Num(p.density(x))));
        t.push(row);
    }
    emit(out, &t, args, false);
    Ok(())
}

fn catalog(args: &FiguresArgs, k: &PhysicalConstants) -> Result<Vec<NeutronStar>> {
    match &args.catalog {
        Some(p) => read_catalog(p),
        None => Ok(default_catalog(k)),
    }
}

fn bounds_cells(exact: ExactBounds) -> [Cell; 2] {
    match exact {
        ExactBounds::Allowed { lower, upper } => [Cell::Num(lower), Cell::Num(upper)],
        ExactBounds::Excluded => [Cell::Excluded, Cell::Excluded],
    }
}

pub fn grid_table(g: &ExclusionGrid) -> Table {
    let (axis, tag) = match g.axis {
        GridAxis::RC => ("r_C", "rc"),
        GridAxis::RG => ("r_G", "rg"),
    };
    let mut t = Table::new(
        &format!("exclusion-{}-{tag}", slug(&g.star)),
        &[
            (axis, "m"),
            ("lambda_minus_exact", "1/s"),
            ("lambda_plus_exact", "1/s"),
            ("lambda_minus_approx", "1/s"),
            ("lambda_plus_approx", "1/s"),
        ],
    );
    for row in &g.rows {
        let [lo, hi] = bounds_cells(row.bounds.exact);
        t.push(vec![
            row.length.into(),
            lo,
            hi,
            row.bounds.approx_lower.into(),
            row.bounds.approx_upper.into(),
        ]);
    }
    t
}

/// Both axes for every star, in catalog order.
pub fn star_grids(
    stars: &[NeutronStar],
    grid: &[f64],
    fixed: f64,
    setup: &BoundsSetup,
    k: &PhysicalConstants,
) -> Result<Vec<ExclusionGrid>> {
    let jobs: Vec<(&NeutronStar, GridAxis)> = stars
        .iter()
        .flat_map(|s| [(s, GridAxis::RC), (s, GridAxis::RG)])
        .collect();
    jobs.par_iter()
        .map(|(s, axis)| Ok(exclusion_grid(s, *axis, grid, fixed, setup, k)?))
        .collect()
}

fn exclusion_stars(args: &FiguresArgs, k: &PhysicalConstants, out: &mut Outputs) -> Result<()> {
    let stars = catalog(args, k)?;
    let grid = grid_or(&args.grid, "-10:-4:61")?.log10();
    let grids = star_grids(&stars, &grid, args.fixed_length, &setup(args), k)?;
    let mut summary = Table::new(
        "stars",
        &[("name", "-"), ("radius", "m"), ("mass", "kg"), ("temperature", "K"), ("radiated_power", "W")],
    );
    for s in &stars {
        summary.push(vec![
            s.name.as_str().into(),
            s.radius.into(),
            s.mass.into(),
            s.temperature.into(),
            radiated_power(s, k).into(),
        ]);
    }
    out.table(&summary);
    for g in &grids {
        emit(out, &grid_table(g), args, true);
    }
    Ok(())
}

fn exclusion_merged(args: &FiguresArgs, k: &PhysicalConstants, out: &mut Outputs) -> Result<()> {
    let stars = catalog(args, k)?;
    let star = match &args.star {
        Some(name) => stars
            .iter()
            .find(|s| &s.name == name || slug(&s.name) == slug(name))
            .ok_or_else(|| CliError::Usage(format!("star '{name}' is not in the catalog")))?,
        None => &stars[0],
    };
    let grid = grid_or(&args.grid, "-10:-4:61")?.log10();
    let set = setup(args);
    let g = exclusion_grid(star, GridAxis::RC, &grid, args.fixed_length, &set, k)?;
    let overlays = match &args.overlay {
        Some(p) => read_overlay(p)?,
        None => Vec::new(),
    };
    let merged = merge_external_bounds(&g, &overlays)?;
    let lower_rg = rg_or(&args.lower_rg, &[1e-10, 1e-7, 1e-4]);
    let lower: Vec<Vec<Cell>> = grid
        .par_iter()
        .map(|&rc| {
            lower_rg
                .iter()
                .map(|&rg| {
                    Ok(match lambda_bounds(star, rc, rg, &set, k)?.exact {
                        ExactBounds::Allowed { lower, .. } => Cell::Num(lower),
                        ExactBounds::Excluded => Cell::Excluded,
                    })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let mut cols: Vec<(String, String)> = vec![
        ("r_C".into(), "m".into()),
        ("lambda_plus_internal".into(), "1/s".into()),
        ("lambda_plus_merged".into(), "1/s".into()),
        ("source".into(), "-".into()),
    ];
    cols.extend(lower_rg.iter().map(|rg| (format!("lambda_minus_rG={rg:e}"), "1/s".to_string())));
    let col_refs: Vec<(&str, &str)> = cols.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    let mut t = Table::new("exclusion-merged", &col_refs);
    for (m, lo) in merged.iter().zip(lower) {
        let opt = |v: Option<f64>| v.map_or(Cell::Excluded, Cell::Num);
        let mut row = vec![
            m.r_c.into(),
            opt(m.internal_upper),
            opt(m.merged_upper),
            m.source.as_str().into(),
        ];
        row.extend(lo);
        t.push(row);
    }
    emit(out, &t, args, true);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slugs() {
        assert_eq!(slug("PSR J2144-3933"), "psr-j2144-3933");
        assert_eq!(slug("  a//b "), "a-b");
    }
}
