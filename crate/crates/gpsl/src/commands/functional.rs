use gpsl_core::functionals::{
    dirichlet_energy, grad_sq_functional, grav_functional_i0, i0_gauss_gauss_closed, i0_gauss_optimal_closed,
    macro_feedback_functional, pair_grav_functional, two_particle_psl,
};
use gpsl_core::optimal_profiles::solve_support_radius;
use gpsl_core::{FunctionalResult, Method};

use crate::cli::{FunctionalArgs, FunctionalKind, MethodArg};
use crate::error::{CliError, Result};
use crate::io::{Cell, Table};
use crate::profile_spec::ProfileSpec;
use crate::Outputs;

fn spec(flag: &Option<String>, name: &str) -> Result<ProfileSpec> {
    flag.as_deref()
        .ok_or_else(|| CliError::Usage(format!("this functional needs --{name}")))?
        .parse()
}

fn kind_name(k: FunctionalKind) -> &'static str {
    match k {
        FunctionalKind::Dirichlet => "dirichlet",
        FunctionalKind::Irc => "irc",
        FunctionalKind::Irg => "irg",
        FunctionalKind::I0 => "i0",
        FunctionalKind::Pair => "pair",
        FunctionalKind::TwoParticle => "two-particle",
    }
}

/// `I₀` from a closed form, when the profile pair has one.
fn closed_i0(gc: &ProfileSpec, gg: &ProfileSpec) -> Result<FunctionalResult> {
    let ProfileSpec::Gaussian(rc) = *gc else {
        return Err(CliError::Usage("closed forms need a Gaussian collapse profile".into()));
    };
    let unit = match *gg {
        ProfileSpec::Gaussian(rg) => i0_gauss_gauss_closed(rc / rg)?,
        ProfileSpec::Optimal { rc: rc2, rg } if rc2 == rc => {
            let (y, _) = solve_support_radius(rg, rc)?;
            i0_gauss_optimal_closed(y)?
        }
        _ => {
            return Err(CliError::Usage(
                "closed forms need a Gaussian feedback profile or the optimal one for the same r_C".into(),
            ))
        }
    };
    Ok(FunctionalResult::closed(unit / rc.powi(4), -4))
}

pub fn evaluate(args: &FunctionalArgs) -> Result<FunctionalResult> {
    if args.method == MethodArg::Closed && args.kind != FunctionalKind::I0 {
        return Err(CliError::Usage("--method closed is only available for --kind i0".into()));
    }
    Ok(match args.kind {
        FunctionalKind::Dirichlet => dirichlet_energy(&spec(&args.g, "g")?.build()?)?,
        FunctionalKind::Irc => grad_sq_functional(&spec(&args.g, "g")?.build()?)?,
        FunctionalKind::Irg => macro_feedback_functional(&spec(&args.g, "g")?.build()?)?,
        FunctionalKind::I0 => {
            let (gc, gg) = (spec(&args.gc, "gc")?, spec(&args.gg, "gg")?);
            match args.method {
                MethodArg::Closed => closed_i0(&gc, &gg)?,
                MethodArg::Quadrature => grav_functional_i0(&gc.build()?, &gg.build()?)?,
            }
        }
        FunctionalKind::Pair => {
            pair_grav_functional(&spec(&args.gc, "gc")?.build()?, &spec(&args.gg, "gg")?.build()?, args.d)?
        }
        FunctionalKind::TwoParticle => two_particle_psl(&spec(&args.g, "g")?.build()?, args.m1, args.m2, args.d)?,
    })
}

pub fn run(args: &FunctionalArgs, out: &mut Outputs) -> Result<()> {
    let r = evaluate(args)?;
    let unit = format!("length^{}", r.length_power);
    let method = match r.method {
        Method::Quadrature => "quadrature",
        Method::ClosedForm => "closed_form",
    };
    let mut t = Table::new(
        "functional",
        &[("kind", "-"), ("value", &unit), ("method", "-"), ("error_estimate", &unit), ("length_power", "1")],
    );
    let name = kind_name(args.kind);
    t.push(vec![
        name.into(),
        Cell::Num(r.value),
        method.into(),
        Cell::Num(r.error_estimate),
        Cell::Int(r.length_power.into()),
    ]);
    out.table(&t);
    out.stdout = format!(
        "{name} = {} ({method}, error {:e}, {unit})\n",
        crate::io::fmt_f64(r.value),
        r.error_estimate
    );
    Ok(())
}
