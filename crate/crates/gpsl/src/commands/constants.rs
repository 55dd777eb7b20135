use gpsl_core::regimes::PhysicalConstants;

use crate::cli::ConstantsArgs;
use crate::config::ConstantsSnapshot;
use crate::error::Result;
use crate::io::{Cell, Table};
use crate::Outputs;

pub fn run(args: &ConstantsArgs, k: &PhysicalConstants, out: &mut Outputs) -> Result<()> {
    let mut t = Table::new("constants", &[("name", "-"), ("value", "SI"), ("unit", "-")]);
    let rows = [
        ("G", k.g, "m^3 kg^-1 s^-2"),
        ("hbar", k.hbar, "J s"),
        ("m0", k.m0, "kg"),
        ("m_neutron", k.m_neutron, "kg"),
        ("k_B", k.k_b, "J/K"),
        ("sigma_SB", k.sigma_sb, "W m^-2 K^-4"),
        ("M_sun", k.m_sun, "kg"),
        ("c", k.c, "m/s"),
        ("e", k.e, "C"),
    ];
    for (name, v, unit) in rows {
        t.push(vec![name.into(), Cell::Num(v), unit.into()]);
    }
    out.table(&t);
    if args.dump {
        let snap = ConstantsSnapshot::from(*k);
        out.stdout = serde_json::to_string_pretty(&snap).expect("constants serialize") + "\n";
    }
    Ok(())
}
