//! Closed-form spectra against the numerical resolvent, in both modes.

use spinflip::{build_linear_model, compare, derive_operating_point, oracle_spectra, quadrature_spectra};
use spinflip::{Branch, Channel, FrequencyGrid, LaserParams, SpectrumMode};

fn main() -> spinflip::Result<()> {
    let params = LaserParams::default();
    let op = derive_operating_point(&params, Branch::X)?;
    let grid = FrequencyGrid::log(0.01, 1000.0, 400)?;
    let oracle = oracle_spectra(&build_linear_model(&params, &op)?, &grid);
    println!(
        "oracle: {} singular points, max |Im| on diagonal {:.1e}, antisymmetric cross part up to {:.3e}",
        oracle.singular.len(),
        oracle.max_diag_imag,
        oracle.cross_antisymmetric.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    );
    for mode in [SpectrumMode::AsPrinted, SpectrumMode::Canonical] {
        let closed = quadrature_spectra(&params, &op, &grid, mode)?;
        let rep = compare(&closed, &oracle.set, 1e-9, 1e-15)?;
        println!("{mode:?}");
        for ch in Channel::ALL {
            let r = rep.channel(ch);
            println!("  {:4} max rel {:.3e} at {:9.3} GHz {}", ch.name(), r.max_rel, r.worst_omega, if r.pass { "ok" } else { "MISMATCH" });
        }
    }
    Ok(())
}
