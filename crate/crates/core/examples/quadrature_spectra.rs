//! Quadrature noise spectra and the derived Stokes spectra on a short log grid.

use spinflip::{quadrature_spectra, stokes_spectra, derive_operating_point, Branch, FrequencyGrid, LaserParams, SpectrumMode};

fn main() -> spinflip::Result<()> {
    let params = LaserParams::default();
    let op = derive_operating_point(&params, Branch::X)?;
    let grid = FrequencyGrid::log(0.1, 1000.0, 9)?;
    let set = quadrature_spectra(&params, &op, &grid, SpectrumMode::Canonical)?;
    let st = stokes_spectra(&params, &op, &grid, SpectrumMode::Canonical)?;

    println!("{:>10} {:>12} {:>12} {:>12} {:>12} {:>12}", "omega", "sxx", "sxy", "syy", "cxy", "s1/Q^2");
    for i in 0..grid.len() {
        println!(
            "{:10.3} {:12.4e} {:12.4e} {:12.4e} {:12.4e} {:12.4}",
            set.omega[i],
            set.sxx[i],
            set.sxy[i],
            set.syy[i],
            set.cxy[i],
            st.s1()[i] / op.q2
        );
    }
    Ok(())
}
