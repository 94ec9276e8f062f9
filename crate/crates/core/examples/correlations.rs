//! Normalized correlation spectra C12 and C23, plus C23 rebuilt from three
//! cross-polarizer measurements.

use spinflip::polarimeter::{c12_spectrum, c23_from_set, c23_reconstructed, cross_measurements, PolarimeterSetting};
use spinflip::{derive_operating_point, quadrature_spectra, Branch, FrequencyGrid, LaserParams, SpectrumMode};

fn main() -> spinflip::Result<()> {
    let grid = FrequencyGrid::from_values(vec![0.1, 1.0, 5.0, 15.0, 31.3, 50.0, 100.0, 300.0])?;
    let split = PolarimeterSetting::from_degrees(45.0, 0.0)?;
    for kappa_a in [0.0, 10.0, 50.0] {
        let params = LaserParams { kappa_a, ..Default::default() };
        let op = derive_operating_point(&params, Branch::X)?;
        let set = quadrature_spectra(&params, &op, &grid, SpectrumMode::Canonical)?;
        let c12 = c12_spectrum(&params, &op, &split, &grid, SpectrumMode::Canonical)?;
        let c23 = c23_from_set(&op, &set);
        let rebuilt = c23_reconstructed(&params, &op, &cross_measurements(&params, &set));
        println!("kappa_a = {kappa_a}");
        for i in 0..grid.len() {
            println!(
                "  {:7.1} GHz  C12 {:+.4}  C23 {:+.4}  (rebuilt {:+.4})",
                grid.values()[i],
                c12.values[i],
                c23.values[i],
                rebuilt.values[i]
            );
        }
    }
    Ok(())
}
