//! Detector-level view: mean photocurrents, the four-preset Stokes
//! reconstruction and normalized photocurrent noise for a few settings.

use spinflip::polarimeter::{
    classical_stokes_from_measurements, mean_photocurrents, photocurrent_noise_spectra, PolarimeterSetting,
};
use spinflip::{derive_operating_point, Branch, FrequencyGrid, LaserParams, SpectrumMode};

fn main() -> spinflip::Result<()> {
    let params = LaserParams::default();
    let op = derive_operating_point(&params, Branch::X)?;

    let i1 = |phi: f64, theta: f64| -> spinflip::Result<f64> {
        Ok(mean_photocurrents(&op, &PolarimeterSetting::from_degrees(phi, theta)?)?.i1)
    };
    let s = classical_stokes_from_measurements(i1(0.0, 0.0)?, i1(45.0, 0.0)?, i1(90.0, 0.0)?, i1(45.0, 90.0)?);
    println!("mean Stokes from detector currents: {:?} (2 kappa Q^2 = {})", s.as_array(), 2.0 * params.kappa * op.q2);

    let grid = FrequencyGrid::from_values(vec![0.0, 10.0, 31.3, 80.0, 1e4])?;
    for (phi, theta) in [(0.0, 0.0), (45.0, 0.0), (45.0, 90.0), (30.0, 60.0)] {
        let pc = photocurrent_noise_spectra(&params, &op, &PolarimeterSetting::from_degrees(phi, theta)?, &grid, SpectrumMode::Canonical)?;
        println!("phi = {phi:>4}, theta = {theta:>4}");
        for i in 0..grid.len() {
            let opt = |v: &Option<Vec<f64>>| v.as_ref().map_or("   -   ".to_string(), |v| format!("{:8.4}", v[i]));
            println!(
                "  {:8.1} GHz  n1 {}  n2 {}  n- {:8.4}  n+ {:8.4}",
                grid.values()[i],
                opt(&pc.n1),
                opt(&pc.n2),
                pc.nminus[i],
                pc.nplus[i]
            );
        }
    }
    Ok(())
}
