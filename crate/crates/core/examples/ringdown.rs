//! Relaxation-oscillation ringdown of the total intensity and of the
//! circular intensity difference, compared with the characteristic-polynomial
//! frequencies.

use spinflip::dynamics::{ringdown_analysis, simulate_semiclassical, Observable, StateVector};
use spinflip::{derive_operating_point, relaxation_frequencies, Branch, LaserParams};

fn main() -> spinflip::Result<()> {
    let params = LaserParams::default();
    let op = derive_operating_point(&params, Branch::X)?;
    let freqs = relaxation_frequencies(&op, &params)?;
    let steady = StateVector::steady(&op);

    let total = simulate_semiclassical(&params, steady.scaled(1.01, 1.01), 4.0, 1e-4)?;
    let diff = simulate_semiclassical(&params, steady.scaled(1.01, 0.99), 2.0, 1e-4)?;
    let rt = ringdown_analysis(&total, Observable::TotalIntensity)?;
    let rd = ringdown_analysis(&diff, Observable::IntensityDifference)?;

    let o1 = freqs.omega1.expect("underdamped total-inversion mode");
    let o2 = freqs.omega2.expect("underdamped spin mode");
    println!("total intensity:      omega = {:8.3} GHz (|D_x|^2 minimum {o1:8.3}), decay {:.3}/ns", rt.omega, rt.decay_rate);
    println!("intensity difference: omega = {:8.3} GHz (spin-mode minimum {o2:8.3}), decay {:.3}/ns", rd.omega, rd.decay_rate);
    println!("relative offsets: {:.2}% and {:.2}%", 100.0 * (rt.omega / o1 - 1.0), 100.0 * (rd.omega / o2 - 1.0));
    Ok(())
}
