//! Operating point, linear stability and relaxation frequencies across the
//! dichroism sweep.

use spinflip::{derive_operating_point, relaxation_frequencies, stability_eigenvalues, Branch, LaserParams};

fn main() -> spinflip::Result<()> {
    for kappa_a in [0.0, 10.0, 50.0] {
        let params = LaserParams { kappa_a, ..Default::default() };
        let op = derive_operating_point(&params, Branch::X)?;
        let stab = stability_eigenvalues(&op, &params)?;
        let f = relaxation_frequencies(&op, &params)?;
        println!("kappa_a = {kappa_a}");
        println!("  Q^2 = {}, D0 = {}, detuning = {}", op.q2, op.d_big0, op.delta);
        println!("  verdict {:?}", stab.verdict);
        for z in stab.x.iter().chain(&stab.y) {
            println!("    {:+.4} {:+.4}i", z.re, z.im);
        }
        println!("  omega1 = {:?}, omega2 = {:?}", f.omega1, f.omega2);
    }
    let below = LaserParams { r: 0.8, ..Default::default() };
    println!("r = 0.8: {}", derive_operating_point(&below, Branch::X).unwrap_err());
    Ok(())
}
