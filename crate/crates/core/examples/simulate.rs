//! Integrates the rate equations from a perturbed steady state and prints the
//! photon numbers of both circular components as they settle.

use spinflip::dynamics::{integrate, StateVector};
use spinflip::{derive_operating_point, Branch, LaserParams};

fn main() -> spinflip::Result<()> {
    let params = LaserParams::default();
    let op = derive_operating_point(&params, Branch::X)?;
    let start = StateVector::steady(&op).scaled(1.05, 0.97);
    let every = 5000;
    println!("{:>6} {:>10} {:>10} {:>10} {:>10}", "t/ns", "|a+|^2", "|a-|^2", "D", "d");
    let end = integrate(&params, start, 10.0, 1e-4, |i, s| {
        if i % every == 0 {
            println!(
                "{:6.2} {:10.5} {:10.5} {:10.4} {:10.3e}",
                i as f64 * 1e-4,
                s.a_plus.norm_sqr(),
                s.a_minus.norm_sqr(),
                s.d_big,
                s.d_small
            );
        }
    })?;
    println!("settled at |a+|^2 = {:.6}, Q^2 = {}", end.a_plus.norm_sqr(), op.q2);
    Ok(())
}
