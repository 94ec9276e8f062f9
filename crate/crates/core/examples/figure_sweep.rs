//! Builds every preset figure table and writes them as CSV into a directory
//! (default: the system temp dir).

use spinflip::figures::{figure_table, Figure};
use spinflip::{FrequencyGrid, LaserParams, SpectrumMode};

fn main() -> spinflip::Result<()> {
    let dir = std::env::args().nth(1).map(std::path::PathBuf::from).unwrap_or_else(std::env::temp_dir);
    let grid = FrequencyGrid::standard();
    for fig in [Figure::F4a, Figure::F4b, Figure::F4c, Figure::F5a, Figure::F5b, Figure::F6] {
        let table = figure_table(fig, &LaserParams::default(), &grid, SpectrumMode::Canonical)?;
        let path = dir.join(format!("figure_{}.csv", fig.name()));
        std::fs::write(&path, table.to_csv())?;
        println!("{} -> {} ({})", fig.name(), path.display(), table.headers.join(", "));
    }
    Ok(())
}
