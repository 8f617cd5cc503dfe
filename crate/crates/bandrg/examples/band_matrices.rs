//! Tour of the band storage: build a symmetric band matrix from a generator,
//! poke at entries, truncate, and dump it as CSV.

use bandrg::{BandMatrix, FnBandGenerator};

fn main() -> bandrg::Result<()> {
    // Entries come from a generator that maps (offset, row) to the value of
    // M[row][row - offset]; symmetry is implied, nothing above the band is
    // stored. This one is tridiagonal with a decaying off-diagonal.
    let gen = FnBandGenerator::new(1, |offset, row| {
        if offset == 0 {
            2.0 + row as f64
        } else {
            1.0 / (1.0 + row as f64)
        }
    });
    let m = BandMatrix::build(&gen, 5)?;

    println!(
        "dim {} (cutoff {}), half-bandwidth {}",
        m.dim(),
        m.cutoff(),
        m.half_bandwidth()
    );
    println!("M[2][2] = {}", m.get(2, 2)?);
    println!("M[3][2] = {} = M[2][3] = {}", m.get(3, 2)?, m.get(2, 3)?);
    println!("M[5][2] = {} (outside the band)", m.get(5, 2)?);
    println!("trace = {}", m.trace());

    println!("\ndense form:");
    for row in m.to_dense() {
        let cells: Vec<String> = row.iter().map(|v| format!("{v:>7.4}")).collect();
        println!("  [{}]", cells.join(", "));
    }

    let small = m.truncate(2)?;
    println!("\ntruncated to cutoff 2, main diagonal: {:?}", small.diagonal(0));

    let mut csv = Vec::new();
    small.write_csv(&mut csv)?;
    println!("\nCSV dump (offset-major, k,l,value):");
    print!("{}", String::from_utf8(csv).expect("ascii output"));
    Ok(())
}
