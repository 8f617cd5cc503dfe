//! Reduce the oscillator from a large cutoff to a small one and compare the
//! reduced spectrum against plain truncation at the same size.

use bandrg::{lowest_k, oscillator, reduce, OscillatorParams, RgConfig};

fn main() -> bandrg::Result<()> {
    let g = 10.0;
    let big_n = 200;
    let small_n = 10;
    let levels = 3;

    let config = RgConfig::approximate(g, big_n, small_n);
    let renormalized = reduce(&config)?;

    let params = OscillatorParams::new(g)?;
    let plain = oscillator::hamiltonian(&params, big_n)?.truncate(small_n)?;
    let reference = bandrg::reference_spectrum(g, bandrg::REFERENCE_CUTOFF, levels)?;

    let rg = lowest_k(&renormalized, levels)?;
    let pc = lowest_k(&plain, levels)?;

    println!("cutoff {big_n} -> {small_n} at g = {g}, lowest {levels} levels:");
    println!(
        "{:>5}  {:>16}  {:>16}  {:>16}  {:>9}  {:>9}",
        "level", "reference", "renormalized", "plain cutoff", "rg err", "pc err"
    );
    for i in 0..levels {
        let exact = reference.eigenvalues[i];
        let rg_err = (rg.eigenvalues[i] - exact).abs() / exact.abs();
        let pc_err = (pc.eigenvalues[i] - exact).abs() / exact.abs();
        println!(
            "{i:>5}  {exact:>16.10}  {:>16.10}  {:>16.10}  {rg_err:>9.2e}  {pc_err:>9.2e}",
            rg.eigenvalues[i], pc.eigenvalues[i]
        );
    }

    // Elimination only rescales entries near the cutoff; everything below the
    // corner window is bitwise identical to the truncated matrix.
    println!("\ncorner entries, renormalized vs plain:");
    for (k, l) in [
        (small_n, small_n),
        (small_n - 1, small_n - 1),
        (small_n - 2, small_n - 2),
        (small_n - 3, small_n - 3),
        (small_n, small_n - 2),
        (small_n - 1, small_n - 3),
    ] {
        println!(
            "  H[{k:>2}][{l:>2}]: {:>14.6}  vs  {:>14.6}",
            renormalized.get(k, l)?,
            plain.get(k, l)?
        );
    }
    Ok(())
}
