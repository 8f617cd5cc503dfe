//! Eliminate states at a trial energy equal to an eigenvalue and show that
//! the reduced matrix keeps that eigenvalue to machine precision.

use bandrg::{eigenvalues_symmetric, oscillator, reduce, OscillatorParams, RgConfig};

fn main() -> bandrg::Result<()> {
    let g = 1.0;
    let big_n = 6;
    let small_n = 3;

    let params = OscillatorParams::new(g)?;
    let h = oscillator::hamiltonian(&params, big_n)?;
    let full = eigenvalues_symmetric(&h.to_dense())?;
    println!("full spectrum at cutoff {big_n}, g = {g}:");
    for (i, ev) in full.iter().enumerate() {
        println!("  E{i} = {ev:.12}");
    }

    // The elimination denominators carry E - H[t][t]; choosing E equal to an
    // eigenvalue makes the reduction exact for that state, whatever is cut.
    for target in [full[0], full[1]] {
        let config = RgConfig::exact_at(g, big_n, small_n, target);
        let reduced = reduce(&config)?;
        let spectrum = eigenvalues_symmetric(&reduced.to_dense())?;
        let closest = spectrum
            .iter()
            .map(|ev| (ev - target).abs())
            .fold(f64::INFINITY, f64::min);
        println!(
            "\nreduced to cutoff {small_n} at trial E = {target:.12}:\n  \
             spectrum [{}]\n  distance of nearest level to E: {closest:.2e}",
            spectrum
                .iter()
                .map(|v| format!("{v:.8}"))
                .collect::<Vec<_>>()
                .join(", ")
        );
        assert!(closest < 1e-9);
    }

    println!("\nthe approximate mode replaces E by 0; it loses this exactness");
    println!("but needs no eigenvalue knowledge, so it can run spectrum-blind.");
    Ok(())
}
