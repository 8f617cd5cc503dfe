//! Diagonalize the quartic oscillator at increasing cutoffs and watch the
//! lowest levels settle toward their infinite-basis limits.

use bandrg::{lowest_k, oscillator, OscillatorParams};

fn main() -> bandrg::Result<()> {
    let g = 1.0;
    let params = OscillatorParams::new(g)?;
    let levels = 3;

    println!("lowest {levels} levels of H = diag(k) + g (a + a\u{2020})^4 at g = {g}");
    println!("{:>7}  {:>18}  {:>18}  {:>18}", "cutoff", "E0", "E1", "E2");
    for cutoff in [20, 40, 80, 160, 320] {
        let h = oscillator::hamiltonian(&params, cutoff)?;
        let spectrum = lowest_k(&h, levels)?;
        let e = &spectrum.eigenvalues;
        println!("{cutoff:>7}  {:>18.12}  {:>18.12}  {:>18.12}", e[0], e[1], e[2]);
    }

    // The cutoff-1000 values are converged to all printed digits and serve
    // as the reference spectrum throughout the crate.
    let reference = bandrg::reference_spectrum(g, bandrg::REFERENCE_CUTOFF, levels)?;
    let evs: Vec<String> = reference
        .eigenvalues
        .iter()
        .map(|v| format!("{v:>18.12}"))
        .collect();
    println!("{:>7}  {}", bandrg::REFERENCE_CUTOFF, evs.join("  "));
    Ok(())
}
