//! Sweep the reduced cutoff and tabulate renormalized vs plain-cutoff
//! accuracy for the lowest levels; writes the table and a log-scale plot.

use bandrg::harness::{compare_rg_pc, write_comparison_report};

fn main() -> bandrg::Result<()> {
    let g = 1.0;
    let big_n = 200;
    let levels = 3;
    let grid: Vec<usize> = (4..=24).collect();

    let report = compare_rg_pc(g, big_n, &grid, levels)?;

    println!(
        "relative error of the ground state vs reference (cutoff {}), g = {g}:",
        report.reference_cutoff
    );
    println!("{:>4}  {:>14}  {:>14}", "n", "renormalized", "plain cutoff");
    for row in report.level_rows(0) {
        println!("{:>4}  {:>14.6e}  {:>14.6e}", row.n, row.rg_rel_err, row.pc_rel_err);
    }
    for note in &report.notes {
        println!("note: {note}");
    }

    let csv = std::env::temp_dir().join("bandrg_compare.csv");
    let svg = std::env::temp_dir().join("bandrg_compare.svg");
    write_comparison_report(&report, &csv, Some(&svg))?;
    println!("\nwrote {} and {}", csv.display(), svg.display());
    Ok(())
}
