// Two-group comparisons for an A/B title test: t-tests from published
// summary statistics, and a full analysis of a raw response log.
//
// cargo run --example ab_statistics

use std::collections::BTreeSet;
use std::error::Error;
use std::path::PathBuf;

use sticky_words::experiment::{analyze_experiment, read_response_log, UES_DIMENSIONS};
use sticky_words::stats::{levene_test, pooled_t_test, summarize, welch_t_test, GroupSummary};

pub fn run() -> Result<(), Box<dyn Error>> {
    // only n, mean and sd are needed for the t-tests
    let original = GroupSummary::from_moments(87, 3.2126, 1.10530)?;
    let treatment = GroupSummary::from_moments(129, 3.8643, 0.79795)?;
    for (label, r) in [
        ("pooled", pooled_t_test(&original, &treatment)?),
        ("welch", welch_t_test(&original, &treatment)?),
    ] {
        println!(
            "{label:<7} t={:.3} df={:.3} p={:.2e} diff={:.4} se={:.5} ci=({:.4}, {:.4})",
            r.t, r.df, r.p_two_tailed, r.mean_diff, r.se_diff, r.ci95_lower, r.ci95_upper
        );
    }

    // Levene needs the raw observations; binary choices are easy to rebuild
    let chosen = |yes: usize, n: usize| -> Vec<f64> { (0..n).map(|i| (i < yes) as u8 as f64).collect() };
    let (a, b) = (chosen(44, 87), chosen(101, 129));
    let levene = levene_test(&a, &b)?;
    let t = pooled_t_test(&summarize(&a)?, &summarize(&b)?)?;
    println!("\nselection: levene F={:.3} p={:.2e}; t={:.3}", levene.f, levene.p, t.t);

    let log = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/pilot_responses.csv");
    let responses = read_response_log(&log)?;
    println!("\n{} responses, items:", responses.len());
    for (name, about) in UES_DIMENSIONS {
        println!("  {name}: {about}");
    }
    let report = analyze_experiment(&responses, &BTreeSet::new())?;
    print!("\n{}", report.render_table());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run()
}
