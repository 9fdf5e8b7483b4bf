//! Audits the standard random corpus and prints per-check statistics.
//!
//! ```text
//! cargo run --release --example corpus_campaign [seed] [budget]
//! ```

use nodal_geometry::experiment::{run_campaign, standard_corpus, CampaignOptions};

fn main() {
    let seed = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(42);
    let corpus = standard_corpus(seed);
    let budget = std::env::args()
        .nth(2)
        .and_then(|s| s.parse().ok())
        .unwrap_or(20_000);
    let options = CampaignOptions {
        seed,
        genus_budget: budget,
        ..CampaignOptions::default()
    };
    let started = std::time::Instant::now();
    let summary = run_campaign("standard corpus", &corpus, &options).expect("corpus builds");

    println!(
        "{} instances, {} audit errors, seed {seed}",
        summary.instances, summary.errors
    );
    println!(
        "{:<28} {:>7} {:>8} {:>8} {:>6} {:>8} {:>8}",
        "check", "holds", "violated", "skipped", "tight", "max", "mean"
    );
    for (name, s) in &summary.checks {
        let fmt = |x: Option<f64>| x.map_or("-".to_string(), |v| format!("{v:.3}"));
        println!(
            "{name:<28} {:>7} {:>8} {:>8} {:>6} {:>8} {:>8}",
            s.holds,
            s.violated,
            s.skipped,
            s.tight,
            fmt(s.max_tightness),
            fmt(s.mean_tightness)
        );
    }
    let known = summary
        .outcomes
        .iter()
        .filter(|o| o.three_connected && o.genus.is_some())
        .count();
    println!("3-connected with known genus: {known}");
    println!("elapsed {:.1?}", started.elapsed());
}
