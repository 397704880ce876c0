//! Conjoined specification patterns, split 90/5/5.
//!
//!     cargo run --release --example gen_pattern_dataset -- 1000

use nl2formal::datasets::{make_split, SplitSpec};
use nl2formal::nlgen::{gen_pattern_dataset, pattern_catalog, PatternOptions};

fn main() {
    let n = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1000);
    let catalog = pattern_catalog();
    println!("{} patterns in the catalog", catalog.len());
    let records = gen_pattern_dataset(&catalog, n, 0, &PatternOptions::default()).unwrap();
    for r in records.iter().take(5) {
        println!("{}\n    {}", r.nl, r.target);
    }
    let split = make_split(&records, &SplitSpec::default());
    println!("train {} / val {} / test {}", split.train.len(), split.val.len(), split.test.len());
}
