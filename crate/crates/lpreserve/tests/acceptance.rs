//! Runs every acceptance criterion at full size and prints one line per
//! criterion. Fails if any criterion fails or exceeds its time budget.

use lpreserve::acceptance::{run, Fault, Scale};

fn main() {
    let outcomes = run(Scale::Full, Fault::None);
    let mut ok = true;
    for o in &outcomes {
        let timely = o.within_budget();
        let pass = o.passed && timely;
        ok &= pass;
        println!(
            "{} criterion {:>2}: {} [{:.3}s of {}s{}] {}",
            if pass { "PASS" } else { "FAIL" },
            o.id,
            o.title,
            o.elapsed.as_secs_f64(),
            o.budget.as_secs(),
            if timely { "" } else { ", over budget" },
            o.detail
        );
    }
    println!("{} of {} criteria passed", outcomes.iter().filter(|o| o.passed && o.within_budget()).count(), outcomes.len());
    if !ok {
        std::process::exit(1);
    }
}
