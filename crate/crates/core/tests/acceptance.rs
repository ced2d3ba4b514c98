//! Acceptance suite: one line per criterion, non-zero exit on any failure.

use catlab_core::selftest::{run_all, SelftestConfig};

fn main() {
    let reports = run_all(&SelftestConfig::default());
    for r in &reports {
        println!("{r}");
    }
    let failed = reports.iter().filter(|r| !r.passed).count();
    println!("{} of {} criteria passed", reports.len() - failed, reports.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
