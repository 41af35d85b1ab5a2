//! One line per acceptance criterion; the process fails if any criterion does.

use std::time::{Duration, Instant};

use liecoh::par::Parallelism;
use liecoh::suites::{self, default_alphas, Check, DEFAULT_SEED};

struct Outcome {
    id: u32,
    title: &'static str,
    checks: Vec<Check>,
    elapsed: Duration,
    budget: Option<Duration>,
}

impl Outcome {
    fn pass(&self) -> bool {
        !self.checks.is_empty()
            && self.checks.iter().all(|c| c.pass)
            && self.budget.map_or(true, |b| self.elapsed <= b)
    }

    fn line(&self) -> String {
        let failed = self.checks.iter().filter(|c| !c.pass).count();
        let mut s = format!(
            "criterion {:>2}: {} {} ({} checks, {} failed, {:.2?})",
            self.id,
            if self.pass() { "PASS" } else { "FAIL" },
            self.title,
            self.checks.len(),
            failed,
            self.elapsed
        );
        if let Some(b) = self.budget {
            s.push_str(&format!(" budget {b:?}"));
        }
        if let Some(c) = self.checks.iter().find(|c| !c.pass) {
            s.push_str(&format!("\n    first failure: {} expected {} computed {}", c.name, c.expected, c.computed));
        }
        s
    }
}

fn run(id: u32, title: &'static str, budget: Option<Duration>, f: impl FnOnce() -> liecoh::Result<Vec<Check>>) -> Outcome {
    let t = Instant::now();
    let checks = f().unwrap_or_else(|e| vec![Check::new("suite error", "no error", e)]);
    Outcome { id, title, checks, elapsed: t.elapsed(), budget }
}

fn main() -> std::process::ExitCode {
    let mode = Parallelism::default();
    let seed = DEFAULT_SEED;
    let ds4 = [1, 2, 3, 4];
    let ds3 = [1, 2, 3];
    let outcomes = vec![
        run(1, "cohomology table of K[X0]/P(X0)", Some(Duration::from_secs(10)), || {
            suites::cal_checks(&ds4, &default_alphas(), mode)
        }),
        run(2, "cocycle bases delta0, delta_j", None, || suites::basis_checks(&ds4)),
        run(3, "cup products span H^q", None, || suites::cup_checks(&ds4)),
        run(4, "d∘d = 0 and Leibniz, 100 random reps", None, || suites::complex_checks(seed, 100, None, mode)),
        run(5, "Euler characteristic 0, 100 random reps", None, || suites::euler_checks(seed, 100, None, mode)),
        run(6, "Ext orthogonality grid", None, || suites::ext_checks(&ds3)),
        run(7, "z_split on 50 random reps, 20 intertwiners each", None, || {
            suites::zsplit_checks(seed, 50, 20, None, mode)
        }),
        run(8, "unipotent block recovery, 30 conjugates", None, || suites::clas_checks(seed, 30, None, mode)),
        run(9, "p-adic exp/log, cocycles, relations, V group law", None, || {
            let mut out = suites::padic_checks(seed, 100, &[3, 5], 1, 20, mode)?;
            out.extend(suites::relation_checks(&ds3));
            Ok(out)
        }),
        run(10, "extension matrices recovered by differentiation", None, || {
            suites::extone_checks(&ds3, &[3, 5], 1, 20)
        }),
    ];
    for o in &outcomes {
        println!("{}", o.line());
    }
    let failed: Vec<u32> = outcomes.iter().filter(|o| !o.pass()).map(|o| o.id).collect();
    if failed.is_empty() {
        println!("acceptance: all {} criteria pass", outcomes.len());
        std::process::ExitCode::SUCCESS
    } else {
        println!("acceptance: failing criteria {failed:?}");
        std::process::ExitCode::FAILURE
    }
}
