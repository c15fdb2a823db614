//! One line per acceptance criterion. All comparisons are exact equalities of
//! cyclotomic numbers; the only tolerances are the wall-clock budgets below.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use modform_cli::fixtures::{
    cusp_table, mixed_squares, curve27, g1_exact, h1_display, idempotence, orthogonality, sums_of_squares, tau691,
    FixtureResult,
};

struct Criterion {
    id: u32,
    title: &'static str,
    budget: Duration,
    run: fn() -> Vec<FixtureResult>,
}

fn squares_4_and_8() -> Vec<FixtureResult> {
    sums_of_squares()
        .into_iter()
        .filter(|r| r.name.starts_with("4 squares") || r.name.starts_with("8 squares"))
        .collect()
}

const CRITERIA: &[Criterion] = &[
    Criterion { id: 1, title: "orthogonality, N <= 60, k = 2..7", budget: Duration::from_secs(120), run: || vec![orthogonality()] },
    Criterion { id: 2, title: "f_k constant terms at the cusps of Gamma0(24), k = 1..5", budget: Duration::from_secs(10), run: cusp_table },
    Criterion { id: 3, title: "g_1 equals its Eisenstein part, n <= 50", budget: Duration::from_secs(30), run: || vec![g1_exact()] },
    Criterion { id: 4, title: "4 and 8 squares against lattice counts, n <= 100", budget: Duration::from_secs(60), run: squares_4_and_8 },
    Criterion { id: 5, title: "tau(n) = sigma_11(n) mod 691 through theta of F_6, n <= 50", budget: Duration::from_secs(120), run: || vec![tau691()] },
    Criterion { id: 6, title: "F(a, b; p) closed forms, p in {3, 5, 7}, n <= 40", budget: Duration::from_secs(180), run: mixed_squares },
    Criterion { id: 7, title: "E27A point counts and the h_1 newform", budget: Duration::from_secs(60), run: curve27 },
    Criterion { id: 8, title: "idempotence, N <= 24, k = 2..5", budget: Duration::from_secs(120), run: idempotence },
    Criterion { id: 9, title: "E_(h_1) coefficients and N27, n <= 30", budget: Duration::from_secs(30), run: || vec![h1_display()] },
];

fn main() -> ExitCode {
    let mut failed = 0;
    for c in CRITERIA {
        let start = Instant::now();
        let results = (c.run)();
        let elapsed = start.elapsed();
        let bad: Vec<&FixtureResult> = results.iter().filter(|r| !r.passed()).collect();
        let in_budget = elapsed <= c.budget;
        let pass = !results.is_empty() && bad.is_empty() && in_budget;
        if !pass {
            failed += 1;
        }
        println!(
            "criterion {}: {} | {} | {} fixtures | {:.2}s of {}s",
            c.id,
            if pass { "PASS" } else { "FAIL" },
            c.title,
            results.len(),
            elapsed.as_secs_f64(),
            c.budget.as_secs()
        );
        for r in bad {
            println!("    failed {}: expected {}, got {}", r.name, r.expected, r.actual);
        }
        if !in_budget {
            println!("    over the time budget");
        }
    }
    println!("{} of {} criteria passed", CRITERIA.len() - failed, CRITERIA.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
