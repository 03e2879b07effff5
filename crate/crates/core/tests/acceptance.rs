//! Acceptance run: one PASS/FAIL line per criterion.

mod common;

use std::collections::BTreeSet;
use std::panic::{self, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use common::{branch, corpus, Branch};
use propmod::dioph::{self, DiophSystem};
use propmod::oracle::{self, Window};
use propmod::{frob, gen2, genp, lines, ring};
use propmod::{LatticePoint, ModularInequality, RationalPoint};
use serde_json::Value;

fn ineq(f: &[i128], g: &[i128], b: i128) -> ModularInequality {
    ModularInequality::new(f.to_vec(), g.to_vec(), b).unwrap()
}

fn cli_json(args: &[&str]) -> Value {
    let out = Command::new(env!("CARGO_BIN_EXE_propmod"))
        .args(args)
        .args(["--format", "json"])
        .output()
        .expect("binary runs");
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn json_points(v: &Value) -> BTreeSet<Vec<i128>> {
    v.as_array()
        .expect("array")
        .iter()
        .map(|p| {
            p.as_array()
                .expect("point")
                .iter()
                .map(|c| c.as_i64().expect("integer") as i128)
                .collect()
        })
        .collect()
}

fn point_set(v: &[[i128; 2]]) -> BTreeSet<Vec<i128>> {
    v.iter().map(|p| p.to_vec()).collect()
}

fn within(limit: Duration, start: Instant) {
    let took = start.elapsed();
    assert!(took < limit, "took {took:?}, limit {limit:?}");
}

fn worked_example() {
    let start = Instant::now();
    let v = cli_json(&["gens", "--f", "3,-2", "--g", "1,-3", "--b", "11"]);
    assert_eq!(v["trivial"], Value::Bool(false));
    assert_eq!(
        json_points(&v["generators"]),
        point_set(&[
            [4, 0], [5, 0], [5, 1], [8, 1], [9, 2], [11, 0], [13, 3],
            [14, 4], [18, 5], [19, 6], [23, 7], [28, 9], [33, 11],
        ])
    );
    within(Duration::from_secs(1), start);
}

fn gorenstein_example() {
    let start = Instant::now();
    let args = ["--f", "7,-1", "--g", "1,-14", "--b", "5"];
    let v = cli_json(&[&["gens"][..], &args].concat());
    assert_eq!(
        json_points(&v["generators"]),
        point_set(&[
            [3, 0], [4, 0], [5, 0], [16, 1], [17, 1], [18, 1],
            [29, 2], [31, 2], [44, 3], [57, 4], [70, 5],
        ])
    );
    let p = cli_json(&[&["properties"][..], &args].concat());
    assert_eq!(p["cohen_macaulay"], Value::Bool(true));
    assert_eq!(p["gorenstein"], Value::Bool(true));
    assert_eq!(p["buchsbaum"], Value::Bool(true));
    within(Duration::from_secs(1), start);
}

fn frobenius_example() {
    let start = Instant::now();
    let v = cli_json(&["frobenius", "--f", "3,2", "--g", "1,-1", "--b", "10"]);
    assert_eq!(json_points(&v["minimal"]), point_set(&[[9, 1]]));
    assert_eq!(v["geometry"]["u"], serde_json::json!([2, 2]));
    assert_eq!(v["geometry"]["w"], serde_json::json!([10, 0]));
    let e = ineq(&[3, 2], &[1, -1], 10);
    assert_eq!(lines::compute_u(&e).unwrap(), LatticePoint::from([2, 2]));
    assert_eq!(lines::compute_w(&e).unwrap(), RationalPoint::integer(10, 0));
    let ctx = frob::FrobeniusContext::new(&e).unwrap();
    for lambda in 1..=2 {
        let q = LatticePoint::from([9 + 2 * lambda, 1 + 2 * lambda]);
        assert!(ctx.is_frobenius_vector(&q).unwrap(), "{q}");
    }
    within(Duration::from_secs(1), start);
}

fn intermediate_objects() {
    let e = ineq(&[3, -2], &[1, -3], 11);
    assert_eq!(lines::compute_u(&e).unwrap(), LatticePoint::from([33, 11]));
    assert_eq!(lines::compute_u_tilde(&e).unwrap(), LatticePoint::from([4, 0]));
    assert_eq!(lines::compute_w(&e).unwrap(), RationalPoint::integer(11, 0));
    let ray = lines::restrict_to_ray(&e, &LatticePoint::from([1, 0])).unwrap();
    assert_eq!((ray.a_prime, ray.c_prime), (3, 1));
    assert_eq!(lines::numerical_min_gens(ray.a_prime, ray.b, ray.c_prime).unwrap(), vec![4, 5, 11]);
}

fn oracle_equivalence() {
    let start = Instant::now();
    let cases = corpus();
    assert!(cases.len() >= 40);
    for wanted in [Branch::Trivial, Branch::Positive, Branch::Strip] {
        assert!(cases.iter().any(|e| branch(e) == wanted), "{wanted:?} missing");
    }
    let window = Window::cube(2, 60).unwrap();
    for e in &cases {
        let gens = gen2::min_gens_n2(e).unwrap();
        assert_eq!(
            oracle::closure_in_window(&gens.points, &window).unwrap(),
            oracle::brute_members(e, &window).unwrap(),
            "closure differs for {e}"
        );
        assert_eq!(gens, genp::min_gens_np(e).unwrap(), "methods differ for {e}");
        // Large enough for every generator to matter.
        let side = gens
            .points
            .iter()
            .flat_map(|p| p.coords().iter().copied())
            .max()
            .unwrap_or(0)
            .max(60);
        let big = Window::cube(2, side).unwrap();
        assert!(oracle::is_minimal_in_window(&gens.points, &big).unwrap(), "not minimal for {e}");
    }
    within(Duration::from_secs(60), start);
}

fn three_dimensional() {
    let start = Instant::now();
    let e = ineq(&[5, 2, 1], &[3, 1, -4], 4);
    let gens = genp::min_gens_np(&e).unwrap();
    let window = Window::cube(3, 12).unwrap();
    assert_eq!(
        oracle::closure_in_window(&gens.points, &window).unwrap(),
        oracle::brute_members(&e, &window).unwrap()
    );
    within(Duration::from_secs(120), start);
}

fn is_antichain(points: &[LatticePoint]) -> bool {
    points
        .iter()
        .enumerate()
        .all(|(i, x)| points.iter().skip(i + 1).all(|y| !x.precedes(y) && !y.precedes(x)))
}

fn invariant_suites() {
    let side = 40i128;
    for e in corpus() {
        let b = e.b();
        // Points with g ≥ b are members.
        for x in 0..=side {
            for y in 0..=side {
                let p = LatticePoint::from([x, y]);
                if e.g().eval(&p).unwrap() >= b {
                    assert!(e.member(&p).unwrap(), "{p} for {e}");
                }
            }
        }
        let kind = branch(&e);
        if matches!(kind, Branch::Strip | Branch::Ray) {
            // Membership is invariant under translation by u.
            let u = lines::compute_u(&e).unwrap();
            for x in 0..=side {
                for y in 0..=side {
                    let p = LatticePoint::from([x, y]);
                    assert_eq!(
                        e.member(&p).unwrap(),
                        e.member(&p.checked_add(&u).unwrap()).unwrap(),
                        "{p} for {e}"
                    );
                }
            }
            // Antichains from the equation/congruence solver.
            let g = e.g().clone();
            let f = e.f().clone();
            let u_set = dioph::minimal_solutions(
                &DiophSystem::new(2).equality(g.clone(), 0).congruence(f.clone(), 0, b),
            )
            .unwrap();
            assert_eq!(u_set.points, vec![u.clone()], "{e}");
            for d in 1..b {
                for k in 0..=d {
                    let sys = DiophSystem::new(2).equality(g.clone(), d).congruence(f.clone(), k, b);
                    assert!(is_antichain(&dioph::minimal_solutions(&sys).unwrap().points), "{e}");
                }
            }
        }
        if matches!(kind, Branch::Trivial | Branch::Ray) {
            continue;
        }
        let report = ring::properties(&e).unwrap();
        assert!(!report.gorenstein || report.cohen_macaulay, "{e}");
        let frobenius = frob::frobenius_vectors(&e).unwrap();
        if kind == Branch::Strip {
            if !frobenius.delta.is_empty() {
                assert_eq!(frobenius.minimal_frobenius_vectors.len(), 1, "{e}");
                let q = &frobenius.minimal_frobenius_vectors[0];
                let u = lines::compute_u(&e).unwrap();
                assert!(frob::is_frobenius_vector(&e, &q.checked_add(&u).unwrap()).unwrap());
            }
            assert_eq!(report.witnesses.closure_equals_s, Some(true), "{e}");
            // Independent check of S̄ = S on the strip's bounding box.
            let region = gen2::strip_region(&e).unwrap();
            let bounds: Vec<i128> = [0, 1]
                .iter()
                .map(|&i| {
                    region
                        .vertices
                        .iter()
                        .map(|v| if i == 0 { v.x.ceil() } else { v.y.ceil() })
                        .max()
                        .unwrap()
                })
                .collect();
            let window = Window::new(bounds).unwrap();
            let gens = oracle::brute_min_gens(&e, &window).unwrap();
            assert_eq!(
                oracle::brute_closure_semigroup(&e, &gens, &window).unwrap(),
                oracle::brute_members(&e, &window).unwrap(),
                "{e}"
            );
        }
    }
    // Three-variable mixed-sign example.
    let t = genp::construction_trace(&ineq(&[5, 2, 1], &[3, 1, -4], 4)).unwrap();
    assert!(is_antichain(&t.u.points) && is_antichain(&t.v.points));
    assert!(t.mdk.iter().all(|m| is_antichain(&m.solutions)));
}

fn main() {
    let criteria: [(&str, fn()); 7] = [
        ("1 worked example generators", worked_example),
        ("2 Gorenstein example generators and properties", gorenstein_example),
        ("3 Frobenius vector and translates", frobenius_example),
        ("4 intermediate objects u, u~, w, axis generators", intermediate_objects),
        ("5 oracle equivalence on the plane corpus", oracle_equivalence),
        ("6 three-variable window closure", three_dimensional),
        ("7 invariant suites", invariant_suites),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(check));
        let took = start.elapsed();
        match outcome {
            Ok(()) => println!("criterion {name}: PASS ({took:.2?})"),
            Err(e) => {
                failed += 1;
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                println!("criterion {name}: FAIL ({took:.2?}) {msg}");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
