//! Acceptance criteria 1-8. Prints one `[PASS]`/`[FAIL]` line per criterion
//! and exits non-zero if any fails.

use std::process::Command;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ramsey_cli::commands::random_coloring_with;
use ramsey_cli::io::{read_coloring, write_coloring};
use ramsey_core::checker::{
    self, max_matching, maximum_matching, min_color_degree, star_missing_color,
};
use ramsey_core::constructions::{build_witness, Construction};
use ramsey_core::formulas::{self, derived_quantities, star_ramsey_base};
use ramsey_core::oracle::{
    oracle_ramsey, symmetry_pruned_search, OracleStatus, Outcome, SearchConfig,
};
use ramsey_core::{Color, ColorSet, Coloring, Parameters, Rule};

type Check = Result<String, String>;
type Criterion<'a> = (&'static str, Option<Duration>, Box<dyn Fn() -> Check + 'a>);

fn oracle_cfg() -> SearchConfig {
    SearchConfig::default().with_symmetry(usize::MAX)
}

fn sorted_tuples(k: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<i64>| {
                let start = prefix.last().copied().unwrap_or(lo);
                (start..=hi).map(move |m| {
                    let mut v = prefix.clone();
                    v.push(m);
                    v
                })
            })
            .collect();
    }
    out
}

/// Exact oracle value, or an error naming the instance.
fn oracle_value(p: &Parameters, cap: usize) -> Result<u64, String> {
    let r = oracle_ramsey(p, cap, oracle_cfg());
    if r.status != OracleStatus::Exact {
        return Err(format!("{p}: oracle {} at {}", r.status.label(), r.value));
    }
    Ok(r.value)
}

fn agree(p: &Parameters, want: u64) -> Result<(), String> {
    let got = oracle_value(p, want as usize + 1)?;
    if got != want {
        return Err(format!("{p}: formula {want}, oracle {got}"));
    }
    Ok(())
}

fn criterion_1() -> Check {
    let mut count = 0;
    for ms in sorted_tuples(2, 1, 4) {
        let p = Parameters::normalize(2, &ms, None).unwrap();
        let (want, _) = star_ramsey_base(ms[0] as u64, ms[1] as u64).map_err(|e| e.to_string())?;
        agree(&p, want)?;
        count += 1;
    }
    Ok(format!("{count} instances agree"))
}

fn criterion_2() -> Check {
    let mut count = 0;
    for ms in sorted_tuples(3, 1, 3) {
        let p = Parameters::normalize(3, &ms, None).unwrap();
        let (want, _) = formulas::star_ramsey(&p).map_err(|e| e.to_string())?;
        agree(&p, want)?;
        count += 1;
    }
    for (ms, want) in [([2, 2, 2], 3), ([3, 3, 3], 5)] {
        let p = Parameters::normalize(3, &ms, None).unwrap();
        let got = oracle_value(&p, 8)?;
        if got != want {
            return Err(format!("{p}: expected {want}, oracle {got}"));
        }
    }
    Ok(format!("{count} instances agree; (2,2,2)=3, (3,3,3)=5"))
}

fn criterion_3() -> Check {
    let p = Parameters::normalize(3, &[3, 4, 4], None).unwrap();
    let d = derived_quantities(&p).map_err(|e| e.to_string())?;
    let (value, trace) = formulas::star_ramsey(&p).map_err(|e| e.to_string())?;
    if (d.x, d.h, value, trace.final_rule()) != (5, 0, 5, Some(Rule::OddXParity)) {
        return Err(format!(
            "x={} h={} R={value} rule={:?}",
            d.x,
            d.h,
            trace.final_rule()
        ));
    }
    let targets = p.targets();
    let at = |n| symmetry_pruned_search(n, 3, &targets, u64::MAX, usize::MAX).outcome;
    if !matches!(at(4), Outcome::Found(_)) {
        return Err("no avoiding coloring of K_4".into());
    }
    if at(5) != Outcome::None {
        return Err("K_5 has an avoiding coloring".into());
    }
    Ok("R = x = 5; K_4 found, K_5 none".into())
}

fn criterion_4() -> Check {
    let mut count = 0;
    let mut cases = std::collections::BTreeSet::new();
    let mut instances = Vec::new();
    for ms in sorted_tuples(2, 1, 3) {
        for s in 1..=2 {
            instances.push(Parameters::normalize(3, &ms, Some(s)).unwrap());
        }
    }
    for p in &instances {
        let (want, trace) = formulas::star_matching_ramsey(p).map_err(|e| e.to_string())?;
        agree(p, want)?;
        cases.insert(trace.final_rule().unwrap().label());
        count += 1;
    }
    for (ms, s, want) in [([3, 3], 2, 4), ([3, 4], 2, 5)] {
        let p = Parameters::normalize(3, &ms, Some(s)).unwrap();
        let (v, _) = formulas::star_matching_ramsey(&p).map_err(|e| e.to_string())?;
        if v != want {
            return Err(format!("{p}: formula {v}, expected {want}"));
        }
        agree(&p, want)?;
    }
    let cases: Vec<&str> = cases.into_iter().collect();
    Ok(format!(
        "{count} instances agree, rules {}; (3,3,s=2)=4, (3,4,s=2)=5",
        cases.join(" ")
    ))
}

fn sweep() -> Vec<Parameters> {
    let mut out = Vec::new();
    for t in 2..=5 {
        for ms in sorted_tuples(t, 1, 9) {
            out.push(Parameters::normalize(t as i64, &ms, None).unwrap());
        }
    }
    for t in 3..=4 {
        for ms in sorted_tuples(t - 1, 1, 9) {
            for s in 1..=6 {
                out.push(Parameters::normalize(t as i64, &ms, Some(s)).unwrap());
            }
        }
    }
    out
}

fn check_witness(p: &Parameters) -> Result<(), String> {
    let w = build_witness(p).map_err(|e| format!("{p}: {e}"))?;
    let (value, _) = formulas::ramsey_value(p).map_err(|e| e.to_string())?;
    let c = &w.coloring;
    if c.n() as u64 + 1 != value {
        return Err(format!("{p}: witness on {} vertices, R = {value}", c.n()));
    }
    if !checker::coloring_arrives(c, &p.targets()).avoids() {
        return Err(format!("{p}: witness arrives"));
    }
    let n = c.n();
    let stars = p.stars();
    match w.construction {
        Construction::LowerStarEven | Construction::LowerStarParity => {
            for (i, &m) in stars.iter().enumerate() {
                if m as usize <= n {
                    let got = min_color_degree(c, (i + 1) as Color).unwrap_or(0);
                    if got < n - m as usize {
                        return Err(format!(
                            "{p}: color {} degree {got} < {}",
                            i + 1,
                            n - m as usize
                        ));
                    }
                }
            }
        }
        Construction::NearFactorExact => {
            for (v, degs) in c.color_degrees().iter().enumerate() {
                for (i, &m) in stars.iter().enumerate() {
                    if degs[i + 1] != n - m as usize {
                        return Err(format!(
                            "{p}: vertex {v} color {} degree {}",
                            i + 1,
                            degs[i + 1]
                        ));
                    }
                }
            }
        }
        _ => {}
    }
    if let Some(s) = p.matching() {
        if max_matching(c, ColorSet::full(p.t() - 1)).len() as u64 >= s {
            return Err(format!("{p}: matching of size {s} in colors 1..t-1"));
        }
    }
    Ok(())
}

fn criterion_5(instances: &[Parameters]) -> Check {
    for p in instances {
        check_witness(p)?;
    }
    Ok(format!("{} witnesses certified", instances.len()))
}

fn criterion_6(instances: &[Parameters]) -> Check {
    let value = |p: &Parameters| {
        formulas::ramsey_value(p)
            .map(|(v, _)| v)
            .map_err(|e| format!("{p}: {e}"))
    };
    let mut boundary = 0;
    for p in instances {
        let v = value(p)?;
        let t = p.t();
        let user: Vec<i64> = p.stars().iter().map(|&m| m as i64).collect();
        match p.matching() {
            None => {
                let (chain, trace) = formulas::star_chain(p.stars()).map_err(|e| e.to_string())?;
                if chain.windows(2).any(|w| w[1] > w[0]) {
                    return Err(format!("{p}: chain {chain:?} increases"));
                }
                if trace.replay() != Some(v) {
                    return Err(format!("{p}: trace does not replay"));
                }
                let rule = trace.final_rule().unwrap();
                if t >= 3 && rule != Rule::ReduceEquality {
                    let x = derived_quantities(p).map_err(|e| e.to_string())?.x;
                    if !(x - 1 < v && v <= x + 1) {
                        return Err(format!("{p}: R = {v} outside ({}, {}]", x - 1, x + 1));
                    }
                }
                if t >= 3 {
                    let r_prev = chain[chain.len() - 2];
                    if p.stars()[t - 1] + 1 == r_prev {
                        boundary += 1;
                        let (counting, _) =
                            formulas::counting_value(p.stars()).map_err(|e| e.to_string())?;
                        if counting != r_prev {
                            return Err(format!(
                                "{p}: counting {counting} != R_prev {r_prev} at boundary"
                            ));
                        }
                    }
                }
            }
            Some(s) => {
                let more = Parameters::normalize(t as i64, &user, Some(s as i64 + 1)).unwrap();
                if value(&more)? < v {
                    return Err(format!("{p}: value drops when s grows"));
                }
            }
        }
        for i in 0..user.len() {
            let mut bigger = user.clone();
            bigger[i] += 1;
            let q =
                Parameters::normalize(t as i64, &bigger, p.matching().map(|s| s as i64)).unwrap();
            if value(&q)? < v {
                return Err(format!("{p}: value drops when m_{} grows", i + 1));
            }
        }
    }
    Ok(format!(
        "{} instances; {boundary} boundary points agree",
        instances.len()
    ))
}

fn brute_star(c: &Coloring, missing: Color, m: usize) -> bool {
    let n = c.n();
    (0..n).any(|v| {
        let others: Vec<usize> = (0..n).filter(|&u| u != v).collect();
        if m > others.len() {
            return false;
        }
        // enumerate every m-subset of the other vertices
        (0u32..1 << others.len())
            .filter(|mask| mask.count_ones() as usize == m)
            .any(|mask| {
                others
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| mask >> j & 1 == 1)
                    .all(|(_, &u)| c.color(u, v) != missing)
            })
    })
}

fn brute_matching(adj: &[Vec<bool>], used: &mut [bool], from: usize) -> usize {
    let n = adj.len();
    let Some(v) = (from..n).find(|&v| !used[v]) else {
        return 0;
    };
    used[v] = true;
    let mut best = brute_matching(adj, used, v + 1);
    for u in v + 1..n {
        if adj[v][u] && !used[u] {
            used[u] = true;
            best = best.max(1 + brute_matching(adj, used, v + 1));
            used[u] = false;
        }
    }
    used[v] = false;
    best
}

fn criterion_7() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for trial in 0..1000 {
        let n = rng.gen_range(2..=8);
        let t = rng.gen_range(2..=4);
        let c = random_coloring_with(n, t, &mut rng);
        let missing = rng.gen_range(1..=t) as Color;
        let m = rng.gen_range(1..=n);
        let fast = star_missing_color(&c, missing, m as u64);
        if fast.is_some() != brute_star(&c, missing, m) {
            return Err(format!(
                "star trial {trial}: n={n} t={t} missing={missing} m={m}"
            ));
        }
        if let Some(e) = fast {
            let ok = e.leaves.len() == m
                && e.leaves
                    .iter()
                    .all(|&u| u != e.center && c.color(u, e.center) != missing);
            if !ok {
                return Err(format!("star trial {trial}: bad embedding {e:?}"));
            }
        }
    }
    for trial in 0..1000 {
        let n = rng.gen_range(1..=10);
        let density: f64 = rng.gen_range(0.05..0.95);
        let mut adj = vec![vec![false; n]; n];
        let mut lists = vec![Vec::new(); n];
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(density) {
                    adj[u][v] = true;
                    adj[v][u] = true;
                    lists[u].push(v);
                    lists[v].push(u);
                }
            }
        }
        let mate = maximum_matching(&lists);
        for (v, m) in mate.iter().enumerate() {
            if let Some(u) = *m {
                if !adj[v][u] || mate[u] != Some(v) {
                    return Err(format!("matching trial {trial}: invalid mate {v}-{u}"));
                }
            }
        }
        let size = mate.iter().flatten().count() / 2;
        let want = brute_matching(&adj, &mut vec![false; n], 0);
        if size != want {
            return Err(format!(
                "matching trial {trial}: blossom {size}, brute force {want}"
            ));
        }
    }
    Ok("1000 star and 1000 matching trials, 0 disagreements".into())
}

fn criterion_8(instances: &[Parameters]) -> Check {
    let exe = env!("CARGO_BIN_EXE_ramsey");
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let next = AtomicUsize::new(0);
    let failure: Mutex<Option<String>> = Mutex::new(None);
    let jobs = std::thread::available_parallelism()
        .map_or(4, |n| n.get())
        .min(16);

    let run_one = |i: usize, p: &Parameters| -> Result<(), String> {
        let path = dir.path().join(format!("w{i}.txt"));
        let path_s = path.to_str().unwrap();
        let stars: Vec<String> = p.stars().iter().map(u64::to_string).collect();
        let mut args = vec![
            "-t".to_string(),
            p.t().to_string(),
            "-m".to_string(),
            stars.join(","),
        ];
        if let Some(s) = p.matching() {
            args.extend(["-s".to_string(), s.to_string()]);
        }
        let w = Command::new(exe)
            .arg("witness")
            .args(&args)
            .args(["--out", path_s])
            .output()
            .map_err(|e| e.to_string())?;
        if w.status.code() != Some(0) {
            return Err(format!("{p}: witness exit {:?}", w.status.code()));
        }
        let v = Command::new(exe)
            .arg("verify")
            .arg(path_s)
            .args(&args)
            .output()
            .map_err(|e| e.to_string())?;
        if v.status.code() != Some(0) || v.stdout != b"AVOIDS\n" {
            return Err(format!("{p}: verify exit {:?}", v.status.code()));
        }
        let text = std::fs::read_to_string(&path).map_err(|e| e.to_string())?;
        let c = read_coloring(&text).map_err(|e| format!("{p}: {e}"))?;
        if write_coloring(&c) != text {
            return Err(format!("{p}: certificate round-trip differs"));
        }
        Ok(())
    };

    std::thread::scope(|scope| {
        for _ in 0..jobs {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= instances.len() || failure.lock().unwrap().is_some() {
                    break;
                }
                if let Err(e) = run_one(i, &instances[i]) {
                    failure.lock().unwrap().get_or_insert(e);
                }
            });
        }
    });
    match failure.into_inner().unwrap() {
        Some(e) => Err(e),
        None => Ok(format!(
            "{} instances: witness -> verify exit 0, round-trip identical",
            instances.len()
        )),
    }
}

fn main() {
    let instances = sweep();
    let criteria: Vec<Criterion> = vec![
        (
            "base-case grid",
            Some(Duration::from_secs(30)),
            Box::new(criterion_1),
        ),
        (
            "three-color star grid",
            Some(Duration::from_secs(60)),
            Box::new(criterion_2),
        ),
        (
            "parity case spot check",
            Some(Duration::from_secs(60)),
            Box::new(criterion_3),
        ),
        (
            "stars plus matching grid",
            Some(Duration::from_secs(120)),
            Box::new(criterion_4),
        ),
        (
            "witness sweep",
            Some(Duration::from_secs(300)),
            Box::new(|| criterion_5(&instances)),
        ),
        (
            "structural invariants",
            None,
            Box::new(|| criterion_6(&instances)),
        ),
        (
            "checker oracles",
            Some(Duration::from_secs(60)),
            Box::new(criterion_7),
        ),
        ("pipeline", None, Box::new(|| criterion_8(&instances))),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let took = start.elapsed();
        let verdict = match result {
            Ok(detail) => match limit {
                Some(limit) if took > *limit => {
                    Err(format!("{detail}, but took longer than {limit:?}"))
                }
                _ => Ok(detail),
            },
            Err(e) => Err(e),
        };
        match verdict {
            Ok(detail) => println!(
                "[PASS] criterion {}: {name}: {detail} ({:.2}s)",
                i + 1,
                took.as_secs_f64()
            ),
            Err(e) => {
                failed += 1;
                println!(
                    "[FAIL] criterion {}: {name}: {e} ({:.2}s)",
                    i + 1,
                    took.as_secs_f64()
                );
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
