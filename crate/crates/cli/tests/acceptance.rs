//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each,
//! and exits non-zero if any failed.

use std::collections::HashSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use hadamard_core::explorer::build_assignment;
use hadamard_core::{
    apply_transform, build_pool, code_from_matrix, explore, find_violation, gf2_rank, modified,
    no_song, paley_i, signature, sylvester_power, sylvester_product, write_matrix, Alphabet,
    AssignmentPlan, BitVector, Construction, EquivalenceTransform, Error, Execution,
    ExploreOptions, Family, HadamardMatrix, InvariantSignature, ModifiedInputs, PoolSpec, Strategy,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const ORDER_PAIRS: [(usize, usize); 7] = [(2, 2), (2, 4), (4, 4), (4, 8), (8, 8), (4, 12), (12, 4)];
const VARIANTS: usize = 3;
const MIN_ASSIGNMENTS: usize = 1000;
const RUNTIME_BUDGET: Duration = Duration::from_secs(60);
/// Exhaustive below this many tuples per (pair, construction), sampled above.
const EXHAUSTIVE_LIMIT: u64 = 2000;
const SAMPLED_COUNT: u64 = 300;
const MAX_EXHAUSTIVE_SCAN_ORDER: usize = 96;
const TRANSFORMS_PER_BASE: usize = 100;

type Outcome = Result<String, String>;
type Check<'a> = Box<dyn Fn() -> Outcome + 'a>;

fn pool(order: usize) -> Vec<HadamardMatrix> {
    build_pool(
        &PoolSpec::new(order, vec![Family::Sylvester, Family::Paley1])
            .with_variants(VARIANTS, 1000 + order as u64),
    )
    .expect("pool order is constructible")
}

fn slots(c: Construction, k: usize, m: usize) -> (usize, usize) {
    match c {
        Construction::Modified => (m, k),
        Construction::NoSong => (m, 1),
        Construction::Product => (1, 1),
    }
}

/// Every matrix produced by the criterion-1 sweep, tagged with its source.
fn sweep() -> (Vec<(String, HadamardMatrix)>, Duration) {
    let start = Instant::now();
    let mut out = Vec::new();
    for (k, m) in ORDER_PAIRS {
        let (pa, pb) = (pool(k), pool(m));
        for c in [
            Construction::Product,
            Construction::NoSong,
            Construction::Modified,
        ] {
            let (sa, sb) = slots(c, k, m);
            let plan = AssignmentPlan::new(
                (pa.len(), sa),
                (pb.len(), sb),
                Strategy::Exhaustive,
                0,
                EXHAUSTIVE_LIMIT,
            )
            .or_else(|_| {
                AssignmentPlan::new(
                    (pa.len(), sa),
                    (pb.len(), sb),
                    Strategy::Sampled {
                        count: SAMPLED_COUNT,
                    },
                    (k * 100 + m) as u64,
                    0,
                )
            })
            .expect("plan");
            for asg in plan.iter() {
                let h = build_assignment(c, &pa, &pb, &asg).expect("valid pool shapes");
                out.push((format!("{c} k={k} m={m} #{}", asg.index), h));
            }
        }
    }
    (out, start.elapsed())
}

fn ac1_closure(all: &[(String, HadamardMatrix)], elapsed: Duration) -> Outcome {
    let failures: Vec<_> = all
        .iter()
        .filter_map(|(tag, h)| find_violation(h.as_matrix()).map(|v| format!("{tag}: {v}")))
        .collect();
    if !failures.is_empty() {
        return Err(format!(
            "{} failures, first: {}",
            failures.len(),
            failures[0]
        ));
    }
    if all.len() < MIN_ASSIGNMENTS {
        return Err(format!(
            "only {} assignments, need {MIN_ASSIGNMENTS}",
            all.len()
        ));
    }
    if elapsed > RUNTIME_BUDGET {
        return Err(format!("sweep took {elapsed:?}, budget {RUNTIME_BUDGET:?}"));
    }
    Ok(format!(
        "{} matrices, 0 failures, {:.2?}",
        all.len(),
        elapsed
    ))
}

fn ac2_specialization() -> Outcome {
    let bytes = |h: &HadamardMatrix| write_matrix(h.as_matrix(), Alphabet::Binary);
    let mut checks = 0;
    for (k, m) in ORDER_PAIRS {
        let (pa, pb) = (pool(k), pool(m));
        let mut rng = ChaCha8Rng::seed_from_u64((k * 31 + m) as u64);
        let mut a_lists: Vec<Vec<HadamardMatrix>> = pa.iter().map(|a| vec![a.clone(); m]).collect();
        for _ in 0..4 {
            a_lists.push(
                (0..m)
                    .map(|_| pa[rng.gen_range(0..pa.len())].clone())
                    .collect(),
            );
        }
        for c in &pb {
            for a_list in &a_lists {
                let via_mod =
                    modified(&ModifiedInputs::new(a_list.clone(), vec![c.clone(); k]).unwrap());
                let via_ns = no_song(c, a_list).unwrap();
                if bytes(&via_mod) != bytes(&via_ns) {
                    return Err(format!("modified != nosong at k={k} m={m}"));
                }
                checks += 1;
            }
            for b in &pa {
                let via_ns = no_song(c, &vec![b.clone(); m]).unwrap();
                if bytes(&via_ns) != bytes(&sylvester_product(c, b)) {
                    return Err(format!("nosong != product at k={k} m={m}"));
                }
                checks += 1;
            }
        }
    }
    Ok(format!("{checks} byte-identical comparisons"))
}

fn pack(w: &BitVector) -> u64 {
    assert!(w.len() <= 64, "sweep orders stay within one word");
    w.iter()
        .enumerate()
        .fold(0, |acc, (i, b)| acc | (u64::from(b) << i))
}

fn ac3_code_parameters(all: &[(String, HadamardMatrix)]) -> Outcome {
    let mut checked = 0;
    for (tag, h) in all {
        let n = h.order();
        let code = code_from_matrix(h).map_err(|e| format!("{tag}: {e}"))?;
        let words: HashSet<u64> = code.words().iter().map(pack).collect();
        if code.size() != 2 * n || words.len() != 2 * n {
            return Err(format!("{tag}: {} words, expected {}", words.len(), 2 * n));
        }
        let ones = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        if !words.contains(&0) || !words.contains(&ones) {
            return Err(format!("{tag}: missing all-zero or all-one word"));
        }
        if n <= MAX_EXHAUSTIVE_SCAN_ORDER {
            let ws: Vec<u64> = words.iter().copied().collect();
            let scan = (0..ws.len())
                .flat_map(|i| (i + 1..ws.len()).map(move |j| (i, j)))
                .map(|(i, j)| (ws[i] ^ ws[j]).count_ones() as usize)
                .min()
                .unwrap();
            if scan != n / 2 || code.min_distance().unwrap() != n / 2 {
                return Err(format!("{tag}: min distance {scan}, expected {}", n / 2));
            }
        }
        checked += 1;
    }
    Ok(format!("{checked} codes with (n, 2n, n/2) parameters"))
}

fn ac4_kernel(all: &[(String, HadamardMatrix)]) -> Outcome {
    for (tag, h) in all {
        let n = h.order();
        let code = code_from_matrix(h).unwrap();
        let words: Vec<u64> = code.words().iter().map(pack).collect();
        let set: HashSet<u64> = words.iter().copied().collect();
        let kernel: HashSet<u64> = code.kernel().unwrap().iter().map(pack).collect();
        if !kernel.contains(&0) {
            return Err(format!("{tag}: kernel lacks zero"));
        }
        for &x in &kernel {
            for &y in &kernel {
                if !kernel.contains(&(x ^ y)) {
                    return Err(format!("{tag}: kernel not closed under xor"));
                }
            }
        }
        for &x in &words {
            let witness = words.iter().find(|&&c| !set.contains(&(x ^ c)));
            match (kernel.contains(&x), witness) {
                (true, Some(_)) => {
                    return Err(format!("{tag}: kernel member {x:#x} has a witness"))
                }
                (false, None) => return Err(format!("{tag}: non-member {x:#x} has no witness")),
                _ => {}
            }
        }
        let dim = code.dim_kernel().unwrap();
        if kernel.len() != 1 << dim || (2 * n) % (1 << dim) != 0 {
            return Err(format!("{tag}: 2^{dim} does not divide {}", 2 * n));
        }
    }
    Ok(format!("{} kernels match the translate oracle", all.len()))
}

/// Span size by closure under xor, independent of elimination.
fn span_rank(words: &[u64]) -> usize {
    let mut span: HashSet<u64> = HashSet::from([0]);
    for &w in words {
        if !span.contains(&w) {
            let next: Vec<u64> = span.iter().map(|s| s ^ w).collect();
            span.extend(next);
        }
    }
    span.len().trailing_zeros() as usize
}

fn ac5_linear_collapse() -> Outcome {
    for t in 1..=6u32 {
        let h = sylvester_power(t).unwrap();
        let n = 1usize << t;
        let code = code_from_matrix(&h).unwrap();
        let words: Vec<u64> = code.words().iter().map(pack).collect();
        let set: HashSet<u64> = words.iter().copied().collect();
        let oracle_kernel = words
            .iter()
            .filter(|&&x| words.iter().all(|&c| set.contains(&(x ^ c))))
            .count();
        let expected = InvariantSignature {
            order: n,
            rank: t as usize + 1,
            dim_kernel: t as usize + 1,
            min_distance: n / 2,
        };
        let sig = signature(&h).unwrap();
        let elim = gf2_rank(code.words()).unwrap();
        let span = span_rank(&words);
        if sig != expected
            || elim != span
            || oracle_kernel != 1 << (t + 1)
            || code.size() != 1 << elim
        {
            return Err(format!(
                "t={t}: signature {sig}, elimination rank {elim}, span rank {span}, kernel {oracle_kernel}"
            ));
        }
    }
    Ok("signatures (2^t, t+1, t+1, 2^(t-1)) for t = 1..6".into())
}

fn ac6_equivalence_invariance() -> Outcome {
    let bases = [
        sylvester_power(2).unwrap(),
        paley_i(3).unwrap(),
        sylvester_power(3).unwrap(),
        paley_i(7).unwrap(),
        paley_i(11).unwrap(),
        sylvester_power(4).unwrap(),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut mismatches = 0;
    for h in &bases {
        let want = signature(h).unwrap();
        for _ in 0..TRANSFORMS_PER_BASE {
            let t = EquivalenceTransform::random(h.order(), &mut rng);
            if signature(&apply_transform(h, &t).unwrap()).unwrap() != want {
                mismatches += 1;
            }
        }
    }
    if mismatches > 0 {
        return Err(format!("{mismatches} mismatches"));
    }
    Ok(format!(
        "{} transforms over orders 4, 8, 12, 16, 0 mismatches",
        bases.len() * TRANSFORMS_PER_BASE
    ))
}

fn ac7_determinism() -> Outcome {
    let (pa, pb) = (pool(4), pool(8));
    let sampled = ExploreOptions::new(Construction::Modified, Strategy::Sampled { count: 200 }, 77);
    let r1 = explore(&pa, &pb, &sampled).unwrap().to_json();
    let r2 = explore(&pa, &pb, &sampled).unwrap().to_json();
    if r1 != r2 {
        return Err("sampled reports differ between runs".into());
    }
    let (pa, pb) = (pool(4), pool(2));
    let exhaustive = ExploreOptions {
        execution: Execution::Sequential,
        ..ExploreOptions::new(Construction::Modified, Strategy::Exhaustive, 5)
    };
    let seq = explore(&pa, &pb, &exhaustive).unwrap();
    let par = explore(
        &pa,
        &pb,
        &ExploreOptions {
            execution: Execution::default(),
            ..exhaustive
        },
    )
    .unwrap();
    if seq.to_json() != par.to_json() || seq.to_csv() != par.to_csv() {
        return Err("exhaustive report depends on execution mode".into());
    }

    let dir = tempfile::TempDir::new().unwrap();
    let mut files = Vec::new();
    for i in 0..2 {
        let path = dir.path().join(format!("r{i}.json"));
        let status = Command::new(env!("CARGO_BIN_EXE_hadamard"))
            .args([
                "explore",
                "--construction",
                "modified",
                "--pool-a",
                "4:sylvester+paley1",
            ])
            .args([
                "--pool-b",
                "8:sylvester+paley1",
                "--variants",
                "3",
                "--strategy",
                "sampled:100",
            ])
            .args(["--seed", "12", "--out", path.to_str().unwrap()])
            .status()
            .unwrap();
        if !status.success() {
            return Err("cli explore failed".into());
        }
        files.push(std::fs::read(&path).unwrap());
    }
    if files[0] != files[1] {
        return Err("cli reports differ".into());
    }
    Ok(format!(
        "sampled, exhaustive (sequential vs {:?}) and CLI reports byte-identical",
        Execution::default()
    ))
}

fn ac8_negative_paths() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_hadamard");
    let dir = tempfile::TempDir::new().unwrap();
    let bad = dir.path().join("bad");
    std::fs::write(&bad, "4\n0000\n0011\n0011\n0110\n").unwrap();
    let o = Command::new(bin).arg("check").arg(&bad).output().unwrap();
    let out = String::from_utf8_lossy(&o.stdout);
    if o.status.code() != Some(1) || !out.contains("rows 2 and 3 are at distance 0") {
        return Err(format!("check: exit {:?}, output {out:?}", o.status.code()));
    }
    let o = Command::new(bin)
        .args(["gen", "--family", "paley1", "--q", "5"])
        .output()
        .unwrap();
    if o.status.success() || !String::from_utf8_lossy(&o.stderr).contains("invalid parameter") {
        return Err(format!("gen paley1 q=5: exit {:?}", o.status.code()));
    }
    match build_pool(&PoolSpec::new(6, vec![Family::Sylvester, Family::Paley1])) {
        Err(Error::InvalidParameter(_)) => {}
        other => return Err(format!("order-6 pool: {other:?}")),
    }
    let o = Command::new(bin)
        .args([
            "explore",
            "--construction",
            "product",
            "--pool-a",
            "6:sylvester",
            "--pool-b",
            "2:sylvester",
        ])
        .output()
        .unwrap();
    if o.status.code() != Some(1) {
        return Err(format!("cli order-6 pool: exit {:?}", o.status.code()));
    }
    Ok("check exit 1 with witness; paley1 q=5 and order-6 pools rejected".into())
}

fn main() {
    let (all, elapsed) = sweep();
    let criteria: Vec<(&str, Check)> = vec![
        (
            "AC1 construction closure",
            Box::new(|| ac1_closure(&all, elapsed)),
        ),
        ("AC2 specialization chain", Box::new(ac2_specialization)),
        (
            "AC3 Hadamard code parameters",
            Box::new(|| ac3_code_parameters(&all)),
        ),
        (
            "AC4 kernel vs definitional oracle",
            Box::new(|| ac4_kernel(&all)),
        ),
        ("AC5 linear-case collapse", Box::new(ac5_linear_collapse)),
        (
            "AC6 equivalence invariance",
            Box::new(ac6_equivalence_invariance),
        ),
        ("AC7 determinism", Box::new(ac7_determinism)),
        ("AC8 negative paths", Box::new(ac8_negative_paths)),
    ];
    let mut failed = 0;
    for (name, check) in &criteria {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        match outcome {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {name}: {detail}");
            }
        }
    }
    println!(
        "{} / {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
