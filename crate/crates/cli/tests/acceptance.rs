//! Acceptance criteria, one line each. Run with
//! `cargo test -p orbispace-cli --test acceptance`.

use std::collections::{HashSet, VecDeque};
use std::path::PathBuf;
use std::time::{Duration, Instant};

use orbispace_cli::{parse_document, run};
use orbispace_linalg::{frac, rat, Rat, RatMatrix};
use orbispace_numlab::{float_rank, lab_suite, materialize, RANK_THRESHOLD};
use orbispace_reducer::reduce_to_2stable;
use orbispace_repmodel::{fixed_dim_on_lines, fixed_dim_on_v0, MonomialElement, RepSpec};
use orbispace_verdict::{analyze, check_main_conditions, Topological};
use orbispace_weightset::{indecomposable_components, is_q_stable, two_stable_via_crit, WeightMultiset};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

const SEED: u64 = 20_240_601;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn spec_text(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("specs").join(name);
    std::fs::read_to_string(p).unwrap()
}

fn load(name: &str) -> RepSpec {
    parse_document(&spec_text(name)).unwrap().to_spec().unwrap()
}

fn cli(args: &[&str], stdin: &str) -> (i32, String) {
    let args: Vec<String> = args.iter().map(|s| s.to_string()).collect();
    let out = run(&args, &mut stdin.as_bytes(), None);
    (out.code, out.stdout)
}

// Fraction-free elimination over i128; independent of the rational code.
fn int_rank(vectors: &[&Vec<i64>], m: usize) -> usize {
    let mut a: Vec<Vec<i128>> = vectors.iter().map(|v| v.iter().map(|&x| x as i128).collect()).collect();
    let mut rank = 0;
    for col in 0..m {
        let Some(p) = (rank..a.len()).find(|&r| a[r][col] != 0) else { continue };
        a.swap(rank, p);
        for r in 0..a.len() {
            if r != rank && a[r][col] != 0 {
                let (f, g) = (a[rank][col], a[r][col]);
                for c in 0..m {
                    a[r][c] = a[r][c] * f - a[rank][c] * g;
                }
                let gcd = a[r].iter().fold(0i128, |acc, &x| gcd(acc, x.abs()));
                if gcd > 1 {
                    a[r].iter_mut().for_each(|x| *x /= gcd);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 { a } else { gcd(b, a % b) }
}

fn rank_of(items: &[Vec<i64>], idx: &[usize], m: usize) -> usize {
    int_rank(&idx.iter().map(|&i| &items[i]).collect::<Vec<_>>(), m)
}

fn subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u32..1 << n).map(move |mask| (0..n).filter(|i| mask >> i & 1 == 1).collect())
}

/// Removal of every subset of at most `q` items keeps the span.
fn stable_oracle(items: &[Vec<i64>], m: usize, q: usize) -> bool {
    let all: Vec<usize> = (0..items.len()).collect();
    let full = rank_of(items, &all, m);
    subsets(items.len()).filter(|s| s.len() <= q).all(|s| {
        let kept: Vec<usize> = all.iter().copied().filter(|i| !s.contains(i)).collect();
        rank_of(items, &kept, m) == full
    })
}

fn random_multiset(rng: &mut ChaCha8Rng, max_items: usize) -> (usize, Vec<Vec<i64>>) {
    let m = rng.gen_range(1..=4);
    let n = rng.gen_range(1..=max_items);
    let items = (0..n).map(|_| (0..m).map(|_| rng.gen_range(-3..=3)).collect()).collect();
    (m, items)
}

fn nonzero(items: &[Vec<i64>]) -> Vec<usize> {
    (0..items.len()).filter(|&i| items[i].iter().any(|&x| x != 0)).collect()
}

fn count_bound_violations(items: &[Vec<i64>], m: usize, q: usize, stable: bool) -> usize {
    let nz = nonzero(items);
    let k = rank_of(items, &nz, m);
    usize::from(stable && k > 0 && nz.len() < k + q)
}

fn stability_oracle() -> (Outcome, usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut mismatches = 0;
    let mut violations = 0;
    for _ in 0..1000 {
        let (m, items) = random_multiset(&mut rng, 8);
        let p = WeightMultiset::new(m, items.clone()).unwrap();
        for q in 1..=3 {
            let got = is_q_stable(&p, q).unwrap();
            mismatches += usize::from(got != stable_oracle(&items, m, q));
            violations += count_bound_violations(&items, m, q, got);
        }
    }
    (outcome(mismatches == 0, format!("1000 multisets x q in 1..=3, {mismatches} mismatches")), violations)
}

fn crit_property() -> (Outcome, usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 1);
    let (mut cases, mut mismatches, mut violations) = (0, 0, 0);
    while cases < 300 {
        let (m, items) = random_multiset(&mut rng, 8);
        let nz = nonzero(&items);
        if rank_of(&items, &nz, m) == 0 || !stable_oracle(&items, m, 1) {
            continue;
        }
        cases += 1;
        let p = WeightMultiset::new(m, items.clone()).unwrap();
        let two = is_q_stable(&p, 2).unwrap();
        mismatches += usize::from(two_stable_via_crit(&p).unwrap() != two);
        violations += count_bound_violations(&items, m, 1, true) + count_bound_violations(&items, m, 2, two);
    }
    (outcome(mismatches == 0, format!("300 1-stable multisets, {mismatches} mismatches")), violations)
}

/// Splits blocks along any bipartition with independent spans until none is left.
fn bipartition_oracle(items: &[Vec<i64>], m: usize) -> Vec<Vec<usize>> {
    let mut done = Vec::new();
    let mut todo = vec![nonzero(items)];
    while let Some(block) = todo.pop() {
        if block.is_empty() {
            continue;
        }
        let r = rank_of(items, &block, m);
        let split = (1u32..1 << (block.len() - 1)).find_map(|mask| {
            let (a, b): (Vec<usize>, Vec<usize>) = (0..block.len()).partition(|i| mask >> i & 1 == 1);
            let a: Vec<usize> = a.iter().map(|&i| block[i]).collect();
            let b: Vec<usize> = b.iter().map(|&i| block[i]).collect();
            (rank_of(items, &a, m) + rank_of(items, &b, m) == r).then_some((a, b))
        });
        match split {
            Some((a, b)) => {
                todo.push(a);
                todo.push(b);
            }
            None => done.push(block),
        }
    }
    done.sort();
    done
}

fn decomposition_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 2);
    let (mut cases, mut mismatches) = (0, 0);
    while cases < 300 {
        let (m, items) = random_multiset(&mut rng, 8);
        if nonzero(&items).len() > 7 {
            continue;
        }
        cases += 1;
        let p = WeightMultiset::new(m, items.clone()).unwrap();
        let mut got = indecomposable_components(&p).unwrap().blocks;
        got.sort();
        mismatches += usize::from(got != bipartition_oracle(&items, m));
    }
    outcome(mismatches == 0, format!("300 multisets with <= 7 nonzero items, {mismatches} mismatches"))
}

fn random_monomial(rng: &mut ChaCha8Rng) -> (RepSpec, MonomialElement) {
    let n = rng.gen_range(1..=4);
    let v0 = rng.gen_range(0..=3);
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let conj = (0..n).map(|_| rng.gen_bool(0.4)).collect();
    let rot = (0..n)
        .map(|_| {
            let d = *[1i64, 2, 3, 4, 5, 6, 8, 12].choose(rng).unwrap();
            rat(rng.gen_range(0..d), d)
        })
        .collect();
    let mut cols: Vec<usize> = (0..v0).collect();
    cols.shuffle(rng);
    let block: Vec<Vec<i64>> = (0..v0)
        .map(|i| (0..v0).map(|j| if cols[i] == j { if rng.gen_bool(0.5) { 1 } else { -1 } } else { 0 }).collect())
        .collect();
    let g = MonomialElement::new(perm, conj, rot, RatMatrix::from_i64(&block));
    let spec = RepSpec::new(WeightMultiset::new(1, vec![vec![1]; n]).unwrap(), v0, vec![]);
    (spec, g)
}

fn exact_vs_float_rank() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 3);
    let mut mismatches = 0;
    for _ in 0..500 {
        let (spec, g) = random_monomial(&mut rng);
        let exact = spec.real_dim() - fixed_dim_on_lines(&g) - fixed_dim_on_v0(&g.v0_block);
        let e_minus_g = orbispace_numlab::FloatMatrix::identity(spec.real_dim(), spec.real_dim()) - materialize(&g, &spec);
        mismatches += usize::from(exact != float_rank(&e_minus_g, RANK_THRESHOLD));
    }
    outcome(mismatches == 0, format!("500 random elements, {mismatches} mismatches at threshold {RANK_THRESHOLD:e}"))
}

fn reduction_end_to_end() -> Outcome {
    let pairs = load("pairs.json");
    let t = reduce_to_2stable(&pairs).unwrap();
    let f = &t.final_spec;
    let pairs_ok = t.steps.len() == 2 && f.m() == 0 && f.v0_dim == 6;
    let pairs_yes = analyze(&pairs).unwrap().topological == Topological::Yes;
    let hopf = load("hopf.json");
    let th = reduce_to_2stable(&hopf).unwrap();
    let hopf_yes = analyze(&hopf).unwrap().topological == Topological::Yes;
    outcome(
        pairs_ok && pairs_yes && th.steps.len() == 1 && hopf_yes,
        format!(
            "pairs: {} steps to m={} v0_dim={} topological yes={pairs_yes}; hopf: {} step, yes={hopf_yes}",
            t.steps.len(),
            f.m(),
            f.v0_dim,
            th.steps.len()
        ),
    )
}

fn verdict_suite() -> Outcome {
    let cases: [(&str, Option<&str>, Option<&str>, &str); 6] = [
        ("torus_only.json", None, Some("no"), "Abel"),
        ("coloop.json", Some("no"), None, "Prop1st"),
        ("g23.json", Some("yes"), None, "GiHr"),
        ("rank_two.json", Some("yes"), None, "MainSufficiency"),
        ("plane_reflection.json", Some("no"), None, "Cor1dim"),
        ("plane_minus_e.json", Some("yes"), None, "Mich"),
    ];
    let mut failures = Vec::new();
    for (name, top, smooth, tag) in cases {
        let text = spec_text(name);
        let (code, first) = cli(&["analyze"], &text);
        let (_, second) = cli(&["analyze"], &text);
        let v: Value = serde_json::from_str(&first).unwrap();
        let tags: Vec<&str> = v["certificate"].as_array().unwrap().iter().filter_map(|s| s["theorem"].as_str()).collect();
        let mut ok = code == 0 && first == second && tags.contains(&tag);
        ok &= top.is_none_or(|t| v["topological"] == t);
        ok &= smooth.is_none_or(|s| v["smooth_for_all_d"] == s);
        if name == "rank_two.json" {
            ok &= tags.contains(&"AdGE");
        }
        if !ok {
            failures.push(format!("{name}: {first}"));
        }
    }
    outcome(failures.is_empty(), if failures.is_empty() { "6 documents, certificates byte-stable".into() } else { failures.join("; ") })
}

fn condition_one_arithmetic() -> Outcome {
    let spec = load("rank_two.json");
    let items = spec.weights.items();
    let m = spec.m();
    let independent = subsets(items.len()).filter(|s| s.len() == m).all(|s| rank_of(items, &s, m) == m);
    let (conds, _) = check_main_conditions(&spec).unwrap();
    outcome(
        items.len() == m + 2 && independent && conds.i,
        format!("|P| = {} = m + 2 = {}, every {m}-subset independent: {independent}, condition (i): {}", items.len(), m + 2, conds.i),
    )
}

fn quotient_lab() -> Outcome {
    let reports = lab_suite(SEED, 1000);
    let get = |name: &str| reports.iter().find(|r| r.check == name).unwrap();
    let (inv, re, sep) = (get("tor_invariance"), get("quaternion_real_part"), get("tor_separation"));
    outcome(
        inv.max_defect < 1e-9 && re.max_defect < 1e-12 && sep.pass,
        format!(
            "1000 trials: orbit invariance {:.2e}, quaternion real part {:.2e}, separation {:.2e} ({})",
            inv.max_defect,
            re.max_defect,
            sep.max_defect,
            if sep.pass { "pass" } else { "fail" }
        ),
    )
}

/// Closure of the generators modulo the scalar torus of three equal weights:
/// rotations are compared up to a common shift.
fn scalar_torus_closure(spec: &RepSpec) -> usize {
    let key = |g: &MonomialElement| {
        let r = g.target_rotations();
        let shift = r[0].clone();
        let rel: Vec<Rat> = r.iter().map(|x| frac(&(x - &shift))).collect();
        (g.perm.clone(), g.conj.clone(), rel)
    };
    let gens = spec.generator_elements();
    let id = spec.identity();
    let mut seen = HashSet::from([key(&id)]);
    let mut queue = VecDeque::from([id]);
    while let Some(h) = queue.pop_front() {
        for g in &gens {
            let next = g.compose(&h);
            if seen.insert(key(&next)) {
                queue.push_back(next);
            }
        }
    }
    seen.len()
}

fn component_group_order() -> Outcome {
    let (code, out) = cli(&["group"], &spec_text("g23.json"));
    let v: Value = serde_json::from_str(&out).unwrap();
    let order = v["order"].as_u64().unwrap_or(0) as usize;
    let (p, q) = (1u64, 2u64);
    let closed_form = ((p * q).pow(3) * 6 / p / 2 / 2 * 2) as usize;
    let brute = scalar_torus_closure(&load("g23.json"));
    outcome(
        code == 0 && order == 24 && closed_form == 24 && brute == 24,
        format!("{order} cosets; closed form {closed_form}; brute-force closure {brute}"),
    )
}

fn main() {
    let mut all = true;
    let mut report = |n: usize, name: &str, limit: Option<Duration>, f: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let o = f();
        let took = start.elapsed();
        let in_time = limit.is_none_or(|l| took < l);
        let pass = o.pass && in_time;
        all &= pass;
        let limit = limit.map_or(String::new(), |l| format!(" (limit {}s)", l.as_secs()));
        println!("{} {n:>2} {name}: {} [{:.2}s{limit}]", if pass { "PASS" } else { "FAIL" }, o.detail, took.as_secs_f64());
    };
    let mut violations = 0;
    report(1, "stability oracle", Some(Duration::from_secs(10)), &mut || {
        let (o, v) = stability_oracle();
        violations += v;
        o
    });
    report(2, "crit property", None, &mut || {
        let (o, v) = crit_property();
        violations += v;
        o
    });
    report(3, "decomposition oracle", None, &mut decomposition_oracle);
    report(4, "count bound", None, &mut || outcome(violations == 0, format!("{violations} violations over all generated q-stable sets")));
    report(5, "exact vs float rank", Some(Duration::from_secs(5)), &mut exact_vs_float_rank);
    report(6, "reduction end to end", None, &mut reduction_end_to_end);
    report(7, "verdict suite", Some(Duration::from_secs(5)), &mut verdict_suite);
    report(8, "condition (i) arithmetic", None, &mut condition_one_arithmetic);
    report(9, "quotient-map lab", Some(Duration::from_secs(10)), &mut quotient_lab);
    report(10, "component group order", None, &mut component_group_order);
    if !all {
        std::process::exit(1);
    }
}
