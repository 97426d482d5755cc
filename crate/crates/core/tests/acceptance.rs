//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each,
//! and exits non-zero if any criterion fails.

mod common;

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use adderkit::adders::CLA_COUT_NET;
use adderkit::analysis::{
    compare, decomposition_sweep, enumerate_decompositions, partition_sweep, random_vectors,
    roster, table2_variants, table3_roster, verify, ModulePolicy, SweepOptions, VerifyMode,
};
use adderkit::{
    arrival_times, build, critical_path, AdderSpec, AreaModel, CarryInMode, ClaStyle, GateKind,
    Netlist, PrefixTopology, Simulator, TimingModel,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn net(spec: &AdderSpec) -> Result<Netlist, String> {
    build(spec).map_err(|e| format!("{}: {e}", spec.name()))
}

/// Hybrid variants exercised alongside the roster at `width`.
fn fbha_variants(width: usize) -> Vec<AdderSpec> {
    let mut out = Vec::new();
    let ks: Vec<usize> = match width {
        4 => vec![1, 2, 3],
        8 => vec![2, 4, 6, 7],
        16 => vec![8, 12],
        32 => vec![16, 24, 28],
        _ => vec![32, 48, 56],
    };
    for k in ks {
        let decomps =
            enumerate_decompositions(k, &[1, 2, 4, 8], Some(3)).expect("size 1 always fits");
        for d in decomps {
            for style in [ClaStyle::Conventional, ClaStyle::DelayOptimized] {
                out.push(AdderSpec::fbha(width, k, &d, style));
            }
        }
    }
    out
}

fn extra_structures(width: usize) -> Vec<AdderSpec> {
    vec![
        AdderSpec::prefix(width, PrefixTopology::LadnerFischer),
        AdderSpec::prefix(width, PrefixTopology::HanCarlson),
    ]
}

fn c1_functional() -> Outcome {
    let mut exhaustive = 0u64;
    let mut sampled = 0u64;
    let mut designs = 0;
    for (width, mode) in [(4, CarryInMode::Variable), (8, CarryInMode::None)] {
        for spec in roster(width)
            .into_iter()
            .chain(fbha_variants(width))
            .chain(extra_structures(width))
        {
            let n = net(&spec.with_carry_in(mode))?;
            let o = verify(&n, VerifyMode::Exhaustive).map_err(|e| e.to_string())?;
            let expected = 1u64 << (2 * width + mode.has_input() as usize);
            check(o.passed() && o.vectors_run == expected, || {
                format!(
                    "{} exhaustive: {:?} after {}",
                    n.name, o.result, o.vectors_run
                )
            })?;
            exhaustive += o.vectors_run;
            designs += 1;
        }
    }
    let jobs: Vec<AdderSpec> = [16, 32, 64]
        .into_iter()
        .flat_map(|width| {
            [CarryInMode::None, CarryInMode::Variable]
                .into_iter()
                .flat_map(move |mode| {
                    roster(width)
                        .into_iter()
                        .chain(fbha_variants(width))
                        .chain(extra_structures(width))
                        .map(move |s| s.with_carry_in(mode))
                })
        })
        .collect();
    let results: Vec<Result<u64, String>> = std::thread::scope(|scope| {
        let threads = std::thread::available_parallelism().map_or(4, |n| n.get());
        let handles: Vec<_> = jobs
            .chunks(jobs.len().div_ceil(threads))
            .map(|chunk| {
                scope.spawn(move || {
                    let mut run = 0;
                    for spec in chunk {
                        let n = net(spec)?;
                        for m in [
                            VerifyMode::Random {
                                count: 100_000,
                                seed: 7,
                            },
                            VerifyMode::Directed,
                        ] {
                            let o = verify(&n, m).map_err(|e| e.to_string())?;
                            check(o.passed(), || format!("{} {m}: {:?}", n.name, o.result))?;
                            run += o.vectors_run;
                        }
                    }
                    Ok(run)
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("worker panicked"))
            .collect()
    });
    for r in results {
        sampled += r?;
    }
    designs += jobs.len();
    Ok(format!(
        "{designs} designs, {exhaustive} exhaustive + {sampled} random/directed vectors, 0 mismatches"
    ))
}

fn c2_equivalence() -> Outcome {
    let nets: Vec<Netlist> = table3_roster().iter().map(net).collect::<Result<_, _>>()?;
    let vectors = random_vectors(32, false, 100_000, 2024);
    let outputs: Vec<_> = nets
        .iter()
        .map(|n| Simulator::new(n).and_then(|s| s.run_vectors(&vectors)))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    let mut pairs = 0;
    for i in 0..nets.len() {
        for j in i + 1..nets.len() {
            let diff = outputs[i]
                .iter()
                .zip(&outputs[j])
                .filter(|(x, y)| x != y)
                .count();
            check(diff == 0, || {
                format!("{} vs {}: {diff} disagreements", nets[i].name, nets[j].name)
            })?;
            pairs += 1;
        }
    }
    Ok(format!(
        "{} adders, {pairs} pairs, 100000 shared vectors, 0 disagreements",
        nets.len()
    ))
}

fn delay(spec: &AdderSpec, timing: &TimingModel) -> Result<f64, String> {
    Ok(critical_path(&net(spec)?, timing).delay)
}

fn c3_ranking() -> Outcome {
    let unit = TimingModel::unit();
    let chain = [
        AdderSpec::prefix(32, PrefixTopology::KoggeStone),
        AdderSpec::fbha(32, 24, &[2, 2, 4, 4, 4, 8], ClaStyle::DelayOptimized),
        AdderSpec::cla(32, &[4; 8], ClaStyle::DelayOptimized),
        AdderSpec::cla(32, &[4; 8], ClaStyle::Conventional),
        AdderSpec::rca(32),
    ];
    let delays: Vec<f64> = chain
        .iter()
        .map(|s| delay(s, &unit))
        .collect::<Result<_, _>>()?;
    let text: Vec<String> = chain
        .iter()
        .zip(&delays)
        .map(|(s, d)| format!("{}={d}", s.name()))
        .collect();
    check(delays.windows(2).all(|w| w[0] < w[1]), || {
        format!("not strictly increasing: {}", text.join(" "))
    })?;
    Ok(text.join(" < "))
}

fn c4_subsumption() -> Outcome {
    let unit = TimingModel::unit();
    let n = net(&AdderSpec::fbha(32, 24, &[4; 6], ClaStyle::DelayOptimized))?;
    let cout = n
        .net_named(CLA_COUT_NET)
        .ok_or("no lookahead carry-out net")?;
    let arrival = arrival_times(&n, &unit)[cout.index()];
    let total = critical_path(&n, &unit).delay;
    let mux = unit.delay(GateKind::Mux2);
    check(total == arrival + mux, || {
        format!("critical path {total} != {arrival} + {mux}")
    })?;
    Ok(format!(
        "critical path {total} = CLA carry-out {arrival} + MUX2 {mux}"
    ))
}

fn c5_sweep() -> Outcome {
    let unit = TimingModel::unit();
    let options = SweepOptions {
        vectors: 10_000,
        ..SweepOptions::default()
    };
    let r = partition_sweep(
        32,
        &[4, 8, 12, 16],
        &ModulePolicy::Uniform(4),
        ClaStyle::DelayOptimized,
        &unit,
        &options,
    )
    .map_err(|e| e.to_string())?;
    let d: Vec<f64> = r.rows.iter().map(|row| row.delay).collect();
    let (d4, d8, d12, d16) = (d[0], d[1], d[2], d[3]);
    check(d8 < d4 && d8 < d12 && d12 < d16, || {
        format!("delays X=4,8,12,16: {d:?}")
    })?;
    check(r.best().csla_width == 8, || {
        format!("argmin at X={}", r.best().csla_width)
    })?;

    let variants = table2_variants();
    let t2 = decomposition_sweep(32, 24, &variants, ClaStyle::DelayOptimized, &unit, &options)
        .map_err(|e| e.to_string())?;
    let slowest = t2.rows[0].delay;
    check(t2.rows[0].modules == vec![2; 12], || {
        "first variant is not 2x12".into()
    })?;
    check(t2.rows[1..].iter().all(|row| row.delay < slowest), || {
        let v: Vec<String> = t2
            .rows
            .iter()
            .map(|r| format!("{}={}", r.label, r.delay))
            .collect();
        format!("2x12 is not strictly slowest: {}", v.join(" "))
    })?;
    Ok(format!(
        "X=4:{d4} X=8:{d8} X=12:{d12} X=16:{d16}, argmin X=8; 2x12 slowest of 8 variants ({slowest})"
    ))
}

fn c6_area() -> Outcome {
    let specs = table3_roster();
    let counts: Vec<(String, usize)> = specs
        .iter()
        .map(|s| net(s).map(|n| (n.name.clone(), n.gate_count())))
        .collect::<Result<_, _>>()?;
    let rca = counts
        .iter()
        .find(|c| c.0 == "RCA_32")
        .ok_or("no RCA row")?
        .1;
    let ksa = counts
        .iter()
        .find(|c| c.0 == "KSA_32")
        .ok_or("no KSA row")?
        .1;
    let fbha = counts
        .iter()
        .find(|c| c.0.starts_with("FBHA_8_24[8,4,4,4,2,2]"))
        .ok_or("no FBHA row")?
        .1;
    check(counts.iter().all(|c| c.0 == "RCA_32" || c.1 > rca), || {
        format!("RCA {rca} not the unique minimum: {counts:?}")
    })?;
    check(ksa > fbha, || format!("KSA {ksa} <= FBHA_844422 {fbha}"))?;
    Ok(format!(
        "RCA {rca} gates is the minimum; KSA {ksa} > FBHA_844422 {fbha}"
    ))
}

fn mutants(base: &Netlist, count: usize, rng: &mut ChaCha8Rng) -> Vec<(usize, GateKind, Netlist)> {
    let two_input = [
        GateKind::And2,
        GateKind::Or2,
        GateKind::Nand2,
        GateKind::Nor2,
        GateKind::Xor2,
        GateKind::Xnor2,
    ];
    let candidates: Vec<usize> = base
        .gates
        .iter()
        .filter(|g| two_input.contains(&g.kind))
        .map(|g| g.id.index())
        .collect();
    (0..count)
        .map(|_| {
            let g = candidates[rng.gen_range(0..candidates.len())];
            let old = base.gates[g].kind;
            let choices: Vec<GateKind> = two_input.iter().copied().filter(|&k| k != old).collect();
            let new = choices[rng.gen_range(0..choices.len())];
            let m = base
                .with_gate_kind(base.gates[g].id, new)
                .expect("same arity");
            (g, new, m)
        })
        .collect()
}

fn c7_oracles() -> Outcome {
    // Path enumeration against the timing engine.
    let mut timed = 0;
    let mut paths = 0u64;
    for timing in [TimingModel::unit(), TimingModel::weighted()] {
        for width in 1..=8 {
            for mode in [CarryInMode::None, CarryInMode::Variable] {
                for spec in roster(width).into_iter().chain(extra_structures(width)) {
                    let n = net(&spec.with_carry_in(mode))?;
                    if n.gate_count() > 200 {
                        continue;
                    }
                    let (want, count) = common::enumerate_longest_path(&n, &timing);
                    let got = critical_path(&n, &timing);
                    check(got.delay == want, || {
                        format!(
                            "{} {}: {} vs enumerated {want}",
                            n.name,
                            timing.name(),
                            got.delay
                        )
                    })?;
                    let along: f64 = got
                        .path
                        .iter()
                        .map(|g| timing.delay(n.gates[g.index()].kind))
                        .sum();
                    check(along == want, || {
                        format!("{}: witness path sums to {along}", n.name)
                    })?;
                    timed += 1;
                    paths += count;
                }
            }
        }
    }

    // Mutation detection with independent re-simulation.
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut caught = 0;
    let mut equivalent = 0;
    for base in [
        AdderSpec::rca(4),
        AdderSpec::fbha(8, 4, &[4], ClaStyle::DelayOptimized),
    ] {
        let base = net(&base)?;
        let width = base.width;
        for (g, kind, m) in mutants(&base, 20, &mut rng) {
            let differs = (0..1u64 << (2 * width)).any(|v| {
                let (a, b) = (v & ((1 << width) - 1), v >> width);
                common::eval_adder(&m, a, b, None) != common::reference_add(a, b, false, width)
            });
            let o = verify(&m, VerifyMode::Exhaustive).map_err(|e| e.to_string())?;
            match o.counterexample() {
                Some(c) => {
                    let replay = common::eval_adder(&m, c.a, c.b, c.cin);
                    check(replay == (c.actual_sum, c.actual_cout), || {
                        format!("{} g{g}->{kind}: counterexample does not replay", base.name)
                    })?;
                    check(
                        replay != common::reference_add(c.a, c.b, false, width),
                        || format!("{} g{g}->{kind}: replay matches the oracle", base.name),
                    )?;
                    caught += 1;
                }
                None => {
                    check(!differs, || {
                        format!("{} g{g}->{kind}: faulty mutant passed verify", base.name)
                    })?;
                    equivalent += 1;
                }
            }
        }
    }
    check(caught > 0, || "no mutant was caught".into())?;
    Ok(format!(
        "{timed} netlists match {paths} enumerated paths; 40 mutants: {caught} caught and replayed, {equivalent} functionally equivalent"
    ))
}

fn c8_determinism() -> Outcome {
    let specs = table3_roster();
    let run = || {
        compare(
            &specs,
            &TimingModel::unit(),
            &AreaModel::tcount(),
            100_000,
            42,
        )
        .map_err(|e| e.to_string())
    };
    let (a, b) = (run()?, run()?);
    check(a.to_json() == b.to_json(), || {
        "JSON differs between runs".into()
    })?;
    check(a.to_csv() == b.to_csv(), || {
        "CSV differs between runs".into()
    })?;
    let ones = a.rows.iter().filter(|r| r.normalized_pdp == 1.0).count();
    check(ones == 1, || format!("{ones} rows have normalized_pdp 1.0"))?;
    check(
        a.rows
            .iter()
            .all(|r| r.normalized_pdp > 0.0 && r.normalized_pdp <= 1.0),
        || "normalized_pdp outside (0, 1]".into(),
    )?;
    Ok(format!(
        "{} rows, identical JSON ({} bytes) and CSV, one normalized_pdp = 1.0",
        a.rows.len(),
        a.to_json().len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("C1 functional correctness", c1_functional),
        ("C2 cross-architecture equivalence", c2_equivalence),
        ("C3 unit-delay ranking", c3_ranking),
        ("C4 carry subsumption identity", c4_subsumption),
        ("C5 partition sweep crossover", c5_sweep),
        ("C6 gate-count signs", c6_area),
        ("C7 timing and mutation oracles", c7_oracles),
        ("C8 report determinism", c8_determinism),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let start = Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS  {name}: {detail} [{secs:.1}s]"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {name}: {detail} [{secs:.1}s]");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 8 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
