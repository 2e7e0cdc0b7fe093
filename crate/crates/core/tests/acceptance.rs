//! One test per acceptance criterion. Each prints a single
//! `criterion N: PASS|FAIL ...` line before asserting. All comparisons are
//! exact integer equality (tolerance zero).

use std::process::Command;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use negacode::cli::{cmd_construct, ReportFormat};
use negacode::cosets::{
    all_cosets, is_paired_partition, neg_q_coset_image, neg_q_image, CosetContext,
};
use negacode::eaqecc::{decompose, ea_params, ea_singleton_check};
use negacode::family::{
    build_defining_set, derive_context_unchecked, sweep, verify, verify_unchecked, Case,
    FamilyError, FamilyInput, FamilyReport,
};
use negacode::gf_oracle::{
    brute_force_distance, generator_polynomial, root_for, Poly, DEFAULT_BUDGET,
};
use negacode::negacyclic::{bch_bound, classical_params, make_defining_set};
use negacode::numth::{gcd, PrimePower};

type Quad = (u64, u64, u64, u64);

/// Reference table: `(m, case, ξ, q, codes for α = 1, 2, ...)`.
const TABLE4: &[(u64, Case, u64, u64, &[Quad])] = &[
    (1, Case::I, 1, 3, &[(10, 1, 10, 9)]),
    (1, Case::I, 2, 5, &[(26, 4, 16, 8), (26, 0, 26, 24)]),
    (
        1,
        Case::I,
        3,
        7,
        &[(50, 17, 22, 9), (50, 5, 36, 25), (50, 1, 50, 49)],
    ),
    (
        1,
        Case::I,
        4,
        9,
        &[
            (82, 36, 28, 8),
            (82, 16, 46, 24),
            (82, 4, 64, 48),
            (82, 0, 82, 80),
        ],
    ),
    (
        1,
        Case::I,
        5,
        11,
        &[
            (122, 65, 34, 9),
            (122, 37, 56, 25),
            (122, 17, 78, 49),
            (122, 5, 100, 81),
            (122, 1, 122, 121),
        ],
    ),
    (
        1,
        Case::I,
        6,
        13,
        &[
            (170, 100, 40, 8),
            (170, 64, 66, 24),
            (170, 36, 92, 48),
            (170, 16, 118, 80),
            (170, 4, 144, 120),
            (170, 0, 170, 168),
        ],
    ),
    (3, Case::I, 1, 17, &[(58, 0, 58, 56)]),
    (
        3,
        Case::I,
        3,
        37,
        &[(274, 80, 126, 56), (274, 20, 200, 144), (274, 0, 274, 272)],
    ),
    (
        3,
        Case::I,
        4,
        47,
        &[
            (442, 181, 160, 57),
            (442, 81, 254, 145),
            (442, 21, 348, 273),
            (442, 1, 442, 441),
        ],
    ),
    (3, Case::II, 1, 13, &[(34, 0, 34, 32)]),
    (3, Case::II, 2, 23, &[(106, 21, 60, 33), (106, 1, 106, 105)]),
    (
        3,
        Case::II,
        4,
        43,
        &[
            (370, 181, 112, 33),
            (370, 81, 198, 105),
            (370, 21, 284, 217),
            (370, 1, 370, 369),
        ],
    ),
    (5, Case::I, 1, 47, &[(170, 1, 170, 169)]),
    (
        5,
        Case::I,
        2,
        73,
        &[(410, 52, 264, 168), (410, 0, 410, 408)],
    ),
    (
        5,
        Case::I,
        4,
        125,
        &[
            (1202, 468, 452, 168),
            (1202, 208, 702, 408),
            (1202, 52, 952, 752),
            (1202, 0, 1202, 1200),
        ],
    ),
    (5, Case::II, 1, 31, &[(74, 1, 74, 73)]),
    (
        5,
        Case::II,
        3,
        83,
        &[(530, 209, 198, 73), (530, 53, 364, 249), (530, 1, 530, 529)],
    ),
    (
        5,
        Case::II,
        4,
        109,
        &[
            (914, 468, 260, 72),
            (914, 208, 478, 248),
            (914, 52, 696, 528),
            (914, 0, 914, 912),
        ],
    ),
    (
        7,
        Case::I,
        2,
        143,
        &[(818, 101, 532, 345), (818, 1, 818, 817)],
    ),
    (
        7,
        Case::I,
        3,
        193,
        &[
            (1490, 400, 718, 344),
            (1490, 100, 1104, 816),
            (1490, 0, 1490, 1488),
        ],
    ),
    (
        7,
        Case::II,
        2,
        107,
        &[(458, 101, 244, 129), (458, 1, 458, 457)],
    ),
    (
        7,
        Case::II,
        3,
        157,
        &[
            (986, 400, 358, 128),
            (986, 100, 672, 456),
            (986, 0, 986, 984),
        ],
    ),
];

fn report_line(n: u32, ok: bool, detail: &str) {
    println!(
        "criterion {n}: {} {detail}",
        if ok { "PASS" } else { "FAIL" }
    );
}

fn quad(r: &FamilyReport) -> (Quad, Quad) {
    (r.predicted.quadruple(), r.computed.quadruple())
}

#[test]
fn criterion_1_reference_table() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut rows = 0;
    for &(m, case, xi, q, codes) in TABLE4 {
        for (i, &expected) in codes.iter().enumerate() {
            rows += 1;
            let input = FamilyInput::new(m, xi, i as u64 + 1, case);
            let report = if q == 143 {
                // 143 = 11·13 is not a prime power: the strict path must refuse
                // it, the residue arithmetic alone still reproduces the row.
                if !matches!(verify(&input), Err(FamilyError::NotPrimePower(143))) {
                    failures.push(format!("{input:?}: strict verify accepted q=143"));
                }
                verify_unchecked(&input)
            } else {
                verify(&input)
            };
            match report {
                Ok(r) => {
                    let (p, c) = quad(&r);
                    if r.q != q || p != expected || c != expected || !r.matches {
                        failures.push(format!(
                            "{input:?}: q={} predicted {p:?} computed {c:?} want {expected:?}",
                            r.q
                        ));
                    }
                }
                Err(e) => failures.push(format!("{input:?}: {e}")),
            }
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    let ok = failures.is_empty() && rows == 61 && elapsed < 5.0;
    report_line(
        1,
        ok,
        &format!(
            "{rows} rows, {} failures, {elapsed:.2}s {failures:?}",
            failures.len()
        ),
    );
    assert!(ok);
}

#[test]
fn criterion_2_worked_examples() {
    let examples: &[(u64, Case, u64, &[Quad])] = &[
        (1, Case::I, 5, TABLE4[4].4),
        (3, Case::I, 3, TABLE4[7].4),
        (7, Case::II, 2, TABLE4[20].4),
        (5, Case::II, 4, TABLE4[17].4),
    ];
    let mut failures = Vec::new();
    let mut warned = Vec::new();
    for &(m, case, xi, codes) in examples {
        for (i, &expected) in codes.iter().enumerate() {
            let input = FamilyInput::new(m, xi, i as u64 + 1, case);
            let r = verify(&input).unwrap();
            let (p, c) = quad(&r);
            if p != expected || c != expected {
                failures.push(format!("{input:?}: {c:?} want {expected:?}"));
            }
            let threshold = (r.n + 2) / 2;
            if r.computed.is_eaqmds != (r.computed.d <= threshold) {
                failures.push(format!("{input:?}: EAQMDS flag wrong"));
            }
            let out = cmd_construct(input, ReportFormat::Table).unwrap();
            let has_warning = out.stdout.contains("warning: degenerate code");
            if has_warning != (expected.1 == 0) {
                failures.push(format!("{input:?}: degenerate warning = {has_warning}"));
            }
            if has_warning {
                warned.push(format!("[[{},{},{};{}]]_{}", c.0, c.1, c.2, c.3, r.q));
            }
        }
    }
    let want_warned = vec![
        "[[274,0,274;272]]_37".to_string(),
        "[[914,0,914;912]]_109".to_string(),
    ];
    let ok = failures.is_empty() && warned == want_warned;
    report_line(
        2,
        ok,
        &format!("degenerate warnings {warned:?}, failures {failures:?}"),
    );
    assert!(ok);
}

fn swept_reports() -> Vec<FamilyReport> {
    sweep(7, 6)
        .into_iter()
        .filter_map(|e| e.report().cloned())
        .filter(|r| r.q <= 1000 && r.input.alpha <= r.input.xi)
        .collect()
}

#[test]
fn criterion_3_entangled_pair_count() {
    let start = Instant::now();
    let reports = swept_reports();
    let mut mismatches = Vec::new();
    for r in &reports {
        let z = build_defining_set(&r.input).unwrap();
        let direct = z
            .residues()
            .intersection(&neg_q_image(z.ctx(), z.residues()))
            .len() as u64;
        if direct != r.predicted.c || direct != r.computed.c || !r.matches {
            mismatches.push(format!(
                "{:?}: |Z1|={direct} formula {}",
                r.input, r.predicted.c
            ));
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    let ok = mismatches.is_empty() && !reports.is_empty() && elapsed < 30.0;
    report_line(
        3,
        ok,
        &format!(
            "{} codes, {} mismatches, {elapsed:.2}s {mismatches:?}",
            reports.len(),
            mismatches.len()
        ),
    );
    assert!(ok);
}

#[test]
fn criterion_4_singleton_saturation() {
    let reports = swept_reports();
    let mut failures = Vec::new();
    for r in &reports {
        let p = &r.computed;
        let check = ea_singleton_check(p);
        let saturated = p.n + p.c - p.k == 2 * (p.d - 1);
        let eaqmds_expected = 2 * p.d <= p.n + 2;
        if !saturated || !check.saturated || check.slack != 0 || p.is_eaqmds != eaqmds_expected {
            failures.push(format!("{:?}: {p}", r.input));
        }
    }
    let eaqmds = reports.iter().filter(|r| r.computed.is_eaqmds).count();
    let ok = failures.is_empty() && !reports.is_empty();
    report_line(
        4,
        ok,
        &format!(
            "{} codes saturated, {eaqmds} EAQMDS, failures {failures:?}",
            reports.len()
        ),
    );
    assert!(ok);
}

#[test]
fn criterion_5_brute_force_oracle() {
    let start = Instant::now();
    let input = FamilyInput::new(1, 1, 1, Case::I);
    let z = build_defining_set(&input).unwrap();
    let classical = classical_params(&z);
    let root = root_for(z.ctx()).unwrap();
    let f = root.field();
    let g = generator_polynomial(&z, &root).unwrap();
    let (_, rem) = Poly::x_pow_plus_one(f, 10).divrem(&g, f);
    let d = brute_force_distance(&g, &root, DEFAULT_BUDGET).unwrap();
    let bch = bch_bound(&z).unwrap();
    let elapsed = start.elapsed().as_secs_f64();
    let ok = classical.k_dim == 1
        && d == 10
        && bch == 10
        && d == classical.n - classical.k_dim + 1
        && rem.is_zero()
        && elapsed < 1.0;
    report_line(
        5,
        ok,
        &format!(
            "[{},{}] over GF({}): brute force d={d}, BCH={bch}, g | x^10+1: {}, {elapsed:.3}s",
            classical.n,
            classical.k_dim,
            root.q().q().pow(2),
            rem.is_zero()
        ),
    );
    assert!(ok);
}

const ODD_PRIME_POWERS: &[u64] = &[
    3, 5, 7, 9, 11, 13, 17, 19, 23, 25, 27, 29, 31, 37, 41, 43, 47, 49, 53, 59, 61, 67, 71, 73, 79,
    81, 83, 89, 97,
];

#[test]
fn criterion_6_random_properties() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_c0de);
    let trials = 200;
    let mut failures = Vec::new();
    for trial in 0..trials {
        let q = ODD_PRIME_POWERS[rng.gen_range(0..ODD_PRIME_POWERS.len())];
        let n = loop {
            let n = rng.gen_range(1..=500u64);
            if gcd(n, q) == 1 {
                break n;
            }
        };
        let ctx = CosetContext::new(n, PrimePower::new(q).unwrap()).unwrap();
        let cosets = all_cosets(&ctx);

        // (a) partition of the odd residues
        let mut hits = vec![0u32; ctx.two_n() as usize];
        for c in &cosets {
            for x in c.elements().iter() {
                hits[x as usize] += 1;
            }
        }
        let partition = hits.iter().enumerate().all(|(x, &h)| h == (x % 2) as u32);

        // (b) -q permutes cosets and is an involution on them
        let involution = cosets.iter().all(|c| {
            let img = neg_q_coset_image(&ctx, c);
            cosets.contains(&img) && &neg_q_coset_image(&ctx, &img) == c
        });

        let reps: Vec<u64> = cosets
            .iter()
            .filter(|_| rng.gen_bool(0.5))
            .map(|c| c.representative())
            .collect();
        let z = make_defining_set(&ctx, &reps).unwrap();
        let dec = decompose(&z);

        // (c) Z2 and -qZ2 are disjoint
        let disjoint = dec.z2.is_disjoint(&neg_q_image(&ctx, &dec.z2));

        // (d) k + 2|Z| - |Z1| = n
        let p = ea_params(&z);
        let dimension = p.k + 2 * z.len() as u64 - dec.z1.len() as u64 == n;

        if !(partition && involution && disjoint && dimension) {
            failures.push(format!(
                "trial {trial} n={n} q={q}: a={partition} b={involution} c={disjoint} d={dimension}"
            ));
        }
    }
    let ok = failures.is_empty();
    report_line(
        6,
        ok,
        &format!("{trials} trials, {} failures {failures:?}", failures.len()),
    );
    assert!(ok);
}

#[test]
fn criterion_7_paired_coset_structure() {
    let mut contexts: Vec<(u64, u64)> = swept_reports().iter().map(|r| (r.n, r.q)).collect();
    contexts.sort_unstable();
    contexts.dedup();
    let failures: Vec<(u64, u64)> = contexts
        .iter()
        .copied()
        .filter(|&(n, q)| {
            !is_paired_partition(&CosetContext::new(n, PrimePower::new(q).unwrap()).unwrap())
        })
        .collect();
    // the non-prime-power row shares the residue structure
    let odd = derive_context_unchecked(&FamilyInput::new(7, 2, 1, Case::I)).unwrap();
    let odd_ok = is_paired_partition(&odd.coset_context().unwrap());
    let ok = failures.is_empty() && !contexts.is_empty() && odd_ok;
    report_line(
        7,
        ok,
        &format!(
            "{} contexts, failures {failures:?}, q=143 context paired: {odd_ok}",
            contexts.len()
        ),
    );
    assert!(ok);
}

#[test]
fn criterion_8_deterministic_csv() {
    let outputs: Vec<Vec<u8>> = (0..3)
        .map(|_| {
            let out = Command::new(env!("CARGO_BIN_EXE_negacode"))
                .args(["table", "--paper-table4", "--format", "csv"])
                .env_remove("NEGACODE_BUDGET")
                .output()
                .expect("binary runs");
            assert!(out.status.success(), "exit {:?}", out.status);
            out.stdout
        })
        .collect();
    let identical = outputs.windows(2).all(|w| w[0] == w[1]);
    let lines = outputs[0].iter().filter(|&&b| b == b'\n').count();
    // header plus 59 prime-power rows (the two q=143 rows are reported on stderr)
    let ok = identical && lines == 60;
    report_line(
        8,
        ok,
        &format!("3 runs identical: {identical}, {lines} lines"),
    );
    assert!(ok);
}
