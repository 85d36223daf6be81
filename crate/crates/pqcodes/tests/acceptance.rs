//! Acceptance gate: runs the twelve release criteria end to end and
//! prints exactly one PASS/FAIL line per criterion.  The process exits
//! nonzero if any criterion fails, which fails `cargo test`.
//!
//! Criteria 4, 6, 7, and 10 all quantify over the same generated corpus
//! (every direct-sum code with n ≤ 4 and q ∈ {2,3}, the four-word
//! counterexample code, and every code found by exhaustive search at
//! n ≤ 2), so that corpus is streamed once into a shared tally, in
//! parallel batches.

use std::collections::BTreeSet;
use std::ops::ControlFlow;
use std::time::Instant;

use rayon::prelude::*;

use pqcodes::decomp::{
    decompose_all, indecomposable_codewords, sample_disjoint_families, verify_disjoint_family,
};
use pqcodes::field::FieldSpec;
use pqcodes::lattice::{build_lattice_from_code, build_projective_lattice};
use pqcodes::search::{
    build_direct_sum_code, complete_addition_table, conjecture_harness, for_each_direct_sum_code,
    remark_counterexample, search_max_linear_code, SearchConfig,
};
use pqcodes::subspace::{
    canonicalize, enumerate_grassmannian, enumerate_projective_space, gaussian_binomial, Subspace,
};
use pqcodes::{Field, SubspaceCode};

const BATCH: usize = 512;

fn main() {
    let criteria: Vec<(&str, Box<dyn FnOnce(&CorpusTally) -> Result<String, String>>)> = vec![
        ("enumeration counts match the q-binomial oracle", Box::new(|_| criterion_1())),
        ("subspace distance is a metric on all of P_2(3)", Box::new(|_| criterion_2())),
        ("four-word counterexample: linear, not closed, caveat dim 1", Box::new(|_| criterion_3())),
        ("union-intersection iff and direct-sum identity across the corpus", Box::new(criterion_4)),
        ("lattice profile of P_2(3)", Box::new(|_| criterion_5())),
        ("closed corpus codes form geometric distributive sublattices with atoms = indecomposables", Box::new(criterion_6)),
        ("closed-code size bound and distributive height bound", Box::new(criterion_7)),
        ("exhaustive search n=2 q=2 tops out at 4", Box::new(|_| criterion_8())),
        ("no table on all 16 words of P_2(3); n=3 maximum is 8", Box::new(|_| criterion_9())),
        ("decomposition into indecomposables is unique across the corpus", Box::new(criterion_10)),
        ("sampled disjoint families are independent with additive sums", Box::new(|_| criterion_11())),
        ("closed implies unique basis on every discovered code at n <= 3", Box::new(|_| criterion_12())),
    ];

    println!("building the shared corpus tally ...");
    let started = Instant::now();
    let tally = corpus_tally();
    println!(
        "corpus: {} codes ({} closed) tallied in {:.1?}\n",
        tally.codes,
        tally.closed_codes,
        started.elapsed()
    );

    let mut failures = 0usize;
    for (number, (name, run)) in criteria.into_iter().enumerate() {
        let t = Instant::now();
        let result = run(&tally);
        let elapsed = t.elapsed();
        match result {
            Ok(detail) => {
                println!("criterion {:02} PASS — {name}: {detail} [{elapsed:.1?}]", number + 1);
            }
            Err(detail) => {
                failures += 1;
                println!("criterion {:02} FAIL — {name}: {detail} [{elapsed:.1?}]", number + 1);
            }
        }
    }
    if failures > 0 {
        println!("\n{failures} criterion(s) failed");
        std::process::exit(1);
    }
    println!("\nall 12 criteria passed");
}

fn gf(q: u8) -> Field {
    FieldSpec::gf(q).expect("small field orders are supported")
}

fn ensure(cond: bool, detail: &str) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(detail.to_string())
    }
}

// ---------------------------------------------------------------- corpus

#[derive(Debug, Default, Clone, Copy)]
struct CorpusTally {
    codes: usize,
    linear_failures: usize,
    uit_violations: usize,
    closed_codes: usize,
    sublattice_failures: usize,
    atom_mismatches: usize,
    size_bound_violations: usize,
    distributive_lattices: usize,
    birkhoff_violations: usize,
    decompose_failures: usize,
    decomposed_words: usize,
    roundtrip_failures: usize,
}

impl CorpusTally {
    fn absorb(&mut self, other: CorpusTally) {
        self.codes += other.codes;
        self.linear_failures += other.linear_failures;
        self.uit_violations += other.uit_violations;
        self.closed_codes += other.closed_codes;
        self.sublattice_failures += other.sublattice_failures;
        self.atom_mismatches += other.atom_mismatches;
        self.size_bound_violations += other.size_bound_violations;
        self.distributive_lattices += other.distributive_lattices;
        self.birkhoff_violations += other.birkhoff_violations;
        self.decompose_failures += other.decompose_failures;
        self.decomposed_words += other.decomposed_words;
        self.roundtrip_failures += other.roundtrip_failures;
    }
}

fn corpus_tally() -> CorpusTally {
    let mut tally = CorpusTally::default();
    let mut batch: Vec<SubspaceCode> = Vec::with_capacity(BATCH);

    for q in [2u8, 3] {
        for n in 1..=4usize {
            for_each_direct_sum_code(n, &gf(q), &mut |code| {
                batch.push(code.clone());
                if batch.len() == BATCH {
                    flush(&mut batch, &mut tally);
                }
                ControlFlow::Continue(())
            })
            .expect("direct-sum corpus enumerates within desk caps");
        }
    }

    batch.push(remark_counterexample(&gf(2), 3).expect("counterexample builds at n=3"));
    for q in [2u8, 3] {
        for n in 1..=2usize {
            let outcome = search_max_linear_code(&SearchConfig::new(n, gf(q)))
                .expect("n <= 2 searches are within desk caps");
            assert!(outcome.exhausted, "unbudgeted n <= 2 search must exhaust");
            batch.extend(outcome.codes);
            if batch.len() >= BATCH {
                flush(&mut batch, &mut tally);
            }
        }
    }
    flush(&mut batch, &mut tally);
    tally
}

fn flush(batch: &mut Vec<SubspaceCode>, tally: &mut CorpusTally) {
    let sub = batch
        .par_iter()
        .map(tally_one)
        .reduce(CorpusTally::default, |mut a, b| {
            a.absorb(b);
            a
        });
    tally.absorb(sub);
    batch.clear();
}

fn tally_one(code: &SubspaceCode) -> CorpusTally {
    let mut t = CorpusTally {
        codes: 1,
        ..CorpusTally::default()
    };

    match code.verify_union_intersection() {
        Err(_) => {
            t.linear_failures = 1;
            return t;
        }
        Ok(report) => {
            if !report.passed {
                t.uit_violations = 1;
            }
        }
    }

    if !code.is_closed_under_intersection() {
        return t;
    }
    t.closed_codes = 1;

    if code.len() > 1usize << code.ambient() {
        t.size_bound_violations = 1;
    }

    let lattice = build_lattice_from_code(code).expect("closed codes form sublattices");
    let geometric = lattice.check_geometric();
    let distributive = lattice.check_distributive();
    if !(geometric.holds && distributive.holds) {
        t.sublattice_failures = 1;
    }
    if distributive.holds {
        t.distributive_lattices = 1;
        let birkhoff = lattice
            .check_birkhoff_bound()
            .expect("distributivity was just established");
        if !birkhoff.passed {
            t.birkhoff_violations = 1;
        }
    }

    let ind = indecomposable_codewords(code).expect("corpus codes are linear");
    let atom_set: BTreeSet<&Subspace> = lattice
        .atoms()
        .into_iter()
        .map(|p| lattice.element(p))
        .collect();
    let ind_set: BTreeSet<&Subspace> = ind.iter().map(|&w| code.word(w)).collect();
    if atom_set != ind_set {
        t.atom_mismatches = 1;
    }

    match decompose_all(code) {
        Ok(decompositions) => {
            t.decomposed_words = decompositions.len();
            let k = ind.len();
            if 1usize << k != code.len() || k > code.ambient() {
                t.decompose_failures = 1;
            }
        }
        Err(_) => t.decompose_failures = 1,
    }

    let blocks: Vec<Subspace> = ind.iter().map(|&w| code.word(w).clone()).collect();
    if blocks.is_empty() {
        // No indecomposables happens exactly for the one-word code {{0}},
        // whose direct sum is the empty fold; nothing to rebuild.
        if code.len() != 1 {
            t.roundtrip_failures = 1;
        }
    } else {
        match build_direct_sum_code(&blocks) {
            Ok(rebuilt) if same_code(&rebuilt, code) => {}
            _ => t.roundtrip_failures = 1,
        }
    }

    t
}

fn same_code(a: &SubspaceCode, b: &SubspaceCode) -> bool {
    let key = |c: &SubspaceCode| {
        let canon = c.canonicalized();
        (
            canon.words().to_vec(),
            canon.table().map(|t| t.rows().to_vec()),
        )
    };
    key(a) == key(b)
}

// -------------------------------------------------------------- criteria

fn criterion_1() -> Result<String, String> {
    let cases: [(usize, u8, usize); 3] = [(2, 2, 5), (3, 2, 16), (4, 2, 67)];
    for (n, q, expect) in cases {
        let count = enumerate_projective_space(n, &gf(q))
            .map_err(|e| e.to_string())?
            .len();
        let oracle: u128 = (0..=n).map(|k| gaussian_binomial(n, k, q as u64)).sum();
        ensure(
            count == expect && oracle == expect as u128,
            &format!("|P_{q}({n})| came out {count} with oracle {oracle}, wanted {expect}"),
        )?;
    }
    let plane_count = enumerate_grassmannian(4, 2, &gf(2))
        .map_err(|e| e.to_string())?
        .len();
    ensure(
        plane_count == 35 && gaussian_binomial(4, 2, 2) == 35,
        &format!("|G_2(4,2)| came out {plane_count}"),
    )?;
    Ok("counts 5, 16, 67 and 35 all match the q-binomial sums".to_string())
}

fn criterion_2() -> Result<String, String> {
    let space = enumerate_projective_space(3, &gf(2)).map_err(|e| e.to_string())?;
    let m = space.len();
    let mut dist = vec![vec![0usize; m]; m];
    for (i, x) in space.iter().enumerate() {
        for (j, y) in space.iter().enumerate() {
            let meet = x.intersect(y).map_err(|e| e.to_string())?;
            dist[i][j] = x.dim() + y.dim() - 2 * meet.dim();
        }
    }
    let mut checked = 0usize;
    for i in 0..m {
        ensure(dist[i][i] == 0, &format!("d(x,x) != 0 at {i}"))?;
        for j in 0..m {
            ensure(
                (dist[i][j] == 0) == (i == j),
                &format!("identity of indiscernibles fails at ({i},{j})"),
            )?;
            ensure(
                dist[i][j] == dist[j][i],
                &format!("symmetry fails at ({i},{j})"),
            )?;
            for k in 0..m {
                checked += 1;
                ensure(
                    dist[i][k] <= dist[i][j] + dist[j][k],
                    &format!("triangle inequality fails at ({i},{j},{k})"),
                )?;
            }
        }
    }
    Ok(format!("all four axioms hold over {checked} triples of P_2(3)"))
}

fn criterion_3() -> Result<String, String> {
    let code = remark_counterexample(&gf(2), 3).map_err(|e| e.to_string())?;
    let linear = code.is_linear().map_err(|e| e.to_string())?;
    ensure(linear.passed, "the counterexample code must verify as linear")?;
    ensure(
        !code.is_closed_under_intersection(),
        "the counterexample code must not be closed under intersection",
    )?;
    let table = code.table().expect("construction carries its table");
    let meet = code
        .word(1)
        .intersect(code.word(2))
        .map_err(|e| e.to_string())?;
    let caveat = meet
        .intersect(code.word(table.add(1, 2)))
        .map_err(|e| e.to_string())?;
    ensure(
        caveat.dim() == 1,
        &format!("(X1 ∩ X2) ∩ (X1 ⊞ X2) has dimension {}", caveat.dim()),
    )?;
    Ok("linear yes, closed no, (X1 ∩ X2) ∩ (X1 ⊞ X2) has dimension 1".to_string())
}

fn criterion_4(tally: &CorpusTally) -> Result<String, String> {
    ensure(
        tally.linear_failures == 0,
        &format!("{} corpus codes failed linearity", tally.linear_failures),
    )?;
    ensure(
        tally.uit_violations == 0,
        &format!("{} corpus codes violated the union-intersection laws", tally.uit_violations),
    )?;
    Ok(format!(
        "iff and direct-sum identity verified on all pairs of {} corpus codes, zero violations",
        tally.codes
    ))
}

fn criterion_5() -> Result<String, String> {
    let lattice = build_projective_lattice(3, &gf(2)).map_err(|e| e.to_string())?;
    let profile = lattice.profile();
    ensure(profile.modular.holds, "P_2(3) must be modular")?;
    ensure(profile.geometric.holds, "P_2(3) must be geometric")?;
    ensure(
        !profile.distributive.holds,
        "P_2(3) must not be distributive",
    )?;
    let witness = profile
        .distributive
        .witness
        .as_ref()
        .ok_or("a distributivity failure needs a witness triple")?;
    ensure(
        profile.height == 3 && profile.atoms.len() == 7,
        &format!(
            "height {} with {} atoms, wanted 3 and 7",
            profile.height,
            profile.atoms.len()
        ),
    )?;
    Ok(format!(
        "modular and geometric, not distributive (witness {:?}), height 3, 7 atoms",
        witness.indices
    ))
}

fn criterion_6(tally: &CorpusTally) -> Result<String, String> {
    ensure(
        tally.sublattice_failures == 0,
        &format!(
            "{} closed codes failed the geometric/distributive sublattice checks",
            tally.sublattice_failures
        ),
    )?;
    ensure(
        tally.atom_mismatches == 0,
        &format!(
            "{} closed codes had atoms differing from their indecomposables",
            tally.atom_mismatches
        ),
    )?;
    Ok(format!(
        "all {} closed corpus codes give geometric distributive sublattices whose atoms are exactly the indecomposables",
        tally.closed_codes
    ))
}

fn criterion_7(tally: &CorpusTally) -> Result<String, String> {
    ensure(
        tally.size_bound_violations == 0,
        &format!("{} closed codes exceeded 2^n words", tally.size_bound_violations),
    )?;
    ensure(
        tally.birkhoff_violations == 0,
        &format!(
            "{} distributive lattices exceeded 2^height elements",
            tally.birkhoff_violations
        ),
    )?;
    Ok(format!(
        "M <= 2^n on all {} closed codes; size <= 2^height on all {} distributive lattices",
        tally.closed_codes, tally.distributive_lattices
    ))
}

fn criterion_8() -> Result<String, String> {
    let outcome =
        search_max_linear_code(&SearchConfig::new(2, gf(2))).map_err(|e| e.to_string())?;
    ensure(outcome.exhausted, "the n=2 search must cover every subset")?;
    ensure(
        outcome.max_size == 4,
        &format!("maximum size came out {}", outcome.max_size),
    )?;
    Ok(format!(
        "maximum 4 = 2^2 with full coverage ({} nodes)",
        outcome.stats.nodes
    ))
}

fn criterion_9() -> Result<String, String> {
    let space = enumerate_projective_space(3, &gf(2)).map_err(|e| e.to_string())?;
    assert_eq!(space.len(), 16);
    let tables = complete_addition_table(&space).map_err(|e| e.to_string())?;
    ensure(
        tables.is_empty(),
        &format!("{} isometric tables exist on all 16 words", tables.len()),
    )?;
    let outcome =
        search_max_linear_code(&SearchConfig::new(3, gf(2))).map_err(|e| e.to_string())?;
    ensure(outcome.exhausted, "the n=3 search must cover every subset")?;
    ensure(
        outcome.max_size == 8,
        &format!("maximum size came out {}", outcome.max_size),
    )?;
    Ok("no table on all of P_2(3); exhaustive maximum is 8".to_string())
}

fn criterion_10(tally: &CorpusTally) -> Result<String, String> {
    ensure(
        tally.decompose_failures == 0,
        &format!(
            "{} closed codes failed unique decomposition or the indecomposable count law",
            tally.decompose_failures
        ),
    )?;
    ensure(
        tally.roundtrip_failures == 0,
        &format!(
            "{} closed codes failed the rebuild-from-indecomposables round trip",
            tally.roundtrip_failures
        ),
    )?;
    Ok(format!(
        "unique decomposition for {} words across {} closed codes; indecomposable counts equal log2 M <= n; round trip exact",
        tally.decomposed_words, tally.closed_codes
    ))
}

fn criterion_11() -> Result<String, String> {
    let f2 = gf(2);
    let axes6: Vec<Subspace> = (0..6)
        .map(|i| {
            let mut e = vec![0u8; 6];
            e[i] = 1;
            canonicalize(&[e], 6, &f2).expect("axis vectors canonicalize")
        })
        .collect();
    let f3 = gf(3);
    let plane_line = [
        canonicalize(&[vec![1, 0, 0], vec![0, 1, 0]], 3, &f3).expect("plane"),
        canonicalize(&[vec![0, 0, 1]], 3, &f3).expect("line"),
    ];
    let hosts = [
        (build_direct_sum_code(&axes6).map_err(|e| e.to_string())?, 60),
        (build_direct_sum_code(&plane_line).map_err(|e| e.to_string())?, 20),
        (remark_counterexample(&f2, 3).map_err(|e| e.to_string())?, 20),
    ];
    let mut families = 0usize;
    for (code, count) in &hosts {
        for family in sample_disjoint_families(code, *count, 0xC0DE_5EED) {
            let report = verify_disjoint_family(&family, code).map_err(|e| e.to_string())?;
            ensure(
                report.passed,
                &format!("family {family:?} failed: {:?}",
                    report.violations().map(|v| v.check.clone()).collect::<Vec<_>>()),
            )?;
            families += 1;
        }
    }
    ensure(families == 100, &format!("sampled {families} families, wanted 100"))?;
    Ok("100 seeded families: independent, box-sums equal vector sums, dimensions additive".to_string())
}

fn criterion_12() -> Result<String, String> {
    let mut examined = 0usize;
    let mut converse = 0usize;
    for n in 1..=3usize {
        let report =
            conjecture_harness(&SearchConfig::new(n, gf(2))).map_err(|e| e.to_string())?;
        ensure(
            report.outcome.exhausted,
            &format!("the n={n} harness search must exhaust"),
        )?;
        ensure(
            report.forward_counterexamples.is_empty(),
            &format!(
                "{} codes at n={n} are closed yet lack a unique indecomposable basis",
                report.forward_counterexamples.len()
            ),
        )?;
        ensure(
            report.bound_counterexamples.is_empty(),
            &format!(
                "{} codes at n={n} exceed 2^n words",
                report.bound_counterexamples.len()
            ),
        )?;
        examined += report.findings.len();
        converse += report.converse_findings.len();
    }
    Ok(format!(
        "closed => unique basis on all {examined} discovered codes; converse holds on {} of them (research note: {} unique-basis codes are not closed)",
        examined - converse,
        converse
    ))
}
