//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the lines always reach stdout; the
//! process exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use mipkit_core::abelian::mho_sizes;
use mipkit_core::catalog::{auxiliary, corpus, embedded_annotations, CorpusEntry};
use mipkit_core::decomp::{elementary_decomposition, elementary_decomposition_random, power_structure_commutes};
use mipkit_core::families::{exceptional_isomorphism, family, qs_distinguisher, FamilyKind};
use mipkit_core::invariants::{compare, fingerprint, EAnnotation};
use mipkit_core::jennings::{series_by_membership, series_by_recursion, third_term_formula};
use mipkit_core::lemmas::{verify_lemmas, SuiteOptions};
use mipkit_core::pgroup::{a_n, frattini, k_n, socle};
use mipkit_core::{direct_product, isomorphic, GroupAlgebra, Group, Result, Subgroup};

const TABLE1_K1: [u64; 6] = [4, 4, 5, 5, 4, 5];
const TABLE1_A2: [u64; 6] = [0, 1, 2, 1, 1, 1];
const TABLE1_E: [u32; 6] = [5, 6, 6, 4, 4, 5];
const TABLE2_K1: [u64; 6] = [5, 5, 6, 6, 6, 6];
const TABLE2_A3: [u64; 6] = [2, 1, 2, 1, 0, 0];
const TABLE2_SOC: [u64; 6] = [4, 4, 4, 4, 4, 2];

const LIMIT_TABLE1: Duration = Duration::from_secs(10);
const LIMIT_TABLE2: Duration = Duration::from_secs(60);
const LIMIT_QS: Duration = Duration::from_secs(30);

const LEMMA_TRIALS: usize = 200;
const DECOMP_TRIALS: usize = 20;
const QS_CASES: [(u32, u32); 3] = [(2, 3), (2, 4), (3, 3)];

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome { passed, detail: detail.into() })
}

fn run(id: u32, name: &str, limit: Option<Duration>, f: impl FnOnce() -> Result<Outcome>) -> bool {
    let start = Instant::now();
    let result = f();
    let elapsed = start.elapsed();
    let (passed, detail) = match result {
        Ok(o) => (o.passed, o.detail),
        Err(e) => (false, format!("error: {e}")),
    };
    let in_time = limit.is_none_or(|l| elapsed <= l);
    let budget = limit.map_or_else(String::new, |l| format!(" / limit {:.0} s", l.as_secs_f64()));
    let ok = passed && in_time;
    println!(
        "{} [{id}] {name}: {detail} ({:.2} s{budget})",
        if ok { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64()
    );
    ok
}

fn column<T: ToString>(v: &[T]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn table1(c: &[CorpusEntry]) -> Result<Outcome> {
    let ann = embedded_annotations();
    let mut k1 = Vec::new();
    let mut a2 = Vec::new();
    let mut e = Vec::new();
    for entry in &c[..6] {
        k1.push(k_n(&entry.group, 1) as u64);
        a2.push(a_n(&entry.group, 2) as u64);
        e.push(ann.get(&entry.name).unwrap_or(0));
    }
    let ok = k1 == TABLE1_K1 && a2 == TABLE1_A2 && e == TABLE1_E;
    outcome(ok, format!("k_1 = ({}), a_2 = ({}), e = ({}) [{}]", column(&k1), column(&a2), column(&e), ann.source))
}

fn table2(c: &[CorpusEntry]) -> Result<Outcome> {
    let mut k1 = Vec::new();
    let mut a3 = Vec::new();
    let mut soc = Vec::new();
    for entry in &c[6..12] {
        k1.push(k_n(&entry.group, 1) as u64);
        a3.push(a_n(&entry.group, 3) as u64);
        soc.push(socle(&entry.group).order() as u64);
    }
    let ok = k1 == TABLE2_K1 && a3 == TABLE2_A3 && soc == TABLE2_SOC;
    outcome(ok, format!("k_1 = ({}), a_3 = ({}), |Soc| = ({})", column(&k1), column(&a3), column(&soc)))
}

fn separation(c: &[CorpusEntry]) -> Result<Outcome> {
    let ann = embedded_annotations();
    let fps = c
        .iter()
        .map(|e| {
            let tag = ann.get(&e.name).map(|value| EAnnotation { value, source: ann.source.clone() });
            fingerprint(&e.group, tag)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut pairs = 0;
    let mut separated = 0;
    let mut lines = Vec::new();
    for i in 0..c.len() {
        for j in i + 1..c.len() {
            if fps[i].order != fps[j].order {
                continue;
            }
            pairs += 1;
            let v = compare(&fps[i], &fps[j]);
            match v.field() {
                Some(field) => {
                    separated += 1;
                    lines.push(format!("{}/{}: {field}", c[i].label, c[j].label));
                }
                None => lines.push(format!("{}/{}: INDISTINGUISHABLE", c[i].label, c[j].label)),
            }
        }
    }
    for l in &lines {
        println!("    {l}");
    }
    outcome(separated == pairs, format!("{separated}/{pairs} equal-order pairs distinguished"))
}

fn qs() -> Result<Outcome> {
    let mut parts = Vec::new();
    let mut ok = true;
    for (m, n) in QS_CASES {
        let r = qs_distinguisher(m, n)?;
        ok &= r.passed();
        parts.push(format!(
            "({m},{n}): Q {} / S {} (witness a-1: {}), |P| = {}, ranks {:?}",
            r.q_verdict.key(),
            r.s_verdict.key(),
            r.s_witness_is_a,
            r.p_order,
            r.p_jennings_ranks
        ));
    }
    outcome(ok, parts.join("; "))
}

fn lemma_groups(c: &[CorpusEntry]) -> Result<Vec<(String, Group)>> {
    let aux = auxiliary()?;
    let mut out: Vec<(String, Group)> =
        c.iter().filter(|e| e.group.order() <= 64).map(|e| (e.label.clone(), e.group.clone())).collect();
    for name in ["D_8", "Q_8", "C_4 x C_2", "C_2 x D_8"] {
        let e = aux.iter().find(|e| e.name == name).expect("auxiliary group");
        out.push((e.name.clone(), e.group.clone()));
    }
    Ok(out)
}

fn lemmas(c: &[CorpusEntry]) -> Result<Outcome> {
    let opts = SuiteOptions { trials: LEMMA_TRIALS, ..SuiteOptions::default() };
    let mut total = 0;
    let mut failures = Vec::new();
    let groups = lemma_groups(c)?;
    for (name, g) in &groups {
        for check in verify_lemmas(g, &opts)? {
            total += 1;
            if !check.passed {
                failures.push(format!("{name}: {check}"));
            }
        }
    }
    for f in &failures {
        println!("    {f}");
    }
    outcome(failures.is_empty(), format!("{total} checks on {} groups, {} failures", groups.len(), failures.len()))
}

fn partitions(n: u32, max: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in (1..=n.min(max)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn prop_abelian() -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut pairs = 0;
    let mut mismatches = 0;
    for p in [2usize, 3] {
        let mut groups = Vec::new();
        let mut e = 0;
        while p.pow(e) <= 64 {
            for part in partitions(e, e) {
                let orders: Vec<usize> = part.iter().map(|&k| p.pow(k)).collect();
                let g = Group::abelian(&orders)?;
                let mut perm: Vec<usize> = (1..g.order()).collect();
                perm.shuffle(&mut rng);
                perm.insert(0, 0);
                groups.push(g.relabel(&perm));
            }
            e += 1;
        }
        let sizes = groups.iter().map(mho_sizes).collect::<Result<Vec<_>>>()?;
        for i in 0..groups.len() {
            for j in i..groups.len() {
                pairs += 1;
                let iso = isomorphic(&groups[i], &groups[j])?.is_some();
                if iso != (sizes[i] == sizes[j]) {
                    mismatches += 1;
                }
            }
        }
    }
    outcome(mismatches == 0, format!("{pairs} pairs of abelian 2- and 3-groups of order ≤ 64, {mismatches} mismatches"))
}

fn decompositions(c: &[CorpusEntry]) -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let aux = auxiliary()?;
    let mut groups: Vec<&CorpusEntry> = c.iter().filter(|e| e.group.order() <= 64).collect();
    groups.extend(aux.iter().filter(|e| ["C_2 x D_8", "C_2 x Q_8", "C_2 x C_2 x Q_8"].contains(&e.name.as_str())));
    let mut ok = true;
    for e in &groups {
        let g = &e.group;
        let base = elementary_decomposition(g)?;
        ok &= power_structure_commutes(g, &base);
        let (t0, u0) = (base.t_group(g), base.u_group(g));
        for _ in 0..DECOMP_TRIALS {
            let d = elementary_decomposition_random(g, &mut rng)?;
            ok &= isomorphic(&d.t_group(g), &t0)?.is_some() && isomorphic(&d.u_group(g), &u0)?.is_some();
        }
    }
    let c2d8 = direct_product(&Group::cyclic(2), &mipkit_core::catalog::dihedral(8)?)?;
    let d = elementary_decomposition(&c2d8)?;
    let shape = isomorphic(&d.t_group(&c2d8), &Group::cyclic(2))?.is_some()
        && isomorphic(&d.u_group(&c2d8), &mipkit_core::catalog::dihedral(8)?)?.is_some();
    outcome(
        ok && shape,
        format!(
            "{} groups x {DECOMP_TRIALS} randomized runs pairwise isomorphic; C_2 x D_8 -> (C_2, D_8): {shape}",
            groups.len()
        ),
    )
}

fn families() -> Result<Outcome> {
    let mut built = 0;
    for m in 1..=5 {
        for n in 2..=(7 - m) {
            for kind in FamilyKind::ALL {
                family(kind, m, n)?;
                built += 1;
            }
        }
    }
    for m in 1..=3 {
        exceptional_isomorphism(m)?;
    }
    let mut distinct = 0;
    let mut cases = 0;
    for m in 2..=4 {
        for n in 3..=(7 - m) {
            let gs = FamilyKind::ALL.map(|k| family(k, m, n).map(|f| f.group));
            let [d, q, s] = gs;
            let (d, q, s) = (d?, q?, s?);
            for (x, y) in [(&d, &q), (&d, &s), (&q, &s)] {
                cases += 1;
                distinct += usize::from(isomorphic(x, y)?.is_none());
            }
        }
    }
    outcome(
        distinct == cases,
        format!("{built} groups validated, S→D/Q maps for m = 1..3 are isomorphisms, {distinct}/{cases} pairs non-isomorphic"),
    )
}

fn jennings(c: &[CorpusEntry]) -> Result<Outcome> {
    let mut ok = 0;
    for e in c {
        let g = &e.group;
        let fg = GroupAlgebra::new(g)?;
        let s = series_by_membership(&fg);
        let good = s[0] == Subgroup::whole(g)
            && s[1] == frattini(g)
            && s[2] == third_term_formula(g)
            && s == series_by_recursion(g);
        ok += usize::from(good);
    }
    outcome(ok == c.len(), format!("{ok}/{} corpus groups", c.len()))
}

fn main() -> ExitCode {
    let c = match corpus() {
        Ok(c) => c,
        Err(e) => {
            println!("FAIL corpus did not load: {e}");
            return ExitCode::FAILURE;
        }
    };
    let results = [
        run(1, "Table 1 reproduction", Some(LIMIT_TABLE1), || table1(&c)),
        run(2, "Table 2 reproduction", Some(LIMIT_TABLE2), || table2(&c)),
        run(3, "pairwise separation of U_1..U_13", None, || separation(&c)),
        run(4, "Q/S distinguisher", Some(LIMIT_QS), qs),
        run(5, "lemma property suite", None, || lemmas(&c)),
        run(6, "abelian types vs isomorphism oracle", None, prop_abelian),
        run(7, "elementary decompositions", None, || decompositions(&c)),
        run(8, "D/Q/S families", None, families),
        run(9, "Jennings series", None, || jennings(&c)),
    ];
    let passed = results.iter().filter(|&&b| b).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
