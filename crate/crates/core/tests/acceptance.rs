use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use satake::corpus::corpus;
use satake::diagram::{
    all_types_up_to, standard_diagram, ComponentType, DynkinDiagram, Edge, TypeFamily,
};
use satake::dsl::{parse, serialize};
use satake::families::{b_members, family_f, family_ftilde};
use satake::gen::{random_document, random_equal_rank, random_index, random_invariant_delta};
use satake::rationality::{casselman, exceptional_factors, is_real_equal_rank};
use satake::{classify, NodeMap, RootGraph, RootSet, TwoLevelIndex};

type Outcome = Result<String, String>;

fn rs(v: &[usize]) -> RootSet {
    v.iter().copied().collect()
}

/// 1-based positions to a node set.
fn pos(v: &[usize]) -> RootSet {
    v.iter().map(|&i| i - 1).collect()
}

fn range(a: usize, b: usize) -> Vec<usize> {
    (a..=b).collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

// ---------------------------------------------------------------------
// Criterion 1: Hasse diagrams of the families

struct ExpectedRow {
    ty: ComponentType,
    /// Every member of F̃ (A₁ members of F̃∖F restored).
    ftilde: Vec<Vec<usize>>,
    /// Members drawn as filled nodes.
    f: Vec<Vec<usize>>,
    /// Edges of the Hasse diagram of F̃.
    ftilde_covers: Vec<(Vec<usize>, Vec<usize>)>,
    /// Edges of the Hasse diagram of F.
    f_covers: Vec<(Vec<usize>, Vec<usize>)>,
}

fn ty(f: TypeFamily, n: usize) -> ComponentType {
    ComponentType::new(f, n).unwrap()
}

fn chain(sets: &[Vec<usize>]) -> Vec<(Vec<usize>, Vec<usize>)> {
    sets.windows(2)
        .map(|w| (w[0].clone(), w[1].clone()))
        .collect()
}

fn singletons(v: &[usize]) -> Vec<Vec<usize>> {
    v.iter().map(|&i| vec![i]).collect()
}

fn expected_rows() -> Vec<ExpectedRow> {
    let mut rows = Vec::new();

    // Type A_n: centred segments A1 (or A2) < A3 < ... < A_n, all in F.
    for n in [5usize, 6] {
        let segs: Vec<Vec<usize>> = (0..n.div_ceil(2))
            .rev()
            .map(|k| range(k + 1, n - k))
            .collect();
        rows.push(ExpectedRow {
            ty: ty(TypeFamily::A, n),
            ftilde: segs.clone(),
            f: segs.clone(),
            ftilde_covers: chain(&segs),
            f_covers: chain(&segs),
        });
    }

    // Types B_n and C_n: A1 < B2 < ... < B_n, plus an A1 at the far end
    // covered by B_n; the remaining A1 nodes lie in F̃ only.
    for fam in [TypeFamily::B, TypeFamily::C] {
        let n = 5;
        let tails: Vec<Vec<usize>> = (1..=n).rev().map(|k| range(k, n)).collect();
        let mut ftilde = singletons(&range(1, n));
        ftilde.extend(tails[1..].iter().cloned());
        let mut f = vec![vec![1]];
        f.extend(tails.iter().cloned());
        let mut f_covers = chain(&tails);
        f_covers.push((vec![1], range(1, n)));
        let mut ftilde_covers = chain(&tails);
        ftilde_covers.push((vec![n - 1], range(n - 1, n)));
        for k in 1..n - 1 {
            ftilde_covers.push((vec![k], range(k, n)));
        }
        rows.push(ExpectedRow {
            ty: ty(fam, n),
            ftilde,
            f,
            ftilde_covers,
            f_covers,
        });
    }

    // Type D_7: A3 < D5 < D7 with an A1 covered by D7.
    {
        let a3 = vec![5, 6, 7];
        let d5 = range(3, 7);
        let d7 = range(1, 7);
        let mut ftilde = singletons(&range(1, 5));
        ftilde.extend([a3.clone(), d5.clone(), d7.clone()]);
        rows.push(ExpectedRow {
            ty: ty(TypeFamily::D, 7),
            ftilde,
            f: vec![vec![1], a3.clone(), d5.clone(), d7.clone()],
            ftilde_covers: vec![
                (vec![5], a3.clone()),
                (vec![4], d5.clone()),
                (vec![3], d5.clone()),
                (vec![2], d7.clone()),
                (vec![1], d7.clone()),
                (a3.clone(), d5.clone()),
                (d5.clone(), d7.clone()),
            ],
            f_covers: vec![
                (a3.clone(), d5.clone()),
                (d5.clone(), d7.clone()),
                (vec![1], d7.clone()),
            ],
        });
    }

    // Type D_8: two A1 < D4 < D6 < D8 with an A1 covered by D8.
    {
        let d4 = range(5, 8);
        let d6 = range(3, 8);
        let d8 = range(1, 8);
        let mut ftilde = singletons(&range(1, 8));
        ftilde.extend([d4.clone(), d6.clone(), d8.clone()]);
        let mut ftilde_covers: Vec<(Vec<usize>, Vec<usize>)> = [5, 6, 7, 8]
            .iter()
            .map(|&i| (vec![i], d4.clone()))
            .collect();
        ftilde_covers.extend([3, 4].iter().map(|&i| (vec![i], d6.clone())));
        ftilde_covers.extend([1, 2].iter().map(|&i| (vec![i], d8.clone())));
        ftilde_covers.extend([(d4.clone(), d6.clone()), (d6.clone(), d8.clone())]);
        rows.push(ExpectedRow {
            ty: ty(TypeFamily::D, 8),
            ftilde,
            f: vec![
                vec![1],
                vec![7],
                vec![8],
                d4.clone(),
                d6.clone(),
                d8.clone(),
            ],
            ftilde_covers,
            f_covers: vec![
                (vec![7], d4.clone()),
                (vec![8], d4.clone()),
                (d4.clone(), d6.clone()),
                (d6.clone(), d8.clone()),
                (vec![1], d8.clone()),
            ],
        });
    }

    // Type D_4: three A1 tips covered by D4.
    {
        let d4 = range(1, 4);
        let mut ftilde = singletons(&range(1, 4));
        ftilde.push(d4.clone());
        rows.push(ExpectedRow {
            ty: ty(TypeFamily::D, 4),
            ftilde,
            f: vec![vec![1], vec![3], vec![4], d4.clone()],
            ftilde_covers: (1..=4).map(|i| (vec![i], d4.clone())).collect(),
            f_covers: [1, 3, 4].iter().map(|&i| (vec![i], d4.clone())).collect(),
        });
    }

    // Type E_6: ◦A3 ··· A5 - E6.
    {
        let a3 = vec![3, 4, 5];
        let a5 = vec![1, 3, 4, 5, 6];
        let e6 = range(1, 6);
        rows.push(ExpectedRow {
            ty: ty(TypeFamily::E6, 6),
            ftilde: vec![vec![2], vec![4], a3.clone(), a5.clone(), e6.clone()],
            f: vec![a5.clone(), e6.clone()],
            ftilde_covers: vec![
                (vec![4], a3.clone()),
                (a3.clone(), a5.clone()),
                (a5.clone(), e6.clone()),
                (vec![2], e6.clone()),
            ],
            f_covers: vec![(a5.clone(), e6.clone())],
        });
    }

    // Type E_7: ◦D4 ··· D6, A1 - D6 - E7.
    {
        let d4 = vec![2, 3, 4, 5];
        let d6 = range(2, 7);
        let e7 = range(1, 7);
        let mut ftilde = singletons(&range(1, 7));
        ftilde.extend([d4.clone(), d6.clone(), e7.clone()]);
        let mut ftilde_covers: Vec<(Vec<usize>, Vec<usize>)> = [2, 3, 4, 5]
            .iter()
            .map(|&i| (vec![i], d4.clone()))
            .collect();
        ftilde_covers.extend([6, 7].iter().map(|&i| (vec![i], d6.clone())));
        ftilde_covers.extend([
            (d4.clone(), d6.clone()),
            (d6.clone(), e7.clone()),
            (vec![1], e7.clone()),
        ]);
        rows.push(ExpectedRow {
            ty: ty(TypeFamily::E7, 7),
            ftilde,
            f: vec![vec![7], d6.clone(), e7.clone()],
            ftilde_covers,
            f_covers: vec![(vec![7], d6.clone()), (d6.clone(), e7.clone())],
        });
    }

    // Type E_8: ◦D4 ··· ◦D6 ··· E7 - E8.
    {
        let d4 = vec![2, 3, 4, 5];
        let d6 = range(2, 7);
        let e7 = range(1, 7);
        let e8 = range(1, 8);
        let mut ftilde = singletons(&range(1, 8));
        ftilde.extend([d4.clone(), d6.clone(), e7.clone(), e8.clone()]);
        let mut ftilde_covers: Vec<(Vec<usize>, Vec<usize>)> = [2, 3, 4, 5]
            .iter()
            .map(|&i| (vec![i], d4.clone()))
            .collect();
        ftilde_covers.extend([6, 7].iter().map(|&i| (vec![i], d6.clone())));
        ftilde_covers.extend([
            (vec![1], e7.clone()),
            (vec![8], e8.clone()),
            (d4.clone(), d6.clone()),
            (d6.clone(), e7.clone()),
            (e7.clone(), e8.clone()),
        ]);
        rows.push(ExpectedRow {
            ty: ty(TypeFamily::E8, 8),
            ftilde,
            f: vec![e7.clone(), e8.clone()],
            ftilde_covers,
            f_covers: vec![(e7.clone(), e8.clone())],
        });
    }

    // Type F_4: A1 - C3 - F4, A1 - B3 - F4, with ◦B2 below both.
    {
        let b2 = vec![2, 3];
        let b3 = vec![1, 2, 3];
        let c3 = vec![2, 3, 4];
        let f4 = range(1, 4);
        let mut ftilde = singletons(&range(1, 4));
        ftilde.extend([b2.clone(), b3.clone(), c3.clone(), f4.clone()]);
        rows.push(ExpectedRow {
            ty: ty(TypeFamily::F4, 4),
            ftilde,
            f: vec![vec![1], vec![4], b3.clone(), c3.clone(), f4.clone()],
            ftilde_covers: vec![
                (vec![1], b3.clone()),
                (vec![4], c3.clone()),
                (vec![2], b2.clone()),
                (vec![3], b2.clone()),
                (b2.clone(), b3.clone()),
                (b2.clone(), c3.clone()),
                (b3.clone(), f4.clone()),
                (c3.clone(), f4.clone()),
            ],
            f_covers: vec![
                (vec![1], b3.clone()),
                (vec![4], c3.clone()),
                (b3.clone(), f4.clone()),
                (c3.clone(), f4.clone()),
            ],
        });
    }

    // Type G_2: two A1 covered by G2.
    {
        let g2 = vec![1, 2];
        rows.push(ExpectedRow {
            ty: ty(TypeFamily::G2, 2),
            ftilde: vec![vec![1], vec![2], g2.clone()],
            f: vec![vec![1], vec![2], g2.clone()],
            ftilde_covers: vec![(vec![1], g2.clone()), (vec![2], g2.clone())],
            f_covers: vec![(vec![1], g2.clone()), (vec![2], g2.clone())],
        });
    }
    rows
}

fn set_of(v: &[Vec<usize>]) -> BTreeSet<RootSet> {
    v.iter().map(|s| pos(s)).collect()
}

fn cover_set(v: &[(Vec<usize>, Vec<usize>)]) -> BTreeSet<(RootSet, RootSet)> {
    v.iter().map(|(a, b)| (pos(a), pos(b))).collect()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let rows = expected_rows();
    for row in &rows {
        let d = standard_diagram(row.ty, "x");
        let c = d.nodes();
        let ft = family_ftilde(&d, c);
        let f = family_f(&d, c);
        let got_ft: BTreeSet<RootSet> = ft.members.iter().copied().collect();
        let got_f: BTreeSet<RootSet> = f.members.iter().copied().collect();
        ensure(got_ft == set_of(&row.ftilde), || {
            format!(
                "{}: F̃ {:?} ≠ expected {:?}",
                row.ty,
                got_ft,
                set_of(&row.ftilde)
            )
        })?;
        ensure(got_f == set_of(&row.f), || {
            format!("{}: F {:?} ≠ expected {:?}", row.ty, got_f, set_of(&row.f))
        })?;
        let ftc: BTreeSet<_> = ft.hasse().cover_sets().into_iter().collect();
        let fc: BTreeSet<_> = f.hasse().cover_sets().into_iter().collect();
        ensure(ftc == cover_set(&row.ftilde_covers), || {
            format!("{}: F̃ covers {:?} ≠ expected", row.ty, ftc)
        })?;
        ensure(fc == cover_set(&row.f_covers), || {
            format!("{}: F covers {:?} ≠ expected", row.ty, fc)
        })?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(1), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!(
        "{} types match node-for-node and cover-for-cover in {elapsed:.2?}",
        rows.len()
    ))
}

// ---------------------------------------------------------------------
// Criterion 2: the example corpus

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let expected: [(&str, bool); 12] = [
        ("ex1a", true),
        ("ex1b", false),
        ("dim1-a", false),
        ("dim1-b", true),
        ("dim1-c", true),
        ("ex2-a", true),
        ("ex2-b", true),
        ("ex2-c", false),
        ("ex3-quad-1", true),
        ("ex3-quad-2", true),
        ("ex3-cubic-1", true),
        ("ex3-cubic-2", false),
    ];
    let docs = corpus();
    ensure(docs.len() == expected.len(), || {
        format!("corpus has {} entries", docs.len())
    })?;
    for (doc, (name, rational)) in docs.iter().zip(expected) {
        ensure(doc.name == name, || {
            format!("entry {} out of order, expected {name}", doc.name)
        })?;
        ensure(doc.index.validate().is_empty(), || {
            format!("{name} is invalid")
        })?;
        let r = classify(&doc.name, &doc.index, doc.delta, doc.delta_mu, false)
            .map_err(|e| format!("{name}: {e}"))?;
        ensure(r.rational() == rational, || {
            format!("{name}: computed {} expected {rational}", r.rational())
        })?;
        let exp = doc.expect.as_ref().ok_or(format!("{name} lacks expect"))?;
        ensure(exp.rational == rational, || {
            format!("{name}: file expectation disagrees")
        })?;
        if let Some(route) = &exp.route {
            ensure(*route == r.route().to_string(), || {
                format!("{name}: route {} expected {route}", r.route())
            })?;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(1), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!(
        "{}/{} verdicts match in {elapsed:.2?}",
        docs.len(),
        docs.len()
    ))
}

// ---------------------------------------------------------------------
// Criterion 3: Casselman internals on ex1a

fn ex1() -> TwoLevelIndex {
    satake::corpus::entry("ex1a").unwrap().index
}

fn criterion_3() -> Outcome {
    let ix = ex1();
    let cl = ix.galois_closure().map_err(|e| e.to_string())?;
    let (a1, a2, a3, b1, b3) = (0, 1, 2, 3, 5);
    let c = casselman(&ix, &cl, rs(&[a2, b3]));
    ensure(c.kappa0 == rs(&[b3]), || format!("κ = {:?}", c.kappa0))?;
    ensure(c.omega0 == rs(&[a1, a3, b1, b3]), || {
        format!("ω = {:?}", c.omega0)
    })?;
    ensure(c.cond1 && c.cond2, || "conditions should pass".into())?;
    let c = casselman(&ix, &cl, rs(&[a1, b3]));
    ensure(c.omega0 == rs(&[a2, a3, b1, b3]), || {
        format!("ω = {:?}", c.omega0)
    })?;
    ensure(!c.cond1, || "condition (1) should fail".into())?;
    let w = c.witness.ok_or("missing witness")?;
    let sigma = NodeMap::from_cycles(6, &[vec![0, 3], vec![1, 4], vec![2, 5]]).unwrap();
    ensure(w.condition == 1 && w.element == sigma, || {
        format!("witness {w:?}")
    })?;
    Ok("κ={b3}, ω={a1,a3,b1,b3} pass; ω={a2,a3,b1,b3} fails (1) under σ".into())
}

// ---------------------------------------------------------------------
// Criterion 4: ω by the direct formula against the maximality definition

/// Connected components by flood fill over an adjacency matrix.
fn oracle_components(adj: &[Vec<bool>], set: RootSet) -> Vec<RootSet> {
    let mut out = Vec::new();
    let mut seen = RootSet::EMPTY;
    for v in set.iter() {
        if seen.contains(v) {
            continue;
        }
        let mut comp = RootSet::singleton(v);
        let mut stack = vec![v];
        while let Some(x) = stack.pop() {
            for y in set.iter() {
                if adj[x][y] && !comp.contains(y) {
                    comp.insert(y);
                    stack.push(y);
                }
            }
        }
        seen = seen.union(comp);
        out.push(comp);
    }
    out
}

fn oracle_kappa(adj: &[Vec<bool>], theta: RootSet, delta: RootSet) -> RootSet {
    oracle_components(adj, theta)
        .into_iter()
        .filter(|c| c.intersects(delta))
        .fold(RootSet::EMPTY, RootSet::union)
}

/// Every multiset of connected types with total rank ≤ `max`.
fn diagrams_up_to(max: usize) -> Vec<DynkinDiagram> {
    let types = all_types_up_to(max);
    let mut out = Vec::new();
    fn rec(
        types: &[ComponentType],
        start: usize,
        left: usize,
        cur: &mut Vec<ComponentType>,
        out: &mut Vec<Vec<ComponentType>>,
    ) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        for i in start..types.len() {
            if types[i].rank <= left {
                cur.push(types[i]);
                rec(types, i, left - types[i].rank, cur, out);
                cur.pop();
            }
        }
    }
    let mut combos = Vec::new();
    rec(&types, 0, max, &mut Vec::new(), &mut combos);
    for combo in combos {
        let mut names = Vec::new();
        let mut edges = Vec::new();
        for (k, t) in combo.iter().enumerate() {
            let d = standard_diagram(*t, &format!("c{k}_"));
            let off = names.len();
            names.extend(d.names().iter().cloned());
            edges.extend(d.edges().iter().map(|e| Edge {
                a: e.a + off,
                b: e.b + off,
                label: e.label,
                short: e.short.map(|s| s + off),
            }));
        }
        out.push(DynkinDiagram::new(names, edges).unwrap());
    }
    out
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let mut cases = 0u64;
    let diagrams = diagrams_up_to(6);
    for d in &diagrams {
        let n = d.len();
        let g: &RootGraph = d.graph();
        let mut adj = vec![vec![false; n]; n];
        for e in d.edges() {
            adj[e.a][e.b] = true;
            adj[e.b][e.a] = true;
        }
        let all: Vec<RootSet> = d.nodes().subsets().collect();
        for &delta in &all {
            let kappa_of: BTreeMap<RootSet, RootSet> = all
                .iter()
                .map(|&s| (s, oracle_kappa(&adj, s, delta)))
                .collect();
            let mut classes: BTreeMap<RootSet, Vec<RootSet>> = BTreeMap::new();
            for (&s, &k) in &kappa_of {
                classes.entry(k).or_default().push(s);
            }
            for &theta in &all {
                cases += 1;
                let k = g.kappa(theta, delta);
                let w = g.omega(theta, delta);
                let z = g.zeta(theta, delta);
                ensure(k == kappa_of[&theta], || format!("κ mismatch on {d:?}"))?;
                let class = &classes[&k];
                let maximal: Vec<RootSet> = class
                    .iter()
                    .copied()
                    .filter(|&s| !class.iter().any(|&t| t != s && s.is_subset(t)))
                    .collect();
                ensure(maximal == vec![w], || {
                    format!("ω({theta:?}) = {w:?}, maximal Υ = {maximal:?}, δ = {delta:?}")
                })?;
                ensure(k.is_subset(theta) && theta.is_subset(w), || {
                    "κ ⊆ θ ⊆ ω fails".into()
                })?;
                ensure(g.kappa(w, delta) == k, || "κ(ω) ≠ κ".into())?;
                ensure(g.omega(w, delta) == w, || "ω(ω) ≠ ω".into())?;
                ensure(z == w.difference(k), || "ζ ≠ ω ∖ κ".into())?;
            }
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(30), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!(
        "{} diagrams, {cases} (δ, θ) cases in {elapsed:.2?}",
        diagrams.len()
    ))
}

// ---------------------------------------------------------------------
// Criterion 5: δ Galois invariant ⇒ Casselman passes

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0006);
    let total = 1200;
    let mut nontrivial = 0;
    for k in 0..total {
        let ix = random_index(&mut rng, 8);
        ensure(ix.is_valid(), || format!("generated invalid index #{k}"))?;
        let delta = random_invariant_delta(&mut rng, &ix);
        let cl = ix.galois_closure().map_err(|e| e.to_string())?;
        if cl.len() > 1 {
            nontrivial += 1;
        }
        let c = casselman(&ix, &cl, delta);
        ensure(c.rational(), || {
            format!(
                "case #{k} fails: {}",
                serialize(&satake::IndexDocument {
                    name: format!("case-{k}"),
                    index: ix.clone(),
                    delta,
                    delta_mu: None,
                    expect: None,
                })
            )
        })?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(30), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!(
        "{total}/{total} rational ({nontrivial} with nontrivial Galois action) in {elapsed:.2?}"
    ))
}

// ---------------------------------------------------------------------
// Criteria 6 and 7: equal-rank inputs

struct EqualRankInputs {
    cases: Vec<(String, TwoLevelIndex, RootSet, Option<RootSet>)>,
}

fn equal_rank_inputs() -> EqualRankInputs {
    let mut cases: Vec<_> = corpus()
        .into_iter()
        .map(|d| (d.name, d.index, d.delta, d.delta_mu))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0007);
    for k in 0..600 {
        let (ix, delta) = random_equal_rank(&mut rng, 9);
        cases.push((format!("generated-{k}"), ix, delta, None));
    }
    EqualRankInputs { cases }
}

fn criterion_6(inputs: &EqualRankInputs) -> Outcome {
    let mut applicable: BTreeMap<String, usize> = BTreeMap::new();
    let mut generated = 0;
    for (name, ix, delta, mu) in &inputs.cases {
        if name.starts_with("generated") {
            generated += 1;
        }
        let r = classify(name, ix, *delta, *mu, false).map_err(|e| {
            format!(
                "{name}: {e}\n{}",
                serialize(&satake::IndexDocument {
                    name: name.clone(),
                    index: ix.clone(),
                    delta: *delta,
                    delta_mu: *mu,
                    expect: None,
                })
            )
        })?;
        for v in &r.verdicts {
            if v.applicable() {
                *applicable.entry(v.route.to_string()).or_default() += 1;
                if v.cross_check == Some(false) {
                    return Err(format!("{name}: {} disagrees", v.route));
                }
            }
        }
    }
    let main = applicable.get("EqualRankMain").copied().unwrap_or(0);
    let q1 = applicable.get("ExceptionalQRank1").copied().unwrap_or(0);
    let q2 = applicable.get("ExceptionalQRank2").copied().unwrap_or(0);
    ensure(generated >= 500, || "too few generated inputs".into())?;
    ensure(main > 0 && q1 > 0 && q2 > 0, || {
        format!("routes not exercised: {applicable:?}")
    })?;
    Ok(format!(
        "{} inputs ({generated} generated), 0 cross-check failures; applicable: main {main}, exceptional ℚ-rank 2 {q2}, ℚ-rank 1 {q1}",
        inputs.cases.len()
    ))
}

fn criterion_7(inputs: &EqualRankInputs) -> Outcome {
    let mut checked = 0;
    let mut f4_seen = 0;
    for (name, ix, delta, _) in &inputs.cases {
        if !is_real_equal_rank(ix, *delta)
            || !satake::compactification::is_admissible_delta(ix, *delta)
        {
            continue;
        }
        checked += 1;
        let d = &ix.diagram;
        let b = b_members(ix, *delta);
        let exceptional = exceptional_factors(ix, *delta);
        for &psi in &b {
            ensure(d.graph().is_connected(psi), || {
                format!("{name}: B member {psi:?} disconnected")
            })?;
            let comp = d.component_of(psi.first().unwrap()).nodes;
            let f = family_f(d, comp);
            ensure(f.contains(psi), || {
                format!("{name}: B member {psi:?} not in F")
            })?;
        }
        for shape in d.component_shapes() {
            let c = shape.nodes;
            let pair = c.union(ix.cstar.apply_set(c));
            let in_c: Vec<RootSet> = b.iter().copied().filter(|s| s.is_subset(c)).collect();
            if !exceptional.contains(&pair) {
                for (i, x) in in_c.iter().enumerate() {
                    for y in &in_c[i + 1..] {
                        ensure(x.is_subset(*y) || y.is_subset(*x), || {
                            format!("{name}: B_C not totally ordered: {x:?}, {y:?}")
                        })?;
                    }
                }
            }
            if shape.ty.family == TypeFamily::F4 && c.intersects(*delta) {
                f4_seen += 1;
                let r = ix.rrank_of_component(c);
                ensure(r <= 1, || format!("{name}: F4 component with ℝ-rank {r}"))?;
            }
        }
    }
    ensure(checked >= 100, || {
        format!("only {checked} real equal-rank inputs")
    })?;
    Ok(format!(
        "{checked} real equal-rank inputs checked ({f4_seen} with F4 components)"
    ))
}

// ---------------------------------------------------------------------
// Criterion 8: round trip and JSON schema

fn expect_type(v: &Value, path: &str, want: &str) -> Result<(), String> {
    let ok = match want {
        "string" => v.is_string(),
        "bool" => v.is_boolean(),
        "uint" => v.is_u64(),
        "array" => v.is_array(),
        "object" => v.is_object(),
        "names" => v.as_array().is_some_and(|a| a.iter().all(Value::is_string)),
        "namesets" => v.as_array().is_some_and(|a| {
            a.iter()
                .all(|s| s.as_array().is_some_and(|x| x.iter().all(Value::is_string)))
        }),
        "opt_bool" => v.is_boolean() || v.is_null(),
        _ => false,
    };
    ensure(ok, || format!("{path}: expected {want}, got {v}"))
}

fn check_object(
    v: &Value,
    path: &str,
    fields: &[(&str, &str)],
    optional: &[&str],
) -> Result<(), String> {
    let obj = v.as_object().ok_or(format!("{path}: not an object"))?;
    let keys: Vec<&str> = obj.keys().map(String::as_str).collect();
    let mut required: Vec<&str> = fields.iter().map(|(k, _)| *k).collect();
    let extras: Vec<&&str> = keys
        .iter()
        .filter(|k| !required.contains(k) && !optional.contains(k))
        .collect();
    ensure(extras.is_empty(), || {
        format!("{path}: unexpected keys {extras:?}")
    })?;
    required.retain(|k| !optional.contains(k));
    for (k, t) in fields {
        match obj.get(*k) {
            Some(x) => expect_type(x, &format!("{path}.{k}"), t)?,
            None if optional.contains(k) => {}
            None => return Err(format!("{path}: missing {k}")),
        }
    }
    Ok(())
}

fn validate_report_schema(v: &Value) -> Result<(), String> {
    check_object(
        v,
        "$",
        &[
            ("name", "string"),
            ("valid", "bool"),
            ("diagnostics", "array"),
            ("q_rank", "uint"),
            ("components", "array"),
            ("delta", "names"),
            ("r_delta", "namesets"),
            ("q_delta", "namesets"),
            ("kappa0", "names"),
            ("omega0", "names"),
            ("zeta0", "names"),
            ("casselman", "object"),
            ("verdict", "object"),
            ("routes", "array"),
            ("equal_rank", "object"),
            ("exceptional", "namesets"),
            ("boundary", "array"),
            ("families", "array"),
        ],
        &["families"],
    )?;
    for d in v["diagnostics"].as_array().unwrap() {
        check_object(
            d,
            "$.diagnostics[]",
            &[("severity", "string"), ("message", "string")],
            &[],
        )?;
    }
    for c in v["components"].as_array().unwrap() {
        check_object(
            c,
            "$.components[]",
            &[("nodes", "names"), ("type", "string"), ("rrank", "uint")],
            &[],
        )?;
    }
    check_object(
        &v["casselman"],
        "$.casselman",
        &[
            ("rational", "bool"),
            ("cond1", "bool"),
            ("cond2", "bool"),
            ("witness", "object"),
        ],
        &["witness"],
    )?;
    if let Some(w) = v["casselman"].get("witness") {
        check_object(
            w,
            "$.casselman.witness",
            &[
                ("condition", "uint"),
                ("element", "string"),
                ("image", "names"),
            ],
            &[],
        )?;
    }
    check_object(
        &v["verdict"],
        "$.verdict",
        &[("rational", "bool"), ("route", "string")],
        &[],
    )?;
    for r in v["routes"].as_array().unwrap() {
        check_object(
            r,
            "$.routes[]",
            &[
                ("route", "string"),
                ("applicable", "bool"),
                ("rational", "opt_bool"),
                ("cross_check", "opt_bool"),
            ],
            &[],
        )?;
    }
    check_object(
        &v["equal_rank"],
        "$.equal_rank",
        &[("group", "bool"), ("compactification", "bool")],
        &[],
    )?;
    for b in v["boundary"].as_array().unwrap() {
        check_object(
            b,
            "$.boundary[]",
            &[
                ("theta", "namesets"),
                ("hermitian", "names"),
                ("centralizer", "names"),
                ("normalizer", "names"),
            ],
            &[],
        )?;
    }
    if let Some(fams) = v.get("families") {
        for f in fams.as_array().unwrap() {
            check_object(
                f,
                "$.families[]",
                &[
                    ("component", "names"),
                    ("type", "string"),
                    ("ftilde", "namesets"),
                    ("f", "namesets"),
                    ("b", "namesets"),
                ],
                &[],
            )?;
        }
    }
    Ok(())
}

fn criterion_8() -> Outcome {
    let docs = corpus();
    for doc in &docs {
        let text = serialize(doc);
        let back = parse(&text).map_err(|e| format!("{}: {e}", doc.name))?;
        ensure(&back == doc, || {
            format!("{}: parse∘serialize changed the document", doc.name)
        })?;
        ensure(serialize(&back) == text, || {
            format!("{}: serialization not stable", doc.name)
        })?;
        for families in [false, true] {
            let report = classify(&doc.name, &doc.index, doc.delta, doc.delta_mu, families)
                .map_err(|e| e.to_string())?;
            let json = serde_json::to_string(&report.to_json()).map_err(|e| e.to_string())?;
            let value: Value = serde_json::from_str(&json).map_err(|e| e.to_string())?;
            validate_report_schema(&value).map_err(|e| format!("{}: {e}", doc.name))?;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0008);
    let randomized = 200;
    for k in 0..randomized {
        let doc = random_document(&mut rng, 8);
        let text = serialize(&doc);
        let back = parse(&text).map_err(|e| format!("random #{k}: {e}\n{text}"))?;
        ensure(back == doc, || {
            format!("random #{k} does not round-trip:\n{text}")
        })?;
        if doc.index.is_valid() {
            let report = classify(&doc.name, &doc.index, doc.delta, doc.delta_mu, true);
            if let Ok(report) = report {
                let value = serde_json::to_value(report.to_json()).map_err(|e| e.to_string())?;
                validate_report_schema(&value).map_err(|e| format!("random #{k}: {e}"))?;
            }
        }
    }
    Ok(format!(
        "{} corpus + {randomized} random documents round-trip; all reports match the schema",
        docs.len()
    ))
}

fn main() -> ExitCode {
    let inputs = equal_rank_inputs();
    let results: Vec<(u8, &str, Outcome)> = vec![
        (
            1,
            "Hasse diagrams of F̃ and F per simple type",
            criterion_1(),
        ),
        (2, "example corpus verdicts", criterion_2()),
        (3, "Casselman internals on ex1a", criterion_3()),
        (4, "ω formula vs maximality oracle", criterion_4()),
        (5, "Galois-invariant δ is rational", criterion_5()),
        (
            6,
            "theorem routes agree with Casselman",
            criterion_6(&inputs),
        ),
        (
            7,
            "structure of B on real equal-rank inputs",
            criterion_7(&inputs),
        ),
        (8, "round-trip and JSON schema", criterion_8()),
    ];
    let mut failed = 0;
    for (n, title, outcome) in &results {
        match outcome {
            Ok(detail) => println!("PASS criterion {n}: {title} ({detail})"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {n}: {title}: {why}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
