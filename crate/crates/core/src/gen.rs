//! Seeded random generators of valid two-level indices.
//!
//! `random_index` produces shape-valid indices of mixed types with
//! arbitrary diagram symmetries. `restriction_of_scalars` produces the
//! restriction of scalars of one real-form table entry per row, the
//! setting in which the equal-rank theorems live.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::diagram::{
    all_types_up_to, standard_diagram, ComponentType, DynkinDiagram, Edge, NodeMap, TypeFamily,
};
use crate::dsl::{Expectation, IndexDocument};
use crate::index::TwoLevelIndex;
use crate::rationality::Route;
use crate::rootset::RootSet;

/// A disjoint union of standard diagrams, with row offsets.
fn union_of(types: &[ComponentType]) -> (DynkinDiagram, Vec<usize>) {
    let mut names = Vec::new();
    let mut edges = Vec::new();
    let mut offsets = Vec::new();
    let prefixes = "abcdefghijklmnopqrstuvwxyz".chars();
    for (ty, p) in types.iter().zip(prefixes) {
        let d = standard_diagram(*ty, &p.to_string());
        let off = names.len();
        offsets.push(off);
        names.extend(d.names().iter().cloned());
        edges.extend(d.edges().iter().map(|e| Edge {
            a: e.a + off,
            b: e.b + off,
            label: e.label,
            short: e.short.map(|s| s + off),
        }));
    }
    (
        DynkinDiagram::new(names, edges).expect("unions of standard diagrams are valid"),
        offsets,
    )
}

/// Opposition involution of a standard diagram as a position permutation.
fn iota_positions(ty: ComponentType) -> Vec<usize> {
    let d = standard_diagram(ty, "x");
    let iota = d.opposition_involution();
    (0..ty.rank).map(|i| iota.apply(i)).collect()
}

/// Builds a node map from per-row `(target row, position map)` pairs.
fn row_map(n: usize, offsets: &[usize], rows: &[(usize, Vec<usize>)]) -> NodeMap {
    let mut images: Vec<usize> = (0..n).collect();
    for (i, (target, pos)) in rows.iter().enumerate() {
        for (k, &p) in pos.iter().enumerate() {
            images[offsets[i] + k] = offsets[*target] + p;
        }
    }
    NodeMap::from_images(&images).expect("row maps are bijective")
}

fn orbit_union(gens: &[NodeMap], seed: RootSet) -> RootSet {
    let mut s = seed;
    loop {
        let next = gens.iter().fold(s, |acc, g| acc.union(g.apply_set(s)));
        if next == s {
            return s;
        }
        s = next;
    }
}

fn random_subset<R: Rng>(rng: &mut R, within: RootSet, p: f64) -> RootSet {
    within.iter().filter(|_| rng.gen_bool(p)).collect()
}

/// A random shape-valid index with total rank at most `max_rank`.
pub fn random_index<R: Rng>(rng: &mut R, max_rank: usize) -> TwoLevelIndex {
    let pool = all_types_up_to(max_rank);
    let mut types: Vec<ComponentType> = Vec::new();
    let mut total = 0;
    loop {
        let fits: Vec<&ComponentType> =
            pool.iter().filter(|t| total + t.rank <= max_rank).collect();
        if fits.is_empty() {
            break;
        }
        let t = if !types.is_empty() && rng.gen_bool(0.5) && total + types[0].rank <= max_rank {
            types[0]
        } else {
            **fits.choose(rng).unwrap()
        };
        types.push(t);
        total += t.rank;
        if rng.gen_bool(0.45) {
            break;
        }
    }
    let (diagram, offsets) = union_of(&types);
    let n = diagram.len();
    let identity_pos = |t: ComponentType| (0..t.rank).collect::<Vec<_>>();

    // c*: per row identity or ι, or a swap of two isomorphic rows.
    let mut cstar_rows: Vec<(usize, Vec<usize>)> = types
        .iter()
        .enumerate()
        .map(|(i, &t)| {
            if rng.gen_bool(0.5) {
                (i, iota_positions(t))
            } else {
                (i, identity_pos(t))
            }
        })
        .collect();
    if types.len() >= 2 && types[0] == types[1] && rng.gen_bool(0.3) {
        cstar_rows[0] = (1, identity_pos(types[0]));
        cstar_rows[1] = (0, identity_pos(types[0]));
    }
    let cstar = row_map(n, &offsets, &cstar_rows);

    // Galois generator: a type-preserving row permutation, optionally
    // composed with ι on each row.
    let mut gens = Vec::new();
    if rng.gen_bool(0.8) {
        let mut targets: Vec<usize> = (0..types.len()).collect();
        for _ in 0..types.len() {
            let i = rng.gen_range(0..types.len());
            let j = rng.gen_range(0..types.len());
            if types[i] == types[j] {
                targets.swap(i, j);
            }
        }
        let rows: Vec<(usize, Vec<usize>)> = types
            .iter()
            .enumerate()
            .map(|(i, &t)| {
                let pos = if rng.gen_bool(0.3) {
                    iota_positions(t)
                } else {
                    identity_pos(t)
                };
                (targets[i], pos)
            })
            .collect();
        gens.push(row_map(n, &offsets, &rows));
    }

    let mut index = TwoLevelIndex {
        diagram,
        aniso_r: RootSet::EMPTY,
        aniso_q: RootSet::EMPTY,
        cstar,
        galois_gens: gens,
    };
    let all = index.diagram.nodes();
    let mut closure_gens = index.galois_gens.clone();
    closure_gens.push(index.cstar.clone());
    for _ in 0..20 {
        let candidate = random_subset(rng, all, 0.35);
        let candidate = candidate.union(index.cstar.apply_set(candidate));
        index.aniso_r = candidate;
        index.aniso_q = orbit_union(&closure_gens, candidate.union(random_subset(rng, all, 0.2)));
        if index.is_valid() {
            return index;
        }
    }
    index.aniso_r = RootSet::EMPTY;
    index.aniso_q = orbit_union(&closure_gens, random_subset(rng, all, 0.3));
    debug_assert!(index.is_valid());
    index
}

/// A random δ closed under the index's Galois closure.
pub fn random_invariant_delta<R: Rng>(rng: &mut R, index: &TwoLevelIndex) -> RootSet {
    let mut gens = index.galois_gens.clone();
    gens.push(index.cstar.clone());
    let seed = random_subset(rng, index.diagram.nodes(), 0.3);
    orbit_union(&gens, seed)
}

/// ℝ-anisotropic sets (1-based Bourbaki positions) of the real forms
/// with `c* = ι`, including the compact form.
pub fn equal_rank_black_sets(ty: ComponentType) -> Vec<Vec<usize>> {
    let n = ty.rank;
    let range = |a: usize, b: usize| (a..=b).collect::<Vec<_>>();
    let mut out: Vec<Vec<usize>> = match ty.family {
        TypeFamily::A => (1..=n.div_ceil(2)).map(|p| range(p + 1, n - p)).collect(),
        TypeFamily::B => (0..n).map(|r| range(r + 1, n)).collect(),
        TypeFamily::C => {
            let mut v = vec![vec![]];
            for p in 1..=n / 2 {
                v.push((1..=n).filter(|i| !(i % 2 == 0 && *i <= 2 * p)).collect());
            }
            v
        }
        TypeFamily::D => {
            let mut v: Vec<Vec<usize>> = (0..=n - 2).step_by(2).map(|r| range(r + 1, n)).collect();
            v.push(vec![]);
            let last = if n.is_multiple_of(2) { n } else { n - 1 };
            v.push((1..last).step_by(2).collect());
            v
        }
        TypeFamily::E6 => vec![vec![], vec![3, 4, 5]],
        TypeFamily::E7 => vec![vec![], vec![2, 5, 7], vec![2, 3, 4, 5]],
        TypeFamily::E8 => vec![vec![], vec![2, 3, 4, 5]],
        TypeFamily::F4 => vec![vec![], vec![1, 2, 3]],
        TypeFamily::G2 => vec![vec![]],
    };
    out.push(range(1, n));
    for s in out.iter_mut() {
        s.sort();
    }
    out.sort();
    out.dedup();
    out
}

/// Restriction of scalars from a field of degree `d ∈ {1,2,3}` of a group
/// of type `ty`, with an equal-rank real form at each real place, a cyclic
/// Galois action on the rows and Δ⁰_ℚ a column set containing every row's
/// ℝ-anisotropic set. Returns `None` when no column set fits.
pub fn restriction_of_scalars<R: Rng>(
    rng: &mut R,
    ty: ComponentType,
    d: usize,
) -> Option<TwoLevelIndex> {
    let types = vec![ty; d];
    let (diagram, offsets) = union_of(&types);
    let n = diagram.len();
    let blacks = equal_rank_black_sets(ty);
    let rows: Vec<Vec<usize>> = (0..d)
        .map(|_| blacks.choose(rng).unwrap().clone())
        .collect();
    let columns: Vec<&Vec<usize>> = blacks
        .iter()
        .filter(|s| rows.iter().all(|r| r.iter().all(|x| s.contains(x))))
        .collect();
    let cols = (*columns.choose(rng)?).clone();
    let iota = iota_positions(ty);
    let cstar = row_map(
        n,
        &offsets,
        &(0..d).map(|i| (i, iota.clone())).collect::<Vec<_>>(),
    );
    let id: Vec<usize> = (0..ty.rank).collect();
    let gens = if d > 1 {
        vec![row_map(
            n,
            &offsets,
            &(0..d)
                .map(|i| ((i + 1) % d, id.clone()))
                .collect::<Vec<_>>(),
        )]
    } else {
        vec![]
    };
    let mut aniso_r = RootSet::EMPTY;
    let mut aniso_q = RootSet::EMPTY;
    for (i, &off) in offsets.iter().enumerate() {
        aniso_r = aniso_r.union(rows[i].iter().map(|&p| off + p - 1).collect());
        aniso_q = aniso_q.union(cols.iter().map(|&p| off + p - 1).collect());
    }
    let index = TwoLevelIndex {
        diagram,
        aniso_r,
        aniso_q,
        cstar,
        galois_gens: gens,
    };
    index.is_valid().then_some(index)
}

/// A random δ made of `c*`-orbits of non-ℝ-anisotropic nodes, meeting
/// every noncompact ℝ-simple factor.
pub fn random_spherical_delta<R: Rng>(rng: &mut R, index: &TwoLevelIndex) -> RootSet {
    let free = index.diagram.nodes().difference(index.aniso_r);
    let orbits = index.real_group().orbits(free);
    let mut delta = RootSet::EMPTY;
    for orbit in &orbits {
        if rng.gen_bool(0.4) {
            delta = delta.union(*orbit);
        }
    }
    for factor in index.real_factors() {
        if factor.intersects(delta) {
            continue;
        }
        let inside: Vec<&RootSet> = orbits.iter().filter(|o| o.is_subset(factor)).collect();
        if let Some(o) = inside.choose(rng) {
            delta = delta.union(**o);
        }
    }
    delta
}

/// A random restriction-of-scalars input of total rank at most `max_rank`.
pub fn random_equal_rank<R: Rng>(rng: &mut R, max_rank: usize) -> (TwoLevelIndex, RootSet) {
    loop {
        let d = rng.gen_range(1..=3usize);
        let pool: Vec<ComponentType> = all_types_up_to(max_rank)
            .into_iter()
            .filter(|t| t.rank * d <= max_rank)
            .collect();
        let Some(&ty) = pool.choose(rng) else {
            continue;
        };
        if let Some(index) = restriction_of_scalars(rng, ty, d) {
            let delta = random_spherical_delta(rng, &index);
            return (index, delta);
        }
    }
}

/// A random document for round-trip testing.
pub fn random_document<R: Rng>(rng: &mut R, max_rank: usize) -> IndexDocument {
    let index = random_index(rng, max_rank);
    let all = index.diagram.nodes();
    let delta = random_subset(rng, all, 0.4);
    let delta_mu = rng.gen_bool(0.3).then(|| random_subset(rng, all, 0.4));
    let expect = rng.gen_bool(0.5).then(|| Expectation {
        rational: rng.gen_bool(0.5),
        route: rng
            .gen_bool(0.5)
            .then(|| Route::PRIORITY.choose(rng).unwrap().to_string()),
    });
    IndexDocument {
        name: format!("random-{}", rng.gen_range(0..100_000)),
        index,
        delta,
        delta_mu,
        expect,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_indices_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let ix = random_index(&mut rng, 8);
            assert!(ix.is_valid(), "{:?}", ix.validate());
        }
    }

    #[test]
    fn real_form_tables_give_valid_rows() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for ty in all_types_up_to(8) {
            for _ in 0..10 {
                let ix = restriction_of_scalars(&mut rng, ty, 1);
                assert!(ix.is_some(), "{ty}");
            }
        }
    }
}
