//! Every check at desk scale, from one seed. `--full` uses the larger sizes.

use nss_core::algebra::{FieldSpec, Matrix};
use nss_core::constructions::{example1, example2, verify_example1_counts, verify_example2_counts, Example2Variant};
use nss_core::detsum::{admissible_pairs, build_h_matrix, expand_det_sum, verify_rank_bound, HMatrix};
use nss_core::flats::{
    example2_flats, hyperplane_cover_check, hyperplane_with_outliers, random_arrangement, random_pair_family,
    removal_experiment, verify_flat_pairs_lemma,
};
use nss_core::rng::{random_family, random_matched_families, random_matrix, SplitMix64};
use nss_core::sumgraph::clique::{branch_and_bound, russian_doll};
use nss_core::sumgraph::{
    build_auxiliary_graph, clique_number_experiment, clique_rank_link, enumerate_sl2, greedy_maximal_matching,
    maximum_bipartite_matching, theorem2_on, BipartiteSumGraph, SimpleGraph, DEFAULT_NODE_BUDGET,
};
use serde::Serialize;
use serde_json::{json, Value};

use crate::report::{Checked, Failure, Outcome};

#[derive(Serialize)]
struct Suite {
    name: &'static str,
    cases: usize,
    failures: usize,
    holds: bool,
    budget_exceeded: bool,
    detail: Value,
}

struct Sizes {
    expansion_k: usize,
    expansion_cases: usize,
    families: usize,
    rank_n: usize,
    example1_rank_k: usize,
    example1_k: usize,
    max_s: usize,
    canary_n: usize,
    sl2_q: &'static [u64],
}

const QUICK: Sizes = Sizes {
    expansion_k: 4,
    expansion_cases: 20,
    families: 5,
    rank_n: 20,
    example1_rank_k: 4,
    example1_k: 3,
    max_s: 2,
    canary_n: 16,
    sl2_q: &[3, 5],
};

const FULL: Sizes = Sizes {
    expansion_k: 5,
    expansion_cases: 200,
    families: 20,
    rank_n: 50,
    example1_rank_k: 6,
    example1_k: 5,
    max_s: 3,
    canary_n: 64,
    sl2_q: &[3, 5, 7],
};

fn fields() -> Vec<FieldSpec> {
    let mut f = vec![FieldSpec::Rationals];
    f.extend([3, 5, 7, 101].map(|p| FieldSpec::prime(p).expect("prime")));
    f
}

fn suite(name: &'static str, cases: usize, failures: usize, detail: Value) -> Suite {
    Suite { name, cases, failures, holds: failures == 0, budget_exceeded: false, detail }
}

pub(crate) fn run(seed: u64, full: bool) -> Outcome {
    let sizes = if full { &FULL } else { &QUICK };
    let mut rng = SplitMix64::new(seed);
    let suites = vec![
        expansion(&mut rng, sizes)?,
        rank_one(&mut rng, sizes)?,
        rank_bound(&mut rng, sizes)?,
        example1_counts(sizes)?,
        example2_counts(sizes)?,
        canary(&mut rng, sizes)?,
        clique_rank(&mut rng, sizes)?,
        matchings(&mut rng),
        flat_pairs(&mut rng, sizes)?,
        removal(&mut rng, sizes)?,
        corollary(&mut rng)?,
        sl2(sizes)?,
    ];
    let holds = suites.iter().all(|s| s.holds);
    let budget_exceeded = suites.iter().any(|s| s.budget_exceeded);
    let mut checked = Checked::new(json!({ "mode": if full { "full" } else { "quick" }, "suites": suites }), holds);
    checked.budget_exceeded = budget_exceeded && suites.iter().all(|s| s.holds || s.budget_exceeded);
    Ok(checked)
}

fn expansion(rng: &mut SplitMix64, sizes: &Sizes) -> Result<Suite, Failure> {
    let (mut cases, mut failures) = (0, 0);
    for field in fields() {
        for k in 1..=sizes.expansion_k {
            for _ in 0..sizes.expansion_cases {
                let a = random_matrix(rng, field, k, k);
                let b = random_matrix(rng, field, k, k);
                cases += 1;
                failures += (expand_det_sum(&a, &b)?.total != a.add(&b)?.det()?) as usize;
            }
        }
    }
    Ok(suite("expansion", cases, failures, json!({ "max_k": sizes.expansion_k })))
}

fn component_sum(h: &HMatrix) -> Result<(bool, Matrix), Failure> {
    let mut total = Matrix::zero(h.field(), h.n(), h.n());
    let mut rank_one = true;
    for key in admissible_pairs(h.k()) {
        let c = h.rank_one_component(&key.rows, &key.cols)?;
        rank_one &= c.rank() <= 1;
        total = total.add(&c)?;
    }
    Ok((rank_one, total))
}

fn rank_one(rng: &mut SplitMix64, sizes: &Sizes) -> Result<Suite, Failure> {
    let mut failures = 0;
    for i in 0..sizes.families {
        let field = fields()[i % 5];
        let k = 1 + i % 3;
        let h = build_h_matrix(&random_family(rng, field, 10, k), &random_family(rng, field, 10, k))?;
        let (rank_one, total) = component_sum(&h)?;
        failures += (!rank_one || &total != h.entries()) as usize;
    }
    Ok(suite("rank_one_components", sizes.families, failures, json!({ "n": 10 })))
}

fn rank_bound(rng: &mut SplitMix64, sizes: &Sizes) -> Result<Suite, Failure> {
    let (mut cases, mut failures) = (0, 0);
    for k in 1..=3 {
        for i in 0..sizes.families {
            let field = fields()[i % 5];
            let h = build_h_matrix(
                &random_family(rng, field, sizes.rank_n, k),
                &random_family(rng, field, sizes.rank_n, k),
            )?;
            cases += 1;
            failures += !verify_rank_bound(&h).holds as usize;
        }
    }
    let mut ranks = Vec::new();
    for k in 1..=sizes.example1_rank_k {
        let fam = example1(k, 1)?;
        let rank = build_h_matrix(&fam.members, &fam.members)?.rank();
        cases += 1;
        failures += (rank != 1 << k) as usize;
        ranks.push(rank);
    }
    Ok(suite("rank_bound", cases, failures, json!({ "n": sizes.rank_n, "example1_ranks": ranks })))
}

fn example1_counts(sizes: &Sizes) -> Result<Suite, Failure> {
    let (mut cases, mut failures) = (0, 0);
    for k in 1..=sizes.example1_k {
        for s in 1..=sizes.max_s {
            cases += 1;
            failures += !verify_example1_counts(&example1(k, s)?)?.holds as usize;
        }
    }
    Ok(suite("example1_counts", cases, failures, json!({ "max_k": sizes.example1_k, "max_s": sizes.max_s })))
}

fn example2_counts(sizes: &Sizes) -> Result<Suite, Failure> {
    let (mut cases, mut failures) = (0, 0);
    for k in [2, 4] {
        for s in 1..=sizes.max_s {
            for variant in [Example2Variant::IdentityOnly, Example2Variant::Extended] {
                cases += 1;
                failures += !verify_example2_counts(&example2(k, s, variant)?)?.holds as usize;
            }
        }
    }
    Ok(suite("example2_counts", cases, failures, json!({ "k": [2, 4], "max_s": sizes.max_s })))
}

fn canary(rng: &mut SplitMix64, sizes: &Sizes) -> Result<Suite, Failure> {
    let (mut cases, mut failures) = (0, 0);
    let mut min_ratio: Option<(usize, u128)> = None;
    let mut record = |edges: usize, bound: u128, holds: bool| {
        cases += 1;
        failures += !holds as usize;
        if min_ratio.is_none_or(|(e, b)| (edges as u128) * b < (e as u128) * bound.max(1)) {
            min_ratio = Some((edges, bound.max(1)));
        }
    };
    for field in fields() {
        for k in 1..=3 {
            let n = 1 + rng.below(sizes.canary_n as u64) as usize;
            let (a, b) = random_matched_families(rng, field, n, k);
            let r = theorem2_on(&build_h_matrix(&a, &b)?)?;
            record(r.edge_count, r.lower_bound, r.holds && r.perfect_matching);
        }
    }
    for k in [2, 4] {
        for s in 1..=sizes.max_s {
            for variant in [Example2Variant::IdentityOnly, Example2Variant::Extended] {
                let fam = example2(k, s, variant)?;
                let r = theorem2_on(&build_h_matrix(&fam.left, &fam.right)?)?;
                record(r.edge_count, r.lower_bound, r.holds && r.perfect_matching);
            }
        }
    }
    let tightest = min_ratio.map(|(e, b)| json!({ "edges": e, "lower_bound": b }));
    Ok(suite("theorem2_canary", cases, failures, json!({ "tightest": tightest })))
}

fn clique_rank(rng: &mut SplitMix64, sizes: &Sizes) -> Result<Suite, Failure> {
    let (mut cases, mut failures) = (0, 0);
    let mut largest = 0;
    for p in [3u64, 5] {
        let field = FieldSpec::prime(p)?;
        for k in 1..=2 {
            for _ in 0..sizes.families {
                let h = build_h_matrix(&random_family(rng, field, 14, k), &random_family(rng, field, 14, k))?;
                let link = clique_rank_link(&h)?;
                let aux = build_auxiliary_graph(&h);
                let a = branch_and_bound(aux.graph(), None, DEFAULT_NODE_BUDGET)?;
                let b = russian_doll(aux.graph(), DEFAULT_NODE_BUDGET)?;
                cases += 1;
                failures += (!link.holds || a.size() != b.size()) as usize;
                largest = largest.max(link.block_size);
            }
        }
    }
    Ok(suite("clique_rank_link", cases, failures, json!({ "largest_block": largest })))
}

fn matchings(rng: &mut SplitMix64) -> Suite {
    let (mut cases, mut failures) = (0, 0);
    for trial in 0..40 {
        let n = 2 + trial % 12;
        let density = 10 + rng.below(60);
        let adj: Vec<bool> = (0..n * n).map(|_| rng.below(100) < density).collect();
        let bip = BipartiteSumGraph::from_adjacency(n, FieldSpec::Rationals, |i, j| adj[i * n + j]);
        let max = maximum_bipartite_matching(&bip);
        let g = SimpleGraph::from_fn(n, |i, j| adj[i * n + j]);
        let greedy = greedy_maximal_matching(&g);
        let cover = greedy.vertex_cover();
        cases += 1;
        failures += (!max.is_valid_bipartite(&bip)
            || !greedy.is_valid_in(&g)
            || !cover.covers(&g)
            || cover.size != 2 * greedy.len()) as usize;
    }
    suite("matchings", cases, failures, Value::Null)
}

fn flat_pairs(rng: &mut SplitMix64, sizes: &Sizes) -> Result<Suite, Failure> {
    let (mut cases, mut failures) = (0, 0);
    for s in 1..=sizes.max_s {
        let fam = example2(2, s, Example2Variant::Extended)?;
        let r = verify_flat_pairs_lemma(&example2_flats(&fam, rng)?)?;
        cases += 1;
        failures += (!r.holds || r.single_point_cross_pairs != 2 * s * r.n) as usize;
    }
    for i in 0..sizes.families {
        let d = 1 + i % 2;
        let n = 1 + rng.below(30) as usize;
        cases += 1;
        failures += !verify_flat_pairs_lemma(&random_pair_family(rng, n, d)?)?.holds as usize;
    }
    Ok(suite("flat_pairs", cases, failures, Value::Null))
}

fn removal(rng: &mut SplitMix64, sizes: &Sizes) -> Result<Suite, Failure> {
    let mut failures = 0;
    for _ in 0..sizes.families {
        let n = 2 + rng.below(29) as usize;
        let generic = rng.below(n as u64 + 1) as usize;
        let r = removal_experiment(&random_arrangement(rng, n, 2, generic)?)?;
        failures += !(r.holds && r.cover_verified) as usize;
    }
    Ok(suite("removal_chain", sizes.families, failures, Value::Null))
}

fn corollary(rng: &mut SplitMix64) -> Result<Suite, Failure> {
    let (mut cases, mut failures) = (0, 0);
    for outliers in 0..=3 {
        let inside = 8 + rng.below(9) as usize;
        let r = hyperplane_cover_check(&hyperplane_with_outliers(rng, inside, outliers)?)?;
        cases += 1;
        failures += !r.holds as usize;
    }
    Ok(suite("hyperplane_corollary", cases, failures, Value::Null))
}

fn sl2(sizes: &Sizes) -> Result<Suite, Failure> {
    let (mut failures, mut unresolved) = (0, 0);
    let mut table = Vec::new();
    for &q in sizes.sl2_q {
        let n = enumerate_sl2(q)?.len() as u64;
        let r = clique_number_experiment(q)?;
        for o in [&r.omega_nonsingular_sum, &r.omega_singular_sum] {
            if !o.certificate_verified || o.lower_bound > o.upper_bound || (o.resolved && !o.agree) {
                failures += 1;
            } else if !o.resolved {
                unresolved += 1;
            }
        }
        failures += (n != q * q * q - q || !r.singular_within_rank_bound) as usize;
        let bounds = |o: &nss_core::sumgraph::OmegaReport| json!([o.lower_bound, o.upper_bound]);
        table.push(json!({
            "q": q,
            "order": n,
            "omega_nonsingular_sum": r.omega_nonsingular_sum.omega,
            "nonsingular_sum_bounds": bounds(&r.omega_nonsingular_sum),
            "omega_singular_sum": r.omega_singular_sum.omega,
            "singular_sum_bounds": bounds(&r.omega_singular_sum),
        }));
    }
    let mut s = suite("sl2_cliques", sizes.sl2_q.len(), failures + unresolved, json!(table));
    s.budget_exceeded = unresolved > 0;
    Ok(s)
}
