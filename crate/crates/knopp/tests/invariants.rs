//! Cross-module invariant suite: ideal inclusion order, model laws, limit
//! monotonicity, cluster stability, and certificate re-verification.

use knopp::cluster::{estimate_clusters, ClusterParams};
use knopp::core::{core_by_support, CoreParams};
use knopp::corpus;
use knopp::geometry::{
    hausdorff_one_sided, hull_membership, hull_membership_capped, support_value, convex_hull,
    HullMembership,
};
use knopp::ideal::{
    make_density_zero, make_double_density, make_e_ideal, make_fin, make_pringsheim,
    FiniteIdealModel, IndexSet,
};
use knopp::limits::{ideal_liminf, ideal_limsup, LimitParams};
use knopp::sequence::{generate, parse_generator, GeneratorSpec, Scale, SequenceWindow};
use proptest::prelude::*;

const SCALES: [usize; 3] = [32, 128, 512];

fn all_models() -> Vec<FiniteIdealModel> {
    vec![
        make_fin(),
        make_density_zero(0.05).unwrap(),
        make_pringsheim(0.1).unwrap(),
        make_double_density(0.05).unwrap(),
        make_e_ideal(),
    ]
}

/// Deterministic pseudo-random index generator.
fn xorshift(state: &mut u64) -> u64 {
    *state ^= *state << 13;
    *state ^= *state >> 7;
    *state ^= *state << 17;
    *state
}

/// Structured single families whose membership in Fin carries over to the
/// density model at every tested scale: the empty set, singletons, and sets
/// supported inside the burn-in prefix.
fn fin_like_families(scale: usize, seed: u64) -> Vec<IndexSet> {
    let burn_in = scale.div_ceil(10);
    let mut out = vec![IndexSet::empty_single()];
    out.push(IndexSet::from_singles(vec![1]));
    out.push(IndexSet::from_singles(vec![scale / 2]));
    out.push(IndexSet::from_singles((1..=burn_in).collect()));
    let mut state = seed.max(1);
    for _ in 0..6 {
        let picks: Vec<usize> = (1..=burn_in)
            .filter(|_| xorshift(&mut state) % 3 == 0)
            .collect();
        out.push(IndexSet::from_singles(picks));
    }
    // Families that are not Fin-small make the implication vacuous but keep
    // the test honest about both verdicts.
    out.push(IndexSet::from_single_pred(|n| n % 2 == 0));
    out.push(IndexSet::from_single_pred(|n| {
        let r = (n as f64).sqrt().round() as usize;
        r * r == n
    }));
    out
}

#[test]
fn inclusion_fin_subset_density() {
    let fin = make_fin();
    let z = make_density_zero(0.05).unwrap();
    for &scale in &SCALES {
        for (i, set) in fin_like_families(scale, 99 + scale as u64).iter().enumerate() {
            if fin.is_small(set, scale).unwrap() {
                assert!(
                    z.is_small(set, scale).unwrap(),
                    "scale {scale}, family {i}: Fin-small but not density-small"
                );
            }
        }
    }
}

/// Pair families: structured (lines, diagonal, quadrant, corner blocks) and
/// random sparse/dense sets.
fn pair_families(scale: usize, seed: u64) -> Vec<IndexSet> {
    let mut out = vec![
        IndexSet::empty_double(),
        IndexSet::from_pair_pred(|_, m| m <= 2),
        IndexSet::from_pair_pred(|n, _| n <= 3),
        IndexSet::from_pair_pred(|n, m| n == m),
        IndexSet::from_pair_pred(|n, m| n % 2 == 0 && m % 3 == 0),
        IndexSet::from_pair_pred(move |n, m| n > scale / 2 && m > scale / 2),
        IndexSet::from_pair_pred(|n, m| n + m <= 12),
    ];
    let mut state = seed.max(1);
    for density_pow in [2u64, 5, 9] {
        let mut picks = Vec::new();
        for n in 1..=scale {
            for m in 1..=scale {
                if xorshift(&mut state) % (1 << density_pow) == 0 {
                    picks.push((n, m));
                }
            }
        }
        out.push(IndexSet::from_pairs(picks));
    }
    out
}

#[test]
fn inclusion_pringsheim_subset_e_and_double_density() {
    let p = make_pringsheim(0.1).unwrap();
    let e = make_e_ideal();
    let zp = make_double_density(0.05).unwrap();
    for &scale in &SCALES {
        for (i, set) in pair_families(scale, 7 + scale as u64).iter().enumerate() {
            if p.is_small(set, scale).unwrap() {
                assert!(
                    e.is_small(set, scale).unwrap(),
                    "scale {scale}, family {i}: border-small but not e-small"
                );
                assert!(
                    zp.is_small(set, scale).unwrap(),
                    "scale {scale}, family {i}: border-small but not double-density-small"
                );
            }
        }
    }
}

#[test]
fn empty_and_full_verdicts() {
    for model in all_models() {
        for &scale in &SCALES {
            let (empty, full) = match model.arity() {
                knopp::ideal::Arity::Single => (
                    IndexSet::empty_single(),
                    IndexSet::from_single_pred(|_| true),
                ),
                knopp::ideal::Arity::Double => (
                    IndexSet::empty_double(),
                    IndexSet::from_pair_pred(|_, _| true),
                ),
            };
            assert!(
                model.is_small(&empty, scale).unwrap(),
                "{} at {scale}: empty set must be small",
                model.name()
            );
            assert!(
                !model.is_small(&full, scale).unwrap(),
                "{} at {scale}: full window must not be small",
                model.name()
            );
        }
    }
}

#[test]
fn union_closure() {
    // Exact for the tail-window model.
    let fin = make_fin();
    let mut state = 5u64;
    for &scale in &SCALES {
        for _ in 0..10 {
            let a: Vec<usize> = (1..=scale / 2)
                .filter(|_| xorshift(&mut state) % 2 == 0)
                .collect();
            let b: Vec<usize> = (1..=scale / 2)
                .filter(|_| xorshift(&mut state) % 2 == 0)
                .collect();
            let sa = IndexSet::from_singles(a.clone());
            let sb = IndexSet::from_singles(b.clone());
            if fin.is_small(&sa, scale).unwrap() && fin.is_small(&sb, scale).unwrap() {
                let union = IndexSet::from_singles(a.iter().chain(&b).cloned().collect());
                assert!(fin.is_small(&union, scale).unwrap());
            }
        }
    }

    // Density model: closure holds at the doubled threshold.
    let z = make_density_zero(0.05).unwrap();
    let z2 = make_density_zero(0.10).unwrap();
    let mut state = 17u64;
    for &scale in &SCALES {
        for _ in 0..10 {
            let a: Vec<usize> = (1..=scale)
                .filter(|_| xorshift(&mut state) % 32 == 0)
                .collect();
            let b: Vec<usize> = (1..=scale)
                .filter(|_| xorshift(&mut state) % 32 == 0)
                .collect();
            let sa = IndexSet::from_singles(a.clone());
            let sb = IndexSet::from_singles(b.clone());
            if z.is_small(&sa, scale).unwrap() && z.is_small(&sb, scale).unwrap() {
                let union = IndexSet::from_singles(a.iter().chain(&b).cloned().collect());
                assert!(
                    z2.is_small(&union, scale).unwrap(),
                    "doubled threshold violated at scale {scale}"
                );
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Monotonicity: subsets of small sets are small, for every model.
    #[test]
    fn smallness_is_monotone(seed in 1u64..u64::MAX, scale_idx in 0usize..3) {
        let scale = SCALES[scale_idx];
        let mut state = seed;
        for model in all_models() {
            match model.arity() {
                knopp::ideal::Arity::Single => {
                    let b: Vec<usize> = (1..=scale)
                        .filter(|_| xorshift(&mut state) % 4 == 0)
                        .collect();
                    let a: Vec<usize> = b
                        .iter()
                        .cloned()
                        .filter(|_| xorshift(&mut state) % 2 == 0)
                        .collect();
                    let sb = IndexSet::from_singles(b);
                    let sa = IndexSet::from_singles(a);
                    if model.is_small(&sb, scale).unwrap() {
                        prop_assert!(model.is_small(&sa, scale).unwrap(),
                            "{} not monotone", model.name());
                    }
                }
                knopp::ideal::Arity::Double => {
                    let mut b = Vec::new();
                    for n in 1..=scale.min(96) {
                        for m in 1..=scale.min(96) {
                            if xorshift(&mut state) % 16 == 0 {
                                b.push((n, m));
                            }
                        }
                    }
                    let a: Vec<(usize, usize)> = b
                        .iter()
                        .cloned()
                        .filter(|_| xorshift(&mut state) % 2 == 0)
                        .collect();
                    let sb = IndexSet::from_pairs(b);
                    let sa = IndexSet::from_pairs(a);
                    if model.is_small(&sb, scale).unwrap() {
                        prop_assert!(model.is_small(&sa, scale).unwrap(),
                            "{} not monotone", model.name());
                    }
                }
            }
        }
    }

    /// Transpose is an involution on verdicts.
    #[test]
    fn transpose_involution(seed in 1u64..u64::MAX) {
        let scale = 32usize;
        let e = make_e_ideal();
        let ee = knopp::ideal::transpose(knopp::ideal::transpose(
            knopp::ideal::fubini_product(make_fin(), make_fin()).unwrap(),
        ).unwrap()).unwrap();
        // transpose(transpose(Fin x Fin)) must agree with Fin x Fin, and
        // e = transpose(Fin x Fin) with its own transpose's transpose.
        let ff = knopp::ideal::fubini_product(make_fin(), make_fin()).unwrap();
        let mut state = seed;
        let mut picks = Vec::new();
        for n in 1..=scale {
            for m in 1..=scale {
                if xorshift(&mut state) % 8 == 0 {
                    picks.push((n, m));
                }
            }
        }
        let set = IndexSet::from_pairs(picks);
        prop_assert_eq!(
            ff.is_small(&set, scale).unwrap(),
            ee.is_small(&set, scale).unwrap()
        );
        prop_assert_eq!(
            e.is_small(&set, scale).unwrap(),
            ff.is_small(&set.transpose(), scale).unwrap()
        );
    }

    /// The two scalar limits never invert by more than the grid step.
    #[test]
    fn liminf_below_limsup(seed in 0u64..1000, amp in 0.0f64..0.8, n in 64usize..512) {
        let spec = GeneratorSpec::Noisy {
            base: Box::new(GeneratorSpec::AltDecay),
            amplitude: amp,
            seed,
        };
        let x: SequenceWindow<f64> = generate(&spec, n).unwrap();
        let params = LimitParams::with_delta(1e-2);
        for model in [make_fin(), make_density_zero(0.05).unwrap()] {
            let up = ideal_limsup(&x, &model, &params).unwrap();
            let dn = ideal_liminf(&x, &model, &params).unwrap();
            prop_assert!(dn <= up + 1e-2, "{}: liminf {dn} > limsup {up} + delta", model.name());
        }
    }

    /// Hull membership certificates re-verify, and capped certificates obey
    /// the Caratheodory bound.
    #[test]
    fn membership_certificates_reverify(seed in 1u64..u64::MAX, dim in 1usize..5, count in 2usize..8) {
        let mut state = seed;
        let mut rnd = move || (xorshift(&mut state) >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 1.0;
        let pts: Vec<Vec<f64>> = (0..count).map(|_| (0..dim).map(|_| rnd()).collect()).collect();
        let p: Vec<f64> = (0..dim).map(|_| 1.5 * rnd()).collect();
        match hull_membership_capped(&p, &pts).unwrap() {
            HullMembership::Inside(w) => {
                prop_assert!(w.indices.len() <= dim + 1, "support too large");
                let sum: f64 = w.weights.iter().sum();
                prop_assert!((sum - 1.0).abs() <= 1e-9);
                prop_assert!(w.weights.iter().all(|&x| x >= 0.0));
                let mut back = vec![0.0; dim];
                for (&i, &wi) in w.indices.iter().zip(&w.weights) {
                    for d in 0..dim {
                        back[d] += wi * pts[i][d];
                    }
                }
                let err: f64 = back.iter().zip(&p).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt();
                prop_assert!(err <= 1e-9, "reconstruction error {err}");
            }
            HullMembership::Outside(h) => {
                let up: f64 = h.normal.iter().zip(&p).map(|(a, b)| a * b).sum();
                prop_assert!(up < h.offset, "separator does not exclude p");
                for s in &pts {
                    let us: f64 = h.normal.iter().zip(s).map(|(a, b)| a * b).sum();
                    prop_assert!(us >= h.offset - 1e-9, "separator cuts a generator");
                }
            }
        }
    }

    /// The support function only sees hull vertices.
    #[test]
    fn support_value_ignores_interior(seed in 1u64..u64::MAX, count in 4usize..12) {
        let mut state = seed;
        let mut rnd = move || (xorshift(&mut state) >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 1.0;
        let pts: Vec<Vec<f64>> = (0..count).map(|_| vec![rnd(), rnd()]).collect();
        let hull = convex_hull(2, &pts).unwrap();
        for u in knopp::geometry::direction_set::<f64>(2, 16) {
            let a = support_value(&pts, &u).unwrap();
            let b = support_value(&hull.vertices, &u).unwrap();
            prop_assert!((a - b).abs() <= 1e-9);
        }
    }
}

#[test]
fn limsup_monotone_in_the_ideal_on_corpus() {
    // Fin-small implies density-small on the hit sets these windows
    // produce, so the density limsup sits below the Fin limsup.
    let fin = make_fin();
    let z = make_density_zero(0.05).unwrap();
    let params = LimitParams::with_delta(1e-2);
    for gen in ["alt", "alt_decay", "sparse_spike", "spike_noisy(alt,0.4,11)"] {
        let x: SequenceWindow<f64> =
            generate(&parse_generator(gen).unwrap(), 4_000).unwrap();
        let up_fin = ideal_limsup(&x, &fin, &params).unwrap();
        let up_z = ideal_limsup(&x, &z, &params).unwrap();
        assert!(
            up_z <= up_fin + 1e-2,
            "{gen}: density limsup {up_z} above Fin limsup {up_fin}"
        );
    }
}

#[test]
fn cluster_sets_anti_monotone_in_the_ideal() {
    // Fin ⊆ Z on these windows, so density candidates sit inside the
    // Fin candidates (within one cell).
    let fin = make_fin();
    let z = make_density_zero(0.05).unwrap();
    let params = ClusterParams::default();
    for gen in ["alt", "sparse_spike", "spike_noisy(alt,0.4,11)"] {
        let x: SequenceWindow<f64> =
            generate(&parse_generator(gen).unwrap(), 4_000).unwrap();
        let cf = estimate_clusters(&x, &fin, &params).unwrap();
        let cz = estimate_clusters(&x, &z, &params).unwrap();
        let cell = 2.0 * cf.radius.max(cz.radius);
        for p in &cz.points {
            let covered = cf
                .points
                .iter()
                .any(|q| p.iter().zip(q).all(|(&a, &b)| (a - b).abs() <= cell));
            assert!(covered, "{gen}: density candidate {p:?} outside Fin candidates");
        }
    }
}

#[test]
fn cluster_sets_stable_under_small_perturbations() {
    for item in corpus::all_items() {
        let window = item.window().unwrap();
        let perturbed = item.perturbed_window(0.5, 23).unwrap();
        let model = item.model().unwrap();
        let params = ClusterParams::default();
        let a = estimate_clusters(&window, &model, &params).unwrap();
        let b = estimate_clusters(&perturbed, &model, &params).unwrap();
        let cell = 2.0 * a.radius.max(b.radius);
        for (from, to, tag) in [(&a, &b, "base→pert"), (&b, &a, "pert→base")] {
            for p in &from.points {
                let covered = to
                    .points
                    .iter()
                    .any(|q| p.iter().zip(q).all(|(&x, &y)| (x - y).abs() <= cell));
                assert!(
                    covered,
                    "{} ({tag}): candidate {p:?} not matched within one cell",
                    item.name
                );
            }
        }
    }
}

#[test]
fn cores_anti_monotone_in_the_ideal() {
    // core(density) ⊆ core(fin) within the equivalence tolerance, since the
    // density model dominates the tail model on these windows.
    let fin = make_fin();
    let z = make_density_zero(0.05).unwrap();
    let params = CoreParams::default();
    let tol_equiv = 3.0 * 1e-2;
    for gen in ["alt", "sparse_spike", "alt_decay"] {
        let x: SequenceWindow<f64> =
            generate(&parse_generator(gen).unwrap(), 4_000).unwrap();
        let cz = core_by_support(&x, &z, &params).unwrap();
        let cf = core_by_support(&x, &fin, &params).unwrap();
        let excess = hausdorff_one_sided(&cz.result, &cf.result).unwrap();
        assert!(excess <= tol_equiv, "{gen}: density core sticks out by {excess}");
    }

    // Same for the Pringsheim / e pair on double windows.
    let p_model = make_pringsheim(0.1).unwrap();
    let e_model = make_e_ideal();
    for gen in ["double_alt", "double_row_alt", "double_decay"] {
        let x: SequenceWindow<f64> =
            generate(&parse_generator(gen).unwrap(), 128).unwrap();
        let ce = core_by_support(&x, &e_model, &params).unwrap();
        let cp = core_by_support(&x, &p_model, &params).unwrap();
        let excess = hausdorff_one_sided(&ce.result, &cp.result).unwrap();
        assert!(excess <= tol_equiv, "{gen}: e-core sticks out of P-core by {excess}");
    }
}

#[test]
fn explicit_lists_agree_with_predicates_on_hit_sets() {
    let x: SequenceWindow<f64> = generate(&GeneratorSpec::Alt, 256).unwrap();
    let hits = x.hit_set(|v| v[0] > 0.0);
    assert!(hits.explicit_consistent(256));
    let d: SequenceWindow<f64> = generate(&GeneratorSpec::DoubleAltSum, 24).unwrap();
    let hits2 = d.hit_set(|v| v[0] > 0.0);
    assert!(hits2.explicit_consistent(24));
}

#[test]
fn membership_verdict_matches_polytope_membership() {
    // The rational membership oracle and the halfspace description agree
    // away from the boundary shell.
    let tri = vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0]];
    let poly = knopp::geometry::Polytope::from_points(2, &tri).unwrap();
    let mut state = 31u64;
    let mut rnd = move || (xorshift(&mut state) >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 0.5;
    for _ in 0..200 {
        let p = vec![rnd(), rnd()];
        let by_lp = hull_membership(&p, &tri).unwrap().is_inside();
        let excess = poly.boundary_excess(&p).unwrap();
        if excess.abs() > 1e-9 {
            assert_eq!(by_lp, excess <= 0.0, "at {p:?} (excess {excess})");
        }
    }
}
