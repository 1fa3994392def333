//! Acceptance suite: one test per criterion, printing a pass/fail line with
//! the elapsed time (run with `--nocapture` to see every line). Everything is
//! exact arithmetic; the only tolerances are the per-criterion wall-clock
//! budgets, asserted at the stated limits.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cbfact::curve::{
    sample_genus_three_graphs, stable_genus_two_graphs, DualGraph, LabelingSpace,
};
use cbfact::factorize::{decomposition_table, rank_nodal, rank_smooth};
use cbfact::fusion::{fusion_affine_fold, fusion_rim_hook, FusionAlgorithm, FusionTable};
use cbfact::grading::{
    chern_sl2_coefficients, cone_points, decompose_in_basis, hilbert_basis, qp_fit, ConeSpec,
};
use cbfact::polarize::{
    build_covering_pair, pole_certificate, ChoiceSpec, ComponentData, CoveringPair, EpsilonChoice,
    NodeData,
};
use cbfact::poly::{Poly, PolyMatrix};
use cbfact::qgrass::{
    coupling_class, gw_nonvanishing_bound, horn_inequality_check, power_with_qdegrees, QClass,
};
use cbfact::rat::{rat, rat_int, Rat};
use cbfact::snf::smith_normal_form;
use cbfact::weights::{epsilon_midpoint, epsilon_pair, level_weights, Weight};

struct Criterion {
    number: u32,
    name: &'static str,
    limit_secs: f64,
    start: Instant,
}

impl Criterion {
    fn new(number: u32, name: &'static str, limit_secs: f64) -> Criterion {
        Criterion {
            number,
            name,
            limit_secs,
            start: Instant::now(),
        }
    }

    fn finish(self) {
        let elapsed = self.start.elapsed().as_secs_f64();
        assert!(
            elapsed < self.limit_secs,
            "criterion {} exceeded its {}s budget: {elapsed:.2}s",
            self.number,
            self.limit_secs
        );
        println!(
            "PASS criterion {}: {} ({elapsed:.2}s)",
            self.number, self.name
        );
    }
}

fn w(parts: &[u32]) -> Weight {
    Weight::new(parts).unwrap()
}

fn graph_battery() -> Vec<DualGraph> {
    let mut graphs: Vec<DualGraph> = stable_genus_two_graphs()
        .into_iter()
        .map(|(_, g)| g)
        .collect();
    // Two marked variants.
    graphs.push(
        DualGraph::new(vec![1], vec![(0, 0)], vec![(0, w(&[1, 0])), (0, w(&[1, 0]))]).unwrap(),
    );
    graphs.push(DualGraph::new(vec![1, 1], vec![(0, 1)], vec![(0, w(&[2, 0]))]).unwrap());
    graphs
}

#[test]
fn criterion_1_genus2_ranks() {
    let c = Criterion::new(1, "genus-2 sl2 ranks 4,10,20,35,56,84", 5.0);
    let graph = DualGraph::new(vec![2], vec![], vec![]).unwrap();
    let binary = env!("CARGO_BIN_EXE_cbfact");
    let fixture = format!(
        "{}/tests/fixtures/genus2-smooth.json",
        env!("CARGO_MANIFEST_DIR")
    );
    for m in 1u32..=6 {
        let expect = BigInt::from((m + 1) * (m + 2) * (m + 3) / 6);
        assert_eq!(rank_nodal(&graph, 2, m).unwrap(), expect);
        let out = Command::new(binary)
            .args(["cb-rank", "--graph", &fixture, "--r", "2", "--level"])
            .arg(m.to_string())
            .output()
            .unwrap();
        assert!(out.status.success());
        assert_eq!(
            String::from_utf8(out.stdout).unwrap().trim(),
            expect.to_string()
        );
    }
    c.finish();
}

#[test]
fn criterion_2_factorization_invariance() {
    let c = Criterion::new(2, "factorization invariance across dual graphs", 60.0);
    let smooth = DualGraph::new(vec![2], vec![], vec![]).unwrap();
    for l in 0..=3u32 {
        let reference = rank_nodal(&smooth, 2, l).unwrap();
        for (name, graph) in stable_genus_two_graphs() {
            assert_eq!(
                rank_nodal(&graph, 2, l).unwrap(),
                reference,
                "genus-2 graph {name} at level {l}"
            );
        }
    }
    for l in 0..=2u32 {
        let graphs = sample_genus_three_graphs();
        let reference = rank_nodal(&graphs[0].1, 2, l).unwrap();
        for (name, graph) in &graphs {
            assert_eq!(
                rank_nodal(graph, 2, l).unwrap(),
                reference,
                "genus-3 graph {name} at level {l}"
            );
        }
    }
    c.finish();
}

#[test]
fn criterion_3_fusion_dual_oracle() {
    let c = Criterion::new(3, "fusion dual-oracle, associativity, duality", 120.0);
    for (r, lmax) in [(2usize, 4u32), (3, 3), (4, 2)] {
        for l in 1..=lmax {
            let ws = level_weights(r, l);
            for a in &ws {
                for b in &ws {
                    assert_eq!(
                        fusion_affine_fold(r, l, a, b).unwrap(),
                        fusion_rim_hook(r, l, a, b).unwrap(),
                        "algorithms disagree at r={r} l={l} on {a} . {b}"
                    );
                }
            }
            // Full-table invariants on the rim-hook build, one more cross-check.
            let table = FusionTable::build(r, l, FusionAlgorithm::RimHook).unwrap();
            let m = table.weights().len();
            for i in 0..m {
                for j in 0..m {
                    for k in 0..m {
                        let n = table.coeff_by_index(i, j, k);
                        assert!(n >= 0);
                        assert_eq!(n, table.coeff_by_index(j, i, k), "commutativity");
                        assert_eq!(
                            n,
                            table.coeff_by_index(i, table.dual_index(k), table.dual_index(j)),
                            "duality symmetry"
                        );
                        // Unit column.
                        assert_eq!(table.coeff_by_index(0, j, k), (j == k) as i64);
                    }
                }
            }
            for i in 0..m {
                for j in 0..m {
                    for k in 0..m {
                        for t in 0..m {
                            let lhs: i64 = (0..m)
                                .map(|s| {
                                    table.coeff_by_index(i, j, s) * table.coeff_by_index(s, k, t)
                                })
                                .sum();
                            let rhs: i64 = (0..m)
                                .map(|s| {
                                    table.coeff_by_index(j, k, s) * table.coeff_by_index(i, s, t)
                                })
                                .sum();
                            assert_eq!(lhs, rhs, "associativity at r={r} l={l}");
                        }
                    }
                }
            }
        }
    }
    c.finish();
}

#[test]
fn criterion_4_vanishing_and_root_lattice_filters() {
    let c = Criterion::new(4, "root-lattice filter exactness", 60.0);
    // Filtered and unfiltered sums agree, and removed rows are all zero.
    for (r, lmax) in [(2usize, 3u32), (3, 2)] {
        for l in 0..=lmax {
            for graph in graph_battery() {
                if graph.legs().iter().any(|(_, w)| w.level() > l)
                    || graph.legs().iter().any(|(_, w)| w.rank() != r)
                {
                    continue;
                }
                let rows = decomposition_table(&graph, r, l).unwrap();
                let total: BigInt = rows.iter().map(|row| row.contribution.clone()).sum();
                assert_eq!(rank_nodal(&graph, r, l).unwrap(), total);
                let space = LabelingSpace::new(&graph, r, l);
                for row in &rows {
                    if !space.passes_root_filter(&row.labeling) {
                        assert!(
                            row.contribution.is_zero(),
                            "filter removed a nonzero row at r={r} l={l}"
                        );
                    }
                }
            }
        }
    }
    // At level 1 the converse also holds on the unmarked genus-2 battery:
    // every zero row fails the root-lattice test at some vertex. (At higher
    // levels fusion vanishing produces zero rows inside the root lattice,
    // e.g. the theta graph labeled (2,0) everywhere at sl2 level 2.)
    for r in [2usize, 3] {
        for (name, graph) in stable_genus_two_graphs() {
            let rows = decomposition_table(&graph, r, 1).unwrap();
            let space = LabelingSpace::new(&graph, r, 1);
            for row in &rows {
                if row.contribution.is_zero() {
                    assert!(
                        !space.passes_root_filter(&row.labeling),
                        "zero row in the root lattice on {name} at r={r}"
                    );
                }
            }
        }
    }
    c.finish();
}

#[test]
fn criterion_5_covering_pairs() {
    let c = Criterion::new(5, "covering pairs: integrality, bounds, degree sum", 60.0);
    for level in [2u32, 4] {
        for (name, graph) in stable_genus_two_graphs() {
            let genus = graph.validate().unwrap();
            let space = LabelingSpace::new(&graph, 2, level);
            for i in 0..space.count() {
                let labeling = space.get(i);
                // Integrality is guaranteed for labelings whose summand can
                // be nonzero, i.e. those passing the root-lattice test.
                if !space.passes_root_filter(&labeling) {
                    continue;
                }
                for choice in [EpsilonChoice::Low, EpsilonChoice::High, EpsilonChoice::Midpoint] {
                    let cp = build_covering_pair(
                        &graph,
                        level,
                        &labeling,
                        &ChoiceSpec::Uniform(choice),
                    )
                    .unwrap_or_else(|e| panic!("{name} labeling {i}: {e}"));
                    if choice != EpsilonChoice::Midpoint {
                        assert!(cp.all_integral(), "{name} labeling {i} not integral");
                    }
                    for node in &cp.nodes {
                        let pair = epsilon_pair(&node.weight, level).unwrap();
                        assert!(pair.low <= node.epsilon_a && node.epsilon_a <= pair.high);
                        let dual_pair = epsilon_pair(&node.weight.dual(), level).unwrap();
                        let eps_b = -node.epsilon_a.clone();
                        assert!(dual_pair.low <= eps_b && eps_b <= dual_pair.high);
                    }
                    // Node perturbations cancel in pairs, so the normalized
                    // degrees always sum to g - 1.
                    assert_eq!(cp.total_normalized_degree(), rat_int(genus as i64 - 1));
                    if choice == EpsilonChoice::Midpoint {
                        // sl2 midpoint: canonical polarization.
                        for (v, comp) in cp.components.iter().enumerate() {
                            let canonical = Rat::new(
                                (2 * graph.genus_of(v) as i64 - 2 + comp.node_halves as i64)
                                    .into(),
                                2.into(),
                            );
                            assert_eq!(comp.normalized_degree, canonical);
                            assert_eq!(
                                comp.a_weight,
                                canonical / rat_int(genus as i64 - 1)
                            );
                        }
                    }
                }
            }
        }
    }
    c.finish();
}

/// A single-node covering pair with an arbitrary admissible perturbation,
/// for the randomized pole audit.
fn synthetic_pair(level: u32, weight: Weight, epsilon_a: Rat) -> CoveringPair {
    let comp = ComponentData {
        genus: 1,
        node_halves: 1,
        degree: Rat::zero(),
        normalized_degree: Rat::zero(),
        a_weight: Rat::zero(),
        integral: true,
    };
    CoveringPair {
        level,
        genus: 2,
        nodes: vec![NodeData {
            comp_a: 0,
            comp_b: 1,
            weight,
            epsilon_a,
        }],
        components: vec![comp.clone(), comp],
    }
}

#[test]
fn criterion_6_pole_certification() {
    let c = Criterion::new(6, "pole ledger nonpositivity over random configs", 10.0);
    let mut rng = ChaCha8Rng::seed_from_u64(20260811);
    for case in 0..3u8 {
        let mut attained_zero = false;
        for trial in 0..1000 {
            let rank = rng.gen_range(2usize..=6);
            let level = 2 * rng.gen_range(1u32..=3);
            let ws = level_weights(rank, level);
            let weight = ws[rng.gen_range(0..ws.len())].clone();
            let pair = epsilon_pair(&weight, level).unwrap();
            // Random admissible perturbation on a 16-step grid, with the
            // exact endpoints included.
            let step = rng.gen_range(0i64..=16);
            let eps = &pair.low + (&pair.high - &pair.low) * rat(step, 16);
            let base = rng.gen_range(0u32..=2);
            let (fa, fb) = match case {
                0 => (base, base),
                1 => (base + rng.gen_range(1u32..=3), base),
                _ => (base, base + rng.gen_range(1u32..=3)),
            };
            let m = fa as i64 - fb as i64;
            // Consistent exponent data: f(a) + |alpha| = f(b) + |beta|.
            let alpha: Vec<u32> = (0..rng.gen_range(0usize..3))
                .map(|_| rng.gen_range(0u32..=3))
                .collect();
            let asum: i64 = alpha.iter().map(|&x| x as i64).sum();
            let bsum = asum + m;
            if bsum < 0 {
                continue;
            }
            let mut beta = alpha.clone();
            beta.push(0);
            *beta.last_mut().unwrap() = 0;
            let mut beta: Vec<u32> = vec![];
            let mut rem = bsum as u32;
            while rem > 0 {
                let take = rng.gen_range(1u32..=rem);
                beta.push(take);
                rem -= take;
            }
            let cp = synthetic_pair(level, weight.clone(), eps.clone());
            let ledger = pole_certificate(&cp, &[fa, fb], &[(alpha.clone(), beta.clone())])
                .unwrap_or_else(|e| panic!("case {case} trial {trial}: {e}"));
            assert!(
                !ledger.nodes[0].total.is_positive(),
                "positive pole total in case {case}: weight {weight}, eps {eps}, f=({fa},{fb}), alpha={alpha:?}, beta={beta:?}"
            );
            assert!(ledger.certifies());
            if ledger.nodes[0].total.is_zero() {
                attained_zero = true;
            }
        }
        // Endpoint configurations attaining zero, constructed per case.
        let level = 2;
        let full = w(&[2, 0]);
        let (zero_cp, f, exps): (CoveringPair, [u32; 2], (Vec<u32>, Vec<u32>)) = match case {
            0 => (
                synthetic_pair(level, full.clone(), epsilon_pair(&full, level).unwrap().high),
                [0, 0],
                (vec![1], vec![1]),
            ),
            1 => (
                synthetic_pair(level, full.clone(), epsilon_pair(&full, level).unwrap().high),
                [2, 0],
                (vec![], vec![2]),
            ),
            _ => (
                synthetic_pair(level, full.clone(), epsilon_pair(&full, level).unwrap().low),
                [0, 2],
                (vec![2], vec![]),
            ),
        };
        let ledger = pole_certificate(&zero_cp, &f, &[exps]).unwrap();
        assert!(ledger.nodes[0].total.is_zero());
        assert!(attained_zero, "case {case} never attained zero at random");
    }
    c.finish();
}

#[test]
fn criterion_7_perturbation_interval_suite() {
    let c = Criterion::new(7, "perturbation interval properties, exhaustive", 60.0);
    for r in 2usize..=6 {
        for l in 1u32..=6 {
            let mut extreme = vec![0u32; r];
            extreme[0] = l;
            let extreme = w(&extreme);
            for v in level_weights(r, l) {
                // Duality-sum identity.
                assert_eq!(
                    v.x_pairing() + v.dual().x_pairing(),
                    rat_int(v.level() as i64)
                );
                // Interval ordering and [-1/2, 1/2] membership.
                let pair = epsilon_pair(&v, l).unwrap();
                assert!(pair.low <= pair.high);
                let half = rat(1, 2);
                assert!(
                    (-half.clone() <= pair.low && pair.low <= half)
                        || (-half.clone() <= pair.high && pair.high <= half)
                );
                // Midpoint interval. The open form degenerates: for r = 2 the
                // interval is the single point 0, and for r >= 3 the weights
                // l*omega_1 and l*omega_(r-1) land exactly on the endpoints;
                // everything else is strictly inside. Asserted exactly.
                let mid = epsilon_midpoint(&v, l).unwrap();
                let bound = half - rat(1, r as i64);
                assert!(-bound.clone() <= mid && mid <= bound);
                let boundary = r == 2 || v == extreme || v == extreme.dual();
                if boundary {
                    assert!(mid == bound || mid == -bound);
                } else {
                    assert!(-bound.clone() < mid && mid < bound);
                }
            }
        }
    }
    c.finish();
}

#[test]
fn criterion_8_quantum_schubert_fixtures() {
    let c = Criterion::new(8, "quantum Schubert fixtures, GW bound, horn sweep", 60.0);
    // Convention-pinned identities in Gr(2, r).
    for r in 3usize..=6 {
        let si = coupling_class(2, r).unwrap();
        for b in 2..=r as u32 {
            let power = power_with_qdegrees(&si, b).unwrap();
            let target = QClass::from_subset(2, r, &[b as usize - 1, b as usize]).unwrap();
            let target_partition: Vec<u32> = target
                .terms()
                .next()
                .map(|(p, _, _)| p.to_vec())
                .unwrap_or_default();
            let terms: Vec<(Vec<u32>, u32, BigInt)> = power
                .terms()
                .map(|(p, q, c)| (p.to_vec(), q, c.clone()))
                .collect();
            assert_eq!(
                terms,
                vec![(target_partition, b - 2, BigInt::one())],
                "power fixture b={b} r={r}"
            );
        }
    }
    // Gromov-Witten nonvanishing bound c <= e - 2.
    for r in 3usize..=6 {
        for e in 3u32..=10 {
            let (ok, witness) = gw_nonvanishing_bound(2, r, e).unwrap();
            assert!(ok, "gw bound fails at r={r} e={e}");
            assert!(witness.unwrap() + 2 <= e);
        }
    }
    // Horn inequality on every nonzero genus-zero block.
    for (r, lmax, nmax) in [(2usize, 3u32, 5usize), (3, 2, 4)] {
        for l in 1..=lmax {
            let ws = level_weights(r, l);
            let mut stack: Vec<Vec<Weight>> = vec![vec![]];
            for _ in 0..nmax {
                stack = stack
                    .into_iter()
                    .flat_map(|t| {
                        ws.iter()
                            .map(|x| {
                                let mut t = t.clone();
                                t.push(x.clone());
                                t
                            })
                            .collect::<Vec<_>>()
                    })
                    .collect();
            }
            for tuple in &stack {
                if tuple.len() < 3 {
                    continue;
                }
                if !rank_smooth(r, l, 0, tuple).unwrap().is_zero() {
                    assert!(
                        horn_inequality_check(r, l, tuple).unwrap(),
                        "horn fails on a nonzero block at r={r} l={l}: {tuple:?}"
                    );
                }
            }
        }
    }
    c.finish();
}

#[test]
fn criterion_9_grading() {
    let c = Criterion::new(9, "quasi-polynomial fit, Hilbert basis, Chern values", 60.0);
    // Fit on ranks up to level 6, then predict levels 7 and 8 exactly.
    let smooth = DualGraph::new(vec![2], vec![], vec![]).unwrap();
    let values: Vec<Rat> = (0..=6u32)
        .map(|m| {
            Rat::from_integer(rank_nodal(&smooth, 2, m).unwrap())
        })
        .collect();
    let qp = qp_fit(&values, 4, 6).unwrap();
    assert_eq!(qp.period, 1);
    assert_eq!(qp.degree, 3);
    assert_eq!(qp.eval(7), rat_int(120));
    assert_eq!(qp.eval(8), rat_int(165));
    assert_eq!(
        Rat::from_integer(rank_nodal(&smooth, 2, 7).unwrap()),
        qp.eval(7)
    );
    assert_eq!(
        Rat::from_integer(rank_nodal(&smooth, 2, 8).unwrap()),
        qp.eval(8)
    );

    // Hilbert basis of the two-component genus-2 cone with r0 = 0.
    let cone = ConeSpec {
        components: 2,
        genus: 2,
        lower_bound: rat_int(0),
    };
    let basis = hilbert_basis(&cone, 10).unwrap();
    let got: BTreeSet<(Vec<i64>, u32)> = basis.generators.iter().cloned().collect();
    let expect: BTreeSet<(Vec<i64>, u32)> =
        [(vec![1, 0], 1u32), (vec![0, 1], 1)].into_iter().collect();
    assert_eq!(got, expect);
    assert_eq!(basis.certified_bound, 10);
    for p in cone_points(&cone, 10) {
        assert!(decompose_in_basis(&p, &basis.generators, &cone));
    }

    // Chern coefficient displays.
    assert_eq!(chern_sl2_coefficients(1).0, rat_int(1));
    assert_eq!(chern_sl2_coefficients(0).0, rat_int(0));
    assert_eq!(chern_sl2_coefficients(1).1, rat_int(-80));
    c.finish();
}

#[test]
fn criterion_10_smith_normal_form() {
    let c = Criterion::new(10, "Smith normal form on 200 random matrices", 10.0);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut done = 0;
    while done < 200 {
        let n = rng.gen_range(1usize..=5);
        let mut entries = Vec::with_capacity(n * n);
        for _ in 0..n * n {
            let deg = rng.gen_range(0usize..=2);
            let coeffs: Vec<Rat> = (0..=deg)
                .map(|_| rat(rng.gen_range(-3i64..=3), rng.gen_range(1i64..=2)))
                .collect();
            entries.push(Poly::new(coeffs));
        }
        let m = PolyMatrix::new(n, n, entries);
        let det = m.det();
        if det.is_zero() {
            assert!(smith_normal_form(&m).is_err());
            continue;
        }
        let s = smith_normal_form(&m).unwrap();
        // Shape: left * M * right is the diagonal.
        let prod = s.left.mul(&m).mul(&s.right);
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    assert_eq!(prod.at(i, j), &s.diagonal[i]);
                } else {
                    assert!(prod.at(i, j).is_zero());
                }
            }
        }
        // Divisibility chain and monic normalization.
        for win in s.diagonal.windows(2) {
            assert!(win[0].divides(&win[1]));
        }
        for d in &s.diagonal {
            assert!(d.leading().unwrap().is_one());
        }
        // Determinant preserved up to a unit. Combined with the verified
        // product identity this forces det(left) * det(right) to be the
        // inverse unit, and a product of polynomials is a unit only when
        // both factors are, so the transforms have unit determinant.
        let mut diag_prod = Poly::one();
        for d in &s.diagonal {
            diag_prod = &diag_prod * d;
        }
        let (q, r) = det.divmod(&diag_prod);
        assert!(r.is_zero());
        assert_eq!(q.degree(), Some(0));
        done += 1;
    }
    c.finish();
}
