//! Property suites for the closure computation: idempotence, the
//! subspace/lattice membership invariants, rational-scaling covariance,
//! monotonicity, and agreement with the brute-force density oracle.

use liouville_core::linalg::KVector;
use liouville_core::scalar::{Field, FieldDescriptor};
use liouville_core::subgroup::{closure, ClosedSubgroup, GeneratorSet};
use liouville_core::verify::{density_oracle, OracleConfig};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Debug, Clone)]
struct GenSpec {
    dim: usize,
    quadratic: bool,
    atoms: Vec<Vec<(i64, i64)>>,
    lines: Vec<Vec<(i64, i64)>>,
}

fn build(spec: &GenSpec) -> GeneratorSet {
    let field = if spec.quadratic {
        Field::new(FieldDescriptor::multi_quadratic(&[2])).unwrap()
    } else {
        Field::new(FieldDescriptor::rational()).unwrap()
    };
    let mk = |entries: &[(i64, i64)]| -> KVector {
        entries
            .iter()
            .map(|&(a, b)| {
                if spec.quadratic {
                    field.parse(&format!("({a}) + ({b})*sqrt2")).unwrap()
                } else {
                    field.parse(&format!("({a}) + ({b})/3")).unwrap()
                }
            })
            .collect()
    };
    let atoms = spec.atoms.iter().map(|a| mk(a)).collect();
    let lines = spec.lines.iter().map(|l| mk(l)).collect();
    GeneratorSet { dim: spec.dim, field, atoms, lines }
}

prop_compose! {
    fn arb_spec()(dim in 1usize..=3, quadratic in any::<bool>(), n_atoms in 0usize..=3, n_lines in 0usize..=1)
        (pairs in prop::collection::vec((-3i64..=3, -2i64..=2), (n_atoms + n_lines) * dim),
         dim in Just(dim), quadratic in Just(quadratic),
         n_atoms in Just(n_atoms), n_lines in Just(n_lines))
        -> GenSpec
    {
        let mut it = pairs.into_iter();
        let mut grab = |count: usize| -> Vec<Vec<(i64, i64)>> {
            (0..count).map(|_| (0..dim).map(|_| it.next().unwrap()).collect()).collect()
        };
        let atoms = grab(n_atoms);
        let lines = grab(n_lines);
        GenSpec { dim, quadratic, atoms, lines }
    }
}

fn scale_group(g: &ClosedSubgroup, q: &BigRational) -> ClosedSubgroup {
    let scale = |vs: &[KVector]| -> Vec<KVector> {
        vs.iter().map(|v| v.iter().map(|s| s.scale_rational(q)).collect()).collect()
    };
    ClosedSubgroup::from_parts(
        g.dim(),
        g.field().clone(),
        scale(g.v_basis()),
        scale(g.lattice_basis()),
    )
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn closure_idempotent(spec in arb_spec()) {
        let gen = build(&spec);
        let g = closure(&gen).unwrap();
        let again = closure(&GeneratorSet {
            dim: gen.dim,
            field: gen.field.clone(),
            atoms: g.lattice_basis().to_vec(),
            lines: g.v_basis().to_vec(),
        })
        .unwrap();
        prop_assert!(g.equals(&again).unwrap());
    }

    #[test]
    fn subspace_and_lattice_membership(spec in arb_spec()) {
        // The maximal-subspace invariant: rational multiples of V-basis
        // vectors are members, half a lattice vector is not.
        let gen = build(&spec);
        let g = closure(&gen).unwrap();
        for v in g.v_basis() {
            for t in [rat(1, 2), rat(-1, 2), rat(7, 3), rat(-7, 3)] {
                let tv: KVector = v.iter().map(|s| s.scale_rational(&t)).collect();
                prop_assert!(g.member(&tv).unwrap());
            }
        }
        for lam in g.lattice_basis() {
            let half: KVector = lam.iter().map(|s| s.scale_rational(&rat(1, 2))).collect();
            prop_assert!(!g.member(&half).unwrap());
        }
        // Every input generator belongs to the closure.
        for a in &gen.atoms {
            prop_assert!(g.member(a).unwrap());
        }
        for l in &gen.lines {
            for t in [rat(1, 2), rat(7, 3)] {
                let tl: KVector = l.iter().map(|s| s.scale_rational(&t)).collect();
                prop_assert!(g.member(&tl).unwrap());
            }
        }
    }

    #[test]
    fn rational_scaling_covariance(spec in arb_spec(), qn in 1i64..=5, qd in 1i64..=4, neg in any::<bool>()) {
        let q = if neg { -rat(qn, qd) } else { rat(qn, qd) };
        let gen = build(&spec);
        let scaled_gen = GeneratorSet {
            dim: gen.dim,
            field: gen.field.clone(),
            atoms: gen
                .atoms
                .iter()
                .map(|a| a.iter().map(|s| s.scale_rational(&q)).collect())
                .collect(),
            lines: gen
                .lines
                .iter()
                .map(|l| l.iter().map(|s| s.scale_rational(&q)).collect())
                .collect(),
        };
        let g = closure(&gen).unwrap();
        let gs = closure(&scaled_gen).unwrap();
        prop_assert!(gs.equals(&scale_group(&g, &q)).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn monotonicity_of_closure(spec in arb_spec(), extra in prop::collection::vec((-3i64..=3, -2i64..=2), 3)) {
        let gen = build(&spec);
        let g = closure(&gen).unwrap();
        let mut bigger = gen.clone();
        let atom: KVector = (0..gen.dim)
            .map(|i| {
                let (a, b) = extra[i % extra.len()];
                if spec.quadratic {
                    gen.field.parse(&format!("({a}) + ({b})*sqrt2")).unwrap()
                } else {
                    gen.field.parse(&format!("({a}) + ({b})/3")).unwrap()
                }
            })
            .collect();
        bigger.atoms.push(atom);
        let gb = closure(&bigger).unwrap();
        // Old members stay members: check on the old basis vectors.
        for v in g.v_basis().iter().chain(g.lattice_basis()) {
            prop_assert!(gb.member(v).unwrap());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn brute_force_confinement(spec in arb_spec()) {
        // Small-N float check that every combination of the atoms stays
        // on the computed closure.
        let gen = build(&spec);
        if gen.dim > 3 || gen.atoms.len() > 4 {
            return Ok(());
        }
        let g = closure(&gen).unwrap();
        let gens: Vec<Vec<f64>> = gen
            .atoms
            .iter()
            .map(|a| a.iter().map(|s| s.approx_f64().unwrap()).collect())
            .collect();
        if gens.is_empty() {
            return Ok(());
        }
        // eps leaves room for float conditioning of the snapped-basis
        // projection; a wrong closure shows up as distances around the
        // lattice spacing, orders of magnitude above this.
        let cfg = OracleConfig { n_max: 25, eps: 1e-3, targets: 10, seed: 1 };
        let report = density_oracle(&gens, &g, &cfg).unwrap();
        prop_assert!(report.confined, "max generator distance {}", report.max_generator_distance);
    }
}

#[test]
fn kronecker_consistency_fixed_fixtures() {
    // is_dense agrees with the epsilon-density oracle on multi-quadratic
    // fixtures in d <= 2.
    let f = Field::new(FieldDescriptor::multi_quadratic(&[2, 3])).unwrap();
    let fixtures: Vec<(usize, Vec<Vec<&str>>, bool)> = vec![
        (1, vec![vec!["1"], vec!["sqrt2"]], true),
        (1, vec![vec!["sqrt2"], vec!["sqrt3"]], true),
        (1, vec![vec!["3/2"], vec!["3"]], false),
        (2, vec![vec!["1", "0"], vec!["0", "1"], vec!["sqrt2", "sqrt3"]], true),
        (2, vec![vec!["3/2", "0"], vec!["0", "2"]], false),
    ];
    for (dim, atoms, expect_dense) in fixtures {
        let gen = GeneratorSet {
            dim,
            field: f.clone(),
            atoms: atoms
                .iter()
                .map(|a| a.iter().map(|t| f.parse(t).unwrap()).collect())
                .collect(),
            lines: vec![],
        };
        let g = closure(&gen).unwrap();
        assert_eq!(g.is_dense(), expect_dense);
        let gens: Vec<Vec<f64>> = gen
            .atoms
            .iter()
            .map(|a| a.iter().map(|s| s.approx_f64().unwrap()).collect())
            .collect();
        // Coverage of the unit box against the dense prediction is the
        // density oracle; confinement is checked against the exact
        // closure.
        let full = ClosedSubgroup::from_parts(
            dim,
            f.clone(),
            (0..dim)
                .map(|i| {
                    (0..dim)
                        .map(|j| if i == j { f.one() } else { f.zero() })
                        .collect()
                })
                .collect(),
            vec![],
        )
        .unwrap();
        let cfg = OracleConfig::default();
        let confined = density_oracle(&gens, &g, &cfg).unwrap();
        assert!(confined.confined);
        let coverage = density_oracle(&gens, &full, &cfg).unwrap();
        assert_eq!(
            coverage.covered_fraction >= 0.95,
            expect_dense,
            "dim {dim}: covered {}",
            coverage.covered_fraction
        );
    }
}
