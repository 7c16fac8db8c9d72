use std::sync::OnceLock;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use uqcenter::affine_orbits::{orbit_correspondence, orbit_table, Action, DEFAULT_BUDGET};
use uqcenter::blocks::block_report;
use uqcenter::uqsl2::Functional;
use uqcenter::{AlgElem, CharRing, RootDatum, RootType, SmallQuantumGroup};

fn u3() -> &'static SmallQuantumGroup {
    static G: OnceLock<SmallQuantumGroup> = OnceLock::new();
    G.get_or_init(|| SmallQuantumGroup::new(3).unwrap())
}

fn elems(g: &SmallQuantumGroup, seed: u64, n: usize) -> Vec<AlgElem> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| g.random_elem(&mut rng, 0.25)).collect()
}

fn admissible(rank: usize) -> impl Strategy<Value = u32> {
    let ls: Vec<u32> = (3..=15)
        .step_by(2)
        .filter(|&l| RootDatum::build(RootType::A, rank).unwrap().check_l(i64::from(l)).is_ok())
        .collect();
    proptest::sample::select(ls)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn multiplication_is_associative(seed in any::<u64>()) {
        let g = u3();
        let x = elems(g, seed, 3);
        prop_assert_eq!(g.mul(&g.mul(&x[0], &x[1]), &x[2]), g.mul(&x[0], &g.mul(&x[1], &x[2])));
    }

    #[test]
    fn coproduct_is_an_algebra_map(seed in any::<u64>()) {
        let g = u3();
        let x = elems(g, seed, 2);
        prop_assert_eq!(g.coproduct(&g.mul(&x[0], &x[1])), g.mul_grid2(&g.coproduct(&x[0]), &g.coproduct(&x[1])));
    }

    #[test]
    fn antipode_reverses_products(seed in any::<u64>()) {
        let g = u3();
        let x = elems(g, seed, 2);
        prop_assert_eq!(g.antipode(&g.mul(&x[0], &x[1])), g.mul(&g.antipode(&x[1]), &g.antipode(&x[0])));
        prop_assert_eq!(g.antipode_inv(&g.antipode(&x[0])), x[0].clone());
    }

    #[test]
    fn phi_is_a_left_module_map(seed in any::<u64>()) {
        let g = u3();
        let x = elems(g, seed, 2);
        prop_assert_eq!(g.phi(&g.mul(&x[0], &x[1])).unwrap(), g.act_left(&x[0], &g.phi(&x[1]).unwrap()));
        prop_assert_eq!(g.phi_inv(&g.phi(&x[0]).unwrap()).unwrap(), x[0].clone());
    }

    #[test]
    fn class_functions_satisfy_the_trace_condition(seed in any::<u64>(), i in 0u32..3) {
        let g = u3();
        let x = elems(g, seed, 2);
        let (a, b) = (&x[0], &x[1]);
        let s2 = g.antipode_inv(&g.antipode_inv(a));
        for p in [g.q_character(i).unwrap(), g.right_integral().unwrap().clone()] {
            prop_assert_eq!(g.eval(&p, &g.mul(a, b)), g.eval(&p, &g.mul(b, &s2)));
        }
    }

    #[test]
    fn transmute_is_multiplicative_on_c_r(seed in any::<u64>()) {
        let g = u3();
        let c_r = g.c_r_basis();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut pick = || {
            use rand::Rng;
            c_r.iter().fold(Functional::zero(), |acc, p| acc.add(&p.scale(&g.field().from_int(rng.gen_range(-2..=2)))))
        };
        let (p, q) = (pick(), pick());
        prop_assert_eq!(g.transmute(&g.functional_product(&p, &q)), g.mul(&g.transmute(&p), &g.transmute(&q)));
    }

    #[test]
    fn orbit_sizes_partition_the_lattice(rank in 1usize..=2, pick in any::<prop::sample::Index>()) {
        let datum = RootDatum::build(RootType::A, rank).unwrap();
        let ls: Vec<u32> = (3..=13).step_by(2).filter(|&l| datum.check_l(i64::from(l)).is_ok()).collect();
        let l = ls[pick.index(ls.len())];
        for action in [Action::BulletOnP, Action::CircOnP, Action::CircOnQ] {
            let t = orbit_table(&datum, l, action, DEFAULT_BUDGET).unwrap();
            let total: u64 = t.orbits().iter().map(|o| o.size).sum();
            prop_assert_eq!(total, u64::from(l).pow(rank as u32));
            for o in t.orbits() {
                prop_assert_eq!(u128::from(o.size) * o.stabilizer_order, t.weyl_order());
            }
        }
        let c = orbit_correspondence(&datum, l, DEFAULT_BUDGET).unwrap();
        prop_assert!(c.is_bijective() && c.preserves_sizes());
    }

    #[test]
    fn block_totals_are_consistent(l in admissible(2)) {
        let d = RootDatum::build(RootType::A, 2).unwrap();
        let r = block_report(&orbit_table(&d, l, Action::BulletOnP, DEFAULT_BUDGET).unwrap()).unwrap();
        let t = &r.totals;
        prop_assert_eq!(t.ztilde, t.zprime);
        prop_assert_eq!(t.intersection, t.xbar);
        prop_assert_eq!(t.sum, t.ztilde + t.zprime - t.intersection);
        prop_assert_eq!(t.xbar as usize, r.blocks.len());
    }

    #[test]
    fn character_ring_is_commutative_and_associative(l in admissible(1), i in 0usize..15, j in 0usize..15, k in 0usize..15) {
        let r = CharRing::new(l).unwrap();
        let n = r.dim();
        let (a, b, c) = (r.xi(i % n), r.xi(j % n), r.xi(k % n));
        prop_assert_eq!(r.product(&a, &b).unwrap(), r.product(&b, &a).unwrap());
        let ab_c = r.product(&r.product(&a, &b).unwrap(), &c).unwrap();
        let a_bc = r.product(&a, &r.product(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(ab_c, a_bc);
        // dimension is a ring map
        prop_assert_eq!(r.product(&a, &b).unwrap().dimension(), a.dimension() * b.dimension());
    }
}
