use num_bigint::BigInt;
use proptest::prelude::*;

use pigrad::catalog::{self, CatalogEntry};
use pigrad::codim::{codim, component_codim};
use pigrad::freepoly::{parse, permutations, DegreeComposition, MultiPoly};
use pigrad::group::Group;
use pigrad::idealkit::{check_identity, consequences_in_component, tg_equivalent_upto};
use pigrad::rational::Q;

fn entries() -> Vec<CatalogEntry> {
    catalog::catalog()
}

fn int(c: i64) -> Q {
    Q::from_integer(BigInt::from(c))
}

fn full_poly(comp: &DegreeComposition, coeffs: &[i64]) -> MultiPoly {
    let v: Vec<Q> = coeffs.iter().map(|&c| int(c)).collect();
    MultiPoly::from_vector(comp, &v)
}

fn composition(order: usize, max_n: usize) -> impl Strategy<Value = DegreeComposition> {
    prop::collection::vec(0..order, 1..=max_n).prop_map(move |slots| DegreeComposition::new(order, slots))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn commutator_is_bilinear_and_antisymmetric(
        degrees in prop::collection::vec(0usize..2, 4),
        a in prop::collection::vec(-3i64..=3, 2),
        b in prop::collection::vec(-3i64..=3, 2),
        c in prop::collection::vec(-3i64..=3, 2),
    ) {
        let comp = DegreeComposition::new(2, degrees);
        let on = |slots: [usize; 2], k: &[i64]| MultiPoly::from_terms(
            &comp,
            [(vec![slots[0], slots[1]], int(k[0])), (vec![slots[1], slots[0]], int(k[1]))],
        );
        let (p, p2, q) = (on([0, 1], &a), on([0, 1], &b), on([2, 3], &c));
        let pq = p.commutator(&q).unwrap();
        prop_assert!(pq.add(&q.commutator(&p).unwrap()).unwrap().is_zero());
        let lhs = p.add(&p2).unwrap().commutator(&q).unwrap();
        let rhs = pq.add(&p2.commutator(&q).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn render_then_parse_is_identity(
        comp in composition(3, 4),
        seed in prop::collection::vec(-4i64..=4, 24),
    ) {
        let size: usize = (1..=comp.n()).product();
        let p = full_poly(&comp, &seed[..size]);
        prop_assume!(!p.is_zero());
        prop_assert_eq!(parse(&p.render(), &comp).unwrap(), p);
    }

    #[test]
    fn component_codim_ignores_slot_order(
        idx in 0usize..15,
        raw in prop::collection::vec(0usize..4, 1..=3),
        perm_seed in any::<prop::sample::Index>(),
    ) {
        let e = &entries()[idx];
        let order = e.algebra.group().order();
        let slots: Vec<usize> = raw.iter().map(|d| d % order).collect();
        let perms = permutations(slots.len());
        let perm = perm_seed.get(&perms);
        let shuffled: Vec<usize> = perm.iter().map(|&i| slots[i]).collect();
        let c1 = component_codim(&e.algebra, &DegreeComposition::new(order, slots));
        let c2 = component_codim(&e.algebra, &DegreeComposition::new(order, shuffled));
        prop_assert_eq!(c1, c2);
    }

    #[test]
    fn codimension_bounds(idx in 0usize..15, other in 0usize..15, n in 1usize..=3) {
        let all = entries();
        let a = &all[idx].algebra;
        let order = a.group().order();
        let c = codim(a, n);
        let fact: usize = (1..=n).product();
        prop_assert!(c <= order.pow(n as u32) * fact);
        prop_assert!(codim(&a.forget_grading(), n) <= c);
        let b = &all[other].algebra;
        prop_assume!(b.group() == a.group());
        let (ca, cb) = (c, codim(b, n));
        let cs = codim(&a.direct_sum(b).unwrap(), n);
        prop_assert!(ca.max(cb) <= cs && cs <= ca + cb, "{} {} {}", ca, cb, cs);
    }

    #[test]
    fn equivalence_is_reflexive_and_symmetric(x in 0usize..15, y in 0usize..15) {
        let all = entries();
        let (a, b) = (&all[x].algebra, &all[y].algebra);
        prop_assert!(tg_equivalent_upto(a, a, 3).unwrap().equivalent);
        prop_assume!(a.group() == b.group());
        let ab = tg_equivalent_upto(a, b, 3).unwrap();
        let ba = tg_equivalent_upto(b, a, 3).unwrap();
        prop_assert_eq!(ab.equivalent, ba.equivalent);
        if let (Some(d1), Some(d2)) = (&ab.divergence, &ba.divergence) {
            prop_assert_eq!(d1.n, d2.n);
        }
    }

    #[test]
    fn consequences_of_a_basis_are_identities(idx in 0usize..15, comp in composition(4, 3)) {
        let e = &entries()[idx];
        let order = e.algebra.group().order();
        let comp = DegreeComposition::new(order, comp.slots().iter().map(|d| d % order).collect());
        let gens = e.basis.expand(&e.algebra);
        for f in consequences_in_component(e.algebra.group(), &gens, &comp).into_iter().take(12) {
            let r = check_identity(&e.algebra, &f).unwrap();
            prop_assert!(r.is_identity, "{}: {} has witness {:?}", e.name, f.render(), r.witness);
        }
    }

    #[test]
    fn group_encoding_round_trips(orders in prop::collection::vec(1usize..5, 1..=3), pick in any::<prop::sample::Index>()) {
        let g = Group::cyclic_product(&orders).unwrap();
        let x = pick.index(g.order());
        prop_assert_eq!(g.decode(&g.encode(x)).unwrap(), x);
        prop_assert_eq!(g.mul(x, g.inverse(x)), 0);
    }
}
