//! Algebraic laws of the building blocks on random inputs.

use std::sync::Arc;

use proptest::prelude::*;

use orbitdist::fqlinalg::{self, FqMatrix};
use orbitdist::subspace::{format_element, parse_element};
use orbitdist::{intersection_distribution, parse_subspace, trace_dual, ConwayTable, FieldTower, Subspace};

const TOWERS: [(u32, usize); 9] = [(2, 4), (2, 5), (2, 6), (2, 8), (3, 3), (3, 4), (4, 3), (5, 3), (7, 2)];

fn tower(i: usize) -> Arc<FieldTower> {
    let (q, n) = TOWERS[i];
    FieldTower::conway(q, n, &ConwayTable::bundled()).unwrap()
}

/// A tower index and exponents of `z` (reduced in the tower) spanning a subspace.
fn tower_and_exponents(max_gens: usize) -> impl Strategy<Value = (usize, Vec<u64>)> {
    (0..TOWERS.len(), prop::collection::vec(any::<u64>(), 1..=max_gens))
}

fn span(t: &Arc<FieldTower>, exps: &[u64]) -> Subspace {
    let elems: Vec<_> = exps.iter().map(|&e| t.z_pow(e)).collect();
    Subspace::span(t, &elems).unwrap()
}

fn nonzero(t: &FieldTower, e: u64) -> orbitdist::FFElem {
    t.z_pow(e % t.group_order())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, ..ProptestConfig::default() })]

    #[test]
    fn rref_is_idempotent_and_keeps_rank(i in 0..TOWERS.len(), raw in prop::collection::vec(any::<u8>(), 1..40)) {
        let t = tower(i);
        let (q, n) = (t.q() as u8, t.n());
        let rows: Vec<Vec<u8>> = raw.chunks(n).map(|c| (0..n).map(|j| c.get(j).copied().unwrap_or(0) % q).collect()).collect();
        let m = FqMatrix::new(n, rows).unwrap();
        let (r1, rank1) = fqlinalg::rref(t.fq(), &m);
        let (r2, rank2) = fqlinalg::rref(t.fq(), &r1);
        prop_assert_eq!(&r1, &r2);
        prop_assert_eq!(rank1, rank2);
        prop_assert_eq!(rank1, r1.nrows());
        prop_assert_eq!(fqlinalg::rank(t.fq(), &m), rank1);
    }

    #[test]
    fn span_ignores_row_operations((i, exps) in tower_and_exponents(5), scale in any::<u64>(), pick in any::<usize>()) {
        let t = tower(i);
        let u = span(&t, &exps);
        let mut gens: Vec<_> = exps.iter().map(|&e| t.z_pow(e)).collect();
        // Scale one generator by a nonzero scalar and add it to another.
        let c = 1 + (scale % (t.q() as u64 - 1)) as u8;
        let a = pick % gens.len();
        gens[a] = t.scale(&gens[a], c);
        if gens.len() > 1 {
            let b = (a + 1) % gens.len();
            gens[b] = t.add(&gens[b], &gens[a]);
        }
        gens.reverse();
        let v = Subspace::span(&t, &gens).unwrap();
        prop_assert_eq!(&u, &v);
        prop_assert_eq!(u.dim(), v.dim());
    }

    #[test]
    fn intersection_is_symmetric_and_inside_both((i, a) in tower_and_exponents(4), b in prop::collection::vec(any::<u64>(), 1..=4)) {
        let t = tower(i);
        let (u, v) = (span(&t, &a), span(&t, &b));
        let w = u.intersection(&v).unwrap();
        prop_assert_eq!(&w, &v.intersection(&u).unwrap());
        prop_assert_eq!(w.dim(), u.intersection_dim(&v).unwrap());
        prop_assert!(u.contains_subspace(&w) && v.contains_subspace(&w));
    }

    #[test]
    fn modular_law((i, a) in tower_and_exponents(4), b in prop::collection::vec(any::<u64>(), 1..=4)) {
        let t = tower(i);
        let (u, v) = (span(&t, &a), span(&t, &b));
        let sum = u.sum(&v).unwrap();
        prop_assert_eq!(sum.dim() + u.intersection_dim(&v).unwrap(), u.dim() + v.dim());
    }

    #[test]
    fn orbit_stabilizer((i, a) in tower_and_exponents(4)) {
        let t = tower(i);
        let u = span(&t, &a);
        let st = u.stabilizer().unwrap();
        let (k, n) = (u.dim(), t.n());
        prop_assert_eq!(k % st.t, 0);
        prop_assert_eq!(n % st.t, 0);
        prop_assert_eq!(st.orbit_size * (t.subfield_size(st.t) - 1), t.group_order());
        // z^{|Orb|} generates the stabilizer, and no smaller power of z fixes U.
        prop_assert_eq!(&u.shift(&t.z_pow(st.orbit_size)).unwrap(), &u);
        let d = intersection_distribution(&u).unwrap();
        prop_assert!(d.sum_rule_holds());
    }

    #[test]
    fn shift_laws((i, a) in tower_and_exponents(4), x in any::<u64>(), y in any::<u64>()) {
        let t = tower(i);
        let u = span(&t, &a);
        let (alpha, beta) = (nonzero(&t, x), nonzero(&t, y));
        let ab = t.mul(&alpha, &beta);
        prop_assert_eq!(u.shift(&ab).unwrap(), u.shift(&beta).unwrap().shift(&alpha).unwrap());
        prop_assert_eq!(&u.shift(&alpha).unwrap().shift(&t.inv(&alpha).unwrap()).unwrap(), &u);
        prop_assert_eq!(u.shift(&alpha).unwrap().dim(), u.dim());
        // dim(U ∩ αU) = dim(βU ∩ αβU).
        let bu = u.shift(&beta).unwrap();
        prop_assert_eq!(u.intersection_dim(&u.shift(&alpha).unwrap()).unwrap(), bu.intersection_dim(&bu.shift(&alpha).unwrap()).unwrap());
    }

    #[test]
    fn trace_dual_laws((i, a) in tower_and_exponents(4), x in any::<u64>()) {
        let t = tower(i);
        let u = span(&t, &a);
        let dual = trace_dual(&u);
        prop_assert_eq!(dual.dim() + u.dim(), t.n());
        prop_assert_eq!(&trace_dual(&dual), &u);
        // (αU)^⊥ = α^{-1} U^⊥.
        let alpha = nonzero(&t, x);
        prop_assert_eq!(trace_dual(&u.shift(&alpha).unwrap()), dual.shift(&t.inv(&alpha).unwrap()).unwrap());
    }

    #[test]
    fn dsl_round_trip((i, a) in tower_and_exponents(4)) {
        let t = tower(i);
        let u = span(&t, &a);
        prop_assert_eq!(&parse_subspace(&u.to_dsl(), &t).unwrap(), &u);
        for e in u.basis_elements() {
            prop_assert_eq!(parse_element(&format_element(&e), &t).unwrap(), e);
        }
        let exps: Vec<String> = a.iter().map(|e| format!("z^{e}")).collect();
        prop_assert_eq!(&parse_subspace(&format!("span({})", exps.join(", ")), &t).unwrap(), &u);
    }
}
