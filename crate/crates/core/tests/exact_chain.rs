mod common;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};
use proptest::prelude::*;
use surgery_core::fixtures::{self, Fixture};
use surgery_core::snf::{invariant_factors, smith_normal_form};
use surgery_core::{ChainMap, HomologyGroup, HomologySummary, IntChainComplex, IntMatrix, SparseMatrix};

fn summary(groups: &[(i64, usize, &[i64])]) -> HomologySummary {
    HomologySummary::from_groups(groups.iter().map(|&(r, b, t)| (r, HomologyGroup::with_torsion(b, t))))
}

/// Integral homology of the bundled fixtures, frozen from the rational and
/// mod-p oracles below (torsion located where the two disagree).
fn expected(fx: &Fixture) -> HomologySummary {
    match fx.name {
        "sphere_0" => summary(&[(0, 2, &[])]),
        "sphere_1" | "sphere_2" | "sphere_3" | "sphere_4" => {
            summary(&[(0, 1, &[]), (fx.dim as i64, 1, &[])])
        }
        "t2_7" => summary(&[(0, 1, &[]), (1, 2, &[]), (2, 1, &[])]),
        "rp2_6" => summary(&[(0, 1, &[]), (1, 0, &[2])]),
        "cp2_9" => summary(&[(0, 1, &[]), (2, 1, &[]), (4, 1, &[])]),
        "suspension_t2_7" => summary(&[(0, 1, &[]), (2, 2, &[]), (3, 1, &[])]),
        "disk_2" => summary(&[(0, 1, &[])]),
        other => panic!("no frozen homology for {other}"),
    }
}

#[test]
fn fixture_homology_matches_frozen_values() {
    for fx in fixtures::ALL {
        let c = fx.complex().chain_complex();
        assert_eq!(c.homology().unwrap(), expected(&fx), "{}", fx.name);
    }
}

#[test]
fn fixture_betti_numbers_match_field_oracles() {
    for fx in fixtures::ALL {
        let c = fx.complex().chain_complex();
        let h = c.homology().unwrap();
        for (r, b) in common::betti(&c, None) {
            assert_eq!(h.betti(r), b, "{} rational degree {r}", fx.name);
        }
        for p in [2, 3] {
            // Universal coefficients: b_r(F_p) = b_r + t_r(p) + t_{r-1}(p).
            let tp = |r: i64| h.torsion(r).iter().filter(|t| t.is_multiple_of(&BigInt::from(p))).count();
            for (r, b) in common::betti(&c, Some(p)) {
                assert_eq!(h.betti(r) + tp(r) + tp(r - 1), b, "{} mod {p} degree {r}", fx.name);
            }
        }
    }
}

#[test]
fn boundary_matrices_match_direct_construction() {
    for fx in [fixtures::T2_7, fixtures::RP2_6, fixtures::SPHERE_3] {
        let x = fx.complex();
        let c = x.chain_complex();
        for d in 1..=fx.dim {
            let (rows, cols, e) = common::boundary_entries(&x, d);
            let direct = SparseMatrix::from_triplets(rows, cols, e.into_iter().map(|(i, j, v)| (i, j, BigInt::from(v))));
            assert_eq!(c.differential(d as i64), direct, "{} d{d}", fx.name);
        }
    }
}

#[test]
fn euler_characteristic_agrees_with_homology() {
    let chi = [("sphere_0", 2), ("sphere_1", 0), ("sphere_2", 2), ("sphere_3", 0), ("sphere_4", 2), ("t2_7", 0),
        ("rp2_6", 1), ("cp2_9", 3), ("suspension_t2_7", 2), ("disk_2", 1)];
    for (name, chi) in chi {
        let x = fixtures::by_name(name).unwrap().complex();
        let c = x.chain_complex();
        assert_eq!(x.euler_characteristic(), chi, "{name}");
        assert_eq!(c.euler_characteristic(), chi, "{name}");
        assert_eq!(c.homology().unwrap().euler_characteristic(), chi, "{name}");
    }
}

#[test]
fn rp2_cone_of_two_is_mod_two_homology() {
    let c = fixtures::RP2_6.complex().chain_complex();
    let cone = ChainMap::identity(&c).scale(2).mapping_cone();
    assert_eq!(cone.homology().unwrap(), summary(&[(0, 0, &[2]), (1, 0, &[2]), (2, 0, &[2])]));
}

#[test]
fn dualize_gives_cohomology_in_negative_degrees() {
    let c = fixtures::RP2_6.complex().chain_complex();
    // H^0 = Z, H^1 = 0, H^2 = Z/2.
    assert_eq!(c.dualize(0).homology().unwrap(), summary(&[(0, 1, &[]), (-2, 0, &[2])]));
    assert_eq!(c.dualize(2).homology().unwrap(), summary(&[(2, 1, &[]), (0, 0, &[2])]));
}

fn dense(rows: usize, cols: usize, v: &[i64]) -> IntMatrix {
    IntMatrix::from_fn(rows, cols, |i, j| BigInt::from(v[i * cols + j]))
}

fn matrix_strategy() -> impl Strategy<Value = IntMatrix> {
    (1usize..7, 1usize..7).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop_oneof![3 => Just(0i64), 5 => -5i64..=5], r * c)
            .prop_map(move |v| dense(r, c, &v))
    })
}

/// Cyclic orders to the multiset of prime-power factors.
fn primary_parts(orders: impl IntoIterator<Item = BigInt>) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    for o in orders {
        let mut n = o.to_u64().unwrap();
        let mut p = 2;
        while n > 1 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            if e > 0 {
                out.push((p, e));
            }
            p += 1;
        }
    }
    out.sort_unstable();
    out
}

/// `H_r(cone(k·id)) = H_r/k ⊕ ker(k | H_{r-1})`, in primary form per degree.
fn universal_coefficients(h: &HomologySummary, k: i64, degrees: impl Iterator<Item = i64>) -> BTreeMap<i64, Vec<(u64, u32)>> {
    let k = BigInt::from(k);
    degrees
        .map(|r| {
            let mut orders = vec![k.clone(); h.betti(r)];
            orders.extend(h.torsion(r).iter().map(|t| t.gcd(&k)));
            orders.extend(h.torsion(r - 1).iter().map(|t| t.gcd(&k)));
            (r, primary_parts(orders.into_iter().filter(|o| !o.is_one())))
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn smith_form_is_a_valid_decomposition(a in matrix_strategy()) {
        let s = smith_normal_form(&a);
        prop_assert_eq!(s.u.mul(&a).mul(&s.v), s.d.clone());
        prop_assert!(s.u.is_unimodular() && s.v.is_unimodular());
        prop_assert_eq!(s.u.mul(&s.u_inv), IntMatrix::identity(a.rows()));
        prop_assert_eq!(s.v.mul(&s.v_inv), IntMatrix::identity(a.cols()));
        prop_assert!(s.d.is_diagonal());
        let diag = s.diagonal();
        prop_assert!(diag.iter().all(|x| x.is_positive()));
        prop_assert!(diag.windows(2).all(|w| w[1].is_multiple_of(&w[0])));
        let entries: Vec<_> = (0..a.rows())
            .flat_map(|i| (0..a.cols()).map(move |j| (i, j)))
            .map(|(i, j)| (i, j, a.get(i, j).to_i64().unwrap()))
            .collect();
        prop_assert_eq!(diag.len(), common::rank_q(a.rows(), a.cols(), &entries));
        let sparse = invariant_factors(&a.to_sparse());
        prop_assert_eq!(sparse.rank, diag.len());
        prop_assert_eq!(sparse.torsion, diag.into_iter().filter(|x| !x.is_one()).collect::<Vec<_>>());
    }
}

/// A unimodular matrix from elementary operations, with its inverse.
fn elementary(n: usize, ops: &[(usize, usize, i64)]) -> (SparseMatrix, SparseMatrix) {
    let mut p = IntMatrix::identity(n);
    let mut q = IntMatrix::identity(n);
    for &(i, j, k) in ops {
        let (i, j) = (i % n, j % n);
        if i == j {
            continue;
        }
        // P ← P·E where E adds k·(column i) to column j; Q ← E⁻¹·Q.
        for r in 0..n {
            let v = p.get(r, j) + p.get(r, i) * k;
            p.set(r, j, v);
        }
        for c in 0..n {
            let v = q.get(i, c) - q.get(j, c) * k;
            q.set(i, c, v);
        }
    }
    (p.to_sparse(), q.to_sparse())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn homology_is_invariant_under_change_of_basis(
        which in 0usize..4,
        ops in prop::collection::vec((0usize..64, 0usize..64, -3i64..=3), 1..20),
    ) {
        let fx = [fixtures::SPHERE_2, fixtures::T2_7, fixtures::RP2_6, fixtures::SUSPENDED_T2_7][which];
        let c = fx.complex().chain_complex();
        let r = 1;
        let (p, q) = elementary(c.rank(r), &ops);
        let diffs: Vec<SparseMatrix> = c
            .degrees()
            .map(|d| match d - r {
                0 => c.differential(d).mul(&p),
                1 => q.mul(&c.differential(d)),
                _ => c.differential(d),
            })
            .collect();
        let ranks = c.degrees().map(|d| c.rank(d)).collect();
        let changed = IntChainComplex::new(c.bottom(), ranks, diffs).unwrap();
        prop_assert_eq!(changed.homology().unwrap(), c.homology().unwrap());
    }

    #[test]
    fn cone_of_multiplication_satisfies_universal_coefficients(which in 0usize..10, k in 2i64..7) {
        let fx = fixtures::ALL[which];
        let c = fx.complex().chain_complex();
        let h = c.homology().unwrap();
        let cone = ChainMap::identity(&c).scale(k).mapping_cone();
        let ch = cone.homology().unwrap();
        prop_assert_eq!(ch.betti(0), 0);
        let got: BTreeMap<i64, Vec<(u64, u32)>> =
            cone.degrees().map(|r| (r, primary_parts(ch.torsion(r)))).collect();
        prop_assert_eq!(got, universal_coefficients(&h, k, cone.degrees()));
        prop_assert_eq!(cone.euler_characteristic(), 0);
    }
}

#[test]
fn identity_cone_is_contractible_and_zero_cone_splits() {
    for fx in fixtures::ALL {
        let c = fx.complex().chain_complex();
        assert!(ChainMap::identity(&c).mapping_cone().is_contractible().unwrap(), "{}", fx.name);
        let z = ChainMap::zero(&c, &c).mapping_cone().homology().unwrap();
        let h = c.homology().unwrap();
        assert_eq!(z, h.direct_sum(&h.shifted(1)), "{}", fx.name);
    }
}

#[test]
fn shift_moves_homology() {
    let c = fixtures::T2_7.complex().chain_complex();
    let h = c.homology().unwrap();
    assert_eq!(c.shift(2).homology().unwrap(), h.shifted(-2));
}
