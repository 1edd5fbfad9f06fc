use proptest::prelude::*;

use quatgraph_core::adjacency::{left_criterion, nu_min};
use quatgraph_core::snf::{determinantal_divisors, smith_diagonal, solution_count};
use quatgraph_core::{
    adjacent_fast, adjacent_left, annihilator_count, classify, is_vertex, kernel_count_brute, left_mul_matrix,
    quat_mul, smith_normal_form, ElementClass, IntMatrix4, Modulus, Quat,
};

fn quat_in(n: u32) -> impl Strategy<Value = Quat> {
    let m = Modulus::new(n).unwrap();
    prop::array::uniform4(0..m.value()).prop_map(move |c| Quat::new(c, m).unwrap())
}

fn quat() -> impl Strategy<Value = Quat> {
    (1u32..=10).prop_flat_map(quat_in)
}

fn quat_triple() -> impl Strategy<Value = (Quat, Quat, Quat)> {
    (1u32..=10).prop_flat_map(|n| (quat_in(n), quat_in(n), quat_in(n)))
}

fn vertex_pair() -> impl Strategy<Value = (Quat, Quat)> {
    (1u32..=8)
        .prop_flat_map(|n| (quat_in(n), quat_in(n)))
        .prop_filter("distinct vertices", |(a, b)| a != b && is_vertex(a) && is_vertex(b))
}

fn matrix(bound: i64) -> impl Strategy<Value = IntMatrix4> {
    prop::array::uniform4(prop::array::uniform4(-bound..=bound)).prop_map(IntMatrix4)
}

fn norm(a: &Quat) -> i128 {
    a.lift().iter().map(|&x| i128::from(x) * i128::from(x)).sum()
}

proptest! {
    #[test]
    fn multiplication_is_associative((a, b, c) in quat_triple()) {
        let ab_c = quat_mul(&quat_mul(&a, &b).unwrap(), &c).unwrap();
        let a_bc = quat_mul(&a, &quat_mul(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(ab_c, a_bc);
    }

    #[test]
    fn multiplication_distributes((a, b, c) in quat_triple()) {
        let left = quat_mul(&a, &b.add(&c).unwrap()).unwrap();
        let right = quat_mul(&a, &b).unwrap().add(&quat_mul(&a, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        let left = quat_mul(&b.add(&c).unwrap(), &a).unwrap();
        let right = quat_mul(&b, &a).unwrap().add(&quat_mul(&c, &a).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn one_is_the_identity(a in quat()) {
        let one = Quat::one(a.modulus());
        prop_assert_eq!(quat_mul(&one, &a).unwrap(), a);
        prop_assert_eq!(quat_mul(&a, &one).unwrap(), a);
    }

    #[test]
    fn left_matrix_represents_multiplication((a, b, _) in quat_triple()) {
        let image = left_mul_matrix(&a).apply(b.lift());
        prop_assert_eq!(Quat::from_ints(image, a.modulus()), quat_mul(&a, &b).unwrap());
    }

    #[test]
    fn left_matrix_determinant_is_squared_norm(a in quat()) {
        prop_assert_eq!(left_mul_matrix(&a).determinant(), norm(&a) * norm(&a));
    }

    #[test]
    fn unit_iff_odd_norm(a in quat()) {
        let odd = norm(&a) % 2 == 1;
        prop_assert_eq!(classify(&a) == ElementClass::Unit, odd);
    }

    #[test]
    fn text_form_round_trips(a in quat()) {
        prop_assert_eq!(Quat::parse(&a.to_string(), a.modulus()).unwrap(), a);
        prop_assert_eq!(Quat::from_code(a.code(), a.modulus()), a);
    }

    #[test]
    fn snf_recomposes(mat in matrix(300)) {
        let d = smith_normal_form(&mat);
        prop_assert!(d.recomposes(&mat));
        prop_assert!(d.diagonal.is_divisibility_chain());
        prop_assert_eq!(d.diagonal.product(), mat.determinant().unsigned_abs());
        prop_assert_eq!(d.diagonal, determinantal_divisors(&mat));
        prop_assert_eq!(smith_diagonal(&mat), d.diagonal);
    }

    #[test]
    fn snf_of_rank_deficient(mat in matrix(300), a in -3i64..=3, b in -3i64..=3) {
        let mut rows = mat.0;
        rows[3] = std::array::from_fn(|j| a * rows[0][j] + b * rows[1][j]);
        let mat = IntMatrix4(rows);
        let d = smith_normal_form(&mat);
        prop_assert!(d.recomposes(&mat));
        prop_assert_eq!(d.diagonal.0[3], 0);
        prop_assert_eq!(d.diagonal, determinantal_divisors(&mat));
    }

    #[test]
    fn solution_count_ignores_the_lift(a in quat(), shifts in prop::array::uniform4(-3i64..=3)) {
        let m = a.modulus();
        let shifted: [i64; 4] = std::array::from_fn(|i| a.lift()[i] + shifts[i] * i64::from(m.value()));
        let [s1, s2, s3, s4] = shifted;
        let mat = IntMatrix4([[s1, -s2, -s3, -s4], [s2, s1, -s4, s3], [s3, s4, s1, -s2], [s4, -s3, s2, s1]]);
        let count = solution_count(&smith_normal_form(&mat).diagonal, m.exponent());
        prop_assert_eq!(count, annihilator_count(&a));
    }

    #[test]
    fn valuation_test_matches_multiplication((a, b) in vertex_pair()) {
        let left = adjacent_left(&a, &b).unwrap();
        prop_assert_eq!(adjacent_fast(&a, &b).unwrap(), left);
        prop_assert_eq!(left_criterion(&a, &b), left);
        let v = nu_min(&a, &b).unwrap();
        prop_assert_eq!(v.total() < a.modulus().exponent(), left);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn annihilator_count_matches_enumeration(a in (1u32..=3).prop_flat_map(quat_in)) {
        prop_assert_eq!(annihilator_count(&a), kernel_count_brute(&a).unwrap());
    }
}
