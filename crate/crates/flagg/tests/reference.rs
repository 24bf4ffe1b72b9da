//! Byte-exact comparisons against independently computed reference values
//! stored in `tests/data/reference.json` (produced with a separate
//! computer-algebra system; the canonical JSON rendering is shared).

use flagg::perm::{grothendieck_perm, is_vexillary, Permutation};
use flagg::poly::{divided_difference, linear_factor, Polynomial, TruncationOrder};
use flagg::render::to_json;
use flagg::series::{gf_coefficient, jt_entry};
use flagg::tableaux::{
    enumerate_tableaux, flagged_schur, grothendieck_tableau, max_entry_count, tableau_weight,
    FlaggedPartition, SetValuedTableau,
};

fn reference() -> serde_json::Map<String, serde_json::Value> {
    let raw = include_str!("data/reference.json");
    serde_json::from_str::<serde_json::Value>(raw)
        .expect("reference data parses")
        .as_object()
        .expect("reference data is an object")
        .clone()
}

fn expect_str<'a>(refs: &'a serde_json::Map<String, serde_json::Value>, key: &str) -> &'a str {
    refs.get(key)
        .and_then(|v| v.as_str())
        .unwrap_or_else(|| panic!("missing string reference {key}"))
}

fn expect_u64(refs: &serde_json::Map<String, serde_json::Value>, key: &str) -> u64 {
    refs.get(key)
        .and_then(|v| v.as_u64())
        .unwrap_or_else(|| panic!("missing integer reference {key}"))
}

fn fp(lambda: &[u32], flag: &[u32]) -> FlaggedPartition {
    FlaggedPartition::new(lambda.to_vec(), flag.to_vec()).unwrap()
}

fn check(refs: &serde_json::Map<String, serde_json::Value>, key: &str, got: &Polynomial) {
    assert_eq!(to_json(got), expect_str(refs, key), "key {key}");
}

#[test]
fn divided_differences_match_the_reference() {
    let refs = reference();
    let x1 = Polynomial::var_x(1);
    check(
        &refs,
        "dd1_of_x1sq",
        &divided_difference(&(&x1 * &x1), 1).unwrap(),
    );
    check(
        &refs,
        "dd1_of_const7",
        &divided_difference(&Polynomial::constant(7), 1).unwrap(),
    );
    let prod = &linear_factor(1, 1).unwrap() * &linear_factor(1, 2).unwrap();
    check(
        &refs,
        "dd1_of_two_linear_factors",
        &divided_difference(&prod, 1).unwrap(),
    );
}

#[test]
fn tableau_sums_match_the_reference() {
    let refs = reference();
    for (key, lam, flag) in [
        ("g_1_1", vec![1u32], vec![1u32]),
        ("g_1_2", vec![1], vec![2]),
        ("g_21_12", vec![2, 1], vec![1, 2]),
        ("g_11_12", vec![1, 1], vec![1, 2]),
        ("g_21_23", vec![2, 1], vec![2, 3]),
        ("g_31_24", vec![3, 1], vec![2, 4]),
    ] {
        let shape = FlaggedPartition::new(lam, flag).unwrap();
        check(&refs, key, &grothendieck_tableau(&shape).unwrap());
    }
    assert_eq!(
        enumerate_tableaux(&fp(&[3, 1], &[2, 4])).count() as u64,
        expect_u64(&refs, "count_31_24")
    );
    assert_eq!(
        enumerate_tableaux(&fp(&[3, 1], &[2, 3])).count() as u64,
        expect_u64(&refs, "count_31_23")
    );
    assert_eq!(
        u64::from(max_entry_count(&fp(&[2, 2], &[2, 3]))),
        expect_u64(&refs, "max_entry_22_23")
    );
}

/// Finds the tableau of the given shape whose cells hold exactly `cells`
/// (row-major, 1-based rows/columns).
fn find_tableau(
    shape: &FlaggedPartition,
    cells: &[(usize, usize, &[u32])],
) -> Option<SetValuedTableau> {
    enumerate_tableaux(shape).find(|t| cells.iter().all(|&(i, j, want)| t.cell(i, j) == want))
}

#[test]
fn displayed_tableau_weight_matches_the_reference() {
    let refs = reference();
    let shape = fp(&[3, 1], &[2, 4]);
    let first = find_tableau(
        &shape,
        &[
            (1, 1, &[1]),
            (1, 2, &[1]),
            (1, 3, &[1, 2]),
            (2, 1, &[2, 3]),
        ],
    )
    .expect("displayed tableau is enumerated");
    check(
        &refs,
        "weight_31_24_displayed_first",
        &tableau_weight(&first).unwrap(),
    );
}

#[test]
fn flagged_schur_matches_the_reference() {
    let refs = reference();
    check(&refs, "schur_21_13", &flagged_schur(&fp(&[2, 1], &[1, 3])));
    check(&refs, "schur_31_24", &flagged_schur(&fp(&[3, 1], &[2, 4])));
}

#[test]
fn series_coefficients_match_the_reference() {
    let refs = reference();
    check(
        &refs,
        "gf_p1_q2_m2",
        &gf_coefficient(1, 2, 2, TruncationOrder::new(10)).unwrap(),
    );
    check(
        &refs,
        "gf_p0_q1_m1",
        &gf_coefficient(0, 1, 1, TruncationOrder::new(6)).unwrap(),
    );
    check(
        &refs,
        "gf_p2_q1_mneg2",
        &gf_coefficient(2, 1, -2, TruncationOrder::new(6)).unwrap(),
    );
    check(
        &refs,
        "entry_l1_f2_i2_j1",
        &jt_entry(1, 2, 2, 1, TruncationOrder::new(6)).unwrap(),
    );
}

/// All permutations of `{1..n}` in lexicographic one-line order.
fn all_permutations(n: u32) -> Vec<Permutation> {
    let mut vals: Vec<u32> = (1..=n).collect();
    let mut out = Vec::new();
    loop {
        out.push(Permutation::new(vals.clone()).unwrap());
        let Some(i) = vals.windows(2).rposition(|p| p[0] < p[1]) else {
            return out;
        };
        let j = vals.iter().rposition(|&v| v > vals[i]).unwrap();
        vals.swap(i, j);
        vals[i + 1..].reverse();
    }
}

#[test]
fn permutation_polynomials_match_the_reference() {
    let refs = reference();
    check(
        &refs,
        "perm_213",
        &grothendieck_perm(&"2,1,3".parse().unwrap()).unwrap(),
    );
    check(
        &refs,
        "perm_1432",
        &grothendieck_perm(&"1,4,3,2".parse().unwrap()).unwrap(),
    );
}

#[test]
fn vexillary_enumeration_matches_the_reference() {
    let refs = reference();
    let expected: Vec<String> = refs
        .get("vexillary_s4")
        .and_then(|v| v.as_array())
        .expect("vexillary_s4 is a list")
        .iter()
        .map(|v| v.as_str().unwrap().to_string())
        .collect();
    let got: Vec<String> = all_permutations(4)
        .into_iter()
        .filter(is_vexillary)
        .map(|w| w.to_string())
        .collect();
    assert_eq!(got, expected);
}
