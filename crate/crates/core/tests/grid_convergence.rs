use fracvar::validation::{decreases_monotonically, grid_convergence, GRID_REFINEMENTS, GRID_SUITE_SIZE, GRID_TOL, ROUNDOFF_FLOOR};

#[test]
fn grid_operators_converge_monotonically() {
    let table = grid_convergence(&GRID_REFINEMENTS).unwrap();
    assert_eq!(table.len(), GRID_SUITE_SIZE);
    let nontrivial = table.iter().filter(|(_, e)| e[0] > ROUNDOFF_FLOOR).count();
    assert!(nontrivial >= GRID_SUITE_SIZE / 2, "only {nontrivial} functions with a nonzero error");
    for (i, (op, errors)) in table.iter().enumerate() {
        assert!(
            decreases_monotonically(errors),
            "function {i} ({}): errors not decreasing {errors:?}",
            op.name()
        );
        assert!(*errors.last().unwrap() <= GRID_TOL, "function {i} ({}): {errors:?}", op.name());
    }
}
