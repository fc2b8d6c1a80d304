use serde_json::Value;
use tsfem_web::{omega_hat_json, solve_1d_json, solve_2d_json};

#[test]
fn one_dimensional_solve_returns_nodes_and_exact_curve() {
    let v: Value = serde_json::from_str(&solve_1d_json("asu", 5.0, 0.1, 20).unwrap()).unwrap();
    assert_eq!(v["nodes"]["x"].as_array().unwrap().len(), 21);
    assert_eq!(v["exact"]["re"].as_array().unwrap().len(), 801);
    assert!(v["converged"].as_bool().unwrap());
    let g: Value = serde_json::from_str(&solve_1d_json("galerkin", 5.0, 0.1, 20).unwrap()).unwrap();
    assert!(v["rel_err_sq"].as_f64().unwrap() < g["rel_err_sq"].as_f64().unwrap());
}

#[test]
fn omega_hat_curves_agree_at_small_beta() {
    let v: Value = serde_json::from_str(&omega_hat_json(0.01, 30).unwrap()).unwrap();
    let er = v["exact_re"].as_array().unwrap();
    let ar = v["approx_re"].as_array().unwrap();
    assert_eq!(er.len(), 30);
    for (e, a) in er.iter().zip(ar) {
        assert!((e.as_f64().unwrap() - a.as_f64().unwrap()).abs() < 1e-2);
    }
}

#[test]
fn square_solve_returns_a_full_grid() {
    let v: Value = serde_json::from_str(&solve_2d_json("supg", 39.8, 31.6, 8).unwrap()).unwrap();
    assert_eq!(v["re"].as_array().unwrap().len(), 81);
    assert!(v["converged"].as_bool().unwrap());
}

#[test]
fn bad_inputs_are_rejected() {
    assert!(solve_1d_json("nope", 1.0, 1.0, 10).is_err());
    assert!(solve_1d_json("supg", 1.0, 1.0, 1).is_err());
    assert!(solve_2d_json("rd-supg", 10.0, 10.0, 8).is_err());
    assert!(omega_hat_json(0.1, 1).is_err());
}
