use std::f64::consts::PI;
use std::ptr;

use structeig_ffi::*;

fn last_error() -> String {
    let len = unsafe { se_last_error_message(ptr::null_mut(), 0) };
    let mut buf = vec![0 as std::ffi::c_char; len + 1];
    unsafe { se_last_error_message(buf.as_mut_ptr(), buf.len()) };
    let bytes: Vec<u8> = buf[..len].iter().map(|&c| c as u8).collect();
    String::from_utf8(bytes).unwrap()
}

#[test]
fn analytic_matches_numeric_through_handles() {
    let alpha = [2.0, -1.0];
    let beta = [1.0];
    let n = 7;
    let mut a = ptr::null_mut();
    let mut b = ptr::null_mut();
    let mut exact = ptr::null_mut();
    let mut numeric = ptr::null_mut();
    unsafe {
        let st = se_pencil_toeplitz_hankel(
            1, n, alpha.as_ptr(), ptr::null(), 2, beta.as_ptr(), ptr::null(), 1, &mut a, &mut b,
        );
        assert_eq!(st, SeStatus::Ok);
        assert_eq!((se_matrix_rows(a), se_matrix_cols(a)), (n, n));
        assert_eq!(se_gevp_analytic(1, n, alpha.as_ptr(), ptr::null(), 2, beta.as_ptr(), ptr::null(), 1, &mut exact), SeStatus::Ok);
        assert_eq!(se_gevp_numeric(a, b, &mut numeric), SeStatus::Ok);
        assert_eq!(se_solution_len(exact), n);
        assert_eq!(se_solution_dim(exact), n);

        let mut analytic_values = Vec::new();
        for i in 0..n {
            let (mut re, mut im, mut mode) = (0.0, 0.0, 0usize);
            assert_eq!(se_solution_value(exact, i, &mut re, &mut im, &mut mode), SeStatus::Ok);
            let h = 1.0 / (n as f64 + 1.0);
            assert!((re - (2.0 - 2.0 * (mode as f64 * PI * h).cos())).abs() < 1e-13);
            assert_eq!(im, 0.0);
            analytic_values.push(re);
        }
        let mut numeric_values: Vec<f64> = (0..se_solution_len(numeric))
            .map(|i| {
                let (mut re, mut im) = (0.0, 0.0);
                se_solution_value(numeric, i, &mut re, &mut im, ptr::null_mut());
                re
            })
            .collect();
        analytic_values.sort_by(f64::total_cmp);
        numeric_values.sort_by(f64::total_cmp);
        for (x, y) in analytic_values.iter().zip(&numeric_values) {
            assert!((x - y).abs() < 1e-10);
        }

        let mut vr = vec![0.0; n];
        let mut vi = vec![0.0; n];
        assert_eq!(se_solution_vector(exact, 0, vr.as_mut_ptr(), vi.as_mut_ptr(), n), SeStatus::Ok);
        assert!(vr.iter().any(|&v| v != 0.0));
        assert_eq!(se_solution_vector(exact, 0, vr.as_mut_ptr(), vi.as_mut_ptr(), n - 1), SeStatus::InvalidArgument);

        se_solution_free(exact);
        se_solution_free(numeric);
        se_matrix_free(a);
        se_matrix_free(b);
    }
}

#[test]
fn fem_pencil_and_isolated_eigenvalue() {
    let (mut k, mut m, mut sol) = (ptr::null_mut(), ptr::null_mut(), ptr::null_mut());
    unsafe {
        assert_eq!(se_pencil_fem(2, 4, &mut k, &mut m), SeStatus::Ok);
        assert_eq!(se_matrix_rows(k), 7);
        let (mut re, mut im) = (0.0, 0.0);
        assert_eq!(se_matrix_get(k, 0, 0, &mut re, &mut im), SeStatus::Ok);
        assert_eq!(se_matrix_get(k, 7, 0, &mut re, &mut im), SeStatus::OutOfRange);
        assert_eq!(se_fem_analytic(2, 4, &mut sol), SeStatus::Ok);
        let found = (0..se_solution_len(sol)).any(|i| {
            let (mut re, mut im) = (0.0, 0.0);
            se_solution_value(sol, i, &mut re, &mut im, ptr::null_mut());
            re == 160.0
        });
        assert!(found);
        se_solution_free(sol);
        se_matrix_free(k);
        se_matrix_free(m);
    }
}

#[test]
fn errors_map_to_status_codes_with_messages() {
    let alpha = [1.0, 1.0, 1.0, 1.0];
    let beta = [1.0];
    let (mut a, mut b) = (ptr::null_mut(), ptr::null_mut());
    unsafe {
        let st = se_pencil_toeplitz_hankel(
            1, 4, alpha.as_ptr(), ptr::null(), 4, beta.as_ptr(), ptr::null(), 1, &mut a, &mut b,
        );
        assert_eq!(st, SeStatus::InvalidArgument);
        assert!(last_error().contains("overlap"), "{}", last_error());
        assert!(a.is_null());

        let st = se_pencil_toeplitz_hankel(9, 4, alpha.as_ptr(), ptr::null(), 2, beta.as_ptr(), ptr::null(), 1, &mut a, &mut b);
        assert_eq!(st, SeStatus::InvalidArgument);

        assert_eq!(se_pencil_fem(2, 4, ptr::null_mut(), &mut b), SeStatus::NullPointer);
        assert!(last_error().contains("out_k"));

        let zero = [0.0];
        let mut sol = ptr::null_mut();
        let st = se_gevp_analytic(1, 3, alpha.as_ptr(), ptr::null(), 2, zero.as_ptr(), ptr::null(), 1, &mut sol);
        assert_eq!(st, SeStatus::Singular);
        assert_eq!(se_matrix_rows(ptr::null()), 0);
        se_matrix_free(ptr::null_mut());
        se_solution_free(ptr::null_mut());
    }
}

#[test]
fn identities_through_the_abi() {
    let data = [2.0, 1.0, 0.0, 1.0, 3.0, 1.0, 0.0, 1.0, 4.0];
    let mut a = ptr::null_mut();
    let (mut lhs, mut rhs) = (0.0, 0.0);
    unsafe {
        assert_eq!(se_matrix_from_rows(3, 3, data.as_ptr(), ptr::null(), &mut a), SeStatus::Ok);
        assert_eq!(se_eve_identity(a, 2, 1, &mut lhs, &mut rhs), SeStatus::Ok);
        assert!((lhs - rhs).abs() < 1e-12 * rhs.abs().max(1.0));
        assert_eq!(se_eve_identity(a, 4, 1, &mut lhs, &mut rhs), SeStatus::OutOfRange);
        se_matrix_free(a);

        assert_eq!(se_trig_identity(2, 1, 1, &mut lhs, &mut rhs), SeStatus::Ok);
        assert!((lhs - 0.5).abs() < 1e-12 && (rhs - 0.5).abs() < 1e-12);
        assert_eq!(se_trig_identity(9, 3, 5, &mut lhs, &mut rhs), SeStatus::Ok);
        assert!((lhs - rhs).abs() < 1e-12);
    }
}

#[test]
fn header_declares_every_export() {
    let header = include_str!("../include/structeig.h");
    let source = include_str!("../src/lib.rs");
    let exports: Vec<&str> = source
        .split("extern \"C\" fn ")
        .skip(1)
        .map(|s| s.split('(').next().unwrap())
        .collect();
    assert!(exports.len() >= 15);
    for name in exports {
        assert!(header.contains(&format!("{name}(")), "{name} missing from header");
    }
    assert!(header.contains("typedef struct SeMatrix SeMatrix;"));
}

#[test]
fn header_compiles_as_c() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR"));
    let status = std::process::Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(dir.join("include"))
        .arg(dir.join("examples/smoke.c"))
        .status();
    match status {
        Ok(s) => assert!(s.success()),
        Err(e) => eprintln!("skipping: no C compiler ({e})"),
    }
}
