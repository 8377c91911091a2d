use std::process::Command;

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_lpreserve"))
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .args(args)
        .output()
        .expect("binary runs");
    let text = String::from_utf8(out.stdout).unwrap() + &String::from_utf8(out.stderr).unwrap();
    (out.status.code().expect("exited normally"), text)
}

fn verdict(text: &str) -> &str {
    text.lines().rev().find_map(|l| l.strip_prefix("VERDICT: ")).unwrap_or("")
}

#[test]
fn lp_example() {
    let (code, text) = run(&["lp", "--field", "GF(5)", "--nvars", "2", "--poly", "x1*x2"]);
    assert_eq!(code, 0, "{text}");
    assert!(text.contains("dim(L_P) = 2"));
    assert_eq!(verdict(&text), "verified");
}

#[test]
fn radical_of_det43() {
    let (code, text) = run(&["radical", "--field", "GF(5)", "--nvars", "12", "--poly", "@data/det43.poly"]);
    assert_eq!(code, 0, "{text}");
    assert!(text.contains("rad dim = 3, dim-condition: holds"), "{text}");
    assert!(text.contains("dim(L_P) = 9"));
}

#[test]
fn generated_poly_matches_data_file() {
    let (code, text) = run(&["cullis", "poly", "--field", "GF(5)", "--n", "4", "--k", "3"]);
    assert_eq!(code, 0);
    let file = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/data/det43.poly")).unwrap();
    assert_eq!(text.lines().next().unwrap(), file.trim());
}

#[test]
fn inhomogeneous_pair_warns() {
    let args = [
        "verify-pair", "--field", "GF(5)", "--nvars", "2", "--poly", "x1*(x2 + 1)",
        "--phi", "@data/inhomogeneous_phi.map", "--psi", "@data/inhomogeneous_psi.map", "--mode", "exhaustive",
    ];
    let (code, text) = run(&args);
    assert_eq!(code, 0, "{text}");
    assert_eq!(verdict(&text), "holds");
    assert!(text.contains("warning: P is not homogeneous"));
    assert!(text.contains("triples evaluated: 3125"));
    let mut extract = args;
    extract[0] = "extract-trad";
    let (code, text) = run(&extract);
    assert_eq!((code, verdict(&text)), (1, "refused"), "{text}");
    assert!(text.contains("failed hypothesis: P must be homogeneous"));
}

#[test]
fn det43_pair_and_extraction() {
    let base = [
        "--field", "GF(5)", "--nvars", "12", "--poly", "@data/det43.poly",
        "--phi", "@data/phi43.map", "--psi", "@data/psi43.map",
    ];
    let mut args = vec!["verify-pair"];
    args.extend(base);
    args.extend(["--mode", "symbolic"]);
    let (code, text) = run(&args);
    assert_eq!((code, verdict(&text)), (0, "holds"), "{text}");
    let mut args = vec!["extract-trad"];
    args.extend(base);
    let (code, text) = run(&args);
    assert_eq!((code, verdict(&text)), (0, "holds"), "{text}");
    assert!(text.contains("T_rad unique: yes"));
    args.extend(["--mode", "exhaustive"]);
    let (code, text) = run(&args);
    assert_eq!((code, verdict(&text)), (3, "undecidable"), "{text}");
}

#[test]
fn failing_and_sampled_pairs() {
    let phi = "form: polymap\ncoordinate 1: x1\ncoordinate 2: x2 + x1^2\n";
    let (code, text) = run(&["verify-pair", "--field", "GF(5)", "--nvars", "2", "--poly", "x1*x2", "--phi", phi]);
    assert_eq!((code, verdict(&text)), (1, "fails"), "{text}");
    assert!(text.contains("witness: x = "));
    let lin = "form: linear\nmatrix: 2,0;0,3\n";
    let sampled = ["verify-pair", "--field", "GF(5)", "--nvars", "2", "--poly", "x1*x2", "--phi", lin, "--mode", "sampled"];
    let (code, text) = run(&sampled);
    assert_eq!((code, verdict(&text)), (3, "sufficient-only-pass"), "{text}");
}

#[test]
fn cullis_commands() {
    let (code, text) = run(&["cullis", "det", "--field", "GF(7)", "--matrix", "1,2,3;4,5,6;7,8,9;1,0,1"]);
    assert_eq!(code, 0, "{text}");
    assert!(text.contains("det_{4,3} = "));
    let id4 = "1,0,0,0;0,1,0,0;0,0,1,0;0,0,0,1";
    let (code, _) = run(&["cullis", "absign", "--field", "GF(5)", "--A", id4, "--B", "1,0,0;0,1,0;0,0,1"]);
    assert_eq!(code, 0);
    let (code, _) = run(&["cullis", "absign", "--field", "GF(5)", "--A", id4, "--B", "2,0,0;0,1,0;0,0,1"]);
    assert_eq!(code, 1);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["lp", "--field", "GF(6)", "--nvars", "1", "--poly", "x1"],
        vec!["lp", "--field", "GF(5)", "--nvars", "2", "--poly", "x1 x2"],
        vec!["lp", "--field", "GF(5)", "--nvars", "1", "--poly", "x3"],
        vec!["lp", "--field", "GF(5)", "--nvars", "1", "--poly", "@no/such/file"],
        vec!["lp", "--field", "GF(5)", "--nvars", "1", "--poly", "x1", "--cap", "0"],
        vec!["verify-pair", "--field", "GF(5)", "--nvars", "2", "--poly", "x1", "--phi", "form: linear\nmatrix: 1\n"],
        vec!["cullis", "det", "--field", "GF(5)", "--matrix", "1,2,3"],
        vec!["radical"],
    ] {
        let (code, text) = run(&args);
        assert_eq!(code, 2, "{args:?}: {text}");
    }
}

#[test]
fn selftest_and_fault_injection() {
    let (code, text) = run(&["selftest"]);
    assert_eq!((code, verdict(&text)), (0, "holds"), "{text}");
    assert_eq!(text.lines().filter(|l| l.starts_with("criterion")).count(), 12);
    let (code, text) = run(&["selftest", "--inject-fault", "sign"]);
    assert_eq!((code, verdict(&text)), (1, "fails"), "{text}");
}

#[test]
fn reports_are_deterministic() {
    let args = ["radical", "--field", "QQ", "--nvars", "3", "--poly", "(x1 - 2*x2)^3 + x3^2*(x1 - 2*x2)"];
    let (c1, a) = run(&args);
    let (c2, b) = run(&args);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(a, b);
    assert!(a.contains("rad dim = 1, dim-condition: holds"), "{a}");
    let (_, s1) = run(&["selftest"]);
    let (_, s2) = run(&["selftest"]);
    assert_eq!(s1, s2);
}
