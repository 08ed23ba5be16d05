use ocsft_cli::run_command;

fn ok(args: &[&str]) -> String {
    let out = run_command(args);
    assert_eq!(out.code, 0, "{args:?}: {}", out.stderr);
    out.stdout
}

#[test]
fn equiv_of_open_associations() {
    assert_eq!(ok(&["equiv", "mo(mo(x1o,x2o),x3o)", "mo(x1o,mo(x2o,x3o))"]), "equivalent\n");
    let out = run_command(&["equiv", "mo(x1o,x2o)", "mo(x2o,x1o)"]);
    assert_eq!((out.code, out.stdout.as_str()), (1, "not equivalent\n"));
}

#[test]
fn psi_zero_exits_one() {
    let out = run_command(&["psi", "mc(x1c,x2c)", "1", "2"]);
    assert_eq!((out.code, out.stdout.as_str()), (1, "zero\n"));
    assert_eq!(ok(&["psi", "mo(mo(x1o,x2o),x3o)", "1i", "3i", "--cap", "4"]), "1 c2o(o2c(x1o))\n");
}

#[test]
fn degree_of_open_to_closed() {
    assert_eq!(ok(&["degree", "{1o},(1i)", "-m", "3", "-k", "1"]), "-1\n");
    assert_eq!(ok(&["degree", "c=0,o=4,circles=2,black=0,out=closed", "-m", "3", "-k", "1", "--codim"]), "14\n");
}

#[test]
fn parse_errors_exit_two() {
    let out = run_command(&["term-type", "mc(x1c"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("line 1, column"), "{}", out.stderr);
    assert_eq!(run_command(&["nonsense"]).code, 2);
    assert_eq!(run_command(&["dims", "{1i"]).code, 2);
}

#[test]
fn types_and_terms() {
    assert_eq!(ok(&["term-type", "o2c(mo(c2o(x1c),x2o))"]), "{1i,1o},(2i)\n");
    assert_eq!(ok(&["type-compose", "{1i,1o}", "1o", "{1i,2i,1o}", "2i"]), "{1i,2i,1o}\n");
    assert_eq!(ok(&["type-compose", "(1i,1o)", "1o", "(1i,2i,1o)", "1i"]), "(1i,2i,1o)\n");
    assert_eq!(ok(&["normalize", "mo(x1o,mo(x2o,x3o))"]), "mo(mo(x1o,x2o),x3o)\n");
    assert_eq!(ok(&["enumerate", "--signature", "1,0,1,0", "--max-empty", "1"]), "{1i,1o}\n{1i,1o},()\n");
    assert_eq!(ok(&["enumerate", "{1o}", "--max-vertices", "1"]), "ec\n");
}

#[test]
fn dims_and_basis() {
    assert_eq!(ok(&["dims", "{1i,1o}", "--cap", "6"]), "# cap=6 slack=2 stable=yes\n0 1\n1 1\n");
    assert_eq!(ok(&["basis", "{1i,1o}", "--cap", "6"]), "0 x1c\n1 bv(x1c)\n");
    assert_eq!(ok(&["reduce", "bv(o2c(eo))", "--cap", "6"]), "\n");
    assert_eq!(ok(&["reduce", "mc(x2c,x1c)", "--cap", "4"]), "1\n");
}

#[test]
fn cyclic_swaps_sectors() {
    assert_eq!(ok(&["cyclic", "c2o(x1c)", "2,1"]), "1 o2c(x1o)\n");
    assert_eq!(run_command(&["cyclic", "c2o(x1c)", "1,1"]).code, 1);
}

#[test]
fn output_is_stable_across_runs() {
    let args = ["enumerate", "{1i,2i,1o}", "--max-vertices", "4"];
    assert_eq!(ok(&args), ok(&args));
}

#[test]
fn reads_files_with_at_prefix() {
    let path = std::env::temp_dir().join(format!("ocsft-golden-{}.txt", std::process::id()));
    std::fs::write(&path, "gen a MC\nin 1i a.in1\nin 2i a.in2\nout 1o a.out1\n").unwrap();
    let arg = format!("@{}", path.display());
    assert_eq!(ok(&["term-type", &arg]), "{1i,2i,1o}\n");
    std::fs::remove_file(path).unwrap();
}
