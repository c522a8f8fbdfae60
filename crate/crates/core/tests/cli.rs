use std::path::PathBuf;
use std::process::Command;

fn netarith(args: &[&str], budget: Option<&str>) -> (i32, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_netarith"));
    cmd.args(args).env_remove("NETARITH_BUDGET");
    if let Some(b) = budget {
        cmd.env("NETARITH_BUDGET", b);
    }
    let out = cmd.output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap())
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("netarith-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn eval_and_iso() {
    assert_eq!(netarith(&["iso", "K2*K3", "K6"], None), (0, "{\"isomorphic\":true}\n".into()));
    assert_eq!(netarith(&["iso", "tensor(K2,K3)", "C6"], None).0, 0);
    assert_eq!(netarith(&["iso", "K2*K3", "C6"], None), (1, "{\"isomorphic\":false}\n".into()));
    let (code, dot) = netarith(&["eval", "K2", "--out", "dot"], None);
    assert_eq!(code, 0);
    assert_eq!(dot, "\"graph G {\\n  0;\\n  1;\\n  0 -- 1;\\n}\\n\"\n");
}

#[test]
fn modes() {
    assert_eq!(netarith(&["chi", "--mode", "strong", "3"], None).1, "{\"chi\":3}\n");
    assert_eq!(netarith(&["chi", "3"], None).1, "{\"chi\":1}\n");
    let (code, out) = netarith(&["chi", "C4 - K1"], None);
    assert_eq!(code, 1);
    assert!(out.contains("view mismatch"), "{out}");
}

#[test]
fn budgets_from_the_environment() {
    let (code, out) = netarith(&["fvec", "K6"], Some("simplices=10"));
    assert_eq!(code, 3);
    assert!(out.starts_with("{\"error\":\"budget exceeded"), "{out}");
    assert_eq!(netarith(&["fvec", "K3"], Some("simplices=10")).0, 0);
    assert_eq!(netarith(&["fvec", "K3"], Some("bogus=1")).0, 1);
    assert_eq!(netarith(&["primetest", "C4*C4", "--budget", "0"], None).0, 3);
}

#[test]
fn parse_errors_exit_two() {
    let (code, out) = netarith(&["eval", "K2 ** K3"], None);
    assert_eq!(code, 2);
    assert!(out.starts_with("{\"error\":\"1:5:"), "{out}");
    assert_eq!(netarith(&["spec", "K2", "--matrix", "hessian"], None).0, 2);
}

#[test]
fn file_literals() {
    let g = scratch("kite.json", "{\"n\":4,\"edges\":[[0,2],[0,3],[1,2],[1,3],[2,3]]}");
    let e = scratch("c4.txt", "4 4\n0 1\n1 2\n2 3\n3 0\n");
    let at = |p: &PathBuf| format!("@{}", p.display());
    assert_eq!(netarith(&["iso", &at(&g), "Kite"], None).0, 0);
    assert_eq!(netarith(&["iso", &at(&e), "C4"], None).0, 0);
    // C4^2 = 4 P4 and 1 - χ is multiplicative under joins: χ = 1 - (-3)^4.
    assert_eq!(netarith(&["chi", &format!("{}^2", at(&e))], None).1, "{\"chi\":-80}\n");
}

#[test]
fn witness_and_selftest_shape() {
    let (code, out) = netarith(&["witness63"], None);
    assert_eq!(code, 0);
    assert!(out.contains("\"fvector\":[63,1302,11160,41664,64512,32768]"), "{out}");
    assert!(out.contains("\"isomorphic\":true"));
}
