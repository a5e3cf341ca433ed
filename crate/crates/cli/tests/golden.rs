use std::path::PathBuf;

use assert_cmd::Command;
use serde_json::{json, Value};

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn cmd(args: &[&str]) -> Command {
    let mut c = Command::cargo_bin("fracterm").unwrap();
    c.current_dir(root()).env_remove("FRACTERM_DEFAULT_SHAPE").args(args);
    c
}

/// Runs with `--json`, expects exit 0 and returns stdout as JSON.
fn ok(args: &[&str]) -> Value {
    let out = cmd(&[&["--json"], args].concat()).assert().success().get_output().stdout.clone();
    serde_json::from_slice(&out).unwrap()
}

/// Runs with `--json`, expects exit 1 and returns the structured error.
fn fails(args: &[&str]) -> Value {
    let out = cmd(&[&["--json"], args].concat()).assert().code(1).get_output().stderr.clone();
    serde_json::from_slice(&out).unwrap()
}

#[test]
fn eval_bottom_propagates() {
    assert_eq!(
        ok(&["eval", "--policy", "common-meadow", "1/0 + 1"]),
        json!({"kind": "peripheral", "value": "bot"})
    );
}

#[test]
fn classify_non_simple() {
    let v = ok(&["classify", "5/(1+3)"]);
    assert_eq!(v["is_fracterm"], json!(true));
    assert_eq!(v["simple"], json!(false));
}

#[test]
fn fractalk_sequence_a() {
    let v = ok(&["fractalk", "check", "corpus/A.ftk"]);
    assert_eq!(v["overall"]["status"], json!("paradox-blocked"));
    assert_eq!(v["overall"]["step"], json!(5));
    assert_eq!(v["steps"][4]["status"], json!("invalid"));
}

#[test]
fn fractalk_sequences_b_c_d() {
    for file in ["corpus/B.ftk", "corpus/Bprime.ftk", "corpus/Bpp.ftk"] {
        let v = ok(&["fractalk", "check", file]);
        assert_eq!(v["overall"]["step"], json!(4), "{file}");
    }
    let c = ok(&["fractalk", "check", "corpus/C.ftk"]);
    assert_eq!(c["steps"][1]["status"], json!("level-conflict"));
    assert_eq!(c["steps"][1]["expected"], json!("fv"));
    assert_eq!(c["steps"][1]["found"], json!("ft"));
    assert_eq!(ok(&["fractalk", "check", "corpus/D.ftk"])["overall"]["status"], json!("sound"));
}

#[test]
fn parse_and_formats() {
    assert_eq!(
        ok(&["parse", "1/2"]),
        json!({"depth": 2, "formats": {"colon": "1:2", "frac": "frac(1, 2)", "inline": "1/2"}, "term": "1/2"})
    );
    assert_eq!(ok(&["parse", "--format", "colon", "1:2"])["term"], json!("1/2"));
    assert_eq!(ok(&["parse", "1/0"])["term"], json!("1/0"));
    assert_eq!(ok(&["parse", "(1+2/3)/5"])["formats"]["colon"], json!("(1+2:3):5"));
    assert_eq!(ok(&["parse", "--format", "frac", "frac(2, frac(4, 5))"])["term"], json!("2/(4/5)"));
}

#[test]
fn classify_examples() {
    assert_eq!(
        ok(&["classify", "4/6"]),
        json!({"closed": true, "flat": true, "is_fracterm": true, "proper": true,
               "safe": true, "simple": true, "simplified": false})
    );
    let v = ok(&["classify", "5/4"]);
    assert_eq!((v["simplified"].clone(), v["proper"].clone()), (json!(true), json!(false)));
    assert_eq!(ok(&["classify", "1+2"])["is_fracterm"], json!(false));
    assert_eq!(ok(&["classify", "(1/0)/0"])["is_fracterm"], json!(true));
}

#[test]
fn division_by_zero_policies() {
    assert_eq!(ok(&["eval", "1/0"]), json!({"kind": "peripheral", "value": "bot"}));
    assert_eq!(ok(&["eval", "0/0"]), json!({"kind": "peripheral", "value": "bot"}));
    assert_eq!(
        ok(&["eval", "--policy", "suppes-ono", "1/0"]),
        json!({"kind": "number", "shape": "rat.pcs", "value": [0, 1]})
    );
    assert_eq!(
        fails(&["eval", "--policy", "partial", "1/0"]),
        json!({"error": "division-by-zero", "message": "division by zero"})
    );
}

#[test]
fn eval_shapes() {
    assert_eq!(
        ok(&["eval", "--shape", "rat.ssft", "2/(4/5)"]),
        json!({"kind": "number", "shape": "rat.ssft", "value": "5/2"})
    );
    assert_eq!(ok(&["eval", "--shape", "rat.rns", "2/(4/5)"])["value"], json!([10, 4]));
    assert_eq!(fails(&["eval", "--shape", "nat.dec", "1"])["error"], json!("shape"));
}

#[test]
fn default_shape_from_env() {
    let out = cmd(&["--json", "eval", "1/2"])
        .env("FRACTERM_DEFAULT_SHAPE", "rat.ssft")
        .assert()
        .success()
        .get_output()
        .stdout
        .clone();
    let v: Value = serde_json::from_slice(&out).unwrap();
    assert_eq!(v["shape"], json!("rat.ssft"));
}

#[test]
fn flatten_examples() {
    assert_eq!(
        ok(&["flatten", "(1/2)/(3/4)"]),
        json!({"flat": true, "result": "1*4/(2*3)",
               "trace": [{"after": "1*4/(2*3)", "before": "1/2/(3/4)", "rule": "quotient-collapse"}]})
    );
    assert_eq!(ok(&["flatten", "--fold", "(1+2/3)/5"])["result"], json!("5/15"));
    assert_eq!(ok(&["flatten", "--fold", "5/(1+3)"])["result"], json!("5/4"));
}

#[test]
fn simplify_examples() {
    assert_eq!(ok(&["simplify", "4/6"]), json!({"result": "2/3"}));
    assert_eq!(ok(&["simplify", "2/4"]), json!({"result": "1/2"}));
    assert_eq!(ok(&["simplify", "-3/-9"]), json!({"result": "1/3"}));
    assert_eq!(ok(&["simplify", "4/2"]), json!({"result": "2/1"}));
    assert_eq!(ok(&["simplify", "--demote", "4/2"]), json!({"result": "2"}));
    assert_eq!(fails(&["simplify", "1/(2/3)"])["error"], json!("rewrite"));
}

#[test]
fn add_examples() {
    assert_eq!(
        ok(&["add", "--strategy", "same-denom", "1/2", "3/2"]),
        json!({"result": "(1+3)/2", "strategy": "same-denom"})
    );
    assert_eq!(ok(&["add", "--strategy", "cross", "1/2", "3/2"])["result"], json!("(1*2+2*3)/(2*2)"));
    assert_eq!(ok(&["add", "--strategy", "trivial", "1+1", "1"])["result"], json!("1+1+1"));
    assert_eq!(
        ok(&["add", "1/2", "3/2"]),
        json!([
            {"result": "(1*2+2*3)/(2*2)", "strategy": "cross"},
            {"result": "(1+3)/2", "strategy": "same-denom"},
            {"result": "8/4", "strategy": "numeral"}
        ])
    );
    assert_eq!(fails(&["add", "--strategy", "trivial", "1/2", "1"])["error"], json!("strategy"));
}

#[test]
fn shape_encode() {
    assert_eq!(ok(&["shape", "encode", "--shape", "nat.vn", "3"])["value"], json!([[], [[]], [[], [[]]]]));
    assert_eq!(ok(&["shape", "encode", "--shape", "nat.zermelo", "3"])["value"], json!([[[[]]]]));
    assert_eq!(ok(&["shape", "encode", "--shape", "nat.dedekind", "0"])["value"], json!("0"));
    assert_eq!(ok(&["shape", "encode", "--shape", "int.signed", "-4"])["value"], json!("-4"));
    assert_eq!(fails(&["shape", "encode", "--shape", "nat.sdn", "-1"])["error"], json!("shape"));
}

#[test]
fn shape_compare() {
    assert_eq!(
        ok(&["shape", "compare", "--shape", "nat.dec", "007", "7"]),
        json!({"instance_eq": false, "label_eq": true, "shape": "nat.dec"})
    );
    let v = ok(&["shape", "compare", "--shape", "int.diffpair", "[5,2]", "[3,0]"]);
    assert_eq!((v["instance_eq"].clone(), v["label_eq"].clone()), (json!(false), json!(true)));
    let v = ok(&["shape", "compare", "--shape", "rat.rns", "[1,2]", "[2,4]"]);
    assert_eq!((v["instance_eq"].clone(), v["label_eq"].clone()), (json!(false), json!(true)));
    let v = ok(&["shape", "compare", "--shape", "rat.rns", "[1,0]", "[2,0]"]);
    assert_eq!(v["label_eq"], json!(true));
    assert_eq!(ok(&["shape", "compare", "--shape", "rat.pcs", "[1,2]", "[2,4]"])["label_eq"], json!(true));
}

#[test]
fn shape_convert() {
    assert_eq!(
        ok(&["shape", "convert", "--shape", "nat.dedekind", "3", "nat.dec"]),
        json!({"shape": "nat.dec", "value": "3"})
    );
    assert_eq!(ok(&["shape", "convert", "--shape", "nat.dec", "007", "nat.sdn"])["value"], json!("7"));
    assert_eq!(ok(&["shape", "convert", "--shape", "rat.ssft", "2/3", "rat.pcs"])["value"], json!([2, 3]));
    assert_eq!(fails(&["shape", "convert", "--shape", "nat.dec", "3", "rat.pcs"])["error"], json!("shape"));
}

#[test]
fn shape_normality() {
    assert_eq!(
        ok(&["shape", "normality", "--shape", "rat.pcs", "--bound", "10"]),
        json!({"bound": 10, "instances_checked": 128, "label": "rat", "normal": true,
               "shape": "rat.pcs", "witness": null})
    );
    let v = ok(&["shape", "normality", "--shape", "nat.dec", "--bound", "10"]);
    assert_eq!(v["normal"], json!(false));
    assert_eq!(v["witness"], json!(["0", "00"]));
    let v = ok(&["shape", "normality", "--shape", "rat.rns", "--bound", "10"]);
    assert_eq!(v["normal"], json!(false));
    assert_eq!(v["witness"], json!([[0, 1], [0, -1]]));
}

#[test]
fn rns_examples() {
    assert_eq!(ok(&["rns", "num", "2/(4/5)"]), json!({"shape": "rat.rns", "value": [10, 1]}));
    assert_eq!(ok(&["rns", "eval", "num(2/(4/5))"])["value"], json!([10, 1]));
    assert_eq!(ok(&["rns", "eval", "2/(4/5)"])["value"], json!([10, 4]));
    assert_eq!(ok(&["rns", "eval", "1/2+1/3"])["value"], json!([5, 6]));
    assert_eq!(ok(&["rns", "eval", "--verbatim-add", "1/2+1/3"])["value"], json!([7, 6]));
    assert_eq!(ok(&["rns", "eval", "1/0"])["value"], json!([1, 0]));
    assert_eq!(ok(&["rns", "denom", "0/0"])["value"], json!([0, 1]));
}

#[test]
fn demo_covers_the_corpus() {
    let v = ok(&["demo"]);
    let files: Vec<&str> = v.as_array().unwrap().iter().map(|e| e["file"].as_str().unwrap()).collect();
    assert_eq!(files.len(), 9);
    let text = cmd(&["demo"]).assert().success().get_output().stdout.clone();
    let text = String::from_utf8(text).unwrap();
    assert!(text.contains("== A.ftk: paradox-blocked at step 5"));
    assert!(text.contains("== D.ftk: sound"));
    assert!(text.contains("== F.ftk: sound"));
}

#[test]
fn text_output() {
    let out = cmd(&["eval", "1/0"]).assert().success().get_output().stdout.clone();
    assert_eq!(String::from_utf8(out).unwrap(), "⊥\n");
    let out = cmd(&["simplify", "4/6"]).assert().success().get_output().stdout.clone();
    assert_eq!(String::from_utf8(out).unwrap(), "2/3\n");
}

#[test]
fn usage_errors_exit_2_and_name_the_flag() {
    let err = cmd(&["classify", "--policy", "partial", "1/2"]).assert().code(2).get_output().stderr.clone();
    assert!(String::from_utf8(err).unwrap().contains("--policy"));
    let err = cmd(&["eval", "--policy", "bogus", "1"]).assert().code(2).get_output().stderr.clone();
    assert!(String::from_utf8(err).unwrap().contains("--policy"));
    cmd(&["add", "--strategy", "sideways", "1/2", "1/3"]).assert().code(2);
    cmd(&["frobnicate"]).assert().code(2);
}

#[test]
fn domain_errors_exit_1() {
    assert_eq!(fails(&["parse", "1/"])["error"], json!("syntax"));
    assert_eq!(fails(&["fractalk", "check", "corpus/missing.ftk"])["error"], json!("io"));
    let out = cmd(&["eval", "x/1"]).assert().code(1).get_output().stderr.clone();
    assert!(String::from_utf8(out).unwrap().starts_with("error:"));
}

#[test]
fn output_is_deterministic() {
    let a = cmd(&["--json", "demo"]).assert().success().get_output().stdout.clone();
    let b = cmd(&["--json", "demo"]).assert().success().get_output().stdout.clone();
    assert_eq!(a, b);
}
