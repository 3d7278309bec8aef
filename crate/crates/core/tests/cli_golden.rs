//! Byte-exact CLI transcripts. Set `QWIRE_BLESS=1` to rewrite them.

mod common;

use common::{golden_cases, golden_dir, transcript};

#[test]
fn golden_transcripts_match() {
    let bless = std::env::var_os("QWIRE_BLESS").is_some();
    let cases = golden_cases();
    assert!(cases.len() >= 20, "golden directory looks incomplete");
    let mut mismatched = Vec::new();
    for (name, args, expected) in cases {
        let actual = transcript(&args);
        if actual == expected {
            continue;
        }
        if bless {
            std::fs::write(golden_dir().join(&name), &actual).unwrap();
        } else {
            mismatched.push(format!("{name}:\n--- expected\n{expected}--- actual\n{actual}"));
        }
    }
    assert!(mismatched.is_empty(), "{}", mismatched.join("\n"));
}

#[test]
fn exit_codes() {
    let code = |args: &str| {
        let t = transcript(args);
        t.lines().nth(1).unwrap().strip_prefix("exit: ").unwrap().parse::<i32>().unwrap()
    };
    assert_eq!(code("check corpus/coin_flip.qw"), 0);
    assert_eq!(code("check corpus/invalid/clone.qw"), 1);
    assert_eq!(code("check corpus/invalid/garbage.qw"), 2);
    assert_eq!(code("check corpus/missing.qw"), 2);
    assert_eq!(code("sim builtin: coin_flip --eps 0"), 2);
    assert_eq!(code("sim builtin: coin_flip --eps -1"), 2);
    assert_eq!(code("sim corpus/invalid/clone.qw clone"), 1);
    assert_eq!(code("sim corpus/coin_flip.qw nope"), 2);
    assert_eq!(code("lower builtin: nope"), 2);
    assert_eq!(code("--help"), 0);
    assert_eq!(code(""), 2);
}
