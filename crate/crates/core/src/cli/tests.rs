use super::*;

const Z4: &str = include_str!("../../examples/z4.txt");

const Z2: &str = "complex A\n  deg 0: Z/2\nend\n";

fn go(doc: &str, cmd: &str, args: &[&str]) -> Output {
    let args: Vec<String> = args.iter().map(|s| s.to_string()).collect();
    run(Some(doc), cmd, &args, &Options::default())
}

#[test]
fn empty_document() {
    let d = parse("").unwrap();
    assert!(d.is_empty());
    assert_eq!(d.emit(), "");
    assert_eq!(go("", "emit", &[]).code, EXIT_OK);
}

#[test]
fn z4_round_trip() {
    let d = parse(Z4).unwrap();
    let text = d.emit();
    let again = parse(&text).unwrap();
    assert_eq!(again.emit(), text);
    assert_eq!(d.len(), again.len());
}

#[test]
fn groups_and_presentations() {
    let d = parse("group G = Z/2 + Z\ngroup H = <2 | [[2, 4]]>\ngroup K = G + Z^2 + 0\n").unwrap();
    let t = d.emit();
    assert!(t.contains("group G = <2 | [[2, 0]]>"), "{t}");
    assert!(t.contains("group H = <2 | [[2, 4]]>"), "{t}");
    let again = parse(&t).unwrap();
    assert_eq!(again.emit(), t);
}

#[test]
fn differential_squares_to_zero() {
    let bad =
        "complex K\n  deg -2: Z\n  deg -1: Z\n  deg 0: Z\n  d -2: [[1]]\n  d -1: [[1]]\nend\n";
    let err = parse(bad).unwrap_err();
    assert!(
        matches!(
            err,
            DocError::Invalid {
                line: 1,
                err: Error::NotAComplex(_)
            }
        ),
        "{err}"
    );
    assert_eq!(go(bad, "emit", &[]).code, EXIT_VALIDATION);
}

#[test]
fn syntax_errors_carry_positions() {
    let err = parse("complex A\n  deg 0: Z/2\n  d 0: [[1, 2], [3]]\nend\n").unwrap_err();
    let DocError::Syntax { line, col, .. } = err else {
        panic!("{err}");
    };
    assert_eq!(line, 3);
    assert!(col > 1);
    assert!(matches!(
        parse("complex A\n  deg 0: Z\n"),
        Err(DocError::Syntax { line: 1, .. })
    ));
    assert!(matches!(
        parse("map f: A -> A\nend\n"),
        Err(DocError::Unknown { line: 1, .. })
    ));
    assert_eq!(go("frobnicate x\n", "emit", &[]).code, EXIT_PARSE);
}

#[test]
fn ext_prints_divisors() {
    let o = go(Z2, "ext", &["A", "A", "1"]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    assert!(o.stdout.contains("divisors [2]"), "{}", o.stdout);
    let o = go(Z2, "ext", &["A", "A", "0"]);
    assert!(o.stdout.contains("divisors [2]"), "{}", o.stdout);
    let o = go(Z2, "ext", &["A", "A", "2"]);
    assert!(o.stdout.contains("divisors []"), "{}", o.stdout);
}

#[test]
fn theta_of_neutral_is_zero() {
    let o = go(Z2, "psi", &["x"]);
    assert_eq!(o.code, EXIT_PARSE);
    let doc = format!("{Z2}class x = ext A A 1 [0]\n");
    let o = go(&doc, "psi", &["x"]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    let full = format!("{doc}{}", o.stdout);
    let d = parse(&full).unwrap();
    let e = d
        .names()
        .find(|n| n.starts_with("x.psi") && !n.contains("psi."))
        .unwrap()
        .to_string();
    let o = go(&full, "theta", &[&e]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    assert!(o.stdout.contains("coords: [0]"), "{}", o.stdout);
}

#[test]
fn theta_of_z4() {
    let o = go(Z4, "theta", &["X"]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    assert!(o.stdout.contains("coords: [1]"), "{}", o.stdout);
    assert!(
        o.stdout.contains("class X.theta = ext A A 1 [1]"),
        "{}",
        o.stdout
    );
    let o = go(Z4, "split-check", &["X"]);
    assert!(o.stdout.contains("split: false"), "{}", o.stdout);
    let o = go(Z4, "baer-sum", &["X", "X"]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    assert!(o.stdout.contains("theta coords: [0]"), "{}", o.stdout);
}

#[test]
fn outputs_reparse() {
    let cases: &[(&str, &[&str])] = &[
        ("psi", &["x"]),
        ("cone", &["i"]),
        ("truncate", &["E", "le", "-1", "good"]),
        ("truncate", &["E", "ge", "0", "bad"]),
        ("pullback", &["pi", "pi"]),
        ("pushout", &["i", "i"]),
        ("pullback", &["X", "pi"]),
        ("pushout", &["X", "zero"]),
        ("ker", &["pi"]),
        ("coker", &["I"]),
        ("compose-roof", &["pi", "I"]),
        ("class-of-roof", &["pi"]),
        ("theta", &["X"]),
        ("baer-sum", &["X", "X"]),
        ("equiv-check", &["X", "X"]),
    ];
    for (cmd, args) in cases {
        let o = go(Z4, cmd, args);
        assert_eq!(o.code, EXIT_OK, "{cmd}: {}", o.stderr);
        let frag: String = o
            .stdout
            .lines()
            .skip_while(|l| {
                !matches!(
                    l.split_whitespace().next(),
                    Some(
                        "complex"
                            | "map"
                            | "fraction"
                            | "class"
                            | "extension"
                            | "homotopy"
                            | "group"
                    )
                )
            })
            .map(|l| format!("{l}\n"))
            .collect();
        let d = parse_into(parse(Z4).unwrap(), &frag);
        assert!(d.is_ok(), "{cmd}: {:?}\n{frag}", d.err());
    }
}

#[test]
fn reports() {
    let o = go(Z4, "les-homotopy", &["X"]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    assert!(o.stdout.contains("exact: true"));
    let o = go(Z4, "les-hom", &["X", "A"]);
    assert!(o.stdout.contains("exact: true"), "{}", o.stdout);
    let o = go(Z4, "cohomology", &["E"]);
    assert_eq!(o.stdout, "H^0 = Z/4\n");
    let o = go(Z4, "qis-check", &["pi"]);
    assert_eq!(o.stdout, "quasi-iso: false\n");
    let o = go(Z4, "validate", &[]);
    assert!(o.stdout.contains("X.cond_a: true"), "{}", o.stdout);
    let o = go(Z4, "equiv-check", &["X", "X"]);
    assert!(o.stdout.contains("witness: valid"), "{}", o.stdout);
}

#[test]
fn contrast_on_the_frozen_instance() {
    let doc = "complex P\n  deg -1: Z/2\nend\ncomplex Z0\nend\nmap f: Z0 -> P\nend\n";
    let o = go(doc, "contrast-naive", &["f", "f"]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    assert!(o.stdout.contains("naive H^-2 = 0"), "{}", o.stdout);
    assert!(o.stdout.contains("homotopy H^0 = Z/2"), "{}", o.stdout);
    assert!(o.stdout.contains("differ: true"));
}

#[test]
fn exit_codes() {
    assert_eq!(go(Z4, "theta", &["nope"]).code, EXIT_PARSE);
    assert_eq!(go(Z4, "frobnicate", &[]).code, EXIT_PARSE);
    assert_eq!(go(Z4, "pullback", &["pi", "i"]).code, EXIT_PRECONDITION);
    let broken =
        "complex A\n  deg 0: Z/2\nend\nmap zero: A -> A\nend\nhomotopy null: zero => zero\nend\n\
                  fraction I = (id, id)\n";
    assert_eq!(go(broken, "emit", &[]).code, EXIT_PARSE);
    let broken = "complex A\n  deg 0: Z/2\nend\nmap id: A -> A\n  deg 0: [[1]]\nend\nmap zero: A -> A\nend\n\
                  homotopy null: zero => zero\nend\nfraction I = id\n\
                  extension X: A by A\n  e: A\n  i: I\n  pi: zero\n  null: null\nend\n";
    let o = go(broken, "emit", &[]);
    assert_eq!(o.code, EXIT_VALIDATION, "{}", o.stderr);
    assert!(o.stderr.contains("invalid extension"), "{}", o.stderr);
}

#[test]
fn selftest_is_deterministic() {
    let a = selftest(42, 15);
    assert!(a.ok(), "{}", a.render());
    assert_eq!(a, selftest(42, 15));
    let o = run(
        None,
        "selftest",
        &["7".into(), "5".into()],
        &Options::default(),
    );
    assert_eq!(o.code, EXIT_OK, "{}", o.stdout);
}
