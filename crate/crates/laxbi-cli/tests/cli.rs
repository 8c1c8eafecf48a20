use std::path::PathBuf;
use std::process::{Command, Output};

use laxbi::hallnum::HallTable;
use laxbi::laxhall::UnstrBialgSimplex;
use laxbi::ordalg::{AlgMorphism, BialgFunctor, PyrDiagram};
use laxbi::protoexact::{FinGroupoid, ProtoExactCat};
use laxbi::simpcore::{text, Simplex, SimplicialSet};
use laxbi::twistposet::DeltaOpSimplex;

fn laxbi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_laxbi")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("laxbi-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

#[test]
fn hall_table_for_vect() {
    let o = laxbi(&["hall", "--q", "2", "--dmax", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("g^[2] _[1],[1] = 3"));
    assert!(s.contains("budget=200000"));
    let t = HallTable::parse(&s.lines().take_while(|l| !l.starts_with("hall table")).collect::<Vec<_>>().join("\n")).unwrap();
    assert_eq!(t.g(2, 1, 1).to_string(), "3");
}

#[test]
fn nerve_of_the_arrow_is_2segal() {
    let o = laxbi(&["fixture", "nerve", "--n", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    let x: SimplicialSet = text::parse(&s).unwrap();
    assert_eq!(text::print(&x), s);
    let p = scratch("nerve1.txt", &s);
    let o = laxbi(&["check-2segal", "--sset", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("verdict: PASS (8 squares)\n"));
}

#[test]
fn green_reports_the_lax_entry() {
    let o = laxbi(&["green", "--q", "2", "--dmax", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("entry in=[1],[1] out=[1],[1] cross=9 grid=9 hall=9 frame=2 frame_hall=2"));
    assert!(s.contains("grid->frame: not an equivalence"));
    assert!(s.ends_with("verdict: LAX (expected)\n"));
}

#[test]
fn fixtures_round_trip_and_pass() {
    for args in [vec!["fixture", "vect", "--q", "2", "--dmax", "1"], vec!["fixture", "arr", "--n", "2"], vec!["fixture", "terminal"]] {
        let s = stdout(&laxbi(&args));
        let c = ProtoExactCat::parse(&s).unwrap();
        assert_eq!(c.to_text(), s);
        let p = scratch(&format!("{}.txt", args[1]), &s);
        let o = laxbi(&["check-exact", "--input", p.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    }
}

#[test]
fn groupoid_dumps_round_trip() {
    let o = laxbi(&["s-construct", "--n", "2", "--q", "2", "--dmax", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.starts_with("# s-construct source=vect(q=2,dmax=2) n=2 k=- budget="));
    let g = FinGroupoid::parse_dump(&s).unwrap();
    assert_eq!(g.aut_orders(), vec![1, 1, 1, 2, 6, 6]);
    let o = laxbi(&["s-construct", "--n", "1", "--k", "1", "--mode", "iterated", "--dmax", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(FinGroupoid::parse_dump(&stdout(&o)).is_ok());
}

#[test]
fn segal_certificates_for_the_s_construction() {
    let o = laxbi(&["check-2segal", "--q", "2", "--dmax", "2", "--nmax", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("square "));
    let o = laxbi(&["check-double-2segal", "--dmax", "2", "--nmax", "2", "--kmax", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("verdict: PASS\n"));
}

#[test]
fn failing_certificate_exits_1() {
    // One loop `e` and a triangle with all faces `e`: the pair (t, t) glued
    // along the diagonal has no filling 3-simplex.
    let mut x = SimplicialSet::new([2]);
    let v = x.add_cell([0], [vec![]]).unwrap();
    let e = x.add_cell([1], [vec![Simplex::nondeg(v, [0]); 2]]).unwrap();
    x.add_cell([2], [vec![Simplex::nondeg(e, [1]); 3]]).unwrap();
    let p = scratch("bad.txt", &text::print(&x));
    let o = laxbi(&["check-2segal", "--sset", p.to_str().unwrap(), "--nmax", "3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL witness"));
    assert!(stdout(&o).ends_with("verdict: FAIL (8 squares)\n"));
}

#[test]
fn beta_cell_of_the_multiplication_pair() {
    let (m, id) = (AlgMorphism::mult(), AlgMorphism::identity(2));
    let d = PyrDiagram::from_spans(2, &[(id.clone(), m.clone()), (m, id)]).unwrap();
    let u = UnstrBialgSimplex::from_base(BialgFunctor::from_singletons(vec![d]).unwrap(), DeltaOpSimplex::active_2_1()).unwrap();
    let p = scratch("mm.unstr", &u.to_text());
    let o = laxbi(&["beta", "--input", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.ends_with("cell: pass\nverdict: PASS\n"));
    // Each value block parses as a bisimplicial set.
    let blocks: Vec<&str> = s.split("value ").skip(1).collect();
    assert!(!blocks.is_empty());
    for b in blocks {
        let body: String = b.lines().skip(1).filter(|l| l.starts_with("complex") || l.starts_with("cell ")).map(|l| format!("{l}\n")).collect();
        assert!(text::parse::<2>(&body).is_ok());
    }
}

#[test]
fn posets_of_the_active_edge() {
    let o = laxbi(&["posets", "--phi", "2,1:0.2"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("poset elements=5"));
    assert!(s.contains("poset elements=9"));
    assert!(s.contains("poset elements=11"));
    assert!(s.ends_with("cone: pass\n"));
}

#[test]
fn usage_and_input_errors_exit_2() {
    assert_eq!(laxbi(&[]).status.code(), Some(2));
    assert_eq!(laxbi(&["hall", "--q", "x"]).status.code(), Some(2));
    assert_eq!(laxbi(&["posets", "--phi", "2,1:0.5"]).status.code(), Some(2));
    assert_eq!(laxbi(&["s-construct", "--n", "1", "--mode", "iterated"]).status.code(), Some(2));
    let p = scratch("garbage.txt", "not a category\n");
    let o = laxbi(&["check-exact", "--input", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8(o.stderr).unwrap().starts_with("error: "));
    assert_eq!(laxbi(&["beta", "--input", "/nonexistent/file"]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    for args in [vec!["green"], vec!["s-construct", "--n", "2"], vec!["posets", "--phi", "1,1:0.1"]] {
        assert_eq!(stdout(&laxbi(&args)), stdout(&laxbi(&args)));
    }
}
