use glc_core::graph::{deserialize, is_isomorphic, GateKind, Graph};
use glc_core::group::GroupElem;
use glc_core::moves::{apply_sequence, MoveKind};
use glc_core::predicates::{is_planar_in_disk, is_planar_in_disk_ordered};
use glc_core::reduce::library::{by_name, church, combinator, crossing, omega, plus, succ};
use glc_core::reduce::{
    equivalent_mod_structure, normalize_coassoc, planar_beta_sides, planarize, reduce,
    run_demo, verify_planar_beta, verify_reidemeister_ii, Manifest, PlanarBeta, Strategy,
};
use glc_core::term::{encode, parse, std_terms, FanoutPolicy};

fn enc_src(src: &str) -> Graph {
    encode(&parse(src).unwrap(), FanoutPolicy::default())
}

fn app(f: &Graph, a: &Graph) -> Graph {
    Graph::apply_to(f, a).unwrap()
}

fn lib(name: &str) -> Graph {
    by_name(name).unwrap()
}

#[test]
fn identity_applied_to_k_in_one_step() {
    let (h, t) = reduce(&app(&lib("I"), &lib("K")), &Strategy::default());
    assert_eq!(t.len(), 1);
    assert!(is_isomorphic(&h, &lib("K")));
}

#[test]
fn default_strategy_shape() {
    let s = Strategy::default();
    assert_eq!(s.budget, 1000);
    assert!(!s.normalize_after);
    assert_eq!(s.kinds[0], MoveKind::Beta);
    assert!(s.kinds.contains(&MoveKind::FanOutGlobal));
    assert!(!s.kinds.contains(&MoveKind::CoAssoc));
}

#[test]
fn left_comb_normalizes_in_place() {
    let left = enc_src("\\x. x x x");
    let right = encode(&parse("\\x. x x x").unwrap(), FanoutPolicy::LeftComb);
    assert!(!is_isomorphic(&left, &right));
    assert!(is_isomorphic(&normalize_coassoc(&left), &normalize_coassoc(&right)));
}

#[test]
fn normalize_is_idempotent_on_s() {
    for policy in [FanoutPolicy::RightComb, FanoutPolicy::LeftComb, FanoutPolicy::Balanced] {
        let g = normalize_coassoc(&encode(&std_terms::s(), policy));
        assert!(is_isomorphic(&g, &normalize_coassoc(&g)));
        assert!(is_isomorphic(&g, &normalize_coassoc(&encode(&std_terms::s(), FanoutPolicy::RightComb))));
    }
}

#[test]
fn structural_equivalence_examples() {
    let k = combinator("K").unwrap();
    assert!(equivalent_mod_structure(&k, &k));
    assert!(!equivalent_mod_structure(&k, &combinator("S").unwrap()));
    let g = enc_src("(\\x. x x) (\\x. \\y. x)");
    let (h, t) = apply_sequence(&g, &[MoveKind::Beta], 1);
    assert_eq!(t.len(), 1);
    assert!(equivalent_mod_structure(&h, &enc_src("(\\x. \\y. x) (\\x. \\y. x)")));
}

#[test]
fn normalize_after_flag() {
    let s = Strategy {
        normalize_after: true,
        ..Strategy::new(&[MoveKind::Beta], 10)
    };
    let (h, _) = reduce(&enc_src("(\\f. \\x. f x x x) (\\y. y)"), &s);
    assert!(is_isomorphic(&h, &normalize_coassoc(&h)));
}

#[test]
fn s_a_b_c() {
    let [a, b, c] = ["I", "K", "S"].map(lib);
    let g = app(&app(&app(&lib("S"), &a), &b), &c);
    let (h, t1) = apply_sequence(&g, &[MoveKind::Beta], 3);
    let (h, t2) = apply_sequence(&h, &[MoveKind::FanOutGlobal], 1);
    assert_eq!((t1.len(), t2.len()), (3, 1));
    assert!(equivalent_mod_structure(&h, &app(&app(&a, &c), &app(&b, &c))));
}

#[test]
fn omega_budget_run() {
    let (h, t) = reduce(&omega(), &Strategy { budget: 50, ..Strategy::default() });
    assert_eq!(t.len(), 50);
    assert!(t.budget_exhausted);
    assert!(is_isomorphic(&h, &omega()));
}

#[test]
fn church_zero_and_succ() {
    assert_eq!(church(0).unwrap().count_gates(GateKind::Top), 1);
    for n in 0..=6 {
        let (h, t) = apply_sequence(&app(&succ(), &church(n).unwrap()), &[MoveKind::Beta], 100);
        assert_eq!(t.len(), 3, "n = {n}");
        assert!(equivalent_mod_structure(&h, &church(n + 1).unwrap()), "n = {n}");
    }
}

#[test]
fn plus_two_three() {
    let g = app(&app(&plus(), &church(2).unwrap()), &church(3).unwrap());
    let (h, t) = reduce(&g, &Strategy::default());
    assert!(!t.budget_exhausted);
    assert!(equivalent_mod_structure(&h, &church(5).unwrap()));
}

#[test]
fn planar_beta_derivations() {
    for v in PlanarBeta::ALL {
        let t = verify_planar_beta(v).unwrap();
        assert_eq!(t.count(MoveKind::Beta), v.beta_count());
        let (lhs, rhs) = planar_beta_sides(v);
        assert!(lhs.is_valid() && rhs.is_valid());
        assert_eq!(lhs.count_gates(GateKind::Lambda), v.beta_count());
    }
    assert_eq!("p2".parse::<PlanarBeta>().unwrap(), PlanarBeta::P2);
    assert!("P4".parse::<PlanarBeta>().is_err());
}

#[test]
fn reidemeister_two() {
    for e in ["1", "a", "a^-1", "a^2*b^-1"] {
        let eps: GroupElem = e.parse().unwrap();
        let t = verify_reidemeister_ii(&eps).unwrap();
        assert_eq!(t.count(MoveKind::R2), usize::from(e != "1"), "ε = {e}");
    }
}

#[test]
fn crossing_alone_does_not_reduce() {
    let g = crossing(&GroupElem::generator("a"));
    let (h, t) = apply_sequence(&g, &glc_core::reduce::reidemeister_kinds(), 10);
    assert!(t.is_empty());
    assert!(is_isomorphic(&h, &g));
}

#[test]
fn planarize_planar_graph_is_identity() {
    let g = lib("I");
    let p = planarize(&g);
    assert_eq!(p.crossings, 0);
    assert!(p.trace.is_empty());
    assert!(is_isomorphic(&p.graph, &g));
}

#[test]
fn planarize_two_crossing_wires() {
    let g = deserialize("in a\nin b\nout c\nout d\nedge e1 a -> c\nedge e2 b -> d\n").unwrap();
    assert!(is_planar_in_disk(&g).0);
    assert!(!is_planar_in_disk_ordered(&g));
    let p = planarize(&g);
    assert_eq!(p.crossings, 1);
    assert_eq!(p.trace.len(), 1);
    assert!(is_planar_in_disk_ordered(&p.graph));
    // The inserted pair is a β redex that undoes itself.
    let (back, _) = apply_sequence(&p.graph, &[MoveKind::Beta], 1);
    assert!(is_isomorphic(&back, &g));
}

#[test]
fn planarize_omega() {
    let g = omega();
    let p = planarize(&g);
    assert!(p.crossings > 0);
    assert_eq!(p.trace.count(MoveKind::Beta), p.crossings);
    assert!(is_planar_in_disk_ordered(&p.graph));
    assert!(p.graph.is_valid());
}

#[test]
fn manifest_demos_pass() {
    let m = Manifest::default_manifest();
    for name in ["skk", "succ", "omega", "reidemeister2", "planar-beta", "plus"] {
        assert!(!m.by_name(name).is_empty(), "{name}");
    }
    for d in &m.demos {
        let out = run_demo(d).unwrap();
        assert!(out.ok(), "{}: {out}", d.label());
    }
    let skk = run_demo(m.by_name("skk")[0]).unwrap();
    assert_eq!(skk.to_string(), "beta=5 prune_local=1 result=I OK");
}

#[test]
fn manifest_mismatch_is_reported() {
    let m = Manifest::parse(
        "[[demo]]\nname = \"skk\"\nclaim = \"x\"\nresult = \"I\"\nexpect = { beta = 4, prune_local = 1 }\n",
    )
    .unwrap();
    let out = run_demo(&m.demos[0]).unwrap();
    assert!(!out.ok());
    assert!(out.to_string().contains("FAIL"));
}
