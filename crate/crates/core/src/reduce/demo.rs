//! Replays of the propositions listed in a TOML manifest.

use std::collections::BTreeMap;
use std::fmt;

use serde::Deserialize;

use super::derive::{verify_planar_beta, PlanarBeta};
use super::library::{by_name, church};
use super::equivalent_mod_structure;
use crate::error::LibraryError;
use crate::graph::{is_isomorphic, Graph};
use crate::group::GroupElem;
use crate::moves::{apply_sequence, MoveKind, Trace};

pub const DEFAULT_MANIFEST: &str = include_str!("../../../../demos/propositions.toml");

#[derive(Clone, Debug, Deserialize)]
pub struct Manifest {
    #[serde(rename = "demo")]
    pub demos: Vec<DemoSpec>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct DemoSpec {
    pub name: String,
    #[serde(default)]
    pub args: Vec<String>,
    pub claim: String,
    /// Counts obtained by running the engine rather than stated claims.
    #[serde(default)]
    pub derived: bool,
    pub expect: BTreeMap<String, usize>,
    pub result: String,
}

impl Manifest {
    pub fn parse(src: &str) -> Result<Manifest, toml::de::Error> {
        toml::from_str(src)
    }

    pub fn default_manifest() -> Manifest {
        Manifest::parse(DEFAULT_MANIFEST).expect("embedded manifest parses")
    }

    pub fn names(&self) -> Vec<&str> {
        let mut names: Vec<&str> = self.demos.iter().map(|d| d.name.as_str()).collect();
        names.dedup();
        names
    }

    pub fn by_name(&self, name: &str) -> Vec<&DemoSpec> {
        self.demos.iter().filter(|d| d.name == name).collect()
    }
}

impl DemoSpec {
    pub fn label(&self) -> String {
        if self.args.is_empty() {
            self.name.clone()
        } else {
            format!("{} {}", self.name, self.args.join(" "))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DemoOutcome {
    pub label: String,
    pub counts: BTreeMap<String, usize>,
    pub expected: BTreeMap<String, usize>,
    pub result: String,
    pub result_ok: bool,
}

impl DemoOutcome {
    pub fn ok(&self) -> bool {
        self.result_ok && self.counts == self.expected
    }
}

impl fmt::Display for DemoOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in &self.counts {
            write!(f, "{k}={v} ")?;
        }
        write!(f, "result={}", self.result)?;
        if self.ok() {
            return write!(f, " OK");
        }
        write!(f, " FAIL")?;
        if self.counts != self.expected {
            let want: Vec<String> = self.expected.iter().map(|(k, v)| format!("{k}={v}")).collect();
            write!(f, " (expected {})", want.join(" "))?;
        }
        if !self.result_ok {
            write!(f, " (result mismatch)")?;
        }
        Ok(())
    }
}

fn count_key(kind: MoveKind) -> &'static str {
    match kind {
        MoveKind::Beta => "beta",
        k if k.is_local_prune() => "prune_local",
        MoveKind::PruneGlobal => "prune_global",
        MoveKind::FanOutGlobal => "fanout_global",
        MoveKind::CoAssoc => "co_assoc",
        MoveKind::CoComm => "co_comm",
        MoveKind::R1 => "r1",
        MoveKind::R2 => "r2",
        MoveKind::Ext1 => "ext1",
        MoveKind::Ext2 => "ext2",
        _ => "loop_elim",
    }
}

fn tally(traces: &[&Trace]) -> BTreeMap<String, usize> {
    let mut out = BTreeMap::new();
    for t in traces {
        for s in &t.steps {
            *out.entry(count_key(s.kind).to_string()).or_insert(0) += 1;
        }
    }
    out
}

fn arg<T: std::str::FromStr>(spec: &DemoSpec, i: usize) -> Result<T, LibraryError> {
    spec.args
        .get(i)
        .and_then(|a| a.parse().ok())
        .ok_or_else(|| LibraryError::InvalidParam(format!("{}: bad argument {i}", spec.name)))
}

fn app(f: &Graph, a: &Graph) -> Graph {
    Graph::apply_to(f, a).expect("closed library graphs compose")
}

fn lib(name: &str) -> Graph {
    by_name(name).expect("library name")
}

/// Runs one manifest entry. Unknown demo names and malformed arguments are
/// errors; count or result mismatches are reported in the outcome.
pub fn run_demo(spec: &DemoSpec) -> Result<DemoOutcome, LibraryError> {
    let prune_local = MoveKind::PRUNE_LOCAL;
    let (counts, result_ok) = match spec.name.as_str() {
        // I ⋏ A → A by one β.
        "ia" => {
            let a = lib(&spec.result);
            let (h, t) = apply_sequence(&app(&lib("I"), &a), &[MoveKind::Beta], 100);
            (tally(&[&t]), is_isomorphic(&h, &a))
        }
        // (K ⋏ A) ⋏ B → A by two β and one global pruning.
        "kab" => {
            let g = app(&app(&lib("K"), &lib(&spec.args[0])), &lib(&spec.args[1]));
            let (h, t) = apply_sequence(&g, &[MoveKind::Beta, MoveKind::PruneGlobal], 100);
            (tally(&[&t]), is_isomorphic(&h, &lib(&spec.result)))
        }
        "skk" => {
            let g = app(&app(&lib("S"), &lib("K")), &lib("K"));
            let (h, t1) = apply_sequence(&g, &[MoveKind::Beta], 100);
            let (h, t2) = apply_sequence(&h, &prune_local, 1);
            (tally(&[&t1, &t2]), equivalent_mod_structure(&h, &lib(&spec.result)))
        }
        // ((S ⋏ A) ⋏ B) ⋏ C → (A ⋏ C) ⋏ (B ⋏ C) by three β and one global
        // FAN-OUT.
        "sabc" => {
            let [a, b, c] = [0, 1, 2].map(|i| lib(&spec.args[i]));
            let g = app(&app(&app(&lib("S"), &a), &b), &c);
            let (h, t1) = apply_sequence(&g, &[MoveKind::Beta], 3);
            let (h, t2) = apply_sequence(&h, &[MoveKind::FanOutGlobal], 1);
            let want = app(&app(&a, &c), &app(&b, &c));
            (tally(&[&t1, &t2]), equivalent_mod_structure(&h, &want))
        }
        "succ" => {
            let n: usize = arg(spec, 0)?;
            let g = app(&lib("succ"), &church(n)?);
            let (h, t) = apply_sequence(&g, &[MoveKind::Beta], 100);
            (tally(&[&t]), equivalent_mod_structure(&h, &lib(&spec.result)))
        }
        "plus" => {
            let m: usize = arg(spec, 0)?;
            let n: usize = arg(spec, 1)?;
            let g = app(&app(&lib("plus"), &church(m)?), &church(n)?);
            let (h, t) = apply_sequence(&g, &[MoveKind::Beta, MoveKind::FanOutGlobal], 1000);
            (tally(&[&t]), equivalent_mod_structure(&h, &lib(&spec.result)))
        }
        "omega" => {
            let steps: usize = arg(spec, 0)?;
            let omega = lib("omega");
            let mut g = omega.clone();
            let mut all = Trace::default();
            let mut fixed = true;
            for _ in 0..steps {
                let (h, t) = apply_sequence(&g, &[MoveKind::Beta], 1);
                let (h, t2) = apply_sequence(&h, &[MoveKind::FanOutGlobal], 1);
                fixed &= is_isomorphic(&h, &omega);
                all.extend(t);
                all.extend(t2);
                g = h;
            }
            (tally(&[&all]), fixed)
        }
        "reidemeister2" => {
            let eps: GroupElem = arg(spec, 0)?;
            match super::verify_reidemeister_ii(&eps) {
                Ok(t) => (tally(&[&t]), true),
                Err(_) => (BTreeMap::new(), false),
            }
        }
        "planar-beta" => {
            let v: PlanarBeta = arg(spec, 0)?;
            match verify_planar_beta(v) {
                Ok(t) => (tally(&[&t]), true),
                Err(_) => (BTreeMap::new(), false),
            }
        }
        other => return Err(LibraryError::Unknown(other.to_string())),
    };
    Ok(DemoOutcome {
        label: spec.label(),
        counts,
        expected: spec.expect.clone(),
        result: spec.result.clone(),
        result_ok,
    })
}
