//! Turning any graph into one embedded in a disk with its leaves on the
//! boundary, by sewing a λ/⋏ pair (reverse graphic β) into every crossing
//! of a straight-line drawing.

use std::collections::HashMap;
use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{EdgeId, Graph, NodeId, PortRef};
use crate::moves::{sew, Direction, MoveInstance, MoveKind, Trace};
use crate::predicates::{is_planar_in_disk_ordered, rotation};

#[derive(Clone, Debug)]
pub struct Planarized {
    pub graph: Graph,
    /// One reverse β step per crossing, in the order they were removed.
    pub trace: Trace,
    /// Crossings in the synthesized drawing.
    pub crossings: usize,
}

type Pt = (f64, f64);

/// Drawing attempts before giving up on avoiding self-crossing edges.
const MAX_ATTEMPTS: usize = 1000;

pub fn planarize(g: &Graph) -> Planarized {
    planarize_with_seed(g, 0)
}

pub fn planarize_with_seed(g: &Graph, seed: u64) -> Planarized {
    if is_planar_in_disk_ordered(g) {
        return Planarized {
            graph: g.clone(),
            trace: Trace::default(),
            crossings: 0,
        };
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let drawing = (0..MAX_ATTEMPTS)
        .map(|_| Drawing::random(g, &mut rng))
        .find(|d| !d.self_crossing())
        .expect("a drawing without self-crossing edges");
    let crossings = drawing.crossings();
    let count = crossings.len();
    let mut h = g.clone();
    let mut trace = Trace::default();
    // Pieces of each original edge, as (end parameter, current edge).
    let mut pieces: HashMap<EdgeId, Vec<(f64, EdgeId)>> =
        drawing.edges.iter().map(|(e, _)| (*e, vec![(f64::INFINITY, *e)])).collect();
    for x in crossings {
        let cur1 = piece_at(&pieces[&x.e1], x.t1);
        let cur2 = piece_at(&pieces[&x.e2], x.t2);
        let first_is_ac = x.first_is_ac;
        let (ac, db) = if first_is_ac { (cur1, cur2) } else { (cur2, cur1) };
        let (l, c) = sew(&mut h, ac, db);
        let before_ac = h.edge_at(PortRef::new(l, 1)).expect("wired");
        let after_ac = h.edge_at(PortRef::new(c, 3)).expect("wired");
        let before_db = h.edge_at(PortRef::new(c, 2)).expect("wired");
        let after_db = h.edge_at(PortRef::new(l, 2)).expect("wired");
        let (s1, s2) = if first_is_ac {
            ((before_ac, after_ac), (before_db, after_db))
        } else {
            ((before_db, after_db), (before_ac, after_ac))
        };
        split(pieces.get_mut(&x.e1).expect("known edge"), x.t1, s1);
        split(pieces.get_mut(&x.e2).expect("known edge"), x.t2, s2);
        let inst = MoveInstance::new(MoveKind::Beta, Direction::Reverse, vec![l, c], vec![ac, db]);
        trace.record(&h, &inst, 0);
    }
    Planarized {
        graph: h,
        trace,
        crossings: count,
    }
}

fn piece_at(pieces: &[(f64, EdgeId)], t: f64) -> EdgeId {
    pieces.iter().find(|(end, _)| t < *end).expect("covering piece").1
}

fn split(pieces: &mut Vec<(f64, EdgeId)>, t: f64, (before, after): (EdgeId, EdgeId)) {
    let i = pieces.iter().position(|(end, _)| t < *end).expect("covering piece");
    let end = pieces[i].0;
    pieces[i] = (t, before);
    pieces.insert(i + 1, (end, after));
}

struct Crossing {
    e1: EdgeId,
    t1: f64,
    e2: EdgeId,
    t2: f64,
    /// Whether `e1` plays the a → c role of the sewn pair.
    first_is_ac: bool,
}

struct Drawing {
    /// Polyline per edge: center, stub, stub, center.
    edges: Vec<(EdgeId, [Pt; 4])>,
}

impl Drawing {
    /// Leaves evenly on the unit circle (inputs then outputs), gates at
    /// random inside, each port a short stub in rotation order.
    fn random(g: &Graph, rng: &mut ChaCha8Rng) -> Drawing {
        let mut center: HashMap<NodeId, Pt> = HashMap::new();
        let leaves: Vec<NodeId> = g.input_ids().iter().chain(g.output_ids()).copied().collect();
        for (i, n) in leaves.iter().enumerate() {
            let a = -TAU * i as f64 / leaves.len() as f64;
            center.insert(*n, (a.cos(), a.sin()));
        }
        for n in g.node_ids() {
            center.entry(n).or_insert_with(|| {
                let r = 0.85 * rng.gen::<f64>().sqrt();
                let a = rng.gen::<f64>() * TAU;
                (r * a.cos(), r * a.sin())
            });
        }
        let mut min_dist = f64::INFINITY;
        let pts: Vec<Pt> = center.values().copied().collect();
        for (i, p) in pts.iter().enumerate() {
            for q in &pts[i + 1..] {
                min_dist = min_dist.min(dist(*p, *q));
            }
        }
        let stub_len = if min_dist.is_finite() { min_dist / 4.0 } else { 0.1 };
        let mut stub: HashMap<PortRef, Pt> = HashMap::new();
        for (n, kind) in g.nodes() {
            let c = center[&n];
            if kind.is_leaf() {
                stub.insert(PortRef::new(n, 1), c);
                continue;
            }
            let theta0 = rng.gen::<f64>() * TAU;
            let rot = rotation(kind);
            for (k, port) in rot.iter().enumerate() {
                // Clockwise is decreasing angle.
                let a = theta0 - TAU * k as f64 / rot.len() as f64;
                stub.insert(PortRef::new(n, *port), (c.0 + stub_len * a.cos(), c.1 + stub_len * a.sin()));
            }
        }
        let edges = g
            .edges()
            .map(|(id, e)| {
                (
                    id,
                    [center[&e.src.node], stub[&e.src], stub[&e.dst], center[&e.dst.node]],
                )
            })
            .collect();
        Drawing { edges }
    }

    fn self_crossing(&self) -> bool {
        self.edges
            .iter()
            .any(|(_, p)| proper_intersection(p[0], p[1], p[2], p[3]).is_some())
    }

    fn crossings(&self) -> Vec<Crossing> {
        let mut out = Vec::new();
        for (i, (e1, p)) in self.edges.iter().enumerate() {
            for (e2, q) in &self.edges[i + 1..] {
                for si in 0..3 {
                    for sj in 0..3 {
                        let Some((s, t)) = proper_intersection(p[si], p[si + 1], q[sj], q[sj + 1])
                        else {
                            continue;
                        };
                        let x = lerp(p[si], p[si + 1], s);
                        out.push(Crossing {
                            e1: *e1,
                            t1: si as f64 + s,
                            e2: *e2,
                            t2: sj as f64 + t,
                            first_is_ac: first_is_ac(x, p[si], q[sj], q[sj + 1]),
                        });
                    }
                }
            }
        }
        out
    }
}

/// At crossing `x` of segments x1 → y1 (of e1) and x2 → y2 (of e2): the
/// sewn pair has boundary a, b, c, d in clockwise order, so e1 is a → c
/// exactly when turning clockwise from e1's tail side meets e2's head side
/// first.
fn first_is_ac(x: Pt, x1: Pt, x2: Pt, y2: Pt) -> bool {
    let angle = |p: Pt| (p.1 - x.1).atan2(p.0 - x.0);
    let cw = |from: f64, to: f64| (from - to).rem_euclid(TAU);
    let a1 = angle(x1);
    cw(a1, angle(y2)) < cw(a1, angle(x2))
}

fn dist(p: Pt, q: Pt) -> f64 {
    (p.0 - q.0).hypot(p.1 - q.1)
}

fn lerp(p: Pt, q: Pt, t: f64) -> Pt {
    (p.0 + t * (q.0 - p.0), p.1 + t * (q.1 - p.1))
}

fn cross(o: Pt, a: Pt, b: Pt) -> f64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

/// Parameters of the intersection point when segments pq and rs cross at
/// a point interior to both.
fn proper_intersection(p: Pt, q: Pt, r: Pt, s: Pt) -> Option<(f64, f64)> {
    const EPS: f64 = 1e-12;
    let d1 = cross(r, s, p);
    let d2 = cross(r, s, q);
    let d3 = cross(p, q, r);
    let d4 = cross(p, q, s);
    let proper = ((d1 > EPS && d2 < -EPS) || (d1 < -EPS && d2 > EPS))
        && ((d3 > EPS && d4 < -EPS) || (d3 < -EPS && d4 > EPS));
    proper.then(|| (d1 / (d1 - d2), d3 / (d3 - d4)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn segment_crossing() {
        let hit = proper_intersection((0.0, 0.0), (1.0, 1.0), (0.0, 1.0), (1.0, 0.0));
        assert_eq!(hit, Some((0.5, 0.5)));
        assert!(proper_intersection((0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (1.0, 1.0)).is_none());
        // Shared endpoints do not count.
        assert!(proper_intersection((0.0, 0.0), (1.0, 0.0), (0.0, 0.0), (0.0, 1.0)).is_none());
    }
}
