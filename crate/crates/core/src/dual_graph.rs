//! Dual graphs of nodal curves, smoothing surgery, and one-edge boundary strata.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::divisor_algebra::{normalize_set, rep_is_valid, Markings};
use crate::error::{Error, Result};

/// Closure computation refuses graphs with more edges than this.
pub const MAX_SMOOTHING_EDGES: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Vertex {
    pub id: u32,
    pub g: u32,
}

/// Vertices are components with their geometric genus, edges are nodes
/// (loops allowed, parallel edges allowed), legs are markings.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "GraphWire", into = "GraphWire")]
pub struct DualGraph {
    vertices: Vec<Vertex>,
    /// Sorted; each pair is stored with the smaller id first.
    edges: Vec<(u32, u32)>,
    legs: BTreeMap<u32, u32>,
}

#[derive(Serialize, Deserialize)]
struct GraphWire {
    vertices: Vec<Vertex>,
    edges: Vec<[u32; 2]>,
    #[serde(default)]
    legs: BTreeMap<u32, u32>,
}

impl TryFrom<GraphWire> for DualGraph {
    type Error = Error;
    fn try_from(w: GraphWire) -> Result<Self> {
        DualGraph::new(
            w.vertices,
            w.edges.into_iter().map(|[a, b]| (a, b)).collect(),
            w.legs,
        )
    }
}

impl From<DualGraph> for GraphWire {
    fn from(g: DualGraph) -> Self {
        GraphWire {
            vertices: g.vertices,
            edges: g.edges.into_iter().map(|(a, b)| [a, b]).collect(),
            legs: g.legs,
        }
    }
}

fn edge_key(a: u32, b: u32) -> (u32, u32) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

impl DualGraph {
    pub fn new(vertices: Vec<Vertex>, edges: Vec<(u32, u32)>, legs: BTreeMap<u32, u32>) -> Result<Self> {
        let ids: BTreeSet<u32> = vertices.iter().map(|v| v.id).collect();
        if ids.len() != vertices.len() {
            return Err(Error::InvalidInput("duplicate vertex id".into()));
        }
        if vertices.is_empty() {
            return Err(Error::InvalidInput("dual graph needs a vertex".into()));
        }
        for &(a, b) in &edges {
            if !ids.contains(&a) || !ids.contains(&b) {
                return Err(Error::InvalidInput(format!("edge ({a}, {b}) has an unknown endpoint")));
            }
        }
        for (m, v) in &legs {
            if !ids.contains(v) {
                return Err(Error::InvalidInput(format!("leg {m} on unknown vertex {v}")));
            }
        }
        let n = legs.len() as u32;
        if legs.keys().copied().ne(1..=n) {
            return Err(Error::InvalidInput("legs must be labelled 1..n".into()));
        }
        let mut vertices = vertices;
        vertices.sort();
        let mut edges: Vec<(u32, u32)> = edges.into_iter().map(|(a, b)| edge_key(a, b)).collect();
        edges.sort_unstable();
        Ok(DualGraph {
            vertices,
            edges,
            legs,
        })
    }

    /// Two vertices of genera `g1`, `g2` joined by `k` parallel edges, no legs.
    pub fn banana(g1: u32, g2: u32, k: usize) -> Self {
        DualGraph::new(
            vec![Vertex { id: 0, g: g1 }, Vertex { id: 1, g: g2 }],
            vec![(0, 1); k],
            BTreeMap::new(),
        )
        .expect("well-formed")
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn legs(&self) -> &BTreeMap<u32, u32> {
        &self.legs
    }

    pub fn n_legs(&self) -> u32 {
        self.legs.len() as u32
    }

    fn genus_of(&self, id: u32) -> u32 {
        self.vertices.iter().find(|v| v.id == id).map_or(0, |v| v.g)
    }

    /// Valence with loops counted twice.
    pub fn degree(&self, id: u32) -> usize {
        self.edges
            .iter()
            .map(|&(a, b)| usize::from(a == id) + usize::from(b == id))
            .sum()
    }

    pub fn legs_at(&self, id: u32) -> Markings {
        Markings::from_labels(self.legs.iter().filter(|(_, v)| **v == id).map(|(m, _)| *m))
            .unwrap_or_default()
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::from([self.vertices[0].id]);
        while let Some(v) = queue.pop_front() {
            if !seen.insert(v) {
                continue;
            }
            for &(a, b) in &self.edges {
                if a == v && !seen.contains(&b) {
                    queue.push_back(b);
                }
                if b == v && !seen.contains(&a) {
                    queue.push_back(a);
                }
            }
        }
        seen.len() == self.vertices.len()
    }

    /// Σ g(v) + |E| − |V| + 1.
    pub fn arithmetic_genus(&self) -> Result<u32> {
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        let sum: u32 = self.vertices.iter().map(|v| v.g).sum();
        Ok(sum + self.edges.len() as u32 + 1 - self.vertices.len() as u32)
    }

    /// 2g(v) − 2 + deg(v) + #legs(v) > 0 at every vertex.
    pub fn is_stable(&self) -> bool {
        self.unstable_vertices().is_empty()
    }

    pub fn unstable_vertices(&self) -> Vec<u32> {
        self.vertices
            .iter()
            .filter(|v| {
                2 * i64::from(v.g) - 2 + self.degree(v.id) as i64 + i64::from(self.legs_at(v.id).len()) <= 0
            })
            .map(|v| v.id)
            .collect()
    }

    /// Removes one copy of edge `e`. A loop raises the genus of its vertex; a
    /// non-loop edge merges its endpoints into one vertex carrying the sum of
    /// the genera (the smaller id survives).
    pub fn smooth_edge(&self, e: (u32, u32)) -> Result<DualGraph> {
        let key = edge_key(e.0, e.1);
        let pos = self
            .edges
            .iter()
            .position(|x| *x == key)
            .ok_or(Error::EdgeNotFound(e.0, e.1))?;
        let mut edges = self.edges.clone();
        edges.remove(pos);
        let (a, b) = key;
        let mut vertices = self.vertices.clone();
        let mut legs = self.legs.clone();
        if a == b {
            for v in vertices.iter_mut().filter(|v| v.id == a) {
                v.g += 1;
            }
        } else {
            let gb = self.genus_of(b);
            vertices.retain(|v| v.id != b);
            for v in vertices.iter_mut().filter(|v| v.id == a) {
                v.g += gb;
            }
            for (x, y) in edges.iter_mut() {
                if *x == b {
                    *x = a;
                }
                if *y == b {
                    *y = a;
                }
            }
            for v in legs.values_mut() {
                if *v == b {
                    *v = a;
                }
            }
        }
        DualGraph::new(vertices, edges, legs)
    }

    /// Isomorphism-invariant relabelling: vertices renumbered 0..|V| in the
    /// order minimizing (genera, edges, legs) over all relabellings that keep
    /// vertices sorted by (genus, degree, legs).
    pub fn canonical_form(&self) -> DualGraph {
        let invariant = |v: &Vertex| (v.g, self.degree(v.id), self.legs_at(v.id));
        let mut classes: BTreeMap<_, Vec<u32>> = BTreeMap::new();
        for v in &self.vertices {
            classes.entry(invariant(v)).or_default().push(v.id);
        }
        let blocks: Vec<Vec<u32>> = classes.into_values().collect();

        let mut best: Option<DualGraph> = None;
        let per_block = blocks.iter().map(|b| b.iter().copied().permutations(b.len()).collect::<Vec<_>>());
        for choice in per_block.multi_cartesian_product() {
            let order: Vec<u32> = choice.into_iter().flatten().collect();
            let relabel: BTreeMap<u32, u32> =
                order.iter().enumerate().map(|(new, old)| (*old, new as u32)).collect();
            let candidate = self.relabelled(&relabel);
            if best.as_ref().is_none_or(|b| candidate < *b) {
                best = Some(candidate);
            }
        }
        // multi_cartesian_product of zero iterators yields nothing; a graph always has a vertex
        best.unwrap_or_else(|| self.clone())
    }

    fn relabelled(&self, map: &BTreeMap<u32, u32>) -> DualGraph {
        let mut vertices: Vec<Vertex> = self
            .vertices
            .iter()
            .map(|v| Vertex { id: map[&v.id], g: v.g })
            .collect();
        vertices.sort();
        let mut edges: Vec<(u32, u32)> = self
            .edges
            .iter()
            .map(|&(a, b)| edge_key(map[&a], map[&b]))
            .collect();
        edges.sort_unstable();
        let legs = self.legs.iter().map(|(m, v)| (*m, map[v])).collect();
        DualGraph {
            vertices,
            edges,
            legs,
        }
    }

    /// Every graph reachable by iterated smoothing, including the graph itself,
    /// up to isomorphism.
    pub fn all_smoothings(&self) -> Result<BTreeSet<DualGraph>> {
        if self.edges.len() > MAX_SMOOTHING_EDGES {
            return Err(Error::TooLarge {
                edges: self.edges.len(),
                limit: MAX_SMOOTHING_EDGES,
            });
        }
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::from([self.canonical_form()]);
        while let Some(g) = queue.pop_front() {
            if seen.contains(&g) {
                continue;
            }
            let distinct: BTreeSet<(u32, u32)> = g.edges.iter().copied().collect();
            for e in distinct {
                let h = g.smooth_edge(e)?.canonical_form();
                if !seen.contains(&h) {
                    queue.push_back(h);
                }
            }
            seen.insert(g);
        }
        Ok(seen)
    }
}

/// One-edge boundary strata of M̄_{g,n}.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stratum {
    DeltaIrr,
    /// Δᵢ: union of Δ_{i:S} over all S.
    Delta(u32),
    DeltaMarked(u32, Markings),
}

impl Stratum {
    /// Parses `irr`, `<i>`, or `<i>:<m1,m2,...>` (e.g. `0:1,2`, `3:`).
    pub fn parse(text: &str) -> Result<Self> {
        let s = text.trim();
        let bad = || Error::InvalidStratum(format!("cannot parse {text:?}"));
        if s.eq_ignore_ascii_case("irr") || s.eq_ignore_ascii_case("delta_irr") {
            return Ok(Stratum::DeltaIrr);
        }
        match s.split_once(':') {
            None => s.parse().map(Stratum::Delta).map_err(|_| bad()),
            Some((i, set)) => {
                let i = i.trim().parse().map_err(|_| bad())?;
                let set = set.trim().trim_start_matches('{').trim_end_matches('}');
                let labels: Vec<u32> = if set.trim().is_empty() {
                    Vec::new()
                } else {
                    set.split(',')
                        .map(|x| x.trim().parse().map_err(|_| bad()))
                        .collect::<Result<_>>()?
                };
                let m = Markings::from_labels(labels).ok_or_else(bad)?;
                Ok(Stratum::DeltaMarked(i, m))
            }
        }
    }
}

/// Whether a curve with dual graph `graph` lies in `stratum`, i.e. some
/// smoothing of the graph (possibly the graph itself) is the stratum's
/// one-edge graph.
pub fn lies_in_boundary(graph: &DualGraph, stratum: Stratum) -> Result<bool> {
    let g = graph.arithmetic_genus()?;
    let n = graph.n_legs();
    match stratum {
        Stratum::DeltaIrr => {
            if g < 1 {
                return Err(Error::InvalidStratum("delta_irr needs genus >= 1".into()));
            }
        }
        Stratum::Delta(i) => {
            let any_valid = Markings::all_subsets(n).any(|s| rep_is_valid(g, n, i, s));
            if i > g || !any_valid {
                return Err(Error::InvalidStratum(format!("delta_{i} on genus {g} with {n} markings")));
            }
        }
        Stratum::DeltaMarked(i, s) => {
            normalize_set(g, n, i, s).map_err(|e| Error::InvalidStratum(e.to_string()))?;
        }
    }

    for h in graph.all_smoothings()? {
        let matched = match stratum {
            Stratum::DeltaIrr => {
                h.vertices.len() == 1 && h.edges.len() == 1 && h.vertices[0].g + 1 == g
            }
            Stratum::Delta(i) => one_edge_sides(&h).is_some_and(|[(ga, sa), (gb, sb)]| {
                (ga == i && rep_is_valid(g, n, ga, sa)) || (gb == i && rep_is_valid(g, n, gb, sb))
            }),
            Stratum::DeltaMarked(i, s) => one_edge_sides(&h).is_some_and(|[(ga, sa), _]| {
                match (normalize_set(g, n, ga, sa), normalize_set(g, n, i, s)) {
                    (Ok(x), Ok(y)) => x == y,
                    _ => false,
                }
            }),
        };
        if matched {
            return Ok(true);
        }
    }
    Ok(false)
}

/// (genus, legs) on each side when `h` is two vertices joined by a single edge.
fn one_edge_sides(h: &DualGraph) -> Option<[(u32, Markings); 2]> {
    if h.vertices.len() != 2 || h.edges.len() != 1 || h.edges[0].0 == h.edges[0].1 {
        return None;
    }
    let [a, b] = [h.vertices[0], h.vertices[1]];
    Some([(a.g, h.legs_at(a.id)), (b.g, h.legs_at(b.id))])
}

/// One instance of the genus-13 degeneration families.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphFixture {
    pub family: u8,
    /// Edge split (a, b) with a + b = 8 for families 3 and 4.
    pub split: Option<(u32, u32)>,
    pub graph: DualGraph,
}

/// The four families of dual graphs of the genus-13 pencil members:
///
/// 1. genus 0 and genus 6 components meeting in 8 points;
/// 2. as 1 with genus 5 and a self-node on it;
/// 3. a genus-6 component meeting two rational components in a and b points,
///    the rational components meeting each other once;
/// 4. as 3 with genus 5 and a self-node.
pub fn paper_graph_fixtures() -> Vec<GraphFixture> {
    let mut out = vec![
        GraphFixture {
            family: 1,
            split: None,
            graph: DualGraph::banana(0, 6, 8),
        },
        GraphFixture {
            family: 2,
            split: None,
            graph: {
                let mut edges = vec![(0, 1); 8];
                edges.push((1, 1));
                DualGraph::new(
                    vec![Vertex { id: 0, g: 0 }, Vertex { id: 1, g: 5 }],
                    edges,
                    BTreeMap::new(),
                )
                .expect("well-formed")
            },
        },
    ];
    for (family, big, self_node) in [(3u8, 6u32, false), (4, 5, true)] {
        for a in 0..=8u32 {
            let b = 8 - a;
            let mut edges = Vec::new();
            edges.extend(std::iter::repeat_n((0, 1), a as usize));
            edges.extend(std::iter::repeat_n((0, 2), b as usize));
            edges.push((1, 2));
            if self_node {
                edges.push((0, 0));
            }
            let graph = DualGraph::new(
                vec![
                    Vertex { id: 0, g: big },
                    Vertex { id: 1, g: 0 },
                    Vertex { id: 2, g: 0 },
                ],
                edges,
                BTreeMap::new(),
            )
            .expect("well-formed");
            out.push(GraphFixture {
                family,
                split: Some((a, b)),
                graph,
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single(g: u32, loops: usize) -> DualGraph {
        DualGraph::new(vec![Vertex { id: 0, g }], vec![(0, 0); loops], BTreeMap::new()).unwrap()
    }

    #[test]
    fn genus_examples() {
        let f = paper_graph_fixtures();
        assert_eq!(f[0].graph.arithmetic_genus().unwrap(), 13);
        assert_eq!(f[1].graph.arithmetic_genus().unwrap(), 13);
        assert_eq!(single(7, 0).arithmetic_genus().unwrap(), 7);
        let disc = DualGraph::new(
            vec![Vertex { id: 0, g: 1 }, Vertex { id: 1, g: 1 }],
            vec![],
            BTreeMap::new(),
        )
        .unwrap();
        assert!(matches!(disc.arithmetic_genus(), Err(Error::Disconnected)));
    }

    #[test]
    fn smoothing_examples() {
        let g = DualGraph::banana(0, 6, 8);
        let h = g.smooth_edge((1, 0)).unwrap();
        assert_eq!(h.canonical_form(), single(6, 7).canonical_form());
        assert_eq!(h.arithmetic_genus().unwrap(), 13);

        let f2 = &paper_graph_fixtures()[1].graph;
        let h = f2.smooth_edge((1, 1)).unwrap();
        assert_eq!(h.vertices()[1].g, 6);
        assert_eq!(h.edges().len(), 8);

        assert!(matches!(g.smooth_edge((0, 0)), Err(Error::EdgeNotFound(0, 0))));
    }

    #[test]
    fn smoothing_everything_gives_smooth_genus13() {
        for fx in paper_graph_fixtures() {
            let mut g = fx.graph.clone();
            while let Some(&e) = g.edges().first() {
                g = g.smooth_edge(e).unwrap();
            }
            assert_eq!(g, single(13, 0));
        }
    }

    #[test]
    fn closure_of_banana() {
        let all = DualGraph::banana(0, 6, 8).all_smoothings().unwrap();
        assert_eq!(all.len(), 9);
        for j in 0..=7u32 {
            assert!(all.contains(&single(6 + j, 7 - j as usize).canonical_form()));
        }
        let one = single(11, 1).all_smoothings().unwrap();
        assert_eq!(one.len(), 2);
        assert!(one.contains(&single(12, 0).canonical_form()));
    }

    #[test]
    fn closure_is_closed_and_contains_no_separating_one_edge_graph() {
        for fx in paper_graph_fixtures().into_iter().filter(|f| f.family == 3) {
            let all = fx.graph.all_smoothings().unwrap();
            for h in &all {
                for &e in h.edges() {
                    assert!(all.contains(&h.smooth_edge(e).unwrap().canonical_form()));
                }
                if let Some([(ga, _), (gb, _)]) = one_edge_sides(h) {
                    // only the unstable Δ_0 shape (rational tail) can appear
                    assert!(ga == 0 || gb == 0, "{h:?}");
                }
            }
        }
    }

    #[test]
    fn too_large() {
        let g = DualGraph::banana(0, 0, 17);
        assert!(matches!(g.all_smoothings(), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn canonical_form_ignores_labels() {
        let a = DualGraph::new(
            vec![Vertex { id: 5, g: 0 }, Vertex { id: 9, g: 6 }],
            vec![(9, 5), (5, 9)],
            BTreeMap::new(),
        )
        .unwrap();
        let b = DualGraph::new(
            vec![Vertex { id: 0, g: 6 }, Vertex { id: 1, g: 0 }],
            vec![(0, 1), (1, 0)],
            BTreeMap::new(),
        )
        .unwrap();
        assert_eq!(a.canonical_form(), b.canonical_form());
        assert_ne!(a.canonical_form(), DualGraph::banana(1, 5, 2).canonical_form());
    }

    #[test]
    fn boundary_membership() {
        let g = DualGraph::banana(0, 6, 8);
        assert!(lies_in_boundary(&g, Stratum::DeltaIrr).unwrap());
        for i in 1..=6 {
            assert!(!lies_in_boundary(&g, Stratum::Delta(i)).unwrap());
        }
        let d3 = DualGraph::banana(3, 10, 1);
        assert!(lies_in_boundary(&d3, Stratum::Delta(3)).unwrap());
        assert!(lies_in_boundary(&d3, Stratum::Delta(10)).unwrap());
        assert!(!lies_in_boundary(&d3, Stratum::Delta(4)).unwrap());
        assert!(!lies_in_boundary(&d3, Stratum::DeltaIrr).unwrap());
        assert!(matches!(
            lies_in_boundary(&g, Stratum::Delta(0)),
            Err(Error::InvalidStratum(_))
        ));
        assert!(lies_in_boundary(&g, Stratum::Delta(14)).is_err());
    }

    #[test]
    fn marked_strata() {
        let mut legs = BTreeMap::new();
        legs.insert(1, 0);
        legs.insert(2, 1);
        let g = DualGraph::new(
            vec![Vertex { id: 0, g: 2 }, Vertex { id: 1, g: 3 }],
            vec![(0, 1)],
            legs,
        )
        .unwrap();
        let s = |v: &[u32]| Markings::from_labels(v.iter().copied()).unwrap();
        assert!(lies_in_boundary(&g, Stratum::DeltaMarked(2, s(&[1]))).unwrap());
        assert!(lies_in_boundary(&g, Stratum::DeltaMarked(3, s(&[2]))).unwrap());
        assert!(!lies_in_boundary(&g, Stratum::DeltaMarked(2, s(&[2]))).unwrap());
        assert!(lies_in_boundary(&g, Stratum::Delta(2)).unwrap());
    }

    #[test]
    fn fixtures_shape() {
        let f = paper_graph_fixtures();
        assert_eq!(f.len(), 2 + 2 * 9);
        for fx in &f {
            assert_eq!(fx.graph.arithmetic_genus().unwrap(), 13, "{fx:?}");
        }
        assert!(f[0].graph.is_stable());
        assert!(f[1].graph.is_stable());
        // a rational component meeting the rest in at most two points is unstable
        let unstable: Vec<_> = f
            .iter()
            .filter(|fx| !fx.graph.is_stable())
            .map(|fx| (fx.family, fx.split.unwrap().0))
            .collect();
        assert_eq!(
            unstable,
            vec![(3, 0), (3, 1), (3, 7), (3, 8), (4, 0), (4, 1), (4, 7), (4, 8)]
        );
    }

    #[test]
    fn stratum_parsing() {
        assert_eq!(Stratum::parse("irr").unwrap(), Stratum::DeltaIrr);
        assert_eq!(Stratum::parse("3").unwrap(), Stratum::Delta(3));
        assert_eq!(
            Stratum::parse("0:{1,2}").unwrap(),
            Stratum::DeltaMarked(0, Markings::from_labels([1, 2]).unwrap())
        );
        assert_eq!(Stratum::parse("1:").unwrap(), Stratum::DeltaMarked(1, Markings::empty()));
        assert!(Stratum::parse("x").is_err());
    }

    #[test]
    fn graph_json() {
        let j = r#"{"vertices":[{"id":0,"g":0},{"id":1,"g":6}],"edges":[[0,1],[1,0]],"legs":{}}"#;
        let g: DualGraph = serde_json::from_str(j).unwrap();
        assert_eq!(g, DualGraph::banana(0, 6, 2));
        let v = serde_json::to_value(&g).unwrap();
        assert_eq!(v["edges"], serde_json::json!([[0, 1], [0, 1]]));
        let bad = r#"{"vertices":[{"id":0,"g":0}],"edges":[[0,3]]}"#;
        assert!(serde_json::from_str::<DualGraph>(bad).is_err());
    }
}
