//! Systolic triangulated disks and a small corpus of non-systolic complexes.
//!
//! A disk is grown layer by layer around a center. Layer `k` is a cycle; each
//! of its vertices already has one or two neighbours in layer `k - 1` and two
//! in layer `k`, and receives a fan of new neighbours in layer `k + 1` until
//! it reaches its prescribed degree. Consecutive fans share their end vertex,
//! which closes the triangle spanned by two consecutive layer-`k` vertices.
//! Interior vertices therefore have a cycle of length equal to their degree as
//! link, and the last layer is the boundary.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::SimplicialComplex2;
use crate::error::{Error, Result};
use crate::graph::Graph;

pub const MIN_DEGREE: u32 = 6;

/// How interior degrees are chosen.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DegreeRule {
    /// Every interior vertex has this degree.
    Constant(u32),
    /// Entry `k` is the degree of the vertices of layer `k`; the last entry
    /// repeats for deeper layers.
    PerLayer(Vec<u32>),
    /// Each interior vertex draws its degree uniformly from this set.
    Random(Vec<u32>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiskSpec {
    pub radius: u32,
    pub degree_rule: DegreeRule,
    pub seed: u64,
}

impl DiskSpec {
    pub fn constant(degree: u32, radius: u32) -> Self {
        Self { radius, degree_rule: DegreeRule::Constant(degree), seed: 0 }
    }

    pub fn random(degrees: Vec<u32>, radius: u32, seed: u64) -> Self {
        Self { radius, degree_rule: DegreeRule::Random(degrees), seed }
    }

    pub fn validate(&self) -> Result<()> {
        let degrees: &[u32] = match &self.degree_rule {
            DegreeRule::Constant(d) => std::slice::from_ref(d),
            DegreeRule::PerLayer(ds) | DegreeRule::Random(ds) => {
                if ds.is_empty() {
                    return Err(Error::InvalidSpec("empty degree list".into()));
                }
                ds
            }
        };
        match degrees.iter().find(|&&d| d < MIN_DEGREE) {
            Some(d) => Err(Error::InvalidSpec(format!(
                "interior degree {d} is below {MIN_DEGREE}; links would have girth < 6"
            ))),
            None => Ok(()),
        }
    }
}

/// A generated disk and its center vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Disk {
    pub complex: SimplicialComplex2,
    pub center: usize,
    /// Layer (combinatorial distance from the center) of each vertex.
    pub layer: Vec<u32>,
}

struct Builder {
    edges: Vec<(usize, usize)>,
    triangles: Vec<[usize; 3]>,
    layer: Vec<u32>,
}

impl Builder {
    fn vertex(&mut self, layer: u32) -> usize {
        self.layer.push(layer);
        self.layer.len() - 1
    }

    fn triangle(&mut self, a: usize, b: usize, c: usize) {
        self.triangles.push([a, b, c]);
    }
}

struct Degrees<'a> {
    rule: &'a DegreeRule,
    rng: ChaCha8Rng,
}

impl Degrees<'_> {
    fn next(&mut self, layer: u32) -> u32 {
        match self.rule {
            DegreeRule::Constant(d) => *d,
            DegreeRule::PerLayer(ds) => ds[(layer as usize).min(ds.len() - 1)],
            DegreeRule::Random(ds) => ds[self.rng.gen_range(0..ds.len())],
        }
    }
}

/// Builds a systolic triangulated disk.
pub fn triangulated_disk(spec: &DiskSpec) -> Result<Disk> {
    spec.validate()?;
    let mut degrees = Degrees { rule: &spec.degree_rule, rng: ChaCha8Rng::seed_from_u64(spec.seed) };
    let mut b = Builder { edges: Vec::new(), triangles: Vec::new(), layer: Vec::new() };
    let center = b.vertex(0);

    if spec.radius > 0 {
        let d0 = degrees.next(0) as usize;
        let ring: Vec<usize> = (0..d0).map(|_| b.vertex(1)).collect();
        for i in 0..d0 {
            let (x, y) = (ring[i], ring[(i + 1) % d0]);
            b.edges.push((center, x));
            b.edges.push((x, y));
            b.triangle(center, x, y);
        }
        // number of inner neighbours of each vertex of the current layer
        let mut cur = ring;
        let mut inner = vec![1u32; d0];

        for k in 1..spec.radius {
            let m = cur.len();
            let fans: Vec<usize> = (0..m)
                .map(|i| {
                    let deg = degrees.next(k);
                    (deg - 2 - inner[i]) as usize
                })
                .collect();
            // new layer in cyclic order: privates of fan i, then the vertex
            // shared between fan i and fan i + 1
            let mut next = Vec::new();
            let mut next_inner = Vec::new();
            let mut shared = Vec::with_capacity(m);
            let mut privates: Vec<Vec<usize>> = Vec::with_capacity(m);
            for &len in &fans {
                let ps: Vec<usize> = (0..len - 2).map(|_| b.vertex(k + 1)).collect();
                next.extend_from_slice(&ps);
                next_inner.extend(std::iter::repeat_n(1, ps.len()));
                let s = b.vertex(k + 1);
                next.push(s);
                next_inner.push(2);
                privates.push(ps);
                shared.push(s);
            }
            for i in 0..m {
                let x = cur[i];
                let mut fan = Vec::with_capacity(fans[i]);
                fan.push(shared[(i + m - 1) % m]);
                fan.extend_from_slice(&privates[i]);
                fan.push(shared[i]);
                for &f in &fan {
                    b.edges.push((x, f));
                }
                for w in fan.windows(2) {
                    b.edges.push((w[0], w[1]));
                    b.triangle(x, w[0], w[1]);
                }
                b.triangle(x, cur[(i + 1) % m], shared[i]);
            }
            cur = next;
            inner = next_inner;
        }
    }

    let mut graph = Graph::with_vertices(b.layer.len());
    for &(x, y) in &b.edges {
        graph.add_edge(x, y)?;
    }
    let complex = SimplicialComplex2::new(graph, b.triangles)?;
    Ok(Disk { complex, center, layer: b.layer })
}

/// The degree-6 disk: a hexagonal patch of the flat triangulated plane.
pub fn flat_plane_disk(radius: u32) -> Disk {
    triangulated_disk(&DiskSpec::constant(6, radius)).expect("degree 6 is valid")
}

/// Truncation to radius `radius` of the systolic development for the cyclic
/// group of order `n` with one generator, whose Cayley graph is an `n`-cycle:
/// the constant-degree-`n` triangulated disk.
pub fn cyclic_bs_development(n: u32, radius: u32) -> Result<Disk> {
    triangulated_disk(&DiskSpec::constant(n, radius))
}

/// Which part of the systolicity test a corpus complex is meant to violate.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum FailureTag {
    LinkGirth,
    Flagness,
}

impl FailureTag {
    /// Certificate kind emitted by `verify_systolic` for this failure.
    pub fn certificate_kind(self) -> &'static str {
        match self {
            FailureTag::LinkGirth => "link-girth",
            FailureTag::Flagness => "flagness",
        }
    }
}

/// A named non-systolic complex with the failure it should produce.
#[derive(Clone, Debug)]
pub struct Counterexample {
    pub name: &'static str,
    pub complex: SimplicialComplex2,
    pub tag: FailureTag,
}

/// Fixed negative corpus: the 4-wheel, an empty triangle, and the boundary
/// of a tetrahedron.
pub fn non_systolic_counterexamples() -> Vec<Counterexample> {
    let wheel = {
        let g = Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (2, 3), (3, 4), (4, 1)]).expect("valid");
        SimplicialComplex2::new(g, [[0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 1]]).expect("valid")
    };
    let empty_triangle = {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).expect("valid");
        SimplicialComplex2::new(g, []).expect("valid")
    };
    let tetrahedron = {
        let g = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).expect("valid");
        SimplicialComplex2::new(g, [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]).expect("valid")
    };
    vec![
        Counterexample { name: "four-wheel", complex: wheel, tag: FailureTag::LinkGirth },
        Counterexample { name: "empty-triangle", complex: empty_triangle, tag: FailureTag::Flagness },
        Counterexample { name: "tetrahedron-boundary", complex: tetrahedron, tag: FailureTag::LinkGirth },
    ]
}
