//! Immutable simple undirected graphs without isolated vertices.
//!
//! Vertices are dense `0..n` ids. Edges are stored once, as `(min, max)`
//! pairs in lexicographic order, so every edge sum in the crate visits the
//! edges in the same order and floating-point results are reproducible.

use std::fmt;

use thiserror::Error;

pub mod families;

/// Errors raised while building a [`Graph`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph must have at least one vertex")]
    NoVertices,
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("vertex {0} is isolated")]
    IsolatedVertex(usize),
    #[error("vertex {vertex} out of range for a graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
}

/// How [`Graph::from_edge_list_with`] treats malformed pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Validation {
    /// Self-loops and repeated edges are errors.
    #[default]
    Strict,
    /// Self-loops are dropped and repeated edges collapsed.
    Permissive,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
    degrees: Vec<usize>,
    min_degree: usize,
    max_degree: usize,
}

impl Graph {
    /// Builds a graph on `n` vertices with strict validation.
    pub fn from_edge_list(n: usize, pairs: &[(usize, usize)]) -> Result<Self, GraphError> {
        Self::from_edge_list_with(n, pairs, Validation::Strict)
    }

    pub fn from_edge_list_with(
        n: usize,
        pairs: &[(usize, usize)],
        mode: Validation,
    ) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::NoVertices);
        }
        let mut edges = Vec::with_capacity(pairs.len());
        for &(u, v) in pairs {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                match mode {
                    Validation::Strict => return Err(GraphError::SelfLoop(u)),
                    Validation::Permissive => continue,
                }
            }
            edges.push((u.min(v), u.max(v)));
        }
        edges.sort_unstable();
        match mode {
            Validation::Strict => {
                if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
                    return Err(GraphError::DuplicateEdge(w[0].0, w[0].1));
                }
            }
            Validation::Permissive => edges.dedup(),
        }
        Self::from_canonical_edges(n, edges)
    }

    /// `edges` must be sorted, deduplicated `(min, max)` pairs with in-range
    /// endpoints.
    pub(crate) fn from_canonical_edges(
        n: usize,
        edges: Vec<(usize, usize)>,
    ) -> Result<Self, GraphError> {
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        let mut degrees = vec![0usize; n];
        for &(u, v) in &edges {
            degrees[u] += 1;
            degrees[v] += 1;
        }
        if let Some(u) = degrees.iter().position(|&d| d == 0) {
            return Err(GraphError::IsolatedVertex(u));
        }
        let mut adjacency: Vec<Vec<usize>> =
            degrees.iter().map(|&d| Vec::with_capacity(d)).collect();
        for &(u, v) in &edges {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        let min_degree = *degrees.iter().min().expect("n > 0");
        let max_degree = *degrees.iter().max().expect("n > 0");
        Ok(Self {
            edges,
            adjacency,
            degrees,
            min_degree,
            max_degree,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.degrees.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(min, max)` pairs in lexicographic order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn degree(&self, u: usize) -> usize {
        self.degrees[u]
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    /// Sorted neighbor list of `u`.
    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.adjacency[u]
    }

    /// `(δ, Δ)`: minimum and maximum vertex degree.
    pub fn degree_extremes(&self) -> (usize, usize) {
        (self.min_degree, self.max_degree)
    }

    pub fn min_degree(&self) -> usize {
        self.min_degree
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn is_regular(&self) -> bool {
        self.min_degree == self.max_degree
    }

    /// Vertex sets of the connected components, each sorted, ordered by
    /// smallest member.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut components = Vec::new();
        let mut stack = Vec::new();
        for root in 0..n {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            stack.push(root);
            let mut component = Vec::new();
            while let Some(u) = stack.pop() {
                component.push(u);
                for &v in &self.adjacency[u] {
                    if !seen[v] {
                        seen[v] = true;
                        stack.push(v);
                    }
                }
            }
            component.sort_unstable();
            components.push(component);
        }
        components
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() == 1
    }

    /// The most specific [`ExtremalClass`] this graph belongs to.
    pub fn classify_extremal(&self) -> ExtremalClass {
        let (min, max) = self.degree_extremes();
        if max == 1 {
            return ExtremalClass::UnionOfP2;
        }
        if min == max {
            return ExtremalClass::Regular { degree: min };
        }
        if self.edges_join(min, max) {
            return ExtremalClass::Biregular {
                max_degree: max,
                min_degree: min,
            };
        }
        let components = self.connected_components();
        let shapes: Vec<ComponentShape> =
            components.iter().map(|c| self.component_shape(c)).collect();
        if shapes.iter().all(|s| matches!(s, ComponentShape::Regular(_))) {
            let mut degrees: Vec<usize> = shapes
                .iter()
                .map(|s| match s {
                    ComponentShape::Regular(d) => *d,
                    _ => unreachable!(),
                })
                .collect();
            degrees.sort_unstable();
            degrees.dedup();
            return ExtremalClass::ComponentwiseRegular { degrees };
        }
        if shapes.iter().all(|s| !matches!(s, ComponentShape::Irregular)) {
            return ExtremalClass::RegularOrBiregularComponents;
        }
        ExtremalClass::None
    }

    /// Whether the graph belongs to `tag`, following the implications
    /// `UnionOfP2 ⇒ Regular ⇒ ComponentwiseRegular ⇒ RegularOrBiregularComponents`
    /// and `Biregular ⇒ RegularOrBiregularComponents`.
    pub fn satisfies(&self, tag: ClassTag) -> bool {
        let class = self.classify_extremal();
        use ClassTag as T;
        match (tag, class.tag()) {
            (T::None, _) => true,
            (t, c) if t == c => true,
            (T::Regular, T::UnionOfP2) => true,
            (T::ComponentwiseRegular, T::UnionOfP2 | T::Regular) => true,
            (
                T::RegularOrBiregularComponents,
                T::UnionOfP2 | T::Regular | T::Biregular | T::ComponentwiseRegular,
            ) => true,
            _ => false,
        }
    }

    /// Regular, or bipartite with every edge joining a vertex of degree δ to
    /// one of degree Δ.
    pub fn is_regular_or_biregular(&self) -> bool {
        self.is_regular() || self.edges_join(self.min_degree, self.max_degree)
    }

    /// Copy of the graph with vertex `u` renamed to `perm[u]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self, GraphError> {
        let n = self.vertex_count();
        let pairs: Vec<(usize, usize)> = self
            .edges
            .iter()
            .map(|&(u, v)| (perm[u], perm[v]))
            .collect();
        Self::from_edge_list(n, &pairs)
    }

    /// Disjoint union; vertices of `other` are shifted by `self.vertex_count()`.
    pub fn disjoint_union(&self, other: &Graph) -> Self {
        let shift = self.vertex_count();
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|&(u, v)| (u + shift, v + shift)));
        Self::from_canonical_edges(shift + other.vertex_count(), edges)
            .expect("union of valid graphs is valid")
    }

    fn edges_join(&self, low: usize, high: usize) -> bool {
        low < high
            && self.edges.iter().all(|&(u, v)| {
                let (du, dv) = (self.degrees[u], self.degrees[v]);
                (du == low && dv == high) || (du == high && dv == low)
            })
    }

    fn component_shape(&self, component: &[usize]) -> ComponentShape {
        let degs = component.iter().map(|&u| self.degrees[u]);
        let low = degs.clone().min().expect("components are non-empty");
        let high = degs.max().expect("components are non-empty");
        if low == high {
            return ComponentShape::Regular(low);
        }
        let biregular = component.iter().all(|&u| {
            let du = self.degrees[u];
            self.adjacency[u].iter().all(|&v| {
                let dv = self.degrees[v];
                (du == low && dv == high) || (du == high && dv == low)
            })
        });
        if biregular {
            ComponentShape::Biregular
        } else {
            ComponentShape::Irregular
        }
    }
}

enum ComponentShape {
    Regular(usize),
    Biregular,
    Irregular,
}

/// Structural classes that characterize equality cases of the bounds.
///
/// Variants are ordered from most to least specific; [`Graph::classify_extremal`]
/// returns the first that applies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExtremalClass {
    /// Every component is a single edge.
    UnionOfP2,
    Regular {
        degree: usize,
    },
    /// Bipartite, one side of degree `max_degree`, the other of `min_degree`.
    Biregular {
        max_degree: usize,
        min_degree: usize,
    },
    /// Every component is regular; `degrees` lists the distinct degrees.
    ComponentwiseRegular {
        degrees: Vec<usize>,
    },
    RegularOrBiregularComponents,
    None,
}

impl ExtremalClass {
    pub fn tag(&self) -> ClassTag {
        match self {
            Self::UnionOfP2 => ClassTag::UnionOfP2,
            Self::Regular { .. } => ClassTag::Regular,
            Self::Biregular { .. } => ClassTag::Biregular,
            Self::ComponentwiseRegular { .. } => ClassTag::ComponentwiseRegular,
            Self::RegularOrBiregularComponents => ClassTag::RegularOrBiregularComponents,
            Self::None => ClassTag::None,
        }
    }
}

impl fmt::Display for ExtremalClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Regular { degree } => write!(f, "Regular({degree})"),
            Self::Biregular {
                max_degree,
                min_degree,
            } => write!(f, "Biregular({max_degree},{min_degree})"),
            Self::ComponentwiseRegular { degrees } => {
                let list: Vec<String> = degrees.iter().map(ToString::to_string).collect();
                write!(f, "ComponentwiseRegular({})", list.join(";"))
            }
            other => write!(f, "{}", other.tag()),
        }
    }
}

/// Witness-free form of [`ExtremalClass`], used for predicted equality cases.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClassTag {
    UnionOfP2,
    Regular,
    Biregular,
    ComponentwiseRegular,
    RegularOrBiregularComponents,
    None,
}

impl ClassTag {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::UnionOfP2 => "UnionOfP2",
            Self::Regular => "Regular",
            Self::Biregular => "Biregular",
            Self::ComponentwiseRegular => "ComponentwiseRegular",
            Self::RegularOrBiregularComponents => "RegularOrBiregularComponents",
            Self::None => "None",
        }
    }
}

impl fmt::Display for ClassTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}
