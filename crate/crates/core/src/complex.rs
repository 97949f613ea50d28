//! Simplicial complexes stored by their facets.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::{Vertex, VertexSet};

/// A simplicial complex on an explicit ground set.
///
/// No facets means the void complex (not even the empty face); the single facet `∅`
/// gives the complex `{∅}`. The ground set may contain vertices that are not faces.
pub struct SimplicialComplex {
    ground: VertexSet,
    facets: Vec<VertexSet>,
    table: OnceLock<Arc<FaceTable>>,
}

/// Every face, grouped by cardinality, each group in lexicographic order.
#[derive(Debug)]
pub struct FaceTable {
    by_size: Vec<Vec<VertexSet>>,
    all: HashSet<VertexSet>,
}

impl FaceTable {
    /// Faces with exactly `size` vertices (dimension `size - 1`).
    pub fn of_size(&self, size: usize) -> &[VertexSet] {
        self.by_size.get(size).map_or(&[], |v| v.as_slice())
    }

    pub fn contains(&self, face: &VertexSet) -> bool {
        self.all.contains(face)
    }

    pub fn len(&self) -> usize {
        self.all.len()
    }

    pub fn is_empty(&self) -> bool {
        self.all.is_empty()
    }

    /// Largest face cardinality plus one.
    pub fn size_bound(&self) -> usize {
        self.by_size.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = &VertexSet> {
        self.by_size.iter().flatten()
    }
}

impl Clone for SimplicialComplex {
    fn clone(&self) -> Self {
        let table = OnceLock::new();
        if let Some(t) = self.table.get() {
            let _ = table.set(Arc::clone(t));
        }
        Self {
            ground: self.ground.clone(),
            facets: self.facets.clone(),
            table,
        }
    }
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.ground == other.ground && self.facets == other.facets
    }
}

impl Eq for SimplicialComplex {}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimplicialComplex")
            .field("ground", &self.ground)
            .field("facets", &self.facets)
            .finish()
    }
}

/// Keep the inclusion-maximal sets, deduplicated, in lexicographic order.
fn maximal_sets(mut sets: Vec<VertexSet>) -> Vec<VertexSet> {
    sets.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    sets.dedup();
    let mut kept: Vec<VertexSet> = Vec::with_capacity(sets.len());
    for s in sets {
        if !kept.iter().any(|k| s.is_subset(k)) {
            kept.push(s);
        }
    }
    kept.sort();
    kept
}

/// Builds a complex from facet lists of raw (possibly invalid) ids.
pub fn build_complex(facets: &[Vec<i64>], ground: Option<&[i64]>) -> Result<SimplicialComplex> {
    fn to_set(ids: &[i64]) -> Result<VertexSet> {
        ids.iter()
            .map(|&v| {
                if v <= 0 || v > u32::MAX as i64 {
                    Err(Error::NonPositiveVertex)
                } else {
                    Ok(v as Vertex)
                }
            })
            .collect()
    }
    let facets = facets.iter().map(|f| to_set(f)).collect::<Result<Vec<_>>>()?;
    let ground = ground.map(to_set).transpose()?;
    SimplicialComplex::new(facets, ground)
}

impl SimplicialComplex {
    /// Prunes `facets` to the inclusion-maximal ones. The ground set defaults to their union.
    pub fn new(facets: Vec<VertexSet>, ground: Option<VertexSet>) -> Result<Self> {
        let union = facets.iter().fold(VertexSet::new(), |acc, f| acc.union(f));
        let ground = match ground {
            Some(g) => {
                if let Some(v) = union.difference(&g).first() {
                    return Err(Error::GroundSetMissing(v));
                }
                g
            }
            None => union,
        };
        Ok(Self {
            ground,
            facets: maximal_sets(facets),
            table: OnceLock::new(),
        })
    }

    /// Convenience constructor for literal facet lists; panics on id 0.
    pub fn from_facets<T: AsRef<[Vertex]>>(facets: &[T]) -> Self {
        let sets = facets.iter().map(|f| VertexSet::from(f.as_ref())).collect();
        Self::new(sets, None).expect("facets define their own ground set")
    }

    pub fn void() -> Self {
        Self::void_on(VertexSet::new())
    }

    pub fn void_on(ground: VertexSet) -> Self {
        Self {
            ground,
            facets: Vec::new(),
            table: OnceLock::new(),
        }
    }

    /// The complex `{∅}`.
    pub fn empty_face() -> Self {
        Self::empty_face_on(VertexSet::new())
    }

    pub fn empty_face_on(ground: VertexSet) -> Self {
        Self {
            ground,
            facets: vec![VertexSet::new()],
            table: OnceLock::new(),
        }
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn ground_set(&self) -> &VertexSet {
        &self.ground
    }

    pub fn facets(&self) -> &[VertexSet] {
        &self.facets
    }

    /// Vertices that are faces.
    pub fn vertex_support(&self) -> VertexSet {
        self.facets.iter().fold(VertexSet::new(), |acc, f| acc.union(f))
    }

    /// `None` for the void complex.
    pub fn dim(&self) -> Option<i32> {
        self.facets.iter().map(|f| f.len() as i32 - 1).max()
    }

    pub fn dimension(&self) -> Result<i32> {
        self.dim().ok_or(Error::VoidComplex)
    }

    pub fn is_pure(&self) -> bool {
        self.facets.windows(2).all(|w| w[0].len() == w[1].len())
            && self.facets.iter().map(|f| f.len()).min() == self.facets.iter().map(|f| f.len()).max()
    }

    pub fn is_facet(&self, f: &VertexSet) -> bool {
        self.facets.binary_search(f).is_ok()
    }

    /// Memoized face enumeration by downward closure of the facets.
    pub fn faces(&self) -> &FaceTable {
        self.table.get_or_init(|| Arc::new(self.enumerate_faces()))
    }

    fn enumerate_faces(&self) -> FaceTable {
        let mut all: HashSet<VertexSet> = HashSet::new();
        for facet in &self.facets {
            let verts = facet.to_vec();
            assert!(verts.len() < 32, "facet too large to enumerate");
            for mask in 0u32..(1u32 << verts.len()) {
                let face: VertexSet = (0..verts.len())
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| verts[i])
                    .collect();
                all.insert(face);
            }
        }
        let top = all.iter().map(|f| f.len()).max().map_or(0, |m| m + 1);
        let mut by_size = vec![Vec::new(); top];
        for f in &all {
            by_size[f.len()].push(f.clone());
        }
        for group in &mut by_size {
            group.sort();
        }
        FaceTable { by_size, all }
    }

    pub fn contains_face(&self, f: &VertexSet) -> bool {
        match self.table.get() {
            Some(t) => t.contains(f),
            None => self.facets.iter().any(|g| f.is_subset(g)),
        }
    }

    /// Number of faces of dimension `k` (k = -1 counts the empty face).
    pub fn face_count(&self, k: i32) -> usize {
        if k < -1 {
            return 0;
        }
        self.faces().of_size((k + 1) as usize).len()
    }

    /// Same faces with the ground set enlarged by `extra`.
    pub fn with_ground(&self, extra: &VertexSet) -> Self {
        let mut c = self.clone();
        c.ground = self.ground.union(extra);
        c
    }

    /// `lk(F) = {G : F ∪ G ∈ Δ, F ∩ G = ∅}`; void when `F` is not a face.
    pub fn link(&self, face: &VertexSet) -> Self {
        let facets: Vec<VertexSet> = self
            .facets
            .iter()
            .filter(|g| face.is_subset(g))
            .map(|g| g.difference(face))
            .collect();
        let support = facets.iter().fold(VertexSet::new(), |acc, f| acc.union(f));
        Self {
            ground: support,
            facets: maximal_sets(facets),
            table: OnceLock::new(),
        }
    }

    /// Closed star: all faces `G` with `F ∪ G ∈ Δ`.
    pub fn star(&self, face: &VertexSet) -> Self {
        let facets: Vec<VertexSet> =
            self.facets.iter().filter(|g| face.is_subset(g)).cloned().collect();
        let support = facets.iter().fold(VertexSet::new(), |acc, f| acc.union(f));
        Self {
            ground: support,
            facets,
            table: OnceLock::new(),
        }
    }

    /// Faces not containing `v`, on the ground set without `v`.
    pub fn delete_vertex(&self, v: Vertex) -> Self {
        if self.is_void() {
            return Self::void_on(self.ground.without(v));
        }
        let facets = self.facets.iter().map(|f| f.without(v)).collect();
        Self {
            ground: self.ground.without(v),
            facets: maximal_sets(facets),
            table: OnceLock::new(),
        }
    }

    /// Induced subcomplex `Δ_W` with ground set `W`.
    pub fn induced(&self, w: &VertexSet) -> Self {
        if self.is_void() {
            return Self::void_on(w.clone());
        }
        let facets = self.facets.iter().map(|f| f.intersection(w)).collect();
        Self {
            ground: w.clone(),
            facets: maximal_sets(facets),
            table: OnceLock::new(),
        }
    }

    /// Missing `k`-faces: `(k+1)`-subsets of the vertex support that are not faces
    /// although every proper subset is.
    pub fn missing_faces(&self, k: usize) -> Result<Vec<VertexSet>> {
        if self.is_void() {
            return Err(Error::VoidComplex);
        }
        let table = self.faces();
        let mut out = Vec::new();
        if k == 0 {
            return Ok(out);
        }
        // Candidates extend a (k-1)-face by a larger vertex; all k-subsets must be faces.
        for base in table.of_size(k) {
            let top = base.last().unwrap_or(0);
            for v in self.vertex_support().iter().filter(|&v| v > top) {
                let cand = base.with(v);
                if table.contains(&cand) {
                    continue;
                }
                if cand.iter().all(|u| table.contains(&cand.without(u))) {
                    out.push(cand);
                }
            }
        }
        out.sort();
        Ok(out)
    }

    /// Vertex sets of the connected components of the vertex support.
    pub fn components(&self) -> Vec<VertexSet> {
        let verts = self.vertex_support().to_vec();
        let index = |v: Vertex| verts.binary_search(&v).unwrap();
        let mut parent: Vec<usize> = (0..verts.len()).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for f in &self.facets {
            let mut it = f.iter();
            if let Some(first) = it.next() {
                let a = index(first);
                for v in it {
                    let (ra, rb) = (find(&mut parent, a), find(&mut parent, index(v)));
                    parent[ra] = rb;
                }
            }
        }
        let mut groups: BTreeMap<usize, VertexSet> = BTreeMap::new();
        for (i, &v) in verts.iter().enumerate() {
            let r = find(&mut parent, i);
            groups.entry(r).or_default().insert(v);
        }
        let mut out: Vec<VertexSet> = groups.into_values().collect();
        out.sort();
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// Applies `map` to every vertex of the ground set and facets.
    pub fn relabel(&self, map: impl Fn(Vertex) -> Vertex) -> Self {
        let ground = self.ground.iter().map(&map).collect();
        let facets = self.facets.iter().map(|f| f.iter().map(&map).collect()).collect();
        Self::new(facets, Some(ground)).expect("relabeling keeps facets inside the ground set")
    }

    /// Ridges (faces of size dim) with the number of facets containing them.
    pub fn ridge_degrees(&self) -> BTreeMap<VertexSet, usize> {
        let mut deg = BTreeMap::new();
        for f in &self.facets {
            for v in f.iter() {
                *deg.entry(f.without(v)).or_insert(0) += 1;
            }
        }
        deg
    }
}
