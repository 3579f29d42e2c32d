//! Gentle presentations: parsing, validation, path caches, maximal paths and
//! the trivial extension.
//!
//! Conventions: a path `αβ` is "α then β". Modules are right modules, so the
//! indecomposable projective `P_i` has basis the nonzero paths starting at
//! `i`, and a path `w: j → i` acts as a map `P_i → P_j` by left multiplication.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use thiserror::Error;

pub type VertexId = usize;
pub type ArrowId = usize;
pub type PathId = usize;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub source: VertexId,
    pub target: VertexId,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_id(&self, name: &str) -> Option<VertexId> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn arrow_id(&self, name: &str) -> Option<ArrowId> {
        self.arrows.iter().position(|a| a.name == name)
    }

    fn is_connected(&self) -> bool {
        let n = self.vertices.len();
        if n == 0 {
            return false;
        }
        let mut adj = vec![Vec::new(); n];
        for a in &self.arrows {
            adj[a.source].push(a.target);
            adj[a.target].push(a.source);
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

/// A path in the quiver; trivial paths have no arrows and `source == target`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    pub source: VertexId,
    pub target: VertexId,
    pub arrows: Vec<ArrowId>,
}

impl Path {
    pub fn trivial(v: VertexId) -> Self {
        Path {
            source: v,
            target: v,
            arrows: Vec::new(),
        }
    }

    // Emptiness is `is_trivial`: a trivial path has length 0.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    /// Sort key: length, then arrow list (arrows are stored sorted by name),
    /// then source vertex for trivial paths.
    fn key(&self) -> (usize, &[ArrowId], VertexId) {
        (self.arrows.len(), &self.arrows, self.source)
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Path {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.key().cmp(&other.key())
    }
}

/// Which clause of the gentleness definition failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GentleClause {
    /// At most two arrows start and at most two arrows end at each vertex.
    Valency,
    /// For each arrow α at most one β with αβ ∉ I and at most one γ with γα ∉ I.
    FreeNeighbour,
    /// For each arrow α at most one β with αβ ∈ I and at most one γ with γα ∈ I.
    RelationNeighbour,
}

impl fmt::Display for GentleClause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GentleClause::Valency => "at most two arrows in and two arrows out per vertex",
            GentleClause::FreeNeighbour => {
                "at most one relation-free successor/predecessor per arrow"
            }
            GentleClause::RelationNeighbour => {
                "at most one relation successor/predecessor per arrow"
            }
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PresentationError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("no vertices declared")]
    Empty,
    #[error("quiver is not connected")]
    Disconnected,
    #[error("not gentle ({clause}): {detail}")]
    NotGentle {
        clause: GentleClause,
        detail: String,
    },
    #[error("infinite-dimensional: relation-free cycle through {0}")]
    InfiniteDimensional(String),
    #[error("infinite global dimension: full-relation cycle {0}")]
    InfiniteGlobalDimension(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PathError {
    #[error("unknown arrow or vertex in path literal `{0}`")]
    Unknown(String),
    #[error("path literal `{0}` has more than one reading")]
    Ambiguous(String),
    #[error("arrows do not compose in `{0}`")]
    NotComposable(String),
    #[error("path `{0}` is zero in the algebra")]
    Zero(String),
    #[error("path `{0}` is trivial")]
    Trivial(String),
}

/// Which of the global validity checks to run when parsing.
#[derive(Clone, Copy, Debug)]
pub struct Checks {
    pub global_dimension: bool,
}

impl Default for Checks {
    fn default() -> Self {
        Checks {
            global_dimension: true,
        }
    }
}

/// A validated gentle algebra `kQ/I` with its derived path caches.
#[derive(Clone, Debug)]
pub struct GentleAlgebra {
    quiver: Quiver,
    relations: BTreeSet<(ArrowId, ArrowId)>,
    paths: Vec<Path>,
    index: HashMap<(VertexId, Vec<ArrowId>), PathId>,
    mult: Vec<Vec<Option<PathId>>>,
    trivial: Vec<PathId>,
    paths_from: Vec<Vec<PathId>>,
    maximal_alg: Vec<PathId>,
    maximal_geo: Vec<PathId>,
    names: Vec<String>,
    full_relation_cycle: Option<Vec<ArrowId>>,
}

fn is_name(s: &str) -> bool {
    !s.is_empty()
        && s.chars()
            .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

impl GentleAlgebra {
    /// Parse and fully validate an algebra source document.
    pub fn parse(text: &str) -> Result<Self, PresentationError> {
        Self::parse_with(text, Checks::default())
    }

    pub fn parse_with(text: &str, checks: Checks) -> Result<Self, PresentationError> {
        let mut vertex_names: Vec<String> = Vec::new();
        let mut arrows_raw: Vec<(String, String, String, usize)> = Vec::new();
        let mut rels_raw: Vec<(String, String, usize)> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let toks: Vec<&str> = content.split_whitespace().collect();
            let syntax = |message: String| PresentationError::Syntax { line, message };
            for t in &toks[1..] {
                if !is_name(t) {
                    return Err(syntax(format!("invalid name `{t}`")));
                }
            }
            match (toks[0], toks.len()) {
                ("vertex", 2) => {
                    if vertex_names.iter().any(|v| v == toks[1]) {
                        return Err(syntax(format!("duplicate vertex `{}`", toks[1])));
                    }
                    vertex_names.push(toks[1].to_string());
                }
                ("arrow", 4) => {
                    if arrows_raw.iter().any(|a| a.0 == toks[1]) {
                        return Err(syntax(format!("duplicate arrow `{}`", toks[1])));
                    }
                    arrows_raw.push((
                        toks[1].to_string(),
                        toks[2].to_string(),
                        toks[3].to_string(),
                        line,
                    ));
                }
                ("rel", 3) => rels_raw.push((toks[1].to_string(), toks[2].to_string(), line)),
                ("vertex", _) => return Err(syntax("expected `vertex <name>`".into())),
                ("arrow", _) => return Err(syntax("expected `arrow <name> <src> <dst>`".into())),
                ("rel", _) => return Err(syntax("expected `rel <arrow1> <arrow2>`".into())),
                (kw, _) => return Err(syntax(format!("unknown keyword `{kw}`"))),
            }
        }
        if vertex_names.is_empty() {
            return Err(PresentationError::Empty);
        }
        vertex_names.sort();
        let vid = |name: &str, line: usize| {
            vertex_names
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| PresentationError::Syntax {
                    line,
                    message: format!("unknown vertex `{name}`"),
                })
        };
        let mut arrows = Vec::new();
        for (name, s, t, line) in &arrows_raw {
            arrows.push(Arrow {
                name: name.clone(),
                source: vid(s, *line)?,
                target: vid(t, *line)?,
            });
        }
        arrows.sort_by(|a, b| a.name.cmp(&b.name));
        let quiver = Quiver {
            vertices: vertex_names,
            arrows,
        };
        let mut relations = BTreeSet::new();
        for (a, b, line) in &rels_raw {
            let unknown = |n: &str| PresentationError::Syntax {
                line: *line,
                message: format!("unknown arrow `{n}`"),
            };
            let ia = quiver.arrow_id(a).ok_or_else(|| unknown(a))?;
            let ib = quiver.arrow_id(b).ok_or_else(|| unknown(b))?;
            if quiver.arrows[ia].target != quiver.arrows[ib].source {
                return Err(PresentationError::Syntax {
                    line: *line,
                    message: format!("relation `{a} {b}` is not a path"),
                });
            }
            relations.insert((ia, ib));
        }
        Self::from_parts(quiver, relations, checks)
    }

    /// Validate a quiver with relations and build all caches.
    pub fn from_parts(
        quiver: Quiver,
        relations: BTreeSet<(ArrowId, ArrowId)>,
        checks: Checks,
    ) -> Result<Self, PresentationError> {
        if quiver.vertices.is_empty() {
            return Err(PresentationError::Empty);
        }
        if !quiver.is_connected() {
            return Err(PresentationError::Disconnected);
        }
        check_gentle(&quiver, &relations)?;
        let paths = walk_paths(&quiver, &relations)?;
        let full_relation_cycle = find_full_relation_cycle(&quiver, &relations);
        if checks.global_dimension {
            if let Some(cycle) = &full_relation_cycle {
                let names: Vec<&str> = cycle
                    .iter()
                    .map(|&a| quiver.arrows[a].name.as_str())
                    .collect();
                return Err(PresentationError::InfiniteGlobalDimension(names.join(" ")));
            }
        }
        Ok(Self::with_paths(
            quiver,
            relations,
            paths,
            full_relation_cycle,
        ))
    }

    fn with_paths(
        quiver: Quiver,
        relations: BTreeSet<(ArrowId, ArrowId)>,
        paths: Vec<Path>,
        full_relation_cycle: Option<Vec<ArrowId>>,
    ) -> Self {
        let n = paths.len();
        let index: HashMap<_, _> = paths
            .iter()
            .enumerate()
            .map(|(i, p)| ((p.source, p.arrows.clone()), i))
            .collect();
        let mut mult = vec![vec![None; n]; n];
        for (i, p) in paths.iter().enumerate() {
            for (j, q) in paths.iter().enumerate() {
                if p.target != q.source {
                    continue;
                }
                let mut arrows = p.arrows.clone();
                arrows.extend(&q.arrows);
                mult[i][j] = index.get(&(p.source, arrows)).copied();
            }
        }
        let nv = quiver.vertices.len();
        let trivial: Vec<PathId> = (0..nv).map(|v| index[&(v, Vec::new())]).collect();
        let mut paths_from = vec![Vec::new(); nv];
        for (i, p) in paths.iter().enumerate() {
            paths_from[p.source].push(i);
        }
        let maximal_alg: Vec<PathId> = (0..n)
            .filter(|&i| {
                let longer_left = (0..n).any(|j| paths[j].len() == 1 && mult[j][i].is_some());
                let longer_right = (0..n).any(|j| paths[j].len() == 1 && mult[i][j].is_some());
                !(longer_left || longer_right)
            })
            .collect();
        let mut occurrences = vec![0usize; nv];
        for &m in &maximal_alg {
            if !paths[m].is_trivial() {
                for v in path_vertices(&quiver, &paths[m]) {
                    occurrences[v] += 1;
                }
            }
        }
        let mut maximal_geo = maximal_alg.clone();
        for v in 0..nv {
            if occurrences[v] <= 1 && !maximal_geo.contains(&trivial[v]) {
                maximal_geo.push(trivial[v]);
            }
        }
        maximal_geo.sort_by(|&a, &b| paths[a].cmp(&paths[b]));
        let mut alg = GentleAlgebra {
            quiver,
            relations,
            paths,
            index,
            mult,
            trivial,
            paths_from,
            maximal_alg,
            maximal_geo,
            names: Vec::new(),
            full_relation_cycle,
        };
        alg.names = (0..alg.paths.len()).map(|i| alg.render_path(i)).collect();
        alg
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn relations(&self) -> &BTreeSet<(ArrowId, ArrowId)> {
        &self.relations
    }

    pub fn is_relation(&self, a: ArrowId, b: ArrowId) -> bool {
        self.relations.contains(&(a, b))
    }

    pub fn vertex_count(&self) -> usize {
        self.quiver.vertices.len()
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.quiver.vertices[v]
    }

    pub fn arrow(&self, a: ArrowId) -> &Arrow {
        &self.quiver.arrows[a]
    }

    /// Whether global dimension is finite (always true for fully validated
    /// algebras; may be false when parsed with relaxed checks).
    pub fn has_finite_global_dimension(&self) -> bool {
        self.full_relation_cycle.is_none()
    }

    /// Dimension of the algebra: the number of nonzero paths.
    pub fn dimension(&self) -> usize {
        self.paths.len()
    }

    pub fn path_count(&self) -> usize {
        self.paths.len()
    }

    pub fn path(&self, p: PathId) -> &Path {
        &self.paths[p]
    }

    pub fn paths(&self) -> &[Path] {
        &self.paths
    }

    /// All nonzero paths (including trivial ones) of length at most `max_len`,
    /// ordered by length then arrow names.
    pub fn nonzero_paths(&self, max_len: Option<usize>) -> Vec<PathId> {
        (0..self.paths.len())
            .filter(|&i| max_len.is_none_or(|m| self.paths[i].len() <= m))
            .collect()
    }

    pub fn trivial_path(&self, v: VertexId) -> PathId {
        self.trivial[v]
    }

    pub fn source(&self, p: PathId) -> VertexId {
        self.paths[p].source
    }

    pub fn target(&self, p: PathId) -> VertexId {
        self.paths[p].target
    }

    pub fn len(&self, p: PathId) -> usize {
        self.paths[p].len()
    }

    pub fn is_trivial(&self, p: PathId) -> bool {
        self.paths[p].is_trivial()
    }

    /// The product "p then q", or `None` if it is zero or not composable.
    pub fn mul(&self, p: PathId, q: PathId) -> Option<PathId> {
        self.mult[p][q]
    }

    /// Basis of `P_v`: nonzero paths starting at `v`, in path order.
    pub fn projective_basis(&self, v: VertexId) -> &[PathId] {
        &self.paths_from[v]
    }

    pub fn projective_dim(&self, v: VertexId) -> usize {
        self.paths_from[v].len()
    }

    /// Dimension vector of `P_v` as a representation (paths counted by target).
    pub fn projective_dim_vector(&self, v: VertexId) -> Vec<usize> {
        let mut dv = vec![0; self.vertex_count()];
        for &p in &self.paths_from[v] {
            dv[self.paths[p].target] += 1;
        }
        dv
    }

    pub fn maximal_paths_alg(&self) -> &[PathId] {
        &self.maximal_alg
    }

    pub fn maximal_paths_geo(&self) -> &[PathId] {
        &self.maximal_geo
    }

    pub fn lookup(&self, source: VertexId, arrows: &[ArrowId]) -> Option<PathId> {
        self.index.get(&(source, arrows.to_vec())).copied()
    }

    /// Vertices visited by a path, `v_0, ..., v_n`.
    pub fn vertices_on(&self, p: PathId) -> Vec<VertexId> {
        path_vertices(&self.quiver, &self.paths[p])
    }

    /// Subpath `arrows[from..to]` of `p` (a trivial path when `from == to`).
    pub fn subpath(&self, p: PathId, from: usize, to: usize) -> PathId {
        let path = &self.paths[p];
        let verts = self.vertices_on(p);
        self.index[&(verts[from], path.arrows[from..to].to_vec())]
    }

    /// The unique maximal path `w̃` containing `p`, split as `w̃ = ŵ p w̄`.
    pub fn maximal_path_of(&self, p: PathId) -> Result<(PathId, PathId, PathId), PathError> {
        let path = &self.paths[p];
        if path.is_trivial() {
            return Err(PathError::Trivial(self.path_name(p).to_string()));
        }
        for &m in &self.maximal_alg {
            let arrows = &self.paths[m].arrows;
            if let Some(pos) = arrows
                .windows(path.len())
                .position(|w| w == path.arrows.as_slice())
            {
                let hat = self.subpath(m, 0, pos);
                let bar = self.subpath(m, pos + path.len(), arrows.len());
                return Ok((m, hat, bar));
            }
        }
        unreachable!("every nonzero path lies on a maximal path")
    }

    /// Position of a nonzero nontrivial path inside its maximal path: the
    /// maximal path, and the prefix lengths before and after it.
    pub fn position_in_maximal(&self, p: PathId) -> Option<(PathId, usize, usize)> {
        let (m, hat, _) = self.maximal_path_of(p).ok()?;
        let a = self.len(hat);
        Some((m, a, a + self.len(p)))
    }

    /// Display name of a path: concatenated arrow names (dot-separated when
    /// the concatenation would be ambiguous), `@v` for trivial paths.
    pub fn path_name(&self, p: PathId) -> &str {
        &self.names[p]
    }

    fn render_path(&self, p: PathId) -> String {
        let path = &self.paths[p];
        if path.is_trivial() {
            return format!("@{}", self.quiver.vertices[path.source]);
        }
        let joined: String = path
            .arrows
            .iter()
            .map(|&a| self.quiver.arrows[a].name.as_str())
            .collect();
        match self.segmentations(&joined).as_slice() {
            [only] if *only == path.arrows => joined,
            _ => path
                .arrows
                .iter()
                .map(|&a| self.quiver.arrows[a].name.as_str())
                .collect::<Vec<_>>()
                .join("."),
        }
    }

    /// All ways of splitting `s` into a composable sequence of arrow names.
    fn segmentations(&self, s: &str) -> Vec<Vec<ArrowId>> {
        fn go(
            alg: &GentleAlgebra,
            rest: &str,
            prev: Option<ArrowId>,
            acc: &mut Vec<ArrowId>,
            out: &mut Vec<Vec<ArrowId>>,
        ) {
            if rest.is_empty() {
                out.push(acc.clone());
                return;
            }
            for (i, a) in alg.quiver.arrows.iter().enumerate() {
                if let Some(tail) = rest.strip_prefix(a.name.as_str()) {
                    if prev.is_some_and(|p| alg.quiver.arrows[p].target != a.source) {
                        continue;
                    }
                    acc.push(i);
                    go(alg, tail, Some(i), acc, out);
                    acc.pop();
                }
            }
        }
        let mut out = Vec::new();
        go(self, s, None, &mut Vec::new(), &mut out);
        out
    }

    /// Parse a path literal: `@v` for a trivial path, arrow names either
    /// concatenated (`ab'`) or dot-separated (`a.b'`).
    pub fn parse_path(&self, s: &str) -> Result<PathId, PathError> {
        let s = s.trim();
        if let Some(v) = s.strip_prefix('@') {
            let v = self
                .quiver
                .vertex_id(v)
                .ok_or_else(|| PathError::Unknown(s.to_string()))?;
            return Ok(self.trivial[v]);
        }
        let arrows: Vec<ArrowId> = if s.contains('.') {
            let ids: Option<Vec<ArrowId>> = s.split('.').map(|n| self.quiver.arrow_id(n)).collect();
            let ids = ids.ok_or_else(|| PathError::Unknown(s.to_string()))?;
            if ids
                .windows(2)
                .any(|w| self.quiver.arrows[w[0]].target != self.quiver.arrows[w[1]].source)
            {
                return Err(PathError::NotComposable(s.to_string()));
            }
            ids
        } else {
            let segs = self.segmentations(s);
            match segs.len() {
                0 => return Err(PathError::Unknown(s.to_string())),
                1 => segs.into_iter().next().unwrap(),
                _ => return Err(PathError::Ambiguous(s.to_string())),
            }
        };
        if arrows.is_empty() {
            return Err(PathError::Unknown(s.to_string()));
        }
        let src = self.quiver.arrows[arrows[0]].source;
        self.lookup(src, &arrows)
            .ok_or_else(|| PathError::Zero(s.to_string()))
    }

    /// Canonical source document: vertices, arrows and relations sorted.
    pub fn to_source(&self) -> String {
        let mut out = String::new();
        for v in &self.quiver.vertices {
            out.push_str(&format!("vertex {v}\n"));
        }
        for a in &self.quiver.arrows {
            out.push_str(&format!(
                "arrow {} {} {}\n",
                a.name, self.quiver.vertices[a.source], self.quiver.vertices[a.target]
            ));
        }
        for &(a, b) in &self.relations {
            out.push_str(&format!(
                "rel {} {}\n",
                self.quiver.arrows[a].name, self.quiver.arrows[b].name
            ));
        }
        out
    }

    pub fn trivial_extension(&self) -> TrivialExtension {
        TrivialExtension::new(self)
    }
}

impl PartialEq for GentleAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.quiver == other.quiver && self.relations == other.relations
    }
}

impl Eq for GentleAlgebra {}

fn path_vertices(q: &Quiver, p: &Path) -> Vec<VertexId> {
    let mut v = vec![p.source];
    v.extend(p.arrows.iter().map(|&a| q.arrows[a].target));
    v
}

fn check_gentle(q: &Quiver, rels: &BTreeSet<(ArrowId, ArrowId)>) -> Result<(), PresentationError> {
    let nv = q.vertices.len();
    let mut out_deg = vec![0; nv];
    let mut in_deg = vec![0; nv];
    for a in &q.arrows {
        out_deg[a.source] += 1;
        in_deg[a.target] += 1;
    }
    for v in 0..nv {
        if out_deg[v] > 2 || in_deg[v] > 2 {
            return Err(PresentationError::NotGentle {
                clause: GentleClause::Valency,
                detail: format!(
                    "vertex `{}` has {} outgoing and {} incoming arrows",
                    q.vertices[v], out_deg[v], in_deg[v]
                ),
            });
        }
    }
    for (i, a) in q.arrows.iter().enumerate() {
        let succ: Vec<ArrowId> = (0..q.arrows.len())
            .filter(|&j| q.arrows[j].source == a.target)
            .collect();
        let pred: Vec<ArrowId> = (0..q.arrows.len())
            .filter(|&j| q.arrows[j].target == a.source)
            .collect();
        let free_succ = succ.iter().filter(|&&j| !rels.contains(&(i, j))).count();
        let rel_succ = succ.iter().filter(|&&j| rels.contains(&(i, j))).count();
        let free_pred = pred.iter().filter(|&&j| !rels.contains(&(j, i))).count();
        let rel_pred = pred.iter().filter(|&&j| rels.contains(&(j, i))).count();
        if free_succ > 1 || free_pred > 1 {
            return Err(PresentationError::NotGentle {
                clause: GentleClause::FreeNeighbour,
                detail: format!("arrow `{}`", a.name),
            });
        }
        if rel_succ > 1 || rel_pred > 1 {
            return Err(PresentationError::NotGentle {
                clause: GentleClause::RelationNeighbour,
                detail: format!("arrow `{}`", a.name),
            });
        }
    }
    Ok(())
}

/// Breadth-first walk of all paths avoiding the relations. A nonzero path
/// longer than the number of arrows repeats an arrow, hence contains a
/// relation-free cycle, so the walk stops there.
fn walk_paths(
    q: &Quiver,
    rels: &BTreeSet<(ArrowId, ArrowId)>,
) -> Result<Vec<Path>, PresentationError> {
    let mut paths: Vec<Path> = (0..q.vertices.len()).map(Path::trivial).collect();
    let mut frontier: Vec<Path> = q
        .arrows
        .iter()
        .enumerate()
        .map(|(i, a)| Path {
            source: a.source,
            target: a.target,
            arrows: vec![i],
        })
        .collect();
    let limit = q.arrows.len();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for p in &frontier {
            let last = *p.arrows.last().unwrap();
            for (j, b) in q.arrows.iter().enumerate() {
                if b.source == p.target && !rels.contains(&(last, j)) {
                    let mut arrows = p.arrows.clone();
                    arrows.push(j);
                    if arrows.len() > limit {
                        let names: Vec<&str> =
                            arrows.iter().map(|&a| q.arrows[a].name.as_str()).collect();
                        return Err(PresentationError::InfiniteDimensional(names.join("")));
                    }
                    next.push(Path {
                        source: p.source,
                        target: b.target,
                        arrows,
                    });
                }
            }
        }
        paths.extend(frontier);
        frontier = next;
    }
    paths.sort();
    Ok(paths)
}

/// A cyclic arrow sequence with every consecutive pair a relation. Each arrow
/// has at most one relation successor, so this is cycle detection in a
/// functional graph.
fn find_full_relation_cycle(
    q: &Quiver,
    rels: &BTreeSet<(ArrowId, ArrowId)>,
) -> Option<Vec<ArrowId>> {
    let next: BTreeMap<ArrowId, ArrowId> = rels.iter().copied().collect();
    for start in 0..q.arrows.len() {
        let mut seen = vec![start];
        let mut cur = start;
        while let Some(&n) = next.get(&cur) {
            if n == start {
                return Some(seen);
            }
            if seen.contains(&n) {
                break;
            }
            seen.push(n);
            cur = n;
        }
    }
    None
}

/// The trivial extension `A⋉ = A ⊗ k[ε]/(ε²)` presented by adding a loop
/// `ε_i` at each vertex, `ε_i² = 0` and `ε_{s(α)} α = α ε_{t(α)}`.
#[derive(Clone, Debug)]
pub struct TrivialExtension {
    pub quiver: Quiver,
    /// Zero relations (arrow pairs), original ones plus every `ε_i ε_i`.
    pub monomial_relations: BTreeSet<(ArrowId, ArrowId)>,
    /// Commutation relations `ε_{s(α)} α = α ε_{t(α)}`, as arrow pairs.
    pub commutation_relations: Vec<((ArrowId, ArrowId), (ArrowId, ArrowId))>,
    base_arrows: usize,
}

impl TrivialExtension {
    fn new(a: &GentleAlgebra) -> Self {
        let mut quiver = a.quiver.clone();
        let base_arrows = quiver.arrows.len();
        for (v, name) in a.quiver.vertices.iter().enumerate() {
            quiver.arrows.push(Arrow {
                name: format!("eps_{name}"),
                source: v,
                target: v,
            });
        }
        let eps = |v: VertexId| base_arrows + v;
        let mut monomial_relations = a.relations.clone();
        for v in 0..a.vertex_count() {
            monomial_relations.insert((eps(v), eps(v)));
        }
        let commutation_relations = a
            .quiver
            .arrows
            .iter()
            .enumerate()
            .map(|(i, arr)| ((eps(arr.source), i), (i, eps(arr.target))))
            .collect();
        TrivialExtension {
            quiver,
            monomial_relations,
            commutation_relations,
            base_arrows,
        }
    }

    pub fn loop_count(&self) -> usize {
        self.quiver.arrows.len() - self.base_arrows
    }

    pub fn is_loop(&self, a: ArrowId) -> bool {
        a >= self.base_arrows
    }

    /// Dimension of `kQ'/I'`, computed by rewriting: every word is moved to
    /// the normal form (ε-free part, number of ε letters) using the
    /// commutation relations; words with two ε letters or a base relation
    /// vanish. Distinct normal forms are linearly independent.
    pub fn dimension(&self) -> usize {
        let nv = self.quiver.vertices.len();
        let mut forms: BTreeSet<(VertexId, Vec<ArrowId>, usize)> = BTreeSet::new();
        let mut frontier: Vec<(VertexId, VertexId, Vec<ArrowId>, usize)> =
            (0..nv).map(|v| (v, v, Vec::new(), 0)).collect();
        while let Some((src, tgt, base, eps)) = frontier.pop() {
            if !forms.insert((src, base.clone(), eps)) {
                continue;
            }
            for (j, arr) in self.quiver.arrows.iter().enumerate() {
                if arr.source != tgt {
                    continue;
                }
                if self.is_loop(j) {
                    if eps == 0 {
                        frontier.push((src, tgt, base.clone(), 1));
                    }
                    continue;
                }
                if base
                    .last()
                    .is_some_and(|&l| self.monomial_relations.contains(&(l, j)))
                {
                    continue;
                }
                let mut nb = base.clone();
                nb.push(j);
                frontier.push((src, arr.target, nb, eps));
            }
        }
        forms.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) const A0: &str = "vertex 1\nvertex 2\nvertex 3\narrow a 1 2\narrow a' 1 2\narrow b 2 3\narrow b' 2 3\nrel a b\nrel a' b'\n";
    pub(crate) const CYCLE3: &str =
        "vertex 1\nvertex 2\nvertex 3\narrow d 1 2\narrow a 2 3\narrow b 3 1\nrel d a\n";

    fn names(alg: &GentleAlgebra, ps: &[PathId]) -> Vec<String> {
        ps.iter().map(|&p| alg.path_name(p).to_string()).collect()
    }

    #[test]
    fn running_example_paths() {
        let alg = GentleAlgebra::parse(A0).unwrap();
        assert_eq!(alg.dimension(), 9);
        assert_eq!(names(&alg, alg.maximal_paths_alg()), ["ab'", "a'b"]);
        assert_eq!(alg.projective_dim(0), 5);
        assert_eq!(alg.projective_dim(1), 3);
        assert_eq!(alg.projective_dim(2), 1);
        let trivial = alg.nonzero_paths(Some(0));
        assert_eq!(names(&alg, &trivial), ["@1", "@2", "@3"]);
    }

    #[test]
    fn one_vertex_algebra() {
        let alg = GentleAlgebra::parse("vertex 1\n").unwrap();
        assert_eq!(alg.dimension(), 1);
        assert_eq!(names(&alg, alg.maximal_paths_geo()), ["@1"]);
        assert_eq!(alg.trivial_extension().dimension(), 2);
    }

    #[test]
    fn full_relation_cycle_is_rejected() {
        let text = "vertex 1\nvertex 2\nvertex 3\narrow d 1 2\narrow a 2 3\narrow b 3 1\nrel d a\nrel a b\nrel b d\n";
        assert!(matches!(
            GentleAlgebra::parse(text),
            Err(PresentationError::InfiniteGlobalDimension(_))
        ));
        let relaxed = GentleAlgebra::parse_with(
            text,
            Checks {
                global_dimension: false,
            },
        )
        .unwrap();
        assert!(!relaxed.has_finite_global_dimension());
    }

    #[test]
    fn relation_free_cycle_is_infinite_dimensional() {
        let text = "vertex 1\nvertex 2\narrow x 1 2\narrow y 2 1\n";
        assert!(matches!(
            GentleAlgebra::parse(text),
            Err(PresentationError::InfiniteDimensional(_))
        ));
    }

    #[test]
    fn gentleness_clauses() {
        let three_out = "vertex 1\nvertex 2\narrow x 1 2\narrow y 1 2\narrow z 1 2\n";
        assert!(matches!(
            GentleAlgebra::parse(three_out),
            Err(PresentationError::NotGentle {
                clause: GentleClause::Valency,
                ..
            })
        ));
        let two_free =
            "vertex 1\nvertex 2\nvertex 3\nvertex 4\narrow x 1 2\narrow y 2 3\narrow z 2 4\n";
        assert!(matches!(
            GentleAlgebra::parse(two_free),
            Err(PresentationError::NotGentle {
                clause: GentleClause::FreeNeighbour,
                ..
            })
        ));
        let two_rel = "vertex 1\nvertex 2\nvertex 3\nvertex 4\narrow x 1 2\narrow y 2 3\narrow z 2 4\nrel x y\nrel x z\n";
        assert!(matches!(
            GentleAlgebra::parse(two_rel),
            Err(PresentationError::NotGentle {
                clause: GentleClause::RelationNeighbour,
                ..
            })
        ));
    }

    #[test]
    fn syntax_and_structure_errors() {
        assert!(matches!(
            GentleAlgebra::parse("vertex 1\nfoo 2\n"),
            Err(PresentationError::Syntax { line: 2, .. })
        ));
        assert!(matches!(
            GentleAlgebra::parse("vertex 1\narrow x 1 9\n"),
            Err(PresentationError::Syntax { line: 2, .. })
        ));
        assert_eq!(
            GentleAlgebra::parse("vertex 1\nvertex 2\n"),
            Err(PresentationError::Disconnected)
        );
        assert_eq!(
            GentleAlgebra::parse("# nothing\n"),
            Err(PresentationError::Empty)
        );
    }

    #[test]
    fn cycle_example_paths() {
        let alg = GentleAlgebra::parse(CYCLE3).unwrap();
        assert_eq!(alg.dimension(), 9);
        let v2 = alg.quiver().vertex_id("2").unwrap();
        assert_eq!(
            names(&alg, alg.projective_basis(v2)),
            ["@2", "a", "ab", "abd"]
        );
        assert_eq!(alg.projective_dim_vector(v2), [1, 2, 1]);
        assert_eq!(alg.trivial_extension().dimension(), 18);
        assert_eq!(names(&alg, alg.maximal_paths_alg()), ["abd"]);
    }

    #[test]
    fn maximal_path_decomposition() {
        let alg = GentleAlgebra::parse(A0).unwrap();
        let a = alg.parse_path("a").unwrap();
        let (m, hat, bar) = alg.maximal_path_of(a).unwrap();
        assert_eq!(
            (alg.path_name(m), alg.path_name(hat), alg.path_name(bar)),
            ("ab'", "@1", "b'")
        );
        let abp = alg.parse_path("ab'").unwrap();
        let (m, hat, bar) = alg.maximal_path_of(abp).unwrap();
        assert_eq!(
            (alg.path_name(m), alg.path_name(hat), alg.path_name(bar)),
            ("ab'", "@1", "@3")
        );
        let cyc = GentleAlgebra::parse(CYCLE3).unwrap();
        let b = cyc.parse_path("b").unwrap();
        let (m, hat, bar) = cyc.maximal_path_of(b).unwrap();
        assert_eq!(
            (cyc.path_name(m), cyc.path_name(hat), cyc.path_name(bar)),
            ("abd", "a", "d")
        );
    }

    #[test]
    fn path_literals() {
        let alg = GentleAlgebra::parse(A0).unwrap();
        assert_eq!(alg.parse_path("a'.b"), alg.parse_path("a'b"));
        assert!(matches!(alg.parse_path("ab"), Err(PathError::Zero(_))));
        assert!(matches!(alg.parse_path("zz"), Err(PathError::Unknown(_))));
        assert!(matches!(
            alg.parse_path("b.a"),
            Err(PathError::NotComposable(_))
        ));
    }

    #[test]
    fn serialization_round_trips() {
        for text in [A0, CYCLE3, "vertex 1\n"] {
            let alg = GentleAlgebra::parse(text).unwrap();
            let again = GentleAlgebra::parse(&alg.to_source()).unwrap();
            assert_eq!(alg, again);
            assert_eq!(alg.to_source(), again.to_source());
        }
    }

    #[test]
    fn every_arrow_in_exactly_one_maximal_path() {
        for text in [A0, CYCLE3] {
            let alg = GentleAlgebra::parse(text).unwrap();
            for a in 0..alg.quiver().arrows().len() {
                let hits = alg
                    .maximal_paths_alg()
                    .iter()
                    .filter(|&&m| alg.path(m).arrows.contains(&a))
                    .count();
                assert_eq!(hits, 1);
            }
            let sum: usize = (0..alg.vertex_count()).map(|v| alg.projective_dim(v)).sum();
            assert_eq!(sum, alg.dimension());
            assert_eq!(alg.trivial_extension().dimension(), 2 * alg.dimension());
        }
    }
}
