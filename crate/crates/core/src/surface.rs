//! The marked surface of a gentle algebra, glued from one polygon per
//! geometric maximal path: the polygon's red edges are the vertices met by the
//! path and one further edge is a boundary segment carrying a marked point.
//! Red edges with the same label are identified in pairs.

use std::fmt::Write as _;

use crate::quiver::{GentleAlgebra, PathId, VertexId};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polygon {
    /// The maximal path, or `None` for the second copy of a lone vertex.
    pub path: Option<PathId>,
    /// Labels of the red edges `0..n`; edge `n+1` is the marked one.
    pub red: Vec<VertexId>,
}

impl Polygon {
    pub fn sides(&self) -> usize {
        self.red.len() + 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Invariants {
    pub polygons: usize,
    pub euler_characteristic: i64,
    pub boundary_components: usize,
    pub genus: i64,
    pub marked_points: usize,
    /// Corner classes not on any marked edge (interior punctures).
    pub interior_points: usize,
}

#[derive(Clone, Debug)]
pub struct Surface {
    polygons: Vec<Polygon>,
    /// Corner class of `(polygon, corner)`, densely numbered.
    corner_class: Vec<Vec<usize>>,
    classes: usize,
    vertex_count: usize,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

impl Surface {
    pub fn build(alg: &GentleAlgebra) -> Self {
        let mut polygons: Vec<Polygon> = alg
            .maximal_paths_geo()
            .iter()
            .map(|&p| Polygon {
                path: Some(p),
                red: alg.vertices_on(p),
            })
            .collect();
        let mut seen = vec![0usize; alg.vertex_count()];
        for p in &polygons {
            for &v in &p.red {
                seen[v] += 1;
            }
        }
        for (v, &k) in seen.iter().enumerate() {
            if k == 1 {
                polygons.push(Polygon {
                    path: None,
                    red: vec![v],
                });
            }
        }
        // Corners are numbered globally; polygon i has sides(i) corners.
        let base: Vec<usize> = polygons
            .iter()
            .scan(0, |acc, p| {
                let b = *acc;
                *acc += p.sides();
                Some(b)
            })
            .collect();
        let total = base
            .last()
            .map_or(0, |b| b + polygons.last().unwrap().sides());
        let corner = |pi: usize, c: usize| base[pi] + c % polygons[pi].sides();
        let mut occurrences: Vec<Vec<(usize, usize)>> = vec![Vec::new(); alg.vertex_count()];
        for (pi, p) in polygons.iter().enumerate() {
            for (j, &v) in p.red.iter().enumerate() {
                occurrences[v].push((pi, j));
            }
        }
        let mut uf = UnionFind::new(total);
        for occ in &occurrences {
            assert_eq!(occ.len(), 2, "every red edge is glued exactly once");
            let ((p, j), (q, k)) = (occ[0], occ[1]);
            uf.union(corner(p, j), corner(q, k + 1));
            uf.union(corner(p, j + 1), corner(q, k));
        }
        let mut ids = std::collections::BTreeMap::new();
        let corner_class = polygons
            .iter()
            .enumerate()
            .map(|(pi, p)| {
                (0..p.sides())
                    .map(|c| {
                        let r = uf.find(corner(pi, c));
                        let next = ids.len();
                        *ids.entry(r).or_insert(next)
                    })
                    .collect()
            })
            .collect();
        Surface {
            polygons,
            corner_class,
            classes: ids.len(),
            vertex_count: alg.vertex_count(),
        }
    }

    pub fn polygons(&self) -> &[Polygon] {
        &self.polygons
    }

    /// Class of corner `c` of polygon `p`; corner `j` starts red edge `j`.
    pub fn corner_class(&self, p: usize, c: usize) -> usize {
        self.corner_class[p][c]
    }

    pub fn corner_classes(&self) -> usize {
        self.classes
    }

    fn on_marked_edge(&self) -> Vec<bool> {
        let mut on = vec![false; self.classes];
        for (pi, p) in self.polygons.iter().enumerate() {
            on[self.corner_class[pi][p.sides() - 1]] = true;
            on[self.corner_class[pi][0]] = true;
        }
        on
    }

    pub fn invariants(&self) -> Invariants {
        let f = self.polygons.len() as i64;
        let v = self.classes as i64 + f;
        let e = self.vertex_count as i64 + 2 * f;
        let chi = v - e + f;
        let mut uf = UnionFind::new(self.classes);
        for (pi, p) in self.polygons.iter().enumerate() {
            uf.union(
                self.corner_class[pi][p.sides() - 1],
                self.corner_class[pi][0],
            );
        }
        let b = (0..self.classes).filter(|&c| uf.find(c) == c).count();
        let interior = self.on_marked_edge().iter().filter(|&&x| !x).count();
        Invariants {
            polygons: self.polygons.len(),
            euler_characteristic: chi,
            boundary_components: b,
            genus: (2 - chi - b as i64) / 2,
            marked_points: self.polygons.len(),
            interior_points: interior,
        }
    }

    /// Finite global dimension, read off the surface: no corner class lies
    /// away from the boundary segments.
    pub fn finite_global_dimension(&self) -> bool {
        self.on_marked_edge().iter().all(|&x| x)
    }

    /// An SVG drawing: polygons side by side, red edges labelled by vertex,
    /// marked edges in black with their marked point, and the arrows of each
    /// maximal path as arcs across its corners.
    pub fn render_svg(&self, alg: &GentleAlgebra) -> String {
        const R: f64 = 70.0;
        const GAP: f64 = 40.0;
        let width = self.polygons.len() as f64 * (2.0 * R + GAP) + GAP;
        let height = 2.0 * R + 2.0 * GAP;
        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}">"#
        );
        for (pi, p) in self.polygons.iter().enumerate() {
            let cx = GAP + R + pi as f64 * (2.0 * R + GAP);
            let cy = GAP + R;
            let k = p.sides();
            let pt = |c: usize| {
                let t =
                    std::f64::consts::TAU * (c % k) as f64 / k as f64 - std::f64::consts::FRAC_PI_2;
                let (rx, ry) = if k == 2 { (R * 0.5, R) } else { (R, R) };
                (cx + rx * t.cos(), cy + ry * t.sin())
            };
            let title = match p.path {
                Some(w) => alg.path_name(w).to_string(),
                None => format!("@{}", alg.vertex_name(p.red[0])),
            };
            let _ = writeln!(
                s,
                r#"  <g class="polygon" id="polygon-{pi}" data-path="{}">"#,
                escape(&title)
            );
            for j in 0..k {
                let (x1, y1) = pt(j);
                let (x2, y2) = pt(j + 1);
                if j < p.red.len() {
                    let name = escape(alg.vertex_name(p.red[j]));
                    if k == 2 {
                        let _ = writeln!(
                            s,
                            r#"    <path class="red-edge" data-vertex="{name}" d="M {x1:.2} {y1:.2} Q {:.2} {:.2} {x2:.2} {y2:.2}" fill="none" stroke="red" stroke-width="2"/>"#,
                            cx + R,
                            cy
                        );
                    } else {
                        let _ = writeln!(
                            s,
                            r#"    <line class="red-edge" data-vertex="{name}" x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke="red" stroke-width="2"/>"#
                        );
                    }
                    let (mx, my) = if k == 2 {
                        (cx + R * 0.55, cy)
                    } else {
                        ((x1 + x2) / 2.0, (y1 + y2) / 2.0)
                    };
                    let _ = writeln!(
                        s,
                        r#"    <text class="edge-label" x="{:.2}" y="{:.2}" fill="red" font-size="12">{name}</text>"#,
                        cx + (mx - cx) * 1.15,
                        cy + (my - cy) * 1.15
                    );
                } else {
                    if k == 2 {
                        let _ = writeln!(
                            s,
                            r#"    <path class="marked-edge" d="M {x1:.2} {y1:.2} Q {:.2} {:.2} {x2:.2} {y2:.2}" fill="none" stroke="black" stroke-width="3"/>"#,
                            cx - R,
                            cy
                        );
                    } else {
                        let _ = writeln!(
                            s,
                            r#"    <line class="marked-edge" x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke="black" stroke-width="3"/>"#
                        );
                    }
                    let (mx, my) = if k == 2 {
                        (cx - R * 0.5, cy)
                    } else {
                        ((x1 + x2) / 2.0, (y1 + y2) / 2.0)
                    };
                    let _ = writeln!(
                        s,
                        r#"    <circle class="marked-point" cx="{mx:.2}" cy="{my:.2}" r="4" fill="black"/>"#
                    );
                }
            }
            for c in 0..k {
                let (x, y) = pt(c);
                let _ = writeln!(
                    s,
                    r#"    <circle class="corner" data-class="{}" cx="{x:.2}" cy="{y:.2}" r="2" fill="gray"/>"#,
                    self.corner_class[pi][c]
                );
            }
            if let Some(w) = p.path {
                for (i, &arrow) in alg.path(w).arrows.iter().enumerate() {
                    // Arrow i joins red edges i and i+1 across corner i+1.
                    let (x0, y0) = pt(i);
                    let (x1, y1) = pt(i + 1);
                    let (x2, y2) = pt(i + 2);
                    let a = ((x0 + x1) / 2.0, (y0 + y1) / 2.0);
                    let b = ((x1 + x2) / 2.0, (y1 + y2) / 2.0);
                    let name = escape(&alg.arrow(arrow).name);
                    let _ = writeln!(
                        s,
                        r#"    <path class="arc" data-arrow="{name}" d="M {:.2} {:.2} Q {cx:.2} {cy:.2} {:.2} {:.2}" fill="none" stroke="green" stroke-dasharray="4 2"/>"#,
                        a.0, a.1, b.0, b.1
                    );
                }
            }
            let _ = writeln!(
                s,
                r#"    <text class="polygon-label" x="{cx:.2}" y="{:.2}" text-anchor="middle" font-size="12">{}</text>"#,
                cy + R + 20.0,
                escape(&title)
            );
            let _ = writeln!(s, "  </g>");
        }
        s.push_str("</svg>\n");
        s
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
        .replace('\'', "&apos;")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::Checks;

    const A0: &str = "vertex 1\nvertex 2\nvertex 3\narrow a 1 2\narrow a' 1 2\narrow b 2 3\narrow b' 2 3\nrel a b\nrel a' b'\n";
    const CYCLE3: &str =
        "vertex 1\nvertex 2\nvertex 3\narrow d 1 2\narrow a 2 3\narrow b 3 1\nrel d a\n";
    const FULL3: &str = "vertex 1\nvertex 2\nvertex 3\narrow d 1 2\narrow a 2 3\narrow b 3 1\nrel d a\nrel a b\nrel b d\n";

    fn inv(text: &str) -> Invariants {
        Surface::build(&GentleAlgebra::parse(text).unwrap()).invariants()
    }

    #[test]
    fn running_example_is_a_one_holed_torus() {
        let i = inv(A0);
        assert_eq!(i.polygons, 2);
        assert_eq!(i.euler_characteristic, -1);
        assert_eq!((i.genus, i.boundary_components, i.marked_points), (1, 1, 2));
    }

    #[test]
    fn one_vertex_gives_a_disk() {
        let i = inv("vertex 1\n");
        assert_eq!(i.polygons, 2);
        assert_eq!(
            (i.euler_characteristic, i.genus, i.boundary_components),
            (1, 0, 1)
        );
        assert_eq!(i.marked_points, 2);
    }

    #[test]
    fn three_cycle_with_one_relation_is_an_annulus() {
        let i = inv(CYCLE3);
        assert_eq!(i.polygons, 3);
        assert_eq!(
            (i.euler_characteristic, i.genus, i.boundary_components),
            (0, 0, 2)
        );
    }

    #[test]
    fn type_a_path_is_a_disk() {
        let i = inv("vertex 1\nvertex 2\nvertex 3\narrow x 1 2\narrow y 2 3\n");
        assert_eq!((i.genus, i.boundary_components), (0, 1));
        assert_eq!(i.marked_points, 4);
    }

    #[test]
    fn geometric_and_algebraic_global_dimension_agree() {
        for text in [A0, CYCLE3, "vertex 1\n"] {
            let alg = GentleAlgebra::parse(text).unwrap();
            assert!(Surface::build(&alg).finite_global_dimension());
        }
        let alg = GentleAlgebra::parse_with(
            FULL3,
            Checks {
                global_dimension: false,
            },
        )
        .unwrap();
        assert!(!alg.has_finite_global_dimension());
        let s = Surface::build(&alg);
        assert!(!s.finite_global_dimension());
        assert_eq!(s.invariants().interior_points, 1);
    }

    #[test]
    fn svg_is_well_formed() {
        let alg = GentleAlgebra::parse(A0).unwrap();
        let svg = Surface::build(&alg).render_svg(&alg);
        let doc = roxmltree::Document::parse(&svg).unwrap();
        let count = |class: &str| {
            doc.descendants()
                .filter(|n| n.attribute("class") == Some(class))
                .count()
        };
        assert_eq!(count("polygon"), 2);
        assert_eq!(count("red-edge"), 6);
        assert_eq!(count("marked-point"), 2);
        assert_eq!(count("arc"), 4);
    }
}
