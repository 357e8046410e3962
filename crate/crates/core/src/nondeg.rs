//! Face-wise non-degeneracy tests and the global classifiers NND, INND,
//! WNND, WHNND and NND1.
//!
//! Every statement about zeros over the algebraic closure is decided by gcd
//! and squarefree computations over the coefficient field, which is exact
//! because finite fields and `Q` are perfect.

use num_integer::Integer;
use serde::Serialize;

use crate::algebra::{is_squarefree, repeated_radical, uni_gcd, UniPoly};
use crate::bivar::{BivarPoly, Exp, Face};
use crate::error::{Error, Result};
use crate::newton::{add_axis_powers, completion_exponent, EdgeData, NewtonDiagram};

/// Where the Jacobian pair `(g_x, g_y)` of a quasihomogeneous `g` has
/// common zeros over the algebraic closure.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ZeroLocusSummary {
    /// a zero with both coordinates nonzero
    pub has_torus: bool,
    /// a zero `(a, 0)` with `a != 0`
    pub has_x_axis: bool,
    /// a zero `(0, b)` with `b != 0`
    pub has_y_axis: bool,
    pub has_origin: bool,
}

/// Common nonzero root of the compressions of a family of quasihomogeneous
/// polynomials with shared weights. Zero members impose no condition.
fn common_torus_root(polys: &[&BivarPoly], m0: u32, n0: u32) -> Result<bool> {
    let mut g: Option<UniPoly> = None;
    for p in polys.iter().filter(|p| !p.is_zero()) {
        let h = p.compress(m0, n0)?.hpoly;
        g = Some(match g {
            None => h,
            Some(acc) => uni_gcd(&acc, &h)?,
        });
    }
    Ok(g.is_none_or(|h| h.deg0() >= 1))
}

/// Zero locus of the Jacobian pair of `g`, which must be quasihomogeneous
/// for the weights `(n0, m0)`. The zero polynomial vanishes everywhere.
pub fn jacobian_zero_locus(g: &BivarPoly, m0: u32, n0: u32) -> Result<ZeroLocusSummary> {
    if !g.is_zero() && g.weighted_degree_if_homogeneous(n0, m0).is_none() {
        return Err(Error::NotQuasihomogeneous(n0, m0));
    }
    let (gx, gy) = (g.partial_x(), g.partial_y());
    // restrictions of quasihomogeneous polynomials to an axis are monomials
    Ok(ZeroLocusSummary {
        has_torus: common_torus_root(&[&gx, &gy], m0, n0)?,
        has_x_axis: gx.restrict_y0().is_zero() && gy.restrict_y0().is_zero(),
        has_y_axis: gx.restrict_x0().is_zero() && gy.restrict_x0().is_zero(),
        has_origin: !gx.is_unit() && !gy.is_unit(),
    })
}

/// Primitive weights `(m0, n0)` of a face; a vertex takes `(1, 1)`.
fn face_weights(face: &Face) -> Result<(u32, u32)> {
    match *face {
        Face::Vertex(_) => Ok((1, 1)),
        Face::Segment(a, b) => {
            let dc = a.0.abs_diff(b.0);
            let de = a.1.abs_diff(b.1);
            let l = dc.gcd(&de);
            if dc == 0 || de == 0 {
                return Err(Error::BadWeights(de, dc));
            }
            Ok((dc / l, de / l))
        }
    }
}

fn face_is_inner(face: &Face) -> bool {
    match *face {
        Face::Vertex(v) => v.0 > 0 && v.1 > 0,
        Face::Segment(a, b) => !(a.0 == 0 && b.0 == 0) && !(a.1 == 0 && b.1 == 0),
    }
}

fn locus_along(f: &BivarPoly, face: &Face) -> Result<ZeroLocusSummary> {
    let (m0, n0) = face_weights(face)?;
    jacobian_zero_locus(&f.initial_form_along(face), m0, n0)
}

/// ND along a face of `Γ(f)`: the Jacobian pair of the initial form has no
/// zero in the torus.
pub fn nd_along(f: &BivarPoly, face: &Face) -> Result<bool> {
    Ok(!locus_along(f, face)?.has_torus)
}

/// The convenient polytope `Γ(f + x^m + y^m)` used to test INND.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CPolytope {
    pub diagram: NewtonDiagram,
    pub m: u32,
}

impl CPolytope {
    pub fn for_germ(f: &BivarPoly, m: u32) -> Result<Self> {
        let diagram = NewtonDiagram::of(&add_axis_powers(f, m))?;
        debug_assert!(diagram.convenient);
        Ok(CPolytope { diagram, m })
    }

    /// Faces not contained in a coordinate axis.
    pub fn inner_faces(&self) -> Vec<Face> {
        self.diagram.faces().into_iter().filter(face_is_inner).collect()
    }
}

/// IND along an inner face of a C-polytope: zeros of the Jacobian pair of
/// `in_face(f)` must avoid the torus, and may lie on an axis only if the
/// face does not meet that axis.
pub fn ind_along(f: &BivarPoly, face: &Face, polytope: &CPolytope) -> Result<bool> {
    if !face_is_inner(face) || !polytope.diagram.faces().contains(face) {
        return Err(Error::NotInnerFace);
    }
    let z = locus_along(f, face)?;
    Ok(!(z.has_torus || (z.has_y_axis && face.meets_y_axis()) || (z.has_x_axis && face.meets_x_axis())))
}

/// WND along an edge: the initial form and its partials have no common torus
/// zero. Checked against the equivalent "all edge factors are simple".
pub fn wnd_along_edge(f: &BivarPoly, e: &EdgeData) -> Result<bool> {
    let (tjurina, simple) = wnd_routes(f, e)?;
    if tjurina != simple {
        return Err(Error::internal(format!("WND routes disagree on {f} along {:?}", e.face())));
    }
    Ok(simple)
}

/// WND along an edge decided twice: no common torus zero of the initial
/// form and its partials, and squarefreeness of the compressed form.
pub fn wnd_routes(f: &BivarPoly, e: &EdgeData) -> Result<(bool, bool)> {
    let g = f.initial_form_along(&e.face());
    let tjurina = !common_torus_root(&[&g, &g.partial_x(), &g.partial_y()], e.m0, e.n0)?;
    let simple = is_squarefree(&g.compress(e.m0, e.n0)?.hpoly)?;
    Ok((tjurina, simple))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    X,
    Y,
}

/// ND1 at the vertex of `Γ(f)` on the given axis.
pub fn nd1_along_axis_vertex(f: &BivarPoly, axis: Axis) -> Result<bool> {
    let g = match axis {
        Axis::Y => f.clone(),
        Axis::X => f.swap(),
    };
    let d = NewtonDiagram::of(&g)?;
    let (c0, n) = d.first();
    if c0 != 0 {
        return Err(Error::NoAxisVertex(match axis {
            Axis::X => "x",
            Axis::Y => "y",
        }));
    }
    let p = f.tower().characteristic();
    if p.is_zero() || !p.divides(n as u64) {
        return Ok(true);
    }
    // height of the diagram over x = 1
    let Some(e) = d.edges.first() else {
        return Ok(false);
    };
    let (c1, e1) = e.end;
    let drop = n - e1;
    if drop % c1 != 0 {
        return Ok(false);
    }
    Ok(g.has_term(1, n - drop / c1))
}

/// WHND along an edge: no repeated factor of the edge form divides the next
/// weighted homogeneous part.
pub fn whnd_along_edge(f: &BivarPoly, e: &EdgeData) -> Result<bool> {
    let h = f.initial_form_along(&e.face()).compress(e.m0, e.n0)?.hpoly;
    let r = repeated_radical(&h)?;
    if r.is_one() {
        return Ok(true);
    }
    let next = f.weighted_decomposition(e.n0, e.m0)?.part(e.degree + 1);
    if next.is_zero() {
        return Ok(false);
    }
    let l = next.compress(e.m0, e.n0)?.hpoly;
    Ok(uni_gcd(&r, &l)?.is_one())
}

/// Index of a face of a Newton diagram or C-polytope.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "index", rename_all = "lowercase")]
pub enum FaceKind {
    Vertex(usize),
    Edge(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FaceRef {
    pub face: FaceKind,
    pub inner: bool,
}

/// Verdicts along one face of `Γ(f)`. Edge-only conditions are `None` on
/// vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaceVerdict {
    pub face: FaceRef,
    pub nd: bool,
    pub wnd: Option<bool>,
    pub whnd: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NonDegReport {
    pub faces: Vec<FaceVerdict>,
    /// IND along the inner faces of the polytope, in its face order
    pub ind_faces: Vec<(FaceRef, bool)>,
    pub nnd: bool,
    pub innd: bool,
    /// exponent `m` of the polytope `Γ(f + x^m + y^m)` used for INND
    pub innd_m: u32,
    pub wnnd: bool,
    /// WNND holds only because `Γ(f)` has no edge
    pub wnnd_vacuous: bool,
    pub whnnd: bool,
    pub nnd1: bool,
    pub nd1_x_vertex: Option<bool>,
    pub nd1_y_vertex: Option<bool>,
}

fn face_refs(d: &NewtonDiagram) -> Vec<(FaceRef, Face)> {
    let vs = d.vertices.iter().enumerate().map(|(i, &v)| {
        let face = Face::Vertex(v);
        (FaceRef { face: FaceKind::Vertex(i), inner: face_is_inner(&face) }, face)
    });
    let es = d.edges.iter().enumerate().map(|(i, e)| {
        let face = e.face();
        (FaceRef { face: FaceKind::Edge(i), inner: face_is_inner(&face) }, face)
    });
    vs.chain(es).collect()
}

/// INND with respect to `Γ(f + x^m + y^m)`.
pub fn innd_wrt(f: &BivarPoly, m: u32) -> Result<(bool, Vec<(FaceRef, bool)>)> {
    let poly = CPolytope::for_germ(f, m)?;
    let above = f.support().into_iter().all(|p: Exp| poly.diagram.is_above(p));
    let mut verdicts = Vec::new();
    for (r, face) in face_refs(&poly.diagram).into_iter().filter(|(r, _)| r.inner) {
        verdicts.push((r, ind_along(f, &face, &poly)?));
    }
    Ok((above && verdicts.iter().all(|v| v.1), verdicts))
}

/// Runs every classifier on a germ `f` with `f(0, 0) = 0`.
pub fn classify(f: &BivarPoly) -> Result<NonDegReport> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.is_unit() {
        return Err(Error::Unit);
    }
    let d = NewtonDiagram::of(f)?;
    let mut faces = Vec::new();
    for (r, face) in face_refs(&d) {
        let nd = nd_along(f, &face)?;
        let (wnd, whnd) = match r.face {
            FaceKind::Edge(i) => (Some(wnd_along_edge(f, &d.edges[i])?), Some(whnd_along_edge(f, &d.edges[i])?)),
            FaceKind::Vertex(_) => (None, None),
        };
        faces.push(FaceVerdict { face: r, nd, wnd, whnd });
    }
    let nnd = faces.iter().all(|v| v.nd);
    let wnnd = faces.iter().all(|v| v.wnd != Some(false));
    let whnnd = faces.iter().all(|v| v.whnd != Some(false));

    let (nd1_x_vertex, nd1_y_vertex, nnd1) = if d.convenient {
        let x = nd1_along_axis_vertex(f, Axis::X)?;
        let y = nd1_along_axis_vertex(f, Axis::Y)?;
        let inner_nd = faces.iter().filter(|v| v.face.inner).all(|v| v.nd);
        (Some(x), Some(y), inner_nd && x && y)
    } else {
        (None, None, false)
    };

    let innd_m = completion_exponent(f)?;
    let (innd, ind_faces) = innd_wrt(f, innd_m)?;
    Ok(NonDegReport {
        faces,
        ind_faces,
        nnd,
        innd,
        innd_m,
        wnnd,
        wnnd_vacuous: d.edges.is_empty(),
        whnnd,
        nnd1,
        nd1_x_vertex,
        nd1_y_vertex,
    })
}
