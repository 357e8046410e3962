//! Resolution of plane curve germs over finite fields by point blow-ups.
//!
//! Tangent directions that are not rational over the current field are
//! handled by adjoining a root of their minimal polynomial; the resulting
//! node stands for all of its Galois conjugates, recorded in
//! [`BlowUpNode::points`]. Every sum over infinitely near points is weighted
//! by that count.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{extend_unchecked, factor_finite_field, FElem, FieldTower};
use crate::bivar::{bivar_gcd, BivarPoly};
use crate::error::{Error, Result};

pub const DEFAULT_DEPTH_CAP: u32 = 256;
pub const DEFAULT_TOWER_DEGREE_CAP: usize = 1 << 12;

/// Whether the germ is reduced at the origin: no repeated factor of `f`
/// passes through it. If both partials vanish, `f` is a `p`-th power.
pub fn is_reduced(f: &BivarPoly) -> Result<bool> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (fx, fy) = (f.partial_x(), f.partial_y());
    if fx.is_zero() && fy.is_zero() {
        return Ok(false);
    }
    let g = bivar_gcd(&bivar_gcd(f, &fx)?, &fy)?;
    Ok(g.is_unit())
}

/// Position of an infinitely near point relative to its parent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Direction {
    Root,
    /// `(c : 1)` with `c = 0`, the origin of the `x = uv` chart
    XChartOrigin,
    /// `(1 : 0)`, the origin of the `y = uv` chart
    YChartOrigin,
    /// `(c : 1)` with `c` a root of an irreducible factor of the given degree
    Tangent { degree: usize },
}

impl Direction {
    fn is_chart_origin(&self) -> bool {
        matches!(self, Direction::XChartOrigin | Direction::YChartOrigin)
    }
}

/// One infinitely near point together with its subtree.
#[derive(Clone, Debug)]
pub struct BlowUpNode {
    pub tower: FieldTower,
    /// local equation of the strict transform, centred at the point
    pub local_eq: BivarPoly,
    pub mult: u32,
    pub special: bool,
    pub depth: u32,
    /// number of Galois-conjugate points this node represents
    pub points: u64,
    pub direction: Direction,
    pub children: Vec<BlowUpNode>,
}

/// A first-neighbourhood point produced by one blow-up.
#[derive(Clone, Debug)]
pub struct Child {
    pub direction: Direction,
    pub special: bool,
    pub tower: FieldTower,
    pub strict_transform: BivarPoly,
    /// conjugates of this point per parent point
    pub conjugates: u64,
}

fn tangent_child(f: &BivarPoly, c: &FElem, m: u32, degree: usize) -> Result<Child> {
    Ok(Child {
        direction: if degree == 1 && f.tower().is_zero(c) { Direction::XChartOrigin } else { Direction::Tangent { degree } },
        special: false,
        tower: f.tower().clone(),
        strict_transform: f.chart_direction(c, m)?,
        conjugates: degree as u64,
    })
}

/// Points in the first neighbourhood of the origin of `f`, whose
/// multiplicity is `m`, with their strict transforms.
pub fn blow_up_children(f: &BivarPoly, m: u32, parent_special: bool) -> Result<Vec<Child>> {
    let t = f.tower();
    if t.characteristic().is_zero() {
        return Err(Error::CharacteristicZero("resolution"));
    }
    let cone = f.homogeneous_part(m).compress(1, 1)?;
    let mut children = Vec::new();
    if cone.alpha > 0 {
        children.push(tangent_child(f, &t.zero(), m, 1)?);
    }
    // factor order is canonical, so the seed does not affect the result
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    if cone.hpoly.deg0() > 0 {
        for (q, _) in factor_finite_field(&cone.hpoly, &mut rng)? {
            let degree = q.deg0();
            if degree == 1 {
                let c = t.neg(&q.coeff(0));
                children.push(tangent_child(f, &c, m, 1)?);
            } else {
                let ext = extend_unchecked(t, &q);
                let g = f.map_coeffs(&ext.tower, |c| ext.embed(c));
                children.push(tangent_child(&g, &ext.root, m, degree)?);
            }
        }
    }
    if cone.beta > 0 {
        children.push(Child {
            direction: Direction::YChartOrigin,
            special: false,
            tower: t.clone(),
            strict_transform: f.chart_y_axis(m)?,
            conjugates: 1,
        });
    }
    for c in &mut children {
        c.special = parent_special && c.direction.is_chart_origin();
    }
    Ok(children)
}

fn build(
    local_eq: BivarPoly,
    special: bool,
    depth: u32,
    points: u64,
    direction: Direction,
    caps: (u32, usize),
) -> Result<BlowUpNode> {
    if depth > caps.0 {
        return Err(Error::internal(format!("resolution depth exceeded {}", caps.0)));
    }
    if local_eq.tower().total_degree() > caps.1 {
        return Err(Error::internal(format!("resolution field degree exceeded {}", caps.1)));
    }
    let mult = local_eq.order().ok_or_else(|| Error::internal("strict transform vanished"))?;
    if mult == 0 {
        return Err(Error::internal("blow-up centre is not on the strict transform"));
    }
    let mut children = Vec::new();
    if mult > 1 {
        for c in blow_up_children(&local_eq, mult, special)? {
            children.push(build(c.strict_transform, c.special, depth + 1, points * c.conjugates, c.direction, caps)?);
        }
    }
    Ok(BlowUpNode { tower: local_eq.tower().clone(), local_eq, mult, special, depth, points, direction, children })
}

/// Resolution tree of a reduced germ over a finite field.
pub fn resolution_tree(f: &BivarPoly) -> Result<BlowUpNode> {
    resolution_tree_with_caps(f, DEFAULT_DEPTH_CAP, DEFAULT_TOWER_DEGREE_CAP)
}

pub fn resolution_tree_with_caps(f: &BivarPoly, depth_cap: u32, tower_degree_cap: usize) -> Result<BlowUpNode> {
    if f.tower().characteristic().is_zero() {
        return Err(Error::CharacteristicZero("resolution"));
    }
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.is_unit() {
        return Err(Error::Unit);
    }
    if !is_reduced(f)? {
        return Err(Error::NotReduced);
    }
    build(f.clone(), true, 0, 1, Direction::Root, (depth_cap, tower_degree_cap))
}

impl BlowUpNode {
    pub fn iter(&self) -> Vec<&BlowUpNode> {
        let mut out = vec![self];
        let mut i = 0;
        while i < out.len() {
            out.extend(out[i].children.iter());
            i += 1;
        }
        out
    }

    pub fn summary(&self) -> ResolutionSummary {
        let nodes = self.iter();
        let contribution = |n: &&BlowUpNode| n.points * (n.mult as u64 * (n.mult as u64 - 1) / 2);
        let mut multiplicities: Vec<(u32, u64)> = Vec::new();
        for n in &nodes {
            match multiplicities.iter_mut().find(|e| e.0 == n.mult) {
                Some(e) => e.1 += n.points,
                None => multiplicities.push((n.mult, n.points)),
            }
        }
        multiplicities.sort_unstable_by_key(|m| std::cmp::Reverse(m.0));
        ResolutionSummary {
            delta: nodes.iter().map(contribution).sum(),
            nu: nodes.iter().filter(|n| n.special).map(contribution).sum(),
            r: nodes.iter().filter(|n| n.children.is_empty()).map(|n| n.points).sum(),
            multiplicities,
            max_depth: nodes.iter().map(|n| n.depth).max().unwrap_or(0),
            max_tower_degree: nodes.iter().map(|n| n.tower.total_degree()).max().unwrap_or(1),
            superisolated: self.children.iter().all(|c| c.mult == 1),
        }
    }

    /// Serializable view: mult, special flag, depth, field degree, children.
    pub fn to_json(&self) -> NodeJson {
        NodeJson {
            mult: self.mult,
            special: self.special,
            depth: self.depth,
            tower_degree: self.tower.total_degree(),
            points: self.points,
            direction: self.direction.clone(),
            children: self.children.iter().map(BlowUpNode::to_json).collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct NodeJson {
    pub mult: u32,
    pub special: bool,
    pub depth: u32,
    pub tower_degree: usize,
    pub points: u64,
    pub direction: Direction,
    pub children: Vec<NodeJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResolutionSummary {
    /// sum of `m(m-1)/2` over all infinitely near points
    pub delta: u64,
    /// the same sum over special points
    pub nu: u64,
    /// number of branches
    pub r: u64,
    /// `(multiplicity, number of points)`, descending multiplicity
    pub multiplicities: Vec<(u32, u64)>,
    pub max_depth: u32,
    pub max_tower_degree: usize,
    /// every point of the first neighbourhood is smooth
    pub superisolated: bool,
}

/// Resolution summary of a reduced germ over a finite field.
pub fn resolve(f: &BivarPoly) -> Result<ResolutionSummary> {
    Ok(resolution_tree(f)?.summary())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(t: &FieldTower, terms: &[((u32, u32), i64)]) -> BivarPoly {
        BivarPoly::from_i64s(t, terms)
    }

    fn f3() -> FieldTower {
        FieldTower::prime(3).unwrap()
    }

    fn f7() -> FieldTower {
        FieldTower::prime(7).unwrap()
    }

    #[test]
    fn reducedness() {
        let q = FieldTower::rationals();
        assert!(is_reduced(&p(&q, &[((2, 0), 1), ((0, 3), 1)])).unwrap());
        let t2 = FieldTower::prime(2).unwrap();
        assert!(!is_reduced(&p(&t2, &[((2, 0), 1), ((0, 2), 1)])).unwrap());
        // x (x - y)^2
        assert!(!is_reduced(&p(&q, &[((3, 0), 1), ((2, 1), -2), ((1, 2), 1)])).unwrap());
        // (x - 1)^2 y is reduced at the origin
        assert!(is_reduced(&p(&q, &[((2, 1), 1), ((1, 1), -2), ((0, 1), 1)])).unwrap());
    }

    #[test]
    fn first_neighbourhood_examples() {
        let t = f7();
        let f = p(&t, &[((2, 0), 1), ((0, 5), 1)]);
        let ch = blow_up_children(&f, 2, true).unwrap();
        assert_eq!(ch.len(), 1);
        assert_eq!(ch[0].direction, Direction::XChartOrigin);
        assert!(ch[0].special);
        assert_eq!(ch[0].strict_transform, p(&t, &[((2, 0), 1), ((0, 3), 1)]));

        let xy = p(&t, &[((1, 1), 1)]);
        let ch = blow_up_children(&xy, 2, true).unwrap();
        assert_eq!(ch.len(), 2);
        assert!(ch.iter().all(|c| c.special && c.strict_transform.order() == Some(1)));

        let g = p(&t, &[((2, 0), 1), ((1, 1), 2), ((0, 2), 1), ((0, 3), 1)]);
        let ch = blow_up_children(&g, 2, true).unwrap();
        assert_eq!(ch.len(), 1);
        assert!(!ch[0].special);
        assert_eq!(ch[0].strict_transform, p(&t, &[((2, 0), 1), ((0, 1), 1)]));
    }

    #[test]
    fn trees_and_invariants() {
        let t = f7();
        let s = resolve(&p(&t, &[((2, 0), 1), ((0, 5), 1)])).unwrap();
        assert_eq!((s.delta, s.r, s.nu, s.superisolated), (2, 1, 2, false));
        assert_eq!(s.multiplicities[0], (2, 2));

        let s = resolve(&p(&t, &[((2, 0), 1), ((1, 1), 2), ((0, 2), 1), ((0, 3), 1)])).unwrap();
        assert_eq!((s.delta, s.superisolated), (1, true));

        let s = resolve(&p(&t, &[((1, 0), 1), ((0, 3), 1)])).unwrap();
        assert_eq!((s.delta, s.r, s.max_depth), (0, 1, 0));
    }

    #[test]
    fn example_with_conjugate_branches() {
        let t = f3();
        let f = p(&t, &[((3, 0), 1), ((2, 1), 1), ((1, 2), 1), ((0, 7), 1)]);
        let tree = resolution_tree(&f).unwrap();
        assert_eq!(tree.mult, 3);
        let s = tree.summary();
        assert_eq!((s.delta, s.r), (5, 3));
        let g = f.add(&p(&t, &[((6, 0), 1)]));
        let s = resolve(&g).unwrap();
        assert_eq!((s.delta, s.r), (4, 2));
    }

    #[test]
    fn special_points_inherit() {
        // (x + y)^2 + y^5: the chart origin below the c = -1 point is not special
        let f = p(&f7(), &[((2, 0), 1), ((1, 1), 2), ((0, 2), 1), ((0, 5), 1)]);
        let s = resolve(&f).unwrap();
        assert_eq!(s.nu, 1);
        assert_eq!(s.delta, 2);
    }

    #[test]
    fn rejects_unsupported_input() {
        let q = FieldTower::rationals();
        assert_eq!(
            resolution_tree(&p(&q, &[((2, 0), 1), ((0, 3), 1)])).unwrap_err(),
            Error::CharacteristicZero("resolution")
        );
        let t = f3();
        assert_eq!(resolution_tree(&p(&t, &[((2, 0), 1)])).unwrap_err(), Error::NotReduced);
    }
}
