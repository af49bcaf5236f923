use rayon::prelude::*;
use serde::Serialize;

use super::graph::{enumerate_graphs, DecoratedGraph, GraphClass};
use super::psi::{edge_factor, vertex_integral, VertexPoint};
use crate::error::{Error, Result};
use crate::geometry::{P1Class, P1Point};
use crate::series::rational::{factorial, int, pow_i, Rational};
use crate::series::VLaurent;

/// What sits at one marked point: an optional class to restrict, a ψ power,
/// and an optional pole `1/(c·v - ψ)` given by `c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkingSpec {
    pub restriction: Option<P1Class>,
    pub psi: u32,
    pub pole: Option<Rational>,
}

impl MarkingSpec {
    pub fn insertion(class: P1Class, psi: u32) -> Self {
        MarkingSpec { restriction: Some(class), psi, pole: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphContribution {
    pub graph: DecoratedGraph,
    pub automorphisms: u64,
    #[serde(serialize_with = "serialize_laurent")]
    pub value: VLaurent,
}

fn serialize_laurent<S: serde::Serializer>(v: &VLaurent, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// Contribution of one decorated graph, before dividing by `|Aut|`.
fn raw_contribution(g: &DecoratedGraph, marks: &[MarkingSpec]) -> Result<VLaurent> {
    let mut value = VLaurent::one();
    for &(_, _, d) in &g.edges {
        value = &value * &edge_factor(d).scale(&int(d as i64).recip());
    }
    for v in 0..g.vertex_count() {
        let p = P1Point::from_label(g.labels[v]).ok_or(Error::InvalidComponent(g.labels[v]))?;
        let w = p.tangent_weight();
        let incident = g.incident(v);
        let tangent = VLaurent::monomial(w.clone(), 1)
            .pow(incident.len() as i32 - 1)
            .expect("tangent weight is a monomial");
        value = &value * &tangent;
        let mut points: Vec<VertexPoint> =
            incident.iter().map(|&(_, d)| VertexPoint::flag(&w / int(d as i64))).collect();
        for i in g.markings_at(v) {
            let m = &marks[i];
            if let Some(class) = &m.restriction {
                value = &value * class.restrict(p);
            }
            points.push(VertexPoint { psi: m.psi, weight: m.pole.clone() });
        }
        if value.is_zero() {
            return Ok(value);
        }
        value = &value * &vertex_integral(&points)?;
    }
    Ok(value)
}

/// Per-class contributions `(1/|Aut|) · Π edges · Π vertices` for degree `d`.
/// Graphs rejected by `keep` are skipped.
pub fn graph_contributions(
    marks: &[MarkingSpec],
    d: u32,
    keep: &(dyn Fn(&DecoratedGraph) -> bool + Sync),
) -> Result<Vec<GraphContribution>> {
    let classes: Vec<GraphClass> = enumerate_graphs(marks.len(), d);
    classes
        .into_par_iter()
        .filter(|c| keep(&c.graph))
        .map(|c| {
            let raw = raw_contribution(&c.graph, marks)?;
            let value = raw.scale(&Rational::from_integer((c.automorphisms as i64).into()).recip());
            Ok(GraphContribution { graph: c.graph, automorphisms: c.automorphisms, value })
        })
        .collect()
}

/// Sum of [`graph_contributions`].
pub fn graph_sum(
    marks: &[MarkingSpec],
    d: u32,
    keep: &(dyn Fn(&DecoratedGraph) -> bool + Sync),
) -> Result<VLaurent> {
    Ok(graph_contributions(marks, d, keep)?
        .into_iter()
        .fold(VLaurent::zero(), |acc, c| &acc + &c.value))
}

/// `⟨τ_{a₁}(γ₁)⋯τ_{aₙ}(γₙ)⟩_{0,n,d}` on the line, for `d ≥ 1`.
pub fn closed_descendant(insertions: &[(P1Class, u32)], d: u32) -> Result<VLaurent> {
    if d == 0 {
        return Err(Error::InvalidParameter("closed descendants need degree at least 1".into()));
    }
    let marks: Vec<MarkingSpec> =
        insertions.iter().map(|(c, a)| MarkingSpec::insertion(c.clone(), *a)).collect();
    graph_sum(&marks, d, &|_| true)
}

/// Disk factor `D(μ)` and the fixed point the disk boundary circles around.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiskFactor {
    pub mu: i32,
    pub value: VLaurent,
    pub target: P1Point,
}

impl DiskFactor {
    pub fn target_label(&self) -> u8 {
        self.target.label()
    }
}

/// `D²(m) = m^{m-2}/(m! v^{m-2})` for `μ = m > 0` and
/// `D¹(m) = (-1)^{m+1} m^{m-2}/(m! v^{m-2})` for `μ = -m < 0`.
pub fn disk_factor(mu: i32) -> Result<DiskFactor> {
    if mu == 0 {
        return Err(Error::ZeroWinding);
    }
    let m = mu.abs();
    let mut c = pow_i(&int(m as i64), m - 2) / Rational::from_integer(factorial(m as u32));
    let target = if mu > 0 {
        P1Point::P2
    } else {
        if m % 2 == 0 {
            c = -c;
        }
        P1Point::P1
    };
    Ok(DiskFactor { mu, value: VLaurent::monomial(c, 2 - m), target })
}

fn winding_and_degree(beta: (u32, u32)) -> Result<(i32, u32)> {
    let (dm, dp) = beta;
    if dm == dp {
        return Err(Error::EqualDiskDegrees(dm));
    }
    Ok((dp as i32 - dm as i32, dm.min(dp)))
}

fn open_marks(insertions: &[(P1Class, u32)], mu: i32, restriction: Option<P1Class>) -> Vec<MarkingSpec> {
    let mut marks: Vec<MarkingSpec> =
        insertions.iter().map(|(c, a)| MarkingSpec::insertion(c.clone(), *a)).collect();
    marks.push(MarkingSpec { restriction, psi: 0, pole: Some(int(mu as i64).recip()) });
    marks
}

/// Disk invariant of class `β′ = (d₋, d₊)` by localization: graphs whose
/// extra marked point sits at the disk's fixed point, with pole `v/μ` there
/// and prefactor `D(μ)·μ/v`.
pub fn open_invariant(beta: (u32, u32), insertions: &[(P1Class, u32)]) -> Result<VLaurent> {
    let (mu, d) = winding_and_degree(beta)?;
    let disk = disk_factor(mu)?;
    let marks = open_marks(insertions, mu, None);
    let extra = insertions.len();
    let label = disk.target_label();
    let sum = graph_sum(&marks, d, &|g| g.labels[g.markings[extra]] == label)?;
    let prefactor = &disk.value * &VLaurent::monomial(int(mu as i64), -1);
    Ok(&prefactor * &sum)
}

/// The same invariant as `D(μ)` times a closed invariant with the extra
/// insertion `φ_h/((v/μ)(v/μ - ψ))`.
pub fn open_via_closed(beta: (u32, u32), insertions: &[(P1Class, u32)]) -> Result<VLaurent> {
    let (mu, d) = winding_and_degree(beta)?;
    let disk = disk_factor(mu)?;
    let marks = open_marks(insertions, mu, Some(P1Class::phi(disk.target)));
    let closed = graph_sum(&marks, d, &|_| true)?;
    let z_inverse = VLaurent::monomial(int(mu as i64), -1);
    Ok(&disk.value * &(&z_inverse * &closed))
}

/// `Σ_{labelled graphs} contribution / V!`, the automorphism-free form of
/// [`graph_sum`].
pub fn graph_sum_labeled(marks: &[MarkingSpec], d: u32) -> Result<VLaurent> {
    let mut total = VLaurent::zero();
    for g in super::graph::labeled_graphs(marks.len(), d) {
        let raw = raw_contribution(&g, marks)?;
        let orbit = Rational::from_integer(factorial(g.vertex_count() as u32));
        total = &total + &raw.scale(&orbit.recip());
    }
    Ok(total)
}
