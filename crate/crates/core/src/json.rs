//! JSON documents for moulds, dihedral collections, bases and witnesses.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::{fmt_q, parse_q, Mono, SparsePoly};
use crate::dihedral::{DihedralCollection, DihedralWitness};
use crate::error::{Error, Result};
use crate::group::{Elem, Group, GroupJson};
use crate::mould::{Mould, Side};
use crate::spaces::{SpaceSpec, Witness};

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct TermDoc {
    pub c: String,
    pub e: Vec<u32>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct EntryDoc {
    pub sigma: Vec<Vec<u32>>,
    pub poly: Vec<TermDoc>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ComponentDoc {
    pub depth: usize,
    pub entries: Vec<EntryDoc>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct MouldDoc {
    pub side: String,
    pub group: GroupJson,
    pub depth0: String,
    pub components: Vec<ComponentDoc>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct DihedralDoc {
    pub dihedral: bool,
    pub group: GroupJson,
    pub w: usize,
    pub m: usize,
    pub entries: Vec<EntryDoc>,
}

fn poly_doc(p: &SparsePoly) -> Vec<TermDoc> {
    p.terms().map(|(e, c)| TermDoc { c: fmt_q(c), e: e.0.clone() }).collect()
}

fn sigma_doc(g: &Group, s: &[Elem]) -> Vec<Vec<u32>> {
    s.iter().map(|&x| g.residues(x)).collect()
}

fn parse_poly(terms: &[TermDoc], arity: usize) -> Result<SparsePoly> {
    let mut p = SparsePoly::zero(arity);
    for t in terms {
        if t.e.len() != arity {
            return Err(Error::Parse(format!("exponent vector {:?} should have length {arity}", t.e)));
        }
        p.add_term(Mono(t.e.clone()), parse_q(&t.c)?);
    }
    Ok(p)
}

fn parse_sigma(g: &Group, s: &[Vec<u32>]) -> Result<Vec<Elem>> {
    s.iter()
        .map(|r| {
            if r.len() != g.moduli().len() || r.iter().zip(g.moduli()).any(|(&x, &n)| x >= n) {
                return Err(Error::Parse(format!("bad group element {r:?} for moduli {:?}", g.moduli())));
            }
            g.elem(&r.iter().map(|&x| x as i64).collect::<Vec<_>>())
        })
        .collect()
}

pub fn mould_doc(m: &Mould) -> MouldDoc {
    let g = m.group();
    let components = m
        .depths()
        .collect::<Vec<_>>()
        .into_iter()
        .map(|d| ComponentDoc {
            depth: d,
            entries: m.component(d).into_iter().flatten().map(|(s, p)| EntryDoc { sigma: sigma_doc(g, s), poly: poly_doc(p) }).collect(),
        })
        .collect();
    MouldDoc { side: m.side().name().into(), group: g.into(), depth0: fmt_q(m.depth0()), components }
}

pub fn mould_from_doc(d: &MouldDoc) -> Result<Mould> {
    let g = d.group.build()?;
    let side = match d.side.as_str() {
        "u" => Side::U,
        "v" => Side::V,
        s => return Err(Error::Parse(format!("side must be \"u\" or \"v\", got {s:?}"))),
    };
    let mut m = Mould::zero(&g, side);
    m.set_depth0(parse_q(&d.depth0)?);
    for c in &d.components {
        if c.depth == 0 {
            return Err(Error::Parse("depth-0 data belongs in \"depth0\"".into()));
        }
        for e in &c.entries {
            if e.sigma.len() != c.depth {
                return Err(Error::Parse(format!("sigma of length {} in depth-{} component", e.sigma.len(), c.depth)));
            }
            let sigma = parse_sigma(&g, &e.sigma)?;
            let p = parse_poly(&e.poly, c.depth)?;
            m.add_to(&sigma, &p, &crate::algebra::q_one());
        }
    }
    Ok(m)
}

pub fn mould_to_json(m: &Mould) -> String {
    serde_json::to_string_pretty(&mould_doc(m)).expect("serializable")
}

pub fn mould_from_json(s: &str) -> Result<Mould> {
    let d: MouldDoc = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    mould_from_doc(&d)
}

pub fn dihedral_doc(z: &DihedralCollection) -> DihedralDoc {
    let g = z.group();
    DihedralDoc {
        dihedral: true,
        group: g.into(),
        w: z.weight(),
        m: z.depth(),
        entries: z.entries().map(|(s, p)| EntryDoc { sigma: sigma_doc(g, s), poly: poly_doc(p) }).collect(),
    }
}

pub fn dihedral_from_doc(d: &DihedralDoc) -> Result<DihedralCollection> {
    if !d.dihedral {
        return Err(Error::Parse("\"dihedral\" must be true".into()));
    }
    let g = d.group.build()?;
    let mut z = DihedralCollection::zero(&g, d.w, d.m);
    for e in &d.entries {
        if e.sigma.len() != d.m {
            return Err(Error::Parse(format!("index of length {} in depth-{} collection", e.sigma.len(), d.m)));
        }
        let sigma = parse_sigma(&g, &e.sigma)?;
        let mut p = z.get(&sigma);
        p.add_assign_scaled(&parse_poly(&e.poly, d.m)?, &crate::algebra::q_one());
        z.set(sigma, p)?;
    }
    Ok(z)
}

pub fn dihedral_to_json(z: &DihedralCollection) -> String {
    serde_json::to_string_pretty(&dihedral_doc(z)).expect("serializable")
}

pub fn dihedral_from_json(s: &str) -> Result<DihedralCollection> {
    let d: DihedralDoc = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    dihedral_from_doc(&d)
}

/// Either kind of document.
#[derive(Clone, Debug, PartialEq)]
pub enum Document {
    Mould(Mould),
    Dihedral(DihedralCollection),
}

pub fn document_from_json(s: &str) -> Result<Document> {
    let v: Value = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    if v.get("dihedral").is_some() {
        let d: DihedralDoc = serde_json::from_value(v).map_err(|e| Error::Parse(e.to_string()))?;
        Ok(Document::Dihedral(dihedral_from_doc(&d)?))
    } else {
        let d: MouldDoc = serde_json::from_value(v).map_err(|e| Error::Parse(e.to_string()))?;
        Ok(Document::Mould(mould_from_doc(&d)?))
    }
}

pub fn spec_value(spec: &SpaceSpec) -> Value {
    json!({
        "spaces": spec.spaces.iter().map(|s| s.name()).collect::<Vec<_>>(),
        "group": GroupJson::from(&spec.group),
        "weight": spec.weight,
        "depth": spec.depth,
    })
}

/// Basis output: a metadata header followed by the basis moulds.
pub fn basis_value(spec: &SpaceSpec, basis: &[Mould]) -> Value {
    json!({
        "spec": spec_value(spec),
        "dimension": basis.len(),
        "ambient_dimension": spec.ambient_dimension(),
        "basis": basis.iter().map(mould_doc).collect::<Vec<_>>(),
    })
}

pub fn dihedral_basis_value(group: &Group, w: usize, m: usize, with_distribution: bool, ambient: usize, basis: &[DihedralCollection]) -> Value {
    json!({
        "spec": {
            "space": if with_distribution { "dihedral-distribution" } else { "dihedral" },
            "group": GroupJson::from(group),
            "weight": w,
            "depth": m,
        },
        "dimension": basis.len(),
        "ambient_dimension": ambient,
        "basis": basis.iter().map(dihedral_doc).collect::<Vec<_>>(),
    })
}

pub fn witness_value(group: &Group, w: &Witness) -> Value {
    json!({
        "condition": w.condition.to_string(),
        "depth": w.depth,
        "sigma": sigma_doc(group, &w.sigma),
        "aux": w.aux,
        "residual": poly_doc(&w.residual),
    })
}

pub fn dihedral_witness_value(group: &Group, w: &DihedralWitness) -> Value {
    json!({
        "relation": w.relation.to_string(),
        "g": sigma_doc(group, &w.g),
        "residual": poly_doc(&w.residual),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::q;
    use crate::random::{random_mould, rng};

    #[test]
    fn mould_round_trip() {
        let mut r = rng(3);
        for g in [Group::trivial(), Group::cyclic(3), Group::new(&[2, 2]).unwrap()] {
            for side in [Side::U, Side::V] {
                let mut m = random_mould(&mut r, &g, side, 3, 3);
                m.set_depth0(crate::algebra::qf(-7, 3));
                let s = mould_to_json(&m);
                let back = mould_from_json(&s).unwrap();
                assert_eq!(back, m);
                assert_eq!(mould_to_json(&back), s);
            }
        }
    }

    #[test]
    fn parses_the_documented_shape() {
        let s = r#"{"side":"u","group":{"cyclic":[2]},"depth0":"0",
            "components":[{"depth":1,"entries":[{"sigma":[[1]],"poly":[{"c":"3/2","e":[2]}]}]}]}"#;
        let m = mould_from_json(s).unwrap();
        assert_eq!(m.get(&[Elem(1)]), Some(&SparsePoly::var(0, 1).pow(2).scale(&crate::algebra::qf(3, 2))));
        assert!(mould_from_json(&s.replace("[[1]]", "[[2]]")).is_err());
        assert!(mould_from_json(&s.replace("\"u\"", "\"w\"")).is_err());
        assert!(mould_from_json(&s.replace("[2]}]}]}]}", "[2,0]}]}]}]}")).is_err());
    }

    #[test]
    fn dihedral_round_trip() {
        let g = Group::cyclic(2);
        let mut z = DihedralCollection::zero(&g, 4, 2);
        z.set(vec![Elem(0), Elem(1)], &SparsePoly::var(0, 2) * &SparsePoly::var(1, 2)).unwrap();
        z.set(vec![Elem(1), Elem(1)], SparsePoly::var(0, 2).pow(2).scale(&q(5))).unwrap();
        let s = dihedral_to_json(&z);
        assert_eq!(dihedral_from_json(&s).unwrap(), z);
        assert!(matches!(document_from_json(&s).unwrap(), Document::Dihedral(_)));
    }
}
