//! Built-in groups, JSON group definitions and subgroup specifications.

use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{GroupTable, Permutation, SubgroupEmbedding, DEFAULT_ORDER_CAP};
use crate::error::{Error, Result};

/// On-disk group definition: permutations in one-line image notation.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupDefinition {
    pub degree: usize,
    pub generators: Vec<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

impl GroupDefinition {
    pub fn permutations(&self) -> Result<Vec<Permutation>> {
        self.generators
            .iter()
            .map(|g| {
                if g.len() != self.degree {
                    return Err(Error::Input(format!(
                        "generator {g:?} has {} images but degree is {}",
                        g.len(),
                        self.degree
                    )));
                }
                Permutation::new(g.clone())
            })
            .collect()
    }

    pub fn build(&self, cap: usize) -> Result<GroupTable> {
        let g = GroupTable::generate_with_cap(&self.permutations()?, cap)?;
        Ok(match &self.name {
            Some(n) => g.with_name(n.clone()),
            None => g,
        })
    }
}

fn cycle(points: impl IntoIterator<Item = u32>, degree: usize) -> Result<Permutation> {
    Permutation::from_cycles(degree, &[points.into_iter().collect()])
}

/// Symmetric group on `n ≥ 1` points.
pub fn symmetric(n: u32) -> Result<GroupTable> {
    Ok(GroupTable::generate(&symmetric_generators(n)?)?.with_name(format!("S{n}")))
}

fn symmetric_generators(n: u32) -> Result<Vec<Permutation>> {
    let d = n as usize;
    match n {
        0 => Err(Error::Input("S0 is not supported".into())),
        1 => Ok(vec![Permutation::identity(1)]),
        2 => Ok(vec![cycle([0, 1], d)?]),
        _ => Ok(vec![cycle([0, 1], d)?, cycle(0..n, d)?]),
    }
}

/// Alternating group on `n ≥ 1` points.
pub fn alternating(n: u32) -> Result<GroupTable> {
    Ok(GroupTable::generate(&alternating_generators(n)?)?.with_name(format!("A{n}")))
}

fn alternating_generators(n: u32) -> Result<Vec<Permutation>> {
    let d = n as usize;
    match n {
        0 => Err(Error::Input("A0 is not supported".into())),
        1 | 2 => Ok(vec![Permutation::identity(d)]),
        3 => Ok(vec![cycle([0, 1, 2], d)?]),
        _ if n % 2 == 1 => Ok(vec![cycle([0, 1, 2], d)?, cycle(0..n, d)?]),
        _ => Ok(vec![cycle([0, 1, 2], d)?, cycle(1..n, d)?]),
    }
}

/// Cyclic group of order `n` acting on `n` points.
pub fn cyclic(n: u32) -> Result<GroupTable> {
    Ok(GroupTable::generate(&cyclic_generators(n)?)?.with_name(format!("Z/{n}")))
}

fn cyclic_generators(n: u32) -> Result<Vec<Permutation>> {
    match n {
        0 => Err(Error::Input("Z/0 is not finite".into())),
        1 => Ok(vec![Permutation::identity(1)]),
        _ => Ok(vec![cycle(0..n, n as usize)?]),
    }
}

/// Dihedral group of order `order` (the symmetries of a regular `order/2`-gon).
pub fn dihedral(order: u32) -> Result<GroupTable> {
    Ok(GroupTable::generate(&dihedral_generators(order)?)?.with_name(format!("D{order}")))
}

fn dihedral_generators(order: u32) -> Result<Vec<Permutation>> {
    if order < 6 || !order.is_multiple_of(2) {
        return Err(Error::Input(format!("dihedral order must be even and at least 6, got {order}")));
    }
    let m = order / 2;
    let rotation = cycle(0..m, m as usize)?;
    let reflection = Permutation::new((0..m).map(|i| (m - i) % m).collect())?;
    Ok(vec![rotation, reflection])
}

/// Quaternion group in its regular representation on 8 points.
pub fn quaternion() -> Result<GroupTable> {
    Ok(GroupTable::generate(&quaternion_generators()?)?.with_name("Q8"))
}

fn quaternion_generators() -> Result<Vec<Permutation>> {
    // point 4s + u encodes (-1)^s * [1, i, j, k][u]
    fn unit_product(a: usize, b: usize) -> (bool, usize) {
        const TABLE: [[(bool, usize); 4]; 4] = [
            [(false, 0), (false, 1), (false, 2), (false, 3)],
            [(false, 1), (true, 0), (false, 3), (true, 2)],
            [(false, 2), (true, 3), (true, 0), (false, 1)],
            [(false, 3), (false, 2), (true, 1), (true, 0)],
        ];
        TABLE[a][b]
    }
    let left = |u: usize| -> Result<Permutation> {
        let images = (0..8)
            .map(|p| {
                let (s, v) = (p / 4, p % 4);
                let (neg, w) = unit_product(u, v);
                ((s + neg as usize) % 2 * 4 + w) as u32
            })
            .collect();
        Permutation::new(images)
    };
    Ok(vec![left(1)?, left(2)?])
}

fn builtin_generators(name: &str) -> Result<Option<(String, Vec<Permutation>)>> {
    let name = name.trim();
    let number = |s: &str| s.parse::<u32>().ok();
    let found = if name == "Q8" {
        Some(quaternion_generators()?)
    } else if let Some(n) = name.strip_prefix("Z/").and_then(number) {
        Some(cyclic_generators(n)?)
    } else if let Some(n) = name.strip_prefix('S').and_then(number) {
        Some(symmetric_generators(n)?)
    } else if let Some(n) = name.strip_prefix('A').and_then(number) {
        Some(alternating_generators(n)?)
    } else if let Some(n) = name.strip_prefix('D').and_then(number) {
        Some(dihedral_generators(n)?)
    } else {
        None
    };
    Ok(found.map(|g| (name.to_string(), g)))
}

/// A built-in group by name: `Sn`, `An`, `Z/n`, `Dn` (order n), `Q8`.
pub fn builtin(name: &str) -> Result<GroupTable> {
    builtin_with_cap(name, DEFAULT_ORDER_CAP)
}

pub fn builtin_with_cap(name: &str, cap: usize) -> Result<GroupTable> {
    match builtin_generators(name)? {
        Some((n, gens)) => Ok(GroupTable::generate_with_cap(&gens, cap)?.with_name(n)),
        None => Err(Error::Input(format!("unknown group {name:?}"))),
    }
}

/// A group from a built-in name or a path to a JSON definition file.
pub fn resolve_group(spec: &str, cap: usize) -> Result<GroupTable> {
    if let Some(def) = load_definition(spec)? {
        let name = def.name.clone().unwrap_or_else(|| spec.to_string());
        return Ok(def.build(cap)?.with_name(name));
    }
    builtin_with_cap(spec, cap)
}

fn load_definition(spec: &str) -> Result<Option<GroupDefinition>> {
    let path = Path::new(spec);
    if !(spec.ends_with(".json") || path.is_file()) {
        return Ok(None);
    }
    let text = std::fs::read_to_string(path)?;
    Ok(Some(serde_json::from_str(&text)?))
}

/// A subgroup of `ambient` from a textual specification.
///
/// Accepted forms:
/// - `G` (the whole group), `1` or `e` (trivial subgroup);
/// - a built-in name such as `S3` or `Z/4`, whose generators are padded to the ambient degree;
/// - `kZ/n`, the subgroup generated by the `k`-th power of the `n`-cycle;
/// - `<(0 1 2), (0 1)>`, generators in cycle notation;
/// - a path to a JSON group definition.
///
/// Generators must lie in `ambient`, which therefore needs a permutation realization.
pub fn resolve_subgroup(ambient: &Arc<GroupTable>, spec: &str) -> Result<SubgroupEmbedding> {
    let spec = spec.trim();
    match spec {
        "G" => return Ok(SubgroupEmbedding::whole(ambient)),
        "1" | "e" | "{e}" => return Ok(SubgroupEmbedding::trivial(ambient)),
        _ => {}
    }
    if ambient.name() == Some(spec) {
        return Ok(SubgroupEmbedding::whole(ambient));
    }
    let degree = ambient
        .permutations()
        .and_then(|p| p.first())
        .map(Permutation::degree)
        .ok_or_else(|| Error::Input("subgroup specifications need a permutation group".into()))?;

    let gens: Vec<Permutation> = if let Some(inner) = spec.strip_prefix('<').and_then(|s| s.strip_suffix('>')) {
        split_cycle_list(inner).iter().map(|c| Permutation::parse_cycles(c, degree)).collect::<Result<_>>()?
    } else if let Some((k, n)) = parse_multiple_subgroup(spec) {
        if n as usize > degree {
            return Err(Error::Input(format!("{spec}: cycle length exceeds degree {degree}")));
        }
        let c = cycle_power(n, k, degree)?;
        vec![c]
    } else if let Some(def) = load_definition(spec)? {
        def.permutations()?.into_iter().map(|p| pad(p, degree)).collect::<Result<_>>()?
    } else if let Some((_, g)) = builtin_generators(spec)? {
        g.into_iter().map(|p| pad(p, degree)).collect::<Result<_>>()?
    } else {
        return Err(Error::Input(format!("cannot parse subgroup {spec:?}")));
    };

    let indices = gens
        .iter()
        .map(|p| {
            ambient
                .index_of(p)
                .ok_or_else(|| Error::Input(format!("generator {p} of {spec:?} is not in the ambient group")))
        })
        .collect::<Result<Vec<u32>>>()?;
    SubgroupEmbedding::generated_by(ambient, &indices)
}

fn pad(p: Permutation, degree: usize) -> Result<Permutation> {
    if p.degree() > degree {
        return Err(Error::Input(format!("subgroup degree {} exceeds ambient degree {degree}", p.degree())));
    }
    Ok(p.padded(degree))
}

fn parse_multiple_subgroup(spec: &str) -> Option<(u32, u32)> {
    let (k, n) = spec.split_once("Z/")?;
    Some((k.parse().ok()?, n.parse().ok()?))
}

fn cycle_power(n: u32, k: u32, degree: usize) -> Result<Permutation> {
    let c = cycle(0..n, degree)?;
    let mut p = Permutation::identity(degree);
    for _ in 0..k {
        p = p.compose(&c);
    }
    Ok(p)
}

/// Splits `"(0 1), (1 2 3)(4 5)"` at top-level commas.
fn split_cycle_list(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0;
    let mut current = String::new();
    for ch in s.chars() {
        match ch {
            '(' => {
                depth += 1;
                current.push(ch);
            }
            ')' => {
                depth -= 1;
                current.push(ch);
            }
            ',' if depth == 0 => out.push(std::mem::take(&mut current)),
            _ => current.push(ch),
        }
    }
    out.push(current);
    out.into_iter().map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect()
}
