//! Named groups: every group of order at most 24 plus a few of order 25
//! and 49.

use super::group::{parse_cycles, FiniteGroup};
use crate::error::{Error, Result};

/// Catalog names in canonical order (by order, then as listed).
pub const NAMES: &[&str] = &[
    "C1",
    "C2",
    "C3",
    "C4", "C2xC2",
    "C5",
    "C6", "S3",
    "C7",
    "C8", "C4xC2", "C2xC2xC2", "D8", "Q8",
    "C9", "C3xC3",
    "C10", "D10",
    "C11",
    "C12", "C6xC2", "A4", "D12", "Dic3",
    "C13",
    "C14", "D14",
    "C15",
    "C16", "C8xC2", "C4xC4", "C4xC2xC2", "C2xC2xC2xC2", "D16", "Q16", "SD16", "M16",
    "C4:C4", "(C4xC2):C2", "C4oD8", "D8xC2", "Q8xC2",
    "C17",
    "C18", "C6xC3", "D18", "S3xC3", "(C3xC3):C2",
    "C19",
    "C20", "C10xC2", "D20", "Dic5", "F20",
    "C21", "C7:C3",
    "C22", "D22",
    "C23",
    "C24", "C12xC2", "C6xC2xC2", "S4", "SL(2,3)", "A4xC2", "D24", "Dic6", "C3:C8",
    "C4xS3", "Dic3xC2", "C3:D8", "C3xD8", "C3xQ8", "S3xC2xC2",
    "C25", "C5xC5",
    "C49", "C7xC7",
];

/// Alternative spellings accepted by [`catalog`].
const ALIASES: &[(&str, &str)] = &[("D4", "D8"), ("V4", "C2xC2"), ("Q", "Q8"), ("trivial", "C1")];

pub fn catalog_names() -> &'static [&'static str] {
    NAMES
}

fn product(names: &[&str]) -> Result<FiniteGroup> {
    let mut g = catalog(names[0])?;
    for n in &names[1..] {
        g = FiniteGroup::direct_product(&g, &catalog(n)?);
    }
    Ok(g)
}

fn dihedral(n: usize) -> Result<FiniteGroup> {
    FiniteGroup::metacyclic("", n / 2, 2, n / 2 - 1, 0)
}

/// Semidirect product of `base` by `C_k`, the automorphism given on
/// generators.
fn semidirect(base: &FiniteGroup, k: usize, gens: &[usize], images: &[usize]) -> Result<FiniteGroup> {
    let phi = base.extend_hom(gens, images)?;
    FiniteGroup::semidirect_cyclic("", base, k, &phi)
}

fn sl23() -> Result<FiniteGroup> {
    type M = [u8; 4];
    let mul = |a: &M, b: &M| -> M {
        [
            (a[0] * b[0] + a[1] * b[2]) % 3,
            (a[0] * b[1] + a[1] * b[3]) % 3,
            (a[2] * b[0] + a[3] * b[2]) % 3,
            (a[2] * b[1] + a[3] * b[3]) % 3,
        ]
    };
    FiniteGroup::from_closure("", [1, 0, 0, 1], &[[1, 1, 0, 1], [1, 0, 1, 1]], mul)
}

fn perms(degree: usize, gens: &[&str]) -> Result<FiniteGroup> {
    let gens: Vec<Vec<usize>> = gens.iter().map(|g| parse_cycles(degree, g)).collect::<Result<_>>()?;
    FiniteGroup::from_permutations("", degree, &gens)
}

/// Looks up a catalog group by name (aliases such as `D4` for the
/// dihedral group of order 8 are accepted).
pub fn catalog(name: &str) -> Result<FiniteGroup> {
    let name = ALIASES.iter().find(|(a, _)| *a == name).map_or(name, |(_, n)| n);
    let g = build(name)?;
    Ok(g.with_name(name))
}

fn build(name: &str) -> Result<FiniteGroup> {
    if let Some(n) = name.strip_prefix('C').and_then(|s| s.parse::<usize>().ok()) {
        if n >= 1 {
            return Ok(FiniteGroup::cyclic(n));
        }
    }
    match name {
        "S3" | "D6" => dihedral(6),
        "D8" | "D10" | "D12" | "D14" | "D16" | "D18" | "D20" | "D22" | "D24" => dihedral(name[1..].parse().unwrap()),
        "Q8" => FiniteGroup::metacyclic("", 4, 2, 3, 2),
        "Q16" => FiniteGroup::metacyclic("", 8, 2, 7, 4),
        "SD16" => FiniteGroup::metacyclic("", 8, 2, 3, 0),
        "M16" => FiniteGroup::metacyclic("", 8, 2, 5, 0),
        "C4:C4" => FiniteGroup::metacyclic("", 4, 4, 3, 0),
        "Dic3" => FiniteGroup::metacyclic("", 3, 4, 2, 0),
        "Dic5" => FiniteGroup::metacyclic("", 10, 2, 9, 5),
        "Dic6" => FiniteGroup::metacyclic("", 12, 2, 11, 6),
        "F20" => FiniteGroup::metacyclic("", 5, 4, 2, 0),
        "C7:C3" => FiniteGroup::metacyclic("", 7, 3, 2, 0),
        "C3:C8" => FiniteGroup::metacyclic("", 3, 8, 2, 0),
        "A4" => perms(4, &["(1 2 3)", "(1 2)(3 4)"]),
        "S4" => perms(4, &["(1 2 3 4)", "(1 2)"]),
        "SL(2,3)" => sl23(),
        "(C4xC2):C2" => {
            // a ↦ ab, b ↦ b on C4 = <a>, C2 = <b>; elements of C4xC2 are 2i + j
            let base = product(&["C4", "C2"])?;
            semidirect(&base, 2, &[2, 1], &[3, 1])
        }
        "C4oD8" => {
            // a ↦ a, b ↦ a²b
            let base = product(&["C4", "C2"])?;
            semidirect(&base, 2, &[2, 1], &[2, 5])
        }
        "(C3xC3):C2" => {
            let base = product(&["C3", "C3"])?;
            semidirect(&base, 2, &[3, 1], &[6, 2])
        }
        "C3:D8" => {
            // x ↦ x⁻¹, z ↦ z, s ↦ zs on C3 = <x>, C2 = <z>, C2 = <s>
            let base = product(&["C3", "C2", "C2"])?;
            semidirect(&base, 2, &[4, 2, 1], &[8, 2, 3])
        }
        "C2xC2" | "C4xC2" | "C2xC2xC2" | "C3xC3" | "C6xC2" | "C8xC2" | "C4xC4" | "C4xC2xC2" | "C2xC2xC2xC2"
        | "D8xC2" | "Q8xC2" | "C6xC3" | "S3xC3" | "C10xC2" | "C12xC2" | "C6xC2xC2" | "A4xC2" | "C4xS3"
        | "Dic3xC2" | "C3xD8" | "C3xQ8" | "S3xC2xC2" | "C5xC5" | "C7xC7" => {
            let parts: Vec<&str> = name.split('x').collect();
            product(&parts)
        }
        _ => Err(Error::InvalidArgument(format!("unknown catalog group {name:?}"))),
    }
}

/// Parses one catalog entry: `[name =] perm: <order> <gen>; <gen>; ...`
/// with generators in 1-based cycle notation, `table: <order> <indices>`
/// with the Cayley table row-major, or a catalog name.
pub fn load_group(entry: &str) -> Result<FiniteGroup> {
    let (name, body) = match entry.split_once('=') {
        Some((n, b)) => (n.trim(), b.trim()),
        None => ("", entry.trim()),
    };
    let bad = |m: String| Error::Parse {
        line: 1,
        column: 1,
        message: m,
    };
    let header = |rest: &str| -> Result<(usize, String)> {
        let rest = rest.trim_start();
        let end = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
        let order = rest[..end]
            .parse::<usize>()
            .map_err(|_| bad(format!("expected an order in {entry:?}")))?;
        Ok((order, rest[end..].trim().to_string()))
    };
    if let Some(rest) = body.strip_prefix("perm:") {
        let (order, gens) = header(rest)?;
        let gens: Vec<&str> = gens.split(';').map(str::trim).filter(|g| !g.is_empty()).collect();
        let degree = gens
            .iter()
            .flat_map(|g| g.split(|c: char| !c.is_ascii_digit()))
            .filter_map(|s| s.parse::<usize>().ok())
            .max()
            .unwrap_or(1);
        let g = perms(degree, &gens)?;
        if g.order() != order {
            return Err(Error::InvalidArgument(format!(
                "generators give a group of order {}, entry declares {order}",
                g.order()
            )));
        }
        Ok(g.with_name(if name.is_empty() { "perm" } else { name }))
    } else if let Some(rest) = body.strip_prefix("table:") {
        let (order, cells) = header(rest)?;
        let cells: Vec<u32> = cells
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<u32>().map_err(|_| bad(format!("bad table entry {s:?}"))))
            .collect::<Result<_>>()?;
        if cells.len() != order * order {
            return Err(bad(format!("table has {} entries, expected {}", cells.len(), order * order)));
        }
        let table = cells.chunks(order).map(<[u32]>::to_vec).collect();
        FiniteGroup::from_table(if name.is_empty() { "table" } else { name }, table)
    } else {
        catalog(body)
    }
}

/// Parses a catalog file: one entry per line, `#` starts a comment.
pub fn load_catalog_file(text: &str) -> Result<Vec<FiniteGroup>> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
        .map(|(i, l)| {
            load_group(l).map_err(|e| match e {
                Error::Parse { column, message, .. } => Error::Parse {
                    line: i + 1,
                    column,
                    message,
                },
                e => e,
            })
        })
        .collect()
}
