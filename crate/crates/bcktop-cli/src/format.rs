//! Line-oriented sectioned instance files: `[section]` headers, `key = value`
//! lines, whitespace-separated integer rows, `#` comments. Parsing produces
//! fully validated core objects or a positioned error.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use bcktop::{
    AbelianGroup, BckAlgebra, BckModule, Dss, ModuleHom, PointSet, Submodule,
};

#[derive(Debug)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

fn err<T>(line: usize, column: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        column,
        message: message.into(),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckBlock {
    pub name: String,
    pub claim: String,
    pub hom: String,
    pub source_dss: String,
    pub target_dss: String,
    pub expect: bool,
}

/// The raw data of one file, before cross-file hom targets are resolved.
#[derive(Clone, Debug, PartialEq)]
pub struct InstanceFile {
    pub algebra: AlgebraSpec,
    pub group: GroupSpec,
    pub action: Vec<Vec<usize>>,
    pub submodules: Vec<(String, Vec<usize>)>,
    pub dss: Vec<(String, Vec<String>)>,
    pub homs: Vec<(String, Option<String>, Vec<usize>)>,
    pub checks: Vec<CheckBlock>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum AlgebraSpec {
    Chain(usize),
    Table {
        size: usize,
        rows: Vec<Vec<usize>>,
        one: Option<usize>,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub enum GroupSpec {
    Cyclic(usize),
    Klein,
    Table { size: usize, rows: Vec<Vec<usize>> },
}

struct Section {
    line: usize,
    kind: String,
    name: Option<String>,
    pairs: Vec<(usize, String, String)>,
}

fn split_sections(text: &str) -> Result<Vec<Section>, ParseError> {
    let mut sections: Vec<Section> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let stripped = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        };
        let trimmed = stripped.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(head) = trimmed.strip_prefix('[') {
            let Some(head) = head.strip_suffix(']') else {
                return err(line, trimmed.len(), "unterminated section header");
            };
            let mut words = head.split_whitespace();
            let Some(kind) = words.next() else {
                return err(line, 1, "empty section header");
            };
            let name = words.next().map(str::to_string);
            if words.next().is_some() {
                return err(line, 1, "section header takes at most one name");
            }
            sections.push(Section {
                line,
                kind: kind.to_string(),
                name,
                pairs: Vec::new(),
            });
            continue;
        }
        let Some(eq) = trimmed.find('=') else {
            return err(line, 1, "expected `key = value`");
        };
        let key = trimmed[..eq].trim().to_string();
        let value = trimmed[eq + 1..].trim().to_string();
        if key.is_empty() {
            return err(line, 1, "empty key");
        }
        let Some(section) = sections.last_mut() else {
            return err(line, 1, "`key = value` before any section header");
        };
        section.pairs.push((line, key, value));
    }
    Ok(sections)
}

fn parse_usize(line: usize, value: &str) -> Result<usize, ParseError> {
    value
        .parse()
        .or_else(|_| err(line, 1, format!("expected a nonnegative integer, got `{value}`")))
}

fn parse_row(line: usize, value: &str, bound: usize) -> Result<Vec<usize>, ParseError> {
    let mut row = Vec::new();
    for (col, word) in value.split_whitespace().enumerate() {
        let v: usize = match word.parse() {
            Ok(v) => v,
            Err(_) => return err(line, col + 1, format!("bad integer `{word}`")),
        };
        if v >= bound {
            return err(line, col + 1, format!("entry {v} out of range (max {})", bound - 1));
        }
        row.push(v);
    }
    Ok(row)
}

pub fn parse_instance(text: &str) -> Result<InstanceFile, ParseError> {
    let mut algebra: Option<(usize, AlgebraSpec)> = None;
    let mut group: Option<(usize, GroupSpec)> = None;
    let mut action: Option<(usize, Vec<Vec<usize>>)> = None;
    let mut submodules = Vec::new();
    let mut dss = Vec::new();
    let mut homs = Vec::new();
    let mut checks = Vec::new();

    for section in split_sections(text)? {
        let line = section.line;
        match section.kind.as_str() {
            "algebra" => {
                if algebra.is_some() {
                    return err(line, 1, "duplicate [algebra] section");
                }
                algebra = Some((line, parse_algebra(&section)?));
            }
            "group" => {
                if group.is_some() {
                    return err(line, 1, "duplicate [group] section");
                }
                group = Some((line, parse_group(&section)?));
            }
            "action" => {
                if action.is_some() {
                    return err(line, 1, "duplicate [action] section");
                }
                let mut rows = Vec::new();
                for (l, key, value) in &section.pairs {
                    if key != "row" {
                        return err(*l, 1, format!("unexpected key `{key}` in [action]"));
                    }
                    rows.push(parse_row(*l, value, usize::MAX)?);
                }
                action = Some((line, rows));
            }
            "submodule" => {
                let Some(name) = section.name else {
                    return err(line, 1, "[submodule] needs a name");
                };
                let mut elements = None;
                for (l, key, value) in &section.pairs {
                    match key.as_str() {
                        "elements" => elements = Some(parse_row(*l, value, usize::MAX)?),
                        _ => return err(*l, 1, format!("unexpected key `{key}` in [submodule]")),
                    }
                }
                let Some(elements) = elements else {
                    return err(line, 1, "[submodule] needs `elements = ...`");
                };
                submodules.push((name, elements));
            }
            "dss" => {
                let Some(name) = section.name else {
                    return err(line, 1, "[dss] needs a name");
                };
                let mut chain = None;
                for (l, key, value) in &section.pairs {
                    match key.as_str() {
                        "chain" => {
                            chain = Some(value.split_whitespace().map(str::to_string).collect())
                        }
                        _ => return err(*l, 1, format!("unexpected key `{key}` in [dss]")),
                    }
                }
                let Some(chain) = chain else {
                    return err(line, 1, "[dss] needs `chain = NAME ...`");
                };
                dss.push((name, chain));
            }
            "hom" => {
                let Some(name) = section.name else {
                    return err(line, 1, "[hom] needs a name");
                };
                let mut target = None;
                let mut map = None;
                for (l, key, value) in &section.pairs {
                    match key.as_str() {
                        "target" => target = Some(value.clone()),
                        "map" => map = Some(parse_row(*l, value, usize::MAX)?),
                        _ => return err(*l, 1, format!("unexpected key `{key}` in [hom]")),
                    }
                }
                let Some(map) = map else {
                    return err(line, 1, "[hom] needs `map = ...`");
                };
                homs.push((name, target, map));
            }
            "check" => {
                let Some(name) = section.name else {
                    return err(line, 1, "[check] needs a name");
                };
                let mut fields: BTreeMap<&str, (usize, String)> = BTreeMap::new();
                for (l, key, value) in &section.pairs {
                    match key.as_str() {
                        "claim" | "hom" | "source-dss" | "target-dss" | "expect" => {
                            fields.insert(
                                match key.as_str() {
                                    "claim" => "claim",
                                    "hom" => "hom",
                                    "source-dss" => "source-dss",
                                    "target-dss" => "target-dss",
                                    _ => "expect",
                                },
                                (*l, value.clone()),
                            );
                        }
                        _ => return err(*l, 1, format!("unexpected key `{key}` in [check]")),
                    }
                }
                let take = |k: &str| -> Result<String, ParseError> {
                    fields
                        .get(k)
                        .map(|(_, v)| v.clone())
                        .ok_or(ParseError {
                            line,
                            column: 1,
                            message: format!("[check] needs `{k} = ...`"),
                        })
                };
                let expect_raw = take("expect")?;
                let expect = match expect_raw.as_str() {
                    "true" => true,
                    "false" => false,
                    _ => return err(line, 1, "expect must be `true` or `false`"),
                };
                checks.push(CheckBlock {
                    name,
                    claim: take("claim")?,
                    hom: take("hom")?,
                    source_dss: take("source-dss")?,
                    target_dss: take("target-dss")?,
                    expect,
                });
            }
            other => return err(line, 1, format!("unknown section `{other}`")),
        }
    }

    let Some((_, algebra)) = algebra else {
        return err(1, 1, "missing [algebra] section");
    };
    let Some((_, group)) = group else {
        return err(1, 1, "missing [group] section");
    };
    let Some((_, action)) = action else {
        return err(1, 1, "missing [action] section");
    };
    Ok(InstanceFile {
        algebra,
        group,
        action,
        submodules,
        dss,
        homs,
        checks,
    })
}

fn parse_algebra(section: &Section) -> Result<AlgebraSpec, ParseError> {
    let mut size = None;
    let mut rows = Vec::new();
    let mut one = None;
    let mut chain = None;
    for (l, key, value) in &section.pairs {
        match key.as_str() {
            "chain" => chain = Some(parse_usize(*l, value)?),
            "size" => size = Some(parse_usize(*l, value)?),
            "row" => rows.push((*l, value.clone())),
            "one" => one = Some(parse_usize(*l, value)?),
            _ => return err(*l, 1, format!("unexpected key `{key}` in [algebra]")),
        }
    }
    if let Some(n) = chain {
        if size.is_some() || !rows.is_empty() || one.is_some() {
            return err(section.line, 1, "`chain` excludes other [algebra] keys");
        }
        if n == 0 {
            return err(section.line, 1, "chain length must be positive");
        }
        return Ok(AlgebraSpec::Chain(n));
    }
    let Some(size) = size else {
        return err(section.line, 1, "[algebra] needs `size` or `chain`");
    };
    let rows = rows
        .into_iter()
        .map(|(l, v)| parse_row(l, &v, size))
        .collect::<Result<Vec<_>, _>>()?;
    if let Some(u) = one {
        if u >= size {
            return err(section.line, 1, format!("one={u} out of range"));
        }
    }
    Ok(AlgebraSpec::Table { size, rows, one })
}

fn parse_group(section: &Section) -> Result<GroupSpec, ParseError> {
    let mut size = None;
    let mut rows = Vec::new();
    let mut cyclic = None;
    let mut klein = false;
    for (l, key, value) in &section.pairs {
        match key.as_str() {
            "cyclic" => cyclic = Some(parse_usize(*l, value)?),
            "klein" => match value.as_str() {
                "true" => klein = true,
                _ => return err(*l, 1, "klein takes the value `true`"),
            },
            "size" => size = Some(parse_usize(*l, value)?),
            "row" => rows.push((*l, value.clone())),
            _ => return err(*l, 1, format!("unexpected key `{key}` in [group]")),
        }
    }
    match (cyclic, klein) {
        (Some(_), true) => err(section.line, 1, "`cyclic` and `klein` are exclusive"),
        (Some(n), false) if size.is_none() && rows.is_empty() => Ok(GroupSpec::Cyclic(n)),
        (None, true) if size.is_none() && rows.is_empty() => Ok(GroupSpec::Klein),
        (Some(_), false) | (None, true) => {
            err(section.line, 1, "shorthand excludes other [group] keys")
        }
        (None, false) => {
            let Some(size) = size else {
                return err(section.line, 1, "[group] needs `size`, `cyclic`, or `klein`");
            };
            let rows = rows
                .into_iter()
                .map(|(l, v)| parse_row(l, &v, size))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(GroupSpec::Table { size, rows })
        }
    }
}

#[cfg(test)]
pub fn serialize_instance(file: &InstanceFile) -> String {
    let mut out = String::new();
    let row = |r: &[usize]| {
        r.iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(" ")
    };
    out.push_str("[algebra]\n");
    match &file.algebra {
        AlgebraSpec::Chain(n) => out.push_str(&format!("chain = {n}\n")),
        AlgebraSpec::Table { size, rows, one } => {
            out.push_str(&format!("size = {size}\n"));
            for r in rows {
                out.push_str(&format!("row = {}\n", row(r)));
            }
            if let Some(u) = one {
                out.push_str(&format!("one = {u}\n"));
            }
        }
    }
    out.push_str("\n[group]\n");
    match &file.group {
        GroupSpec::Cyclic(n) => out.push_str(&format!("cyclic = {n}\n")),
        GroupSpec::Klein => out.push_str("klein = true\n"),
        GroupSpec::Table { size, rows } => {
            out.push_str(&format!("size = {size}\n"));
            for r in rows {
                out.push_str(&format!("row = {}\n", row(r)));
            }
        }
    }
    out.push_str("\n[action]\n");
    for r in &file.action {
        out.push_str(&format!("row = {}\n", row(r)));
    }
    for (name, elements) in &file.submodules {
        out.push_str(&format!("\n[submodule {name}]\nelements = {}\n", row(elements)));
    }
    for (name, chain) in &file.dss {
        out.push_str(&format!("\n[dss {name}]\nchain = {}\n", chain.join(" ")));
    }
    for (name, target, map) in &file.homs {
        out.push_str(&format!("\n[hom {name}]\n"));
        if let Some(t) = target {
            out.push_str(&format!("target = {t}\n"));
        }
        out.push_str(&format!("map = {}\n", row(map)));
    }
    for c in &file.checks {
        out.push_str(&format!(
            "\n[check {}]\nclaim = {}\nhom = {}\nsource-dss = {}\ntarget-dss = {}\nexpect = {}\n",
            c.name, c.claim, c.hom, c.source_dss, c.target_dss, c.expect
        ));
    }
    out
}

/// A file's sections resolved into validated core objects. Hom targets that
/// name other files are loaded relative to this file's directory.
pub struct LoadedInstance {
    pub file: InstanceFile,
    pub module: BckModule,
    pub submodules: Vec<(String, Submodule)>,
    pub dss: Vec<(String, Dss)>,
    pub homs: Vec<LoadedHom>,
}

pub struct LoadedHom {
    pub name: String,
    pub target: Option<Box<LoadedInstance>>,
    pub hom: ModuleHom,
}

impl LoadedInstance {
    pub fn dss(&self, name: &str) -> anyhow::Result<&Dss> {
        self.dss
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, d)| d)
            .ok_or_else(|| unknown("dss", name, self.dss.iter().map(|(n, _)| n)))
    }

    pub fn hom(&self, name: &str) -> anyhow::Result<&LoadedHom> {
        self.homs
            .iter()
            .find(|h| h.name == name)
            .ok_or_else(|| unknown("hom", name, self.homs.iter().map(|h| &h.name)))
    }

    /// The dss lattice a hom's target chain must come from: the target
    /// instance when the hom crosses files, otherwise this one.
    pub fn hom_codomain<'a>(&'a self, hom: &'a LoadedHom) -> &'a LoadedInstance {
        hom.target.as_deref().unwrap_or(self)
    }
}

fn unknown<'a>(
    kind: &str,
    name: &str,
    available: impl Iterator<Item = &'a String>,
) -> anyhow::Error {
    let names: Vec<&str> = available.map(String::as_str).collect();
    anyhow::anyhow!("unknown {kind} `{name}` (available: {})", names.join(", "))
}

pub fn load_instance(path: &Path) -> anyhow::Result<LoadedInstance> {
    load_instance_inner(path, true)
}

// Hom targets are loaded without their own homs; a pair of files may
// reference each other and only the top-level file's maps are needed.
fn load_instance_inner(path: &Path, load_homs: bool) -> anyhow::Result<LoadedInstance> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| anyhow::anyhow!("{}: {e}", path.display()))?;
    let file = parse_instance(&text).map_err(|e| anyhow::anyhow!("{}: {e}", path.display()))?;

    let algebra = match &file.algebra {
        AlgebraSpec::Chain(n) => BckAlgebra::chain(*n),
        AlgebraSpec::Table { size, rows, one } => {
            BckAlgebra::from_table(*size, rows.clone(), *one)?
        }
    };
    let group = match &file.group {
        GroupSpec::Cyclic(n) => AbelianGroup::cyclic(*n),
        GroupSpec::Klein => AbelianGroup::klein(),
        GroupSpec::Table { size, rows } => AbelianGroup::from_table(*size, rows.clone())?,
    };
    let module = BckModule::from_tables(algebra, group, file.action.clone())?;

    let mut submodules = Vec::new();
    for (name, elements) in &file.submodules {
        let set: PointSet = elements.iter().copied().collect();
        let sub = Submodule::new(&module, set)
            .map_err(|e| anyhow::anyhow!("submodule `{name}`: {e}"))?;
        submodules.push((name.clone(), sub));
    }

    let mut dss = Vec::new();
    for (name, chain_names) in &file.dss {
        let mut chain = Vec::new();
        for n in chain_names {
            let found = submodules
                .iter()
                .find(|(sn, _)| sn == n)
                .map(|(_, s)| *s)
                .ok_or_else(|| unknown("submodule", n, file.submodules.iter().map(|(n, _)| n)))?;
            chain.push(found);
        }
        let d = Dss::new(&module, chain).map_err(|e| anyhow::anyhow!("dss `{name}`: {e}"))?;
        dss.push((name.clone(), d));
    }

    let mut homs = Vec::new();
    for (name, target, map) in &file.homs {
        if !load_homs {
            break;
        }
        let target_instance = match target {
            Some(rel) => {
                let base = path.parent().unwrap_or_else(|| Path::new("."));
                Some(Box::new(load_instance_inner(&base.join(rel), false)?))
            }
            None => None,
        };
        let target_module = target_instance
            .as_ref()
            .map_or(&module, |t| &t.module)
            .clone();
        let hom = ModuleHom::new(module.clone(), target_module, map.clone())
            .map_err(|e| anyhow::anyhow!("hom `{name}`: {e}"))?;
        homs.push(LoadedHom {
            name: name.clone(),
            target: target_instance,
            hom,
        });
    }

    Ok(LoadedInstance {
        file,
        module,
        submodules,
        dss,
        homs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const M4: &str = "\
[algebra]
chain = 2

[group]
cyclic = 4

[action]
row = 0 0 0 0
row = 0 1 2 3

[submodule M]
elements = 0 1 2 3

[submodule E]
elements = 0 2

[dss A]
chain = M E
";

    #[test]
    fn round_trip_is_identity() {
        let parsed = parse_instance(M4).unwrap();
        let reparsed = parse_instance(&serialize_instance(&parsed)).unwrap();
        assert_eq!(parsed, reparsed);
    }

    #[test]
    fn explicit_tables_match_shorthands() {
        let explicit = "\
[algebra]
size = 2
row = 0 0
row = 1 0
one = 1

[group]
size = 4
row = 0 1 2 3
row = 1 2 3 0
row = 2 3 0 1
row = 3 0 1 2

[action]
row = 0 0 0 0
row = 0 1 2 3
";
        let f = parse_instance(explicit).unwrap();
        let AlgebraSpec::Table { size, one, .. } = &f.algebra else {
            panic!("expected a table")
        };
        assert_eq!((*size, *one), (2, Some(1)));
    }

    #[test]
    fn errors_carry_positions() {
        let bad = "[algebra]\nchain = 2\n\n[group]\ncyclic = 2\n\n[action]\nrow = 0 0\nrow = 0 9\n";
        // out-of-range action entries surface from module validation, but a
        // malformed integer is a parse error with a position
        assert!(parse_instance(bad).is_ok());
        let bad_int = "[algebra]\nsize = 2\nrow = 0 x\n";
        let e = parse_instance(bad_int).unwrap_err();
        assert_eq!((e.line, e.column), (3, 2));
        let bad_range = "[algebra]\nsize = 2\nrow = 0 5\n";
        let e = parse_instance(bad_range).unwrap_err();
        assert_eq!((e.line, e.column), (3, 2));
    }

    #[test]
    fn missing_sections_are_rejected() {
        let e = parse_instance("[algebra]\nchain = 2\n").unwrap_err();
        assert!(e.message.contains("[group]"));
    }
}
