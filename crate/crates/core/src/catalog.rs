//! The shipped corpus `U_1, ..., U_13`, auxiliary small groups and the
//! `e(G)` annotation file.
//!
//! Group files may carry two header comments read here:
//!
//! ```text
//! # name SG(32,9)
//! # expect order=32 class=3 center=4 frattini=8 socle=4
//! ```
//!
//! Every `expect` key is checked on load and a mismatch is an error.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::families::{family, FamilyKind};
use crate::group::{direct_product, Group};
use crate::io::{parse_group_file, GroupFile};
use crate::perm::group_from_permutations;
use crate::pgroup::{center, frattini, nilpotency_class, socle};

/// Environment variable overriding the data directory.
pub const DATA_ENV: &str = "MIPKIT_DATA";

/// `(label, name, file stem)` of the thirteen corpus groups.
pub const CORPUS_NAMES: [(&str, &str, &str); 13] = [
    ("U_1", "SG(32,9)", "sg32_9"),
    ("U_2", "SG(32,10)", "sg32_10"),
    ("U_3", "SG(32,11)", "sg32_11"),
    ("U_4", "SG(32,13)", "sg32_13"),
    ("U_5", "SG(32,14)", "sg32_14"),
    ("U_6", "SG(32,15)", "sg32_15"),
    ("U_7", "SG(64,97)", "sg64_97"),
    ("U_8", "SG(64,108)", "sg64_108"),
    ("U_9", "SG(64,118)", "sg64_118"),
    ("U_10", "SG(64,119)", "sg64_119"),
    ("U_11", "SG(64,120)", "sg64_120"),
    ("U_12", "SG(64,124)", "sg64_124"),
    ("U_13", "SG(128,1671)", "sg128_1671"),
];

const EMBEDDED: [&str; 13] = [
    include_str!("../../../data/groups/sg32_9.perm"),
    include_str!("../../../data/groups/sg32_10.perm"),
    include_str!("../../../data/groups/sg32_11.perm"),
    include_str!("../../../data/groups/sg32_13.perm"),
    include_str!("../../../data/groups/sg32_14.perm"),
    include_str!("../../../data/groups/sg32_15.perm"),
    include_str!("../../../data/groups/sg64_97.perm"),
    include_str!("../../../data/groups/sg64_108.perm"),
    include_str!("../../../data/groups/sg64_118.perm"),
    include_str!("../../../data/groups/sg64_119.perm"),
    include_str!("../../../data/groups/sg64_120.perm"),
    include_str!("../../../data/groups/sg64_124.perm"),
    include_str!("../../../data/groups/sg128_1671.perm"),
];

const EMBEDDED_ANNOTATIONS: &str = include_str!("../../../data/annotations/e_values.txt");

/// Properties asserted by an `# expect` header. Absent keys are not checked.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Expected {
    pub order: Option<usize>,
    pub class: Option<usize>,
    pub center: Option<usize>,
    pub frattini: Option<usize>,
    pub socle: Option<usize>,
}

impl Expected {
    fn parse(spec: &str) -> Result<Expected> {
        let mut e = Expected::default();
        for item in spec.split_whitespace() {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| Error::ValidationFailed(format!("bad expect item {item:?}")))?;
            let v: usize = value
                .parse()
                .map_err(|_| Error::ValidationFailed(format!("bad expect value {item:?}")))?;
            let slot = match key {
                "order" => &mut e.order,
                "class" => &mut e.class,
                "center" => &mut e.center,
                "frattini" => &mut e.frattini,
                "socle" => &mut e.socle,
                _ => return Err(Error::ValidationFailed(format!("unknown expect key {key:?}"))),
            };
            *slot = Some(v);
        }
        Ok(e)
    }

    pub fn check(&self, name: &str, g: &Group) -> Result<()> {
        let checks: [(&str, Option<usize>, Box<dyn Fn() -> Option<usize>>); 5] = [
            ("order", self.order, Box::new(|| Some(g.order()))),
            ("class", self.class, Box::new(|| nilpotency_class(g))),
            ("center", self.center, Box::new(|| Some(center(g).order()))),
            ("frattini", self.frattini, Box::new(|| Some(frattini(g).order()))),
            ("socle", self.socle, Box::new(|| Some(socle(g).order()))),
        ];
        for (key, want, got) in checks {
            if let Some(want) = want {
                let got = got();
                if got != Some(want) {
                    return Err(Error::ValidationFailed(format!(
                        "{name}: expected {key} = {want}, computed {got:?}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn is_empty(&self) -> bool {
        *self == Expected::default()
    }
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    /// `U_1` .. `U_13` for corpus groups, the name otherwise.
    pub label: String,
    pub name: String,
    pub source: String,
    pub group: Group,
    pub expected: Expected,
}

fn header(file: &GroupFile, key: &str) -> Option<String> {
    file.comments.iter().find_map(|c| {
        let rest = c.trim().strip_prefix(key)?;
        rest.starts_with(char::is_whitespace).then(|| rest.trim().to_string())
    })
}

/// Parses and validates a group file, checking its `# expect` header.
pub fn parse_entry(text: &str, source: &str) -> Result<CorpusEntry> {
    let file = parse_group_file(text)?;
    let group = file.data.build()?;
    let name = header(&file, "name").unwrap_or_else(|| source.to_string());
    let expected = header(&file, "expect").map(|s| Expected::parse(&s)).transpose()?.unwrap_or_default();
    expected.check(&name, &group)?;
    Ok(CorpusEntry { label: name.clone(), name, source: source.to_string(), group, expected })
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io { path: path.display().to_string(), message: e.to_string() })
}

pub fn load_entry(path: impl AsRef<Path>) -> Result<CorpusEntry> {
    let path = path.as_ref();
    parse_entry(&read(path)?, &path.display().to_string())
}

pub fn load_group(path: impl AsRef<Path>) -> Result<Group> {
    Ok(load_entry(path)?.group)
}

/// `MIPKIT_DATA` if set, else the `data/` directory of the source tree.
pub fn data_dir() -> PathBuf {
    std::env::var_os(DATA_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|| Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data"))
}

/// The thirteen corpus groups, from the copies compiled into the library.
pub fn corpus() -> Result<Vec<CorpusEntry>> {
    CORPUS_NAMES
        .iter()
        .zip(EMBEDDED)
        .map(|(&(label, name, stem), text)| corpus_entry(label, name, text, &format!("data/groups/{stem}.perm")))
        .collect()
}

/// The thirteen corpus groups read from `dir/groups/`.
pub fn corpus_from_dir(dir: impl AsRef<Path>) -> Result<Vec<CorpusEntry>> {
    CORPUS_NAMES
        .iter()
        .map(|&(label, name, stem)| {
            let path = dir.as_ref().join("groups").join(format!("{stem}.perm"));
            corpus_entry(label, name, &read(&path)?, &path.display().to_string())
        })
        .collect()
}

fn corpus_entry(label: &str, name: &str, text: &str, source: &str) -> Result<CorpusEntry> {
    let mut e = parse_entry(text, source)?;
    if e.name != name {
        return Err(Error::ValidationFailed(format!("{source}: header names {}, expected {name}", e.name)));
    }
    e.label = label.to_string();
    Ok(e)
}

/// `e(G)` values keyed by group name.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Annotations {
    pub values: BTreeMap<String, u32>,
    /// Provenance tag from a `# Source:` comment.
    pub source: String,
    pub warnings: Vec<String>,
}

impl Annotations {
    pub fn get(&self, name: &str) -> Option<u32> {
        self.values.get(name).copied()
    }
}

/// Parses `name value` lines. Duplicates keep the last value; names outside
/// the corpus are accepted with a warning.
pub fn parse_annotations(text: &str) -> Result<Annotations> {
    let mut out = Annotations { source: "annotations file".into(), ..Annotations::default() };
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if let Some(comment) = line.strip_prefix('#') {
            if let Some(src) = comment.trim().strip_prefix("Source:") {
                let src = src.trim();
                out.source = src.split(" (").next().unwrap_or(src).trim_end_matches('.').to_string();
            }
            continue;
        }
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        let (Some(name), Some(value), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(Error::parse(i + 1, format!("expected `name value`, got {line:?}")));
        };
        let value: u32 = value.parse().map_err(|_| Error::parse(i + 1, format!("bad value {value:?}")))?;
        if !CORPUS_NAMES.iter().any(|c| c.1 == name) {
            out.warnings.push(format!("line {}: unknown group name {name}", i + 1));
        }
        if out.values.insert(name.to_string(), value).is_some() {
            out.warnings.push(format!("line {}: duplicate entry for {name}, keeping the last value", i + 1));
        }
    }
    Ok(out)
}

pub fn load_annotations(path: impl AsRef<Path>) -> Result<Annotations> {
    parse_annotations(&read(path.as_ref())?)
}

pub fn embedded_annotations() -> Annotations {
    parse_annotations(EMBEDDED_ANNOTATIONS).expect("shipped annotations parse")
}

/// Dihedral group of order `2k` (`k ≥ 2`) acting on a `k`-gon.
pub fn dihedral(order: usize) -> Result<Group> {
    let k = order / 2;
    if !order.is_multiple_of(2) || k < 2 {
        return Err(Error::ValidationFailed(format!("no dihedral group of order {order}")));
    }
    let rot: Vec<usize> = (0..k).map(|i| (i + 1) % k + 1).collect();
    let refl: Vec<usize> = (0..k).map(|i| (k - i) % k + 1).collect();
    group_from_permutations(k, &[rot, refl])
}

/// Generalized quaternion group of order `2^n` (`n ≥ 3`).
pub fn quaternion(order: usize) -> Result<Group> {
    if order < 8 || !order.is_power_of_two() {
        return Err(Error::ValidationFailed(format!("no generalized quaternion group of order {order}")));
    }
    Ok(family(FamilyKind::Q, 1, order.trailing_zeros() - 1)?.group)
}

/// Small groups used throughout the test suites.
pub fn auxiliary() -> Result<Vec<CorpusEntry>> {
    let d8 = dihedral(8)?;
    let q8 = quaternion(8)?;
    let c2 = Group::cyclic(2);
    let v4 = Group::abelian(&[2, 2])?;
    let groups = [
        ("D_8", d8.clone()),
        ("Q_8", q8.clone()),
        ("C_4 x C_2", Group::abelian(&[4, 2])?),
        ("C_2 x D_8", direct_product(&c2, &d8)?),
        ("C_2 x Q_8", direct_product(&c2, &q8)?),
        ("C_2 x C_2 x Q_8", direct_product(&v4, &q8)?),
        ("C_4 x Q_8", direct_product(&Group::cyclic(4), &q8)?),
        ("D_16", dihedral(16)?),
        ("Q_16", quaternion(16)?),
    ];
    Ok(groups
        .into_iter()
        .map(|(name, group)| CorpusEntry {
            label: name.into(),
            name: name.into(),
            source: "built-in".into(),
            group,
            expected: Expected::default(),
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::isomorphic;

    #[test]
    fn trivial_and_cyclic_files() {
        assert_eq!(parse_entry("cayley 1\n0\n", "t").unwrap().group.order(), 1);
        let c4 = parse_entry("perm 4\n2 3 4 1\n", "c4").unwrap().group;
        assert!(isomorphic(&c4, &Group::cyclic(4)).unwrap().is_some());
    }

    #[test]
    fn expect_mismatch_is_an_error() {
        let text = "# expect order=8\nperm 4\n2 3 4 1\n";
        assert!(matches!(parse_entry(text, "x"), Err(Error::ValidationFailed(_))));
    }

    #[test]
    fn shipped_corpus() {
        let c = corpus().unwrap();
        assert_eq!(c.len(), 13);
        let count = |n: usize| c.iter().filter(|e| e.group.order() == n).count();
        assert_eq!((count(32), count(64), count(128)), (6, 6, 1));
        let u1 = &c[0];
        assert_eq!(u1.label, "U_1");
        assert_eq!(u1.expected.class, Some(3));
        assert_eq!(center(&u1.group).order(), 4);
        assert_eq!(frattini(&u1.group).order(), 8);
    }

    #[test]
    fn directory_matches_embedded() {
        let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data");
        let a = corpus_from_dir(&dir).unwrap();
        let b = corpus().unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.group.table(), y.group.table());
        }
    }

    #[test]
    fn annotations() {
        let a = embedded_annotations();
        assert_eq!(a.get("SG(32,9)"), Some(5));
        assert_eq!(a.get("SG(32,10)"), Some(6));
        assert_eq!(a.get("SG(32,13)"), Some(4));
        assert_eq!(a.source, "Table 1");
        assert!(a.warnings.is_empty());
        assert!(parse_annotations("").unwrap().values.is_empty());
        let d = parse_annotations("SG(32,9) 5\nSG(32,9) 7\nFoo 1\n").unwrap();
        assert_eq!(d.get("SG(32,9)"), Some(7));
        assert_eq!(d.warnings.len(), 2);
        assert!(matches!(parse_annotations("SG(32,9)\n"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn auxiliary_groups() {
        let aux = auxiliary().unwrap();
        assert!(isomorphic(&aux[0].group, &crate::pgroup::tests::d8()).unwrap().is_some());
        assert!(isomorphic(&aux[1].group, &crate::pgroup::tests::q8()).unwrap().is_some());
        assert_eq!(aux[5].group.order(), 32);
    }
}
