use std::collections::{BTreeSet, HashMap};
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::{complex, Component, Resolution};
use crate::error::{Error, Result};
use crate::game::{Face, Ruleset, RulesetKind};

pub const FIXTURE_VERSION: u32 = 1;

const SHIPPED: &str = include_str!("../../data/classification.json");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureRow {
    pub ruleset: Ruleset,
    pub resolution: Resolution,
}

/// Row-by-row classification of the tabulated ECN rulesets (4 <= m <= 8,
/// 2 <= k <= m-2).
#[derive(Clone, Debug)]
pub struct Fixture {
    rows: Vec<FixtureRow>,
    index: HashMap<Ruleset, usize>,
}

#[derive(Deserialize)]
struct Document {
    version: u32,
    rows: Vec<FixtureRow>,
}

/// The shipped fixture. It is validated when first loaded.
pub fn fixture() -> &'static Fixture {
    static F: OnceLock<Fixture> = OnceLock::new();
    F.get_or_init(|| Fixture::parse(SHIPPED).expect("shipped classification fixture is valid"))
}

impl Fixture {
    pub fn parse(json: &str) -> Result<Self> {
        let doc: Document = serde_json::from_str(json).map_err(|e| Error::Fixture(e.to_string()))?;
        if doc.version != FIXTURE_VERSION {
            return Err(Error::Fixture(format!(
                "version {} is not supported (expected {FIXTURE_VERSION})",
                doc.version
            )));
        }
        let mut index = HashMap::new();
        for (i, row) in doc.rows.iter().enumerate() {
            check_row(row).map_err(|e| Error::Fixture(format!("{}: {e}", row.ruleset)))?;
            if index.insert(row.ruleset.clone(), i).is_some() {
                return Err(Error::Fixture(format!("{} appears twice", row.ruleset)));
            }
        }
        Ok(Fixture { rows: doc.rows, index })
    }

    pub fn rows(&self) -> &[FixtureRow] {
        &self.rows
    }

    pub fn get(&self, ruleset: &Ruleset) -> Option<&FixtureRow> {
        self.index.get(ruleset).map(|&i| &self.rows[i])
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&serde_json::json!({
            "version": FIXTURE_VERSION,
            "rows": self.rows,
        }))
        .expect("fixture serializes")
    }
}

fn is_partition(m: usize, groups: impl IntoIterator<Item = impl IntoIterator<Item = usize>>) -> bool {
    let mut seen = vec![false; m];
    for g in groups {
        for i in g {
            if i >= m || std::mem::replace(&mut seen[i], true) {
                return false;
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Each generating face of `r` lies inside one group.
fn faces_respect(r: &Ruleset, groups: &[Face]) -> bool {
    r.faces().iter().all(|f| groups.iter().any(|g| f.is_subset_of(*g)))
}

fn check_row(row: &FixtureRow) -> std::result::Result<(), String> {
    let r = &row.ruleset;
    if !matches!(r.kind(), RulesetKind::Ecn { .. }) {
        return Err("fixture rows must be ECN rulesets".into());
    }
    let m = r.m();
    match &row.resolution {
        Resolution::Predicate(id) => match id.ruleset() {
            Some(t) if complex(&t) == complex(r) => Ok(()),
            _ => Err(format!("{id} does not decide this ruleset")),
        },
        Resolution::IsomorphicTo { target, map } => {
            if map.carries(r, target) {
                Ok(())
            } else {
                Err(format!("{map} does not carry the faces onto {target}"))
            }
        }
        Resolution::PileMerge { groups, target } => {
            if !is_partition(m, groups.iter().map(|g| g.iter().copied())) {
                return Err("merge groups do not partition the piles".into());
            }
            let faces: Vec<Face> = groups.iter().map(|g| Face::from_indices(g.iter().copied())).collect();
            if !faces.iter().all(|&g| r.is_face(g)) || !faces_respect(r, &faces) {
                return Err("merge groups must be faces containing every face".into());
            }
            if *target != Ruleset::nim(groups.len()).map_err(|e| e.to_string())? {
                return Err(format!("merge target must be NIM({})", groups.len()));
            }
            Ok(())
        }
        Resolution::DisjunctiveSum { components } => {
            if !is_partition(m, components.iter().map(|c| c.piles.iter().copied())) {
                return Err("components do not partition the piles".into());
            }
            let parts: Vec<Face> = components.iter().map(|c| Face::from_indices(c.piles.iter().copied())).collect();
            if !faces_respect(r, &parts) {
                return Err("a face crosses two components".into());
            }
            components.iter().try_for_each(|c| check_component(r, c))
        }
        Resolution::MooreEquivalent { m: mm, k } => {
            let t = Ruleset::moore(*mm, *k).map_err(|e| e.to_string())?;
            if complex(&t) == complex(r) {
                Ok(())
            } else {
                Err(format!("faces differ from MN({mm},{k})"))
            }
        }
        Resolution::SinglePile => {
            if r.is_face(Face::from_indices(0..m)) {
                Ok(())
            } else {
                Err("the whole circle is not a face".into())
            }
        }
        Resolution::Unsolved => Ok(()),
    }
}

/// The component's ruleset, renumbered to the component's pile order, has
/// exactly the source faces that lie inside the component.
fn check_component(r: &Ruleset, c: &Component) -> std::result::Result<(), String> {
    if c.ruleset.m() != c.piles.len() {
        return Err(format!("{} does not have {} piles", c.ruleset, c.piles.len()));
    }
    let own = Face::from_indices(c.piles.iter().copied());
    let inside: BTreeSet<Face> = r.all_faces().into_iter().filter(|f| f.is_subset_of(own)).collect();
    let mapped: BTreeSet<Face> = c
        .ruleset
        .all_faces()
        .into_iter()
        .map(|f| Face::from_indices(f.indices().map(|j| c.piles[j])))
        .collect();
    if inside == mapped {
        Ok(())
    } else {
        Err(format!("{} does not match the faces on {own}", c.ruleset))
    }
}
