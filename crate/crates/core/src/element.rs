//! Main-group element symbols and the valence table.
//!
//! The valence model is deliberately simple: one number per element. The
//! shipped defaults can be overridden from a JSON file mapping symbols to
//! valences, either explicitly or through the `RETROGRAPH_VALENCE_TABLE`
//! environment variable.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::sync::OnceLock;

use crate::error::{Error, Result};

pub const VALENCE_TABLE_ENV: &str = "RETROGRAPH_VALENCE_TABLE";

/// Symbol and default valence for every main-group element we accept.
/// Noble gases are omitted since they have no positive default valence.
const MAIN_GROUP: &[(&str, u32)] = &[
    ("H", 1),
    ("Li", 1),
    ("Na", 1),
    ("K", 1),
    ("Rb", 1),
    ("Cs", 1),
    ("Fr", 1),
    ("Be", 2),
    ("Mg", 2),
    ("Ca", 2),
    ("Sr", 2),
    ("Ba", 2),
    ("Ra", 2),
    ("B", 3),
    ("Al", 3),
    ("Ga", 3),
    ("In", 3),
    ("Tl", 3),
    ("C", 4),
    ("Si", 4),
    ("Ge", 4),
    ("Sn", 4),
    ("Pb", 4),
    ("N", 3),
    ("P", 5),
    ("As", 3),
    ("Sb", 3),
    ("Bi", 3),
    ("O", 2),
    ("S", 6),
    ("Se", 2),
    ("Te", 2),
    ("Po", 2),
    ("F", 1),
    ("Cl", 1),
    ("Br", 1),
    ("I", 1),
    ("At", 1),
];

/// A main-group element, identified by its symbol.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Element(&'static str);

impl Element {
    pub fn from_symbol(symbol: &str) -> Result<Element> {
        MAIN_GROUP.iter().find(|(s, _)| *s == symbol).map(|(s, _)| Element(s)).ok_or_else(|| Error::UnknownElement(symbol.to_string()))
    }

    pub fn symbol(self) -> &'static str {
        self.0
    }

    pub fn all() -> impl Iterator<Item = Element> {
        MAIN_GROUP.iter().map(|(s, _)| Element(s))
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.0)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValenceTable {
    atoms: BTreeMap<Element, u32>,
}

impl Default for ValenceTable {
    fn default() -> Self {
        ValenceTable { atoms: MAIN_GROUP.iter().map(|&(s, v)| (Element(s), v)).collect() }
    }
}

impl ValenceTable {
    pub fn valence(&self, element: Element) -> u32 {
        self.atoms.get(&element).copied().unwrap_or(0)
    }

    /// Overrides entries from a JSON object such as `{"S": 2, "P": 3}`.
    pub fn with_overrides_json(mut self, json: &str) -> Result<Self> {
        let raw: BTreeMap<String, u32> = serde_json::from_str(json)?;
        for (symbol, valence) in raw {
            let element = Element::from_symbol(&symbol)?;
            if valence == 0 {
                return Err(Error::Schema { path: symbol, message: "atom valence must be positive".into() });
            }
            self.atoms.insert(element, valence);
        }
        Ok(self)
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        ValenceTable::default().with_overrides_json(&text)
    }

    /// The process-wide table: defaults, overridden by the file named in
    /// `RETROGRAPH_VALENCE_TABLE` when that variable is set and readable.
    pub fn global() -> &'static ValenceTable {
        static TABLE: OnceLock<ValenceTable> = OnceLock::new();
        TABLE.get_or_init(|| match std::env::var_os(VALENCE_TABLE_ENV) {
            Some(path) => ValenceTable::from_file(path).unwrap_or_default(),
            None => ValenceTable::default(),
        })
    }
}
