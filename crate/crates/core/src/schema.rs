//! JSON encodings shared by the library and the command-line front end.
//!
//! Forests and posets carry their own encodings ([`crate::forest::ForestJson`],
//! [`crate::poset::PosetJson`]); paths and trees are encoded here.

use std::str::FromStr;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use serde_json::Number;

use crate::error::{domain, Result};
use crate::path::{BasePath, GridPoint, StepWord};
use crate::tree::NuTree;

/// An exact JSON number for an arbitrary-precision count.
pub fn big_number(n: &BigUint) -> Number {
    Number::from_str(&n.to_string()).expect("decimal digits form a JSON number")
}

/// `{"nu": word, "path": word}`; the path must be small over `nu`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathJson {
    pub nu: StepWord,
    pub path: StepWord,
}

impl PathJson {
    pub fn new(nu: &BasePath, path: &StepWord) -> Self {
        PathJson { nu: nu.word().clone(), path: path.clone() }
    }

    pub fn decode(&self) -> Result<(BasePath, StepWord)> {
        let nu = BasePath::new(self.nu.clone())?;
        if !nu.is_small(&self.path)? {
            return domain(format!("{} is not a small path over {nu}", self.path));
        }
        Ok((nu, self.path.clone()))
    }
}

/// `{"nu": word, "nodes": [[x, y], ...]}` with nodes in row-major order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeJson {
    pub nu: StepWord,
    pub nodes: Vec<[usize; 2]>,
}

impl From<&NuTree> for TreeJson {
    fn from(t: &NuTree) -> Self {
        TreeJson {
            nu: t.base().word().clone(),
            nodes: t.nodes().iter().map(|p| [p.x, p.y]).collect(),
        }
    }
}

impl TryFrom<TreeJson> for NuTree {
    type Error = crate::Error;

    fn try_from(j: TreeJson) -> Result<Self> {
        let nu = BasePath::new(j.nu)?;
        NuTree::new(nu, j.nodes.into_iter().map(|[x, y]| GridPoint::new(x, y)).collect())
    }
}
