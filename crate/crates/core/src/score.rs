//! Method identifiers and the shared node-score table contract.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Spreader-ranking methods. The eight experiment methods are the headline
/// set; `Degree` is a support measure available to the library but not part
/// of the benchmark battery.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Method {
    Cks,
    Enc,
    Glr,
    Dcl,
    Lid,
    Dil,
    Bc,
    Cc,
    Degree,
}

impl Method {
    /// The methods compared in experiments, in the reporting order.
    pub const EXPERIMENT_SET: [Method; 8] = [
        Method::Cks,
        Method::Enc,
        Method::Glr,
        Method::Dcl,
        Method::Lid,
        Method::Dil,
        Method::Bc,
        Method::Cc,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Cks => "CKS",
            Method::Enc => "ENC",
            Method::Glr => "GLR",
            Method::Dcl => "DCL",
            Method::Lid => "LID",
            Method::Dil => "DIL",
            Method::Bc => "BC",
            Method::Cc => "CC",
            Method::Degree => "DEGREE",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Method> {
        match s.to_ascii_uppercase().as_str() {
            "CKS" => Ok(Method::Cks),
            "ENC" => Ok(Method::Enc),
            "GLR" => Ok(Method::Glr),
            "DCL" => Ok(Method::Dcl),
            "LID" => Ok(Method::Lid),
            "DIL" => Ok(Method::Dil),
            "BC" => Ok(Method::Bc),
            "CC" => Ok(Method::Cc),
            "DEGREE" => Ok(Method::Degree),
            other => Err(Error::Parameter(format!("unknown method '{other}'"))),
        }
    }
}

impl TryFrom<String> for Method {
    type Error = Error;

    fn try_from(s: String) -> Result<Method> {
        s.parse()
    }
}

impl From<Method> for String {
    fn from(m: Method) -> String {
        m.as_str().to_string()
    }
}

/// A method-tagged score per node with a deterministic total rank order:
/// score descending, dense index ascending on ties.
#[derive(Debug, Clone)]
pub struct ScoreTable {
    method: Method,
    scores: Vec<f64>,
    rank_order: Vec<u32>,
}

impl ScoreTable {
    /// Panics if any score is non-finite; every ranking method must produce
    /// finite reals.
    pub fn new(method: Method, scores: Vec<f64>) -> ScoreTable {
        assert!(
            scores.iter().all(|s| s.is_finite()),
            "{method} produced a non-finite score"
        );
        let mut rank_order: Vec<u32> = (0..scores.len() as u32).collect();
        rank_order.sort_by(|&a, &b| {
            scores[b as usize]
                .total_cmp(&scores[a as usize])
                .then(a.cmp(&b))
        });
        ScoreTable {
            method,
            scores,
            rank_order,
        }
    }

    pub fn method(&self) -> Method {
        self.method
    }

    pub fn len(&self) -> usize {
        self.scores.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scores.is_empty()
    }

    pub fn score(&self, v: u32) -> f64 {
        self.scores[v as usize]
    }

    pub fn scores(&self) -> &[f64] {
        &self.scores
    }

    /// All nodes, best first.
    pub fn rank_order(&self) -> &[u32] {
        &self.rank_order
    }

    /// CSV rows `node,score,rank` in rank order, scores with 12 significant
    /// digits.
    pub fn write_csv<W: std::io::Write>(&self, g: &Graph, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        let io_err = |e: csv::Error| Error::io("score table", std::io::Error::other(e));
        out.write_record(["node", "score", "rank"]).map_err(io_err)?;
        for (rank, &v) in self.rank_order.iter().enumerate() {
            out.write_record([
                g.label(v),
                &format!("{:.11e}", self.score(v)),
                &(rank + 1).to_string(),
            ])
            .map_err(io_err)?;
        }
        out.flush().map_err(|e| Error::io("score table", e))?;
        Ok(())
    }
}
