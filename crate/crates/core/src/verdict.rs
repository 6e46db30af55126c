use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

/// Which question a verdict answers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Facet {
    ExactCount,
    ApproxCount,
    Decision,
    TutteExact,
    TutteApprox,
}

/// Complexity classification labels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Tag {
    #[serde(rename = "polynomial")]
    Polynomial,
    #[serde(rename = "FPT")]
    Fpt,
    #[serde(rename = "#W[1]-hard")]
    W1Hard,
    #[serde(rename = "FPT, #P-hard")]
    SharpPHardButFpt,
    #[serde(rename = "hardness-criterion-inconclusive")]
    Inconclusive,
    #[serde(rename = "FPTRAS")]
    Fptras,
    #[serde(rename = "FPRAS")]
    Fpras,
    #[serde(rename = "open")]
    Open,
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tag::Polynomial => "polynomial",
            Tag::Fpt => "FPT",
            Tag::W1Hard => "#W[1]-hard",
            Tag::SharpPHardButFpt => "FPT, #P-hard",
            Tag::Inconclusive => "hardness-criterion-inconclusive",
            Tag::Fptras => "FPTRAS",
            Tag::Fpras => "FPRAS",
            Tag::Open => "open",
        })
    }
}

/// A classification with its justification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub facet: Facet,
    pub tag: Tag,
    /// Set when a matching lower bound under the exponential-time hypothesis
    /// accompanies the hardness.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub eth_tight: bool,
    pub citation: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Verdict {
    pub fn new(facet: Facet, tag: Tag, citation: impl Into<String>) -> Self {
        Verdict {
            facet,
            tag,
            eth_tight: false,
            citation: citation.into(),
            note: None,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    /// Human-readable summary, e.g. `#W[1]-hard (ETH-tight)`.
    pub fn summary(&self) -> String {
        let mut s = self.tag.to_string();
        if self.eth_tight {
            s.push_str(" + ETH: no f(k)|G|^o(k/log k)");
        }
        if let Some(n) = &self.note {
            s.push_str(" (");
            s.push_str(n);
            s.push(')');
        }
        s
    }
}

/// Exact integers as JSON numbers when they fit in 64 bits, otherwise as
/// decimal strings.
pub fn bigint_json(x: &BigInt) -> serde_json::Value {
    if let Some(v) = x.to_i64() {
        serde_json::Value::from(v)
    } else if let Some(v) = x.to_u64() {
        serde_json::Value::from(v)
    } else {
        serde_json::Value::from(x.to_string())
    }
}
