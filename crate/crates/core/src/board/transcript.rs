//! Replayable game record and its JSON document form.

use serde::{Deserialize, Serialize};

use super::Edge;

pub const TRANSCRIPT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveRecord {
    /// `"A"` or `"E"`.
    pub p: String,
    pub e: Edge,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ResultDoc {
    Lost { lost_at: usize },
    Survived { survived: bool },
}

/// A strategy-fault event: the scripted rule could not be applied and a
/// fallback move was played instead.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostic {
    /// 1-based index into `moves` of the move the event relates to.
    #[serde(rename = "move")]
    pub move_index: usize,
    pub strategy: String,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transcript {
    pub version: u32,
    pub family: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    pub n: usize,
    pub seed: u64,
    pub avoider: String,
    pub enforcer: String,
    pub moves: Vec<MoveRecord>,
    pub result: ResultDoc,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub diagnostics: Vec<Diagnostic>,
}

impl Transcript {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("transcript serialisation cannot fail")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("transcript serialisation cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}
