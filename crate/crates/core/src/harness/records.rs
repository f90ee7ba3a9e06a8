//! One JSON object per line and per triple.

use serde::{Deserialize, Serialize};

use super::HarnessError;
use crate::decider::Verdict;
use crate::geometry::{format_rational, parse_rational, verify_certificate, TriangleConfig};
use crate::model::{TaggedPattern, Triple};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RecordVerdict {
    Realizable,
    Unrealizable,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ResultRecord {
    pub triple: [String; 3],
    pub reversals: Option<u8>,
    pub tags: Option<[[usize; 2]; 3]>,
    pub verdict: RecordVerdict,
    pub certificate: Option<[Vec<String>; 3]>,
    pub runtime_ms: u64,
}

impl ResultRecord {
    pub fn new(t: &Triple, verdict: &Verdict, runtime_ms: u64) -> Self {
        let triple = t.words();
        match verdict.certificate() {
            Some(c) => {
                let tags = c.pattern.tags().map(|(z, o)| [z, o]);
                let certificate = c
                    .coords
                    .lines()
                    .clone()
                    .map(|l| l.iter().map(format_rational).collect());
                Self {
                    triple,
                    reversals: Some(c.reversals),
                    tags: Some(tags),
                    verdict: RecordVerdict::Realizable,
                    certificate: Some(certificate),
                    runtime_ms,
                }
            }
            None => Self {
                triple,
                reversals: None,
                tags: None,
                verdict: RecordVerdict::Unrealizable,
                certificate: None,
                runtime_ms,
            },
        }
    }

    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("records serialize")
    }

    pub fn parse_line(line: &str, number: usize) -> Result<Self, HarnessError> {
        serde_json::from_str(line).map_err(|e| HarnessError::Record {
            line: number,
            message: e.to_string(),
        })
    }

    pub fn triple(&self) -> Result<Triple, HarnessError> {
        let [a, b, c] = &self.triple;
        Ok(format!("{a} {b} {c}").parse()?)
    }

    /// The tagged pattern realized by the certificate, with reversals
    /// applied.
    pub fn pattern(&self) -> Result<Option<TaggedPattern>, HarnessError> {
        let (Some(mask), Some(tags)) = (self.reversals, self.tags) else {
            return Ok(None);
        };
        let t = self.triple()?.with_reversals(mask);
        let tags = tags.map(|[z, o]| (z, o));
        Ok(Some(TaggedPattern::from_triple(&t, tags)?))
    }

    pub fn coords(&self) -> Result<Option<TriangleConfig>, HarnessError> {
        let Some([x, y, z]) = &self.certificate else {
            return Ok(None);
        };
        let parse = |v: &Vec<String>| v.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>, _>>();
        Ok(Some(TriangleConfig::new(parse(x)?, parse(y)?, parse(z)?)?))
    }

    /// A realizable record must carry a certificate the verifier accepts; an
    /// unrealizable one must carry none.
    pub fn verify(&self) -> Result<bool, HarnessError> {
        let pattern = self.pattern()?;
        let coords = self.coords()?;
        match (self.verdict, pattern, coords) {
            (RecordVerdict::Realizable, Some(p), Some(c)) => Ok(verify_certificate(&p, &c)?),
            (RecordVerdict::Unrealizable, None, None) => Ok(true),
            _ => Ok(false),
        }
    }
}

/// Parses a file of records, one per non-empty line.
pub fn read_records(text: &str) -> Result<Vec<ResultRecord>, HarnessError> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(k, l)| ResultRecord::parse_line(l, k + 1))
        .collect()
}
