//! Read-only client for the OEIS search endpoint.
//!
//! Online mode issues `GET <base>?q=<terms>&fmt=json`. Offline mode answers
//! only from bundled fixtures and never opens a socket.

use std::collections::BTreeMap;
use std::time::Duration;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

pub const DEFAULT_BASE_URL: &str = "https://oeis.org/search";
pub const MAX_TERMS: usize = 64;

const BUNDLED_FIXTURES: &str = include_str!("../../fixtures/oeis.json");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OeisMatch {
    pub sequence_id: String,
    pub name: String,
    /// Longest prefix of the query found as a contiguous run of the
    /// sequence's listed terms.
    pub matched_prefix_length: usize,
}

#[derive(Debug, Error)]
pub enum OeisError {
    #[error("empty query")]
    EmptyQuery,
    #[error("query has {0} terms; at most {MAX_TERMS} allowed")]
    TooManyTerms(usize),
    #[error("no offline fixture for query {0:?}")]
    NoFixture(String),
    #[error("network error (retryable): {0}")]
    Network(String),
    #[error("HTTP status {0}")]
    Status(u16),
    #[error("malformed OEIS response: {message}")]
    Parse { message: String, raw: String },
}

impl OeisError {
    pub fn is_retryable(&self) -> bool {
        match self {
            OeisError::Network(_) => true,
            OeisError::Status(code) => *code >= 500 || *code == 429,
            _ => false,
        }
    }
}

/// Canned responses keyed by the comma-joined query.
#[derive(Debug, Clone, Default)]
pub struct Fixtures {
    queries: BTreeMap<String, String>,
}

impl Fixtures {
    pub fn bundled() -> Self {
        Self::from_json(BUNDLED_FIXTURES).expect("bundled OEIS fixtures parse")
    }

    /// Parses `{"queries": {"<terms>": <response>, ...}}`.
    pub fn from_json(text: &str) -> Result<Self, OeisError> {
        let parse_err = |message: String| OeisError::Parse {
            message,
            raw: text.to_string(),
        };
        let v: Value = serde_json::from_str(text).map_err(|e| parse_err(e.to_string()))?;
        let obj = v
            .get("queries")
            .and_then(Value::as_object)
            .ok_or_else(|| parse_err("missing \"queries\" object".into()))?;
        let queries = obj
            .iter()
            .map(|(k, v)| (k.clone(), v.to_string()))
            .collect();
        Ok(Self { queries })
    }

    pub fn insert(&mut self, query: impl Into<String>, response: impl Into<String>) {
        self.queries.insert(query.into(), response.into());
    }

    pub fn get(&self, query: &str) -> Option<&str> {
        self.queries.get(query).map(String::as_str)
    }
}

#[derive(Debug, Clone)]
enum Mode {
    Online {
        base_url: String,
        timeout: Duration,
        backoff: Duration,
    },
    Offline(Fixtures),
}

#[derive(Debug, Clone)]
pub struct OeisClient {
    mode: Mode,
}

impl OeisClient {
    /// Live client with a 10 s timeout and one retry.
    pub fn online(base_url: impl Into<String>) -> Self {
        Self {
            mode: Mode::Online {
                base_url: base_url.into(),
                timeout: Duration::from_secs(10),
                backoff: Duration::from_millis(500),
            },
        }
    }

    pub fn offline(fixtures: Fixtures) -> Self {
        Self {
            mode: Mode::Offline(fixtures),
        }
    }

    pub fn with_timeout(mut self, t: Duration) -> Self {
        if let Mode::Online { timeout, .. } = &mut self.mode {
            *timeout = t;
        }
        self
    }

    pub fn with_backoff(mut self, b: Duration) -> Self {
        if let Mode::Online { backoff, .. } = &mut self.mode {
            *backoff = b;
        }
        self
    }

    pub fn is_offline(&self) -> bool {
        matches!(self.mode, Mode::Offline(_))
    }

    pub fn search(&self, terms: &[i128]) -> Result<Vec<OeisMatch>, OeisError> {
        if terms.is_empty() {
            return Err(OeisError::EmptyQuery);
        }
        if terms.len() > MAX_TERMS {
            return Err(OeisError::TooManyTerms(terms.len()));
        }
        let query = join_terms(terms);
        let raw = match &self.mode {
            Mode::Offline(fixtures) => fixtures
                .get(&query)
                .ok_or_else(|| OeisError::NoFixture(query.clone()))?
                .to_string(),
            Mode::Online {
                base_url,
                timeout,
                backoff,
            } => fetch_with_retry(base_url, &query, *timeout, *backoff)?,
        };
        parse_response(&raw, terms)
    }
}

pub fn join_terms(terms: &[i128]) -> String {
    terms
        .iter()
        .map(i128::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

fn fetch_once(base_url: &str, query: &str, timeout: Duration) -> Result<String, OeisError> {
    let agent = ureq::AgentBuilder::new().timeout(timeout).build();
    match agent
        .get(base_url)
        .query("q", query)
        .query("fmt", "json")
        .call()
    {
        Ok(resp) => resp
            .into_string()
            .map_err(|e| OeisError::Network(e.to_string())),
        Err(ureq::Error::Status(code, _)) => Err(OeisError::Status(code)),
        Err(ureq::Error::Transport(t)) => Err(OeisError::Network(t.to_string())),
    }
}

fn fetch_with_retry(
    base_url: &str,
    query: &str,
    timeout: Duration,
    backoff: Duration,
) -> Result<String, OeisError> {
    const ATTEMPTS: u32 = 2;
    let mut attempt = 0;
    loop {
        match fetch_once(base_url, query, timeout) {
            Err(e) if e.is_retryable() && attempt + 1 < ATTEMPTS => {
                std::thread::sleep(backoff * 2u32.pow(attempt));
                attempt += 1;
            }
            other => return other,
        }
    }
}

/// Parses either the legacy object form (`{"results": [...] | null, ...}`)
/// or a bare array of entries. Order is preserved.
pub fn parse_response(raw: &str, query: &[i128]) -> Result<Vec<OeisMatch>, OeisError> {
    let parse_err = |message: &str| OeisError::Parse {
        message: message.to_string(),
        raw: raw.to_string(),
    };
    let v: Value = serde_json::from_str(raw).map_err(|e| parse_err(&e.to_string()))?;
    let entries = match &v {
        Value::Null => return Ok(Vec::new()),
        Value::Array(a) => a.as_slice(),
        Value::Object(o) => match o.get("results") {
            None | Some(Value::Null) => return Ok(Vec::new()),
            Some(Value::Array(a)) => a.as_slice(),
            Some(_) => return Err(parse_err("\"results\" is not an array")),
        },
        _ => return Err(parse_err("expected an object or array")),
    };
    entries
        .iter()
        .map(|e| {
            let number = e
                .get("number")
                .and_then(Value::as_u64)
                .ok_or_else(|| parse_err("entry without numeric \"number\""))?;
            let name = e
                .get("name")
                .and_then(Value::as_str)
                .ok_or_else(|| parse_err("entry without \"name\""))?;
            let data: Vec<i128> = e
                .get("data")
                .and_then(Value::as_str)
                .map(|d| d.split(',').filter_map(|t| t.trim().parse().ok()).collect())
                .unwrap_or_default();
            Ok(OeisMatch {
                sequence_id: format!("A{number:06}"),
                name: name.to_string(),
                matched_prefix_length: matched_prefix(&data, query),
            })
        })
        .collect()
}

fn matched_prefix(data: &[i128], query: &[i128]) -> usize {
    (0..data.len())
        .map(|start| {
            data[start..]
                .iter()
                .zip(query)
                .take_while(|(a, b)| a == b)
                .count()
        })
        .max()
        .unwrap_or(0)
}
