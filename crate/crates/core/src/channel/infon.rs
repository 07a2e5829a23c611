use std::fmt;
use std::str::FromStr;

use crate::error::{invalid, Error, Result};

/// Unit of information: a relation over objects, optionally located in space
/// and time, holding (polarity 1) or failing (polarity 0).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Infon {
    relation: String,
    args: Vec<String>,
    location: Option<String>,
    time: Option<String>,
    polarity: bool,
}

fn check_symbol(s: &str, what: &str) -> Result<()> {
    if s.is_empty() || s.chars().any(|c| matches!(c, '<' | '>' | ';' | ',' | '(' | ')') || c.is_whitespace()) {
        Err(invalid(format!("malformed {what} `{s}`")))
    } else {
        Ok(())
    }
}

impl Infon {
    /// Positive infon without location or time.
    pub fn new<S: Into<String>>(relation: impl Into<String>, args: impl IntoIterator<Item = S>) -> Result<Self> {
        Self::full(relation, args, None, None, 1)
    }

    pub fn full<S: Into<String>>(
        relation: impl Into<String>,
        args: impl IntoIterator<Item = S>,
        location: Option<String>,
        time: Option<String>,
        polarity: u8,
    ) -> Result<Self> {
        let relation = relation.into();
        let args: Vec<String> = args.into_iter().map(Into::into).collect();
        check_symbol(&relation, "relation")?;
        if args.is_empty() {
            return Err(invalid(format!("infon `{relation}` needs at least one argument")));
        }
        for a in &args {
            check_symbol(a, "argument")?;
        }
        for s in location.iter().chain(time.iter()) {
            check_symbol(s, "location or time")?;
        }
        if polarity > 1 {
            return Err(invalid(format!("polarity must be 0 or 1, got {polarity}")));
        }
        Ok(Infon {
            relation,
            args,
            location,
            time,
            polarity: polarity == 1,
        })
    }

    pub fn relation(&self) -> &str {
        &self.relation
    }

    pub fn args(&self) -> &[String] {
        &self.args
    }

    pub fn location(&self) -> Option<&str> {
        self.location.as_deref()
    }

    pub fn time(&self) -> Option<&str> {
        self.time.as_deref()
    }

    pub fn polarity(&self) -> u8 {
        u8::from(self.polarity)
    }

    /// The same infon with the opposite polarity.
    pub fn dual(&self) -> Self {
        Infon {
            polarity: !self.polarity,
            ..self.clone()
        }
    }

    /// Canonical type id, e.g. `<<drives(bob,car);paris;t1;1>>` (`-` for absent fields).
    pub fn canonical(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Infon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "<<{}({});{};{};{}>>",
            self.relation,
            self.args.join(","),
            self.location.as_deref().unwrap_or("-"),
            self.time.as_deref().unwrap_or("-"),
            self.polarity()
        )
    }
}

impl FromStr for Infon {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || invalid(format!("malformed infon `{s}`"));
        let body = s.trim().strip_prefix("<<").and_then(|r| r.strip_suffix(">>")).ok_or_else(bad)?;
        let parts: Vec<&str> = body.split(';').collect();
        let [head, loc, time, pol] = parts[..] else {
            return Err(bad());
        };
        let (rel, rest) = head.split_once('(').ok_or_else(bad)?;
        let args = rest.strip_suffix(')').ok_or_else(bad)?;
        let opt = |x: &str| (x != "-").then(|| x.to_string());
        let polarity = match pol {
            "0" => 0,
            "1" => 1,
            _ => return Err(bad()),
        };
        Infon::full(rel, args.split(','), opt(loc), opt(time), polarity)
    }
}
