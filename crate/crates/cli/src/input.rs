use std::path::PathBuf;

use clap::Args;
use serde::{Deserialize, Serialize};

use khoval_core::{braid_to_pd, parse_pd, Diagram, Error, Result};

/// Exactly one of `--pd`, `--braid` (with `--strands`) or a file path.
#[derive(Args, Clone, Debug, Default)]
pub struct InputArgs {
    /// PD code, e.g. "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)"; `O` adds a crossing-free circle.
    #[arg(long, conflicts_with_all = ["braid", "file"])]
    pub pd: Option<String>,
    /// Braid word as signed generator indices, e.g. "1 1 -1".
    #[arg(long, allow_hyphen_values = true, requires = "strands", conflicts_with = "file")]
    pub braid: Option<String>,
    #[arg(long)]
    pub strands: Option<u32>,
    /// File holding one PD code; `#` starts a comment.
    pub file: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputEcho {
    pub kind: String,
    pub text: String,
    pub strands: Option<u32>,
}

pub fn parse_braid_word(text: &str) -> Result<Vec<i32>> {
    text.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<i32>().ok().filter(|&g| g != 0).ok_or_else(|| Error::MalformedToken(t.to_string())))
        .collect()
}

impl InputArgs {
    pub fn pd(text: &str) -> Self {
        Self { pd: Some(text.into()), ..Self::default() }
    }

    pub fn braid(word: &str, strands: u32) -> Self {
        Self { braid: Some(word.into()), strands: Some(strands), ..Self::default() }
    }

    pub fn is_empty(&self) -> bool {
        self.pd.is_none() && self.braid.is_none() && self.file.is_none()
    }

    /// Parses the input. File-read failures are reported as parse errors.
    pub fn load(&self) -> std::result::Result<(Diagram, InputEcho), String> {
        if let Some(text) = &self.pd {
            let d = parse_pd(text).map_err(|e| e.to_string())?;
            return Ok((d, InputEcho { kind: "pd".into(), text: text.clone(), strands: None }));
        }
        if let Some(word) = &self.braid {
            let strands = self.strands.ok_or("--braid needs --strands")?;
            let w = parse_braid_word(word).map_err(|e| e.to_string())?;
            let d = braid_to_pd(&w, strands).map_err(|e| e.to_string())?;
            return Ok((d, InputEcho { kind: "braid".into(), text: word.clone(), strands: Some(strands) }));
        }
        if let Some(path) = &self.file {
            let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
            let d = parse_pd(&text).map_err(|e| e.to_string())?;
            return Ok((d, InputEcho { kind: "file".into(), text: path.display().to_string(), strands: None }));
        }
        Err("no input: give --pd, --braid with --strands, or a file".into())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn braid_words() {
        assert_eq!(parse_braid_word("1 1 -1").unwrap(), vec![1, 1, -1]);
        assert_eq!(parse_braid_word("1,-2, 1").unwrap(), vec![1, -2, 1]);
        assert_eq!(parse_braid_word("").unwrap(), Vec::<i32>::new());
        assert_eq!(parse_braid_word("1 x"), Err(Error::MalformedToken("x".into())));
        assert_eq!(parse_braid_word("0"), Err(Error::MalformedToken("0".into())));
    }

    #[test]
    fn load_reports_offending_token() {
        let err = InputArgs::pd("X(1,2,3)").load().unwrap_err();
        assert!(err.contains("X(1,2,3)"), "{err}");
        assert!(InputArgs::default().load().is_err());
    }
}
