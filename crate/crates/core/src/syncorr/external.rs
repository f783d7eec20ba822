//! Subprocess hook for outside synthesizers and repairers.
//!
//! The child gets one JSON object on stdin, `{regex?, description?,
//! positive, negative}`, and answers on stdout with either `{"regex": ..}`
//! or a bare regex on the first line.

use std::io::{Read, Write};
use std::process::{Command, Stdio};
use std::thread;
use std::time::Duration;

use serde::{Deserialize, Serialize};
use thiserror::Error;
use wait_timeout::ChildExt;

use crate::alphabet::Alphabet;
use crate::evaluation::ExampleSet;
use crate::regex::{parse, ParseError, Regex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ToolRole {
    Synthesizer,
    Repairer,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExternalTool {
    pub role: ToolRole,
    /// Run through `sh -c`.
    pub command: String,
    pub timeout_ms: u64,
}

impl ExternalTool {
    pub const DEFAULT_TIMEOUT_MS: u64 = 30_000;

    pub fn new(role: ToolRole, command: impl Into<String>) -> Self {
        ExternalTool {
            role,
            command: command.into(),
            timeout_ms: Self::DEFAULT_TIMEOUT_MS,
        }
    }

    pub fn with_timeout_ms(mut self, ms: u64) -> Self {
        self.timeout_ms = ms;
        self
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ToolRequest<'a> {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub regex: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub description: Option<&'a str>,
    pub positive: &'a [String],
    pub negative: &'a [String],
}

impl<'a> ToolRequest<'a> {
    pub fn new(regex: Option<&Regex>, description: Option<&'a str>, ex: &'a ExampleSet) -> Self {
        ToolRequest {
            regex: regex.map(|r| r.to_string()),
            description,
            positive: ex.positive(),
            negative: ex.negative(),
        }
    }
}

#[derive(Debug, Error)]
pub enum ToolError {
    #[error("timeout must be positive")]
    ZeroTimeout,
    #[error("could not start `{command}`: {source}")]
    Spawn {
        command: String,
        source: std::io::Error,
    },
    #[error("i/o with tool failed: {0}")]
    Io(#[from] std::io::Error),
    #[error("tool did not finish within {0} ms")]
    Timeout(u64),
    #[error("tool exited with {code:?}: {stderr}")]
    NonZeroExit { code: Option<i32>, stderr: String },
    #[error("tool produced no regex")]
    NoOutput,
    #[error("tool output is not a valid regex: {0}")]
    InvalidRegex(#[from] ParseError),
}

#[derive(Deserialize)]
struct ToolReply {
    regex: String,
}

fn extract(stdout: &str) -> Option<String> {
    let trimmed = stdout.trim();
    if trimmed.starts_with('{') {
        if let Ok(reply) = serde_json::from_str::<ToolReply>(trimmed) {
            return Some(reply.regex);
        }
    }
    // Keep inner spaces; a regex may legitimately contain them.
    stdout
        .lines()
        .next()
        .map(|l| l.trim_end_matches('\r').to_string())
        .filter(|l| !l.is_empty())
}

pub fn invoke_external(tool: &ExternalTool, req: &ToolRequest<'_>, alphabet: &Alphabet) -> Result<Regex, ToolError> {
    if tool.timeout_ms == 0 {
        return Err(ToolError::ZeroTimeout);
    }
    let payload = serde_json::to_vec(req).expect("request serializes");
    let mut child = Command::new("sh")
        .arg("-c")
        .arg(&tool.command)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .map_err(|source| ToolError::Spawn {
            command: tool.command.clone(),
            source,
        })?;

    let mut stdin = child.stdin.take().expect("piped stdin");
    let writer = thread::spawn(move || {
        // A tool that ignores its input may close the pipe early.
        let _ = stdin.write_all(&payload);
    });
    let mut stdout = child.stdout.take().expect("piped stdout");
    let out_reader = thread::spawn(move || {
        let mut buf = Vec::new();
        let _ = stdout.read_to_end(&mut buf);
        buf
    });
    let mut stderr = child.stderr.take().expect("piped stderr");
    let err_reader = thread::spawn(move || {
        let mut buf = Vec::new();
        let _ = stderr.read_to_end(&mut buf);
        buf
    });

    let status = match child.wait_timeout(Duration::from_millis(tool.timeout_ms))? {
        Some(s) => s,
        None => {
            let _ = child.kill();
            let _ = child.wait();
            return Err(ToolError::Timeout(tool.timeout_ms));
        }
    };
    let _ = writer.join();
    let out = out_reader.join().unwrap_or_default();
    let err = err_reader.join().unwrap_or_default();
    if !status.success() {
        let stderr = String::from_utf8_lossy(&err).lines().next().unwrap_or("").to_string();
        return Err(ToolError::NonZeroExit {
            code: status.code(),
            stderr,
        });
    }
    let text = String::from_utf8_lossy(&out);
    let regex = extract(&text).ok_or(ToolError::NoOutput)?;
    Ok(parse(&regex, alphabet)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reply_forms() {
        assert_eq!(extract("{\"regex\": \"a b\"}\n").as_deref(), Some("a b"));
        assert_eq!(extract("ab*\nignored\n").as_deref(), Some("ab*"));
        assert_eq!(extract("\n"), None);
    }
}
