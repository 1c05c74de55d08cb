use std::fmt;
use std::path::Path;

use crate::InputError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    Decompose,
    TraceSum,
    TraceWitness,
    Bounded,
    Corner,
    WeylEval,
    WeylWitness,
    WeylIntegrate,
    ModpCheck,
    LemmaCheck,
    Counterexample,
    ShiftVerify,
    Replay,
}

impl Command {
    pub const ALL: [Command; 13] = [
        Command::Decompose,
        Command::TraceSum,
        Command::TraceWitness,
        Command::Bounded,
        Command::Corner,
        Command::WeylEval,
        Command::WeylWitness,
        Command::WeylIntegrate,
        Command::ModpCheck,
        Command::LemmaCheck,
        Command::Counterexample,
        Command::ShiftVerify,
        Command::Replay,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Decompose => "decompose",
            Command::TraceSum => "trace-sum",
            Command::TraceWitness => "trace-witness",
            Command::Bounded => "bounded",
            Command::Corner => "corner",
            Command::WeylEval => "weyl-eval",
            Command::WeylWitness => "weyl-witness",
            Command::WeylIntegrate => "weyl-integrate",
            Command::ModpCheck => "modp-check",
            Command::LemmaCheck => "lemma-check",
            Command::Counterexample => "counterexample",
            Command::ShiftVerify => "shift-verify",
            Command::Replay => "replay",
        }
    }

    pub fn from_name(name: &str) -> Option<Command> {
        Command::ALL.into_iter().find(|c| c.name() == name)
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub const DEFAULT_SEED: u64 = 0;
pub const DEFAULT_WINDOW: usize = 64;
pub const DEFAULT_SAMPLES: u64 = 1000;

/// A parsed invocation. Inputs are kept as text fields; each command
/// parses them against its ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Request {
    pub command: Command,
    pub ring: Option<String>,
    pub inputs: Vec<String>,
    pub seed: u64,
    pub window: usize,
    pub p: Option<u64>,
    pub samples: u64,
    pub scaled: bool,
    pub replay: Option<String>,
}

impl Request {
    pub fn new(command: Command) -> Request {
        Request {
            command,
            ring: None,
            inputs: Vec::new(),
            seed: DEFAULT_SEED,
            window: DEFAULT_WINDOW,
            p: None,
            samples: DEFAULT_SAMPLES,
            scaled: false,
            replay: None,
        }
    }

    /// Header lines echoed at the top of every report.
    pub fn echo(&self) -> Vec<String> {
        let mut out = vec![format!("command: {}", self.command)];
        if let Some(r) = &self.ring {
            out.push(format!("ring: {r}"));
        }
        if let Some(p) = self.p {
            out.push(format!("p: {p}"));
        }
        match self.command {
            Command::ShiftVerify => out.push(format!("window: {}", self.window)),
            Command::LemmaCheck if self.p.is_some_and(|p| p > commring_core::obstruction::EXHAUSTIVE_MAX_PRIME) => {
                out.push(format!("samples: {}", self.samples))
            }
            Command::WeylIntegrate => out.push(format!("scaled: {}", self.scaled)),
            Command::Replay => {
                if let Some(r) = &self.replay {
                    out.push(format!("replay: {r}"));
                }
            }
            _ => {}
        }
        out.push(format!("seed: {}", self.seed));
        out.extend(self.inputs.iter().map(|i| format!("input: {i}")));
        out
    }

    /// Rebuilds a request from echoed header lines.
    pub fn from_echo<'a>(lines: impl IntoIterator<Item = &'a str>) -> Result<Request, InputError> {
        let mut req: Option<Request> = None;
        for line in lines {
            let (key, value) = line
                .split_once(": ")
                .ok_or_else(|| InputError::Request(format!("malformed header line '{line}'")))?;
            if key == "command" {
                let c = Command::from_name(value)
                    .ok_or_else(|| InputError::Request(format!("unknown command '{value}'")))?;
                req = Some(Request::new(c));
                continue;
            }
            let r = req
                .as_mut()
                .ok_or_else(|| InputError::Request("header must start with 'command:'".into()))?;
            let bad = || InputError::Request(format!("bad value for {key}: '{value}'"));
            match key {
                "ring" => r.ring = Some(value.to_string()),
                "p" => r.p = Some(value.parse().map_err(|_| bad())?),
                "window" => r.window = value.parse().map_err(|_| bad())?,
                "samples" => r.samples = value.parse().map_err(|_| bad())?,
                "scaled" => r.scaled = value.parse().map_err(|_| bad())?,
                "seed" => r.seed = value.parse().map_err(|_| bad())?,
                "replay" => r.replay = Some(value.to_string()),
                "input" => r.inputs.push(value.to_string()),
                _ => return Err(InputError::Request(format!("unknown header key '{key}'"))),
            }
        }
        req.ok_or_else(|| InputError::Request("empty request header".into()))
    }
}

/// Splits `--input` text into fields: separated by `;` or newlines, blank
/// lines and `#` comments dropped. An existing file path is read first.
pub fn load_inputs(arg: &str) -> Result<Vec<String>, InputError> {
    let text = if Path::new(arg).is_file() {
        std::fs::read_to_string(arg).map_err(|source| InputError::Io {
            path: arg.to_string(),
            source,
        })?
    } else {
        arg.to_string()
    };
    Ok(text
        .lines()
        .filter(|l| !l.trim_start().starts_with('#'))
        .flat_map(|l| l.split(';'))
        .map(str::trim)
        .filter(|f| !f.is_empty())
        .map(String::from)
        .collect())
}
