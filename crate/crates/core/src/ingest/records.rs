//! Line-delimited JSON session logs: one file per stream plus a roster header.
//!
//! ```text
//! roster.json        {"participants": ["A","B","C","D"]}
//! speech.jsonl       {"speaker":"A","start":12.00,"end":15.50}
//! gaze.jsonl         {"participant":"A","object":"img_07","start":3.20,"end":4.10}
//! positions.jsonl    {"participant":"A","t":3.0,"x":1.25,"y":0.40}
//! interactions.jsonl {"participant":"A","object":"img_07","action":"release","t":80.2,"label":"Tense"}
//! loudness.jsonl     {"participant":"A","t":3.01,"rms":0.42}
//! ```
//!
//! Unknown fields are ignored. `interactions.jsonl` and `loudness.jsonl` are optional.

use std::fs::{self, File};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::{Map, Value};

use super::IngestError;
use crate::model::{
    Action, GazeEvent, LoudnessSample, ModelError, ObjectInteractionEvent, ParticipantId,
    PositionSample, Roster, SessionLog, SpeechSegment,
};

pub const ROSTER_FILE: &str = "roster.json";
pub const SPEECH_FILE: &str = "speech.jsonl";
pub const GAZE_FILE: &str = "gaze.jsonl";
pub const POSITIONS_FILE: &str = "positions.jsonl";
pub const INTERACTIONS_FILE: &str = "interactions.jsonl";
pub const LOUDNESS_FILE: &str = "loudness.jsonl";

/// File references for each stream of a session.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogPaths {
    pub roster: PathBuf,
    pub speech: PathBuf,
    pub gaze: PathBuf,
    pub positions: PathBuf,
    pub interactions: Option<PathBuf>,
    pub loudness: Option<PathBuf>,
}

impl LogPaths {
    /// Resolves the standard file names inside `dir`. Required streams must
    /// exist; optional ones are picked up when present.
    pub fn from_dir(dir: &Path) -> Result<Self, IngestError> {
        let required = |stream: &'static str, name: &str| {
            let path = dir.join(name);
            if path.is_file() {
                Ok(path)
            } else {
                Err(IngestError::MissingStream { stream, path })
            }
        };
        let optional = |name: &str| Some(dir.join(name)).filter(|p| p.is_file());
        Ok(Self {
            roster: required("roster", ROSTER_FILE)?,
            speech: required("speech", SPEECH_FILE)?,
            gaze: required("gaze", GAZE_FILE)?,
            positions: required("positions", POSITIONS_FILE)?,
            interactions: optional(INTERACTIONS_FILE),
            loudness: optional(LOUDNESS_FILE),
        })
    }
}

/// Reads and validates every stream of a session.
pub fn parse_session_log(paths: &LogPaths) -> Result<SessionLog, IngestError> {
    let roster = parse_roster(BufReader::new(open(&paths.roster)?))?;
    let speech = parse_speech(BufReader::new(open(&paths.speech)?), &roster)?;
    let gaze = parse_gaze(BufReader::new(open(&paths.gaze)?), &roster)?;
    let positions = parse_positions(BufReader::new(open(&paths.positions)?), &roster)?;
    let interactions = match &paths.interactions {
        Some(p) => parse_interactions(BufReader::new(open(p)?), &roster)?,
        None => Vec::new(),
    };
    let loudness = match &paths.loudness {
        Some(p) => Some(parse_loudness(BufReader::new(open(p)?), &roster)?),
        None => None,
    };
    Ok(SessionLog::new(
        roster,
        speech,
        gaze,
        positions,
        interactions,
        loudness,
    )?)
}

/// `parse_session_log(LogPaths::from_dir(dir))`.
pub fn read_session_dir(dir: &Path) -> Result<SessionLog, IngestError> {
    parse_session_log(&LogPaths::from_dir(dir)?)
}

fn open(path: &Path) -> Result<File, IngestError> {
    File::open(path).map_err(|source| IngestError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn parse_roster<R: BufRead>(reader: R) -> Result<Roster, IngestError> {
    let value: Value = serde_json::from_reader(reader).map_err(|e| IngestError::Schema {
        stream: "roster",
        line: e.line(),
        field: String::new(),
        message: e.to_string(),
    })?;
    let ctx = Record::new("roster", 1, &value)?;
    let list = ctx
        .obj
        .get("participants")
        .and_then(Value::as_array)
        .ok_or_else(|| ctx.schema("participants", "expected an array of strings"))?;
    let ids = list
        .iter()
        .map(|v| {
            v.as_str()
                .ok_or_else(|| ctx.schema("participants", "expected an array of strings"))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Roster::from_ids(&ids).map_err(|e| ctx.schema("participants", &e.to_string()))
}

pub fn parse_speech<R: BufRead>(
    reader: R,
    roster: &Roster,
) -> Result<Vec<SpeechSegment>, IngestError> {
    parse_lines(reader, "speech", |rec| {
        let seg = SpeechSegment {
            speaker: rec.participant("speaker", roster)?,
            start: rec.number("start")?,
            end: rec.number("end")?,
        };
        if seg.start < 0.0 {
            return Err(rec.schema("start", "must be >= 0"));
        }
        if seg.end <= seg.start {
            return Err(rec.schema("end", "must be greater than start"));
        }
        Ok(seg)
    })
}

pub fn parse_gaze<R: BufRead>(reader: R, roster: &Roster) -> Result<Vec<GazeEvent>, IngestError> {
    parse_lines(reader, "gaze", |rec| {
        let event = GazeEvent {
            participant: rec.participant("participant", roster)?,
            object_id: rec.string("object")?.to_string(),
            start: rec.number("start")?,
            end: rec.number("end")?,
        };
        if event.object_id.is_empty() {
            return Err(rec.schema("object", "must be non-empty"));
        }
        if event.end <= event.start {
            return Err(rec.schema("end", "must be greater than start"));
        }
        Ok(event)
    })
}

pub fn parse_positions<R: BufRead>(
    reader: R,
    roster: &Roster,
) -> Result<Vec<PositionSample>, IngestError> {
    parse_lines(reader, "positions", |rec| {
        let sample = PositionSample {
            participant: rec.participant("participant", roster)?,
            t: rec.number("t")?,
            x: rec.number("x")?,
            y: rec.number("y")?,
        };
        if sample.t < 0.0 {
            return Err(rec.schema("t", "must be >= 0"));
        }
        Ok(sample)
    })
}

pub fn parse_interactions<R: BufRead>(
    reader: R,
    roster: &Roster,
) -> Result<Vec<ObjectInteractionEvent>, IngestError> {
    parse_lines(reader, "interactions", |rec| {
        let participant = rec.participant("participant", roster)?;
        let object_id = rec.string("object")?.to_string();
        let action = match rec.string("action")? {
            "grab" => Action::Grab,
            "release" => Action::Release,
            other => {
                return Err(rec.schema("action", &format!("expected grab|release, got `{other}`")))
            }
        };
        let t = rec.number("t")?;
        let label = match rec.obj.get("label") {
            None | Some(Value::Null) => None,
            Some(Value::String(s)) => Some(s.clone()),
            Some(_) => return Err(rec.schema("label", "expected a string")),
        };
        let event = ObjectInteractionEvent {
            participant,
            object_id,
            action,
            t,
            label_at_release: label,
        };
        event.validate().map_err(|e| {
            let field = match &e {
                ModelError::InvalidRecord { reason, .. } if reason.contains("label") => "label",
                ModelError::InvalidRecord { reason, .. } if reason.contains("object") => "object",
                _ => "t",
            };
            rec.schema(field, &e.to_string())
        })?;
        Ok(event)
    })
}

pub fn parse_loudness<R: BufRead>(
    reader: R,
    roster: &Roster,
) -> Result<Vec<LoudnessSample>, IngestError> {
    parse_lines(reader, "loudness", |rec| {
        let sample = LoudnessSample {
            participant: rec.participant("participant", roster)?,
            t: rec.number("t")?,
            rms: rec.number("rms")?,
        };
        if sample.rms < 0.0 {
            return Err(rec.schema("rms", "must be >= 0"));
        }
        Ok(sample)
    })
}

/// Writes a session in the layout `read_session_dir` expects. Creates `dir`.
pub fn write_session_log(log: &SessionLog, dir: &Path) -> Result<(), IngestError> {
    fs::create_dir_all(dir).map_err(|source| IngestError::Io {
        path: dir.to_path_buf(),
        source,
    })?;
    let roster = serde_json::json!({ "participants": log.roster().participants() });
    write_file(&dir.join(ROSTER_FILE), |w| {
        writeln!(w, "{roster}")
    })?;
    write_jsonl(&dir.join(SPEECH_FILE), log.speech())?;
    write_jsonl(&dir.join(GAZE_FILE), log.gaze())?;
    write_jsonl(&dir.join(POSITIONS_FILE), log.positions())?;
    write_jsonl(&dir.join(INTERACTIONS_FILE), log.interactions())?;
    if let Some(loudness) = log.loudness() {
        write_jsonl(&dir.join(LOUDNESS_FILE), loudness)?;
    }
    Ok(())
}

fn write_jsonl<T: Serialize>(path: &Path, records: &[T]) -> Result<(), IngestError> {
    write_file(path, |w| {
        for r in records {
            serde_json::to_writer(&mut *w, r)?;
            w.write_all(b"\n")?;
        }
        Ok(())
    })
}

fn write_file(
    path: &Path,
    body: impl FnOnce(&mut BufWriter<File>) -> std::io::Result<()>,
) -> Result<(), IngestError> {
    let io_err = |source| IngestError::Io {
        path: path.to_path_buf(),
        source,
    };
    let mut w = BufWriter::new(File::create(path).map_err(io_err)?);
    body(&mut w).map_err(io_err)?;
    w.flush().map_err(io_err)
}

fn parse_lines<R, T, F>(reader: R, stream: &'static str, mut f: F) -> Result<Vec<T>, IngestError>
where
    R: BufRead,
    F: FnMut(&Record<'_>) -> Result<T, IngestError>,
{
    let mut out = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line.map_err(|source| IngestError::Io {
            path: PathBuf::from(stream),
            source,
        })?;
        if line.trim().is_empty() {
            continue;
        }
        let value: Value = serde_json::from_str(&line).map_err(|e| IngestError::Schema {
            stream,
            line: line_no,
            field: String::new(),
            message: format!("malformed record: {e}"),
        })?;
        let rec = Record::new(stream, line_no, &value)?;
        out.push(f(&rec)?);
    }
    Ok(out)
}

struct Record<'a> {
    stream: &'static str,
    line: usize,
    obj: &'a Map<String, Value>,
}

impl<'a> Record<'a> {
    fn new(stream: &'static str, line: usize, value: &'a Value) -> Result<Self, IngestError> {
        let obj = value.as_object().ok_or_else(|| IngestError::Schema {
            stream,
            line,
            field: String::new(),
            message: "expected a JSON object".to_string(),
        })?;
        Ok(Self { stream, line, obj })
    }

    fn schema(&self, field: &str, message: &str) -> IngestError {
        IngestError::Schema {
            stream: self.stream,
            line: self.line,
            field: field.to_string(),
            message: message.to_string(),
        }
    }

    fn field(&self, field: &str) -> Result<&'a Value, IngestError> {
        self.obj
            .get(field)
            .ok_or_else(|| self.schema(field, "missing required field"))
    }

    fn string(&self, field: &str) -> Result<&'a str, IngestError> {
        self.field(field)?
            .as_str()
            .ok_or_else(|| self.schema(field, "expected a string"))
    }

    fn number(&self, field: &str) -> Result<f64, IngestError> {
        self.field(field)?
            .as_f64()
            .filter(|v| v.is_finite())
            .ok_or_else(|| self.schema(field, "expected a finite number"))
    }

    fn participant(&self, field: &str, roster: &Roster) -> Result<ParticipantId, IngestError> {
        let id = self.string(field)?;
        if !roster.contains(id) {
            return Err(IngestError::UnknownParticipant {
                stream: self.stream,
                line: self.line,
                id: id.to_string(),
            });
        }
        ParticipantId::new(id).map_err(|e| self.schema(field, &e.to_string()))
    }
}
