//! JSON files: groups, words, presentations, diagrams and motions.

use std::fs;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::{DiagramError, DiagramFile, HowieDiagram};
use crate::kernel::{FpWord, Group, GroupError, GroupFile, TWord};
use crate::motion::MultipleMotion;
use crate::rewrite::{PhiPresentation, PresentationError};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Json { path: PathBuf, source: serde_json::Error },
    #[error("{path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },
    #[error("group: {0}")]
    Group(#[from] GroupError),
    #[error("presentation: {0}")]
    Presentation(#[from] PresentationError),
    #[error("diagram: {0}")]
    Diagram(#[from] DiagramError),
    #[error("presentation declares m = {declared} but has {blocks} blocks")]
    BlockCount { declared: i64, blocks: usize },
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, IoError> {
    let raw = fs::read_to_string(path).map_err(|source| IoError::Read { path: path.into(), source })?;
    serde_json::from_str(&raw).map_err(|source| IoError::Json { path: path.into(), source })
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), IoError> {
    let text = serde_json::to_string_pretty(value).expect("serializable");
    fs::write(path, text + "\n").map_err(|source| IoError::Write { path: path.into(), source })
}

pub fn load_group(path: &Path) -> Result<Group, IoError> {
    Ok(Group::from_file(read_json::<GroupFile>(path)?)?)
}

pub fn load_word(path: &Path) -> Result<TWord, IoError> {
    read_json(path)
}

/// A group given inline or as a path relative to the referring file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupRef {
    Inline(GroupFile),
    Path(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationFile {
    pub s: usize,
    pub m: i64,
    pub k: u32,
    pub c: FpWord,
    pub a: Vec<FpWord>,
    pub b: Vec<FpWord>,
    pub group: GroupRef,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<TWord>,
}

impl PresentationFile {
    pub fn from_presentation(p: &PhiPresentation) -> Self {
        PresentationFile {
            s: p.s,
            m: p.m(),
            k: p.k,
            c: p.c.clone(),
            a: p.a.clone(),
            b: p.b.clone(),
            group: GroupRef::Inline(p.group.to_file()),
            source: p.source.clone(),
        }
    }

    /// `base` is the directory a relative group path is resolved against.
    pub fn into_presentation(self, base: &Path) -> Result<PhiPresentation, IoError> {
        if self.m != self.a.len() as i64 - 1 {
            return Err(IoError::BlockCount { declared: self.m, blocks: self.a.len() });
        }
        let group = match self.group {
            GroupRef::Inline(g) => Group::from_file(g)?,
            GroupRef::Path(rel) => load_group(&base.join(rel))?,
        };
        let p = PhiPresentation::new(group, self.s, self.k, self.c, self.a, self.b)?;
        Ok(match self.source {
            Some(w) => p.with_source(w),
            None => p,
        })
    }
}

fn parent(path: &Path) -> &Path {
    path.parent().unwrap_or(Path::new("."))
}

pub fn load_presentation(path: &Path) -> Result<PhiPresentation, IoError> {
    read_json::<PresentationFile>(path)?.into_presentation(parent(path))
}

/// Loads a diagram; without an explicit presentation, the file's own
/// `presentation` reference is followed.
pub fn load_diagram(path: &Path, presentation: Option<PhiPresentation>) -> Result<HowieDiagram, IoError> {
    let file: DiagramFile = read_json(path)?;
    let p = match (presentation, &file.presentation) {
        (Some(p), _) => p,
        (None, Some(rel)) => load_presentation(&parent(path).join(rel))?,
        (None, None) => {
            return Err(IoError::Json {
                path: path.into(),
                source: serde::de::Error::custom("no presentation given or referenced"),
            })
        }
    };
    Ok(HowieDiagram::from_file(file, p)?)
}

pub fn load_motion(path: &Path) -> Result<MultipleMotion, IoError> {
    read_json(path)
}
