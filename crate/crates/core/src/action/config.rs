//! Canonical configuration encoding and its human-typable rendering.
//!
//! A configuration is a fixed-width byte string per game: piece id per
//! position, then orientation digits, then scalar registers. Byte order
//! defines equality, hashing and the lexicographic order used to pick orbit
//! representatives.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::ActionError;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Config(Vec<u8>);

impl Config {
    pub fn new(bytes: Vec<u8>) -> Self {
        Config(bytes)
    }

    pub fn bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn into_bytes(self) -> Vec<u8> {
        self.0
    }

    pub fn width(&self) -> usize {
        self.0.len()
    }
}

impl From<Vec<u8>> for Config {
    fn from(v: Vec<u8>) -> Self {
        Config(v)
    }
}

impl From<&[u8]> for Config {
    fn from(v: &[u8]) -> Self {
        Config(v.to_vec())
    }
}

impl fmt::Debug for Config {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Config({})", hex::encode(&self.0))
    }
}

impl Serialize for Config {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&hex::encode(&self.0))
    }
}

impl<'de> Deserialize<'de> for Config {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        hex::decode(&s).map(Config).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FieldKind {
    U8,
    /// Big-endian, two bytes.
    U16,
    /// Big-endian u16 holding `value + 32768`, so byte order matches numeric order.
    I16,
    /// Big-endian, four bytes.
    U32,
    /// One byte rendered as N, E, S or W.
    Heading,
}

impl FieldKind {
    fn width(self) -> usize {
        match self {
            FieldKind::U8 | FieldKind::Heading => 1,
            FieldKind::U16 | FieldKind::I16 => 2,
            FieldKind::U32 => 4,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Field {
    pub name: String,
    pub kind: FieldKind,
}

impl Field {
    pub fn new(name: &str, kind: FieldKind) -> Self {
        Field {
            name: name.to_string(),
            kind,
        }
    }
}

pub const HEADINGS: [char; 4] = ['N', 'E', 'S', 'W'];

/// Renders configurations as compact strings and parses them back.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Codec {
    /// One character per position, then one orientation digit per position
    /// when `orientations > 1`.
    Pieces {
        alphabet: Vec<char>,
        slots: usize,
        orientations: u8,
    },
    /// Comma-separated integer fields.
    Fields { fields: Vec<Field> },
    /// A single byte naming one of a list of labels.
    Labels { labels: Vec<String> },
    /// Two configurations side by side, rendered `left|right`.
    Pair {
        left: Box<Codec>,
        left_width: usize,
        right: Box<Codec>,
    },
}

impl Codec {
    pub fn pieces(alphabet: &str, slots: usize, orientations: u8) -> Self {
        Codec::Pieces {
            alphabet: alphabet.chars().collect(),
            slots,
            orientations,
        }
    }

    pub fn fields(fields: Vec<Field>) -> Self {
        Codec::Fields { fields }
    }

    pub fn width(&self) -> usize {
        match self {
            Codec::Pieces {
                slots, orientations, ..
            } => {
                if *orientations > 1 {
                    2 * slots
                } else {
                    *slots
                }
            }
            Codec::Fields { fields } => fields.iter().map(|f| f.kind.width()).sum(),
            Codec::Labels { .. } => 1,
            Codec::Pair { left, right, .. } => left.width() + right.width(),
        }
    }

    pub fn render(&self, c: &Config) -> String {
        let b = c.bytes();
        match self {
            Codec::Pieces {
                alphabet,
                slots,
                orientations,
            } => {
                let mut s: String = b[..*slots]
                    .iter()
                    .map(|&p| alphabet.get(p as usize).copied().unwrap_or('?'))
                    .collect();
                if *orientations > 1 {
                    for &o in &b[*slots..2 * slots] {
                        s.push(char::from_digit(o as u32, 36).unwrap_or('?'));
                    }
                }
                s
            }
            Codec::Fields { fields } => {
                let mut parts = Vec::with_capacity(fields.len());
                let mut at = 0;
                for f in fields {
                    let w = f.kind.width();
                    let chunk = &b[at..at + w];
                    at += w;
                    parts.push(match f.kind {
                        FieldKind::U8 => chunk[0].to_string(),
                        FieldKind::Heading => HEADINGS.get(chunk[0] as usize).copied().unwrap_or('?').to_string(),
                        FieldKind::U16 => u16::from_be_bytes([chunk[0], chunk[1]]).to_string(),
                        FieldKind::I16 => (u16::from_be_bytes([chunk[0], chunk[1]]) as i32 - 32768).to_string(),
                        FieldKind::U32 => u32::from_be_bytes([chunk[0], chunk[1], chunk[2], chunk[3]]).to_string(),
                    });
                }
                parts.join(",")
            }
            Codec::Labels { labels } => labels.get(b[0] as usize).cloned().unwrap_or_else(|| "?".into()),
            Codec::Pair { left, left_width, right } => format!(
                "{}|{}",
                left.render(&Config::from(&b[..*left_width])),
                right.render(&Config::from(&b[*left_width..]))
            ),
        }
    }

    pub fn parse(&self, s: &str) -> Result<Config, ActionError> {
        let s = s.trim();
        let bad = |why: String| ActionError::Codec(format!("`{s}`: {why}"));
        match self {
            Codec::Pieces {
                alphabet,
                slots,
                orientations,
            } => {
                let chars: Vec<char> = s.chars().collect();
                let expected = if *orientations > 1 { 2 * slots } else { *slots };
                if chars.len() != expected {
                    return Err(bad(format!("expected {expected} characters")));
                }
                let mut out = Vec::with_capacity(expected);
                for ch in &chars[..*slots] {
                    let p = alphabet
                        .iter()
                        .position(|a| a == ch)
                        .ok_or_else(|| bad(format!("unknown piece `{ch}`")))?;
                    out.push(p as u8);
                }
                for ch in &chars[*slots..] {
                    let o = ch
                        .to_digit(36)
                        .filter(|&o| o < *orientations as u32)
                        .ok_or_else(|| bad(format!("bad orientation `{ch}`")))?;
                    out.push(o as u8);
                }
                Ok(Config(out))
            }
            Codec::Fields { fields } => {
                let parts: Vec<&str> = s.split(',').map(str::trim).collect();
                if parts.len() != fields.len() {
                    return Err(bad(format!("expected {} comma-separated fields", fields.len())));
                }
                let mut out = Vec::new();
                for (f, p) in fields.iter().zip(parts) {
                    let num_err = |_| bad(format!("bad value for {}", f.name));
                    match f.kind {
                        FieldKind::U8 => out.push(p.parse::<u8>().map_err(num_err)?),
                        FieldKind::Heading => {
                            let h = HEADINGS
                                .iter()
                                .position(|h| p.eq_ignore_ascii_case(&h.to_string()))
                                .ok_or_else(|| bad(format!("bad heading `{p}`")))?;
                            out.push(h as u8);
                        }
                        FieldKind::U16 => out.extend(p.parse::<u16>().map_err(num_err)?.to_be_bytes()),
                        FieldKind::I16 => {
                            let v = p.parse::<i16>().map_err(num_err)?;
                            out.extend(((v as i32 + 32768) as u16).to_be_bytes());
                        }
                        FieldKind::U32 => out.extend(p.parse::<u32>().map_err(num_err)?.to_be_bytes()),
                    }
                }
                Ok(Config(out))
            }
            Codec::Labels { labels } => labels
                .iter()
                .position(|l| l == s)
                .map(|i| Config(vec![i as u8]))
                .ok_or_else(|| bad("unknown label".into())),
            Codec::Pair { left, right, .. } => {
                let (a, b) = s.split_once('|').ok_or_else(|| bad("expected `left|right`".into()))?;
                let mut out = left.parse(a)?.into_bytes();
                out.extend(right.parse(b)?.into_bytes());
                Ok(Config(out))
            }
        }
    }
}
