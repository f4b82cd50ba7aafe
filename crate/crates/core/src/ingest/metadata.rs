use std::collections::BTreeMap;
use std::fmt;
use std::io::{Read, Write};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const METADATA_COLUMNS: [&str; 10] = [
    "id",
    "author",
    "title",
    "date",
    "genre",
    "verse_or_prose",
    "period",
    "century",
    "channel",
    "author_gender",
];

#[derive(Debug, Error)]
pub enum MetadataError {
    #[error("metadata CSV: {0}")]
    Csv(#[from] csv::Error),
    #[error("metadata CSV header is missing column `{0}`")]
    MissingColumn(&'static str),
    #[error("metadata row {row} (id `{id}`): {reason}")]
    InvalidRow { row: usize, id: String, reason: String },
    #[error("metadata CSV lists id `{0}` twice")]
    DuplicateId(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VerseOrProse {
    Verse,
    Prose,
    Mixed,
}

/// Whether a sample comes from a theatre play.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Channel {
    Theatre,
    Other,
}

impl Channel {
    /// Row label used in grouped reports.
    pub fn label(self) -> &'static str {
        match self {
            Channel::Theatre => "Theatre",
            Channel::Other => "Not theatre",
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AuthorGender {
    Male,
    Female,
    #[default]
    Unknown,
}

macro_rules! lower_names {
    ($ty:ident { $($variant:ident => $name:literal),* }) => {
        impl $ty {
            pub fn name(self) -> &'static str {
                match self { $($ty::$variant => $name),* }
            }
        }
        impl FromStr for $ty {
            type Err = String;
            fn from_str(s: &str) -> Result<Self, String> {
                match s {
                    $($name => Ok($ty::$variant),)*
                    other => Err(format!("invalid {} `{other}`", stringify!($ty))),
                }
            }
        }
        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.name())
            }
        }
    };
}

lower_names!(VerseOrProse { Verse => "verse", Prose => "prose", Mixed => "mixed" });
lower_names!(Channel { Theatre => "theatre", Other => "other" });
lower_names!(AuthorGender { Male => "male", Female => "female", Unknown => "unknown" });

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PlayMetadata {
    pub author: String,
    pub title: String,
    pub date: Option<i32>,
    pub genre: String,
    pub structure: String,
    pub verse_or_prose: Option<VerseOrProse>,
    pub period: String,
    pub century: Option<u32>,
    pub channel: Option<Channel>,
    pub author_gender: AuthorGender,
}

impl PlayMetadata {
    /// Sets the date and derives the century from it.
    pub fn with_date(mut self, year: i32) -> Self {
        self.date = Some(year);
        self.century = century_of_year(year);
        self
    }
}

/// `floor((year - 1) / 100) + 1`; years before 1 have no century here.
pub fn century_of_year(year: i32) -> Option<u32> {
    if year < 1 {
        None
    } else {
        Some(((year - 1) / 100 + 1) as u32)
    }
}

/// `17` → `17th`.
pub fn century_label(century: u32) -> String {
    let suffix = match (century % 10, century % 100) {
        (1, n) if n != 11 => "st",
        (2, n) if n != 12 => "nd",
        (3, n) if n != 13 => "rd",
        _ => "th",
    };
    format!("{century}{suffix}")
}

/// Metadata keyed by sample id.
pub type MetadataTable = BTreeMap<String, PlayMetadata>;

#[derive(Debug, Deserialize, Serialize)]
struct Row {
    id: String,
    author: String,
    title: String,
    date: String,
    genre: String,
    verse_or_prose: String,
    period: String,
    century: String,
    channel: String,
    author_gender: String,
}

fn optional<T: FromStr>(value: &str) -> Result<Option<T>, T::Err> {
    let value = value.trim();
    if value.is_empty() {
        Ok(None)
    } else {
        value.parse().map(Some)
    }
}

/// Reads the sidecar CSV. The header row is mandatory; columns may come in any order.
pub fn read_metadata_csv<R: Read>(reader: R) -> Result<MetadataTable, MetadataError> {
    let mut csv = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let headers = csv.headers()?.clone();
    for column in METADATA_COLUMNS {
        if !headers.iter().any(|h| h == column) {
            return Err(MetadataError::MissingColumn(column));
        }
    }
    let mut table = MetadataTable::new();
    for (i, row) in csv.deserialize::<Row>().enumerate() {
        let row = row?;
        let row_no = i + 2;
        let invalid = |reason: String| MetadataError::InvalidRow {
            row: row_no,
            id: row.id.clone(),
            reason,
        };
        if row.id.is_empty() {
            return Err(invalid("empty id".to_string()));
        }
        let date: Option<i32> = optional(&row.date).map_err(|e| invalid(format!("date: {e}")))?;
        let mut century: Option<u32> =
            optional(&row.century).map_err(|e| invalid(format!("century: {e}")))?;
        if let Some(year) = date {
            let derived = century_of_year(year);
            match century {
                Some(c) if Some(c) != derived => {
                    return Err(invalid(format!("century {c} does not match date {year}")))
                }
                _ => century = derived,
            }
        }
        let metadata = PlayMetadata {
            author: row.author.clone(),
            title: row.title.clone(),
            date,
            genre: row.genre.clone(),
            structure: String::new(),
            verse_or_prose: optional(&row.verse_or_prose).map_err(invalid)?,
            period: row.period.clone(),
            century,
            channel: optional(&row.channel).map_err(invalid)?,
            author_gender: optional(&row.author_gender)
                .map_err(invalid)?
                .unwrap_or_default(),
        };
        if table.insert(row.id.clone(), metadata).is_some() {
            return Err(MetadataError::DuplicateId(row.id));
        }
    }
    Ok(table)
}

pub fn write_metadata_csv<W: Write>(table: &MetadataTable, writer: W) -> Result<(), MetadataError> {
    let mut csv = csv::Writer::from_writer(writer);
    for (id, m) in table {
        csv.serialize(Row {
            id: id.clone(),
            author: m.author.clone(),
            title: m.title.clone(),
            date: m.date.map(|d| d.to_string()).unwrap_or_default(),
            genre: m.genre.clone(),
            verse_or_prose: m.verse_or_prose.map(|v| v.to_string()).unwrap_or_default(),
            period: m.period.clone(),
            century: m.century.map(|c| c.to_string()).unwrap_or_default(),
            channel: m.channel.map(|c| c.to_string()).unwrap_or_default(),
            author_gender: m.author_gender.to_string(),
        })?;
    }
    csv.flush().map_err(csv::Error::from)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    const CSV: &str = "id,author,title,date,genre,verse_or_prose,period,century,channel,author_gender\n\
        avare,Molière,L'Avare,1668,comédie,prose,classique,,theatre,male\n\
        lettre,Sévigné,Lettres,,correspondance,prose,,17,other,female\n";

    #[test]
    fn reads_rows_and_derives_century() {
        let table = read_metadata_csv(CSV.as_bytes()).unwrap();
        assert_eq!(table["avare"].century, Some(17));
        assert_eq!(table["avare"].channel, Some(Channel::Theatre));
        assert_eq!(table["lettre"].date, None);
        assert_eq!(table["lettre"].century, Some(17));
        assert_eq!(table["lettre"].author_gender, AuthorGender::Female);

        let mut out = Vec::new();
        write_metadata_csv(&table, &mut out).unwrap();
        assert_eq!(read_metadata_csv(out.as_slice()).unwrap(), table);
    }

    #[test]
    fn century_arithmetic() {
        assert_eq!(century_of_year(1600), Some(16));
        assert_eq!(century_of_year(1601), Some(17));
        assert_eq!(century_of_year(1700), Some(17));
        assert_eq!(century_label(17), "17th");
        assert_eq!(century_label(21), "21st");
        assert_eq!(century_label(11), "11th");
    }

    #[test]
    fn rejects_bad_rows() {
        let missing = "id,author\nx,y\n";
        assert!(matches!(
            read_metadata_csv(missing.as_bytes()),
            Err(MetadataError::MissingColumn("title"))
        ));
        let bad = "id,author,title,date,genre,verse_or_prose,period,century,channel,author_gender\n\
            x,a,t,1668,g,prose,p,16,theatre,male\n";
        assert!(matches!(
            read_metadata_csv(bad.as_bytes()),
            Err(MetadataError::InvalidRow { row: 2, .. })
        ));
        let bad_channel = "id,author,title,date,genre,verse_or_prose,period,century,channel,author_gender\n\
            x,a,t,1668,g,prose,p,,radio,male\n";
        assert!(read_metadata_csv(bad_channel.as_bytes()).is_err());
    }
}
