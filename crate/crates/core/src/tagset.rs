//! CATTEX part-of-speech and morphology inventories, and the tables mapping
//! CATTEX tags to Morphalou categories and Morphalou flexion values back to
//! CATTEX morph codes.
//!
//! The mapping tables ship as TSV files under `data/` and are compiled in as
//! defaults; [`MappingTables::from_tsv`] loads corrected copies at runtime.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::LazyLock;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

const CATTEX_MORPHALOU_TSV: &str = include_str!("../data/cattex_morphalou.tsv");
const MORPHALOU_CATTEX_TSV: &str = include_str!("../data/morphalou_cattex.tsv");

/// Serialized form of a morphology that could not be retrieved from the lexicon.
pub const UNKNOWN_MORPH: &str = "unknown";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TagsetError {
    #[error("unknown CATTEX POS tag `{0}`")]
    UnknownPos(String),
    #[error("unknown Morphalou category `{0}`")]
    UnknownCategory(String),
    #[error("POS tag {0} has no Morphalou category; it is handled by a dedicated path")]
    NoMapping(PosTag),
    #[error("invalid morph string `{input}`: {reason}")]
    InvalidMorph { input: String, reason: String },
    #[error("mapping table line {line}: {reason}")]
    MalformedTable { line: usize, reason: String },
}

macro_rules! pos_tags {
    ($($variant:ident => $code:literal),* $(,)?) => {
        /// A tag of the CATTEX09 inventory.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum PosTag {
            $($variant),*
        }

        impl PosTag {
            /// Every tag, in inventory order.
            pub const ALL: &'static [PosTag] = &[$(PosTag::$variant),*];

            pub fn code(self) -> &'static str {
                match self {
                    $(PosTag::$variant => $code),*
                }
            }
        }

        impl FromStr for PosTag {
            type Err = TagsetError;

            fn from_str(s: &str) -> Result<Self, Self::Err> {
                match s {
                    $($code => Ok(PosTag::$variant),)*
                    other => Err(TagsetError::UnknownPos(other.to_string())),
                }
            }
        }
    };
}

pos_tags! {
    Inj => "INJ",
    AdvGen => "ADVgen",
    AdvNeg => "ADVneg",
    AdvInt => "ADVint",
    AdvSub => "ADVsub",
    ConCoo => "CONcoo",
    ConSub => "CONsub",
    VerCjg => "VERcjg",
    VerInf => "VERinf",
    VerPpe => "VERppe",
    VerPpa => "VERppa",
    Pre => "PRE",
    DetDef => "DETdef",
    DetNdf => "DETndf",
    DetDem => "DETdem",
    DetPos => "DETpos",
    DetInd => "DETind",
    DetRel => "DETrel",
    DetInt => "DETint",
    DetCom => "DETcom",
    ProPer => "PROper",
    ProImp => "PROimp",
    ProAdv => "PROadv",
    ProPos => "PROpos",
    ProDem => "PROdem",
    ProInd => "PROind",
    ProOrd => "PROord",
    ProRel => "PROrel",
    ProInt => "PROint",
    ProCom => "PROcom",
    AdjQua => "ADJqua",
    AdjInd => "ADJind",
    AdjOrd => "ADJord",
    AdjPos => "ADJpos",
    NomCom => "NOMcom",
    AdjCar => "ADJcar",
    DetCar => "DETcar",
    ProCar => "PROcar",
    NomPro => "NOMpro",
    PonFbl => "PONfbl",
    PonFrt => "PONfrt",
    PonPga => "PONpga",
    PonPdr => "PONpdr",
    PonPxx => "PONpxx",
    PreDetDef => "PRE.DETdef",
    PreProPer => "PRE.PROper",
    AdvNegProPer => "ADVneg.PROper",
    ConSubProPer => "CONsub.PROper",
    Etr => "ETR",
    Abr => "ABR",
    Out => "OUT",
}

impl PosTag {
    pub fn is_punctuation(self) -> bool {
        self.code().starts_with("PON")
    }

    /// Position of the tag in [`PosTag::ALL`].
    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for PosTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.code())
    }
}

impl Serialize for PosTag {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.code())
    }
}

impl<'de> Deserialize<'de> for PosTag {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Morphalou grammatical category.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MorphalouCategory {
    Interjection,
    Adverbe,
    Conjonction,
    Verbe,
    Preposition,
    Determinant,
    Pronom,
    NomCommun,
    AdjectifQualificatif,
    Nombre,
}

impl MorphalouCategory {
    pub const ALL: &'static [MorphalouCategory] = &[
        MorphalouCategory::Interjection,
        MorphalouCategory::Adverbe,
        MorphalouCategory::Conjonction,
        MorphalouCategory::Verbe,
        MorphalouCategory::Preposition,
        MorphalouCategory::Determinant,
        MorphalouCategory::Pronom,
        MorphalouCategory::NomCommun,
        MorphalouCategory::AdjectifQualificatif,
        MorphalouCategory::Nombre,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MorphalouCategory::Interjection => "Interjection",
            MorphalouCategory::Adverbe => "Adverbe",
            MorphalouCategory::Conjonction => "Conjonction",
            MorphalouCategory::Verbe => "Verbe",
            MorphalouCategory::Preposition => "Préposition",
            MorphalouCategory::Determinant => "Déterminant",
            MorphalouCategory::Pronom => "Pronom",
            MorphalouCategory::NomCommun => "Nom commun",
            MorphalouCategory::AdjectifQualificatif => "Adjectif qualificatif",
            MorphalouCategory::Nombre => "Nombre",
        }
    }
}

impl fmt::Display for MorphalouCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MorphalouCategory {
    type Err = TagsetError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        MorphalouCategory::ALL
            .iter()
            .copied()
            .find(|c| c.name() == s)
            .ok_or_else(|| TagsetError::UnknownCategory(s.to_string()))
    }
}

impl Serialize for MorphalouCategory {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for MorphalouCategory {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! code_enum {
    ($(#[$meta:meta])* $name:ident { $($variant:ident => $code:literal),* $(,)? }) => {
        $(#[$meta])*
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum $name {
            $($variant),*
        }

        impl $name {
            pub const ALL: &'static [$name] = &[$($name::$variant),*];

            pub fn code(self) -> &'static str {
                match self {
                    $($name::$variant => $code),*
                }
            }

            pub fn from_code(code: &str) -> Option<Self> {
                match code {
                    $($code => Some($name::$variant),)*
                    _ => None,
                }
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.code())
            }
        }
    };
}

code_enum!(
    /// Verbal mode (`MODE`).
    Mode { Indicative => "ind", Imperative => "imp", Conditional => "con", Subjunctive => "sub" }
);
code_enum!(
    /// Tense (`TEMPS`).
    Tense { Present => "pst", Imperfect => "ipf", Future => "fut", SimplePast => "psp" }
);
code_enum!(
    /// Person (`PERS.`).
    Person { First => "1", Second => "2", Third => "3" }
);
code_enum!(
    /// Number (`NOMB.`).
    Number { Singular => "s", Plural => "p" }
);
code_enum!(
    /// Gender (`GENRE`).
    Gender { Masculine => "m", Feminine => "f", Neuter => "n" }
);

/// Inflectional features of a token. `None` fields are unspecified.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MorphFeatures {
    pub mode: Option<Mode>,
    pub tense: Option<Tense>,
    pub person: Option<Person>,
    pub number: Option<Number>,
    pub gender: Option<Gender>,
    pub case: Option<String>,
}

impl MorphFeatures {
    pub fn is_empty(&self) -> bool {
        *self == MorphFeatures::default()
    }

    /// Keeps the fields on which both sides agree.
    pub fn intersect(&self, other: &MorphFeatures) -> MorphFeatures {
        fn keep<T: PartialEq + Clone>(a: &Option<T>, b: &Option<T>) -> Option<T> {
            if a == b {
                a.clone()
            } else {
                None
            }
        }
        MorphFeatures {
            mode: keep(&self.mode, &other.mode),
            tense: keep(&self.tense, &other.tense),
            person: keep(&self.person, &other.person),
            number: keep(&self.number, &other.number),
            gender: keep(&self.gender, &other.gender),
            case: keep(&self.case, &other.case),
        }
    }
}

/// A morphological analysis in CATTEX codes.
///
/// `Invariable` and `Error` are exclusive of any inflection feature.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MorphBundle {
    Features(MorphFeatures),
    Invariable,
    Error,
}

impl Default for MorphBundle {
    fn default() -> Self {
        MorphBundle::Features(MorphFeatures::default())
    }
}

impl MorphBundle {
    pub fn empty() -> Self {
        MorphBundle::default()
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, MorphBundle::Features(f) if f.is_empty())
    }

    /// The features of the bundle; markers have none.
    pub fn features(&self) -> MorphFeatures {
        match self {
            MorphBundle::Features(f) => f.clone(),
            MorphBundle::Invariable | MorphBundle::Error => MorphFeatures::default(),
        }
    }

    /// Canonical serialization: `MODE=…|TEMPS=…|PERS.=…|NOMB.=…|GENRE=…|CAS=…`
    /// with unspecified fields omitted, `_` when nothing is specified.
    pub fn serialize(&self) -> String {
        match self {
            MorphBundle::Invariable => "MORPH=inv".to_string(),
            MorphBundle::Error => "MORPH=err".to_string(),
            MorphBundle::Features(f) => {
                let mut parts = Vec::new();
                if let Some(v) = f.mode {
                    parts.push(format!("MODE={v}"));
                }
                if let Some(v) = f.tense {
                    parts.push(format!("TEMPS={v}"));
                }
                if let Some(v) = f.person {
                    parts.push(format!("PERS.={v}"));
                }
                if let Some(v) = f.number {
                    parts.push(format!("NOMB.={v}"));
                }
                if let Some(v) = f.gender {
                    parts.push(format!("GENRE={v}"));
                }
                if let Some(v) = &f.case {
                    parts.push(format!("CAS={v}"));
                }
                if parts.is_empty() {
                    "_".to_string()
                } else {
                    parts.join("|")
                }
            }
        }
    }

    pub fn parse(input: &str) -> Result<Self, TagsetError> {
        let invalid = |reason: &str| TagsetError::InvalidMorph {
            input: input.to_string(),
            reason: reason.to_string(),
        };
        match input {
            "_" => return Ok(MorphBundle::empty()),
            "MORPH=inv" => return Ok(MorphBundle::Invariable),
            "MORPH=err" => return Ok(MorphBundle::Error),
            "" => return Err(invalid("empty")),
            _ => {}
        }
        let mut features = MorphFeatures::default();
        for part in input.split('|') {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| invalid("field without `=`"))?;
            let duplicate = || invalid(&format!("duplicate key {key}"));
            let bad_code = || invalid(&format!("unknown code `{value}` for {key}"));
            match key {
                "MODE" => {
                    if features.mode.is_some() {
                        return Err(duplicate());
                    }
                    features.mode = Some(Mode::from_code(value).ok_or_else(bad_code)?);
                }
                "TEMPS" => {
                    if features.tense.is_some() {
                        return Err(duplicate());
                    }
                    features.tense = Some(Tense::from_code(value).ok_or_else(bad_code)?);
                }
                "PERS." => {
                    if features.person.is_some() {
                        return Err(duplicate());
                    }
                    features.person = Some(Person::from_code(value).ok_or_else(bad_code)?);
                }
                "NOMB." => {
                    if features.number.is_some() {
                        return Err(duplicate());
                    }
                    features.number = Some(Number::from_code(value).ok_or_else(bad_code)?);
                }
                "GENRE" => {
                    if features.gender.is_some() {
                        return Err(duplicate());
                    }
                    features.gender = Some(Gender::from_code(value).ok_or_else(bad_code)?);
                }
                "CAS" => {
                    if features.case.is_some() {
                        return Err(duplicate());
                    }
                    if !is_valid_case(value) {
                        return Err(bad_code());
                    }
                    features.case = Some(value.to_string());
                }
                _ => return Err(invalid(&format!("unknown key `{key}`"))),
            }
        }
        Ok(MorphBundle::Features(features))
    }

    /// Field-wise merge of several analyses: agreeing fields are kept,
    /// disagreeing ones dropped. Identical bundles merge to themselves.
    pub fn merge<'a>(bundles: impl IntoIterator<Item = &'a MorphBundle>) -> MorphBundle {
        let bundles: Vec<&MorphBundle> = bundles.into_iter().collect();
        let Some(first) = bundles.first() else {
            return MorphBundle::empty();
        };
        if bundles.iter().all(|b| b == first) {
            return (*first).clone();
        }
        let merged = bundles
            .iter()
            .map(|b| b.features())
            .reduce(|acc, f| acc.intersect(&f))
            .unwrap_or_default();
        MorphBundle::Features(merged)
    }
}

/// Case values are open: short alphanumeric codes.
pub fn is_valid_case(value: &str) -> bool {
    !value.is_empty() && value.chars().count() <= 16 && value.chars().all(|c| c.is_alphanumeric())
}

impl fmt::Display for MorphBundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serialize())
    }
}

/// The morph column of an annotated token: an analysis, or the marker left
/// when no analysis could be found.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Morph {
    Bundle(MorphBundle),
    Unknown,
}

impl Default for Morph {
    fn default() -> Self {
        Morph::Bundle(MorphBundle::empty())
    }
}

impl Morph {
    pub fn serialize(&self) -> String {
        match self {
            Morph::Bundle(b) => b.serialize(),
            Morph::Unknown => UNKNOWN_MORPH.to_string(),
        }
    }

    pub fn parse(input: &str) -> Result<Self, TagsetError> {
        if input == UNKNOWN_MORPH {
            Ok(Morph::Unknown)
        } else {
            MorphBundle::parse(input).map(Morph::Bundle)
        }
    }

    pub fn bundle(&self) -> Option<&MorphBundle> {
        match self {
            Morph::Bundle(b) => Some(b),
            Morph::Unknown => None,
        }
    }
}

impl fmt::Display for Morph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serialize())
    }
}

/// Result of converting one Morphalou flexion value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FlexionCode {
    Mode(Mode),
    Tense(Tense),
    Person(Person),
    Number(Number),
    Gender(Gender),
    /// The value has no CATTEX counterpart (`-`).
    Empty,
    /// `x`
    Invariable,
    /// `ERROR`
    Error,
}

impl FlexionCode {
    /// The code as written in CATTEX tables.
    pub fn code(self) -> &'static str {
        match self {
            FlexionCode::Mode(v) => v.code(),
            FlexionCode::Tense(v) => v.code(),
            FlexionCode::Person(v) => v.code(),
            FlexionCode::Number(v) => v.code(),
            FlexionCode::Gender(v) => v.code(),
            FlexionCode::Empty => "-",
            FlexionCode::Invariable => "x",
            FlexionCode::Error => "ERROR",
        }
    }

    fn from_code(code: &str) -> Option<Self> {
        Mode::from_code(code)
            .map(FlexionCode::Mode)
            .or_else(|| Tense::from_code(code).map(FlexionCode::Tense))
            .or_else(|| Person::from_code(code).map(FlexionCode::Person))
            .or_else(|| Number::from_code(code).map(FlexionCode::Number))
            .or_else(|| Gender::from_code(code).map(FlexionCode::Gender))
            .or(match code {
                "-" => Some(FlexionCode::Empty),
                "x" => Some(FlexionCode::Invariable),
                "ERROR" => Some(FlexionCode::Error),
                _ => None,
            })
    }
}

impl fmt::Display for FlexionCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

/// The two mapping tables, immutable once loaded.
#[derive(Debug, Clone)]
pub struct MappingTables {
    categories: BTreeMap<PosTag, MorphalouCategory>,
    flexions: HashMap<String, FlexionCode>,
}

static BUILTIN: LazyLock<MappingTables> = LazyLock::new(|| {
    MappingTables::from_tsv(CATTEX_MORPHALOU_TSV, MORPHALOU_CATTEX_TSV)
        .expect("built-in mapping tables are valid")
});

fn table_rows(text: &str) -> impl Iterator<Item = (usize, Result<(&str, &str), TagsetError>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line_no = i + 1;
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() || line.starts_with('#') {
            return None;
        }
        let mut cols = line.split('\t');
        let row = match (cols.next(), cols.next(), cols.next()) {
            (Some(a), Some(b), None) => Ok((a, b)),
            _ => Err(TagsetError::MalformedTable {
                line: line_no,
                reason: "expected two tab-separated columns".to_string(),
            }),
        };
        Some((line_no, row))
    })
}

impl MappingTables {
    /// The tables compiled into the crate.
    pub fn builtin() -> &'static MappingTables {
        &BUILTIN
    }

    /// Parses `cattex<TAB>morphalou` and `morphalou<TAB>cattex` tables.
    pub fn from_tsv(pos_table: &str, flexion_table: &str) -> Result<Self, TagsetError> {
        let mut categories = BTreeMap::new();
        for (line, row) in table_rows(pos_table) {
            let (tag, category) = row?;
            let malformed = |e: TagsetError| TagsetError::MalformedTable {
                line,
                reason: e.to_string(),
            };
            let tag: PosTag = tag.parse().map_err(malformed)?;
            let category: MorphalouCategory = category.parse().map_err(malformed)?;
            if categories.insert(tag, category).is_some() {
                return Err(TagsetError::MalformedTable {
                    line,
                    reason: format!("duplicate tag {tag}"),
                });
            }
        }
        let mut flexions = HashMap::new();
        for (line, row) in table_rows(flexion_table) {
            let (value, code) = row?;
            let code = FlexionCode::from_code(code).ok_or_else(|| TagsetError::MalformedTable {
                line,
                reason: format!("unknown CATTEX code `{code}`"),
            })?;
            if flexions.insert(value.to_string(), code).is_some() {
                return Err(TagsetError::MalformedTable {
                    line,
                    reason: format!("duplicate value `{value}`"),
                });
            }
        }
        Ok(MappingTables {
            categories,
            flexions,
        })
    }

    pub fn cattex_to_morphalou(&self, pos: PosTag) -> Result<MorphalouCategory, TagsetError> {
        self.categories
            .get(&pos)
            .copied()
            .ok_or(TagsetError::NoMapping(pos))
    }

    /// Unrecognized values map to [`FlexionCode::Error`].
    pub fn flexion_to_cattex(&self, value: &str) -> FlexionCode {
        self.flexions
            .get(value)
            .copied()
            .unwrap_or(FlexionCode::Error)
    }

    pub fn is_known_flexion(&self, value: &str) -> bool {
        self.flexions.contains_key(value)
    }

    pub fn mapped_tags(&self) -> impl Iterator<Item = (PosTag, MorphalouCategory)> + '_ {
        self.categories.iter().map(|(t, c)| (*t, *c))
    }

    /// Builds a bundle from the flexion values of one lexicon analysis.
    ///
    /// Any value mapping to `ERROR` makes the whole bundle an error. A value
    /// mapping to `x` yields `Invariable` only when nothing else is specified.
    /// Two conflicting values for one field leave it unspecified.
    pub fn bundle_from_flexions<'a>(
        &self,
        values: impl IntoIterator<Item = &'a str>,
    ) -> MorphBundle {
        fn set<T: PartialEq>(slot: &mut Option<T>, conflict: &mut bool, v: T) {
            match slot {
                Some(existing) if *existing != v => *conflict = true,
                _ => *slot = Some(v),
            }
        }
        let mut f = MorphFeatures::default();
        let mut conflicts = [false; 5];
        let mut invariable = false;
        for value in values {
            match self.flexion_to_cattex(value) {
                FlexionCode::Error => return MorphBundle::Error,
                FlexionCode::Invariable => invariable = true,
                FlexionCode::Empty => {}
                FlexionCode::Mode(v) => set(&mut f.mode, &mut conflicts[0], v),
                FlexionCode::Tense(v) => set(&mut f.tense, &mut conflicts[1], v),
                FlexionCode::Person(v) => set(&mut f.person, &mut conflicts[2], v),
                FlexionCode::Number(v) => set(&mut f.number, &mut conflicts[3], v),
                FlexionCode::Gender(v) => set(&mut f.gender, &mut conflicts[4], v),
            }
        }
        if conflicts[0] {
            f.mode = None;
        }
        if conflicts[1] {
            f.tense = None;
        }
        if conflicts[2] {
            f.person = None;
        }
        if conflicts[3] {
            f.number = None;
        }
        if conflicts[4] {
            f.gender = None;
        }
        if invariable && f.is_empty() {
            MorphBundle::Invariable
        } else {
            MorphBundle::Features(f)
        }
    }
}

/// [`MappingTables::cattex_to_morphalou`] on the built-in tables.
pub fn cattex_to_morphalou(pos: PosTag) -> Result<MorphalouCategory, TagsetError> {
    MappingTables::builtin().cattex_to_morphalou(pos)
}

/// [`MappingTables::flexion_to_cattex`] on the built-in tables.
pub fn flexion_to_cattex(value: &str) -> FlexionCode {
    MappingTables::builtin().flexion_to_cattex(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn pos_codes_round_trip() {
        for tag in PosTag::ALL {
            assert_eq!(tag.code().parse::<PosTag>().unwrap(), *tag);
            assert_eq!(PosTag::ALL[tag.index()], *tag);
        }
        assert!(matches!("NOMxyz".parse::<PosTag>(), Err(TagsetError::UnknownPos(_))));
    }

    #[test]
    fn unmapped_tags_point_to_special_paths() {
        for tag in [PosTag::NomPro, PosTag::PonFbl, PosTag::PonFrt, PosTag::PreDetDef] {
            assert_eq!(cattex_to_morphalou(tag), Err(TagsetError::NoMapping(tag)));
        }
    }

    #[test]
    fn serializes_in_canonical_order() {
        let b = MorphBundle::Features(MorphFeatures {
            mode: Some(Mode::Indicative),
            tense: Some(Tense::Present),
            person: Some(Person::Third),
            number: Some(Number::Singular),
            ..Default::default()
        });
        assert_eq!(b.serialize(), "MODE=ind|TEMPS=pst|PERS.=3|NOMB.=s");
        assert_eq!(MorphBundle::empty().serialize(), "_");
        assert_eq!(MorphBundle::Invariable.serialize(), "MORPH=inv");
        assert_eq!(MorphBundle::Error.serialize(), "MORPH=err");
    }

    #[test]
    fn parse_rejects_unknown_keys_and_codes() {
        assert!(MorphBundle::parse("MODE=xyz").is_err());
        assert!(MorphBundle::parse("FOO=1").is_err());
        assert!(MorphBundle::parse("MODE=ind|MODE=sub").is_err());
        assert!(MorphBundle::parse("").is_err());
        assert!(MorphBundle::parse("NOMB.").is_err());
        assert_eq!(Morph::parse("unknown").unwrap(), Morph::Unknown);
    }

    #[test]
    fn flexions_build_bundles() {
        let t = MappingTables::builtin();
        let b = t.bundle_from_flexions(["indicative", "present", "thirdPerson", "singular"]);
        assert_eq!(b.serialize(), "MODE=ind|TEMPS=pst|PERS.=3|NOMB.=s");
        assert_eq!(t.bundle_from_flexions(["invariable"]), MorphBundle::Invariable);
        assert_eq!(
            t.bundle_from_flexions(["feminine", "invariable"]).serialize(),
            "GENRE=f"
        );
        assert_eq!(t.bundle_from_flexions(["singular", "1036442"]), MorphBundle::Error);
        assert_eq!(t.bundle_from_flexions(["infinitive"]), MorphBundle::empty());
        assert_eq!(
            t.bundle_from_flexions(["singular", "plural", "masculine"]).serialize(),
            "GENRE=m"
        );
    }

    #[test]
    fn merge_keeps_agreeing_fields() {
        let a = MorphBundle::parse("NOMB.=s|GENRE=m").unwrap();
        let b = MorphBundle::parse("NOMB.=s|GENRE=f").unwrap();
        assert_eq!(MorphBundle::merge([&a, &b]).serialize(), "NOMB.=s");
        assert_eq!(MorphBundle::merge([&a, &a]), a);
        assert_eq!(
            MorphBundle::merge([&MorphBundle::Invariable, &MorphBundle::Invariable]),
            MorphBundle::Invariable
        );
        assert_eq!(MorphBundle::merge([&MorphBundle::Invariable, &a]), MorphBundle::empty());
    }

    #[test]
    fn malformed_tables_report_lines() {
        let err = MappingTables::from_tsv("INJ\tInterjection\nADVgen\tAdverb\n", "").unwrap_err();
        assert!(matches!(err, TagsetError::MalformedTable { line: 2, .. }));
        let err = MappingTables::from_tsv("", "# c\npresent\tpresent\n").unwrap_err();
        assert!(matches!(err, TagsetError::MalformedTable { line: 2, .. }));
    }

    fn arb_bundle() -> impl Strategy<Value = MorphBundle> {
        let features = (
            proptest::option::of(proptest::sample::select(Mode::ALL)),
            proptest::option::of(proptest::sample::select(Tense::ALL)),
            proptest::option::of(proptest::sample::select(Person::ALL)),
            proptest::option::of(proptest::sample::select(Number::ALL)),
            proptest::option::of(proptest::sample::select(Gender::ALL)),
            proptest::option::of("[a-z]{1,4}"),
        )
            .prop_map(|(mode, tense, person, number, gender, case)| {
                MorphBundle::Features(MorphFeatures {
                    mode,
                    tense,
                    person,
                    number,
                    gender,
                    case,
                })
            });
        prop_oneof![
            8 => features,
            1 => Just(MorphBundle::Invariable),
            1 => Just(MorphBundle::Error),
        ]
    }

    proptest! {
        #[test]
        fn serialize_parse_round_trip(bundle in arb_bundle()) {
            let text = bundle.serialize();
            prop_assert_eq!(MorphBundle::parse(&text).unwrap(), bundle);
        }
    }
}
