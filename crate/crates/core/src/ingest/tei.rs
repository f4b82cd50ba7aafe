use roxmltree::{Document, Node, ParsingOptions};

use super::metadata::PlayMetadata;
use super::{IngestError, Play};

const XML_NS: &str = "http://www.w3.org/XML/1998/namespace";

/// Which elements hold character speech, and which are skipped inside it.
///
/// Element names are matched on their local name, so TEI-namespaced and
/// namespace-less documents behave the same.
#[derive(Debug, Clone)]
pub struct SpeechExtractor {
    /// One match is one character turn.
    pub speech_elements: Vec<String>,
    /// Text-bearing children of a turn (verse lines, paragraphs).
    pub content_elements: Vec<String>,
    /// Subtrees dropped wherever they occur inside a turn.
    pub excluded_elements: Vec<String>,
}

impl Default for SpeechExtractor {
    fn default() -> Self {
        let names = |xs: &[&str]| xs.iter().map(|s| s.to_string()).collect();
        SpeechExtractor {
            speech_elements: names(&["sp"]),
            content_elements: names(&["l", "p", "s", "ab", "lg"]),
            excluded_elements: names(&["speaker", "stage", "head", "note", "castList", "fw", "label"]),
        }
    }
}

/// Parses a play with the default TEI-drama element names.
pub fn parse_play(document: &str) -> Result<Play, IngestError> {
    SpeechExtractor::default().parse(document)
}

impl SpeechExtractor {
    fn is(&self, names: &[String], node: Node<'_, '_>) -> bool {
        node.is_element() && names.iter().any(|n| n == node.tag_name().name())
    }

    pub fn parse(&self, document: &str) -> Result<Play, IngestError> {
        let options = ParsingOptions {
            allow_dtd: true,
            ..ParsingOptions::default()
        };
        let doc = Document::parse_with_options(document, options).map_err(|e| {
            let pos = e.pos();
            IngestError::Markup {
                line: pos.row,
                column: pos.col,
                message: e.to_string(),
            }
        })?;

        let mut speeches = Vec::new();
        self.collect_speeches(doc.root(), &mut speeches);
        if speeches.is_empty() {
            return Err(IngestError::EmptyPlay);
        }
        let metadata = header_metadata(&doc);
        let id = play_id(&doc, &metadata);
        Ok(Play {
            id,
            metadata,
            speeches,
        })
    }

    fn collect_speeches(&self, node: Node<'_, '_>, out: &mut Vec<String>) {
        for child in node.children().filter(Node::is_element) {
            if child.tag_name().name() == "teiHeader" {
                continue;
            }
            if self.is(&self.speech_elements, child) {
                let text = self.speech_text(child);
                if !text.is_empty() {
                    out.push(text);
                }
            } else {
                self.collect_speeches(child, out);
            }
        }
    }

    fn speech_text(&self, speech: Node<'_, '_>) -> String {
        let mut blocks = Vec::new();
        self.content_blocks(speech, &mut blocks);
        let raw = if blocks.is_empty() {
            let mut buf = String::new();
            self.text_of(speech, &mut buf);
            buf
        } else {
            blocks
                .into_iter()
                .map(|b| {
                    let mut buf = String::new();
                    self.text_of(b, &mut buf);
                    buf
                })
                .collect::<Vec<_>>()
                .join(" ")
        };
        raw.split_whitespace().collect::<Vec<_>>().join(" ")
    }

    /// Outermost content elements under `node`, outside excluded subtrees.
    fn content_blocks<'a, 'i>(&self, node: Node<'a, 'i>, out: &mut Vec<Node<'a, 'i>>) {
        for child in node.children().filter(Node::is_element) {
            if self.is(&self.excluded_elements, child) {
                continue;
            }
            if self.is(&self.content_elements, child) {
                out.push(child);
            } else {
                self.content_blocks(child, out);
            }
        }
    }

    fn text_of(&self, node: Node<'_, '_>, out: &mut String) {
        for child in node.children() {
            if child.is_text() {
                out.push_str(child.text().unwrap_or_default());
            } else if child.is_element() && !self.is(&self.excluded_elements, child) {
                // Inline elements such as <hi> continue the word; block-level
                // boundaries are joined with a space by the caller.
                if self.is(&self.content_elements, child) {
                    out.push(' ');
                }
                self.text_of(child, out);
            }
        }
    }
}

fn header_metadata(doc: &Document<'_>) -> PlayMetadata {
    let mut metadata = PlayMetadata::default();
    let Some(header) = doc
        .descendants()
        .find(|n| n.is_element() && n.tag_name().name() == "teiHeader")
    else {
        return metadata;
    };
    let text = |n: Node<'_, '_>| {
        n.descendants()
            .filter(Node::is_text)
            .filter_map(|t| t.text())
            .collect::<String>()
            .split_whitespace()
            .collect::<Vec<_>>()
            .join(" ")
    };
    let title_stmt = header
        .descendants()
        .find(|n| n.is_element() && n.tag_name().name() == "titleStmt");
    if let Some(stmt) = title_stmt {
        if let Some(t) = stmt.children().find(|n| n.tag_name().name() == "title") {
            metadata.title = text(t);
        }
        if let Some(a) = stmt.children().find(|n| n.tag_name().name() == "author") {
            metadata.author = text(a);
        }
    }
    let year = header
        .descendants()
        .filter(|n| n.is_element() && n.tag_name().name() == "date")
        .find_map(|d| {
            d.attribute("when")
                .and_then(leading_year)
                .or_else(|| leading_year(&text(d)))
        });
    if let Some(year) = year {
        metadata = metadata.with_date(year);
    }
    if let Some(genre) = header.descendants().find(|n| {
        n.is_element() && n.tag_name().name() == "term" && n.attribute("type") == Some("genre")
    }) {
        metadata.genre = text(genre);
    }
    metadata
}

fn leading_year(s: &str) -> Option<i32> {
    let digits: String = s
        .trim()
        .chars()
        .skip_while(|c| !c.is_ascii_digit())
        .take_while(char::is_ascii_digit)
        .collect();
    if digits.len() == 4 {
        digits.parse().ok()
    } else {
        None
    }
}

fn play_id(doc: &Document<'_>, metadata: &PlayMetadata) -> String {
    let root = doc.root_element();
    if let Some(id) = root.attribute((XML_NS, "id")).filter(|s| !s.is_empty()) {
        return id.to_string();
    }
    if let Some(idno) = doc
        .descendants()
        .find(|n| n.is_element() && n.tag_name().name() == "idno")
        .and_then(|n| n.text())
        .map(str::trim)
        .filter(|s| !s.is_empty())
    {
        return idno.to_string();
    }
    let slug: String = metadata
        .title
        .chars()
        .map(|c| if c.is_alphanumeric() { c.to_ascii_lowercase() } else { '_' })
        .collect();
    let slug = slug.trim_matches('_').to_string();
    if slug.is_empty() {
        "play".to_string()
    } else {
        slug
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keeps_only_speech() {
        let doc = r#"<TEI xmlns="http://www.tei-c.org/ns/1.0"><text><body>
            <stage>Il entre.</stage>
            <sp><speaker>HARPAGON</speaker><p>Bonjour.</p></sp>
        </body></text></TEI>"#;
        let play = parse_play(doc).unwrap();
        assert_eq!(play.speeches, ["Bonjour."]);
    }

    #[test]
    fn stage_direction_only_is_empty() {
        let doc = "<TEI><text><body><stage>Seul.</stage></body></text></TEI>";
        assert!(matches!(parse_play(doc), Err(IngestError::EmptyPlay)));
    }

    #[test]
    fn malformed_markup_reports_position() {
        let doc = "<TEI>\n<sp><l>Bonjour</sp>\n</TEI>";
        match parse_play(doc) {
            Err(IngestError::Markup { line, column, .. }) => {
                assert_eq!(line, 2);
                assert!(column > 1);
            }
            other => panic!("expected markup error, got {other:?}"),
        }
    }

    #[test]
    fn nested_stage_and_inline_markup() {
        let doc = r#"<TEI><text><body><div type="act"><head>ACTE I</head>
            <sp who="a"><speaker>A</speaker>
              <l>Je vous <hi>aime</hi>,</l>
              <stage>(à part)</stage>
              <l>Mad<hi>ame</hi>. <stage>Il sort.</stage></l>
            </sp></div></body></text></TEI>"#;
        let play = parse_play(doc).unwrap();
        assert_eq!(play.speeches, ["Je vous aime, Madame."]);
    }

    #[test]
    fn header_fields_and_id() {
        let doc = r#"<TEI xml:id="avare"><teiHeader><fileDesc><titleStmt>
            <title>L'Avare</title><author>Molière</author></titleStmt>
            <sourceDesc><bibl><date when="1668-09-09"/></bibl></sourceDesc></fileDesc>
            <profileDesc><textClass><keywords><term type="genre">comédie</term></keywords></textClass></profileDesc>
            </teiHeader><text><body><sp><p>Oui.</p></sp></body></text></TEI>"#;
        let play = parse_play(doc).unwrap();
        assert_eq!(play.id, "avare");
        assert_eq!(play.metadata.title, "L'Avare");
        assert_eq!(play.metadata.author, "Molière");
        assert_eq!(play.metadata.date, Some(1668));
        assert_eq!(play.metadata.century, Some(17));
        assert_eq!(play.metadata.genre, "comédie");
    }

    #[test]
    fn configurable_element_names() {
        let doc = "<play><turn><who>A</who><line>Oui.</line></turn><turn><line>Non.</line></turn></play>";
        let extractor = SpeechExtractor {
            speech_elements: vec!["turn".into()],
            content_elements: vec!["line".into()],
            excluded_elements: vec!["who".into()],
        };
        assert_eq!(extractor.parse(doc).unwrap().speeches, ["Oui.", "Non."]);
    }
}
