use crate::corpus::AnnotatedToken;
use crate::lexicon::Lexicon;
use crate::tagset::{MappingTables, Morph, MorphBundle, MorphFeatures, Number, Gender, PosTag};

/// How a token's morphology was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProjectionPath {
    Punctuation,
    /// `listed` tells whether the lemma (or the form) is in the name list.
    ProperName { listed: bool },
    Contraction,
    /// The form has a single analysis.
    Unique,
    /// One analysis survived the POS filter.
    Filtered,
    /// Several analyses survived and were merged field-wise.
    Merged,
    NotInLexicon,
    NoCompatibleAnalysis,
    MissingPos,
}

impl ProjectionPath {
    pub fn is_unknown(self) -> bool {
        matches!(
            self,
            ProjectionPath::NotInLexicon
                | ProjectionPath::NoCompatibleAnalysis
                | ProjectionPath::MissingPos
        )
    }
}

/// Number and gender of the article inside the contracted preposition forms.
fn contraction_bundle(form: &str) -> Option<MorphBundle> {
    let (number, gender) = match form.to_lowercase().as_str() {
        "au" | "du" => (Number::Singular, Some(Gender::Masculine)),
        "aux" | "des" | "ès" => (Number::Plural, None),
        _ => return None,
    };
    Some(MorphBundle::Features(MorphFeatures {
        number: Some(number),
        gender,
        ..MorphFeatures::default()
    }))
}

/// Projects lexicon morphology onto POS-annotated tokens.
#[derive(Debug, Clone, Copy)]
pub struct Projector<'a> {
    pub lexicon: &'a Lexicon,
    pub tables: &'a MappingTables,
    pub fallback_lowercase: bool,
}

impl<'a> Projector<'a> {
    pub fn new(lexicon: &'a Lexicon) -> Self {
        Projector {
            lexicon,
            tables: MappingTables::builtin(),
            fallback_lowercase: true,
        }
    }

    /// The morphology for one token and the path that produced it.
    pub fn project_token(&self, token: &AnnotatedToken) -> (Morph, ProjectionPath) {
        let Some(pos) = token.pos else {
            return (Morph::Unknown, ProjectionPath::MissingPos);
        };
        if pos.is_punctuation() {
            return (Morph::default(), ProjectionPath::Punctuation);
        }
        if pos == PosTag::NomPro {
            let name = token.lemma.as_deref().unwrap_or(&token.form);
            let listed = self.lexicon.is_name(name) || self.lexicon.is_name(&token.form);
            return (Morph::default(), ProjectionPath::ProperName { listed });
        }
        if pos == PosTag::PreDetDef {
            return match contraction_bundle(&token.form) {
                Some(b) => (Morph::Bundle(b), ProjectionPath::Contraction),
                None => (Morph::Unknown, ProjectionPath::NotInLexicon),
            };
        }

        let entries = self.lexicon.lookup(&token.form, self.fallback_lowercase);
        match entries.as_slice() {
            [] => (Morph::Unknown, ProjectionPath::NotInLexicon),
            [only] => (Morph::Bundle(only.bundle(self.tables)), ProjectionPath::Unique),
            several => {
                let Ok(category) = self.tables.cattex_to_morphalou(pos) else {
                    return (Morph::Unknown, ProjectionPath::NoCompatibleAnalysis);
                };
                let bundles: Vec<MorphBundle> = several
                    .iter()
                    .filter(|e| e.category == category)
                    .map(|e| e.bundle(self.tables))
                    .collect();
                match bundles.len() {
                    0 => (Morph::Unknown, ProjectionPath::NoCompatibleAnalysis),
                    1 => (Morph::Bundle(bundles[0].clone()), ProjectionPath::Filtered),
                    _ => (Morph::Bundle(MorphBundle::merge(&bundles)), ProjectionPath::Merged),
                }
            }
        }
    }

    pub fn project(&self, token: &AnnotatedToken) -> AnnotatedToken {
        let mut out = token.clone();
        out.morph = self.project_token(token).0;
        out
    }

    /// Projected tokens together with the path taken for each.
    pub fn project_all(&self, tokens: &[AnnotatedToken]) -> Vec<(AnnotatedToken, ProjectionPath)> {
        tokens
            .iter()
            .map(|t| {
                let (morph, path) = self.project_token(t);
                let mut out = t.clone();
                out.morph = morph;
                (out, path)
            })
            .collect()
    }
}

/// Replaces the morph of every token with the lexicon projection.
/// Form, lemma and POS are left untouched.
pub fn project_morphology(tokens: &[AnnotatedToken], lexicon: &Lexicon) -> Vec<AnnotatedToken> {
    let projector = Projector::new(lexicon);
    tokens.iter().map(|t| projector.project(t)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lexicon(text: &str) -> Lexicon {
        Lexicon::read(text.as_bytes(), MappingTables::builtin()).unwrap()
    }

    fn tok(form: &str, pos: PosTag) -> AnnotatedToken {
        AnnotatedToken::new(form).with_pos(pos)
    }

    #[test]
    fn unique_analysis_is_retrieved() {
        let lex = lexicon("chante\tchanter\tVerbe\tindicative;present;thirdPerson;singular\n");
        let out = project_morphology(&[tok("chante", PosTag::VerCjg)], &lex);
        assert_eq!(out[0].morph.serialize(), "MODE=ind|TEMPS=pst|PERS.=3|NOMB.=s");
    }

    #[test]
    fn missing_form_is_unknown() {
        let lex = lexicon("");
        let out = project_morphology(&[tok("zzz", PosTag::NomCom)], &lex);
        assert_eq!(out[0].morph, Morph::Unknown);
        assert_eq!(out[0].morph.serialize(), "unknown");
    }

    #[test]
    fn pos_selects_among_analyses() {
        let lex = lexicon(
            "porte\tporte\tNom commun\tfeminine;singular\n\
             porte\tporter\tVerbe\tindicative;present;thirdPerson;singular\n",
        );
        let p = Projector::new(&lex);
        let (m, path) = p.project_token(&tok("porte", PosTag::NomCom));
        assert_eq!(m.serialize(), "NOMB.=s|GENRE=f");
        assert_eq!(path, ProjectionPath::Filtered);
        let (m, _) = p.project_token(&tok("porte", PosTag::VerCjg));
        assert_eq!(m.serialize(), "MODE=ind|TEMPS=pst|PERS.=3|NOMB.=s");
        let (m, path) = p.project_token(&tok("porte", PosTag::AdvGen));
        assert_eq!((m, path), (Morph::Unknown, ProjectionPath::NoCompatibleAnalysis));
    }

    #[test]
    fn surviving_analyses_merge() {
        let lex = lexicon(
            "chante\tchanter\tVerbe\tindicative;present;firstPerson;singular\n\
             chante\tchanter\tVerbe\tindicative;present;thirdPerson;singular\n\
             chante\tchanter\tVerbe\timperative;present;secondPerson;singular\n\
             chante\tchant\tNom commun\tmasculine;singular\n",
        );
        let (m, path) = Projector::new(&lex).project_token(&tok("chante", PosTag::VerCjg));
        assert_eq!(path, ProjectionPath::Merged);
        assert_eq!(m.serialize(), "TEMPS=pst|NOMB.=s");
    }

    #[test]
    fn special_cases() {
        let lex = lexicon("").with_names(["Harpagon".to_string()]);
        let p = Projector::new(&lex);
        assert_eq!(p.project_token(&tok(",", PosTag::PonFbl)).0.serialize(), "_");
        let (m, path) = p.project_token(&tok("Harpagon", PosTag::NomPro));
        assert_eq!((m.serialize().as_str(), path), ("_", ProjectionPath::ProperName { listed: true }));
        let (_, path) = p.project_token(&tok("Valère", PosTag::NomPro));
        assert_eq!(path, ProjectionPath::ProperName { listed: false });
        assert_eq!(p.project_token(&tok("aux", PosTag::PreDetDef)).0.serialize(), "NOMB.=p");
        assert_eq!(p.project_token(&tok("Du", PosTag::PreDetDef)).0.serialize(), "NOMB.=s|GENRE=m");
        assert_eq!(p.project_token(&AnnotatedToken::new("x")).1, ProjectionPath::MissingPos);
    }

    #[test]
    fn never_touches_other_layers() {
        let lex = lexicon("chante\tchanter\tVerbe\tindicative\n");
        let t = tok("Chante", PosTag::VerCjg).with_lemma("chanter");
        let out = Projector::new(&lex).project(&t);
        assert_eq!((out.form, out.lemma, out.pos), (t.form, t.lemma, t.pos));
        assert_eq!(out.morph.serialize(), "MODE=ind");
    }
}
