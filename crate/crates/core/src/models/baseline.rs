use std::collections::{BTreeMap, HashMap};

use crate::corpus::Sentence;
use crate::tagset::PosTag;

/// Tags each form with the tag it carried most often in training; unseen
/// forms get the most frequent tag overall. Ties go to the tag listed first.
#[derive(Debug, Clone)]
pub struct MostFrequentTag {
    by_form: HashMap<String, PosTag>,
    fallback: PosTag,
}

fn best(counts: &BTreeMap<PosTag, usize>) -> Option<PosTag> {
    let mut out: Option<(PosTag, usize)> = None;
    for (&tag, &n) in counts {
        if out.is_none_or(|(_, m)| n > m) {
            out = Some((tag, n));
        }
    }
    out.map(|(t, _)| t)
}

impl MostFrequentTag {
    pub fn train(train: &[Sentence]) -> Self {
        let mut by_form: HashMap<String, BTreeMap<PosTag, usize>> = HashMap::new();
        let mut overall: BTreeMap<PosTag, usize> = BTreeMap::new();
        for t in train.iter().flatten() {
            if let Some(pos) = t.pos {
                *by_form.entry(t.form.clone()).or_default().entry(pos).or_default() += 1;
                *overall.entry(pos).or_default() += 1;
            }
        }
        MostFrequentTag {
            by_form: by_form
                .into_iter()
                .filter_map(|(f, c)| best(&c).map(|t| (f, t)))
                .collect(),
            fallback: best(&overall).unwrap_or(PosTag::NomCom),
        }
    }

    pub fn tag(&self, forms: &[&str]) -> Vec<PosTag> {
        forms
            .iter()
            .map(|f| self.by_form.get(*f).copied().unwrap_or(self.fallback))
            .collect()
    }
}
