use std::collections::{BTreeMap, HashMap};

use crate::model::Intersection;

/// Names longer than this are shortened before they reach the text.
pub const MAX_SET_NAME_LEN: usize = 24;

/// Turns machine-style identifiers into something a screen reader can say.
///
/// Splits on `_` and `-`, drops tokens without lowercase letters (accession
/// codes such as `CP008992`, bare numbers, flags like `ALL`) and keeps the
/// first two survivors. Falls back to the leading characters of `raw` when no
/// token survives.
pub fn humanize_set_name(raw: &str, max_len: usize) -> String {
    let kept: Vec<&str> = raw
        .split(['_', '-'])
        .filter(|t| !t.is_empty())
        .filter(|t| t.chars().any(char::is_lowercase))
        .take(2)
        .collect();
    let joined = if kept.is_empty() {
        raw.to_owned()
    } else {
        kept.join(" ")
    };
    joined
        .chars()
        .take(max_len)
        .collect::<String>()
        .trim()
        .to_owned()
}

/// Display names for the visible sets.
#[derive(Debug, Clone, Default)]
pub struct DisplayNames {
    names: HashMap<String, String>,
}

impl DisplayNames {
    /// Shortens names over [`MAX_SET_NAME_LEN`]; shortened names that would
    /// collide with another display name keep their raw form.
    pub fn new<'a>(raw: impl IntoIterator<Item = &'a str>) -> (Self, Vec<String>) {
        let raw: Vec<&str> = raw.into_iter().collect();
        let proposed: Vec<String> = raw
            .iter()
            .map(|r| {
                if r.chars().count() > MAX_SET_NAME_LEN {
                    humanize_set_name(r, MAX_SET_NAME_LEN)
                } else {
                    (*r).to_owned()
                }
            })
            .collect();
        let mut uses: BTreeMap<&str, usize> = BTreeMap::new();
        for p in &proposed {
            *uses.entry(p.as_str()).or_default() += 1;
        }
        let mut names = HashMap::new();
        let mut warnings = Vec::new();
        for (r, p) in raw.iter().zip(&proposed) {
            let shown = if p != r && uses[p.as_str()] == 1 {
                warnings.push(format!("set name `{r}` shortened to `{p}`"));
                p.clone()
            } else {
                (*r).to_owned()
            };
            names.insert((*r).to_owned(), shown);
        }
        (DisplayNames { names }, warnings)
    }

    pub fn get<'a>(&'a self, raw: &'a str) -> &'a str {
        self.names.get(raw).map(String::as_str).unwrap_or(raw)
    }

    /// "Just X" for one set, "the empty intersection" for none, otherwise the
    /// member sets joined as "A, B, and C".
    pub fn row(&self, row: &Intersection) -> String {
        match row.sets.as_slice() {
            [] => "Just the empty intersection".to_owned(),
            [one] => format!("Just {}", self.get(one)),
            sets => join_combination(sets.iter().map(|s| self.get(s))),
        }
    }
}

/// "A, and B" / "A, B, and C": every item separated by a comma.
pub fn join_combination<'a>(items: impl IntoIterator<Item = &'a str>) -> String {
    let items: Vec<&str> = items.into_iter().collect();
    match items.as_slice() {
        [] => String::new(),
        [one] => (*one).to_owned(),
        [init @ .., last] => format!("{}, and {}", init.join(", "), last),
    }
}

/// "A and B" / "A, B, and C".
pub fn join_list<S: AsRef<str>>(items: &[S]) -> String {
    match items {
        [] => String::new(),
        [one] => one.as_ref().to_owned(),
        [a, b] => format!("{} and {}", a.as_ref(), b.as_ref()),
        [init @ .., last] => {
            let head: Vec<&str> = init.iter().map(AsRef::as_ref).collect();
            format!("{}, and {}", head.join(", "), last.as_ref())
        }
    }
}
