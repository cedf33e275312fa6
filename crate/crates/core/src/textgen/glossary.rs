use crate::patterns::DegreeClass;

pub struct GlossaryEntry {
    pub term: &'static str,
    pub definition: &'static str,
    pub degree_class: Option<DegreeClass>,
}

pub const GLOSSARY: &[GlossaryEntry] = &[
    GlossaryEntry {
        term: "set",
        definition: "A named group of items, shown as a column of the plot's matrix. Bars show how many items each set holds.",
        degree_class: None,
    },
    GlossaryEntry {
        term: "element (item)",
        definition: "One record of the dataset. An element can belong to any number of sets, including none.",
        degree_class: None,
    },
    GlossaryEntry {
        term: "intersection",
        definition: "The group of elements that belong to exactly the same combination of sets, shown as a row of the matrix.",
        degree_class: None,
    },
    GlossaryEntry {
        term: "degree",
        definition: "The number of sets that take part in an intersection.",
        degree_class: None,
    },
    GlossaryEntry {
        term: "empty intersection",
        definition: "The intersection of no set: elements that are in none of the shown sets. Its degree is 0.",
        degree_class: Some(DegreeClass::Empty),
    },
    GlossaryEntry {
        term: "independent set intersection",
        definition: "An intersection with only one set, for example movies that are just dramas and have no other genre.",
        degree_class: Some(DegreeClass::Independent),
    },
    GlossaryEntry {
        term: "low-degree intersection",
        definition: "An intersection of two or three sets, such as Drama and Comedy.",
        degree_class: Some(DegreeClass::Low),
    },
    GlossaryEntry {
        term: "medium-degree intersection",
        definition: "An intersection of more than three sets but at most half of the shown sets.",
        degree_class: Some(DegreeClass::Medium),
    },
    GlossaryEntry {
        term: "high-order intersection",
        definition: "An intersection of more than half of the shown sets, but not all of them.",
        degree_class: Some(DegreeClass::High),
    },
    GlossaryEntry {
        term: "all-set intersection",
        definition: "The intersection that contains every shown set.",
        degree_class: Some(DegreeClass::AllSet),
    },
];

pub const GLOSSARY_HEADING: &str = "Glossary";

/// The glossary section as markdown, heading included.
pub fn render_glossary() -> String {
    let mut out = format!("# {GLOSSARY_HEADING}\n\n");
    for entry in GLOSSARY {
        out.push_str(&format!("- **{}**: {}\n", entry.term, entry.definition));
    }
    out
}
