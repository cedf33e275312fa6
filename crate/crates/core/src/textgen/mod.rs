//! Short and long descriptions rendered from a [`PatternReport`].
//!
//! The short description is a single paragraph. The long description is
//! markdown with a fixed list of sections (see [`HEADINGS`]) and repeats the
//! short description as its introduction. Every sentence comes from
//! [`template::CATALOG`].

mod glossary;
mod names;
mod template;

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::model::{Intersection, PlotConfig};
use crate::patterns::{DegreeClass, DivergenceLabel, PatternReport, SizeClass};

pub use glossary::{render_glossary, GlossaryEntry, GLOSSARY, GLOSSARY_HEADING};
pub use names::{humanize_set_name, join_combination, join_list, DisplayNames, MAX_SET_NAME_LEN};
pub use template::{apply_labels, template, Arg, TemplateError, CATALOG};

/// Section headings of the long description, in order.
pub const HEADINGS: [&str; 6] = [
    "UpSet Introduction",
    "Dataset Properties",
    "Set Properties",
    "Intersection Properties",
    "Statistical Information",
    "Trend Analysis",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verbosity {
    Short,
    #[default]
    Long,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DescriptionOptions {
    pub verbosity: Verbosity,
    pub bullets: bool,
    pub glossary: bool,
    /// Overrides the config's `top_k` when set.
    pub top_k: Option<usize>,
}

impl Default for DescriptionOptions {
    fn default() -> Self {
        DescriptionOptions {
            verbosity: Verbosity::Long,
            bullets: true,
            glossary: true,
            top_k: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DescriptionDocument {
    pub short_text: String,
    pub long_markdown: String,
    pub warnings: Vec<String>,
}

impl DescriptionDocument {
    /// The description selected by `verbosity`, as markdown.
    pub fn select(&self, verbosity: Verbosity) -> &str {
        match verbosity {
            Verbosity::Short => &self.short_text,
            Verbosity::Long => &self.long_markdown,
        }
    }
}

/// Produces both descriptions.
pub fn describe(
    report: &PatternReport,
    config: &PlotConfig,
    options: &DescriptionOptions,
) -> Result<DescriptionDocument, TemplateError> {
    let ctx = Context::new(report, config, options);
    let short_text = ctx.short()?;
    let long_markdown = ctx.long(&short_text)?;
    Ok(DescriptionDocument {
        short_text,
        long_markdown,
        warnings: ctx.warnings,
    })
}

pub fn generate_short(
    report: &PatternReport,
    config: &PlotConfig,
) -> Result<String, TemplateError> {
    Context::new(report, config, &DescriptionOptions::default()).short()
}

pub fn generate_long(
    report: &PatternReport,
    config: &PlotConfig,
    options: &DescriptionOptions,
) -> Result<String, TemplateError> {
    let ctx = Context::new(report, config, options);
    let short = ctx.short()?;
    ctx.long(&short)
}

/// Strips the markdown this crate emits: heading and list markers and bold
/// spans at the start of a line.
pub fn to_plain_text(markdown: &str) -> String {
    let mut out = String::with_capacity(markdown.len());
    for line in markdown.lines() {
        let line = line.strip_prefix("# ").unwrap_or(line);
        let line = line.strip_prefix("- ").unwrap_or(line);
        match line.strip_prefix("**").and_then(|l| l.split_once("**")) {
            Some((bold, rest)) => {
                out.push_str(bold);
                out.push_str(rest);
            }
            None => out.push_str(line),
        }
        out.push('\n');
    }
    out
}

struct Context<'a> {
    report: &'a PatternReport,
    config: &'a PlotConfig,
    options: &'a DescriptionOptions,
    names: DisplayNames,
    warnings: Vec<String>,
    top_k: usize,
}

impl<'a> Context<'a> {
    fn new(
        report: &'a PatternReport,
        config: &'a PlotConfig,
        options: &'a DescriptionOptions,
    ) -> Self {
        let (names, warnings) = DisplayNames::new(config.visible_sets.iter().map(String::as_str));
        Context {
            report,
            config,
            options,
            names,
            warnings,
            top_k: options.top_k.unwrap_or(config.top_k),
        }
    }

    fn render(&self, id: &str, args: &[(&str, Arg)]) -> Result<String, TemplateError> {
        apply_labels(
            template(id)?,
            self.report.item_label.as_ref(),
            self.report.set_noun.as_deref(),
            args,
        )
    }

    fn set_name(&self, raw: &str) -> String {
        self.names.get(raw).to_owned()
    }

    fn top_rows(&self) -> Vec<&'a Intersection> {
        self.report.largest_rows().take(self.top_k).collect()
    }

    /// Sets appearing in `rows`, most frequent first; ties go to the larger
    /// set, then plot order.
    fn ranked_sets(&self, rows: &[&Intersection]) -> Vec<(String, usize)> {
        let size_of: HashMap<&str, u64> = self
            .report
            .set_sizes
            .iter()
            .map(|s| (s.name.as_str(), s.size))
            .collect();
        let mut ranked: Vec<(usize, &String, usize)> = self
            .config
            .visible_sets
            .iter()
            .enumerate()
            .map(|(pos, name)| (pos, name, rows.iter().filter(|r| r.contains(name)).count()))
            .filter(|&(_, _, count)| count > 0)
            .collect();
        ranked.sort_by(|a, b| {
            b.2.cmp(&a.2)
                .then_with(|| size_of[b.1.as_str()].cmp(&size_of[a.1.as_str()]))
                .then(a.0.cmp(&b.0))
        });
        ranked
            .into_iter()
            .map(|(_, name, count)| (name.clone(), count))
            .collect()
    }

    fn short(&self) -> Result<String, TemplateError> {
        let report = self.report;
        let n_visible = report.n_visible();
        let multi = n_visible > 1;
        let mut sentences = Vec::new();

        let sets_word = if n_visible == 1 { "set" } else { "sets" };
        let intro_args = [
            ("n_sets", Arg::from(n_visible)),
            ("sets_word", sets_word.into()),
        ];
        match self
            .config
            .caption
            .as_deref()
            .map(str::trim)
            .filter(|c| !c.is_empty())
        {
            Some(caption) => {
                sentences.push(terminate(caption));
                sentences.push(self.render("short.intro_captioned", &intro_args)?);
            }
            None => sentences.push(self.render("short.intro", &intro_args)?),
        }

        let top = self.top_rows();
        if multi {
            let ranked = self.ranked_sets(&top);
            if let Some((first, count)) = ranked.first() {
                let mut named = vec![self.set_name(first)];
                if *count < top.len() {
                    named.extend(ranked.get(1).map(|(s, _)| self.set_name(s)));
                }
                let sets = join_combination(named.iter().map(String::as_str));
                sentences.push(self.render("short.major", &[("sets", sets.into())])?);
            }
        }

        match top.first() {
            Some(largest) if largest.degree() == 0 => {
                sentences
                    .push(self.render("short.empty_largest", &[("size", largest.size.into())])?);
            }
            Some(largest) => sentences.push(self.render(
                "short.largest",
                &[
                    ("name", self.names.row(largest).into()),
                    ("size", largest.size.into()),
                ],
            )?),
            None => {}
        }

        if multi && top.len() > 1 {
            let others: Vec<String> = self
                .ranked_sets(&top[1..])
                .iter()
                .map(|(s, _)| self.set_name(s))
                .collect();
            if !others.is_empty() {
                sentences
                    .push(self.render("short.others", &[("sets", join_list(&others).into())])?);
            }
        }

        if let Some(size) = report.special.all_set {
            sentences.push(self.render("short.all_set", &[("size", size.into())])?);
        }

        Ok(sentences.join(" "))
    }

    fn long(&self, short: &str) -> Result<String, TemplateError> {
        let mut out = String::new();

        out.push_str(&format!("# {}\n\n", HEADINGS[0]));
        if let Some(title) = self
            .config
            .title
            .as_deref()
            .map(str::trim)
            .filter(|t| !t.is_empty())
        {
            out.push_str(&format!("**{title}**\n\n"));
        }
        out.push_str(short);
        out.push('\n');

        let sections = [
            self.dataset_properties()?,
            self.set_properties()?,
            self.intersection_properties()?,
            self.statistical_information()?,
            self.trend_analysis()?,
        ];
        for (heading, sentences) in HEADINGS[1..].iter().zip(&sections) {
            out.push_str(&format!("\n# {heading}\n\n"));
            if self.options.bullets {
                for s in sentences {
                    out.push_str(&format!("- {s}\n"));
                }
            } else {
                out.push_str(&sentences.join(" "));
                out.push('\n');
            }
        }

        if self.options.glossary {
            out.push('\n');
            out.push_str(&render_glossary());
        }
        Ok(out)
    }

    fn dataset_properties(&self) -> Result<Vec<String>, TemplateError> {
        let r = self.report;
        let mut s = Vec::new();
        if r.set_noun.is_some() {
            s.push(self.render("dataset.set_noun", &[])?);
        }
        if r.item_label.is_some() {
            s.push(self.render("dataset.items", &[])?);
        }
        let visible = r.n_visible();
        s.push(self.render(
            "dataset.contains",
            &[
                ("total_sets", r.total_sets.into()),
                (
                    "sets_word",
                    if r.total_sets == 1 { "set" } else { "sets" }.into(),
                ),
                ("total_elements", r.total_memberships.into()),
                ("visible", visible.into()),
                (
                    "visible_word",
                    if visible == 1 { "set is" } else { "sets are" }.into(),
                ),
            ],
        )?);
        Ok(s)
    }

    fn set_properties(&self) -> Result<Vec<String>, TemplateError> {
        let r = self.report;
        let mut s = Vec::new();
        let (first, rest) = match r.set_sizes.split_first() {
            Some(split) => split,
            None => return Ok(s),
        };
        if rest.is_empty() {
            s.push(self.render(
                "sets.single",
                &[
                    ("name", self.set_name(&first.name).into()),
                    ("size", first.size.into()),
                ],
            )?);
            return Ok(s);
        }
        let divergence = match r.divergence.label {
            DivergenceLabel::DivergingALot => "diverging a lot",
            DivergenceLabel::ModeratelyDiverging => "moderately diverging",
            DivergenceLabel::RoughlyEqual => "roughly equal",
        };
        s.push(self.render(
            "sets.divergence",
            &[
                ("divergence", divergence.into()),
                ("min", r.divergence.min_size.into()),
                ("max", r.divergence.max_size.into()),
            ],
        )?);
        let followers: Vec<String> = rest
            .iter()
            .map(|set| format!("{} with {}", self.set_name(&set.name), set.size))
            .collect();
        s.push(self.render(
            "sets.enumeration",
            &[
                ("name", self.set_name(&first.name).into()),
                ("size", first.size.into()),
                ("rest", join_list(&followers).into()),
            ],
        )?);
        Ok(s)
    }

    fn intersection_properties(&self) -> Result<Vec<String>, TemplateError> {
        let r = self.report;
        let mut s = vec![self.render(
            "intersections.sort",
            &[
                ("sort_by", r.table.sort_by.to_string().into()),
                ("sort_order", r.table.sort_order.to_string().into()),
            ],
        )?];
        let count = r.table.len();
        if count == 1 {
            s.push(self.render("intersections.count_one", &[])?);
        } else {
            s.push(self.render("intersections.count", &[("count", count.into())])?);
        }
        let top: Vec<String> = self
            .top_rows()
            .iter()
            .map(|row| format!("{} ({})", self.names.row(row), row.size))
            .collect();
        if top.len() == 1 {
            s.push(self.render("intersections.only", &[("list", join_list(&top).into())])?);
        } else if !top.is_empty() {
            s.push(self.render(
                "intersections.top",
                &[("k", top.len().into()), ("list", join_list(&top).into())],
            )?);
        }
        Ok(s)
    }

    fn statistical_information(&self) -> Result<Vec<String>, TemplateError> {
        let st = &self.report.statistics;
        let mut s = vec![
            self.render(
                "stats.mean",
                &[
                    ("mean", (st.mean.round() as u64).into()),
                    ("median", (st.median.round() as u64).into()),
                ],
            )?,
            self.render(
                "stats.percentiles",
                &[("p90", st.p90.into()), ("p10", st.p10.into())],
            )?,
        ];
        if let Some(p) = &st.largest_set_presence {
            s.push(self.render(
                "stats.largest_presence",
                &[
                    ("name", self.set_name(&p.set).into()),
                    ("percent", format!("{:.1}", p.percent).into()),
                ],
            )?);
        }
        if let Some(p) = &st.smallest_set_presence {
            if st.largest_set_presence.as_ref().map(|l| &l.set) != Some(&p.set) {
                s.push(self.render(
                    "stats.smallest_presence",
                    &[
                        ("name", self.set_name(&p.set).into()),
                        ("percent", format!("{:.1}", p.percent).into()),
                    ],
                )?);
            }
        }
        Ok(s)
    }

    fn trend_analysis(&self) -> Result<Vec<String>, TemplateError> {
        let r = self.report;
        let st = &r.statistics;
        let mut s = Vec::new();

        match r.distribution.label.adverb() {
            Some(adverb) => s.push(self.render(
                "trend.flatten",
                &[
                    ("peak", st.peak.into()),
                    ("adverb", adverb.into()),
                    ("tail", st.tail.into()),
                ],
            )?),
            None => s.push(self.render("trend.constant", &[("peak", st.peak.into())])?),
        }

        if let (Some(factor), Some(largest)) = (st.dominance_factor, r.largest_rows().next()) {
            s.push(self.render(
                "trend.dominance",
                &[
                    ("name", self.names.row(largest).into()),
                    ("factor", factor.into()),
                ],
            )?);
        }

        if let Some(size) = r.special.empty {
            s.push(self.render("trend.empty", &[("size", size.into())])?);
        }
        match r.special.all_set {
            Some(size) => s.push(self.render("trend.all_set_present", &[("size", size.into())])?),
            None => s.push(self.render("trend.all_set_absent", &[])?),
        }

        let assoc = &r.association;
        for (class, id) in [
            (DegreeClass::Independent, "trend.independent"),
            (DegreeClass::Low, "trend.low"),
            (DegreeClass::Medium, "trend.medium"),
        ] {
            if let Some(sizes) = assoc.sizes_of(class) {
                s.push(self.render(id, &[("classes", size_classes(sizes).into())])?);
            }
        }

        match assoc.sizes_of(DegreeClass::High) {
            Some(sizes) => {
                let significant: BTreeSet<SizeClass> = sizes
                    .iter()
                    .copied()
                    .filter(|&c| assoc.is_significant(c, DegreeClass::High))
                    .collect();
                if significant.is_empty() {
                    s.push(self.render("trend.high", &[("classes", size_classes(sizes).into())])?);
                } else {
                    s.push(self.render(
                        "trend.high_significant",
                        &[("classes", size_classes(&significant).into())],
                    )?);
                }
            }
            None => s.push(self.render("trend.no_high", &[])?),
        }
        Ok(s)
    }
}

fn size_classes(classes: &BTreeSet<SizeClass>) -> String {
    if classes.len() == 1 && classes.contains(&SizeClass::Largest) {
        return "the largest".to_owned();
    }
    classes
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(" and ")
}

fn terminate(sentence: &str) -> String {
    if sentence.ends_with(['.', '!', '?']) {
        sentence.to_owned()
    } else {
        format!("{sentence}.")
    }
}
