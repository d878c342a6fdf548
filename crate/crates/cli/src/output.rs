use clap::ValueEnum;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    JsonLines,
}

/// Ordered output records; `negative` marks a "no" decision (exit code 1).
#[derive(Debug, Default)]
pub struct Report {
    items: Vec<(&'static str, String)>,
    pub negative: bool,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn push(&mut self, kind: &'static str, value: impl Into<String>) {
        self.items.push((kind, value.into()));
    }

    pub fn decision(&mut self, kind: &'static str, yes: bool, words: (&str, &str)) {
        self.push(kind, if yes { words.0 } else { words.1 });
        self.negative = !yes;
    }

    pub fn items(&self) -> &[(&'static str, String)] {
        &self.items
    }

    pub fn render(&self, format: Format) -> String {
        let mut out = String::new();
        for (kind, value) in &self.items {
            match format {
                Format::Text => out.push_str(value),
                Format::JsonLines => out.push_str(&serde_json::json!({ "kind": kind, "value": value }).to_string()),
            }
            out.push('\n');
        }
        out
    }
}
