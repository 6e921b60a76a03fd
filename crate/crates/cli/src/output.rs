use poisson_moments::IdentityReport;
use serde_json::Value;

/// What a subcommand produces.
pub enum Output {
    Report(Box<IdentityReport>),
    Table {
        json: Value,
        header: Vec<&'static str>,
        rows: Vec<Vec<String>>,
    },
}

impl Output {
    pub fn report(report: IdentityReport) -> Self {
        Output::Report(Box::new(report))
    }

    /// `Some(passed)` for identity checks, `None` for plain computations.
    pub fn verdict(&self) -> Option<bool> {
        match self {
            Output::Report(r) => Some(r.passed()),
            Output::Table { .. } => None,
        }
    }

    pub fn to_json(&self) -> Result<String, String> {
        let mut text = match self {
            Output::Report(r) => serde_json::to_string_pretty(r),
            Output::Table { json, .. } => serde_json::to_string_pretty(json),
        }
        .map_err(|e| e.to_string())?;
        text.push('\n');
        Ok(text)
    }

    pub fn to_csv(&self) -> Result<String, String> {
        let mut writer = csv::Writer::from_writer(Vec::new());
        let result = match self {
            Output::Report(r) => writer
                .write_record(IdentityReport::CSV_HEADER)
                .and_then(|_| writer.write_record(r.csv_record())),
            Output::Table { header, rows, .. } => writer.write_record(header).and_then(|_| {
                rows.iter().try_for_each(|row| writer.write_record(row))
            }),
        };
        result.map_err(|e| e.to_string())?;
        let bytes = writer.into_inner().map_err(|e| e.to_string())?;
        String::from_utf8(bytes).map_err(|e| e.to_string())
    }
}
