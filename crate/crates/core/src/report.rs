//! Bound reports and their JSON rendering.
//!
//! Reports are emitted with a fixed key order and floats printed with 17
//! significant digits so output is byte-stable across runs and lossless on
//! round trip.

/// Format a float with 17 significant digits; valid as a JSON number.
pub fn fmt_f64(x: f64) -> String {
    debug_assert!(x.is_finite(), "reports must not contain non-finite values");
    format!("{x:.16e}")
}

/// Small helper for assembling JSON objects by hand with stable field order.
#[derive(Debug, Default)]
pub struct JsonObject {
    fields: Vec<(String, String)>,
}

impl JsonObject {
    pub fn new() -> Self {
        JsonObject::default()
    }

    pub fn push_raw(&mut self, key: &str, raw: String) -> &mut Self {
        self.fields.push((key.to_string(), raw));
        self
    }

    pub fn push_f64(&mut self, key: &str, v: f64) -> &mut Self {
        self.push_raw(key, fmt_f64(v))
    }

    pub fn push_opt_f64(&mut self, key: &str, v: Option<f64>) -> &mut Self {
        if let Some(v) = v {
            self.push_f64(key, v);
        }
        self
    }

    pub fn push_usize(&mut self, key: &str, v: usize) -> &mut Self {
        self.push_raw(key, v.to_string())
    }

    pub fn push_u64(&mut self, key: &str, v: u64) -> &mut Self {
        self.push_raw(key, v.to_string())
    }

    pub fn push_bool(&mut self, key: &str, v: bool) -> &mut Self {
        self.push_raw(key, v.to_string())
    }

    pub fn push_str(&mut self, key: &str, v: &str) -> &mut Self {
        self.push_raw(key, format!("\"{}\"", escape(v)))
    }

    pub fn finish(&self) -> String {
        let body: Vec<String> = self
            .fields
            .iter()
            .map(|(k, v)| format!("\"{k}\":{v}"))
            .collect();
        format!("{{{}}}", body.join(","))
    }
}

fn escape(s: &str) -> String {
    s.chars()
        .flat_map(|c| match c {
            '"' => "\\\"".chars().collect::<Vec<_>>(),
            '\\' => "\\\\".chars().collect(),
            '\n' => "\\n".chars().collect(),
            c => vec![c],
        })
        .collect()
}

/// A named bound with whichever of lower/upper/exact apply; slacks are filled
/// in when the exact value is known. Absent fields are omitted from JSON.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub method: String,
    pub lower: Option<f64>,
    pub upper: Option<f64>,
    pub exact: Option<f64>,
    pub slack_lower: Option<f64>,
    pub slack_upper: Option<f64>,
}

impl BoundReport {
    pub fn new(method: &str) -> Self {
        BoundReport {
            method: method.to_string(),
            lower: None,
            upper: None,
            exact: None,
            slack_lower: None,
            slack_upper: None,
        }
    }

    pub fn with_lower(mut self, lower: f64) -> Self {
        self.lower = Some(lower);
        self.update_slacks();
        self
    }

    pub fn with_upper(mut self, upper: f64) -> Self {
        self.upper = Some(upper);
        self.update_slacks();
        self
    }

    pub fn with_exact(mut self, exact: f64) -> Self {
        self.exact = Some(exact);
        self.update_slacks();
        self
    }

    fn update_slacks(&mut self) {
        if let Some(exact) = self.exact {
            self.slack_lower = self.lower.map(|l| exact - l);
            self.slack_upper = self.upper.map(|u| u - exact);
        }
    }

    /// True when every present bound brackets the exact value with at least
    /// `-tolerance` slack.
    pub fn brackets_exact(&self, tolerance: f64) -> bool {
        match self.exact {
            None => true,
            Some(_) => {
                self.slack_lower.map_or(true, |s| s >= -tolerance)
                    && self.slack_upper.map_or(true, |s| s >= -tolerance)
            }
        }
    }

    pub fn to_json(&self) -> String {
        let mut obj = JsonObject::new();
        obj.push_str("method", &self.method);
        obj.push_opt_f64("lower", self.lower)
            .push_opt_f64("upper", self.upper)
            .push_opt_f64("exact", self.exact)
            .push_opt_f64("slack_lower", self.slack_lower)
            .push_opt_f64("slack_upper", self.slack_upper);
        obj.finish()
    }
}
