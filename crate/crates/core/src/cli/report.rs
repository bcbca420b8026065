use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::geometry::Measures;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    ClosedForm,
    Skeleton,
    Quadrature,
    MonteCarlo,
}

impl Method {
    pub fn tag(self) -> &'static str {
        match self {
            Method::ClosedForm => "closed-form",
            Method::Skeleton => "skeleton",
            Method::Quadrature => "quadrature",
            Method::MonteCarlo => "monte-carlo",
        }
    }
}

pub const VOLUME: &str = "volume";
pub const SURFACE_AREA: &str = "surface_area";
pub const MEAN_WIDTH: &str = "mean_width";

fn is_false(b: &bool) -> bool {
    !*b
}

/// Result of a command. Serialized with fixed field order and sorted maps so
/// that parsing and re-emitting the JSON reproduces it byte for byte.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub solid: Option<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub parameters: BTreeMap<String, f64>,
    pub volume: f64,
    pub surface_area: f64,
    pub mean_width: f64,
    pub methods: BTreeMap<String, Method>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub std_errors: BTreeMap<String, f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vl_over_lambda3: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda_definition: Option<String>,
    #[serde(default, skip_serializing_if = "is_false")]
    pub empty: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub status: Option<String>,
    /// Values from secondary methods and their differences from the
    /// reported ones, keyed `quantity.method` and `quantity.delta`.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub cross_checks: BTreeMap<String, f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(solid: Option<&str>, m: Measures, methods: [Method; 3]) -> Self {
        let methods = [VOLUME, SURFACE_AREA, MEAN_WIDTH]
            .iter()
            .zip(methods)
            .map(|(k, m)| (k.to_string(), m))
            .collect();
        Report {
            solid: solid.map(str::to_owned),
            parameters: BTreeMap::new(),
            volume: m.volume,
            surface_area: m.surface_area,
            mean_width: m.mean_width,
            methods,
            std_errors: BTreeMap::new(),
            lambda: None,
            vl_over_lambda3: None,
            lambda_definition: None,
            empty: false,
            status: None,
            cross_checks: BTreeMap::new(),
            notes: Vec::new(),
        }
    }

    pub fn measures(&self) -> Measures {
        Measures::new(self.volume, self.surface_area, self.mean_width)
    }

    pub fn set_lambda(&mut self, lambda: f64, definition: &str) {
        self.lambda = Some(lambda);
        self.vl_over_lambda3 = Some(self.volume / lambda.powi(3));
        self.lambda_definition = Some(definition.to_owned());
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        if let Some(s) = &self.solid {
            let _ = writeln!(out, "solid            {s}");
        }
        for (k, v) in &self.parameters {
            let _ = writeln!(out, "{k:<16} {v}");
        }
        if self.empty {
            let _ = writeln!(out, "empty            true");
        }
        for (key, value) in [
            (VOLUME, self.volume),
            (SURFACE_AREA, self.surface_area),
            (MEAN_WIDTH, self.mean_width),
        ] {
            let tag = self.methods.get(key).map_or("-", |m| m.tag());
            let _ = write!(out, "{key:<16} {value:<22} [{tag}]");
            if let Some(se) = self.std_errors.get(key) {
                let _ = write!(out, " ± {se:e}");
            }
            out.push('\n');
        }
        if let (Some(l), Some(r)) = (self.lambda, self.vl_over_lambda3) {
            let def = self.lambda_definition.as_deref().unwrap_or("");
            let _ = writeln!(out, "lambda           {l:<22} ({def})");
            let _ = writeln!(out, "VL/lambda^3      {r}");
        }
        for (k, v) in &self.cross_checks {
            let _ = writeln!(out, "  {k:<28} {v}");
        }
        if let Some(s) = &self.status {
            let _ = writeln!(out, "status           {s}");
        }
        for n in &self.notes {
            let _ = writeln!(out, "note: {n}");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact;

    fn sample() -> Report {
        let mut r = Report::new(
            Some("tetrahedron"),
            exact::reuleaux_tetrahedron_measures(),
            [Method::ClosedForm; 3],
        );
        r.set_lambda(1.0, "vertex-to-vertex distance");
        r.std_errors.insert(VOLUME.into(), 1.234e-5);
        r.cross_checks.insert("volume.monte-carlo".into(), 0.4221);
        r
    }

    #[test]
    fn json_round_trip_is_byte_identical() {
        let s = sample().to_json();
        let back: Report = serde_json::from_str(&s).unwrap();
        assert_eq!(back, sample());
        assert_eq!(back.to_json(), s);
    }

    #[test]
    fn json_schema_and_omissions() {
        let r = Report::new(None, Measures::ball(1.0), [Method::Skeleton; 3]);
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        let obj = v.as_object().unwrap();
        let keys: Vec<&str> = obj.keys().map(String::as_str).collect();
        assert_eq!(keys, ["mean_width", "methods", "surface_area", "volume"]);
        assert_eq!(obj["methods"]["volume"], "skeleton");
    }

    #[test]
    fn table_carries_tags() {
        let t = sample().to_table();
        assert!(t.contains("[closed-form]"));
        assert!(t.contains("1.006582094946935"));
        assert!(t.contains("vertex-to-vertex"));
    }
}
