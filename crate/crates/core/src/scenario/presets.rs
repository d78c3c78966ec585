use super::schema::Scenario;
use crate::error::{Error, Result};

/// Shipped presets in catalog order.
pub const PRESETS: &[(&str, &str)] = &[
    ("gaussian_moments", include_str!("../../presets/gaussian_moments.json")),
    ("lognormal_moments", include_str!("../../presets/lognormal_moments.json")),
    ("hamburger_random", include_str!("../../presets/hamburger_random.json")),
    ("gaussian_carleman", include_str!("../../presets/gaussian_carleman.json")),
    ("lognormal_carleman", include_str!("../../presets/lognormal_carleman.json")),
    ("gaussian_determinacy", include_str!("../../presets/gaussian_determinacy.json")),
    ("lognormal_determinacy", include_str!("../../presets/lognormal_determinacy.json")),
    ("gaussian_classify", include_str!("../../presets/gaussian_classify.json")),
    ("lognormal_classify", include_str!("../../presets/lognormal_classify.json")),
    ("legendre_recurrence", include_str!("../../presets/legendre_recurrence.json")),
    ("hermite_recurrence", include_str!("../../presets/hermite_recurrence.json")),
    ("uniform12_solve", include_str!("../../presets/uniform12_solve.json")),
    ("uniform12_kint", include_str!("../../presets/uniform12_kint.json")),
    ("gaussian_kint", include_str!("../../presets/gaussian_kint.json")),
    ("plane_separation", include_str!("../../presets/plane_separation.json")),
    ("lognormal_witness", include_str!("../../presets/lognormal_witness.json")),
    ("uniform12_core_gap", include_str!("../../presets/uniform12_core_gap.json")),
    ("probe_weakgap", include_str!("../../presets/probe_weakgap.json")),
    ("weakgap_properties", include_str!("../../presets/weakgap_properties.json")),
    ("gaussian_truncation", include_str!("../../presets/gaussian_truncation.json")),
    ("uniform_truncation", include_str!("../../presets/uniform_truncation.json")),
];

/// `(name, description)` in catalog order.
pub fn list_presets() -> Vec<(&'static str, String)> {
    PRESETS
        .iter()
        .map(|(name, text)| (*name, preset_from(text).map(|s| s.description).unwrap_or_default()))
        .collect()
}

fn preset_from(text: &str) -> Result<Scenario> {
    Scenario::from_json(text)
}

pub fn preset(name: &str) -> Result<Scenario> {
    let (_, text) = PRESETS
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| Error::InvalidArgument(format!("unknown preset '{name}'; see `skl list`")))?;
    preset_from(text)
}
