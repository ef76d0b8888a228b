use thiserror::Error;

/// A single rejected configuration field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldError {
    /// Dotted path of the field, e.g. `links[2].elevation_deg`.
    pub field: String,
    pub message: String,
}

impl FieldError {
    pub fn new(field: impl Into<String>, message: impl Into<String>) -> Self {
        Self {
            field: field.into(),
            message: message.into(),
        }
    }
}

impl std::fmt::Display for FieldError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.field, self.message)
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    /// An argument lies outside the domain of a model function.
    #[error("{param} = {value} is out of domain: {reason}")]
    Domain {
        param: &'static str,
        value: f64,
        reason: &'static str,
    },

    /// One or more configuration fields are invalid.
    #[error("invalid configuration: {}", join_fields(.0))]
    Config(Vec<FieldError>),

    #[error("no link labelled {0:?} in series")]
    UnknownLink(String),

    /// A model error raised while evaluating one (link, height) point.
    #[error("link {link:?} at height {height_m} m: {source}")]
    Evaluation {
        link: String,
        height_m: f64,
        #[source]
        source: Box<ModelError>,
    },
}

impl ModelError {
    pub(crate) fn domain(param: &'static str, value: f64, reason: &'static str) -> Self {
        ModelError::Domain {
            param,
            value,
            reason,
        }
    }
}

fn join_fields(fields: &[FieldError]) -> String {
    fields
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

pub type Result<T, E = ModelError> = std::result::Result<T, E>;
