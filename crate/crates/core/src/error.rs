use core::fmt;

/// Errors raised by the core routines.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A path coordinate fell outside `[0, 1]`.
    Domain { name: &'static str, value: f64 },
    /// An argument violated its documented range.
    Argument(&'static str),
    /// A computation produced NaN or an infinity.
    Numeric(&'static str),
    /// An injected interval sequence ran out before the stopping rule fired.
    IntervalsExhausted { consumed: usize },
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain { name, value } => {
                write!(f, "{name} = {value} is outside the unit path [0, 1]")
            }
            Error::Argument(msg) => write!(f, "invalid argument: {msg}"),
            Error::Numeric(msg) => write!(f, "non-finite result: {msg}"),
            Error::IntervalsExhausted { consumed } => write!(
                f,
                "interval sequence ended after {consumed} draws without crossing the path end"
            ),
        }
    }
}

impl core::error::Error for Error {}

pub(crate) fn check_unit(name: &'static str, value: f64) -> Result<()> {
    if (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(Error::Domain { name, value })
    }
}
