use bccf::Error;

pub const IO: u8 = 1;
pub const NORMALIZATION: u8 = 2;
pub const DIMENSION: u8 = 3;
pub const UNCONVERGED: u8 = 4;
pub const POINT_GAME: u8 = 5;
pub const PARSE: u8 = 6;
pub const GOLDEN: u8 = 7;
pub const THEOREM: u8 = 8;
pub const INVALID: u8 = 9;

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn new(code: u8, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }

    pub fn io(what: &std::path::Path, e: std::io::Error) -> Self {
        Self::new(IO, format!("io: {}: {e}", what.display()))
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Parse(_) => PARSE,
            Error::Normalization { .. } => NORMALIZATION,
            Error::Dimension { .. } => DIMENSION,
            Error::Unconverged(_) => UNCONVERGED,
            Error::InvalidTransition { .. } | Error::MalformedMove(_) => POINT_GAME,
            Error::TheoremViolation(_) => THEOREM,
            _ => INVALID,
        };
        Self::new(code, e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Self::new(IO, format!("io: {e}"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn library_errors_map_to_documented_codes() {
        let cases = [
            (Error::Parse("x".into()), PARSE),
            (
                Error::Normalization {
                    what: "alpha0".into(),
                    sum: 0.9,
                },
                NORMALIZATION,
            ),
            (
                Error::Dimension {
                    context: "beta0".into(),
                    expected: 3,
                    actual: 2,
                },
                DIMENSION,
            ),
            (Error::Unconverged("x".into()), UNCONVERGED),
            (
                Error::InvalidTransition {
                    transition: 3,
                    reason: "x".into(),
                },
                POINT_GAME,
            ),
            (Error::MalformedMove("x".into()), POINT_GAME),
            (Error::TheoremViolation("x".into()), THEOREM),
            (Error::Domain("x".into()), INVALID),
        ];
        for (e, code) in cases {
            assert_eq!(Failure::from(e.clone()).code, code, "{e}");
        }
        let f = Failure::from(Error::InvalidTransition {
            transition: 3,
            reason: "x".into(),
        });
        assert!(f.message.contains("transition 3"));
    }
}
