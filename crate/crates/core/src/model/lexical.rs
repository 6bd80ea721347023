//! Lexical-space checks and numeric values for the XSD datatypes the engine
//! interprets. Other datatypes are opaque: any lexical form is accepted.

use crate::vocab::{xsd, XSD};

use super::Literal;

const INTEGER_TYPES: &[&str] = &[
    "integer",
    "int",
    "long",
    "short",
    "byte",
    "nonNegativeInteger",
    "positiveInteger",
    "nonPositiveInteger",
    "negativeInteger",
    "unsignedInt",
    "unsignedLong",
    "unsignedShort",
    "unsignedByte",
];

fn xsd_local(datatype: &str) -> Option<&str> {
    datatype.strip_prefix(XSD)
}

pub fn is_integer_type(datatype: &str) -> bool {
    xsd_local(datatype).is_some_and(|l| INTEGER_TYPES.contains(&l))
}

pub fn is_numeric_type(datatype: &str) -> bool {
    datatype == xsd::DECIMAL || is_integer_type(datatype)
}

fn is_integer_lexical(s: &str) -> bool {
    let digits = s.strip_prefix(['+', '-']).unwrap_or(s);
    !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
}

fn is_decimal_lexical(s: &str) -> bool {
    let body = s.strip_prefix(['+', '-']).unwrap_or(s);
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    (!int.is_empty() || !frac.is_empty())
        && int.bytes().all(|b| b.is_ascii_digit())
        && frac.bytes().all(|b| b.is_ascii_digit())
}

/// Whether `lexical` is in the lexical space of `datatype`.
pub fn is_well_formed(datatype: &str, lexical: &str) -> bool {
    if is_integer_type(datatype) {
        if !is_integer_lexical(lexical) {
            return false;
        }
        let negative = lexical.starts_with('-') && lexical[1..].bytes().any(|b| b != b'0');
        let zero = lexical.trim_start_matches(['+', '-']).bytes().all(|b| b == b'0');
        return match xsd_local(datatype).unwrap_or_default() {
            "nonNegativeInteger" | "unsignedInt" | "unsignedLong" | "unsignedShort" | "unsignedByte" => !negative,
            "positiveInteger" => !negative && !zero,
            "nonPositiveInteger" => negative || zero,
            "negativeInteger" => negative,
            _ => true,
        };
    }
    match datatype {
        xsd::DECIMAL => is_decimal_lexical(lexical),
        xsd::BOOLEAN => matches!(lexical, "true" | "false" | "1" | "0"),
        _ => true,
    }
}

/// Numeric value of an integer or decimal literal with a well-formed lexical form.
pub fn numeric_value(lit: &Literal) -> Option<f64> {
    if is_numeric_type(lit.datatype()) && is_well_formed(lit.datatype(), lit.lexical()) {
        lit.lexical().parse().ok()
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lexical_spaces() {
        assert!(is_well_formed(xsd::INTEGER, "-0012"));
        assert!(!is_well_formed(xsd::INTEGER, "1.0"));
        assert!(!is_well_formed(xsd::INTEGER, ""));
        assert!(is_well_formed(xsd::DECIMAL, "1."));
        assert!(is_well_formed(xsd::DECIMAL, ".5"));
        assert!(!is_well_formed(xsd::DECIMAL, "."));
        assert!(!is_well_formed(xsd::DECIMAL, "1e3"));
        assert!(is_well_formed(xsd::BOOLEAN, "1"));
        assert!(!is_well_formed(xsd::BOOLEAN, "yes"));
        assert!(!is_well_formed(&format!("{XSD}positiveInteger"), "0"));
        assert!(is_well_formed(&format!("{XSD}nonNegativeInteger"), "-0"));
        assert!(is_well_formed(xsd::STRING, "anything"));
    }

    #[test]
    fn numeric_values() {
        assert_eq!(numeric_value(&Literal::typed("+15", xsd::INTEGER)), Some(15.0));
        assert_eq!(numeric_value(&Literal::typed("2.50", xsd::DECIMAL)), Some(2.5));
        assert_eq!(numeric_value(&Literal::typed("NaN", xsd::DECIMAL)), None);
        assert_eq!(numeric_value(&Literal::string("3")), None);
    }
}
