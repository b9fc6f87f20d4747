use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};

use super::{AbelianGroup, ClassGroup, CyclicProduct, GroupError, ZnStar};

/// Textual group selector: `znstar:N`, `classgroup:D` or `cyclic:m1,m2,...`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    ZnStar(BigUint),
    ClassGroup(BigInt),
    Cyclic(Vec<u64>),
}

impl GroupSpec {
    pub fn build(&self) -> Result<Box<dyn AbelianGroup>, GroupError> {
        Ok(match self {
            GroupSpec::ZnStar(n) => Box::new(ZnStar::new(n.clone())?),
            GroupSpec::ClassGroup(d) => Box::new(ClassGroup::new(d.clone())?),
            GroupSpec::Cyclic(ms) => Box::new(CyclicProduct::new(ms)?),
        })
    }
}

fn is_decimal(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit()) && (s == "0" || !s.starts_with('0'))
}

impl FromStr for GroupSpec {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let invalid = |reason: &str| GroupError::InvalidSpec {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let (kind, arg) = s
            .split_once(':')
            .ok_or_else(|| invalid("expected `kind:argument`"))?;
        match kind {
            "znstar" => {
                if !is_decimal(arg) {
                    return Err(invalid("modulus must be a decimal integer"));
                }
                Ok(GroupSpec::ZnStar(arg.parse().map_err(|_| invalid("bad modulus"))?))
            }
            "classgroup" => {
                let digits = arg
                    .strip_prefix('-')
                    .ok_or_else(|| invalid("discriminant must be negative"))?;
                if !is_decimal(digits) {
                    return Err(invalid("discriminant must be a decimal integer"));
                }
                Ok(GroupSpec::ClassGroup(
                    arg.parse().map_err(|_| invalid("bad discriminant"))?,
                ))
            }
            "cyclic" => {
                if arg.is_empty() {
                    return Ok(GroupSpec::Cyclic(Vec::new()));
                }
                arg.split(',')
                    .map(|t| {
                        if !is_decimal(t) {
                            return Err(invalid("moduli must be decimal integers"));
                        }
                        t.parse::<u64>().map_err(|_| invalid("modulus out of range"))
                    })
                    .collect::<Result<Vec<_>, _>>()
                    .map(GroupSpec::Cyclic)
            }
            _ => Err(invalid("unknown group kind")),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::ZnStar(n) => write!(f, "znstar:{n}"),
            GroupSpec::ClassGroup(d) => write!(f, "classgroup:{d}"),
            GroupSpec::Cyclic(ms) => {
                let parts: Vec<String> = ms.iter().map(u64::to_string).collect();
                write!(f, "cyclic:{}", parts.join(","))
            }
        }
    }
}
