//! Structured outcomes of certificate checks.

use alloc::borrow::ToOwned;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::matrix::Rat;

/// A witness value attached to a check outcome.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Detail {
    Bool(bool),
    Int(i128),
    /// Exact rational rendered as `p/q`.
    Rat(Rat),
    Text(String),
    List(Vec<Detail>),
    Map(Vec<(String, Detail)>),
}

impl From<bool> for Detail {
    fn from(b: bool) -> Self {
        Detail::Bool(b)
    }
}

macro_rules! int_detail {
    ($($t:ty),*) => {$(
        impl From<$t> for Detail {
            fn from(x: $t) -> Self {
                Detail::Int(x as i128)
            }
        }
    )*};
}
int_detail!(i32, i64, i128, u32, u64, usize, u128);

impl From<Rat> for Detail {
    fn from(r: Rat) -> Self {
        if r.is_integer() {
            Detail::Int(r.to_integer())
        } else {
            Detail::Rat(r)
        }
    }
}

impl From<&str> for Detail {
    fn from(s: &str) -> Self {
        Detail::Text(s.to_owned())
    }
}

impl From<String> for Detail {
    fn from(s: String) -> Self {
        Detail::Text(s)
    }
}

impl<T: Into<Detail>> From<Vec<T>> for Detail {
    fn from(v: Vec<T>) -> Self {
        Detail::List(v.into_iter().map(Into::into).collect())
    }
}

impl<T: Clone + Into<Detail>> From<&[T]> for Detail {
    fn from(v: &[T]) -> Self {
        Detail::List(v.iter().cloned().map(Into::into).collect())
    }
}

impl Detail {
    pub fn map<K: Into<String>, V: Into<Detail>>(entries: impl IntoIterator<Item = (K, V)>) -> Self {
        Detail::Map(entries.into_iter().map(|(k, v)| (k.into(), v.into())).collect())
    }
}

impl fmt::Display for Detail {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Detail::Bool(b) => write!(f, "{b}"),
            Detail::Int(i) => write!(f, "{i}"),
            Detail::Rat(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Detail::Text(s) => f.write_str(s),
            Detail::List(items) => {
                f.write_str("[")?;
                for (i, x) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{x}")?;
                }
                f.write_str("]")
            }
            Detail::Map(entries) => {
                f.write_str("{")?;
                for (i, (k, v)) in entries.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{k}: {v}")?;
                }
                f.write_str("}")
            }
        }
    }
}

/// Pass/fail verdict with the witnesses that justify it.
///
/// `passed` is the conjunction of every [`Outcome::require`] call.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub passed: bool,
    pub details: Vec<(String, Detail)>,
    /// Keys of failed requirements, in order.
    pub failures: Vec<String>,
}

impl Default for Outcome {
    fn default() -> Self {
        Self::new()
    }
}

impl Outcome {
    pub fn new() -> Self {
        Self { passed: true, details: Vec::new(), failures: Vec::new() }
    }

    /// Records a witness without affecting the verdict.
    pub fn note(&mut self, key: &str, value: impl Into<Detail>) -> &mut Self {
        self.details.push((key.to_owned(), value.into()));
        self
    }

    /// Records a requirement; the outcome fails if `ok` is false.
    pub fn require(&mut self, key: &str, ok: bool) -> bool {
        self.details.push((key.to_owned(), Detail::Bool(ok)));
        if !ok {
            self.passed = false;
            self.failures.push(key.to_owned());
        }
        ok
    }

    /// Records `actual` and requires it to equal `expected`.
    pub fn expect_eq<T: PartialEq + fmt::Debug + Clone + Into<Detail>>(&mut self, key: &str, actual: T, expected: T) -> bool {
        let ok = actual == expected;
        self.details.push((key.to_owned(), actual.clone().into()));
        if !ok {
            self.passed = false;
            self.failures.push(format!("{key}: got {actual:?}, expected {expected:?}"));
        }
        ok
    }

    /// Records an error as a failure.
    pub fn error(&mut self, key: &str, err: impl fmt::Display) {
        self.details.push((key.to_owned(), Detail::Text(err.to_string())));
        self.passed = false;
        self.failures.push(format!("{key}: {err}"));
    }

    pub fn get(&self, key: &str) -> Option<&Detail> {
        self.details.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }
}

/// Renders `p/q` values of a multiset table.
pub fn multiset_detail(table: &[(Rat, usize)]) -> Detail {
    Detail::List(
        table
            .iter()
            .map(|(v, c)| Detail::map([("value", Detail::from(*v)), ("count", Detail::from(*c))]))
            .collect(),
    )
}
