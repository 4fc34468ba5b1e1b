use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::Error;

/// Predicate signature `functor/arity`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Indicator {
    functor: Arc<str>,
    arity: usize,
}

impl Indicator {
    pub fn new(functor: &str, arity: usize) -> Self {
        Indicator {
            functor: Arc::from(functor),
            arity,
        }
    }

    pub fn functor(&self) -> &str {
        &self.functor
    }

    pub fn arity(&self) -> usize {
        self.arity
    }
}

/// Borrowed lookup key hashing exactly like [`Indicator`].
#[derive(Hash)]
pub(crate) struct IndicatorRef<'a>(pub &'a str, pub usize);

impl indexmap::Equivalent<Indicator> for IndicatorRef<'_> {
    fn equivalent(&self, key: &Indicator) -> bool {
        *key.functor == *self.0 && key.arity == self.1
    }
}

impl fmt::Display for Indicator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.functor, self.arity)
    }
}

impl FromStr for Indicator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let (functor, arity) = s
            .rsplit_once('/')
            .ok_or_else(|| Error::Indicator(format!("`{s}` is not functor/arity")))?;
        let arity = arity
            .parse()
            .map_err(|_| Error::Indicator(format!("bad arity in `{s}`")))?;
        Ok(Indicator::new(functor, arity))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_and_parses() {
        let ind = Indicator::new("parent", 2);
        assert_eq!(ind.to_string(), "parent/2");
        assert_eq!("parent/2".parse::<Indicator>().unwrap(), ind);
        assert_eq!("//2".parse::<Indicator>().unwrap(), Indicator::new("/", 2));
        assert!("parent".parse::<Indicator>().is_err());
    }
}
