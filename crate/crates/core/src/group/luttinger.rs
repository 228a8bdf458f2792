use crate::error::{Error, Result};

use super::presentation::Presentation;
use super::word::Word;

/// Adjoins `μ · γ'^m`. With `m = 0` the relator is `μ` itself.
pub fn luttinger_quotient(p: &Presentation, mu: &Word, gamma_push: &Word, m: i64) -> Result<Presentation> {
    torus_surgery_quotient(p, mu, gamma_push, 1, m)
}

/// Adjoins `μ^num · γ'^den`, the relator of a general torus surgery.
/// A zero pair is rejected since it would not describe a surgery.
pub fn torus_surgery_quotient(
    p: &Presentation,
    mu: &Word,
    gamma_push: &Word,
    num: i64,
    den: i64,
) -> Result<Presentation> {
    if num == 0 && den == 0 {
        return Err(Error::BadParameter("surgery coefficient 0/0".into()));
    }
    p.check_word(mu)?;
    p.check_word(gamma_push)?;
    p.clone().with_relator(mu.pow(num).mul(&gamma_push.pow(den)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base() -> Presentation {
        Presentation::free(&["a", "b", "g"])
    }

    #[test]
    fn adds_mu_gamma() {
        let mu = Word::commutator(&Word::gen(0), &Word::gen(1));
        let q = luttinger_quotient(&base(), &mu, &Word::gen(2), 1).unwrap();
        assert_eq!(q.relators(), &[mu.mul(&Word::gen(2))]);
        assert_eq!(q.names(), base().names());
    }

    #[test]
    fn zero_and_trivial_pushoff() {
        let mu = Word::gen(0);
        let q = luttinger_quotient(&base(), &mu, &Word::gen(2), 0).unwrap();
        assert_eq!(q.relators(), std::slice::from_ref(&mu));
        let q = luttinger_quotient(&base(), &mu, &Word::identity(), 5).unwrap();
        assert_eq!(q.relators(), &[mu]);
    }

    #[test]
    fn rejects_unknown_generator() {
        let err = luttinger_quotient(&base(), &Word::gen(7), &Word::gen(0), 1).unwrap_err();
        assert_eq!(err, Error::UnknownGenerator(7));
    }

    #[test]
    fn keeps_existing_relators() {
        let p = base().with_relator(Word::power_of(0, 3)).unwrap();
        let q = luttinger_quotient(&p, &Word::gen(1), &Word::gen(2), -2).unwrap();
        assert_eq!(&q.relators()[..1], p.relators());
        assert_eq!(q.relators().len(), 2);
    }
}
