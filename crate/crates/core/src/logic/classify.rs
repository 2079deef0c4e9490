use super::Formula;
use crate::semiring::{Semiring, Weight};

/// Syntactic fragments a formula belongs to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub is_boolean: bool,
    pub is_almost_boolean: bool,
    pub is_otimes_restricted: bool,
    pub is_prod_restricted: bool,
    pub is_restricted: bool,
    /// `const(φ)` in order of first occurrence.
    pub constants: Vec<Weight>,
}

fn almost_boolean(f: &Formula) -> bool {
    match f {
        Formula::Const(_) => true,
        Formula::Oplus(g, h) | Formula::Otimes(g, h) => almost_boolean(g) && almost_boolean(h),
        _ => f.is_boolean(),
    }
}

fn commute(sr: &Semiring, xs: &[Weight], ys: &[Weight]) -> bool {
    xs.iter().all(|x| {
        ys.iter().all(|y| {
            sr.mul(x, y)
                .ok()
                .is_some_and(|xy| sr.mul(y, x).ok() == Some(xy))
        })
    })
}

/// Decides the fragments; commutation of constants is tested pairwise in `sr`.
pub fn classify(f: &Formula, sr: &Semiring) -> Classification {
    let mut otimes_ok = true;
    let mut prod_ok = true;
    f.visit(&mut |g| match g {
        Formula::Otimes(l, r) if otimes_ok => {
            otimes_ok = almost_boolean(l) || commute(sr, &l.constants(), &r.constants());
        }
        Formula::Prod1(_, body) if prod_ok => prod_ok = almost_boolean(body),
        _ => {}
    });
    Classification {
        is_boolean: f.is_boolean(),
        is_almost_boolean: almost_boolean(f),
        is_otimes_restricted: otimes_ok,
        is_prod_restricted: prod_ok,
        is_restricted: otimes_ok && prod_ok,
        constants: f.constants(),
    }
}
