//! Reference table cells that bundled data must reproduce.
//!
//! Groups named `2.S5` or `GL(2,5)` are checked cell by cell against the
//! standard spin-character table and the partial table of GL(2,5).  A
//! mismatch is a load error: neither the oracle nor the reference table is
//! silently preferred.

use crate::cyclotomic::Cyclotomic;
use crate::group::{GroupData, GroupError, Invariant};

struct Anchor {
    classes: &'static [(&'static str, u64)],
    rows: &'static [(&'static str, &'static str)],
    fusion: Option<(&'static str, &'static [&'static str])>,
}

const SPIN_2S5: Anchor = Anchor {
    classes: &[
        ("1a", 1),
        ("5a", 5),
        ("4a", 4),
        ("2a", 2),
        ("10a", 10),
        ("6a", 6),
        ("3a", 3),
        ("8a", 8),
        ("8b", 8),
        ("4b", 4),
        ("12a", 12),
        ("12b", 12),
    ],
    rows: &[
        ("chi5", "4 -1 . -4 1 2 -2 . . . . ."),
        ("chi6", "4 -1 . -4 1 -1 1 . . . b -b"),
        ("chi7", "4 -1 . -4 1 -1 1 . . . -b b"),
        ("chi11", "6 1 . -6 -1 . . a -a . . ."),
        ("chi12", "6 1 . -6 -1 . . -a a . . ."),
    ],
    fusion: None,
};

const PART_GL25: Anchor = Anchor {
    classes: &[
        ("1a", 1),
        ("4c", 4),
        ("2b", 2),
        ("4d", 4),
        ("4e", 4),
        ("4f", 4),
        ("4g", 4),
        ("24a", 24),
        ("12a", 12),
        ("8a", 8),
        ("6a", 6),
        ("24b", 24),
        ("3a", 3),
        ("8b", 8),
        ("24c", 24),
        ("12b", 12),
        ("24d", 24),
    ],
    rows: &[
        ("chi2", "1 i -1 -i -i 1 i i -1 -i 1 -i 1 i i -1 -i"),
        ("chi6", "5 i -1 -i -i 1 i -i 1 i -1 i -1 -i -i 1 i"),
        ("chi16", "4 . . . . . . -i -1 -2i 1 i 1 2i -i -1 i"),
        ("chi9", "6 a . a' -a' . -a . . . . . . . . . ."),
        ("chi14", "6 -a . -a' a' . a . . . . . . . . . ."),
        ("chi15", "4 . . . . . . b -i . -1 -b' 1 . -b i b'"),
        ("chi21", "4 . . . . . . . 2i . 2 . -2 . . -2i ."),
        ("chi22", "4 . . . . . . -b -i . -1 b' 1 . b i -b'"),
    ],
    fusion: Some((
        "S5",
        &[
            "1a", "4a", "2a", "4a", "4a", "2a", "4a", "6a", "3a", "2b", "3a", "6a", "3a", "2b",
            "6a", "3a", "6a",
        ],
    )),
};

fn z(n: u64, k: i64) -> Cyclotomic {
    Cyclotomic::root_of_unity(n, k).expect("positive order")
}

/// Decodes a cell: `.`, an integer, `[k]i`, or a signed irrationality
/// `a`, `a'` (conjugate), `b`, `b'`.
fn cell(token: &str, alpha: &Cyclotomic, beta: &Cyclotomic) -> Cyclotomic {
    if token == "." {
        return Cyclotomic::zero();
    }
    let (neg, body) = match token.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, token),
    };
    let v = match body {
        "a" => alpha.clone(),
        "a'" => alpha.conj(),
        "b" => beta.clone(),
        "b'" => beta.conj(),
        _ => match body.strip_suffix('i') {
            Some(k) => {
                let k: i64 = if k.is_empty() { 1 } else { k.parse().expect("anchor literal") };
                z(4, 1).scale_int(k)
            }
            None => Cyclotomic::from_integer(body.parse().expect("anchor literal")),
        },
    };
    if neg {
        -v
    } else {
        v
    }
}

pub(crate) fn check(g: &GroupData) -> Result<(), GroupError> {
    let (anchor, alpha, beta) = match g.name.as_str() {
        "2.S5" => (&SPIN_2S5, &z(8, 3) - &z(8, 1), &z(12, 7) - &z(12, 11)),
        "GL(2,5)" => (
            &PART_GL25,
            &Cyclotomic::one() + &z(4, 1),
            &z(24, 17) - &z(24, 1),
        ),
        _ => return Ok(()),
    };
    let fail = |detail: String| GroupError::Validation {
        invariant: Invariant::Anchor,
        detail,
    };
    let mut idx = Vec::new();
    for &(id, order) in anchor.classes {
        let c = g
            .class_index(id)
            .ok_or_else(|| fail(format!("reference class {id} is missing")))?;
        if g.classes[c].order != order {
            return Err(fail(format!(
                "class {id} has order {}, reference {order}",
                g.classes[c].order
            )));
        }
        idx.push(c);
    }
    for &(chi, row) in anchor.rows {
        let ch = g
            .character(chi)
            .ok_or_else(|| fail(format!("reference character {chi} is missing")))?;
        for (token, (&c, &(id, _))) in row.split_whitespace().zip(idx.iter().zip(anchor.classes)) {
            let expect = cell(token, &alpha, &beta);
            if ch.values[c] != expect {
                return Err(fail(format!(
                    "{chi}({id}) = {} but the reference table has {expect}",
                    ch.values[c]
                )));
            }
        }
    }
    if let Some((qname, images)) = anchor.fusion {
        let link = g
            .quotient(qname)
            .ok_or_else(|| fail(format!("reference fusion into {qname} is missing")))?;
        for (&c, (&(id, _), &img)) in idx.iter().zip(anchor.classes.iter().zip(images)) {
            if link.fusion[c] != img {
                return Err(fail(format!(
                    "{id} fuses to {} but the reference table has {img}",
                    link.fusion[c]
                )));
            }
        }
    }
    Ok(())
}
