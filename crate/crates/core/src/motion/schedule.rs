//! Piecewise-linear car schedules with exact rational breakpoints.

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

pub type Q = Rational64;

pub fn q(n: i64) -> Q {
    Q::from_integer(n)
}

pub fn frac(n: i64, d: i64) -> Q {
    Q::new(n, d)
}

/// `x mod n` in `[0, n)`.
pub fn wrap(x: Q, n: Q) -> Q {
    let r = x - (x / n).floor() * n;
    if r.is_negative() {
        r + n
    } else {
        r
    }
}

pub(crate) mod qstr {
    use super::Q;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Q, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format!("{}/{}", x.numer(), x.denom()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
        let raw = String::deserialize(d)?;
        parse(&raw).ok_or_else(|| D::Error::custom(format!("bad rational {raw:?}")))
    }

    pub fn parse(raw: &str) -> Option<Q> {
        let (n, d) = match raw.split_once('/') {
            Some((n, d)) => (n.trim().parse().ok()?, d.trim().parse().ok()?),
            None => (raw.trim().parse().ok()?, 1),
        };
        (d != 0).then(|| Q::new(n, d))
    }
}

/// `pos(t) = pos0 + vel·(t − t0)` on `[t0, t1)`, read modulo the face length.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Piece {
    #[serde(with = "qstr")]
    pub t0: Q,
    #[serde(with = "qstr")]
    pub t1: Q,
    #[serde(with = "qstr")]
    pub pos0: Q,
    #[serde(with = "qstr")]
    pub vel: Q,
}

impl Piece {
    pub fn end_pos(&self) -> Q {
        self.pos0 + self.vel * (self.t1 - self.t0)
    }

    pub fn pos_at(&self, t: Q) -> Q {
        self.pos0 + self.vel * (t - self.t0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct CarSchedule {
    pub pieces: Vec<Piece>,
}

/// A piece confined to one dart (`at_corner = false`) or a stop at a corner.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Segment {
    pub t0: Q,
    pub t1: Q,
    /// Face position of the dart (moving) or of the corner (stopped at an integer).
    pub slot: usize,
    /// Offset along the dart at `t0`, in `[0, 1]`.
    pub x0: Q,
    pub vel: Q,
    pub at_corner: bool,
}

impl Segment {
    pub fn x_at(&self, t: Q) -> Q {
        self.x0 + self.vel * (t - self.t0)
    }
}

impl CarSchedule {
    /// Position in `[0, n)` at time `t` (taken modulo the circle length `l`).
    pub fn at(&self, t: Q, n: usize, l: Q) -> Option<Q> {
        let t = wrap(t, l);
        let piece = self.pieces.iter().find(|p| p.t0 <= t && t < p.t1)?;
        Some(wrap(piece.pos_at(t), q(n as i64)))
    }

    /// Breakpoints of the schedule.
    pub fn breakpoints(&self) -> Vec<Q> {
        self.pieces.iter().map(|p| p.t0).collect()
    }

    /// Splits every piece where it crosses an integer position.
    pub fn segments(&self, n: usize) -> Vec<Segment> {
        let nq = q(n as i64);
        let mut out = Vec::new();
        for p in &self.pieces {
            if p.vel.is_zero() || p.t0 >= p.t1 {
                let x = wrap(p.pos0, nq);
                let whole = x.is_integer();
                let slot = x.floor().to_integer() as usize;
                out.push(Segment { t0: p.t0, t1: p.t1, slot, x0: x - q(slot as i64), vel: Q::zero(), at_corner: whole });
                continue;
            }
            let mut t = p.t0;
            let mut x = p.pos0;
            let end = p.end_pos();
            while t < p.t1 {
                let next_int = x.floor() + q(1);
                let stop = if next_int < end { next_int } else { end };
                let t_next = if stop == end { p.t1 } else { p.t0 + (stop - p.pos0) / p.vel };
                let base = x.floor();
                let slot = base.to_integer().mod_floor(&(n as i64)) as usize;
                out.push(Segment { t0: t, t1: t_next, slot, x0: x - base, vel: p.vel, at_corner: false });
                t = t_next;
                x = stop;
            }
        }
        out
    }
}

/// Builds a schedule on `[0, l)` from legs `(duration, distance)` repeated until `l`.
pub fn from_legs(start: Q, legs: &[(Q, Q)], l: Q) -> CarSchedule {
    let mut pieces = Vec::new();
    let mut t = Q::zero();
    let mut pos = start;
    'outer: loop {
        for &(dur, dist) in legs {
            if t >= l {
                break 'outer;
            }
            if dur.is_zero() {
                pos += dist;
                continue;
            }
            pieces.push(Piece { t0: t, t1: t + dur, pos0: pos, vel: dist / dur });
            t += dur;
            pos += dist;
        }
    }
    CarSchedule { pieces }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn split_at_corners() {
        let s = from_legs(q(0), &[(frac(1, 4), q(2)), (frac(7, 4), q(1))], q(2));
        let segs = s.segments(3);
        assert_eq!(segs.len(), 3);
        assert_eq!(segs[0].t1, frac(1, 8));
        assert_eq!(segs[1].slot, 1);
        assert_eq!(segs[2].slot, 2);
        assert_eq!(s.at(q(2), 3, q(2)), Some(q(0)));
        assert_eq!(s.at(frac(1, 8), 3, q(2)), Some(q(1)));
    }

    #[test]
    fn rationals_as_strings() {
        let p = Piece { t0: q(0), t1: frac(1, 2), pos0: q(3), vel: q(2) };
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"t0":"0/1","t1":"1/2","pos0":"3/1","vel":"2/1"}"#);
        assert_eq!(serde_json::from_str::<Piece>(&s).unwrap(), p);
        assert_eq!(qstr::parse("5"), Some(q(5)));
        assert_eq!(qstr::parse("1/0"), None);
    }

    #[test]
    fn wrap_negative() {
        assert_eq!(wrap(frac(-1, 2), q(3)), frac(5, 2));
        assert_eq!(wrap(q(6), q(3)), q(0));
    }
}
