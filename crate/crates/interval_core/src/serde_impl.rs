use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::hexfloat::{from_hex, to_hex};
use crate::interval::Interval;

#[derive(Serialize, Deserialize)]
struct HexPair {
    lo: String,
    hi: String,
}

impl Serialize for Interval {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        HexPair {
            lo: to_hex(self.lo()),
            hi: to_hex(self.hi()),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Interval {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Interval, D::Error> {
        let p = HexPair::deserialize(d)?;
        let lo = from_hex(&p.lo).map_err(D::Error::custom)?;
        let hi = from_hex(&p.hi).map_err(D::Error::custom)?;
        Interval::try_new(lo, hi).map_err(D::Error::custom)
    }
}
