//! Combinatorial labels of the 81 sixth characteristics (a, −aH), a ∈ (1/6){1,3,5}⁴.

use std::fmt;
use std::str::FromStr;

use crate::algebra::HermitianSignatureForm;
use crate::error::{Error, Result};
use crate::reflection::Pair;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CharacteristicLabel {
    /// (ij;kl;mn), pairs sorted by first letter
    TriplePairing([Pair; 3]),
    /// (i²j): `squared` appears twice
    Square { squared: u8, single: u8 },
    /// (ijk), sorted
    Triple([u8; 3]),
    /// (123456)
    Full,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClassTag {
    TriplePairing,
    Square,
    Triple,
    Full,
}

impl ClassTag {
    pub fn survives(&self) -> bool {
        matches!(self, ClassTag::TriplePairing)
    }
}

const TRIPLE_PAIRING_TABLE: [([u8; 6], [i64; 4]); 15] = [
    ([1, 2, 3, 4, 5, 6], [3, 3, 3, -1]),
    ([1, 2, 3, 5, 4, 6], [3, 1, 1, -3]),
    ([1, 2, 3, 6, 4, 5], [3, 1, -1, -3]),
    ([1, 3, 2, 4, 5, 6], [1, 1, 3, -3]),
    ([1, 3, 2, 5, 4, 6], [1, -1, 1, -1]),
    ([1, 3, 2, 6, 4, 5], [-1, 1, 1, 1]),
    ([1, 4, 2, 3, 5, 6], [1, -1, 3, -3]),
    ([1, 4, 2, 5, 3, 6], [1, 1, 1, -1]),
    ([1, 4, 2, 6, 3, 5], [1, 1, -1, -1]),
    ([1, 5, 2, 3, 4, 6], [1, 1, -1, 1]),
    ([1, 5, 2, 4, 3, 6], [1, -1, -1, 1]),
    ([1, 5, 2, 6, 3, 4], [1, 3, 1, -3]),
    ([1, 6, 2, 3, 4, 5], [1, 1, 1, 1]),
    ([1, 6, 2, 4, 3, 5], [1, -1, 1, 1]),
    ([1, 6, 2, 5, 3, 4], [1, 3, -1, -3]),
];

// (i²j) with i < j
const SQUARE_TABLE: [(u8, u8, [i64; 4]); 15] = [
    (1, 2, [1, 3, 3, 3]),
    (1, 3, [5, 1, 3, 5]),
    (1, 4, [5, 5, 3, 5]),
    (1, 5, [5, 3, 1, 1]),
    (1, 6, [5, 3, 5, 1]),
    (2, 3, [1, 1, 3, 5]),
    (2, 4, [1, 5, 3, 5]),
    (2, 5, [1, 3, 1, 1]),
    (2, 6, [1, 3, 5, 1]),
    (3, 4, [3, 1, 3, 3]),
    (3, 5, [3, 5, 1, 5]),
    (3, 6, [3, 5, 5, 5]),
    (4, 5, [3, 1, 1, 5]),
    (4, 6, [3, 1, 5, 5]),
    (5, 6, [3, 3, 1, 3]),
];

// (1jk); the complementary triple is −a
const TRIPLE_TABLE: [([u8; 3], [i64; 4]); 10] = [
    ([1, 2, 3], [3, 1, 3, 5]),
    ([1, 2, 4], [3, 5, 3, 5]),
    ([1, 2, 5], [3, 3, 1, 1]),
    ([1, 2, 6], [3, 3, 5, 1]),
    ([1, 3, 4], [1, 3, 3, 1]),
    ([1, 3, 5], [1, 1, 1, 3]),
    ([1, 3, 6], [1, 1, 5, 3]),
    ([1, 4, 5], [1, 5, 1, 3]),
    ([1, 4, 6], [1, 5, 5, 3]),
    ([1, 5, 6], [1, 3, 3, 5]),
];

const FULL_REP: [i64; 4] = [3, 3, 3, 3];

fn neg(a: [i64; 4]) -> [i64; 4] {
    a.map(|x| -x)
}

impl CharacteristicLabel {
    /// Builds a perfect-matching label from three pairs in any order.
    pub fn triple_pairing(pairs: [(u8, u8); 3]) -> Result<Self> {
        let mut ps = [Pair(0, 0); 3];
        for (k, &(i, j)) in pairs.iter().enumerate() {
            ps[k] = Pair::new(i, j)?;
        }
        ps.sort();
        let mut letters: Vec<u8> = ps.iter().flat_map(|p| [p.0, p.1]).collect();
        letters.sort();
        if letters != [1, 2, 3, 4, 5, 6] {
            return Err(Error::Input(format!("pairs {pairs:?} do not partition 1..6")));
        }
        Ok(CharacteristicLabel::TriplePairing(ps))
    }

    pub fn square(squared: u8, single: u8) -> Result<Self> {
        if !(1..=6).contains(&squared) || !(1..=6).contains(&single) || squared == single {
            return Err(Error::Input(format!("invalid square label ({squared},{single})")));
        }
        Ok(CharacteristicLabel::Square { squared, single })
    }

    pub fn triple(letters: [u8; 3]) -> Result<Self> {
        let mut l = letters;
        l.sort();
        if l[0] < 1 || l[2] > 6 || l[0] == l[1] || l[1] == l[2] {
            return Err(Error::Input(format!("invalid triple label {letters:?}")));
        }
        Ok(CharacteristicLabel::Triple(l))
    }

    pub fn class(&self) -> ClassTag {
        match self {
            CharacteristicLabel::TriplePairing(_) => ClassTag::TriplePairing,
            CharacteristicLabel::Square { .. } => ClassTag::Square,
            CharacteristicLabel::Triple(_) => ClassTag::Triple,
            CharacteristicLabel::Full => ClassTag::Full,
        }
    }

    /// The fifteen perfect matchings in lexicographic order.
    pub fn triple_pairings() -> Vec<CharacteristicLabel> {
        TRIPLE_PAIRING_TABLE
            .iter()
            .map(|(l, _)| CharacteristicLabel::TriplePairing([Pair(l[0], l[1]), Pair(l[2], l[3]), Pair(l[4], l[5])]))
            .collect()
    }

    /// All 66 labels: 15 matchings, 30 squares, 20 triples, the full set.
    pub fn all() -> Vec<CharacteristicLabel> {
        let mut out = Self::triple_pairings();
        for i in 1..=6u8 {
            for j in 1..=6u8 {
                if i != j {
                    out.push(CharacteristicLabel::Square { squared: i, single: j });
                }
            }
        }
        for i in 1..=6u8 {
            for j in i + 1..=6 {
                for k in j + 1..=6 {
                    out.push(CharacteristicLabel::Triple([i, j, k]));
                }
            }
        }
        out.push(CharacteristicLabel::Full);
        out
    }

    pub fn pairs(&self) -> Option<[Pair; 3]> {
        match self {
            CharacteristicLabel::TriplePairing(p) => Some(*p),
            _ => None,
        }
    }
}

impl fmt::Display for CharacteristicLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CharacteristicLabel::TriplePairing([a, b, c]) => write!(f, "({a};{b};{c})"),
            CharacteristicLabel::Square { squared, single } if squared < single => write!(f, "({squared}^2{single})"),
            CharacteristicLabel::Square { squared, single } => write!(f, "({single}{squared}^2)"),
            CharacteristicLabel::Triple([i, j, k]) => write!(f, "({i}{j}{k})"),
            CharacteristicLabel::Full => write!(f, "(123456)"),
        }
    }
}

fn digit(c: char) -> Result<u8> {
    c.to_digit(10).filter(|d| (1..=6).contains(d)).map(|d| d as u8).ok_or_else(|| Error::Input(format!("bad letter '{c}'")))
}

impl FromStr for CharacteristicLabel {
    type Err = Error;

    /// Accepts `12;34;56`, `1^22`, `1²2`, `12^2`, `12²`, `123`, `123456`, optionally in parentheses.
    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.trim().trim_start_matches('(').trim_end_matches(')').replace('²', "^2").replace(' ', "");
        if t.contains(';') {
            let parts: Vec<&str> = t.split(';').collect();
            if parts.len() != 3 || parts.iter().any(|p| p.chars().count() != 2) {
                return Err(Error::Input(format!("malformed label '{s}'")));
            }
            let mut pairs = [(0, 0); 3];
            for (k, p) in parts.iter().enumerate() {
                let cs: Vec<char> = p.chars().collect();
                pairs[k] = (digit(cs[0])?, digit(cs[1])?);
            }
            return Self::triple_pairing(pairs);
        }
        if let Some(pos) = t.find("^2") {
            let cs: Vec<char> = t.replace("^2", "").chars().collect();
            if cs.len() != 2 {
                return Err(Error::Input(format!("malformed label '{s}'")));
            }
            // the letter before "^2" is the squared one
            return if pos == 1 { Self::square(digit(cs[0])?, digit(cs[1])?) } else { Self::square(digit(cs[1])?, digit(cs[0])?) };
        }
        let ds: Vec<u8> = t.chars().map(digit).collect::<Result<_>>()?;
        match ds.len() {
            3 => Self::triple([ds[0], ds[1], ds[2]]),
            6 => {
                let mut sorted = ds.clone();
                sorted.sort();
                if sorted == [1, 2, 3, 4, 5, 6] {
                    Ok(CharacteristicLabel::Full)
                } else {
                    Err(Error::Input(format!("malformed label '{s}'")))
                }
            }
            _ => Err(Error::Input(format!("malformed label '{s}'"))),
        }
    }
}

/// a = six_a / 6 with b = −aH. The stored representative is the one printed in the label
/// table; it is not reduced mod 6.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SixthCharacteristic {
    pub six_a: [i64; 4],
}

impl SixthCharacteristic {
    pub fn new(six_a: [i64; 4]) -> Result<Self> {
        if six_a.iter().any(|x| x.rem_euclid(2) == 0) {
            return Err(Error::Input(format!("6a = {six_a:?} must have odd entries")));
        }
        Ok(Self { six_a })
    }

    pub fn a(&self) -> [f64; 4] {
        self.six_a.map(|x| x as f64 / 6.0)
    }

    pub fn b(&self) -> [f64; 4] {
        let h = HermitianSignatureForm::DIAG;
        let a = self.a();
        [0, 1, 2, 3].map(|i| -a[i] * h[i] as f64)
    }

    pub fn negate(&self) -> Self {
        Self { six_a: neg(self.six_a) }
    }

    /// 6a mod 6, the key of the bijection with the 81 classes mod Z⁸.
    pub fn key(&self) -> [i64; 4] {
        self.six_a.map(|x| x.rem_euclid(6))
    }

    /// (6a)H ᵗ(6a) mod 24.
    pub fn residue(&self) -> i64 {
        let h = HermitianSignatureForm::DIAG;
        (0..4).map(|i| self.six_a[i] * self.six_a[i] * h[i]).sum::<i64>().rem_euclid(24)
    }

    pub fn to_vector(&self) -> crate::symplectic::CharacteristicVector {
        crate::symplectic::CharacteristicVector::from_sixths(self.six_a)
    }
}

/// Class by the residue (6a)H ᵗ(6a) mod 24: 2 for matchings, 10 for squares, 18 for triples.
/// (123456) also has residue 18 and is recognised by 6a ≡ (3,3,3,3) mod 6.
pub fn classify(c: &SixthCharacteristic) -> Result<ClassTag> {
    if c.key() == [3, 3, 3, 3] {
        return Ok(ClassTag::Full);
    }
    match c.residue() {
        2 => Ok(ClassTag::TriplePairing),
        10 => Ok(ClassTag::Square),
        18 => Ok(ClassTag::Triple),
        r => Err(Error::Input(format!("6a = {:?} has residue {r} mod 24", c.six_a))),
    }
}

pub fn characteristic_for_label(label: &CharacteristicLabel) -> Result<SixthCharacteristic> {
    let six_a = match *label {
        CharacteristicLabel::TriplePairing(ps) => {
            let key = [ps[0].0, ps[0].1, ps[1].0, ps[1].1, ps[2].0, ps[2].1];
            TRIPLE_PAIRING_TABLE
                .iter()
                .find(|(l, _)| *l == key)
                .map(|(_, a)| *a)
                .ok_or_else(|| Error::Input(format!("malformed label {label}")))?
        }
        CharacteristicLabel::Square { squared, single } => {
            let (i, j) = (squared.min(single), squared.max(single));
            let a = SQUARE_TABLE
                .iter()
                .find(|(p, q, _)| (*p, *q) == (i, j))
                .map(|(_, _, a)| *a)
                .ok_or_else(|| Error::Input(format!("malformed label {label}")))?;
            if squared < single {
                a
            } else {
                neg(a)
            }
        }
        CharacteristicLabel::Triple(t) => {
            if t[0] == 1 {
                TRIPLE_TABLE.iter().find(|(l, _)| *l == t).map(|(_, a)| *a).ok_or_else(|| Error::Input(format!("malformed label {label}")))?
            } else {
                let comp: Vec<u8> = (1..=6).filter(|x| !t.contains(x)).collect();
                let comp = [comp[0], comp[1], comp[2]];
                neg(TRIPLE_TABLE.iter().find(|(l, _)| *l == comp).map(|(_, a)| *a).ok_or_else(|| Error::Input(format!("malformed label {label}")))?)
            }
        }
        CharacteristicLabel::Full => FULL_REP,
    };
    SixthCharacteristic::new(six_a)
}

/// One of the 81 characteristics together with its label; matchings occur with both signs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LabeledCharacteristic {
    pub label: CharacteristicLabel,
    /// −1 for the negated representative of a matching label, else +1
    pub sign: i8,
    pub characteristic: SixthCharacteristic,
}

impl fmt::Display for LabeledCharacteristic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign < 0 {
            write!(f, "-{}", self.label)
        } else {
            write!(f, "{}", self.label)
        }
    }
}

/// The 81 labelled characteristics: 30 signed matchings, 30 squares, 20 triples, (123456).
pub fn all_labeled_characteristics() -> Vec<LabeledCharacteristic> {
    let mut out = Vec::with_capacity(81);
    for label in CharacteristicLabel::all() {
        let c = characteristic_for_label(&label).expect("table label");
        out.push(LabeledCharacteristic { label, sign: 1, characteristic: c });
        if label.class() == ClassTag::TriplePairing {
            out.push(LabeledCharacteristic { label, sign: -1, characteristic: c.negate() });
        }
    }
    out
}

/// Inverse of the bijection: the labelled characteristic congruent to `six_a` mod 6.
pub fn label_for_key(six_a: [i64; 4]) -> Option<LabeledCharacteristic> {
    let key = six_a.map(|x| x.rem_euclid(6));
    all_labeled_characteristics().into_iter().find(|l| l.characteristic.key() == key)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn table_examples() {
        let l: CharacteristicLabel = "12;34;56".parse().unwrap();
        assert_eq!(characteristic_for_label(&l).unwrap().six_a, [3, 3, 3, -1]);
        let l: CharacteristicLabel = "(1^22)".parse().unwrap();
        assert_eq!(characteristic_for_label(&l).unwrap().six_a, [1, 3, 3, 3]);
        let l: CharacteristicLabel = "123".parse().unwrap();
        assert_eq!(characteristic_for_label(&l).unwrap().six_a, [3, 1, 3, 5]);
        let l: CharacteristicLabel = "123456".parse().unwrap();
        assert_eq!(characteristic_for_label(&l).unwrap().six_a, [3, 3, 3, 3]);
    }

    #[test]
    fn parse_variants_and_errors() {
        let a: CharacteristicLabel = "1²2".parse().unwrap();
        assert_eq!(a, CharacteristicLabel::Square { squared: 1, single: 2 });
        let b: CharacteristicLabel = "(12^2)".parse().unwrap();
        assert_eq!(b, CharacteristicLabel::Square { squared: 2, single: 1 });
        let c: CharacteristicLabel = "56;12;34".parse().unwrap();
        assert_eq!(c.to_string(), "(12;34;56)");
        assert_eq!("(456)".parse::<CharacteristicLabel>().unwrap(), CharacteristicLabel::Triple([4, 5, 6]));
        for bad in ["12;13;56", "12;34", "1^21", "17;23;45", "1234", "ab"] {
            assert!(bad.parse::<CharacteristicLabel>().is_err(), "{bad}");
        }
    }

    #[test]
    fn display_roundtrip() {
        for l in CharacteristicLabel::all() {
            assert_eq!(l.to_string().parse::<CharacteristicLabel>().unwrap(), l);
        }
    }

    #[test]
    fn residue_examples() {
        let r = |a| SixthCharacteristic::new(a).unwrap().residue();
        assert_eq!(r([3, 3, 3, -1]), 2);
        assert_eq!(r([1, 3, 3, 3]), 10);
        assert_eq!(r([3, 3, 3, 3]), 18);
    }

    #[test]
    fn bijection_onto_81_keys() {
        let all = all_labeled_characteristics();
        assert_eq!(all.len(), 81);
        let keys: HashSet<[i64; 4]> = all.iter().map(|l| l.characteristic.key()).collect();
        assert_eq!(keys.len(), 81);
        for k in &keys {
            assert!(k.iter().all(|x| x % 2 == 1));
        }
    }

    #[test]
    fn classes_match_labels() {
        let mut counts = std::collections::HashMap::new();
        for l in all_labeled_characteristics() {
            let class = classify(&l.characteristic).unwrap();
            assert_eq!(class, l.label.class(), "{l}");
            *counts.entry(class).or_insert(0) += 1;
        }
        assert_eq!(counts[&ClassTag::TriplePairing], 30);
        assert_eq!(counts[&ClassTag::Square], 30);
        assert_eq!(counts[&ClassTag::Triple], 20);
        assert_eq!(counts[&ClassTag::Full], 1);
    }

    #[test]
    fn residue_is_invariant_under_reduction_and_sign() {
        for l in all_labeled_characteristics() {
            let c = l.characteristic;
            let reduced = SixthCharacteristic::new(c.key()).unwrap();
            assert_eq!(c.residue(), reduced.residue());
            assert_eq!(c.residue(), c.negate().residue());
        }
    }

    #[test]
    fn key_lookup() {
        let l = label_for_key([3, 3, 3, 5]).unwrap();
        assert_eq!(l.label.to_string(), "(12;34;56)");
        assert_eq!(l.sign, 1);
        assert!(label_for_key([2, 3, 3, 5]).is_none());
    }

    #[test]
    fn even_entries_are_rejected() {
        assert!(SixthCharacteristic::new([2, 1, 1, 1]).is_err());
    }
}
