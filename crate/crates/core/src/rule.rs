//! Wolfram rule encoding, tags, and the inversion/reflection symmetries.
//!
//! A rule is the 8-bit truth table `a_7 … a_0` where `a_j` is the new value of
//! the centre cell for the neighbourhood `j = 4·left + 2·centre + right`.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::Error;

/// A Wolfram rule number in `0..=255`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rule(pub u8);

/// Behaviour of the centre cell when both neighbours are held fixed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    /// Both values go to 1.
    One,
    /// Both values go to 0.
    Zero,
    /// Value kept.
    Keep,
    /// Value flipped.
    Flip,
}

impl Symbol {
    fn from_outputs(on_zero: bool, on_one: bool) -> Self {
        match (on_zero, on_one) {
            (false, false) => Symbol::Zero,
            (true, true) => Symbol::One,
            (false, true) => Symbol::Keep,
            (true, false) => Symbol::Flip,
        }
    }

    /// `(f(0), f(1))` for this symbol.
    fn outputs(self) -> (bool, bool) {
        match self {
            Symbol::Zero => (false, false),
            Symbol::One => (true, true),
            Symbol::Keep => (false, true),
            Symbol::Flip => (true, false),
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Symbol::One => '1',
            Symbol::Zero => '0',
            Symbol::Keep => '-',
            Symbol::Flip => 'x',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        Some(match c {
            '1' => Symbol::One,
            '0' => Symbol::Zero,
            '-' => Symbol::Keep,
            'x' => Symbol::Flip,
            _ => return None,
        })
    }

    /// Swaps `0` and `1`, fixes `-` and `x`.
    pub fn swap_constants(self) -> Self {
        match self {
            Symbol::One => Symbol::Zero,
            Symbol::Zero => Symbol::One,
            s => s,
        }
    }

    pub fn is_constant(self) -> bool {
        matches!(self, Symbol::One | Symbol::Zero)
    }
}

/// Four-symbol tag `t_3 t_2 t_1 t_0`.
///
/// `symbols[c]` is the symbol for neighbour context `c = 2·left + right`, so
/// `symbols[0]` is `t_0` (both neighbours 0) and `symbols[3]` is `t_3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Tag {
    pub symbols: [Symbol; 4],
}

impl Tag {
    pub fn symbol(&self, context: usize) -> Symbol {
        self.symbols[context]
    }
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in self.symbols.iter().rev() {
            write!(f, "{}", s.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for Tag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let chars: Vec<char> = s.chars().collect();
        if chars.len() != 4 {
            return Err(Error::InvalidTag);
        }
        let mut symbols = [Symbol::Keep; 4];
        for (k, c) in chars.iter().enumerate() {
            symbols[3 - k] = Symbol::from_char(*c).ok_or(Error::InvalidTag)?;
        }
        Ok(Tag { symbols })
    }
}

/// Truth-table index for neighbour context `c = 2·left + right` and centre `x`.
#[inline]
const fn table_index(context: usize, centre: usize) -> usize {
    ((context >> 1) << 2) | (centre << 1) | (context & 1)
}

impl Rule {
    /// Truth-table bit `a_j`.
    #[inline]
    pub fn bit(self, j: usize) -> bool {
        (self.0 >> j) & 1 == 1
    }

    /// New centre value for the triple `(left, centre, right)`.
    #[inline]
    pub fn output(self, left: bool, centre: bool, right: bool) -> bool {
        self.bit(((left as usize) << 2) | ((centre as usize) << 1) | right as usize)
    }

    pub fn tag(self) -> Tag {
        let mut symbols = [Symbol::Keep; 4];
        for (c, slot) in symbols.iter_mut().enumerate() {
            *slot = Symbol::from_outputs(self.bit(table_index(c, 0)), self.bit(table_index(c, 1)));
        }
        Tag { symbols }
    }

    pub fn from_tag(tag: Tag) -> Rule {
        let mut code = 0u8;
        for c in 0..4 {
            let (z, o) = tag.symbols[c].outputs();
            code |= (z as u8) << table_index(c, 0);
            code |= (o as u8) << table_index(c, 1);
        }
        Rule(code)
    }

    /// Swap the roles of 0 and 1: `a'_i = 1 - a_{7-i}`.
    pub fn invert(self) -> Rule {
        Rule(!self.0.reverse_bits())
    }

    /// Swap left and right: exchanges `a_1 ↔ a_4` and `a_3 ↔ a_6`.
    pub fn reflect(self) -> Rule {
        let k = self.0;
        let keep = k & 0b1010_0101;
        let swapped = ((k >> 1) & 1) << 4
            | ((k >> 4) & 1) << 1
            | ((k >> 3) & 1) << 6
            | ((k >> 6) & 1) << 3;
        Rule(keep | swapped)
    }

    pub fn invert_reflect(self) -> Rule {
        self.invert().reflect()
    }

    /// The class `{k, inv k, refl k, inv refl k}`, sorted and deduplicated.
    pub fn equivalence_class(self) -> EquivalenceClass {
        let mut members = alloc::vec![self, self.invert(), self.reflect(), self.invert_reflect()];
        members.sort();
        members.dedup();
        EquivalenceClass { members }
    }

    /// All symbols are `-` or `x`, i.e. every local function is a bijection.
    pub fn is_invertible(self) -> bool {
        !self.tag().symbols.iter().any(|s| s.is_constant())
    }

    /// Replace every `0` and `1` in the tag by `-`.
    pub fn invertibilize(self) -> Rule {
        let mut tag = self.tag();
        for s in tag.symbols.iter_mut() {
            if s.is_constant() {
                *s = Symbol::Keep;
            }
        }
        Rule::from_tag(tag)
    }

    pub fn is_omega_independent(self) -> bool {
        OMEGA_INDEPENDENT.binary_search(&self.0).is_ok()
    }

    /// The member of [`REPRESENTATIVES`] dynamically equivalent to this rule.
    pub fn representative(self) -> Option<Rule> {
        self.equivalence_class()
            .members
            .into_iter()
            .find(|r| REPRESENTATIVES.binary_search(&r.0).is_ok())
    }

    pub fn all() -> impl Iterator<Item = Rule> {
        (0..=255u8).map(Rule)
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for Rule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let v: u32 = s.trim().parse().map_err(|_| Error::InvalidRule)?;
        u8::try_from(v).map(Rule).map_err(|_| Error::InvalidRule)
    }
}

/// A set of dynamically equivalent rules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceClass {
    pub members: Vec<Rule>,
}

impl EquivalenceClass {
    pub fn contains(&self, rule: Rule) -> bool {
        self.members.contains(&rule)
    }
}

/// Partition of all 256 rules into inversion/reflection classes, ordered by
/// smallest member.
pub fn equivalence_classes() -> Vec<EquivalenceClass> {
    let mut seen = [false; 256];
    let mut classes = Vec::new();
    for rule in Rule::all() {
        if seen[rule.0 as usize] {
            continue;
        }
        let class = rule.equivalence_class();
        for m in &class.members {
            seen[m.0 as usize] = true;
        }
        classes.push(class);
    }
    classes
}

/// The rules classified as update-order independent for every ring size above
/// 3. Periodic states agree across all simple orders; for a few members they
/// still change under fair orders that repeat vertices.
pub const OMEGA_INDEPENDENT: [u8; 104] = [
    0, 1, 4, 5, 8, 9, 12, 13, 28, 29, 32, 40, 51, 54, 57, 60, 64, 65, 68, 69, 70, 71, 72, 73, 76,
    77, 78, 79, 92, 93, 94, 95, 96, 99, 102, 105, 108, 109, 110, 111, 124, 125, 126, 127, 128, 129,
    132, 133, 136, 137, 140, 141, 147, 150, 152, 153, 156, 157, 160, 164, 168, 172, 184, 188, 192,
    193, 194, 195, 196, 197, 198, 199, 200, 201, 202, 204, 205, 206, 207, 216, 218, 220, 221, 222,
    223, 224, 226, 228, 230, 232, 234, 235, 236, 237, 238, 239, 248, 249, 250, 251, 252, 253, 254,
    255,
];

/// One rule from each equivalence class meeting [`OMEGA_INDEPENDENT`].
pub const REPRESENTATIVES: [u8; 41] = [
    0, 1, 4, 5, 8, 9, 12, 13, 28, 29, 32, 40, 51, 54, 57, 60, 72, 73, 76, 77, 105, 128, 129, 132,
    133, 136, 137, 140, 141, 150, 152, 156, 160, 164, 168, 172, 184, 200, 201, 204, 232,
];

/// Representatives whose dynamics group is trivial.
pub const TRIVIAL_REPRESENTATIVES: [u8; 26] = [
    0, 8, 32, 40, 128, 136, 160, 168, 152, 184, 4, 12, 132, 140, 5, 13, 133, 141, 164, 172, 77, 76,
    72, 200, 232, 204,
];

/// Representatives that are invertible.
pub const INVERTIBLE_REPRESENTATIVES: [u8; 9] = [204, 51, 60, 150, 105, 156, 201, 57, 54];

/// Non-invertible representatives with nontrivial dynamics.
pub const EXCEPTIONAL_REPRESENTATIVES: [u8; 7] = [28, 29, 1, 9, 129, 137, 73];

pub fn omega_independent_rules() -> impl Iterator<Item = Rule> {
    OMEGA_INDEPENDENT.iter().map(|&k| Rule(k))
}

pub fn representatives() -> impl Iterator<Item = Rule> {
    REPRESENTATIVES.iter().map(|&k| Rule(k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn tag(k: u8) -> alloc::string::String {
        Rule(k).tag().to_string()
    }

    #[test]
    fn tags_from_tables() {
        assert_eq!(tag(29), "0x-1");
        assert_eq!(tag(204), "----");
        assert_eq!(tag(150), "-xx-");
        assert_eq!(tag(51), "xxxx");
        assert_eq!(tag(156), "-x--");
        assert_eq!(tag(232), "1--0");
        assert_eq!(tag(57), "xx-x");
        assert_eq!(tag(73), "0--x");
    }

    #[test]
    fn symmetries() {
        assert_eq!(Rule(28).reflect(), Rule(70));
        assert_eq!(Rule(28).invert(), Rule(199));
        assert_eq!(Rule(28).invert_reflect(), Rule(157));
        assert_eq!(Rule(60).invert(), Rule(195));
        assert_eq!(Rule(60).reflect(), Rule(102));
        assert_eq!(Rule(204).invert(), Rule(204));
        assert_eq!(Rule(29).invert(), Rule(71));
        assert_eq!(Rule(29).reflect(), Rule(71));
        assert_eq!(Rule(29).invert_reflect(), Rule(29));
    }

    #[test]
    fn tag_level_symmetries() {
        // reflection swaps t_1 and t_2
        assert_eq!(
            Rule::from_tag("0-1x".parse().unwrap()).reflect().tag().to_string(),
            "01-x"
        );
        // inversion reverses and swaps constants
        assert_eq!(
            Rule::from_tag("0-1x".parse().unwrap()).invert().tag().to_string(),
            "x0-1"
        );
    }

    #[test]
    fn class_counts() {
        let classes = equivalence_classes();
        assert_eq!(classes.len(), 88);
        let meeting = classes
            .iter()
            .filter(|c| c.members.iter().any(|r| r.is_omega_independent()))
            .count();
        assert_eq!(meeting, 41);
        assert_eq!(Rule(204).equivalence_class().members, alloc::vec![Rule(204)]);
        assert_eq!(omega_independent_rules().count(), 104);
    }

    #[test]
    fn representatives_cover_the_list() {
        for k in omega_independent_rules() {
            assert!(k.representative().is_some(), "{k}");
        }
        for r in representatives() {
            assert!(r.is_omega_independent());
            assert_eq!(r.representative(), Some(r));
        }
        let mut split: Vec<u8> = TRIVIAL_REPRESENTATIVES
            .iter()
            .chain(INVERTIBLE_REPRESENTATIVES.iter())
            .chain(EXCEPTIONAL_REPRESENTATIVES.iter())
            .copied()
            .collect();
        split.sort();
        split.dedup();
        assert_eq!(split, REPRESENTATIVES.to_vec());
    }

    #[test]
    fn membership() {
        assert!(Rule(110).is_omega_independent());
        assert!(!Rule(30).is_omega_independent());
    }

    #[test]
    fn invertibility() {
        assert_eq!(Rule(28).invertibilize(), Rule(156));
        assert_eq!(Rule(73).invertibilize(), Rule(201));
        assert_eq!(Rule(137).invertibilize(), Rule(201));
        assert_eq!(Rule(204).invertibilize(), Rule(204));
        assert!(Rule(51).is_invertible());
        assert!(Rule(156).is_invertible());
        assert!(!Rule(232).is_invertible());
    }

    #[test]
    fn parse() {
        assert_eq!("137".parse::<Rule>().unwrap(), Rule(137));
        assert!("300".parse::<Rule>().is_err());
        assert!("x".parse::<Rule>().is_err());
        assert!("0x-".parse::<Tag>().is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn involutions_commute(k in 0u8..=255) {
                let r = Rule(k);
                prop_assert_eq!(r.invert().invert(), r);
                prop_assert_eq!(r.reflect().reflect(), r);
                prop_assert_eq!(r.invert().reflect(), r.reflect().invert());
            }

            #[test]
            fn tag_round_trip(k in 0u8..=255) {
                let r = Rule(k);
                prop_assert_eq!(Rule::from_tag(r.tag()), r);
                let s = r.tag().to_string();
                prop_assert_eq!(s.parse::<Tag>().unwrap(), r.tag());
            }

            #[test]
            fn tag_descriptions_of_symmetries(k in 0u8..=255) {
                let t = Rule(k).tag().symbols;
                let refl = Rule(k).reflect().tag().symbols;
                prop_assert_eq!(refl, [t[0], t[2], t[1], t[3]]);
                let inv = Rule(k).invert().tag().symbols;
                let expect = [
                    t[3].swap_constants(),
                    t[2].swap_constants(),
                    t[1].swap_constants(),
                    t[0].swap_constants(),
                ];
                prop_assert_eq!(inv, expect);
            }

            #[test]
            fn independence_closed_under_symmetry(k in 0u8..=255) {
                let r = Rule(k);
                prop_assert_eq!(r.is_omega_independent(), r.invert().is_omega_independent());
                prop_assert_eq!(r.is_omega_independent(), r.reflect().is_omega_independent());
            }

            #[test]
            fn invertibilize_idempotent(k in 0u8..=255) {
                let r = Rule(k);
                let v = r.invertibilize();
                prop_assert!(v.is_invertible());
                prop_assert_eq!(v.invertibilize(), v);
                prop_assert_eq!(v == r, r.is_invertible());
            }
        }
    }
}
