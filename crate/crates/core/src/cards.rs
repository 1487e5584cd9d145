//! The fixed card pool used by the reduction.
//!
//! Every card is described by a [`CardSpec`] whose behavior is one variant of
//! the closed [`EffectTag`] enumeration. The table is shipped as
//! `data/cards.json` and embedded at compile time.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::LazyLock;

use serde::{Deserialize, Serialize};

/// Raw card table exactly as shipped.
pub const CARDS_JSON: &str = include_str!("../data/cards.json");

/// Number of cards in the pool.
pub const CARD_COUNT: usize = 20;

/// Identifier of one of the pooled cards. Serialized as the card's display name.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum CardId {
    #[serde(rename = "Arcane Intellect")]
    ArcaneIntellect,
    #[serde(rename = "Backstab")]
    Backstab,
    #[serde(rename = "Blessed Champion")]
    BlessedChampion,
    #[serde(rename = "Charge")]
    Charge,
    #[serde(rename = "Demonfuse")]
    Demonfuse,
    #[serde(rename = "Flash Heal")]
    FlashHeal,
    #[serde(rename = "Floating Watcher")]
    FloatingWatcher,
    #[serde(rename = "Frost Nova")]
    FrostNova,
    #[serde(rename = "Gadgetzan Auctioneer")]
    GadgetzanAuctioneer,
    #[serde(rename = "Gahz'rilla")]
    Gahzrilla,
    #[serde(rename = "Innervate")]
    Innervate,
    #[serde(rename = "Leper Gnome")]
    LeperGnome,
    #[serde(rename = "Light's Justice")]
    LightsJustice,
    #[serde(rename = "Mark of Y'Shaarj")]
    MarkOfYShaarj,
    #[serde(rename = "Mind Control")]
    MindControl,
    #[serde(rename = "Mistress of Mixtures")]
    MistressOfMixtures,
    #[serde(rename = "Mortal Coil")]
    MortalCoil,
    #[serde(rename = "Novice Engineer")]
    NoviceEngineer,
    #[serde(rename = "Shadow Word: Death")]
    ShadowWordDeath,
    #[serde(rename = "Wee Spellstopper")]
    WeeSpellstopper,
}

impl CardId {
    /// All ids in table order (alphabetical by name).
    pub const ALL: [CardId; CARD_COUNT] = [
        CardId::ArcaneIntellect,
        CardId::Backstab,
        CardId::BlessedChampion,
        CardId::Charge,
        CardId::Demonfuse,
        CardId::FlashHeal,
        CardId::FloatingWatcher,
        CardId::FrostNova,
        CardId::GadgetzanAuctioneer,
        CardId::Gahzrilla,
        CardId::Innervate,
        CardId::LeperGnome,
        CardId::LightsJustice,
        CardId::MarkOfYShaarj,
        CardId::MindControl,
        CardId::MistressOfMixtures,
        CardId::MortalCoil,
        CardId::NoviceEngineer,
        CardId::ShadowWordDeath,
        CardId::WeeSpellstopper,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CardId::ArcaneIntellect => "Arcane Intellect",
            CardId::Backstab => "Backstab",
            CardId::BlessedChampion => "Blessed Champion",
            CardId::Charge => "Charge",
            CardId::Demonfuse => "Demonfuse",
            CardId::FlashHeal => "Flash Heal",
            CardId::FloatingWatcher => "Floating Watcher",
            CardId::FrostNova => "Frost Nova",
            CardId::GadgetzanAuctioneer => "Gadgetzan Auctioneer",
            CardId::Gahzrilla => "Gahz'rilla",
            CardId::Innervate => "Innervate",
            CardId::LeperGnome => "Leper Gnome",
            CardId::LightsJustice => "Light's Justice",
            CardId::MarkOfYShaarj => "Mark of Y'Shaarj",
            CardId::MindControl => "Mind Control",
            CardId::MistressOfMixtures => "Mistress of Mixtures",
            CardId::MortalCoil => "Mortal Coil",
            CardId::NoviceEngineer => "Novice Engineer",
            CardId::ShadowWordDeath => "Shadow Word: Death",
            CardId::WeeSpellstopper => "Wee Spellstopper",
        }
    }

    /// Position in [`CardId::ALL`]; used as a dense index.
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn spec(self) -> &'static CardSpec {
        &CARD_TABLE[self.index()]
    }
}

impl fmt::Display for CardId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, thiserror::Error)]
#[error("unknown card `{0}`")]
pub struct UnknownCard(pub String);

impl FromStr for CardId {
    type Err = UnknownCard;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CardId::ALL
            .iter()
            .copied()
            .find(|c| c.name() == s)
            .ok_or_else(|| UnknownCard(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CardKind {
    Minion,
    Spell,
    Weapon,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Tribe {
    #[default]
    None,
    Beast,
    Demon,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Keyword {
    Taunt,
    Charge,
}

/// One variant per distinct card behavior.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EffectTag {
    GainTwoMana,
    DrawTwo,
    FreezeEnemyMinions,
    DealTwoToUndamagedMinion,
    DealOneDrawIfKill,
    BuffDemonPlus3Plus3,
    BuffPlus2Plus2DrawIfBeast,
    DoubleAttack,
    GiveChargePlus2Attack,
    DestroyMinionAtk5Plus,
    TakeControlEnemyMinion,
    RestoreFiveHealth,
    BattlecryDrawOne,
    TriggerDrawOnFriendlySpell,
    TriggerAdjacentSpellImmunity,
    DeathrattleDamageEnemyHero2,
    DeathrattleRestore4EachHero,
    TriggerDoubleAttackOnDamage,
    NoEffect,
}

/// Immutable definition of a card.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CardSpec {
    pub name: String,
    pub cost: u32,
    pub kind: CardKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub attack: Option<u32>,
    /// Health for minions, durability for weapons.
    #[serde(rename = "health", default, skip_serializing_if = "Option::is_none")]
    pub health_or_durability: Option<u32>,
    pub tribe: Tribe,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub keywords: Vec<Keyword>,
    pub effect: EffectTag,
}

impl CardSpec {
    pub fn is_spell(&self) -> bool {
        self.kind == CardKind::Spell
    }

    pub fn has_keyword(&self, kw: Keyword) -> bool {
        self.keywords.contains(&kw)
    }
}

/// The table keyed by card id.
pub type CardDatabase = BTreeMap<CardId, CardSpec>;

static DATABASE: LazyLock<CardDatabase> =
    LazyLock::new(|| serde_json::from_str(CARDS_JSON).expect("embedded card table is valid JSON"));

static CARD_TABLE: LazyLock<Vec<CardSpec>> = LazyLock::new(|| {
    CardId::ALL
        .iter()
        .map(|id| DATABASE.get(id).cloned().expect("every card id has a spec"))
        .collect()
});

pub fn card_database() -> &'static CardDatabase {
    &DATABASE
}

/// Serialized form of the table, byte-identical to the shipped data file.
pub fn dump_json() -> String {
    let mut out = serde_json::to_string_pretty(card_database()).expect("card table serializes");
    out.push('\n');
    out
}
