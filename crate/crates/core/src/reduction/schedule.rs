//! Per-turn deck scheduling.
//!
//! Within a turn the active player draws continuously: their Auctioneer draws
//! one card per spell, plus whatever the card itself draws. The builder tracks
//! mana and the number of drawn cards whose identity is not yet fixed
//! (`pending`); a payload card is placed in the deck at the next free draw
//! slot when it is played. Around the payload it inserts
//!
//! * Innervate before a card the player cannot yet afford,
//! * Arcane Intellect (net two extra draws) before a card that would leave
//!   nothing in hand to continue the chain,
//! * Light's Justice to soak up surplus draws and empty the hand at turn end.
//!
//! Fillers are played the moment they are drawn. The emitted steps are
//! replayed on the engine by the compiler, so any gap between this model and
//! the rules shows up as a desync rather than a silently broken deck.

use crate::cards::{CardId, CardKind};
use crate::engine::{MAX_HAND, MAX_MANA};
use crate::error::ReductionError;

use super::line::{ForceTag, Guard, LineStep, Step, Target};

/// Friendly spells each trigger one Auctioneer draw.
const AUCTIONEERS: u32 = 1;

/// Cards drawn by resolving `card`, given `extra` context-dependent draws
/// (Mark on a beast, Mortal Coil kill).
pub fn draws_of(card: CardId, extra: u32) -> u32 {
    let spec = card.spec();
    let own = match card {
        CardId::ArcaneIntellect => 2,
        CardId::NoviceEngineer => 1,
        _ => 0,
    };
    let trigger = if spec.kind == CardKind::Spell {
        AUCTIONEERS
    } else {
        0
    };
    own + trigger + extra
}

#[derive(Clone, Debug)]
pub struct TurnBuilder {
    turn: u32,
    mana: u32,
    pending: u32,
    held: Vec<CardId>,
    deck: Vec<CardId>,
    steps: Vec<LineStep>,
}

/// One scheduled turn: the deck segment and the steps that play it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TurnSchedule {
    pub deck: Vec<CardId>,
    pub steps: Vec<LineStep>,
}

impl TurnBuilder {
    /// Start of a turn with a full refill and the turn's first draw.
    pub fn new(turn: u32) -> TurnBuilder {
        TurnBuilder {
            turn,
            mana: MAX_MANA,
            pending: 1,
            held: Vec::new(),
            deck: Vec::new(),
            steps: Vec::new(),
        }
    }

    fn infeasible(&self, reason: impl Into<String>) -> ReductionError {
        ReductionError::ScheduleInfeasible {
            turn: self.turn,
            step: self.steps.len(),
            reason: reason.into(),
        }
    }

    fn push_step(&mut self, step: Step, tag: Option<ForceTag>) {
        self.steps.push(LineStep {
            turn: self.turn,
            step,
            guard: None,
            tag,
            optional: false,
        });
    }

    /// Places `card` at the next draw slot and resolves it.
    fn resolve(&mut self, card: CardId, extra: u32) -> Result<(), ReductionError> {
        let cost = card.spec().cost;
        if self.pending == 0 {
            return Err(self.infeasible(format!("{card} is never drawn: the draw chain stalled")));
        }
        if cost > self.mana {
            return Err(self.infeasible(format!("{card} costs {cost} with {} mana", self.mana)));
        }
        self.pending -= 1;
        self.mana -= cost;
        if card == CardId::Innervate {
            self.mana = (self.mana + 2).min(MAX_MANA);
        }
        self.deck.push(card);
        self.pending += draws_of(card, extra);
        if self.pending as usize + self.held.len() > MAX_HAND {
            return Err(self.infeasible("hand would overflow"));
        }
        Ok(())
    }

    fn filler(&mut self, card: CardId) -> Result<(), ReductionError> {
        self.resolve(card, 0)?;
        self.push_step(Step::Play { card, target: None }, None);
        Ok(())
    }

    fn afford(&mut self, cost: u32) -> Result<(), ReductionError> {
        if cost > MAX_MANA {
            return Err(self.infeasible(format!("needs {cost} mana in one step")));
        }
        while self.mana < cost {
            self.filler(CardId::Innervate)?;
        }
        Ok(())
    }

    /// Keeps at least `n` cards pending, via Arcane Intellect.
    fn keep_pending(&mut self, n: u32) -> Result<(), ReductionError> {
        while self.pending < n {
            self.afford(CardId::ArcaneIntellect.spec().cost)?;
            self.filler(CardId::ArcaneIntellect)?;
        }
        Ok(())
    }

    /// Equips Light's Justice until at most `n` cards are pending.
    fn drain_to(&mut self, n: u32) -> Result<(), ReductionError> {
        while self.pending > n {
            self.afford(CardId::LightsJustice.spec().cost)?;
            self.filler(CardId::LightsJustice)?;
        }
        Ok(())
    }

    /// Plays a payload card. Minions go to the rightmost slot.
    pub fn play(
        &mut self,
        card: CardId,
        extra: u32,
        target: Option<Target>,
        tag: Option<ForceTag>,
    ) -> Result<&mut Self, ReductionError> {
        self.drain_to(1)?;
        // the chain must survive this card
        if self.pending + draws_of(card, extra) < 2 {
            self.keep_pending(2)?;
            self.drain_to(2)?;
        }
        self.afford(card.spec().cost)?;
        self.resolve(card, extra)?;
        self.push_step(Step::Play { card, target }, tag);
        Ok(self)
    }

    /// Plays several cards back to back with no mana top-up in between.
    pub fn play_atomic(
        &mut self,
        cards: &[(CardId, u32, Option<Target>)],
    ) -> Result<&mut Self, ReductionError> {
        let total: u32 = cards.iter().map(|c| c.0.spec().cost).sum();
        if total > MAX_MANA {
            return Err(self.infeasible(format!("atomic group needs {total} mana")));
        }
        self.keep_pending(cards.len() as u32 + 1)?;
        self.afford(total)?;
        for &(card, extra, target) in cards {
            self.resolve(card, extra)?;
            self.push_step(Step::Play { card, target }, None);
        }
        Ok(self)
    }

    /// Draws `cards` into hand without playing them; they are cast later
    /// through [`TurnBuilder::play_held`].
    pub fn draw_held(&mut self, cards: &[CardId]) -> Result<&mut Self, ReductionError> {
        let n = cards.len() as u32;
        // one more draw must remain to keep the chain going
        self.keep_pending(n + 1)?;
        for &c in cards {
            self.pending -= 1;
            self.deck.push(c);
            self.held.push(c);
        }
        Ok(self)
    }

    /// Casts one held card. The concrete card depends on a choice, so the
    /// caller supplies the guarded steps for every branch; all candidates
    /// must cost and draw the same.
    pub fn play_held(
        &mut self,
        branches: Vec<(Guard, Vec<Step>)>,
        tag: Option<ForceTag>,
    ) -> Result<&mut Self, ReductionError> {
        let card = *self
            .held
            .first()
            .ok_or_else(|| self.infeasible("no held card"))?;
        let (cost, draws) = (card.spec().cost, draws_of(card, 0));
        for &h in &self.held {
            if (h.spec().cost, draws_of(h, 0)) != (cost, draws) {
                return Err(self.infeasible("held cards differ in cost or draws"));
            }
        }
        self.drain_to(1)?;
        self.afford(cost)?;
        self.held.pop();
        self.mana -= cost;
        self.pending += draws;
        for (guard, steps) in branches {
            for step in steps {
                let tag = match step {
                    Step::Attack { .. } => Some(ForceTag::DecisionAttack),
                    _ => tag,
                };
                self.steps.push(LineStep {
                    turn: self.turn,
                    step,
                    guard: Some(guard),
                    tag,
                    optional: false,
                });
            }
        }
        Ok(self)
    }

    /// A step that involves no card (attacks, end of turn).
    pub fn action(&mut self, step: Step, tag: Option<ForceTag>, optional: bool) -> &mut Self {
        self.steps.push(LineStep {
            turn: self.turn,
            step,
            guard: None,
            tag,
            optional,
        });
        self
    }

    /// Guarded steps that involve no card.
    pub fn guarded(&mut self, guard: Guard, steps: &[Step], tag: Option<ForceTag>) -> &mut Self {
        for &step in steps {
            self.steps.push(LineStep {
                turn: self.turn,
                step,
                guard: Some(guard),
                tag,
                optional: false,
            });
        }
        self
    }

    pub fn pending(&self) -> u32 {
        self.pending
    }

    pub fn mana(&self) -> u32 {
        self.mana
    }

    /// Empties the hand and ends the turn.
    pub fn close(mut self) -> Result<TurnSchedule, ReductionError> {
        if !self.held.is_empty() {
            return Err(self.infeasible("held cards left at end of turn"));
        }
        self.drain_to(0)?;
        self.push_step(Step::EndTurn, None);
        Ok(self.finish())
    }

    /// Stops without emptying the hand (the final turn).
    pub fn finish(self) -> TurnSchedule {
        TurnSchedule {
            deck: self.deck,
            steps: self.steps,
        }
    }
}

/// Schedules a turn whose payload is `cards`, each played untargeted with no
/// context-dependent draws. The compiler uses [`TurnBuilder`] directly.
pub fn schedule_turn(turn: u32, cards: &[CardId]) -> Result<Vec<CardId>, ReductionError> {
    let mut b = TurnBuilder::new(turn);
    for &c in cards {
        b.play(c, 0, None, None)?;
    }
    Ok(b.close()?.deck)
}

#[cfg(test)]
mod tests {
    use super::*;
    use CardId::*;

    #[test]
    fn frost_nova_alone() {
        assert_eq!(
            schedule_turn(1, &[FrostNova]).unwrap(),
            vec![FrostNova, LightsJustice]
        );
    }

    #[test]
    fn minion_gets_an_intellect_first() {
        let deck = schedule_turn(1, &[FloatingWatcher, FrostNova]).unwrap();
        assert_eq!(deck[0], ArcaneIntellect);
        assert!(deck.contains(&FloatingWatcher));
    }

    #[test]
    fn expensive_cards_get_innervates() {
        let deck = schedule_turn(1, &[MindControl, MindControl]).unwrap();
        let innervates = deck.iter().filter(|&&c| c == Innervate).count();
        // five to refill for the second, one to afford the closing padding
        assert_eq!(innervates, 6);
    }

    #[test]
    fn atomic_overspend_is_infeasible() {
        let mut b = TurnBuilder::new(3);
        let err = b
            .play_atomic(&[(MindControl, 0, None), (Charge, 0, None)])
            .unwrap_err();
        assert!(matches!(
            err,
            ReductionError::ScheduleInfeasible { turn: 3, .. }
        ));
    }

    #[test]
    fn single_costs_above_cap_are_infeasible() {
        let mut b = TurnBuilder::new(1);
        assert!(b.afford(11).is_err());
    }
}
