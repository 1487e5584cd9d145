//! Turn structure, legal actions, and effect resolution.
//!
//! Spell resolution order: the spell's own text (including its own draws),
//! then death processing, then one draw per Gadgetzan Auctioneer the caster
//! controls. Deaths are collected left to right, active player's board first,
//! and their deathrattles fire in that order. The outcome is re-evaluated
//! after every such step and nothing resolves once the game is over.

use crate::cards::{CardId, CardKind, EffectTag, Tribe};
use crate::error::EngineError;

use super::action::{Action, CharRef};
use super::event::{CharSnapshot, Event, EventKind, EventSink};
use super::state::{
    GameState, MinionInstance, Outcome, Player, Weapon, MAX_BOARD, MAX_HAND, MAX_MANA,
};

fn emit<S: EventSink + ?Sized>(state: &mut GameState, sink: &mut S, kind: EventKind) {
    let ev = Event {
        step: state.event_cursor,
        turn: state.turn,
        kind,
    };
    state.event_cursor += 1;
    sink.emit(ev);
}

fn snap_minion(m: &MinionInstance, side: Player) -> CharSnapshot {
    CharSnapshot {
        side,
        card: Some(m.card),
        uid: Some(m.uid),
        attack: m.attack,
        health: m.health,
    }
}

pub fn snapshot(state: &GameState, r: CharRef) -> Option<CharSnapshot> {
    match r {
        CharRef::Minion { side, slot } => state.minion(side, slot).map(|m| snap_minion(m, side)),
        CharRef::Hero { hero } => {
            let h = &state.player(hero).hero;
            Some(CharSnapshot {
                side: hero,
                card: None,
                uid: None,
                attack: h.attack(),
                health: h.health,
            })
        }
    }
}

/// Outcome implied by the heroes' health. A decided outcome is sticky.
pub fn outcome_of(state: &GameState) -> Outcome {
    if state.outcome.is_over() {
        return state.outcome;
    }
    let friendly_dead = state.player(Player::Friendly).hero.health <= 0;
    let enemy_dead = state.player(Player::Enemy).hero.health <= 0;
    match (friendly_dead, enemy_dead) {
        (true, true) => Outcome::Draw,
        (true, false) => Outcome::EnemyWins,
        (false, true) => Outcome::FriendlyWins,
        (false, false) => Outcome::Ongoing,
    }
}

fn check_outcome<S: EventSink + ?Sized>(state: &mut GameState, sink: &mut S) -> bool {
    if state.outcome.is_over() {
        return true;
    }
    let o = outcome_of(state);
    if o.is_over() {
        state.outcome = o;
        emit(state, sink, EventKind::GameOver { outcome: o });
        return true;
    }
    false
}

/// Legal targets for a spell cast by `caster`; `None` for untargeted spells.
pub fn spell_targets(state: &GameState, caster: Player, effect: EffectTag) -> Option<Vec<CharRef>> {
    let minions =
        |side_filter: &[Player], pred: &dyn Fn(&MinionInstance) -> bool| -> Vec<CharRef> {
            let mut out = Vec::new();
            for &side in side_filter {
                let p = state.player(side);
                for (slot, m) in p.board.iter().enumerate() {
                    if !p.is_spell_immune(slot) && pred(m) {
                        out.push(CharRef::minion(side, slot));
                    }
                }
            }
            out
        };
    let both = [caster, caster.opponent()];
    match effect {
        EffectTag::GainTwoMana | EffectTag::DrawTwo | EffectTag::FreezeEnemyMinions => None,
        EffectTag::DealTwoToUndamagedMinion => Some(minions(&both, &|m| !m.is_damaged())),
        EffectTag::DealOneDrawIfKill
        | EffectTag::BuffPlus2Plus2DrawIfBeast
        | EffectTag::DoubleAttack => Some(minions(&both, &|_| true)),
        EffectTag::BuffDemonPlus3Plus3 => Some(minions(&both, &|m| m.tribe == Tribe::Demon)),
        EffectTag::GiveChargePlus2Attack => Some(minions(&[caster], &|_| true)),
        EffectTag::DestroyMinionAtk5Plus => Some(minions(&both, &|m| m.attack >= 5)),
        EffectTag::TakeControlEnemyMinion => {
            if state.player(caster).board.len() >= MAX_BOARD {
                Some(Vec::new())
            } else {
                Some(minions(&[caster.opponent()], &|_| true))
            }
        }
        EffectTag::RestoreFiveHealth => {
            let mut out = vec![CharRef::hero(caster)];
            out.extend(minions(&[caster], &|_| true));
            out.push(CharRef::hero(caster.opponent()));
            out.extend(minions(&[caster.opponent()], &|_| true));
            Some(out)
        }
        // minion and weapon effects are never cast
        _ => None,
    }
}

/// Characters the active player may attack, honoring Taunt.
pub fn attack_defenders(state: &GameState, attacker_side: Player) -> Vec<CharRef> {
    let opp = attacker_side.opponent();
    let board = &state.player(opp).board;
    let taunts: Vec<CharRef> = board
        .iter()
        .enumerate()
        .filter(|(_, m)| m.taunt)
        .map(|(i, _)| CharRef::minion(opp, i))
        .collect();
    if !taunts.is_empty() {
        return taunts;
    }
    let mut out: Vec<CharRef> = (0..board.len()).map(|i| CharRef::minion(opp, i)).collect();
    out.push(CharRef::hero(opp));
    out
}

/// Every legal action for the active player. Empty once the game is over.
pub fn legal_actions(state: &GameState) -> Vec<Action> {
    let mut out = Vec::new();
    if state.outcome.is_over() {
        return out;
    }
    let me = state.active;
    let p = state.player(me);
    for (i, card) in p.hand.iter().enumerate() {
        let spec = card.spec();
        if spec.cost > p.hero.mana_available {
            continue;
        }
        match spec.kind {
            CardKind::Minion => {
                if p.board.len() < MAX_BOARD {
                    for pos in 0..=p.board.len() {
                        out.push(Action::PlayCard {
                            hand: i,
                            target: None,
                            position: Some(pos),
                        });
                    }
                }
            }
            CardKind::Weapon => out.push(Action::PlayCard {
                hand: i,
                target: None,
                position: None,
            }),
            CardKind::Spell => match spell_targets(state, me, spec.effect) {
                None => out.push(Action::PlayCard {
                    hand: i,
                    target: None,
                    position: None,
                }),
                Some(targets) => out.extend(targets.into_iter().map(|t| Action::PlayCard {
                    hand: i,
                    target: Some(t),
                    position: None,
                })),
            },
        }
    }
    let defenders = attack_defenders(state, me);
    for (slot, m) in p.board.iter().enumerate() {
        if m.can_attack() {
            for &d in &defenders {
                out.push(Action::Attack {
                    attacker: CharRef::minion(me, slot),
                    defender: d,
                });
            }
        }
    }
    if p.hero.can_attack() {
        for &d in &defenders {
            out.push(Action::Attack {
                attacker: CharRef::hero(me),
                defender: d,
            });
        }
    }
    out.push(Action::EndTurn);
    out
}

pub fn is_legal(state: &GameState, action: &Action) -> bool {
    legal_actions(state).contains(action)
}

/// Successor position. Fails if `action` is not currently legal.
pub fn apply(state: &GameState, action: Action) -> Result<GameState, EngineError> {
    apply_with(state, action, &mut ())
}

pub fn apply_with<S: EventSink + ?Sized>(
    state: &GameState,
    action: Action,
    sink: &mut S,
) -> Result<GameState, EngineError> {
    if !is_legal(state, &action) {
        return Err(EngineError::IllegalAction {
            action,
            reason: illegal_reason(state, &action),
        });
    }
    let mut next = state.clone();
    apply_in_place(&mut next, action, sink);
    Ok(next)
}

fn illegal_reason(state: &GameState, action: &Action) -> String {
    if state.outcome.is_over() {
        return format!("game is over ({:?})", state.outcome);
    }
    match action {
        Action::PlayCard { hand, .. } => match state.active_player().hand.get(*hand) {
            None => format!("no card at hand index {hand}"),
            Some(c) => format!("{c} cannot be played that way"),
        },
        Action::Attack { .. } => "attacker cannot attack that defender".into(),
        Action::EndTurn => "unreachable".into(),
    }
}

/// Applies an action known to be legal (e.g. taken from [`legal_actions`]).
pub fn apply_in_place<S: EventSink + ?Sized>(state: &mut GameState, action: Action, sink: &mut S) {
    match action {
        Action::PlayCard {
            hand,
            target,
            position,
        } => play_card(state, hand, target, position, sink),
        Action::Attack { attacker, defender } => attack(state, attacker, defender, sink),
        Action::EndTurn => end_turn(state, sink),
    }
}

fn draw<S: EventSink + ?Sized>(state: &mut GameState, who: Player, sink: &mut S) {
    let p = state.player_mut(who);
    match p.deck.pop() {
        None => {
            p.hero.fatigue_counter += 1;
            let dmg = p.hero.fatigue_counter;
            p.hero.health -= dmg as i32;
            emit(
                state,
                sink,
                EventKind::Fatigue {
                    player: who,
                    damage: dmg,
                },
            );
        }
        Some(card) => {
            if p.hand.len() >= MAX_HAND {
                p.removed += 1;
                emit(state, sink, EventKind::Burn { player: who, card });
            } else {
                p.hand.push(card);
                emit(state, sink, EventKind::Draw { player: who, card });
            }
        }
    }
}

/// Draws `n` cards, stopping early if fatigue ends the game.
fn draw_n<S: EventSink + ?Sized>(state: &mut GameState, who: Player, n: u32, sink: &mut S) -> bool {
    for _ in 0..n {
        draw(state, who, sink);
        if check_outcome(state, sink) {
            return true;
        }
    }
    false
}

fn damage<S: EventSink + ?Sized>(
    state: &mut GameState,
    target: CharRef,
    amount: u32,
    sink: &mut S,
) {
    if amount == 0 {
        return;
    }
    match target {
        CharRef::Hero { hero } => {
            state.player_mut(hero).hero.health -= amount as i32;
            let snap = snapshot(state, target).expect("hero exists");
            emit(
                state,
                sink,
                EventKind::Damage {
                    target: snap,
                    amount,
                },
            );
        }
        CharRef::Minion { side, slot } => {
            let m = &mut state.player_mut(side).board[slot];
            m.health -= amount as i32;
            let doubles = m.card.spec().effect == EffectTag::TriggerDoubleAttackOnDamage;
            let snap = snap_minion(m, side);
            emit(
                state,
                sink,
                EventKind::Damage {
                    target: snap,
                    amount,
                },
            );
            if doubles {
                let m = &mut state.player_mut(side).board[slot];
                m.attack = m.attack.saturating_mul(2);
                let snap = snap_minion(m, side);
                emit(
                    state,
                    sink,
                    EventKind::Trigger {
                        player: side,
                        card: m_card(state, side, slot),
                    },
                );
                emit(state, sink, EventKind::Buff { target: snap });
            }
        }
    }
}

fn m_card(state: &GameState, side: Player, slot: usize) -> CardId {
    state.player(side).board[slot].card
}

fn heal<S: EventSink + ?Sized>(state: &mut GameState, target: CharRef, amount: u32, sink: &mut S) {
    let restored = match target {
        CharRef::Hero { hero } => {
            let h = &mut state.player_mut(hero).hero;
            let before = h.health;
            h.health = (h.health + amount as i32).min(h.max_health).max(h.health);
            h.health - before
        }
        CharRef::Minion { side, slot } => {
            let m = &mut state.player_mut(side).board[slot];
            let before = m.health;
            m.health = (m.health + amount as i32).min(m.max_health).max(m.health);
            m.health - before
        }
    };
    if restored > 0 {
        let snap = snapshot(state, target).expect("target exists");
        emit(
            state,
            sink,
            EventKind::Heal {
                target: snap,
                amount: restored as u32,
            },
        );
    }
}

/// Removes dead minions and fires their deathrattles. Returns true if the game ended.
fn process_deaths<S: EventSink + ?Sized>(state: &mut GameState, sink: &mut S) -> bool {
    loop {
        let order = [state.active, state.active.opponent()];
        let mut dead: Vec<(Player, MinionInstance)> = Vec::new();
        for side in order {
            let board = &mut state.player_mut(side).board;
            let mut i = 0;
            while i < board.len() {
                if board[i].health <= 0 {
                    dead.push((side, board.remove(i)));
                } else {
                    i += 1;
                }
            }
        }
        if dead.is_empty() {
            break;
        }
        for (side, m) in &dead {
            state.player_mut(*side).removed += 1;
            emit(
                state,
                sink,
                EventKind::Death {
                    minion: snap_minion(m, *side),
                },
            );
        }
        for (side, m) in &dead {
            match m.card.spec().effect {
                EffectTag::DeathrattleDamageEnemyHero2 => {
                    emit(
                        state,
                        sink,
                        EventKind::Trigger {
                            player: *side,
                            card: m.card,
                        },
                    );
                    damage(state, CharRef::hero(side.opponent()), 2, sink);
                }
                EffectTag::DeathrattleRestore4EachHero => {
                    emit(
                        state,
                        sink,
                        EventKind::Trigger {
                            player: *side,
                            card: m.card,
                        },
                    );
                    heal(state, CharRef::hero(*side), 4, sink);
                    heal(state, CharRef::hero(side.opponent()), 4, sink);
                }
                _ => {}
            }
        }
    }
    check_outcome(state, sink)
}

fn play_card<S: EventSink + ?Sized>(
    state: &mut GameState,
    hand: usize,
    target: Option<CharRef>,
    position: Option<usize>,
    sink: &mut S,
) {
    let me = state.active;
    let card = state.player_mut(me).hand.remove(hand);
    let spec = card.spec();
    state.player_mut(me).hero.mana_available -= spec.cost;
    let target_snap = target.and_then(|t| snapshot(state, t));
    emit(
        state,
        sink,
        EventKind::CardPlayed {
            player: me,
            card,
            target: target_snap,
        },
    );
    match spec.kind {
        CardKind::Minion => {
            let pos = position.expect("minion plays carry a position");
            let uid = state.next_uid;
            state.next_uid += 1;
            let charge = spec.has_keyword(crate::cards::Keyword::Charge);
            let m = MinionInstance {
                card,
                attack: spec.attack.unwrap_or(0),
                health: spec.health_or_durability.unwrap_or(1) as i32,
                max_health: spec.health_or_durability.unwrap_or(1) as i32,
                tribe: spec.tribe,
                taunt: spec.has_keyword(crate::cards::Keyword::Taunt),
                frozen: false,
                exhausted: !charge,
                has_charge: charge,
                attacked_this_turn: false,
                uid,
            };
            state.player_mut(me).board.insert(pos, m);
            emit(
                state,
                sink,
                EventKind::Summon {
                    player: me,
                    card,
                    uid,
                    position: pos,
                },
            );
            if spec.effect == EffectTag::BattlecryDrawOne {
                emit(state, sink, EventKind::Trigger { player: me, card });
                if draw_n(state, me, 1, sink) {
                    return;
                }
            }
            process_deaths(state, sink);
        }
        CardKind::Weapon => {
            let p = state.player_mut(me);
            if p.hero.weapon.is_some() {
                p.removed += 1;
                emit(state, sink, EventKind::WeaponBroken { player: me });
            }
            let w = Weapon {
                attack: spec.attack.unwrap_or(0),
                durability: spec.health_or_durability.unwrap_or(1),
            };
            state.player_mut(me).hero.weapon = Some(w);
            emit(
                state,
                sink,
                EventKind::Equip {
                    player: me,
                    attack: w.attack,
                    durability: w.durability,
                },
            );
        }
        CardKind::Spell => {
            state.player_mut(me).removed += 1;
            if resolve_spell(state, me, spec.effect, target, sink) {
                return;
            }
            if process_deaths(state, sink) {
                return;
            }
            let auctioneers = state
                .player(me)
                .board
                .iter()
                .filter(|m| m.card.spec().effect == EffectTag::TriggerDrawOnFriendlySpell)
                .count();
            for _ in 0..auctioneers {
                emit(
                    state,
                    sink,
                    EventKind::Trigger {
                        player: me,
                        card: CardId::GadgetzanAuctioneer,
                    },
                );
                if draw_n(state, me, 1, sink) {
                    return;
                }
            }
        }
    }
}

/// Applies a spell's own text. Returns true if the game ended.
fn resolve_spell<S: EventSink + ?Sized>(
    state: &mut GameState,
    me: Player,
    effect: EffectTag,
    target: Option<CharRef>,
    sink: &mut S,
) -> bool {
    let minion_target = || match target {
        Some(CharRef::Minion { side, slot }) => (side, slot),
        other => panic!("{effect:?} needs a minion target, got {other:?}"),
    };
    let buff =
        |state: &mut GameState, sink: &mut S, side: Player, slot: usize, atk: u32, hp: i32| {
            let m = &mut state.player_mut(side).board[slot];
            m.attack = m.attack.saturating_add(atk);
            m.health += hp;
            m.max_health += hp;
            let snap = snap_minion(m, side);
            emit(state, sink, EventKind::Buff { target: snap });
        };
    match effect {
        EffectTag::GainTwoMana => {
            let h = &mut state.player_mut(me).hero;
            h.mana_available = (h.mana_available + 2).min(MAX_MANA);
            let available = h.mana_available;
            emit(
                state,
                sink,
                EventKind::ManaGained {
                    player: me,
                    available,
                },
            );
        }
        EffectTag::DrawTwo => return draw_n(state, me, 2, sink),
        EffectTag::FreezeEnemyMinions => {
            let opp = me.opponent();
            for slot in 0..state.player(opp).board.len() {
                state.player_mut(opp).board[slot].frozen = true;
                let snap = snap_minion(&state.player(opp).board[slot], opp);
                emit(state, sink, EventKind::Freeze { target: snap });
            }
        }
        EffectTag::DealTwoToUndamagedMinion => {
            let (side, slot) = minion_target();
            damage(state, CharRef::minion(side, slot), 2, sink);
        }
        EffectTag::DealOneDrawIfKill => {
            let (side, slot) = minion_target();
            damage(state, CharRef::minion(side, slot), 1, sink);
            if state.player(side).board[slot].health <= 0 {
                return draw_n(state, me, 1, sink);
            }
        }
        EffectTag::BuffDemonPlus3Plus3 => {
            let (side, slot) = minion_target();
            buff(state, sink, side, slot, 3, 3);
        }
        EffectTag::BuffPlus2Plus2DrawIfBeast => {
            let (side, slot) = minion_target();
            buff(state, sink, side, slot, 2, 2);
            if state.player(side).board[slot].tribe == Tribe::Beast {
                return draw_n(state, me, 1, sink);
            }
        }
        EffectTag::DoubleAttack => {
            let (side, slot) = minion_target();
            let m = &mut state.player_mut(side).board[slot];
            m.attack = m.attack.saturating_mul(2);
            let snap = snap_minion(m, side);
            emit(state, sink, EventKind::Buff { target: snap });
        }
        EffectTag::GiveChargePlus2Attack => {
            let (side, slot) = minion_target();
            state.player_mut(side).board[slot].has_charge = true;
            buff(state, sink, side, slot, 2, 0);
        }
        EffectTag::DestroyMinionAtk5Plus => {
            let (side, slot) = minion_target();
            state.player_mut(side).board[slot].health = 0;
        }
        EffectTag::TakeControlEnemyMinion => {
            let (side, slot) = minion_target();
            let mut m = state.player_mut(side).board.remove(slot);
            m.exhausted = true;
            m.attacked_this_turn = false;
            let snap = snap_minion(&m, side);
            let position = state.player(me).board.len();
            state.player_mut(me).board.push(m);
            emit(
                state,
                sink,
                EventKind::ControlChanged {
                    target: snap,
                    to: me,
                    position,
                },
            );
        }
        EffectTag::RestoreFiveHealth => {
            heal(state, target.expect("Flash Heal is targeted"), 5, sink);
        }
        other => panic!("{other:?} is not a spell effect"),
    }
    check_outcome(state, sink)
}

fn attack<S: EventSink + ?Sized>(
    state: &mut GameState,
    attacker: CharRef,
    defender: CharRef,
    sink: &mut S,
) {
    let a = snapshot(state, attacker).expect("attacker exists");
    let d = snapshot(state, defender).expect("defender exists");
    emit(
        state,
        sink,
        EventKind::Attack {
            attacker: a,
            defender: d,
        },
    );
    match attacker {
        CharRef::Minion { side, slot } => {
            state.player_mut(side).board[slot].attacked_this_turn = true
        }
        CharRef::Hero { hero } => {
            let p = state.player_mut(hero);
            p.hero.attacked_this_turn = true;
            if let Some(w) = p.hero.weapon.as_mut() {
                w.durability -= 1;
                if w.durability == 0 {
                    p.hero.weapon = None;
                    p.removed += 1;
                    emit(state, sink, EventKind::WeaponBroken { player: hero });
                }
            }
        }
    }
    // simultaneous exchange
    let counter = match defender {
        CharRef::Minion { .. } => d.attack,
        CharRef::Hero { .. } => 0,
    };
    damage(state, defender, a.attack, sink);
    damage(state, attacker, counter, sink);
    process_deaths(state, sink);
}

fn end_turn<S: EventSink + ?Sized>(state: &mut GameState, sink: &mut S) {
    let me = state.active;
    let p = state.player_mut(me);
    p.hero.frozen = false;
    for m in p.board.iter_mut() {
        m.frozen = false;
    }
    emit(state, sink, EventKind::TurnEnd { player: me });
    state.active = me.opponent();
    state.turn += 1;
    if state.turn > state.turn_limit {
        state.outcome = Outcome::Draw;
        emit(
            state,
            sink,
            EventKind::GameOver {
                outcome: Outcome::Draw,
            },
        );
        return;
    }
    begin_turn(state, sink);
}

/// Start of the active player's turn: crystal, refill, readiness, draw.
pub(crate) fn begin_turn<S: EventSink + ?Sized>(state: &mut GameState, sink: &mut S) {
    let me = state.active;
    let p = state.player_mut(me);
    p.hero.mana_crystals = (p.hero.mana_crystals + 1).min(MAX_MANA);
    p.hero.mana_available = p.hero.mana_crystals;
    p.hero.attacked_this_turn = false;
    for m in p.board.iter_mut() {
        m.exhausted = false;
        m.attacked_this_turn = false;
    }
    emit(state, sink, EventKind::TurnStart { player: me });
    draw_n(state, me, 1, sink);
}
