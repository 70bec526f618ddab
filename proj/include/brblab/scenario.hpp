// Copyright 2026 The brblab authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0
#pragma once

#include "brblab/phase_king.hpp"
#include "brblab/protocol.hpp"
#include "brblab/types.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace brblab {

enum class DelayMode
{
    UniformUnit, // every delivery takes exactly one time unit
    SyncBounded, // honest-to-honest deliveries take exactly delta
    Adversarial, // rule list decides, first match wins, default unit/delta
};

// One delay override.  Matches on sender/recipient/kind and the send-time
// window [after, before).  Effect is a fixed delay, an absolute delivery
// time, or suppression (Byzantine senders only).
struct DelayRule
{
    std::optional<PartyId> from;
    std::optional<PartyId> to;
    std::optional<MsgKind> kind;
    std::optional<Time> after;
    std::optional<Time> before;
    std::optional<Time> delay;
    std::optional<Time> deliver_at;
    bool drop{false};
};

struct DelayPolicy
{
    DelayMode mode{DelayMode::UniformUnit};
    std::vector<DelayRule> rules;
};

struct PlannedSend
{
    Time t{0};
    PartyId to{0};
    Message msg;
};

// Per-party Byzantine behavior.
struct StrategyConf
{
    std::string name{"silent"}; // silent | equivocate_split | mirror_honest | scripted | random_byz

    // equivocate_split: one forged message per listed recipient.
    std::map<PartyId, Value> assignment;
    std::optional<MsgKind> kind;      // default: propose for the broadcaster,
                                      // the protocol's first response otherwise
    std::optional<Time> send_time;    // default by kind: propose 0, response 1, votes 2
    std::optional<PartyId> subject;   // per-subject vote kinds only; default:
                                      // lowest non-broadcaster party other than self

    // mirror_honest / random_byz: run the honest machine against a forged
    // proposal carrying pretend_input, delivered pretend_delay after start.
    Value pretend_input;
    std::optional<Time> pretend_delay;

    // scripted
    std::vector<PlannedSend> plan;

    // random_byz
    std::uint64_t seed{0};
    Value flip_to; // value mutation target
};

struct AdversarySpec
{
    StrategyConf all;                          // default for every Byzantine party
    std::map<PartyId, StrategyConf> per_party; // overrides
    BaAdversary ba;                            // behavior inside boxed agreement

    const StrategyConf& conf_for(PartyId p) const
    {
        auto it = per_party.find(p);
        return it == per_party.end() ? all : it->second;
    }
};

struct Scenario
{
    std::string name;
    ProtocolId protocol{ProtocolId::Brb24};
    Config cfg;
    DelayPolicy delay; // mode defaulted from timing unless set explicitly
    bool delay_explicit{false};
    AdversarySpec adversary;
    std::uint64_t seed{0};
    std::uint64_t event_budget{0}; // 0: default (env-overridable)
    int sched_variant{0};          // same-time delivery order variant
    std::uint64_t sched_seed{0};
    bool expect_violation{false};
};

// Effective delay mode: explicit policy wins, otherwise unit delays for
// async timing and the delta bound for sync timing.
DelayMode effective_delay_mode(const Scenario& sc);

std::string scenario_to_json(const Scenario& sc);
Scenario scenario_from_json(const std::string& text);

} // namespace brblab
