// Copyright 2026 The brblab authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0
#include "brblab/protocols_async.hpp"

namespace brblab {

namespace {

bool is_first_proposal(const Envelope& env)
{
    return env.msg.kind == MsgKind::Propose && env.sender == kBroadcaster;
}

} // namespace

// ---------------------------------------------------------------- Brb24

Brb24Machine::Brb24Machine(const Config& cfg, PartyId self, const MachineMutation& mut)
    : ProtocolMachine(ProtocolId::Brb24, cfg, self), mut_(mut)
{
    t_commit_ = cfg.n - cfg.f - 1;
    t_vote1_ = cfg.n - 2 * cfg.f;
    t_amp_ = cfg.f + 1;
    if (mut.unreachable_commit)
        t_commit_ = cfg.n + 1;
}

std::vector<Action> Brb24Machine::do_start()
{
    std::vector<Action> out;
    if (self_ == kBroadcaster)
        out.push_back(SendAll{make_msg(MsgKind::Propose, cfg_.broadcaster_input)});
    return out;
}

std::vector<Action> Brb24Machine::do_delivered(const Envelope& env)
{
    std::vector<Action> out;
    tally_.insert(env);
    if (is_first_proposal(env) && !acked_)
    {
        acked_ = true;
        out.push_back(SendAll{make_msg(MsgKind::Ack, env.msg.value)});
    }
    while (run_rules(out) && !terminated_)
    {
    }
    return out;
}

// Rules in protocol order; returns true if anything fired so the caller
// re-evaluates to fixpoint.
bool Brb24Machine::run_rules(std::vector<Action>& out)
{
    const CountOpts excl{.exclude_broadcaster = true, .subject = std::nullopt, .exclude_party = std::nullopt};
    // Fast path: n-f-1 acks commit now and seed both vote rounds.
    for (const auto& v : tally_.values_of(MsgKind::Ack))
    {
        if (tally_.count(MsgKind::Ack, v, excl) >= t_commit_ && !committed_)
        {
            emit_commit(out, v);
            sent_vote1_ = true;
            sent_vote2_ = true;
            out.push_back(SendAll{make_msg(MsgKind::Vote1, v)});
            out.push_back(SendAll{make_msg(MsgKind::Vote2, v)});
            emit_terminate(out);
            return true;
        }
    }
    if (!mut_.brb24_drop_vote1_rule)
    {
        for (const auto& v : tally_.values_of(MsgKind::Ack))
        {
            if (tally_.count(MsgKind::Ack, v, excl) >= t_vote1_ && !sent_vote1_)
            {
                sent_vote1_ = true;
                out.push_back(SendAll{make_msg(MsgKind::Vote1, v)});
                return true;
            }
        }
    }
    for (const auto& v : tally_.values_of(MsgKind::Vote1))
    {
        if (tally_.count(MsgKind::Vote1, v, excl) >= t_commit_ && !sent_vote2_)
        {
            sent_vote2_ = true;
            out.push_back(SendAll{make_msg(MsgKind::Vote2, v)});
            return true;
        }
    }
    for (const auto& v : tally_.values_of(MsgKind::Vote2))
    {
        if (tally_.count(MsgKind::Vote2, v, excl) >= t_amp_ && !sent_vote2_)
        {
            sent_vote2_ = true;
            out.push_back(SendAll{make_msg(MsgKind::Vote2, v)});
            return true;
        }
    }
    for (const auto& v : tally_.values_of(MsgKind::Vote2))
    {
        if (tally_.count(MsgKind::Vote2, v, excl) >= t_commit_ && !committed_)
        {
            emit_commit(out, v);
            emit_terminate(out);
            return true;
        }
    }
    return false;
}

// ---------------------------------------------------------------- F1Brb

F1BrbMachine::F1BrbMachine(const Config& cfg, PartyId self, const MachineMutation& mut)
    : ProtocolMachine(ProtocolId::F1Brb, cfg, self)
{
    t_commit_ = cfg.n - 2;
    if (mut.unreachable_commit)
        t_commit_ = cfg.n + 1;
}

std::vector<Action> F1BrbMachine::do_start()
{
    std::vector<Action> out;
    if (self_ == kBroadcaster)
        out.push_back(SendAll{make_msg(MsgKind::Propose, cfg_.broadcaster_input)});
    return out;
}

std::vector<Action> F1BrbMachine::do_delivered(const Envelope& env)
{
    std::vector<Action> out;
    tally_.insert(env);
    if (is_first_proposal(env) && !acked_)
    {
        acked_ = true;
        out.push_back(SendAll{make_msg(MsgKind::Ack, env.msg.value)});
    }
    const CountOpts excl{.exclude_broadcaster = true, .subject = std::nullopt, .exclude_party = std::nullopt};
    for (const auto& v : tally_.values_of(MsgKind::Ack))
    {
        if (tally_.count(MsgKind::Ack, v, excl) >= t_commit_ && !committed_)
        {
            emit_commit(out, v);
            emit_terminate(out);
            break;
        }
    }
    return out;
}

// ---------------------------------------------------------------- F2Brb

F2BrbMachine::F2BrbMachine(const Config& cfg, PartyId self)
    : ProtocolMachine(ProtocolId::F2Brb, cfg, self)
{
    t_commit_ = cfg.n - cfg.f - 1;
    t_lock_ = cfg.n - cfg.f - 2;
    t_lock_count_ = cfg.n - 2 * cfg.f;
}

std::vector<Action> F2BrbMachine::do_start()
{
    std::vector<Action> out;
    if (self_ == kBroadcaster)
        out.push_back(SendAll{make_msg(MsgKind::Propose, cfg_.broadcaster_input)});
    return out;
}

std::vector<Action> F2BrbMachine::do_delivered(const Envelope& env)
{
    std::vector<Action> out;
    bool fresh = tally_.insert(env);
    if (is_first_proposal(env) && !acked_)
    {
        acked_ = true;
        out.push_back(SendAll{make_msg(MsgKind::Ack, env.msg.value)});
    }
    // One subject-vote per ack sender, first value wins, never about the
    // broadcaster.
    if (env.msg.kind == MsgKind::Ack && env.sender != kBroadcaster && fresh &&
        subject_voted_.insert(env.sender).second)
    {
        out.push_back(SendAll{make_subject_vote(env.sender, env.msg.value)});
    }
    while (run_rules(out) && !terminated_)
    {
    }
    return out;
}

bool F2BrbMachine::run_rules(std::vector<Action>& out)
{
    const CountOpts excl{.exclude_broadcaster = true, .subject = std::nullopt, .exclude_party = std::nullopt};
    for (const auto& v : tally_.values_of(MsgKind::Ack))
    {
        if (tally_.count(MsgKind::Ack, v, excl) >= t_commit_ && !committed_)
        {
            emit_commit(out, v);
            emit_terminate(out);
            return true;
        }
    }
    bool fired = false;
    for (PartyId j = 1; j < cfg_.n; ++j)
    {
        if (locks_.count(j))
            continue;
        for (const auto& v : tally_.values_of(MsgKind::SubjectVote, j))
        {
            CountOpts opts{.exclude_broadcaster = true, .subject = j, .exclude_party = j};
            if (tally_.count(MsgKind::SubjectVote, v, opts) >= t_lock_)
            {
                locks_.emplace(j, v);
                fired = true;
                break;
            }
        }
    }
    std::map<Value, int> per_value;
    for (const auto& [j, v] : locks_)
        ++per_value[v];
    for (const auto& [v, c] : per_value)
    {
        if (c >= t_lock_count_ && !committed_)
        {
            emit_commit(out, v);
            emit_terminate(out);
            return true;
        }
    }
    return fired;
}

// ---------------------------------------------------------------- Brb23

Brb23Machine::Brb23Machine(const Config& cfg, PartyId self)
    : ProtocolMachine(ProtocolId::Brb23, cfg, self)
{
    t_amp_ = cfg.n - 2 * cfg.f;
    t_commit_ = cfg.n - cfg.f - 1;
}

std::vector<Action> Brb23Machine::do_start()
{
    std::vector<Action> out;
    if (self_ == kBroadcaster)
        out.push_back(SendAll{make_msg(MsgKind::Propose, cfg_.broadcaster_input)});
    return out;
}

std::vector<Action> Brb23Machine::do_delivered(const Envelope& env)
{
    std::vector<Action> out;
    tally_.insert(env);
    if (is_first_proposal(env) && !saw_proposal_)
    {
        saw_proposal_ = true;
        if (sent_ack_.insert(env.msg.value).second)
            out.push_back(SendAll{make_msg(MsgKind::Ack, env.msg.value)});
    }
    while (run_rules(out) && !terminated_)
    {
    }
    return out;
}

bool Brb23Machine::run_rules(std::vector<Action>& out)
{
    const CountOpts excl{.exclude_broadcaster = true, .subject = std::nullopt, .exclude_party = std::nullopt};
    for (const auto& v : tally_.values_of(MsgKind::Ack))
    {
        if (tally_.count(MsgKind::Ack, v, excl) >= t_commit_ && !committed_)
        {
            emit_commit(out, v);
            emit_terminate(out);
            return true;
        }
    }
    // A party can end up acking two different values, once each.
    for (const auto& v : tally_.values_of(MsgKind::Ack))
    {
        if (tally_.count(MsgKind::Ack, v, excl) >= t_amp_ && !sent_ack_.count(v))
        {
            sent_ack_.insert(v);
            out.push_back(SendAll{make_msg(MsgKind::Ack, v)});
            return true;
        }
    }
    return false;
}

// ---------------------------------------------------------------- Bracha

BrachaMachine::BrachaMachine(const Config& cfg, PartyId self)
    : ProtocolMachine(ProtocolId::Bracha, cfg, self)
{
    t_echo_ = cfg.n - cfg.f;
    t_amp_ = cfg.f + 1;
    t_commit_ = cfg.n - cfg.f;
}

std::vector<Action> BrachaMachine::do_start()
{
    std::vector<Action> out;
    if (self_ == kBroadcaster)
        out.push_back(SendAll{make_msg(MsgKind::Propose, cfg_.broadcaster_input)});
    return out;
}

std::vector<Action> BrachaMachine::do_delivered(const Envelope& env)
{
    std::vector<Action> out;
    tally_.insert(env);
    if (is_first_proposal(env) && !echoed_)
    {
        echoed_ = true;
        out.push_back(SendAll{make_msg(MsgKind::Echo, env.msg.value)});
    }
    while (run_rules(out) && !terminated_)
    {
    }
    return out;
}

bool BrachaMachine::run_rules(std::vector<Action>& out)
{
    for (const auto& v : tally_.values_of(MsgKind::Echo))
    {
        if (tally_.count(MsgKind::Echo, v) >= t_echo_ && !voted_)
        {
            voted_ = true;
            out.push_back(SendAll{make_msg(MsgKind::Vote, v)});
            return true;
        }
    }
    for (const auto& v : tally_.values_of(MsgKind::Vote))
    {
        if (tally_.count(MsgKind::Vote, v) >= t_amp_ && !voted_)
        {
            voted_ = true;
            out.push_back(SendAll{make_msg(MsgKind::Vote, v)});
            return true;
        }
    }
    for (const auto& v : tally_.values_of(MsgKind::Vote))
    {
        if (tally_.count(MsgKind::Vote, v) >= t_commit_ && !committed_)
        {
            emit_commit(out, v);
            emit_terminate(out);
            return true;
        }
    }
    return false;
}

// ------------------------------------------------------------ ImbsRaynal

ImbsRaynalMachine::ImbsRaynalMachine(const Config& cfg, PartyId self)
    : ProtocolMachine(ProtocolId::ImbsRaynal, cfg, self)
{
    t_amp_ = cfg.n - 2 * cfg.f;
    t_commit_ = cfg.n - cfg.f;
}

std::vector<Action> ImbsRaynalMachine::do_start()
{
    std::vector<Action> out;
    if (self_ == kBroadcaster)
        out.push_back(SendAll{make_msg(MsgKind::Propose, cfg_.broadcaster_input)});
    return out;
}

std::vector<Action> ImbsRaynalMachine::do_delivered(const Envelope& env)
{
    std::vector<Action> out;
    tally_.insert(env);
    if (is_first_proposal(env) && !saw_proposal_)
    {
        saw_proposal_ = true;
        if (sent_ack_.insert(env.msg.value).second)
            out.push_back(SendAll{make_msg(MsgKind::Ack, env.msg.value)});
    }
    while (run_rules(out) && !terminated_)
    {
    }
    return out;
}

bool ImbsRaynalMachine::run_rules(std::vector<Action>& out)
{
    for (const auto& v : tally_.values_of(MsgKind::Ack))
    {
        if (tally_.count(MsgKind::Ack, v) >= t_commit_ && !committed_)
        {
            emit_commit(out, v);
            emit_terminate(out);
            return true;
        }
    }
    for (const auto& v : tally_.values_of(MsgKind::Ack))
    {
        if (tally_.count(MsgKind::Ack, v) >= t_amp_ && !sent_ack_.count(v))
        {
            sent_ack_.insert(v);
            out.push_back(SendAll{make_msg(MsgKind::Ack, v)});
            return true;
        }
    }
    return false;
}

} // namespace brblab
