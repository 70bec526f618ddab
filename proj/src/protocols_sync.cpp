// Copyright 2026 The brblab authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0
#include "brblab/protocols_sync.hpp"

namespace brblab {

SyncMachineBase::SyncMachineBase(ProtocolId id, const Config& cfg, PartyId self)
    : ProtocolMachine(id, cfg, self)
{
    const auto& sync = std::get<SyncTiming>(cfg_.timing);
    big_delta_ = sync.big_delta;
    sigma_param_ = sync.big_delta;
    offset_ = resolve_start_offsets(cfg_)[static_cast<size_t>(self_)];
}

std::vector<Action> SyncMachineBase::do_timer(const Time& local_time, const std::string& tag)
{
    (void)local_time;
    if (tag == kBaTimerTag)
        ba_invoked_ = true;
    return {};
}

std::vector<Action> SyncMachineBase::do_ba_output(const Value& w)
{
    std::vector<Action> out;
    if (!committed_)
        emit_commit(out, w);
    emit_terminate(out);
    return out;
}

// ------------------------------------------------------------------ Bb2

Bb2Machine::Bb2Machine(const Config& cfg, PartyId self)
    : SyncMachineBase(ProtocolId::Bb2, cfg, self)
{
    t_quorum_ = cfg.n - cfg.f - 1;
    t_vote_ = cfg.n - 2 * cfg.f;
    commit_window_ = Time{2} * big_delta_ + sigma_param_;
}

std::vector<Action> Bb2Machine::do_start()
{
    std::vector<Action> out;
    out.push_back(SetTimer{Time{3} * big_delta_ + Time{2} * sigma_param_, kBaTimerTag});
    if (self_ == kBroadcaster)
        out.push_back(SendAll{make_msg(MsgKind::Propose, cfg_.broadcaster_input)});
    return out;
}

std::vector<Action> Bb2Machine::do_delivered(const Envelope& env)
{
    std::vector<Action> out;
    tally_.insert(env);
    if (env.msg.kind == MsgKind::Propose && env.sender == kBroadcaster && !acked_)
    {
        acked_ = true;
        out.push_back(SendAll{make_msg(MsgKind::Ack, env.msg.value)});
    }
    Time local_now = local_time_of(env.deliver_time);
    while (run_rules(out, local_now))
    {
    }
    return out;
}

// Quorum rules are edge-triggered per value: each quorum locks (and possibly
// commits) once when first reached.
bool Bb2Machine::run_rules(std::vector<Action>& out, const Time& local_now)
{
    const CountOpts excl{.exclude_broadcaster = true, .subject = std::nullopt, .exclude_party = std::nullopt};
    for (const auto& v : tally_.values_of(MsgKind::Ack))
    {
        if (tally_.count(MsgKind::Ack, v, excl) >= t_quorum_ && !ack_quorum_seen_.count(v))
        {
            ack_quorum_seen_.insert(v);
            lock_ = v;
            if (local_now <= commit_window_ && !committed_)
                emit_commit(out, v);
            return true;
        }
    }
    for (const auto& v : tally_.values_of(MsgKind::Ack))
    {
        if (tally_.count(MsgKind::Ack, v, excl) >= t_vote_ && !voted_)
        {
            voted_ = true;
            out.push_back(SendAll{make_msg(MsgKind::Vote, v)});
            return true;
        }
    }
    for (const auto& v : tally_.values_of(MsgKind::Vote))
    {
        if (tally_.count(MsgKind::Vote, v, excl) >= t_quorum_ && !vote_quorum_seen_.count(v))
        {
            vote_quorum_seen_.insert(v);
            lock_ = v;
            return true;
        }
    }
    return false;
}

// ------------------------------------------------------------------ Bb3

Bb3Machine::Bb3Machine(const Config& cfg, PartyId self)
    : SyncMachineBase(ProtocolId::Bb3, cfg, self)
{
    t_echo_ = cfg.n - cfg.f;
    t_amp_ = cfg.f + 1;
    t_commit_ = cfg.n - cfg.f;
    commit_window_ = Time{3} * big_delta_ + sigma_param_;
}

std::vector<Action> Bb3Machine::do_start()
{
    std::vector<Action> out;
    out.push_back(SetTimer{Time{4} * big_delta_ + Time{2} * sigma_param_, kBaTimerTag});
    if (self_ == kBroadcaster)
        out.push_back(SendAll{make_msg(MsgKind::Propose, cfg_.broadcaster_input)});
    return out;
}

std::vector<Action> Bb3Machine::do_delivered(const Envelope& env)
{
    std::vector<Action> out;
    tally_.insert(env);
    if (env.msg.kind == MsgKind::Propose && env.sender == kBroadcaster && !echoed_)
    {
        echoed_ = true;
        out.push_back(SendAll{make_msg(MsgKind::Echo, env.msg.value)});
    }
    Time local_now = local_time_of(env.deliver_time);
    while (run_rules(out, local_now))
    {
    }
    return out;
}

bool Bb3Machine::run_rules(std::vector<Action>& out, const Time& local_now)
{
    for (const auto& v : tally_.values_of(MsgKind::Echo))
    {
        if (tally_.count(MsgKind::Echo, v) >= t_echo_ && !voted_)
        {
            voted_ = true;
            lock_ = v;
            out.push_back(SendAll{make_msg(MsgKind::Vote, v)});
            return true;
        }
    }
    for (const auto& v : tally_.values_of(MsgKind::Vote))
    {
        if (tally_.count(MsgKind::Vote, v) >= t_amp_ && !voted_)
        {
            voted_ = true;
            lock_ = v;
            out.push_back(SendAll{make_msg(MsgKind::Vote, v)});
            return true;
        }
    }
    for (const auto& v : tally_.values_of(MsgKind::Vote))
    {
        if (tally_.count(MsgKind::Vote, v) >= t_commit_ && !vote_quorum_seen_.count(v))
        {
            vote_quorum_seen_.insert(v);
            lock_ = v;
            if (local_now <= commit_window_ && !committed_)
                emit_commit(out, v);
            return true;
        }
    }
    return false;
}

} // namespace brblab
