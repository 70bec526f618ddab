// Copyright 2026 The brblab authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0
#include "brblab/protocol.hpp"

#include "brblab/protocols_async.hpp"
#include "brblab/protocols_sync.hpp"

#include <stdexcept>

namespace brblab {

const char* to_string(ProtocolId id)
{
    switch (id)
    {
    case ProtocolId::Brb24:
        return "brb24";
    case ProtocolId::F1Brb:
        return "f1brb";
    case ProtocolId::F2Brb:
        return "f2brb";
    case ProtocolId::Brb23:
        return "brb23";
    case ProtocolId::Bracha:
        return "bracha";
    case ProtocolId::ImbsRaynal:
        return "imbs_raynal";
    case ProtocolId::Bb2:
        return "bb2";
    case ProtocolId::Bb3:
        return "bb3";
    }
    return "?";
}

ProtocolId parse_protocol(const std::string& s)
{
    if (s == "brb24")
        return ProtocolId::Brb24;
    if (s == "f1brb")
        return ProtocolId::F1Brb;
    if (s == "f2brb")
        return ProtocolId::F2Brb;
    if (s == "brb23")
        return ProtocolId::Brb23;
    if (s == "bracha")
        return ProtocolId::Bracha;
    if (s == "imbs_raynal")
        return ProtocolId::ImbsRaynal;
    if (s == "bb2")
        return ProtocolId::Bb2;
    if (s == "bb3")
        return ProtocolId::Bb3;
    throw std::invalid_argument("unknown protocol: '" + s + "'");
}

bool is_sync_protocol(ProtocolId id)
{
    return id == ProtocolId::Bb2 || id == ProtocolId::Bb3;
}

std::vector<MsgKind> forgeable_kinds(ProtocolId id)
{
    switch (id)
    {
    case ProtocolId::Brb24:
        return {MsgKind::Ack, MsgKind::Vote1, MsgKind::Vote2};
    case ProtocolId::F1Brb:
        return {MsgKind::Ack};
    case ProtocolId::F2Brb:
        return {MsgKind::Ack, MsgKind::SubjectVote};
    case ProtocolId::Brb23:
        return {MsgKind::Ack};
    case ProtocolId::Bracha:
        return {MsgKind::Echo, MsgKind::Vote};
    case ProtocolId::ImbsRaynal:
        return {MsgKind::Ack};
    case ProtocolId::Bb2:
        return {MsgKind::Ack, MsgKind::Vote};
    case ProtocolId::Bb3:
        return {MsgKind::Echo, MsgKind::Vote};
    }
    return {};
}

std::vector<std::string> validate_config(ProtocolId id, const Config& cfg)
{
    if (cfg.n <= 0)
        throw std::invalid_argument("n must be positive");
    if (cfg.f < 0)
        throw std::invalid_argument("f must be non-negative");
    for (PartyId p : cfg.byzantine)
        if (p < 0 || p >= cfg.n)
            throw std::invalid_argument("byzantine id out of range: " + std::to_string(p));
    if (static_cast<int>(cfg.byzantine.size()) > cfg.f)
        throw std::invalid_argument("more byzantine parties than f");
    if (is_sync(cfg.timing))
    {
        const auto& t = std::get<SyncTiming>(cfg.timing);
        if (t.delta <= Time{0} || t.big_delta <= Time{0})
            throw std::invalid_argument("delta and big_delta must be positive");
        if (t.sigma < Time{0} || t.sigma > t.delta)
            throw std::invalid_argument("sigma must lie in [0, delta]");
        if (!t.start_offsets.empty())
        {
            if (static_cast<int>(t.start_offsets.size()) != cfg.n)
                throw std::invalid_argument("start_offsets size must equal n");
            for (const auto& off : t.start_offsets)
                if (off < Time{0} || off > t.sigma)
                    throw std::invalid_argument("start offset outside [0, sigma]");
        }
    }
    else if (is_sync_protocol(id))
    {
        throw std::invalid_argument("synchronous protocol requires sync timing");
    }

    std::vector<std::string> warnings;
    auto warn_if = [&](bool bad, const std::string& msg) {
        if (bad)
            warnings.push_back(msg);
    };
    const int n = cfg.n, f = cfg.f;
    switch (id)
    {
    case ProtocolId::Brb24:
        warn_if(n < 4 * f, "brb24 envelope requires n >= 4f");
        break;
    case ProtocolId::F1Brb:
        warn_if(n < 4 * f, "f1brb envelope requires n >= 4f");
        warn_if(f != 1, "f1brb is designed for f = 1");
        break;
    case ProtocolId::F2Brb:
        warn_if(n < 4 * f, "f2brb envelope requires n >= 4f");
        warn_if(f != 2, "f2brb is designed for f = 2");
        break;
    case ProtocolId::Brb23:
        warn_if(n < 5 * f - 1, "brb23 envelope requires n >= 5f-1");
        break;
    case ProtocolId::Bracha:
        warn_if(n < 3 * f + 1, "bracha envelope requires n >= 3f+1");
        break;
    case ProtocolId::ImbsRaynal:
        warn_if(n < 5 * f + 1, "imbs_raynal envelope requires n >= 5f+1");
        break;
    case ProtocolId::Bb2:
        warn_if(n < 4 * f, "bb2 envelope requires n >= 4f");
        break;
    case ProtocolId::Bb3:
        warn_if(n < 3 * f + 1, "bb3 envelope requires n >= 3f+1");
        break;
    }
    return warnings;
}

// A terminated machine emits nothing more; the environment may still deliver
// to it (the channel does not know).
std::vector<Action> ProtocolMachine::start()
{
    return terminated_ ? std::vector<Action>{} : do_start();
}

std::vector<Action> ProtocolMachine::on_delivered(const Envelope& env)
{
    return terminated_ ? std::vector<Action>{} : do_delivered(env);
}

std::vector<Action> ProtocolMachine::on_timer(const Time& local_time, const std::string& tag)
{
    return terminated_ ? std::vector<Action>{} : do_timer(local_time, tag);
}

std::vector<Action> ProtocolMachine::on_ba_output(const Value& w)
{
    return terminated_ ? std::vector<Action>{} : do_ba_output(w);
}

void ProtocolMachine::emit_commit(std::vector<Action>& out, const Value& v)
{
    if (committed_)
        return;
    committed_ = v;
    out.push_back(Commit{v});
}

void ProtocolMachine::emit_terminate(std::vector<Action>& out)
{
    if (terminated_)
        return;
    terminated_ = true;
    out.push_back(Terminate{});
}

std::unique_ptr<ProtocolMachine> make_machine(ProtocolId id, const Config& cfg, PartyId self,
                                              const MachineMutation& mut)
{
    switch (id)
    {
    case ProtocolId::Brb24:
        return std::make_unique<Brb24Machine>(cfg, self, mut);
    case ProtocolId::F1Brb:
        return std::make_unique<F1BrbMachine>(cfg, self, mut);
    case ProtocolId::F2Brb:
        return std::make_unique<F2BrbMachine>(cfg, self);
    case ProtocolId::Brb23:
        return std::make_unique<Brb23Machine>(cfg, self);
    case ProtocolId::Bracha:
        return std::make_unique<BrachaMachine>(cfg, self);
    case ProtocolId::ImbsRaynal:
        return std::make_unique<ImbsRaynalMachine>(cfg, self);
    case ProtocolId::Bb2:
        return std::make_unique<Bb2Machine>(cfg, self);
    case ProtocolId::Bb3:
        return std::make_unique<Bb3Machine>(cfg, self);
    }
    throw std::logic_error("unreachable protocol id");
}

} // namespace brblab
