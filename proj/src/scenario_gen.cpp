// Copyright 2026 The brblab authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0
#include "brblab/scenario_gen.hpp"

#include "brblab/simulator.hpp"

#include <fmt/core.h>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

namespace brblab {
namespace {

const Value kV0 = Value::of("0");
const Value kV1 = Value::of("1");

Config async_cfg(int n, int f, std::set<PartyId> byz, Value input)
{
    Config cfg;
    cfg.n = n;
    cfg.f = f;
    cfg.byzantine = std::move(byz);
    cfg.broadcaster_input = std::move(input);
    cfg.timing = AsyncTiming{};
    return cfg;
}

StrategyConf silent_conf()
{
    StrategyConf c;
    c.name = "silent";
    return c;
}

StrategyConf scripted_conf(std::vector<PlannedSend> plan)
{
    StrategyConf c;
    c.name = "scripted";
    c.plan = std::move(plan);
    return c;
}

StrategyConf mirror_conf(Value pretend)
{
    StrategyConf c;
    c.name = "mirror_honest";
    c.pretend_input = std::move(pretend);
    return c;
}

// All messages `sender` sent to any party in `to` (optionally only those
// sent before `cutoff`), as a replayable plan.
std::vector<PlannedSend> extract_plan(const Trace& trace, PartyId sender,
                                      const std::set<PartyId>& to,
                                      std::optional<Time> cutoff = std::nullopt)
{
    std::vector<PlannedSend> plan;
    for (const auto& ev : trace.events) {
        const auto* s = std::get_if<EvSent>(&ev.entry);
        if (!s || s->env.sender != sender) continue;
        if (!to.count(s->env.recipient)) continue;
        if (cutoff && !(s->env.send_time < *cutoff)) continue;
        plan.push_back(PlannedSend{s->env.send_time, s->env.recipient, s->env.msg});
    }
    return plan;
}

void append_plan(std::vector<PlannedSend>& dst, const std::vector<PlannedSend>& src)
{
    dst.insert(dst.end(), src.begin(), src.end());
}

std::set<PartyId> range_set(PartyId lo, PartyId hi) // inclusive bounds, may be empty
{
    std::set<PartyId> out;
    for (PartyId p = lo; p <= hi; ++p) out.insert(p);
    return out;
}

} // namespace

Scenario good_case_scenario(ProtocolId id, int n, int f, std::optional<SyncTiming> sync)
{
    Scenario sc;
    sc.name = fmt::format("good-{}-n{}-f{}", to_string(id), n, f);
    sc.protocol = id;
    std::set<PartyId> byz;
    for (int i = 0; i < f; ++i) byz.insert(n - 1 - i);
    sc.cfg = async_cfg(n, f, std::move(byz), kV0);
    if (is_sync_protocol(id)) {
        SyncTiming st;
        if (sync) {
            st = *sync;
        } else {
            st.delta = Time(1);
            st.big_delta = Time(2);
            st.sigma = Time(1, 2);
        }
        sc.cfg.timing = st;
    }
    return sc;
}

Scenario badcase_scenario(ProtocolId id, int n, int f)
{
    if (is_sync_protocol(id))
        throw std::invalid_argument("bad-case constructions target the asynchronous protocols");
    Scenario sc;
    sc.name = fmt::format("badcase-{}-n{}-f{}", to_string(id), n, f);
    sc.protocol = id;

    const PartyId helper = n - 1;
    std::set<PartyId> byz{kBroadcaster};
    std::vector<PlannedSend> bcast_plan;
    std::vector<PlannedSend> helper_plan;

    switch (id) {
    case ProtocolId::F1Brb:
        // Proposal to n-2 parties suffices: their responses alone form the
        // commit quorum for everyone.
        for (PartyId p = 1; p <= n - 2; ++p)
            bcast_plan.push_back({Time(0), p, make_msg(MsgKind::Propose, kV0)});
        break;
    case ProtocolId::Brb24:
    case ProtocolId::F2Brb:
    case ProtocolId::Brb23:
        // n-f-2 proposal recipients plus the helper's response give party 1
        // a commit quorum; everyone else relays.
        byz.insert(helper);
        for (PartyId p = 1; p <= n - f - 2; ++p)
            bcast_plan.push_back({Time(0), p, make_msg(MsgKind::Propose, kV0)});
        helper_plan.push_back({Time(1), 1, make_msg(MsgKind::Ack, kV0)});
        break;
    case ProtocolId::Bracha:
        // Whole-party quorums: the broadcaster itself plays the helper by
        // echoing to the proposal subset and voting only toward party 1.
        for (PartyId p = 1; p <= n - 2 * f; ++p) {
            bcast_plan.push_back({Time(0), p, make_msg(MsgKind::Propose, kV0)});
            bcast_plan.push_back({Time(1), p, make_msg(MsgKind::Echo, kV0)});
        }
        bcast_plan.push_back({Time(2), 1, make_msg(MsgKind::Vote, kV0)});
        break;
    case ProtocolId::ImbsRaynal:
        for (PartyId p = 1; p <= n - 2 * f; ++p)
            bcast_plan.push_back({Time(0), p, make_msg(MsgKind::Propose, kV0)});
        bcast_plan.push_back({Time(1), 1, make_msg(MsgKind::Ack, kV0)});
        break;
    default: break;
    }

    sc.cfg = async_cfg(n, f, byz, kV0);
    sc.adversary.per_party[kBroadcaster] = scripted_conf(std::move(bcast_plan));
    if (byz.count(helper)) sc.adversary.per_party[helper] = scripted_conf(std::move(helper_plan));
    return sc;
}

std::vector<Scenario> thm2_scenario(int f)
{
    if (f < 1) throw std::invalid_argument("the split-world family needs f >= 1");
    const int n = 4 * f - 1;
    const auto A = range_set(1, f);
    const auto B = range_set(f + 1, 2 * f - 1);
    const auto C = range_set(2 * f, 3 * f - 2);
    const auto D = range_set(3 * f - 1, 4 * f - 2);

    auto mirrored_run = [&](const std::set<PartyId>& byz_group, const Value& input,
                            const Value& pretend, int idx) {
        Scenario sc;
        sc.name = fmt::format("thm2-e{}-f{}", idx, f);
        sc.protocol = ProtocolId::Brb24;
        sc.cfg = async_cfg(n, f, byz_group, input);
        for (PartyId p : byz_group) sc.adversary.per_party[p] = mirror_conf(pretend);
        return sc;
    };

    Scenario e1 = mirrored_run(D, kV0, kV1, 1);
    Scenario e2 = mirrored_run(A, kV1, kV0, 2);
    const Trace t1 = simulate(e1);
    const Trace t2 = simulate(e2);

    auto union_set = [](std::set<PartyId> a, const std::set<PartyId>& b) {
        a.insert(b.begin(), b.end());
        return a;
    };
    const Time cutoff(2);

    // At f = 1 the fast path needs a single ack, so each committing party
    // must reach its round-2 decision on its own ack first; the scheduler
    // holds cross-group acks until just past that point.  Larger f leaves
    // enough honest acks per group for the split to bite unaided.
    auto defer_cross_acks = [&](Scenario& sc) {
        if (f != 1) return;
        const Time past_commit = Time(2) + Time(1, 1000);
        auto rule = [&](PartyId from, PartyId to) {
            DelayRule r;
            r.from = from;
            r.to = to;
            r.kind = MsgKind::Ack;
            r.deliver_at = past_commit;
            return r;
        };
        for (PartyId a : A)
            for (PartyId d : D) {
                sc.delay.rules.push_back(rule(a, d));
                sc.delay.rules.push_back(rule(d, a));
            }
        sc.delay.mode = DelayMode::Adversarial;
        sc.delay_explicit = true;
    };

    // Execution 3: broadcaster and C Byzantine.  The broadcaster splits the
    // two clean worlds; C replays its input-0 transcript to B for two rounds
    // and its input-1 transcript to A and D.
    Scenario e3;
    e3.name = fmt::format("thm2-e3-f{}", f);
    e3.protocol = ProtocolId::Brb24;
    {
        std::set<PartyId> byz = union_set(C, {kBroadcaster});
        e3.cfg = async_cfg(n, f, byz, kV0);
        std::vector<PlannedSend> s_plan = extract_plan(t1, kBroadcaster, union_set(A, B));
        append_plan(s_plan, extract_plan(t2, kBroadcaster, D));
        e3.adversary.per_party[kBroadcaster] = scripted_conf(std::move(s_plan));
        for (PartyId c : C) {
            std::vector<PlannedSend> plan = extract_plan(t1, c, B, cutoff);
            append_plan(plan, extract_plan(t2, c, union_set(A, D)));
            e3.adversary.per_party[c] = scripted_conf(std::move(plan));
        }
        defer_cross_acks(e3);
        e3.expect_violation = true;
    }

    // Execution 4: the symmetric case with B Byzantine.
    Scenario e4;
    e4.name = fmt::format("thm2-e4-f{}", f);
    e4.protocol = ProtocolId::Brb24;
    {
        std::set<PartyId> byz = union_set(B, {kBroadcaster});
        e4.cfg = async_cfg(n, f, byz, kV0);
        std::vector<PlannedSend> s_plan = extract_plan(t1, kBroadcaster, A);
        append_plan(s_plan, extract_plan(t2, kBroadcaster, union_set(C, D)));
        e4.adversary.per_party[kBroadcaster] = scripted_conf(std::move(s_plan));
        for (PartyId b : B) {
            std::vector<PlannedSend> plan = extract_plan(t2, b, C, cutoff);
            append_plan(plan, extract_plan(t1, b, union_set(A, D)));
            e4.adversary.per_party[b] = scripted_conf(std::move(plan));
        }
        defer_cross_acks(e4);
        e4.expect_violation = true;
    }

    return {std::move(e1), std::move(e2), std::move(e3), std::move(e4)};
}

namespace {

struct ChainExec
{
    Scenario scenario;
    std::vector<PlannedSend> replayer_plan; // empty for the clean first run
    std::vector<PlannedSend> bcast_plan;
};

constexpr int kChainDelayHorizon = 10;

// One execution chain; perm maps the canonical role index to a party id
// (identity for the input-0 chain, i -> n-i for the input-1 chain).
std::vector<ChainExec> build_chain(int n, ProtocolId target, const Value& input,
                                   const std::function<PartyId(PartyId)>& perm)
{
    std::vector<ChainExec> chain;
    const int f = 2;

    ChainExec e1;
    e1.scenario.name = fmt::format("thm3-{}-e1-n{}", input.display(), n);
    e1.scenario.protocol = target;
    e1.scenario.cfg = async_cfg(n, f, {perm(n - 1)}, input);
    e1.scenario.adversary.per_party[perm(n - 1)] = silent_conf();
    chain.push_back(std::move(e1));
    Trace prev = simulate(chain.back().scenario);
    const Trace t1 = prev;

    for (int x = 2; x <= n - 2; ++x) {
        ChainExec ex;
        ex.scenario.name = fmt::format("thm3-{}-e{}-n{}", input.display(), x, n);
        ex.scenario.protocol = target;
        const PartyId replayer = perm(n - x);
        ex.scenario.cfg = async_cfg(n, f, {kBroadcaster, replayer}, input);

        std::set<PartyId> proposal_set;
        for (int i = 1; i <= n - x - 1; ++i) proposal_set.insert(perm(i));
        ex.bcast_plan = extract_plan(t1, kBroadcaster, proposal_set);
        ex.replayer_plan = extract_plan(prev, replayer, {perm(n - x - 1)});
        ex.scenario.adversary.per_party[kBroadcaster] = scripted_conf(ex.bcast_plan);
        ex.scenario.adversary.per_party[replayer] = scripted_conf(ex.replayer_plan);

        DelayRule rule;
        rule.from = perm(n - x + 1);
        rule.before = Time(kChainDelayHorizon);
        rule.deliver_at = Time(kChainDelayHorizon);
        ex.scenario.delay_explicit = true;
        ex.scenario.delay.mode = DelayMode::Adversarial;
        ex.scenario.delay.rules.push_back(rule);

        chain.push_back(std::move(ex));
        prev = simulate(chain.back().scenario);
    }
    return chain;
}

} // namespace

std::vector<Scenario> thm3_chain(int n, ProtocolId target)
{
    if (n < 8) throw std::invalid_argument("the execution chain needs n >= 8");
    auto ident = [](PartyId i) { return i; };
    auto mirror = [n](PartyId i) { return static_cast<PartyId>(n - i); };
    const auto chain0 = build_chain(n, target, kV0, ident);
    const auto chain1 = build_chain(n, target, kV1, mirror);

    std::vector<Scenario> out;
    for (const auto& e : chain0) out.push_back(e.scenario);
    for (const auto& e : chain1) out.push_back(e.scenario);

    // Merged execution: the broadcaster serves party 1 the input-0 world and
    // party n-1 the input-1 world; party 2 replays both boundary transcripts;
    // traffic between parties 1 and n-1 is delayed past two rounds.
    Scenario m;
    m.name = fmt::format("thm3-merged-n{}", n);
    m.protocol = target;
    m.cfg = async_cfg(n, 2, {kBroadcaster, 2}, kV0);
    std::vector<PlannedSend> s_plan = chain0.back().bcast_plan;
    append_plan(s_plan, chain1.back().bcast_plan);
    std::vector<PlannedSend> p2_plan = chain0.back().replayer_plan;
    append_plan(p2_plan, chain1.back().replayer_plan);
    m.adversary.per_party[kBroadcaster] = scripted_conf(std::move(s_plan));
    m.adversary.per_party[2] = scripted_conf(std::move(p2_plan));
    m.delay_explicit = true;
    m.delay.mode = DelayMode::Adversarial;
    for (auto [a, b] : {std::pair<PartyId, PartyId>{1, n - 1}, {n - 1, 1}}) {
        DelayRule rule;
        rule.from = a;
        rule.to = b;
        rule.before = Time(kChainDelayHorizon);
        rule.deliver_at = Time(kChainDelayHorizon);
        m.delay.rules.push_back(rule);
    }
    m.expect_violation = true;
    out.push_back(std::move(m));
    return out;
}

namespace {

Scenario resolve_generator(const nlohmann::json& g, const std::string& full_text)
{
    const std::string name = g.at("name").get<std::string>();
    const std::string exec = g.value("execution", std::string{});
    auto pick = [&](const std::vector<Scenario>& list, const std::string& sel) -> Scenario {
        if (sel.empty()) return list.back();
        for (const auto& sc : list)
            if (sc.name.find(sel) != std::string::npos) return sc;
        throw std::invalid_argument("no generated execution matches selector: " + sel);
    };
    if (name == "thm2") return pick(thm2_scenario(g.at("f").get<int>()), exec);
    if (name == "thm3_chain")
        return pick(thm3_chain(g.at("n").get<int>(),
                               parse_protocol(g.value("target", std::string{"f1brb"}))),
                    exec);
    if (name == "badcase")
        return badcase_scenario(parse_protocol(g.at("protocol").get<std::string>()),
                                g.at("n").get<int>(), g.at("f").get<int>());
    if (name == "good")
        return good_case_scenario(parse_protocol(g.at("protocol").get<std::string>()),
                                  g.at("n").get<int>(), g.at("f").get<int>());
    (void)full_text;
    throw std::invalid_argument("unknown generator: " + name);
}

} // namespace

Scenario load_scenario(const std::string& json_text)
{
    const auto j = nlohmann::json::parse(json_text);
    if (j.contains("generator")) return resolve_generator(j.at("generator"), json_text);
    Scenario sc = scenario_from_json(json_text);
    const std::string& strat = sc.adversary.all.name;
    if (strat == "badcase") return badcase_scenario(sc.protocol, sc.cfg.n, sc.cfg.f);
    if (strat == "thm2" || strat == "thm3_chain") {
        nlohmann::json g;
        g["name"] = strat;
        g["f"] = sc.cfg.f;
        g["n"] = sc.cfg.n;
        g["target"] = to_string(sc.protocol);
        if (j.contains("execution")) g["execution"] = j.at("execution");
        return resolve_generator(g, json_text);
    }
    return sc;
}

} // namespace brblab
