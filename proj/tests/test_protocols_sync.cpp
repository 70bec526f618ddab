// Copyright 2026 The brblab authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0
#include "brblab/checkers.hpp"
#include "brblab/phase_king.hpp"
#include "brblab/protocols_sync.hpp"
#include "brblab/scenario_gen.hpp"
#include "brblab/simulator.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace brblab;

namespace {

const Value v0 = Value::of("0");
const Value v1 = Value::of("1");

SyncTiming timing(int big_delta)
{
    SyncTiming st;
    st.delta = Time{1};
    st.big_delta = Time{big_delta};
    st.sigma = Time{1, 2};
    return st;
}

Verdict run_sync_good(ProtocolId id, int n, int f, int big_delta)
{
    return check_trace(id, simulate(good_case_scenario(id, n, f, timing(big_delta))));
}

Scenario byz_broadcaster(ProtocolId id, int n, int f, std::set<PartyId> byz)
{
    Scenario sc;
    sc.name = "byz-broadcaster";
    sc.protocol = id;
    sc.cfg.n = n;
    sc.cfg.f = f;
    sc.cfg.byzantine = std::move(byz);
    sc.cfg.broadcaster_input = v0;
    sc.cfg.timing = timing(2);
    return sc;
}

} // namespace

TEST_CASE("two-round broadcast commits at two deltas whatever the known bound is")
{
    const Verdict base = run_sync_good(ProtocolId::Bb2, 8, 2, 2);
    REQUIRE(base.last_commit_wallclock.has_value());
    CHECK(*base.last_commit_wallclock == Time{2});
    // Bound: 2*delta + skew.
    CHECK(*base.last_commit_wallclock <= Time{2} + Time{1, 2});
    CHECK(base.termination == CheckStatus::Pass);
    CHECK(base.commits.size() == 6);
    for (const auto& [p, v] : base.commits)
        CHECK(v == v0);
    for (int big : {10, 100}) {
        const Verdict other = run_sync_good(ProtocolId::Bb2, 8, 2, big);
        CHECK(other.commits == base.commits);
        CHECK(other.commit_times == base.commit_times);
    }
}

TEST_CASE("three-round broadcast commits at three deltas whatever the known bound is")
{
    const Verdict base = run_sync_good(ProtocolId::Bb3, 4, 1, 2);
    REQUIRE(base.last_commit_wallclock.has_value());
    CHECK(*base.last_commit_wallclock == Time{3});
    CHECK(*base.last_commit_wallclock <= Time{3} + Time{1, 2});
    CHECK(base.termination == CheckStatus::Pass);
    CHECK(base.commits.size() == 3);
    for (int big : {10, 100}) {
        const Verdict other = run_sync_good(ProtocolId::Bb3, 4, 1, big);
        CHECK(other.commits == base.commits);
        CHECK(other.commit_times == base.commit_times);
    }
}

TEST_CASE("an equivocating broadcaster is reconciled by the agreement box")
{
    Scenario sc = byz_broadcaster(ProtocolId::Bb2, 8, 2, {0, 7});
    StrategyConf split;
    split.name = "equivocate_split";
    split.assignment = {{1, v0}, {2, v0}, {3, v0}, {4, v0}, {5, v1}, {6, v1}};
    sc.adversary.per_party[0] = split;
    const Verdict v = check_trace(ProtocolId::Bb2, simulate(sc));
    CHECK(v.agreement == CheckStatus::Pass);
    CHECK(v.termination == CheckStatus::Pass);
    REQUIRE(v.commits.size() == 6);
    for (const auto& [p, val] : v.commits) {
        CHECK(val == v0);
        CHECK(v.commit_times.at(p) == Time{93, 2});
    }
}

TEST_CASE("a silent broadcaster yields a common empty decision")
{
    const Verdict v2 =
        check_trace(ProtocolId::Bb2, simulate(byz_broadcaster(ProtocolId::Bb2, 8, 2, {0, 7})));
    CHECK(v2.agreement == CheckStatus::Pass);
    CHECK(v2.termination == CheckStatus::Pass);
    REQUIRE(v2.commits.size() == 6);
    for (const auto& [p, val] : v2.commits) {
        CHECK(val.is_bottom());
        CHECK(v2.commit_times.at(p) == Time{93, 2});
    }
    const Verdict v3 =
        check_trace(ProtocolId::Bb3, simulate(byz_broadcaster(ProtocolId::Bb3, 4, 1, {0})));
    CHECK(v3.agreement == CheckStatus::Pass);
    CHECK(v3.termination == CheckStatus::Pass);
    REQUIRE(v3.commits.size() == 3);
    for (const auto& [p, val] : v3.commits) {
        CHECK(val.is_bottom());
        CHECK(v3.commit_times.at(p) == Time{73, 2});
    }
}

TEST_CASE("late quorums lock without committing and ride the agreement hand-off")
{
    Config cfg;
    cfg.n = 8;
    cfg.f = 2;
    cfg.broadcaster_input = v0;
    cfg.timing = timing(2); // commit window at local 2*2 + 2 = 6
    auto m = std::make_unique<Bb2Machine>(cfg, 1);
    m->start();
    for (PartyId p : {1, 2, 3, 4, 5}) {
        Envelope e;
        e.msg = make_msg(MsgKind::Ack, v0);
        e.sender = p;
        e.recipient = 1;
        e.deliver_time = Time{7}; // local 13/2, past the window
        m->on_delivered(e);
    }
    CHECK_FALSE(m->committed());
    CHECK(m->lock() == v0);
    CHECK_FALSE(m->ba_invoked());
    m->on_timer(Time{10}, kBaTimerTag);
    CHECK(m->ba_invoked());
    CHECK(m->ba_input() == v0);
    auto acts = m->on_ba_output(v0);
    CHECK(m->committed());
    CHECK(m->terminated());
    bool saw_commit = false;
    for (const auto& a : acts)
        if (std::holds_alternative<Commit>(a))
            saw_commit = true;
    CHECK(saw_commit);
}

TEST_CASE("early commits are final and the hand-off only terminates")
{
    Config cfg;
    cfg.n = 8;
    cfg.f = 2;
    cfg.broadcaster_input = v0;
    cfg.timing = timing(2);
    auto m = std::make_unique<Bb2Machine>(cfg, 1);
    m->start();
    for (PartyId p : {1, 2, 3, 4, 5}) {
        Envelope e;
        e.msg = make_msg(MsgKind::Ack, v0);
        e.sender = p;
        e.recipient = 1;
        e.deliver_time = Time{1};
        m->on_delivered(e);
    }
    REQUIRE(m->committed());
    CHECK_FALSE(m->terminated());
    auto acts = m->on_ba_output(v1);
    CHECK(*m->committed_value() == v0);
    for (const auto& a : acts)
        CHECK_FALSE(std::holds_alternative<Commit>(a));
    CHECK(m->terminated());
}

TEST_CASE("king agreement decides identically for every adversary mouth")
{
    Config cfg;
    cfg.n = 4;
    cfg.f = 1;
    cfg.byzantine = {3};
    cfg.timing = timing(2);
    const std::vector<BaAdversary> advs = {
        {BaAdversary::Kind::Silent, {}, {}},
        {BaAdversary::Kind::Constant, v0, {}},
        {BaAdversary::Kind::Constant, v1, {}},
        {BaAdversary::Kind::Split, v0, v1},
        {BaAdversary::Kind::Split, v1, v0},
    };
    const Value opts[] = {v0, v1};
    for (int bits = 0; bits < 8; ++bits) {
        std::map<PartyId, Value> inputs;
        inputs[0] = opts[bits & 1];
        inputs[1] = opts[(bits >> 1) & 1];
        inputs[2] = opts[(bits >> 2) & 1];
        for (const auto& adv : advs) {
            // Throws if honest outputs ever disagree.
            const Value d = phase_king_ba(inputs, cfg, adv);
            if (inputs[0] == inputs[1] && inputs[1] == inputs[2])
                CHECK(d == inputs[0]);
        }
    }
}

TEST_CASE("king agreement keeps a unanimous input at two faults")
{
    Config cfg;
    cfg.n = 7;
    cfg.f = 2;
    cfg.byzantine = {5, 6};
    cfg.timing = timing(2);
    const std::vector<BaAdversary> advs = {
        {BaAdversary::Kind::Silent, {}, {}},
        {BaAdversary::Kind::Constant, v1, {}},
        {BaAdversary::Kind::Split, v0, v1},
    };
    const Value opts[] = {v0, v1};
    for (int bits = 0; bits < 32; ++bits) {
        std::map<PartyId, Value> inputs;
        for (PartyId p = 0; p < 5; ++p)
            inputs[p] = opts[(bits >> p) & 1];
        bool unanimous = true;
        for (PartyId p = 1; p < 5; ++p)
            unanimous = unanimous && inputs[p] == inputs[0];
        for (const auto& adv : advs) {
            const Value d = phase_king_ba(inputs, cfg, adv);
            if (unanimous)
                CHECK(d == inputs[0]);
        }
    }
}

TEST_CASE("king agreement tolerates and propagates empty inputs")
{
    Config cfg;
    cfg.n = 4;
    cfg.f = 1;
    cfg.byzantine = {3};
    cfg.timing = timing(2);
    std::map<PartyId, Value> all_bottom = {{0, {}}, {1, {}}, {2, {}}};
    CHECK(phase_king_ba(all_bottom, cfg).is_bottom());
    std::map<PartyId, Value> mixed = {{0, v0}, {1, {}}, {2, v1}};
    CHECK_NOTHROW(phase_king_ba(mixed, cfg, {BaAdversary::Kind::Split, v0, v1}));
}

TEST_CASE("king agreement refuses configurations past its resilience")
{
    Config bad;
    bad.n = 6;
    bad.f = 2;
    bad.byzantine = {4, 5};
    bad.timing = timing(2);
    std::map<PartyId, Value> inputs = {{0, v0}, {1, v0}, {2, v0}, {3, v0}};
    CHECK_THROWS_AS(phase_king_ba(inputs, bad), std::invalid_argument);
    Config tiny;
    tiny.n = 3;
    tiny.f = 1;
    tiny.byzantine = {2};
    tiny.timing = timing(2);
    std::map<PartyId, Value> two = {{0, v0}, {1, v0}};
    CHECK_THROWS_AS(phase_king_ba(two, tiny), std::invalid_argument);
}

TEST_CASE("boxed agreement duration scales with faults and the known bound")
{
    Config cfg;
    cfg.n = 4;
    cfg.f = 1;
    SyncTiming st;
    st.big_delta = Time{5};
    cfg.timing = st;
    CHECK(ba_duration(cfg) == Time{60}); // 2 phases * 3 rounds * 2*5
    cfg.f = 2;
    cfg.n = 8;
    st.big_delta = Time{2};
    cfg.timing = st;
    CHECK(ba_duration(cfg) == Time{36});
}
