// Copyright 2026 The brblab authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0
#include "brblab/checkers.hpp"
#include "brblab/scenario_gen.hpp"
#include "brblab/simulator.hpp"
#include "brblab/trace_io.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

using namespace brblab;

namespace {

const Value v0 = Value::of("0");
const Value v1 = Value::of("1");

struct Run
{
    Scenario sc;
    Trace trace;
    Verdict verdict;
};

std::vector<Run> run_all(std::vector<Scenario> scs)
{
    std::vector<Run> out;
    for (auto& sc : scs) {
        Run r;
        r.trace = simulate(sc);
        r.verdict = check_trace(sc.protocol, r.trace);
        r.sc = std::move(sc);
        out.push_back(std::move(r));
    }
    return out;
}

void check_commits(const Verdict& v, const std::map<PartyId, std::pair<Value, Time>>& expect)
{
    REQUIRE(v.commits.size() == expect.size());
    for (const auto& [p, vt] : expect) {
        INFO("party " << p);
        REQUIRE(v.commits.count(p) == 1);
        CHECK(v.commits.at(p) == vt.first);
        CHECK(v.commit_times.at(p) == vt.second);
    }
}

} // namespace

TEST_CASE("split worlds at one fault force disagreement in the replayed runs")
{
    auto runs = run_all(thm2_scenario(1));
    REQUIRE(runs.size() == 4);
    CHECK(runs[0].sc.name == "thm2-e1-f1");
    CHECK_FALSE(runs[0].sc.expect_violation);
    CHECK(runs[0].verdict.agreement == CheckStatus::Pass);
    check_commits(runs[0].verdict, {{0, {v0, Time{2}}}, {1, {v0, Time{2}}}});
    CHECK(runs[1].verdict.agreement == CheckStatus::Pass);
    check_commits(runs[1].verdict, {{0, {v1, Time{2}}}, {2, {v1, Time{2}}}});
    for (int i : {2, 3}) {
        INFO(runs[i].sc.name);
        CHECK(runs[i].sc.expect_violation);
        CHECK(runs[i].verdict.agreement == CheckStatus::Fail);
        check_commits(runs[i].verdict, {{1, {v0, Time{2}}}, {2, {v1, Time{2}}}});
        REQUIRE_FALSE(runs[i].verdict.witnesses.empty());
        CHECK(runs[i].verdict.witnesses.front() ==
              "agreement: party 1 committed 0 but party 2 committed 1");
    }
}

TEST_CASE("one-fault replays hide the cross traffic until past the commit")
{
    auto runs = run_all(thm2_scenario(1));
    // Before the decision round the replayed world looks like the clean one.
    CHECK(delivered_to(runs[2].trace, 1, Time{1}) == delivered_to(runs[0].trace, 1, Time{1}));
    CHECK(delivered_to(runs[3].trace, 2, Time{1}) == delivered_to(runs[1].trace, 2, Time{1}));
    // The deferred acks between the split halves land strictly after round 2.
    int deferred = 0;
    for (const auto& ev : runs[2].trace.events) {
        const auto* d = std::get_if<EvDelivered>(&ev.entry);
        if (!d || d->env.msg.kind != MsgKind::Ack) continue;
        const bool cross = (d->env.sender == 1 && d->env.recipient == 2) ||
                           (d->env.sender == 2 && d->env.recipient == 1);
        if (!cross) continue;
        ++deferred;
        CHECK(ev.time > Time{2});
    }
    CHECK(deferred > 0);
}

TEST_CASE("split worlds at two faults stagger one group and break the last run")
{
    auto runs = run_all(thm2_scenario(2));
    REQUIRE(runs.size() == 4);
    check_commits(runs[0].verdict, {{0, {v0, Time{2}}},
                                    {1, {v0, Time{2}}},
                                    {2, {v0, Time{2}}},
                                    {3, {v0, Time{2}}},
                                    {4, {v0, Time{2}}}});
    check_commits(runs[1].verdict, {{0, {v1, Time{2}}},
                                    {3, {v1, Time{2}}},
                                    {4, {v1, Time{2}}},
                                    {5, {v1, Time{2}}},
                                    {6, {v1, Time{2}}}});
    // Third run: party 3 decides on schedule, everyone else needs the votes.
    CHECK(runs[2].verdict.agreement == CheckStatus::Pass);
    CHECK(runs[2].verdict.termination == CheckStatus::Pass);
    check_commits(runs[2].verdict, {{1, {v0, Time{4}}},
                                    {2, {v0, Time{4}}},
                                    {3, {v0, Time{2}}},
                                    {5, {v0, Time{4}}},
                                    {6, {v0, Time{4}}}});
    // Fourth run: party 4 is locked into the mirrored world.
    CHECK(runs[3].verdict.agreement == CheckStatus::Fail);
    check_commits(runs[3].verdict, {{1, {v0, Time{4}}},
                                    {2, {v0, Time{4}}},
                                    {4, {v1, Time{2}}},
                                    {5, {v0, Time{4}}},
                                    {6, {v0, Time{4}}}});
    CHECK(runs[3].verdict.witnesses.size() == 4);
    CHECK(std::count(runs[3].verdict.witnesses.begin(), runs[3].verdict.witnesses.end(),
                     "agreement: party 1 committed 0 but party 4 committed 1") == 1);
}

TEST_CASE("two-fault replays are indistinguishable to the early committer")
{
    auto runs = run_all(thm2_scenario(2));
    CHECK(delivered_to(runs[2].trace, 3, Time{2}) == delivered_to(runs[0].trace, 3, Time{2}));
    CHECK(delivered_to(runs[3].trace, 4, Time{2}) == delivered_to(runs[1].trace, 4, Time{2}));
}

TEST_CASE("the replay chain strands the one-fault protocol at two faults")
{
    auto runs = run_all(thm3_chain(8, ProtocolId::F1Brb));
    REQUIRE(runs.size() == 13);
    CHECK(runs[0].sc.name == "thm3-0-e1-n8");
    CHECK(runs[12].sc.name == "thm3-merged-n8");

    // Clean start: everyone commits 0 in two rounds.
    CHECK(runs[0].verdict.termination == CheckStatus::Pass);
    CHECK(runs[0].verdict.commits.size() == 7);
    for (const auto& [p, v] : runs[0].verdict.commits) {
        CHECK(v == v0);
        CHECK(runs[0].verdict.commit_times.at(p) == Time{2});
    }

    // Second link: only the boundary party still commits.
    CHECK(runs[1].verdict.termination == CheckStatus::Fail);
    check_commits(runs[1].verdict, {{5, {v0, Time{2}}}});
    CHECK(runs[1].verdict.witnesses.size() == 5);
    CHECK(delivered_to(runs[1].trace, 5, Time{2}) == delivered_to(runs[0].trace, 5, Time{2}));

    // Deeper links starve everyone; no commit at all is not a violation when
    // the sender is faulty.
    for (int i : {2, 3, 4, 5}) {
        INFO(runs[i].sc.name);
        CHECK(runs[i].verdict.commits.empty());
        CHECK_FALSE(runs[i].verdict.any_violation());
    }

    // Mirrored chain, input 1.
    CHECK(runs[6].verdict.commits.size() == 7);
    for (const auto& [p, v] : runs[6].verdict.commits)
        CHECK(v == v1);
    CHECK(runs[7].verdict.termination == CheckStatus::Fail);
    check_commits(runs[7].verdict, {{3, {v1, Time{2}}}});

    // The merged world was meant to split the decision between the ends of
    // the chain; the chain starves instead, so it carries the violation flag
    // but produces no commits at all.
    CHECK(runs[12].sc.expect_violation);
    CHECK(runs[12].verdict.commits.empty());
    CHECK_FALSE(runs[12].verdict.any_violation());
}

TEST_CASE("the replay chain cannot strand the two-fault protocol")
{
    auto runs = run_all(thm3_chain(8, ProtocolId::F2Brb));
    REQUIRE(runs.size() == 13);
    for (const auto& r : runs) {
        INFO(r.sc.name);
        CHECK_FALSE(r.verdict.any_violation());
    }
    check_commits(runs[1].verdict, {{1, {v0, Time{2}}},
                                    {2, {v0, Time{2}}},
                                    {3, {v0, Time{2}}},
                                    {4, {v0, Time{2}}},
                                    {5, {v0, Time{2}}},
                                    {7, {v0, Time{2}}}});
    check_commits(runs[2].verdict, {{1, {v0, Time{3}}},
                                    {2, {v0, Time{3}}},
                                    {3, {v0, Time{3}}},
                                    {4, {v0, Time{2}}},
                                    {6, {v0, Time{3}}},
                                    {7, {v0, Time{3}}}});
}

TEST_CASE("randomized adversaries are reproducible per seed")
{
    Scenario sc;
    sc.name = "rb";
    sc.protocol = ProtocolId::Brb24;
    sc.cfg.n = 8;
    sc.cfg.f = 2;
    sc.cfg.byzantine = {6, 7};
    sc.cfg.broadcaster_input = v0;
    sc.adversary.all.name = "random_byz";
    sc.adversary.all.seed = 42;
    sc.adversary.all.pretend_input = v1;
    const std::string a = trace_to_jsonl(simulate(sc));
    const std::string b = trace_to_jsonl(simulate(sc));
    CHECK(a == b);
    sc.adversary.all.seed = 43;
    CHECK(trace_to_jsonl(simulate(sc)) != a);
    const Verdict v = check_trace(sc.protocol, simulate(sc));
    CHECK_FALSE(v.any_violation());
}

TEST_CASE("mirror adversaries speak with a forged proposal in mind")
{
    Scenario sc;
    sc.name = "mh";
    sc.protocol = ProtocolId::Brb24;
    sc.cfg.n = 8;
    sc.cfg.f = 2;
    sc.cfg.byzantine = {6, 7};
    sc.cfg.broadcaster_input = v0;
    sc.adversary.all.name = "mirror_honest";
    sc.adversary.all.pretend_input = v1;
    const Trace tr = simulate(sc);
    int forged_acks = 0, echo_votes = 0;
    for (const auto& ev : tr.events) {
        const auto* s = std::get_if<EvSent>(&ev.entry);
        if (!s || s->env.sender != 6) continue;
        if (s->env.msg.kind == MsgKind::Ack && s->env.msg.value == v1) ++forged_acks;
        if (s->env.msg.kind == MsgKind::Vote1 && s->env.msg.value == v0) ++echo_votes;
    }
    CHECK(forged_acks == 8);  // one forged ack per recipient
    CHECK(echo_votes >= 8);   // inner machine still follows the real quorums
    const Verdict v = check_trace(sc.protocol, tr);
    CHECK_FALSE(v.any_violation());
    CHECK(v.commits.size() == 6);
    for (const auto& [p, val] : v.commits)
        CHECK(val == v0);
}
