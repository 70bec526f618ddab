// Copyright 2026 The brblab authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0
#include "brblab/checkers.hpp"
#include "brblab/protocol.hpp"
#include "brblab/scenario_gen.hpp"
#include "brblab/simulator.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

using namespace brblab;

namespace {

const Value v0 = Value::of("0");
const Value v1 = Value::of("1");

Config async_config(int n, int f, std::set<PartyId> byz = {})
{
    Config c;
    c.n = n;
    c.f = f;
    c.byzantine = std::move(byz);
    c.broadcaster_input = v0;
    return c;
}

Envelope deliver(PartyId sender, Message msg, PartyId to)
{
    Envelope e;
    e.msg = std::move(msg);
    e.sender = sender;
    e.recipient = to;
    return e;
}

bool commits(const std::vector<Action>& acts, const Value& v)
{
    return std::any_of(acts.begin(), acts.end(), [&](const Action& a) {
        const auto* c = std::get_if<Commit>(&a);
        return c && c->value == v;
    });
}

bool sends_kind(const std::vector<Action>& acts, MsgKind k)
{
    return std::any_of(acts.begin(), acts.end(), [&](const Action& a) {
        if (const auto* s = std::get_if<SendAll>(&a)) return s->msg.kind == k;
        if (const auto* s = std::get_if<SendTo>(&a)) return s->msg.kind == k;
        return false;
    });
}

Verdict run_good(ProtocolId id, int n, int f)
{
    return check_trace(id, simulate(good_case_scenario(id, n, f)));
}

Verdict run_bad(ProtocolId id, int n, int f)
{
    return check_trace(id, simulate(badcase_scenario(id, n, f)));
}

} // namespace

TEST_CASE("fast commit unlocks at a quorum of non-broadcaster acks")
{
    // n=8, f=2: quorum is 5 acks not counting the broadcaster.
    auto m = make_machine(ProtocolId::Brb24, async_config(8, 2), 1);
    m->start();
    auto acts = m->on_delivered(deliver(0, make_msg(MsgKind::Propose, v0), 1));
    CHECK(sends_kind(acts, MsgKind::Ack));
    for (PartyId p : {1, 2, 3, 4}) {
        m->on_delivered(deliver(p, make_msg(MsgKind::Ack, v0), 1));
        CHECK_FALSE(m->committed());
    }
    auto last = m->on_delivered(deliver(5, make_msg(MsgKind::Ack, v0), 1));
    CHECK(commits(last, v0));
    CHECK(sends_kind(last, MsgKind::Vote1));
    CHECK(sends_kind(last, MsgKind::Vote2));
    CHECK(m->terminated());
}

TEST_CASE("broadcaster acks never count toward the fast quorum")
{
    auto m = make_machine(ProtocolId::Brb24, async_config(8, 2), 1);
    m->start();
    m->on_delivered(deliver(0, make_msg(MsgKind::Propose, v0), 1));
    m->on_delivered(deliver(0, make_msg(MsgKind::Ack, v0), 1));
    for (PartyId p : {1, 2, 3, 4})
        m->on_delivered(deliver(p, make_msg(MsgKind::Ack, v0), 1));
    CHECK_FALSE(m->committed());
}

TEST_CASE("vote path amplifies and commits without a fast quorum")
{
    // n=8, f=2: vote1 after 4 acks; vote2 after 5 vote1; commit at 5 vote2.
    auto m = make_machine(ProtocolId::Brb24, async_config(8, 2), 1);
    m->start();
    for (PartyId p : {1, 2, 3})
        m->on_delivered(deliver(p, make_msg(MsgKind::Ack, v0), 1));
    auto acts = m->on_delivered(deliver(4, make_msg(MsgKind::Ack, v0), 1));
    CHECK(sends_kind(acts, MsgKind::Vote1));
    for (PartyId p : {1, 2, 3, 4})
        m->on_delivered(deliver(p, make_msg(MsgKind::Vote1, v0), 1));
    auto acts2 = m->on_delivered(deliver(5, make_msg(MsgKind::Vote1, v0), 1));
    CHECK(sends_kind(acts2, MsgKind::Vote2));
    for (PartyId p : {1, 2, 3, 4})
        m->on_delivered(deliver(p, make_msg(MsgKind::Vote2, v0), 1));
    auto acts3 = m->on_delivered(deliver(5, make_msg(MsgKind::Vote2, v0), 1));
    CHECK(commits(acts3, v0));
}

TEST_CASE("a vote2 minority triggers the relay rule")
{
    // f+1 = 3 vote2 for a value make a party send vote2 itself.
    auto m = make_machine(ProtocolId::Brb24, async_config(8, 2), 1);
    m->start();
    for (PartyId p : {1, 2})
        m->on_delivered(deliver(p, make_msg(MsgKind::Vote2, v0), 1));
    CHECK_FALSE(m->committed());
    auto acts = m->on_delivered(deliver(3, make_msg(MsgKind::Vote2, v0), 1));
    CHECK(sends_kind(acts, MsgKind::Vote2));
}

TEST_CASE("the f=1 variant commits on literally n minus two acks")
{
    auto m = make_machine(ProtocolId::F1Brb, async_config(4, 1), 1);
    m->start();
    m->on_delivered(deliver(0, make_msg(MsgKind::Propose, v0), 1));
    m->on_delivered(deliver(1, make_msg(MsgKind::Ack, v0), 1));
    CHECK_FALSE(m->committed());
    auto acts = m->on_delivered(deliver(2, make_msg(MsgKind::Ack, v0), 1));
    CHECK(commits(acts, v0));
}

TEST_CASE("the f=2 variant locks per subject and commits on matching locks")
{
    // n=8, f=2: lock needs 4 subject votes (no broadcaster, no subject);
    // commit needs matching locks for 4 subjects.
    auto m = make_machine(ProtocolId::F2Brb, async_config(8, 2), 1);
    m->start();
    auto acts = m->on_delivered(deliver(2, make_msg(MsgKind::Ack, v0), 1));
    CHECK(sends_kind(acts, MsgKind::SubjectVote));
    for (PartyId j : {2, 3, 4, 5}) {
        for (PartyId p : {3, 4, 5, 6}) {
            if (p == j) continue;
            m->on_delivered(deliver(p, make_subject_vote(j, v0), 1));
        }
        m->on_delivered(deliver(7, make_subject_vote(j, v0), 1));
    }
    CHECK(m->committed());
    CHECK(m->committed_value() == v0);
}

TEST_CASE("the f=2 variant also commits on a straight ack quorum")
{
    auto m = make_machine(ProtocolId::F2Brb, async_config(8, 2), 1);
    m->start();
    for (PartyId p : {1, 2, 3, 4})
        m->on_delivered(deliver(p, make_msg(MsgKind::Ack, v0), 1));
    CHECK_FALSE(m->committed());
    auto acts = m->on_delivered(deliver(5, make_msg(MsgKind::Ack, v0), 1));
    CHECK(commits(acts, v0));
}

TEST_CASE("the five f minus one variant re-acks a second value at the amplification bar")
{
    // n=9, f=2: amplification at 5 acks; commit at 6.
    auto m = make_machine(ProtocolId::Brb23, async_config(9, 2), 1);
    m->start();
    m->on_delivered(deliver(0, make_msg(MsgKind::Propose, v1), 1));
    for (PartyId p : {2, 3, 4, 5})
        m->on_delivered(deliver(p, make_msg(MsgKind::Ack, v0), 1));
    CHECK_FALSE(m->committed());
    auto acts = m->on_delivered(deliver(6, make_msg(MsgKind::Ack, v0), 1));
    // Already acked 1; the second ack for 0 must still go out.
    CHECK(sends_kind(acts, MsgKind::Ack));
    auto last = m->on_delivered(deliver(7, make_msg(MsgKind::Ack, v0), 1));
    CHECK(commits(last, v0));
}

TEST_CASE("whole-party counting in the three-round baseline")
{
    // n=4, f=1: echo quorum 3 (broadcaster included), vote quorum 3.
    auto m = make_machine(ProtocolId::Bracha, async_config(4, 1), 1);
    m->start();
    auto e = m->on_delivered(deliver(0, make_msg(MsgKind::Propose, v0), 1));
    CHECK(sends_kind(e, MsgKind::Echo));
    m->on_delivered(deliver(1, make_msg(MsgKind::Echo, v0), 1));
    m->on_delivered(deliver(2, make_msg(MsgKind::Echo, v0), 1));
    auto acts = m->on_delivered(deliver(3, make_msg(MsgKind::Echo, v0), 1));
    CHECK(sends_kind(acts, MsgKind::Vote));
    m->on_delivered(deliver(1, make_msg(MsgKind::Vote, v0), 1));
    m->on_delivered(deliver(2, make_msg(MsgKind::Vote, v0), 1));
    auto last = m->on_delivered(deliver(3, make_msg(MsgKind::Vote, v0), 1));
    CHECK(commits(last, v0));
}

TEST_CASE("vote minority amplification in the three-round baseline")
{
    auto m = make_machine(ProtocolId::Bracha, async_config(4, 1), 1);
    m->start();
    m->on_delivered(deliver(2, make_msg(MsgKind::Vote, v0), 1));
    auto acts = m->on_delivered(deliver(3, make_msg(MsgKind::Vote, v0), 1));
    CHECK(sends_kind(acts, MsgKind::Vote));
}

TEST_CASE("the two-round baseline amplifies acks and commits at n minus f")
{
    // n=6, f=1: amplify at 4 acks, commit at 5 (whole-party counts).
    auto m = make_machine(ProtocolId::ImbsRaynal, async_config(6, 1), 1);
    m->start();
    for (PartyId p : {1, 2, 3})
        m->on_delivered(deliver(p, make_msg(MsgKind::Ack, v0), 1));
    auto acts = m->on_delivered(deliver(4, make_msg(MsgKind::Ack, v0), 1));
    CHECK(sends_kind(acts, MsgKind::Ack));
    auto last = m->on_delivered(deliver(5, make_msg(MsgKind::Ack, v0), 1));
    CHECK(commits(last, v0));
}

TEST_CASE("good cases hit the advertised round counts")
{
    struct Row
    {
        ProtocolId id;
        int n, f;
        double rounds;
    };
    const Row rows[] = {
        {ProtocolId::Bracha, 4, 1, 3.0},     {ProtocolId::ImbsRaynal, 6, 1, 2.0},
        {ProtocolId::F1Brb, 4, 1, 2.0},      {ProtocolId::F2Brb, 8, 2, 2.0},
        {ProtocolId::Brb24, 8, 2, 2.0},      {ProtocolId::Brb23, 9, 2, 2.0},
    };
    for (const auto& r : rows) {
        INFO(to_string(r.id));
        const Verdict v = run_good(r.id, r.n, r.f);
        CHECK(v.agreement == CheckStatus::Pass);
        CHECK(v.validity == CheckStatus::Pass);
        CHECK(v.termination == CheckStatus::Pass);
        REQUIRE(v.good_case_rounds.has_value());
        CHECK(*v.good_case_rounds == r.rounds);
    }
}

TEST_CASE("bad cases stretch to the advertised totals")
{
    struct Row
    {
        ProtocolId id;
        int n, f;
        double total;
    };
    const Row rows[] = {
        {ProtocolId::Bracha, 4, 1, 4.0},     {ProtocolId::ImbsRaynal, 6, 1, 3.0},
        {ProtocolId::F1Brb, 4, 1, 2.0},      {ProtocolId::F2Brb, 8, 2, 3.0},
        {ProtocolId::Brb24, 8, 2, 4.0},      {ProtocolId::Brb23, 9, 2, 3.0},
    };
    for (const auto& r : rows) {
        INFO(to_string(r.id));
        const Verdict v = run_bad(r.id, r.n, r.f);
        CHECK(v.agreement == CheckStatus::Pass);
        CHECK(v.termination == CheckStatus::Pass);
        REQUIRE(v.last_commit_round.has_value());
        CHECK(*v.last_commit_round == r.total);
        REQUIRE(v.first_commit_round.has_value());
        CHECK(*v.first_commit_round < *v.last_commit_round + 0.5);
    }
}

TEST_CASE("bad-case spreads match the extra-round bounds")
{
    // Fast path at round 2, stragglers by the advertised total.
    const Verdict brb24 = run_bad(ProtocolId::Brb24, 8, 2);
    CHECK(*brb24.first_commit_round == 2.0);
    CHECK(*brb24.bad_case_extra_rounds == 2.0);
    const Verdict f1 = run_bad(ProtocolId::F1Brb, 4, 1);
    CHECK(*f1.bad_case_extra_rounds == 0.0);
    const Verdict f2 = run_bad(ProtocolId::F2Brb, 8, 2);
    CHECK(*f2.bad_case_extra_rounds == 1.0);
}

TEST_CASE("terminated machines go quiet")
{
    auto m = make_machine(ProtocolId::F1Brb, async_config(4, 1), 1);
    m->start();
    m->on_delivered(deliver(0, make_msg(MsgKind::Propose, v0), 1));
    m->on_delivered(deliver(1, make_msg(MsgKind::Ack, v0), 1));
    m->on_delivered(deliver(2, make_msg(MsgKind::Ack, v0), 1));
    REQUIRE(m->terminated());
    CHECK(m->on_delivered(deliver(3, make_msg(MsgKind::Ack, v1), 1)).empty());
}

TEST_CASE("commit helpers fire at most once")
{
    auto m = make_machine(ProtocolId::Brb23, async_config(9, 2), 1);
    m->start();
    for (PartyId p : {1, 2, 3, 4, 5, 6})
        m->on_delivered(deliver(p, make_msg(MsgKind::Ack, v0), 1));
    REQUIRE(m->committed());
    CHECK(m->terminated());
    const Value first = *m->committed_value();
    m->on_delivered(deliver(7, make_msg(MsgKind::Ack, v1), 1));
    CHECK(*m->committed_value() == first);
}
