// Copyright 2026 The brblab authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0
#pragma once

#include "brblab/protocol.hpp"
#include "brblab/types.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace brblab {

enum class CheckStatus { Pass, Fail, Inconclusive, NotApplicable };

const char* to_string(CheckStatus s);

// Outcome of checking one trace.  Round counts are measured against the
// slowest delivery between correct parties (d_max): an execution that
// finishes by time t took t / d_max rounds.
struct Verdict
{
    CheckStatus agreement{CheckStatus::Pass};
    CheckStatus validity{CheckStatus::NotApplicable};
    CheckStatus termination{CheckStatus::Pass};
    std::vector<std::string> witnesses;

    std::map<PartyId, Value> commits; // first commit per correct party
    std::map<PartyId, Time> commit_times;
    std::optional<Time> d_max;
    std::optional<double> good_case_rounds;      // broadcaster correct, all committed
    std::optional<double> first_commit_round;
    std::optional<double> last_commit_round;
    std::optional<double> bad_case_extra_rounds; // spread between first and last commit
    std::optional<Time> last_commit_wallclock;
    bool truncated{false};
    std::vector<std::string> warnings;

    bool any_violation() const
    {
        return agreement == CheckStatus::Fail || validity == CheckStatus::Fail ||
               termination == CheckStatus::Fail;
    }
};

Verdict check_trace(ProtocolId proto, const Trace& trace);
std::string verdict_to_json(const Verdict& v);

// Structural sanity: monotone times, deliveries matched by sends, at most
// one commit per correct party.  Returns a list of findings.
std::vector<std::string> check_wellformed(const Trace& trace);

struct LemmaReport
{
    int violations{0};
    std::vector<std::string> notes;
};

// Two-round path exclusivity: every value committed by a correct party must
// match any value committed straight from a response quorum.
LemmaReport check_fast_commit_exclusive(const Trace& trace);

// Per-subject lock uniqueness: correct parties never lock different values
// for the same subject.
LemmaReport check_lock_uniqueness(const Trace& trace);

// Delivery multiset of one recipient up to and including `until`, as
// (sender, message) pairs in sorted order; for indistinguishability tests.
std::vector<std::pair<PartyId, Message>> delivered_to(const Trace& trace, PartyId recipient,
                                                      std::optional<Time> until = std::nullopt);

} // namespace brblab
