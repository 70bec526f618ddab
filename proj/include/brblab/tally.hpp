// Copyright 2026 The brblab authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0
#pragma once

#include "brblab/types.hpp"

#include <map>
#include <set>

namespace brblab {

// Options for quorum counting.  Counts are always over distinct senders.
struct CountOpts
{
    bool exclude_broadcaster{false};
    std::optional<PartyId> subject;       // restrict to SubjectVote about this party
    std::optional<PartyId> exclude_party; // additionally drop this sender
};

// Per-party message bookkeeping.  A sender contributes at most once to each
// (kind, value, subject) bucket; repeats are ignored.  A sender that sends
// two different values of the same kind counts toward both values' quorums:
// honest parties legitimately ack a second value during amplification, and
// the quorum thresholds already budget for equivocating Byzantine senders.
class Tally
{
  public:
    // Returns true if the envelope was recorded (i.e. first from this sender
    // for its (kind, value, subject) bucket).
    bool insert(const Envelope& env);

    int count(MsgKind kind, const Value& value, const CountOpts& opts = {}) const;

    // Distinct values recorded for a kind (and subject, for SubjectVote), in
    // sorted order.  Drives deterministic rule evaluation.
    std::vector<Value> values_of(MsgKind kind, std::optional<PartyId> subject = std::nullopt) const;

    // Number of distinct senders recorded for a (kind, subject) slot.
    int senders_of(MsgKind kind, std::optional<PartyId> subject = std::nullopt) const;

  private:
    using SlotKey = std::pair<MsgKind, std::optional<PartyId>>;
    std::map<SlotKey, std::map<PartyId, std::set<Value>>> slots_;
};

} // namespace brblab
