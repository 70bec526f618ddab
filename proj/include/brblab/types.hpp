// Copyright 2026 The brblab authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0
#pragma once

#include "brblab/time.hpp"

#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

namespace brblab {

// Parties are dense indices 0..n-1.  Index 0 is the designated broadcaster.
using PartyId = int;
inline constexpr PartyId kBroadcaster = 0;

// Opaque payload with a distinguished bottom element.  Protocols never
// inspect payload bytes, only compare for equality.
class Value
{
  public:
    Value() = default; // bottom
    static Value bottom() { return Value{}; }
    static Value of(std::string payload) { return Value{std::move(payload)}; }

    bool is_bottom() const { return !payload_.has_value(); }
    const std::string& payload() const
    {
        if (!payload_)
            throw std::logic_error("payload() on bottom value");
        return *payload_;
    }
    std::string display() const { return payload_ ? *payload_ : "\xE2\x8A\xA5"; }

    friend bool operator==(const Value& a, const Value& b) { return a.payload_ == b.payload_; }
    friend bool operator!=(const Value& a, const Value& b) { return !(a == b); }
    // Bottom sorts first; used for deterministic rule evaluation order.
    friend bool operator<(const Value& a, const Value& b) { return a.payload_ < b.payload_; }

  private:
    explicit Value(std::string p) : payload_(std::move(p)) {}
    std::optional<std::string> payload_;
};

enum class MsgKind
{
    Propose,
    Ack,
    Vote1,
    Vote2,
    SubjectVote,
    Echo,
    Vote,
};

const char* to_string(MsgKind k);
MsgKind parse_msg_kind(const std::string& s);

struct Message
{
    MsgKind kind{MsgKind::Propose};
    Value value;
    // Present iff kind == SubjectVote: the party the vote is about.
    std::optional<PartyId> subject;

    friend bool operator==(const Message& a, const Message& b)
    {
        return a.kind == b.kind && a.value == b.value && a.subject == b.subject;
    }
    friend bool operator<(const Message& a, const Message& b)
    {
        return std::tie(a.kind, a.value, a.subject) < std::tie(b.kind, b.value, b.subject);
    }
};

inline Message make_msg(MsgKind k, Value v) { return Message{k, std::move(v), std::nullopt}; }
inline Message make_subject_vote(PartyId subject, Value v)
{
    return Message{MsgKind::SubjectVote, std::move(v), subject};
}

// A message in flight on an authenticated point-to-point channel.
struct Envelope
{
    Message msg;
    PartyId sender{0};
    PartyId recipient{0};
    Time send_time{0};
    Time deliver_time{0};
};

struct SyncTiming
{
    Time delta{1};     // actual (unknown to the protocol) delay bound
    Time big_delta{1}; // known conservative bound used in guards
    Time sigma{0};     // bound on honest start-time skew, sigma <= delta
    // Per-party protocol start offsets in [0, sigma]; empty -> derived
    // (broadcaster 0, everyone else sigma).
    std::vector<Time> start_offsets;
};

struct AsyncTiming
{
};

using Timing = std::variant<AsyncTiming, SyncTiming>;

inline bool is_sync(const Timing& t) { return std::holds_alternative<SyncTiming>(t); }

struct Config
{
    int n{0};
    int f{0};
    std::set<PartyId> byzantine;
    Value broadcaster_input;
    Timing timing{AsyncTiming{}};

    bool is_byzantine(PartyId p) const { return byzantine.count(p) != 0; }
    bool is_honest(PartyId p) const { return !is_byzantine(p); }
    bool broadcaster_honest() const { return is_honest(kBroadcaster); }
};

// Protocol start offsets: explicit list if configured, otherwise broadcaster
// at 0 and everyone else sigma late.  Async runs start everyone at 0.
inline std::vector<Time> resolve_start_offsets(const Config& cfg)
{
    std::vector<Time> offs(static_cast<size_t>(cfg.n), Time{0});
    if (const auto* sync = std::get_if<SyncTiming>(&cfg.timing))
    {
        if (!sync->start_offsets.empty())
            return sync->start_offsets;
        for (int p = 1; p < cfg.n; ++p)
            offs[static_cast<size_t>(p)] = sync->sigma;
    }
    return offs;
}

// What a protocol state machine asks the environment to do.  Nothing may
// follow a Terminate.
struct SendAll
{
    Message msg;
};
struct SendTo
{
    PartyId to{0};
    Message msg;
};
struct Commit
{
    Value value;
};
struct SetTimer
{
    Time local_time{0};
    std::string tag;
};
struct Terminate
{
};

using Action = std::variant<SendAll, SendTo, Commit, SetTimer, Terminate>;

// Trace entries.  At most one Committed and one Terminated per party; every
// Delivered has a matching earlier Sent.
struct EvSent
{
    Envelope env;
};
struct EvDelivered
{
    Envelope env;
};
struct EvCommitted
{
    Value value;
};
struct EvTerminated
{
};
struct EvTimerFired
{
    std::string tag;
};

using TraceEntry = std::variant<EvSent, EvDelivered, EvCommitted, EvTerminated, EvTimerFired>;

struct TraceEvent
{
    Time time{0};
    PartyId party{0};
    TraceEntry entry;
};

struct Trace
{
    Config config;
    std::vector<TraceEvent> events;
    std::vector<std::string> warnings;
    bool truncated{false}; // event budget hit before the queue drained
};

} // namespace brblab
