// Copyright 2026 The brblab authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0
#pragma once

#include "brblab/tally.hpp"
#include "brblab/types.hpp"

#include <memory>
#include <string>
#include <vector>

namespace brblab {

enum class ProtocolId
{
    Brb24,      // (2,4)-round BRB, n >= 4f
    F1Brb,      // (2,2)-round BRB, n >= 4f, f = 1
    F2Brb,      // (2,3)-round BRB, n >= 4f, f = 2
    Brb23,      // (2,3)-round BRB, n >= 5f-1
    Bracha,     // (3,4)-round BRB, n >= 3f+1
    ImbsRaynal, // (2,3)-round BRB, n >= 5f+1
    Bb2,        // 2*delta synchronous BB, n >= 4f
    Bb3,        // 3*delta synchronous BB, n >= 3f+1
};

const char* to_string(ProtocolId id);
ProtocolId parse_protocol(const std::string& s);
bool is_sync_protocol(ProtocolId id);

// Message kinds a Byzantine party of this protocol can usefully forge.
std::vector<MsgKind> forgeable_kinds(ProtocolId id);

// Resilience / well-formedness checks.  Hard errors (nonsensical configs)
// throw std::invalid_argument; envelope violations come back as warnings so
// out-of-envelope counterexample runs stay expressible.
std::vector<std::string> validate_config(ProtocolId id, const Config& cfg);

// Deterministic per-party protocol state machine.  The environment feeds it
// start / delivery / timer events; it returns the actions to perform, in
// order.  After a Terminate it returns nothing.
class ProtocolMachine
{
  public:
    ProtocolMachine(ProtocolId id, Config cfg, PartyId self)
        : id_(id), cfg_(std::move(cfg)), self_(self)
    {
    }
    virtual ~ProtocolMachine() = default;

    std::vector<Action> start();
    std::vector<Action> on_delivered(const Envelope& env);
    std::vector<Action> on_timer(const Time& local_time, const std::string& tag);

    // Byzantine agreement hand-off (synchronous protocols only).
    virtual bool ba_invoked() const { return false; }
    virtual Value ba_input() const { return Value::bottom(); }
    std::vector<Action> on_ba_output(const Value& w);

    ProtocolId id() const { return id_; }
    PartyId self() const { return self_; }
    const Config& cfg() const { return cfg_; }
    bool committed() const { return committed_.has_value(); }
    const std::optional<Value>& committed_value() const { return committed_; }
    bool terminated() const { return terminated_; }
    const Tally& tally() const { return tally_; }

  protected:
    virtual std::vector<Action> do_start() = 0;
    virtual std::vector<Action> do_delivered(const Envelope& env) = 0;
    virtual std::vector<Action> do_timer(const Time& local_time, const std::string& tag)
    {
        (void)local_time;
        (void)tag;
        return {};
    }
    virtual std::vector<Action> do_ba_output(const Value& w)
    {
        (void)w;
        return {};
    }

    // Books Commit/Terminate into local flags so subclasses emit them through
    // these helpers only once.
    void emit_commit(std::vector<Action>& out, const Value& v);
    void emit_terminate(std::vector<Action>& out);

    ProtocolId id_;
    Config cfg_;
    PartyId self_;
    Tally tally_;
    std::optional<Value> committed_;
    bool terminated_{false};
};

// Test hooks for deliberately broken machines; not reachable from scenarios.
struct MachineMutation
{
    bool brb24_drop_vote1_rule{false}; // remove the n-2f ack -> vote1 amplification
    bool unreachable_commit{false};    // commit threshold bumped past n (never fires)
};

std::unique_ptr<ProtocolMachine> make_machine(ProtocolId id, const Config& cfg, PartyId self,
                                              const MachineMutation& mut = {});

} // namespace brblab
