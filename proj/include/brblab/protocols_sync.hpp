// Copyright 2026 The brblab authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0
#pragma once

#include "brblab/protocol.hpp"

#include <set>

namespace brblab {

// Tag of the timer that hands the party over to Byzantine agreement.
inline constexpr const char* kBaTimerTag = "ba";
// Pseudo-timer recorded when the agreement output reaches a party.
inline constexpr const char* kBaOutputTag = "ba_output";

// Shared state for the two synchronous broadcast machines.  Local clock of a
// party is global time minus its start offset; guards use big_delta both as
// the delay bound and as the skew parameter, while actual offsets are bounded
// by cfg sigma (<= delta).
class SyncMachineBase : public ProtocolMachine
{
  public:
    SyncMachineBase(ProtocolId id, const Config& cfg, PartyId self);

    bool ba_invoked() const override { return ba_invoked_; }
    Value ba_input() const override { return lock_; }
    const Value& lock() const { return lock_; }

  protected:
    std::vector<Action> do_timer(const Time& local_time, const std::string& tag) override;
    std::vector<Action> do_ba_output(const Value& w) override;

    Time local_time_of(const Time& global) const { return global - offset_; }

    Time big_delta_{1};
    Time sigma_param_{1}; // skew parameter in guards, instantiated as big_delta
    Time offset_{0};
    Value lock_; // bottom until something locks
    bool ba_invoked_{false};
};

// 2*delta synchronous Byzantine broadcast, n >= 4f.  Ack quorums exclude the
// broadcaster.  Commits before local 2*bd+sigma are final immediately; every
// party still joins agreement at local 3*bd+2*sigma and terminates on its
// output.
class Bb2Machine : public SyncMachineBase
{
  public:
    Bb2Machine(const Config& cfg, PartyId self);

  protected:
    std::vector<Action> do_start() override;
    std::vector<Action> do_delivered(const Envelope& env) override;

  private:
    bool run_rules(std::vector<Action>& out, const Time& local_now);

    int t_quorum_{0}; // n-f-1: lock / early commit, and vote quorum
    int t_vote_{0};   // n-2f: send vote
    Time commit_window_{0};
    bool acked_{false};
    bool voted_{false};
    std::set<Value> ack_quorum_seen_;
    std::set<Value> vote_quorum_seen_;
};

// 3*delta synchronous Byzantine broadcast, n >= 3f+1, whole-party echo/vote
// quorums.  Commit window 3*bd+sigma, agreement at local 4*bd+2*sigma.
class Bb3Machine : public SyncMachineBase
{
  public:
    Bb3Machine(const Config& cfg, PartyId self);

  protected:
    std::vector<Action> do_start() override;
    std::vector<Action> do_delivered(const Envelope& env) override;

  private:
    bool run_rules(std::vector<Action>& out, const Time& local_now);

    int t_echo_{0};   // n-f
    int t_amp_{0};    // f+1
    int t_commit_{0}; // n-f votes
    Time commit_window_{0};
    bool echoed_{false};
    bool voted_{false};
    std::set<Value> vote_quorum_seen_;
};

} // namespace brblab
