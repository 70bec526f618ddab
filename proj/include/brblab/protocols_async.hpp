// Copyright 2026 The brblab authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0
#pragma once

#include "brblab/protocol.hpp"

#include <map>
#include <set>

namespace brblab {

// (2,4)-round reliable broadcast, n >= 4f.  Quorums exclude the broadcaster.
// Fast path: n-f-1 acks commit in round 2.  Slow path: vote1/vote2 relay
// closes the gap within two extra rounds after the first honest commit.
class Brb24Machine : public ProtocolMachine
{
  public:
    Brb24Machine(const Config& cfg, PartyId self, const MachineMutation& mut = {});

  protected:
    std::vector<Action> do_start() override;
    std::vector<Action> do_delivered(const Envelope& env) override;

  private:
    bool run_rules(std::vector<Action>& out);

    int t_commit_{0}; // n-f-1: fast commit, vote2-from-vote1, slow commit
    int t_vote1_{0};  // n-2f
    int t_amp_{0};    // f+1: vote2 relay
    bool acked_{false};
    bool sent_vote1_{false};
    bool sent_vote2_{false};
    MachineMutation mut_;
};

// (2,2)-round reliable broadcast for f = 1, n >= 4.  Single rule: n-2 acks
// commit.  The threshold is the protocol's own n-2, independent of cfg.f.
class F1BrbMachine : public ProtocolMachine
{
  public:
    F1BrbMachine(const Config& cfg, PartyId self, const MachineMutation& mut = {});

  protected:
    std::vector<Action> do_start() override;
    std::vector<Action> do_delivered(const Envelope& env) override;

  private:
    int t_commit_{0};
    bool acked_{false};
};

// (2,3)-round reliable broadcast for f = 2, n >= 8.  Per-party vote/lock:
// parties vote on which acks they saw, and commit once n-2f subjects are
// locked on the same value.
class F2BrbMachine : public ProtocolMachine
{
  public:
    F2BrbMachine(const Config& cfg, PartyId self);

    const std::map<PartyId, Value>& locks() const { return locks_; }

  protected:
    std::vector<Action> do_start() override;
    std::vector<Action> do_delivered(const Envelope& env) override;

  private:
    bool run_rules(std::vector<Action>& out);

    int t_commit_{0};    // n-f-1 acks, fast path
    int t_lock_{0};      // n-f-2 subject votes from parties other than the subject
    int t_lock_count_{0}; // n-2f same-value locks commit
    bool acked_{false};
    std::set<PartyId> subject_voted_;
    std::map<PartyId, Value> locks_;
};

// (2,3)-round reliable broadcast, n >= 5f-1.  Ack amplification: n-2f acks
// for v cause a party to ack v itself (once per value), n-f-1 acks commit.
class Brb23Machine : public ProtocolMachine
{
  public:
    Brb23Machine(const Config& cfg, PartyId self);

  protected:
    std::vector<Action> do_start() override;
    std::vector<Action> do_delivered(const Envelope& env) override;

  private:
    bool run_rules(std::vector<Action>& out);

    int t_amp_{0};    // n-2f
    int t_commit_{0}; // n-f-1
    bool saw_proposal_{false};
    std::set<Value> sent_ack_;
};

// Classic (3,4)-round reliable broadcast, n >= 3f+1.  Echo/vote quorums are
// whole-party counts (the broadcaster's own echo and vote count).
class BrachaMachine : public ProtocolMachine
{
  public:
    BrachaMachine(const Config& cfg, PartyId self);

  protected:
    std::vector<Action> do_start() override;
    std::vector<Action> do_delivered(const Envelope& env) override;

  private:
    bool run_rules(std::vector<Action>& out);

    int t_echo_{0};   // n-f echoes -> vote
    int t_amp_{0};    // f+1 votes -> vote
    int t_commit_{0}; // n-f votes
    bool echoed_{false};
    bool voted_{false};
};

// (2,3)-round reliable broadcast, n >= 5f+1, whole-party counts.  Relay on
// n-2f acks, commit on n-f acks.
class ImbsRaynalMachine : public ProtocolMachine
{
  public:
    ImbsRaynalMachine(const Config& cfg, PartyId self);

  protected:
    std::vector<Action> do_start() override;
    std::vector<Action> do_delivered(const Envelope& env) override;

  private:
    bool run_rules(std::vector<Action>& out);

    int t_amp_{0};    // n-2f
    int t_commit_{0}; // n-f
    bool saw_proposal_{false};
    std::set<Value> sent_ack_;
};

} // namespace brblab
