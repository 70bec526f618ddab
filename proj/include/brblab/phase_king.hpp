// Copyright 2026 The brblab authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0
#pragma once

#include "brblab/types.hpp"

#include <map>

namespace brblab {

// What a Byzantine party says during the agreement rounds.
struct BaAdversary
{
    enum class Kind
    {
        Silent,   // sends nothing
        Constant, // sends value a to everyone
        Split,    // a to the lower half of party ids, b to the upper half
    };
    Kind kind{Kind::Silent};
    Value a;
    Value b;
};

// King-based Byzantine agreement over arbitrary values, n >= 3f+1.  Runs f+1
// phases of three lock-step exchanges (values, proposals, king broadcast);
// the per-phase king is the party with the phase's index, so at least one
// phase has an honest king.  Deterministic given the adversary behavior.
//
// Returns each honest party's decision; agreement guarantees they are all
// equal, validity guarantees a common honest input is kept.
std::map<PartyId, Value> phase_king_run(const std::map<PartyId, Value>& honest_inputs,
                                        const Config& cfg, const BaAdversary& adv = {});

// Convenience wrapper returning the common decision.  Throws
// std::invalid_argument when n <= 3f and std::logic_error if the outputs ever
// disagree (cannot happen within the resilience bound).
Value phase_king_ba(const std::map<PartyId, Value>& honest_inputs, const Config& cfg,
                    const BaAdversary& adv = {});

// Wall-clock cost of the boxed agreement: (f+1) phases, three lock-step
// rounds each, a round lasting 2*big_delta.
Time ba_duration(const Config& cfg);

} // namespace brblab
