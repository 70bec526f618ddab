// Copyright 2026 The brblab authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0
#pragma once

#include "brblab/scenario.hpp"
#include "brblab/types.hpp"

#include <cstdint>
#include <functional>
#include <memory>

namespace brblab {

class ProtocolMachine;

struct SimOptions
{
    std::uint64_t event_budget{0}; // 0: scenario setting, then env, then default
    // Test hook: replaces the machine registry for honest parties.
    std::function<std::unique_ptr<ProtocolMachine>(ProtocolId, const Config&, PartyId)>
        machine_factory;
};

// Deterministic discrete-event run of one scenario.  Events are processed in
// (time, insertion order) priority; the scenario's sched_variant permutes
// same-time delivery runs per recipient.  Throws std::invalid_argument on
// configuration errors that make the run meaningless (bad party counts,
// delay rules that violate the timing model between correct parties).
Trace simulate(const Scenario& sc, const SimOptions& opts = {});

std::uint64_t resolve_event_budget(const Scenario& sc, const SimOptions& opts);

// splitmix64 step; the shared PRNG for scheduling variants and randomized
// Byzantine behavior.
std::uint64_t splitmix64(std::uint64_t& state);

} // namespace brblab
