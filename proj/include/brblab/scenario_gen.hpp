// Copyright 2026 The brblab authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0
#pragma once

#include "brblab/scenario.hpp"

#include <optional>
#include <vector>

namespace brblab {

// Correct broadcaster, f silent Byzantine parties, lock-step unit delays
// (or the synchronous bound for clocked protocols).
Scenario good_case_scenario(ProtocolId id, int n, int f,
                            std::optional<SyncTiming> sync = std::nullopt);

// Byzantine broadcaster proposes to a minimal subset and one Byzantine
// helper tops up exactly one party's quorum: exactly one correct party
// commits on the earliest path, the rest need the relay rounds.
Scenario badcase_scenario(ProtocolId id, int n, int f);

// The four-execution split-world family at n = 4f-1 (one broadcaster plus
// groups A, B, C, D of sizes f, f-1, f-1, f).  Executions 1 and 2 are clean
// runs with mirrored Byzantine groups; executions 3 and 4 script the
// broadcaster split and replay group C (resp. B) transcripts with a
// two-round send cutoff toward the committing group.
std::vector<Scenario> thm2_scenario(int f);

// The execution chain at f = 2: a clean run, then executions that hand the
// proposal to ever fewer parties while one Byzantine party replays its
// previous-execution transcript to the boundary party; the mirrored chain
// with input 1; and the merged execution where the broadcaster splits
// between party 1 (input 0) and party n-1 (input 1) with all traffic
// between those two delayed past two rounds.
std::vector<Scenario> thm3_chain(int n, ProtocolId target);

// Parse a scenario file; resolves generator references (either a top-level
// "generator" object or a generator name in the adversary strategy field).
Scenario load_scenario(const std::string& json_text);

} // namespace brblab
