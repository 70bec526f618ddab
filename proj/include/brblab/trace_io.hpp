// Copyright 2026 The brblab authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0
#pragma once

#include "brblab/types.hpp"

#include <string>

namespace brblab {

// One event as a single-line JSON object.
std::string trace_event_to_json(const TraceEvent& ev);

// Whole trace as JSON lines: a header object followed by one line per event.
std::string trace_to_jsonl(const Trace& trace);

} // namespace brblab
