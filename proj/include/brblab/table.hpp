// Copyright 2026 The brblab authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0
#pragma once

#include "brblab/protocol.hpp"

#include <optional>
#include <string>
#include <vector>

namespace brblab {

// One benchmark row: measure the honest-broadcaster commit latency and the
// worst adversarial total produced by the protocol's stress scenario, and
// compare both against the claimed constants.
struct TableRow
{
    ProtocolId protocol{ProtocolId::Brb24};
    int n{4};
    int f{1};
    std::optional<double> claimed_good;
    std::optional<double> claimed_bad;

    std::optional<double> measured_good;
    std::optional<double> measured_bad;
    bool ok{false};
    std::string note;
};

struct TableReport
{
    std::vector<TableRow> rows;

    // True when every row measured cleanly and matched its claimed constants.
    bool all_ok() const;
};

// Suite format: {"rows": [{"protocol": "...", "n": int, "f": int,
// "claimed_good": num?, "claimed_bad": num?}, ...]}.
TableReport run_table(const std::string& suite_json_text);

std::string table_to_csv(const TableReport& rep);
std::string default_suite_json();

} // namespace brblab
