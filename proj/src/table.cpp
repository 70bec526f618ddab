// Copyright 2026 The brblab authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0
#include "brblab/table.hpp"

#include "brblab/checkers.hpp"
#include "brblab/scenario_gen.hpp"
#include "brblab/simulator.hpp"

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include <cmath>

namespace brblab {

namespace {

using nlohmann::json;

constexpr double kRoundTol = 1e-9;

bool matches(std::optional<double> claimed, std::optional<double> measured)
{
    if (!claimed) return measured.has_value();
    return measured && std::fabs(*measured - *claimed) <= kRoundTol;
}

std::string cell(std::optional<double> v)
{
    if (!v) return "";
    if (*v == std::floor(*v)) return fmt::format("{}", static_cast<long long>(*v));
    return fmt::format("{:.6g}", *v);
}

void measure(TableRow& row)
{
    {
        const Scenario sc = good_case_scenario(row.protocol, row.n, row.f);
        const Verdict v = check_trace(row.protocol, simulate(sc));
        if (v.truncated) { row.note = "good-case run truncated"; return; }
        if (v.agreement != CheckStatus::Pass || v.validity != CheckStatus::Pass ||
            v.termination != CheckStatus::Pass) {
            row.note = "good-case run failed checks";
            return;
        }
        row.measured_good = v.good_case_rounds;
    }
    if (is_sync_protocol(row.protocol)) {
        row.note = "bad-case column applies to asynchronous protocols only";
    } else {
        const Scenario sc = badcase_scenario(row.protocol, row.n, row.f);
        const Verdict v = check_trace(row.protocol, simulate(sc));
        if (v.truncated) { row.note = "bad-case run truncated"; return; }
        if (v.agreement != CheckStatus::Pass) { row.note = "bad-case run violated agreement"; return; }
        row.measured_bad = v.last_commit_round;
    }
    row.ok = matches(row.claimed_good, row.measured_good) &&
             (is_sync_protocol(row.protocol) || matches(row.claimed_bad, row.measured_bad));
}

} // namespace

bool TableReport::all_ok() const
{
    for (const auto& r : rows)
        if (!r.ok) return false;
    return true;
}

TableReport run_table(const std::string& suite_json_text)
{
    const json suite = json::parse(suite_json_text);
    TableReport rep;
    for (const auto& jr : suite.value("rows", json::array())) {
        TableRow row;
        row.protocol = parse_protocol(jr.at("protocol").get<std::string>());
        row.n = jr.at("n").get<int>();
        row.f = jr.at("f").get<int>();
        if (jr.contains("claimed_good")) row.claimed_good = jr.at("claimed_good").get<double>();
        if (jr.contains("claimed_bad")) row.claimed_bad = jr.at("claimed_bad").get<double>();
        measure(row);
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

std::string table_to_csv(const TableReport& rep)
{
    std::string out = "protocol,n,f,good_rounds,good_claimed,bad_rounds,bad_claimed,ok,note\n";
    for (const auto& r : rep.rows) {
        out += fmt::format("{},{},{},{},{},{},{},{},{}\n", to_string(r.protocol), r.n, r.f,
                           cell(r.measured_good), cell(r.claimed_good), cell(r.measured_bad),
                           cell(r.claimed_bad), r.ok ? "yes" : "no", r.note);
    }
    return out;
}

std::string default_suite_json()
{
    return R"({
  "rows": [
    {"protocol": "bracha",      "n": 4, "f": 1, "claimed_good": 3, "claimed_bad": 4},
    {"protocol": "imbs_raynal", "n": 6, "f": 1, "claimed_good": 2, "claimed_bad": 3},
    {"protocol": "f1brb",       "n": 4, "f": 1, "claimed_good": 2, "claimed_bad": 2},
    {"protocol": "f2brb",       "n": 8, "f": 2, "claimed_good": 2, "claimed_bad": 3},
    {"protocol": "brb24",       "n": 8, "f": 2, "claimed_good": 2, "claimed_bad": 4},
    {"protocol": "brb23",       "n": 9, "f": 2, "claimed_good": 2, "claimed_bad": 3}
  ]
})";
}

} // namespace brblab
