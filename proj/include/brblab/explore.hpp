// Copyright 2026 The brblab authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0
#pragma once

#include "brblab/checkers.hpp"
#include "brblab/scenario.hpp"

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace brblab {

struct ExploreBounds
{
    std::uint64_t max_executions{1'000'000}; // 0: the whole family
    int sched_variants{2};
    std::uint64_t sched_seed{0};
    std::uint64_t per_exec_event_budget{20'000};
    bool lemma_checks{false};
    int max_violation_examples{5};
    // Restrict to explicit Byzantine sets (default: all subsets of size <= f).
    std::optional<std::vector<std::set<PartyId>>> patterns;
};

struct ViolationExample
{
    std::uint64_t index{0};
    std::string scenario_json;
    std::vector<std::string> witnesses;
};

struct ExplorationReport
{
    std::uint64_t family_size{0};
    std::uint64_t executions{0};
    std::uint64_t agreement_violations{0};
    std::uint64_t validity_violations{0};
    std::uint64_t termination_violations{0};
    std::uint64_t truncated_runs{0};
    std::uint64_t lemma_counterexamples{0};
    std::vector<ViolationExample> examples;
    std::optional<double> max_good_rounds;
    std::optional<double> max_bad_extra_rounds;

    bool clean() const
    {
        return agreement_violations == 0 && validity_violations == 0 &&
               termination_violations == 0 && lemma_counterexamples == 0;
    }
};

// Deterministic enumeration of the bounded adversary family: Byzantine sets
// of size <= f, per-recipient proposal assignments over {v0, v1, none} for a
// Byzantine broadcaster, {silent, mirror(v0), mirror(v1), single-kind
// per-recipient equivocation} for other Byzantine parties, crossed with the
// same-time delivery-order variants.
class ExploreSpace
{
public:
    ExploreSpace(ProtocolId id, int n, int f, const ExploreBounds& bounds);

    std::uint64_t family_size() const { return total_; }
    Scenario scenario_at(std::uint64_t index) const;

    // The enumeration order: a full-period stride over the family so capped
    // runs still sample every region.
    std::uint64_t index_at(std::uint64_t step) const;

private:
    struct PatternSpace
    {
        std::set<PartyId> byz;
        std::vector<std::uint64_t> radices; // per Byzantine party, then variants
        std::uint64_t size{1};
        std::uint64_t offset{0};
    };

    ProtocolId id_;
    int n_;
    int f_;
    ExploreBounds bounds_;
    std::vector<MsgKind> kinds_;
    std::vector<PatternSpace> patterns_;
    std::uint64_t total_{0};
    std::uint64_t stride_{1};
};

ExplorationReport explore(ProtocolId id, int n, int f, const ExploreBounds& bounds = {});
std::string report_to_json(const ExplorationReport& rep);

} // namespace brblab
