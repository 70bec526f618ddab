// Copyright 2026 The brblab authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0
#include "brblab/explore.hpp"

#include "brblab/simulator.hpp"

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace brblab {

namespace {

using nlohmann::json;

constexpr std::uint64_t kGoldenPrime = 0x9E3779B97F4A7C15ULL;

std::uint64_t pow_u64(std::uint64_t base, int exp)
{
    std::uint64_t r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

std::vector<std::set<PartyId>> subsets_up_to(int n, int f)
{
    // Size-major, lexicographic within each size; the empty set exercises the
    // all-honest baseline.
    std::vector<std::set<PartyId>> out{{}};
    std::vector<PartyId> combo;
    for (int size = 1; size <= f; ++size) {
        combo.assign(static_cast<std::size_t>(size), 0);
        std::iota(combo.begin(), combo.end(), PartyId{0});
        while (true) {
            out.emplace_back(combo.begin(), combo.end());
            int i = size - 1;
            while (i >= 0 && combo[static_cast<std::size_t>(i)] == n - size + i) --i;
            if (i < 0) break;
            ++combo[static_cast<std::size_t>(i)];
            for (int k = i + 1; k < size; ++k)
                combo[static_cast<std::size_t>(k)] = combo[static_cast<std::size_t>(k - 1)] + 1;
        }
    }
    return out;
}

std::uint64_t coprime_stride(std::uint64_t total)
{
    if (total <= 1) return 1;
    std::uint64_t s = kGoldenPrime % total;
    if (s == 0) s = 1;
    while (std::gcd(s, total) != 1) ++s;
    return s;
}

} // namespace

ExploreSpace::ExploreSpace(ProtocolId id, int n, int f, const ExploreBounds& bounds)
    : id_(id), n_(n), f_(f), bounds_(bounds), kinds_(forgeable_kinds(id))
{
    if (n < 1) throw std::invalid_argument("explore: n must be positive");
    if (f < 0 || f >= n) throw std::invalid_argument("explore: need 0 <= f < n");
    if (bounds.sched_variants < 1)
        throw std::invalid_argument("explore: sched_variants must be >= 1");

    const std::uint64_t recips = pow_u64(3, n_ - 1);
    const std::uint64_t bcast_space = recips;
    const std::uint64_t other_space = 3 + kinds_.size() * recips;

    const auto sets = bounds_.patterns ? *bounds_.patterns : subsets_up_to(n_, f_);
    std::uint64_t offset = 0;
    for (const auto& byz : sets) {
        PatternSpace ps;
        ps.byz = byz;
        ps.offset = offset;
        for (PartyId p : byz) {
            if (p < 0 || p >= n_) throw std::invalid_argument("explore: pattern party out of range");
            ps.radices.push_back(p == kBroadcaster ? bcast_space : other_space);
        }
        ps.radices.push_back(static_cast<std::uint64_t>(bounds_.sched_variants));
        ps.size = 1;
        for (std::uint64_t r : ps.radices) ps.size *= r;
        offset += ps.size;
        patterns_.push_back(std::move(ps));
    }
    total_ = offset;
    stride_ = coprime_stride(total_);
}

std::uint64_t ExploreSpace::index_at(std::uint64_t step) const
{
    if (total_ == 0) return 0;
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(step % total_) * stride_) % total_);
}

Scenario ExploreSpace::scenario_at(std::uint64_t index) const
{
    if (index >= total_) throw std::out_of_range("explore: index outside family");
    std::size_t pi = patterns_.size();
    for (std::size_t i = 0; i < patterns_.size(); ++i) {
        if (index < patterns_[i].offset + patterns_[i].size) { pi = i; break; }
    }
    const PatternSpace& ps = patterns_[pi];
    std::uint64_t rem = index - ps.offset;

    // Last radix (the delivery-order variant) decodes fastest.
    std::vector<std::uint64_t> digits(ps.radices.size());
    for (std::size_t i = ps.radices.size(); i-- > 0;) {
        digits[i] = rem % ps.radices[i];
        rem /= ps.radices[i];
    }

    const Value v0 = Value::of("0");
    const Value v1 = Value::of("1");
    const std::uint64_t recips = pow_u64(3, n_ - 1);

    Scenario sc;
    sc.name = fmt::format("explore-{}-{}", to_string(id_), index);
    sc.protocol = id_;
    sc.cfg.n = n_;
    sc.cfg.f = f_;
    sc.cfg.byzantine = ps.byz;
    sc.cfg.broadcaster_input = v0;
    if (is_sync_protocol(id_)) sc.cfg.timing = SyncTiming{};
    sc.event_budget = bounds_.per_exec_event_budget;
    sc.sched_seed = bounds_.sched_seed;
    sc.sched_variant = static_cast<int>(digits.back());

    auto decode_assignment = [&](std::uint64_t code) {
        std::map<PartyId, Value> a;
        for (PartyId to = 0; to < n_; ++to) {
            if (to == kBroadcaster) continue;
            const std::uint64_t trit = code % 3;
            code /= 3;
            if (trit == 1) a.emplace(to, v0);
            else if (trit == 2) a.emplace(to, v1);
        }
        return a;
    };

    std::size_t di = 0;
    for (PartyId p : ps.byz) {
        const std::uint64_t d = digits[di++];
        StrategyConf conf;
        if (p == kBroadcaster) {
            conf.name = "equivocate_split";
            conf.assignment = decode_assignment(d);
        } else if (d == 0) {
            conf.name = "silent";
        } else if (d <= 2) {
            conf.name = "mirror_honest";
            conf.pretend_input = (d == 1) ? v0 : v1;
        } else {
            const std::uint64_t e = d - 3;
            conf.name = "equivocate_split";
            conf.kind = kinds_[static_cast<std::size_t>(e / recips)];
            conf.assignment = decode_assignment(e % recips);
        }
        sc.adversary.per_party.emplace(p, std::move(conf));
    }
    return sc;
}

ExplorationReport explore(ProtocolId id, int n, int f, const ExploreBounds& bounds)
{
    ExploreSpace space(id, n, f, bounds);
    ExplorationReport rep;
    rep.family_size = space.family_size();

    std::uint64_t steps = space.family_size();
    if (bounds.max_executions > 0) steps = std::min(steps, bounds.max_executions);

    for (std::uint64_t step = 0; step < steps; ++step) {
        const std::uint64_t index = space.index_at(step);
        const Scenario sc = space.scenario_at(index);
        const Trace trace = simulate(sc);
        const Verdict v = check_trace(id, trace);
        ++rep.executions;

        if (v.truncated) ++rep.truncated_runs;
        bool violated = false;
        if (v.agreement == CheckStatus::Fail) { ++rep.agreement_violations; violated = true; }
        if (v.validity == CheckStatus::Fail) { ++rep.validity_violations; violated = true; }
        if (v.termination == CheckStatus::Fail) { ++rep.termination_violations; violated = true; }

        std::vector<std::string> lemma_notes;
        if (bounds.lemma_checks) {
            LemmaReport lr;
            if (id == ProtocolId::Brb24) lr = check_fast_commit_exclusive(trace);
            else if (id == ProtocolId::F2Brb) lr = check_lock_uniqueness(trace);
            if (lr.violations > 0) {
                rep.lemma_counterexamples += static_cast<std::uint64_t>(lr.violations);
                lemma_notes = lr.notes;
                violated = true;
            }
        }

        if (v.good_case_rounds)
            rep.max_good_rounds = std::max(rep.max_good_rounds.value_or(0.0), *v.good_case_rounds);
        if (v.bad_case_extra_rounds)
            rep.max_bad_extra_rounds =
                std::max(rep.max_bad_extra_rounds.value_or(0.0), *v.bad_case_extra_rounds);

        if (violated &&
            rep.examples.size() < static_cast<std::size_t>(bounds.max_violation_examples)) {
            ViolationExample ex;
            ex.index = index;
            ex.scenario_json = scenario_to_json(sc);
            ex.witnesses = v.witnesses;
            ex.witnesses.insert(ex.witnesses.end(), lemma_notes.begin(), lemma_notes.end());
            rep.examples.push_back(std::move(ex));
        }
    }
    return rep;
}

std::string report_to_json(const ExplorationReport& rep)
{
    json j{{"family_size", rep.family_size},
           {"executions", rep.executions},
           {"agreement_violations", rep.agreement_violations},
           {"validity_violations", rep.validity_violations},
           {"termination_violations", rep.termination_violations},
           {"truncated_runs", rep.truncated_runs},
           {"lemma_counterexamples", rep.lemma_counterexamples},
           {"clean", rep.clean()}};
    if (rep.max_good_rounds) j["max_good_rounds"] = *rep.max_good_rounds;
    if (rep.max_bad_extra_rounds) j["max_bad_extra_rounds"] = *rep.max_bad_extra_rounds;
    json ex = json::array();
    for (const auto& e : rep.examples) {
        ex.push_back(json{{"index", e.index},
                          {"scenario", json::parse(e.scenario_json)},
                          {"witnesses", e.witnesses}});
    }
    j["examples"] = ex;
    return j.dump(2);
}

} // namespace brblab
