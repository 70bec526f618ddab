// Copyright 2026 The brblab authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0
#include "brblab/phase_king.hpp"

#include <algorithm>
#include <stdexcept>

namespace brblab {

namespace {

std::optional<Value> byz_says(const BaAdversary& adv, PartyId recipient, int n)
{
    switch (adv.kind)
    {
    case BaAdversary::Kind::Silent:
        return std::nullopt;
    case BaAdversary::Kind::Constant:
        return adv.a;
    case BaAdversary::Kind::Split:
        return recipient * 2 < n ? adv.a : adv.b;
    }
    return std::nullopt;
}

// Smallest value whose occurrence count reaches the threshold, if any.
std::optional<Value> first_reaching(const std::map<Value, int>& counts, int threshold)
{
    for (const auto& [v, c] : counts)
        if (c >= threshold)
            return v;
    return std::nullopt;
}

} // namespace

std::map<PartyId, Value> phase_king_run(const std::map<PartyId, Value>& honest_inputs,
                                        const Config& cfg, const BaAdversary& adv)
{
    const int n = cfg.n, f = cfg.f;
    if (n <= 3 * f)
        throw std::invalid_argument("king agreement needs n >= 3f+1");
    for (const auto& [p, v] : honest_inputs)
    {
        (void)v;
        if (cfg.is_byzantine(p))
            throw std::invalid_argument("byzantine party in honest input map");
    }

    std::map<PartyId, Value> pref = honest_inputs;
    for (int phase = 0; phase <= f; ++phase)
    {
        // Exchange 1: everyone reports its preference.
        std::map<PartyId, std::optional<Value>> proposal;
        std::map<PartyId, int> support;
        for (const auto& [r, mine] : pref)
        {
            (void)mine;
            std::map<Value, int> counts;
            for (PartyId s = 0; s < n; ++s)
            {
                std::optional<Value> said = cfg.is_honest(s)
                                                ? std::optional<Value>(pref.at(s))
                                                : byz_says(adv, r, n);
                if (said)
                    ++counts[*said];
            }
            proposal[r] = first_reaching(counts, n - f);
        }
        // Exchange 2: proposals circulate; adopt any value proposed by more
        // than f parties, then count how well supported our value is.
        std::map<PartyId, Value> next = pref;
        for (const auto& [r, mine] : pref)
        {
            (void)mine;
            std::map<Value, int> counts;
            for (PartyId s = 0; s < n; ++s)
            {
                std::optional<Value> said =
                    cfg.is_honest(s) ? proposal.at(s) : byz_says(adv, r, n);
                if (said)
                    ++counts[*said];
            }
            if (auto z = first_reaching(counts, f + 1))
                next[r] = *z;
            auto it = counts.find(next.at(r));
            support[r] = it == counts.end() ? 0 : it->second;
        }
        // Exchange 3: the phase king broadcasts; weakly supported parties
        // adopt its value.
        PartyId king = phase;
        for (auto& [r, v] : next)
        {
            if (support.at(r) >= n - f)
                continue;
            std::optional<Value> king_said = cfg.is_honest(king)
                                                 ? std::optional<Value>(next.at(king))
                                                 : byz_says(adv, r, n);
            if (king_said)
                v = *king_said;
        }
        pref = next;
    }
    return pref;
}

Value phase_king_ba(const std::map<PartyId, Value>& honest_inputs, const Config& cfg,
                    const BaAdversary& adv)
{
    auto out = phase_king_run(honest_inputs, cfg, adv);
    if (out.empty())
        return Value::bottom();
    const Value& first = out.begin()->second;
    for (const auto& [p, v] : out)
    {
        (void)p;
        if (v != first)
            throw std::logic_error("agreement violated inside king algorithm");
    }
    return first;
}

Time ba_duration(const Config& cfg)
{
    const auto& sync = std::get<SyncTiming>(cfg.timing);
    return Time{(cfg.f + 1) * 3 * 2} * sync.big_delta;
}

} // namespace brblab
