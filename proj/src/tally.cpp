// Copyright 2026 The brblab authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0
#include "brblab/tally.hpp"

#include <algorithm>

namespace brblab {

bool Tally::insert(const Envelope& env)
{
    SlotKey key{env.msg.kind, env.msg.subject};
    return slots_[key][env.sender].insert(env.msg.value).second;
}

int Tally::count(MsgKind kind, const Value& value, const CountOpts& opts) const
{
    auto it = slots_.find(SlotKey{kind, opts.subject});
    if (it == slots_.end())
        return 0;
    int c = 0;
    for (const auto& [sender, vals] : it->second)
    {
        if (opts.exclude_broadcaster && sender == kBroadcaster)
            continue;
        if (opts.exclude_party && sender == *opts.exclude_party)
            continue;
        if (vals.count(value))
            ++c;
    }
    return c;
}

std::vector<Value> Tally::values_of(MsgKind kind, std::optional<PartyId> subject) const
{
    std::set<Value> seen;
    auto it = slots_.find(SlotKey{kind, subject});
    if (it == slots_.end())
        return {};
    for (const auto& [sender, vals] : it->second)
        seen.insert(vals.begin(), vals.end());
    return {seen.begin(), seen.end()};
}

int Tally::senders_of(MsgKind kind, std::optional<PartyId> subject) const
{
    auto it = slots_.find(SlotKey{kind, subject});
    return it == slots_.end() ? 0 : static_cast<int>(it->second.size());
}

} // namespace brblab
