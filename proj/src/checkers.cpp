// Copyright 2026 The brblab authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0
#include "brblab/checkers.hpp"

#include "brblab/tally.hpp"

#include <fmt/core.h>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <set>

namespace brblab {

const char* to_string(CheckStatus s)
{
    switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Inconclusive: return "inconclusive";
    case CheckStatus::NotApplicable: return "n/a";
    }
    return "n/a";
}

namespace {

double rounds(const Time& t, const Time& d)
{
    return boost::rational_cast<double>(t / d);
}

struct CommitInfo
{
    std::map<PartyId, Value> values;
    std::map<PartyId, Time> times;
};

CommitInfo collect_commits(const Trace& trace)
{
    CommitInfo ci;
    for (const auto& ev : trace.events) {
        const auto* c = std::get_if<EvCommitted>(&ev.entry);
        if (!c || !trace.config.is_honest(ev.party)) continue;
        if (ci.values.count(ev.party)) continue;
        ci.values.emplace(ev.party, c->value);
        ci.times.emplace(ev.party, ev.time);
    }
    return ci;
}

} // namespace

Verdict check_trace(ProtocolId proto, const Trace& trace)
{
    const Config& cfg = trace.config;
    Verdict v;
    v.truncated = trace.truncated;
    v.warnings = trace.warnings;

    const auto ci = collect_commits(trace);
    v.commits = ci.values;
    v.commit_times = ci.times;

    std::vector<PartyId> honest;
    for (PartyId p = 0; p < cfg.n; ++p)
        if (cfg.is_honest(p)) honest.push_back(p);

    // Agreement: no two correct parties commit different values.
    for (auto it = ci.values.begin(); it != ci.values.end(); ++it)
        for (auto jt = std::next(it); jt != ci.values.end(); ++jt)
            if (it->second != jt->second) {
                v.agreement = CheckStatus::Fail;
                v.witnesses.push_back(fmt::format("agreement: party {} committed {} but party {} committed {}",
                                                  it->first, it->second.display(), jt->first,
                                                  jt->second.display()));
            }

    // Validity: with a correct broadcaster every commit must be its input.
    if (cfg.broadcaster_honest()) {
        v.validity = CheckStatus::Pass;
        for (const auto& [p, val] : ci.values)
            if (val != cfg.broadcaster_input) {
                v.validity = CheckStatus::Fail;
                v.witnesses.push_back(
                    fmt::format("validity: party {} committed {} instead of the broadcast input {}",
                                p, val.display(), cfg.broadcaster_input.display()));
            }
    }

    // Termination.  Broadcast with a synchronous fallback must always finish;
    // reliable broadcast must finish whenever the broadcaster is correct or
    // any correct party commits.
    std::set<PartyId> terminated;
    for (const auto& ev : trace.events)
        if (std::holds_alternative<EvTerminated>(ev.entry) && cfg.is_honest(ev.party))
            terminated.insert(ev.party);
    const bool must_finish = is_sync_protocol(proto) || cfg.broadcaster_honest() || !ci.values.empty();
    if (trace.truncated) {
        v.termination = CheckStatus::Inconclusive;
        v.witnesses.push_back("termination: event budget exhausted before quiescence");
    } else if (must_finish) {
        for (PartyId p : honest) {
            if (!ci.values.count(p)) {
                v.termination = CheckStatus::Fail;
                v.witnesses.push_back(fmt::format("termination: party {} never committed", p));
            } else if (is_sync_protocol(proto) && !terminated.count(p)) {
                v.termination = CheckStatus::Fail;
                v.witnesses.push_back(fmt::format("termination: party {} never halted", p));
            }
        }
    }

    // Latency.  One round is the slowest delivery between correct parties.
    std::optional<Time> last_commit;
    std::optional<Time> first_commit;
    for (const auto& [p, t] : ci.times) {
        if (!last_commit || *last_commit < t) last_commit = t;
        if (!first_commit || t < *first_commit) first_commit = t;
    }
    for (const auto& ev : trace.events) {
        const auto* d = std::get_if<EvDelivered>(&ev.entry);
        if (!d) continue;
        const auto& env = d->env;
        if (!cfg.is_honest(env.sender) || !cfg.is_honest(env.recipient)) continue;
        if (last_commit && *last_commit < env.deliver_time) continue;
        const Time dt = env.deliver_time - env.send_time;
        if (!v.d_max || *v.d_max < dt) v.d_max = dt;
    }
    if (v.d_max && last_commit) {
        v.first_commit_round = rounds(*first_commit, *v.d_max);
        v.last_commit_round = rounds(*last_commit, *v.d_max);
        v.bad_case_extra_rounds = rounds(*last_commit - *first_commit, *v.d_max);
        v.last_commit_wallclock = last_commit;
        if (cfg.broadcaster_honest() && ci.values.size() == honest.size())
            v.good_case_rounds = v.last_commit_round;
    }
    return v;
}

std::string verdict_to_json(const Verdict& v)
{
    nlohmann::json j;
    j["agreement"] = to_string(v.agreement);
    j["validity"] = to_string(v.validity);
    j["termination"] = to_string(v.termination);
    j["violation"] = v.any_violation();
    j["witnesses"] = v.witnesses;
    nlohmann::json commits = nlohmann::json::object();
    for (const auto& [p, val] : v.commits) {
        nlohmann::json c;
        c["value"] = val.is_bottom() ? nlohmann::json(nullptr) : nlohmann::json(val.payload());
        c["time"] = time_to_string(v.commit_times.at(p));
        commits[std::to_string(p)] = c;
    }
    j["commits"] = commits;
    if (v.d_max) j["d_max"] = time_to_string(*v.d_max);
    if (v.good_case_rounds) j["good_case_rounds"] = *v.good_case_rounds;
    if (v.first_commit_round) j["first_commit_round"] = *v.first_commit_round;
    if (v.last_commit_round) j["last_commit_round"] = *v.last_commit_round;
    if (v.bad_case_extra_rounds) j["bad_case_extra_rounds"] = *v.bad_case_extra_rounds;
    if (v.last_commit_wallclock) j["last_commit_wallclock"] = time_to_string(*v.last_commit_wallclock);
    j["truncated"] = v.truncated;
    j["warnings"] = v.warnings;
    return j.dump(2);
}

std::vector<std::string> check_wellformed(const Trace& trace)
{
    std::vector<std::string> out;
    const auto& evs = trace.events;
    for (std::size_t i = 1; i < evs.size(); ++i)
        if (evs[i].time < evs[i - 1].time) {
            out.push_back("events are not sorted by time");
            break;
        }
    auto same_env = [](const Envelope& a, const Envelope& b) {
        return a.msg == b.msg && a.sender == b.sender && a.recipient == b.recipient &&
               a.send_time == b.send_time && a.deliver_time == b.deliver_time;
    };
    std::map<PartyId, int> commit_count;
    for (const auto& ev : evs) {
        if (const auto* d = std::get_if<EvDelivered>(&ev.entry)) {
            if (d->env.deliver_time != ev.time)
                out.push_back(fmt::format("delivery to party {} recorded at the wrong time", ev.party));
            bool matched = false;
            for (const auto& prior : evs) {
                const auto* s = std::get_if<EvSent>(&prior.entry);
                if (s && same_env(s->env, d->env)) {
                    matched = true;
                    break;
                }
            }
            if (!matched)
                out.push_back(fmt::format("delivery to party {} has no matching send", ev.party));
        } else if (const auto* s = std::get_if<EvSent>(&ev.entry)) {
            if (s->env.send_time != ev.time)
                out.push_back(fmt::format("send by party {} recorded at the wrong time", ev.party));
        } else if (std::holds_alternative<EvCommitted>(ev.entry)) {
            if (trace.config.is_honest(ev.party) && ++commit_count[ev.party] > 1)
                out.push_back(fmt::format("party {} committed more than once", ev.party));
        }
    }
    return out;
}

LemmaReport check_fast_commit_exclusive(const Trace& trace)
{
    const Config& cfg = trace.config;
    const int quorum = cfg.n - cfg.f - 1;
    const CountOpts excl{.exclude_broadcaster = true, .subject = std::nullopt, .exclude_party = std::nullopt};
    std::map<PartyId, Tally> tallies;
    struct Commit
    {
        PartyId p;
        Value v;
        bool fast;
    };
    std::vector<Commit> commits;
    std::set<PartyId> done;
    for (const auto& ev : trace.events) {
        if (!cfg.is_honest(ev.party)) continue;
        if (const auto* d = std::get_if<EvDelivered>(&ev.entry)) {
            tallies[ev.party].insert(d->env);
        } else if (const auto* c = std::get_if<EvCommitted>(&ev.entry)) {
            if (!done.insert(ev.party).second) continue;
            const bool fast = tallies[ev.party].count(MsgKind::Ack, c->value, excl) >= quorum;
            commits.push_back(Commit{ev.party, c->value, fast});
        }
    }
    LemmaReport rep;
    for (const auto& a : commits) {
        if (!a.fast) continue;
        for (const auto& b : commits)
            if (b.v != a.v) {
                ++rep.violations;
                rep.notes.push_back(fmt::format(
                    "party {} committed {} from a response quorum while party {} committed {}",
                    a.p, a.v.display(), b.p, b.v.display()));
            }
    }
    return rep;
}

LemmaReport check_lock_uniqueness(const Trace& trace)
{
    const Config& cfg = trace.config;
    const int quorum = cfg.n - cfg.f - 2;
    std::map<PartyId, Tally> tallies;
    std::map<PartyId, std::map<PartyId, Value>> locks; // party -> subject -> value
    for (const auto& ev : trace.events) {
        const auto* d = std::get_if<EvDelivered>(&ev.entry);
        if (!d || !cfg.is_honest(ev.party)) continue;
        auto& tally = tallies[ev.party];
        if (!tally.insert(d->env)) continue;
        auto& mine = locks[ev.party];
        for (PartyId j = 1; j < cfg.n; ++j) {
            if (mine.count(j)) continue;
            for (const auto& v : tally.values_of(MsgKind::SubjectVote, j)) {
                const CountOpts opts{.exclude_broadcaster = true, .subject = j, .exclude_party = j};
                if (tally.count(MsgKind::SubjectVote, v, opts) >= quorum) {
                    mine.emplace(j, v);
                    break;
                }
            }
        }
    }
    LemmaReport rep;
    for (PartyId j = 1; j < cfg.n; ++j) {
        std::map<Value, PartyId> seen;
        for (const auto& [p, mine] : locks) {
            auto it = mine.find(j);
            if (it == mine.end()) continue;
            for (const auto& [v, q] : seen)
                if (v != it->second) {
                    ++rep.violations;
                    rep.notes.push_back(
                        fmt::format("subject {}: party {} locked {} while party {} locked {}", j, p,
                                    it->second.display(), q, v.display()));
                }
            seen.emplace(it->second, p);
        }
    }
    return rep;
}

std::vector<std::pair<PartyId, Message>> delivered_to(const Trace& trace, PartyId recipient,
                                                      std::optional<Time> until)
{
    std::vector<std::pair<PartyId, Message>> out;
    for (const auto& ev : trace.events) {
        const auto* d = std::get_if<EvDelivered>(&ev.entry);
        if (!d || d->env.recipient != recipient) continue;
        if (until && *until < d->env.deliver_time) continue;
        out.emplace_back(d->env.sender, d->env.msg);
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first < b.first;
        return a.second < b.second;
    });
    return out;
}

} // namespace brblab
