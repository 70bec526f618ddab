// Copyright 2026 The brblab authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0
#include "brblab/trace_io.hpp"

#include <nlohmann/json.hpp>

namespace brblab {
namespace {

using nlohmann::json;

json value_json(const Value& v)
{
    if (v.is_bottom()) return nullptr;
    return v.payload();
}

json msg_json(const Message& m)
{
    json j{{"kind", to_string(m.kind)}, {"value", value_json(m.value)}};
    if (m.subject) j["subject"] = *m.subject;
    return j;
}

json env_json(const Envelope& e)
{
    return json{{"msg", msg_json(e.msg)},
                {"from", e.sender},
                {"to", e.recipient},
                {"sent", time_to_string(e.send_time)},
                {"delivered", time_to_string(e.deliver_time)}};
}

} // namespace

std::string trace_event_to_json(const TraceEvent& ev)
{
    json j{{"t", time_to_string(ev.time)}, {"party", ev.party}};
    if (const auto* s = std::get_if<EvSent>(&ev.entry)) {
        j["event"] = "sent";
        j["env"] = env_json(s->env);
    } else if (const auto* d = std::get_if<EvDelivered>(&ev.entry)) {
        j["event"] = "delivered";
        j["env"] = env_json(d->env);
    } else if (const auto* c = std::get_if<EvCommitted>(&ev.entry)) {
        j["event"] = "committed";
        j["value"] = value_json(c->value);
    } else if (std::holds_alternative<EvTerminated>(ev.entry)) {
        j["event"] = "terminated";
    } else if (const auto* t = std::get_if<EvTimerFired>(&ev.entry)) {
        j["event"] = "timer";
        j["tag"] = t->tag;
    }
    return j.dump();
}

std::string trace_to_jsonl(const Trace& trace)
{
    json header{{"n", trace.config.n},
                {"f", trace.config.f},
                {"truncated", trace.truncated},
                {"warnings", trace.warnings},
                {"events", trace.events.size()}};
    json byz = json::array();
    for (PartyId p : trace.config.byzantine) byz.push_back(p);
    header["byzantine"] = byz;
    std::string out = header.dump();
    out.push_back('\n');
    for (const auto& ev : trace.events) {
        out += trace_event_to_json(ev);
        out.push_back('\n');
    }
    return out;
}

} // namespace brblab
