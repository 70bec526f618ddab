// Copyright 2026 The brblab authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0
#include "brblab/scenario.hpp"

#include <nlohmann/json.hpp>

#include <stdexcept>

namespace brblab {
namespace {

using nlohmann::json;

json value_to_json(const Value& v)
{
    if (v.is_bottom()) return nullptr;
    return v.payload();
}

Value value_from_json(const json& j)
{
    if (j.is_null()) return Value::bottom();
    if (!j.is_string()) throw std::invalid_argument("value must be a string or null");
    return Value::of(j.get<std::string>());
}

json time_to_json(const Time& t) { return time_to_string(t); }

Time time_from_json(const json& j)
{
    if (j.is_number_integer()) return Time(j.get<std::int64_t>());
    if (j.is_string()) return parse_time(j.get<std::string>());
    throw std::invalid_argument("time must be an integer or a \"p/q\" string");
}

const char* delay_mode_name(DelayMode m)
{
    switch (m) {
    case DelayMode::UniformUnit: return "uniform_unit";
    case DelayMode::SyncBounded: return "sync_bounded";
    case DelayMode::Adversarial: return "adversarial";
    }
    return "uniform_unit";
}

DelayMode parse_delay_mode(const std::string& s)
{
    if (s == "uniform_unit") return DelayMode::UniformUnit;
    if (s == "sync_bounded") return DelayMode::SyncBounded;
    if (s == "adversarial") return DelayMode::Adversarial;
    throw std::invalid_argument("unknown delay mode: " + s);
}

json message_to_json(const Message& m)
{
    json j{{"kind", to_string(m.kind)}, {"value", value_to_json(m.value)}};
    if (m.subject) j["subject"] = *m.subject;
    return j;
}

Message message_from_json(const json& j)
{
    Message m;
    m.kind = parse_msg_kind(j.at("kind").get<std::string>());
    m.value = value_from_json(j.at("value"));
    if (j.contains("subject")) m.subject = j.at("subject").get<PartyId>();
    return m;
}

json timing_to_json(const Timing& t)
{
    if (const auto* st = std::get_if<SyncTiming>(&t)) {
        json j{{"kind", "sync"},
               {"delta", time_to_json(st->delta)},
               {"big_delta", time_to_json(st->big_delta)},
               {"sigma", time_to_json(st->sigma)}};
        if (!st->start_offsets.empty()) {
            json offs = json::array();
            for (const auto& o : st->start_offsets) offs.push_back(time_to_json(o));
            j["start_offsets"] = offs;
        }
        return j;
    }
    return json{{"kind", "async"}};
}

Timing timing_from_json(const json& j)
{
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "async") return AsyncTiming{};
    if (kind != "sync") throw std::invalid_argument("unknown timing kind: " + kind);
    SyncTiming st;
    st.delta = time_from_json(j.at("delta"));
    st.big_delta = time_from_json(j.at("big_delta"));
    if (j.contains("sigma")) st.sigma = time_from_json(j.at("sigma"));
    if (j.contains("start_offsets"))
        for (const auto& o : j.at("start_offsets")) st.start_offsets.push_back(time_from_json(o));
    return st;
}

json config_to_json(const Config& c)
{
    json byz = json::array();
    for (PartyId p : c.byzantine) byz.push_back(p);
    return json{{"n", c.n},
                {"f", c.f},
                {"byzantine", byz},
                {"input", value_to_json(c.broadcaster_input)},
                {"timing", timing_to_json(c.timing)}};
}

Config config_from_json(const json& j)
{
    Config c;
    c.n = j.at("n").get<int>();
    c.f = j.at("f").get<int>();
    if (j.contains("byzantine"))
        for (const auto& p : j.at("byzantine")) c.byzantine.insert(p.get<PartyId>());
    if (j.contains("input")) c.broadcaster_input = value_from_json(j.at("input"));
    if (j.contains("timing")) c.timing = timing_from_json(j.at("timing"));
    return c;
}

json rule_to_json(const DelayRule& r)
{
    json j = json::object();
    if (r.from) j["from"] = *r.from;
    if (r.to) j["to"] = *r.to;
    if (r.kind) j["kind"] = to_string(*r.kind);
    if (r.after) j["after"] = time_to_json(*r.after);
    if (r.before) j["before"] = time_to_json(*r.before);
    if (r.delay) j["delay"] = time_to_json(*r.delay);
    if (r.deliver_at) j["deliver_at"] = time_to_json(*r.deliver_at);
    if (r.drop) j["drop"] = true;
    return j;
}

DelayRule rule_from_json(const json& j)
{
    DelayRule r;
    if (j.contains("from")) r.from = j.at("from").get<PartyId>();
    if (j.contains("to")) r.to = j.at("to").get<PartyId>();
    if (j.contains("kind")) r.kind = parse_msg_kind(j.at("kind").get<std::string>());
    if (j.contains("after")) r.after = time_from_json(j.at("after"));
    if (j.contains("before")) r.before = time_from_json(j.at("before"));
    if (j.contains("delay")) r.delay = time_from_json(j.at("delay"));
    if (j.contains("deliver_at")) r.deliver_at = time_from_json(j.at("deliver_at"));
    if (j.contains("drop")) r.drop = j.at("drop").get<bool>();
    return r;
}

json strategy_to_json(const StrategyConf& s)
{
    json j{{"name", s.name}};
    if (!s.assignment.empty()) {
        json a = json::object();
        for (const auto& [p, v] : s.assignment) a[std::to_string(p)] = value_to_json(v);
        j["assignment"] = a;
    }
    if (s.kind) j["kind"] = to_string(*s.kind);
    if (s.send_time) j["send_time"] = time_to_json(*s.send_time);
    if (s.subject) j["subject"] = *s.subject;
    if (!s.pretend_input.is_bottom()) j["pretend_input"] = value_to_json(s.pretend_input);
    if (s.pretend_delay) j["pretend_delay"] = time_to_json(*s.pretend_delay);
    if (!s.plan.empty()) {
        json plan = json::array();
        for (const auto& ps : s.plan)
            plan.push_back(json{{"t", time_to_json(ps.t)}, {"to", ps.to}, {"msg", message_to_json(ps.msg)}});
        j["plan"] = plan;
    }
    if (s.seed != 0) j["seed"] = s.seed;
    if (!s.flip_to.is_bottom()) j["flip_to"] = value_to_json(s.flip_to);
    return j;
}

StrategyConf strategy_from_json(const json& j)
{
    StrategyConf s;
    s.name = j.value("name", std::string{"silent"});
    if (j.contains("assignment"))
        for (const auto& [k, v] : j.at("assignment").items())
            s.assignment[std::stoi(k)] = value_from_json(v);
    if (j.contains("kind")) s.kind = parse_msg_kind(j.at("kind").get<std::string>());
    if (j.contains("send_time")) s.send_time = time_from_json(j.at("send_time"));
    if (j.contains("subject")) s.subject = j.at("subject").get<PartyId>();
    if (j.contains("pretend_input")) s.pretend_input = value_from_json(j.at("pretend_input"));
    if (j.contains("pretend_delay")) s.pretend_delay = time_from_json(j.at("pretend_delay"));
    if (j.contains("plan"))
        for (const auto& ps : j.at("plan"))
            s.plan.push_back(PlannedSend{time_from_json(ps.at("t")), ps.at("to").get<PartyId>(),
                                         message_from_json(ps.at("msg"))});
    if (j.contains("seed")) s.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("flip_to")) s.flip_to = value_from_json(j.at("flip_to"));
    return s;
}

json ba_to_json(const BaAdversary& a)
{
    switch (a.kind) {
    case BaAdversary::Kind::Silent: return json{{"kind", "silent"}};
    case BaAdversary::Kind::Constant:
        return json{{"kind", "constant"}, {"a", value_to_json(a.a)}};
    case BaAdversary::Kind::Split:
        return json{{"kind", "split"}, {"a", value_to_json(a.a)}, {"b", value_to_json(a.b)}};
    }
    return json{{"kind", "silent"}};
}

BaAdversary ba_from_json(const json& j)
{
    BaAdversary a;
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "silent") {
        a.kind = BaAdversary::Kind::Silent;
    } else if (kind == "constant") {
        a.kind = BaAdversary::Kind::Constant;
        a.a = value_from_json(j.at("a"));
    } else if (kind == "split") {
        a.kind = BaAdversary::Kind::Split;
        a.a = value_from_json(j.at("a"));
        a.b = value_from_json(j.at("b"));
    } else {
        throw std::invalid_argument("unknown boxed-agreement adversary kind: " + kind);
    }
    return a;
}

json adversary_to_json(const AdversarySpec& a)
{
    json j{{"all", strategy_to_json(a.all)}};
    if (!a.per_party.empty()) {
        json per = json::object();
        for (const auto& [p, s] : a.per_party) per[std::to_string(p)] = strategy_to_json(s);
        j["per_party"] = per;
    }
    if (a.ba.kind != BaAdversary::Kind::Silent) j["ba"] = ba_to_json(a.ba);
    return j;
}

AdversarySpec adversary_from_json(const json& j)
{
    AdversarySpec a;
    if (j.contains("all")) a.all = strategy_from_json(j.at("all"));
    if (j.contains("per_party"))
        for (const auto& [k, v] : j.at("per_party").items())
            a.per_party[std::stoi(k)] = strategy_from_json(v);
    if (j.contains("ba")) a.ba = ba_from_json(j.at("ba"));
    return a;
}

} // namespace

DelayMode effective_delay_mode(const Scenario& sc)
{
    if (sc.delay_explicit) return sc.delay.mode;
    return is_sync(sc.cfg.timing) ? DelayMode::SyncBounded : DelayMode::UniformUnit;
}

std::string scenario_to_json(const Scenario& sc)
{
    json j{{"name", sc.name},
           {"protocol", to_string(sc.protocol)},
           {"config", config_to_json(sc.cfg)}};
    if (sc.delay_explicit) {
        json d{{"mode", delay_mode_name(sc.delay.mode)}};
        if (!sc.delay.rules.empty()) {
            json rules = json::array();
            for (const auto& r : sc.delay.rules) rules.push_back(rule_to_json(r));
            d["rules"] = rules;
        }
        j["delay"] = d;
    }
    j["adversary"] = adversary_to_json(sc.adversary);
    if (sc.seed != 0) j["seed"] = sc.seed;
    if (sc.event_budget != 0) j["event_budget"] = sc.event_budget;
    if (sc.sched_variant != 0) j["sched_variant"] = sc.sched_variant;
    if (sc.sched_seed != 0) j["sched_seed"] = sc.sched_seed;
    if (sc.expect_violation) j["expect_violation"] = true;
    return j.dump(2);
}

Scenario scenario_from_json(const std::string& text)
{
    json j = json::parse(text);
    Scenario sc;
    sc.name = j.value("name", std::string{});
    sc.protocol = parse_protocol(j.at("protocol").get<std::string>());
    sc.cfg = config_from_json(j.at("config"));
    if (j.contains("delay")) {
        sc.delay_explicit = true;
        const auto& d = j.at("delay");
        sc.delay.mode = parse_delay_mode(d.at("mode").get<std::string>());
        if (d.contains("rules"))
            for (const auto& r : d.at("rules")) sc.delay.rules.push_back(rule_from_json(r));
    }
    if (j.contains("adversary")) sc.adversary = adversary_from_json(j.at("adversary"));
    sc.seed = j.value("seed", std::uint64_t{0});
    sc.event_budget = j.value("event_budget", std::uint64_t{0});
    sc.sched_variant = j.value("sched_variant", 0);
    sc.sched_seed = j.value("sched_seed", std::uint64_t{0});
    sc.expect_violation = j.value("expect_violation", false);
    return sc;
}

} // namespace brblab
