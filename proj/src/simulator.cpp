// Copyright 2026 The brblab authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0
#include "brblab/simulator.hpp"

#include "brblab/phase_king.hpp"
#include "brblab/protocol.hpp"
#include "brblab/protocols_sync.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace brblab {

std::uint64_t splitmix64(std::uint64_t& state)
{
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

std::uint64_t resolve_event_budget(const Scenario& sc, const SimOptions& opts)
{
    if (opts.event_budget != 0) return opts.event_budget;
    if (sc.event_budget != 0) return sc.event_budget;
    if (const char* env = std::getenv("BRBLAB_EVENT_BUDGET")) {
        char* end = nullptr;
        const auto v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return v;
    }
    return 1'000'000;
}

namespace {

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b)
{
    std::uint64_t s = a ^ (b + 0x9E3779B97F4A7C15ull + (a << 6) + (a >> 2));
    return splitmix64(s);
}

std::int64_t floor_i64(const Time& t)
{
    const auto num = t.numerator();
    const auto den = t.denominator();
    if (num >= 0) return num / den;
    return -((-num + den - 1) / den);
}

MsgKind default_response_kind(ProtocolId id)
{
    switch (id) {
    case ProtocolId::Bracha:
    case ProtocolId::ImbsRaynal:
    case ProtocolId::Bb3: return MsgKind::Echo;
    default: return MsgKind::Ack;
    }
}

Time default_send_time(MsgKind k)
{
    switch (k) {
    case MsgKind::Propose: return Time(0);
    case MsgKind::Ack:
    case MsgKind::Echo:
    case MsgKind::SubjectVote: return Time(1);
    default: return Time(2);
    }
}

struct QItem
{
    enum class Kind { Start, Deliver, Timer, AdvWake, BaOutput };
    Time t{0};
    std::uint64_t seq{0};
    Kind kind{Kind::Start};
    PartyId party{0};
    Envelope env;
    std::string timer_tag;
    Value ba_value;
};

struct QCmp
{
    bool operator()(const QItem& a, const QItem& b) const
    {
        if (a.t != b.t) return a.t > b.t;
        return a.seq > b.seq;
    }
};

class Simulator
{
public:
    Simulator(const Scenario& sc, const SimOptions& opts) : sc_(sc), opts_(opts) {}

    Trace run()
    {
        trace_.config = sc_.cfg;
        trace_.warnings = validate_config(sc_.protocol, sc_.cfg);
        offsets_ = resolve_start_offsets(sc_.cfg);
        budget_ = resolve_event_budget(sc_, opts_);
        build_parties();
        seed_starts();
        loop();
        std::stable_sort(trace_.events.begin(), trace_.events.end(),
                         [](const TraceEvent& a, const TraceEvent& b) { return a.time < b.time; });
        return std::move(trace_);
    }

private:
    struct ByzState
    {
        StrategyConf conf;
        std::unique_ptr<ProtocolMachine> machine; // mirror_honest / random_byz
        bool randomize{false};
        std::uint64_t rng{0};
    };

    const Scenario& sc_;
    SimOptions opts_;
    Trace trace_;
    std::priority_queue<QItem, std::vector<QItem>, QCmp> q_;
    std::uint64_t next_seq_{0};
    std::uint64_t budget_{0};
    std::uint64_t processed_{0};
    std::vector<Time> offsets_;
    std::map<PartyId, std::unique_ptr<ProtocolMachine>> machines_;
    std::map<PartyId, ByzState> byz_;
    std::map<PartyId, Value> ba_inputs_;
    Time ba_last_invoke_{0};
    bool ba_scheduled_{false};

    const SyncTiming* sync_timing() const { return std::get_if<SyncTiming>(&sc_.cfg.timing); }

    Time unit_delay() const
    {
        const auto* st = sync_timing();
        return st ? st->delta : Time(1);
    }

    void build_parties()
    {
        for (PartyId p = 0; p < sc_.cfg.n; ++p) {
            if (sc_.cfg.is_honest(p)) {
                machines_[p] = opts_.machine_factory
                                   ? opts_.machine_factory(sc_.protocol, sc_.cfg, p)
                                   : make_machine(sc_.protocol, sc_.cfg, p);
                continue;
            }
            ByzState st;
            st.conf = sc_.adversary.conf_for(p);
            const auto& name = st.conf.name;
            if (name == "mirror_honest" || name == "random_byz") {
                Config inner = sc_.cfg;
                if (p == kBroadcaster && !st.conf.pretend_input.is_bottom())
                    inner.broadcaster_input = st.conf.pretend_input;
                st.machine = make_machine(sc_.protocol, inner, p);
                st.randomize = (name == "random_byz");
                st.rng = mix_seed(mix_seed(sc_.seed, st.conf.seed),
                                  static_cast<std::uint64_t>(p));
            } else if (name != "silent" && name != "equivocate_split" && name != "scripted") {
                throw std::invalid_argument("unknown adversary strategy: " + name);
            }
            byz_.emplace(p, std::move(st));
        }
    }

    void enqueue(QItem item)
    {
        item.seq = next_seq_++;
        q_.push(std::move(item));
    }

    void seed_starts()
    {
        for (PartyId p = 0; p < sc_.cfg.n; ++p) {
            QItem it;
            it.t = offsets_[static_cast<std::size_t>(p)];
            it.kind = QItem::Kind::Start;
            it.party = p;
            enqueue(std::move(it));
        }
    }

    void loop()
    {
        std::vector<QItem> bucket;
        while (!q_.empty()) {
            const Time t = q_.top().t;
            bucket.clear();
            while (!q_.empty() && q_.top().t == t) {
                bucket.push_back(q_.top());
                q_.pop();
            }
            apply_sched_variant(bucket, t);
            for (auto& item : bucket) {
                if (++processed_ > budget_) {
                    trace_.truncated = true;
                    return;
                }
                dispatch(item);
            }
        }
    }

    // Same-time delivery runs addressed to one recipient may be reordered:
    // variant 0 keeps arrival order, variant 1 reverses it, higher variants
    // shuffle with a PRNG keyed on (seed, variant, recipient, time window).
    void apply_sched_variant(std::vector<QItem>& bucket, const Time& t)
    {
        const int v = sc_.sched_variant;
        if (v == 0) return;
        std::set<PartyId> recipients;
        for (const auto& it : bucket)
            if (it.kind == QItem::Kind::Deliver) recipients.insert(it.party);
        for (PartyId r : recipients) {
            std::vector<std::size_t> pos;
            for (std::size_t i = 0; i < bucket.size(); ++i)
                if (bucket[i].kind == QItem::Kind::Deliver && bucket[i].party == r)
                    pos.push_back(i);
            if (pos.size() < 2) continue;
            std::vector<QItem> run;
            run.reserve(pos.size());
            for (auto i : pos) run.push_back(std::move(bucket[i]));
            if (v == 1) {
                std::reverse(run.begin(), run.end());
            } else {
                std::uint64_t s = mix_seed(sc_.sched_seed, static_cast<std::uint64_t>(v));
                s = mix_seed(s, static_cast<std::uint64_t>(r));
                s = mix_seed(s, static_cast<std::uint64_t>(floor_i64(t)));
                for (std::size_t i = run.size() - 1; i > 0; --i) {
                    const auto j = splitmix64(s) % (i + 1);
                    std::swap(run[i], run[j]);
                }
            }
            for (std::size_t i = 0; i < pos.size(); ++i) bucket[pos[i]] = std::move(run[i]);
        }
    }

    void dispatch(QItem& item)
    {
        switch (item.kind) {
        case QItem::Kind::Start: process_start(item); break;
        case QItem::Kind::Deliver: process_deliver(item); break;
        case QItem::Kind::Timer: process_timer(item); break;
        case QItem::Kind::AdvWake: process_adv_wake(item); break;
        case QItem::Kind::BaOutput: process_ba_output(item); break;
        }
    }

    void record(const Time& t, PartyId p, TraceEntry entry)
    {
        trace_.events.push_back(TraceEvent{t, p, std::move(entry)});
    }

    // Delivery time for one message, or nullopt when the message is dropped.
    // Messages between correct parties can never be dropped, and under
    // synchronous timing must arrive within delta.
    std::optional<Time> assign_delay(PartyId from, PartyId to, MsgKind kind, const Time& send)
    {
        const bool both_honest = sc_.cfg.is_honest(from) && sc_.cfg.is_honest(to);
        const auto* st = sync_timing();
        Time d = unit_delay();
        if (effective_delay_mode(sc_) == DelayMode::Adversarial) {
            for (const auto& r : sc_.delay.rules) {
                if (r.from && *r.from != from) continue;
                if (r.to && *r.to != to) continue;
                if (r.kind && *r.kind != kind) continue;
                if (r.after && send < *r.after) continue;
                if (r.before && !(send < *r.before)) continue;
                if (r.drop) {
                    if (both_honest)
                        throw std::invalid_argument(
                            "delay rule drops a message between correct parties");
                    return std::nullopt;
                }
                if (r.delay) {
                    if (*r.delay < min_delay_quantum())
                        throw std::invalid_argument("delay rule below the minimum delay quantum");
                    d = *r.delay;
                } else if (r.deliver_at) {
                    d = *r.deliver_at - send;
                    if (d < min_delay_quantum()) d = min_delay_quantum();
                }
                break;
            }
        }
        if (both_honest && st && d > st->delta)
            throw std::invalid_argument(
                "delay rule exceeds the synchronous bound between correct parties");
        Time at = send + d;
        const Time start = offsets_[static_cast<std::size_t>(to)];
        if (at < start) at = start;
        return at;
    }

    void send_message(PartyId from, const Time& send, PartyId to, const Message& msg)
    {
        Envelope env;
        env.msg = msg;
        env.sender = from;
        env.recipient = to;
        env.send_time = send;
        const auto at = assign_delay(from, to, msg.kind, send);
        env.deliver_time = at.value_or(send);
        record(send, from, EvSent{env});
        if (!at) return;
        QItem it;
        it.t = *at;
        it.kind = QItem::Kind::Deliver;
        it.party = to;
        it.env = env;
        enqueue(std::move(it));
    }

    void send_to_all(PartyId from, const Time& send, const Message& msg)
    {
        for (PartyId q = 0; q < sc_.cfg.n; ++q) send_message(from, send, q, msg);
    }

    void process_actions(PartyId p, const Time& now, const std::vector<Action>& actions)
    {
        for (const auto& a : actions) {
            if (const auto* sa = std::get_if<SendAll>(&a)) {
                send_to_all(p, now, sa->msg);
            } else if (const auto* st = std::get_if<SendTo>(&a)) {
                send_message(p, now, st->to, st->msg);
            } else if (const auto* c = std::get_if<Commit>(&a)) {
                record(now, p, EvCommitted{c->value});
            } else if (const auto* tm = std::get_if<SetTimer>(&a)) {
                Time at = tm->local_time + offsets_[static_cast<std::size_t>(p)];
                if (at < now) at = now;
                QItem it;
                it.t = at;
                it.kind = QItem::Kind::Timer;
                it.party = p;
                it.timer_tag = tm->tag;
                enqueue(std::move(it));
            } else if (std::holds_alternative<Terminate>(a)) {
                record(now, p, EvTerminated{});
            }
        }
    }

    // Outgoing traffic of a Byzantine party running a live machine.  Commit,
    // termination, and timer requests of the inner machine stay internal.
    void mirror_actions(PartyId p, const Time& now, const std::vector<Action>& actions)
    {
        auto& st = byz_.at(p);
        auto emit = [&](PartyId to, Message msg) {
            if (st.randomize) {
                switch (splitmix64(st.rng) % 4) {
                case 2: return; // withhold
                case 3:
                    msg.value = st.conf.flip_to.is_bottom() ? Value::of("mut") : st.conf.flip_to;
                    break;
                default: break;
                }
            }
            send_message(p, now, to, msg);
        };
        for (const auto& a : actions) {
            if (const auto* sa = std::get_if<SendAll>(&a)) {
                for (PartyId q = 0; q < sc_.cfg.n; ++q) emit(q, sa->msg);
            } else if (const auto* sto = std::get_if<SendTo>(&a)) {
                emit(sto->to, sto->msg);
            }
        }
    }

    void process_start(const QItem& item)
    {
        const PartyId p = item.party;
        if (sc_.cfg.is_honest(p)) {
            process_actions(p, item.t, machines_.at(p)->start());
            return;
        }
        auto& st = byz_.at(p);
        const auto& conf = st.conf;
        if (conf.name == "silent") return;
        if (conf.name == "equivocate_split") {
            const MsgKind k = conf.kind.value_or(p == kBroadcaster
                                                     ? MsgKind::Propose
                                                     : default_response_kind(sc_.protocol));
            const Time send = conf.send_time.value_or(default_send_time(k));
            std::optional<PartyId> subject;
            if (k == MsgKind::SubjectVote)
                subject = conf.subject.value_or(p == 1 ? PartyId{2} : PartyId{1});
            for (const auto& [to, v] : conf.assignment) {
                Message m = make_msg(k, v);
                m.subject = subject;
                send_message(p, send, to, m);
            }
            return;
        }
        if (conf.name == "scripted") {
            for (const auto& ps : conf.plan) send_message(p, ps.t, ps.to, ps.msg);
            return;
        }
        // mirror_honest / random_byz
        if (p == kBroadcaster) {
            mirror_actions(p, item.t, st.machine->start());
            return;
        }
        Envelope forged;
        forged.msg = make_msg(MsgKind::Propose, conf.pretend_input);
        forged.sender = kBroadcaster;
        forged.recipient = p;
        forged.send_time = Time(0);
        forged.deliver_time = item.t + conf.pretend_delay.value_or(unit_delay());
        QItem wake;
        wake.t = forged.deliver_time;
        wake.kind = QItem::Kind::AdvWake;
        wake.party = p;
        wake.env = forged;
        enqueue(std::move(wake));
    }

    void process_deliver(const QItem& item)
    {
        record(item.t, item.party, EvDelivered{item.env});
        if (sc_.cfg.is_honest(item.party)) {
            process_actions(item.party, item.t, machines_.at(item.party)->on_delivered(item.env));
            return;
        }
        auto& st = byz_.at(item.party);
        if (!st.machine) return;
        // The inner machine already consumed the pretended proposal.
        if (item.party != kBroadcaster && item.env.msg.kind == MsgKind::Propose &&
            item.env.sender == kBroadcaster)
            return;
        mirror_actions(item.party, item.t, st.machine->on_delivered(item.env));
    }

    void process_adv_wake(const QItem& item)
    {
        auto& st = byz_.at(item.party);
        if (!st.machine) return;
        mirror_actions(item.party, item.t, st.machine->on_delivered(item.env));
    }

    void process_timer(const QItem& item)
    {
        record(item.t, item.party, EvTimerFired{item.timer_tag});
        auto& m = machines_.at(item.party);
        const Time local = item.t - offsets_[static_cast<std::size_t>(item.party)];
        process_actions(item.party, item.t, m->on_timer(local, item.timer_tag));
        if (item.timer_tag != kBaTimerTag || !m->ba_invoked()) return;
        if (ba_inputs_.count(item.party)) return;
        ba_inputs_[item.party] = m->ba_input();
        if (ba_last_invoke_ < item.t) ba_last_invoke_ = item.t;
        const auto honest = static_cast<std::size_t>(sc_.cfg.n) - sc_.cfg.byzantine.size();
        if (ba_scheduled_ || ba_inputs_.size() != honest) return;
        ba_scheduled_ = true;
        const auto outputs = phase_king_run(ba_inputs_, sc_.cfg, sc_.adversary.ba);
        const Time out_t = ba_last_invoke_ + ba_duration(sc_.cfg);
        for (const auto& [p, v] : outputs) {
            QItem it;
            it.t = out_t;
            it.kind = QItem::Kind::BaOutput;
            it.party = p;
            it.ba_value = v;
            enqueue(std::move(it));
        }
    }

    void process_ba_output(const QItem& item)
    {
        record(item.t, item.party, EvTimerFired{kBaOutputTag});
        process_actions(item.party, item.t, machines_.at(item.party)->on_ba_output(item.ba_value));
    }
};

} // namespace

Trace simulate(const Scenario& sc, const SimOptions& opts)
{
    Simulator sim(sc, opts);
    return sim.run();
}

} // namespace brblab
