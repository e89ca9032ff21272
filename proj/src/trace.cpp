#include "fdt/trace.hpp"

#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace fdt {

std::string ctr_result_name(CtrResult r) {
    switch (r) {
    case CtrResult::Fail: return "fail";
    case CtrResult::Delay: return "delay";
    case CtrResult::Entail: return "entail";
    }
    return "";
}

std::string prune_result_name(PruneResult r) {
    return r == PruneResult::Succeed ? "succeed" : "fail";
}

std::string wake_cond_name(WakeCond c) {
    switch (c) {
    case WakeCond::Min: return "min";
    case WakeCond::Max: return "max";
    case WakeCond::MinMax: return "minmax";
    case WakeCond::Val: return "val";
    case WakeCond::Dom: return "dom";
    }
    return "";
}

namespace {

std::optional<CtrResult> ctr_result_from(const std::string& s) {
    if (s == "fail") return CtrResult::Fail;
    if (s == "delay") return CtrResult::Delay;
    if (s == "entail") return CtrResult::Entail;
    return std::nullopt;
}

std::optional<PruneResult> prune_result_from(const std::string& s) {
    if (s == "succeed") return PruneResult::Succeed;
    if (s == "fail") return PruneResult::Fail;
    return std::nullopt;
}

std::optional<WakeCond> wake_cond_from(const std::string& s) {
    if (s == "min") return WakeCond::Min;
    if (s == "max") return WakeCond::Max;
    if (s == "minmax") return WakeCond::MinMax;
    if (s == "val") return WakeCond::Val;
    if (s == "dom") return WakeCond::Dom;
    return std::nullopt;
}

} // namespace

PruneFact PruneFact::remove_value(std::int64_t v) {
    PruneFact f;
    f.kind = Kind::Value;
    f.value = v;
    return f;
}

PruneFact PruneFact::remove_values(IntSet s) {
    PruneFact f;
    f.kind = Kind::Values;
    f.values = std::move(s);
    return f;
}

IntSet PruneFact::as_set() const {
    return kind == Kind::Value ? IntSet::singleton(value) : values;
}

PruneFact PruneFact::normalized(const IntSet& s) {
    if (s.is_ground()) return remove_value(s.min());
    return remove_values(s);
}

// ---------------------------------------------------------------------------
// Term encoding

namespace {

Term domain_to_term(const FiniteDomain& d) {
    std::vector<Term> cells;
    cells.reserve(d.intervals().size());
    for (const Interval& iv : d.intervals())
        cells.push_back(Term::interval(iv.lo, iv.hi));
    return Term::list(std::move(cells));
}

FiniteDomain domain_from_term(const Term& t) {
    if (!t.is(Term::Kind::List))
        throw ParseError("expected a domain list: " + t.str(), 0);
    std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
    for (const Term& cell : t.args()) {
        if (!cell.is(Term::Kind::Interval))
            throw ParseError("expected an interval cell: " + cell.str(), 0);
        pairs.emplace_back(cell.interval_lo(), cell.interval_hi());
    }
    return FiniteDomain::from_intervals(pairs);
}

Term prune_fact_to_term(const PruneFact& f) {
    if (f.kind == PruneFact::Kind::Value)
        return Term::compound("remove_value", {Term::integer(f.value)});
    return Term::compound("remove_values", {domain_to_term(f.values)});
}

PruneFact prune_fact_from_term(const Term& t) {
    if (t.is(Term::Kind::Compound) && t.args().size() == 1) {
        if (t.name() == "remove_value" && t.args()[0].is(Term::Kind::Int))
            return PruneFact::remove_value(t.args()[0].as_int());
        if (t.name() == "remove_values")
            return PruneFact::remove_values(domain_from_term(t.args()[0]));
    }
    throw ParseError("expected remove_value/remove_values: " + t.str(), 0);
}

Term ctr_to_term(const CtrId& id) { return Term::atom(id.str()); }

CtrId ctr_from_term(const Term& t) {
    if (t.is(Term::Kind::Atom))
        if (auto id = CtrId::parse(t.name())) return *id;
    throw ParseError("expected a constraint id: " + t.str(), 0);
}

Term wake_conds_to_term(const std::vector<std::pair<Path, WakeCond>>& wcs) {
    std::vector<Term> out;
    out.reserve(wcs.size());
    for (const auto& [p, c] : wcs)
        out.push_back(
            Term::compound("-", {p.to_term(), Term::atom(wake_cond_name(c))}));
    return Term::list(std::move(out));
}

std::vector<std::pair<Path, WakeCond>> wake_conds_from_term(const Term& t) {
    if (!t.is(Term::Kind::List))
        throw ParseError("expected a wake-condition list: " + t.str(), 0);
    std::vector<std::pair<Path, WakeCond>> out;
    for (const Term& pair : t.args()) {
        if (!pair.is(Term::Kind::Compound) || pair.name() != "-" ||
            pair.args().size() != 2 || !pair.args()[1].is(Term::Kind::Atom))
            throw ParseError("expected Path-Condition: " + pair.str(), 0);
        auto cond = wake_cond_from(pair.args()[1].name());
        if (!cond)
            throw ParseError("unknown wake condition: " + pair.args()[1].str(), 0);
        out.emplace_back(path_from_term(pair.args()[0]), *cond);
    }
    return out;
}

Term domains_to_term(const std::vector<FiniteDomain>& ds) {
    std::vector<Term> out;
    out.reserve(ds.size());
    for (const FiniteDomain& d : ds) out.push_back(domain_to_term(d));
    return Term::list(std::move(out));
}

std::vector<FiniteDomain> domains_from_term(const Term& t) {
    if (!t.is(Term::Kind::List))
        throw ParseError("expected a list of domains: " + t.str(), 0);
    std::vector<FiniteDomain> out;
    out.reserve(t.args().size());
    for (const Term& d : t.args()) out.push_back(domain_from_term(d));
    return out;
}

struct ToTermVisitor {
    std::vector<Term> args; // without the leading id

    void operator()(const BeginNewCtr& e) {
        args = {ctr_to_term(e.ctr), e.rep};
    }
    void operator()(const EndNewCtr& e) {
        args = {Term::atom(ctr_result_name(e.result))};
    }
    void operator()(const NewDemon& e) {
        args = {ctr_to_term(e.demon), Term::atom(e.dtype),
                wake_conds_to_term(e.wake_conds), e.rep};
    }
    void operator()(const PushDemon& e) {
        args = {ctr_to_term(e.demon), Term::atom(e.dtype)};
    }
    void operator()(const BeginWakeDemon& e) {
        args = {ctr_to_term(e.demon), Term::atom(e.dtype)};
    }
    void operator()(const EndWakeDemon& e) {
        args = {Term::atom(ctr_result_name(e.result))};
    }
    void operator()(const BeginPrune& e) {
        args = {prune_fact_to_term(e.intention), e.rep};
    }
    void operator()(const EndPrune& e) {
        args = {Term::atom(prune_result_name(e.result))};
    }
    void operator()(const PruneEv& e) {
        args = {ctr_to_term(e.ctr), e.pruned_vars.to_term(),
                prune_fact_to_term(e.pruning), e.rep,
                Term::atom(prune_result_name(e.result))};
    }
    void operator()(const BeforePrune& e) {
        args = {e.pruned_vars.to_term(), domains_to_term(e.domains), e.rep};
    }
    void operator()(const AfterPrune& e) {
        args = {e.pruned_vars.to_term(), domains_to_term(e.domains), e.rep};
    }
    void operator()(const FailEv& e) { args = {e.rep}; }
    void operator()(const PushDemonBecause& e) {
        args = {e.vars.to_term(), Term::atom(wake_cond_name(e.cond)), e.rep};
    }
    void operator()(const PruneBecause& e) {
        args = {ctr_to_term(e.ctr), e.expl.to_term(), e.rep};
    }
    void operator()(const FailBecause& e) {
        args = {ctr_to_term(e.ctr), e.expl.to_term(), e.rep};
    }
    void operator()(const NewCtrBecause& e) {
        args = {ctr_to_term(e.ctr), e.expl.to_term(), e.rep};
    }
    void operator()(const BeginMethod& e) { args = {Term::atom(e.name)}; }
    void operator()(const EndMethod& e) {
        args = {Term::atom(prune_result_name(e.result))};
    }
    void operator()(const InfoMethod& e) {
        args = {Term::atom(e.info_name),
                Term::compound("-", {e.path.to_term(), e.entity}), e.rep};
    }
};

const char* event_name_of(const EventData& data) {
    struct Namer {
        const char* operator()(const BeginNewCtr&) { return "begin_new_ctr"; }
        const char* operator()(const EndNewCtr&) { return "end_new_ctr"; }
        const char* operator()(const NewDemon&) { return "new_demon"; }
        const char* operator()(const PushDemon&) { return "push_demon"; }
        const char* operator()(const BeginWakeDemon&) { return "begin_wake_demon"; }
        const char* operator()(const EndWakeDemon&) { return "end_wake_demon"; }
        const char* operator()(const BeginPrune&) { return "begin_prune"; }
        const char* operator()(const EndPrune&) { return "end_prune"; }
        const char* operator()(const PruneEv&) { return "prune"; }
        const char* operator()(const BeforePrune&) { return "before_prune"; }
        const char* operator()(const AfterPrune&) { return "after_prune"; }
        const char* operator()(const FailEv&) { return "fail"; }
        const char* operator()(const PushDemonBecause&) {
            return "push_demon_because";
        }
        const char* operator()(const PruneBecause&) { return "prune_because"; }
        const char* operator()(const FailBecause&) { return "fail_because"; }
        const char* operator()(const NewCtrBecause&) { return "new_ctr_because"; }
        const char* operator()(const BeginMethod&) { return "begin_method"; }
        const char* operator()(const EndMethod&) { return "end_method"; }
        const char* operator()(const InfoMethod&) { return "info_method"; }
    };
    return std::visit(Namer{}, data);
}

std::string atom_arg(const Term& t, const char* what) {
    if (!t.is(Term::Kind::Atom))
        throw ParseError(std::string("expected ") + what + ": " + t.str(), 0);
    return t.name();
}

CtrResult ctr_result_arg(const Term& t) {
    auto r = ctr_result_from(atom_arg(t, "a result atom"));
    if (!r) throw ParseError("expected fail/delay/entail: " + t.str(), 0);
    return *r;
}

PruneResult prune_result_arg(const Term& t) {
    auto r = prune_result_from(atom_arg(t, "a result atom"));
    if (!r) throw ParseError("expected succeed/fail: " + t.str(), 0);
    return *r;
}

} // namespace

std::string event_name(const TraceEvent& e) { return event_name_of(e.data); }

Term event_to_term(const TraceEvent& e) {
    ToTermVisitor v;
    std::visit(v, e.data);
    std::vector<Term> args;
    args.reserve(v.args.size() + 1);
    args.push_back(Term::integer(e.id));
    for (Term& t : v.args) args.push_back(std::move(t));
    return Term::compound(event_name_of(e.data), std::move(args));
}

TraceEvent event_from_term(const Term& t) {
    if (!t.is(Term::Kind::Compound) || t.args().empty())
        throw ParseError("expected a trace event: " + t.str(), 0);
    const std::string& name = t.name();
    const std::vector<Term>& a = t.args();
    if (!a[0].is(Term::Kind::Int))
        throw ParseError("event id must be an integer: " + t.str(), 0);
    TraceEvent ev;
    ev.id = static_cast<EventId>(a[0].as_int());
    auto want = [&](std::size_t n) {
        if (a.size() != n + 1)
            throw ParseError("wrong argument count for " + name + ": " + t.str(),
                             0);
    };
    // Field conversions can throw; build them as locals before the
    // aggregate so nothing is left half-initialized.
    if (name == "begin_new_ctr") {
        want(2);
        CtrId ctr = ctr_from_term(a[1]);
        ev.data = BeginNewCtr{std::move(ctr), a[2]};
    } else if (name == "end_new_ctr") {
        want(1);
        ev.data = EndNewCtr{ctr_result_arg(a[1])};
    } else if (name == "new_demon") {
        want(4);
        CtrId demon = ctr_from_term(a[1]);
        std::string dtype = atom_arg(a[2], "a demon type");
        auto wake_conds = wake_conds_from_term(a[3]);
        ev.data = NewDemon{std::move(demon), std::move(dtype),
                           std::move(wake_conds), a[4]};
    } else if (name == "push_demon" || name == "begin_wake_demon") {
        want(2);
        CtrId demon = ctr_from_term(a[1]);
        std::string dtype = atom_arg(a[2], "a demon type");
        if (name == "push_demon")
            ev.data = PushDemon{std::move(demon), std::move(dtype)};
        else
            ev.data = BeginWakeDemon{std::move(demon), std::move(dtype)};
    } else if (name == "end_wake_demon") {
        want(1);
        ev.data = EndWakeDemon{ctr_result_arg(a[1])};
    } else if (name == "begin_prune") {
        want(2);
        PruneFact intention = prune_fact_from_term(a[1]);
        ev.data = BeginPrune{std::move(intention), a[2]};
    } else if (name == "end_prune") {
        want(1);
        ev.data = EndPrune{prune_result_arg(a[1])};
    } else if (name == "prune") {
        want(5);
        CtrId ctr = ctr_from_term(a[1]);
        Path path = path_from_term(a[2]);
        PruneFact fact = prune_fact_from_term(a[3]);
        PruneResult result = prune_result_arg(a[5]);
        ev.data = PruneEv{std::move(ctr), std::move(path), std::move(fact),
                          a[4], result};
    } else if (name == "before_prune" || name == "after_prune") {
        want(3);
        Path path = path_from_term(a[1]);
        std::vector<FiniteDomain> domains = domains_from_term(a[2]);
        if (name == "before_prune")
            ev.data = BeforePrune{std::move(path), std::move(domains), a[3]};
        else
            ev.data = AfterPrune{std::move(path), std::move(domains), a[3]};
    } else if (name == "fail") {
        want(1);
        ev.data = FailEv{a[1]};
    } else if (name == "push_demon_because") {
        want(3);
        auto cond = wake_cond_from(atom_arg(a[2], "a wake condition"));
        if (!cond)
            throw ParseError("unknown wake condition: " + a[2].str(), 0);
        Path vars = path_from_term(a[1]);
        ev.data = PushDemonBecause{std::move(vars), *cond, a[3]};
    } else if (name == "prune_because" || name == "fail_because" ||
               name == "new_ctr_because") {
        want(3);
        CtrId ctr = ctr_from_term(a[1]);
        Explanation expl = explanation_from_term(a[2]);
        if (name == "prune_because")
            ev.data = PruneBecause{std::move(ctr), std::move(expl), a[3]};
        else if (name == "fail_because")
            ev.data = FailBecause{std::move(ctr), std::move(expl), a[3]};
        else
            ev.data = NewCtrBecause{std::move(ctr), std::move(expl), a[3]};
    } else if (name == "begin_method") {
        want(1);
        ev.data = BeginMethod{atom_arg(a[1], "a method name")};
    } else if (name == "end_method") {
        want(1);
        ev.data = EndMethod{prune_result_arg(a[1])};
    } else if (name == "info_method") {
        want(3);
        const Term& info = a[2];
        if (!info.is(Term::Kind::Compound) || info.name() != "-" ||
            info.args().size() != 2)
            throw ParseError("expected Path-Entity info pair: " + info.str(), 0);
        std::string info_name = atom_arg(a[1], "an info name");
        Path path = path_from_term(info.args()[0]);
        ev.data = InfoMethod{std::move(info_name), std::move(path),
                             info.args()[1], a[3]};
    } else {
        throw ParseError("unknown trace event: " + name, 0);
    }
    return ev;
}

std::string serialize_event(const TraceEvent& e) { return event_to_term(e).str(); }

TraceEvent parse_event(std::string_view line) {
    return event_from_term(parse_term(line));
}

// ---------------------------------------------------------------------------
// Selectors

Selector parse_selector(std::string_view text) {
    Term t = parse_term(text);
    Selector sel;
    if (t.is(Term::Kind::Int)) {
        sel.kind = Selector::Kind::ById;
        sel.id = t.as_int();
        return sel;
    }
    if (t.is(Term::Kind::Atom)) {
        sel.kind = Selector::Kind::ByName;
        sel.name = t.name();
        return sel;
    }
    if (t.is(Term::Kind::Compound)) {
        sel.kind = Selector::Kind::ByPattern;
        sel.pattern = std::move(t);
        return sel;
    }
    throw ParseError("selector must be an integer, an atom or a compound term",
                     0);
}

namespace {
bool term_matches(const Term& pattern, const Term& value) {
    if (pattern.is(Term::Kind::Wildcard)) return true;
    if (pattern.kind() != value.kind()) return false;
    switch (pattern.kind()) {
    case Term::Kind::Int: return pattern.as_int() == value.as_int();
    case Term::Kind::Atom: return pattern.name() == value.name();
    case Term::Kind::Var: return pattern.var() == value.var();
    case Term::Kind::Interval:
        return pattern.interval_lo() == value.interval_lo() &&
               pattern.interval_hi() == value.interval_hi();
    case Term::Kind::Compound:
        if (pattern.name() != value.name()) return false;
        [[fallthrough]];
    case Term::Kind::List:
    case Term::Kind::Hash: {
        if (pattern.args().size() != value.args().size()) return false;
        for (std::size_t i = 0; i < pattern.args().size(); ++i)
            if (!term_matches(pattern.args()[i], value.args()[i])) return false;
        return true;
    }
    case Term::Kind::Wildcard: return true;
    }
    return false;
}
} // namespace

bool selector_matches(const Selector& sel, const TraceEvent& e) {
    switch (sel.kind) {
    case Selector::Kind::ById:
        return e.id == sel.id;
    case Selector::Kind::ByName:
        return event_name(e) == sel.name;
    case Selector::Kind::ByPattern: {
        if (sel.pattern.name() != event_name(e)) return false;
        Term t = event_to_term(e);
        return term_matches(sel.pattern, t);
    }
    }
    return false;
}

EventId EventLog::emit(EventData data) {
    TraceEvent e;
    e.id = static_cast<EventId>(events_.size()) + 1;
    e.data = std::move(data);
    events_.push_back(std::move(e));
    if (observer_) observer_(events_.back());
    return events_.back().id;
}

std::vector<TraceEvent> EventLog::get_events(const Selector& sel) const {
    return fdt::get_events(events_, sel);
}

std::vector<TraceEvent> get_events(const std::vector<TraceEvent>& log,
                                   const Selector& sel) {
    std::vector<TraceEvent> out;
    for (const TraceEvent& e : log)
        if (selector_matches(sel, e)) out.push_back(e);
    return out;
}

// ---------------------------------------------------------------------------
// Nesting validation

namespace {

enum class BlockKind { NewCtr, WakeDemon, Prune, Method };

const char* block_name(BlockKind k) {
    switch (k) {
    case BlockKind::NewCtr: return "new_ctr";
    case BlockKind::WakeDemon: return "wake_demon";
    case BlockKind::Prune: return "prune";
    case BlockKind::Method: return "method";
    }
    return "";
}

struct OpenBlock {
    BlockKind kind;
    EventId id;
    bool saw_failure = false;       // fail events or failing prunes inside
    bool saw_prune_fail = false;    // failing prune events inside (for end_prune)
};

} // namespace

std::vector<Violation> validate_nesting(const std::vector<TraceEvent>& log) {
    std::vector<Violation> out;
    auto violation = [&](EventId id, std::string msg) {
        out.push_back({id, std::move(msg)});
    };

    for (std::size_t i = 0; i < log.size(); ++i) {
        EventId expected = static_cast<EventId>(i) + 1;
        if (log[i].id != expected) {
            violation(log[i].id, "event ids are not contiguous from 1");
            break;
        }
    }

    std::vector<OpenBlock> stack;
    auto mark_failure = [&]() {
        for (OpenBlock& b : stack) b.saw_failure = true;
    };
    auto open = [&](BlockKind k, EventId id) { stack.push_back({k, id}); };
    auto close = [&](BlockKind k, EventId id) -> OpenBlock {
        if (stack.empty()) {
            violation(id, std::string("end_") + block_name(k) +
                              " without a matching begin");
            return {k, id};
        }
        OpenBlock b = stack.back();
        if (b.kind != k) {
            violation(id, std::string("end_") + block_name(k) +
                              " closes a " + block_name(b.kind) + " block (id " +
                              std::to_string(b.id) + ")");
        }
        stack.pop_back();
        if (b.saw_failure && !stack.empty()) stack.back().saw_failure = true;
        return b;
    };

    for (std::size_t i = 0; i < log.size(); ++i) {
        const TraceEvent& e = log[i];
        auto next_is = [&](const char* name) {
            return i + 1 < log.size() && event_name(log[i + 1]) == name;
        };
        if (const auto* b = std::get_if<BeginNewCtr>(&e.data)) {
            (void)b;
            open(BlockKind::NewCtr, e.id);
        } else if (const auto* v = std::get_if<EndNewCtr>(&e.data)) {
            OpenBlock b = close(BlockKind::NewCtr, e.id);
            if (v->result == CtrResult::Fail && !b.saw_failure)
                violation(e.id, "end_new_ctr reports fail but no failure occurred "
                                "inside the block");
            if (v->result == CtrResult::Fail) mark_failure();
        } else if (std::get_if<BeginWakeDemon>(&e.data)) {
            open(BlockKind::WakeDemon, e.id);
        } else if (const auto* v = std::get_if<EndWakeDemon>(&e.data)) {
            OpenBlock b = close(BlockKind::WakeDemon, e.id);
            if (v->result == CtrResult::Fail && !b.saw_failure)
                violation(e.id, "end_wake_demon reports fail but no failure "
                                "occurred inside the block");
            if (v->result == CtrResult::Fail) mark_failure();
        } else if (std::get_if<BeginPrune>(&e.data)) {
            open(BlockKind::Prune, e.id);
        } else if (const auto* v = std::get_if<EndPrune>(&e.data)) {
            OpenBlock b = close(BlockKind::Prune, e.id);
            bool should_fail = b.saw_prune_fail;
            if ((v->result == PruneResult::Fail) != should_fail)
                violation(e.id,
                          "end_prune result disagrees with the prunings inside");
            if (v->result == PruneResult::Fail) mark_failure();
        } else if (std::get_if<BeginMethod>(&e.data)) {
            open(BlockKind::Method, e.id);
        } else if (const auto* v = std::get_if<EndMethod>(&e.data)) {
            OpenBlock b = close(BlockKind::Method, e.id);
            if ((v->result == PruneResult::Fail) != b.saw_failure)
                violation(e.id,
                          "end_method result disagrees with the block contents");
            if (v->result == PruneResult::Fail) mark_failure();
        } else if (const auto* p = std::get_if<PruneEv>(&e.data)) {
            // The triple: before_prune, prune, after_prune with one path.
            const BeforePrune* before =
                i > 0 ? std::get_if<BeforePrune>(&log[i - 1].data) : nullptr;
            const AfterPrune* after =
                i + 1 < log.size() ? std::get_if<AfterPrune>(&log[i + 1].data)
                                   : nullptr;
            if (!before)
                violation(e.id, "prune is not immediately preceded by before_prune");
            if (!after)
                violation(e.id, "prune is not immediately followed by after_prune");
            if (before && !(before->pruned_vars == p->pruned_vars))
                violation(e.id, "before_prune path differs from prune path");
            if (after && !(after->pruned_vars == p->pruned_vars))
                violation(e.id, "after_prune path differs from prune path");
            if (before && after) {
                if (before->domains.size() != after->domains.size()) {
                    violation(e.id, "before/after domain counts differ");
                } else {
                    IntSet removed = p->pruning.as_set();
                    for (std::size_t k = 0; k < before->domains.size(); ++k) {
                        if (after->domains[k] !=
                            before->domains[k].remove_set(removed).first) {
                            violation(e.id,
                                      "after_prune domains are not before_prune "
                                      "domains minus the pruning set");
                            break;
                        }
                    }
                }
            }
            if (stack.empty() || stack.back().kind != BlockKind::Prune)
                violation(e.id, "prune outside a prune block");
            if (p->result == PruneResult::Fail) {
                for (OpenBlock& b : stack) {
                    b.saw_failure = true;
                    if (b.kind == BlockKind::Prune) b.saw_prune_fail = true;
                }
            }
        } else if (std::get_if<BeforePrune>(&e.data)) {
            if (stack.empty() || stack.back().kind != BlockKind::Prune)
                violation(e.id, "before_prune outside a prune block");
        } else if (std::get_if<AfterPrune>(&e.data)) {
            if (stack.empty() || stack.back().kind != BlockKind::Prune)
                violation(e.id, "after_prune outside a prune block");
        } else if (std::get_if<FailEv>(&e.data)) {
            mark_failure();
        } else if (std::get_if<PushDemonBecause>(&e.data)) {
            if (!next_is("push_demon"))
                violation(e.id,
                          "push_demon_because is not followed by push_demon");
        } else if (std::get_if<PruneBecause>(&e.data)) {
            bool after_begin =
                i > 0 && std::get_if<BeginPrune>(&log[i - 1].data) != nullptr;
            if (!after_begin || !next_is("before_prune"))
                violation(e.id, "prune_because must sit between begin_prune and "
                                "before_prune");
        } else if (std::get_if<FailBecause>(&e.data)) {
            if (!next_is("fail"))
                violation(e.id, "fail_because is not followed by fail");
        } else if (std::get_if<NewCtrBecause>(&e.data)) {
            if (!next_is("begin_new_ctr"))
                violation(e.id,
                          "new_ctr_because is not followed by begin_new_ctr");
        } else if (std::get_if<InfoMethod>(&e.data)) {
            bool in_method = false;
            for (const OpenBlock& b : stack)
                if (b.kind == BlockKind::Method) in_method = true;
            if (!in_method) violation(e.id, "info_method outside a method block");
        }
    }
    for (const OpenBlock& b : stack)
        violation(b.id, std::string("unclosed ") + block_name(b.kind) + " block");
    return out;
}

std::vector<TraceEvent> parse_log(std::istream& in) {
    std::vector<TraceEvent> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        out.push_back(parse_event(line));
    }
    return out;
}

void write_log(std::ostream& out, const std::vector<TraceEvent>& log) {
    for (const TraceEvent& e : log) out << serialize_event(e) << '\n';
}

} // namespace fdt
