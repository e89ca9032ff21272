#include "fdt/explanation.hpp"

namespace fdt {

Property Property::eq(std::int64_t v) { return Property{Kind::Eq, v, {}}; }
Property Property::neq(std::int64_t v) { return Property{Kind::Neq, v, {}}; }
Property Property::inset(IntSet s) {
    return Property{Kind::InSet, 0, std::move(s)};
}
Property Property::notinset(IntSet s) {
    return Property{Kind::NotInSet, 0, std::move(s)};
}

namespace {

Term set_to_term(const IntSet& s) {
    std::vector<Term> cells;
    cells.reserve(s.intervals().size());
    for (const Interval& iv : s.intervals())
        cells.push_back(Term::interval(iv.lo, iv.hi));
    return Term::list(std::move(cells));
}

IntSet set_from_term(const Term& t) {
    if (!t.is(Term::Kind::List))
        throw ParseError("expected an interval list: " + t.str(), 0);
    std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
    for (const Term& cell : t.args()) {
        if (cell.is(Term::Kind::Interval))
            pairs.emplace_back(cell.interval_lo(), cell.interval_hi());
        else if (cell.is(Term::Kind::Int))
            pairs.emplace_back(cell.as_int(), cell.as_int());
        else
            throw ParseError("expected an interval cell: " + cell.str(), 0);
    }
    return IntSet::from_intervals(pairs);
}

} // namespace

Term Property::to_term() const {
    switch (kind) {
    case Kind::Eq: return Term::compound("eq", {Term::integer(value)});
    case Kind::Neq: return Term::compound("neq", {Term::integer(value)});
    case Kind::InSet: return Term::compound("inset", {set_to_term(set)});
    case Kind::NotInSet: return Term::compound("notinset", {set_to_term(set)});
    }
    return Term::atom("");
}

namespace {

Property property_from_term(const Term& t) {
    if (!t.is(Term::Kind::Compound) || t.args().size() != 1)
        throw ParseError("expected a property: " + t.str(), 0);
    const Term& arg = t.args()[0];
    if (t.name() == "eq" || t.name() == "neq") {
        if (!arg.is(Term::Kind::Int))
            throw ParseError("eq/neq expects an integer: " + t.str(), 0);
        return t.name() == "eq" ? Property::eq(arg.as_int())
                                : Property::neq(arg.as_int());
    }
    if (t.name() == "inset") return Property::inset(set_from_term(arg));
    if (t.name() == "notinset") return Property::notinset(set_from_term(arg));
    throw ParseError("unknown property: " + t.name(), 0);
}

} // namespace

Term Cond::to_term() const {
    Term m = min_count ? Term::integer(*min_count) : Term::atom("all");
    Term pl = single_prop ? props[0].to_term() : [&] {
        std::vector<Term> xs;
        xs.reserve(props.size());
        for (const Property& p : props) xs.push_back(p.to_term());
        return Term::list(std::move(xs));
    }();
    return Term::compound("cond", {std::move(m), path.to_term(), std::move(pl)});
}

Term Explanation::to_term() const {
    std::vector<Term> cs;
    cs.reserve(conds.size());
    for (const Cond& c : conds) cs.push_back(c.to_term());
    return Term::compound("-", {Term::integer(n), Term::list(std::move(cs))});
}

namespace {

Cond cond_from_term(const Term& t) {
    if (!t.is(Term::Kind::Compound) || t.name() != "cond" || t.args().size() != 3)
        throw ParseError("expected cond(M,Pa,PL): " + t.str(), 0);
    Cond c;
    const Term& m = t.args()[0];
    if (m.is(Term::Kind::Int)) {
        if (m.as_int() < 1)
            throw ParseError("cond count must be positive: " + t.str(), 0);
        c.min_count = static_cast<int>(m.as_int());
    } else if (m == Term::atom("all")) {
        c.min_count = std::nullopt;
    } else {
        throw ParseError("cond count must be an integer or 'all': " + t.str(), 0);
    }
    c.path = path_from_term(t.args()[1]);
    const Term& pl = t.args()[2];
    if (pl.is(Term::Kind::List)) {
        c.single_prop = false;
        for (const Term& p : pl.args()) c.props.push_back(property_from_term(p));
        if (c.props.empty())
            throw ParseError("empty property list: " + t.str(), 0);
    } else {
        c.single_prop = true;
        c.props.push_back(property_from_term(pl));
    }
    return c;
}

} // namespace

Explanation explanation_from_term(const Term& t) {
    if (!t.is(Term::Kind::Compound) || t.name() != "-" || t.args().size() != 2)
        throw ParseError("expected N-CondList: " + t.str(), 0);
    const Term& n = t.args()[0];
    const Term& list = t.args()[1];
    if (!n.is(Term::Kind::Int) || n.as_int() < 1)
        throw ParseError("explanation threshold must be a positive integer: " +
                             t.str(),
                         0);
    if (!list.is(Term::Kind::List))
        throw ParseError("explanation conds must be a list: " + t.str(), 0);
    Explanation e;
    e.n = static_cast<int>(n.as_int());
    for (const Term& c : list.args()) e.conds.push_back(cond_from_term(c));
    return e;
}

Explanation parse_explanation(std::string_view text) {
    return explanation_from_term(parse_term(text));
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

IntSet value_set_of(const Term& entity, const DomainFn& domains) {
    if (entity.is(Term::Kind::Int)) return IntSet::singleton(entity.as_int());
    if (entity.is(Term::Kind::Var)) return domains(entity.var());
    throw EvalError("property applied to a non-integer, non-variable entity: " +
                    entity.str());
}

bool set_satisfies(const IntSet& s, const Property& prop) {
    switch (prop.kind) {
    case Property::Kind::Eq:
        return s.contains(prop.value);
    case Property::Kind::Neq:
        return !s.remove_set(IntSet::singleton(prop.value)).first.empty();
    case Property::Kind::InSet:
        return s.subset_of(prop.set);
    case Property::Kind::NotInSet:
        return s.disjoint_with(prop.set);
    }
    return false;
}

} // namespace

bool entity_satisfies(const Term& entity, const Property& prop,
                      const DomainFn& domains) {
    return set_satisfies(value_set_of(entity, domains), prop);
}

bool cond_holds(const Cond& c, const Term& ctx, const DomainFn& domains) {
    std::size_t total = 0;
    std::size_t satisfied = 0;
    if (c.path.func) {
        // The property tests the function's value at each entity.
        std::vector<std::int64_t> values = apply_function(c.path, ctx, domains);
        total = values.size();
        if (!c.single_prop && c.props.size() != total)
            throw EvalError("property list length does not match entity count");
        for (std::size_t i = 0; i < values.size(); ++i) {
            const Property& p = c.single_prop ? c.props[0] : c.props[i];
            if (set_satisfies(IntSet::singleton(values[i]), p)) ++satisfied;
        }
    } else {
        std::vector<PathTarget> targets = resolve(c.path, ctx);
        total = targets.size();
        if (!c.single_prop && c.props.size() != total)
            throw EvalError("property list length does not match entity count");
        for (std::size_t i = 0; i < targets.size(); ++i) {
            const Property& p = c.single_prop ? c.props[0] : c.props[i];
            if (entity_satisfies(targets[i].term, p, domains)) ++satisfied;
        }
    }
    if (!c.min_count) return satisfied == total;
    return satisfied >= static_cast<std::size_t>(*c.min_count);
}

bool holds(const Explanation& e, const Term& ctx, const DomainFn& domains) {
    int held = 0;
    for (const Cond& c : e.conds)
        if (cond_holds(c, ctx, domains)) ++held;
    return held >= e.n;
}

} // namespace fdt
