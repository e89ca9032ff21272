#include "fdt/constraints.hpp"

#include <algorithm>
#include <cassert>
#include <map>

namespace fdt {

namespace {

bool is_entity(const Term& t) {
    return t.is(Term::Kind::Int) || t.is(Term::Kind::Var) ||
           t.is(Term::Kind::Wildcard);
}

IntSet entity_set(const Kernel& k, const Term& t) {
    if (t.is(Term::Kind::Int)) return IntSet::singleton(t.as_int());
    if (t.is(Term::Kind::Var)) return k.domain(t.var());
    throw EvalError("expected an integer or a variable: " + t.str());
}

const Term& list_arg(const Term& rep, std::size_t i) {
    return rep.args()[i];
}

Explanation one_cond(std::optional<int> m, Path p, Property prop) {
    Cond c;
    c.min_count = m;
    c.path = std::move(p);
    c.props = {std::move(prop)};
    c.single_prop = true;
    Explanation e;
    e.n = 1;
    e.conds = {std::move(c)};
    return e;
}

// --- domain/3 ---------------------------------------------------------------

class DomainOps final : public ConstraintOps {
public:
    void validate(const Term& source) const override {
        const auto& a = source.args();
        if (a.size() != 3 || !a[0].is(Term::Kind::List) ||
            !a[1].is(Term::Kind::Int) || !a[2].is(Term::Kind::Int))
            throw ProgramError("domain expects (variable list, low, high): " +
                               source.str());
        for (const Term& v : a[0].args())
            if (!v.is(Term::Kind::Var) && !v.is(Term::Kind::Wildcard))
                throw ProgramError("domain list must contain variables: " +
                                   source.str());
    }

    std::string demon_type(const Term&) const override { return "domain_3"; }

    std::vector<std::pair<Path, WakeCond>>
    wake_conds(const Term&) const override {
        Path all;
        all.elems.push_back({PathElem::Kind::Pos, false, {1}});
        all.elems.push_back({PathElem::Kind::All, true, {}});
        return {{all, WakeCond::Dom}};
    }

    CtrResult filter(Kernel& k, ConstraintCell& cell) const override {
        const Term& vars = list_arg(cell.rep, 0);
        IntSet bounds = IntSet::range(list_arg(cell.rep, 1).as_int(),
                                      list_arg(cell.rep, 2).as_int());
        // One prune block per distinct removal set, in first-occurrence order.
        std::vector<std::pair<IntSet, std::vector<PruneTarget>>> groups;
        for (std::size_t i = 0; i < vars.args().size(); ++i) {
            VarId v = vars.args()[i].var();
            IntSet removal = k.domain(v).remove_set(bounds).first;
            if (removal.empty()) continue;
            PruneTarget t{{{1, false}, {static_cast<int>(i) + 1, true}}, v};
            auto it = std::find_if(groups.begin(), groups.end(),
                                   [&](const auto& g) { return g.first == removal; });
            if (it == groups.end())
                groups.push_back({std::move(removal), {std::move(t)}});
            else
                it->second.push_back(std::move(t));
        }
        if (groups.empty()) return CtrResult::Entail;
        k.begin_method("prune_domain");
        for (const auto& [removal, targets] : groups) {
            PruneOutcome out =
                k.apply_prune(cell.id, cell.rep, targets, removal,
                              PruneFact::remove_values(removal), std::nullopt);
            if (out == PruneOutcome::Failed) {
                k.end_method(PruneResult::Fail);
                return CtrResult::Fail;
            }
        }
        k.end_method(PruneResult::Succeed);
        return CtrResult::Entail;
    }
};

// --- in/2 -------------------------------------------------------------------

class InOps final : public ConstraintOps {
public:
    void validate(const Term& source) const override {
        const auto& a = source.args();
        if (a.size() != 2 || !is_entity(a[0]))
            throw ProgramError("in expects (variable, set): " + source.str());
        set_of(a[1]); // shape check
    }

    std::string demon_type(const Term&) const override { return "in_2"; }

    std::vector<std::pair<Path, WakeCond>>
    wake_conds(const Term&) const override {
        return {{path_for_arg(1), WakeCond::Dom}};
    }

    CtrResult filter(Kernel& k, ConstraintCell& cell) const override {
        const Term& x = cell.rep.args()[0];
        IntSet s = set_of(cell.rep.args()[1]);
        if (x.is(Term::Kind::Int)) {
            if (s.contains(x.as_int())) return CtrResult::Entail;
            k.emit_fail(cell.rep);
            return CtrResult::Fail;
        }
        IntSet removal = k.domain(x.var()).remove_set(s).first;
        if (removal.empty()) return CtrResult::Entail;
        k.begin_method("prune_in_set");
        PruneOutcome out = k.apply_prune(
            cell.id, cell.rep, {PruneTarget{{{1, false}}, x.var()}}, removal,
            PruneFact::remove_values(removal), std::nullopt);
        k.end_method(out == PruneOutcome::Failed ? PruneResult::Fail
                                                 : PruneResult::Succeed);
        return out == PruneOutcome::Failed ? CtrResult::Fail : CtrResult::Entail;
    }

    static IntSet set_of(const Term& t) {
        if (t.is(Term::Kind::Compound) && t.name() == ".." &&
            t.args().size() == 2 && t.args()[0].is(Term::Kind::Int) &&
            t.args()[1].is(Term::Kind::Int))
            return IntSet::range(t.args()[0].as_int(), t.args()[1].as_int());
        if (t.is(Term::Kind::List)) {
            std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
            for (const Term& cell : t.args()) {
                if (cell.is(Term::Kind::Interval))
                    pairs.emplace_back(cell.interval_lo(), cell.interval_hi());
                else if (cell.is(Term::Kind::Int))
                    pairs.emplace_back(cell.as_int(), cell.as_int());
                else
                    throw ProgramError("malformed set in in/2: " + t.str());
            }
            return IntSet::from_intervals(pairs);
        }
        throw ProgramError("malformed set in in/2: " + t.str());
    }
};

// --- shared pieces of the two alldifferent variants --------------------------

void validate_distinct_args(const Term& source) {
    const auto& a = source.args();
    if (a.size() != 1 || !a[0].is(Term::Kind::List))
        throw ProgramError(source.name() + " expects one list argument: " +
                           source.str());
    for (const Term& t : a[0].args())
        if (!is_entity(t))
            throw ProgramError(source.name() +
                               " arguments must be integers or variables: " +
                               source.str());
}

/// A variable occurring twice can never differ from itself.
bool fail_on_repeated_var(Kernel& k, ConstraintCell& cell) {
    const Term& items = list_arg(cell.rep, 0);
    std::vector<VarId> seen;
    for (const Term& t : items.args()) {
        if (!t.is(Term::Kind::Var)) continue;
        if (std::find(seen.begin(), seen.end(), t.var()) != seen.end()) {
            k.emit_fail(cell.rep);
            return true;
        }
        seen.push_back(t.var());
    }
    return false;
}

bool all_ground_and_distinct(const Kernel& k, const Term& items) {
    std::vector<std::int64_t> values;
    for (const Term& t : items.args()) {
        IntSet s = entity_set(k, t);
        if (!s.is_ground()) return false;
        values.push_back(s.min());
    }
    std::sort(values.begin(), values.end());
    return std::adjacent_find(values.begin(), values.end()) == values.end();
}

// --- all_different/1 (naive, pairwise strength) ------------------------------

class AllDifferentOps final : public ConstraintOps {
public:
    void validate(const Term& source) const override {
        validate_distinct_args(source);
    }

    bool post(Kernel& k, ConstraintCell& cell) const override {
        return !fail_on_repeated_var(k, cell);
    }

    std::string demon_type(const Term&) const override {
        return "all_different_1";
    }

    std::vector<std::pair<Path, WakeCond>>
    wake_conds(const Term&) const override {
        Path all;
        all.elems.push_back({PathElem::Kind::Pos, false, {1}});
        all.elems.push_back({PathElem::Kind::All, true, {}});
        return {{all, WakeCond::Val}};
    }

    CtrResult filter(Kernel& k, ConstraintCell& cell) const override {
        const Term& items = list_arg(cell.rep, 0);
        // Ground entities in position order; a duplicated value fails with
        // the pigeonhole explanation naming both positions.
        std::vector<std::pair<int, std::int64_t>> grounds;
        std::map<std::int64_t, int> first_pos;
        for (std::size_t i = 0; i < items.args().size(); ++i) {
            const Term& t = items.args()[i];
            IntSet s = entity_set(k, t);
            if (!s.is_ground()) continue;
            int pos = static_cast<int>(i) + 1;
            std::int64_t v = s.min();
            auto [it, inserted] = first_pos.emplace(v, pos);
            if (!inserted) {
                k.begin_method("propagate_ground_variable");
                Explanation why = one_cond(
                    std::nullopt, path_for_list_positions(1, {it->second, pos}),
                    Property::inset(IntSet::singleton(v)));
                k.emit_fail_because(cell.id, why, cell.rep);
                k.emit_fail(cell.rep);
                k.end_method(PruneResult::Fail);
                return CtrResult::Fail;
            }
            grounds.emplace_back(pos, v);
        }
        for (auto [pos, v] : grounds) {
            std::vector<PruneTarget> targets;
            for (std::size_t j = 0; j < items.args().size(); ++j) {
                const Term& t = items.args()[j];
                if (!t.is(Term::Kind::Var)) continue;
                if (k.domain(t.var()).is_ground()) continue;
                targets.push_back(
                    PruneTarget{{{1, false}, {static_cast<int>(j) + 1, true}},
                                t.var()});
            }
            IntSet removal = IntSet::singleton(v);
            if (!k.would_change(targets, removal)) continue;
            k.begin_method("propagate_ground_variable");
            k.info_method("ground_variable", path_for_list_positions(1, {pos}),
                          Term::integer(v), cell.rep);
            Explanation why =
                one_cond(1, path_for_list_positions(1, {pos}), Property::eq(v));
            PruneOutcome out =
                k.apply_prune(cell.id, cell.rep, targets, removal,
                              PruneFact::remove_value(v), why);
            k.end_method(out == PruneOutcome::Failed ? PruneResult::Fail
                                                     : PruneResult::Succeed);
            if (out == PruneOutcome::Failed) return CtrResult::Fail;
        }
        if (all_ground_and_distinct(k, items)) return CtrResult::Entail;
        return CtrResult::Delay;
    }
};

// --- element/3 ---------------------------------------------------------------

class ElementOps final : public ConstraintOps {
public:
    void validate(const Term& source) const override {
        const auto& a = source.args();
        if (a.size() != 3 || !is_entity(a[0]) || !a[1].is(Term::Kind::List) ||
            !is_entity(a[2]))
            throw ProgramError("element expects (index, list, value): " +
                               source.str());
        for (const Term& t : a[1].args())
            if (!t.is(Term::Kind::Int))
                throw ProgramError(
                    "element requires a ground integer list: " + source.str());
    }

    bool post(Kernel& k, ConstraintCell& cell) const override {
        const Term& x = cell.rep.args()[0];
        std::int64_t n =
            static_cast<std::int64_t>(list_arg(cell.rep, 1).args().size());
        if (x.is(Term::Kind::Int)) {
            if (x.as_int() < 1 || x.as_int() > n) {
                k.emit_fail(cell.rep);
                return false;
            }
            return true;
        }
        // The index ranges over the list positions; posted as an internal
        // in/2 constraint with its length explanation.
        Path len = path_for_arg(2);
        len.func = PathFunction::Length;
        k.emit_new_ctr_because(cell.id, one_cond(1, len, Property::eq(n)),
                               cell.rep);
        Term in_source = Term::compound(
            "in", {x, Term::compound("..", {Term::integer(1), Term::integer(n)})});
        return k.connect_ctr(in_source) != CtrResult::Fail;
    }

    std::string demon_type(const Term&) const override { return "element_3"; }

    std::vector<std::pair<Path, WakeCond>>
    wake_conds(const Term&) const override {
        Path list_all;
        list_all.elems.push_back({PathElem::Kind::Pos, false, {2}});
        list_all.elems.push_back({PathElem::Kind::All, true, {}});
        return {{path_for_arg(1), WakeCond::Dom},
                {list_all, WakeCond::MinMax},
                {path_for_arg(3), WakeCond::MinMax}};
    }

    CtrResult filter(Kernel& k, ConstraintCell& cell) const override {
        const Term& x = cell.rep.args()[0];
        const Term& y = cell.rep.args()[2];
        const Term& list = list_arg(cell.rep, 1);
        std::int64_t n = static_cast<std::int64_t>(list.args().size());
        auto list_at = [&](std::int64_t i) {
            return list.args()[static_cast<std::size_t>(i) - 1].as_int();
        };

        IntSet xset = entity_set(k, x).intersect(IntSet::range(1, n)).first;
        if (xset.empty()) {
            k.emit_fail(cell.rep);
            return CtrResult::Fail;
        }

        // Values reachable through the remaining index positions.
        IntSet reachable;
        for (std::int64_t i : xset.values())
            reachable = reachable.unite(IntSet::singleton(list_at(i)));

        if (y.is(Term::Kind::Var)) {
            IntSet removal = k.domain(y.var()).remove_set(reachable).first;
            if (!removal.empty()) {
                k.begin_method("prune_y");
                PruneOutcome out = k.apply_prune(
                    cell.id, cell.rep, {PruneTarget{{{3, false}}, y.var()}},
                    removal, PruneFact::remove_values(removal), std::nullopt);
                k.end_method(out == PruneOutcome::Failed ? PruneResult::Fail
                                                         : PruneResult::Succeed);
                if (out == PruneOutcome::Failed) return CtrResult::Fail;
            }
        }

        IntSet yset = entity_set(k, y);
        if (x.is(Term::Kind::Var)) {
            std::vector<std::int64_t> bad;
            for (std::int64_t i : xset.values())
                if (!yset.contains(list_at(i))) bad.push_back(i);
            if (!bad.empty()) {
                k.begin_method("prune_x");
                for (std::int64_t i : bad) {
                    Explanation why = one_cond(
                        1, path_for_arg(3),
                        Property::notinset(IntSet::singleton(list_at(i))));
                    PruneOutcome out = k.apply_prune(
                        cell.id, cell.rep, {PruneTarget{{{1, false}}, x.var()}},
                        IntSet::singleton(i),
                        PruneFact::remove_values(IntSet::singleton(i)), why);
                    if (out == PruneOutcome::Failed) {
                        k.end_method(PruneResult::Fail);
                        return CtrResult::Fail;
                    }
                }
                k.end_method(PruneResult::Succeed);
            }
        } else if (yset.is_ground() && !yset.contains(list_at(x.as_int()))) {
            k.emit_fail(cell.rep);
            return CtrResult::Fail;
        }

        IntSet xnow = entity_set(k, x);
        IntSet ynow = entity_set(k, y);
        if (xnow.is_ground() && ynow.is_ground() &&
            list_at(xnow.min()) == ynow.min())
            return CtrResult::Entail;
        return CtrResult::Delay;
    }
};

// --- all_distinct/1 (matching-based, domain-consistent) ----------------------

class AllDistinctOps final : public ConstraintOps {
public:
    void validate(const Term& source) const override {
        validate_distinct_args(source);
    }

    bool post(Kernel& k, ConstraintCell& cell) const override {
        return !fail_on_repeated_var(k, cell);
    }

    std::string demon_type(const Term&) const override {
        return "all_distinct_1";
    }

    std::vector<std::pair<Path, WakeCond>>
    wake_conds(const Term&) const override {
        Path all;
        all.elems.push_back({PathElem::Kind::Pos, false, {1}});
        all.elems.push_back({PathElem::Kind::All, true, {}});
        return {{all, WakeCond::Dom}};
    }

    CtrResult filter(Kernel& k, ConstraintCell& cell) const override {
        const Term& items = list_arg(cell.rep, 0);
        const std::size_t n = items.args().size();

        // Entities with more values than argument positions can always be
        // matched and never sit in a tight set; they stay out of the graph.
        std::vector<IntSet> sets(n);
        std::vector<bool> small(n, false);
        std::vector<std::size_t> smalls;
        for (std::size_t i = 0; i < n; ++i) {
            sets[i] = entity_set(k, items.args()[i]);
            if (sets[i].size() <= static_cast<std::int64_t>(n)) {
                small[i] = true;
                smalls.push_back(i);
            }
        }

        std::vector<std::int64_t> values;
        std::map<std::int64_t, int> value_index;
        for (std::size_t e : smalls)
            for (std::int64_t v : sets[e].values())
                if (value_index.emplace(v, 0).second) values.push_back(v);
        std::sort(values.begin(), values.end());
        for (std::size_t i = 0; i < values.size(); ++i)
            value_index[values[i]] = static_cast<int>(i);

        const int m = static_cast<int>(smalls.size());
        const int vcount = static_cast<int>(values.size());
        std::vector<std::vector<int>> entity_values(m);
        std::vector<std::vector<int>> value_entities(vcount);
        for (int e = 0; e < m; ++e)
            for (std::int64_t v : sets[smalls[static_cast<std::size_t>(e)]].values()) {
                int vi = value_index[v];
                entity_values[static_cast<std::size_t>(e)].push_back(vi);
                value_entities[static_cast<std::size_t>(vi)].push_back(e);
            }

        std::vector<int> match_of_entity(static_cast<std::size_t>(m), -1);
        std::vector<int> match_of_value(static_cast<std::size_t>(vcount), -1);

        k.begin_method("match_and_check");
        for (int e = 0; e < m; ++e) {
            std::vector<bool> visited(static_cast<std::size_t>(vcount), false);
            if (!augment(e, entity_values, match_of_entity, match_of_value,
                         visited)) {
                // Hall set: every entity confined to the values seen by the
                // failed augmenting search.
                IntSet u;
                for (int vi = 0; vi < vcount; ++vi)
                    if (visited[static_cast<std::size_t>(vi)])
                        u = u.unite(IntSet::singleton(
                            values[static_cast<std::size_t>(vi)]));
                std::vector<int> positions;
                for (std::size_t i = 0; i < n; ++i)
                    if (sets[i].subset_of(u))
                        positions.push_back(static_cast<int>(i) + 1);
                Explanation why =
                    one_cond(std::nullopt, path_for_list_positions(1, positions),
                             Property::inset(u));
                k.emit_fail_because(cell.id, why, cell.rep);
                k.emit_fail(cell.rep);
                k.end_method(PruneResult::Fail);
                return CtrResult::Fail;
            }
        }
        k.end_method(PruneResult::Succeed);

        // Values still reachable from a free value keep their edges.
        std::vector<bool> value_reachable(static_cast<std::size_t>(vcount), false);
        {
            std::vector<int> stack;
            for (int vi = 0; vi < vcount; ++vi)
                if (match_of_value[static_cast<std::size_t>(vi)] < 0) {
                    value_reachable[static_cast<std::size_t>(vi)] = true;
                    stack.push_back(vi);
                }
            while (!stack.empty()) {
                int vi = stack.back();
                stack.pop_back();
                for (int e : value_entities[static_cast<std::size_t>(vi)]) {
                    int mv = match_of_entity[static_cast<std::size_t>(e)];
                    if (mv == vi) continue;
                    if (!value_reachable[static_cast<std::size_t>(mv)]) {
                        value_reachable[static_cast<std::size_t>(mv)] = true;
                        stack.push_back(mv);
                    }
                }
            }
        }

        std::vector<int> scc =
            compute_scc(m, vcount, value_entities, match_of_entity);

        // Per-entity removal sets.
        std::vector<IntSet> removal(n);
        for (int e = 0; e < m; ++e) {
            std::size_t item = smalls[static_cast<std::size_t>(e)];
            for (int vi : entity_values[static_cast<std::size_t>(e)]) {
                if (vi == match_of_entity[static_cast<std::size_t>(e)]) continue;
                if (value_reachable[static_cast<std::size_t>(vi)]) continue;
                if (scc[static_cast<std::size_t>(e)] ==
                    scc[static_cast<std::size_t>(m + vi)])
                    continue;
                removal[item] = removal[item].unite(IntSet::singleton(
                    values[static_cast<std::size_t>(vi)]));
            }
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (small[i]) continue;
            for (int vi = 0; vi < vcount; ++vi) {
                if (match_of_value[static_cast<std::size_t>(vi)] < 0) continue;
                if (value_reachable[static_cast<std::size_t>(vi)]) continue;
                std::int64_t v = values[static_cast<std::size_t>(vi)];
                if (sets[i].contains(v))
                    removal[i] = removal[i].unite(IntSet::singleton(v));
            }
        }

        bool any = false;
        for (std::size_t i = 0; i < n; ++i)
            if (!removal[i].empty() && items.args()[i].is(Term::Kind::Var))
                any = true;
        if (any) {
            k.begin_method("prune_matching");
            for (std::size_t i = 0; i < n; ++i) {
                if (removal[i].empty() || !items.args()[i].is(Term::Kind::Var))
                    continue;
                std::optional<Explanation> why = tight_set_explanation(
                    static_cast<int>(i), removal[i], n, sets, values,
                    value_index, scc, m);
                PruneTarget target{{{1, false}, {static_cast<int>(i) + 1, true}},
                                   items.args()[i].var()};
                PruneOutcome out = k.apply_prune(
                    cell.id, cell.rep, {target}, removal[i],
                    PruneFact::remove_values(removal[i]), why);
                if (out == PruneOutcome::Failed) {
                    k.end_method(PruneResult::Fail);
                    return CtrResult::Fail;
                }
            }
            k.end_method(PruneResult::Succeed);
        }

        if (all_ground_and_distinct(k, items)) return CtrResult::Entail;
        return CtrResult::Delay;
    }

private:
    static bool augment(int e, const std::vector<std::vector<int>>& entity_values,
                        std::vector<int>& match_of_entity,
                        std::vector<int>& match_of_value,
                        std::vector<bool>& visited) {
        for (int vi : entity_values[static_cast<std::size_t>(e)]) {
            if (visited[static_cast<std::size_t>(vi)]) continue;
            visited[static_cast<std::size_t>(vi)] = true;
            int other = match_of_value[static_cast<std::size_t>(vi)];
            if (other < 0 ||
                augment(other, entity_values, match_of_entity, match_of_value,
                        visited)) {
                match_of_value[static_cast<std::size_t>(vi)] = e;
                match_of_entity[static_cast<std::size_t>(e)] = vi;
                return true;
            }
        }
        return false;
    }

    /// Iterative Tarjan over the oriented value graph: entity -> matched
    /// value, value -> entity for every other membership edge. Nodes
    /// 0..m-1 are entities, m..m+vcount-1 values.
    static std::vector<int> compute_scc(
        int m, int vcount, const std::vector<std::vector<int>>& value_entities,
        const std::vector<int>& match_of_entity) {
        int total = m + vcount;
        std::vector<std::vector<int>> adj(static_cast<std::size_t>(total));
        for (int e = 0; e < m; ++e)
            adj[static_cast<std::size_t>(e)].push_back(
                m + match_of_entity[static_cast<std::size_t>(e)]);
        for (int vi = 0; vi < vcount; ++vi)
            for (int e : value_entities[static_cast<std::size_t>(vi)])
                if (match_of_entity[static_cast<std::size_t>(e)] != vi)
                    adj[static_cast<std::size_t>(m + vi)].push_back(e);

        std::vector<int> scc(static_cast<std::size_t>(total), -1);
        std::vector<int> low(static_cast<std::size_t>(total), 0);
        std::vector<int> num(static_cast<std::size_t>(total), -1);
        std::vector<bool> on_stack(static_cast<std::size_t>(total), false);
        std::vector<int> stack;
        int counter = 0;
        int comp = 0;

        struct Frame {
            int node;
            std::size_t next = 0;
        };
        for (int root = 0; root < total; ++root) {
            if (num[static_cast<std::size_t>(root)] != -1) continue;
            std::vector<Frame> frames{{root}};
            num[static_cast<std::size_t>(root)] =
                low[static_cast<std::size_t>(root)] = counter++;
            stack.push_back(root);
            on_stack[static_cast<std::size_t>(root)] = true;
            while (!frames.empty()) {
                Frame& f = frames.back();
                const auto& out = adj[static_cast<std::size_t>(f.node)];
                if (f.next < out.size()) {
                    int next = out[f.next++];
                    if (num[static_cast<std::size_t>(next)] == -1) {
                        num[static_cast<std::size_t>(next)] =
                            low[static_cast<std::size_t>(next)] = counter++;
                        stack.push_back(next);
                        on_stack[static_cast<std::size_t>(next)] = true;
                        frames.push_back({next});
                    } else if (on_stack[static_cast<std::size_t>(next)]) {
                        low[static_cast<std::size_t>(f.node)] =
                            std::min(low[static_cast<std::size_t>(f.node)],
                                     num[static_cast<std::size_t>(next)]);
                    }
                } else {
                    int node = f.node;
                    frames.pop_back();
                    if (!frames.empty())
                        low[static_cast<std::size_t>(frames.back().node)] =
                            std::min(low[static_cast<std::size_t>(
                                         frames.back().node)],
                                     low[static_cast<std::size_t>(node)]);
                    if (low[static_cast<std::size_t>(node)] ==
                        num[static_cast<std::size_t>(node)]) {
                        while (true) {
                            int w = stack.back();
                            stack.pop_back();
                            on_stack[static_cast<std::size_t>(w)] = false;
                            scc[static_cast<std::size_t>(w)] = comp;
                            if (w == node) break;
                        }
                        ++comp;
                    }
                }
            }
        }
        return scc;
    }

    /// Hall-style reason for removing `removed` from entity `item`: the
    /// entities confined to the removed values' SCC value groups consume
    /// them entirely. Only emitted when the tight-set check validates.
    static std::optional<Explanation> tight_set_explanation(
        int item, const IntSet& removed, std::size_t n,
        const std::vector<IntSet>& sets, const std::vector<std::int64_t>& values,
        const std::map<std::int64_t, int>& value_index,
        const std::vector<int>& scc, int m) {
        IntSet u;
        for (std::int64_t v : removed.values()) {
            auto it = value_index.find(v);
            if (it == value_index.end()) return std::nullopt;
            int group = scc[static_cast<std::size_t>(m + it->second)];
            for (std::size_t vi = 0; vi < values.size(); ++vi)
                if (scc[m + vi] == group)
                    u = u.unite(IntSet::singleton(values[vi]));
        }
        std::vector<int> positions;
        for (std::size_t i = 0; i < n; ++i) {
            if (static_cast<int>(i) == item) continue;
            if (sets[i].subset_of(u)) positions.push_back(static_cast<int>(i) + 1);
        }
        if (positions.empty() ||
            static_cast<std::int64_t>(positions.size()) < u.size())
            return std::nullopt;
        return one_cond(std::nullopt, path_for_list_positions(1, positions),
                        Property::inset(u));
    }
};

} // namespace

void install_standard_constraints(Kernel& k) {
    k.register_constraint("domain", std::make_shared<DomainOps>());
    k.register_constraint("in", std::make_shared<InOps>());
    k.register_constraint("all_different", std::make_shared<AllDifferentOps>());
    k.register_constraint("all_distinct", std::make_shared<AllDistinctOps>());
    k.register_constraint("element", std::make_shared<ElementOps>());
}

Term intset_source_term(const IntSet& s) {
    if (s.intervals().size() == 1)
        return Term::compound("..", {Term::integer(s.min()),
                                     Term::integer(s.max())});
    std::vector<Term> cells;
    for (const Interval& iv : s.intervals())
        cells.push_back(Term::interval(iv.lo, iv.hi));
    return Term::list(std::move(cells));
}

CtrResult post_domain(Kernel& k, const std::vector<VarId>& vars,
                      std::int64_t lo, std::int64_t hi) {
    std::vector<Term> vs;
    vs.reserve(vars.size());
    for (VarId v : vars) vs.push_back(Term::variable(v));
    return k.connect_ctr(Term::compound(
        "domain", {Term::list(std::move(vs)), Term::integer(lo),
                   Term::integer(hi)}));
}

CtrResult post_in(Kernel& k, VarId x, const IntSet& s) {
    return k.connect_ctr(
        Term::compound("in", {Term::variable(x), intset_source_term(s)}));
}

CtrResult post_all_different(Kernel& k, const std::vector<Term>& items) {
    return k.connect_ctr(Term::compound("all_different", {Term::list(items)}));
}

CtrResult post_all_distinct(Kernel& k, const std::vector<Term>& items) {
    return k.connect_ctr(Term::compound("all_distinct", {Term::list(items)}));
}

CtrResult post_element(Kernel& k, const Term& x,
                       const std::vector<std::int64_t>& list, const Term& y) {
    std::vector<Term> xs;
    xs.reserve(list.size());
    for (std::int64_t v : list) xs.push_back(Term::integer(v));
    return k.connect_ctr(
        Term::compound("element", {x, Term::list(std::move(xs)), y}));
}

} // namespace fdt
