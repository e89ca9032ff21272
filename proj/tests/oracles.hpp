// Brute-force reference implementations used only by tests. They share no
// code with the propagation engine they check.
#ifndef FDT_TESTS_ORACLES_HPP
#define FDT_TESTS_ORACLES_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "fdt/domain.hpp"

namespace oracles {

/// One argument of an alldifferent-style constraint: a fixed integer or a
/// prunable variable with a value set.
struct Entity {
    bool fixed = false;
    fdt::IntSet set;

    static Entity integer(std::int64_t v) {
        return {true, fdt::IntSet::singleton(v)};
    }
    static Entity variable(fdt::IntSet s) { return {false, std::move(s)}; }
};

struct PropagationResult {
    bool failed = false;
    std::vector<fdt::IntSet> sets;
};

/// Fixpoint of pairwise-disequality propagation: a ground entity's value is
/// removed from every other entity until nothing changes.
inline PropagationResult pairwise_disequality_fixpoint(std::vector<Entity> es) {
    PropagationResult r;
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < es.size(); ++i) {
            if (!es[i].set.is_ground()) continue;
            std::int64_t v = es[i].set.min();
            for (std::size_t j = 0; j < es.size(); ++j) {
                if (j == i) continue;
                if (es[j].fixed) {
                    if (es[j].set.contains(v)) {
                        r.failed = true;
                        return r;
                    }
                    continue;
                }
                auto [next, ch] =
                    es[j].set.remove_set(fdt::IntSet::singleton(v));
                if (!ch) continue;
                if (next.empty()) {
                    r.failed = true;
                    return r;
                }
                es[j].set = std::move(next);
                changed = true;
            }
        }
    }
    for (const Entity& e : es) r.sets.push_back(e.set);
    return r;
}

/// Generalized arc consistency by enumeration: keep exactly the values that
/// appear in some all-distinct assignment.
inline PropagationResult gac_all_distinct(const std::vector<Entity>& es) {
    const std::size_t n = es.size();
    std::vector<std::vector<std::int64_t>> choices(n);
    for (std::size_t i = 0; i < n; ++i) choices[i] = es[i].set.values();
    std::vector<std::vector<bool>> supported(n);
    for (std::size_t i = 0; i < n; ++i)
        supported[i].assign(choices[i].size(), false);

    std::vector<std::size_t> pick(n, 0);
    std::vector<std::int64_t> used;
    bool any = false;
    std::function<void(std::size_t)> enumerate = [&](std::size_t i) {
        if (i == n) {
            any = true;
            for (std::size_t k = 0; k < n; ++k) supported[k][pick[k]] = true;
            return;
        }
        for (std::size_t c = 0; c < choices[i].size(); ++c) {
            std::int64_t v = choices[i][c];
            if (std::find(used.begin(), used.end(), v) != used.end()) continue;
            used.push_back(v);
            pick[i] = c;
            enumerate(i + 1);
            used.pop_back();
        }
    };
    enumerate(0);

    PropagationResult r;
    if (!any) {
        r.failed = true;
        return r;
    }
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
        for (std::size_t c = 0; c < choices[i].size(); ++c)
            if (supported[i][c]) pairs.emplace_back(choices[i][c], choices[i][c]);
        r.sets.push_back(fdt::IntSet::from_intervals(pairs));
    }
    return r;
}

/// Arc consistency for element(X, List, Y) with a ground list, by direct
/// support enumeration.
struct ElementResult {
    bool failed = false;
    fdt::IntSet xset;
    fdt::IntSet yset;
};

inline ElementResult element_arc_consistency(const fdt::IntSet& xin,
                                             const std::vector<std::int64_t>& list,
                                             const fdt::IntSet& yin) {
    ElementResult r;
    std::vector<std::pair<std::int64_t, std::int64_t>> xs;
    std::vector<std::pair<std::int64_t, std::int64_t>> ys;
    for (std::int64_t i = 1; i <= static_cast<std::int64_t>(list.size()); ++i) {
        std::int64_t v = list[static_cast<std::size_t>(i - 1)];
        if (xin.contains(i) && yin.contains(v)) {
            xs.emplace_back(i, i);
            ys.emplace_back(v, v);
        }
    }
    r.xset = fdt::IntSet::from_intervals(xs);
    r.yset = fdt::IntSet::from_intervals(ys);
    r.failed = r.xset.empty();
    return r;
}

/// Ground checks of every goal form the programs use; the propagators play
/// no part here.
struct GroundConstraint {
    enum class Kind { AllDifferent, Element, In, Domain };
    Kind kind;
    // AllDifferent: entity indices into the tuple or fixed ints
    std::vector<std::optional<std::size_t>> vars; // nullopt = fixed int
    std::vector<std::int64_t> ints;               // aligned with vars
    // Element
    std::size_t x = 0, y = 0;
    std::vector<std::int64_t> list;
    // In/Domain
    std::size_t var = 0;
    fdt::IntSet set;

    bool satisfied(const std::vector<std::int64_t>& tuple) const {
        switch (kind) {
        case Kind::AllDifferent: {
            std::vector<std::int64_t> vals;
            for (std::size_t i = 0; i < vars.size(); ++i)
                vals.push_back(vars[i] ? tuple[*vars[i]] : ints[i]);
            std::sort(vals.begin(), vals.end());
            return std::adjacent_find(vals.begin(), vals.end()) == vals.end();
        }
        case Kind::Element: {
            std::int64_t xi = tuple[x];
            if (xi < 1 || xi > static_cast<std::int64_t>(list.size()))
                return false;
            return list[static_cast<std::size_t>(xi - 1)] == tuple[y];
        }
        case Kind::In:
        case Kind::Domain:
            return set.contains(tuple[var]);
        }
        return false;
    }
};

/// All solutions over the given per-variable sets in lexicographic order
/// (variable order as given, values ascending), up to `limit`.
inline std::vector<std::vector<std::int64_t>>
enumerate_solutions(const std::vector<fdt::IntSet>& sets,
                    const std::vector<GroundConstraint>& constraints,
                    std::size_t limit) {
    std::vector<std::vector<std::int64_t>> out;
    std::vector<std::vector<std::int64_t>> choices;
    for (const fdt::IntSet& s : sets) choices.push_back(s.values());
    std::vector<std::int64_t> tuple(sets.size(), 0);
    std::function<void(std::size_t)> walk = [&](std::size_t i) {
        if (out.size() >= limit) return;
        if (i == sets.size()) {
            for (const GroundConstraint& c : constraints)
                if (!c.satisfied(tuple)) return;
            out.push_back(tuple);
            return;
        }
        for (std::int64_t v : choices[i]) {
            if (out.size() >= limit) return;
            tuple[i] = v;
            walk(i + 1);
        }
    };
    walk(0);
    return out;
}

} // namespace oracles

#endif
