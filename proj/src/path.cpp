#include "fdt/path.hpp"

#include <algorithm>

namespace fdt {

std::string path_function_name(PathFunction f) {
    switch (f) {
    case PathFunction::Min: return "min";
    case PathFunction::Max: return "max";
    case PathFunction::Length: return "length";
    }
    return "";
}

namespace {
std::optional<PathFunction> path_function_from_name(const std::string& name) {
    if (name == "min") return PathFunction::Min;
    if (name == "max") return PathFunction::Max;
    if (name == "length") return PathFunction::Length;
    return std::nullopt;
}

Term elem_core_term(const PathElem& e) {
    switch (e.kind) {
    case PathElem::Kind::Pos:
        return Term::integer(e.indices[0]);
    case PathElem::Kind::PosSet: {
        std::vector<Term> xs;
        xs.reserve(e.indices.size());
        for (int i : e.indices) xs.push_back(Term::integer(i));
        return Term::list(std::move(xs));
    }
    case PathElem::Kind::All:
        return Term::list({Term::atom("*")});
    }
    return Term::atom("");
}
} // namespace

Term Path::to_term() const {
    std::vector<Term> elems_t;
    elems_t.reserve(elems.size());
    for (const PathElem& e : elems) {
        Term core = elem_core_term(e);
        elems_t.push_back(e.hashed ? Term::hash(std::move(core)) : std::move(core));
    }
    Term t = Term::list(std::move(elems_t));
    if (minus) t = Term::compound("\\", {std::move(t), minus->to_term()});
    if (func)
        t = Term::compound("/", {std::move(t), Term::atom(path_function_name(*func))});
    return t;
}

bool Path::operator==(const Path& other) const {
    if (elems != other.elems || func != other.func) return false;
    if (!minus != !other.minus) return false;
    return !minus || *minus == *other.minus;
}

namespace {

PathElem elem_from_core(const Term& core, bool hashed) {
    PathElem e;
    e.hashed = hashed;
    if (core.is(Term::Kind::Int)) {
        e.kind = PathElem::Kind::Pos;
        e.indices.push_back(static_cast<int>(core.as_int()));
        if (e.indices[0] < 1) throw PathError("path position must be positive");
        return e;
    }
    if (core.is(Term::Kind::List)) {
        if (core.args().size() == 1 && core.args()[0] == Term::atom("*")) {
            e.kind = PathElem::Kind::All;
            return e;
        }
        e.kind = PathElem::Kind::PosSet;
        for (const Term& x : core.args()) {
            if (!x.is(Term::Kind::Int))
                throw PathError("path position set must contain integers: " +
                                core.str());
            e.indices.push_back(static_cast<int>(x.as_int()));
        }
        if (e.indices.empty()) throw PathError("empty path position set");
        for (std::size_t i = 0; i + 1 < e.indices.size(); ++i)
            if (e.indices[i] >= e.indices[i + 1])
                throw PathError("path position set must be strictly increasing: " +
                                core.str());
        if (e.indices[0] < 1) throw PathError("path position must be positive");
        return e;
    }
    throw PathError("invalid path element: " + core.str());
}

Path path_from_term_impl(const Term& t, bool allow_func);

Path path_from_elems_term(const Term& t) {
    if (!t.is(Term::Kind::List))
        throw PathError("path must be a list of elements: " + t.str());
    Path p;
    for (const Term& raw : t.args()) {
        if (raw.is(Term::Kind::Hash))
            p.elems.push_back(elem_from_core(raw.args()[0], true));
        else
            p.elems.push_back(elem_from_core(raw, false));
    }
    if (p.elems.empty()) throw PathError("empty path");
    return p;
}

Path path_from_term_impl(const Term& t, bool allow_func) {
    if (t.is(Term::Kind::Compound) && t.name() == "/" && t.args().size() == 2) {
        if (!allow_func) throw PathError("function not allowed here: " + t.str());
        const Term& f = t.args()[1];
        if (!f.is(Term::Kind::Atom))
            throw PathError("path function must be an atom: " + t.str());
        auto func = path_function_from_name(f.name());
        if (!func) throw PathError("unknown path function: " + f.name());
        Path p = path_from_term_impl(t.args()[0], false);
        p.func = func;
        return p;
    }
    if (t.is(Term::Kind::Compound) && t.name() == "\\" && t.args().size() == 2) {
        Path p = path_from_elems_term(t.args()[0]);
        p.minus = std::make_shared<const Path>(path_from_term_impl(t.args()[1], false));
        return p;
    }
    return path_from_elems_term(t);
}

} // namespace

Path path_from_term(const Term& t) { return path_from_term_impl(t, true); }

Path parse_path(std::string_view text) { return path_from_term(parse_term(text)); }

// ---------------------------------------------------------------------------
// Resolution

namespace {

const std::vector<Term>& children_of(const Term& t, bool hashed) {
    if (hashed) {
        if (!t.is(Term::Kind::List))
            throw PathError("'#' path element applied to a non-list: " + t.str());
        return t.args();
    }
    if (!t.is(Term::Kind::Compound))
        throw PathError("path descends into a non-compound term: " + t.str());
    return t.args();
}

} // namespace

std::vector<PathTarget> resolve(const Path& p, const Term& ctx) {
    std::vector<PathTarget> frontier{{{}, ctx}};
    for (const PathElem& e : p.elems) {
        std::vector<PathTarget> next;
        for (const PathTarget& cur : frontier) {
            const std::vector<Term>& kids = children_of(cur.term, e.hashed);
            std::vector<int> indices;
            if (e.kind == PathElem::Kind::All) {
                indices.resize(kids.size());
                for (std::size_t i = 0; i < kids.size(); ++i)
                    indices[i] = static_cast<int>(i) + 1;
            } else {
                indices = e.indices;
            }
            for (int i : indices) {
                if (i < 1 || static_cast<std::size_t>(i) > kids.size())
                    throw PathError("path index " + std::to_string(i) +
                                    " out of range in " + cur.term.str());
                PathTarget t;
                t.steps = cur.steps;
                t.steps.push_back({i, e.hashed});
                t.term = kids[static_cast<std::size_t>(i) - 1];
                next.push_back(std::move(t));
            }
        }
        frontier = std::move(next);
    }
    if (p.minus) {
        std::vector<PathTarget> sub = resolve(*p.minus, ctx);
        std::vector<PathTarget> kept;
        for (PathTarget& cur : frontier) {
            bool removed = false;
            for (const PathTarget& s : sub)
                if (s.steps == cur.steps) {
                    removed = true;
                    break;
                }
            if (!removed) kept.push_back(std::move(cur));
        }
        frontier = std::move(kept);
    }
    return frontier;
}

std::vector<std::int64_t> apply_function(const Path& p, const Term& ctx,
                                         const DomainFn& domains) {
    if (!p.func) throw PathError("path has no function to apply: " + p.str());
    std::vector<PathTarget> targets = resolve(p, ctx);
    std::vector<std::int64_t> out;
    out.reserve(targets.size());
    for (const PathTarget& t : targets) {
        switch (*p.func) {
        case PathFunction::Min:
        case PathFunction::Max: {
            if (t.term.is(Term::Kind::Int)) {
                out.push_back(t.term.as_int());
                break;
            }
            if (t.term.is(Term::Kind::Var)) {
                FiniteDomain d = domains(t.term.var());
                if (d.empty())
                    throw EvalError("min/max of a variable with empty domain");
                out.push_back(*p.func == PathFunction::Min ? d.min() : d.max());
                break;
            }
            throw PathError("min/max applies to integers or variables: " +
                            t.term.str());
        }
        case PathFunction::Length:
            if (!t.term.is(Term::Kind::List))
                throw PathError("length applies to lists: " + t.term.str());
            out.push_back(static_cast<std::int64_t>(t.term.args().size()));
            break;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Builders

Path path_for_arg(int index) { return path_for_args({index}); }

Path path_for_args(std::vector<int> indices) {
    Path p;
    PathElem e;
    e.hashed = false;
    if (indices.size() == 1) {
        e.kind = PathElem::Kind::Pos;
    } else {
        e.kind = PathElem::Kind::PosSet;
    }
    e.indices = std::move(indices);
    p.elems.push_back(std::move(e));
    return p;
}

Path path_for_list_positions(int arg_index, std::vector<int> positions) {
    Path p;
    PathElem head;
    head.kind = PathElem::Kind::Pos;
    head.indices = {arg_index};
    p.elems.push_back(std::move(head));
    PathElem tail;
    tail.hashed = true;
    tail.kind = positions.size() == 1 ? PathElem::Kind::Pos : PathElem::Kind::PosSet;
    tail.indices = std::move(positions);
    p.elems.push_back(std::move(tail));
    return p;
}

Path path_for_steps(const std::vector<std::vector<PathStep>>& chains) {
    if (chains.empty()) throw PathError("cannot build a path for no positions");
    std::size_t depth = chains[0].size();
    for (const auto& c : chains)
        if (c.size() != depth)
            throw PathError("positions with mixed depths have no single path");
    if (depth == 1) {
        std::vector<int> idx;
        idx.reserve(chains.size());
        for (const auto& c : chains) idx.push_back(c[0].index);
        return path_for_args(std::move(idx));
    }
    if (depth == 2) {
        int head = chains[0][0].index;
        std::vector<int> idx;
        idx.reserve(chains.size());
        for (const auto& c : chains) {
            if (c[0].index != head || !c[1].in_list)
                throw PathError("positions do not share a list argument");
            idx.push_back(c[1].index);
        }
        return path_for_list_positions(head, std::move(idx));
    }
    throw PathError("unsupported position depth");
}

} // namespace fdt
