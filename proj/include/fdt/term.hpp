#ifndef FDT_TERM_HPP
#define FDT_TERM_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fdt/errors.hpp"

namespace fdt {

/// Domain variable identifier, rendered fdvar_N. N is unique per kernel
/// instance and allocated in increasing order of variable creation.
struct VarId {
    int n = 0;
    std::string str() const { return "fdvar_" + std::to_string(n); }
    auto operator<=>(const VarId&) const = default;
};

/// Constraint identifier, rendered ctr_<functor>_N with a per-functor
/// counter. Demons reuse the scheme; with one demon per constraint the
/// demon id equals the owning constraint's id.
struct CtrId {
    std::string functor;
    int n = 0;
    std::string str() const { return "ctr_" + functor + "_" + std::to_string(n); }
    static std::optional<CtrId> parse(std::string_view text);
    auto operator<=>(const CtrId&) const = default;
};

using DemonId = CtrId;

/// One node of the term language used for constraint representations,
/// trace payloads and selector patterns.
///
/// Constraint representations only use Int/Atom/Var/Compound/List.
/// Interval is the [lo|hi] cell of domain/set lists, Hash the #-marked
/// path element, Wildcard the `_`/uppercase slot of selector patterns
/// and program sources.
class Term {
public:
    enum class Kind { Int, Atom, Var, Compound, List, Interval, Hash, Wildcard };

    Term() : kind_(Kind::Atom) {}

    static Term integer(std::int64_t v);
    static Term atom(std::string name);
    static Term variable(VarId v);
    static Term compound(std::string functor, std::vector<Term> args);
    static Term list(std::vector<Term> elems);
    static Term interval(std::int64_t lo, std::int64_t hi);
    static Term hash(Term inner);
    static Term wildcard(std::string name = "_");

    Kind kind() const { return kind_; }
    bool is(Kind k) const { return kind_ == k; }

    std::int64_t as_int() const { return a_; }
    std::int64_t interval_lo() const { return a_; }
    std::int64_t interval_hi() const { return b_; }
    VarId var() const { return VarId{static_cast<int>(a_)}; }
    /// Atom name, compound functor or wildcard name.
    const std::string& name() const { return text_; }
    /// Compound arguments, list elements or the single hash child.
    const std::vector<Term>& args() const { return kids_; }

    bool operator==(const Term&) const = default;

    /// Canonical text form; parse_term(str()) reproduces the node.
    std::string str() const;

private:
    Kind kind_;
    std::int64_t a_ = 0;
    std::int64_t b_ = 0;
    std::string text_;
    std::vector<Term> kids_;
};

/// Parses one term covering the whole input. Accepts the full listing
/// syntax: integers, atoms, fdvar_N, f(...), lists, [lo|hi] cells,
/// infix A-B / X in S / L..H / P/F / P\Q, prefix #, `*`, and wildcards
/// (identifiers starting with an uppercase letter or `_`).
Term parse_term(std::string_view text);

/// Variables occurring in a term, in first-occurrence order.
std::vector<VarId> collect_vars(const Term& t);

/// Allocates variable and constraint identifiers for one kernel instance.
/// Named program variables map to the same VarId on every occurrence.
class IdRegistry {
public:
    VarId fresh_var();
    VarId var_for_name(const std::string& name);
    CtrId next_ctr(const std::string& functor);

    int var_count() const { return next_var_ - 1; }
    /// Named variables in allocation order.
    const std::vector<std::pair<std::string, VarId>>& named_vars() const {
        return named_order_;
    }

private:
    int next_var_ = 1;
    std::map<std::string, VarId> by_name_;
    std::vector<std::pair<std::string, VarId>> named_order_;
    std::map<std::string, int> ctr_counters_;
};

/// Interns a source constraint: allocates a fresh per-functor CtrId and
/// replaces every named placeholder (Wildcard) by its variable id.
std::pair<CtrId, Term> intern_constraint(const Term& source, IdRegistry& reg);

} // namespace fdt

#endif
