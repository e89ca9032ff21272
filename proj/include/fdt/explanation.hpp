#ifndef FDT_EXPLANATION_HPP
#define FDT_EXPLANATION_HPP

#include <optional>
#include <string>
#include <vector>

#include "fdt/domain.hpp"
#include "fdt/path.hpp"
#include "fdt/term.hpp"

namespace fdt {

/// Property an entity may fulfill. For an entity with value set S
/// (a variable's domain, or {i} for an integer):
///   eq(I):        I is in S            (the entity can take the value I)
///   neq(I):       S contains a value distinct from I
///   inset(T):     S is a subset of T
///   notinset(T):  S and T are disjoint
struct Property {
    enum class Kind { Eq, Neq, InSet, NotInSet };
    Kind kind = Kind::Eq;
    std::int64_t value = 0; // Eq/Neq
    IntSet set;             // InSet/NotInSet

    static Property eq(std::int64_t v);
    static Property neq(std::int64_t v);
    static Property inset(IntSet s);
    static Property notinset(IntSet s);

    Term to_term() const;
    bool operator==(const Property&) const = default;
};

/// cond(M,Pa,PL): holds iff at least M of the entities referred to by Pa
/// fulfill their property; M may be the keyword `all`. A single property
/// applies to each entity, a property list pairs up positionally and must
/// match the number of referred entities.
struct Cond {
    std::optional<int> min_count; // nullopt = all
    Path path;
    std::vector<Property> props;
    bool single_prop = true;

    Term to_term() const;
    bool operator==(const Cond&) const = default;
};

/// N-CondList: holds iff at least N of the conds hold.
struct Explanation {
    int n = 1;
    std::vector<Cond> conds;

    Term to_term() const;
    std::string str() const { return to_term().str(); }
    bool operator==(const Explanation&) const = default;
};

Explanation explanation_from_term(const Term& t);
Explanation parse_explanation(std::string_view text);

/// Does the entity fulfill the property? The entity is an integer or a
/// variable (whose current domain `domains` supplies); anything else is a
/// contract violation and throws EvalError.
bool entity_satisfies(const Term& entity, const Property& prop,
                      const DomainFn& domains);

bool cond_holds(const Cond& c, const Term& ctx, const DomainFn& domains);

/// Truth of the whole explanation against a constraint representation and
/// a domain snapshot.
bool holds(const Explanation& e, const Term& ctx, const DomainFn& domains);

} // namespace fdt

#endif
