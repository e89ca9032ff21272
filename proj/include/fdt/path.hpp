#ifndef FDT_PATH_HPP
#define FDT_PATH_HPP

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fdt/domain.hpp"
#include "fdt/term.hpp"

namespace fdt {

enum class PathFunction { Min, Max, Length };

std::string path_function_name(PathFunction f);

/// One step of a path. `hashed` marks positions inside a list; without it
/// the element addresses compound-term arguments.
struct PathElem {
    enum class Kind { Pos, PosSet, All };
    Kind kind = Kind::Pos;
    bool hashed = false;
    std::vector<int> indices; // Pos: one entry; PosSet: strictly increasing

    bool operator==(const PathElem&) const = default;
};

/// Position selector into a constraint term: a chain of elements, an
/// optional subtracted path and an optional final function.
struct Path {
    std::vector<PathElem> elems;
    std::shared_ptr<const Path> minus;
    std::optional<PathFunction> func;

    Term to_term() const;
    std::string str() const { return to_term().str(); }
    bool operator==(const Path& other) const;
};

Path path_from_term(const Term& t);
Path parse_path(std::string_view text);

/// Index chain that uniquely names one position in a term.
struct PathStep {
    int index = 0;
    bool in_list = false;
    bool operator==(const PathStep&) const = default;
};

struct PathTarget {
    std::vector<PathStep> steps;
    Term term;
};

/// Resolves a path against a constraint representation; entities come back
/// in index order, element i+1 addressing inside what element i addressed.
/// Throws PathError on out-of-range indices, `#` on a non-list or descent
/// into a non-compound. The path's function, if any, is ignored here.
std::vector<PathTarget> resolve(const Path& p, const Term& ctx);

using DomainFn = std::function<FiniteDomain(VarId)>;

/// Applies the path's function to each resolved entity. min/max of an
/// integer return it, of a variable read its domain; length counts list
/// elements. One value per resolved entity, in order.
std::vector<std::int64_t> apply_function(const Path& p, const Term& ctx,
                                         const DomainFn& domains);

// Canonical builders for the flat constraint shapes used by the library.
Path path_for_arg(int index);
Path path_for_args(std::vector<int> indices);
Path path_for_list_positions(int arg_index, std::vector<int> positions);
/// Rebuilds the minimal one- or two-level path covering the given chains.
Path path_for_steps(const std::vector<std::vector<PathStep>>& chains);

} // namespace fdt

#endif
