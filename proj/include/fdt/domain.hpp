#ifndef FDT_DOMAIN_HPP
#define FDT_DOMAIN_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace fdt {

/// Closed integer interval, lo <= hi.
struct Interval {
    std::int64_t lo = 0;
    std::int64_t hi = 0;
    bool operator==(const Interval&) const = default;
};

/// Set of integers kept as a sorted list of disjoint, non-adjacent closed
/// intervals. The text form is [[lo|hi],...]; [] denotes the empty set.
/// Values are plain machine integers, there are no open bounds.
class FiniteDomain {
public:
    FiniteDomain() = default;

    static FiniteDomain range(std::int64_t lo, std::int64_t hi);
    static FiniteDomain singleton(std::int64_t v);

    /// Normalizes arbitrary input: pairs may be unordered and overlapping;
    /// pairs with lo > hi contribute nothing.
    static FiniteDomain
    from_intervals(const std::vector<std::pair<std::int64_t, std::int64_t>>& pairs);

    bool empty() const { return ivs_.empty(); }
    bool is_ground() const { return size() == 1; }
    bool contains(std::int64_t v) const;

    /// min/max require a non-empty domain; callers check emptiness first.
    std::int64_t min() const;
    std::int64_t max() const;
    std::int64_t size() const;

    /// Set difference; the flag reports whether anything was removed.
    std::pair<FiniteDomain, bool> remove_set(const FiniteDomain& s) const;
    /// Set intersection; the flag reports whether the domain shrank.
    std::pair<FiniteDomain, bool> intersect(const FiniteDomain& s) const;
    FiniteDomain unite(const FiniteDomain& s) const;

    bool subset_of(const FiniteDomain& s) const;
    bool disjoint_with(const FiniteDomain& s) const;

    const std::vector<Interval>& intervals() const { return ivs_; }

    /// Enumerates every member in ascending order. Only meant for small
    /// domains; callers guard with size().
    std::vector<std::int64_t> values() const;

    /// Text form used throughout the trace: [[1|2],[4|6]].
    std::string str() const;

    bool operator==(const FiniteDomain&) const = default;

private:
    std::vector<Interval> ivs_;
};

/// Propagation-event sets and explanation sets share the representation
/// and normalization rules of variable domains.
using IntSet = FiniteDomain;

} // namespace fdt

#endif
