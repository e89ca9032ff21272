#ifndef FDT_SEARCH_HPP
#define FDT_SEARCH_HPP

#include <cstddef>
#include <map>
#include <vector>

#include "fdt/kernel.hpp"

namespace fdt {

enum class VarOrder { Leftmost };
enum class ValOrder { Up };

struct LabelingOptions {
    VarOrder var_order = VarOrder::Leftmost;
    ValOrder val_order = ValOrder::Up;
};

/// Value of every ground variable at the moment a solution was found.
struct Solution {
    std::map<VarId, std::int64_t> bindings;
};

/// Depth-first labeling: leftmost unbound variable, values ascending.
/// Assignments are traced as prune blocks attributed to a synthetic
/// ctr_labeling_N constraint; backtracking restores full kernel snapshots.
/// Returns up to `limit` solutions; the kernel state afterwards equals the
/// state before the call (the event log excepted).
std::vector<Solution> labeling(Kernel& k, const LabelingOptions& opts,
                               const std::vector<VarId>& vars,
                               std::size_t limit = 1);

} // namespace fdt

#endif
