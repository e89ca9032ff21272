#include "fdt/search.hpp"

#include <cassert>

namespace fdt {

namespace {

constexpr std::int64_t kLabelingDomainCap = 100000;

struct SearchDriver {
    Kernel& kernel;
    const std::vector<VarId>& vars;
    std::size_t limit;
    CtrId ctr;
    Term rep;
    std::vector<Solution> solutions;

    void capture() {
        Solution s;
        for (VarId v : kernel.all_vars()) {
            const FiniteDomain& d = kernel.domain(v);
            if (d.is_ground()) s.bindings[v] = d.min();
        }
        solutions.push_back(std::move(s));
    }

    bool full() const { return solutions.size() >= limit; }

    void search() {
        if (full() || kernel.failed()) return;
        std::size_t pick = vars.size();
        for (std::size_t i = 0; i < vars.size(); ++i) {
            if (!kernel.domain(vars[i]).is_ground()) {
                pick = i;
                break;
            }
        }
        if (pick == vars.size()) {
            capture();
            return;
        }
        VarId var = vars[pick];
        const FiniteDomain dom = kernel.domain(var);
        if (dom.size() > kLabelingDomainCap)
            throw ProgramError("labeling variable " + var.str() +
                               " has more than " +
                               std::to_string(kLabelingDomainCap) + " values");
        for (std::int64_t v : dom.values()) {
            if (full()) break;
            Kernel::Snapshot snap = kernel.snapshot();
            IntSet removal = dom.remove_set(IntSet::singleton(v)).first;
            PruneTarget target{
                {{2, false}, {static_cast<int>(pick) + 1, true}}, var};
            PruneOutcome out =
                kernel.apply_prune(ctr, rep, {target}, removal,
                                   PruneFact::remove_values(removal),
                                   std::nullopt);
            if (out != PruneOutcome::Failed) {
                kernel.run_to_fixpoint();
                if (!kernel.failed()) search();
            }
            kernel.restore(snap);
        }
    }
};

} // namespace

std::vector<Solution> labeling(Kernel& k, const LabelingOptions& opts,
                               const std::vector<VarId>& vars,
                               std::size_t limit) {
    assert(opts.var_order == VarOrder::Leftmost);
    assert(opts.val_order == ValOrder::Up);
    (void)opts;
    if (k.failed() || limit == 0) return {};

    std::vector<Term> var_terms;
    var_terms.reserve(vars.size());
    for (VarId v : vars) var_terms.push_back(Term::variable(v));
    Term source = Term::compound(
        "labeling",
        {Term::list({Term::atom("leftmost")}), Term::list(std::move(var_terms))});
    auto [ctr, rep] = k.intern_source(source);

    SearchDriver driver{k, vars, limit, ctr, rep, {}};
    driver.search();
    return driver.solutions;
}

} // namespace fdt
