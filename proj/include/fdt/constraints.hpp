#ifndef FDT_CONSTRAINTS_HPP
#define FDT_CONSTRAINTS_HPP

#include <vector>

#include "fdt/kernel.hpp"

namespace fdt {

/// Registers the constraint library: domain/3, in/2, all_different/1,
/// all_distinct/1 and element/3.
void install_standard_constraints(Kernel& k);

// Posting helpers; each builds the source term and connects it.

CtrResult post_domain(Kernel& k, const std::vector<VarId>& vars,
                      std::int64_t lo, std::int64_t hi);
CtrResult post_in(Kernel& k, VarId x, const IntSet& s);
/// Items are integers or variables.
CtrResult post_all_different(Kernel& k, const std::vector<Term>& items);
CtrResult post_all_distinct(Kernel& k, const std::vector<Term>& items);
CtrResult post_element(Kernel& k, const Term& x,
                       const std::vector<std::int64_t>& list, const Term& y);

/// The in/2 set argument renders as L..H for a single interval and as an
/// interval list otherwise.
Term intset_source_term(const IntSet& s);

} // namespace fdt

#endif
