#ifndef FDT_REPLAY_HPP
#define FDT_REPLAY_HPP

#include <vector>

#include "fdt/trace.hpp"

namespace fdt {

/// Full log check: structural validation plus state replay. The replay
/// reconstructs every variable's domain from before/after_prune events
/// (fresh variables default to the machine range), simulates backtracking
/// from ctr_labeling_N prune blocks, verifies that each before_prune agrees
/// with the reconstructed state and that every explanation-carrying
/// *_because event holds at its emission state.
std::vector<Violation> check_log(const std::vector<TraceEvent>& log);

} // namespace fdt

#endif
