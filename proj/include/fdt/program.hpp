#ifndef FDT_PROGRAM_HPP
#define FDT_PROGRAM_HPP

#include <string>
#include <string_view>
#include <vector>

#include "fdt/kernel.hpp"

namespace fdt {

/// One goal per line, terminated by '.'; blank lines and '%' comments are
/// skipped. Identifiers starting with an uppercase letter (or '_') are
/// logic variables. Supported goals: domain(Vars,L,H), all_different(List),
/// all_distinct(List), element(X,List,Y), X in L..H,
/// labeling([leftmost],Vars).
std::vector<Term> parse_program(std::string_view text);

struct RunResult {
    bool failed = false;
    /// One line per solution, e.g. "X = 1, Y = 2".
    std::vector<std::string> solutions;
};

/// Executes the goals in order. Posting failure stops execution with
/// failed=true; a labeling goal with no solution also fails. The trace
/// accumulates in the kernel's log.
RunResult run_program(Kernel& k, const std::vector<Term>& goals,
                      std::size_t max_solutions = 1);

/// Convenience: installs the constraint library, then parses and runs.
RunResult run_program_text(Kernel& k, std::string_view text,
                           std::size_t max_solutions = 1);

} // namespace fdt

#endif
