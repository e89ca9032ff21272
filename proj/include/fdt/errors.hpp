#ifndef FDT_ERRORS_HPP
#define FDT_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fdt {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Syntax error in term, path, selector or program text. `pos` is the
/// byte offset of the first offending character.
struct ParseError : Error {
    ParseError(const std::string& msg, std::size_t pos_)
        : Error(msg + " (at offset " + std::to_string(pos_) + ")"), pos(pos_) {}
    std::size_t pos;
};

/// Path resolution failure: index out of range, `#` on a non-list,
/// descent into a non-compound, function/entity mismatch.
struct PathError : Error {
    using Error::Error;
};

/// Explanation evaluation against an incompatible entity.
struct EvalError : Error {
    using Error::Error;
};

/// Unsupported or malformed goal/constraint at posting time.
struct ProgramError : Error {
    using Error::Error;
};

} // namespace fdt

#endif
