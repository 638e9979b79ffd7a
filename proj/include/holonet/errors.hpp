#pragma once

#include <stdexcept>
#include <string>

namespace holonet {

// Malformed input text: network files, weighted complexes, expressions.
// Maps to CLI exit code 1.
class parse_error : public std::runtime_error {
public:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    explicit parse_error(const std::string& msg, std::size_t offset = npos)
        : std::runtime_error(msg), offset_(offset) {}

    // Byte offset into the offending text, npos when not positional.
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

// A domain rule was violated: mode restrictions, duplicate edges, invalid
// fractions, dimension mismatches. Maps to CLI exit code 2.
class constraint_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The lattice cannot carry the requested connection at this spacing and
// phase quantum; refine the spacing or enlarge eps'. Maps to CLI exit code 3.
class coarseness_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Numeric evaluation failed, e.g. division by zero at a quadrature node.
class eval_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace holonet
