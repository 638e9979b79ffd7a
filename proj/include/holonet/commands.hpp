#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

namespace holonet {

// Exit codes shared by every command: 0 success, 1 parse error, 2 constraint
// violation, 3 lattice too coarse for the connection, 4 verification failure.
// No command leaves a partial output file behind.

struct SubdivideOptions {
    std::string input;
    std::string output;
    double epsilon = 1.0;
    double unit = 0.0; // <= 0 selects the 2*epsilon default
    std::string rule = "floor";
    std::string zero = "clamp";
    std::string mode = "dual";
    double eps_prime = 1.0; // group block of the emitted file
};
int cmd_subdivide(const SubdivideOptions& opt, std::ostream& out, std::ostream& err);

struct LatticeOptions {
    int rows = 1;
    int cols = 1;
    double spacing = 1.0;
    std::string mode = "dual";
    double eps_prime = 0.1;
    std::optional<double> fx; // forward fractions per axis
    std::optional<double> fy;
    std::optional<double> fd;
    std::optional<std::string> ax; // connection expressions
    std::optional<std::string> ay;
    std::string output;
};
int cmd_lattice(const LatticeOptions& opt, std::ostream& out, std::ostream& err);

struct HolonomyOptions {
    std::string input;
    std::string path; // comma-separated vertex ids
    bool loop = false;
};
int cmd_holonomy(const HolonomyOptions& opt, std::ostream& out, std::ostream& err);

struct VerifyOptions {
    std::string input;
    std::string ax;
    std::string ay;
    std::string loops_file; // one closed vertex loop per line
    bool all_rects = false;
    bool even_sides = false; // with all_rects: only even edge counts per side
    double tol = 1e-9;
    std::string report; // CSV output path
};
int cmd_verify(const VerifyOptions& opt, std::ostream& out, std::ostream& err);

struct GroupOptions {
    std::string group_file;
    std::optional<std::string> approximate; // phase (dim 1) or row-major re/im matrix
    bool mesh = false;
    int64_t n = 0;
    int samples = 100;
    uint64_t seed = 0;
};
int cmd_group(const GroupOptions& opt, std::ostream& out, std::ostream& err);

} // namespace holonet
