#pragma once

#include <string>

#include "holonet/group.hpp"
#include "holonet/lattice.hpp"
#include "holonet/quantize.hpp"

namespace holonet {

// On-disk network document: `holonet v1` header, mode, unit length, group
// block, vertices, optional coordinates, then edges in canonical order.
// Serialization of a parsed document is byte-identical to its source when
// the source was produced by serialize_network.
struct NetworkDocument {
    EmbeddedNetwork emb;
    GroupSpec group;
};

// Requires a frozen network; coordinate block is emitted when present.
std::string serialize_network(const NetworkDocument& doc);

// Returns a frozen network; throws parse_error (with the byte offset of the
// offending line) or constraint_error.
NetworkDocument parse_network(const std::string& text);

// `complex v=<V>` header followed by `wedge <u> <v> <l>` lines.
WeightedComplex parse_complex(const std::string& text);
std::string serialize_complex(const WeightedComplex& complex);

// A standalone group block: the same `group ...` (+ `gen ...`) lines that a
// network document embeds.
GroupSpec parse_group_text(const std::string& text);
std::string serialize_group_text(const GroupSpec& spec);

// Shortest text that parses back to exactly the same double.
std::string format_double(double v);

std::string read_file(const std::string& path);

// Writes through a temp file in the target directory plus an atomic rename,
// so failed commands never leave partial output behind.
void write_file_atomic(const std::string& path, const std::string& content);

} // namespace holonet
