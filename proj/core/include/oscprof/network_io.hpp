#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "oscprof/model.hpp"

namespace oscprof {

// Plain-text network description: one "[gene]" block per stage followed by
// "key = value" lines. '#' starts a comment, blank lines are ignored.
// Required keys per block: a, b, c, beta, nu, regulation, tau_r, tau_p.
// Optional keys: history_r, history_p (constant simulation history for t <= 0).
// Parse errors carry the source name, line number and offending field.
Network parse_network(std::istream& in, const std::string& source_name = "<stream>");
Network load_network(const std::filesystem::path& file);

// Writes with enough precision that re-parsing reproduces the doubles exactly.
void write_network(const Network& net, std::ostream& out);
void save_network(const Network& net, const std::filesystem::path& file);

}  // namespace oscprof
