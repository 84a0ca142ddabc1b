#pragma once

#include <iosfwd>
#include <string>

#include "nnv/network.hpp"

namespace nnv {

// Plain-text network format. First non-comment line lists the layer widths
// k_0,...,k_n comma-separated. Then for each layer: one line with the
// activation name (`relu` or `id`), k_i lines of k_{i-1} comma-separated
// weights, and one line of k_i biases. Blank lines and `#` comments are
// ignored; whitespace around numbers is tolerated.
Network read_network(std::istream& in);
Network read_network_file(const std::string& path);

void write_network(std::ostream& out, const Network& net);

}  // namespace nnv
