#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "phg/hypergraph.hpp"

namespace phg {

// khg/1: a line "k n m" followed by m lines of k ascending space-separated
// vertex indices.

struct KhgParseError : std::runtime_error {
    int line;
    KhgParseError(int line_, const std::string& what_)
        : std::runtime_error("line " + std::to_string(line_) + ": " + what_), line(line_) {}
};

Hypergraph read_khg(std::istream& in);
Hypergraph read_khg_file(const std::string& path);

void write_khg(const Hypergraph& h, std::ostream& out);
void write_khg_file(const Hypergraph& h, const std::string& path);

}  // namespace phg
