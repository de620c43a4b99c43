#include "phg/khg_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <vector>

namespace phg {

namespace {

std::vector<long long> parse_ints(const std::string& text, int line_no) {
    std::vector<long long> out;
    std::istringstream ss(text);
    std::string tok;
    while (ss >> tok) {
        try {
            std::size_t pos = 0;
            out.push_back(std::stoll(tok, &pos));
            if (pos != tok.size()) throw std::invalid_argument("");
        } catch (...) {
            throw KhgParseError(line_no, "not an integer: '" + tok + "'");
        }
    }
    return out;
}

}  // namespace

Hypergraph read_khg(std::istream& in) {
    std::string text;
    if (!std::getline(in, text)) throw KhgParseError(1, "missing header");
    auto head = parse_ints(text, 1);
    if (head.size() != 3) throw KhgParseError(1, "header must be 'k n m'");
    long long k = head[0], n = head[1], m = head[2];
    if (k < 1 || k > 64) throw KhgParseError(1, "bad uniformity k");
    if (n < 0 || n > INT32_MAX) throw KhgParseError(1, "bad vertex count n");
    if (m < 0) throw KhgParseError(1, "bad edge count m");

    std::vector<std::vector<Vertex>> edges;
    edges.reserve(m);
    for (long long i = 0; i < m; ++i) {
        int line_no = static_cast<int>(i) + 2;
        if (!std::getline(in, text)) throw KhgParseError(line_no, "unexpected end of file");
        auto vals = parse_ints(text, line_no);
        if (static_cast<long long>(vals.size()) != k)
            throw KhgParseError(line_no, "expected " + std::to_string(k) + " vertices, got " +
                                             std::to_string(vals.size()));
        std::vector<Vertex> e(k);
        for (long long j = 0; j < k; ++j) {
            if (vals[j] < 0 || vals[j] >= n)
                throw KhgParseError(line_no, "vertex " + std::to_string(vals[j]) +
                                                 " out of range [0," + std::to_string(n - 1) + "]");
            if (j > 0 && vals[j] <= vals[j - 1])
                throw KhgParseError(line_no, "vertices must be strictly ascending");
            e[j] = static_cast<Vertex>(vals[j]);
        }
        edges.push_back(std::move(e));
    }
    // Catch duplicates with an offending line number before the constructor's
    // generic rejection.
    std::vector<std::size_t> order(edges.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return edges[a] != edges[b] ? edges[a] < edges[b] : a < b;
    });
    for (std::size_t i = 1; i < order.size(); ++i)
        if (edges[order[i]] == edges[order[i - 1]])
            throw KhgParseError(static_cast<int>(std::max(order[i], order[i - 1])) + 2,
                                "duplicate edge");
    return Hypergraph(static_cast<int>(k), static_cast<int>(n), edges);
}

Hypergraph read_khg_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    try {
        return read_khg(in);
    } catch (const KhgParseError& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

void write_khg(const Hypergraph& h, std::ostream& out) {
    out << h.k() << ' ' << h.n() << ' ' << h.edge_count() << '\n';
    for (std::int64_t i = 0; i < h.edge_count(); ++i) {
        auto e = h.edge(i);
        for (std::size_t j = 0; j < e.size(); ++j) out << (j ? " " : "") << e[j];
        out << '\n';
    }
}

void write_khg_file(const Hypergraph& h, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    write_khg(h, out);
}

}  // namespace phg
