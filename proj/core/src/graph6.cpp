#include "regraph/graph6.hpp"

#include <fstream>

#include "regraph/errors.hpp"

namespace regraph {

namespace {

constexpr int kMaxGraph6 = 258047;
const std::string kHeader = ">>graph6<<";

void append_bit(std::string& out, int& bitpos, int bit) {
    if (bitpos == 0) out.push_back(static_cast<char>(63));
    out.back() = static_cast<char>(out.back() + (bit << (5 - bitpos)));
    bitpos = (bitpos + 1) % 6;
}

}  // namespace

std::string graph6_encode(const Graph& g) {
    const int n = g.vertex_count();
    if (n > kMaxGraph6)
        throw TooLargeError("graph6 supports at most " +
                            std::to_string(kMaxGraph6) + " vertices");
    std::string out;
    if (n <= 62) {
        out.push_back(static_cast<char>(n + 63));
    } else {
        out.push_back(126);
        out.push_back(static_cast<char>(((n >> 12) & 63) + 63));
        out.push_back(static_cast<char>(((n >> 6) & 63) + 63));
        out.push_back(static_cast<char>((n & 63) + 63));
    }
    int bitpos = 0;
    for (int col = 1; col < n; ++col)
        for (int row = 0; row < col; ++row)
            append_bit(out, bitpos, g.has_edge(row, col) ? 1 : 0);
    return out;
}

Graph graph6_decode(const std::string& line) {
    std::size_t pos = 0;
    if (line.rfind(kHeader, 0) == 0) pos = kHeader.size();
    if (pos >= line.size()) throw ParseError("empty graph6 record");

    auto next = [&]() -> int {
        if (pos >= line.size()) throw ParseError("truncated graph6 record");
        int c = static_cast<unsigned char>(line[pos++]);
        if (c < 63 || c > 126) throw ParseError("invalid graph6 byte");
        return c - 63;
    };

    int n;
    int first = next();
    if (first < 63) {
        n = first;
    } else {
        // '~' prefix: 18-bit size (a second '~' would mean the 36-bit form,
        // far beyond the supported range).
        int a = next();
        if (a == 63) throw ParseError("graph6 size beyond supported range");
        int b = next();
        int c = next();
        n = (a << 12) | (b << 6) | c;
    }

    const std::size_t nbits = static_cast<std::size_t>(n) * (n - 1) / 2;
    const std::size_t nbytes = (nbits + 5) / 6;
    if (line.size() - pos != nbytes)
        throw ParseError("graph6 record has wrong length for n=" +
                         std::to_string(n));

    std::vector<VertexPair> edges;
    std::size_t bit = 0;
    int current = 0;
    int avail = 0;
    for (int col = 1; col < n; ++col) {
        for (int row = 0; row < col; ++row, ++bit) {
            if (avail == 0) {
                current = next();
                avail = 6;
            }
            if ((current >> (avail - 1)) & 1) edges.emplace_back(row, col);
            --avail;
        }
    }
    // Trailing pad bits must be zero.
    if (avail > 0 && (current & ((1 << avail) - 1)) != 0)
        throw ParseError("graph6 record has nonzero padding");
    return Graph::from_edges(n, edges);
}

std::vector<Graph> graph6_read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::vector<Graph> graphs;
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == '\n'))
            line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        graphs.push_back(graph6_decode(line));
    }
    return graphs;
}

void graph6_write_file(const std::string& path, const std::vector<Graph>& graphs) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open " + path + " for writing");
    for (const auto& g : graphs) out << graph6_encode(g) << "\n";
}

}  // namespace regraph
