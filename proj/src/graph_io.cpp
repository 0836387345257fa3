#include "qnet/graph_io.hpp"

#include <fstream>
#include <sstream>
#include <vector>

#include "qnet/errors.hpp"
#include "qnet/format.hpp"

namespace qnet {

namespace {

WeightKind kind_from_token(const std::string& token, std::size_t line) {
    if (token == "binary") return WeightKind::BinaryClassical;
    if (token == "weighted") return WeightKind::ProbabilityWeighted;
    if (token == "sampled") return WeightKind::SampledRealization;
    throw malformed_file_error("unknown graph kind '" + token + "'", line);
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream iss(s);
    std::string tok;
    while (iss >> tok) out.push_back(tok);
    return out;
}

} // namespace

void save_graph(const WeightedAdjacency& w, const std::vector<Point>& positions,
                const std::string& path) {
    if (positions.size() != w.size())
        throw std::invalid_argument("position count does not match matrix size");

    std::ofstream out(path, std::ios::binary); // binary keeps LF endings everywhere
    if (!out) throw io_error("cannot open '" + path + "' for writing");

    out << "qnet-graph v1\n";
    out << "n=" << w.size() << " kind=" << to_string(w.kind()) << "\n";
    for (std::size_t i = 0; i < positions.size(); ++i)
        out << i << ' ' << format_double(positions[i].x) << ' '
            << format_double(positions[i].y) << '\n';
    w.for_each_edge([&](std::size_t i, std::size_t j, double weight) {
        out << i << ' ' << j << ' ' << format_double(weight) << '\n';
    });
    out.flush();
    if (!out) throw io_error("write failed for '" + path + "'");
}

StoredGraph load_graph(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open '" + path + "' for reading");

    std::size_t lineno = 0;
    std::string line;

    auto next_line = [&](const char* what) {
        if (!std::getline(in, line))
            throw malformed_file_error(std::string("unexpected end of file, expected ") + what,
                                       lineno + 1);
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
    };

    next_line("header");
    if (line != "qnet-graph v1")
        throw malformed_file_error("bad header, expected 'qnet-graph v1'", lineno);

    next_line("size line 'n=<N> kind=<kind>'");
    auto tokens = split_ws(line);
    if (tokens.size() != 2 || tokens[0].rfind("n=", 0) != 0 || tokens[1].rfind("kind=", 0) != 0)
        throw malformed_file_error("expected 'n=<N> kind=<kind>'", lineno);
    std::uint64_t n = 0;
    if (!parse_u64(tokens[0].substr(2), n))
        throw malformed_file_error("bad node count '" + tokens[0].substr(2) + "'", lineno);
    WeightKind kind = kind_from_token(tokens[1].substr(5), lineno);

    std::vector<Point> positions(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        next_line("node position line");
        auto parts = split_ws(line);
        std::uint64_t id = 0;
        double x = 0.0, y = 0.0;
        if (parts.size() != 3 || !parse_u64(parts[0], id) || !parse_double(parts[1], x) ||
            !parse_double(parts[2], y))
            throw malformed_file_error("expected '<node_id> <x_km> <y_km>'", lineno);
        if (id != i)
            throw malformed_file_error("node ids must run 0..N-1 in order, got " +
                                           std::to_string(id),
                                       lineno);
        positions[i] = {x, y};
    }

    WeightedAdjacency weights(n, kind);
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) {
            if (in.peek() == std::char_traits<char>::eof()) break;
            throw malformed_file_error("blank line inside edge list", lineno);
        }
        auto parts = split_ws(line);
        std::uint64_t i = 0, j = 0;
        double weight = 0.0;
        if (parts.size() != 3 || !parse_u64(parts[0], i) || !parse_u64(parts[1], j) ||
            !parse_double(parts[2], weight))
            throw malformed_file_error("expected '<i> <j> <weight>'", lineno);
        if (i >= j)
            throw malformed_file_error("edges must satisfy i < j", lineno);
        if (j >= n)
            throw malformed_file_error("edge endpoint " + std::to_string(j) + " out of range",
                                       lineno);
        if (weights.at(i, j) != 0.0)
            throw malformed_file_error("duplicate edge", lineno);
        try {
            weights.set(i, j, weight);
        } catch (const std::invalid_argument& e) {
            throw malformed_file_error(e.what(), lineno);
        }
    }

    return StoredGraph{std::move(weights), std::move(positions)};
}

} // namespace qnet
