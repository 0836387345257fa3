#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <string>

#include "qnet/errors.hpp"
#include "qnet/graph.hpp"
#include "qnet/graph_io.hpp"
#include "qnet/photonic.hpp"

using namespace qnet;

namespace {

std::string tmp_path(const std::string& name) {
    return (std::filesystem::path(QNET_TEST_TMPDIR) / name).string();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

} // namespace

TEST_CASE("empty graph round-trips") {
    std::string path = tmp_path("empty.qg");
    WeightedAdjacency w(0, WeightKind::BinaryClassical);
    save_graph(w, {}, path);
    StoredGraph loaded = load_graph(path);
    CHECK(loaded.weights.size() == 0);
    CHECK(loaded.positions.empty());
}

TEST_CASE("weighted graph round-trips bit-exactly") {
    std::string path = tmp_path("weighted.qg");
    WeightedAdjacency w(3, WeightKind::ProbabilityWeighted);
    w.set(0, 1, 0.1 + 0.2);          // 0.30000000000000004
    w.set(1, 2, 1e-17);              // subnormal-ish tiny weight
    w.set(0, 2, 0.99995682875258936);
    std::vector<Point> pts{{0.0, 0.0}, {1.0 / 3.0, -2.5}, {1e-8, 1600.0}};

    save_graph(w, pts, path);
    StoredGraph loaded = load_graph(path);
    CHECK(loaded.weights == w);
    CHECK(loaded.positions == pts);
}

TEST_CASE("quantum waxman graph round-trips through the file format") {
    GeoParams geo;
    geo.n_nodes = 40;
    SpatialGraph g = generate_waxman(geo, 11);
    WeightedAdjacency pam = apply_quantum_weights(g, {0.2, 1000});
    std::string path = tmp_path("pam.qg");
    save_graph(pam, g.positions(), path);
    StoredGraph loaded = load_graph(path);
    CHECK(loaded.weights == pam);
    CHECK(loaded.positions == g.positions());
}

TEST_CASE("truncated file names the offending line") {
    std::string path = tmp_path("truncated.qg");
    write_file(path, "qnet-graph v1\nn=3 kind=binary\n0 0 0\n1 1 1\n");
    try {
        load_graph(path);
        FAIL("expected malformed_file_error");
    } catch (const malformed_file_error& e) {
        CHECK(e.line == 5); // node line for id 2 is missing
        CHECK(std::string(e.what()).find("line 5") != std::string::npos);
    }
}

TEST_CASE("malformed inputs are rejected with line numbers") {
    std::string path = tmp_path("bad.qg");

    write_file(path, "not-a-header\n");
    CHECK_THROWS_AS(load_graph(path), malformed_file_error);

    write_file(path, "qnet-graph v1\nn=x kind=binary\n");
    CHECK_THROWS_AS(load_graph(path), malformed_file_error);

    write_file(path, "qnet-graph v1\nn=2 kind=mystery\n");
    CHECK_THROWS_AS(load_graph(path), malformed_file_error);

    // node ids out of order
    write_file(path, "qnet-graph v1\nn=2 kind=binary\n1 0 0\n0 1 1\n");
    CHECK_THROWS_AS(load_graph(path), malformed_file_error);

    // edge with i >= j
    write_file(path, "qnet-graph v1\nn=2 kind=binary\n0 0 0\n1 1 1\n1 0 1\n");
    CHECK_THROWS_AS(load_graph(path), malformed_file_error);

    // endpoint out of range
    write_file(path, "qnet-graph v1\nn=2 kind=binary\n0 0 0\n1 1 1\n0 5 1\n");
    CHECK_THROWS_AS(load_graph(path), malformed_file_error);

    // duplicate edge
    write_file(path, "qnet-graph v1\nn=2 kind=binary\n0 0 0\n1 1 1\n0 1 1\n0 1 1\n");
    CHECK_THROWS_AS(load_graph(path), malformed_file_error);

    // fractional weight on a binary graph
    write_file(path, "qnet-graph v1\nn=2 kind=binary\n0 0 0\n1 1 1\n0 1 0.5\n");
    CHECK_THROWS_AS(load_graph(path), malformed_file_error);

    // weight outside [0,1] on a weighted graph
    write_file(path, "qnet-graph v1\nn=2 kind=weighted\n0 0 0\n1 1 1\n0 1 1.5\n");
    CHECK_THROWS_AS(load_graph(path), malformed_file_error);
}

TEST_CASE("missing file raises io_error") {
    CHECK_THROWS_AS(load_graph(tmp_path("does-not-exist.qg")), io_error);
}

TEST_CASE("kind token round-trips for all kinds") {
    for (WeightKind kind : {WeightKind::BinaryClassical, WeightKind::ProbabilityWeighted,
                            WeightKind::SampledRealization}) {
        WeightedAdjacency w(2, kind);
        w.set(0, 1, kind == WeightKind::ProbabilityWeighted ? 0.5 : 1.0);
        std::string path = tmp_path("kind.qg");
        save_graph(w, {{0.0, 0.0}, {1.0, 1.0}}, path);
        CHECK(load_graph(path).weights.kind() == kind);
    }
}
