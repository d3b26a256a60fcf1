#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "tensortrack/colored_graph.hpp"
#include "tensortrack/dot.hpp"
#include "tensortrack/errors.hpp"
#include "tensortrack/gct.hpp"
#include "tensortrack/permutation.hpp"

using namespace tensortrack;

namespace {

Perm random_perm(int n, std::mt19937& rng) {
    Perm p = identity_perm(n);
    std::shuffle(p.begin(), p.end(), rng);
    return p;
}

ColoredGraph random_graph(int rank, int pairs, std::mt19937& rng) {
    std::vector<Perm> ms;
    ms.reserve(static_cast<std::size_t>(rank));
    for (int c = 0; c < rank; ++c) ms.push_back(random_perm(pairs, rng));
    return make_graph(rank, std::move(ms));
}

ColoredGraph rotation_graph(int pairs) {
    Perm rot(static_cast<std::size_t>(pairs));
    for (int i = 0; i < pairs; ++i) rot[static_cast<std::size_t>(i)] = (i + 1) % pairs;
    return make_graph(2, {identity_perm(pairs), rot});
}

} // namespace

TEST_CASE("graph construction rejects bad shapes") {
    CHECK_THROWS_AS(make_graph(0, {}), MalformedGraphError);
    CHECK_THROWS_AS(make_graph(2, {}), MalformedGraphError);
    CHECK_THROWS_AS(make_graph(2, {identity_perm(2)}), MalformedGraphError);
    CHECK_THROWS_AS(make_graph(1, {Perm{}}), MalformedGraphError);
    CHECK_THROWS_AS(make_graph(2, {Perm{0, 0}, Perm{0, 1}}), MalformedGraphError);
    CHECK_THROWS_AS(make_graph(2, {Perm{0, 1}, Perm{0, 2}}), MalformedGraphError);
}

TEST_CASE("edge-list validation names the offending slot") {
    CHECK_THROWS_WITH_AS(validate(2, 1, {{0, 1, 1}, {0, 1, 1}}),
                         doctest::Contains("duplicate slot"), MalformedGraphError);
    CHECK_THROWS_WITH_AS(validate(2, 1, {{0, 1, 1}}), doctest::Contains("missing edge"),
                         IncompletenessError);
    CHECK_THROWS_AS(validate(2, 1, {{0, 2, 1}, {1, 1, 1}}), MalformedGraphError);
    CHECK_THROWS_AS(validate(2, 1, {{2, 1, 1}, {1, 1, 1}}), MalformedGraphError);
}

TEST_CASE("elementary pair faces") {
    const ColoredGraph g = make_graph(3, {identity_perm(1), identity_perm(1), identity_perm(1)});
    CHECK(is_connected(g));
    const FaceSet fs = faces(g);
    CHECK(fs.total_faces() == 3);
    CHECK(fs.total_length() == 6);
    for (const FacePair& fp : fs.pairs)
        for (int len : fp.lengths) CHECK(len == 2);
}

TEST_CASE("cycle and dipole face censuses") {
    const ColoredGraph cyc = rotation_graph(4);
    CHECK(is_connected(cyc));
    CHECK(face_lengths(cyc, 0, 1) == std::vector<int>{8});

    const ColoredGraph dip4 =
        make_graph(4, std::vector<Perm>(4, identity_perm(1)));
    const FaceSet fs = faces(dip4);
    CHECK(fs.total_faces() == 6);
    CHECK(fs.total_length() == 12);
}

TEST_CASE("face lengths are even and their total is fixed by the shape") {
    std::mt19937 rng(20260816);
    for (int trial = 0; trial < 60; ++trial) {
        const int rank = 2 + static_cast<int>(rng() % 4);
        const int pairs = 1 + static_cast<int>(rng() % 5);
        const ColoredGraph g = random_graph(rank, pairs, rng);
        const FaceSet fs = faces(g);
        CHECK(fs.total_length() == rank * (rank - 1) * pairs);
        for (const FacePair& fp : fs.pairs)
            for (int len : fp.lengths) CHECK(len % 2 == 0);
    }
    const ColoredGraph g = random_graph(3, 3, rng);
    CHECK_THROWS_AS(face_lengths(g, 1, 1), InvalidArgumentError);
    CHECK_THROWS_AS(face_lengths(g, 0, 3), InvalidArgumentError);
}

TEST_CASE("connectivity distinguishes split and crossed matchings") {
    CHECK_FALSE(is_connected(make_graph(2, {identity_perm(2), identity_perm(2)})));
    CHECK(is_connected(make_graph(2, {identity_perm(2), Perm{1, 0}})));
}

TEST_CASE("canonical form is invariant under relabeling") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 80; ++trial) {
        const int rank = 2 + static_cast<int>(rng() % 3);
        const int pairs = 1 + static_cast<int>(rng() % 5);
        const ColoredGraph g = random_graph(rank, pairs, rng);
        const CanonicalForm cf = canonical_form(g);

        const ColoredGraph shuffled = relabel(g, random_perm(pairs, rng), random_perm(pairs, rng));
        CHECK(canonical_form(shuffled).key() == cf.key());

        const CanonicalForm again = canonical_form(from_canonical(cf));
        CHECK(again == cf);
        CHECK(again.key() == cf.key());
    }
}

TEST_CASE("canonical form separates the rank-3 two-pair classes") {
    const Perm id2 = identity_perm(2), sw = {1, 0};
    const ColoredGraph a = make_graph(3, {id2, id2, sw});
    const ColoredGraph b = make_graph(3, {id2, sw, id2});
    const ColoredGraph c = make_graph(3, {id2, sw, sw});
    std::set<std::string> keys = {canonical_form(a).key(), canonical_form(b).key(),
                                  canonical_form(c).key()};
    CHECK(keys.size() == 3);
}

TEST_CASE("conjugate rotations are the same class") {
    Perm rot = {1, 2, 0}, rot2 = {2, 0, 1};
    const ColoredGraph g1 = make_graph(2, {identity_perm(3), rot});
    const ColoredGraph g2 = make_graph(2, {identity_perm(3), rot2});
    CHECK(canonical_form(g1).key() == canonical_form(g2).key());
}

TEST_CASE("gct round trip preserves the graph") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        const ColoredGraph g = random_graph(2 + static_cast<int>(rng() % 3),
                                            1 + static_cast<int>(rng() % 4), rng);
        const std::string text = serialize_gct(g);
        const ColoredGraph back = parse_gct(text);
        CHECK(back == g);
        CHECK(serialize_gct(back) == text);
    }
}

TEST_CASE("gct parser tolerates comments, blanks, and CRLF") {
    const std::string text = "# a bubble\r\n"
                             "rank 2\r\n"
                             "\r\n"
                             "pairs 1\r\n"
                             "  # indented comment\n"
                             "edge 0 1 1\n"
                             "edge 1 1 1\r\n";
    const ColoredGraph g = parse_gct(text);
    CHECK(g.rank == 2);
    CHECK(g.pairs == 1);
    CHECK(g.matchings[0] == identity_perm(1));
}

TEST_CASE("gct parser classifies input defects") {
    CHECK_THROWS_AS(parse_gct("rank 2\npairs 1\nedge 0 1 1\n"), IncompletenessError);
    CHECK_THROWS_WITH_AS(parse_gct("rank 2\npairs 1\nedge 0 1 1\nedge 0 1 1\n"),
                         doctest::Contains("slot"), MalformedGraphError);
    CHECK_THROWS_AS(parse_gct("rank 2\npairs 1\nedge 0 2 1\nedge 1 1 1\n"), MalformedGraphError);
    CHECK_THROWS_AS(parse_gct("rank 2\npairs 1\nvertex 0 1 1\n"), MalformedGraphError);
    CHECK_THROWS_AS(parse_gct("rank 2\nrank 2\npairs 1\n"), MalformedGraphError);
    CHECK_THROWS_AS(parse_gct("pairs 1\nedge 0 1 1\n"), MalformedGraphError);
    CHECK_THROWS_AS(parse_gct(""), MalformedGraphError);
    CHECK_THROWS_AS(parse_gct("rank 2\npairs 1\nedge 0 1 1\nedge 1 1 1\nedge 0 1 1\n"),
                    MalformedGraphError);
}

TEST_CASE("gct files save and load") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "tensortrack_gct_test";
    fs::create_directories(dir);
    const ColoredGraph g = make_graph(3, {identity_perm(2), Perm{1, 0}, Perm{1, 0}});
    const std::string path = (dir / "bubble.gct").string();
    save_gct(g, path);
    CHECK(load_gct(path) == g);
    CHECK_THROWS_AS(load_gct((dir / "missing.gct").string()), Error);
    fs::remove_all(dir);
}

TEST_CASE("hash has the reference fixed points") {
    CHECK(fnv1a64("") == 14695981039346656037ULL);
    CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
    CHECK(fnv1a64("ab") != fnv1a64("ba"));
}

TEST_CASE("dot export matches for canonicalized isomorphs") {
    Perm rot = {1, 2, 0}, rot2 = {2, 0, 1};
    const ColoredGraph g1 = from_canonical(canonical_form(make_graph(2, {identity_perm(3), rot})));
    const ColoredGraph g2 = from_canonical(canonical_form(make_graph(2, {identity_perm(3), rot2})));
    const std::string d1 = export_dot(g1), d2 = export_dot(g2);
    CHECK(d1 == d2);
    CHECK(d1.find("graph colored_graph {") != std::string::npos);
    CHECK(d1.find("w1") != std::string::npos);
    CHECK(d1.find("b1") != std::string::npos);
}
