#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <set>
#include <string>
#include <vector>

#include "support/oracles.hpp"
#include "tensortrack/census.hpp"
#include "tensortrack/errors.hpp"

using namespace tensortrack;

TEST_CASE("rank-3 and rank-4 class counts at small sizes") {
    CHECK(enumerate_invariants(3, 1).count == 1);
    CHECK(enumerate_invariants(3, 2).count == 3);
    CHECK(enumerate_invariants(3, 3).count == 7);
    CHECK(enumerate_invariants(3, 4).count == 26);
    CHECK(enumerate_invariants(4, 1).count == 1);
    CHECK(enumerate_invariants(4, 2).count == 7);
    CHECK(enumerate_invariants(4, 3).count == 41);
}

TEST_CASE("rank-2 classes are the single cycle") {
    for (int n = 1; n <= 6; ++n) CHECK(enumerate_invariants(2, n).count == 1);
}

TEST_CASE("rank-1 admits only the single pair") {
    CHECK(enumerate_invariants(1, 1).count == 1);
    CHECK(enumerate_invariants(1, 2).count == 0);
    CHECK(enumerate_invariants(1, 3).count == 0);
}

TEST_CASE("counts agree with the relabeling average") {
    for (int n = 1; n <= 4; ++n)
        CHECK(enumerate_invariants(3, n).count == testing::burnside_census(3, n));
    for (int n = 1; n <= 3; ++n)
        CHECK(enumerate_invariants(4, n).count == testing::burnside_census(4, n));
    CHECK(testing::burnside_census(2, 5) == 1);
}

TEST_CASE("kept forms are canonical, distinct, and connected") {
    const CensusLevel level = enumerate_invariants(3, 3, true);
    CHECK(level.forms.size() == level.count);
    std::set<std::string> keys;
    for (const CanonicalForm& cf : level.forms) {
        const ColoredGraph g = from_canonical(cf);
        CHECK(is_connected(g));
        CHECK(canonical_form(g) == cf);
        keys.insert(cf.key());
    }
    CHECK(keys.size() == level.count);
}

TEST_CASE("filter predicate restricts the census") {
    const auto all = enumerate_invariants_filtered(3, 3, [](const ColoredGraph&) { return true; });
    CHECK(all.count == 7);
    const auto none = enumerate_invariants_filtered(3, 3, [](const ColoredGraph&) { return false; });
    CHECK(none.count == 0);
    const auto with_short_face = enumerate_invariants_filtered(3, 2, [](const ColoredGraph& g) {
        const std::vector<int> lens = face_lengths(g, 1, 2);
        return !lens.empty() && lens.front() == 2;
    });
    CHECK(with_short_face.count <= 3);
    CHECK(with_short_face.count >= 1);
}

TEST_CASE("level table matches individual censuses") {
    const CensusResult table = count_invariants(3, 4);
    REQUIRE(table.levels.size() == 4);
    const std::uint64_t expect[] = {1, 3, 7, 26};
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(table.levels[i].pairs == static_cast<int>(i) + 1);
        CHECK(table.levels[i].count == expect[i]);
    }
}

TEST_CASE("search-space guard") {
    CHECK_THROWS_AS(enumerate_invariants(3, 11), ResourceLimitError);
    CHECK_THROWS_AS(enumerate_invariants(3, 6, false, 1000), ResourceLimitError);
    CHECK_THROWS_AS(enumerate_invariants(0, 2), InvalidArgumentError);
    CHECK_THROWS_AS(enumerate_invariants(3, 0), InvalidArgumentError);
}

TEST_CASE("results do not depend on the worker count") {
    const char* saved = std::getenv("TENSORTRACK_THREADS");
    const std::string restore = saved ? saved : "";

    setenv("TENSORTRACK_THREADS", "1", 1);
    const CensusLevel serial = enumerate_invariants(3, 4, true);
    setenv("TENSORTRACK_THREADS", "2", 1);
    const CensusLevel threaded = enumerate_invariants(3, 4, true);

    if (saved)
        setenv("TENSORTRACK_THREADS", restore.c_str(), 1);
    else
        unsetenv("TENSORTRACK_THREADS");

    CHECK(serial.count == threaded.count);
    REQUIRE(serial.forms.size() == threaded.forms.size());
    for (std::size_t i = 0; i < serial.forms.size(); ++i)
        CHECK(serial.forms[i].key() == threaded.forms[i].key());
}
