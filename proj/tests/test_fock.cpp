#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include <nlohmann/json.hpp>

#include "qfock/fock.hpp"

using namespace qfock;

namespace {

// independent oracle: filter the full box {0..p}^(n+m) by the constraints
std::vector<OccupationVector> brute_force_states(const FockParams& params) {
    std::vector<OccupationVector> out;
    const int count = params.generator_count();
    OccupationVector r(count, 0);
    while (true) {
        if (is_valid_occupation(r, params)) out.push_back(r);
        int pos = count - 1;
        while (pos >= 0) {
            if (++r[pos] <= params.p) break;
            r[pos] = 0;
            --pos;
        }
        if (pos < 0) break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

TEST_CASE("theta grading") {
    const FockParams p22{2, 2, 1};
    CHECK(theta(0, p22) == 0);
    CHECK(theta(2, p22) == 0);
    CHECK(theta(3, p22) == 1);
    const FockParams p01{0, 1, 1};
    CHECK(theta(1, p01) == 1);
    CHECK_THROWS_AS(theta(5, p22), Error);
    CHECK_THROWS_AS(theta(-1, p22), Error);
}

TEST_CASE("params validation") {
    CHECK_THROWS_AS((FockParams{0, 0, 3}.validate()), Error);
    CHECK_THROWS_AS((FockParams{-1, 2, 3}.validate()), Error);
    CHECK_NOTHROW((FockParams{1, 0, 0}.validate()));
}

TEST_CASE("basis enumeration matches the hand-listed example") {
    const FockBasis basis({1, 1, 2});
    const std::vector<OccupationVector> expected = {{0, 0}, {0, 1}, {1, 0}, {1, 1}, {2, 0}};
    CHECK(basis.states() == expected);
    CHECK(basis.dim() == 5);
    CHECK(basis.vacuum_index() == 0);

    CHECK(FockBasis({1, 0, 1}).states() == std::vector<OccupationVector>{{0}, {1}});
    CHECK(FockBasis({2, 1, 1}).dim() == 4);
    CHECK(FockBasis({1, 1, 0}).dim() == 1);
}

TEST_CASE("dimension formula equals brute-force enumeration") {
    for (int n = 0; n <= 3; ++n)
        for (int m = 0; m <= 3; ++m) {
            if (n + m < 1) continue;
            for (int p = 0; p <= 4; ++p) {
                const FockParams params{n, m, p};
                const FockBasis basis(params);
                const auto oracle = brute_force_states(params);
                CHECK(basis.states() == oracle);
                CHECK(dim_formula(params) == basis.dim());
            }
        }
    CHECK(dim_formula({1, 1, 2}) == 5);
    CHECK(dim_formula({0, 2, 2}) == 4);
    CHECK(dim_formula({3, 0, 0}) == 1);
    CHECK(dim_formula({2, 1, 1}) == 4);
}

TEST_CASE("index lookup is the inverse of enumeration") {
    const FockBasis basis({2, 2, 3});
    for (int k = 0; k < basis.dim(); ++k) CHECK(basis.index_of(basis.state(k)) == k);
    CHECK_THROWS_AS(basis.index_of({9, 9, 9, 9}), Error);
    CHECK_THROWS_AS(basis.state(basis.dim()), Error);
    std::set<OccupationVector> distinct(basis.states().begin(), basis.states().end());
    CHECK((int)distinct.size() == basis.dim());
}

TEST_CASE("states are lexicographically sorted") {
    const FockBasis basis({2, 1, 2});
    CHECK(std::is_sorted(basis.states().begin(), basis.states().end()));
}

TEST_CASE("h eigenvalues") {
    const FockParams params{1, 1, 2};
    CHECK(h_eigenvalue(1, {0, 0}, params) == 2);
    CHECK(h_eigenvalue(1, {1, 0}, params) == 0);
    CHECK(h_eigenvalue(2, {0, 1}, params) == 2);
    for (int i = 1; i <= 2; ++i) CHECK(h_eigenvalue(i, {0, 0}, params) == params.p);
    CHECK_THROWS_AS(h_eigenvalue(3, {0, 0}, params), Error);
    CHECK_THROWS_AS(h_eigenvalue(0, {0, 0}, params), Error);
}

TEST_CASE("state parity counts odd occupation") {
    const FockBasis basis({1, 1, 2});
    CHECK(basis.state_parity(basis.index_of({0, 0})) == 0);
    CHECK(basis.state_parity(basis.index_of({0, 1})) == 1);
    CHECK(basis.state_parity(basis.index_of({2, 0})) == 0);
}

TEST_CASE("json export") {
    const FockBasis basis({1, 1, 2});
    const auto j = nlohmann::json::parse(basis_to_json(basis));
    CHECK(j["params"]["n"] == 1);
    CHECK(j["params"]["m"] == 1);
    CHECK(j["params"]["p"] == 2);
    CHECK(j["states"].size() == 5);
    CHECK(j["states"][4] == nlohmann::json::array({2, 0}));
}
