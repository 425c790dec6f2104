#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "homtop/snf.hpp"

using namespace homtop;

namespace {

IntMatrix make(int rows, int cols, std::initializer_list<long long> vals) {
    IntMatrix m(rows, cols);
    auto it = vals.begin();
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m.at(i, j) = *it++;
    return m;
}

// cofactor expansion, exact
bigint det(const std::vector<std::vector<bigint>>& a) {
    const std::size_t n = a.size();
    if (n == 0) return 1;
    if (n == 1) return a[0][0];
    bigint sum = 0;
    for (std::size_t c = 0; c < n; ++c) {
        std::vector<std::vector<bigint>> minor;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<bigint> row;
            for (std::size_t j = 0; j < n; ++j)
                if (j != c) row.push_back(a[i][j]);
            minor.push_back(std::move(row));
        }
        bigint term = a[0][c] * det(minor);
        sum += (c % 2 == 0) ? term : -term;
    }
    return sum;
}

}  // namespace

TEST_CASE("smith normal form of the standard 2x2 example") {
    auto res = smith_normal_form(make(2, 2, {2, 4, 6, 8}));
    REQUIRE(res.rank == 2);
    REQUIRE(res.factors == std::vector<bigint>{2, 4});
    REQUIRE_FALSE(res.promoted);
}

TEST_CASE("identity and zero matrices") {
    auto id = smith_normal_form(make(2, 2, {1, 0, 0, 1}));
    REQUIRE(id.factors == std::vector<bigint>{1, 1});
    auto zero = smith_normal_form(IntMatrix(3, 2));
    REQUIRE(zero.rank == 0);
    REQUIRE(zero.factors.empty());
    auto empty = smith_normal_form(IntMatrix(0, 0));
    REQUIRE(empty.rank == 0);
}

TEST_CASE("diagonal matrices normalize to the divisibility chain") {
    auto res = smith_normal_form(make(2, 2, {4, 0, 0, 6}));
    REQUIRE(res.factors == std::vector<bigint>{2, 12});
}

TEST_CASE("rank deficiency is reflected by the factor count") {
    auto res = smith_normal_form(make(2, 2, {1, 2, 2, 4}));
    REQUIRE(res.rank == 1);
    REQUIRE(res.factors == std::vector<bigint>{1});
    auto rect = smith_normal_form(make(2, 3, {1, 0, 0, 0, 0, 0}));
    REQUIRE(rect.rank == 1);
}

TEST_CASE("negative entries give positive factors") {
    auto res = smith_normal_form(make(2, 2, {-2, 0, 0, -3}));
    REQUIRE(res.factors == std::vector<bigint>{1, 6});
}

TEST_CASE("int64 overflow promotes to arbitrary precision") {
    const long long big = 1LL << 40;
    auto res = smith_normal_form(make(2, 2, {big, 1, 1, big}));
    REQUIRE(res.promoted);
    REQUIRE(res.rank == 2);
    bigint expect = (bigint(1) << 80) - 1;
    REQUIRE(res.factors == std::vector<bigint>{1, expect});
}

TEST_CASE("divisibility chain and determinant consistency on random matrices") {
    std::mt19937_64 rng(20260816);
    std::uniform_int_distribution<int> dim(1, 6), entry(-9, 9);
    for (int rep = 0; rep < 100; ++rep) {
        const int n = dim(rng);
        IntMatrix m(n, n);
        std::vector<std::vector<bigint>> copy(n, std::vector<bigint>(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                m.at(i, j) = entry(rng);
                copy[i][j] = m.at(i, j);
            }
        auto res = smith_normal_form(m);
        for (std::size_t i = 0; i + 1 < res.factors.size(); ++i) {
            REQUIRE(res.factors[i] > 0);
            REQUIRE(res.factors[i + 1] % res.factors[i] == 0);
        }
        bigint d = det(copy);
        if (d == 0) {
            REQUIRE(res.rank < n);
        } else {
            REQUIRE(res.rank == n);
            bigint prod = 1;
            for (const auto& f : res.factors) prod *= f;
            REQUIRE(prod == boost::multiprecision::abs(d));
        }
    }
}
