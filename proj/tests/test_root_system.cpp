#include "horofano/root_system.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>

using namespace horofano;

namespace {

// Cartan matrix C[i][j] = <alpha_i, alpha_j^vee> from the Dynkin diagram (Bourbaki numbering).
std::vector<std::vector<int>> cartan(char family, int n) {
    std::vector<std::vector<int>> c(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), 0));
    auto link = [&](int i, int j) {
        c[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = -1;
        c[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = -1;
    };
    for (int i = 0; i < n; ++i) c[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 2;
    if (family == 'D') {
        for (int i = 0; i + 2 < n; ++i) link(i, i + 1);
        if (n >= 3) link(n - 3, n - 1);
        return c;
    }
    for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
    if (n >= 2 && family == 'B') c[static_cast<std::size_t>(n - 2)][static_cast<std::size_t>(n - 1)] = -2;
    if (n >= 2 && family == 'C') c[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(n - 2)] = -2;
    return c;
}

// Positive roots in simple-root coordinates by root strings: beta + alpha_i is a root iff
// q = p - <beta, alpha_i^vee> > 0, where p is the length of the alpha_i-string below beta.
std::set<std::vector<int>> roots_from_cartan(const std::vector<std::vector<int>>& c) {
    const std::size_t n = c.size();
    std::set<std::vector<int>> roots;
    std::vector<std::vector<int>> layer;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<int> r(n, 0);
        r[i] = 1;
        layer.push_back(r);
        roots.insert(r);
    }
    while (!layer.empty()) {
        std::vector<std::vector<int>> next;
        for (const auto& beta : layer) {
            for (std::size_t i = 0; i < n; ++i) {
                int p = 0;
                for (auto down = beta; down[i] > 0;) {
                    --down[i];
                    if (!roots.count(down)) break;
                    ++p;
                }
                int pairing = 0;
                for (std::size_t j = 0; j < n; ++j) pairing += beta[j] * c[j][i];
                if (p - pairing > 0) {
                    auto up = beta;
                    ++up[i];
                    if (roots.insert(up).second) next.push_back(up);
                }
            }
        }
        layer = std::move(next);
    }
    return roots;
}

}  // namespace

TEST_SUITE("root_system") {

TEST_CASE("positive roots match the Cartan-matrix enumeration") {
    const std::vector<std::pair<char, int>> cases{{'A', 1}, {'A', 2}, {'A', 3}, {'A', 5}, {'B', 2}, {'B', 3}, {'B', 4},
                                                  {'C', 2}, {'C', 3}, {'C', 4}, {'D', 2}, {'D', 4}, {'D', 5}};
    for (auto [family, n] : cases) {
        CAPTURE(family);
        CAPTURE(n);
        const RootDatum rd = build_root_system({{family, n}}, 0);
        const auto c = cartan(family, n);
        const auto oracle = roots_from_cartan(c);
        std::set<std::vector<int>> got(rd.simple_coefficients.begin(), rd.simple_coefficients.end());
        CHECK(got == oracle);
        CHECK(rd.positive_roots.size() == oracle.size());
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                CHECK(cartan_integer(rd, rd.simple_roots[static_cast<std::size_t>(i)],
                                     rd.simple_roots[static_cast<std::size_t>(j)]) ==
                      c[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
    }
}

TEST_CASE("root counts") {
    CHECK(build_root_system({{'A', 4}}, 0).positive_roots.size() == 10);
    CHECK(build_root_system({{'B', 3}}, 0).positive_roots.size() == 9);
    CHECK(build_root_system({{'C', 3}}, 0).positive_roots.size() == 9);
    CHECK(build_root_system({{'D', 4}}, 0).positive_roots.size() == 12);
}

TEST_CASE("products and torus") {
    const RootDatum rd = build_root_system({{'A', 1}, {'B', 2}}, 2);
    CHECK(rd.dim == 2 + 2 + 2);
    CHECK(rd.simple_roots.size() == 3);
    CHECK(rd.positive_roots.size() == 1 + 4);
    for (const auto& a : rd.positive_roots) {
        CHECK(a[4] == 0);
        CHECK(a[5] == 0);
    }
}

TEST_CASE("rejects bad input") {
    CHECK_THROWS_AS(build_root_system({{'E', 6}}, 0), std::invalid_argument);
    CHECK_THROWS_AS(build_root_system({{'A', 0}}, 0), std::invalid_argument);
    CHECK_THROWS_AS(build_root_system({{'D', 1}}, 0), std::invalid_argument);
    CHECK_THROWS_AS(build_root_system({}, 0), std::invalid_argument);
    const RootDatum rd = build_root_system({{'A', 2}}, 0);
    CHECK_THROWS_AS(parabolic_data(rd, {2}), std::invalid_argument);
    CHECK_THROWS_AS(coroot(rd, {Rational(1), Rational(1), Rational(0)}), std::invalid_argument);
}

TEST_CASE("Borel of A2: kappa = 2 rho") {
    const RootDatum rd = build_root_system({{'A', 2}}, 0);
    const ParabolicDatum pd = parabolic_data(rd, {});
    CHECK(pd.phi_q_plus.size() == 3);
    CHECK(pd.kappa == RVec{Rational(2), Rational(0), Rational(-2)});
    // <2 rho, alpha^vee> = 2 ht(alpha)
    for (std::size_t k = 0; k < pd.phi_q_plus.size(); ++k) {
        int height = 0;
        const auto it = std::find(rd.positive_roots.begin(), rd.positive_roots.end(), pd.phi_q_plus[k]);
        for (int c : rd.simple_coefficients[static_cast<std::size_t>(it - rd.positive_roots.begin())]) height += c;
        CHECK(pd.a_alpha[k] == 2 * height);
    }
}

TEST_CASE("kappa is orthogonal to the Levi and positive on the rest") {
    const std::vector<std::pair<std::vector<RootFactor>, std::vector<int>>> cases{
        {{{'A', 3}}, {0}}, {{{'A', 3}}, {0, 2}}, {{{'B', 3}}, {1}}, {{{'C', 3}}, {0, 1}},
        {{{'D', 4}}, {1}}, {{{'A', 2}, {'B', 2}}, {0, 3}}};
    for (const auto& [factors, levi] : cases) {
        const RootDatum rd = build_root_system(factors, 1);
        const ParabolicDatum pd = parabolic_data(rd, levi);
        for (std::size_t i = 0; i < rd.simple_roots.size(); ++i) {
            const Rational pairing = rd.pairing(pd.kappa, coroot(rd, rd.simple_roots[i]));
            const bool levi_root = std::find(levi.begin(), levi.end(), static_cast<int>(i)) != levi.end();
            if (levi_root)
                CHECK(pairing == 0);
            else
                CHECK(pairing > 0);
        }
        for (const auto& a : pd.a_alpha) CHECK(a > 0);
    }
}

TEST_CASE("full Levi leaves no roots") {
    const RootDatum rd = build_root_system({{'A', 2}}, 1);
    const ParabolicDatum pd = parabolic_data(rd, {0, 1});
    CHECK(pd.phi_q_plus.empty());
    CHECK(is_zero(pd.kappa));
}

}
