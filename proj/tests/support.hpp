#ifndef HOROFANO_TESTS_SUPPORT_HPP
#define HOROFANO_TESTS_SUPPORT_HPP

#include "horofano/dh_integral.hpp"
#include "horofano/polytope.hpp"
#include "horofano/problem.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <random>
#include <string>
#include <vector>

namespace testing {

using horofano::Rational;
using horofano::RMat;
using horofano::RVec;

inline Rational q(long long num, long long den = 1) { return Rational(num, den); }

inline horofano::Polytope interval(long long lo, long long hi) {
    return horofano::Polytope::from_vertices({{q(lo)}, {q(hi)}});
}

inline horofano::Polytope box(const std::vector<std::pair<Rational, Rational>>& sides) {
    std::vector<RVec> pts{RVec{}};
    for (const auto& [lo, hi] : sides) {
        std::vector<RVec> next;
        for (const auto& p : pts) {
            RVec a = p, b = p;
            a.push_back(lo);
            b.push_back(hi);
            next.push_back(a);
            next.push_back(b);
        }
        pts = std::move(next);
    }
    return horofano::Polytope::from_vertices(pts);
}

inline horofano::HorosphericalProblem toric(long long lo, long long hi) {
    return horofano::make_problem(interval(lo, hi), {q(0)});
}

inline std::string fixture(const std::string& name) { return std::string(HOROFANO_FIXTURE_DIR) + "/" + name; }

/// Random rational with denominator den and |value| <= bound.
inline Rational random_rational(std::mt19937_64& rng, long long bound, long long den) {
    std::uniform_int_distribution<long long> d(-bound * den, bound * den);
    return Rational(d(rng), den);
}

/// Full-dimensional random polytope containing 0 in its interior: hull of a cross polytope
/// scaled by 1/2 and random points.
inline horofano::Polytope random_polytope(std::mt19937_64& rng, int dim, int extra) {
    std::vector<RVec> pts;
    for (int i = 0; i < dim; ++i) {
        RVec e(static_cast<std::size_t>(dim), q(0));
        e[static_cast<std::size_t>(i)] = q(1, 2);
        pts.push_back(e);
        e[static_cast<std::size_t>(i)] = q(-1, 2);
        pts.push_back(e);
    }
    for (int k = 0; k < extra; ++k) {
        RVec p;
        for (int i = 0; i < dim; ++i) p.push_back(random_rational(rng, 2, 3));
        pts.push_back(p);
    }
    return horofano::Polytope::from_vertices(pts);
}

/// Affine form with random coefficients that is positive on P.
inline horofano::AffineForm positive_form(std::mt19937_64& rng, const horofano::Polytope& p) {
    horofano::AffineForm f;
    for (int i = 0; i < p.dim(); ++i) f.coeffs.push_back(random_rational(rng, 2, 2));
    Rational lowest = horofano::dot(f.coeffs, p.vertices().front());
    for (const auto& v : p.vertices()) lowest = std::min(lowest, horofano::dot(f.coeffs, v));
    std::uniform_int_distribution<int> extra(1, 4);
    f.constant = -lowest + Rational(extra(rng), 2);
    return f;
}

/// Random unimodular integer matrix (product of elementary moves and sign flips).
inline RMat random_unimodular(std::mt19937_64& rng, std::size_t dim) {
    RMat t = horofano::identity(dim);
    std::uniform_int_distribution<std::size_t> pick(0, dim - 1);
    std::uniform_int_distribution<int> mult(-2, 2);
    for (int k = 0; k < 6; ++k) {
        const std::size_t i = pick(rng), j = pick(rng);
        if (i == j) continue;
        const int m = mult(rng);
        for (std::size_t c = 0; c < dim; ++c) t[i][c] += m * t[j][c];
    }
    if (mult(rng) < 0)
        for (auto& x : t[0]) x = -x;
    return t;
}

inline Eigen::VectorXd to_eigen(const RVec& v) {
    Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Eigen::Index>(i)) = horofano::to_double(v[i]);
    return out;
}

}  // namespace testing

#endif
