#include "horofano/root_system.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace horofano {

namespace {

struct FactorRoots {
    int dim = 0;
    std::vector<RVec> simple;
    std::vector<RVec> positive;
};

RVec e(int n, int i) { return unit(static_cast<std::size_t>(n), static_cast<std::size_t>(i)); }

RVec e_minus(int n, int i, int j) { return sub(e(n, i), e(n, j)); }
RVec e_plus(int n, int i, int j) { return add(e(n, i), e(n, j)); }

FactorRoots classical_roots(const RootFactor& f) {
    const int n = f.rank;
    FactorRoots out;
    switch (f.family) {
        case 'A': {
            const int m = n + 1;
            out.dim = m;
            for (int i = 0; i < n; ++i) out.simple.push_back(e_minus(m, i, i + 1));
            for (int i = 0; i < m; ++i)
                for (int j = i + 1; j < m; ++j) out.positive.push_back(e_minus(m, i, j));
            break;
        }
        case 'B':
        case 'C': {
            out.dim = n;
            const Rational long_factor = f.family == 'B' ? 1 : 2;
            for (int i = 0; i + 1 < n; ++i) out.simple.push_back(e_minus(n, i, i + 1));
            out.simple.push_back(scale(long_factor, e(n, n - 1)));
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) {
                    out.positive.push_back(e_minus(n, i, j));
                    out.positive.push_back(e_plus(n, i, j));
                }
            for (int i = 0; i < n; ++i) out.positive.push_back(scale(long_factor, e(n, i)));
            break;
        }
        case 'D': {
            if (n < 2) throw std::invalid_argument("root system D requires rank >= 2");
            out.dim = n;
            for (int i = 0; i + 1 < n; ++i) out.simple.push_back(e_minus(n, i, i + 1));
            out.simple.push_back(e_plus(n, n - 2, n - 1));
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) {
                    out.positive.push_back(e_minus(n, i, j));
                    out.positive.push_back(e_plus(n, i, j));
                }
            break;
        }
        default:
            throw std::invalid_argument(std::string("unknown root system family '") + f.family + "'");
    }
    return out;
}

RVec embed(const RVec& v, int offset, int dim) {
    RVec out = zeros(static_cast<std::size_t>(dim));
    for (std::size_t i = 0; i < v.size(); ++i) out[static_cast<std::size_t>(offset) + i] = v[i];
    return out;
}

}  // namespace

RootDatum build_root_system(const std::vector<RootFactor>& factors, int torus_rank) {
    if (torus_rank < 0) throw std::invalid_argument("torus rank must be >= 0");
    RootDatum rd;
    rd.factors = factors;
    rd.torus_rank = torus_rank;

    std::vector<FactorRoots> blocks;
    for (const auto& f : factors) {
        if (f.rank < 1) throw std::invalid_argument("root system rank must be >= 1");
        blocks.push_back(classical_roots(f));
        rd.dim += blocks.back().dim;
    }
    rd.dim += torus_rank;
    if (rd.dim == 0) throw std::invalid_argument("empty root datum: no factors and torus rank 0");

    int offset = 0;
    for (const auto& b : blocks) {
        for (const auto& s : b.simple) rd.simple_roots.push_back(embed(s, offset, rd.dim));
        for (const auto& p : b.positive) rd.positive_roots.push_back(embed(p, offset, rd.dim));
        offset += b.dim;
    }
    rd.gram = identity(static_cast<std::size_t>(rd.dim));

    // Express each positive root in the simple-root basis.
    RMat simple_columns = transpose(rd.simple_roots);
    for (const auto& alpha : rd.positive_roots) {
        RVec c;
        if (!solve(simple_columns, alpha, c)) throw std::logic_error("positive root outside the root span");
        std::vector<int> coeffs;
        for (const auto& x : c) {
            if (!is_integer(x) || x < 0) throw std::logic_error("positive root is not a nonnegative integer combination");
            coeffs.push_back(static_cast<int>(numerator(x)));
        }
        rd.simple_coefficients.push_back(std::move(coeffs));
    }
    return rd;
}

Rational cartan_integer(const RootDatum& rd, const RVec& alpha, const RVec& beta) {
    return 2 * rd.pairing(alpha, beta) / rd.pairing(beta, beta);
}

RVec coroot(const RootDatum& rd, const RVec& alpha) {
    const bool is_root = std::any_of(rd.positive_roots.begin(), rd.positive_roots.end(), [&](const RVec& r) {
        return r == alpha || r == scale(-1, alpha);
    });
    if (!is_root) throw std::invalid_argument("coroot: vector is not a root of the root datum");
    return scale(2 / rd.pairing(alpha, alpha), alpha);
}

ParabolicDatum parabolic_data(const RootDatum& rd, const std::vector<int>& levi_subset) {
    const int n_simple = static_cast<int>(rd.simple_roots.size());
    std::vector<bool> in_levi(static_cast<std::size_t>(n_simple), false);
    for (int i : levi_subset) {
        if (i < 0 || i >= n_simple) throw std::invalid_argument("Levi index " + std::to_string(i) + " out of range");
        in_levi[static_cast<std::size_t>(i)] = true;
    }

    ParabolicDatum pd;
    pd.levi_subset = levi_subset;
    std::sort(pd.levi_subset.begin(), pd.levi_subset.end());
    pd.levi_subset.erase(std::unique(pd.levi_subset.begin(), pd.levi_subset.end()), pd.levi_subset.end());
    pd.kappa = zeros(static_cast<std::size_t>(rd.dim));

    for (std::size_t k = 0; k < rd.positive_roots.size(); ++k) {
        const auto& c = rd.simple_coefficients[k];
        bool in_levi_span = true;
        for (int i = 0; i < n_simple; ++i)
            if (c[static_cast<std::size_t>(i)] != 0 && !in_levi[static_cast<std::size_t>(i)]) in_levi_span = false;
        if (in_levi_span) continue;
        pd.phi_q_plus.push_back(rd.positive_roots[k]);
        pd.kappa = add(pd.kappa, rd.positive_roots[k]);
    }
    for (const auto& alpha : pd.phi_q_plus) {
        Rational a = rd.pairing(pd.kappa, coroot(rd, alpha));
        if (!is_integer(a) || a < 1) throw std::logic_error("a_alpha is not a positive integer");
        pd.a_alpha.push_back(numerator(a));
    }
    return pd;
}

}  // namespace horofano
