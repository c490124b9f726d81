#ifndef HOROFANO_ROOT_SYSTEM_HPP
#define HOROFANO_ROOT_SYSTEM_HPP

#include "horofano/rational.hpp"

#include <vector>

namespace horofano {

/// One simple factor of a reductive root datum: family letter A, B, C or D and its rank.
struct RootFactor {
    char family = 'A';
    int rank = 1;
};

/// Classical root system realized in orthogonal coordinates.
///
/// A_n lives in R^{n+1} (roots e_i - e_j), B_n/C_n/D_n in R^n; torus factors append
/// coordinates carrying no roots. The scalar product is the identity Gram matrix in these
/// coordinates, which is Weyl-invariant for every realization above. Characters and
/// one-parameter subgroups share this coordinate space through the Gram matrix.
struct RootDatum {
    std::vector<RootFactor> factors;
    int torus_rank = 0;
    int dim = 0;
    std::vector<RVec> simple_roots;
    std::vector<RVec> positive_roots;
    /// positive_roots[k] = sum_i simple_coefficients[k][i] * simple_roots[i]
    std::vector<std::vector<int>> simple_coefficients;
    RMat gram;

    Rational pairing(const RVec& x, const RVec& y) const { return bilinear(gram, x, y); }
};

/// Levi/parabolic combinatorics. phi_q_plus are the positive roots outside the Levi
/// subset, kappa their sum (= -2 rho_P), a_alpha[k] = <kappa, coroot(phi_q_plus[k])>.
struct ParabolicDatum {
    std::vector<int> levi_subset;  // 0-based simple-root indices
    std::vector<RVec> phi_q_plus;
    RVec kappa;
    std::vector<Integer> a_alpha;
};

RootDatum build_root_system(const std::vector<RootFactor>& factors, int torus_rank);

/// Throws std::invalid_argument when an index is out of range.
ParabolicDatum parabolic_data(const RootDatum& rd, const std::vector<int>& levi_subset);

/// 2 alpha / (alpha, alpha). Throws std::invalid_argument if alpha is not a root (of either sign).
RVec coroot(const RootDatum& rd, const RVec& alpha);

/// 2 (alpha, beta) / (beta, beta)
Rational cartan_integer(const RootDatum& rd, const RVec& alpha, const RVec& beta);

}  // namespace horofano

#endif
