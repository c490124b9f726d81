#ifndef HOROFANO_SOLITON_HPP
#define HOROFANO_SOLITON_HPP

#include "horofano/dh_integral.hpp"
#include "horofano/problem.hpp"

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace horofano {

/// G(xi) = int_{Delta+} e^{-2 <p - kappa, xi>} dmu_DH and its derivatives.
///
/// G is smooth and strictly convex; it is coercive exactly when kappa is interior to Delta+.
/// Its gradient is -2 F(xi) where F is the Futaki vector, and its Hessian is 4 times the
/// second moment of p - kappa under the same weight.
class SolitonFunctional {
public:
    explicit SolitonFunctional(const HorosphericalProblem& hp, QuadratureOptions quad = {});

    double value(const Eigen::VectorXd& xi) const;
    Eigen::VectorXd futaki(const Eigen::VectorXd& xi) const;
    Eigen::VectorXd gradient(const Eigen::VectorXd& xi) const;
    Eigen::MatrixXd hessian(const Eigen::VectorXd& xi) const;
    /// All three from one quadrature.
    WeightedMoments moments(const Eigen::VectorXd& xi) const;

    double dh_volume() const { return volume_; }
    int dim() const { return static_cast<int>(kappa_.size()); }

private:
    DHIntegrator integrator_;
    Eigen::VectorXd kappa_;
    double volume_;
};

/// F(zeta) = int <p - kappa, zeta> e^{-2 <p - kappa, xi>} dmu_DH, one component per a1 basis vector.
Eigen::VectorXd futaki_vector(const HorosphericalProblem& hp, const Eigen::VectorXd& xi, const QuadratureOptions& quad = {});

struct SolitonOptions {
    /// Stop when |F(xi)| <= tol * V.
    double tol = 1e-10;
    int max_iterations = 100;
    double armijo_c = 1e-4;
    QuadratureOptions quad;
};

struct SolitonSolution {
    Eigen::VectorXd xi;
    double residual_norm = 0;
    int iterations = 0;
    double hessian_min_eig = 0;
};

/// Damped Newton on G from xi = 0 with Armijo backtracking (halving).
/// Throws SolverError with the iterate history when max_iterations is exhausted.
SolitonSolution solve_soliton(const HorosphericalProblem& hp, const SolitonOptions& options = {});

struct KahlerEinsteinResult {
    bool is_kahler_einstein = false;
    /// Bar_DH(Delta+) - kappa, exact.
    RVec gap;
};

/// Exact test Bar_DH(Delta+) == kappa.
KahlerEinsteinResult kahler_einstein_test(const HorosphericalProblem& hp);

}  // namespace horofano

#endif
