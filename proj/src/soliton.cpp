#include "horofano/soliton.hpp"

#include "horofano/errors.hpp"

#include <cmath>
#include <sstream>

namespace horofano {

namespace {

Eigen::VectorXd to_eigen(const RVec& v) {
    Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Eigen::Index>(i)) = to_double(v[i]);
    return out;
}

}  // namespace

SolitonFunctional::SolitonFunctional(const HorosphericalProblem& hp, QuadratureOptions quad)
    : integrator_(hp.moment, hp.density, quad),
      kappa_(to_eigen(hp.kappa)),
      volume_(to_double(integrator_.volume())) {}

WeightedMoments SolitonFunctional::moments(const Eigen::VectorXd& xi) const {
    if (xi.size() != kappa_.size()) throw std::invalid_argument("xi has wrong dimension");
    return integrator_.moments(-2.0 * xi, kappa_);
}

double SolitonFunctional::value(const Eigen::VectorXd& xi) const { return moments(xi).i0; }

Eigen::VectorXd SolitonFunctional::futaki(const Eigen::VectorXd& xi) const { return moments(xi).i1; }

Eigen::VectorXd SolitonFunctional::gradient(const Eigen::VectorXd& xi) const { return -2.0 * futaki(xi); }

Eigen::MatrixXd SolitonFunctional::hessian(const Eigen::VectorXd& xi) const { return 4.0 * moments(xi).i2; }

Eigen::VectorXd futaki_vector(const HorosphericalProblem& hp, const Eigen::VectorXd& xi, const QuadratureOptions& quad) {
    return SolitonFunctional(hp, quad).futaki(xi);
}

SolitonSolution solve_soliton(const HorosphericalProblem& hp, const SolitonOptions& options) {
    const SolitonFunctional g(hp, options.quad);
    const double target = options.tol * g.dh_volume();

    Eigen::VectorXd xi = Eigen::VectorXd::Zero(g.dim());
    WeightedMoments m = g.moments(xi);
    std::ostringstream history;

    for (int iter = 0; iter <= options.max_iterations; ++iter) {
        const Eigen::VectorXd futaki = m.i1;
        const Eigen::MatrixXd hess = 4.0 * m.i2;
        history << "iter " << iter << ": |F| = " << futaki.norm() << ", G = " << m.i0 << "\n";
        if (futaki.norm() <= target) {
            SolitonSolution sol;
            sol.xi = xi;
            sol.residual_norm = futaki.norm();
            sol.iterations = iter;
            sol.hessian_min_eig = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(hess).eigenvalues().minCoeff();
            return sol;
        }
        if (iter == options.max_iterations) break;

        const Eigen::VectorXd grad = -2.0 * futaki;
        Eigen::LLT<Eigen::MatrixXd> llt(hess);
        if (llt.info() != Eigen::Success) throw SolverError("soliton: Hessian is not positive definite\n" + history.str());
        const Eigen::VectorXd step = -llt.solve(grad);
        const double slope = grad.dot(step);

        double alpha = 1.0;
        bool accepted = false;
        for (int k = 0; k < 60; ++k, alpha *= 0.5) {
            const Eigen::VectorXd trial = xi + alpha * step;
            WeightedMoments mt = g.moments(trial);
            if (std::isfinite(mt.i0) && mt.i0 <= m.i0 + options.armijo_c * alpha * slope) {
                xi = trial;
                m = std::move(mt);
                accepted = true;
                break;
            }
        }
        if (!accepted) {
            // Near the minimum G stops decreasing in floating point; a full Newton step is still
            // the right move when it reduces the Futaki residual.
            const Eigen::VectorXd trial = xi + step;
            WeightedMoments mt = g.moments(trial);
            if (mt.i1.norm() < futaki.norm()) {
                xi = trial;
                m = std::move(mt);
            } else {
                throw SolverError("soliton: line search failed (kappa may not be interior to Delta+)\n" + history.str());
            }
        }
    }
    throw SolverError("soliton: no convergence within " + std::to_string(options.max_iterations) +
                      " iterations\n" + history.str());
}

KahlerEinsteinResult kahler_einstein_test(const HorosphericalProblem& hp) {
    KahlerEinsteinResult r;
    r.gap = sub(dh_barycenter(hp.moment, hp.density), hp.kappa);
    r.is_kahler_einstein = is_zero(r.gap);
    return r;
}

}  // namespace horofano
