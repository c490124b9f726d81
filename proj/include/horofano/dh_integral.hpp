#ifndef HOROFANO_DH_INTEGRAL_HPP
#define HOROFANO_DH_INTEGRAL_HPP

#include "horofano/polytope.hpp"
#include "horofano/rational.hpp"
#include "horofano/root_system.hpp"

#include <Eigen/Dense>

#include <vector>

namespace horofano {

/// p -> <coeffs, p> + constant
struct AffineForm {
    RVec coeffs;
    Rational constant = 0;

    Rational operator()(const RVec& p) const { return dot(coeffs, p) + constant; }
};

/// Duistermaat-Heckman density: the product of its forms (empty product = Lebesgue measure).
struct DHDensity {
    std::vector<AffineForm> forms;

    std::size_t degree() const { return forms.size(); }
    /// Factors p -> (beta, p) for beta in phi_q_plus, pulled back to a1 coordinates.
    static DHDensity from_roots(const RootDatum& rd, const ParabolicDatum& pd, const A1Embedding& embedding);
    /// Every factor is nonnegative on every vertex of p.
    bool nonnegative_on(const Polytope& p) const;
    /// The density in the coordinates y = T p (forms composed with T^{-1}).
    DHDensity transformed(const RMat& t) const;
};

/// Exact integral over a simplex of a product of affine forms. Each form is linear in the
/// barycentric coordinates; the product is expanded into monomials and integrated with
/// int lambda^a = d! vol a_0! ... a_d! / (d + |a|)!.
Rational integrate_poly_simplex(const Simplex& s, const std::vector<AffineForm>& factors);

/// Exact integral of p^exponents over a simplex.
Rational integrate_monomial_simplex(const Simplex& s, const std::vector<int>& exponents);

/// Exact integral of a product of affine forms over a polytope via its triangulation.
Rational integrate_poly(const Polytope& p, const std::vector<AffineForm>& factors);

/// V = int_P prod (alpha, p) dp. Throws ValidationError if the density is negative somewhere
/// on P or V = 0.
Rational dh_volume(const Polytope& p, const DHDensity& density);

/// (1/V) int_P p prod (alpha, p) dp
RVec dh_barycenter(const Polytope& p, const DHDensity& density);

struct QuadratureOptions {
    /// Gauss-Legendre nodes per axis; 0 selects density degree + 20.
    int order = 0;
    double rel_tol = 1e-12;
    /// Number of +4 refinements attempted after the first Richardson comparison.
    int max_refinements = 4;
    /// Integration workers; 0 reads HOROFANO_THREADS, falling back to the hardware count.
    unsigned workers = 0;
};

/// Moments of the weight e^{<l, p - c>} prod(alpha, p) about the center c.
struct WeightedMoments {
    double i0 = 0;
    Eigen::VectorXd i1;
    Eigen::MatrixXd i2;
    double rel_error = 0;
    int order = 0;
};

/// Gauss-Legendre nodes and weights on [0, 1].
void gauss_legendre_unit(int n, std::vector<double>& nodes, std::vector<double>& weights);

/// Worker count from HOROFANO_THREADS (>= 1), or the hardware concurrency when unset.
unsigned integration_workers();

/// Holds a triangulated polytope and density so repeated quadratures (as in Newton loops)
/// reuse the triangulation. Reductions run in triangulation order with compensated
/// summation, so results do not depend on the worker count.
class DHIntegrator {
public:
    DHIntegrator(const Polytope& p, DHDensity density, QuadratureOptions options = {});

    const Polytope& polytope() const { return polytope_; }
    const DHDensity& density() const { return density_; }
    const QuadratureOptions& options() const { return options_; }

    Rational volume() const;
    RVec barycenter() const;

    /// Tensor Gauss-Legendre on collapsed coordinates at orders m and m+4 (refined while the
    /// estimated relative error exceeds rel_tol). Throws SolverError carrying the estimate.
    WeightedMoments moments(const Eigen::VectorXd& exponent, const Eigen::VectorXd& center) const;
    WeightedMoments moments(const Eigen::VectorXd& exponent) const;

    /// Single fixed-order evaluation with no error control.
    WeightedMoments moments_at_order(const Eigen::VectorXd& exponent, const Eigen::VectorXd& center, int order) const;

private:
    Polytope polytope_;
    DHDensity density_;
    QuadratureOptions options_;
    std::vector<Simplex> simplices_;
    std::vector<Eigen::MatrixXd> simplex_vertices_;  // (dim+1) x dim
    std::vector<double> simplex_volumes_;
    std::vector<Eigen::VectorXd> form_coeffs_;
    std::vector<double> form_constants_;
    double radius_ = 0;
};

/// Free-function form of DHIntegrator::moments with center 0.
WeightedMoments weighted_moments(const Polytope& p, const DHDensity& density, const Eigen::VectorXd& exponent,
                                 const QuadratureOptions& options = {});

}  // namespace horofano

#endif
