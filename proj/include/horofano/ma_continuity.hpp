#ifndef HOROFANO_MA_CONTINUITY_HPP
#define HOROFANO_MA_CONTINUITY_HPP

#include "horofano/polytope.hpp"
#include "horofano/problem.hpp"

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace horofano {

/// u0(x) = log sum_{v in vertices(2 Delta)} e^{<v, x>}.
///
/// Smooth and strictly convex with gradient image Int(2 Delta) and 0 <= u0 - v_{2 Delta} <= log #vertices.
class ReferencePotential {
public:
    explicit ReferencePotential(std::vector<Eigen::VectorXd> vertices);

    double value(const Eigen::VectorXd& x) const;
    Eigen::VectorXd gradient(const Eigen::VectorXd& x) const;
    Eigen::MatrixXd hessian(const Eigen::VectorXd& x) const;

    double value(double x) const;
    double derivative(double x) const;
    double second_derivative(double x) const;

    /// max over vertices of <v, x>
    double support(const Eigen::VectorXd& x) const;
    const std::vector<Eigen::VectorXd>& vertices() const { return vertices_; }
    int dim() const { return static_cast<int>(vertices_.front().size()); }

private:
    // Softmax weights of the vertices at x, and the log-sum-exp value.
    Eigen::VectorXd weights(const Eigen::VectorXd& x, double& lse) const;

    std::vector<Eigen::VectorXd> vertices_;
};

/// Requires 0 in Int(2 Delta) (ValidationError otherwise). Checks the gradient-image and
/// boundedness properties on a test grid and throws std::logic_error if they fail.
ReferencePotential reference_potential(const Polytope& two_delta);

/// 2 Delta = 2 (kappa - Delta+), the gradient image of every potential in the continuity path.
Polytope two_delta(const HorosphericalProblem& hp);

struct ContinuityOptions {
    int grid = 2001;
    /// Half-width L of the truncation box; 0 chooses L so the tail mass of e^{-v_{2 Delta}} is below 1e-8 V.
    double box = 0;
    double t0 = 0.1;
    double initial_step = 0.05;
    double max_step = 0.1;
    /// Step underflow threshold; the sweep declares divergence below it.
    double min_step = 1e-4;
    /// Divergence is declared when |x_t| exceeds window * L ...
    double window = 0.8;
    /// ... or when the mass of e^{-w_t} misses its target by this relative amount, which happens
    /// once the escaping solution reaches the truncation boundary.
    double mass_tol = 1e-3;
    /// Newton stops when max_i |F_i| / h <= newton_tol.
    double newton_tol = 1e-10;
    /// A Newton stall (line search or iteration limit) below this residual counts as converged:
    /// the roundoff floor of the discrete fluxes grows with max |u| / h^2.
    double stall_tol = 1e-8;
    int max_newton = 40;
};

/// One converged solution of the discretized equation at parameter t.
struct ContinuityState {
    double t = 0;
    std::vector<double> x;
    std::vector<double> u;
    std::vector<double> u0;
    /// min and argmin of w_t = t u + (1 - t) u0 (argmin refined by parabolic interpolation)
    double m_t = 0;
    double x_t = 0;
    /// int e^{-w_t}: Simpson's rule on the box plus exponential tails from the end slopes
    double mass = 0;
    /// int_{Delta+} e^{-2 <p - kappa, xi>} dmu_DH (= V when xi = 0)
    double mass_target = 0;
    double residual_norm = 0;
    double sup_psi = 0;
    /// int w_t' e^{-w_t}, including the tails
    double centering = 0;
    double max_grad_w = 0;
    /// min distance of the discrete gradient of u to the boundary of 2 Delta
    double grad_margin = 0;
    int newton_iterations = 0;
};

/// Reduced real Monge-Ampere operator for r = 1 on a uniform grid of [-L, L].
///
/// The equation  u'' prod_{beta} (beta, kappa - u'/2) / 2 = e^{-w_t - xi u'}  is solved in the
/// conservative form  (Psi(u'))' = e^{-w_t}  with Psi' (q) = prod (beta, kappa - q/2) e^{xi q} / 2,
/// Psi(a) = 0 at the left end of 2 Delta = [a, b]. Boundary rows impose the fluxes
/// Psi(a) + tail and Psi(b) - tail, which pins the gradient image of u to 2 Delta; the
/// exponential tails beyond the box are modeled from the asymptotic slopes a and b.
class MongeAmpere1D {
public:
    MongeAmpere1D(const HorosphericalProblem& hp, double xi, const ContinuityOptions& options);

    double box() const { return box_; }
    double h() const { return h_; }
    int size() const { return n_; }
    double xi() const { return xi_; }
    const std::vector<double>& nodes() const { return x_; }
    const std::vector<double>& reference_values() const { return u0_; }
    const ReferencePotential& reference() const { return reference_; }
    /// Endpoints a < 0 < b of 2 Delta.
    double left() const { return a_; }
    double right() const { return b_; }
    double d0() const { return std::max(-a_, b_); }
    double mass_target() const { return psi(b_); }

    /// prod (beta, kappa - q/2), the density factor as a function of the gradient.
    double density_factor(double q) const;
    double psi(double q) const;
    double psi_prime(double q) const;

    /// F_i of the conservative system (scaled by the cell width h).
    Eigen::VectorXd residual(const std::vector<double>& u, double t) const;

    /// Starting potential at t: face slopes q with Psi(q) equal to the cumulative mass of e^{-u0}
    /// (rescaled to the target), i.e. the monotone transport of e^{-u0} dx onto Psi' dq, plus the
    /// constant that gives w_t the target mass.
    std::vector<double> transport_guess(double t) const;

    /// Inverse of Psi on [a, b] by bisection.
    double psi_inverse(double value) const;

    /// Damped Newton from `init` (the transport guess when empty). Throws SolverError on stagnation
    /// or inadmissible iterates.
    ContinuityState solve(double t, const std::vector<double>& init) const;

    /// Fills the diagnostic fields of a state from its u values.
    void diagnose(ContinuityState& state) const;

    /// Face slopes inside (a, b) and nondecreasing, both up to a rounding slack of 1e-9 |2 Delta|.
    bool admissible(const std::vector<double>& u) const;

private:
    double a_ = 0;
    double b_ = 0;
    double kappa_ = 0;
    std::vector<double> form_coeffs_;
    std::vector<double> form_constants_;
    double xi_ = 0;
    double box_ = 0;
    double h_ = 0;
    int n_ = 0;
    ContinuityOptions options_;
    ReferencePotential reference_;
    std::vector<double> x_;
    std::vector<double> u0_;
    std::vector<double> gl_nodes_;
    std::vector<double> gl_weights_;
};

/// Pointwise residual of  u'' prod (beta, kappa - u'/2) / 2 - e^{-w_t - xi u'}  at interior nodes
/// with centered differences. Points whose centered gradient leaves 2 Delta by more than a rounding
/// slack of 1e-9 |2 Delta| (or where the density factor is negative) are listed in `flagged` and carry
/// a NaN residual.
struct PointwiseResidual {
    std::vector<double> values;  // size n, boundary entries 0
    std::vector<std::size_t> flagged;
    double max_abs = 0;
};
PointwiseResidual ma_residual(const HorosphericalProblem& hp, const std::vector<double>& x, const std::vector<double>& u,
                              double t, double xi);

/// Solve the discrete equation at t from the initial potential (the transport guess when empty).
ContinuityState solve_at_t(const HorosphericalProblem& hp, double t, double xi, const std::vector<double>& init,
                           const ContinuityOptions& options = {});

struct ContinuityTraceEntry {
    double t = 0;
    double m_t = 0;
    double x_t = 0;
    double mass = 0;
    double mass_target = 0;
    double residual = 0;
    double sup_psi = 0;
    double step = 0;
    double centering = 0;
    double max_grad_w = 0;
    double grad_margin = 0;
    int newton_iterations = 0;
};

enum class Termination { ReachedOne, Divergence, NewtonFailure };

std::string to_string(Termination t);

struct ContinuityTrace {
    std::vector<ContinuityTraceEntry> entries;
    Termination termination = Termination::NewtonFailure;
    std::string detail;
    /// Size of the last attempted step (the one that failed, or the one reaching t = 1).
    double final_step = 0;
    double xi = 0;
    double box = 0;
    int grid = 0;
    double d0 = 0;
    double volume = 0;
    /// The last accepted state, kept for warm starts and export.
    ContinuityState last_state;
};

/// Advances t from t0 to 1 with warm-started Newton, halving the step on failure and growing
/// it by 1.5 on success. Divergence: |x_t| > window L, a mass defect above mass_tol, or step
/// below min_step.
ContinuityTrace continuity_sweep(const HorosphericalProblem& hp, double xi, const ContinuityOptions& options = {});

struct RicciEstimate {
    double value = 1;
    double uncertainty = 0;
};

/// 1 when the sweep reached t = 1; otherwise the last accepted t plus half the final step,
/// with the final step as the uncertainty.
RicciEstimate estimate_rm_numeric(const ContinuityTrace& trace);

/// CSV with columns t, m_t, x_t, mass, residual, sup_psi, step.
std::string trace_csv(const ContinuityTrace& trace);

}  // namespace horofano

#endif
