#include "horofano/ma_continuity.hpp"

#include "horofano/errors.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

namespace horofano {

namespace {

constexpr double kTailFraction = 1e-8;
// Face slopes within this fraction of |2 Delta| outside the interval are rounding, not escape.
constexpr double kSlopeSlack = 1e-9;

struct Reduced {
    double a = 0;
    double b = 0;
    double kappa = 0;
    std::vector<double> coeffs;
    std::vector<double> constants;
    double volume = 0;
};

Reduced reduce(const HorosphericalProblem& hp) {
    if (hp.a1_dim() != 1) throw ValidationError("continuity: only r = 1 is supported, got r = " + std::to_string(hp.a1_dim()));
    Reduced r;
    const auto& vs = hp.moment.vertices();
    const double lo = to_double(std::min(vs.front()[0], vs.back()[0]));
    const double hi = to_double(std::max(vs.front()[0], vs.back()[0]));
    r.kappa = to_double(hp.kappa[0]);
    r.a = 2 * (r.kappa - hi);
    r.b = 2 * (r.kappa - lo);
    if (!(r.a < 0 && r.b > 0)) throw ValidationError("continuity: kappa is not interior to Delta+");
    for (const auto& f : hp.density.forms) {
        r.coeffs.push_back(to_double(f.coeffs[0]));
        r.constants.push_back(to_double(f.constant));
    }
    r.volume = to_double(dh_volume(hp.moment, hp.density));
    return r;
}

double density_at(const Reduced& r, double q) {
    const double p = r.kappa - q / 2;
    double d = 1;
    for (std::size_t j = 0; j < r.coeffs.size(); ++j) d *= r.coeffs[j] * p + r.constants[j];
    return d;
}

// Smallest L with e^{-b L} / b + e^{a L} / |a| <= tol.
double tail_box(double a, double b, double tol) {
    auto tail = [&](double l) { return std::exp(-b * l) / b + std::exp(a * l) / -a; };
    double hi = 1;
    while (tail(hi) > tol) hi *= 2;
    double lo = 0;
    for (int i = 0; i < 200 && hi - lo > 1e-12 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        (tail(mid) > tol ? lo : hi) = mid;
    }
    return hi;
}

double simpson(const std::vector<double>& f, double h) {
    const std::size_t n = f.size();
    if (n < 2) return 0;
    std::size_t last = n - 1;
    double tail = 0;
    if (last % 2 == 1) {
        tail = 0.5 * h * (f[last - 1] + f[last]);
        --last;
    }
    double s = f[0] + f[last];
    for (std::size_t i = 1; i < last; ++i) s += (i % 2 == 1 ? 4 : 2) * f[i];
    return s * h / 3 + tail;
}

std::string sci(double v) {
    std::ostringstream out;
    out << std::setprecision(3) << std::scientific << v;
    return out.str();
}

ContinuityTraceEntry entry_of(const ContinuityState& s, double step) {
    ContinuityTraceEntry e;
    e.t = s.t;
    e.m_t = s.m_t;
    e.x_t = s.x_t;
    e.mass = s.mass;
    e.mass_target = s.mass_target;
    e.residual = s.residual_norm;
    e.sup_psi = s.sup_psi;
    e.step = step;
    e.centering = s.centering;
    e.max_grad_w = s.max_grad_w;
    e.grad_margin = s.grad_margin;
    e.newton_iterations = s.newton_iterations;
    return e;
}

}  // namespace

ReferencePotential::ReferencePotential(std::vector<Eigen::VectorXd> vertices) : vertices_(std::move(vertices)) {
    if (vertices_.empty()) throw std::invalid_argument("reference potential needs at least one vertex");
}

Eigen::VectorXd ReferencePotential::weights(const Eigen::VectorXd& x, double& lse) const {
    Eigen::VectorXd e(static_cast<Eigen::Index>(vertices_.size()));
    for (std::size_t i = 0; i < vertices_.size(); ++i) e(static_cast<Eigen::Index>(i)) = vertices_[i].dot(x);
    const double m = e.maxCoeff();
    Eigen::VectorXd w = (e.array() - m).exp();
    const double s = w.sum();
    lse = m + std::log(s);
    return w / s;
}

double ReferencePotential::value(const Eigen::VectorXd& x) const {
    double lse = 0;
    weights(x, lse);
    return lse;
}

Eigen::VectorXd ReferencePotential::gradient(const Eigen::VectorXd& x) const {
    double lse = 0;
    const Eigen::VectorXd w = weights(x, lse);
    Eigen::VectorXd g = Eigen::VectorXd::Zero(x.size());
    for (std::size_t i = 0; i < vertices_.size(); ++i) g += w(static_cast<Eigen::Index>(i)) * vertices_[i];
    return g;
}

Eigen::MatrixXd ReferencePotential::hessian(const Eigen::VectorXd& x) const {
    double lse = 0;
    const Eigen::VectorXd w = weights(x, lse);
    const Eigen::VectorXd g = gradient(x);
    Eigen::MatrixXd hess = Eigen::MatrixXd::Zero(x.size(), x.size());
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        const Eigen::VectorXd d = vertices_[i] - g;
        hess += w(static_cast<Eigen::Index>(i)) * d * d.transpose();
    }
    return hess;
}

double ReferencePotential::value(double x) const { return value(Eigen::VectorXd::Constant(1, x)); }

double ReferencePotential::derivative(double x) const { return gradient(Eigen::VectorXd::Constant(1, x))(0); }

double ReferencePotential::second_derivative(double x) const { return hessian(Eigen::VectorXd::Constant(1, x))(0, 0); }

double ReferencePotential::support(const Eigen::VectorXd& x) const {
    double m = -std::numeric_limits<double>::infinity();
    for (const auto& v : vertices_) m = std::max(m, v.dot(x));
    return m;
}

Polytope two_delta(const HorosphericalProblem& hp) { return delta_from_moment(hp.moment, hp.kappa).dilated(2); }

ReferencePotential reference_potential(const Polytope& two_delta) {
    const int d = two_delta.dim();
    if (!two_delta.contains_in_interior(zeros(static_cast<std::size_t>(d))))
        throw ValidationError("reference potential: 0 is not interior to 2 Delta");

    std::vector<Eigen::VectorXd> vs;
    for (const auto& v : two_delta.vertices()) vs.push_back(Eigen::Map<const Eigen::VectorXd>(to_double(v).data(), d));
    ReferencePotential ref(vs);

    std::vector<Eigen::VectorXd> normals;
    std::vector<double> offsets;
    for (const auto& f : two_delta.facets()) {
        normals.push_back(Eigen::Map<const Eigen::VectorXd>(to_double(f.normal).data(), d));
        offsets.push_back(to_double(f.offset));
    }

    const double log_n = std::log(static_cast<double>(vs.size()));
    const int per_axis = d <= 2 ? 9 : (d == 3 ? 5 : 3);
    std::vector<int> idx(static_cast<std::size_t>(d), 0);
    for (;;) {
        Eigen::VectorXd x(d);
        for (int k = 0; k < d; ++k) x(k) = -2.0 + 4.0 * idx[static_cast<std::size_t>(k)] / (per_axis - 1);
        const Eigen::VectorXd g = ref.gradient(x);
        for (std::size_t f = 0; f < normals.size(); ++f)
            if (!(normals[f].dot(g) < offsets[f])) throw std::logic_error("reference potential: gradient leaves Int(2 Delta)");
        const double gap = ref.value(x) - ref.support(x);
        if (gap < -1e-12 || gap > log_n + 1e-12) throw std::logic_error("reference potential: u0 - v out of range");
        int k = 0;
        while (k < d && ++idx[static_cast<std::size_t>(k)] == per_axis) idx[static_cast<std::size_t>(k++)] = 0;
        if (k == d) break;
    }
    return ref;
}

MongeAmpere1D::MongeAmpere1D(const HorosphericalProblem& hp, double xi, const ContinuityOptions& options)
    : options_(options), reference_(reference_potential(two_delta(hp))) {
    const Reduced r = reduce(hp);
    a_ = r.a;
    b_ = r.b;
    kappa_ = r.kappa;
    form_coeffs_ = r.coeffs;
    form_constants_ = r.constants;
    xi_ = xi;
    if (options.grid < 5) throw std::invalid_argument("continuity: grid must have at least 5 points");
    n_ = options.grid;
    box_ = options.box > 0 ? options.box : tail_box(a_, b_, kTailFraction * r.volume);
    h_ = 2 * box_ / (n_ - 1);
    x_.resize(static_cast<std::size_t>(n_));
    u0_.resize(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) {
        x_[static_cast<std::size_t>(i)] = -box_ + i * h_;
        u0_[static_cast<std::size_t>(i)] = reference_.value(x_[static_cast<std::size_t>(i)]);
    }
    gauss_legendre_unit(40, gl_nodes_, gl_weights_);
}

double MongeAmpere1D::density_factor(double q) const {
    const double p = kappa_ - q / 2;
    double d = 1;
    for (std::size_t j = 0; j < form_coeffs_.size(); ++j) d *= form_coeffs_[j] * p + form_constants_[j];
    return d;
}

double MongeAmpere1D::psi_prime(double q) const { return 0.5 * density_factor(q) * std::exp(xi_ * q); }

double MongeAmpere1D::psi(double q) const {
    const double len = q - a_;
    double s = 0;
    for (std::size_t k = 0; k < gl_nodes_.size(); ++k) s += gl_weights_[k] * psi_prime(a_ + len * gl_nodes_[k]);
    return s * len;
}

bool MongeAmpere1D::admissible(const std::vector<double>& u) const {
    const double slack = kSlopeSlack * (b_ - a_);
    double prev = -std::numeric_limits<double>::infinity();
    for (int i = 0; i + 1 < n_; ++i) {
        const double q = (u[static_cast<std::size_t>(i + 1)] - u[static_cast<std::size_t>(i)]) / h_;
        if (!std::isfinite(q) || q <= a_ - slack || q >= b_ + slack || q < prev - slack) return false;
        prev = q;
    }
    return true;
}

Eigen::VectorXd MongeAmpere1D::residual(const std::vector<double>& u, double t) const {
    const int n = n_;
    std::vector<double> flux(static_cast<std::size_t>(n - 1));
    for (int i = 0; i + 1 < n; ++i)
        flux[static_cast<std::size_t>(i)] = psi((u[static_cast<std::size_t>(i + 1)] - u[static_cast<std::size_t>(i)]) / h_);
    Eigen::VectorXd f(n);
    auto ew = [&](int i) {
        return std::exp(-(t * u[static_cast<std::size_t>(i)] + (1 - t) * u0_[static_cast<std::size_t>(i)]));
    };
    f(0) = flux[0] - ew(0) * (1 / -a_ + h_ / 2);
    for (int i = 1; i + 1 < n; ++i)
        f(i) = flux[static_cast<std::size_t>(i)] - flux[static_cast<std::size_t>(i - 1)] - h_ * ew(i);
    f(n - 1) = psi(b_) - flux[static_cast<std::size_t>(n - 2)] - ew(n - 1) * (1 / b_ + h_ / 2);
    return f;
}

double MongeAmpere1D::psi_inverse(double value) const {
    double lo = a_, hi = b_;
    if (value <= 0) return a_;
    if (value >= psi(b_)) return b_;
    for (int i = 0; i < 200 && hi - lo > 4 * std::numeric_limits<double>::epsilon() * (b_ - a_); ++i) {
        const double mid = 0.5 * (lo + hi);
        (psi(mid) < value ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

std::vector<double> MongeAmpere1D::transport_guess(double t) const {
    const int n = n_;
    std::vector<double> e(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) e[static_cast<std::size_t>(i)] = std::exp(-u0_[static_cast<std::size_t>(i)]);
    // Cell masses in the same quadrature as the discrete fluxes.
    std::vector<double> weight(e.size(), h_), cell(e.size());
    weight.front() = 1 / -a_ + h_ / 2;
    weight.back() = 1 / b_ + h_ / 2;
    for (std::size_t i = 0; i < e.size(); ++i) cell[i] = weight[i] * e[i];

    std::vector<double> left(static_cast<std::size_t>(n - 1)), right(static_cast<std::size_t>(n - 1));
    double acc = 0;
    for (int f = 0; f + 1 < n; ++f) left[static_cast<std::size_t>(f)] = acc += cell[static_cast<std::size_t>(f)];
    acc = 0;
    for (int f = n - 2; f >= 0; --f) right[static_cast<std::size_t>(f)] = acc += cell[static_cast<std::size_t>(f + 1)];
    const double total = left.back() + cell.back();
    const double target = psi(b_);

    std::vector<double> u(static_cast<std::size_t>(n), 0.0);
    for (int f = 0; f + 1 < n; ++f) {
        const auto uf = static_cast<std::size_t>(f);
        // Cumulative mass from whichever end is closer, to keep the tails accurate.
        const double flux = left[uf] <= right[uf] ? target * left[uf] / total : target - target * right[uf] / total;
        u[uf + 1] = u[uf] + h_ * psi_inverse(flux);
    }

    // e^{-t c} scales the mass of w_t; pick c to hit the target.
    double mass = 0;
    for (int i = 0; i < n; ++i) {
        const auto ui = static_cast<std::size_t>(i);
        const double wi = t * u[ui] + (1 - t) * u0_[ui];
        mass += weight[ui] * std::exp(-wi);
    }
    const double c = t > 0 ? std::log(mass / target) / t : 0;
    for (auto& v : u) v += c;
    return u;
}

ContinuityState MongeAmpere1D::solve(double t, const std::vector<double>& init) const {
    const int n = n_;
    std::vector<double> u = init.empty() ? transport_guess(t) : init;
    if (u.size() != static_cast<std::size_t>(n)) throw std::invalid_argument("continuity: initial potential has wrong size");
    if (!admissible(u)) throw SolverError("continuity: initial potential is not admissible at t = " + std::to_string(t));

    Eigen::VectorXd f = residual(u, t);
    double merit = 0.5 * f.squaredNorm();
    const double c = 1e-4;

    for (int iter = 0;; ++iter) {
        const double norm = f.cwiseAbs().maxCoeff() / h_;
        if (!std::isfinite(norm)) throw SolverError("continuity: non-finite residual at t = " + std::to_string(t));
        auto converged = [&] {
            ContinuityState s;
            s.t = t;
            s.x = x_;
            s.u = std::move(u);
            s.u0 = u0_;
            s.residual_norm = norm;
            s.newton_iterations = iter;
            diagnose(s);
            return s;
        };
        if (norm <= options_.newton_tol) return converged();
        if (iter == options_.max_newton) {
            if (norm <= options_.stall_tol) return converged();
            throw SolverError("continuity: Newton did not converge at t = " + std::to_string(t) +
                              " (residual " + sci(norm) + ")");
        }

        std::vector<Eigen::Triplet<double>> trip;
        trip.reserve(static_cast<std::size_t>(3 * n));
        std::vector<double> k(static_cast<std::size_t>(n - 1));
        for (int i = 0; i + 1 < n; ++i)
            k[static_cast<std::size_t>(i)] =
                psi_prime((u[static_cast<std::size_t>(i + 1)] - u[static_cast<std::size_t>(i)]) / h_) / h_;
        for (int i = 0; i < n; ++i) {
            const double ew =
                std::exp(-(t * u[static_cast<std::size_t>(i)] + (1 - t) * u0_[static_cast<std::size_t>(i)]));
            double diag = 0;
            if (i > 0) {
                diag -= k[static_cast<std::size_t>(i - 1)];
                trip.emplace_back(i, i - 1, k[static_cast<std::size_t>(i - 1)]);
            }
            if (i + 1 < n) {
                diag -= k[static_cast<std::size_t>(i)];
                trip.emplace_back(i, i + 1, k[static_cast<std::size_t>(i)]);
            }
            if (i == 0)
                diag += t * ew * (1 / -a_ + h_ / 2);
            else if (i == n - 1)
                diag += t * ew * (1 / b_ + h_ / 2);
            else
                diag += t * h_ * ew;
            trip.emplace_back(i, i, diag);
        }
        Eigen::SparseMatrix<double> jac(n, n);
        jac.setFromTriplets(trip.begin(), trip.end());
        Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
        lu.compute(jac);
        if (lu.info() != Eigen::Success) throw SolverError("continuity: singular Jacobian at t = " + std::to_string(t));
        const Eigen::VectorXd delta = lu.solve(-f);
        if (lu.info() != Eigen::Success || !delta.allFinite())
            throw SolverError("continuity: linear solve failed at t = " + std::to_string(t));

        double alpha = 1;
        bool accepted = false;
        std::vector<double> trial(u.size());
        for (int ls = 0; ls < 20; ++ls, alpha *= 0.5) {
            for (int i = 0; i < n; ++i) trial[static_cast<std::size_t>(i)] = u[static_cast<std::size_t>(i)] + alpha * delta(i);
            if (!admissible(trial)) continue;
            Eigen::VectorXd ft = residual(trial, t);
            const double mt = 0.5 * ft.squaredNorm();
            if (std::isfinite(mt) && mt <= (1 - 2 * c * alpha) * merit) {
                u.swap(trial);
                f = std::move(ft);
                merit = mt;
                accepted = true;
                break;
            }
        }
        if (!accepted) {
            if (norm <= options_.stall_tol) return converged();
            throw SolverError("continuity: line search failed at t = " + std::to_string(t) + " (residual " + sci(norm) +
                              ")");
        }
    }
}

void MongeAmpere1D::diagnose(ContinuityState& s) const {
    const int n = n_;
    const double t = s.t;
    std::vector<double> w(static_cast<std::size_t>(n)), ew(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const auto ui = static_cast<std::size_t>(i);
        w[ui] = t * s.u[ui] + (1 - t) * u0_[ui];
        ew[ui] = std::exp(-w[ui]);
    }

    const auto kmin = static_cast<std::size_t>(std::min_element(w.begin(), w.end()) - w.begin());
    s.m_t = w[kmin];
    s.x_t = x_[kmin];
    if (kmin > 0 && kmin + 1 < w.size()) {
        const double curv = w[kmin - 1] - 2 * w[kmin] + w[kmin + 1];
        if (curv > 0) {
            const double off = 0.5 * (w[kmin - 1] - w[kmin + 1]) / curv;
            s.x_t = x_[kmin] + off * h_;
            s.m_t = w[kmin] - 0.25 * (w[kmin - 1] - w[kmin + 1]) * off;
        }
    }

    // End slopes of w from one-sided second order differences.
    const double sl = (-3 * w[0] + 4 * w[1] - w[2]) / (2 * h_);
    const double sr = (3 * w[static_cast<std::size_t>(n - 1)] - 4 * w[static_cast<std::size_t>(n - 2)] +
                       w[static_cast<std::size_t>(n - 3)]) /
                      (2 * h_);
    const double left_tail = sl < 0 ? ew[0] / -sl : ew[0] / -a_;
    const double right_tail = sr > 0 ? ew.back() / sr : ew.back() / b_;
    s.mass = simpson(ew, h_) + left_tail + right_tail;
    s.mass_target = psi(b_);

    double centering = -ew.front() + ew.back();
    double max_grad = 0;
    double margin = std::numeric_limits<double>::infinity();
    for (int i = 0; i + 1 < n; ++i) {
        const auto ui = static_cast<std::size_t>(i);
        const double dw = w[ui + 1] - w[ui];
        centering += 0.5 * dw * (ew[ui] + ew[ui + 1]);
        max_grad = std::max(max_grad, std::abs(dw / h_));
        const double q = (s.u[ui + 1] - s.u[ui]) / h_;
        margin = std::min(margin, std::min(q - a_, b_ - q));
    }
    s.centering = centering;
    s.max_grad_w = max_grad;
    s.grad_margin = margin;

    double sup = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) sup = std::max(sup, s.u[static_cast<std::size_t>(i)] - u0_[static_cast<std::size_t>(i)]);
    s.sup_psi = sup;
}

PointwiseResidual ma_residual(const HorosphericalProblem& hp, const std::vector<double>& x, const std::vector<double>& u,
                              double t, double xi) {
    if (x.size() != u.size() || x.size() < 3) throw std::invalid_argument("ma_residual: grid and potential mismatch");
    const Reduced r = reduce(hp);
    const ReferencePotential ref = reference_potential(two_delta(hp));
    const double slack = kSlopeSlack * (r.b - r.a);
    PointwiseResidual out;
    out.values.assign(u.size(), 0.0);
    for (std::size_t i = 1; i + 1 < u.size(); ++i) {
        const double hl = x[i] - x[i - 1];
        const double hr = x[i + 1] - x[i];
        const double q = (u[i + 1] - u[i - 1]) / (hl + hr);
        const double upp = 2 * ((u[i + 1] - u[i]) / hr - (u[i] - u[i - 1]) / hl) / (hl + hr);
        const double rho = density_at(r, std::clamp(q, r.a, r.b));
        if (!(q > r.a - slack && q < r.b + slack) || rho < 0) {
            out.flagged.push_back(i);
            out.values[i] = std::numeric_limits<double>::quiet_NaN();
            continue;
        }
        const double w = t * u[i] + (1 - t) * ref.value(x[i]);
        out.values[i] = upp * rho / 2 - std::exp(-w - xi * q);
        out.max_abs = std::max(out.max_abs, std::abs(out.values[i]));
    }
    return out;
}

ContinuityState solve_at_t(const HorosphericalProblem& hp, double t, double xi, const std::vector<double>& init,
                           const ContinuityOptions& options) {
    if (!(t >= 0 && t <= 1)) throw std::invalid_argument("continuity: t must lie in [0, 1]");
    return MongeAmpere1D(hp, xi, options).solve(t, init);
}

std::string to_string(Termination t) {
    switch (t) {
        case Termination::ReachedOne: return "reached_t1";
        case Termination::Divergence: return "divergence";
        case Termination::NewtonFailure: return "newton_failure";
    }
    return "unknown";
}

ContinuityTrace continuity_sweep(const HorosphericalProblem& hp, double xi, const ContinuityOptions& options) {
    if (!(options.t0 > 0 && options.t0 < 1)) throw std::invalid_argument("continuity: t0 must lie in (0, 1)");
    const MongeAmpere1D op(hp, xi, options);
    ContinuityTrace trace;
    trace.xi = xi;
    trace.box = op.box();
    trace.grid = op.size();
    trace.d0 = op.d0();
    trace.volume = to_double(dh_volume(hp.moment, hp.density));

    ContinuityState state;
    try {
        state = op.solve(options.t0, {});
    } catch (const SolverError& e) {
        trace.termination = Termination::NewtonFailure;
        trace.detail = e.what();
        trace.final_step = options.t0;
        return trace;
    }
    trace.entries.push_back(entry_of(state, options.t0));

    const double window = options.window * op.box();
    double t = options.t0;
    double step = options.initial_step;
    for (;;) {
        const double target = std::min(1.0, t + step);
        const double attempted = target - t;
        std::string failure;
        try {
            ContinuityState next = op.solve(target, state.u);
            const double mass_error = std::abs(next.mass - next.mass_target) / next.mass_target;
            if (std::abs(next.x_t) > window || mass_error > options.mass_tol) {
                trace.termination = Termination::Divergence;
                std::ostringstream msg;
                if (std::abs(next.x_t) > window)
                    msg << "|x_t| = " << std::abs(next.x_t) << " exceeds " << options.window << " L at t = " << target;
                else
                    msg << "mass identity off by " << sci(mass_error) << " at t = " << target << " (x_t = " << next.x_t
                        << ", mass escaping the box)";
                trace.detail = msg.str();
                trace.final_step = attempted;
                break;
            }
            state = std::move(next);
            t = target;
            trace.entries.push_back(entry_of(state, attempted));
            if (t >= 1.0) {
                trace.termination = Termination::ReachedOne;
                trace.final_step = attempted;
                break;
            }
            step = std::min(1.5 * attempted, options.max_step);
            continue;
        } catch (const SolverError& e) {
            failure = e.what();
        }
        step = 0.5 * attempted;
        if (step < options.min_step) {
            trace.termination = Termination::Divergence;
            trace.detail = "step underflow after: " + failure;
            trace.final_step = attempted;
            break;
        }
    }
    trace.last_state = std::move(state);
    return trace;
}

RicciEstimate estimate_rm_numeric(const ContinuityTrace& trace) {
    if (trace.entries.empty()) throw SolverError("continuity: empty trace, no estimate available");
    if (trace.termination == Termination::ReachedOne) return {1.0, 0.0};
    return {trace.entries.back().t + 0.5 * trace.final_step, trace.final_step};
}

std::string trace_csv(const ContinuityTrace& trace) {
    std::ostringstream out;
    out << std::setprecision(17);
    out << "t,m_t,x_t,mass,residual,sup_psi,step\n";
    for (const auto& e : trace.entries)
        out << e.t << ',' << e.m_t << ',' << e.x_t << ',' << e.mass << ',' << e.residual << ',' << e.sup_psi << ','
            << e.step << '\n';
    return out.str();
}

}  // namespace horofano
