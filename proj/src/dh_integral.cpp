#include "horofano/dh_integral.hpp"

#include "horofano/errors.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <map>
#include <sstream>
#include <thread>

namespace horofano {

DHDensity DHDensity::from_roots(const RootDatum& rd, const ParabolicDatum& pd, const A1Embedding& embedding) {
    DHDensity d;
    for (const auto& beta : pd.phi_q_plus) d.forms.push_back({embedding.pullback(rd.gram, beta), 0});
    return d;
}

bool DHDensity::nonnegative_on(const Polytope& p) const {
    for (const auto& f : forms)
        for (const auto& v : p.vertices())
            if (f(v) < 0) return false;
    return true;
}

DHDensity DHDensity::transformed(const RMat& t) const {
    // f(p) = <c, p> + k with p = T^{-1} y gives <T^{-T} c, y> + k.
    const RMat inv_t = transpose(inverse(t));
    DHDensity out;
    for (const auto& f : forms) out.forms.push_back({mat_vec(inv_t, f.coeffs), f.constant});
    return out;
}

namespace {

Integer factorial(int n) {
    Integer f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

Rational abs_determinant_of_edges(const Simplex& s) {
    RMat edges;
    for (std::size_t i = 1; i < s.vertices.size(); ++i) edges.push_back(sub(s.vertices[i], s.vertices[0]));
    Rational det = determinant(edges);
    return det < 0 ? Rational(-det) : det;
}

// Neumaier compensated sum.
struct CompensatedSum {
    double sum = 0;
    double carry = 0;

    void add(double x) {
        double t = sum + x;
        if (std::abs(sum) >= std::abs(x)) carry += (sum - t) + x;
        else carry += (x - t) + sum;
        sum = t;
    }
    double value() const { return sum + carry; }
};

struct ReferenceRule {
    Eigen::MatrixXd points;  // n x d, in the unit simplex
    std::vector<double> weights;
};

// Collapsed-coordinate (Duffy) tensor rule on the unit simplex {x >= 0, sum x <= 1}:
// x_k = u_k prod_{j<k} (1 - u_j), Jacobian prod_{k<d} (1 - u_k)^{d-k}.
ReferenceRule reference_rule(int dim, int order) {
    std::vector<double> nodes;
    std::vector<double> weights;
    gauss_legendre_unit(order, nodes, weights);
    std::size_t total = 1;
    for (int k = 0; k < dim; ++k) total *= static_cast<std::size_t>(order);

    ReferenceRule rule;
    rule.points.resize(static_cast<Eigen::Index>(total), dim);
    rule.weights.resize(total);
    std::vector<int> idx(static_cast<std::size_t>(dim), 0);
    for (std::size_t n = 0; n < total; ++n) {
        double remaining = 1.0;
        double w = 1.0;
        for (int k = 0; k < dim; ++k) {
            const double u = nodes[static_cast<std::size_t>(idx[static_cast<std::size_t>(k)])];
            rule.points(static_cast<Eigen::Index>(n), k) = remaining * u;
            // d x_k / d u_k = prod_{j<k} (1 - u_j); the map is triangular.
            w *= weights[static_cast<std::size_t>(idx[static_cast<std::size_t>(k)])] * remaining;
            remaining *= (1.0 - u);
        }
        rule.weights[n] = w;
        for (int k = dim - 1; k >= 0; --k) {
            if (++idx[static_cast<std::size_t>(k)] < order) break;
            idx[static_cast<std::size_t>(k)] = 0;
        }
    }
    return rule;
}

}  // namespace

Rational integrate_poly_simplex(const Simplex& s, const std::vector<AffineForm>& factors) {
    const std::size_t n = s.vertices.size();  // dim + 1 barycentric variables
    const int dim = s.dim();
    std::map<std::vector<int>, Rational> poly;
    poly[std::vector<int>(n, 0)] = 1;
    for (const auto& f : factors) {
        RVec values;
        for (const auto& v : s.vertices) values.push_back(f(v));
        std::map<std::vector<int>, Rational> next;
        for (const auto& [expo, coef] : poly) {
            for (std::size_t i = 0; i < n; ++i) {
                if (values[i] == 0) continue;
                auto e = expo;
                ++e[i];
                next[e] += coef * values[i];
            }
        }
        poly = std::move(next);
    }
    Rational sum = 0;
    for (const auto& [expo, coef] : poly) {
        Integer num = 1;
        for (int a : expo) num *= factorial(a);
        sum += coef * Rational(num);
    }
    const int k = static_cast<int>(factors.size());
    return sum * abs_determinant_of_edges(s) / Rational(factorial(dim + k));
}

Rational integrate_monomial_simplex(const Simplex& s, const std::vector<int>& exponents) {
    const std::size_t d = static_cast<std::size_t>(s.dim());
    if (exponents.size() != d) throw std::invalid_argument("monomial exponent has wrong dimension");
    std::vector<AffineForm> factors;
    for (std::size_t i = 0; i < d; ++i)
        for (int k = 0; k < exponents[i]; ++k) factors.push_back({unit(d, i), 0});
    return integrate_poly_simplex(s, factors);
}

Rational integrate_poly(const Polytope& p, const std::vector<AffineForm>& factors) {
    Rational total = 0;
    for (const auto& s : triangulate(p)) total += integrate_poly_simplex(s, factors);
    return total;
}

Rational dh_volume(const Polytope& p, const DHDensity& density) {
    if (!density.nonnegative_on(p)) throw ValidationError("Duistermaat-Heckman density is negative on the polytope");
    Rational v = integrate_poly(p, density.forms);
    if (v <= 0) throw ValidationError("Duistermaat-Heckman volume vanishes");
    return v;
}

RVec dh_barycenter(const Polytope& p, const DHDensity& density) {
    const Rational v = dh_volume(p, density);
    const std::size_t d = static_cast<std::size_t>(p.dim());
    RVec bar(d);
    for (std::size_t i = 0; i < d; ++i) {
        auto factors = density.forms;
        factors.push_back({unit(d, i), 0});
        bar[i] = integrate_poly(p, factors) / v;
    }
    return bar;
}

void gauss_legendre_unit(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    if (n < 1) throw std::invalid_argument("Gauss-Legendre order must be >= 1");
    nodes.assign(static_cast<std::size_t>(n), 0.0);
    weights.assign(static_cast<std::size_t>(n), 0.0);
    const double pi = std::acos(-1.0);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double dp = 0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = 0.0;
            for (int k = 1; k <= n; ++k) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p2) / k;
            }
            dp = n * (x * p0 - p1) / (x * x - 1.0);
            double dx = p0 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        // Recompute the derivative at the converged root.
        double p0 = 1.0;
        double p1 = 0.0;
        for (int k = 1; k <= n; ++k) {
            double p2 = p1;
            p1 = p0;
            p0 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p2) / k;
        }
        dp = n * (x * p0 - p1) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        // Map [-1, 1] to [0, 1].
        nodes[static_cast<std::size_t>(i)] = 0.5 * (1.0 - x);
        nodes[static_cast<std::size_t>(n - 1 - i)] = 0.5 * (1.0 + x);
        weights[static_cast<std::size_t>(i)] = 0.5 * w;
        weights[static_cast<std::size_t>(n - 1 - i)] = 0.5 * w;
    }
}

unsigned integration_workers() {
    if (const char* env = std::getenv("HOROFANO_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && v >= 1) return static_cast<unsigned>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

DHIntegrator::DHIntegrator(const Polytope& p, DHDensity density, QuadratureOptions options)
    : polytope_(p), density_(std::move(density)), options_(options), simplices_(triangulate(p)) {
    if (!density_.nonnegative_on(polytope_))
        throw ValidationError("Duistermaat-Heckman density is negative on the polytope");
    const int d = p.dim();
    for (const auto& s : simplices_) {
        Eigen::MatrixXd v(d + 1, d);
        for (int i = 0; i <= d; ++i)
            for (int j = 0; j < d; ++j) v(i, j) = to_double(s.vertices[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
        simplex_vertices_.push_back(v);
        simplex_volumes_.push_back(to_double(s.volume()));
    }
    for (const auto& f : density_.forms) {
        Eigen::VectorXd c(d);
        for (int j = 0; j < d; ++j) c(j) = to_double(f.coeffs[static_cast<std::size_t>(j)]);
        form_coeffs_.push_back(c);
        form_constants_.push_back(to_double(f.constant));
    }
    for (const auto& v : p.vertices()) {
        double r2 = 0;
        for (const auto& x : v) r2 += to_double(x) * to_double(x);
        radius_ = std::max(radius_, std::sqrt(r2));
    }
    if (options_.order <= 0) options_.order = static_cast<int>(density_.degree()) + 20;
}

Rational DHIntegrator::volume() const { return dh_volume(polytope_, density_); }

RVec DHIntegrator::barycenter() const { return dh_barycenter(polytope_, density_); }

WeightedMoments DHIntegrator::moments_at_order(const Eigen::VectorXd& exponent, const Eigen::VectorXd& center,
                                               int order) const {
    const int d = polytope_.dim();
    if (exponent.size() != d || center.size() != d) throw std::invalid_argument("moments: vector has wrong dimension");
    const ReferenceRule rule = reference_rule(d, order);
    const std::size_t n_simplex = simplices_.size();
    const std::size_t n_terms = 1 + static_cast<std::size_t>(d) + static_cast<std::size_t>(d * d);
    std::vector<std::vector<double>> partial(n_simplex, std::vector<double>(n_terms, 0.0));

    auto work = [&](std::size_t s) {
        const Eigen::MatrixXd& v = simplex_vertices_[s];
        Eigen::MatrixXd edges(d, d);
        for (int k = 0; k < d; ++k) edges.col(k) = (v.row(k + 1) - v.row(0)).transpose();
        const double jac = simplex_volumes_[s] * [&] {
            double f = 1;
            for (int i = 2; i <= d; ++i) f *= i;
            return f;
        }();
        std::vector<CompensatedSum> acc(n_terms);
        Eigen::VectorXd p(d);
        for (Eigen::Index q = 0; q < rule.points.rows(); ++q) {
            p = v.row(0).transpose() + edges * rule.points.row(q).transpose();
            double density = 1.0;
            for (std::size_t f = 0; f < form_coeffs_.size(); ++f) density *= form_coeffs_[f].dot(p) + form_constants_[f];
            const Eigen::VectorXd y = p - center;
            const double w = rule.weights[static_cast<std::size_t>(q)] * jac * density * std::exp(exponent.dot(y));
            acc[0].add(w);
            for (int i = 0; i < d; ++i) {
                acc[1 + static_cast<std::size_t>(i)].add(w * y(i));
                for (int j = 0; j < d; ++j)
                    acc[1 + static_cast<std::size_t>(d + i * d + j)].add(w * y(i) * y(j));
            }
        }
        for (std::size_t t = 0; t < n_terms; ++t) partial[s][t] = acc[t].value();
    };

    unsigned workers = options_.workers == 0 ? integration_workers() : options_.workers;
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(n_simplex)));
    if (workers == 1) {
        for (std::size_t s = 0; s < n_simplex; ++s) work(s);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (std::size_t s = next++; s < n_simplex; s = next++) work(s);
            });
        for (auto& t : pool) t.join();
    }

    std::vector<CompensatedSum> total(n_terms);
    for (std::size_t s = 0; s < n_simplex; ++s)
        for (std::size_t t = 0; t < n_terms; ++t) total[t].add(partial[s][t]);

    WeightedMoments m;
    m.order = order;
    m.i0 = total[0].value();
    m.i1.resize(d);
    m.i2.resize(d, d);
    for (int i = 0; i < d; ++i) {
        m.i1(i) = total[1 + static_cast<std::size_t>(i)].value();
        for (int j = 0; j < d; ++j) m.i2(i, j) = total[1 + static_cast<std::size_t>(d + i * d + j)].value();
    }
    return m;
}

WeightedMoments DHIntegrator::moments(const Eigen::VectorXd& exponent, const Eigen::VectorXd& center) const {
    const double scale = radius_ + center.norm();
    auto difference = [&](const WeightedMoments& a, const WeightedMoments& b) {
        const double s0 = std::abs(b.i0);
        double err = std::abs(a.i0 - b.i0) / s0;
        err = std::max(err, (a.i1 - b.i1).norm() / (b.i1.norm() + scale * s0));
        err = std::max(err, (a.i2 - b.i2).norm() / (b.i2.norm() + scale * scale * s0));
        return err;
    };
    int order = options_.order;
    WeightedMoments coarse = moments_at_order(exponent, center, order);
    WeightedMoments fine = moments_at_order(exponent, center, order + 4);
    double err = difference(coarse, fine);
    for (int refinement = 0; err > options_.rel_tol && refinement < options_.max_refinements; ++refinement) {
        order += 4;
        coarse = std::move(fine);
        fine = moments_at_order(exponent, center, order + 4);
        err = difference(coarse, fine);
    }
    fine.rel_error = err;
    if (!(err <= options_.rel_tol)) {
        std::ostringstream msg;
        msg << "quadrature did not reach relative tolerance " << options_.rel_tol << " (estimate " << err
            << " at order " << fine.order << ")";
        throw SolverError(msg.str());
    }
    return fine;
}

WeightedMoments DHIntegrator::moments(const Eigen::VectorXd& exponent) const {
    return moments(exponent, Eigen::VectorXd::Zero(exponent.size()));
}

WeightedMoments weighted_moments(const Polytope& p, const DHDensity& density, const Eigen::VectorXd& exponent,
                                 const QuadratureOptions& options) {
    return DHIntegrator(p, density, options).moments(exponent);
}

}  // namespace horofano
