#include "horofano/errors.hpp"
#include "horofano/ma_continuity.hpp"
#include "horofano/soliton.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace horofano;
using testing::q;

namespace {

double xi_star(const HorosphericalProblem& hp) { return solve_soliton(hp).xi(0); }

ContinuityOptions coarse() {
    ContinuityOptions o;
    o.grid = 1001;
    return o;
}

}  // namespace

TEST_SUITE("ma_continuity") {

TEST_CASE("reference potential of [-2, 2]") {
    const ReferencePotential u0 = reference_potential(testing::interval(-2, 2));
    CHECK(u0.value(0.0) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
    CHECK(u0.derivative(0.0) == doctest::Approx(0.0));
    CHECK(u0.second_derivative(0.0) == doctest::Approx(4.0));
    for (double x : {5.0, 12.0, 40.0}) {
        CHECK(u0.value(x) - 2 * x == doctest::Approx(std::log1p(std::exp(-4 * x))).epsilon(1e-12));
        CHECK(u0.value(-x) == doctest::Approx(u0.value(x)).epsilon(1e-15));
    }
}

TEST_CASE("reference potential of [-4, 2]") {
    const ReferencePotential u0 = reference_potential(testing::interval(-4, 2));
    CHECK(u0.derivative(0.0) == doctest::Approx(-1.0));
    for (double x : {-5.0, -3.0, 0.0, 1.0, 5.0}) {
        CHECK(u0.derivative(x) > -4);
        CHECK(u0.derivative(x) < 2);
        const double support = std::max(-4 * x, 2 * x);
        CHECK(u0.value(x) >= support);
        CHECK(u0.value(x) <= support + std::log(2.0) + 1e-15);
        const double h = 1e-4;
        CHECK(u0.derivative(x) == doctest::Approx((u0.value(x + h) - u0.value(x - h)) / (2 * h)).epsilon(1e-7));
    }
}

TEST_CASE("reference potential in two dimensions") {
    const ReferencePotential u0 = reference_potential(testing::box({{q(-2), q(2)}, {q(-1), q(3)}}));
    Eigen::VectorXd x(2);
    x << 0.4, -0.3;
    const Eigen::VectorXd g = u0.gradient(x);
    const Eigen::MatrixXd hs = u0.hessian(x);
    const double h = 1e-5;
    for (int i = 0; i < 2; ++i) {
        Eigen::VectorXd e = Eigen::VectorXd::Zero(2);
        e(i) = h;
        CHECK(g(i) == doctest::Approx((u0.value(x + e) - u0.value(x - e)) / (2 * h)).epsilon(1e-8));
    }
    CHECK(hs.selfadjointView<Eigen::Lower>().eigenvalues().minCoeff() > 0);
    CHECK_THROWS_AS(reference_potential(testing::interval(1, 3)), ValidationError);
}

TEST_CASE("two delta") {
    CHECK(two_delta(testing::toric(-1, 2)) == testing::interval(-4, 2));
}

TEST_CASE("flux function") {
    const auto hp = testing::toric(-1, 2);
    const MongeAmpere1D ma(hp, 0.0, coarse());
    CHECK(ma.left() == -4);
    CHECK(ma.right() == 2);
    CHECK(ma.d0() == 4);
    // Psi(q) = (q - a) / 2 for the toric case at xi = 0
    for (double qv : {-4.0, -1.5, 0.0, 2.0}) CHECK(ma.psi(qv) == doctest::Approx((qv + 4) / 2).epsilon(1e-14));
    CHECK(ma.mass_target() == doctest::Approx(3.0));
    CHECK(ma.psi_inverse(1.25) == doctest::Approx(-1.5).epsilon(1e-12));

    const MongeAmpere1D tilted(hp, 0.3, coarse());
    // int_{-4}^{2} e^{0.3 q} / 2 dq equals G(0.3) = int_{-1}^{2} e^{-0.6 p} dp
    const double g = (std::exp(0.6) - std::exp(-1.2)) / 0.6;
    CHECK(tilted.mass_target() == doctest::Approx(g).epsilon(1e-13));
}

TEST_CASE("solution at t0 has the right mass and a small pointwise residual") {
    const auto hp = testing::toric(-1, 2);
    const ContinuityState s = solve_at_t(hp, 0.1, 0.0, {}, coarse());
    CHECK(s.residual_norm <= 1e-8);
    CHECK(std::abs(s.mass - 3.0) <= 1e-4 * 3.0);
    CHECK(std::abs(s.centering) <= 1e-3 * 3.0);
    CHECK(s.max_grad_w <= 4 * (1 + 1e-9));
    const PointwiseResidual r = ma_residual(hp, s.x, s.u, 0.1, 0.0);
    CHECK(r.flagged.empty());
    CHECK(r.max_abs <= 1e-3);
}

TEST_CASE("pointwise residual converges under refinement") {
    const auto hp = testing::toric(-1, 2);
    double previous = 0;
    for (int grid : {401, 801, 1601}) {
        ContinuityOptions o;
        o.grid = grid;
        o.box = 20;
        const ContinuityState s = solve_at_t(hp, 0.3, 0.3, {}, o);
        const double r = ma_residual(hp, s.x, s.u, 0.3, 0.3).max_abs;
        if (previous > 0) CHECK(previous / r > 3.0);
        previous = r;
    }
}

TEST_CASE("pointwise residual of the reference potential") {
    const auto hp = testing::toric(-1, 2);
    const MongeAmpere1D ma(hp, 0.0, coarse());
    const auto& x = ma.nodes();
    const auto& u0 = ma.reference_values();
    const PointwiseResidual r = ma_residual(hp, x, u0, 0.0, 0.0);
    const double h = ma.h();
    for (std::size_t i = 1; i + 1 < x.size(); i += 97) {
        const double second = (u0[i + 1] - 2 * u0[i] + u0[i - 1]) / (h * h);
        const double roundoff = 1e-15 * std::abs(u0[i]) / (h * h);
        CHECK(std::abs(r.values[i] - (second / 2 - std::exp(-u0[i]))) <= roundoff + 1e-13);
    }
}

TEST_CASE("gradients leaving 2 delta are flagged") {
    const auto hp = testing::toric(-1, 2);
    std::vector<double> x, u;
    for (int i = 0; i <= 20; ++i) {
        x.push_back(-1 + 0.1 * i);
        u.push_back(3 * x.back());  // slope 3 > 2
    }
    const PointwiseResidual r = ma_residual(hp, x, u, 0.5, 0.0);
    CHECK(r.flagged.size() == 19);
    CHECK(std::isnan(r.values[5]));
}

TEST_CASE("symmetric interval gives an even solution") {
    const auto hp = testing::toric(-1, 1);
    const ContinuityState s = solve_at_t(hp, 0.6, 0.0, {}, coarse());
    const std::size_t n = s.u.size();
    for (std::size_t i = 0; i < n / 2; i += 50) CHECK(s.u[i] == doctest::Approx(s.u[n - 1 - i]).epsilon(1e-8));
    CHECK(std::abs(s.x_t) <= 1e-8);
}

TEST_CASE("only r = 1 is supported") {
    const auto hp = make_problem(testing::box({{q(-1), q(1)}, {q(-1), q(1)}}), zeros(2));
    CHECK_THROWS_AS(MongeAmpere1D(hp, 0.0, {}), ValidationError);
    CHECK_THROWS_AS(continuity_sweep(hp, 0.0), ValidationError);
}

TEST_CASE("sweep at xi = 0 stops near R(M)") {
    const auto hp = testing::toric(-1, 2);
    const ContinuityTrace tr = continuity_sweep(hp, 0.0, coarse());
    CHECK(tr.termination == Termination::Divergence);
    const RicciEstimate est = estimate_rm_numeric(tr);
    CHECK(est.value == doctest::Approx(2.0 / 3.0).epsilon(0.01));
    CHECK(est.uncertainty > 0);
    REQUIRE(tr.entries.size() > 2);
    for (std::size_t i = 1; i < tr.entries.size(); ++i) {
        CHECK(tr.entries[i].t > tr.entries[i - 1].t);
        // the minimum point escapes to one side
        CHECK(tr.entries[i].x_t * tr.entries.back().x_t >= 0);
        CHECK(std::abs(tr.entries[i].x_t) >= std::abs(tr.entries[i - 1].x_t) - 1e-9);
    }
    for (const auto& e : tr.entries) {
        CHECK(std::abs(e.mass - e.mass_target) <= 1e-3 * e.mass_target);
        CHECK(e.max_grad_w <= tr.d0 * (1 + 1e-9));
        CHECK(std::abs(e.centering) <= 1e-3 * tr.volume);
    }
}

TEST_CASE("sweep at the soliton vector reaches t = 1") {
    const auto hp = testing::toric(-1, 2);
    const ContinuityTrace tr = continuity_sweep(hp, xi_star(hp), coarse());
    CHECK(tr.termination == Termination::ReachedOne);
    CHECK(tr.entries.back().t == 1.0);
    CHECK(tr.entries.back().residual <= 1e-8);
    CHECK(estimate_rm_numeric(tr).value == 1.0);
    for (const auto& e : tr.entries) CHECK(std::abs(e.mass - e.mass_target) <= 1e-3 * e.mass_target);
}

TEST_CASE("Kahler-Einstein interval reaches t = 1 without a vector field") {
    const ContinuityTrace tr = continuity_sweep(testing::toric(-1, 1), 0.0, coarse());
    CHECK(tr.termination == Termination::ReachedOne);
}

TEST_CASE("trace csv") {
    const ContinuityTrace tr = continuity_sweep(testing::toric(-1, 1), 0.0, coarse());
    std::istringstream in(trace_csv(tr));
    std::string line;
    std::getline(in, line);
    CHECK(line == "t,m_t,x_t,mass,residual,sup_psi,step");
    std::size_t rows = 0;
    while (std::getline(in, line))
        if (!line.empty()) ++rows;
    CHECK(rows == tr.entries.size());
}

TEST_CASE("estimate of an empty trace") { CHECK_THROWS_AS(estimate_rm_numeric(ContinuityTrace{}), SolverError); }

}
