#include "horofano/problem.hpp"

#include "horofano/errors.hpp"

namespace horofano {

void HorosphericalProblem::validate() const {
    const auto r = static_cast<std::size_t>(moment.dim());
    if (kappa.size() != r) throw ValidationError("kappa dimension differs from dim a1");
    if (embedding.r() != r) throw ValidationError("a1 embedding dimension differs from the moment polytope dimension");
    for (const auto& f : density.forms)
        if (f.coeffs.size() != r) throw ValidationError("density form dimension differs from dim a1");
    if (!moment.contains_in_interior(kappa))
        throw ValidationError("interiority: kappa (= -2 rho_P) is not in the interior of Delta+");
    if (!density.nonnegative_on(moment))
        throw ValidationError("density: a Duistermaat-Heckman factor (beta, p) is negative on Delta+");
}

HorosphericalProblem make_problem(const RootDatum& rd, const ParabolicDatum& pd, const Polytope& moment,
                                  const A1Embedding& embedding) {
    HorosphericalProblem hp{rd, pd, embedding, moment, embedding.from_ambient(pd.kappa),
                            DHDensity::from_roots(rd, pd, embedding)};
    hp.validate();
    return hp;
}

HorosphericalProblem make_problem(const RootDatum& rd, const ParabolicDatum& pd, const Polytope& moment) {
    return make_problem(rd, pd, moment, A1Embedding::identity(static_cast<std::size_t>(rd.dim)));
}

HorosphericalProblem make_problem(const Polytope& moment, const RVec& kappa, const DHDensity& density) {
    RootDatum rd = build_root_system({}, moment.dim());
    ParabolicDatum pd = parabolic_data(rd, {});
    HorosphericalProblem hp{rd, pd, A1Embedding::identity(static_cast<std::size_t>(moment.dim())), moment, kappa,
                            density};
    hp.validate();
    return hp;
}

}  // namespace horofano
