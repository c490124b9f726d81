#ifndef HOROFANO_PROBLEM_HPP
#define HOROFANO_PROBLEM_HPP

#include "horofano/dh_integral.hpp"
#include "horofano/polytope.hpp"
#include "horofano/root_system.hpp"

namespace horofano {

/// Combinatorial data of one Fano horospherical manifold, with every vector expressed in
/// a1* coordinates: the moment polytope Delta+, the shift kappa = sum of phi_Q+ and the
/// Duistermaat-Heckman density prod_{beta in phi_Q+} (beta, p).
struct HorosphericalProblem {
    RootDatum rd;
    ParabolicDatum pd;
    A1Embedding embedding;
    Polytope moment;
    RVec kappa;
    DHDensity density;

    int a1_dim() const { return moment.dim(); }

    /// Checks kappa in Int(Delta+), density >= 0 on Delta+ and matching dimensions.
    /// Throws ValidationError naming the failed condition.
    void validate() const;
};

/// Builds and validates the problem from root data; kappa and the density are derived
/// from pd and pulled back through the embedding.
HorosphericalProblem make_problem(const RootDatum& rd, const ParabolicDatum& pd, const Polytope& moment,
                                  const A1Embedding& embedding);
HorosphericalProblem make_problem(const RootDatum& rd, const ParabolicDatum& pd, const Polytope& moment);

/// A problem given directly by (Delta+, kappa, density), over a torus with no roots.
/// Used for fixtures whose density is not of root type.
HorosphericalProblem make_problem(const Polytope& moment, const RVec& kappa, const DHDensity& density = {});

}  // namespace horofano

#endif
