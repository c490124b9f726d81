#ifndef HOROFANO_RICCI_BOUND_HPP
#define HOROFANO_RICCI_BOUND_HPP

#include "horofano/polytope.hpp"
#include "horofano/problem.hpp"

#include <optional>
#include <vector>

namespace horofano {

struct RayExit {
    Rational scalar;
    /// Facet indices (into P.facets()) tight at scalar * direction.
    std::vector<std::size_t> tight_facets;
};

/// Largest s with s * direction in P, by exact facet arithmetic.
/// Requires 0 in Int(P); throws ValidationError for a zero direction.
RayExit ray_exit(const Polytope& p, const RVec& direction);

struct RicciBoundResult {
    /// R(M), in (0, 1].
    Rational t_infinity = 1;
    /// s* with -s* b on the boundary of Delta+ - kappa; empty in the Kahler-Einstein case.
    std::optional<Rational> exit_scalar;
    /// Facets of Delta+ - kappa active at the exit point.
    std::vector<std::size_t> tight_facets;
    /// b = Bar_DH(Delta+) - kappa.
    RVec gap;
};

/// t_infinity = s* / (1 + s*) where the ray from 0 in direction -(Bar_DH - kappa) leaves
/// Delta+ - kappa at s*. Returns 1 when Bar_DH = kappa exactly.
RicciBoundResult greatest_ricci_lower_bound(const HorosphericalProblem& hp);

}  // namespace horofano

#endif
