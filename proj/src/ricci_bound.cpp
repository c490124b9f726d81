#include "horofano/ricci_bound.hpp"

#include "horofano/dh_integral.hpp"
#include "horofano/errors.hpp"

namespace horofano {

RayExit ray_exit(const Polytope& p, const RVec& direction) {
    if (direction.size() != static_cast<std::size_t>(p.dim())) throw ValidationError("ray_exit: direction has wrong dimension");
    if (is_zero(direction)) throw ValidationError("ray_exit: zero direction");
    if (!p.contains_in_interior(zeros(direction.size()))) throw ValidationError("ray_exit: 0 is not interior to P");

    RayExit out;
    bool found = false;
    for (std::size_t i = 0; i < p.facets().size(); ++i) {
        const auto& f = p.facets()[i];
        const Rational rate = dot(f.normal, direction);
        if (rate <= 0) continue;
        const Rational s = f.offset / rate;
        if (!found || s < out.scalar) {
            out.scalar = s;
            out.tight_facets = {i};
            found = true;
        } else if (s == out.scalar) {
            out.tight_facets.push_back(i);
        }
    }
    // Bounded P always has a facet the ray crosses.
    if (!found) throw std::logic_error("ray_exit: ray does not leave the polytope");
    return out;
}

RicciBoundResult greatest_ricci_lower_bound(const HorosphericalProblem& hp) {
    RicciBoundResult r;
    r.gap = sub(dh_barycenter(hp.moment, hp.density), hp.kappa);
    if (is_zero(r.gap)) {
        r.t_infinity = 1;
        return r;
    }
    const Polytope shifted = hp.moment.translated(scale(-1, hp.kappa));
    RayExit exit = ray_exit(shifted, scale(-1, r.gap));
    r.exit_scalar = exit.scalar;
    r.tight_facets = std::move(exit.tight_facets);
    // t / (t - 1) = -s  <=>  t = s / (1 + s)
    r.t_infinity = exit.scalar / (1 + exit.scalar);
    return r;
}

}  // namespace horofano
