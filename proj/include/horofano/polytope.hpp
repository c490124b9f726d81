#ifndef HOROFANO_POLYTOPE_HPP
#define HOROFANO_POLYTOPE_HPP

#include "horofano/rational.hpp"
#include "horofano/root_system.hpp"

#include <optional>
#include <string>
#include <vector>

namespace horofano {

/// Half-space {y : <normal, y> <= offset}. Normals are stored as primitive integer vectors.
struct Facet {
    RVec normal;
    Rational offset;

    bool operator==(const Facet&) const = default;
};

/// Full-dimensional bounded rational polytope in both representations.
///
/// Vertices are sorted lexicographically, facets lexicographically by normal, so two
/// polytopes describing the same set compare equal. Constructors reject unbounded,
/// empty and lower-dimensional input with ValidationError.
class Polytope {
public:
    static Polytope from_vertices(std::vector<RVec> points);
    static Polytope from_halfspaces(std::vector<Facet> inequalities);

    int dim() const { return dim_; }
    const std::vector<RVec>& vertices() const { return vertices_; }
    const std::vector<Facet>& facets() const { return facets_; }

    bool contains(const RVec& y) const;
    bool contains_in_interior(const RVec& y) const;

    /// Indices of the facets tight at y.
    std::vector<std::size_t> tight_facets(const RVec& y) const;

    Polytope translated(const RVec& shift) const;
    /// {center - p : p in P}
    Polytope reflected(const RVec& center) const;
    /// {lambda p}, lambda > 0
    Polytope dilated(const Rational& lambda) const;
    /// {T p} for invertible T.
    Polytope transformed(const RMat& t) const;

    Rational volume() const;

    bool operator==(const Polytope& other) const {
        return dim_ == other.dim_ && vertices_ == other.vertices_ && facets_ == other.facets_;
    }

private:
    Polytope() = default;

    int dim_ = 0;
    std::vector<RVec> vertices_;
    std::vector<Facet> facets_;
};

/// dim+1 affinely independent vertices.
struct Simplex {
    std::vector<RVec> vertices;

    int dim() const { return static_cast<int>(vertices.size()) - 1; }
    /// Unsigned volume |det(v_i - v_0)| / dim!.
    Rational volume() const;
};

/// Q* = {y : <x, y> >= -1 for all x in Q}. Requires 0 in Int(Q).
Polytope dual_polytope(const Polytope& q);

/// max over vertices of <x, v>.
Rational support_value(const Polytope& p, const RVec& x);

/// Deterministic fan triangulation: the polytope is coned from its lexicographically least
/// vertex over the recursively triangulated facets that avoid it.
std::vector<Simplex> triangulate(const Polytope& p);

/// Delta+ = kappa + Q*. Checks kappa in Int(Delta+) and 0 in Int(Delta+ - kappa).
Polytope moment_polytope(const Polytope& q, const RVec& kappa);
Polytope moment_polytope(const Polytope& q, const ParabolicDatum& pd);

/// Delta = kappa - Delta+. Requires kappa in Int(Delta+).
Polytope delta_from_moment(const Polytope& moment, const RVec& kappa);
Polytope delta_from_moment(const Polytope& moment, const ParabolicDatum& pd);

/// A full-rank lattice given by basis rows.
struct Lattice {
    RMat basis;

    static Lattice standard(std::size_t dim);
    bool contains(const RVec& v) const;
    /// Lattice of functionals integral on this lattice (rows of the inverse transpose).
    Lattice dual() const;
};

/// Linear embedding of the a1 coordinates into the character space: p = E y, where
/// the columns of E (stored as rows of `basis`) span a1*. Identity when r = dim.
struct A1Embedding {
    RMat basis;  // r rows of length dim

    static A1Embedding identity(std::size_t dim);
    std::size_t r() const { return basis.size(); }
    RVec to_ambient(const RVec& y) const;
    /// y with E y = p; throws ValidationError when p is not in the span.
    RVec from_ambient(const RVec& p) const;
    /// The functional p -> (form, p) restricted to a1*: coefficients E^T G form.
    RVec pullback(const RMat& gram, const RVec& form) const;
};

struct ReflectivityCondition {
    bool passed = true;
    std::vector<std::string> witnesses;
};

/// One entry per condition of G/H-reflectivity plus the dominance check.
struct ReflectivityReport {
    /// (1) each vertex of Q is a lattice point of N or equals coroot/a_alpha.
    ReflectivityCondition vertices_in_lattice;
    /// Per vertex: "lattice", "coroot:<k>" (index into phi_q_plus) or "none".
    std::vector<std::string> vertex_branches;
    /// (2) vertices of Q* lie in the character lattice.
    ReflectivityCondition dual_vertices_in_lattice;
    std::vector<RVec> offending_dual_vertices;
    /// (3) coroot/a_alpha in Q for every alpha in phi_q_plus.
    ReflectivityCondition coroots_in_q;
    /// (4) Delta+ = kappa + Q* lies in the closed dominant chamber.
    ReflectivityCondition dominant;
    /// max over alpha in phi_q_plus and vertices p of Delta+ of (alpha, p).
    Rational f_bound = 0;

    bool all_passed() const {
        return vertices_in_lattice.passed && dual_vertices_in_lattice.passed && coroots_in_q.passed &&
               dominant.passed;
    }
};

/// Q is given in a1 coordinates. `characters` is the character lattice in a1* coordinates;
/// its dual is used for one-parameter subgroups. Failures are report entries, not exceptions,
/// except when 0 is not interior to Q (ValidationError).
ReflectivityReport validate_reflective(const Polytope& q, const RootDatum& rd, const ParabolicDatum& pd,
                                       const A1Embedding& embedding, const Lattice& characters);
ReflectivityReport validate_reflective(const Polytope& q, const RootDatum& rd, const ParabolicDatum& pd);

}  // namespace horofano

#endif
