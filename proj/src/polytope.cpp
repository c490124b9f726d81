#include "horofano/polytope.hpp"

#include "horofano/errors.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

namespace horofano {

namespace {

Facet normalized(Facet f) {
    Rational s = primitive_scale(f.normal);
    f.normal = scale(s, f.normal);
    f.offset *= s;
    return f;
}

bool facet_less(const Facet& a, const Facet& b) {
    if (a.normal != b.normal) return lex_less(a.normal, b.normal);
    return a.offset < b.offset;
}

// Calls fn on every k-subset of {0..n-1} in lexicographic order.
void for_each_combination(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& fn) {
    if (k > n) return;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        fn(idx);
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
        if (i == 0) return;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

// Normal of the hyperplane spanned by d-1 difference vectors in R^d (generalized cross product).
RVec hyperplane_normal(const RMat& diffs, std::size_t d) {
    RVec normal(d);
    for (std::size_t j = 0; j < d; ++j) {
        RMat minor;
        for (const auto& row : diffs) {
            RVec r;
            for (std::size_t c = 0; c < d; ++c)
                if (c != j) r.push_back(row[c]);
            minor.push_back(std::move(r));
        }
        Rational det = minor.empty() ? Rational(1) : determinant(minor);
        normal[j] = (j % 2 == 0) ? det : Rational(-det);
    }
    return normal;
}

void check_dimensions(const std::vector<RVec>& points, std::size_t d) {
    for (const auto& p : points)
        if (p.size() != d) throw ValidationError("polytope: inconsistent point dimensions");
}

}  // namespace

Polytope Polytope::from_vertices(std::vector<RVec> points) {
    if (points.empty()) throw ValidationError("polytope: empty vertex list");
    const std::size_t d = points[0].size();
    if (d == 0) throw ValidationError("polytope: zero ambient dimension");
    check_dimensions(points, d);
    std::sort(points.begin(), points.end(), lex_less);
    points.erase(std::unique(points.begin(), points.end()), points.end());
    if (affine_dimension(points) < static_cast<int>(d)) {
        throw ValidationError("polytope is lower-dimensional (affine dimension " +
                              std::to_string(affine_dimension(points)) + " < " + std::to_string(d) + ")");
    }

    std::vector<Facet> facets;
    for_each_combination(points.size(), d, [&](const std::vector<std::size_t>& idx) {
        RMat diffs;
        for (std::size_t i = 1; i < idx.size(); ++i) diffs.push_back(sub(points[idx[i]], points[idx[0]]));
        RVec normal = hyperplane_normal(diffs, d);
        if (is_zero(normal)) return;
        Rational offset = dot(normal, points[idx[0]]);
        bool any_above = false;
        bool any_below = false;
        for (const auto& p : points) {
            Rational v = dot(normal, p);
            if (v > offset) any_above = true;
            if (v < offset) any_below = true;
            if (any_above && any_below) return;
        }
        if (any_above) facets.push_back(normalized({scale(-1, normal), -offset}));
        else facets.push_back(normalized({normal, offset}));
    });
    std::sort(facets.begin(), facets.end(), facet_less);
    facets.erase(std::unique(facets.begin(), facets.end()), facets.end());

    Polytope p;
    p.dim_ = static_cast<int>(d);
    p.facets_ = std::move(facets);
    for (const auto& pt : points) {
        RMat tight;
        for (const auto& f : p.facets_)
            if (dot(f.normal, pt) == f.offset) tight.push_back(f.normal);
        if (!tight.empty() && rank(tight) == d) p.vertices_.push_back(pt);
    }
    return p;
}

Polytope Polytope::from_halfspaces(std::vector<Facet> inequalities) {
    if (inequalities.empty()) throw ValidationError("polytope: empty inequality list");
    const std::size_t d = inequalities[0].normal.size();
    if (d == 0) throw ValidationError("polytope: zero ambient dimension");
    std::vector<Facet> ineqs;
    for (auto& f : inequalities) {
        if (f.normal.size() != d) throw ValidationError("polytope: inconsistent inequality dimensions");
        if (is_zero(f.normal)) {
            if (f.offset < 0) throw ValidationError("polytope is empty (infeasible constant inequality)");
            continue;
        }
        ineqs.push_back(normalized(std::move(f)));
    }
    std::sort(ineqs.begin(), ineqs.end(), facet_less);
    ineqs.erase(std::unique(ineqs.begin(), ineqs.end()), ineqs.end());

    // Bounded iff the normals positively span R^d, i.e. 0 is interior to their convex hull.
    std::vector<RVec> normals;
    for (const auto& f : ineqs) normals.push_back(f.normal);
    std::sort(normals.begin(), normals.end(), lex_less);
    normals.erase(std::unique(normals.begin(), normals.end()), normals.end());
    bool bounded = affine_dimension(normals) == static_cast<int>(d);
    if (bounded) bounded = Polytope::from_vertices(normals).contains_in_interior(zeros(d));
    if (!bounded) throw ValidationError("polytope is unbounded (normals do not positively span the space)");

    std::vector<RVec> vertices;
    for_each_combination(ineqs.size(), d, [&](const std::vector<std::size_t>& idx) {
        RMat a;
        RVec b;
        for (auto i : idx) {
            a.push_back(ineqs[i].normal);
            b.push_back(ineqs[i].offset);
        }
        if (determinant(a) == 0) return;
        RVec y;
        solve(a, b, y);
        for (const auto& f : ineqs)
            if (dot(f.normal, y) > f.offset) return;
        vertices.push_back(std::move(y));
    });
    if (vertices.empty()) throw ValidationError("polytope is empty");
    return Polytope::from_vertices(std::move(vertices));
}

bool Polytope::contains(const RVec& y) const {
    return std::all_of(facets_.begin(), facets_.end(), [&](const Facet& f) { return dot(f.normal, y) <= f.offset; });
}

bool Polytope::contains_in_interior(const RVec& y) const {
    return std::all_of(facets_.begin(), facets_.end(), [&](const Facet& f) { return dot(f.normal, y) < f.offset; });
}

std::vector<std::size_t> Polytope::tight_facets(const RVec& y) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < facets_.size(); ++i)
        if (dot(facets_[i].normal, y) == facets_[i].offset) out.push_back(i);
    return out;
}

Polytope Polytope::translated(const RVec& shift) const {
    std::vector<RVec> pts;
    for (const auto& v : vertices_) pts.push_back(add(v, shift));
    return from_vertices(std::move(pts));
}

Polytope Polytope::reflected(const RVec& center) const {
    std::vector<RVec> pts;
    for (const auto& v : vertices_) pts.push_back(sub(center, v));
    return from_vertices(std::move(pts));
}

Polytope Polytope::dilated(const Rational& lambda) const {
    if (lambda <= 0) throw ValidationError("dilation factor must be positive");
    std::vector<RVec> pts;
    for (const auto& v : vertices_) pts.push_back(scale(lambda, v));
    return from_vertices(std::move(pts));
}

Polytope Polytope::transformed(const RMat& t) const {
    if (determinant(t) == 0) throw ValidationError("linear map is not invertible");
    std::vector<RVec> pts;
    for (const auto& v : vertices_) pts.push_back(mat_vec(t, v));
    return from_vertices(std::move(pts));
}

Rational Polytope::volume() const {
    Rational v = 0;
    for (const auto& s : triangulate(*this)) v += s.volume();
    return v;
}

Rational Simplex::volume() const {
    RMat edges;
    for (std::size_t i = 1; i < vertices.size(); ++i) edges.push_back(sub(vertices[i], vertices[0]));
    Rational det = determinant(edges);
    if (det < 0) det = -det;
    Integer fact = 1;
    for (int i = 2; i <= dim(); ++i) fact *= i;
    return det / Rational(fact);
}

Polytope dual_polytope(const Polytope& q) {
    const std::size_t d = static_cast<std::size_t>(q.dim());
    if (!q.contains_in_interior(zeros(d))) throw ValidationError("dual_polytope: 0 is not in the interior of Q");
    // Facet <n, x> <= c of Q (c > 0) gives the dual vertex -n / c.
    std::vector<RVec> pts;
    for (const auto& f : q.facets()) pts.push_back(scale(Rational(-1) / f.offset, f.normal));
    return Polytope::from_vertices(std::move(pts));
}

Rational support_value(const Polytope& p, const RVec& x) {
    const auto& vs = p.vertices();
    Rational best = dot(x, vs.front());
    for (std::size_t i = 1; i < vs.size(); ++i) best = std::max(best, dot(x, vs[i]));
    return best;
}

std::vector<Simplex> triangulate(const Polytope& p) {
    const auto& verts = p.vertices();
    std::vector<std::vector<std::size_t>> facet_vertices;
    for (const auto& f : p.facets()) {
        std::vector<std::size_t> ids;
        for (std::size_t i = 0; i < verts.size(); ++i)
            if (dot(f.normal, verts[i]) == f.offset) ids.push_back(i);
        facet_vertices.push_back(std::move(ids));
    }

    auto face_dim = [&](const std::vector<std::size_t>& ids) {
        std::vector<RVec> pts;
        for (auto i : ids) pts.push_back(verts[i]);
        return affine_dimension(pts);
    };

    // Vertices are sorted lexicographically, so the smallest index is the lex-least vertex.
    std::function<std::vector<std::vector<std::size_t>>(const std::vector<std::size_t>&, int)> fan;
    fan = [&](const std::vector<std::size_t>& face, int k) -> std::vector<std::vector<std::size_t>> {
        if (face.size() == static_cast<std::size_t>(k) + 1) return {face};
        const std::size_t apex = face.front();
        std::vector<std::vector<std::size_t>> subfaces;
        for (const auto& fv : facet_vertices) {
            std::vector<std::size_t> s;
            std::set_intersection(face.begin(), face.end(), fv.begin(), fv.end(), std::back_inserter(s));
            if (s.size() == face.size() || s.empty() || s.front() == apex) continue;
            if (face_dim(s) != k - 1) continue;
            if (std::find(subfaces.begin(), subfaces.end(), s) == subfaces.end()) subfaces.push_back(std::move(s));
        }
        std::vector<std::vector<std::size_t>> out;
        for (const auto& s : subfaces) {
            for (auto cell : fan(s, k - 1)) {
                cell.insert(cell.begin(), apex);
                out.push_back(std::move(cell));
            }
        }
        return out;
    };

    std::vector<std::size_t> all(verts.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    std::vector<Simplex> simplices;
    for (const auto& cell : fan(all, p.dim())) {
        Simplex s;
        for (auto i : cell) s.vertices.push_back(verts[i]);
        simplices.push_back(std::move(s));
    }
    return simplices;
}

Polytope moment_polytope(const Polytope& q, const RVec& kappa) {
    if (kappa.size() != static_cast<std::size_t>(q.dim())) throw ValidationError("moment_polytope: kappa has wrong dimension");
    Polytope moment = dual_polytope(q).translated(kappa);
    if (!moment.contains_in_interior(kappa)) throw ValidationError("moment polytope does not contain kappa in its interior");
    if (!moment.translated(scale(-1, kappa)).contains_in_interior(zeros(kappa.size())))
        throw ValidationError("0 is not interior to Delta+ - kappa");
    return moment;
}

Polytope moment_polytope(const Polytope& q, const ParabolicDatum& pd) { return moment_polytope(q, pd.kappa); }

Polytope delta_from_moment(const Polytope& moment, const RVec& kappa) {
    if (kappa.size() != static_cast<std::size_t>(moment.dim()))
        throw ValidationError("delta_from_moment: kappa has wrong dimension");
    if (!moment.contains_in_interior(kappa))
        throw ValidationError("kappa is not in the interior of the moment polytope");
    return moment.reflected(kappa);
}

Polytope delta_from_moment(const Polytope& moment, const ParabolicDatum& pd) {
    return delta_from_moment(moment, pd.kappa);
}

Lattice Lattice::standard(std::size_t dim) { return {identity(dim)}; }

bool Lattice::contains(const RVec& v) const {
    RVec c;
    if (!solve(transpose(basis), v, c)) return false;
    return std::all_of(c.begin(), c.end(), [](const Rational& x) { return is_integer(x); });
}

Lattice Lattice::dual() const { return {transpose(inverse(basis))}; }

A1Embedding A1Embedding::identity(std::size_t dim) { return {horofano::identity(dim)}; }

RVec A1Embedding::to_ambient(const RVec& y) const { return mat_vec(transpose(basis), y); }

RVec A1Embedding::from_ambient(const RVec& p) const {
    RVec y;
    if (!solve(transpose(basis), p, y)) throw ValidationError("vector does not lie in the a1* subspace");
    return y;
}

RVec A1Embedding::pullback(const RMat& gram, const RVec& form) const { return mat_vec(basis, mat_vec(gram, form)); }

namespace {

std::string vec_string(const RVec& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + to_string(v[i]);
    return s + ")";
}

}  // namespace

ReflectivityReport validate_reflective(const Polytope& q, const RootDatum& rd, const ParabolicDatum& pd,
                                       const A1Embedding& embedding, const Lattice& characters) {
    const std::size_t r = static_cast<std::size_t>(q.dim());
    if (embedding.r() != r) throw ValidationError("validate_reflective: Q dimension differs from dim a1");
    if (!q.contains_in_interior(zeros(r))) throw ValidationError("validate_reflective: 0 is not in the interior of Q");
    const Lattice cocharacters = characters.dual();

    ReflectivityReport report;
    std::vector<RVec> scaled_coroots;
    for (std::size_t k = 0; k < pd.phi_q_plus.size(); ++k) {
        RVec c = embedding.pullback(rd.gram, coroot(rd, pd.phi_q_plus[k]));
        scaled_coroots.push_back(scale(Rational(1) / Rational(pd.a_alpha[k]), c));
    }

    for (const auto& v : q.vertices()) {
        if (cocharacters.contains(v)) {
            report.vertex_branches.push_back("lattice");
            continue;
        }
        auto it = std::find(scaled_coroots.begin(), scaled_coroots.end(), v);
        if (it != scaled_coroots.end()) {
            report.vertex_branches.push_back("coroot:" + std::to_string(it - scaled_coroots.begin()));
            continue;
        }
        report.vertex_branches.push_back("none");
        report.vertices_in_lattice.passed = false;
        report.vertices_in_lattice.witnesses.push_back("vertex " + vec_string(v) +
                                                       " is neither a lattice point nor a scaled coroot");
    }

    const Polytope dual = dual_polytope(q);
    for (const auto& v : dual.vertices()) {
        if (characters.contains(v)) continue;
        report.dual_vertices_in_lattice.passed = false;
        report.offending_dual_vertices.push_back(v);
        report.dual_vertices_in_lattice.witnesses.push_back("dual vertex " + vec_string(v) +
                                                            " is not in the character lattice");
    }

    for (std::size_t k = 0; k < scaled_coroots.size(); ++k) {
        if (q.contains(scaled_coroots[k])) continue;
        report.coroots_in_q.passed = false;
        report.coroots_in_q.witnesses.push_back("coroot/a_alpha " + vec_string(scaled_coroots[k]) + " of root " +
                                                vec_string(pd.phi_q_plus[k]) + " is outside Q");
    }

    const RVec kappa = embedding.from_ambient(pd.kappa);
    const Polytope moment = dual.translated(kappa);
    for (const auto& alpha : rd.positive_roots) {
        RVec form = embedding.pullback(rd.gram, alpha);
        for (const auto& p : moment.vertices()) {
            if (dot(form, p) >= 0) continue;
            report.dominant.passed = false;
            report.dominant.witnesses.push_back("(alpha, p) < 0 for alpha " + vec_string(alpha) + " at vertex " +
                                                vec_string(p));
        }
    }
    for (const auto& beta : pd.phi_q_plus) {
        RVec form = embedding.pullback(rd.gram, beta);
        for (const auto& p : moment.vertices()) report.f_bound = std::max(report.f_bound, dot(form, p));
    }
    return report;
}

ReflectivityReport validate_reflective(const Polytope& q, const RootDatum& rd, const ParabolicDatum& pd) {
    const std::size_t d = static_cast<std::size_t>(q.dim());
    return validate_reflective(q, rd, pd, A1Embedding::identity(d), Lattice::standard(d));
}

}  // namespace horofano
