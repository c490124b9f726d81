#include "horofano/io.hpp"

#include "horofano/errors.hpp"
#include "horofano/ricci_bound.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace horofano {

using nlohmann::json;

namespace {

std::string at(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

std::string field(const std::string& path, const std::string& key) { return path + "." + key; }

const json& require(const json& obj, const std::string& key, const std::string& path) {
    if (!obj.contains(key)) throw SchemaError(field(path, key), "missing required field");
    return obj.at(key);
}

void require_object(const json& j, const std::string& path) {
    if (!j.is_object()) throw SchemaError(path, "expected an object");
}

void require_array(const json& j, const std::string& path) {
    if (!j.is_array()) throw SchemaError(path, "expected an array");
}

void reject_unknown(const json& obj, std::initializer_list<const char*> known, const std::string& path) {
    for (const auto& [key, value] : obj.items()) {
        if (std::none_of(known.begin(), known.end(), [&](const char* k) { return key == k; }))
            throw SchemaError(field(path, key), "unknown field");
    }
}

double json_number(const json& j, const std::string& path) {
    if (!j.is_number()) throw SchemaError(path, "expected a number");
    return j.get<double>();
}

int json_int(const json& j, const std::string& path) {
    if (!j.is_number_integer()) throw SchemaError(path, "expected an integer");
    return j.get<int>();
}

RootFactor json_factor(const json& j, const std::string& path) {
    RootFactor f;
    std::string family;
    if (j.is_array()) {
        if (j.size() != 2 || !j[0].is_string()) throw SchemaError(path, "expected [family, rank]");
        family = j[0].get<std::string>();
        f.rank = json_int(j[1], at(path, 1));
    } else if (j.is_object()) {
        reject_unknown(j, {"family", "rank"}, path);
        const json& fam = require(j, "family", path);
        if (!fam.is_string()) throw SchemaError(field(path, "family"), "expected a string");
        family = fam.get<std::string>();
        f.rank = json_int(require(j, "rank", path), field(path, "rank"));
    } else {
        throw SchemaError(path, "expected [family, rank] or {\"family\", \"rank\"}");
    }
    if (family.size() != 1 || std::string("ABCD").find(family[0]) == std::string::npos)
        throw SchemaError(path, "family must be one of A, B, C, D");
    f.family = family[0];
    return f;
}

ProblemOptions json_options(const json& j, const std::string& path) {
    require_object(j, path);
    reject_unknown(j, {"tol", "grid", "box", "t0", "quad_order", "quad_rel_tol"}, path);
    ProblemOptions o;
    if (j.contains("tol")) o.tol = json_number(j["tol"], field(path, "tol"));
    if (j.contains("grid")) o.grid = json_int(j["grid"], field(path, "grid"));
    if (j.contains("box")) o.box = json_number(j["box"], field(path, "box"));
    if (j.contains("t0")) o.t0 = json_number(j["t0"], field(path, "t0"));
    if (j.contains("quad_order")) o.quad_order = json_int(j["quad_order"], field(path, "quad_order"));
    if (j.contains("quad_rel_tol")) o.quad_rel_tol = json_number(j["quad_rel_tol"], field(path, "quad_rel_tol"));
    if (!(o.tol > 0)) throw SchemaError(field(path, "tol"), "must be positive");
    if (o.grid < 5) throw SchemaError(field(path, "grid"), "must be at least 5");
    if (o.box < 0) throw SchemaError(field(path, "box"), "must be nonnegative (0 selects automatically)");
    if (!(o.t0 > 0 && o.t0 < 1)) throw SchemaError(field(path, "t0"), "must lie in (0, 1)");
    if (o.quad_order < 0) throw SchemaError(field(path, "quad_order"), "must be nonnegative");
    if (!(o.quad_rel_tol > 0)) throw SchemaError(field(path, "quad_rel_tol"), "must be positive");
    return o;
}

QuadratureOptions quadrature(const ProblemOptions& o) {
    QuadratureOptions q;
    q.order = o.quad_order;
    q.rel_tol = o.quad_rel_tol;
    return q;
}

json rvec_list(const std::vector<RVec>& vs) {
    json out = json::array();
    for (const auto& v : vs) out.push_back(to_json(v));
    return out;
}

json double_list(const Eigen::VectorXd& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
    return out;
}

json condition_json(const ReflectivityCondition& c) { return {{"passed", c.passed}, {"witnesses", c.witnesses}}; }

json sweep_summary(const ContinuityTrace& trace, const std::string& path) {
    json s;
    s["termination"] = to_string(trace.termination);
    s["detail"] = trace.detail;
    s["xi"] = trace.xi;
    s["box"] = trace.box;
    s["grid"] = trace.grid;
    s["d0"] = trace.d0;
    s["accepted_steps"] = trace.entries.size();
    s["trace"] = path.empty() ? json(nullptr) : json(path);
    if (trace.entries.empty()) return s;

    const RicciEstimate est = estimate_rm_numeric(trace);
    s["estimate"] = est.value;
    s["uncertainty"] = est.uncertainty;
    s["final_t"] = trace.entries.back().t;
    s["final_residual"] = trace.entries.back().residual;

    double mass_err = 0, centering = 0, grad = 0, margin = trace.d0;
    double m_lo = trace.entries.front().m_t, m_hi = m_lo;
    double sup_lo = trace.entries.front().sup_psi, sup_hi = sup_lo;
    for (const auto& e : trace.entries) {
        mass_err = std::max(mass_err, std::abs(e.mass - e.mass_target) / e.mass_target);
        centering = std::max(centering, std::abs(e.centering) / trace.volume);
        grad = std::max(grad, e.max_grad_w);
        margin = std::min(margin, e.grad_margin);
        m_lo = std::min(m_lo, e.m_t);
        m_hi = std::max(m_hi, e.m_t);
        sup_lo = std::min(sup_lo, e.sup_psi);
        sup_hi = std::max(sup_hi, e.sup_psi);
    }
    s["max_mass_rel_error"] = mass_err;
    s["max_centering_over_V"] = centering;
    s["max_grad_w"] = grad;
    s["min_grad_margin"] = margin;
    s["m_t_range"] = {m_lo, m_hi};
    s["sup_psi_range"] = {sup_lo, sup_hi};
    return s;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << text;
    if (!f) throw std::runtime_error("write failed for " + path);
}

ContinuityOptions continuity_options(const ProblemOptions& o) {
    ContinuityOptions c;
    c.grid = o.grid;
    c.box = o.box;
    c.t0 = o.t0;
    return c;
}

}  // namespace

Rational json_rational(const json& j, const std::string& path) {
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_string()) {
        try {
            return parse_rational(j.get<std::string>());
        } catch (const std::invalid_argument& e) {
            throw SchemaError(path, e.what());
        }
    }
    throw SchemaError(path, "expected a rational string \"p/q\" or an integer");
}

RVec json_rvec(const json& j, const std::string& path) {
    require_array(j, path);
    RVec v;
    for (std::size_t i = 0; i < j.size(); ++i) v.push_back(json_rational(j[i], at(path, i)));
    return v;
}

RMat json_rmat(const json& j, const std::string& path) {
    require_array(j, path);
    RMat m;
    for (std::size_t i = 0; i < j.size(); ++i) {
        m.push_back(json_rvec(j[i], at(path, i)));
        if (m.back().size() != m.front().size()) throw SchemaError(at(path, i), "rows have different lengths");
    }
    if (m.empty() || m.front().empty()) throw SchemaError(path, "empty matrix");
    return m;
}

Polytope json_polytope(const json& j, const std::string& path) {
    require_object(j, path);
    const bool has_v = j.contains("vertices");
    const bool has_f = j.contains("facets");
    if (has_v == has_f) throw SchemaError(path, "exactly one of \"vertices\" and \"facets\" is required");
    reject_unknown(j, {"vertices", "facets"}, path);
    if (has_v) {
        const RMat vs = json_rmat(j["vertices"], field(path, "vertices"));
        return Polytope::from_vertices(vs);
    }
    const json& fs = j["facets"];
    const std::string fpath = field(path, "facets");
    require_array(fs, fpath);
    std::vector<Facet> facets;
    for (std::size_t i = 0; i < fs.size(); ++i) {
        const std::string p = at(fpath, i);
        require_object(fs[i], p);
        reject_unknown(fs[i], {"normal", "offset"}, p);
        Facet f{json_rvec(require(fs[i], "normal", p), field(p, "normal")),
                json_rational(require(fs[i], "offset", p), field(p, "offset"))};
        if (!facets.empty() && f.normal.size() != facets.front().normal.size())
            throw SchemaError(field(p, "normal"), "dimension differs from the first facet");
        facets.push_back(std::move(f));
    }
    if (facets.empty()) throw SchemaError(fpath, "no facets");
    return Polytope::from_halfspaces(std::move(facets));
}

json to_json(const Rational& q) { return to_string(q); }

json to_json(const RVec& v) {
    json out = json::array();
    for (const auto& x : v) out.push_back(to_string(x));
    return out;
}

json to_json(const Polytope& p) {
    json facets = json::array();
    for (const auto& f : p.facets()) facets.push_back({{"normal", to_json(f.normal)}, {"offset", to_json(f.offset)}});
    return {{"vertices", rvec_list(p.vertices())}, {"facets", facets}};
}

json to_json(const ReflectivityReport& r) {
    return {{"all_passed", r.all_passed()},
            {"vertices_in_lattice", condition_json(r.vertices_in_lattice)},
            {"vertex_branches", r.vertex_branches},
            {"dual_vertices_in_lattice", condition_json(r.dual_vertices_in_lattice)},
            {"offending_dual_vertices", rvec_list(r.offending_dual_vertices)},
            {"coroots_in_q", condition_json(r.coroots_in_q)},
            {"dominant", condition_json(r.dominant)},
            {"f_bound", to_json(r.f_bound)}};
}

std::string sha256_hex(const std::string& bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("sha256 failed");
    std::ostringstream out;
    for (unsigned int i = 0; i < len; ++i) out << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
    return out.str();
}

LoadedProblem parse_problem(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw SchemaError("$", std::string("invalid JSON: ") + e.what());
    }
    require_object(j, "$");
    reject_unknown(j, {"root_system", "levi_subset", "a1_basis", "lattice_override", "polytope", "options"}, "$");

    const json& rs = require(j, "root_system", "$");
    require_object(rs, "$.root_system");
    reject_unknown(rs, {"factors", "torus_rank"}, "$.root_system");
    std::vector<RootFactor> factors;
    if (rs.contains("factors")) {
        require_array(rs["factors"], "$.root_system.factors");
        for (std::size_t i = 0; i < rs["factors"].size(); ++i)
            factors.push_back(json_factor(rs["factors"][i], at("$.root_system.factors", i)));
    }
    const int torus = rs.contains("torus_rank") ? json_int(rs["torus_rank"], "$.root_system.torus_rank") : 0;
    if (torus < 0) throw SchemaError("$.root_system.torus_rank", "must be nonnegative");
    RootDatum rd;
    try {
        rd = build_root_system(factors, torus);
    } catch (const std::invalid_argument& e) {
        throw SchemaError("$.root_system", e.what());
    }

    std::vector<int> levi;
    if (j.contains("levi_subset")) {
        require_array(j["levi_subset"], "$.levi_subset");
        for (std::size_t i = 0; i < j["levi_subset"].size(); ++i) {
            const int k = json_int(j["levi_subset"][i], at("$.levi_subset", i));
            if (k < 1 || k > static_cast<int>(rd.simple_roots.size()))
                throw SchemaError(at("$.levi_subset", i), "simple root index out of range (indices are 1-based)");
            levi.push_back(k - 1);
        }
    }
    const ParabolicDatum pd = parabolic_data(rd, levi);

    A1Embedding embedding = A1Embedding::identity(static_cast<std::size_t>(rd.dim));
    if (j.contains("a1_basis")) {
        embedding.basis = json_rmat(j["a1_basis"], "$.a1_basis");
        if (embedding.basis.front().size() != static_cast<std::size_t>(rd.dim))
            throw SchemaError("$.a1_basis", "rows must have the root space dimension " + std::to_string(rd.dim));
        if (rank(embedding.basis) != embedding.basis.size())
            throw SchemaError("$.a1_basis", "rows must be linearly independent");
    }
    const std::size_t r = embedding.r();

    Lattice characters = Lattice::standard(r);
    if (j.contains("lattice_override")) {
        characters.basis = json_rmat(j["lattice_override"], "$.lattice_override");
        if (characters.basis.size() != r || characters.basis.front().size() != r ||
            rank(characters.basis) != r)
            throw SchemaError("$.lattice_override", "expected an invertible " + std::to_string(r) + " x " +
                                                        std::to_string(r) + " basis matrix");
    }

    const ProblemOptions options = j.contains("options") ? json_options(j["options"], "$.options") : ProblemOptions{};

    const json& poly = require(j, "polytope", "$");
    require_object(poly, "$.polytope");
    const bool has_q = poly.contains("Q");
    const bool has_m = poly.contains("moment");
    if (has_q == has_m) throw SchemaError("$.polytope", "exactly one of \"Q\" and \"moment\" is required");
    reject_unknown(poly, {"Q", "moment"}, "$.polytope");

    const RVec kappa = embedding.from_ambient(pd.kappa);
    Polytope moment = has_q ? json_polytope(poly["Q"], "$.polytope.Q") : json_polytope(poly["moment"], "$.polytope.moment");
    const std::string ppath = has_q ? "$.polytope.Q" : "$.polytope.moment";
    if (static_cast<std::size_t>(moment.dim()) != r)
        throw SchemaError(ppath, "polytope dimension " + std::to_string(moment.dim()) + " differs from dim a1 = " +
                                     std::to_string(r));

    std::optional<Polytope> q_input;
    std::optional<ReflectivityReport> reflectivity;
    if (has_q) {
        const Polytope q = moment;
        ReflectivityReport report = validate_reflective(q, rd, pd, embedding, characters);
        if (!report.all_passed()) {
            std::string msg = "Q is not G/H-reflective:";
            auto add = [&](const char* name, const ReflectivityCondition& c) {
                if (c.passed) return;
                msg += std::string("\n  condition ") + name + " failed";
                for (const auto& w : c.witnesses) msg += "\n    " + w;
            };
            add("(1) vertices in N or scaled coroots", report.vertices_in_lattice);
            add("(2) dual vertices in the character lattice", report.dual_vertices_in_lattice);
            add("(3) scaled coroots in Q", report.coroots_in_q);
            add("(4) Delta+ dominant", report.dominant);
            throw ValidationError(msg);
        }
        moment = moment_polytope(q, kappa);
        q_input = q;
        reflectivity = std::move(report);
    }
    return LoadedProblem{make_problem(rd, pd, moment, embedding), std::move(q_input), std::move(reflectivity), options,
                         "sha256:" + sha256_hex(text)};
}

LoadedProblem load_problem(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw SchemaError("$", "cannot read " + path);
    std::ostringstream buf;
    buf << f.rdbuf();
    return parse_problem(buf.str());
}

bool is_command(const std::string& c) {
    return c == "validate" || c == "invariants" || c == "soliton" || c == "ricci-bound" || c == "continuity" ||
           c == "all";
}

std::string soliton_trace_path(const std::string& trace) {
    const std::filesystem::path p(trace);
    std::filesystem::path out = p.parent_path() / p.stem();
    out += ".soliton";
    out += p.extension();
    return out.string();
}

json run(const std::string& command, const LoadedProblem& lp, const std::string& trace) {
    if (!is_command(command)) throw std::invalid_argument("unknown command: " + command);
    const HorosphericalProblem& hp = lp.problem;
    const bool all = command == "all";

    json report;
    report["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
    report["command"] = command;
    report["input_hash"] = lp.input_hash;
    report["conventions"] = {
        {"kappa", "kappa = sum of the positive roots outside the Levi = -2 rho_P; vectors in a1* coordinates"},
        {"kahler_einstein", "KE iff Bar_DH(Delta+) = kappa"},
        {"soliton_weight", "exp(-2 <p - kappa, xi>) on Delta+"},
        {"two_delta", "2 Delta = 2 (kappa - Delta+), the gradient image of the potentials"},
        {"continuity_normalization", "u'' prod (beta, kappa - u'/2) / 2^r = exp(-w_t - <u', xi>), so int exp(-w_t) = V at xi = 0"},
        {"rationals", "exact values are \"p/q\" strings"}};

    json problem;
    problem["dim_a1"] = hp.a1_dim();
    problem["kappa"] = to_json(hp.kappa);
    problem["moment_polytope"] = to_json(hp.moment);
    problem["phi_q_plus"] = rvec_list(hp.pd.phi_q_plus);
    problem["density_degree"] = hp.density.degree();
    if (lp.q) problem["Q"] = to_json(*lp.q);
    report["problem"] = problem;

    json validation;
    validation["kappa_interior"] = true;
    validation["density_nonnegative"] = true;
    validation["reflectivity"] = lp.reflectivity ? to_json(*lp.reflectivity) : json(nullptr);
    report["validation"] = validation;
    if (command == "validate") return report;

    const QuadratureOptions quad = quadrature(lp.options);
    if (all || command == "invariants") {
        const Rational v = dh_volume(hp.moment, hp.density);
        const RVec bar = dh_barycenter(hp.moment, hp.density);
        report["invariants"] = {{"V", to_json(v)}, {"Bar_DH", to_json(bar)}, {"Bar_DH_minus_kappa", to_json(sub(bar, hp.kappa))}};
    }

    std::optional<SolitonSolution> soliton;
    if (all || command == "soliton" || command == "continuity") {
        SolitonOptions so;
        so.tol = lp.options.tol;
        so.quad = quad;
        soliton = solve_soliton(hp, so);
        const KahlerEinsteinResult ke = kahler_einstein_test(hp);
        const RVec bar = add(ke.gap, hp.kappa);
        report["soliton"] = {{"xi", double_list(soliton->xi)},
                             {"residual", soliton->residual_norm},
                             {"iterations", soliton->iterations},
                             {"hessian_min_eig", soliton->hessian_min_eig},
                             {"ke", ke.is_kahler_einstein},
                             {"ke_gap", to_json(ke.gap)},
                             {"ke_sign_interpretations",
                              {{"bar_equals_kappa", ke.is_kahler_einstein},
                               {"bar_equals_minus_kappa", bar == scale(-1, hp.kappa)}}}};
    }

    if (all || command == "ricci-bound") {
        const RicciBoundResult rb = greatest_ricci_lower_bound(hp);
        json facets = json::array();
        for (std::size_t i : rb.tight_facets) facets.push_back(i);
        report["ricci_bound"] = {{"R", to_json(rb.t_infinity)},
                                 {"exit_scalar", rb.exit_scalar ? to_json(*rb.exit_scalar) : json(nullptr)},
                                 {"tight_facets", facets},
                                 {"gap", to_json(rb.gap)}};
    }

    if (all || command == "continuity") {
        if (hp.a1_dim() != 1) {
            if (!all) throw SolverError("continuity: only r = 1 is supported, got r = " + std::to_string(hp.a1_dim()));
            report["continuity"] = {{"status", "unsupported"}, {"reason", "only r = 1 is supported"}};
        } else {
            const ContinuityOptions co = continuity_options(lp.options);
            const ContinuityTrace plain = continuity_sweep(hp, 0.0, co);
            const ContinuityTrace solitonic = continuity_sweep(hp, soliton->xi(0), co);
            std::string plain_path, soliton_path;
            if (!trace.empty()) {
                plain_path = trace;
                soliton_path = soliton_trace_path(trace);
                write_text(plain_path, trace_csv(plain));
                write_text(soliton_path, trace_csv(solitonic));
            }
            report["continuity"] = {{"status", "ok"},
                                    {"xi_zero", sweep_summary(plain, plain_path)},
                                    {"xi_star", sweep_summary(solitonic, soliton_path)}};
        }
    }
    return report;
}

namespace {

void print_summary(const json& report, std::ostream& out) {
    out << kToolName << " " << kToolVersion << ": " << report["command"].get<std::string>() << "\n";
    out << "  input " << report["input_hash"].get<std::string>() << "\n";
    out << "  dim a1 = " << report["problem"]["dim_a1"] << ", kappa = " << report["problem"]["kappa"].dump() << "\n";
    if (report.contains("invariants"))
        out << "  V = " << report["invariants"]["V"].get<std::string>()
            << ", Bar_DH = " << report["invariants"]["Bar_DH"].dump() << "\n";
    if (report.contains("soliton"))
        out << "  xi = " << report["soliton"]["xi"].dump() << ", ke = " << report["soliton"]["ke"] << "\n";
    if (report.contains("ricci_bound")) out << "  R(M) = " << report["ricci_bound"]["R"].get<std::string>() << "\n";
    if (report.contains("continuity")) {
        const json& c = report["continuity"];
        if (c["status"] == "ok") {
            for (const char* key : {"xi_zero", "xi_star"}) {
                const json& s = c[key];
                out << "  sweep " << key << ": " << s["termination"].get<std::string>();
                if (s.contains("estimate")) out << ", estimate " << s["estimate"] << " +- " << s["uncertainty"];
                out << "\n";
            }
        } else {
            out << "  continuity: " << c["reason"].get<std::string>() << "\n";
        }
    }
}

}  // namespace

int run_cli(const RunRequest& request, std::ostream& out, std::ostream& err) {
    if (!is_command(request.command)) {
        err << "error: unknown command \"" << request.command << "\"\n";
        return kExitUsage;
    }
    try {
        LoadedProblem lp = load_problem(request.input);
        if (request.tol) lp.options.tol = *request.tol;
        if (request.grid) lp.options.grid = *request.grid;
        if (request.box) lp.options.box = *request.box;
        if (request.t0) lp.options.t0 = *request.t0;
        const json report = run(request.command, lp, request.trace);
        if (!request.out.empty()) write_text(request.out, report.dump(2) + "\n");
        print_summary(report, out);
        return kExitOk;
    } catch (const SchemaError& e) {
        err << "schema error at " << e.what() << "\n";
        return kExitSchema;
    } catch (const ValidationError& e) {
        err << "validation failed: " << e.what() << "\n";
        return kExitValidation;
    } catch (const SolverError& e) {
        err << "solver error: " << e.what() << "\n";
        return kExitSolver;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitSolver;
    }
}

}  // namespace horofano
