#include "seifertvol/cli.hpp"

#include "seifertvol/commutator.hpp"
#include "seifertvol/errors.hpp"
#include "seifertvol/euler_operator.hpp"
#include "seifertvol/manifold_io.hpp"
#include "seifertvol/representation.hpp"
#include "seifertvol/volume.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <numbers>
#include <sstream>

namespace seifertvol::cli {

using nlohmann::json;

namespace {

const std::vector<std::pair<std::string, std::string>> kSubcommands = {
    {"validate", "check manifold data"},
    {"euler", "Euler operator, dominance and spectrum"},
    {"volume", "volume for a given xi"},
    {"mw-check", "per-vertex Milnor-Wood check of xi"},
    {"sv-bound", "upper bound on the Seifert volume"},
    {"csv", "covering Seifert volume (exact or bounded)"},
    {"growth", "lower bound on a d-cyclic cover"},
    {"cover", "apply a cover specification"},
    {"wind", "winding number of a motion"},
    {"classify", "conjugacy type of a matrix"},
    {"factor", "write a matrix as a commutator"},
    {"conjugate-test", "are two motions conjugate"},
    {"realize", "build and verify a central representation"},
};

// Subcommands that read exactly one manifold and therefore support --batch.
bool batchable(const std::string& cmd) {
    return cmd == "validate" || cmd == "euler" || cmd == "volume" || cmd == "mw-check" || cmd == "sv-bound" || cmd == "csv" ||
           cmd == "realize";
}

struct Outcome {
    json body;
    int status = kExitOk;
};

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    return s.substr(b, s.find_last_not_of(" \t\r\n") - b + 1);
}

json load_json_arg(const std::string& arg, const std::string& what) {
    std::string s = trim(arg);
    if (s.empty()) throw InputError("missing " + what);
    if (s[0] == '{' || s[0] == '[') return parse_json_text(s, what);
    return parse_json_text(read_text_file(s), s);
}

std::map<std::string, std::string> key_values(const std::vector<std::string>& tokens, const std::string& flag) {
    std::map<std::string, std::string> kv;
    for (const auto& tok : tokens) {
        std::stringstream ss(tok);
        std::string part;
        while (std::getline(ss, part, ',')) {
            part = trim(part);
            if (part.empty()) continue;
            auto eq = part.find('=');
            if (eq == std::string::npos) throw InputError(flag + ": expected key=value, got '" + part + "'");
            kv[trim(part.substr(0, eq))] = trim(part.substr(eq + 1));
        }
    }
    return kv;
}

long kv_long(const std::map<std::string, std::string>& kv, const std::string& key, const std::string& flag) {
    auto it = kv.find(key);
    if (it == kv.end()) throw InputError(flag + ": missing " + key + "=");
    Rational q;
    try {
        q = Rational::parse(it->second);
    } catch (const std::exception&) {
        throw InputError(flag + ": " + key + " must be an integer");
    }
    if (!q.is_integer()) throw InputError(flag + ": " + key + " must be an integer");
    return q.to_long();
}

Rational kv_rational(const std::map<std::string, std::string>& kv, const std::string& key, const std::string& flag) {
    auto it = kv.find(key);
    if (it == kv.end()) throw InputError(flag + ": missing " + key + "=");
    try {
        return Rational::parse(it->second);
    } catch (const std::exception&) {
        throw InputError(flag + ": " + key + " must be a rational p/q");
    }
}

CyclicParameters cyclic_params(const RunConfig& c) {
    auto kv = key_values(c.cyclic, "--cyclic");
    return {kv_long(kv, "n", "--cyclic"), kv_rational(kv, "chi", "--cyclic"), kv_rational(kv, "k", "--cyclic"), kv_long(kv, "b", "--cyclic")};
}

FormattedGraphManifold load_manifold(const RunConfig& c) {
    if (!c.inputs.empty()) return parse_manifold(read_text_file(c.inputs.front()), c.inputs.front());
    if (!c.cyclic.empty()) {
        CyclicParameters p = cyclic_params(c);
        return constant_cyclic(p.n, p.chi, p.k, p.b);
    }
    if (!c.twisted.empty()) {
        auto kv = key_values(c.twisted, "--twisted");
        return twisted_doubling(kv_long(kv, "g", "--twisted"), kv_long(kv, "a", "--twisted"), kv_long(kv, "b", "--twisted"),
                                kv_long(kv, "c", "--twisted"), kv_long(kv, "d", "--twisted"));
    }
    throw InputError("no manifold given: pass a manifold file, --cyclic or --twisted");
}

XiVector load_xi(const RunConfig& c) {
    json j = load_json_arg(c.xi, "--xi");
    if (!j.is_object()) throw InputError("--xi: expected a JSON object vertex -> value");
    bool exact = true;
    for (const auto& [k, v] : j.items())
        if (v.is_number_float()) exact = false;
    if (exact) {
        std::map<std::string, Rational> vals;
        for (const auto& [k, v] : j.items()) vals[k] = rational_from_json(v, "--xi." + k);
        return XiVector::from_exact(std::move(vals));
    }
    std::map<std::string, double> vals;
    for (const auto& [k, v] : j.items()) {
        if (v.is_number()) vals[k] = v.get<double>();
        else vals[k] = rational_from_json(v, "--xi." + k).to_double();
    }
    return XiVector::from_real(std::move(vals));
}

TauValue tau_value(const json& v, const std::string& path) {
    if (v.is_string() && (v.get<std::string>() == "inf" || v.get<std::string>() == "infinity")) return std::nullopt;
    if (v.is_number_integer() && v.get<long>() >= 1) return v.get<long>();
    throw InputError(path + ": tau must be a positive integer or \"inf\"");
}

TauMap load_tau(const RunConfig& c, const FormattedGraphManifold& m) {
    std::string s = trim(c.tau);
    if (s.empty() || s == "inf" || s == "infinity") return uniform_tau(m, std::nullopt);
    if (s[0] != '[' && s[0] != '{' && s.find_first_not_of("0123456789") == std::string::npos) {
        long t = std::stol(s);
        if (t < 1) throw InputError("--tau must be positive");
        return uniform_tau(m, t);
    }
    json j = load_json_arg(s, "--tau");
    if (!j.is_array()) throw InputError("--tau: expected an array of {\"u\",\"v\",\"tau\"}");
    TauMap t = uniform_tau(m, std::nullopt);
    for (std::size_t i = 0; i < j.size(); ++i) {
        std::string path = "--tau[" + std::to_string(i) + "]";
        if (!j[i].is_object() || !j[i].contains("u") || !j[i].contains("v") || !j[i].contains("tau")) {
            throw InputError(path + ": expected {\"u\",\"v\",\"tau\"}");
        }
        std::string u = j[i]["u"].get<std::string>(), v = j[i]["v"].get<std::string>();
        if (!m.edge_b(u, v)) throw InputError(path + ": {" + u + "," + v + "} is not an edge");
        t[u <= v ? std::make_pair(u, v) : std::make_pair(v, u)] = tau_value(j[i]["tau"], path + ".tau");
    }
    return t;
}

WaldhausenData load_waldhausen(const RunConfig& c, const FormattedGraphManifold& m) {
    if (trim(c.waldhausen).empty()) return canonical_waldhausen(m);
    json j = load_json_arg(c.waldhausen, "--waldhausen");
    if (!j.is_array()) throw InputError("--waldhausen: expected an array of {\"from\",\"to\",\"a\"}");
    WaldhausenData w;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const json& e = j[i];
        std::string path = "--waldhausen[" + std::to_string(i) + "]";
        if (!e.is_object() || !e.contains("from") || !e.contains("to") || !e.contains("a") || !e["a"].is_number_integer()) {
            throw InputError(path + ": expected {\"from\",\"to\",\"a\": integer}");
        }
        w.a[{e["from"].get<std::string>(), e["to"].get<std::string>()}] = e["a"].get<long>();
    }
    return w;
}

Matrix2 load_matrix(const std::vector<double>& v, const std::string& flag) {
    if (v.size() != 4) throw InputError(flag + ": expected four entries a b c d");
    Matrix2 m{v[0], v[1], v[2], v[3]};
    if (std::fabs(m.det() - 1.0) > 1e-6) throw InputError(flag + ": determinant " + std::to_string(m.det()) + " is not 1");
    return m.renormalized();
}

Motion load_motion(const std::vector<double>& v, const std::optional<double>& t, const std::optional<double>& s, const std::string& flag) {
    Matrix2 m = load_matrix(v, flag);
    LiftedMatrix g = t ? LiftedMatrix::make(m, *t) : LiftedMatrix::canonical(m);
    return Motion::make(g, s.value_or(0.0));
}

json matrix_json(const Matrix2& m) { return json::array({json::array({m.a, m.b}), json::array({m.c, m.d})}); }

void put_pisq(json& o, const std::string& key, const PiSqValue& v) {
    o[key] = v.str();
    if (v.infinite) o[key + "_float"] = "inf";
    else o[key + "_float"] = v.value();
}

json xi_json(const FormattedGraphManifold& m, const RationalVector& v) {
    json o = json::object();
    auto ids = m.vertex_ids();
    for (std::size_t i = 0; i < ids.size(); ++i) o[ids[i]] = v[i].str();
    return o;
}

json descriptor_json(const ConjClassDescriptor& d) {
    json o = {{"kind", to_string(d.kind)}, {"wind", d.wind}};
    if (d.kind == ConjKind::hyperbolic) o["trace_abs"] = d.trace_abs;
    if (d.kind == ConjKind::elliptic) o["omega_bar"] = d.omega_bar;
    return o;
}

Outcome cmd_validate(const RunConfig& c) {
    FormattedGraphManifold m = load_manifold(c);
    auto vs = validate(m);
    json list = json::array();
    for (const auto& v : vs) list.push_back({{"message", v.message}, {"location", v.location}, {"severity", v.warning ? "warning" : "error"}});
    bool ok = !has_errors(vs);
    return {{{"valid", ok}, {"violations", list}}, ok ? kExitOk : kExitDomain};
}

Outcome cmd_euler(const RunConfig& c) {
    FormattedGraphManifold m = load_manifold(c);
    EulerOperator e = build_euler_operator(m);
    json rows = json::array();
    for (std::size_t i = 0; i < e.size(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < e.size(); ++j) row.push_back(e.entries(i, j).str());
        rows.push_back(row);
    }
    DominanceReport dom = is_strictly_diagonally_dominant(m);
    json slack = json::object();
    for (std::size_t i = 0; i < e.size(); ++i) slack[e.index[i]] = dom.slack[i].str();
    SpectralSummary sp = numeric_spectrum(e);
    json kernel = json::array();
    for (const auto& v : rational_kernel(e)) kernel.push_back(xi_json(m, v));
    json o = {{"index", e.index},
              {"matrix", rows},
              {"strictly_diagonally_dominant", dom.strict},
              {"slack", slack},
              {"eigenvalues", sp.eigenvalues},
              {"min_abs_nonzero", sp.min_abs_nonzero},
              {"kernel_dimension", sp.kernel_dimension},
              {"kernel", kernel}};
    o["gershgorin_bound"] = dom.strict ? json(gershgorin_eigenvalue_bound(e).str()) : json(nullptr);
    return {o};
}

Outcome cmd_volume(const RunConfig& c) {
    FormattedGraphManifold m = load_manifold(c);
    PiSqValue v = volume_from_xi(m, load_xi(c));
    json o = {{"exact", v.exact}};
    put_pisq(o, "volume", v);
    return {o};
}

Outcome cmd_mw_check(const RunConfig& c) {
    FormattedGraphManifold m = load_manifold(c);
    XiVector xi = load_xi(c);
    TauMap tau = load_tau(c, m);
    auto checks = check_mw(m, xi, tau, tolerances().comparison);
    json list = json::array();
    bool all = true;
    for (const auto& ch : checks) {
        json o = {{"vertex", ch.vertex}, {"pass", ch.pass}, {"lhs", ch.lhs}, {"bound", ch.exact_bound.str()}, {"residual", ch.residual}};
        if (ch.exact_lhs) o["lhs_exact"] = ch.exact_lhs->str();
        list.push_back(o);
        all = all && ch.pass;
    }
    return {{{"pass", all}, {"exact", xi.exact}, {"vertices", list}}, all ? kExitOk : kExitDomain};
}

Outcome cmd_sv_bound(const RunConfig& c) {
    FormattedGraphManifold m = load_manifold(c);
    std::optional<TauMap> tau;
    if (!trim(c.tau).empty()) tau = load_tau(c, m);
    SvBound sv = sv_upper_bound(m, tau);
    json o = {{"exact", sv.bound.exact}, {"label", "bound"}, {"maximizer_xi", xi_json(m, sv.xi)}, {"maximizer_y", xi_json(m, sv.y)}};
    put_pisq(o, "sv_bound", sv.bound);
    return {o};
}

Outcome cmd_csv(const RunConfig& c) {
    if (c.inputs.empty() && !c.cyclic.empty()) {
        CyclicParameters p = cyclic_params(c);
        PiSqValue v = csv_constant_cyclic(p.n, p.chi, p.k, p.b);
        json o = {{"exact", true}};
        put_pisq(o, "csv", v);
        return {o};
    }
    CsvReport r = csv_report(load_manifold(c));
    json o = {{"exact", r.exact}};
    if (r.exact) {
        put_pisq(o, "csv", r.value);
        return {o};
    }
    o["label"] = "bound";
    put_pisq(o, "lower", r.lower);
    if (r.upper) {
        put_pisq(o, "upper", *r.upper);
        o["upper_source"] = r.upper_source;
    } else {
        o["upper"] = nullptr;
    }
    return {o};
}

Outcome cmd_growth(const RunConfig& c) {
    CyclicParameters p;
    if (!c.cyclic.empty()) {
        p = cyclic_params(c);
    } else {
        auto det = detect_constant_cyclic(load_manifold(c));
        if (!det) throw DomainError("growth witness needs a constant-cyclic manifold");
        p = *det;
    }
    GrowthWitness w = csv_growth_witness(p.n, p.chi, p.k, p.b, c.d);
    json o = {{"d", c.d}, {"m", w.m}, {"lambda", w.lambda}, {"spacing_limit", w.spacing_limit}, {"within_spacing", w.within_spacing},
              {"exact", w.bound.exact}, {"label", "lower bound for the d-cyclic cover"}};
    if (w.lambda_exact) o["lambda_exact"] = w.lambda_exact->str();
    put_pisq(o, "bound", w.bound);
    return {o};
}

Outcome cmd_cover(const RunConfig& c) {
    FormattedGraphManifold m = load_manifold(c);
    CoverSpec spec = cover_from_json(load_json_arg(c.cover_spec, "--spec"));
    CoverResult r = apply_cover(m, spec);
    json warnings = json::array();
    for (const auto& w : r.warnings) warnings.push_back({{"message", w.message}, {"location", w.location}});
    return {{{"manifold", manifold_to_json(r.manifold)}, {"warnings", warnings}}};
}

Outcome cmd_wind(const RunConfig& c) {
    Motion x = load_motion(c.matrix, c.lift, c.s, "--matrix");
    DisplacementInterval iv = displacement_interval(x.g);
    double ot = omega_tilde(x.g);
    return {{{"wind", wind(x)}, {"omega_tilde", ot}, {"omega_bar", omega_bar(x.g.m)}, {"displacement", {iv.lo, iv.hi}},
             {"t", x.g.t}, {"s", x.s}}};
}

Outcome cmd_classify(const RunConfig& c) {
    Matrix2 m = load_matrix(c.matrix, "--matrix");
    ConjKind k = classify(m);
    json o = {{"kind", to_string(k)}, {"trace", m.trace()}, {"omega_bar", omega_bar(m)}};
    return {o};
}

Outcome cmd_conjugate(const RunConfig& c) {
    Motion x = load_motion(c.m1, c.t1, c.s1, "--m1");
    Motion y = load_motion(c.m2, c.t2, c.s2, "--m2");
    bool r = conjugate_test(x, y, tolerances().comparison);
    return {{{"conjugate", r}, {"first", descriptor_json(describe(x))}, {"second", descriptor_json(describe(y))}}};
}

Outcome cmd_factor(const RunConfig& c) {
    Matrix2 m = load_matrix(c.matrix, "--matrix");
    CanonicalForm cf = canonical_form(m);
    FactorPair f = factor(m);
    json params = {{"r", cf.r}};
    if (cf.kind == ConjKind::elliptic) params.update({{"lambda", cf.lambda}, {"theta", cf.theta}});
    else if (cf.kind == ConjKind::hyperbolic) params.update({{"lambda", cf.lambda}, {"tau", cf.tau}});
    else params.update({{"u", cf.u}, {"inverted", cf.inverted}});
    return {{{"kind", to_string(cf.kind)}, {"A", matrix_json(f.a)}, {"B", matrix_json(f.b)}, {"residual", f.residual}, {"canonical", params}}};
}

Outcome cmd_realize(const RunConfig& c) {
    FormattedGraphManifold m = load_manifold(c);
    WaldhausenData w = load_waldhausen(c, m);
    RepresentationSketch sk = build_representation(m, w, load_xi(c));
    VerificationReport rep = verify_representation(sk);
    json verts = json::object();
    for (const auto& [v, p] : sk.vertices) {
        json pairs = json::array();
        for (const auto& [x, y] : p.pairs)
            pairs.push_back({{"x", {{"matrix", matrix_json(x.m)}, {"t", x.t}}}, {"y", {{"matrix", matrix_json(y.m)}, {"t", y.t}}}});
        json bd = json::object();
        for (const auto& [nb, t] : p.boundary) bd[nb] = t;
        verts[v] = {{"genus", p.genus}, {"boundary_count", p.boundary_count}, {"pairs", pairs}, {"boundary", bd}, {"fiber", p.fiber}};
    }
    json wal = json::array();
    for (const auto& [e, a] : w.a) wal.push_back({{"from", e.first}, {"to", e.second}, {"a", a}});
    json report = {{"passed", rep.passed()},       {"relations_ok", rep.relations_ok},
                   {"xi_ok", rep.xi_ok},           {"torus_ok", rep.torus_ok},
                   {"volume_ok", rep.volume_ok},   {"relation_residual", rep.relation_residual},
                   {"recomputed_xi", rep.recomputed_xi}, {"recomputed_volume", rep.recomputed_volume},
                   {"exact_volume", PiSqValue::of(rep.exact_volume).str()}, {"volume_relative_error", rep.volume_relative_error},
                   {"failures", rep.failures}};
    return {{{"vertices", verts}, {"waldhausen", wal}, {"report", report}}, rep.passed() ? kExitOk : kExitDomain};
}

Outcome dispatch(const RunConfig& c) {
    const std::string& s = c.subcommand;
    if (s == "validate") return cmd_validate(c);
    if (s == "euler") return cmd_euler(c);
    if (s == "volume") return cmd_volume(c);
    if (s == "mw-check") return cmd_mw_check(c);
    if (s == "sv-bound") return cmd_sv_bound(c);
    if (s == "csv") return cmd_csv(c);
    if (s == "growth") return cmd_growth(c);
    if (s == "cover") return cmd_cover(c);
    if (s == "wind") return cmd_wind(c);
    if (s == "classify") return cmd_classify(c);
    if (s == "conjugate-test") return cmd_conjugate(c);
    if (s == "factor") return cmd_factor(c);
    if (s == "realize") return cmd_realize(c);
    throw InputError("unknown subcommand '" + s + "'");
}

void render_human(const json& j, std::ostream& os, const std::string& prefix = "") {
    for (const auto& [k, v] : j.items()) {
        if (v.is_object() && !v.empty()) {
            render_human(v, os, prefix + k + ".");
        } else {
            os << prefix << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
        }
    }
}

// Runs one item, mapping exceptions to exit statuses.
std::pair<Outcome, std::string> guarded(const RunConfig& c) {
    try {
        return {dispatch(c), ""};
    } catch (const InputError& e) {
        return {{json(nullptr), kExitInput}, e.what()};
    } catch (const json::exception& e) {
        return {{json(nullptr), kExitInput}, e.what()};
    } catch (const std::invalid_argument& e) {
        return {{json(nullptr), kExitInput}, e.what()};
    } catch (const std::exception& e) {
        return {{json(nullptr), kExitDomain}, e.what()};
    }
}

}  // namespace

std::optional<RunResult> parse_args(const std::vector<std::string>& args, RunConfig& config, const char* env_tol) {
    CLI::App app{"Seifert volume calculator for graph manifolds", "seifertvol"};
    app.require_subcommand(1);
    app.fallthrough();
    bool json_flag = false;
    app.add_option("--tol", config.tol, "comparison tolerance (default 1e-8; env SEIFERTVOL_TOL)");
    app.add_flag("--json", json_flag, "JSON output (default)");
    app.add_flag("--human", config.human, "plain key: value output");
    app.add_option("--batch", config.batch_dir, "run on every *.json manifold in DIR, one JSON line each");

    for (const auto& [name, description] : kSubcommands) {
        CLI::App* sub = app.add_subcommand(name, description);
        sub->add_option("file", config.inputs, "manifold JSON file");
        sub->add_option("--cyclic", config.cyclic, "constant cyclic manifold: n=.. chi=.. k=.. b=..")->expected(1, 4);
        sub->add_option("--twisted", config.twisted, "twisted doubling: g=.. a=.. b=.. c=.. d=..")->expected(1, 5);
        sub->add_option("--xi", config.xi, "vertex -> winding map (inline JSON or path)");
        sub->add_option("--tau", config.tau, "inf, a positive integer, or [{u,v,tau}] (inline JSON or path)");
        sub->add_option("--spec", config.cover_spec, "cover specification (inline JSON or path)");
        sub->add_option("--waldhausen", config.waldhausen, "[{from,to,a}] (inline JSON or path)");
        sub->add_option("--d", config.d, "cyclic cover degree")->check(CLI::PositiveNumber);
        sub->add_option("--matrix", config.matrix, "a b c d")->expected(4);
        sub->add_option("--lift", config.lift, "lift parameter t = phi(0)");
        sub->add_option("--s", config.s, "central parameter s");
        sub->add_option("--m1", config.m1, "first matrix a b c d")->expected(4);
        sub->add_option("--t1", config.t1, "first lift parameter");
        sub->add_option("--s1", config.s1, "first central parameter");
        sub->add_option("--m2", config.m2, "second matrix a b c d")->expected(4);
        sub->add_option("--t2", config.t2, "second lift parameter");
        sub->add_option("--s2", config.s2, "second central parameter");
        sub->callback([&config, name]() { config.subcommand = name; });
    }

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        return RunResult{kExitOk, app.help(), ""};
    } catch (const CLI::ParseError& e) {
        return RunResult{kExitInput, "", std::string("error: ") + e.what() + "\n"};
    }
    if (!config.tol && env_tol && *env_tol) {
        char* end = nullptr;
        double t = std::strtod(env_tol, &end);
        if (end == env_tol || *end != '\0' || !(t > 0)) return RunResult{kExitInput, "", "error: SEIFERTVOL_TOL is not a positive number\n"};
        config.tol = t;
    }
    if (config.tol && !(*config.tol > 0)) return RunResult{kExitInput, "", "error: --tol must be positive\n"};
    return std::nullopt;
}

RunResult run(const RunConfig& config) {
    if (config.tol) {
        Tolerances t = tolerances();
        t.comparison = *config.tol;
        set_tolerances(t);
    }
    RunResult r;
    auto emit = [&](const json& j) {
        if (config.human) {
            std::ostringstream os;
            render_human(j, os);
            r.out += os.str();
        } else {
            r.out += j.dump() + "\n";
        }
    };
    if (config.batch_dir) {
        if (!batchable(config.subcommand)) return {kExitInput, "", "error: --batch is not supported for " + config.subcommand + "\n"};
        std::error_code ec;
        if (!std::filesystem::is_directory(*config.batch_dir, ec)) return {kExitInput, "", "error: '" + *config.batch_dir + "' is not a directory\n"};
        std::vector<std::filesystem::path> files;
        for (const auto& entry : std::filesystem::directory_iterator(*config.batch_dir))
            if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
        std::sort(files.begin(), files.end());
        for (const auto& f : files) {
            RunConfig item = config;
            item.batch_dir.reset();
            item.inputs = {f.string()};
            auto [outcome, error] = guarded(item);
            json line = {{"file", f.filename().string()}, {"status", outcome.status}};
            if (error.empty()) line["result"] = outcome.body;
            else line["error"] = error;
            r.status = std::max(r.status, outcome.status);
            r.out += line.dump() + "\n";
        }
        return r;
    }
    auto [outcome, error] = guarded(config);
    r.status = outcome.status;
    if (!error.empty()) {
        r.err = "error: " + error + "\n";
        return r;
    }
    emit(outcome.body);
    if (config.subcommand == "validate" && outcome.status != kExitOk) {
        for (const auto& v : outcome.body["violations"])
            if (v["severity"] == "error") r.err += v["message"].get<std::string>() + "\n";
    }
    return r;
}

RunResult run_args(const std::vector<std::string>& args, const char* env_tol) {
    RunConfig config;
    if (auto early = parse_args(args, config, env_tol)) return *early;
    return run(config);
}

}  // namespace seifertvol::cli
