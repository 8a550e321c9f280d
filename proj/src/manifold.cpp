#include "seifertvol/manifold.hpp"

#include "seifertvol/errors.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>
#include <tuple>

namespace seifertvol {

namespace {

std::pair<std::string, std::string> ordered(const std::string& u, const std::string& v) {
    return u <= v ? std::make_pair(u, v) : std::make_pair(v, u);
}

std::string edge_label(const std::string& u, const std::string& v) { return "{" + u + "," + v + "}"; }

bool connected(const std::set<std::string>& nodes, const std::vector<std::pair<std::string, std::string>>& links) {
    if (nodes.empty()) return true;
    std::map<std::string, std::vector<std::string>> adj;
    for (const auto& [u, v] : links) {
        if (!nodes.count(u) || !nodes.count(v)) continue;
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    std::set<std::string> seen{*nodes.begin()};
    std::queue<std::string> todo;
    todo.push(*nodes.begin());
    while (!todo.empty()) {
        std::string x = todo.front();
        todo.pop();
        for (const auto& y : adj[x])
            if (seen.insert(y).second) todo.push(y);
    }
    return seen.size() == nodes.size();
}

}  // namespace

void FormattedGraphManifold::add_vertex(const std::string& id, Rational chi, Rational k) {
    vertices[id] = VertexData{std::move(chi), std::move(k)};
}

void FormattedGraphManifold::add_edge(const std::string& u, const std::string& v, Rational b) {
    auto [x, y] = ordered(u, v);
    edges.push_back(Edge{x, y, std::move(b)});
}

std::vector<std::string> FormattedGraphManifold::vertex_ids() const {
    std::vector<std::string> ids;
    ids.reserve(vertices.size());
    for (const auto& [id, _] : vertices) ids.push_back(id);
    return ids;
}

std::size_t FormattedGraphManifold::index_of(const std::string& id) const {
    auto it = vertices.find(id);
    if (it == vertices.end()) throw DomainError("unknown vertex '" + id + "'");
    return static_cast<std::size_t>(std::distance(vertices.begin(), it));
}

std::vector<std::pair<std::string, Rational>> FormattedGraphManifold::neighbors(const std::string& v) const {
    std::vector<std::pair<std::string, Rational>> out;
    for (const auto& e : edges) {
        if (e.u == v) out.emplace_back(e.v, e.b);
        else if (e.v == v) out.emplace_back(e.u, e.b);
    }
    return out;
}

std::optional<Rational> FormattedGraphManifold::edge_b(const std::string& u, const std::string& v) const {
    auto [x, y] = ordered(u, v);
    for (const auto& e : edges)
        if (e.u == x && e.v == y) return e.b;
    return std::nullopt;
}

std::size_t FormattedGraphManifold::valence(const std::string& v) const { return neighbors(v).size(); }

bool operator==(const FormattedGraphManifold& a, const FormattedGraphManifold& b) {
    if (a.vertices.size() != b.vertices.size() || a.edges.size() != b.edges.size()) return false;
    for (auto ia = a.vertices.begin(), ib = b.vertices.begin(); ia != a.vertices.end(); ++ia, ++ib) {
        if (ia->first != ib->first || ia->second.chi != ib->second.chi || ia->second.k != ib->second.k) return false;
    }
    auto key = [](const Edge& e) { return std::tie(e.u, e.v); };
    auto ea = a.edges, eb = b.edges;
    auto less = [&](const Edge& x, const Edge& y) { return key(x) < key(y); };
    std::sort(ea.begin(), ea.end(), less);
    std::sort(eb.begin(), eb.end(), less);
    for (std::size_t i = 0; i < ea.size(); ++i)
        if (ea[i].u != eb[i].u || ea[i].v != eb[i].v || ea[i].b != eb[i].b) return false;
    return true;
}

std::vector<Violation> validate(const FormattedGraphManifold& m) {
    std::vector<Violation> out;
    if (m.vertices.empty()) out.push_back({"no vertices", "", false});
    std::set<std::pair<std::string, std::string>> seen;
    std::vector<std::pair<std::string, std::string>> links;
    for (const auto& e : m.edges) {
        std::string where = edge_label(e.u, e.v);
        bool known = true;
        for (const auto* end : {&e.u, &e.v}) {
            if (!m.vertices.count(*end)) {
                out.push_back({"unknown vertex '" + *end + "' in edge", where, false});
                known = false;
            }
        }
        if (e.u == e.v) {
            out.push_back({"loop at " + e.u, e.u, false});
            continue;
        }
        if (!seen.insert(ordered(e.u, e.v)).second) out.push_back({"multi-edge between " + e.u + " and " + e.v, where, false});
        if (e.b.is_zero()) out.push_back({"zero intersection number", where, false});
        else if (!e.b.is_integer()) out.push_back({"non-integral intersection number " + e.b.str(), where, true});
        if (known) links.emplace_back(e.u, e.v);
    }
    std::set<std::string> nodes;
    for (const auto& [id, _] : m.vertices) nodes.insert(id);
    if (!connected(nodes, links)) out.push_back({"graph is disconnected", "", false});
    return out;
}

bool has_errors(const std::vector<Violation>& violations) {
    return std::any_of(violations.begin(), violations.end(), [](const Violation& v) { return !v.warning; });
}

void ensure_valid(const FormattedGraphManifold& m) {
    auto violations = validate(m);
    if (!has_errors(violations)) return;
    std::ostringstream os;
    os << "invalid manifold:";
    for (const auto& v : violations)
        if (!v.warning) os << " " << v.message << (v.location.empty() || v.message.find(v.location) != std::string::npos ? "" : " (" + v.location + ")") << ";";
    throw DomainError(os.str());
}

Rational chi_orbifold(const SeifertSymbol& sym) {
    if (sym.genus < 0) throw DomainError("negative genus");
    Rational chi(2 - 2 * sym.genus - static_cast<long>(sym.cone_points.size()));
    for (const auto& cp : sym.cone_points) {
        if (cp.beta <= 1) throw DomainError("cone point order must exceed 1");
        chi += Rational(1, cp.beta);
    }
    return chi;
}

Rational euler_number(const SeifertSymbol& sym) {
    if (!sym.alpha0) throw DomainError("euler number needs a normalized symbol with alpha0");
    Rational e(*sym.alpha0);
    for (const auto& cp : sym.cone_points) {
        if (cp.beta <= 1) throw DomainError("cone point order must exceed 1");
        if (cp.alpha < 1 || cp.alpha >= cp.beta || std::gcd(cp.alpha, cp.beta) != 1) {
            throw DomainError("cone point (" + std::to_string(cp.beta) + "," + std::to_string(cp.alpha) +
                              ") is not normalized: need 1 <= alpha < beta, gcd 1");
        }
        e += Rational(cp.alpha, cp.beta);
    }
    return e;
}

FormattedGraphManifold twisted_doubling(long g, long a, long b, long c, long d) {
    if (g < 1) throw DomainError("twisted doubling needs genus g >= 1");
    if (b == 0) throw DomainError("twisted doubling needs b != 0");
    if (a * d - b * c != 1) throw DomainError("twisted doubling needs ad - bc = 1");
    FormattedGraphManifold m;
    m.add_vertex("+", Rational(1 - 2 * g), Rational(d, b));
    m.add_vertex("-", Rational(1 - 2 * g), Rational(a, b));
    m.add_edge("+", "-", Rational(b));
    return m;
}

std::string cyclic_vertex_id(long n, long j) {
    std::string digits = std::to_string(n - 1);
    std::string s = std::to_string(j);
    return std::string(digits.size() > s.size() ? digits.size() - s.size() : 0, '0') + s;
}

FormattedGraphManifold constant_cyclic(long n, const Rational& chi, const Rational& k, long b) {
    if (n < 3) throw DomainError("constant cyclic manifold needs n >= 3");
    if (chi.sign() >= 0) throw DomainError("constant cyclic manifold needs chi < 0");
    if (b == 0) throw DomainError("constant cyclic manifold needs b != 0");
    FormattedGraphManifold m;
    for (long j = 0; j < n; ++j) m.add_vertex(cyclic_vertex_id(n, j), chi, k);
    for (long j = 0; j < n; ++j) m.add_edge(cyclic_vertex_id(n, j), cyclic_vertex_id(n, (j + 1) % n), Rational(b));
    return m;
}

std::vector<Violation> cover_violations(const FormattedGraphManifold& base, const CoverSpec& cover) {
    std::vector<Violation> out;
    std::map<std::string, const CoverVertex*> cv;
    for (const auto& x : cover.vertices) {
        if (!cv.emplace(x.id, &x).second) out.push_back({"duplicate covering vertex", x.id, false});
        if (!base.vertices.count(x.base)) out.push_back({"covering vertex over unknown base vertex '" + x.base + "'", x.id, false});
        if (x.piece_degree < 1 || x.fiber_degree < 1) out.push_back({"degrees must be >= 1", x.id, false});
    }
    std::set<std::string> covered;
    for (const auto& x : cover.vertices) covered.insert(x.base);
    for (const auto& [v, _] : base.vertices)
        if (!covered.count(v)) out.push_back({"base vertex has no preimage", v, false});

    std::set<std::pair<std::string, std::string>> seen;
    std::vector<std::pair<std::string, std::string>> links;
    // (covering vertex, neighbouring base vertex) -> sum of T/f'_w
    std::map<std::pair<std::string, std::string>, Rational> sums;
    for (const auto& e : cover.edges) {
        std::string where = edge_label(e.u, e.v);
        auto iu = cv.find(e.u), iv = cv.find(e.v);
        if (iu == cv.end() || iv == cv.end()) {
            out.push_back({"covering edge with unknown endpoint", where, false});
            continue;
        }
        if (e.u == e.v) {
            out.push_back({"loop at " + e.u, e.u, false});
            continue;
        }
        if (!seen.insert(ordered(e.u, e.v)).second) out.push_back({"multi-edge in covering graph", where, false});
        if (e.torus_degree < 1) out.push_back({"torus degree must be >= 1", where, false});
        const CoverVertex& xu = *iu->second;
        const CoverVertex& xv = *iv->second;
        if ((e.fiber_degree_u && *e.fiber_degree_u != xu.fiber_degree) ||
            (e.fiber_degree_v && *e.fiber_degree_v != xv.fiber_degree)) {
            out.push_back({"edge fiber degree disagrees with vertex fiber degree", where, false});
        }
        if (xu.base == xv.base || !base.edge_b(xu.base, xv.base)) {
            out.push_back({"covering edge does not lie over a base edge", where, false});
            continue;
        }
        links.emplace_back(e.u, e.v);
        if (e.torus_degree < 1 || xu.fiber_degree < 1 || xv.fiber_degree < 1) continue;
        sums[{xu.id, xv.base}] += Rational(e.torus_degree, xv.fiber_degree);
        sums[{xv.id, xu.base}] += Rational(e.torus_degree, xu.fiber_degree);
    }
    std::set<std::string> nodes;
    for (const auto& x : cover.vertices) nodes.insert(x.id);
    if (!connected(nodes, links)) out.push_back({"covering graph is disconnected", "", false});

    for (const auto& x : cover.vertices) {
        if (!base.vertices.count(x.base) || x.piece_degree < 1 || x.fiber_degree < 1) continue;
        Rational lhs(x.piece_degree, x.fiber_degree);
        for (const auto& [w, _] : base.neighbors(x.base)) {
            Rational rhs = sums.count({x.id, w}) ? sums[{x.id, w}] : Rational(0);
            if (lhs != rhs) {
                out.push_back({"degree counting identity fails over torus " + edge_label(x.base, w) + ": " + lhs.str() +
                                   " != " + rhs.str(),
                               x.id, false});
            }
        }
    }
    return out;
}

CoverResult apply_cover(const FormattedGraphManifold& base, const CoverSpec& cover) {
    ensure_valid(base);
    auto violations = cover_violations(base, cover);
    if (has_errors(violations)) {
        std::ostringstream os;
        os << "inconsistent cover:";
        for (const auto& v : violations) os << " " << v.message << " [" << v.location << "];";
        throw DomainError(os.str());
    }
    CoverResult r;
    std::map<std::string, const CoverVertex*> cv;
    for (const auto& x : cover.vertices) {
        cv[x.id] = &x;
        const VertexData& d = base.vertices.at(x.base);
        Rational ratio(x.piece_degree, x.fiber_degree);
        r.manifold.add_vertex(x.id, ratio * d.chi, ratio / Rational(x.fiber_degree) * d.k);
    }
    for (const auto& e : cover.edges) {
        const CoverVertex& xu = *cv.at(e.u);
        const CoverVertex& xv = *cv.at(e.v);
        Rational b = *base.edge_b(xu.base, xv.base);
        Rational b2 = Rational(xu.fiber_degree) * Rational(xv.fiber_degree) / Rational(e.torus_degree) * b;
        if (!b2.is_integer()) r.warnings.push_back({"non-integral intersection number " + b2.str(), edge_label(e.u, e.v), true});
        r.manifold.add_edge(e.u, e.v, b2);
    }
    return r;
}

CoverSpec compose_covers(const CoverSpec& inner, const CoverSpec& outer) {
    std::map<std::string, const CoverVertex*> mid;
    for (const auto& x : inner.vertices) mid[x.id] = &x;
    std::map<std::pair<std::string, std::string>, long> mid_torus;
    for (const auto& e : inner.edges) mid_torus[ordered(e.u, e.v)] = e.torus_degree;

    CoverSpec c;
    std::map<std::string, const CoverVertex*> top;
    for (const auto& x : outer.vertices) {
        top[x.id] = &x;
        auto it = mid.find(x.base);
        if (it == mid.end()) throw DomainError("outer cover vertex over unknown vertex '" + x.base + "'");
        c.vertices.push_back({x.id, it->second->base, x.piece_degree * it->second->piece_degree,
                              x.fiber_degree * it->second->fiber_degree});
    }
    for (const auto& e : outer.edges) {
        auto key = ordered(top.at(e.u)->base, top.at(e.v)->base);
        auto it = mid_torus.find(key);
        if (it == mid_torus.end()) throw DomainError("outer cover edge over a non-edge " + edge_label(key.first, key.second));
        CoverEdge ce{e.u, e.v, e.torus_degree * it->second, std::nullopt, std::nullopt};
        c.edges.push_back(ce);
    }
    return c;
}

CoverSpec cyclic_graph_cover(long n, long d) {
    if (n < 3 || d < 1) throw DomainError("cyclic graph cover needs n >= 3 and d >= 1");
    CoverSpec c;
    const long nd = n * d;
    for (long j = 0; j < nd; ++j) c.vertices.push_back({cyclic_vertex_id(nd, j), cyclic_vertex_id(n, j % n), 1, 1});
    for (long j = 0; j < nd; ++j)
        c.edges.push_back({cyclic_vertex_id(nd, j), cyclic_vertex_id(nd, (j + 1) % nd), 1, std::nullopt, std::nullopt});
    return c;
}

}  // namespace seifertvol
