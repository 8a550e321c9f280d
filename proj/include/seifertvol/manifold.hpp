#pragma once

#include "seifertvol/rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace seifertvol {

struct VertexData {
    Rational chi;
    Rational k;
};

// Unordered edge; constructors store u <= v.
struct Edge {
    std::string u;
    std::string v;
    Rational b;
};

struct Violation {
    std::string message;
    std::string location;
    bool warning = false;
};

// JSJ data of a formatted graph manifold. Plain data: construction never
// validates, operations that need the invariants call ensure_valid().
struct FormattedGraphManifold {
    std::map<std::string, VertexData> vertices;
    std::vector<Edge> edges;

    void add_vertex(const std::string& id, Rational chi, Rational k);
    void add_edge(const std::string& u, const std::string& v, Rational b);

    // Lexicographic order, the matrix index order everywhere.
    std::vector<std::string> vertex_ids() const;
    std::size_t index_of(const std::string& id) const;
    // Incident edges at v as (neighbor, b), one entry per edge.
    std::vector<std::pair<std::string, Rational>> neighbors(const std::string& v) const;
    std::optional<Rational> edge_b(const std::string& u, const std::string& v) const;
    std::size_t valence(const std::string& v) const;

    friend bool operator==(const FormattedGraphManifold& a, const FormattedGraphManifold& b);
};

std::vector<Violation> validate(const FormattedGraphManifold& m);
bool has_errors(const std::vector<Violation>& violations);
// Throws DomainError listing every non-warning violation.
void ensure_valid(const FormattedGraphManifold& m);

struct ConePoint {
    long beta;
    long alpha;
};

struct SeifertSymbol {
    long genus = 0;
    std::vector<ConePoint> cone_points;
    std::optional<long> alpha0;  // normalized fibration symbols only
};

Rational chi_orbifold(const SeifertSymbol& sym);
Rational euler_number(const SeifertSymbol& sym);

// Vertices "+" and "-", one edge with intersection number b.
FormattedGraphManifold twisted_doubling(long g, long a, long b, long c, long d);
// Cycle Z/nZ with zero-padded decimal ids so lexicographic = cyclic order.
FormattedGraphManifold constant_cyclic(long n, const Rational& chi, const Rational& k, long b);
std::string cyclic_vertex_id(long n, long j);

struct CoverVertex {
    std::string id;
    std::string base;
    long piece_degree = 1;
    long fiber_degree = 1;
};

struct CoverEdge {
    std::string u;
    std::string v;
    long torus_degree = 1;
    // Optional redundant copies of the endpoint fiber degrees.
    std::optional<long> fiber_degree_u;
    std::optional<long> fiber_degree_v;
};

struct CoverSpec {
    std::vector<CoverVertex> vertices;
    std::vector<CoverEdge> edges;
};

struct CoverResult {
    FormattedGraphManifold manifold;
    std::vector<Violation> warnings;  // non-integral b'
};

std::vector<Violation> cover_violations(const FormattedGraphManifold& base, const CoverSpec& cover);
CoverResult apply_cover(const FormattedGraphManifold& base, const CoverSpec& cover);
// `outer` covers the manifold produced by `inner`; result covers the base of
// `inner` with degrees multiplied.
CoverSpec compose_covers(const CoverSpec& inner, const CoverSpec& outer);
// Degree-d cyclic graph cover of constant_cyclic(n, ...), all degrees 1, with
// covering ids matching constant_cyclic(n*d, ...).
CoverSpec cyclic_graph_cover(long n, long d);

}  // namespace seifertvol
