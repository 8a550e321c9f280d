#include "seifertvol/manifold_io.hpp"

#include "seifertvol/errors.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace seifertvol {

using nlohmann::json;

namespace {

std::string position(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

const json& field(const json& obj, const std::string& key, const std::string& path) {
    if (!obj.is_object()) throw InputError(path + ": expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) throw InputError(path + "." + key + ": missing field");
    return *it;
}

std::string string_field(const json& obj, const std::string& key, const std::string& path) {
    const json& v = field(obj, key, path);
    if (!v.is_string()) throw InputError(path + "." + key + ": expected a string");
    return v.get<std::string>();
}

long positive_field(const json& obj, const std::string& key, const std::string& path, long fallback, bool required) {
    auto it = obj.find(key);
    if (it == obj.end()) {
        if (required) throw InputError(path + "." + key + ": missing field");
        return fallback;
    }
    if (!it->is_number_integer()) throw InputError(path + "." + key + ": expected an integer");
    long v = it->get<long>();
    if (v < 1) throw InputError(path + "." + key + ": expected a positive integer");
    return v;
}

const json& array_field(const json& obj, const std::string& key, const std::string& path) {
    const json& v = field(obj, key, path);
    if (!v.is_array()) throw InputError(path + "." + key + ": expected an array");
    return v;
}

}  // namespace

json parse_json_text(const std::string& text, const std::string& source) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(source + ": malformed JSON at " + position(text, e.byte) + ": " + e.what());
    }
}

Rational rational_from_json(const json& j, const std::string& path) {
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (j.is_string()) {
        try {
            return Rational::parse(j.get<std::string>());
        } catch (const std::exception&) {
            throw InputError(path + ": expected a rational \"p/q\", got \"" + j.get<std::string>() + "\"");
        }
    }
    throw InputError(path + ": expected a rational \"p/q\" string or an integer");
}

FormattedGraphManifold manifold_from_json(const json& j) {
    FormattedGraphManifold m;
    const json& vs = array_field(j, "vertices", "manifold");
    for (std::size_t i = 0; i < vs.size(); ++i) {
        std::string path = "vertices[" + std::to_string(i) + "]";
        std::string id = string_field(vs[i], "id", path);
        if (m.vertices.count(id)) throw InputError(path + ".id: duplicate vertex id '" + id + "'");
        m.add_vertex(id, rational_from_json(field(vs[i], "chi", path), path + ".chi"),
                     rational_from_json(field(vs[i], "k", path), path + ".k"));
    }
    auto it = j.find("edges");
    if (it != j.end()) {
        if (!it->is_array()) throw InputError("manifold.edges: expected an array");
        for (std::size_t i = 0; i < it->size(); ++i) {
            const json& e = (*it)[i];
            std::string path = "edges[" + std::to_string(i) + "]";
            m.add_edge(string_field(e, "u", path), string_field(e, "v", path), rational_from_json(field(e, "b", path), path + ".b"));
        }
    }
    return m;
}

FormattedGraphManifold parse_manifold(const std::string& text, const std::string& source) {
    json j = parse_json_text(text, source);
    try {
        return manifold_from_json(j);
    } catch (const InputError& e) {
        throw InputError(source + ": " + e.what());
    }
}

json manifold_to_json(const FormattedGraphManifold& m) {
    json vs = json::array();
    for (const auto& [id, d] : m.vertices) vs.push_back({{"id", id}, {"chi", d.chi.str()}, {"k", d.k.str()}});
    json es = json::array();
    for (const auto& e : m.edges) {
        json b = e.b.is_integer() ? json(e.b.to_long()) : json(e.b.str());
        es.push_back({{"u", e.u}, {"v", e.v}, {"b", b}});
    }
    return {{"vertices", vs}, {"edges", es}};
}

CoverSpec cover_from_json(const json& j) {
    CoverSpec c;
    const json& vs = array_field(j, "vertices", "cover");
    for (std::size_t i = 0; i < vs.size(); ++i) {
        std::string path = "cover.vertices[" + std::to_string(i) + "]";
        c.vertices.push_back({string_field(vs[i], "id", path), string_field(vs[i], "base", path),
                              positive_field(vs[i], "piece_degree", path, 1, false),
                              positive_field(vs[i], "fiber_degree", path, 1, false)});
    }
    const json& es = array_field(j, "edges", "cover");
    for (std::size_t i = 0; i < es.size(); ++i) {
        std::string path = "cover.edges[" + std::to_string(i) + "]";
        CoverEdge e{string_field(es[i], "u", path), string_field(es[i], "v", path),
                    positive_field(es[i], "torus_degree", path, 1, false), std::nullopt, std::nullopt};
        if (es[i].contains("fiber_degree_u")) e.fiber_degree_u = positive_field(es[i], "fiber_degree_u", path, 1, true);
        if (es[i].contains("fiber_degree_v")) e.fiber_degree_v = positive_field(es[i], "fiber_degree_v", path, 1, true);
        c.edges.push_back(e);
    }
    return c;
}

json cover_to_json(const CoverSpec& c) {
    json vs = json::array();
    for (const auto& x : c.vertices)
        vs.push_back({{"id", x.id}, {"base", x.base}, {"piece_degree", x.piece_degree}, {"fiber_degree", x.fiber_degree}});
    json es = json::array();
    for (const auto& e : c.edges) {
        json o = {{"u", e.u}, {"v", e.v}, {"torus_degree", e.torus_degree}};
        if (e.fiber_degree_u) o["fiber_degree_u"] = *e.fiber_degree_u;
        if (e.fiber_degree_v) o["fiber_degree_v"] = *e.fiber_degree_v;
        es.push_back(o);
    }
    return {{"vertices", vs}, {"edges", es}};
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace seifertvol
