#include "hyperball/selfmap_json.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hyperball/textio.hpp"

namespace hyperball {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& what) { throw std::invalid_argument("config: " + what); }

const json& require_field(const json& o, const char* name) {
    if (!o.is_object()) fail(std::string("expected an object around field '") + name + "'");
    const auto it = o.find(name);
    if (it == o.end()) fail(std::string("missing field '") + name + "'");
    return *it;
}

double as_number(const json& v, const char* name) {
    if (!v.is_number()) fail(std::string("field '") + name + "' must be a number");
    return v.get<double>();
}

cnum as_complex(const json& v, const char* name) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
        fail(std::string("field '") + name + "' must be a [re, im] pair");
    return {v[0].get<double>(), v[1].get<double>()};
}

cvec as_cvec(const json& v, const char* name) {
    if (!v.is_array() || v.empty()) fail(std::string("field '") + name + "' must be a nonempty array");
    cvec out;
    out.reserve(v.size());
    for (const json& e : v) out.push_back(as_complex(e, name));
    return out;
}

cmat as_cmat(const json& v, const char* name) {
    const cvec flat = as_cvec(v, name);
    const int n = static_cast<int>(std::llround(std::sqrt(static_cast<double>(flat.size()))));
    if (static_cast<std::size_t>(n) * n != flat.size())
        fail(std::string("field '") + name + "' must hold n*n row-major entries");
    cmat m(n);
    m.a = flat;
    return m;
}

SelfMapPtr parse_map(const json& v);

std::vector<SelfMapPtr> parse_map_list(const json& v, const char* name) {
    if (!v.is_array() || v.empty()) fail(std::string("field '") + name + "' must be a nonempty array");
    std::vector<SelfMapPtr> out;
    out.reserve(v.size());
    for (const json& e : v) out.push_back(parse_map(e));
    return out;
}

SelfMapPtr parse_map(const json& v) {
    const json& tv = require_field(v, "type");
    if (!tv.is_string()) fail("field 'type' must be a string");
    const std::string type = tv.get<std::string>();
    try {
        if (type == "identity") {
            int dim = 0;
            if (const auto it = v.find("dim"); it != v.end())
                dim = static_cast<int>(as_number(*it, "dim"));
            return make_identity(dim);
        }
        if (type == "constant") return make_constant(BallPoint(as_cvec(require_field(v, "c"), "c")));
        if (type == "linear_contraction")
            return make_linear_contraction(as_cmat(require_field(v, "matrix"), "matrix"));
        if (type == "unitary") return make_unitary(as_cmat(require_field(v, "matrix"), "matrix"));
        if (type == "mobius_auto")
            return make_mobius_auto(BallPoint(as_cvec(require_field(v, "a"), "a")));
        if (type == "compose") return make_compose(parse_map_list(require_field(v, "maps"), "maps"));
        if (type == "convex_combination") {
            const json& wv = require_field(v, "weights");
            if (!wv.is_array()) fail("field 'weights' must be an array");
            std::vector<double> w;
            for (const json& e : wv) w.push_back(as_number(e, "weights"));
            return make_convex_combination(std::move(w),
                                           parse_map_list(require_field(v, "maps"), "maps"));
        }
        if (type == "siegel_affine") {
            const double B = as_number(require_field(v, "B"), "B");
            const double a = as_number(require_field(v, "a"), "a");
            BoundaryPoint tau(as_cvec(require_field(v, "tau"), "tau"));
            return make_siegel_affine(B, a, HoroContext(std::move(tau)));
        }
    } catch (const std::invalid_argument& e) {
        // keep factory messages but mark them as config-level
        fail(std::string("map '") + type + "': " + e.what());
    }
    fail("unknown map type '" + type + "'");
}

void write_cvec(std::ostream& os, const cvec& v) {
    os << '[';
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << ',';
        os << '[' << fmt_g17(v[i].real()) << ',' << fmt_g17(v[i].imag()) << ']';
    }
    os << ']';
}

void write_map(std::ostream& os, const SelfMapExpr& f) {
    std::visit(
        [&](const auto& node) {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, IdentityMap>) {
                os << R"({"type":"identity","dim":)" << f.dim << '}';
            } else if constexpr (std::is_same_v<T, ConstantMap>) {
                os << R"({"type":"constant","c":)";
                write_cvec(os, node.value.vec());
                os << '}';
            } else if constexpr (std::is_same_v<T, LinearContractionMap>) {
                os << R"({"type":"linear_contraction","matrix":)";
                write_cvec(os, node.m.a);
                os << '}';
            } else if constexpr (std::is_same_v<T, UnitaryMap>) {
                os << R"({"type":"unitary","matrix":)";
                write_cvec(os, node.u.a);
                os << '}';
            } else if constexpr (std::is_same_v<T, MobiusAutoMap>) {
                os << R"({"type":"mobius_auto","a":)";
                write_cvec(os, node.a.vec());
                os << '}';
            } else if constexpr (std::is_same_v<T, ComposeMap>) {
                os << R"({"type":"compose","maps":[)";
                for (std::size_t i = 0; i < node.maps.size(); ++i) {
                    if (i) os << ',';
                    write_map(os, *node.maps[i]);
                }
                os << "]}";
            } else if constexpr (std::is_same_v<T, ConvexCombinationMap>) {
                os << R"({"type":"convex_combination","weights":[)";
                for (std::size_t i = 0; i < node.weights.size(); ++i) {
                    if (i) os << ',';
                    os << fmt_g17(node.weights[i]);
                }
                os << R"(],"maps":[)";
                for (std::size_t i = 0; i < node.maps.size(); ++i) {
                    if (i) os << ',';
                    write_map(os, *node.maps[i]);
                }
                os << "]}";
            } else {
                os << R"({"type":"siegel_affine","B":)" << fmt_g17(node.B) << R"(,"a":)"
                   << fmt_g17(node.a) << R"(,"tau":)";
                write_cvec(os, node.ctx.tau().vec());
                os << '}';
            }
        },
        f.node);
}

json parse_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        fail(std::string("malformed JSON: ") + e.what());
    }
}

}  // namespace

SelfMapPtr selfmap_from_json_text(const std::string& text) { return parse_map(parse_text(text)); }

std::string selfmap_to_json_text(const SelfMapExpr& f) {
    std::ostringstream os;
    write_map(os, f);
    return os.str();
}

ExperimentConfig config_from_json_text(const std::string& text) {
    const json root = parse_text(text);
    ExperimentConfig cfg;
    cfg.dimension = static_cast<int>(as_number(require_field(root, "dimension"), "dimension"));
    if (cfg.dimension < 1) fail("field 'dimension' must be >= 1");
    cfg.map = parse_map(require_field(root, "map"));
    if (cfg.map->dim != 0 && cfg.map->dim != cfg.dimension)
        fail("field 'map' dimension disagrees with 'dimension'");

    const json& sv = require_field(root, "seed");
    if (!sv.is_number_unsigned()) fail("field 'seed' must be an unsigned integer");
    cfg.seed = sv.get<std::uint64_t>();

    if (const auto it = root.find("tau"); it != root.end() && !it->is_null()) {
        cvec tv = as_cvec(*it, "tau");
        if (tv.size() != static_cast<std::size_t>(cfg.dimension)) fail("field 'tau' has wrong dimension");
        try {
            cfg.tau = BoundaryPoint(std::move(tv));
        } catch (const std::invalid_argument& e) {
            fail(std::string("field 'tau': ") + e.what());
        }
    }
    if (const auto it = root.find("z0"); it != root.end() && !it->is_null()) {
        if (!it->is_array() || it->empty()) fail("field 'z0' must be a nonempty array of points");
        for (const json& e : *it) {
            cvec zv = as_cvec(e, "z0");
            if (zv.size() != static_cast<std::size_t>(cfg.dimension)) fail("field 'z0' has wrong dimension");
            try {
                cfg.z0.emplace_back(std::move(zv));
            } catch (const std::invalid_argument& ex) {
                fail(std::string("field 'z0': ") + ex.what());
            }
        }
    }
    if (const auto it = root.find("n_max"); it != root.end()) {
        const double n = as_number(*it, "n_max");
        if (!(n >= 1.0) || n > 1e7) fail("field 'n_max' must lie in [1, 1e7]");
        cfg.n_max = static_cast<std::size_t>(n);
    }
    if (const auto it = root.find("output_path"); it != root.end()) {
        if (!it->is_string()) fail("field 'output_path' must be a string");
        cfg.output_path = it->get<std::string>();
    }
    if (const auto it = root.find("tolerances"); it != root.end()) {
        const json& t = *it;
        if (!t.is_object()) fail("field 'tolerances' must be an object");
        for (const auto& [key, value] : t.items()) {
            const double x = as_number(value, key.c_str());
            if (!(x > 0.0)) fail("tolerance '" + key + "' must be positive");
            if (key == "eps_fix")
                cfg.eps_fix = x;
            else if (key == "eps_sink")
                cfg.eps_sink = x;
            else if (key == "eps_rate")
                cfg.eps_rate = x;
            else
                fail("unknown tolerance '" + key + "'");
        }
    }
    return cfg;
}

ExperimentConfig config_from_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return config_from_json_text(buf.str());
}

}  // namespace hyperball
