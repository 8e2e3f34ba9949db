#include <cmath>
#include <set>
#include <string>

#include "cli.hpp"

namespace skinband::cli {

using nlohmann::json;

namespace {

const std::set<std::string> kKnownKeys{
    "schema", "symbol", "m",      "m_list", "n_alpha",        "n_beta",  "full_zone", "via_collapse", "rect",
    "res",    "eps",    "lambda", "lambdas", "count",         "seed",    "n_points",  "top_left_shift", "targets",
    "threads",
};

double get_double(const json& v, const std::string& where) {
    if (!v.is_number()) throw ConfigError(where, "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw ConfigError(where, "must be finite");
    return d;
}

std::size_t get_count(const json& v, const std::string& where) {
    if (!v.is_number_integer() || v.get<long long>() < 0) {
        throw ConfigError(where, "expected a non-negative integer");
    }
    return static_cast<std::size_t>(v.get<long long>());
}

cplx get_complex(const json& v, const std::string& where) {
    if (!v.is_array() || v.size() != 2) throw ConfigError(where, "complex values are written as [re, im]");
    return {get_double(v[0], where + "/0"), get_double(v[1], where + "/1")};
}

std::vector<cplx> get_complex_list(const json& v, const std::string& where) {
    if (!v.is_array()) throw ConfigError(where, "expected an array of [re, im] pairs");
    std::vector<cplx> out;
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(get_complex(v[i], where + "/" + std::to_string(i)));
    return out;
}

SymbolCoefficients parse_symbol(const json& v) {
    if (v.is_string()) return preset_symbol(v.get<std::string>());
    if (!v.is_object()) throw ConfigError("/symbol", "expected an object or a preset name");
    for (const auto& [key, _] : v.items()) {
        if (key != "diag" && key != "upper" && key != "lower" && key != "spatial_period") {
            throw ConfigError("/symbol/" + key, "unknown field");
        }
    }
    for (const char* key : {"diag", "upper", "lower"}) {
        if (!v.contains(key)) throw ConfigError(std::string("/symbol/") + key, "missing");
    }
    auto diag = get_complex_list(v["diag"], "/symbol/diag");
    auto upper = get_complex_list(v["upper"], "/symbol/upper");
    auto lower = get_complex_list(v["lower"], "/symbol/lower");
    if (diag.empty()) throw ConfigError("/symbol/diag", "need at least one cell entry");
    if (upper.size() != diag.size()) {
        throw ConfigError("/symbol/upper", "has " + std::to_string(upper.size()) + " entries but diag has " +
                                               std::to_string(diag.size()));
    }
    if (lower.size() != diag.size()) {
        throw ConfigError("/symbol/lower", "has " + std::to_string(lower.size()) + " entries but diag has " +
                                               std::to_string(diag.size()));
    }
    double period = 1.0;
    if (v.contains("spatial_period")) {
        period = get_double(v["spatial_period"], "/symbol/spatial_period");
        if (period <= 0.0) throw ConfigError("/symbol/spatial_period", "must be positive");
    }
    return SymbolCoefficients(std::move(diag), std::move(upper), std::move(lower), period);
}

}  // namespace

SymbolCoefficients preset_symbol(const std::string& name) {
    if (name == "prototype") return SymbolCoefficients({0.0, 0.0}, {-2.0, 1.0}, {-0.9, -0.1});
    if (name == "hermitian") return SymbolCoefficients({0.0, 0.0}, {cplx{1, 1}, 2.0}, {cplx{1, -1}, 2.0});
    if (name == "scalar") return SymbolCoefficients({0.0}, {2.0}, {0.5});
    throw ConfigError("/symbol", "unknown preset '" + name + "' (expected prototype, hermitian or scalar)");
}

RunConfig parse_config(const json& doc) {
    if (!doc.is_object()) throw ConfigError("", "config must be a JSON object");
    for (const auto& [key, _] : doc.items()) {
        if (!kKnownKeys.count(key)) throw ConfigError("/" + key, "unknown field");
    }
    RunConfig cfg;
    if (doc.contains("schema")) {
        if (!doc["schema"].is_string() || doc["schema"].get<std::string>() != kSchema) {
            throw ConfigError("/schema", std::string("unsupported schema (expected ") + kSchema + ")");
        }
    }
    if (doc.contains("symbol")) cfg.symbol = parse_symbol(doc["symbol"]);
    if (doc.contains("m")) cfg.m = get_count(doc["m"], "/m");
    if (doc.contains("m_list")) {
        const json& list = doc["m_list"];
        if (!list.is_array() || list.empty()) throw ConfigError("/m_list", "expected a nonempty array");
        for (std::size_t i = 0; i < list.size(); ++i) {
            cfg.m_list.push_back(get_count(list[i], "/m_list/" + std::to_string(i)));
        }
    }
    if (doc.contains("n_alpha")) cfg.n_alpha = get_count(doc["n_alpha"], "/n_alpha");
    if (doc.contains("n_beta")) cfg.n_beta = get_count(doc["n_beta"], "/n_beta");
    if (doc.contains("full_zone")) {
        if (!doc["full_zone"].is_boolean()) throw ConfigError("/full_zone", "expected true or false");
        cfg.full_zone = doc["full_zone"].get<bool>();
    }
    if (doc.contains("via_collapse")) {
        const json& v = doc["via_collapse"];
        if (v.is_boolean()) {
            cfg.via_collapse = v.get<bool>();
        } else if (!(v.is_string() && v.get<std::string>() == "auto")) {
            throw ConfigError("/via_collapse", "expected true, false or \"auto\"");
        }
    }
    if (doc.contains("rect")) {
        const json& r = doc["rect"];
        if (!r.is_array() || r.size() != 4) throw ConfigError("/rect", "expected [re_min, re_max, im_min, im_max]");
        cfg.rect = Rectangle{get_double(r[0], "/rect/0"), get_double(r[1], "/rect/1"), get_double(r[2], "/rect/2"),
                             get_double(r[3], "/rect/3")};
    }
    if (doc.contains("res")) {
        const json& r = doc["res"];
        if (!r.is_array() || r.size() != 2) throw ConfigError("/res", "expected [nx, ny]");
        cfg.res_x = get_count(r[0], "/res/0");
        cfg.res_y = get_count(r[1], "/res/1");
    }
    if (doc.contains("eps")) {
        const json& e = doc["eps"];
        if (!e.is_array()) throw ConfigError("/eps", "expected an array of positive numbers");
        for (std::size_t i = 0; i < e.size(); ++i) {
            const double v = get_double(e[i], "/eps/" + std::to_string(i));
            if (v <= 0.0) throw ConfigError("/eps/" + std::to_string(i), "must be positive");
            cfg.eps.push_back(v);
        }
    }
    if (doc.contains("lambda")) cfg.lambdas.push_back(get_complex(doc["lambda"], "/lambda"));
    if (doc.contains("lambdas")) {
        const auto more = get_complex_list(doc["lambdas"], "/lambdas");
        cfg.lambdas.insert(cfg.lambdas.end(), more.begin(), more.end());
    }
    if (doc.contains("count")) cfg.count = get_count(doc["count"], "/count");
    if (doc.contains("seed")) cfg.seed = get_count(doc["seed"], "/seed");
    if (doc.contains("n_points")) cfg.n_points = get_count(doc["n_points"], "/n_points");
    if (doc.contains("top_left_shift")) cfg.top_left_shift = get_complex(doc["top_left_shift"], "/top_left_shift");
    if (doc.contains("targets")) {
        const json& t = doc["targets"];
        if (!t.is_array()) throw ConfigError("/targets", "expected an array drawn from \"obc\", \"pbc\"");
        cfg.obc = cfg.pbc = false;
        for (std::size_t i = 0; i < t.size(); ++i) {
            const std::string where = "/targets/" + std::to_string(i);
            if (!t[i].is_string()) throw ConfigError(where, "expected \"obc\" or \"pbc\"");
            const std::string name = t[i].get<std::string>();
            if (name == "obc") {
                cfg.obc = true;
            } else if (name == "pbc") {
                cfg.pbc = true;
            } else {
                throw ConfigError(where, "unknown target '" + name + "'");
            }
        }
    }
    if (doc.contains("threads")) cfg.threads = static_cast<unsigned>(get_count(doc["threads"], "/threads"));
    return cfg;
}

RunConfig parse_config_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError("byte " + std::to_string(e.byte), "malformed JSON");
    }
    return parse_config(doc);
}

}  // namespace skinband::cli
