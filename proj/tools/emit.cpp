#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>

#include "cli.hpp"

namespace skinband::cli {

using nlohmann::json;

namespace {

const std::string kCsvSchemaLine = std::string("# ") + kSchema;

double parse_number(std::string_view text, std::size_t line) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw ConfigError("line " + std::to_string(line), "cannot read number '" + std::string(text) + "'");
    }
    return v;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == sep) {
            parts.push_back(line.substr(start, i - start));
            start = i + 1;
        }
    }
    return parts;
}

std::string cell_text(const json& v) {
    if (v.is_number()) return format_double(v.get<double>());
    if (v.is_null()) return "nan";
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

void require_schema(const json& doc) {
    if (!doc.is_object() || !doc.contains("schema") || !doc["schema"].is_string()) {
        throw ConfigError("/schema", "missing schema version");
    }
    const std::string version = doc["schema"].get<std::string>();
    if (version != kSchema) throw ConfigError("/schema", "unsupported schema version '" + version + "'");
}

}  // namespace

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

void write_spectral_set_csv(std::ostream& os, const SpectralSet& set) {
    os << kCsvSchemaLine << '\n' << "re,im,source,param1,param2\n";
    for (const auto& p : set.points) {
        os << format_double(p.value.real()) << ',' << format_double(p.value.imag()) << ',' << to_string(p.source)
           << ',' << format_double(p.param1) << ',' << format_double(p.param2) << '\n';
    }
}

json spectral_set_json(const SpectralSet& set) {
    json points = json::array();
    for (const auto& p : set.points) {
        points.push_back({{"re", p.value.real()},
                          {"im", p.value.imag()},
                          {"source", std::string(to_string(p.source))},
                          {"param1", p.param1},
                          {"param2", p.param2}});
    }
    return {{"schema", kSchema}, {"kind", "spectral-set"}, {"sampling_bound", set.sampling_bound}, {"points", points}};
}

void write_grid_csv(std::ostream& os, const PseudospectrumGrid& grid) {
    os << kCsvSchemaLine << '\n' << "x,y,sigma_min\n";
    for (std::size_t iy = 0; iy < grid.ny; ++iy) {
        for (std::size_t ix = 0; ix < grid.nx; ++ix) {
            os << format_double(grid.x(ix)) << ',' << format_double(grid.y(iy)) << ','
               << format_double(grid.at(ix, iy)) << '\n';
        }
    }
}

json grid_json(const PseudospectrumGrid& grid) {
    json xs = json::array();
    json ys = json::array();
    for (std::size_t ix = 0; ix < grid.nx; ++ix) xs.push_back(grid.x(ix));
    for (std::size_t iy = 0; iy < grid.ny; ++iy) ys.push_back(grid.y(iy));
    const Rectangle& r = grid.rectangle;
    return {{"schema", kSchema},
            {"kind", "pseudospectrum"},
            {"cells", grid.cells},
            {"rect", {r.re_min, r.re_max, r.im_min, r.im_max}},
            {"nx", grid.nx},
            {"ny", grid.ny},
            {"x", xs},
            {"y", ys},
            {"sigma_min", grid.values}};
}

void write_table_csv(std::ostream& os, const Table& table) {
    os << kCsvSchemaLine << '\n';
    for (std::size_t c = 0; c < table.columns.size(); ++c) os << (c ? "," : "") << table.columns[c];
    os << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << cell_text(row[c]);
        os << '\n';
    }
}

json table_json(const Table& table, const std::string& kind) {
    json out = {{"schema", kSchema}, {"kind", kind}, {"columns", table.columns}, {"rows", table.rows}};
    for (const auto& [key, value] : table.extra.items()) out[key] = value;
    return out;
}

SpectralSet parse_spectral_set_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError("byte " + std::to_string(e.byte), "malformed JSON");
    }
    require_schema(doc);
    if (doc.value("kind", "") != "spectral-set") throw ConfigError("/kind", "not a spectral set");
    SpectralSet set;
    set.sampling_bound = doc.at("sampling_bound").get<double>();
    const json& points = doc.at("points");
    for (std::size_t i = 0; i < points.size(); ++i) {
        const json& p = points[i];
        const std::string where = "/points/" + std::to_string(i);
        const auto source = source_from_string(p.at("source").get<std::string>());
        if (!source) throw ConfigError(where + "/source", "unknown source tag");
        set.points.push_back({{p.at("re").get<double>(), p.at("im").get<double>()},
                              *source,
                              p.at("param1").get<double>(),
                              p.at("param2").get<double>()});
    }
    return set;
}

SpectralSet parse_spectral_set_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line.rfind("# ", 0) != 0) {
        throw ConfigError("line 1", "missing schema comment");
    }
    if (line != kCsvSchemaLine) throw ConfigError("line 1", "unsupported schema version '" + line.substr(2) + "'");
    if (!std::getline(in, line) || line != "re,im,source,param1,param2") {
        throw ConfigError("line 2", "unexpected header");
    }
    SpectralSet set;
    std::size_t lineno = 2;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto parts = split(line, ',');
        if (parts.size() != 5) throw ConfigError("line " + std::to_string(lineno), "expected 5 columns");
        const auto source = source_from_string(parts[2]);
        if (!source) throw ConfigError("line " + std::to_string(lineno), "unknown source tag");
        set.points.push_back({{parse_number(parts[0], lineno), parse_number(parts[1], lineno)},
                              *source,
                              parse_number(parts[3], lineno),
                              parse_number(parts[4], lineno)});
    }
    return set;
}

void write_matrix_csv(std::ostream& os, const DenseComplexMatrix& m) {
    os << kCsvSchemaLine << '\n';
    for (std::size_t i = 0; i < m.order(); ++i) {
        for (std::size_t j = 0; j < m.order(); ++j) {
            const cplx v = m(i, j);
            os << (j ? "," : "") << '"' << format_double(v.real()) << ',' << format_double(v.imag()) << '"';
        }
        os << '\n';
    }
}

}  // namespace skinband::cli
