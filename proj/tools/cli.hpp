#pragma once

// Batch front end for the skinband library: config parsing, command
// dispatch and the CSV/JSON dataset formats.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "skinband/limits.hpp"
#include "skinband/spectral_set.hpp"
#include "skinband/symbol.hpp"

namespace skinband::cli {

inline constexpr const char* kSchema = "gbz-spectra/1";

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;
inline constexpr int kExitIo = 4;

/// Invalid or inconsistent configuration. `where` names the offending field
/// as a JSON pointer, or the parse position.
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& where, const std::string& what)
        : std::runtime_error(where.empty() ? what : where + ": " + what) {}
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::optional<SymbolCoefficients> symbol;
    std::optional<std::size_t> m;
    std::vector<std::size_t> m_list;
    std::size_t n_alpha = 0;  // 0: command default
    std::size_t n_beta = 0;
    bool full_zone = false;
    std::optional<bool> via_collapse;
    std::optional<Rectangle> rect;
    std::size_t res_x = 0;
    std::size_t res_y = 0;
    std::vector<double> eps;
    std::vector<cplx> lambdas;
    std::size_t count = 0;    // random draws for gbz-locate / classify
    std::uint64_t seed = 1;
    std::size_t n_points = 256;
    cplx top_left_shift{};
    bool obc = true;
    bool pbc = true;
    unsigned threads = 0;
};

/// Reads the JSON config. Unknown top-level keys are rejected so typos do not
/// silently fall back to defaults.
RunConfig parse_config(const nlohmann::json& doc);
RunConfig parse_config_text(const std::string& text);

/// Built-in symbols: "prototype", "hermitian", "scalar".
SymbolCoefficients preset_symbol(const std::string& name);

/// Tabular dataset with named columns. Cells hold numbers, strings or
/// booleans; CSV formats numbers with format_double.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<nlohmann::json>> rows;
    nlohmann::json extra = nlohmann::json::object();  // extra top-level JSON fields
};

/// Shortest decimal that reads back to the same double; "nan", "inf", "-inf"
/// for non-finite values.
std::string format_double(double v);

void write_spectral_set_csv(std::ostream& os, const SpectralSet& set);
nlohmann::json spectral_set_json(const SpectralSet& set);
void write_grid_csv(std::ostream& os, const PseudospectrumGrid& grid);
nlohmann::json grid_json(const PseudospectrumGrid& grid);
void write_table_csv(std::ostream& os, const Table& table);
nlohmann::json table_json(const Table& table, const std::string& kind);

/// Inverse of the emitters; reject other schema versions with ConfigError.
SpectralSet parse_spectral_set_json(const std::string& text);
SpectralSet parse_spectral_set_csv(const std::string& text);

/// Writes the matrix as CSV with one quoted "re,im" cell per entry.
void write_matrix_csv(std::ostream& os, const DenseComplexMatrix& m);

/// Entry point shared by main() and the tests. args excludes the program
/// name. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace skinband::cli
