#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "cli.hpp"
#include "skinband/error.hpp"
#include "skinband/gbz.hpp"
#include "skinband/lattice.hpp"
#include "skinband/limits.hpp"
#include "skinband/modes.hpp"

namespace skinband::cli {

using nlohmann::json;

namespace {

constexpr const char* kThreadsEnv = "SKINBAND_THREADS";

enum class Format { Csv, Json };

struct Invocation {
    std::string command;
    RunConfig cfg;
    Format format = Format::Csv;
    std::string dump_matrix;
};

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

json complex_list_json(std::span<const cplx> v) {
    json out = json::array();
    for (const cplx& z : v) out.push_back(complex_json(z));
    return out;
}

std::string render_set(const SpectralSet& set, Format f) {
    std::ostringstream os;
    if (f == Format::Csv) {
        write_spectral_set_csv(os, set);
    } else {
        os << spectral_set_json(set).dump(1) << '\n';
    }
    return os.str();
}

std::string render_table(const Table& t, const std::string& kind, Format f) {
    std::ostringstream os;
    if (f == Format::Csv) {
        write_table_csv(os, t);
    } else {
        os << table_json(t, kind).dump(1) << '\n';
    }
    return os.str();
}

const SymbolCoefficients& need_symbol(const RunConfig& cfg) {
    if (!cfg.symbol) throw ConfigError("/symbol", "missing (use --config or --preset)");
    return *cfg.symbol;
}

std::size_t need_m(const RunConfig& cfg, std::size_t minimum) {
    if (!cfg.m) throw ConfigError("/m", "missing (use --m)");
    if (*cfg.m < minimum) throw ConfigError("/m", "must be at least " + std::to_string(minimum));
    return *cfg.m;
}

std::size_t or_default(std::size_t v, std::size_t fallback) { return v ? v : fallback; }

void write_matrix_dump(const std::string& path, const DenseComplexMatrix& m) {
    if (path.empty()) return;
    std::ofstream f(path);
    if (!f) throw IoError("cannot open " + path + " for writing");
    write_matrix_csv(f, m);
    if (!f) throw IoError("write to " + path + " failed");
}

std::vector<cplx> need_lambdas(const RunConfig& cfg) {
    if (cfg.lambdas.empty()) throw ConfigError("/lambda", "missing (use --lambda re,im or \"lambdas\")");
    return cfg.lambdas;
}

// Seeded spectral points: lambda in sigma(a(z)) at a uniform random
// quasimomentum of the first half of the zone.
std::vector<cplx> random_spectral_points(const SymbolCoefficients& s, std::size_t count, std::uint64_t seed) {
    const EllipseGeometry e = ellipse_geometry(s);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> alpha(-std::numbers::pi, std::numbers::pi);
    std::uniform_real_distribution<double> beta(0.0, 0.5 * std::abs(e.delta));
    std::vector<cplx> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double a = alpha(rng);
        const double b = std::copysign(beta(rng), e.delta);
        const auto evs = eigenvalues(evaluate(s, std::exp(cplx{b, -a})));
        out.push_back(evs[rng() % evs.size()]);
    }
    return out;
}

std::string cmd_symbol_info(const Invocation& inv) {
    const SymbolCoefficients& s = need_symbol(inv.cfg);
    const double sign = (s.k() % 2 == 1) ? 1.0 : -1.0;
    json info = {{"schema", kSchema},
                 {"kind", "symbol-info"},
                 {"k", s.k()},
                 {"spatial_period", s.spatial_period()},
                 {"reciprocal_degenerate", s.reciprocal_degenerate()},
                 {"psi_z_coefficient", complex_json(sign * s.lower_product())},
                 {"psi_inverse_z_coefficient", complex_json(sign * s.upper_product())}};
    if (!s.reciprocal_degenerate()) {
        const EllipseGeometry e = ellipse_geometry(s);
        const SymbolCoefficients c = collapsed_symbol(s);
        info["delta"] = e.delta;
        info["zeta"] = e.zeta;
        info["rotation"] = complex_json(e.rotation);
        info["a_plus"] = e.a_plus;
        info["a_minus"] = e.a_minus;
        info["semi_axes_beta0"] = {e.real_semi_axis(0.0), e.imag_semi_axis(0.0)};
        info["semi_axes_half_delta"] = {e.real_semi_axis(0.5 * e.delta), e.imag_semi_axis(0.5 * e.delta)};
        info["collapsed"] = e.collapsed();
        info["collapsed_symbol"] = {{"diag", complex_list_json(c.diag())},
                                    {"upper", complex_list_json(c.upper())},
                                    {"lower", complex_list_json(c.lower())}};
    }
    if (inv.format == Format::Json) return info.dump(1) + "\n";

    Table t;
    t.columns = {"key", "value"};
    for (const auto& [key, value] : info.items()) {
        if (key == "schema") continue;
        if (value.is_structured()) {
            t.rows.push_back({key, value.dump()});
        } else {
            t.rows.push_back({key, value});
        }
    }
    std::ostringstream os;
    write_table_csv(os, t);
    return os.str();
}

std::string cmd_finite_spectrum(const Invocation& inv) {
    const SymbolCoefficients& s = need_symbol(inv.cfg);
    const std::size_t m = need_m(inv.cfg, 1);
    write_matrix_dump(inv.dump_matrix, toeplitz_matrix(s, m).matrix);
    return render_set(finite_obc_spectrum(s, m, inv.cfg.via_collapse), inv.format);
}

std::string cmd_circulant_spectrum(const Invocation& inv) {
    const SymbolCoefficients& s = need_symbol(inv.cfg);
    const std::size_t m = need_m(inv.cfg, 2);
    write_matrix_dump(inv.dump_matrix, circulant_matrix(s, m).matrix);
    return render_set(finite_pbc_spectrum(s, m), inv.format);
}

std::string cmd_laurent_sample(const Invocation& inv) {
    return render_set(laurent_spectrum_sample(need_symbol(inv.cfg), or_default(inv.cfg.n_alpha, 512)), inv.format);
}

std::string cmd_obc_limit(const Invocation& inv) {
    return render_set(obc_limit_set(need_symbol(inv.cfg), or_default(inv.cfg.n_alpha, 512)), inv.format);
}

std::string cmd_toeplitz_sample(const Invocation& inv) {
    const RunConfig& c = inv.cfg;
    return render_set(toeplitz_spectrum_sample(need_symbol(c), or_default(c.n_alpha, 256), or_default(c.n_beta, 16),
                                               c.full_zone),
                      inv.format);
}

std::vector<cplx> lambdas_or_draws(const RunConfig& cfg) {
    if (cfg.count > 0) {
        auto draws = random_spectral_points(need_symbol(cfg), cfg.count, cfg.seed);
        draws.insert(draws.begin(), cfg.lambdas.begin(), cfg.lambdas.end());
        return draws;
    }
    return need_lambdas(cfg);
}

std::string cmd_gbz_locate(const Invocation& inv) {
    const SymbolCoefficients& s = need_symbol(inv.cfg);
    Table t;
    t.columns = {"re", "im", "alpha1", "beta1", "alpha2", "beta2"};
    for (const cplx& lam : lambdas_or_draws(inv.cfg)) {
        const QuasiperiodicPair q = locate_quasiperiodicities(s, lam);
        t.rows.push_back({lam.real(), lam.imag(), q.first.alpha, q.first.beta, q.second.alpha, q.second.beta});
    }
    return render_table(t, "gbz-locate", inv.format);
}

std::string cmd_classify(const Invocation& inv) {
    const SymbolCoefficients& s = need_symbol(inv.cfg);
    const EllipseGeometry e = ellipse_geometry(s);
    Table t;
    t.columns = {"re", "im", "tag", "winding", "membership"};
    for (const cplx& lam : lambdas_or_draws(inv.cfg)) {
        const SpectralClassification c = classify(s, lam);
        t.rows.push_back({lam.real(), lam.imag(), std::string(to_string(c.tag)), c.winding,
                          std::string(to_string(ellipse_membership(e, -g_polynomial(s, lam))))});
    }
    return render_table(t, "classify", inv.format);
}

std::string cmd_winding(const Invocation& inv) {
    const SymbolCoefficients& s = need_symbol(inv.cfg);
    Table t;
    t.columns = {"re", "im", "winding"};
    for (const cplx& lam : need_lambdas(inv.cfg)) {
        t.rows.push_back({lam.real(), lam.imag(), winding_number(s, lam, inv.cfg.n_points)});
    }
    return render_table(t, "winding", inv.format);
}

std::string cmd_pseudospectrum(const Invocation& inv) {
    const RunConfig& c = inv.cfg;
    const SymbolCoefficients& s = need_symbol(c);
    const std::size_t m = need_m(c, 1);
    const Rectangle rect = c.rect.value_or(Rectangle{-3.0, 3.0, -3.0, 3.0});
    const PseudospectrumGrid grid =
        pseudospectrum_grid(s, m, rect, or_default(c.res_x, 100), or_default(c.res_y, 100), c.threads);
    std::ostringstream os;
    if (inv.format == Format::Csv) {
        write_grid_csv(os, grid);
        return os.str();
    }
    json doc = grid_json(grid);
    json levels = json::array();
    for (const double eps : c.eps) {
        const auto below = std::count_if(grid.values.begin(), grid.values.end(), [&](double v) { return v <= eps; });
        levels.push_back({{"eps", eps}, {"cells_below", below}});
    }
    doc["eps_levels"] = levels;
    os << doc.dump(1) << '\n';
    return os.str();
}

std::string cmd_convergence(const Invocation& inv) {
    const RunConfig& c = inv.cfg;
    const SymbolCoefficients& s = need_symbol(c);
    if (c.m_list.empty()) throw ConfigError("/m_list", "missing (use --m-list)");
    const auto rows = convergence_study(s, c.m_list, {c.obc, c.pbc}, or_default(c.n_alpha, 4001));
    Table t;
    t.columns = {"m", "d_obc_directed", "d_obc_sampling_bound", "d_pbc"};
    for (const auto& r : rows) t.rows.push_back({r.m, r.d_obc_directed, r.d_obc_sampling_bound, r.d_pbc});
    return render_table(t, "convergence", inv.format);
}

std::string cmd_decay(const Invocation& inv) {
    const SymbolCoefficients& s = need_symbol(inv.cfg);
    const std::size_t m = need_m(inv.cfg, 4);
    Table t;
    t.columns = {"re", "im", "beta_hat", "fit_residual"};
    for (const FiniteMode& mode : obc_eigenmodes(s, m)) {
        const DecayFit fit = decay_rate(mode.vector, s.k());
        t.rows.push_back(
            {mode.eigenvalue.real(), mode.eigenvalue.imag(), fit.beta / s.spatial_period(), fit.residual});
    }
    t.extra["half_delta"] = 0.5 * ellipse_geometry(s).delta / s.spatial_period();
    return render_table(t, "decay", inv.format);
}

std::string cmd_modes_render(const Invocation& inv) {
    const RunConfig& c = inv.cfg;
    const SymbolCoefficients& s = need_symbol(c);
    const cplx lambda = need_lambdas(c).front();
    const std::size_t m = c.m ? need_m(c, 2) : 40;
    const SymbolicEigenvector v = symbolic_eigenvector(s, lambda, m, c.top_left_shift);
    Table t;
    t.columns = {"cell", "site", "re", "im", "abs"};
    for (std::size_t i = 0; i < v.rendered.size(); ++i) {
        const cplx u = v.rendered[i];
        t.rows.push_back({i / s.k(), i % s.k() + 1, u.real(), u.imag(), std::abs(u)});
    }
    const auto& q = v.quasiperiodicities;
    t.extra["lambda"] = complex_json(lambda);
    t.extra["gamma"] = {complex_json(v.gamma_first), complex_json(v.gamma_second)};
    t.extra["quasiperiodicities"] = {{q.first.alpha, q.first.beta}, {q.second.alpha, q.second.beta}};
    t.extra["residual"] = v.residual;
    return render_table(t, "modes-render", inv.format);
}

using Handler = std::function<std::string(const Invocation&)>;

struct CommandSpec {
    Handler handler;
    bool needs_nondegenerate;
    const char* help;
};

const std::map<std::string, CommandSpec>& commands() {
    static const std::map<std::string, CommandSpec> table{
        {"symbol-info", {cmd_symbol_info, false, "delta, zeta, K, semi-axes and the collapsed symbol"}},
        {"finite-spectrum", {cmd_finite_spectrum, false, "eigenvalues of the open chain T_{mk}(a)"}},
        {"circulant-spectrum", {cmd_circulant_spectrum, false, "eigenvalues of the periodic chain C_{mk}(a)"}},
        {"laurent-sample", {cmd_laurent_sample, false, "sample of the symbol curve over the unit circle"}},
        {"obc-limit", {cmd_obc_limit, true, "sample of the large-m open-chain limit"}},
        {"toeplitz-sample", {cmd_toeplitz_sample, true, "union of symbol spectra over the Brillouin zone"}},
        {"gbz-locate", {cmd_gbz_locate, true, "quasimomenta of spectral points"}},
        {"classify", {cmd_classify, true, "boundary / winding-interior / exterior"}},
        {"winding", {cmd_winding, false, "winding number of det(a(z) - lambda)"}},
        {"pseudospectrum", {cmd_pseudospectrum, false, "sigma_min(T_{mk}(a) - lambda) on a grid"}},
        {"convergence", {cmd_convergence, true, "distances to the OBC and PBC limits over m"}},
        {"decay", {cmd_decay, true, "decay rate of each open-chain eigenvector"}},
        {"modes-render", {cmd_modes_render, true, "symbolic eigenvector of T(a) over m cells"}},
    };
    return table;
}

std::vector<double> parse_number_list(const std::string& text, const std::string& flag) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ConfigError(flag, "cannot read '" + item + "' as a number");
        }
    }
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw IoError("cannot open " + path);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

int report(std::ostream& err, const std::string& prefix, const std::string& what, int code) {
    err << "skinband: " << prefix << what << '\n';
    return code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"skinband: spectra of non-reciprocal tridiagonal k-Toeplitz chains"};
    app.name("skinband");

    std::string command;
    std::string config_path;
    std::string preset;
    std::string out_path;
    std::string format = "csv";
    std::string dump_matrix;
    std::optional<std::size_t> m;
    std::string m_list;
    std::optional<std::size_t> n_alpha;
    std::optional<std::size_t> n_beta;
    bool full_zone = false;
    std::string via_collapse;
    std::string rect;
    std::string res;
    std::vector<std::string> lambdas;
    std::string eps;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> count;
    std::optional<std::size_t> n_points;
    std::string shift;
    std::optional<unsigned> threads;

    std::vector<std::string> names;
    std::string help_list;
    for (const auto& [name, spec] : commands()) {
        names.push_back(name);
        help_list += "\n  " + name + ": " + spec.help;
    }
    app.footer("Commands:" + help_list);
    app.add_option("command", command, "What to compute")->required()->check(CLI::IsMember(names));
    app.add_option("-c,--config", config_path, "JSON config file");
    app.add_option("--preset", preset, "Built-in symbol: prototype, hermitian, scalar");
    app.add_option("-o,--out", out_path, "Output file (default: stdout)");
    app.add_option("-f,--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--dump-matrix", dump_matrix, "Also write the finite matrix as CSV");
    app.add_option("--m", m, "Number of unit cells");
    app.add_option("--m-list", m_list, "Comma-separated increasing cell counts");
    app.add_option("--n-alpha", n_alpha, "Samples in alpha");
    app.add_option("--n-beta", n_beta, "Samples in beta");
    app.add_flag("--full-zone", full_zone, "Include the conjugate half of the zone");
    app.add_option("--via-collapse", via_collapse, "auto, true or false")
        ->check(CLI::IsMember({"auto", "true", "false"}));
    app.add_option("--rect", rect, "re_min,re_max,im_min,im_max");
    app.add_option("--res", res, "Grid resolution NXxNY");
    app.add_option("--lambda", lambdas, "Spectral parameter re,im (repeatable)");
    app.add_option("--eps", eps, "Comma-separated pseudospectral levels");
    app.add_option("--seed", seed, "Seed for random draws");
    app.add_option("--count", count, "Number of random spectral points");
    app.add_option("--n-points", n_points, "Initial winding-number grid size");
    app.add_option("--top-left-shift", shift, "Perturbation re,im of entry (1,1)");
    app.add_option("--threads", threads, "Worker threads for grid sweeps");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        Invocation inv;
        inv.command = command;
        inv.format = format == "json" ? Format::Json : Format::Csv;
        inv.dump_matrix = dump_matrix;
        if (!config_path.empty()) inv.cfg = parse_config_text(read_file(config_path));

        RunConfig& cfg = inv.cfg;
        if (!preset.empty()) {
            if (cfg.symbol) throw ConfigError("--preset", "the config already defines a symbol");
            cfg.symbol = preset_symbol(preset);
        }
        if (m) cfg.m = *m;
        if (!m_list.empty()) {
            cfg.m_list.clear();
            for (const double v : parse_number_list(m_list, "--m-list")) {
                if (v < 1 || v != std::floor(v)) throw ConfigError("--m-list", "entries must be positive integers");
                cfg.m_list.push_back(static_cast<std::size_t>(v));
            }
        }
        if (n_alpha) cfg.n_alpha = *n_alpha;
        if (n_beta) cfg.n_beta = *n_beta;
        if (full_zone) cfg.full_zone = true;
        if (via_collapse == "auto") cfg.via_collapse.reset();
        if (via_collapse == "true") cfg.via_collapse = true;
        if (via_collapse == "false") cfg.via_collapse = false;
        if (!rect.empty()) {
            const auto r = parse_number_list(rect, "--rect");
            if (r.size() != 4) throw ConfigError("--rect", "expected re_min,re_max,im_min,im_max");
            cfg.rect = Rectangle{r[0], r[1], r[2], r[3]};
        }
        if (!res.empty()) {
            const auto x = res.find('x');
            if (x == std::string::npos) throw ConfigError("--res", "expected NXxNY, e.g. 200x200");
            const auto nx = parse_number_list(res.substr(0, x), "--res");
            const auto ny = parse_number_list(res.substr(x + 1), "--res");
            if (nx.size() != 1 || ny.size() != 1 || nx[0] < 1 || ny[0] < 1) {
                throw ConfigError("--res", "expected NXxNY, e.g. 200x200");
            }
            cfg.res_x = static_cast<std::size_t>(nx[0]);
            cfg.res_y = static_cast<std::size_t>(ny[0]);
        }
        if (!lambdas.empty()) {
            cfg.lambdas.clear();
            for (const auto& l : lambdas) {
                const auto v = parse_number_list(l, "--lambda");
                if (v.size() != 2) throw ConfigError("--lambda", "expected re,im");
                cfg.lambdas.emplace_back(v[0], v[1]);
            }
        }
        if (!eps.empty()) cfg.eps = parse_number_list(eps, "--eps");
        if (seed) cfg.seed = *seed;
        if (count) cfg.count = *count;
        if (n_points) cfg.n_points = *n_points;
        if (!shift.empty()) {
            const auto v = parse_number_list(shift, "--top-left-shift");
            if (v.size() != 2) throw ConfigError("--top-left-shift", "expected re,im");
            cfg.top_left_shift = {v[0], v[1]};
        }
        if (threads) cfg.threads = *threads;
        if (const char* env = std::getenv(kThreadsEnv); env && *env) {
            const auto v = parse_number_list(env, kThreadsEnv);
            if (v.size() != 1 || v[0] < 0) throw ConfigError(kThreadsEnv, "expected a non-negative integer");
            cfg.threads = static_cast<unsigned>(v[0]);
        }

        const CommandSpec& spec = commands().at(command);
        if (spec.needs_nondegenerate && need_symbol(cfg).reciprocal_degenerate()) {
            throw ConfigError("/symbol", command + " needs all upper and lower coefficients nonzero");
        }
        const std::string text = spec.handler(inv);

        if (out_path.empty()) {
            out << text;
        } else {
            std::ofstream f(out_path, std::ios::binary);
            if (!f) throw IoError("cannot open " + out_path + " for writing");
            f << text;
            if (!f) throw IoError("write to " + out_path + " failed");
        }
        return kExitOk;
    } catch (const ConfigError& e) {
        return report(err, "config error: ", e.what(), kExitConfig);
    } catch (const IoError& e) {
        return report(err, "i/o error: ", e.what(), kExitIo);
    } catch (const SpectralError& e) {
        switch (e.kind()) {
            case ErrorKind::InvalidInput:
            case ErrorKind::ReciprocalDegenerate:
            case ErrorKind::CornerCollision:
                return report(err, "invalid input: ", e.what(), kExitConfig);
            default:
                return report(err, "numerical failure: ", e.what(), kExitNumerical);
        }
    }
}

}  // namespace skinband::cli
