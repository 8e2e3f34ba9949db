#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "skinband/limits.hpp"

using namespace skinband;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run_cli(const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch_dir() {
    const fs::path dir = fs::temp_directory_path() / "skinband_cli_tests";
    fs::create_directories(dir);
    return dir;
}

fs::path write_config(const std::string& name, const std::string& text) {
    const fs::path p = scratch_dir() / name;
    std::ofstream(p) << text;
    return p;
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream is(text);
    for (std::string line; std::getline(is, line);) out.push_back(line);
    return out;
}

const char* kPrototypeConfig = R"({
  "schema": "gbz-spectra/1",
  "symbol": {
    "diag": [[0, 0], [0, 0]],
    "upper": [[-2, 0], [1, 0]],
    "lower": [[-0.9, 0], [-0.1, 0]]
  }
})";

}  // namespace

TEST_CASE("symbol-info reports the non-reciprocity rate of the prototype") {
    const auto cfg = write_config("prototype.json", kPrototypeConfig);
    const auto r = run_cli({"symbol-info", "-c", cfg.string(), "-f", "json"});
    REQUIRE(r.code == 0);
    const json doc = json::parse(r.out);
    CHECK(doc["schema"] == cli::kSchema);
    CHECK(std::abs(doc["delta"].get<double>() - 3.101093) < 1e-6);
    CHECK(std::abs(std::abs(doc["zeta"].get<double>()) - 3.14159265358979) < 1e-12);
    CHECK(doc["collapsed"] == false);

    const auto csv = run_cli({"symbol-info", "--preset", "prototype"});
    REQUIRE(csv.code == 0);
    CHECK(csv.out.find("delta,3.10109") != std::string::npos);
}

TEST_CASE("circulant-spectrum with ten cells gives twenty rows") {
    const auto r = run_cli({"circulant-spectrum", "--preset", "prototype", "--m", "10"});
    REQUIRE(r.code == 0);
    const auto ls = lines(r.out);
    REQUIRE(ls.size() == 22);
    CHECK(ls[0] == "# gbz-spectra/1");
    CHECK(ls[1] == "re,im,source,param1,param2");
}

TEST_CASE("pseudospectrum: sub-level sets around the origin") {
    // a 33 x 33 grid on [-0.5, 0.5]^2 has the origin as its centre node
    const auto small = run_cli({"pseudospectrum", "--preset", "prototype", "--m", "10", "--rect", "-0.5,0.5,-0.5,0.5",
                                "--res", "33x33", "--eps", "0.1,0.01", "-f", "json"});
    REQUIRE(small.code == 0);
    const json doc = json::parse(small.out);
    const auto values = doc["sigma_min"].get<std::vector<double>>();
    REQUIRE(values.size() == 33 * 33);
    const double at_origin = values[16 * 33 + 16];
    CHECK(at_origin <= 0.1);
    // the finite section at m = 10 is not yet 1e-2 singular at the origin
    CHECK(at_origin > 1e-2);
    CHECK(doc["eps_levels"][0]["cells_below"].get<int>() > 0);

    const auto large = run_cli({"pseudospectrum", "--preset", "prototype", "--m", "40", "--rect", "-0.5,0.5,-0.5,0.5",
                                "--res", "33x33", "-f", "json"});
    REQUIRE(large.code == 0);
    const auto v40 = json::parse(large.out)["sigma_min"].get<std::vector<double>>();
    CHECK(v40[16 * 33 + 16] <= 1e-2);
}

TEST_CASE("pseudospectrum CSV has one row per grid node") {
    const auto r = run_cli(
        {"pseudospectrum", "--preset", "prototype", "--m", "3", "--rect", "-1,1,-1,1", "--res", "16x20"});
    REQUIRE(r.code == 0);
    const auto ls = lines(r.out);
    REQUIRE(ls.size() == 2 + 16 * 20);
    CHECK(ls[1] == "x,y,sigma_min");
}

TEST_CASE("identical inputs give byte-identical output") {
    const auto cfg = write_config("draws.json", R"({"symbol": "prototype", "count": 25, "seed": 7})");
    const auto a = run_cli({"gbz-locate", "-c", cfg.string()});
    const auto b = run_cli({"gbz-locate", "-c", cfg.string()});
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(lines(a.out).size() == 27);
    const auto other = run_cli({"gbz-locate", "-c", cfg.string(), "--seed", "8"});
    CHECK(other.out != a.out);

    const auto g1 = run_cli({"pseudospectrum", "--preset", "prototype", "--m", "5", "--res", "16x16", "--threads", "1"});
    const auto g2 = run_cli({"pseudospectrum", "--preset", "prototype", "--m", "5", "--res", "16x16", "--threads", "3"});
    CHECK(g1.out == g2.out);
}

TEST_CASE("JSON round trip reproduces points bit-exactly") {
    const auto r = run_cli({"finite-spectrum", "--preset", "prototype", "--m", "7", "-f", "json"});
    REQUIRE(r.code == 0);
    const SpectralSet parsed = cli::parse_spectral_set_json(r.out);
    const SpectralSet direct = finite_obc_spectrum(cli::preset_symbol("prototype"), 7);
    REQUIRE(parsed.size() == direct.size());
    for (std::size_t i = 0; i < parsed.size(); ++i) {
        CHECK(parsed.points[i].value == direct.points[i].value);
        CHECK(parsed.points[i].source == direct.points[i].source);
        CHECK(parsed.points[i].param1 == direct.points[i].param1);
    }
}

TEST_CASE("CSV round trip reproduces points bit-exactly") {
    const SpectralSet direct = laurent_spectrum_sample(cli::preset_symbol("prototype"), 64);
    std::ostringstream os;
    cli::write_spectral_set_csv(os, direct);
    const SpectralSet parsed = cli::parse_spectral_set_csv(os.str());
    REQUIRE(parsed.size() == direct.size());
    for (std::size_t i = 0; i < parsed.size(); ++i) {
        CHECK(parsed.points[i].value == direct.points[i].value);
        CHECK(parsed.points[i].source == direct.points[i].source);
        CHECK(parsed.points[i].param1 == direct.points[i].param1);
        CHECK(parsed.points[i].param2 == direct.points[i].param2);
    }
}

TEST_CASE("a spectral set of three points gives three data rows and a header") {
    SpectralSet set;
    set.points = {{cplx{1.0, 0.5}, Source::FiniteOBC, 3.0, 0.0},
                  {cplx{-0.25, 0.0}, Source::FiniteOBC, 3.0, 0.0},
                  {cplx{0.1, -2.0}, Source::FiniteOBC, 3.0, 0.0}};
    std::ostringstream os;
    cli::write_spectral_set_csv(os, set);
    const auto ls = lines(os.str());
    REQUIRE(ls.size() == 5);
    CHECK(ls[0] == "# gbz-spectra/1");
    CHECK(ls[1] == "re,im,source,param1,param2");
    CHECK(ls[2].rfind("1,0.5,", 0) == 0);
}

TEST_CASE("parsers reject other schema versions") {
    SpectralSet set;
    set.points = {{cplx{1.0, 0.5}, Source::OBCLimit, 0.0, 0.0}};
    std::string text = cli::spectral_set_json(set).dump();
    const auto at = text.find("gbz-spectra/1");
    REQUIRE(at != std::string::npos);
    text.replace(at, 13, "gbz-spectra/2");
    CHECK_THROWS_AS(cli::parse_spectral_set_json(text), cli::ConfigError);

    std::ostringstream os;
    cli::write_spectral_set_csv(os, set);
    std::string csv = os.str();
    csv.replace(csv.find("gbz-spectra/1"), 13, "gbz-spectra/9");
    CHECK_THROWS_AS(cli::parse_spectral_set_csv(csv), cli::ConfigError);

    const auto cfg = write_config("schema2.json", R"({"schema": "gbz-spectra/2", "symbol": "prototype"})");
    CHECK(run_cli({"symbol-info", "-c", cfg.string()}).code == 2);
}

TEST_CASE("config validation exits with status 2") {
    const auto mismatched = write_config("mismatched.json", R"({"symbol": {
        "diag": [[0, 0], [0, 0]], "upper": [[1, 0]], "lower": [[1, 0], [1, 0]]}})");
    const auto r = run_cli({"finite-spectrum", "-c", mismatched.string(), "--m", "4"});
    CHECK(r.code == 2);
    CHECK(r.err.find("/symbol") != std::string::npos);

    const auto zero = write_config("zero.json", R"({"symbol": {
        "diag": [[0, 0], [0, 0]], "upper": [[1, 0], [0, 0]], "lower": [[1, 0], [1, 0]]}})");
    for (const char* cmd : {"gbz-locate", "classify", "obc-limit", "toeplitz-sample", "decay", "modes-render"}) {
        CHECK(run_cli({cmd, "-c", zero.string(), "--m", "8", "--lambda", "0.1,0.1"}).code == 2);
    }
    // finite matrices do not need the GBZ
    CHECK(run_cli({"finite-spectrum", "-c", zero.string(), "--m", "4"}).code == 0);

    CHECK(run_cli({"circulant-spectrum", "--preset", "prototype", "--m", "1"}).code == 2);

    const auto unknown = write_config("unknown.json", R"({"symbol": "prototype", "mm": 4})");
    const auto u = run_cli({"finite-spectrum", "-c", unknown.string()});
    CHECK(u.code == 2);
    CHECK(u.err.find("/mm") != std::string::npos);

    const auto broken = write_config("broken.json", R"({"symbol": )");
    CHECK(run_cli({"symbol-info", "-c", broken.string()}).code == 2);

    CHECK(run_cli({"no-such-command"}).code == 2);
    CHECK(run_cli({"finite-spectrum", "--preset", "prototype"}).code == 2);
    CHECK(run_cli({"pseudospectrum", "--preset", "prototype", "--m", "4", "--res", "4x4"}).code == 2);
}

TEST_CASE("exterior points in gbz-locate are rejected as invalid input") {
    const auto r = run_cli({"gbz-locate", "--preset", "prototype", "--lambda", "5,5"});
    CHECK(r.code == 2);
    CHECK_FALSE(r.err.empty());
}

TEST_CASE("unwritable output exits with status 4") {
    const fs::path target = scratch_dir() / "missing_dir" / "out.csv";
    CHECK(run_cli({"symbol-info", "--preset", "prototype", "-o", target.string()}).code == 4);
    CHECK(run_cli({"symbol-info", "-c", (scratch_dir() / "absent.json").string()}).code == 4);

    const fs::path ok = scratch_dir() / "info.csv";
    REQUIRE(run_cli({"symbol-info", "--preset", "prototype", "-o", ok.string()}).code == 0);
    CHECK(fs::file_size(ok) > 0);
}

TEST_CASE("convergence table columns") {
    const auto r = run_cli({"convergence", "--preset", "prototype", "--m-list", "4,8", "--n-alpha", "64"});
    REQUIRE(r.code == 0);
    const auto ls = lines(r.out);
    REQUIRE(ls.size() == 4);
    CHECK(ls[1] == "m,d_obc_directed,d_obc_sampling_bound,d_pbc");
    CHECK(ls[2].rfind("4,", 0) == 0);

    const auto only_obc = write_config("obc_only.json", R"({"symbol": "prototype", "m_list": [4], "targets": ["obc"]})");
    const auto o = run_cli({"convergence", "-c", only_obc.string(), "--n-alpha", "64"});
    REQUIRE(o.code == 0);
    CHECK(lines(o.out)[2].find(",nan") != std::string::npos);
}

TEST_CASE("decay and modes-render tables") {
    const auto d = run_cli({"decay", "--preset", "prototype", "--m", "12", "-f", "json"});
    REQUIRE(d.code == 0);
    const json doc = json::parse(d.out);
    CHECK(doc["kind"] == "decay");
    CHECK(std::abs(doc["half_delta"].get<double>() - 0.5 * std::log(200.0 / 9.0)) < 1e-12);

    const auto m = run_cli({"modes-render", "--preset", "prototype", "--lambda", "0.3,0.2", "--m", "10"});
    REQUIRE(m.code == 0);
    CHECK(lines(m.out).size() == 2 + 20);
    CHECK(lines(m.out)[1] == "cell,site,re,im,abs");
}

TEST_CASE("classify and winding tables") {
    const auto c = run_cli({"classify", "--preset", "prototype", "--lambda", "0,0", "--lambda", "3,0"});
    REQUIRE(c.code == 0);
    const auto ls = lines(c.out);
    REQUIRE(ls.size() == 4);
    CHECK(ls[2].find(",-1,") != std::string::npos);
    CHECK(ls[3].find(",0,") != std::string::npos);

    const auto w = run_cli({"winding", "--preset", "prototype", "--lambda", "0,0", "-f", "json"});
    REQUIRE(w.code == 0);
    CHECK(json::parse(w.out)["rows"][0][2] == -1);
}

TEST_CASE("the matrix dump matches the assembled chain") {
    const fs::path dump = scratch_dir() / "t.csv";
    REQUIRE(run_cli({"finite-spectrum", "--preset", "prototype", "--m", "2", "--dump-matrix", dump.string()}).code == 0);
    std::ifstream in(dump);
    std::stringstream ss;
    ss << in.rdbuf();
    const auto ls = lines(ss.str());
    REQUIRE(ls.size() >= 4);
    CHECK(ls[ls.size() - 4].rfind("\"0,0\",\"-2,0\"", 0) == 0);
}

TEST_CASE("a confluent mode is a numerical failure") {
    // psi(z) + g(lambda) has a double root at lambda = sqrt(1.8) + i sqrt(0.1)
    const auto r =
        run_cli({"modes-render", "--preset", "prototype", "--lambda", "1.3416407864998738,0.31622776601683794"});
    CHECK(r.code == 3);
    CHECK(r.err.find("numerical failure") != std::string::npos);
}
