#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "orlicz/cli.hpp"
#include "orlicz/numerics.hpp"

using namespace orlicz;
using nlohmann::json;

namespace {

struct CliRun {
    int exit_code = -1;
    std::string out;
    std::string err;
};

CliRun cli(std::vector<const char*> args) {
    args.insert(args.begin(), "orlicz-lab");
    std::ostringstream out, err;
    CliRun run;
    run.exit_code = run_cli(static_cast<int>(args.size()), args.data(), out, err);
    run.out = out.str();
    run.err = err.str();
    return run;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    REQUIRE(f.good());
    f << text;
}

std::vector<std::string> csv_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const std::size_t crlf = text.find("\r\n", pos);
        REQUIRE(crlf != std::string::npos);  // RFC 4180 line endings throughout
        lines.push_back(text.substr(pos, crlf - pos));
        pos = crlf + 2;
    }
    return lines;
}

const double kPi = 3.14159265358979323846;

}  // namespace

TEST_CASE("young specs parse and round-trip to canonical form") {
    CHECK(parse_young_spec("pow:p=2").spec_string() == "pow:p=2");
    CHECK(parse_young_spec("pow:p=2")(3.0) == doctest::Approx(9.0));
    CHECK(parse_young_spec("pow:p=2.5,c=0.5").spec_string() == "pow:p=2.5,c=0.5");
    CHECK(parse_young_spec("sumpow:p=2,q=3")(2.0) == doctest::Approx(12.0));
    CHECK(parse_young_spec("maxpow:p=2,q=3")(2.0) == doctest::Approx(8.0));
    CHECK(parse_young_spec("maxpow:p=2,q=3,cp=0.5").spec_string() == "maxpow:p=2,q=3,cp=0.5");
    // the factory normalizes branch order; parsing re-serializes canonically
    CHECK(parse_young_spec("maxpow:p=3,q=2").spec_string() == "maxpow:p=2,q=3");
    CHECK(parse_young_spec("powlog:p=2")(1.0) == doctest::Approx(std::log(M_E + 1.0)));
}

TEST_CASE("young spec errors carry the offending position") {
    auto message_of = [](const std::string& text) -> std::string {
        try {
            parse_young_spec(text);
        } catch (const ParseError& err) {
            return err.what();
        }
        return "";
    };
    CHECK_THROWS_AS(parse_young_spec("maxpow:p=2,q=1"), ParseError);
    CHECK(message_of("maxpow:p=2,q=1").find("q must exceed 1") != std::string::npos);
    CHECK(message_of("maxpow:p=2,q=1").find("position 11") != std::string::npos);
    CHECK(message_of("pow:p=x").find("position 6") != std::string::npos);
    CHECK(message_of("pow:q=2").find("missing required parameter 'p'") != std::string::npos);
    CHECK(message_of("bogus:p=2").find("unknown family") != std::string::npos);
    CHECK(message_of("pow:p=2,z=1").find("unknown parameter 'z'") != std::string::npos);
    CHECK(message_of("pow:p=2,z=1").find("position 8") != std::string::npos);
    CHECK_THROWS_AS(parse_young_spec("pow:"), ParseError);
    CHECK_THROWS_AS(parse_young_spec("pow:p=2,"), ParseError);
    CHECK_THROWS_AS(parse_young_spec("pow"), ParseError);
    CHECK_THROWS_AS(parse_young_spec("pow:p=0.5"), ParseError);
}

TEST_CASE("weight specs parse against the ambient dimension and domain measure") {
    const WeightProfile hardy = parse_weight_spec("hardy:a=2", 4);
    CHECK(hardy.spec_string() == "hardy:a=2");
    CHECK(hardy.dimension() == 4);
    CHECK(hardy.omega_measure() == kInf);

    const WeightProfile c = parse_weight_spec("const:c=2,m=3", 3);
    CHECK(c.spec_string() == "const:c=2,m=3");
    CHECK(c.omega_measure() == doctest::Approx(3.0));

    const WeightProfile ind = parse_weight_spec("indicator:m=1", 3, 5.0);
    CHECK(ind.spec_string() == "indicator:m=1");
    CHECK(ind.omega_measure() == doctest::Approx(5.0));

    CHECK_THROWS_AS(parse_weight_spec("hardy:a=0", 4), ParseError);
    CHECK_THROWS_AS(parse_weight_spec("hardy:a=2", 1), DomainError);  // dimension too small
    CHECK_THROWS_AS(parse_weight_spec("const:c=-1,m=3", 3), ParseError);
    CHECK_THROWS_AS(parse_weight_spec("mystery:a=2", 3), ParseError);
}

TEST_CASE("file-backed specs load two-column data and serialize to their path") {
    write_file("cli_cells.csv", "1.0, 0.5\n# comment line\n0.25,0.5\n");
    const WeightProfile cells = parse_weight_spec("sample:cli_cells.csv", 3, 2.0);
    CHECK(cells.spec_string() == "sample:cli_cells.csv");
    CHECK(cells.omega_measure() == doctest::Approx(2.0));
    CHECK(cells.rearrangement(0.25) == doctest::Approx(1.0));
    CHECK(cells.rearrangement(0.75) == doctest::Approx(0.25));

    write_file("cli_radial.csv", "0,1\n1,0.5\n");
    const WeightProfile radial = parse_weight_spec("radial:cli_radial.csv", 3);
    CHECK(radial.spec_string() == "radial:cli_radial.csv");
    CHECK(radial.radial_value(0.5) == doctest::Approx(0.75));

    write_file("cli_density.csv", "0.001,0.002\n0.01,0.02\n0.1,0.2\n1,2\n10,20\n100,200\n");
    const YoungFunction tab = parse_young_spec("table:cli_density.csv");
    CHECK(tab.spec_string() == "table:cli_density.csv");
    CHECK(tab(2.0) == doctest::Approx(4.0).epsilon(1e-6));

    write_file("cli_bad.csv", "1.0 0.5\n");
    auto message_of = [](const char* spec) -> std::string {
        try {
            parse_weight_spec(spec, 3);
        } catch (const ParseError& err) {
            return err.what();
        }
        return "";
    };
    CHECK(message_of("sample:cli_bad.csv").find("line 1") != std::string::npos);
    write_file("cli_bad.csv", "1.0,0.5,9\n");
    CHECK(message_of("sample:cli_bad.csv").find("two columns") != std::string::npos);
    write_file("cli_bad.csv", "1.0,zebra\n");
    CHECK(message_of("sample:cli_bad.csv").find("malformed number") != std::string::npos);
    CHECK(message_of("sample:cli_missing.csv").find("cannot open") != std::string::npos);
    write_file("cli_bad.csv", "# only comments\n");
    CHECK(message_of("sample:cli_bad.csv").find("no data rows") != std::string::npos);
}

TEST_CASE("level sweeps expand geometrically") {
    CHECK(parse_levels("0.5") == std::vector<double>{0.5});
    const std::vector<double> sweep = parse_levels("0.5:2:3");
    REQUIRE(sweep.size() == 3);
    CHECK(sweep.front() == doctest::Approx(0.5));
    CHECK(sweep[1] == doctest::Approx(1.0));
    CHECK(sweep.back() == doctest::Approx(2.0));
    CHECK_THROWS_AS(parse_levels("0"), ParseError);
    CHECK_THROWS_AS(parse_levels("1:2"), ParseError);
    CHECK_THROWS_AS(parse_levels("2:1:3"), ParseError);
    CHECK_THROWS_AS(parse_levels("1:2:x"), ParseError);
    CHECK_THROWS_AS(parse_levels("1:2:1"), ParseError);
    CHECK_THROWS_AS(parse_levels("1:2:3:4"), ParseError);
}

TEST_CASE("config validation rejects out-of-range fields") {
    RunConfig rc;
    CHECK_NOTHROW(validate_config(rc));
    auto broken = [](auto&& mutate) {
        RunConfig bad;
        mutate(bad);
        CHECK_THROWS_AS(validate_config(bad), ParseError);
    };
    broken([](RunConfig& c) { c.dim = 1; });
    broken([](RunConfig& c) { c.slope_tol = 0.0; });
    broken([](RunConfig& c) { c.residual_tol = -1.0; });
    broken([](RunConfig& c) { c.report_tol = 0.0; });
    broken([](RunConfig& c) { c.nodes = 4; });
    broken([](RunConfig& c) { c.radius = 0.0; });
    broken([](RunConfig& c) { c.emit = "xml"; });
    broken([](RunConfig& c) { c.family = "spirals"; });
    broken([](RunConfig& c) { c.levels = "2:1:3"; });
    broken([](RunConfig& c) { c.grid_lo = 0.0; });
    broken([](RunConfig& c) { c.grid_hi = 1e-3; });
    broken([](RunConfig& c) { c.grid_count = 1; });
}

TEST_CASE("built-in regression table passes with closed-form targets") {
    const std::vector<ExampleRow> rows = run_examples();
    REQUIRE(rows.size() == 19);
    for (const ExampleRow& row : rows) {
        CAPTURE(row.id);
        CHECK(row.pass);
        CHECK(!row.id.empty());
        CHECK(!row.detail.empty());
        CHECK(std::isfinite(row.measured));
        CHECK(std::fabs(row.measured - row.target) <=
              row.tol * std::max(1.0, std::fabs(row.target)) + 1e-300);
    }
    // ids stay unique so downstream tooling can key on them
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = i + 1; j < rows.size(); ++j) CHECK(rows[i].id != rows[j].id);
}

TEST_CASE("examples subcommand emits the table and a success exit") {
    const CliRun run = cli({"examples", "--emit", "json"});
    CHECK(run.exit_code == 0);
    const json doc = json::parse(run.out);
    CHECK(doc["all_pass"] == true);
    CHECK(doc["rows"].size() == 19);
    CHECK(doc["config"]["subcommand"] == "examples");
    for (const auto& row : doc["rows"]) {
        CHECK(row.contains("id"));
        CHECK(row.contains("measured"));
        CHECK(row.contains("target"));
        CHECK(row.contains("tol"));
        CHECK(row.contains("pass"));
    }
    // stable key order: config leads, then rows, then the verdict
    CHECK(run.out.find("\"config\"") < run.out.find("\"rows\""));
    CHECK(run.out.find("\"rows\"") < run.out.find("\"all_pass\""));
    CHECK(run.out.find("\"subcommand\"") < run.out.find("\"phi\""));

    const CliRun csv = cli({"examples", "--emit", "csv"});
    CHECK(csv.exit_code == 0);
    const std::vector<std::string> lines = csv_lines(csv.out);
    REQUIRE(lines.size() == 20);
    CHECK(lines.front() == "id,measured,target,tol,pass,detail");
}

TEST_CASE("verify subcommand emits the harness rows in both formats") {
    const CliRun run = cli({"verify", "--phi", "pow:p=2", "--weight", "hardy:a=2", "--dim", "4",
                            "--family", "amplitude", "--emit", "csv"});
    CHECK(run.exit_code == 0);
    const std::vector<std::string> lines = csv_lines(run.out);
    REQUIRE(lines.size() == 10);
    CHECK(lines.front() == "test_id,param,lhs,rhs,ratio");
    // amplitude sweeps of a homogeneous pair keep the ratio exactly flat
    auto ratio_of = [](const std::string& line) {
        const std::size_t comma = line.rfind(',');
        return std::stod(line.substr(comma + 1));
    };
    CHECK(ratio_of(lines[1]) == doctest::Approx(ratio_of(lines.back())).epsilon(1e-9));
    CHECK(lines[1].rfind("amplitude:t=", 0) == 0);

    const CliRun jrun = cli({"verify", "--phi", "pow:p=2", "--weight", "hardy:a=2", "--dim", "4",
                             "--family", "dilate"});
    CHECK(jrun.exit_code == 0);
    const json doc = json::parse(jrun.out);
    CHECK(doc["family"] == "dilate");
    CHECK(doc["rows"].size() == 9);
    CHECK(doc["rows"][0].contains("test_id"));
    CHECK(doc.contains("empirical_constant"));
    CHECK(doc.contains("log_slope"));
    CHECK(std::fabs(doc["log_slope"].get<double>()) < 0.02);
    CHECK(doc["config"]["family"] == "dilate");
}

TEST_CASE("eigen subcommand reports the radial multiplier with profile samples") {
    const CliRun run = cli({"eigen", "--phi", "pow:p=2", "--weight", "const:c=1,m=4.18879020478639",
                            "--dim", "3", "--R", "1", "--r", "1", "--nodes", "200"});
    CHECK(run.exit_code == 0);
    const json doc = json::parse(run.out);
    REQUIRE(doc["runs"].size() == 1);
    const json& res = doc["runs"][0];
    CHECK(res.contains("radial_lambda1"));  // the minimum is reported as the radial value
    CHECK(res["radial_lambda1"].get<double>() == doctest::Approx(kPi * kPi).epsilon(1e-2));
    CHECK(res["residual"].get<double>() <= 1e-6);
    CHECK(res["profile"]["rho"].size() == res["profile"]["value"].size());
    CHECK(res["profile"]["rho"].size() >= 100);

    const CliRun csv = cli({"eigen", "--phi", "pow:p=2", "--weight",
                            "const:c=1,m=4.18879020478639", "--dim", "3", "--r", "0.5:2:3",
                            "--nodes", "120", "--emit", "csv"});
    CHECK(csv.exit_code == 0);
    const std::vector<std::string> lines = csv_lines(csv.out);
    REQUIRE(lines.size() == 4);
    CHECK(lines.front() == "level,radial_lambda1,lambda_tilde,residual,iterations");
}

TEST_CASE("check subcommand emits the route schema and flags failed hypotheses") {
    const CliRun run =
        cli({"check", "--phi", "pow:p=2", "--weight", "hardy:a=2", "--dim", "4"});
    CHECK(run.exit_code == 2);  // one route fails its hypotheses for this configuration
    const json doc = json::parse(run.out);
    REQUIRE(doc["routes"].size() == 5);
    bool saw_failed = false, saw_admissible = false;
    for (const auto& route : doc["routes"]) {
        CHECK(route.contains("id"));
        CHECK(route.contains("hypotheses"));
        CHECK(route.contains("norm"));
        CHECK(route.contains("verdict"));
        CHECK(route.contains("constant"));
        CHECK(route["id"].get<std::string>().rfind("T1.", 0) == 0);
        for (const auto& [name, status] : route["hypotheses"].items()) {
            CHECK(!name.empty());
            CHECK(status.contains("ok"));
        }
        saw_failed |= route["verdict"] == "hypothesis-failed";
        saw_admissible |= route["verdict"] == "admissible";
    }
    CHECK(saw_failed);
    CHECK(saw_admissible);
    CHECK(doc["muckenhoupt"]["value"].get<double>() ==
          doctest::Approx(4.0 * std::sqrt(unit_ball_volume(4))).epsilon(1e-6));
    CHECK(doc["capacity"].is_null());
}

TEST_CASE("norm subcommand reports hypothesis failures through the exit code") {
    const CliRun good = cli({"norm", "--phi", "pow:p=2", "--weight", "const:c=1,m=1", "--dim", "3",
                             "--emit", "csv"});
    CHECK(good.exit_code == 0);
    CHECK(csv_lines(good.out).front() == "kind,value,finite,hypothesis_ok,note");

    // second function beyond the upper exponent: the eta limit fails
    const CliRun bad = cli({"norm", "--phi", "pow:p=2", "--psi", "maxpow:p=2,q=6.5", "--weight",
                            "const:c=1,m=1", "--dim", "3"});
    CHECK(bad.exit_code == 2);
    const json doc = json::parse(bad.out);
    bool flagged = false;
    for (const auto& row : doc["norms"])
        if (row["kind"] == "x_phi_psi") flagged = !row["hypothesis_ok"].get<bool>();
    CHECK(flagged);
}

TEST_CASE("conjugate subcommand samples the bundle curves") {
    const CliRun run =
        cli({"conjugate", "--phi", "pow:p=2", "--dim", "4", "--grid-count", "5", "--emit", "csv"});
    CHECK(run.exit_code == 0);
    const std::vector<std::string> lines = csv_lines(run.out);
    REQUIRE(lines.size() == 6);
    CHECK(lines.front() ==
          "t,base,base_conjugate,dimensional_conjugate,transfer,transfer_complement");
    // spot value: the complement of the transfer function at one is 9/64
    const std::string& mid = lines[3];
    const std::size_t comma = mid.rfind(',');
    CHECK(std::stod(mid.substr(comma + 1)) == doctest::Approx(9.0 / 64.0).epsilon(1e-4));
}

TEST_CASE("exit codes distinguish parse, hypothesis, and convergence failures") {
    const CliRun parse = cli({"verify", "--phi", "pow:p=x", "--weight", "hardy:a=2", "--dim", "4"});
    CHECK(parse.exit_code == 4);
    CHECK(parse.err.find("position") != std::string::npos);

    const CliRun usage = cli({"--phi", "pow:p=2"});
    CHECK(usage.exit_code == 4);

    const CliRun flag = cli({"examples", "--bogus-flag"});
    CHECK(flag.exit_code == 4);

    const CliRun badcfg = cli({"examples", "--emit", "xml"});
    CHECK(badcfg.exit_code == 4);

    const CliRun stuck = cli({"eigen", "--phi", "pow:p=2", "--weight", "const:c=1,m=4.18879",
                              "--dim", "3", "--nodes", "64", "--residual-tol", "1e-300",
                              "--report-tol", "1e-300"});
    CHECK(stuck.exit_code == 3);
    CHECK(stuck.err.find("best iterate") != std::string::npos);

    // weights that cannot realize the requested run surface as input errors
    write_file("cli_flat.csv", "1.0,0.5\n0.5,0.5\n");
    const CliRun nonradial = cli({"eigen", "--phi", "pow:p=2", "--weight", "sample:cli_flat.csv",
                                  "--dim", "3", "--omega", "1", "--nodes", "64"});
    CHECK(nonradial.exit_code == 4);
    CHECK(nonradial.err.find("radial") != std::string::npos);
}

TEST_CASE("config file supplies defaults and flags override it") {
    write_file("cli_lab.toml", "phi = \"pow:p=3\"\ndim = 4\nemit = \"csv\"\ngrid-count = 3\n");
    const CliRun file_only = cli({"conjugate", "--config", "cli_lab.toml"});
    CHECK(file_only.exit_code == 0);
    CHECK(csv_lines(file_only.out).size() == 4);  // csv format taken from the file

    const CliRun overridden = cli({"conjugate", "--config", "cli_lab.toml", "--emit", "json"});
    CHECK(overridden.exit_code == 0);
    const json doc = json::parse(overridden.out);  // flag wins over the file
    CHECK(doc["config"]["phi"] == "pow:p=3");
    CHECK(doc["config"]["dim"] == 4);
    CHECK(doc["config"]["grid_count"] == 3);
}

TEST_CASE("output lands in the requested file with the config echoed") {
    std::remove("cli_out.json");
    const CliRun run = cli({"examples", "--output", "cli_out.json"});
    CHECK(run.exit_code == 0);
    CHECK(run.out.empty());
    std::ifstream in("cli_out.json", std::ios::binary);
    REQUIRE(in.good());
    std::stringstream buffer;
    buffer << in.rdbuf();
    const json doc = json::parse(buffer.str());
    CHECK(doc["config"]["output"] == "cli_out.json");
    CHECK(doc["all_pass"] == true);
}

TEST_CASE("omega flag accepts numbers and the infinity spelling") {
    const CliRun finite = cli({"norm", "--phi", "pow:p=2", "--weight", "indicator:m=1", "--dim",
                               "3", "--omega", "2.5", "--emit", "json"});
    CHECK(finite.exit_code == 0);
    CHECK(json::parse(finite.out)["config"]["omega"] == 2.5);

    const CliRun bad = cli({"norm", "--phi", "pow:p=2", "--weight", "const:c=1,m=1", "--dim", "3",
                            "--omega", "plenty"});
    CHECK(bad.exit_code == 4);
}

TEST_CASE("help text lists the subcommands") {
    const CliRun run = cli({"--help"});
    CHECK(run.exit_code == 0);
    for (const char* name : {"conjugate", "norm", "check", "verify", "eigen", "examples"})
        CHECK(run.out.find(name) != std::string::npos);
}
