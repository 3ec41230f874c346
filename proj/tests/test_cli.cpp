#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout and stderr combined

  bool contains(const std::string& needle) const {
    return output.find(needle) != std::string::npos;
  }
};

RunResult run_cli(const std::string& args, const std::string& env_prefix = "") {
  std::string cmd = env_prefix + CANTOR_CLI_PATH + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult res;
  char buf[4096];
  while (fgets(buf, sizeof buf, pipe) != nullptr) res.output += buf;
  int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

const fs::path& work_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "cantor_cli_tests";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string path_of(const std::string& name) { return (work_dir() / name).string(); }

void write_file(const std::string& path, const std::string& content) {
  std::ofstream os(path);
  REQUIRE(os.good());
  os << content;
}

std::string read_file(const std::string& path) {
  std::ifstream is(path);
  REQUIRE(is.good());
  return {std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>()};
}

// A depth-2 truncated 1/3-sequence: exact level geometry for golden files.
void write_thirds_seq(const std::string& path) {
  write_file(path,
             R"({"depth": 2, "prefix": [["1","3"],["1","3"]],)"
             R"( "tail_base": ["0","1"], "tail_ratio": ["0","1"]})");
}

const char* kFlagship = "\"max(1/2, 1 - sqrt(x))\"";

}  // namespace

TEST_CASE("help and usage errors") {
  CHECK(run_cli("--help").exit_code == 0);
  CHECK(run_cli("--help").contains("synthesize"));
  CHECK(run_cli("").exit_code == 64);              // a subcommand is required
  CHECK(run_cli("frobnicate").exit_code == 64);    // unknown subcommand
  CHECK(run_cli("synthesize").exit_code == 64);    // bound missing
  CHECK(run_cli("synthesize --f \"1 - x\" --depth 0").exit_code == 64);
  CHECK(run_cli("synthesize --f \"1 - x\" --depth 99").exit_code == 64);
  CHECK(run_cli("synthesize --f \")(\"").exit_code == 64);
}

TEST_CASE("synthesize writes a sequence and a report") {
  auto res = run_cli(std::string("synthesize --f ") + kFlagship +
                     " --depth 6 --out " + path_of("seq6.json") + " --report " +
                     path_of("synth6.json"));
  CHECK(res.exit_code == 0);
  CHECK(res.contains("measure:"));
  CHECK(res.contains("min margin:"));

  auto seq = nlohmann::json::parse(read_file(path_of("seq6.json")));
  CHECK(seq.at("depth").get<int>() == 6);
  CHECK(seq.at("prefix").size() == 6);
  auto rep = nlohmann::json::parse(read_file(path_of("synth6.json")));
  CHECK(rep.at("rows").size() == 6);
  CHECK(rep.contains("measure"));
}

TEST_CASE("synthesize rejects impossible bounds with exit 2") {
  CHECK(run_cli("synthesize --f \"1/2\"").exit_code == 2);
  CHECK(run_cli("synthesize --f \"x\"").exit_code == 2);
}

TEST_CASE("verify round trip: pass, refute, indeterminate, missing input") {
  run_cli(std::string("synthesize --f ") + kFlagship + " --depth 6 --out " +
          path_of("vseq.json"));

  auto ok = run_cli(std::string("verify --seq ") + path_of("vseq.json") + " --f " + kFlagship +
                    " --samples 16 --profile " + path_of("prof.csv") + " --report " +
                    path_of("cert.json"));
  CHECK(ok.exit_code == 0);
  CHECK(ok.contains("certificate: pass"));
  CHECK(ok.contains("band domination: pass"));
  CHECK(ok.contains("prefix maximality: pass"));

  std::string prof = read_file(path_of("prof.csv"));
  CHECK(prof.rfind("kind,band,s_num,s_den,s_dec,phi_lo_dec,phi_hi_dec,f_lo_dec,f_hi_dec,"
                   "margin_dec,state", 0) == 0);
  auto cert = nlohmann::json::parse(read_file(path_of("cert.json")));
  CHECK(cert.at("certificate").at("state") == "pass");
  CHECK(cert.contains("band_domination"));
  CHECK(cert.contains("prefix_maximality"));

  auto refuted = run_cli(std::string("verify --seq ") + path_of("vseq.json") +
                         " --f \"1/4\" --samples 8");
  CHECK(refuted.exit_code == 3);

  // Wide tabulated enclosures on a tame tail sequence never become decisive.
  write_file(path_of("tailseq.json"),
             R"({"depth": 4, "prefix": [["1","3"],["1","3"],["1","3"],["1","3"]],)"
             R"( "tail_base": ["1","8"], "tail_ratio": ["1","2"]})");
  std::string pts;
  for (int k = 6; k >= 0; --k) {
    pts += std::string(R"({"x": ["1",")") + std::to_string(1 << k) +
           R"("], "lo": ["1","10"], "hi": ["99","100"]})";
    if (k > 0) pts += ", ";
  }
  write_file(path_of("wide.json"), R"({"points": [)" + pts + R"(], "non_increasing": true})");
  auto indet = run_cli(std::string("verify --seq ") + path_of("tailseq.json") + " --table " +
                       path_of("wide.json") + " --samples 8");
  CHECK(indet.exit_code == 4);

  CHECK(run_cli("verify --seq /nonexistent/seq.json --f \"1/2\"").exit_code == 66);
  write_file(path_of("empty.json"), "");
  CHECK(run_cli(std::string("verify --seq ") + path_of("empty.json") + " --f \"1/2\"")
            .exit_code == 66);
}

TEST_CASE("levels draws golden SVG rows and exact CSV endpoints") {
  write_thirds_seq(path_of("thirds.json"));
  auto res = run_cli(std::string("levels --seq ") + path_of("thirds.json") +
                     " --levels 2 --svg " + path_of("lv.svg") + " --csv " + path_of("lv.csv"));
  CHECK(res.exit_code == 0);

  std::string svg = read_file(path_of("lv.svg"));
  CHECK(svg.find("width=\"800\" height=\"120\"") != std::string::npos);
  // Level 0: the full bar.
  CHECK(svg.find("<rect x=\"0\" y=\"6\" width=\"800\"") != std::string::npos);
  // Level 1: [0, 1/3] and [1/2, 5/6] at 800 pixels.
  CHECK(svg.find("<rect x=\"0\" y=\"46\" width=\"267\"") != std::string::npos);
  CHECK(svg.find("<rect x=\"400\" y=\"46\" width=\"267\"") != std::string::npos);
  // Level 2 keeps 4 components; [0, 1/9] maps to 89 pixels.
  CHECK(svg.find("<rect x=\"0\" y=\"86\" width=\"89\"") != std::string::npos);

  std::string csv = read_file(path_of("lv.csv"));
  CHECK(csv.rfind("level,index,left,right,left_dec,right_dec", 0) == 0);
  CHECK(csv.find("0,0,0,1,0,1") != std::string::npos);
  CHECK(csv.find("1,1,1/2,5/6,0.5,0.833333333333") != std::string::npos);
  CHECK(csv.find("2,0,0,1/9,0,0.111111111111") != std::string::npos);

  CHECK(run_cli(std::string("levels --seq ") + path_of("thirds.json") + " --levels 12")
            .exit_code == 64);
  // Deeper than the sequence's explicit levels.
  CHECK(run_cli(std::string("levels --seq ") + path_of("thirds.json") + " --levels 5")
            .exit_code == 64);
}

TEST_CASE("curve pipeline on the circle: certified, not attained") {
  auto res = run_cli(std::string("curve --name circle --depth 6 --grid 100 --rounds 3 ") +
                     "--rho 1 --samples 12 --demo-attaining --report " +
                     path_of("curve.json") + " --scan-csv " + path_of("scan.csv"));
  CHECK(res.exit_code == 0);
  CHECK(res.contains("rho 1"));
  CHECK(res.contains("density below chord profile: pass"));
  CHECK(res.contains("F: sup"));
  CHECK(res.contains("attained no"));
  CHECK(res.contains("attained yes"));  // the straight-segment control

  auto rep = nlohmann::json::parse(read_file(path_of("curve.json")));
  CHECK(rep.at("curve").at("name") == "circle");
  CHECK(!rep.at("scan_indicator").at("attained").get<bool>());
  CHECK(!rep.at("scan_penalized").at("attained").get<bool>());
  CHECK(rep.at("scan_indicator").at("sup_estimate").get<double>() < 1.0);
  CHECK(rep.at("control").at("attained").get<bool>());
  CHECK(rep.at("certificate").at("state") == "pass");

  std::string scan = read_file(path_of("scan.csv"));
  CHECK(scan.rfind("t,s,quotient,chord,arc", 0) == 0);

  CHECK(run_cli("curve --name klein-bottle").exit_code == 64);
  CHECK(run_cli("curve --name circle --param bogus=1").exit_code == 64);
  CHECK(run_cli("curve --name circle --poly t").exit_code == 64);
}

TEST_CASE("curve accepts a coordinate tuple and reports the arc length") {
  auto res = run_cli("curve --poly \"(t, t^2/2)\" --depth 4 --grid 60 --rounds 2 "
                     "--rho-outer 16 --rho-inner 32 --samples 8");
  CHECK(res.exit_code == 0);
  CHECK(res.contains("length 1.147793575"));
}

TEST_CASE("precision env var and JSON config file") {
  CHECK(run_cli("synthesize --f \"1 - x\" --depth 4", "CANTOR_PRECISION=999 ").exit_code == 64);
  CHECK(run_cli("synthesize --f \"1 - x\" --depth 4", "CANTOR_PRECISION=abc ").exit_code == 64);
  auto res = run_cli(std::string("synthesize --f ") + kFlagship + " --depth 4",
                     "CANTOR_PRECISION=32 ");
  CHECK(res.exit_code == 0);

  write_file(path_of("conf.json"),
             R"json({"synthesize": {"f": "max(1/2, 1 - sqrt(x))", "depth": 5}})json");
  auto conf = run_cli(std::string("synthesize --config ") + path_of("conf.json") + " --out " +
                      path_of("confseq.json"));
  CHECK(conf.exit_code == 0);
  auto seq = nlohmann::json::parse(read_file(path_of("confseq.json")));
  CHECK(seq.at("depth").get<int>() == 5);

  write_file(path_of("badconf.json"), "{not json");
  CHECK(run_cli(std::string("synthesize --config ") + path_of("badconf.json")).exit_code == 64);
}
