#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <sys/wait.h>
#include <unistd.h>

#include <gtest/gtest.h>

#include "htrans/error.hpp"
#include "htrans/io.hpp"
#include "htrans/keyvalue.hpp"
#include "htrans/surface_file.hpp"

namespace {

using namespace htrans;
namespace fs = std::filesystem;

template <typename Fn>
ParseError parse_error(Fn fn) {
  try {
    fn();
  } catch (const ParseError &e) {
    return e;
  }
  ADD_FAILURE() << "no ParseError thrown";
  return ParseError(0, 0, "none");
}

// ---- key/value syntax

TEST(KeyValue, TokensCarryPositions) {
  const auto entries = parse_key_values("# comment\n\n  kind = type1   # trailing\nu = -1  1\n");
  ASSERT_EQ(entries.size(), 2U);
  EXPECT_EQ(entries[0].key.text, "kind");
  EXPECT_EQ(entries[0].key.line, 3U);
  EXPECT_EQ(entries[0].key.column, 3U);
  EXPECT_EQ(entries[0].values[0].text, "type1");
  EXPECT_EQ(entries[0].values[0].column, 10U);
  ASSERT_EQ(entries[1].values.size(), 2U);
  EXPECT_EQ(entries[1].values[1].column, 9U);
}

TEST(KeyValue, Errors) {
  auto e = parse_error([] { parse_key_values("kind = type1\nradius 2\n"); });
  EXPECT_EQ(e.line(), 2U);
  e = parse_error([] { parse_key_values("kind =   \n"); });
  EXPECT_EQ(e.line(), 1U);
  e = parse_error([] { parse_key_values("a = 1\nb = 2\n  a = 3\n"); });
  EXPECT_EQ(e.line(), 3U);
  EXPECT_EQ(e.column(), 3U);
  e = parse_error([] { parse_key_values("Kind = 1\n"); });
  EXPECT_EQ(e.line(), 1U);
}

TEST(KeyValue, Numbers) {
  EXPECT_EQ(parse_number({"-1.5e2", 1, 1}), -150.0);
  EXPECT_EQ(parse_integer({"42", 1, 1}), 42);
  const auto e = parse_error([] { parse_number({"1.5x", 4, 7}); });
  EXPECT_EQ(e.line(), 4U);
  EXPECT_EQ(e.column(), 7U);
  parse_error([] { parse_number({"nan", 1, 1}); });
  parse_error([] { parse_integer({"2.5", 1, 1}); });
}

// ---- surface files

TEST(SurfaceFile, ParsesEveryKind) {
  const Surface t1 = parse_surface("kind = type1\nu = -1 1\nv = -1 1\nf = quadratic 0.5 0 1\n"
                                   "g = spline 0.2 0.1 0 0.1 0.2 0.3\n");
  ASSERT_TRUE(std::holds_alternative<TranslationSurface>(t1));
  EXPECT_EQ(std::get<TranslationSurface>(t1).kind, TranslationKind::TypeI);
  EXPECT_NEAR(std::get<TranslationSurface>(t1).f(1.0).v0, 1.5, 1e-15);

  const Surface t2 = parse_surface("kind = type2\nu = -1 1\nv = 1 2\nf = polynomial 1 2 3\ng = constant 3\n");
  EXPECT_NEAR(std::get<TranslationSurface>(t2).f(0.5).v0, 2.75, 1e-15);

  const Surface h = parse_surface("kind = hemisphere\ncenter = 0.5 -1\nradius = 2\n");
  const auto &hemi = std::get<Hemisphere>(h);
  EXPECT_DOUBLE_EQ(hemi.radius, 2.0);
  EXPECT_NEAR(hemi.domain.u.hi, 0.5 + std::sqrt(2.0), 1e-15);

  EXPECT_DOUBLE_EQ(std::get<Horosphere>(parse_surface("kind = horosphere\nheight = 3\nu = 0 1\nv = 0 1\n")).height,
                   3.0);
  const auto vp = std::get<VerticalPlane>(
      parse_surface("kind = vertical-plane\nslope = 2\noffset = 1\nu = -1 1\nv = 0.5 2\n"));
  EXPECT_DOUBLE_EQ(vp.slope, 2.0);

  const Surface sc = parse_surface("kind = type1\nu = -1 1\nv = -1 1\nf = scherk-log-cos 1 1\n"
                                   "g = scherk-log-cos 1 -1\n");
  EXPECT_NEAR(std::get<TranslationSurface>(sc).g(0.5).v0, -std::log(std::cos(0.5)), 1e-15);
}

TEST(SurfaceFile, ErrorsPointAtTheOffendingToken) {
  auto e = parse_error([] { parse_surface("kind = type3\n"); });
  EXPECT_EQ(e.line(), 1U);
  EXPECT_EQ(e.column(), 8U);

  e = parse_error([] { parse_surface("kind = horosphere\nheight = 3\nu = 0 1\nv = 0 1\nradius = 2\n"); });
  EXPECT_EQ(e.line(), 5U);
  EXPECT_EQ(e.column(), 1U);

  e = parse_error([] { parse_surface("kind = type1\nu = -1 1\nv = -1 1\nf = linear 1\ng = constant 1\n"); });
  EXPECT_EQ(e.line(), 4U);

  e = parse_error([] { parse_surface("kind = type1\nu = -1 1\nv = -1 1\nf = linear 1 zz\ng = constant 1\n"); });
  EXPECT_EQ(e.line(), 4U);
  EXPECT_EQ(e.column(), 14U);

  e = parse_error([] { parse_surface("kind = type1\nu = -1 1\nv = -1 1\nf = linear 1 0\n"); });
  EXPECT_EQ(e.line(), 5U); // missing g reported past the end

  e = parse_error([] { parse_surface("kind = type2\nu = -1 1\nv = -1 1\nf = linear 1 0\ng = constant 0\n"); });
  EXPECT_EQ(e.line(), 3U);

  e = parse_error([] { parse_surface("kind = type1\nu = -2 2\nv = -1 1\nf = scherk-log-cos 1 1\ng = constant 1\n"); });
  EXPECT_EQ(e.line(), 4U);

  e = parse_error([] { parse_surface("kind = type1\nu = 1 -1\nv = -1 1\nf = constant 1\ng = constant 1\n"); });
  EXPECT_EQ(e.line(), 2U);

  e = parse_error([] { parse_surface("kind = hemisphere\ncenter = 0 0\nradius = -1\n"); });
  EXPECT_EQ(e.line(), 3U);
}

TEST(SurfaceFile, ShippedDescriptorsLoad) {
  for (const auto &entry : fs::directory_iterator(HTRANS_DATA_DIR)) {
    if (entry.path().extension() == ".surf") {
      EXPECT_NO_THROW(load_surface(entry.path().string())) << entry.path();
    }
  }
  EXPECT_THROW(load_surface("/nonexistent/x.surf"), std::runtime_error);
}

// ---- artifacts

TEST(Artifacts, GridCsvRoundTrip) {
  const Surface s = Hemisphere{0.0, 0.0, 1.0, {{-0.7, 0.7}, {-0.7, 0.7}}};
  const auto grid = curvature_grid_serial(s, {7, 5, GridModel::hyperbolic});
  std::stringstream buf;
  io::write_grid_csv(buf, grid);
  const io::CsvTable t = io::read_csv(buf);
  EXPECT_EQ(t.schema, io::kGridSchema);
  ASSERT_EQ(t.rows.size(), grid.points.size());
  EXPECT_EQ(t.columns, (std::vector<std::string>{"u", "v", "x", "y", "z", "He", "N3", "H"}));
  for (std::size_t i = 0; i < grid.points.size(); ++i) {
    EXPECT_EQ(t.number(i, "u"), grid.points[i].u);
    EXPECT_EQ(t.number(i, "z"), grid.points[i].z);
    EXPECT_EQ(t.number(i, "H"), grid.points[i].H);
  }
}

TEST(Artifacts, SeedCsvRoundTripIncludingEmptyCells) {
  std::vector<search::SeedRun> runs(2);
  runs[0].seed = 0;
  runs[0].result.sup_residual = 0.1 + 0.2;
  runs[0].result.mean_square_residual = 1e-300;
  runs[0].result.plane_distance = 2.0 / 3.0;
  runs[0].result.iterations = 17;
  runs[0].result.converged = true;
  runs[1].seed = 1;
  runs[1].result.sup_residual = std::numeric_limits<double>::infinity();
  runs[1].result.mean_square_residual = std::numeric_limits<double>::quiet_NaN();
  std::stringstream buf;
  io::write_seed_csv(buf, runs);
  const io::CsvTable t = io::read_csv(buf);
  EXPECT_EQ(t.schema, io::kSeedSchema);
  EXPECT_EQ(t.number(0, "supResidual"), 0.1 + 0.2);
  EXPECT_EQ(t.number(0, "meanSquareResidual"), 1e-300);
  EXPECT_EQ(t.number(0, "planeDistance"), 2.0 / 3.0);
  EXPECT_EQ(t.number(0, "converged"), 1.0);
  EXPECT_TRUE(std::isinf(t.number(1, "supResidual")));
  EXPECT_TRUE(std::isnan(t.number(1, "meanSquareResidual")));
  EXPECT_TRUE(std::isnan(t.number(1, "planeDistance")));
}

TEST(Artifacts, MalformedCsvRejected) {
  std::stringstream missing("u,v\n1,2\n");
  EXPECT_EQ(parse_error([&] { io::read_csv(missing); }).line(), 1U);
  std::stringstream ragged("# schema=x/1\na,b\n1,2\n3\n");
  EXPECT_EQ(parse_error([&] { io::read_csv(ragged); }).line(), 4U);
}

TEST(Artifacts, JsonReparsesWithSchema) {
  std::stringstream buf;
  io::write_json(buf, io::proof_reports(algebra::verify_all()));
  const auto doc = nlohmann::json::parse(buf.str());
  EXPECT_EQ(doc["schema"], io::kVerifySchema);
  EXPECT_EQ(doc["identities"].size(), 12U);
  for (const auto &r : doc["identities"]) {
    EXPECT_TRUE(r["status"] == "exact-match" || r["status"] == "match-up-to-factor") << r["id"];
  }
  EXPECT_EQ(io::format_double(0.1), "0.10000000000000001");
}

// ---- command line

struct CliRun {
  int status = 0;
  std::string output;
};

CliRun cli(const std::string &args) {
  const fs::path log = fs::temp_directory_path() / ("htrans-cli-test-" + std::to_string(::getpid()) + ".log");
  const std::string cmd = std::string(HTRANS_CLI) + " " + args + " > " + log.string() + " 2>&1";
  const int raw = std::system(cmd.c_str());
  CliRun r;
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  std::ifstream in(log);
  std::stringstream ss;
  ss << in.rdbuf();
  r.output = ss.str();
  fs::remove(log);
  return r;
}

fs::path scratch(const std::string &name) {
  const fs::path dir = fs::temp_directory_path() / ("htrans-test-" + std::to_string(::getpid())) / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST(Cli, VerifyExitsZeroWithReport) {
  const auto dir = scratch("verify");
  const CliRun r = cli("verify --out " + dir.string());
  EXPECT_EQ(r.status, 0) << r.output;
  const auto doc = nlohmann::json::parse(slurp(dir / "verify.json"));
  EXPECT_EQ(doc["identities"].size(), 12U);
}

TEST(Cli, CurvatureOnHemisphere) {
  const auto dir = scratch("curv");
  const CliRun r = cli("curvature --surface " + std::string(HTRANS_DATA_DIR) + "/hemisphere.surf --out " +
                       dir.string());
  ASSERT_EQ(r.status, 0) << r.output;
  std::ifstream in(dir / "curvature.csv");
  const io::CsvTable t = io::read_csv(in);
  ASSERT_EQ(t.rows.size(), 10000U);
  double worst = 0.0;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    worst = std::max(worst, std::abs(t.number(i, "H")));
  }
  EXPECT_LT(worst, 1e-10);
}

TEST(Cli, ScherkReportsNonzeroHyperbolicCurvature) {
  const auto dir = scratch("scherk");
  const CliRun r = cli("scherk --a 1 --grid 40 40 --out " + dir.string());
  ASSERT_EQ(r.status, 0) << r.output;
  const auto doc = nlohmann::json::parse(slurp(dir / "scherk.json"));
  EXPECT_LT(doc["max_abs_He"].get<double>(), 1e-10);
  EXPECT_GT(doc["max_abs_H"].get<double>(), 0.1);
  EXPECT_NE(doc["note"].get<std::string>().find("not"), std::string::npos);
}

TEST(Cli, ParseErrorsExitOne) {
  const auto dir = scratch("bad");
  std::ofstream(dir / "bad.surf") << "kind = hemisphere\ncenter = 0 0\nradius = 1\ncolour = red\n";
  CliRun r = cli("curvature --surface " + (dir / "bad.surf").string() + " --out " + dir.string());
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.output.find("4:1"), std::string::npos) << r.output;

  std::ofstream(dir / "bad.cfg") << "kind = type2\nseeds = 2\n  bogus = 1\n";
  r = cli("search --config " + (dir / "bad.cfg").string() + " --out " + dir.string());
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.output.find("3:3"), std::string::npos) << r.output;

  r = cli("frobnicate");
  EXPECT_EQ(r.status, 1);
  r = cli("curvature --surface /nonexistent.surf");
  EXPECT_EQ(r.status, 1);
}

TEST(Cli, ConfigFileAndFlagPrecedence) {
  const auto dir = scratch("cfg");
  std::ofstream(dir / "run.cfg") << "kind = type2\nseeds = 2\ngrid = 9\nknots = 4\nmax-iterations = 5\n";
  CliRun r = cli("search --config " + (dir / "run.cfg").string() + " --out " + dir.string());
  ASSERT_EQ(r.status, 0) << r.output;
  std::ifstream in(dir / "search.csv");
  EXPECT_EQ(io::read_csv(in).rows.size(), 2U);
  const auto doc = nlohmann::json::parse(slurp(dir / "search.json"));
  EXPECT_EQ(doc["config"]["grid"], 9);

  r = cli("search --config " + (dir / "run.cfg").string() + " --seeds 3 --out " + dir.string());
  ASSERT_EQ(r.status, 0) << r.output;
  std::ifstream again(dir / "search.csv");
  EXPECT_EQ(io::read_csv(again).rows.size(), 3U);
}

TEST(Cli, SameConfigByteIdenticalOutputs) {
  const auto a = scratch("det-a"), b = scratch("det-b");
  const std::string args = "search --kind type2 --seeds 3 --grid 9 --knots 4 --max-iterations 20 --out ";
  ASSERT_EQ(cli(args + a.string()).status, 0);
  ASSERT_EQ(cli("--threads 2 " + args + b.string()).status, 0);
  EXPECT_EQ(slurp(a / "search.csv"), slurp(b / "search.csv"));
  EXPECT_EQ(slurp(a / "search.json"), slurp(b / "search.json"));
}

TEST(Cli, NumericReport) {
  const auto dir = scratch("report");
  const CliRun r = cli("report --out " + dir.string());
  ASSERT_EQ(r.status, 0) << r.output;
  const auto doc = nlohmann::json::parse(slurp(dir / "report.json"));
  EXPECT_EQ(doc["schema"], io::kReportSchema);
}

} // namespace
