#include <cstdio>
#include <fstream>

#include "doctest.h"
#include "spar/io/config.hpp"
#include "spar/io/csv.hpp"

using namespace spar;

TEST_CASE("config parse, typed access, unknown-key rejection") {
  const std::string text = R"(# run configuration
model.family = gaussian
model.rho = 0.6
margin.family = laplace
grid.angles = 90   # resolution
)";
  auto cfg = io::Config::parse(text, "test.conf");
  CHECK(cfg.get_string("model.family") == "gaussian");
  CHECK(cfg.get_double("model.rho") == doctest::Approx(0.6));
  CHECK(cfg.get_int("grid.angles", 720) == 90);
  CHECK(cfg.get_string("margin.family", "x") == "laplace");
  CHECK_NOTHROW(cfg.reject_unknown());

  auto cfg2 = io::Config::parse("model.family = frank\nmodel.alpha = 3\nmystery.key = 1\n");
  cfg2.get_string("model.family");
  cfg2.get_double("model.alpha");
  CHECK_THROWS_WITH_AS(cfg2.reject_unknown(),
                       doctest::Contains("unknown key 'mystery.key'"), std::runtime_error);

  CHECK_THROWS_AS(io::Config::parse("model.family\n"), std::runtime_error);
  CHECK_THROWS_AS(io::Config::parse("a.b = 1\na.b = 2\n"), std::runtime_error);
  CHECK_THROWS_WITH_AS(io::Config::parse("a.b = 1\nc.d = oops\n").get_double("c.d"),
                       doctest::Contains(":2:"), std::runtime_error);
}

TEST_CASE("config builds engines") {
  auto cfg = io::Config::parse(R"(
model.family = student_t
model.rho = 0.6
model.nu = 2
margin.family = laplace
polar.radial = l1
polar.angular = l1
)");
  auto e = io::make_engine(cfg);
  CHECK(e.dimension() == 2);
  CHECK(e.copula().family() == copulas::CopulaFamily::StudentT);
  CHECK(e.margin().family() == margins::MarginFamily::SGP);
  CHECK_NOTHROW(cfg.reject_unknown());

  auto cr = io::Config::parse("model.family = clayton\nmodel.alpha = -0.2\n"
                              "model.reflect = 1,1\nmargin.family = gp\nmargin.xi = -0.2\n");
  auto e2 = io::make_engine(cr);
  CHECK(e2.copula().corner()[0] == 1);
  CHECK(e2.copula().corner()[1] == 1);
}

TEST_CASE("csv round trip with 17 significant digits") {
  const std::string path = "test_io_roundtrip.csv";
  {
    io::CsvWriter w(path, {"a", "b"});
    w.row({1.0 / 3.0, 1e-17});
    w.row({-2.5, 0.1});
  }
  auto t = io::read_numeric_csv(path, 2);
  REQUIRE(t.rows.size() == 2);
  CHECK(t.rows[0][0] == 1.0 / 3.0);  // bit-exact
  CHECK(t.rows[0][1] == 1e-17);
  CHECK(t.rows[1][1] == 0.1);
  std::remove(path.c_str());

  {
    std::ofstream bad("test_io_bad.csv");
    bad << "x,y\n1,2\nfoo,3\n";
  }
  CHECK_THROWS_WITH_AS(io::read_numeric_csv("test_io_bad.csv", 2), doctest::Contains(":3:"),
                       std::runtime_error);
  std::remove("test_io_bad.csv");
}

#include "spar/io/records.hpp"

TEST_CASE("classification serialises to a JSON record") {
  auto c = copulas::CopulaModel::gaussian(0.6);
  const std::array<int, 2> corner{0, 0};
  auto s = asymptotics::classify(c, corner);
  auto j = io::classify_record(c, s);
  CHECK(j["family"] == "gaussian");
  CHECK(j["class"] == "intermediate");
  CHECK(std::abs(j["kappa"].get<double>() - 1.25) < 1e-12);
  auto b = copulas::CopulaModel::biv_exponential(0.5);
  auto jb = io::classify_record(b, asymptotics::classify(b, corner));
  CHECK(jb["kappa"] == "inf");
  CHECK(jb["class"] == "negative");
}
