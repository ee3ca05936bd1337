#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>

#include "oracles.hpp"
#include "qcon/combinatorics.hpp"
#include "qcon/json_io.hpp"
#include "qcon/rng.hpp"
#include "qcon/search.hpp"

using namespace qcon;
using nlohmann::json;

TEST_CASE("matrix round-trip preserves every bit") {
  Rng rng(9);
  const ComplexMatrix m = oracles::random_matrix(3, 5, rng);
  const json j = io::matrix_to_json(m);
  CHECK(j.at("rows") == 3);
  CHECK(j.at("cols") == 5);
  const ComplexMatrix back = io::matrix_from_json(j);
  for (std::size_t i = 0; i < m.data().size(); ++i)
    CHECK(back.data()[i] == m.data()[i]);

  json broken = j;
  broken["re"] = std::vector<double>{1.0};
  CHECK_THROWS(io::matrix_from_json(broken));
}

TEST_CASE("state round-trip keeps dims") {
  const StateVector v = tensor(StateVector::basis(2, 1), StateVector::basis(3, 0));
  const StateVector back = io::state_from_json(io::state_to_json(v));
  CHECK(back.dims() == v.dims());
  for (std::size_t i = 0; i < v.size(); ++i) CHECK(back[i] == v[i]);
}

TEST_CASE("latin square and quantum table round-trips") {
  const auto [a, b] = combinatorics::graeco_latin(3);
  const combinatorics::LatinSquare back = io::latin_from_json(io::latin_to_json(a));
  CHECK(back.order == a.order);
  CHECK(back.cells == a.cells);

  const combinatorics::QuantumLatinTable table =
      combinatorics::product_table_from_graeco(a, b);
  const combinatorics::QuantumLatinTable tback =
      io::table_from_json(io::table_to_json(table));
  CHECK(tback.order == table.order);
  CHECK(tback.mode == table.mode);
  CHECK(combinatorics::verify_oqls(tback, 1e-12).passed);
}

TEST_CASE("report serialization carries the verdict") {
  const CheckReport rep = make_report(0.5, 1e-10, {{1, 2}});
  const json j = io::report_to_json(rep);
  CHECK(j.at("passed") == false);
  CHECK(j.at("max_residual") == 0.5);
  CHECK(j.at("witness")[0][1] == 2);
}

TEST_CASE("certificate round-trip reproduces the config") {
  const auto sphere = search::unit_sphere(3);
  search::Objective obj;
  obj.value = [](std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += (v - 0.4) * (v - 0.4);
    return s;
  };
  search::MinimizeConfig cfg;
  cfg.restarts = 3;
  cfg.seed = 77;
  cfg.target_value = 1e-30;
  const auto cert = search::minimize("round-trip", obj, *sphere, cfg);

  const auto back = io::certificate_from_json(io::certificate_to_json(cert));
  CHECK(back.problem == cert.problem);
  CHECK(back.seed == cert.seed);
  CHECK(back.best_value == cert.best_value);
  CHECK(back.best_point == cert.best_point);
  CHECK(back.value_trace == cert.value_trace);
  CHECK(back.config.restarts == cert.config.restarts);
  REQUIRE(back.config.target_value.has_value());
  CHECK(*back.config.target_value == *cert.config.target_value);
}

TEST_CASE("atomic write then read") {
  const std::filesystem::path path =
      std::filesystem::temp_directory_path() / "qcon_json_io_test.json";
  const json j{{"hello", 1}, {"nested", {{"x", 2.5}}}};
  io::write_atomic(path.string(), j);
  const json back = io::read_json(path.string());
  CHECK(back == j);
  std::filesystem::remove(path);
  CHECK_THROWS(io::read_json(path.string()));
}
