#include "qcon/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace qcon::io {

using nlohmann::json;

json matrix_to_json(const ComplexMatrix& m) {
  json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  std::vector<double> re, im;
  re.reserve(m.data().size());
  im.reserve(m.data().size());
  for (const cplx& z : m.data()) {
    re.push_back(z.real());
    im.push_back(z.imag());
  }
  j["re"] = std::move(re);
  j["im"] = std::move(im);
  return j;
}

ComplexMatrix matrix_from_json(const json& j) {
  const std::size_t rows = j.at("rows").get<std::size_t>();
  const std::size_t cols = j.at("cols").get<std::size_t>();
  const auto re = j.at("re").get<std::vector<double>>();
  const auto im = j.at("im").get<std::vector<double>>();
  if (re.size() != rows * cols || im.size() != rows * cols)
    throw std::invalid_argument("matrix json: re/im length != rows*cols");
  std::vector<cplx> entries(rows * cols);
  for (std::size_t i = 0; i < entries.size(); ++i)
    entries[i] = cplx{re[i], im[i]};
  return ComplexMatrix(rows, cols, std::move(entries));
}

json state_to_json(const StateVector& v) {
  json j;
  j["rows"] = v.size();
  j["cols"] = 1;
  j["dims"] = v.dims();
  std::vector<double> re, im;
  for (const cplx& z : v.amplitudes()) {
    re.push_back(z.real());
    im.push_back(z.imag());
  }
  j["re"] = std::move(re);
  j["im"] = std::move(im);
  return j;
}

StateVector state_from_json(const json& j) {
  const auto dims = j.at("dims").get<std::vector<std::size_t>>();
  const auto re = j.at("re").get<std::vector<double>>();
  const auto im = j.at("im").get<std::vector<double>>();
  if (re.size() != im.size())
    throw std::invalid_argument("state json: re/im length mismatch");
  std::vector<cplx> amps(re.size());
  for (std::size_t i = 0; i < amps.size(); ++i) amps[i] = cplx{re[i], im[i]};
  return StateVector(dims, std::move(amps));
}

json latin_to_json(const combinatorics::LatinSquare& sq) {
  return json{{"order", sq.order}, {"cells", sq.cells}};
}

combinatorics::LatinSquare latin_from_json(const json& j) {
  combinatorics::LatinSquare sq;
  sq.order = j.at("order").get<std::size_t>();
  sq.cells = j.at("cells").get<std::vector<std::vector<std::size_t>>>();
  return sq;
}

json table_to_json(const combinatorics::QuantumLatinTable& t) {
  json j;
  j["order"] = t.order;
  j["mode"] =
      t.mode == combinatorics::TableMode::kBipartite ? "bipartite" : "single";
  json rows = json::array();
  for (const auto& row : t.cells) {
    json jrow = json::array();
    for (const auto& cell : row) jrow.push_back(state_to_json(cell));
    rows.push_back(std::move(jrow));
  }
  j["cells"] = std::move(rows);
  return j;
}

combinatorics::QuantumLatinTable table_from_json(const json& j) {
  combinatorics::QuantumLatinTable t{
      j.at("order").get<std::size_t>(),
      j.at("mode").get<std::string>() == "bipartite"
          ? combinatorics::TableMode::kBipartite
          : combinatorics::TableMode::kSingleSpace,
      {}};
  for (const auto& jrow : j.at("cells")) {
    std::vector<StateVector> row;
    for (const auto& cell : jrow) row.push_back(state_from_json(cell));
    t.cells.push_back(std::move(row));
  }
  return t;
}

json report_to_json(const CheckReport& r) {
  return json{{"passed", r.passed},
              {"max_residual", r.max_residual},
              {"witness", r.witness},
              {"tolerance_used", r.tolerance_used}};
}

json certificate_to_json(const search::SearchCertificate& c) {
  json cfg{{"restarts", c.config.restarts},
           {"max_iters", c.config.max_iters},
           {"grad_tol", c.config.grad_tol},
           {"initial_step", c.config.initial_step},
           {"backtrack_factor", c.config.backtrack_factor},
           {"fd_step", c.config.fd_step},
           {"stop_after_target", c.config.stop_after_target},
           {"threads", c.config.threads}};
  if (c.config.target_value) cfg["target_value"] = *c.config.target_value;
  return json{{"problem", c.problem},
              {"seed", c.seed},
              {"restarts", c.restarts},
              {"restarts_executed", c.restarts_executed},
              {"best_value", c.best_value},
              {"best_restart", c.best_restart},
              {"best_point", c.best_point},
              {"value_trace", c.value_trace},
              {"tolerances", c.tolerances},
              {"wall_time_seconds", c.wall_time_seconds},
              {"total_iterations", c.total_iterations},
              {"aborted_restarts", c.aborted_restarts},
              {"config", std::move(cfg)}};
}

search::SearchCertificate certificate_from_json(const json& j) {
  search::SearchCertificate c;
  c.problem = j.at("problem").get<std::string>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.restarts = j.at("restarts").get<std::size_t>();
  c.restarts_executed = j.at("restarts_executed").get<std::size_t>();
  c.best_value = j.at("best_value").get<double>();
  c.best_restart = j.at("best_restart").get<std::size_t>();
  c.best_point = j.at("best_point").get<std::vector<double>>();
  c.value_trace = j.at("value_trace").get<std::vector<double>>();
  c.tolerances = j.at("tolerances").get<std::map<std::string, double>>();
  c.wall_time_seconds = j.at("wall_time_seconds").get<double>();
  c.total_iterations = j.at("total_iterations").get<std::size_t>();
  c.aborted_restarts = j.at("aborted_restarts").get<std::vector<std::size_t>>();
  const json& cfg = j.at("config");
  c.config.restarts = cfg.at("restarts").get<std::size_t>();
  c.config.max_iters = cfg.at("max_iters").get<std::size_t>();
  c.config.grad_tol = cfg.at("grad_tol").get<double>();
  c.config.initial_step = cfg.at("initial_step").get<double>();
  c.config.backtrack_factor = cfg.at("backtrack_factor").get<double>();
  c.config.fd_step = cfg.at("fd_step").get<double>();
  c.config.stop_after_target = cfg.at("stop_after_target").get<bool>();
  c.config.threads = cfg.at("threads").get<int>();
  if (cfg.contains("target_value"))
    c.config.target_value = cfg.at("target_value").get<double>();
  c.config.seed = c.seed;
  return c;
}

void write_atomic(const std::string& path, const json& j) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw std::runtime_error("cannot open for writing: " + tmp);
    out << j.dump(2) << '\n';
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("rename failed for: " + path);
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  return json::parse(in);
}

}  // namespace qcon::io
