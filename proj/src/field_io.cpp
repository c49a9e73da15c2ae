#include "mav/field_io.h"

#include <bit>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>

namespace mav {

void write_field_csv(const std::string& path, const TorusGrid& g, const std::vector<double>& v) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw std::runtime_error("cannot open " + path);
  std::fprintf(f, "x,y,value\n");
  int n = g.n;
  double p = g.p(), q = g.q();
  for (int jb = 0; jb < n; jb++) {
    double b = double(jb) / n;
    for (int ja = 0; ja < n; ja++) {
      double a = double(ja) / n;
      std::fprintf(f, "%.17g,%.17g,%.17g\n", a + p * b, q * b, v[size_t(jb) * n + ja]);
    }
  }
  std::fclose(f);
}

static void to_little_endian(std::vector<double>& v) {
  if constexpr (std::endian::native == std::endian::big) {
    for (double& d : v) {
      uint64_t u;
      std::memcpy(&u, &d, 8);
      u = __builtin_bswap64(u);
      std::memcpy(&d, &u, 8);
    }
  }
}

void write_psi_binary(const std::string& path, const ScalarField& f) {
  std::vector<double> v = f.v;
  to_little_endian(v);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path);
  out.write(reinterpret_cast<const char*>(v.data()), std::streamsize(v.size() * 8));
}

ScalarField read_psi_binary(const std::string& path, const TorusGrid& g) {
  std::ifstream in(path, std::ios::binary | std::ios::ate);
  if (!in) throw MavError(ErrorCode::SchemaMismatch, "missing field file " + path);
  auto bytes = in.tellg();
  if (size_t(bytes) != g.size() * 8)
    throw MavError(ErrorCode::SchemaMismatch,
                   "field file has " + std::to_string(bytes) + " bytes, expected " +
                       std::to_string(g.size() * 8));
  in.seekg(0);
  ScalarField f(g);
  in.read(reinterpret_cast<char*>(f.v.data()), std::streamsize(g.size() * 8));
  to_little_endian(f.v); // involution
  return f;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MavError(ErrorCode::ConfigParseError, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw MavError(ErrorCode::ConfigParseError, std::string("bad JSON in ") + path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << j.dump(2) << "\n";
}

VortexConfig config_from_json(const json& j) {
  static const char* known[] = {"r1", "r2", "tau_re", "tau_im", "n", "theta_truncation",
                                "tol_newton", "tol_path", "t_step_init", "t_step_min",
                                "max_newton", "allow_unstable"};
  if (!j.is_object()) throw MavError(ErrorCode::ConfigParseError, "config must be a JSON object");
  for (auto& [key, val] : j.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) throw MavError(ErrorCode::ConfigParseError, "unknown config key \"" + key + "\"");
    (void)val;
  }
  VortexConfig cfg;
  try {
    if (!j.contains("r1") || !j.contains("r2"))
      throw MavError(ErrorCode::ConfigParseError, "config needs r1 and r2");
    cfg.r1 = j.at("r1").get<int>();
    cfg.r2 = j.at("r2").get<int>();
    cfg.tau = cplx(j.value("tau_re", 0.0), j.value("tau_im", 1.0));
    cfg.n = j.value("n", 64);
    cfg.theta_truncation = j.value("theta_truncation", 12);
    cfg.tol_newton = j.value("tol_newton", 1e-11);
    cfg.tol_path = j.value("tol_path", 1e-11);
    cfg.t_step_init = j.value("t_step_init", 0.1);
    cfg.t_step_min = j.value("t_step_min", 1e-4);
    cfg.max_newton = j.value("max_newton", 12);
    cfg.allow_unstable = j.value("allow_unstable", false);
  } catch (const nlohmann::json::exception& e) {
    throw MavError(ErrorCode::ConfigParseError, std::string("bad config value: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

json config_to_json(const VortexConfig& cfg) {
  json j;
  j["r1"] = cfg.r1;
  j["r2"] = cfg.r2;
  j["tau_re"] = cfg.tau.real();
  j["tau_im"] = cfg.tau.imag();
  j["n"] = cfg.n;
  j["theta_truncation"] = cfg.theta_truncation;
  j["tol_newton"] = cfg.tol_newton;
  j["tol_path"] = cfg.tol_path;
  j["t_step_init"] = cfg.t_step_init;
  j["t_step_min"] = cfg.t_step_min;
  j["max_newton"] = cfg.max_newton;
  j["allow_unstable"] = cfg.allow_unstable;
  return j;
}

VortexConfig load_config(const std::string& path) { return config_from_json(read_json_file(path)); }

json monitors_to_json(const Monitors& m) {
  json j;
  j["max_phi2"] = m.max_phi2;
  j["degree"] = m.degree;
  if (m.juncture_value) j["juncture_value"] = *m.juncture_value;
  else j["juncture_value"] = nullptr;
  j["psi_min"] = m.psi_min;
  j["psi_max"] = m.psi_max;
  return j;
}

json report_to_json(const VortexConfig& cfg, const SolutionReport& rep) {
  json j;
  j["schema"] = "mav-1";
  j["config"] = config_to_json(cfg);
  j["converged"] = rep.converged;
  j["failure"] = rep.failure ? json(error_name(*rep.failure)) : json(nullptr);
  j["monitors"] = monitors_to_json(rep.monitors);
  json hist = json::array();
  for (const auto& p : rep.t_history) hist.push_back({p.t, p.newton_iters, p.residual_norm});
  j["t_history"] = hist;
  return j;
}

void write_solution_dir(const std::string& dir, const VortexConfig& cfg,
                        const SolutionReport& rep) {
  std::filesystem::create_directories(dir);
  write_json_file(dir + "/report.json", report_to_json(cfg, rep));
  if (!rep.psi_final.v.empty()) write_psi_binary(dir + "/psi.f64", rep.psi_final);
}

LoadedSolution load_solution_dir(const std::string& dir) {
  json j = read_json_file(dir + "/report.json");
  if (!j.contains("schema") || j["schema"] != "mav-1")
    throw MavError(ErrorCode::SchemaMismatch, "report.json is not a mav-1 solution header");
  LoadedSolution out;
  out.report = j;
  out.cfg = config_from_json(j.at("config"));
  TorusGrid g = make_grid(out.cfg.tau, out.cfg.n);
  out.psi = read_psi_binary(dir + "/psi.f64", g);
  return out;
}

static Eigen::MatrixXcd matrix_from_json(const json& arr, int r, const std::string& name) {
  if (!arr.is_array() || arr.size() != size_t(r) * r)
    throw MavError(ErrorCode::ConfigParseError,
                   name + " must be a flat row-major array of r^2 [re, im] pairs");
  Eigen::MatrixXcd M(r, r);
  for (int i = 0; i < r * r; i++) {
    const json& e = arr[i];
    if (!e.is_array() || e.size() != 2)
      throw MavError(ErrorCode::ConfigParseError, name + " entries must be [re, im] pairs");
    M(i / r, i % r) = cplx(e[0].get<double>(), e[1].get<double>());
  }
  return M;
}

EndoForm11 endo_form_from_json(const json& j) {
  if (!j.is_object() || !j.contains("r") || !j.contains("A") || !j.contains("B") || !j.contains("C"))
    throw MavError(ErrorCode::ConfigParseError, "instance needs keys r, A, B, C");
  EndoForm11 F;
  try {
    F.r = j.at("r").get<int>();
  } catch (const nlohmann::json::exception& e) {
    throw MavError(ErrorCode::ConfigParseError, std::string("bad rank: ") + e.what());
  }
  if (F.r < 1 || F.r > 16) throw MavError(ErrorCode::ConfigParseError, "rank must be 1..16");
  F.A = matrix_from_json(j.at("A"), F.r, "A");
  F.B = matrix_from_json(j.at("B"), F.r, "B");
  F.C = matrix_from_json(j.at("C"), F.r, "C");
  try {
    validate_endo_form(F);
  } catch (const std::invalid_argument& e) {
    throw MavError(ErrorCode::ConfigParseError, e.what());
  }
  return F;
}

json verdict_to_json(const PositivityVerdict& v, bool with_inconclusive) {
  json j;
  j["positive"] = v.positive;
  j["margin"] = v.margin;
  json w = json::array();
  for (const cplx& c : v.witness) w.push_back({c.real(), c.imag()});
  j["witness"] = w;
  if (with_inconclusive) j["inconclusive"] = v.inconclusive;
  return j;
}

} // namespace mav
