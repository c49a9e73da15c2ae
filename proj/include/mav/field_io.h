#pragma once
#include <string>

#include <nlohmann/json.hpp>

#include "mav/positivity.h"
#include "mav/solver.h"

namespace mav {

using json = nlohmann::ordered_json;

// CSV with header x,y,value, row-major (x fastest), 17 significant digits
void write_field_csv(const std::string& path, const TorusGrid& g, const std::vector<double>& v);

// raw little-endian float64, row-major
void write_psi_binary(const std::string& path, const ScalarField& f);
ScalarField read_psi_binary(const std::string& path, const TorusGrid& g);

VortexConfig config_from_json(const json& j);
json config_to_json(const VortexConfig& cfg);
VortexConfig load_config(const std::string& path);

json monitors_to_json(const Monitors& m);
json report_to_json(const VortexConfig& cfg, const SolutionReport& rep);

// solution directory: report.json + psi.f64
void write_solution_dir(const std::string& dir, const VortexConfig& cfg, const SolutionReport& rep);

struct LoadedSolution {
  VortexConfig cfg;
  ScalarField psi;
  json report;
};
LoadedSolution load_solution_dir(const std::string& dir);

EndoForm11 endo_form_from_json(const json& j);
json verdict_to_json(const PositivityVerdict& v, bool with_inconclusive = false);

json read_json_file(const std::string& path); // ConfigParseError on bad JSON
void write_json_file(const std::string& path, const json& j);

} // namespace mav
