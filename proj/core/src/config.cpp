#include "loopint/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace loopint {

using nlohmann::json;

namespace {

void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& ctx) {
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key()))
      throw ConfigError("unknown config key '" + ctx + it.key() + "'");
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config root must be an object");
  reject_unknown(j, {"backend", "fluxes", "windings", "T", "mc", "cutoff", "refine", "out",
                     "verbose"},
                 "");
  RunConfig c;
  if (j.contains("backend")) {
    const json& b = j["backend"];
    reject_unknown(b, {"dim", "lattice", "spin"}, "backend.");
    c.dim = b.value("dim", 2);
    if (c.dim < 1 || c.dim > 4) throw ConfigError("backend.dim must be in 1..4");
    if (b.contains("lattice")) {
      auto rows = b["lattice"].get<std::vector<std::vector<double>>>();
      if (int(rows.size()) != c.dim) throw ConfigError("backend.lattice shape mismatch");
      c.lattice = Mat(c.dim, c.dim);
      for (int i = 0; i < c.dim; ++i) {
        if (int(rows[i].size()) != c.dim) throw ConfigError("backend.lattice shape mismatch");
        for (int k = 0; k < c.dim; ++k) c.lattice(i, k) = rows[i][k];
      }
    }
    if (b.contains("spin")) {
      auto s = b["spin"].get<std::vector<int>>();
      if (int(s.size()) != c.dim) throw ConfigError("backend.spin length mismatch");
      c.spin = IVec(c.dim);
      for (int i = 0; i < c.dim; ++i) {
        if (s[i] != 0 && s[i] != 1) throw ConfigError("backend.spin entries must be 0/1");
        c.spin[i] = s[i];
      }
    }
  }
  if (c.lattice.size() == 0) c.lattice = Mat::Identity(c.dim, c.dim);
  if (c.spin.size() == 0) c.spin = IVec::Zero(c.dim);
  if (j.contains("fluxes")) c.fluxes = j["fluxes"].get<std::vector<int>>();
  if (j.contains("windings")) c.windings = j["windings"].get<std::vector<int>>();
  if (j.contains("T")) {
    c.T = j["T"].get<std::vector<double>>();
    for (double t : c.T)
      if (!(t > 0)) throw ConfigError("T values must be positive");
  }
  if (j.contains("mc")) {
    const json& m = j["mc"];
    reject_unknown(m, {"n", "grid", "seed", "workers", "clip"}, "mc.");
    c.mc_n = m.value("n", c.mc_n);
    c.grid = m.value("grid", c.grid);
    c.seed = m.value("seed", c.seed);
    c.workers = m.value("workers", c.workers);
    c.clip = m.value("clip", c.clip);
    if (c.mc_n <= 0) throw ConfigError("mc.n must be positive");
    if (c.grid < 2) throw ConfigError("mc.grid must be at least 2");
    if (c.workers < 1) throw ConfigError("mc.workers must be at least 1");
  }
  if (j.contains("cutoff")) {
    c.cutoff = j["cutoff"].get<int>();
    if (c.cutoff < 2) throw ConfigError("cutoff must be at least 2");
  }
  if (j.contains("refine")) {
    const json& r = j["refine"];
    reject_unknown(r, {"fine", "partitions"}, "refine.");
    c.refine_fine = r.value("fine", c.refine_fine);
    if (r.contains("partitions")) c.refine_partitions = r["partitions"].get<std::vector<int>>();
  }
  if (j.contains("out")) c.out_dir = j["out"].get<std::string>();
  if (j.contains("verbose")) c.verbose = j["verbose"].get<bool>();
  return c;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config file: " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

std::string config_to_json(const RunConfig& c) {
  json j;
  j["backend"]["dim"] = c.dim;
  std::vector<std::vector<double>> rows(c.dim, std::vector<double>(c.dim));
  for (int i = 0; i < c.dim; ++i)
    for (int k = 0; k < c.dim; ++k) rows[i][k] = c.lattice(i, k);
  j["backend"]["lattice"] = rows;
  std::vector<int> spin(c.dim);
  for (int i = 0; i < c.dim; ++i) spin[i] = c.spin[i];
  j["backend"]["spin"] = spin;
  j["fluxes"] = c.fluxes;
  j["windings"] = c.windings;
  j["T"] = c.T;
  j["mc"] = {{"n", c.mc_n}, {"grid", c.grid}, {"seed", c.seed},
             {"workers", c.workers}, {"clip", c.clip}};
  j["cutoff"] = c.cutoff;
  j["refine"] = {{"fine", c.refine_fine}, {"partitions", c.refine_partitions}};
  j["out"] = c.out_dir;
  j["verbose"] = c.verbose;
  return j.dump(2);
}

}  // namespace loopint
