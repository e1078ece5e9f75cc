#include "nullcong_cli/run.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <set>
#include <sstream>

#include "json.hpp"
#include "nullcong/cr_graph.hpp"
#include "nullcong/grid.hpp"
#include "nullcong/maxwell.hpp"
#include "nullcong_cli/suites.hpp"

namespace nullcong::cli {

using json = nlohmann::ordered_json;

namespace {

const Pair<cplx> kDefaultLambda{cplx(0.5, 0.2), cplx(-0.3, 1.0)};
const Pair<cplx> kDefaultMu{cplx(1.0, 0.0), cplx(0.2, -0.4)};

Pair<cplx> pair_param(const RunConfig& cfg, const std::string& name, const Pair<cplx>& fallback) {
  const auto it = cfg.params.find(name);
  if (it == cfg.params.end()) return fallback;
  const auto v = parse_complex_list(it->second, 2);
  return {v[0], v[1]};
}

void allow_params(const RunConfig& cfg, const std::set<std::string>& allowed) {
  for (const auto& [k, v] : cfg.params)
    if (!allowed.count(k)) throw ConfigError("family " + cfg.family + " has no parameter '" + k + "'");
}

CongruenceField kerr_from(const RunConfig& cfg) {
  return linear_kerr(pair_param(cfg, "lambda", kDefaultLambda), pair_param(cfg, "mu", kDefaultMu));
}

CongruenceField constant_from(const RunConfig& cfg) {
  return constant_congruence(pair_param(cfg, "o", {1.0, 0.0}));
}

CongruenceField affine_from(const RunConfig& cfg) {
  const Pair<cplx> o0 = pair_param(cfg, "o0", {1.0, 0.5});
  std::array<Pair<cplx>, 4> m = {{{0.3, 0.0}, {0.0, 0.5}, {cplx(0, 0.2), 0.1}, {0.0, -0.4}}};
  const auto it = cfg.params.find("m");
  if (it != cfg.params.end()) {
    const auto v = parse_complex_list(it->second, 8);
    for (std::size_t a = 0; a < 4; ++a) m[a] = {v[2 * a], v[2 * a + 1]};
  }
  return affine_congruence(o0, m);
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> csv_split(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

json header(const RunConfig& cfg, const GridSpec* grid, const CongruenceField* field) {
  json j;
  j["schema"] = kReportSchema;
  j["subcommand"] = cfg.subcommand;
  j["seed"] = cfg.seed;
  j["conventions_version"] = kConventionsVersion;
  if (field) {
    j["family"] = cfg.family;
    json p = json::object();
    for (const auto& [k, v] : cfg.params) p[k] = v;
    j["params"] = p;
    j["differentiation"] = to_string(field->mode());
    if (field->mode() == Differentiation::CentralFD) j["step"] = field->step();
  }
  if (grid) {
    j["grid"] = format_grid(*grid);
    j["points"] = grid->size();
  }
  j["tol"] = cfg.tol;
  return j;
}

class Outputs {
 public:
  Outputs(const RunConfig& cfg, std::ostream& out) : cfg_(cfg), out_(out) {
    if (!cfg.out.empty()) {
      std::error_code ec;
      std::filesystem::create_directories(cfg.out, ec);
      if (ec) throw ConfigError("cannot create output directory '" + cfg.out + "': " + ec.message());
    }
  }
  bool has_dir() const { return !cfg_.out.empty(); }
  std::string path(const std::string& ext) const {
    return (std::filesystem::path(cfg_.out) / (cfg_.subcommand + ext)).string();
  }
  void json_report(const json& j) const {
    const std::string text = j.dump(2) + "\n";
    if (!has_dir()) {
      out_ << text;
      return;
    }
    write(path(".json"), text);
  }
  void csv(const std::string& text) const {
    if (has_dir()) write(path(".csv"), text);
  }
  static void write(const std::string& p, const std::string& text) {
    std::ofstream f(p, std::ios::binary);
    if (!f) throw ConfigError("cannot write '" + p + "'");
    f << text;
  }

 private:
  const RunConfig& cfg_;
  std::ostream& out_;
};

int finish(const Outputs& o, json j, bool pass) {
  j["status"] = pass ? "pass" : "fail";
  o.json_report(j);
  return pass ? kPass : kToleranceFailure;
}

int run_selftest(const RunConfig& cfg, const Outputs& o) {
  json j = header(cfg, nullptr, nullptr);
  j["samples"] = cfg.samples;
  bool pass = true;
  j["suites"] = json::array();
  for (const Suite& s : {spinor_identities(cfg.seed, cfg.samples), hodge_identities(cfg.seed, cfg.samples),
                         twistor_round_trip(cfg.seed, cfg.samples), frame_diagonalization(cfg.seed, cfg.samples)}) {
    pass = pass && s.pass();
    j["suites"].push_back(to_json(s));
  }
  return finish(o, j, pass);
}

int run_analyze(const RunConfig& cfg, const Outputs& o) {
  const CongruenceField field = make_congruence(cfg);
  const GridSpec grid = cfg.grid_set ? cfg.grid : default_grid(cfg);
  const std::vector<Event> pts = grid.events();
  struct Row {
    ShearReport r;
    std::string status = "ok";
  };
  std::vector<Row> rows(pts.size());
  for_each_partition(pts.size(), cfg.workers, [&](std::size_t, std::size_t begin, std::size_t end) {
    const CongruenceField local = field.fork();
    for (std::size_t n = begin; n < end; ++n) {
      try {
        rows[n].r = shear(local, pts[n]);
      } catch (const std::exception& e) {
        rows[n].status = e.what();
      }
    }
  });

  std::string csv = "index,t,x,y,z,sigma_norm_scaled,geodesy_residual,twist,kappa_re,kappa_im,status\n";
  double max_sigma = 0.0, max_geo = 0.0, min_tw = std::numeric_limits<double>::infinity(), max_tw = 0.0;
  std::size_t failures = 0;
  std::string first_failure;
  for (std::size_t n = 0; n < pts.size(); ++n) {
    const Row& row = rows[n];
    const Event& x = pts[n];
    csv += std::to_string(n);
    for (double v : x.x) csv += "," + fmt(v);
    if (row.status == "ok") {
      csv += "," + fmt(row.r.sigma_norm_scaled) + "," + fmt(row.r.geodesy_residual) + "," + fmt(row.r.twist_norm) +
             "," + fmt(row.r.geodesy_kappa.real()) + "," + fmt(row.r.geodesy_kappa.imag()) + ",ok\n";
      max_sigma = std::max(max_sigma, row.r.sigma_norm_scaled);
      max_geo = std::max(max_geo, row.r.geodesy_residual);
      min_tw = std::min(min_tw, row.r.twist_norm);
      max_tw = std::max(max_tw, row.r.twist_norm);
    } else {
      csv += ",nan,nan,nan,nan,nan," + csv_quote(row.status) + "\n";
      if (failures++ == 0) first_failure = row.status;
    }
  }
  o.csv(csv);
  json j = header(cfg, &grid, &field);
  j["failures"] = failures;
  if (failures) j["first_failure"] = first_failure;
  j["max_sigma_norm_scaled"] = max_sigma;
  j["max_geodesy_residual"] = max_geo;
  j["min_twist"] = failures == pts.size() ? 0.0 : min_tw;
  j["max_twist"] = max_tw;
  if (o.has_dir()) j["csv"] = cfg.subcommand + ".csv";
  return finish(o, j, failures == 0 && max_sigma <= cfg.tol);
}

NullFieldSpec field_spec(const RunConfig& cfg, const GridSpec& grid) {
  try {
    return NullFieldSpec(make_congruence(cfg), profile(cfg.profile), grid.center);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

const char* const kComponentNames[6] = {"01", "02", "03", "12", "13", "23"};

int run_synthesize(const RunConfig& cfg, const Outputs& o, std::ostream& out) {
  const GridSpec grid = cfg.grid_set ? cfg.grid : default_grid(cfg);
  const NullFieldSpec spec = field_spec(cfg, grid);
  const std::vector<Event> pts = grid.events();
  std::vector<TwoForm> g(pts.size());
  std::vector<std::string> status(pts.size(), "ok");
  for_each_partition(pts.size(), cfg.workers, [&](std::size_t, std::size_t begin, std::size_t end) {
    const NullFieldSpec local = spec.fork();
    for (std::size_t n = begin; n < end; ++n) {
      try {
        g[n] = assemble_field(local, pts[n]);
      } catch (const std::exception& e) {
        status[n] = e.what();
      }
    }
  });
  std::string csv = "t,x,y,z";
  for (const char* c : kComponentNames) csv += std::string(",G") + c + "_re,G" + c + "_im";
  csv += ",status\n";
  std::size_t failures = 0;
  double dual = 0.0, null = 0.0;
  for (std::size_t n = 0; n < pts.size(); ++n) {
    for (int a = 0; a < 4; ++a) csv += (a ? "," : "") + fmt(pts[n].x[a]);
    if (status[n] == "ok") {
      for (const cplx& c : g[n].c) csv += "," + fmt(c.real()) + "," + fmt(c.imag());
      dual = std::max(dual, self_duality_defect(g[n]));
      null = std::max(null, nullity_defect(g[n]));
    } else {
      for (int k = 0; k < 12; ++k) csv += ",nan";
      ++failures;
    }
    csv += "," + csv_quote(status[n]) + "\n";
  }
  if (!o.has_dir()) {
    out << csv;
    return failures == 0 ? kPass : kToleranceFailure;
  }
  o.csv(csv);
  json j = header(cfg, &grid, &spec.congruence);
  j["profile"] = spec.profile.name;
  j["experimental"] = spec.experimental();
  j["failures"] = failures;
  j["self_duality_defect"] = dual;
  j["nullity_defect"] = null;
  j["csv"] = cfg.subcommand + ".csv";
  return finish(o, j, failures == 0);
}

json field_report_json(const FieldReport& r) {
  json j;
  j["maxwell_residual"] = r.maxwell_residual;
  j["spinor_residual"] = r.spinor_residual;
  j["route_agreement"] = r.route_agreement;
  j["self_duality_defect"] = r.self_duality_defect;
  j["nullity_defect"] = r.nullity_defect;
  j["energy_rank1_defect"] = r.energy_rank1_defect;
  j["energy_trace"] = r.energy_trace;
  j["samples"] = r.samples;
  j["failures"] = r.failures;
  if (r.failures) j["first_failure"] = r.first_failure;
  return j;
}

bool report_passes(const FieldReport& r, double tol) {
  return r.failures == 0 && r.maxwell_residual <= tol && r.route_agreement <= 1e-10 &&
         r.self_duality_defect <= 1e-12 && r.nullity_defect <= 1e-12 && r.energy_rank1_defect <= 1e-10 &&
         r.energy_trace <= 1e-12;
}

// Field samples on a grid, differentiated by central differences between
// grid neighbours.
FieldReport verify_samples(const RunConfig& cfg, const GridSpec& grid) {
  for (int a = 0; a < 4; ++a)
    if (grid.points[a] < 3) throw ConfigError("verifying samples needs at least 3 grid points on every axis");
  std::ifstream in(cfg.input);
  if (!in) throw ConfigError("cannot read '" + cfg.input + "'");
  std::string line;
  std::getline(in, line);
  if (csv_split(line).size() != 17 || csv_split(line)[4] != "G01_re") throw ConfigError("not a synthesize CSV");
  const std::size_t n = grid.size();
  std::vector<TwoForm> g(n);
  std::vector<bool> ok(n, false);
  std::size_t row = 0;
  auto num = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size()) throw ConfigError("bad number '" + s + "' on data row " + std::to_string(row));
    return v;
  };
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (row >= n) throw ConfigError("more rows than grid points");
    const auto f = csv_split(line);
    if (f.size() != 17) throw ConfigError("data row " + std::to_string(row) + " has " + std::to_string(f.size()) + " fields");
    const Event want = grid.point(row);
    for (int a = 0; a < 4; ++a)
      if (std::abs(num(f[a]) - want.x[a]) > 1e-12 * (1.0 + std::abs(want.x[a])))
        throw ConfigError("data row " + std::to_string(row) + " does not match the grid");
    if (f[16] == "ok") {
      for (int k = 0; k < 6; ++k) g[row].c[k] = cplx(num(f[4 + 2 * k]), num(f[5 + 2 * k]));
      ok[row] = true;
    }
    ++row;
  }
  if (row != n) throw ConfigError("expected " + std::to_string(n) + " rows, read " + std::to_string(row));

  std::array<std::size_t, 4> stride{};
  stride[3] = 1;
  for (int a = 2; a >= 0; --a) stride[a] = stride[a + 1] * static_cast<std::size_t>(grid.points[a + 1]);
  FieldReport r;
  r.samples = n;
  double dg_max = 0.0, div_max = 0.0, agree = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!ok[i]) {
      if (r.failures++ == 0) r.first_failure = "sample " + std::to_string(i) + " missing";
      continue;
    }
    r.self_duality_defect = std::max(r.self_duality_defect, self_duality_defect(g[i]));
    r.nullity_defect = std::max(r.nullity_defect, nullity_defect(g[i]));
    const EnergyTensor e = energy_tensor(f_and_star_f(g[i]).f);
    r.energy_rank1_defect = std::max(r.energy_rank1_defect, e.rank1_defect);
    r.energy_trace = std::max(r.energy_trace, std::abs(e.trace));
    scale = std::max(scale, max_abs(g[i]));

    FieldJet j;
    j.g = g[i];
    j.phi = decompose_two_form(g[i]).beta.c;
    bool interior = true;
    for (int a = 0; a < 4 && interior; ++a) {
      const std::size_t idx = (i / stride[a]) % static_cast<std::size_t>(grid.points[a]);
      if (idx == 0 || idx + 1 == static_cast<std::size_t>(grid.points[a])) {
        interior = false;
        break;
      }
      const std::size_t p = i + stride[a], m = i - stride[a];
      if (!ok[p] || !ok[m]) {
        interior = false;
        break;
      }
      const double h2 = 4.0 * grid.half_width[a] / (grid.points[a] - 1);
      j.dg[a] = (1.0 / h2) * (g[p] - g[m]);
      const auto bp = decompose_two_form(g[p]).beta.c, bm = decompose_two_form(g[m]).beta.c;
      for (int k = 0; k < 3; ++k) j.dphi[a][k] = (bp[k] - bm[k]) / h2;
    }
    if (!interior) continue;
    const auto dg = exterior_derivative(j);
    const CVec4 div = spinor_divergence(j);
    const auto pred = divergence_three_form(div);
    for (int k = 0; k < 4; ++k) {
      dg_max = std::max(dg_max, std::abs(dg[k]));
      div_max = std::max(div_max, std::abs(div[k]));
      agree = std::max(agree, std::abs(dg[k] - pred[k]));
    }
  }
  const double unit = 1.0 / (scale > 0.0 ? scale : 1.0);
  r.maxwell_residual = dg_max * unit;
  r.spinor_residual = div_max * unit;
  r.route_agreement = agree * unit;
  r.mode = Differentiation::CentralFD;
  return r;
}

int run_verify(const RunConfig& cfg, const Outputs& o) {
  const GridSpec grid = cfg.grid_set ? cfg.grid : default_grid(cfg);
  if (!cfg.input.empty()) {
    const FieldReport r = verify_samples(cfg, grid);
    json j = header(cfg, &grid, nullptr);
    j["source"] = "samples";
    j["differentiation"] = "grid central differences";
    j["report"] = field_report_json(r);
    return finish(o, j, report_passes(r, cfg.tol));
  }
  const NullFieldSpec spec = field_spec(cfg, grid);
  const FieldReport r = maxwell_residual(spec, grid.events(), cfg.workers);
  json j = header(cfg, &grid, &spec.congruence);
  j["source"] = "spec";
  j["profile"] = spec.profile.name;
  j["experimental"] = r.experimental;
  j["report"] = field_report_json(r);
  return finish(o, j, report_passes(r, cfg.tol));
}

int run_slit_plane(const RunConfig& cfg, const Outputs& o) {
  const Suite s = slit_plane_suite(cfg.seed, cfg.samples);
  json j = header(cfg, nullptr, nullptr);
  j["samples"] = cfg.samples;
  json cond;
  for (const Check& c : s.checks)
    if (c.name.rfind('N', 0) == 0 && c.name.size() > 2 && c.name[2] == ' ')
      cond[c.name.substr(0, 2)] = c.pass ? "pass" : "fail";
  j["conditions"] = cond;
  j["suite"] = to_json(s);
  return finish(o, j, s.pass());
}

}  // namespace

CongruenceField make_congruence(const RunConfig& cfg) {
  const std::string& f = cfg.family;
  CongruenceField field = constant_congruence({1.0, 0.0});
  if (f == "constant") {
    allow_params(cfg, {"o"});
    field = constant_from(cfg);
  } else if (f == "linear_kerr") {
    allow_params(cfg, {"lambda", "mu"});
    field = kerr_from(cfg);
  } else if (f == "affine") {
    allow_params(cfg, {"o0", "m"});
    field = affine_from(cfg);
  } else if (f == "cr_graph") {
    allow_params(cfg, {});
    if (cfg.diff == "ad") throw ConfigError("family cr_graph has no AD path; use diff = fd");
    return cr_graph_congruence(cfg.step);
  } else if (f == "inverted_constant") {
    allow_params(cfg, {"o"});
    field = conformal_invert(constant_from(cfg));
  } else if (f == "inverted_linear_kerr") {
    allow_params(cfg, {"lambda", "mu"});
    field = conformal_invert(kerr_from(cfg));
  } else {
    throw ConfigError("unknown family '" + f + "'");
  }
  const bool ad = field.source().has_ad();
  if (cfg.diff == "ad" && !ad) throw ConfigError("family " + f + " has no AD path; use diff = fd");
  const Differentiation mode = (cfg.diff == "fd" || !ad) ? Differentiation::CentralFD : Differentiation::ForwardAD;
  return field.with(mode, cfg.step);
}

GridSpec default_grid(const RunConfig& cfg) {
  if (cfg.family == "cr_graph")
    return GridSpec::spatial(cr_graph_reference_event() + Event(0, 0.1, 0.1, 0.1), 0.05, 9);
  // clear of the null cone of the origin, where inverted families are singular
  return GridSpec::cube(Event(1.0, 0.1, 0.2, -0.1), 0.2, 5);
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    cfg.validate();
    const Outputs o(cfg, out);
    if (cfg.subcommand == "selftest") return run_selftest(cfg, o);
    if (cfg.subcommand == "analyze") return run_analyze(cfg, o);
    if (cfg.subcommand == "synthesize") return run_synthesize(cfg, o, out);
    if (cfg.subcommand == "verify") return run_verify(cfg, o);
    return run_slit_plane(cfg, o);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kToleranceFailure;
  }
}

}  // namespace nullcong::cli
