// Copyright 2026 The hsfsim Authors
// SPDX-License-Identifier: Apache-2.0

#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <future>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "hsfsim/cir.hpp"
#include "hsfsim/constants.hpp"
#include "hsfsim/error.hpp"
#include "hsfsim/scenario.hpp"
#include "hsfsim/scene_io.hpp"

namespace hsfsim::cli {

namespace {

constexpr const char* kBuiltinScene = "builtin:paper";

std::string fmt(const char* spec, double v) {
  if (std::isinf(v)) return v < 0 ? "-inf" : "inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::string pad(std::string s, std::size_t w) {
  if (s.size() < w) s.insert(0, w - s.size(), ' ');
  return s;
}

std::string join(const std::vector<std::string>& v, const char* sep) {
  std::string out;
  for (std::size_t k = 0; k < v.size(); ++k) out += (k ? sep : "") + v[k];
  return out;
}

std::string vec_str(const Vec3& p) {
  return "(" + fmt("%g", p.x) + ", " + fmt("%g", p.y) + ", " + fmt("%g", p.z) + ")";
}

CoeffTable tables() {
  if (const char* dir = std::getenv("HSF_SIM_DATA_DIR"); dir && *dir) return load_coeff_tables(dir);
  return CoeffTable::builtin();
}

Scene scene_from(const std::string& spec) {
  if (spec == kBuiltinScene) return build_paper_scene();
  return load_scene(spec);
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw SceneError(SceneError::Kind::Io, path, "cannot write output file");
  f << body;
}

std::optional<RoundingPolicy> parse_policy(const std::string& s) {
  if (s == "floor") return RoundingPolicy::Floor;
  if (s == "round") return RoundingPolicy::Round;
  if (s == "ceil") return RoundingPolicy::Ceil;
  return std::nullopt;
}

// ---- design ---------------------------------------------------------------

struct DesignArgs {
  double theta_i = 0.0;
  double theta_r = 0.0;
  int order = 1;
  double lambda_mm = wavelength(60e9) * 1e3;
  double dx_mm = 1.0;
  std::string policy = "round";
};

int cmd_design(const DesignArgs& a, std::ostream& out) {
  const auto policy = parse_policy(a.policy);
  const auto d = design_supercell(deg2rad(a.theta_i), deg2rad(a.theta_r), a.order, a.lambda_mm * 1e-3,
                                  a.dx_mm * 1e-3, *policy);
  out << "N_m               " << d.cells << "\n"
      << "order             " << d.order << "\n"
      << "wavelength        " << fmt("%.5f", d.wavelength * 1e3) << " mm\n"
      << "pitch             " << fmt("%.5f", d.pitch * 1e3) << " mm\n"
      << "policy            " << a.policy << "\n"
      << "theta_i           " << fmt("%.3f", a.theta_i) << " deg\n"
      << "theta_r target    " << fmt("%.3f", a.theta_r) << " deg\n"
      << "theta_r achieved  " << fmt("%.3f", rad2deg(d.theta_r_achieved)) << " deg (error "
      << fmt("%+.3f", rad2deg(d.theta_r_achieved) - a.theta_r) << " deg)\n"
      << "phase slope       " << fmt("%.6f", d.phase_slope * 1e-3) << " rad/mm\n"
      << "phase profile\n"
      << "   k     x_mm  phase_rad\n";
  for (std::size_t k = 0; k < d.phase_profile.size(); ++k) {
    const auto& s = d.phase_profile[k];
    out << pad(std::to_string(k), 4) << pad(fmt("%.3f", s.x * 1e3), 9) << pad(fmt("%.6f", s.phase), 11) << "\n";
  }
  return kOk;
}

// ---- simulate / compare shared options ------------------------------------

struct LinkArgs {
  std::string scene = kBuiltinScene;
  double tolerance_deg = 2.0;
  std::string policy = "round";
  int order = 4;
  bool ideal = false;
  bool perfect_absorber = false;
  bool no_collimate = false;
  bool spreading_after_collimation = false;
  std::string csv_out;
};

CirOptions cir_options(const LinkArgs& a) {
  CirOptions o;
  o.beam_tolerance = deg2rad(a.tolerance_deg);
  o.rounding = *parse_policy(a.policy);
  o.budget.max_order = a.order;
  o.hsf.ideal = a.ideal;
  o.hsf.perfect_absorber = a.perfect_absorber;
  o.hsf.spreading_after_collimation = a.spreading_after_collimation;
  return o;
}

void validate_link_args(const LinkArgs& a) {
  if (!parse_policy(a.policy)) throw DomainError("policy must be floor, round or ceil");
  if (!(a.tolerance_deg > 0.0 && a.tolerance_deg < 90.0)) throw DomainError("tolerance must be in (0, 90) deg");
  if (a.order < 0) throw DomainError("reflection order must be non-negative");
}

std::string config_echo(const LinkArgs& a) {
  return "hsfsim " HSFSIM_VERSION "  scene=" + a.scene + "  tolerance=" + fmt("%g", a.tolerance_deg) +
         "deg  policy=" + a.policy + "  order=" + std::to_string(a.order) +
         "  collimate=" + (a.no_collimate ? "off" : "on") + "  ideal_hsf=" + (a.ideal ? "on" : "off") +
         "  aggregation=noncoherent";
}

// ---- simulate --------------------------------------------------------------

struct SimulateArgs {
  LinkArgs link;
  std::size_t rx_index = 0;
  std::string mode = "hsf";
  std::vector<std::string> chain;
  bool reference_chain = false;
};

int cmd_simulate(const SimulateArgs& a, std::ostream& out) {
  validate_link_args(a.link);
  if (a.mode != "hsf" && a.mode != "plain") throw DomainError("mode must be hsf or plain");
  Scene scene = scene_from(a.link.scene);
  if (a.rx_index >= scene.rx.size()) throw DomainError("rx index out of range");
  const Vec3 rx = scene.rx[a.rx_index];

  std::vector<std::string> chain = a.chain;
  if (a.reference_chain) {
    if (!chain.empty()) throw DomainError("--chain and --paper-chain are exclusive");
    const auto& links = reference_links();
    const auto it = std::find_if(links.begin(), links.end(), [&](const auto& l) { return l.rx_index == a.rx_index; });
    if (it == links.end()) throw DomainError("no reference chain for this receiver");
    chain = it->chain;
  }
  if (!chain.empty()) configure_chain(scene, rx, chain, !a.link.no_collimate);

  CirOptions opt = cir_options(a.link);
  opt.mode = a.mode == "plain" ? CirMode::Plain : CirMode::Hsf;
  const auto cr = assemble_cir(scene, scene.tx, rx, tables(), opt);

  out << "# " << config_echo(a.link) << "\n";
  out << "mode " << a.mode << "  rx " << a.rx_index << " " << vec_str(rx) << "  tx " << vec_str(scene.tx)
      << "  chain " << (chain.empty() ? "-" : join(chain, " -> ")) << "\n";
  out << "   #  kind             delay_ns    gain_db   el_deg   az_deg  via\n";
  for (std::size_t k = 0; k < cr.components.size(); ++k) {
    const auto& c = cr.components[k];
    std::string kind(to_string(c.kind));
    kind.resize(15, ' ');
    out << pad(std::to_string(k), 4) << "  " << kind << pad(fmt("%.4f", c.delay * 1e9), 10)
        << pad(fmt("%.3f", 20.0 * std::log10(std::abs(c.gain))), 11) << pad(fmt("%.2f", rad2deg(c.aoa_elevation)), 9)
        << pad(fmt("%.2f", rad2deg(c.aoa_azimuth)), 9) << "  " << (c.via.empty() ? "-" : join(c.via, ";")) << "\n";
  }
  out << "components " << cr.components.size() << "\n";
  out << "received power (noncoherent) " << fmt("%.3f", received_power(cr, scene.tx_power_dbmw, Aggregation::Noncoherent))
      << " dBmW\n";
  out << "received power (coherent)    " << fmt("%.3f", received_power(cr, scene.tx_power_dbmw, Aggregation::Coherent))
      << " dBmW\n";
  if (!a.link.csv_out.empty()) write_file(a.link.csv_out, cir_csv(cr));
  return kOk;
}

// ---- compare ---------------------------------------------------------------

struct CompareArgs {
  LinkArgs link;
  std::string chains = "select";
};

struct CompareRow {
  std::size_t rx_index = 0;
  std::vector<std::string> chain;
  double plain = 0.0;
  double hsf = 0.0;
};

int cmd_compare(const CompareArgs& a, std::ostream& out) {
  validate_link_args(a.link);
  if (a.chains != "select" && a.chains != "paper") throw DomainError("--chains must be select or paper");
  const Scene scene = scene_from(a.link.scene);
  if (scene.rx.empty()) throw DomainError("scene has no receivers");
  const CoeffTable table = tables();
  const CirOptions opt = cir_options(a.link);
  const bool collimate = !a.link.no_collimate;

  std::map<std::size_t, std::vector<std::string>> fixed;
  if (a.chains == "paper") {
    for (const auto& l : reference_links()) {
      if (l.rx_index < scene.rx.size()) fixed[l.rx_index] = l.chain;
    }
  }

  auto evaluate = [&](std::size_t r) {
    CompareRow row;
    row.rx_index = r;
    const Vec3 rx = scene.rx[r];
    Scene configured = scene;
    if (a.chains == "paper") {
      const auto it = fixed.find(r);
      if (it == fixed.end()) throw DomainError("no reference chain for receiver " + std::to_string(r));
      row.chain = it->second;
      configure_chain(configured, rx, row.chain, collimate);
    } else {
      SelectOptions so;
      so.cir = opt;
      so.collimate = collimate;
      const auto pick = select_tiles(scene, r, table, so);
      row.chain = pick.chain;
      configured = apply_assignment(scene, pick);
    }
    row.hsf = received_power(assemble_cir(configured, configured.tx, rx, table, opt), scene.tx_power_dbmw,
                             Aggregation::Noncoherent);
    row.plain = plain_received_power(scene, scene.tx, rx, scene.tx_power_dbmw, scene.frequency, opt.budget);
    return row;
  };

  // Receivers are independent; results are gathered back in rx order.
  std::vector<std::future<CompareRow>> jobs;
  for (std::size_t r = 0; r < scene.rx.size(); ++r) jobs.push_back(std::async(std::launch::async, evaluate, r));
  std::vector<CompareRow> rows;
  for (auto& j : jobs) rows.push_back(j.get());

  out << "# " << config_echo(a.link) << "  chains=" << a.chains << "\n";
  out << "  rx  position               chain                          plain_dBmW  hsf_dBmW   gain_%  gain_%_lin\n";
  std::ostringstream csv;
  csv << "rx_index,rx_x,rx_y,rx_z,chain,plain_dbmw,hsf_dbmw,gain_pct,gain_pct_linear\n";
  for (const auto& row : rows) {
    const Vec3& p = scene.rx[row.rx_index];
    const bool finite = std::isfinite(row.plain) && std::isfinite(row.hsf) && row.plain != 0.0;
    const double g = finite ? gain_percent(row.hsf, row.plain) : std::nan("");
    const double gl = finite ? gain_percent_linear(row.hsf, row.plain) : std::nan("");
    std::string pos = vec_str(p);
    pos.resize(22, ' ');
    std::string ch = join(row.chain, " -> ");
    ch.resize(std::max<std::size_t>(ch.size(), 30), ' ');
    out << pad(std::to_string(row.rx_index), 4) << "  " << pos << " " << ch << pad(fmt("%.3f", row.plain), 11)
        << pad(fmt("%.3f", row.hsf), 10) << pad(fmt("%.2f", g), 9) << pad(fmt("%.2f", gl), 12) << "\n";
    csv << row.rx_index << ',' << fmt("%.4f", p.x) << ',' << fmt("%.4f", p.y) << ',' << fmt("%.4f", p.z) << ','
        << join(row.chain, ";") << ',' << fmt("%.6f", row.plain) << ',' << fmt("%.6f", row.hsf) << ','
        << fmt("%.4f", g) << ',' << fmt("%.4f", gl) << '\n';
  }
  if (!a.link.csv_out.empty()) write_file(a.link.csv_out, csv.str());
  return kOk;
}

// ---- tables ----------------------------------------------------------------

int cmd_tables(int which, const std::string& csv_out, std::ostream& out) {
  const CoeffTable& t = CoeffTable::builtin();
  if (!csv_out.empty()) {
    if (which == 3) throw DomainError("CSV export covers tables 1 and 2");
    write_file(csv_out, which == 1 ? absorption_csv(t) : reflection_csv(t));
  }
  if (which == 1) {
    out << "theta_i_deg  alpha_abs_dB\n";
    for (const auto& r : t.absorption_rows()) {
      out << pad(fmt("%g", r.theta_i_deg), 11) << pad(fmt("%g", r.alpha_db), 14) << "\n";
    }
    return kOk;
  }
  if (which == 2) {
    const double lambda = wavelength(60e9);
    const double dx = 1e-3;
    out << "# lambda = " << fmt("%.5f", lambda * 1e3) << " mm, d_x = 1 mm, m = 1, policy = round\n";
    out << "theta_i  theta_r  N_m  N_m_calc  dN  alpha_dB  pct   pct_calc  achieved_deg  d_deg\n";
    for (const auto& r : t.reflection_rows()) {
      const auto d = design_supercell(deg2rad(r.theta_i_deg), deg2rad(r.theta_r_deg), 1, lambda, dx,
                                      RoundingPolicy::Round);
      std::string ach = "evanescent";
      std::string dd = "-";
      try {
        const double th = rad2deg(achieved_angle(r.cells, deg2rad(r.theta_i_deg), 1, lambda, dx));
        ach = fmt("%.3f", th);
        dd = fmt("%+.3f", th - r.theta_r_deg);
      } catch (const SupercellError&) {
      }
      out << pad(fmt("%g", r.theta_i_deg), 7) << pad(fmt("%g", r.theta_r_deg), 9) << pad(std::to_string(r.cells), 5)
          << pad(std::to_string(d.cells), 10) << pad((d.cells >= r.cells ? "+" : "") + std::to_string(d.cells - r.cells), 4)
          << pad(fmt("%.3f", r.alpha_db), 10) << pad(fmt("%g", r.reflected_power_pct), 6)
          << pad(fmt("%.2f", 100.0 * std::pow(10.0, r.alpha_db / 10.0)), 10) << pad(ach, 14) << pad(dd, 8) << "\n";
    }
    return kOk;
  }
  const Scene scene = build_paper_scene();
  out << "rx  position            tiles                      plain_dBmW  hsf_dBmW  gain_%  gain_%_calc  delta\n";
  for (const auto& l : reference_links()) {
    const double g = gain_percent(l.hsf_dbmw, l.plain_dbmw);
    std::string pos = vec_str(scene.rx[l.rx_index]);
    pos.resize(19, ' ');
    std::string ch = join(l.chain, " -> ");
    ch.resize(26, ' ');
    out << pad(std::to_string(l.rx_index), 2) << "  " << pos << " " << ch << pad(fmt("%.2f", l.plain_dbmw), 11)
        << pad(fmt("%.3f", l.hsf_dbmw), 10) << pad(fmt("%g", l.printed_gain_pct), 8) << pad(fmt("%.2f", g), 13)
        << pad(fmt("%+.2f", g - l.printed_gain_pct), 7) << "\n";
  }
  return kOk;
}

// ---- dispatch --------------------------------------------------------------

void add_link_options(CLI::App* cmd, LinkArgs& a) {
  cmd->add_option("--scene", a.scene, "scene JSON file or builtin:paper")->capture_default_str();
  cmd->add_option("--tolerance-deg", a.tolerance_deg, "beam acceptance half-angle")->capture_default_str();
  cmd->add_option("--policy", a.policy, "supercell rounding: floor|round|ceil")->capture_default_str();
  cmd->add_option("--order", a.order, "max reflection order of the plain baseline")->capture_default_str();
  cmd->add_flag("--ideal-hsf", a.ideal, "force every HSF coefficient to 0 dB");
  cmd->add_flag("--perfect-absorber", a.perfect_absorber, "drop leakage off absorbing tiles");
  cmd->add_flag("--no-collimate", a.no_collimate, "spread over the whole steered path");
  cmd->add_flag("--spreading-after-collimation", a.spreading_after_collimation,
                "spread over the last hop as well when collimating");
  cmd->add_option("--csv-out", a.csv_out, "write a CSV twin of the result");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Indoor 60 GHz channel simulator with programmable metasurface tiles", "hsfsim"};
  app.set_version_flag("--version", std::string("hsfsim ") + HSFSIM_VERSION);
  app.require_subcommand(1);

  DesignArgs design;
  auto* c_design = app.add_subcommand("design", "size a supercell for an anomalous reflection");
  c_design->add_option("--theta-i", design.theta_i, "incidence angle, deg")->required();
  c_design->add_option("--theta-r", design.theta_r, "reflection angle, deg")->required();
  c_design->add_option("--order", design.order, "diffraction order")->capture_default_str();
  c_design->add_option("--lambda-mm", design.lambda_mm, "wavelength, mm")->capture_default_str();
  c_design->add_option("--dx-mm", design.dx_mm, "unit-cell pitch, mm")->capture_default_str();
  c_design->add_option("--policy", design.policy, "floor|round|ceil")
      ->check(CLI::IsMember({"floor", "round", "ceil"}))
      ->capture_default_str();

  SimulateArgs sim;
  auto* c_sim = app.add_subcommand("simulate", "channel response of one link");
  add_link_options(c_sim, sim.link);
  c_sim->add_option("--rx-index", sim.rx_index, "receiver index")->capture_default_str();
  c_sim->add_option("--mode", sim.mode, "hsf|plain")->check(CLI::IsMember({"hsf", "plain"}))->capture_default_str();
  c_sim->add_option("--chain", sim.chain, "tile ids to configure as a relay chain, tx side first")->delimiter(',');
  c_sim->add_flag("--paper-chain", sim.reference_chain, "use the reference relay chain of this receiver");

  CompareArgs cmp;
  auto* c_cmp = app.add_subcommand("compare", "plain vs. HSF received power for every receiver");
  add_link_options(c_cmp, cmp.link);
  c_cmp->add_option("--chains", cmp.chains, "select|paper")
      ->check(CLI::IsMember({"select", "paper"}))
      ->capture_default_str();

  int which = 2;
  std::string tables_csv;
  auto* c_tab = app.add_subcommand("tables", "stored coefficient and comparison tables with recomputed columns");
  c_tab->add_option("--which", which, "1, 2 or 3")->check(CLI::Range(1, 3))->capture_default_str();
  c_tab->add_option("--csv-out", tables_csv, "write table 1 or 2 in the coefficient asset format");

  std::string export_out;
  auto* c_exp = app.add_subcommand("export-scene", "write the built-in scene as JSON");
  c_exp->add_option("--out", export_out, "output file (default stdout)");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUserError;
  }

  try {
    if (*c_design) return cmd_design(design, out);
    if (*c_sim) return cmd_simulate(sim, out);
    if (*c_cmp) return cmd_compare(cmp, out);
    if (*c_tab) return cmd_tables(which, tables_csv, out);
    if (*c_exp) {
      const std::string body = serialize_scene(build_paper_scene());
      if (export_out.empty()) {
        out << body;
      } else {
        write_file(export_out, body);
      }
      return kOk;
    }
  } catch (const InvariantError& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternalError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUserError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternalError;
  }
  return kUserError;
}

}  // namespace hsfsim::cli
