// Copyright 2026 The hsfsim Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include "hsfsim/constants.hpp"
#include "hsfsim/error.hpp"
#include "hsfsim/hsf.hpp"

namespace hsfsim {

namespace {

constexpr double kAngleTolDeg = 1e-9;

constexpr std::string_view kAbsorptionHeader = "theta_i_deg,alpha_abs_db";
constexpr std::string_view kReflectionHeader = "theta_i_deg,theta_r_deg,n_m,alpha_ref_db,reflected_power_pct";
constexpr std::string_view kVersionLine = "# hsfsim coefficient table v1";

// Characterized 60 GHz tile (TE, plane of incidence x0z).
const std::vector<AbsorptionRow> kAbsorption{
    {0, -42}, {10, -33}, {20, -36}, {30, -27}, {40, -29}, {50, -26}, {60, -28},
};

const std::vector<ReflectionRow> kReflection{
    {15, 40, 13, -0.521, 88.70}, {15, 50, 10, -0.244, 90.43}, {15, 60, 8, -0.437, 90.43},
    {15, 70, 7, -0.768, 83.79},  {15, 80, 6, -0.363, 91.98},  {20, 40, 16, -0.882, 81.62},
    {20, 50, 11, -0.445, 90.26}, {20, 60, 9, -0.631, 86.48},  {20, 70, 8, -0.552, 88.06},
    {20, 80, 8, -0.552, 88.06},  {25, 50, 14, -0.818, 82.83}, {25, 60, 11, -0.822, 82.76},
    {25, 70, 10, -0.737, 84.39}, {25, 80, 8, -0.897, 81.34},
};

double lerp_at(double x0, double y0, double x1, double y1, double x) {
  if (x1 == x0) return y0;
  const double w = (x - x0) / (x1 - x0);
  return y0 + w * (y1 - y0);
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, sep)) out.push_back(cell);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

std::string trim(std::string s) {
  const auto ws = " \t\r\n";
  s.erase(0, s.find_first_not_of(ws));
  const auto end = s.find_last_not_of(ws);
  s.erase(end == std::string::npos ? 0 : end + 1);
  return s;
}

double parse_number(const std::string& cell, const std::string& where) {
  const std::string t = trim(cell);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (t.empty() || used != t.size() || !std::isfinite(v)) {
    throw TableFormatError(where + ": not a number: '" + cell + "'");
  }
  return v;
}

// Data rows of a CSV with the given mandatory header; comment lines skipped.
std::vector<std::vector<double>> parse_csv(const std::string& text, std::string_view header,
                                           const std::string& name) {
  std::istringstream is(text);
  std::string line;
  bool seen_header = false;
  int lineno = 0;
  std::vector<std::vector<double>> rows;
  const std::size_t ncols = split(std::string(header), ',').size();
  while (std::getline(is, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    if (!seen_header) {
      if (t != header) {
        throw TableFormatError(name + ":" + std::to_string(lineno) + ": expected header '" +
                               std::string(header) + "'");
      }
      seen_header = true;
      continue;
    }
    const auto cells = split(t, ',');
    const std::string where = name + ":" + std::to_string(lineno);
    if (cells.size() != ncols) {
      throw TableFormatError(where + ": expected " + std::to_string(ncols) + " columns");
    }
    std::vector<double> row;
    for (const auto& c : cells) row.push_back(parse_number(c, where));
    rows.push_back(std::move(row));
  }
  if (!seen_header) throw TableFormatError(name + ": missing header row");
  return rows;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw TableFormatError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

CoeffTable::CoeffTable(std::vector<AbsorptionRow> absorption, std::vector<ReflectionRow> reflection)
    : absorption_(std::move(absorption)), reflection_(std::move(reflection)) {
  if (absorption_.empty() || reflection_.empty()) {
    throw TableFormatError("coefficient tables must not be empty");
  }
  for (std::size_t k = 0; k < absorption_.size(); ++k) {
    const auto& r = absorption_[k];
    if (r.theta_i_deg < 0.0 || r.theta_i_deg >= 90.0 || r.alpha_db > 0.0) {
      throw TableFormatError("absorption row " + std::to_string(k) + ": angle outside [0, 90) or alpha > 0 dB");
    }
    if (k > 0 && !(r.theta_i_deg > absorption_[k - 1].theta_i_deg)) {
      throw TableFormatError("absorption rows must be strictly increasing in theta_i");
    }
  }
  std::map<double, Group> groups;
  for (std::size_t k = 0; k < reflection_.size(); ++k) {
    const auto& r = reflection_[k];
    const std::string where = "reflection row " + std::to_string(k);
    if (r.theta_i_deg < 0.0 || r.theta_i_deg >= 90.0 || r.theta_r_deg < 0.0 || r.theta_r_deg >= 90.0) {
      throw TableFormatError(where + ": angle outside [0, 90)");
    }
    if (r.alpha_db > 0.0) throw TableFormatError(where + ": alpha > 0 dB");
    if (r.cells < 1) throw TableFormatError(where + ": n_m must be positive");
    if (!(r.reflected_power_pct > 0.0 && r.reflected_power_pct <= 100.0)) {
      throw TableFormatError(where + ": reflected power outside (0, 100]");
    }
    auto& g = groups[r.theta_i_deg];
    g.theta_i_deg = r.theta_i_deg;
    for (const auto& p : g.points) {
      if (p.first == r.theta_r_deg) throw TableFormatError(where + ": duplicate (theta_i, theta_r)");
    }
    g.points.emplace_back(r.theta_r_deg, r.alpha_db);
  }
  for (auto& [_, g] : groups) {
    std::sort(g.points.begin(), g.points.end());
    groups_.push_back(std::move(g));
  }
}

const CoeffTable& CoeffTable::builtin() {
  static const CoeffTable table(kAbsorption, kReflection);
  return table;
}

std::pair<double, double> CoeffTable::absorption_range() const {
  return {deg2rad(absorption_.front().theta_i_deg), deg2rad(absorption_.back().theta_i_deg)};
}

std::pair<double, double> CoeffTable::reflection_incidence_range() const {
  return {deg2rad(groups_.front().theta_i_deg), deg2rad(groups_.back().theta_i_deg)};
}

std::optional<std::pair<double, double>> CoeffTable::reflection_range(double theta_i) const {
  const double ti = rad2deg(theta_i);
  if (ti < groups_.front().theta_i_deg - kAngleTolDeg || ti > groups_.back().theta_i_deg + kAngleTolDeg) {
    return std::nullopt;
  }
  double lo = 90.0;
  double hi = 0.0;
  auto take = [&](const Group& g) {
    lo = std::min(lo, g.points.front().first);
    hi = std::max(hi, g.points.back().first);
  };
  for (std::size_t k = 0; k < groups_.size(); ++k) {
    const auto& g = groups_[k];
    if (std::abs(g.theta_i_deg - ti) <= kAngleTolDeg) {
      take(g);
      return std::pair{deg2rad(lo), deg2rad(hi)};
    }
    if (k + 1 < groups_.size() && ti > g.theta_i_deg && ti < groups_[k + 1].theta_i_deg) {
      take(g);
      take(groups_[k + 1]);
      break;
    }
  }
  return std::pair{deg2rad(lo), deg2rad(hi)};
}

std::vector<std::string> CoeffTable::audit() const {
  std::vector<std::string> notes;
  for (const auto& r : reflection_) {
    const double pct = 100.0 * std::pow(10.0, r.alpha_db / 10.0);
    if (std::abs(pct - r.reflected_power_pct) > 2.0) {
      std::ostringstream os;
      os << std::fixed << std::setprecision(2) << "row (" << r.theta_i_deg << ", " << r.theta_r_deg
         << "): " << r.alpha_db << " dB is " << pct << " % but the table lists " << r.reflected_power_pct
         << " %";
      notes.push_back(os.str());
    }
  }
  return notes;
}

double CoeffTable::absorption_db_deg(double theta_i_deg) const {
  const auto& rows = absorption_;
  if (!(theta_i_deg >= rows.front().theta_i_deg - kAngleTolDeg) ||
      !(theta_i_deg <= rows.back().theta_i_deg + kAngleTolDeg)) {
    std::ostringstream os;
    os << "incidence " << theta_i_deg << " deg outside absorption table [" << rows.front().theta_i_deg << ", "
       << rows.back().theta_i_deg << "]";
    throw TableRangeError(os.str());
  }
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (std::abs(rows[k].theta_i_deg - theta_i_deg) <= kAngleTolDeg) return rows[k].alpha_db;
    if (k + 1 < rows.size() && theta_i_deg < rows[k + 1].theta_i_deg - kAngleTolDeg) {
      return lerp_at(rows[k].theta_i_deg, rows[k].alpha_db, rows[k + 1].theta_i_deg, rows[k + 1].alpha_db,
                     theta_i_deg);
    }
  }
  return rows.back().alpha_db;
}

std::optional<double> CoeffTable::group_value(const Group& g, double theta_r_deg) {
  const auto& pts = g.points;
  if (theta_r_deg < pts.front().first - kAngleTolDeg || theta_r_deg > pts.back().first + kAngleTolDeg) {
    return std::nullopt;
  }
  for (std::size_t k = 0; k < pts.size(); ++k) {
    if (std::abs(pts[k].first - theta_r_deg) <= kAngleTolDeg) return pts[k].second;
    if (k + 1 < pts.size() && theta_r_deg < pts[k + 1].first - kAngleTolDeg) {
      return lerp_at(pts[k].first, pts[k].second, pts[k + 1].first, pts[k + 1].second, theta_r_deg);
    }
  }
  return pts.back().second;
}

double CoeffTable::reflection_db_deg(double theta_i_deg, double theta_r_deg) const {
  auto fail = [&]() -> double {
    std::ostringstream os;
    os << "(" << theta_i_deg << ", " << theta_r_deg << ") deg outside reflection table coverage";
    throw TableRangeError(os.str());
  };
  if (!(theta_i_deg >= groups_.front().theta_i_deg - kAngleTolDeg) ||
      !(theta_i_deg <= groups_.back().theta_i_deg + kAngleTolDeg)) {
    return fail();
  }
  for (std::size_t k = 0; k < groups_.size(); ++k) {
    const auto& lo = groups_[k];
    if (std::abs(lo.theta_i_deg - theta_i_deg) <= kAngleTolDeg) {
      const auto v = group_value(lo, theta_r_deg);
      return v ? *v : fail();
    }
    if (k + 1 < groups_.size() && theta_i_deg < groups_[k + 1].theta_i_deg - kAngleTolDeg) {
      const auto& hi = groups_[k + 1];
      const auto vlo = group_value(lo, theta_r_deg);
      const auto vhi = group_value(hi, theta_r_deg);
      if (vlo && vhi) return lerp_at(lo.theta_i_deg, *vlo, hi.theta_i_deg, *vhi, theta_i_deg);
      // Only one neighbouring incidence row covers theta_r: nearest-row fallback.
      if (vlo) return *vlo;
      if (vhi) return *vhi;
      return fail();
    }
  }
  return fail();
}

double absorption_coeff(const CoeffTable& table, double theta_i) {
  return table.absorption_db_deg(rad2deg(theta_i));
}

double reflection_coeff(const CoeffTable& table, double theta_i, double theta_r) {
  return table.reflection_db_deg(rad2deg(theta_i), rad2deg(theta_r));
}

double lookup_reflection_db(const CoeffTable& table, double theta_in, double theta_out, CoeffLookup policy) {
  if (policy == CoeffLookup::Strict) {
    return reflection_coeff(table, theta_in, theta_out);
  }
  const auto [ilo, ihi] = table.reflection_incidence_range();
  const double ti = std::clamp(std::min(theta_in, theta_out), ilo, ihi);
  const auto range = table.reflection_range(ti);
  if (!range) throw InvariantError("clamped incidence angle outside table");
  const double tr = std::clamp(std::max(theta_in, theta_out), range->first, range->second);
  return reflection_coeff(table, ti, tr);
}

double lookup_absorption_db(const CoeffTable& table, double theta_i, CoeffLookup policy) {
  if (policy == CoeffLookup::Strict) {
    return absorption_coeff(table, theta_i);
  }
  const auto [lo, hi] = table.absorption_range();
  return absorption_coeff(table, std::clamp(theta_i, lo, hi));
}

CoeffTable parse_coeff_tables(const std::string& absorption_text, const std::string& reflection_text) {
  std::vector<AbsorptionRow> abs;
  for (const auto& r : parse_csv(absorption_text, kAbsorptionHeader, "absorption")) {
    abs.push_back({r[0], r[1]});
  }
  std::vector<ReflectionRow> ref;
  for (const auto& r : parse_csv(reflection_text, kReflectionHeader, "reflection")) {
    if (r[2] != std::floor(r[2])) throw TableFormatError("reflection: n_m must be an integer");
    ref.push_back({r[0], r[1], static_cast<int>(r[2]), r[3], r[4]});
  }
  return CoeffTable(std::move(abs), std::move(ref));
}

CoeffTable load_coeff_tables(const std::filesystem::path& dir) {
  return parse_coeff_tables(read_file(dir / "hsf_absorption.csv"), read_file(dir / "hsf_reflection.csv"));
}

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

std::string absorption_csv(const CoeffTable& table) {
  std::ostringstream os;
  os << kVersionLine << '\n' << kAbsorptionHeader << '\n';
  for (const auto& r : table.absorption_rows()) os << num(r.theta_i_deg) << ',' << num(r.alpha_db) << '\n';
  return os.str();
}

std::string reflection_csv(const CoeffTable& table) {
  std::ostringstream os;
  os << kVersionLine << '\n' << kReflectionHeader << '\n';
  for (const auto& r : table.reflection_rows()) {
    os << num(r.theta_i_deg) << ',' << num(r.theta_r_deg) << ',' << r.cells << ',' << num(r.alpha_db) << ','
       << num(r.reflected_power_pct) << '\n';
  }
  return os.str();
}

}  // namespace hsfsim
