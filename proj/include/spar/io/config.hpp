#pragma once

#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "spar/ardensity/engine.hpp"
#include "spar/copulas/copula.hpp"
#include "spar/geometry/polar_map.hpp"
#include "spar/margins/margin.hpp"

namespace spar::io {

// Flat key-value configuration with dotted sections:
//   model.family = gaussian
//   model.rho    = 0.6
// '#' starts a comment. Unknown keys are rejected with their line number.
class Config {
 public:
  struct Entry {
    std::string value;
    int line = 0;
    mutable bool consumed = false;
  };

  static Config parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str(), path);
  }

  static Config parse(const std::string& text, std::string origin = "<config>") {
    Config c;
    c.origin_ = std::move(origin);
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      const std::string t = trim(line);
      if (t.empty()) continue;
      const auto eq = t.find('=');
      if (eq == std::string::npos)
        throw std::runtime_error(c.origin_ + ":" + std::to_string(lineno) +
                                 ": expected 'key = value'");
      const std::string key = trim(t.substr(0, eq));
      const std::string val = trim(t.substr(eq + 1));
      if (key.empty() || val.empty())
        throw std::runtime_error(c.origin_ + ":" + std::to_string(lineno) +
                                 ": empty key or value");
      if (c.entries_.count(key))
        throw std::runtime_error(c.origin_ + ":" + std::to_string(lineno) + ": duplicate key '" +
                                 key + "'");
      c.entries_[key] = Entry{val, lineno, false};
    }
    return c;
  }

  bool has(const std::string& key) const { return entries_.count(key) != 0; }

  std::string get_string(const std::string& key) const {
    auto it = entries_.find(key);
    if (it == entries_.end()) throw std::runtime_error(origin_ + ": missing key '" + key + "'");
    it->second.consumed = true;
    return it->second.value;
  }
  std::string get_string(const std::string& key, const std::string& dflt) const {
    return has(key) ? get_string(key) : dflt;
  }
  double get_double(const std::string& key) const {
    const std::string s = get_string(key);
    try {
      std::size_t pos = 0;
      const double v = std::stod(s, &pos);
      if (pos != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (...) {
      throw std::runtime_error(origin_ + ":" + std::to_string(entries_.at(key).line) +
                               ": key '" + key + "' is not a number: '" + s + "'");
    }
  }
  double get_double(const std::string& key, double dflt) const {
    return has(key) ? get_double(key) : dflt;
  }
  int get_int(const std::string& key, int dflt) const {
    return has(key) ? static_cast<int>(get_double(key)) : dflt;
  }

  // call after all consumers ran; reports unknown keys with location info
  void reject_unknown() const {
    for (const auto& [key, entry] : entries_) {
      if (!entry.consumed)
        throw std::runtime_error(origin_ + ":" + std::to_string(entry.line) +
                                 ": unknown key '" + key + "'");
    }
  }

  std::map<std::string, std::string> raw() const {
    std::map<std::string, std::string> out;
    for (const auto& [k, e] : entries_) out[k] = e.value;
    return out;
  }

 private:
  static std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
  }

  std::string origin_;
  std::map<std::string, Entry> entries_;
};

inline copulas::CopulaModel make_copula(const Config& c) {
  using copulas::CopulaModel;
  using copulas::EvDependence;
  const std::string fam = c.get_string("model.family");
  CopulaModel m = [&] {
    if (fam == "independence") return CopulaModel::independence(c.get_int("model.d", 2));
    if (fam == "frank") return CopulaModel::frank(c.get_double("model.alpha"));
    if (fam == "joe") return CopulaModel::joe(c.get_double("model.alpha"));
    if (fam == "gaussian") return CopulaModel::gaussian(c.get_double("model.rho"));
    if (fam == "student_t")
      return CopulaModel::student_t(c.get_double("model.rho"), c.get_double("model.nu"));
    if (fam == "ev_logistic")
      return CopulaModel::ev(EvDependence::symmetric_logistic(c.get_double("model.alpha")));
    if (fam == "ev_asym_logistic")
      return CopulaModel::ev(EvDependence::asymmetric_logistic(c.get_double("model.alpha"),
                                                               c.get_double("model.gamma1"),
                                                               c.get_double("model.gamma2")));
    if (fam == "husler_reiss")
      return CopulaModel::ev(EvDependence::husler_reiss(c.get_double("model.alpha")));
    if (fam == "clayton") return CopulaModel::clayton(c.get_double("model.alpha"));
    if (fam == "nelsen_4215") return CopulaModel::nelsen_4215(c.get_double("model.alpha"));
    if (fam == "biv_exponential")
      return CopulaModel::biv_exponential(c.get_double("model.alpha"));
    throw std::runtime_error("config: unknown copula family '" + fam + "'");
  }();
  const std::string refl = c.get_string("model.reflect", "");
  if (!refl.empty()) {
    std::vector<int> corner;
    std::stringstream ss(refl);
    std::string tok;
    while (std::getline(ss, tok, ',')) corner.push_back(std::stoi(tok));
    m = m.reflect_corner(corner);
  }
  return m;
}

inline margins::Margin make_margin(const Config& c) {
  using margins::Margin;
  const std::string fam = c.get_string("margin.family", "laplace");
  if (fam == "laplace") return Margin::laplace();
  if (fam == "sgp") return Margin::sgp(c.get_double("margin.xi"));
  if (fam == "gp") return Margin::gp(c.get_double("margin.xi"), c.get_double("margin.scale", 1.0));
  if (fam == "pareto") return Margin::standard_pareto();
  if (fam == "exponential") return Margin::exponential();
  if (fam == "normal") return Margin::normal();
  if (fam == "student_t") return Margin::student_t(c.get_double("margin.nu"));
  throw std::runtime_error("config: unknown margin family '" + fam + "'");
}

inline geometry::StarBoundary make_gauge(const std::string& spec, int d) {
  using geometry::StarBoundary;
  if (spec == "l1") return StarBoundary::lp(1.0, d);
  if (spec == "l2") return StarBoundary::lp(2.0, d);
  if (spec == "linf") return StarBoundary::lp_inf(d);
  if (spec.rfind("lp:", 0) == 0) return StarBoundary::lp(std::stod(spec.substr(3)), d);
  if (spec.rfind("elliptical:", 0) == 0)
    return StarBoundary::elliptical(std::stod(spec.substr(11)));
  throw std::runtime_error("config: unknown gauge '" + spec + "'");
}

inline geometry::PolarMap make_map(const Config& c, int d) {
  return geometry::PolarMap(make_gauge(c.get_string("polar.radial", "l1"), d),
                            make_gauge(c.get_string("polar.angular", "l1"), d));
}

inline std::vector<double> make_origin(const Config& c, int d) {
  const std::string o = c.get_string("polar.origin", "");
  if (o.empty()) return std::vector<double>(d, 0.0);
  std::vector<double> out;
  std::stringstream ss(o);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
  if (static_cast<int>(out.size()) != d)
    throw std::runtime_error("config: polar.origin dimension mismatch");
  return out;
}

inline ardensity::ARDensityEngine make_engine(const Config& c) {
  auto copula = make_copula(c);
  const int d = copula.dimension();
  return ardensity::ARDensityEngine(std::move(copula), make_margin(c), make_map(c, d),
                                    make_origin(c, d));
}

}  // namespace spar::io
