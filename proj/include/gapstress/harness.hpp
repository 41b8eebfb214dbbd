#ifndef GAPSTRESS_HARNESS_HPP
#define GAPSTRESS_HARNESS_HPP

// Batch studies on top of the library: field grids, boundary sweeps,
// blow-up fits and truncation convergence, with CSV/JSON export. Each
// command returns a process exit status (0 ok, 1 numerical failure,
// 2 usage error).

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "gapstress/bipolar_geometry.hpp"
#include "gapstress/errors.hpp"
#include "gapstress/ling_exact.hpp"
#include "gapstress/numerics.hpp"
#include "gapstress/singular_asymptotics.hpp"
#include "gapstress/tensor.hpp"

namespace gapstress::harness {

using json = nlohmann::json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitNumerical = 1;
inline constexpr int kExitUsage = 2;

class UsageError : public Error {
 public:
  using Error::Error;
};

/// Truncation cap, overridable by GAPSTRESS_MAX_TERMS.
inline long default_max_terms() {
  const char* env = std::getenv("GAPSTRESS_MAX_TERMS");
  if (env == nullptr || *env == '\0') return kDefaultMaxTerms;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (end == env || *end != '\0' || v < 1) throw UsageError("GAPSTRESS_MAX_TERMS must be a positive integer");
  return v;
}

/// 17 significant digits; empty for NaN.
inline std::string fmt(double v) {
  if (std::isnan(v)) return "";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// ---------------------------------------------------------------------------
// Configuration

namespace detail {

inline double parse_double(const std::string& tok, const char* what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(tok, &used);
  } catch (const std::exception&) {
    throw UsageError(std::string("cannot parse ") + what + ": '" + tok + "'");
  }
  if (used != tok.size() || !std::isfinite(v)) throw UsageError(std::string("cannot parse ") + what + ": '" + tok + "'");
  return v;
}

inline long parse_count(const std::string& tok, const char* what) {
  const double v = parse_double(tok, what);
  if (v < 1.0 || v != std::floor(v) || v > 1e7) throw UsageError(std::string(what) + " must be a positive integer");
  return static_cast<long>(v);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

}  // namespace detail

/// Inclusive range lo:hi with n equally spaced samples (n = 1 gives lo).
struct RangeSpec {
  double lo = 0.0;
  double hi = 0.0;
  long n = 1;

  static RangeSpec parse(const std::string& text, const char* what) {
    const auto parts = detail::split(text, ':');
    if (parts.size() != 3) throw UsageError(std::string(what) + " must look like lo:hi:n");
    RangeSpec r{detail::parse_double(parts[0], what), detail::parse_double(parts[1], what),
                detail::parse_count(parts[2], what)};
    if (r.n > 1 && !(r.hi > r.lo)) throw UsageError(std::string(what) + ": need hi > lo");
    return r;
  }

  double at(long i) const {
    if (n == 1) return lo;
    return i == n - 1 ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  }

  std::vector<double> values() const {
    std::vector<double> v(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i) v[i] = at(i);
    return v;
  }
};

struct GridSpec {
  RangeSpec x;
  RangeSpec y;

  /// "x0:x1:nx,y0:y1:ny"
  static GridSpec parse(const std::string& text) {
    const auto parts = detail::split(text, ',');
    if (parts.size() != 2) throw UsageError("--grid must look like x0:x1:nx,y0:y1:ny");
    return {RangeSpec::parse(parts[0], "grid x-range"), RangeSpec::parse(parts[1], "grid y-range")};
  }

  /// [-2 sqrt(r eps), 2 sqrt(r eps)]^2 with 101 x 101 points.
  static GridSpec gap_default(double r, double eps) {
    const double a = 2.0 * std::sqrt(r * eps);
    return {{-a, a, 101}, {-a, a, 101}};
  }

  std::vector<CartesianPoint> points() const {
    std::vector<CartesianPoint> out;
    out.reserve(static_cast<std::size_t>(x.n * y.n));
    for (long j = 0; j < y.n; ++j) {
      for (long i = 0; i < x.n; ++i) out.push_back({x.at(i), y.at(j)});
    }
    return out;
  }
};

using ThetaSpec = RangeSpec;

inline ThetaSpec theta_default() { return {0.0, std::numbers::pi, 181}; }

inline std::vector<double> parse_eps_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& tok : detail::split(text, ',')) {
    const double v = detail::parse_double(tok, "eps-list entry");
    if (!(v > 0.0)) throw UsageError("eps-list entries must be positive");
    out.push_back(v);
  }
  return out;
}

enum class Format { csv, json };

/// Which constant scales sigma*: the integral as defined (I0), or the
/// constant that governs K(s) and the blow-up (16 I0).
enum class StarConstant { consistent, as_defined };

struct RunConfig {
  double r = 1.0;
  double eps = 1e-3;
  double tol = 1e-10;
  std::optional<GridSpec> grid;
  std::optional<ThetaSpec> theta;
  std::vector<double> eps_list;
  std::string out;
  Format format = Format::csv;
  StarConstant star = StarConstant::consistent;
  long max_terms = kDefaultMaxTerms;

  void validate() const {
    if (!(r > 0.0) || !std::isfinite(r)) throw UsageError("--r must be positive");
    if (!(eps > 0.0) || !std::isfinite(eps)) throw UsageError("--eps must be positive");
    if (!(tol > 0.0) || !(tol < 1.0)) throw UsageError("--tol must lie in (0, 1)");
    if (max_terms < 1) throw UsageError("truncation cap must be positive");
  }

  Truncation truncation() const {
    Truncation t;
    t.tol = tol;
    t.max_terms = max_terms;
    return t;
  }

  double star_constant() const { return star == StarConstant::consistent ? kBlowupConstant : kI0; }
};

inline const char* to_string(StarConstant c) { return c == StarConstant::consistent ? "consistent" : "as-defined"; }

inline json geometry_json(const GapGeometry& g) {
  return {{"r", g.r()}, {"eps", g.eps()}, {"alpha", g.alpha()}, {"s", g.s()}};
}

inline json truncation_json(const Truncation& t) {
  return {{"tol", t.tol}, {"max_terms", t.max_terms}, {"achieved_terms", t.achieved_terms},
          {"tail_bound", t.tail_bound}};
}

/// Writes to cfg.out, or to `fallback` when no path is set.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::out | std::ios::trunc);
      if (!file_) throw UsageError("cannot open output file '" + path + "'");
      stream_ = &file_;
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

inline void write_json_file(const std::string& path, const json& j) {
  std::ofstream f(path, std::ios::out | std::ios::trunc);
  if (!f) throw UsageError("cannot open output file '" + path + "'");
  f << j.dump(2) << "\n";
}

// ---------------------------------------------------------------------------
// constants

inline json constants_record(const RunConfig& cfg) {
  const GapGeometry g(cfg.r, cfg.eps);
  const double s = g.s();
  const SeriesValue P = constant_P_detailed(s, std::min(cfg.tol, 1e-12), cfg.max_terms);
  const double K = constant_K(s, table_K_tolerance(s), cfg.max_terms);
  const QuadratureResult i0 = I0_quadrature(1e-13);
  return {{"geometry", geometry_json(g)},
          {"I0", i0.value},
          {"I0_error_estimate", i0.error_estimate},
          {"blowup_constant", 16.0 * i0.value},
          {"P", P.value},
          {"P_truncation", truncation_json(P.truncation)},
          {"one_eighth_minus_P", p_defect_detailed(s, table_K_tolerance(s), cfg.max_terms).value},
          {"K", K},
          {"K_I0_s2", K * i0.value * s * s},
          {"K_blowup_constant_s2", K * 16.0 * i0.value * s * s}};
}

inline int cmd_constants(const RunConfig& cfg, std::ostream& out = std::cout) {
  cfg.validate();
  const json rec = constants_record(cfg);
  out << rec.dump(2) << "\n";
  if (!cfg.out.empty()) write_json_file(cfg.out, rec);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// field

struct FieldSample {
  CartesianPoint point;
  BipolarPoint bipolar;
  Region region = Region::exterior;
  bool has_stress = false;
  SymmetricTensor2 sigma_exact;
  SymmetricTensor2 sigma_star;
  double residual_norm = std::numeric_limits<double>::quiet_NaN();
  std::string error;
};

inline FieldSample evaluate_sample(const CoefficientTable& t, const GapGeometry& g, const CartesianPoint& p,
                                   double star_constant) {
  FieldSample out;
  out.point = p;
  try {
    out.region = classify_region(p, g);
    if (out.region == Region::hole1 || out.region == Region::hole2) {
      if (!(p.y == 0.0 && std::abs(p.x) == g.alpha())) out.bipolar = to_bipolar(p, g);
      return out;
    }
    out.bipolar = to_bipolar(p, g);
    out.sigma_exact = total_stress(t, g, p);
    out.sigma_star = sigma_star(g, p, star_constant);
    out.residual_norm = (out.sigma_exact - out.sigma_star).frobenius_norm();
    out.has_stress = true;
  } catch (const Error& e) {
    out.error = e.what();
  }
  return out;
}

inline std::vector<FieldSample> evaluate_grid(const CoefficientTable& t, const GapGeometry& g,
                                              const std::vector<CartesianPoint>& pts, double star_constant) {
  std::vector<FieldSample> out;
  out.reserve(pts.size());
  for (const auto& p : pts) out.push_back(evaluate_sample(t, g, p, star_constant));
  return out;
}

inline const char* field_csv_header() {
  return "x,y,zeta,theta,sxx,sxy,syy,star_xx,star_xy,star_yy,residual_fro,region";
}

inline void write_field_csv(std::ostream& os, const std::vector<FieldSample>& samples) {
  os << field_csv_header() << "\n";
  for (const auto& f : samples) {
    os << fmt(f.point.x) << ',' << fmt(f.point.y) << ',' << fmt(f.bipolar.zeta) << ',' << fmt(f.bipolar.theta);
    if (f.has_stress) {
      os << ',' << fmt(f.sigma_exact.c11) << ',' << fmt(f.sigma_exact.c12) << ',' << fmt(f.sigma_exact.c22) << ','
         << fmt(f.sigma_star.c11) << ',' << fmt(f.sigma_star.c12) << ',' << fmt(f.sigma_star.c22) << ','
         << fmt(f.residual_norm);
    } else {
      os << ",,,,,,,";
    }
    os << ',' << (f.error.empty() ? to_string(f.region) : "error") << "\n";
  }
}

inline json field_sample_json(const FieldSample& f) {
  json j = {{"x", f.point.x}, {"y", f.point.y}, {"zeta", f.bipolar.zeta}, {"theta", f.bipolar.theta},
            {"region", f.error.empty() ? to_string(f.region) : "error"}};
  if (f.has_stress) {
    j["sigma"] = {f.sigma_exact.c11, f.sigma_exact.c12, f.sigma_exact.c22};
    j["sigma_star"] = {f.sigma_star.c11, f.sigma_star.c12, f.sigma_star.c22};
    j["residual_fro"] = f.residual_norm;
  }
  if (!f.error.empty()) j["error"] = f.error;
  return j;
}

struct FieldSummary {
  long exterior = 0;
  long holes = 0;
  long failures = 0;
  double max_residual = 0.0;
  double max_stress = 0.0;
};

inline FieldSummary summarize(const std::vector<FieldSample>& samples) {
  FieldSummary s;
  for (const auto& f : samples) {
    if (!f.error.empty()) {
      ++s.failures;
    } else if (f.has_stress) {
      ++s.exterior;
      s.max_residual = std::max(s.max_residual, f.residual_norm);
      s.max_stress = std::max(s.max_stress, f.sigma_exact.spectral_norm());
    } else {
      ++s.holes;
    }
  }
  return s;
}

inline int cmd_field(const RunConfig& cfg, std::ostream& out = std::cout) {
  cfg.validate();
  const GapGeometry g(cfg.r, cfg.eps);
  const GridSpec grid = cfg.grid.value_or(GridSpec::gap_default(cfg.r, cfg.eps));
  const CoefficientTable t = build_coefficients(g, cfg.truncation());
  const auto samples = evaluate_grid(t, g, grid.points(), cfg.star_constant());
  const FieldSummary sum = summarize(samples);
  json meta = {{"geometry", geometry_json(g)},
               {"truncation", truncation_json(t.truncation())},
               {"K", t.K()},
               {"I0", kI0},
               {"star_constant", cfg.star_constant()},
               {"star_constant_convention", to_string(cfg.star)},
               {"grid", {{"x", {grid.x.lo, grid.x.hi, grid.x.n}}, {"y", {grid.y.lo, grid.y.hi, grid.y.n}}}},
               {"exterior_points", sum.exterior},
               {"hole_points", sum.holes},
               {"failed_points", sum.failures},
               {"max_residual_fro", sum.max_residual},
               {"max_stress_norm", sum.max_stress}};
  if (cfg.format == Format::json) {
    json j = meta;
    j["samples"] = json::array();
    for (const auto& f : samples) j["samples"].push_back(field_sample_json(f));
    Sink sink(cfg.out, out);
    sink.get() << j.dump(2) << "\n";
  } else {
    Sink sink(cfg.out, out);
    write_field_csv(sink.get(), samples);
    if (!cfg.out.empty()) write_json_file(cfg.out + ".json", meta);
  }
  return sum.failures > 0 ? kExitNumerical : kExitOk;
}

// ---------------------------------------------------------------------------
// boundary

struct BoundaryRow {
  double theta = 0.0;
  double hoop_closed_form = 0.0;   // 2 K sinh s h (1 + 4q)
  double hoop_components = 0.0;    // 1 + sigma1_tt at zeta = +s
  double hoop_components_lower = 0.0;  // same at zeta = -s
  double sigma1_tt = 0.0;
  double sigma1_zz = 0.0;
  double sigma1_zt = 0.0;
  double q_series = 0.0;
  double q_asymptotic = 0.0;
  double q_scaled_residual = 0.0;  // |q - q_asym| h(s, theta) / s
};

inline BoundaryRow boundary_row(const CoefficientTable& t, double theta, const Truncation& request) {
  const double s = t.s();
  BoundaryRow row;
  row.theta = theta;
  const Sigma1Components up = sigma1_components(t, BipolarPoint(s, theta));
  const Sigma1Components lo = sigma1_components(t, BipolarPoint(-s, theta));
  row.q_series = q_series(s, theta, request);
  row.hoop_closed_form = 2.0 * t.K() * std::sinh(s) * metric_h(s, theta) * (1.0 + 4.0 * row.q_series);
  row.sigma1_tt = up.s_tt();
  row.sigma1_zz = up.s_zz;
  row.sigma1_zt = up.s_zt;
  row.hoop_components = 1.0 + up.s_tt();
  row.hoop_components_lower = 1.0 + lo.s_tt();
  row.q_asymptotic = q_asymptotic(s, theta);
  row.q_scaled_residual = std::abs(row.q_series - row.q_asymptotic) * metric_h(s, theta) / s;
  return row;
}

inline const char* boundary_csv_header() {
  return "theta,hoop_closed_form,hoop_components,hoop_components_lower,sigma1_tt,sigma1_zz,sigma1_zt,"
         "q_series,q_asymptotic,q_scaled_residual";
}

inline int cmd_boundary(const RunConfig& cfg, std::ostream& out = std::cout) {
  cfg.validate();
  const GapGeometry g(cfg.r, cfg.eps);
  const ThetaSpec th = cfg.theta.value_or(theta_default());
  const CoefficientTable t = build_coefficients(g, cfg.truncation());
  std::vector<BoundaryRow> rows;
  for (double theta : th.values()) rows.push_back(boundary_row(t, theta, cfg.truncation()));
  double max_gap = 0.0, max_q = 0.0;
  for (const auto& r : rows) {
    max_gap = std::max(max_gap, std::abs(r.hoop_closed_form - r.hoop_components));
    max_q = std::max(max_q, r.q_scaled_residual);
  }
  json meta = {{"geometry", geometry_json(g)},
               {"truncation", truncation_json(t.truncation())},
               {"K", t.K()},
               {"theta", {th.lo, th.hi, th.n}},
               {"max_hoop_disagreement", max_gap},
               {"max_q_scaled_residual", max_q}};
  Sink sink(cfg.out, out);
  if (cfg.format == Format::json) {
    json j = meta;
    j["rows"] = json::array();
    for (const auto& r : rows) {
      j["rows"].push_back({{"theta", r.theta},
                           {"hoop_closed_form", r.hoop_closed_form},
                           {"hoop_components", r.hoop_components},
                           {"hoop_components_lower", r.hoop_components_lower},
                           {"sigma1_tt", r.sigma1_tt},
                           {"sigma1_zz", r.sigma1_zz},
                           {"sigma1_zt", r.sigma1_zt},
                           {"q_series", r.q_series},
                           {"q_asymptotic", r.q_asymptotic},
                           {"q_scaled_residual", r.q_scaled_residual}});
    }
    sink.get() << j.dump(2) << "\n";
  } else {
    auto& os = sink.get();
    os << boundary_csv_header() << "\n";
    for (const auto& r : rows) {
      os << fmt(r.theta) << ',' << fmt(r.hoop_closed_form) << ',' << fmt(r.hoop_components) << ','
         << fmt(r.hoop_components_lower) << ',' << fmt(r.sigma1_tt) << ',' << fmt(r.sigma1_zz) << ','
         << fmt(r.sigma1_zt) << ',' << fmt(r.q_series) << ',' << fmt(r.q_asymptotic) << ','
         << fmt(r.q_scaled_residual) << "\n";
    }
    if (!cfg.out.empty()) write_json_file(cfg.out + ".json", meta);
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// blowup

struct BlowupRow {
  double eps = 0.0;
  long terms = 0;
  long exterior_points = 0;
  double max_stress = 0.0;       // max spectral norm over the gap grid
  double max_residual = 0.0;     // max Frobenius norm of sigma - sigma*
  double syy_origin = 0.0;
  double prefactor_ratio = 0.0;  // syy(0,0) sqrt(eps) I0 / (2 sqrt r)
  double prefactor_ratio_consistent = 0.0;  // same with 16 I0
};

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
};

/// Least-squares line through (x_i, y_i).
inline LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double den = n * sxx - sx * sx;
  if (!(std::abs(den) > 0.0)) throw InvalidArgument("least_squares: degenerate abscissae");
  LineFit f;
  f.slope = (n * sxy - sx * sy) / den;
  f.intercept = (sy - f.slope * sx) / n;
  return f;
}

inline BlowupRow blowup_row(double r, double eps, const Truncation& request, double star_constant,
                            std::optional<GridSpec> grid = std::nullopt) {
  const GapGeometry g(r, eps);
  const CoefficientTable t = build_coefficients(g, request);
  const GridSpec gs = grid.value_or(GridSpec::gap_default(r, eps));
  const auto samples = evaluate_grid(t, g, gs.points(), star_constant);
  const FieldSummary sum = summarize(samples);
  if (sum.failures > 0) throw TruncationFailure("blowup: evaluation failed on the grid", 0.0, t.N());
  BlowupRow row;
  row.eps = eps;
  row.terms = t.N();
  row.exterior_points = sum.exterior;
  row.max_stress = sum.max_stress;
  row.max_residual = sum.max_residual;
  row.syy_origin = total_stress(t, g, {0.0, 0.0}).c22;
  row.prefactor_ratio = row.syy_origin * std::sqrt(eps) * kI0 / (2.0 * std::sqrt(r));
  row.prefactor_ratio_consistent = row.syy_origin * std::sqrt(eps) * kBlowupConstant / (2.0 * std::sqrt(r));
  return row;
}

inline void validate_eps_list(const std::vector<double>& eps) {
  if (eps.size() < 4) throw UsageError("blowup needs at least 4 eps values");
  const auto [lo, hi] = std::minmax_element(eps.begin(), eps.end());
  if (*hi / *lo < 100.0 * (1.0 - 1e-12)) throw UsageError("blowup eps values must span at least 2 decades");
}

inline int cmd_blowup(const RunConfig& cfg, std::ostream& out = std::cout) {
  cfg.validate();
  validate_eps_list(cfg.eps_list);
  std::vector<BlowupRow> rows;
  std::vector<double> lx, ly;
  for (double eps : cfg.eps_list) {
    rows.push_back(blowup_row(cfg.r, eps, cfg.truncation(), cfg.star_constant(), cfg.grid));
    lx.push_back(std::log(eps));
    ly.push_back(std::log(rows.back().max_stress));
  }
  const LineFit fit = least_squares(lx, ly);
  json j = {{"r", cfg.r},
            {"tol", cfg.tol},
            {"slope", fit.slope},
            {"I0", kI0},
            {"star_constant", cfg.star_constant()},
            {"star_constant_convention", to_string(cfg.star)},
            {"rows", json::array()}};
  for (const auto& r : rows) {
    j["rows"].push_back({{"eps", r.eps},
                         {"terms", r.terms},
                         {"exterior_points", r.exterior_points},
                         {"max_stress", r.max_stress},
                         {"max_residual_fro", r.max_residual},
                         {"syy_origin", r.syy_origin},
                         {"prefactor_ratio", r.prefactor_ratio},
                         {"prefactor_ratio_consistent", r.prefactor_ratio_consistent}});
  }
  Sink sink(cfg.out, out);
  if (cfg.format == Format::json) {
    sink.get() << j.dump(2) << "\n";
  } else {
    auto& os = sink.get();
    os << "eps,terms,exterior_points,max_stress,max_residual_fro,syy_origin,prefactor_ratio,"
          "prefactor_ratio_consistent\n";
    for (const auto& r : rows) {
      os << fmt(r.eps) << ',' << r.terms << ',' << r.exterior_points << ',' << fmt(r.max_stress) << ','
         << fmt(r.max_residual) << ',' << fmt(r.syy_origin) << ',' << fmt(r.prefactor_ratio) << ','
         << fmt(r.prefactor_ratio_consistent) << "\n";
    }
    if (!cfg.out.empty()) write_json_file(cfg.out + ".json", j);
    else std::cerr << "slope " << fmt(fit.slope) << "\n";
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// convergence

/// Largest boundary traction error max(|sigma1_zz + 1|, |sigma1_zt|) over
/// both boundaries and the theta samples.
inline double traction_residual(const CoefficientTable& t, const std::vector<double>& thetas) {
  double worst = 0.0;
  for (double th : thetas) {
    for (double z : {t.s(), -t.s()}) {
      const Sigma1Components c = sigma1_components(t, BipolarPoint(z, th));
      worst = std::max({worst, std::abs(c.s_zz + 1.0), std::abs(c.s_zt)});
    }
  }
  return worst;
}

struct ConvergenceRow {
  long terms = 0;
  double residual = 0.0;
  double tail_bound = 0.0;
};

struct ConvergenceReport {
  std::vector<ConvergenceRow> rows;
  long closure_terms = -1;  // smallest tabulated N with residual <= closure_target
  double closure_target = 1e-8;
  long tol_terms = 0;       // N chosen by build_coefficients for cfg.tol
  double doubling_change = 0.0;  // max component change from N to 2N at tol_terms
};

inline ConvergenceReport convergence_study(const RunConfig& cfg) {
  const GapGeometry g(cfg.r, cfg.eps);
  const double s = g.s();
  const ThetaSpec th = cfg.theta.value_or(ThetaSpec{0.0, std::numbers::pi, 33});
  const auto thetas = th.values();
  ConvergenceReport rep;
  const CoefficientTable full = build_coefficients(g, cfg.truncation());
  rep.tol_terms = full.N();
  const long step = std::max<long>(1, static_cast<long>(std::ceil(0.5 / s)));
  const long n_end = std::min<long>(cfg.max_terms, 2 * full.N());
  for (long n = step; n <= n_end; n += step) {
    const CoefficientTable t = build_coefficients_fixed(g, n);
    ConvergenceRow row{n, traction_residual(t, thetas), t.truncation().tail_bound};
    rep.rows.push_back(row);
    if (rep.closure_terms < 0 && row.residual <= rep.closure_target) {
      // refine between the previous row and this one
      long lo = n - step, hi = n;
      while (hi - lo > 1) {
        const long mid = lo + (hi - lo) / 2;
        (traction_residual(build_coefficients_fixed(g, mid), thetas) <= rep.closure_target ? hi : lo) = mid;
      }
      rep.closure_terms = hi;
    }
  }
  const CoefficientTable doubled = build_coefficients_fixed(g, std::min(cfg.max_terms, 2 * full.N()));
  for (double thv : thetas) {
    for (double z : {s, 0.5 * s, 0.0, -0.7 * s}) {
      const BipolarPoint b(z, thv);
      if (metric_h(b) < 1e-6) continue;
      const auto a = sigma1_components(full, b), c = sigma1_components(doubled, b);
      rep.doubling_change = std::max({rep.doubling_change, std::abs(a.diff_tt_zz - c.diff_tt_zz),
                                      std::abs(a.s_zt - c.s_zt), std::abs(a.s_zz - c.s_zz)});
    }
  }
  return rep;
}

inline int cmd_convergence(const RunConfig& cfg, std::ostream& out = std::cout) {
  cfg.validate();
  const GapGeometry g(cfg.r, cfg.eps);
  const ConvergenceReport rep = convergence_study(cfg);
  json j = {{"geometry", geometry_json(g)},
            {"tol", cfg.tol},
            {"tol_terms", rep.tol_terms},
            {"closure_target", rep.closure_target},
            {"closure_terms", rep.closure_terms},
            {"doubling_change", rep.doubling_change},
            {"rows", json::array()}};
  for (const auto& r : rep.rows) {
    j["rows"].push_back({{"terms", r.terms}, {"traction_residual", r.residual}, {"tail_bound", r.tail_bound}});
  }
  Sink sink(cfg.out, out);
  if (cfg.format == Format::json) {
    sink.get() << j.dump(2) << "\n";
  } else {
    auto& os = sink.get();
    os << "terms,traction_residual,tail_bound\n";
    for (const auto& r : rep.rows) os << r.terms << ',' << fmt(r.residual) << ',' << fmt(r.tail_bound) << "\n";
    if (!cfg.out.empty()) write_json_file(cfg.out + ".json", j);
  }
  if (rep.closure_terms < 0) {
    std::cerr << "convergence: closure target not reached within the cap\n";
    return kExitNumerical;
  }
  return kExitOk;
}

}  // namespace gapstress::harness

#endif  // GAPSTRESS_HARNESS_HPP
