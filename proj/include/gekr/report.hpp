#ifndef GEKR_REPORT_HPP
#define GEKR_REPORT_HPP

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "gekr/bounds.hpp"
#include "gekr/optimize.hpp"

// Bound tables and figure curves as CSV.

namespace gekr {

enum class BoundModel { Independent, FixedAsymptotic, FixedExact };

inline BoundModel parse_bound_model(std::string_view name) {
  if (name == "independent") return BoundModel::Independent;
  if (name == "fixed-asymptotic" || name == "fixed") return BoundModel::FixedAsymptotic;
  if (name == "fixed-exact") return BoundModel::FixedExact;
  throw Error("unknown model '" + std::string(name) + "'");
}

inline std::string bound_model_name(BoundModel model) {
  switch (model) {
    case BoundModel::Independent:
      return "independent";
    case BoundModel::FixedAsymptotic:
      return "fixed-asymptotic";
    case BoundModel::FixedExact:
      return "fixed-exact";
  }
  return "?";
}

/// Row bound for one (alpha, n); fixed-exact requires alpha*n to be an integer.
inline LogMagnitude evaluate_bound(BoundModel model, const Fraction& alpha, std::int64_t n) {
  const double a = alpha.value();
  if (!(a > 0 && a < 1)) throw Error("alpha must lie in (0, 1)");
  if (n < 1) throw Error("n must be positive");
  switch (model) {
    case BoundModel::Independent:
      return zeta(a, n);
    case BoundModel::FixedAsymptotic:
      return nu_asymptotic(a, n);
    case BoundModel::FixedExact:
      return nu(alpha, n, NuMode::ExactSum);
  }
  throw Error("unknown model");
}

struct AlphaLabel {
  std::string text;  // as given, e.g. "1/3"
  Fraction value;
};

inline AlphaLabel alpha_label(std::string_view text) { return {std::string(text), Fraction::parse(text)}; }

inline std::vector<AlphaLabel> default_alphas(BoundModel model) {
  const char* first = model == BoundModel::Independent ? "0.1669" : "0.1685";
  std::vector<AlphaLabel> out;
  for (const char* a : {first, "0.2", "1/3", "0.5", "2/3", "0.7395", "0.8"}) out.push_back(alpha_label(a));
  return out;
}

inline std::vector<std::int64_t> default_ns() { return {10'000, 100'000, 300'000, 1'000'000}; }

struct TableRow {
  AlphaLabel alpha;
  std::int64_t n = 0;
  LogMagnitude m;
};

inline std::vector<TableRow> bound_table(BoundModel model, const std::vector<AlphaLabel>& alphas,
                                         const std::vector<std::int64_t>& ns) {
  if (alphas.empty()) throw Error("empty alpha list");
  if (ns.empty()) throw Error("empty n list");
  std::vector<TableRow> rows;
  for (const auto& a : alphas)
    for (std::int64_t n : ns) rows.push_back({a, n, evaluate_bound(model, a.value, n)});
  return rows;
}

inline std::string format_log10(const LogMagnitude& x) {
  if (x.is_zero()) return "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9f", x.log10());
  return buf;
}

inline void write_table_csv(std::ostream& out, const std::vector<TableRow>& rows) {
  out << "alpha,n,log10_m,rendered\n";
  for (const auto& r : rows) out << r.alpha.text << ',' << r.n << ',' << format_log10(r.m) << ',' << r.m.render() << '\n';
}

inline void write_figure_csv(std::ostream& out, const FigureData& data) {
  for (std::size_t c = 0; c < data.columns.size(); ++c) out << (c ? "," : "") << data.columns[c];
  out << '\n';
  char buf[64];
  for (const auto& row : data.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out << ',';
      if (std::isnan(row[c])) continue;
      std::snprintf(buf, sizeof buf, "%.10g", row[c]);
      out << buf;
    }
    out << '\n';
  }
}

}  // namespace gekr

#endif  // GEKR_REPORT_HPP
