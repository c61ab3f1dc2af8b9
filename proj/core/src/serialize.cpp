#include "kwp/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <iomanip>
#include <limits>
#include <sstream>

#include "kwp/errors.hpp"

namespace kwp {

json number_to_json(double v) {
  if (std::isnan(v)) return "NaN";
  if (std::isinf(v)) return v > 0 ? "Infinity" : "-Infinity";
  return v;
}

double number_from_json(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    if (s == "NaN") return std::numeric_limits<double>::quiet_NaN();
    if (s == "Infinity") return std::numeric_limits<double>::infinity();
    if (s == "-Infinity") return -std::numeric_limits<double>::infinity();
  }
  if (j.is_null()) return std::numeric_limits<double>::quiet_NaN();
  throw InputError("json: expected a number, got " + j.dump());
}

namespace {

json numbers_to_json(const std::vector<double>& v) {
  json a = json::array();
  for (double x : v) a.push_back(number_to_json(x));
  return a;
}

std::vector<double> numbers_from_json(const json& j) {
  std::vector<double> v;
  for (const auto& e : j) v.push_back(number_from_json(e));
  return v;
}

}  // namespace

void to_json(json& j, const KwPParams& p) {
  j = json{{"beta", number_to_json(p.beta)},
           {"k", number_to_json(p.k)},
           {"a", number_to_json(p.a)},
           {"b", number_to_json(p.b)}};
}

void from_json(const json& j, KwPParams& p) {
  p.beta = number_from_json(j.at("beta"));
  p.k = number_from_json(j.at("k"));
  p.a = number_from_json(j.at("a"));
  p.b = number_from_json(j.at("b"));
}

void to_json(json& j, const StartSummary& s) {
  j = json{{"start", numbers_to_json(s.start)},
           {"estimate", numbers_to_json(s.estimate)},
           {"loglik", number_to_json(s.loglik)},
           {"iterations", s.iterations},
           {"evaluations", s.evaluations},
           {"converged", s.converged},
           {"stop_reason", s.stop_reason}};
}

void from_json(const json& j, StartSummary& s) {
  s.start = numbers_from_json(j.at("start"));
  s.estimate = numbers_from_json(j.at("estimate"));
  s.loglik = number_from_json(j.at("loglik"));
  s.iterations = j.at("iterations").get<int>();
  s.evaluations = j.at("evaluations").get<int>();
  s.converged = j.at("converged").get<bool>();
  s.stop_reason = j.at("stop_reason").get<std::string>();
}

void to_json(json& j, const FitResult& f) {
  j = json{{"model", std::string(model_name(f.kind))},
           {"beta_hat", number_to_json(f.beta_hat)},
           {"beta_rule", f.beta_rule},
           {"params", f.params},
           {"names", f.names},
           {"estimates", numbers_to_json(f.estimates)},
           {"se", numbers_to_json(f.se)},
           {"loglik", number_to_json(f.loglik)},
           {"minus2ll", number_to_json(f.minus2ll)},
           {"aic", number_to_json(f.aic)},
           {"bic", number_to_json(f.bic)},
           {"caic", number_to_json(f.caic)},
           {"ks", number_to_json(f.ks)},
           {"n", f.n},
           {"n_used", f.n_used},
           {"converged", f.converged},
           {"at_boundary", f.at_boundary},
           {"condition_number", number_to_json(f.condition_number)},
           {"warnings", f.warnings},
           {"optimizer_trace", f.optimizer_trace}};
}

void from_json(const json& j, FitResult& f) {
  f.kind = parse_model(j.at("model").get<std::string>());
  f.beta_hat = number_from_json(j.at("beta_hat"));
  f.beta_rule = j.at("beta_rule").get<std::string>();
  f.params = j.at("params").get<KwPParams>();
  f.names = j.at("names").get<std::vector<std::string>>();
  f.estimates = numbers_from_json(j.at("estimates"));
  f.se = numbers_from_json(j.at("se"));
  f.loglik = number_from_json(j.at("loglik"));
  f.minus2ll = number_from_json(j.at("minus2ll"));
  f.aic = number_from_json(j.at("aic"));
  f.bic = number_from_json(j.at("bic"));
  f.caic = number_from_json(j.at("caic"));
  f.ks = number_from_json(j.at("ks"));
  f.n = j.at("n").get<std::size_t>();
  f.n_used = j.at("n_used").get<std::size_t>();
  f.converged = j.at("converged").get<bool>();
  f.at_boundary = j.at("at_boundary").get<bool>();
  f.condition_number = number_from_json(j.at("condition_number"));
  f.warnings = j.at("warnings").get<std::vector<std::string>>();
  f.optimizer_trace = j.value("optimizer_trace", std::vector<StartSummary>{});
}

void to_json(json& j, const ComparisonRow& r) {
  j = json{{"model", std::string(model_name(r.kind))}};
  j["fit"] = r.fit ? json(*r.fit) : json(nullptr);
  j["error"] = r.error;
}

void from_json(const json& j, ComparisonRow& r) {
  r.kind = parse_model(j.at("model").get<std::string>());
  if (j.at("fit").is_null()) {
    r.fit.reset();
  } else {
    r.fit = j.at("fit").get<FitResult>();
  }
  r.error = j.value("error", std::string{});
}

void to_json(json& j, const ComparisonReport& r) {
  j = json{{"dataset_id", r.dataset_id}, {"beta_rule", r.beta_rule}, {"rows", r.rows}, {"notes", r.notes}};
}

void from_json(const json& j, ComparisonReport& r) {
  r.dataset_id = j.at("dataset_id").get<std::string>();
  r.beta_rule = j.at("beta_rule").get<std::string>();
  r.rows = j.at("rows").get<std::vector<ComparisonRow>>();
  r.notes = j.at("notes").get<std::vector<std::string>>();
}

void to_json(json& j, const DescriptiveStats& d) {
  j = json{{"n", d.n},
           {"min", number_to_json(d.min)},
           {"q1", number_to_json(d.q1)},
           {"median", number_to_json(d.median)},
           {"mean", number_to_json(d.mean)},
           {"q3", number_to_json(d.q3)},
           {"max", number_to_json(d.max)},
           {"variance", number_to_json(d.variance)},
           {"quantile_rule", "type7"}};
}

void from_json(const json& j, DescriptiveStats& d) {
  d.n = j.at("n").get<std::size_t>();
  d.min = number_from_json(j.at("min"));
  d.q1 = number_from_json(j.at("q1"));
  d.median = number_from_json(j.at("median"));
  d.mean = number_from_json(j.at("mean"));
  d.q3 = number_from_json(j.at("q3"));
  d.max = number_from_json(j.at("max"));
  d.variance = number_from_json(j.at("variance"));
}

void to_json(json& j, const ParameterSummary& p) {
  j = json{{"parameter", p.name},
           {"true", number_to_json(p.true_value)},
           {"mean", number_to_json(p.mean)},
           {"bias", number_to_json(p.bias)},
           {"sd", number_to_json(p.sd)}};
}

void to_json(json& j, const SizeSummary& s) {
  j = json{{"n", s.n},
           {"replications", s.replications},
           {"used", s.used},
           {"not_converged", s.not_converged},
           {"boundary", s.boundary},
           {"failed", s.failed},
           {"min_beta_hat", number_to_json(s.min_beta_hat)},
           {"params", json::array()}};
  for (const auto& p : s.params) j["params"].push_back(p);
}

void to_json(json& j, const StudyResult& r) {
  const StudyConfig& c = r.config;
  j = json{{"true_params", c.truth},
           {"sample_sizes", c.sample_sizes},
           {"replications", c.replications},
           {"seed", c.seed},
           {"beta_rule", c.beta_rule.to_string()},
           {"bias_convention", "mean - true"},
           {"sizes", r.sizes}};
}

std::string format_double(double v) {
  if (std::isnan(v)) return "NaN";
  if (std::isinf(v)) return v > 0 ? "Infinity" : "-Infinity";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::string fixed(double v, int digits) {
  if (!std::isfinite(v)) return format_double(v);
  std::ostringstream os;
  const double mag = std::fabs(v);
  if (v != 0.0 && (mag >= 1e6 || mag < 1e-3)) {
    os << std::scientific << std::setprecision(3) << v;
  } else {
    os << std::fixed << std::setprecision(digits) << v;
  }
  return os.str();
}

std::string joined(const std::vector<std::string>& names, const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += "  ";
    if (i < names.size()) out += names[i] + "=";
    out += fixed(v[i], 4);
  }
  return out;
}

struct TextRow {
  std::vector<std::string> cells;
};

std::string render(const std::vector<std::string>& header, const std::vector<TextRow>& rows) {
  std::vector<std::size_t> width(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
  for (const auto& r : rows) {
    for (std::size_t c = 0; c < r.cells.size() && c < width.size(); ++c) width[c] = std::max(width[c], r.cells[c].size());
  }
  std::ostringstream os;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t c = 0; c < width.size(); ++c) {
      const std::string cell = c < cells.size() ? cells[c] : "";
      if (c == 0) {
        os << std::left << std::setw(static_cast<int>(width[c])) << cell;
      } else {
        os << "  " << std::right << std::setw(static_cast<int>(width[c])) << cell;
      }
    }
    os << "\n";
  };
  line(header);
  std::size_t total = 0;
  for (auto w : width) total += w + 2;
  os << std::string(total - 2, '-') << "\n";
  for (const auto& r : rows) line(r.cells);
  return os.str();
}

const std::vector<std::string> kFitHeader{"model", "estimates", "SEs", "AIC", "BIC", "CAIC", "K-S", "-2l"};

TextRow fit_row(const FitResult& f) {
  return TextRow{{std::string(model_label(f.kind)), joined(f.names, f.estimates), joined({}, f.se), fixed(f.aic, 3),
                  fixed(f.bic, 3), fixed(f.caic, 3), fixed(f.ks, 4), fixed(f.minus2ll, 3)}};
}

void fit_notes(std::ostringstream& os, const FitResult& f) {
  for (const auto& w : f.warnings) os << "  " << model_label(f.kind) << ": " << w << "\n";
}

}  // namespace

std::string fit_text(const FitResult& f) {
  std::ostringstream os;
  os << "beta_hat = " << format_double(f.beta_hat) << " (" << f.beta_rule << "), n = " << f.n;
  if (f.n_used != f.n) os << " (" << f.n_used << " in the likelihood)";
  os << ", converged = " << (f.converged ? "yes" : "no") << "\n\n";
  os << render(kFitHeader, {fit_row(f)});
  fit_notes(os, f);
  return os.str();
}

std::string comparison_text(const ComparisonReport& r) {
  std::ostringstream os;
  if (!r.dataset_id.empty()) os << "data: " << r.dataset_id << "\n";
  os << "beta rule: " << r.beta_rule << "\n\n";
  std::vector<TextRow> rows;
  for (const auto& row : r.rows) {
    if (row.fit) {
      rows.push_back(fit_row(*row.fit));
    } else {
      rows.push_back(TextRow{{std::string(model_label(row.kind)), "fit failed"}});
    }
  }
  os << render(kFitHeader, rows);
  for (const auto& n : r.notes) os << "note: " << n << "\n";
  return os.str();
}

std::string describe_text(const DescriptiveStats& d) {
  std::vector<TextRow> rows{{{"n", std::to_string(d.n)}},
                            {{"min", fixed(d.min, 3)}},
                            {{"q1", fixed(d.q1, 3)}},
                            {{"median", fixed(d.median, 3)}},
                            {{"mean", fixed(d.mean, 3)}},
                            {{"q3", fixed(d.q3, 3)}},
                            {{"max", fixed(d.max, 3)}},
                            {{"variance", fixed(d.variance, 3)}}};
  return render({"statistic", "value"}, rows);
}

std::string study_records_csv(const StudyResult& r) {
  std::ostringstream os;
  os << "n,replication,status,beta,k,a,b,loglik\n";
  for (const auto& rec : r.records) {
    os << rec.n << ',' << rec.index << ',' << to_string(rec.status) << ',' << format_double(rec.estimate.beta) << ','
       << format_double(rec.estimate.k) << ',' << format_double(rec.estimate.a) << ','
       << format_double(rec.estimate.b) << ',' << format_double(rec.loglik) << '\n';
  }
  return os.str();
}

}  // namespace kwp
