#include "commands.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <sstream>

#include "data_io.hpp"
#include "kwp/descriptive.hpp"
#include "kwp/distribution.hpp"
#include "kwp/errors.hpp"
#include "kwp/mc_study.hpp"
#include "kwp/model_selection.hpp"
#include "kwp/properties.hpp"

namespace kwp::cli {

namespace {

struct Common {
  std::string format = "text";
  std::string out_path;
};

struct ParamFlags {
  KwPParams p;
  void add(CLI::App* app, const KwPParams& defaults) {
    p = defaults;
    app->add_option("--beta", p.beta, "scale (lower support bound)")->capture_default_str();
    app->add_option("--k", p.k, "Pareto shape")->capture_default_str();
    app->add_option("--a", p.a, "first Kumaraswamy shape")->capture_default_str();
    app->add_option("--b", p.b, "second Kumaraswamy shape")->capture_default_str();
  }
};

void add_common(CLI::App* app, Common& c, std::vector<std::string> formats) {
  app->add_option("--format", c.format, "output format")->check(CLI::IsMember(std::move(formats)))->capture_default_str();
  app->add_option("--out", c.out_path, "write output to this file instead of stdout");
}

void emit(const Common& c, std::ostream& out, const std::string& text) {
  if (c.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(c.out_path);
  if (!f) throw InputError("cannot write to '" + c.out_path + "'");
  f << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

FitOptions fit_options(const std::string& beta_rule, int starts, std::uint64_t seed) {
  FitOptions o;
  o.beta_rule = BetaRule::parse(beta_rule);
  if (starts < 0) throw InputError("--starts must be non-negative");
  o.starts = starts;
  o.seed = seed;
  return o;
}

// ---- properties -----------------------------------------------------------

json missing(const std::string& reason) { return json{{"exists", false}, {"reason", reason}}; }

json evaluated(const Evaluation& e) {
  return json{{"exists", true}, {"value", number_to_json(e.value)}, {"method", to_string(e.method)}, {"terms", e.terms}};
}

json scalar(double v) { return json{{"exists", true}, {"value", number_to_json(v)}}; }

json guarded(const std::function<json()>& f) {
  try {
    return f();
  } catch (const DomainError& e) {
    return missing(e.what());
  } catch (const ConvergenceError& e) {
    return json{{"exists", true}, {"value", nullptr}, {"error", e.what()}};
  }
}

std::string present_text(const json& v) {
  if (!v.value("exists", true)) return "does not exist: " + v.at("reason").get<std::string>();
  if (v.contains("error")) return "not computed: " + v.at("error").get<std::string>();
  std::string s = format_double(number_from_json(v.at("value")));
  if (v.contains("method")) s += "  [" + v.at("method").get<std::string>() + "]";
  return s;
}

std::string properties_text(const json& r) {
  std::vector<std::pair<std::string, std::string>> rows;
  for (const auto& m : r.at("moments")) rows.emplace_back("E X^" + std::to_string(m.at("r").get<int>()), present_text(m));
  for (const char* key : {"mean", "variance", "skewness", "kurtosis", "bowley_skewness", "moors_kurtosis", "median"}) {
    rows.emplace_back(key, present_text(r.at(key)));
  }
  for (const auto& m : r.at("mgf")) {
    rows.emplace_back("mgf(" + format_double(m.at("t").get<double>()) + ")", present_text(m));
  }
  for (const auto& m : r.at("renyi_entropy")) {
    rows.emplace_back("renyi(" + format_double(m.at("delta").get<double>()) + ")", present_text(m));
  }
  const json& lm = r.at("l_moments");
  if (!lm.value("exists", true)) {
    rows.emplace_back("l_moments", present_text(lm));
  } else {
    int i = 1;
    for (const auto& v : lm.at("values")) rows.emplace_back("lambda_" + std::to_string(i++), format_double(number_from_json(v)));
  }
  const json& md = r.at("mean_deviations");
  if (!md.value("exists", true)) {
    rows.emplace_back("mean_deviations", present_text(md));
  } else {
    rows.emplace_back("mean_deviation_about_mean", format_double(number_from_json(md.at("about_mean"))));
    rows.emplace_back("mean_deviation_about_median", format_double(number_from_json(md.at("about_median"))));
  }
  std::size_t w = 0;
  for (const auto& [k, v] : rows) w = std::max(w, k.size());
  std::ostringstream os;
  const KwPParams p = r.at("params").get<KwPParams>();
  os << "Kw-P(beta=" << format_double(p.beta) << ", k=" << format_double(p.k) << ", a=" << format_double(p.a)
     << ", b=" << format_double(p.b) << ")\n";
  for (const auto& [k, v] : rows) os << std::left << std::setw(static_cast<int>(w) + 2) << k << v << "\n";
  return os.str();
}

// ---- option sets ----------------------------------------------------------

struct DataFlags {
  std::string data = "wheaton";
  void add(CLI::App* app) {
    app->add_option("--data", data, "'wheaton' for the embedded data or a CSV path")->capture_default_str();
  }
};

struct FitFlags {
  std::string beta_rule = "eps-relative";
  std::uint64_t seed = 0;
  int starts = 0;
  void add(CLI::App* app, const std::string& default_rule) {
    beta_rule = default_rule;
    app->add_option("--beta-rule", beta_rule, "eps-relative[:eps] | half-round:<delta> | exact-min")
        ->capture_default_str();
    app->add_option("--seed", seed, "seed for random extra starts")->capture_default_str();
    app->add_option("--starts", starts, "multi-start points (0 = full grid)")->capture_default_str();
  }
};

int exit_for(const std::exception_ptr& ep, std::ostream& err) {
  try {
    std::rethrow_exception(ep);
  } catch (const InputError& e) {
    err << "kwp: input error: " << e.what() << "\n";
    return kInputError;
  } catch (const ConvergenceError& e) {
    err << "kwp: not converged: " << e.what() << "\n";
    return kNotConverged;
  } catch (const DomainError& e) {
    err << "kwp: domain error: " << e.what() << "\n";
    return kDomainError;
  } catch (const json::exception& e) {
    err << "kwp: input error: " << e.what() << "\n";
    return kInputError;
  } catch (const Error& e) {
    err << "kwp: error: " << e.what() << "\n";
    return kInputError;
  }
}

}  // namespace

json properties_report(const KwPParams& p, int max_moment, const std::vector<double>& deltas,
                       const std::vector<double>& mgf_points, int l_count) {
  p.validate();
  json r;
  r["params"] = p;
  r["tail_index"] = number_to_json(p.b * p.k);
  json moments = json::array();
  std::vector<double> raw;
  for (int k = 1; k <= max_moment; ++k) {
    json m = guarded([&] { return evaluated(moment(k, p)); });
    m["r"] = k;
    if (m.value("exists", false) && m.at("value").is_number()) raw.push_back(m.at("value").get<double>());
    moments.push_back(m);
  }
  r["moments"] = moments;
  const std::string tail = "requires order < bk = " + format_double(p.b * p.k);
  auto central = [&](std::size_t need, const std::function<double()>& f) -> json {
    if (raw.size() < need) return missing("moment of order " + std::to_string(need) + " does not exist (" + tail + ")");
    return scalar(f());
  };
  const double mu = raw.empty() ? 0.0 : raw[0];
  const double var = raw.size() >= 2 ? raw[1] - mu * mu : 0.0;
  r["mean"] = central(1, [&] { return mu; });
  r["variance"] = central(2, [&] { return var; });
  r["skewness"] = central(3, [&] { return (raw[2] - 3 * mu * raw[1] + 2 * mu * mu * mu) / std::pow(var, 1.5); });
  r["kurtosis"] = central(4, [&] {
    return (raw[3] - 4 * mu * raw[2] + 6 * mu * mu * raw[1] - 3 * mu * mu * mu * mu) / (var * var);
  });
  r["median"] = scalar(kwp_quantile(0.5, p));
  r["bowley_skewness"] = scalar(bowley_skewness(p));
  r["moors_kurtosis"] = scalar(moors_kurtosis(p));
  json mg = json::array();
  for (double t : mgf_points) {
    json m = guarded([&] { return evaluated(mgf(t, p)); });
    m["t"] = t;
    mg.push_back(m);
  }
  r["mgf"] = mg;
  json re = json::array();
  for (double d : deltas) {
    json m = guarded([&] { return evaluated(renyi_entropy(d, p)); });
    m["delta"] = d;
    re.push_back(m);
  }
  r["renyi_entropy"] = re;
  r["l_moments"] = guarded([&] {
    json j{{"exists", true}, {"values", json::array()}};
    for (double v : l_moments(l_count, p)) j["values"].push_back(number_to_json(v));
    return j;
  });
  r["mean_deviations"] = guarded([&] {
    const MeanDeviations d = mean_deviations(p);
    return json{{"exists", true},
                {"about_mean", number_to_json(d.about_mean)},
                {"about_median", number_to_json(d.about_median)}};
  });
  return r;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Kumaraswamy-Pareto distribution toolkit", "kwp"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "kwp 0.1.0");

  int status = kOk;
  std::function<void()> action;

  // describe
  Common c_desc;
  DataFlags d_desc;
  auto* describe_cmd = app.add_subcommand("describe", "descriptive statistics of a dataset");
  d_desc.add(describe_cmd);
  add_common(describe_cmd, c_desc, {"text", "json"});
  describe_cmd->callback([&] {
    action = [&] {
      const Dataset d = load_dataset(d_desc.data);
      const DescriptiveStats s = describe(d.values);
      json j = s;
      j["dataset_id"] = d.id;
      emit(c_desc, out, c_desc.format == "json" ? dump(j) : describe_text(s));
    };
  });

  // fit
  Common c_fit;
  DataFlags d_fit;
  FitFlags f_fit;
  std::string model;
  auto* fit_cmd = app.add_subcommand("fit", "maximum-likelihood fit of one model");
  d_fit.add(fit_cmd);
  f_fit.add(fit_cmd, "eps-relative");
  fit_cmd->add_option("--model", model, "pareto | ep | bp | kwp")->required();
  add_common(fit_cmd, c_fit, {"text", "json"});
  fit_cmd->callback([&] {
    action = [&] {
      const ModelKind kind = parse_model(model);
      const Dataset d = load_dataset(d_fit.data);
      const FitResult f = fit(kind, Sample(d.values), fit_options(f_fit.beta_rule, f_fit.starts, f_fit.seed));
      emit(c_fit, out, c_fit.format == "json" ? dump(json(f)) : fit_text(f));
      if (!f.converged) status = kNotConverged;
    };
  });

  // compare
  Common c_cmp;
  DataFlags d_cmp;
  FitFlags f_cmp;
  std::vector<std::string> models{"pareto", "ep", "bp", "kwp"};
  auto* compare_cmd = app.add_subcommand("compare", "fit several models and rank them by AIC");
  d_cmp.add(compare_cmd);
  f_cmp.add(compare_cmd, "eps-relative");
  compare_cmd->add_option("--model", models, "models to compare (repeat or comma-separate)")
      ->delimiter(',')
      ->capture_default_str();
  add_common(compare_cmd, c_cmp, {"text", "json"});
  compare_cmd->callback([&] {
    action = [&] {
      std::vector<ModelKind> kinds;
      for (const auto& m : models) kinds.push_back(parse_model(m));
      const Dataset d = load_dataset(d_cmp.data);
      const ComparisonReport r = compare(Sample(d.values), kinds, fit_options(f_cmp.beta_rule, f_cmp.starts, f_cmp.seed), d.id);
      emit(c_cmp, out, c_cmp.format == "json" ? dump(json(r)) : comparison_text(r));
    };
  });

  // sample
  Common c_smp;
  ParamFlags p_smp;
  std::size_t n_draws = 100;
  std::uint64_t seed_smp = 1;
  auto* sample_cmd = app.add_subcommand("sample", "inverse-transform draws, one per line");
  p_smp.add(sample_cmd, {1.5, 1.5, 1.5, 3.5});
  sample_cmd->add_option("--n", n_draws, "number of draws")->capture_default_str();
  sample_cmd->add_option("--seed", seed_smp, "generator seed")->capture_default_str();
  add_common(sample_cmd, c_smp, {"text", "csv", "json"});
  sample_cmd->callback([&] {
    action = [&] {
      p_smp.p.validate();
      Xoshiro256 gen(seed_smp);
      const std::vector<double> x = kwp_draw(n_draws, p_smp.p, gen);
      if (c_smp.format == "json") {
        json j{{"params", p_smp.p}, {"seed", seed_smp}, {"values", json::array()}};
        for (double v : x) j["values"].push_back(number_to_json(v));
        emit(c_smp, out, dump(j));
        return;
      }
      std::string s;
      for (double v : x) s += format_double(v) + "\n";
      emit(c_smp, out, s);
    };
  });

  // curves
  Common c_crv;
  ParamFlags p_crv;
  double from = std::nan("");
  double to = std::nan("");
  std::size_t steps = 200;
  auto* curves_cmd = app.add_subcommand("curves", "pdf, cdf and hazard on an even grid (CSV)");
  p_crv.add(curves_cmd, {1.0, 1.0, 2.0, 1.0});
  curves_cmd->add_option("--from", from, "grid start (default beta)");
  curves_cmd->add_option("--to", to, "grid end (default the 0.99 quantile)");
  curves_cmd->add_option("--steps", steps, "grid intervals")->capture_default_str();
  add_common(curves_cmd, c_crv, {"text", "csv", "json"});
  curves_cmd->callback([&] {
    action = [&] {
      const KwPParams& p = p_crv.p;
      p.validate();
      const double lo = std::isnan(from) ? p.beta : from;
      const double hi = std::isnan(to) ? kwp_quantile(0.99, p) : to;
      if (lo < p.beta) throw DomainError("curves: range starts below beta = " + format_double(p.beta));
      if (!(hi > lo)) throw InputError("curves: --to must exceed --from");
      if (steps < 1) throw InputError("curves: --steps must be at least 1");
      json rows = json::array();
      std::string csv = "x,pdf,cdf,hazard\n";
      for (std::size_t i = 0; i <= steps; ++i) {
        const double x = i == steps ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps);
        const double f = kwp_pdf(x, p), F = kwp_cdf(x, p), h = kwp_hazard(x, p);
        csv += format_double(x) + "," + format_double(f) + "," + format_double(F) + "," + format_double(h) + "\n";
        rows.push_back(json{{"x", number_to_json(x)}, {"pdf", number_to_json(f)}, {"cdf", number_to_json(F)},
                            {"hazard", number_to_json(h)}});
      }
      emit(c_crv, out, c_crv.format == "json" ? dump(json{{"params", p}, {"points", rows}}) : csv);
    };
  });

  // properties
  Common c_prp;
  ParamFlags p_prp;
  int max_moment = 4;
  std::vector<double> deltas{0.5, 2.0};
  std::vector<double> mgf_points{-1.0};
  int l_count = 4;
  auto* prop_cmd = app.add_subcommand("properties", "moments, entropies, L-moments and mean deviations");
  p_prp.add(prop_cmd, {1.0, 1.5, 2.0, 2.0});
  prop_cmd->add_option("--moments", max_moment, "highest raw moment")->capture_default_str();
  prop_cmd->add_option("--delta", deltas, "Renyi orders")->delimiter(',')->capture_default_str();
  prop_cmd->add_option("--t", mgf_points, "mgf arguments (t < 0)")->delimiter(',')->capture_default_str();
  prop_cmd->add_option("--l-moments", l_count, "number of L-moments")->capture_default_str();
  add_common(prop_cmd, c_prp, {"text", "json"});
  prop_cmd->callback([&] {
    action = [&] {
      if (max_moment < 1 || l_count < 1) throw InputError("properties: --moments and --l-moments must be >= 1");
      const json r = properties_report(p_prp.p, max_moment, deltas, mgf_points, l_count);
      emit(c_prp, out, c_prp.format == "json" ? dump(r) : properties_text(r));
    };
  });

  // mc-study
  Common c_mc;
  ParamFlags p_mc;
  StudyConfig study;
  std::string mc_rule = "exact-min";
  std::string records_path;
  int mc_starts = 0;
  auto* mc_cmd = app.add_subcommand("mc-study", "Monte Carlo bias study of the Kw-P estimators");
  p_mc.add(mc_cmd, study.truth);
  mc_cmd->add_option("--n", study.sample_sizes, "sample sizes")->delimiter(',')->capture_default_str();
  mc_cmd->add_option("--replications", study.replications, "replications per sample size")->capture_default_str();
  mc_cmd->add_option("--seed", study.seed, "study seed")->capture_default_str();
  mc_cmd->add_option("--beta-rule", mc_rule, "beta rule used in each fit")->capture_default_str();
  mc_cmd->add_option("--starts", mc_starts, "multi-start points per fit (0 = full grid)")->capture_default_str();
  mc_cmd->add_option("--threads", study.threads, "worker threads (0 = all cores)")->capture_default_str();
  mc_cmd->add_option("--records", records_path, "also write per-replication estimates to this CSV");
  add_common(mc_cmd, c_mc, {"text", "csv", "json"});
  mc_cmd->callback([&] {
    action = [&] {
      study.truth = p_mc.p;
      study.beta_rule = BetaRule::parse(mc_rule);
      study.fit = fit_options(mc_rule, mc_starts, study.seed);
      const StudyResult r = run_study(study);
      const std::string text = c_mc.format == "json"  ? dump(json(r))
                               : c_mc.format == "csv" ? study_csv(r)
                                                      : study_text(r);
      emit(c_mc, out, text);
      if (!records_path.empty()) {
        std::ofstream f(records_path);
        if (!f) throw InputError("cannot write to '" + records_path + "'");
        f << study_records_csv(r);
      }
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    // Help and version requests exit 0; anything else is a usage error.
    return app.exit(e, out, err) == 0 ? kOk : kInputError;
  }

  try {
    if (action) action();
  } catch (...) {
    return exit_for(std::current_exception(), err);
  }
  return status;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace kwp::cli
