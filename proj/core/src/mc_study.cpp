#include "kwp/mc_study.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>
#include <thread>

#include "kwp/distribution.hpp"
#include "kwp/errors.hpp"
#include "kwp/random.hpp"
#include "kwp/series.hpp"

namespace kwp {

void StudyConfig::validate() const {
  truth.validate();
  if (replications < 1) throw InputError("mc-study: replications must be at least 1");
  if (sample_sizes.empty()) throw InputError("mc-study: no sample sizes given");
  for (std::size_t n : sample_sizes) {
    if (n < 10) throw InputError("mc-study: sample sizes must be at least 10");
  }
}

const char* to_string(ReplicationStatus s) noexcept {
  switch (s) {
    case ReplicationStatus::Used: return "used";
    case ReplicationStatus::NotConverged: return "not_converged";
    case ReplicationStatus::Boundary: return "boundary";
    case ReplicationStatus::Failed: return "failed";
  }
  return "";
}

namespace {

ReplicationRecord replicate(const StudyConfig& cfg, const FitOptions& opts, std::size_t n, std::size_t index) {
  ReplicationRecord rec;
  rec.n = n;
  rec.index = index;
  Xoshiro256 gen = Xoshiro256::stream(cfg.seed, n, index);
  try {
    const Sample s(kwp_draw(n, cfg.truth, gen));
    const FitResult f = fit(ModelKind::KwP, s, opts);
    rec.estimate = f.params;
    rec.loglik = f.loglik;
    rec.status = !f.converged ? ReplicationStatus::NotConverged
                 : f.at_boundary ? ReplicationStatus::Boundary
                                 : ReplicationStatus::Used;
  } catch (const Error&) {
    rec.status = ReplicationStatus::Failed;
  }
  return rec;
}

double field(const KwPParams& p, int i) {
  switch (i) {
    case 0: return p.beta;
    case 1: return p.k;
    case 2: return p.a;
    default: return p.b;
  }
}

std::string fmt(double v, int precision = 17) {
  std::ostringstream os;
  os << std::setprecision(precision) << v;
  return os.str();
}

}  // namespace

StudyResult run_study(const StudyConfig& cfg) {
  cfg.validate();
  FitOptions opts = cfg.fit;
  opts.beta_rule = cfg.beta_rule;

  StudyResult out;
  out.config = cfg;
  const std::size_t per = cfg.replications;
  const std::size_t total = per * cfg.sample_sizes.size();
  out.records.resize(total);

  unsigned threads = cfg.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : cfg.threads;
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, total));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t job = next++; job < total; job = next++) {
      const std::size_t n = cfg.sample_sizes[job / per];
      out.records[job] = replicate(cfg, opts, n, job % per);
    }
  };
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }

  static const char* names[4] = {"beta", "k", "a", "b"};
  for (std::size_t si = 0; si < cfg.sample_sizes.size(); ++si) {
    SizeSummary sz;
    sz.n = cfg.sample_sizes[si];
    sz.replications = per;
    std::array<NeumaierSum, 4> sum;
    sz.min_beta_hat = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < per; ++r) {
      const ReplicationRecord& rec = out.records[si * per + r];
      switch (rec.status) {
        case ReplicationStatus::Used: ++sz.used; break;
        case ReplicationStatus::NotConverged: ++sz.not_converged; break;
        case ReplicationStatus::Boundary: ++sz.boundary; break;
        case ReplicationStatus::Failed: ++sz.failed; break;
      }
      if (rec.status != ReplicationStatus::Failed) sz.min_beta_hat = std::min(sz.min_beta_hat, rec.estimate.beta);
      if (rec.status == ReplicationStatus::Used) {
        for (int i = 0; i < 4; ++i) sum[i].add(field(rec.estimate, i));
      }
    }
    for (int i = 0; i < 4; ++i) {
      ParameterSummary& ps = sz.params[i];
      ps.name = names[i];
      ps.true_value = field(cfg.truth, i);
      if (sz.used == 0) {
        ps.mean = ps.bias = ps.sd = std::numeric_limits<double>::quiet_NaN();
        continue;
      }
      ps.mean = sum[i].value() / static_cast<double>(sz.used);
      ps.bias = ps.mean - ps.true_value;
      NeumaierSum ss;
      for (std::size_t r = 0; r < per; ++r) {
        const ReplicationRecord& rec = out.records[si * per + r];
        if (rec.status != ReplicationStatus::Used) continue;
        const double dv = field(rec.estimate, i) - ps.mean;
        ss.add(dv * dv);
      }
      ps.sd = sz.used > 1 ? std::sqrt(ss.value() / static_cast<double>(sz.used - 1)) : 0.0;
    }
    out.sizes.push_back(sz);
  }
  return out;
}

std::string study_csv(const StudyResult& r) {
  std::ostringstream os;
  os << "n,parameter,true,mean,bias,sd,replications,used,not_converged,boundary,failed\n";
  for (const auto& sz : r.sizes) {
    for (const auto& p : sz.params) {
      os << sz.n << ',' << p.name << ',' << fmt(p.true_value) << ',' << fmt(p.mean) << ',' << fmt(p.bias) << ','
         << fmt(p.sd) << ',' << sz.replications << ',' << sz.used << ',' << sz.not_converged << ',' << sz.boundary
         << ',' << sz.failed << '\n';
    }
  }
  return os.str();
}

std::string study_text(const StudyResult& r) {
  std::ostringstream os;
  os << "Monte Carlo study: truth (beta, k, a, b) = (" << fmt(r.config.truth.beta, 6) << ", "
     << fmt(r.config.truth.k, 6) << ", " << fmt(r.config.truth.a, 6) << ", " << fmt(r.config.truth.b, 6)
     << "), beta rule " << r.config.beta_rule.to_string() << ", seed " << r.config.seed << "\n";
  os << "bias = mean estimate - true value; means over replications that converged away from the boundary\n\n";
  os << std::left << std::setw(7) << "n" << std::setw(7) << "param" << std::right << std::setw(12) << "true"
     << std::setw(14) << "mean" << std::setw(14) << "bias" << std::setw(14) << "sd" << "\n";
  for (const auto& sz : r.sizes) {
    for (const auto& p : sz.params) {
      os << std::left << std::setw(7) << sz.n << std::setw(7) << p.name << std::right << std::fixed
         << std::setprecision(4) << std::setw(12) << p.true_value << std::setw(14) << p.mean << std::setw(14)
         << p.bias << std::setw(14) << p.sd << "\n";
      os.unsetf(std::ios::fixed);
    }
    os << "       used " << sz.used << " of " << sz.replications << " (not converged " << sz.not_converged
       << ", boundary " << sz.boundary << ", failed " << sz.failed << ")\n";
  }
  return os.str();
}

}  // namespace kwp
