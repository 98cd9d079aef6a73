#include "rct/mcmc.hpp"

#include <cmath>
#include <random>

#include "rct/density.hpp"
#include "rct/rng.hpp"

namespace rct {

double accept_probability(double current_log, double proposal_log) {
  if (!std::isfinite(proposal_log)) return 0.0;
  double delta = proposal_log - current_log;
  return delta >= 0.0 ? 1.0 : std::exp(delta);
}

namespace {

struct RawResult {
  std::vector<Eigen::VectorXd> samples;
  double acceptance_rate = 0.0;
  double final_sigma = 0.0;
};

// Shared RWM core over flat real coordinate vectors.
RawResult run_rwm(Eigen::VectorXd x,
                  const std::function<double(const Eigen::VectorXd&)>& logf,
                  const ChainConfig& cfg) {
  cfg.validate();
  double fx = logf(x);
  if (!std::isfinite(fx)) throw InitNotFinite("target not finite at init state");

  auto rng = rng_stream(cfg.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  double sigma = cfg.proposal_sigma;
  const long adapt_window = 64;
  long window_accepts = 0;
  long post_accepts = 0, post_steps = 0;

  RawResult out;
  out.samples.reserve(static_cast<size_t>((cfg.length - cfg.burn_in) / cfg.thin));
  Eigen::VectorXd prop(x.size());

  for (long step = 1; step <= cfg.length; ++step) {
    for (Eigen::Index i = 0; i < x.size(); ++i) prop[i] = x[i] + sigma * gauss(rng);
    double fp = logf(prop);
    double u = unif(rng);
    bool accepted = u < accept_probability(fx, fp);
    if (accepted) {
      x.swap(prop);
      fx = fp;
    }

    if (step <= cfg.burn_in) {
      if (cfg.adapt) {
        window_accepts += accepted ? 1 : 0;
        if (step % adapt_window == 0) {
          double rate = static_cast<double>(window_accepts) / adapt_window;
          if (rate < 0.25) sigma *= 0.8;
          else if (rate > 0.40) sigma *= 1.25;
          window_accepts = 0;
        }
      }
    } else {
      post_steps += 1;
      post_accepts += accepted ? 1 : 0;
      if ((step - cfg.burn_in) % cfg.thin == 0) out.samples.push_back(x);
    }
  }

  out.acceptance_rate =
      post_steps > 0 ? static_cast<double>(post_accepts) / post_steps : 0.0;
  out.final_sigma = sigma;
  if (post_steps > 0 && out.acceptance_rate < 1e-3)
    throw ZeroAcceptance("post-burn-in acceptance " +
                         std::to_string(out.acceptance_rate) +
                         "; proposal scale is mis-tuned");
  return out;
}

Eigen::VectorXd flatten(const EigenConfig& cfg) {
  const int n = cfg.n(), d = cfg.d();
  Eigen::VectorXd v(cfg.real_valued ? n * d : 2 * n * d);
  Eigen::Index k = 0;
  for (int i = 0; i < n; ++i)
    for (int c = 0; c < d; ++c) {
      v[k++] = cfg.points(i, c).real();
      if (!cfg.real_valued) v[k++] = cfg.points(i, c).imag();
    }
  return v;
}

EigenConfig unflatten(const Eigen::VectorXd& v, int n, int d, bool real_valued) {
  EigenConfig cfg;
  cfg.points.resize(n, d);
  cfg.real_valued = real_valued;
  Eigen::Index k = 0;
  for (int i = 0; i < n; ++i)
    for (int c = 0; c < d; ++c) {
      double re = v[k++];
      double im = real_valued ? 0.0 : v[k++];
      cfg.points(i, c) = cplx(re, im);
    }
  return cfg;
}

}  // namespace

ChainResult sample_chain(const LogTarget& target, const EigenConfig& init,
                         const ChainConfig& cfg) {
  if (init.n() < 1) throw ShapeMismatch("empty init configuration");
  if (!init.finite()) throw InitNotFinite("init configuration has non-finite entries");
  const int n = init.n(), d = init.d();
  const bool real_valued = init.real_valued;

  auto logf = [&](const Eigen::VectorXd& v) {
    return target(unflatten(v, n, d, real_valued));
  };
  RawResult raw = run_rwm(flatten(init), logf, cfg);

  ChainResult out;
  out.samples.reserve(raw.samples.size());
  for (const auto& v : raw.samples) out.samples.push_back(unflatten(v, n, d, real_valued));
  out.acceptance_rate = raw.acceptance_rate;
  out.final_sigma = raw.final_sigma;
  return out;
}

Joint2x2Result sample_2x2_joint(int d, double gamma, const ChainConfig& cfg) {
  if (d < 1) throw ShapeMismatch("d must be positive");
  if (!(gamma > 0.0)) throw ConfigError("gamma must be positive");

  // Flat layout: re/im pairs of lambda1 (d), lambda2 (d), alpha (1).
  const int dim = 2 * (2 * d + 1);
  auto logf = [d, gamma](const Eigen::VectorXd& v) {
    double norms = 0.0, delta_sq = 0.0;
    for (int c = 0; c < d; ++c) {
      double re1 = v[2 * c], im1 = v[2 * c + 1];
      double re2 = v[2 * (d + c)], im2 = v[2 * (d + c) + 1];
      norms += re1 * re1 + im1 * im1 + re2 * re2 + im2 * im2;
      delta_sq += (re2 - re1) * (re2 - re1) + (im2 - im1) * (im2 - im1);
    }
    if (delta_sq == 0.0) return -std::numeric_limits<double>::infinity();
    double alpha_sq = v[4 * d] * v[4 * d] + v[4 * d + 1] * v[4 * d + 1];
    return -gamma * norms - gamma * alpha_sq * delta_sq + 2.0 * std::log(delta_sq) +
           (d - 1) * std::log1p(2.0 * alpha_sq);
  };

  // Init: eigenvalue coordinates i.i.d. Gaussian at the field scale, alpha
  // likewise; the repulsion makes a coincident start a probability-zero event.
  auto rng = rng_stream(cfg.seed, 1);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double scale = 1.0 / std::sqrt(2.0 * gamma);
  Eigen::VectorXd x0(dim);
  for (int i = 0; i < dim; ++i) x0[i] = scale * gauss(rng);

  RawResult raw = run_rwm(x0, logf, cfg);

  Joint2x2Result out;
  out.samples.reserve(raw.samples.size());
  for (const auto& v : raw.samples) {
    Joint2x2Sample s;
    s.lambda1.resize(d);
    s.lambda2.resize(d);
    for (int c = 0; c < d; ++c) {
      s.lambda1[c] = cplx(v[2 * c], v[2 * c + 1]);
      s.lambda2[c] = cplx(v[2 * (d + c)], v[2 * (d + c) + 1]);
    }
    s.alpha = cplx(v[4 * d], v[4 * d + 1]);
    out.samples.push_back(std::move(s));
  }
  out.acceptance_rate = raw.acceptance_rate;
  out.final_sigma = raw.final_sigma;
  return out;
}

double ldp_concentration(const std::vector<EigenConfig>& chain,
                         const ExternalField& Q, double eta,
                         double energy_estimate) {
  if (chain.empty()) throw EmptySamples("concentration needs a non-empty chain");
  long hits = 0;
  for (const auto& y : chain) {
    double n2 = static_cast<double>(y.n()) * y.n();
    double k = k_n_functional(y, Q) / n2;
    if (k <= energy_estimate + eta) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(chain.size());
}

}  // namespace rct
