#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "rct/field.hpp"
#include "rct/types.hpp"

namespace rct {

struct ChainConfig {
  std::uint64_t seed = 0;
  long length = 10000;      // total Metropolis steps
  long burn_in = 1000;      // discarded prefix; adaptation happens only here
  long thin = 1;            // keep every thin-th post-burn-in state
  double proposal_sigma = 0.1;
  bool adapt = true;        // tune sigma toward acceptance in [0.25, 0.40]

  void validate() const {
    if (length <= 0 || burn_in < 0 || burn_in >= length)
      throw ConfigError("need 0 <= burn_in < length");
    if (thin < 1) throw ConfigError("thin must be >= 1");
    if (!(proposal_sigma > 0.0)) throw ConfigError("proposal_sigma must be positive");
  }
};

struct ChainResult {
  std::vector<EigenConfig> samples;  // floor((length-burn_in)/thin) entries
  double acceptance_rate = 0.0;      // post-burn-in only
  double final_sigma = 0.0;
};

using LogTarget = std::function<double(const EigenConfig&)>;

// Metropolis acceptance probability min(1, exp(proposal - current)); any
// non-finite proposal value (vanishing or blowing-up density) is rejected.
double accept_probability(double current_log, double proposal_log);

// Random-walk Metropolis with isotropic Gaussian proposals on every real
// coordinate of the configuration (n*d for real-valued configs, 2*n*d
// otherwise). Deterministic given cfg.seed. Throws InitNotFinite when the
// target is not finite at init, ZeroAcceptance when the post-burn-in
// acceptance rate falls below 1e-3.
ChainResult sample_chain(const LogTarget& target, const EigenConfig& init,
                         const ChainConfig& cfg);

// One draw of the 2x2 joint triangular-coordinates law
// exp(-gamma(|l1|^2+|l2|^2)) exp(-gamma |a|^2 |D|^2) |D|^4 (1+2|a|^2)^{d-1}.
struct Joint2x2Sample {
  Eigen::VectorXcd lambda1, lambda2;
  cplx alpha;
};

struct Joint2x2Result {
  std::vector<Joint2x2Sample> samples;
  double acceptance_rate = 0.0;
  double final_sigma = 0.0;
};

Joint2x2Result sample_2x2_joint(int d, double gamma, const ChainConfig& cfg);

// Fraction of chain states y with K_n(y)/n^2 <= energy_estimate + eta, where
// K_n is k_n_functional and energy_estimate approximates the equilibrium
// energy (callers obtain it from minimize_energy).
double ldp_concentration(const std::vector<EigenConfig>& chain,
                         const ExternalField& Q, double eta,
                         double energy_estimate);

}  // namespace rct
