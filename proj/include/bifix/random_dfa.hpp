#pragma once

#include <optional>
#include <random>

#include "bifix/dfa.hpp"
#include "bifix/semigroup.hpp"

namespace bifix {

/// Rejection sampler for minimal DFAs of bifix-free languages with the fixed
/// state conventions (initial 0, final n-2, empty n-1). Letters are drawn
/// from the necessary-condition set; draws mixing in a full middle-state
/// chain keep the acceptance rate workable and exercise semigroups with
/// colliding pairs, plain draws from the three maximal families exercise
/// collision-free ones.
class BifixDfaSampler {
 public:
  explicit BifixDfaSampler(int n);

  /// One accepted DFA, or empty after max_attempts rejections. Deterministic
  /// for a given engine state.
  std::optional<Dfa> sample(int letters, std::mt19937_64& rng,
                            int max_attempts = 1'000'000) const;

  int n() const { return n_; }

 private:
  int n_;
  Semigroup bbf_pool_;
  Semigroup wge6_pool_;
};

}  // namespace bifix
