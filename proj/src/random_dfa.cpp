#include "bifix/random_dfa.hpp"

#include <algorithm>
#include <numeric>

namespace bifix {

BifixDfaSampler::BifixDfaSampler(int n)
    : n_(n),
      bbf_pool_(enumerate_bbf(n, /*allow_large=*/true)),
      wge6_pool_(enumerate_wge6(n)) {}

namespace {

// Permutation chain through all middle states ending at the final state;
// generates reachability and pairwise distinguishability on its own.
Transformation random_chain(int n, std::mt19937_64& rng) {
  std::vector<State> order(static_cast<std::size_t>(n - 3));
  std::iota(order.begin(), order.end(), 1);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<State> images(static_cast<std::size_t>(n), n - 1);
  images[0] = order.front();
  for (std::size_t i = 0; i + 1 < order.size(); ++i) {
    images[static_cast<std::size_t>(order[i])] = order[i + 1];
  }
  images[static_cast<std::size_t>(order.back())] = n - 2;
  return Transformation(std::move(images));
}

}  // namespace

std::optional<Dfa> BifixDfaSampler::sample(int letters, std::mt19937_64& rng,
                                           int max_attempts) const {
  std::uniform_int_distribution<std::size_t> pick_bbf(0, bbf_pool_.size() - 1);
  std::uniform_int_distribution<std::size_t> pick_wge6(0, wge6_pool_.size() - 1);
  std::uniform_int_distribution<int> pick_mode(0, 2);

  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    const int mode = pick_mode(rng);
    std::vector<Transformation> delta;
    delta.reserve(static_cast<std::size_t>(letters));
    if (mode == 0) {
      // Chain plus arbitrary candidates: collision-heavy semigroups.
      delta.push_back(random_chain(n_, rng));
      for (int a = 1; a < letters; ++a) delta.push_back(bbf_pool_[pick_bbf(rng)]);
    } else if (mode == 1) {
      // Only members of the three maximal families: no colliding pairs.
      for (int a = 0; a < letters; ++a) delta.push_back(wge6_pool_[pick_wge6(rng)]);
    } else {
      for (int a = 0; a < letters; ++a) delta.push_back(bbf_pool_[pick_bbf(rng)]);
    }
    Dfa d(n_, std::move(delta), 0, {n_ - 2});
    if (!is_minimal(d)) continue;
    if (!bifix_report(d).bifix_free()) continue;
    return d;
  }
  return std::nullopt;
}

}  // namespace bifix
