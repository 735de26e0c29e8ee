#include "noisy_ea/drift.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "chunked.hpp"
#include "noisy_ea/bit_probabilities.hpp"
#include "noisy_ea/operators.hpp"

namespace noisy_ea {

namespace {

void validate_distance(int d, int n) {
  if (d < 1 || d > n) {
    throw std::invalid_argument("distance d must satisfy 1 <= d <= n (got d=" +
                                std::to_string(d) + ", n=" + std::to_string(n) + ")");
  }
}

struct WinnerMoments {
  IntegerMoments plus;
  IntegerMoments minus;

  void add(int d, int winner_distance) {
    plus.add(std::max(0, d - winner_distance));
    minus.add(std::max(0, winner_distance - d));
  }
  void merge(const WinnerMoments& o) {
    plus.merge(o.plus);
    minus.merge(o.minus);
  }
};

struct SelectionMoments {
  WinnerMoments winner;
  IntegerMoments com;
  IntegerMoments plus_sel;

  void merge(const SelectionMoments& o) {
    winner.merge(o.winner);
    com.merge(o.com);
    plus_sel.merge(o.plus_sel);
  }
};

double binomial_pmf(int trials, int k, double p) {
  if (k < 0 || k > trials) return 0.0;
  if (p <= 0.0) return k == 0 ? 1.0 : 0.0;
  if (p >= 1.0) return k == trials ? 1.0 : 0.0;
  const double log_choose =
      std::lgamma(trials + 1.0) - std::lgamma(k + 1.0) - std::lgamma(trials - k + 1.0);
  return std::exp(log_choose + k * std::log(p) + (trials - k) * std::log1p(-p));
}

// Law of d - Bin(d, p) + Bin(n - d, p): the distance after flipping every bit
// of a distance-d string independently with probability p.
std::vector<double> flipped_distance_pmf(int n, int d, double p) {
  std::vector<double> pmf(static_cast<std::size_t>(n) + 1, 0.0);
  for (int gained = 0; gained <= d; ++gained) {
    const double pg = binomial_pmf(d, gained, p);
    if (pg == 0.0) continue;
    for (int lost = 0; lost <= n - d; ++lost) {
      pmf[static_cast<std::size_t>(d - gained + lost)] += pg * binomial_pmf(n - d, lost, p);
    }
  }
  return pmf;
}

// tail[m] = P[X >= m] for m in [0, n + 1].
std::vector<double> upper_tail(const std::vector<double>& pmf) {
  std::vector<double> tail(pmf.size() + 1, 0.0);
  for (std::size_t m = pmf.size(); m-- > 0;) tail[m] = tail[m + 1] + pmf[m];
  return tail;
}

DriftEstimate exact_result(double plus, double minus, double com, double plus_sel) {
  DriftEstimate e;
  e.delta_plus = {plus, 0.0};
  e.delta_minus = {minus, 0.0};
  e.delta_com = Estimate{com, 0.0};
  e.delta_plus_sel = Estimate{plus_sel, 0.0};
  e.exact = true;
  return e;
}

}  // namespace

DriftEstimate estimate_noisy_winner_drift(int d, const AlgoConfig& config, std::uint64_t samples,
                                          RandomSource& rng, DriftPath path) {
  AlgoConfig c = config;
  c.mode = Mode::plus;
  c.validate();
  validate_distance(d, c.n);
  if (samples < 1000) throw std::invalid_argument("at least 10^3 samples are required");

  const int n = c.n;
  const int lambda = c.lambda;
  const std::uint64_t master = rng.next_u64();
  WinnerMoments moments;

  if (path == DriftPath::distance) {
    const double rate = combined_rate({n, c.chi, c.q}) / n;
    const BinomialSampler improve(static_cast<std::uint64_t>(d), rate);
    const BinomialSampler worsen(static_cast<std::uint64_t>(n - d), rate);
    moments = detail::chunked_monte_carlo<WinnerMoments>(
        samples, master, [&](WinnerMoments& acc, RandomSource& r, std::uint64_t count) {
          for (std::uint64_t s = 0; s < count; ++s) {
            int best = n + 1;
            for (int i = 0; i < lambda; ++i) {
              const auto gained = static_cast<int>(improve(r));
              const auto lost = static_cast<int>(worsen(r));
              best = std::min(best, d - gained + lost);
            }
            acc.add(d, best);
          }
        });
  } else {
    const BitString parent = BitString::with_distance(static_cast<std::size_t>(n),
                                                      static_cast<std::size_t>(d));
    moments = detail::chunked_monte_carlo<WinnerMoments>(
        samples, master, [&](WinnerMoments& acc, RandomSource& r, std::uint64_t count) {
          for (std::uint64_t s = 0; s < count; ++s) {
            int best = n + 1;
            for (int i = 0; i < lambda; ++i) {
              const BitString noisy = apply_prior_noise(standard_bit_mutation(parent, c.chi, r), c.q, r);
              best = std::min(best, distance_to_optimum(noisy));
            }
            acc.add(d, best);
          }
        });
  }

  DriftEstimate e;
  e.delta_plus = moments.plus.estimate();
  e.delta_minus = moments.minus.estimate();
  e.samples = moments.plus.count();
  return e;
}

DriftEstimate estimate_selection_drift(int d, const AlgoConfig& config, std::uint64_t samples,
                                       RandomSource& rng) {
  AlgoConfig c = config;
  c.mode = Mode::plus;  // re-evaluate the parent so both selections share one stream
  c.validate();
  validate_distance(d, c.n);
  if (samples < 1000) throw std::invalid_argument("at least 10^3 samples are required");

  const int n = c.n;
  const BitString parent =
      BitString::with_distance(static_cast<std::size_t>(n), static_cast<std::size_t>(d));

  const auto m = detail::chunked_monte_carlo<SelectionMoments>(
      samples, rng.next_u64(), [&](SelectionMoments& acc, RandomSource& r, std::uint64_t count) {
        IterationKernel kernel(c);
        for (std::uint64_t s = 0; s < count; ++s) {
          BitString x = parent;
          int fitness = n - d;
          const IterationOutcome out = kernel.step(x, fitness, r);
          const int noisy_winner_distance = n - out.winner_noisy_fitness;
          const int progress = d - (n - out.winner_true_fitness);
          acc.winner.add(d, noisy_winner_distance);
          acc.com.add(progress);
          acc.plus_sel.add(out.accepted ? progress : 0);
        }
      });

  DriftEstimate e;
  e.delta_plus = m.winner.plus.estimate();
  e.delta_minus = m.winner.minus.estimate();
  e.delta_com = m.com.estimate();
  e.delta_plus_sel = m.plus_sel.estimate();
  e.samples = m.com.count();
  return e;
}

DriftEstimate exhaustive_drift_oracle(int n, int lambda, double chi, double q, int d) {
  if (n < 1 || n > 6) throw std::invalid_argument("exhaustive oracle requires 1 <= n <= 6");
  if (lambda < 1 || lambda > 3) {
    throw std::invalid_argument("exhaustive oracle requires 1 <= lambda <= 3");
  }
  validate_mutation_strength(chi, static_cast<std::size_t>(n));
  validate_noise_strength(q, static_cast<std::size_t>(n));
  validate_distance(d, n);

  const double mut = chi / n;
  const double noise = q / n;
  const unsigned full = (1u << n) - 1;
  const unsigned parent = (1u << (n - d)) - 1;  // ones first, then d zeros
  auto distance = [n](unsigned bits) { return n - std::popcount(bits); };
  auto mask_probability = [n](unsigned mask, double rate) {
    const int k = std::popcount(mask);
    return std::pow(rate, k) * std::pow(1.0 - rate, n - k);
  };

  // Joint law of (true distance, noisy distance) of one offspring.
  const auto side = static_cast<std::size_t>(n) + 1;
  std::vector<double> joint(side * side, 0.0);
  for (unsigned m = 0; m <= full; ++m) {
    const double pm = mask_probability(m, mut);
    if (pm == 0.0) continue;
    const unsigned offspring = parent ^ m;
    for (unsigned z = 0; z <= full; ++z) {
      const double pz = mask_probability(z, noise);
      if (pz == 0.0) continue;
      joint[static_cast<std::size_t>(distance(offspring)) * side +
            static_cast<std::size_t>(distance(offspring ^ z))] += pm * pz;
    }
  }

  // P[noisy parent distance >= k].
  std::vector<double> parent_tail(side + 1, 0.0);
  for (unsigned z = 0; z <= full; ++z) {
    const double pz = mask_probability(z, noise);
    for (int k = 0; k <= distance(parent ^ z); ++k) parent_tail[static_cast<std::size_t>(k)] += pz;
  }

  struct Outcome {
    int true_distance;
    int noisy_distance;
    double probability;
  };
  std::vector<Outcome> outcomes;
  for (std::size_t t = 0; t < side; ++t) {
    for (std::size_t s = 0; s < side; ++s) {
      if (joint[t * side + s] > 0.0) {
        outcomes.push_back({static_cast<int>(t), static_cast<int>(s), joint[t * side + s]});
      }
    }
  }

  double plus = 0.0, minus = 0.0, com = 0.0, plus_sel = 0.0;
  std::vector<std::size_t> pick(static_cast<std::size_t>(lambda), 0);
  for (;;) {
    double probability = 1.0;
    int best = n + 1;
    for (auto i : pick) {
      probability *= outcomes[i].probability;
      best = std::min(best, outcomes[i].noisy_distance);
    }
    int ties = 0;
    double progress = 0.0;
    for (auto i : pick) {
      if (outcomes[i].noisy_distance == best) {
        ++ties;
        progress += d - outcomes[i].true_distance;
      }
    }
    progress /= ties;
    plus += probability * std::max(0, d - best);
    minus += probability * std::max(0, best - d);
    com += probability * progress;
    plus_sel += probability * progress * parent_tail[static_cast<std::size_t>(best)];

    // Odometer over λ-tuples.
    std::size_t k = 0;
    while (k < pick.size() && ++pick[k] == outcomes.size()) pick[k++] = 0;
    if (k == pick.size()) break;
  }
  return exact_result(plus, minus, com, plus_sel);
}

namespace {

// expected_offspring_distance_given_groups, except that a group whose
// conditioning event is impossible must be empty and contributes nothing.
// This keeps rate-1 corner cases (e.g. chi = n, q = 0) usable.
double conditional_distance(const BitGroupCounts& g, const NoiseMutationParams& params) {
  const double mut = params.chi / params.n;
  const double noise = params.q / params.n;
  const double agree = (1.0 - mut) * (1.0 - noise) + mut * noise;
  const double disagree = (1.0 - mut) * noise + mut * (1.0 - noise);
  if (agree > 0.0 && disagree > 0.0) return expected_offspring_distance_given_groups(g, params);
  if (agree > 0.0) return g.d_group * ((1.0 - mut) * (1.0 - noise) / agree) +
                          g.a * (mut * noise / agree);
  return g.b * (mut * (1.0 - noise) / disagree) + g.c * ((1.0 - mut) * noise / disagree);
}

}  // namespace

DriftEstimate drift_from_group_counts(int n, int lambda, double chi, double q, int d) {
  const NoiseMutationParams params{n, chi, q};
  params.validate();
  validate_distance(d, n);
  if (lambda < 1) throw std::invalid_argument("lambda must be at least 1");

  const double rate = combined_rate(params) / n;
  const auto side = static_cast<std::size_t>(n) + 1;

  // For each noisy distance m: P[d~' = m] and E[d' ; d~' = m]. The noisy
  // offspring turns b of the parent's ones into zeros and c of its zeros
  // into ones; groups A..D follow.
  std::vector<double> noisy_pmf(side, 0.0);
  std::vector<double> weighted_true(side, 0.0);
  for (int c = 0; c <= d; ++c) {
    const double pc = binomial_pmf(d, c, rate);
    if (pc == 0.0) continue;
    for (int b = 0; b <= n - d; ++b) {
      const double p = pc * binomial_pmf(n - d, b, rate);
      if (p == 0.0) continue;
      const BitGroupCounts groups{n - d - b, b, c, d - c};
      const auto m = static_cast<std::size_t>(d + b - c);
      noisy_pmf[m] += p;
      weighted_true[m] += p * conditional_distance(groups, params);
    }
  }

  const auto tail = upper_tail(noisy_pmf);
  const auto parent_tail = upper_tail(flipped_distance_pmf(n, d, q / n));

  double plus = 0.0, minus = 0.0, com = 0.0, plus_sel = 0.0;
  for (std::size_t m = 0; m < side; ++m) {
    if (noisy_pmf[m] == 0.0) continue;
    // The winner has the smallest noisy distance among λ iid offspring; its
    // true distance given its noisy string is independent of the others.
    const double p_min = std::pow(tail[m], lambda) - std::pow(tail[m + 1], lambda);
    const double progress = d - weighted_true[m] / noisy_pmf[m];
    const int mi = static_cast<int>(m);
    plus += p_min * std::max(0, d - mi);
    minus += p_min * std::max(0, mi - d);
    com += p_min * progress;
    plus_sel += p_min * parent_tail[m] * progress;
  }
  return exact_result(plus, minus, com, plus_sel);
}

}  // namespace noisy_ea
