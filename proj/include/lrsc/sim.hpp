#pragma once

// Monte Carlo runs over a packet erasure channel.
//
// Randomness is counter based: the erasure decision for packet t and the
// message symbol (t, s) are pure functions of (seed, t[, s]) through
// splitmix64, so runs are reproducible and independent of scheduling.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "lrsc/code.hpp"

namespace lrsc {

/// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t x);
/// Hash of (seed, a, b) built from chained mix64 calls.
std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0);

class Channel {
 public:
  enum class Kind { pec, replay };

  /// PEC(epsilon): packet t is erased iff uniform(seed, t) < epsilon.
  static Channel pec(double epsilon, std::uint64_t seed);
  /// Erases exactly the listed times.
  static Channel replay(std::vector<long> erased);

  Kind kind() const { return kind_; }
  double epsilon() const { return epsilon_; }
  std::uint64_t seed() const { return seed_; }
  bool erased(long t) const;

 private:
  Kind kind_ = Kind::pec;
  double epsilon_ = 0.0;
  std::uint64_t seed_ = 0;
  std::vector<long> times_;  // sorted, replay only
};

struct SimOptions {
  /// Keep per-packet outcomes (delay, or -1 for lost) and erasure flags.
  bool keep_outcomes = false;
};

struct SimResult {
  std::string code;
  double epsilon = 0.0;
  long T = 0;
  std::uint64_t seed = 0;

  long erasures = 0;  // among the T counted packets
  long recovered = 0;
  long lost = 0;
  long late_recovered = 0;  // lost packets resolved after their deadline

  double loss_prob = 0.0;
  double loss_ci = 0.0;     // 95% normal-approximation half-width
  double mean_delay = 0.0;  // over all recovered packets (received ones count as 0)
  double repair_delay = 0.0;  // over recovered packets that were erased
  std::map<int, long> histogram;  // delay -> recovered packets
  int delay_p50 = 0;
  int delay_p99 = 0;
  double wall_seconds = 0.0;

  std::vector<int> outcomes;  // only with keep_outcomes
  std::vector<bool> erased;   // only with keep_outcomes

  /// Fewer than 20 losses: the loss estimate is not trustworthy.
  bool unstable() const { return lost < 20; }
};

/// Drives T packets through encoder, channel and decoder (deadline tau),
/// then tau more packets so every counted packet reaches its deadline.
/// Message symbols come from `seed`.
SimResult run_sim(const Code& code, const Channel& channel, long T, std::uint64_t seed, const SimOptions& opt = {});

/// Channel seed for one sweep point; depends on (seed, epsilon) only, so two
/// codes swept with the same seed see identical erasures.
std::uint64_t channel_seed(std::uint64_t seed, double epsilon);

/// run_sim per epsilon, points run concurrently.  `threads` = 0 selects
/// thread_budget().
std::vector<SimResult> sweep(const Code& code, const std::vector<double>& epsilons, long T, std::uint64_t seed,
                             int threads = 0);
std::vector<SimResult> sweep_serial(const Code& code, const std::vector<double>& epsilons, long T, std::uint64_t seed);

/// Losses the channel does not explain: packet t lost although every window
/// [s : s+tau] containing t has at most a erasures and no packet in
/// [t - tau : t-1] was lost.  Needs keep_outcomes.
std::vector<long> unexplained_losses(const Code& code, const SimResult& res);
/// Packets whose only erasure in [t - tau : t + r] is t itself yet took
/// longer than r.  Needs keep_outcomes.
std::vector<long> locality_violations(const Code& code, const SimResult& res);

/// `epsilon,code,T,seed,loss_prob,loss_ci,mean_delay,delay_p50,delay_p99`
std::string csv_header();
std::string csv_row(const SimResult& r);
/// Long-format histogram: `epsilon,code,delay,count`.
std::string histogram_csv(const std::vector<SimResult>& results);

}  // namespace lrsc
