#include "lrsc/sim.hpp"

#include <omp.h>

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>

#include "lrsc/decoder.hpp"
#include "lrsc/encoder.hpp"
#include "lrsc/parallel.hpp"

namespace lrsc {

std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  return mix64(mix64(mix64(seed) ^ a) ^ b);
}

Channel Channel::pec(double epsilon, std::uint64_t seed) {
  Channel c;
  c.kind_ = Kind::pec;
  c.epsilon_ = epsilon;
  c.seed_ = seed;
  return c;
}

Channel Channel::replay(std::vector<long> erased) {
  Channel c;
  c.kind_ = Kind::replay;
  std::sort(erased.begin(), erased.end());
  erased.erase(std::unique(erased.begin(), erased.end()), erased.end());
  c.times_ = std::move(erased);
  return c;
}

bool Channel::erased(long t) const {
  if (kind_ == Kind::replay) return std::binary_search(times_.begin(), times_.end(), t);
  if (epsilon_ <= 0.0) return false;
  if (epsilon_ >= 1.0) return true;
  const double u = static_cast<double>(counter_hash(seed_, static_cast<std::uint64_t>(t)) >> 11) * 0x1.0p-53;
  return u < epsilon_;
}

SimResult run_sim(const Code& code, const Channel& channel, long T, std::uint64_t seed, const SimOptions& opt) {
  const auto start = std::chrono::steady_clock::now();
  SimResult res;
  res.code = code.name();
  res.epsilon = channel.epsilon();
  res.T = T;
  res.seed = seed;

  const int k = code.k(), tau = code.tau();
  const std::uint64_t order = code.field().order();
  if (opt.keep_outcomes) {
    res.outcomes.assign(static_cast<std::size_t>(T), -1);
    res.erased.assign(static_cast<std::size_t>(T + tau), false);
  }

  Encoder enc(code);
  Decoder dec(code);
  std::vector<Elem> m(static_cast<std::size_t>(k));
  double delay_sum = 0.0, repair_sum = 0.0;
  long repaired = 0;

  for (long t = 0; t < T + tau; ++t) {
    for (int s = 0; s < k; ++s)
      m[static_cast<std::size_t>(s)] =
          Elem{static_cast<std::uint32_t>(counter_hash(seed, static_cast<std::uint64_t>(t), static_cast<std::uint64_t>(s)) % order)};
    const CodedPacket p = enc.push(m);
    const bool gone = channel.erased(t);
    if (gone && t < T) ++res.erasures;
    if (gone && opt.keep_outcomes) res.erased[static_cast<std::size_t>(t)] = true;

    for (const auto& ev : dec.push(t, gone ? nullptr : &p)) {
      if (ev.time >= T) continue;
      switch (ev.kind) {
        case DecodeEvent::Kind::recovered:
          ++res.recovered;
          ++res.histogram[ev.delay];
          delay_sum += ev.delay;
          if (channel.erased(ev.time)) {
            ++repaired;
            repair_sum += ev.delay;
          }
          if (opt.keep_outcomes) res.outcomes[static_cast<std::size_t>(ev.time)] = ev.delay;
          break;
        case DecodeEvent::Kind::lost:
          ++res.lost;
          break;
        case DecodeEvent::Kind::late_recovered:
          ++res.late_recovered;
          break;
      }
    }
  }

  if (T > 0) {
    const double p = static_cast<double>(res.lost) / static_cast<double>(T);
    res.loss_prob = p;
    res.loss_ci = 1.96 * std::sqrt(p * (1.0 - p) / static_cast<double>(T));
  }
  if (res.recovered > 0) {
    res.mean_delay = delay_sum / static_cast<double>(res.recovered);
    auto quantile = [&](double q) {
      const double need = q * static_cast<double>(res.recovered);
      long seen = 0;
      for (const auto& [d, c] : res.histogram) {
        seen += c;
        if (static_cast<double>(seen) >= need) return d;
      }
      return res.histogram.rbegin()->first;
    };
    res.delay_p50 = quantile(0.5);
    res.delay_p99 = quantile(0.99);
  }
  if (repaired > 0) res.repair_delay = repair_sum / static_cast<double>(repaired);
  res.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return res;
}

std::uint64_t channel_seed(std::uint64_t seed, double epsilon) {
  return counter_hash(seed, std::bit_cast<std::uint64_t>(epsilon), 0x636861ULL);
}

std::vector<SimResult> sweep_serial(const Code& code, const std::vector<double>& epsilons, long T, std::uint64_t seed) {
  std::vector<SimResult> out;
  for (double e : epsilons) out.push_back(run_sim(code, Channel::pec(e, channel_seed(seed, e)), T, seed));
  return out;
}

std::vector<SimResult> sweep(const Code& code, const std::vector<double>& epsilons, long T, std::uint64_t seed,
                             int threads) {
  std::vector<SimResult> out(epsilons.size());
  const long count = static_cast<long>(epsilons.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(thread_budget(threads))
  for (long i = 0; i < count; ++i) {
    const double e = epsilons[static_cast<std::size_t>(i)];
    out[static_cast<std::size_t>(i)] = run_sim(code, Channel::pec(e, channel_seed(seed, e)), T, seed);
  }
  return out;
}

std::vector<long> unexplained_losses(const Code& code, const SimResult& res) {
  const long tau = code.tau(), T = res.T;
  const long span = static_cast<long>(res.erased.size());
  std::vector<long> prefix(static_cast<std::size_t>(span + 1), 0);
  for (long t = 0; t < span; ++t)
    prefix[static_cast<std::size_t>(t + 1)] = prefix[static_cast<std::size_t>(t)] + (res.erased[static_cast<std::size_t>(t)] ? 1 : 0);
  auto count = [&](long lo, long hi) {  // erasures in [lo : hi]
    lo = std::max(lo, 0L);
    hi = std::min(hi, span - 1);
    return lo > hi ? 0 : prefix[static_cast<std::size_t>(hi + 1)] - prefix[static_cast<std::size_t>(lo)];
  };
  std::vector<long> out;
  for (long t = 0; t < T; ++t) {
    if (res.outcomes[static_cast<std::size_t>(t)] >= 0) continue;
    bool explained = false;
    for (long s = std::max(0L, t - tau); s <= t && !explained; ++s)
      if (count(s, s + tau) > code.a()) explained = true;
    for (long u = std::max(0L, t - tau); u < t && !explained; ++u)
      if (res.outcomes[static_cast<std::size_t>(u)] < 0) explained = true;
    if (!explained) out.push_back(t);
  }
  return out;
}

std::vector<long> locality_violations(const Code& code, const SimResult& res) {
  const long tau = code.tau(), r = code.r();
  std::vector<long> out;
  for (long t = 0; t < res.T; ++t) {
    if (!res.erased[static_cast<std::size_t>(t)]) continue;
    bool alone = true;
    for (long u = std::max(0L, t - tau); u <= t + r && alone; ++u)
      if (u != t && res.erased[static_cast<std::size_t>(u)]) alone = false;
    if (!alone) continue;
    const int d = res.outcomes[static_cast<std::size_t>(t)];
    if (d < 0 || d > r) out.push_back(t);
  }
  return out;
}

std::string csv_header() { return "epsilon,code,T,seed,loss_prob,loss_ci,mean_delay,delay_p50,delay_p99"; }

std::string csv_row(const SimResult& r) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%g,%s,%ld,%llu,%.6e,%.6e,%.6f,%d,%d", r.epsilon, r.code.c_str(), r.T,
                static_cast<unsigned long long>(r.seed), r.loss_prob, r.loss_ci, r.mean_delay, r.delay_p50, r.delay_p99);
  return buf;
}

std::string histogram_csv(const std::vector<SimResult>& results) {
  std::string out = "epsilon,code,delay,count\n";
  char buf[128];
  for (const auto& r : results)
    for (const auto& [d, c] : r.histogram) {
      std::snprintf(buf, sizeof buf, "%g,%s,%d,%ld\n", r.epsilon, r.code.c_str(), d, c);
      out += buf;
    }
  return out;
}

}  // namespace lrsc
