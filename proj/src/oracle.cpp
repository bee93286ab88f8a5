#include "lrsc/oracle.hpp"

#include <omp.h>

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "lrsc/decoder.hpp"
#include "lrsc/encoder.hpp"
#include "lrsc/parallel.hpp"

namespace lrsc {

std::vector<long> ErasurePattern::times() const {
  std::vector<long> out;
  for (int o : offsets) out.push_back(t + o);
  return out;
}

std::string ErasurePattern::str() const {
  std::string s = "{";
  for (std::size_t i = 0; i < offsets.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(t + offsets[i]);
  }
  return s + "}";
}

void VerificationReport::merge(const VerificationReport& other) {
  patterns += other.patterns;
  failures.insert(failures.end(), other.failures.begin(), other.failures.end());
  for (const auto& [h, d] : other.max_delay) {
    auto [it, fresh] = max_delay.emplace(h, d);
    if (!fresh) it->second = std::max(it->second, d);
  }
}

void VerificationReport::normalize() {
  std::stable_sort(failures.begin(), failures.end(), [](const auto& x, const auto& y) {
    if (x.pattern != y.pattern) return x.pattern < y.pattern;
    return x.symbol < y.symbol;
  });
}

std::string VerificationReport::summary() const {
  std::string s = "patterns=" + std::to_string(patterns) + " failures=" + std::to_string(failures.size());
  for (const auto& [h, d] : max_delay) s += " max_delay[" + std::to_string(h) + "]=" + std::to_string(d);
  return s;
}

std::string VerificationReport::serialize() const {
  std::ostringstream out;
  for (const auto& f : failures) {
    out << "FAIL E=" << f.pattern.str() << " anchor=" << f.pattern.t << " symbol=" << f.symbol
        << " deadline=" << f.deadline;
    if (!f.detail.empty()) out << " " << f.detail;
    out << "\n";
  }
  out << summary() << "\n";
  return out.str();
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t c = 1;
  for (int i = 1; i <= k; ++i) c = c * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return c;
}

std::uint64_t anchored_pattern_count(int w, int h) {
  std::uint64_t c = 0;
  for (int i = 0; i < h; ++i) c += binomial(w - 1, i);
  return c;
}

namespace {

// Subsets of {lo, ..., w-1} of size exactly `size`, appended to `prefix`.
void subsets(int lo, int w, int size, std::vector<int>& prefix, std::vector<std::vector<int>>& out) {
  if (size == 0) {
    out.push_back(prefix);
    return;
  }
  for (int x = lo; x + size <= w; ++x) {
    prefix.push_back(x);
    subsets(x + 1, w, size - 1, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<std::vector<int>> anchored_patterns(int w, int h) {
  std::vector<std::vector<int>> out;
  for (int size = 1; size <= h && size <= w; ++size) {
    std::vector<int> prefix{0};
    subsets(1, w, size - 1, prefix, out);
  }
  return out;
}

VerificationReport verify_scalar(const TowerField& f, const linalg::Gamma& g) {
  const int a = g.a(), r = g.r(), n = a * (r + 1);
  const linalg::Matrix h = linalg::build_H(f, g).h;
  VerificationReport rep;
  rep.name = "scalar a=" + std::to_string(a) + " r=" + std::to_string(r);

  std::vector<std::vector<int>> sets;
  std::vector<int> prefix;
  subsets(0, n, a, prefix, sets);
  if (sets.size() != binomial(n, a)) throw std::logic_error("verify_scalar: pattern enumeration incomplete");

  for (const auto& e : sets) {
    ++rep.patterns;
    for (int i : e) {
      if (i >= r) break;
      std::vector<std::size_t> later;
      for (int j : e)
        if (j > i) later.push_back(static_cast<std::size_t>(j));
      const auto col = h.column(static_cast<std::size_t>(i));
      if (linalg::in_span(f, col, h.columns(later)))
        rep.failures.push_back({ErasurePattern{0, n, e}, i, n - 1, "h_i in span of later erased columns"});
    }
  }
  return rep;
}

std::vector<long> stream_anchors(const Code& code, const StreamCheck& check) {
  const long horizon = check.horizon > 0 ? check.horizon : 3L * (std::max(code.tau(), check.deadline) + 1);
  if (horizon < 3L * (std::max(code.tau(), check.deadline) + 1))
    throw std::invalid_argument("verify_stream: horizon must be at least 3(max(tau, d) + 1)");
  std::vector<long> out{0};
  for (long t = horizon / 3; t < 2 * horizon / 3; ++t) out.push_back(t);
  return out;
}

namespace {

struct Outcome {
  bool ok = false;
  int delay = -1;
  std::vector<int> missing;
  std::string detail;
  bool operator==(const Outcome&) const = default;
};

std::vector<std::vector<CodedPacket>> encode_streams(const Code& code, const std::vector<std::uint64_t>& seeds, long length) {
  std::vector<std::vector<CodedPacket>> out;
  const std::uint64_t order = code.field().order();
  for (std::uint64_t seed : seeds) {
    // splitmix64 stream; only needs to be deterministic and well mixed
    std::uint64_t state = seed;
    auto next = [&] {
      std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
      z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
      z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
      return z ^ (z >> 31);
    };
    Encoder enc(code);
    std::vector<CodedPacket> stream;
    std::vector<Elem> m(static_cast<std::size_t>(code.k()));
    for (long t = 0; t < length; ++t) {
      for (auto& x : m) x = Elem{static_cast<std::uint32_t>(next() % order)};
      stream.push_back(enc.push(m));
    }
    out.push_back(std::move(stream));
  }
  return out;
}

Outcome run_pattern(const Code& code, const std::vector<CodedPacket>& stream, const ErasurePattern& pat, int d) {
  Outcome o;
  try {
    Decoder dec(code, d);
    std::size_t next_erased = 0;
    const auto erased = pat.times();
    for (long u = 0; u <= pat.t + d; ++u) {
      const bool gone = next_erased < erased.size() && erased[next_erased] == u;
      if (gone) ++next_erased;
      for (const auto& ev : dec.push(u, gone ? nullptr : &stream[static_cast<std::size_t>(u)])) {
        if (ev.time != pat.t || ev.kind != DecodeEvent::Kind::recovered) continue;
        if (ev.message != std::vector<Elem>(stream[static_cast<std::size_t>(pat.t)].message(code.k()).begin(),
                                            stream[static_cast<std::size_t>(pat.t)].message(code.k()).end())) {
          o.detail = "wrong value";
          return o;
        }
        o.ok = true;
        o.delay = ev.delay;
      }
    }
    if (!o.ok) {
      for (int s = 0; s < code.k(); ++s)
        if (!dec.known(pat.t, s)) o.missing.push_back(s);
      o.detail = "not recovered";
    }
  } catch (const DecodeError& e) {
    o.ok = false;
    o.detail = e.what();
  }
  return o;
}

struct Task {
  long t;
  const std::vector<int>* offsets;
};

void check_task(const Code& code, const std::vector<std::vector<CodedPacket>>& streams, const Task& task, int d,
                VerificationReport& rep) {
  const ErasurePattern pat{task.t, d + 1, *task.offsets};
  ++rep.patterns;
  const Outcome first = run_pattern(code, streams[0], pat, d);
  bool agree = true;
  for (std::size_t i = 1; i < streams.size(); ++i)
    if (!(run_pattern(code, streams[i], pat, d) == first)) agree = false;
  if (!agree) {
    rep.failures.push_back({pat, -1, d, "outcome differs across message seeds"});
    return;
  }
  if (!first.ok) {
    if (first.missing.empty()) rep.failures.push_back({pat, -1, d, first.detail});
    for (int s : first.missing) rep.failures.push_back({pat, s, d, first.detail});
    return;
  }
  const int h = static_cast<int>(pat.offsets.size());
  auto [it, fresh] = rep.max_delay.emplace(h, first.delay);
  if (!fresh) it->second = std::max(it->second, first.delay);
}

struct Prepared {
  std::vector<std::vector<int>> patterns;
  std::vector<Task> tasks;
  std::vector<std::vector<CodedPacket>> streams;
  std::string name;
};

Prepared prepare(const Code& code, const StreamCheck& check) {
  if (check.budget < 1 || check.deadline < 0) throw std::invalid_argument("verify_stream: need h >= 1 and d >= 0");
  if (check.seeds.empty()) throw std::invalid_argument("verify_stream: need at least one message seed");
  Prepared p;
  const int d = check.deadline;
  p.patterns = anchored_patterns(d + 1, check.budget);
  if (p.patterns.size() != anchored_pattern_count(d + 1, check.budget))
    throw std::logic_error("verify_stream: pattern enumeration incomplete");
  const auto anchors = stream_anchors(code, check);
  for (long t : anchors)
    for (const auto& e : p.patterns) p.tasks.push_back({t, &e});
  p.streams = encode_streams(code, check.seeds, anchors.back() + d + 1);
  p.name = code.name() + " h=" + std::to_string(check.budget) + " d=" + std::to_string(d);
  return p;
}

}  // namespace

VerificationReport verify_stream_serial(const Code& code, const StreamCheck& check) {
  const Prepared p = prepare(code, check);
  VerificationReport rep;
  rep.name = p.name;
  for (const Task& task : p.tasks) check_task(code, p.streams, task, check.deadline, rep);
  rep.normalize();
  return rep;
}

VerificationReport verify_stream(const Code& code, const StreamCheck& check) {
  const Prepared p = prepare(code, check);
  const int threads = thread_budget(check.threads);
  std::vector<VerificationReport> partial(static_cast<std::size_t>(threads));
  const long count = static_cast<long>(p.tasks.size());
#pragma omp parallel num_threads(threads)
  {
    VerificationReport& mine = partial[static_cast<std::size_t>(omp_get_thread_num())];
#pragma omp for schedule(dynamic, 16)
    for (long i = 0; i < count; ++i) check_task(code, p.streams, p.tasks[static_cast<std::size_t>(i)], check.deadline, mine);
  }
  VerificationReport rep;
  rep.name = p.name;
  for (const auto& part : partial) rep.merge(part);
  rep.normalize();
  return rep;
}

std::vector<bool> window_recoverable(const Code& code, const ErasurePattern& pattern, int deadline) {
  const auto erased = pattern.times();
  const int k = code.k();
  auto column = [&](long when, int s) -> long {
    const auto it = std::find(erased.begin(), erased.end(), when);
    if (it == erased.end()) return -1;
    return static_cast<long>(it - erased.begin()) * k + s;
  };
  std::vector<std::vector<Elem>> rows;
  const std::size_t unknowns = erased.size() * static_cast<std::size_t>(k);
  for (long u = pattern.t; u <= pattern.t + deadline; ++u) {
    if (std::find(erased.begin(), erased.end(), u) != erased.end()) continue;
    for (int i = 0; i < code.parities(); ++i) {
      std::vector<Elem> row(unknowns, TowerField::zero());
      for (const Tap& tap : code.taps()) {
        if (tap.parity != i) continue;
        const long c = column(u - tap.lag, tap.symbol);
        if (c >= 0) row[static_cast<std::size_t>(c)] = code.field().add(row[static_cast<std::size_t>(c)], tap.coeff);
      }
      rows.push_back(std::move(row));
    }
  }
  std::vector<bool> out(static_cast<std::size_t>(k), false);
  if (erased.empty() || erased.front() != pattern.t) {
    std::fill(out.begin(), out.end(), true);
    return out;
  }
  if (rows.empty()) return out;
  linalg::Matrix m(rows.size(), unknowns);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < unknowns; ++j) m(i, j) = rows[i][j];
  const std::vector<Elem> zero(rows.size(), TowerField::zero());
  const auto sol = linalg::solve(code.field(), m, zero);
  for (int s = 0; s < k; ++s) out[static_cast<std::size_t>(s)] = sol.determined[static_cast<std::size_t>(s)];
  return out;
}

}  // namespace lrsc
