// Command-line front end: params, table, verify, simulate, encode, decode.
//
// Exit codes: 0 success, 1 verification or decode failure, 2 usage error.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>

#include "lrsc/decoder.hpp"
#include "lrsc/encoder.hpp"
#include "lrsc/oracle.hpp"
#include "lrsc/params.hpp"
#include "lrsc/sim.hpp"
#include "lrsc/table.hpp"
#include "lrsc/trace.hpp"

using namespace lrsc;

namespace {

constexpr int kOk = 0, kFailed = 1, kUsage = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Config {
  int a = 0, tau = 0, r = 0;
  std::optional<std::uint32_t> q;
  std::uint64_t seed = 1;
  long T = 100000;
  std::vector<double> eps{0.01, 0.05, 0.1};
  long horizon = 0;
  int budget = 0, deadline = 0;
  std::string in, out, hist;
  std::string format = "text";
  std::string code = "lrsc";
  std::string columns;
  std::string erase;
  bool symbolic = false;
  std::vector<int> positional;
};

// a, tau, r either positionally or as --a/--tau/--r.
void add_triple(CLI::App* sub, Config& c) {
  sub->add_option("params", c.positional, "a tau [r]")->expected(0, 3);
  sub->add_option("--a", c.a, "erasures per window");
  sub->add_option("--tau", c.tau, "decoding deadline");
  sub->add_option("--r", c.r, "locality deadline (not used by --code de)");
  sub->add_option("--q", c.q, "base field size override (prime power)");
}

void merge_positional(Config& c) {
  int* slots[] = {&c.a, &c.tau, &c.r};
  for (std::size_t i = 0; i < c.positional.size(); ++i) {
    if (*slots[i] != 0 && *slots[i] != c.positional[i])
      throw UsageError("positional and flag values disagree");
    *slots[i] = c.positional[i];
  }
}

void add_code_choice(CLI::App* sub, Config& c, bool both) {
  std::vector<std::string> choices{"lrsc", "de"};
  if (both) choices.push_back("both");
  sub->add_option("--code", c.code, "lrsc, de (diagonal-embedded MDS baseline)" + std::string(both ? " or both" : ""))
      ->check(CLI::IsMember(choices));
}

std::vector<Code> make_codes(const Config& c) {
  if (c.a == 0 || c.tau == 0) throw UsageError("a and tau are required");
  std::vector<Code> out;
  if (c.code == "lrsc" || c.code == "both") {
    if (c.r == 0) throw UsageError("r is required for the lrsc code");
    out.push_back(Code::lrsc(derive_params(c.a, c.tau, c.r, c.q)));
  }
  if (c.code == "de" || c.code == "both") {
    if (c.a < 1 || c.a > c.tau) throw UsageError("baseline needs 1 <= a <= tau");
    out.push_back(Code::diagonal_mds(c.a, c.tau, c.q));
  }
  return out;
}

std::ostream& output(const Config& c, std::unique_ptr<std::ofstream>& file) {
  if (c.out.empty() || c.out == "-") return std::cout;
  file = std::make_unique<std::ofstream>(c.out);
  if (!*file) throw std::runtime_error("cannot open " + c.out + " for writing");
  return *file;
}

std::vector<long> parse_times(const std::string& text) {
  std::vector<long> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stol(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("bad time in --erase: '" + item + "'");
    }
  }
  return out;
}

int cmd_params(const Config& c) {
  if (c.a == 0 || c.tau == 0 || c.r == 0) throw UsageError("a, tau and r are required");
  const CodeParams p = derive_params(c.a, c.tau, c.r, c.q);
  std::cout << "a=" << p.a << " tau=" << p.tau << " r=" << p.r << "\n"
            << "regime=" << to_string(p.regime) << "\n"
            << "k=" << p.k << " n=" << p.n << "\n"
            << "u=" << p.u << " v=" << p.v << " l=" << p.l << "\n"
            << "q=" << p.q << " Q=" << (p.Q ? std::to_string(p.Q) : std::string("overflow")) << "\n"
            << "rate=" << rate(p).str() << " bound=" << rate_bound(p.a, p.tau, p.r).str() << "\n";
  return kOk;
}

int cmd_table(const Config& c) {
  const Code code = make_codes(c).front();
  long first = 0, last = 2L * code.tau();
  if (!c.columns.empty()) {
    const auto colon = c.columns.find(':');
    try {
      if (colon == std::string::npos) {
        first = last = std::stol(c.columns);
      } else {
        first = std::stol(c.columns.substr(0, colon));
        last = std::stol(c.columns.substr(colon + 1));
      }
    } catch (const std::exception&) {
      throw UsageError("--columns expects T or FIRST:LAST");
    }
    if (first < 0 || last < first) throw UsageError("--columns range is empty or negative");
  }
  std::unique_ptr<std::ofstream> file;
  output(c, file) << render_table(code, first, last, c.symbolic);
  return kOk;
}

int cmd_verify(const Config& c) {
  const auto codes = make_codes(c);
  const std::vector<std::uint64_t> seeds{c.seed, c.seed + 1, c.seed + 2};
  std::unique_ptr<std::ofstream> file;
  std::ostream& out = output(c, file);
  VerificationReport total;
  auto stream = [&](const Code& code, int h, int d) {
    const auto rep = verify_stream(code, StreamCheck{h, d, c.horizon, seeds});
    out << rep.name << ": " << rep.serialize();
    total.merge(rep);
  };
  for (const Code& code : codes) {
    if (c.budget > 0 || c.deadline > 0) {
      stream(code, c.budget > 0 ? c.budget : code.a(), c.deadline > 0 ? c.deadline : code.tau());
      continue;
    }
    const bool lrsc = code.kind() == CodeKind::lrsc;
    if (lrsc && code.params().regime != Regime::short_window) {
      const auto rep = verify_scalar(code.field(), code.gamma());
      out << rep.name << ": " << rep.serialize();
      total.merge(rep);
    }
    stream(code, code.a(), code.tau());
    if (lrsc) {
      stream(code, 1, code.r());
      if (code.params().regime != Regime::short_window)
        for (int h = 2; h < code.a(); ++h) stream(code, h, h * (code.r() + 1) - 1);
    }
  }
  out << total.summary() << "\n";
  return total.verified() ? kOk : kFailed;
}

int cmd_simulate(const Config& c) {
  if (c.T < 1) throw UsageError("--T must be positive");
  for (double e : c.eps)
    if (e < 0.0 || e > 1.0) throw UsageError("--eps values must lie in [0, 1]");
  std::vector<SimResult> all;
  for (const Code& code : make_codes(c)) {
    auto res = sweep(code, c.eps, c.T, c.seed);
    all.insert(all.end(), res.begin(), res.end());
  }
  std::unique_ptr<std::ofstream> file;
  std::ostream& out = output(c, file);
  if (c.format == "csv") {
    out << csv_header() << "\n";
    for (const auto& r : all) out << csv_row(r) << "\n";
  } else {
    char line[256];
    std::snprintf(line, sizeof line, "%-12s %8s %10s %12s %10s %10s %8s %8s %8s\n", "code", "epsilon", "T", "loss", "ci95",
                  "delay", "repair", "p50", "p99");
    out << line;
    for (const auto& r : all) {
      std::snprintf(line, sizeof line, "%-12s %8g %10ld %12.4e %10.2e %10.4f %8.3f %8d %8d\n", r.code.c_str(), r.epsilon,
                    r.T, r.loss_prob, r.loss_ci, r.mean_delay, r.repair_delay, r.delay_p50, r.delay_p99);
      out << line;
    }
  }
  for (const auto& r : all)
    if (r.unstable())
      std::cerr << "warning: " << r.code << " at epsilon=" << r.epsilon << " saw only " << r.lost
                << " losses; the loss estimate is unstable\n";
  if (!c.hist.empty()) {
    std::ofstream h(c.hist);
    if (!h) throw std::runtime_error("cannot open " + c.hist + " for writing");
    h << histogram_csv(all);
  }
  return kOk;
}

int cmd_encode(const Config& c) {
  const Code code = make_codes(c).front();
  const auto& f = code.field();
  std::vector<std::vector<Elem>> msgs;
  if (!c.in.empty()) {
    std::ifstream in(c.in);
    if (!in) throw std::runtime_error("cannot open " + c.in);
    for (const auto& rec : read_trace(in, f, code.k(), 0)) {
      if (rec.missing) throw TraceError(static_cast<int>(rec.t) + 1, "message trace may not contain LOST");
      msgs.push_back(rec.message);
    }
  } else {
    for (long t = 0; t < c.T; ++t) {
      std::vector<Elem> m(static_cast<std::size_t>(code.k()));
      for (int s = 0; s < code.k(); ++s)
        m[static_cast<std::size_t>(s)] = Elem{static_cast<std::uint32_t>(
            counter_hash(c.seed, static_cast<std::uint64_t>(t), static_cast<std::uint64_t>(s)) % f.order())};
      msgs.push_back(std::move(m));
    }
  }
  const auto erase = parse_times(c.erase);
  const Channel channel = Channel::replay(erase);
  std::unique_ptr<std::ofstream> file;
  std::ostream& out = output(c, file);
  out << "# " << code.name() << " k=" << code.k() << " n=" << code.n() << "\n";
  Encoder enc(code);
  for (std::size_t t = 0; t < msgs.size(); ++t) {
    const CodedPacket p = enc.push(msgs[t]);
    TraceRecord rec;
    rec.t = p.t;
    rec.missing = channel.erased(p.t);
    if (!rec.missing) {
      const auto m = p.message(code.k());
      const auto par = p.parity(code.k());
      rec.message.assign(m.begin(), m.end());
      rec.parity.assign(par.begin(), par.end());
    }
    out << format_record(f, rec, true) << "\n";
  }
  return kOk;
}

int cmd_decode(const Config& c) {
  const Code code = make_codes(c).front();
  const auto& f = code.field();
  std::vector<TraceRecord> trace;
  if (c.in.empty() || c.in == "-") {
    trace = read_trace(std::cin, f, code.k(), code.parities());
  } else {
    std::ifstream in(c.in);
    if (!in) throw std::runtime_error("cannot open " + c.in);
    trace = read_trace(in, f, code.k(), code.parities());
  }
  Decoder dec(code, c.deadline > 0 ? std::optional<int>(c.deadline) : std::nullopt);
  std::vector<std::optional<DecodeEvent>> got(trace.size());
  for (const auto& rec : trace) {
    std::optional<CodedPacket> p;
    if (!rec.missing) {
      p = CodedPacket{rec.t, rec.message};
      p->symbols.insert(p->symbols.end(), rec.parity.begin(), rec.parity.end());
    }
    for (auto& ev : dec.push(rec.t, p ? &*p : nullptr))
      if (ev.kind == DecodeEvent::Kind::recovered && ev.time < static_cast<long>(got.size()))
        got[static_cast<std::size_t>(ev.time)] = std::move(ev);
  }
  std::unique_ptr<std::ofstream> file;
  std::ostream& out = output(c, file);
  long lost = 0, repaired = 0;
  int worst = 0;
  for (std::size_t t = 0; t < got.size(); ++t) {
    TraceRecord rec;
    rec.t = static_cast<long>(t);
    rec.missing = !got[t];
    if (got[t]) rec.message = got[t]->message;
    out << format_record(f, rec, false) << "\n";
    if (!got[t]) {
      ++lost;
    } else if (trace[t].missing) {
      ++repaired;
      worst = std::max(worst, got[t]->delay);
      out << "# recovered t=" << t << " delay=" << got[t]->delay << "\n";
    }
  }
  std::cerr << "packets=" << got.size() << " repaired=" << repaired << " lost=" << lost << " max_delay=" << worst << "\n";
  return lost == 0 ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Locally recoverable streaming codes: construction, verification, simulation"};
  app.require_subcommand(1);
  Config c;

  auto* params = app.add_subcommand("params", "derived parameters, rate and rate bound");
  add_triple(params, c);

  auto* table = app.add_subcommand("table", "parity formulas per time step");
  add_triple(table, c);
  add_code_choice(table, c, false);
  table->add_option("--columns", c.columns, "time T or range FIRST:LAST (default 0:2tau)");
  table->add_flag("--symbolic", c.symbolic, "print matrix entries instead of field values");
  table->add_option("--out", c.out, "output path (default stdout)");

  auto* verify = app.add_subcommand("verify", "exhaustive recoverability checks");
  add_triple(verify, c);
  add_code_choice(verify, c, true);
  verify->add_option("--seed", c.seed, "first of three message seeds");
  verify->add_option("--horizon", c.horizon, "stream length used for anchors (default 3(tau+1))");
  verify->add_option("--budget", c.budget, "run a single check with this many erasures per window");
  verify->add_option("--deadline", c.deadline, "run a single check with this deadline");
  verify->add_option("--out", c.out, "output path (default stdout)");

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo over PEC(epsilon)");
  add_triple(simulate, c);
  add_code_choice(simulate, c, true);
  simulate->add_option("--seed", c.seed, "run seed");
  simulate->add_option("--T", c.T, "packets per run");
  simulate->add_option("--eps", c.eps, "erasure probabilities (comma list)")->delimiter(',');
  simulate->add_option("--format", c.format, "text or csv")->check(CLI::IsMember({"text", "csv"}));
  simulate->add_option("--out", c.out, "output path (default stdout)");
  simulate->add_option("--hist", c.hist, "write the delay histogram (epsilon,code,delay,count) here");

  auto* encode = app.add_subcommand("encode", "message trace -> coded trace");
  add_triple(encode, c);
  add_code_choice(encode, c, false);
  encode->add_option("--in", c.in, "message trace (default: --T random messages from --seed)");
  encode->add_option("--out", c.out, "output path (default stdout)");
  encode->add_option("--T", c.T, "number of random messages when no --in is given");
  encode->add_option("--seed", c.seed, "seed for random messages");
  encode->add_option("--erase", c.erase, "comma list of times to write as ERASED");

  auto* decode = app.add_subcommand("decode", "coded trace -> message trace");
  add_triple(decode, c);
  add_code_choice(decode, c, false);
  decode->add_option("--in", c.in, "coded trace (default stdin)");
  decode->add_option("--out", c.out, "output path (default stdout)");
  decode->add_option("--deadline", c.deadline, "decoding deadline (default tau)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    merge_positional(c);
    if (*params) return cmd_params(c);
    if (*table) return cmd_table(c);
    if (*verify) return cmd_verify(c);
    if (*simulate) return cmd_simulate(c);
    if (*encode) return cmd_encode(c);
    if (*decode) return cmd_decode(c);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const InvalidParams& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const TraceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailed;
  }
  return kUsage;
}
