#include "lrsc/encoder.hpp"

namespace lrsc {

void MessageHistory::push(std::span<const Elem> m) {
  if (static_cast<int>(m.size()) != k_)
    throw EncodeError("expected " + std::to_string(k_) + " message symbols, got " + std::to_string(m.size()));
  packets_.emplace_back(m.begin(), m.end());
  while (static_cast<int>(packets_.size()) > depth_ + 1) packets_.pop_front();
  ++next_;
}

Elem MessageHistory::at(int s, long t) const {
  if (s < 0 || s >= k_) throw std::out_of_range("history: symbol " + std::to_string(s) + " out of range");
  if (t < 0) return TowerField::zero();
  if (t >= next_) throw std::out_of_range("history: m(" + std::to_string(t) + ") not yet available");
  const long oldest = next_ - static_cast<long>(packets_.size());
  if (t < oldest) throw std::out_of_range("history: m(" + std::to_string(t) + ") already evicted");
  return packets_[static_cast<std::size_t>(t - oldest)][static_cast<std::size_t>(s)];
}

std::vector<Elem> MessageHistory::diagonal_vector(int r, long t) const {
  std::vector<Elem> out(static_cast<std::size_t>(r));
  for (int s = 0; s < r; ++s) out[static_cast<std::size_t>(s)] = at(s, t + s);
  return out;
}

std::vector<Elem> MessageHistory::mu_vector(const CodeParams& p, int j, long t) const {
  if (j < 0 || j > p.u) throw std::out_of_range("mu_vector: j=" + std::to_string(j) + " outside [0, u]");
  const int width = j < p.u ? p.r : p.v;
  std::vector<Elem> out(static_cast<std::size_t>(p.r), TowerField::zero());
  for (int s = 0; s < width; ++s) out[static_cast<std::size_t>(s)] = at(j * p.r + s, t + s);
  return out;
}

CodedPacket Encoder::push(std::span<const Elem> m) {
  history_.push(m);
  const long t = history_.next_time() - 1;
  CodedPacket pkt{t, {m.begin(), m.end()}};
  const auto par = code_->parities_at(t, [&](int s, long when) { return history_.at(s, when); });
  pkt.symbols.insert(pkt.symbols.end(), par.begin(), par.end());
  return pkt;
}

namespace {

Elem dot(const TowerField& f, const std::vector<Elem>& x, const linalg::Gamma& g, int col) {
  Elem acc = TowerField::zero();
  for (std::size_t s = 0; s < x.size(); ++s) acc = f.add(acc, f.mul(x[s], g(static_cast<int>(s), col)));
  return acc;
}

CodedPacket systematic(std::span<const Elem> m, long t, const std::vector<Elem>& parity) {
  CodedPacket pkt{t, {m.begin(), m.end()}};
  pkt.symbols.insert(pkt.symbols.end(), parity.begin(), parity.end());
  return pkt;
}

}  // namespace

CodedPacket encode_exact(const Code& code, MessageHistory& history, std::span<const Elem> m) {
  if (code.kind() != CodeKind::lrsc || code.params().regime == Regime::short_window)
    throw EncodeError("encode_exact: code is not an exact/long-regime LRSC");
  history.push(m);
  const long t = history.next_time() - 1;
  const auto& f = code.field();
  const int r = code.r();
  Elem p0 = TowerField::zero();
  for (int j = 0; j < code.a(); ++j)
    p0 = f.add(p0, dot(f, history.diagonal_vector(r, t - r - static_cast<long>(j) * (r + 1)), code.gamma(), j));
  return systematic(m, t, {p0});
}

CodedPacket encode_short(const Code& code, MessageHistory& history, std::span<const Elem> m) {
  if (code.kind() != CodeKind::lrsc || code.params().regime != Regime::short_window)
    throw EncodeError("encode_short: code is not a short-regime LRSC");
  history.push(m);
  const long t = history.next_time() - 1;
  const auto& f = code.field();
  const auto& p = code.params();
  const int r = p.r, u = p.u, v = p.v, l = p.l, a = p.a;
  std::vector<Elem> par(static_cast<std::size_t>(a), TowerField::zero());
  auto mu = [&](int x, long when) { return history.mu_vector(p, x, when); };
  for (int i = 0; i < u; ++i) {
    Elem acc = TowerField::zero();
    for (int j = 0; j <= i; ++j) acc = f.add(acc, dot(f, mu(i - j, t - r - j * (r + 1)), code.gamma(), j));
    for (int j = i; j < u; ++j)
      acc = f.add(acc, dot(f, mu(u + i - j, t - r - j * (r + 1) - v - l), code.gamma(), a - u + j));
    par[static_cast<std::size_t>(i)] = acc;
  }
  for (int i = 0; i < l; ++i) {
    Elem acc = TowerField::zero();
    for (int j = 0; j <= u; ++j) acc = f.add(acc, dot(f, mu(u - j, t - v - i - j * (r + 1)), code.gamma(), j + i));
    par[static_cast<std::size_t>(u + i)] = acc;
  }
  return systematic(m, t, par);
}

CodedPacket encode_mds_de(const Code& code, MessageHistory& history, std::span<const Elem> m) {
  if (code.kind() != CodeKind::diagonal_mds) throw EncodeError("encode_mds_de: code is not a baseline code");
  history.push(m);
  const long t = history.next_time() - 1;
  const auto& f = code.field();
  const int k = code.k();
  std::vector<Elem> par(static_cast<std::size_t>(code.parities()), TowerField::zero());
  for (int i = 0; i < code.parities(); ++i) {
    // Parity i at time t closes the diagonal that started at T = t - k - i.
    const long start = t - k - i;
    Elem acc = TowerField::zero();
    for (int s = 0; s < k; ++s)
      acc = f.add(acc, f.mul(code.gamma().c(static_cast<std::size_t>(s), static_cast<std::size_t>(i)), history.at(s, start + s)));
    par[static_cast<std::size_t>(i)] = acc;
  }
  return systematic(m, t, par);
}

}  // namespace lrsc
