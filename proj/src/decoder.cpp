#include "lrsc/decoder.hpp"

#include <algorithm>

namespace lrsc {

Decoder::Decoder(const Code& code, std::optional<int> deadline)
    : code_(&code), f_(&code.field()), k_(code.k()), deadline_(deadline.value_or(code.tau())) {
  if (deadline_ < 0) throw std::invalid_argument("decoder: negative deadline");
  retention_ = 4 * (std::max(code.tau(), deadline_) + 1);
  slots_.resize(static_cast<std::size_t>(retention_) + 1);
}

std::size_t Decoder::live_unknowns() const {
  std::size_t n = 0;
  for (const Slot& s : slots_)
    for (State st : s.state) n += st == State::unknown;
  return n;
}

bool Decoder::known(long t, int s) const {
  if (t < 0) return true;
  if (t >= next_ || s < 0 || s >= k_) return false;
  const Slot& sl = slots_[static_cast<std::size_t>(t % static_cast<long>(slots_.size()))];
  return sl.t == t && sl.state[static_cast<std::size_t>(s)] == State::known;
}

void Decoder::axpy(std::vector<Term>& dst, Elem factor, const std::vector<Term>& src) const {
  std::vector<Term> out;
  out.reserve(dst.size() + src.size());
  std::size_t i = 0, j = 0;
  while (i < dst.size() || j < src.size()) {
    if (j == src.size() || (i < dst.size() && dst[i].id < src[j].id)) {
      out.push_back(dst[i++]);
    } else if (i == dst.size() || src[j].id < dst[i].id) {
      out.push_back(Term{src[j].id, f_->mul(factor, src[j].c)});
      ++j;
    } else {
      const Elem c = f_->add(dst[i].c, f_->mul(factor, src[j].c));
      if (c != TowerField::zero()) out.push_back(Term{dst[i].id, c});
      ++i, ++j;
    }
  }
  dst = std::move(out);
}

void Decoder::resolve(std::uint64_t id, Elem value) {
  const long t = static_cast<long>(id / static_cast<std::uint64_t>(k_));
  const auto s = static_cast<std::size_t>(id % static_cast<std::uint64_t>(k_));
  Slot& sl = slot(t);
  if (sl.t != t || sl.state[s] != State::unknown) throw std::logic_error("decoder: resolving a non-live unknown");
  sl.value[s] = value;
  sl.state[s] = State::known;
  --sl.missing;
}

void Decoder::insert(Row row) {
  auto coeff_of = [](const std::vector<Term>& terms, std::uint64_t id) {
    auto it = std::lower_bound(terms.begin(), terms.end(), id, [](const Term& t, std::uint64_t v) { return t.id < v; });
    return it != terms.end() && it->id == id ? it->c : TowerField::zero();
  };

  for (const Row& other : rows_) {
    const Elem c = coeff_of(row.terms, other.terms.front().id);
    if (c == TowerField::zero()) continue;
    axpy(row.terms, f_->neg(c), other.terms);
    row.rhs = f_->sub(row.rhs, f_->mul(c, other.rhs));
  }
  if (row.terms.empty()) {
    if (row.rhs != TowerField::zero()) throw DecodeError("decoder: inconsistent parity equation");
    return;
  }

  const Elem scale = f_->inv(row.terms.front().c);
  for (Term& t : row.terms) t.c = f_->mul(t.c, scale);
  row.rhs = f_->mul(row.rhs, scale);

  const std::uint64_t pivot = row.terms.front().id;
  for (Row& other : rows_) {
    const Elem c = coeff_of(other.terms, pivot);
    if (c == TowerField::zero()) continue;
    axpy(other.terms, f_->neg(c), row.terms);
    other.rhs = f_->sub(other.rhs, f_->mul(c, row.rhs));
  }
  rows_.push_back(std::move(row));

  std::erase_if(rows_, [&](const Row& r) {
    if (r.terms.size() != 1) return false;
    resolve(r.terms.front().id, r.rhs);
    return true;
  });
}

void Decoder::drop_before(long horizon) {
  if (horizon <= 0) return;
  const std::uint64_t cut = id_of(horizon, 0);
  std::erase_if(rows_, [&](const Row& r) { return r.terms.front().id < cut; });
  std::erase_if(pending_, [&](long t) {
    if (t >= horizon) return false;
    Slot& sl = slot(t);
    for (State& st : sl.state)
      if (st == State::unknown) st = State::dropped;
    return true;
  });
}

std::vector<DecodeEvent> Decoder::push(long t, const CodedPacket* packet) {
  if (t != next_)
    throw DecodeError("decoder: expected packet " + std::to_string(next_) + ", got " + std::to_string(t));
  if (packet && (packet->t != t || packet->symbols.size() != static_cast<std::size_t>(code_->n())))
    throw DecodeError("decoder: malformed packet at t=" + std::to_string(t));
  drop_before(t - retention_);
  ++next_;

  std::vector<DecodeEvent> events;
  Slot& cur = slot(t);
  cur.t = t;
  cur.reported_lost = false;
  if (packet) {
    const auto msg = packet->message(k_);
    cur.value.assign(msg.begin(), msg.end());
    cur.state.assign(static_cast<std::size_t>(k_), State::known);
    cur.missing = 0;
    events.push_back(DecodeEvent{DecodeEvent::Kind::recovered, t, 0, cur.value});
  } else {
    cur.value.assign(static_cast<std::size_t>(k_), TowerField::zero());
    cur.state.assign(static_cast<std::size_t>(k_), State::unknown);
    cur.missing = k_;
    pending_.push_back(t);
  }

  if (packet) {
    const auto par = packet->parity(k_);
    std::vector<Row> eqs(par.size());
    std::vector<bool> usable(par.size(), true);
    for (std::size_t i = 0; i < par.size(); ++i) eqs[i].rhs = par[i];
    for (const Tap& tap : code_->taps()) {
      const long when = t - tap.lag;
      if (when < 0) continue;
      const auto i = static_cast<std::size_t>(tap.parity);
      const Slot& sl = slot(when);
      const auto s = static_cast<std::size_t>(tap.symbol);
      switch (sl.state[s]) {
        case State::known:
          eqs[i].rhs = f_->sub(eqs[i].rhs, f_->mul(tap.coeff, sl.value[s]));
          break;
        case State::unknown:
          eqs[i].terms.push_back(Term{id_of(when, tap.symbol), tap.coeff});
          break;
        case State::dropped:
          usable[i] = false;
          break;
      }
    }
    for (std::size_t i = 0; i < eqs.size(); ++i) {
      if (!usable[i]) continue;
      auto& terms = eqs[i].terms;
      std::sort(terms.begin(), terms.end(), [](const Term& x, const Term& y) { return x.id < y.id; });
      std::vector<Term> merged;
      for (const Term& term : terms) {
        if (!merged.empty() && merged.back().id == term.id)
          merged.back().c = f_->add(merged.back().c, term.c);
        else
          merged.push_back(term);
      }
      std::erase_if(merged, [](const Term& x) { return x.c == TowerField::zero(); });
      terms = std::move(merged);
      insert(std::move(eqs[i]));
    }
  }

  std::erase_if(pending_, [&](long tp) {
    Slot& sl = slot(tp);
    if (sl.missing == 0) {
      const auto kind = sl.reported_lost ? DecodeEvent::Kind::late_recovered : DecodeEvent::Kind::recovered;
      events.push_back(DecodeEvent{kind, tp, static_cast<int>(t - tp), sl.value});
      return true;
    }
    if (!sl.reported_lost && t - tp >= deadline_) {
      sl.reported_lost = true;
      events.push_back(DecodeEvent{DecodeEvent::Kind::lost, tp, deadline_, {}});
    }
    return false;
  });
  return events;
}

}  // namespace lrsc
