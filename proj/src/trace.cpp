#include "lrsc/trace.hpp"

#include <charconv>

namespace lrsc {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto bar = line.find('|', start);
    out.push_back(trim(line.substr(start, bar == std::string::npos ? std::string::npos : bar - start)));
    if (bar == std::string::npos) break;
    start = bar + 1;
  }
  return out;
}

// "[..],[..],..." -> elements.  Commas inside brackets belong to elements.
std::vector<gf::Elem> parse_list(const gf::TowerField& f, const std::string& text, int line_no) {
  std::vector<gf::Elem> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
    if (i == text.size()) break;
    if (text[i] != '[') throw TraceError(line_no, "expected '[' in element list '" + text + "'");
    const auto close = text.find(']', i);
    if (close == std::string::npos) throw TraceError(line_no, "unterminated element in '" + text + "'");
    try {
      out.push_back(f.parse(text.substr(i, close - i + 1)));
    } catch (const std::invalid_argument& e) {
      throw TraceError(line_no, e.what());
    }
    i = close + 1;
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
    if (i < text.size()) {
      if (text[i] != ',') throw TraceError(line_no, "expected ',' between elements in '" + text + "'");
      ++i;
    }
  }
  return out;
}

std::string join(const gf::TowerField& f, const std::vector<gf::Elem>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ',';
    out += f.format(xs[i]);
  }
  return out;
}

}  // namespace

std::string format_record(const gf::TowerField& f, const TraceRecord& rec, bool coded) {
  std::string out = std::to_string(rec.t) + " | ";
  if (rec.missing) return out + (coded ? "ERASED" : "LOST");
  out += join(f, rec.message);
  if (coded) out += " | " + join(f, rec.parity);
  return out;
}

TraceRecord parse_record(const gf::TowerField& f, const std::string& line, int k, int parities, int line_no) {
  const auto fields = split_fields(line);
  TraceRecord rec;
  const std::string& ts = fields[0];
  const auto [ptr, ec] = std::from_chars(ts.data(), ts.data() + ts.size(), rec.t);
  if (ec != std::errc() || ptr != ts.data() + ts.size() || rec.t < 0)
    throw TraceError(line_no, "bad time index '" + ts + "'");
  const char* marker = parities > 0 ? "ERASED" : "LOST";
  if (fields.size() == 2 && fields[1] == marker) {
    rec.missing = true;
    return rec;
  }
  const std::size_t want = parities > 0 ? 3 : 2;
  if (fields.size() != want)
    throw TraceError(line_no, "expected " + std::to_string(want) + " '|'-separated fields, got " + std::to_string(fields.size()));
  rec.message = parse_list(f, fields[1], line_no);
  if (static_cast<int>(rec.message.size()) != k)
    throw TraceError(line_no, "expected " + std::to_string(k) + " message symbols, got " + std::to_string(rec.message.size()));
  if (parities > 0) {
    rec.parity = parse_list(f, fields[2], line_no);
    if (static_cast<int>(rec.parity.size()) != parities)
      throw TraceError(line_no, "expected " + std::to_string(parities) + " parity symbols, got " + std::to_string(rec.parity.size()));
  }
  return rec;
}

std::vector<TraceRecord> read_trace(std::istream& in, const gf::TowerField& f, int k, int parities) {
  std::vector<TraceRecord> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    TraceRecord rec = parse_record(f, body, k, parities, line_no);
    if (rec.t != static_cast<long>(out.size()))
      throw TraceError(line_no, "expected time " + std::to_string(out.size()) + ", got " + std::to_string(rec.t));
    out.push_back(std::move(rec));
  }
  return out;
}

}  // namespace lrsc
