#pragma once

// Packet traces, one line per time step:
//
//   coded:    "t | m_0,...,m_{k-1} | p_0,...,p_{n-k-1}"   or "t | ERASED"
//   message:  "t | m_0,...,m_{k-1}"                        or "t | LOST"
//
// Elements use the gf text format, e.g. "[2,0,1,0]".  Blank lines and lines
// starting with '#' are ignored.

#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

#include "lrsc/gf.hpp"

namespace lrsc {

class TraceError : public std::runtime_error {
 public:
  TraceError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

struct TraceRecord {
  long t = 0;
  /// ERASED (coded trace) or LOST (message trace).
  bool missing = false;
  std::vector<gf::Elem> message;
  std::vector<gf::Elem> parity;
};

/// `coded` selects the coded layout (with parities and ERASED).
std::string format_record(const gf::TowerField& f, const TraceRecord& rec, bool coded);

/// Parses one line.  `parities` = 0 expects a message trace line.
TraceRecord parse_record(const gf::TowerField& f, const std::string& line, int k, int parities, int line_no);

/// Reads a whole trace, checking that times run 0, 1, 2, ...
std::vector<TraceRecord> read_trace(std::istream& in, const gf::TowerField& f, int k, int parities);

}  // namespace lrsc
