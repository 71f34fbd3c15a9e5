#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cbs/series.hpp"

namespace cbs::test {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct OracleValue {
  std::string key;
  FamilySpec spec;
  std::optional<long> terms;  // partial sum of this many terms
  std::string value;
};

/// Parses tests/oracles/reference_values.txt ("F3 x=1/2 | 0.70315...").
inline std::vector<OracleValue> oracle_values() {
  std::vector<OracleValue> out;
  std::istringstream in(read_file(CBS_ORACLE_FILE));
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto bar = line.find('|');
    OracleValue v;
    v.key = line.substr(0, bar - 1);
    v.value = line.substr(bar + 2);
    std::istringstream ks(v.key);
    std::string tok;
    ks >> tok;
    v.spec.id = parse_family(tok);
    while (ks >> tok) {
      auto eq = tok.find('=');
      std::string k = tok.substr(0, eq), val = tok.substr(eq + 1);
      if (k == "x") v.spec.x = parse_value(val);
      else if (k == "phi") v.spec.phi = parse_value(val);
      else if (k == "p") v.spec.p = parse_value(val);
      else if (k == "m") v.spec.m = std::stol(val);
      else if (k == "s") v.spec.s = std::stol(val);
      else if (k == "r") v.spec.r = std::stol(val);
      else if (k == "seq") v.spec.seq = val == "F" ? Sequence::Fibonacci : Sequence::Lucas;
      else if (k == "terms") v.terms = std::stol(val);
    }
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace cbs::test
