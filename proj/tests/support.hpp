#pragma once

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "qport/cover.hpp"

namespace qport::test {

// "A*>P P>A B*>B": one "x>y" per point. A '*' on either side marks a critical
// point; the pair is ordered by first appearance.
inline MarkedCover cover_of(const std::string& spec) {
  std::istringstream in(spec);
  std::string tok;
  std::vector<std::pair<PointId, PointId>> map;
  std::vector<PointId> crit;
  while (in >> tok) {
    const auto gt = tok.find('>');
    std::string from = tok.substr(0, gt);
    std::string to = tok.substr(gt + 1);
    for (std::string* name : {&from, &to}) {
      if (name->empty() || name->back() != '*') continue;
      name->pop_back();
      if (std::find(crit.begin(), crit.end(), PointId(*name)) == crit.end()) crit.emplace_back(*name);
    }
    map.emplace_back(PointId(from), PointId(to));
  }
  return MarkedCover(std::move(map), crit.at(0), crit.at(1));
}

inline PointId id(const char* s) { return PointId(s); }

}  // namespace qport::test
