#pragma once

// JSON wire formats.  A set is a nested array of its canonical elements:
// [] is the empty set, [[],[[]]] is {{},{{}}}.  Kept in one place so every
// module serializes identically.

#include "json.hpp"

#include "hflab/errors.hpp"
#include "hflab/hfset.hpp"

namespace hflab {

using Json = nlohmann::ordered_json;

inline Json set_to_json(const HfSet& a) {
  Json arr = Json::array();
  for (const HfSet& e : a.elements()) arr.push_back(set_to_json(e));
  return arr;
}

inline HfSet set_from_json(const Json& j) {
  if (!j.is_array()) {
    throw ParseError("set JSON must be a nested array", 0);
  }
  std::vector<HfSet> elems;
  elems.reserve(j.size());
  for (const Json& e : j) elems.push_back(set_from_json(e));
  return HfSet::from_elements(std::move(elems));
}

}  // namespace hflab
