// Venn-region encoding of set algebra over a finite universe.
//
// Given k base sets, the universe splits into 2^k regions indexed by
// membership bitmask (bit j set = inside base set j). Any boolean set
// expression denotes a union of regions, and any cardinality constraint
// becomes a linear constraint over the per-region count variables.
#pragma once

#include <string>
#include <vector>

#include "tipforge/lia.hpp"
#include "tipforge/spec.hpp"

namespace tipforge {

class VennEncoding {
 public:
  // Throws when more than 16 base sets are given (the region count would
  // be unreasonable for the exact encoding).
  explicit VennEncoding(std::vector<std::string> base_sets);

  int base_count() const { return static_cast<int>(base_sets_.size()); }
  unsigned long region_count() const { return 1ul << base_sets_.size(); }
  const std::vector<std::string>& base_sets() const { return base_sets_; }
  int base_index(const std::string& name) const;  // -1 if absent

  // Region membership vector of a set expression (size region_count()).
  std::vector<bool> denote(const SetExprPtr& e) const;

  std::vector<bool> denote_complement(std::vector<bool> v) const;

 private:
  std::vector<std::string> base_sets_;
};

}  // namespace tipforge
