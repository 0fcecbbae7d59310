#include "tipforge/venn.hpp"

#include <algorithm>

namespace tipforge {

VennEncoding::VennEncoding(std::vector<std::string> base_sets)
    : base_sets_(std::move(base_sets)) {
  if (base_sets_.size() > 16)
    throw TipError("too many base sets for the region encoding (" +
                   std::to_string(base_sets_.size()) + " > 16)");
  for (size_t i = 0; i < base_sets_.size(); ++i)
    for (size_t j = i + 1; j < base_sets_.size(); ++j)
      if (base_sets_[i] == base_sets_[j])
        throw TipError("duplicate base set: " + base_sets_[i]);
}

int VennEncoding::base_index(const std::string& name) const {
  auto it = std::find(base_sets_.begin(), base_sets_.end(), name);
  if (it == base_sets_.end()) return -1;
  return static_cast<int>(it - base_sets_.begin());
}

std::vector<bool> VennEncoding::denote(const SetExprPtr& e) const {
  const unsigned long rc = region_count();
  std::vector<bool> out(rc, false);
  switch (e->op) {
    case SetOp::Param: {
      int b = base_index(e->param);
      if (b < 0) throw TipError("set not in encoding: " + e->param);
      for (unsigned long r = 0; r < rc; ++r)
        if (r & (1ul << b)) out[r] = true;
      break;
    }
    case SetOp::Complement:
      return denote_complement(denote(e->kids[0]));
    case SetOp::Intersect: {
      out.assign(rc, true);
      for (const auto& k : e->kids) {
        auto v = denote(k);
        for (unsigned long r = 0; r < rc; ++r)
          out[r] = out[r] && v[r];
      }
      break;
    }
    case SetOp::Union: {
      for (const auto& k : e->kids) {
        auto v = denote(k);
        for (unsigned long r = 0; r < rc; ++r)
          out[r] = out[r] || v[r];
      }
      break;
    }
    case SetOp::Empty:
      break;
    case SetOp::Universe:
      out.assign(rc, true);
      break;
  }
  return out;
}

std::vector<bool> VennEncoding::denote_complement(std::vector<bool> v) const {
  for (auto&& b : v) b = !b;
  return v;
}

}  // namespace tipforge
