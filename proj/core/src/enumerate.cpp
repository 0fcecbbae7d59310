#include "tipforge/enumerate.hpp"

namespace tipforge {

namespace {

// Nondecreasing index sequences of length q over [0, nt), lexicographic.
void guard_multisets(int nt, int q, std::vector<int>& cur,
                     std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == q) {
    out.push_back(cur);
    return;
  }
  int lo = cur.empty() ? 0 : cur.back();
  for (int t = lo; t < nt; ++t) {
    cur.push_back(t);
    guard_multisets(nt, q, cur, out);
    cur.pop_back();
  }
}

std::vector<AtomicGuard> all_heads(int nt) {
  std::vector<AtomicGuard> out;
  for (int t = 0; t < nt; ++t) out.push_back(AtomicGuard::make_thresh(t));
  out.push_back(AtomicGuard::make_one());
  out.push_back(AtomicGuard::make_all());
  return out;
}

std::vector<SimpleLiteral> literals_of_mask(unsigned long mask, int np) {
  std::vector<SimpleLiteral> out;
  for (int p = 0; p < np; ++p) {
    if (mask & (1ul << (2 * p))) out.push_back({p, false});
    if (mask & (1ul << (2 * p + 1))) out.push_back({p, true});
  }
  return out;
}

}  // namespace

std::vector<SimpleFormula> enumerate_candidates(const ProtocolSpec& spec,
                                                int q) {
  const int nt = static_cast<int>(spec.thresholds.size());
  const int np = static_cast<int>(spec.set_params.size());
  if (np > 16) throw TipError("too many set parameters to enumerate");

  std::vector<std::vector<int>> guards;
  std::vector<int> cur;
  guard_multisets(nt, q, cur, guards);
  std::vector<AtomicGuard> heads = all_heads(nt);

  std::vector<SimpleFormula> out;
  const unsigned long lit_count = 1ul << (2 * np);
  for (unsigned long mask = 0; mask < lit_count; ++mask) {
    if (q == 0 && mask == 0) continue;
    std::vector<SimpleLiteral> lits = literals_of_mask(mask, np);
    for (const auto& g : guards) {
      for (const auto& h : heads) {
        SimpleFormula f;
        f.quants = g;
        f.literals = lits;
        f.head = h;
        out.push_back(std::move(f));
      }
    }
  }
  return out;
}

unsigned long count_candidates(const ProtocolSpec& spec, int q) {
  const int nt = static_cast<int>(spec.thresholds.size());
  const int np = static_cast<int>(spec.set_params.size());
  // C(nt + q - 1, q) guard multisets.
  unsigned long multisets = 1;
  for (int i = 1; i <= q; ++i)
    multisets = multisets * (nt - 1 + i) / i;
  unsigned long lits = 1ul << (2 * np);
  if (q == 0) lits -= 1;
  return multisets * lits * (nt + 2);
}

}  // namespace tipforge
