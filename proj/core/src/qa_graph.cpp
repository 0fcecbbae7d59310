// Alternation-graph construction, acyclicity analysis, and DOT rendering.
#include "tipforge/qa_graph.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace tipforge {

namespace {

struct Builder {
  const FoVocabulary& vocab;
  std::vector<QaEdge> edges;
  std::set<std::pair<std::string, std::string>> seen;  // dedup by endpoints

  void add(const std::string& from, const std::string& to,
           const std::string& prov) {
    if (seen.insert({from, to}).second) edges.push_back({from, to, prov});
  }

  void visit_term(const FoTerm& t) {
    if (t.kind == FoTermKind::App) {
      auto it = vocab.functions.find(t.name);
      if (it != vocab.functions.end()) {
        for (const auto& arg_sort : it->second.first)
          add(arg_sort, it->second.second, "function " + t.name);
      }
      for (const auto& a : t.args) visit_term(a);
    }
  }

  void visit(const FoPtr& f, std::vector<std::string>& forall_scope) {
    switch (f->kind) {
      case FoKind::True:
      case FoKind::False:
        return;
      case FoKind::Atom:
      case FoKind::Eq:
        for (const auto& t : f->terms) visit_term(t);
        return;
      case FoKind::Not:
        // In negation normal form, Not wraps atoms only.
        visit(f->kids[0], forall_scope);
        return;
      case FoKind::And:
      case FoKind::Or:
        for (const auto& k : f->kids) visit(k, forall_scope);
        return;
      case FoKind::Forall:
        forall_scope.push_back(f->var_sort);
        visit(f->kids[0], forall_scope);
        forall_scope.pop_back();
        return;
      case FoKind::Exists: {
        std::set<std::string> done;
        for (const auto& s : forall_scope) {
          if (done.insert(s).second)
            add(s, f->var_sort,
                "exists " + f->var + ":" + f->var_sort +
                    " under a universal of sort " + s);
        }
        visit(f->kids[0], forall_scope);
        return;
      }
      case FoKind::Implies:
        throw TipError("alternation graph expects negation normal form");
    }
  }
};

}  // namespace

QaGraph qa_graph(const std::vector<FoPtr>& formulas,
                 const FoVocabulary& vocab) {
  Builder b{vocab, {}, {}};
  for (const auto& f : formulas) {
    std::vector<std::string> scope;
    b.visit(nnf(f), scope);
  }
  QaGraph g;
  g.vertices = vocab.sorts;
  // Edges may mention sorts the vocabulary list missed; keep vertices total.
  for (const auto& e : b.edges) {
    if (std::find(g.vertices.begin(), g.vertices.end(), e.from) ==
        g.vertices.end())
      g.vertices.push_back(e.from);
    if (std::find(g.vertices.begin(), g.vertices.end(), e.to) ==
        g.vertices.end())
      g.vertices.push_back(e.to);
  }
  g.edges = std::move(b.edges);
  return g;
}

std::optional<std::vector<std::string>> QaGraph::topo_order() const {
  std::map<std::string, int> indegree;
  for (const auto& v : vertices) indegree[v] = 0;
  std::set<std::pair<std::string, std::string>> arcs;
  for (const auto& e : edges) arcs.insert({e.from, e.to});
  for (const auto& a : arcs) ++indegree[a.second];

  // Repeatedly take the first not-yet-placed vertex (in declaration order)
  // with no remaining incoming edges; quadratic but deterministic and tiny.
  std::vector<std::string> order;
  order.reserve(vertices.size());
  std::set<std::string> placed;
  while (order.size() < vertices.size()) {
    bool progressed = false;
    for (const auto& v : vertices) {
      if (placed.count(v) || indegree[v] != 0) continue;
      order.push_back(v);
      placed.insert(v);
      for (const auto& a : arcs)
        if (a.first == v) --indegree[a.second];
      progressed = true;
      break;
    }
    if (!progressed) return std::nullopt;
  }
  return order;
}

bool QaGraph::acyclic() const { return topo_order().has_value(); }

std::vector<QaEdge> QaGraph::cycle_edges() const {
  // Reachability closure; an edge lies on a cycle iff its head reaches its
  // tail. Vertex counts are tiny, so the cubic closure is fine.
  const size_t n = vertices.size();
  std::map<std::string, size_t> idx;
  for (size_t i = 0; i < n; ++i) idx[vertices[i]] = i;
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (const auto& e : edges) reach[idx.at(e.from)][idx.at(e.to)] = true;
  for (size_t k = 0; k < n; ++k)
    for (size_t i = 0; i < n; ++i)
      if (reach[i][k])
        for (size_t j = 0; j < n; ++j)
          if (reach[k][j]) reach[i][j] = true;

  std::vector<QaEdge> out;
  for (const auto& e : edges)
    if (reach[idx.at(e.to)][idx.at(e.from)]) out.push_back(e);
  return out;
}

std::string emit_qa_dot(const QaGraph& graph) {
  std::ostringstream out;
  out << "digraph qa {\n";
  for (const auto& v : graph.vertices) out << "  \"" << v << "\";\n";
  for (const auto& e : graph.edges) {
    std::string label = e.provenance;
    // Escape double quotes for the DOT label.
    std::string esc;
    for (char c : label) {
      if (c == '"') esc += '\\';
      esc += c;
    }
    out << "  \"" << e.from << "\" -> \"" << e.to << "\" [label=\"" << esc
        << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace tipforge
