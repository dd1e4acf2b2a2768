#pragma once

// Validation of the basic tree and the enhanced dependency graph, plus
// bounded enumeration of elementary cycles.

#include <algorithm>
#include <cstddef>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "relabel/conllu.hpp"
#include "relabel/report.hpp"

namespace relabel {

namespace codes {

inline constexpr std::string_view kMissingHead = "MISSING_HEAD";
inline constexpr std::string_view kNoRoot = "NO_ROOT";
inline constexpr std::string_view kMultipleRoots = "MULTIPLE_ROOTS";
inline constexpr std::string_view kBasicCycle = "BASIC_CYCLE";
inline constexpr std::string_view kEmptyNodeInBasic = "EMPTY_NODE_IN_BASIC";
inline constexpr std::string_view kBasicEdgeOmitted = "BASIC_EDGE_OMITTED";
inline constexpr std::string_view kUnexpectedCycle = "UNEXPECTED_CYCLE";
inline constexpr std::string_view kNotReachable = "NOT_REACHABLE";
inline constexpr std::string_view kCycleLimit = "CYCLE_LIMIT";
inline constexpr std::string_view kNoEnhancedGraph = "NO_ENHANCED_GRAPH";

}  // namespace codes

// Cycles closed by a relative-clause edge are legitimate in enhanced graphs.
inline bool is_relative_edge(std::string_view rel) {
  return rel == "ref" || rel == "acl" || rel.substr(0, 4) == "acl:";
}

struct Cycle {
  std::vector<NodeId> nodes;      // cycle order, starting at the smallest node
  std::vector<std::string> rels;  // rels[i] labels nodes[i] -> nodes[i+1 mod n]
  bool contains_ref_edge = false;

  std::string str() const {
    std::string out;
    for (const NodeId& id : nodes) out += id.str() + " -> ";
    out += nodes.front().str();
    return out;
  }
};

struct CycleScan {
  std::vector<Cycle> cycles;
  bool truncated = false;  // enumeration stopped at the cap
};

inline constexpr std::size_t kCycleCap = 100;

namespace detail {

// The enhanced graph of one sentence: words, empty nodes and the virtual
// root (word id 0), with one edge per DEPS item.
struct EnhancedGraph {
  std::vector<NodeId> ids;  // ascending, ids[0] is the virtual root
  std::map<NodeId, int> index;
  std::vector<std::vector<std::pair<int, std::string>>> adj;  // head -> dep
  struct BadHead {
    NodeId node;
    NodeId head;
  };
  std::vector<BadHead> bad_heads;  // DEPS heads naming no existing node
  bool any_deps = false;
};

inline EnhancedGraph build_enhanced(const Sentence& sent) {
  EnhancedGraph g;
  g.ids.push_back(NodeId::word(0));
  for (const Token& t : sent.tokens)
    if (!t.id.is_range()) g.ids.push_back(t.id);
  for (std::size_t i = 0; i < g.ids.size(); ++i)
    g.index[g.ids[i]] = static_cast<int>(i);

  g.adj.resize(g.ids.size());
  for (const Token& t : sent.tokens) {
    if (t.id.is_range()) continue;
    for (const Dep& dep : t.deps) {
      g.any_deps = true;
      auto it = g.index.find(dep.head);
      if (it == g.index.end())
        g.bad_heads.push_back({t.id, dep.head});
      else
        g.adj[it->second].emplace_back(g.index[t.id], dep.rel);
    }
  }
  for (auto& edges : g.adj) std::sort(edges.begin(), edges.end());
  return g;
}

// Elementary cycles by path search: every cycle is found exactly once,
// rooted at its smallest node. Sentence graphs are small, but a step cap
// guards against adversarial blowup.
struct CycleEnumerator {
  const EnhancedGraph& g;
  std::size_t cap;
  CycleScan scan;

  static constexpr std::size_t kStepCap = 1u << 20;

  std::vector<int> path;
  std::vector<const std::string*> rels;
  std::vector<char> on_path;
  std::size_t steps = 0;
  bool stop = false;
  int start = 0;

  CycleEnumerator(const EnhancedGraph& graph, std::size_t limit)
      : g(graph), cap(limit) {}

  CycleScan run() {
    on_path.assign(g.ids.size(), 0);
    for (start = 0; start < static_cast<int>(g.ids.size()) && !stop;
         ++start) {
      path.assign(1, start);
      on_path[start] = 1;
      walk(start);
      on_path[start] = 0;
    }
    return std::move(scan);
  }

  void walk(int u) {
    for (const auto& [v, rel] : g.adj[u]) {
      if (stop) return;
      if (++steps > kStepCap) {
        scan.truncated = true;
        stop = true;
        return;
      }
      if (v == start) {
        record(rel);
      } else if (v > start && !on_path[v]) {
        path.push_back(v);
        rels.push_back(&rel);
        on_path[v] = 1;
        walk(v);
        on_path[v] = 0;
        rels.pop_back();
        path.pop_back();
      }
    }
  }

  void record(const std::string& closing) {
    if (scan.cycles.size() >= cap) {
      scan.truncated = true;
      stop = true;
      return;
    }
    Cycle c;
    for (int i : path) c.nodes.push_back(g.ids[i]);
    for (const std::string* r : rels) c.rels.push_back(*r);
    c.rels.push_back(closing);
    for (const std::string& r : c.rels)
      if (is_relative_edge(r)) {
        c.contains_ref_edge = true;
        break;
      }
    scan.cycles.push_back(std::move(c));
  }
};

}  // namespace detail

inline CycleScan detect_cycles(const Sentence& sent,
                               std::size_t cap = kCycleCap) {
  detail::EnhancedGraph g = detail::build_enhanced(sent);
  return detail::CycleEnumerator(g, cap).run();
}

inline void validate_sentence(const Sentence& sent, std::size_t index,
                              ValidationReport& report) {
  const std::string sid = sent.sent_id();
  auto add = [&](Severity sev, std::string_view code,
                 std::optional<NodeId> node, std::string msg) {
    report.add({sev, std::string(code), index, sid, node, std::move(msg)});
  };

  const int n = sent.word_count();
  std::vector<const Token*> word(static_cast<std::size_t>(n) + 1, nullptr);
  for (const Token& t : sent.tokens)
    if (t.id.is_word()) word[static_cast<std::size_t>(t.id.major)] = &t;

  std::vector<int> roots;
  for (int i = 1; i <= n; ++i) {
    if (!word[i] || !word[i]->head) continue;
    int h = *word[i]->head;
    if (h == 0)
      roots.push_back(i);
    else if (h > n)
      add(Severity::Error, codes::kMissingHead, word[i]->id,
          "HEAD " + std::to_string(h) + " is outside the sentence (" +
              std::to_string(n) + " words)");
  }
  if (roots.empty())
    add(Severity::Error, codes::kNoRoot, std::nullopt,
        "no token has HEAD=0");
  if (roots.size() > 1) {
    std::string list;
    for (int r : roots) {
      if (!list.empty()) list += ", ";
      list += std::to_string(r);
    }
    add(Severity::Error, codes::kMultipleRoots, std::nullopt,
        "tokens " + list + " all have HEAD=0");
  }

  // HEAD links form a functional graph; walking them visits each node once.
  std::vector<int> state(static_cast<std::size_t>(n) + 1, 0);
  for (int i = 1; i <= n; ++i) {
    if (state[i] != 0) continue;
    std::vector<int> chain;
    int j = i;
    while (j >= 1 && j <= n && state[j] == 0 && word[j] && word[j]->head) {
      state[j] = 1;
      chain.push_back(j);
      j = *word[j]->head;
    }
    if (j >= 1 && j <= n && state[j] == 1) {
      auto begin = std::find(chain.begin(), chain.end(), j);
      std::vector<int> cycle(begin, chain.end());
      auto smallest = std::min_element(cycle.begin(), cycle.end());
      std::rotate(cycle.begin(), smallest, cycle.end());
      std::string msg = "basic HEAD links form a cycle: ";
      for (int k : cycle) msg += std::to_string(k) + " -> ";
      msg += std::to_string(cycle.front());
      add(Severity::Error, codes::kBasicCycle, NodeId::word(cycle.front()),
          msg);
    }
    for (int k : chain) state[k] = 2;
  }

  for (const Token& t : sent.tokens)
    if (t.id.is_empty() && (t.head || t.deprel != "_"))
      add(Severity::Error, codes::kEmptyNodeInBasic, t.id,
          "empty node carries basic HEAD/DEPREL");

  detail::EnhancedGraph g = detail::build_enhanced(sent);
  if (!g.any_deps) {
    add(Severity::Info, codes::kNoEnhancedGraph, std::nullopt,
        "sentence has no DEPS; enhanced checks skipped");
    return;
  }

  for (const auto& bad : g.bad_heads)
    add(Severity::Error, codes::kMissingHead, bad.node,
        "DEPS head " + bad.head.str() + " does not exist");

  for (int i = 1; i <= n; ++i) {
    if (!word[i] || !word[i]->head) continue;
    const Token& w = *word[i];
    int h = *w.head;
    if (h < 0 || h > n) continue;
    NodeId head_id = NodeId::word(h);
    bool covered = false;
    for (const Dep& dep : w.deps)
      if (dep.head == head_id &&
          (dep.rel == w.deprel ||
           (dep.rel.size() > w.deprel.size() &&
            dep.rel.compare(0, w.deprel.size(), w.deprel) == 0 &&
            dep.rel[w.deprel.size()] == ':'))) {
        covered = true;
        break;
      }
    if (!covered)
      add(Severity::Warning, codes::kBasicEdgeOmitted, w.id,
          "basic edge " + std::to_string(h) + " -> " + w.id.str() + " (" +
              w.deprel + ") has no counterpart in DEPS");
  }

  std::vector<char> seen(g.ids.size(), 0);
  std::deque<int> queue = {0};
  seen[0] = 1;
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    for (const auto& [v, rel] : g.adj[u])
      if (!seen[v]) {
        seen[v] = 1;
        queue.push_back(v);
      }
  }
  for (std::size_t k = 1; k < g.ids.size(); ++k)
    if (!seen[k])
      add(Severity::Warning, codes::kNotReachable, g.ids[k],
          "not reachable from the root in the enhanced graph");

  CycleScan scan = detail::CycleEnumerator(g, kCycleCap).run();
  for (const Cycle& c : scan.cycles)
    if (!c.contains_ref_edge)
      add(Severity::Warning, codes::kUnexpectedCycle, c.nodes.front(),
          "enhanced cycle " + c.str() + " contains no ref or acl edge");
  if (scan.truncated)
    add(Severity::Info, codes::kCycleLimit, std::nullopt,
        "cycle enumeration stopped after " + std::to_string(kCycleCap) +
            " cycles");
}

inline ValidationReport validate_document(const Document& doc) {
  ValidationReport report;
  for (std::size_t i = 0; i < doc.sentences.size(); ++i)
    validate_sentence(doc.sentences[i], i + 1, report);
  report.sort();
  return report;
}

}  // namespace relabel
