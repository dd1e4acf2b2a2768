#include "relabel/graph.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gtest/gtest.h"
#include "json.hpp"
#include "relabel/conllu.hpp"

namespace {

using namespace relabel;

std::string fixture_path(const std::string& name) {
  return std::string(RELABEL_FIXTURE_DIR) + "/" + name;
}

ValidationReport validate_fixture(const std::string& name) {
  return validate_document(parse_file(fixture_path(name)));
}

std::vector<std::string> codes_of(const ValidationReport& report) {
  std::vector<std::string> out;
  for (const auto& f : report.findings) out.push_back(f.code);
  return out;
}

// (code, node_ref) pairs in report order.
std::vector<std::pair<std::string, std::string>> shape_of(
    const ValidationReport& report) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& f : report.findings)
    out.emplace_back(f.code, f.node_ref());
  return out;
}

Document parse_one(const std::string& text) { return parse_string(text); }

TEST(GraphFixtureTest, CleanChainHasNoFindings) {
  auto report = validate_fixture("graph_clean_chain.conllu");
  EXPECT_TRUE(report.findings.empty()) << report.render_text();
}

TEST(GraphFixtureTest, OmittedBasicEdgeIsWarned) {
  auto report = validate_fixture("graph_omitted_edge.conllu");
  ASSERT_EQ(report.findings.size(), 1u) << report.render_text();
  const Finding& f = report.findings[0];
  EXPECT_EQ(f.severity, Severity::Warning);
  EXPECT_EQ(f.code, "BASIC_EDGE_OMITTED");
  EXPECT_EQ(f.node_ref(), "3");
  EXPECT_EQ(f.sent_id, "graph-omitted-1");
  EXPECT_NE(f.message.find("2 -> 3"), std::string::npos);
}

TEST(GraphFixtureTest, TwoRootsAreAnError) {
  auto report = validate_fixture("graph_multi_root.conllu");
  ASSERT_EQ(report.findings.size(), 1u) << report.render_text();
  const Finding& f = report.findings[0];
  EXPECT_EQ(f.severity, Severity::Error);
  EXPECT_EQ(f.code, "MULTIPLE_ROOTS");
  EXPECT_FALSE(f.node.has_value());
  EXPECT_EQ(f.node_ref(), "-");
  EXPECT_NE(f.message.find("1, 2"), std::string::npos);
  EXPECT_TRUE(report.has_errors());
}

TEST(GraphFixtureTest, RelativeClauseCycleIsAccepted) {
  Document doc = parse_file(fixture_path("graph_ref_cycle.conllu"));
  auto report = validate_document(doc);
  EXPECT_TRUE(report.findings.empty()) << report.render_text();

  auto scan = detect_cycles(doc.sentences.at(0));
  ASSERT_EQ(scan.cycles.size(), 1u);
  EXPECT_FALSE(scan.truncated);
  const Cycle& c = scan.cycles[0];
  EXPECT_TRUE(c.contains_ref_edge);
  ASSERT_EQ(c.nodes.size(), 2u);
  EXPECT_EQ(c.nodes[0], NodeId::word(4));
  EXPECT_EQ(c.nodes[1], NodeId::word(6));
  EXPECT_EQ(c.rels, (std::vector<std::string>{"acl:relcl", "nsubj"}));
  EXPECT_EQ(c.str(), "4 -> 6 -> 4");
}

TEST(GraphFixtureTest, CoordinationCycleIsWarned) {
  Document doc = parse_file(fixture_path("graph_nonref_cycle.conllu"));
  auto report = validate_document(doc);
  ASSERT_EQ(report.findings.size(), 1u) << report.render_text();
  const Finding& f = report.findings[0];
  EXPECT_EQ(f.severity, Severity::Warning);
  EXPECT_EQ(f.code, "UNEXPECTED_CYCLE");
  EXPECT_EQ(f.node_ref(), "2");
  EXPECT_NE(f.message.find("2 -> 4 -> 2"), std::string::npos);

  auto scan = detect_cycles(doc.sentences.at(0));
  ASSERT_EQ(scan.cycles.size(), 1u);
  EXPECT_FALSE(scan.cycles[0].contains_ref_edge);
  EXPECT_EQ(scan.cycles[0].rels, (std::vector<std::string>{"conj", "conj"}));
}

TEST(GraphFixtureTest, SharedArgumentStaysAcyclic) {
  Document doc = parse_file(fixture_path("graph_shared_argument.conllu"));
  EXPECT_TRUE(validate_document(doc).findings.empty());
  EXPECT_TRUE(detect_cycles(doc.sentences.at(0)).cycles.empty());
}

TEST(GraphValidateTest, HeadBeyondSentenceIsReported) {
  Document doc = parse_one(
      "1\tHi\thi\tINTJ\t_\t_\t0\troot\t0:root\t_\n"
      "2\tthere\tthere\tADV\t_\t_\t9\tadvmod\t1:advmod\t_\n\n");
  auto report = validate_document(doc);
  ASSERT_EQ(report.findings.size(), 1u) << report.render_text();
  EXPECT_EQ(report.findings[0].code, "MISSING_HEAD");
  EXPECT_EQ(report.findings[0].severity, Severity::Error);
  EXPECT_EQ(report.findings[0].node_ref(), "2");
  EXPECT_NE(report.findings[0].message.find("outside"), std::string::npos);
}

TEST(GraphValidateTest, RootlessLoopReportsEverything) {
  Document doc = parse_one(
      "1\ta\ta\tX\t_\t_\t2\tdep\t2:dep\t_\n"
      "2\tb\tb\tX\t_\t_\t1\tdep\t1:dep\t_\n\n");
  auto report = validate_document(doc);
  std::vector<std::pair<std::string, std::string>> expected = {
      {"NO_ROOT", "-"},
      {"BASIC_CYCLE", "1"},
      {"NOT_REACHABLE", "1"},
      {"UNEXPECTED_CYCLE", "1"},
      {"NOT_REACHABLE", "2"},
  };
  EXPECT_EQ(shape_of(report), expected) << report.render_text();
  EXPECT_EQ(report.errors(), 2u);
  EXPECT_EQ(report.warnings(), 3u);
}

TEST(GraphValidateTest, EmptyNodeWithBasicHeadIsAnError) {
  Document doc = parse_one(
      "1\tGo\tgo\tVERB\t_\t_\t0\troot\t0:root\t_\n"
      "1.1\tgone\tgo\tVERB\t_\t_\t1\tconj\t1:conj\t_\n\n");
  auto report = validate_document(doc);
  ASSERT_EQ(report.findings.size(), 1u) << report.render_text();
  EXPECT_EQ(report.findings[0].code, "EMPTY_NODE_IN_BASIC");
  EXPECT_EQ(report.findings[0].severity, Severity::Error);
  EXPECT_EQ(report.findings[0].node_ref(), "1.1");
}

TEST(GraphValidateTest, UnknownDepsHeadsAreReported) {
  Document doc = parse_one(
      "1\tHi\thi\tINTJ\t_\t_\t0\troot\t0:root|3.1:dep|9:dep\t_\n\n");
  auto report = validate_document(doc);
  ASSERT_EQ(report.findings.size(), 2u) << report.render_text();
  for (const auto& f : report.findings) {
    EXPECT_EQ(f.code, "MISSING_HEAD");
    EXPECT_EQ(f.severity, Severity::Error);
    EXPECT_EQ(f.node_ref(), "1");
  }
  EXPECT_NE(report.findings[0].message.find("3.1"), std::string::npos);
  EXPECT_NE(report.findings[1].message.find("9"), std::string::npos);
}

TEST(GraphValidateTest, NoDepsSkipsEnhancedChecks) {
  Document doc = parse_one(
      "1\tGo\tgo\tVERB\t_\t_\t0\troot\t_\t_\n"
      "2\thome\thome\tADV\t_\t_\t1\tadvmod\t_\t_\n\n");
  auto report = validate_document(doc);
  ASSERT_EQ(report.findings.size(), 1u) << report.render_text();
  EXPECT_EQ(report.findings[0].code, "NO_ENHANCED_GRAPH");
  EXPECT_EQ(report.findings[0].severity, Severity::Info);
  EXPECT_EQ(report.findings[0].node_ref(), "-");
}

TEST(GraphValidateTest, TokenWithoutIncomingEdgeIsUnreachable) {
  Document doc = parse_one(
      "1\tGo\tgo\tVERB\t_\t_\t0\troot\t0:root\t_\n"
      "2\tnow\tnow\tADV\t_\t_\t1\tadvmod\t_\t_\n\n");
  auto report = validate_document(doc);
  std::vector<std::string> expected = {"BASIC_EDGE_OMITTED", "NOT_REACHABLE"};
  EXPECT_EQ(codes_of(report), expected) << report.render_text();
  EXPECT_EQ(report.findings[0].node_ref(), "2");
  EXPECT_EQ(report.findings[1].node_ref(), "2");
  EXPECT_FALSE(report.has_errors());
}

TEST(GraphValidateTest, SubtypedEnhancedEdgeCoversBasic) {
  Document doc = parse_one(
      "1\tcut\tcut\tVERB\t_\t_\t0\troot\t0:root\t_\n"
      "2\tknife\tknife\tNOUN\t_\t_\t1\tobl\t1:obl:with\t_\n\n"
      "1\tcut\tcut\tVERB\t_\t_\t0\troot\t0:root\t_\n"
      "2\tknife\tknife\tNOUN\t_\t_\t1\tobl\t1:oblique\t_\n\n");
  auto report = validate_document(doc);
  ASSERT_EQ(report.findings.size(), 1u) << report.render_text();
  EXPECT_EQ(report.findings[0].code, "BASIC_EDGE_OMITTED");
  EXPECT_EQ(report.findings[0].sentence, 2u);
}

TEST(GraphValidateTest, CorporaAreCleanUpToGapping) {
  for (const char* name : {"fgd_corpus.conllu", "ancora_corpus.conllu"}) {
    auto report = validate_fixture(name);
    EXPECT_EQ(report.errors(), 0u) << name << "\n" << report.render_text();
    EXPECT_EQ(report.warnings(), 3u) << name << "\n" << report.render_text();
    EXPECT_EQ(report.count(Severity::Info), 0u) << name;
    for (const auto& f : report.findings)
      EXPECT_EQ(f.code, "BASIC_EDGE_OMITTED") << name;
  }
}

Sentence complete_digraph(int m) {
  Sentence s;
  for (int i = 1; i <= m; ++i) {
    Token t;
    t.id = NodeId::word(i);
    t.form = "w" + std::to_string(i);
    t.lemma = t.form;
    t.upos = "X";
    t.head = i == 1 ? 0 : i - 1;
    t.deprel = "dep";
    if (i == 1) {
      t.deprel = "root";
      t.deps.push_back({NodeId::word(0), "root"});
    }
    for (int j = 1; j <= m; ++j)
      if (j != i) t.deps.push_back({NodeId::word(j), "dep"});
    s.tokens.push_back(std::move(t));
  }
  return s;
}

TEST(CycleScanTest, TriangleHasFiveCycles) {
  auto scan = detect_cycles(complete_digraph(3));
  EXPECT_FALSE(scan.truncated);
  std::vector<std::string> got;
  for (const Cycle& c : scan.cycles) {
    got.push_back(c.str());
    EXPECT_FALSE(c.contains_ref_edge);
    EXPECT_EQ(c.rels.size(), c.nodes.size());
  }
  std::sort(got.begin(), got.end());
  std::vector<std::string> expected = {
      "1 -> 2 -> 1", "1 -> 2 -> 3 -> 1", "1 -> 3 -> 1",
      "1 -> 3 -> 2 -> 1", "2 -> 3 -> 2"};
  EXPECT_EQ(got, expected);
}

TEST(CycleScanTest, CapTruncatesEnumeration) {
  Sentence dense = complete_digraph(6);

  auto capped = detect_cycles(dense);
  EXPECT_TRUE(capped.truncated);
  EXPECT_EQ(capped.cycles.size(), kCycleCap);

  // A complete digraph on 6 nodes has sum C(6,k)*(k-1)! = 409 cycles.
  auto full = detect_cycles(dense, 1000);
  EXPECT_FALSE(full.truncated);
  EXPECT_EQ(full.cycles.size(), 409u);

  Document doc;
  doc.sentences.push_back(dense);
  auto report = validate_document(doc);
  std::size_t unexpected = 0, limit = 0;
  for (const auto& f : report.findings) {
    unexpected += f.code == "UNEXPECTED_CYCLE";
    limit += f.code == "CYCLE_LIMIT";
  }
  EXPECT_EQ(unexpected, kCycleCap);
  EXPECT_EQ(limit, 1u);
  EXPECT_EQ(report.errors(), 0u);
}

TEST(CycleScanTest, MinimalRelativeCyclePattern) {
  Document doc = parse_one(
      "1\tdog\tdog\tNOUN\t_\t_\t0\troot\t0:root|2:nsubj\t_\n"
      "2\tbarked\tbark\tVERB\t_\t_\t1\tacl:relcl\t1:acl:relcl\t_\n\n");
  EXPECT_TRUE(validate_document(doc).findings.empty());
  auto scan = detect_cycles(doc.sentences.at(0));
  ASSERT_EQ(scan.cycles.size(), 1u);
  EXPECT_TRUE(scan.cycles[0].contains_ref_edge);
}

// Independent acyclicity oracle: Kahn's topological sort over the same
// edge set. The enumerator must find a cycle exactly when Kahn stalls.
bool kahn_is_acyclic(int nodes, const std::set<std::pair<int, int>>& edges) {
  std::vector<int> indegree(nodes + 1, 0);
  for (const auto& [u, v] : edges) indegree[v]++;
  std::vector<int> queue;
  for (int i = 0; i <= nodes; ++i)
    if (indegree[i] == 0) queue.push_back(i);
  std::size_t done = 0;
  while (!queue.empty()) {
    int u = queue.back();
    queue.pop_back();
    ++done;
    for (const auto& [a, b] : edges)
      if (a == u && --indegree[b] == 0) queue.push_back(b);
  }
  return done == static_cast<std::size_t>(nodes) + 1;
}

TEST(CycleScanTest, RandomGraphsMatchToposortOracle) {
  std::mt19937 rng(20260815u);
  for (int iter = 0; iter < 300; ++iter) {
    int m = 2 + static_cast<int>(rng() % 7);
    double density = 0.05 + 0.04 * (iter % 10);
    std::bernoulli_distribution coin(density);

    std::set<std::pair<int, int>> edges;
    for (int u = 0; u <= m; ++u)
      for (int v = 1; v <= m; ++v)
        if (u != v && coin(rng)) edges.insert({u, v});

    Sentence s;
    for (int i = 1; i <= m; ++i) {
      Token t;
      t.id = NodeId::word(i);
      t.form = "w";
      t.lemma = "w";
      t.upos = "X";
      t.head = i == 1 ? 0 : i - 1;
      t.deprel = "dep";
      for (const auto& [u, v] : edges)
        if (v == i) t.deps.push_back({NodeId::word(u), "dep"});
      s.tokens.push_back(std::move(t));
    }

    auto scan = detect_cycles(s, 100000);
    EXPECT_FALSE(scan.truncated) << "iter " << iter;
    EXPECT_EQ(scan.cycles.empty(), kahn_is_acyclic(m, edges))
        << "iter " << iter << " m=" << m << " edges=" << edges.size();

    std::set<std::string> seen;
    for (const Cycle& c : scan.cycles) {
      EXPECT_TRUE(seen.insert(c.str()).second) << "duplicate " << c.str();
      std::set<NodeId> distinct(c.nodes.begin(), c.nodes.end());
      EXPECT_EQ(distinct.size(), c.nodes.size());
      EXPECT_EQ(*std::min_element(c.nodes.begin(), c.nodes.end()),
                c.nodes.front());
      for (std::size_t i = 0; i < c.nodes.size(); ++i) {
        int u = c.nodes[i].major;
        int v = c.nodes[(i + 1) % c.nodes.size()].major;
        EXPECT_TRUE(edges.count({u, v})) << u << "->" << v;
      }
    }
  }
}

TEST(ReportRenderTest, TextAndJsonShapes) {
  ValidationReport report;
  report.add({Severity::Warning, "BASIC_EDGE_OMITTED", 2, "s-2",
              NodeId::word(3), "basic edge 2 -> 3 (advmod) lost"});
  report.add({Severity::Error, "NO_ROOT", 1, "", std::nullopt,
              "no token has HEAD=0"});
  report.sort();

  EXPECT_EQ(report.render_text(),
            "ERROR NO_ROOT sent=#1 node=- no token has HEAD=0\n"
            "WARNING BASIC_EDGE_OMITTED sent=s-2 node=3 "
            "basic edge 2 -> 3 (advmod) lost\n");

  auto parsed = nlohmann::json::parse(report.render_json());
  ASSERT_EQ(parsed.size(), 2u);
  EXPECT_EQ(parsed[0]["severity"], "ERROR");
  EXPECT_EQ(parsed[0]["code"], "NO_ROOT");
  EXPECT_EQ(parsed[0]["sentence"], 1);
  EXPECT_TRUE(parsed[0]["node"].is_null());
  EXPECT_EQ(parsed[1]["node"], "3");
  EXPECT_EQ(parsed[1]["sent_id"], "s-2");

  ValidationReport escapes;
  escapes.add({Severity::Info, "X", 1, "q\"id", std::nullopt,
               "tab\there \"quoted\" back\\slash"});
  auto round = nlohmann::json::parse(escapes.render_json());
  EXPECT_EQ(round[0]["sent_id"], "q\"id");
  EXPECT_EQ(round[0]["message"], "tab\there \"quoted\" back\\slash");
}

}  // namespace
