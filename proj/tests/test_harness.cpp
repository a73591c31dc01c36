#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <set>

#include "helpers.hpp"
#include "json.hpp"
#include "shuffle/harness.hpp"

using namespace shuffle;
using shuffle::testing::T;

namespace {

// Terms of exactly n nodes with k variables in scope, counted by shape.
std::size_t count_terms(std::size_t n, std::size_t k) {
  if (n == 0) return 0;
  if (n == 1) return k;
  std::size_t total = count_terms(n - 1, k + 1);
  for (std::size_t i = 1; i + 1 < n; ++i) total += count_terms(i, k) * count_terms(n - 1 - i, k);
  return total;
}

std::size_t count_upto(std::size_t n, std::size_t k) {
  std::size_t total = 0;
  for (std::size_t i = 1; i <= n; ++i) total += count_terms(i, k);
  return total;
}

TermGen corpus(std::size_t size) { return TermGen::exhaustive(size, make_pool({"x", "y", "z"})); }

PropertyReport run(const std::string& id, std::optional<TermGen> gen = {}, std::size_t jobs = 1) {
  const Property* p = find_property(id);
  REQUIRE(p != nullptr);
  RunOptions o;
  o.jobs = jobs;
  return run_property(*p, o, gen);
}

// A failing pair M =>int N is read back from the report; N must be the head
// betav reduct of M and no internal step may lead from M to N.
void expect_collapse(const Failure& f) {
  const std::string prefix = "=>int but not ->int*: ";
  REQUIRE(f.detail.rfind(prefix, 0) == 0);
  std::string rest = f.detail.substr(prefix.size());
  rest = rest.substr(0, rest.rfind(" (reachable"));
  std::size_t arrow = rest.find(" => ");
  REQUIRE(arrow != std::string::npos);
  Term m = T(rest.substr(0, arrow));
  Term n = T(rest.substr(arrow + 4));
  std::optional<Term> head = step_head_betav(m);
  REQUIRE(head);
  CHECK(alpha_eq(*head, n));
  for (const Step& s : successors(m, Relation::internal_v())) CHECK_FALSE(alpha_eq(s.result, n));
  CHECK(f.detail.find("non-head occurrences") != std::string::npos);
}

}  // namespace

TEST_CASE("catalog") {
  std::set<std::string> ids;
  for (const Property& p : property_catalog()) {
    CHECK(ids.insert(p.id).second);
    CHECK_FALSE(p.statement.empty());
  }
  for (const char* id : {"commutation", "postponement", "sequentialization", "standardization", "key-lemma",
                         "confluence", "sigma-termination", "value-preservation", "head-determinism", "diamond-failure",
                         "sigma3-then-sigma1", "sigma1-then-sigma3", "adequacy", "cor-value", "head-normalization",
                         "conservativity", "value-lemmas", "inclusion-chains", "figure-graph", "strict-normalization"})
    CHECK(ids.count(id) == 1);
  CHECK(find_property("nope") == nullptr);
  CHECK(find_property("commutation")->corpus.max_size == 7);
  CHECK(find_property("commutation")->corpus.pool.size() == 3);
  CHECK(find_property("sequentialization")->corpus.max_size == 5);
  CHECK(run("head-determinism").corpus_size == count_upto(7, 3));
}

TEST_CASE("fixtures") {
  for (const char* id : {"diamond-failure", "sigma3-then-sigma1", "sigma1-then-sigma3", "figure-graph"}) {
    INFO(id);
    PropertyReport r = run(id);
    CHECK(r.passed());
    CHECK(r.corpus_size == 1);
    CHECK(r.checked > 0);
  }
  std::vector<SigmaOrderFixture> fs = sigma_order_fixtures();
  REQUIRE(fs.size() == 2);
  for (const SigmaOrderFixture& f : fs) {
    SigmaOrderCheck c = check_sigma_order(f);
    CHECK(c.displayed_exists);
    CHECK_FALSE(c.reordered_exists);
    CHECK(c.explored >= 1);
  }
  // Swapping the roles makes the displayed sequence disappear.
  SigmaOrderFixture swapped = fs[0];
  std::swap(swapped.first, swapped.second);
  CHECK_FALSE(check_sigma_order(swapped).displayed_exists);
}

TEST_CASE("joinability") {
  Relation v = Relation::full();
  CHECK(joinable(T("I I"), T("I"), v, 2, 100).joined);
  JoinResult apart = joinable(T("x"), T("y"), v, 3, 100);
  CHECK_FALSE(apart.joined);
  CHECK(apart.complete);
  JoinResult loop = joinable(T("D D"), T("x"), v, 3, 100);
  CHECK_FALSE(loop.joined);
  CHECK(loop.complete);
  CHECK_FALSE(joinable(T("(\\x.x x x) (\\x.x x x)"), T("y"), v, 3, 100).complete);
}

TEST_CASE("relational properties hold on a small corpus") {
  for (const Property& p : property_catalog()) {
    if (p.fixture || p.id == "inclusion-chains") continue;
    INFO(p.id);
    PropertyReport r = run(p.id, corpus(5));
    CHECK(r.passed());
    CHECK(r.corpus_size == count_upto(5, 3));
  }
}

TEST_CASE("parallel runs merge deterministically") {
  PropertyReport one = run("inclusion-chains", corpus(7), 1);
  PropertyReport four = run("inclusion-chains", corpus(7), 4);
  CHECK(report_json(one) == report_json(four));
  REQUIRE_FALSE(one.failures.empty());
  for (std::size_t i = 1; i < four.failures.size(); ++i) CHECK(four.failures[i - 1].index <= four.failures[i].index);
}

TEST_CASE("internal parallel steps collapsing onto a head step") {
  // (\x.(\y.y) x) x =>int (\x.x) x, and the only step giving (\x.x) x is
  // alpha-equal to the head betav step, so it is not an internal step.
  Term m = T("(\\x.(\\y.y) x) x");
  Term n = T("(\\x.x) x");
  CHECK(is_head_betav_pair(m, n));
  CHECK(successors(m, Relation::internal_v()).empty());

  PropertyReport r = run("inclusion-chains", corpus(7));
  CHECK_FALSE(r.failures.empty());
  for (const Failure& f : r.failures) {
    INFO(f.detail);
    expect_collapse(f);
  }
  CHECK(r.failures.front().detail ==
        "=>int but not ->int*: (\\x.(\\y.y) x) x => (\\x.x) x (reachable by steps at non-head occurrences)");
}

TEST_CASE("module invariants at larger scale") {
  CHECK(run("sigma-termination", corpus(9)).passed());
  CHECK(run("sequentialization", corpus(7)).passed());
  CHECK(run("standardization", corpus(7)).passed());

  // The one-step and parallel inclusions for ->v hold at size 8; only the
  // internal chain breaks, always by the collapse above.
  PropertyReport r = run("inclusion-chains", corpus(8));
  for (const Failure& f : r.failures) {
    INFO(f.detail);
    expect_collapse(f);
  }
}

TEST_CASE("reports") {
  PropertyReport r = run("head-determinism", corpus(3));
  nlohmann::json j = nlohmann::json::parse(report_json(r));
  CHECK(j["property"] == "head-determinism");
  CHECK(j["status"] == "pass");
  CHECK(j["corpus_size"] == count_upto(3, 3));
  CHECK(j["max_size"] == 3);
  CHECK(j["seed"].is_null());
  CHECK(j["failures"].empty());
  CHECK_FALSE(j.contains("elapsed_ms"));
  CHECK(nlohmann::json::parse(report_json(r, true)).contains("elapsed_ms"));

  std::string table = report_table({r});
  CHECK(table.rfind("property", 0) == 0);
  CHECK(table.find("head-determinism") != std::string::npos);
  CHECK(table.find("pass") != std::string::npos);

  PropertyReport rnd = run("adequacy", TermGen::random(6, make_pool({"x"}), 11, 40));
  REQUIRE(rnd.seed);
  CHECK(*rnd.seed == 11);
  CHECK(rnd.corpus_size == 40);
  CHECK(report_json(rnd) == report_json(run("adequacy", TermGen::random(6, make_pool({"x"}), 11, 40))));

  PropertyReport bad = run("inclusion-chains", corpus(7));
  CHECK(report_table({bad}).find("FAIL") != std::string::npos);
  CHECK(nlohmann::json::parse(report_json(bad))["failures"][0]["index"] == bad.failures[0].index);
}
