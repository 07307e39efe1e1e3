#include <filesystem>
#include <string>

#include "doctest.h"
#include "phasekit/error.hpp"
#include "phasekit/io.hpp"
#include "phasekit/models.hpp"

using namespace phasekit;

namespace {

ErrorCode code_of(void (*fn)(const std::string&), const std::string& text) {
  try {
    fn(text);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidArgument;
}

void read_action(const std::string& t) { read_action_model(t); }
void read_lie(const std::string& t) { read_lie_data(t); }
void read_bv(const std::string& t) { read_bv_model(t); }

}  // namespace

TEST_CASE("action models round-trip") {
  ActionModel q = models::quartic(Rational(1, 2));
  std::string text = write_action_model(q);
  ActionModel back = read_action_model(text);
  CHECK(back.S == q.S);
  CHECK(back.names == q.names);
  CHECK(write_action_model(back) == text);
  CHECK(model_kind(text) == ModelKind::Action);
}

TEST_CASE("gauge models round-trip") {
  for (const GaugeModel& gm : {models::deformed_hat(), models::so3_rotations(), models::nonunimodular_trivial()}) {
    std::string text = write_gauge_model(gm);
    GaugeModel back = read_gauge_model(text);
    CHECK(back.action.S == gm.action.S);
    CHECK(back.lie_dim == gm.lie_dim);
    CHECK(back.f == gm.f);
    CHECK(back.N == gm.N);
    CHECK(write_gauge_model(back) == text);
  }
}

TEST_CASE("BV models round-trip") {
  BVModel m = bv_from_gauge(models::mexican_hat());
  BVFile f{m.bv, m.action};
  std::string text = write_bv_model(f);
  BVFile back = read_bv_model(text);
  REQUIRE(back.action.count(0));
  CHECK(write_bv_model(back) == text);
  CHECK(master_residuals(back.bv, back.action).qme_zero());
}

TEST_CASE("Lie data and graphs round-trip") {
  LieData su2 = models::su2();
  std::string text = write_lie_data(su2);
  CHECK(read_lie_data(text).f == su2.f);

  for (const Graph& g : {theta_graph(), gamma2_graph(), dumbbell_graph()}) {
    Graph back = read_graph(write_graph(g));
    CHECK(graph_equal_unordered(back, g));
    CHECK(canonical_key(back) == canonical_key(g));
  }
  CHECK_FALSE(graph_equal_unordered(theta_graph(), dumbbell_graph()));
}

TEST_CASE("schema violations") {
  CHECK(code_of(read_action, "{") == ErrorCode::Schema);
  CHECK(code_of(read_action, R"({"kind": "action"})") == ErrorCode::Schema);
  CHECK(code_of(read_action, R"({"schema_version": 2, "kind": "action"})") == ErrorCode::Schema);
  CHECK(code_of(read_action, write_lie_data(models::su2())) == ErrorCode::Schema);
  CHECK(code_of(read_lie, R"({"schema_version": 1, "kind": "lie", "dim": 3, "f": [[0, 1, 3, "1"]]})") ==
        ErrorCode::Schema);
  CHECK(code_of(read_bv, R"({"schema_version": 1, "kind": "bv", "pairs": []})") == ErrorCode::Schema);
  try {
    read_action_model(R"({"schema_version": 1, "kind": "action", "dimension": 1, "names": ["x"],
                          "polynomial": [{"coeff": "1/2", "exponents": [2, 1]}], "density": "1"})");
    FAIL("accepted a bad exponent list");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("$.polynomial[0].exponents") != std::string::npos);
  }
}

TEST_CASE("shipped model files load") {
  namespace fs = std::filesystem;
  int loaded = 0;
  for (const auto& entry : fs::directory_iterator(PHASEKIT_MODELS_DIR)) {
    if (entry.path().extension() != ".json") continue;
    std::string name = entry.path().filename().string();
    if (name.rfind("corrupt", 0) == 0) continue;
    CAPTURE(name);
    std::string text = read_text_file(entry.path().string());
    switch (model_kind(text)) {
      case ModelKind::Action: CHECK(write_action_model(read_action_model(text)) == text); break;
      case ModelKind::Gauge: CHECK(write_gauge_model(read_gauge_model(text)) == text); break;
      case ModelKind::BV: CHECK(write_bv_model(read_bv_model(text)) == text); break;
      case ModelKind::Lie: CHECK(write_lie_data(read_lie_data(text)) == text); break;
      case ModelKind::Graph: CHECK(write_graph(read_graph(text)) == text); break;
    }
    ++loaded;
  }
  CHECK(loaded >= 6);
}

TEST_CASE("digest") {
  CHECK(digest("") == "cbf29ce484222325");
  CHECK(digest("a") == "af63dc4c8601ec8c");
  CHECK(digest("a") != digest("b"));
}
